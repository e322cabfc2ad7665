use crate::arith::scalar::{rational_mod, Field, Rationals, Ring, Zmod};
use crate::arith::word::Word;
use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use std::cmp::Ordering;

/// A polynomial of the free algebra: a finite association of words to nonzero
/// coefficients. Terms are kept strictly descending under the active monomial
/// order, so the leading monomial is the first term and reductions are merge
/// scans. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<R: Ring> {
    terms: Vec<(Word, R::Elem)>,
}

impl<R: Ring> Polynomial<R> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(ring: &R) -> Self {
        Polynomial {
            terms: vec![(Word::one(), ring.one())],
        }
    }

    pub fn monomial(word: Word, coeff: R::Elem, ring: &R) -> Self {
        if ring.is_zero(&coeff) {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(word, coeff)],
            }
        }
    }

    /// Normalizing constructor: sorts descending, merges duplicate words,
    /// strips zeros.
    pub fn from_terms(ring: &R, ord: &MonomialOrder, mut terms: Vec<(Word, R::Elem)>) -> Self {
        terms.sort_by(|a, b| ord.cmp_words(&b.0, &a.0));
        let mut out: Vec<(Word, R::Elem)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => {
                    *lc = ring.add(lc, &c);
                    if ring.is_zero(lc) {
                        out.pop();
                    }
                }
                _ => {
                    if !ring.is_zero(&c) {
                        out.push((w, c));
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending order.
    pub fn terms(&self) -> &[(Word, R::Elem)] {
        &self.terms
    }

    /// The support as words, descending.
    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter().map(|(w, _)| w)
    }

    /// Leading monomial; `None` is the zero sentinel, which compares below
    /// every word.
    pub fn lm(&self) -> Option<&Word> {
        self.terms.first().map(|(w, _)| w)
    }

    pub fn lc(&self) -> Option<&R::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff_of(&self, w: &Word) -> Option<&R::Elem> {
        self.terms.iter().find(|(t, _)| t == w).map(|(_, c)| c)
    }

    /// `self + c * (a * g * b)`, the two-sided scaled combination underlying
    /// every reduction step. Word multiplication is order-preserving, so the
    /// shifted copy of `g` stays sorted and a single merge pass suffices.
    pub fn combine(
        &self,
        ring: &R,
        ord: &MonomialOrder,
        c: &R::Elem,
        a: &Word,
        g: &Polynomial<R>,
        b: &Word,
    ) -> Polynomial<R> {
        if ring.is_zero(c) || g.is_zero() {
            return self.clone();
        }
        let shifted = g
            .terms
            .iter()
            .map(|(w, gc)| (a.concat(w).concat(b), ring.mul(c, gc)));
        let mut out: Vec<(Word, R::Elem)> = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut mine = self.terms.iter().peekable();
        let mut theirs = shifted.peekable();
        loop {
            match (mine.peek(), theirs.peek()) {
                (Some((wm, cm)), Some((wt, _))) => match ord.cmp_words(wm, wt) {
                    Ordering::Greater => {
                        out.push((wm.clone(), cm.clone()));
                        mine.next();
                    }
                    Ordering::Less => {
                        let (wt, ct) = theirs.next().unwrap();
                        if !ring.is_zero(&ct) {
                            out.push((wt, ct));
                        }
                    }
                    Ordering::Equal => {
                        let (_, ct) = theirs.next().unwrap();
                        let sum = ring.add(cm, &ct);
                        if !ring.is_zero(&sum) {
                            out.push((wm.clone(), sum));
                        }
                        mine.next();
                    }
                },
                (Some((wm, cm)), None) => {
                    out.push((wm.clone(), cm.clone()));
                    mine.next();
                }
                (None, Some(_)) => {
                    let (wt, ct) = theirs.next().unwrap();
                    if !ring.is_zero(&ct) {
                        out.push((wt, ct));
                    }
                }
                (None, None) => break,
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, ring: &R, ord: &MonomialOrder, other: &Polynomial<R>) -> Polynomial<R> {
        self.combine(ring, ord, &ring.one(), &Word::one(), other, &Word::one())
    }

    pub fn sub(&self, ring: &R, ord: &MonomialOrder, other: &Polynomial<R>) -> Polynomial<R> {
        self.combine(
            ring,
            ord,
            &ring.neg(&ring.one()),
            &Word::one(),
            other,
            &Word::one(),
        )
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> Polynomial<R> {
        if ring.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, t)| (w.clone(), ring.mul(c, t)))
                .collect(),
        }
    }

    pub fn neg(&self, ring: &R) -> Polynomial<R> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, t)| (w.clone(), ring.neg(t)))
                .collect(),
        }
    }

    /// Full product, used by tests and oracles rather than hot paths.
    pub fn mul(&self, ring: &R, ord: &MonomialOrder, other: &Polynomial<R>) -> Polynomial<R> {
        let mut acc = Polynomial::zero();
        for (w, c) in &self.terms {
            acc = acc.combine(ring, ord, c, w, other, &Word::one());
        }
        acc
    }
}

impl<F: Field> Polynomial<F> {
    /// Returns `(f / c, c)` where `c` is the leading coefficient.
    pub fn make_monic(&self, field: &F) -> Result<(Polynomial<F>, F::Elem)> {
        let lc = self.lc().ok_or(Error::ZeroArgument("make_monic"))?.clone();
        let inv = field.inv(&lc)?;
        Ok((self.scale(field, &inv), lc))
    }
}

/// Reduction of a rational polynomial modulo N: each coefficient a/b maps to
/// (a mod N) * (b mod N)^-1 and vanishing terms are dropped. Fails, naming
/// the coefficient, when some denominator shares a factor with N.
pub fn reduce_mod(f: &Polynomial<Rationals>, zn: &Zmod) -> Result<Polynomial<Zmod>> {
    let mut terms = Vec::with_capacity(f.terms.len());
    for (w, c) in &f.terms {
        let r = rational_mod(c, zn)?;
        if r != 0 {
            terms.push((w.clone(), r));
        }
    }
    Ok(Polynomial { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;
    use crate::arith::word::Var;
    use crate::util::SplitMix64;
    use num_rational::BigRational;

    fn ord() -> MonomialOrder {
        MonomialOrder::deglex(&[0, 1]).unwrap()
    }

    fn w(letters: &[Var]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    fn qpoly(terms: &[(&[Var], i64, i64)]) -> Polynomial<Rationals> {
        Polynomial::from_terms(
            &Rationals,
            &ord(),
            terms
                .iter()
                .map(|(ls, n, d)| (w(ls), rat(*n, *d)))
                .collect(),
        )
    }

    // g1 = xyx - xy - y
    fn g1() -> Polynomial<Rationals> {
        qpoly(&[(&[0, 1, 0], 1, 1), (&[0, 1], -1, 1), (&[1], -1, 1)])
    }

    #[test]
    fn combine_identity_action() {
        let f = Polynomial::zero();
        let got = f.combine(
            &Rationals,
            &ord(),
            &rat(1, 1),
            &Word::one(),
            &g1(),
            &Word::one(),
        );
        assert_eq!(got, g1());
    }

    #[test]
    fn combine_cancellation() {
        let f = qpoly(&[(&[0, 1, 1, 0], 1, 1)]); // xy^2x
        let got = f.combine(
            &Rationals,
            &ord(),
            &rat(-1, 1),
            &Word::one(),
            &f.clone(),
            &Word::one(),
        );
        assert!(got.is_zero());
    }

    #[test]
    fn combine_two_sided_shift() {
        // x * (y^2 x - x y^2) * y = xy^2xy - x^2y^3
        let g = qpoly(&[(&[1, 1, 0], 1, 1), (&[0, 1, 1], -1, 1)]);
        let got =
            Polynomial::zero().combine(&Rationals, &ord(), &rat(1, 1), &w(&[0]), &g, &w(&[1]));
        let expect = qpoly(&[(&[0, 1, 1, 0, 1], 1, 1), (&[0, 0, 1, 1, 1], -1, 1)]);
        assert_eq!(got, expect);
    }

    #[test]
    fn leading_monomial_examples() {
        assert_eq!(g1().lm(), Some(&w(&[0, 1, 0])));
        assert_eq!(Polynomial::<Rationals>::zero().lm(), None);
        // y^3x - xy^3 has lm y^3x under deglex x < y
        let f = qpoly(&[(&[1, 1, 1, 0], 1, 1), (&[0, 1, 1, 1], -1, 1)]);
        assert_eq!(f.lm(), Some(&w(&[1, 1, 1, 0])));
    }

    #[test]
    fn make_monic_examples() {
        // 2xy - 4y -> (xy - 2y, 2)
        let f = qpoly(&[(&[0, 1], 2, 1), (&[1], -4, 1)]);
        let (m, c) = f.make_monic(&Rationals).unwrap();
        assert_eq!(m, qpoly(&[(&[0, 1], 1, 1), (&[1], -2, 1)]));
        assert_eq!(c, rat(2, 1));

        let (m1, c1) = g1().make_monic(&Rationals).unwrap();
        assert_eq!(m1, g1());
        assert_eq!(c1, rat(1, 1));

        assert!(Polynomial::<Rationals>::zero()
            .make_monic(&Rationals)
            .is_err());

        // -3 y^2 x over Z/7: -3 = 4, inverse 2, so (y^2x, 4)
        let f7 = Zmod::new(7);
        let fz = Polynomial::from_terms(&f7, &ord(), vec![(w(&[1, 1, 0]), f7.from_i64(-3))]);
        let (mz, cz) = fz.make_monic(&f7).unwrap();
        assert_eq!(mz.lc(), Some(&1));
        assert_eq!(cz, 4);
    }

    #[test]
    fn reduce_mod_examples() {
        // g2 = xy^2x + y^2x - 2xy^2 - y^2 mod 2 -> xy^2x + y^2x + y^2
        let g2 = qpoly(&[
            (&[0, 1, 1, 0], 1, 1),
            (&[1, 1, 0], 1, 1),
            (&[0, 1, 1], -2, 1),
            (&[1, 1], -1, 1),
        ]);
        let z2 = Zmod::new(2);
        let got = reduce_mod(&g2, &z2).unwrap();
        assert_eq!(got.num_terms(), 3);
        assert_eq!(got.coeff_of(&w(&[0, 1, 1])), None);
        assert_eq!(got.coeff_of(&w(&[1, 1])), Some(&1));

        // coefficient 1/2 mod 2 is undefined
        let g3ish = qpoly(&[(&[0, 1, 1, 1, 0], 1, 1), (&[1, 1, 1, 0], 1, 2)]);
        assert!(reduce_mod(&g3ish, &z2).is_err());

        // integer polynomial with coefficients in [0, N) is fixed
        let f = qpoly(&[(&[0, 1], 3, 1), (&[1], 1, 1)]);
        let z5 = Zmod::new(5);
        let r = reduce_mod(&f, &z5).unwrap();
        assert_eq!(r.coeff_of(&w(&[0, 1])), Some(&3));
        assert_eq!(r.coeff_of(&w(&[1])), Some(&1));
    }

    fn random_qpoly(rng: &mut SplitMix64) -> Polynomial<Rationals> {
        let n = rng.below(5) as usize;
        let terms = (0..n)
            .map(|_| {
                let len = rng.below(4) as usize;
                let word = Word::from_letters((0..len).map(|_| rng.below(2) as Var).collect());
                // small numerators, odd denominators so mod-2 tests stay admissible
                let num = rng.next_u64() as i64 % 7;
                let den = 1 + 2 * (rng.below(3) as i64);
                (word, rat(num, den))
            })
            .collect();
        Polynomial::from_terms(&Rationals, &ord(), terms)
    }

    /// Brute-force oracle: expand f + c*a*g*b term by term through the
    /// normalizing constructor.
    fn combine_oracle(
        f: &Polynomial<Rationals>,
        c: &BigRational,
        a: &Word,
        g: &Polynomial<Rationals>,
        b: &Word,
    ) -> Polynomial<Rationals> {
        let mut terms: Vec<(Word, BigRational)> = f
            .terms()
            .iter()
            .map(|(w, x)| (w.clone(), x.clone()))
            .collect();
        for (w, x) in g.terms() {
            terms.push((a.concat(w).concat(b), c * x));
        }
        Polynomial::from_terms(&Rationals, &ord(), terms)
    }

    #[test]
    fn combine_matches_oracle_and_is_linear() {
        let mut rng = SplitMix64::new(123);
        let o = ord();
        for _ in 0..200 {
            let f = random_qpoly(&mut rng);
            let g = random_qpoly(&mut rng);
            let h = random_qpoly(&mut rng);
            let c = rat(rng.next_u64() as i64 % 5, 1 + rng.below(4) as i64);
            let a = Word::from_letters((0..rng.below(3)).map(|_| rng.below(2) as Var).collect());
            let b = Word::from_letters((0..rng.below(3)).map(|_| rng.below(2) as Var).collect());

            let got = f.combine(&Rationals, &o, &c, &a, &g, &b);
            assert_eq!(got, combine_oracle(&f, &c, &a, &g, &b));

            // linearity in g: f + c*a*(g+h)*b == (f + c*a*g*b) + c*a*h*b
            let gh = g.add(&Rationals, &o, &h);
            let lhs = f.combine(&Rationals, &o, &c, &a, &gh, &b);
            let rhs = f
                .combine(&Rationals, &o, &c, &a, &g, &b)
                .combine(&Rationals, &o, &c, &a, &h, &b);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduce_mod_is_a_ring_homomorphism_on_admissible_inputs() {
        let mut rng = SplitMix64::new(77);
        let o = ord();
        let z9 = Zmod::new(9); // composite modulus is fine for the ring structure
        for _ in 0..100 {
            let f = random_qpoly(&mut rng);
            let g = random_qpoly(&mut rng);
            let fg_sum = f.add(&Rationals, &o, &g);
            let fg_mul = f.mul(&Rationals, &o, &g);
            // denominators are odd and coprime to 3 only sometimes; skip
            // inadmissible draws, mirroring the homomorphism's domain
            let (rf, rg) = match (reduce_mod(&f, &z9), reduce_mod(&g, &z9)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue,
            };
            if let Ok(rs) = reduce_mod(&fg_sum, &z9) {
                assert_eq!(rs, rf.add(&z9, &o, &rg));
            }
            if let Ok(rp) = reduce_mod(&fg_mul, &z9) {
                assert_eq!(rp, rf.mul(&z9, &o, &rg));
            }
        }
    }

    #[test]
    fn lm_is_multiplicative() {
        let mut rng = SplitMix64::new(31);
        let o = ord();
        for _ in 0..200 {
            let f = random_qpoly(&mut rng);
            if f.is_zero() {
                continue;
            }
            let a = Word::from_letters((0..rng.below(3)).map(|_| rng.below(2) as Var).collect());
            let b = Word::from_letters((0..rng.below(3)).map(|_| rng.below(2) as Var).collect());
            let afb = Polynomial::zero().combine(&Rationals, &o, &rat(1, 1), &a, &f, &b);
            assert_eq!(afb.lm().unwrap(), &a.concat(f.lm().unwrap()).concat(&b));
        }
    }
}

//! Independent oracles used by the acceptance tests and the `selftest`
//! command: exact Fibonacci-ratio witnesses for the worked ideal
//! ⟨xyx - xy - y⟩, identity and recursion checkers, an S-polynomial
//! reduction checker, and a brute-force labeled basis enumerator.
//!
//! Everything here is built from `arith` and `order` primitives only; none
//! of it goes through the engine's pair queue or pruning, so these checks
//! are meaningful witnesses for the engine's output.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::{Field, Rationals};
use crate::arith::word::{Alphabet, Word};
use crate::bimodule::{evaluate_monomial, ModuleElement, ModuleMonomial, SigPolynomial};
use crate::engine::basis::SigBasis;
use crate::engine::reduce::regular_sig_reduce;
use crate::engine::syzygy::SyzygyTracker;
use crate::error::{Error, Result};
use crate::order::{monomials_below, ModuleOrder, ModuleOrderKind, MonomialOrder, Side, SigBound};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;

/// The standing Fibonacci setting: alphabet {x, y}, deglex with x < y,
/// DoPoT over the single generator xyx - xy - y.
pub fn fib_context() -> (Alphabet, MonomialOrder, ModuleOrder) {
    let alphabet = Alphabet::new(vec!["x", "y"]).unwrap();
    let ord = MonomialOrder::deglex(&[0, 1]).unwrap();
    let mord = ModuleOrder::new(ModuleOrderKind::DoPoT, Side::Left, ord.clone(), vec![3]);
    (alphabet, ord, mord)
}

const X: u16 = 0;
const Y: u16 = 1;

/// Exact data for one member of the Fibonacci family:
/// `g_n = x y^n x + a_n y^n x - b_n x y^n - y^n` with `a_n = F_{n-1}/F_n`
/// and `b_n = F_{n+1}/F_n`.
#[derive(Debug, Clone)]
pub struct FibonacciWitness {
    pub n: usize,
    pub fib: BigInt,
    pub a: BigRational,
    pub b: BigRational,
    pub g: Polynomial<Rationals>,
}

fn fib_int(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

impl FibonacciWitness {
    pub fn new(n: usize, ord: &MonomialOrder) -> Self {
        assert!(n >= 1);
        let f_prev = fib_int(n - 1);
        let f_n = fib_int(n);
        let f_next = fib_int(n + 1);
        let a = BigRational::new(f_prev, f_n.clone());
        let b = BigRational::new(f_next, f_n.clone());
        let xynx = {
            let mut l = vec![X];
            l.extend(std::iter::repeat_n(Y, n));
            l.push(X);
            Word::from_letters(l)
        };
        let ynx = {
            let mut l = vec![Y; n];
            l.push(X);
            Word::from_letters(l)
        };
        let xyn = {
            let mut l = vec![X];
            l.extend(std::iter::repeat_n(Y, n));
            Word::from_letters(l)
        };
        let yn = Word::power(Y, n);
        let g = Polynomial::from_terms(
            &Rationals,
            ord,
            vec![
                (xynx, BigRational::one()),
                (ynx, a.clone()),
                (xyn, -b.clone()),
                (yn, -BigRational::one()),
            ],
        );
        FibonacciWitness {
            n,
            fib: f_n,
            a,
            b,
            g,
        }
    }
}

/// The six exact identities of the ratios `a_n`, `b_n`, checked for all
/// `1 <= m, n <= max_n`. Returns the failing `(item, m, n)` description.
pub fn check_fib_identities(max_n: usize) -> std::result::Result<(), String> {
    assert!(max_n >= 2);
    let (_, ord, _) = fib_context();
    let w: Vec<FibonacciWitness> = (0..=max_n + max_n + 1)
        .map(|n| FibonacciWitness::new(n.max(1), &ord))
        .collect();
    let one = BigRational::one();
    for n in 1..=max_n {
        let (a_n, b_n) = (&w[n].a, &w[n].b);
        let (a_next, b_next) = (&w[n + 1].a, &w[n + 1].b);
        if a_next * b_n != one {
            return Err(format!("item 1 fails at n={n}"));
        }
        if a_n + &one != *b_n {
            return Err(format!("item 2 fails at n={n}"));
        }
        if b_n + &one != b_n * b_next {
            return Err(format!("item 3 fails at n={n}"));
        }
        for m in 1..=max_n {
            let (a_m, b_m) = (&w[m].a, &w[m].b);
            let (a_mn, b_mn) = (&w[m + n].a, &w[m + n].b);
            if a_m + b_n != a_n + b_m {
                return Err(format!("item 4 fails at m={m}, n={n}"));
            }
            if a_m * a_n + &one != (a_n + b_m) * a_mn {
                return Err(format!("item 5 fails at m={m}, n={n}"));
            }
            if b_m * b_n + &one != (a_n + b_m) * b_mn {
                return Err(format!("item 6 fails at m={m}, n={n}"));
            }
        }
    }
    Ok(())
}

/// The recursion `g_{n+1} = -1/b_n (g_n y (x - 1) - (x + a_n) y^n g_1)`,
/// checked as exact polynomial identities built from `combine` alone.
pub fn check_recursion(max_n: usize) -> std::result::Result<(), String> {
    assert!(max_n >= 1);
    let (_, ord, _) = fib_context();
    let g1 = FibonacciWitness::new(1, &ord).g;
    for n in 1..=max_n {
        let wn = FibonacciWitness::new(n, &ord);
        let expect = FibonacciWitness::new(n + 1, &ord).g;
        // g_n * y * (x - 1) = g_n * yx - g_n * y
        let one = BigRational::one();
        let t1 = Polynomial::zero()
            .combine(
                &Rationals,
                &ord,
                &one,
                &Word::one(),
                &wn.g,
                &Word::from_letters(vec![Y, X]),
            )
            .combine(
                &Rationals,
                &ord,
                &(-&one),
                &Word::one(),
                &wn.g,
                &Word::single(Y),
            );
        // (x + a_n) * y^n * g_1 = x y^n g_1 + a_n y^n g_1
        let xyn = {
            let mut l = vec![X];
            l.extend(std::iter::repeat_n(Y, n));
            Word::from_letters(l)
        };
        let t2 = Polynomial::zero()
            .combine(&Rationals, &ord, &one, &xyn, &g1, &Word::one())
            .combine(
                &Rationals,
                &ord,
                &wn.a,
                &Word::power(Y, n),
                &g1,
                &Word::one(),
            );
        // -1/b_n * (t1 - t2)
        let c = -wn.b.recip();
        let rhs = Polynomial::zero()
            .combine(&Rationals, &ord, &c, &Word::one(), &t1, &Word::one())
            .combine(
                &Rationals,
                &ord,
                &(-c.clone()),
                &Word::one(),
                &t2,
                &Word::one(),
            );
        if rhs != expect {
            return Err(format!("recursion fails at n={n}"));
        }
    }
    Ok(())
}

/// The S-polynomial identity and its two-step reduction: for all
/// `1 <= m, n <= max_mn`, `s_{m,n} = g_m y^n x - x y^m g_n` matches the
/// expanded five-term form, and after reducing the `y^m x y^n x` and
/// `x y^m x y^n` terms by `g_n` and `g_m` the result is exactly
/// `-(a_n + b_m) g_{m+n}` (hence reduces to zero).
pub fn check_spoly_reduction(max_mn: usize) -> std::result::Result<(), String> {
    assert!(max_mn >= 1);
    let (_, ord, _) = fib_context();
    let one = BigRational::one();
    for m in 1..=max_mn {
        for n in 1..=max_mn {
            let wm = FibonacciWitness::new(m, &ord);
            let wn = FibonacciWitness::new(n, &ord);
            let wmn = FibonacciWitness::new(m + n, &ord);
            let ynx = {
                let mut l = vec![Y; n];
                l.push(X);
                Word::from_letters(l)
            };
            let xym = {
                let mut l = vec![X];
                l.extend(std::iter::repeat_n(Y, m));
                Word::from_letters(l)
            };
            let s = Polynomial::zero()
                .combine(&Rationals, &ord, &one, &Word::one(), &wm.g, &ynx)
                .combine(&Rationals, &ord, &(-&one), &xym, &wn.g, &Word::one());

            // expanded form: -(a_n + b_m) x y^{m+n} x + a_m y^m x y^n x
            //                + b_n x y^m x y^n - y^{m+n} x + x y^{m+n}
            let ym_x_yn_x = {
                let mut l = vec![Y; m];
                l.push(X);
                l.extend(std::iter::repeat_n(Y, n));
                l.push(X);
                Word::from_letters(l)
            };
            let x_ym_x_yn = {
                let mut l = vec![X];
                l.extend(std::iter::repeat_n(Y, m));
                l.push(X);
                l.extend(std::iter::repeat_n(Y, n));
                Word::from_letters(l)
            };
            let x_ymn_x = {
                let mut l = vec![X];
                l.extend(std::iter::repeat_n(Y, m + n));
                l.push(X);
                Word::from_letters(l)
            };
            let ymn_x = {
                let mut l = vec![Y; m + n];
                l.push(X);
                Word::from_letters(l)
            };
            let x_ymn = {
                let mut l = vec![X];
                l.extend(std::iter::repeat_n(Y, m + n));
                Word::from_letters(l)
            };
            let expanded = Polynomial::from_terms(
                &Rationals,
                &ord,
                vec![
                    (x_ymn_x, -(&wn.a + &wm.b)),
                    (ym_x_yn_x, wm.a.clone()),
                    (x_ym_x_yn, wn.b.clone()),
                    (ymn_x, -one.clone()),
                    (x_ymn, one.clone()),
                ],
            );
            if s != expanded {
                return Err(format!("s_{{{m},{n}}} does not match the expanded form"));
            }

            // reduce a_m y^m * (g_n) and b_n * (g_m) * y^n out of s
            let reduced = s
                .combine(
                    &Rationals,
                    &ord,
                    &(-wm.a.clone()),
                    &Word::power(Y, m),
                    &wn.g,
                    &Word::one(),
                )
                .combine(
                    &Rationals,
                    &ord,
                    &(-wn.b.clone()),
                    &Word::one(),
                    &wm.g,
                    &Word::power(Y, n),
                );
            let target = wmn.g.scale(&Rationals, &(-(&wn.a + &wm.b)));
            if reduced != target {
                return Err(format!(
                    "two-step reduction of s_{{{m},{n}}} is not -(a_n + b_m) g_{{{}}}",
                    m + n
                ));
            }
        }
    }
    Ok(())
}

/// Classical total reduction with no signature constraints: repeatedly
/// cancel the largest reducible support word by the first reducer whose
/// leading monomial divides it. Engine-independent.
pub fn plain_reduce<F: Field>(
    field: &F,
    ord: &MonomialOrder,
    mut f: Polynomial<F>,
    reducers: &[Polynomial<F>],
) -> Polynomial<F> {
    let mut i = 0;
    'scan: while i < f.num_terms() {
        let w = f.terms()[i].0.clone();
        for g in reducers {
            let lm = match g.lm() {
                Some(lm) => lm,
                None => continue,
            };
            if let Some(pos) = w.factor_positions(lm).first() {
                let u = w.slice(0, *pos);
                let v = w.slice(pos + lm.len(), w.len());
                let c = field.div(&f.terms()[i].1, g.lc().unwrap()).unwrap();
                f = f.combine(field, ord, &field.neg(&c), &u, g, &v);
                continue 'scan;
            }
        }
        i += 1;
    }
    f
}

/// Brute-force labeled basis: walk every module monomial below the bound in
/// ascending order, reduce its evaluation with full label tracking and no
/// pruning, and collect the nonzero normal forms that are not equal-shift
/// top-reducible. The engine's (lm, sig) pairs and syzygy signatures must
/// match this at small scale. Exponential by nature; refuses budgets that
/// are clearly out of reach.
pub fn brute_force_sig_labels<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    gens: &[Polynomial<F>],
    bound: &SigBound,
) -> Result<SigBasis<F>> {
    let monomials = monomials_below(bound, mord);
    if monomials.len() > 200_000 {
        return Err(Error::Internal(format!(
            "brute-force oracle budget exceeded: {} module monomials below the bound",
            monomials.len()
        )));
    }
    let mut elements: Vec<SigPolynomial<F>> = Vec::new();
    let mut tracker = SyzygyTracker::new();
    let mut syzygies: Vec<ModuleMonomial> = Vec::new();
    let mut syzygy_labels: Vec<ModuleElement<F>> = Vec::new();

    for mu in monomials {
        let value = evaluate_monomial(field, mord, &mu, gens)?;
        let label = ModuleElement::monomial(mu.clone(), field.one(), field);
        let (nf, nf_label) = regular_sig_reduce(field, mord, value, &mu, Some(label), &elements);
        let nf_label = nf_label.unwrap();
        if nf.is_zero() {
            if !tracker.divides(&mu) {
                let lc = nf_label.leading_coeff().unwrap().clone();
                syzygy_labels.push(nf_label.scale(field, &field.inv(&lc)?));
                syzygies.push(mu.clone());
                tracker.record_explicit(mu);
            }
            continue;
        }
        if tracker.divides(&mu) {
            // inconsistent: a nonzero normal form at a syzygy signature
            return Err(Error::Internal(
                "brute-force oracle found a nonzero normal form at a syzygy signature".into(),
            ));
        }
        let (monic, lc) = nf.make_monic(field)?;
        let top_reducible = elements.iter().any(|h| {
            mu.divide_by(&h.sig).is_some_and(|(u, v)| {
                u.concat(h.poly.lm().unwrap()).concat(&v) == *monic.lm().unwrap()
            })
        });
        if top_reducible {
            continue;
        }
        let label = nf_label.scale(field, &field.inv(&lc)?);
        // families only: the oracle visits every monomial in ascending
        // order anyway, so tied-family members are discovered at visit time
        let no_materialize = SigBound::SigDegree(0);
        for other in &elements {
            let (lp, lq) = (monic.lm().unwrap(), other.poly.lm().unwrap());
            tracker.record_pair(mord, &no_materialize, &mu, lp, &other.sig, lq);
            tracker.record_pair(mord, &no_materialize, &other.sig, lq, &mu, lp);
        }
        tracker.record_pair(
            mord,
            &no_materialize,
            &mu,
            monic.lm().unwrap(),
            &mu,
            monic.lm().unwrap(),
        );
        elements.push(SigPolynomial {
            poly: monic,
            sig: mu,
            label: Some(label),
        });
    }

    // keep only syzygy signatures that are minimal against the final data
    let mut final_tracker = SyzygyTracker::new();
    for s in &syzygies {
        final_tracker.record_explicit(s.clone());
    }
    let no_materialize = SigBound::SigDegree(0);
    for p in &elements {
        for q in &elements {
            final_tracker.record_pair(
                mord,
                &no_materialize,
                &p.sig,
                p.poly.lm().unwrap(),
                &q.sig,
                q.poly.lm().unwrap(),
            );
        }
    }
    let keep: Vec<bool> = syzygies
        .iter()
        .enumerate()
        .map(|(i, s)| !final_tracker.divides_excluding(s, i))
        .collect();
    let syzygies: Vec<ModuleMonomial> = syzygies
        .into_iter()
        .zip(keep.iter())
        .filter(|(_, k)| **k)
        .map(|(s, _)| s)
        .collect();
    let syzygy_labels: Vec<ModuleElement<F>> = syzygy_labels
        .into_iter()
        .zip(keep.iter())
        .filter(|(_, k)| **k)
        .map(|(s, _)| s)
        .collect();

    debug_assert!(elements
        .windows(2)
        .all(|w| mord.cmp_sigs(&w[0].sig, &w[1].sig) == Ordering::Less));
    Ok(SigBasis {
        elements,
        syzygies,
        syzygy_labels: Some(syzygy_labels),
        bound: bound.clone(),
    })
}

//! The free bimodule over the free algebra: module monomials `a e_i b`,
//! module elements, signatures, the evaluation homomorphism, and the labeled
//! and signature-pair polynomial types the engine works with.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::Ring;
use crate::arith::word::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::order::ModuleOrder;
use std::cmp::Ordering;

/// A bimodule monomial `a e_i b`. Components are stored 0-based; they print
/// 1-based as `e1`, `e2`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleMonomial {
    left: Word,
    component: usize,
    right: Word,
}

impl ModuleMonomial {
    pub fn new(left: Word, component: usize, right: Word) -> Self {
        ModuleMonomial {
            left,
            component,
            right,
        }
    }

    /// The canonical basis monomial `e_i` (0-based component).
    pub fn epsilon(component: usize) -> Self {
        ModuleMonomial {
            left: Word::one(),
            component,
            right: Word::one(),
        }
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    /// The bimodule action `v * (a e_i b) * w = (va) e_i (bw)`.
    pub fn mul_outer(&self, v: &Word, w: &Word) -> ModuleMonomial {
        ModuleMonomial {
            left: v.concat(&self.left),
            component: self.component,
            right: self.right.concat(w),
        }
    }

    /// If `self = u * other * v`, return the unique `(u, v)`; module monomial
    /// division is rigid: `u` must be the leading part of the left word and
    /// `v` the trailing part of the right word.
    pub fn divide_by(&self, other: &ModuleMonomial) -> Option<(Word, Word)> {
        if self.component != other.component
            || !self.left.ends_with(&other.left)
            || !self.right.starts_with(&other.right)
        {
            return None;
        }
        let u = self.left.slice(0, self.left.len() - other.left.len());
        let v = self.right.slice(other.right.len(), self.right.len());
        Some((u, v))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!(
            "{}*e{}*{}",
            self.left.render(alphabet),
            self.component + 1,
            self.right.render(alphabet)
        )
    }
}

/// An element of the free bimodule: a finite association of module monomials
/// to nonzero coefficients, stored descending under the module order so the
/// signature is the first term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement<R: Ring> {
    terms: Vec<(ModuleMonomial, R::Elem)>,
}

impl<R: Ring> ModuleElement<R> {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn monomial(m: ModuleMonomial, coeff: R::Elem, ring: &R) -> Self {
        if ring.is_zero(&coeff) {
            ModuleElement::zero()
        } else {
            ModuleElement {
                terms: vec![(m, coeff)],
            }
        }
    }

    pub fn from_terms(
        ring: &R,
        mord: &ModuleOrder,
        mut terms: Vec<(ModuleMonomial, R::Elem)>,
    ) -> Self {
        terms.sort_by(|a, b| mord.cmp_sigs(&b.0, &a.0));
        let mut out: Vec<(ModuleMonomial, R::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = ring.add(lc, &c);
                    if ring.is_zero(lc) {
                        out.pop();
                    }
                }
                _ => {
                    if !ring.is_zero(&c) {
                        out.push((m, c));
                    }
                }
            }
        }
        ModuleElement { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(ModuleMonomial, R::Elem)] {
        &self.terms
    }

    /// The largest support monomial. Errors on zero.
    pub fn signature(&self) -> Result<&ModuleMonomial> {
        self.terms
            .first()
            .map(|(m, _)| m)
            .ok_or(Error::ZeroArgument("signature"))
    }

    pub fn leading_coeff(&self) -> Option<&R::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// `self + c * (v * other * w)`; the shifted copy stays sorted because
    /// outer multiplication preserves the module order.
    pub fn combine(
        &self,
        ring: &R,
        mord: &ModuleOrder,
        c: &R::Elem,
        v: &Word,
        other: &ModuleElement<R>,
        w: &Word,
    ) -> ModuleElement<R> {
        if ring.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let shifted = other
            .terms
            .iter()
            .map(|(m, oc)| (m.mul_outer(v, w), ring.mul(c, oc)));
        let mut out: Vec<(ModuleMonomial, R::Elem)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut mine = self.terms.iter().peekable();
        let mut theirs = shifted.peekable();
        loop {
            match (mine.peek(), theirs.peek()) {
                (Some((mm, mc)), Some((tm, _))) => match mord.cmp_sigs(mm, tm) {
                    Ordering::Greater => {
                        out.push((mm.clone(), mc.clone()));
                        mine.next();
                    }
                    Ordering::Less => {
                        let (tm, tc) = theirs.next().unwrap();
                        if !ring.is_zero(&tc) {
                            out.push((tm, tc));
                        }
                    }
                    Ordering::Equal => {
                        let (_, tc) = theirs.next().unwrap();
                        let sum = ring.add(mc, &tc);
                        if !ring.is_zero(&sum) {
                            out.push((mm.clone(), sum));
                        }
                        mine.next();
                    }
                },
                (Some((mm, mc)), None) => {
                    out.push((mm.clone(), mc.clone()));
                    mine.next();
                }
                (None, Some(_)) => {
                    let (tm, tc) = theirs.next().unwrap();
                    if !ring.is_zero(&tc) {
                        out.push((tm, tc));
                    }
                }
                (None, None) => break,
            }
        }
        ModuleElement { terms: out }
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> ModuleElement<R> {
        if ring.is_zero(c) {
            return ModuleElement::zero();
        }
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|(m, t)| (m.clone(), ring.mul(c, t)))
                .collect(),
        }
    }
}

/// The evaluation homomorphism: `sum c_i a_i e_{j_i} b_i` maps to
/// `sum c_i a_i f_{j_i} b_i` over the given generators.
pub fn evaluate_label<R: Ring>(
    ring: &R,
    mord: &ModuleOrder,
    label: &ModuleElement<R>,
    gens: &[Polynomial<R>],
) -> Result<Polynomial<R>> {
    let mut acc = Polynomial::zero();
    for (m, c) in label.terms() {
        let f = gens.get(m.component()).ok_or(Error::ComponentOutOfRange {
            component: m.component() + 1,
            rank: gens.len(),
        })?;
        acc = acc.combine(ring, mord.mono(), c, m.left(), f, m.right());
    }
    Ok(acc)
}

/// Evaluation of a single module monomial, `u f_i v`.
pub fn evaluate_monomial<R: Ring>(
    ring: &R,
    mord: &ModuleOrder,
    m: &ModuleMonomial,
    gens: &[Polynomial<R>],
) -> Result<Polynomial<R>> {
    evaluate_label(
        ring,
        mord,
        &ModuleElement::monomial(m.clone(), ring.one(), ring),
        gens,
    )
}

/// A polynomial together with its signature; the unit of signature-basis
/// computation. The full module label is carried only in strong mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigPolynomial<R: Ring> {
    pub poly: Polynomial<R>,
    pub sig: ModuleMonomial,
    pub label: Option<ModuleElement<R>>,
}

impl<R: Ring> SigPolynomial<R> {
    pub fn new(poly: Polynomial<R>, sig: ModuleMonomial) -> Self {
        SigPolynomial {
            poly,
            sig,
            label: None,
        }
    }
}

/// A polynomial with its full module witness; the constructor checks the
/// defining relation `evaluate(label) == poly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPolynomial<R: Ring> {
    poly: Polynomial<R>,
    label: ModuleElement<R>,
}

impl<R: Ring> LabeledPolynomial<R> {
    pub fn new(
        ring: &R,
        mord: &ModuleOrder,
        poly: Polynomial<R>,
        label: ModuleElement<R>,
        gens: &[Polynomial<R>],
    ) -> Result<Self> {
        let eval = evaluate_label(ring, mord, &label, gens)?;
        if eval != poly {
            return Err(Error::Internal(
                "labeled polynomial constructor: label does not evaluate to the polynomial".into(),
            ));
        }
        Ok(LabeledPolynomial { poly, label })
    }

    pub fn poly(&self) -> &Polynomial<R> {
        &self.poly
    }

    pub fn label(&self) -> &ModuleElement<R> {
        &self.label
    }
}

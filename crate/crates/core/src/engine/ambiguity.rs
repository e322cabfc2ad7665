//! Overlap and inclusion ambiguities of leading monomials.
//!
//! An ambiguity aligns shifted copies of two basis elements on a common
//! monomial `lma`. Overlaps require a proper nonempty suffix of one leading
//! monomial to equal a proper nonempty prefix of the other; inclusions
//! require one leading monomial to be a proper factor of the other with a
//! nontrivial outer shift. The identity alignment of an element with itself
//! is excluded.

use crate::arith::scalar::Ring;
use crate::arith::word::Word;
use crate::bimodule::{ModuleMonomial, SigPolynomial};
use crate::error::{Error, Result};
use crate::order::ModuleOrder;

/// An alignment `a * p * b = c * q * d` on the common leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    /// Index of the first source element in its basis.
    pub p: usize,
    /// Index of the second source element.
    pub q: usize,
    /// Outer factors `(a, b)` applied to `p`.
    pub p_outer: (Word, Word),
    /// Outer factors `(c, d)` applied to `q`.
    pub q_outer: (Word, Word),
    /// The common shifted leading monomial `lm(a p b) = lm(c q d)`.
    pub lma: Word,
    /// The larger of the two shifted signatures.
    pub siga: ModuleMonomial,
    /// True when the two shifted signatures differ.
    pub regular: bool,
}

/// All minimal ambiguities of two basis elements, both orientations.
/// For `p_idx == q_idx` the two mirror orientations of each self-overlap are
/// both reported, matching the pair structure of self-overlapping monomials.
pub fn enumerate_ambiguities<R: Ring>(
    mord: &ModuleOrder,
    p_idx: usize,
    p: &SigPolynomial<R>,
    q_idx: usize,
    q: &SigPolynomial<R>,
) -> Result<Vec<Ambiguity>> {
    let lm_p = p
        .poly
        .lm()
        .ok_or(Error::ZeroArgument("enumerate_ambiguities"))?;
    let lm_q = q
        .poly
        .lm()
        .ok_or(Error::ZeroArgument("enumerate_ambiguities"))?;
    let n1 = lm_p.len();
    let n2 = lm_q.len();
    let mut out = Vec::new();

    let mut push = |p_outer: (Word, Word), q_outer: (Word, Word), lma: Word| {
        let sp = p.sig.mul_outer(&p_outer.0, &p_outer.1);
        let sq = q.sig.mul_outer(&q_outer.0, &q_outer.1);
        let regular = sp != sq;
        let siga = mord.max_sig(&sp, &sq).clone();
        out.push(Ambiguity {
            p: p_idx,
            q: q_idx,
            p_outer,
            q_outer,
            lma,
            siga,
            regular,
        });
    };

    // overlaps: suffix of lm(p) = prefix of lm(q)
    for o in 1..n1.min(n2) {
        if lm_p.letters()[n1 - o..] == lm_q.letters()[..o] {
            let b = lm_q.slice(o, n2);
            let c = lm_p.slice(0, n1 - o);
            push((Word::one(), b.clone()), (c, Word::one()), lm_p.concat(&b));
        }
    }
    // overlaps: suffix of lm(q) = prefix of lm(p)
    for o in 1..n1.min(n2) {
        if lm_q.letters()[n2 - o..] == lm_p.letters()[..o] {
            let a = lm_q.slice(0, n2 - o);
            let d = lm_p.slice(o, n1);
            push((a, Word::one()), (Word::one(), d.clone()), lm_q.concat(&d));
        }
    }
    // inclusions: lm(q) a proper factor of lm(p)
    if n2 < n1 {
        for pos in lm_p.factor_positions(lm_q) {
            let c = lm_p.slice(0, pos);
            let d = lm_p.slice(pos + n2, n1);
            push((Word::one(), Word::one()), (c, d), lm_p.clone());
        }
    }
    // inclusions: lm(p) a proper factor of lm(q)
    if n1 < n2 {
        for pos in lm_q.factor_positions(lm_p) {
            let a = lm_q.slice(0, pos);
            let b = lm_q.slice(pos + n1, n2);
            push((a, b), (Word::one(), Word::one()), lm_q.clone());
        }
    }
    Ok(out)
}

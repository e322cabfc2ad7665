//! Regular sig-reduction.
//!
//! A support word `lm(a g b)` of the reducee may be cancelled by a basis
//! element `g` only when the shifted signature `a sig(g) b` is strictly below
//! the reducee's signature, so the signature never changes during reduction.
//! Reducer selection is deterministic: smallest shifted signature first, then
//! smallest reducer leading monomial, then basis index, then shortest left
//! factor. The result is therefore a canonical normal form.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::Field;
use crate::arith::word::Word;
use crate::bimodule::{ModuleElement, ModuleMonomial, SigPolynomial};
use crate::order::ModuleOrder;
use std::cmp::Ordering;

struct Pick {
    idx: usize,
    u: Word,
    v: Word,
    shifted: ModuleMonomial,
}

fn find_reducer<F: Field>(
    mord: &ModuleOrder,
    basis: &[SigPolynomial<F>],
    word: &Word,
    sig: &ModuleMonomial,
) -> Option<Pick> {
    let mut best: Option<Pick> = None;
    for (idx, g) in basis.iter().enumerate() {
        let lm = match g.poly.lm() {
            Some(lm) => lm,
            None => continue,
        };
        for pos in word.factor_positions(lm) {
            let u = word.slice(0, pos);
            let v = word.slice(pos + lm.len(), word.len());
            let shifted = g.sig.mul_outer(&u, &v);
            if mord.cmp_sigs(&shifted, sig) != Ordering::Less {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => match mord.cmp_sigs(&shifted, &b.shifted) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let lm_b = basis[b.idx].poly.lm().unwrap();
                        match mord.mono().cmp_words(lm, lm_b) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => (idx, u.len()) < (b.idx, b.u.len()),
                        }
                    }
                },
            };
            if better {
                best = Some(Pick { idx, u, v, shifted });
            }
        }
    }
    best
}

/// Regular sig-reduce `poly` (with signature `sig`, and full label in strong
/// mode) by `basis` until no support word admits a regular reducer. Returns
/// the normal form together with the updated label.
pub fn regular_sig_reduce<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    mut poly: Polynomial<F>,
    sig: &ModuleMonomial,
    mut label: Option<ModuleElement<F>>,
    basis: &[SigPolynomial<F>],
) -> (Polynomial<F>, Option<ModuleElement<F>>) {
    let mut i = 0;
    while i < poly.num_terms() {
        let word = poly.terms()[i].0.clone();
        match find_reducer(mord, basis, &word, sig) {
            Some(pick) => {
                let c = poly.terms()[i].1.clone();
                let neg_c = field.neg(&c);
                let g = &basis[pick.idx];
                poly = poly.combine(field, mord.mono(), &neg_c, &pick.u, &g.poly, &pick.v);
                if let Some(l) = label {
                    let gl = g
                        .label
                        .as_ref()
                        .expect("strong mode requires labels on every basis element");
                    label = Some(l.combine(field, mord, &neg_c, &pick.u, gl, &pick.v));
                }
                // the word at position i was cancelled and only smaller words
                // were introduced, so everything above i is still a normal form
            }
            None => i += 1,
        }
    }
    (poly, label)
}

/// Is any support word of `poly` regular-reducible at signature `sig`?
pub fn is_regular_reducible<F: Field>(
    mord: &ModuleOrder,
    basis: &[SigPolynomial<F>],
    poly: &Polynomial<F>,
    sig: &ModuleMonomial,
) -> bool {
    poly.support()
        .any(|w| find_reducer(mord, basis, w, sig).is_some())
}

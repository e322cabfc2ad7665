//! Final verification of candidate bases.
//!
//! `sig_verification_test` works on signature pairs: it checks the
//! leading-data injectivity precondition, then that the evaluation of every
//! signature regular-sig-reduces to a scalar multiple of the stored
//! polynomial (exactly over Q, or modulo a fresh prime in probabilistic
//! mode), then the cover criterion. `verification_test` is the strong-mode
//! variant checking full labels instead of reductions.

use crate::arith::poly::{reduce_mod, Polynomial};
use crate::arith::scalar::{Field, Rationals, Zmod};
use crate::arith::word::Alphabet;
use crate::bimodule::{evaluate_label, evaluate_monomial, ModuleMonomial, SigPolynomial};
use crate::engine::basis::SigBasis;
use crate::engine::cover::{check_cover_criterion, CoverReport};
use crate::engine::reduce::regular_sig_reduce;
use crate::error::{Error, Result};
use crate::order::ModuleOrder;
use rayon::prelude::*;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exact,
    /// Run the polynomial arithmetic over Z/q for a fresh prime q. The
    /// verdict then certifies correctness only with high probability.
    Probabilistic {
        prime: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    NotSorted,
    NotMonic {
        index: usize,
    },
    /// Leading-data injectivity violated: entry `a` has the leading data of
    /// a shift of entry `b`.
    LeadingDataCollision {
        a: usize,
        b: usize,
    },
    /// The evaluation of the signature did not reduce to a multiple of the
    /// stored polynomial.
    WrongNormalForm {
        index: usize,
        sig: ModuleMonomial,
    },
    /// Strong mode: the label does not evaluate to the polynomial.
    LabelMismatch {
        index: usize,
    },
    /// Strong mode: a syzygy label does not evaluate to zero.
    SyzygyLabelMismatch {
        index: usize,
    },
}

impl VerifyFailure {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            VerifyFailure::NotSorted => "elements are not ascending by signature".into(),
            VerifyFailure::NotMonic { index } => format!("element {index} is not monic"),
            VerifyFailure::LeadingDataCollision { a, b } => {
                format!("leading data of entry {a} is a shift of entry {b}")
            }
            VerifyFailure::WrongNormalForm { index, sig } => format!(
                "entry {} at signature {} does not reduce to a multiple of its polynomial",
                index,
                sig.render(alphabet)
            ),
            VerifyFailure::LabelMismatch { index } => {
                format!("label of element {index} does not evaluate to its polynomial")
            }
            VerifyFailure::SyzygyLabelMismatch { index } => {
                format!("syzygy label {index} does not evaluate to zero")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub ok: bool,
    pub probabilistic: bool,
    pub failures: Vec<VerifyFailure>,
    pub cover: CoverReport,
}

impl VerifyReport {
    pub fn render(&self, alphabet: &Alphabet) -> Vec<String> {
        let mut out: Vec<String> = self.failures.iter().map(|f| f.render(alphabet)).collect();
        out.extend(self.cover.render(alphabet));
        out
    }
}

/// Leading data of all entries, elements first, then syzygies as zero
/// polynomials.
fn entries<F: Field>(basis: &SigBasis<F>) -> Vec<(Option<&Polynomial<F>>, &ModuleMonomial)> {
    let mut out: Vec<(Option<&Polynomial<F>>, &ModuleMonomial)> = basis
        .elements
        .iter()
        .map(|e| (Some(&e.poly), &e.sig))
        .collect();
    out.extend(basis.syzygies.iter().map(|s| (None, s)));
    out
}

fn well_formed<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    basis: &SigBasis<F>,
    failures: &mut Vec<VerifyFailure>,
) {
    for w in basis.elements.windows(2) {
        if mord.cmp_sigs(&w[0].sig, &w[1].sig) != Ordering::Less {
            failures.push(VerifyFailure::NotSorted);
            break;
        }
    }
    for (i, e) in basis.elements.iter().enumerate() {
        if !e.poly.lc().map(|c| field.is_one(c)).unwrap_or(false) {
            failures.push(VerifyFailure::NotMonic { index: i });
        }
    }
}

/// The precondition of the pair-verification test: equal leading data up to
/// a shift forces equal entries.
fn leading_data_injective<F: Field>(basis: &SigBasis<F>, failures: &mut Vec<VerifyFailure>) {
    let es = entries(basis);
    for (a, (pa, sa)) in es.iter().enumerate() {
        for (b, (pb, sb)) in es.iter().enumerate() {
            if a == b {
                continue;
            }
            if let Some((u, v)) = sa.divide_by(sb) {
                let collide = match (pa, pb) {
                    (None, None) => true,
                    (Some(fa), Some(fb)) => {
                        fa.lm().unwrap() == &u.concat(fb.lm().unwrap()).concat(&v)
                    }
                    // a zero and a nonzero leading monomial never collide
                    _ => false,
                };
                if collide {
                    failures.push(VerifyFailure::LeadingDataCollision { a, b });
                }
            }
        }
    }
}

/// Step two of the pair test over an arbitrary field: for every entry
/// `(g, mu)`, the evaluation of `mu` must regular-sig-reduce by the basis to
/// `c * g` with `c` nonzero (to zero for syzygy entries).
fn normal_forms_match<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    basis: &SigBasis<F>,
    gens: &[Polynomial<F>],
) -> Result<Vec<VerifyFailure>> {
    let es: Vec<(usize, Option<&Polynomial<F>>, &ModuleMonomial)> = entries(basis)
        .into_iter()
        .enumerate()
        .map(|(i, (p, s))| (i, p, s))
        .collect();
    let failures: Vec<VerifyFailure> = es
        .par_iter()
        .map(|(i, p, sig)| -> Result<Option<VerifyFailure>> {
            let value = evaluate_monomial(field, mord, sig, gens)?;
            let (nf, _) = regular_sig_reduce(field, mord, value, sig, None, &basis.elements);
            let ok = match p {
                None => nf.is_zero(),
                Some(g) => {
                    if nf.is_zero() || g.is_zero() {
                        false
                    } else {
                        // g is monic, so the only possible constant is lc(nf)
                        let c = nf.lc().unwrap().clone();
                        nf == g.scale(field, &c)
                    }
                }
            };
            Ok((!ok).then(|| VerifyFailure::WrongNormalForm {
                index: *i,
                sig: (*sig).clone(),
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(failures)
}

/// The signature-pair verification test.
///
/// In probabilistic mode the prime must not have been used during the
/// modular computation, and must not divide any denominator in the basis or
/// the generators.
pub fn sig_verification_test(
    mord: &ModuleOrder,
    basis: &SigBasis<Rationals>,
    gens: &[Polynomial<Rationals>],
    mode: VerifyMode,
    used_primes: &[u64],
) -> Result<VerifyReport> {
    let mut failures = Vec::new();
    well_formed(&Rationals, mord, basis, &mut failures);
    leading_data_injective(basis, &mut failures);

    let probabilistic = match mode {
        VerifyMode::Exact => {
            failures.extend(normal_forms_match(&Rationals, mord, basis, gens)?);
            false
        }
        VerifyMode::Probabilistic { prime } => {
            if used_primes.contains(&prime) {
                return Err(Error::PrimeCollision { prime });
            }
            let zp = Zmod::new(prime);
            let gens_p = gens
                .iter()
                .map(|g| reduce_mod(g, &zp))
                .collect::<Result<Vec<_>>>()?;
            let elements_p = basis
                .elements
                .iter()
                .map(|e| Ok(SigPolynomial::new(reduce_mod(&e.poly, &zp)?, e.sig.clone())))
                .collect::<Result<Vec<_>>>()?;
            let basis_p = SigBasis {
                elements: elements_p,
                syzygies: basis.syzygies.clone(),
                syzygy_labels: None,
                bound: basis.bound.clone(),
            };
            failures.extend(normal_forms_match(&zp, mord, &basis_p, &gens_p)?);
            true
        }
    };

    let cover = check_cover_criterion(mord, basis)?;
    Ok(VerifyReport {
        ok: failures.is_empty() && cover.ok,
        probabilistic,
        failures,
        cover,
    })
}

/// The strong-mode verification test: every label must evaluate to its
/// polynomial (and every syzygy label to zero), then the cover criterion.
pub fn verification_test(
    mord: &ModuleOrder,
    basis: &SigBasis<Rationals>,
    gens: &[Polynomial<Rationals>],
) -> Result<VerifyReport> {
    let mut failures = Vec::new();
    well_formed(&Rationals, mord, basis, &mut failures);

    let label_failures: Vec<VerifyFailure> = basis
        .elements
        .par_iter()
        .enumerate()
        .map(|(i, e)| -> Result<Option<VerifyFailure>> {
            let label = e
                .label
                .as_ref()
                .ok_or_else(|| Error::Internal("verification_test requires labels".into()))?;
            let ok = evaluate_label(&Rationals, mord, label, gens)? == e.poly
                && label.signature().ok() == Some(&e.sig);
            Ok((!ok).then_some(VerifyFailure::LabelMismatch { index: i }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    failures.extend(label_failures);

    let syz_labels = basis
        .syzygy_labels
        .as_ref()
        .ok_or_else(|| Error::Internal("verification_test requires syzygy labels".into()))?;
    for (i, (sig, label)) in basis.syzygies.iter().zip(syz_labels).enumerate() {
        let ok = evaluate_label(&Rationals, mord, label, gens)?.is_zero()
            && label.signature().ok() == Some(sig);
        if !ok {
            failures.push(VerifyFailure::SyzygyLabelMismatch { index: i });
        }
    }

    let cover = check_cover_criterion(mord, basis)?;
    Ok(VerifyReport {
        ok: failures.is_empty() && cover.ok,
        probabilistic: false,
        failures,
        cover,
    })
}

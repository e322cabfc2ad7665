//! The cover criterion: a purely combinatorial check, on leading data only,
//! that a candidate set is a strong Gröbner basis up to the bound. No
//! coefficient arithmetic happens here; tests pin that with the op counter.

use crate::arith::scalar::Field;
use crate::arith::word::{Alphabet, Word};
use crate::bimodule::ModuleMonomial;
use crate::engine::ambiguity::{enumerate_ambiguities, Ambiguity};
use crate::engine::basis::SigBasis;
use crate::engine::syzygy::SyzygyTracker;
use crate::error::Result;
use crate::order::ModuleOrder;
use std::cmp::Ordering;

/// Shared state for covering queries against one basis.
pub struct CoverChecker<'a, F: Field> {
    mord: &'a ModuleOrder,
    basis: &'a SigBasis<F>,
    tracker: SyzygyTracker,
}

impl<'a, F: Field> CoverChecker<'a, F> {
    pub fn new(mord: &'a ModuleOrder, basis: &'a SigBasis<F>) -> Self {
        CoverChecker {
            mord,
            basis,
            tracker: basis.syzygy_tracker(mord),
        }
    }

    /// An ambiguity is covered when some basis element `h` (possibly a
    /// recorded syzygy signature, in which case the leading-monomial
    /// condition is vacuous) satisfies `u sig(h) v = siga` and
    /// `u lm(h) v < lma`.
    pub fn covered(&self, amb: &Ambiguity) -> bool {
        if self.tracker.divides(&amb.siga) {
            return true;
        }
        self.basis.elements.iter().any(|h| {
            amb.siga.divide_by(&h.sig).is_some_and(|(u, v)| {
                let shifted = u.concat(h.poly.lm().unwrap()).concat(&v);
                self.mord.mono().cmp_words(&shifted, &amb.lma) == Ordering::Less
            })
        })
    }
}

/// One-shot covering query.
pub fn is_covered<F: Field>(mord: &ModuleOrder, amb: &Ambiguity, basis: &SigBasis<F>) -> bool {
    CoverChecker::new(mord, basis).covered(amb)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverFailure {
    /// No element with signature `e_i` although `e_i` is below the bound.
    MissingGenerator { component: usize },
    /// A nonzero element sits at a recorded syzygy signature.
    ElementAtSyzygySignature { index: usize, sig: ModuleMonomial },
    /// An explicit syzygy signature is divisible by other recorded data.
    SyzygyNotReduced { index: usize, sig: ModuleMonomial },
    /// A regular ambiguity below the bound is not covered.
    UncoveredAmbiguity {
        p: usize,
        q: usize,
        lma: Word,
        siga: ModuleMonomial,
    },
}

impl CoverFailure {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            CoverFailure::MissingGenerator { component } => {
                format!("condition 1: no element with signature 1*e{}*1", component + 1)
            }
            CoverFailure::ElementAtSyzygySignature { index, sig } => format!(
                "condition 2: element {} sits at syzygy signature {}",
                index,
                sig.render(alphabet)
            ),
            CoverFailure::SyzygyNotReduced { index, sig } => format!(
                "condition 2: syzygy signature {} (entry {}) is reducible by the rest",
                sig.render(alphabet),
                index
            ),
            CoverFailure::UncoveredAmbiguity { p, q, lma, siga } => format!(
                "condition 3: uncovered ambiguity of elements {} and {} with lma {} and signature {}",
                p,
                q,
                lma.render(alphabet),
                siga.render(alphabet)
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverReport {
    pub ok: bool,
    pub failures: Vec<CoverFailure>,
    pub ambiguities_checked: usize,
}

impl CoverReport {
    pub fn render(&self, alphabet: &Alphabet) -> Vec<String> {
        self.failures.iter().map(|f| f.render(alphabet)).collect()
    }
}

/// Check the three cover-criterion conditions, restricted to signatures
/// below the basis bound:
/// 1. every admitted generator signature `e_i` is present;
/// 2. syzygy data is consistent: trivial-syzygy families of the basis are
///    dominated by construction, the explicit list is mutually reduced, and
///    no nonzero element sits at a recorded syzygy signature;
/// 3. every regular ambiguity below the bound is covered.
pub fn check_cover_criterion<F: Field>(
    mord: &ModuleOrder,
    basis: &SigBasis<F>,
) -> Result<CoverReport> {
    let mut failures = Vec::new();
    let bound = &basis.bound;

    for comp in 0..mord.rank() {
        let eps = ModuleMonomial::epsilon(comp);
        if bound.admits(&eps, mord)
            && !basis
                .elements
                .iter()
                .any(|e| mord.cmp_sigs(&e.sig, &eps) == Ordering::Equal)
        {
            failures.push(CoverFailure::MissingGenerator { component: comp });
        }
    }

    let checker = CoverChecker::new(mord, basis);
    for (i, e) in basis.elements.iter().enumerate() {
        if checker.tracker.divides(&e.sig) {
            failures.push(CoverFailure::ElementAtSyzygySignature {
                index: i,
                sig: e.sig.clone(),
            });
        }
    }
    for (i, s) in basis.syzygies.iter().enumerate() {
        if checker.tracker.divides_excluding(s, i) {
            failures.push(CoverFailure::SyzygyNotReduced {
                index: i,
                sig: s.clone(),
            });
        }
    }

    let mut checked = 0;
    for (i, p) in basis.elements.iter().enumerate() {
        for (j, q) in basis.elements.iter().enumerate().skip(i) {
            for amb in enumerate_ambiguities(mord, i, p, j, q)? {
                if !amb.regular || !bound.admits(&amb.siga, mord) {
                    continue;
                }
                checked += 1;
                if !checker.covered(&amb) {
                    failures.push(CoverFailure::UncoveredAmbiguity {
                        p: amb.p,
                        q: amb.q,
                        lma: amb.lma,
                        siga: amb.siga,
                    });
                }
            }
        }
    }

    Ok(CoverReport {
        ok: failures.is_empty(),
        failures,
        ambiguities_checked: checked,
    })
}

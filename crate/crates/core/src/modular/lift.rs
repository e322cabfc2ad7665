//! Lifting voted per-prime bases to a rational candidate.
//!
//! Elements are matched across primes by exact signature equality (the vote
//! guarantees equal leading data). Coefficients of matched terms are
//! combined by Chinese remaindering and reconstructed through the Farey map.
//! A support mismatch between primes demotes the deviating primes back to
//! the caller; a failed reconstruction signals that the prime set is not yet
//! sufficiently large.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::Rationals;
use crate::arith::word::Word;
use crate::bimodule::{ModuleElement, ModuleMonomial, SigPolynomial};
use crate::engine::basis::SigBasis;
use crate::error::{Error, Result};
use crate::modular::recon::{crt_combine, farey_reconstruct};
use crate::modular::vote::ModularRound;
use crate::order::ModuleOrder;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;

#[derive(Debug)]
pub enum LiftOutcome {
    Lifted(SigBasis<Rationals>),
    /// Some coefficient has no Farey preimage: enlarge the prime set.
    ReconstructionFailed {
        element: usize,
    },
    /// Primes disagreeing with the weighted-majority support pattern.
    SupportMismatch {
        offending: Vec<u64>,
    },
}

/// Weighted-majority support pattern for one element slot across primes:
/// the set of words the retained bases should agree on.
fn majority_support(round: &ModularRound, slot: usize) -> Vec<Word> {
    let mut words: Vec<Word> = Vec::new();
    for e in &round.entries {
        for (w, _) in e.basis.elements[slot].poly.terms() {
            if !words.contains(w) {
                words.push(w.clone());
            }
        }
    }
    let total: BigRational = round.entries.iter().map(|e| e.weight.clone()).sum();
    words.retain(|w| {
        let present: BigRational = round
            .entries
            .iter()
            .filter(|e| e.basis.elements[slot].poly.coeff_of(w).is_some())
            .map(|e| e.weight.clone())
            .sum();
        let absent = &total - &present;
        match present.cmp(&absent) {
            Ordering::Greater => true,
            Ordering::Less => false,
            // tie: side with the smallest prime wins
            Ordering::Equal => {
                let smallest = round.entries.iter().map(|e| e.prime).min().unwrap();
                round
                    .entries
                    .iter()
                    .find(|e| e.prime == smallest)
                    .map(|e| e.basis.elements[slot].poly.coeff_of(w).is_some())
                    .unwrap_or(false)
            }
        }
    });
    words
}

/// Lift the voted round to a rational signature basis.
pub fn lift_and_match(round: &ModularRound, mord: &ModuleOrder) -> Result<LiftOutcome> {
    let first = round
        .entries
        .first()
        .ok_or_else(|| Error::Internal("lift called on an empty round".into()))?;
    let shared_ld = first.basis.leading_data();
    for e in &round.entries {
        if e.basis.leading_data() != shared_ld {
            return Err(Error::Internal(
                "lift called before the vote: leading data differs across primes".into(),
            ));
        }
    }
    let primes: Vec<u64> = round.entries.iter().map(|e| e.prime).collect();
    let n_elements = first.basis.elements.len();
    let strong = round.entries.iter().all(|e| {
        e.basis.syzygy_labels.is_some() && e.basis.elements.iter().all(|x| x.label.is_some())
    });

    // support agreement check, element by element
    let mut offending: Vec<u64> = Vec::new();
    for slot in 0..n_elements {
        let pattern = majority_support(round, slot);
        for e in &round.entries {
            let support: Vec<&Word> = e.basis.elements[slot].poly.support().collect();
            let agrees =
                support.len() == pattern.len() && pattern.iter().all(|w| support.contains(&w));
            if !agrees && !offending.contains(&e.prime) {
                offending.push(e.prime);
            }
        }
    }
    if !offending.is_empty() {
        offending.sort_unstable();
        return Ok(LiftOutcome::SupportMismatch { offending });
    }

    let lift_coeff = |residues: &[u64]| -> Result<Option<BigRational>> {
        let c = crt_combine(residues, &primes)?;
        let n = primes
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p));
        Ok(farey_reconstruct(&c, &n))
    };

    let mut elements: Vec<SigPolynomial<Rationals>> = Vec::with_capacity(n_elements);
    for slot in 0..n_elements {
        let template = &first.basis.elements[slot];
        let mut terms: Vec<(Word, BigRational)> = Vec::with_capacity(template.poly.num_terms());
        for (w, _) in template.poly.terms() {
            let residues: Vec<u64> = round
                .entries
                .iter()
                .map(|e| *e.basis.elements[slot].poly.coeff_of(w).unwrap())
                .collect();
            match lift_coeff(&residues)? {
                Some(q) => terms.push((w.clone(), q)),
                None => return Ok(LiftOutcome::ReconstructionFailed { element: slot }),
            }
        }
        let poly = Polynomial::from_terms(&Rationals, mord.mono(), terms);
        let label = if strong {
            match lift_label(round, mord, slot, &lift_coeff)? {
                Some(l) => Some(l),
                None => return Ok(LiftOutcome::ReconstructionFailed { element: slot }),
            }
        } else {
            None
        };
        elements.push(SigPolynomial {
            poly,
            sig: template.sig.clone(),
            label,
        });
    }

    let syzygy_labels = if strong {
        let mut lifted = Vec::new();
        for k in 0..first.basis.syzygies.len() {
            match lift_syzygy_label(round, mord, k, &lift_coeff)? {
                Some(l) => lifted.push(l),
                None => {
                    return Ok(LiftOutcome::ReconstructionFailed {
                        element: n_elements + k,
                    })
                }
            }
        }
        Some(lifted)
    } else {
        None
    };

    Ok(LiftOutcome::Lifted(SigBasis {
        elements,
        syzygies: first.basis.syzygies.clone(),
        syzygy_labels,
        bound: first.basis.bound.clone(),
    }))
}

/// Lift the module label of one element slot, matching module monomials
/// exactly across primes. Labels are only lifted in strong mode; a monomial
/// support mismatch here fails the reconstruction rather than demoting.
fn lift_label(
    round: &ModularRound,
    mord: &ModuleOrder,
    slot: usize,
    lift_coeff: &dyn Fn(&[u64]) -> Result<Option<BigRational>>,
) -> Result<Option<ModuleElement<Rationals>>> {
    let template = round.entries[0].basis.elements[slot]
        .label
        .as_ref()
        .unwrap();
    let mut terms: Vec<(ModuleMonomial, BigRational)> = Vec::new();
    for (m, _) in template.terms() {
        let mut residues = Vec::with_capacity(round.entries.len());
        for e in &round.entries {
            let label = e.basis.elements[slot].label.as_ref().unwrap();
            match label.terms().iter().find(|(tm, _)| tm == m) {
                Some((_, c)) => residues.push(*c),
                None => return Ok(None),
            }
        }
        match lift_coeff(&residues)? {
            Some(q) => terms.push((m.clone(), q)),
            None => return Ok(None),
        }
    }
    Ok(Some(ModuleElement::from_terms(&Rationals, mord, terms)))
}

fn lift_syzygy_label(
    round: &ModularRound,
    mord: &ModuleOrder,
    k: usize,
    lift_coeff: &dyn Fn(&[u64]) -> Result<Option<BigRational>>,
) -> Result<Option<ModuleElement<Rationals>>> {
    let template = &round.entries[0].basis.syzygy_labels.as_ref().unwrap()[k];
    let mut terms: Vec<(ModuleMonomial, BigRational)> = Vec::new();
    for (m, _) in template.terms() {
        let mut residues = Vec::with_capacity(round.entries.len());
        for e in &round.entries {
            let label = &e.basis.syzygy_labels.as_ref().unwrap()[k];
            match label.terms().iter().find(|(tm, _)| tm == m) {
                Some((_, c)) => residues.push(*c),
                None => return Ok(None),
            }
        }
        match lift_coeff(&residues)? {
            Some(q) => terms.push((m.clone(), q)),
            None => return Ok(None),
        }
    }
    Ok(Some(ModuleElement::from_terms(&Rationals, mord, terms)))
}

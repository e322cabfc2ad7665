//! The weighted majority vote on leading data.
//!
//! Per-prime bases are grouped by equal leading data (signatures plus
//! leading monomials, syzygy signatures included); one class of maximal
//! total weight is retained. Enlargement batches carry collective weight
//! exceeding everything previously present, so a run of unlucky initial
//! primes can never keep outvoting fresh ones.

use crate::arith::scalar::Zmod;
use crate::arith::word::Word;
use crate::bimodule::ModuleMonomial;
use crate::engine::basis::{LeadingData, SigBasis};
use crate::util::fnv1a;
use num_rational::BigRational;
use std::cmp::Ordering;

/// One per-prime computation with its vote weight.
#[derive(Debug, Clone)]
pub struct PrimeBasis {
    pub prime: u64,
    pub weight: BigRational,
    pub basis: SigBasis<Zmod>,
}

/// The multi-prime state of one round: per-prime bases sorted by prime.
#[derive(Debug, Clone, Default)]
pub struct ModularRound {
    pub entries: Vec<PrimeBasis>,
}

impl ModularRound {
    pub fn primes(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.prime).collect()
    }

    pub fn sort(&mut self) {
        self.entries.sort_by_key(|e| e.prime);
    }
}

/// Stable hash of leading data for transcripts.
pub fn leading_data_hash(ld: &[(Option<Word>, ModuleMonomial)]) -> u64 {
    let mut bytes = Vec::new();
    let push_word = |bytes: &mut Vec<u8>, w: &Word| {
        bytes.extend_from_slice(&(w.len() as u32).to_le_bytes());
        for &v in w.letters() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    };
    for (lm, sig) in ld {
        match lm {
            Some(w) => {
                bytes.push(1);
                push_word(&mut bytes, w);
            }
            None => bytes.push(0),
        }
        push_word(&mut bytes, sig.left());
        bytes.extend_from_slice(&(sig.component() as u32).to_le_bytes());
        push_word(&mut bytes, sig.right());
    }
    fnv1a(&bytes)
}

/// One equivalence class of the vote, for transcripts and tests.
#[derive(Debug, Clone)]
pub struct VoteClass {
    pub hash: u64,
    pub primes: Vec<u64>,
    pub weight: BigRational,
}

/// Partition the round by equal leading data and retain one class of
/// maximal total weight (ties broken toward the class containing the
/// smallest prime). Returns the retained round and all classes.
pub fn majority_vote(mut round: ModularRound) -> (ModularRound, Vec<VoteClass>) {
    round.sort();
    let mut classes: Vec<(LeadingData, Vec<usize>)> = Vec::new();
    for (i, e) in round.entries.iter().enumerate() {
        let ld = e.basis.leading_data();
        match classes.iter_mut().find(|(cld, _)| *cld == ld) {
            Some((_, members)) => members.push(i),
            None => classes.push((ld, vec![i])),
        }
    }
    let infos: Vec<VoteClass> = classes
        .iter()
        .map(|(ld, members)| VoteClass {
            hash: leading_data_hash(ld),
            primes: members.iter().map(|&i| round.entries[i].prime).collect(),
            weight: members
                .iter()
                .map(|&i| round.entries[i].weight.clone())
                .sum(),
        })
        .collect();
    let best = (0..classes.len())
        .max_by(|&a, &b| {
            match infos[a].weight.cmp(&infos[b].weight) {
                // tie: prefer the class holding the smallest prime
                Ordering::Equal => infos[b].primes[0].cmp(&infos[a].primes[0]),
                other => other,
            }
        })
        .expect("vote on an empty round");
    let keep: Vec<usize> = classes[best].1.clone();
    let entries = round
        .entries
        .into_iter()
        .enumerate()
        .filter(|(i, _)| keep.contains(i))
        .map(|(_, e)| e)
        .collect();
    (ModularRound { entries }, infos)
}

//! The modular round loop: draw primes, compute per-prime bases in
//! parallel, vote, lift, verify; on any failure enlarge the prime set with
//! fresh primes and repeat. Per-prime bases are cached across rounds, and
//! the machine-readable transcript records primes, vote classes, lift
//! outcomes, and the verification verdict.

use crate::arith::poly::{reduce_mod, Polynomial};
use crate::arith::scalar::{Rationals, Zmod};
use crate::engine::basis::{compute_sig_basis, EngineOptions, QueuePolicy, SigBasis};
use crate::engine::verify::{sig_verification_test, verification_test, VerifyMode, VerifyReport};
use crate::error::{Error, Result};
use crate::modular::lift::{lift_and_match, LiftOutcome};
use crate::modular::primes::{admissible, PrimeSource};
use crate::modular::vote::{majority_vote, ModularRound, PrimeBasis};
use crate::order::{ModuleOrder, SigBound};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyChoice {
    #[default]
    Exact,
    /// Final test over a fresh prime; the result is then certified only
    /// with high probability and the transcript says so.
    Probabilistic,
}

#[derive(Debug, Clone)]
pub struct ModularConfig {
    pub seed: u64,
    pub threads: usize,
    /// Initial prime count; defaults to the thread count, and each
    /// enlargement adds the same number again.
    pub initial_primes: Option<usize>,
    pub max_rounds: usize,
    pub prime_bits: u32,
    pub verify: VerifyChoice,
    /// Carry full module labels and verify them instead of the pair test.
    pub strong: bool,
    /// Primes forced into the first batch (inadmissible ones are dropped
    /// with a transcript note). Used to demonstrate unlucky-prime handling.
    pub force_primes: Vec<u64>,
    pub queue_policy: QueuePolicy,
}

impl Default for ModularConfig {
    fn default() -> Self {
        ModularConfig {
            seed: 0,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            initial_primes: None,
            max_rounds: 10,
            prime_bits: 31,
            verify: VerifyChoice::Exact,
            strong: false,
            force_primes: Vec::new(),
            queue_policy: QueuePolicy::LmaFirst,
        }
    }
}

/// Machine-readable log of one modular run, one record per line.
#[derive(Debug, Clone, Default)]
pub struct Transcript {
    lines: Vec<String>,
}

impl Transcript {
    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn join_primes(ps: &[u64]) -> String {
    ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Reduce the generators modulo `p` and compute the reduced signature basis
/// over Z/p. Deterministic in all arguments.
pub fn compute_mod_p_basis(
    gens: &[Polynomial<Rationals>],
    p: u64,
    bound: &SigBound,
    mord: &ModuleOrder,
    options: EngineOptions,
) -> Result<SigBasis<Zmod>> {
    let zp = Zmod::new(p);
    let gens_p = gens
        .iter()
        .map(|g| reduce_mod(g, &zp))
        .collect::<Result<Vec<_>>>()?;
    compute_sig_basis(&zp, mord, &gens_p, bound, options)
}

/// Algorithm: compute the reduced signature Gröbner basis of the ideal over
/// Q up to the bound through modular images, majority voting, CRT + Farey
/// lifting, and a final verification test.
pub fn modular_sig_gb(
    gens: &[Polynomial<Rationals>],
    bound: &SigBound,
    mord: &ModuleOrder,
    config: &ModularConfig,
) -> Result<(SigBasis<Rationals>, VerifyReport, Transcript)> {
    let mut transcript = Transcript::default();
    let initial = config.initial_primes.unwrap_or(config.threads).max(1);
    transcript.push(format!(
        "config seed={} threads={} prime_bits={} initial_primes={} max_rounds={} verify={} strong={}",
        config.seed,
        config.threads,
        config.prime_bits,
        initial,
        config.max_rounds,
        match config.verify {
            VerifyChoice::Exact => "exact",
            VerifyChoice::Probabilistic => "probabilistic",
        },
        config.strong,
    ));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let mut source = PrimeSource::new(config.seed, config.prime_bits);
    let engine_options = EngineOptions {
        strong: config.strong,
        queue_policy: config.queue_policy,
    };

    let mut round_state = ModularRound::default();
    let mut demoted: Vec<u64> = Vec::new();

    for round_no in 1..=config.max_rounds {
        // assemble the new batch
        let mut new_primes: Vec<u64> = Vec::new();
        if round_no == 1 {
            for &p in &config.force_primes {
                if source.was_used(p) {
                    continue;
                }
                if !crate::modular::primes::is_prime_u64(p) || !admissible(p, gens) {
                    transcript.push(format!("round={round_no} skip_forced prime={p}"));
                    source.mark_used(p);
                    continue;
                }
                source.mark_used(p);
                new_primes.push(p);
            }
        }
        while new_primes.len() < initial {
            new_primes.push(source.draw(gens));
        }
        new_primes.sort_unstable();
        transcript.push(format!(
            "round={round_no} new_primes={}",
            join_primes(&new_primes)
        ));

        // weights: the first batch counts 1 each; later batches carry
        // collective weight exceeding everything already present
        let existing: BigRational = round_state.entries.iter().map(|e| e.weight.clone()).sum();
        let each_weight = if round_state.entries.is_empty() {
            BigRational::one()
        } else {
            (existing + BigRational::one()) / BigRational::from_integer(new_primes.len().into())
        };

        // per-prime computations for the new batch, in parallel
        let computed: Vec<(u64, Result<SigBasis<Zmod>>)> = pool.install(|| {
            new_primes
                .par_iter()
                .map(|&p| (p, compute_mod_p_basis(gens, p, bound, mord, engine_options)))
                .collect()
        });
        for (p, result) in computed {
            match result {
                Ok(basis) => round_state.entries.push(PrimeBasis {
                    prime: p,
                    weight: each_weight.clone(),
                    basis,
                }),
                Err(e) => {
                    transcript.push(format!("round={round_no} exclude prime={p} error={e}"));
                }
            }
        }
        round_state.sort();

        // vote, then lift with support-mismatch demotion
        loop {
            let (retained, classes) = majority_vote(round_state.clone());
            for c in &classes {
                transcript.push(format!(
                    "round={round_no} class hash={:016x} weight={} primes={}",
                    c.hash,
                    c.weight,
                    join_primes(&c.primes)
                ));
            }
            let retained_primes = retained.primes();
            transcript.push(format!(
                "round={round_no} vote retained={}",
                join_primes(&retained_primes)
            ));

            match lift_and_match(&retained, mord)? {
                LiftOutcome::SupportMismatch { offending } => {
                    transcript.push(format!(
                        "round={round_no} demote primes={} reason=support-mismatch",
                        join_primes(&offending)
                    ));
                    demoted.extend_from_slice(&offending);
                    round_state
                        .entries
                        .retain(|e| !offending.contains(&e.prime));
                    if round_state.entries.is_empty() {
                        transcript.push(format!("round={round_no} lift=fail reason=all-demoted"));
                        break;
                    }
                    continue;
                }
                LiftOutcome::ReconstructionFailed { element } => {
                    transcript.push(format!(
                        "round={round_no} lift=fail reason=reconstruction element={element}"
                    ));
                    break;
                }
                LiftOutcome::Lifted(candidate) => {
                    transcript.push(format!(
                        "round={round_no} lift=ok elements={} syzygies={}",
                        candidate.elements.len(),
                        candidate.syzygies.len()
                    ));
                    let used: Vec<u64> = source.used().collect();
                    let report = run_verification(
                        gens,
                        &candidate,
                        mord,
                        config,
                        &mut source,
                        &mut transcript,
                        round_no,
                        &used,
                    )?;
                    if report.ok {
                        transcript.push(format!(
                            "result rounds={round_no} primes={} elements={} syzygies={} probabilistic={}",
                            join_primes(&retained_primes),
                            candidate.elements.len(),
                            candidate.syzygies.len(),
                            report.probabilistic,
                        ));
                        return Ok((candidate, report, transcript));
                    }
                    transcript.push(format!("round={round_no} verify=fail"));
                    break;
                }
            }
        }
    }

    Err(Error::MaxRoundsExceeded {
        rounds: config.max_rounds,
        transcript: transcript.render(),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_verification(
    gens: &[Polynomial<Rationals>],
    candidate: &SigBasis<Rationals>,
    mord: &ModuleOrder,
    config: &ModularConfig,
    source: &mut PrimeSource,
    transcript: &mut Transcript,
    round_no: usize,
    used: &[u64],
) -> Result<VerifyReport> {
    if config.strong {
        let report = verification_test(mord, candidate, gens)?;
        transcript.push(format!(
            "round={round_no} verify mode=strong verdict={}",
            if report.ok { "pass" } else { "fail" }
        ));
        return Ok(report);
    }
    match config.verify {
        VerifyChoice::Exact => {
            let report = sig_verification_test(mord, candidate, gens, VerifyMode::Exact, used)?;
            transcript.push(format!(
                "round={round_no} verify mode=exact verdict={}",
                if report.ok { "pass" } else { "fail" }
            ));
            Ok(report)
        }
        VerifyChoice::Probabilistic => {
            // a fresh prime, not used in the computation, admissible for
            // every coefficient met during verification
            loop {
                let q = source.draw(gens);
                match sig_verification_test(
                    mord,
                    candidate,
                    gens,
                    VerifyMode::Probabilistic { prime: q },
                    used,
                ) {
                    Ok(report) => {
                        transcript.push(format!(
                            "round={round_no} verify mode=probabilistic prime={q} verdict={}",
                            if report.ok { "pass" } else { "fail" }
                        ));
                        return Ok(report);
                    }
                    Err(Error::ReductionUndefined { .. }) | Err(Error::PrimeCollision { .. }) => {
                        transcript.push(format!(
                            "round={round_no} verify mode=probabilistic prime={q} verdict=retry"
                        ));
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
}

//! The modular multi-prime pipeline: prime management, per-prime basis
//! computation, weighted majority vote, CRT combination, Farey rational
//! reconstruction, signature-matched lifting, and the retry loop.

pub mod lift;
pub mod primes;
pub mod recon;
pub mod run;
pub mod vote;

pub use lift::{lift_and_match, LiftOutcome};
pub use primes::{admissible, is_prime_u64, PrimeSource};
pub use recon::{crt_combine, farey_bound, farey_reconstruct};
pub use run::{compute_mod_p_basis, modular_sig_gb, ModularConfig, Transcript, VerifyChoice};
pub use vote::{leading_data_hash, majority_vote, ModularRound, PrimeBasis, VoteClass};

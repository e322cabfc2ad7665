//! Signature Gröbner basis computation up to a signature bound: ambiguities,
//! regular sig-reduction, the increasing-signature main loop with syzygy and
//! cover pruning, interreduction, the cover criterion, and the verification
//! tests.

pub mod ambiguity;
pub mod basis;
pub mod cover;
pub mod format;
pub mod reduce;
pub mod syzygy;
pub mod verify;

pub use ambiguity::{enumerate_ambiguities, Ambiguity};
pub use basis::{compute_sig_basis, interreduce, EngineOptions, QueuePolicy, SigBasis};
pub use cover::{check_cover_criterion, is_covered, CoverFailure, CoverReport};
pub use format::{parse_basis, render_basis};
pub use reduce::regular_sig_reduce;
pub use verify::{
    sig_verification_test, verification_test, VerifyFailure, VerifyMode, VerifyReport,
};

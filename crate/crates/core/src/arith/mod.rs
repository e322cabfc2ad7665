//! Exact arithmetic: words of the free monoid, coefficient fields (Q and
//! Z/p), free-algebra polynomials, and their text syntax.

pub mod poly;
pub mod scalar;
pub mod text;
pub mod word;

pub use poly::{reduce_mod, Polynomial};
pub use scalar::{
    arithmetic_ops, inv_mod, rat, rational_mod, reset_arithmetic_ops, Field, Rationals, Ring, Zmod,
};
pub use text::{parse_poly, parse_sig, parse_word, render_poly};
pub use word::{Alphabet, Var, Word};

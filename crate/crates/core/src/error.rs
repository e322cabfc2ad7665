use std::fmt;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic on elements of two different coefficient fields.
    MixedFields { left: String, right: String },
    /// Division by zero or inversion of a non-unit.
    NotInvertible { ring: String, element: String },
    /// `make_monic` or `signature_of` applied to zero.
    ZeroArgument(&'static str),
    /// Reduction modulo N hit a denominator sharing a factor with N.
    ReductionUndefined {
        modulus: String,
        coefficient: String,
    },
    /// A module monomial referenced a component outside the bimodule rank.
    ComponentOutOfRange { component: usize, rank: usize },
    /// Two module monomials from bimodules of different rank were compared.
    RankMismatch { left: usize, right: usize },
    /// Zero polynomial passed where a generator or basis element is required.
    ZeroGenerator { index: usize },
    /// Syntax error in a problem file, polynomial, or signature string.
    Parse { line: usize, message: String },
    /// Residue/prime lists of different lengths handed to CRT.
    LengthMismatch { residues: usize, primes: usize },
    /// The verification prime collides with a prime used during computation.
    PrimeCollision { prime: u64 },
    /// Modular loop exceeded its round limit; carries the transcript so far.
    MaxRoundsExceeded { rounds: usize, transcript: String },
    /// Internal invariant violation (a bug, not a user error).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MixedFields { left, right } => {
                write!(f, "mixed coefficient fields: {left} vs {right}")
            }
            Error::NotInvertible { ring, element } => {
                write!(f, "{element} is not invertible in {ring}")
            }
            Error::ZeroArgument(op) => write!(f, "{op} is undefined for zero"),
            Error::ReductionUndefined {
                modulus,
                coefficient,
            } => write!(
                f,
                "reduction mod {modulus} undefined: denominator of {coefficient} shares a factor with the modulus"
            ),
            Error::ComponentOutOfRange { component, rank } => {
                write!(f, "component e{component} out of range for rank {rank}")
            }
            Error::RankMismatch { left, right } => {
                write!(f, "bimodule rank mismatch: {left} vs {right}")
            }
            Error::ZeroGenerator { index } => {
                write!(f, "generator {} is zero", index + 1)
            }
            Error::Parse { line, message } => {
                if *line == 0 {
                    write!(f, "parse error: {message}")
                } else {
                    write!(f, "parse error at line {line}: {message}")
                }
            }
            Error::LengthMismatch { residues, primes } => {
                write!(f, "{residues} residues for {primes} primes")
            }
            Error::PrimeCollision { prime } => {
                write!(
                    f,
                    "verification prime {prime} was already used during the modular computation"
                )
            }
            Error::MaxRoundsExceeded { rounds, .. } => {
                write!(f, "modular computation exceeded {rounds} rounds")
            }
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cell::Cell;
use std::fmt;

thread_local! {
    static OP_COUNTER: Cell<u64> = const { Cell::new(0) };
}

/// Counts coefficient operations on the current thread. The cover check is
/// required to be purely combinatorial; tests read this counter around it.
pub fn arithmetic_ops() -> u64 {
    OP_COUNTER.with(|c| c.get())
}

pub fn reset_arithmetic_ops() {
    OP_COUNTER.with(|c| c.set(0));
}

#[inline]
fn bump() {
    OP_COUNTER.with(|c| c.set(c.get() + 1));
}

/// A commutative coefficient ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    // rings are context objects here, so the conversion takes a receiver
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    /// Ring name for error messages.
    fn describe(&self) -> String;
}

/// A ring with (possibly fallible) inversion. `Zmod` with a composite modulus
/// satisfies the trait too; `inv` then fails exactly on non-units.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// The field of rational numbers. Elements are kept reduced with positive
/// denominator (the `Ratio` constructors guarantee it), so equality and
/// hashing are syntactic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        bump();
        -a
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        bump();
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        bump();
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        bump();
        a * b
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn describe(&self) -> String {
        "Q".to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::NotInvertible {
                ring: self.describe(),
                element: "0".to_string(),
            });
        }
        bump();
        Ok(a.recip())
    }
}

/// The ring Z/N for a machine-word modulus N >= 2; a field when N is prime.
/// Elements are residues in `[0, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zmod {
    modulus: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Zmod { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce_u64(&self, a: u64) -> u64 {
        a % self.modulus
    }

    pub fn reduce_bigint(&self, a: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = a.mod_floor(&m);
        // mod_floor of a positive modulus is in [0, m)
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.modulus
    }

    fn neg(&self, a: &u64) -> u64 {
        bump();
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        bump();
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        bump();
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        bump();
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn from_i64(&self, n: i64) -> u64 {
        let m = self.modulus as i128;
        let r = (n as i128).rem_euclid(m);
        r as u64
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn describe(&self) -> String {
        format!("Z/{}", self.modulus)
    }
}

impl Field for Zmod {
    fn inv(&self, a: &u64) -> Result<u64> {
        bump();
        inv_mod(*a, self.modulus).ok_or_else(|| Error::NotInvertible {
            ring: self.describe(),
            element: a.to_string(),
        })
    }
}

/// Modular inverse by extended Euclid; `None` when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let a = a % m;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Maps a/b to (a mod N) * (b mod N)^-1. Fails when gcd(b, N) != 1.
pub fn rational_mod(q: &BigRational, zn: &Zmod) -> Result<u64> {
    let den = zn.reduce_bigint(q.denom());
    match inv_mod(den, zn.modulus()) {
        Some(den_inv) => {
            let num = zn.reduce_bigint(q.numer());
            Ok(zn.mul(&num, &den_inv))
        }
        None => Err(Error::ReductionUndefined {
            modulus: zn.modulus().to_string(),
            coefficient: Rationals.format(q),
        }),
    }
}

/// Convenience constructor for tests and small literals.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl fmt::Display for Zmod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.modulus)
    }
}

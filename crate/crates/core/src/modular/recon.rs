//! Chinese remaindering and Farey rational reconstruction.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The unique representative in `[0, N)` congruent to each residue, with
/// `N` the product of the pairwise distinct primes.
pub fn crt_combine(residues: &[u64], primes: &[u64]) -> Result<BigUint> {
    if residues.len() != primes.len() {
        return Err(Error::LengthMismatch {
            residues: residues.len(),
            primes: primes.len(),
        });
    }
    let mut acc = BigUint::zero();
    let mut modulus = BigUint::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let bp = BigUint::from(p);
        // x = acc + modulus * t with t = (r - acc) / modulus mod p
        let acc_mod_p = (&acc % &bp).to_u64().unwrap();
        let m_mod_p = (&modulus % &bp).to_u64().unwrap();
        let m_inv = crate::arith::scalar::inv_mod(m_mod_p, p).ok_or_else(|| {
            Error::Internal(format!("CRT primes are not pairwise coprime at {p}"))
        })?;
        let diff = (r % p + p - acc_mod_p % p) % p;
        let t = ((diff as u128 * m_inv as u128) % p as u128) as u64;
        acc += &modulus * BigUint::from(t);
        modulus *= bp;
    }
    Ok(acc)
}

/// Largest `b` with `2 b^2 <= n`: the Farey bound on numerator and
/// denominator magnitude for reconstruction modulo `n`.
pub fn farey_bound(n: &BigUint) -> BigUint {
    (n / 2u32).sqrt()
}

/// The unique `a/b` with `gcd(a, b) = 1`, `gcd(b, N) = 1`, and
/// `|a|, b <= floor(sqrt(N/2))` whose reduction mod `N` is `c`, if it
/// exists. Failure is the signal that the prime set is not yet large
/// enough, not a fault.
pub fn farey_reconstruct(c: &BigUint, n: &BigUint) -> Option<BigRational> {
    assert!(c < n, "residue must be reduced modulo n");
    let bound = BigInt::from(farey_bound(n));
    let n_int = BigInt::from(n.clone());
    let mut r0 = n_int.clone();
    let mut r1 = BigInt::from(c.clone());
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    // the invariant r1 = s*N + t1*c only yields (r1/t1)_N = c when the raw
    // cofactor pair is coprime; Ratio normalization would hide a common factor
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let value = BigRational::new(r1, t1);
    if value.numer().abs() > bound || value.denom() > &bound {
        return None;
    }
    if !value.denom().gcd(&n_int).is_one() {
        return None;
    }
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::{rat, rational_mod, Zmod};
    use crate::util::SplitMix64;
    use num_traits::FromPrimitive;

    #[test]
    fn crt_examples() {
        // (2 mod 3, 3 mod 5) -> 8 mod 15
        assert_eq!(crt_combine(&[2, 3], &[3, 5]).unwrap(), BigUint::from(8u32));
        // identity residue
        assert_eq!(crt_combine(&[1, 1], &[7, 11]).unwrap(), BigUint::from(1u32));
        // (3 mod 5, 2 mod 7) -> 23 mod 35
        assert_eq!(crt_combine(&[3, 2], &[5, 7]).unwrap(), BigUint::from(23u32));
        assert!(crt_combine(&[1], &[3, 5]).is_err());
    }

    #[test]
    fn farey_examples() {
        // 23 mod 35 is -1/3: bound is floor(sqrt(17.5)) = 4
        let got = farey_reconstruct(&BigUint::from(23u32), &BigUint::from(35u32)).unwrap();
        assert_eq!(got, rat(-1, 3));
        // 0 reconstructs to 0
        assert_eq!(
            farey_reconstruct(&BigUint::from(0u32), &BigUint::from(35u32)).unwrap(),
            rat(0, 1)
        );
        // 3 mod 7: bound is 1, only 0 and +-1 are representable
        assert!(farey_reconstruct(&BigUint::from(3u32), &BigUint::from(7u32)).is_none());
    }

    #[test]
    fn farey_bound_is_exact() {
        // 2*4^2 = 32 <= 35 < 2*5^2
        assert_eq!(farey_bound(&BigUint::from(35u32)), BigUint::from(4u32));
        assert_eq!(farey_bound(&BigUint::from(7u32)), BigUint::from(1u32));
        assert_eq!(farey_bound(&BigUint::from(2u32)), BigUint::from(1u32));
    }

    /// Exhaustive candidate scan for small moduli: the unique in-bound
    /// preimage, or none.
    fn farey_oracle(c: u64, n: u64) -> Option<BigRational> {
        let bound = {
            let mut b = 0u64;
            while 2 * (b + 1) * (b + 1) <= n {
                b += 1;
            }
            b as i64
        };
        let zn = Zmod::new(n);
        let mut found = None;
        for num in -bound..=bound {
            for den in 1..=bound {
                let q = rat(num, den);
                if q.numer().gcd(q.denom()) != num_bigint::BigInt::one() && !(num == 0 && den == 1)
                {
                    continue;
                }
                if let Ok(r) = rational_mod(&q, &zn) {
                    if r == c && found.replace(q.clone()).map_or(false, |prev| prev != q) {
                        panic!("Farey preimage not unique for {c} mod {n}");
                    }
                }
            }
        }
        found
    }

    #[test]
    fn farey_matches_exhaustive_oracle_on_small_moduli() {
        for n in [7u64, 11, 35, 36, 97, 210] {
            for c in 0..n {
                let got = farey_reconstruct(&BigUint::from(c), &BigUint::from(n));
                let want = farey_oracle(c, n);
                assert_eq!(got, want, "c={c} n={n}");
            }
        }
    }

    #[test]
    fn round_trip_through_crt_and_farey() {
        let mut rng = SplitMix64::new(2024);
        let primes: Vec<u64> = {
            let mut ps = Vec::new();
            let mut src = crate::modular::primes::PrimeSource::new(5, 31);
            for _ in 0..5 {
                ps.push(src.draw(&[]));
            }
            ps
        };
        for _ in 0..200 {
            let num = rng.next_u64() as i64 % (1 << 30);
            let den = 1 + (rng.next_u64() % ((1 << 30) - 1)) as i64;
            let q = rat(num, den);
            // enough primes that the product exceeds 2 * max(|num|, den)^2
            let need = 2u128 * (num.unsigned_abs().max(den as u64) as u128).pow(2);
            let mut used = Vec::new();
            let mut product: u128 = 1;
            for &p in &primes {
                used.push(p);
                product = product.saturating_mul(p as u128);
                if product > need {
                    break;
                }
            }
            let residues: Vec<u64> = used
                .iter()
                .map(|&p| rational_mod(&q, &Zmod::new(p)).unwrap())
                .collect();
            let n = used.iter().fold(BigUint::one(), |acc, &p| {
                acc * BigUint::from_u64(p).unwrap()
            });
            let c = crt_combine(&residues, &used).unwrap();
            assert_eq!(farey_reconstruct(&c, &n), Some(q));
        }
    }
}

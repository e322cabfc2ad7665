//! Prime management: deterministic seeded sampling of machine-word primes,
//! admissibility screening against generator denominators, and the record of
//! primes already used or excluded.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::Rationals;
use crate::util::SplitMix64;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Deterministic Miller-Rabin for u64 (the first twelve prime bases decide
/// primality for everything below 3.3 * 10^24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut base: u64, mut exp: u64| -> u64 {
        let mut acc: u128 = 1;
        let m = n as u128;
        let mut b = base as u128 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        base = acc as u64;
        base
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Does `p` avoid every denominator of every coefficient of the generators?
pub fn admissible(p: u64, gens: &[Polynomial<Rationals>]) -> bool {
    let bp = BigInt::from(p);
    gens.iter().all(|g| {
        g.terms()
            .iter()
            .all(|(_, c)| !c.denom().mod_floor(&bp).is_zero())
    })
}

/// Seeded source of distinct admissible primes of the configured bit width.
#[derive(Debug, Clone)]
pub struct PrimeSource {
    rng: SplitMix64,
    bits: u32,
    used: BTreeSet<u64>,
}

impl PrimeSource {
    pub fn new(seed: u64, bits: u32) -> Self {
        assert!((8..=62).contains(&bits), "prime width out of range");
        PrimeSource {
            rng: SplitMix64::new(seed),
            bits,
            used: BTreeSet::new(),
        }
    }

    /// Record a prime as used or excluded so it is never drawn again.
    pub fn mark_used(&mut self, p: u64) {
        self.used.insert(p);
    }

    pub fn was_used(&self, p: u64) -> bool {
        self.used.contains(&p)
    }

    pub fn used(&self) -> impl Iterator<Item = u64> + '_ {
        self.used.iter().copied()
    }

    /// Draw a fresh admissible prime in `[2^(bits-1), 2^bits)`.
    pub fn draw(&mut self, gens: &[Polynomial<Rationals>]) -> u64 {
        let lo = 1u64 << (self.bits - 1);
        let span = 1u64 << (self.bits - 1);
        loop {
            let candidate = (lo + (self.rng.next_u64() % span)) | 1;
            if self.used.contains(&candidate) || !is_prime_u64(candidate) {
                continue;
            }
            if !admissible(candidate, gens) {
                // denominators rule out only finitely many primes; skip for good
                self.used.insert(candidate);
                continue;
            }
            self.used.insert(candidate);
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;
    use crate::arith::word::Word;
    use crate::order::MonomialOrder;

    #[test]
    fn miller_rabin_agrees_with_trial_division_below_10000() {
        let trial = |n: u64| -> bool {
            if n < 2 {
                return false;
            }
            (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
        };
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
        assert!(is_prime_u64(2147483629));
        assert!(!is_prime_u64(2147483629 * 3));
    }

    #[test]
    fn draws_are_deterministic_distinct_and_sized() {
        let ord = MonomialOrder::deglex(&[0]).unwrap();
        let gens = vec![Polynomial::from_terms(
            &Rationals,
            &ord,
            vec![(Word::single(0), rat(1, 3))],
        )];
        let mut a = PrimeSource::new(7, 31);
        let mut b = PrimeSource::new(7, 31);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..20 {
            let p = a.draw(&gens);
            assert_eq!(p, b.draw(&gens));
            assert!(seen.insert(p));
            assert!(p >= 1 << 30 && p < 1 << 31);
            assert!(is_prime_u64(p));
            assert!(p != 3);
        }
    }

    #[test]
    fn admissibility_screens_denominators() {
        let ord = MonomialOrder::deglex(&[0]).unwrap();
        let gens = vec![Polynomial::from_terms(
            &Rationals,
            &ord,
            vec![(Word::single(0), rat(1, 6))],
        )];
        assert!(!admissible(2, &gens));
        assert!(!admissible(3, &gens));
        assert!(admissible(5, &gens));
    }
}

//! Primality testing: deterministic for u64, Miller-Rabin with random bases
//! for arbitrary-precision inputs.

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of a primality check.
///
/// `Prime` only ever comes from the deterministic 64-bit path; larger inputs
/// get `ProbablePrime` with the number of rounds that passed. `Composite` is
/// always certain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalityVerdict {
    pub value: BigUint,
    pub verdict: Verdict,
    pub rounds: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Prime,
    Composite,
    ProbablePrime,
}

impl PrimalityVerdict {
    pub fn is_prime_or_probable(&self) -> bool {
        matches!(self.verdict, Verdict::Prime | Verdict::ProbablePrime)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Sound witness set for all n < 2^64 (Sinclair's seven bases).
const WITNESSES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic primality for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES_U64 {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic verdict for a 64-bit input.
pub fn verdict_u64(n: u64) -> PrimalityVerdict {
    PrimalityVerdict {
        value: BigUint::from(n),
        verdict: if is_prime_u64(n) {
            Verdict::Prime
        } else {
            Verdict::Composite
        },
        rounds: 0,
    }
}

/// Miller-Rabin with `rounds` random bases drawn from a seeded generator.
///
/// Inputs below 2^64 are delegated to the deterministic witness set, so the
/// verdict for them is exact regardless of `rounds`. For larger inputs the
/// error probability of `ProbablePrime` is at most 4^-rounds.
pub fn is_probable_prime(n: &BigUint, rounds: u32, seed: u64) -> PrimalityVerdict {
    assert!(rounds >= 1, "rounds must be >= 1");
    if let Ok(small) = u64::try_from(n) {
        return verdict_u64(small);
    }
    if !n.bit(0) {
        return PrimalityVerdict {
            value: n.clone(),
            verdict: Verdict::Composite,
            rounds: 0,
        };
    }

    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = two.clone();
    let high = n - &two;
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&low, &high);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        let mut witnessed_composite = true;
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                witnessed_composite = false;
                break;
            }
        }
        if witnessed_composite {
            return PrimalityVerdict {
                value: n.clone(),
                verdict: Verdict::Composite,
                rounds,
            };
        }
    }
    PrimalityVerdict {
        value: n.clone(),
        verdict: Verdict::ProbablePrime,
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn small_cases() {
        assert!(is_prime_u64(7));
        assert!(!is_prime_u64(9));
        assert!(is_prime_u64(734003));
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
    }

    #[test]
    fn agrees_with_trial_division_to_1e6() {
        for n in 0..1_000_000u64 {
            assert_eq!(is_prime_u64(n), is_prime_trial(n), "n = {n}");
        }
    }

    #[test]
    fn big_path_agrees_with_deterministic_on_random_u64() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let n: u64 = rng.gen();
            let v = is_probable_prime(&BigUint::from(n), 5, 1);
            assert_eq!(v.is_prime_or_probable(), is_prime_u64(n), "n = {n}");
            assert_eq!(v.rounds, 0);
        }
    }

    #[test]
    fn composite_verdict_independent_of_rounds() {
        let n = BigUint::from(1025u32);
        for r in [1, 4, 40] {
            assert_eq!(is_probable_prime(&n, r, 7).verdict, Verdict::Composite);
        }
    }

    #[test]
    fn table_prime_for_a_151() {
        // (2^154 - 2^151 - 1) / 5
        let num = (BigUint::one() << 154u32) - (BigUint::one() << 151u32) - BigUint::one();
        let p = num / 5u32;
        assert_eq!(
            p.to_string(),
            "3996293539576687666963200714458586381871690547"
        );
        let v = is_probable_prime(&p, 40, 0xC0FFEE);
        assert_eq!(v.verdict, Verdict::ProbablePrime);
        assert_eq!(v.rounds, 40);
    }
}

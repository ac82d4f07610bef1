//! Exact integer arithmetic: factorization, the divisor-sum function sigma,
//! divisor enumeration, and perfect-square testing on big naturals.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::primality::is_prime_u64;
use crate::{Error, Result};

/// Default cap on the number of divisors a single value may enumerate.
pub const DIVISOR_CAP: u64 = 1 << 20;

/// Trial division stops at this bound before falling back to Pollard rho.
const TRIAL_BOUND: u64 = 1_000_000;

/// Prime-power decomposition, strictly increasing by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of divisors: product of (exponent + 1).
    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(_, e)| acc.saturating_mul(e as u64 + 1))
    }
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle variant; n must be composite, odd, > 1.
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul(x, x) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Factor n into prime powers. n = 1 gives an empty factor list.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let mut push = |p: u64, e: u32| {
        factors.push((p, e));
    };
    for p in [2u64, 3, 5] {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            push(p, e);
        }
    }
    // 6k +/- 1 wheel up to the trial bound.
    let mut d = 7u64;
    let mut step = 4u64;
    while d <= TRIAL_BOUND && d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            push(d, e);
        }
        d += step;
        step = 6 - step;
    }
    if m > 1 {
        if d * d > m || is_prime_u64(m) {
            push(m, 1);
        } else {
            // Large composite cofactor: split recursively with rho.
            let mut stack = vec![m];
            let mut large: Vec<u64> = Vec::new();
            while let Some(c) = stack.pop() {
                if is_prime_u64(c) {
                    large.push(c);
                } else {
                    let f = pollard_rho(c);
                    stack.push(f);
                    stack.push(c / f);
                }
            }
            large.sort_unstable();
            let mut i = 0;
            while i < large.len() {
                let p = large[i];
                let mut e = 0;
                while i < large.len() && large[i] == p {
                    e += 1;
                    i += 1;
                }
                push(p, e);
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { value: n, factors })
}

/// sigma of a prime power, (p^(e+1) - 1) / (p - 1), with overflow detection.
fn sigma_prime_power(p: u64, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    let mut term = 1u64;
    for _ in 0..e {
        term = term.checked_mul(p)?;
        acc = acc.checked_add(term)?;
    }
    Some(acc)
}

/// Sum of all positive divisors of n.
pub fn sigma(n: u64) -> Result<u64> {
    sigma_of(&factorize(n)?)
}

/// Sum of divisors from an existing factorization.
pub fn sigma_of(f: &Factorization) -> Result<u64> {
    let mut acc = 1u64;
    for &(p, e) in &f.factors {
        let s = sigma_prime_power(p, e).ok_or(Error::Overflow("sigma"))?;
        acc = acc.checked_mul(s).ok_or(Error::Overflow("sigma"))?;
    }
    Ok(acc)
}

/// All divisors of the factored value, in increasing order.
pub fn divisors(f: &Factorization) -> Result<Vec<u64>> {
    divisors_capped(f, DIVISOR_CAP)
}

pub fn divisors_capped(f: &Factorization, cap: u64) -> Result<Vec<u64>> {
    let count = f.divisor_count();
    if count > cap {
        return Err(Error::DivisorCap { count, cap });
    }
    let mut divs = vec![1u64];
    for &(p, e) in &f.factors {
        let prev_len = divs.len();
        let mut pe = 1u64;
        for _ in 0..e {
            pe = pe.checked_mul(p).ok_or(Error::Overflow("divisors"))?;
            for i in 0..prev_len {
                let d = divs[i].checked_mul(pe).ok_or(Error::Overflow("divisors"))?;
                divs.push(d);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Floor of the square root of x.
pub fn integer_sqrt(x: &BigUint) -> BigUint {
    x.sqrt()
}

/// Floor square root for u64.
pub fn isqrt_u64(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |rr| rr > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |rr| rr <= x) {
        r += 1;
    }
    r
}

/// Returns the root when x is a perfect square.
pub fn is_perfect_square(x: &BigUint) -> Option<BigUint> {
    if x.is_zero() {
        return Some(BigUint::zero());
    }
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

/// Perfect-square test for u64, returning the root.
pub fn is_perfect_square_u64(x: u64) -> Option<u64> {
    let r = isqrt_u64(x);
    if r * r == x {
        Some(r)
    } else {
        None
    }
}

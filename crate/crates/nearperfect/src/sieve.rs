//! Segmented sigma computation over contiguous ranges, and classified
//! range scans with deterministic ordered output.

use rayon::prelude::*;

use crate::classify::{self, ClassificationReport, Label};
use crate::{Error, Result};

/// Default elements per segment.
pub const DEFAULT_BLOCK_SIZE: usize = 1 << 20;

/// Default ceiling on scan ranges.
pub const DEFAULT_MAX_RANGE: u64 = 1 << 40;

/// Half-open range [lo, hi) with a segment size.
#[derive(Debug, Clone, Copy)]
pub struct RangeSpec {
    pub lo: u64,
    pub hi: u64,
    pub block_size: usize,
}

impl RangeSpec {
    pub fn new(lo: u64, hi: u64) -> Self {
        RangeSpec {
            lo,
            hi,
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size;
        self
    }

    pub fn validate(&self, max_range: u64) -> Result<()> {
        if self.lo < 1 || self.lo >= self.hi {
            return Err(Error::InvalidRange(format!(
                "need 1 <= lo < hi, got [{}, {})",
                self.lo, self.hi
            )));
        }
        if self.hi > max_range {
            return Err(Error::InvalidRange(format!(
                "hi = {} exceeds the configured bound {max_range}",
                self.hi
            )));
        }
        if self.block_size < 1 {
            return Err(Error::InvalidRange("block_size must be >= 1".into()));
        }
        Ok(())
    }

    fn segments(&self) -> Vec<(u64, usize)> {
        let mut out = Vec::new();
        let mut base = self.lo;
        while base < self.hi {
            let len = ((self.hi - base) as usize).min(self.block_size);
            out.push((base, len));
            base += len as u64;
        }
        out
    }
}

/// One segment of sigma values: `values[i] = sigma(base + i)`.
#[derive(Debug, Clone)]
pub struct SigmaBlock {
    pub base: u64,
    pub values: Vec<u64>,
}

/// Divisor-accumulation sieve for one segment [base, base + len).
fn sieve_segment(base: u64, len: usize) -> Vec<u64> {
    let end = base + len as u64;
    let mut values = vec![0u64; len];
    for d in 1..end {
        // Smallest multiple of d in [max(base, d), end).
        let first = {
            let m = base.max(d);
            m.div_ceil(d) * d
        };
        let mut m = first;
        while m < end {
            values[(m - base) as usize] += d;
            m += d;
        }
    }
    values
}

/// Sigma over a whole range, block by block, in increasing base order.
pub fn sieve_sigma_range(spec: &RangeSpec) -> Result<Vec<SigmaBlock>> {
    spec.validate(DEFAULT_MAX_RANGE)?;
    Ok(spec
        .segments()
        .into_iter()
        .map(|(base, len)| SigmaBlock {
            base,
            values: sieve_segment(base, len),
        })
        .collect())
}

/// Convenience: sigma(n) for all n in [lo, hi) as one flat vector.
pub fn sigma_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    let blocks = sieve_sigma_range(&RangeSpec::new(lo, hi))?;
    Ok(blocks.into_iter().flat_map(|b| b.values).collect())
}

/// Which classification predicate a scan filters on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    Perfect,
    Abundant,
    Deficient,
    Quasiperfect,
    NearPerfect1,
    NearPerfect2,
    Pseudoperfect,
    Weird,
    StronglyPseudoperfect,
    Strong2np,
}

impl ScanKind {
    pub fn label(&self) -> Label {
        match self {
            ScanKind::Perfect => Label::Perfect,
            ScanKind::Abundant => Label::Abundant,
            ScanKind::Deficient => Label::Deficient,
            ScanKind::Quasiperfect => Label::Quasiperfect,
            ScanKind::NearPerfect1 => Label::NearPerfect1,
            ScanKind::NearPerfect2 => Label::NearPerfect2,
            ScanKind::Pseudoperfect => Label::Pseudoperfect,
            ScanKind::Weird => Label::Weird,
            ScanKind::StronglyPseudoperfect => Label::StronglyPseudoperfect,
            ScanKind::Strong2np => Label::Strong2NearPerfect,
        }
    }
}

impl std::str::FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "perfect" => ScanKind::Perfect,
            "abundant" => ScanKind::Abundant,
            "deficient" => ScanKind::Deficient,
            "quasiperfect" => ScanKind::Quasiperfect,
            "1-near-perfect" | "near-perfect" => ScanKind::NearPerfect1,
            "2-near-perfect" => ScanKind::NearPerfect2,
            "pseudoperfect" => ScanKind::Pseudoperfect,
            "weird" => ScanKind::Weird,
            "strongly-pseudoperfect" => ScanKind::StronglyPseudoperfect,
            "strong-2np" => ScanKind::Strong2np,
            other => {
                return Err(Error::InvalidArgument(format!("unknown kind: {other}")))
            }
        })
    }
}

/// Cheap sigma-only test that rules a candidate in or out before the full
/// (and much more expensive) classification runs.
fn prefilter(kind: ScanKind, n: u64, sigma: u64) -> bool {
    let a = sigma as i128 - 2 * n as i128;
    match kind {
        ScanKind::Perfect => a == 0,
        ScanKind::Abundant => a > 0,
        ScanKind::Deficient => a < 0,
        ScanKind::Quasiperfect => a == 1,
        ScanKind::NearPerfect1 => a > 0 && a <= n as i128 && n % (a as u64) == 0,
        ScanKind::NearPerfect2 | ScanKind::Weird => a > 0,
        ScanKind::Pseudoperfect | ScanKind::StronglyPseudoperfect => a >= 0,
        ScanKind::Strong2np => {
            // d + n/d = a with d * (n/d) = n: solve the quadratic directly.
            if a <= 0 {
                return false;
            }
            let a = a as u64;
            let disc = match (a as u128 * a as u128).checked_sub(4 * n as u128) {
                Some(d) => d,
                None => return false,
            };
            if disc == 0 {
                return false; // d = n/d is not allowed
            }
            let r = num_integer::Roots::sqrt(&disc);
            if r * r != disc || (a as u128) < r || (a as u128 - r) % 2 != 0 {
                return false;
            }
            let d = ((a as u128 - r) / 2) as u64;
            d > 0 && n % d == 0
        }
    }
}

fn scan_segment(
    base: u64,
    len: usize,
    kind: ScanKind,
) -> Result<Vec<(u64, ClassificationReport)>> {
    let sigmas = sieve_segment(base, len);
    let mut hits = Vec::new();
    for (i, &sigma) in sigmas.iter().enumerate() {
        let n = base + i as u64;
        if !prefilter(kind, n, sigma) {
            continue;
        }
        let report = classify::classify(n)?;
        debug_assert_eq!(report.sigma, sigma);
        if report.labels.contains(&kind.label()) {
            hits.push((n, report));
        }
    }
    Ok(hits)
}

/// Scan a range for numbers matching `kind`, in increasing order.
///
/// `jobs = 0` uses all available cores. Output is identical for every jobs
/// value: segments are assigned disjointly and merged in order.
pub fn scan_classified(
    spec: &RangeSpec,
    kind: ScanKind,
    jobs: usize,
) -> Result<Vec<(u64, ClassificationReport)>> {
    scan_classified_bounded(spec, kind, jobs, DEFAULT_MAX_RANGE)
}

pub fn scan_classified_bounded(
    spec: &RangeSpec,
    kind: ScanKind,
    jobs: usize,
    max_range: u64,
) -> Result<Vec<(u64, ClassificationReport)>> {
    spec.validate(max_range)?;
    let segments = spec.segments();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let per_segment: Result<Vec<Vec<(u64, ClassificationReport)>>> = pool.install(|| {
        segments
            .par_iter()
            .map(|&(base, len)| scan_segment(base, len, kind))
            .collect()
    });
    Ok(per_segment?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;

    #[test]
    fn sieve_first_ten() {
        assert_eq!(
            sigma_range(1, 11).unwrap(),
            vec![1, 3, 4, 7, 6, 12, 8, 15, 13, 18]
        );
    }

    #[test]
    fn sieve_single_values() {
        assert_eq!(sigma_range(70, 71).unwrap(), vec![144]);
        assert_eq!(sigma_range(2, 3).unwrap(), vec![3]);
    }

    #[test]
    fn sieve_matches_factorization_to_1e6() {
        let sigmas = sigma_range(1, 1_000_001).unwrap();
        for (i, &s) in sigmas.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(s, arith::sigma(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn block_invariants() {
        let spec = RangeSpec::new(2, 5000).with_block_size(700);
        for block in sieve_sigma_range(&spec).unwrap() {
            for (i, &v) in block.values.iter().enumerate() {
                let n = block.base + i as u64;
                assert!(v >= n + 1);
                assert_eq!(v == n + 1, crate::primality::is_prime_u64(n));
            }
        }
    }

    #[test]
    fn segment_concatenation() {
        let whole = sigma_range(1, 3000).unwrap();
        let left = sigma_range(1, 1234).unwrap();
        let right = sigma_range(1234, 3000).unwrap();
        let glued: Vec<u64> = left.into_iter().chain(right).collect();
        assert_eq!(whole, glued);
    }

    #[test]
    fn block_size_and_jobs_do_not_change_output() {
        let a = scan_classified(
            &RangeSpec::new(1, 20_000).with_block_size(977),
            ScanKind::NearPerfect1,
            1,
        )
        .unwrap();
        let b = scan_classified(
            &RangeSpec::new(1, 20_000).with_block_size(4096),
            ScanKind::NearPerfect1,
            4,
        )
        .unwrap();
        let na: Vec<u64> = a.iter().map(|(n, _)| *n).collect();
        let nb: Vec<u64> = b.iter().map(|(n, _)| *n).collect();
        assert_eq!(na, nb);
        assert!(!na.is_empty());
    }

    #[test]
    fn scan_perfect_to_1000() {
        let hits = scan_classified(&RangeSpec::new(1, 1000), ScanKind::Perfect, 1).unwrap();
        let ns: Vec<u64> = hits.iter().map(|(n, _)| *n).collect();
        assert_eq!(ns, vec![6, 28, 496]);
    }

    #[test]
    fn scan_weird_to_100() {
        let hits = scan_classified(&RangeSpec::new(1, 100), ScanKind::Weird, 1).unwrap();
        let ns: Vec<u64> = hits.iter().map(|(n, _)| *n).collect();
        assert_eq!(ns, vec![70]);
    }

    #[test]
    fn scan_two_near_perfect_to_500() {
        let hits =
            scan_classified(&RangeSpec::new(1, 500), ScanKind::NearPerfect2, 1).unwrap();
        let ns: Vec<u64> = hits.iter().map(|(n, _)| *n).collect();
        for expect in [12, 40, 56] {
            assert!(ns.contains(&expect), "missing {expect} in {ns:?}");
        }
    }

    #[test]
    fn bad_ranges_rejected() {
        assert!(sieve_sigma_range(&RangeSpec::new(0, 10)).is_err());
        assert!(sieve_sigma_range(&RangeSpec::new(10, 10)).is_err());
        assert!(sieve_sigma_range(&RangeSpec::new(1, DEFAULT_MAX_RANGE + 1)).is_err());
    }
}

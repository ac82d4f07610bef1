//! Witness-producing classification of a single integer into the
//! near-perfect taxonomy.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{self, Factorization};
use crate::{Error, Result};

/// Cell budget for subset-sum searches. Past this we refuse to answer rather
/// than report a false "weird".
pub const DP_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Perfect,
    Abundant,
    Deficient,
    Quasiperfect,
    #[serde(rename = "1-near-perfect")]
    NearPerfect1,
    #[serde(rename = "2-near-perfect")]
    NearPerfect2,
    Pseudoperfect,
    Weird,
    StronglyPseudoperfect,
    #[serde(rename = "strong-2np")]
    Strong2NearPerfect,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Perfect => "perfect",
            Label::Abundant => "abundant",
            Label::Deficient => "deficient",
            Label::Quasiperfect => "quasiperfect",
            Label::NearPerfect1 => "1-near-perfect",
            Label::NearPerfect2 => "2-near-perfect",
            Label::Pseudoperfect => "pseudoperfect",
            Label::Weird => "weird",
            Label::StronglyPseudoperfect => "strongly-pseudoperfect",
            Label::Strong2NearPerfect => "strong-2np",
        }
    }
}

/// n together with the omitted divisors certifying sigma(n) = 2n + sum(omitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearPerfectWitness {
    pub n: u64,
    /// Strictly increasing, each dividing n.
    pub omitted: Vec<u64>,
}

impl NearPerfectWitness {
    pub fn s(&self) -> usize {
        self.omitted.len()
    }
}

/// A divisor d with d * (n/d) = n and sigma(n) - d - n/d = 2n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrongWitness {
    pub n: u64,
    pub d: u64,
}

impl StrongWitness {
    pub fn pair(&self) -> (u64, u64) {
        (self.d, self.n / self.d)
    }
}

/// Every taxonomy label of one n, with witnesses and signed abundance.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub n: u64,
    pub sigma: u64,
    /// sigma(n) - 2n; negative for deficient n.
    pub abundance: i128,
    pub labels: BTreeSet<Label>,
    /// s = 1 witnesses first, then canonicalized s = 2 pairs.
    pub near_perfect: Vec<NearPerfectWitness>,
    /// Omitted-set witness for pseudoperfect (empty set for perfect n).
    pub pseudo_omitted: Option<Vec<u64>>,
    pub strong_pairs: Vec<StrongWitness>,
    /// Symmetric divisor set summing to 2n, when found.
    pub strong_pseudo_set: Option<Vec<u64>>,
    /// False when the strongly-pseudoperfect search exceeded the DP budget
    /// and the label is therefore undetermined.
    pub strong_pseudo_checked: bool,
}

fn abundance_of(n: u64, sigma: u64) -> i128 {
    sigma as i128 - 2 * n as i128
}

/// All omitted-divisor sets of size s (s in {1, 2}) certifying that n is
/// s-near perfect.
pub fn near_perfect_witnesses(n: u64, s: u8) -> Result<Vec<NearPerfectWitness>> {
    let f = arith::factorize(n)?;
    let divs = arith::divisors(&f)?;
    let sigma = arith::sigma_of(&f)?;
    Ok(witnesses_from_divisors(n, sigma, &divs, s))
}

pub(crate) fn witnesses_from_divisors(
    n: u64,
    sigma: u64,
    divs: &[u64],
    s: u8,
) -> Vec<NearPerfectWitness> {
    let a = abundance_of(n, sigma);
    if a <= 0 {
        return Vec::new();
    }
    let target = a as u128;
    let mut out = Vec::new();
    match s {
        1 => {
            if target <= u64::MAX as u128 && divs.binary_search(&(target as u64)).is_ok() {
                out.push(NearPerfectWitness {
                    n,
                    omitted: vec![target as u64],
                });
            }
        }
        2 => {
            // Two-pointer over the sorted divisor list; pairs come out
            // canonicalized as (smaller, larger).
            let (mut lo, mut hi) = (0usize, divs.len() - 1);
            while lo < hi {
                let sum = divs[lo] as u128 + divs[hi] as u128;
                if sum == target {
                    out.push(NearPerfectWitness {
                        n,
                        omitted: vec![divs[lo], divs[hi]],
                    });
                    lo += 1;
                } else if sum < target {
                    lo += 1;
                } else {
                    hi -= 1;
                }
            }
        }
        _ => panic!("near_perfect_witnesses supports s in {{1, 2}}, got {s}"),
    }
    out
}

/// True iff some size-s subset of the divisors of n sums to sigma(n) - 2n.
///
/// Subset-sum DP over (sum, cardinality); the table is bounded by
/// [`DP_BUDGET`] cells.
pub fn is_s_near_perfect(n: u64, s: usize) -> Result<bool> {
    let f = arith::factorize(n)?;
    let divs = arith::divisors(&f)?;
    let sigma = arith::sigma_of(&f)?;
    if s > divs.len() {
        return Err(Error::InvalidArgument(format!(
            "s = {s} exceeds divisor count {}",
            divs.len()
        )));
    }
    let a = abundance_of(n, sigma);
    if a < 0 {
        return Ok(false);
    }
    if a == 0 {
        return Ok(s == 0);
    }
    let target = a as u64 as usize;
    let cells = (target as u128 + 1) * (s as u128 + 1);
    if cells > DP_BUDGET {
        return Err(Error::DpBudget {
            cells,
            budget: DP_BUDGET,
        });
    }
    // dp[c][t]: sum t reachable with exactly c divisors.
    let width = target + 1;
    let mut dp = vec![false; (s + 1) * width];
    dp[0] = true;
    for &d in &divs {
        let d = d as usize;
        if d > target {
            continue;
        }
        for c in (0..s).rev() {
            for t in (d..=target).rev() {
                if dp[c * width + t - d] {
                    dp[(c + 1) * width + t] = true;
                }
            }
        }
    }
    Ok(dp[s * width + target])
}

/// Subset-sum with reconstruction: does some subset of `items` sum to
/// `target`? Returns the chosen item indices.
fn subset_sum_indices(items: &[u64], target: u64) -> Result<Option<Vec<usize>>> {
    if target == 0 {
        return Ok(Some(Vec::new()));
    }
    let cells = target as u128 + 1;
    if cells > DP_BUDGET {
        return Err(Error::DpBudget {
            cells,
            budget: DP_BUDGET,
        });
    }
    let target = target as usize;
    // first_by[t] = 1 + index of the item that first reached sum t.
    let mut first_by = vec![0u32; target + 1];
    let mut reached = vec![false; target + 1];
    reached[0] = true;
    for (i, &item) in items.iter().enumerate() {
        let d = item as usize;
        if d > target {
            continue;
        }
        for t in (d..=target).rev() {
            if !reached[t] && reached[t - d] {
                reached[t] = true;
                first_by[t] = i as u32 + 1;
            }
        }
        if reached[target] {
            break;
        }
    }
    if !reached[target] {
        return Ok(None);
    }
    let mut chosen = Vec::new();
    let mut t = target;
    while t > 0 {
        let i = (first_by[t] - 1) as usize;
        chosen.push(i);
        t -= items[i] as usize;
    }
    chosen.reverse();
    Ok(Some(chosen))
}

/// Pseudoperfect test: some subset of the divisors of n sums to
/// sigma(n) - 2n. Perfect n qualifies with the empty omitted set.
pub fn is_pseudoperfect(n: u64) -> Result<Option<Vec<u64>>> {
    let f = arith::factorize(n)?;
    let divs = arith::divisors(&f)?;
    let sigma = arith::sigma_of(&f)?;
    pseudoperfect_from_divisors(n, sigma, &divs)
}

pub(crate) fn pseudoperfect_from_divisors(
    n: u64,
    sigma: u64,
    divs: &[u64],
) -> Result<Option<Vec<u64>>> {
    let a = abundance_of(n, sigma);
    if a < 0 {
        return Ok(None);
    }
    if a == 0 {
        return Ok(Some(Vec::new()));
    }
    let target = a as u64;
    // Single-divisor short circuit before the full DP.
    if divs.binary_search(&target).is_ok() {
        return Ok(Some(vec![target]));
    }
    match subset_sum_indices(divs, target)? {
        Some(idx) => Ok(Some(idx.into_iter().map(|i| divs[i]).collect())),
        None => Ok(None),
    }
}

/// Strongly pseudoperfect test: a divisor subset S with sum 2n and
/// d in S iff n/d in S. The search runs over complementary pairs
/// (d, n/d), each contributing d + n/d, plus a lone sqrt(n) term for squares.
pub fn strongly_pseudoperfect(n: u64) -> Result<Option<Vec<u64>>> {
    let f = arith::factorize(n)?;
    let divs = arith::divisors(&f)?;
    strongly_pseudoperfect_from_divisors(n, &divs)
}

pub(crate) fn strongly_pseudoperfect_from_divisors(
    n: u64,
    divs: &[u64],
) -> Result<Option<Vec<u64>>> {
    let target = 2u128 * n as u128;
    let mut items: Vec<u64> = Vec::new();
    let mut pair_low: Vec<u64> = Vec::new();
    let mut root: Option<u64> = None;
    for &d in divs {
        match (d as u128 * d as u128).cmp(&(n as u128)) {
            std::cmp::Ordering::Less => {
                items.push(d + n / d);
                pair_low.push(d);
            }
            std::cmp::Ordering::Equal => root = Some(d),
            std::cmp::Ordering::Greater => break,
        }
    }
    if let Some(r) = root {
        items.push(r);
        pair_low.push(r);
    }
    // The items sum to sigma(n) exactly, so a subset hitting 2n exists iff
    // its complement sums to the abundance. Searching for the complement
    // keeps the DP target near sigma(n) - 2n instead of 2n.
    let sigma: u128 = items.iter().map(|&x| x as u128).sum();
    if sigma < target {
        return Ok(None);
    }
    let excess = sigma - target;
    if excess > u64::MAX as u128 {
        return Err(Error::Overflow("strongly_pseudoperfect target"));
    }
    let omitted = subset_sum_indices(&items, excess as u64)?;
    Ok(omitted.map(|idx| {
        let mut skip = vec![false; items.len()];
        for i in idx {
            skip[i] = true;
        }
        let mut set: Vec<u64> = Vec::new();
        for (i, &d) in pair_low.iter().enumerate() {
            if skip[i] {
                continue;
            }
            set.push(d);
            if d * d != n {
                set.push(n / d);
            }
        }
        set.sort_unstable();
        set
    }))
}

/// All divisors d < sqrt(n) with sigma(n) - d - n/d = 2n.
pub fn strong_2np_witnesses(n: u64) -> Result<Vec<StrongWitness>> {
    let f = arith::factorize(n)?;
    let divs = arith::divisors(&f)?;
    let sigma = arith::sigma_of(&f)?;
    Ok(strong_witnesses_from_divisors(n, sigma, &divs))
}

pub(crate) fn strong_witnesses_from_divisors(
    n: u64,
    sigma: u64,
    divs: &[u64],
) -> Vec<StrongWitness> {
    let a = abundance_of(n, sigma);
    if a <= 0 {
        return Vec::new();
    }
    divs.iter()
        .take_while(|&&d| (d as u128) * (d as u128) < n as u128)
        .filter(|&&d| d as i128 + (n / d) as i128 == a)
        .map(|&d| StrongWitness { n, d })
        .collect()
}

/// True iff sigma(n) = 2n + 1. No such n is known.
pub fn is_quasiperfect(n: u64) -> Result<bool> {
    Ok(abundance_of(n, arith::sigma(n)?) == 1)
}

/// Full classification of n with witnesses for every applicable label.
///
/// Fails with [`Error::DpBudget`] if the pseudoperfect verdict (needed for
/// "weird") cannot be decided within budget. The strongly-pseudoperfect
/// label degrades gracefully instead: `strong_pseudo_checked` is false when
/// its search was skipped.
pub fn classify(n: u64) -> Result<ClassificationReport> {
    let f = arith::factorize(n)?;
    classify_factored(&f)
}

pub fn classify_factored(f: &Factorization) -> Result<ClassificationReport> {
    let n = f.value;
    let divs = arith::divisors(f)?;
    let sigma = arith::sigma_of(f)?;
    let abundance = abundance_of(n, sigma);

    let mut labels = BTreeSet::new();
    match abundance.cmp(&0) {
        std::cmp::Ordering::Greater => {
            labels.insert(Label::Abundant);
        }
        std::cmp::Ordering::Equal => {
            labels.insert(Label::Perfect);
        }
        std::cmp::Ordering::Less => {
            labels.insert(Label::Deficient);
        }
    }
    if abundance == 1 {
        labels.insert(Label::Quasiperfect);
    }

    let mut near_perfect = witnesses_from_divisors(n, sigma, &divs, 1);
    if !near_perfect.is_empty() {
        labels.insert(Label::NearPerfect1);
    }
    let pairs = witnesses_from_divisors(n, sigma, &divs, 2);
    if !pairs.is_empty() {
        labels.insert(Label::NearPerfect2);
    }
    near_perfect.extend(pairs);

    let pseudo_omitted = pseudoperfect_from_divisors(n, sigma, &divs)?;
    if pseudo_omitted.is_some() {
        labels.insert(Label::Pseudoperfect);
    } else if abundance > 0 {
        labels.insert(Label::Weird);
    }

    let strong_pairs = strong_witnesses_from_divisors(n, sigma, &divs);
    if !strong_pairs.is_empty() {
        labels.insert(Label::Strong2NearPerfect);
    }

    let (strong_pseudo_set, strong_pseudo_checked) =
        match strongly_pseudoperfect_from_divisors(n, &divs) {
            Ok(set) => (set, true),
            Err(Error::DpBudget { .. }) | Err(Error::Overflow(_)) => (None, false),
            Err(e) => return Err(e),
        };
    if strong_pseudo_set.is_some() {
        labels.insert(Label::StronglyPseudoperfect);
    }

    Ok(ClassificationReport {
        n,
        sigma,
        abundance,
        labels,
        near_perfect,
        pseudo_omitted,
        strong_pairs,
        strong_pseudo_set,
        strong_pseudo_checked,
    })
}

//! Cross-module invariants checked against independent oracles.

use nearperfect::arith;
use nearperfect::classify::{self, Label};
use nearperfect::families::{self, CampaignHit};

// Independent subset-sum oracle over proper divisors, bitset DP.
fn pseudoperfect_oracle(n: u64) -> bool {
    let f = arith::factorize(n).unwrap();
    let divs: Vec<u64> = arith::divisors(&f)
        .unwrap()
        .into_iter()
        .filter(|&d| d < n)
        .collect();
    let goal = n as usize;
    let words = goal / 64 + 1;
    let mut bits = vec![0u64; words];
    bits[0] = 1;
    let hit = |bits: &[u64]| bits[goal / 64] >> (goal % 64) & 1 == 1;
    for &d in &divs {
        let d = d as usize;
        let word_shift = d / 64;
        let bit_shift = d % 64;
        for i in (word_shift..words).rev() {
            let mut v = bits[i - word_shift] << bit_shift;
            if bit_shift > 0 && i > word_shift {
                v |= bits[i - word_shift - 1] >> (64 - bit_shift);
            }
            bits[i] |= v;
        }
        if hit(&bits) {
            return true;
        }
    }
    hit(&bits)
}

#[test]
fn weird_agrees_with_bitset_oracle_to_1e5() {
    let mut weird_seen = 0;
    for n in 1..=100_000u64 {
        let sigma = arith::sigma(n).unwrap();
        if sigma <= 2 * n {
            continue; // weirdness needs abundance
        }
        let report = classify::classify(n).unwrap();
        let oracle_weird = !pseudoperfect_oracle(n);
        assert_eq!(
            report.labels.contains(&Label::Weird),
            oracle_weird,
            "n = {n}"
        );
        if oracle_weird {
            weird_seen += 1;
        }
    }
    assert!(weird_seen >= 7, "expected 70, 836, 4030, ... below 10^5");
}

#[test]
fn strong_family_members_appear_in_strong_table_scan() {
    let recs = families::gen_strong_2np(19, 40, 0).unwrap();
    let small: Vec<u64> = recs
        .iter()
        .filter_map(|r| u64::try_from(&r.n).ok())
        .filter(|&n| n < 1_000_000)
        .collect();
    assert_eq!(small, vec![352, 91648]);
    let scan = families::verify_strong_table(1_000_000).unwrap();
    for n in small {
        assert!(
            scan.hits
                .iter()
                .any(|h| matches!(h, CampaignHit::StrongRow { n: hn, .. } if *hn == n)),
            "family member {n} missing from scan"
        );
    }
}

#[test]
fn pseudoperfect_witness_sums_check_out_to_2e4() {
    for n in 1..=20_000u64 {
        let report = classify::classify(n).unwrap();
        if let Some(set) = &report.pseudo_omitted {
            // classify records the omitted complement; the kept divisors
            // minus n itself must sum to n.
            let divs = arith::divisors(&arith::factorize(n).unwrap()).unwrap();
            let omitted_sum: u64 = set.iter().sum();
            let kept: u64 = divs.iter().sum::<u64>() - n - omitted_sum;
            assert_eq!(kept, n, "n = {n}, omitted {set:?}");
        }
    }
}

//! Low-weight codeword enumeration over disjoint information sets
//! (Brouwer–Zimmermann bookkeeping).
//!
//! Set `j` is a column set `S_j` of rank `r_j`, disjoint from the earlier
//! sets, together with a generator reduced so that `r_j` of its pivots lie in
//! `S_j`. After every message of weight `<= l_j` has been enumerated for set
//! `j`, any codeword not yet seen has weight at least `l_j + 1 - (k - r_j)` on
//! `S_j`, and these lower bounds add up across the disjoint sets.

use std::collections::HashSet;

use rayon::prelude::*;

use super::kernel::{combinations_from, pack_rows, with_width};
use super::{reduce, weight, BinaryCode, WeightCensus};
use crate::error::Result;

#[derive(Clone, Copy, Debug, Default)]
pub struct CensusOptions {
    /// Give up (flagging the census incomplete) after this message weight.
    pub max_level: Option<usize>,
}

struct InfoSet {
    rows: Vec<Vec<u64>>,
    deficiency: usize,
}

fn information_sets(code: &BinaryCode) -> Vec<InfoSet> {
    let n = code.n();
    let k = code.k();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let order: Vec<usize> = (0..n)
            .filter(|&c| !used[c])
            .chain((0..n).filter(|&c| used[c]))
            .collect();
        let (rows, pivots) = reduce(code.rows().map(<[u64]>::to_vec).collect(), order);
        let fresh: Vec<usize> = pivots.iter().copied().filter(|&p| !used[p]).collect();
        if fresh.is_empty() {
            break;
        }
        for &p in &fresh {
            used[p] = true;
        }
        sets.push(InfoSet {
            rows,
            deficiency: k - fresh.len(),
        });
        if used.iter().all(|u| *u) {
            break;
        }
    }
    sets
}

fn lower_bound(sets: &[InfoSet], levels: &[Option<usize>]) -> usize {
    sets.iter()
        .zip(levels)
        .map(|(s, l)| match l {
            Some(l) => (l + 1).saturating_sub(s.deficiency),
            None => 0,
        })
        .sum()
}

fn exhausted(sets: &[InfoSet], levels: &[Option<usize>], k: usize) -> bool {
    sets.iter().zip(levels).any(|(s, l)| s.deficiency == 0 && *l == Some(k))
}

/// All codewords of weight `1..=limit` whose message for `rows` has weight `level`.
fn level_words<const W: usize>(rows: &[[u64; W]], level: usize, limit: u32) -> Vec<[u64; W]> {
    let k = rows.len();
    (0..=k - level)
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            combinations_from(rows, level, first, limit, &mut |cw, _| found.push(*cw));
            found
        })
        .flatten()
        .collect()
}

fn census_with<const W: usize>(code: &BinaryCode, wmax: usize, opts: CensusOptions) -> (HashSet<[u64; W]>, bool) {
    let k = code.k();
    let sets = information_sets(code);
    let packed: Vec<Vec<[u64; W]>> = sets
        .iter()
        .map(|s| pack_rows::<W>(s.rows.iter().map(Vec::as_slice)))
        .collect();
    let mut levels = vec![None; sets.len()];
    let mut found: HashSet<[u64; W]> = HashSet::new();
    let limit = wmax.min(u32::MAX as usize) as u32;
    for level in 1..=k {
        for j in 0..sets.len() {
            if opts.max_level.is_some_and(|max| level > max) {
                return (found, false);
            }
            found.extend(level_words(&packed[j], level, limit));
            levels[j] = Some(level);
            if lower_bound(&sets, &levels) > wmax || exhausted(&sets, &levels, k) {
                return (found, true);
            }
        }
    }
    (found, true)
}

/// Exact counts of all codewords of weight `<= wmax`. `complete` is set only
/// when the information-set bound proves no codeword of weight `<= wmax`
/// was missed.
pub fn low_weight_census(code: &BinaryCode, wmax: usize, opts: CensusOptions) -> Result<WeightCensus> {
    let wmax = wmax.min(code.n());
    let (words, complete) = with_width!(code.words(), W => {
        let (set, complete) = census_with::<W>(code, wmax, opts);
        let words: Vec<Vec<u64>> = set.into_iter().map(|w| w[..code.words()].to_vec()).collect();
        (words, complete)
    });
    let mut counts = vec![0u64; wmax + 1];
    counts[0] = 1;
    for w in &words {
        counts[weight(w)] += 1;
    }
    let mut codewords = words;
    codewords.sort_unstable();
    Ok(WeightCensus {
        wmax,
        counts,
        complete,
        codewords,
    })
}

fn min_distance_with<const W: usize>(code: &BinaryCode) -> usize {
    let k = code.k();
    let sets = information_sets(code);
    let packed: Vec<Vec<[u64; W]>> = sets
        .iter()
        .map(|s| pack_rows::<W>(s.rows.iter().map(Vec::as_slice)))
        .collect();
    let mut levels = vec![None; sets.len()];
    let mut best = usize::MAX;
    for level in 1..=k {
        for j in 0..sets.len() {
            let limit = best.saturating_sub(1).min(u32::MAX as usize) as u32;
            let local = level_words(&packed[j], level, limit).iter().map(|cw| weight(cw)).min();
            if let Some(w) = local {
                best = best.min(w);
            }
            levels[j] = Some(level);
            if lower_bound(&sets, &levels) >= best || exhausted(&sets, &levels, k) {
                return best;
            }
        }
    }
    best
}

/// Exact minimum distance by information-set enumeration, stopping once
/// the lower bound meets the lightest codeword found.
pub fn min_distance_bz(code: &BinaryCode) -> Result<usize> {
    Ok(with_width!(code.words(), W => min_distance_with::<W>(code)))
}

#[cfg(test)]
mod tests {
    use super::super::scan::{weight_census_full, ScanOptions};
    use super::super::testing::*;
    use super::*;

    #[test]
    fn hamming_census() {
        let h = extended_hamming();
        let c = low_weight_census(&h, 4, CensusOptions::default()).unwrap();
        assert!(c.complete);
        assert_eq!(c.counts, vec![1, 0, 0, 0, 14]);
        assert_eq!(c.words_of_weight(4).len(), 14);
        assert_eq!(min_distance_bz(&h).unwrap(), 4);
    }

    #[test]
    fn non_self_dual_code_uses_overlapping_sets() {
        // [7,4,3] Hamming: complement of an information set is not one.
        let h = code(&["1000110", "0100011", "0010111", "0001101"]);
        let full = weight_census_full(&h, ScanOptions::default()).unwrap();
        for wmax in 0..=7 {
            let c = low_weight_census(&h, wmax, CensusOptions::default()).unwrap();
            assert!(c.complete);
            assert_eq!(c.counts, full.counts[..=wmax].to_vec(), "wmax {wmax}");
        }
        assert_eq!(min_distance_bz(&h).unwrap(), 3);
    }

    #[test]
    fn self_dual_code_has_two_disjoint_full_sets() {
        let sets = information_sets(&extended_hamming());
        assert_eq!(sets.len(), 2);
        assert!(sets.iter().all(|s| s.deficiency == 0));
    }

    #[test]
    fn level_cap_marks_incomplete() {
        let h = extended_hamming();
        let c = low_weight_census(&h, 8, CensusOptions { max_level: Some(1) }).unwrap();
        assert!(!c.complete);
    }

    #[test]
    fn wmax_two_on_self_dual_code_with_distance_four() {
        let c = low_weight_census(&extended_hamming(), 2, CensusOptions::default()).unwrap();
        assert!(c.complete);
        assert_eq!(c.counts[2], 0);
    }
}

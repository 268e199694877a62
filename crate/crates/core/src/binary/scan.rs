use rayon::prelude::*;

use super::kernel::{gray_scan_range, packed, with_width};
use super::{BinaryCode, WeightCensus};
use crate::error::{Error, Result};

/// Largest dimension a full `2^k` scan accepts unless overridden.
pub const DEFAULT_SCAN_BOUND: usize = 34;

/// Full-scan bound, honouring `SDF_SCAN_BOUND`.
pub fn scan_bound() -> usize {
    std::env::var("SDF_SCAN_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SCAN_BOUND)
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub bound: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { bound: scan_bound() }
    }
}

// Fixed chunking keeps the merge independent of the worker count.
const CHUNK_BITS: u32 = 10;

fn histogram(code: &BinaryCode, opts: ScanOptions) -> Result<Vec<u64>> {
    let k = code.k();
    if k > opts.bound || k >= 63 {
        return Err(Error::ScanBound { k, bound: opts.bound });
    }
    let total: u64 = 1 << k;
    let chunks: u64 = 1 << CHUNK_BITS.min(k as u32);
    let per = total / chunks;
    let n = code.n();
    with_width!(code.words(), W => {
        let rows = packed::<W>(code);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut hist = vec![0u64; n + 1];
                gray_scan_range(&rows, c * per, (c + 1) * per, &mut hist);
                hist
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            ))
    })
}

/// Complete weight distribution from a Gray-code ordered scan of all `2^k`
/// messages.
pub fn weight_census_full(code: &BinaryCode, opts: ScanOptions) -> Result<WeightCensus> {
    let counts = histogram(code, opts)?;
    Ok(WeightCensus {
        wmax: code.n(),
        counts,
        complete: true,
        codewords: Vec::new(),
    })
}

pub fn min_distance_full(code: &BinaryCode, opts: ScanOptions) -> Result<usize> {
    let counts = histogram(code, opts)?;
    (1..counts.len()).find(|&w| counts[w] > 0).ok_or(Error::ZeroCode)
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn small_codes() {
        let c = code(&["1010", "0101"]);
        assert_eq!(min_distance_full(&c, ScanOptions::default()).unwrap(), 2);
        let rep = code(&["11"]);
        let census = weight_census_full(&rep, ScanOptions::default()).unwrap();
        assert_eq!(census.counts, vec![1, 0, 1]);
        let h = extended_hamming();
        let census = weight_census_full(&h, ScanOptions::default()).unwrap();
        assert_eq!(census.counts, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    }

    #[test]
    fn refuses_over_bound() {
        let h = extended_hamming();
        let err = weight_census_full(&h, ScanOptions { bound: 3 }).unwrap_err();
        assert!(matches!(err, Error::ScanBound { k: 4, bound: 3 }));
    }
}

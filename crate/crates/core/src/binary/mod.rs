//! Bit-packed binary linear codes and their analysis.
//!
//! Coordinate `j` of a row lives in word `j / 64`, bit `j % 64`.

mod census;
mod enumerator;
mod invariants;
mod kernel;
mod scan;

pub use census::{low_weight_census, min_distance_bz, CensusOptions};
pub use enumerator::{classify_type, extract_params, extremal_bound, CodeType, EnumeratorReport, Family};
pub use invariants::{design_lambda, pair_invariant, DesignLambda};
pub use scan::{min_distance_full, scan_bound, weight_census_full, ScanOptions, DEFAULT_SCAN_BOUND};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_LENGTH: usize = 1 << 16;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn bit(row: &[u64], j: usize) -> bool {
    (row[j / 64] >> (j % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

#[inline]
pub(crate) fn weight(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Reduced row echelon form over GF(2), taking pivots in `column_order`.
/// Returns the nonzero reduced rows and the pivot column of each.
pub(crate) fn reduce(
    mut rows: Vec<Vec<u64>>,
    column_order: impl IntoIterator<Item = usize>,
) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in column_order {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && bit(row, col) {
                xor_into(row, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    (rows, pivots)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCode {
    n: usize,
    k: usize,
    words: usize,
    /// Reduced generator rows, `k * words` words.
    rows: Vec<u64>,
    /// Pivot column of each row; together the first information set.
    pivots: Vec<usize>,
}

impl BinaryCode {
    /// Gaussian elimination of arbitrary packed rows of length `n`.
    pub fn rank_and_systematize(rows: Vec<Vec<u64>>, n: usize) -> Result<BinaryCode> {
        if rows.is_empty() {
            return Err(Error::Empty("generator"));
        }
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::Invalid(format!("binary length {n} outside 1..={MAX_LENGTH}")));
        }
        let words = words_for(n);
        for row in &rows {
            if row.len() != words {
                return Err(Error::LengthMismatch {
                    left: words,
                    right: row.len(),
                });
            }
        }
        let (reduced, pivots) = reduce(rows, 0..n);
        if reduced.is_empty() {
            return Err(Error::ZeroCode);
        }
        Ok(BinaryCode {
            n,
            k: reduced.len(),
            words,
            rows: reduced.concat(),
            pivots,
        })
    }

    pub fn from_bool_rows(rows: &[Vec<bool>]) -> Result<BinaryCode> {
        let n = rows.first().map_or(0, Vec::len);
        let words = words_for(n);
        let packed = rows
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::LengthMismatch {
                        left: n,
                        right: r.len(),
                    });
                }
                let mut p = vec![0u64; words];
                for (j, b) in r.iter().enumerate() {
                    if *b {
                        set_bit(&mut p, j);
                    }
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryCode::rank_and_systematize(packed, n)
    }

    /// Plain-text matrix: one row per line of `0`/`1` characters. Blank lines
    /// and lines starting with `#` are ignored.
    pub fn parse_matrix(text: &str) -> Result<BinaryCode> {
        let mut rows = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .chars()
                .enumerate()
                .map(|(col, ch)| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::Spec {
                        line: line_no + 1,
                        column: col + 1,
                        message: format!("unexpected character {other:?} in binary matrix"),
                    }),
                })
                .collect::<Result<Vec<bool>>>()?;
            rows.push(row);
        }
        BinaryCode::from_bool_rows(&rows)
    }

    pub fn to_matrix_string(&self) -> String {
        let mut out = String::with_capacity(self.k * (self.n + 1));
        for r in 0..self.k {
            for j in 0..self.n {
                out.push(if bit(self.row(r), j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.chunks_exact(self.words)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows().map(weight).collect()
    }

    /// Codeword for the message whose bit `i` selects row `i`.
    pub fn encode(&self, message: &[bool]) -> Vec<u64> {
        let mut cw = vec![0u64; self.words];
        for (i, m) in message.iter().enumerate().take(self.k) {
            if *m {
                xor_into(&mut cw, self.row(i));
            }
        }
        cw
    }

    pub fn is_self_orthogonal(&self) -> bool {
        for i in 0..self.k {
            for j in i..self.k {
                let dot: u32 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if dot % 2 == 1 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_self_dual(&self) -> bool {
        self.n == 2 * self.k && self.is_self_orthogonal()
    }

    /// Does `word` lie in the code? Reduces against the pivots.
    pub fn contains(&self, word: &[u64]) -> bool {
        let mut w = word.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if bit(&w, p) {
                xor_into(&mut w, self.row(r));
            }
        }
        w.iter().all(|x| *x == 0)
    }

    /// The code with coordinate `j` moved to `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BinaryCode> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: perm.len(),
            });
        }
        let rows = self
            .rows()
            .map(|row| {
                let mut out = vec![0u64; self.words];
                for (j, &to) in perm.iter().enumerate() {
                    if bit(row, j) {
                        set_bit(&mut out, to);
                    }
                }
                out
            })
            .collect();
        BinaryCode::rank_and_systematize(rows, self.n)
    }

    /// Same code, generator rows replaced by `rows`; used to re-derive a basis.
    pub fn with_generator(&self, rows: Vec<Vec<u64>>) -> Result<BinaryCode> {
        BinaryCode::rank_and_systematize(rows, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCensus {
    pub wmax: usize,
    /// `counts[w]` for `w` in `0..=wmax`.
    pub counts: Vec<u64>,
    pub complete: bool,
    /// Codewords of weight `1..=wmax` (census only; empty after a full scan).
    #[serde(skip)]
    pub codewords: Vec<Vec<u64>>,
}

impl WeightCensus {
    pub fn count(&self, w: usize) -> Option<u64> {
        self.counts.get(w).copied()
    }

    /// Smallest nonzero weight present, if the census saw one.
    pub fn min_nonzero(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    pub fn words_of_weight(&self, w: usize) -> Vec<&[u64]> {
        self.codewords
            .iter()
            .filter(|c| weight(c) == w)
            .map(Vec::as_slice)
            .collect()
    }

    pub fn truncated(&self, wmax: usize) -> WeightCensus {
        let wmax = wmax.min(self.wmax);
        WeightCensus {
            wmax,
            counts: self.counts[..=wmax].to_vec(),
            complete: self.complete,
            codewords: self.codewords.iter().filter(|c| weight(c) <= wmax).cloned().collect(),
        }
    }
}

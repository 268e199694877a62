//! Fixed-width inner loops. Rows are copied into `[u64; W]` arrays so the
//! XOR/popcount loops unroll; `W` is the smallest supported width that fits.

use super::BinaryCode;

macro_rules! with_width {
    ($words:expr, $w:ident => $body:expr) => {
        match $words {
            1 => {
                const $w: usize = 1;
                $body
            }
            2 => {
                const $w: usize = 2;
                $body
            }
            3 => {
                const $w: usize = 3;
                $body
            }
            4 => {
                const $w: usize = 4;
                $body
            }
            5..=8 => {
                const $w: usize = 8;
                $body
            }
            9..=16 => {
                const $w: usize = 16;
                $body
            }
            17..=64 => {
                const $w: usize = 64;
                $body
            }
            _ => {
                const $w: usize = 1024;
                $body
            }
        }
    };
}
pub(crate) use with_width;

#[inline(always)]
pub(crate) fn xor<const W: usize>(a: &[u64; W], b: &[u64; W]) -> [u64; W] {
    let mut out = [0u64; W];
    for i in 0..W {
        out[i] = a[i] ^ b[i];
    }
    out
}

#[inline(always)]
pub(crate) fn popcount<const W: usize>(a: &[u64; W]) -> u32 {
    let mut s = 0;
    for x in a {
        s += x.count_ones();
    }
    s
}

pub(crate) fn pack_rows<'a, const W: usize>(rows: impl Iterator<Item = &'a [u64]>) -> Vec<[u64; W]> {
    rows.map(|r| {
        let mut out = [0u64; W];
        out[..r.len()].copy_from_slice(r);
        out
    })
    .collect()
}

pub(crate) fn packed<const W: usize>(code: &BinaryCode) -> Vec<[u64; W]> {
    pack_rows::<W>(code.rows())
}

/// Histogram of codeword weights for the messages with reflected Gray-code
/// indices `start..end`. One row XOR per step.
pub(crate) fn gray_scan_range<const W: usize>(rows: &[[u64; W]], start: u64, end: u64, hist: &mut [u64]) {
    let gray = start ^ (start >> 1);
    let mut cw = [0u64; W];
    for (i, row) in rows.iter().enumerate() {
        if (gray >> i) & 1 == 1 {
            cw = xor(&cw, row);
        }
    }
    hist[popcount(&cw) as usize] += 1;
    for t in start + 1..end {
        let flip = t.trailing_zeros() as usize;
        cw = xor(&cw, &rows[flip]);
        hist[popcount(&cw) as usize] += 1;
    }
}

/// Visits every sum of `size` rows whose smallest row index is `first`,
/// passing codewords of weight at most `limit`.
pub(crate) fn combinations_from<const W: usize>(
    rows: &[[u64; W]],
    size: usize,
    first: usize,
    limit: u32,
    visit: &mut impl FnMut(&[u64; W], u32),
) {
    debug_assert!(size >= 1);
    let acc = rows[first];
    if size == 1 {
        let w = popcount(&acc);
        if w <= limit {
            visit(&acc, w);
        }
        return;
    }
    descend(rows, first + 1, size - 1, &acc, limit, visit);
}

fn descend<const W: usize>(
    rows: &[[u64; W]],
    start: usize,
    remaining: usize,
    acc: &[u64; W],
    limit: u32,
    visit: &mut impl FnMut(&[u64; W], u32),
) {
    let k = rows.len();
    if remaining == 1 {
        for row in &rows[start..] {
            let cw = xor(acc, row);
            let w = popcount(&cw);
            if w <= limit {
                visit(&cw, w);
            }
        }
        return;
    }
    for r in start..=k.saturating_sub(remaining) {
        let next = xor(acc, &rows[r]);
        descend(rows, r + 1, remaining - 1, &next, limit, visit);
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

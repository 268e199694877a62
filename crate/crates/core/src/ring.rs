//! Arithmetic over the four characteristic-2 rings F2, F4, F2+uF2 and F4+uF4.
//!
//! Every element is a 4-bit payload holding the coefficients of
//! `(1, ω, u, uω)`. The smaller rings are the subrings that leave the unused
//! bits at zero, so one encoding serves all four and conversions between
//! them are explicit bit masks.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ONE: u8 = 0b0001;
pub const OMEGA: u8 = 0b0010;
pub const U: u8 = 0b0100;
pub const U_OMEGA: u8 = 0b1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingId {
    F2,
    F4,
    F2uF2,
    F4uF4,
}

impl RingId {
    pub const ALL: [RingId; 4] = [RingId::F2, RingId::F4, RingId::F2uF2, RingId::F4uF4];

    /// Payload bits the ring is allowed to use.
    pub const fn mask(self) -> u8 {
        match self {
            RingId::F2 => ONE,
            RingId::F4 => ONE | OMEGA,
            RingId::F2uF2 => ONE | U,
            RingId::F4uF4 => ONE | OMEGA | U | U_OMEGA,
        }
    }

    pub const fn size(self) -> usize {
        1 << self.mask().count_ones()
    }

    pub const fn has_u(self) -> bool {
        self.mask() & U != 0
    }

    /// The residue ring `R` of `R + uR`, reached by dropping the u-part.
    pub fn residue(self) -> Option<RingId> {
        match self {
            RingId::F2uF2 => Some(RingId::F2),
            RingId::F4uF4 => Some(RingId::F4),
            _ => None,
        }
    }

    /// The ring `R + uR` whose residue is `self`.
    pub fn lifted(self) -> Option<RingId> {
        match self {
            RingId::F2 => Some(RingId::F2uF2),
            RingId::F4 => Some(RingId::F4uF4),
            _ => None,
        }
    }

    /// Number of binary coordinates one symbol occupies in the canonical image.
    pub const fn binary_width(self) -> usize {
        self.mask().count_ones() as usize
    }

    /// An F2-basis of the ring; multiplying a generator row by each of these
    /// spans the same F2-space as all ring multiples of the row.
    pub fn f2_basis(self) -> &'static [u8] {
        match self {
            RingId::F2 => &[ONE],
            RingId::F4 => &[ONE, OMEGA],
            RingId::F2uF2 => &[ONE, U],
            RingId::F4uF4 => &[ONE, OMEGA, U, U_OMEGA],
        }
    }

    pub fn contains_bits(self, bits: u8) -> bool {
        bits & !self.mask() == 0
    }

    /// All payloads of the ring in ascending order.
    pub fn payloads(self) -> impl Iterator<Item = u8> {
        let mask = self.mask();
        (0u8..16).filter(move |b| b & !mask == 0)
    }

    pub fn elements(self) -> impl Iterator<Item = RingElement> {
        self.payloads().map(move |bits| RingElement { ring: self, bits })
    }

    pub fn name(self) -> &'static str {
        match self {
            RingId::F2 => "F2",
            RingId::F4 => "F4",
            RingId::F2uF2 => "F2uF2",
            RingId::F4uF4 => "F4uF4",
        }
    }

    /// True when every token of the ring alphabet is a single character, so
    /// vectors may be written as contiguous strings.
    pub fn single_char_tokens(self) -> bool {
        self != RingId::F4uF4
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F2" => Ok(RingId::F2),
            "F4" => Ok(RingId::F4),
            "F2uF2" | "F2+uF2" => Ok(RingId::F2uF2),
            "F4uF4" | "F4+uF4" => Ok(RingId::F4uF4),
            other => Err(Error::Invalid(format!("unknown ring {other:?}"))),
        }
    }
}

/// Product in F4+uF4 straight from `ω² = 1 + ω` and `u² = 0`.
fn product_from_relations(x: u8, y: u8) -> u8 {
    // (p0 + p1 ω)(q0 + q1 ω) = (p0 q0 + p1 q1) + (p0 q1 + p1 q0 + p1 q1) ω
    fn f4(p: u8, q: u8) -> u8 {
        let (p0, p1) = (p & 1, (p >> 1) & 1);
        let (q0, q1) = (q & 1, (q >> 1) & 1);
        let c0 = (p0 & q0) ^ (p1 & q1);
        let c1 = (p0 & q1) ^ (p1 & q0) ^ (p1 & q1);
        c0 | (c1 << 1)
    }
    let (xa, xb) = (x & 0b11, x >> 2);
    let (ya, yb) = (y & 0b11, y >> 2);
    let unit = f4(xa, ya);
    let nil = f4(xa, yb) ^ f4(xb, ya);
    unit | (nil << 2)
}

struct MulTables {
    tables: [[u8; 256]; 4],
}

fn ring_index(ring: RingId) -> usize {
    match ring {
        RingId::F2 => 0,
        RingId::F4 => 1,
        RingId::F2uF2 => 2,
        RingId::F4uF4 => 3,
    }
}

fn check_axioms(ring: RingId, table: &[u8; 256]) {
    let mul = |a: u8, b: u8| table[((a as usize) << 4) | b as usize];
    for a in ring.payloads() {
        assert_eq!(mul(a, ONE), a, "{ring}: 1 is not an identity");
        for b in ring.payloads() {
            assert!(ring.contains_bits(mul(a, b)), "{ring}: product leaves the ring");
            assert_eq!(mul(a, b), mul(b, a), "{ring}: not commutative");
            for c in ring.payloads() {
                assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)), "{ring}: not associative");
                assert_eq!(mul(a, b ^ c), mul(a, b) ^ mul(a, c), "{ring}: not distributive");
            }
        }
    }
}

fn tables() -> &'static MulTables {
    static TABLES: OnceLock<MulTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut tables = [[0u8; 256]; 4];
        for ring in RingId::ALL {
            let table = &mut tables[ring_index(ring)];
            for a in ring.payloads() {
                for b in ring.payloads() {
                    table[((a as usize) << 4) | b as usize] = product_from_relations(a, b);
                }
            }
            check_axioms(ring, table);
        }
        MulTables { tables }
    })
}

/// Table-driven product of two payloads already known to lie in `ring`.
#[inline]
pub fn mul_bits(ring: RingId, a: u8, b: u8) -> u8 {
    tables().tables[ring_index(ring)][((a as usize) << 4) | b as usize]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingId,
    bits: u8,
}

impl RingElement {
    pub fn new(ring: RingId, bits: u8) -> Result<Self> {
        if ring.contains_bits(bits) {
            Ok(RingElement { ring, bits })
        } else {
            Err(Error::Invalid(format!(
                "payload {bits:#06b} is not an element of {ring}"
            )))
        }
    }

    pub fn zero(ring: RingId) -> Self {
        RingElement { ring, bits: 0 }
    }

    pub fn one(ring: RingId) -> Self {
        RingElement { ring, bits: ONE }
    }

    pub fn ring(self) -> RingId {
        self.ring
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    fn same_ring(self, other: RingElement) -> Result<RingId> {
        if self.ring == other.ring {
            Ok(self.ring)
        } else {
            Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            })
        }
    }

    // fallible on mixed rings, so not the operator traits
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: RingElement) -> Result<RingElement> {
        let ring = self.same_ring(other)?;
        Ok(RingElement {
            ring,
            bits: self.bits ^ other.bits,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RingElement) -> Result<RingElement> {
        let ring = self.same_ring(other)?;
        Ok(RingElement {
            ring,
            bits: mul_bits(ring, self.bits, other.bits),
        })
    }

    pub fn square(self) -> RingElement {
        RingElement {
            ring: self.ring,
            bits: mul_bits(self.ring, self.bits, self.bits),
        }
    }

    pub fn inverse(self) -> Option<RingElement> {
        self.ring
            .elements()
            .find(|e| mul_bits(self.ring, self.bits, e.bits) == ONE)
    }

    pub fn is_unit(self) -> bool {
        self.inverse().is_some()
    }

    pub fn token(self) -> &'static str {
        token_of(self.ring, self.bits)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Units `c` with `c² = 1`, found by scanning the whole ring.
pub fn units_square_one(ring: RingId) -> Vec<RingElement> {
    ring.elements()
        .filter(|c| c.is_unit() && c.square().bits == ONE)
        .collect()
}

const F4U_LABELS: [&str; 16] = [
    "z1", "a1", "b1", "c1", "z2", "a2", "b2", "c2", "z3", "a3", "b3", "c3", "z4", "a4", "b4", "c4",
];

fn token_of(ring: RingId, bits: u8) -> &'static str {
    match ring {
        RingId::F2 => ["0", "1"][bits as usize],
        RingId::F4 => ["0", "1", "w", "W"][bits as usize],
        RingId::F2uF2 => match bits {
            0 => "0",
            ONE => "1",
            U => "u",
            _ => "3",
        },
        RingId::F4uF4 => F4U_LABELS[bits as usize],
    }
}

fn bits_of(ring: RingId, token: &str) -> Option<u8> {
    let bits = match (ring, token) {
        (RingId::F2 | RingId::F4 | RingId::F2uF2, "0") => 0,
        (RingId::F2 | RingId::F4 | RingId::F2uF2, "1") => ONE,
        (RingId::F4, "w") => OMEGA,
        (RingId::F4, "W") => ONE | OMEGA,
        (RingId::F2uF2, "u") => U,
        (RingId::F2uF2, "3") => ONE | U,
        (RingId::F4uF4, t) => F4U_LABELS.iter().position(|l| *l == t)? as u8,
        _ => return None,
    };
    Some(bits)
}

pub fn parse_element(token: &str, ring: RingId) -> Result<RingElement> {
    parse_token_at(token, ring, 0)
}

fn parse_token_at(token: &str, ring: RingId, position: usize) -> Result<RingElement> {
    bits_of(ring, token.trim())
        .map(|bits| RingElement { ring, bits })
        .ok_or_else(|| Error::Token {
            token: token.trim().to_string(),
            position,
            ring,
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingVector {
    ring: RingId,
    entries: Vec<u8>,
}

impl RingVector {
    pub fn new(ring: RingId, entries: &[RingElement]) -> Result<Self> {
        let mut raw = Vec::with_capacity(entries.len());
        for e in entries {
            if e.ring != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: e.ring,
                });
            }
            raw.push(e.bits);
        }
        Ok(RingVector { ring, entries: raw })
    }

    pub fn from_bits(ring: RingId, entries: Vec<u8>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|b| !ring.contains_bits(**b)) {
            return Err(Error::Invalid(format!(
                "payload {bad:#06b} is not an element of {ring}"
            )));
        }
        Ok(RingVector { ring, entries })
    }

    pub fn zeros(ring: RingId, len: usize) -> Self {
        RingVector {
            ring,
            entries: vec![0; len],
        }
    }

    /// Parses `(t1,t2,...)`, `[t1,...]`, or for single-character alphabets a
    /// contiguous string such as `3u3uu3310010u3u0`.
    pub fn parse(text: &str, ring: RingId) -> Result<Self> {
        let mut body = text.trim();
        if let Some(inner) = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .or_else(|| body.strip_prefix('[').and_then(|b| b.strip_suffix(']')))
        {
            body = inner.trim();
        }
        if body.is_empty() {
            return Ok(RingVector::zeros(ring, 0));
        }
        let entries = if body.contains(',') || !ring.single_char_tokens() {
            body.split(',')
                .enumerate()
                .map(|(i, t)| parse_token_at(t, ring, i).map(|e| e.bits))
                .collect::<Result<Vec<_>>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .enumerate()
                .map(|(i, c)| parse_token_at(c.encode_utf8(&mut [0; 4]), ring, i).map(|e| e.bits))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(RingVector { ring, entries })
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> RingElement {
        RingElement {
            ring: self.ring,
            bits: self.entries[i],
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.entries
            .iter()
            .map(move |&bits| RingElement { ring: self.ring, bits })
    }

    fn check_compatible(&self, other: &RingVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, other: &RingVector) -> Result<RingElement> {
        self.check_compatible(other)?;
        Ok(RingElement {
            ring: self.ring,
            bits: dot_bits(self.ring, &self.entries, &other.entries),
        })
    }

    pub fn add(&self, other: &RingVector) -> Result<RingVector> {
        self.check_compatible(other)?;
        Ok(RingVector {
            ring: self.ring,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn scale(&self, c: RingElement) -> Result<RingVector> {
        if c.ring != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: c.ring,
            });
        }
        Ok(RingVector {
            ring: self.ring,
            entries: self.entries.iter().map(|&a| mul_bits(self.ring, c.bits, a)).collect(),
        })
    }

    /// Comma form, e.g. `(1,w,w,0)`.
    pub fn to_token_string(&self) -> String {
        let tokens: Vec<&str> = self.iter().map(|e| e.token()).collect();
        format!("({})", tokens.join(","))
    }

    /// Contiguous form for single-character alphabets, comma form otherwise.
    pub fn to_compact_string(&self) -> String {
        if self.ring.single_char_tokens() {
            self.iter().map(|e| e.token()).collect()
        } else {
            self.to_token_string()
        }
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token_string())
    }
}

#[inline]
pub(crate) fn dot_bits(ring: RingId, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| acc ^ mul_bits(ring, x, y))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    ring: RingId,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl RingMatrix {
    pub fn zeros(ring: RingId, rows: usize, cols: usize) -> Self {
        RingMatrix {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: RingId, n: usize) -> Self {
        let mut m = RingMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_rows(ring: RingId, rows: &[RingVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, RingVector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.ring != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: row.ring,
                });
            }
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    left: cols,
                    right: row.len(),
                });
            }
            data.extend_from_slice(&row.entries);
        }
        Ok(RingMatrix {
            ring,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(ring: RingId, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|b| ring.contains_bits(*b)));
        RingMatrix { ring, rows, cols, data }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> RingElement {
        RingElement {
            ring: self.ring,
            bits: self.data[r * self.cols + c],
        }
    }

    pub(crate) fn set_bits(&mut self, r: usize, c: usize, bits: u8) {
        self.data[r * self.cols + c] = bits;
    }

    pub fn row_bits(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row(&self, r: usize) -> RingVector {
        RingVector {
            ring: self.ring,
            entries: self.row_bits(r).to_vec(),
        }
    }

    pub fn row_vectors(&self) -> Vec<RingVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn raw(&self) -> &[u8] {
        &self.data
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut t = RingMatrix::zeros(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = RingMatrix::zeros(self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] ^= mul_bits(self.ring, a, other.data[k * other.cols + c]);
                }
            }
        }
        Ok(out)
    }

    /// `self · selfᵀ`, the Gram matrix of the rows.
    pub fn gram(&self) -> RingMatrix {
        let mut out = RingMatrix::zeros(self.ring, self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = dot_bits(self.ring, self.row_bits(i), self.row_bits(j));
                out.data[i * self.rows + j] = v;
                out.data[j * self.rows + i] = v;
            }
        }
        out
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::LengthMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(RingMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|b| *b == 0)
    }

    /// Entry-wise map into another ring.
    pub(crate) fn map_into(&self, ring: RingId, f: impl Fn(u8) -> u8) -> RingMatrix {
        RingMatrix::from_raw(ring, self.rows, self.cols, self.data.iter().map(|b| f(*b)).collect())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub(crate) fn place(&mut self, r0: usize, c0: usize, block: &RingMatrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row_bits(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RingMatrix {
        let mut out = RingMatrix::zeros(self.ring, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows).map(|r| self.row(r).to_token_string()).collect()
    }
}

/// Row `i` is `first_row` cyclically shifted right by `i` positions.
pub fn circulant(first_row: &RingVector) -> Result<RingMatrix> {
    let n = first_row.len();
    if n == 0 {
        return Err(Error::Empty("circulant first row"));
    }
    let mut m = RingMatrix::zeros(first_row.ring, n, n);
    for i in 0..n {
        for j in 0..n {
            m.data[i * n + (i + j) % n] = first_row.entries[j];
        }
    }
    Ok(m)
}

/// `[I_2n | A B ; Bᵀ Aᵀ]` with `A = circulant(ra)`, `B = circulant(rb)`.
/// Self-duality is not checked here.
pub fn four_circulant(ra: &RingVector, rb: &RingVector) -> Result<RingMatrix> {
    if ra.ring != rb.ring {
        return Err(Error::RingMismatch {
            left: ra.ring,
            right: rb.ring,
        });
    }
    if ra.len() != rb.len() {
        return Err(Error::LengthMismatch {
            left: ra.len(),
            right: rb.len(),
        });
    }
    let n = ra.len();
    let a = circulant(ra)?;
    let b = circulant(rb)?;
    let mut g = RingMatrix::zeros(ra.ring, 2 * n, 4 * n);
    g.place(0, 0, &RingMatrix::identity(ra.ring, 2 * n));
    g.place(0, 2 * n, &a);
    g.place(0, 3 * n, &b);
    g.place(n, 2 * n, &b.transpose());
    g.place(n, 3 * n, &a.transpose());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ring: RingId, t: &str) -> RingElement {
        parse_element(t, ring).unwrap()
    }

    /// Independent product: expand `(a0 + a1 ω + a2 u + a3 uω)` term by term
    /// over the integers and reduce with `ω² = ω + 1`, `u² = 0`, mod 2.
    fn oracle_mul(x: u8, y: u8) -> u8 {
        // monomial (u^i ω^j) coefficient table, i,j in 0..=2
        let mut coeff = [[0u32; 3]; 3];
        for (xi, (xu, xw)) in [(0, 0), (0, 1), (1, 0), (1, 1)].iter().enumerate() {
            for (yi, (yu, yw)) in [(0, 0), (0, 1), (1, 0), (1, 1)].iter().enumerate() {
                if (x >> xi) & 1 == 1 && (y >> yi) & 1 == 1 {
                    coeff[xu + yu][xw + yw] += 1;
                }
            }
        }
        // ω² -> ω + 1
        for row in coeff.iter_mut() {
            let w2 = row[2];
            row[2] = 0;
            row[1] += w2;
            row[0] += w2;
        }
        let c = |u: usize, w: usize| (coeff[u][w] % 2) as u8;
        c(0, 0) | (c(0, 1) << 1) | (c(1, 0) << 2) | (c(1, 1) << 3)
    }

    #[test]
    fn tables_match_independent_expansion() {
        for ring in RingId::ALL {
            for a in ring.payloads() {
                for b in ring.payloads() {
                    assert_eq!(mul_bits(ring, a, b), oracle_mul(a, b), "{ring} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = RingId::ALL.iter().map(|r| r.size()).collect();
        assert_eq!(sizes, vec![2, 4, 4, 16]);
        for ring in RingId::ALL {
            assert_eq!(ring.elements().count(), ring.size());
        }
    }

    #[test]
    fn add_examples() {
        let r = RingId::F2;
        assert!(el(r, "1").add(el(r, "1")).unwrap().is_zero());
        assert_eq!(
            el(RingId::F4, "w").add(el(RingId::F4, "W")).unwrap(),
            RingElement::one(RingId::F4)
        );
        let r = RingId::F2uF2;
        assert_eq!(el(r, "u").add(el(r, "3")).unwrap(), RingElement::one(r));
    }

    #[test]
    fn mul_examples() {
        let r = RingId::F2uF2;
        assert!(el(r, "u").mul(el(r, "u")).unwrap().is_zero());
        assert_eq!(el(r, "3").mul(el(r, "3")).unwrap(), RingElement::one(r));
        let r = RingId::F4;
        assert_eq!(el(r, "w").mul(el(r, "w")).unwrap(), el(r, "W"));
        let r = RingId::F4uF4;
        assert!(el(r, "z2").square().is_zero());
        assert_eq!(el(r, "b1").square(), el(r, "c1"));
    }

    #[test]
    fn mixed_ring_is_an_error() {
        let a = RingElement::one(RingId::F2);
        let b = RingElement::one(RingId::F4);
        assert!(matches!(a.add(b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.mul(b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn labels() {
        let r = RingId::F4uF4;
        assert_eq!(el(r, "b2").bits(), OMEGA | U);
        assert_eq!(el(r, "z3").bits(), U_OMEGA);
        assert_eq!(el(r, "c4").bits(), 0b1111);
        assert_eq!(el(r, "a4").bits(), ONE | U | U_OMEGA);
        assert_eq!(el(RingId::F2uF2, "3").bits(), ONE | U);
        assert!(el(RingId::F2, "0").is_zero());
        for ring in RingId::ALL {
            for e in ring.elements() {
                assert_eq!(parse_element(e.token(), ring).unwrap(), e);
            }
        }
    }

    #[test]
    fn unknown_token_names_position() {
        let err = RingVector::parse("(a1,q1,b2)", RingId::F4uF4).unwrap_err();
        match err {
            Error::Token { token, position, .. } => {
                assert_eq!(token, "q1");
                assert_eq!(position, 1);
            }
            e => panic!("unexpected {e}"),
        }
        assert!(parse_element("u", RingId::F4).is_err());
    }

    #[test]
    fn units_with_unit_square() {
        let tokens = |ring| -> Vec<&str> { units_square_one(ring).iter().map(|e| e.token()).collect() };
        assert_eq!(tokens(RingId::F2), vec!["1"]);
        assert_eq!(tokens(RingId::F4), vec!["1"]);
        assert_eq!(tokens(RingId::F2uF2), vec!["1", "3"]);
        // 1, 1+u, 1+uω, 1+u+uω
        assert_eq!(tokens(RingId::F4uF4), vec!["a1", "a2", "a3", "a4"]);
    }

    #[test]
    fn units_membership_is_exact() {
        for ring in RingId::ALL {
            let set = units_square_one(ring);
            for c in ring.elements() {
                let ok = c.is_unit() && c.square() == RingElement::one(ring);
                assert_eq!(set.contains(&c), ok);
            }
        }
    }

    #[test]
    fn inner_products() {
        let v = RingVector::parse("11", RingId::F2).unwrap();
        assert!(v.inner_product(&v).unwrap().is_zero());
        let v = RingVector::parse("(u,1)", RingId::F2uF2).unwrap();
        assert_eq!(v.inner_product(&v).unwrap(), RingElement::one(RingId::F2uF2));
        let v = RingVector::parse("(w,w)", RingId::F4).unwrap();
        assert!(v.inner_product(&v).unwrap().is_zero());
        let w = RingVector::parse("(w)", RingId::F4).unwrap();
        assert!(matches!(v.inner_product(&w), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn circulant_shape() {
        let r = RingVector::parse("(1,w,W)", RingId::F4).unwrap();
        let c = circulant(&r).unwrap();
        assert_eq!(c.row_strings(), vec!["(1,w,W)", "(W,1,w)", "(w,W,1)"]);
        let id = circulant(&RingVector::parse("1000", RingId::F2).unwrap()).unwrap();
        assert_eq!(id, RingMatrix::identity(RingId::F2, 4));
        assert!(circulant(&RingVector::zeros(RingId::F2, 0)).is_err());
        let ra = RingVector::parse("(u,0,0,0,u,1,u,3)", RingId::F2uF2).unwrap();
        let c = circulant(&ra).unwrap();
        assert_eq!(c.row(0), ra);
        assert_eq!(c.row(1).to_compact_string(), "3u000u1u");
    }

    #[test]
    fn four_circulant_small() {
        let g = four_circulant(
            &RingVector::parse("1", RingId::F2).unwrap(),
            &RingVector::parse("0", RingId::F2).unwrap(),
        )
        .unwrap();
        assert_eq!(g.row_strings(), vec!["(1,0,1,0)", "(0,1,0,1)"]);
        let g = four_circulant(
            &RingVector::parse("(1,w,w,0)", RingId::F4).unwrap(),
            &RingVector::parse("(w,W,W,w)", RingId::F4).unwrap(),
        )
        .unwrap();
        assert_eq!((g.rows(), g.cols()), (8, 16));
        let g = four_circulant(
            &RingVector::parse("11101010001", RingId::F2).unwrap(),
            &RingVector::parse("10110101101", RingId::F2).unwrap(),
        )
        .unwrap();
        assert_eq!((g.rows(), g.cols()), (22, 44));
        assert!(four_circulant(
            &RingVector::parse("10", RingId::F2).unwrap(),
            &RingVector::parse("1", RingId::F2).unwrap()
        )
        .is_err());
    }
}

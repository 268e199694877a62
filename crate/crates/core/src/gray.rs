//! Gray maps from the ring alphabets down to F2.
//!
//! Every map sends a length-`n` vector to a length-`2n` vector laid out as a
//! full first block followed by a full second block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binary::{set_bit, words_for, BinaryCode};
use crate::error::{Error, Result};
use crate::ring::{mul_bits, RingId, RingMatrix, RingVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrayMap {
    /// F4 → F2², `aω + bω̄ ↦ (a, b)`
    PsiF4,
    /// F2+uF2 → F2², `a + bu ↦ (b, a + b)`
    PhiF2u,
    /// F4+uF4 → (F2+uF2)², `aω + bω̄ ↦ (a, b)`
    PsiF4u,
    /// F4+uF4 → F4², `a + bu ↦ (b, a + b)`
    PhiF4u,
}

impl GrayMap {
    pub fn domain(self) -> RingId {
        match self {
            GrayMap::PsiF4 => RingId::F4,
            GrayMap::PhiF2u => RingId::F2uF2,
            GrayMap::PsiF4u | GrayMap::PhiF4u => RingId::F4uF4,
        }
    }

    pub fn codomain(self) -> RingId {
        match self {
            GrayMap::PsiF4 | GrayMap::PhiF2u => RingId::F2,
            GrayMap::PsiF4u => RingId::F2uF2,
            GrayMap::PhiF4u => RingId::F4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GrayMap::PsiF4 => "psi_f4",
            GrayMap::PhiF2u => "phi_f2u",
            GrayMap::PsiF4u => "psi_f4u",
            GrayMap::PhiF4u => "phi_f4u",
        }
    }

    /// Image of one symbol as the pair (first-block entry, second-block entry).
    #[inline]
    pub fn symbol(self, x: u8) -> (u8, u8) {
        let (x0, x1, x2, x3) = (x & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1);
        match self {
            // x = x0 + x1 ω = (x0 + x1) ω + x0 ω̄
            GrayMap::PsiF4 => (x0 ^ x1, x0),
            // a = x0, b = x2
            GrayMap::PhiF2u => (x2, x0 ^ x2),
            // x = b + (a + b) ω with b = x0 + x2 u, a + b = x1 + x3 u
            GrayMap::PsiF4u => {
                let b = x0 | (x2 << 2);
                let a = (x0 ^ x1) | ((x2 ^ x3) << 2);
                (a, b)
            }
            // a = x0 + x1 ω, b = x2 + x3 ω
            GrayMap::PhiF4u => {
                let a = x0 | (x1 << 1);
                let b = x2 | (x3 << 1);
                (b, a ^ b)
            }
        }
    }

    pub fn apply(self, v: &RingVector) -> Result<RingVector> {
        if v.ring() != self.domain() {
            return Err(Error::WrongRing {
                expected: self.domain().to_string(),
                found: v.ring(),
            });
        }
        let n = v.len();
        let mut out = vec![0u8; 2 * n];
        for (i, &x) in v.bits().iter().enumerate() {
            let (a, b) = self.symbol(x);
            out[i] = a;
            out[n + i] = b;
        }
        RingVector::from_bits(self.codomain(), out)
    }
}

impl fmt::Display for GrayMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GrayMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "psi_f4" => Ok(GrayMap::PsiF4),
            "phi_f2u" => Ok(GrayMap::PhiF2u),
            "psi_f4u" => Ok(GrayMap::PsiF4u),
            "phi_f4u" => Ok(GrayMap::PhiF4u),
            other => Err(Error::Invalid(format!("unknown Gray map {other:?}"))),
        }
    }
}

pub fn psi_f4(v: &RingVector) -> Result<RingVector> {
    GrayMap::PsiF4.apply(v)
}

pub fn phi_f2u(v: &RingVector) -> Result<RingVector> {
    GrayMap::PhiF2u.apply(v)
}

pub fn psi_f4u(v: &RingVector) -> Result<RingVector> {
    GrayMap::PsiF4u.apply(v)
}

pub fn phi_f4u(v: &RingVector) -> Result<RingVector> {
    GrayMap::PhiF4u.apply(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrayPath {
    steps: Vec<GrayMap>,
}

impl GrayPath {
    pub fn new(steps: Vec<GrayMap>) -> Result<Self> {
        let path = GrayPath { steps };
        for pair in path.steps.windows(2) {
            if pair[0].codomain() != pair[1].domain() {
                return Err(Error::BadGrayPath(path.to_string()));
            }
        }
        if path.steps.last().is_some_and(|s| s.codomain() != RingId::F2) {
            return Err(Error::BadGrayPath(path.to_string()));
        }
        Ok(path)
    }

    /// The fixed path used for Lee weights and binary images.
    pub fn canonical(ring: RingId) -> GrayPath {
        let steps = match ring {
            RingId::F2 => vec![],
            RingId::F4 => vec![GrayMap::PsiF4],
            RingId::F2uF2 => vec![GrayMap::PhiF2u],
            RingId::F4uF4 => vec![GrayMap::PsiF4u, GrayMap::PhiF2u],
        };
        GrayPath { steps }
    }

    /// `ψ_F4 ∘ φ_F4u`, the second route from F4+uF4 to F2.
    pub fn via_f4() -> GrayPath {
        GrayPath {
            steps: vec![GrayMap::PhiF4u, GrayMap::PsiF4],
        }
    }

    pub fn steps(&self) -> &[GrayMap] {
        &self.steps
    }

    pub fn domain(&self) -> RingId {
        self.steps.first().map_or(RingId::F2, |s| s.domain())
    }

    pub fn apply(&self, v: &RingVector) -> Result<RingVector> {
        if v.ring() != self.domain() {
            return Err(Error::WrongRing {
                expected: self.domain().to_string(),
                found: v.ring(),
            });
        }
        self.steps.iter().try_fold(v.clone(), |acc, step| step.apply(&acc))
    }
}

impl fmt::Display for GrayPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.steps.iter().map(|s| s.name()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

fn pack(v: &RingVector) -> Vec<u64> {
    let mut out = vec![0u64; words_for(v.len())];
    for (j, &b) in v.bits().iter().enumerate() {
        if b != 0 {
            set_bit(&mut out, j);
        }
    }
    out
}

/// Packed binary images of every F2-basis multiple of every row of `g`.
pub fn image_rows(g: &RingMatrix, path: &GrayPath) -> Result<Vec<Vec<u64>>> {
    if g.ring() != path.domain() {
        return Err(Error::WrongRing {
            expected: path.domain().to_string(),
            found: g.ring(),
        });
    }
    let ring = g.ring();
    let mut rows = Vec::with_capacity(g.rows() * ring.f2_basis().len());
    for r in 0..g.rows() {
        for &m in ring.f2_basis() {
            let scaled: Vec<u8> = g.row_bits(r).iter().map(|&x| mul_bits(ring, m, x)).collect();
            let v = RingVector::from_bits(ring, scaled)?;
            rows.push(pack(&path.apply(&v)?));
        }
    }
    Ok(rows)
}

/// The binary code spanned by the images of the ring code generated by `g`.
pub fn binary_image(g: &RingMatrix, path: &GrayPath) -> Result<BinaryCode> {
    let n = g.cols() * (1 << path.steps().len());
    BinaryCode::rank_and_systematize(image_rows(g, path)?, n)
}

/// Hamming weight of the canonical binary image.
pub fn lee_weight(v: &RingVector) -> usize {
    let image = GrayPath::canonical(v.ring())
        .apply(v)
        .expect("canonical path starts at the vector's ring");
    image.bits().iter().filter(|b| **b != 0).count()
}

pub fn symbol_lee_weight(ring: RingId, x: u8) -> usize {
    match ring {
        RingId::F2 => x as usize,
        RingId::F4 => {
            let (a, b) = GrayMap::PsiF4.symbol(x);
            (a + b) as usize
        }
        RingId::F2uF2 => {
            let (a, b) = GrayMap::PhiF2u.symbol(x);
            (a + b) as usize
        }
        RingId::F4uF4 => {
            let (a, b) = GrayMap::PsiF4u.symbol(x);
            symbol_lee_weight(RingId::F2uF2, a) + symbol_lee_weight(RingId::F2uF2, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_element;

    fn v(text: &str, ring: RingId) -> RingVector {
        RingVector::parse(text, ring).unwrap()
    }

    #[test]
    fn psi_f4_examples() {
        assert_eq!(psi_f4(&v("0", RingId::F4)).unwrap(), v("00", RingId::F2));
        assert_eq!(psi_f4(&v("w", RingId::F4)).unwrap(), v("10", RingId::F2));
        assert_eq!(psi_f4(&v("1", RingId::F4)).unwrap(), v("11", RingId::F2));
    }

    #[test]
    fn phi_f2u_examples() {
        assert_eq!(phi_f2u(&v("u", RingId::F2uF2)).unwrap(), v("11", RingId::F2));
        assert_eq!(phi_f2u(&v("3", RingId::F2uF2)).unwrap(), v("10", RingId::F2));
        assert_eq!(phi_f2u(&v("1u", RingId::F2uF2)).unwrap(), v("0111", RingId::F2));
    }

    /// Solve `x = aω + bω̄` by searching all pairs over F2+uF2.
    fn decompose_by_search(x: u8) -> (u8, u8) {
        let r = RingId::F4uF4;
        let omega = parse_element("b1", r).unwrap().bits();
        let omega_bar = parse_element("c1", r).unwrap().bits();
        let mut hits = RingId::F2uF2
            .payloads()
            .flat_map(|a| RingId::F2uF2.payloads().map(move |b| (a, b)))
            .filter(|&(a, b)| mul_bits(r, a, omega) ^ mul_bits(r, b, omega_bar) == x);
        let hit = hits.next().unwrap();
        assert!(hits.next().is_none(), "decomposition is unique");
        hit
    }

    #[test]
    fn psi_f4u_matches_search() {
        for x in RingId::F4uF4.payloads() {
            assert_eq!(GrayMap::PsiF4u.symbol(x), decompose_by_search(x), "x = {x}");
        }
        let r = RingId::F4uF4;
        assert_eq!(psi_f4u(&v("(b1)", r)).unwrap(), v("10", RingId::F2uF2));
        assert_eq!(psi_f4u(&v("(b2)", r)).unwrap(), v("3u", RingId::F2uF2));
        assert_eq!(psi_f4u(&v("(z2)", r)).unwrap(), v("uu", RingId::F2uF2));
    }

    #[test]
    fn phi_f4u_examples() {
        let r = RingId::F4uF4;
        assert_eq!(phi_f4u(&v("(z2)", r)).unwrap(), v("11", RingId::F4));
        assert_eq!(phi_f4u(&v("(b2)", r)).unwrap(), v("1W", RingId::F4));
        assert_eq!(phi_f4u(&v("(a4)", r)).unwrap(), v("Ww", RingId::F4));
    }

    #[test]
    fn lee_weights() {
        assert_eq!(lee_weight(&v("u", RingId::F2uF2)), 2);
        assert_eq!(lee_weight(&v("3", RingId::F2uF2)), 1);
        assert_eq!(lee_weight(&v("(b2)", RingId::F4uF4)), 3);
        for ring in RingId::ALL {
            for x in ring.payloads() {
                let vx = RingVector::from_bits(ring, vec![x]).unwrap();
                assert_eq!(lee_weight(&vx), symbol_lee_weight(ring, x));
            }
        }
    }

    #[test]
    fn paths() {
        assert!(GrayPath::new(vec![GrayMap::PsiF4u, GrayMap::PhiF2u]).is_ok());
        assert!(GrayPath::new(vec![GrayMap::PhiF4u, GrayMap::PsiF4]).is_ok());
        assert!(matches!(
            GrayPath::new(vec![GrayMap::PsiF4u, GrayMap::PsiF4]),
            Err(Error::BadGrayPath(_))
        ));
        assert!(GrayPath::new(vec![GrayMap::PsiF4u]).is_err());
        assert!(psi_f4(&v("1", RingId::F2)).is_err());
    }

    #[test]
    fn image_of_single_symbol_row() {
        let g = RingMatrix::from_rows(RingId::F2uF2, &[v("1", RingId::F2uF2)]).unwrap();
        let rows = image_rows(&g, &GrayPath::canonical(RingId::F2uF2)).unwrap();
        // 1 ↦ (0,1) and u·1 ↦ (1,1)
        assert_eq!(rows, vec![vec![0b10], vec![0b11]]);
    }
}

//! Linear codes over the rings: four-circulant construction, projection,
//! lifts and the two length-extension constructions.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binary::BinaryCode;
use crate::error::{Error, Result};
use crate::gray::{binary_image, GrayMap, GrayPath};
use crate::ring::{
    circulant, four_circulant, mul_bits, parse_element, units_square_one, RingElement, RingId, RingMatrix, RingVector,
    OMEGA, ONE, U,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Border `(1, 0, X)` over an arbitrary generator.
    A,
    /// Border `(1, 0, X, 1, …, 1)` over a systematic generator `[I | A]`.
    B,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Theorem::A),
            "B" | "b" => Ok(Theorem::B),
            other => Err(Error::Invalid(format!("unknown extension theorem {other:?}"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::A => "A",
            Theorem::B => "B",
        })
    }
}

/// How a code was built. Every variant carries enough to rebuild the
/// generator given the ring of the code it describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Explicit {
        rows: Vec<String>,
    },
    FourCirculant {
        ra: String,
        rb: String,
    },
    Lift {
        parent: Box<Provenance>,
        ra: String,
        rb: String,
    },
    Projection {
        parent: Box<Provenance>,
    },
    GrayImage {
        map: GrayMap,
        parent: Box<Provenance>,
    },
    Extension {
        base: Box<Provenance>,
        theorem: Theorem,
        x: String,
        c: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

impl Provenance {
    /// Rebuilds the code this record describes, taking `ring` as the ring of
    /// the outermost code.
    pub fn rebuild(&self, ring: RingId) -> Result<RingCode> {
        match self {
            Provenance::Explicit { rows } => {
                let rows = rows
                    .iter()
                    .map(|r| RingVector::parse(r, ring))
                    .collect::<Result<Vec<_>>>()?;
                RingCode::explicit(RingMatrix::from_rows(ring, &rows)?)
            }
            Provenance::FourCirculant { ra, rb } => {
                RingCode::four_circulant(&RingVector::parse(ra, ring)?, &RingVector::parse(rb, ring)?)
            }
            Provenance::Lift { parent, ra, rb } => {
                let residue = ring.residue().ok_or(Error::WrongRing {
                    expected: "F2uF2 or F4uF4".into(),
                    found: ring,
                })?;
                let seed = parent.rebuild(residue)?;
                seed.lift(&RingVector::parse(ra, ring)?, &RingVector::parse(rb, ring)?)
            }
            Provenance::Projection { parent } => {
                let lifted = ring.lifted().ok_or(Error::WrongRing {
                    expected: "F2 or F4".into(),
                    found: ring,
                })?;
                parent.rebuild(lifted)?.project_mu()
            }
            Provenance::GrayImage { map, parent } => parent.rebuild(map.domain())?.gray_image(*map),
            Provenance::Extension {
                base,
                theorem,
                x,
                c,
                seed,
            } => {
                let base = base.rebuild(ring)?;
                let params = ExtensionParams {
                    theorem: *theorem,
                    x: RingVector::parse(x, ring)?,
                    c: parse_element(c, ring)?,
                };
                let mut code = base.extend(&params)?;
                if let Provenance::Extension { seed: s, .. } = &mut code.provenance {
                    *s = *seed;
                }
                Ok(code)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingCode {
    pub name: Option<String>,
    generator: RingMatrix,
    provenance: Provenance,
}

/// `AAᵀ + BBᵀ = I` for the circulants of `ra` and `rb`.
pub fn check_four_circulant_condition(ra: &RingVector, rb: &RingVector) -> Result<bool> {
    if ra.ring() != rb.ring() {
        return Err(Error::RingMismatch {
            left: ra.ring(),
            right: rb.ring(),
        });
    }
    if ra.len() != rb.len() {
        return Err(Error::LengthMismatch {
            left: ra.len(),
            right: rb.len(),
        });
    }
    let a = circulant(ra)?;
    let b = circulant(rb)?;
    let sum = a.gram().add(&b.gram())?;
    Ok(sum == RingMatrix::identity(ra.ring(), ra.len()))
}

impl RingCode {
    pub fn explicit(generator: RingMatrix) -> Result<RingCode> {
        if generator.rows() == 0 || generator.cols() == 0 {
            return Err(Error::Empty("generator"));
        }
        Ok(RingCode {
            name: None,
            provenance: Provenance::Explicit {
                rows: generator.row_strings(),
            },
            generator,
        })
    }

    pub fn four_circulant(ra: &RingVector, rb: &RingVector) -> Result<RingCode> {
        Ok(RingCode {
            name: None,
            generator: four_circulant(ra, rb)?,
            provenance: Provenance::FourCirculant {
                ra: ra.to_token_string(),
                rb: rb.to_token_string(),
            },
        })
    }

    /// A generator read back from storage together with its recorded origin.
    pub fn with_provenance(generator: RingMatrix, provenance: Provenance) -> Result<RingCode> {
        if generator.rows() == 0 || generator.cols() == 0 {
            return Err(Error::Empty("generator"));
        }
        Ok(RingCode {
            name: None,
            generator,
            provenance,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn ring(&self) -> RingId {
        self.generator.ring()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn generator(&self) -> &RingMatrix {
        &self.generator
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// First rows of the circulant blocks when the code is four-circulant.
    pub fn four_circulant_seeds(&self) -> Option<(RingVector, RingVector)> {
        match &self.provenance {
            Provenance::FourCirculant { ra, rb } | Provenance::Lift { ra, rb, .. } => Some((
                RingVector::parse(ra, self.ring()).ok()?,
                RingVector::parse(rb, self.ring()).ok()?,
            )),
            _ => None,
        }
    }

    pub fn binary_image(&self) -> Result<BinaryCode> {
        binary_image(&self.generator, &GrayPath::canonical(self.ring()))
    }

    pub fn binary_image_via(&self, path: &GrayPath) -> Result<BinaryCode> {
        binary_image(&self.generator, path)
    }

    /// `G·Gᵀ = 0` and the canonical binary image has dimension half its length.
    pub fn is_self_dual(&self) -> bool {
        if !self.generator.gram().is_zero() {
            return false;
        }
        match self.binary_image() {
            Ok(image) => 2 * image.k() == image.n(),
            Err(_) => false,
        }
    }

    /// Reduction modulo `u`.
    pub fn project_mu(&self) -> Result<RingCode> {
        let residue = self.ring().residue().ok_or(Error::WrongRing {
            expected: "F2uF2 or F4uF4".into(),
            found: self.ring(),
        })?;
        Ok(RingCode {
            name: self.name.as_ref().map(|n| format!("mu({n})")),
            generator: self.generator.map_into(residue, |b| b & (ONE | OMEGA)),
            provenance: Provenance::Projection {
                parent: Box::new(self.provenance.clone()),
            },
        })
    }

    /// The image code under a ring-to-ring or ring-to-F2 Gray map.
    pub fn gray_image(&self, map: GrayMap) -> Result<RingCode> {
        if self.ring() != map.domain() {
            return Err(Error::WrongRing {
                expected: map.domain().to_string(),
                found: self.ring(),
            });
        }
        // a basis of the domain as a module over the codomain
        let multipliers: &[u8] = match map {
            GrayMap::PsiF4 | GrayMap::PsiF4u => &[ONE, OMEGA],
            GrayMap::PhiF2u | GrayMap::PhiF4u => &[ONE, U],
        };
        let ring = self.ring();
        let mut rows = Vec::with_capacity(self.generator.rows() * multipliers.len());
        for r in 0..self.generator.rows() {
            for &m in multipliers {
                let scaled = self
                    .generator
                    .row_bits(r)
                    .iter()
                    .map(|&x| mul_bits(ring, m, x))
                    .collect();
                rows.push(map.apply(&RingVector::from_bits(ring, scaled)?)?);
            }
        }
        Ok(RingCode {
            name: self.name.as_ref().map(|n| format!("{}({n})", map.name())),
            generator: RingMatrix::from_rows(map.codomain(), &rows)?,
            provenance: Provenance::GrayImage {
                map,
                parent: Box::new(self.provenance.clone()),
            },
        })
    }

    /// The four-circulant code over `R + uR` with seeds `ra`, `rb`, checked to
    /// reduce to this code's seeds.
    pub fn lift(&self, ra: &RingVector, rb: &RingVector) -> Result<RingCode> {
        let (sa, sb) = self.four_circulant_seeds().ok_or(Error::NotFourCirculant)?;
        let lifted = self.ring().lifted().ok_or(Error::WrongRing {
            expected: "F2 or F4".into(),
            found: self.ring(),
        })?;
        for v in [ra, rb] {
            if v.ring() != lifted {
                return Err(Error::WrongRing {
                    expected: lifted.to_string(),
                    found: v.ring(),
                });
            }
        }
        let reduce = |v: &RingVector| v.bits().iter().map(|b| b & (ONE | OMEGA)).collect::<Vec<u8>>();
        if reduce(ra) != sa.bits() || reduce(rb) != sb.bits() {
            return Err(Error::Invalid(format!(
                "seeds {ra} / {rb} do not reduce to {sa} / {sb} modulo u"
            )));
        }
        Ok(RingCode {
            name: None,
            generator: four_circulant(ra, rb)?,
            provenance: Provenance::Lift {
                parent: Box::new(self.provenance.clone()),
                ra: ra.to_token_string(),
                rb: rb.to_token_string(),
            },
        })
    }

    pub fn enumerate_lifts(&self, mode: LiftMode) -> Result<Lifts<'_>> {
        let (ra, rb) = self.four_circulant_seeds().ok_or(Error::NotFourCirculant)?;
        let lifted = self.ring().lifted().ok_or(Error::WrongRing {
            expected: "F2 or F4".into(),
            found: self.ring(),
        })?;
        let seeds: Vec<u8> = ra.bits().iter().chain(rb.bits()).copied().collect();
        let choices = self.ring().size() as u64;
        let total = choices.checked_pow(seeds.len() as u32);
        let (next, end, rng) = match mode {
            LiftMode::Exhaustive { start, end } => {
                let total = total.ok_or_else(|| Error::Invalid("too many lifts to index".into()))?;
                (start, end.unwrap_or(total).min(total), None)
            }
            LiftMode::Random { seed, budget } => (0, budget, Some(ChaCha8Rng::seed_from_u64(seed))),
        };
        Ok(Lifts {
            parent: self,
            lifted,
            seeds,
            choices,
            next,
            end,
            rng,
        })
    }

    pub fn extend(&self, params: &ExtensionParams) -> Result<RingCode> {
        match params.theorem {
            Theorem::A => self.extend_a(&params.x, params.c),
            Theorem::B => self.extend_b(&params.x, params.c),
        }
    }

    fn check_extension_inputs(&self, x: &RingVector, c: RingElement, required: RingElement) -> Result<()> {
        let ring = self.ring();
        if x.ring() != ring || c.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring,
                right: if x.ring() != ring { x.ring() } else { c.ring() },
            });
        }
        if !units_square_one(ring).contains(&c) {
            return Err(Error::BadUnit(c.token().into()));
        }
        let xx = x.inner_product(x)?;
        if xx != required {
            return Err(Error::BadExtensionVector {
                required: required.token().into(),
                found: xx.token().into(),
            });
        }
        if !self.is_self_dual() {
            return Err(Error::NotSelfDual);
        }
        Ok(())
    }

    fn finish_extension(
        &self,
        generator: RingMatrix,
        theorem: Theorem,
        x: &RingVector,
        c: RingElement,
    ) -> Result<RingCode> {
        let code = RingCode {
            name: None,
            generator,
            provenance: Provenance::Extension {
                base: Box::new(self.provenance.clone()),
                theorem,
                x: x.to_compact_string(),
                c: c.token().into(),
                seed: None,
            },
        };
        if !code.is_self_dual() {
            return Err(Error::Invalid("extension is not self-dual".into()));
        }
        Ok(code)
    }

    /// Rows `(1, 0, X)` and `(y_i, c·y_i, r_i)` with `y_i = <r_i, X>`.
    pub fn extend_a(&self, x: &RingVector, c: RingElement) -> Result<RingCode> {
        let ring = self.ring();
        let n = self.length();
        if x.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: x.len(),
            });
        }
        self.check_extension_inputs(x, c, RingElement::one(ring))?;
        let k = self.generator.rows();
        let mut g = RingMatrix::zeros(ring, k + 1, n + 2);
        g.set_bits(0, 0, ONE);
        for (j, &xj) in x.bits().iter().enumerate() {
            g.set_bits(0, j + 2, xj);
        }
        for i in 0..k {
            let row = self.generator.row(i);
            let y = row.inner_product(x)?;
            g.set_bits(i + 1, 0, y.bits());
            g.set_bits(i + 1, 1, mul_bits(ring, c.bits(), y.bits()));
            for (j, &b) in row.bits().iter().enumerate() {
                g.set_bits(i + 1, j + 2, b);
            }
        }
        self.finish_extension(g, Theorem::A, x, c)
    }

    /// For `G = [I_n | A]`: rows `(1, 0, X, 1…1)` and `(y_i, c·y_i, e_i, A_i)`
    /// with `y_i = x_i + r_i`, `r_i` the sum of row `i` of `A`.
    pub fn extend_b(&self, x: &RingVector, c: RingElement) -> Result<RingCode> {
        let ring = self.ring();
        let n = self.generator.rows();
        if self.length() != 2 * n || self.generator.block(0, 0, n, n) != RingMatrix::identity(ring, n) {
            return Err(Error::NotSystematic);
        }
        if x.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: x.len(),
            });
        }
        let n_ones = if n % 2 == 1 { ONE } else { 0 };
        let required = RingElement::new(ring, ONE ^ n_ones)?;
        self.check_extension_inputs(x, c, required)?;
        let mut g = RingMatrix::zeros(ring, n + 1, 2 * n + 2);
        g.set_bits(0, 0, ONE);
        for j in 0..n {
            g.set_bits(0, 2 + j, x.bits()[j]);
            g.set_bits(0, 2 + n + j, ONE);
        }
        for i in 0..n {
            let a_row = &self.generator.row_bits(i)[n..];
            let r = a_row.iter().fold(0, |acc, b| acc ^ b);
            let y = x.bits()[i] ^ r;
            g.set_bits(i + 1, 0, y);
            g.set_bits(i + 1, 1, mul_bits(ring, c.bits(), y));
            g.set_bits(i + 1, 2 + i, ONE);
            for (j, &b) in a_row.iter().enumerate() {
                g.set_bits(i + 1, 2 + n + j, b);
            }
        }
        self.finish_extension(g, Theorem::B, x, c)
    }

    pub(crate) fn with_seed(mut self, seed: u64) -> Self {
        if let Provenance::Extension { seed: s, .. } = &mut self.provenance {
            *s = Some(seed);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionParams {
    pub theorem: Theorem,
    pub x: RingVector,
    pub c: RingElement,
}

impl ExtensionParams {
    /// The self inner product `X` must have: 1 for A, `1 + n·1` for B.
    pub fn required_norm(theorem: Theorem, ring: RingId, n: usize) -> RingElement {
        let bits = match theorem {
            Theorem::A => ONE,
            Theorem::B if n % 2 == 1 => 0,
            Theorem::B => ONE,
        };
        RingElement::new(ring, bits).expect("0 and 1 lie in every ring")
    }
}

/// Uniform vector, then the first coordinate (and smallest replacement value)
/// that brings `<X,X>` to `target` is overwritten.
pub fn sample_extension_vector(
    ring: RingId,
    len: usize,
    target: RingElement,
    rng: &mut impl Rng,
) -> Result<RingVector> {
    let payloads: Vec<u8> = ring.payloads().collect();
    let mut bits: Vec<u8> = (0..len).map(|_| payloads[rng.gen_range(0..payloads.len())]).collect();
    let norm = |v: &[u8]| v.iter().fold(0u8, |acc, &b| acc ^ mul_bits(ring, b, b));
    let current = norm(&bits);
    if current != target.bits() {
        let fixed = (0..len).find_map(|i| {
            let rest = current ^ mul_bits(ring, bits[i], bits[i]);
            payloads
                .iter()
                .find(|&&p| rest ^ mul_bits(ring, p, p) == target.bits())
                .map(|&p| (i, p))
        });
        let (i, p) = fixed.ok_or_else(|| Error::Invalid(format!("no vector of length {len} has norm {target}")))?;
        bits[i] = p;
    }
    RingVector::from_bits(ring, bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    /// Lexicographic over preimage indices, positions `rA` then `rB`, first
    /// position most significant; `start..end` selects a slice.
    Exhaustive {
        start: u64,
        end: Option<u64>,
    },
    Random {
        seed: u64,
        budget: u64,
    },
}

pub struct Lifts<'a> {
    parent: &'a RingCode,
    lifted: RingId,
    seeds: Vec<u8>,
    choices: u64,
    next: u64,
    end: u64,
    rng: Option<ChaCha8Rng>,
}

impl Lifts<'_> {
    /// Index of the next lift in exhaustive order.
    pub fn position(&self) -> u64 {
        self.next
    }

    fn build(&self, digits: &[u64]) -> RingCode {
        let half = self.seeds.len() / 2;
        let bits: Vec<u8> = self
            .seeds
            .iter()
            .zip(digits)
            .map(|(&s, &d)| s | ((d as u8) << 2))
            .collect();
        let ra = RingVector::from_bits(self.lifted, bits[..half].to_vec()).expect("lifted payload");
        let rb = RingVector::from_bits(self.lifted, bits[half..].to_vec()).expect("lifted payload");
        self.parent.lift(&ra, &rb).expect("preimages reduce to the seeds")
    }
}

impl Iterator for Lifts<'_> {
    type Item = RingCode;

    fn next(&mut self) -> Option<RingCode> {
        if self.next >= self.end {
            return None;
        }
        let len = self.seeds.len();
        let digits: Vec<u64> = match self.rng.as_mut() {
            Some(rng) => (0..len).map(|_| rng.gen_range(0..self.choices)).collect(),
            None => {
                let mut t = self.next;
                let mut d = vec![0u64; len];
                for slot in d.iter_mut().rev() {
                    *slot = t % self.choices;
                    t /= self.choices;
                }
                d
            }
        };
        self.next += 1;
        Some(self.build(&digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(text: &str, ring: RingId) -> RingVector {
        RingVector::parse(text, ring).unwrap()
    }

    fn c1() -> RingCode {
        RingCode::four_circulant(&v("(1,w,w,0)", RingId::F4), &v("(w,W,W,w)", RingId::F4)).unwrap()
    }

    fn c64() -> RingCode {
        RingCode::four_circulant(
            &v("(u,0,0,0,u,1,u,3)", RingId::F2uF2),
            &v("(u,u,0,1,1,3,3,3)", RingId::F2uF2),
        )
        .unwrap()
    }

    #[test]
    fn self_duality_examples() {
        let c = RingCode::four_circulant(&v("1", RingId::F2), &v("0", RingId::F2)).unwrap();
        assert!(c.is_self_dual());
        let not = RingCode::explicit(
            RingMatrix::from_rows(RingId::F2, &[v("1000", RingId::F2), v("0100", RingId::F2)]).unwrap(),
        )
        .unwrap();
        assert!(!not.is_self_dual());
        assert!(c1().is_self_dual());
        assert!(c64().is_self_dual());
    }

    #[test]
    fn four_circulant_conditions() {
        assert!(check_four_circulant_condition(&v("1", RingId::F2), &v("0", RingId::F2)).unwrap());
        assert!(check_four_circulant_condition(&v("(1,w,w,0)", RingId::F4), &v("(w,W,W,w)", RingId::F4)).unwrap());
        assert!(!check_four_circulant_condition(&v("11", RingId::F2), &v("00", RingId::F2)).unwrap());
        assert!(check_four_circulant_condition(&v("1", RingId::F2), &v("00", RingId::F2)).is_err());
    }

    #[test]
    fn projection() {
        let j1 = c1()
            .lift(&v("(a2,b3,b1,z4)", RingId::F4uF4), &v("(b4,c4,c1,b2)", RingId::F4uF4))
            .unwrap();
        assert_eq!(j1.project_mu().unwrap().generator(), c1().generator());
        let g = RingMatrix::from_rows(RingId::F4uF4, &[v("(z2,z3,z4)", RingId::F4uF4)]).unwrap();
        let code = RingCode::explicit(g).unwrap();
        assert!(code.project_mu().unwrap().generator().is_zero());
        assert!(c1().project_mu().is_err());
        let single = RingMatrix::from_rows(RingId::F4uF4, &[v("(b2)", RingId::F4uF4)]).unwrap();
        let mu = RingCode::explicit(single).unwrap().project_mu().unwrap();
        assert_eq!(mu.generator().get(0, 0).token(), "w");
    }

    #[test]
    fn lifts_of_the_smallest_seed() {
        let seed = RingCode::four_circulant(&v("1", RingId::F4), &v("0", RingId::F4)).unwrap();
        let lifts: Vec<RingCode> = seed
            .enumerate_lifts(LiftMode::Exhaustive { start: 0, end: None })
            .unwrap()
            .collect();
        assert_eq!(lifts.len(), 16);
        for l in &lifts {
            assert_eq!(l.project_mu().unwrap().generator(), seed.generator());
        }
        assert_eq!(lifts[0].four_circulant_seeds().unwrap().0.to_token_string(), "(a1)");
        assert_eq!(lifts[1].four_circulant_seeds().unwrap().1.to_token_string(), "(z2)");
        assert_eq!(lifts[15].four_circulant_seeds().unwrap().0.to_token_string(), "(a4)");
        let again: Vec<RingCode> = seed
            .enumerate_lifts(LiftMode::Random { seed: 3, budget: 5 })
            .unwrap()
            .collect();
        let twice: Vec<RingCode> = seed
            .enumerate_lifts(LiftMode::Random { seed: 3, budget: 5 })
            .unwrap()
            .collect();
        assert_eq!(again, twice);
        let explicit = RingCode::explicit(seed.generator().clone()).unwrap();
        assert!(matches!(
            explicit.enumerate_lifts(LiftMode::Exhaustive { start: 0, end: None }),
            Err(Error::NotFourCirculant)
        ));
    }

    #[test]
    fn j1_is_a_lift_of_c1() {
        let j1 = c1()
            .lift(&v("(a2,b3,b1,z4)", RingId::F4uF4), &v("(b4,c4,c1,b2)", RingId::F4uF4))
            .unwrap();
        assert!(j1.is_self_dual());
        assert!(c1()
            .lift(&v("(a2,b3,b1,z4)", RingId::F4uF4), &v("(a1,c4,c1,b2)", RingId::F4uF4))
            .is_err());
    }

    #[test]
    fn extend_a_over_f2() {
        let base = RingCode::explicit(RingMatrix::from_rows(RingId::F2, &[v("11", RingId::F2)]).unwrap()).unwrap();
        let d = base
            .extend_a(&v("10", RingId::F2), RingElement::one(RingId::F2))
            .unwrap();
        assert_eq!(d.generator().row_strings(), vec!["(1,0,1,0)", "(1,1,1,1)"]);
        assert!(d.is_self_dual());
    }

    #[test]
    fn extend_b_over_f2() {
        let base = RingCode::explicit(RingMatrix::from_rows(RingId::F2, &[v("11", RingId::F2)]).unwrap()).unwrap();
        let d = base
            .extend_b(&v("0", RingId::F2), RingElement::one(RingId::F2))
            .unwrap();
        assert_eq!(d.generator().row_strings(), vec!["(1,0,0,1)", "(1,1,1,1)"]);
        assert!(d.is_self_dual());
        assert_eq!(d.binary_image().unwrap().k(), 2);
    }

    #[test]
    fn extension_precondition_errors() {
        let r = RingId::F2uF2;
        let x = v("3u3uu3310010u3u0", r);
        let u = parse_element("u", r).unwrap();
        assert!(matches!(c64().extend_b(&x, u), Err(Error::BadUnit(_))));
        let bad_x = v("0u3uu3310010u3u0", r);
        assert!(matches!(
            c64().extend_b(&bad_x, RingElement::one(r)),
            Err(Error::BadExtensionVector { .. })
        ));
        assert!(matches!(
            c64().extend_b(&v("3u3", r), RingElement::one(r)),
            Err(Error::LengthMismatch { .. })
        ));
        let not_sd = RingCode::explicit(
            RingMatrix::from_rows(RingId::F2, &[v("1000", RingId::F2), v("0100", RingId::F2)]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            not_sd.extend_b(&v("10", RingId::F2), RingElement::one(RingId::F2)),
            Err(Error::NotSelfDual)
        ));
        let not_sys = RingCode::explicit(
            RingMatrix::from_rows(RingId::F2, &[v("0110", RingId::F2), v("1001", RingId::F2)]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            not_sys.extend_b(&v("10", RingId::F2), RingElement::one(RingId::F2)),
            Err(Error::NotSystematic)
        ));
    }

    #[test]
    fn c64_row_sums_are_one_plus_u() {
        let g = c64();
        let gen = g.generator();
        for i in 0..16 {
            let r = gen.row_bits(i)[16..].iter().fold(0, |a, b| a ^ b);
            assert_eq!(r, ONE | U);
        }
    }

    #[test]
    fn sampled_vectors_meet_the_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ring in RingId::ALL {
            for len in [1, 5, 16] {
                let target = RingElement::one(ring);
                let x = sample_extension_vector(ring, len, target, &mut rng).unwrap();
                assert_eq!(x.inner_product(&x).unwrap(), target);
            }
        }
    }

    #[test]
    fn provenance_rebuilds() {
        let j1 = c1()
            .lift(&v("(a2,b3,b1,z4)", RingId::F4uF4), &v("(b4,c4,c1,b2)", RingId::F4uF4))
            .unwrap();
        let psi = j1.gray_image(GrayMap::PsiF4u).unwrap();
        assert_eq!(psi.length(), 32);
        assert_eq!(psi.generator().rows(), 16);
        let rebuilt = psi.provenance().rebuild(RingId::F2uF2).unwrap();
        assert_eq!(rebuilt.generator(), psi.generator());
        let mu = j1.project_mu().unwrap();
        assert_eq!(mu.provenance().rebuild(RingId::F4).unwrap().generator(), mu.generator());
    }
}

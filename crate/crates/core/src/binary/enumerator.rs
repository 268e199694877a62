use serde::{Deserialize, Serialize};

use super::{BinaryCode, WeightCensus};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeType {
    TypeI,
    TypeII,
    NotSelfDual,
}

/// Self-dual codes are doubly-even exactly when every generator row is:
/// `wt(x+y) = wt(x) + wt(y) - 2 wt(x∧y)` and `wt(x∧y)` is even.
pub fn classify_type(code: &BinaryCode) -> CodeType {
    if !code.is_self_dual() {
        CodeType::NotSelfDual
    } else if code.row_weights().iter().all(|w| w % 4 == 0) {
        CodeType::TypeII
    } else {
        CodeType::TypeI
    }
}

/// Upper bound on the minimum distance of a self-dual code of length `n`.
pub fn extremal_bound(n: usize, t: CodeType) -> Result<usize> {
    if n % 2 == 1 {
        return Err(Error::OddLength(n));
    }
    let base = 4 * (n / 24) + 4;
    match t {
        CodeType::TypeII => Ok(base),
        CodeType::TypeI if n % 24 == 22 => Ok(base + 2),
        CodeType::TypeI => Ok(base),
        CodeType::NotSelfDual => Err(Error::NotSelfDual),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    W64_1,
    W64_2,
    W68_1,
    W68_2,
    W80,
    W88,
    W96,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorReport {
    pub family: Option<Family>,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
    pub alpha: Option<i64>,
    pub matched: bool,
    pub residuals: Vec<String>,
}

impl EnumeratorReport {
    fn unmatched(family: Option<Family>, residuals: Vec<String>) -> Self {
        EnumeratorReport {
            family,
            beta: None,
            gamma: None,
            alpha: None,
            matched: false,
            residuals,
        }
    }
}

fn coefficient(census: &WeightCensus, w: usize) -> Result<i64> {
    census
        .count(w)
        .map(|c| c as i64)
        .ok_or_else(|| Error::Invalid(format!("census stops at weight {} but A_{w} is needed", census.wmax)))
}

/// Residual when `value` is not divisible by `by`.
fn exact_div(value: i64, by: i64, what: &str) -> std::result::Result<i64, String> {
    if value % by == 0 {
        Ok(value / by)
    } else {
        Err(format!("{what}: {value} is not divisible by {by}"))
    }
}

fn nonzero_below(census: &WeightCensus, d: usize) -> Vec<String> {
    (1..d.min(census.counts.len()))
        .filter(|&w| census.counts[w] != 0)
        .map(|w| format!("A_{w} = {} (expected 0)", census.counts[w]))
        .collect()
}

/// Reads the family parameters off the low coefficients of the weight
/// enumerator of a self-dual code of length 64, 68, 80, 88 or 96.
pub fn extract_params(census: &WeightCensus, n: usize) -> Result<EnumeratorReport> {
    if !census.complete {
        return Err(Error::IncompleteCensus(census.wmax));
    }
    match n {
        64 => {
            let (a12, a14) = (coefficient(census, 12)?, coefficient(census, 14)?);
            let low = nonzero_below(census, 12);
            let beta = match exact_div(a12 - 1312, 16, "A_12 - 1312") {
                Ok(b) => b,
                Err(r) => return Ok(EnumeratorReport::unmatched(None, [low, vec![r]].concat())),
            };
            let family = if a14 == 22016 - 64 * beta {
                Family::W64_1
            } else if a14 == 23040 - 64 * beta {
                Family::W64_2
            } else {
                let r = format!("A_14 = {a14} fits neither 22016-64β nor 23040-64β with β = {beta}");
                return Ok(EnumeratorReport::unmatched(None, [low, vec![r]].concat()));
            };
            Ok(EnumeratorReport {
                family: Some(family),
                beta: Some(beta),
                gamma: None,
                alpha: None,
                matched: low.is_empty(),
                residuals: low,
            })
        }
        68 => {
            let (a12, a14) = (coefficient(census, 12)?, coefficient(census, 14)?);
            let low = nonzero_below(census, 12);
            let beta = match exact_div(a12 - 442, 4, "A_12 - 442") {
                Ok(b) => b,
                Err(r) => return Ok(EnumeratorReport::unmatched(None, [low, vec![r]].concat())),
            };
            if a14 == 10864 - 8 * beta {
                return Ok(EnumeratorReport {
                    family: Some(Family::W68_1),
                    beta: Some(beta),
                    gamma: None,
                    alpha: None,
                    matched: low.is_empty(),
                    residuals: low,
                });
            }
            match exact_div(14960 - 8 * beta - a14, 256, "14960 - 8β - A_14") {
                Ok(gamma) if gamma >= 0 => Ok(EnumeratorReport {
                    family: Some(Family::W68_2),
                    beta: Some(beta),
                    gamma: Some(gamma),
                    alpha: None,
                    matched: low.is_empty(),
                    residuals: low,
                }),
                Ok(gamma) => Ok(EnumeratorReport::unmatched(
                    Some(Family::W68_2),
                    [low, vec![format!("negative γ = {gamma}")]].concat(),
                )),
                Err(r) => Ok(EnumeratorReport::unmatched(None, [low, vec![r]].concat())),
            }
        }
        80 => {
            let a16 = coefficient(census, 16)?;
            let mut residuals = nonzero_below(census, 16);
            if a16 != 97565 {
                residuals.push(format!("A_16 = {a16}, expected 97565"));
            }
            Ok(EnumeratorReport {
                family: Some(Family::W80),
                beta: None,
                gamma: None,
                alpha: None,
                matched: residuals.is_empty(),
                residuals,
            })
        }
        88 => {
            coefficient(census, 16)?;
            let residuals = nonzero_below(census, 16);
            Ok(EnumeratorReport {
                family: Some(Family::W88),
                beta: None,
                gamma: None,
                alpha: None,
                matched: residuals.is_empty(),
                residuals,
            })
        }
        96 => {
            let a16 = coefficient(census, 16)?;
            let residuals = nonzero_below(census, 16);
            Ok(EnumeratorReport {
                family: Some(Family::W96),
                beta: None,
                gamma: None,
                alpha: Some(a16 + 28086),
                matched: residuals.is_empty(),
                residuals,
            })
        }
        other => Ok(EnumeratorReport::unmatched(
            None,
            vec![format!("no enumerator family for length {other}")],
        )),
    }
}

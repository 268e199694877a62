//! One-shot analysis of a binary code: the checks behind `sdf analyze`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::binary::{
    classify_type, design_lambda, extract_params, low_weight_census, min_distance_bz, pair_invariant, scan_bound,
    weight_census_full, BinaryCode, CensusOptions, CodeType, DesignLambda, EnumeratorReport, ScanOptions, WeightCensus,
};
use crate::error::{Error, Result};
use crate::harness::Check;

/// Single-threaded budget above which a full scan needs `--deep`; pair
/// counts at weight 16 and above always do.
pub const DEEP_SECONDS: f64 = 300.0;

// Measured on one core: 2^32 Gray-code steps over one 64-bit word in 7.5 s,
// and 4.7e9 codeword pairs (A16 of L80,1) in 9.8 s.
const SCAN_WORDS_PER_SECOND: f64 = 5.7e8;
const PAIRS_PER_SECOND: f64 = 4.8e8;

/// Projected single-threaded seconds for a full scan of a `[n,k]` code.
pub fn scan_projection(n: usize, k: usize) -> f64 {
    2f64.powi(k as i32) * n.div_ceil(64) as f64 / SCAN_WORDS_PER_SECOND
}

/// Projected single-threaded seconds for a pair count over `words` codewords.
pub fn pair_projection(words: u64) -> f64 {
    let w = words as f64;
    w * (w - 1.0) / 2.0 / PAIRS_PER_SECOND
}

pub fn human_seconds(s: f64) -> String {
    if s < 2.0 {
        "under 2 seconds".into()
    } else if s < 90.0 {
        format!("about {s:.0} seconds")
    } else if s < 5400.0 {
        format!("about {:.0} minutes", s / 60.0)
    } else {
        format!("about {:.1} hours", s / 3600.0)
    }
}

/// Weight through which the family parameters of a length-`n` image are read.
pub fn params_weight(n: usize) -> Option<usize> {
    match n {
        64 | 68 => Some(14),
        80 | 88 | 96 => Some(16),
        _ => None,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeRequest {
    pub self_dual: bool,
    pub code_type: bool,
    pub mindist: bool,
    pub census: Option<usize>,
    pub params: bool,
    /// Pair invariant `I_w` (pairs of weight-`w` words at distance `w`).
    pub invariant: Option<usize>,
    /// `(t, w)`: do the weight-`w` supports form a t-design?
    pub design: Option<(usize, usize)>,
    pub expect_d: Option<usize>,
    pub expect_beta: Option<i64>,
    pub expect_gamma: Option<i64>,
    pub expect_alpha: Option<i64>,
    pub deep: bool,
    /// Exact counts from a `2^k` scan instead of the census.
    pub full_scan: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub wmax: usize,
    pub complete: bool,
    pub method: String,
    /// Nonzero counts only, keyed by weight.
    pub counts: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub weight: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignResult {
    pub t: usize,
    pub weight: usize,
    #[serde(flatten)]
    pub lambda: DesignLambda,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_dual: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code_type: Option<CodeType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<EnumeratorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<PairCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignResult>,
    pub checks: Vec<Check>,
}

impl Analysis {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn push(checks: &mut Vec<Check>, name: &str, expected: impl ToString, found: impl ToString) {
    let (expected, found) = (expected.to_string(), found.to_string());
    checks.push(Check {
        name: name.into(),
        ok: expected == found,
        expected,
        found,
    });
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "none".into())
}

/// Exact counts through `wmax`, from a full scan when asked (or when `k` is
/// small) and from the information-set census otherwise.
pub fn census_for(
    image: &BinaryCode,
    wmax: usize,
    full_scan: bool,
    need_words: bool,
) -> Result<(WeightCensus, &'static str)> {
    if image.k() <= 20 || (full_scan && image.k() <= scan_bound()) {
        let mut full = weight_census_full(image, ScanOptions::default())?.truncated(wmax);
        // the invariants need the codewords themselves
        if need_words {
            let census = low_weight_census(image, wmax, CensusOptions::default())?;
            if census.counts != full.counts {
                return Err(Error::Invalid("full scan and census disagree".into()));
            }
            full.codewords = census.codewords;
        }
        Ok((full, "full_scan"))
    } else if full_scan {
        Err(Error::ScanBound {
            k: image.k(),
            bound: scan_bound(),
        })
    } else {
        Ok((low_weight_census(image, wmax, CensusOptions::default())?, "census"))
    }
}

/// Runs the requested analyses. `ring_self_dual` is the self-duality of the
/// ring code the image came from, if any; `--self-dual` requires both.
pub fn analyze(image: &BinaryCode, ring_self_dual: Option<bool>, req: &AnalyzeRequest) -> Result<Analysis> {
    let n = image.n();
    let mut out = Analysis {
        n,
        k: image.k(),
        ..Default::default()
    };
    if req.self_dual {
        let sd = image.is_self_dual() && ring_self_dual.unwrap_or(true);
        out.self_dual = Some(sd);
        push(&mut out.checks, "self_dual", true, sd);
    }
    let wants_params =
        req.params || req.expect_beta.is_some() || req.expect_gamma.is_some() || req.expect_alpha.is_some();
    if req.code_type || wants_params {
        out.code_type = Some(classify_type(image));
    }

    let mut wmax = req.census;
    let mut bump = |w: usize| wmax = Some(wmax.map_or(w, |m: usize| m.max(w)));
    if wants_params {
        let w = params_weight(n).ok_or_else(|| {
            Error::Invalid(format!(
                "enumerator parameters are defined for lengths 64, 68, 80, 88, 96, not {n}"
            ))
        })?;
        bump(w);
    }
    if let Some(w) = req.invariant {
        bump(w);
    }
    if let Some((_, w)) = req.design {
        bump(w);
    }
    if req.full_scan && !req.deep {
        let s = scan_projection(n, image.k());
        if s > DEEP_SECONDS {
            return Err(Error::NeedsDeep {
                what: format!("a full 2^{} scan", image.k()),
                projected: human_seconds(s),
            });
        }
    }

    let census = match wmax {
        Some(w) => {
            let need_words = req.invariant.is_some() || req.design.is_some();
            let (census, method) = census_for(image, w, req.full_scan, need_words)?;
            if !census.complete {
                return Err(Error::IncompleteCensus(w));
            }
            out.census = Some(CensusSummary {
                wmax: census.wmax,
                complete: census.complete,
                method: method.into(),
                counts: census
                    .counts
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c > 0)
                    .map(|(w, c)| (w, *c))
                    .collect(),
            });
            Some(census)
        }
        None => None,
    };

    if req.mindist || req.expect_d.is_some() {
        let d = match census.as_ref().and_then(WeightCensus::min_nonzero) {
            Some(d) => d,
            None if req.full_scan => crate::binary::min_distance_full(image, ScanOptions::default())?,
            None => min_distance_bz(image)?,
        };
        out.d = Some(d);
        if let Some(e) = req.expect_d {
            push(&mut out.checks, "d", e, d);
        }
    }

    if let Some(census) = &census {
        if wants_params {
            let p = extract_params(census, n)?;
            if let Some(e) = req.expect_beta {
                push(&mut out.checks, "beta", e, opt(p.beta));
            }
            if let Some(e) = req.expect_gamma {
                push(&mut out.checks, "gamma", e, opt(p.gamma));
            }
            if let Some(e) = req.expect_alpha {
                push(&mut out.checks, "alpha", e, opt(p.alpha));
            }
            out.params = Some(p);
        }
        if let Some(w) = req.invariant {
            let words = census.count(w).unwrap_or(0);
            let s = pair_projection(words);
            if w >= 16 && !req.deep {
                return Err(Error::NeedsDeep {
                    what: format!("I{w} over {words} codewords"),
                    projected: human_seconds(s),
                });
            }
            out.invariant = Some(PairCount {
                weight: w,
                count: pair_invariant(census, w, w)?,
            });
        }
        if let Some((t, w)) = req.design {
            out.design = Some(DesignResult {
                t,
                weight: w,
                lambda: design_lambda(census, n, w, t)?,
            });
        }
    }
    Ok(out)
}

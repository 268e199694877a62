use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::params_weight;
use crate::binary::{
    classify_type, extract_params, extremal_bound, low_weight_census, min_distance_bz, CensusOptions, EnumeratorReport,
    WeightCensus,
};
use crate::code::{
    check_four_circulant_condition, sample_extension_vector, ExtensionParams, LiftMode, Provenance, RingCode, Theorem,
};
use crate::error::{Error, Result};
use crate::ring::{RingElement, RingId, RingVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Candidate index in enumeration order.
    pub index: u64,
    pub ring: RingId,
    pub length: usize,
    pub provenance: Provenance,
    pub d: usize,
    pub params: Option<EnumeratorReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub candidates_examined: u64,
    pub hits: Vec<SearchHit>,
    pub seed: Option<u64>,
    pub filters_applied: Vec<String>,
    pub notes: Vec<String>,
}

/// Exact minimum distance if it is `>= target`, else `None`; the census is
/// extended far enough to read off the enumerator family when one applies.
fn screen(code: &RingCode, target: usize) -> Result<Option<(usize, Option<EnumeratorReport>)>> {
    let image = code.binary_image()?;
    let quick = low_weight_census(&image, target.saturating_sub(1), CensusOptions::default())?;
    if !quick.complete || quick.min_nonzero().is_some() {
        return Ok(None);
    }
    let wmax = params_weight(image.n()).unwrap_or(target).max(target);
    let census: WeightCensus = low_weight_census(&image, wmax, CensusOptions::default())?;
    let d = match census.min_nonzero() {
        Some(d) => d,
        None => min_distance_bz(&image)?,
    };
    let params = match params_weight(image.n()) {
        Some(_) => Some(extract_params(&census, image.n())?),
        None => None,
    };
    Ok(Some((d, params)))
}

/// All seed pairs over F4 of block size `n` satisfying the four-circulant
/// condition whose binary image has minimum distance `>= min_image_d`.
/// No equivalence reduction; output is in lexicographic seed order.
pub fn classify_four_circulant_f4(n: usize, min_image_d: usize) -> Result<Vec<RingCode>> {
    if n == 0 || n > 6 {
        return Err(Error::Invalid(format!("block size {n} is outside 1..=6")));
    }
    let total = 1u64 << (4 * n);
    let payloads: Vec<u8> = RingId::F4.payloads().collect();
    let seeds = |mut t: u64| -> Result<(RingVector, RingVector)> {
        let mut digits = vec![0u8; 2 * n];
        for d in digits.iter_mut().rev() {
            *d = payloads[(t % 4) as usize];
            t /= 4;
        }
        Ok((
            RingVector::from_bits(RingId::F4, digits[..n].to_vec())?,
            RingVector::from_bits(RingId::F4, digits[n..].to_vec())?,
        ))
    };
    let found: Vec<Option<RingCode>> = (0..total)
        .into_par_iter()
        .map(|t| -> Result<Option<RingCode>> {
            let (ra, rb) = seeds(t)?;
            if !check_four_circulant_condition(&ra, &rb)? {
                return Ok(None);
            }
            let code = RingCode::four_circulant(&ra, &rb)?;
            let image = code.binary_image()?;
            let below = low_weight_census(&image, min_image_d.saturating_sub(1), CensusOptions::default())?;
            Ok((below.complete && below.min_nonzero().is_none()).then_some(code))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftSearchMode {
    Enumerate(LiftMode),
    /// Explicit seeds over the lifted ring, e.g. a table's printed rows.
    Directed(Vec<(RingVector, RingVector)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    pub target_d: usize,
    pub mode: LiftSearchMode,
    /// Skip the projection bound check (for auditing the filter itself).
    pub skip_filter: bool,
}

const BATCH: usize = 256;

fn run_batches<I, F>(candidates: I, analyze: F) -> Result<(u64, Vec<SearchHit>)>
where
    I: Iterator<Item = (u64, Result<RingCode>)>,
    F: Fn(u64, &RingCode) -> Result<Option<SearchHit>> + Sync,
{
    let mut examined = 0;
    let mut hits = Vec::new();
    let mut candidates = candidates.peekable();
    while candidates.peek().is_some() {
        let batch: Vec<(u64, Result<RingCode>)> = candidates.by_ref().take(BATCH).collect();
        examined += batch.len() as u64;
        let results: Vec<Option<SearchHit>> = batch
            .par_iter()
            .map(|(i, code)| match code {
                Ok(code) => analyze(*i, code),
                Err(_) => Ok(None),
            })
            .collect::<Result<_>>()?;
        hits.extend(results.into_iter().flatten());
    }
    Ok((examined, hits))
}

/// Streams lifts of a four-circulant seed code and keeps those whose binary
/// image reaches `target_d`.
pub fn lift_search(seed: &RingCode, search: &LiftSearch) -> Result<SearchReport> {
    seed.four_circulant_seeds().ok_or(Error::NotFourCirculant)?;
    if !seed.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let mut filters = vec!["four-circulant condition AA^T + BB^T = I".to_string()];
    let mut notes = Vec::new();
    if !search.skip_filter {
        let d_seed = min_distance_bz(&seed.binary_image()?)?;
        filters.push(format!("projection bound d <= 2d' with d' = {d_seed}"));
        if 2 * d_seed < search.target_d {
            notes.push(format!(
                "target {} exceeds 2d' = {}: no lift can reach it",
                search.target_d,
                2 * d_seed
            ));
            return Ok(SearchReport {
                candidates_examined: 0,
                hits: Vec::new(),
                seed: None,
                filters_applied: filters,
                notes,
            });
        }
    }
    let analyze = |index: u64, code: &RingCode| -> Result<Option<SearchHit>> {
        let (la, lb) = code.four_circulant_seeds().expect("lifts are four-circulant");
        if !check_four_circulant_condition(&la, &lb)? {
            return Ok(None);
        }
        Ok(screen(code, search.target_d)?
            .filter(|(d, _)| *d == search.target_d)
            .map(|(d, params)| SearchHit {
                index,
                ring: code.ring(),
                length: code.length(),
                provenance: code.provenance().clone(),
                d,
                params,
            }))
    };
    let (examined, hits, rng_seed) = match &search.mode {
        LiftSearchMode::Enumerate(mode) => {
            let start = match mode {
                LiftMode::Exhaustive { start, .. } => *start,
                LiftMode::Random { .. } => 0,
            };
            let lifts = seed.enumerate_lifts(*mode)?;
            let (e, h) = run_batches(lifts.enumerate().map(|(i, c)| (start + i as u64, Ok(c))), analyze)?;
            let rng_seed = match mode {
                LiftMode::Random { seed, .. } => Some(*seed),
                LiftMode::Exhaustive { .. } => None,
            };
            (e, h, rng_seed)
        }
        LiftSearchMode::Directed(list) => {
            let lifts = list.iter().enumerate().map(|(i, (a, b))| (i as u64, seed.lift(a, b)));
            let (e, h) = run_batches(lifts, analyze)?;
            (e, h, None)
        }
    };
    Ok(SearchReport {
        candidates_examined: examined,
        hits,
        seed: rng_seed,
        filters_applied: filters,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSearch {
    pub theorem: Theorem,
    /// Units cycled through by candidate index.
    pub c_set: Vec<RingElement>,
    pub seed: u64,
    pub budget: u64,
    pub start: u64,
}

/// Candidate `i` draws `X` from ChaCha8 seeded with `seed` on stream `i`,
/// repaired to the required norm, and uses `c_set[i % len]`. Hits are
/// extensions whose image meets the extremal bound.
pub fn extension_search(base: &RingCode, search: &ExtensionSearch) -> Result<SearchReport> {
    if !base.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    if search.c_set.is_empty() {
        return Err(Error::Empty("unit set"));
    }
    let ring = base.ring();
    let len = match search.theorem {
        Theorem::A => base.length(),
        Theorem::B => base.generator().rows(),
    };
    let norm = ExtensionParams::required_norm(search.theorem, ring, len);
    let candidate = |i: u64| -> Result<RingCode> {
        let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
        rng.set_stream(i);
        let params = ExtensionParams {
            theorem: search.theorem,
            x: sample_extension_vector(ring, len, norm, &mut rng)?,
            c: search.c_set[(i % search.c_set.len() as u64) as usize],
        };
        Ok(base.extend(&params)?.with_seed(search.seed))
    };
    let image_len = (base.binary_image()?.n() / base.length()) * (base.length() + 2);
    let analyze = |index: u64, code: &RingCode| -> Result<Option<SearchHit>> {
        let image = code.binary_image()?;
        let bound = extremal_bound(image_len, classify_type(&image))?;
        Ok(screen(code, bound)?.map(|(d, params)| SearchHit {
            index,
            ring: code.ring(),
            length: code.length(),
            provenance: code.provenance().clone(),
            d,
            params,
        }))
    };
    let range = search.start..search.start.saturating_add(search.budget);
    let (examined, hits) = run_batches(range.map(|i| (i, candidate(i))), analyze)?;
    Ok(SearchReport {
        candidates_examined: examined,
        hits,
        seed: Some(search.seed),
        filters_applied: vec![format!("<X,X> = {norm}"), "d meets the extremal bound".into()],
        notes: Vec::new(),
    })
}

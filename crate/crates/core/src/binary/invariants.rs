use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{binomial, pack_rows, popcount, with_width, xor};
use super::{bit, WeightCensus};
use crate::error::{Error, Result};

fn require(census: &WeightCensus, w: usize) -> Result<()> {
    if !census.complete || census.wmax < w {
        return Err(Error::IncompleteCensus(w));
    }
    if census.codewords.len() as u64 + 1 < census.counts.iter().sum::<u64>() {
        return Err(Error::Invalid("census was built without its codewords".into()));
    }
    Ok(())
}

/// Unordered pairs of weight-`w` codewords at Hamming distance exactly `j`.
pub fn pair_invariant(census: &WeightCensus, w: usize, j: usize) -> Result<u64> {
    require(census, w)?;
    let words = census.words_of_weight(w);
    let Some(first) = words.first() else {
        return Ok(0);
    };
    let j = j as u32;
    Ok(with_width!(first.len(), W => {
        let packed = pack_rows::<W>(words.iter().copied());
        (0..packed.len())
            .into_par_iter()
            .map(|a| {
                let x = &packed[a];
                packed[a + 1..].iter().filter(|y| popcount(&xor(x, y)) == j).count() as u64
            })
            .sum()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignLambda {
    /// Covering count of the first `t`-subset; the common value when `is_design`.
    pub lambda: u64,
    pub is_design: bool,
}

const MAX_SUBSETS: u128 = 1 << 28;

/// For every `t`-subset of the `n` coordinates, counts the weight-`w`
/// codewords whose support contains it.
pub fn design_lambda(census: &WeightCensus, n: usize, w: usize, t: usize) -> Result<DesignLambda> {
    require(census, w)?;
    let words = census.words_of_weight(w);
    if t == 0 {
        return Ok(DesignLambda {
            lambda: words.len() as u64,
            is_design: true,
        });
    }
    let subsets = binomial(n, t);
    if subsets == 0 || subsets > MAX_SUBSETS {
        return Err(Error::Invalid(format!("C({n},{t}) subsets is out of range")));
    }
    // colex rank of a sorted subset {c_0 < ... < c_{t-1}} is Σ C(c_i, i+1)
    let table: Vec<Vec<u32>> = (0..n)
        .map(|c| (0..=t).map(|i| binomial(c, i) as u32).collect())
        .collect();
    let mut counts = vec![0u32; subsets as usize];
    let mut chosen = vec![0usize; t];
    for word in &words {
        let support: Vec<usize> = (0..n).filter(|&c| bit(word, c)).collect();
        if support.len() < t {
            continue;
        }
        for (i, c) in chosen.iter_mut().enumerate() {
            *c = i;
        }
        loop {
            let rank: u32 = chosen.iter().enumerate().map(|(i, &p)| table[support[p]][i + 1]).sum();
            counts[rank as usize] += 1;
            // next combination of positions into `support`
            let mut i = t;
            while i > 0 && chosen[i - 1] == support.len() - t + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            chosen[i - 1] += 1;
            for m in i..t {
                chosen[m] = chosen[m - 1] + 1;
            }
        }
    }
    let lambda = counts[0] as u64;
    Ok(DesignLambda {
        lambda,
        is_design: counts.iter().all(|&c| c as u64 == lambda),
    })
}

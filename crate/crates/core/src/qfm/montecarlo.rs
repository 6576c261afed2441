//! Seeded Monte Carlo estimator of the probabilistic mechanism.
//!
//! Sample `s` draws its uniforms from a ChaCha8 stream keyed by `(seed, s)`,
//! consumed in `(argument, element)` order, so every draw is a pure function
//! of `(seed, sample, argument, element)`. Samples are summed in fixed-size
//! chunks and the chunk sums are added in order, which makes the estimate
//! independent of how rayon schedules the chunks.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantifier::SemiFuzzyQuantifier;

const CHUNK: u64 = 2048;

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub(super) fn estimate(
    q: &SemiFuzzyQuantifier,
    args: &[&[f64]],
    samples: u64,
    seed: u64,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "Monte Carlo needs at least one sample".into(),
        ));
    }
    // Every draw is degenerate; all samples return the same value.
    if args.iter().all(|a| a.iter().all(|&m| m == 0.0 || m == 1.0)) {
        let crisp: Vec<Vec<bool>> = args
            .iter()
            .map(|a| a.iter().map(|&m| m == 1.0).collect())
            .collect();
        let views: Vec<&[bool]> = crisp.iter().map(Vec::as_slice).collect();
        return Ok(q.evaluate_slices(&views));
    }

    let len = args.first().map_or(0, |a| a.len());
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut bufs = vec![vec![false; len]; args.len()];
            let mut sum = 0.0;
            let start = chunk * CHUNK;
            for sample in start..(start + CHUNK).min(samples) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(sample);
                for (buf, mu) in bufs.iter_mut().zip(args) {
                    for (flag, &m) in buf.iter_mut().zip(mu.iter()) {
                        *flag = uniform(&mut rng) < m;
                    }
                }
                let views: Vec<&[bool]> = bufs.iter().map(Vec::as_slice).collect();
                sum += q.evaluate_slices(&views);
            }
            sum
        })
        .collect();
    Ok(sums.iter().sum::<f64>() / samples as f64)
}

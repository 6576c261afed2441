use crate::error::{Error, Result};
use crate::fuzzy::breakpoints_of;
use crate::quantifier::SemiFuzzyQuantifier;

use super::I_ARITY_CAP;

fn cut_into(buf: &mut [bool], mu: &[f64], level: f64) {
    for (b, &m) in buf.iter_mut().zip(mu) {
        *b = m >= level;
    }
}

/// Sum over `(v_{k-1}, v_k]` of `(v_k - v_{k-1}) * Q(cuts at v_k)`, `v_0 = 0`.
pub(super) fn md(q: &SemiFuzzyQuantifier, args: &[&[f64]]) -> f64 {
    let len = args.first().map_or(0, |a| a.len());
    let mut bufs = vec![vec![false; len]; args.len()];
    let mut prev = 0.0;
    let mut total = 0.0;
    for level in breakpoints_of(args.iter().copied()) {
        for (buf, mu) in bufs.iter_mut().zip(args) {
            cut_into(buf, mu, level);
        }
        let views: Vec<&[bool]> = bufs.iter().map(Vec::as_slice).collect();
        total += (level - prev) * q.evaluate_slices(&views);
        prev = level;
    }
    total
}

/// Each argument gets its own level partition; the integral becomes a sum
/// over the product of the partitions.
pub(super) fn independent(q: &SemiFuzzyQuantifier, args: &[&[f64]]) -> Result<f64> {
    if args.len() > I_ARITY_CAP {
        return Err(Error::Unsupported(format!(
            "the independent-levels mechanism is limited to arity {I_ARITY_CAP}, got {}",
            args.len()
        )));
    }
    // Per argument: (interval width, cut) for every level interval.
    let pieces: Vec<Vec<(f64, Vec<bool>)>> = args
        .iter()
        .map(|mu| {
            let mut prev = 0.0;
            breakpoints_of([*mu])
                .into_iter()
                .map(|level| {
                    let width = level - prev;
                    prev = level;
                    (width, mu.iter().map(|&m| m >= level).collect())
                })
                .collect()
        })
        .collect();

    let mut index = vec![0usize; args.len()];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        let mut views = Vec::with_capacity(args.len());
        for (piece, &k) in pieces.iter().zip(&index) {
            weight *= piece[k].0;
            views.push(piece[k].1.as_slice());
        }
        total += weight * q.evaluate_slices(&views);

        // Odometer over the interval indices, last argument fastest.
        let mut pos = args.len();
        loop {
            if pos == 0 {
                return Ok(total);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < pieces[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

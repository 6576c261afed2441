//! Exact evaluation of the probabilistic mechanism.

use crate::error::{Error, Result};
use crate::quantifier::{CardinalitySignature, Counts, SemiFuzzyQuantifier, SignatureKind};

use super::EXACT_BIT_CAP;

/// Tuning for the cardinality dynamic program.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DpOptions {
    /// Drop states whose probability falls below this value after each
    /// element. `None` keeps every state, matching exhaustive enumeration to
    /// floating precision.
    pub trim_below: Option<f64>,
}

/// Probability of every subset of one argument, indexed by bit mask
/// (bit `e` set iff element `e` is in the representative).
fn representative_table(mu: &[f64]) -> Vec<f64> {
    let mut table = Vec::with_capacity(1 << mu.len());
    table.push(1.0);
    for &m in mu {
        let half = table.len();
        for i in 0..half {
            let p = table[i];
            table.push(p * m);
            table[i] = p * (1.0 - m);
        }
    }
    table
}

pub(super) fn exact(q: &SemiFuzzyQuantifier, args: &[&[f64]]) -> Result<f64> {
    let len = args.first().map_or(0, |a| a.len());
    let bits = args.len() * len;
    if bits > EXACT_BIT_CAP {
        return Err(Error::CapExceeded {
            bits,
            limit: EXACT_BIT_CAP,
        });
    }
    let tables: Vec<Vec<f64>> = args.iter().map(|mu| representative_table(mu)).collect();
    let mut bufs = vec![vec![false; len]; args.len()];
    let mut total = 0.0;
    enumerate(q, &tables, &mut bufs, 0, 1.0, &mut total);
    Ok(total)
}

fn enumerate(
    q: &SemiFuzzyQuantifier,
    tables: &[Vec<f64>],
    bufs: &mut [Vec<bool>],
    arg: usize,
    weight: f64,
    total: &mut f64,
) {
    if arg == tables.len() {
        let views: Vec<&[bool]> = bufs.iter().map(Vec::as_slice).collect();
        *total += weight * q.evaluate_slices(&views);
        return;
    }
    for (mask, &p) in tables[arg].iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for (e, flag) in bufs[arg].iter_mut().enumerate() {
            *flag = mask >> e & 1 == 1;
        }
        enumerate(q, tables, bufs, arg + 1, weight * p, total);
    }
}

/// Per-element probabilities that the element increments `(joint,
/// restriction)` together, or `restriction` alone.
fn increments(kind: SignatureKind, args: &[&[f64]], e: usize) -> (f64, f64) {
    match kind {
        SignatureKind::AbsoluteIntersection => (args.iter().map(|a| a[e]).product(), 0.0),
        SignatureKind::ProportionalPair => {
            let (y1, y2) = (args[0][e], args[1][e]);
            (y1 * y2, y1 * (1.0 - y2))
        }
        SignatureKind::RestrictedProportionalPair => {
            let ty1 = args[0][e] * args[1][e];
            let y2 = args[2][e];
            (ty1 * y2, ty1 * (1.0 - y2))
        }
        SignatureKind::SimilarityPair => {
            let (t, y1, y2) = (args[0][e], args[1][e], args[2][e]);
            (t * y1 * y2, t * (y1 * (1.0 - y2) + (1.0 - y1) * y2))
        }
    }
}

pub(super) fn dp(sig: &CardinalitySignature, args: &[&[f64]], options: DpOptions) -> f64 {
    let len = args.first().map_or(0, |a| a.len());
    let kind = sig.kind();
    let trim = |p: &mut f64| {
        if let Some(t) = options.trim_below {
            if *p < t {
                *p = 0.0;
            }
        }
    };

    if kind == SignatureKind::AbsoluteIntersection {
        // Poisson-binomial distribution of the intersection count.
        let mut dist = vec![0.0; len + 1];
        dist[0] = 1.0;
        for e in 0..len {
            let (p, _) = increments(kind, args, e);
            for c in (0..=e + 1).rev() {
                let stay = dist[c] * (1.0 - p);
                let moved = if c > 0 { dist[c - 1] * p } else { 0.0 };
                dist[c] = stay + moved;
                trim(&mut dist[c]);
            }
        }
        return dist
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(|(c, &p)| {
                p * sig.reduce(
                    Counts {
                        joint: c,
                        restriction: 0,
                    },
                    len,
                )
            })
            .sum();
    }

    // dist[r * stride + j]: probability of restriction count r and joint
    // count j (j <= r).
    let stride = len + 1;
    let mut dist = vec![0.0; stride * stride];
    let mut next = dist.clone();
    dist[0] = 1.0;
    for e in 0..len {
        let (both, only_restriction) = increments(kind, args, e);
        let neither = 1.0 - both - only_restriction;
        next.iter_mut().for_each(|p| *p = 0.0);
        for r in 0..=e {
            for j in 0..=r {
                let p = dist[r * stride + j];
                if p == 0.0 {
                    continue;
                }
                next[r * stride + j] += p * neither;
                next[(r + 1) * stride + j + 1] += p * both;
                next[(r + 1) * stride + j] += p * only_restriction;
            }
        }
        if options.trim_below.is_some() {
            next.iter_mut().for_each(trim);
        }
        std::mem::swap(&mut dist, &mut next);
    }
    let mut total = 0.0;
    for r in 0..=len {
        for j in 0..=r {
            let p = dist[r * stride + j];
            if p != 0.0 {
                total += p * sig.reduce(
                    Counts {
                        joint: j,
                        restriction: r,
                    },
                    len,
                );
            }
        }
    }
    total
}

//! Argmin subroutines over vertex sets.

use rand::Rng;

use crate::graph::VertexId;
use crate::oracle::CountingOracle;
use crate::{Error, Result};

/// Sets of at most this size are always searched exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 3;

/// Exhaustive argmin: queries every element of `s` and charges `|s|`.
/// `None` for an empty set.
pub fn argmin_det(oracle: &mut CountingOracle<'_>, s: &[VertexId]) -> Result<Option<VertexId>> {
    let mut best = None;
    for &v in s {
        let key = oracle.query(v)?;
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    oracle.charge(s.len() as u64);
    Ok(best.map(|k| k.vertex))
}

/// Smallest `k` with `2^-k <= eps`, i.e. `ceil(log2(1/eps))`.
pub fn repetitions(eps: f64) -> Result<u32> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid(format!("error probability {eps} outside (0, 1)")));
    }
    let mut k = 1;
    while 0.5f64.powi(k as i32) > eps {
        k += 1;
    }
    Ok(k)
}

/// Modeled cost of one simulated call on a set of `size > 3` elements.
pub fn quantum_cost(size: usize, eps: f64) -> Result<u64> {
    let size = size as u64;
    let root = size.isqrt();
    let ceil_root = if root * root == size { root } else { root + 1 };
    Ok(u64::from(repetitions(eps)?) * ceil_root)
}

/// Cost-model stand-in for amplified quantum minimum finding.
///
/// Sets of at most three elements go through [`argmin_det`]. Larger sets are
/// resolved from uncharged reads, `k * ceil(sqrt(|s|))` is charged with
/// `k = ceil(log2(1/eps))`, and with `inject` set the answer is replaced by
/// a uniformly random non-minimal element with probability `eps`.
pub fn argmin_quantum_sim<R: Rng + ?Sized>(
    oracle: &mut CountingOracle<'_>,
    s: &[VertexId],
    eps: f64,
    inject: bool,
    rng: &mut R,
) -> Result<Option<VertexId>> {
    let cost = quantum_cost(s.len(), eps)?;
    if s.len() <= EXHAUSTIVE_LIMIT {
        return argmin_det(oracle, s);
    }
    let mut best = oracle.peek(s[0])?;
    let mut best_at = 0;
    for (i, &v) in s.iter().enumerate().skip(1) {
        let key = oracle.peek(v)?;
        if key < best {
            best = key;
            best_at = i;
        }
    }
    oracle.charge(cost);
    if inject && rng.gen::<f64>() < eps {
        let mut pick = rng.gen_range(0..s.len() - 1);
        if pick >= best_at {
            pick += 1;
        }
        return Ok(Some(s[pick]));
    }
    Ok(Some(best.vertex))
}

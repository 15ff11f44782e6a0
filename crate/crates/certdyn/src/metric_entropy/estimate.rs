//! Statistical entropy estimators along a single orbit: Katok–Brin
//! pointwise entropy and Birkhoff empirical measures.  Neither carries a
//! certificate — they are Monte-Carlo-style readings of one trajectory.

use crate::error::{Error, Result};
use crate::measure::metric::circle_dist;
use crate::measure::{Atom, DiscreteMeasure};
use crate::metric_entropy::map::{orbit, IntervalMap, OrbitSample};
use crate::rational::Q;
use crate::transcend::ln_interval;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct KatokBrinReport {
    /// −ln(hit fraction)/n, the pointwise entropy reading.
    pub estimate: Q,
    /// Windows t ≥ 1 whose length-n stretch shadows the initial one
    /// within eps at every step.
    pub hits: u64,
    /// Number of windows examined: N − n.
    pub windows: u64,
    /// No window returned: `estimate` degrades to the resolution floor
    /// ln(N)/n, a lower bound for the reading at this orbit length.
    pub zero_hits: bool,
}

/// Estimate the measure of the Bowen ball B_n(x₀, eps) by the fraction
/// of times the orbit re-enters it, and return −ln(fraction)/n.
///
/// A hit at time t means max_{k<n} d(x_{t+k}, x_k) < eps: the orbit
/// segment starting at t shadows the initial segment.  The estimate is
/// statistical; it has no error bound, and the horizon must stay small
/// against the sample (n ≤ N/10) for the return statistics to mean
/// anything.
pub fn katok_brin_estimate(sample: &OrbitSample, eps: &Q, n: u64) -> Result<KatokBrinReport> {
    let len = sample.points.len() as u64;
    if n == 0 {
        return Err(Error::InvalidInput("Bowen horizon n must be at least 1".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidInput(format!("eps must be positive, got {eps}")));
    }
    if n * 10 > len {
        return Err(Error::InvalidInput(format!(
            "horizon n = {n} too long for an orbit of {len} points (need n ≤ N/10)"
        )));
    }

    let pts = &sample.points;
    let nn = n as usize;
    let windows = len - n;
    let hits: u64 = (1..=windows as usize)
        .into_par_iter()
        .filter(|&t| (0..nn).all(|k| circle_dist(&pts[t + k], &pts[k]) < *eps))
        .count() as u64;

    let (estimate, zero_hits) = if hits == 0 {
        let floor = ln_interval(&Q::from_integer(len.into()), 30)?.midpoint()
            / Q::from_integer(n.into());
        (floor, true)
    } else if hits == windows {
        (Q::zero(), false)
    } else {
        let ratio = Q::new(windows.into(), hits.into());
        let est = ln_interval(&ratio, 30)?.midpoint() / Q::from_integer(n.into());
        (est, false)
    };
    Ok(KatokBrinReport { estimate, hits, windows, zero_hits })
}

/// The empirical measure (1/N)·Σ δ_{fᵏx} as a discrete measure on the
/// segment [0,1) × {0}; repeated orbit points merge exactly.
pub fn birkhoff_measure(f: &IntervalMap, x0: &Q, n: u64, p: u32) -> Result<DiscreteMeasure> {
    let sample = orbit(f, x0, n, p)?;
    let w = Q::new(1.into(), (n as i64).into());
    let atoms = sample
        .points
        .into_iter()
        .map(|x| Atom { x, y: Q::zero(), w: w.clone() })
        .collect();
    DiscreteMeasure::new(atoms)
}

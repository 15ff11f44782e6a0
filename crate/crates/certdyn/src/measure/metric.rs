//! The three ground metrics measures are compared under.
//!
//! Distances are generally irrational (square roots), so evaluation takes
//! a working precision and promises absolute error ≤ 2⁻ᵖ.  The exact
//! variant reports when no rounding happened at all — the circle metric
//! always, the others whenever the radicand is a perfect square — which
//! lets the transport solver keep exact costs on rational-grid instances.

use crate::error::Result;
use crate::rational::{frac, Q};
use crate::transcend::{q_sqrt_exact, sqrt_q_interval};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricChoice {
    /// Chordal metric on the Riemann sphere: 2|a−b| / √((1+|a|²)(1+|b|²)).
    Spherical,
    /// Euclidean distance in the plane.
    Planar,
    /// min(|Δ|, 1−|Δ|) on x-coordinates mod 1; the y-coordinate is
    /// ignored (interval-map measures embed as (x, 0)).
    Circle,
}

/// d(a, b) mod 1 on the circle of circumference 1.  Always exact.
pub fn circle_dist(a: &Q, b: &Q) -> Q {
    let t = frac(&(a - b));
    let u = Q::one() - &t;
    t.min(u)
}

/// The squared radicand whose root (times a rational factor) is the
/// distance: planar |a−b|²; spherical 4|a−b|²/((1+|a|²)(1+|b|²)).
fn radicand(m: MetricChoice, a: (&Q, &Q), b: (&Q, &Q)) -> Q {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    let s = &dx * &dx + &dy * &dy;
    match m {
        MetricChoice::Planar => s,
        MetricChoice::Spherical => {
            let na = Q::one() + a.0 * a.0 + a.1 * a.1;
            let nb = Q::one() + b.0 * b.0 + b.1 * b.1;
            Q::from_integer(4.into()) * s / (na * nb)
        }
        MetricChoice::Circle => unreachable!("circle distance is rational"),
    }
}

/// Exact distance when one exists: circle always, planar and spherical
/// exactly when the radicand is a perfect square.
pub fn metric_eval_exact(m: MetricChoice, a: (&Q, &Q), b: (&Q, &Q)) -> Option<Q> {
    match m {
        MetricChoice::Circle => Some(circle_dist(a.0, b.0)),
        _ => q_sqrt_exact(&radicand(m, a, b)),
    }
}

/// Distance with absolute error ≤ 2⁻ᵖ; exact whenever possible.
pub fn metric_eval(m: MetricChoice, a: (&Q, &Q), b: (&Q, &Q), p: u32) -> Result<Q> {
    if let Some(d) = metric_eval_exact(m, a, b) {
        return Ok(d);
    }
    let iv = sqrt_q_interval(&radicand(m, a, b), p + 1)?;
    Ok(iv.midpoint())
}

/// Point on the sphere, allowing the pole the plane misses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpherePoint {
    Finite(Q, Q),
    Infinity,
}

/// Chordal distance extended to ∞: d(a, ∞) = 2/√(1+|a|²), d(∞, ∞) = 0.
pub fn spherical_dist(a: &SpherePoint, b: &SpherePoint, p: u32) -> Result<Q> {
    use SpherePoint::*;
    let rad = match (a, b) {
        (Infinity, Infinity) => return Ok(Q::zero()),
        (Finite(x, y), Infinity) | (Infinity, Finite(x, y)) => {
            Q::from_integer(4.into()) / (Q::one() + x * x + y * y)
        }
        (Finite(ax, ay), Finite(bx, by)) => {
            radicand(MetricChoice::Spherical, (ax, ay), (bx, by))
        }
    };
    if let Some(d) = q_sqrt_exact(&rad) {
        return Ok(d);
    }
    Ok(sqrt_q_interval(&rad, p + 1)?.midpoint())
}

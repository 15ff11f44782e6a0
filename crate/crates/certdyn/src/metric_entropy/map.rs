//! Self-maps of the circle [0,1) with exact or oracle-precision
//! evaluation.

use crate::error::{Error, Result};
use crate::oracle::RealOracle;
use crate::rational::{frac, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub enum IntervalMap {
    /// x ↦ 2x mod 1.
    Doubling,
    /// x ↦ x + α mod 1; only the fractional part of α matters.
    Rotation(RealOracle),
    /// Piecewise-linear interpolation through `nodes`, taken mod 1.
    /// Node x-coordinates must be strictly increasing from 0 to 1.
    PiecewiseLinear { nodes: Vec<(Q, Q)> },
}

impl IntervalMap {
    pub fn piecewise_linear(nodes: Vec<(Q, Q)>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput("piecewise-linear map needs at least 2 nodes".into()));
        }
        if !nodes[0].0.is_zero() || nodes[nodes.len() - 1].0 != Q::one() {
            return Err(Error::InvalidInput(
                "piecewise-linear nodes must start at x=0 and end at x=1".into(),
            ));
        }
        if nodes.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidInput(
                "piecewise-linear node x-coordinates must be strictly increasing".into(),
            ));
        }
        Ok(IntervalMap::PiecewiseLinear { nodes })
    }

    /// The tent map 1 − |1 − 2x|.
    pub fn tent() -> Self {
        use crate::rational::{q, q_int};
        IntervalMap::PiecewiseLinear {
            nodes: vec![(q_int(0), q_int(0)), (q(1, 2), q_int(1)), (q_int(1), q_int(0))],
        }
    }

    /// Exact image of a point, when the map allows it (doubling and
    /// piecewise-linear); `None` for oracle rotations.
    pub fn eval_exact(&self, x: &Q) -> Option<Q> {
        match self {
            IntervalMap::Doubling => Some(frac(&(x + x))),
            IntervalMap::Rotation(o) => o.exact_value().map(|a| frac(&(x + a))),
            IntervalMap::PiecewiseLinear { nodes } => {
                // Last segment whose left node is ≤ x.
                let i = nodes.partition_point(|(nx, _)| nx <= x).max(1) - 1;
                let (x0, y0) = &nodes[i];
                let (x1, y1) = &nodes[i + 1];
                let t = (x - x0) / (x1 - x0);
                Some(frac(&(y0 + t * (y1 - y0))))
            }
        }
    }

    /// Whether orbits of rational points stay exactly rational.
    pub fn is_exact(&self) -> bool {
        !matches!(self, IntervalMap::Rotation(o) if o.exact_value().is_none())
    }
}

/// A finite orbit segment x, f(x), …, f^{N−1}(x).
#[derive(Debug, Clone)]
pub struct OrbitSample {
    pub start: Q,
    pub points: Vec<Q>,
    /// `None` when the points are exact; `Some(p)` when each point is
    /// within 2⁻ᵖ of the true orbit in the circle metric.
    pub precision: Option<u32>,
}

impl OrbitSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Iterate `f` from `x0` for `n` steps.  Doubling and piecewise-linear
/// maps iterate exactly; a rotation queries its angle oracle *once* at
/// precision p + ⌈log₂ n⌉ + 2, so accumulated drift stays below 2⁻ᵖ.
pub fn orbit(f: &IntervalMap, x0: &Q, n: u64, p: u32) -> Result<OrbitSample> {
    if x0.is_negative() || *x0 >= Q::one() {
        return Err(Error::InvalidInput(format!("orbit start {x0} outside [0,1)")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("orbit length must be at least 1".into()));
    }
    match f {
        IntervalMap::Rotation(o) if o.exact_value().is_none() => {
            let guard = 64 - (n - 1).leading_zeros() + 2; // ⌈log₂ n⌉ + 2
            let alpha = frac(&o.query(p + guard));
            let mut points = Vec::with_capacity(n as usize);
            let mut x = x0.clone();
            for _ in 0..n {
                points.push(x.clone());
                x = frac(&(x + &alpha));
            }
            Ok(OrbitSample { start: x0.clone(), points, precision: Some(p) })
        }
        _ => {
            let mut points = Vec::with_capacity(n as usize);
            let mut x = x0.clone();
            for _ in 0..n {
                points.push(x.clone());
                x = f.eval_exact(&x).expect("exact map");
            }
            Ok(OrbitSample { start: x0.clone(), points, precision: None })
        }
    }
}

/// Deterministic non-dyadic starting point: an odd-numerator rational
/// with denominator 3¹³.  Under doubling, such points have period
/// 2·3¹² = 1 062 882 (the order of 2 mod 3¹³), so orbit segments up to
/// 10⁶ never cycle — dyadic starts, by contrast, collapse to 0.
pub fn pseudo_random_start(seed: u64) -> Q {
    const DEN: u64 = 1_594_323; // 3^13
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = rng.gen_range(1..DEN);
    while a % 3 == 0 {
        a = rng.gen_range(1..DEN);
    }
    Q::new(BigInt::from(a), BigInt::from(DEN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_int};

    #[test]
    fn doubling_orbit_is_exact() {
        let s = orbit(&IntervalMap::Doubling, &q(1, 3), 6, 20).unwrap();
        assert!(s.precision.is_none());
        assert_eq!(s.points, vec![q(1, 3), q(2, 3), q(1, 3), q(2, 3), q(1, 3), q(2, 3)]);
    }

    #[test]
    fn tent_map_folds() {
        let f = IntervalMap::tent();
        assert_eq!(f.eval_exact(&q(1, 4)).unwrap(), q(1, 2));
        assert_eq!(f.eval_exact(&q(3, 4)).unwrap(), q(1, 2));
        // Peak value 1 wraps to 0 on the circle.
        assert_eq!(f.eval_exact(&q(1, 2)).unwrap(), q_int(0));
        assert_eq!(f.eval_exact(&q_int(0)).unwrap(), q_int(0));
    }

    #[test]
    fn piecewise_validation() {
        assert!(IntervalMap::piecewise_linear(vec![(q_int(0), q_int(0))]).is_err());
        assert!(IntervalMap::piecewise_linear(vec![
            (q(1, 4), q_int(0)),
            (q_int(1), q_int(0))
        ])
        .is_err());
        assert!(IntervalMap::piecewise_linear(vec![
            (q_int(0), q_int(0)),
            (q(1, 2), q_int(0)),
            (q(1, 2), q_int(1)),
            (q_int(1), q_int(0)),
        ])
        .is_err());
    }

    #[test]
    fn rotation_orbit_tracks_angle() {
        // Exact rational rotation: orbit is exact.
        let f = IntervalMap::Rotation(RealOracle::constant(q(2, 5)));
        let s = orbit(&f, &q_int(0), 5, 20).unwrap();
        assert!(s.precision.is_none());
        assert_eq!(s.points, vec![q_int(0), q(2, 5), q(4, 5), q(1, 5), q(3, 5)]);

        // Oracle rotation: single query, bounded drift.
        let f = IntervalMap::Rotation(RealOracle::golden());
        let s = orbit(&f, &q_int(0), 100, 30).unwrap();
        assert_eq!(s.precision, Some(30));
        let a = (5f64.sqrt() - 1.0) / 2.0;
        for (k, x) in s.points.iter().enumerate() {
            let want = (k as f64 * a).fract();
            let got = crate::rational::q_to_f64(x);
            let d = (got - want).abs();
            assert!(d.min(1.0 - d) < 1e-8, "k={k}");
        }
    }

    #[test]
    fn orbit_rejects_bad_starts() {
        assert!(orbit(&IntervalMap::Doubling, &q_int(1), 3, 10).is_err());
        assert!(orbit(&IntervalMap::Doubling, &q(-1, 2), 3, 10).is_err());
        assert!(orbit(&IntervalMap::Doubling, &q(1, 2), 0, 10).is_err());
    }

    #[test]
    fn pseudo_random_starts_are_non_dyadic_and_stable() {
        let a = pseudo_random_start(0);
        let b = pseudo_random_start(0);
        assert_eq!(a, b);
        assert_ne!(a, pseudo_random_start(1));
        assert_eq!(*a.denom(), BigInt::from(1_594_323u64)); // 3^13, reduced
        // Doubling orbit of length 10^4 from such a start never repeats.
        let s = orbit(&IntervalMap::Doubling, &a, 10_000, 20).unwrap();
        let mut seen = std::collections::HashSet::new();
        assert!(s.points.iter().all(|x| seen.insert(x.clone())));
    }
}

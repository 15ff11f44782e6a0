//! Discretized reference measures used as comparison targets: uniform
//! mass on the unit circle (the balanced measure of z ↦ z²) and Lebesgue
//! measure on [0, 1).

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::rational::{q_int, Q};
use crate::transcend::sin_cos_tau;
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMeasure {
    /// k equally spaced atoms on the unit circle, starting at 1.
    UniformCircle { atoms: u64 },
    /// k atoms at the midpoints (2j+1)/2k of an equal partition of [0, 1).
    LebesgueInterval { atoms: u64 },
}

/// Atom positions are rational approximations within 2⁻ᵖ per coordinate
/// (exact at the four cardinal angles and always for the interval case);
/// weights are exactly 1/k.
pub fn discretize_reference(r: ReferenceMeasure, p: u32) -> Result<DiscreteMeasure> {
    match r {
        ReferenceMeasure::UniformCircle { atoms: k } => {
            if k == 0 {
                return Err(Error::InvalidInput("need at least one atom".into()));
            }
            let mut pts = Vec::with_capacity(k as usize);
            for j in 0..k {
                let f = Q::new(BigInt::from(j), BigInt::from(k));
                let (sin, cos) = sin_cos_tau(&f, p + 1);
                pts.push((cos.midpoint(), sin.midpoint()));
            }
            DiscreteMeasure::uniform_on(pts)
        }
        ReferenceMeasure::LebesgueInterval { atoms: k } => {
            if k == 0 {
                return Err(Error::InvalidInput("need at least one atom".into()));
            }
            let pts = (0..k)
                .map(|j| {
                    (Q::new(BigInt::from(2 * j + 1), BigInt::from(2 * k)), q_int(0))
                })
                .collect();
            DiscreteMeasure::uniform_on(pts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_to_f64};
    use num_traits::One;

    #[test]
    fn cardinal_circle_atoms_are_exact() {
        let m = discretize_reference(ReferenceMeasure::UniformCircle { atoms: 4 }, 30).unwrap();
        let mut pts: Vec<(Q, Q)> =
            m.atoms().iter().map(|a| (a.x.clone(), a.y.clone())).collect();
        pts.sort();
        assert_eq!(
            pts,
            vec![
                (q_int(-1), q_int(0)),
                (q_int(0), q_int(-1)),
                (q_int(0), q_int(1)),
                (q_int(1), q_int(0)),
            ]
        );
        assert!(m.atoms().iter().all(|a| a.w == q(1, 4)));
    }

    #[test]
    fn circle_atoms_lie_near_the_circle() {
        let m = discretize_reference(ReferenceMeasure::UniformCircle { atoms: 12 }, 40).unwrap();
        assert_eq!(m.len(), 12);
        assert!(m.total_mass().is_one());
        for a in m.atoms() {
            let r2 = q_to_f64(&(&a.x * &a.x + &a.y * &a.y));
            assert!((r2 - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn lebesgue_midpoints() {
        let m = discretize_reference(ReferenceMeasure::LebesgueInterval { atoms: 2 }, 10).unwrap();
        let xs: Vec<Q> = m.atoms().iter().map(|a| a.x.clone()).collect();
        assert_eq!(xs, vec![q(1, 4), q(3, 4)]);
    }
}

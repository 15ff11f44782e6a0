//! Finitely supported measures with exact rational atoms and weights.
//!
//! These are the dense countable family of the computable metric space of
//! probability measures: rational convex combinations of Dirac masses at
//! rational points.  Weights are never rounded; all approximation error
//! lives in atom *positions* (and is owned by whoever produced them).

pub mod metric;
pub mod reference;
pub mod transport;

pub use metric::{metric_eval, metric_eval_exact, MetricChoice};
pub use reference::{discretize_reference, ReferenceMeasure};
pub use transport::{wasserstein1, TransportPlan, W1Result};

use crate::error::{Error, Result};
use crate::rational::{pow2, Q};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub x: Q,
    pub y: Q,
    pub w: Q,
}

/// A probability measure Σ wᵢ·δ_{(xᵢ,yᵢ)} with positive rational weights
/// summing to exactly 1.  Atoms are kept deduplicated and sorted by
/// position, so equal measures compare equal structurally and every
/// serialization is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InfeasibleWeights("a measure needs at least one atom".into()));
        }
        for a in &atoms {
            if !a.w.is_positive() {
                return Err(Error::InfeasibleWeights(format!(
                    "weight {} at ({}, {}) is not positive",
                    a.w, a.x, a.y
                )));
            }
        }
        let total: Q = atoms.iter().map(|a| &a.w).sum();
        if !total.is_one() {
            return Err(Error::InfeasibleWeights(format!("weights sum to {total}, need exactly 1")));
        }
        Ok(DiscreteMeasure { atoms: canonicalize(atoms) })
    }

    pub fn dirac(x: Q, y: Q) -> Self {
        DiscreteMeasure { atoms: vec![Atom { x, y, w: Q::one() }] }
    }

    /// Equal weights 1/k on the given points (duplicates merge).
    pub fn uniform_on(points: Vec<(Q, Q)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InfeasibleWeights("a measure needs at least one atom".into()));
        }
        let w = Q::one() / Q::from_integer(points.len().into());
        let atoms = points.into_iter().map(|(x, y)| Atom { x, y, w: w.clone() }).collect();
        DiscreteMeasure::new(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty measures
    }

    pub fn total_mass(&self) -> Q {
        self.atoms.iter().map(|a| &a.w).sum()
    }

    /// Image measure under a pointwise map; exactly colliding images merge
    /// with summed weights.  Mass is preserved exactly.
    pub fn pushforward(&self, map: impl Fn(&Q, &Q) -> (Q, Q)) -> DiscreteMeasure {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let (x, y) = map(&a.x, &a.y);
                Atom { x, y, w: a.w.clone() }
            })
            .collect();
        DiscreteMeasure { atoms: canonicalize(atoms) }
    }

    /// Snap both coordinates to the centers of the dyadic grid of cell
    /// width 2⁻ᵇ; cell-mates merge exactly.  Moves every atom by less
    /// than 2⁻ᵇ⁻¹ per coordinate, so W1 changes by at most 2⁻ᵇ — the
    /// right way to coarsen a dense measure before transport.
    pub fn snap_to_grid(&self, bits: u32) -> DiscreteMeasure {
        let snap = |v: &Q| -> Q {
            let cell = (v * pow2(bits as i64)).floor();
            (Q::from_integer(2.into()) * cell + Q::one()) / pow2(bits as i64 + 1)
        };
        self.pushforward(|x, y| (snap(x), snap(y)))
    }

    /// Cluster atoms whose coordinates lie within `tol` of each other
    /// (chained, via a sorted sweep) into their weighted centroids.  For
    /// measures whose atoms carry numerical error — e.g. polynomial-root
    /// output — pass ~10× the producer's accuracy; exact measures should
    /// not need this at all.  Chaining collapses a dense support into one
    /// cluster: to coarsen a dense measure, snap positions to a grid with
    /// [`DiscreteMeasure::pushforward`] instead.
    pub fn merge_within(&self, tol: &Q) -> DiscreteMeasure {
        assert!(!tol.is_negative(), "merge tolerance must be nonnegative");
        let n = self.atoms.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        // Atoms are sorted by (x, y); only a bounded window can be within tol in x.
        for i in 0..n {
            for j in i + 1..n {
                let dx = &self.atoms[j].x - &self.atoms[i].x;
                if dx > *tol {
                    break;
                }
                if (&self.atoms[j].y - &self.atoms[i].y).abs() <= *tol {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut clusters: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let root = find(&mut parent, i);
            clusters.entry(root).or_default().push(i);
        }
        let atoms = clusters
            .into_values()
            .map(|members| {
                let w: Q = members.iter().map(|&i| &self.atoms[i].w).sum();
                let x: Q = members.iter().map(|&i| &self.atoms[i].x * &self.atoms[i].w).sum::<Q>() / &w;
                let y: Q = members.iter().map(|&i| &self.atoms[i].y * &self.atoms[i].w).sum::<Q>() / &w;
                Atom { x, y, w }
            })
            .collect();
        DiscreteMeasure { atoms: canonicalize(atoms) }
    }

    /// Largest coordinate distance (L∞) between corresponding atoms of two
    /// measures with identical atom counts and exactly matching weights in
    /// canonical order; None when the shapes differ.
    pub fn max_atom_residual(&self, other: &DiscreteMeasure) -> Option<Q> {
        if self.atoms.len() != other.atoms.len() {
            return None;
        }
        let mut worst = Q::zero();
        for (a, b) in self.atoms.iter().zip(&other.atoms) {
            if a.w != b.w {
                return None;
            }
            let d = (&a.x - &b.x).abs().max((&a.y - &b.y).abs());
            worst = worst.max(d);
        }
        Some(worst)
    }
}

fn canonicalize(mut atoms: Vec<Atom>) -> Vec<Atom> {
    atoms.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms {
        match out.last_mut() {
            Some(last) if last.x == a.x && last.y == a.y => last.w += a.w,
            _ => out.push(a),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_int};

    fn qp(x: i64, y: i64) -> (Q, Q) {
        (q_int(x), q_int(y))
    }

    #[test]
    fn construction_validates_and_merges() {
        let m = DiscreteMeasure::uniform_on(vec![qp(1, 0), qp(0, 0), qp(1, 0), qp(1, 0)]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.atoms()[0].w, q(1, 4)); // (0,0)
        assert_eq!(m.atoms()[1].w, q(3, 4)); // (1,0) three times
        assert!(m.total_mass().is_one());

        let bad = DiscreteMeasure::new(vec![Atom { x: q_int(0), y: q_int(0), w: q(1, 2) }]);
        assert!(matches!(bad, Err(Error::InfeasibleWeights(_))));
        let neg = DiscreteMeasure::new(vec![
            Atom { x: q_int(0), y: q_int(0), w: q(3, 2) },
            Atom { x: q_int(1), y: q_int(0), w: q(-1, 2) },
        ]);
        assert!(matches!(neg, Err(Error::InfeasibleWeights(_))));
    }

    #[test]
    fn pushforward_merges_collisions() {
        // ½δ₂ + ½δ₋₂ under z ↦ z² (on the real line) → δ₄.
        let m = DiscreteMeasure::uniform_on(vec![qp(2, 0), qp(-2, 0)]).unwrap();
        let sq = m.pushforward(|x, _| (x * x, Q::zero()));
        assert_eq!(sq, DiscreteMeasure::dirac(q_int(4), q_int(0)));

        let id = m.pushforward(|x, y| (x.clone(), y.clone()));
        assert_eq!(id, m);
    }

    #[test]
    fn merge_within_clusters_near_atoms() {
        let m = DiscreteMeasure::uniform_on(vec![
            (q(1, 1), q_int(0)),
            (q(1000001, 1000000), q_int(0)), // 1 + 1e-6
            (q_int(5), q_int(0)),
        ])
        .unwrap();
        let merged = m.merge_within(&q(1, 100));
        assert_eq!(merged.len(), 2);
        assert_eq!(merged.atoms()[0].w, q(2, 3));
        // Weighted centroid: (1 + 1.000001)/2.
        assert_eq!(merged.atoms()[0].x, q(2000001, 2000000));
        // Zero tolerance only merges exact duplicates.
        assert_eq!(m.merge_within(&Q::zero()).len(), 3);
    }

    #[test]
    fn snap_to_grid_bins_and_merges() {
        let m = DiscreteMeasure::uniform_on(vec![
            (q(1, 10), q_int(0)),  // cell [0, 1/4) → center 1/8
            (q(2, 10), q_int(0)),  // same cell
            (q(3, 10), q_int(0)),  // cell [1/4, 1/2) → center 3/8
            (q(9, 10), q_int(0)),  // cell [3/4, 1) → center 7/8
        ])
        .unwrap();
        let s = m.snap_to_grid(2);
        assert_eq!(s.len(), 3);
        assert_eq!(s.atoms()[0], Atom { x: q(1, 8), y: q(1, 8), w: q(1, 2) });
        assert_eq!(s.atoms()[1].x, q(3, 8));
        assert_eq!(s.atoms()[2].x, q(7, 8));
        assert!(s.total_mass().is_one());
    }

    #[test]
    fn residual_detects_shape_and_distance() {
        let a = DiscreteMeasure::uniform_on(vec![qp(0, 0), qp(1, 0)]).unwrap();
        let mut shifted = a.pushforward(|x, y| (x + q(1, 1000), y.clone()));
        assert_eq!(a.max_atom_residual(&shifted), Some(q(1, 1000)));
        shifted = DiscreteMeasure::dirac(q_int(0), q_int(0));
        assert_eq!(a.max_atom_residual(&shifted), None);
    }
}

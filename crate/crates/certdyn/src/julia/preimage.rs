//! Backward orbits and the balanced pullback measure.
//!
//! Pulling a point mass at z₀ back n times under f and weighting each
//! branch by its multiplicity gives the measure d^{−n} Σ_{f^n(w)=z₀} δ_w,
//! which converges weakly to the equilibrium measure of K_f for every
//! non-exceptional z₀. The only finite exceptional point a monic centered
//! polynomial can have is 0 for f(z) = z^d, and that case is rejected.
//!
//! Preimages are computed as certified root boxes and recorded by their
//! Gaussian-rational midpoints, so the returned atoms carry a small
//! position error; the tree's `residual` field bounds it a posteriori by
//! the worst |f(child) − parent| over every recorded edge, which is exact
//! rational arithmetic and independent of how the roots were found.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::{Atom, DiscreteMeasure};
use crate::poly::{qc_norm_sqr, PolySpec, QPoly, QC};
use crate::rational::Q;
use crate::roots::{all_roots, RootBox};
use crate::transcend::sqrt_q_interval;

use super::periodic::poly_for;

#[derive(Clone, Copy, Debug)]
pub enum Sampling {
    /// Enumerate all d^n branches; capped at 2^20 atoms.
    Full,
    /// Sample backward orbits: each path picks a preimage with probability
    /// proportional to its multiplicity. Deterministic per (seed, path).
    MonteCarlo { paths: usize, seed: u64 },
}

/// The recorded pullback tree. `levels[t]` holds the depth-(t+1) points;
/// the parent of `levels[0][i]` is the root, and of `levels[t][i]` is
/// `levels[t-1][parents[t][i]]`.
pub struct PreimageTree {
    pub root: QC,
    pub depth: usize,
    pub levels: Vec<Vec<QC>>,
    pub parents: Vec<Vec<usize>>,
    /// Branch multiplicity of each node (1 for simple preimages).
    pub multiplicities: Vec<Vec<usize>>,
    /// Upper bound on max |f(child) − parent| over all recorded edges.
    pub residual: Q,
}

impl PreimageTree {
    pub fn leaves(&self) -> &[QC] {
        self.levels.last().map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }
}

/// All solutions of f(w) = z as certified root boxes with multiplicity,
/// sorted by position. Multiplicities sum to deg f.
pub fn preimages(f: &PolySpec, z: &QC, tol: &Q) -> Result<Vec<RootBox>> {
    if !tol.is_positive() {
        return Err(Error::InvalidInput("preimage tolerance must be positive".into()));
    }
    let g = poly_for(f).sub(&QPoly::constant(z.clone()));
    match all_roots(&g, tol) {
        Ok(r) => Ok(r),
        // One retry much deeper: clustered preimages near critical values
        // sometimes need the extra separation.
        Err(Error::NoConvergence) => all_roots(&g, &(tol * crate::rational::pow2(-16))),
        Err(e) => Err(e),
    }
}

/// Balanced pullback of δ_{z₀} through n levels of preimages.
///
/// Returns the measure together with the tree that produced it. Atom
/// positions are Gaussian-rational midpoints of root boxes of radius
/// ≤ tol; `tree.residual` bounds the worst defect |f(child) − parent|.
pub fn bl_measure_approx(
    f: &PolySpec,
    z0: &QC,
    n: usize,
    tol: &Q,
    sampling: Sampling,
) -> Result<(DiscreteMeasure, PreimageTree)> {
    if n == 0 {
        return Err(Error::InvalidInput("pullback depth must be ≥ 1".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let d = f.degree();
    let fp = poly_for(f);
    // f⁻¹(z₀) = {z₀} happens exactly when f(z) − z₀ = (z − z₀)^d, which
    // for centered f forces z₀ = 0, f = z^d; backward orbits never leave
    // the point and the pullback cannot equidistribute.
    let shifted = fp.sub(&QPoly::constant(z0.clone()));
    if shifted == linear_power(z0, d) {
        return Err(Error::ExceptionalPoint);
    }
    match sampling {
        Sampling::Full => {
            if (d as u128).checked_pow(n as u32).is_none_or(|a| a > 1 << 20) {
                return Err(Error::InvalidInput(format!(
                    "full enumeration of {d}^{n} branches exceeds the 2^20 atom cap"
                )));
            }
            full_pullback(&fp, z0, n, tol, d)
        }
        Sampling::MonteCarlo { paths, seed } => {
            if paths == 0 {
                return Err(Error::InvalidInput("need at least one sample path".into()));
            }
            monte_carlo_pullback(&fp, z0, n, tol, d, paths, seed)
        }
    }
}

/// (z − z₀)^d.
fn linear_power(z0: &QC, d: usize) -> QPoly {
    let lin = QPoly::new(vec![-z0.clone(), QC::one()]);
    let mut acc = lin.clone();
    for _ in 1..d {
        acc = acc.mul(&lin);
    }
    acc
}

fn full_pullback(
    fp: &QPoly,
    z0: &QC,
    n: usize,
    tol: &Q,
    d: usize,
) -> Result<(DiscreteMeasure, PreimageTree)> {
    let mut levels: Vec<Vec<QC>> = Vec::with_capacity(n);
    let mut parents: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut mults: Vec<Vec<usize>> = Vec::with_capacity(n);
    // Number of branches (with multiplicity) reaching each current node.
    let mut counts: Vec<num_bigint::BigUint> = vec![num_bigint::BigUint::one()];
    let mut frontier: Vec<QC> = vec![z0.clone()];
    let mut worst_sq = Q::zero();

    for _ in 0..n {
        let pulled: Vec<Result<Vec<RootBox>>> = frontier
            .par_iter()
            .map(|w| {
                let g = fp.sub(&QPoly::constant(w.clone()));
                match all_roots(&g, tol) {
                    Err(Error::NoConvergence) => {
                        all_roots(&g, &(tol * crate::rational::pow2(-16)))
                    }
                    other => other,
                }
            })
            .collect();
        let mut level = vec![];
        let mut parent = vec![];
        let mut mult = vec![];
        let mut next_counts = vec![];
        for (pi, roots) in pulled.into_iter().enumerate() {
            for rb in roots? {
                let (re, im) = rb.point.midpoint();
                let child = QC::new(re, im);
                let def = qc_norm_sqr(&(fp.eval(&child) - &frontier[pi]));
                if def > worst_sq {
                    worst_sq = def;
                }
                level.push(child);
                parent.push(pi);
                mult.push(rb.multiplicity);
                next_counts
                    .push(&counts[pi] * num_bigint::BigUint::from(rb.multiplicity));
            }
        }
        frontier = level.clone();
        counts = next_counts;
        levels.push(level);
        parents.push(parent);
        mults.push(mult);
    }

    let total = Q::from_integer(num_bigint::BigInt::from(d).pow(n as u32));
    let atoms: Vec<Atom> = frontier
        .iter()
        .zip(&counts)
        .map(|(w, c)| Atom {
            x: w.re.clone(),
            y: w.im.clone(),
            w: Q::from_integer(c.clone().into()) / &total,
        })
        .collect();
    let measure = DiscreteMeasure::new(atoms)?;
    let residual = residual_bound(&worst_sq);
    let tree =
        PreimageTree { root: z0.clone(), depth: n, levels, parents, multiplicities: mults, residual };
    Ok((measure, tree))
}

fn monte_carlo_pullback(
    fp: &QPoly,
    z0: &QC,
    n: usize,
    tol: &Q,
    d: usize,
    paths: usize,
    seed: u64,
) -> Result<(DiscreteMeasure, PreimageTree)> {
    struct Path {
        points: Vec<QC>,
        mults: Vec<usize>,
        worst_sq: Q,
    }
    let walked: Vec<Result<Path>> = (0..paths)
        .into_par_iter()
        .map(|pi| {
            // One independent, replayable stream per path.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(pi as u64 + 1);
            let mut w = z0.clone();
            let mut points = Vec::with_capacity(n);
            let mut mults = Vec::with_capacity(n);
            let mut worst_sq = Q::zero();
            for _ in 0..n {
                let g = fp.sub(&QPoly::constant(w.clone()));
                let roots = match all_roots(&g, tol) {
                    Err(Error::NoConvergence) => {
                        all_roots(&g, &(tol * crate::rational::pow2(-16)))
                    }
                    other => other,
                }?;
                // Pick proportionally to multiplicity: a uniform branch
                // out of the d counted preimages.
                let mut pick = rng.gen_range(0..d);
                let mut chosen = roots.len() - 1;
                for (i, rb) in roots.iter().enumerate() {
                    if pick < rb.multiplicity {
                        chosen = i;
                        break;
                    }
                    pick -= rb.multiplicity;
                }
                let rb = &roots[chosen];
                let (re, im) = rb.point.midpoint();
                let child = QC::new(re, im);
                let def = qc_norm_sqr(&(fp.eval(&child) - &w));
                if def > worst_sq {
                    worst_sq = def;
                }
                points.push(child.clone());
                mults.push(rb.multiplicity);
                w = child;
            }
            Ok(Path { points, mults, worst_sq })
        })
        .collect();

    let mut levels = vec![vec![]; n];
    let mut parents = vec![vec![]; n];
    let mut mults = vec![vec![]; n];
    let mut worst_sq = Q::zero();
    let mut endpoints = Vec::with_capacity(paths);
    for (pi, p) in walked.into_iter().enumerate() {
        let p = p?;
        for t in 0..n {
            levels[t].push(p.points[t].clone());
            // Paths are independent chains: each node's parent is the same
            // path's node one level up.
            parents[t].push(pi);
            mults[t].push(p.mults[t]);
        }
        if p.worst_sq > worst_sq {
            worst_sq = p.worst_sq;
        }
        let last = p.points.last().expect("n ≥ 1").clone();
        endpoints.push((last.re, last.im));
    }
    let measure = DiscreteMeasure::uniform_on(endpoints)?;
    let residual = residual_bound(&worst_sq);
    let tree =
        PreimageTree { root: z0.clone(), depth: n, levels, parents, multiplicities: mults, residual };
    Ok((measure, tree))
}

fn residual_bound(worst_sq: &Q) -> Q {
    if worst_sq.is_zero() {
        return Q::zero();
    }
    sqrt_q_interval(worst_sq, 64).expect("residual is nonnegative").hi_q()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qc, qc_int};
    use crate::rational::{pow2, q, q_int, q_to_f64};

    fn tol() -> Q {
        pow2(-48)
    }

    #[test]
    fn square_root_preimages_with_multiplicity() {
        let f = PolySpec::quadratic(qc_int(0, 0));
        // f(w) = 4 ⇒ w = ±2, two simple preimages.
        let pre = preimages(&f, &qc_int(4, 0), &tol()).unwrap();
        assert_eq!(pre.len(), 2);
        assert!(pre.iter().all(|r| r.multiplicity == 1 && r.certified));
        // f(w) = 0 ⇒ w = 0 doubly.
        let pre = preimages(&f, &qc_int(0, 0), &tol()).unwrap();
        assert_eq!(pre.len(), 1);
        assert_eq!(pre[0].multiplicity, 2);
    }

    #[test]
    fn exceptional_origin_of_the_squaring_map_is_refused() {
        let f = PolySpec::quadratic(qc_int(0, 0));
        let err = bl_measure_approx(&f, &qc_int(0, 0), 3, &tol(), Sampling::Full);
        assert!(matches!(err, Err(Error::ExceptionalPoint)));
        // The same point is fine for z² − 1.
        let f = PolySpec::quadratic(qc_int(-1, 0));
        assert!(bl_measure_approx(&f, &qc_int(0, 0), 3, &tol(), Sampling::Full).is_ok());
    }

    #[test]
    fn full_pullback_of_the_squaring_map_lands_near_the_circle() {
        // Non-exceptional start: preimages of 1 under z² are 2^n-th roots
        // of unity, all exactly on |w| = 1.
        let f = PolySpec::quadratic(qc_int(0, 0));
        let (mu, tree) = bl_measure_approx(&f, &qc_int(1, 0), 6, &tol(), Sampling::Full).unwrap();
        assert_eq!(mu.len(), 64);
        assert_eq!(tree.leaves().len(), 64);
        assert_eq!(tree.depth, 6);
        assert!(tree.residual < pow2(-40), "residual {}", q_to_f64(&tree.residual));
        let w = q_int(1) / q_int(64);
        for a in mu.atoms() {
            assert_eq!(a.w, w);
            let r2 = &a.x * &a.x + &a.y * &a.y;
            // Atom centers sit within the certified box radius of |w| = 1.
            assert!((r2 - q_int(1)).abs() < pow2(-44));
        }
    }

    #[test]
    fn multiplicity_weighting_at_a_critical_value() {
        // z² − 1 pulled back from −1: level one is {0 (double)}, so the
        // double branch must carry all the mass at depth 1.
        let f = PolySpec::quadratic(qc_int(-1, 0));
        let (mu, tree) =
            bl_measure_approx(&f, &qc_int(-1, 0), 1, &tol(), Sampling::Full).unwrap();
        assert_eq!(mu.len(), 1);
        assert_eq!(mu.atoms()[0].w, q_int(1));
        assert_eq!(tree.multiplicities[0], vec![2]);
        // Depth 2: preimages of 0 are ±1, each inheriting 1/2.
        let (mu, _) = bl_measure_approx(&f, &qc_int(-1, 0), 2, &tol(), Sampling::Full).unwrap();
        assert_eq!(mu.len(), 2);
        assert!(mu.atoms().iter().all(|a| a.w == q(1, 2)));
    }

    #[test]
    fn tree_edges_really_map_child_to_parent() {
        let f = PolySpec::quadratic(qc(q(-3, 4), Q::zero()));
        let fp = f.exact_poly().unwrap();
        let (_, tree) =
            bl_measure_approx(&f, &qc_int(1, 0), 4, &tol(), Sampling::Full).unwrap();
        for t in 0..tree.depth {
            for (i, child) in tree.levels[t].iter().enumerate() {
                let parent = if t == 0 {
                    tree.root.clone()
                } else {
                    tree.levels[t - 1][tree.parents[t][i]].clone()
                };
                let defect = qc_norm_sqr(&(fp.eval(child) - &parent));
                assert!(defect <= &tree.residual * &tree.residual);
            }
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_distinct_across_seeds() {
        let f = PolySpec::quadratic(qc_int(-1, 0));
        let s = Sampling::MonteCarlo { paths: 32, seed: 7 };
        let (a, ta) = bl_measure_approx(&f, &qc_int(1, 0), 5, &tol(), s).unwrap();
        let (b, _) = bl_measure_approx(&f, &qc_int(1, 0), 5, &tol(), s).unwrap();
        assert_eq!(a, b);
        assert_eq!(ta.levels[0].len(), 32);
        let (c, _) = bl_measure_approx(
            &f,
            &qc_int(1, 0),
            5,
            &tol(),
            Sampling::MonteCarlo { paths: 32, seed: 8 },
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_and_full_pullbacks_agree_on_coarse_statistics() {
        // Mean |w|² of the depth-8 pullback under z² from 1 is exactly 1
        // (all atoms on the unit circle up to box error); the sampled
        // version must reproduce it to sampling accuracy.
        let f = PolySpec::quadratic(qc_int(0, 0));
        let (mu, _) = bl_measure_approx(
            &f,
            &qc_int(1, 0),
            8,
            &tol(),
            Sampling::MonteCarlo { paths: 64, seed: 3 },
        )
        .unwrap();
        let mean: Q = mu
            .atoms()
            .iter()
            .map(|a| (&a.x * &a.x + &a.y * &a.y) * &a.w)
            .sum();
        assert!((mean - q_int(1)).abs() < q(1, 1000));
    }

    #[test]
    fn guards_reject_bad_inputs() {
        let f = PolySpec::quadratic(qc_int(-1, 0));
        assert!(bl_measure_approx(&f, &qc_int(1, 0), 0, &tol(), Sampling::Full).is_err());
        assert!(bl_measure_approx(&f, &qc_int(1, 0), 3, &Q::zero(), Sampling::Full).is_err());
        assert!(bl_measure_approx(&f, &qc_int(1, 0), 21, &tol(), Sampling::Full).is_err());
        let none = Sampling::MonteCarlo { paths: 0, seed: 1 };
        assert!(bl_measure_approx(&f, &qc_int(1, 0), 3, &tol(), none).is_err());
        assert!(preimages(&f, &qc_int(1, 0), &Q::zero()).is_err());
    }
}

//! Certified Perron-root enclosures for nonnegative integer matrices.
//!
//! The spectral radius is taken per strongly connected component.  On a
//! nontrivial (cycle-carrying) component the matrix is irreducible, so
//! B = A + I is primitive and Collatz–Wielandt quotients of the power
//! iteration pinch ρ(B) = ρ(A) + 1 from both sides.  The bounds
//! min_i (Bv)_i/v_i ≤ ρ(B) ≤ max_i (Bv)_i/v_i hold for *every* positive
//! vector v, so rounding the iterate never threatens soundness — only
//! the convergence rate.

use crate::error::{Error, Result};
use crate::dyadic::Dyadic;
use crate::rational::{pow2, q_int, Q};
use num_traits::Zero;
use petgraph::graph::DiGraph;

/// Square matrix with nonnegative integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegMatrix {
    n: usize,
    a: Vec<u64>, // row-major
}

impl NonnegMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("matrix must be nonempty".into()));
        }
        let mut a = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "matrix is not square: {n} rows but a row of length {}",
                    row.len()
                )));
            }
            a.extend_from_slice(row);
        }
        Ok(NonnegMatrix { n, a })
    }

    pub fn zeros(n: usize) -> Self {
        NonnegMatrix { n, a: vec![0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] += v;
    }

    /// Restriction to the given (strictly increasing) index set.
    pub fn submatrix(&self, keep: &[usize]) -> NonnegMatrix {
        let m = keep.len();
        let mut a = Vec::with_capacity(m * m);
        for &i in keep {
            for &j in keep {
                a.push(self.entry(i, j));
            }
        }
        NonnegMatrix { n: m, a }
    }

    fn graph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::with_capacity(self.n, 0);
        let idx: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.entry(i, j) > 0 {
                    g.add_edge(idx[i], idx[j], ());
                }
            }
        }
        g
    }

    /// Strongly connected components as sorted index lists.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        petgraph::algo::tarjan_scc(&self.graph())
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|ix| ix.index()).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Vertices lying on a bi-infinite path: reachable from a cycle and
    /// reaching a cycle.
    pub fn bi_essential_mask(&self) -> Vec<bool> {
        let n = self.n;
        let mut cyclic = vec![false; n];
        for scc in self.sccs() {
            if scc.len() > 1 || self.entry(scc[0], scc[0]) > 0 {
                for v in scc {
                    cyclic[v] = true;
                }
            }
        }
        let forward = self.reach(&cyclic, false); // reached from a cycle
        let backward = self.reach(&cyclic, true); // reaches a cycle
        (0..n).map(|v| forward[v] && backward[v]).collect()
    }

    fn reach(&self, seeds: &[bool], reversed: bool) -> Vec<bool> {
        let n = self.n;
        let mut seen = seeds.to_vec();
        let mut stack: Vec<usize> = (0..n).filter(|&v| seeds[v]).collect();
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let edge = if reversed { self.entry(w, v) > 0 } else { self.entry(v, w) > 0 };
                if edge && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Trimmed copy plus the kept indices; `None` when nothing survives.
    pub fn trim(&self) -> Option<(NonnegMatrix, Vec<usize>)> {
        let mask = self.bi_essential_mask();
        let keep: Vec<usize> = (0..self.n).filter(|&v| mask[v]).collect();
        if keep.is_empty() {
            return None;
        }
        Some((self.submatrix(&keep), keep))
    }
}

/// Enclosure `[lo, hi] ∋ ρ(A)` with `hi − lo < 2^-p`.  The zero/acyclic
/// case yields `[0, 0]` exactly.
pub fn perron_root_interval(a: &NonnegMatrix, p: u32) -> (Q, Q) {
    let mut best: Option<(Q, Q)> = None;
    for scc in a.sccs() {
        let nontrivial = scc.len() > 1 || a.entry(scc[0], scc[0]) > 0;
        if !nontrivial {
            continue;
        }
        let (lo, hi) = perron_irreducible(&a.submatrix(&scc), p);
        best = Some(match best {
            None => (lo, hi),
            // max of two enclosed reals: take max of both endpoints
            Some((blo, bhi)) => (blo.max(lo), bhi.max(hi)),
        });
    }
    best.unwrap_or_else(|| (Q::zero(), Q::zero()))
}

/// ρ of an irreducible nonnegative matrix with at least one cycle.
fn perron_irreducible(a: &NonnegMatrix, p: u32) -> (Q, Q) {
    let n = a.dim();
    let target = pow2(-(p as i64) - 2);
    let mut p_work: u32 = p + 24;
    let mut v: Vec<Dyadic> = vec![Dyadic::one(); n];
    let mut best: Option<(Q, Q)> = None;
    let mut checkpoint_width: Option<Q> = None;

    for iter in 1u64.. {
        // w = (A + I)v, exactly.
        let w: Vec<Dyadic> = (0..n)
            .map(|i| {
                let mut acc = v[i].clone();
                for j in 0..n {
                    let e = a.entry(i, j);
                    if e > 0 {
                        acc = &acc + &v[j].mul_int(e as i64);
                    }
                }
                acc
            })
            .collect();

        // Collatz–Wielandt quotients bound ρ(A+I) for any positive v.
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for i in 0..n {
            let r = w[i].to_q() / v[i].to_q();
            lo = Some(match lo {
                None => r.clone(),
                Some(x) => x.min(r.clone()),
            });
            hi = Some(match hi {
                None => r,
                Some(x) => x.max(r),
            });
        }
        // ρ(A) = ρ(A+I) − 1, and an irreducible matrix with a cycle has ρ ≥ 1.
        let lo_a = (lo.unwrap() - q_int(1)).max(q_int(1));
        let hi_a = hi.unwrap() - q_int(1);
        best = Some(match best {
            None => (lo_a, hi_a),
            // Every iteration's bounds are valid; intersect for monotone progress.
            Some((blo, bhi)) => (blo.max(lo_a), bhi.min(hi_a)),
        });
        let (blo, bhi) = best.clone().unwrap();
        if &bhi - &blo < target {
            return (blo, bhi);
        }

        // Normalize by a power of two (exact) and round down to p_work
        // bits; positive entries stay positive under relative flooring.
        let mx = w.iter().cloned().reduce(Dyadic::max).unwrap();
        let shift = -(mx.exponent() + mx.precision_bits() as i64);
        v = w
            .into_iter()
            .map(|x| x.mul_pow2(shift).round_floor_bits(p_work))
            .collect();

        // Escalate precision when the width plateaus (rounding floor).
        if iter % 64 == 0 {
            let cur = &bhi - &blo;
            if let Some(prev) = checkpoint_width.take() {
                if cur > &prev * crate::rational::q(1, 2) {
                    p_work += 32;
                }
            }
            checkpoint_width = Some(cur);
        }
    }
    unreachable!("power iteration on a primitive matrix converges");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_to_f64};

    fn mat(rows: &[&[u64]]) -> NonnegMatrix {
        NonnegMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn golden_mean_root() {
        let a = mat(&[&[1, 1], &[1, 0]]);
        let (lo, hi) = perron_root_interval(&a, 30);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(q_to_f64(&lo) <= phi && phi <= q_to_f64(&hi));
        assert!(&hi - &lo < q(1, 1 << 30));
    }

    #[test]
    fn constant_row_sums_exact() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        let (lo, hi) = perron_root_interval(&a, 20);
        assert!(lo <= q_int(2) && q_int(2) <= hi);
        let a = mat(&[&[3]]);
        let (lo, hi) = perron_root_interval(&a, 20);
        assert_eq!((lo, hi), (q_int(3), q_int(3)));
    }

    #[test]
    fn nilpotent_is_zero() {
        let a = mat(&[&[0, 1], &[0, 0]]);
        assert_eq!(perron_root_interval(&a, 20), (Q::zero(), Q::zero()));
    }

    #[test]
    fn reducible_takes_max() {
        // Block diag: golden-mean block and a 3-loop vertex.
        let a = mat(&[&[1, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        let (lo, hi) = perron_root_interval(&a, 25);
        assert!(lo <= q_int(3) && q_int(3) <= hi);
        assert!(&hi - &lo < q(1, 1 << 25));
    }

    #[test]
    fn permutation_cycle() {
        // 3-cycle: ρ = 1; A+I handles the periodicity.
        let a = mat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let (lo, hi) = perron_root_interval(&a, 30);
        assert!(lo <= q_int(1) && q_int(1) <= hi);
        assert!(&hi - &lo < q(1, 1 << 30));
    }

    #[test]
    fn trim_keeps_bi_essential() {
        // 0 -> 1 -> 1 (loop), 2 isolated: only 1 survives... and 0 feeds
        // the loop but has no infinite past.
        let a = mat(&[&[0, 1, 0], &[0, 1, 0], &[0, 0, 0]]);
        let (t, keep) = a.trim().unwrap();
        assert_eq!(keep, vec![1]);
        assert_eq!(t.entry(0, 0), 1);
        let dead = mat(&[&[0, 1], &[0, 0]]);
        assert!(dead.trim().is_none());
    }

    #[test]
    fn collatz_wielandt_vs_charpoly_bisection() {
        // Random-ish binary 3x3 and 4x4 cases cross-checked against
        // sign changes of det(xI − A) computed exactly.
        let cases: Vec<NonnegMatrix> = vec![
            mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 0]]),
            mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]),
            mat(&[&[1, 1, 1, 0], &[1, 0, 0, 1], &[0, 1, 0, 1], &[1, 0, 1, 0]]),
        ];
        for a in cases {
            let (lo, hi) = perron_root_interval(&a, 26);
            assert!(&hi - &lo < q(1, 1 << 26));
            // char poly must change sign across [lo, hi] or have its root
            // bracketed: p(lo) and p(hi) straddle zero since ρ is the
            // largest real root and p(x) → +∞.
            let plo = charpoly_eval(&a, &lo);
            let phi_ = charpoly_eval(&a, &hi);
            assert!(plo <= Q::zero() || (&hi - &lo).is_zero());
            assert!(phi_ >= Q::zero());
        }
    }

    /// det(xI − A) by exact fraction-free Gaussian elimination over Q.
    fn charpoly_eval(a: &NonnegMatrix, x: &Q) -> Q {
        let n = a.dim();
        let mut m: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = Q::from_integer((a.entry(i, j) as i64).into());
                        if i == j {
                            x - e
                        } else {
                            -e
                        }
                    })
                    .collect()
            })
            .collect();
        let mut det = q_int(1);
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(piv) = piv else { return Q::zero() };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            det *= m[col][col].clone();
            let inv = m[col][col].clone();
            for r in col + 1..n {
                let f = &m[r][col] / &inv;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        det
    }
}

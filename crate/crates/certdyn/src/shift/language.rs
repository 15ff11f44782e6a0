//! Language-counting oracles and the entropy bounds they certify.
//!
//! `#𝓛(X, n)`, the number of length-n words occurring in a shift space,
//! determines entropy as lim (1/n)·ln #𝓛(X, n), and the convergence is
//! from above: every (1/n)·ln #𝓛(X, n) is an upper bound.  The oracle
//! wrapper memoizes counts and cross-checks the basic laws every genuine
//! language satisfies — without them the bounds would silently lie.

use crate::error::{Error, Result};
use crate::rational::{q_int, Q};
use crate::shift::perron::NonnegMatrix;
use crate::transcend::ln_count;
use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

#[derive(Clone)]
pub struct LanguageOracle {
    f: Arc<dyn Fn(u64) -> BigUint + Send + Sync>,
    cache: Arc<Mutex<BTreeMap<u64, BigUint>>>,
}

impl LanguageOracle {
    pub fn from_fn(f: impl Fn(u64) -> BigUint + Send + Sync + 'static) -> Self {
        LanguageOracle { f: Arc::new(f), cache: Arc::new(Mutex::new(BTreeMap::new())) }
    }

    /// Exact `#𝓛(X, n)`, n ≥ 1, with consistency checks against every
    /// previously returned count:
    /// counts are ≥ 1, nondecreasing in n (every word extends), and
    /// submultiplicative (a length-(m+n) word splits into admissible
    /// halves).  Violations surface as [`Error::InconsistentOracle`].
    pub fn count(&self, n: u64) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::InvalidInput("word length must be ≥ 1".into()));
        }
        if let Some(v) = self.cache.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let v = (self.f)(n);
        if v.is_zero() {
            return Err(Error::InconsistentOracle(format!(
                "count({n}) = 0; a nonempty shift space has words of every length"
            )));
        }
        let mut cache = self.cache.lock().unwrap();
        if let Some((m, c)) = cache.range(..n).next_back() {
            if *c > v {
                return Err(Error::InconsistentOracle(format!(
                    "count({m}) = {c} > count({n}) = {v}; counts must be nondecreasing"
                )));
            }
        }
        if let Some((m, c)) = cache.range(n + 1..).next() {
            if *c < v {
                return Err(Error::InconsistentOracle(format!(
                    "count({n}) = {v} > count({m}) = {c}; counts must be nondecreasing"
                )));
            }
        }
        // Submultiplicativity spot checks on splits we already know.
        for m in [1, n / 2, n - 1] {
            if m == 0 || m >= n {
                continue;
            }
            if let (Some(a), Some(b)) = (cache.get(&m), cache.get(&(n - m))) {
                if v > a * b {
                    return Err(Error::InconsistentOracle(format!(
                        "count({n}) = {v} > count({m})·count({}) — submultiplicativity fails",
                        n - m
                    )));
                }
            }
        }
        cache.insert(n, v.clone());
        Ok(v)
    }
}

impl std::fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cached: Vec<u64> = self.cache.lock().unwrap().keys().copied().collect();
        write!(f, "LanguageOracle {{ cached: {cached:?} }}")
    }
}

/// Memoized path-counting DP over a nonnegative matrix: counts weighted
/// paths of k edges starting from `init`.  Each step costs one exact
/// BigUint matrix–vector product; queries for increasing k reuse state.
pub(crate) struct PathCountMemo {
    matrix: NonnegMatrix,
    init: Vec<BigUint>,
    state: Mutex<(u64, Vec<BigUint>)>, // (edges consumed, init·Mᵏ)
}

impl PathCountMemo {
    pub fn new(matrix: NonnegMatrix, init: Vec<BigUint>) -> Self {
        assert_eq!(matrix.dim(), init.len());
        let state = Mutex::new((0, init.clone()));
        PathCountMemo { matrix, init, state }
    }

    /// Σ over end vertices of (#paths with exactly `edges` edges).
    pub fn count(&self, edges: u64) -> BigUint {
        let mut st = self.state.lock().unwrap();
        if edges < st.0 {
            *st = (0, self.init.clone());
        }
        while st.0 < edges {
            let (k, v) = &mut *st;
            let n = self.matrix.dim();
            let mut next = vec![BigUint::zero(); n];
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                for (j, slot) in next.iter_mut().enumerate() {
                    let e = self.matrix.entry(i, j);
                    if e > 0 {
                        *slot += vi * e;
                    }
                }
            }
            *v = next;
            *k += 1;
        }
        st.1.iter().sum()
    }
}

/// The certified upper-bound sequence h_k = min_{j ≤ k} (1/j)·ln #𝓛(j).
/// Logarithms are rounded up at p_work bits, so every h_k ≥ H_top.
pub fn entropy_upper_bounds(l: &LanguageOracle, budget: u64, p_work: u32) -> Result<Vec<Q>> {
    let mut out = Vec::with_capacity(budget as usize);
    let mut best: Option<Q> = None;
    for j in 1..=budget {
        let c = l.count(j)?;
        let u = ln_count(&c, p_work)?.hi_q() / q_int(j as i64);
        best = Some(match best {
            None => u,
            Some(b) => b.min(u),
        });
        out.push(best.clone().unwrap());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroEntropyOutcome {
    /// `|H_top − h| < eps`, reached at word length `n`.
    Value { h: Q, n: u64 },
    /// Budget exhausted; `best` is the smallest certified upper bound
    /// seen.  Guaranteed not to happen for zero-entropy shifts given
    /// enough budget.
    Inconclusive { best: Q },
}

/// Semi-algorithm: succeeds exactly when some h_n sinks below eps, which
/// happens for every zero-entropy shift and never certifies failure.
pub fn zero_entropy_semialgorithm(
    l: &LanguageOracle,
    eps: &Q,
    budget: u64,
) -> Result<ZeroEntropyOutcome> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be ≥ 1".into()));
    }
    let mut best: Option<Q> = None;
    for n in 1..=budget {
        let c = l.count(n)?;
        let u = ln_count(&c, 30)?.hi_q() / q_int(n as i64);
        let h = match best.take() {
            None => u,
            Some(b) => b.min(u),
        };
        if &h < eps {
            // 0 ≤ H_top ≤ h < eps, so h/2 is within eps of H_top.
            return Ok(ZeroEntropyOutcome::Value { h: h / q_int(2), n });
        }
        best = Some(h);
    }
    Ok(ZeroEntropyOutcome::Inconclusive { best: best.unwrap() })
}

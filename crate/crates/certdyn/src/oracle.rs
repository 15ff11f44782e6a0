//! Oracles for computable real and complex numbers.
//!
//! An oracle answers `query(n)` with a rational within 2^-n of the number
//! it represents.  Exactly-known values short-circuit; everything else is
//! a deterministic procedure.  Downstream algorithms only ever see
//! enclosures, so a buggy (inconsistent) oracle can make results wrong —
//! [`RealOracle::check_consistency`] catches the detectable cases and
//! callers surface them as [`Error::InconsistentOracle`].

use crate::error::{Error, Result};
use crate::interval::{ComplexBox, DInterval};
use crate::rational::{pow2, Q};
use crate::transcend::q_sqrt_exact;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub enum RealOracle {
    Exact(Q),
    Proc(Arc<dyn Fn(u32) -> Q + Send + Sync>),
}

impl RealOracle {
    pub fn constant(x: Q) -> Self {
        RealOracle::Exact(x)
    }

    pub fn proc(f: impl Fn(u32) -> Q + Send + Sync + 'static) -> Self {
        RealOracle::Proc(Arc::new(f))
    }

    /// Oracle for √x, x ≥ 0; collapses to `Exact` for perfect squares.
    pub fn sqrt_of(x: Q) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::InvalidInput(format!("sqrt oracle of negative {x}")));
        }
        if let Some(r) = q_sqrt_exact(&x) {
            return Ok(RealOracle::Exact(r));
        }
        Ok(RealOracle::proc(move |n| sqrt_approx(&x, n)))
    }

    /// (√5 − 1)/2 — the inverse golden ratio, whose continued fraction is
    /// [0; 1, 1, 1, …].
    pub fn golden() -> Self {
        RealOracle::proc(|n| {
            let two = Q::from_integer(BigInt::from(2));
            (sqrt_approx(&Q::from_integer(BigInt::from(5)), n + 2) - Q::one()) / two
        })
    }

    /// Rational within 2^-n of the represented number.
    pub fn query(&self, n: u32) -> Q {
        match self {
            RealOracle::Exact(x) => x.clone(),
            RealOracle::Proc(f) => f(n),
        }
    }

    /// Closed rational interval guaranteed to contain the number.
    pub fn enclosure(&self, n: u32) -> (Q, Q) {
        match self {
            RealOracle::Exact(x) => (x.clone(), x.clone()),
            RealOracle::Proc(f) => {
                let mid = f(n);
                let e = pow2(-(n as i64));
                (&mid - &e, mid + e)
            }
        }
    }

    /// Dyadic interval enclosure, outward at p bits.
    pub fn interval(&self, n: u32, p: u32) -> DInterval {
        let (lo, hi) = self.enclosure(n);
        DInterval::from_q_bounds(&lo, &hi, p)
    }

    pub fn exact_value(&self) -> Option<&Q> {
        match self {
            RealOracle::Exact(x) => Some(x),
            RealOracle::Proc(_) => None,
        }
    }

    /// Two queries must agree to within the sum of their error radii.
    pub fn check_consistency(&self, a: u32, b: u32) -> Result<()> {
        let qa = self.query(a);
        let qb = self.query(b);
        let gap = (&qa - &qb).abs();
        let allowed = pow2(-(a as i64)) + pow2(-(b as i64));
        if gap > allowed {
            return Err(Error::InconsistentOracle(format!(
                "query({a}) and query({b}) differ by {gap} > 2^-{a} + 2^-{b}"
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for RealOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealOracle::Exact(x) => write!(f, "RealOracle::Exact({x})"),
            RealOracle::Proc(_) => write!(f, "RealOracle::Proc(..)"),
        }
    }
}

/// floor-style √x approximation: |√x − result| ≤ 2^-n.
fn sqrt_approx(x: &Q, n: u32) -> Q {
    let g = n as usize + 1;
    let nd: BigUint = x.numer().magnitude() * x.denom().magnitude();
    let root = (nd << (2 * g)).sqrt();
    Q::new(
        BigInt::from(root),
        BigInt::from(x.denom().magnitude().clone()) << g,
    )
}

/// Oracle for a complex number; `query(n)` bounds *each coordinate*
/// within 2^-n.
#[derive(Clone)]
pub enum ComplexOracle {
    Exact(Q, Q),
    Proc(Arc<dyn Fn(u32) -> (Q, Q) + Send + Sync>),
}

impl ComplexOracle {
    pub fn constant(re: Q, im: Q) -> Self {
        ComplexOracle::Exact(re, im)
    }

    pub fn proc(f: impl Fn(u32) -> (Q, Q) + Send + Sync + 'static) -> Self {
        ComplexOracle::Proc(Arc::new(f))
    }

    pub fn from_real(o: &RealOracle) -> Self {
        match o {
            RealOracle::Exact(x) => ComplexOracle::Exact(x.clone(), Q::zero()),
            RealOracle::Proc(f) => {
                let f = f.clone();
                ComplexOracle::proc(move |n| (f(n), Q::zero()))
            }
        }
    }

    pub fn query(&self, n: u32) -> (Q, Q) {
        match self {
            ComplexOracle::Exact(re, im) => (re.clone(), im.clone()),
            ComplexOracle::Proc(f) => f(n),
        }
    }

    /// Box certain to contain the number, outward-rounded at p bits.
    pub fn box_at(&self, n: u32, p: u32) -> ComplexBox {
        match self {
            ComplexOracle::Exact(re, im) => ComplexBox::from_q(re, im, p),
            ComplexOracle::Proc(f) => {
                let (re, im) = f(n);
                let e = pow2(-(n as i64));
                ComplexBox::new(
                    DInterval::from_q_bounds(&(&re - &e), &(&re + &e), p),
                    DInterval::from_q_bounds(&(&im - &e), &(&im + &e), p),
                )
            }
        }
    }

    pub fn exact_value(&self) -> Option<(&Q, &Q)> {
        match self {
            ComplexOracle::Exact(re, im) => Some((re, im)),
            ComplexOracle::Proc(_) => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, ComplexOracle::Exact(re, im) if re.is_zero() && im.is_zero())
    }

    pub fn check_consistency(&self, a: u32, b: u32) -> Result<()> {
        let (ra, ia) = self.query(a);
        let (rb, ib) = self.query(b);
        let allowed = pow2(-(a as i64)) + pow2(-(b as i64));
        for (qa, qb, coord) in [(&ra, &rb, "re"), (&ia, &ib, "im")] {
            let gap = (qa - qb).abs();
            if gap > allowed {
                return Err(Error::InconsistentOracle(format!(
                    "{coord}: query({a}) and query({b}) differ by {gap}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexOracle::Exact(re, im) => write!(f, "ComplexOracle::Exact({re}, {im})"),
            ComplexOracle::Proc(_) => write!(f, "ComplexOracle::Proc(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_int, q_to_f64};

    #[test]
    fn golden_converges() {
        let o = RealOracle::golden();
        let want = (5f64.sqrt() - 1.0) / 2.0;
        for n in [5, 20, 50] {
            let approx = q_to_f64(&o.query(n));
            assert!((approx - want).abs() < 2f64.powi(-(n as i32)) + 1e-15);
        }
        o.check_consistency(10, 40).unwrap();
        o.check_consistency(40, 10).unwrap();
    }

    #[test]
    fn sqrt_oracle_exactness() {
        let o = RealOracle::sqrt_of(q(9, 4)).unwrap();
        assert_eq!(o.exact_value(), Some(&q(3, 2)));
        let o = RealOracle::sqrt_of(q_int(2)).unwrap();
        assert!(o.exact_value().is_none());
        let (lo, hi) = o.enclosure(30);
        assert!(&lo * &lo <= q_int(2) + q(1, 1 << 20));
        assert!(&hi * &hi >= q_int(2));
        assert!(RealOracle::sqrt_of(q_int(-1)).is_err());
    }

    #[test]
    fn inconsistent_oracle_detected() {
        // An "oracle" that ignores n entirely beyond flipping values.
        let bad = RealOracle::proc(|n| if n < 10 { q_int(0) } else { q_int(1) });
        assert!(bad.check_consistency(5, 20).is_err());
    }

    #[test]
    fn complex_box_encloses() {
        let o = ComplexOracle::proc(|n| {
            // converges to (1/3, -2/7)
            let e = q(1, 1i64 << (n + 1).min(62));
            (q(1, 3) + &e, q(-2, 7) - &e)
        });
        let b = o.box_at(8, 53);
        assert!(b.contains_point(&q(1, 3), &q(-2, 7)));
        o.check_consistency(4, 12).unwrap();
        assert!(!o.is_exact_zero());
        assert!(ComplexOracle::constant(Q::zero(), Q::zero()).is_exact_zero());
    }
}

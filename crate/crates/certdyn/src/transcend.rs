//! Certified enclosures for ln, π, sin/cos, and square roots.
//!
//! Everything here follows the same pattern: evaluate a truncated series
//! in exact rational arithmetic, bound the truncation error by hand, and
//! only then round outward onto a dyadic grid.  All precision parameters
//! are *absolute*: `p` means the returned interval has width < 2^-p and
//! provably contains the true value.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::DInterval;
use crate::rational::{frac, pow2, q_int, Q};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// atanh(t) = Σ t^{2j+1}/(2j+1) for 0 ≤ t < 1.  Returns the partial sum
/// and a rigorous bound on the omitted tail (all terms positive, so
/// `sum ≤ atanh t ≤ sum + tail`).  Requires t ≤ 1/2 for fast convergence.
fn atanh_series(t: &Q, budget: u32) -> (Q, Q) {
    debug_assert!(!t.is_negative() && *t < crate::rational::q(1, 2));
    let eps = pow2(-(budget as i64));
    let t2 = t * t;
    let geom = q_int(1) - &t2; // 1 - t², for the geometric tail bound
    let mut tp = t.clone(); // t^{2j+1}
    let mut sum = Q::zero();
    let mut j: i64 = 0;
    loop {
        sum += &tp / q_int(2 * j + 1);
        tp *= &t2;
        // Σ_{i>j} t^{2i+1}/(2i+1) ≤ t^{2j+3}/((2j+3)(1-t²))
        let tail = &tp / (q_int(2 * j + 3) * &geom);
        if tail < eps {
            return (sum, tail);
        }
        j += 1;
    }
}

/// atan(1/n) via the alternating Leibniz series; returns (partial, bound)
/// with |atan(1/n) − partial| ≤ bound.
fn atan_recip_series(n: u64, budget: u32) -> (Q, Q) {
    assert!(n >= 2);
    let eps = pow2(-(budget as i64));
    let x = Q::new(BigInt::one(), BigInt::from(n));
    let x2 = &x * &x;
    let mut xp = x.clone();
    let mut sum = Q::zero();
    let mut j: i64 = 0;
    loop {
        let term = &xp / q_int(2 * j + 1);
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        xp *= &x2;
        // Alternating with decreasing terms: error ≤ first omitted term.
        let bound = &xp / q_int(2 * j + 3);
        if bound < eps {
            return (sum, bound);
        }
        j += 1;
    }
}

/// ln 2 = 2·atanh(1/3), enclosed with absolute error < 2^-p.
pub fn ln2_interval(p: u32) -> DInterval {
    let (s, tail) = atanh_series(&Q::new(BigInt::one(), BigInt::from(3)), p + 4);
    let lo = &s + &s;
    let hi = &lo + q_int(2) * tail;
    DInterval::from_q_bounds_abs(&lo, &hi, p + 2)
}

/// π = 16·atan(1/5) − 4·atan(1/239) (Machin), absolute error < 2^-p.
pub fn pi_interval(p: u32) -> DInterval {
    let (a5, b5) = atan_recip_series(5, p + 8);
    let (a239, b239) = atan_recip_series(239, p + 8);
    let lo = q_int(16) * (&a5 - &b5) - q_int(4) * (&a239 + &b239);
    let hi = q_int(16) * (&a5 + &b5) - q_int(4) * (&a239 - &b239);
    DInterval::from_q_bounds_abs(&lo, &hi, p + 2)
}

/// ln x for rational x > 0, absolute error < 2^-p.
pub fn ln_interval(x: &Q, p: u32) -> Result<DInterval> {
    if !x.is_positive() {
        return Err(Error::InvalidInput(format!("ln of non-positive value {x}")));
    }
    // x = m · 2^k with m ∈ [1, 2).
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut m = x * pow2(-k);
    while m < q_int(1) {
        m *= q_int(2);
        k -= 1;
    }
    while m >= q_int(2) {
        m /= q_int(2);
        k += 1;
    }
    // Inner budget: leave room for the k·ln2 magnification.
    let kbits = (64 - k.unsigned_abs().leading_zeros()) as u32;
    let g = p + 14 + kbits;

    // Pre-round m down to g fractional bits so series arithmetic stays
    // small even when x has a huge numerator (word counts, matrix powers).
    let mt = crate::rational::round_down_abs(&m, g);
    // ln m ∈ [ln m̃, ln m̃ + 2^-g]  (since m̃ ≤ m < m̃ + 2^-g and m̃ ≥ 1).
    let delta = pow2(-(g as i64));

    // ln m̃ = 2·atanh((m̃−1)/(m̃+1)); t ∈ [0, 1/3).
    let t = (&mt - q_int(1)) / (&mt + q_int(1));
    let (s, tail) = atanh_series(&t, g);
    let ln_m_lo = &s + &s;
    let ln_m_hi = &ln_m_lo + q_int(2) * tail + delta;

    let l2 = ln2_interval(g);
    let (k_lo, k_hi) = if k >= 0 {
        (l2.lo_q() * q_int(k), l2.hi_q() * q_int(k))
    } else {
        (l2.hi_q() * q_int(k), l2.lo_q() * q_int(k))
    };
    Ok(DInterval::from_q_bounds_abs(&(ln_m_lo + k_lo), &(ln_m_hi + k_hi), p + 2))
}

/// Outer enclosure of {ln y : y ∈ [lo, hi]} for 0 < lo ≤ hi.
pub fn ln_interval_outer(lo: &Q, hi: &Q, p: u32) -> Result<DInterval> {
    let a = ln_interval(lo, p + 1)?;
    let b = ln_interval(hi, p + 1)?;
    Ok(DInterval::new(a.lo().clone(), b.hi().clone()))
}

/// ln n for a positive integer count.
pub fn ln_count(n: &BigUint, p: u32) -> Result<DInterval> {
    ln_interval(&Q::from_integer(BigInt::from(n.clone())), p)
}

/// Shared Taylor evaluation of sin and cos at rational x, |x| ≤ 2.
/// Returns (sin approx, cos approx, remainder bound valid for both).
fn sin_cos_taylor(x: &Q, budget: u32) -> (Q, Q, Q) {
    debug_assert!(x.abs() <= q_int(2));
    let eps = pow2(-(budget as i64));
    let x2 = x * x;
    let xa = x.abs();
    let mut sin = Q::zero();
    let mut cos = Q::zero();
    let mut pw = Q::one(); // x^{2j} (signed power reused for both series)
    let mut fact = BigInt::one(); // (2j)!
    let mut j: u64 = 0;
    loop {
        let c_term = &pw / Q::from_integer(fact.clone());
        let s_term = &c_term * x / q_int(2 * j as i64 + 1);
        if j % 2 == 0 {
            cos += &c_term;
            sin += &s_term;
        } else {
            cos -= &c_term;
            sin -= &s_term;
        }
        // Lagrange remainder with |f^{(m)}| ≤ 1: after including powers
        // up to 2j+1, the error is at most |x|^{2j+2}/(2j+2)! for either
        // series.
        pw *= &x2;
        fact *= BigInt::from(2 * j + 1);
        fact *= BigInt::from(2 * j + 2);
        let rem = xa.pow(2 * (j as i32) + 2) / Q::from_integer(fact.clone());
        if rem < eps {
            return (sin, cos, rem);
        }
        j += 1;
    }
}

/// (sin 2πf, cos 2πf) for rational f, each with absolute error < 2^-p.
pub fn sin_cos_tau(f: &Q, p: u32) -> (DInterval, DInterval) {
    let f = frac(f); // reduce mod 1 into [0, 1)
    let k = (&f * q_int(4)).floor().to_integer().to_u8().unwrap_or(0) % 4;
    let r = &f - Q::new(BigInt::from(k), BigInt::from(4)); // [0, 1/4)

    let pp = p + 10;
    let pi = pi_interval(pp + 3);
    let two_r = q_int(2) * &r;
    let a_lo = pi.lo_q() * &two_r;
    let a_hi = pi.hi_q() * &two_r;
    let am = (&a_lo + &a_hi) / q_int(2);
    let hw = (&a_hi - &a_lo) / q_int(2);

    let (s, c, rem) = sin_cos_taylor(&am, pp);
    // |sin α − sin am| ≤ |α − am| ≤ hw (Lipschitz), plus Taylor remainder.
    let slack = &hw + &rem;
    let sin_a = (&s - &slack, &s + &slack);
    let cos_a = (&c - &slack, &c + &slack);

    let neg = |iv: &(Q, Q)| (-&iv.1, -&iv.0);
    let (sin_f, cos_f) = match k {
        0 => (sin_a, cos_a),
        1 => (cos_a.clone(), neg(&sin_a)),
        2 => (neg(&sin_a), neg(&cos_a)),
        _ => (neg(&cos_a), sin_a.clone()),
    };

    let clamp = |iv: (Q, Q)| {
        let lo = iv.0.max(q_int(-1));
        let hi = iv.1.min(q_int(1));
        DInterval::from_q_bounds_abs(&lo, &hi, p + 2)
    };
    (clamp(sin_f), clamp(cos_f))
}

/// Exact rational square root, if one exists.
pub fn q_sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Q::zero());
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d)
        .then(|| Q::new(BigInt::from(rn), BigInt::from(rd)))
}

/// √x for rational x ≥ 0, absolute error < 2^-p; exact when x is a
/// perfect square of a dyadic.
pub fn sqrt_q_interval(x: &Q, p: u32) -> Result<DInterval> {
    if x.is_negative() {
        return Err(Error::InvalidInput(format!("sqrt of negative value {x}")));
    }
    if let Some(r) = q_sqrt_exact(x) {
        if let Some(d) = Dyadic::from_q_exact(&r) {
            return Ok(DInterval::point(d));
        }
    }
    // √(n/d) = √(n·d)/d; bracket √(n·d) with isqrt at a fine grid.
    let g = p + 4;
    let nd = x.numer().magnitude() * x.denom().magnitude();
    let scaled = nd << (2 * g as usize);
    let root = scaled.sqrt();
    let den = BigInt::from(x.denom().magnitude().clone()) << g as usize;
    let lo = Q::new(BigInt::from(root.clone()), den.clone());
    let hi = Q::new(BigInt::from(root + BigUint::one()), den);
    Ok(DInterval::from_q_bounds_abs(&lo, &hi, p + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_to_f64};
    use proptest::prelude::*;

    fn width_f(iv: &DInterval) -> f64 {
        iv.width().to_f64()
    }

    fn contains_f(iv: &DInterval, x: f64) -> bool {
        iv.lo().to_f64() <= x && x <= iv.hi().to_f64()
    }

    #[test]
    fn ln2_pinned() {
        for p in [10, 30, 40] {
            let iv = ln2_interval(p);
            assert!(contains_f(&iv, std::f64::consts::LN_2), "p={p}");
            assert!(width_f(&iv) < (-(p as f64)).exp2());
        }
        // At p=53 the f64 constant may fall outside the true enclosure;
        // check width only.
        assert!(width_f(&ln2_interval(53)) < 2f64.powi(-53));
    }

    #[test]
    fn pi_pinned() {
        let iv = pi_interval(40);
        assert!(contains_f(&iv, std::f64::consts::PI));
        assert!(width_f(&iv) < 2f64.powi(-40));
        // Certified digits: 3.14159265358979 < π < 3.14159265358980
        let iv = pi_interval(53);
        assert!(width_f(&iv) < 2f64.powi(-53));
        assert!(iv.lo_q() > q(314159265358979i64, 100000000000000i64));
        assert!(iv.hi_q() < q(314159265358980i64, 100000000000000i64));
    }

    #[test]
    fn ln_values() {
        let cases = [
            (q_int(1), 0.0),
            (q_int(2), std::f64::consts::LN_2),
            (q_int(8), 3.0 * std::f64::consts::LN_2),
            (q(1, 2), -std::f64::consts::LN_2),
            (q_int(10), std::f64::consts::LN_10),
            (q(3, 7), (3f64 / 7.0).ln()),
        ];
        for (x, want) in cases {
            let iv = ln_interval(&x, 48).unwrap();
            assert!(contains_f(&iv, want), "ln {x}");
            assert!(width_f(&iv) < 2f64.powi(-48), "ln {x} width");
        }
        assert!(ln_interval(&q_int(0), 10).is_err());
        assert!(ln_interval(&q_int(-3), 10).is_err());
    }

    #[test]
    fn ln_of_huge_count_stays_cheap() {
        // 2^4096 · 3: ln = 4096·ln2 + ln3, magnitude ~2839.
        let n = BigUint::from(3u32) << 4096;
        let iv = ln_count(&n, 40).unwrap();
        let want = 4096.0 * std::f64::consts::LN_2 + 3f64.ln();
        assert!((q_to_f64(&iv.midpoint()) - want).abs() < 1e-9);
        assert!(width_f(&iv) < 2f64.powi(-40));
    }

    #[test]
    fn sin_cos_special_angles() {
        let s3h = 3f64.sqrt() / 2.0;
        let s2h = 2f64.sqrt() / 2.0;
        let cases: [(Q, f64, f64); 7] = [
            (q_int(0), 0.0, 1.0),
            (q(1, 4), 1.0, 0.0),
            (q(1, 2), 0.0, -1.0),
            (q(3, 4), -1.0, 0.0),
            (q(1, 8), s2h, s2h),
            (q(1, 6), s3h, 0.5),
            (q(1, 3), s3h, -0.5),
        ];
        for (f, ws, wc) in cases {
            let (s, c) = sin_cos_tau(&f, 46);
            assert!(contains_f(&s, ws), "sin 2π·{f}");
            assert!(contains_f(&c, wc), "cos 2π·{f}");
            assert!(width_f(&s) < 2f64.powi(-46));
            assert!(width_f(&c) < 2f64.powi(-46));
        }
    }

    #[test]
    fn sqrt_cases() {
        let iv = sqrt_q_interval(&q(9, 4), 30).unwrap();
        assert!(iv.is_point());
        assert_eq!(iv.lo_q(), q(3, 2));
        let iv = sqrt_q_interval(&q_int(2), 50).unwrap();
        assert!(contains_f(&iv, std::f64::consts::SQRT_2));
        assert!(width_f(&iv) < 2f64.powi(-50));
        // Exact but non-dyadic root still gets a valid tight bracket.
        let iv = sqrt_q_interval(&q(1, 9), 40).unwrap();
        assert!(iv.contains_q(&q(1, 3)));
        assert_eq!(q_sqrt_exact(&q(25, 16)), Some(q(5, 4)));
        assert_eq!(q_sqrt_exact(&q_int(2)), None);
        assert_eq!(q_sqrt_exact(&q_int(0)), Some(q_int(0)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // ln(x·y) and ln x + ln y enclose the same real, so the intervals
        // must overlap.
        #[test]
        fn ln_is_additive(a in 1i64..5000, b in 1i64..5000, c in 1i64..50, d in 1i64..50) {
            let x = q(a, c);
            let y = q(b, d);
            let lx = ln_interval(&x, 40).unwrap();
            let ly = ln_interval(&y, 40).unwrap();
            let lxy = ln_interval(&(&x * &y), 40).unwrap();
            let sum_lo = lx.lo_q() + ly.lo_q();
            let sum_hi = lx.hi_q() + ly.hi_q();
            prop_assert!(lxy.hi_q() >= sum_lo && sum_hi >= lxy.lo_q());
        }

        #[test]
        fn sin_sq_plus_cos_sq(a in 0i64..1000, b in 1i64..1000) {
            let f = q(a.min(b - 1).max(0), b);
            let (s, c) = sin_cos_tau(&f, 40);
            let ssq = s.sqr(60);
            let csq = c.sqr(60);
            let lo = ssq.lo_q() + csq.lo_q();
            let hi = ssq.hi_q() + csq.hi_q();
            prop_assert!(lo <= q_int(1) && q_int(1) <= hi);
        }

        #[test]
        fn sqrt_squares_back(n in 0i64..100_000, d in 1i64..1000) {
            let x = q(n, d);
            let iv = sqrt_q_interval(&x, 45).unwrap();
            prop_assert!(iv.lo_q() * iv.lo_q() <= x);
            prop_assert!(iv.hi_q() * iv.hi_q() >= x);
        }
    }
}

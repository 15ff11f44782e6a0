//! Shared rational-number helpers.
//!
//! `Q` is the exact scalar used throughout the crate.  Floating-point
//! conversions here are one-way (display / seeding only) and never feed
//! back into certified bounds.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// 2^e as an exact rational for any sign of `e`.
pub fn pow2(e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(BigInt::one() << e as usize)
    } else {
        Q::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < Q::one());
    f
}

/// floor(x · 2^bits) / 2^bits — round toward −∞ at absolute precision 2^-bits.
pub fn round_down_abs(x: &Q, bits: u32) -> Q {
    let scaled = x * pow2(bits as i64);
    Q::new(scaled.floor().to_integer(), BigInt::one() << bits as usize)
}

pub fn round_up_abs(x: &Q, bits: u32) -> Q {
    let scaled = x * pow2(bits as i64);
    Q::new(scaled.ceil().to_integer(), BigInt::one() << bits as usize)
}

/// Exact conversion: every finite `f64` is a dyadic rational.
pub fn q_from_f64(x: f64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Q::zero());
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp_raw = ((bits >> 52) & 0x7ff) as i64;
    let frac_raw = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exp_raw == 0 {
        (frac_raw, -1074i64) // subnormal
    } else {
        (frac_raw | (1u64 << 52), exp_raw - 1075)
    };
    let m = BigInt::from(sign) * BigInt::from(mantissa);
    Some(if exp >= 0 {
        Q::from_integer(m << exp as usize)
    } else {
        Q::new(m, BigInt::one() << (-exp) as usize)
    })
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parse "p/q", an integer, or a plain decimal such as "-0.125" (exact).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.len();
        let joined = format!("{int_part}{frac_part}");
        let n: BigInt = joined
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad decimal: {s:?}")))?;
        let mut d = BigInt::one();
        for _ in 0..digits {
            d *= 10;
        }
        return Ok(Q::new(n, d));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad number: {s:?}")))?;
    Ok(Q::from_integer(n))
}

/// Render as "p/q" (or "p" for integers); inverse of [`parse_q`].
pub fn q_string(x: &Q) -> String {
    x.to_string()
}

/// Floor of √n for nonnegative integers.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// lcm of denominators, used to clear rationals to integers.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Q>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l
}

pub fn big_to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

/// The rational with the smallest denominator in [lo, hi] (Stern–Brocot
/// descent). Recovers an exact value from an interval enclosure: if the
/// enclosed quantity is rational and the interval tight enough, this finds
/// it, and a verification step can then confirm it exactly.
pub fn simplest_in_interval(lo: &Q, hi: &Q) -> Q {
    assert!(lo <= hi, "empty interval");
    if *lo <= Q::zero() && Q::zero() <= *hi {
        return Q::zero();
    }
    if *hi < Q::zero() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo ≤ hi: peel integer parts like a continued fraction.
    let a = lo.floor();
    if &a == lo {
        return lo.clone();
    }
    if a < hi.floor() {
        return a + Q::one();
    }
    // Same integer part and lo is not an integer: recurse on reciprocals.
    let inner = simplest_in_interval(
        &(Q::one() / (hi - &a)),
        &(Q::one() / (lo - &a)),
    );
    a + Q::one() / inner
}

pub fn sign_i64(x: &BigInt) -> i64 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

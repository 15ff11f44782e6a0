//! Exact dyadic arithmetic.
//!
//! A [`Dyadic`] is `mantissa · 2^exponent` with an arbitrary-precision
//! mantissa kept in canonical form: the mantissa is odd or zero, so every
//! value has exactly one representation and equality is structural.
//! Addition, subtraction, and multiplication are exact; directed rounding
//! (`round_floor_bits` / `round_ceil_bits`) is the only lossy operation and
//! is always explicit.  Division does not exist here — quotients live in
//! `Q` (see [`crate::rational`]) or in outward-rounded intervals.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Q;

/// Default working precision in bits for interval endpoints.
pub const DEFAULT_PRECISION: u32 = 53;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.canonicalize();
        d
    }

    fn canonicalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// m · 2^e without requiring canonical inputs.
    pub fn from_parts(m: i64, e: i64) -> Self {
        Dyadic::new(BigInt::from(m), e)
    }

    /// Exact conversion; every finite f64 is dyadic.
    pub fn from_f64(x: f64) -> Option<Self> {
        crate::rational::q_from_f64(x).map(|q| Dyadic::from_q_exact(&q).expect("f64 is dyadic"))
    }

    /// Exact conversion from a rational whose denominator is a power of two.
    pub fn from_q_exact(x: &Q) -> Option<Self> {
        let den = x.denom();
        if den.is_one() {
            return Some(Dyadic::new(x.numer().clone(), 0));
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz).is_one() {
            Some(Dyadic::new(x.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Bit length of the mantissa (0 for zero).
    pub fn precision_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn to_q(&self) -> Q {
        if self.exponent >= 0 {
            Q::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            Q::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Round the mantissa to 64 bits first so huge exponents cannot
        // poison the conversion.
        let bits = self.mantissa.bits();
        if bits == 0 {
            return 0.0;
        }
        if bits <= 64 {
            let m = self.mantissa.to_f64().unwrap_or(f64::NAN);
            return m * exp2_f64(self.exponent);
        }
        let shift = (bits - 64) as i64;
        let head = (&self.mantissa >> shift as usize).to_f64().unwrap_or(f64::NAN);
        head * exp2_f64(self.exponent + shift)
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Multiply by 2^k (exact).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Dyadic::new(&self.mantissa * k, self.exponent)
    }

    /// Round toward −∞, keeping at most `bits` mantissa bits.
    pub fn round_floor_bits(&self, bits: u32) -> Self {
        let len = self.mantissa.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let drop = (len - bits as u64) as usize;
        // BigInt shr truncates toward zero on magnitude for positives; for
        // negatives we must force floor semantics explicitly.
        let shifted = floor_shr(&self.mantissa, drop);
        Dyadic::new(shifted, self.exponent + drop as i64)
    }

    /// Round toward +∞, keeping at most `bits` mantissa bits.
    pub fn round_ceil_bits(&self, bits: u32) -> Self {
        -((-self.clone()).round_floor_bits(bits))
    }

    /// Largest dyadic with at most `bits` fractional bits that is ≤ self.
    pub fn floor_abs(&self, bits: u32) -> Self {
        let e = -(bits as i64);
        if self.exponent >= e {
            return self.clone();
        }
        let drop = (e - self.exponent) as usize;
        Dyadic::new(floor_shr(&self.mantissa, drop), e)
    }

    pub fn ceil_abs(&self, bits: u32) -> Self {
        -((-self.clone()).floor_abs(bits))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

/// Shift right rounding toward −∞ (arithmetic shift).
fn floor_shr(m: &BigInt, shift: usize) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    if m.is_negative() {
        // floor(m / 2^s) = -ceil(-m / 2^s) = -((-m + 2^s - 1) >> s)
        let neg = -m;
        let adj: BigInt = neg + ((BigInt::one() << shift) - BigInt::one());
        let shifted: BigInt = adj >> shift;
        -shifted
    } else {
        m >> shift
    }
}

fn exp2_f64(e: i64) -> f64 {
    if e > 1100 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        (e as f64).exp2()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = crate::rational::sign_i64(&self.mantissa);
        let sb = crate::rational::sign_i64(&other.mantissa);
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare aligned mantissas.
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as usize;
        let mb = &other.mantissa << (other.exponent - e) as usize;
        ma.cmp(&mb)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl<'a> Neg for &'a Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa.clone(), exponent: self.exponent }
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let ma = &self.mantissa << (self.exponent - e) as usize;
        let mb = &rhs.mantissa << (rhs.exponent - e) as usize;
        Dyadic::new(ma + mb, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_q())
    }
}

/// The binary operations exposed to presentation-layer callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyadicOp {
    Add,
    Sub,
    Mul,
}

/// Exact dispatch over [`DyadicOp`]; never rounds.
pub fn dyadic_arith(a: &Dyadic, b: &Dyadic, op: DyadicOp) -> Dyadic {
    match op {
        DyadicOp::Add => a + b,
        DyadicOp::Sub => a - b,
        DyadicOp::Mul => a * b,
    }
}

//! Outward-rounded interval and box arithmetic over dyadic endpoints.
//!
//! Every operation takes an explicit working precision `p` (bits) and
//! rounds the lower endpoint toward −∞ and the upper endpoint toward +∞,
//! so the result always encloses the exact image of the inputs.  The
//! soundness contract is: for all x ∈ a, y ∈ b, `x ∘ y ∈ a.op(b, p)`.

use crate::dyadic::Dyadic;
use crate::rational::{round_down_abs, round_up_abs, Q};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::fmt;

/// Closed real interval `[lo, hi]`, lo ≤ hi.
#[derive(Clone, PartialEq, Eq)]
pub struct DInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        DInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        DInterval::point(Dyadic::zero())
    }

    /// Smallest p-bit interval containing both rational bounds.
    pub fn from_q_bounds(lo: &Q, hi: &Q, p: u32) -> Self {
        assert!(lo <= hi);
        let l = round_down_abs(lo, scale_bits(lo, p));
        let h = round_up_abs(hi, scale_bits(hi, p));
        DInterval {
            lo: Dyadic::from_q_exact(&l).expect("rounded value is dyadic"),
            hi: Dyadic::from_q_exact(&h).expect("rounded value is dyadic"),
        }
    }

    /// Encloses the single rational `x` at precision p.
    pub fn from_q(x: &Q, p: u32) -> Self {
        DInterval::from_q_bounds(x, x, p)
    }

    /// Outward rounding onto the absolute 2^-p grid (endpoints get at
    /// most p fractional bits, independent of magnitude).
    pub fn from_q_bounds_abs(lo: &Q, hi: &Q, p: u32) -> Self {
        assert!(lo <= hi);
        let l = round_down_abs(lo, p);
        let h = round_up_abs(hi, p);
        DInterval {
            lo: Dyadic::from_q_exact(&l).expect("rounded value is dyadic"),
            hi: Dyadic::from_q_exact(&h).expect("rounded value is dyadic"),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn lo_q(&self) -> Q {
        self.lo.to_q()
    }

    pub fn hi_q(&self) -> Q {
        self.hi.to_q()
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (self.lo_q() + self.hi_q()) / Q::from_integer(BigInt::from(2))
    }

    pub fn contains_q(&self, x: &Q) -> bool {
        self.lo_q() <= *x && *x <= self.hi_q()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, other: &DInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Convex hull of two intervals.
    pub fn hull(&self, other: &DInterval) -> DInterval {
        DInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn intersect(&self, other: &DInterval) -> Option<DInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| DInterval { lo, hi })
    }

    /// Round both endpoints outward to at most p mantissa bits.
    pub fn round_out(&self, p: u32) -> DInterval {
        DInterval {
            lo: self.lo.round_floor_bits(p),
            hi: self.hi.round_ceil_bits(p),
        }
    }

    pub fn neg(&self) -> DInterval {
        DInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, other: &DInterval, p: u32) -> DInterval {
        DInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }.round_out(p)
    }

    pub fn sub(&self, other: &DInterval, p: u32) -> DInterval {
        self.add(&other.neg(), p)
    }

    pub fn mul(&self, other: &DInterval, p: u32) -> DInterval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        DInterval { lo, hi }.round_out(p)
    }

    pub fn mul_int(&self, k: i64, p: u32) -> DInterval {
        let a = self.lo.mul_int(k);
        let b = self.hi.mul_int(k);
        if k >= 0 {
            DInterval { lo: a, hi: b }.round_out(p)
        } else {
            DInterval { lo: b, hi: a }.round_out(p)
        }
    }

    /// Division by a positive integer, outward.
    pub fn div_uint(&self, k: u64, p: u32) -> DInterval {
        assert!(k > 0);
        let kq = Q::from_integer(BigInt::from(k));
        let lo = self.lo_q() / &kq;
        let hi = self.hi_q() / &kq;
        DInterval::from_q_bounds(&lo, &hi, p)
    }

    /// Division, outward; `None` when the divisor straddles zero.
    pub fn div(&self, other: &DInterval, p: u32) -> Option<DInterval> {
        if other.contains_zero() {
            return None;
        }
        // A divisor of constant sign makes the quotient monotone in both
        // endpoints, so the extremes sit among the four corner quotients.
        let corners = [
            self.lo_q() / other.lo_q(),
            self.lo_q() / other.hi_q(),
            self.hi_q() / other.lo_q(),
            self.hi_q() / other.hi_q(),
        ];
        let lo = corners.iter().min().unwrap();
        let hi = corners.iter().max().unwrap();
        Some(DInterval::from_q_bounds(lo, hi, p))
    }

    /// Tight square: nonnegative even when the interval straddles zero.
    pub fn sqr(&self, p: u32) -> DInterval {
        let a2 = &self.lo * &self.lo;
        let b2 = &self.hi * &self.hi;
        let (lo, hi) = if self.contains_zero() {
            (Dyadic::zero(), a2.max(b2))
        } else if self.lo.is_positive() {
            (a2, b2)
        } else {
            (b2, a2)
        };
        DInterval { lo, hi }.round_out(p)
    }

    /// √ of a nonnegative interval, outward at p bits.
    pub fn sqrt(&self, p: u32) -> DInterval {
        assert!(!self.lo.is_negative(), "sqrt of interval with negative part");
        DInterval {
            lo: dyadic_sqrt_floor(&self.lo, p),
            hi: dyadic_sqrt_ceil(&self.hi, p),
        }
    }

    pub fn abs(&self) -> DInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            DInterval {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            }
        }
    }
}

/// Number of fractional bits needed so that p significant bits survive.
fn scale_bits(x: &Q, p: u32) -> u32 {
    if x.is_zero() {
        return p;
    }
    let mag = x.numer().bits() as i64 - x.denom().bits() as i64;
    // |x| is within a factor of 2 of 2^mag.
    (p as i64 + (-mag).max(0) + 1).max(1) as u32
}

/// Floor of √x at 2^-p absolute precision (x ≥ 0, result exact dyadic).
fn dyadic_sqrt_floor(x: &Dyadic, p: u32) -> Dyadic {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return Dyadic::zero();
    }
    // Express x·4^p = n, then isqrt(n)·2^-p ≤ √x.
    let q = x.to_q();
    let scaled = &q * crate::rational::pow2(2 * p as i64);
    let n: BigUint = scaled.floor().to_integer().magnitude().clone();
    let r = n.sqrt();
    Dyadic::new(BigInt::from(r), -(p as i64))
}

fn dyadic_sqrt_ceil(x: &Dyadic, p: u32) -> Dyadic {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return Dyadic::zero();
    }
    let q = x.to_q();
    let scaled = &q * crate::rational::pow2(2 * p as i64);
    let ceil_n: BigInt = scaled.ceil().to_integer();
    let n: BigUint = ceil_n.magnitude().clone();
    let r = n.sqrt();
    // r = floor(√n): if r² == n the root is exact, else bump.
    let r = if &r * &r == n { r } else { r + 1u32 };
    Dyadic::new(BigInt::from(r), -(p as i64))
}

impl fmt::Debug for DInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Axis-aligned box in ℂ: re × im product of real intervals.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: DInterval,
    pub im: DInterval,
}

impl ComplexBox {
    pub fn new(re: DInterval, im: DInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        ComplexBox { re: DInterval::point(re), im: DInterval::point(im) }
    }

    pub fn from_q(re: &Q, im: &Q, p: u32) -> Self {
        ComplexBox {
            re: DInterval::from_q(re, p),
            im: DInterval::from_q(im, p),
        }
    }

    /// Pad `center` by `r ≥ 0` in all four directions.
    pub fn pad(center: &ComplexBox, r: &Dyadic) -> Self {
        assert!(!r.is_negative());
        ComplexBox {
            re: DInterval::new(&center.re.lo - r, &center.re.hi + r),
            im: DInterval::new(&center.im.lo - r, &center.im.hi + r),
        }
    }

    pub fn hull(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.hull(&other.re), im: self.im.hull(&other.im) }
    }

    pub fn add(&self, other: &ComplexBox, p: u32) -> ComplexBox {
        ComplexBox { re: self.re.add(&other.re, p), im: self.im.add(&other.im, p) }
    }

    pub fn sub(&self, other: &ComplexBox, p: u32) -> ComplexBox {
        ComplexBox { re: self.re.sub(&other.re, p), im: self.im.sub(&other.im, p) }
    }

    pub fn mul(&self, other: &ComplexBox, p: u32) -> ComplexBox {
        let ac = self.re.mul(&other.re, p + 2);
        let bd = self.im.mul(&other.im, p + 2);
        let ad = self.re.mul(&other.im, p + 2);
        let bc = self.im.mul(&other.re, p + 2);
        ComplexBox { re: ac.sub(&bd, p), im: ad.add(&bc, p) }
    }

    /// Tighter than `mul(self, self)`: uses re²/im² monotonicity.
    pub fn sqr(&self, p: u32) -> ComplexBox {
        let r2 = self.re.sqr(p + 2);
        let i2 = self.im.sqr(p + 2);
        let cross = self.re.mul(&self.im, p + 2);
        ComplexBox {
            re: r2.sub(&i2, p),
            im: cross.mul_int(2, p),
        }
    }

    pub fn neg(&self) -> ComplexBox {
        ComplexBox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    /// |z|² as a real interval — exact corners before rounding.
    pub fn norm_sqr(&self, p: u32) -> DInterval {
        self.re.sqr(p + 2).add(&self.im.sqr(p + 2), p)
    }

    /// Complex division via w/v = w·v̄ / |v|²; `None` when the divisor box
    /// cannot be bounded away from zero.
    pub fn div(&self, other: &ComplexBox, p: u32) -> Option<ComplexBox> {
        let den = other.norm_sqr(p + 4);
        let num = self.mul(&other.conj(), p + 4);
        Some(ComplexBox {
            re: num.re.div(&den, p)?,
            im: num.im.div(&den, p)?,
        })
    }

    pub fn contains_point(&self, re: &Q, im: &Q) -> bool {
        self.re.contains_q(re) && self.im.contains_q(im)
    }

    pub fn contains_box(&self, other: &ComplexBox) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    /// Containment with room on every side — the contraction test for
    /// interval Newton and invariant-box certificates.
    pub fn strictly_contains(&self, other: &ComplexBox) -> bool {
        self.re.lo_q() < other.re.lo_q()
            && other.re.hi_q() < self.re.hi_q()
            && self.im.lo_q() < other.im.lo_q()
            && other.im.hi_q() < self.im.hi_q()
    }

    pub fn intersects(&self, other: &ComplexBox) -> bool {
        self.re.intersect(&other.re).is_some() && self.im.intersect(&other.im).is_some()
    }

    pub fn midpoint(&self) -> (Q, Q) {
        (self.re.midpoint(), self.im.midpoint())
    }

    /// Max over the box of max(|re|, |im|) — cheap magnitude gauge.
    pub fn sup_coord_abs(&self) -> Dyadic {
        let r = self.re.abs().hi().clone();
        let i = self.im.abs().hi().clone();
        r.max(i)
    }

    pub fn round_out(&self, p: u32) -> ComplexBox {
        ComplexBox { re: self.re.round_out(p), im: self.im.round_out(p) }
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})i", self.re, self.im)
    }
}

/// Interval image of a box under the monic polynomial
/// z^d + c_{d-2} z^{d-2} + … + c_0 (the z^{d-1} term is identically zero).
///
/// `coeffs[i]` encloses the coefficient of z^i for i = 0 … d−2.  Horner
/// evaluation keeps the number of box multiplications at d.
pub fn box_image(coeffs: &[ComplexBox], degree: usize, z: &ComplexBox, p: u32) -> ComplexBox {
    assert!(degree >= 2, "maps of degree < 2 are not supported");
    assert_eq!(coeffs.len(), degree - 1, "need coefficients for z^0 … z^{{d-2}}");
    let one = ComplexBox::point(Dyadic::one(), Dyadic::zero());
    let mut acc = one;
    // Powers d-1 … 0; the z^{d-1} coefficient is structurally zero.
    for k in (0..degree).rev() {
        acc = acc.mul(z, p);
        if k <= degree - 2 {
            acc = acc.add(&coeffs[k], p);
        }
    }
    acc
}

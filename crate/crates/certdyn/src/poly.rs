//! Exact polynomial algebra over the Gaussian rationals ℚ(i).
//!
//! Everything in this module is field arithmetic — no rounding anywhere.
//! Iterates, derivatives, quotients and gcds of polynomials with rational
//! complex coefficients are computed exactly, so downstream certification
//! (interval Newton, multiplier enclosures) starts from a polynomial that
//! is *known*, not approximated.
//!
//! Polynomials are little-endian (`coeffs[k]` multiplies z^k) and
//! normalized: no trailing zero coefficients, so the representation is
//! unique and the zero polynomial is the empty vector.

use crate::error::{Error, Result};
use crate::interval::{box_image, ComplexBox};
use crate::oracle::ComplexOracle;
use crate::rational::{q_int, Q};
use num_complex::Complex;
use num_traits::{One, Zero};

/// A Gaussian rational: exact complex number with rational parts.
pub type QC = Complex<Q>;

pub fn qc(re: Q, im: Q) -> QC {
    Complex::new(re, im)
}

pub fn qc_int(re: i64, im: i64) -> QC {
    Complex::new(q_int(re), q_int(im))
}

/// |w|² as an exact rational.
pub fn qc_norm_sqr(w: &QC) -> Q {
    &w.re * &w.re + &w.im * &w.im
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<QC>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<QC>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: QC) -> Self {
        QPoly::new(vec![c])
    }

    /// The monomial z.
    pub fn identity() -> Self {
        QPoly::new(vec![QC::zero(), QC::one()])
    }

    /// z^d + c_{d−2} z^{d−2} + … + c_0 from the low-order tail (the z^{d−1}
    /// coefficient is structurally zero for the centered monic family).
    pub fn monic_centered(degree: usize, tail: &[QC]) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidInput("degree must be at least 2".into()));
        }
        if tail.len() != degree - 1 {
            return Err(Error::InvalidInput(format!(
                "degree {} needs {} low-order coefficients, got {}",
                degree,
                degree - 1,
                tail.len()
            )));
        }
        let mut coeffs = tail.to_vec();
        coeffs.push(QC::zero()); // z^{d-1}
        coeffs.push(QC::one()); // z^d
        Ok(QPoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[QC] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QC {
        self.coeffs.get(k).cloned().unwrap_or_else(QC::zero)
    }

    pub fn leading(&self) -> QC {
        self.coeffs.last().cloned().unwrap_or_else(QC::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        QPoly::new(out)
    }

    pub fn scale(&self, s: &QC) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![QC::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * qc(q_int(k as i64), Q::zero()))
            .collect();
        QPoly::new(out)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, z: &QC) -> QC {
        let mut acc = QC::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Interval image of a box: Horner with the exact coefficients rounded
    /// outward at 2^{-p}, so the result encloses {f(w) : w ∈ z}.
    pub fn eval_box(&self, z: &ComplexBox, p: u32) -> ComplexBox {
        let mut acc = ComplexBox::from_q(&Q::zero(), &Q::zero(), p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, p).add(&ComplexBox::from_q(&c.re, &c.im, p), p);
        }
        acc
    }

    /// Composition f ∘ g, exact.
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// The k-th iterate f^∘k (k ≥ 1).
    pub fn self_compose(&self, k: usize) -> QPoly {
        assert!(k >= 1, "iterate count must be positive");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Euclidean division: self = q·div + r with deg r < deg div.
    pub fn divrem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < div.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let lead_inv = QC::one() / div.leading();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - div.coeffs.len() + 1;
        let mut quot = vec![QC::zero(); qlen];
        for k in (0..qlen).rev() {
            let factor = &rem[k + div.coeffs.len() - 1] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            quot[k] = factor.clone();
            for (j, d) in div.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&factor * d);
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder (use only
    /// where divisibility is guaranteed, e.g. inside Yun's algorithm).
    pub fn div_exact(&self, div: &QPoly) -> QPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "div_exact called on a non-divisor");
        q
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&(QC::one() / self.leading()))
    }

    /// Monic gcd by the Euclidean algorithm. Remainders are renormalized to
    /// monic at every step to keep coefficient growth polynomial.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Yun's squarefree decomposition: returns pairs (gᵢ, i) with
    /// f = lc · Π gᵢ^i, each gᵢ monic squarefree, and the gᵢ pairwise coprime.
    /// Exact over ℚ(i) — the multiplicity of every root of f is recovered
    /// without any numerical threshold.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        if self.is_constant() {
            return vec![];
        }
        let f = self.monic();
        let fd = f.derivative();
        let a = f.gcd(&fd);
        if a.is_constant() {
            return vec![(f, 1)];
        }
        let mut b = f.div_exact(&a);
        let mut d = fd.div_exact(&a).sub(&b.derivative());
        let mut out = vec![];
        let mut i = 1usize;
        while !b.is_constant() {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            d = d.div_exact(&g).sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct linear factors: f / gcd(f, f′), monic.
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }
}

/// A monic centered polynomial f(z) = z^d + c_{d−2} z^{d−2} + … + c_0 whose
/// coefficients are given by complex oracles. `coeffs[i]` is the oracle for
/// the z^i coefficient, i = 0 … d−2.
///
/// The centered normal form loses no generality: any monic polynomial is
/// conjugate to one with vanishing z^{d−1} term by an exact translation.
pub struct PolySpec {
    degree: usize,
    coeffs: Vec<ComplexOracle>,
}

impl PolySpec {
    pub fn new(degree: usize, coeffs: Vec<ComplexOracle>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidInput(
                "polynomial degree must be at least 2".into(),
            ));
        }
        if coeffs.len() != degree - 1 {
            return Err(Error::InvalidInput(format!(
                "degree {} needs {} coefficient oracles (z^0 … z^{}), got {}",
                degree,
                degree - 1,
                degree - 2,
                coeffs.len()
            )));
        }
        for c in &coeffs {
            c.check_consistency(8, 16)?;
        }
        Ok(PolySpec { degree, coeffs })
    }

    /// Exact coefficients, all rational.
    pub fn exact(degree: usize, tail: Vec<QC>) -> Result<Self> {
        let coeffs = tail
            .into_iter()
            .map(|c| ComplexOracle::constant(c.re, c.im))
            .collect();
        PolySpec::new(degree, coeffs)
    }

    /// z² + c.
    pub fn quadratic(c: QC) -> Self {
        PolySpec::exact(2, vec![c]).expect("quadratic spec is always valid")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff_oracles(&self) -> &[ComplexOracle] {
        &self.coeffs
    }

    /// Enclosing boxes for the coefficients: oracle queried at 2^{-n},
    /// endpoints rounded outward at 2^{-p}.
    pub fn coeff_boxes(&self, n: u32, p: u32) -> Vec<ComplexBox> {
        self.coeffs.iter().map(|c| c.box_at(n, p)).collect()
    }

    /// The polynomial as exact rational data, available when every
    /// coefficient oracle is exact.
    pub fn exact_poly(&self) -> Option<QPoly> {
        let mut tail = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (re, im) = c.exact_value()?;
            tail.push(qc(re.clone(), im.clone()));
        }
        Some(QPoly::monic_centered(self.degree, &tail).expect("validated at construction"))
    }

    /// Rational stand-in with each coefficient within 2^{-n} of the truth
    /// (componentwise). Exact oracles pass through unchanged.
    pub fn approx_poly(&self, n: u32) -> QPoly {
        let tail: Vec<QC> = self
            .coeffs
            .iter()
            .map(|c| {
                let (re, im) = c.query(n);
                qc(re, im)
            })
            .collect();
        QPoly::monic_centered(self.degree, &tail).expect("validated at construction")
    }

    /// Interval image of a box under f, honest about coefficient error:
    /// oracles queried at 2^{-n}, arithmetic outward-rounded at 2^{-p}.
    pub fn image_box(&self, z: &ComplexBox, n: u32, p: u32) -> ComplexBox {
        let coeffs = self.coeff_boxes(n, p);
        box_image(&coeffs, self.degree, z, p)
    }
}

//! Certified roots of exact polynomials.
//!
//! Three stages, each doing the one thing it is good at:
//!
//! 1. Yun's squarefree decomposition strips multiplicities *exactly*, so
//!    the numerical stages only ever see simple roots — no heuristic
//!    cluster thresholds.
//! 2. Aberth–Ehrlich simultaneous iteration in double precision produces
//!    one seed per root of each squarefree part.
//! 3. Interval Newton turns each seed into a `ComplexBox` that provably
//!    contains exactly one root: if N(X) = m − f(m)/f′(X) lands strictly
//!    inside X, the contraction mapping argument applies to the exact
//!    polynomial, and further Newton steps shrink the box quadratically.
//!
//! Stage 3 works in exact rational arithmetic with outward rounding, so a
//! `certified` root box is a theorem about the input polynomial, not about
//! its floating-point shadow.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::ComplexBox;
use crate::poly::{qc, QPoly};
use crate::rational::{q_from_f64, q_to_f64, Q};
use num_complex::Complex64;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct RootBox {
    pub point: ComplexBox,
    /// Multiplicity as a root of the input polynomial (exact, from Yun).
    pub multiplicity: usize,
    /// True when interval Newton proved existence and uniqueness in `point`.
    pub certified: bool,
}

/// All complex roots of `f` with exact multiplicities, each enclosed in a
/// box of coordinate width ≤ `tol` (certified boxes may be far tighter).
/// Roots are sorted by midpoint, real part first, for reproducible output.
pub fn all_roots(f: &QPoly, tol: &Q) -> Result<Vec<RootBox>> {
    if *tol <= Q::zero() {
        return Err(Error::InvalidInput("root tolerance must be positive".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "every point is a root of the zero polynomial".into(),
        ));
    }
    let mut out = vec![];
    for (g, mult) in f.squarefree_decomposition() {
        for (point, certified) in simple_roots(&g, tol)? {
            out.push(RootBox { point, multiplicity: mult, certified });
        }
    }
    out.sort_by(|a, b| a.point.midpoint().cmp(&b.point.midpoint()));
    Ok(out)
}

/// Roots of a squarefree polynomial, each simple.
fn simple_roots(g: &QPoly, tol: &Q) -> Result<Vec<(ComplexBox, bool)>> {
    match g.degree() {
        0 => Ok(vec![]),
        1 => {
            // Exact root of a linear factor; the box is only as wide as the
            // outward rounding of its rational coordinates.
            let root = -g.coeff(0) / g.coeff(1);
            let p = bits_of(tol) + 16;
            Ok(vec![(ComplexBox::from_q(&root.re, &root.im, p), true)])
        }
        _ => {
            let gd = g.derivative();
            // Three attempts with rotated starting configurations; a retry
            // is only needed if double precision failed to separate seeds.
            for offset in [0.35, 1.17, 2.59] {
                let seeds = match aberth_f64(g, offset) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let mut boxes = Vec::with_capacity(seeds.len());
                for s in &seeds {
                    boxes.push(certify_simple(g, &gd, *s, tol));
                }
                if pairwise_disjoint(&boxes) {
                    return Ok(boxes);
                }
            }
            Err(Error::NoConvergence)
        }
    }
}

fn pairwise_disjoint(boxes: &[(ComplexBox, bool)]) -> bool {
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if boxes[i].0.intersects(&boxes[j].0) {
                return false;
            }
        }
    }
    true
}

/// Interval Newton certification around a double-precision seed.
///
/// Tries boxes of growing radius until the Newton image lands strictly
/// inside, then contracts until the coordinate widths drop below `tol`.
/// Falls back to an *uncertified* residual-sized box when no radius works
/// (callers that need a guarantee must check the `certified` flag or the
/// exact residual).
fn certify_simple(g: &QPoly, gd: &QPoly, seed: Complex64, tol: &Q) -> (ComplexBox, bool) {
    let mut p = bits_of(tol) + 24;
    let (sr, si) = (
        q_from_f64(seed.re).expect("aberth seeds are finite"),
        q_from_f64(seed.im).expect("aberth seeds are finite"),
    );
    let center = ComplexBox::from_q(&sr, &si, p + 8);
    for k in [44i64, 36, 28, 20, 14, 9, 5] {
        let x = ComplexBox::pad(&center, &Dyadic::from_parts(1, -k));
        let Some(n) = newton_image(g, gd, &x, p) else { continue };
        if !strictly_inside(&n, &x) {
            continue;
        }
        // Contract. Quadratic convergence means a handful of steps; raise
        // the working precision whenever progress stalls on rounding.
        let mut x = n;
        for _ in 0..60 {
            if max_width(&x) <= *tol {
                break;
            }
            let before = max_width(&x);
            match newton_image(g, gd, &x, p) {
                Some(n) => {
                    if let Some(tighter) = intersect(&n, &x) {
                        x = tighter;
                    }
                }
                None => p += 32,
            }
            if max_width(&x) * Q::from_integer(2.into()) > before {
                p += 32;
            }
        }
        return (x, true);
    }
    // Uncertified: box sized by the double-precision Newton correction.
    let corr = {
        let (v, d) = horner2_f64(g, seed);
        if d.norm() > 0.0 { (v / d).norm() } else { 1e-6 }
    };
    let r = Dyadic::from_f64((4.0 * corr).max(1e-12)).unwrap_or_else(Dyadic::one);
    (ComplexBox::pad(&center, &r), false)
}

/// N(X) = m − g(m)/g′(X) with m the exact rational midpoint of X.
fn newton_image(g: &QPoly, gd: &QPoly, x: &ComplexBox, p: u32) -> Option<ComplexBox> {
    let (mr, mi) = x.midpoint();
    let gm = g.eval(&qc(mr.clone(), mi.clone()));
    let m_box = ComplexBox::from_q(&mr, &mi, p + 8);
    let gm_box = ComplexBox::from_q(&gm.re, &gm.im, p + 8);
    let dv = gd.eval_box(x, p);
    let quot = gm_box.div(&dv, p)?;
    Some(m_box.sub(&quot, p))
}

fn strictly_inside(inner: &ComplexBox, outer: &ComplexBox) -> bool {
    outer.strictly_contains(inner)
}

fn intersect(a: &ComplexBox, b: &ComplexBox) -> Option<ComplexBox> {
    Some(ComplexBox::new(a.re.intersect(&b.re)?, a.im.intersect(&b.im)?))
}

fn max_width(x: &ComplexBox) -> Q {
    x.re.width().to_q().max(x.im.width().to_q())
}

/// Smallest p with 2^{-p} ≤ x, overestimated by at most one bit.
fn bits_of(x: &Q) -> u32 {
    if *x >= Q::one() {
        return 1;
    }
    let db = x.denom().bits() as i64;
    let nb = x.numer().bits() as i64;
    (db - nb + 1).max(1) as u32
}


/// Aberth–Ehrlich simultaneous iteration in double precision. Returns one
/// approximation per root of the (squarefree) input, in iteration order.
fn aberth_f64(g: &QPoly, offset: f64) -> Result<Vec<Complex64>> {
    let n = g.degree();
    let lead = g.leading();
    let coeffs: Vec<Complex64> = g
        .coeffs()
        .iter()
        .map(|c| {
            let w = c / &lead;
            Complex64::new(q_to_f64(&w.re), q_to_f64(&w.im))
        })
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NoConvergence);
    }
    // Cauchy bound: all roots lie within 1 + max |c_i|.
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64) + offset;
            let r = radius * (0.6 + 0.4 * ((j + 1) as f64) / (n as f64));
            Complex64::from_polar(r, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let (v, d) = horner2_coeffs(&coeffs, z[j]);
            if !v.is_finite() || !d.is_finite() {
                return Err(Error::NoConvergence);
            }
            if d.norm() == 0.0 {
                z[j] += Complex64::new(1e-8, 1e-8);
                max_step = f64::MAX;
                continue;
            }
            let w = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for (k, zk) in z.iter().enumerate() {
                if k != j {
                    s += (z[j] - zk).finv();
                }
            }
            let den = Complex64::new(1.0, 0.0) - w * s;
            let step = if den.norm() < 1e-290 { w } else { w / den };
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        if max_step < 1e-14 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence)
}

fn horner2_coeffs(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

fn horner2_f64(g: &QPoly, z: Complex64) -> (Complex64, Complex64) {
    let coeffs: Vec<Complex64> = g
        .coeffs()
        .iter()
        .map(|c| Complex64::new(q_to_f64(&c.re), q_to_f64(&c.im)))
        .collect();
    horner2_coeffs(&coeffs, z)
}

//! Escape-certified approximation of the filled Julia set on a box grid.
//!
//! The window [−R, R]² is tiled with closed dyadic boxes of side 2^{−r}
//! and every box is iterated with outward-rounded box arithmetic. Three
//! outcomes, two of them certificates:
//!
//! * `Escaping(t)`: the step-t image box lies entirely outside |z| ≥ R,
//!   so every point of the box escapes — the box is disjoint from K_f.
//! * `Interior`: some image box lands strictly inside a forward-invariant
//!   square around an attracting cycle, so every orbit from the box stays
//!   bounded — the box lies in the interior of K_f.
//! * `Unknown`: neither certificate fired within the iteration budget.
//!   K_f is covered by Interior ∪ Unknown, but no claim is made that the
//!   Unknown layer is thin; at parabolic or Siegel parameters it need not
//!   be, and `interface_fraction` reports how much of it touches both
//!   certified classes as a per-run diagnostic.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::{box_image, ComplexBox, DInterval};
use crate::poly::PolySpec;
use crate::rational::Q;
use num_traits::Zero;
use rayon::prelude::*;

use super::periodic::{basin_box, classify_periodic};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxClass {
    /// Certified outside K_f at the given iteration step (0 = initially).
    Escaping(u32),
    /// Certified inside the interior of K_f via an attracting basin.
    Interior,
    Unknown,
}

pub struct BoxGrid {
    /// Box side is 2^{−resolution}.
    pub resolution: u32,
    /// Window half-width: the grid tiles [−R, R]², R a dyadic multiple
    /// of the box side.
    pub radius: Dyadic,
    /// Boxes per side; `classes[iy * side + ix]` is the box whose lower-left
    /// corner sits at (−R + ix·2^{−r}, −R + iy·2^{−r}).
    pub side: usize,
    pub classes: Vec<BoxClass>,
    /// Fraction of Unknown boxes with both an Escaping and an Interior
    /// neighbor (8-neighborhood) — the thin-boundary diagnostic.
    pub interface_fraction: f64,
}

impl BoxGrid {
    pub fn class_at(&self, ix: usize, iy: usize) -> BoxClass {
        self.classes[iy * self.side + ix]
    }

    /// Center of box (ix, iy) as exact rationals.
    pub fn center(&self, ix: usize, iy: usize) -> (Q, Q) {
        let side_len = crate::rational::pow2(-(self.resolution as i64));
        let r = self.radius.to_q();
        let half = crate::rational::q(1, 2);
        (
            (&half + Q::from_integer(ix.into())) * &side_len - &r,
            (&half + Q::from_integer(iy.into())) * &side_len - &r,
        )
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut esc = 0;
        let mut int = 0;
        let mut unk = 0;
        for c in &self.classes {
            match c {
                BoxClass::Escaping(_) => esc += 1,
                BoxClass::Interior => int += 1,
                BoxClass::Unknown => unk += 1,
            }
        }
        (esc, int, unk)
    }
}

/// Classify every box of the 2^{−r} grid over [−R, R]², R the escape
/// radius rounded up to a multiple of the box side.
///
/// Interior certificates come from invariant boxes around the attracting
/// cycles of period 1 and 2 (higher periods are out of reach of the
/// fixed-point solver at grid scale and rarely attract for the centered
/// quadratic family at desk parameters); when no attracting cycle is
/// found the grid simply contains no Interior boxes, which is sound.
pub fn filled_julia_approx(f: &PolySpec, r: u32, max_iter: u32) -> Result<BoxGrid> {
    if r < 2 {
        return Err(Error::InvalidInput("resolution exponent must be ≥ 2".into()));
    }
    if max_iter < 1 {
        return Err(Error::InvalidInput("iteration budget must be ≥ 1".into()));
    }
    // Round R up to the grid so the window tiles exactly.
    let raw = super::escape::escape_radius(f);
    let radius = raw.ceil_abs(r);
    let side_big = (radius.to_q() * crate::rational::pow2(r as i64 + 1)).to_integer();
    let side: usize = side_big
        .try_into()
        .map_err(|_| Error::InvalidInput("window too large for this resolution".into()))?;
    if side.checked_mul(side).is_none_or(|n| n > 1 << 24) {
        return Err(Error::InvalidInput(format!(
            "{side}×{side} boxes exceed the 2^24 grid budget"
        )));
    }

    // Working precision: box sides are 2^{-r}; a few dozen guard bits keep
    // rounding far below geometry. Coefficient oracles queried once.
    let p = r + 40;
    let coeffs = f.coeff_boxes(p, p);
    let degree = f.degree();
    let r_sq = {
        let rq = radius.to_q();
        &rq * &rq
    };

    // Invariant squares around attracting cycles of period 1 and 2.
    let mut basins = vec![];
    for k in [1usize, 2] {
        if let Ok(reports) = classify_periodic(f, k, &crate::rational::pow2(-40)) {
            for rep in reports {
                if let Some(b) = basin_box(f, &rep, p) {
                    basins.push(b);
                }
            }
        }
    }

    let step = Dyadic::from_parts(1, -(r as i64));
    let origin = -&radius;
    let classes: Vec<BoxClass> = (0..side * side)
        .into_par_iter()
        .map(|idx| {
            let ix = idx % side;
            let iy = idx / side;
            let re_lo = &origin + &step.mul_int(ix as i64);
            let im_lo = &origin + &step.mul_int(iy as i64);
            let b0 = ComplexBox::new(
                DInterval::new(re_lo.clone(), &re_lo + &step),
                DInterval::new(im_lo.clone(), &im_lo + &step),
            );
            classify_box(&b0, &coeffs, degree, &r_sq, &basins, max_iter, p)
        })
        .collect();

    let interface_fraction = interface_diagnostic(&classes, side);
    Ok(BoxGrid { resolution: r, radius, side, classes, interface_fraction })
}

fn classify_box(
    b0: &ComplexBox,
    coeffs: &[ComplexBox],
    degree: usize,
    r_sq: &Q,
    basins: &[ComplexBox],
    max_iter: u32,
    p: u32,
) -> BoxClass {
    let mut z = b0.clone();
    if z.norm_sqr(p).lo_q() >= *r_sq {
        return BoxClass::Escaping(0);
    }
    // Bail once the box is wider than the whole window: no certificate can
    // fire any more and further iteration only blows it up.
    let hopeless = r_sq.clone() * Q::from_integer(16.into());
    for t in 1..=max_iter {
        z = box_image(coeffs, degree, &z, p);
        let n = z.norm_sqr(p);
        if n.lo_q() >= *r_sq {
            return BoxClass::Escaping(t);
        }
        if basins.iter().any(|b| b.strictly_contains(&z)) {
            return BoxClass::Interior;
        }
        if n.hi_q() > hopeless && n.lo_q().is_zero() {
            break;
        }
    }
    BoxClass::Unknown
}

fn interface_diagnostic(classes: &[BoxClass], side: usize) -> f64 {
    let mut unknown = 0usize;
    let mut interface = 0usize;
    for iy in 0..side {
        for ix in 0..side {
            if classes[iy * side + ix] != BoxClass::Unknown {
                continue;
            }
            unknown += 1;
            let mut esc = false;
            let mut int = false;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let (nx, ny) = (ix as i64 + dx, iy as i64 + dy);
                    if nx < 0 || ny < 0 || nx >= side as i64 || ny >= side as i64 {
                        continue;
                    }
                    match classes[ny as usize * side + nx as usize] {
                        BoxClass::Escaping(_) => esc = true,
                        BoxClass::Interior => int = true,
                        BoxClass::Unknown => {}
                    }
                }
            }
            if esc && int {
                interface += 1;
            }
        }
    }
    if unknown == 0 {
        0.0
    } else {
        interface as f64 / unknown as f64
    }
}

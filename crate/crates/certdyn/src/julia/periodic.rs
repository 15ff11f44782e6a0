//! Periodic points: certified enclosures and multiplier classification.
//!
//! Periodic points of period dividing k are the roots of f^∘k(z) − z,
//! which is expanded exactly over ℚ(i). Each root gets a certified box,
//! an enclosure of the multiplier (f^k)′(α) = Π f′(αᵢ) along the orbit,
//! and a verdict by the position of |multiplier| relative to 1:
//! strictly below (attracting) and strictly above (repelling) are
//! certificates; the two neutral verdicts are reported suspicions, never
//! certificates — deciding |λ| = 1 exactly is possible only when the
//! point snaps to an exact Gaussian rational, and even then "parabolic"
//! (λ a root of unity) is the only refutable sub-case.
//!
//! Coefficient oracles that are not exact rationals are queried once at
//! high precision and classification runs against that rational proxy;
//! the enclosures then certify the proxy's periodic points, not the
//! oracle's. Exact coefficients — the normal case — are fully rigorous.

use crate::error::{Error, Result};
use crate::interval::ComplexBox;
use crate::poly::{qc, qc_norm_sqr, PolySpec, QPoly, QC};
use crate::rational::{pow2, simplest_in_interval, Q};
use crate::roots::all_roots;
use crate::transcend::sin_cos_tau;
use num_traits::{One, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Attracting,
    Repelling,
    NeutralParabolicSuspected,
    NeutralUnresolved,
}

#[derive(Clone, Debug)]
pub struct PeriodicPointReport {
    /// The exact period: points of lower period dividing k are filtered out.
    pub period: usize,
    pub point: ComplexBox,
    pub multiplier: ComplexBox,
    pub class: PointClass,
    /// Set when the enclosure snapped to an exact Gaussian rational that
    /// verifies f^k(α) = α; the multiplier is then exact as well.
    pub exact_point: Option<QC>,
    /// Root multiplicity in f^∘k(z) − z; ≥ 2 flags a parabolic collision
    /// (fixed-point equation tangent to zero, as for z² + z at the origin).
    pub multiplicity: usize,
    /// Rotation-number diagnostics attach here; classification leaves it
    /// empty — see the continued-fraction machinery in this module's parent.
    pub bryuno_partial_sums: Option<Vec<Q>>,
}

/// Working precision for the queried-oracle proxy (bits).
const PROXY_BITS: u32 = 96;

pub(super) fn poly_for(f: &PolySpec) -> QPoly {
    f.exact_poly().unwrap_or_else(|| f.approx_poly(PROXY_BITS))
}

/// Classify every point of exact period k.
///
/// Reports come sorted by enclosure midpoint (real part first), one per
/// point — a q-cycle of exact period k contributes k entries that share a
/// multiplier, since the chain-rule product is the same around the cycle.
pub fn classify_periodic(f: &PolySpec, k: usize, tol: &Q) -> Result<Vec<PeriodicPointReport>> {
    if k == 0 {
        return Err(Error::InvalidInput("period must be at least 1".into()));
    }
    if *tol <= Q::zero() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let too_big = (f.degree() as u128)
        .checked_pow(k as u32)
        .is_none_or(|dk| dk > 1 << 16);
    if too_big {
        return Err(Error::InvalidInput(format!(
            "degree^period = {}^{} exceeds 2^16 fixed-point equations",
            f.degree(),
            k
        )));
    }
    let fp = poly_for(f);
    let root_tol = tol.clone().min(pow2(-48));
    let g = fp.self_compose(k).sub(&QPoly::identity());
    let roots = all_roots(&g, &root_tol)?;

    // Roots of f^∘j − z for proper divisors j | k have period < k.
    let mut lower = vec![];
    for j in 1..k {
        if k % j != 0 {
            continue;
        }
        let gj = fp.self_compose(j).sub(&QPoly::identity());
        for r in all_roots(&gj, &root_tol)? {
            lower.push(r.point);
        }
    }

    let mut out = vec![];
    for rb in roots {
        if lower.iter().any(|b| b.intersects(&rb.point)) {
            continue;
        }
        out.push(classify_root(&fp, k, rb.point, rb.multiplicity, tol));
    }
    Ok(out)
}

fn classify_root(
    fp: &QPoly,
    k: usize,
    point: ComplexBox,
    multiplicity: usize,
    tol: &Q,
) -> PeriodicPointReport {
    let fd = fp.derivative();
    let p_work = 64 + bits_of(tol);

    // Try to snap the enclosure to an exact Gaussian rational and verify
    // f^k(α) = α exactly; on success the whole report is exact arithmetic.
    let cand = qc(
        simplest_in_interval(&point.re.lo_q(), &point.re.hi_q()),
        simplest_in_interval(&point.im.lo_q(), &point.im.hi_q()),
    );
    let mut orbit_end = cand.clone();
    for _ in 0..k {
        orbit_end = fp.eval(&orbit_end);
    }
    if orbit_end == cand {
        // Exact multiplier along the exact orbit.
        let mut m = QC::one();
        let mut z = cand.clone();
        for _ in 0..k {
            m = m * fd.eval(&z);
            z = fp.eval(&z);
        }
        let msq = qc_norm_sqr(&m);
        let class = match msq.cmp(&Q::one()) {
            Ordering::Less => PointClass::Attracting,
            Ordering::Greater => PointClass::Repelling,
            Ordering::Equal => {
                // Gaussian-rational roots of unity are exactly ±1, ±i, so
                // on the rational unit circle "parabolic" is decidable.
                let fourth = [qc_int(1, 0), qc_int(-1, 0), qc_int(0, 1), qc_int(0, -1)];
                if fourth.contains(&m) {
                    PointClass::NeutralParabolicSuspected
                } else {
                    PointClass::NeutralUnresolved
                }
            }
        };
        return PeriodicPointReport {
            period: k,
            point: ComplexBox::from_q(&cand.re, &cand.im, p_work),
            multiplier: ComplexBox::from_q(&m.re, &m.im, p_work),
            class,
            exact_point: Some(cand),
            multiplicity,
            bryuno_partial_sums: None,
        };
    }

    // Interval multiplier along the enclosed orbit.
    let mut m = ComplexBox::from_q(&Q::one(), &Q::zero(), p_work);
    let mut z = point.clone();
    for _ in 0..k {
        m = m.mul(&fd.eval_box(&z, p_work), p_work);
        z = fp.eval_box(&z, p_work);
    }
    let msq = m.norm_sqr(p_work);
    let class = if msq.hi_q() < Q::one() {
        PointClass::Attracting
    } else if msq.lo_q() > Q::one() {
        PointClass::Repelling
    } else if near_root_of_unity(&m, p_work) {
        PointClass::NeutralParabolicSuspected
    } else {
        PointClass::NeutralUnresolved
    };
    PeriodicPointReport {
        period: k,
        point,
        multiplier: m,
        class,
        exact_point: None,
        multiplicity,
        bryuno_partial_sums: None,
    }
}

fn qc_int(re: i64, im: i64) -> QC {
    crate::poly::qc_int(re, im)
}

/// Does the multiplier box meet e^{2πi·a/q} for some q ≤ 12? A yes is only
/// ever a suspicion — the box has positive area.
fn near_root_of_unity(m: &ComplexBox, p: u32) -> bool {
    for den in 1u64..=12 {
        for num in 0..den {
            let (s, c) = sin_cos_tau(&crate::rational::q(num as i64, den as i64), p);
            let target = ComplexBox::new(c, s);
            if m.intersects(&target) {
                return true;
            }
        }
    }
    false
}

/// A forward-invariant square around an attracting periodic point: a box B
/// centered on the point with f^{k·j}(B) strictly inside B for some j ≤ 8
/// (iterating covers multipliers up to |λ| ≈ 0.92, where one application
/// of box arithmetic would lose to the √2 box-rotation overhead).
///
/// Any orbit that enters B stays in the union of its finitely many forward
/// images, hence is bounded — the certificate the grid classifier consumes.
pub fn basin_box(f: &PolySpec, report: &PeriodicPointReport, p: u32) -> Option<ComplexBox> {
    if report.class != PointClass::Attracting {
        return None;
    }
    let fp = poly_for(f);
    let (cr, ci) = match &report.exact_point {
        Some(a) => (a.re.clone(), a.im.clone()),
        None => report.point.midpoint(),
    };
    let center = ComplexBox::from_q(&cr, &ci, p + 8);
    for e in 2..=12 {
        let b = ComplexBox::pad(&center, &crate::dyadic::Dyadic::from_parts(1, -e));
        'reps: for j in [1usize, 2, 4, 8] {
            let mut x = b.clone();
            for _ in 0..report.period * j {
                x = fp.eval_box(&x, p);
                // A wildly grown box can only get worse.
                if x.sup_coord_abs().to_q() > Q::from_integer(1000.into()) {
                    continue 'reps;
                }
            }
            if b.strictly_contains(&x) {
                return Some(b);
            }
        }
    }
    None
}

/// Smallest p with 2^{-p} ≤ x, overestimated by at most one bit.
fn bits_of(x: &Q) -> u32 {
    if *x >= Q::one() {
        return 1;
    }
    (x.denom().bits() as i64 - x.numer().bits() as i64 + 1).max(1) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qc_int;
    use crate::rational::{q, q_int};

    fn tol() -> Q {
        pow2(-30)
    }

    #[test]
    fn squaring_map_fixed_points() {
        let f = PolySpec::quadratic(qc_int(0, 0));
        let reports = classify_periodic(&f, 1, &tol()).unwrap();
        assert_eq!(reports.len(), 2);
        let zero = &reports[0];
        assert_eq!(zero.exact_point, Some(qc_int(0, 0)));
        assert_eq!(zero.class, PointClass::Attracting);
        assert_eq!(zero.multiplicity, 1);
        let one = &reports[1];
        assert_eq!(one.exact_point, Some(qc_int(1, 0)));
        assert_eq!(one.class, PointClass::Repelling);
        assert!(one.multiplier.contains_point(&q_int(2), &q_int(0)));
    }

    #[test]
    fn parabolic_collision_at_the_origin() {
        // f = z² + z: fixed-point equation z² = 0, a double root with
        // multiplier exactly 1.
        let f = PolySpec::exact(2, vec![qc_int(0, 0)]).unwrap();
        let fp = f.exact_poly().unwrap().add(&QPoly::identity());
        // Build the non-centered map directly through the classify core,
        // handing it a loose enclosure that still contains the root.
        let seed = ComplexBox::pad(
            &ComplexBox::from_q(&q(1, 100), &q(-1, 100), 30),
            &crate::dyadic::Dyadic::from_parts(1, -5),
        );
        let report = classify_root(&fp, 1, seed, 2, &tol());
        // The snap must find 0 inside the loose box and verify exactly.
        assert_eq!(report.exact_point, Some(qc_int(0, 0)));
        assert_eq!(report.class, PointClass::NeutralParabolicSuspected);
        assert_eq!(report.multiplicity, 2);
        assert!(report.multiplier.contains_point(&q_int(1), &q_int(0)));
    }

    #[test]
    fn basilica_superattracting_two_cycle() {
        let f = PolySpec::quadratic(qc_int(-1, 0));
        let reports = classify_periodic(&f, 2, &tol()).unwrap();
        assert_eq!(reports.len(), 2);
        let points: Vec<_> = reports.iter().map(|r| r.exact_point.clone().unwrap()).collect();
        assert_eq!(points, vec![qc_int(-1, 0), qc_int(0, 0)]);
        for r in &reports {
            assert_eq!(r.class, PointClass::Attracting);
            assert!(r.multiplier.contains_point(&q_int(0), &q_int(0)));
        }
    }

    #[test]
    fn period_two_of_the_squaring_map_is_repelling() {
        // f² − z = z⁴ − z: the primitive cube roots of unity survive the
        // divisor filter. They are irrational, exercising the interval path.
        let f = PolySpec::quadratic(qc_int(0, 0));
        let reports = classify_periodic(&f, 2, &tol()).unwrap();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert!(r.exact_point.is_none());
            assert_eq!(r.class, PointClass::Repelling);
            // (f²)'(ω) = 4ω³ = 4 on the cycle.
            assert!(r.multiplier.contains_point(&q_int(4), &q_int(0)));
            assert!(r.point.contains_point(&q(-1, 2), &r.point.midpoint().1));
        }
    }

    #[test]
    fn rational_unit_multiplier_is_not_parabolic() {
        // c chosen so the fixed point α = (3+4i)/10 has multiplier
        // 2α = (3+4i)/5, exactly on the unit circle but not a root of
        // unity — irrationally indifferent, never certified.
        let c = qc(q(37, 100), q(16, 100));
        let f = PolySpec::quadratic(c);
        let reports = classify_periodic(&f, 1, &tol()).unwrap();
        let neutral: Vec<_> = reports
            .iter()
            .filter(|r| r.exact_point == Some(qc(q(3, 10), q(4, 10))))
            .collect();
        assert_eq!(neutral.len(), 1);
        assert_eq!(neutral[0].class, PointClass::NeutralUnresolved);
    }

    #[test]
    fn verdicts_stable_under_doubling_precision() {
        for c in [qc_int(0, 0), qc_int(-1, 0)] {
            let f = PolySpec::quadratic(c);
            let coarse = classify_periodic(&f, 1, &tol()).unwrap();
            let fine = classify_periodic(&f, 1, &(tol() * tol())).unwrap();
            assert_eq!(coarse.len(), fine.len());
            for (a, b) in coarse.iter().zip(&fine) {
                assert_eq!(a.class, b.class);
                assert_eq!(a.exact_point, b.exact_point);
            }
        }
    }

    #[test]
    fn invariant_box_for_the_superattracting_origin() {
        let f = PolySpec::quadratic(qc_int(0, 0));
        let reports = classify_periodic(&f, 1, &tol()).unwrap();
        let b = basin_box(&f, &reports[0], 48).expect("origin basin exists");
        assert!(b.contains_point(&q_int(0), &q_int(0)));
        // Independent re-check of the invariance certificate.
        let fp = f.exact_poly().unwrap();
        let img = fp.eval_box(&b, 48);
        assert!(b.strictly_contains(&img));
        // Repelling points have no basin.
        assert!(basin_box(&f, &reports[1], 48).is_none());
    }

    #[test]
    fn guards_reject_bad_inputs() {
        let f = PolySpec::quadratic(qc_int(0, 0));
        assert!(classify_periodic(&f, 0, &tol()).is_err());
        assert!(classify_periodic(&f, 17, &tol()).is_err()); // 2^17 > 2^16
        assert!(classify_periodic(&f, 1, &Q::zero()).is_err());
    }
}

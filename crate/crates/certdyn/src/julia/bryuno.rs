//! Partial sums of the Brjuno series of a rotation number.
//!
//! For θ ∈ (0,1) with continued fraction [0; a₁, a₂, …] and convergent
//! denominators q₀ = 1, q₁ = a₁, q_{n+1} = a_{n+1} q_n + q_{n−1}, the
//! series Σ_{n≥0} ln(q_{n+1}) / q_n converges exactly when θ satisfies
//! the arithmetic condition separating linearizable from wild behavior
//! at an irrationally indifferent fixed point. Only partial sums are
//! computable from finitely many digits, and each is returned as a
//! rigorous enclosure.
//!
//! Partial quotients of an oracle-given θ are verified before use: a
//! quotient is accepted only when every point of the current enclosure
//! yields the same floor. Rationals (whose expansion terminates) and
//! oracles too coarse to separate a quotient are reported as errors
//! rather than guessed around — see [`Error::RationalDetected`] and
//! [`Error::PrecisionExhausted`].

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::DInterval;
use crate::oracle::RealOracle;
use crate::rational::Q;
use crate::transcend::ln_count;

/// Precision (p in enclosure width 2^−p) at which the ladder gives up.
const PRECISION_CAP: u32 = 1 << 16;
/// Outward-rounding precision for the logarithm enclosures.
const SUM_BITS: u32 = 48;

pub struct BryunoReport {
    /// Verified partial quotients a₁ … a_m.
    pub partial_quotients: Vec<BigUint>,
    /// q₀ … q_m from the convergent recurrence.
    pub denominators: Vec<BigUint>,
    /// `partial_sums[k]` encloses Σ_{n≤k} ln(q_{n+1}) / q_n.
    pub partial_sums: Vec<DInterval>,
}

impl BryunoReport {
    pub fn last_sum(&self) -> &DInterval {
        self.partial_sums.last().expect("terms ≥ 1")
    }
}

/// First `terms` partial sums of the Brjuno series of θ ∈ (0,1).
pub fn bryuno_partial_sums(theta: &RealOracle, terms: usize) -> Result<BryunoReport> {
    if terms == 0 {
        return Err(Error::InvalidInput("need at least one Brjuno term".into()));
    }
    let quotients = match theta.exact_value() {
        Some(x) => exact_quotients(x, terms)?,
        None => {
            let mut p = 64u32;
            loop {
                match interval_quotients(theta, terms, p) {
                    Expansion::Done(qs) => break qs,
                    Expansion::Outside => {
                        return Err(Error::InvalidInput(
                            "rotation number must lie in (0,1)".into(),
                        ));
                    }
                    Expansion::Ambiguous(step) => {
                        if p >= PRECISION_CAP {
                            return Err(Error::PrecisionExhausted(step));
                        }
                        p *= 2;
                    }
                }
            }
        }
    };
    assemble(quotients)
}

fn exact_quotients(x: &Q, terms: usize) -> Result<Vec<BigUint>> {
    if !x.is_positive() || *x >= Q::one() {
        return Err(Error::InvalidInput("rotation number must lie in (0,1)".into()));
    }
    let mut num = x.numer().to_biguint().expect("positive");
    let mut den = x.denom().to_biguint().expect("positive");
    let mut quotients = Vec::with_capacity(terms);
    for extracted in 0..terms {
        if num.is_zero() {
            return Err(Error::RationalDetected(extracted));
        }
        let (a, r) = den.div_rem(&num);
        quotients.push(a);
        den = num;
        num = r;
    }
    Ok(quotients)
}

enum Expansion {
    Done(Vec<BigUint>),
    /// Some point of the enclosure sits on a floor boundary at the given
    /// 1-based step; a sharper enclosure may resolve it.
    Ambiguous(usize),
    Outside,
}

/// Run the continued fraction on an exact rational enclosure [lo, hi].
/// Every quotient must be the floor of 1/x for all x in the current
/// interval simultaneously, otherwise the step is ambiguous.
fn interval_quotients(theta: &RealOracle, terms: usize, p: u32) -> Expansion {
    let (mut lo, mut hi) = theta.enclosure(p);
    if lo >= Q::one() || !hi.is_positive() {
        return Expansion::Outside;
    }
    if !lo.is_positive() || hi >= Q::one() {
        return Expansion::Ambiguous(1);
    }
    let mut quotients = Vec::with_capacity(terms);
    for step in 1..=terms {
        // x ∈ [lo, hi] ⊂ (0,1): 1/x ∈ [1/hi, 1/lo].
        let inv_lo = hi.recip();
        let inv_hi = lo.recip();
        let a = inv_lo.floor();
        if a != inv_hi.floor() {
            return Expansion::Ambiguous(step);
        }
        quotients.push(a.numer().to_biguint().expect("1/x > 1"));
        lo = &inv_lo - &a;
        hi = inv_hi - a;
        if step < terms && !lo.is_positive() {
            // The remainder may be exactly zero — indistinguishable from a
            // tiny positive tail at this precision.
            return Expansion::Ambiguous(step + 1);
        }
    }
    Expansion::Done(quotients)
}

fn assemble(quotients: Vec<BigUint>) -> Result<BryunoReport> {
    let mut denominators = vec![BigUint::one()];
    for (i, a) in quotients.iter().enumerate() {
        let next = if i == 0 {
            a.clone()
        } else {
            a * &denominators[i] + &denominators[i - 1]
        };
        denominators.push(next);
    }
    let mut partial_sums = Vec::with_capacity(quotients.len());
    let mut acc = DInterval::zero();
    for n in 0..quotients.len() {
        let ln_q = ln_count(&denominators[n + 1], SUM_BITS + 8)?;
        // Exact division of the rational endpoints by the integer q_n,
        // re-rounded outward.
        let qn = Q::from_integer(denominators[n].clone().into());
        let term = DInterval::from_q_bounds(&(ln_q.lo_q() / &qn), &(ln_q.hi_q() / &qn), SUM_BITS);
        acc = acc.add(&term, SUM_BITS);
        partial_sums.push(acc.clone());
    }
    Ok(BryunoReport { partial_quotients: quotients, denominators, partial_sums })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_int, q_to_f64};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn golden_rotation_walks_the_fibonacci_ladder() {
        let report = bryuno_partial_sums(&RealOracle::golden(), 10).unwrap();
        assert!(report.partial_quotients.iter().all(|a| *a == big(1)));
        let fib: Vec<u64> = vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
        let dens: Vec<BigUint> = fib.into_iter().map(big).collect();
        assert_eq!(report.denominators, dens);
        // S₁₀ = Σ_{n<10} ln(F_{n+2})/F_{n+1} ≈ 3.1170.
        let last = report.last_sum();
        assert!(last.lo_q() > q(31, 10));
        assert!(last.hi_q() < q(313, 100));
        assert!(last.width().to_q() < crate::rational::pow2(-30));
        // Monotone: every term is nonnegative.
        for w in report.partial_sums.windows(2) {
            assert!(w[1].hi_q() >= w[0].hi_q());
        }
    }

    #[test]
    fn one_half_terminates_immediately() {
        let theta = RealOracle::constant(q(1, 2));
        let err = bryuno_partial_sums(&theta, 10);
        assert!(matches!(err, Err(Error::RationalDetected(1))));
        // Asking only for what exists succeeds: [0; 2], q₁ = 2.
        let report = bryuno_partial_sums(&theta, 1).unwrap();
        assert_eq!(report.partial_quotients, vec![big(2)]);
        assert_eq!(report.denominators, vec![big(1), big(2)]);
    }

    #[test]
    fn exact_expansion_of_a_convergent_of_pi() {
        // 113/355 = [0; 3, 7, 16]; the final denominator is 355 itself.
        let theta = RealOracle::constant(q(113, 355));
        let report = bryuno_partial_sums(&theta, 3).unwrap();
        assert_eq!(report.partial_quotients, vec![big(3), big(7), big(16)]);
        assert_eq!(report.denominators, vec![big(1), big(3), big(22), big(355)]);
        assert!(matches!(
            bryuno_partial_sums(&theta, 4),
            Err(Error::RationalDetected(3))
        ));
    }

    #[test]
    fn doubly_exponential_quotients_round_trip() {
        // a_n = 2^(2^(n-1)): fold [0; 2, 4, 16, 256, 65536] back into an
        // exact rational and re-expand it.
        let quotients: Vec<u64> = vec![2, 4, 16, 256, 65536];
        let mut x = Q::zero();
        for a in quotients.iter().rev() {
            x = (Q::from_integer((*a).into()) + x).recip();
        }
        let report = bryuno_partial_sums(&RealOracle::constant(x), 5).unwrap();
        let expect: Vec<BigUint> = quotients.into_iter().map(big).collect();
        assert_eq!(report.partial_quotients, expect);
        // q_{n+1} = a_{n+1} q_n + q_{n-1} checked independently.
        for n in 1..report.denominators.len() - 1 {
            assert_eq!(
                report.denominators[n + 1],
                &report.partial_quotients[n] * &report.denominators[n]
                    + &report.denominators[n - 1]
            );
        }
        // The sums stall once quotients explode: the tail terms
        // ln(q_{n+1})/q_n shrink even though q blows up.
        let sums: Vec<f64> =
            report.partial_sums.iter().map(|s| q_to_f64(&s.midpoint())).collect();
        assert!(sums[4] - sums[3] < 0.001);
    }

    #[test]
    fn oracle_and_exact_agree_until_the_oracle_must_give_up() {
        // 47/89 = [0; 1, 1, 8, 2, 2]. An interval oracle can verify the
        // first four quotients but the last one sits on a floor boundary
        // at every finite precision.
        let x = q(47, 89);
        let exact = bryuno_partial_sums(&RealOracle::constant(x.clone()), 5).unwrap();
        assert_eq!(
            exact.partial_quotients,
            vec![big(1), big(1), big(8), big(2), big(2)]
        );
        assert_eq!(*exact.denominators.last().unwrap(), big(89));

        let proxy = RealOracle::proc(move |_| x.clone());
        let four = bryuno_partial_sums(&proxy, 4).unwrap();
        assert_eq!(four.partial_quotients[..], exact.partial_quotients[..4]);
        assert_eq!(four.denominators[..], exact.denominators[..5]);
        assert!(matches!(
            bryuno_partial_sums(&proxy, 5),
            Err(Error::PrecisionExhausted(5))
        ));
    }

    #[test]
    fn enclosures_are_honest_against_hand_values() {
        // 4/11 = [0; 2, 1, 3]: denominators 2, 3, 11 and
        // S₃ = ln 2 + ln(3)/2 + ln(11)/3 ≈ 2.041751.
        let report = bryuno_partial_sums(&RealOracle::constant(q(4, 11)), 3).unwrap();
        assert_eq!(report.partial_quotients, vec![big(2), big(1), big(3)]);
        assert_eq!(report.denominators, vec![big(1), big(2), big(3), big(11)]);
        let s3 = report.last_sum();
        assert!(s3.lo_q() > q(20417, 10000));
        assert!(s3.hi_q() < q(20418, 10000));
    }

    #[test]
    fn guards_reject_bad_rotation_numbers() {
        assert!(bryuno_partial_sums(&RealOracle::golden(), 0).is_err());
        assert!(bryuno_partial_sums(&RealOracle::constant(q(3, 2)), 4).is_err());
        assert!(bryuno_partial_sums(&RealOracle::constant(q_int(0)), 4).is_err());
        assert!(bryuno_partial_sums(&RealOracle::constant(q(-1, 3)), 4).is_err());
        // A Proc oracle pinned outside (0,1) is caught, not expanded.
        let above = RealOracle::proc(|_| q(7, 4));
        assert!(matches!(
            bryuno_partial_sums(&above, 4),
            Err(Error::InvalidInput(_))
        ));
    }
}

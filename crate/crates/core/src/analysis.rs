//! Convergence orders and leading error coefficients of the estimators.
//!
//! Errors are signed so that a correct bound has a positive error: `pi - v`
//! for lower bounds, `v - pi` for upper bounds, and the width for two-sided
//! enclosures. pi is the midpoint of a reference enclosure 128 bits finer
//! than the working precision.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::bounds::{arc_bounds, polygon_bound, MethodTag, Side};
use crate::error::Error;
use crate::exact::{pi_reference, Enclosure, Precision, Rational, Verdict};
use crate::polygon::{ladder, PolygonLadder};

/// Label index of n = 1536 on the hexagon ladder.
pub const COEFFICIENT_LABEL: usize = 8;
/// Relative tolerance of measured against expected coefficients.
pub const COEFFICIENT_TOLERANCE: f64 = 0.03;

#[derive(Clone, Debug, PartialEq)]
pub struct OrderSample {
    pub n: u64,
    pub error: Enclosure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderEstimate {
    pub method: MethodTag,
    /// Least-squares slope of log2 |error| against log2 n.
    pub slope: f64,
    /// `round(-slope)`.
    pub order: u32,
    /// `n^order |error|` at the largest n.
    pub coefficient: Enclosure,
    pub samples: Vec<OrderSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientRow {
    pub method: MethodTag,
    pub order: u32,
    pub n: u64,
    pub expected: Option<Enclosure>,
    pub measured: Enclosure,
    pub unit_convention: &'static str,
    pub relative_error: Option<f64>,
    pub verdict: Verdict,
}

/// pi as an exact point: the midpoint of the reference enclosure.
pub fn pi_point(p: Precision) -> Enclosure {
    let wp = p.plus(128);
    Enclosure::from_rational(&pi_reference(wp).mid(), wp)
}

/// Signed error of `method` at rung `k`; positive when the bound is correct.
pub fn signed_error(method: MethodTag, l: &PolygonLadder, k: usize, pi: &Enclosure) -> Result<Enclosure, Error> {
    let value = polygon_bound(method, l, k)?;
    Ok(match method.side() {
        Side::Lower => pi.sub(&value),
        Side::Upper => value.sub(pi),
        Side::TwoSided => Enclosure::from_rational(&value.width(), l.precision()),
    })
}

/// `log2 |r|` for `r != 0`, accurate to double precision at any magnitude.
pub fn log2_abs(r: &Rational) -> f64 {
    fn top(x: &BigInt) -> (f64, i64) {
        let bits = x.bits() as i64;
        let shift = (bits - 60).max(0);
        ((x >> shift as usize).to_f64().expect("60-bit value").abs(), shift)
    }
    let (n, ns) = top(r.numer());
    let (d, ds) = top(r.denom());
    (n / d).log2() + (ns - ds) as f64
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Fits the order of `method` over the labels `k_range` of the ladder from
/// `seed`. Only the last `max(4, ceil(m/2))` of the `m` samples enter the fit.
pub fn estimate_order(
    method: MethodTag,
    seed: u32,
    k_range: RangeInclusive<usize>,
    p: Precision,
) -> Result<OrderEstimate, Error> {
    let labels: Vec<usize> = k_range.collect();
    if labels.len() < 4 {
        return Err(Error::InsufficientSamples { need: 4, got: labels.len() });
    }
    let last = *labels.last().expect("nonempty");
    let l = ladder(seed, method.rung_for_label(last), p)?;
    let pi = pi_point(p);
    let mut samples = Vec::with_capacity(labels.len());
    for &label in &labels {
        let k = method.rung_for_label(label);
        let error = signed_error(method, &l, k, &pi)?;
        if !error.is_positive() {
            return Err(Error::Indeterminate(format!(
                "{method} error {error} at n = {} is not certainly positive",
                l.rung(label)?.n
            )));
        }
        samples.push(OrderSample { n: l.rung(label)?.n, error });
    }
    for w in samples.windows(2) {
        if !w[1].error.strictly_less(&w[0].error).holds() {
            return Err(Error::Indeterminate(format!(
                "{method} errors do not decrease from n = {} to n = {}",
                w[0].n, w[1].n
            )));
        }
    }
    let used = samples.len().div_ceil(2).max(4);
    let tail = &samples[samples.len() - used..];
    let xs: Vec<f64> = tail.iter().map(|s| (s.n as f64).log2()).collect();
    let ys: Vec<f64> = tail.iter().map(|s| log2_abs(&s.error.mid())).collect();
    let slope = ls_slope(&xs, &ys);
    let order = (-slope).round().max(0.0) as u32;
    let largest = samples.last().expect("nonempty");
    let coefficient = largest.error.mul(&Enclosure::from_int(largest.n as i64, p).powi(order));
    Ok(OrderEstimate { method, slope, order, coefficient, samples })
}

/// Leading error constants at unit diameter, with the convention each comes from.
pub fn expected_coefficient(method: MethodTag, p: Precision) -> Option<(u32, Enclosure, &'static str)> {
    let pi = pi_reference(p);
    let pi5 = pi.powi(5);
    let halved = "unit-radius constant halved for unit diameter";
    match method {
        MethodTag::HuygensVii => Some((4, pi5.div_int(480).ok()?, halved)),
        MethodTag::Cusa => Some((4, pi5.div_int(2880).ok()?, halved)),
        MethodTag::SnellIx => Some((4, pi5.div_int(20).ok()?, halved)),
        MethodTag::HuygensXviUpper => Some((6, pi.powi(7).div_int(22400).ok()?, "stated at unit diameter")),
        _ => None,
    }
}

/// Measured `n^order * error` at n = 1536 on the hexagon ladder against the
/// known constants; the two order-6 lower bounds have no closed-form
/// constant and are reported as measured only.
pub fn coefficient_table(p: Precision) -> Result<Vec<CoefficientRow>, Error> {
    let methods = [
        MethodTag::HuygensVii,
        MethodTag::Cusa,
        MethodTag::SnellIx,
        MethodTag::HuygensXviUpper,
        MethodTag::HuygensFinalLower,
        MethodTag::Schuh27Lower,
    ];
    let l = ladder(6, COEFFICIENT_LABEL + 1, p)?;
    let pi = pi_point(p);
    let n = l.rung(COEFFICIENT_LABEL)?.n;
    let mut rows = Vec::with_capacity(methods.len());
    for method in methods {
        let error = signed_error(method, &l, method.rung_for_label(COEFFICIENT_LABEL), &pi)?;
        let expected = expected_coefficient(method, p);
        let order = expected.as_ref().map_or(6, |e| e.0);
        let measured = error.mul(&Enclosure::from_int(n as i64, p).powi(order));
        let (expected, unit_convention, relative_error, verdict) = match expected {
            Some((_, e, convention)) => {
                let rel = measured.sub(&e).abs().div(&e)?;
                let cap = Enclosure::ratio(3, 100, p);
                let verdict = match rel.certainly_le(&cap) {
                    Verdict::Holds => Verdict::Holds,
                    _ => {
                        Verdict::Violated(format!("relative error {:.4} above {COEFFICIENT_TOLERANCE}", rel.mid_f64()))
                    }
                };
                (Some(e), convention, Some(rel.mid_f64()), verdict)
            }
            None => (None, "measured only", None, Verdict::Holds),
        };
        rows.push(CoefficientRow { method, order, n, expected, measured, unit_convention, relative_error, verdict });
    }
    Ok(rows)
}

/// Checks `|bound(x) - x - leading(x)| <= 2 |next(x)|` over the grid for the
/// Cusa (`-x^5/180`, `-x^7/1512`) and Snell (`x^5/20`, `x^7/56`) arc forms.
pub fn arc_expansion_check(method: MethodTag, x_grid: &[Enclosure]) -> Result<Verdict, Error> {
    let (lead, next) = match method {
        MethodTag::Cusa => ((-1, 180), (-1, 1512)),
        MethodTag::Snell => ((1, 20), (1, 56)),
        other => return Err(Error::Domain(format!("no arc expansion for {other}"))),
    };
    let mut verdict = Verdict::Holds;
    for x in x_grid {
        let p = x.precision();
        if !x.is_positive() || x.hi() > Rational::new(1, 4)? {
            return Err(Error::Domain(format!("expansion grid point {x} outside (0, 1/4]")));
        }
        let bound = arc_bounds(x, method)?;
        let leading = x.powi(5).mul_int(lead.0).div_int(lead.1)?;
        let envelope = x.powi(7).mul_int(2).div_int(next.1)?;
        let dev = bound.sub(x).sub(&leading).abs();
        let here = match dev.certainly_le(&envelope) {
            Verdict::Holds => Verdict::Holds,
            Verdict::Violated(why) => Verdict::Violated(format!("{method} at x = {}: {why}", x.render(6))),
            Verdict::Indeterminate(why) => {
                Verdict::Indeterminate(format!("{method} at x = {} needs more than {p}: {why}", x.render(6)))
            }
        };
        verdict = verdict.and(here);
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn log2_of_tiny_and_huge() {
        let tiny = Rational::new(3, BigInt::from(1) << 300usize).unwrap();
        assert!((log2_abs(&tiny) - (3f64.log2() - 300.0)).abs() < 1e-12);
        let huge = Rational::from(BigInt::from(5) << 2000usize);
        assert!((log2_abs(&huge) - (5f64.log2() + 2000.0)).abs() < 1e-12);
        assert!((log2_abs(&Rational::new(-1, 8).unwrap()) + 3.0).abs() < 1e-15);
    }

    #[test]
    fn slope_of_a_power_law() {
        let xs: Vec<f64> = (0..6).map(|k| k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.5 - 4.0 * x).collect();
        assert!((ls_slope(&xs, &ys) + 4.0).abs() < 1e-12);
    }

    #[test]
    fn archimedes_is_second_order() {
        let est = estimate_order(MethodTag::Archimedes, 6, 0..=8, p(128)).unwrap();
        assert!((est.slope + 2.0).abs() < 0.05, "slope {}", est.slope);
        assert_eq!(est.order, 2);
    }

    #[test]
    fn vii_is_fourth_order() {
        let est = estimate_order(MethodTag::HuygensVii, 6, 2..=8, p(160)).unwrap();
        assert!((est.slope + 4.0).abs() < 0.05, "slope {}", est.slope);
        // pi^5/480 = 0.6375...
        assert!((est.coefficient.mid_f64() - 0.63754).abs() < 0.02);
    }

    #[test]
    fn too_few_samples() {
        assert_eq!(
            estimate_order(MethodTag::Archimedes, 6, 0..=2, p(64)),
            Err(Error::InsufficientSamples { need: 4, got: 3 })
        );
    }

    #[test]
    fn indeterminate_when_precision_runs_out() {
        let err = estimate_order(MethodTag::HuygensXviUpper, 6, 6..=12, p(48)).unwrap_err();
        assert!(matches!(err, Error::Indeterminate(_)), "{err:?}");
    }

    #[test]
    fn expansions_hold_on_a_grid() {
        let prec = p(160);
        let grid: Vec<Enclosure> = (1..=25).map(|i| Enclosure::ratio(i, 100, prec)).collect();
        assert!(arc_expansion_check(MethodTag::Cusa, &grid).unwrap().holds());
        assert!(arc_expansion_check(MethodTag::Snell, &grid).unwrap().holds());
        assert!(arc_expansion_check(MethodTag::Archimedes, &grid).is_err());
        assert!(arc_expansion_check(MethodTag::Cusa, &[Enclosure::ratio(1, 2, prec)]).is_err());
    }

    #[test]
    fn cusa_deficiency_at_a_tenth() {
        let prec = p(160);
        let x = Enclosure::ratio(1, 10, prec);
        let deficiency = x.sub(&arc_bounds(&x, MethodTag::Cusa).unwrap());
        let lead = 1e-5 / 180.0;
        assert!(deficiency.lo_f64() > 0.5 * lead && deficiency.hi_f64() < 1.5 * lead);
        let excess = arc_bounds(&x, MethodTag::Snell).unwrap().sub(&x);
        let lead = 1e-5 / 20.0;
        assert!(excess.lo_f64() > lead / 1.1 && excess.hi_f64() < lead * 1.1);
    }
}

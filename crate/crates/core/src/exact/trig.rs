//! Rigorous enclosures of the circular functions and of pi.
//!
//! Every series is alternating with terms decreasing in magnitude on the
//! reduced range, so the first omitted term bounds the tail. Series run in
//! enclosure arithmetic at the caller's precision plus [`GUARD_BITS`]; the
//! result is cut back outward at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::dyadic::{Dir, Dyadic};
use super::enclosure::{Enclosure, Precision};
use crate::error::Error;

pub const GUARD_BITS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
    Tan,
    Arcsin,
    Arctan,
}

/// Evaluates `f` over the whole enclosure `x`.
pub fn enc_trig(x: &Enclosure, f: TrigFn) -> Result<Enclosure, Error> {
    match f {
        TrigFn::Sin => Ok(sin(x)),
        TrigFn::Cos => Ok(cos(x)),
        TrigFn::Tan => tan(x),
        TrigFn::Arcsin => arcsin(x),
        TrigFn::Arctan => Ok(arctan(x)),
    }
}

/// pi by Machin's relation pi/4 = 4 arctan(1/5) - arctan(1/239), computed
/// with 64 guard bits and then cut outward to `p`.
pub fn pi_reference(p: Precision) -> Enclosure {
    let wp = p.plus(64);
    let a = arctan_wp(&Enclosure::ratio(1, 5, wp), wp);
    let b = arctan_wp(&Enclosure::ratio(1, 239, wp), wp);
    a.mul_int(16).sub(&b.mul_int(4)).with_precision(p)
}

pub fn sin(x: &Enclosure) -> Enclosure {
    let p = x.precision();
    sin_wp(&x.with_precision(p.plus(GUARD_BITS)), p.plus(GUARD_BITS)).with_precision(p)
}

pub fn cos(x: &Enclosure) -> Enclosure {
    let p = x.precision();
    cos_wp(&x.with_precision(p.plus(GUARD_BITS)), p.plus(GUARD_BITS)).with_precision(p)
}

pub fn tan(x: &Enclosure) -> Result<Enclosure, Error> {
    let p = x.precision();
    let wp = p.plus(GUARD_BITS);
    let xw = x.with_precision(wp);
    let c = cos_wp(&xw, wp);
    if c.contains_zero() {
        return Err(Error::PoleProximity);
    }
    let s = sin_wp(&xw, wp);
    Ok(s.div(&c).map_err(|_| Error::PoleProximity)?.with_precision(p))
}

pub fn arctan(x: &Enclosure) -> Enclosure {
    let p = x.precision();
    arctan_wp(&x.with_precision(p.plus(GUARD_BITS)), p.plus(GUARD_BITS)).with_precision(p)
}

pub fn arcsin(x: &Enclosure) -> Result<Enclosure, Error> {
    let one = Dyadic::from_int(1);
    if x.lo_dyadic() < &one.neg() || x.hi_dyadic() > &one {
        return Err(Error::Domain(format!("arcsin argument {x} outside [-1, 1]")));
    }
    let p = x.precision();
    let wp = p.plus(GUARD_BITS);
    let lo = asin_point(x.lo_dyadic(), wp);
    let hi = asin_point(x.hi_dyadic(), wp);
    Ok(Enclosure::from_dyadics(lo.lo_dyadic().clone(), hi.hi_dyadic().clone(), wp).with_precision(p))
}

/// theta - sin(theta), summed as a series below 1/4 where the direct
/// difference would cancel.
pub fn theta_minus_sin(x: &Enclosure) -> Enclosure {
    let p = x.precision();
    let wp = p.plus(GUARD_BITS);
    let quarter = Dyadic::new(BigInt::from(1), -2);
    if x.lo_dyadic().abs() <= quarter && x.hi_dyadic().abs() <= quarter {
        // increasing everywhere
        let lo = alternating_sum(x_minus_sin_terms(x.lo_dyadic(), wp), wp);
        let hi = alternating_sum(x_minus_sin_terms(x.hi_dyadic(), wp), wp);
        return Enclosure::from_dyadics(lo.lo_dyadic().clone(), hi.hi_dyadic().clone(), wp).with_precision(p);
    }
    let xw = x.with_precision(wp);
    xw.sub(&sin_wp(&xw, wp)).with_precision(p)
}

/// 1 - cos(x), summed as a series below 1/4.
pub fn one_minus_cos(x: &Enclosure) -> Enclosure {
    let p = x.precision();
    let wp = p.plus(GUARD_BITS);
    let quarter = Dyadic::new(BigInt::from(1), -2);
    if x.lo_dyadic().abs() <= quarter && x.hi_dyadic().abs() <= quarter {
        let at = |d: &Dyadic| alternating_sum(one_minus_cos_terms(d, wp), wp);
        let (a, b) = (at(x.lo_dyadic()), at(x.hi_dyadic()));
        let hi = Dyadic::max(a.hi_dyadic(), b.hi_dyadic());
        let lo = if x.contains_zero() { Dyadic::zero() } else { Dyadic::min(a.lo_dyadic(), b.lo_dyadic()) };
        return Enclosure::from_dyadics(lo, hi, wp).with_precision(p);
    }
    let xw = x.with_precision(wp);
    Enclosure::from_int(1, wp).sub(&cos_wp(&xw, wp)).with_precision(p)
}

fn point(d: &Dyadic, wp: Precision) -> Enclosure {
    Enclosure::from_dyadics(d.clone(), d.clone(), wp)
}

fn within_unit(x: &Enclosure) -> bool {
    let one = Dyadic::from_int(1);
    x.lo_dyadic() >= &one.neg() && x.hi_dyadic() <= &one
}

/// Sums an alternating series whose terms decrease in magnitude; stops once
/// a term drops below 2^-(bits+4) and adds that term's magnitude as slack.
fn alternating_sum(mut terms: impl Iterator<Item = Enclosure>, wp: Precision) -> Enclosure {
    let tol = Dyadic::new(BigInt::from(1), -(wp.bits() as i64) - 4);
    let mut sum = terms.next().expect("series has a leading term");
    for term in terms {
        let mag = term.abs().hi_dyadic().clone();
        if mag < tol {
            return Enclosure::around(&sum, &mag);
        }
        sum = sum.add(&term);
    }
    unreachable!("series iterators are infinite")
}

/// Terms t_0 = first, t_k = -t_{k-1} * x^2 / ((a+2k-1)(a+2k)).
fn ratio_terms(first: Enclosure, x2: Enclosure, offset: i64) -> impl Iterator<Item = Enclosure> {
    let mut k = 0i64;
    std::iter::successors(Some(first), move |t| {
        k += 1;
        let d = (offset + 2 * k - 1) * (offset + 2 * k);
        Some(t.mul(&x2).div_int(d).expect("positive divisor").neg())
    })
}

fn sin_terms(x: &Dyadic, wp: Precision) -> impl Iterator<Item = Enclosure> {
    let xe = point(x, wp);
    let x2 = xe.square();
    ratio_terms(xe, x2, 1)
}

fn cos_terms(x: &Dyadic, wp: Precision) -> impl Iterator<Item = Enclosure> {
    let x2 = point(x, wp).square();
    ratio_terms(Enclosure::from_int(1, wp), x2, 0)
}

fn x_minus_sin_terms(x: &Dyadic, wp: Precision) -> impl Iterator<Item = Enclosure> {
    let xe = point(x, wp);
    let x2 = xe.square();
    let first = xe.powi(3).div_int(6).expect("nonzero");
    ratio_terms(first, x2, 3)
}

fn one_minus_cos_terms(x: &Dyadic, wp: Precision) -> impl Iterator<Item = Enclosure> {
    let x2 = point(x, wp).square();
    let first = x2.div_int(2).expect("nonzero");
    ratio_terms(first, x2, 2)
}

fn sin_small(y: &Enclosure, wp: Precision) -> Enclosure {
    // increasing on [-1, 1]
    let lo = alternating_sum(sin_terms(y.lo_dyadic(), wp), wp);
    let hi = alternating_sum(sin_terms(y.hi_dyadic(), wp), wp);
    Enclosure::from_dyadics(lo.lo_dyadic().clone(), hi.hi_dyadic().clone(), wp)
}

fn cos_small(y: &Enclosure, wp: Precision) -> Enclosure {
    let at = |d: &Dyadic| alternating_sum(cos_terms(d, wp), wp);
    if !y.lo_dyadic().is_negative() {
        let (l, h) = (at(y.hi_dyadic()), at(y.lo_dyadic()));
        Enclosure::from_dyadics(l.lo_dyadic().clone(), h.hi_dyadic().clone(), wp)
    } else if !y.hi_dyadic().is_positive() {
        let (l, h) = (at(y.lo_dyadic()), at(y.hi_dyadic()));
        Enclosure::from_dyadics(l.lo_dyadic().clone(), h.hi_dyadic().clone(), wp)
    } else {
        let (a, b) = (at(y.lo_dyadic()), at(y.hi_dyadic()));
        Enclosure::from_dyadics(Dyadic::min(a.lo_dyadic(), b.lo_dyadic()), Dyadic::from_int(1), wp)
    }
}

/// x = k*pi/2 + y with |y| <= ~pi/4; returns (k mod 4, y).
fn reduce(x: &Enclosure, wp: Precision) -> (u8, Enclosure) {
    let half_pi = pi_reference(wp).mul_pow2(-1);
    let mid = x.lo_dyadic().add(x.hi_dyadic()).half();
    let k = mid.div(half_pi.lo_dyadic(), 64, Dir::Floor).round_to_integer();
    let y = x.sub(&half_pi.mul(&Enclosure::from_dyadics(Dyadic::from_int(k.clone()), Dyadic::from_int(k.clone()), wp)));
    let quadrant = k.mod_floor(&BigInt::from(4)).to_u8().expect("residue below 4");
    (quadrant, y)
}

fn unit_interval(wp: Precision) -> Enclosure {
    Enclosure::from_dyadics(Dyadic::from_int(-1), Dyadic::from_int(1), wp)
}

fn narrow(x: &Enclosure) -> bool {
    x.hi_dyadic().sub(x.lo_dyadic()) < Dyadic::new(BigInt::from(1), -2)
}

fn sin_wp(x: &Enclosure, wp: Precision) -> Enclosure {
    if within_unit(x) {
        return sin_small(x, wp);
    }
    if narrow(x) {
        let (q, y) = reduce(x, wp);
        if within_unit(&y) {
            return match q {
                0 => sin_small(&y, wp),
                1 => cos_small(&y, wp),
                2 => sin_small(&y, wp).neg(),
                _ => cos_small(&y, wp).neg(),
            };
        }
    }
    mean_value(x, wp, sin_wp)
}

fn cos_wp(x: &Enclosure, wp: Precision) -> Enclosure {
    if within_unit(x) {
        return cos_small(x, wp);
    }
    if narrow(x) {
        let (q, y) = reduce(x, wp);
        if within_unit(&y) {
            return match q {
                0 => cos_small(&y, wp),
                1 => sin_small(&y, wp).neg(),
                2 => cos_small(&y, wp).neg(),
                _ => sin_small(&y, wp),
            };
        }
    }
    mean_value(x, wp, cos_wp)
}

/// f(mid) +- radius, valid for functions with |f'| <= 1, clipped to [-1, 1].
fn mean_value(x: &Enclosure, wp: Precision, f: fn(&Enclosure, Precision) -> Enclosure) -> Enclosure {
    let mid = x.lo_dyadic().add(x.hi_dyadic()).half();
    let rad = x.hi_dyadic().sub(&mid);
    if rad.is_zero() {
        // reduction failed on a point; only the range is known
        return unit_interval(wp);
    }
    let around = Enclosure::around(&f(&point(&mid, wp), wp), &rad);
    around.intersect(&unit_interval(wp)).unwrap_or(around)
}

fn arctan_wp(x: &Enclosure, wp: Precision) -> Enclosure {
    // increasing
    let lo = atan_point(x.lo_dyadic(), wp);
    let hi = atan_point(x.hi_dyadic(), wp);
    Enclosure::from_dyadics(lo.lo_dyadic().clone(), hi.hi_dyadic().clone(), wp)
}

fn atan_point(x: &Dyadic, wp: Precision) -> Enclosure {
    if x.is_negative() {
        return atan_point(&x.neg(), wp).neg();
    }
    let one = Dyadic::from_int(1);
    if x > &one {
        let inv = point(x, wp).recip().expect("x > 1");
        return pi_reference(wp).mul_pow2(-1).sub(&arctan_wp(&inv, wp));
    }
    if x > &Dyadic::new(BigInt::from(1), -2) {
        // arctan x = 2 arctan(x / (1 + sqrt(1 + x^2)))
        let xe = point(x, wp);
        let denom =
            Enclosure::from_int(1, wp).add(&Enclosure::from_int(1, wp).add(&xe.square()).sqrt().expect("positive"));
        let half = xe.div(&denom).expect("positive denominator");
        return arctan_wp(&half, wp).mul_int(2);
    }
    let xe = point(x, wp);
    let x2 = xe.square();
    let mut k = 0i64;
    let mut power = xe.clone();
    let terms = std::iter::from_fn(move || {
        let term = power.div_int(2 * k + 1).expect("odd divisor");
        let term = if k % 2 == 1 { term.neg() } else { term };
        power = power.mul(&x2);
        k += 1;
        Some(term)
    });
    alternating_sum(terms, wp)
}

fn asin_point(x: &Dyadic, wp: Precision) -> Enclosure {
    if x.is_negative() {
        return asin_point(&x.neg(), wp).neg();
    }
    let xe = point(x, wp);
    // 1 - x^2 exactly; it is a dyadic
    let rest = Dyadic::from_int(1).sub(&x.mul(x));
    let cos = point(&rest, wp).sqrt().expect("|x| <= 1");
    if x <= &Dyadic::new(BigInt::from(3), -2) {
        arctan_wp(&xe.div(&cos).expect("cos > 0 below 3/4"), wp)
    } else {
        let t = cos.div(&xe).expect("x > 3/4");
        pi_reference(wp).mul_pow2(-1).sub(&arctan_wp(&t, wp))
    }
}

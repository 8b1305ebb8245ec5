use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::dyadic::{Dir, Dyadic};
use super::rational::{Rational, Rounding};
use crate::error::Error;

/// Number of significant bits kept in each enclosure endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 8;

    pub fn new(bits: u32) -> Result<Self, Error> {
        if bits < Self::MIN_BITS {
            return Err(Error::Domain(format!("precision must be at least {} bits, got {bits}", Self::MIN_BITS)));
        }
        Ok(Precision(bits))
    }

    /// Working precision for `digits` requested decimal digits:
    /// ceil(3.33 * digits) + 32 guard bits.
    pub fn for_digits(digits: u32) -> Self {
        let bits = (333 * digits as u64).div_ceil(100) as u32 + 32;
        Precision(bits.max(Self::MIN_BITS))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn plus(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints that is guaranteed to
/// contain the exact value it stands for. Every operation rounds outward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
    precision: Precision,
}

/// Outcome of a strict comparison between enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(String),
    Indeterminate(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Violated(a), _) => Verdict::Violated(a),
            (_, Verdict::Violated(b)) => Verdict::Violated(b),
            (Verdict::Indeterminate(a), _) => Verdict::Indeterminate(a),
            (_, Verdict::Indeterminate(b)) => Verdict::Indeterminate(b),
            _ => Verdict::Holds,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "pass",
            Verdict::Violated(_) => "FAIL",
            Verdict::Indeterminate(_) => "indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "pass"),
            Verdict::Violated(why) => write!(f, "FAIL ({why})"),
            Verdict::Indeterminate(why) => write!(f, "indeterminate ({why})"),
        }
    }
}

impl Enclosure {
    pub(crate) fn from_dyadics(lo: Dyadic, hi: Dyadic, precision: Precision) -> Self {
        debug_assert!(lo <= hi, "enclosure endpoints out of order");
        let bits = precision.bits();
        Enclosure { lo: lo.round(bits, Dir::Floor), hi: hi.round(bits, Dir::Ceil), precision }
    }

    pub(crate) fn lo_dyadic(&self) -> &Dyadic {
        &self.lo
    }

    pub(crate) fn hi_dyadic(&self) -> &Dyadic {
        &self.hi
    }

    pub fn from_int(n: i64, precision: Precision) -> Self {
        let d = Dyadic::from_int(n);
        Enclosure::from_dyadics(d.clone(), d, precision)
    }

    pub fn from_rational(r: &Rational, precision: Precision) -> Self {
        let bits = precision.bits();
        Enclosure {
            lo: Dyadic::from_rational(r, bits, Dir::Floor),
            hi: Dyadic::from_rational(r, bits, Dir::Ceil),
            precision,
        }
    }

    /// Smallest enclosure at `precision` containing `[lo, hi]`.
    pub fn from_bounds(lo: &Rational, hi: &Rational, precision: Precision) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::Domain(format!("enclosure bounds out of order: {lo} > {hi}")));
        }
        let bits = precision.bits();
        Ok(Enclosure {
            lo: Dyadic::from_rational(lo, bits, Dir::Floor),
            hi: Dyadic::from_rational(hi, bits, Dir::Ceil),
            precision,
        })
    }

    /// `p/q` as an enclosure; `q` must be nonzero.
    pub fn ratio(p: i64, q: i64, precision: Precision) -> Self {
        let r = Rational::new(p, q).expect("nonzero denominator");
        Enclosure::from_rational(&r, precision)
    }

    pub fn parse(s: &str, precision: Precision) -> Result<Self, Error> {
        Ok(Enclosure::from_rational(&s.parse()?, precision))
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn lo(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        self.lo.add(&self.hi).half().to_f64()
    }

    pub fn mid(&self) -> Rational {
        self.lo.add(&self.hi).half().to_rational()
    }

    pub fn width(&self) -> Rational {
        self.hi.sub(&self.lo).to_rational()
    }

    pub fn width_f64(&self) -> f64 {
        self.hi.sub(&self.lo).to_f64()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo() <= r && r <= &self.hi()
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Same value, endpoints cut outward to `precision`.
    pub fn with_precision(&self, precision: Precision) -> Enclosure {
        Enclosure::from_dyadics(self.lo.clone(), self.hi.clone(), precision)
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure::from_dyadics(
            Dyadic::min(&self.lo, &other.lo),
            Dyadic::max(&self.hi, &other.hi),
            self.precision.min(other.precision),
        )
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then(|| Enclosure { lo, hi, precision: self.precision.max(other.precision) })
    }

    /// Interval `[mid - rad, mid + rad]`; `rad` is taken by absolute value.
    pub(crate) fn around(mid: &Enclosure, rad: &Dyadic) -> Enclosure {
        let rad = rad.abs();
        Enclosure::from_dyadics(mid.lo.sub(&rad), mid.hi.add(&rad), mid.precision)
    }

    fn bits_with(&self, other: &Enclosure) -> (Precision, u32) {
        let p = self.precision.min(other.precision);
        (p, p.bits())
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        let (p, _) = self.bits_with(other);
        Enclosure::from_dyadics(self.lo.add(&other.lo), self.hi.add(&other.hi), p)
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        let (p, _) = self.bits_with(other);
        Enclosure::from_dyadics(self.lo.sub(&other.hi), self.hi.sub(&other.lo), p)
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let (p, _) = self.bits_with(other);
        let products = [self.lo.mul(&other.lo), self.lo.mul(&other.hi), self.hi.mul(&other.lo), self.hi.mul(&other.hi)];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Enclosure::from_dyadics(lo, hi, p)
    }

    pub fn div(&self, other: &Enclosure) -> Result<Enclosure, Error> {
        if other.contains_zero() {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        let (p, bits) = self.bits_with(other);
        let pairs = [(&self.lo, &other.lo), (&self.lo, &other.hi), (&self.hi, &other.lo), (&self.hi, &other.hi)];
        let lo = pairs.iter().map(|(a, b)| a.div(b, bits, Dir::Floor)).min().expect("four quotients");
        let hi = pairs.iter().map(|(a, b)| a.div(b, bits, Dir::Ceil)).max().expect("four quotients");
        Ok(Enclosure::from_dyadics(lo, hi, p))
    }

    pub fn arith(&self, other: &Enclosure, kind: ArithKind) -> Result<Enclosure, Error> {
        Ok(match kind {
            ArithKind::Add => self.add(other),
            ArithKind::Sub => self.sub(other),
            ArithKind::Mul => self.mul(other),
            ArithKind::Div => self.div(other)?,
        })
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: self.hi.neg(), hi: self.lo.neg(), precision: self.precision }
    }

    pub fn abs(&self) -> Enclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = Dyadic::max(&self.lo.neg(), &self.hi);
            Enclosure { lo: Dyadic::zero(), hi, precision: self.precision }
        }
    }

    /// x^2, tight when the interval straddles zero.
    pub fn square(&self) -> Enclosure {
        let a = self.abs();
        Enclosure::from_dyadics(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.precision)
    }

    pub fn powi(&self, e: u32) -> Enclosure {
        if e == 0 {
            return Enclosure::from_int(1, self.precision);
        }
        if e.is_multiple_of(2) {
            return self.square().powi(e / 2);
        }
        self.mul(&self.powi(e - 1))
    }

    pub fn mul_int(&self, k: i64) -> Enclosure {
        self.mul(&Enclosure::from_int(k, self.precision))
    }

    pub fn div_int(&self, k: i64) -> Result<Enclosure, Error> {
        self.div(&Enclosure::from_int(k, self.precision))
    }

    pub fn mul_rational(&self, r: &Rational) -> Enclosure {
        self.mul(&Enclosure::from_rational(r, self.precision))
    }

    pub fn mul_pow2(&self, k: i64) -> Enclosure {
        Enclosure::from_dyadics(self.lo.mul_pow2(k), self.hi.mul_pow2(k), self.precision)
    }

    pub fn recip(&self) -> Result<Enclosure, Error> {
        Enclosure::from_int(1, self.precision).div(self)
    }

    pub fn sqrt(&self) -> Result<Enclosure, Error> {
        if self.lo.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        let bits = self.precision.bits();
        Ok(Enclosure::from_dyadics(self.lo.sqrt(bits, Dir::Floor), self.hi.sqrt(bits, Dir::Ceil), self.precision))
    }

    /// Like [`Enclosure::sqrt`] but clamps a slightly negative lower end to
    /// zero; for radicands that are mathematically nonnegative.
    pub fn sqrt_nonneg(&self) -> Result<Enclosure, Error> {
        if self.hi.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        let lo = Dyadic::max(&self.lo, &Dyadic::zero());
        Enclosure { lo, hi: self.hi.clone(), precision: self.precision }.sqrt()
    }

    /// One unit in the last place at this precision, at the magnitude of
    /// the larger endpoint.
    pub(crate) fn ulp(&self) -> Dyadic {
        let m = Dyadic::max(&self.lo.abs(), &self.hi.abs());
        if m.is_zero() {
            return Dyadic::new(BigInt::from(1), -(self.precision.bits() as i64));
        }
        Dyadic::new(BigInt::from(1), m.magnitude() + 1 - self.precision.bits() as i64)
    }

    /// Certifies `self < other` with a gap of at least one ulp.
    pub fn strictly_less(&self, other: &Enclosure) -> Verdict {
        let ulp = Dyadic::max(&self.ulp(), &other.ulp());
        if self.hi.add(&ulp) <= other.lo {
            Verdict::Holds
        } else if self.lo >= other.hi {
            Verdict::Violated(format!("{} is not below {}", self.render(12), other.render(12)))
        } else {
            Verdict::Indeterminate(format!("{} and {} are not separated", self.render(12), other.render(12)))
        }
    }

    pub fn strictly_greater(&self, other: &Enclosure) -> Verdict {
        other.strictly_less(self)
    }

    /// Certifies `self <= other` (endpoint comparison, no margin).
    pub fn certainly_le(&self, other: &Enclosure) -> Verdict {
        if self.hi <= other.lo {
            Verdict::Holds
        } else if self.lo > other.hi {
            Verdict::Violated(format!("{} exceeds {}", self.render(12), other.render(12)))
        } else {
            Verdict::Indeterminate(format!("{} and {} overlap", self.render(12), other.render(12)))
        }
    }

    pub fn lo_decimal(&self, digits: usize) -> String {
        self.lo().to_decimal(digits, Rounding::Down)
    }

    pub fn hi_decimal(&self, digits: usize) -> String {
        self.hi().to_decimal(digits, Rounding::Up)
    }

    /// Longest common decimal prefix of the endpoints followed by the
    /// bracketed remaining digits, e.g. `3.14159265[33906, 37752]`.
    /// Endpoints are cut outward to `digits` fractional digits.
    pub fn render(&self, digits: usize) -> String {
        let lo = self.lo_decimal(digits);
        let hi = self.hi_decimal(digits);
        if lo == hi {
            return lo;
        }
        let common = lo.bytes().zip(hi.bytes()).take_while(|(a, b)| a == b).count();
        format!("{}[{}, {}]", &lo[..common], &lo[common..], &hi[common..])
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.precision.bits() as f64 * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{}", self.render(digits.max(1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

impl<'a> Add<&'a Enclosure> for &'a Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &'a Enclosure) -> Enclosure {
        Enclosure::add(self, rhs)
    }
}

impl<'a> Sub<&'a Enclosure> for &'a Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &'a Enclosure) -> Enclosure {
        Enclosure::sub(self, rhs)
    }
}

impl<'a> Mul<&'a Enclosure> for &'a Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &'a Enclosure) -> Enclosure {
        Enclosure::mul(self, rhs)
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn int(n: i64) -> Enclosure {
        Enclosure::from_int(n, p(64))
    }

    fn iv(lo: i64, hi: i64) -> Enclosure {
        Enclosure::from_bounds(&lo.into(), &hi.into(), p(64)).unwrap()
    }

    #[test]
    fn integer_sum_is_exact() {
        assert_eq!(&int(1) + &int(2), int(3));
    }

    #[test]
    fn product_of_extremes() {
        assert_eq!(iv(1, 2).mul(&iv(-1, 1)), iv(-2, 2));
    }

    #[test]
    fn third_at_eight_bits() {
        let third = Enclosure::from_int(1, p(8)).div(&Enclosure::from_int(3, p(8))).unwrap();
        assert!(third.contains(&Rational::new(1, 3).unwrap()));
        assert!(third.width() <= Rational::new(1, 128).unwrap());
    }

    #[test]
    fn division_by_zero_straddle() {
        assert_eq!(int(1).div(&iv(-1, 1)), Err(Error::DivisionByIntervalContainingZero));
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(int(4).sqrt().unwrap(), int(2));
        assert_eq!(int(0).sqrt().unwrap(), int(0));
        let r2 = int(2).sqrt().unwrap();
        let lo: Rational = "1.41421356237309504".parse().unwrap();
        let hi: Rational = "1.41421356237309505".parse().unwrap();
        assert!(lo <= r2.lo() && r2.hi() <= hi);
        assert!(r2.width() < Rational::new(1, 1i64 << 60).unwrap());
        assert_eq!(iv(-1, 4).sqrt(), Err(Error::NegativeRadicand));
    }

    #[test]
    fn precision_policy() {
        assert_eq!(Precision::for_digits(10).bits(), 34 + 32);
        assert!(Precision::new(7).is_err());
    }

    #[test]
    fn render_common_prefix() {
        let lo: Rational = "3.1415926533906".parse().unwrap();
        let hi: Rational = "3.1415926537752".parse().unwrap();
        let e = Enclosure::from_bounds(&lo, &hi, p(200)).unwrap();
        assert_eq!(e.render(13), "3.141592653[3905, 7753]");
        assert_eq!(int(3).render(4), "3.0000");
    }

    #[test]
    fn square_straddling_zero() {
        assert_eq!(iv(-2, 1).square(), iv(0, 4));
        assert_eq!(iv(-2, 1).mul(&iv(-2, 1)), iv(-2, 4));
    }

    #[test]
    fn strictness_needs_a_gap() {
        let a = int(1);
        let b = int(1);
        assert!(matches!(a.strictly_less(&b), Verdict::Violated(_)));
        assert!(matches!(iv(0, 2).strictly_less(&iv(1, 3)), Verdict::Indeterminate(_)));
        assert!(int(1).strictly_less(&int(2)).holds());
    }
}

//! Binary fractions `mant * 2^exp`, the endpoint representation of every
//! enclosure. Addition, subtraction and multiplication are exact; division,
//! square root and precision cuts take an explicit rounding direction.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Dir {
    Floor,
    Ceil,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// floor(log2 |x|); meaningless for zero.
    pub fn magnitude(&self) -> i64 {
        self.mant.bits() as i64 + self.exp - 1
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &other.mant << (other.exp - exp) as usize;
        Dyadic::new(a + b, exp)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    /// Cut to at most `bits` significant bits.
    pub fn round(&self, bits: u32, dir: Dir) -> Self {
        let len = self.mant.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let shift = (len - bits as u64) as usize;
        let mant = shift_round(&self.mant, shift, dir);
        Dyadic::new(mant, self.exp + shift as i64)
    }

    /// `self / other` cut to `bits` significant bits. `other` must be nonzero.
    pub fn div(&self, other: &Self, bits: u32, dir: Dir) -> Self {
        debug_assert!(!other.is_zero());
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient carries > bits bits.
        let shift = bits as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let (num, den) = if shift >= 0 {
            (&self.mant << shift as usize, other.mant.clone())
        } else {
            (self.mant.clone(), &other.mant << (-shift) as usize)
        };
        let q = match dir {
            Dir::Floor => num.div_floor(&den),
            Dir::Ceil => num.div_ceil(&den),
        };
        Dyadic::new(q, self.exp - other.exp - shift).round(bits, dir)
    }

    /// sqrt(self) cut to `bits` significant bits; `self` must be >= 0.
    pub fn sqrt(&self, bits: u32, dir: Dir) -> Self {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * bits as i64 + 4;
        let mut k = (want - self.mant.bits() as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let scaled = &self.mant << k as usize;
        let root = scaled.sqrt();
        let exact = &root * &root == scaled;
        let root = match dir {
            Dir::Ceil if !exact => root + 1,
            _ => root,
        };
        Dyadic::new(root, (self.exp - k) / 2).round(bits, dir)
    }

    pub fn from_rational(r: &Rational, bits: u32, dir: Dir) -> Self {
        let n = Dyadic::from_int(r.numer().clone());
        if r.denom().is_one() {
            return n.round(bits, dir);
        }
        let d = Dyadic::from_int(r.denom().clone());
        n.div(&d, bits, dir)
    }

    pub fn to_rational(&self) -> Rational {
        let r = if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        };
        Rational::from_inner(r)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_integer(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let shift = (-self.exp) as usize;
        let half = BigInt::one() << (shift - 1);
        if self.is_negative() {
            -((-&self.mant + half) >> shift)
        } else {
            (&self.mant + half) >> shift
        }
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

fn shift_round(m: &BigInt, shift: usize, dir: Dir) -> BigInt {
    // `>>` on BigInt rounds toward negative infinity.
    match dir {
        Dir::Floor => m >> shift,
        Dir::Ceil => -((-m) >> shift),
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => return a.cmp(&b),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &other.mant << (other.exp - exp) as usize;
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(n: i64) -> Dyadic {
        Dyadic::from_int(n)
    }

    #[test]
    fn negative_shift_floors() {
        assert_eq!(shift_round(&BigInt::from(-5), 1, Dir::Floor), BigInt::from(-3));
        assert_eq!(shift_round(&BigInt::from(-5), 1, Dir::Ceil), BigInt::from(-2));
        assert_eq!(shift_round(&BigInt::from(5), 1, Dir::Ceil), BigInt::from(3));
    }

    #[test]
    fn division_brackets_third() {
        let lo = dy(1).div(&dy(3), 8, Dir::Floor);
        let hi = dy(1).div(&dy(3), 8, Dir::Ceil);
        let third = Rational::new(1, 3).unwrap();
        assert!(lo.to_rational() < third && third < hi.to_rational());
        // one unit in the last of 8 places at magnitude 2^-2
        assert_eq!(hi.sub(&lo), Dyadic::new(BigInt::one(), -9));
    }

    #[test]
    fn sqrt_exact_and_directed() {
        assert_eq!(dy(4).sqrt(16, Dir::Floor), dy(2));
        assert_eq!(dy(4).sqrt(16, Dir::Ceil), dy(2));
        let lo = dy(2).sqrt(64, Dir::Floor);
        let hi = dy(2).sqrt(64, Dir::Ceil);
        assert!(lo.mul(&lo) < dy(2) && dy(2) < hi.mul(&hi));
        assert!(hi.sub(&lo) <= Dyadic::new(BigInt::one(), -63));
        // odd exponent input
        let quarter_ish = Dyadic::new(BigInt::from(1), -3);
        let s = quarter_ish.sqrt(40, Dir::Floor);
        assert!(s.mul(&s) <= quarter_ish);
    }

    #[test]
    fn ordering_across_exponents() {
        let a = Dyadic::new(BigInt::from(3), -1);
        let b = dy(1);
        assert!(a > b);
        assert!(a.neg() < b.neg());
        assert!(Dyadic::zero() < Dyadic::new(BigInt::one(), -1000));
        assert_eq!(Dyadic::new(BigInt::from(4), -2), dy(1));
    }

    #[test]
    fn round_to_integer_ties_away() {
        assert_eq!(Dyadic::new(BigInt::from(5), -1).round_to_integer(), BigInt::from(3));
        assert_eq!(Dyadic::new(BigInt::from(-5), -1).round_to_integer(), BigInt::from(-3));
        assert_eq!(Dyadic::new(BigInt::from(9), -3).round_to_integer(), BigInt::from(1));
    }
}

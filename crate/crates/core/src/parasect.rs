//! A circular segment against the parabolic segment through its vertex and
//! barycenter.
//!
//! Names follow the parabola picture: `b` is the segment's *height* (the
//! `a` of [`crate::barycenter`]) and `a_half` is half the chord. With the
//! origin at the chord's midpoint the parabola is
//! `y = b - b x^2 / (a^2 + (2/5) b^2)`.

use crate::error::Error;
use crate::exact::{arcsin, pi_reference, Enclosure, Precision, Rational, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolaCircleConfig {
    pub r: Enclosure,
    /// Segment height.
    pub b: Enclosure,
    /// Half chord `sqrt(2rb - b^2)`.
    pub a_half: Enclosure,
    /// Half width where the parabola crosses the circle, `(sqrt 3/5) sqrt(5a^2 + 2b^2)`.
    pub p: Enclosure,
    /// Half width of the parabola's base, `sqrt(10rb - 3b^2)/sqrt 5`.
    pub c: Enclosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaDifferenceReport {
    /// `f(b/r) r^2`, negative.
    pub sliver_minus_wedge: Enclosure,
    pub bound_check: Verdict,
}

pub fn configure(r: &Rational, b: &Rational, precision: Precision) -> Result<ParabolaCircleConfig, Error> {
    if !b.is_positive() || b > r {
        return Err(Error::Domain(format!("height {b} must lie in (0, r] with r = {r}")));
    }
    let wp = precision;
    let (r, b) = (Enclosure::from_rational(r, wp), Enclosure::from_rational(b, wp));
    let rb = r.mul(&b);
    let b2 = b.square();
    let a_sq = rb.mul_int(2).sub(&b2);
    let a_half = a_sq.sqrt_nonneg()?;
    let sqrt3 = Enclosure::from_int(3, wp).sqrt()?;
    let sqrt5 = Enclosure::from_int(5, wp).sqrt()?;
    let p = sqrt3.mul(&a_sq.mul_int(5).add(&b2.mul_int(2)).sqrt_nonneg()?).div_int(5)?;
    let c = rb.mul_int(10).sub(&b2.mul_int(3)).sqrt_nonneg()?.div(&sqrt5)?;
    Ok(ParabolaCircleConfig { r, b, a_half, p, c })
}

fn unit(p: Precision) -> Enclosure {
    Enclosure::from_int(0, p).hull(&Enclosure::from_int(1, p))
}

/// `(4/3) b c`, four thirds of the inscribed triangle on the same base.
pub fn parabolic_segment_area(cfg: &ParabolaCircleConfig) -> Enclosure {
    cfg.b.mul(&cfg.c).mul_int(4).div_int(3).expect("nonzero")
}

/// `pi r^2/2 - r^2 arcsin((r - b)/r) - (r - b) sqrt(2rb - b^2)`.
pub fn circular_segment_area(cfg: &ParabolaCircleConfig) -> Enclosure {
    let r = &cfg.r;
    let r2 = r.square();
    let rest = r.sub(&cfg.b);
    let half_disc = pi_reference(r.precision()).mul(&r2).mul_pow2(-1);
    let ratio = rest.div(r).expect("r > 0").intersect(&unit(r.precision())).expect("0 <= (r - b)/r <= 1");
    let asin = arcsin(&ratio).expect("argument in [0, 1]");
    half_disc.sub(&r2.mul(&asin)).sub(&rest.mul(&cfg.a_half))
}

/// `pi/4 - (1/2) arcsin(1 - x) - (1/2)(1 - x) sqrt(2x - x^2) - (2x/(3 sqrt 5)) sqrt(10x - 3x^2)`
/// for `x` in `(0, 1]`.
pub fn f_of_x(x: &Enclosure) -> Result<Enclosure, Error> {
    let p = x.precision();
    let one = Enclosure::from_int(1, p);
    if !x.is_positive() || x.lo() > Rational::one() {
        return Err(Error::Domain(format!("f needs x in (0, 1], got {x}")));
    }
    let x = x.intersect(&unit(p)).expect("x meets (0, 1]");
    let rest = one.sub(&x);
    let asin = arcsin(&rest)?;
    let root = x.mul_int(2).sub(&x.square()).sqrt_nonneg()?;
    let sqrt5 = Enclosure::from_int(5, p).sqrt()?;
    let para = x.mul_int(2).mul(&x.mul_int(10).sub(&x.square().mul_int(3)).sqrt_nonneg()?).div(&sqrt5.mul_int(3))?;
    Ok(pi_reference(p).mul_pow2(-2).sub(&asin.mul_pow2(-1)).sub(&rest.mul(&root).mul_pow2(-1)).sub(&para))
}

/// `2 sqrt 35 / 15 - pi/4`, the magnitude of `f(1)`.
pub fn f_one_magnitude(p: Precision) -> Enclosure {
    Enclosure::from_int(35, p)
        .sqrt()
        .expect("positive")
        .mul_int(2)
        .div_int(15)
        .expect("nonzero")
        .sub(&pi_reference(p).mul_pow2(-2))
}

pub fn area_difference_report(cfg: &ParabolaCircleConfig) -> Result<AreaDifferenceReport, Error> {
    let p = cfg.r.precision();
    let x = cfg.b.div(&cfg.r)?;
    let r2 = cfg.r.square();
    let value = f_of_x(&x)?.mul(&r2);
    let tolerance = Enclosure::from_int(1_000_001, p).div_int(1_000_000)?;
    let exact_cap = f_one_magnitude(p).mul(&r2).mul(&tolerance);
    let loose_cap = r2.div_int(290)?;
    let magnitude = value.abs();
    let bound_check = magnitude.strictly_less(&exact_cap).and(magnitude.strictly_less(&loose_cap));
    Ok(AreaDifferenceReport { sliver_minus_wedge: value, bound_check })
}

/// `(10 - 4x)^2 - 5(2 - x)(10 - 3x) - x^2`, identically zero.
pub fn derivative_identity_residual(x: &Rational) -> Rational {
    let ten = Rational::from(10);
    let lhs = (&ten - &(&Rational::from(4) * x)).pow(2);
    let rhs = &(&Rational::from(5) * &(&Rational::from(2) - x)) * &(&ten - &(&Rational::from(3) * x));
    &(&lhs - &rhs) - &x.pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn semicircle_configuration() {
        let cfg = configure(&Rational::one(), &Rational::one(), p(96)).unwrap();
        assert!(cfg.a_half.is_point() && cfg.a_half.contains(&Rational::one()));
        assert!(cfg.c.lo() > q("1.18321595") && cfg.c.hi() < q("1.18321596"));
        assert!(cfg.p.lo() > q("0.91651513") && cfg.p.hi() < q("0.91651514"));
        let para = parabolic_segment_area(&cfg);
        assert!(para.lo() > q("1.57762127") && para.hi() < q("1.57762128"));
        let circ = circular_segment_area(&cfg);
        assert!(circ.overlaps(&pi_reference(p(96)).mul_pow2(-1)));
    }

    #[test]
    fn ordering_and_domain() {
        let cfg = configure(&Rational::one(), &q("0.5"), p(96)).unwrap();
        assert!(cfg.p.strictly_less(&cfg.a_half).holds() && cfg.a_half.strictly_less(&cfg.c).holds());
        let area = circular_segment_area(&cfg);
        assert!(area.lo() > q("0.61418") && area.hi() < q("0.61419"));
        assert!(configure(&Rational::one(), &q("1.5"), p(96)).is_err());
        assert!(configure(&Rational::one(), &Rational::zero(), p(96)).is_err());
    }

    #[test]
    fn f_values() {
        let prec = p(96);
        let f1 = f_of_x(&Enclosure::from_int(1, prec)).unwrap();
        assert!(f1.overlaps(&f_one_magnitude(prec).neg()));
        assert!(f1.lo() > q("-0.0034125") && f1.hi() < q("-0.0034124"));
        let half = f_of_x(&Enclosure::ratio(1, 2, prec)).unwrap();
        assert!(half.lo() > q("-0.00022573") && half.hi() < q("-0.00022572"));
        let small = f_of_x(&Enclosure::parse("0.000001", prec).unwrap()).unwrap();
        assert!(small.abs().hi() < q("0.0000000001"));
        assert!(f_of_x(&Enclosure::from_int(0, prec)).is_err());
        assert!(f_of_x(&Enclosure::from_int(2, prec)).is_err());
    }

    #[test]
    fn difference_report_scales() {
        let prec = p(96);
        let one = area_difference_report(&configure(&Rational::one(), &Rational::one(), prec).unwrap()).unwrap();
        assert!(one.bound_check.holds());
        let two = area_difference_report(&configure(&Rational::from(2), &Rational::from(2), prec).unwrap()).unwrap();
        assert!(two.sliver_minus_wedge.overlaps(&one.sliver_minus_wedge.mul_int(4)));
        let thin = area_difference_report(&configure(&Rational::one(), &q("0.3"), prec).unwrap()).unwrap();
        assert!(thin.sliver_minus_wedge.is_negative() && thin.sliver_minus_wedge.lo() > q("-0.0001"));
    }

    #[test]
    fn areas_differ_by_twice_f() {
        let prec = p(96);
        for (r, b) in [("1", "0.25"), ("3", "1.7"), ("0.5", "0.5")] {
            let cfg = configure(&q(r), &q(b), prec).unwrap();
            let diff = circular_segment_area(&cfg).sub(&parabolic_segment_area(&cfg));
            let f = f_of_x(&cfg.b.div(&cfg.r).unwrap()).unwrap().mul(&cfg.r.square()).mul_int(2);
            assert!(diff.overlaps(&f), "r={r} b={b}");
        }
    }

    #[test]
    fn polynomial_identity() {
        for s in ["0", "1", "-7/3", "22/7", "123456789/1000"] {
            assert!(derivative_identity_residual(&q(s)).is_zero());
        }
    }
}

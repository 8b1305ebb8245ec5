//! Estimators of pi from polygon ladders, and their arc-level forms.
//!
//! Polygon-level estimators come in two shapes. Single-rung methods
//! (`archimedes`, `snell_ix`, `snell`) read rung `k` and are labeled with its
//! side count. Two-rung methods read rungs `k-1` and `k` (the n- and
//! 2n-gons, `k >= 1`) and are labeled with the smaller side count `n`.
//!
//! With `c = C_n` and `b = C_2n` the two-rung formulas are
//!
//! ```text
//! huygens_vii          b + (b - c)/3
//! huygens_xvi_upper    b + ((b - c)/3) (4b + c)/(2b + 3c)
//! huygens_final_lower  c + (10/3)(b^2 - c^2) / (2b + 3c + (8/9)(b - c)^2/(2b + 3c))
//! schuh27_lower        same with 27 in place of 8
//! ```
//!
//! and `cusa` at label n is `2n * 3 sin x / (2 + cos x)` with `x = pi/(2n)`,
//! read off the 2n-gon through `sin x = C_2n / 2n`, `cos x = C_2n / C'_2n`.
//!
//! Arc-level forms take an angle `x` at unit radius and use the chord
//! `b = 2 sin(x/2)` and sine `c = sin x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::Error;
use crate::exact::{cos, pi_reference, sin, tan, Enclosure, Precision, Rational, Verdict};
use crate::polygon::PolygonLadder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodTag {
    Archimedes,
    Cusa,
    Snell,
    HuygensVii,
    SnellIx,
    HuygensXviUpper,
    HuygensFinalLower,
    Schuh27Lower,
    Combined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
            Side::TwoSided => "two_sided",
        })
    }
}

impl MethodTag {
    pub const ALL: [MethodTag; 9] = [
        MethodTag::Archimedes,
        MethodTag::Cusa,
        MethodTag::Snell,
        MethodTag::HuygensVii,
        MethodTag::SnellIx,
        MethodTag::HuygensXviUpper,
        MethodTag::HuygensFinalLower,
        MethodTag::Schuh27Lower,
        MethodTag::Combined,
    ];

    /// Columns of the ladder table, in print order.
    pub const TABLE: [MethodTag; 7] = [
        MethodTag::Archimedes,
        MethodTag::HuygensVii,
        MethodTag::Cusa,
        MethodTag::SnellIx,
        MethodTag::HuygensXviUpper,
        MethodTag::HuygensFinalLower,
        MethodTag::Schuh27Lower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodTag::Archimedes => "archimedes",
            MethodTag::Cusa => "cusa",
            MethodTag::Snell => "snell",
            MethodTag::HuygensVii => "huygens-vii",
            MethodTag::SnellIx => "snell-ix",
            MethodTag::HuygensXviUpper => "huygens-xvi-upper",
            MethodTag::HuygensFinalLower => "huygens-final-lower",
            MethodTag::Schuh27Lower => "schuh27-lower",
            MethodTag::Combined => "combined",
        }
    }

    pub fn side(self) -> Side {
        match self {
            MethodTag::Archimedes | MethodTag::Combined => Side::TwoSided,
            MethodTag::Cusa | MethodTag::HuygensVii | MethodTag::HuygensFinalLower | MethodTag::Schuh27Lower => {
                Side::Lower
            }
            MethodTag::Snell | MethodTag::SnellIx | MethodTag::HuygensXviUpper => Side::Upper,
        }
    }

    /// Whether the method reads the n- and 2n-gon (rungs k-1 and k).
    pub fn two_rung(self) -> bool {
        !matches!(self, MethodTag::Archimedes | MethodTag::SnellIx | MethodTag::Snell)
    }

    /// Rung that the table row labeled by rung `label` evaluates.
    pub fn rung_for_label(self, label: usize) -> usize {
        if self.two_rung() {
            label + 1
        } else {
            label
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    /// Accepts the printed names with `-` or `_`, plus `schuh27` and
    /// `huygens-vii-lower`/`snell-ix-upper` spellings.
    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let tag = match key.as_str() {
            "archimedes" => MethodTag::Archimedes,
            "cusa" | "cusa-lower" => MethodTag::Cusa,
            "snell" | "snell-upper" => MethodTag::Snell,
            "huygens-vii" | "huygens-vii-lower" => MethodTag::HuygensVii,
            "snell-ix" | "snell-ix-upper" => MethodTag::SnellIx,
            "huygens-xvi-upper" | "huygens-xvi" => MethodTag::HuygensXviUpper,
            "huygens-final-lower" | "huygens-final" => MethodTag::HuygensFinalLower,
            "schuh27-lower" | "schuh27" => MethodTag::Schuh27Lower,
            "combined" => MethodTag::Combined,
            _ => return Err(Error::Parse(format!("unknown method {s:?}"))),
        };
        Ok(tag)
    }
}

/// One estimator evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub method: MethodTag,
    pub n: u64,
    pub value: Enclosure,
    pub side: Side,
    pub width: Rational,
    pub correct_digits: i64,
    pub trig_seeded: bool,
}

pub fn archimedes(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let r = l.rung(k)?;
    Ok(r.insc.hull(&r.circ))
}

pub fn huygens_vii_lower(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let (c, b) = perimeters(l, k)?;
    Ok(vii_form(&b, &c))
}

pub fn cusa_lower(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let (_, upper) = l.pair(k)?;
    let two_n = upper.n as i64;
    let s = upper.insc.div_int(two_n)?;
    let c = upper.insc.div(&upper.circ)?;
    Ok(cusa_form(&s, &c)?.mul_int(two_n))
}

pub fn snell_ix_upper(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let r = l.rung(k)?;
    r.insc.mul_int(2).add(&r.circ).div_int(3)
}

/// Snell's polygon bound `n (2 sin x + tan x)/3`, `x = pi/n`, evaluated with
/// the trig enclosures instead of the ladder.
pub fn snell_upper(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let r = l.rung(k)?;
    let p = l.precision();
    let x = pi_reference(p.plus(16)).div_int(r.n as i64)?;
    Ok(snell_form(&x)?.mul_int(r.n as i64).with_precision(p))
}

pub fn huygens_xvi_upper(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let (c, b) = perimeters(l, k)?;
    xvi_form(&b, &c)
}

/// The same bound as [`huygens_xvi_upper`] in the form
/// `c + (10/3)(b^2 - c^2)/(2b + 3c)`.
pub fn huygens_xvi_upper_alt(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let (c, b) = perimeters(l, k)?;
    xvi_alt_form(&b, &c)
}

pub fn huygens_final_lower(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let (c, b) = perimeters(l, k)?;
    final_form(&b, &c, 8)
}

pub fn schuh27_lower(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let (c, b) = perimeters(l, k)?;
    final_form(&b, &c, 27)
}

pub fn combined(l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    let lower = huygens_final_lower(l, k)?;
    let upper = huygens_xvi_upper(l, k)?;
    Ok(lower.hull(&upper))
}

/// Polygon-level value of `method` at rung `k`.
pub fn polygon_bound(method: MethodTag, l: &PolygonLadder, k: usize) -> Result<Enclosure, Error> {
    match method {
        MethodTag::Archimedes => archimedes(l, k),
        MethodTag::Cusa => cusa_lower(l, k),
        MethodTag::Snell => snell_upper(l, k),
        MethodTag::HuygensVii => huygens_vii_lower(l, k),
        MethodTag::SnellIx => snell_ix_upper(l, k),
        MethodTag::HuygensXviUpper => huygens_xvi_upper(l, k),
        MethodTag::HuygensFinalLower => huygens_final_lower(l, k),
        MethodTag::Schuh27Lower => schuh27_lower(l, k),
        MethodTag::Combined => combined(l, k),
    }
}

/// Side count that labels `method` evaluated at rung `k`.
pub fn label_n(method: MethodTag, l: &PolygonLadder, k: usize) -> Result<u64, Error> {
    if method.two_rung() {
        Ok(l.pair(k)?.0.n)
    } else {
        Ok(l.rung(k)?.n)
    }
}

/// Full row for `method` at rung `k`.
pub fn evaluate(method: MethodTag, l: &PolygonLadder, k: usize) -> Result<BoundsRow, Error> {
    let value = polygon_bound(method, l, k)?;
    let pi = pi_reference(l.precision().plus(64));
    Ok(BoundsRow {
        method,
        n: label_n(method, l, k)?,
        side: method.side(),
        width: value.width(),
        correct_digits: correct_digits(&value, &pi),
        trig_seeded: l.trig_seeded(),
        value,
    })
}

/// Rows for every method in [`MethodTag::TABLE`] labeled by rungs
/// `0..labels`; the ladder needs one rung beyond the last label.
pub fn table(l: &PolygonLadder, labels: usize) -> Result<Vec<BoundsRow>, Error> {
    let mut rows = Vec::with_capacity(labels * MethodTag::TABLE.len());
    for label in 0..labels {
        for method in MethodTag::TABLE {
            rows.push(evaluate(method, l, method.rung_for_label(label))?);
        }
    }
    Ok(rows)
}

/// `floor(-log10 d)` where `d` is the larger distance from an endpoint of
/// `value` to pi. `pi` must be much narrower than `value`.
pub fn correct_digits(value: &Enclosure, pi: &Enclosure) -> i64 {
    let d_lo = value.lo() - pi.mid();
    let d_hi = value.hi() - pi.mid();
    let d = if d_lo.abs() > d_hi.abs() { d_lo.abs() } else { d_hi.abs() };
    floor_neg_log10(&d)
}

/// `floor(-log10 d)` for `d > 0`, exact; `i64::MAX` for `d = 0`.
pub fn floor_neg_log10(d: &Rational) -> i64 {
    if d.is_zero() {
        return i64::MAX;
    }
    let ten = BigInt::from(10);
    // d in [10^-(k+1), 10^-k)  <=>  result k
    let approx = -(d.numer().bits() as f64 - d.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut k = approx.floor() as i64 - 1;
    let scaled = |k: i64| -> Rational {
        if k >= 0 {
            d * &Rational::from(ten.pow(k as u32))
        } else {
            d / &Rational::from(ten.pow((-k) as u32))
        }
    };
    while scaled(k) > Rational::one() {
        k -= 1;
    }
    while scaled(k + 1) <= Rational::one() {
        k += 1;
    }
    k
}

/// Sidedness of `value` against pi for the method's declared side.
pub fn sidedness(side: Side, value: &Enclosure, pi: &Enclosure) -> Verdict {
    match side {
        Side::Lower => value.strictly_less(pi),
        Side::Upper => value.strictly_greater(pi),
        Side::TwoSided => {
            if value.contains_enclosure(pi) {
                Verdict::Holds
            } else if value.overlaps(pi) {
                Verdict::Indeterminate(format!("{} only partly covers pi", value.render(12)))
            } else {
                Verdict::Violated(format!("{} misses pi", value.render(12)))
            }
        }
    }
}

fn perimeters(l: &PolygonLadder, k: usize) -> Result<(Enclosure, Enclosure), Error> {
    let (lower, upper) = l.pair(k)?;
    Ok((lower.insc.clone(), upper.insc.clone()))
}

fn vii_form(b: &Enclosure, c: &Enclosure) -> Enclosure {
    let diff = b.sub(c);
    b.add(&diff.div_int(3).expect("nonzero"))
}

fn xvi_form(b: &Enclosure, c: &Enclosure) -> Result<Enclosure, Error> {
    let third = b.sub(c).div_int(3)?;
    let num = b.mul_int(4).add(c);
    let den = b.mul_int(2).add(&c.mul_int(3));
    Ok(b.add(&third.mul(&num).div(&den)?))
}

fn xvi_alt_form(b: &Enclosure, c: &Enclosure) -> Result<Enclosure, Error> {
    let den = b.mul_int(2).add(&c.mul_int(3));
    let diff_sq = b.square().sub(&c.square());
    Ok(c.add(&diff_sq.mul_int(10).div(&den.mul_int(3))?))
}

/// `c + (10/3)(b^2 - c^2)/(2b + 3c + (k/9)(b - c)^2/(2b + 3c))`.
fn final_form(b: &Enclosure, c: &Enclosure, k: i64) -> Result<Enclosure, Error> {
    let base = b.mul_int(2).add(&c.mul_int(3));
    let corr = b.sub(c).square().mul_int(k).div(&base.mul_int(9))?;
    let diff_sq = b.square().sub(&c.square());
    Ok(c.add(&diff_sq.mul_int(10).div(&base.add(&corr).mul_int(3))?))
}

fn cusa_form(s: &Enclosure, c: &Enclosure) -> Result<Enclosure, Error> {
    s.mul_int(3).div(&c.add(&Enclosure::from_int(2, c.precision())))
}

fn snell_form(x: &Enclosure) -> Result<Enclosure, Error> {
    sin(x).mul_int(2).add(&tan(x)?).div_int(3)
}

/// Arc-level bound on the arc length `x` (unit radius) for `method`.
///
/// Domains are open: `(0, pi)` for the chord/sine forms and for the
/// tangent/sine form of [`MethodTag::SnellIx`], `(0, pi/2]` for Cusa and
/// `(0, pi/2)` for Snell.
pub fn arc_bounds(x: &Enclosure, method: MethodTag) -> Result<Enclosure, Error> {
    let p = x.precision();
    let pi = pi_reference(p.plus(8));
    let zero = Enclosure::from_int(0, p);
    if !x.strictly_greater(&zero).holds() {
        return Err(Error::Domain(format!("arc {x} must be positive")));
    }
    let half_pi = pi.mul_pow2(-1);
    match method {
        MethodTag::Cusa => {
            if x.lo() > half_pi.hi() {
                return Err(Error::Domain(format!("Cusa form needs x <= pi/2, got {x}")));
            }
            cusa_form(&sin(x), &cos(x))
        }
        MethodTag::Snell => {
            if !x.strictly_less(&half_pi).holds() {
                return Err(Error::Domain(format!("Snell form needs x < pi/2, got {x}")));
            }
            snell_form(x)
        }
        _ => {
            if !x.strictly_less(&pi).holds() {
                return Err(Error::Domain(format!("arc form needs x < pi, got {x}")));
            }
            let half = x.mul_pow2(-1);
            match method {
                MethodTag::Archimedes => Ok(sin(&half).mul_int(2).hull(&tan(&half)?.mul_int(2))),
                MethodTag::SnellIx => Ok(tan(&half)?.mul_int(4).add(&sin(x)).div_int(3)?),
                other => chord_sine_bound(&sin(&half).mul_int(2), &sin(x), other),
            }
        }
    }
}

/// Two-rung formulas applied directly to a chord `b` and sine `c`. At
/// `b = 2`, `c = 0` (the semicircle) they give 30/11 and 10/3.
pub fn chord_sine_bound(b: &Enclosure, c: &Enclosure, method: MethodTag) -> Result<Enclosure, Error> {
    match method {
        MethodTag::HuygensVii => Ok(vii_form(b, c)),
        MethodTag::HuygensXviUpper => xvi_form(b, c),
        MethodTag::HuygensFinalLower => final_form(b, c, 8),
        MethodTag::Schuh27Lower => final_form(b, c, 27),
        MethodTag::Combined => Ok(final_form(b, c, 8)?.hull(&xvi_form(b, c)?)),
        other => Err(Error::Domain(format!("{other} has no chord/sine form"))),
    }
}

/// `(30/11, 10/3)`: the final lower and XVI upper forms at the semicircle,
/// `x = pi`, `b = 2`, `c = 0`.
pub fn semicircle_limits(p: Precision) -> (Enclosure, Enclosure) {
    let b = Enclosure::from_int(2, p);
    let c = Enclosure::from_int(0, p);
    let lower = final_form(&b, &c, 8).expect("positive denominator");
    let upper = xvi_form(&b, &c).expect("positive denominator");
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::ladder;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn within(e: &Enclosure, lo: &str, hi: &str) -> bool {
        e.lo() > q(lo) && e.hi() < q(hi)
    }

    #[test]
    fn hexagon_values() {
        let l = ladder(6, 2, p(96)).unwrap();
        let arch = archimedes(&l, 0).unwrap();
        assert_eq!(arch.lo(), Rational::from(3));
        assert!(arch.hi() > q("3.46410161") && arch.hi() < q("3.46410162"));
        assert!(within(&huygens_vii_lower(&l, 1).unwrap(), "3.14110472", "3.14110473"));
        assert!(within(&snell_ix_upper(&l, 1).unwrap(), "3.14234913", "3.14234914"));
        assert!(within(&huygens_xvi_upper(&l, 1).unwrap(), "3.14159555", "3.14159556"));
        assert!(within(&huygens_final_lower(&l, 1).unwrap(), "3.14158946", "3.14158947"));
        assert!(within(&cusa_lower(&l, 1).unwrap(), "3.14150999", "3.14151000"));
        let schuh = schuh27_lower(&l, 1).unwrap();
        assert!(schuh.strictly_less(&huygens_final_lower(&l, 1).unwrap()).holds());
    }

    #[test]
    fn two_rung_methods_need_a_pair() {
        let l = ladder(6, 1, p(64)).unwrap();
        for m in MethodTag::ALL.into_iter().filter(|m| m.two_rung()) {
            assert!(matches!(polygon_bound(m, &l, 0), Err(Error::Index { .. })), "{m}");
            assert!(matches!(polygon_bound(m, &l, 2), Err(Error::Index { .. })), "{m}");
        }
        assert!(matches!(archimedes(&l, 2), Err(Error::Index { .. })));
    }

    #[test]
    fn xvi_forms_agree() {
        let l = ladder(4, 8, p(128)).unwrap();
        for k in 1..=8 {
            let a = huygens_xvi_upper(&l, k).unwrap();
            let b = huygens_xvi_upper_alt(&l, k).unwrap();
            assert!(a.overlaps(&b), "k={k}");
        }
    }

    #[test]
    fn snell_routes_agree() {
        let l = ladder(6, 6, p(128)).unwrap();
        for k in 0..=6 {
            assert!(snell_upper(&l, k).unwrap().overlaps(&snell_ix_upper(&l, k).unwrap()));
        }
    }

    #[test]
    fn labels_follow_the_smaller_polygon() {
        let l = ladder(6, 4, p(64)).unwrap();
        let row = evaluate(MethodTag::HuygensFinalLower, &l, 1).unwrap();
        assert_eq!(row.n, 6);
        let row = evaluate(MethodTag::Archimedes, &l, 4).unwrap();
        assert_eq!(row.n, 96);
        assert_eq!(row.correct_digits, 2);
        let rows = table(&l, 4).unwrap();
        assert_eq!(rows.len(), 28);
        assert!(rows.iter().take(7).all(|r| r.n == 6));
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodTag::ALL {
            assert_eq!(m.name().parse::<MethodTag>().unwrap(), m);
            assert_eq!(m.name().replace('-', "_").parse::<MethodTag>().unwrap(), m);
        }
        assert_eq!("schuh27".parse::<MethodTag>().unwrap(), MethodTag::Schuh27Lower);
        assert!("newton".parse::<MethodTag>().is_err());
    }

    #[test]
    fn digit_counting() {
        assert_eq!(floor_neg_log10(&q("0.001")), 3);
        assert_eq!(floor_neg_log10(&q("0.00099")), 3);
        assert_eq!(floor_neg_log10(&q("0.0011")), 2);
        assert_eq!(floor_neg_log10(&q("5")), -1);
        assert_eq!(floor_neg_log10(&q("1")), 0);
    }

    #[test]
    fn arc_forms_at_quarter_circle() {
        let prec = p(128);
        let x = pi_reference(prec).mul_pow2(-1);
        let upper = arc_bounds(&x, MethodTag::HuygensXviUpper).unwrap();
        assert!(upper.strictly_greater(&x).holds());
        assert!(within(&upper.sub(&x), "0.00111325", "0.00111326"));
        let lower = arc_bounds(&x, MethodTag::HuygensFinalLower).unwrap();
        assert!(lower.strictly_less(&x).holds());
        let cusa = arc_bounds(&x, MethodTag::Cusa).unwrap();
        assert!(cusa.overlaps(&Enclosure::ratio(3, 2, prec)));
        assert!(matches!(arc_bounds(&x, MethodTag::Snell), Err(Error::Domain(_))));
        let pi = pi_reference(prec);
        assert!(matches!(arc_bounds(&pi, MethodTag::HuygensXviUpper), Err(Error::Domain(_))));
        assert!(matches!(arc_bounds(&Enclosure::from_int(0, prec), MethodTag::Cusa), Err(Error::Domain(_))));
    }

    #[test]
    fn small_arc_ratio() {
        let prec = p(128);
        let x = Enclosure::parse("0.001", prec).unwrap();
        let ratio = arc_bounds(&x, MethodTag::Cusa).unwrap().div(&x).unwrap();
        assert!(ratio.lo() > q("0.999999") && ratio.hi() < Rational::one());
        let excess = arc_bounds(&x, MethodTag::Snell).unwrap().sub(&x);
        // x^5/20 = 5e-17
        assert!(excess.lo() > q("0.0000000000000000499") && excess.hi() < q("0.0000000000000000501"));
    }

    #[test]
    fn semicircle() {
        let (lower, upper) = semicircle_limits(p(64));
        assert!(lower.contains(&Rational::new(30, 11).unwrap()));
        assert!(upper.contains(&Rational::new(10, 3).unwrap()));
    }
}

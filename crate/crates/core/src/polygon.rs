//! Inscribed and circumscribed regular-polygon ladders.
//!
//! Perimeters are at unit diameter, so they bracket pi directly; areas are at
//! unit radius, so they bracket the circle's area pi. Doubling uses the
//! harmonic/geometric mean form
//!
//! ```text
//! C'_2n = 2 C'_n C_n / (C'_n + C_n)      C_2n = sqrt(C'_2n C_n)
//! ```
//!
//! and areas follow from the perimeters: `A_n = C_n^2 / C'_n`, `A'_n = C'_n`.

use crate::error::Error;
use crate::exact::{cos, pi_reference, sin, tan, Enclosure, Precision};

/// Seeds with closed forms built from square roots.
pub const SQRT_SEEDS: [u32; 3] = [3, 4, 6];
/// Seed whose rung 0 comes from the trig enclosures instead of square roots.
pub const TRIG_SEED: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonRung {
    pub n: u64,
    /// C_n, inscribed perimeter, unit diameter.
    pub insc: Enclosure,
    /// C'_n, circumscribed perimeter, unit diameter.
    pub circ: Enclosure,
    /// A_n, inscribed area, unit radius.
    pub insc_area: Enclosure,
    /// A'_n, circumscribed area, unit radius.
    pub circ_area: Enclosure,
}

impl PolygonRung {
    fn from_perimeters(n: u64, insc: Enclosure, circ: Enclosure) -> Self {
        let insc_area = insc.square().div(&circ).expect("circumscribed perimeter is positive");
        let circ_area = circ.clone();
        PolygonRung { n, insc, circ, insc_area, circ_area }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonLadder {
    seed_sides: u32,
    trig_seeded: bool,
    precision: Precision,
    rungs: Vec<PolygonRung>,
}

impl PolygonLadder {
    pub fn seed_sides(&self) -> u32 {
        self.seed_sides
    }

    /// True when rung 0 came from trig enclosures rather than square roots.
    pub fn trig_seeded(&self) -> bool {
        self.trig_seeded
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn rungs(&self) -> &[PolygonRung] {
        &self.rungs
    }

    pub fn len(&self) -> usize {
        self.rungs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rungs.is_empty()
    }

    pub fn rung(&self, k: usize) -> Result<&PolygonRung, Error> {
        self.rungs.get(k).ok_or(Error::Index { index: k, len: self.rungs.len(), need: "rung k" })
    }

    /// Rungs k-1 and k, for estimators that combine the n and 2n polygons.
    pub fn pair(&self, k: usize) -> Result<(&PolygonRung, &PolygonRung), Error> {
        if k == 0 || k >= self.rungs.len() {
            return Err(Error::Index { index: k, len: self.rungs.len(), need: "rungs k-1 and k with k >= 1" });
        }
        Ok((&self.rungs[k - 1], &self.rungs[k]))
    }

    pub fn last(&self) -> &PolygonRung {
        self.rungs.last().expect("a ladder has at least its seed")
    }
}

pub fn seed(n0: u32, p: Precision) -> Result<PolygonRung, Error> {
    let three = Enclosure::from_int(3, p);
    let sqrt = |k: i64| Enclosure::from_int(k, p).sqrt().expect("positive");
    let (insc, circ) = match n0 {
        6 => (three, sqrt(3).mul_int(2)),
        4 => (sqrt(2).mul_int(2), Enclosure::from_int(4, p)),
        3 => (sqrt(3).mul_int(3).mul_pow2(-1), sqrt(3).mul_int(3)),
        other => return Err(Error::UnsupportedSeed(other)),
    };
    Ok(PolygonRung::from_perimeters(n0 as u64, insc, circ))
}

/// Rung with `n` sides from `n sin(pi/n)` and `n tan(pi/n)`.
pub fn trig_seed(n: u32, p: Precision) -> Result<PolygonRung, Error> {
    if n < 3 {
        return Err(Error::UnsupportedSeed(n));
    }
    let wp = p.plus(16);
    let x = pi_reference(wp).div_int(n as i64)?;
    let insc = sin(&x).mul_int(n as i64).with_precision(p);
    let circ = tan(&x)?.mul_int(n as i64).with_precision(p);
    Ok(PolygonRung::from_perimeters(n as u64, insc, circ))
}

pub fn double(r: &PolygonRung) -> PolygonRung {
    // 2/(1/C + 1/C') uses each operand once, so the enclosure stays tight
    let recips = r.circ.recip().and_then(|a| Ok(a.add(&r.insc.recip()?))).expect("perimeters are positive");
    let harmonic = Enclosure::from_int(2, r.circ.precision()).div(&recips).expect("positive");
    let insc = harmonic.mul(&r.insc).sqrt_nonneg().expect("product of positive perimeters");
    PolygonRung::from_perimeters(2 * r.n, insc, harmonic)
}

/// Rungs 0..=k from seed `n0`. Seeds 3, 4 and 6 start from square roots;
/// seed 30 starts from trig enclosures.
pub fn ladder(n0: u32, k: usize, p: Precision) -> Result<PolygonLadder, Error> {
    let (first, trig_seeded) = if n0 == TRIG_SEED { (trig_seed(n0, p)?, true) } else { (seed(n0, p)?, false) };
    let mut rungs = Vec::with_capacity(k + 1);
    rungs.push(first);
    for _ in 0..k {
        let next = double(rungs.last().expect("nonempty"));
        rungs.push(next);
    }
    Ok(PolygonLadder { seed_sides: n0, trig_seeded, precision: p, rungs })
}

/// Chord `b = C_2n / 2n` and sine `c = C_n / 2n` of the half-arc, where `n`
/// is the side count of rung k-1.
pub fn chord_sine(l: &PolygonLadder, k: usize) -> Result<(Enclosure, Enclosure), Error> {
    let (lower, upper) = l.pair(k)?;
    let two_n = 2 * lower.n as i64;
    Ok((upper.insc.div_int(two_n)?, lower.insc.div_int(two_n)?))
}

/// `n sin(pi/n)`, `n tan(pi/n)`, `(n/2) sin(2pi/n)` from the trig enclosures;
/// an independent route to every rung field.
pub fn closed_forms(n: u64, p: Precision) -> Result<(Enclosure, Enclosure, Enclosure), Error> {
    let wp = p.plus(16);
    let x = pi_reference(wp).div_int(n as i64)?;
    let (s, c) = (sin(&x), cos(&x));
    let insc = s.mul_int(n as i64);
    let circ = tan(&x)?.mul_int(n as i64);
    let area = s.mul(&c).mul_int(n as i64);
    Ok((insc.with_precision(p), circ.with_precision(p), area.with_precision(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn seeds() {
        let six = seed(6, p(64)).unwrap();
        assert!(six.insc.is_point() && six.insc.contains(&Rational::from(3)));
        assert!(six.circ.contains(&q("3.4641016151377545870")) || six.circ.lo() > q("3.46410161"));
        assert!(six.circ.lo() > q("3.46410161") && six.circ.hi() < q("3.46410162"));
        let four = seed(4, p(64)).unwrap();
        assert!(four.circ.is_point() && four.circ.contains(&Rational::from(4)));
        assert!(four.insc.lo() > q("2.82842712") && four.insc.hi() < q("2.82842713"));
        let three = seed(3, p(64)).unwrap();
        assert!(three.insc.lo() > q("2.59807621") && three.insc.hi() < q("2.59807622"));
        assert!(three.circ.lo() > q("5.19615242") && three.circ.hi() < q("5.19615243"));
        assert_eq!(seed(5, p(64)), Err(Error::UnsupportedSeed(5)));
    }

    #[test]
    fn hexagon_areas() {
        let six = seed(6, p(64)).unwrap();
        // A_6 = (3/2) sqrt 3, A'_6 = 2 sqrt 3
        assert!(six.insc_area.lo() > q("2.59807621") && six.insc_area.hi() < q("2.59807622"));
        assert!(six.circ_area.lo() > q("3.46410161") && six.circ_area.hi() < q("3.46410162"));
    }

    #[test]
    fn first_doubling() {
        let twelve = double(&seed(6, p(64)).unwrap());
        assert_eq!(twelve.n, 12);
        assert!(twelve.insc.lo() > q("3.10582854") && twelve.insc.hi() < q("3.10582855"));
        assert!(twelve.circ.lo() > q("3.21539030") && twelve.circ.hi() < q("3.21539031"));
    }

    #[test]
    fn ninety_six_gon() {
        let l = ladder(6, 4, p(64)).unwrap();
        let r = l.last();
        assert_eq!(r.n, 96);
        assert!(r.insc.lo() > q("3.14103195") && r.insc.hi() < q("3.14103196"));
        assert!(r.circ.lo() > q("3.14271459") && r.circ.hi() < q("3.14271460"));
        assert!(r.insc.lo() > Rational::new(223, 71).unwrap());
        assert!(r.circ.hi() < Rational::new(22, 7).unwrap());
    }

    #[test]
    fn ladder_shapes() {
        let l0 = ladder(6, 0, p(64)).unwrap();
        assert_eq!(l0.rungs(), &[seed(6, p(64)).unwrap()]);
        let l = ladder(6, 10, p(96)).unwrap();
        for w in l.rungs().windows(2) {
            assert!(w[0].insc.hi() < w[1].insc.lo());
            assert!(w[0].circ.lo() > w[1].circ.hi());
        }
        assert!(!l.trig_seeded());
        assert!(ladder(30, 1, p(96)).unwrap().trig_seeded());
    }

    #[test]
    fn recurrence_matches_closed_forms() {
        for n0 in [3, 4, 6] {
            let l = ladder(n0, 6, p(96)).unwrap();
            for r in l.rungs() {
                let (insc, circ, area) = closed_forms(r.n, p(96)).unwrap();
                assert!(r.insc.overlaps(&insc), "insc n={}", r.n);
                assert!(r.circ.overlaps(&circ), "circ n={}", r.n);
                assert!(r.insc_area.overlaps(&area), "area n={}", r.n);
            }
        }
    }

    #[test]
    fn chord_and_sine() {
        let l = ladder(6, 3, p(64)).unwrap();
        let (b, c) = chord_sine(&l, 1).unwrap();
        assert!(c.contains(&Rational::new(1, 4).unwrap()) && c.is_point());
        assert!(b.lo() > q("0.25881904") && b.hi() < q("0.25881905"));
        assert!(matches!(chord_sine(&l, 0), Err(Error::Index { .. })));
        assert!(matches!(chord_sine(&l, 4), Err(Error::Index { .. })));
        let deep = ladder(6, 12, p(96)).unwrap();
        let (b, c) = chord_sine(&deep, 12).unwrap();
        let ratio = b.div(&c).unwrap();
        assert!(ratio.lo() > Rational::one() && ratio.hi() < q("1.0000001"));
    }
}

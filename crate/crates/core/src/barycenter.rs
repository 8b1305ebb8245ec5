//! Circular segments: areas, barycenter, and the inequalities between them.
//!
//! Coordinates put the origin at the segment's vertex with the x axis along
//! its diameter, so the circle is `y^2 = 2rx - x^2` and the segment is
//! `0 <= x <= a`. `xi` is the barycenter's distance from the vertex and
//! `xbar = r - xi` its distance from the center.

use rayon::prelude::*;

use crate::error::Error;
use crate::exact::{
    cos, one_minus_cos, pi_reference, sin, tan, theta_minus_sin, Dir, Dyadic, Enclosure, Precision, Verdict,
};
use crate::polygon;

/// Below this central angle `barycenter_exact` refuses to evaluate.
pub const MIN_THETA: f64 = 1e-3;

/// Panel count of [`barycenter_oracle`].
pub const ORACLE_PANELS: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentGeometry {
    pub r: Enclosure,
    pub theta: Enclosure,
    /// Height `r (1 - cos(theta/2))`.
    pub a: Enclosure,
    /// Chord `2r sin(theta/2)`.
    pub b: Enclosure,
    /// Sine `r sin theta`.
    pub c: Enclosure,
    /// Segment area `(r^2/2)(theta - sin theta)`.
    pub sigma: Enclosure,
    /// Maximum inscribed triangle `r^2 sin(theta/2)(1 - cos(theta/2))`.
    pub delta: Enclosure,
    /// Tangent triangle `r^2 sin^2(theta/2) tan(theta/2)`; `None` at the semicircle.
    pub tangent_area: Option<Enclosure>,
    pub xi: Enclosure,
    pub xbar: Enclosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVerdict {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    /// `OM * (triangle KOH)`.
    pub lever_triangle: Enclosure,
    /// `(r - xi) * segment`.
    pub lever_segment: Enclosure,
    pub residual: Enclosure,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    /// `Sigma / delta`.
    pub ratio: Enclosure,
    /// `(2/3)(2r - a)/(r - xi)`.
    pub rhs: Enclosure,
    pub verdict: Verdict,
}

fn check_domain(r: &Enclosure, theta: &Enclosure) -> Result<(), Error> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("radius {r} must be positive")));
    }
    if !theta.is_positive() {
        return Err(Error::Domain(format!("central angle {theta} must be positive")));
    }
    if theta.lo() > pi_reference(theta.precision()).hi() {
        return Err(Error::Domain(format!("central angle {theta} exceeds pi")));
    }
    Ok(())
}

fn below_pi(theta: &Enclosure) -> bool {
    theta.strictly_less(&pi_reference(theta.precision().plus(8))).holds()
}

pub fn segment(r: &Enclosure, theta: &Enclosure, p: Precision) -> Result<SegmentGeometry, Error> {
    check_domain(r, theta)?;
    let (r, theta) = (r.with_precision(p), theta.with_precision(p));
    let half = theta.mul_pow2(-1);
    let s = sin(&half);
    let vers = one_minus_cos(&half);
    let r2 = r.square();
    let tangent_area = if below_pi(&theta) { Some(r2.mul(&s.square()).mul(&tan(&half)?)) } else { None };
    let xbar = barycenter_exact(&r, &theta)?;
    Ok(SegmentGeometry {
        a: r.mul(&vers),
        b: r.mul(&s).mul_int(2),
        c: r.mul(&sin(&theta)),
        sigma: r2.mul(&theta_minus_sin(&theta)).mul_pow2(-1),
        delta: r2.mul(&s).mul(&vers),
        tangent_area,
        xi: r.sub(&xbar),
        xbar,
        r,
        theta,
    })
}

/// `(4/3) r sin^3(theta/2) / (theta - sin theta)`, the distance from the
/// center to the barycenter.
pub fn barycenter_exact(r: &Enclosure, theta: &Enclosure) -> Result<Enclosure, Error> {
    check_domain(r, theta)?;
    if theta.lo_f64() < MIN_THETA {
        return Err(Error::IllConditioned(format!("central angle {theta} below {MIN_THETA}")));
    }
    let s = sin(&theta.mul_pow2(-1));
    let num = r.mul(&s.powi(3)).mul_int(4);
    num.div(&theta_minus_sin(theta).mul_int(3))
}

/// Distance from the center to the barycenter by direct integration of
/// the first moment, independent of [`barycenter_exact`].
pub fn barycenter_oracle(r: &Enclosure, theta: &Enclosure, p: Precision) -> Result<Enclosure, Error> {
    barycenter_oracle_with(r, theta, p, ORACLE_PANELS)
}

/// [`barycenter_oracle`] with an explicit panel count.
///
/// With `x = t^2` the area and moment are `int_0^sqrt(a) 4 t^m sqrt(2r - t^2) dt`
/// for `m = 2, 4`. Each panel contributes `h f(mid) + (h^3/24) f''(panel)`,
/// with `f''` enclosed over the whole panel, so the sum is rigorous. Panel
/// terms are added exactly, so chunking never changes the result.
pub fn barycenter_oracle_with(
    r: &Enclosure,
    theta: &Enclosure,
    p: Precision,
    panels: usize,
) -> Result<Enclosure, Error> {
    check_domain(r, theta)?;
    if panels == 0 {
        return Err(Error::Domain("oracle needs at least one panel".into()));
    }
    let wp = p.plus(32);
    let r = r.with_precision(wp);
    let a = r.mul(&one_minus_cos(&theta.with_precision(wp).mul_pow2(-1)));
    let top = a.sqrt_nonneg()?;
    let n = Dyadic::from_int(panels as u64);
    let h = top.lo_dyadic().div(&n, wp.bits(), Dir::Floor);
    let point = |d: &Dyadic| Enclosure::from_dyadics(d.clone(), d.clone(), wp);
    let h_enc = point(&h);
    let h3_24 = h_enc.powi(3).div_int(24)?;

    let integrand = Integrand { r: r.clone(), wp };
    let zero = || [Dyadic::zero(), Dyadic::zero(), Dyadic::zero(), Dyadic::zero()];
    let sums = (0..panels)
        .into_par_iter()
        .map(|i| {
            let u = h.mul(&Dyadic::from_int(i as u64));
            let v = u.add(&h);
            let mid = point(&u.add(&h.half()));
            let span = Enclosure::from_dyadics(u, v, wp);
            let area = h_enc.mul(&integrand.f(&mid, 2)).add(&h3_24.mul(&integrand.f2(&span, 2)));
            let moment = h_enc.mul(&integrand.f(&mid, 4)).add(&h3_24.mul(&integrand.f2(&span, 4)));
            [area.lo_dyadic().clone(), area.hi_dyadic().clone(), moment.lo_dyadic().clone(), moment.hi_dyadic().clone()]
        })
        .reduce(zero, |x, y| [x[0].add(&y[0]), x[1].add(&y[1]), x[2].add(&y[2]), x[3].add(&y[3])]);

    // [N h, sqrt a] lies inside [N h, top.hi]; f >= 0 there
    let start = h.mul(&n);
    let tail_span = Enclosure::from_dyadics(start.clone(), Dyadic::max(&start, top.hi_dyadic()), wp);
    let tail_len = point(&top.hi_dyadic().sub(&start));
    let tail = |m: u32| {
        let bound = tail_len.mul(&integrand.f(&tail_span, m));
        Enclosure::from_dyadics(Dyadic::zero(), Dyadic::max(&Dyadic::zero(), bound.hi_dyadic()), wp)
    };
    let area = Enclosure::from_dyadics(sums[0].clone(), sums[1].clone(), wp).add(&tail(2));
    let moment = Enclosure::from_dyadics(sums[2].clone(), sums[3].clone(), wp).add(&tail(4));
    let xi = moment.div(&area)?;
    Ok(r.sub(&xi).with_precision(p))
}

struct Integrand {
    r: Enclosure,
    wp: Precision,
}

impl Integrand {
    fn s(&self, t: &Enclosure) -> Enclosure {
        self.r.mul_int(2).sub(&t.square()).sqrt_nonneg().expect("t^2 <= a < 2r")
    }

    /// `4 t^m s`, `s = sqrt(2r - t^2)`.
    fn f(&self, t: &Enclosure, m: u32) -> Enclosure {
        t.powi(m).mul(&self.s(t)).mul_int(4)
    }

    /// `4 (m(m-1) t^(m-2) s - (2m+1) t^m / s - t^(m+2) / s^3)`.
    fn f2(&self, t: &Enclosure, m: u32) -> Enclosure {
        let s = self.s(t);
        let mi = m as i64;
        let first = t.powi(m - 2).mul(&s).mul_int(mi * (mi - 1));
        let second = t.powi(m).mul_int(2 * mi + 1).div(&s).expect("s > 0");
        let third = t.powi(m + 2).div(&s.powi(3)).expect("s > 0");
        first.sub(&second).sub(&third).mul_int(4).with_precision(self.wp)
    }
}

/// Lever law at the center: `OM * (KOH) = (r - xi) * Sigma`, with
/// `OG = sqrt(a(2r - a))`, `OM = (2/3) OG`, `(KOH) = b^2/4`.
pub fn balance_check(g: &SegmentGeometry) -> Result<BalanceReport, Error> {
    if !below_pi(&g.theta) {
        return Err(Error::Domain("balance law needs a segment smaller than a semicircle".into()));
    }
    let og = g.a.mul(&g.r.mul_int(2).sub(&g.a)).sqrt_nonneg()?;
    let om = og.mul_int(2).div_int(3)?;
    let koh = g.b.square().mul_pow2(-2);
    let lever_triangle = om.mul(&koh);
    let lever_segment = g.r.sub(&g.xi).mul(&g.sigma);
    let residual = lever_triangle.sub(&lever_segment);
    let verdict = if residual.contains_zero() {
        Verdict::Holds
    } else {
        Verdict::Violated(format!("residual {residual} excludes 0"))
    };
    Ok(BalanceReport { lever_triangle, lever_segment, residual, verdict })
}

/// `Sigma/delta` and the right side `(2/3)(2r - a)/(r - xi)`; they agree.
pub fn barycentric_equation_ratio(g: &SegmentGeometry) -> Result<EquationReport, Error> {
    if !below_pi(&g.theta) {
        return Err(Error::Domain("barycentric equation needs a segment smaller than a semicircle".into()));
    }
    let ratio = g.sigma.div(&g.delta)?;
    let rhs = g.r.mul_int(2).sub(&g.a).mul_int(2).div(&g.r.sub(&g.xi).mul_int(3))?;
    let verdict = if ratio.overlaps(&rhs) {
        Verdict::Holds
    } else {
        Verdict::Violated(format!("{ratio} and {rhs} are disjoint"))
    };
    Ok(EquationReport { ratio, rhs, verdict })
}

/// Every strict segment inequality, each as its own verdict.
pub fn segment_inequality_suite(g: &SegmentGeometry) -> Result<Vec<NamedVerdict>, Error> {
    if !below_pi(&g.theta) {
        return Err(Error::Domain("segment inequalities need a segment smaller than a semicircle".into()));
    }
    let p = g.r.precision();
    let (r, a, xi) = (&g.r, &g.a, &g.xi);
    let three_fifths_a = a.mul_int(3).div_int(5)?;
    let schuh = three_fifths_a.sub(&a.square().mul_int(3).div(&r.sub(&three_fifths_a).mul_int(25))?);
    let ratio = g.sigma.div(&g.delta)?;
    let pd = r.mul_int(2).sub(a);
    let xv = pd.mul_int(10).div(&r.mul_int(5).sub(&a.mul_int(3)).mul_int(3))?;
    let tangent = g.tangent_area.as_ref().expect("theta < pi");
    let mut out = vec![
        NamedVerdict { name: "hofmann_lower", verdict: a.mul_pow2(-1).strictly_less(xi) },
        NamedVerdict { name: "hofmann_upper", verdict: xi.strictly_less(&three_fifths_a) },
        NamedVerdict { name: "schuh_lower", verdict: schuh.strictly_less(xi) },
        NamedVerdict { name: "theorem_iii", verdict: Enclosure::ratio(4, 3, p).strictly_less(&ratio) },
        NamedVerdict { name: "theorem_xv", verdict: ratio.strictly_less(&xv) },
        NamedVerdict { name: "theorem_iv", verdict: g.sigma.strictly_less(&tangent.mul_int(2).div_int(3)?) },
    ];
    out.push(NamedVerdict { name: "lemma_vi_hexagon", verdict: lemma_vi(6, 0, p)? });
    Ok(out)
}

/// `pi < (2/3) A'_n + (1/3) A_n` at unit radius, on rung `k` of the ladder
/// from `n0`.
pub fn lemma_vi(n0: u32, k: usize, p: Precision) -> Result<Verdict, Error> {
    let l = polygon::ladder(n0, k, p)?;
    let rung = l.last();
    let bound = rung.circ_area.mul_int(2).add(&rung.insc_area).div_int(3)?;
    Ok(pi_reference(p).strictly_less(&bound))
}

/// Tangent-triangle area from coordinates: the tangents at the chord's
/// endpoints are intersected by Cramer's rule and the triangle measured by
/// the shoelace formula. Independent of the closed form in [`segment`].
pub fn tangent_area_oracle(r: &Enclosure, theta: &Enclosure) -> Result<Enclosure, Error> {
    check_domain(r, theta)?;
    let half = theta.mul_pow2(-1);
    let (s, c) = (sin(&half), cos(&half));
    // center at the origin, chord endpoints A = (r s, r c) and C = (-r s, r c)
    let (ax, ay) = (r.mul(&s), r.mul(&c));
    let (cx, cy) = (ax.neg(), ay.clone());
    // tangent at P: P.x X + P.y Y = r^2
    let r2 = r.square();
    let det = ax.mul(&cy).sub(&ay.mul(&cx));
    let kx = r2.mul(&cy).sub(&ay.mul(&r2)).div(&det)?;
    let ky = ax.mul(&r2).sub(&r2.mul(&cx)).div(&det)?;
    let cross = |x1: &Enclosure, y1: &Enclosure, x2: &Enclosure, y2: &Enclosure| x1.mul(y2).sub(&x2.mul(y1));
    let twice = cross(&ax, &ay, &kx, &ky).add(&cross(&kx, &ky, &cx, &cy)).add(&cross(&cx, &cy, &ax, &ay));
    Ok(twice.abs().mul_pow2(-1))
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

    fn one() -> Enclosure {
        Enclosure::from_int(1, p(96))
    }

    #[test]
    fn semicircle() {
        let prec = p(96);
        let pi = pi_reference(prec);
        let g = segment(&one(), &pi, prec).unwrap();
        assert!(g.sigma.overlaps(&pi.mul_pow2(-1)));
        assert!(g.a.contains(&Rational::one()) && g.a.width_f64() < 1e-25);
        assert!(g.b.contains(&Rational::from(2)));
        assert!(g.tangent_area.is_none());
        // 4/(3 pi)
        let expected = Enclosure::from_int(4, prec).div(&pi.mul_int(3)).unwrap();
        assert!(g.xbar.overlaps(&expected));
    }

    #[test]
    fn quarter_turn() {
        let prec = p(96);
        let theta = pi_reference(prec).mul_pow2(-1);
        let g = segment(&one(), &theta, prec).unwrap();
        assert!(g.sigma.lo() > q("0.28539816") && g.sigma.hi() < q("0.28539817"));
        assert!(g.xbar.lo() > q("0.82587") && g.xbar.hi() < q("0.82588"));
        let eq = barycentric_equation_ratio(&g).unwrap();
        assert!(eq.verdict.holds());
        assert!(eq.ratio.lo() > q("1.37802") && eq.ratio.hi() < q("1.37803"));
        let bal = balance_check(&g).unwrap();
        assert!(bal.verdict.holds() && bal.residual.width() < q("0.0000000001"));
        for v in segment_inequality_suite(&g).unwrap() {
            assert!(v.verdict.holds(), "{}: {}", v.name, v.verdict);
        }
    }

    #[test]
    fn small_and_domain() {
        let prec = p(96);
        let tiny = Enclosure::parse("0.0005", prec).unwrap();
        assert!(matches!(barycenter_exact(&one(), &tiny), Err(Error::IllConditioned(_))));
        assert!(matches!(segment(&one(), &Enclosure::from_int(4, prec), prec), Err(Error::Domain(_))));
        assert!(matches!(segment(&one().neg(), &one(), prec), Err(Error::Domain(_))));
        let semicircle = segment(&one(), &pi_reference(prec), prec).unwrap();
        assert!(matches!(balance_check(&semicircle), Err(Error::Domain(_))));
    }

    #[test]
    fn thin_segments_approach_parabola() {
        let prec = p(128);
        let g = segment(&one(), &Enclosure::parse("0.002", prec).unwrap(), prec).unwrap();
        let ratio = g.sigma.div(&g.delta).unwrap();
        assert!(ratio.sub(&Enclosure::ratio(4, 3, prec)).abs().hi() < q("0.000001"));
    }

    #[test]
    fn homogeneity() {
        let prec = p(96);
        let theta = Enclosure::parse("1.3", prec).unwrap();
        let g1 = segment(&one(), &theta, prec).unwrap();
        let g2 = segment(&Enclosure::from_int(2, prec), &theta, prec).unwrap();
        assert!(g2.xbar.overlaps(&g1.xbar.mul_int(2)));
        assert!(g2.sigma.overlaps(&g1.sigma.mul_int(4)));
    }

    #[test]
    fn oracle_matches_closed_form() {
        let prec = p(96);
        for s in ["0.05", "0.1", "1.5707963267948966", "2.8"] {
            let theta = Enclosure::parse(s, prec).unwrap();
            let exact = barycenter_exact(&one(), &theta).unwrap();
            let oracle = barycenter_oracle(&one(), &theta, prec).unwrap();
            assert!(exact.overlaps(&oracle), "theta = {s}: {exact} vs {oracle}");
            assert!(oracle.width_f64() < 1e-9, "theta = {s}: width {}", oracle.width_f64());
        }
    }

    #[test]
    fn oracle_is_chunking_invariant() {
        let prec = p(80);
        let theta = Enclosure::parse("2", prec).unwrap();
        let a = barycenter_oracle_with(&one(), &theta, prec, 300).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| barycenter_oracle_with(&one(), &theta, prec, 300).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn tangent_triangle_closed_form() {
        let prec = p(96);
        for s in ["0.3", "1", "2.5", "3.1"] {
            let theta = Enclosure::parse(s, prec).unwrap();
            let g = segment(&Enclosure::from_int(3, prec), &theta, prec).unwrap();
            let oracle = tangent_area_oracle(&g.r, &theta).unwrap();
            assert!(g.tangent_area.unwrap().overlaps(&oracle), "theta = {s}");
        }
    }

    #[test]
    fn hexagon_area_lemma() {
        let prec = p(64);
        assert!(lemma_vi(6, 0, prec).unwrap().holds());
        let l = polygon::ladder(6, 0, prec).unwrap();
        let r = l.last();
        let gap = r.circ_area.mul_int(2).add(&r.insc_area).div_int(3).unwrap().sub(&pi_reference(prec));
        assert!(gap.lo() > q("0.01"));
    }
}

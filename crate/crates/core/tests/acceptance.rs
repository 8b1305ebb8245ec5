//! End-to-end acceptance criteria. Each criterion prints one line; the test
//! fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use circulus::analysis::{coefficient_table, estimate_order};
use circulus::barycenter::{balance_check, segment, segment_inequality_suite, ORACLE_PANELS};
use circulus::bounds::{self, semicircle_limits};
use circulus::exact::pi_reference;
use circulus::parasect::{self, area_difference_report, configure, derivative_identity_residual, f_of_x};
use circulus::polygon::ladder;
use circulus::verify::{arc_sweep, dominance_chain, f_grid, modern_location, ORDER_TARGETS};
use circulus::{Enclosure, MethodTag, Precision, Rational, Rounding, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

/// Name, check and runtime budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn bits(b: u32) -> Precision {
    Precision::new(b).unwrap()
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn verdict(v: Verdict, what: &str) -> Outcome {
    match v {
        Verdict::Holds => Ok(()),
        other => Err(format!("{what}: {other}")),
    }
}

fn within(e: &Enclosure, lo: &str, hi: &str, what: &str) -> Outcome {
    ensure(e.lo() >= q(lo) && e.hi() <= q(hi), || format!("{what} = {e} not within [{lo}, {hi}]"))
}

/// Both endpoints cut toward zero agree with `printed`.
fn digits_match(e: &Enclosure, printed: &str, what: &str) -> Outcome {
    let places = printed.split('.').nth(1).map_or(0, str::len);
    let lo = e.lo().to_decimal(places, Rounding::Down);
    let hi = e.hi().to_decimal(places, Rounding::Down);
    ensure(lo == printed && hi == printed, || format!("{what}: [{lo}, {hi}] vs printed {printed}"))
}

fn archimedes_96() -> Outcome {
    let l = ladder(6, 4, bits(64)).map_err(|e| e.to_string())?;
    let r = l.rung(4).map_err(|e| e.to_string())?;
    ensure(r.n == 96, || format!("rung 4 has n = {}", r.n))?;
    let lower = &Rational::from(3) + &q("10/71");
    let upper = &Rational::from(3) + &q("1/7");
    ensure(r.insc.lo() > lower, || format!("C_96 = {} not above 3 10/71", r.insc))?;
    ensure(r.circ.hi() < upper, || format!("C'_96 = {} not below 3 1/7", r.circ))
}

fn huygens_bracket() -> Outcome {
    let l = ladder(30, 1, bits(128)).map_err(|e| e.to_string())?;
    let (c30, c60) = (&l.rungs()[0].insc, &l.rungs()[1].insc);
    let lower = bounds::huygens_final_lower(&l, 1).map_err(|e| e.to_string())?;
    let upper = bounds::huygens_xvi_upper(&l, 1).map_err(|e| e.to_string())?;
    let checks = [
        within(c30, "3.13585389802979", "3.13585389802980", "C_30"),
        within(c60, "3.14015737457639", "3.14015737457640", "C_60"),
        digits_match(&lower, "3.14159265339060", "lower"),
        digits_match(&upper, "3.14159265377520", "upper"),
        ensure(lower.lo().to_decimal(10, Rounding::Down) == "3.1415926533", || format!("lower {lower} rounds wrong")),
        ensure(upper.hi().to_decimal(10, Rounding::Up) == "3.1415926538", || format!("upper {upper} rounds wrong")),
    ];
    let failed: Vec<String> = checks.into_iter().filter_map(Result::err).collect();
    ensure(failed.is_empty(), || failed.join("; "))
}

fn two_place() -> Outcome {
    let l = ladder(6, 1, bits(128)).map_err(|e| e.to_string())?;
    let cusa = bounds::cusa_lower(&l, MethodTag::Cusa.rung_for_label(0)).map_err(|e| e.to_string())?;
    let snell = bounds::snell_ix_upper(&l, 1).map_err(|e| e.to_string())?;
    let lo = cusa.lo().to_decimal(4, Rounding::Down);
    let hi = snell.hi().to_decimal(4, Rounding::Up);
    let checks = [
        ensure(lo == "3.1411", || format!("cusa(6) = {cusa} reads {lo}, printed 3.1411")),
        ensure(hi == "3.1424", || format!("snell_ix(12) = {snell} reads {hi}, printed 3.1424")),
    ];
    let failed: Vec<String> = checks.into_iter().filter_map(Result::err).collect();
    ensure(failed.is_empty(), || failed.join("; "))
}

fn five_place() -> Outcome {
    let l = ladder(30, 1, bits(128)).map_err(|e| e.to_string())?;
    let cusa = bounds::cusa_lower(&l, MethodTag::Cusa.rung_for_label(0)).map_err(|e| e.to_string())?;
    let snell = bounds::snell_ix_upper(&l, 1).map_err(|e| e.to_string())?;
    ensure(l.rungs()[1].n == 60, || "rung 1 is not the 60-gon".into())?;
    ensure(cusa.lo() >= q("3.1415917"), || format!("cusa(30) = {cusa}"))?;
    ensure(snell.hi() <= q("3.1415941"), || format!("snell(60) = {snell}"))
}

fn orders() -> Outcome {
    let p = bits(256);
    let mut bad = Vec::new();
    for (method, target) in ORDER_TARGETS {
        let est = estimate_order(method, 6, 4..=10, p).map_err(|e| e.to_string())?;
        if (est.slope - target).abs() > 0.05 {
            bad.push(format!("{method} slope {:.4} vs {target}", est.slope));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))
}

fn coefficients() -> Outcome {
    let rows = coefficient_table(bits(256)).map_err(|e| e.to_string())?;
    let with_constant: Vec<_> = rows.iter().filter(|r| r.expected.is_some()).collect();
    ensure(with_constant.len() == 4, || format!("{} rows carry a constant", with_constant.len()))?;
    for row in with_constant {
        ensure(row.n == 1536, || format!("{} measured at n = {}", row.method, row.n))?;
        verdict(row.verdict.clone(), row.method.name())?;
    }
    Ok(())
}

fn barycenter_equivalence() -> Outcome {
    let (v, widest) = modern_location(bits(128), ORACLE_PANELS).map_err(|e| e.to_string())?;
    verdict(v, "overlap")?;
    ensure(widest < 1e-9, || format!("combined width {widest:e} r"))
}

fn balance_law() -> Outcome {
    let p = bits(128);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let tiny = q("1/10000000000");
    for _ in 0..20 {
        let micro: i64 = rng.gen_range(10_000..3_141_000);
        let theta = Enclosure::ratio(micro, 1_000_000, p);
        let g = segment(&Enclosure::from_int(1, p), &theta, p).map_err(|e| e.to_string())?;
        let report = balance_check(&g).map_err(|e| e.to_string())?;
        ensure(report.residual.contains(&Rational::zero()), || format!("theta {theta}: residual {}", report.residual))?;
        ensure(report.residual.width() < tiny, || {
            format!("theta {theta}: residual width {}", report.residual.width())
        })?;
    }
    Ok(())
}

fn parabola_and_circle() -> Outcome {
    let p = bits(128);
    let f1 = f_of_x(&Enclosure::from_int(1, p)).map_err(|e| e.to_string())?;
    let exact = parasect::f_one_magnitude(bits(512)).neg();
    ensure(f1.contains_enclosure(&exact), || format!("f(1) = {f1} misses {exact}"))?;
    within(&f1, "-0.003414", "-0.003412", "f(1)")?;
    for x in f_grid(p) {
        let f = f_of_x(&x).map_err(|e| e.to_string())?;
        ensure(f.is_negative(), || format!("f({x}) = {f}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let r = Rational::new(rng.gen_range(1..=40i64), 10).unwrap();
        let b = &r * &Rational::new(rng.gen_range(1..=1000i64), 1000).unwrap();
        let cfg = configure(&r, &b, p).map_err(|e| e.to_string())?;
        let report = area_difference_report(&cfg).map_err(|e| e.to_string())?;
        let cap = cfg.r.square().div_int(290).unwrap();
        verdict(report.sliver_minus_wedge.abs().strictly_less(&cap), &format!("r = {r}, b = {b}"))?;
    }
    for _ in 0..50 {
        let x = Rational::new(rng.gen_range(-100_000i64..100_000), rng.gen_range(1i64..10_000)).unwrap();
        ensure(derivative_identity_residual(&x).is_zero(), || format!("identity fails at {x}"))?;
    }
    Ok(())
}

fn properties() -> Outcome {
    let p = bits(128);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    verdict(arc_sweep(1000, &mut rng, p).map_err(|e| e.to_string())?, "arc sweep")?;
    verdict(dominance_chain(9, p).map_err(|e| e.to_string())?, "dominance chain")?;
    for _ in 0..100 {
        let micro: i64 = rng.gen_range(1_000..3_141_000);
        let theta = Enclosure::ratio(micro, 1_000_000, p);
        let g = segment(&Enclosure::from_int(1, p), &theta, p).map_err(|e| e.to_string())?;
        for v in segment_inequality_suite(&g).map_err(|e| e.to_string())? {
            verdict(v.verdict, &format!("{} at theta {theta}", v.name))?;
        }
    }
    let (lower, upper) = semicircle_limits(p);
    let pi = pi_reference(p);
    ensure(lower.contains(&q("30/11")) && upper.contains(&q("10/3")), || format!("limits {lower}, {upper}"))?;
    verdict(lower.strictly_less(&pi).and(pi.strictly_less(&upper)), "30/11 < pi < 10/3")
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 archimedes 96-gon", archimedes_96, 1),
        ("2 huygens 14-digit bracket", huygens_bracket, 1),
        ("3 two-place bracket", two_place, 1),
        ("4 five-place bracket", five_place, 1),
        ("5 convergence orders", orders, 30),
        ("6 error coefficients", coefficients, 30),
        ("7 barycenter equivalence", barycenter_equivalence, 60),
        ("8 balance law", balance_law, 10),
        ("9 parabola and circle", parabola_and_circle, 10),
        ("10 property suites", properties, 60),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run().and_then(|()| {
            let took = start.elapsed();
            ensure(took < Duration::from_secs(budget), || format!("took {took:?}, budget {budget} s"))
        });
        let took = start.elapsed();
        match &outcome {
            Ok(()) => writeln!(out, "acceptance {name}: PASS ({took:.2?})").unwrap(),
            Err(why) => {
                writeln!(out, "acceptance {name}: FAIL ({took:.2?}) {why}").unwrap();
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

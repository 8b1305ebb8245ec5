mod output;

use std::io::Write;
use std::process::ExitCode;

use circulus::barycenter::{self, ORACLE_PANELS};
use circulus::bounds::{self, MethodTag};
use circulus::exact::pi_reference;
use circulus::parasect;
use circulus::polygon::ladder;
use circulus::verify::{self, VerifyConfig};
use circulus::{Enclosure, Error, Precision, Rational, Verdict};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use output::{Format, Report};

const PRECISION_ENV: &str = "CIRCULUS_PRECISION_BITS";
const EXIT_USAGE: u8 = 64;
const EXIT_DOMAIN: u8 = 65;

#[derive(Parser)]
#[command(name = "circulus", version, about = "Rigorous enclosures of classical polygon and segment estimates of pi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One estimator at one rung of a polygon ladder.
    Compute {
        #[arg(long)]
        method: MethodTag,
        #[command(flatten)]
        ladder: LadderArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Every table method at every label of a ladder.
    Ladder {
        #[command(flatten)]
        ladder: LadderArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fitted convergence order over the last seven labels up to --doublings.
    Order {
        /// Defaults to every table method.
        #[arg(long)]
        method: Option<MethodTag>,
        #[arg(long, default_value_t = 6, value_parser = parse_seed)]
        seed: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=40))]
        doublings: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form barycenter of a circular segment against quadrature.
    Barycenter {
        #[command(flatten)]
        seg: SegmentArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Segment geometry with its inequality suite.
    Segment {
        #[command(flatten)]
        seg: SegmentArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The circle-minus-parabola function f(x) and the area difference at radius r.
    #[command(name = "appendix-f")]
    AppendixF {
        /// Height over radius, in (0, 1].
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long, default_value = "1")]
        radius: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the full invariant suite.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        samples: u64,
        #[arg(long, default_value_t = VerifyConfig::default().rng_seed)]
        rng_seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Args)]
struct LadderArgs {
    /// Seed polygon: 3, 4 or 6 (square-root seeded) or 30 (trig-seeded).
    #[arg(long, default_value_t = 6, value_parser = parse_seed)]
    seed: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=40))]
    doublings: u32,
}

#[derive(Args)]
struct SegmentArgs {
    /// Central angle: a rational, or `pi`, `pi/N`, `M*pi/N`.
    #[arg(long, default_value = "pi/2")]
    theta: String,
    #[arg(long, default_value = "1")]
    radius: String,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(4..=1000))]
    digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

impl OutputArgs {
    fn digits(&self) -> usize {
        self.digits as usize
    }
}

fn parse_seed(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(n @ (3 | 4 | 6 | 30)) => Ok(n),
        _ => Err(format!("seed must be 3, 4, 6 or 30, got {s:?}")),
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Working precision: the environment override, else enough bits for `digits`.
fn precision(digits: u32) -> Result<Precision, Failure> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(bits) if bits >= 32 => Ok(Precision::new(bits)?),
            _ => Err(Failure::Usage(format!("{PRECISION_ENV} must be an integer >= 32, got {v:?}"))),
        },
        Err(_) => Ok(Precision::for_digits(digits)),
    }
}

fn precision_override() -> Result<Option<Precision>, Failure> {
    if std::env::var_os(PRECISION_ENV).is_some() {
        precision(0).map(Some)
    } else {
        Ok(None)
    }
}

/// `q`, `pi`, `pi/N`, `M*pi` or `M*pi/N` with rational `M` and integer `N`.
fn parse_angle(s: &str, p: Precision) -> Result<Enclosure, Failure> {
    let s = s.trim();
    let Some(at) = s.find("pi") else {
        return Ok(Enclosure::from_rational(&s.parse::<Rational>()?, p));
    };
    let bad = || Failure::Usage(format!("cannot read angle {s:?}"));
    let head = s[..at].trim();
    let tail = s[at + 2..].trim();
    let mut value = pi_reference(p);
    if !head.is_empty() {
        let m: Rational = head.strip_suffix('*').ok_or_else(bad)?.trim().parse()?;
        value = value.mul_rational(&m);
    }
    if !tail.is_empty() {
        let n: i64 = tail.strip_prefix('/').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        value = value.div_int(n)?;
    }
    Ok(value)
}

fn segment_inputs(seg: &SegmentArgs, p: Precision) -> Result<(Enclosure, Enclosure), Failure> {
    let r = Enclosure::from_rational(&seg.radius.parse::<Rational>()?, p);
    Ok((r, parse_angle(&seg.theta, p)?))
}

fn run(cli: Cli) -> Result<(String, i32), Failure> {
    match cli.command {
        Command::Compute { method, ladder: la, out } => {
            let p = precision(out.digits)?;
            let l = ladder(la.seed, la.doublings as usize, p)?;
            let row = bounds::evaluate(method, &l, la.doublings as usize)?;
            Ok((output::bounds_rows(&[row], out.digits(), out.format), 0))
        }
        Command::Ladder { ladder: la, out } => {
            Ok((ladder_table(la.seed, la.doublings as usize, precision(out.digits)?, out.digits(), out.format)?, 0))
        }
        Command::Order { method, seed, doublings, out } => {
            let p = match precision_override()? {
                Some(p) => p,
                None => Precision::for_digits(out.digits).max(Precision::new(256)?),
            };
            let methods = method.map_or_else(|| MethodTag::TABLE.to_vec(), |m| vec![m]);
            let last = doublings as usize;
            let estimates = methods
                .into_iter()
                .map(|m| circulus::analysis::estimate_order(m, seed, last.saturating_sub(6)..=last, p))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((output::order_rows(&estimates, out.digits(), out.format), 0))
        }
        Command::Barycenter { seg, out } => {
            let p = precision(out.digits)?;
            let (r, theta) = segment_inputs(&seg, p)?;
            let exact = barycenter::barycenter_exact(&r, &theta)?;
            let oracle = barycenter::barycenter_oracle(&r, &theta, p)?;
            let mut report = Report::new(vec![
                ("radius", seg.radius.clone()),
                ("theta", seg.theta.clone()),
                ("precision", p.to_string()),
            ]);
            report.params.push(("oracle_panels", ORACLE_PANELS.to_string()));
            report.quantity("xi_exact", &exact);
            report.quantity("xi_oracle", &oracle);
            let overlap = if exact.overlaps(&oracle) {
                Verdict::Holds
            } else {
                Verdict::Violated(format!("{exact} and {oracle} are disjoint"))
            };
            report.check("overlap", overlap);
            Ok((report.render(out.digits(), out.format), report.exit_code()))
        }
        Command::Segment { seg, out } => {
            let p = precision(out.digits)?;
            let (r, theta) = segment_inputs(&seg, p)?;
            let g = barycenter::segment(&r, &theta, p)?;
            let mut report = Report::new(vec![
                ("radius", seg.radius.clone()),
                ("theta", seg.theta.clone()),
                ("precision", p.to_string()),
            ]);
            for (name, value) in [
                ("a", &g.a),
                ("b", &g.b),
                ("c", &g.c),
                ("sigma", &g.sigma),
                ("delta", &g.delta),
                ("xi", &g.xi),
                ("xbar", &g.xbar),
            ] {
                report.quantity(name, value);
            }
            if let Some(t) = &g.tangent_area {
                report.quantity("tangent_area", t);
            }
            for v in barycenter::segment_inequality_suite(&g)? {
                report.check(v.name, v.verdict);
            }
            let balance = barycenter::balance_check(&g)?;
            report.quantity("balance_residual", &balance.residual);
            report.check("balance", balance.verdict);
            let equation = barycenter::barycentric_equation_ratio(&g)?;
            report.quantity("sigma_over_delta", &equation.ratio);
            report.check("barycentric_equation", equation.verdict);
            Ok((report.render(out.digits(), out.format), report.exit_code()))
        }
        Command::AppendixF { x, radius, out } => {
            let p = precision(out.digits)?;
            let xq: Rational = x.parse()?;
            let r: Rational = radius.parse()?;
            let f = parasect::f_of_x(&Enclosure::from_rational(&xq, p))?;
            let cfg = parasect::configure(&r, &(&r * &xq), p)?;
            let diff = parasect::area_difference_report(&cfg)?;
            let mut report = Report::new(vec![("x", x), ("radius", radius), ("precision", p.to_string())]);
            report.quantity("f(x)", &f);
            report.quantity("f(1)", &parasect::f_one_magnitude(p).neg());
            report.quantity("circular_segment_area", &parasect::circular_segment_area(&cfg));
            report.quantity("parabolic_segment_area", &parasect::parabolic_segment_area(&cfg));
            report.quantity("sliver_minus_wedge", &diff.sliver_minus_wedge);
            report.check("area_difference_bound", diff.bound_check);
            Ok((report.render(out.digits(), out.format), report.exit_code()))
        }
        Command::Verify { samples, rng_seed, format } => {
            let mut cfg = VerifyConfig { samples: samples as usize, rng_seed, ..VerifyConfig::default() };
            if let Some(p) = precision_override()? {
                cfg.precision = p;
            }
            let report = verify::run_all(&cfg);
            let mut rows: Vec<(String, String, Verdict)> =
                report.checks.into_iter().map(|c| (c.id.to_string(), c.description.to_string(), c.verdict)).collect();
            rows.extend(cli_checks(cfg.precision));
            let code = output::exit_code(rows.iter().map(|r| &r.2));
            Ok((output::checks(&rows, format), code))
        }
    }
}

fn ladder_table(seed: u32, doublings: usize, p: Precision, digits: usize, format: Format) -> Result<String, Failure> {
    let l = ladder(seed, doublings + 1, p)?;
    let rows = bounds::table(&l, doublings + 1)?;
    Ok(output::bounds_rows(&rows, digits, format))
}

/// Determinism and JSON round-trip of the table output.
fn cli_checks(p: Precision) -> Vec<(String, String, Verdict)> {
    let render = |format| ladder_table(6, 3, p, 12, format).map_err(|_| ());
    let determinism = match (render(Format::Csv), render(Format::Csv), render(Format::Json), render(Format::Json)) {
        (Ok(a), Ok(b), Ok(c), Ok(d)) if a == b && c == d => Verdict::Holds,
        _ => Verdict::Violated("repeated ladder output differs".into()),
    };
    let round_trip = match render(Format::Json) {
        Ok(text) => {
            let ok = text.lines().all(|line| {
                serde_json::from_str::<serde_json::Value>(line)
                    .is_ok_and(|v| serde_json::to_string(&v).is_ok_and(|s| s == line))
            });
            if ok {
                Verdict::Holds
            } else {
                Verdict::Violated("JSON output changes when re-emitted".into())
            }
        }
        Err(()) => Verdict::Violated("ladder output failed".into()),
    };
    vec![
        ("cli.determinism".into(), "identical configurations print identical bytes".into(), determinism),
        ("cli.json_round_trip".into(), "JSON rows re-emit unchanged after parsing".into(), round_trip),
    ]
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
            ExitCode::from(code as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("circulus: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("circulus: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

//! Plain, CSV and JSON rendering. Every enclosure goes through
//! `Enclosure::render` in plain output and through outward-cut decimals in
//! CSV and JSON.

use circulus::analysis::OrderEstimate;
use circulus::bounds::floor_neg_log10;
use circulus::{BoundsRow, Enclosure, Rational, Verdict};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

const LO_MARK: &str = "↓";
const HI_MARK: &str = "↑";

/// Scientific notation with three significant digits, rounded up.
pub fn sci_up(d: &Rational) -> String {
    if d.is_zero() {
        return "0".into();
    }
    // d in [10^-(k+1), 10^-k)
    let mut exp = -(floor_neg_log10(d) + 1);
    let scale = |e: i64| -> Rational {
        let p = Rational::from(10).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            p
        } else {
            p.recip().expect("nonzero")
        }
    };
    let mut m = (d * &scale(2 - exp)).ceil();
    if m >= 1000.into() {
        m = (m + 9) / 10;
        exp += 1;
    }
    let digits = m.to_string();
    format!("{}.{}e{exp}", &digits[..1], &digits[1..])
}

fn seeding(trig: bool) -> &'static str {
    if trig {
        "trig-seeded"
    } else {
        "sqrt-seeded"
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json_lines(objects: impl IntoIterator<Item = Value>) -> String {
    objects.into_iter().map(|v| format!("{v}\n")).collect()
}

/// Left-aligned columns separated by two spaces.
fn plain_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn digits_cell(d: i64) -> String {
    if d == i64::MAX {
        "exact".into()
    } else {
        d.to_string()
    }
}

pub fn bounds_rows(rows: &[BoundsRow], digits: usize, format: Format) -> String {
    const HEADER: [&str; 7] = ["method", "n", "side", "lo", "hi", "width", "correct_digits"];
    match format {
        Format::Plain => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                out.push_str(&format!("# {}, {}\n", seeding(first.trig_seeded), first.value.precision()));
            }
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.method.to_string(),
                        r.n.to_string(),
                        r.side.to_string(),
                        r.value.render(digits),
                        sci_up(&r.width),
                        digits_cell(r.correct_digits),
                    ]
                })
                .collect();
            out + &plain_table(&["method", "n", "side", "enclosure", "width", "correct_digits"], &cells)
        }
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.method.to_string(),
                        r.n.to_string(),
                        r.side.to_string(),
                        format!("{}{LO_MARK}", r.value.lo_decimal(digits)),
                        format!("{}{HI_MARK}", r.value.hi_decimal(digits)),
                        sci_up(&r.width),
                        digits_cell(r.correct_digits),
                    ]
                })
                .collect();
            csv_text(&HEADER, &cells)
        }
        Format::Json => json_lines(rows.iter().map(|r| {
            json!({
                "method": r.method.name(),
                "n": r.n,
                "side": r.side.to_string(),
                "lo": r.value.lo_decimal(digits),
                "hi": r.value.hi_decimal(digits),
                "width": sci_up(&r.width),
                "correct_digits": if r.correct_digits == i64::MAX { Value::from("exact") } else { r.correct_digits.into() },
                "seeding": seeding(r.trig_seeded),
            })
        })),
    }
}

pub fn order_rows(rows: &[OrderEstimate], digits: usize, format: Format) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|e| {
            let first = e.samples.first().map_or(0, |s| s.n);
            let last = e.samples.last().map_or(0, |s| s.n);
            vec![
                e.method.to_string(),
                format!("{:.4}", e.slope),
                e.order.to_string(),
                e.coefficient.render(digits),
                format!("{first}..{last}"),
            ]
        })
        .collect();
    match format {
        Format::Plain => plain_table(&["method", "slope", "order", "coefficient", "n_range"], &cells),
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .zip(cells)
                .map(|(e, c)| {
                    vec![
                        c[0].clone(),
                        c[1].clone(),
                        c[2].clone(),
                        format!("{}{LO_MARK}", e.coefficient.lo_decimal(digits)),
                        format!("{}{HI_MARK}", e.coefficient.hi_decimal(digits)),
                        c[4].clone(),
                    ]
                })
                .collect();
            csv_text(&["method", "slope", "order", "coefficient_lo", "coefficient_hi", "n_range"], &cells)
        }
        Format::Json => json_lines(rows.iter().map(|e| {
            let samples: Vec<Value> = e
                .samples
                .iter()
                .map(|s| json!({"n": s.n, "error_lo": s.error.lo_decimal(digits + 20), "error_hi": s.error.hi_decimal(digits + 20)}))
                .collect();
            json!({
                "method": e.method.name(),
                "slope": format!("{:.4}", e.slope),
                "order": e.order,
                "coefficient_lo": e.coefficient.lo_decimal(digits),
                "coefficient_hi": e.coefficient.hi_decimal(digits),
                "samples": samples,
            })
        })),
    }
}

/// Named quantities and checks of a single computation.
#[derive(Default)]
pub struct Report {
    pub params: Vec<(&'static str, String)>,
    pub quantities: Vec<(String, Enclosure)>,
    pub checks: Vec<(String, Verdict)>,
}

impl Report {
    pub fn new(params: Vec<(&'static str, String)>) -> Self {
        Report { params, ..Report::default() }
    }

    pub fn quantity(&mut self, name: impl Into<String>, value: &Enclosure) {
        self.quantities.push((name.into(), value.clone()));
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.checks.push((name.into(), verdict));
    }

    /// 0 if every check holds, 1 on a violation, otherwise 2.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.checks.iter().map(|(_, v)| v))
    }

    pub fn render(&self, digits: usize, format: Format) -> String {
        match format {
            Format::Plain => {
                let mut out = String::new();
                for (k, v) in &self.params {
                    out.push_str(&format!("# {k} = {v}\n"));
                }
                let mut rows: Vec<Vec<String>> = self
                    .quantities
                    .iter()
                    .map(|(n, e)| vec![n.clone(), e.render(digits), sci_up(&e.width())])
                    .collect();
                rows.extend(self.checks.iter().map(|(n, v)| vec![n.clone(), v.to_string(), String::new()]));
                out + &plain_table(&["quantity", "value", "width"], &rows)
            }
            Format::Csv => {
                let mut rows: Vec<Vec<String>> = self
                    .quantities
                    .iter()
                    .map(|(n, e)| {
                        vec![
                            n.clone(),
                            format!("{}{LO_MARK}", e.lo_decimal(digits)),
                            format!("{}{HI_MARK}", e.hi_decimal(digits)),
                            sci_up(&e.width()),
                            String::new(),
                        ]
                    })
                    .collect();
                rows.extend(
                    self.checks
                        .iter()
                        .map(|(n, v)| vec![n.clone(), String::new(), String::new(), String::new(), v.to_string()]),
                );
                csv_text(&["quantity", "lo", "hi", "width", "verdict"], &rows)
            }
            Format::Json => {
                let mut params = Map::new();
                for (k, v) in &self.params {
                    params.insert((*k).into(), v.clone().into());
                }
                let mut quantities = Map::new();
                for (n, e) in &self.quantities {
                    quantities.insert(
                        n.clone(),
                        json!({"lo": e.lo_decimal(digits), "hi": e.hi_decimal(digits), "width": sci_up(&e.width())}),
                    );
                }
                let mut checks = Map::new();
                for (n, v) in &self.checks {
                    checks.insert(n.clone(), verdict_json(v));
                }
                json_lines([json!({"params": params, "quantities": quantities, "checks": checks})])
            }
        }
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"verdict": "pass"}),
        Verdict::Violated(why) => json!({"verdict": "fail", "detail": why}),
        Verdict::Indeterminate(why) => json!({"verdict": "indeterminate", "detail": why}),
    }
}

pub fn exit_code<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> i32 {
    let mut code = 0;
    for v in verdicts {
        match v {
            Verdict::Violated(_) => return 1,
            Verdict::Indeterminate(_) => code = 2,
            Verdict::Holds => {}
        }
    }
    code
}

/// Verify results as `(id, description, verdict)`.
pub fn checks(rows: &[(String, String, Verdict)], format: Format) -> String {
    match format {
        Format::Plain => {
            let cells: Vec<Vec<String>> =
                rows.iter().map(|(id, d, v)| vec![id.clone(), v.label().into(), d.clone()]).collect();
            let mut out = plain_table(&["id", "verdict", "description"], &cells);
            for (id, _, v) in rows {
                if !v.holds() {
                    out.push_str(&format!("{id}: {v}\n"));
                }
            }
            let failed = rows.iter().filter(|r| matches!(r.2, Verdict::Violated(_))).count();
            let unknown = rows.iter().filter(|r| matches!(r.2, Verdict::Indeterminate(_))).count();
            out.push_str(&format!(
                "{} checks: {} pass, {failed} fail, {unknown} indeterminate\n",
                rows.len(),
                rows.len() - failed - unknown
            ));
            out
        }
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(id, d, v)| {
                    let detail = match v {
                        Verdict::Holds => String::new(),
                        Verdict::Violated(w) | Verdict::Indeterminate(w) => w.clone(),
                    };
                    vec![id.clone(), v.label().to_ascii_lowercase(), d.clone(), detail]
                })
                .collect();
            csv_text(&["id", "verdict", "description", "detail"], &cells)
        }
        Format::Json => json_lines(rows.iter().map(|(id, d, v)| {
            let mut obj = Map::new();
            obj.insert("id".into(), id.clone().into());
            obj.insert("description".into(), d.clone().into());
            if let Value::Object(m) = verdict_json(v) {
                obj.extend(m);
            }
            Value::Object(obj)
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn scientific_rounds_up() {
        assert_eq!(sci_up(&q("0.000123")), "1.23e-4");
        assert_eq!(sci_up(&q("0.0001231")), "1.24e-4");
        assert_eq!(sci_up(&q("0.9999")), "1.00e0");
        assert_eq!(sci_up(&q("12")), "1.20e1");
        assert_eq!(sci_up(&q("1")), "1.00e0");
        assert_eq!(sci_up(&Rational::zero()), "0");
    }

    #[test]
    fn tables_pad_columns() {
        let t = plain_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }

    #[test]
    fn exit_code_priorities() {
        let v = [Verdict::Holds, Verdict::Indeterminate("?".into())];
        assert_eq!(exit_code(&v), 2);
        let v = [Verdict::Indeterminate("?".into()), Verdict::Violated("!".into())];
        assert_eq!(exit_code(&v), 1);
        assert_eq!(exit_code(&[Verdict::Holds]), 0);
    }
}

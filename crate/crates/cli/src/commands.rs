use std::fmt::Write as _;
use std::thread;
use std::time::Instant;

use num_traits::One;
use serde::Serialize;
use serde_json::json;

use qzeta_core::identity::{self, ClosedFormReport};
use qzeta_core::numerics::{self, LimitReport};
use qzeta_core::qpoly::{self, CoefficientTables};
use qzeta_core::series::theta_psi;
use qzeta_core::{BigRational, Error, IntPolynomial, MulStrategy, VerificationReport};

use crate::{Format, LimitChoice};

/// Highest k run by `verify` when no `--k` is given.
const DEFAULT_VERIFY_MAX_K: u32 = 6;
const MIN_BENCH_ORDER: usize = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parity { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

pub struct Rendered {
    pub body: String,
    pub success: bool,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Rendered {
            body,
            success: true,
        }
    }
}

type CmdResult = Result<Rendered, CliError>;

fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Failed(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_string<F>(header: &[&str], fill: F) -> Result<String, CliError>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<(), csv::Error>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    fill(&mut w)?;
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn poly(k: u32, format: Format) -> CmdResult {
    let tables = CoefficientTables::new(k);
    let p_even = qpoly::p_even(k);
    let p_odd = if k % 2 == 1 {
        Some(qpoly::p_odd(k)?)
    } else {
        None
    };

    let body = match format {
        Format::Json => json_line(&json!({
            "k": k,
            "a": tables.a.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "b": tables.b.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "p_even": &p_even,
            "p_odd": &p_odd,
        }))?,
        Format::Csv => csv_string(&["table", "index", "value"], |w| {
            for (m, a) in tables.a.iter().enumerate() {
                w.write_record(["a", &m.to_string(), &a.to_string()])?;
            }
            for (l, b) in tables.b.iter().enumerate() {
                w.write_record(["b", &(l + 1).to_string(), &b.to_string()])?;
            }
            let polys: [(&str, Option<&IntPolynomial>); 2] =
                [("p_even", Some(&p_even)), ("p_odd", p_odd.as_ref())];
            for (name, p) in polys {
                if let Some(p) = p {
                    for (i, c) in p.coeffs().iter().enumerate() {
                        w.write_record([name, &i.to_string(), &c.to_string()])?;
                    }
                }
            }
            Ok(())
        })?,
        Format::Text => {
            let mut s = String::new();
            let n = 2 * k - 1;
            writeln!(s, "k = {k}").unwrap();
            writeln!(s, "a_{k}(m), m = 0..={n}: {}", join(&tables.a)).unwrap();
            writeln!(s, "b_{k}(l), l = 1..={n}: {}", join(&tables.b)).unwrap();
            writeln!(s, "P^e_{}(z) = {p_even}", 2 * k - 2).unwrap();
            if let Some(p) = &p_odd {
                writeln!(s, "P^o_{}(z) = {p}", 4 * k - 2).unwrap();
            }
            s
        }
    };
    Ok(Rendered::ok(body))
}

fn verify_all(ks: &[u32], order: usize) -> Result<Vec<VerificationReport>, CliError> {
    for &k in ks {
        if order < 4 * k as usize {
            return Err(CliError::Usage(format!(
                "order {order} is below 4k = {} for k = {k}",
                4 * k
            )));
        }
    }
    let results: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = ks
            .iter()
            .map(|&k| scope.spawn(move || identity::verify_theorem(k, order)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    results
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

pub fn verify(k: Option<u32>, order: usize, format: Format) -> CmdResult {
    let ks: Vec<u32> = match k {
        Some(k) => vec![k],
        None => (1..=DEFAULT_VERIFY_MAX_K).collect(),
    };
    let reports = verify_all(&ks, order)?;
    let success = reports.iter().all(VerificationReport::passed);

    let body = match format {
        Format::Json if reports.len() == 1 => json_line(&reports[0])?,
        Format::Json => json_line(&reports)?,
        Format::Csv => csv_string(
            &[
                "k",
                "order",
                "status",
                "t_is_zero",
                "t_parity",
                "first_nonzero_exponent",
                "failure_exponent",
            ],
            |w| {
                for r in &reports {
                    w.write_record([
                        r.k.to_string(),
                        r.order.to_string(),
                        r.status.to_string(),
                        r.t_is_zero.to_string(),
                        r.t_parity.to_string(),
                        r.first_nonzero_exponent
                            .map_or_else(String::new, |e| e.to_string()),
                        r.failure_exponent
                            .map_or_else(String::new, |e| e.to_string()),
                    ])?;
                }
                Ok(())
            },
        )?,
        Format::Text => reports
            .iter()
            .map(VerificationReport::render_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Rendered { body, success })
}

pub fn count(
    k: Option<u32>,
    fourk: Option<u32>,
    n_max: u64,
    order: Option<usize>,
    format: Format,
) -> CmdResult {
    let k = match (k, fourk) {
        (Some(k), None) => k,
        (None, Some(f)) if f % 4 == 0 && (4..=20).contains(&f) => f / 4,
        (None, Some(f)) => {
            return Err(CliError::Usage(format!(
                "--fourk must be one of 4, 8, 12, 16, 20 (got {f})"
            )))
        }
        _ => return Err(CliError::Usage("give exactly one of --k or --fourk".into())),
    };
    let needed = 2 * n_max as usize + k as usize;
    let order = order.unwrap_or(needed);
    if order < needed {
        return Err(CliError::Usage(format!(
            "order {order} is below 2*n_max + k = {needed}"
        )));
    }
    let report = identity::t_count_closed_form_check(k, n_max, order)?;
    let success = report.passed;
    let body = match format {
        Format::Json => json_line(&report)?,
        Format::Csv => count_csv(&report)?,
        Format::Text => count_text(&report),
    };
    Ok(Rendered { body, success })
}

fn count_csv(report: &ClosedFormReport) -> Result<String, CliError> {
    csv_string(
        &["n", "series", "closed_form", "brute_force", "agrees"],
        |w| {
            for row in &report.rows {
                w.write_record([
                    row.n.to_string(),
                    row.series.to_string(),
                    rational_str(&row.closed_form),
                    row.brute_force
                        .as_ref()
                        .map_or_else(String::new, ToString::to_string),
                    row.agrees.to_string(),
                ])?;
            }
            Ok(())
        },
    )
}

fn count_text(report: &ClosedFormReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "t_{}(n), n = 0..={} (order {})",
        4 * report.k,
        report.n_max,
        report.order
    )
    .unwrap();
    let rows: Vec<[String; 5]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.series.to_string(),
                rational_str(&r.closed_form),
                r.brute_force
                    .as_ref()
                    .map_or_else(|| "-".to_string(), ToString::to_string),
                if r.agrees { "yes" } else { "NO" }.to_string(),
            ]
        })
        .collect();
    let header = ["n", "series", "closed form", "brute force", "agrees"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| {
        let mut l = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                l.push_str("  ");
            }
            write!(l, "{cell:>w$}").unwrap();
        }
        l
    };
    writeln!(s, "{}", line(header)).unwrap();
    for row in &rows {
        writeln!(s, "{}", line(row.each_ref().map(String::as_str))).unwrap();
    }
    match report.first_discrepancy {
        None => writeln!(s, "status: pass").unwrap(),
        Some(n) => writeln!(s, "status: fail (first discrepancy at n = {n})").unwrap(),
    }
    s
}

fn parse_q_points(text: &str) -> Result<Vec<f64>, CliError> {
    let mut points = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let q: f64 = part
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid q value {part:?}")))?;
        if !(q > 0.0 && q < 1.0) {
            return Err(CliError::Usage(format!("q = {q} is outside (0, 1)")));
        }
        points.push(q);
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "q points must be strictly increasing".into(),
        ));
    }
    Ok(points)
}

pub fn limit(k: u32, q_points: Option<&str>, kind: LimitChoice, format: Format) -> CmdResult {
    let points = match q_points {
        Some(text) => parse_q_points(text)?,
        None => numerics::default_q_points(),
    };
    let report: LimitReport = match kind {
        LimitChoice::Zeta => numerics::zeta_recovery_check(k, &points)?,
        LimitChoice::Qgamma => numerics::qgamma_limit_check(k, &points)?,
    };
    let body = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv(),
        Format::Text => report.render_text(),
    };
    Ok(Rendered {
        body,
        success: report.converging,
    })
}

#[derive(Serialize)]
struct BenchRow {
    strategy: &'static str,
    order: usize,
    k: u32,
    millis: f64,
    digest: String,
}

pub fn bench(order: usize, k: u32, format: Format) -> CmdResult {
    if order < MIN_BENCH_ORDER {
        return Err(CliError::Usage(format!(
            "bench order must be at least {MIN_BENCH_ORDER} (got {order})"
        )));
    }
    let psi = theta_psi(order);
    let rows: Vec<BenchRow> = MulStrategy::ALL
        .iter()
        .map(|&strategy| {
            let start = Instant::now();
            let power = psi.pow_with(4 * k, strategy);
            let millis = start.elapsed().as_secs_f64() * 1e3;
            BenchRow {
                strategy: strategy.name(),
                order,
                k,
                millis,
                digest: power.digest(),
            }
        })
        .collect();
    if rows.windows(2).any(|w| w[0].digest != w[1].digest) {
        return Err(CliError::Failed(format!(
            "strategies disagree on psi^{} at order {order}",
            4 * k
        )));
    }
    let body = match format {
        Format::Json => json_line(&rows)?,
        Format::Csv => csv_string(&["strategy", "order", "k", "millis", "digest"], |w| {
            for r in &rows {
                w.write_record([
                    r.strategy.to_string(),
                    r.order.to_string(),
                    r.k.to_string(),
                    format!("{:.3}", r.millis),
                    r.digest.clone(),
                ])?;
            }
            Ok(())
        })?,
        Format::Text => {
            let mut s = format!("psi^{} to order {order}\n", 4 * k);
            for r in &rows {
                writeln!(s, "{:<10} {:>10.3} ms", r.strategy, r.millis).unwrap();
            }
            writeln!(s, "digest {}", rows[0].digest).unwrap();
            s
        }
    };
    Ok(Rendered::ok(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_points_parse_and_validate() {
        assert_eq!(parse_q_points("0.5, 0.9").unwrap(), vec![0.5, 0.9]);
        assert!(matches!(parse_q_points("0.5,1.0"), Err(CliError::Usage(_))));
        assert!(matches!(parse_q_points("0"), Err(CliError::Usage(_))));
        assert!(matches!(parse_q_points("0.9,0.5"), Err(CliError::Usage(_))));
        assert!(matches!(parse_q_points("abc"), Err(CliError::Usage(_))));
    }

    #[test]
    fn rational_str_drops_unit_denominator() {
        let r = BigRational::new(6.into(), 3.into());
        assert_eq!(rational_str(&r), "2");
        let r = BigRational::new(1.into(), 3.into());
        assert_eq!(rational_str(&r), "1/3");
    }
}

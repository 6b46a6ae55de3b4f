//! Double-precision evaluation near `q = 1`.
//!
//! Two limits are exhibited numerically:
//!
//! - `(1-q)^{2k} prod (1-q^{2n})^{4k} / (1-q^{2n-1})^{4k} -> π^{2k} / 4^k`
//! - the Lambert sum times `(1-q)^{2k}` (even `k`) or `(1-q^2)^{2k}` (odd
//!   `k`) tends to `2^{2k-1} (2k-1)! (1 - 4^{-k}) ζ(2k) = d_k π^{2k} / 4^k`.
//!
//! Convergence is only linear in `1 - q`, so reports carry the whole error
//! trend rather than a single tight number.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{d_constant, factorial, zeta_even_exact};
use crate::qpoly::{parity_polynomial, IntPolynomial};

/// Summation stops once a term falls below this fraction of the running value.
const RELATIVE_CUTOFF: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    QGamma,
    ZetaRecovery,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub kind: LimitKind,
    pub k: u32,
    pub q_points: Vec<f64>,
    pub lhs_values: Vec<f64>,
    pub rhs_values: Vec<f64>,
    pub target: f64,
    pub relative_errors: Vec<f64>,
    /// Relative errors strictly decrease along `q_points`.
    pub converging: bool,
}

#[derive(Serialize)]
struct CsvRow {
    q: f64,
    lhs: f64,
    target: f64,
    rel_err: f64,
}

impl LimitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// CSV with columns `q,lhs,target,rel_err`.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for i in 0..self.q_points.len() {
            writer
                .serialize(CsvRow {
                    q: self.q_points[i],
                    lhs: self.lhs_values[i],
                    target: self.target,
                    rel_err: self.relative_errors[i],
                })
                .expect("writing to memory cannot fail");
        }
        let bytes = writer.into_inner().expect("writing to memory cannot fail");
        String::from_utf8(bytes).expect("csv output is utf-8")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{:?} limit, k = {}, target = {:.15e}, converging = {}\n",
            self.kind, self.k, self.target, self.converging
        );
        out.push_str(&format!(
            "{:>22} {:>24} {:>24} {:>12}\n",
            "q", "lhs", "rhs", "rel_err"
        ));
        for i in 0..self.q_points.len() {
            out.push_str(&format!(
                "{:>22.17} {:>24.15e} {:>24.15e} {:>12.4e}\n",
                self.q_points[i], self.lhs_values[i], self.rhs_values[i], self.relative_errors[i]
            ));
        }
        out
    }
}

/// `q = 1 - 2^{-m}` for `m = 4..=10`.
pub fn default_q_points() -> Vec<f64> {
    (4..=10).map(|m| 1.0 - (-(m as f64)).exp2()).collect()
}

fn check_q(q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidArgument(format!("q = {q} is outside [0, 1)")));
    }
    Ok(())
}

fn check_points(q_points: &[f64]) -> Result<()> {
    if q_points.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one q point is required".into(),
        ));
    }
    for &q in q_points {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidArgument(format!("q = {q} is outside (0, 1)")));
        }
    }
    if q_points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "q points must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `1 - q^m`, accurate when `q^m` is close to 1.
fn one_minus_pow(ln_q: f64, m: f64) -> f64 {
    -(m * ln_q).exp_m1()
}

fn ln_q(q: f64) -> f64 {
    (q - 1.0).ln_1p()
}

/// `(1-q)^{2k} prod_{n>=1} (1-q^{2n})^{4k} / (1-q^{2n-1})^{4k}`, summed in
/// log space.
pub fn qgamma_value(k: u32, q: f64) -> Result<f64> {
    check_q(q)?;
    if q == 0.0 {
        return Ok(1.0);
    }
    let lq = ln_q(q);
    let mut log_sum = 0.0f64;
    let mut n = 1u64;
    loop {
        let odd = (2 * n - 1) as f64;
        if (odd * lq).exp() < 1e-18 {
            break;
        }
        log_sum += one_minus_pow(lq, odd + 1.0).ln() - one_minus_pow(lq, odd).ln();
        n += 1;
    }
    let k = k as f64;
    Ok((2.0 * k * (1.0 - q).ln() + 4.0 * k * log_sum).exp())
}

/// `((1-q) prod (1-q^{2n})^2 / (1-q^{2n-1})^2)^{2k}` by direct multiplication;
/// a second route to [`qgamma_value`].
fn qgamma_direct(k: u32, q: f64) -> f64 {
    if q == 0.0 {
        return 1.0;
    }
    let lq = ln_q(q);
    let mut value = 1.0 - q;
    let mut n = 1u64;
    loop {
        let odd = (2 * n - 1) as f64;
        if (odd * lq).exp() < 1e-18 {
            break;
        }
        let ratio = one_minus_pow(lq, odd + 1.0) / one_minus_pow(lq, odd);
        value *= ratio * ratio;
        n += 1;
    }
    value.powi(2 * k as i32)
}

/// Sums `sum_{n>=0} weight * x P(x) * (scale / (1 - x^step))^{2k}` with
/// `x = q^{2n+1}`. `scale = 1` gives the bare Lambert sum.
fn lambert_sum(k: u32, poly: &IntPolynomial, weight: f64, step: f64, scale: f64, q: f64) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    let lq = ln_q(q);
    let mut total = 0.0f64;
    let mut n = 0u64;
    loop {
        let m = (2 * n + 1) as f64;
        let x = (m * lq).exp();
        let ratio = scale / one_minus_pow(lq, m * step);
        let term = weight * x * poly.eval_f64(x) * ratio.powi(2 * k as i32);
        total += term;
        if term == 0.0 || term.abs() < RELATIVE_CUTOFF * total.abs() {
            break;
        }
        n += 1;
    }
    total
}

/// The Lambert sum for `k`'s parity (the same series as
/// [`crate::identity::lambert_lhs`]), evaluated at `q` in double precision.
pub fn lambert_sum_f64(k: u32, q: f64) -> Result<f64> {
    check_q(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k must be a positive integer".into(),
        ));
    }
    let poly = parity_polynomial(k);
    Ok(if k.is_multiple_of(2) {
        // x = (q^2)^{2n+1} = q^{4n+2}
        lambert_sum(k, &poly, (2.0f64).powi(2 * k as i32 - 1), 1.0, 1.0, q * q)
    } else {
        lambert_sum(k, &poly, 1.0, 2.0, 1.0, q)
    })
}

/// `(1-q)^{2k}` times the half-argument Lambert sum (even `k`), or
/// `(1-q^2)^{2k}` times the integer-exponent Lambert sum (odd `k`).
pub fn zeta_recovery_value(k: u32, q: f64) -> Result<f64> {
    check_q(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k must be a positive integer".into(),
        ));
    }
    let poly = parity_polynomial(k);
    Ok(if k.is_multiple_of(2) {
        let weight = (2.0f64).powi(2 * k as i32 - 1);
        lambert_sum(k, &poly, weight, 1.0, 1.0 - q, q)
    } else {
        lambert_sum(k, &poly, 1.0, 2.0, (1.0 - q) * (1.0 + q), q)
    })
}

/// The product side matching [`zeta_recovery_value`]: `d_k q^{k/2}` times the
/// q-Gamma product at `q` (even `k`), or `d_k q^k` times it at `q^2` (odd).
pub fn zeta_product_value(k: u32, q: f64) -> Result<f64> {
    check_q(q)?;
    let d = d_constant(k).to_f64().unwrap_or(f64::NAN);
    Ok(if k.is_multiple_of(2) {
        d * q.powf(k as f64 / 2.0) * qgamma_value(k, q)?
    } else {
        d * q.powi(k as i32) * qgamma_value(k, q * q)?
    })
}

/// Exact rational `c` with limit `c π^{2k}`:
/// `2^{2k-1} (2k-1)! (1 - 4^{-k}) ζ(2k) / π^{2k}`.
pub fn zeta_limit_coefficient(k: u32) -> BigRational {
    let four_k = BigRational::from_integer(num_traits::pow(BigInt::from(4), k as usize));
    let odd_part = (&four_k - BigRational::one()) / &four_k;
    BigRational::from_integer((BigInt::one() << (2 * k as usize - 1)) * factorial(2 * k - 1))
        * odd_part
        * zeta_even_exact(k)
}

fn pi_power(k: u32) -> f64 {
    PI.powi(2 * k as i32)
}

fn build_report(
    kind: LimitKind,
    k: u32,
    q_points: &[f64],
    target: f64,
    mut eval: impl FnMut(f64) -> Result<(f64, f64)>,
) -> Result<LimitReport> {
    check_points(q_points)?;
    let mut lhs_values = Vec::with_capacity(q_points.len());
    let mut rhs_values = Vec::with_capacity(q_points.len());
    for &q in q_points {
        let (l, r) = eval(q)?;
        lhs_values.push(l);
        rhs_values.push(r);
    }
    let relative_errors: Vec<f64> = lhs_values
        .iter()
        .map(|v| ((v - target) / target).abs())
        .collect();
    let converging = relative_errors.windows(2).all(|w| w[1] < w[0]);
    Ok(LimitReport {
        kind,
        k,
        q_points: q_points.to_vec(),
        lhs_values,
        rhs_values,
        target,
        relative_errors,
        converging,
    })
}

/// q-Gamma limit: `(1-q)^{2k} ψ^{4k}(q) -> π^{2k} / 4^k`.
pub fn qgamma_limit_check(k: u32, q_points: &[f64]) -> Result<LimitReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k must be a positive integer".into(),
        ));
    }
    let coefficient = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(4), k as usize));
    let target = coefficient.to_f64().unwrap_or(f64::NAN) * pi_power(k);
    build_report(LimitKind::QGamma, k, q_points, target, |q| {
        Ok((qgamma_value(k, q)?, qgamma_direct(k, q)))
    })
}

/// Recovery of `ζ(2k)` from the scaled Lambert sum.
pub fn zeta_recovery_check(k: u32, q_points: &[f64]) -> Result<LimitReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k must be a positive integer".into(),
        ));
    }
    let target = zeta_limit_coefficient(k).to_f64().unwrap_or(f64::NAN) * pi_power(k);
    build_report(LimitKind::ZetaRecovery, k, q_points, target, |q| {
        Ok((zeta_recovery_value(k, q)?, zeta_product_value(k, q)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::lambert_lhs;

    #[test]
    fn limit_coefficient_is_d_over_four_pow() {
        for k in 1..=8u32 {
            let four_k = BigRational::from_integer(num_traits::pow(BigInt::from(4), k as usize));
            assert_eq!(zeta_limit_coefficient(k), d_constant(k) / four_k);
        }
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(qgamma_value(3, 0.0).unwrap(), 1.0);
        assert_eq!(zeta_recovery_value(2, 0.0).unwrap(), 0.0);
        assert_eq!(zeta_recovery_value(1, 0.0).unwrap(), 0.0);
        assert!(qgamma_value(1, 1.0).is_err());
        assert!(zeta_recovery_value(1, -0.1).is_err());
    }

    #[test]
    fn qgamma_near_one() {
        let v = qgamma_value(1, 0.99).unwrap();
        let target = PI * PI / 4.0;
        assert!(((v - target) / target).abs() < 0.05, "{v}");
        let report = qgamma_limit_check(2, &default_q_points()).unwrap();
        assert!(report.converging, "{}", report.render_text());
        for (l, r) in report.lhs_values.iter().zip(&report.rhs_values) {
            assert!(((l - r) / l).abs() < 1e-9, "{l} vs {r}");
        }
    }

    #[test]
    fn zeta_recovery_k2() {
        let report = zeta_recovery_check(2, &[0.995]).unwrap();
        assert!(report.relative_errors[0] < 0.05, "{}", report.render_text());
        let k1 = zeta_recovery_check(1, &default_q_points()).unwrap();
        assert!((k1.target - PI * PI / 4.0).abs() < 1e-12);
        assert!(k1.converging, "{}", k1.render_text());
    }

    #[test]
    fn rejects_bad_points() {
        assert!(zeta_recovery_check(1, &[0.5, 1.0]).is_err());
        assert!(zeta_recovery_check(1, &[0.9, 0.5]).is_err());
        assert!(zeta_recovery_check(1, &[]).is_err());
        assert!(qgamma_limit_check(1, &[0.0]).is_err());
        assert!(qgamma_limit_check(0, &[0.5]).is_err());
    }

    #[test]
    fn exact_series_matches_float_sum() {
        let order = 600;
        for k in 1..=4u32 {
            let exact = lambert_lhs(k, order).unwrap();
            for q in [0.1, 0.5, 0.8, 0.9] {
                let from_series = exact.eval_f64(q);
                let direct = lambert_sum_f64(k, q).unwrap();
                let rel = ((from_series - direct) / direct).abs();
                assert!(rel < 1e-10, "k={k} q={q}: {from_series} vs {direct}");
            }
        }
    }

    #[test]
    fn csv_columns() {
        let report = zeta_recovery_check(1, &[0.5, 0.75]).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("q,lhs,target,rel_err"));
        assert_eq!(lines.count(), 2);
    }
}

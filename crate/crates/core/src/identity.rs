//! Both sides of the Lambert-series / eta-quotient identities.
//!
//! For every `k >= 1` (integer exponents throughout):
//!
//! ```text
//! k even:  sum_{n>=0} 2^{2k-1} q^{4n+2} P^e(q^{4n+2}) / (1 - q^{4n+2})^{2k}
//! k odd:   sum_{n>=0} q^{2n+1} P^o(q^{2n+1}) / (1 - q^{4n+2})^{2k}
//!          = H_{2k}(q) = d_k q^k ψ^{4k}(q^2) + T_{2k}(q)
//! ```
//!
//! `H_{2k}` is built independently from divisor sums, `T_{2k}` is extracted as
//! the difference of the Lambert sum and the product, and a
//! [`VerificationReport`] records every sub-check with the first offending
//! exponent.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{d_constant, factorial, sigma_sharp, stirling_row};
use crate::qpoly::{p_even, p_odd, parity_polynomial, IntPolynomial};
use crate::series::{eta_quotient_psi, theta_psi, ParitySupport, QSeries};

/// Brute-force representation counting stays below these limits.
pub const BRUTE_FORCE_MAX_N: u64 = 60;
pub const BRUTE_FORCE_MAX_PARTS: u32 = 16;

/// Parameters of the identity for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaCase {
    pub k: u32,
    /// Parity of `k`; selects which form of the identity applies.
    pub parity: ParitySupport,
    pub d_k: BigRational,
    /// `P^e_{2k-2}` for even `k`, `P^o_{4k-2}` for odd `k`.
    pub poly: IntPolynomial,
    pub order: usize,
}

impl ZetaCase {
    pub fn new(k: u32, order: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "k must be a positive integer".into(),
            ));
        }
        Ok(ZetaCase {
            k,
            parity: ParitySupport::of(k as u64),
            d_k: d_constant(k),
            poly: parity_polynomial(k),
            order,
        })
    }

    pub fn lambert_lhs(&self) -> QSeries {
        match self.parity {
            ParitySupport::Even => even_lhs(self.k, &self.poly, self.order),
            _ => odd_lhs(self.k, &self.poly, self.order),
        }
    }

    pub fn rhs_product(&self) -> QSeries {
        rhs_from(self.k, &self.d_k, self.order)
    }
}

fn two_pow_rational(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << e as usize)
}

fn even_lhs(k: u32, pe: &IntPolynomial, order: usize) -> QSeries {
    let numer = pe.shift(1);
    let mut total = QSeries::zero(order);
    let mut m = 2;
    while m <= order {
        let mut term = numer.to_series_at_power(m, order);
        term.mul_pow_one_minus_in_place(m, -(2 * k as i32));
        total = total.add(&term);
        m += 4;
    }
    total.scale(&two_pow_rational(2 * k - 1))
}

fn odd_lhs(k: u32, po: &IntPolynomial, order: usize) -> QSeries {
    let numer = po.shift(1);
    let mut total = QSeries::zero(order);
    let mut m = 1;
    while m <= order {
        let mut term = numer.to_series_at_power(m, order);
        term.mul_pow_one_minus_in_place(2 * m, -(2 * k as i32));
        total = total.add(&term);
        m += 2;
    }
    total
}

fn rhs_from(k: u32, d_k: &BigRational, order: usize) -> QSeries {
    eta_quotient_psi(order)
        .substitute_power(2)
        .expect("power 2 is valid")
        .pow(4 * k)
        .shift(k as usize)
        .scale(d_k)
}

/// `sum_n 2^{2k-1} q^{4n+2} P^e(q^{4n+2}) / (1 - q^{4n+2})^{2k}`, even `k >= 2`.
pub fn lambert_lhs_even(k: u32, order: usize) -> Result<QSeries> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::Parity {
            k,
            expected: ParitySupport::Even,
        });
    }
    if order < 2 {
        return Err(Error::InvalidArgument("order must be at least 2".into()));
    }
    Ok(even_lhs(k, &p_even(k), order))
}

/// `sum_n q^{2n+1} P^o(q^{2n+1}) / (1 - q^{4n+2})^{2k}`, odd `k`.
pub fn lambert_lhs_odd(k: u32, order: usize) -> Result<QSeries> {
    let po = p_odd(k)?;
    Ok(odd_lhs(k, &po, order))
}

/// The Lambert sum matching `k`'s parity.
pub fn lambert_lhs(k: u32, order: usize) -> Result<QSeries> {
    Ok(ZetaCase::new(k, order)?.lambert_lhs())
}

/// `H_{2k} = sum σ^#_{2k-1}(n) q^n` over `n >= 1` with `n ≡ k (mod 2)`.
pub fn eisenstein_h(k: u32, order: usize) -> QSeries {
    assert!(k >= 1, "eisenstein_h: k must be positive");
    let weight = 2 * k - 1;
    QSeries::from_fn(order, |n| {
        if n == 0 || n % 2 != k as usize % 2 {
            BigRational::zero()
        } else {
            BigRational::from_integer(sigma_sharp(weight, n as u64))
        }
    })
}

/// `d_k q^k ψ^{4k}(q^2)`.
pub fn rhs_product(k: u32, order: usize) -> Result<QSeries> {
    Ok(ZetaCase::new(k, order)?.rhs_product())
}

/// `T_{2k}` = Lambert sum minus `d_k q^k ψ^{4k}(q^2)`.
pub fn extract_cusp_term(k: u32, order: usize) -> Result<QSeries> {
    let case = ZetaCase::new(k, order)?;
    Ok(case.lambert_lhs().sub(&case.rhs_product()))
}

/// Closed forms of `T_{2k}` known for small `k`: zero for `k = 1, 2` and
/// `q prod_{n>=1} (1 - q^{2n})^{12}` for `k = 3`.
pub fn known_cusp_term(k: u32, order: usize) -> Option<QSeries> {
    match k {
        1 | 2 => Some(QSeries::zero(order)),
        3 => {
            let mut euler = QSeries::one(order);
            let mut n = 1;
            while 2 * n <= order {
                euler.mul_pow_one_minus_in_place(2 * n, 1);
                n += 1;
            }
            Some(euler.pow(12).shift(1))
        }
        _ => None,
    }
}

/// `ψ^{fourk}(q)`; its `q^n` coefficient is `t_{fourk}(n)`.
pub fn psi_power(fourk: u32, order: usize) -> QSeries {
    theta_psi(order).pow(fourk)
}

/// Number of ordered ways to write `n` as a sum of `fourk` triangular numbers
/// (zero allowed), by exhaustive enumeration.
///
/// Walks multisets of positive triangular parts in non-increasing order and
/// converts each to an ordered count with the multinomial coefficient. Only
/// meant as an oracle: `n <= 60`, `fourk <= 16`.
pub fn t_count(fourk: u32, n: u64) -> Result<BigInt> {
    if fourk == 0 || !fourk.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "number of triangular summands must be a positive multiple of 4, got {fourk}"
        )));
    }
    if fourk > BRUTE_FORCE_MAX_PARTS || n > BRUTE_FORCE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "brute-force counting is capped at {BRUTE_FORCE_MAX_PARTS} summands and n <= {BRUTE_FORCE_MAX_N}"
        )));
    }
    let triangular: Vec<u64> = (1..)
        .map(|i: u64| i * (i + 1) / 2)
        .take_while(|&t| t <= n)
        .collect();
    let fact: Vec<u128> = (0..=fourk as u128)
        .scan(1u128, |acc, i| {
            if i > 0 {
                *acc *= i;
            }
            Some(*acc)
        })
        .collect();

    struct Walk<'a> {
        parts: u32,
        tri: &'a [u64],
        fact: &'a [u128],
        mult: Vec<u32>,
        total: u128,
    }

    impl Walk<'_> {
        fn go(&mut self, remaining: u64, max_index: usize, used: u32) {
            if remaining == 0 {
                let denom = self
                    .mult
                    .iter()
                    .fold(self.fact[(self.parts - used) as usize], |acc, &m| {
                        acc * self.fact[m as usize]
                    });
                self.total += self.fact[self.parts as usize] / denom;
                return;
            }
            if used == self.parts {
                return;
            }
            for i in (0..=max_index).rev() {
                let t = self.tri[i];
                if t > remaining {
                    continue;
                }
                self.mult[i] += 1;
                self.go(remaining - t, i, used + 1);
                self.mult[i] -= 1;
            }
        }
    }

    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut walk = Walk {
        parts: fourk,
        tri: &triangular,
        fact: &fact,
        mult: vec![0; triangular.len()],
        total: 0,
    };
    walk.go(n, triangular.len() - 1, 0);
    Ok(BigInt::from(walk.total))
}

/// One row of the representation-count table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u64,
    /// `t_{4k}(n)` read off the `ψ^{4k}` expansion.
    #[serde(serialize_with = "crate::serde_str::big_int")]
    pub series: BigInt,
    /// `(σ^#_{2k-1}(2n+k) - a(2n+k)) / d_k` with `a` from the extracted `T_{2k}`.
    #[serde(serialize_with = "crate::serde_str::rational")]
    pub closed_form: BigRational,
    /// Exhaustive count, when inside the brute-force limits.
    #[serde(serialize_with = "crate::serde_str::opt_big_int")]
    pub brute_force: Option<BigInt>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub k: u32,
    pub n_max: u64,
    pub order: usize,
    pub rows: Vec<CountRow>,
    pub passed: bool,
    pub first_discrepancy: Option<u64>,
}

/// Checks `t_{4k}(n) = (σ^#_{2k-1}(2n+k) - a(2n+k)) / d_k` for `0 <= n <= n_max`,
/// and compares against exhaustive counts for `n <= brute_force_max`.
pub fn t_count_closed_form_check_with(
    k: u32,
    n_max: u64,
    order: usize,
    brute_force_max: u64,
) -> Result<ClosedFormReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k must be a positive integer".into(),
        ));
    }
    let needed = 2 * n_max as usize + k as usize;
    if needed > order {
        return Err(Error::InvalidArgument(format!(
            "order {order} is too small: 2*n_max + k = {needed}"
        )));
    }
    let case = ZetaCase::new(k, order)?;
    let cusp = case.lambert_lhs().sub(&case.rhs_product());
    let psi = psi_power(4 * k, n_max as usize);
    let brute_ok = 4 * k <= BRUTE_FORCE_MAX_PARTS;

    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let idx = 2 * n + k as u64;
        let series = psi.coeff(n as usize).to_integer();
        let sharp = BigRational::from_integer(sigma_sharp(2 * k - 1, idx));
        let closed_form = (sharp - cusp.coeff(idx as usize)) / &case.d_k;
        let brute_force = if brute_ok && n <= brute_force_max.min(BRUTE_FORCE_MAX_N) {
            Some(t_count(4 * k, n)?)
        } else {
            None
        };
        let agrees = closed_form == BigRational::from_integer(series.clone())
            && brute_force.as_ref().is_none_or(|b| *b == series);
        rows.push(CountRow {
            n,
            series,
            closed_form,
            brute_force,
            agrees,
        });
    }
    let first_discrepancy = rows.iter().find(|r| !r.agrees).map(|r| r.n);
    Ok(ClosedFormReport {
        k,
        n_max,
        order,
        passed: first_discrepancy.is_none(),
        rows,
        first_discrepancy,
    })
}

/// [`t_count_closed_form_check_with`] with brute force up to `n = 30`.
pub fn t_count_closed_form_check(k: u32, n_max: u64, order: usize) -> Result<ClosedFormReport> {
    t_count_closed_form_check_with(k, n_max, order, 30)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformReport {
    pub l: u32,
    pub order: usize,
    pub passed: bool,
    pub first_mismatch: Option<usize>,
}

/// Expands `sum_j j! S(l, j) q^j / (1 - q)^{j+1}` and compares it with
/// `sum_n n^l q^n`.
pub fn stirling_transform_check(l: u32, order: usize) -> Result<TransformReport> {
    if l == 0 {
        return Err(Error::InvalidArgument(
            "l must be a positive integer".into(),
        ));
    }
    let stirling = stirling_row(l as usize);
    let mut transformed = QSeries::zero(order);
    for j in 0..=l {
        let c = factorial(j) * &stirling[j as usize];
        if c.is_zero() {
            continue;
        }
        let term = QSeries::monomial(order, j as usize, BigRational::from_integer(c))
            .mul_pow_one_minus(1, -(j as i32 + 1));
        transformed = transformed.add(&term);
    }
    let direct = QSeries::from_fn(order, |n| {
        BigRational::from_integer(num_traits::pow(BigInt::from(n), l as usize))
    });
    let first_mismatch = transformed.first_difference(&direct);
    Ok(TransformReport {
        l,
        order,
        passed: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one step of [`verify_theorem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub failure_exponent: Option<usize>,
}

impl SubCheck {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        SubCheck {
            name: name.to_owned(),
            passed: true,
            detail: detail.into(),
            failure_exponent: None,
        }
    }

    fn fail(name: &str, detail: impl Into<String>, exponent: Option<usize>) -> Self {
        SubCheck {
            name: name.to_owned(),
            passed: false,
            detail: detail.into(),
            failure_exponent: exponent,
        }
    }

    fn compare(name: &str, got: &QSeries, want: &QSeries, what: &str) -> Self {
        match got.first_difference(want) {
            None => SubCheck::pass(
                name,
                format!("{what} agree to q^{}", got.order().min(want.order())),
            ),
            Some(e) => SubCheck::fail(
                name,
                format!("q^{e}: got {}, expected {}", got.coeff(e), want.coeff(e)),
                Some(e),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub k: u32,
    pub order: usize,
    pub lhs_series_digest: String,
    pub rhs_series_digest: String,
    pub t_series: QSeries,
    pub t_is_zero: bool,
    pub t_parity: ParitySupport,
    pub first_nonzero_exponent: Option<usize>,
    pub status: Status,
    pub failure_exponent: Option<usize>,
    pub checks: Vec<SubCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Human-readable summary table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "k = {}, order = {}: {}",
            self.k, self.order, self.status
        );
        let _ = writeln!(out, "  lhs digest   {}", self.lhs_series_digest);
        let _ = writeln!(out, "  rhs digest   {}", self.rhs_series_digest);
        let _ = writeln!(
            out,
            "  T_{}: zero = {}, parity = {}, first nonzero exponent = {}",
            2 * self.k,
            self.t_is_zero,
            self.t_parity,
            self.first_nonzero_exponent
                .map_or_else(|| "-".to_owned(), |e| e.to_string())
        );
        if let Some(e) = self.failure_exponent {
            let _ = writeln!(out, "  first failure at q^{e}");
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {:<width$}  {}", c.name, c.detail);
        }
        out
    }
}

/// Runs every check of the identity for `k` to `order` (`order >= 4k`).
///
/// Steps: the Lambert sum equals `H_{2k}`; `T_{2k}` is extracted; `T_{2k}` has
/// zero constant term and exponents of `k`'s parity only; for `k <= 3` it
/// matches its closed form; the representation-count formula holds for small
/// `n`. A failed step never stops later ones.
pub fn verify_theorem(k: u32, order: usize) -> Result<VerificationReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k must be a positive integer".into(),
        ));
    }
    if order < 4 * k as usize {
        return Err(Error::InvalidArgument(format!(
            "order must be at least 4k = {}, got {order}",
            4 * k
        )));
    }
    let case = ZetaCase::new(k, order)?;
    let lhs = case.lambert_lhs();
    let rhs = case.rhs_product();
    let h = eisenstein_h(k, order);
    let t = lhs.sub(&rhs);
    let mut checks = Vec::new();

    checks.push(SubCheck::compare(
        "lambert_equals_eisenstein",
        &lhs,
        &h,
        "Lambert sum and H_2k",
    ));

    let expected_parity = case.parity;
    let off_parity = |s: &QSeries| {
        s.coeffs()
            .iter()
            .enumerate()
            .position(|(i, c)| !c.is_zero() && ParitySupport::of(i as u64) != expected_parity)
    };
    let t_parity = t.parity_support();
    match [("lhs", &lhs), ("rhs", &rhs), ("T", &t)]
        .into_iter()
        .find_map(|(name, s)| off_parity(s).map(|e| (name, e)))
    {
        None => checks.push(SubCheck::pass(
            "parity_support",
            format!("all exponents are {expected_parity}; T support is {t_parity}"),
        )),
        Some((name, e)) => checks.push(SubCheck::fail(
            "parity_support",
            format!(
                "{name} has a nonzero coefficient at q^{e}, expected {expected_parity} exponents"
            ),
            Some(e),
        )),
    }

    if t.coeff(0).is_zero() {
        checks.push(SubCheck::pass(
            "cusp_constant_term",
            "T has zero constant term",
        ));
    } else {
        checks.push(SubCheck::fail(
            "cusp_constant_term",
            format!("T(0) = {}", t.coeff(0)),
            Some(0),
        ));
    }

    if let Some(known) = known_cusp_term(k, order) {
        checks.push(SubCheck::compare(
            "cusp_closed_form",
            &t,
            &known,
            "T and its closed form",
        ));
    }

    let n_max = 20.min((order - k as usize) / 2) as u64;
    let counts = t_count_closed_form_check_with(k, n_max, order, n_max.min(30))?;
    match counts.first_discrepancy {
        None => checks.push(SubCheck::pass(
            "representation_count",
            format!("t_{}(n) formula holds for n <= {n_max}", 4 * k),
        )),
        Some(n) => {
            let row = &counts.rows[n as usize];
            checks.push(SubCheck::fail(
                "representation_count",
                format!(
                    "n = {n}: series {}, closed form {}, brute force {}",
                    row.series,
                    row.closed_form,
                    row.brute_force
                        .as_ref()
                        .map_or_else(|| "-".to_owned(), ToString::to_string)
                ),
                Some(2 * n as usize + k as usize),
            ))
        }
    }

    let failure_exponent = checks.iter().filter_map(|c| c.failure_exponent).min();
    let status = if checks.iter().all(|c| c.passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        k,
        order,
        lhs_series_digest: lhs.digest(),
        rhs_series_digest: rhs.digest(),
        t_is_zero: t.is_zero(),
        t_parity,
        first_nonzero_exponent: t.first_nonzero_exponent(),
        t_series: t,
        status,
        failure_exponent,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn even_lhs_examples() {
        let lhs = lambert_lhs_even(2, 40).unwrap();
        assert_eq!(lhs.coeff(2), int(8));
        assert_eq!(lhs.parity_support(), ParitySupport::Even);
        let oracle = QSeries::from_fn(40, |n| {
            if n > 0 && n % 2 == 0 {
                BigRational::from_integer(BigInt::from(8) * sigma_sharp(3, n as u64 / 2))
            } else {
                BigRational::zero()
            }
        });
        assert_eq!(lhs, oracle);
        assert!(lambert_lhs_even(3, 40).is_err());
        assert!(lambert_lhs_even(2, 1).is_err());
    }

    #[test]
    fn odd_lhs_examples() {
        let lhs = lambert_lhs_odd(1, 7).unwrap();
        assert_eq!(lhs, QSeries::from_integers(7, [0, 1, 0, 4, 0, 6, 0, 8]));
        assert_eq!(lambert_lhs_odd(3, 5).unwrap().coeff(5), int(3126));
        assert_eq!(
            lambert_lhs_odd(5, 60).unwrap().parity_support(),
            ParitySupport::Odd
        );
        assert!(matches!(lambert_lhs_odd(2, 10), Err(Error::Parity { .. })));
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(
            eisenstein_h(1, 7),
            QSeries::from_integers(7, [0, 1, 0, 4, 0, 6, 0, 8])
        );
        assert_eq!(eisenstein_h(2, 4).coeff(2), int(8));
        assert_eq!(eisenstein_h(2, 30).parity_support(), ParitySupport::Even);
        assert_eq!(eisenstein_h(3, 30).parity_support(), ParitySupport::Odd);
    }

    #[test]
    fn rhs_examples() {
        let rhs = rhs_product(1, 40).unwrap();
        assert_eq!(rhs, eisenstein_h(1, 40));
        for k in 1..=4 {
            let rhs = rhs_product(k, 40).unwrap();
            assert_eq!(rhs.first_nonzero_exponent(), Some(k as usize));
            assert_eq!(rhs.parity_support(), ParitySupport::of(k as u64));
        }
    }

    #[test]
    fn cusp_term_examples() {
        assert!(extract_cusp_term(1, 60).unwrap().is_zero());
        assert!(extract_cusp_term(2, 60).unwrap().is_zero());
        let t6 = extract_cusp_term(3, 9).unwrap();
        assert_eq!(
            t6,
            QSeries::from_integers(9, [0, 1, 0, -12, 0, 54, 0, -88, 0, -99])
        );
    }

    #[test]
    fn t_count_examples() {
        assert_eq!(t_count(4, 0).unwrap(), BigInt::from(1));
        assert_eq!(t_count(4, 1).unwrap(), BigInt::from(4));
        assert_eq!(t_count(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(t_count(8, 1).unwrap(), BigInt::from(8));
        assert_eq!(t_count(12, 1).unwrap(), BigInt::from(12));
        assert!(t_count(6, 3).is_err());
        assert!(t_count(20, 3).is_err());
        assert!(t_count(4, 61).is_err());
    }

    /// Ordered tuples counted one by one, no multiset shortcut.
    fn count_tuples(parts: u32, n: u64) -> u64 {
        if parts == 0 {
            return (n == 0) as u64;
        }
        (0..)
            .map(|i: u64| i * (i + 1) / 2)
            .take_while(|&t| t <= n)
            .map(|t| count_tuples(parts - 1, n - t))
            .sum()
    }

    #[test]
    fn t_count_matches_tuple_enumeration() {
        for parts in [4u32, 8] {
            for n in 0..=14 {
                assert_eq!(
                    t_count(parts, n).unwrap(),
                    BigInt::from(count_tuples(parts, n))
                );
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let report = t_count_closed_form_check(1, 50, 101).unwrap();
        assert!(report.passed);
        assert!(extract_cusp_term(1, 101).unwrap().is_zero());
        assert_eq!(report.rows[1].series, BigInt::from(4));

        let report = t_count_closed_form_check(3, 1, 5).unwrap();
        assert!(report.passed);
        assert_eq!(report.rows[1].closed_form, int(12));
        assert_eq!(report.rows[1].brute_force, Some(BigInt::from(12)));

        let report = t_count_closed_form_check(2, 1, 4).unwrap();
        assert_eq!(report.rows[1].series, BigInt::from(8));
        assert_eq!(report.rows[1].brute_force, Some(BigInt::from(8)));
        assert!(report.passed);

        assert!(t_count_closed_form_check(2, 10, 20).is_err());
    }

    #[test]
    fn stirling_transform_examples() {
        assert!(stirling_transform_check(1, 20).unwrap().passed);
        assert!(stirling_transform_check(3, 50).unwrap().passed);
        assert!(stirling_transform_check(10, 60).unwrap().passed);
        assert!(stirling_transform_check(0, 10).is_err());
    }

    #[test]
    fn verify_small_cases() {
        let r = verify_theorem(1, 200).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.t_is_zero);
        let r = verify_theorem(2, 200).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.t_is_zero);
        let r = verify_theorem(4, 200).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(!r.t_is_zero);
        assert_eq!(r.t_parity, ParitySupport::Even);
        assert!(r.first_nonzero_exponent.unwrap() >= 2);
        assert!(verify_theorem(4, 15).is_err());
        assert!(verify_theorem(0, 15).is_err());
    }

    #[test]
    fn report_pinpoints_failures() {
        let good = QSeries::from_integers(5, [0, 1, 2, 3]);
        let bad = QSeries::from_integers(5, [0, 1, 5, 3]);
        let check = SubCheck::compare("x", &good, &bad, "a and b");
        assert!(!check.passed);
        assert_eq!(check.failure_exponent, Some(2));
        assert!(check.detail.contains("q^2"));
    }

    #[test]
    fn report_json_has_stable_fields() {
        let r = verify_theorem(1, 8).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for field in [
            "k",
            "order",
            "lhs_series_digest",
            "rhs_series_digest",
            "t_series",
            "t_is_zero",
            "t_parity",
            "first_nonzero_exponent",
            "status",
            "failure_exponent",
        ] {
            assert!(v.get(field).is_some(), "missing {field}");
        }
        assert_eq!(v["status"], "pass");
        assert_eq!(v["t_parity"], "zero");
    }
}

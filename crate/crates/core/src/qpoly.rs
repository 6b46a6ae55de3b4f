//! Integer polynomial families behind the Lambert-series numerators.
//!
//! `Q^e_{2k-1}(z) / (1 - z)^{2k} = sum_{j>=1} j^{2k-1} z^j`, and
//! `Q^e_{2k-1}(z) = z P^e_{2k-2}(z)`. The odd family is
//! `P^o_{4k-2}(z) = (1+z)^{2k} P^e_{2k-2}(z) - 2^{2k-1} z P^e_{2k-2}(z^2)`.
//!
//! `P^e` is assembled from the `a_k` / `b_k` tables, while [`q_even_direct`]
//! expands the Stirling form `sum_j j! S(2k-1, j) z^j (1-z)^{2k-j-1}` without
//! touching those tables, so the two routes check each other.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, stirling_row};
use crate::series::{ParitySupport, QSeries};

/// Dense polynomial over the integers, index = degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(degree: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `(1 + sign z)^n` with `sign = ±1`.
    pub fn binomial_power(sign: i32, n: u32) -> Self {
        let s = BigInt::from(sign);
        Self::new(
            (0..=n)
                .map(|i| binomial(n, i) * num_traits::pow(s.clone(), i as usize))
                .collect(),
        )
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `P(z^m)`.
    pub fn compose_power(&self, m: usize) -> Self {
        assert!(m >= 1, "compose_power: m must be at least 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `P(q^m)` as a series truncated at `order`.
    pub fn to_series_at_power(&self, m: usize, order: usize) -> QSeries {
        assert!(m >= 1, "to_series_at_power: m must be at least 1");
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(m) {
                Some(e) if e <= order => coeffs[e] = BigRational::from_integer(c.clone()),
                _ => break,
            }
        }
        QSeries::from_coeffs(coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending powers of `z`, e.g. `1 + 4z + z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{abs}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{abs}z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: Option<usize>,
    coeffs: Vec<String>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            degree: self.degree(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad integer {c:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let poly = IntPolynomial::new(coeffs);
        if poly.degree() != raw.degree || poly.coeffs.len() != raw.coeffs.len() {
            return Err(D::Error::custom(
                "degree does not match the coefficient list",
            ));
        }
        Ok(poly)
    }
}

/// The `a_k(m)` and `b_k(l)` tables for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientTables {
    pub k: u32,
    /// `a_k(0) ..= a_k(2k-1)`.
    #[serde(serialize_with = "crate::serde_str::big_int_vec")]
    pub a: Vec<BigInt>,
    /// `b_k(1) ..= b_k(2k-1)`.
    #[serde(serialize_with = "crate::serde_str::big_int_vec")]
    pub b: Vec<BigInt>,
}

impl CoefficientTables {
    pub fn new(k: u32) -> Self {
        let a = a_table(k);
        let b = b_from_a(k, &a);
        CoefficientTables { k, a, b }
    }
}

fn check_k(k: u32) {
    assert!(k >= 1, "k must be a positive integer");
}

fn sign(i: usize) -> BigInt {
    if i.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `a_k(m) = sum_j (-1)^j j! S(2k-1, j) C(j, m)` for `m = 0 ..= 2k-1`.
pub fn a_table(k: u32) -> Vec<BigInt> {
    check_k(k);
    let top = (2 * k - 1) as usize;
    let stirling = stirling_row(top);
    (0..=top)
        .map(|m| {
            (m..=top)
                .map(|j| {
                    sign(j) * factorial(j as u32) * &stirling[j] * binomial(j as u32, m as u32)
                })
                .sum()
        })
        .collect()
}

/// `b_k(l) = sum_m (-1)^m a_k(m) C(2k-m-1, l)` for `l = 1 ..= 2k-1`.
pub fn b_table(k: u32) -> Vec<BigInt> {
    b_from_a(k, &a_table(k))
}

fn b_from_a(k: u32, a: &[BigInt]) -> Vec<BigInt> {
    let top = 2 * k - 1;
    (1..=top)
        .map(|l| {
            a.iter()
                .enumerate()
                .map(|(m, am)| sign(m) * am * binomial(top - m as u32, l))
                .sum()
        })
        .collect()
}

/// `P^e_{2k-2}(z) = sum_{l=1}^{2k-1} (-1)^l b_k(l) z^{l-1}`.
pub fn p_even(k: u32) -> IntPolynomial {
    let b = b_table(k);
    IntPolynomial::new(
        b.iter()
            .enumerate()
            .map(|(i, bl)| sign(i + 1) * bl)
            .collect(),
    )
}

/// `Q^e_{2k-1}(z) = sum_j j! S(2k-1, j) z^j (1-z)^{2k-1-j}`.
pub fn q_even_direct(k: u32) -> IntPolynomial {
    check_k(k);
    let top = 2 * k - 1;
    let stirling = stirling_row(top as usize);
    (0..=top).fold(IntPolynomial::zero(), |acc, j| {
        let c = factorial(j) * &stirling[j as usize];
        if c.is_zero() {
            return acc;
        }
        let term = IntPolynomial::binomial_power(-1, top - j)
            .shift(j as usize)
            .scale(&c);
        acc.add(&term)
    })
}

fn require_odd(k: u32) -> Result<()> {
    check_k(k);
    if k.is_multiple_of(2) {
        return Err(Error::Parity {
            k,
            expected: ParitySupport::Odd,
        });
    }
    Ok(())
}

fn two_pow(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// `P^o_{4k-2}(z) = (1+z)^{2k} P^e(z) - 2^{2k-1} z P^e(z^2)`, odd `k` only.
pub fn p_odd(k: u32) -> Result<IntPolynomial> {
    require_odd(k)?;
    let pe = p_even(k);
    let left = IntPolynomial::binomial_power(1, 2 * k).mul(&pe);
    let right = pe.compose_power(2).shift(1).scale(&two_pow(2 * k - 1));
    Ok(left.sub(&right))
}

/// `Q^o_{4k-1}(w) = (1+w)^{2k} Q^e(w) - 2^{2k-1} Q^e(w^2)`, built on
/// [`q_even_direct`]; equals `w P^o(w)`.
pub fn q_odd(k: u32) -> Result<IntPolynomial> {
    require_odd(k)?;
    let qe = q_even_direct(k);
    let left = IntPolynomial::binomial_power(1, 2 * k).mul(&qe);
    let right = qe.compose_power(2).scale(&two_pow(2 * k - 1));
    Ok(left.sub(&right))
}

/// The Lambert numerator for `k`'s parity: `P^e` for even `k`, `P^o` for odd.
pub fn parity_polynomial(k: u32) -> IntPolynomial {
    if k.is_multiple_of(2) {
        p_even(k)
    } else {
        p_odd(k).expect("k is odd")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn a_tables() {
        assert_eq!(a_table(1), big(&[-1, -1]));
        assert_eq!(a_table(2), big(&[-1, -7, -12, -6]));
        assert_eq!(a_table(3), big(&[-1, -31, -180, -390, -360, -120]));
    }

    #[test]
    fn b_tables() {
        assert_eq!(b_table(1), big(&[-1]));
        assert_eq!(b_table(2), big(&[-1, 4, -1]));
        assert_eq!(b_table(4), big(&[-1, 120, -1191, 2416, -1191, 120, -1]));
        assert_eq!(
            b_table(5),
            big(&[-1, 502, -14608, 88234, -156190, 88234, -14608, 502, -1])
        );
        assert_eq!(CoefficientTables::new(4).b, b_table(4));
    }

    #[test]
    fn p_even_examples() {
        assert_eq!(p_even(1), IntPolynomial::one());
        assert_eq!(p_even(2), IntPolynomial::from_i64(&[1, 4, 1]));
        assert_eq!(p_even(2).to_string(), "1 + 4z + z^2");
        assert_eq!(
            p_even(4),
            IntPolynomial::from_i64(&[1, 120, 1191, 2416, 1191, 120, 1])
        );
    }

    #[test]
    fn q_even_direct_examples() {
        assert_eq!(q_even_direct(2), IntPolynomial::from_i64(&[0, 1, 4, 1]));
        for k in 1..=8 {
            let q = q_even_direct(k);
            assert_eq!(q.eval(&BigInt::one()), factorial(2 * k - 1));
            assert!(q.eval(&BigInt::zero()).is_zero());
        }
    }

    #[test]
    fn p_odd_examples() {
        assert_eq!(p_odd(1).unwrap(), IntPolynomial::from_i64(&[1, 0, 1]));
        let s = IntPolynomial::from_i64(&[1, 236, 1446, 236, 1]).compose_power(2);
        assert_eq!(
            p_odd(3).unwrap(),
            IntPolynomial::from_i64(&[1, 0, 1]).mul(&s)
        );
        assert!(matches!(p_odd(2), Err(Error::Parity { k: 2, .. })));
        assert!(q_odd(4).is_err());
    }

    #[test]
    fn q_odd_examples() {
        assert_eq!(q_odd(1).unwrap(), IntPolynomial::from_i64(&[0, 1, 0, 1]));
        for k in [1u32, 3, 5, 7] {
            let q = q_odd(k).unwrap();
            assert_eq!(q, p_odd(k).unwrap().shift(1));
            assert!(q.eval(&BigInt::zero()).is_zero());
            assert_eq!(
                q.eval(&BigInt::one()),
                two_pow(2 * k - 1) * factorial(2 * k - 1)
            );
        }
    }

    #[test]
    fn cross_construction_and_shape() {
        for k in 1..=12 {
            let pe = p_even(k);
            assert_eq!(pe.shift(1), q_even_direct(k), "k = {k}");
            assert_eq!(pe.degree(), Some(2 * k as usize - 2));
            assert!(pe.is_palindromic(), "P^e for k = {k} is not palindromic");
            assert!(q_even_direct(k).is_monic());
            assert_eq!(pe.eval(&BigInt::one()), factorial(2 * k - 1));
        }
    }

    #[test]
    fn generating_function_matches_power_sums() {
        let order = 60;
        for k in 1..=6u32 {
            let numer = q_even_direct(k).to_series_at_power(1, order);
            let series = numer.mul_pow_one_minus(1, -(2 * k as i32));
            let expected = QSeries::from_fn(order, |j| {
                BigRational::from_integer(num_traits::pow(BigInt::from(j), 2 * k as usize - 1))
            });
            assert_eq!(series, expected, "k = {k}");
        }
    }

    #[test]
    fn polynomial_arithmetic() {
        let a = IntPolynomial::from_i64(&[1, 1]);
        let b = IntPolynomial::from_i64(&[1, -1]);
        assert_eq!(a.mul(&b), IntPolynomial::from_i64(&[1, 0, -1]));
        assert_eq!(a.sub(&a), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(IntPolynomial::from_i64(&[0, 0, 0]), IntPolynomial::zero());
        assert_eq!(
            IntPolynomial::binomial_power(1, 3),
            IntPolynomial::from_i64(&[1, 3, 3, 1])
        );
        assert_eq!(
            IntPolynomial::from_i64(&[0, -2, 0, 1]).to_string(),
            "-2z + z^3"
        );
    }

    #[test]
    fn polynomial_json() {
        let p = IntPolynomial::from_i64(&[1, 4, 1]);
        let json = p.to_json();
        assert_eq!(json, r#"{"degree":2,"coeffs":["1","4","1"]}"#);
        assert_eq!(IntPolynomial::from_json(&json).unwrap(), p);
        assert_eq!(
            IntPolynomial::zero().to_json(),
            r#"{"degree":null,"coeffs":[]}"#
        );
        assert!(IntPolynomial::from_json(r#"{"degree":3,"coeffs":["1","4","1"]}"#).is_err());
        assert!(IntPolynomial::from_json(r#"{"degree":1,"coeffs":["1","0"]}"#).is_err());
    }
}

//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] of order `N` stores the coefficients of `q^0 ..= q^N`.
//! Binary operations truncate to the smaller of the two orders and never
//! extend silently. Values are immutable once built; every operation returns
//! a fresh series, apart from the explicit `*_in_place` helpers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Below this length Karatsuba hands over to the schoolbook product.
const KARATSUBA_CUTOFF: usize = 32;

/// Which exponent parities carry nonzero coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParitySupport {
    Even,
    Odd,
    Mixed,
    Zero,
}

impl ParitySupport {
    /// Parity of a single integer, as a support class.
    pub fn of(n: u64) -> Self {
        if n.is_multiple_of(2) {
            ParitySupport::Even
        } else {
            ParitySupport::Odd
        }
    }
}

impl fmt::Display for ParitySupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParitySupport::Even => "even",
            ParitySupport::Odd => "odd",
            ParitySupport::Mixed => "mixed",
            ParitySupport::Zero => "zero",
        };
        f.write_str(s)
    }
}

/// Series multiplication algorithm. Both produce identical coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MulStrategy {
    /// Truncated Cauchy product, `O(N^2)`.
    Schoolbook,
    /// Divide-and-conquer (Karatsuba), `O(N^1.585)`.
    Karatsuba,
}

impl MulStrategy {
    pub const ALL: [MulStrategy; 2] = [MulStrategy::Schoolbook, MulStrategy::Karatsuba];

    pub fn name(self) -> &'static str {
        match self {
            MulStrategy::Schoolbook => "schoolbook",
            MulStrategy::Karatsuba => "karatsuba",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigRational::one())
    }

    /// `c q^exponent`, or the zero series when `exponent > order`.
    pub fn monomial(order: usize, exponent: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Builds a series from its coefficient list; order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        QSeries { coeffs }
    }

    /// Integer coefficients, zero-padded or truncated to `order`.
    pub fn from_integers<I, T>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = BigRational::from_integer(c.into());
        }
        s
    }

    /// Builds `sum_i f(i) q^i` for `i` in `0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        QSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `q^i`, or zero beyond the order.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn first_nonzero_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Smallest exponent at which `self` and `other` differ, up to the common
    /// order.
    pub fn first_difference(&self, other: &QSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Keeps `q^0 ..= q^order`. An order above the current one is clamped.
    pub fn truncate(&self, order: usize) -> QSeries {
        let order = order.min(self.order());
        QSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^k`, dropping whatever falls past the order.
    pub fn shift(&self, k: usize) -> QSeries {
        let mut out = QSeries::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > self.order() {
                break;
            }
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    /// Truncated product to the common order. Uses Karatsuba, which falls
    /// back to the schoolbook product on short inputs.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        self.mul_with(other, MulStrategy::Karatsuba)
    }

    pub fn mul_with(&self, other: &QSeries, strategy: MulStrategy) -> QSeries {
        let order = self.order().min(other.order());
        let a = &self.coeffs[..=order];
        let b = &other.coeffs[..=order];
        let len = order + 1;
        let coeffs = if self.is_integral() && other.is_integral() {
            let ai: Vec<BigInt> = a.iter().map(|c| c.numer().clone()).collect();
            let bi: Vec<BigInt> = b.iter().map(|c| c.numer().clone()).collect();
            convolve(&ai, &bi, len, strategy)
                .into_iter()
                .map(BigRational::from_integer)
                .collect()
        } else {
            convolve(a, b, len, strategy)
        };
        QSeries { coeffs }
    }

    /// `self^e` by repeated squaring; `e = 0` gives `1`.
    pub fn pow(&self, e: u32) -> QSeries {
        self.pow_with(e, MulStrategy::Karatsuba)
    }

    pub fn pow_with(&self, mut e: u32, strategy: MulStrategy) -> QSeries {
        let mut result = QSeries::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_with(&base, strategy);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_with(&base, strategy);
            }
        }
        result
    }

    /// Multiplicative inverse to the same order.
    pub fn inverse(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_c0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv_c0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[n - i];
                }
            }
            out.push(-acc * &inv_c0);
        }
        Ok(QSeries { coeffs: out })
    }

    /// `s(q^m)` at the same order.
    pub fn substitute_power(&self, m: usize) -> Result<QSeries> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "substitution power must be at least 1".into(),
            ));
        }
        let order = self.order();
        let mut out = QSeries::zero(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            let Some(e) = i.checked_mul(m).filter(|&e| e <= order) else {
                break;
            };
            out.coeffs[e] = c.clone();
        }
        Ok(out)
    }

    /// Multiplies in place by `(1 - q^m)^power`; a negative power divides.
    ///
    /// # Panics
    ///
    /// If `m == 0` (the factor `1 - q^0` vanishes).
    pub fn mul_pow_one_minus_in_place(&mut self, m: usize, power: i32) {
        assert!(m >= 1, "factor (1 - q^0) is not allowed");
        let order = self.order();
        if m > order {
            return;
        }
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                for i in (m..=order).rev() {
                    let (lo, hi) = self.coeffs.split_at_mut(i);
                    if !lo[i - m].is_zero() {
                        hi[0] -= &lo[i - m];
                    }
                }
            } else {
                for i in m..=order {
                    let (lo, hi) = self.coeffs.split_at_mut(i);
                    if !lo[i - m].is_zero() {
                        hi[0] += &lo[i - m];
                    }
                }
            }
        }
    }

    pub fn mul_pow_one_minus(&self, m: usize, power: i32) -> QSeries {
        let mut out = self.clone();
        out.mul_pow_one_minus_in_place(m, power);
        out
    }

    pub fn parity_support(&self) -> ParitySupport {
        let mut even = false;
        let mut odd = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if i % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (false, false) => ParitySupport::Zero,
            (true, false) => ParitySupport::Even,
            (false, true) => ParitySupport::Odd,
            (true, true) => ParitySupport::Mixed,
        }
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Canonical JSON: `{"order": N, "coeffs": ["num/den", ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<QSeries> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigRational::zero();
            let abs = if negative { -c } else { c.clone() };
            if wrote {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            let unit = abs.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{abs}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{abs}q^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

pub(crate) fn format_fraction(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn parse_fraction(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not an exact fraction: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_fraction).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_fraction(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(QSeries { coeffs })
    }
}

/// First `len` coefficients of the product of `a` and `b`.
pub(crate) fn convolve<T>(a: &[T], b: &[T], len: usize, strategy: MulStrategy) -> Vec<T>
where
    T: Clone + Zero + for<'x> AddAssign<&'x T>,
    for<'x> &'x T: Add<&'x T, Output = T> + Sub<&'x T, Output = T> + Mul<&'x T, Output = T>,
{
    let a = &a[..len.min(a.len())];
    let b = &b[..len.min(b.len())];
    match strategy {
        MulStrategy::Schoolbook => schoolbook(a, b, len),
        MulStrategy::Karatsuba => {
            let n = a.len().max(b.len());
            let mut pa = a.to_vec();
            let mut pb = b.to_vec();
            pa.resize(n, T::zero());
            pb.resize(n, T::zero());
            let mut full = karatsuba(&pa, &pb);
            full.resize(len, T::zero());
            full.truncate(len);
            full
        }
    }
}

fn schoolbook<T>(a: &[T], b: &[T], len: usize) -> Vec<T>
where
    T: Clone + Zero + for<'x> AddAssign<&'x T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let mut out = vec![T::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if i >= len {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Full product of two equal-length slices.
fn karatsuba<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'x> AddAssign<&'x T>,
    for<'x> &'x T: Add<&'x T, Output = T> + Sub<&'x T, Output = T> + Mul<&'x T, Output = T>,
{
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    if n <= KARATSUBA_CUTOFF {
        return schoolbook(a, b, 2 * n - 1);
    }
    let h = n.div_ceil(2);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);

    let z0 = karatsuba(a0, b0);
    let mut a1p = a1.to_vec();
    let mut b1p = b1.to_vec();
    a1p.resize(h, T::zero());
    b1p.resize(h, T::zero());
    let z2 = karatsuba(&a1p, &b1p);

    let sa: Vec<T> = a0.iter().zip(&a1p).map(|(x, y)| x + y).collect();
    let sb: Vec<T> = b0.iter().zip(&b1p).map(|(x, y)| x + y).collect();
    let mut z1 = karatsuba(&sa, &sb);
    for (m, (x, y)) in z1.iter_mut().zip(z0.iter().zip(&z2)) {
        *m = &(&*m - x) - y;
    }

    let mut out = vec![T::zero(); 2 * n - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z1.iter().enumerate() {
        if i + h < out.len() {
            out[i + h] += c;
        }
    }
    for (i, c) in z2.iter().enumerate() {
        if i + 2 * h < out.len() {
            out[i + 2 * h] += c;
        }
    }
    out
}

/// `ψ(q) = sum_{n>=0} q^{n(n+1)/2}` to `order`, constant term included.
pub fn theta_psi(order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    let mut n = 0usize;
    loop {
        let t = n * (n + 1) / 2;
        if t > order {
            break;
        }
        s.coeffs[t] = BigRational::one();
        n += 1;
    }
    s
}

/// `ψ(q)` as the eta quotient `prod_{n>=1} (1 - q^{2n}) / (1 - q^{2n-1})`.
pub fn eta_quotient_psi(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut n = 1;
    while 2 * n - 1 <= order {
        s.mul_pow_one_minus_in_place(2 * n, 1);
        s.mul_pow_one_minus_in_place(2 * n - 1, -1);
        n += 1;
    }
    s
}

/// `prod_{n>=1} (1 - q^{a n})^e / (1 - q^{b n - c})^e` to `order`, where
/// `a = numerator_step` and `(b, c) = denominator_step_offset`.
///
/// Factors whose lowest exponent exceeds `order` equal `1 + O(q^{order+1})`
/// and are skipped.
pub fn product_pow(
    numerator_step: usize,
    denominator_step_offset: (usize, usize),
    exponent: u32,
    order: usize,
) -> Result<QSeries> {
    let (den_step, den_offset) = denominator_step_offset;
    if numerator_step == 0 || den_step == 0 {
        return Err(Error::InvalidArgument(
            "product steps must be positive".into(),
        ));
    }
    if den_step <= den_offset {
        return Err(Error::InvalidArgument(format!(
            "denominator factor 1 - q^({den_step}n - {den_offset}) is not a unit at n = 1"
        )));
    }
    if exponent == 0 {
        return Err(Error::InvalidArgument(
            "product exponent must be at least 1".into(),
        ));
    }
    let mut base = QSeries::one(order);
    let mut n = 1;
    while numerator_step * n <= order {
        base.mul_pow_one_minus_in_place(numerator_step * n, 1);
        n += 1;
    }
    let mut n = 1;
    while den_step * n - den_offset <= order {
        base.mul_pow_one_minus_in_place(den_step * n - den_offset, -1);
        n += 1;
    }
    Ok(base.pow(exponent))
}

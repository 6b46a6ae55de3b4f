//! Exact integer and rational number generators.
//!
//! Everything here is a pure function of its inputs. Stirling and Bernoulli
//! numbers are memoised in process-wide tables guarded by `RwLock`, so
//! concurrent readers never block each other and growth is serialised.

use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Triangular table of Stirling numbers of the second kind `S(n, j)`,
/// `0 <= j <= n <= max_n`, filled by `S(n, j) = j S(n-1, j) + S(n-1, j-1)`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut table = StirlingTable {
            rows: vec![vec![BigInt::one()]],
        };
        table.extend_to(max_n);
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Grows the table so that row `max_n` exists. Never shrinks.
    pub fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let prev = self.rows.last().expect("row 0 always present");
            let n = prev.len();
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::zero());
            for j in 1..=n {
                let carried = if j < n {
                    &prev[j] * BigInt::from(j)
                } else {
                    BigInt::zero()
                };
                row.push(carried + &prev[j - 1]);
            }
            self.rows.push(row);
        }
    }

    /// `S(n, j)`, or `None` if `n` lies beyond the table. `j > n` gives zero.
    pub fn get(&self, n: usize, j: usize) -> Option<BigInt> {
        let row = self.rows.get(n)?;
        Some(row.get(j).cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }
}

fn stirling_cache() -> &'static RwLock<StirlingTable> {
    static CACHE: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(StirlingTable::new(32)))
}

/// Stirling number of the second kind `S(n, j)`; zero when `j > n`.
pub fn stirling2(n: usize, j: usize) -> BigInt {
    stirling_row(n).get(j).cloned().unwrap_or_else(BigInt::zero)
}

/// Row `[S(n, 0), ..., S(n, n)]`.
pub fn stirling_row(n: usize) -> Vec<BigInt> {
    {
        let table = stirling_cache().read().expect("stirling cache poisoned");
        if let Some(row) = table.row(n) {
            return row.to_vec();
        }
    }
    let mut table = stirling_cache().write().expect("stirling cache poisoned");
    table.extend_to(n);
    table.row(n).expect("just extended").to_vec()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bernoulli_cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Bernoulli number `B_m` for even `m`, from `sum_{i<=m} C(m+1, i) B_i = 0`
/// (so `B_1 = -1/2`).
///
/// # Panics
///
/// If `m` is odd. Only even indices are ever consumed.
pub fn bernoulli(m: u32) -> BigRational {
    assert!(
        m.is_multiple_of(2),
        "bernoulli: only even indices are supported (got {m})"
    );
    let m = m as usize;
    {
        let cache = bernoulli_cache().read().expect("bernoulli cache poisoned");
        if let Some(b) = cache.get(m) {
            return b.clone();
        }
    }
    let mut cache = bernoulli_cache().write().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let next = cache.len() as u32;
        let sum = cache
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, b)| {
                acc + b * BigRational::from_integer(binomial(next + 1, i as u32))
            });
        let b = -sum / BigRational::from_integer(BigInt::from(next + 1));
        cache.push(b);
    }
    cache[m].clone()
}

/// `d_k = -(-16)^k B_{2k} (4^k - 1) / (8k)`.
///
/// Integral for every `k` that has been checked (`k <= 12`), but returned as
/// an exact rational regardless.
pub fn d_constant(k: u32) -> BigRational {
    assert!(k >= 1, "d_constant: k must be positive");
    let minus_16_pow = num_traits::pow(BigInt::from(-16), k as usize);
    let four_pow_minus_one = num_traits::pow(BigInt::from(4), k as usize) - 1;
    let numer = BigRational::from_integer(minus_16_pow * four_pow_minus_one) * bernoulli(2 * k);
    -numer / BigRational::from_integer(BigInt::from(8 * k))
}

/// The rational `r` with `ζ(2k) = r π^{2k}`.
pub fn zeta_even_exact(k: u32) -> BigRational {
    assert!(k >= 1, "zeta_even_exact: k must be positive");
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let numer = BigInt::from(sign) * num_traits::pow(BigInt::from(2), 2 * k as usize);
    BigRational::from_integer(numer) * bernoulli(2 * k)
        / BigRational::from_integer(BigInt::from(2) * factorial(2 * k))
}

/// Positive divisors of `n >= 1`, ascending, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisor function `σ_k(n) = sum_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| num_traits::pow(BigInt::from(d), k as usize))
        .sum()
}

/// Modified divisor function `σ^#_k(n) = sum_{d | n, n/d odd} d^k`.
pub fn sigma_sharp(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .filter(|d| (n / d).is_odd())
        .map(|d| num_traits::pow(BigInt::from(d), k as usize))
        .sum()
}

pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

//! Inputs shared by the criterion benches.

use qzeta_core::series::theta_psi;
use qzeta_core::{MulStrategy, QSeries};

/// `ψ(q)` truncated at `order`; the base of every `ψ^{4k}` workload.
pub fn psi(order: usize) -> QSeries {
    theta_psi(order)
}

/// `ψ^{4k}` by repeated squaring with the given multiplication strategy.
pub fn psi_power(order: usize, k: u32, strategy: MulStrategy) -> QSeries {
    psi(order).pow_with(4 * k, strategy)
}

/// A dense operand pair: `ψ^4` and `ψ^8` at `order`.
pub fn dense_pair(order: usize) -> (QSeries, QSeries) {
    let p4 = psi(order).pow(4);
    let p8 = p4.mul(&p4);
    (p4, p8)
}

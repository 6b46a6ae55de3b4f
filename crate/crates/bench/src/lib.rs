//! Benchmark workloads for the qzeta series engine.

pub mod workloads;

//! Criterion benchmarks for superspace-core; see `benches/algebra.rs`.

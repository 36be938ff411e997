//! Criterion benchmarks for nqr-core; see `benches/`.

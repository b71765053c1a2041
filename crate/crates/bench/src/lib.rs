//! Criterion benchmarks for divcheck-core; see `benches/`.

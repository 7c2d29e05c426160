//! Criterion benchmarks for relcomm live in `benches/`.

//! Criterion benchmarks for the algebra engines live in `benches/`.

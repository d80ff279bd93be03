//! Criterion benchmarks for the encoding and the store; see `benches/`.

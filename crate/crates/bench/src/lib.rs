//! Criterion benchmarks for `pcircle`; see `benches/`.

//! Criterion benchmarks for `mbm-core`; see `benches/`.

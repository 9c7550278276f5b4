//! Criterion benchmarks for `stabctab-core`; see `benches/`.

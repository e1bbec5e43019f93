//! Benchmarks for the liecolor library; see `benches/`.

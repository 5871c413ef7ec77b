//! Criterion benchmarks for `infolattice`; see `benches/`.

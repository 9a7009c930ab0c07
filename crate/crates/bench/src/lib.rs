//! Criterion benchmarks for `wqed-core`; see `benches/scatter.rs`.

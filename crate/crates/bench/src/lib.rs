//! Criterion benchmarks for `supamp-core`; see `benches/core.rs`.

//! Benchmark-only crate; see `benches/benchmarks.rs`. Keeping the bench
//! targets out of the core crate keeps criterion out of its dependency
//! tree.

//! Criterion benchmarks for `ordinarity-core`; run with `cargo bench -p ordinarity-bench`.

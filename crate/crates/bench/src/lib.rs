//! Criterion benchmarks for `dpknot`; see `benches/`.

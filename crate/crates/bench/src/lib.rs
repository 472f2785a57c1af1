//! Criterion benchmarks for hullforge live in `benches/`.

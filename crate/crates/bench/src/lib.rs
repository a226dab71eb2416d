//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use qmds_core::{additive_code, extended_code, ConstructionResult, FieldTower};

/// Field sizes the benchmarks sweep over.
pub const BENCH_Q: [u64; 4] = [3, 4, 7, 9];

pub fn field(q: u64) -> Arc<FieldTower> {
    Arc::new(FieldTower::for_order(q).expect("benchmark fields are small prime powers"))
}

/// The largest additive-coset code for `q`: full field, maximal dimension.
pub fn largest_additive(q: u64) -> ConstructionResult {
    let f = field(q);
    let t = q as usize;
    let k = qmds_core::construct::max_additive_dimension(t, t);
    additive_code(&f, t, k).expect("admissible parameters")
}

/// A full-length extended code of dimension 2.
pub fn full_extended(q: u64) -> ConstructionResult {
    extended_code(&field(q), q as usize - 1, 2).expect("admissible parameters")
}

#![allow(dead_code)]

use proptest::prelude::*;
use randcomplex::complex::{Simplex, SimplicialComplex};
use randcomplex::measure::ParameterVector;

/// Closure of a random family of simplices in `Δ_n^{(r)}`.
pub fn complex_in(n: u32, r: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1..=n, 1..=(r + 1).min(n as usize)), 0..8)
        .prop_map(move |gens| {
            let gens = gens.into_iter().map(|g| Simplex::new(g).expect("sorted, nonempty"));
            SimplicialComplex::build(n, r, gens).expect("inside the skeleton")
        })
}

pub fn any_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1u32..=6)
        .prop_flat_map(|n| (Just(n), 0..n as usize))
        .prop_flat_map(|(n, r)| complex_in(n, r))
}

/// Two complexes over the same `(n, r)`.
pub fn complex_pair() -> impl Strategy<Value = (SimplicialComplex, SimplicialComplex)> {
    (1u32..=5)
        .prop_flat_map(|n| (Just(n), 0..n as usize))
        .prop_flat_map(|(n, r)| (complex_in(n, r), complex_in(n, r)))
}

/// Entries are often exactly 0 or 1 to exercise the boundary conventions.
pub fn probability() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 1 => Just(1.0), 4 => 0.0..=1.0f64]
}

pub fn params(r: usize) -> impl Strategy<Value = ParameterVector> {
    prop::collection::vec(probability(), r + 1).prop_map(|v| ParameterVector::new(v).expect("in [0, 1]"))
}

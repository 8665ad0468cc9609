//! Shared fixtures for the criterion benchmarks.

use evreg_core::mpoly::MPoly;
use evreg_core::numfield::{rat, FieldElement, FieldRef, NumberField};
use evreg_core::projmap::ProjSelfMap;

/// The dense quadratic map whose square is regular.
pub fn dense_quadratic() -> ProjSelfMap {
    let field = NumberField::rational();
    let f0 = mp(&field, &[(1, vec![1, 0, 1]), (1, vec![0, 1, 1])]);
    let f1 = mp(&field, &[(1, vec![2, 0, 0]), (1, vec![0, 1, 1])]);
    let f2 = mp(&field, &[(1, vec![0, 0, 2])]);
    ProjSelfMap::from_forms(f0, f1, f2).expect("dominant quadratic map")
}

/// The standard Cremona involution.
pub fn cremona() -> ProjSelfMap {
    let field = NumberField::rational();
    let f0 = mp(&field, &[(1, vec![0, 1, 1])]);
    let f1 = mp(&field, &[(1, vec![1, 0, 1])]);
    let f2 = mp(&field, &[(1, vec![1, 1, 0])]);
    ProjSelfMap::from_forms(f0, f1, f2).expect("dominant involution")
}

fn mp(field: &FieldRef, terms: &[(i64, Vec<u64>)]) -> MPoly {
    MPoly::from_terms(
        field,
        3,
        terms
            .iter()
            .map(|(c, e)| (FieldElement::from_rational(field, rat(*c)), e.clone())),
    )
    .expect("well-formed terms")
}

//! Exhaustive sweeps over small integer matrices: smallest diagonal
//! powers for every nonsingular matrix, and first extendable powers over
//! the plane's fan for the non-birational ones.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::json;

use evreg_core::monomial::{
    first_extendable_power, smallest_diagonal_power, Fan, IntMatrix2, MonomialMap,
};
use evreg_core::numfield::{FieldElement, NumberField};

use crate::Format;

const DIAGONAL_SET: [usize; 5] = [1, 2, 3, 4, 6];
const EXTENDABLE_SET: [usize; 7] = [1, 2, 3, 4, 6, 8, 12];

pub fn run_sweep(bound: i64, cap: usize, format: Format) -> i32 {
    if bound < 0 {
        eprintln!("--matrices-bound must be non-negative");
        return 2;
    }
    let fan = Fan::p2();
    let field = NumberField::rational();
    let one = FieldElement::one(&field);
    let unit = BigInt::from(1);
    let mut nonsingular = 0u64;
    let mut diag_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut ext_candidates = 0u64;
    let mut ext_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut violations: Vec<String> = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let Ok(m) = IntMatrix2::from_rows([[a, b], [c, d]]) else {
                        continue;
                    };
                    nonsingular += 1;
                    let label = || format!("[[{a},{b}],[{c},{d}]]");
                    if let Some(k) = smallest_diagonal_power(&m, cap) {
                        *diag_counts.entry(k).or_default() += 1;
                        if !DIAGONAL_SET.contains(&k) {
                            violations.push(format!("{} diagonal power {k}", label()));
                        }
                    }
                    let det = m.det();
                    if det > unit || det < -unit.clone() {
                        ext_candidates += 1;
                        let mono = MonomialMap::new(m, [one.clone(), one.clone()])
                            .expect("unit scaling");
                        match first_extendable_power(&mono, &fan, cap) {
                            Ok(Some(k)) => {
                                *ext_counts.entry(k).or_default() += 1;
                                if !EXTENDABLE_SET.contains(&k) {
                                    violations
                                        .push(format!("{} extendable power {k}", label()));
                                }
                            }
                            Ok(None) => {}
                            Err(e) => violations.push(format!("{}: {e}", label())),
                        }
                    }
                }
            }
        }
    }
    let count_map = |m: &BTreeMap<usize, u64>| {
        m.iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect::<serde_json::Map<_, _>>()
    };
    match format {
        Format::Json => {
            let payload = json!({
                "matrices_bound": bound,
                "cap": cap,
                "nonsingular_matrices": nonsingular,
                "diagonal_power_counts": count_map(&diag_counts),
                "extendable_candidates": ext_candidates,
                "extendable_power_counts": count_map(&ext_counts),
                "violations": violations,
                "status": if violations.is_empty() { "ok" } else { "violations" },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializable")
            );
        }
        Format::Text => {
            println!("nonsingular matrices with entries in [-{bound},{bound}]: {nonsingular}");
            for (k, v) in &diag_counts {
                println!("  diagonal power {k}: {v}");
            }
            println!("matrices with |det| > 1: {ext_candidates}");
            for (k, v) in &ext_counts {
                println!("  extendable power {k}: {v}");
            }
            for v in &violations {
                println!("violation: {v}");
            }
            println!(
                "sweep {}",
                if violations.is_empty() { "ok" } else { "FAILED" }
            );
        }
    }
    if violations.is_empty() {
        0
    } else {
        1
    }
}

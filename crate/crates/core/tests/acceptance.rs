//! Acceptance gate: ten checks, one per shipped guarantee, each printing
//! a single PASS or FAIL line.  Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines for
//! passing checks too; a failing check prints its line and panics with
//! the offending detail.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use evreg_core::monomial::{
    fan_compatible, first_extendable_power, smallest_diagonal_power,
    smallest_scalar_positive_power, to_proj_map,
};
use evreg_core::numfield::rat;
use evreg_core::parse::parse_poly;
use evreg_core::projmap::Completeness;
use evreg_core::skewprod::{
    first_linear_iterate, leading_coeff_identity_check, SkewMap, TriangularMap,
};
use evreg_core::{
    Fan, FieldElement, FieldRef, IntMatrix2, Invariance, MPoly, MonomialMap, NumberField,
    ProjPoint, ProjSelfMap, RatFunc, UPoly,
};

fn check(n: usize, name: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("acceptance {n:02} {name}: PASS"),
        Err(e) => {
            println!("acceptance {n:02} {name}: FAIL ({e})");
            panic!("criterion {n} ({name}): {e}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn qf() -> FieldRef {
    NumberField::rational()
}

fn form(field: &FieldRef, src: &str) -> MPoly {
    parse_poly(src, &["X", "Y", "Z"], field, false).expect("valid form")
}

fn proj(field: &FieldRef, f0: &str, f1: &str, f2: &str) -> ProjSelfMap {
    ProjSelfMap::from_forms(form(field, f0), form(field, f1), form(field, f2))
        .expect("valid self-map")
}

fn torus(rows: [[i64; 2]; 2]) -> MonomialMap {
    let field = qf();
    let one = FieldElement::one(&field);
    MonomialMap::new(
        IntMatrix2::from_rows(rows).expect("nonzero determinant"),
        [one.clone(), one],
    )
    .expect("valid monomial map")
}

fn pt(field: &FieldRef, a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(field, a, b, c).expect("nonzero point")
}

/// Matrices with entries in [-3, 3] and nonzero determinant: all 7^4
/// sign patterns except the 289 singular ones.
fn small_matrix_sweep() -> Vec<IntMatrix2> {
    let mut out = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                for d in -3i64..=3 {
                    if let Ok(m) = IntMatrix2::from_rows([[a, b], [c, d]]) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_01_squaring_map_becomes_regular_at_two() {
    check(1, "squaring map regular at iterate 2", || {
        let field = qf();
        let phi = to_proj_map(&torus([[2, 0], [0, -2]])).map_err(|e| e.to_string())?;
        let report = phi
            .first_regular_iterate(12, u64::MAX)
            .map_err(|e| e.to_string())?;
        ensure!(
            report.first_regular == Some(2),
            "first regular index was {:?}",
            report.first_regular
        );
        let expected = proj(&field, "X^4", "Y^4", "Z^4");
        ensure!(
            report.regular_iterate.as_ref() == Some(&expected),
            "iterate mismatch: {:?}",
            report.regular_iterate
        );
        let (pts, completeness) = phi
            .rational_indeterminacy_points()
            .map_err(|e| e.to_string())?;
        let want = vec![pt(&field, 0, 1, 0), pt(&field, 1, 0, 0)];
        ensure!(pts == want, "indeterminacy was {pts:?}");
        ensure!(
            completeness == Completeness::Complete,
            "completeness was {completeness:?}"
        );
        Ok(())
    });
}

#[test]
fn criterion_02_quadratic_map_square_is_regular() {
    check(2, "quadratic map square regular", || {
        let field = qf();
        let phi = proj(&field, "X*Z + Y*Z", "X^2 + Y*Z", "Z^2");
        let sq = phi.iterate(2).map_err(|e| e.to_string())?;
        let expected = proj(
            &field,
            "X^2 + X*Z + 2*Y*Z",
            "2*X^2 + 2*X*Y + Y^2 + Y*Z",
            "Z^2",
        );
        ensure!(sq == expected, "square mismatch: {sq}");
        ensure!(
            sq.is_regular().map_err(|e| e.to_string())?,
            "square not regular"
        );
        ensure!(
            !phi.is_regular().map_err(|e| e.to_string())?,
            "the map itself must not be regular"
        );
        Ok(())
    });
}

#[test]
fn criterion_03_spiral_matrix_needs_twelve_iterates() {
    check(3, "spiral matrix scalar and extendable at 12", || {
        let a = IntMatrix2::from_rows([[3, 1], [-3, 3]]).expect("invertible");
        let scalar = smallest_scalar_positive_power(&a, 24);
        ensure!(
            scalar == Some((12, BigInt::from(2_985_984))),
            "scalar power was {scalar:?}"
        );
        let m = torus([[3, 1], [-3, 3]]);
        let ext = first_extendable_power(&m, &Fan::p2(), 24).map_err(|e| e.to_string())?;
        ensure!(ext == Some(12), "extendable power was {ext:?}");
        let phi = to_proj_map(&m).map_err(|e| e.to_string())?;
        for k in 1..=11 {
            let it = phi.iterate_capped(k, u64::MAX).map_err(|e| e.to_string())?;
            ensure!(
                !it.is_regular().map_err(|e| e.to_string())?,
                "iterate {k} is unexpectedly regular"
            );
        }
        let twelfth = phi
            .iterate_capped(12, u64::MAX)
            .map_err(|e| e.to_string())?;
        ensure!(
            twelfth.is_regular().map_err(|e| e.to_string())?,
            "iterate 12 is not regular"
        );
        Ok(())
    });
}

#[test]
fn criterion_04_catalog_of_extendable_powers() {
    check(4, "catalog extendable powers 3, 4, 6, 8", || {
        let cases: [([[i64; 2]; 2], usize); 4] = [
            ([[-2, -2], [2, 0]], 3),
            ([[0, -2], [2, 0]], 4),
            ([[2, 2], [-2, 0]], 6),
            ([[1, 1], [-1, 1]], 8),
        ];
        for (rows, want) in cases {
            let got = first_extendable_power(&torus(rows), &Fan::p2(), 24)
                .map_err(|e| e.to_string())?;
            ensure!(got == Some(want), "matrix {rows:?} gave {got:?}, want {want}");
        }
        Ok(())
    });
}

#[test]
fn criterion_05_standard_involution_squares_to_identity() {
    check(5, "standard involution squares to identity", || {
        let field = qf();
        let sigma = proj(&field, "Y*Z", "X*Z", "X*Y");
        ensure!(
            !sigma.is_regular().map_err(|e| e.to_string())?,
            "the involution must not be regular"
        );
        let sq = sigma.iterate(2).map_err(|e| e.to_string())?;
        ensure!(
            sq == ProjSelfMap::identity(&field),
            "square is not the identity: {sq}"
        );
        let report = sigma
            .first_regular_iterate_default()
            .map_err(|e| e.to_string())?;
        ensure!(report.first_regular == Some(2), "index {:?}", report.first_regular);
        ensure!(report.invertible_flag, "must flag invertibility");
        Ok(())
    });
}

#[test]
fn criterion_06_root_of_unity_shears_linearize_at_their_order() {
    check(6, "root-of-unity shears linearize at n", || {
        let cases: [(usize, &[i64]); 4] = [
            (3, &[1, -1, 1]),
            (4, &[1, 0, 0, 0, 1]),
            (5, &[1, -1, 1, -1, 1]),
            (6, &[1, 0, -1, 0, 1]),
        ];
        for (n, minpoly) in cases {
            let field = NumberField::extension(minpoly.iter().map(|&c| rat(c)).collect())
                .map_err(|e| e.to_string())?;
            let y_squared = UPoly::new(
                &field,
                vec![
                    FieldElement::zero(&field),
                    FieldElement::zero(&field),
                    FieldElement::one(&field),
                ],
            );
            let t = TriangularMap::new(
                FieldElement::one(&field),
                FieldElement::generator(&field),
                y_squared,
            )
            .map_err(|e| e.to_string())?;
            let got = first_linear_iterate(&t, 24).map_err(|e| e.to_string())?;
            ensure!(got == Some(n), "order {n} gave {got:?}");
        }
        Ok(())
    });
}

#[test]
fn criterion_07_diagonal_power_sweep() {
    check(7, "diagonal powers land in {1,2,3,4,6}", || {
        let sweep = small_matrix_sweep();
        ensure!(
            sweep.len() == 2112,
            "sweep size {} (want 2401 - 289 singular = 2112)",
            sweep.len()
        );
        let allowed: BTreeSet<usize> = [1, 2, 3, 4, 6].into_iter().collect();
        let mut hits = 0usize;
        for m in &sweep {
            if let Some(k) = smallest_diagonal_power(m, 24) {
                hits += 1;
                ensure!(allowed.contains(&k), "matrix {m} has diagonal power {k}");
            }
        }
        ensure!(hits > 0, "the sweep found no diagonal powers at all");
        Ok(())
    });
}

#[test]
fn criterion_08_extendable_power_sweep() {
    check(8, "extendable powers land in {1,2,3,4,6,8,12}", || {
        let fan = Fan::p2();
        let allowed: BTreeSet<usize> = [1, 2, 3, 4, 6, 8, 12].into_iter().collect();
        let mut witnessed: BTreeSet<usize> = BTreeSet::new();
        let field = qf();
        let one = FieldElement::one(&field);
        for m in small_matrix_sweep() {
            let det = m.det();
            if -BigInt::from(1) <= det && det <= BigInt::from(1) {
                continue;
            }
            let mono = MonomialMap::new(m.clone(), [one.clone(), one.clone()])
                .map_err(|e| e.to_string())?;
            if let Some(k) =
                first_extendable_power(&mono, &fan, 24).map_err(|e| e.to_string())?
            {
                ensure!(allowed.contains(&k), "matrix {m} extends first at {k}");
                witnessed.insert(k);
            }
        }
        ensure!(
            witnessed == allowed,
            "witnessed only {witnessed:?} of {allowed:?}"
        );
        Ok(())
    });
}

/// Splitmix-style generator; deterministic across runs and platforms.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi].
    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn criterion_09_property_bundle() {
    check(9, "algebraic property bundle", || {
        semigroup_law_on_golden_maps()?;
        monomial_projective_functoriality()?;
        leading_coefficient_identity_sample()?;
        fan_regularity_equivalence()?;
        field_inverse_sample()?;
        Ok(())
    });
}

fn golden_maps() -> Vec<(String, ProjSelfMap)> {
    let field = qf();
    let mut out = vec![
        (
            "squaring".to_string(),
            to_proj_map(&torus([[2, 0], [0, -2]])).expect("valid"),
        ),
        (
            "quadratic".to_string(),
            proj(&field, "X*Z + Y*Z", "X^2 + Y*Z", "Z^2"),
        ),
        ("involution".to_string(), proj(&field, "Y*Z", "X*Z", "X*Y")),
    ];
    for rows in [
        [[3, 1], [-3, 3]],
        [[-2, -2], [2, 0]],
        [[0, -2], [2, 0]],
        [[2, 2], [-2, 0]],
        [[1, 1], [-1, 1]],
    ] {
        out.push((
            format!("monomial {rows:?}"),
            to_proj_map(&torus(rows)).expect("valid"),
        ));
    }
    out
}

fn semigroup_law_on_golden_maps() -> Result<(), String> {
    for (name, phi) in golden_maps() {
        let mut iterates = vec![phi.clone()];
        for _ in 1..6 {
            let next = iterates
                .last()
                .unwrap()
                .compose_capped(&phi, u64::MAX)
                .map_err(|e| e.to_string())?;
            iterates.push(next);
        }
        for m in 1..=5usize {
            for n in 1..=(6 - m) {
                let lhs = iterates[m - 1]
                    .compose_capped(&iterates[n - 1], u64::MAX)
                    .map_err(|e| e.to_string())?;
                ensure!(
                    lhs == iterates[m + n - 1],
                    "{name}: iterate {m} of iterate {n} is not iterate {}",
                    m + n
                );
            }
        }
    }
    Ok(())
}

fn monomial_projective_functoriality() -> Result<(), String> {
    let field = qf();
    let one = FieldElement::one(&field);
    let partners: Vec<MonomialMap> = vec![
        torus([[1, 0], [0, 1]]),
        torus([[1, 1], [0, 1]]),
        torus([[0, -1], [1, 0]]),
    ];
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    let Ok(m) = IntMatrix2::from_rows([[a, b], [c, d]]) else {
                        continue;
                    };
                    let mono = MonomialMap::new(m, [one.clone(), one.clone()])
                        .map_err(|e| e.to_string())?;
                    for partner in &partners {
                        let composed = evreg_core::monomial::mm_compose(&mono, partner)
                            .map_err(|e| e.to_string())?;
                        let lhs = to_proj_map(&composed).map_err(|e| e.to_string())?;
                        let rhs = to_proj_map(&mono)
                            .map_err(|e| e.to_string())?
                            .compose_capped(
                                &to_proj_map(partner).map_err(|e| e.to_string())?,
                                u64::MAX,
                            )
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            lhs == rhs,
                            "functoriality broke at [[{a},{b}],[{c},{d}]]"
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn leading_coefficient_identity_sample() -> Result<(), String> {
    let field = qf();
    let mut rng = Rng(0x5eed);
    let mut checked = 0usize;
    while checked < 200 {
        let phi_deg = rng.int(1, 2) as usize;
        let mut phi_coeffs = Vec::with_capacity(phi_deg + 1);
        for _ in 0..=phi_deg {
            phi_coeffs.push(FieldElement::from_int(&field, rng.int(-3, 3)));
        }
        if phi_coeffs.last().unwrap().is_zero() {
            continue;
        }
        let phi = UPoly::new(&field, phi_coeffs);

        let d = rng.int(1, 3) as usize;
        let mut f = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            let deg = rng.int(0, 2) as usize;
            let coeffs: Vec<FieldElement> = (0..=deg)
                .map(|_| FieldElement::from_int(&field, rng.int(-3, 3)))
                .collect();
            f.push(RatFunc::from_poly(UPoly::new(&field, coeffs)));
        }
        if f.last().unwrap().is_zero() {
            continue;
        }
        let Ok(map) = SkewMap::new(phi, f) else {
            continue;
        };
        let k = rng.int(1, 3) as usize;
        let ok = leading_coeff_identity_check(&map, k).map_err(|e| e.to_string())?;
        ensure!(ok, "identity failed for a sampled skew product (k = {k})");
        checked += 1;
    }
    Ok(())
}

fn fan_regularity_equivalence() -> Result<(), String> {
    let fan = Fan::p2();
    for rows in [
        [[3, 1], [-3, 3]],
        [[-2, -2], [2, 0]],
        [[0, -2], [2, 0]],
        [[2, 2], [-2, 0]],
        [[1, 1], [-1, 1]],
    ] {
        let mono = torus(rows);
        let phi = to_proj_map(&mono).map_err(|e| e.to_string())?;
        for k in 1..=12usize {
            let compatible =
                fan_compatible(&mono.matrix().pow(k), &fan).map_err(|e| e.to_string())?;
            let regular = phi
                .iterate_capped(k, u64::MAX)
                .map_err(|e| e.to_string())?
                .is_regular()
                .map_err(|e| e.to_string())?;
            ensure!(
                compatible == regular,
                "{rows:?} at power {k}: fan says {compatible}, plane says {regular}"
            );
        }
    }
    Ok(())
}

fn field_inverse_sample() -> Result<(), String> {
    let fields = [
        NumberField::extension(vec![rat(-2), rat(0), rat(1)]).map_err(|e| e.to_string())?,
        NumberField::extension(vec![rat(1), rat(0), rat(-1), rat(0), rat(1)])
            .map_err(|e| e.to_string())?,
    ];
    let mut rng = Rng(0xfeed);
    let mut checked = 0usize;
    while checked < 1000 {
        let field = &fields[(rng.next() % 2) as usize];
        let coeffs: Vec<i64> = (0..field.degree()).map(|_| rng.int(-5, 5)).collect();
        let mut e = FieldElement::zero(field);
        let gen = FieldElement::generator(field);
        for &c in coeffs.iter().rev() {
            e = e
                .mul(&gen)
                .and_then(|v| v.add(&FieldElement::from_int(field, c)))
                .map_err(|err| err.to_string())?;
        }
        if e.is_zero() {
            continue;
        }
        let inv = e.inv().map_err(|err| err.to_string())?;
        ensure!(
            e.mul(&inv).map_err(|err| err.to_string())?.is_one(),
            "inverse failed"
        );
        checked += 1;
    }
    Ok(())
}

#[test]
fn criterion_10_total_invariance_of_the_vertex_pair() {
    check(10, "total invariance of the vertex pair", || {
        let field = qf();
        let phi = proj(&field, "X^4", "Y^4", "Z^4");
        let invariant = vec![pt(&field, 1, 0, 0), pt(&field, 0, 1, 0)];
        let verdict = phi
            .verify_totally_invariant(&invariant)
            .map_err(|e| e.to_string())?;
        ensure!(
            verdict == Invariance::Invariant,
            "vertex pair verdict was {verdict:?}"
        );
        let leaky = vec![pt(&field, 1, 0, 0), pt(&field, 1, 1, 1)];
        let verdict = phi
            .verify_totally_invariant(&leaky)
            .map_err(|e| e.to_string())?;
        ensure!(
            verdict == Invariance::NotInvariant,
            "negative control verdict was {verdict:?}"
        );
        Ok(())
    });
}

//! Acceptance gate: thirteen checks covering the full deliverable, one
//! test per check. Each prints exactly one `PASS`/`FAIL` line (visible
//! under `--nocapture`) with the measured runtime and the pinned budget,
//! then asserts. Budgets are wall-clock upper bounds chosen up front;
//! numeric expectations are exact.

// Index loops mirror the Gram-matrix arithmetic they check.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use okubo::algebra::{parse_reference_table, structure_product, IdempotentClass};
use okubo::aut::{
    conj_homomorphism, find_isomorphism, full_aut_f2, grading_automorphisms,
    orbit_of_pauli_x, splitting_section, stabilizer_subgroup, unitary_f4, weyl_from_aut,
};
use okubo::field::{FieldDescriptor, FieldElement};
use okubo::grading::{phi_gamma, weyl_group_via_formula};
use okubo::group::{self, semidirect_check, small_group_isomorphic, Q8_GEN_I, Q8_GEN_J};
use okubo::linalg;
use okubo::matrix::{hermitian_orthonormalize, sl3_iso_check, HermitianForm};
use okubo::symbol::symbol_algebra_skew;
use okubo::verify::identity_suite;
use okubo::OkuboAlgebra;

/// Collects named sub-checks for one criterion and emits its single line.
struct Gate {
    id: &'static str,
    started: Instant,
    budget: Option<Duration>,
    failures: Vec<String>,
}

impl Gate {
    fn new(id: &'static str, budget: Option<Duration>) -> Gate {
        Gate {
            id,
            started: Instant::now(),
            budget,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn finish(mut self) {
        let elapsed = self.started.elapsed();
        if let Some(budget) = self.budget {
            if elapsed > budget {
                self.failures
                    .push(format!("runtime {elapsed:.2?} over budget {budget:?}"));
            }
        }
        let verdict = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let budget_note = match self.budget {
            Some(b) => format!(", budget {b:?}"),
            None => String::new(),
        };
        println!("[{}] {verdict} ({elapsed:.2?}{budget_note})", self.id);
        assert!(
            self.failures.is_empty(),
            "{}: {:?}",
            self.id,
            self.failures
        );
    }
}

fn gf(q: u64) -> FieldDescriptor {
    FieldDescriptor::gf(q).unwrap()
}

fn algebra(q: u64, alpha: i64, beta: i64) -> OkuboAlgebra {
    OkuboAlgebra::with_integers(gf(q), alpha, beta).unwrap()
}

/// 1. The closed-form structure rule reproduces all 64 rows of the
///    shipped multiplication-table transcription.
#[test]
fn c01_structure_table_matches_reference() {
    let mut gate = Gate::new("c01 structure-table", Some(Duration::from_secs(1)));
    let records = parse_reference_table();
    gate.check(records.len() == 64, "table has 64 rows");
    for rec in &records {
        gate.check(
            structure_product(rec.left, rec.right) == rec.term,
            &format!("product {} · {}", rec.left, rec.right),
        );
    }
    gate.finish();
}

/// 2. Composition identities: the multiplicative norm, both flip
///    identities, and associativity of the norm pairing hold with zero
///    failures — exhaustively over GF(2), capped-sampled over GF(3), and
///    on 10⁴ random pairs over GF(4), GF(7), and ℚ.
#[test]
fn c02_composition_identities() {
    let mut gate = Gate::new("c02 identities", Some(Duration::from_secs(30)));
    let seed = okubo::verify::DEFAULT_SEED;
    let r2 = identity_suite(&algebra(2, 1, 1), 100_000, seed);
    gate.check(r2.exhaustive, "GF(2) runs exhaustively");
    gate.check(r2.pairs_checked == 65_536, "GF(2) covers 256² pairs");
    gate.check(r2.failures == 0, "GF(2) zero failures");
    let r3 = identity_suite(&algebra(3, 1, 1), 100_000, seed);
    gate.check(r3.pairs_checked == 100_000, "GF(3) hits the 10⁵ cap");
    gate.check(r3.failures == 0, "GF(3) zero failures");
    for (a, label) in [
        (algebra(4, 1, 1), "GF(4)"),
        (algebra(7, 1, 1), "GF(7)"),
        (
            OkuboAlgebra::with_integers(FieldDescriptor::rationals(), 2, 3).unwrap(),
            "Q",
        ),
    ] {
        let r = identity_suite(&a, 10_000, seed);
        gate.check(
            r.pairs_checked == 10_000,
            &format!("{label} checks 10⁴ pairs"),
        );
        gate.check(r.failures == 0, &format!("{label} zero failures"));
    }
    gate.finish();
}

/// 3. The cube-class map on grading degrees is a group homomorphism on
///    all 81 degree pairs for four parameter choices.
#[test]
fn c03_cube_class_map_is_a_homomorphism() {
    let mut gate = Gate::new("c03 phi-homomorphism", None);
    let instances = [
        (algebra(7, 1, 1), "GF(7) (1,1)"),
        (algebra(7, 1, 3), "GF(7) (1,3)"),
        (algebra(7, 3, 3), "GF(7) (3,3)"),
        (
            OkuboAlgebra::with_integers(FieldDescriptor::rationals(), 2, 3).unwrap(),
            "Q (2,3)",
        ),
    ];
    for (a, label) in instances {
        let phi = phi_gamma(&a).unwrap();
        gate.check(phi.is_homomorphism(), &format!("{label} all 81 pairs"));
    }
    gate.finish();
}

/// 4. Weyl-group orders follow the image-rank trichotomy (24 / 3 / 1)
///    and the formula route agrees with the quotient route.
#[test]
fn c04_weyl_trichotomy() {
    let mut gate = Gate::new("c04 weyl-trichotomy", Some(Duration::from_secs(60)));
    let instances: Vec<(OkuboAlgebra, usize, &str)> = vec![
        (algebra(2, 1, 1), 24, "GF(2) (1,1)"),
        (algebra(3, 1, 1), 24, "GF(3) (1,1)"),
        (algebra(4, 1, 1), 24, "GF(4) (1,1)"),
        (algebra(7, 1, 1), 24, "GF(7) (1,1)"),
        (algebra(7, 1, 3), 3, "GF(7) (1,3)"),
        (
            OkuboAlgebra::with_integers(FieldDescriptor::rationals(), 2, 3).unwrap(),
            1,
            "Q (2,3)",
        ),
    ];
    for (a, expected, label) in instances {
        let formula = weyl_group_via_formula(&a).unwrap();
        gate.check(
            formula.order() == expected,
            &format!("{label} formula order {expected}"),
        );
        let aut = grading_automorphisms(&a).unwrap();
        let (_, stab_idx) = stabilizer_subgroup(&a, &aut).unwrap();
        let quotient = weyl_from_aut(&aut, &stab_idx).unwrap();
        gate.check(
            quotient.order() == expected,
            &format!("{label} quotient order {expected}"),
        );
        gate.check(
            small_group_isomorphic(&quotient, &formula)
                .unwrap()
                .is_some(),
            &format!("{label} routes agree"),
        );
    }
    gate.finish();
}

/// 5. Grading-automorphism orders, stabilizer sizes as squared counts of
///    cube roots of unity, and a splitting of the quotient sequence.
#[test]
fn c05_grading_automorphism_structure() {
    let mut gate = Gate::new("c05 grading-aut", None);
    for (q, aut_order, label) in [(4u64, 216usize, "GF(4)"), (2, 24, "GF(2)"), (3, 24, "GF(3)")] {
        let a = algebra(q, 1, 1);
        let f = a.field();
        let aut = grading_automorphisms(&a).unwrap();
        gate.check(
            aut.order() == aut_order,
            &format!("{label} automorphism order {aut_order}"),
        );
        let (stab, stab_idx) = stabilizer_subgroup(&a, &aut).unwrap();
        let mu3 = f
            .elements()
            .filter(|x| !x.is_zero() && f.pow(x, 3).is_one())
            .count();
        gate.check(
            stab.order() == mu3 * mu3,
            &format!("{label} stabilizer is |mu3|² = {}", mu3 * mu3),
        );
        let section = splitting_section(&a, &aut).unwrap();
        let image = section.hom.image_indices();
        let report = semidirect_check(&aut, &stab_idx, &image).unwrap();
        gate.check(report.holds, &format!("{label} section splits the sequence"));
    }
    gate.finish();
}

/// 6. The unitary tower over GF(4): group orders 648 / 216 / 72, the
///    24-element conjugation orbit of the diagonal generator equal to the
///    scaled basis lines, and its 27-element all-diagonal stabilizer.
#[test]
fn c06_unitary_tower_and_orbit() {
    let mut gate = Gate::new("c06 unitary-tower", Some(Duration::from_secs(120)));
    let groups = unitary_f4().unwrap();
    gate.check(groups.u.order() == 648, "|U| = 648");
    gate.check(groups.su.order() == 216, "|SU| = 216");
    gate.check(groups.pu.order() == 216, "|PU| = 216");
    gate.check(groups.psu.order() == 72, "|PSU| = 72");
    let orbit = orbit_of_pauli_x(&groups).unwrap();
    gate.check(orbit.orbit.len() == 24, "orbit has 24 elements");
    gate.check(
        orbit.matches_scaled_basis_lines,
        "orbit equals the scaled basis lines",
    );
    gate.check(orbit.contains_x, "orbit contains its base point");
    gate.check(orbit.stabilizer_size == 27, "stabilizer has 27 elements");
    gate.check(orbit.stabilizer_all_diagonal, "stabilizer is diagonal");
    gate.finish();
}

/// 7. Transporting unitary conjugation through the trace-zero matrix
///    model lands exactly on the grading automorphisms, as sets of 8×8
///    coefficient matrices.
#[test]
fn c07_conjugation_image_equals_grading_automorphisms() {
    let mut gate = Gate::new("c07 conjugation-image", None);
    let groups = unitary_f4().unwrap();
    let model = sl3_iso_check(&groups.field, &groups.omega).unwrap();
    let a = algebra(4, 1, 1);
    let aut = grading_automorphisms(&a).unwrap();
    let report = conj_homomorphism(&groups, &model, &aut).unwrap();
    gate.check(report.u_scalar_kernel == 3, "U-level kernel is the 3 scalars");
    let image: BTreeSet<linalg::Matrix> = report
        .hom
        .image_indices()
        .into_iter()
        .map(|i| aut.element(i).to_matrix())
        .collect();
    let all: BTreeSet<linalg::Matrix> = aut.elements().iter().map(|m| m.to_matrix()).collect();
    gate.check(image == all, "image equals the full automorphism group");
    gate.finish();
}

/// 8. Group identifications: PU is isomorphic to the affine model
///    (ℤ/3)² ⋊ SL(2,3) by an explicitly verified isomorphism, and PSU
///    decomposes as (ℤ/3)² ⋊ Q₈ where the complement is generated by the
///    images of the two order-4 anticommuting degree matrices.
#[test]
fn c08_projective_group_identifications() {
    let mut gate = Gate::new("c08 pu-psu-structure", Some(Duration::from_secs(120)));
    let groups = unitary_f4().unwrap();

    let pu_model = group::semidirect_z3sq_sl23();
    gate.check(
        small_group_isomorphic(&pu_model, &groups.pu).unwrap().is_some(),
        "PU matches the (Z/3)² ⋊ SL(2,3) model",
    );

    let psu_model = group::semidirect_z3sq_q8();
    let iso = small_group_isomorphic(&psu_model, &groups.psu).unwrap();
    gate.check(iso.is_some(), "PSU matches the (Z/3)² ⋊ Q8 model");
    if let Some(hom) = iso {
        let ident: group::Mat2F3 = [1, 0, 0, 1];
        let mut n_idx: Vec<usize> = Vec::new();
        let mut s_idx: Vec<usize> = Vec::new();
        let mut gen_idx: Vec<usize> = Vec::new();
        for (i, (v, m)) in psu_model.elements().iter().enumerate() {
            if *m == ident {
                n_idx.push(hom.apply(i));
            }
            if *v == (0, 0) {
                s_idx.push(hom.apply(i));
                if *m == Q8_GEN_I || *m == Q8_GEN_J {
                    gen_idx.push(hom.apply(i));
                }
            }
        }
        n_idx.sort_unstable();
        s_idx.sort_unstable();
        gate.check(n_idx.len() == 9, "translation image has 9 elements");
        gate.check(s_idx.len() == 8, "complement image has 8 elements");
        gate.check(gen_idx.len() == 2, "both generator images found");
        let generated = groups.psu.closure_of_indices(&gen_idx);
        gate.check(
            generated == s_idx,
            "the two order-4 generators span the complement",
        );
        let report = semidirect_check(&groups.psu, &n_idx, &s_idx).unwrap();
        gate.check(report.holds, "PSU splits over the translation image");
    }
    gate.finish();
}

/// 9. The full automorphism group of the algebra over GF(2), built by
///    exhausting generator pairs, has order 216 and is isomorphic to the
///    computed PU.
#[test]
fn c09_full_automorphism_group_over_gf2() {
    let mut gate = Gate::new("c09 full-aut-gf2", Some(Duration::from_secs(60)));
    let full = full_aut_f2().unwrap();
    gate.check(full.order() == 216, "order 216");
    let groups = unitary_f4().unwrap();
    gate.check(
        small_group_isomorphic(&full, &groups.pu).unwrap().is_some(),
        "isomorphic to the computed PU",
    );
    gate.finish();
}

/// 10. Isomorphism search produces verified isomorphisms onto the split
///     parameters over GF(7) and GF(3).
#[test]
fn c10_isomorphism_search() {
    let mut gate = Gate::new("c10 isomorphism-search", Some(Duration::from_secs(300)));
    for (q, alpha, beta) in [(7u64, 1i64, 3i64), (3, 1, 2)] {
        let source = algebra(q, alpha, beta);
        let target = algebra(q, 1, 1);
        let label = format!("GF({q}) ({alpha},{beta}) -> (1,1)");
        match find_isomorphism(&source, &target).unwrap() {
            Some(m) => gate.check(m.is_invertible(), &format!("{label} invertible")),
            None => gate.check(false, &format!("{label} found")),
        }
    }
    gate.finish();
}

/// 11. Characteristic-3 idempotent census over GF(3): at least one
///     singular and one quaternionic idempotent, and every nonzero
///     idempotent classifies without an unexpected rank.
#[test]
fn c11_char3_idempotent_census() {
    let mut gate = Gate::new("c11 idempotent-census", Some(Duration::from_secs(60)));
    let a = algebra(3, 1, 1);
    let idems = a.find_idempotents().unwrap();
    let mut seen_singular = false;
    let mut seen_quaternionic = false;
    for e in idems.iter().filter(|e| !e.is_zero()) {
        match a.classify_idempotent(e) {
            Ok(IdempotentClass::Singular) => seen_singular = true,
            Ok(IdempotentClass::Quaternionic) => seen_quaternionic = true,
            Ok(IdempotentClass::Quadratic) => {}
            Err(err) => gate.check(false, &format!("classification failed: {err}")),
        }
    }
    gate.check(seen_singular, "a singular idempotent exists");
    gate.check(seen_quaternionic, "a quaternionic idempotent exists");
    gate.finish();
}

/// 12. Hermitian orthonormalization reaches an identity Gram matrix for
///     every listed form: all diagonal forms over GF(4) (dimensions 1–4)
///     plus 100 random dense nondegenerate forms over GF(4) and 100 over
///     GF(9).
#[test]
fn c12_hermitian_orthonormalization() {
    let mut gate = Gate::new("c12 hermitian-gram", None);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC5);

    let orthonormal = |gate: &mut Gate, form: &HermitianForm, label: &str| {
        let k = *form.field();
        let basis = hermitian_orthonormalize(form).unwrap();
        let ok = basis.len() == form.dim()
            && form.gram_of(&basis) == linalg::identity(&k, form.dim());
        gate.check(ok, label);
    };

    // Diagonal entries must be fixed by the conjugation, i.e. lie in the
    // prime subfield; over GF(4) the only nonzero choice is 1, so the
    // diagonal forms are exactly the identity forms.
    let k4 = gf(4);
    for dim in 1..=4 {
        let form = HermitianForm::standard(k4, dim).unwrap();
        orthonormal(&mut gate, &form, &format!("GF(4) diagonal dim {dim}"));
    }

    for (k, label) in [(k4, "GF(4)"), (gf(9), "GF(9)")] {
        let q = k.order().unwrap();
        let p = k.characteristic();
        let mut produced = 0usize;
        while produced < 100 {
            let dim = 2 + (produced % 3);
            let mut gram = linalg::identity(&k, dim);
            for i in 0..dim {
                gram[i][i] = k.from_integer(rng.gen_range(0..p) as i64);
                for j in (i + 1)..dim {
                    let e: FieldElement = k.element_from_index(rng.gen_range(0..q));
                    gram[i][j] = e.clone();
                    gram[j][i] = k.frobenius(&e);
                }
            }
            match HermitianForm::new(k, gram) {
                Ok(form) => {
                    produced += 1;
                    orthonormal(
                        &mut gate,
                        &form,
                        &format!("{label} random form {produced} (dim {dim})"),
                    );
                }
                Err(_) => continue, // degenerate draw; redraw
            }
        }
    }
    gate.finish();
}

/// 13. Cross-model checks: the trace-zero matrix model verifies over
///     GF(4), GF(7), GF(13), and the conjugation-skew model over
///     (GF(2), GF(4)) reproduces the split algebra over GF(2) exactly.
#[test]
fn c13_matrix_and_skew_models() {
    let mut gate = Gate::new("c13 cross-models", None);
    for (q, omega_int) in [(4u64, 0i64), (7, 2), (13, 3)] {
        let f = gf(q);
        let omega = if omega_int == 0 {
            f.primitive_cube_root().unwrap()
        } else {
            f.from_integer(omega_int)
        };
        gate.check(
            sl3_iso_check(&f, &omega).is_ok(),
            &format!("matrix model over GF({q})"),
        );
    }
    let f2 = gf(2);
    let k4 = gf(4);
    let omega = k4.primitive_cube_root().unwrap();
    // Construction verifies all 64 products against the structure
    // constants for (1,1) over the base field, so `Ok` is the check.
    match symbol_algebra_skew(&f2, &k4, &omega, &f2.one(), &f2.one()) {
        Ok(model) => {
            gate.check(model.is_conjugated(), "skew model uses the conjugation");
            gate.check(
                model.base_field() == &f2,
                "skew model is based over GF(2)",
            );
        }
        Err(err) => gate.check(false, &format!("skew model construction: {err}")),
    }
    gate.finish();
}

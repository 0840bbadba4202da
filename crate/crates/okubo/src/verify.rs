//! Wholesale verification of the composition-algebra identities on a
//! constructed algebra: norm multiplicativity `n(x*y) = n(x)n(y)`, the
//! two-sided composition law `(x*y)*x = x*(y*x) = n(x)·y`, and
//! associativity of the polar form `polar(x*y, z) = polar(x, y*z)`.
//!
//! The polar identity is bilinear in `z`, so checking it on the eight
//! basis vectors per pair `(x, y)` covers all `z`.
//!
//! Pairs are drawn exhaustively when the full pair count fits under the
//! requested cap, and otherwise from a seeded deterministic stream
//! (uniform coefficients over a finite field; small fractions over ℚ), so
//! every run is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, BasisIndex, OkuboAlgebra};

/// Default ceiling on the number of ordered pairs checked in one run.
pub const DEFAULT_PAIR_CAP: u64 = 100_000;
/// Default stream seed.
pub const DEFAULT_SEED: u64 = 0xA1B2C3;

/// Outcome of one identity-suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub field: String,
    pub alpha: String,
    pub beta: String,
    /// True when every ordered pair of elements was checked.
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.failures == 0
    }
}

fn check_pair(a: &OkuboAlgebra, x: &AlgebraElement, y: &AlgebraElement) -> Option<String> {
    let f = a.field();
    let xy = a.mul_unchecked(x, y);
    let nx = a.norm(x);
    if a.norm(&xy) != f.mul(&nx, &a.norm(y)) {
        return Some(format!("n(x*y) ≠ n(x)n(y) at x = {x}, y = {y}"));
    }
    let scaled = a.scale(&nx, y);
    if a.mul_unchecked(&xy, x) != scaled {
        return Some(format!("(x*y)*x ≠ n(x)y at x = {x}, y = {y}"));
    }
    let yx = a.mul_unchecked(y, x);
    if a.mul_unchecked(x, &yx) != scaled {
        return Some(format!("x*(y*x) ≠ n(x)y at x = {x}, y = {y}"));
    }
    for c in BasisIndex::ALL {
        let z = a.basis_element(c);
        let lhs = a.polar(&xy, &z);
        let rhs = a.polar(x, &a.mul_unchecked(y, &z));
        if lhs != rhs {
            return Some(format!(
                "polar(x*y, z) ≠ polar(x, y*z) at x = {x}, y = {y}, z = z~{c}"
            ));
        }
    }
    None
}

fn random_element(a: &OkuboAlgebra, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let f = a.field();
    match f.order() {
        Some(q) => a.element_from_index(rng.gen_range(0..q.pow(8))),
        None => {
            let coeffs = std::array::from_fn(|_| {
                f.from_fraction(rng.gen_range(-9..=9), rng.gen_range(1..=9))
            });
            a.element_from_coeffs(coeffs)
                .expect("coefficients drawn from the algebra's field")
        }
    }
}

/// Runs the identity suite on up to `pair_cap` ordered pairs.
///
/// Finite fields whose full `q⁸ × q⁸` pair count is at most `pair_cap` are
/// checked exhaustively; anything larger (and ℚ always) is checked on
/// `pair_cap` pairs from the deterministic stream for `seed`.
pub fn identity_suite(a: &OkuboAlgebra, pair_cap: u64, seed: u64) -> IdentityReport {
    let mut report = IdentityReport {
        field: a.field().to_string(),
        alpha: a.alpha().to_string(),
        beta: a.beta().to_string(),
        exhaustive: false,
        pairs_checked: 0,
        failures: 0,
        first_failure: None,
    };
    let record = |fail: Option<String>, report: &mut IdentityReport| {
        report.pairs_checked += 1;
        if let Some(msg) = fail {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(msg);
            }
        }
    };
    let exhaustive_total = a.field().order().and_then(|q| {
        let total = q.pow(8);
        ((total as u128) * (total as u128) <= pair_cap as u128).then_some(total)
    });
    match exhaustive_total {
        Some(total) => {
            report.exhaustive = true;
            for xi in 0..total {
                let x = a.element_from_index(xi);
                for yi in 0..total {
                    let y = a.element_from_index(yi);
                    record(check_pair(a, &x, &y), &mut report);
                }
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..pair_cap {
                let x = random_element(a, &mut rng);
                let y = random_element(a, &mut rng);
                record(check_pair(a, &x, &y), &mut report);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::grading::GradingGroupElement;

    fn over_gf(q: u64, alpha: i64, beta: i64) -> OkuboAlgebra {
        OkuboAlgebra::with_integers(FieldDescriptor::gf(q).unwrap(), alpha, beta).unwrap()
    }

    #[test]
    fn gf2_suite_is_exhaustive_and_clean() {
        let report = identity_suite(&over_gf(2, 1, 1), DEFAULT_PAIR_CAP, DEFAULT_SEED);
        assert!(report.exhaustive);
        assert_eq!(report.pairs_checked, 65_536);
        assert!(report.all_hold(), "{:?}", report.first_failure);
    }

    #[test]
    fn sampled_suites_are_clean() {
        for alg in [over_gf(7, 3, 5), over_gf(4, 1, 1), over_gf(9, 2, 2)] {
            let report = identity_suite(&alg, 1_000, DEFAULT_SEED);
            assert!(!report.exhaustive);
            assert_eq!(report.pairs_checked, 1_000);
            assert!(report.all_hold(), "{:?}", report.first_failure);
        }
        let q = OkuboAlgebra::with_integers(FieldDescriptor::rationals(), 2, 3).unwrap();
        let report = identity_suite(&q, 200, DEFAULT_SEED);
        assert!(report.all_hold(), "{:?}", report.first_failure);
    }

    #[test]
    fn suite_is_deterministic_for_a_fixed_seed() {
        let a = over_gf(7, 3, 5);
        let r1 = identity_suite(&a, 500, 42);
        let r2 = identity_suite(&a, 500, 42);
        assert_eq!(r1, r2);
    }

    #[test]
    fn zero_product_pairing_identity_on_independent_degrees() {
        // For homogeneous x of degree h and y of degree g with g outside
        // {e, h, 2h} and x*y = 0:
        //   polar(y*x, (y*x)*(y*x)) = −polar(y, y*y)·polar(x, x*x).
        let algs = [
            over_gf(7, 3, 5),
            over_gf(4, 1, 1),
            over_gf(9, 2, 1),
            OkuboAlgebra::with_integers(FieldDescriptor::rationals(), 2, 3).unwrap(),
        ];
        for alg in &algs {
            let f = alg.field();
            let lambdas = [f.from_integer(1), f.from_integer(-2)];
            let mut pairs_hit = 0;
            for bx in BasisIndex::ALL {
                for by in BasisIndex::ALL {
                    let h = GradingGroupElement::from_basis_index(bx);
                    let g = GradingGroupElement::from_basis_index(by);
                    if g == h || g == h.add(&h) {
                        continue;
                    }
                    for lam in &lambdas {
                        for mu in &lambdas {
                            let x = alg.scale(lam, &alg.basis_element(bx));
                            let y = alg.scale(mu, &alg.basis_element(by));
                            if !alg.mul_unchecked(&x, &y).is_zero() {
                                continue;
                            }
                            pairs_hit += 1;
                            let yx = alg.mul_unchecked(&y, &x);
                            let lhs = alg.polar(&yx, &alg.mul_unchecked(&yx, &yx));
                            let px = alg.polar(&x, &alg.mul_unchecked(&x, &x));
                            let py = alg.polar(&y, &alg.mul_unchecked(&y, &y));
                            let rhs = f.neg(&f.mul(&py, &px));
                            assert_eq!(lhs, rhs, "x = {x}, y = {y}");
                        }
                    }
                }
            }
            assert!(pairs_hit > 0, "no zero-product pairs exercised");
        }
    }
}

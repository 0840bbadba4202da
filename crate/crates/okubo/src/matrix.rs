//! 3×3 matrix realizations: `sl(3,F)` with the ω-twisted star product and
//! the quadratic form `sr`, the Pauli-style basis `z_{i,j}`, cross-checks
//! of that model against the structure constants of `O_{1,1}`, and
//! Hermitian forms over quadratic extensions with an exact
//! orthonormalization routine.
//!
//! The quadratic form `sr(a)` is the degree-1 coefficient of the
//! characteristic polynomial (the sum of the principal 2×2 minors), with
//! polar form `sr(a,b) = tr(a)tr(b) − tr(ab)`. On trace-zero matrices over
//! a field of characteristic ≠ 3 containing a primitive cube root of
//! unity ω, the product
//! `x*y = ω·xy − ω²·yx − ((ω−ω²)/3)·tr(xy)·1`
//! makes `(sl(3,F), *, sr)` a symmetric composition algebra, and the basis
//! `z_{i,j} = ω^{−ij}/(ω−ω²)·x^i y^j` built from
//! `x = diag(1, ω, ω²)` and the cyclic shift `y` reproduces the structure
//! constants of the split algebra exactly.

use std::fmt;

use thiserror::Error;

use crate::algebra::{structure_product, AlgebraElement, BasisIndex};
use crate::field::{self, FieldDescriptor, FieldElement, FieldError, FieldKind};
use crate::linalg;

/// Errors from the matrix model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("operation requires characteristic ≠ 3, found {found}")]
    WrongCharacteristic { found: u64 },
    #[error("matrix must have trace zero")]
    NotTraceZero,
    #[error("ω must be a primitive cube root of unity in the field")]
    NoOmega,
    #[error("matrix model disagrees with the structure constants: {0}")]
    StructureMismatch(String),
    #[error("the Hermitian form is degenerate")]
    DegenerateForm,
    #[error("the Gram matrix is not τ-Hermitian")]
    NotHermitian,
    #[error("{0}")]
    BadExtension(String),
    #[error("dimension {0} is outside the supported range 1..=4")]
    WrongDimension(usize),
}

/// A 3×3 matrix over a fixed field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3 {
    field: FieldDescriptor,
    entries: [FieldElement; 9],
}

impl Mat3 {
    pub fn new(field: FieldDescriptor, entries: [FieldElement; 9]) -> Result<Mat3, MatrixError> {
        if entries.iter().any(|e| e.field() != &field) {
            return Err(FieldError::MixedFields.into());
        }
        Ok(Mat3 { field, entries })
    }

    pub fn from_fn(field: &FieldDescriptor, mut f: impl FnMut(usize, usize) -> FieldElement) -> Mat3 {
        let entries = std::array::from_fn(|k| f(k / 3, k % 3));
        Mat3 {
            field: *field,
            entries,
        }
    }

    pub fn zero(field: &FieldDescriptor) -> Mat3 {
        Mat3::from_fn(field, |_, _| field.zero())
    }

    pub fn identity(field: &FieldDescriptor) -> Mat3 {
        Mat3::from_fn(field, |r, c| if r == c { field.one() } else { field.zero() })
    }

    pub fn diagonal(field: &FieldDescriptor, d: [FieldElement; 3]) -> Mat3 {
        Mat3::from_fn(field, |r, c| if r == c { d[r].clone() } else { field.zero() })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn entry(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * 3 + c]
    }

    pub fn add(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| self.field.add(self.entry(r, c), other.entry(r, c)))
    }

    pub fn sub(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| self.field.sub(self.entry(r, c), other.entry(r, c)))
    }

    pub fn neg(&self) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| self.field.neg(self.entry(r, c)))
    }

    pub fn scale(&self, k: &FieldElement) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| self.field.mul(k, self.entry(r, c)))
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| {
            let mut acc = self.field.zero();
            for k in 0..3 {
                acc = self
                    .field
                    .add(&acc, &self.field.mul(self.entry(r, k), other.entry(k, c)));
            }
            acc
        })
    }

    pub fn pow(&self, e: u32) -> Mat3 {
        let mut acc = Mat3::identity(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> FieldElement {
        let f = &self.field;
        f.add(&f.add(self.entry(0, 0), self.entry(1, 1)), self.entry(2, 2))
    }

    pub fn is_trace_zero(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| self.entry(c, r).clone())
    }

    /// Transpose with the Frobenius x ↦ x^p applied entrywise (the
    /// conjugate transpose for a quadratic extension of a prime field).
    pub fn conj_transpose(&self) -> Mat3 {
        Mat3::from_fn(&self.field, |r, c| self.field.frobenius(self.entry(c, r)))
    }

    pub fn determinant(&self) -> FieldElement {
        let f = &self.field;
        let m = |r: usize, c: usize| self.entry(r, c);
        let pos = f.add(
            &f.add(
                &f.mul(m(0, 0), &f.mul(m(1, 1), m(2, 2))),
                &f.mul(m(0, 1), &f.mul(m(1, 2), m(2, 0))),
            ),
            &f.mul(m(0, 2), &f.mul(m(1, 0), m(2, 1))),
        );
        let neg = f.add(
            &f.add(
                &f.mul(m(0, 2), &f.mul(m(1, 1), m(2, 0))),
                &f.mul(m(0, 1), &f.mul(m(1, 0), m(2, 2))),
            ),
            &f.mul(m(0, 0), &f.mul(m(1, 2), m(2, 1))),
        );
        f.sub(&pos, &neg)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..3 {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..3 {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The quadratic form: degree-1 characteristic-polynomial coefficient,
/// i.e. the sum of the principal 2×2 minors (valid in every
/// characteristic).
pub fn sr_form(a: &Mat3) -> FieldElement {
    let f = a.field();
    let minor = |r1: usize, r2: usize| {
        f.sub(
            &f.mul(a.entry(r1, r1), a.entry(r2, r2)),
            &f.mul(a.entry(r1, r2), a.entry(r2, r1)),
        )
    };
    f.add(&f.add(&minor(0, 1), &minor(0, 2)), &minor(1, 2))
}

/// The polar form of `sr`: `tr(a)tr(b) − tr(ab)`.
pub fn sr_polar(a: &Mat3, b: &Mat3) -> FieldElement {
    let f = a.field();
    f.sub(
        &f.mul(&a.trace(), &b.trace()),
        &a.mul(b).trace(),
    )
}

fn validate_omega(f: &FieldDescriptor, omega: &FieldElement) -> Result<(), MatrixError> {
    if f.characteristic() == 3 {
        return Err(MatrixError::WrongCharacteristic { found: 3 });
    }
    if omega.field() != f {
        return Err(FieldError::MixedFields.into());
    }
    if omega.is_one() || !f.pow(omega, 3).is_one() {
        return Err(MatrixError::NoOmega);
    }
    Ok(())
}

/// The twisted product `x*y = ω·xy − ω²·yx − ((ω−ω²)/3)·tr(xy)·1` on
/// trace-zero matrices over a field of characteristic ≠ 3.
pub fn star_product(
    omega: &FieldElement,
    x: &Mat3,
    y: &Mat3,
) -> Result<Mat3, MatrixError> {
    let f = x.field();
    if y.field() != f {
        return Err(FieldError::MixedFields.into());
    }
    validate_omega(f, omega)?;
    if !x.is_trace_zero() || !y.is_trace_zero() {
        return Err(MatrixError::NotTraceZero);
    }
    let omega2 = f.mul(omega, omega);
    let xy = x.mul(y);
    let yx = y.mul(x);
    let skew = xy.scale(omega).sub(&yx.scale(&omega2));
    let third = f
        .inv(&f.from_integer(3))
        .expect("3 is invertible away from characteristic 3");
    let coeff = f.mul(
        &f.mul(&f.sub(omega, &omega2), &third),
        &xy.trace(),
    );
    Ok(skew.sub(&Mat3::identity(f).scale(&coeff)))
}

/// The eight matrices `z_{i,j} = ω^{−ij}/(ω−ω²)·x^i y^j` in the fixed
/// basis-index order, where `x = diag(1, ω, ω²)` and `y` is the cyclic
/// shift.
pub fn pauli_basis(
    f: &FieldDescriptor,
    omega: &FieldElement,
) -> Result<[Mat3; 8], MatrixError> {
    validate_omega(f, omega)?;
    let omega2 = f.mul(omega, omega);
    let x = Mat3::diagonal(f, [f.one(), omega.clone(), omega2.clone()]);
    let y = Mat3::from_fn(f, |r, c| {
        if (r + 1) % 3 == c {
            f.one()
        } else {
            f.zero()
        }
    });
    let scale_inv = f
        .inv(&f.sub(omega, &omega2))
        .expect("ω ≠ ω² for a primitive cube root");
    let z = |i: u32, j: u32| {
        let tw = f.pow(omega, ((3 - (i * j) % 3) % 3) as u64);
        x.pow(i).mul(&y.pow(j)).scale(&f.mul(&tw, &scale_inv))
    };
    Ok(std::array::from_fn(|k| {
        let b = BasisIndex::ALL[k];
        z(b.i() as u32, b.j() as u32)
    }))
}

/// The matrix realization of the split algebra: the map
/// `z~_{i,j} ↦ z_{i,j}` from `O_{1,1}` into `(sl(3,F), *, sr)`, held as
/// the image basis.
#[derive(Debug, Clone)]
pub struct Sl3Model {
    field: FieldDescriptor,
    omega: FieldElement,
    basis: [Mat3; 8],
}

impl Sl3Model {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn basis(&self) -> &[Mat3; 8] {
        &self.basis
    }

    /// Star product with this model's ω.
    pub fn star(&self, x: &Mat3, y: &Mat3) -> Mat3 {
        star_product(&self.omega, x, y).expect("model matrices are trace zero")
    }

    /// Image of an `O_{1,1}` element under the basis map.
    pub fn apply(&self, v: &AlgebraElement) -> Mat3 {
        let mut acc = Mat3::zero(&self.field);
        for (k, c) in v.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.basis[k].scale(c));
            }
        }
        acc
    }

    /// Coordinates of a trace-zero matrix in the `z_{i,j}` basis, if it
    /// lies in their span.
    pub fn expand(&self, m: &Mat3) -> Option<[FieldElement; 8]> {
        let system: linalg::Matrix = (0..9)
            .map(|e| {
                (0..8)
                    .map(|b| self.basis[b].entry(e / 3, e % 3).clone())
                    .collect()
            })
            .collect();
        let rhs: Vec<FieldElement> = (0..9).map(|e| m.entry(e / 3, e % 3).clone()).collect();
        let sol = linalg::solve(&self.field, &system, &rhs)?;
        Some(std::array::from_fn(|k| sol[k].clone()))
    }
}

/// Builds the matrix model over `f` with the given ω and verifies it
/// against the structure constants of the split algebra: all 64 star
/// products and all 64 polar pairings must match, and every basis matrix
/// must be isotropic of trace zero.
pub fn sl3_iso_check(
    f: &FieldDescriptor,
    omega: &FieldElement,
) -> Result<Sl3Model, MatrixError> {
    let basis = pauli_basis(f, omega)?;
    for (k, z) in basis.iter().enumerate() {
        if !z.is_trace_zero() {
            return Err(MatrixError::StructureMismatch(format!(
                "basis matrix {} has nonzero trace",
                BasisIndex::ALL[k]
            )));
        }
        if !sr_form(z).is_zero() {
            return Err(MatrixError::StructureMismatch(format!(
                "basis matrix {} is not isotropic",
                BasisIndex::ALL[k]
            )));
        }
    }
    for (ka, a) in BasisIndex::ALL.iter().enumerate() {
        for (kb, b) in BasisIndex::ALL.iter().enumerate() {
            let prod = star_product(omega, &basis[ka], &basis[kb])?;
            let term = structure_product(*a, *b);
            let expected = match term.target {
                None => Mat3::zero(f),
                Some(t) => {
                    let m = basis[t.position()].clone();
                    if term.sign < 0 {
                        m.neg()
                    } else {
                        m
                    }
                }
            };
            if prod != expected {
                return Err(MatrixError::StructureMismatch(format!(
                    "product {a} * {b} deviates from the table"
                )));
            }
            let pairing = sr_polar(&basis[ka], &basis[kb]);
            let sums_to_zero = (a.i() + b.i()) % 3 == 0 && (a.j() + b.j()) % 3 == 0;
            let expected_pairing = if sums_to_zero { f.one() } else { f.zero() };
            if pairing != expected_pairing {
                return Err(MatrixError::StructureMismatch(format!(
                    "pairing of {a} and {b} deviates"
                )));
            }
        }
    }
    Ok(Sl3Model {
        field: *f,
        omega: omega.clone(),
        basis,
    })
}

/// A nondegenerate τ-Hermitian form over a quadratic extension K of a
/// prime field, with τ the Frobenius x ↦ x^p; first slot linear,
/// `h(u,v) = Σ g_{ij} u_i τ(v_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    field: FieldDescriptor,
    gram: Vec<Vec<FieldElement>>,
}

impl HermitianForm {
    pub fn new(
        k: FieldDescriptor,
        gram: Vec<Vec<FieldElement>>,
    ) -> Result<HermitianForm, MatrixError> {
        if k.kind() != FieldKind::Extension || k.degree() != 2 {
            return Err(MatrixError::BadExtension(format!(
                "{k} is not a quadratic extension of a prime field"
            )));
        }
        let dim = gram.len();
        if !(1..=4).contains(&dim) {
            return Err(MatrixError::WrongDimension(dim));
        }
        for row in &gram {
            if row.len() != dim {
                return Err(MatrixError::WrongDimension(row.len()));
            }
            if row.iter().any(|e| e.field() != &k) {
                return Err(FieldError::MixedFields.into());
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                if gram[j][i] != k.frobenius(&gram[i][j]) {
                    return Err(MatrixError::NotHermitian);
                }
            }
        }
        if linalg::determinant(&k, &gram).is_zero() {
            return Err(MatrixError::DegenerateForm);
        }
        Ok(HermitianForm { field: k, gram })
    }

    /// The identity form of the given dimension.
    pub fn standard(k: FieldDescriptor, dim: usize) -> Result<HermitianForm, MatrixError> {
        HermitianForm::new(k, linalg::identity(&k, dim))
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<FieldElement>] {
        &self.gram
    }

    /// `h(u, v) = Σ g_{ij} u_i τ(v_j)`.
    pub fn eval(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.dim() {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if v[j].is_zero() {
                    continue;
                }
                let term = f.mul(&self.gram[i][j], &f.mul(&u[i], &f.frobenius(&v[j])));
                acc = f.add(&acc, &term);
            }
        }
        acc
    }

    /// Gram matrix of a list of vectors under this form.
    pub fn gram_of(&self, vectors: &[Vec<FieldElement>]) -> linalg::Matrix {
        vectors
            .iter()
            .map(|u| vectors.iter().map(|v| self.eval(u, v)).collect())
            .collect()
    }
}

/// Representative of a τ-fixed element of K in the prime subfield.
fn prime_subfield_part(
    k: &FieldDescriptor,
    prime: &FieldDescriptor,
    x: &FieldElement,
) -> Option<FieldElement> {
    (0..k.characteristic())
        .find(|&c| k.from_coeffs(&[c]) == *x)
        .map(|c| prime.from_coeffs(&[c]))
}

/// Produces a basis whose Gram matrix under `h` is the identity.
///
/// Follows the constructive argument: scan the current complement (its
/// coefficient tuples enumerated with the earliest basis vector's
/// coefficient varying fastest, so the selection is the deterministic
/// least option) for a vector `u` with `h(u,u) ≠ 0`; `h(u,u)` is τ-fixed
/// and hence lies in the prime subfield, so a norm-equation solution λ
/// with λτ(λ) = h(u,u) rescales `u` to norm one; then recurse on the
/// orthogonal complement.
pub fn hermitian_orthonormalize(
    h: &HermitianForm,
) -> Result<Vec<Vec<FieldElement>>, MatrixError> {
    let k = *h.field();
    let prime = FieldDescriptor::prime(k.characteristic())
        .expect("the characteristic of a valid field is prime");
    let q = k.order().expect("Hermitian forms are over finite fields");
    let dim = h.dim();
    let mut complement: Vec<Vec<FieldElement>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { k.one() } else { k.zero() })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<FieldElement>> = Vec::with_capacity(dim);
    while !complement.is_empty() {
        let len = complement.len();
        let mut found: Option<(Vec<FieldElement>, FieldElement)> = None;
        'scan: for n in 1..q.pow(len as u32) {
            let mut u = vec![k.zero(); dim];
            let mut rem = n;
            for w in complement.iter() {
                let c = k.element_from_index(rem % q);
                rem /= q;
                if !c.is_zero() {
                    for (uc, wc) in u.iter_mut().zip(w) {
                        *uc = k.add(uc, &k.mul(&c, wc));
                    }
                }
            }
            let val = h.eval(&u, &u);
            if !val.is_zero() {
                found = Some((u, val));
                break 'scan;
            }
        }
        let (u, val) = found
            .expect("a nondegenerate Hermitian form attains a nonzero value on every subspace");
        let val_prime = prime_subfield_part(&k, &prime, &val)
            .expect("h(u,u) is fixed by the conjugation");
        let lambda = field::solve_norm_equation(&k, &val_prime)?;
        let lambda_inv = k.inv(&lambda).expect("norm-equation solutions are nonzero");
        let unit: Vec<FieldElement> = u.iter().map(|c| k.mul(&lambda_inv, c)).collect();
        debug_assert!(h.eval(&unit, &unit).is_one());
        // Restrict to the orthogonal complement inside the current span.
        let rows: linalg::Matrix = vec![complement.iter().map(|w| h.eval(w, &unit)).collect()];
        let kernel = linalg::kernel_basis(&k, &rows);
        complement = kernel
            .into_iter()
            .map(|coef| {
                let mut v = vec![k.zero(); dim];
                for (c, w) in coef.iter().zip(&complement) {
                    if !c.is_zero() {
                        for (vc, wc) in v.iter_mut().zip(w) {
                            *vc = k.add(vc, &k.mul(c, wc));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(unit);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldDescriptor {
        FieldDescriptor::gf(q).unwrap()
    }

    fn random_mat(f: &FieldDescriptor, rng: &mut ChaCha8Rng) -> Mat3 {
        let q = f.order().unwrap();
        Mat3::from_fn(f, |_, _| f.element_from_index(rng.gen_range(0..q)))
    }

    fn random_trace_zero(f: &FieldDescriptor, rng: &mut ChaCha8Rng) -> Mat3 {
        let mut m = random_mat(f, rng);
        let fix = f.sub(
            m.entry(2, 2),
            &f.neg(&f.add(m.entry(0, 0), m.entry(1, 1))),
        );
        m = m.sub(&Mat3::from_fn(f, |r, c| {
            if r == 2 && c == 2 {
                fix.clone()
            } else {
                f.zero()
            }
        }));
        assert!(m.is_trace_zero());
        m
    }

    #[test]
    fn sr_of_identity_is_three() {
        for q in [2, 4, 7, 9, 13] {
            let f = gf(q);
            assert_eq!(sr_form(&Mat3::identity(&f)), f.from_integer(3));
        }
    }

    #[test]
    fn sr_of_the_diagonal_cube_root_matrix_vanishes() {
        let f = gf(4);
        let w = f.primitive_cube_root().unwrap();
        let w2 = f.mul(&w, &w);
        let m = Mat3::diagonal(&f, [f.one(), w, w2]);
        assert!(sr_form(&m).is_zero());
    }

    #[test]
    fn sr_polar_matches_quadratic_polarization() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [4, 7, 9] {
            let f = gf(q);
            for _ in 0..50 {
                let a = random_mat(&f, &mut rng);
                let b = random_mat(&f, &mut rng);
                let direct = sr_polar(&a, &b);
                let via_form = f.sub(
                    &f.sub(&sr_form(&a.add(&b)), &sr_form(&a)),
                    &sr_form(&b),
                );
                assert_eq!(direct, via_form);
            }
        }
    }

    #[test]
    fn star_product_preconditions() {
        let f9 = gf(9);
        let two = f9.from_integer(2);
        let z = Mat3::zero(&f9);
        assert!(matches!(
            star_product(&two, &z, &z),
            Err(MatrixError::WrongCharacteristic { found: 3 })
        ));
        let f7 = gf(7);
        let z7 = Mat3::zero(&f7);
        assert!(matches!(
            star_product(&f7.one(), &z7, &z7),
            Err(MatrixError::NoOmega)
        ));
        assert!(matches!(
            star_product(&f7.from_integer(3), &z7, &z7),
            Err(MatrixError::NoOmega)
        ));
        let omega = f7.from_integer(2);
        assert!(matches!(
            star_product(&omega, &Mat3::identity(&f7), &z7),
            Err(MatrixError::NotTraceZero)
        ));
    }

    #[test]
    fn star_product_is_a_symmetric_composition_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, omega_val) in [(4, None), (7, Some(2)), (13, Some(3))] {
            let f = gf(q);
            let omega = match omega_val {
                Some(v) => f.from_integer(v),
                None => f.primitive_cube_root().unwrap(),
            };
            for _ in 0..60 {
                let x = random_trace_zero(&f, &mut rng);
                let y = random_trace_zero(&f, &mut rng);
                let xy = star_product(&omega, &x, &y).unwrap();
                assert!(xy.is_trace_zero());
                assert_eq!(sr_form(&xy), f.mul(&sr_form(&x), &sr_form(&y)));
                let lhs = star_product(&omega, &xy, &x).unwrap();
                let rhs = y.scale(&sr_form(&x));
                assert_eq!(lhs, rhs);
                let yx = star_product(&omega, &y, &x).unwrap();
                assert_eq!(star_product(&omega, &x, &yx).unwrap(), rhs);
            }
        }
    }

    #[test]
    fn pauli_generators_satisfy_the_relations() {
        for (q, omega_val) in [(4, None), (7, Some(2)), (13, Some(3))] {
            let f = gf(q);
            let omega = match omega_val {
                Some(v) => f.from_integer(v),
                None => f.primitive_cube_root().unwrap(),
            };
            let omega2 = f.mul(&omega, &omega);
            let x = Mat3::diagonal(&f, [f.one(), omega.clone(), omega2]);
            let y = Mat3::from_fn(&f, |r, c| {
                if (r + 1) % 3 == c {
                    f.one()
                } else {
                    f.zero()
                }
            });
            assert_eq!(x.pow(3), Mat3::identity(&f));
            assert_eq!(y.pow(3), Mat3::identity(&f));
            assert_eq!(y.mul(&x), x.mul(&y).scale(&omega));
        }
    }

    #[test]
    fn pauli_basis_is_trace_zero_and_first_vector_matches() {
        let f = gf(4);
        let omega = f.primitive_cube_root().unwrap();
        let basis = pauli_basis(&f, &omega).unwrap();
        for z in &basis {
            assert!(z.is_trace_zero());
        }
        // z_{1,0} = diag(1, ω, ω²)/(ω−ω²); over GF(4), ω−ω² = 1.
        let omega2 = f.mul(&omega, &omega);
        assert!(f.sub(&omega, &omega2).is_one());
        let expected = Mat3::diagonal(&f, [f.one(), omega.clone(), omega2]);
        assert_eq!(basis[0], expected);
    }

    #[test]
    fn sl3_model_verifies_over_the_three_named_fields() {
        for (q, omega_val) in [(4, None), (7, Some(2)), (13, Some(3))] {
            let f = gf(q);
            let omega = match omega_val {
                Some(v) => f.from_integer(v),
                None => f.primitive_cube_root().unwrap(),
            };
            // The stated ω values are primitive cube roots.
            assert_eq!(f.primitive_cube_root().unwrap(), omega);
            let model = sl3_iso_check(&f, &omega).unwrap();
            // Round trip through the model and back.
            let alg = crate::algebra::OkuboAlgebra::with_integers(f, 1, 1).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..20 {
                let v = alg.element_from_index(rng.gen_range(0..alg.element_count().unwrap()));
                let m = model.apply(&v);
                let back = model.expand(&m).unwrap();
                assert_eq!(&back, v.coeffs());
                // The model multiplies like the algebra.
                let w = alg.element_from_index(rng.gen_range(0..alg.element_count().unwrap()));
                let prod_alg = model.apply(&alg.mul_unchecked(&v, &w));
                let prod_mat = model.star(&model.apply(&v), &model.apply(&w));
                assert_eq!(prod_alg, prod_mat);
            }
            // A matrix with nonzero trace has no expansion.
            assert!(model.expand(&Mat3::identity(&f)).is_none());
        }
    }

    #[test]
    fn hermitian_form_validation() {
        let k = gf(4);
        assert!(matches!(
            HermitianForm::new(gf(7), vec![vec![FieldDescriptor::gf(7).unwrap().one()]]),
            Err(MatrixError::BadExtension(_))
        ));
        let t = k.parse_element("t").unwrap();
        // Non-Hermitian: off-diagonal not conjugate-symmetric.
        let bad = vec![
            vec![k.one(), t.clone()],
            vec![t.clone(), k.one()],
        ];
        assert!(matches!(
            HermitianForm::new(k, bad),
            Err(MatrixError::NotHermitian)
        ));
        // Degenerate: zero matrix row.
        let degenerate = vec![
            vec![k.zero(), k.zero()],
            vec![k.zero(), k.one()],
        ];
        assert!(matches!(
            HermitianForm::new(k, degenerate),
            Err(MatrixError::DegenerateForm)
        ));
        // Valid Hermitian with conjugate off-diagonal entries
        // (det = 1·0 − t·t² = 1 in characteristic 2).
        let good = vec![
            vec![k.one(), t.clone()],
            vec![k.frobenius(&t), k.zero()],
        ];
        HermitianForm::new(k, good).unwrap();
    }

    #[test]
    fn orthonormalize_identity_form_returns_canonical_basis() {
        for dim in 1..=4 {
            let h = HermitianForm::standard(gf(4), dim).unwrap();
            let basis = hermitian_orthonormalize(&h).unwrap();
            let k = gf(4);
            let expected: Vec<Vec<FieldElement>> = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| if i == j { k.one() } else { k.zero() })
                        .collect()
                })
                .collect();
            assert_eq!(basis, expected);
        }
    }

    #[test]
    fn orthonormalize_dense_forms_over_gf4_and_gf9() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for q in [4u64, 9] {
            let k = gf(q);
            for dim in [2usize, 3, 4] {
                for _ in 0..10 {
                    // m·mᴴ is Hermitian; retry until nondegenerate.
                    let gram = loop {
                        let m: linalg::Matrix = (0..dim)
                            .map(|_| {
                                (0..dim)
                                    .map(|_| k.element_from_index(rng.gen_range(0..q)))
                                    .collect()
                            })
                            .collect();
                        let mh: linalg::Matrix = (0..dim)
                            .map(|r| (0..dim).map(|c| k.frobenius(&m[c][r])).collect())
                            .collect();
                        let g = linalg::mat_mul(&k, &m, &mh);
                        if !linalg::determinant(&k, &g).is_zero() {
                            break g;
                        }
                    };
                    let h = HermitianForm::new(k, gram).unwrap();
                    let basis = hermitian_orthonormalize(&h).unwrap();
                    assert_eq!(h.gram_of(&basis), linalg::identity(&k, dim));
                }
            }
        }
    }
}

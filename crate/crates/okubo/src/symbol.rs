//! Symbol algebras with a primitive cube root of unity: the degree-3
//! algebra generated by `x, y` with `x³ = α`, `y³ = β`, `yx = ωxy`,
//! realized by structure constants on the monomial basis `x^i y^j`.
//!
//! On the trace-zero part the twisted star product and the quadratic form
//! `sr` make an eight-dimensional symmetric composition algebra. When ω
//! lies in the base field F this trace-zero part is itself a copy of
//! `O_{α,β}`; when ω generates a quadratic extension K = F[ω], the
//! second-kind involution τ (conjugate-semilinear, fixing the generators)
//! carves out the τ-skew F-subspace, which the scaled monomials
//! `w_{i,j} = ω^{−ij}/(ω−ω²)·x^i y^j` span, and that subspace is a copy of
//! `O_{α,β}` over F. [`symbol_algebra_skew`] builds either model and
//! verifies the identification down to every structure constant.

use crate::algebra::{structure_product, BasisIndex};
use crate::field::{FieldDescriptor, FieldElement, FieldError, FieldKind};
use crate::matrix::MatrixError;

/// The symbol algebra `(α,β)_{K,ω}` on the monomial basis
/// `x^i y^j`, `0 ≤ i,j ≤ 2`, stored at index `3i+j`.
#[derive(Debug, Clone)]
pub struct SymbolAlgebra {
    field: FieldDescriptor,
    omega: FieldElement,
    alpha: FieldElement,
    beta: FieldElement,
}

/// An element `Σ c_{ij}·x^i y^j` of a symbol algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolElement {
    coeffs: [FieldElement; 9],
}

impl SymbolElement {
    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &FieldElement {
        &self.coeffs[3 * i + j]
    }

    pub fn coeffs(&self) -> &[FieldElement; 9] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }
}

impl SymbolAlgebra {
    /// Builds `(α,β)_{K,ω}` over `k`; requires ω a primitive cube root of
    /// unity in `k` and α, β nonzero.
    pub fn new(
        k: FieldDescriptor,
        omega: FieldElement,
        alpha: FieldElement,
        beta: FieldElement,
    ) -> Result<SymbolAlgebra, MatrixError> {
        if omega.field() != &k || alpha.field() != &k || beta.field() != &k {
            return Err(FieldError::MixedFields.into());
        }
        if omega.is_one() || !k.pow(&omega, 3).is_one() {
            return Err(MatrixError::BadExtension(format!(
                "{omega} is not a primitive cube root of unity in {k}"
            )));
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(MatrixError::DegenerateForm);
        }
        Ok(SymbolAlgebra {
            field: k,
            omega,
            alpha,
            beta,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn zero(&self) -> SymbolElement {
        SymbolElement {
            coeffs: std::array::from_fn(|_| self.field.zero()),
        }
    }

    pub fn one(&self) -> SymbolElement {
        self.monomial(0, 0, &self.field.one())
    }

    /// The element `c·x^i y^j`.
    pub fn monomial(&self, i: usize, j: usize, c: &FieldElement) -> SymbolElement {
        let mut e = self.zero();
        e.coeffs[3 * i + j] = c.clone();
        e
    }

    pub fn add(&self, a: &SymbolElement, b: &SymbolElement) -> SymbolElement {
        SymbolElement {
            coeffs: std::array::from_fn(|k| self.field.add(&a.coeffs[k], &b.coeffs[k])),
        }
    }

    pub fn sub(&self, a: &SymbolElement, b: &SymbolElement) -> SymbolElement {
        SymbolElement {
            coeffs: std::array::from_fn(|k| self.field.sub(&a.coeffs[k], &b.coeffs[k])),
        }
    }

    pub fn neg(&self, a: &SymbolElement) -> SymbolElement {
        SymbolElement {
            coeffs: std::array::from_fn(|k| self.field.neg(&a.coeffs[k])),
        }
    }

    pub fn scale(&self, c: &FieldElement, a: &SymbolElement) -> SymbolElement {
        SymbolElement {
            coeffs: std::array::from_fn(|k| self.field.mul(c, &a.coeffs[k])),
        }
    }

    /// Product of two monomials:
    /// `(x^i y^j)(x^{i'} y^{j'}) = ω^{j·i'}·α^⌊(i+i')/3⌋·β^⌊(j+j')/3⌋
    ///  ·x^{(i+i') mod 3} y^{(j+j') mod 3}`,
    /// from moving `y^j` across `x^{i'}` with `yx = ωxy` and reducing
    /// cubes by `x³ = α`, `y³ = β`.
    fn monomial_product(
        &self,
        i: usize,
        j: usize,
        ip: usize,
        jp: usize,
    ) -> (FieldElement, usize, usize) {
        let f = &self.field;
        let mut c = f.pow(&self.omega, ((j * ip) % 3) as u64);
        if i + ip >= 3 {
            c = f.mul(&c, &self.alpha);
        }
        if j + jp >= 3 {
            c = f.mul(&c, &self.beta);
        }
        (c, (i + ip) % 3, (j + jp) % 3)
    }

    /// The associative product.
    pub fn mul(&self, a: &SymbolElement, b: &SymbolElement) -> SymbolElement {
        let f = &self.field;
        let mut out = self.zero();
        for i in 0..3 {
            for j in 0..3 {
                let ca = a.coeff(i, j);
                if ca.is_zero() {
                    continue;
                }
                for ip in 0..3 {
                    for jp in 0..3 {
                        let cb = b.coeff(ip, jp);
                        if cb.is_zero() {
                            continue;
                        }
                        let (c, ti, tj) = self.monomial_product(i, j, ip, jp);
                        let slot = &mut out.coeffs[3 * ti + tj];
                        *slot = f.add(slot, &f.mul(&f.mul(ca, cb), &c));
                    }
                }
            }
        }
        out
    }

    /// The reduced trace: `3·c₀₀` (every non-identity monomial cubes to a
    /// scalar, so its characteristic polynomial is `X³ − const`).
    pub fn trace(&self, a: &SymbolElement) -> FieldElement {
        self.field
            .mul(&self.field.from_integer(3), a.coeff(0, 0))
    }

    /// Polar form of `sr`: `tr(a)tr(b) − tr(ab)`.
    pub fn sr_polar(&self, a: &SymbolElement, b: &SymbolElement) -> FieldElement {
        let f = &self.field;
        f.sub(
            &f.mul(&self.trace(a), &self.trace(b)),
            &self.trace(&self.mul(a, b)),
        )
    }

    /// The quadratic form `sr` (degree-1 coefficient of the reduced
    /// characteristic polynomial), assembled characteristic-free from its
    /// values on the monomial basis — `sr(x^i y^j) = 0` off the identity,
    /// `sr(1) = 3` — plus the polar form on distinct basis pairs.
    pub fn sr(&self, a: &SymbolElement) -> FieldElement {
        let f = &self.field;
        let c0 = a.coeff(0, 0);
        let mut acc = f.mul(&f.from_integer(3), &f.mul(c0, c0));
        for s in 0..9 {
            for t in (s + 1)..9 {
                let (cs, ct) = (&a.coeffs[s], &a.coeffs[t]);
                if cs.is_zero() || ct.is_zero() {
                    continue;
                }
                let ms = self.monomial(s / 3, s % 3, &f.one());
                let mt = self.monomial(t / 3, t % 3, &f.one());
                let pair = self.sr_polar(&ms, &mt);
                acc = f.add(&acc, &f.mul(&f.mul(cs, ct), &pair));
            }
        }
        acc
    }

    /// The twisted product `a*b = ω·ab − ω²·ba − ((ω−ω²)/3)·tr(ab)·1` on
    /// trace-zero elements; requires characteristic ≠ 3.
    pub fn star(&self, a: &SymbolElement, b: &SymbolElement) -> Result<SymbolElement, MatrixError> {
        let f = &self.field;
        if f.characteristic() == 3 {
            return Err(MatrixError::WrongCharacteristic { found: 3 });
        }
        if !self.trace(a).is_zero() || !self.trace(b).is_zero() {
            return Err(MatrixError::NotTraceZero);
        }
        let omega2 = f.mul(&self.omega, &self.omega);
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        let skew = self.sub(&self.scale(&self.omega, &ab), &self.scale(&omega2, &ba));
        let third = f
            .inv(&f.from_integer(3))
            .expect("3 is invertible away from characteristic 3");
        let coeff = f.mul(
            &f.mul(&f.sub(&self.omega, &omega2), &third),
            &self.trace(&ab),
        );
        Ok(self.sub(&skew, &self.monomial(0, 0, &coeff)))
    }

    /// The second-kind involution fixing the generators:
    /// `τ(λ·x^i y^j) = conj(λ)·ω^{ij}·x^i y^j`, with conj the Frobenius of
    /// the quadratic extension (finite fields only).
    pub fn tau(&self, a: &SymbolElement) -> SymbolElement {
        let f = &self.field;
        SymbolElement {
            coeffs: std::array::from_fn(|k| {
                let (i, j) = (k / 3, k % 3);
                let tw = f.pow(&self.omega, ((i * j) % 3) as u64);
                f.mul(&f.frobenius(&a.coeffs[k]), &tw)
            }),
        }
    }
}

/// The trace-zero (or τ-skew trace-zero) part of a symbol algebra,
/// identified basis-by-basis with `O_{α,β}` over the base field F.
#[derive(Debug, Clone)]
pub struct SkewModel {
    base: FieldDescriptor,
    algebra: SymbolAlgebra,
    basis: [SymbolElement; 8],
    /// Whether the model lives inside a proper quadratic extension
    /// (the τ-skew case) rather than in the base field itself.
    conjugated: bool,
}

impl SkewModel {
    pub fn base_field(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn algebra(&self) -> &SymbolAlgebra {
        &self.algebra
    }

    /// The eight subspace generators `w_{i,j} = ω^{−ij}/(ω−ω²)·x^i y^j`
    /// in basis-index order.
    pub fn basis(&self) -> &[SymbolElement; 8] {
        &self.basis
    }

    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }
}

fn embed(f: &FieldDescriptor, k: &FieldDescriptor, x: &FieldElement) -> FieldElement {
    let c = (0..f.characteristic())
        .find(|&c| f.from_coeffs(&[c]) == *x)
        .expect("prime-field elements have integer representatives");
    k.from_coeffs(&[c])
}

/// Builds the symbol-algebra model of `O_{α,β}` over F and verifies it.
///
/// Two cases: `k == f` (ω already lies in F; the trace-zero part is the
/// model) and `k` a quadratic extension of the prime field F obtained by
/// adjoining ω (the τ-skew part of the trace-zero subspace is the model).
/// In both, the scaled monomials `w_{i,j}` are checked to be τ-skew (in
/// the extension case), isotropic of trace zero, to multiply under the
/// star product exactly by the structure constants of `O_{α,β}` over F,
/// and to pair exactly by its norm's polarization.
pub fn symbol_algebra_skew(
    f: &FieldDescriptor,
    k: &FieldDescriptor,
    omega: &FieldElement,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<SkewModel, MatrixError> {
    if f.characteristic() == 3 {
        return Err(MatrixError::WrongCharacteristic { found: 3 });
    }
    if !f.is_finite() {
        return Err(MatrixError::BadExtension(
            "the symbol model is implemented for finite fields".into(),
        ));
    }
    if alpha.field() != f || beta.field() != f {
        return Err(FieldError::MixedFields.into());
    }
    let conjugated = k != f;
    if conjugated
        && (k.kind() != FieldKind::Extension
            || k.degree() != 2
            || f.kind() != FieldKind::Prime
            || k.characteristic() != f.characteristic())
        {
            return Err(MatrixError::BadExtension(format!(
                "{k} is not a quadratic extension of {f}"
            )));
        }
    if omega.field() != k {
        return Err(FieldError::MixedFields.into());
    }
    let (alpha_k, beta_k) = if conjugated {
        (embed(f, k, alpha), embed(f, k, beta))
    } else {
        (alpha.clone(), beta.clone())
    };
    let alg = SymbolAlgebra::new(*k, omega.clone(), alpha_k, beta_k)?;
    if conjugated {
        // The conjugation must send ω to ω², so that τ is an involution.
        let omega2 = k.mul(omega, omega);
        if k.frobenius(omega) != omega2 {
            return Err(MatrixError::BadExtension(
                "the conjugation of the extension does not invert ω".into(),
            ));
        }
    }

    // w_{i,j} = ω^{−ij}/(ω−ω²)·x^i y^j.
    let omega2 = k.mul(omega, omega);
    let scale_inv = k
        .inv(&k.sub(omega, &omega2))
        .expect("ω ≠ ω² for a primitive cube root");
    let basis: [SymbolElement; 8] = std::array::from_fn(|pos| {
        let b = BasisIndex::ALL[pos];
        let (i, j) = (b.i() as usize, b.j() as usize);
        let tw = k.pow(omega, ((3 - (i * j) % 3) % 3) as u64);
        alg.monomial(i, j, &k.mul(&tw, &scale_inv))
    });

    for (pos, w) in basis.iter().enumerate() {
        let name = BasisIndex::ALL[pos];
        if !alg.trace(w).is_zero() {
            return Err(MatrixError::StructureMismatch(format!(
                "basis element {name} has nonzero trace"
            )));
        }
        if !alg.sr(w).is_zero() {
            return Err(MatrixError::StructureMismatch(format!(
                "basis element {name} is not isotropic"
            )));
        }
        if conjugated && alg.tau(w) != alg.neg(w) {
            return Err(MatrixError::StructureMismatch(format!(
                "basis element {name} is not τ-skew"
            )));
        }
    }

    for (pa, a) in BasisIndex::ALL.iter().enumerate() {
        for (pb, b) in BasisIndex::ALL.iter().enumerate() {
            let prod = alg.star(&basis[pa], &basis[pb])?;
            let term = structure_product(*a, *b);
            let mut expected = match term.target {
                None => alg.zero(),
                Some(t) => {
                    let w = basis[t.position()].clone();
                    if term.sign < 0 {
                        alg.neg(&w)
                    } else {
                        w
                    }
                }
            };
            if term.alpha_carry {
                expected = alg.scale(&alg.alpha.clone(), &expected);
            }
            if term.beta_carry {
                expected = alg.scale(&alg.beta.clone(), &expected);
            }
            if prod != expected {
                return Err(MatrixError::StructureMismatch(format!(
                    "product {a} * {b} deviates from the structure constants"
                )));
            }
            // Norm pairing: α^u β^v when the indices cancel, else zero.
            let sums_to_zero = (a.i() + b.i()) % 3 == 0 && (a.j() + b.j()) % 3 == 0;
            let expected_pairing = if sums_to_zero {
                let mut v = k.one();
                if a.i() != 0 {
                    v = k.mul(&v, &alg.alpha);
                }
                if a.j() != 0 {
                    v = k.mul(&v, &alg.beta);
                }
                v
            } else {
                k.zero()
            };
            if alg.sr_polar(&basis[pa], &basis[pb]) != expected_pairing {
                return Err(MatrixError::StructureMismatch(format!(
                    "pairing of {a} and {b} deviates"
                )));
            }
        }
    }

    Ok(SkewModel {
        base: *f,
        algebra: alg,
        basis,
        conjugated,
    })
}

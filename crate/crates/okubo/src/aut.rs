//! Automorphism groups by explicit enumeration: the grading automorphisms
//! Aut(Γ_{α,β}) with their component-fixing stabilizer and Weyl quotient,
//! homomorphic sections splitting that quotient, the full automorphism
//! group of the split algebra over GF(2), the unitary groups over GF(4)
//! with the conjugation action on the matrix model, and isomorphism
//! search between algebras over one finite field.
//!
//! Everything rests on one extension engine: an algebra map is pinned
//! down by the images of `z~_{1,0}` and `z~_{0,1}`, because the remaining
//! six basis vectors are fixed words in those two (see
//! [`iso_from_pair`]); a candidate image pair is accepted only after all
//! 64 basis products are checked to transform correctly.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{structure_product, AlgebraElement, AlgebraError, BasisIndex, OkuboAlgebra};
use crate::field::{FieldDescriptor, FieldElement, FieldError};
use crate::grading::{self, GradingGroupElement};
use crate::group::{FiniteGroup, GroupError, GroupHom, Mat2F3};
use crate::linalg;
use crate::matrix::{pauli_basis, Mat3, MatrixError, Sl3Model};

/// Largest field order accepted by the candidate enumerations.
pub const MAX_AUT_FIELD: u64 = 9;

/// Largest field order accepted by the element-level isomorphism search.
pub const MAX_ISO_FIELD: u64 = 7;

/// Errors from automorphism enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("field order {0} is too large for this enumeration")]
    FieldTooLarge(u64),
    #[error("no section is defined for cube-class image rank {0}")]
    WrongRank(u8),
    #[error("internal cross-check failed: {0}")]
    CheckFailed(String),
}

/// A linear map between (or within) Okubo algebras over one field, stored
/// as the eight images of the fixed basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraMap {
    field: FieldDescriptor,
    cols: Vec<AlgebraElement>,
}

impl AlgebraMap {
    pub fn from_images(field: FieldDescriptor, cols: Vec<AlgebraElement>) -> AlgebraMap {
        assert_eq!(cols.len(), 8, "a map needs all eight basis images");
        AlgebraMap { field, cols }
    }

    /// The identity map on the basis of `a`.
    pub fn identity(a: &OkuboAlgebra) -> AlgebraMap {
        AlgebraMap {
            field: *a.field(),
            cols: BasisIndex::ALL.iter().map(|b| a.basis_element(*b)).collect(),
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Image of the basis vector at the given enumeration position.
    pub fn column(&self, pos: usize) -> &AlgebraElement {
        &self.cols[pos]
    }

    /// Image of an arbitrary element (linear extension). The algebra is
    /// only used for its arithmetic; any algebra over the same field works.
    pub fn apply(&self, a: &OkuboAlgebra, v: &AlgebraElement) -> AlgebraElement {
        let mut acc = a.zero_element();
        for (pos, c) in v.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = a.add_elements(&acc, &a.scale(c, &self.cols[pos]));
            }
        }
        acc
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, a: &OkuboAlgebra, other: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            field: self.field,
            cols: other.cols.iter().map(|col| self.apply(a, col)).collect(),
        }
    }

    /// The 8×8 coefficient matrix, columns = basis images.
    pub fn to_matrix(&self) -> linalg::Matrix {
        (0..8)
            .map(|r| (0..8).map(|c| self.cols[c].coeffs()[r].clone()).collect())
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        linalg::rank(&self.field, &self.to_matrix()) == 8
    }

    /// The inverse map, if the matrix is invertible.
    pub fn inverse(&self, a: &OkuboAlgebra) -> Option<AlgebraMap> {
        let inv = linalg::invert(&self.field, &self.to_matrix())?;
        let cols = (0..8)
            .map(|c| {
                let coeffs: [FieldElement; 8] = std::array::from_fn(|r| inv[r][c].clone());
                a.element_from_coeffs(coeffs)
                    .expect("inverse entries are field members")
            })
            .collect();
        Some(AlgebraMap {
            field: self.field,
            cols,
        })
    }

    /// Whether every basis vector maps into its own line.
    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(pos, col)| {
            col.coeffs()
                .iter()
                .enumerate()
                .all(|(r, c)| r == pos || c.is_zero())
        })
    }

    /// The induced map on grading degrees, when each basis vector maps
    /// into a single basis line and the induced permutation is linear on
    /// (ℤ/3)²; the matrix acts on degree columns.
    pub fn degree_map(&self) -> Option<Mat2F3> {
        let mut target = [0usize; 8];
        for (pos, col) in self.cols.iter().enumerate() {
            let mut support = col
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero());
            let (row, _) = support.next()?;
            if support.next().is_some() {
                return None;
            }
            target[pos] = row;
        }
        // Read the matrix off the images of the generators (1,0), (0,1).
        let gx = BasisIndex::ALL[target[0]];
        let gy = BasisIndex::ALL[target[2]];
        let m: Mat2F3 = [gx.i(), gy.i(), gx.j(), gy.j()];
        for (pos, &t) in target.iter().enumerate() {
            let h = GradingGroupElement::from_basis_index(BasisIndex::ALL[pos]);
            if h.acted_by(&m).basis_index() != Some(BasisIndex::ALL[t]) {
                return None;
            }
        }
        Some(m)
    }
}

/// Extends a candidate generator pair to a full map `source → target` and
/// verifies it, returning `None` when the pair does not define an
/// isomorphism.
///
/// The map sends `z~_{1,0} ↦ x` and `z~_{0,1} ↦ y`; the other six basis
/// images are forced by the frozen word list
/// `z~_{2,0} = z~_{1,0}²`, `z~_{0,2} = z~_{0,1}²`,
/// `z~_{1,1} = −(z~_{1,0}·z~_{0,1})`, `z~_{2,2} = z~_{1,1}²`,
/// `z~_{1,2} = −(z~_{1,1}·z~_{0,1})`, `z~_{2,1} = −(z~_{1,0}·z~_{1,1})`
/// (all products read off the multiplication table, none carrying α or
/// β). Acceptance requires the map to transform all 64 basis products of
/// `source` to the corresponding products in `target`, and to be
/// invertible.
pub fn iso_from_pair(
    source: &OkuboAlgebra,
    target: &OkuboAlgebra,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Option<AlgebraMap> {
    assert_eq!(source.field(), target.field(), "maps stay over one field");
    let t = target;
    let w10 = x.clone();
    let w01 = y.clone();
    let w20 = t.mul_unchecked(&w10, &w10);
    let w02 = t.mul_unchecked(&w01, &w01);
    let w11 = t.neg_element(&t.mul_unchecked(&w10, &w01));
    let w22 = t.mul_unchecked(&w11, &w11);
    let w12 = t.neg_element(&t.mul_unchecked(&w11, &w01));
    let w21 = t.neg_element(&t.mul_unchecked(&w10, &w11));
    let cols = vec![w10, w20, w01, w02, w11, w22, w12, w21];

    for (pa, a) in BasisIndex::ALL.iter().enumerate() {
        for (pb, b) in BasisIndex::ALL.iter().enumerate() {
            let term = structure_product(*a, *b);
            let lhs = match term.target {
                None => t.zero_element(),
                Some(tt) => {
                    let mut v = cols[tt.position()].clone();
                    if term.sign < 0 {
                        v = t.neg_element(&v);
                    }
                    if term.alpha_carry {
                        v = t.scale(source.alpha(), &v);
                    }
                    if term.beta_carry {
                        v = t.scale(source.beta(), &v);
                    }
                    v
                }
            };
            if t.mul_unchecked(&cols[pa], &cols[pb]) != lhs {
                return None;
            }
        }
    }
    let map = AlgebraMap {
        field: *source.field(),
        cols,
    };
    if !map.is_invertible() {
        return None;
    }
    Some(map)
}

fn rational_power(f: &FieldDescriptor, x: &FieldElement, e: i32) -> FieldElement {
    let p = f.pow(x, e.unsigned_abs() as u64);
    if e < 0 {
        f.inv(&p).expect("powers of nonzero parameters are nonzero")
    } else {
        p
    }
}

/// The group of automorphisms permuting the homogeneous components of the
/// canonical grading, by candidate enumeration.
///
/// Every such automorphism sends `z~_{1,0} ↦ λ·z~_a` and
/// `z~_{0,1} ↦ μ·z~_b`. Over a finite field all scalar pairs are tried;
/// over ℚ the scalars are pinned by λ³ = α^{1−i}β^{−j} and
/// μ³ = α^{−i'}β^{1−j'} (from preservation of the norm pairing) and
/// extracted by exact rational cube roots. Each candidate is accepted
/// only after full verification by [`iso_from_pair`].
pub fn grading_automorphisms(a: &OkuboAlgebra) -> Result<FiniteGroup<AlgebraMap>, AutError> {
    let f = a.field();
    let mut maps: Vec<AlgebraMap> = Vec::new();
    match f.order() {
        Some(q) => {
            if q > MAX_AUT_FIELD {
                return Err(AutError::FieldTooLarge(q));
            }
            let nonzero: Vec<FieldElement> = f.elements().skip(1).collect();
            for ba in BasisIndex::ALL {
                for bb in BasisIndex::ALL {
                    for lam in &nonzero {
                        let x = a.scale(lam, &a.basis_element(ba));
                        // Necessary: the pairing n(x, x*x) must stay α.
                        if a.polar(&x, &a.mul_unchecked(&x, &x)) != *a.alpha() {
                            continue;
                        }
                        for mu in &nonzero {
                            let y = a.scale(mu, &a.basis_element(bb));
                            if a.polar(&y, &a.mul_unchecked(&y, &y)) != *a.beta() {
                                continue;
                            }
                            if let Some(m) = iso_from_pair(a, a, &x, &y) {
                                maps.push(m);
                            }
                        }
                    }
                }
            }
        }
        None => {
            for ba in BasisIndex::ALL {
                for bb in BasisIndex::ALL {
                    let (i, j) = (ba.i() as i32, ba.j() as i32);
                    let (ip, jp) = (bb.i() as i32, bb.j() as i32);
                    let lam_cube = f.mul(
                        &rational_power(f, a.alpha(), 1 - i),
                        &rational_power(f, a.beta(), -j),
                    );
                    let mu_cube = f.mul(
                        &rational_power(f, a.alpha(), -ip),
                        &rational_power(f, a.beta(), 1 - jp),
                    );
                    let (Some(lam), Some(mu)) =
                        (f.cube_root(&lam_cube), f.cube_root(&mu_cube))
                    else {
                        continue;
                    };
                    let x = a.scale(&lam, &a.basis_element(ba));
                    let y = a.scale(&mu, &a.basis_element(bb));
                    if let Some(m) = iso_from_pair(a, a, &x, &y) {
                        maps.push(m);
                    }
                }
            }
        }
    }
    let alg = a.clone();
    FiniteGroup::from_elements(&maps, move |m1, m2| m1.compose(&alg, m2)).map_err(AutError::from)
}

/// The component-fixing subgroup of a grading automorphism group, with its
/// element indices in the parent.
///
/// The subgroup is re-derived independently as the set of character maps
/// `z~_{(i,j)} ↦ χ(i,j)·z~_{(i,j)}` for characters χ of (ℤ/3)² valued in
/// the cube roots of unity; any disagreement with the diagonal filter is
/// an error.
pub fn stabilizer_subgroup(
    a: &OkuboAlgebra,
    aut: &FiniteGroup<AlgebraMap>,
) -> Result<(FiniteGroup<AlgebraMap>, Vec<usize>), AutError> {
    let indices: Vec<usize> = (0..aut.order())
        .filter(|&i| aut.element(i).is_diagonal())
        .collect();

    let f = a.field();
    let mu3: Vec<FieldElement> = match f.order() {
        Some(_) => f
            .elements()
            .filter(|x| !x.is_zero() && f.pow(x, 3).is_one())
            .collect(),
        None => vec![f.one()],
    };
    let mut expected: BTreeSet<AlgebraMap> = BTreeSet::new();
    for la in &mu3 {
        for lb in &mu3 {
            let cols = BasisIndex::ALL
                .iter()
                .map(|b| {
                    let chi = f.mul(
                        &f.pow(la, b.i() as u64),
                        &f.pow(lb, b.j() as u64),
                    );
                    a.scale(&chi, &a.basis_element(*b))
                })
                .collect();
            expected.insert(AlgebraMap::from_images(*f, cols));
        }
    }
    let found: BTreeSet<AlgebraMap> = indices
        .iter()
        .map(|&i| aut.element(i).clone())
        .collect();
    if found != expected {
        return Err(AutError::CheckFailed(format!(
            "diagonal automorphisms ({}) differ from the character maps ({})",
            found.len(),
            expected.len()
        )));
    }
    let sub = aut.subgroup(&indices)?;
    Ok((sub, indices))
}

/// The Weyl group as the quotient of the automorphism group by the
/// component-fixing stabilizer.
pub fn weyl_from_aut(
    aut: &FiniteGroup<AlgebraMap>,
    stab_indices: &[usize],
) -> Result<FiniteGroup<Vec<u16>>, AutError> {
    aut.quotient(stab_indices).map_err(AutError::from)
}

/// A homomorphic section of the Weyl quotient: the Weyl group in its
/// degree-matrix form together with an embedding into the automorphism
/// group that projects back to the identity.
#[derive(Debug, Clone)]
pub struct SplitSection {
    pub weyl: FiniteGroup<Mat2F3>,
    pub hom: GroupHom,
}

/// Builds a section of `Aut(Γ) → W(Γ)`.
///
/// Image rank 0 (both parameters are cubes): conjugate the basis
/// permutation maps `z~_g ↦ z~_{f(g)}` of the split presentation by the
/// diagonal rescaling built from cube roots of α and β. Image rank 1: the
/// order-3 generator is the automorphism fixing a suitable homogeneous
/// `x` and sending `y ↦ −x·y`, obtained by composing two generator-pair
/// extensions. Image rank 2 has a trivial Weyl group and no section is
/// defined (`WrongRank`).
pub fn splitting_section(
    a: &OkuboAlgebra,
    aut: &FiniteGroup<AlgebraMap>,
) -> Result<SplitSection, AutError> {
    let f = a.field();
    let phi = grading::phi_gamma(a)?;
    let rank = grading::phi_image_rank(&phi);
    let weyl = grading::weyl_group_via_formula(a)?;

    let section_index = |m: &AlgebraMap| -> Result<u16, AutError> {
        aut.index_of(m)
            .map(|i| i as u16)
            .ok_or_else(|| AutError::CheckFailed("section image missing from the group".into()))
    };

    let map: Vec<u16> = match rank {
        0 => {
            let r = f
                .cube_root(a.alpha())
                .ok_or_else(|| AutError::CheckFailed("rank 0 forces α to be a cube".into()))?;
            let s = f
                .cube_root(a.beta())
                .ok_or_else(|| AutError::CheckFailed("rank 0 forces β to be a cube".into()))?;
            let mut map = Vec::with_capacity(weyl.order());
            for w in weyl.elements() {
                let cols = BasisIndex::ALL
                    .iter()
                    .map(|b| {
                        let h = GradingGroupElement::from_basis_index(*b);
                        let t = h
                            .acted_by(w)
                            .basis_index()
                            .expect("degree maps are invertible");
                        // Rescale so the permutation respects the carries:
                        // the basis z~_{(i,j)}·r^{-i}s^{-j} has split
                        // structure constants, and on it the section is
                        // the plain permutation, so z~_g picks up the
                        // scalar r^{i-i''}s^{j-j''}.
                        let num = f.mul(
                            &f.pow(&r, b.i() as u64),
                            &f.pow(&s, b.j() as u64),
                        );
                        let den = f.mul(
                            &f.pow(&r, t.i() as u64),
                            &f.pow(&s, t.j() as u64),
                        );
                        let scalar = f.mul(&num, &f.inv(&den).expect("cube roots are nonzero"));
                        a.scale(&scalar, &a.basis_element(t))
                    })
                    .collect();
                map.push(section_index(&AlgebraMap::from_images(*f, cols))?);
            }
            map
        }
        1 => {
            let b_pos = BasisIndex::ALL
                .iter()
                .position(|b| {
                    !phi.class(GradingGroupElement::from_basis_index(*b))
                        .is_identity()
                })
                .expect("rank 1 has a degree with nontrivial class");
            let b_idx = BasisIndex::ALL[b_pos];
            let a_idx = BasisIndex::ALL
                .iter()
                .copied()
                .find(|c| {
                    let trivial = phi
                        .class(GradingGroupElement::from_basis_index(*c))
                        .is_identity();
                    let delta =
                        (c.i() as i32 * b_idx.j() as i32 - c.j() as i32 * b_idx.i() as i32)
                            .rem_euclid(3);
                    trivial && delta == 1
                })
                .expect("the kernel line contains a degree not aligned with b");
            // λ normalizes the pairing value of the kernel-line generator
            // to 1 so the Lemma applies with parameters (1, value at b).
            let val_a = f.mul(
                &f.pow(a.alpha(), a_idx.i() as u64),
                &f.pow(a.beta(), a_idx.j() as u64),
            );
            let lam = f
                .cube_root(&f.inv(&val_a).expect("parameters are nonzero"))
                .ok_or_else(|| AutError::CheckFailed("kernel degree value must be a cube".into()))?;
            let x = a.scale(&lam, &a.basis_element(a_idx));
            let y = a.basis_element(b_idx);
            let val_b = f.mul(
                &f.pow(a.alpha(), b_idx.i() as u64),
                &f.pow(a.beta(), b_idx.j() as u64),
            );
            let normal_form = OkuboAlgebra::new(*f, f.one(), val_b)?;
            let m1 = iso_from_pair(&normal_form, a, &x, &y)
                .ok_or_else(|| AutError::CheckFailed("base pair fails the extension".into()))?;
            let y2 = a.neg_element(&a.mul_unchecked(&x, &y));
            let m2 = iso_from_pair(&normal_form, a, &x, &y2)
                .ok_or_else(|| AutError::CheckFailed("twisted pair fails the extension".into()))?;
            let m1_inv = m1
                .inverse(a)
                .expect("verified extensions are invertible");
            let varphi = m2.compose(a, &m1_inv);
            let gen = varphi
                .degree_map()
                .ok_or_else(|| AutError::CheckFailed("section generator must permute lines".into()))?;
            let varphi2 = varphi.compose(a, &varphi);
            let gen2 = crate::group::mat2_mul(&gen, &gen);
            let ident = AlgebraMap::identity(a);
            let mut map = Vec::with_capacity(weyl.order());
            for w in weyl.elements() {
                let m = if *w == [1, 0, 0, 1] {
                    &ident
                } else if *w == gen {
                    &varphi
                } else if *w == gen2 {
                    &varphi2
                } else {
                    return Err(AutError::CheckFailed(
                        "order-3 section does not cover the Weyl group".into(),
                    ));
                };
                map.push(section_index(m)?);
            }
            map
        }
        r => return Err(AutError::WrongRank(r)),
    };

    let hom = GroupHom::new(&weyl, aut, map)?;
    // Projection property: each section image induces exactly its Weyl
    // element on degrees.
    for (wi, w) in weyl.elements().iter().enumerate() {
        let m = aut.element(hom.apply(wi));
        if m.degree_map().as_ref() != Some(w) {
            return Err(AutError::CheckFailed(
                "section image does not project back to its Weyl element".into(),
            ));
        }
    }
    Ok(SplitSection { weyl, hom })
}

/// The full automorphism group of `O_{1,1}` over GF(2), by exhausting
/// generator pairs.
///
/// A pair (x, y) of the 256 elements qualifies when `n(x) = n(y) = 0`,
/// the pairings `n(x, x·x)` and `n(y, y·y)` are both 1, the planes
/// spanned by `{x, x·x}` and `{y, y·y}` pair to zero, and `y·x = 0`; each
/// qualifying pair extends to exactly one automorphism.
pub fn full_aut_f2() -> Result<FiniteGroup<AlgebraMap>, AutError> {
    let f = FieldDescriptor::gf(2)?;
    let a = OkuboAlgebra::with_integers(f, 1, 1)?;
    let one = f.one();

    struct Candidate {
        v: AlgebraElement,
        sq: AlgebraElement,
    }
    let mut cands: Vec<Candidate> = Vec::new();
    for v in a.elements() {
        if !a.norm(&v).is_zero() {
            continue;
        }
        let sq = a.mul_unchecked(&v, &v);
        if a.polar(&v, &sq) == one {
            cands.push(Candidate { v, sq });
        }
    }

    let mut maps: Vec<AlgebraMap> = Vec::new();
    for x in &cands {
        for y in &cands {
            if !a.polar(&x.v, &y.v).is_zero()
                || !a.polar(&x.v, &y.sq).is_zero()
                || !a.polar(&x.sq, &y.v).is_zero()
                || !a.polar(&x.sq, &y.sq).is_zero()
            {
                continue;
            }
            if !a.mul_unchecked(&y.v, &x.v).is_zero() {
                continue;
            }
            let m = iso_from_pair(&a, &a, &x.v, &y.v).ok_or_else(|| {
                AutError::CheckFailed("a qualifying pair failed to extend".into())
            })?;
            maps.push(m);
        }
    }
    let alg = a.clone();
    FiniteGroup::from_elements(&maps, move |m1, m2| m1.compose(&alg, m2)).map_err(AutError::from)
}

/// The unitary groups over GF(4) and their projective quotients, with the
/// quotient maps.
#[derive(Debug, Clone)]
pub struct UnitaryGroups {
    pub field: FieldDescriptor,
    pub omega: FieldElement,
    /// All 3×3 matrices with a†a = 1 (order 648).
    pub u: FiniteGroup<Mat3>,
    /// The determinant-1 subgroup (order 216).
    pub su: FiniteGroup<Mat3>,
    /// U modulo scalars, as scalar-normalized representatives (order 216).
    pub pu: FiniteGroup<Mat3>,
    /// SU modulo scalars (order 72).
    pub psu: FiniteGroup<Mat3>,
    pub u_to_pu: GroupHom,
    pub su_to_psu: GroupHom,
}

/// Scales a nonzero matrix so its first nonzero row-major entry is 1 (the
/// canonical coset representative modulo scalars, since every scalar in
/// GF(4)^× is a cube root of unity).
pub fn projective_normalize(m: &Mat3) -> Mat3 {
    let f = m.field();
    for r in 0..3 {
        for c in 0..3 {
            let e = m.entry(r, c);
            if !e.is_zero() {
                return m.scale(&f.inv(e).expect("nonzero entry"));
            }
        }
    }
    m.clone()
}

/// Builds U(3,2²) by filtering all 4⁹ matrices over GF(4), then SU, PU,
/// and PSU with the quotient maps.
pub fn unitary_f4() -> Result<UnitaryGroups, AutError> {
    let f = FieldDescriptor::gf(4)?;
    let omega = f
        .primitive_cube_root()
        .expect("GF(4) contains a primitive cube root");
    let ident = Mat3::identity(&f);

    let mut unitaries: Vec<Mat3> = Vec::new();
    for n in 0..4u64.pow(9) {
        let mut rem = n;
        let mut digits = [0u64; 9];
        for d in digits.iter_mut() {
            *d = rem % 4;
            rem /= 4;
        }
        let m = Mat3::from_fn(&f, |r, c| f.element_from_index(digits[3 * r + c]));
        if m.conj_transpose().mul(&m) == ident {
            unitaries.push(m);
        }
    }

    let u = FiniteGroup::from_elements(&unitaries, |x, y| x.mul(y))?;
    let one = f.one();
    let su_elems: Vec<Mat3> = unitaries
        .iter()
        .filter(|m| m.determinant() == one)
        .cloned()
        .collect();
    let su = FiniteGroup::from_elements(&su_elems, |x, y| x.mul(y))?;

    let pu_elems: BTreeSet<Mat3> = unitaries.iter().map(projective_normalize).collect();
    let pu_elems: Vec<Mat3> = pu_elems.into_iter().collect();
    let pu = FiniteGroup::from_elements(&pu_elems, |x, y| projective_normalize(&x.mul(y)))?;
    let psu_elems: BTreeSet<Mat3> = su_elems.iter().map(projective_normalize).collect();
    let psu_elems: Vec<Mat3> = psu_elems.into_iter().collect();
    let psu = FiniteGroup::from_elements(&psu_elems, |x, y| projective_normalize(&x.mul(y)))?;

    let u_map: Vec<u16> = (0..u.order())
        .map(|i| {
            pu.index_of(&projective_normalize(u.element(i)))
                .expect("normalized unitary is a coset representative") as u16
        })
        .collect();
    let u_to_pu = GroupHom::new(&u, &pu, u_map)?;
    let su_map: Vec<u16> = (0..su.order())
        .map(|i| {
            psu.index_of(&projective_normalize(su.element(i)))
                .expect("normalized special unitary is a coset representative")
                as u16
        })
        .collect();
    let su_to_psu = GroupHom::new(&su, &psu, su_map)?;

    Ok(UnitaryGroups {
        field: f,
        omega,
        u,
        su,
        pu,
        psu,
        u_to_pu,
        su_to_psu,
    })
}

/// The conjugation orbit of the diagonal generator under the unitary
/// group, with its stabilizer.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// The orbit {a·x·a⁻¹}, sorted canonically.
    pub orbit: Vec<Mat3>,
    /// Whether the orbit equals the 24 scalar multiples of the basis
    /// matrices z_{i,j} by nonzero field elements.
    pub matches_scaled_basis_lines: bool,
    pub contains_x: bool,
    pub stabilizer_size: usize,
    pub stabilizer_all_diagonal: bool,
}

/// Conjugates the diagonal matrix x = diag(1, ω, ω²) by every unitary
/// matrix; for unitaries, a⁻¹ = a†.
pub fn orbit_of_pauli_x(groups: &UnitaryGroups) -> Result<OrbitReport, AutError> {
    let f = &groups.field;
    let omega = &groups.omega;
    let omega2 = f.mul(omega, omega);
    let x = Mat3::diagonal(f, [f.one(), omega.clone(), omega2]);

    let mut orbit: BTreeSet<Mat3> = BTreeSet::new();
    let mut stab_size = 0usize;
    let mut stab_all_diagonal = true;
    for a in groups.u.elements() {
        let conj = a.mul(&x).mul(&a.conj_transpose());
        if conj == x {
            stab_size += 1;
            let diagonal = (0..3)
                .all(|r| (0..3).all(|c| r == c || a.entry(r, c).is_zero()));
            if !diagonal {
                stab_all_diagonal = false;
            }
        }
        orbit.insert(conj);
    }

    let basis = pauli_basis(f, omega)?;
    let mut expected: BTreeSet<Mat3> = BTreeSet::new();
    for z in &basis {
        for lam in f.elements().skip(1) {
            expected.insert(z.scale(&lam));
        }
    }

    Ok(OrbitReport {
        matches_scaled_basis_lines: orbit == expected,
        contains_x: orbit.contains(&x),
        orbit: orbit.into_iter().collect(),
        stabilizer_size: stab_size,
        stabilizer_all_diagonal: stab_all_diagonal,
    })
}

/// The conjugation action of the projective unitary group transported to
/// the split algebra through the matrix model.
#[derive(Debug, Clone)]
pub struct ConjReport {
    /// The verified homomorphism PU → Aut(Γ_{1,1}) over GF(4).
    pub hom: GroupHom,
    /// How many elements of U act trivially (the scalar matrices).
    pub u_scalar_kernel: usize,
    /// Whether the image is the whole grading automorphism group.
    pub image_is_all_of_aut: bool,
}

fn conjugation_as_map(
    groups: &UnitaryGroups,
    model: &Sl3Model,
    alg: &OkuboAlgebra,
    a: &Mat3,
) -> Result<AlgebraMap, AutError> {
    let adjoint = a.conj_transpose();
    let cols = model
        .basis()
        .iter()
        .map(|z| {
            let conj = a.mul(z).mul(&adjoint);
            let coeffs = model.expand(&conj).ok_or_else(|| {
                AutError::CheckFailed("conjugate left the span of the model basis".into())
            })?;
            alg.element_from_coeffs(coeffs).map_err(AutError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraMap::from_images(groups.field, cols))
}

/// Transports conjugation by each projective unitary to an algebra map
/// and matches the image against the grading automorphism group.
pub fn conj_homomorphism(
    groups: &UnitaryGroups,
    model: &Sl3Model,
    aut: &FiniteGroup<AlgebraMap>,
) -> Result<ConjReport, AutError> {
    let alg = OkuboAlgebra::with_integers(groups.field, 1, 1)?;

    let map: Vec<u16> = (0..groups.pu.order())
        .map(|i| {
            let m = conjugation_as_map(groups, model, &alg, groups.pu.element(i))?;
            aut.index_of(&m)
                .map(|idx| idx as u16)
                .ok_or_else(|| {
                    AutError::CheckFailed(
                        "a unitary conjugation is not a grading automorphism".into(),
                    )
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let hom = GroupHom::new(&groups.pu, aut, map)?;

    let identity = AlgebraMap::identity(&alg);
    let mut scalar_kernel = 0usize;
    for i in 0..groups.u.order() {
        let m = conjugation_as_map(groups, model, &alg, groups.u.element(i))?;
        if m == identity {
            scalar_kernel += 1;
        }
    }

    let image_is_all_of_aut = hom.image_indices().len() == aut.order();
    Ok(ConjReport {
        hom,
        u_scalar_kernel: scalar_kernel,
        image_is_all_of_aut,
    })
}

/// Searches for an isomorphism `a → b` between algebras over one finite
/// field, by the generator-pair engine.
///
/// Returns the identity immediately when the parameters coincide.
/// Otherwise scans x ∈ b with `n(x) = 0` and `n(x, x·x) = α`; for each,
/// y runs over the subspace orthogonal to x and x·x (a linear condition,
/// cutting the search from q⁸ to q⁶) and must satisfy `n(y) = 0`,
/// `n(y, y·y) = β`, orthogonality of the plane pairs, and `y·x = 0`. The
/// first extension passing full verification is returned.
pub fn find_isomorphism(
    a: &OkuboAlgebra,
    b: &OkuboAlgebra,
) -> Result<Option<AlgebraMap>, AutError> {
    if a.field() != b.field() {
        return Err(AutError::Field(FieldError::MixedFields));
    }
    let f = a.field();
    let q = f.order().ok_or(AlgebraError::InfiniteField)?;
    if q > MAX_ISO_FIELD {
        return Err(AutError::FieldTooLarge(q));
    }
    if a.alpha() == b.alpha() && a.beta() == b.beta() {
        return Ok(Some(AlgebraMap::identity(a)));
    }

    for x in b.elements() {
        if x.is_zero() || !b.norm(&x).is_zero() {
            continue;
        }
        let xsq = b.mul_unchecked(&x, &x);
        if b.polar(&x, &xsq) != *a.alpha() {
            continue;
        }
        // y must be orthogonal to both x and x·x: a 6-dimensional space.
        let rows: linalg::Matrix = vec![
            BasisIndex::ALL
                .iter()
                .map(|bi| b.polar(&x, &b.basis_element(*bi)))
                .collect(),
            BasisIndex::ALL
                .iter()
                .map(|bi| b.polar(&xsq, &b.basis_element(*bi)))
                .collect(),
        ];
        let kernel = linalg::kernel_basis(f, &rows);
        let dim = kernel.len();
        let span: Vec<AlgebraElement> = kernel
            .into_iter()
            .map(|coef| {
                let coeffs: [FieldElement; 8] = std::array::from_fn(|r| coef[r].clone());
                b.element_from_coeffs(coeffs)
                    .expect("kernel vectors are field members")
            })
            .collect();
        for n in 1..q.pow(dim as u32) {
            let mut y = b.zero_element();
            let mut rem = n;
            for w in &span {
                let c = f.element_from_index(rem % q);
                rem /= q;
                if !c.is_zero() {
                    y = b.add_elements(&y, &b.scale(&c, w));
                }
            }
            if !b.norm(&y).is_zero() {
                continue;
            }
            let ysq = b.mul_unchecked(&y, &y);
            if b.polar(&y, &ysq) != *a.beta()
                || !b.polar(&x, &ysq).is_zero()
                || !b.polar(&xsq, &ysq).is_zero()
                || !b.mul_unchecked(&y, &x).is_zero()
            {
                continue;
            }
            if let Some(m) = iso_from_pair(a, b, &x, &y) {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

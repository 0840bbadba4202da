//! The eight-dimensional Okubo algebras `O_{α,β}` over an exact field.
//!
//! The algebra has basis `z~_{i,j}` indexed by the nonzero elements of
//! (ℤ/3)², enumerated in the fixed order
//! (1,0), (2,0), (0,1), (0,2), (1,1), (2,2), (1,2), (2,1).
//! Products of basis vectors are governed by [`structure_product`]: each
//! product is zero or `±α^a β^b z~_{target}` with carries a, b ∈ {0, 1}.
//! The sign is kept symbolic in [`StructureTerm`] and only reduced when a
//! term is evaluated in a concrete field (so characteristic 2 collapses the
//! signs as it should).
//!
//! A transcription of the full 8×8 reference table ships in
//! `data/structure_table.txt`; tests gate the closed-form rule against it
//! entry by entry.
//!
//! The norm is the quadratic form with `n(z~_{i,j}) = 0` whose polar pairing
//! is supported exactly on index pairs summing to (0, 0), scaled by the same
//! α/β carries. Together they satisfy the symmetric composition identities
//! `n(x*y) = n(x)n(y)` and `(x*y)*x = x*(y*x) = n(x)·y`, which the
//! [`crate::verify`] module checks wholesale.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::field::{FieldDescriptor, FieldElement, FieldError};
use crate::linalg;

/// Bound on q⁸ for exhaustive element searches (allows q ≤ 9).
pub const MAX_SEARCH_ORDER: u64 = 100_000_000;

/// Errors from algebra construction and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the parameters α and β must be nonzero")]
    ZeroParameter,
    #[error("field order {0} is too large for exhaustive search")]
    FieldTooLarge(u64),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("operation requires characteristic {expected}, found {found}")]
    WrongCharacteristic { expected: u64, found: u64 },
    #[error("element is not a nonzero idempotent")]
    NotIdempotent,
    #[error("restricted form has unexpected rank {0}")]
    UnexpectedRank(usize),
}

/// Index of a basis vector: a nonzero element of (ℤ/3)².
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    i: u8,
    j: u8,
}

impl BasisIndex {
    /// All basis indices in the fixed enumeration order.
    pub const ALL: [BasisIndex; 8] = [
        BasisIndex { i: 1, j: 0 },
        BasisIndex { i: 2, j: 0 },
        BasisIndex { i: 0, j: 1 },
        BasisIndex { i: 0, j: 2 },
        BasisIndex { i: 1, j: 1 },
        BasisIndex { i: 2, j: 2 },
        BasisIndex { i: 1, j: 2 },
        BasisIndex { i: 2, j: 1 },
    ];

    /// Builds an index from residues; `None` for (0, 0).
    pub fn new(i: u8, j: u8) -> Option<BasisIndex> {
        let (i, j) = (i % 3, j % 3);
        if i == 0 && j == 0 {
            None
        } else {
            Some(BasisIndex { i, j })
        }
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    /// Position in the fixed enumeration order.
    pub fn position(&self) -> usize {
        Self::ALL
            .iter()
            .position(|b| b == self)
            .expect("every valid index is enumerated")
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// One structure constant: `z~_a * z~_b = sign · α^acarry · β^bcarry · z~_target`,
/// or zero when `sign == 0` (then `target` is `None`).
///
/// The sign stays symbolic (±1 as an integer) so that evaluation in
/// characteristic 2 can collapse it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureTerm {
    pub sign: i8,
    pub alpha_carry: bool,
    pub beta_carry: bool,
    pub target: Option<BasisIndex>,
}

impl StructureTerm {
    pub fn zero() -> StructureTerm {
        StructureTerm {
            sign: 0,
            alpha_carry: false,
            beta_carry: false,
            target: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

/// The structure constant for an ordered pair of basis indices.
///
/// With representatives i, j, i', j' ∈ {0, 1, 2} and Δ = (i·j' − j·i') mod 3:
/// the product is zero when Δ = 2 or when the index sums are both ≡ 0
/// (mod 3); otherwise the sign is −1 exactly when Δ = 1, the α-carry fires
/// when i + i' ≥ 3, the β-carry when j + j' ≥ 3, and the target is the
/// componentwise sum mod 3.
pub fn structure_product(a: BasisIndex, b: BasisIndex) -> StructureTerm {
    let (i, j) = (a.i as i32, a.j as i32);
    let (ip, jp) = (b.i as i32, b.j as i32);
    let delta = (i * jp - j * ip).rem_euclid(3);
    let si = i + ip;
    let sj = j + jp;
    if delta == 2 || (si % 3 == 0 && sj % 3 == 0) {
        return StructureTerm::zero();
    }
    StructureTerm {
        sign: if delta == 1 { -1 } else { 1 },
        alpha_carry: si >= 3,
        beta_carry: sj >= 3,
        target: BasisIndex::new((si % 3) as u8, (sj % 3) as u8),
    }
}

/// The shipped reference multiplication table (64 records).
pub const REFERENCE_TABLE: &str = include_str!("../data/structure_table.txt");

/// One parsed record of the reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRecord {
    pub left: BasisIndex,
    pub right: BasisIndex,
    pub term: StructureTerm,
}

/// Parses [`REFERENCE_TABLE`]. Panics on malformed data: the file ships
/// with the crate, so damage is a build problem, not a runtime condition.
pub fn parse_reference_table() -> Vec<ReferenceRecord> {
    fn parse_pair(tok: &str) -> Option<(u8, u8)> {
        let inner = tok.strip_prefix('(')?.strip_suffix(')')?;
        let (i, j) = inner.split_once(',')?;
        Some((i.parse().ok()?, j.parse().ok()?))
    }
    let mut records = Vec::with_capacity(64);
    for line in REFERENCE_TABLE.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(tok.len(), 6, "malformed record {line:?}");
        let (li, lj) = parse_pair(tok[0]).expect("left index");
        let (ri, rj) = parse_pair(tok[1]).expect("right index");
        let sign: i8 = tok[2].parse().expect("sign");
        let alpha_carry = tok[3] == "1";
        let beta_carry = tok[4] == "1";
        let target = if tok[5] == "-" {
            None
        } else {
            let (ti, tj) = parse_pair(tok[5]).expect("target index");
            Some(BasisIndex::new(ti, tj).expect("nonzero target"))
        };
        assert_eq!(sign == 0, target.is_none(), "sign/target mismatch {line:?}");
        records.push(ReferenceRecord {
            left: BasisIndex::new(li, lj).expect("nonzero left"),
            right: BasisIndex::new(ri, rj).expect("nonzero right"),
            term: StructureTerm {
                sign,
                alpha_carry,
                beta_carry,
                target,
            },
        });
    }
    assert_eq!(records.len(), 64, "reference table must have 64 records");
    records
}

/// An Okubo algebra `O_{α,β}` over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OkuboAlgebra {
    field: FieldDescriptor,
    alpha: FieldElement,
    beta: FieldElement,
}

/// An element, stored as coefficients in the fixed basis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: [FieldElement; 8],
}

impl AlgebraElement {
    pub fn coeff(&self, idx: BasisIndex) -> &FieldElement {
        &self.coeffs[idx.position()]
    }

    pub fn coeffs(&self) -> &[FieldElement; 8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Deterministic total order: coefficient-tuple lexicographic in basis
    /// order, using the canonical order of the field.
    pub fn canonical_cmp(&self, other: &AlgebraElement) -> Ordering {
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            let ord = a.canonical_cmp(b);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for AlgebraElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (pos, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let idx = BasisIndex::ALL[pos];
            if c.is_one() {
                write!(f, "z~{idx}")?;
            } else {
                let s = c.to_string();
                if s.contains('+') {
                    write!(f, "({s})*z~{idx}")?;
                } else {
                    write!(f, "{s}*z~{idx}")?;
                }
            }
        }
        Ok(())
    }
}

/// Classification of a nonzero idempotent in characteristic 3 by the rank
/// of the polar form restricted to its centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdempotentClass {
    /// Restricted rank 4.
    Quaternionic,
    /// Restricted rank 2.
    Quadratic,
    /// Restricted rank 1.
    Singular,
}

impl fmt::Display for IdempotentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdempotentClass::Quaternionic => write!(f, "quaternionic"),
            IdempotentClass::Quadratic => write!(f, "quadratic"),
            IdempotentClass::Singular => write!(f, "singular"),
        }
    }
}

impl OkuboAlgebra {
    /// Builds `O_{α,β}`; α and β must be nonzero elements of `field`.
    pub fn new(
        field: FieldDescriptor,
        alpha: FieldElement,
        beta: FieldElement,
    ) -> Result<OkuboAlgebra, AlgebraError> {
        if alpha.field() != &field || beta.field() != &field {
            return Err(FieldError::MixedFields.into());
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(AlgebraError::ZeroParameter);
        }
        Ok(OkuboAlgebra { field, alpha, beta })
    }

    /// Convenience constructor with integer parameters.
    pub fn with_integers(
        field: FieldDescriptor,
        alpha: i64,
        beta: i64,
    ) -> Result<OkuboAlgebra, AlgebraError> {
        let a = field.from_integer(alpha);
        let b = field.from_integer(beta);
        OkuboAlgebra::new(field, a, b)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: std::array::from_fn(|_| self.field.zero()),
        }
    }

    /// The basis vector `z~_idx`.
    pub fn basis_element(&self, idx: BasisIndex) -> AlgebraElement {
        let mut e = self.zero_element();
        e.coeffs[idx.position()] = self.field.one();
        e
    }

    /// Builds an element from coefficients in basis order, checking that
    /// each belongs to the algebra's field.
    pub fn element_from_coeffs(
        &self,
        coeffs: [FieldElement; 8],
    ) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.iter().any(|c| c.field() != &self.field) {
            return Err(FieldError::MixedFields.into());
        }
        Ok(AlgebraElement { coeffs })
    }

    pub fn add_elements(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: std::array::from_fn(|k| self.field.add(&x.coeffs[k], &y.coeffs[k])),
        }
    }

    pub fn sub_elements(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: std::array::from_fn(|k| self.field.sub(&x.coeffs[k], &y.coeffs[k])),
        }
    }

    pub fn neg_element(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: std::array::from_fn(|k| self.field.neg(&x.coeffs[k])),
        }
    }

    pub fn scale(&self, c: &FieldElement, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: std::array::from_fn(|k| self.field.mul(c, &x.coeffs[k])),
        }
    }

    /// The algebra product, extended bilinearly from the structure
    /// constants. Checks field membership of every coefficient.
    pub fn multiply(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        for c in x.coeffs.iter().chain(&y.coeffs) {
            if c.field() != &self.field {
                return Err(FieldError::MixedFields.into());
            }
        }
        Ok(self.mul_unchecked(x, y))
    }

    /// The algebra product without membership checks; inputs must already
    /// belong to this algebra.
    pub fn mul_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut acc = self.zero_element();
        for (apos, a) in BasisIndex::ALL.iter().enumerate() {
            if x.coeffs[apos].is_zero() {
                continue;
            }
            for (bpos, b) in BasisIndex::ALL.iter().enumerate() {
                if y.coeffs[bpos].is_zero() {
                    continue;
                }
                let term = structure_product(*a, *b);
                let Some(target) = term.target else {
                    continue;
                };
                let mut c = self.field.mul(&x.coeffs[apos], &y.coeffs[bpos]);
                if term.alpha_carry {
                    c = self.field.mul(&c, &self.alpha);
                }
                if term.beta_carry {
                    c = self.field.mul(&c, &self.beta);
                }
                if term.sign < 0 {
                    c = self.field.neg(&c);
                }
                let t = target.position();
                acc.coeffs[t] = self.field.add(&acc.coeffs[t], &c);
            }
        }
        acc
    }

    /// The norm: `n(Σ c_a z~_a) = α·c_{10}c_{20} + β·c_{01}c_{02}
    /// + αβ·(c_{11}c_{22} + c_{12}c_{21})`.
    pub fn norm(&self, x: &AlgebraElement) -> FieldElement {
        let f = &self.field;
        let ab = f.mul(&self.alpha, &self.beta);
        let mut acc = f.mul(&self.alpha, &f.mul(&x.coeffs[0], &x.coeffs[1]));
        acc = f.add(&acc, &f.mul(&self.beta, &f.mul(&x.coeffs[2], &x.coeffs[3])));
        acc = f.add(&acc, &f.mul(&ab, &f.mul(&x.coeffs[4], &x.coeffs[5])));
        acc = f.add(&acc, &f.mul(&ab, &f.mul(&x.coeffs[6], &x.coeffs[7])));
        acc
    }

    /// The polar pairing `n(x+y) − n(x) − n(y)`, computed directly from the
    /// bilinear pairing table (basis vectors pair nontrivially only when
    /// their indices sum to zero).
    pub fn polar(&self, x: &AlgebraElement, y: &AlgebraElement) -> FieldElement {
        let f = &self.field;
        let ab = f.mul(&self.alpha, &self.beta);
        let pair = |p: usize, q: usize| {
            f.add(
                &f.mul(&x.coeffs[p], &y.coeffs[q]),
                &f.mul(&x.coeffs[q], &y.coeffs[p]),
            )
        };
        let mut acc = f.mul(&self.alpha, &pair(0, 1));
        acc = f.add(&acc, &f.mul(&self.beta, &pair(2, 3)));
        acc = f.add(&acc, &f.mul(&ab, &pair(4, 5)));
        acc = f.add(&acc, &f.mul(&ab, &pair(6, 7)));
        acc
    }

    /// 8×8 matrix of basis polar pairings.
    pub fn gram_matrix(&self) -> linalg::Matrix {
        BasisIndex::ALL
            .iter()
            .map(|a| {
                BasisIndex::ALL
                    .iter()
                    .map(|b| self.polar(&self.basis_element(*a), &self.basis_element(*b)))
                    .collect()
            })
            .collect()
    }

    /// Number of elements of the algebra over a finite field.
    pub fn element_count(&self) -> Result<u64, AlgebraError> {
        let q = self.field.order().ok_or(AlgebraError::InfiniteField)?;
        Ok(q.pow(8))
    }

    /// The n-th element in canonical order (coefficient-tuple counting with
    /// the first basis coordinate most significant).
    pub fn element_from_index(&self, n: u64) -> AlgebraElement {
        let q = self.field.order().expect("finite field");
        let mut rem = n;
        let mut digits = [0u64; 8];
        for k in (0..8).rev() {
            digits[k] = rem % q;
            rem /= q;
        }
        debug_assert_eq!(rem, 0);
        AlgebraElement {
            coeffs: std::array::from_fn(|k| self.field.element_from_index(digits[k])),
        }
    }

    /// All elements in canonical order (finite fields only).
    pub fn elements(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        let q = self.field.order().expect("finite field");
        (0..q.pow(8)).map(move |n| self.element_from_index(n))
    }

    /// All nonzero idempotents, in canonical order, by exhaustive search.
    pub fn find_idempotents(&self) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let q = self.field.order().ok_or(AlgebraError::InfiniteField)?;
        let count = q.pow(8);
        if count > MAX_SEARCH_ORDER {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        let mut found = Vec::new();
        for e in self.elements().skip(1) {
            if self.mul_unchecked(&e, &e) == e {
                found.push(e);
            }
        }
        Ok(found)
    }

    /// Basis of the centralizer {x : e*x = x*e} of an element, as the kernel
    /// of the linear map x ↦ e*x − x*e.
    pub fn centralizer_basis(&self, e: &AlgebraElement) -> Vec<AlgebraElement> {
        let columns: Vec<Vec<FieldElement>> = BasisIndex::ALL
            .iter()
            .map(|b| {
                let zb = self.basis_element(*b);
                let diff = self.sub_elements(
                    &self.mul_unchecked(e, &zb),
                    &self.mul_unchecked(&zb, e),
                );
                diff.coeffs.to_vec()
            })
            .collect();
        // Kernel of the 8×8 matrix whose j-th column is e*z_j − z_j*e.
        let m: linalg::Matrix = (0..8)
            .map(|row| (0..8).map(|col| columns[col][row].clone()).collect())
            .collect();
        linalg::kernel_basis(&self.field, &m)
            .into_iter()
            .map(|v| AlgebraElement {
                coeffs: std::array::from_fn(|k| v[k].clone()),
            })
            .collect()
    }

    /// Classifies a nonzero idempotent over a field of characteristic 3 by
    /// the rank of the polar form restricted to its centralizer: 4 is
    /// quaternionic, 2 quadratic, 1 singular. Any other rank signals an
    /// implementation bug and comes back as [`AlgebraError::UnexpectedRank`].
    pub fn classify_idempotent(
        &self,
        e: &AlgebraElement,
    ) -> Result<IdempotentClass, AlgebraError> {
        let p = self.field.characteristic();
        if p != 3 {
            return Err(AlgebraError::WrongCharacteristic {
                expected: 3,
                found: p,
            });
        }
        if e.is_zero() || self.mul_unchecked(e, e) != *e {
            return Err(AlgebraError::NotIdempotent);
        }
        let cent = self.centralizer_basis(e);
        let gram: linalg::Matrix = cent
            .iter()
            .map(|u| cent.iter().map(|v| self.polar(u, v)).collect())
            .collect();
        match linalg::rank(&self.field, &gram) {
            4 => Ok(IdempotentClass::Quaternionic),
            2 => Ok(IdempotentClass::Quadratic),
            1 => Ok(IdempotentClass::Singular),
            r => Err(AlgebraError::UnexpectedRank(r)),
        }
    }
}

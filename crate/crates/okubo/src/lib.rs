//! Exact-arithmetic Okubo algebras over small finite fields and the rationals.
//!
//! The crate builds the eight-dimensional symmetric composition algebras
//! `O_{α,β}` from their structure constants, together with the machinery
//! around them:
//!
//! * [`field`] — exact arithmetic in GF(p), GF(p^k) for k ≤ 3, and ℚ,
//!   including cube-class computations and norm-equation solving;
//! * [`algebra`] — the algebra product, norm, polar form, and idempotent
//!   search and classification;
//! * [`grading`] — the canonical (ℤ/3)²-grading, its cube-class invariant,
//!   image rank, normal-form classification, and Weyl group;
//! * [`matrix`] — the trace-zero 3×3 matrix model with its star product,
//!   Hermitian orthonormalization, and the Pauli-type basis;
//! * [`symbol`] — symbol algebras with a cube root of unity, their trace-zero
//!   parts and second-kind involutions;
//! * [`group`] — small finite groups as explicit multiplication tables, with
//!   invariants, semidirect-product checks, and isomorphism search;
//! * [`aut`] — grading automorphism groups, stabilizers, splitting sections,
//!   the full automorphism group over GF(2), the unitary groups over GF(4),
//!   and cross-algebra isomorphism search;
//! * [`verify`] — the composition-identity checking suite.
//!
//! All arithmetic is exact; no floating point is used anywhere.

// Row/column index loops mirror the matrix arithmetic they implement and
// read better here than iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod aut;
pub mod field;
pub mod grading;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod symbol;
pub mod verify;

pub use algebra::{AlgebraElement, BasisIndex, OkuboAlgebra, StructureTerm};
pub use field::{CubeClass, FieldDescriptor, FieldElement, FieldError};




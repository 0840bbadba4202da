//! Exact arithmetic in small finite fields and the rationals.
//!
//! A [`FieldDescriptor`] identifies one of three kinds of field:
//!
//! * a prime field GF(p),
//! * an extension GF(p^k) = GF(p)[t]/(m(t)) for k ∈ {2, 3} with a monic
//!   irreducible modulus m,
//! * the rationals ℚ with arbitrary-precision integers.
//!
//! Elements ([`FieldElement`]) carry their descriptor, so mixed-field
//! arithmetic is detected. The descriptor methods (`add`, `mul`, ...) panic
//! on a field mismatch and are meant for inner loops that have already
//! validated their inputs; the `checked_*` methods on elements return a
//! [`FieldError`] instead and are the public API boundary.
//!
//! Finite-field elements are stored as reduced polynomial coefficient
//! vectors in the generator `t`; rationals as reduced fractions. Both forms
//! are canonical, so derived equality and hashing are reliable, and the
//! ordering [`FieldElement::canonical_cmp`] (coefficient-lexicographic for
//! finite fields, numerator-then-denominator for ℚ) makes every scan and
//! enumeration in this crate deterministic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest supported finite-field order; enumeration loops assume the order
/// fits comfortably in a machine word.
pub const MAX_FIELD_ORDER: u64 = 10_000;

/// Trial-division bound for cube-class factorization over ℚ.
pub const FACTOR_BOUND: u64 = 1_000_000;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {0} exceeds the supported bound {MAX_FIELD_ORDER}")]
    OrderTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("factor exceeds {FACTOR_BOUND} after cube extraction")]
    FactorizationOverflow,
    #[error("expected a quadratic extension of a prime field")]
    NotQuadraticExtension,
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

/// The three kinds of supported field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    Prime,
    Extension,
    Rationals,
}

/// Identifies a field and carries enough data to compute in it.
///
/// Descriptors are small plain values; cloning is cheap and equality means
/// "the same field with the same presentation".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    /// Characteristic; 0 for ℚ.
    p: u64,
    /// Extension degree over GF(p); 1 for prime fields and ℚ.
    degree: u32,
    /// Monic modulus coefficients m0..m3 (degree+1 entries used).
    modulus: [u64; 4],
}

/// Internal representation of one element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Polynomial coefficients c0 + c1·t + c2·t², reduced mod p; unused
    /// slots are zero.
    Finite([u64; 3]),
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
}

/// An element of a specific field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldDescriptor,
    repr: Repr,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldDescriptor {
    /// The rational field ℚ.
    pub fn rationals() -> Self {
        FieldDescriptor {
            kind: FieldKind::Rationals,
            p: 0,
            degree: 1,
            modulus: [0; 4],
        }
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(FieldError::OrderTooLarge(p));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Prime,
            p,
            degree: 1,
            modulus: [0; 4],
        })
    }

    /// The extension field GF(p)[t]/(m(t)) for a monic irreducible modulus
    /// of degree 2 or 3, given as coefficients `m[0] + m[1]t + ...`.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        let degree = modulus.len().saturating_sub(1);
        if !(2..=3).contains(&degree) {
            return Err(FieldError::InvalidModulus(format!(
                "degree {degree} not in 2..=3"
            )));
        }
        if modulus[degree] % p != 1 {
            return Err(FieldError::InvalidModulus("modulus is not monic".into()));
        }
        let order = p.pow(degree as u32);
        if order > MAX_FIELD_ORDER {
            return Err(FieldError::OrderTooLarge(order));
        }
        // A quadratic or cubic polynomial is irreducible iff it has no root.
        for x in 0..p {
            let mut val = 0u64;
            let mut xp = 1u64;
            for &c in modulus {
                val = (val + c % p * xp) % p;
                xp = xp * x % p;
            }
            if val == 0 {
                return Err(FieldError::ReducibleModulus(p));
            }
        }
        let mut m = [0u64; 4];
        for (slot, &c) in m.iter_mut().zip(modulus) {
            *slot = c % p;
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Extension,
            p,
            degree: degree as u32,
            modulus: m,
        })
    }

    /// Field of a given order from the built-in modulus table: any supported
    /// prime, or one of GF(4), GF(9), GF(25), GF(49).
    ///
    /// The fixed moduli are t²+t+1 (GF(4)), t²+1 (GF(9)), t²+2 (GF(25)),
    /// and t²+1 (GF(49)).
    pub fn gf(q: u64) -> Result<Self, FieldError> {
        match q {
            4 => Self::extension(2, &[1, 1, 1]),
            9 => Self::extension(3, &[1, 0, 1]),
            25 => Self::extension(5, &[2, 0, 1]),
            49 => Self::extension(7, &[1, 0, 1]),
            _ => Self::prime(q),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Characteristic (0 for ℚ).
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Number of elements; `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Rationals => None,
            _ => Some(self.p.pow(self.degree)),
        }
    }

    /// Extension degree over the prime field (1 for prime fields and ℚ).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_finite(&self) -> bool {
        self.kind != FieldKind::Rationals
    }

    fn k(&self) -> usize {
        self.degree as usize
    }

    pub fn zero(&self) -> FieldElement {
        self.from_integer(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    /// Embeds a signed integer.
    pub fn from_integer(&self, n: i64) -> FieldElement {
        match self.kind {
            FieldKind::Rationals => FieldElement {
                field: *self,
                repr: Repr::Rational(BigRational::from_integer(BigInt::from(n))),
            },
            _ => {
                let p = self.p as i64;
                let c = n.rem_euclid(p) as u64;
                FieldElement {
                    field: *self,
                    repr: Repr::Finite([c, 0, 0]),
                }
            }
        }
    }

    /// Element from polynomial coefficients `c[0] + c[1]t + ...` (finite
    /// fields only; excess coefficients must be absent).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(self.is_finite(), "from_coeffs requires a finite field");
        assert!(coeffs.len() <= self.k(), "too many coefficients");
        let mut c = [0u64; 3];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p;
        }
        FieldElement {
            field: *self,
            repr: Repr::Finite(c),
        }
    }

    /// Element of ℚ from a fraction (denominator must be nonzero).
    pub fn from_fraction(&self, numer: i64, denom: i64) -> FieldElement {
        assert!(
            self.kind == FieldKind::Rationals,
            "from_fraction requires the rational field"
        );
        assert!(denom != 0, "zero denominator");
        FieldElement {
            field: *self,
            repr: Repr::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom))),
        }
    }

    /// The polynomial generator t of an extension field.
    pub fn generator(&self) -> FieldElement {
        assert!(
            self.kind == FieldKind::Extension,
            "generator requires an extension field"
        );
        FieldElement {
            field: *self,
            repr: Repr::Finite([0, 1, 0]),
        }
    }

    fn assert_member(&self, a: &FieldElement) {
        assert!(
            a.field == *self,
            "element of {:?} used with {:?}",
            a.field,
            self
        );
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_member(a);
        self.assert_member(b);
        match (&a.repr, &b.repr) {
            (Repr::Finite(x), Repr::Finite(y)) => {
                let mut c = [0u64; 3];
                for i in 0..3 {
                    c[i] = (x[i] + y[i]) % self.p;
                }
                FieldElement {
                    field: *self,
                    repr: Repr::Finite(c),
                }
            }
            (Repr::Rational(x), Repr::Rational(y)) => FieldElement {
                field: *self,
                repr: Repr::Rational(x + y),
            },
            _ => unreachable!("repr matches descriptor"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.assert_member(a);
        match &a.repr {
            Repr::Finite(x) => {
                let mut c = [0u64; 3];
                for i in 0..3 {
                    c[i] = (self.p - x[i]) % self.p;
                }
                FieldElement {
                    field: *self,
                    repr: Repr::Finite(c),
                }
            }
            Repr::Rational(x) => FieldElement {
                field: *self,
                repr: Repr::Rational(-x),
            },
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_member(a);
        self.assert_member(b);
        match (&a.repr, &b.repr) {
            (Repr::Finite(x), Repr::Finite(y)) => {
                let k = self.k();
                // Schoolbook product; degree ≤ 4 for k ≤ 3.
                let mut prod = [0u128; 5];
                for i in 0..k {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        prod[i + j] += x[i] as u128 * y[j] as u128;
                    }
                }
                for v in prod.iter_mut() {
                    *v %= self.p as u128;
                }
                // Reduce by the monic modulus from the top down.
                for d in (k..=2 * k.saturating_sub(1)).rev() {
                    let lead = prod[d];
                    if lead == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (i, &m) in self.modulus[..k].iter().enumerate() {
                        let sub = lead * m as u128 % self.p as u128;
                        let idx = d - k + i;
                        prod[idx] = (prod[idx] + self.p as u128 - sub) % self.p as u128;
                    }
                }
                let mut c = [0u64; 3];
                for i in 0..k {
                    c[i] = prod[i] as u64;
                }
                FieldElement {
                    field: *self,
                    repr: Repr::Finite(c),
                }
            }
            (Repr::Rational(x), Repr::Rational(y)) => FieldElement {
                field: *self,
                repr: Repr::Rational(x * y),
            },
            _ => unreachable!("repr matches descriptor"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.assert_member(a);
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &a.repr {
            Repr::Finite(_) => {
                // a^(q-2) = a^(-1) in GF(q)^×; q ≤ 10^4 keeps this cheap.
                let q = self.order().expect("finite");
                Ok(self.pow(a, q - 2))
            }
            Repr::Rational(x) => Ok(FieldElement {
                field: *self,
                repr: Repr::Rational(x.recip()),
            }),
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius map x ↦ x^p (identity on prime fields; panics for ℚ).
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        assert!(self.is_finite(), "frobenius requires a finite field");
        self.pow(a, self.p)
    }

    /// All field elements in canonical order (finite fields only).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        assert!(self.is_finite(), "cannot enumerate ℚ");
        let q = self.order().expect("finite");
        (0..q).map(move |n| self.element_from_index(n))
    }

    /// The n-th element in canonical order, n < q.
    pub fn element_from_index(&self, n: u64) -> FieldElement {
        assert!(self.is_finite());
        let q = self.order().expect("finite");
        assert!(n < q);
        let k = self.k();
        let mut c = [0u64; 3];
        let mut rem = n;
        // First coefficient is the most significant digit, so increasing
        // index is exactly the canonical (lexicographic) order.
        for i in 0..k {
            let place = self.p.pow((k - 1 - i) as u32);
            c[i] = rem / place;
            rem %= place;
        }
        FieldElement {
            field: *self,
            repr: Repr::Finite(c),
        }
    }

    /// Index of an element in canonical order (inverse of
    /// [`Self::element_from_index`]).
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        self.assert_member(a);
        match &a.repr {
            Repr::Finite(c) => {
                let k = self.k();
                let mut n = 0;
                for i in 0..k {
                    n = n * self.p + c[i];
                }
                n
            }
            Repr::Rational(_) => unreachable!(),
        }
    }

    /// The least ω (canonical order) with ω³ = 1 and ω ≠ 1, if one exists.
    ///
    /// Finite fields contain one exactly when 3 divides q−1; ℚ and fields of
    /// characteristic 3 have none.
    pub fn primitive_cube_root(&self) -> Option<FieldElement> {
        if !self.is_finite() {
            return None;
        }
        let q = self.order().expect("finite");
        if self.p == 3 || !(q - 1).is_multiple_of(3) {
            return None;
        }
        let one = self.one();
        self.elements()
            .find(|x| !x.is_zero() && *x != one && self.pow(x, 3) == one)
    }

    /// The multiplicative cube class of a nonzero element: the coset of a in
    /// F^× / (F^×)³.
    ///
    /// Over a finite field with 3 | q−1 the class is the exponent e with
    /// a^((q−1)/3) = ω^e for the canonical ω; if 3 ∤ q−1 every element is a
    /// cube and the class group is trivial. Over ℚ the class is the
    /// cube-free part of the factored fraction; factors beyond the trial
    /// division bound that are not perfect cubes yield
    /// [`FieldError::FactorizationOverflow`].
    pub fn cube_class(&self, a: &FieldElement) -> Result<CubeClass, FieldError> {
        self.assert_member(a);
        if a.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        match &a.repr {
            Repr::Finite(_) => {
                let q = self.order().expect("finite");
                if self.p == 3 || !(q - 1).is_multiple_of(3) {
                    return Ok(CubeClass::Trivial);
                }
                let r = self.pow(a, (q - 1) / 3);
                if r.is_one() {
                    return Ok(CubeClass::Root(0));
                }
                let omega = self.primitive_cube_root().expect("3 | q-1");
                if r == omega {
                    Ok(CubeClass::Root(1))
                } else {
                    debug_assert_eq!(r, self.mul(&omega, &omega));
                    Ok(CubeClass::Root(2))
                }
            }
            Repr::Rational(x) => {
                let mut exps = std::collections::BTreeMap::new();
                accumulate_cube_free(x.numer().abs().to_biguint().unwrap(), 1, &mut exps)?;
                accumulate_cube_free(x.denom().abs().to_biguint().unwrap(), 2, &mut exps)?;
                Ok(CubeClass::CubeFree(
                    exps.into_iter().filter(|&(_, e)| e != 0).collect(),
                ))
            }
        }
    }

    /// The least x (canonical order) with x³ = a, if one exists.
    ///
    /// Finite fields are scanned in canonical order, so the result is
    /// deterministic even when three roots exist. Over ℚ the cube map is
    /// injective, and the root is found by exact integer root extraction on
    /// the reduced numerator and denominator.
    pub fn cube_root(&self, a: &FieldElement) -> Option<FieldElement> {
        self.assert_member(a);
        match &a.repr {
            Repr::Finite(_) => self.elements().find(|x| self.pow(x, 3) == *a),
            Repr::Rational(x) => {
                let root_of = |n: &BigInt| -> Option<BigInt> {
                    let r = n.nth_root(3);
                    if &(&r * &r * &r) == n {
                        Some(r)
                    } else {
                        None
                    }
                };
                let rn = root_of(x.numer())?;
                let rd = root_of(x.denom())?;
                Some(FieldElement {
                    field: *self,
                    repr: Repr::Rational(BigRational::new(rn, rd)),
                })
            }
        }
    }

    /// Parses the canonical textual form produced by `Display`.
    ///
    /// Finite fields accept polynomial expressions in t such as `2`, `t`,
    /// `2t`, `1+t`, `1+2t+t^2` (an optional `*` may separate coefficient and
    /// t). ℚ accepts `n` and `n/d` with optional sign.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(FieldError::Parse(s.into()));
        }
        match self.kind {
            FieldKind::Rationals => {
                let r: BigRational = s
                    .parse()
                    .map_err(|_| FieldError::Parse(s.into()))?;
                Ok(FieldElement {
                    field: *self,
                    repr: Repr::Rational(r),
                })
            }
            _ => {
                let mut c = [0u64; 3];
                for term in s.split('+') {
                    let term = term.trim().replace('*', "");
                    if term.is_empty() {
                        return Err(FieldError::Parse(s.into()));
                    }
                    let (coeff_str, power) = match term.find('t') {
                        None => (term.as_str(), 0usize),
                        Some(pos) => {
                            let coeff = &term[..pos];
                            let rest = &term[pos + 1..];
                            let power = if rest.is_empty() {
                                1
                            } else if let Some(exp) = rest.strip_prefix('^') {
                                exp.parse::<usize>()
                                    .map_err(|_| FieldError::Parse(s.into()))?
                            } else {
                                return Err(FieldError::Parse(s.into()));
                            };
                            (coeff, power)
                        }
                    };
                    let coeff = if coeff_str.is_empty() {
                        1
                    } else {
                        coeff_str
                            .trim()
                            .parse::<u64>()
                            .map_err(|_| FieldError::Parse(s.into()))?
                    };
                    if power >= self.k() {
                        return Err(FieldError::Parse(s.into()));
                    }
                    c[power] = (c[power] + coeff) % self.p;
                }
                Ok(FieldElement {
                    field: *self,
                    repr: Repr::Finite(c),
                })
            }
        }
    }
}

/// Accumulate the prime factorization of `n`, with every exponent scaled by
/// `exp_mult`, into `exps` (exponents mod 3). A leftover cofactor the trial
/// division cannot resolve is tolerated only when it is a perfect cube.
fn accumulate_cube_free(
    n: BigUint,
    exp_mult: u8,
    exps: &mut std::collections::BTreeMap<u64, u8>,
) -> Result<(), FieldError> {
    if n.is_zero() {
        return Err(FieldError::ZeroElement);
    }
    let mut record = |p: u64, count: u32| {
        let e = exps.entry(p).or_insert(0);
        *e = ((*e as u32 + exp_mult as u32 * count) % 3) as u8;
    };
    let mut big = n;
    let mut p = 2u64;
    // Arbitrary-precision trial division only until the value fits u64.
    while big.to_u64().is_none() && p <= FACTOR_BOUND {
        let pb = BigUint::from(p);
        let mut count = 0u32;
        while (&big % &pb).is_zero() {
            big /= &pb;
            count += 1;
        }
        if count > 0 {
            record(p, count);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    match big.to_u64() {
        None => {
            // Still beyond u64 after dividing out everything up to the
            // bound: only a perfect cube is acceptable.
            let root = big.cbrt();
            if &root * &root * &root == big {
                Ok(())
            } else {
                Err(FieldError::FactorizationOverflow)
            }
        }
        Some(mut small) => {
            while p <= FACTOR_BOUND && small > 1 {
                if p.checked_mul(p).is_none_or(|pp| pp > small) {
                    // Trial division passed √small, so the remainder is
                    // prime regardless of its size.
                    record(small, 1);
                    small = 1;
                    break;
                }
                let mut count = 0u32;
                while small % p == 0 {
                    small /= p;
                    count += 1;
                }
                if count > 0 {
                    record(p, count);
                }
                p = if p == 2 { 3 } else { p + 2 };
            }
            if small > 1 {
                let root = small.cbrt();
                if root * root * root == small {
                    Ok(())
                } else {
                    Err(FieldError::FactorizationOverflow)
                }
            } else {
                Ok(())
            }
        }
    }
}

/// Least β in K (canonical order) with β^(q+1) = α, where K is a quadratic
/// extension of the prime field F = GF(q) and α is a nonzero element of F.
///
/// β^(q+1) is the K/F norm of β, which is surjective onto F^×, so a solution
/// always exists.
pub fn solve_norm_equation(
    k_field: &FieldDescriptor,
    alpha: &FieldElement,
) -> Result<FieldElement, FieldError> {
    if k_field.kind != FieldKind::Extension || k_field.degree != 2 {
        return Err(FieldError::NotQuadraticExtension);
    }
    let f_field = FieldDescriptor::prime(k_field.p)?;
    if alpha.field() != &f_field {
        return Err(FieldError::NotQuadraticExtension);
    }
    if alpha.is_zero() {
        return Err(FieldError::ZeroElement);
    }
    let q = k_field.p;
    let alpha_k = match &alpha.repr {
        Repr::Finite(c) => k_field.from_coeffs(&c[..1]),
        Repr::Rational(_) => unreachable!(),
    };
    Ok(k_field
        .elements()
        .find(|b| k_field.pow(b, q + 1) == alpha_k)
        .expect("the K/F norm is surjective onto F^×"))
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            None => write!(f, "Q"),
            Some(q) => write!(f, "GF({q})"),
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Finite(c) => c.iter().all(|&x| x == 0),
            Repr::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Finite(c) => c[0] == 1 && c[1] == 0 && c[2] == 0,
            Repr::Rational(r) => r.is_one(),
        }
    }

    fn require_same(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    /// Field-checked addition.
    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.require_same(other)?;
        Ok(self.field.add(self, other))
    }

    /// Field-checked subtraction.
    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.require_same(other)?;
        Ok(self.field.sub(self, other))
    }

    /// Field-checked multiplication.
    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.require_same(other)?;
        Ok(self.field.mul(self, other))
    }

    /// Field-checked division.
    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.require_same(other)?;
        self.field.div(self, other)
    }

    /// Multiplicative inverse.
    pub fn checked_inv(&self) -> Result<FieldElement, FieldError> {
        self.field.inv(self)
    }

    /// Deterministic total order: by descriptor, then coefficient-vector
    /// lexicographic (finite) or numerator-then-denominator (ℚ).
    ///
    /// This is a canonical scan order, not the value order of ℚ.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| match (&self.repr, &other.repr) {
                (Repr::Finite(a), Repr::Finite(b)) => a.cmp(b),
                (Repr::Rational(a), Repr::Rational(b)) => a
                    .numer()
                    .cmp(b.numer())
                    .then_with(|| a.denom().cmp(b.denom())),
                (Repr::Finite(_), Repr::Rational(_)) => Ordering::Less,
                (Repr::Rational(_), Repr::Finite(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Finite(c) => {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (power, &coeff) in c.iter().enumerate().take(self.field.k()) {
                    if coeff == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match power {
                        0 => write!(f, "{coeff}")?,
                        _ => {
                            if coeff != 1 {
                                write!(f, "{coeff}")?;
                            }
                            if power == 1 {
                                write!(f, "t")?;
                            } else {
                                write!(f, "t^{power}")?;
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// A coset of cubes in F^× / (F^×)³.
///
/// The representation depends on the field kind: finite fields with
/// 3 | q−1 use the exponent of the canonical primitive cube root ω; finite
/// fields whose cube map is bijective have only the trivial class; ℚ uses
/// the cube-free part as a sorted (prime, exponent) list with exponents in
/// {1, 2}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeClass {
    /// The class group is trivial (finite field with 3 ∤ q−1, including
    /// characteristic 3).
    Trivial,
    /// ω-exponent in {0, 1, 2} over a finite field with 3 | q−1.
    Root(u8),
    /// Cube-free part over ℚ: sorted primes with exponents in {1, 2}.
    CubeFree(Vec<(u64, u8)>),
}

impl CubeClass {
    pub fn is_identity(&self) -> bool {
        match self {
            CubeClass::Trivial => true,
            CubeClass::Root(e) => *e == 0,
            CubeClass::CubeFree(v) => v.is_empty(),
        }
    }

    /// Group law of the class group. Both operands must come from the same
    /// field kind.
    pub fn combine(&self, other: &CubeClass) -> CubeClass {
        match (self, other) {
            (CubeClass::Trivial, CubeClass::Trivial) => CubeClass::Trivial,
            (CubeClass::Root(a), CubeClass::Root(b)) => CubeClass::Root((a + b) % 3),
            (CubeClass::CubeFree(a), CubeClass::CubeFree(b)) => {
                let mut exps: std::collections::BTreeMap<u64, u8> = a.iter().cloned().collect();
                for &(p, e) in b {
                    let slot = exps.entry(p).or_insert(0);
                    *slot = (*slot + e) % 3;
                }
                CubeClass::CubeFree(exps.into_iter().filter(|&(_, e)| e != 0).collect())
            }
            _ => panic!("cube classes from different field kinds"),
        }
    }

    pub fn inverse(&self) -> CubeClass {
        match self {
            CubeClass::Trivial => CubeClass::Trivial,
            CubeClass::Root(e) => CubeClass::Root((3 - e) % 3),
            CubeClass::CubeFree(v) => {
                CubeClass::CubeFree(v.iter().map(|&(p, e)| (p, 3 - e)).collect())
            }
        }
    }

    /// Order in the class group: 1 or 3.
    pub fn order(&self) -> u32 {
        if self.is_identity() {
            1
        } else {
            3
        }
    }
}

impl fmt::Display for CubeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeClass::Trivial => write!(f, "1"),
            CubeClass::Root(0) => write!(f, "1"),
            CubeClass::Root(1) => write!(f, "omega"),
            CubeClass::Root(_) => write!(f, "omega^2"),
            CubeClass::CubeFree(v) => {
                if v.is_empty() {
                    return write!(f, "1");
                }
                let mut value = BigUint::one();
                for &(p, e) in v {
                    for _ in 0..e {
                        value *= p;
                    }
                }
                write!(f, "{value}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction_rejects_composites() {
        assert!(FieldDescriptor::prime(7).is_ok());
        assert_eq!(
            FieldDescriptor::prime(6),
            Err(FieldError::NonPrimeCharacteristic(6))
        );
        assert_eq!(
            FieldDescriptor::prime(1),
            Err(FieldError::NonPrimeCharacteristic(1))
        );
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // t² + 1 = (t+1)² over GF(2).
        assert_eq!(
            FieldDescriptor::extension(2, &[1, 0, 1]),
            Err(FieldError::ReducibleModulus(2))
        );
        assert!(FieldDescriptor::extension(2, &[1, 1, 1]).is_ok());
    }

    #[test]
    fn fixed_moduli_table() {
        for q in [4, 9, 25, 49] {
            let f = FieldDescriptor::gf(q).unwrap();
            assert_eq!(f.order(), Some(q));
            assert_eq!(f.degree(), 2);
        }
        assert_eq!(FieldDescriptor::gf(13).unwrap().order(), Some(13));
        assert!(FieldDescriptor::gf(12).is_err());
    }

    #[test]
    fn order_bound_enforced() {
        assert_eq!(
            FieldDescriptor::prime(10_007),
            Err(FieldError::OrderTooLarge(10_007))
        );
    }

    #[test]
    fn gf7_arithmetic_and_inverse() {
        let f = FieldDescriptor::prime(7).unwrap();
        let three = f.from_integer(3);
        let five = f.from_integer(5);
        assert_eq!(f.mul(&three, &five), f.from_integer(1));
        assert_eq!(f.inv(&three).unwrap(), five);
        assert_eq!(f.inv(&f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn gf4_multiplication_table() {
        let f = FieldDescriptor::gf(4).unwrap();
        let t = f.generator();
        let t2 = f.mul(&t, &t);
        // t² = t + 1 under t² + t + 1 = 0.
        assert_eq!(t2, f.from_coeffs(&[1, 1]));
        // t³ = 1.
        assert_eq!(f.mul(&t2, &t), f.one());
    }

    #[test]
    fn gf9_frobenius_fixes_prime_subfield() {
        let f = FieldDescriptor::gf(9).unwrap();
        for n in 0..3 {
            let c = f.from_integer(n);
            assert_eq!(f.frobenius(&c), c);
        }
        let t = f.generator();
        assert_ne!(f.frobenius(&t), t);
        assert_eq!(f.frobenius(&f.frobenius(&t)), t);
    }

    #[test]
    fn every_nonzero_element_has_inverse() {
        for q in [2, 3, 4, 5, 7, 9, 25, 49] {
            let f = FieldDescriptor::gf(q).unwrap();
            for x in f.elements().filter(|x| !x.is_zero()) {
                let inv = f.inv(&x).unwrap();
                assert!(f.mul(&x, &inv).is_one(), "inverse failed in GF({q})");
            }
        }
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let f = FieldDescriptor::rationals();
        let a = f.from_fraction(2, 3);
        let b = f.from_fraction(1, 3);
        assert!(f.add(&a, &b).is_one());
        let half = f.from_fraction(4, 8);
        assert_eq!(half, f.from_fraction(1, 2));
        assert_eq!(f.inv(&half).unwrap(), f.from_integer(2));
    }

    #[test]
    fn mixed_fields_detected() {
        let a = FieldDescriptor::prime(5).unwrap().from_integer(2);
        let b = FieldDescriptor::prime(7).unwrap().from_integer(2);
        assert_eq!(a.checked_add(&b), Err(FieldError::MixedFields));
        assert_eq!(a.checked_mul(&b), Err(FieldError::MixedFields));
        let q = FieldDescriptor::rationals().from_integer(2);
        assert_eq!(a.checked_sub(&q), Err(FieldError::MixedFields));
    }

    #[test]
    fn canonical_enumeration_order() {
        let f = FieldDescriptor::gf(4).unwrap();
        let order: Vec<String> = f.elements().map(|x| x.to_string()).collect();
        assert_eq!(order, ["0", "t", "1", "1+t"]);
        for (i, x) in f.elements().enumerate() {
            assert_eq!(f.index_of(&x), i as u64);
        }
        let sorted_ok = f
            .elements()
            .zip(f.elements().skip(1))
            .all(|(a, b)| a.canonical_cmp(&b) == Ordering::Less);
        assert!(sorted_ok);
    }

    #[test]
    fn primitive_cube_roots() {
        // GF(7): x³ = 1 has solutions {1, 2, 4}; least nontrivial is 2.
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(f7.primitive_cube_root().unwrap(), f7.from_integer(2));
        // GF(13): solutions {1, 3, 9}; least nontrivial is 3.
        let f13 = FieldDescriptor::prime(13).unwrap();
        assert_eq!(f13.primitive_cube_root().unwrap(), f13.from_integer(3));
        // GF(4): t and t² both work; t is least.
        let f4 = FieldDescriptor::gf(4).unwrap();
        assert_eq!(f4.primitive_cube_root().unwrap(), f4.generator());
        // GF(2), GF(3), GF(5), ℚ: none.
        assert!(FieldDescriptor::prime(2).unwrap().primitive_cube_root().is_none());
        assert!(FieldDescriptor::prime(3).unwrap().primitive_cube_root().is_none());
        assert!(FieldDescriptor::prime(5).unwrap().primitive_cube_root().is_none());
        assert!(FieldDescriptor::rationals().primitive_cube_root().is_none());
    }

    #[test]
    fn cube_classes_gf7() {
        let f = FieldDescriptor::prime(7).unwrap();
        // Cubes in GF(7)^×: {1, 6}, computed here by brute force.
        let cubes: std::collections::BTreeSet<u64> = (1..7u64)
            .map(|x| {
                let e = f.from_integer(x as i64);
                f.index_of(&f.pow(&e, 3))
            })
            .collect();
        assert_eq!(cubes, [1u64, 6].into_iter().collect());
        assert_eq!(f.cube_class(&f.from_integer(1)).unwrap(), CubeClass::Root(0));
        assert_eq!(f.cube_class(&f.from_integer(6)).unwrap(), CubeClass::Root(0));
        // 3 is not a cube mod 7.
        let c3 = f.cube_class(&f.from_integer(3)).unwrap();
        assert!(!c3.is_identity());
        // The class map is multiplicative.
        for a in 1..7i64 {
            for b in 1..7i64 {
                let ca = f.cube_class(&f.from_integer(a)).unwrap();
                let cb = f.cube_class(&f.from_integer(b)).unwrap();
                let cab = f.cube_class(&f.from_integer(a * b)).unwrap();
                assert_eq!(ca.combine(&cb), cab);
            }
        }
    }

    #[test]
    fn cube_classes_trivial_fields() {
        // 3 ∤ q−1: GF(2), GF(3), GF(5); every element is a cube.
        for q in [2, 3, 5] {
            let f = FieldDescriptor::gf(q).unwrap();
            for x in f.elements().filter(|x| !x.is_zero()) {
                assert_eq!(f.cube_class(&x).unwrap(), CubeClass::Trivial);
            }
        }
    }

    #[test]
    fn cube_classes_rationals() {
        let f = FieldDescriptor::rationals();
        // −16/27 = (−1)³ · 2⁴ / 3³ has cube-free part 2.
        let a = f.from_fraction(-16, 27);
        assert_eq!(
            f.cube_class(&a).unwrap(),
            CubeClass::CubeFree(vec![(2, 1)])
        );
        // 8 is a perfect cube.
        assert!(f.cube_class(&f.from_integer(8)).unwrap().is_identity());
        // 1/2 ~ 4 (exponent −1 ≡ 2 mod 3).
        assert_eq!(
            f.cube_class(&f.from_fraction(1, 2)).unwrap(),
            CubeClass::CubeFree(vec![(2, 2)])
        );
        // Multiplicativity on a small sample.
        for (a, b) in [(6, 10), (-4, 9), (12, 18), (7, -14)] {
            let ca = f.cube_class(&f.from_integer(a)).unwrap();
            let cb = f.cube_class(&f.from_integer(b)).unwrap();
            let cab = f.cube_class(&f.from_integer(a * b)).unwrap();
            assert_eq!(ca.combine(&cb), cab);
        }
        assert_eq!(f.cube_class(&f.zero()), Err(FieldError::ZeroElement));
    }

    #[test]
    fn cube_class_overflow_and_huge_cubes() {
        let f = FieldDescriptor::rationals();
        // (10^6 + 3) is prime and beyond the trial bound, and its square is
        // not a perfect cube.
        let p = 1_000_003i64;
        let big = f.from_fraction(p * p, 1);
        // p itself divides out during trial division? No: p > bound, so the
        // whole residue survives and is not a cube.
        assert_eq!(f.cube_class(&big), Err(FieldError::FactorizationOverflow));
        // A huge perfect cube is fine even though its root is beyond the
        // bound.
        let cube = BigInt::from(p).pow(3);
        let elem = FieldElement {
            field: f,
            repr: Repr::Rational(BigRational::from_integer(cube)),
        };
        assert!(f.cube_class(&elem).unwrap().is_identity());
    }

    #[test]
    fn norm_equation_gf9() {
        let k = FieldDescriptor::gf(9).unwrap();
        let f = FieldDescriptor::prime(3).unwrap();
        let alpha = f.from_integer(2);
        let beta = solve_norm_equation(&k, &alpha).unwrap();
        // Independent check: β⁴ = 2, and β is the least such in canonical
        // order, verified by scanning all of GF(9).
        let alpha_k = k.from_coeffs(&[2]);
        assert_eq!(k.pow(&beta, 4), alpha_k);
        let least = k
            .elements()
            .find(|b| k.pow(b, 4) == alpha_k)
            .unwrap();
        assert_eq!(beta, least);
    }

    #[test]
    fn norm_equation_gf25() {
        let k = FieldDescriptor::gf(25).unwrap();
        let f = FieldDescriptor::prime(5).unwrap();
        for a in 1..5 {
            let alpha = f.from_integer(a);
            let beta = solve_norm_equation(&k, &alpha).unwrap();
            let alpha_k = k.from_coeffs(&[a as u64]);
            assert_eq!(k.pow(&beta, 6), alpha_k);
        }
    }

    #[test]
    fn norm_equation_rejects_bad_inputs() {
        let k = FieldDescriptor::gf(9).unwrap();
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(
            solve_norm_equation(&f3, &f3.one()),
            Err(FieldError::NotQuadraticExtension)
        );
        assert_eq!(
            solve_norm_equation(&k, &f7.one()),
            Err(FieldError::NotQuadraticExtension)
        );
        assert_eq!(
            solve_norm_equation(&k, &f3.zero()),
            Err(FieldError::ZeroElement)
        );
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f4 = FieldDescriptor::gf(4).unwrap();
        for x in f4.elements() {
            let s = x.to_string();
            assert_eq!(f4.parse_element(&s).unwrap(), x, "round trip {s}");
        }
        let f9 = FieldDescriptor::gf(9).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.parse_element(&x.to_string()).unwrap(), x);
        }
        let q = FieldDescriptor::rationals();
        for s in ["2/3", "-7", "0", "22/7", "-3/5"] {
            let x = q.parse_element(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!(q.parse_element("2/4").unwrap().to_string(), "1/2");
        assert!(f4.parse_element("t^5").is_err());
        assert!(q.parse_element("abc").is_err());
    }

    #[test]
    fn rational_canonical_order_is_numerator_then_denominator() {
        let q = FieldDescriptor::rationals();
        let a = q.from_fraction(1, 3);
        let b = q.from_fraction(2, 3);
        let c = q.from_fraction(1, 2);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        // 1/3 < 1/2 in canonical order (same numerator, compare denominator)
        // even though the values order the other way.
        assert_eq!(c.canonical_cmp(&a), Ordering::Less);
    }

    #[test]
    fn cube_roots_are_exact_and_least() {
        // Finite: every element has a root when 3 ∤ q−1; otherwise only the
        // cubes do, and the reported root is the canonical-least of three.
        for q in [2u64, 3, 4, 5, 7, 9, 13] {
            let f = FieldDescriptor::gf(q).unwrap();
            for x in f.elements() {
                match f.cube_root(&x) {
                    Some(r) => {
                        assert_eq!(f.pow(&r, 3), x);
                        // Least root: nothing smaller cubes to x.
                        assert!(f
                            .elements()
                            .filter(|y| f.pow(y, 3) == x)
                            .all(|y| r.canonical_cmp(&y) != Ordering::Greater));
                    }
                    None => assert!(f.elements().all(|y| f.pow(&y, 3) != x)),
                }
            }
        }
        let rat = FieldDescriptor::rationals();
        let cases = [
            ((8, 27), Some((2, 3))),
            ((-8, 27), Some((-2, 3))),
            ((1, 1), Some((1, 1))),
            ((2, 1), None),
            ((8, 9), None),
        ];
        for ((n, d), want) in cases {
            let x = rat.from_fraction(n, d);
            let got = rat.cube_root(&x);
            match want {
                Some((rn, rd)) => assert_eq!(got.unwrap(), rat.from_fraction(rn, rd)),
                None => assert!(got.is_none()),
            }
        }
    }
}

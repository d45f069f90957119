//! Prime-field scalar arithmetic, big-integer binomials, graded monomial
//! bases, and the row recipes shared by every bundle family.
//!
//! Everything here is immutable after construction and safe for unrestricted
//! concurrent use. Monomials are enumerated in graded-lexicographic order
//! (largest first exponent first) so that coefficient vectors, matrices and
//! file output are bit-stable across runs.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default certification prime, 2^31 - 1. Products of two reduced values fit
/// comfortably in a u64 before reduction.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Default cap on matrix rows/columns and basis sizes.
pub const DEFAULT_MATRIX_CAP: usize = 20_000;

/// Cap on the number of component types a single enumeration may produce.
pub const TYPE_CAP: u128 = 1_000_000;

/// Attempts allowed when resampling degenerate points.
pub const RESAMPLE_BUDGET: u32 = 16;

/// Matrix-size cap, overridable through the `ND_MATRIX_CAP` environment
/// variable. Read once per process.
pub fn matrix_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("ND_MATRIX_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MATRIX_CAP)
    })
}

fn check_cap(what: &str, size: u128) -> Result<()> {
    let cap = matrix_cap() as u128;
    if size > cap {
        return Err(Error::SizeCap {
            what: what.to_string(),
            size,
            cap,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Prime-field arithmetic
// ---------------------------------------------------------------------------

/// Deterministic Miller-Rabin for u64 (the listed bases are exact below 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A validated odd-prime modulus. All scalar operations run through this
/// context; values are plain `u64` reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || p >= (1 << 63) || !is_prime_u64(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero. Fermat is fine here since the
    /// modulus is prime by construction.
    pub fn inv(self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::ZeroInput("inverse argument"));
        }
        Ok(self.pow(a, self.p - 2))
    }

    #[inline]
    pub fn reduce_u128(self, x: u128) -> u64 {
        (x % self.p as u128) as u64
    }

    pub fn reduce_big(self, x: &BigUint) -> u64 {
        (x % BigUint::from(self.p)).to_u64().unwrap()
    }

    pub fn scalar(self, value: u64) -> FieldScalar {
        FieldScalar {
            value: value % self.p,
            modulus: self.p,
        }
    }

    /// Uniform draw from `[0, p)`.
    pub fn random<R: rand::Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
}

/// A single reduced value together with its modulus. Operators panic on
/// modulus mismatch; mixing fields is a programming error, not a data error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldScalar {
    pub value: u64,
    pub modulus: u64,
}

impl FieldScalar {
    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<FieldScalar> {
        let v = self.field().inv(self.value)?;
        Ok(FieldScalar {
            value: v,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, exp: u64) -> FieldScalar {
        FieldScalar {
            value: self.field().pow(self.value, exp),
            modulus: self.modulus,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                assert_eq!(self.modulus, rhs.modulus, "field modulus mismatch");
                FieldScalar {
                    value: self.field().$op(self.value, rhs.value),
                    modulus: self.modulus,
                }
            }
        }
    };
}

scalar_binop!(Add, add, add);
scalar_binop!(Sub, sub, sub);
scalar_binop!(Mul, mul, mul);

impl std::ops::Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            value: self.field().neg(self.value),
            modulus: self.modulus,
        }
    }
}

// ---------------------------------------------------------------------------
// Binomials and graded dimensions
// ---------------------------------------------------------------------------

/// `binom(a, b)` in arbitrary precision.
pub fn binomial_big(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(a), BigUint::from(b))
}

/// Dimension of the space of degree-`t` forms in `n` variables,
/// `binom(n + t - 1, t)`, in arbitrary precision.
pub fn forms_dim_big(n: u32, t: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("variable count must be >= 1".into()));
    }
    Ok(binomial_big(n as u64 + t as u64 - 1, t as u64))
}

/// Same as [`forms_dim_big`], narrowed to `u64` with an explicit overflow
/// error rather than silent wraparound.
pub fn forms_dim(n: u32, t: u32) -> Result<u64> {
    let big = forms_dim_big(n, t)?;
    big.to_u64()
        .ok_or_else(|| Error::Overflow(format!("forms_dim({n}, {t}) = {big} does not fit in u64")))
}

/// Multinomial coefficient `e! / (b_1! ... b_n!)` reduced mod p. Computed in
/// arbitrary precision first so it stays correct for small primes.
pub fn multinomial_mod(parts: &[u32], field: PrimeField) -> u64 {
    let parts: Vec<BigUint> = parts.iter().map(|&b| BigUint::from(b)).collect();
    field.reduce_big(&num_integer::multinomial(&parts))
}

// ---------------------------------------------------------------------------
// Monomial bases and graded vectors
// ---------------------------------------------------------------------------

/// Indexed basis of the degree-`d` graded component of forms in `n`
/// variables. `index_of` and `exponent` are mutually inverse.
#[derive(Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: u32,
    d: u32,
    exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: u32, d: u32) -> Result<Arc<Self>> {
        let size_big = forms_dim_big(n, d)?;
        check_cap(&format!("monomial basis for n={n}, d={d}"), {
            size_big.to_u128().unwrap_or(u128::MAX)
        })?;
        let size = size_big.to_usize().unwrap();
        let mut exponents = Vec::with_capacity(size);
        let mut prefix = Vec::with_capacity(n as usize);
        enumerate_exponents(n, d, &mut prefix, &mut exponents);
        debug_assert_eq!(exponents.len(), size);
        let index = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Arc::new(MonomialBasis {
            n,
            d,
            exponents,
            index,
        }))
    }

    pub fn variables(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponent(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    pub fn index_of(&self, exponent: &[u32]) -> Option<usize> {
        self.index.get(exponent).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.exponents.iter().map(|e| e.as_slice())
    }
}

fn enumerate_exponents(n: u32, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 1 {
        let mut e = prefix.clone();
        e.push(d);
        out.push(e);
        return;
    }
    for lead in (0..=d).rev() {
        prefix.push(lead);
        enumerate_exponents(n - 1, d - lead, prefix, out);
        prefix.pop();
    }
}

/// Dense coefficient vector of a form in a fixed [`MonomialBasis`].
#[derive(Clone, Debug)]
pub struct GradedVector {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<u64>,
    modulus: u64,
}

impl PartialEq for GradedVector {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.basis.n == other.basis.n
            && self.basis.d == other.basis.d
            && self.coeffs == other.coeffs
    }
}

impl GradedVector {
    pub fn zero(basis: Arc<MonomialBasis>, field: PrimeField) -> Self {
        let len = basis.size();
        GradedVector {
            basis,
            coeffs: vec![0; len],
            modulus: field.modulus(),
        }
    }

    pub fn from_coeffs(
        basis: Arc<MonomialBasis>,
        coeffs: Vec<u64>,
        field: PrimeField,
    ) -> Result<Self> {
        if coeffs.len() != basis.size() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector of length {} against basis of size {}",
                coeffs.len(),
                basis.size()
            )));
        }
        let p = field.modulus();
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Ok(GradedVector {
            basis,
            coeffs,
            modulus: p,
        })
    }

    /// The basis vector for a single monomial.
    pub fn monomial(basis: Arc<MonomialBasis>, index: usize, field: PrimeField) -> Self {
        let mut v = GradedVector::zero(basis, field);
        v.coeffs[index] = 1;
        v
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn degree(&self) -> u32 {
        self.basis.d
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GradedVector) -> Result<GradedVector> {
        self.compatible(other)?;
        let f = self.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(GradedVector {
            basis: Arc::clone(&self.basis),
            coeffs,
            modulus: self.modulus,
        })
    }

    pub fn scale(&self, c: u64) -> GradedVector {
        let f = self.field();
        GradedVector {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            modulus: self.modulus,
        }
    }

    /// Polynomial product into a caller-provided basis of degree
    /// `self.degree() + other.degree()`.
    pub fn multiply_into(
        &self,
        other: &GradedVector,
        target: &Arc<MonomialBasis>,
    ) -> Result<GradedVector> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.basis.n != other.basis.n
            || target.n != self.basis.n
            || target.d != self.basis.d + other.basis.d
        {
            return Err(Error::DimensionMismatch(format!(
                "product of degrees {} and {} into basis of degree {}",
                self.basis.d, other.basis.d, target.d
            )));
        }
        let f = self.field();
        let mut out = GradedVector::zero(Arc::clone(target), f);
        let n = self.basis.n as usize;
        let mut expo = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ea = self.basis.exponent(i);
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let eb = other.basis.exponent(j);
                for v in 0..n {
                    expo[v] = ea[v] + eb[v];
                }
                let k = target.index_of(&expo).expect("product monomial in basis");
                out.coeffs[k] = f.add(out.coeffs[k], f.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Polynomial product, constructing the target basis on the fly.
    pub fn multiply(&self, other: &GradedVector) -> Result<GradedVector> {
        let target = MonomialBasis::new(self.basis.n, self.basis.d + other.basis.d)?;
        self.multiply_into(other, &target)
    }

    /// Evaluate at a point of GF(p)^n.
    pub fn eval(&self, point: &[u64]) -> Result<u64> {
        if point.len() != self.basis.n as usize {
            return Err(Error::DimensionMismatch(format!(
                "evaluation point of length {} in {} variables",
                point.len(),
                self.basis.n
            )));
        }
        let f = self.field();
        let mut acc = 0u64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = c;
            for (v, &e) in self.basis.exponent(i).iter().enumerate() {
                if e > 0 {
                    term = f.mul(term, f.pow(point[v], e as u64));
                }
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    }

    fn compatible(&self, other: &GradedVector) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.basis.n != other.basis.n || self.basis.d != other.basis.d {
            return Err(Error::DimensionMismatch(
                "graded vectors live in different components".into(),
            ));
        }
        Ok(())
    }
}

/// Coefficient row of `f * x^mu` in the `target` basis, as raw coefficients.
/// `mu` must have degree `target.d - f.degree()`.
pub fn shift_by_monomial(
    f: &GradedVector,
    mu: &[u32],
    target: &Arc<MonomialBasis>,
) -> Result<Vec<u64>> {
    let n = f.basis().n as usize;
    if mu.len() != n || target.n != f.basis().n {
        return Err(Error::DimensionMismatch("monomial shift arity".into()));
    }
    let mu_deg: u32 = mu.iter().sum();
    if f.degree() + mu_deg != target.d {
        return Err(Error::DimensionMismatch(format!(
            "shift of a degree-{} form by a degree-{mu_deg} monomial into degree {}",
            f.degree(),
            target.d
        )));
    }
    let mut row = vec![0u64; target.size()];
    let mut expo = vec![0u32; n];
    for (i, &c) in f.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let e = f.basis().exponent(i);
        for v in 0..n {
            expo[v] = e[v] + mu[v];
        }
        let k = target.index_of(&expo).expect("shifted monomial in basis");
        row[k] = c;
    }
    Ok(row)
}

/// Rows spanning `f * C[x]_{b - deg f}` inside the degree-`b` component:
/// one row per degree-`(b - deg f)` monomial, in basis order.
pub fn multiplication_rows(f: &GradedVector, b: u32) -> Result<Vec<GradedVector>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("multiplier form"));
    }
    let a = f.degree();
    if b < a {
        return Err(Error::InvalidArgument(format!(
            "target degree {b} below form degree {a}"
        )));
    }
    let multipliers = MonomialBasis::new(f.basis().n, b - a)?;
    let target = MonomialBasis::new(f.basis().n, b)?;
    let field = f.field();
    let mut rows = Vec::with_capacity(multipliers.size());
    for mu in multipliers.iter() {
        let row = shift_by_monomial(f, mu, &target)?;
        rows.push(GradedVector::from_coeffs(
            Arc::clone(&target),
            row,
            field,
        )?);
    }
    Ok(rows)
}

/// Coefficients of `<point, x>^e` via the multinomial theorem mod p.
pub fn power_linear_form(point: &[u64], e: u32, field: PrimeField) -> Result<GradedVector> {
    if point.iter().all(|&c| c % field.modulus() == 0) {
        return Err(Error::ZeroInput("linear-form point"));
    }
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let basis = MonomialBasis::new(point.len() as u32, e)?;
    let mut coeffs = Vec::with_capacity(basis.size());
    for beta in basis.iter() {
        let mut c = multinomial_mod(beta, field);
        for (v, &b) in beta.iter().enumerate() {
            if c == 0 {
                break;
            }
            if b > 0 {
                c = field.mul(c, field.pow(point[v], b as u64));
            }
        }
        coeffs.push(c);
    }
    GradedVector::from_coeffs(basis, coeffs, field)
}

// ---------------------------------------------------------------------------
// Component types
// ---------------------------------------------------------------------------

/// Multi-index recording how many points are drawn from each component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentType {
    pub entries: Vec<u64>,
}

impl ComponentType {
    pub fn new(entries: Vec<u64>) -> Self {
        ComponentType { entries }
    }

    pub fn zero(k: usize) -> Self {
        ComponentType {
            entries: vec![0; k],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of points, `|alpha|`.
    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// `alpha + s * e_j`.
    pub fn bump(&self, j: usize, s: u64) -> Self {
        let mut entries = self.entries.clone();
        entries[j] += s;
        ComponentType { entries }
    }

    /// `alpha + (s, ..., s)`.
    pub fn bump_all(&self, s: u64) -> Self {
        ComponentType {
            entries: self.entries.iter().map(|&a| a + s).collect(),
        }
    }
}

impl std::fmt::Display for ComponentType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All types `alpha` in N_0^k with `|alpha| = r`, in decreasing
/// lexicographic order; the count is `binom(r + k - 1, k - 1)`.
pub fn enumerate_types(k: usize, r: u64) -> Result<Vec<ComponentType>> {
    if k == 0 {
        return Err(Error::InvalidArgument("component count must be >= 1".into()));
    }
    let count = binomial_big(r + k as u64 - 1, k as u64 - 1);
    let count_u128 = count.to_u128().unwrap_or(u128::MAX);
    if count_u128 > TYPE_CAP {
        return Err(Error::TypeCap {
            count: count_u128,
            cap: TYPE_CAP,
        });
    }
    let mut out = Vec::with_capacity(count_u128 as usize);
    let mut prefix = Vec::with_capacity(k);
    fn gen(k: usize, r: u64, prefix: &mut Vec<u64>, out: &mut Vec<ComponentType>) {
        if k == 1 {
            let mut e = prefix.clone();
            e.push(r);
            out.push(ComponentType::new(e));
            return;
        }
        for lead in (0..=r).rev() {
            prefix.push(lead);
            gen(k - 1, r - lead, prefix, out);
            prefix.pop();
        }
    }
    gen(k, r, &mut prefix, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    /// Independent Pascal-triangle oracle for graded dimensions.
    fn pascal_forms_dim(n: u32, t: u32) -> u64 {
        let mut table = vec![vec![0u64; t as usize + 1]; n as usize + 1];
        for row in table.iter_mut().skip(1) {
            row[0] = 1;
        }
        for tt in 0..=t as usize {
            table[1][tt] = 1;
        }
        for nn in 2..=n as usize {
            for tt in 1..=t as usize {
                table[nn][tt] = table[nn - 1][tt] + table[nn][tt - 1];
            }
        }
        table[n as usize][t as usize]
    }

    #[test]
    fn forms_dim_examples() {
        assert_eq!(forms_dim(5, 0).unwrap(), 1);
        assert_eq!(forms_dim(3, 1).unwrap(), 3);
        // Frozen from the Pascal oracle.
        assert_eq!(pascal_forms_dim(27, 5), 169_911);
        assert_eq!(forms_dim(27, 5).unwrap(), 169_911);
        assert_eq!(pascal_forms_dim(3, 4), 15);
        assert_eq!(forms_dim(3, 4).unwrap(), 15);
    }

    #[test]
    fn forms_dim_rejects_zero_variables() {
        assert!(forms_dim(0, 3).is_err());
    }

    #[test]
    fn forms_dim_overflow_is_explicit() {
        // binom(2^32 + 59, 60) blows far past u64.
        let err = forms_dim(u32::MAX, 60).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn pascal_identity_range() {
        for n in 2..=12u32 {
            for t in 1..=12u32 {
                assert_eq!(
                    forms_dim(n, t).unwrap(),
                    forms_dim(n - 1, t).unwrap() + forms_dim(n, t - 1).unwrap(),
                    "Pascal identity at n={n}, t={t}"
                );
            }
        }
    }

    #[test]
    fn field_basics() {
        let f = fp();
        assert_eq!(f.add(f.modulus() - 1, 1), 0);
        assert_eq!(f.sub(0, 1), f.modulus() - 1);
        let a = 123_456_789u64;
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), 1);
        assert!(f.inv(0).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(1_000_000_007).is_ok());
    }

    #[test]
    fn scalar_ops() {
        let f = fp();
        let a = f.scalar(5);
        let b = f.scalar(7);
        assert_eq!((a * b).value, 35);
        assert_eq!((a - b).value, f.modulus() - 2);
        assert_eq!((-a).value, f.modulus() - 5);
        assert_eq!(a.pow(3).value, 125);
    }

    #[test]
    fn basis_small_enumerations() {
        let b = MonomialBasis::new(2, 2).unwrap();
        let expos: Vec<&[u32]> = b.iter().collect();
        assert_eq!(expos, vec![&[2, 0][..], &[1, 1], &[0, 2]]);
        assert_eq!(b.size(), 3);

        let b = MonomialBasis::new(1, 7).unwrap();
        assert_eq!(b.size(), 1);
        assert_eq!(b.exponent(0), &[7]);

        let b = MonomialBasis::new(3, 4).unwrap();
        assert_eq!(b.size(), 15);
        assert_eq!(b.size() as u64, pascal_forms_dim(3, 4));
    }

    #[test]
    fn basis_round_trip_bijection() {
        // Every (n, d) in the window with size <= 10^4, plus tall and flat
        // edge shapes.
        let mut cases: Vec<(u32, u32)> = (1..=12).flat_map(|n| (0..=12).map(move |d| (n, d))).collect();
        cases.extend([(1, 50), (2, 100), (3, 60), (30, 2), (100, 1)]);
        for (n, d) in cases {
            let size = forms_dim(n, d).unwrap();
            if size > 10_000 {
                continue;
            }
            let b = MonomialBasis::new(n, d).unwrap();
            assert_eq!(b.size() as u64, size);
            for i in 0..b.size() {
                let e = b.exponent(i).to_vec();
                assert_eq!(e.iter().sum::<u32>(), d);
                assert_eq!(b.index_of(&e), Some(i));
            }
        }
    }

    #[test]
    fn basis_refuses_oversize() {
        // binom(39, 10) = 635745396 rows, far past the default cap.
        let err = MonomialBasis::new(30, 10).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }));
    }

    #[test]
    fn multiplication_rows_monomial_cases() {
        let f = fp();
        let b2 = MonomialBasis::new(2, 2).unwrap();
        // f = x^2 in two variables, target degree 3: rows x^3, x^2 y.
        let xsq = GradedVector::monomial(Arc::clone(&b2), 0, f);
        let rows = multiplication_rows(&xsq, 3).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].coeffs(), &[1, 0, 0, 0]);
        assert_eq!(rows[1].coeffs(), &[0, 1, 0, 0]);

        // f = x + y, b = 1: the single row (1, 1).
        let b1 = MonomialBasis::new(2, 1).unwrap();
        let lin = GradedVector::from_coeffs(b1, vec![1, 1], f).unwrap();
        let rows = multiplication_rows(&lin, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].coeffs(), &[1, 1]);
    }

    #[test]
    fn multiplication_rows_zero_form_rejected() {
        let f = fp();
        let b = MonomialBasis::new(2, 2).unwrap();
        let z = GradedVector::zero(b, f);
        assert!(matches!(
            multiplication_rows(&z, 3),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn power_linear_form_examples() {
        let f = fp();
        let v = power_linear_form(&[1, 1], 2, f).unwrap();
        assert_eq!(v.coeffs(), &[1, 2, 1]);

        let v = power_linear_form(&[1, 0], 3, f).unwrap();
        assert_eq!(v.coeffs(), &[1, 0, 0, 0]);

        assert!(power_linear_form(&[0, 0], 2, f).is_err());
    }

    #[test]
    fn power_linear_form_evaluates_to_power_of_pairing() {
        let f = fp();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let point: Vec<u64> = (0..3).map(|_| f.random(&mut rng)).collect();
            if point.iter().all(|&c| c == 0) {
                continue;
            }
            let v = power_linear_form(&point, 4, f).unwrap();
            let pairing = point
                .iter()
                .fold(0u64, |acc, &c| f.add(acc, f.mul(c, c)));
            assert_eq!(v.eval(&point).unwrap(), f.pow(pairing, 4));
        }
    }

    #[test]
    fn enumerate_types_examples() {
        let ts = enumerate_types(2, 3).unwrap();
        let as_vecs: Vec<Vec<u64>> = ts.iter().map(|t| t.entries.clone()).collect();
        assert_eq!(
            as_vecs,
            vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]
        );
        assert_eq!(enumerate_types(1, 5).unwrap(), vec![ComponentType::new(vec![5])]);
        assert_eq!(enumerate_types(3, 2).unwrap().len(), 6);
    }

    #[test]
    fn enumerate_types_cap() {
        let err = enumerate_types(4, 5000).unwrap_err();
        assert!(matches!(err, Error::TypeCap { .. }));
    }

    proptest! {
        #[test]
        fn type_count_matches_stars_and_bars(k in 1usize..5, r in 0u64..12) {
            let ts = enumerate_types(k, r).unwrap();
            let expected = binomial_big(r + k as u64 - 1, k as u64 - 1);
            prop_assert_eq!(BigUint::from(ts.len()), expected);
            for t in &ts {
                prop_assert_eq!(t.total(), r);
            }
        }

        #[test]
        fn multiplication_rows_linear_in_f(seed in 0u64..500) {
            use rand::SeedableRng;
            let field = fp();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let b = MonomialBasis::new(3, 2).unwrap();
            let f1: Vec<u64> = (0..b.size()).map(|_| field.random(&mut rng)).collect();
            let f2: Vec<u64> = (0..b.size()).map(|_| field.random(&mut rng)).collect();
            let g1 = GradedVector::from_coeffs(Arc::clone(&b), f1.clone(), field).unwrap();
            let g2 = GradedVector::from_coeffs(Arc::clone(&b), f2.clone(), field).unwrap();
            let sum = g1.add(&g2).unwrap();
            prop_assume!(!g1.is_zero() && !g2.is_zero() && !sum.is_zero());
            let r1 = multiplication_rows(&g1, 4).unwrap();
            let r2 = multiplication_rows(&g2, 4).unwrap();
            let rs = multiplication_rows(&sum, 4).unwrap();
            for ((a, b2), s) in r1.iter().zip(&r2).zip(&rs) {
                prop_assert_eq!(&a.add(b2).unwrap(), s);
            }
        }

        #[test]
        fn power_multiplicativity(seed in 0u64..200, e1 in 1u32..4, e2 in 1u32..4) {
            use rand::SeedableRng;
            let field = fp();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let point: Vec<u64> = (0..3).map(|_| field.random(&mut rng)).collect();
            prop_assume!(point.iter().any(|&c| c != 0));
            let a = power_linear_form(&point, e1, field).unwrap();
            let b = power_linear_form(&point, e2, field).unwrap();
            let ab = a.multiply(&b).unwrap();
            let direct = power_linear_form(&point, e1 + e2, field).unwrap();
            prop_assert_eq!(ab, direct);
        }
    }
}

//! Graded pieces of principal ideals: the fiber attached to a form `f` of
//! degree `d_i` is `f * C[x]_{top - d_i}` inside the degree-`top` component,
//! where `top = d_k + shift`.

use rand::Rng;

use crate::error::Result;
use crate::fieldcore::{forms_dim, multiplication_rows, GradedVector, MonomialBasis, PrimeField};
use crate::linalg::DenseMatrix;

use super::SampleData;

/// Rank on the degree-`d_i` component is `N_{shift + d_k - d_i}`; with the
/// degrees ascending this comes out nonincreasing.
pub fn ranks(n: u32, degrees: &[u32], shift: u32) -> Result<Vec<u64>> {
    let top = degrees[degrees.len() - 1] + shift;
    degrees.iter().map(|&d| forms_dim(n, top - d)).collect()
}

/// Uniform random coefficient vector of a degree-`d` form.
pub fn sample(n: u32, d: u32, field: PrimeField, rng: &mut impl Rng) -> Result<SampleData> {
    let basis = MonomialBasis::new(n, d)?;
    let coeffs: Vec<u64> = (0..basis.size()).map(|_| field.random(rng)).collect();
    Ok(SampleData::Form(GradedVector::from_coeffs(
        basis, coeffs, field,
    )?))
}

pub fn fiber(f: &GradedVector, top: u32) -> Result<DenseMatrix> {
    let rows = multiplication_rows(f, top)?;
    DenseMatrix::from_graded_rows(&rows)
}

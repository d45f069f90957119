//! Powers of linear forms: the fiber over a point `p` with multiplicity `m`
//! is `<p, x>^{D - m + 1} * C[x]_{m - 1}` inside the degree-`D` component.
//! Under apolarity this is the orthogonal complement of the degree-`D` piece
//! of the fat-point ideal at `p`.

use rand::Rng;

use crate::error::Result;
use crate::fieldcore::{
    forms_dim, power_linear_form, shift_by_monomial, MonomialBasis, PrimeField,
};
use crate::linalg::DenseMatrix;

use super::SampleData;

/// Rank on the multiplicity-`m_i` component is `N_{m_i - 1}`.
pub fn ranks(n: u32, multiplicities: &[u32]) -> Result<Vec<u64>> {
    multiplicities.iter().map(|&m| forms_dim(n, m - 1)).collect()
}

pub fn sample(n: u32, field: PrimeField, rng: &mut impl Rng) -> SampleData {
    SampleData::Point((0..n).map(|_| field.random(rng)).collect())
}

pub fn fiber(
    n: u32,
    point: &[u64],
    degree: u32,
    multiplicity: u32,
    field: PrimeField,
) -> Result<DenseMatrix> {
    let power = power_linear_form(point, degree - multiplicity + 1, field)?;
    let multipliers = MonomialBasis::new(n, multiplicity - 1)?;
    let target = MonomialBasis::new(n, degree)?;
    let rows: Result<Vec<Vec<u64>>> = multipliers
        .iter()
        .map(|mu| shift_by_monomial(&power, mu, &target))
        .collect();
    DenseMatrix::from_rows(rows?, target.size(), field)
}

//! Tangent bundles of degree-5 moment varieties.
//!
//! A recipe `(a, b)` describes the moment form `l^5 + a*q*l^3 + b*q^2*l`
//! with `l = <mean, x>` and `q = x^T S x` for a symmetric scale matrix `S`.
//! The Gaussian family is `(10, 15)`, the symmetric Laplace family is
//! `(10, 30)`; other invariant families plug in through
//! [`MomentRecipe::custom`]. Differentiating in the mean and in the upper
//! triangle of `S` gives the tangent rows:
//!
//! * mean direction j:  `(5 l^4 + 3a q l^2 + b q^2) * x_j`
//! * scale direction (j, j):  `(a l^3 + 2b q l) * x_j^2`
//! * scale direction (j, k), j < k:  `(a l^3 + 2b q l) * 2 x_j x_k`

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcore::{shift_by_monomial, GradedVector, MonomialBasis, PrimeField};
use crate::linalg::DenseMatrix;

use super::SampleData;

/// Coefficients of one degree-5 moment form family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RecipeRepr")]
pub struct MomentRecipe {
    pub name: String,
    pub a: u64,
    pub b: u64,
}

impl MomentRecipe {
    pub fn gaussian() -> Self {
        MomentRecipe {
            name: "gaussian".into(),
            a: 10,
            b: 15,
        }
    }

    pub fn laplace() -> Self {
        MomentRecipe {
            name: "laplace".into(),
            a: 10,
            b: 30,
        }
    }

    /// Plug-in point for other parameterized families with moment forms of
    /// the same shape.
    pub fn custom(name: impl Into<String>, a: u64, b: u64) -> Self {
        MomentRecipe {
            name: name.into(),
            a,
            b,
        }
    }
}

/// Accepts either a bare family name or a full recipe object.
#[derive(Deserialize)]
#[serde(untagged)]
enum RecipeRepr {
    Name(String),
    Full { name: String, a: u64, b: u64 },
}

impl TryFrom<RecipeRepr> for MomentRecipe {
    type Error = String;
    fn try_from(repr: RecipeRepr) -> std::result::Result<Self, String> {
        match repr {
            RecipeRepr::Name(name) => match name.as_str() {
                "gaussian" => Ok(MomentRecipe::gaussian()),
                "laplace" => Ok(MomentRecipe::laplace()),
                other => Err(format!(
                    "unknown moment family '{other}' (use \"gaussian\", \"laplace\", or an object with name/a/b)"
                )),
            },
            RecipeRepr::Full { name, a, b } => Ok(MomentRecipe { name, a, b }),
        }
    }
}

/// Tangent dimension: mean plus symmetric scale parameters.
pub fn rank(n: u32) -> u64 {
    n as u64 + n as u64 * (n as u64 + 1) / 2
}

/// Index of the (j, k) entry, j <= k, in the row-wise upper triangle.
pub fn upper_index(n: usize, j: usize, k: usize) -> usize {
    debug_assert!(j <= k && k < n);
    j * n - j * (j + 1) / 2 + k
}

pub fn sample(n: u32, field: PrimeField, rng: &mut impl Rng) -> SampleData {
    let n = n as usize;
    let mean = (0..n).map(|_| field.random(rng)).collect();
    let cov_upper = (0..n * (n + 1) / 2).map(|_| field.random(rng)).collect();
    SampleData::MeanCov { mean, cov_upper }
}

struct Forms {
    linear: GradedVector,
    quadratic: GradedVector,
    b3: Arc<MonomialBasis>,
    b4: Arc<MonomialBasis>,
    b5: Arc<MonomialBasis>,
}

fn build_forms(n: u32, mean: &[u64], cov_upper: &[u64], field: PrimeField) -> Result<Forms> {
    let nn = n as usize;
    if mean.len() != nn || cov_upper.len() != nn * (nn + 1) / 2 {
        return Err(Error::DimensionMismatch(
            "moment parameters have the wrong shape".into(),
        ));
    }
    if mean.iter().all(|&c| c % field.modulus() == 0) {
        return Err(Error::ZeroInput("mean vector"));
    }
    if cov_upper.iter().all(|&c| c % field.modulus() == 0) {
        return Err(Error::ZeroInput("scale matrix"));
    }
    let b1 = MonomialBasis::new(n, 1)?;
    let b2 = MonomialBasis::new(n, 2)?;
    let linear = GradedVector::from_coeffs(b1, mean.to_vec(), field)?;
    // q = sum_j S_jj x_j^2 + sum_{j<k} 2 S_jk x_j x_k.
    let mut q = vec![0u64; b2.size()];
    let mut expo = vec![0u32; nn];
    for j in 0..nn {
        for k in j..nn {
            expo.iter_mut().for_each(|e| *e = 0);
            expo[j] += 1;
            expo[k] += 1;
            let idx = b2.index_of(&expo).expect("degree-2 monomial");
            let c = cov_upper[upper_index(nn, j, k)];
            q[idx] = if j == k { c % field.modulus() } else { field.mul(2, c) };
        }
    }
    let quadratic = GradedVector::from_coeffs(b2, q, field)?;
    Ok(Forms {
        linear,
        quadratic,
        b3: MonomialBasis::new(n, 3)?,
        b4: MonomialBasis::new(n, 4)?,
        b5: MonomialBasis::new(n, 5)?,
    })
}

pub fn fiber(
    n: u32,
    recipe: &MomentRecipe,
    mean: &[u64],
    cov_upper: &[u64],
    field: PrimeField,
) -> Result<DenseMatrix> {
    let forms = build_forms(n, mean, cov_upper, field)?;
    let nn = n as usize;
    let l = &forms.linear;
    let q = &forms.quadratic;
    let l2 = l.multiply(l)?;
    let l3 = l2.multiply_into(l, &forms.b3)?;
    let l4 = l2.multiply_into(&l2, &forms.b4)?;
    let ql = q.multiply_into(l, &forms.b3)?;
    let ql2 = q.multiply_into(&l2, &forms.b4)?;
    let q2 = q.multiply_into(q, &forms.b4)?;

    // mean multiplier: 5 l^4 + 3a q l^2 + b q^2 (degree 4)
    let mean_poly = l4
        .scale(5)
        .add(&ql2.scale(field.reduce_u128(3 * recipe.a as u128)))?
        .add(&q2.scale(field.reduce_u128(recipe.b as u128)))?;
    // scale multiplier: a l^3 + 2b q l (degree 3)
    let scale_poly = l3
        .scale(field.reduce_u128(recipe.a as u128))
        .add(&ql.scale(field.reduce_u128(2 * recipe.b as u128)))?;

    let mut rows = Vec::with_capacity(rank(n) as usize);
    let mut expo = vec![0u32; nn];
    for j in 0..nn {
        expo.iter_mut().for_each(|e| *e = 0);
        expo[j] = 1;
        rows.push(shift_by_monomial(&mean_poly, &expo, &forms.b5)?);
    }
    for j in 0..nn {
        for k in j..nn {
            expo.iter_mut().for_each(|e| *e = 0);
            expo[j] += 1;
            expo[k] += 1;
            let mut row = shift_by_monomial(&scale_poly, &expo, &forms.b5)?;
            if j != k {
                for v in row.iter_mut() {
                    *v = field.mul(2, *v);
                }
            }
            rows.push(row);
        }
    }
    DenseMatrix::from_rows(rows, forms.b5.size(), field)
}

/// The moment form itself, `l^5 + a q l^3 + b q^2 l`, as a degree-5 vector.
pub fn moment_form(
    n: u32,
    recipe: &MomentRecipe,
    mean: &[u64],
    cov_upper: &[u64],
    field: PrimeField,
) -> Result<GradedVector> {
    let forms = build_forms(n, mean, cov_upper, field)?;
    let l = &forms.linear;
    let q = &forms.quadratic;
    let l2 = l.multiply(l)?;
    let l3 = l2.multiply_into(l, &forms.b3)?;
    let l5 = l2.multiply_into(&l3, &forms.b5)?;
    let ql3 = q.multiply_into(&l3, &forms.b5)?;
    let q2 = q.multiply_into(q, &forms.b4)?;
    let q2l = q2.multiply_into(l, &forms.b5)?;
    l5.add(&ql3.scale(field.reduce_u128(recipe.a as u128)))?
        .add(&q2l.scale(field.reduce_u128(recipe.b as u128)))
}

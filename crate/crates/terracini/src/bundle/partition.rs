//! Partition-rank-one varieties: tensors splitting as `t_1 ⊗ ... ⊗ t_l`
//! with the slot orders prescribed by a partition of the tensor order.
//!
//! Permutations that produce the same slot-size sequence parametrize the
//! same variety, so components are the distinct multiset permutations of
//! the parts. Tensor coordinates use row-major multi-index order, first
//! slot varying slowest.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fieldcore::PrimeField;
use crate::linalg::DenseMatrix;

use super::SampleData;

/// Distinct slot-size sequences, lexicographically ascending.
pub fn components(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut slots = parts.to_vec();
    slots.sort_unstable();
    let mut out = vec![slots.clone()];
    while next_permutation(&mut slots) {
        out.push(slots.clone());
    }
    out
}

fn next_permutation(seq: &mut [u32]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let Some(i) = (0..seq.len() - 1).rev().find(|&i| seq[i] < seq[i + 1]) else {
        return false;
    };
    let j = (i + 1..seq.len()).rev().find(|&j| seq[j] > seq[i]).unwrap();
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

fn checked_pow(n: u32, e: u32) -> Result<u64> {
    (n as u64).checked_pow(e).ok_or_else(|| {
        Error::Overflow(format!("tensor dimension {n}^{e} does not fit in u64"))
    })
}

/// Ambient tensor space dimension `n^d`.
pub fn ambient(n: u32, order: u32) -> Result<u64> {
    checked_pow(n, order)
}

/// Every component is equidimensional: `sum n^{k_i} - l + 1`.
pub fn component_dim(n: u32, parts: &[u32]) -> Result<u64> {
    let mut total: u64 = 0;
    for &k in parts {
        total = total
            .checked_add(checked_pow(n, k)?)
            .ok_or_else(|| Error::Overflow("component dimension".into()))?;
    }
    Ok(total - parts.len() as u64 + 1)
}

/// One factor tensor per slot, each drawn uniformly.
pub fn sample(
    n: u32,
    slots: &[u32],
    field: PrimeField,
    rng: &mut impl Rng,
) -> Result<SampleData> {
    let mut factors = Vec::with_capacity(slots.len());
    for &k in slots {
        let len = checked_pow(n, k)? as usize;
        factors.push((0..len).map(|_| field.random(rng)).collect());
    }
    Ok(SampleData::Factors(factors))
}

/// Kronecker product of all factors, first slot varying slowest.
pub fn kron_all(factors: &[Vec<u64>], field: PrimeField) -> Vec<u64> {
    let mut acc = vec![1u64];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for &a in &acc {
            for &b in f {
                next.push(field.mul(a, b));
            }
        }
        acc = next;
    }
    acc
}

/// Tangent rows at `t_1 ⊗ ... ⊗ t_l`: replace one slot at a time by each
/// basis tensor, `sum n^{k_j}` rows in total. The `l - 1` scaling overlaps
/// are left to the rank computation.
pub fn fiber(
    n: u32,
    slots: &[u32],
    factors: &[Vec<u64>],
    field: PrimeField,
) -> Result<DenseMatrix> {
    if factors.len() != slots.len() {
        return Err(Error::DimensionMismatch(
            "one factor tensor per slot required".into(),
        ));
    }
    for (j, f) in factors.iter().enumerate() {
        if f.len() as u64 != checked_pow(n, slots[j])? {
            return Err(Error::DimensionMismatch(format!(
                "factor {j} has length {}, slot of order {} needs {}",
                f.len(),
                slots[j],
                checked_pow(n, slots[j])?
            )));
        }
        if f.iter().all(|&c| c % field.modulus() == 0) {
            return Err(Error::ZeroInput("factor tensor"));
        }
    }
    let order: u32 = slots.iter().sum();
    let cols = ambient(n, order)?;
    let mut rows = Vec::new();
    let mut replaced = factors.to_vec();
    for j in 0..slots.len() {
        let len = factors[j].len();
        for beta in 0..len {
            let mut unit = vec![0u64; len];
            unit[beta] = 1;
            replaced[j] = unit;
            rows.push(kron_all(&replaced, field));
        }
        replaced[j] = factors[j].clone();
    }
    DenseMatrix::from_rows(rows, cols as usize, field)
}

//! Exact dense linear algebra over a prime field: rank by in-place Gaussian
//! elimination, vertical stacking, row-space intersection dimensions, and a
//! small fraction-free rational-rank oracle for cross-validation.
//!
//! Elimination uses plain partial pivoting by first nonzero entry; exact
//! arithmetic has no stability concern. The serial algorithm is the
//! reference; large row updates may run in parallel but produce bitwise
//! identical results since each row's arithmetic is independent.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fieldcore::{matrix_cap, GradedVector, PrimeField};

/// Row-major dense matrix over GF(p). Entries are kept reduced in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    modulus: u64,
}

const MERSENNE31: u64 = 2_147_483_647;

#[inline]
fn reduce_mersenne31(x: u64) -> u64 {
    // x < 2^62; two folds bring it below 2^31 + 1.
    let x = (x & MERSENNE31) + (x >> 31);
    let x = (x & MERSENNE31) + (x >> 31);
    if x >= MERSENNE31 {
        x - MERSENNE31
    } else {
        x
    }
}

/// `row[j] <- row[j] + scale * pivot[j] (mod p)`, the elimination inner loop.
#[inline]
fn row_axpy(row: &mut [u64], pivot: &[u64], scale: u64, p: u64) {
    if p == MERSENNE31 {
        for (r, &q) in row.iter_mut().zip(pivot) {
            *r = reduce_mersenne31(*r + scale * q);
        }
    } else if p < (1 << 31) {
        // scale * q < 2^62; adding a reduced value cannot overflow u64.
        for (r, &q) in row.iter_mut().zip(pivot) {
            *r = (*r + scale * q) % p;
        }
    } else {
        for (r, &q) in row.iter_mut().zip(pivot) {
            *r = ((*r as u128 + scale as u128 * q as u128) % p as u128) as u64;
        }
    }
}

/// Work threshold above which a pivot step updates trailing rows in parallel.
const PAR_AXPY_WORK: usize = 1 << 21;

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Result<Self> {
        let cap = matrix_cap();
        if rows > cap || cols > cap {
            return Err(Error::SizeCap {
                what: format!("{rows}x{cols} matrix"),
                size: rows.max(cols) as u128,
                cap: cap as u128,
            });
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            modulus: field.modulus(),
        })
    }

    /// Build from raw rows; entries are reduced mod p.
    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize, field: PrimeField) -> Result<Self> {
        let mut m = DenseMatrix::zeros(rows.len(), cols, field)?;
        let p = field.modulus();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {} in a {cols}-column matrix",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                m.entries[i * cols + j] = v % p;
            }
        }
        Ok(m)
    }

    pub fn from_graded_rows(rows: &[GradedVector]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidArgument("no rows given".into()))?;
        let cols = first.basis().size();
        let field = first.field();
        let mut m = DenseMatrix::zeros(rows.len(), cols, field)?;
        for (i, r) in rows.iter().enumerate() {
            if r.basis().size() != cols || r.modulus() != field.modulus() {
                return Err(Error::DimensionMismatch(
                    "rows from mixed graded components".into(),
                ));
            }
            m.entries[i * cols..(i + 1) * cols].copy_from_slice(r.coeffs());
        }
        Ok(m)
    }

    pub fn identity(n: usize, field: PrimeField) -> Result<Self> {
        let mut m = DenseMatrix::zeros(n, n, field)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.modulus).expect("modulus validated at construction")
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Vertical concatenation; errors on column or modulus mismatch.
    pub fn stack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns onto {}",
                other.cols, self.cols
            )));
        }
        let mut m = DenseMatrix::zeros(self.rows + other.rows, self.cols, self.field())?;
        m.entries[..self.entries.len()].copy_from_slice(&self.entries);
        m.entries[self.entries.len()..].copy_from_slice(&other.entries);
        Ok(m)
    }

    /// Stack many fiber matrices at once.
    pub fn stack_all(parts: &[DenseMatrix]) -> Result<DenseMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("nothing to stack".into()))?;
        let mut total = 0usize;
        for part in parts {
            if part.modulus != first.modulus {
                return Err(Error::ModulusMismatch(first.modulus, part.modulus));
            }
            if part.cols != first.cols {
                return Err(Error::DimensionMismatch(
                    "stacking matrices of different widths".into(),
                ));
            }
            total += part.rows;
        }
        let mut m = DenseMatrix::zeros(total, first.cols, first.field())?;
        let mut offset = 0;
        for part in parts {
            m.entries[offset..offset + part.entries.len()].copy_from_slice(&part.entries);
            offset += part.entries.len();
        }
        Ok(m)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: vec![0; self.entries.len()],
            modulus: self.modulus,
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        t
    }

    /// Exact rank over GF(p). The matrix itself is untouched.
    pub fn rank(&self) -> usize {
        let mut work = self.entries.clone();
        eliminate(&mut work, self.rows, self.cols, self.modulus)
    }

    /// Basis of the right kernel, `{v : M v = 0}`, as row vectors of length
    /// `cols`. Used by the oracle-side intersection computation in tests.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let field = self.field();
        let p = self.modulus;
        let mut work = self.entries.clone();
        // Reduced row echelon form with recorded pivot columns.
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(pr) = (pivot_row..self.rows).find(|&r| work[r * self.cols + col] != 0) else {
                continue;
            };
            if pr != pivot_row {
                for j in 0..self.cols {
                    work.swap(pr * self.cols + j, pivot_row * self.cols + j);
                }
            }
            let inv = field
                .inv(work[pivot_row * self.cols + col])
                .expect("pivot nonzero");
            for j in col..self.cols {
                let v = work[pivot_row * self.cols + j];
                work[pivot_row * self.cols + j] = field.mul(v, inv);
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = work[r * self.cols + col];
                if factor == 0 {
                    continue;
                }
                let neg = field.neg(factor);
                for j in col..self.cols {
                    let t = field.mul(neg, work[pivot_row * self.cols + j]);
                    work[r * self.cols + j] = field.add(work[r * self.cols + j], t);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                // x_pc = -work[r][free]
                v[pc] = (p - work[r * self.cols + free]) % p;
            }
            basis.push(v);
        }
        basis
    }
}

fn eliminate(entries: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let field = PrimeField::new(p).expect("modulus validated at construction");
    let mut rank = 0usize;
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(pr) = (pivot_row..rows).find(|&r| entries[r * cols + col] != 0) else {
            continue;
        };
        if pr != pivot_row {
            let (a, b) = entries.split_at_mut(pr * cols);
            a[pivot_row * cols..pivot_row * cols + cols].swap_with_slice(&mut b[..cols]);
        }
        let inv = field.inv(entries[pivot_row * cols + col]).expect("pivot nonzero");
        let (head, tail) = entries.split_at_mut((pivot_row + 1) * cols);
        let pivot = &head[pivot_row * cols + col..(pivot_row + 1) * cols];
        let below = rows - pivot_row - 1;
        let update = |row: &mut [u64]| {
            let factor = row[col];
            if factor != 0 {
                let scale = field.neg(field.mul(factor, inv));
                row_axpy(&mut row[col..], pivot, scale, p);
            }
        };
        if below * (cols - col) >= PAR_AXPY_WORK {
            tail.par_chunks_mut(cols).for_each(update);
        } else {
            tail.chunks_mut(cols).for_each(update);
        }
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// `dim(rowspace(A) ∩ rowspace(B))` via the Grassmann identity
/// `rank A + rank B - rank [A; B]`.
pub fn intersection_dim(a: &DenseMatrix, b: &DenseMatrix) -> Result<usize> {
    let stacked = a.stack(b)?;
    Ok(a.rank() + b.rank() - stacked.rank())
}

/// Exact rank of an integer matrix over the rationals by fraction-free
/// (Bareiss) elimination. Refuses matrices beyond 64 rows or columns.
pub fn rational_rank_oracle(matrix: &[Vec<BigInt>]) -> Result<usize> {
    let rows = matrix.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = matrix[0].len();
    if rows > 64 || cols > 64 {
        return Err(Error::SizeCap {
            what: "rational rank oracle".into(),
            size: rows.max(cols) as u128,
            cap: 64,
        });
    }
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for row in matrix {
        if row.len() != cols {
            return Err(Error::DimensionMismatch("ragged integer matrix".into()));
        }
        m.push(row.clone());
    }
    let mut rank = 0usize;
    let mut pivot_row = 0usize;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(pr) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pr, pivot_row);
        for r in pivot_row + 1..rows {
            for j in col + 1..cols {
                let num = &m[pivot_row][col] * &m[r][j] - &m[r][col] * &m[pivot_row][j];
                debug_assert!((&num % &prev).is_zero());
                m[r][j] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        debug_assert!(prev.is_positive() || prev.is_negative());
        pivot_row += 1;
        rank += 1;
    }
    Ok(rank)
}

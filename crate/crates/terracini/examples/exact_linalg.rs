//! The exact linear-algebra kernel on its own: mod-p rank, row-space
//! intersections, and the rational-rank cross-check that justifies reading
//! a full-rank specialization as a certificate.
//!
//! Run with: cargo run --release --example exact_linalg

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terracini::fieldcore::{PrimeField, DEFAULT_PRIME};
use terracini::linalg::{intersection_dim, rational_rank_oracle, DenseMatrix};

fn main() -> terracini::Result<()> {
    let field = PrimeField::new(DEFAULT_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // Rank under specialization: reducing an integer matrix mod p can only
    // lose rank, and almost never does.
    let ints: Vec<Vec<i64>> = (0..10)
        .map(|_| (0..10).map(|_| rng.random_range(-1000..=1000)).collect())
        .collect();
    let lifted: Vec<Vec<BigInt>> = ints
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let reduced: Vec<Vec<u64>> = ints
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| x.rem_euclid(field.modulus() as i64) as u64)
                .collect()
        })
        .collect();
    let modp = DenseMatrix::from_rows(reduced, 10, field)?.rank();
    let rational = rational_rank_oracle(&lifted)?;
    println!("random 10x10 integer matrix: rank {modp} mod p, {rational} over Q");
    assert!(modp <= rational);

    // Row-space intersections via the Grassmann identity.
    let a = random_matrix_demo(&mut rng, field, 4, 7)?;
    let b = random_matrix_demo(&mut rng, field, 5, 7)?;
    let meet = intersection_dim(&a, &b)?;
    println!(
        "subspaces of GF(p)^7: dim {} and {} meet in dim {meet}",
        a.rank(),
        b.rank()
    );

    // Kernel throughput at a desk-scale size.
    let size = 1200;
    let big: Vec<Vec<u64>> = (0..size)
        .map(|_| (0..size).map(|_| field.random(&mut rng)).collect())
        .collect();
    let m = DenseMatrix::from_rows(big, size, field)?;
    let start = Instant::now();
    let rank = m.rank();
    println!(
        "{size}x{size} dense rank = {rank} in {:.2?} (p = {})",
        start.elapsed(),
        field.modulus()
    );
    Ok(())
}

fn random_matrix_demo(
    rng: &mut ChaCha8Rng,
    field: PrimeField,
    rows: usize,
    cols: usize,
) -> terracini::Result<DenseMatrix> {
    let data: Vec<Vec<u64>> = (0..rows)
        .map(|_| (0..cols).map(|_| field.random(rng)).collect())
        .collect();
    DenseMatrix::from_rows(data, cols, field)
}

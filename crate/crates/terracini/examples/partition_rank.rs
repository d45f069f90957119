//! Partition ranks: decompositions of a tensor into summands that split
//! according to a fixed partition of the slots, over all slot orderings.
//!
//! Run with: cargo run --example partition_rank

use terracini::bounds::{partition_bounds, NondefBound};
use terracini::bundle::BundleFamily;
use terracini::certify::{certify_alpha, certify_r};
use terracini::fieldcore::{ComponentType, DEFAULT_PRIME};

fn main() -> terracini::Result<()> {
    // Order-3 tensors on C^20 split into three vectors: the closed-form
    // window between guaranteed-nondefective and generic rank.
    let b = partition_bounds(20, 3, &[1, 1, 1])?;
    println!("parts (1,1,1), n = 20:");
    println!("  component dim      {}", b.component_dim);
    println!("  nondefective up to {:?}", b.r_nondef_max);
    println!("  generic rank  <=   {}", b.generic_rank_upper);

    // Slice rank (parts (1, d-1)) is the known degenerate case: its
    // secants are defective, and the bound comes out vacuous.
    let slice = partition_bounds(10, 3, &[1, 2])?;
    println!("\nslice rank, parts (1,2), n = 10:");
    println!("  nondefective up to {:?}", slice.r_nondef_max);
    assert_eq!(slice.r_nondef_max, NondefBound::Vacuous);

    // Tiny instance certified exactly: one summand per slot ordering of
    // (1,2) on C^2 fills the whole 8-dimensional tensor space.
    let family = BundleFamily::Partition {
        n: 2,
        order: 3,
        parts: vec![1, 2],
    };
    println!("\nparts (1,2), n = 2, one point per slot ordering:");
    let cert = certify_alpha(
        &family,
        &ComponentType::new(vec![1, 1]),
        DEFAULT_PRIME,
        3,
        0,
    )?;
    println!(
        "  observed rank {} of {} -> {:?}",
        cert.best_observed, cert.ambient_dim, cert.verdict
    );

    // All component types with one point: both orderings have tangent
    // dimension 5.
    let summary = certify_r(&family, 1, DEFAULT_PRIME, 2, 0)?;
    for report in &summary.reports {
        println!(
            "  type {}: rank {} -> {:?}",
            report.alpha, report.best_observed, report.verdict
        );
    }
    println!("  1-nondefective: {}", summary.r_nondefective);
    Ok(())
}

//! Observed intersection sequences: how much of a fresh fiber already lies
//! in the span of a type-alpha configuration, walked step by step.
//!
//! Run with: cargo run --example stationarity_trace

use terracini::bundle::BundleFamily;
use terracini::fieldcore::{ComponentType, DEFAULT_PRIME};
use terracini::sequences::{diagonal_check, trace, TraceDirection};

fn main() -> terracini::Result<()> {
    let family = BundleFamily::Froberg {
        n: 3,
        degrees: vec![2, 3],
        shift: 1,
    };
    let t = trace(
        &family,
        &ComponentType::new(vec![1, 0]),
        TraceDirection::Component(1),
        1,
        5,
        DEFAULT_PRIME,
        9,
    )?;
    println!("one quadric plus s cubics, probing with a fresh cubic fiber:");
    for step in &t.values {
        println!(
            "  s = {}: alpha = {}, span rank {}, intersection {}",
            step.step, step.alpha, step.observation.span_rank, step.observation.value
        );
    }
    println!("  stationary at s in {:?}", t.stationarity_points);

    // The diagonal consequence: if the intersection value repeats (nonzero)
    // from alpha to alpha + (1,...,1), the span must already fill.
    let quartics = BundleFamily::FatPoints {
        n: 3,
        degree: 4,
        multiplicities: vec![2],
    };
    let check = diagonal_check(&quartics, &ComponentType::new(vec![8]), 0, DEFAULT_PRIME, 2)?;
    println!("\neight double points on quartics, diagonal check:");
    println!(
        "  a(alpha) = {}, a(alpha + 1) = {}, span {} of {}",
        check.at_alpha.value, check.at_diagonal.value, check.at_alpha.span_rank, check.ambient_dim
    );
    println!(
        "  precondition fired: {}, consequence holds: {}",
        check.precondition_met, check.consequence_holds
    );
    assert!(check.consequence_holds);
    Ok(())
}

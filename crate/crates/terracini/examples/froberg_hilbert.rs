//! Hilbert functions of ideals generated by general forms.
//!
//! For generators of mixed degrees the expected value of the Hilbert
//! function in degree `d_k + shift` is `sum alpha_i N_{shift + d_k - d_i}`.
//! The inequality chain guarantees that value outright when it holds;
//! otherwise a rank certificate over GF(p) settles the instance.
//!
//! Run with: cargo run --example froberg_hilbert

use terracini::bounds::{froberg_report, BoundVerdict};
use terracini::bundle::BundleFamily;
use terracini::certify::certify_alpha;
use terracini::fieldcore::{ComponentType, DEFAULT_PRIME};

fn main() -> terracini::Result<()> {
    // Ten quartics and a hundred quintics in ten variables: the criterion
    // settles this without any linear algebra.
    let alpha = ComponentType::new(vec![10, 100]);
    let report = froberg_report(10, &[4, 5], 1, &alpha)?;
    println!("degrees (4,5), n = 10, alpha = {alpha}:");
    println!("  ranks                {:?}", report.ranks);
    println!("  verdict              {:?}", report.report.verdict);
    println!("  expected Hilbert dim {}", report.hilbert_dim);
    for check in &report.report.nondef_criterion {
        println!(
            "  inequality {}: {} < {} -> {}",
            check.index, check.lhs, check.rhs, check.holds
        );
    }
    assert_eq!(report.report.verdict, BoundVerdict::GuaranteedNondefective);

    // One quadric and one cubic in three variables: too few coordinates for
    // the criterion, so certify the instance by an exact Terracini rank.
    let family = BundleFamily::Froberg {
        n: 3,
        degrees: vec![2, 3],
        shift: 1,
    };
    let alpha = ComponentType::new(vec![1, 1]);
    let small = froberg_report(3, &[2, 3], 1, &alpha)?;
    println!("\ndegrees (2,3), n = 3, alpha = {alpha}:");
    println!("  criterion verdict    {:?}", small.report.verdict);
    let cert = certify_alpha(&family, &alpha, DEFAULT_PRIME, 3, 42)?;
    println!(
        "  certificate          {:?} at rank {}/{} (expected {})",
        cert.verdict, cert.best_observed, cert.ambient_dim, cert.expected
    );
    assert_eq!(cert.best_observed, 9);
    Ok(())
}

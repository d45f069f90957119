//! Empirical stationarity-sequence explorer.
//!
//! The quantity observed here is `a(alpha, i) = dim( span of type-alpha
//! fibers ∩ fiber at a probe point of component i )`. Generic such values
//! are nondecreasing along any coordinate direction and can only go
//! stationary at zero or at filling; the diagonal variant additionally
//! forces the span to fill the ambient space once a nonzero value repeats
//! under `alpha -> alpha + (1,...,1)`.
//!
//! Everything reported is a sample statistic over GF(p), a lower bound for
//! the generic value, and is labeled "observed" accordingly. Each step
//! draws fresh, independent samples from its own derived stream.

use serde::{Deserialize, Serialize};

use crate::bundle::{BundleFamily, SampleRng};
use crate::error::{Error, Result};
use crate::fieldcore::{ComponentType, PrimeField};
use crate::linalg::DenseMatrix;

/// Which way a trace walks through type space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceDirection {
    /// Bump a single component index.
    Component(usize),
    /// Bump every component at once.
    Diagonal,
}

/// One full observation of span, probe and their intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub span_rank: u64,
    pub probe_rank: u64,
    pub union_rank: u64,
    /// `span_rank + probe_rank - union_rank`.
    pub value: u64,
}

fn observe(
    family: &BundleFamily,
    alpha: &ComponentType,
    probe: usize,
    field: PrimeField,
    seed: u64,
    stream: u64,
) -> Result<Observation> {
    family.validate()?;
    let k = family.component_count();
    if alpha.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "type of length {} for a family with {k} components",
            alpha.len()
        )));
    }
    if probe >= k {
        return Err(Error::InvalidArgument(format!(
            "probe component {probe} out of range"
        )));
    }
    let mut rng = SampleRng::derive(seed, stream);
    let mut parts = Vec::new();
    for (component, &count) in alpha.entries.iter().enumerate() {
        for _ in 0..count {
            let point = family.sample_point(component, field, &mut rng)?;
            parts.push(family.fiber_matrix(&point)?);
        }
    }
    let probe_point = family.sample_point(probe, field, &mut rng)?;
    let probe_fiber = family.fiber_matrix(&probe_point)?;
    let probe_rank = probe_fiber.rank() as u64;
    if parts.is_empty() {
        return Ok(Observation {
            span_rank: 0,
            probe_rank,
            union_rank: probe_rank,
            value: 0,
        });
    }
    let span = DenseMatrix::stack_all(&parts)?;
    let span_rank = span.rank() as u64;
    let union_rank = span.stack(&probe_fiber)?.rank() as u64;
    Ok(Observation {
        span_rank,
        probe_rank,
        union_rank,
        value: span_rank + probe_rank - union_rank,
    })
}

/// Observed `a(alpha, i)` for one fresh sample.
pub fn intersection_value(
    family: &BundleFamily,
    alpha: &ComponentType,
    probe: usize,
    prime: u64,
    seed: u64,
) -> Result<u64> {
    let field = PrimeField::new(prime)?;
    Ok(observe(family, alpha, probe, field, seed, 0)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: u64,
    pub alpha: ComponentType,
    pub observation: Observation,
    pub seed: u64,
    pub stream: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceTrace {
    pub family: BundleFamily,
    pub base_alpha: ComponentType,
    pub direction: TraceDirection,
    pub probe: usize,
    pub prime: u64,
    pub seed: u64,
    pub values: Vec<TraceStep>,
    /// Steps `s` with `values[s] = values[s+1] != 0`.
    pub stationarity_points: Vec<u64>,
}

/// Walk `alpha + s * direction` for `s = 0..=steps`, reobserving with fresh
/// samples at every step.
pub fn trace(
    family: &BundleFamily,
    base_alpha: &ComponentType,
    direction: TraceDirection,
    probe: usize,
    steps: u64,
    prime: u64,
    seed: u64,
) -> Result<SequenceTrace> {
    if steps == 0 {
        return Err(Error::InvalidArgument("trace needs at least one step".into()));
    }
    if let TraceDirection::Component(j) = direction {
        if j >= family.component_count() {
            return Err(Error::InvalidArgument(format!(
                "trace direction {j} out of range"
            )));
        }
    }
    let field = PrimeField::new(prime)?;
    let mut values = Vec::with_capacity(steps as usize + 1);
    for s in 0..=steps {
        let alpha = match direction {
            TraceDirection::Component(j) => base_alpha.bump(j, s),
            TraceDirection::Diagonal => base_alpha.bump_all(s),
        };
        let observation = observe(family, &alpha, probe, field, seed, s)?;
        values.push(TraceStep {
            step: s,
            alpha,
            observation,
            seed,
            stream: s,
        });
    }
    let stationarity_points = values
        .windows(2)
        .filter(|w| {
            w[0].observation.value == w[1].observation.value && w[0].observation.value != 0
        })
        .map(|w| w[0].step)
        .collect();
    Ok(SequenceTrace {
        family: family.clone(),
        base_alpha: base_alpha.clone(),
        direction,
        probe,
        prime,
        seed,
        values,
        stationarity_points,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalCheck {
    pub family: BundleFamily,
    pub alpha: ComponentType,
    pub probe: usize,
    pub prime: u64,
    pub seed: u64,
    /// Observed `a(alpha, i)` and the span rank from the same sample.
    pub at_alpha: Observation,
    /// Observed `a(alpha + (1,...,1), i)` on fresh samples.
    pub at_diagonal: Observation,
    pub ambient_dim: u64,
    /// Equal nonzero values trigger the filling consequence.
    pub precondition_met: bool,
    /// Vacuously true unless the precondition fires; then true exactly when
    /// the type-alpha span filled the ambient space.
    pub consequence_holds: bool,
}

/// Observable consequence of diagonal stationarity: if the intersection
/// value repeats (nonzero) from `alpha` to `alpha + (1,...,1)`, the
/// type-alpha span must already fill the ambient space.
pub fn diagonal_check(
    family: &BundleFamily,
    alpha: &ComponentType,
    probe: usize,
    prime: u64,
    seed: u64,
) -> Result<DiagonalCheck> {
    let field = PrimeField::new(prime)?;
    let at_alpha = observe(family, alpha, probe, field, seed, 0)?;
    let diag = alpha.bump_all(1);
    let at_diagonal = observe(family, &diag, probe, field, seed, 1)?;
    let ambient_dim = family.ambient_dim()?;
    let precondition_met = at_alpha.value == at_diagonal.value && at_alpha.value != 0;
    let consequence_holds = !precondition_met || at_alpha.span_rank == ambient_dim;
    Ok(DiagonalCheck {
        family: family.clone(),
        alpha: alpha.clone(),
        probe,
        prime,
        seed,
        at_alpha,
        at_diagonal,
        ambient_dim,
        precondition_met,
        consequence_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::DEFAULT_PRIME;

    fn ct(entries: &[u64]) -> ComponentType {
        ComponentType::new(entries.to_vec())
    }

    fn ah_quartics() -> BundleFamily {
        BundleFamily::FatPoints {
            n: 3,
            degree: 4,
            multiplicities: vec![2],
        }
    }

    #[test]
    fn empty_type_has_zero_intersection() {
        let v = intersection_value(&ah_quartics(), &ct(&[0]), 0, DEFAULT_PRIME, 3).unwrap();
        assert_eq!(v, 0);
    }

    #[test]
    fn four_double_points_probe() {
        // Four double points span 12 of the 15 quartic coordinates; a fifth
        // probe fiber overlaps in dimension 12 + 3 - 14 = 1, the shadow of
        // the exceptional quartic system.
        for seed in 0..3u64 {
            let family = ah_quartics();
            let field = PrimeField::new(DEFAULT_PRIME).unwrap();
            let obs = observe(&family, &ct(&[4]), 0, field, seed, 0).unwrap();
            assert_eq!(obs.span_rank, 12);
            assert_eq!(obs.probe_rank, 3);
            assert_eq!(obs.union_rank, 14);
            assert_eq!(obs.value, 1);
        }
    }

    #[test]
    fn filling_span_intersects_fully() {
        // Eight double points fill the quartics; the probe fiber sits inside.
        let v = intersection_value(&ah_quartics(), &ct(&[8]), 0, DEFAULT_PRIME, 5).unwrap();
        assert_eq!(v, 3);
    }

    #[test]
    fn froberg_trace_reaches_filling_and_stays() {
        let family = BundleFamily::Froberg {
            n: 3,
            degrees: vec![2, 3],
            shift: 1,
        };
        let t = trace(
            &family,
            &ct(&[1, 0]),
            TraceDirection::Component(1),
            1,
            4,
            DEFAULT_PRIME,
            9,
        )
        .unwrap();
        let vals: Vec<u64> = t.values.iter().map(|s| s.observation.value).collect();
        // One quadric plus s cubics against a cubic probe: span ranks run
        // 6, 9, 12, 15; the intersection stays zero until the span fills at
        // s = 3 and is then pinned at the probe rank 3.
        assert_eq!(vals, vec![0, 0, 0, 3, 3]);
        // Monotone within [0, N_i].
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
        assert!(vals.iter().all(|&v| v <= 3));
        assert!(t.stationarity_points.contains(&3));
    }

    #[test]
    fn trace_value_capped_at_probe_rank() {
        let family = ah_quartics();
        let t = trace(
            &family,
            &ct(&[6]),
            TraceDirection::Component(0),
            0,
            3,
            DEFAULT_PRIME,
            1,
        )
        .unwrap();
        for step in &t.values {
            assert!(step.observation.value <= 3);
        }
        // Once at the cap, stays at the cap.
        let vals: Vec<u64> = t.values.iter().map(|s| s.observation.value).collect();
        assert_eq!(vals, vec![3, 3, 3, 3]);
    }

    #[test]
    fn diagonal_consequence_on_filling_type() {
        let check = diagonal_check(&ah_quartics(), &ct(&[8]), 0, DEFAULT_PRIME, 2).unwrap();
        assert!(check.precondition_met);
        assert_eq!(check.at_alpha.span_rank, 15);
        assert!(check.consequence_holds);
    }

    #[test]
    fn diagonal_vacuous_cases() {
        // Zero intersection: vacuous.
        let check = diagonal_check(&ah_quartics(), &ct(&[1]), 0, DEFAULT_PRIME, 2).unwrap();
        assert_eq!(check.at_alpha.value, 0);
        assert!(!check.precondition_met);
        assert!(check.consequence_holds);

        // Strictly increasing pair: vacuous.
        let check = diagonal_check(&ah_quartics(), &ct(&[4]), 0, DEFAULT_PRIME, 2).unwrap();
        assert!(check.at_alpha.value < check.at_diagonal.value);
        assert!(check.consequence_holds);
    }

    #[test]
    fn diagonal_trace_direction_works() {
        let family = BundleFamily::Partition {
            n: 2,
            order: 3,
            parts: vec![1, 2],
        };
        let t = trace(
            &family,
            &ct(&[0, 0]),
            TraceDirection::Diagonal,
            0,
            2,
            DEFAULT_PRIME,
            4,
        )
        .unwrap();
        assert_eq!(t.values[2].alpha, ct(&[2, 2]));
    }
}

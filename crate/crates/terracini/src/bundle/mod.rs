//! Concrete embedded bundle families: ambient dimension, component ranks,
//! point sampling over a prime field, and fiber matrices.
//!
//! Sampling over GF(p) stands in for generic points. Every sampler takes an
//! explicit derived stream so concurrent trials use disjoint, reproducible
//! randomness.

pub mod fat_points;
pub mod froberg;
pub mod moments;
pub mod partition;

pub use moments::MomentRecipe;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcore::{GradedVector, PrimeField, RESAMPLE_BUDGET};
use crate::linalg::DenseMatrix;

/// Where a sample's randomness came from: base seed plus derived stream id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngProvenance {
    pub seed: u64,
    pub stream: u64,
}

/// A ChaCha stream carrying its own provenance. Streams derived from the
/// same seed with distinct ids are independent, which keeps parallel trials
/// deterministic regardless of scheduling.
pub struct SampleRng {
    rng: ChaCha8Rng,
    provenance: RngProvenance,
}

impl SampleRng {
    pub fn derive(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SampleRng {
            rng,
            provenance: RngProvenance { seed, stream },
        }
    }

    pub fn provenance(&self) -> RngProvenance {
        self.provenance
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// One of the four built-in bundle family descriptions.
///
/// Components are canonically ordered so that the rank vector is
/// nonincreasing: forms by ascending degree, fat points by descending
/// multiplicity, partition slot orders lexicographically, moment recipes in
/// listed order (their ranks are all equal).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BundleFamily {
    /// Degree-(d_k + shift) graded pieces of principal ideals generated by
    /// forms of the listed degrees.
    Froberg {
        n: u32,
        degrees: Vec<u32>,
        shift: u32,
    },
    /// Powers of linear forms paired against fat points of the listed
    /// multiplicities in degree `degree`.
    #[serde(rename = "fatpoints")]
    FatPoints {
        n: u32,
        degree: u32,
        multiplicities: Vec<u32>,
    },
    /// Tangent bundles of partition-rank-one varieties for a partition of
    /// the tensor order; components are the distinct slot orderings.
    Partition { n: u32, order: u32, parts: Vec<u32> },
    /// Tangent bundles of degree-5 moment varieties, one component per
    /// recipe.
    Moments {
        n: u32,
        families: Vec<MomentRecipe>,
    },
}

/// Parameter data for one sampled point, together with its provenance.
#[derive(Clone, Debug)]
pub struct PointSample {
    pub component: usize,
    pub prime: u64,
    pub provenance: RngProvenance,
    pub data: SampleData,
}

#[derive(Clone, Debug)]
pub enum SampleData {
    /// Coefficient vector of a form of the component's degree.
    Form(GradedVector),
    /// A point of GF(p)^n.
    Point(Vec<u64>),
    /// Factor tensors, one per slot of the component's slot ordering.
    Factors(Vec<Vec<u64>>),
    /// Mean vector and upper-triangular (dense, row-wise) scale matrix.
    MeanCov { mean: Vec<u64>, cov_upper: Vec<u64> },
}

impl BundleFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BundleFamily::Froberg { .. } => "froberg",
            BundleFamily::FatPoints { .. } => "fatpoints",
            BundleFamily::Partition { .. } => "partition",
            BundleFamily::Moments { .. } => "moments",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BundleFamily::Froberg { n, degrees, shift } => {
                if *n == 0 {
                    return Err(Error::InvalidFamily("froberg: n must be >= 1".into()));
                }
                if degrees.is_empty() {
                    return Err(Error::InvalidFamily("froberg: no degrees given".into()));
                }
                if degrees.iter().any(|&d| d == 0) {
                    return Err(Error::InvalidFamily("froberg: degrees must be >= 1".into()));
                }
                if degrees.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::InvalidFamily(
                        "froberg: degrees must be sorted ascending".into(),
                    ));
                }
                if *shift == 0 {
                    return Err(Error::InvalidFamily("froberg: shift must be >= 1".into()));
                }
                Ok(())
            }
            BundleFamily::FatPoints {
                n,
                degree,
                multiplicities,
            } => {
                if *n == 0 {
                    return Err(Error::InvalidFamily("fatpoints: n must be >= 1".into()));
                }
                if multiplicities.is_empty() {
                    return Err(Error::InvalidFamily(
                        "fatpoints: no multiplicities given".into(),
                    ));
                }
                if multiplicities.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::InvalidFamily(
                        "fatpoints: multiplicities must be strictly decreasing".into(),
                    ));
                }
                if multiplicities.iter().any(|&m| m == 0 || m > *degree) {
                    return Err(Error::InvalidFamily(format!(
                        "fatpoints: multiplicities must lie in 1..={degree}"
                    )));
                }
                Ok(())
            }
            BundleFamily::Partition { n, order, parts } => {
                if *n == 0 {
                    return Err(Error::InvalidFamily("partition: n must be >= 1".into()));
                }
                if parts.is_empty() || parts.iter().any(|&k| k == 0) {
                    return Err(Error::InvalidFamily(
                        "partition: parts must be nonempty and positive".into(),
                    ));
                }
                if parts.iter().sum::<u32>() != *order {
                    return Err(Error::InvalidFamily(format!(
                        "partition: parts must sum to the tensor order {order}"
                    )));
                }
                Ok(())
            }
            BundleFamily::Moments { n, families } => {
                if *n == 0 {
                    return Err(Error::InvalidFamily("moments: n must be >= 1".into()));
                }
                if families.is_empty() {
                    return Err(Error::InvalidFamily(
                        "moments: at least one family is required".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            BundleFamily::Froberg { degrees, .. } => degrees.len(),
            BundleFamily::FatPoints { multiplicities, .. } => multiplicities.len(),
            BundleFamily::Partition { parts, .. } => partition::components(parts).len(),
            BundleFamily::Moments { families, .. } => families.len(),
        }
    }

    /// Human-readable tag for component `i` in the canonical order.
    pub fn component_label(&self, i: usize) -> String {
        match self {
            BundleFamily::Froberg { degrees, .. } => format!("degree {}", degrees[i]),
            BundleFamily::FatPoints { multiplicities, .. } => {
                format!("multiplicity {}", multiplicities[i])
            }
            BundleFamily::Partition { parts, .. } => {
                let slots = &partition::components(parts)[i];
                let slots: Vec<String> = slots.iter().map(|k| k.to_string()).collect();
                format!("slots ({})", slots.join(","))
            }
            BundleFamily::Moments { families, .. } => families[i].name.clone(),
        }
    }

    /// Dimension of the ambient space the fibers live in.
    pub fn ambient_dim(&self) -> Result<u64> {
        self.validate()?;
        match self {
            BundleFamily::Froberg { n, degrees, shift } => {
                crate::fieldcore::forms_dim(*n, degrees[degrees.len() - 1] + shift)
            }
            BundleFamily::FatPoints { n, degree, .. } => crate::fieldcore::forms_dim(*n, *degree),
            BundleFamily::Partition { n, order, .. } => partition::ambient(*n, *order),
            BundleFamily::Moments { n, .. } => crate::fieldcore::forms_dim(*n, 5),
        }
    }

    /// Component ranks in canonical order; nonincreasing by construction.
    pub fn ranks(&self) -> Result<Vec<u64>> {
        self.validate()?;
        let ranks = match self {
            BundleFamily::Froberg { n, degrees, shift } => {
                froberg::ranks(*n, degrees, *shift)?
            }
            BundleFamily::FatPoints {
                n, multiplicities, ..
            } => fat_points::ranks(*n, multiplicities)?,
            BundleFamily::Partition { n, parts, .. } => {
                let dim = partition::component_dim(*n, parts)?;
                vec![dim; partition::components(parts).len()]
            }
            BundleFamily::Moments { n, families } => {
                vec![moments::rank(*n); families.len()]
            }
        };
        debug_assert!(ranks.windows(2).all(|w| w[0] >= w[1]));
        Ok(ranks)
    }

    /// Draw a nondegenerate sample on component `i`, retrying up to the
    /// resampling budget. Identical (family, i, prime, stream) inputs yield
    /// identical samples.
    pub fn sample_point(
        &self,
        component: usize,
        field: PrimeField,
        rng: &mut SampleRng,
    ) -> Result<PointSample> {
        self.validate()?;
        if component >= self.component_count() {
            return Err(Error::InvalidArgument(format!(
                "component index {component} out of range (family has {})",
                self.component_count()
            )));
        }
        let provenance = rng.provenance();
        for _ in 0..RESAMPLE_BUDGET {
            let data = match self {
                BundleFamily::Froberg { n, degrees, .. } => {
                    froberg::sample(*n, degrees[component], field, rng.rng())?
                }
                BundleFamily::FatPoints { n, .. } => fat_points::sample(*n, field, rng.rng()),
                BundleFamily::Partition { n, parts, .. } => {
                    let slots = &partition::components(parts)[component];
                    partition::sample(*n, slots, field, rng.rng())?
                }
                BundleFamily::Moments { n, .. } => moments::sample(*n, field, rng.rng()),
            };
            if sample_nondegenerate(&data) {
                return Ok(PointSample {
                    component,
                    prime: field.modulus(),
                    provenance,
                    data,
                });
            }
        }
        Err(Error::SamplingBudget(RESAMPLE_BUDGET))
    }

    /// Fiber matrix at a sampled point: `ranks()[i]` rows spanning the fiber
    /// inside the ambient space.
    pub fn fiber_matrix(&self, point: &PointSample) -> Result<DenseMatrix> {
        self.validate()?;
        let field = PrimeField::new(point.prime)?;
        match (self, &point.data) {
            (BundleFamily::Froberg { degrees, shift, .. }, SampleData::Form(f)) => {
                froberg::fiber(f, degrees[degrees.len() - 1] + shift)
            }
            (
                BundleFamily::FatPoints {
                    n,
                    degree,
                    multiplicities,
                },
                SampleData::Point(pt),
            ) => fat_points::fiber(*n, pt, *degree, multiplicities[point.component], field),
            (BundleFamily::Partition { n, parts, .. }, SampleData::Factors(factors)) => {
                let slots = &partition::components(parts)[point.component];
                partition::fiber(*n, slots, factors, field)
            }
            (BundleFamily::Moments { n, families }, SampleData::MeanCov { mean, cov_upper }) => {
                moments::fiber(*n, &families[point.component], mean, cov_upper, field)
            }
            _ => Err(Error::InvalidArgument(
                "sample data does not match the family".into(),
            )),
        }
    }
}

fn sample_nondegenerate(data: &SampleData) -> bool {
    match data {
        SampleData::Form(f) => !f.is_zero(),
        SampleData::Point(p) => p.iter().any(|&c| c != 0),
        SampleData::Factors(fs) => fs.iter().all(|f| f.iter().any(|&c| c != 0)),
        SampleData::MeanCov { mean, cov_upper } => {
            mean.iter().any(|&c| c != 0) && cov_upper.iter().any(|&c| c != 0)
        }
    }
}

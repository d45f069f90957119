//! Closed-form nondefectivity and filling criteria, evaluated in exact
//! arbitrary-precision arithmetic, plus the family-specific wrappers.
//!
//! The central check is the inequality chain over components sorted by
//! nonincreasing rank: a type `alpha` is guaranteed nondefective when
//!
//! ```text
//! alpha_1 N_1 + ... + alpha_i N_i + N_1 (N_i - 1) < dim V    for all i,
//! ```
//!
//! and guaranteed filling when every `alpha_i >= N_1` and
//! `sum alpha_i N_i > dim V + (N_1 - 1) sum N_i`. Both bounds are one-sided:
//! a silent criterion says nothing, and the rank engine in [`crate::certify`]
//! takes over from there.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldcore::{binomial_big, forms_dim_big, ComponentType};

mod big_string {
    //! Serialize arbitrary-precision values as decimal strings; JSON numbers
    //! are unreliable past 2^53.
    use num_bigint::BigUint;
    use serde::{self, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::from_str(&text).map_err(serde::de::Error::custom)
    }
}

/// Verdict of the closed-form criteria alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundVerdict {
    GuaranteedNondefective,
    GuaranteedFilling,
    CriterionSilent,
}

/// One inequality of the chain: `lhs < rhs`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub index: usize,
    #[serde(with = "big_string")]
    pub lhs: BigUint,
    #[serde(with = "big_string")]
    pub rhs: BigUint,
    pub holds: bool,
}

/// The filling criterion: every `alpha_i >= N_1` and `lhs > rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingCheck {
    pub alpha_floor_ok: bool,
    #[serde(with = "big_string")]
    pub lhs: BigUint,
    #[serde(with = "big_string")]
    pub rhs: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub alpha: ComponentType,
    #[serde(with = "big_string")]
    pub expected_dim: BigUint,
    #[serde(with = "big_string")]
    pub ambient_dim: BigUint,
    pub filling_expected: bool,
    pub nondef_criterion: Vec<InequalityCheck>,
    pub filling_criterion: FillingCheck,
    pub verdict: BoundVerdict,
}

fn check_alignment(ranks: &[u64], alpha: &ComponentType) -> Result<()> {
    if ranks.is_empty() {
        return Err(Error::InvalidArgument("no component ranks given".into()));
    }
    if ranks.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(
            "ranks must be sorted nonincreasing".into(),
        ));
    }
    if ranks.iter().any(|&r| r == 0) {
        return Err(Error::InvalidArgument("ranks must be positive".into()));
    }
    if alpha.len() != ranks.len() {
        return Err(Error::DimensionMismatch(format!(
            "type of length {} against {} components",
            alpha.len(),
            ranks.len()
        )));
    }
    Ok(())
}

fn weighted_sum(ranks: &[u64], alpha: &ComponentType) -> BigUint {
    ranks
        .iter()
        .zip(&alpha.entries)
        .map(|(&n, &a)| BigUint::from(n) * BigUint::from(a))
        .sum()
}

/// Expected dimension of a type-`alpha` span: `min(sum alpha_i N_i, dim V)`,
/// plus whether the sum already reaches the ambient space.
pub fn expected_dim(
    ranks: &[u64],
    ambient: &BigUint,
    alpha: &ComponentType,
) -> Result<(BigUint, bool)> {
    check_alignment(ranks, alpha)?;
    let sum = weighted_sum(ranks, alpha);
    let filling_expected = sum >= *ambient;
    let value = if filling_expected { ambient.clone() } else { sum };
    Ok((value, filling_expected))
}

/// Full report: inequality chain, filling check, expected dimension and the
/// combined verdict. `ranks` must be sorted nonincreasing with `alpha`
/// aligned to that order.
pub fn nondefective_criterion(
    ranks: &[u64],
    ambient: &BigUint,
    alpha: &ComponentType,
) -> Result<BoundReport> {
    check_alignment(ranks, alpha)?;
    let n1 = BigUint::from(ranks[0]);
    let mut partial = BigUint::zero();
    let mut chain = Vec::with_capacity(ranks.len());
    let mut all_hold = true;
    for (i, &ni) in ranks.iter().enumerate() {
        partial += BigUint::from(alpha.entries[i]) * BigUint::from(ni);
        let lhs = &partial + &n1 * BigUint::from(ni - 1);
        let holds = lhs < *ambient;
        all_hold &= holds;
        chain.push(InequalityCheck {
            index: i + 1,
            lhs,
            rhs: ambient.clone(),
            holds,
        });
    }
    let filling = filling_check(ranks, ambient, alpha);
    let (expected, filling_expected) = expected_dim(ranks, ambient, alpha)?;
    let verdict = if all_hold {
        BoundVerdict::GuaranteedNondefective
    } else if filling.holds {
        BoundVerdict::GuaranteedFilling
    } else {
        BoundVerdict::CriterionSilent
    };
    Ok(BoundReport {
        alpha: alpha.clone(),
        expected_dim: expected,
        ambient_dim: ambient.clone(),
        filling_expected,
        nondef_criterion: chain,
        filling_criterion: filling,
        verdict,
    })
}

fn filling_check(ranks: &[u64], ambient: &BigUint, alpha: &ComponentType) -> FillingCheck {
    let n1 = ranks[0];
    let alpha_floor_ok = alpha.entries.iter().all(|&a| a >= n1);
    let lhs = weighted_sum(ranks, alpha);
    let rank_total: BigUint = ranks.iter().map(|&n| BigUint::from(n)).sum();
    let rhs = ambient + BigUint::from(n1 - 1) * rank_total;
    let holds = alpha_floor_ok && lhs > rhs;
    FillingCheck {
        alpha_floor_ok,
        lhs,
        rhs,
        holds,
    }
}

/// Guaranteed filling: every `alpha_i >= N_1` and
/// `sum alpha_i N_i > dim V + (N_1 - 1) sum N_i`.
pub fn filling_criterion(ranks: &[u64], ambient: &BigUint, alpha: &ComponentType) -> Result<bool> {
    check_alignment(ranks, alpha)?;
    Ok(filling_check(ranks, ambient, alpha).holds)
}

/// The dedicated two-component test: `alpha_1 < dim V / N_1 - N_1` and
/// `alpha_1 N_1 + alpha_2 N_2 + N_1 N_2 < dim V`. Exposed alongside the
/// k-component chain for comparison.
pub fn two_component_criterion(
    ranks: &[u64],
    ambient: &BigUint,
    alpha: &ComponentType,
) -> Result<bool> {
    check_alignment(ranks, alpha)?;
    if ranks.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "two-component criterion applied to {} components",
            ranks.len()
        )));
    }
    let (n1, n2) = (BigUint::from(ranks[0]), BigUint::from(ranks[1]));
    let (a1, a2) = (
        BigUint::from(alpha.entries[0]),
        BigUint::from(alpha.entries[1]),
    );
    // alpha_1 < V/N_1 - N_1, cleared of denominators.
    let first = &a1 * &n1 + &n1 * &n1 < *ambient;
    let second = &a1 * &n1 + &a2 * &n2 + &n1 * &n2 < *ambient;
    Ok(first && second)
}

/// Secant-variety bound: reported as an explicit enum so "guaranteed up to
/// r = 0" and "no guarantee" stay distinguishable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NondefBound {
    Vacuous,
    UpTo {
        #[serde(with = "big_string")]
        r: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantBounds {
    pub r_nondef_max: NondefBound,
    #[serde(with = "big_string")]
    pub r_fill_min: BigUint,
}

/// For a union of cones with maximal component dimension `n_max` in ambient
/// dimension `ambient`: nondefective for all `r <= ambient/n_max - n_max`,
/// and filling once `r >= ambient/n_max + n_max`.
pub fn secant_bounds(ambient: &BigUint, n_max: u64) -> Result<SecantBounds> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("component dimension must be >= 1".into()));
    }
    let n = BigUint::from(n_max);
    let nsq = &n * &n;
    let r_nondef_max = if *ambient < nsq {
        NondefBound::Vacuous
    } else {
        NondefBound::UpTo {
            r: (ambient - &nsq) / &n,
        }
    };
    let r_fill_min = ambient.div_ceil(&n) + &n;
    Ok(SecantBounds {
        r_nondef_max,
        r_fill_min,
    })
}

/// Largest integer strictly below `num / den`, or `Vacuous` when no
/// nonnegative integer qualifies.
fn strict_bound(num: &BigUint, nsq: &BigUint, den: &BigUint) -> NondefBound {
    if *num <= *nsq {
        return NondefBound::Vacuous;
    }
    let diff = num - nsq;
    let (q, rem) = diff.div_rem(den);
    if rem.is_zero() {
        if q.is_zero() {
            NondefBound::Vacuous
        } else {
            NondefBound::UpTo { r: q - BigUint::one() }
        }
    } else {
        NondefBound::UpTo { r: q }
    }
}

// ---------------------------------------------------------------------------
// Family wrappers
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergReport {
    pub ranks: Vec<u64>,
    pub report: BoundReport,
    /// Expected Hilbert value of the graded piece, `sum alpha_i N_{...}`;
    /// it is the true value exactly when the verdict guarantees it.
    #[serde(with = "big_string")]
    pub hilbert_dim: BigUint,
    pub two_component: Option<bool>,
}

/// Criterion and expected Hilbert value for the graded piece at degree
/// `d_k + shift` of an ideal generated by `alpha_i` general forms of each
/// degree `d_i`.
pub fn froberg_report(
    n: u32,
    degrees: &[u32],
    shift: u32,
    alpha: &ComponentType,
) -> Result<FrobergReport> {
    if degrees.is_empty() || degrees.windows(2).any(|w| w[0] > w[1]) || shift == 0 {
        return Err(Error::InvalidArgument(
            "degrees must be ascending and the shift positive".into(),
        ));
    }
    let ranks = crate::bundle::froberg::ranks(n, degrees, shift)?;
    let top = degrees[degrees.len() - 1] + shift;
    let ambient = forms_dim_big(n, top)?;
    let report = nondefective_criterion(&ranks, &ambient, alpha)?;
    let hilbert_dim = weighted_sum(&ranks, alpha);
    let two_component = if ranks.len() == 2 {
        Some(two_component_criterion(&ranks, &ambient, alpha)?)
    } else {
        None
    };
    Ok(FrobergReport {
        ranks,
        report,
        hilbert_dim,
        two_component,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPointReport {
    pub ranks: Vec<u64>,
    pub report: BoundReport,
    /// Expected dimension of the span of powers of linear forms in degree D.
    #[serde(with = "big_string")]
    pub span_dim: BigUint,
    /// Complementary expected Hilbert value of the fat point scheme,
    /// `max(0, N_D - sum alpha_i N_{m_i - 1})`.
    #[serde(with = "big_string")]
    pub fatpoint_dim: BigUint,
}

pub fn fatpoint_report(
    n: u32,
    degree: u32,
    multiplicities: &[u32],
    alpha: &ComponentType,
) -> Result<FatPointReport> {
    if multiplicities.is_empty()
        || multiplicities.windows(2).any(|w| w[0] <= w[1])
        || multiplicities.iter().any(|&m| m == 0 || m > degree)
    {
        return Err(Error::InvalidArgument(
            "multiplicities must be strictly decreasing within 1..=degree".into(),
        ));
    }
    let ranks = crate::bundle::fat_points::ranks(n, multiplicities)?;
    let ambient = forms_dim_big(n, degree)?;
    let report = nondefective_criterion(&ranks, &ambient, alpha)?;
    let sum = weighted_sum(&ranks, alpha);
    let span_dim = sum.clone().min(ambient.clone());
    let fatpoint_dim = if sum >= ambient {
        BigUint::zero()
    } else {
        &ambient - &sum
    };
    Ok(FatPointReport {
        ranks,
        report,
        span_dim,
        fatpoint_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionBounds {
    #[serde(with = "big_string")]
    pub component_dim: BigUint,
    #[serde(with = "big_string")]
    pub ambient_dim: BigUint,
    /// Upper bound on the generic partition rank,
    /// `floor(n^d / N + N)`.
    #[serde(with = "big_string")]
    pub generic_rank_upper: BigUint,
    /// Nondefective for all `r` strictly below `n^d / N - N`.
    pub r_nondef_max: NondefBound,
}

pub fn partition_bounds(n: u32, order: u32, parts: &[u32]) -> Result<PartitionBounds> {
    if parts.is_empty() || parts.iter().any(|&k| k == 0) || parts.iter().sum::<u32>() != order {
        return Err(Error::InvalidArgument(
            "parts must be positive and sum to the tensor order".into(),
        ));
    }
    let ambient = BigUint::from(n).pow(order);
    let component: BigUint = parts
        .iter()
        .map(|&k| BigUint::from(n).pow(k))
        .sum::<BigUint>()
        - BigUint::from(parts.len() as u64 - 1);
    let generic_rank_upper = &ambient / &component + &component;
    let r_nondef_max = strict_bound(&ambient, &(&component * &component), &component);
    Ok(PartitionBounds {
        component_dim: component,
        ambient_dim: ambient,
        generic_rank_upper,
        r_nondef_max,
    })
}

/// Sufficient test for algebraic identifiability of a mixture of `r`
/// Gaussians and `s` Laplace distributions from degree-5 moments:
/// `r + s <= binom(n+4, 5) / M - M` with `M = binom(n+1, 2) + n`, compared
/// exactly. The empty mixture is identifiable outright.
pub fn mixture_identifiable(n: u32, r: u64, s: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let total = r as u128 + s as u128;
    if total == 0 {
        return Ok(true);
    }
    let ambient = binomial_big(n as u64 + 4, 5);
    let m = binomial_big(n as u64 + 1, 2) + BigUint::from(n);
    // (r + s) M + M^2 <= binom(n+4, 5), cleared of the denominator.
    Ok(BigUint::from(total) * &m + &m * &m <= ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ct(entries: &[u64]) -> ComponentType {
        ComponentType::new(entries.to_vec())
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn expected_dim_examples() {
        let (v, fill) = expected_dim(&[6, 3], &big(15), &ct(&[1, 1])).unwrap();
        assert_eq!((v, fill), (big(9), false));
        let (v, fill) = expected_dim(&[3], &big(15), &ct(&[5])).unwrap();
        assert_eq!((v, fill), (big(15), true));
        let (v, fill) = expected_dim(&[6, 3], &big(15), &ct(&[0, 0])).unwrap();
        assert_eq!((v, fill), (big(0), false));
    }

    #[test]
    fn chain_criterion_examples() {
        // Forms of degrees (4, 5) in 10 variables, shift 1.
        let r = nondefective_criterion(&[55, 10], &big(5005), &ct(&[10, 100])).unwrap();
        assert_eq!(r.verdict, BoundVerdict::GuaranteedNondefective);
        assert_eq!(r.nondef_criterion[0].lhs, big(3520));
        assert_eq!(r.nondef_criterion[1].lhs, big(2045));
        assert_eq!(r.expected_dim, big(1550));

        let r = nondefective_criterion(&[6, 3], &big(15), &ct(&[1, 1])).unwrap();
        assert_eq!(r.verdict, BoundVerdict::CriterionSilent);
        assert!(!r.nondef_criterion[0].holds);

        // Empty type: only N_1 (N_i - 1) < V remains.
        let r = nondefective_criterion(&[3], &big(15), &ct(&[0])).unwrap();
        assert_eq!(r.verdict, BoundVerdict::GuaranteedNondefective);
    }

    #[test]
    fn two_component_examples() {
        assert!(two_component_criterion(&[55, 10], &big(5005), &ct(&[10, 100])).unwrap());
        // First clause gating: alpha_1 too large.
        assert!(!two_component_criterion(&[55, 10], &big(5005), &ct(&[36, 0])).unwrap());
        assert!(!two_component_criterion(&[3, 3], &big(15), &ct(&[1, 1])).unwrap());
        assert!(two_component_criterion(&[3], &big(15), &ct(&[1])).is_err());
    }

    #[test]
    fn filling_examples() {
        assert!(filling_criterion(&[3], &big(15), &ct(&[8])).unwrap());
        assert!(!filling_criterion(&[3, 3], &big(15), &ct(&[2, 4])).unwrap());
        assert!(!filling_criterion(&[3, 3], &big(15), &ct(&[4, 4])).unwrap());
    }

    #[test]
    fn secant_bound_examples() {
        let b = secant_bounds(&big(8000), 58).unwrap();
        assert_eq!(b.r_nondef_max, NondefBound::UpTo { r: big(79) });
        assert_eq!(b.r_fill_min, big(196));

        let b = secant_bounds(&big(3364), 58).unwrap();
        assert_eq!(b.r_nondef_max, NondefBound::UpTo { r: big(0) });

        // Slice-rank shape: 1000/109 - 109 < 0.
        let b = secant_bounds(&big(1000), 109).unwrap();
        assert_eq!(b.r_nondef_max, NondefBound::Vacuous);
    }

    #[test]
    fn froberg_report_examples() {
        let r = froberg_report(10, &[4, 5], 1, &ct(&[10, 100])).unwrap();
        assert_eq!(r.report.verdict, BoundVerdict::GuaranteedNondefective);
        assert_eq!(r.hilbert_dim, big(1550));
        assert_eq!(r.two_component, Some(true));

        let r = froberg_report(3, &[2, 3], 1, &ct(&[1, 1])).unwrap();
        assert_eq!(r.report.verdict, BoundVerdict::CriterionSilent);

        let r = froberg_report(3, &[2, 3], 1, &ct(&[0, 0])).unwrap();
        assert_eq!(r.hilbert_dim, big(0));
    }

    #[test]
    fn fatpoint_report_examples() {
        let r = fatpoint_report(3, 4, &[2], &ct(&[5])).unwrap();
        assert_eq!(r.span_dim, big(15));
        assert_eq!(r.fatpoint_dim, big(0));

        let r = fatpoint_report(7, 9, &[4, 3], &ct(&[1, 1])).unwrap();
        assert_eq!(r.ranks, vec![84, 28]);

        let r = fatpoint_report(3, 4, &[2], &ct(&[0])).unwrap();
        assert_eq!(r.fatpoint_dim, big(15));
    }

    #[test]
    fn partition_bound_examples() {
        let b = partition_bounds(20, 3, &[1, 1, 1]).unwrap();
        assert_eq!(b.component_dim, big(58));
        assert_eq!(b.r_nondef_max, NondefBound::UpTo { r: big(79) });
        assert_eq!(b.generic_rank_upper, big(195));

        // Slice rank is vacuous by construction.
        let b = partition_bounds(10, 3, &[1, 2]).unwrap();
        assert_eq!(b.r_nondef_max, NondefBound::Vacuous);
        let b = partition_bounds(2, 2, &[1, 1]).unwrap();
        assert_eq!(b.r_nondef_max, NondefBound::Vacuous);
    }

    #[test]
    fn strict_bound_edge_cases() {
        // Exactly divisible: r < q means r_max = q - 1.
        assert_eq!(
            strict_bound(&big(120), &big(20), &big(10)),
            NondefBound::UpTo { r: big(9) }
        );
        assert_eq!(
            strict_bound(&big(125), &big(20), &big(10)),
            NondefBound::UpTo { r: big(10) }
        );
        assert_eq!(strict_bound(&big(20), &big(20), &big(10)), NondefBound::Vacuous);
        assert_eq!(strict_bound(&big(25), &big(20), &big(10)), NondefBound::UpTo { r: big(0) });
        // r = 0 still satisfies 0 < (30 - 20)/10 = 1.
        assert_eq!(strict_bound(&big(30), &big(20), &big(10)), NondefBound::UpTo { r: big(0) });
    }

    #[test]
    fn mixture_threshold() {
        assert!(!mixture_identifiable(26, 5, 7).unwrap());
        assert!(mixture_identifiable(27, 5, 7).unwrap());
        // The n = 26 margin: 142506 / 377 - 377 = 1.
        let m = binomial_big(27, 2) + BigUint::from(26u32);
        assert_eq!(m, big(377));
        assert_eq!(binomial_big(30, 5), big(142_506));
        assert!(mixture_identifiable(26, 1, 0).unwrap());
        assert!(!mixture_identifiable(26, 1, 1).unwrap());
        // Empty mixtures are identifiable for every n.
        for n in 1..40 {
            assert!(mixture_identifiable(n, 0, 0).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn criterion_monotone_under_shrinking_alpha(
            seed in 0u64..2_000,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let k = rng.random_range(1..4usize);
            let mut ranks: Vec<u64> = (0..k).map(|_| rng.random_range(1..12u64)).collect();
            ranks.sort_unstable_by(|a, b| b.cmp(a));
            let ambient = big(rng.random_range(1..400u64));
            let alpha: Vec<u64> = (0..k).map(|_| rng.random_range(0..12u64)).collect();
            let alpha = ct(&alpha);
            let full = nondefective_criterion(&ranks, &ambient, &alpha).unwrap();
            if full.verdict == BoundVerdict::GuaranteedNondefective {
                // Shrink one coordinate at a time: still guaranteed.
                for i in 0..k {
                    if alpha.entries[i] == 0 { continue; }
                    let mut smaller = alpha.clone();
                    smaller.entries[i] -= 1;
                    let sub = nondefective_criterion(&ranks, &ambient, &smaller).unwrap();
                    prop_assert_eq!(sub.verdict, BoundVerdict::GuaranteedNondefective);
                }
            }
        }

        #[test]
        fn nondef_and_filling_mutually_exclusive(seed in 0u64..2_000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let k = rng.random_range(1..4usize);
            let mut ranks: Vec<u64> = (0..k).map(|_| rng.random_range(1..10u64)).collect();
            ranks.sort_unstable_by(|a, b| b.cmp(a));
            let ambient = big(rng.random_range(1..200u64));
            let alpha: Vec<u64> = (0..k).map(|_| rng.random_range(0..30u64)).collect();
            let alpha = ct(&alpha);
            let report = nondefective_criterion(&ranks, &ambient, &alpha).unwrap();
            let all_hold = report.nondef_criterion.iter().all(|c| c.holds);
            prop_assert!(!(all_hold && report.filling_criterion.holds));
        }

        #[test]
        fn secant_bounds_are_ordered(ambient in 1u64..1_000_000, n_max in 1u64..1_000) {
            let b = secant_bounds(&big(ambient), n_max).unwrap();
            if let NondefBound::UpTo { r } = b.r_nondef_max {
                prop_assert!(r < b.r_fill_min);
            }
        }

        #[test]
        fn mixture_monotone_in_total(n in 1u32..60, r in 0u64..40, s in 0u64..40) {
            if mixture_identifiable(n, r, s).unwrap() {
                let (r2, s2) = (r.saturating_sub(1), s);
                prop_assert!(mixture_identifiable(n, r2, s2).unwrap());
                let (r3, s3) = (r, s.saturating_sub(1));
                prop_assert!(mixture_identifiable(n, r3, s3).unwrap());
            }
        }
    }
}

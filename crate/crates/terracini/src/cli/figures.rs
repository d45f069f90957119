//! Sweep figures: for each variable count, the largest r whose expected
//! dimension stays below the ambient space (blue) against the largest r the
//! nondefectivity criterion still guarantees (orange), plus their ratio.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundVerdict};
use crate::error::{Error, Result};
use crate::fieldcore::{forms_dim, forms_dim_big, ComponentType};

/// An exact nonnegative fraction; figure splits like "the first 20% of the
/// points" must not wobble with floating-point rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("fraction with zero denominator".into()));
        }
        if num > den {
            return Err(Error::InvalidArgument("fraction must lie in [0, 1]".into()));
        }
        if num == 0 {
            return Ok(Fraction { num: 0, den: 1 });
        }
        let g = num_integer::gcd(num, den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    /// `floor(r * num / den)`.
    pub fn floor_of(&self, r: u64) -> u64 {
        ((r as u128 * self.num as u128) / self.den as u128) as u64
    }
}

impl std::str::FromStr for Fraction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |text: &str| -> Option<Fraction> {
            if let Some((a, b)) = text.split_once('/') {
                return Fraction::new(a.parse().ok()?, b.parse().ok()?).ok();
            }
            match text.split_once('.') {
                None => Fraction::new(text.parse().ok()?, 1).ok(),
                Some((whole, frac)) => {
                    if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                        return None;
                    }
                    let den = 10u64.checked_pow(frac.len() as u32)?;
                    let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().ok()? };
                    let num = whole.checked_mul(den)?.checked_add(frac.parse().ok()?)?;
                    Fraction::new(num, den).ok()
                }
            }
        };
        parse(s).ok_or_else(|| format!("cannot parse '{s}' as a fraction in [0, 1]"))
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
        }
        let text = match Repr::deserialize(d)? {
            Repr::Text(t) => t,
            Repr::Number(v) => format!("{v}"),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureRow {
    pub n: u32,
    pub r_blue: u64,
    /// `None` when the criterion fails even for the empty type.
    pub r_orange: Option<u64>,
    pub ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergFigure {
    pub n_min: u32,
    pub n_max: u32,
    pub d1: u32,
    pub d2: u32,
    pub shift: u32,
}

impl FrobergFigure {
    pub fn standard(n_min: u32, n_max: u32) -> Self {
        FrobergFigure {
            n_min,
            n_max,
            d1: 5,
            d2: 6,
            shift: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPointsFigure {
    pub n_min: u32,
    pub n_max: u32,
    pub degree: u32,
    pub m1: u32,
    pub m2: u32,
}

impl FatPointsFigure {
    pub fn standard(n_min: u32, n_max: u32) -> Self {
        FatPointsFigure {
            n_min,
            n_max,
            degree: 9,
            m1: 4,
            m2: 3,
        }
    }
}

fn split(r: u64, fraction: Fraction) -> ComponentType {
    let a1 = fraction.floor_of(r);
    ComponentType::new(vec![a1, r - a1])
}

/// Largest `r` in `[0, hi]` with `pred(r)` true, given that the true region
/// is downward closed. `None` when even `r = 0` fails.
fn max_true(hi: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
    if !pred(0) {
        return None;
    }
    let (mut lo, mut hi) = (0u64, hi);
    if pred(hi) {
        return Some(hi);
    }
    // Invariant: pred(lo) true, pred(hi) false.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

fn sweep_row(n: u32, ranks: &[u64], ambient: &BigUint, fraction: Fraction) -> Result<FigureRow> {
    let min_rank = *ranks.iter().min().unwrap();
    let hi = (ambient / BigUint::from(min_rank))
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("sweep range at n = {n}")))?
        + 2;
    let weighted = |alpha: &ComponentType| -> BigUint {
        alpha
            .entries
            .iter()
            .zip(ranks)
            .map(|(&a, &r)| BigUint::from(a) * BigUint::from(r))
            .sum()
    };
    let r_blue = max_true(hi, |r| weighted(&split(r, fraction)) < *ambient)
        .expect("the empty type never fills");
    let r_orange = max_true(hi, |r| {
        let report = bounds::nondefective_criterion(ranks, ambient, &split(r, fraction))
            .expect("aligned inputs");
        report.verdict == BoundVerdict::GuaranteedNondefective
    });
    let ratio = match r_orange {
        Some(o) if r_blue > 0 => o as f64 / r_blue as f64,
        _ => 0.0,
    };
    Ok(FigureRow {
        n,
        r_blue,
        r_orange,
        ratio,
    })
}

/// Sweep over n for ideals generated by degree-(d1, d2) forms, the first
/// `fraction` of the generators having degree d1.
pub fn figure_froberg(cfg: &FrobergFigure, fraction: Fraction) -> Result<Vec<FigureRow>> {
    if cfg.n_min < 2 || cfg.n_min > cfg.n_max {
        return Err(Error::InvalidArgument(
            "figure sweep needs 2 <= n_min <= n_max".into(),
        ));
    }
    if cfg.d1 > cfg.d2 || cfg.d1 == 0 || cfg.shift == 0 {
        return Err(Error::InvalidArgument(
            "figure needs 1 <= d1 <= d2 and a positive shift".into(),
        ));
    }
    (cfg.n_min..=cfg.n_max)
        .into_par_iter()
        .map(|n| {
            let ranks = vec![
                forms_dim(n, cfg.shift + cfg.d2 - cfg.d1)?,
                forms_dim(n, cfg.shift)?,
            ];
            let ambient = forms_dim_big(n, cfg.d2 + cfg.shift)?;
            sweep_row(n, &ranks, &ambient, fraction)
        })
        .collect()
}

/// Sweep over n for fat point schemes of multiplicities (m1, m2) in degree
/// `degree`, the first `fraction` of the points having multiplicity m1.
pub fn figure_fatpoints(cfg: &FatPointsFigure, fraction: Fraction) -> Result<Vec<FigureRow>> {
    if cfg.n_min < 2 || cfg.n_min > cfg.n_max {
        return Err(Error::InvalidArgument(
            "figure sweep needs 2 <= n_min <= n_max".into(),
        ));
    }
    if cfg.m1 <= cfg.m2 || cfg.m2 == 0 || cfg.m1 > cfg.degree {
        return Err(Error::InvalidArgument(
            "figure needs degree >= m1 > m2 >= 1".into(),
        ));
    }
    (cfg.n_min..=cfg.n_max)
        .into_par_iter()
        .map(|n| {
            let ranks = vec![forms_dim(n, cfg.m1 - 1)?, forms_dim(n, cfg.m2 - 1)?];
            let ambient = forms_dim_big(n, cfg.degree)?;
            sweep_row(n, &ranks, &ambient, fraction)
        })
        .collect()
}

/// Render rows with the stable column contract `n,r_blue,r_orange,ratio`,
/// comma-separated, LF endings. A vacuous orange bound is written as -1.
pub fn rows_to_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from("n,r_blue,r_orange,ratio\n");
    for row in rows {
        let orange = match row.r_orange {
            Some(o) => o as i128,
            None => -1,
        };
        out.push_str(&format!(
            "{},{},{},{:.6}\n",
            row.n, row.r_blue, orange, row.ratio
        ));
    }
    out
}

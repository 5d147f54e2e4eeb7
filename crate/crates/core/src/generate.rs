//! Seeded random instance generation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::instance::{validate_instance, Instance, RawInstance};

/// Shape of the generated suppression tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuppressionFamily {
    /// `r(h) = rho` for all `h >= 1`, with `rho` drawn from the grid.
    Constant,
    /// `r(h) = 1` at one random `h` in `1..=k`, 0 elsewhere.
    Indicator,
    /// `r(h) = (k + 1 - h) / k`.
    LinearDecay,
    /// Every `r(h)`, `h >= 1`, drawn independently from the grid.
    Grid,
}

impl FromStr for SuppressionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "constant" => Ok(Self::Constant),
            "indicator" => Ok(Self::Indicator),
            "linear" | "linear-decay" => Ok(Self::LinearDecay),
            "grid" => Ok(Self::Grid),
            other => Err(Error::Parse(format!("unknown suppression family {other:?}"))),
        }
    }
}

impl fmt::Display for SuppressionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Constant => "constant",
            Self::Indicator => "indicator",
            Self::LinearDecay => "linear-decay",
            Self::Grid => "grid",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMode {
    /// Independent `0 <= b_j <= b^j <= n` per campaign.
    Random,
    /// `b_* = 0`, `b^* = n`.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: usize,
    pub preference_range: (u64, u64),
    pub weight_range: (u64, u64),
    pub family: SuppressionFamily,
    /// Grid denominator for `Constant` and `Grid` families.
    pub grid: u64,
    pub bounds: BoundsMode,
}

impl GeneratorConfig {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            preference_range: (0, 9),
            weight_range: (1, 5),
            family: SuppressionFamily::Grid,
            grid: 4,
            bounds: BoundsMode::Random,
        }
    }
}

pub fn random_instance_seeded(config: &GeneratorConfig, seed: u64) -> Result<Instance, Error> {
    random_instance(config, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_instance<R: Rng>(config: &GeneratorConfig, rng: &mut R) -> Result<Instance, Error> {
    let &GeneratorConfig { n, k, grid, .. } = config;
    let (pmin, pmax) = config.preference_range;
    let (wmin, wmax) = config.weight_range;
    if pmin > pmax || wmin > wmax || wmin == 0 || grid == 0 {
        return Err(Error::Precondition(
            "generator ranges must be nonempty, weights positive and grid > 0".into(),
        ));
    }
    let weights = (0..k)
        .map(|_| BigInt::from(rng.gen_range(wmin..=wmax)))
        .collect();
    let preferences = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| BigInt::from(rng.gen_range(pmin..=pmax)))
                .collect()
        })
        .collect();
    let grid_value =
        |rng: &mut R| BigRational::new(rng.gen_range(0..=grid).into(), grid.into());
    let suppression = (0..n)
        .map(|_| match config.family {
            SuppressionFamily::Constant => {
                let rho = grid_value(rng);
                (0..=k)
                    .map(|h| if h == 0 { BigRational::zero() } else { rho.clone() })
                    .collect()
            }
            SuppressionFamily::Indicator => {
                let at = rng.gen_range(1..=k);
                (0..=k)
                    .map(|h| BigRational::from_integer((h == at).into()))
                    .collect()
            }
            SuppressionFamily::LinearDecay => (0..=k)
                .map(|h| {
                    if h == 0 {
                        BigRational::zero()
                    } else {
                        BigRational::new((k + 1 - h).into(), k.into())
                    }
                })
                .collect(),
            SuppressionFamily::Grid => (0..=k)
                .map(|h| {
                    if h == 0 {
                        BigRational::zero()
                    } else {
                        grid_value(rng)
                    }
                })
                .collect(),
        })
        .collect();
    let (lower_bounds, upper_bounds) = match config.bounds {
        BoundsMode::Unbounded => (vec![0; k], vec![n; k]),
        BoundsMode::Random => (0..k)
            .map(|_| {
                let a = rng.gen_range(0..=n);
                let b = rng.gen_range(0..=n);
                (a.min(b), a.max(b))
            })
            .unzip(),
    };
    Ok(validate_instance(RawInstance {
        n,
        k,
        weights,
        preferences,
        suppression,
        lower_bounds,
        upper_bounds,
    })?)
}

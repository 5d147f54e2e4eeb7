//! Fitting a category's suppression table to historical responses.
//!
//! For two customers of the category who received the same campaign, one
//! responding and one not, the table should satisfy
//! `p_resp * r(h_resp) > p_non * r(h_non)`. The fit searches grid tables
//! `r(h) in {0, 1/Q, ..., 1}` for the one satisfying the most conditions.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::instance::SuppressionTable;

/// One historical observation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub customer: usize,
    pub campaign: usize,
    pub preference: u64,
    /// Recommendations the customer received at the time.
    pub h: usize,
    pub responded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitOptions {
    pub max_h: usize,
    pub grid: u64,
    pub restarts: usize,
    pub seed: u64,
    /// Restrict to tables that never increase with `h` (from `h = 1` on).
    pub monotone: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_h: 5,
            grid: 20,
            restarts: 8,
            seed: 0,
            monotone: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub table: SuppressionTable,
    /// Grid numerators: `r(h) = levels[h] / grid`.
    pub levels: Vec<u64>,
    pub satisfied: u64,
    pub total: u64,
}

/// A responder/non-responder pair, deduplicated with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Condition {
    responder: (u64, usize),
    other: (u64, usize),
}

/// Condition set of one category, ready to score tables.
#[derive(Debug, Clone, Default)]
pub struct Conditions {
    weighted: Vec<(Condition, u64)>,
    total: u64,
}

impl Conditions {
    /// Builds every responder/non-responder pair per campaign. Records whose
    /// `h` exceeds `max_h` fall outside the table and are left out.
    pub fn from_records(records: &[ResponseRecord], max_h: usize) -> Self {
        let mut by_campaign: BTreeMap<usize, (Vec<&ResponseRecord>, Vec<&ResponseRecord>)> =
            BTreeMap::new();
        for r in records.iter().filter(|r| r.h <= max_h) {
            let entry = by_campaign.entry(r.campaign).or_default();
            if r.responded {
                entry.0.push(r);
            } else {
                entry.1.push(r);
            }
        }
        let mut counts: BTreeMap<Condition, u64> = BTreeMap::new();
        for (responders, others) in by_campaign.values() {
            for a in responders {
                for b in others.iter().filter(|b| b.customer != a.customer) {
                    let c = Condition {
                        responder: (a.preference, a.h),
                        other: (b.preference, b.h),
                    };
                    *counts.entry(c).or_default() += 1;
                }
            }
        }
        let total = counts.values().sum();
        Self {
            weighted: counts.into_iter().collect(),
            total,
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Conditions met by the grid table `levels` (strict inequality).
    pub fn satisfied(&self, levels: &[u64]) -> u64 {
        self.weighted
            .iter()
            .filter(|(c, _)| {
                let lhs = c.responder.0 as u128 * levels[c.responder.1] as u128;
                let rhs = c.other.0 as u128 * levels[c.other.1] as u128;
                lhs > rhs
            })
            .map(|(_, m)| m)
            .sum()
    }
}

/// Ranks candidate tables: more satisfied conditions first, then
/// lexicographically larger levels (larger values at smaller `h`).
fn better(a: (u64, &[u64]), b: (u64, &[u64])) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 > b.1)
}

/// Coordinate ascent from `levels` until no single-coordinate change helps.
fn climb(conditions: &Conditions, mut levels: Vec<u64>, options: &FitOptions) -> (u64, Vec<u64>) {
    let mut score = conditions.satisfied(&levels);
    loop {
        let mut improved = false;
        for h in 1..=options.max_h {
            let (lo, hi) = if options.monotone {
                let hi = if h > 1 { levels[h - 1] } else { options.grid };
                let lo = if h < options.max_h { levels[h + 1] } else { 0 };
                (lo, hi)
            } else {
                (0, options.grid)
            };
            let original = levels[h];
            let mut best = (score, original);
            for v in lo..=hi {
                if v == original {
                    continue;
                }
                levels[h] = v;
                let s = conditions.satisfied(&levels);
                // only coordinate h differs, so the level order reduces to v
                if s > best.0 || (s == best.0 && v > best.1) {
                    best = (s, v);
                }
            }
            levels[h] = best.1;
            if best.1 != original {
                score = best.0;
                improved = true;
            }
        }
        if !improved {
            return (score, levels);
        }
    }
}

pub fn fit_suppression(records: &[ResponseRecord], options: &FitOptions) -> FitResult {
    let max_h = options.max_h.max(1);
    let options = FitOptions {
        max_h,
        grid: options.grid.max(1),
        ..options.clone()
    };
    let conditions = Conditions::from_records(records, max_h);

    let mut default = vec![options.grid; max_h + 1];
    default[0] = 0;
    let mut best = climb(&conditions, default, &options);

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.restarts {
        let mut start: Vec<u64> = (0..=max_h).map(|_| rng.gen_range(0..=options.grid)).collect();
        start[0] = 0;
        if options.monotone {
            start[1..].sort_unstable_by(|a, b| b.cmp(a));
        }
        let candidate = climb(&conditions, start, &options);
        if better((candidate.0, &candidate.1), (best.0, &best.1)) {
            best = candidate;
        }
    }

    let (satisfied, levels) = best;
    let table = SuppressionTable::new(
        levels
            .iter()
            .map(|&g| BigRational::new(g.into(), options.grid.into()))
            .collect(),
    )
    .expect("grid levels lie in [0, 1] with r(0) = 0");
    FitResult {
        table,
        levels,
        satisfied,
        total: conditions.total(),
    }
}

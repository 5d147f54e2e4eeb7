#![allow(dead_code)]

use mcap::generate::{random_instance, BoundsMode, GeneratorConfig, SuppressionFamily};
use mcap::learning::ResponseRecord;
use mcap::reduction::{BooleanAssignment, CnfFormula, ReducedInstance};
use mcap::{AssignmentMatrix, Instance};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FOUR_CLAUSES: &str = "p cnf 3 4\n1 2 3 0\n1 -2 3 0\n-1 2 3 0\n-1 2 -3 0\n";

/// n <= max_n, k <= max_k, p in 0..=9, grid-4 suppression, random bounds.
pub fn oracle_instance<R: Rng>(rng: &mut R, max_n: usize, max_k: usize) -> Instance {
    let mut config = GeneratorConfig::new(rng.gen_range(1..=max_n), rng.gen_range(1..=max_k));
    config.preference_range = (0, 9);
    config.family = SuppressionFamily::Grid;
    config.grid = 4;
    config.bounds = BoundsMode::Random;
    random_instance(&config, rng).unwrap()
}

pub fn constant_instance<R: Rng>(rng: &mut R, max_n: usize, max_k: usize) -> Instance {
    let mut config = GeneratorConfig::new(rng.gen_range(1..=max_n), rng.gen_range(1..=max_k));
    config.family = SuppressionFamily::Constant;
    random_instance(&config, rng).unwrap()
}

pub fn unbounded_instance<R: Rng>(rng: &mut R, max_n: usize, max_k: usize) -> Instance {
    let mut config = GeneratorConfig::new(rng.gen_range(1..=max_n), rng.gen_range(1..=max_k));
    config.bounds = BoundsMode::Unbounded;
    random_instance(&config, rng).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, k: usize) -> AssignmentMatrix {
    let mut m = AssignmentMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            m.set(i, j, rng.gen_bool(0.5));
        }
    }
    m
}

/// A matrix whose column sums are drawn uniformly from `[b_j, b^j]`.
pub fn random_feasible_matrix<R: Rng>(rng: &mut R, inst: &Instance) -> AssignmentMatrix {
    let mut m = AssignmentMatrix::zeros(inst.n(), inst.k());
    let mut customers: Vec<usize> = (0..inst.n()).collect();
    for j in 0..inst.k() {
        let count = rng.gen_range(inst.lower_bounds()[j]..=inst.upper_bounds()[j]);
        customers.shuffle(rng);
        for &i in &customers[..count] {
            m.set(i, j, true);
        }
    }
    m
}

fn random_clause<R: Rng>(rng: &mut R, l: usize) -> Vec<i64> {
    let mut vars: Vec<i64> = (1..=l as i64).collect();
    vars.shuffle(rng);
    vars[..3]
        .iter()
        .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
        .collect()
}

/// Random valid 3-CNF with `l` variables and `m` clauses (needs `3m >= l`).
pub fn random_formula<R: Rng>(rng: &mut R, l: usize, m: usize) -> CnfFormula {
    loop {
        let clauses: Vec<Vec<i64>> = (0..m).map(|_| random_clause(rng, l)).collect();
        if let Ok(f) = CnfFormula::new(l, &clauses) {
            return f;
        }
    }
}

/// Random valid 3-CNF satisfied by a random planted assignment.
pub fn planted_formula<R: Rng>(rng: &mut R, l: usize, m: usize) -> (CnfFormula, BooleanAssignment) {
    let planted = BooleanAssignment::new((0..l).map(|_| rng.gen_bool(0.5)).collect());
    loop {
        let clauses: Vec<Vec<i64>> = (0..m)
            .map(|_| loop {
                let c = random_clause(rng, l);
                if c.iter().any(|&lit| planted.value(lit.unsigned_abs() as usize) == (lit > 0)) {
                    break c;
                }
            })
            .collect();
        if let Ok(f) = CnfFormula::new(l, &clauses) {
            assert!(f.is_satisfied_by(&planted));
            return (f, planted);
        }
    }
}

/// Random matrix with column sums exactly `b^*` (the reduced instances have
/// `b_* = b^*`).
pub fn random_reduced_matrix<R: Rng>(rng: &mut R, red: &ReducedInstance) -> AssignmentMatrix {
    random_feasible_matrix(rng, &red.instance)
}

/// Noise-free responses from the grid table `levels`: a customer responds
/// iff `p * levels[h] >= cutoff`.
pub fn synthetic_records<R: Rng>(
    rng: &mut R,
    levels: &[u64],
    cutoff: u64,
    customers: usize,
    campaigns: usize,
) -> Vec<ResponseRecord> {
    let max_h = levels.len() - 1;
    let mut records = Vec::new();
    for customer in 0..customers {
        for campaign in 0..campaigns {
            let preference = rng.gen_range(1..=9);
            let h = rng.gen_range(1..=max_h);
            records.push(ResponseRecord {
                customer,
                campaign,
                preference,
                h,
                responded: preference * levels[h] >= cutoff,
            });
        }
    }
    records
}

/// Best satisfied-condition count over every grid table, by enumeration.
pub fn exhaustive_best(records: &[ResponseRecord], max_h: usize, grid: u64) -> u64 {
    let mut best = 0;
    let mut levels = vec![0u64; max_h + 1];
    loop {
        best = best.max(count_conditions(records, &levels));
        let mut h = 1;
        loop {
            if h > max_h {
                return best;
            }
            if levels[h] < grid {
                levels[h] += 1;
                break;
            }
            levels[h] = 0;
            h += 1;
        }
    }
}

/// Direct pairwise count of satisfied conditions, independent of the
/// library's condition bookkeeping.
pub fn count_conditions(records: &[ResponseRecord], levels: &[u64]) -> u64 {
    let mut count = 0;
    for a in records.iter().filter(|r| r.responded) {
        for b in records.iter().filter(|r| !r.responded) {
            if a.campaign == b.campaign
                && a.customer != b.customer
                && a.preference * levels[a.h] > b.preference * levels[b.h]
            {
                count += 1;
            }
        }
    }
    count
}

pub fn total_conditions(records: &[ResponseRecord]) -> u64 {
    let mut count = 0;
    for a in records.iter().filter(|r| r.responded) {
        for b in records.iter().filter(|r| !r.responded) {
            if a.campaign == b.campaign && a.customer != b.customer {
                count += 1;
            }
        }
    }
    count
}

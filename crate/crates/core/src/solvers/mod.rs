//! Exact, special-case and heuristic solvers.
//!
//! Every solver returns a [`SolveResult`] whose fitness has been recomputed
//! from the returned matrix with [`evaluate_fitness`] and whose matrix has
//! passed [`check_feasibility`].

mod brute;
mod capacity;
mod dp;
mod greedy;
mod local;
mod special;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fitness::{check_feasibility, evaluate_fitness};
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

pub use brute::{brute_force_solve, brute_force_solve_with, DEFAULT_BRUTE_FORCE_CELLS};
pub use capacity::CapacityVector;
pub use dp::{dp_solve, dp_solve_with, dp_state_count, DEFAULT_DP_STATES};
pub use greedy::greedy_construct;
pub use local::local_search;
pub use special::{solve_constant_suppression, solve_unbounded};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub elapsed: Duration,
    /// Matrices, DP states or moves examined, depending on the solver.
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub matrix: AssignmentMatrix,
    pub fitness: BigRational,
    /// True when the solver guarantees global optimality.
    pub optimal: bool,
    pub stats: SolveStats,
}

/// Wraps a solver's matrix into a [`SolveResult`], re-deriving fitness and
/// rejecting infeasible output.
pub(crate) fn finish(
    inst: &Instance,
    matrix: AssignmentMatrix,
    optimal: bool,
    started: Instant,
    explored: u64,
) -> Result<SolveResult> {
    let report = check_feasibility(inst, &matrix)?;
    if !report.feasible {
        return Err(Error::Internal(format!(
            "solver produced an infeasible matrix: {:?}",
            report.violations
        )));
    }
    let fitness = evaluate_fitness(inst, &matrix)?;
    Ok(SolveResult {
        matrix,
        fitness,
        optimal,
        stats: SolveStats {
            elapsed: started.elapsed(),
            explored,
        },
    })
}

/// `sum_{j in S} w_j p_ij` for every subset mask `S` of `0..k`, built
/// incrementally: each subset extends the subset without its lowest bit.
pub(crate) fn subset_sums(inst: &Instance, customer: usize) -> Vec<BigInt> {
    let k = inst.k();
    let weighted: Vec<BigInt> = (0..k)
        .map(|j| inst.weighted_preference(customer, j))
        .collect();
    let mut sums = vec![BigInt::default(); 1 << k];
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = &sums[mask & (mask - 1)] + &weighted[low];
    }
    sums
}

/// Largest `k` for which the solvers enumerate per-customer subsets.
pub(crate) const MAX_SUBSET_CAMPAIGNS: usize = 24;

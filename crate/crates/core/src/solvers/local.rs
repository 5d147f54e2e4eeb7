//! First-improvement local search over single-cell flips and within-column
//! swaps.

use std::time::Instant;

use num_rational::BigRational;

use super::{finish, SolveResult};
use crate::error::{Error, Result};
use crate::fitness::{check_feasibility, row_contribution};
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

/// Improves `start` until no flip or swap increases fitness. Moves are
/// scanned in row-major order and the scan restarts after every accepted
/// move. Fitness strictly increases with each move, so the search ends.
pub fn local_search(inst: &Instance, start: &AssignmentMatrix) -> Result<SolveResult> {
    let report = check_feasibility(inst, start)?;
    if !report.feasible {
        return Err(Error::Infeasible(format!(
            "local search start violates bounds: {:?}",
            report.violations
        )));
    }
    let started = Instant::now();
    let mut search = Search {
        inst,
        matrix: start.clone(),
        columns: report.column_sums,
        contributions: (0..inst.n())
            .map(|i| row_contribution(inst, i, start.row(i)))
            .collect(),
        scanned: 0,
    };
    while search.improve_once() {}
    let Search {
        matrix, scanned, ..
    } = search;
    finish(inst, matrix, false, started, scanned)
}

struct Search<'a> {
    inst: &'a Instance,
    matrix: AssignmentMatrix,
    columns: Vec<usize>,
    contributions: Vec<BigRational>,
    scanned: u64,
}

impl Search<'_> {
    /// Applies the first improving move, if any.
    fn improve_once(&mut self) -> bool {
        let (n, k) = (self.inst.n(), self.inst.k());
        for i in 0..n {
            for j in 0..k {
                if self.try_flip(i, j) {
                    return true;
                }
                if self.matrix.get(i, j) {
                    for other in 0..n {
                        if !self.matrix.get(other, j) && self.try_swap(i, other, j) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn flipped_contribution(&self, i: usize, j: usize) -> BigRational {
        let mut row = self.matrix.row(i).to_vec();
        row[j] = !row[j];
        row_contribution(self.inst, i, &row)
    }

    fn try_flip(&mut self, i: usize, j: usize) -> bool {
        self.scanned += 1;
        let set = self.matrix.get(i, j);
        let column = self.columns[j];
        let allowed = if set {
            column > self.inst.lower_bounds()[j]
        } else {
            column < self.inst.upper_bounds()[j]
        };
        if !allowed {
            return false;
        }
        let after = self.flipped_contribution(i, j);
        if after <= self.contributions[i] {
            return false;
        }
        self.matrix.set(i, j, !set);
        self.contributions[i] = after;
        if set {
            self.columns[j] -= 1;
        } else {
            self.columns[j] += 1;
        }
        true
    }

    /// Moves campaign `j` from customer `from` to customer `to`; column sums
    /// are unchanged.
    fn try_swap(&mut self, from: usize, to: usize, j: usize) -> bool {
        self.scanned += 1;
        let from_after = self.flipped_contribution(from, j);
        let to_after = self.flipped_contribution(to, j);
        let gain = &from_after + &to_after - &self.contributions[from] - &self.contributions[to];
        if gain <= BigRational::default() {
            return false;
        }
        self.matrix.set(from, j, false);
        self.matrix.set(to, j, true);
        self.contributions[from] = from_after;
        self.contributions[to] = to_after;
        true
    }
}

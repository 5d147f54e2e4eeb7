use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;

use super::{finish, SolveResult};
use crate::error::{Error, Result};
use crate::fitness::row_contribution;
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

/// Default cap on `n * k` for exhaustive enumeration.
pub const DEFAULT_BRUTE_FORCE_CELLS: usize = 24;

pub fn brute_force_solve(inst: &Instance) -> Result<SolveResult> {
    brute_force_solve_with(inst, DEFAULT_BRUTE_FORCE_CELLS)
}

/// Enumerates every matrix (each customer's campaign subset independently)
/// and keeps the best feasible one. Among equal optima the lexicographically
/// smallest matrix in row-major bit order wins.
pub fn brute_force_solve_with(inst: &Instance, max_cells: usize) -> Result<SolveResult> {
    let (n, k) = (inst.n(), inst.k());
    if n * k > max_cells || k >= 64 {
        return Err(Error::GuardExceeded(format!(
            "brute force needs n*k <= {max_cells}, instance has {n}*{k}"
        )));
    }
    let started = Instant::now();

    // Row patterns in increasing order of the bit string m_i1 m_i2 ... m_ik.
    let patterns: Vec<Vec<bool>> = (0u64..1 << k)
        .map(|v| (0..k).map(|j| v >> (k - 1 - j) & 1 == 1).collect())
        .collect();
    let values: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            patterns
                .iter()
                .map(|row| row_contribution(inst, i, row))
                .collect()
        })
        .collect();

    let mut search = Search {
        inst,
        patterns: &patterns,
        values: &values,
        columns: vec![0; k],
        chosen: vec![0; n],
        best: None,
        leaves: 0,
    };
    search.descend(0, BigRational::zero());

    let Search { best, leaves, .. } = search;
    let (_, rows) =
        best.ok_or_else(|| Error::Internal("no feasible matrix exists for a valid instance".into()))?;
    let mut matrix = AssignmentMatrix::zeros(n, k);
    for (i, &p) in rows.iter().enumerate() {
        for (j, &bit) in patterns[p].iter().enumerate() {
            matrix.set(i, j, bit);
        }
    }
    finish(inst, matrix, true, started, leaves)
}

struct Search<'a> {
    inst: &'a Instance,
    patterns: &'a [Vec<bool>],
    values: &'a [Vec<BigRational>],
    columns: Vec<usize>,
    chosen: Vec<usize>,
    best: Option<(BigRational, Vec<usize>)>,
    leaves: u64,
}

impl Search<'_> {
    fn descend(&mut self, customer: usize, partial: BigRational) {
        let n = self.inst.n();
        if customer == n {
            self.leaves += 1;
            let improves = self.best.as_ref().is_none_or(|(f, _)| partial > *f);
            if improves && self.meets_lower_bounds() {
                self.best = Some((partial, self.chosen.clone()));
            }
            return;
        }
        let remaining = n - customer - 1;
        for (p, row) in self.patterns.iter().enumerate() {
            let fits = row.iter().enumerate().all(|(j, &bit)| {
                let c = self.columns[j] + bit as usize;
                c <= self.inst.upper_bounds()[j] && c + remaining >= self.inst.lower_bounds()[j]
            });
            if !fits {
                continue;
            }
            self.bump(row, true);
            self.chosen[customer] = p;
            let next = &partial + &self.values[customer][p];
            self.descend(customer + 1, next);
            self.bump(row, false);
        }
    }

    fn bump(&mut self, row: &[bool], add: bool) {
        for (c, &bit) in self.columns.iter_mut().zip(row) {
            if bit {
                if add {
                    *c += 1;
                } else {
                    *c -= 1;
                }
            }
        }
    }

    fn meets_lower_bounds(&self) -> bool {
        self.columns
            .iter()
            .zip(self.inst.lower_bounds())
            .all(|(c, b)| c >= b)
    }
}

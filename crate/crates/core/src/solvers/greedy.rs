//! Constructive greedy assignment.
//!
//! Phase 1 meets every lower bound by repeatedly adding the cell with the
//! largest marginal gain inside the deficient campaign. Phase 2 keeps adding
//! the globally best cell while its gain is positive and its campaign has
//! room. Gains change only for the row that was just modified, so the heap
//! holds one generation of entries per row and older generations are
//! discarded when popped.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{finish, SolveResult};
use crate::error::Result;
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

pub fn greedy_construct(inst: &Instance) -> Result<SolveResult> {
    let started = Instant::now();
    let mut state = RowState::new(inst);
    let mut explored = 0u64;

    for j in 0..inst.k() {
        while state.columns[j] < inst.lower_bounds()[j] {
            let mut best: Option<(BigRational, usize)> = None;
            for i in 0..inst.n() {
                if state.matrix.get(i, j) {
                    continue;
                }
                explored += 1;
                let gain = state.gain(i, j);
                if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                    best = Some((gain, i));
                }
            }
            // lower <= upper <= n guarantees a free cell exists
            let (_, i) = best.expect("free cell below the lower bound");
            state.add(i, j);
        }
    }

    let mut heap = BinaryHeap::new();
    for i in 0..inst.n() {
        state.push_row(i, &mut heap);
    }
    while let Some(entry) = heap.pop() {
        explored += 1;
        if entry.generation != state.generation[entry.customer] {
            continue;
        }
        if entry.gain <= BigRational::zero() {
            break;
        }
        let (i, j) = (entry.customer, entry.campaign);
        if state.matrix.get(i, j) || state.columns[j] >= inst.upper_bounds()[j] {
            continue;
        }
        state.add(i, j);
        state.push_row(i, &mut heap);
    }

    finish(inst, state.matrix, false, started, explored)
}

struct RowState<'a> {
    inst: &'a Instance,
    matrix: AssignmentMatrix,
    counts: Vec<usize>,
    row_values: Vec<BigInt>,
    columns: Vec<usize>,
    generation: Vec<u64>,
}

impl<'a> RowState<'a> {
    fn new(inst: &'a Instance) -> Self {
        Self {
            inst,
            matrix: AssignmentMatrix::zeros(inst.n(), inst.k()),
            counts: vec![0; inst.n()],
            row_values: vec![BigInt::zero(); inst.n()],
            columns: vec![0; inst.k()],
            generation: vec![0; inst.n()],
        }
    }

    /// `r_i(h+1) (V_i + w_j p_ij) - r_i(h) V_i` for the current row value `V_i`.
    fn gain(&self, i: usize, j: usize) -> BigRational {
        let table = self.inst.suppression(i);
        let h = self.counts[i];
        let before = BigRational::from_integer(self.row_values[i].clone());
        let after =
            BigRational::from_integer(&self.row_values[i] + self.inst.weighted_preference(i, j));
        table.get(h + 1) * after - table.get(h) * before
    }

    fn add(&mut self, i: usize, j: usize) {
        self.matrix.set(i, j, true);
        self.counts[i] += 1;
        self.row_values[i] += self.inst.weighted_preference(i, j);
        self.columns[j] += 1;
        self.generation[i] += 1;
    }

    fn push_row(&self, i: usize, heap: &mut BinaryHeap<Entry>) {
        for j in 0..self.inst.k() {
            if !self.matrix.get(i, j) && self.columns[j] < self.inst.upper_bounds()[j] {
                heap.push(Entry {
                    gain: self.gain(i, j),
                    customer: i,
                    campaign: j,
                    generation: self.generation[i],
                });
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Entry {
    gain: BigRational,
    customer: usize,
    campaign: usize,
    generation: u64,
}

impl Ord for Entry {
    // max gain first, then smaller customer, then smaller campaign
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .cmp(&other.gain)
            .then_with(|| Reverse(self.customer).cmp(&Reverse(other.customer)))
            .then_with(|| Reverse(self.campaign).cmp(&Reverse(other.campaign)))
            .then_with(|| self.generation.cmp(&other.generation))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{validate_instance, RawInstance};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn single(lower: usize) -> Instance {
        validate_instance(RawInstance {
            n: 1,
            k: 2,
            weights: vec![2.into(), 3.into()],
            preferences: vec![vec![5.into(), 7.into()]],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 2)]],
            lower_bounds: vec![lower; 2],
            upper_bounds: vec![1, 1],
        })
        .unwrap()
    }

    #[test]
    fn unbounded_single_customer() {
        let res = greedy_construct(&single(0)).unwrap();
        assert!(!res.optimal);
        assert!(res.fitness <= q(21, 1));
        // the first pick is campaign 2 (gain 21); adding campaign 1 would lose
        assert_eq!(res.fitness, q(21, 1));
    }

    #[test]
    fn forced_instance() {
        let res = greedy_construct(&single(1)).unwrap();
        assert_eq!(res.matrix.to_row_strings(), ["11"]);
        assert_eq!(res.fitness, q(31, 2));
    }

    #[test]
    fn zero_preferences_stay_empty() {
        let inst = validate_instance(RawInstance {
            n: 3,
            k: 2,
            weights: vec![1.into(), 1.into()],
            preferences: vec![vec![0.into(), 0.into()]; 3],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 1)]; 3],
            lower_bounds: vec![0, 0],
            upper_bounds: vec![3, 3],
        })
        .unwrap();
        let res = greedy_construct(&inst).unwrap();
        assert_eq!(res.matrix, AssignmentMatrix::zeros(3, 2));
        assert_eq!(res.fitness, q(0, 1));
    }
}

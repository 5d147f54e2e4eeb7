//! Dynamic programming over capacity vectors.
//!
//! `D[m][c]` is the best fitness of the first `m` customers whose campaign
//! column sums are exactly `c`. Customer `m` extends a state by one campaign
//! subset `S`; the answer is the best terminal state inside `[b_*, b^*]`.
//! Fitness values are scaled by the lcm of all suppression denominators so
//! the recurrence runs on integers.

use std::ops::Add;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::capacity::CapacityVector;
use super::{finish, subset_sums, SolveResult, MAX_SUBSET_CAMPAIGNS};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

/// Default cap on capacity states per DP layer.
pub const DEFAULT_DP_STATES: usize = 10_000_000;

/// Number of capacity states per layer, `prod_j (b^j + 1)`.
pub fn dp_state_count(inst: &Instance) -> Option<usize> {
    CapacityVector::state_count(inst.upper_bounds())
}

pub fn dp_solve(inst: &Instance) -> Result<SolveResult> {
    dp_solve_with(inst, DEFAULT_DP_STATES)
}

pub fn dp_solve_with(inst: &Instance, max_states: usize) -> Result<SolveResult> {
    let k = inst.k();
    if k > MAX_SUBSET_CAMPAIGNS {
        return Err(Error::GuardExceeded(format!(
            "dynamic programming enumerates 2^k subsets, k={k} exceeds {MAX_SUBSET_CAMPAIGNS}"
        )));
    }
    let states = dp_state_count(inst)
        .filter(|&s| s <= max_states)
        .ok_or_else(|| {
            Error::GuardExceeded(format!(
                "dynamic programming needs more than {max_states} states per layer"
            ))
        })?;
    let started = Instant::now();

    let scale = common_denominator(inst);
    let values: Vec<Vec<BigInt>> = (0..inst.n()).map(|i| scaled_values(inst, i, &scale)).collect();

    let limit = BigInt::from(i128::MAX);
    let bound: BigInt = values
        .iter()
        .map(|row| row.iter().max().cloned().unwrap_or_default())
        .sum();
    let (best, matrix, explored) = if bound <= limit {
        let narrow: Vec<Vec<i128>> = values
            .iter()
            .map(|row| row.iter().map(|v| v.to_i128().expect("bounded")).collect())
            .collect();
        let (best, matrix, explored) = run(inst, &narrow, states)?;
        (BigInt::from(best), matrix, explored)
    } else {
        run(inst, &values, states)?
    };

    let result = finish(inst, matrix, true, started, explored)?;
    if result.fitness != BigRational::new(best, scale) {
        return Err(Error::Internal(
            "dynamic programming value disagrees with the reconstructed matrix".into(),
        ));
    }
    Ok(result)
}

/// lcm of the denominators of every suppression entry.
fn common_denominator(inst: &Instance) -> BigInt {
    inst.suppression_tables()
        .iter()
        .flat_map(|t| t.values())
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// `scale * r_i(|S|) * sum_{j in S} w_j p_ij` for every subset `S`.
fn scaled_values(inst: &Instance, customer: usize, scale: &BigInt) -> Vec<BigInt> {
    let table = inst.suppression(customer);
    let factors: Vec<BigInt> = table
        .values()
        .iter()
        .map(|r| r.numer() * (scale / r.denom()))
        .collect();
    subset_sums(inst, customer)
        .into_iter()
        .enumerate()
        .map(|(mask, sum)| {
            let factor = &factors[mask.count_ones() as usize];
            if factor.is_zero() {
                BigInt::zero()
            } else {
                factor * sum
            }
        })
        .collect()
}

fn run<V>(inst: &Instance, values: &[Vec<V>], states: usize) -> Result<(V, AssignmentMatrix, u64)>
where
    V: Clone + Ord + Zero + for<'a> Add<&'a V, Output = V>,
{
    let (n, k) = (inst.n(), inst.k());
    let upper = inst.upper_bounds();
    let strides = CapacityVector::strides(upper);
    let all = (1u32 << k) - 1;
    let mut offsets = vec![0usize; 1 << k];
    for mask in 1usize..1 << k {
        offsets[mask] = offsets[mask & (mask - 1)] + strides[mask.trailing_zeros() as usize];
    }

    let mut layer: Vec<Option<V>> = vec![None; states];
    layer[0] = Some(V::zero());
    let mut choices: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut explored = 0u64;

    for row in values {
        let mut next: Vec<Option<V>> = vec![None; states];
        let mut choice = vec![0u32; states];
        let mut counts = vec![0usize; k];
        for (index, slot) in layer.iter().enumerate() {
            if index > 0 {
                advance(&mut counts, upper);
            }
            let Some(base) = slot else { continue };
            let full = counts
                .iter()
                .zip(upper)
                .enumerate()
                .filter(|(_, (c, b))| c == b)
                .fold(0u32, |acc, (j, _)| acc | 1 << j);
            let free = all & !full;
            // ascending enumeration of the submasks of `free`
            let mut subset = 0u32;
            loop {
                explored += 1;
                let target = index + offsets[subset as usize];
                let candidate = base.clone() + &row[subset as usize];
                if next[target].as_ref().is_none_or(|cur| candidate > *cur) {
                    next[target] = Some(candidate);
                    choice[target] = subset;
                }
                if subset == free {
                    break;
                }
                subset = subset.wrapping_sub(free) & free;
            }
        }
        layer = next;
        choices.push(choice);
    }

    let lower = inst.lower_bounds();
    let mut best: Option<(usize, &V)> = None;
    let mut counts = vec![0usize; k];
    for (index, slot) in layer.iter().enumerate() {
        if index > 0 {
            advance(&mut counts, upper);
        }
        let Some(value) = slot else { continue };
        let in_box = counts.iter().zip(lower).all(|(c, b)| c >= b);
        if in_box && best.is_none_or(|(_, v)| value > v) {
            best = Some((index, value));
        }
    }
    let (mut index, value) =
        best.ok_or_else(|| Error::Internal("no terminal state within the bounds".into()))?;
    let value = value.clone();

    let mut matrix = AssignmentMatrix::zeros(n, k);
    for (customer, choice) in choices.iter().enumerate().rev() {
        let subset = choice[index];
        matrix.set_row_mask(customer, subset as u64);
        index -= offsets[subset as usize];
    }
    debug_assert_eq!(index, 0);
    Ok((value, matrix, explored))
}

/// Steps a mixed-radix odometer (campaign 0 fastest).
fn advance(counts: &mut [usize], upper: &[usize]) {
    for (c, &b) in counts.iter_mut().zip(upper) {
        if *c < b {
            *c += 1;
            return;
        }
        *c = 0;
    }
}

//! Polynomial solvers for the two tractable special cases: constant
//! suppression per customer, and no capacity bounds at all.

use std::cmp::Reverse;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{finish, SolveResult};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

/// Optimal when every customer's suppression is a constant `rho_i` on
/// `1..=k`. The objective then separates by campaign, so each campaign takes
/// its top `b^j` customers by `rho_i * p_ij`. O(nk log n).
pub fn solve_constant_suppression(inst: &Instance) -> Result<SolveResult> {
    let rhos = (0..inst.n())
        .map(|i| {
            inst.suppression(i).constant_value().cloned().ok_or_else(|| {
                Error::Precondition(format!(
                    "suppression of customer {i} is not constant on 1..=k"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let started = Instant::now();
    let (n, k) = (inst.n(), inst.k());
    let mut matrix = AssignmentMatrix::zeros(n, k);
    for j in 0..k {
        let mut order: Vec<(BigRational, usize)> = rhos
            .iter()
            .enumerate()
            .map(|(i, rho)| (rho * BigRational::from_integer(inst.preference(i, j).clone()), i))
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, i) in order.iter().take(inst.upper_bounds()[j]) {
            matrix.set(i, j, true);
        }
    }
    finish(inst, matrix, true, started, (n * k) as u64)
}

/// Optimal when `b_* = 0` and `b^* = n`. Customers are independent: each
/// takes the prefix of its campaigns sorted by `w_j p_ij` whose length `h`
/// maximizes `r_i(h) * prefix_sum(h)`. O(nk log k).
pub fn solve_unbounded(inst: &Instance) -> Result<SolveResult> {
    let n = inst.n();
    let unbounded = inst.lower_bounds().iter().all(|&b| b == 0)
        && inst.upper_bounds().iter().all(|&b| b == n);
    if !unbounded {
        return Err(Error::Precondition(
            "unbounded solver requires lower bounds 0 and upper bounds n".into(),
        ));
    }
    let started = Instant::now();
    let k = inst.k();
    let mut matrix = AssignmentMatrix::zeros(n, k);
    for i in 0..n {
        let mut order: Vec<(BigInt, usize)> =
            (0..k).map(|j| (inst.weighted_preference(i, j), j)).collect();
        order.sort_by_key(|(v, j)| (Reverse(v.clone()), *j));

        let table = inst.suppression(i);
        let mut prefix = BigInt::zero();
        let mut best = (BigRational::zero(), 0usize);
        for (h, (v, _)) in order.iter().enumerate().map(|(h, e)| (h + 1, e)) {
            prefix += v;
            let value = table.get(h) * BigRational::from_integer(prefix.clone());
            if value > best.0 {
                best = (value, h);
            }
        }
        for &(_, j) in &order[..best.1] {
            matrix.set(i, j, true);
        }
    }
    finish(inst, matrix, true, started, (n * k) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{validate_instance, RawInstance};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constant_suppression_example() {
        let inst = validate_instance(RawInstance {
            n: 3,
            k: 1,
            weights: vec![1.into()],
            preferences: vec![vec![4.into()], vec![6.into()], vec![5.into()]],
            suppression: vec![
                vec![q(0, 1), q(1, 1)],
                vec![q(0, 1), q(1, 2)],
                vec![q(0, 1), q(1, 1)],
            ],
            lower_bounds: vec![1],
            upper_bounds: vec![2],
        })
        .unwrap();
        let res = solve_constant_suppression(&inst).unwrap();
        assert_eq!(res.matrix.to_row_strings(), ["1", "0", "1"]);
        assert_eq!(res.fitness, q(9, 1));
    }

    #[test]
    fn zero_rho_gives_zero() {
        let inst = validate_instance(RawInstance {
            n: 2,
            k: 2,
            weights: vec![1.into(), 2.into()],
            preferences: vec![vec![4.into(), 1.into()], vec![6.into(), 3.into()]],
            suppression: vec![vec![q(0, 1); 3]; 2],
            lower_bounds: vec![0, 1],
            upper_bounds: vec![1, 2],
        })
        .unwrap();
        assert_eq!(solve_constant_suppression(&inst).unwrap().fitness, q(0, 1));
    }

    #[test]
    fn constant_precondition() {
        let inst = validate_instance(RawInstance {
            n: 1,
            k: 2,
            weights: vec![1.into(), 1.into()],
            preferences: vec![vec![1.into(), 1.into()]],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 2)]],
            lower_bounds: vec![0, 0],
            upper_bounds: vec![1, 1],
        })
        .unwrap();
        assert!(matches!(
            solve_constant_suppression(&inst).unwrap_err(),
            Error::Precondition(_)
        ));
    }

    #[test]
    fn unbounded_example() {
        let inst = validate_instance(RawInstance {
            n: 1,
            k: 2,
            weights: vec![2.into(), 3.into()],
            preferences: vec![vec![5.into(), 7.into()]],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 2)]],
            lower_bounds: vec![0, 0],
            upper_bounds: vec![1, 1],
        })
        .unwrap();
        let res = solve_unbounded(&inst).unwrap();
        assert_eq!(res.matrix.to_row_strings(), ["01"]);
        assert_eq!(res.fitness, q(21, 1));
    }

    #[test]
    fn unbounded_zero_preferences() {
        let inst = validate_instance(RawInstance {
            n: 2,
            k: 2,
            weights: vec![1.into(), 1.into()],
            preferences: vec![vec![0.into(), 0.into()]; 2],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 1)]; 2],
            lower_bounds: vec![0, 0],
            upper_bounds: vec![2, 2],
        })
        .unwrap();
        let res = solve_unbounded(&inst).unwrap();
        assert_eq!(res.matrix, AssignmentMatrix::zeros(2, 2));
        assert_eq!(res.fitness, q(0, 1));
    }

    #[test]
    fn unbounded_precondition() {
        let inst = validate_instance(RawInstance {
            n: 2,
            k: 1,
            weights: vec![1.into()],
            preferences: vec![vec![1.into()]; 2],
            suppression: vec![vec![q(0, 1), q(1, 1)]; 2],
            lower_bounds: vec![0],
            upper_bounds: vec![1],
        })
        .unwrap();
        assert!(matches!(
            solve_unbounded(&inst).unwrap_err(),
            Error::Precondition(_)
        ));
    }
}

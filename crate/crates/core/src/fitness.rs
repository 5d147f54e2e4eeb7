//! Exact fitness evaluation and capacity feasibility checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matrix::AssignmentMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub campaign: usize,
    pub sum: usize,
    pub bound: BoundKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub column_sums: Vec<usize>,
    pub violations: Vec<BoundViolation>,
}

pub(crate) fn check_dimensions(inst: &Instance, m: &AssignmentMatrix) -> Result<()> {
    if m.rows() != inst.n() || m.cols() != inst.k() {
        return Err(Error::DimensionMismatch {
            expected_rows: inst.n(),
            expected_cols: inst.k(),
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// Number of campaigns recommended to each customer (the row sums `h_i`).
pub fn recommendation_counts(m: &AssignmentMatrix) -> Vec<usize> {
    m.row_sums()
}

/// Value contributed by one customer: `r_i(h) * sum of w_j p_ij` over the
/// campaigns set in `row`.
pub(crate) fn row_contribution(inst: &Instance, customer: usize, row: &[bool]) -> BigRational {
    let h = row.iter().filter(|&&b| b).count();
    let r = inst.suppression(customer).get(h);
    if h == 0 || r.is_zero() {
        return BigRational::zero();
    }
    let value: BigInt = row
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(j, _)| inst.weighted_preference(customer, j))
        .sum();
    r * BigRational::from_integer(value)
}

/// `F(M) = sum_j sum_i w_j r_i(h_i) p_ij m_ij`, computed exactly in O(nk).
pub fn evaluate_fitness(inst: &Instance, m: &AssignmentMatrix) -> Result<BigRational> {
    check_dimensions(inst, m)?;
    Ok((0..inst.n())
        .map(|i| row_contribution(inst, i, m.row(i)))
        .fold(BigRational::zero(), |acc, v| acc + v))
}

pub fn check_feasibility(inst: &Instance, m: &AssignmentMatrix) -> Result<FeasibilityReport> {
    check_dimensions(inst, m)?;
    let column_sums = m.column_sums();
    let mut violations = Vec::new();
    for (campaign, &sum) in column_sums.iter().enumerate() {
        if sum < inst.lower_bounds()[campaign] {
            violations.push(BoundViolation {
                campaign,
                sum,
                bound: BoundKind::Lower,
            });
        }
        if sum > inst.upper_bounds()[campaign] {
            violations.push(BoundViolation {
                campaign,
                sum,
                bound: BoundKind::Upper,
            });
        }
    }
    Ok(FeasibilityReport {
        feasible: violations.is_empty(),
        column_sums,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{validate_instance, RawInstance};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two_campaign() -> Instance {
        validate_instance(RawInstance {
            n: 1,
            k: 2,
            weights: vec![2.into(), 3.into()],
            preferences: vec![vec![5.into(), 7.into()]],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 2)]],
            lower_bounds: vec![0, 0],
            upper_bounds: vec![1, 1],
        })
        .unwrap()
    }

    fn square(lower: usize, upper: usize) -> Instance {
        validate_instance(RawInstance {
            n: 2,
            k: 2,
            weights: vec![1.into(), 1.into()],
            preferences: vec![vec![1.into(), 1.into()]; 2],
            suppression: vec![vec![q(0, 1), q(1, 1), q(1, 1)]; 2],
            lower_bounds: vec![lower; 2],
            upper_bounds: vec![upper; 2],
        })
        .unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(recommendation_counts(&AssignmentMatrix::zeros(2, 3)), [0, 0]);
        let m = AssignmentMatrix::from_row_strings(&["110", "001"]).unwrap();
        assert_eq!(recommendation_counts(&m), [2, 1]);
        assert_eq!(recommendation_counts(&AssignmentMatrix::ones(2, 3)), [3, 3]);
    }

    #[test]
    fn fitness_examples() {
        let inst = two_campaign();
        let zero = AssignmentMatrix::zeros(1, 2);
        assert_eq!(evaluate_fitness(&inst, &zero).unwrap(), q(0, 1));
        let both = AssignmentMatrix::from_row_strings(&["11"]).unwrap();
        assert_eq!(evaluate_fitness(&inst, &both).unwrap(), q(31, 2));
        let second = AssignmentMatrix::from_row_strings(&["01"]).unwrap();
        assert_eq!(evaluate_fitness(&inst, &second).unwrap(), q(21, 1));
    }

    #[test]
    fn fitness_dimension_mismatch() {
        let inst = two_campaign();
        let err = evaluate_fitness(&inst, &AssignmentMatrix::zeros(2, 2)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(check_feasibility(&inst, &AssignmentMatrix::zeros(1, 3)).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let report = check_feasibility(&square(0, 2), &AssignmentMatrix::zeros(2, 2)).unwrap();
        assert!(report.feasible);
        assert_eq!(report.column_sums, [0, 0]);

        let report = check_feasibility(&square(1, 2), &AssignmentMatrix::zeros(2, 2)).unwrap();
        assert!(!report.feasible);
        assert_eq!(report.violations.len(), 2);
        assert!(report.violations.iter().all(|v| v.bound == BoundKind::Lower));

        let report = check_feasibility(&square(0, 1), &AssignmentMatrix::ones(2, 2)).unwrap();
        assert!(!report.feasible);
        assert_eq!(report.column_sums, [2, 2]);
        assert!(report
            .violations
            .iter()
            .all(|v| v.bound == BoundKind::Upper && v.sum == 2));
    }
}

//! The 3-SAT to MCAP construction, plus the maps between satisfying
//! assignments and threshold-reaching assignment matrices.
//!
//! For a formula over `x_1..x_l` with clauses `C_1..C_m`:
//!
//! * customers are `u_1, u_1', ..., u_l, u_l'` followed by
//!   `s_1, s_1', s_1'', ..., s_m, s_m', s_m''`;
//! * campaigns are `C_1..C_m` followed by `x_1..x_l`, all with weight 1;
//! * column `C_j` has preference `10^(j-1)` for its three slack customers and
//!   for the literal customer of each of its literals; column `x_i` has
//!   `10^(m+i-1)` for `u_i` and `u_i'`;
//! * suppression tables are indicators: slack customers at 1, `u_i` at
//!   `alpha_i` (1 + occurrences of `x_i`), `u_i'` at `alpha_i'`;
//! * `b_* = b^* = (4,..,4, 1,..,1)` and the threshold `t` is the decimal
//!   number whose digits are `b^*`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cnf::{BooleanAssignment, CnfFormula};
use crate::error::{Error, Result};
use crate::fitness::{check_dimensions, check_feasibility, evaluate_fitness};
use crate::instance::{validate_instance, Instance, RawInstance};
use crate::io::parse_bigint;
use crate::matrix::AssignmentMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CustomerRole {
    /// `u_var` when `positive`, `u_var'` otherwise.
    Literal { var: usize, positive: bool },
    /// `s_clause`, `s_clause'`, `s_clause''` for `copy` 0, 1, 2.
    Slack { clause: usize, copy: usize },
}

impl fmt::Display for CustomerRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Literal { var, positive } => {
                write!(f, "u{var}{}", if positive { "" } else { "'" })
            }
            Self::Slack { clause, copy } => write!(f, "s{clause}{}", "'".repeat(copy)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CampaignLabel {
    Clause(usize),
    Variable(usize),
}

impl fmt::Display for CampaignLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Clause(j) => write!(f, "C{j}"),
            Self::Variable(i) => write!(f, "x{i}"),
        }
    }
}

/// Positional roles of the reduced instance. All indices are 1-based in the
/// role enums and 0-based in the accessor results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    num_vars: usize,
    num_clauses: usize,
    customers: Vec<CustomerRole>,
    campaigns: Vec<CampaignLabel>,
    alpha: Vec<usize>,
    alpha_neg: Vec<usize>,
}

impl ReductionLayout {
    fn new(formula: &CnfFormula) -> Self {
        let (l, m) = (formula.num_vars(), formula.num_clauses());
        let customers = (1..=l)
            .flat_map(|var| {
                [true, false].map(|positive| CustomerRole::Literal { var, positive })
            })
            .chain((1..=m).flat_map(|clause| {
                (0..3).map(move |copy| CustomerRole::Slack { clause, copy })
            }))
            .collect();
        let campaigns = (1..=m)
            .map(CampaignLabel::Clause)
            .chain((1..=l).map(CampaignLabel::Variable))
            .collect();
        let mut alpha = vec![1; l];
        let mut alpha_neg = vec![1; l];
        for lit in formula.clauses().iter().flatten() {
            if lit.positive {
                alpha[lit.var - 1] += 1;
            } else {
                alpha_neg[lit.var - 1] += 1;
            }
        }
        Self {
            num_vars: l,
            num_clauses: m,
            customers,
            campaigns,
            alpha,
            alpha_neg,
        }
    }

    pub fn customers(&self) -> &[CustomerRole] {
        &self.customers
    }

    pub fn campaigns(&self) -> &[CampaignLabel] {
        &self.campaigns
    }

    /// `alpha_var` (positive literal) or `alpha_var'`.
    pub fn alpha(&self, var: usize, positive: bool) -> usize {
        if positive {
            self.alpha[var - 1]
        } else {
            self.alpha_neg[var - 1]
        }
    }

    pub fn literal_customer(&self, var: usize, positive: bool) -> usize {
        2 * (var - 1) + usize::from(!positive)
    }

    pub fn slack_customer(&self, clause: usize, copy: usize) -> usize {
        2 * self.num_vars + 3 * (clause - 1) + copy
    }

    pub fn clause_campaign(&self, clause: usize) -> usize {
        clause - 1
    }

    pub fn variable_campaign(&self, var: usize) -> usize {
        self.num_clauses + var - 1
    }
}

/// A reduced instance together with the formula it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub formula: CnfFormula,
    pub instance: Instance,
    pub layout: ReductionLayout,
    pub threshold: BigInt,
}

pub fn reduce_3sat(formula: &CnfFormula) -> ReducedInstance {
    let layout = ReductionLayout::new(formula);
    let (l, m) = (formula.num_vars(), formula.num_clauses());
    let (n, k) = (2 * l + 3 * m, l + m);
    let ten = BigInt::from(10);
    let digit = |position: usize| ten.pow(position as u32);

    let mut preferences = vec![vec![BigInt::zero(); k]; n];
    for var in 1..=l {
        let column = layout.variable_campaign(var);
        for positive in [true, false] {
            preferences[layout.literal_customer(var, positive)][column] = digit(m + var - 1);
        }
    }
    for (j, clause) in formula.clauses().iter().enumerate() {
        let clause_no = j + 1;
        for lit in clause {
            preferences[layout.literal_customer(lit.var, lit.positive)][j] = digit(j);
        }
        for copy in 0..3 {
            preferences[layout.slack_customer(clause_no, copy)][j] = digit(j);
        }
    }

    let indicator = |at: usize| -> Vec<BigRational> {
        (0..=k)
            .map(|h| {
                if h == at {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    };
    let suppression = layout
        .customers()
        .iter()
        .map(|role| match *role {
            CustomerRole::Literal { var, positive } => indicator(layout.alpha(var, positive)),
            CustomerRole::Slack { .. } => indicator(1),
        })
        .collect();

    let bounds: Vec<usize> = std::iter::repeat_n(4, m)
        .chain(std::iter::repeat_n(1, l))
        .collect();
    let threshold = bounds
        .iter()
        .enumerate()
        .map(|(j, &b)| BigInt::from(b) * digit(j))
        .sum();

    let instance = validate_instance(RawInstance {
        n,
        k,
        weights: vec![BigInt::one(); k],
        preferences,
        suppression,
        lower_bounds: bounds.clone(),
        upper_bounds: bounds,
    })
    .expect("reduction of a valid formula yields a valid instance");

    ReducedInstance {
        formula: formula.clone(),
        instance,
        layout,
        threshold,
    }
}

/// Builds the matrix of value exactly `t` from a satisfying assignment.
pub fn embed_assignment(
    red: &ReducedInstance,
    assignment: &BooleanAssignment,
) -> Result<AssignmentMatrix> {
    let formula = &red.formula;
    let layout = &red.layout;
    if assignment.len() != formula.num_vars() {
        return Err(Error::Precondition(format!(
            "assignment has {} values, formula has {} variables",
            assignment.len(),
            formula.num_vars()
        )));
    }
    if let Some(j) = formula.first_unsatisfied(assignment) {
        return Err(Error::Precondition(format!(
            "assignment does not satisfy clause {}",
            j + 1
        )));
    }
    let inst = &red.instance;
    let mut matrix = AssignmentMatrix::zeros(inst.n(), inst.k());
    for var in 1..=formula.num_vars() {
        let customer = layout.literal_customer(var, assignment.value(var));
        matrix.set(customer, layout.variable_campaign(var), true);
    }
    for (j, clause) in formula.clauses().iter().enumerate() {
        let column = layout.clause_campaign(j + 1);
        let mut filled = 0;
        for lit in clause.iter().filter(|lit| lit.holds(assignment)) {
            matrix.set(layout.literal_customer(lit.var, lit.positive), column, true);
            filled += 1;
        }
        for copy in 0..4 - filled {
            matrix.set(layout.slack_customer(j + 1, copy), column, true);
        }
    }
    Ok(matrix)
}

/// Structural diagnostics of a matrix on a reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCheck {
    pub feasible: bool,
    pub fitness: BigRational,
    pub meets_threshold: bool,
    /// Every set cell has positive preference.
    pub positive_cells: bool,
    /// Every recommended customer has suppression value 1.
    pub unit_suppression: bool,
    /// Every row selects all of its positive-preference cells or none.
    pub all_or_nothing: bool,
    /// Each variable column selects exactly one of `u_i`, `u_i'`.
    pub one_literal_per_variable: bool,
}

impl ReductionCheck {
    pub fn properties_hold(&self) -> bool {
        self.positive_cells
            && self.unit_suppression
            && self.all_or_nothing
            && self.one_literal_per_variable
    }
}

pub fn check_reduction_matrix(red: &ReducedInstance, m: &AssignmentMatrix) -> Result<ReductionCheck> {
    let inst = &red.instance;
    check_dimensions(inst, m)?;
    let feasible = check_feasibility(inst, m)?.feasible;
    let fitness = evaluate_fitness(inst, m)?;
    let meets_threshold = fitness >= BigRational::from_integer(red.threshold.clone());
    let (n, k) = (inst.n(), inst.k());

    let positive = |i: usize, j: usize| !inst.preference(i, j).is_zero();
    let positive_cells = (0..n).all(|i| (0..k).all(|j| !m.get(i, j) || positive(i, j)));
    let counts = m.row_sums();
    let unit_suppression = (0..n)
        .all(|i| counts[i] == 0 || inst.suppression(i).get(counts[i]).is_one());
    let all_or_nothing = (0..n).all(|i| {
        let picked = (0..k).filter(|&j| positive(i, j)).map(|j| m.get(i, j));
        let picked: Vec<bool> = picked.collect();
        picked.iter().all(|&b| b) || picked.iter().all(|&b| !b)
    });
    let layout = &red.layout;
    let one_literal_per_variable = (1..=red.formula.num_vars()).all(|var| {
        let column = layout.variable_campaign(var);
        let pos = m.get(layout.literal_customer(var, true), column);
        let neg = m.get(layout.literal_customer(var, false), column);
        pos != neg
    });
    Ok(ReductionCheck {
        feasible,
        fitness,
        meets_threshold,
        positive_cells,
        unit_suppression,
        all_or_nothing,
        one_literal_per_variable,
    })
}

/// Reads a satisfying assignment off a feasible matrix with `F(M) >= t`:
/// `x_i` is true iff `u_i` is recommended campaign `x_i`.
pub fn extract_assignment(red: &ReducedInstance, m: &AssignmentMatrix) -> Result<BooleanAssignment> {
    let check = check_reduction_matrix(red, m)?;
    if !check.feasible {
        return Err(Error::Infeasible(
            "matrix violates the reduced instance's bounds".into(),
        ));
    }
    if !check.meets_threshold {
        return Err(Error::Precondition(format!(
            "fitness {} is below the threshold {}",
            check.fitness, red.threshold
        )));
    }
    if !check.properties_hold() {
        return Err(Error::Internal(format!(
            "threshold-reaching matrix breaks the reduction's structure: {check:?}"
        )));
    }
    let layout = &red.layout;
    let assignment = BooleanAssignment::new(
        (1..=red.formula.num_vars())
            .map(|var| m.get(layout.literal_customer(var, true), layout.variable_campaign(var)))
            .collect(),
    );
    if let Some(j) = red.formula.first_unsatisfied(&assignment) {
        return Err(Error::Internal(format!(
            "extracted assignment falsifies clause {}",
            j + 1
        )));
    }
    Ok(assignment)
}

/// Sidecar accompanying a reduced instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSidecar {
    pub threshold: String,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub customers: Vec<String>,
    pub campaigns: Vec<String>,
    pub alpha: Vec<usize>,
    pub alpha_neg: Vec<usize>,
}

impl From<&ReducedInstance> for ReductionSidecar {
    fn from(red: &ReducedInstance) -> Self {
        Self {
            threshold: red.threshold.to_string(),
            num_vars: red.formula.num_vars(),
            clauses: red.formula.to_dimacs_clauses(),
            customers: red.layout.customers.iter().map(ToString::to_string).collect(),
            campaigns: red.layout.campaigns.iter().map(ToString::to_string).collect(),
            alpha: red.layout.alpha.clone(),
            alpha_neg: red.layout.alpha_neg.clone(),
        }
    }
}

impl ReducedInstance {
    /// Rebuilds a reduced instance from its two files, checking that they
    /// agree with a fresh reduction of the recorded formula.
    pub fn from_parts(instance: Instance, sidecar: &ReductionSidecar) -> Result<Self> {
        let formula = CnfFormula::new(sidecar.num_vars, &sidecar.clauses)?;
        let red = reduce_3sat(&formula);
        if red.instance != instance {
            return Err(Error::Parse(
                "instance does not match the reduction of the sidecar formula".into(),
            ));
        }
        if red.threshold != parse_bigint(&sidecar.threshold)? || ReductionSidecar::from(&red) != *sidecar {
            return Err(Error::Parse("sidecar layout or threshold is inconsistent".into()));
        }
        Ok(red)
    }
}

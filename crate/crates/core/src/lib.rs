//! Solvers for the multicampaign assignment problem (MCAP).
//!
//! An [`Instance`] assigns `k` campaigns to `n` customers: each customer
//! `i` has a preference `p_ij` for campaign `j`, a response suppression table
//! `r_i(h)` applied when it receives `h` recommendations, and each campaign
//! has weight `w_j` and recommendation bounds `b_j <= column sum <= b^j`.
//! The objective is `F(M) = sum_ij w_j r_i(h_i) p_ij m_ij`, evaluated with
//! exact rational arithmetic throughout.
//!
//! * [`solvers`]: brute force, capacity-vector dynamic programming, the two
//!   polynomial special cases, greedy construction and local search.
//! * [`reduction`]: the 3-SAT reduction showing the decision problem is
//!   NP-complete, as executable code.
//! * [`learning`]: fitting suppression tables from response history and
//!   collaborative filtering for preferences.

pub mod error;
pub mod fitness;
pub mod generate;
pub mod instance;
pub mod io;
pub mod learning;
pub mod matrix;
pub mod reduction;
pub mod solvers;

pub use error::{Error, InstanceError, Result};
pub use fitness::{
    check_feasibility, evaluate_fitness, recommendation_counts, BoundKind, BoundViolation,
    FeasibilityReport,
};
pub use instance::{validate_instance, Instance, RawInstance, SuppressionTable};
pub use matrix::AssignmentMatrix;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use solvers::SolveResult;

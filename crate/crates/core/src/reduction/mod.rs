//! Executable 3-SAT to MCAP reduction: formula parsing, instance
//! construction, the two directions of the correspondence, and a brute-force
//! SAT oracle to cross-check them.

mod cnf;
mod construct;

pub use cnf::{
    parse_dimacs, parse_dimacs_raw, parse_dimacs_sanitized, sat_brute_force, BooleanAssignment,
    Clause, CnfError, CnfFormula, Literal, MAX_BRUTE_FORCE_VARS,
};
pub use construct::{
    check_reduction_matrix, embed_assignment, extract_assignment, reduce_3sat, CampaignLabel,
    CustomerRole, ReducedInstance, ReductionCheck, ReductionLayout, ReductionSidecar,
};

//! 3-CNF formulas, DIMACS input and a brute-force satisfiability oracle.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(value: i64) -> Self {
        Self {
            var: value.unsigned_abs() as usize,
            positive: value > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn holds(self, assignment: &BooleanAssignment) -> bool {
        assignment.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("malformed clause data: {0}")]
    Body(String),
    #[error("clause {clause} is tautological (contains a variable and its negation)")]
    Tautology { clause: usize },
    #[error("clause {clause} does not have exactly 3 distinct variables")]
    NotThreeVariables { clause: usize },
    #[error("variable {var} appears in no clause")]
    UnusedVariable { var: usize },
    #[error("literal {literal} in clause {clause} is out of range 1..={num_vars}")]
    VariableOutOfRange {
        clause: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("header declares {declared} clauses but {found} were given")]
    ClauseCount { declared: usize, found: usize },
    #[error("formula has no clauses")]
    Empty,
}

impl From<CnfError> for Error {
    fn from(e: CnfError) -> Self {
        Error::Parse(e.to_string())
    }
}

/// A 3-CNF formula in which every clause has three distinct, non-complementary
/// variables and every variable occurs somewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Builds a formula from DIMACS-style signed literals, enforcing the
    /// invariants.
    pub fn new(num_vars: usize, clauses: &[Vec<i64>]) -> Result<Self, CnfError> {
        if clauses.is_empty() {
            return Err(CnfError::Empty);
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (index, raw) in clauses.iter().enumerate() {
            let clause = index + 1;
            if let Some(&literal) = raw
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(CnfError::VariableOutOfRange {
                    clause,
                    literal,
                    num_vars,
                });
            }
            if raw.iter().any(|&l| raw.contains(&-l)) {
                return Err(CnfError::Tautology { clause });
            }
            let vars: BTreeSet<u64> = raw.iter().map(|l| l.unsigned_abs()).collect();
            if raw.len() != 3 || vars.len() != 3 {
                return Err(CnfError::NotThreeVariables { clause });
            }
            out.push([
                Literal::from_dimacs(raw[0]),
                Literal::from_dimacs(raw[1]),
                Literal::from_dimacs(raw[2]),
            ]);
        }
        let used: BTreeSet<usize> = out.iter().flatten().map(|l| l.var).collect();
        if let Some(var) = (1..=num_vars).find(|v| !used.contains(v)) {
            return Err(CnfError::UnusedVariable { var });
        }
        Ok(Self {
            num_vars,
            clauses: out,
        })
    }

    /// Drops tautological clauses and renumbers the remaining variables
    /// densely (in order of first index) before validating.
    pub fn sanitized(num_vars: usize, clauses: &[Vec<i64>]) -> Result<Self, CnfError> {
        let kept: Vec<&Vec<i64>> = clauses
            .iter()
            .filter(|raw| !raw.iter().any(|&l| raw.contains(&-l)))
            .collect();
        let used: BTreeSet<u64> = kept.iter().flat_map(|r| r.iter()).map(|l| l.unsigned_abs()).collect();
        let renumber = |l: i64| -> i64 {
            let rank = used.range(..l.unsigned_abs()).count() as i64 + 1;
            if l > 0 {
                rank
            } else {
                -rank
            }
        };
        if let Some(&bad) = used.iter().find(|&&v| v == 0 || v as usize > num_vars) {
            return Err(CnfError::Body(format!("literal {bad} out of range")));
        }
        let renumbered: Vec<Vec<i64>> = kept
            .iter()
            .map(|raw| raw.iter().map(|&l| renumber(l)).collect())
            .collect();
        Self::new(used.len(), &renumbered)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clauses as signed DIMACS literals.
    pub fn to_dimacs_clauses(&self) -> Vec<Vec<i64>> {
        self.clauses
            .iter()
            .map(|c| c.iter().map(|l| l.to_dimacs()).collect())
            .collect()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in self.to_dimacs_clauses() {
            for l in clause {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn is_satisfied_by(&self, assignment: &BooleanAssignment) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    /// 0-based index of the first clause the assignment falsifies.
    pub fn first_unsatisfied(&self, assignment: &BooleanAssignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.holds(assignment)))
    }
}

/// Truth values of `x_1..x_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanAssignment(Vec<bool>);

impl BooleanAssignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self(values)
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::str::FromStr for BooleanAssignment {
    type Err = Error;

    /// Parses a bit string such as `"101"` (`x_1` first).
    fn from_str(s: &str) -> Result<Self, Error> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid assignment bit {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl fmt::Display for BooleanAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Reads a DIMACS CNF header and clause list without validating the 3-CNF
/// invariants.
pub fn parse_dimacs_raw(text: &str) -> Result<(usize, Vec<Vec<i64>>), CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Header("duplicate header".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", vars, count] => vars.parse().ok().zip(count.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| CnfError::Header(line.to_string()))?);
            continue;
        }
        if header.is_none() {
            return Err(CnfError::Header("clause data before 'p cnf' header".into()));
        }
        for token in line.split_whitespace() {
            let literal: i64 = token
                .parse()
                .map_err(|_| CnfError::Body(format!("invalid literal {token:?}")))?;
            if literal == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(literal);
            }
        }
    }
    let (num_vars, declared) = header.ok_or_else(|| CnfError::Header("missing".into()))?;
    if !current.is_empty() {
        return Err(CnfError::Body("last clause is not 0-terminated".into()));
    }
    if clauses.len() != declared {
        return Err(CnfError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    Ok((num_vars, clauses))
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let (num_vars, clauses) = parse_dimacs_raw(text)?;
    CnfFormula::new(num_vars, &clauses)
}

/// Like [`parse_dimacs`] but drops tautologies and unused variables first.
pub fn parse_dimacs_sanitized(text: &str) -> Result<CnfFormula, CnfError> {
    let (num_vars, clauses) = parse_dimacs_raw(text)?;
    CnfFormula::sanitized(num_vars, &clauses)
}

/// Default variable cap for [`sat_brute_force`].
pub const MAX_BRUTE_FORCE_VARS: usize = 24;

/// Lexicographically smallest satisfying assignment (`x_1` most significant,
/// false before true), or `None` when the formula is unsatisfiable.
pub fn sat_brute_force(formula: &CnfFormula) -> Result<Option<BooleanAssignment>, Error> {
    let l = formula.num_vars();
    if l > MAX_BRUTE_FORCE_VARS {
        return Err(Error::GuardExceeded(format!(
            "brute-force SAT needs at most {MAX_BRUTE_FORCE_VARS} variables, formula has {l}"
        )));
    }
    for bits in 0u64..1 << l {
        let assignment = BooleanAssignment((0..l).map(|i| bits >> (l - 1 - i) & 1 == 1).collect());
        if formula.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR_CLAUSES: &str = "p cnf 3 4\n1 2 3 0\n1 -2 3 0\n-1 2 3 0\n-1 2 -3 0\n";

    #[test]
    fn parses_single_clause() {
        let f = parse_dimacs("p cnf 3 1\n1 2 3 0").unwrap();
        assert_eq!((f.num_vars(), f.num_clauses()), (3, 1));
        assert!(f.clauses()[0].iter().all(|l| l.positive));
    }

    #[test]
    fn rejects_tautology() {
        assert_eq!(
            parse_dimacs("p cnf 3 1\n1 -1 2 0").unwrap_err(),
            CnfError::Tautology { clause: 1 }
        );
    }

    #[test]
    fn rejects_unused_variable() {
        assert_eq!(
            parse_dimacs("p cnf 4 1\n1 2 3 0").unwrap_err(),
            CnfError::UnusedVariable { var: 4 }
        );
    }

    #[test]
    fn rejects_other_malformed_input() {
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 1 2 0").unwrap_err(),
            CnfError::NotThreeVariables { .. }
        ));
        assert!(matches!(
            parse_dimacs("p cnf 4 1\n1 2 3 4 0").unwrap_err(),
            CnfError::NotThreeVariables { .. }
        ));
        assert!(matches!(
            parse_dimacs("p dnf 3 1\n1 2 3 0").unwrap_err(),
            CnfError::Header(_)
        ));
        assert!(matches!(
            parse_dimacs("1 2 3 0").unwrap_err(),
            CnfError::Header(_)
        ));
        assert!(matches!(
            parse_dimacs("p cnf 3 2\n1 2 3 0").unwrap_err(),
            CnfError::ClauseCount { .. }
        ));
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 2 5 0").unwrap_err(),
            CnfError::VariableOutOfRange { .. }
        ));
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 2 3").unwrap_err(),
            CnfError::Body(_)
        ));
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let f = parse_dimacs("c hello\np cnf 3 2\n1 2\n3 0 -1\n-2 -3 0\n").unwrap();
        assert_eq!(f.to_dimacs_clauses(), vec![vec![1, 2, 3], vec![-1, -2, -3]]);
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn sanitize_drops_tautologies_and_renumbers() {
        let f = parse_dimacs_sanitized("p cnf 6 2\n1 -1 2 0\n2 -4 6 0\n").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.to_dimacs_clauses(), vec![vec![1, -2, 3]]);
        assert_eq!(
            parse_dimacs_sanitized("p cnf 3 1\n1 -1 2 0").unwrap_err(),
            CnfError::Empty
        );
    }

    #[test]
    fn brute_force_four_clause() {
        let f = parse_dimacs(FOUR_CLAUSES).unwrap();
        assert!(f.is_satisfied_by(&"111".parse().unwrap()));
        assert!(sat_brute_force(&f).unwrap().is_some());
        assert_eq!(f.first_unsatisfied(&"000".parse().unwrap()), Some(0));
    }

    #[test]
    fn brute_force_all_patterns_unsat() {
        let clauses: Vec<Vec<i64>> = (0..8)
            .map(|p| (1..=3).map(|v| if p >> (v - 1) & 1 == 1 { v } else { -v }).collect())
            .collect();
        let f = CnfFormula::new(3, &clauses).unwrap();
        assert_eq!(sat_brute_force(&f).unwrap(), None);
    }

    #[test]
    fn brute_force_lexicographic() {
        let f = parse_dimacs("p cnf 3 1\n1 2 3 0").unwrap();
        assert_eq!(sat_brute_force(&f).unwrap().unwrap().to_string(), "001");
    }
}

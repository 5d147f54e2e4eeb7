//! JSON interchange for instances and assignment matrices.
//!
//! Big integers and rationals travel as decimal strings (`"42"`, `"3/4"`) so
//! that values beyond 64 bits survive the round trip.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{validate_instance, Instance, RawInstance};
use crate::matrix::AssignmentMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub weights: Vec<String>,
    pub preferences: Vec<Vec<String>>,
    pub suppression: Vec<Vec<String>>,
    pub lower_bounds: Vec<usize>,
    pub upper_bounds: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: Vec<String>,
}

pub fn parse_bigint(text: &str) -> Result<BigInt> {
    BigInt::from_str(text.trim()).map_err(|e| Error::Parse(format!("invalid integer {text:?}: {e}")))
}

/// Parses `"num/den"` or a bare integer into a canonical rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(text)?)),
        Some((num, den)) => {
            let num = parse_bigint(num)?;
            let den = parse_bigint(den)?;
            if den.is_zero() || den.is_negative() {
                return Err(Error::Parse(format!("invalid denominator in {text:?}")));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Canonical `"num/den"` form, or just `"num"` for integers.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            n: inst.n(),
            k: inst.k(),
            weights: inst.weights().iter().map(ToString::to_string).collect(),
            preferences: inst
                .preferences()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            suppression: inst
                .suppression_tables()
                .iter()
                .map(|t| t.values().iter().map(format_rational).collect())
                .collect(),
            lower_bounds: inst.lower_bounds().to_vec(),
            upper_bounds: inst.upper_bounds().to_vec(),
        }
    }
}

impl TryFrom<InstanceFile> for Instance {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Self> {
        let raw = RawInstance {
            n: file.n,
            k: file.k,
            weights: file
                .weights
                .iter()
                .map(|w| parse_bigint(w))
                .collect::<Result<_>>()?,
            preferences: file
                .preferences
                .iter()
                .map(|row| row.iter().map(|p| parse_bigint(p)).collect())
                .collect::<Result<_>>()?,
            suppression: file
                .suppression
                .iter()
                .map(|row| row.iter().map(|r| parse_rational(r)).collect())
                .collect::<Result<_>>()?,
            lower_bounds: file.lower_bounds,
            upper_bounds: file.upper_bounds,
        };
        Ok(validate_instance(raw)?)
    }
}

impl From<&AssignmentMatrix> for MatrixFile {
    fn from(m: &AssignmentMatrix) -> Self {
        MatrixFile {
            rows: m.to_row_strings(),
        }
    }
}

impl TryFrom<MatrixFile> for AssignmentMatrix {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        AssignmentMatrix::from_row_strings(&file.rows)
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from(inst)).expect("instance serializes")
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceFile>(text)
        .map_err(json_err)?
        .try_into()
}

pub fn matrix_to_json(m: &AssignmentMatrix) -> String {
    serde_json::to_string_pretty(&MatrixFile::from(m)).expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<AssignmentMatrix> {
    serde_json::from_str::<MatrixFile>(text)
        .map_err(json_err)?
        .try_into()
}

//! Problem instances: campaign weights, the customer preference matrix,
//! per-customer response suppression tables and campaign capacity bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::InstanceError;

/// Response suppression function of one customer, tabulated on `0..=k`.
///
/// `values[h]` is the multiplier applied to the customer's preferences when
/// the customer receives `h` recommendations. The table always starts with
/// `r(0) = 0` and every entry lies in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuppressionTable {
    values: Vec<BigRational>,
}

impl SuppressionTable {
    pub fn new(values: Vec<BigRational>) -> Result<Self, InstanceError> {
        Self::checked(values, 0)
    }

    fn checked(values: Vec<BigRational>, customer: usize) -> Result<Self, InstanceError> {
        if values.is_empty() || !values[0].is_zero() {
            return Err(InstanceError::NonZeroAtZero { customer });
        }
        let one = BigRational::one();
        if let Some(h) = values.iter().position(|v| v.is_negative() || *v > one) {
            return Err(InstanceError::SuppressionOutOfRange { customer, h });
        }
        Ok(Self { values })
    }

    /// Table that is 1 for every `h >= 1` up to `max_h`.
    pub fn all_ones(max_h: usize) -> Self {
        Self::constant(max_h, BigRational::one())
    }

    /// Table with `r(h) = value` for every `1 <= h <= max_h`.
    pub fn constant(max_h: usize, value: BigRational) -> Self {
        let mut values = vec![value; max_h + 1];
        values[0] = BigRational::zero();
        Self { values }
    }

    /// Table that is 1 exactly at `h = at` and 0 elsewhere.
    pub fn indicator(max_h: usize, at: usize) -> Self {
        let mut values = vec![BigRational::zero(); max_h + 1];
        if at >= 1 && at <= max_h {
            values[at] = BigRational::one();
        }
        Self { values }
    }

    pub fn get(&self, h: usize) -> &BigRational {
        &self.values[h]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Largest `h` covered by the table.
    pub fn max_h(&self) -> usize {
        self.values.len() - 1
    }

    /// The common value of `r(1..=max_h)` if the table is constant there.
    pub fn constant_value(&self) -> Option<&BigRational> {
        let first = self.values.get(1)?;
        self.values[1..].iter().all(|v| v == first).then_some(first)
    }
}

/// A validated multicampaign assignment instance with `n` customers and `k`
/// campaigns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    k: usize,
    weights: Vec<BigInt>,
    preferences: Vec<Vec<BigInt>>,
    suppression: Vec<SuppressionTable>,
    lower_bounds: Vec<usize>,
    upper_bounds: Vec<usize>,
}

/// Unchecked instance data, turned into an [`Instance`] by
/// [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub n: usize,
    pub k: usize,
    pub weights: Vec<BigInt>,
    pub preferences: Vec<Vec<BigInt>>,
    pub suppression: Vec<Vec<BigRational>>,
    pub lower_bounds: Vec<usize>,
    pub upper_bounds: Vec<usize>,
}

/// Checks every instance invariant and reports the first one violated.
pub fn validate_instance(raw: RawInstance) -> Result<Instance, InstanceError> {
    let RawInstance {
        n,
        k,
        weights,
        preferences,
        suppression,
        lower_bounds,
        upper_bounds,
    } = raw;
    if n == 0 || k == 0 {
        return Err(InstanceError::Empty { n, k });
    }
    let shape = |what, expected, found| {
        if expected == found {
            Ok(())
        } else {
            Err(InstanceError::Shape {
                what,
                expected,
                found,
            })
        }
    };
    shape("weights", k, weights.len())?;
    shape("preference rows", n, preferences.len())?;
    shape("suppression tables", n, suppression.len())?;
    shape("lower bounds", k, lower_bounds.len())?;
    shape("upper bounds", k, upper_bounds.len())?;
    for row in &preferences {
        shape("preferences per row", k, row.len())?;
    }
    for table in &suppression {
        shape("suppression entries per table", k + 1, table.len())?;
    }

    if let Some(campaign) = weights.iter().position(|w| !w.is_positive()) {
        return Err(InstanceError::NonPositiveWeight { campaign });
    }
    for (customer, row) in preferences.iter().enumerate() {
        if let Some(campaign) = row.iter().position(|p| p.is_negative()) {
            return Err(InstanceError::NegativePreference { customer, campaign });
        }
    }
    let suppression = suppression
        .into_iter()
        .enumerate()
        .map(|(customer, values)| SuppressionTable::checked(values, customer))
        .collect::<Result<Vec<_>, _>>()?;
    for (campaign, (&lower, &upper)) in lower_bounds.iter().zip(&upper_bounds).enumerate() {
        if lower > upper {
            return Err(InstanceError::LowerAboveUpper {
                campaign,
                lower,
                upper,
            });
        }
        if upper > n {
            return Err(InstanceError::UpperAboveCustomers { campaign, upper, n });
        }
    }
    Ok(Instance {
        n,
        k,
        weights,
        preferences,
        suppression,
        lower_bounds,
        upper_bounds,
    })
}

impl Instance {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn weight(&self, campaign: usize) -> &BigInt {
        &self.weights[campaign]
    }

    pub fn preference(&self, customer: usize, campaign: usize) -> &BigInt {
        &self.preferences[customer][campaign]
    }

    pub fn preferences(&self) -> &[Vec<BigInt>] {
        &self.preferences
    }

    pub fn suppression(&self, customer: usize) -> &SuppressionTable {
        &self.suppression[customer]
    }

    pub fn suppression_tables(&self) -> &[SuppressionTable] {
        &self.suppression
    }

    pub fn lower_bounds(&self) -> &[usize] {
        &self.lower_bounds
    }

    pub fn upper_bounds(&self) -> &[usize] {
        &self.upper_bounds
    }

    /// `w_j * p_ij`, the unsuppressed value of recommending campaign `j` to
    /// customer `i`.
    pub fn weighted_preference(&self, customer: usize, campaign: usize) -> BigInt {
        &self.weights[campaign] * &self.preferences[customer][campaign]
    }

    /// Back to unchecked form, e.g. to derive a modified instance.
    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            n: self.n,
            k: self.k,
            weights: self.weights.clone(),
            preferences: self.preferences.clone(),
            suppression: self
                .suppression
                .iter()
                .map(|t| t.values().to_vec())
                .collect(),
            lower_bounds: self.lower_bounds.clone(),
            upper_bounds: self.upper_bounds.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn minimal() -> RawInstance {
        RawInstance {
            n: 1,
            k: 1,
            weights: vec![1.into()],
            preferences: vec![vec![0.into()]],
            suppression: vec![vec![ratio(0, 1), ratio(1, 1)]],
            lower_bounds: vec![0],
            upper_bounds: vec![1],
        }
    }

    #[test]
    fn minimal_instance_is_valid() {
        let inst = validate_instance(minimal()).unwrap();
        assert_eq!((inst.n(), inst.k()), (1, 1));
    }

    #[test]
    fn lower_bound_above_upper_is_rejected() {
        let mut raw = minimal();
        raw.lower_bounds = vec![2];
        let err = validate_instance(raw).unwrap_err();
        assert!(matches!(err, InstanceError::LowerAboveUpper { .. }));
        assert!(err.to_string().contains("lower bound exceeds upper bound"));
    }

    #[test]
    fn nonzero_r0_is_rejected() {
        let mut raw = minimal();
        raw.suppression = vec![vec![ratio(1, 2), ratio(1, 1)]];
        let err = validate_instance(raw).unwrap_err();
        assert_eq!(err, InstanceError::NonZeroAtZero { customer: 0 });
        assert!(err.to_string().contains("r(0) must be 0"));
    }

    #[test]
    fn out_of_range_suppression_is_rejected() {
        let mut raw = minimal();
        raw.suppression = vec![vec![ratio(0, 1), ratio(3, 2)]];
        assert_eq!(
            validate_instance(raw).unwrap_err(),
            InstanceError::SuppressionOutOfRange { customer: 0, h: 1 }
        );
    }

    #[test]
    fn nonpositive_weight_is_rejected() {
        let mut raw = minimal();
        raw.weights = vec![0.into()];
        assert_eq!(
            validate_instance(raw).unwrap_err(),
            InstanceError::NonPositiveWeight { campaign: 0 }
        );
    }

    #[test]
    fn negative_preference_is_rejected() {
        let mut raw = minimal();
        raw.preferences = vec![vec![(-1).into()]];
        assert!(matches!(
            validate_instance(raw).unwrap_err(),
            InstanceError::NegativePreference { .. }
        ));
    }

    #[test]
    fn upper_bound_above_n_is_rejected() {
        let mut raw = minimal();
        raw.upper_bounds = vec![2];
        assert!(matches!(
            validate_instance(raw).unwrap_err(),
            InstanceError::UpperAboveCustomers { .. }
        ));
    }

    #[test]
    fn table_shape_is_checked() {
        let mut raw = minimal();
        raw.suppression = vec![vec![ratio(0, 1)]];
        assert!(matches!(
            validate_instance(raw).unwrap_err(),
            InstanceError::Shape { .. }
        ));
    }

    #[test]
    fn constant_detection() {
        assert!(SuppressionTable::constant(3, ratio(1, 2))
            .constant_value()
            .is_some());
        assert!(SuppressionTable::indicator(3, 2).constant_value().is_none());
        assert_eq!(
            SuppressionTable::indicator(1, 1).constant_value(),
            Some(&ratio(1, 1))
        );
    }
}

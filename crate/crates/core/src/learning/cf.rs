//! Nearest-neighbor collaborative filtering for missing preferences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Neighbors must share at least this many rated campaigns.
pub const MIN_OVERLAP: usize = 2;
pub const DEFAULT_NEIGHBORS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rating {
    pub customer: usize,
    pub campaign: usize,
    pub rating: u64,
}

/// Customer x campaign ratings with explicit gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingsMatrix {
    n: usize,
    k: usize,
    entries: Vec<Option<u64>>,
}

impl RatingsMatrix {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            entries: vec![None; n * k],
        }
    }

    /// Dimensions grow to fit the largest indices seen. A repeated
    /// (customer, campaign) pair is an error.
    pub fn from_triplets(ratings: &[Rating]) -> Result<Self> {
        let n = ratings.iter().map(|r| r.customer + 1).max().unwrap_or(0);
        let k = ratings.iter().map(|r| r.campaign + 1).max().unwrap_or(0);
        let mut m = Self::new(n, k);
        for r in ratings {
            if m.get(r.customer, r.campaign).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate rating for customer {} campaign {}",
                    r.customer, r.campaign
                )));
            }
            m.set(r.customer, r.campaign, Some(r.rating));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, customer: usize, campaign: usize) -> Option<u64> {
        self.entries[customer * self.k + campaign]
    }

    pub fn set(&mut self, customer: usize, campaign: usize, value: Option<u64>) {
        self.entries[customer * self.k + campaign] = value;
    }

    fn row(&self, customer: usize) -> &[Option<u64>] {
        &self.entries[customer * self.k..(customer + 1) * self.k]
    }

    fn row_mean(&self, customer: usize) -> Option<f64> {
        mean(self.row(customer).iter().flatten())
    }
}

fn mean<'a>(values: impl Iterator<Item = &'a u64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), &v| (s + v as f64, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn round_half_up(x: f64) -> u64 {
    (x + 0.5).floor().max(0.0) as u64
}

/// Cosine similarity over co-rated campaigns; `None` below [`MIN_OVERLAP`].
pub fn cosine_similarity(ratings: &RatingsMatrix, a: usize, b: usize) -> Option<f64> {
    let pairs: Vec<(f64, f64)> = ratings
        .row(a)
        .iter()
        .zip(ratings.row(b))
        .filter_map(|(x, y)| Some(((*x)? as f64, (*y)? as f64)))
        .collect();
    if pairs.len() < MIN_OVERLAP {
        return None;
    }
    let dot: f64 = pairs.iter().map(|(x, y)| x * y).sum();
    let na: f64 = pairs.iter().map(|(x, _)| x * x).sum::<f64>().sqrt();
    let nb: f64 = pairs.iter().map(|(_, y)| y * y).sum::<f64>().sqrt();
    (na > 0.0 && nb > 0.0).then(|| dot / (na * nb))
}

/// Predicts the rating of `customer` for `campaign` as the similarity-weighted
/// mean over the `neighbors` most similar customers who rated it. Customers
/// tied with the last selected similarity are all kept, so the result does
/// not depend on customer order. Falls back to the customer's own mean, then
/// the global mean, then 0. An already observed rating is returned as is.
pub fn predict_preferences_cf(
    ratings: &RatingsMatrix,
    customer: usize,
    campaign: usize,
    neighbors: usize,
) -> u64 {
    if customer < ratings.n() && campaign < ratings.k() {
        if let Some(v) = ratings.get(customer, campaign) {
            return v;
        }
    }
    let fallback = || {
        let own = (customer < ratings.n()).then(|| ratings.row_mean(customer)).flatten();
        own.or_else(|| mean(ratings.entries.iter().flatten()))
            .map_or(0, round_half_up)
    };
    if customer >= ratings.n() || campaign >= ratings.k() {
        return fallback();
    }

    let mut candidates: Vec<(f64, u64)> = (0..ratings.n())
        .filter(|&other| other != customer)
        .filter_map(|other| {
            let rating = ratings.get(other, campaign)?;
            let sim = cosine_similarity(ratings, customer, other)?;
            (sim > 0.0).then_some((sim, rating))
        })
        .collect();
    if candidates.is_empty() || neighbors == 0 {
        return fallback();
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    let cutoff = candidates[neighbors.min(candidates.len()) - 1].0;
    let chosen = candidates.iter().filter(|(s, _)| *s >= cutoff);
    let (num, den) = chosen.fold((0.0, 0.0), |(n, d), (s, r)| (n + s * *r as f64, d + s));
    round_half_up(num / den)
}

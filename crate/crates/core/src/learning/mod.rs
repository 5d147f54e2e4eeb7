//! Learning suppression functions from historical campaign data, and
//! nearest-neighbor estimation of missing preferences.

mod categorize;
mod cf;
mod fit;

use std::thread;

pub use categorize::{categories_from_labels, categorize_customers, Category};
pub use cf::{
    cosine_similarity, predict_preferences_cf, Rating, RatingsMatrix, DEFAULT_NEIGHBORS,
    MIN_OVERLAP,
};
pub use fit::{fit_suppression, Conditions, FitOptions, FitResult, ResponseRecord};

use crate::error::{Error, Result};

/// Fits one table per category from the records of its members. Categories
/// are fitted on separate threads; each fit is seeded and deterministic.
pub fn fit_categories(
    records: &[ResponseRecord],
    labels: &[usize],
    options: &FitOptions,
) -> Result<Vec<(Category, FitResult)>> {
    if let Some(r) = records.iter().find(|r| r.customer >= labels.len()) {
        return Err(Error::Precondition(format!(
            "record refers to customer {} without a category label",
            r.customer
        )));
    }
    let categories = categories_from_labels(labels);
    let fits: Vec<FitResult> = thread::scope(|scope| {
        let handles: Vec<_> = categories
            .iter()
            .map(|category| {
                let own: Vec<ResponseRecord> = records
                    .iter()
                    .filter(|r| labels[r.customer] == category.id)
                    .cloned()
                    .collect();
                scope.spawn(move || fit_suppression(&own, options))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fit thread panicked"))
            .collect()
    });
    Ok(categories
        .into_iter()
        .zip(fits)
        .map(|(mut category, fit)| {
            category.table = Some(fit.table.clone());
            (category, fit)
        })
        .collect())
}

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::SuppressionTable;

/// A group of customers sharing one suppression function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pub id: usize,
    pub members: Vec<usize>,
    pub table: Option<SuppressionTable>,
}

const MAX_ITERATIONS: usize = 100;

/// Seeded k-means over customer profiles. Labels are renumbered in order of
/// first appearance, so at most `category_count` nonempty categories come
/// back and identical input always yields identical labels.
pub fn categorize_customers(
    profiles: &[Vec<f64>],
    category_count: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if profiles.is_empty() {
        return Err(Error::Precondition("no customer profiles to categorize".into()));
    }
    if category_count == 0 {
        return Err(Error::Precondition("category count must be at least 1".into()));
    }
    let dim = profiles[0].len();
    if profiles.iter().any(|p| p.len() != dim) {
        return Err(Error::Precondition("profiles have different lengths".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers_wanted = category_count.min(profiles.len());

    // k-means++ seeding
    let mut centers = vec![profiles[rng.gen_range(0..profiles.len())].clone()];
    while centers.len() < centers_wanted {
        let weights: Vec<f64> = profiles
            .iter()
            .map(|p| nearest(p, &centers).1)
            .collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            break;
        }
        let mut pick = rng.gen::<f64>() * total;
        let mut chosen = profiles.len() - 1;
        for (i, w) in weights.iter().enumerate() {
            if pick < *w {
                chosen = i;
                break;
            }
            pick -= w;
        }
        centers.push(profiles[chosen].clone());
    }

    let mut labels = vec![usize::MAX; profiles.len()];
    for _ in 0..MAX_ITERATIONS {
        let next: Vec<usize> = profiles.iter().map(|p| nearest(p, &centers).0).collect();
        if next == labels {
            break;
        }
        labels = next;
        for (c, center) in centers.iter_mut().enumerate() {
            let members: Vec<&Vec<f64>> = profiles
                .iter()
                .zip(&labels)
                .filter(|(_, &l)| l == c)
                .map(|(p, _)| p)
                .collect();
            if members.is_empty() {
                continue;
            }
            for (d, value) in center.iter_mut().enumerate() {
                *value = members.iter().map(|p| p[d]).sum::<f64>() / members.len() as f64;
            }
        }
    }
    Ok(canonical_labels(&labels))
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(p: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    centers
        .iter()
        .map(|c| squared_distance(p, c))
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, d)| if d < best.1 { (i, d) } else { best })
}

/// Renumbers labels `0, 1, ...` by first appearance.
fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(i) => i,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

/// Groups customers by externally supplied labels, which are kept verbatim
/// as category ids.
pub fn categories_from_labels(labels: &[usize]) -> Vec<Category> {
    let mut ids: Vec<usize> = labels.to_vec();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|id| Category {
            id,
            members: (0..labels.len()).filter(|&c| labels[c] == id).collect(),
            table: None,
        })
        .collect()
}

mod common;

use mcap::learning::{
    fit_suppression, predict_preferences_cf, Conditions, FitOptions, RatingsMatrix,
    ResponseRecord,
};
use mcap::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::count_conditions;

fn random_records(rng: &mut ChaCha8Rng, max_h: usize) -> Vec<ResponseRecord> {
    (0..rng.gen_range(2..30))
        .map(|_| ResponseRecord {
            customer: rng.gen_range(0..6),
            campaign: rng.gen_range(0..3),
            preference: rng.gen_range(0..10),
            h: rng.gen_range(1..=max_h),
            responded: rng.gen_bool(0.5),
        })
        .collect()
}

proptest! {
    #[test]
    fn fitted_tables_are_valid_and_beat_the_default(
        seed in any::<u64>(),
        max_h in 1usize..=4,
        grid in 1u64..=5,
        monotone in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let records = random_records(&mut rng, max_h);
        let options = FitOptions { max_h, grid, restarts: 3, seed, monotone };
        let fit = fit_suppression(&records, &options);
        prop_assert!(fit.table.get(0).is_zero());
        prop_assert_eq!(fit.table.max_h(), max_h);
        for (h, v) in fit.table.values().iter().enumerate() {
            prop_assert!(*v >= BigRational::zero() && *v <= BigRational::one());
            prop_assert_eq!(v, &BigRational::new(fit.levels[h].into(), grid.into()));
        }
        if monotone {
            prop_assert!(fit.levels[1..].windows(2).all(|w| w[0] >= w[1]));
        }
        let default: Vec<u64> = (0..=max_h).map(|h| if h == 0 { 0 } else { grid }).collect();
        prop_assert!(fit.satisfied >= count_conditions(&records, &default));
        prop_assert_eq!(fit.satisfied, count_conditions(&records, &fit.levels));
    }

    #[test]
    fn conditions_are_scale_free(seed in any::<u64>(), c in 1u64..50, grid in 1u64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let records = random_records(&mut rng, 3);
        let scaled: Vec<ResponseRecord> = records
            .iter()
            .map(|r| ResponseRecord { preference: r.preference * c, ..*r })
            .collect();
        let levels: Vec<u64> = (0..=3).map(|h| if h == 0 { 0 } else { rng.gen_range(0..=grid) }).collect();
        let base = Conditions::from_records(&records, 3);
        let other = Conditions::from_records(&scaled, 3);
        prop_assert_eq!(base.total(), other.total());
        prop_assert_eq!(base.satisfied(&levels), other.satisfied(&levels));
    }

    #[test]
    fn cf_ignores_neighbor_order(seed in any::<u64>(), neighbors in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, k) = (rng.gen_range(2..8), rng.gen_range(2..5));
        let mut ratings = RatingsMatrix::new(n, k);
        for i in 0..n {
            for j in 0..k {
                if rng.gen_bool(0.7) {
                    ratings.set(i, j, Some(rng.gen_range(0..10)));
                }
            }
        }
        ratings.set(0, 0, None);
        let prediction = predict_preferences_cf(&ratings, 0, 0, neighbors);

        let mut others: Vec<usize> = (1..n).collect();
        others.shuffle(&mut rng);
        let mut shuffled = RatingsMatrix::new(n, k);
        for j in 0..k {
            shuffled.set(0, j, ratings.get(0, j));
            for (slot, &i) in others.iter().enumerate() {
                shuffled.set(slot + 1, j, ratings.get(i, j));
            }
        }
        prop_assert_eq!(predict_preferences_cf(&shuffled, 0, 0, neighbors), prediction);

        // customers without an opinion on the campaign change nothing
        let mut padded = RatingsMatrix::new(n + 1, k);
        for i in 0..n {
            for j in 0..k {
                padded.set(i, j, ratings.get(i, j));
            }
        }
        for j in 1..k {
            padded.set(n, j, ratings.get(0, j));
        }
        prop_assert_eq!(predict_preferences_cf(&padded, 0, 0, neighbors), prediction);
    }
}

mod common;

use mcap::reduction::{
    check_reduction_matrix, embed_assignment, extract_assignment, parse_dimacs, reduce_3sat,
    sat_brute_force, BooleanAssignment, CustomerRole, ReducedInstance,
};
use mcap::solvers::dp_solve;
use mcap::{check_feasibility, evaluate_fitness, BigInt, BigRational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn assert_layout(red: &ReducedInstance) {
    let inst = &red.instance;
    let layout = &red.layout;
    let (l, m) = (red.formula.num_vars(), red.formula.num_clauses());
    assert_eq!((inst.n(), inst.k()), (2 * l + 3 * m, l + m));
    assert!(inst.weights().iter().all(|w| w.is_one()));
    for j in 0..inst.k() {
        let positive = (0..inst.n()).filter(|&i| !inst.preference(i, j).is_zero()).count();
        assert_eq!(positive, if j < m { 6 } else { 2 }, "column {j}");
    }
    for (i, role) in layout.customers().iter().enumerate() {
        let alpha = match *role {
            CustomerRole::Literal { var, positive } => layout.alpha(var, positive),
            CustomerRole::Slack { .. } => 1,
        };
        let table = inst.suppression(i);
        for h in 0..=inst.k() {
            let expected = if h == alpha { BigRational::one() } else { BigRational::zero() };
            assert_eq!(table.get(h), &expected, "customer {role} at h={h}");
        }
    }
}

#[test]
fn four_clause_round_trips_every_satisfying_assignment() {
    let formula = parse_dimacs(FOUR_CLAUSES).unwrap();
    let red = reduce_3sat(&formula);
    assert_layout(&red);
    let t = BigRational::from_integer(BigInt::from(1_114_444));
    let mut satisfying = 0;
    for bits in 0..8u32 {
        let a = BooleanAssignment::new((0..3).map(|v| bits >> (2 - v) & 1 == 1).collect());
        match embed_assignment(&red, &a) {
            Ok(m) => {
                assert!(formula.is_satisfied_by(&a));
                assert_eq!(evaluate_fitness(&red.instance, &m).unwrap(), t);
                assert_eq!(m.column_sums(), red.instance.upper_bounds());
                assert!(check_reduction_matrix(&red, &m).unwrap().properties_hold());
                assert_eq!(extract_assignment(&red, &m).unwrap(), a);
                satisfying += 1;
            }
            Err(_) => assert!(!formula.is_satisfied_by(&a)),
        }
    }
    assert!(satisfying > 0);
}

#[test]
fn four_clause_dp_optimum_decodes_to_a_model() {
    let formula = parse_dimacs(FOUR_CLAUSES).unwrap();
    let red = reduce_3sat(&formula);
    let res = dp_solve(&red.instance).unwrap();
    assert_eq!(res.fitness, BigRational::from_integer(BigInt::from(1_114_444)));
    let a = extract_assignment(&red, &res.matrix).unwrap();
    assert!(formula.is_satisfied_by(&a));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn layout_invariants(seed in any::<u64>(), l in 3usize..=8, extra in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = l.div_ceil(3) + extra;
        assert_layout(&reduce_3sat(&random_formula(&mut rng, l, m)));
    }

    #[test]
    fn extract_inverts_embed(seed in any::<u64>(), l in 3usize..=10, m in 4usize..=10) {
        let (formula, planted) = planted_formula(&mut ChaCha8Rng::seed_from_u64(seed), l, m);
        let red = reduce_3sat(&formula);
        let matrix = embed_assignment(&red, &planted).unwrap();
        prop_assert!(check_feasibility(&red.instance, &matrix).unwrap().feasible);
        prop_assert_eq!(
            evaluate_fitness(&red.instance, &matrix).unwrap(),
            BigRational::from_integer(red.threshold.clone())
        );
        prop_assert_eq!(extract_assignment(&red, &matrix).unwrap(), planted);
    }

    #[test]
    fn sampled_matrices_never_exceed_the_threshold(seed in any::<u64>(), l in 3usize..=5, m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let red = reduce_3sat(&random_formula(&mut rng, l, m));
        let t = BigRational::from_integer(red.threshold.clone());
        for _ in 0..20 {
            let matrix = random_reduced_matrix(&mut rng, &red);
            prop_assert!(evaluate_fitness(&red.instance, &matrix).unwrap() <= t.clone());
        }
    }

    #[test]
    fn dp_decides_small_formulas(seed in any::<u64>(), l in 3usize..=4, m in 1usize..=3) {
        prop_assume!(3 * m >= l);
        let formula = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), l, m);
        let red = reduce_3sat(&formula);
        let t = BigRational::from_integer(red.threshold.clone());
        let res = dp_solve(&red.instance).unwrap();
        let sat = sat_brute_force(&formula).unwrap();
        prop_assert!(res.fitness <= t);
        prop_assert_eq!(sat.is_some(), res.fitness == t);
        if sat.is_some() {
            prop_assert!(formula.is_satisfied_by(&extract_assignment(&red, &res.matrix).unwrap()));
        }
    }
}

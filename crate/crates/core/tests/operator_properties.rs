mod common;

use common::{rand_operator, rand_rational, rand_vector};
use minmod_core::Operator;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structured_and_dense_agree(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rand_operator(&mut rng, n, 3);
        let x = rand_vector(&mut rng, n);
        prop_assert_eq!(t.materialize().apply(&x).unwrap(), t.apply(&x).unwrap());
    }

    #[test]
    fn operator_norm_bounds_and_is_attained(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rand_operator(&mut rng, n, 3);
        let x = rand_vector(&mut rng, n);
        let (norm, signs) = t.op_norm_sup_witness();
        prop_assert!(t.apply(&x).unwrap().sup_norm() <= norm.clone() * x.sup_norm());
        prop_assert!(signs.iter().all(|s| s.abs() == common::q(1, 1)));
        prop_assert_eq!(t.apply(&signs).unwrap().sup_norm(), norm);
    }

    #[test]
    fn add_and_scale_are_homomorphisms(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rand_operator(&mut rng, n, 2);
        let b = rand_operator(&mut rng, n, 2);
        let c = rand_rational(&mut rng, 3, 5);
        let mut sum = a.to_matrix();
        sum.add_assign(&b.to_matrix());
        prop_assert_eq!(a.add(&b).unwrap().to_matrix(), sum);
        prop_assert_eq!(a.scale(c.clone()).to_matrix(), a.to_matrix().scale(&c));
    }
}

#[test]
fn materialize_is_idempotent_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let t: Operator = rand_operator(&mut rng, 4, 3);
        let d = t.materialize();
        assert_eq!(d.materialize(), d);
        assert_eq!(d.op_norm_sup(), t.op_norm_sup());
    }
}

mod common;

use knotslope_core::cabling::colored_jones;
use knotslope_core::skein::{self, bracket_bruteforce, bracket_contract};
use knotslope_core::{ColorVector, KinkKind, SkeinConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree(seed in any::<u64>(), size in 0usize..=14) {
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), size);
        prop_assert!(d.check_planar().is_ok());
        let brute = bracket_bruteforce(&d, 22).unwrap();
        prop_assert_eq!(bracket_contract(&d, 16).unwrap(), brute.clone());
        prop_assert_eq!(skein::bracket_mindeg(&d).unwrap(), brute.mindeg().unwrap());
        for cap in [brute.mindeg().unwrap(), brute.mindeg().unwrap() + 4] {
            prop_assert_eq!(skein::bracket_lower_part(&d, cap), brute.truncate_above(cap));
        }
    }

    #[test]
    fn mirror_and_union(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_diagram(&mut rng, 7);
        let b = common::random_diagram(&mut rng, 7);
        let ba = bracket_contract(&a, 16).unwrap();
        let bb = bracket_contract(&b, 16).unwrap();
        prop_assert_eq!(bracket_contract(&a.mirror(), 16).unwrap(), ba.invert_variable());
        prop_assert_eq!(bracket_contract(&a.distant_union(&b), 16).unwrap(), &ba * &bb);
    }

    #[test]
    fn kinks_preserve_jones(seed in any::<u64>(), kind in 0usize..4, edge in any::<prop::sample::Index>()) {
        let d = common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        prop_assume!(d.num_edges() > 0);
        let k = d.with_kink(edge.index(d.num_edges()), KinkKind::ALL[kind]);
        let n = ColorVector::new(vec![2; d.num_components()]).unwrap();
        let cfg = SkeinConfig::default();
        prop_assert_eq!(colored_jones(&k, &n, &cfg).unwrap(), colored_jones(&d, &n, &cfg).unwrap());
    }
}

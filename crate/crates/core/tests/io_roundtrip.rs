use proptest::prelude::*;
use rcover_core::generate::{generate, Model};
use rcover_core::io::{parse_h3bits, parse_h3json, parse_instance, write_h3bits, write_h3json};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formats_roundtrip(n in 4usize..=20, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let col = generate(&Model::Uniform(p), n, seed).unwrap();
        let bits = write_h3bits(&col).unwrap();
        prop_assert_eq!(&parse_h3bits(&bits).unwrap(), &col);
        prop_assert_eq!(&parse_instance(&bits).unwrap().into_coloring().unwrap(), &col);
        let json = write_h3json(&col);
        prop_assert_eq!(&parse_h3json(&json).unwrap().into_coloring().unwrap(), &col);
        prop_assert_eq!(write_h3bits(&col).unwrap(), bits);
    }
}

mod common;

use common::params;
use proptest::prelude::*;
use randcomplex::complex::SimplicialComplex;
use randcomplex::sampler::{sample, SampleConfig, Sampler};

fn config() -> impl Strategy<Value = SampleConfig> {
    (1u32..=12, 0usize..4, any::<u64>(), 1u64..6)
        .prop_flat_map(|(n, r, seed, count)| (Just(n), params(r), Just(seed), Just(count)))
        .prop_map(|(n, p, seed, count)| SampleConfig::new(n, p, seed, count).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_closed_and_in_space(c in config()) {
        for y in Sampler::new(c.clone()).unwrap().sample_all() {
            prop_assert_eq!((y.n(), y.r()), (c.n, c.params.r()));
            for s in y.iter() {
                prop_assert!(s.dim() <= y.r() && s.max_vertex() <= y.n());
                prop_assert!(s.facets().all(|f| y.contains(&f)));
            }
        }
    }

    #[test]
    fn draws_are_reproducible_and_shard_independent(c in config()) {
        let sampler = Sampler::new(c.clone()).unwrap();
        let all = sampler.sample_all();
        prop_assert_eq!(&all, &sampler.sample_all());
        for (i, y) in all.iter().enumerate() {
            prop_assert_eq!(y, &sample(&c, i as u64).unwrap());
        }
        let split = c.count / 2;
        let mut joined = sampler.sample_range(0..split).unwrap();
        joined.extend(sampler.sample_range(split..c.count).unwrap());
        prop_assert_eq!(joined, all);
    }

    #[test]
    fn certain_parameters_give_the_full_skeleton(n in 1u32..8, r in 0usize..4, seed in any::<u64>()) {
        let p = randcomplex::measure::ParameterVector::ones(r);
        let c = SampleConfig::new(n, p, seed, 1).unwrap();
        prop_assert_eq!(sample(&c, 0).unwrap(), SimplicialComplex::full(n, r));
    }
}

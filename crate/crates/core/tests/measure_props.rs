mod common;

use common::{complex_in, params};
use proptest::prelude::*;
use randcomplex::measure::{containment_probability, measure, sandwich_probability, ParameterVector};
use randcomplex::params::{
    intersection_parameters, link_parameters, links_intersection_parameters, ExponentMap,
};

fn small_space() -> impl Strategy<Value = (u32, usize)> {
    (1u32..=4).prop_flat_map(|n| (Just(n), 0..n.min(3) as usize))
}

proptest! {
    #[test]
    fn measure_is_the_face_product(
        (y, p) in small_space().prop_flat_map(|(n, r)| (complex_in(n, r), params(r)))
    ) {
        let profile = y.face_profile();
        let direct: f64 = (0..=y.r())
            .map(|i| {
                let f = profile.f.get(i).copied().unwrap_or(0) as i32;
                let e = profile.e.get(i).copied().unwrap_or(0) as i32;
                p.p(i).powi(f) * p.q(i).powi(e)
            })
            .product();
        prop_assert!((measure(&y, &p).unwrap().probability() - direct).abs() < 1e-12);
    }

    #[test]
    fn sandwich_of_a_complex_with_itself_is_its_measure(
        (y, p) in small_space().prop_flat_map(|(n, r)| (complex_in(n, r), params(r)))
    ) {
        let own = measure(&y, &p).unwrap().probability();
        prop_assert!((sandwich_probability(&y, &y, &p).unwrap().probability() - own).abs() < 1e-12);
        prop_assert!(containment_probability(&y, &p).unwrap().probability() >= own - 1e-15);
    }

    #[test]
    fn simplex_link_is_iterated_vertex_link(r in 1usize..6, k in 0usize..5, seed in prop::collection::vec(0.0..=1.0f64, 6)) {
        prop_assume!(k < r);
        let p = ParameterVector::new(seed[..=r].to_vec()).unwrap();
        let mut iterated = p.clone();
        for _ in 0..=k {
            iterated = link_parameters(&iterated, 0).unwrap();
        }
        let direct = link_parameters(&p, k).unwrap();
        for (a, b) in direct.as_slice().iter().zip(iterated.as_slice()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let composed = ExponentMap::simplex_link(r, k).apply(&p).unwrap();
        prop_assert_eq!(composed, direct);
    }

    #[test]
    fn one_vertex_link_intersection_is_the_link(p in (1usize..5).prop_flat_map(params)) {
        prop_assert_eq!(links_intersection_parameters(&p, 1).unwrap(), link_parameters(&p, 0).unwrap());
    }

    #[test]
    fn intersection_commutes((p, q) in (0usize..4).prop_flat_map(|r| (params(r), params(r)))) {
        prop_assert_eq!(intersection_parameters(&p, &q).unwrap(), intersection_parameters(&q, &p).unwrap());
    }
}

mod common;

use common::{any_complex, complex_pair};
use proptest::prelude::*;
use randcomplex::complex::{canonical_key, decode_key, SimplicialComplex};

proptest! {
    #[test]
    fn downward_closed(y in any_complex()) {
        for s in y.iter() {
            for f in s.facets() {
                prop_assert!(y.contains(&f), "{:?} lacks facet {:?}", s, f);
            }
        }
    }

    #[test]
    fn json_and_key_round_trip(y in any_complex()) {
        prop_assert_eq!(&SimplicialComplex::from_canonical_json(&y.to_canonical_json()).unwrap(), &y);
        prop_assert_eq!(&decode_key(y.n(), y.r(), &canonical_key(&y)).unwrap(), &y);
    }

    #[test]
    fn external_faces_have_boundary_inside(y in any_complex()) {
        for s in y.external_faces() {
            prop_assert!(!y.contains(&s));
            for f in s.facets() {
                prop_assert!(y.contains(&f));
            }
        }
        prop_assert!(y.complement_is_open_star_union());
    }

    #[test]
    fn containment_agrees_with_external_criterion((a, b) in complex_pair()) {
        prop_assert_eq!(a.is_subcomplex(&b).unwrap(), a.is_subcomplex_by_external_faces(&b).unwrap());
        let meet = a.intersection(&b).unwrap();
        prop_assert!(meet.is_subcomplex(&a).unwrap() && meet.is_subcomplex(&b).unwrap());
    }

    #[test]
    fn link_size_matches_degree(y in any_complex()) {
        for s in y.iter().filter(|s| s.dim() < y.r()) {
            let link = y.link(s).unwrap();
            prop_assert_eq!(link.complex.f_vector()[0] as usize, y.degree(s).unwrap());
            prop_assert_eq!(link.complex.n() as usize, y.n() as usize - s.len());
        }
    }

    #[test]
    fn face_profile_matches_f_vector(y in any_complex()) {
        let profile = y.face_profile();
        prop_assert_eq!(&profile.f, &y.f_vector());
        prop_assert_eq!(profile.e.iter().sum::<u64>() as usize, y.external_faces().len());
    }
}

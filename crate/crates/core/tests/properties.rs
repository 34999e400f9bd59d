//! Property-based invariants over randomly drawn weights, roots, and
//! hyperplanes.

use proptest::prelude::*;

use weylcert_core::excision::{self, Hyperplane};
use weylcert_core::rootsys::{Family, RootSystem, Weight, WeightSpec};
use weylcert_core::weyl;

fn family_strategy() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (Just(Family::B), 2usize..=5),
        (Just(Family::C), 3usize..=5),
        (Just(Family::D), 4usize..=5),
    ]
}

proptest! {
    #[test]
    fn dominant_representative_is_orbit_invariant(
        (family, rank) in family_strategy(),
        seed_coords in proptest::collection::vec(-4i64..=4, 8),
        word in proptest::collection::vec(0usize..8, 0..12),
    ) {
        let rs = RootSystem::new(family, rank).unwrap();
        let mu = Weight::from_coords2(seed_coords[..rank].iter().map(|c| 2 * c).collect());
        let dom = weyl::dominant_representative(&rs, &mu).unwrap();
        let mut moved = mu;
        for step in &word {
            let alpha = &rs.simple_roots()[step % rank];
            moved = weyl::reflect(&rs, alpha, &moved).unwrap();
        }
        let dom_moved = weyl::dominant_representative(&rs, &moved).unwrap();
        prop_assert_eq!(dom, dom_moved);
    }

    #[test]
    fn reflection_is_an_involution_preserving_lattices(
        (family, rank) in family_strategy(),
        root_pick in any::<proptest::sample::Index>(),
        base in proptest::collection::vec(-4i64..=4, 8),
        parity in 0i64..=1,
    ) {
        let rs = RootSystem::new(family, rank).unwrap();
        let p = if family == Family::C { 0 } else { parity };
        let mu = Weight::from_coords2(base[..rank].iter().map(|c| 2 * c + p).collect());
        let alpha = &rs.roots()[root_pick.index(rs.roots().len())];
        let once = weyl::reflect(&rs, alpha, &mu).unwrap();
        let twice = weyl::reflect(&rs, alpha, &once).unwrap();
        prop_assert_eq!(&twice, &mu);
        prop_assert_eq!(rs.in_weight_lattice(&once), rs.in_weight_lattice(&mu));
        prop_assert_eq!(rs.in_root_lattice(&once), rs.in_root_lattice(&mu));
        // The fixed hyperplane stays fixed.
        let h = Hyperplane::from_normal(
            weylcert_core::rootsys::coroot(alpha).unwrap().coords2().to_vec(),
        )
        .unwrap();
        if h.contains(&mu) {
            prop_assert_eq!(&once, &mu);
        }
    }

    #[test]
    fn roots_split_exactly_across_any_hyperplane(
        (family, rank) in family_strategy(),
        normal in proptest::collection::vec(-5i64..=5, 8),
        scale in 1i64..=6,
    ) {
        let rs = RootSystem::new(family, rank).unwrap();
        let normal: Vec<i64> = normal[..rank].to_vec();
        prop_assume!(normal.iter().any(|&c| c != 0));
        let h = Hyperplane::from_normal(normal.clone()).unwrap();
        let off = excision::roots_off(&rs, &h);
        let on = rs.roots().iter().filter(|w| h.contains(w)).count() as u64;
        prop_assert_eq!(off + on, rs.roots().len() as u64);
        // Scaling the normal changes nothing.
        let scaled = Hyperplane::from_normal(normal.iter().map(|c| c * scale).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(h, scaled);
    }

    #[test]
    fn roots_off_is_reflection_invariant(
        (family, rank) in family_strategy(),
        normal in proptest::collection::vec(-5i64..=5, 8),
        root_pick in any::<proptest::sample::Index>(),
    ) {
        // Reflecting the hyperplane by any Weyl element while the root set
        // stays fixed cannot change the excision count.
        let rs = RootSystem::new(family, rank).unwrap();
        let normal: Vec<i64> = normal[..rank].to_vec();
        prop_assume!(normal.iter().any(|&c| c != 0));
        let h = Hyperplane::from_normal(normal.clone()).unwrap();
        let alpha = &rs.roots()[root_pick.index(rs.roots().len())];
        let as_weight = Weight::from_coords2(normal.iter().map(|c| 2 * c).collect());
        let moved = weyl::reflect(&rs, alpha, &as_weight).unwrap();
        let h_moved = Hyperplane::from_normal(
            moved.coords2().iter().map(|c| c / 2).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert_eq!(
            excision::roots_off(&rs, &h),
            excision::roots_off(&rs, &h_moved)
        );
    }

    #[test]
    fn weight_text_roundtrip(
        (family, rank) in family_strategy(),
        coords in proptest::collection::vec(-9i64..=9, 8),
    ) {
        let rs = RootSystem::new(family, rank).unwrap();
        let w = Weight::from_coords2(coords[..rank].to_vec());
        let text = w.to_string();
        let parsed = WeightSpec::parse(&text).unwrap().resolve(&rs).unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn orbit_cardinality_divides_group_order(
        (family, rank) in family_strategy(),
        fw in proptest::collection::vec(0i64..=2, 8),
    ) {
        let rs = RootSystem::new(family, rank).unwrap();
        let lambda = rs.weight_from_fw(&fw[..rank]);
        let orbit = weyl::orbit(&rs, &lambda).unwrap();
        prop_assert_eq!(rs.weyl_order() % orbit.len() as u128, 0);
        // Exactly one element is dominant.
        let dominant_count = orbit
            .elements()
            .iter()
            .filter(|w| rs.is_dominant(w))
            .count();
        prop_assert_eq!(dominant_count, 1);
    }
}

use collapsar_core::category::AcyclicCategory;
use collapsar_core::collapse::{euler_characteristic, free_faces, replay_simple, strong_to_simple};
use collapsar_core::delta::{is_contiguous, DeltaComplex, DeltaMap};
use collapsar_core::functors::{classifying_map, classifying_space, face_poset_category, sd_category, sd_delta};
use collapsar_core::oracle::{
    all_orders_cores_cat, all_orders_cores_delta, enumerate_functors, random_acyclic_category, random_delta_complex,
    relabel_category, relabel_complex, GeneratorParams, OracleConfig, Unlimited,
};
use collapsar_core::FunctorData;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GeneratorParams> {
    (any::<u64>(), 1usize..=6, 1usize..=3, 1usize..=3, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=0.6).prop_map(
        |(seed, max_size, max_parallel, max_dim, density, quotient, multiplicity)| GeneratorParams {
            seed,
            max_size,
            max_parallel,
            max_dim,
            density,
            quotient,
            multiplicity,
        },
    )
}

fn category() -> impl Strategy<Value = AcyclicCategory> {
    params().prop_map(|p| random_acyclic_category(&p))
}

fn complex() -> impl Strategy<Value = DeltaComplex> {
    params().prop_map(|p| random_delta_complex(&p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn category_round_trips_through_raw_form(a in category()) {
        prop_assert_eq!(a.to_raw().validate().unwrap(), a);
    }

    #[test]
    fn complex_round_trips_through_raw_form(x in complex()) {
        prop_assert_eq!(x.to_raw().validate().unwrap(), x);
    }

    #[test]
    fn opposite_is_an_involution(a in category()) {
        prop_assert_eq!(a.opposite().opposite(), a.clone());
        prop_assert_eq!(a.is_minimal(), a.opposite().is_minimal());
    }

    #[test]
    fn category_core_is_minimal_and_replays(a in category()) {
        let (core, sequence) = a.core();
        prop_assert!(core.is_minimal());
        prop_assert_eq!(sequence.replay(&a).unwrap(), core.clone());
        prop_assert_eq!(sequence.steps.len() + core.object_count(), a.object_count());
        prop_assert!(core.core().1.steps.is_empty());
    }

    #[test]
    fn complex_core_is_minimal_and_preserves_euler_characteristic(x in complex()) {
        let (core, sequence) = x.core().unwrap();
        prop_assert!(core.is_minimal());
        prop_assert_eq!(sequence.replay(&x).unwrap(), core.clone());
        prop_assert_eq!(euler_characteristic(&core), euler_characteristic(&x));
    }

    #[test]
    fn cores_do_not_depend_on_names(a in category(), x in complex(), seed in any::<u64>()) {
        let b = relabel_category(&a, seed);
        prop_assert!(a.isomorphism_to(&b).is_some());
        prop_assert!(a.same_strong_equivalence_type(&b));
        let y = relabel_complex(&x, seed);
        prop_assert!(x.isomorphism_to(&y).is_some());
        prop_assert!(x.same_strong_homotopy_type(&y));
    }

    #[test]
    fn beat_removal_keeps_the_strong_equivalence_type(a in category()) {
        if let Some(w) = a.first_beat() {
            prop_assert!(a.same_strong_equivalence_type(&a.remove_object(w.object)));
        }
    }

    #[test]
    fn retractions_are_contiguous_to_the_identity(x in complex()) {
        let id = DeltaMap::identity(&x);
        for v in x.vertices() {
            if let Some(w) = x.find_domination(v) {
                let r = x.retraction_endomap(&w);
                prop_assert!(r.is_valid(&x, &x));
                prop_assert!(is_contiguous(&x, &x, &r, &id));
                prop_assert_eq!(r.after(&r), r.clone());
            }
        }
    }

    #[test]
    fn strong_collapses_expand_into_simple_ones(x in complex()) {
        if let Some(w) = x.first_dominated() {
            let steps = strong_to_simple(&x, &w).unwrap();
            let mut current = x.clone();
            for step in &steps {
                prop_assert!(free_faces(&current).contains(step));
                current = replay_simple(&current, std::slice::from_ref(step)).unwrap();
                prop_assert_eq!(euler_characteristic(&current), euler_characteristic(&x));
            }
            prop_assert_eq!(current, x.remove_vertex(w.vertex));
        }
    }

    #[test]
    fn subdivisions_are_posets_and_simplicial(a in category(), x in complex()) {
        prop_assert!(sd_category(&a).is_poset());
        let sd = sd_delta(&x);
        prop_assert!(sd.is_simplicial());
        prop_assert_eq!(euler_characteristic(&sd), euler_characteristic(&x));
        prop_assert!(face_poset_category(&x).category.is_poset());
    }

    #[test]
    fn classifying_space_is_functorial(a in category()) {
        prop_assume!(a.object_count() <= 4 && a.morphism_count() <= 6);
        let ba = classifying_space(&a);
        let functors = enumerate_functors(&a, &a, &mut Unlimited).unwrap();
        prop_assert!(functors.contains(&FunctorData::identity(&a)));
        prop_assert!(classifying_map(&ba, &ba, &FunctorData::identity(&a)).is_identity());
        for f in functors.iter().take(8) {
            let bf = classifying_map(&ba, &ba, f);
            prop_assert!(bf.is_valid(&ba.complex, &ba.complex));
            for g in functors.iter().take(8) {
                let bgf = classifying_map(&ba, &ba, &g.after(f));
                prop_assert_eq!(bgf, classifying_map(&ba, &ba, g).after(&bf));
            }
        }
    }

    #[test]
    fn classifying_space_has_one_simplex_per_chain(a in category()) {
        let ba = classifying_space(&a).complex;
        prop_assert_eq!(ba.vertex_count(), a.object_count());
        prop_assert_eq!(ba.count_of_dim(1), a.morphism_count());
        prop_assert_eq!(ba.count_of_dim(2), a.composition_entries().count());
    }

    #[test]
    fn greedy_cores_match_every_removal_order(a in category(), x in complex()) {
        let config = OracleConfig::default();
        let classes = all_orders_cores_cat(&a, &config, &mut Unlimited).unwrap();
        prop_assert_eq!(classes.len(), 1);
        prop_assert!(classes[0].isomorphism_to(&a.core().0).is_some());
        let classes = all_orders_cores_delta(&x, &config, &mut Unlimited).unwrap();
        prop_assert_eq!(classes.len(), 1);
        prop_assert!(classes[0].isomorphism_to(&x.core().unwrap().0).is_some());
    }
}

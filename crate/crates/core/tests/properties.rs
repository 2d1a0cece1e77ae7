mod common;

use std::sync::OnceLock;

use algrest_core::classifier::{classify_t7, t7_swap};
use algrest_core::forms::{exterior_derivative, wedge};
use algrest_core::invariants::{index_of_isotropy, lagrangian_tangency_form};
use algrest_core::linalg::{int, Scalar};
use algrest_core::restriction::{Flavor, GradedBasis};
use algrest_core::scenario::shipped;
use algrest_core::Order;
use common::{brute_force_for, random_form, BruteForce};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn t7(flavor: Flavor) -> &'static GradedBasis {
    static ALL: OnceLock<GradedBasis> = OnceLock::new();
    static CLOSED: OnceLock<GradedBasis> = OnceLock::new();
    let cell = match flavor {
        Flavor::All => &ALL,
        Flavor::Closed => &CLOSED,
    };
    cell.get_or_init(|| shipped("t7").unwrap().basis(flavor, None).unwrap())
}

fn a3() -> &'static (GradedBasis, BruteForce) {
    static CELL: OnceLock<(GradedBasis, BruteForce)> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = shipped("a3").unwrap().basis(Flavor::All, None).unwrap();
        let bf = brute_force_for(&b);
        (b, bf)
    })
}

fn coords() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(
        prop_oneof![Just(0i64), -4i64..=4].prop_map(int),
        7,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn restrict_is_linear(seed in any::<u64>(), s in -5i64..=5, t in -5i64..=5) {
        let b = t7(Flavor::All);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&mut rng, &b.germ.vars, 2, 3);
        let g = random_form(&mut rng, &b.germ.vars, 2, 3);
        let (s, t) = (int(s), int(t));
        let lhs = b.restrict(&(&f.scale(&s) + &g.scale(&t))).unwrap();
        let rhs = b.restrict(&f).unwrap().scale(&s).add(&b.restrict(&g).unwrap().scale(&t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), k in 0usize..2) {
        let vars = &t7(Flavor::All).germ.vars;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&mut rng, vars, k, 5);
        prop_assert!(exterior_derivative(&exterior_derivative(&f)).is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>()) {
        let vars = &t7(Flavor::All).germ.vars;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&mut rng, vars, 0, 3);
        let g = random_form(&mut rng, vars, 1, 3);
        let lhs = exterior_derivative(&wedge(&f, &g).unwrap());
        let rhs = &wedge(&exterior_derivative(&f), &g).unwrap() + &wedge(&f, &exterior_derivative(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_forms_restrict_into_the_closed_basis(seed in any::<u64>()) {
        let b = t7(Flavor::Closed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = random_form(&mut rng, &b.germ.vars, 1, 4);
        let a = b.restrict(&exterior_derivative(&alpha)).unwrap();
        prop_assert_eq!(b.restrict(&b.form_of(&a)).unwrap(), a);
    }

    #[test]
    fn zero_test_matches_brute_force(seed in any::<u64>()) {
        let (b, bf) = a3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&mut rng, &b.germ.vars, 2, bf.low);
        prop_assert_eq!(b.is_zero_restriction(&f).unwrap(), bf.vanishes(&f));
        // Subtracting the representative of its class leaves a vanishing form.
        let rest = &f - &b.form_of(&b.restrict(&f).unwrap());
        prop_assert!(bf.vanishes(&rest));
    }

    #[test]
    fn infinite_orders_mark_the_zero_class(c in coords()) {
        let b = t7(Flavor::Closed);
        let a = b.class_from_coords(c).unwrap();
        let lt = lagrangian_tangency_form(b, &b.form_of(&a), None).unwrap();
        let ind = index_of_isotropy(b, &a, None).unwrap();
        prop_assert_eq!(lt == Order::Infinity, a.is_zero());
        prop_assert_eq!(ind == Order::Infinity, a.is_zero());
    }

    #[test]
    fn t7_classifier_is_total_and_swap_invariant(c in coords()) {
        let label = classify_t7(&c).unwrap();
        let swapped = classify_t7(&t7_swap(&c)).unwrap();
        prop_assert_eq!(label.class, swapped.class);
    }
}

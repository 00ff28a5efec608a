//! Property-based tests of the algebraic invariants: scheme axioms,
//! column-scaling relations, and rank behavior over Q and F_q.

use proptest::prelude::*;

use ascheme::bounds::{dependence_relation, scaling_relation};
use ascheme::generators;
use ascheme::gf::{combine, RowReducer};
use ascheme::ratmat;
use ascheme::{FqField, Scheme};

fn scheme_pool() -> Vec<Scheme> {
    vec![
        generators::complete(2).unwrap(),
        generators::complete(5).unwrap(),
        generators::johnson(4, 2).unwrap(),
        generators::johnson(5, 2).unwrap(),
        generators::hamming(2, 2).unwrap(),
        generators::hamming(3, 2).unwrap(),
        generators::hamming(2, 3).unwrap(),
        generators::from_group(&generators::cyclic_group_table(4)).unwrap(),
        generators::from_group(&generators::cyclic_group_table(5)).unwrap(),
        generators::from_group(&generators::cyclic_group_table(7)).unwrap(),
        generators::from_group(&generators::symmetric_group_table(3)).unwrap(),
        generators::cyclotomic(7, 3).unwrap(),
        generators::cyclotomic(11, 5).unwrap(),
        generators::cyclotomic(13, 3).unwrap(),
        generators::cyclotomic(13, 4).unwrap(),
        generators::cyclotomic(13, 6).unwrap(),
    ]
}

fn arb_scheme() -> impl Strategy<Value = Scheme> {
    let pool = scheme_pool();
    (0..pool.len()).prop_map(move |i| pool[i].clone())
}

fn arb_field() -> impl Strategy<Value = FqField> {
    prop_oneof![
        Just(FqField::new(2, 1).unwrap()),
        Just(FqField::new(3, 1).unwrap()),
        Just(FqField::new(2, 2).unwrap()),
        Just(FqField::new(5, 1).unwrap()),
        Just(FqField::new(7, 1).unwrap()),
        Just(FqField::new(2, 3).unwrap()),
        Just(FqField::new(3, 2).unwrap()),
    ]
}

/// A scheme together with a coefficient vector over a field.
fn arb_combination() -> impl Strategy<Value = (Scheme, FqField, Vec<u32>)> {
    (arb_scheme(), arb_field()).prop_flat_map(|(sch, field)| {
        let s = sch.s();
        let q = field.q();
        (Just(sch), Just(field), proptest::collection::vec(0..q, s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valencies_sum_to_n_and_match_row_counts((sch, x) in arb_scheme().prop_flat_map(|sch| {
        let n = sch.n();
        (Just(sch), 0..n)
    })) {
        let n = sch.n();
        prop_assert_eq!(sch.valencies().iter().sum::<usize>(), n);
        for r in 0..sch.s() as u16 {
            let row_count = (0..n).filter(|&y| sch.color(x, y) == r).count();
            prop_assert_eq!(row_count, sch.valency(r));
            let col_count = (0..n).filter(|&y| sch.color(y, x) == r).count();
            prop_assert_eq!(col_count, sch.valency(sch.transpose(r)));
        }
    }

    #[test]
    fn transposition_is_an_involution_preserving_valency(sch in arb_scheme()) {
        for r in 0..sch.s() as u16 {
            prop_assert_eq!(sch.transpose(sch.transpose(r)), r);
            prop_assert_eq!(sch.valency(sch.transpose(r)), sch.valency(r));
        }
    }

    #[test]
    fn scaling_relations_are_unions_of_colors((sch, field, coeffs) in arb_combination()) {
        let a = combine(&sch, &field, &coeffs);
        for lambda in field.elements() {
            let e = scaling_relation(&a, lambda);
            prop_assert!(sch.relation_set(&e).is_union(),
                "e_{} cuts a color class (coeffs {:?})", lambda, coeffs);
        }
    }

    #[test]
    fn distinct_factors_give_disjoint_relations_without_zero_columns(
        (sch, field, coeffs) in arb_combination()
    ) {
        let a = combine(&sch, &field, &coeffs);
        let n = sch.n();
        let has_zero_column = (0..n).any(|x| (0..n).all(|i| a.get(i, x) == 0));
        prop_assume!(!has_zero_column);
        let relations: Vec<Vec<bool>> =
            field.elements().map(|l| scaling_relation(&a, l)).collect();
        for i in 0..relations.len() {
            for j in (i + 1)..relations.len() {
                let overlap = relations[i].iter().zip(&relations[j]).any(|(&a, &b)| a && b);
                prop_assert!(!overlap, "factors {i} and {j} overlap");
            }
        }
    }

    #[test]
    fn column_equality_is_an_equivalence((sch, field, coeffs) in arb_combination()) {
        let a = combine(&sch, &field, &coeffs);
        let e1 = scaling_relation(&a, 1);
        prop_assert!(ascheme::scheme::is_equivalence_relation(sch.n(), &e1));
    }

    #[test]
    fn dependence_is_an_equivalence_without_zero_columns(
        (sch, field, coeffs) in arb_combination()
    ) {
        let a = combine(&sch, &field, &coeffs);
        let (e, has_zero_column) = dependence_relation(&a);
        prop_assume!(!has_zero_column);
        prop_assert!(ascheme::scheme::is_equivalence_relation(sch.n(), &e));
        // And it matches the union of the individual scaling relations.
        let mut union = vec![false; sch.n() * sch.n()];
        for lambda in field.elements() {
            for (u, v) in union.iter_mut().zip(scaling_relation(&a, lambda)) {
                *u |= v;
            }
        }
        prop_assert_eq!(e, union);
    }

    #[test]
    fn primitive_schemes_admit_no_middle_ground(
        (sch, field, coeffs) in arb_combination()
    ) {
        prop_assume!(sch.is_primitive().unwrap());
        let n = sch.n();
        let a = combine(&sch, &field, &coeffs);
        let e1 = scaling_relation(&a, 1);
        let diagonal: Vec<bool> =
            (0..n * n).map(|i| i / n == i % n).collect();
        let full = vec![true; n * n];
        prop_assert!(e1 == diagonal || e1 == full,
            "e_1 is a nontrivial equivalence on a primitive scheme");
    }

    #[test]
    fn rank_is_invariant_under_scaling(
        ((sch, field, coeffs), c) in (arb_combination(), 1u32..1000)
    ) {
        let c = c % (field.q() - 1) + 1;
        let scaled: Vec<u32> = coeffs.iter().map(|&v| field.mul(c, v)).collect();
        let a = combine(&sch, &field, &coeffs);
        let b = combine(&sch, &field, &scaled);
        prop_assert_eq!(a.rank(), b.rank());
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank((sch, field, coeffs) in arb_combination()) {
        prop_assume!(field.f() == 1);
        let a = combine(&sch, &field, &coeffs);
        let rational: Vec<_> = coeffs.iter().map(|&v| ratmat::rat(v as i64)).collect();
        let b = ratmat::combine(&sch, &rational);
        prop_assert!(a.rank() <= b.rank());
    }

    #[test]
    fn incremental_reduction_matches_full_rank((sch, field, coeffs) in arb_combination()) {
        let a = combine(&sch, &field, &coeffs);
        let mut reducer = RowReducer::new(field.clone(), sch.n());
        for x in 0..sch.n() {
            let mut row: Vec<u32> = (0..sch.n()).map(|y| a.get(x, y)).collect();
            reducer.offer(&mut row);
        }
        prop_assert_eq!(reducer.rank(), a.rank());
    }

    #[test]
    fn unions_of_colors_round_trip(
        (sch, mask, flip) in arb_scheme().prop_flat_map(|sch| {
            let s = sch.s();
            let n = sch.n();
            (Just(sch), 0u32..(1 << s), 0..n * n)
        })
    ) {
        let n = sch.n();
        let mut indicator = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                indicator[x * n + y] = (mask >> sch.color(x, y)) & 1 == 1;
            }
        }
        let set = sch.relation_set(&indicator);
        prop_assert!(set.is_union());
        let colors = set.colors.unwrap();
        for r in 0..sch.s() as u16 {
            prop_assert_eq!(colors.contains(&r), (mask >> r) & 1 == 1);
        }
        if n >= 2 {
            indicator[flip] = !indicator[flip];
            prop_assert!(!sch.relation_set(&indicator).is_union());
        }
    }
}

//! Property tests for the algebraic laws the library promises.

use std::collections::BTreeMap;

use proptest::prelude::*;

use hodgez_core::abgroup::FinAbGroup;
use hodgez_core::hodge::{is_in_r_plus, phi, CohomologyProfile};
use hodgez_core::motivic::{
    blowup_profiles, cell_decomposition_class, h_vir, kunneth_product_profile, product_hz_direct,
    VirtualClass,
};
use hodgez_core::ring::{
    reduce_raw, reduce_raw_random_order, BasisMonomial, IdemPart, LocalizedElement, MainPart,
    Prime, RawMonomial, RingElement,
};
use hodgez_core::verify::tensor_by_summand_expansion;

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

fn torsion_group() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec((prime(), 1u32..=4, 1u64..=3), 0..5)
        .prop_map(|summands| FinAbGroup::from_parts(0, summands).unwrap())
}

fn group() -> impl Strategy<Value = FinAbGroup> {
    (0u64..=3, torsion_group()).prop_map(|(rank, t)| FinAbGroup::free(rank).direct_sum(&t))
}

fn idem_part() -> impl Strategy<Value = IdemPart> {
    prop_oneof![
        Just(IdemPart::One),
        prime().prop_map(IdemPart::S),
        (0u32..=3).prop_map(IdemPart::R),
        (prime(), 0u32..=3).prop_map(|(p, j)| IdemPart::Sr(p, j)),
    ]
}

fn main_part() -> impl Strategy<Value = MainPart> {
    prop_oneof![
        (0u32..=3, 0u32..=3, 0u32..=3).prop_map(|(u, v, t)| MainPart::Uvt { u, v, t }),
        (0u32..=6).prop_map(|t| MainPart::Tx { t }),
        (2u32..=5).prop_map(MainPart::xpow),
    ]
}

fn ring_element() -> impl Strategy<Value = RingElement> {
    prop::collection::vec(
        (
            idem_part(),
            main_part(),
            (-9i64..=9).prop_filter("nonzero", |c| *c != 0),
        ),
        0..5,
    )
    .prop_map(|terms| {
        terms
            .into_iter()
            .fold(RingElement::zero(), |acc, (idem, main, c)| {
                &acc + &RingElement::from_term(BasisMonomial { idem, main }, c)
            })
    })
}

fn profile_with_dim(dim: u32) -> impl Strategy<Value = CohomologyProfile> {
    let hodge = prop::collection::btree_map((0..=dim, 0..=dim), 1u64..=5, 0..=6);
    let torsion = if dim == 0 {
        Just(BTreeMap::new()).boxed()
    } else {
        prop::collection::btree_map(2u32..=2 * dim, torsion_group(), 0..3).boxed()
    };
    (hodge, torsion).prop_map(move |(hodge, torsion)| {
        CohomologyProfile::new(
            "X",
            dim,
            hodge.into_iter().map(|((p, q), h)| (p, q, h)),
            torsion,
        )
        .unwrap()
    })
}

fn profile() -> impl Strategy<Value = CohomologyProfile> {
    (0u32..=3).prop_flat_map(profile_with_dim)
}

#[test]
fn values_are_thread_safe() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FinAbGroup>();
    assert_send_sync::<RingElement>();
    assert_send_sync::<LocalizedElement>();
    assert_send_sync::<CohomologyProfile>();
    assert_send_sync::<VirtualClass>();
}

#[test]
fn invariant_round_trip_over_a_thousand_groups() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let params = hodgez_core::verify::ProfileParams::default();
    for _ in 0..1000 {
        let group = hodgez_core::verify::random_torsion_group(&mut rng, &params);
        let table = group.a_invariant_table();
        assert_eq!(FinAbGroup::from_invariants(&table).unwrap(), group);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // --- abelian groups ---

    #[test]
    fn direct_sum_laws(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&FinAbGroup::trivial()), a);
    }

    #[test]
    fn repeated_sum_scales_invariants(a in group(), r in 0u64..=5) {
        let power = a.repeated(r);
        prop_assert_eq!(power.free_rank(), r * a.free_rank());
        for p in [2u64, 3, 5, 7] {
            let p = Prime::new(p).unwrap();
            for j in 0..=5 {
                prop_assert_eq!(power.a_invariant(p, j), r * a.a_invariant(p, j));
            }
        }
    }

    #[test]
    fn tensor_laws(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(
            a.tensor(&b.direct_sum(&c)),
            a.tensor(&b).direct_sum(&a.tensor(&c))
        );
        prop_assert_eq!(a.tensor(&FinAbGroup::free(1)), a);
    }

    #[test]
    fn tensor_matches_summand_expansion(a in group(), b in group()) {
        prop_assert_eq!(a.tensor(&b), tensor_by_summand_expansion(&a, &b));
    }

    #[test]
    fn tor_is_tensor_of_torsion_parts(a in group(), b in group()) {
        // Tor kills free parts, so it factors through the torsion subgroups;
        // on those it agrees with the tensor product computed the long way.
        prop_assert_eq!(a.tor(&b), a.torsion_part().tensor(&b.torsion_part()));
        prop_assert_eq!(a.tor(&b).free_rank(), 0);
    }

    #[test]
    fn tor_of_torsion_groups_is_torsion_part_of_tensor(a in torsion_group(), b in torsion_group()) {
        prop_assert_eq!(a.tor(&b), a.tensor(&b).torsion_part());
    }

    #[test]
    fn a_invariant_is_multiplicative(a in torsion_group(), b in torsion_group()) {
        let product = a.tensor(&b);
        for p in [2u64, 3, 5, 7] {
            let p = Prime::new(p).unwrap();
            for j in 0..=5 {
                prop_assert_eq!(
                    product.a_invariant(p, j),
                    a.a_invariant(p, j) * b.a_invariant(p, j)
                );
            }
        }
    }

    #[test]
    fn a_invariants_are_monotone_and_reconstruct(a in torsion_group()) {
        let table = a.a_invariant_table();
        for (&(p, j), &value) in &table {
            if j > 0 {
                let previous = table.get(&(p, j - 1)).copied().unwrap_or(0);
                prop_assert!(previous >= value);
            }
        }
        prop_assert_eq!(FinAbGroup::from_invariants(&table).unwrap(), a);
    }

    // --- ring ---

    #[test]
    fn ring_laws(a in ring_element(), b in ring_element(), c in ring_element()) {
        let ab = &a * &b;
        prop_assert_eq!(&ab, &(&b * &a));
        prop_assert_eq!(&(&ab * &c), &(&a * &(&b * &c)));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        prop_assert_eq!(&(&a * &RingElement::one()), &a);
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!(ab.terms().all(|(m, _)| m.is_canonical()));
    }

    #[test]
    fn confluence(u in 0u32..=4, v in 0u32..=4, t in 0u32..=5, x in 0u32..=6, seed in any::<u64>()) {
        use rand::SeedableRng;
        let raw = RawMonomial { u, v, t, x };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(reduce_raw(raw), reduce_raw_random_order(raw, &mut rng));
    }

    #[test]
    fn degree_laws(a in ring_element(), b in ring_element(), n in (-9i64..=9).prop_filter("nonzero", |n| *n != 0)) {
        prop_assert!((&a + &b).degree() <= a.degree().max(b.degree()));
        prop_assert_eq!(a.scalar_mul(n).degree(), a.degree());
        match ((&a * &b).degree(), a.degree(), b.degree()) {
            (None, _, _) => {}
            (Some(d), Some(da), Some(db)) => prop_assert!(d <= da + db),
            (Some(_), _, _) => prop_assert!(false, "nonzero product of a zero factor"),
        }
    }

    #[test]
    fn localized_equality_laws(a in ring_element(), b in ring_element(), da in 0u32..=2, db in 0u32..=2) {
        let la = LocalizedElement::new(a.clone(), da);
        let lb = LocalizedElement::new(b.clone(), db);
        prop_assert!(la.localized_equals(&la));
        prop_assert_eq!(la.localized_equals(&lb), lb.localized_equals(&la));
        let plain_a = LocalizedElement::from_ring(a.clone());
        let plain_b = LocalizedElement::from_ring(b.clone());
        prop_assert_eq!(plain_a.localized_equals(&plain_b), a == b);
        // witnessed equality refines cross-multiplication
        if la.localized_equals(&lb) {
            prop_assert!(la.localized_equals_witnessed(
                &lb,
                hodgez_core::ring::DEFAULT_WITNESS_POWER
            ));
        }
    }

    // --- hodge ---

    #[test]
    fn reconstruction_round_trip(x in profile()) {
        let hz = x.integral_hodge();
        prop_assert!(is_in_r_plus(&hz));
        for i in 0..=2 * x.dim() + 2 {
            prop_assert_eq!(phi(&hz, i).unwrap(), x.cohomology_group(i));
        }
    }

    #[test]
    fn torsion_poincare_lies_in_subring(x in profile()) {
        prop_assert!(x.torsion_poincare().is_in_subring_s());
    }

    #[test]
    fn integral_hodge_ignores_name(x in profile()) {
        prop_assert_eq!(x.renamed("other").integral_hodge(), x.integral_hodge());
    }

    #[test]
    fn torsion_free_profiles_give_plain_hodge_polynomials(dim in 0u32..=3) {
        // exercised through projective space: every monomial is u^k v^k
        let p = CohomologyProfile::projective_space(dim);
        let hz = p.integral_hodge();
        let plain = hz.terms().all(|(m, _)| {
            matches!((m.idem, m.main), (IdemPart::One, MainPart::Uvt { t: 0, .. }))
        });
        prop_assert!(plain);
    }

    // --- motivic ---

    #[test]
    fn three_way_multiplicativity(x in profile(), y in profile()) {
        let by_ring = &x.integral_hodge() * &y.integral_hodge();
        prop_assert_eq!(&by_ring, &product_hz_direct(&x, &y));
        prop_assert_eq!(&by_ring, &kunneth_product_profile(&x, &y).integral_hodge());
    }

    #[test]
    fn kunneth_is_commutative_and_unital(x in profile(), y in profile()) {
        let xy = kunneth_product_profile(&x, &y);
        let yx = kunneth_product_profile(&y, &x);
        prop_assert_eq!(xy.renamed(""), yx.renamed(""));
        let with_point = kunneth_product_profile(&x, &CohomologyProfile::point());
        prop_assert_eq!(with_point.renamed(""), x.renamed(""));
    }

    #[test]
    fn kunneth_is_associative(
        x in profile_with_dim(1),
        y in profile_with_dim(2),
        z in profile_with_dim(1),
    ) {
        let left = kunneth_product_profile(&kunneth_product_profile(&x, &y), &z);
        let right = kunneth_product_profile(&x, &kunneth_product_profile(&y, &z));
        prop_assert_eq!(left.renamed(""), right.renamed(""));
    }

    #[test]
    fn blowup_identity(z in profile_with_dim(1), codim in 2u32..=4, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let params = hodgez_core::verify::ProfileParams::default();
        let x = hodgez_core::verify::random_profile_with_dim(
            &mut rng,
            &params,
            1 + codim,
            "X",
        );
        let (bl, e) = blowup_profiles(&x, &z, codim).unwrap();
        let lhs = &x.integral_hodge() - &z.integral_hodge();
        let rhs = &bl.integral_hodge() - &e.integral_hodge();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_vir_is_additive(x in profile(), y in profile(), k in -3i64..=3) {
        let a = VirtualClass::from_profile(x).mul(&VirtualClass::lefschetz_power(k));
        let b = VirtualClass::from_profile(y);
        let sum = h_vir(&a.add(&b));
        prop_assert!(sum.localized_equals(&h_vir(&a).add(&h_vir(&b))));
    }

    #[test]
    fn cell_classes_reconstruct_torsion_free(cells in prop::collection::vec(0u32..=6, 0..8)) {
        let value = h_vir(&cell_decomposition_class(&cells));
        prop_assert_eq!(value.denom_exp(), 0);
        prop_assert!(is_in_r_plus(value.numerator()));
        for i in 0..=14 {
            prop_assert!(phi(value.numerator(), i).unwrap().is_torsion_free());
        }
    }

    #[test]
    fn filtration_degree_bound(x in profile(), extra in 0u32..=2) {
        for i in 0..=2 * x.dim() + 2 + extra {
            prop_assert!(hodgez_core::motivic::filtration_degree_check(&x, i));
        }
    }

    #[test]
    fn equal_classes_have_equal_h_vir(x in profile(), k in 0u32..=3) {
        // the same class assembled along two different routes
        let direct = VirtualClass::from_profile(x.clone())
            .mul(&VirtualClass::lefschetz_power(k as i64));
        let indirect = VirtualClass::lefschetz_power(k as i64)
            .mul(&VirtualClass::from_profile(x));
        prop_assert_eq!(&direct, &indirect);
        prop_assert!(h_vir(&direct).localized_equals(&h_vir(&indirect)));
    }
}

use bsrig_core::bass_serre::{classify, edge_of, fixes_vertex, range, source, vertex_of, Classification};
use bsrig_core::fusion::{decompose_self_inverse, exchange_partners, omega_member, RootOfUnity};
use bsrig_core::group::{normalize, BsPresentation, GroupWord, Letter, NormalForm};
use bsrig_core::hecke::{
    amalgam_embed, coset_profile, double_coset, hecke_convolve, qc_member, AmalgamLetter, HeckeElement,
};
use bsrig_core::oracle;
use bsrig_core::rigidity::{canonicalize, is_isomorphic, recover_parameters};
use bsrig_core::sample::{insert_at_random, relator_conjugate};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: [(i64, i64); 6] = [(2, 3), (2, -3), (2, -2), (3, 6), (4, 6), (2, 4)];

fn group() -> impl Strategy<Value = BsPresentation> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|(n, m)| BsPresentation::new(n, m).unwrap())
}

fn word(max_b: usize, max_a: i64) -> impl Strategy<Value = GroupWord> {
    (
        -max_a..=max_a,
        prop::collection::vec((prop::bool::ANY, -max_a..=max_a), 0..=max_b),
    )
        .prop_map(|(head, rest)| {
            let mut w = GroupWord::a(head);
            for (up, x) in rest {
                w.push(Letter::B, BigInt::from(if up { 1 } else { -1 }));
                w.push(Letter::A, BigInt::from(x));
            }
            w
        })
}

fn profile_tuple(x: &NormalForm, g: &BsPresentation) -> (BigInt, BigInt, BigInt) {
    let p = coset_profile(x, g);
    (p.l, p.r, p.signed_l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_survives_relator_insertion(g in group(), w in word(5, 40), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = relator_conjugate(&mut rng, &g, 2, 6);
        let w2 = insert_at_random(&mut rng, &w, &r);
        prop_assert_eq!(normalize(&w, &g), normalize(&w2, &g));
    }

    #[test]
    fn normalize_is_idempotent(g in group(), w in word(6, 1000)) {
        let x = normalize(&w, &g);
        prop_assert_eq!(normalize(&x.to_word(), &g), x);
    }

    #[test]
    fn normal_form_agrees_with_pinch_oracle(g in group(), w in word(5, 60), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = normalize(&w, &g);
        prop_assert_eq!(oracle::b_length(&w, g.n(), g.m(), &mut rng), BigInt::from(x.b_length()));
        let diff = w.concat(&x.to_word().inverse());
        prop_assert!(oracle::is_identity(&diff, g.n(), g.m(), &mut rng));
    }

    #[test]
    fn inversion_swaps_l_and_r(g in group(), w in word(6, 100)) {
        let x = normalize(&w, &g);
        let (p, q) = (coset_profile(&x, &g), coset_profile(&x.inverse(&g), &g));
        prop_assert_eq!(&p.l, &q.r);
        prop_assert_eq!(&p.r, &q.l);
    }

    #[test]
    fn profile_is_constant_on_double_cosets(g in group(), w in word(5, 50), i in -30i64..30, j in -30i64..30) {
        let x = normalize(&w, &g);
        let y = normalize(&GroupWord::a(i).concat(&w).concat(&GroupWord::a(j)), &g);
        prop_assert_eq!(profile_tuple(&x, &g), profile_tuple(&y, &g));
        prop_assert_eq!(double_coset(&x, &g), double_coset(&y, &g));
    }

    #[test]
    fn quasi_centralizer_is_a_normal_subgroup(g in group(), u in word(4, 12), v in word(4, 12), h in word(3, 12)) {
        let (x, y, h) = (normalize(&u, &g), normalize(&v, &g), normalize(&h, &g));
        if qc_member(&x, &g) {
            prop_assert!(qc_member(&x.inverse(&g), &g));
            prop_assert!(qc_member(&h.conjugate(&x, &g), &g));
            if qc_member(&y, &g) {
                prop_assert!(qc_member(&x.mul(&y, &g), &g));
            }
        }
    }

    #[test]
    fn amalgam_embedding_is_injective(
        (n, m) in prop::sample::select(vec![(2i64, 3i64), (2, -3), (3, 6), (4, -6), (2, 4)]),
        head in -20i64..20,
        body in prop::collection::vec((-20i64..20, -20i64..20), 0..4),
    ) {
        let g = BsPresentation::new(n, m).unwrap();
        let mut w = vec![(AmalgamLetter::C, BigInt::from(head))];
        for (d, c) in &body {
            let d = if d % m == 0 { d + 1 } else { *d };
            let c = if c % n == 0 { c + 1 } else { *c };
            w.push((AmalgamLetter::D, BigInt::from(d)));
            w.push((AmalgamLetter::C, BigInt::from(c)));
        }
        let image = normalize(&amalgam_embed(&w, &g).unwrap(), &g);
        prop_assert_eq!(image.is_identity(), body.is_empty() && head == 0);
    }

    #[test]
    fn source_and_range_ignore_the_edge_representative(g in group(), w in word(4, 30), z in -5i64..5) {
        let x = normalize(&w, &g);
        let y = normalize(&w.concat(&GroupWord::a(g.n() * z)), &g);
        let (e, f) = (edge_of(&x, &g), edge_of(&y, &g));
        prop_assert_eq!(&e, &f);
        prop_assert_eq!(source(&e, &g), vertex_of(&x, &g));
        prop_assert_eq!(range(&e, &g), vertex_of(&normalize(&w.concat(&GroupWord::b(-1)), &g), &g));
        prop_assert_eq!(source(&e, &g).distance(&range(&e, &g), &g), 1);
    }

    #[test]
    fn tree_action_is_equivariant(g in group(), w in word(4, 20), h in word(3, 20), v in word(3, 10)) {
        let (x, h, v) = (normalize(&w, &g), normalize(&h, &g), vertex_of(&normalize(&v, &g), &g));
        let y = h.inverse(&g).conjugate(&x, &g);
        prop_assert_eq!(fixes_vertex(&x, &v, &g), fixes_vertex(&y, &v.translate(&h, &g), &g));
        match (classify(&x, &g), classify(&y, &g)) {
            (Classification::Elliptic { .. }, Classification::Elliptic { .. }) => {}
            (
                Classification::Hyperbolic { translation_length: a },
                Classification::Hyperbolic { translation_length: b },
            ) => prop_assert_eq!(a, b),
            (c, d) => prop_assert!(false, "{} vs {}", c, d),
        }
    }

    #[test]
    fn self_inverse_dimensions_balance(w in word(3, 15), neg in prop::bool::ANY) {
        let g = BsPresentation::new(2, if neg { -3 } else { 3 }).unwrap();
        let x = normalize(&w, &g);
        let p = coset_profile(&x, &g);
        let d = decompose_self_inverse(&x, &g).unwrap();
        prop_assert_eq!(d.left_dim(), &p.l * &p.r);
        prop_assert_eq!(d.right_dim(), &p.l * &p.r);
        prop_assert!(d.is_multiplicity_free());
    }

    #[test]
    fn exchange_partners_solve_the_relation(w in word(3, 10), p in 0i64..36) {
        let g = BsPresentation::new(2, 3).unwrap();
        let x = normalize(&w, &g);
        let omega = RootOfUnity::new(p, 36).unwrap();
        let prof = coset_profile(&x, &g);
        let mus = exchange_partners(&omega, &x, &g).unwrap();
        for mu in &mus {
            prop_assert_eq!(mu.pow(&prof.signed_l), omega.pow(&prof.r));
            prop_assert!(omega_member(mu, &g).unwrap());
        }
    }

    #[test]
    fn root_group_is_closed(g in group(), a in 0u32..4, b in 0u32..4, p in 0i64..50, q in 0i64..50) {
        let den = g.k() * g.n0().abs().pow(a) * g.m0().abs().pow(b);
        let w = RootOfUnity::new(p, den).unwrap();
        let u = RootOfUnity::new(q, den * g.n0().abs()).unwrap();
        prop_assert!(omega_member(&w, &g).unwrap());
        prop_assert!(omega_member(&u, &g).unwrap());
        prop_assert!(omega_member(&w.mul(&u), &g).unwrap());
        prop_assert!(omega_member(&w.inverse(), &g).unwrap());
    }

    #[test]
    fn isomorphism_is_an_equivalence(
        a in (-6i64..=6, -6i64..=6),
        b in (-6i64..=6, -6i64..=6),
        c in (-6i64..=6, -6i64..=6),
    ) {
        prop_assume!(a.0 != 0 && a.1 != 0 && b.0 != 0 && b.1 != 0 && c.0 != 0 && c.1 != 0);
        let iso = |x: (i64, i64), y: (i64, i64)| is_isomorphic(x.0, x.1, y.0, y.1).unwrap();
        prop_assert!(iso(a, a));
        prop_assert_eq!(iso(a, b), iso(b, a));
        if iso(a, b) && iso(b, c) {
            prop_assert!(iso(a, c));
        }
        let ca = canonicalize(a.0, a.1).unwrap();
        prop_assert_eq!(canonicalize(ca.0, ca.1).unwrap(), ca);
        prop_assert!(iso(a, ca));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_associative(g in group(), u in word(2, 4), v in word(2, 4), w in word(1, 4)) {
        let t = |w: &GroupWord| HeckeElement::basis(double_coset(&normalize(w, &g), &g));
        let (x, y, z) = (t(&u), t(&v), t(&w));
        let left = hecke_convolve(&hecke_convolve(&x, &y, &g), &z, &g);
        let right = hecke_convolve(&x, &hecke_convolve(&y, &z, &g), &g);
        prop_assert_eq!(left, right);
    }
}

#[test]
fn parameters_are_recovered_from_short_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=6i64 {
        for abs_m in n..=6 {
            for m in [abs_m, -abs_m] {
                let g = BsPresentation::new(n, m).unwrap();
                let mut sample = Vec::new();
                for text in ["b", "b^-1", "a b", "b a b^-1", "b^2", "b^-1 a b^2"] {
                    let x = normalize(&text.parse().unwrap(), &g);
                    let p = coset_profile(&x, &g);
                    sample.push((p.l, p.r));
                }
                for _ in 0..30 {
                    let x = normalize(&bsrig_core::sample::random_word(&mut rng, 3, 10), &g);
                    let p = coset_profile(&x, &g);
                    sample.push((p.l, p.r));
                }
                let got = recover_parameters(&sample).unwrap();
                assert_eq!(got, (BigInt::from(n), BigInt::from(abs_m)), "BS({n},{m})");
            }
        }
    }
}

#[test]
fn contragredient_swaps_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (n, m) in GROUPS {
        let g = BsPresentation::new(n, m).unwrap();
        for _ in 0..50 {
            let x = normalize(&bsrig_core::sample::random_word(&mut rng, 5, 30), &g);
            let d = double_coset(&x, &g);
            let e = double_coset(&x.inverse(&g), &g);
            assert_eq!(d.profile().l, e.profile().r);
            assert_eq!(d.profile().r, e.profile().l);
        }
    }
}

#[test]
fn profile_ratio_is_a_power_of_n_over_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (n, m) in GROUPS {
        let g = BsPresentation::new(n, m).unwrap();
        let rho = BigRational::new(BigInt::from(n), BigInt::from(m.abs()));
        for _ in 0..50 {
            let x = normalize(&bsrig_core::sample::random_word(&mut rng, 5, 30), &g);
            let p = coset_profile(&x, &g);
            let mut q = BigRational::new(p.l.clone(), p.r.clone());
            let mut steps = 0;
            while q != BigRational::from_integer(1.into()) && steps < 10 {
                q = if q > BigRational::from_integer(1.into()) { q * &rho } else { q / &rho };
                steps += 1;
            }
            assert!(steps < 10 || rho == BigRational::from_integer(1.into()), "{x}: l/r = {}/{}", p.l, p.r);
            assert_eq!(q, BigRational::from_integer(1.into()), "{x}");
        }
    }
}

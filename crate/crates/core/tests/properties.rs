use casimir_core::algebra::{rat, Scalar};
use casimir_core::connection::{FormStyle, GlConnection, TorusPoint};
use casimir_core::glrep::GlnModule;
use casimir_core::qkz::{qybe_residual, unitarity_residual};
use casimir_core::rootsys::{eta_identity_residual, RootSystem, RootType};
use casimir_core::tits::{affine_tits_model, CorootSection};
use casimir_core::yangian::EvalModule;
use casimir_core::{ExactMatrix, LoopMatrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(p, q)| rat(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn matrix(dim: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(rational(), dim * dim).prop_map(move |xs| {
        ExactMatrix::from_rows(xs.chunks(dim).map(<[Rational]>::to_vec).collect()).unwrap()
    })
}

fn regular_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(nonzero_rational(), n).prop_filter("distinct coordinates", |z| {
        (0..z.len()).all(|i| (i + 1..z.len()).all(|j| z[i] != z[j]))
    })
}

fn plus_minus_one(u: &Rational) -> bool {
    *u == Rational::one() || -u == Rational::one()
}

fn root_type() -> impl Strategy<Value = RootType> {
    prop_oneof![
        Just(RootType::A(2)),
        Just(RootType::B(2)),
        Just(RootType::G2),
        Just(RootType::A(3)),
        Just(RootType::B(3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        prop_assert_eq!(a.kron(&b).matmul(&c.kron(&d)), a.matmul(&c).kron(&b.matmul(&d)));
    }

    #[test]
    fn disjoint_slots_commute(x in matrix(2), y in matrix(3)) {
        let dims = [2, 3];
        let xe = x.embed_factor(1, &dims).unwrap();
        let ye = y.embed_factor(2, &dims).unwrap();
        prop_assert!(xe.commutator(&ye).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(3)) {
        if let Some(inv) = a.inverse() {
            prop_assert!(a.matmul(&inv).is_identity());
            prop_assert!(inv.matmul(&a).is_identity());
        } else {
            prop_assert!(a.determinant().is_zero());
        }
    }

    #[test]
    fn gl_commutation_relations(i in 0usize..3, j in 0usize..3, k in 0usize..3, l in 0usize..3) {
        let m = GlnModule::new(3, 2);
        let lhs = m.e(i, j).commutator(m.e(k, l));
        let mut rhs = ExactMatrix::zeros(m.dim());
        if j == k {
            rhs = rhs.add_ref(m.e(i, l));
        }
        if l == i {
            rhs = rhs.sub_ref(m.e(k, j));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn r_matrix_unitarity(u in nonzero_rational().prop_filter("regular", |u| !plus_minus_one(u))) {
        prop_assert!(unitarity_residual(2, &u).unwrap().is_zero());
    }

    #[test]
    fn quantum_yang_baxter(u in nonzero_rational(), v in nonzero_rational()) {
        prop_assume!(!plus_minus_one(&u) && !plus_minus_one(&v));
        let w = &u + &v;
        prop_assume!(!w.is_zero() && !plus_minus_one(&w));
        prop_assert!(qybe_residual(2, &u, &v).unwrap().is_zero());
    }

    #[test]
    fn flatness_at_random_points(a in prop::collection::vec(rational(), 2), z in regular_point(2)) {
        let conn = GlConnection::new(EvalModule::vector_power(2, &a));
        let p = TorusPoint::new(z).unwrap();
        for style in [FormStyle::Tau, FormStyle::Delta, FormStyle::RationalZ] {
            prop_assert!(conn.flatness_residual(style, &p).unwrap().is_zero());
        }
        prop_assert!(conn.form_agreement(&p).unwrap().is_zero());
    }

    #[test]
    fn inversion_set_size_is_length(ty in root_type(), pick in any::<prop::sample::Index>()) {
        let rs = RootSystem::new(ty).unwrap();
        let w = &rs.weyl_group()[pick.index(rs.weyl_group().len())];
        prop_assert_eq!(rs.inversion_set(w).len(), w.length());
        let winv = rs.inverse(w);
        prop_assert!(rs.compose(w, winv).is_identity());
        for b in rs.roots() {
            prop_assert!(rs.is_root(&w.apply(&b)));
        }
    }

    #[test]
    fn eta_identity_exact(
        x in prop::collection::vec(nonzero_rational(), 2),
        u in prop::collection::vec(rational(), 2),
        v in prop::collection::vec(rational(), 2),
    ) {
        // x_i = e^{α_i}; a = α1, b = α2 must avoid e^{a}, e^{b}, e^{a+b} = 1.
        let one = Rational::one();
        prop_assume!(x[0] != one && x[1] != one && &x[0] * &x[1] != one);
        prop_assert!(eta_identity_residual(&[1, 0], &[0, 1], &x, &u, &v).unwrap().is_zero());
    }

    #[test]
    fn coroot_section_is_multiplicative(
        c1 in prop::collection::vec(-3i64..=3, 2),
        c2 in prop::collection::vec(-3i64..=3, 2),
    ) {
        let s = CorootSection::new(3).unwrap();
        let sum: Vec<i64> = c1.iter().zip(&c2).map(|(a, b)| a + b).collect();
        let lhs = s.section(&c1).unwrap().matmul(&s.section(&c2).unwrap());
        prop_assert_eq!(lhs, s.section(&sum).unwrap());
    }

    #[test]
    fn affine_words_invert(word in prop::collection::vec(0usize..3, 0..8)) {
        let model = affine_tits_model(3).unwrap();
        let g: LoopMatrix = model.word(&word);
        let inv = g.loop_inverse().expect("loop group element");
        prop_assert!(g.matmul(&inv).is_identity());
        prop_assert_eq!(g.loop_determinant(), casimir_core::LaurentScalar::one());
    }
}

use vsa_core::fixtures;
use vsa_core::hopf::{Action, CocommutativityVerdict};
use vsa_core::injectivity::Status;
use vsa_core::lie::heisenberg_double;
use vsa_core::{Algebra, Parity, Scalar, StateVector, Weight};

fn alg(name: &str) -> Algebra {
    fixtures::algebra(name).unwrap()
}

fn state(a: &Algebra, src: &str) -> StateVector {
    a.parse_state(src).unwrap()
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|x| Scalar::from_int(*x)).collect()).collect()
}

#[test]
fn double_of_an_even_line() {
    let d = heisenberg_double(&[("h".into(), Parity::Even)]);
    assert_eq!(d.gram(), ints(&[&[0, 1], &[1, 0]]));
    assert!(d.validate().unwrap().is_empty());
}

#[test]
fn double_of_an_odd_line() {
    let d = heisenberg_double(&[("f".into(), Parity::Odd)]);
    assert_eq!(d.gram(), ints(&[&[0, 1], &[-1, 0]]));
    assert!(d.validate().unwrap().is_empty());
}

#[test]
fn ns_has_no_weight_one_half_state() {
    let ns = alg("ns-1/2");
    assert!(ns.enumerate_basis(Weight::new(1, 2)).unwrap().is_empty());
    let b = ns.enumerate_basis(Weight::new(3, 2)).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(StateVector::basis(b[0].clone()), state(&ns, "G(-3/2).1"));
    assert_eq!(ns.parity_of(&b[0]), Parity::Odd);
}

#[test]
fn tensor_dimension_at_seven_halves() {
    // heisenberg 1,1,2,3 at weights 0..3 against ns 2,1,1,0 at 7/2,5/2,3/2,1/2
    let t = alg("tensor(heisenberg-k1,ns-1/2)");
    assert_eq!(t.enumerate_basis(Weight::new(7, 2)).unwrap().len(), 2 + 1 + 2);
}

#[test]
fn vacuum_is_the_identity_field() {
    for name in fixtures::ALGEBRA_NAMES {
        let a = alg(name);
        for m in a.basis_up_to(Weight::int(2)) {
            let v = StateVector::basis(m);
            let f = a.vertex_operator(&StateVector::vacuum(), &v, Weight::int(3));
            for (s, c) in &f.coeffs {
                assert_eq!(*s, -1, "{name}");
                assert_eq!(c, &v);
            }
        }
    }
}

#[test]
fn creation_field_is_the_exponential_of_translation() {
    for name in ["heisenberg-k1", "affine-sl2", "ns-1/2", "freediff-(1|1)"] {
        let a = alg(name);
        for m in a.basis_up_to(Weight::int(2)) {
            let v = StateVector::basis(m);
            let f = a.vertex_operator(&v, &StateVector::vacuum(), Weight::int(5));
            let mut d = v.clone();
            for k in 0..3u32 {
                let got = f.coeffs.get(&(-1 - k as i64)).cloned().unwrap_or_default();
                assert_eq!(got, d.scaled(&Scalar::inv_factorial(k)), "{name}");
                d = a.translation(&d);
            }
            assert!(f.coeffs.keys().all(|s| *s < 0));
        }
    }
}

#[test]
fn translation_of_a_free_boson() {
    let h = alg("heisenberg-k1");
    assert_eq!(h.translation(&state(&h, "x(-1).1")), state(&h, "x(-2).1"));
    assert_eq!(
        h.translation(&state(&h, "x(-2).1")),
        state(&h, "2*x(-3).1")
    );
    let f = alg("freediff-(1|1)");
    assert_eq!(f.translation(&state(&f, "h1(-1).1")), state(&f, "h1(-2).1"));
    assert!(h.translation(&StateVector::vacuum()).is_zero());
}

#[test]
fn filtration_levels() {
    let h = alg("heisenberg-k1");
    assert_eq!(h.filtration_level(&StateVector::vacuum()).unwrap(), Weight::ZERO);
    assert_eq!(h.filtration_level(&state(&h, "x(-1).1")).unwrap(), Weight::int(1));
    assert_eq!(h.filtration_level(&state(&h, "x(-4).1")).unwrap(), Weight::int(1));
    assert_eq!(h.filtration_level(&state(&h, "x(-3)x(-1).1")).unwrap(), Weight::int(2));
    assert_eq!(
        h.filtration_level(&state(&h, "x(-3).1 + x(-2)x(-1).1")).unwrap(),
        Weight::int(2)
    );
}

#[test]
fn nonnegative_products_vanish_in_the_associated_graded() {
    for name in ["heisenberg-k1", "affine-sl2", "ns-1/2", "abelian-odd-pair"] {
        let a = alg(name);
        let basis = a.basis_up_to(Weight::int(2));
        for u in &basis {
            for v in &basis {
                let gu = a.gr_class(&StateVector::basis(u.clone()), a.level_of(u));
                let gv = a.gr_class(&StateVector::basis(v.clone()), a.level_of(v));
                for n in 0..3 {
                    assert!(a.gr_product(&gu, n, &gv).rep.is_zero(), "{name}");
                }
            }
        }
        assert!(a.check_gr_commutative(Weight::int(3)).is_empty(), "{name}");
    }
}

fn generator_space(a: &Algebra) -> Vec<(String, Parity, Weight)> {
    a.generators().iter().map(|g| (g.id.clone(), g.parity, g.degree)).collect()
}

#[test]
fn affine_pbw_certificate() {
    let a = alg("affine-sl2");
    let c = a.pbw_certificate(&generator_space(&a), Weight::int(4)).unwrap();
    assert!(c.passed && c.dims.passed && c.products.passed && c.derivation.passed);
}

#[test]
fn ns_pbw_certificate() {
    let a = alg("ns-1/2");
    let c = a.pbw_certificate(&generator_space(&a), Weight::int(5)).unwrap();
    assert!(c.passed && c.dims.passed && c.products.passed && c.derivation.passed);
}

#[test]
fn affine_and_ns_are_injective() {
    for (name, n) in [
        ("heisenberg-k1", Weight::int(3)),
        ("affine-sl2", Weight::int(2)),
        ("ns-1/2", Weight::int(3)),
        ("heisenberg-double-(1|1)", Weight::int(1)),
    ] {
        let c = alg(name).certify(n, None).unwrap();
        assert_eq!(c.status, Status::Injective, "{name}");
        assert_eq!(c.rank, c.domain_dim, "{name}");
        assert!(c.kernel_candidates.is_empty());
    }
}

#[test]
fn parity_involution_on_ns_is_consistent_with_a_group_algebra() {
    let a = Action::new(&fixtures::action_spec("sigma-ns-1/2").unwrap()).unwrap();
    assert!(a.verify(a.cutoff).unwrap().is_empty());
    assert_eq!(
        a.cocommutativity_from_action(a.cutoff).unwrap(),
        CocommutativityVerdict::ConsistentWithGroupAlgebra
    );
    let fixed: Vec<usize> = (0..=6)
        .map(|k| a.fixed_points(Weight::new(k, 2)).unwrap().len())
        .collect();
    assert_eq!(fixed, vec![1, 0, 0, 0, 1, 0, 1]);
}

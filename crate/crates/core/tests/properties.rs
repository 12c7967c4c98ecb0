use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;
use vsa_core::filtration::{convolve, gr_table};
use vsa_core::fixtures;
use vsa_core::hopf::{group_algebra, Action, ActionSource, IdealMode};
use vsa_core::lie::{heisenberg_double, Combination, LieSuperalgebraSpec};
use vsa_core::linalg::{self, dense, SparseMatrix};
use vsa_core::{Algebra, Monomial, Parity, Scalar, StateVector, Weight};

fn algebra(name: &str) -> &'static Algebra {
    static CACHE: OnceLock<BTreeMap<&'static str, Algebra>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        fixtures::ALGEBRA_NAMES
            .iter()
            .chain(["heisenberg-double-(1|0)"].iter())
            .map(|n| (*n, fixtures::algebra(n).unwrap()))
            .collect()
    });
    &all[name]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-20i64..20, 1i64..20).prop_map(|(n, d)| Scalar::new(n, d)),
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Scalar::new(n, d)),
    ]
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &-&a).is_zero());
        match a.inv() {
            Some(i) => prop_assert!((&a * &i).is_one()),
            None => prop_assert!(a.is_zero()),
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }
}

fn sparse_matrix(max_rows: usize, max_cols: usize, per_row: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec((0..c, -3i64..=3), 0..=per_row), r).prop_map(
            move |rows| {
                let mut m = SparseMatrix::new(r, c);
                for (i, row) in rows.into_iter().enumerate() {
                    for (j, x) in row {
                        m.set(i, j, Scalar::from_int(x));
                    }
                }
                m
            },
        )
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_column_count(m in sparse_matrix(12, 12, 6)) {
        let kernel = linalg::kernel_basis(&m);
        prop_assert_eq!(linalg::rank(&m) + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(dense::rank(&m.to_dense()), linalg::rank(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn rank_equals_rank_of_transpose(m in sparse_matrix(200, 200, 3)) {
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }
}

fn superspace(p: usize, q: usize) -> Vec<(String, Parity)> {
    (0..p)
        .map(|i| (format!("a{i}"), Parity::Even))
        .chain((0..q).map(|i| (format!("b{i}"), Parity::Odd)))
        .collect()
}

proptest! {
    #[test]
    fn doubles_are_valid_with_isotropic_copy(p in 0usize..4, q in 0usize..4) {
        prop_assume!(p + q > 0);
        let d = heisenberg_double(&superspace(p, q));
        prop_assert!(d.validate().unwrap().is_empty());
        let gram = SparseMatrix::from_dense(&d.gram());
        prop_assert_eq!(linalg::rank(&gram), 2 * (p + q));
        for i in 0..p + q {
            for j in 0..p + q {
                prop_assert!(d.form(i, j).is_zero());
            }
        }
    }
}

/// Negates one stored bracket or form entry.
fn mutate(lie: &LieSuperalgebraSpec, pick: Index) -> LieSuperalgebraSpec {
    let brackets: Vec<((usize, usize), Combination)> =
        lie.stored_brackets().map(|(k, v)| (*k, v.clone())).collect();
    let form: Vec<((usize, usize), Scalar)> = lie.stored_form().map(|(k, v)| (*k, v.clone())).collect();
    let i = pick.index(brackets.len() + form.len());
    let mut out = lie.clone();
    if i < brackets.len() {
        let ((a, b), v) = &brackets[i];
        let neg = v.iter().map(|(k, c)| (*k, -c)).collect();
        out.set_bracket(*a, *b, neg).unwrap();
    } else {
        let ((a, b), v) = &form[i - brackets.len()];
        out.set_form(*a, *b, -v).unwrap();
    }
    out
}

proptest! {
    #[test]
    fn single_sign_errors_are_reported(which in 0usize..3, pick in any::<Index>()) {
        let lie = match which {
            0 => fixtures::sl2_lie(),
            1 => heisenberg_double(&superspace(0, 1)),
            _ => heisenberg_double(&superspace(2, 1)),
        };
        prop_assert!(lie.validate().unwrap().is_empty());
        prop_assert!(!mutate(&lie, pick).validate().unwrap().is_empty());
    }
}

const SMALL: [&str; 6] = [
    "heisenberg-k1",
    "abelian-odd-pair",
    "affine-sl2",
    "ns-1/2",
    "freediff-(1|1)",
    "tensor(heisenberg-k1,freediff-(1|1))",
];

fn pick_state(alg: &Algebra, up_to: Weight, i: Index) -> Monomial {
    let b = alg.basis_up_to(up_to);
    b[i.index(b.len())].clone()
}

proptest! {
    #[test]
    fn products_respect_grading(
        which in 0..SMALL.len(),
        i in any::<Index>(),
        j in any::<Index>(),
        s in -4i64..4,
    ) {
        let alg = algebra(SMALL[which]);
        let u = pick_state(alg, Weight::int(2), i);
        let v = pick_state(alg, Weight::int(2), j);
        let p = alg.nth_product(&StateVector::basis(u.clone()), s, &StateVector::basis(v.clone()));
        let w = u.weight() + v.weight() - s - 1;
        if w.is_negative() {
            prop_assert!(p.is_zero());
        }
        let parity = alg.parity_of(&u) + alg.parity_of(&v);
        for (m, _) in p.iter() {
            prop_assert_eq!(m.weight(), w);
            prop_assert_eq!(alg.parity_of(m), parity);
            prop_assert!(alg.is_canonical(m));
        }
    }

    #[test]
    fn vacuum_axioms(which in 0..SMALL.len(), i in any::<Index>(), n in -4i64..4) {
        let alg = algebra(SMALL[which]);
        let v = StateVector::basis(pick_state(alg, Weight::int(3), i));
        let vac = StateVector::vacuum();
        let left = alg.nth_product(&vac, n, &v);
        prop_assert_eq!(left, if n == -1 { v.clone() } else { StateVector::zero() });
        let right = alg.nth_product(&v, n, &vac);
        if n >= 0 {
            prop_assert!(right.is_zero());
        }
        if n == -1 {
            prop_assert_eq!(right.clone(), v.clone());
        }
        if n == -2 {
            prop_assert_eq!(right, alg.translation(&v));
        }
    }

    #[test]
    fn iterate_expansion_is_path_independent(
        which in 0usize..3,
        gen in any::<Index>(),
        extra in 0i64..2,
        i in any::<Index>(),
        j in any::<Index>(),
        n in -3i64..3,
    ) {
        let alg = algebra(["affine-sl2", "ns-1/2", "abelian-odd-pair"][which]);
        let a = gen.index(alg.generators().len()) as u32;
        let depth = alg.generators()[a as usize].degree + extra;
        let m = Weight::ZERO - depth;
        let rest = StateVector::basis(pick_state(alg, Weight::new(3, 2), i));
        let v = StateVector::basis(pick_state(alg, Weight::new(3, 2), j));
        let u = alg.apply_generator_mode(a, m, &rest).unwrap();
        let direct = alg.nth_product(&u, n, &v);
        let via = alg.nth_product_via(a, m, &rest, n, &v).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn filtration_is_multiplicative(
        which in 0..SMALL.len(),
        i in any::<Index>(),
        j in any::<Index>(),
        n in -4i64..3,
    ) {
        let alg = algebra(SMALL[which]);
        let u = pick_state(alg, Weight::int(2), i);
        let v = pick_state(alg, Weight::int(2), j);
        let bound = alg.level_of(&u) + alg.level_of(&v);
        let p = alg.nth_product(&StateVector::basis(u.clone()), n, &StateVector::basis(v.clone()));
        if !p.is_zero() {
            let level = alg.filtration_level(&p).unwrap();
            prop_assert!(level <= bound);
            if n >= 0 {
                prop_assert!(level < bound);
            }
        }
        let du = alg.translation(&StateVector::basis(u.clone()));
        if !du.is_zero() {
            prop_assert!(alg.filtration_level(&du).unwrap() <= alg.level_of(&u));
        }
    }
}

#[test]
fn tensor_levels_and_dimensions_add() {
    let t = algebra("tensor(heisenberg-k1,ns-1/2)");
    let a = algebra("heisenberg-k1");
    let b = algebra("ns-1/2");
    for u in a.basis_up_to(Weight::int(2)) {
        for v in b.basis_up_to(Weight::int(2)) {
            let s = t
                .tensor_state(&StateVector::basis(u.clone()), &StateVector::basis(v.clone()))
                .unwrap();
            assert_eq!(t.filtration_level(&s).unwrap(), a.level_of(&u) + b.level_of(&v));
        }
    }
    let up_to = Weight::int(4);
    let conv = |x: &Algebra, y: &Algebra| {
        let mut out: BTreeMap<Weight, usize> = BTreeMap::new();
        for dx in x.graded_dimension(up_to) {
            for dy in y.graded_dimension(up_to) {
                if dx.weight + dy.weight <= up_to {
                    *out.entry(dx.weight + dy.weight).or_default() += dx.dim * dy.dim;
                }
            }
        }
        out
    };
    for (name, left, right) in [
        ("tensor(heisenberg-k1,ns-1/2)", "heisenberg-k1", "ns-1/2"),
        ("tensor(heisenberg-k1,freediff-(1|1))", "heisenberg-k1", "freediff-(1|1)"),
    ] {
        let t = algebra(name);
        let (l, r) = (algebra(left), algebra(right));
        let dims: BTreeMap<Weight, usize> = t.graded_dimension(up_to).into_iter().map(|d| (d.weight, d.dim)).collect();
        assert_eq!(dims, conv(l, r), "{name}");
        assert_eq!(
            gr_table(&t.gr_dimensions(up_to)),
            convolve(&gr_table(&l.gr_dimensions(up_to)), &gr_table(&r.gr_dimensions(up_to)), up_to),
            "{name}"
        );
    }
}

/// Series coefficients in `s = q^{1/T}` of a product of factors
/// `(1 - s^e)^{-1}` (bosonic) and `(1 + s^e)` (fermionic).
fn euler_product(top: usize, bosons: &[usize], fermions: &[usize]) -> Vec<u64> {
    let mut c = vec![0u64; top + 1];
    c[0] = 1;
    for &e in bosons {
        for k in e..=top {
            c[k] += c[k - e];
        }
    }
    for &e in fermions {
        for k in (e..=top).rev() {
            c[k] += c[k - e];
        }
    }
    c
}

/// Mode exponents of generators of the given degrees (in units of `1/T`).
fn modes(degrees: &[usize], t: usize, top: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &d in degrees {
        let mut e = d;
        while e <= top {
            out.push(e);
            e += t;
        }
    }
    out
}

#[test]
fn graded_dimensions_match_euler_products() {
    let top = 8;
    let cases: [(&str, usize, Vec<usize>, Vec<usize>); 8] = [
        ("heisenberg-k1", 1, vec![1], vec![]),
        ("abelian-odd-pair", 1, vec![], vec![1, 1]),
        ("heisenberg-double-(1|1)", 1, vec![1, 1], vec![1, 1]),
        ("affine-sl2", 1, vec![1, 1, 1], vec![]),
        ("ns-1/2", 2, vec![4], vec![3]),
        ("freediff-(1|1)", 1, vec![1], vec![1]),
        ("tensor(heisenberg-k1,freediff-(1|1))", 1, vec![1, 1], vec![1]),
        ("tensor(heisenberg-k1,ns-1/2)", 2, vec![2, 4], vec![3]),
    ];
    for (name, t, bosons, fermions) in cases {
        let alg = fixtures::algebra(name).unwrap();
        assert_eq!(alg.t() as usize, t, "{name}");
        let expect = euler_product(top * t, &modes(&bosons, t, top * t), &modes(&fermions, t, top * t));
        let got: Vec<u64> = alg
            .graded_dimension(Weight::int(top as i64))
            .iter()
            .map(|d| d.dim as u64)
            .collect();
        assert_eq!(got, expect, "{name}");
        for m in alg.basis_up_to(Weight::int(4)) {
            assert!(alg.is_canonical(&m));
            let again = alg.nth_product(&StateVector::basis(m.clone()), -1, &StateVector::vacuum());
            assert_eq!(again, StateVector::basis(m), "{name}");
        }
    }
}

#[test]
fn injectivity_is_sound_and_monotone() {
    for (name, n) in [
        ("heisenberg-k1", Weight::int(2)),
        ("freediff-(1|1)", Weight::int(2)),
        ("ns-1/2", Weight::new(5, 2)),
        ("abelian-odd-pair", Weight::int(1)),
        ("affine-sl2", Weight::int(1)),
    ] {
        let alg = fixtures::algebra(name).unwrap();
        let cert = alg.certify(n, None).unwrap();
        assert_eq!(cert.status, vsa_core::injectivity::Status::Injective, "{name}");
        let m = alg.build_yz_matrix(n, cert.window_extra);
        assert!(linalg::kernel_basis(&m.matrix).is_empty(), "{name}");
        let mut last = 0;
        for extra in 0..=cert.max_window {
            let r = linalg::rank(&alg.build_yz_matrix(n, extra).matrix);
            assert!(r >= last, "{name}");
            last = r;
        }
    }
}

#[test]
fn injective_associated_graded_lifts() {
    for (name, n) in [
        ("heisenberg-k1", Weight::int(2)),
        ("freediff-(1|1)", Weight::int(1)),
        ("ns-1/2", Weight::int(2)),
        ("affine-sl2", Weight::int(1)),
        ("tensor(heisenberg-k1,freediff-(1|1))", Weight::int(1)),
    ] {
        let alg = fixtures::algebra(name).unwrap();
        let mut full_somewhere = false;
        for extra in 0..=vsa_core::injectivity::default_max_window(&alg, n) {
            let gr = alg.build_gr_yz_matrix(n, extra);
            let cols = gr.matrix.cols();
            if linalg::rank(&gr.matrix) == cols {
                full_somewhere = true;
                assert_eq!(linalg::rank(&alg.build_yz_matrix(n, extra).matrix), cols, "{name}");
            }
        }
        assert!(full_somewhere, "{name}");
    }
}

#[test]
fn pbw_fixtures_certify_up_to_their_bounds() {
    for (name, top) in [("heisenberg-k1", 2), ("freediff-(1|1)", 2), ("ns-1/2", 5), ("abelian-odd-pair", 2)] {
        let alg = fixtures::algebra(name).unwrap();
        for k in 0..=top {
            let n = if name.starts_with("ns") { Weight::new(k, 2) } else { Weight::int(k) };
            let c = alg.certify(n, None).unwrap();
            assert_eq!(c.status, vsa_core::injectivity::Status::Injective, "{name} at {n}");
        }
    }
}

proptest! {
    #[test]
    fn group_algebras_are_cocommutative_hopf_algebras(a in 1usize..5, b in 1usize..4, perm in Just(()).prop_perturb(|_, mut rng| {
        let mut p: Vec<usize> = (0..6).collect();
        for i in (1..p.len()).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            p.swap(i, j);
        }
        p
    })) {
        let n = a * b;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| ((x / b + y / b) % a) * b + (x % b + y % b) % b).collect())
            .collect();
        let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let h = group_algebra("product", &refs, &table).unwrap();
        prop_assert!(h.verify().unwrap().is_empty());
        prop_assert!(h.is_cocommutative());
        // S3 with relabeled elements
        let s3 = fixtures::hopf("hopf-s3").unwrap();
        let mut t = vec![vec![0; 6]; 6];
        for x in 0..6 {
            for y in 0..6 {
                let prod = (0..6).find(|&k| s3.mult[x][y][k].is_one()).unwrap();
                t[perm[x]][perm[y]] = perm[prod];
            }
        }
        let names = ["p0", "p1", "p2", "p3", "p4", "p5"];
        let h = group_algebra("s3", &names, &t).unwrap();
        prop_assert!(h.verify().unwrap().is_empty());
        prop_assert!(h.is_cocommutative());
    }
}

fn actions() -> Vec<Action> {
    fixtures::ACTION_NAMES
        .iter()
        .map(|n| Action::new(&fixtures::action_spec(n).unwrap()).unwrap())
        .collect()
}

#[test]
fn action_kernels_are_ideals_and_fixed_points_are_fixed() {
    for a in actions() {
        assert!(a.verify(a.cutoff).unwrap().is_empty());
        let k = a.kernel(a.cutoff).unwrap();
        let group = a.hopf.has_grouplike_basis();
        for mode in [IdealMode::Bialgebra, IdealMode::Hopf] {
            for v in a.hopf.verify_ideal(&k, mode).unwrap() {
                // a truncated module only guarantees a two-sided ideal
                assert!(!group && !v.axiom.ends_with("-ideal"), "{}: {}", a.hopf.name, v.axiom);
            }
        }
        for w in a.weights().collect::<Vec<_>>() {
            for v in a.fixed_points(w).unwrap() {
                for i in 0..a.hopf.dim() {
                    assert_eq!(a.act(i, &v).unwrap(), v.scaled(&a.hopf.counit[i]));
                }
            }
        }
    }
}

#[test]
fn parity_automorphism_is_central() {
    for name in fixtures::ACTION_NAMES {
        let spec = fixtures::action_spec(name).unwrap();
        if !matches!(spec.source, ActionSource::Automorphisms(_)) {
            continue;
        }
        let a = Action::new(&spec).unwrap();
        for w in a.weights().collect::<Vec<_>>() {
            let basis = a.basis_at(w);
            let mut sigma = dense::zeros(basis.len(), basis.len());
            for (i, m) in basis.iter().enumerate() {
                sigma[i][i] = if a.algebra.parity_of(m).is_odd() { -Scalar::one() } else { Scalar::one() };
            }
            for i in 0..a.hopf.dim() {
                let g = a.matrix(i, w);
                assert_eq!(dense::mul(&sigma, g), dense::mul(g, &sigma), "{name}");
            }
        }
    }
}

#[test]
fn tau_equivariance_matches_cocommutativity() {
    for a in actions() {
        let tau = a.check_tau_equivariance(a.cutoff.min(Weight::int(2))).unwrap();
        if a.hopf.is_cocommutative() {
            assert!(tau.is_empty(), "{}", a.hopf.name);
        }
    }
    let sw = Action::new(&fixtures::action_spec("sweedler-freediff-(2|0)").unwrap()).unwrap();
    assert!(!sw.check_tau_equivariance(sw.cutoff).unwrap().is_empty());
}

#[test]
fn automorphisms_respect_products() {
    for name in ["sigma-ns-1/2", "swap-freediff-(2|0)", "perm-s3-freediff-(3|0)"] {
        let a = Action::new(&fixtures::action_spec(name).unwrap()).unwrap();
        let up_to = Weight::int(2);
        let states: Vec<StateVector> = a.algebra.basis_up_to(up_to).into_iter().map(StateVector::basis).collect();
        for i in 0..a.hopf.dim() {
            assert_eq!(a.act(i, &StateVector::vacuum()).unwrap(), StateVector::vacuum());
            for u in &states {
                for v in &states {
                    let gu = a.act(i, u).unwrap();
                    let gv = a.act(i, v).unwrap();
                    for n in -2..2 {
                        let p = a.algebra.nth_product(u, n, v);
                        if a.algebra.homogeneous_weight(&p).is_some_and(|w| w > up_to) {
                            continue;
                        }
                        assert_eq!(a.act(i, &p).unwrap(), a.algebra.nth_product(&gu, n, &gv), "{name}");
                    }
                }
            }
        }
    }
}

//! Built-in algebras, Hopf algebras and actions, addressed by name.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, AlgebraSpec, FreeGenerator};
use crate::error::{Error, Result};
use crate::hopf::{group_algebra, ActionSource, ActionSpec, HopfSpec};
use crate::lie::{heisenberg_double, BasisElement, Combination, LieSuperalgebraSpec};
use crate::linalg::dense;
use crate::scalar::{Parity, Scalar, Weight};

/// Names accepted by [`algebra_spec`], with the parametrized families shown
/// by example.
pub const ALGEBRA_NAMES: &[&str] = &[
    "heisenberg-k1",
    "abelian-odd-pair",
    "heisenberg-double-(1|1)",
    "affine-sl2",
    "ns-1/2",
    "freediff-(1|1)",
    "tensor(heisenberg-k1,freediff-(1|1))",
    "tensor(heisenberg-k1,ns-1/2)",
];

/// The one-dimensional even Lie algebra with `(x, x) = 1`.
pub fn heisenberg_lie() -> LieSuperalgebraSpec {
    let mut lie = LieSuperalgebraSpec::new(
        "heisenberg",
        vec![BasisElement {
            id: "x".into(),
            parity: Parity::Even,
        }],
    );
    lie.set_form(0, 0, Scalar::one()).expect("in range");
    lie
}

/// `sl2` with basis `e, h, f` and the trace form `(e,f) = 1`, `(h,h) = 2`.
pub fn sl2_lie() -> LieSuperalgebraSpec {
    let even = |id: &str| BasisElement {
        id: id.into(),
        parity: Parity::Even,
    };
    let mut lie = LieSuperalgebraSpec::new("sl2", vec![even("e"), even("h"), even("f")]);
    let comb = |k: usize, c: i64| -> Combination { [(k, Scalar::from_int(c))].into_iter().collect() };
    lie.set_bracket(0, 1, comb(0, -2)).expect("in range");
    lie.set_bracket(0, 2, comb(1, 1)).expect("in range");
    lie.set_bracket(1, 2, comb(2, -2)).expect("in range");
    lie.set_form(0, 2, Scalar::one()).expect("in range");
    lie.set_form(2, 0, Scalar::one()).expect("in range");
    lie.set_form(1, 1, Scalar::from_int(2)).expect("in range");
    lie
}

fn superspace(p: usize, q: usize) -> Vec<(String, Parity)> {
    (1..=p)
        .map(|i| (format!("e{i}"), Parity::Even))
        .chain((1..=q).map(|i| (format!("f{i}"), Parity::Odd)))
        .collect()
}

fn parse_pq(s: &str) -> Option<(usize, usize)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (p, q) = inner.split_once('|')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

/// Splits `a,b` at the top-level comma.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

pub fn algebra_spec(name: &str) -> Result<AlgebraSpec> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let level_one = |lie| AlgebraSpec::Affine {
        lie,
        level: Scalar::one(),
    };
    match name {
        "heisenberg-k1" => return Ok(level_one(heisenberg_lie())),
        "abelian-odd-pair" => {
            let mut lie = heisenberg_double(&[("f".into(), Parity::Odd)]);
            lie.name = "abelian-odd-pair".into();
            return Ok(level_one(lie));
        }
        "affine-sl2" => return Ok(level_one(sl2_lie())),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("heisenberg-double-") {
        let (p, q) = parse_pq(rest).ok_or_else(unknown)?;
        return Ok(level_one(heisenberg_double(&superspace(p, q))));
    }
    if let Some(rest) = name.strip_prefix("ns-") {
        let c: Scalar = rest.parse().map_err(|_| unknown())?;
        return Ok(AlgebraSpec::NeveuSchwarz { c });
    }
    if let Some(rest) = name.strip_prefix("freediff-") {
        let (p, q) = parse_pq(rest).ok_or_else(unknown)?;
        let gens = (1..=p)
            .map(|i| (format!("h{i}"), Parity::Even))
            .chain((1..=q).map(|i| (format!("f{i}"), Parity::Odd)))
            .map(|(id, parity)| FreeGenerator {
                id,
                parity,
                degree: None,
            })
            .collect();
        return Ok(AlgebraSpec::FreeDifferential { generators: gens });
    }
    if let Some(rest) = name.strip_prefix("tensor(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = split_pair(rest).ok_or_else(unknown)?;
        return Ok(AlgebraSpec::tensor(
            algebra_spec(a.trim())?,
            algebra_spec(b.trim())?,
        ));
    }
    Err(unknown())
}

pub fn algebra(name: &str) -> Result<Algebra> {
    Algebra::new(&algebra_spec(name)?)
}

/// The affine presentation of a free algebra with degree-1 generators: zero
/// brackets and zero form. It defines the same vertex algebra and serves as
/// an independent check of the closed-form products.
pub fn abelian_affine_spec(free: &Algebra) -> AlgebraSpec {
    let basis = free
        .generators()
        .iter()
        .map(|g| BasisElement {
            id: g.id.clone(),
            parity: g.parity,
        })
        .collect();
    AlgebraSpec::Affine {
        lie: LieSuperalgebraSpec::new("abelian", basis),
        level: Scalar::zero(),
    }
}

pub const HOPF_NAMES: &[&str] = &[
    "hopf-z2",
    "hopf-z3",
    "hopf-z2z2",
    "hopf-s3",
    "hopf-sweedler",
    "hopf-fun-z3",
];

/// Permutations of `{0,1,2}` in the order `e, r, r2, s, sr, sr2`.
fn s3_elements() -> Vec<[usize; 3]> {
    let r = [1, 2, 0];
    let s = [1, 0, 2];
    let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let e = [0, 1, 2];
    let r2 = compose(r, r);
    vec![e, r, r2, s, compose(s, r), compose(s, r2)]
}

const S3_LABELS: [&str; 6] = ["e", "r", "r2", "s", "sr", "sr2"];

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn structure(n: usize) -> Vec<Vec<Vec<Scalar>>> {
    vec![vec![vec![Scalar::zero(); n]; n]; n]
}

fn int(c: i64) -> Scalar {
    Scalar::from_int(c)
}

/// Sweedler's four-dimensional Hopf algebra on `1, g, x, gx`.
fn sweedler() -> HopfSpec {
    let mut mult = structure(4);
    // products of basis elements as (coefficient, index)
    let table: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (1, 0), (1, 3), (1, 2)],
        [(1, 2), (-1, 3), (0, 0), (0, 0)],
        [(1, 3), (-1, 2), (0, 0), (0, 0)],
    ];
    for i in 0..4 {
        for j in 0..4 {
            let (c, k) = table[i][j];
            mult[i][j][k] = int(c);
        }
    }
    let mut comult = structure(4);
    comult[0][0][0] = int(1);
    comult[1][1][1] = int(1);
    comult[2][2][0] = int(1);
    comult[2][1][2] = int(1);
    comult[3][3][1] = int(1);
    comult[3][0][3] = int(1);
    let mut antipode = dense::zeros(4, 4);
    antipode[0][0] = int(1);
    antipode[1][1] = int(1);
    antipode[2][3] = int(-1);
    antipode[3][2] = int(1);
    HopfSpec {
        name: "hopf-sweedler".into(),
        basis: ["1", "g", "x", "gx"].map(String::from).to_vec(),
        mult,
        unit: vec![int(1), int(0), int(0), int(0)],
        comult,
        counit: vec![int(1), int(1), int(0), int(0)],
        antipode,
    }
}

/// Functions on `ℤ₃`, with basis the point indicators `d0, d1, d2`.
fn functions_on_z3() -> HopfSpec {
    let n = 3;
    let mut mult = structure(n);
    let mut comult = structure(n);
    let mut antipode = dense::zeros(n, n);
    for i in 0..n {
        mult[i][i][i] = int(1);
        for j in 0..n {
            comult[(i + j) % n][i][j] = int(1);
        }
        antipode[i][(n - i) % n] = int(1);
    }
    HopfSpec {
        name: "hopf-fun-z3".into(),
        basis: ["d0", "d1", "d2"].map(String::from).to_vec(),
        mult,
        unit: vec![int(1); n],
        comult,
        counit: vec![int(1), int(0), int(0)],
        antipode,
    }
}

pub fn hopf(name: &str) -> Result<HopfSpec> {
    match name {
        "hopf-z2" => group_algebra(name, &["1", "g"], &cyclic_table(2)),
        "hopf-z3" => group_algebra(name, &["1", "g", "g2"], &cyclic_table(3)),
        "hopf-z2z2" => {
            let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            group_algebra(name, &["1", "a", "b", "ab"], &table)
        }
        "hopf-s3" => {
            let els = s3_elements();
            let table = els
                .iter()
                .map(|p| {
                    els.iter()
                        .map(|q| {
                            let pq = [p[q[0]], p[q[1]], p[q[2]]];
                            els.iter().position(|x| *x == pq).expect("closed")
                        })
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>();
            group_algebra(name, &S3_LABELS, &table)
        }
        "hopf-sweedler" => Ok(sweedler()),
        "hopf-fun-z3" => Ok(functions_on_z3()),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub const ACTION_NAMES: &[&str] = &[
    "sigma-ns-1/2",
    "trivial-z2-ns-1/2",
    "swap-freediff-(2|0)",
    "perm-s3-freediff-(3|0)",
    "z2z2-through-z2",
    "sweedler-freediff-(2|0)",
    "sweedler-trivial-freediff-(2|0)",
];

fn diag(d: &[i64]) -> dense::Matrix {
    let mut m = dense::zeros(d.len(), d.len());
    for (i, &c) in d.iter().enumerate() {
        m[i][i] = int(c);
    }
    m
}

fn permutation_matrix(p: &[usize]) -> dense::Matrix {
    let mut m = dense::zeros(p.len(), p.len());
    for (a, &b) in p.iter().enumerate() {
        m[b][a] = int(1);
    }
    m
}

fn automorphisms(pairs: Vec<(&str, dense::Matrix)>) -> ActionSource {
    ActionSource::Automorphisms(pairs.into_iter().map(|(k, m)| (k.to_string(), m)).collect())
}

fn from_ints(rows: &[&[i64]]) -> dense::Matrix {
    rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()
}

pub fn action_spec(name: &str) -> Result<ActionSpec> {
    let spec = |hopf_name: &str, alg: &str, cutoff: Weight, source: ActionSource| -> Result<ActionSpec> {
        Ok(ActionSpec {
            name: name.to_string(),
            hopf: hopf(hopf_name)?,
            algebra: algebra_spec(alg)?,
            cutoff,
            source,
        })
    };
    let swap = permutation_matrix(&[1, 0]);
    match name {
        "sigma-ns-1/2" => spec(
            "hopf-z2",
            "ns-1/2",
            Weight::int(4),
            automorphisms(vec![("1", diag(&[1, 1])), ("g", diag(&[1, -1]))]),
        ),
        "trivial-z2-ns-1/2" => spec(
            "hopf-z2",
            "ns-1/2",
            Weight::int(4),
            automorphisms(vec![("1", diag(&[1, 1])), ("g", diag(&[1, 1]))]),
        ),
        "swap-freediff-(2|0)" => spec(
            "hopf-z2",
            "freediff-(2|0)",
            Weight::int(3),
            automorphisms(vec![("1", diag(&[1, 1])), ("g", swap)]),
        ),
        "perm-s3-freediff-(3|0)" => {
            let pairs = S3_LABELS
                .iter()
                .zip(s3_elements())
                .map(|(l, p)| (*l, permutation_matrix(&p)))
                .collect();
            spec("hopf-s3", "freediff-(3|0)", Weight::int(3), automorphisms(pairs))
        }
        "z2z2-through-z2" => spec(
            "hopf-z2z2",
            "freediff-(2|0)",
            Weight::int(3),
            automorphisms(vec![
                ("1", diag(&[1, 1])),
                ("a", swap.clone()),
                ("b", swap),
                ("ab", diag(&[1, 1])),
            ]),
        ),
        "sweedler-freediff-(2|0)" | "sweedler-trivial-freediff-(2|0)" => {
            let trivial = name.starts_with("sweedler-trivial");
            let one = Weight::int(1);
            let zero = Weight::ZERO;
            let per = |v0: i64, v1: dense::Matrix| -> BTreeMap<Weight, dense::Matrix> {
                [(zero, from_ints(&[&[v0]])), (one, v1)].into_iter().collect()
            };
            let (g, x) = if trivial {
                (diag(&[1, 1]), diag(&[0, 0]))
            } else {
                (diag(&[1, -1]), from_ints(&[&[0, 0], &[1, 0]]))
            };
            let gx = dense::mul(&g, &x);
            let map = [
                ("1", per(1, diag(&[1, 1]))),
                ("g", per(1, g)),
                ("x", per(0, x)),
                ("gx", per(0, gx)),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
            spec("hopf-sweedler", "freediff-(2|0)", one, ActionSource::Matrices(map))
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

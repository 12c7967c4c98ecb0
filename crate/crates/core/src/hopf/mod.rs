//! Finite-dimensional Hopf algebras over ℚ given by structure constants,
//! their axioms, ideals and grouplike elements, and Hopf actions on vertex
//! superalgebras.

pub mod action;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dense, rational_roots, SparseEchelon};
use crate::scalar::Scalar;

pub use action::{Action, ActionSource, ActionSpec, ActionViolation, CocommutativityVerdict, Faithfulness};

/// Structure constants of a Hopf algebra on the basis `e_0, ..., e_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfSpec {
    pub name: String,
    pub basis: Vec<String>,
    /// `e_i e_j = Σ_k mult[i][j][k] e_k`
    pub mult: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
    /// `Δ(e_i) = Σ_{j,k} comult[i][j][k] e_j ⊗ e_k`
    pub comult: Vec<Vec<Vec<Scalar>>>,
    pub counit: Vec<Scalar>,
    /// `S(e_i) = Σ_j antipode[i][j] e_j`
    pub antipode: Vec<Vec<Scalar>>,
}

/// An element of `H ⊗ H`, indexed `j·n + k` for `e_j ⊗ e_k`.
pub type Tensor2 = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HopfViolation {
    pub axiom: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealMode {
    Bialgebra,
    Hopf,
}

/// Result of the grouplike search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grouplikes {
    /// a basis of grouplike elements: `H` is a group algebra
    Found(Vec<Vec<Scalar>>),
    /// the rational grouplikes do not span `H`; splitting the dual algebra
    /// would need an extension of ℚ
    Undecided { rational: Vec<Vec<Scalar>> },
}

fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

impl HopfSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// Structural consistency of the arrays.
    pub fn check_dimensions(&self) -> Result<()> {
        let n = self.dim();
        let bad = |what: &str| Err(Error::Dimension(format!("{what} does not match {n} basis elements")));
        if n == 0 {
            return Err(Error::Dimension("empty basis".into()));
        }
        if self.mult.len() != n || self.mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("mult");
        }
        if self.comult.len() != n || self.comult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("comult");
        }
        if self.unit.len() != n {
            return bad("unit");
        }
        if self.counit.len() != n {
            return bad("counit");
        }
        if self.antipode.len() != n || self.antipode.iter().any(|r| r.len() != n) {
            return bad("antipode");
        }
        Ok(())
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = zeros(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(x * y), &self.mult[i][j]);
            }
        }
        out
    }

    pub fn delta(&self, a: &[Scalar]) -> Tensor2 {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                add_scaled(&mut out[j * n..(j + 1) * n], x, &self.comult[i][j]);
            }
        }
        out
    }

    pub fn eps(&self, a: &[Scalar]) -> Scalar {
        a.iter()
            .zip(&self.counit)
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, e)| x * e)
            .sum()
    }

    pub fn antipode_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        let mut out = zeros(self.dim());
        for (i, x) in a.iter().enumerate() {
            add_scaled(&mut out, x, &self.antipode[i]);
        }
        out
    }

    pub fn e(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.dim(), i)
    }

    /// `swap ∘ Δ`
    pub fn delta_op(&self, a: &[Scalar]) -> Tensor2 {
        let n = self.dim();
        let d = self.delta(a);
        let mut out = zeros(n * n);
        for j in 0..n {
            for k in 0..n {
                out[k * n + j] = d[j * n + k].clone();
            }
        }
        out
    }

    fn tensor_mul(&self, a: &Tensor2, b: &Tensor2) -> Tensor2 {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (p, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let left = &self.mult[p / n][q / n];
                let right = &self.mult[p % n][q % n];
                let c = x * y;
                for (j, l) in left.iter().enumerate() {
                    if l.is_zero() {
                        continue;
                    }
                    add_scaled(&mut out[j * n..(j + 1) * n], &(&c * l), right);
                }
            }
        }
        out
    }

    fn label(&self, i: usize) -> String {
        self.basis[i].clone()
    }

    /// Checks every Hopf algebra axiom on basis elements.
    pub fn verify(&self) -> Result<Vec<HopfViolation>> {
        self.check_dimensions()?;
        let n = self.dim();
        let mut out = Vec::new();
        let mut fail = |axiom: &str, w: Vec<usize>| {
            out.push(HopfViolation {
                axiom: axiom.into(),
                witness: w.into_iter().map(|i| self.label(i)).collect(),
            })
        };
        let one = &self.unit;
        for i in 0..n {
            let ei = self.e(i);
            if self.mul(one, &ei) != ei || self.mul(&ei, one) != ei {
                fail("unit", vec![i]);
            }
            for j in 0..n {
                let ej = self.e(j);
                let eij = self.mul(&ei, &ej);
                for k in 0..n {
                    let ek = self.e(k);
                    if self.mul(&eij, &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        fail("associativity", vec![i, j, k]);
                    }
                }
                if self.delta(&eij) != self.tensor_mul(&self.delta(&ei), &self.delta(&ej)) {
                    fail("comultiplication-multiplicative", vec![i, j]);
                }
                if self.eps(&eij) != &self.eps(&ei) * &self.eps(&ej) {
                    fail("counit-multiplicative", vec![i, j]);
                }
            }
            // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ, compared in H⊗H⊗H
            let d = self.delta(&ei);
            let mut left = zeros(n * n * n);
            let mut right = zeros(n * n * n);
            for j in 0..n {
                for k in 0..n {
                    let c = &d[j * n + k];
                    if c.is_zero() {
                        continue;
                    }
                    let dj = self.delta(&self.e(j));
                    for (p, x) in dj.iter().enumerate() {
                        if !x.is_zero() {
                            left[p * n + k] += &(c * x);
                        }
                    }
                    let dk = self.delta(&self.e(k));
                    for (p, x) in dk.iter().enumerate() {
                        if !x.is_zero() {
                            right[j * n * n + p] += &(c * x);
                        }
                    }
                }
            }
            if left != right {
                fail("coassociativity", vec![i]);
            }
            // counit laws and antipode laws
            let mut l = zeros(n);
            let mut r = zeros(n);
            let mut sl = zeros(n);
            let mut sr = zeros(n);
            for j in 0..n {
                for k in 0..n {
                    let c = &d[j * n + k];
                    if c.is_zero() {
                        continue;
                    }
                    add_scaled(&mut l, &(c * &self.counit[j]), &self.e(k));
                    add_scaled(&mut r, &(c * &self.counit[k]), &self.e(j));
                    add_scaled(&mut sl, c, &self.mul(&self.antipode[j], &self.e(k)));
                    add_scaled(&mut sr, c, &self.mul(&self.e(j), &self.antipode[k]));
                }
            }
            if l != ei || r != ei {
                fail("counit", vec![i]);
            }
            let mut target = zeros(n);
            add_scaled(&mut target, &self.counit[i], one);
            if sl != target || sr != target {
                fail("antipode", vec![i]);
            }
        }
        let mut one_one = zeros(n * n);
        for (j, x) in one.iter().enumerate() {
            for (k, y) in one.iter().enumerate() {
                one_one[j * n + k] = x * y;
            }
        }
        if self.delta(one) != one_one {
            out.push(HopfViolation {
                axiom: "comultiplication-of-unit".into(),
                witness: Vec::new(),
            });
        }
        if !self.eps(one).is_one() {
            out.push(HopfViolation {
                axiom: "counit-of-unit".into(),
                witness: Vec::new(),
            });
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// The first basis element with `Δ ≠ swap∘Δ`, if any.
    pub fn cocommutativity_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let e = self.e(i);
            self.delta(&e) != self.delta_op(&e)
        })
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutativity_witness().is_none()
    }

    /// Whether every basis element is grouplike.
    pub fn has_grouplike_basis(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let mut gg = zeros(n * n);
            gg[i * n + i] = Scalar::one();
            self.delta(&self.e(i)) == gg && self.counit[i].is_one()
        })
    }

    /// Checks the ideal conditions on the span of `span`: two-sided ideal,
    /// coideal with `ε(I) = 0`, and in Hopf mode `S(I) ⊆ I`.
    pub fn verify_ideal(&self, span: &[Vec<Scalar>], mode: IdealMode) -> Result<Vec<HopfViolation>> {
        self.check_dimensions()?;
        let n = self.dim();
        for v in span {
            if v.len() != n {
                return Err(Error::Dimension(format!(
                    "ideal vector of length {} in a {n}-dimensional algebra",
                    v.len()
                )));
            }
        }
        let mut ideal: SparseEchelon<usize> = SparseEchelon::new();
        for v in span {
            ideal.insert(to_map(v));
        }
        let basis: Vec<Vec<Scalar>> = ideal
            .rows()
            .values()
            .map(|r| from_map(r, n))
            .collect();
        let fmt = |v: &[Scalar]| self.format_element(v);
        let mut out = Vec::new();
        // H⊗I + I⊗H
        let mut sum: SparseEchelon<usize> = SparseEchelon::new();
        for b in &basis {
            for i in 0..n {
                let mut left = zeros(n * n);
                let mut right = zeros(n * n);
                for (k, x) in b.iter().enumerate() {
                    left[i * n + k] = x.clone();
                    right[k * n + i] = x.clone();
                }
                sum.insert(to_map(&left));
                sum.insert(to_map(&right));
            }
        }
        for b in &basis {
            for i in 0..n {
                let ei = self.e(i);
                if !ideal.contains(&to_map(&self.mul(&ei, b))) {
                    out.push(HopfViolation {
                        axiom: "left-ideal".into(),
                        witness: vec![self.label(i), fmt(b)],
                    });
                }
                if !ideal.contains(&to_map(&self.mul(b, &ei))) {
                    out.push(HopfViolation {
                        axiom: "right-ideal".into(),
                        witness: vec![fmt(b), self.label(i)],
                    });
                }
            }
            if !sum.contains(&to_map(&self.delta(b))) {
                out.push(HopfViolation {
                    axiom: "coideal".into(),
                    witness: vec![fmt(b)],
                });
            }
            if !self.eps(b).is_zero() {
                out.push(HopfViolation {
                    axiom: "counit-vanishes".into(),
                    witness: vec![fmt(b)],
                });
            }
            if mode == IdealMode::Hopf && !ideal.contains(&to_map(&self.antipode_of(b))) {
                out.push(HopfViolation {
                    axiom: "antipode-stable".into(),
                    witness: vec![fmt(b)],
                });
            }
        }
        out.sort();
        Ok(out)
    }

    /// Readable form of an element, e.g. `1 - g`.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let mut s = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&self.basis[i]);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// The operator `h ↦ Σ h_1 f(h_2)` for the coordinate functional `f = e^j`.
    fn dual_operator(&self, j: usize) -> dense::Matrix {
        let n = self.dim();
        let mut m = dense::zeros(n, n);
        for i in 0..n {
            for a in 0..n {
                m[a][i] = self.comult[i][a][j].clone();
            }
        }
        m
    }

    /// Grouplike elements, found as the common eigenvectors of the operators
    /// `h ↦ Σ h_1 f(h_2)` (the action of the commutative dual algebra), with
    /// rational eigenvalues from the characteristic polynomial.
    pub fn find_grouplikes(&self) -> Result<Grouplikes> {
        self.check_dimensions()?;
        if let Some(w) = self.cocommutativity_witness() {
            return Err(Error::NotCocommutative(self.basis[w].clone()));
        }
        let n = self.dim();
        let mut spaces: Vec<Vec<Vec<Scalar>>> = vec![(0..n).map(|i| self.e(i)).collect()];
        for j in 0..n {
            let op = self.dual_operator(j);
            let mut next = Vec::new();
            for space in spaces {
                let restricted = restrict(&op, &space);
                for lambda in rational_roots(&char_poly(&restricted)) {
                    let mut shifted = restricted.clone();
                    for (i, row) in shifted.iter_mut().enumerate() {
                        row[i] -= &lambda;
                    }
                    let coords = dense::kernel(&shifted, space.len());
                    let vectors: Vec<Vec<Scalar>> = coords
                        .iter()
                        .map(|c| {
                            let mut v = zeros(n);
                            for (x, b) in c.iter().zip(&space) {
                                add_scaled(&mut v, x, b);
                            }
                            v
                        })
                        .collect();
                    next.push(vectors);
                }
            }
            spaces = next;
        }
        let mut found = Vec::new();
        for space in spaces {
            if space.len() != 1 {
                continue;
            }
            let v = &space[0];
            let e = self.eps(v);
            let Some(inv) = e.inv() else { continue };
            let g: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
            let mut gg = zeros(n * n);
            for (a, x) in g.iter().enumerate() {
                for (b, y) in g.iter().enumerate() {
                    gg[a * n + b] = x * y;
                }
            }
            if self.delta(&g) == gg {
                found.push(g);
            }
        }
        found.sort();
        if found.len() == n {
            Ok(Grouplikes::Found(found))
        } else {
            Ok(Grouplikes::Undecided { rational: found })
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim();
        let mut mult = serde_json::Map::new();
        let mut comult = serde_json::Map::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<_> = self.mult[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| serde_json::json!({"k": k, "c": c}))
                    .collect();
                if !terms.is_empty() {
                    mult.insert(format!("{i},{j}"), terms.into());
                }
            }
            let mut terms = Vec::new();
            for j in 0..n {
                for k in 0..n {
                    let c = &self.comult[i][j][k];
                    if !c.is_zero() {
                        terms.push(serde_json::json!({"j": j, "k": k, "c": c}));
                    }
                }
            }
            comult.insert(i.to_string(), terms.into());
        }
        serde_json::json!({
            "name": self.name,
            "basis": self.basis,
            "mult": mult,
            "unit": self.unit,
            "comult": comult,
            "counit": self.counit,
            "antipode": self.antipode,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct MultTerm {
            k: usize,
            c: Scalar,
        }
        #[derive(Deserialize)]
        struct ComultTerm {
            j: usize,
            k: usize,
            c: Scalar,
        }
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            name: Option<String>,
            basis: Vec<String>,
            #[serde(default)]
            mult: BTreeMap<String, Vec<MultTerm>>,
            unit: Vec<Scalar>,
            #[serde(default)]
            comult: BTreeMap<String, Vec<ComultTerm>>,
            counit: Vec<Scalar>,
            antipode: Vec<Vec<Scalar>>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.basis.len();
        let range = |i: usize| -> Result<usize> {
            if i < n {
                Ok(i)
            } else {
                Err(Error::Index {
                    what: "Hopf basis",
                    index: i,
                    len: n,
                })
            }
        };
        let mut mult = vec![vec![zeros(n); n]; n];
        for (key, terms) in raw.mult {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("expected \"i,j\", got {key:?}")))?;
            let (i, j) = (range(i)?, range(j)?);
            for t in terms {
                mult[i][j][range(t.k)?] += &t.c;
            }
        }
        let mut comult = vec![vec![zeros(n); n]; n];
        for (key, terms) in raw.comult {
            let i: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected an index, got {key:?}")))?;
            let i = range(i)?;
            for t in terms {
                comult[i][range(t.j)?][range(t.k)?] += &t.c;
            }
        }
        let spec = HopfSpec {
            name: raw.name.unwrap_or_else(|| "custom".into()),
            basis: raw.basis,
            mult,
            unit: raw.unit,
            comult,
            counit: raw.counit,
            antipode: raw.antipode,
        };
        spec.check_dimensions()?;
        Ok(spec)
    }
}

/// The group algebra `ℚ[G]` of a multiplication table (`table[a][b]` is the
/// index of `ab`).
pub fn group_algebra(name: &str, labels: &[&str], table: &[Vec<usize>]) -> Result<HopfSpec> {
    let n = table.len();
    let not_group = |why: String| Err(Error::NotAGroup(why));
    if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n) {
        return not_group(format!("table must be square with {} labels", labels.len()));
    }
    if table.iter().flatten().any(|&x| x >= n) {
        return not_group("entry out of range".into());
    }
    let Some(id) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
        return not_group("no identity element".into());
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return not_group(format!("({} {}) {} is not associative", labels[a], labels[b], labels[c]));
                }
            }
        }
    }
    let mut inverse = vec![0; n];
    for a in 0..n {
        match (0..n).find(|&b| table[a][b] == id && table[b][a] == id) {
            Some(b) => inverse[a] = b,
            None => return not_group(format!("{} has no inverse", labels[a])),
        }
    }
    let mut mult = vec![vec![zeros(n); n]; n];
    let mut comult = vec![vec![zeros(n); n]; n];
    let mut antipode = vec![zeros(n); n];
    for a in 0..n {
        for b in 0..n {
            mult[a][b][table[a][b]] = Scalar::one();
        }
        comult[a][a][a] = Scalar::one();
        antipode[a][inverse[a]] = Scalar::one();
    }
    Ok(HopfSpec {
        name: name.into(),
        basis: labels.iter().map(|s| s.to_string()).collect(),
        mult,
        unit: unit_vec(n, id),
        comult,
        counit: vec![Scalar::one(); n],
        antipode,
    })
}

fn to_map(v: &[Scalar]) -> BTreeMap<usize, Scalar> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn from_map(m: &BTreeMap<usize, Scalar>, n: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    for (i, c) in m {
        v[*i] = c.clone();
    }
    v
}

/// Matrix of `op` on the invariant subspace spanned by `basis`, in the
/// coordinates of that basis.
fn restrict(op: &dense::Matrix, basis: &[Vec<Scalar>]) -> dense::Matrix {
    let k = basis.len();
    let n = op.len();
    // solve B·M = op·B column by column through the augmented system
    let mut out = dense::zeros(k, k);
    for (c, b) in basis.iter().enumerate() {
        let image = dense::mul_vec(op, b);
        let mut aug = dense::zeros(n, k + 1);
        for r in 0..n {
            for (j, bj) in basis.iter().enumerate() {
                aug[r][j] = bj[r].clone();
            }
            aug[r][k] = -&image[r];
        }
        let ker = dense::kernel(&aug, k + 1);
        let sol = ker
            .iter()
            .find(|v| !v[k].is_zero())
            .expect("subspace is invariant");
        let inv = sol[k].inv().expect("nonzero");
        for r in 0..k {
            out[r][c] = &sol[r] * &inv;
        }
    }
    out
}

/// Characteristic polynomial `det(xI - A)`, constant term first
/// (Faddeev-LeVerrier).
fn char_poly(a: &dense::Matrix) -> Vec<Scalar> {
    let n = a.len();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = dense::zeros(n, n);
    for k in 1..=n {
        let mut next = dense::mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = dense::mul(a, &m);
        let trace: Scalar = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -&(&trace / &Scalar::from_int(k as i64));
    }
    coeffs
}

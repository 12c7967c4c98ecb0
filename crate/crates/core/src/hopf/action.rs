//! Hopf algebra actions on truncations `V_{≤N}` of a vertex superalgebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::HopfSpec;
use crate::algebra::{Algebra, AlgebraSpec, Monomial, StateVector};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::linalg::{dense, SparseEchelon};
use crate::scalar::{Scalar, Weight};

/// How the Hopf basis acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSource {
    /// For group algebras: each basis label acts by the automorphism with the
    /// given matrix on the strong generators (column `a` is the image of
    /// generator `a`), extended to monomials mode by mode.
    Automorphisms(BTreeMap<String, dense::Matrix>),
    /// Explicit matrices on each weight space, columns being images of the
    /// sorted basis monomials.
    Matrices(BTreeMap<String, BTreeMap<Weight, dense::Matrix>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub name: String,
    pub hopf: HopfSpec,
    pub algebra: AlgebraSpec,
    pub cutoff: Weight,
    pub source: ActionSource,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ActionViolation {
    pub condition: String,
    pub hopf: String,
    pub states: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CocommutativityVerdict {
    ConsistentWithGroupAlgebra,
    Obstructed { hopf: String, u: String, v: String },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Faithfulness {
    pub kernel_dim: usize,
    pub faithful: bool,
    /// Only decided for group algebras: no nontrivial group element acts as
    /// the identity on the truncation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_faithful: Option<bool>,
    pub trivially_acting: Vec<String>,
    pub note: String,
}

/// A validated action with its matrices on every weight space up to the
/// cutoff.
#[derive(Debug)]
pub struct Action {
    pub hopf: HopfSpec,
    pub algebra: Algebra,
    pub cutoff: Weight,
    basis: BTreeMap<Weight, Arc<Vec<Monomial>>>,
    index: HashMap<Monomial, (Weight, usize)>,
    rho: Vec<BTreeMap<Weight, dense::Matrix>>,
}

fn scalar_matrix_json(m: &dense::Matrix) -> serde_json::Value {
    serde_json::to_value(m).expect("matrix")
}

impl ActionSpec {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "name": self.name,
            "hopf": self.hopf.to_json(),
            "algebra": self.algebra,
            "cutoff": self.cutoff,
        });
        match &self.source {
            ActionSource::Automorphisms(a) => {
                let m: serde_json::Map<_, _> = a
                    .iter()
                    .map(|(k, m)| (k.clone(), scalar_matrix_json(m)))
                    .collect();
                v["automorphisms"] = m.into();
            }
            ActionSource::Matrices(a) => {
                let m: serde_json::Map<_, _> = a
                    .iter()
                    .map(|(k, ws)| {
                        let inner: serde_json::Map<_, _> = ws
                            .iter()
                            .map(|(w, m)| (w.to_string(), scalar_matrix_json(m)))
                            .collect();
                        (k.clone(), inner.into())
                    })
                    .collect();
                v["matrices"] = m.into();
            }
        }
        v
    }

    /// Accepts fixture names in place of the `hopf` and `algebra` objects.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parse = |e: serde_json::Error| Error::Parse(e.to_string());
        let hopf = match &v["hopf"] {
            serde_json::Value::String(s) => fixtures::hopf(s)?,
            serde_json::Value::Null => return Err(Error::Parse("missing \"hopf\"".into())),
            other => HopfSpec::from_json(other)?,
        };
        let algebra = match &v["algebra"] {
            serde_json::Value::String(s) => fixtures::algebra_spec(s)?,
            serde_json::Value::Null => return Err(Error::Parse("missing \"algebra\"".into())),
            other => serde_json::from_value(other.clone()).map_err(parse)?,
        };
        let cutoff: Weight = serde_json::from_value(v["cutoff"].clone()).map_err(parse)?;
        let source = match (v.get("automorphisms"), v.get("matrices")) {
            (Some(a), None) => ActionSource::Automorphisms(serde_json::from_value(a.clone()).map_err(parse)?),
            (None, Some(m)) => ActionSource::Matrices(serde_json::from_value(m.clone()).map_err(parse)?),
            _ => {
                return Err(Error::Parse(
                    "exactly one of \"automorphisms\" and \"matrices\" is required".into(),
                ))
            }
        };
        Ok(ActionSpec {
            name: v["name"].as_str().unwrap_or("custom").to_string(),
            hopf,
            algebra,
            cutoff,
            source,
        })
    }
}

fn label_lookup<'a, T>(map: &'a BTreeMap<String, T>, hopf: &HopfSpec) -> Result<Vec<&'a T>> {
    for k in map.keys() {
        if hopf.index_of(k).is_none() {
            return Err(Error::Parse(format!("{k:?} is not a basis element of {}", hopf.name)));
        }
    }
    hopf.basis
        .iter()
        .map(|b| {
            map.get(b)
                .ok_or_else(|| Error::Parse(format!("no action given for {b:?}")))
        })
        .collect()
}

fn check_square(m: &dense::Matrix, d: usize, what: &str) -> Result<()> {
    if m.len() != d || m.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension(format!("{what} must be {d}x{d}")));
    }
    Ok(())
}

impl Action {
    pub fn new(spec: &ActionSpec) -> Result<Action> {
        spec.hopf.check_dimensions()?;
        let algebra = Algebra::new(&spec.algebra)?;
        let weights = spec.cutoff.lattice_up_to(algebra.t());
        if spec.cutoff.is_negative() || !spec.cutoff.on_lattice(algebra.t()) {
            return Err(Error::Lattice {
                weight: spec.cutoff.to_string(),
                t: algebra.t(),
            });
        }
        let rho = match &spec.source {
            ActionSource::Matrices(map) => {
                let mut rho = Vec::new();
                for (label, per_weight) in spec.hopf.basis.iter().zip(label_lookup(map, &spec.hopf)?) {
                    let mut r = BTreeMap::new();
                    for &w in &weights {
                        let d = algebra.basis_at(w).len();
                        let m = match per_weight.get(&w) {
                            Some(m) => m.clone(),
                            None if d == 0 => Vec::new(),
                            None => return Err(Error::Parse(format!("no matrix for {label} at weight {w}"))),
                        };
                        check_square(&m, d, &format!("matrix of {label} at weight {w}"))?;
                        r.insert(w, m);
                    }
                    rho.push(r);
                }
                rho
            }
            ActionSource::Automorphisms(map) => {
                let gens = algebra.generators();
                let g = gens.len();
                let mut rho = Vec::new();
                for (label, m) in spec.hopf.basis.iter().zip(label_lookup(map, &spec.hopf)?) {
                    check_square(m, g, &format!("automorphism {label}"))?;
                    for (a, ga) in gens.iter().enumerate() {
                        for (b, gb) in gens.iter().enumerate() {
                            if !m[b][a].is_zero() && ga.degree != gb.degree {
                                return Err(Error::Invalid(format!(
                                    "automorphism {label} sends {} to {}, of a different degree",
                                    ga.id, gb.id
                                )));
                            }
                        }
                    }
                    let mut r = BTreeMap::new();
                    for &w in &weights {
                        let basis = algebra.basis_at(w);
                        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
                        let mut mat = dense::zeros(basis.len(), basis.len());
                        for (c, mono) in basis.iter().enumerate() {
                            let image = extend_automorphism(&algebra, m, mono);
                            for (t, x) in image.iter() {
                                mat[index[t]][c] = x.clone();
                            }
                        }
                        r.insert(w, mat);
                    }
                    rho.push(r);
                }
                rho
            }
        };
        Self::from_parts(spec.hopf.clone(), algebra, spec.cutoff, rho)
    }

    /// An action from matrices indexed like the Hopf basis.
    pub fn from_parts(
        hopf: HopfSpec,
        algebra: Algebra,
        cutoff: Weight,
        rho: Vec<BTreeMap<Weight, dense::Matrix>>,
    ) -> Result<Action> {
        if rho.len() != hopf.dim() {
            return Err(Error::Dimension(format!(
                "{} action maps for a {}-dimensional Hopf algebra",
                rho.len(),
                hopf.dim()
            )));
        }
        let mut basis = BTreeMap::new();
        let mut index = HashMap::new();
        for w in cutoff.lattice_up_to(algebra.t()) {
            let b = algebra.basis_at(w);
            for (i, m) in b.iter().enumerate() {
                index.insert(m.clone(), (w, i));
            }
            for r in &rho {
                let m = r
                    .get(&w)
                    .ok_or_else(|| Error::Dimension(format!("missing matrix at weight {w}")))?;
                check_square(m, b.len(), &format!("matrix at weight {w}"))?;
            }
            basis.insert(w, b);
        }
        Ok(Action {
            hopf,
            algebra,
            cutoff,
            basis,
            index,
            rho,
        })
    }

    pub fn weights(&self) -> impl Iterator<Item = Weight> + '_ {
        self.basis.keys().copied()
    }

    pub fn basis_at(&self, w: Weight) -> &[Monomial] {
        self.basis.get(&w).map_or(&[], |b| b.as_slice())
    }

    /// Matrix of basis element `i` on `V_w`.
    pub fn matrix(&self, i: usize, w: Weight) -> &dense::Matrix {
        &self.rho[i][&w]
    }

    fn check_up_to(&self, up_to: Weight) -> Result<()> {
        if up_to > self.cutoff {
            return Err(Error::Precondition(format!(
                "weight {up_to} is beyond the action's cutoff {}",
                self.cutoff
            )));
        }
        Ok(())
    }

    /// `e_i · v` for a state of weight at most the cutoff.
    pub fn act(&self, i: usize, v: &StateVector) -> Result<StateVector> {
        let mut out = StateVector::zero();
        for (m, c) in v.iter() {
            let &(w, col) = self.index.get(m).ok_or_else(|| {
                Error::Precondition(format!(
                    "{} is not a basis state of weight at most {}",
                    self.algebra.format_monomial(m),
                    self.cutoff
                ))
            })?;
            let b = &self.basis[&w];
            for (r, row) in self.rho[i][&w].iter().enumerate() {
                if !row[col].is_zero() {
                    out.add_term(b[r].clone(), &(c * &row[col]));
                }
            }
        }
        Ok(out)
    }

    fn act_in(&self, i: usize, v: &StateVector) -> StateVector {
        self.act(i, v).expect("state within the cutoff")
    }

    /// `h · v` for a general element `h` of the Hopf algebra.
    pub fn act_element(&self, h: &[Scalar], v: &StateVector) -> Result<StateVector> {
        let mut out = StateVector::zero();
        for (i, c) in h.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.act(i, v)?);
            }
        }
        Ok(out)
    }

    fn violation(&self, condition: &str, i: usize, states: Vec<String>) -> ActionViolation {
        ActionViolation {
            condition: condition.into(),
            hopf: self.hopf.basis[i].clone(),
            states,
            index: None,
            weight: None,
        }
    }

    /// Checks parity preservation, the representation property, `h1 = ε(h)1`,
    /// compatibility with every product `u_n v` landing at weight at most
    /// `up_to`, and commutation with the translation operator.
    #[allow(clippy::int_plus_one)]
    pub fn verify(&self, up_to: Weight) -> Result<Vec<ActionViolation>> {
        self.check_up_to(up_to)?;
        let h = &self.hopf;
        let n = h.dim();
        let alg = &self.algebra;
        let mut out = Vec::new();
        let weights: Vec<Weight> = self.weights().filter(|w| *w <= up_to).collect();
        for &w in &weights {
            let b = &self.basis[&w];
            let d = b.len();
            for i in 0..n {
                let m = &self.rho[i][&w];
                for r in 0..d {
                    for c in 0..d {
                        if !m[r][c].is_zero() && alg.parity_of(&b[r]) != alg.parity_of(&b[c]) {
                            out.push(self.violation(
                                "parity",
                                i,
                                vec![alg.format_monomial(&b[c]), alg.format_monomial(&b[r])],
                            ));
                        }
                    }
                }
                for j in 0..n {
                    let lhs = dense::mul(m, &self.rho[j][&w]);
                    let mut rhs = dense::zeros(d, d);
                    for (k, c) in h.mult[i][j].iter().enumerate() {
                        dense::add_scaled(&mut rhs, c, &self.rho[k][&w]);
                    }
                    if lhs != rhs {
                        let mut v = self.violation("representation", i, Vec::new());
                        v.states = vec![h.basis[j].clone()];
                        v.weight = Some(w);
                        out.push(v);
                    }
                }
            }
            let mut one = dense::zeros(d, d);
            for (k, c) in h.unit.iter().enumerate() {
                dense::add_scaled(&mut one, c, &self.rho[k][&w]);
            }
            if one != dense::identity(d) {
                out.push(ActionViolation {
                    condition: "unit-acts-as-identity".into(),
                    hopf: "1".into(),
                    states: Vec::new(),
                    index: None,
                    weight: Some(w),
                });
            }
        }
        let vac = StateVector::vacuum();
        for i in 0..n {
            if self.act_in(i, &vac) != vac.scaled(&h.counit[i]) {
                out.push(self.violation("vacuum", i, vec!["1".into()]));
            }
        }
        let states: Vec<Monomial> = weights.iter().flat_map(|w| self.basis[w].iter().cloned()).collect();
        // images e_i·u for every basis state
        let images: HashMap<&Monomial, Vec<StateVector>> = states
            .iter()
            .map(|m| (m, (0..n).map(|i| self.act_in(i, &StateVector::basis(m.clone()))).collect()))
            .collect();
        for u in &states {
            for v in &states {
                let total = u.weight() + v.weight();
                // output weight total - n - 1 must lie in [0, up_to]
                let lo = (total - up_to - 1).ceil();
                let hi = (total - 1).floor();
                for idx in lo..=hi {
                    let prod = alg.nth_mono(u, idx, v);
                    for i in 0..n {
                        let lhs = self.act_in(i, &prod);
                        let mut rhs = StateVector::zero();
                        for j in 0..n {
                            for k in 0..n {
                                let c = &h.comult[i][j][k];
                                if c.is_zero() {
                                    continue;
                                }
                                rhs.add_scaled(c, &alg.nth_product(&images[u][j], idx, &images[v][k]));
                            }
                        }
                        if lhs != rhs {
                            let mut viol = self.violation(
                                "product-compatibility",
                                i,
                                vec![alg.format_monomial(u), alg.format_monomial(v)],
                            );
                            viol.index = Some(idx);
                            out.push(viol);
                        }
                    }
                }
            }
            if u.weight() + 1 <= up_to {
                let du = alg.translation(&StateVector::basis(u.clone()));
                for i in 0..n {
                    if self.act_in(i, &du) != alg.translation(&images[u][i]) {
                        out.push(self.violation("translation", i, vec![alg.format_monomial(u)]));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `{h : h·v = 0 for all v ∈ V_{≤up_to}}`, as a reduced echelon basis.
    pub fn kernel(&self, up_to: Weight) -> Result<Vec<Vec<Scalar>>> {
        self.check_up_to(up_to)?;
        let n = self.hopf.dim();
        let mut rows = Vec::new();
        for (w, b) in &self.basis {
            if *w > up_to {
                continue;
            }
            for r in 0..b.len() {
                for c in 0..b.len() {
                    let row: Vec<Scalar> = (0..n).map(|i| self.rho[i][w][r][c].clone()).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        Ok(echelon(dense::kernel(&rows, n), n))
    }

    /// Basis of `(V^H)_w = {v : h·v = ε(h)v}`, in reduced echelon form.
    pub fn fixed_points(&self, w: Weight) -> Result<Vec<StateVector>> {
        self.check_up_to(w)?;
        let Some(b) = self.basis.get(&w) else {
            return Err(Error::Lattice {
                weight: w.to_string(),
                t: self.algebra.t(),
            });
        };
        let d = b.len();
        let mut rows = Vec::new();
        for i in 0..self.hopf.dim() {
            let m = &self.rho[i][&w];
            for (r, row) in m.iter().enumerate() {
                let mut row = row.clone();
                row[r] -= &self.hopf.counit[i];
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        Ok(echelon(dense::kernel(&rows, d), d)
            .into_iter()
            .map(|v| {
                StateVector::from_terms(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (b[k].clone(), c))
                        .collect(),
                )
            })
            .collect())
    }

    fn is_fixed(&self, v: &StateVector) -> bool {
        (0..self.hopf.dim()).all(|i| self.act_in(i, v) == v.scaled(&self.hopf.counit[i]))
    }

    /// Closure of the fixed points under all products landing at weight at
    /// most `up_to`, and `h(u_n w) = u_n(h w)` for fixed `u`.
    pub fn check_fixed_point_closure(&self, up_to: Weight) -> Result<Vec<ActionViolation>> {
        self.check_up_to(up_to)?;
        let alg = &self.algebra;
        let mut fixed = Vec::new();
        for w in self.weights().filter(|w| *w <= up_to).collect::<Vec<_>>() {
            fixed.extend(self.fixed_points(w)?.into_iter().map(|v| (w, v)));
        }
        let all: Vec<(Weight, StateVector)> = self
            .basis
            .iter()
            .filter(|(w, _)| **w <= up_to)
            .flat_map(|(w, b)| b.iter().map(|m| (*w, StateVector::basis(m.clone()))))
            .collect();
        let n = self.hopf.dim();
        let mut out = Vec::new();
        for (wu, u) in &fixed {
            for (wv, v) in &fixed {
                let total = *wu + *wv;
                for idx in (total - up_to - 1).ceil()..=(total - 1).floor() {
                    let p = alg.nth_product(u, idx, v);
                    if !self.is_fixed(&p) {
                        out.push(ActionViolation {
                            condition: "fixed-point-closure".into(),
                            hopf: String::new(),
                            states: vec![alg.format_state(u), alg.format_state(v)],
                            index: Some(idx),
                            weight: None,
                        });
                    }
                }
            }
            for (ww, w) in &all {
                let total = *wu + *ww;
                let images: Vec<StateVector> = (0..n).map(|i| self.act_in(i, w)).collect();
                for idx in (total - up_to - 1).ceil()..=(total - 1).floor() {
                    let p = alg.nth_product(u, idx, w);
                    for (i, hw) in images.iter().enumerate() {
                        if self.act_in(i, &p) != alg.nth_product(u, idx, hw) {
                            let mut v = self.violation(
                                "commutes-with-fixed-modes",
                                i,
                                vec![alg.format_state(u), alg.format_state(w)],
                            );
                            v.index = Some(idx);
                            out.push(v);
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn pairs(&self, up_to: Weight) -> Vec<Monomial> {
        self.basis
            .iter()
            .filter(|(w, _)| **w <= up_to)
            .flat_map(|(_, b)| b.iter().cloned())
            .collect()
    }

    /// `Σ c^{jk} (e_j a) ⊗ (e_k b)` as a map on basis pairs.
    fn tensor_action(
        &self,
        i: usize,
        a: &Monomial,
        b: &Monomial,
        swap_legs: bool,
    ) -> BTreeMap<(Monomial, Monomial), Scalar> {
        let n = self.hopf.dim();
        let mut out: BTreeMap<(Monomial, Monomial), Scalar> = BTreeMap::new();
        for j in 0..n {
            for k in 0..n {
                let c = &self.hopf.comult[i][j][k];
                if c.is_zero() {
                    continue;
                }
                let (x, y) = if swap_legs { (k, j) } else { (j, k) };
                let ea = self.act_in(x, &StateVector::basis(a.clone()));
                let eb = self.act_in(y, &StateVector::basis(b.clone()));
                for (ma, ca) in ea.iter() {
                    for (mb, cb) in eb.iter() {
                        let e = out.entry((ma.clone(), mb.clone())).or_default();
                        *e += &(&(c * ca) * cb);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Compares `τ(h·(u⊗v))` with `h·τ(u⊗v)` on basis pairs, `h` acting on
    /// tensors through `Δ`.
    pub fn check_tau_equivariance(&self, up_to: Weight) -> Result<Vec<ActionViolation>> {
        self.check_up_to(up_to)?;
        let states = self.pairs(up_to);
        let alg = &self.algebra;
        let mut out = Vec::new();
        for i in 0..self.hopf.dim() {
            for u in &states {
                for v in &states {
                    // both sides carry the same Koszul sign, since the action is even
                    let tau_h: BTreeMap<_, _> = self
                        .tensor_action(i, u, v, false)
                        .into_iter()
                        .map(|((a, b), c)| ((b, a), c))
                        .collect();
                    let h_tau = self.tensor_action(i, v, u, false);
                    if tau_h != h_tau {
                        out.push(self.violation(
                            "tau-equivariance",
                            i,
                            vec![alg.format_monomial(u), alg.format_monomial(v)],
                        ));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether the kernel vanishes, and for group algebras whether some
    /// nontrivial group element acts as the identity.
    pub fn faithfulness(&self, up_to: Weight) -> Result<Faithfulness> {
        let kernel_dim = self.kernel(up_to)?.len();
        let h = &self.hopf;
        if !h.has_grouplike_basis() {
            return Ok(Faithfulness {
                kernel_dim,
                faithful: kernel_dim == 0,
                inner_faithful: None,
                trivially_acting: Vec::new(),
                note: "not a group algebra in the given basis: only faithfulness on the truncation is checked".into(),
            });
        }
        let unit = h.unit.iter().position(|c| !c.is_zero()).expect("nonzero unit");
        let trivially_acting: Vec<String> = (0..h.dim())
            .filter(|&i| i != unit)
            .filter(|&i| {
                self.basis
                    .iter()
                    .filter(|(w, _)| **w <= up_to)
                    .all(|(w, b)| self.rho[i][w] == dense::identity(b.len()))
            })
            .map(|i| h.basis[i].clone())
            .collect();
        Ok(Faithfulness {
            kernel_dim,
            faithful: kernel_dim == 0,
            inner_faithful: Some(trivially_acting.is_empty()),
            trivially_acting,
            note: "group algebra: every nonzero Hopf ideal contains g - 1 for a nontrivial g in a normal subgroup".into(),
        })
    }

    /// Evaluates `(Δ - swap∘Δ)(h)` on `V_{≤up_to} ⊗ V_{≤up_to}` for each basis
    /// element. Requires a faithful action on the truncation.
    pub fn cocommutativity_from_action(&self, up_to: Weight) -> Result<CocommutativityVerdict> {
        let kernel = self.kernel(up_to)?;
        if !kernel.is_empty() {
            return Err(Error::Precondition(format!(
                "the action kernel at weight {up_to} has dimension {}; the action is not faithful on the truncation",
                kernel.len()
            )));
        }
        let states = self.pairs(up_to);
        let alg = &self.algebra;
        for i in 0..self.hopf.dim() {
            for u in &states {
                for v in &states {
                    if self.tensor_action(i, u, v, false) != self.tensor_action(i, u, v, true) {
                        return Ok(CocommutativityVerdict::Obstructed {
                            hopf: self.hopf.basis[i].clone(),
                            u: alg.format_monomial(u),
                            v: alg.format_monomial(v),
                        });
                    }
                }
            }
        }
        if self.hopf.is_cocommutative() {
            Ok(CocommutativityVerdict::ConsistentWithGroupAlgebra)
        } else {
            Ok(CocommutativityVerdict::Inconclusive)
        }
    }
}

/// `g(a_1(m_1) ... a_k(m_k) 1) = (g a_1)(m_1) ... (g a_k)(m_k) 1`.
fn extend_automorphism(alg: &Algebra, m: &dense::Matrix, mono: &Monomial) -> StateVector {
    let mut v = StateVector::vacuum();
    for md in mono.modes().iter().rev() {
        let mut next = StateVector::zero();
        for (b, row) in m.iter().enumerate() {
            let c = &row[md.gen as usize];
            if !c.is_zero() {
                next.add_scaled(c, &alg.apply_state(b as u32, Weight::ZERO - md.depth, &v));
            }
        }
        v = next;
    }
    v
}

fn echelon(vectors: Vec<Vec<Scalar>>, n: usize) -> Vec<Vec<Scalar>> {
    let mut e: SparseEchelon<usize> = SparseEchelon::new();
    for v in vectors {
        e.insert(
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        );
    }
    e.reduced_rows()
        .into_values()
        .map(|r| {
            let mut v = vec![Scalar::zero(); n];
            for (k, c) in r {
                v[k] = c;
            }
            v
        })
        .collect()
}

/// Outcome of the exhaustive search for Sweedler actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweedlerSearch {
    pub algebra: String,
    pub cutoff: Weight,
    pub entries: Vec<i64>,
    pub candidates: u64,
    pub representations: u64,
    pub valid_actions: u64,
    pub faithful_representations: u64,
    pub valid_and_faithful: u64,
}

/// Enumerates every pair of block matrices for `g` and `x` on the weight
/// spaces of `V_{≤cutoff}` with entries in `entries`, keeps those satisfying
/// `g² = 1`, `x² = 0`, `xg = -gx`, and counts which of them pass
/// [`Action::verify`] and which are faithful. `1` acts as the identity and
/// `gx` as the composite.
pub fn sweedler_search(algebra_name: &str, cutoff: Weight, entries: &[i64]) -> Result<SweedlerSearch> {
    let hopf = fixtures::hopf("hopf-sweedler")?;
    let alg = fixtures::algebra(algebra_name)?;
    let weights = cutoff.lattice_up_to(alg.t());
    let dims: Vec<usize> = weights.iter().map(|w| alg.basis_at(*w).len()).collect();
    let slots: usize = dims.iter().map(|d| d * d).sum::<usize>() * 2;
    let values: Vec<Scalar> = entries.iter().map(|&e| Scalar::from_int(e)).collect();
    let total = (values.len() as u64).pow(slots as u32);
    let mut report = SweedlerSearch {
        algebra: algebra_name.into(),
        cutoff,
        entries: entries.to_vec(),
        candidates: total,
        representations: 0,
        valid_actions: 0,
        faithful_representations: 0,
        valid_and_faithful: 0,
    };
    let mut digits = vec![0usize; slots];
    for _ in 0..total {
        let mut pos = 0;
        let mut take = |d: usize| -> dense::Matrix {
            let mut m = dense::zeros(d, d);
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = values[digits[pos]].clone();
                    pos += 1;
                }
            }
            m
        };
        let g: Vec<dense::Matrix> = dims.iter().map(|&d| take(d)).collect();
        let x: Vec<dense::Matrix> = dims.iter().map(|&d| take(d)).collect();
        let is_rep = dims.iter().enumerate().all(|(k, &d)| {
            let gg = dense::mul(&g[k], &g[k]);
            let xx = dense::mul(&x[k], &x[k]);
            let mut anti = dense::mul(&x[k], &g[k]);
            dense::add_scaled(&mut anti, &Scalar::one(), &dense::mul(&g[k], &x[k]));
            gg == dense::identity(d) && dense::is_zero(&xx) && dense::is_zero(&anti)
        });
        if is_rep {
            report.representations += 1;
            let mut rho = vec![BTreeMap::new(); 4];
            for (k, w) in weights.iter().enumerate() {
                rho[0].insert(*w, dense::identity(dims[k]));
                rho[1].insert(*w, g[k].clone());
                rho[2].insert(*w, x[k].clone());
                rho[3].insert(*w, dense::mul(&g[k], &x[k]));
            }
            let action = Action::from_parts(hopf.clone(), alg.clone(), cutoff, rho)?;
            let valid = action.verify(cutoff)?.is_empty();
            let faithful = action.kernel(cutoff)?.is_empty();
            report.valid_actions += valid as u64;
            report.faithful_representations += faithful as u64;
            report.valid_and_faithful += (valid && faithful) as u64;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < values.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::IdealMode;

    fn action(name: &str) -> Action {
        Action::new(&fixtures::action_spec(name).unwrap()).unwrap()
    }

    #[test]
    fn fixture_actions_verify() {
        for name in fixtures::ACTION_NAMES {
            let a = action(name);
            assert!(a.verify(a.cutoff).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn kernels() {
        let sigma = action("sigma-ns-1/2");
        assert!(sigma.kernel(sigma.cutoff).unwrap().is_empty());
        let triv = action("trivial-z2-ns-1/2");
        let k = triv.kernel(triv.cutoff).unwrap();
        assert_eq!(k, vec![vec![Scalar::one(), -Scalar::one()]]);
        let through = action("z2z2-through-z2");
        let k = through.kernel(through.cutoff).unwrap();
        assert_eq!(k.len(), 2);
        for mode in [IdealMode::Bialgebra, IdealMode::Hopf] {
            assert!(through.hopf.verify_ideal(&k, mode).unwrap().is_empty());
        }
        let sw = action("sweedler-freediff-(2|0)");
        let k = sw.kernel(sw.cutoff).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(sw.hopf.format_element(&k[0]), "x + gx");
    }

    #[test]
    fn fixed_points_of_sigma() {
        let a = action("sigma-ns-1/2");
        assert!(a.fixed_points(Weight::new(3, 2)).unwrap().is_empty());
        assert_eq!(a.fixed_points(Weight::int(4)).unwrap().len(), 3);
        assert!(a.check_fixed_point_closure(Weight::int(4)).unwrap().is_empty());
        let s = action("swap-freediff-(2|0)");
        assert_eq!(s.fixed_points(Weight::int(2)).unwrap().len(), 3);
        assert!(s.check_fixed_point_closure(Weight::int(3)).unwrap().is_empty());
    }

    #[test]
    fn tau_and_cocommutativity() {
        let a = action("sigma-ns-1/2");
        assert!(a.check_tau_equivariance(Weight::int(2)).unwrap().is_empty());
        assert_eq!(
            a.cocommutativity_from_action(Weight::int(2)).unwrap(),
            CocommutativityVerdict::ConsistentWithGroupAlgebra
        );
        let sw = action("sweedler-freediff-(2|0)");
        let r = sw.check_tau_equivariance(sw.cutoff).unwrap();
        assert!(r.iter().any(|v| v.hopf == "x"));
        assert!(matches!(
            sw.cocommutativity_from_action(sw.cutoff),
            Err(Error::Precondition(_))
        ));
        let triv = action("sweedler-trivial-freediff-(2|0)");
        assert!(triv.check_tau_equivariance(triv.cutoff).unwrap().is_empty());
    }

    #[test]
    fn broken_actions_are_caught() {
        let mut spec = fixtures::action_spec("swap-freediff-(2|0)").unwrap();
        if let ActionSource::Automorphisms(m) = &mut spec.source {
            let g = m.get_mut("g").unwrap();
            g[1][0] = Scalar::from_int(2);
        }
        let a = Action::new(&spec).unwrap();
        let r = a.verify(a.cutoff).unwrap();
        assert!(r.iter().any(|v| v.condition == "representation"));
    }

    #[test]
    fn faithfulness_of_group_actions() {
        let f = action("z2z2-through-z2").faithfulness(Weight::int(3)).unwrap();
        assert_eq!(f.inner_faithful, Some(false));
        assert_eq!(f.trivially_acting, ["ab"]);
        let s3 = action("perm-s3-freediff-(3|0)").faithfulness(Weight::int(1)).unwrap();
        assert_eq!(s3.inner_faithful, Some(true));
    }

    #[test]
    fn json_round_trip() {
        for name in ["sigma-ns-1/2", "sweedler-freediff-(2|0)"] {
            let spec = fixtures::action_spec(name).unwrap();
            assert_eq!(ActionSpec::from_json(&spec.to_json()).unwrap(), spec);
        }
    }
}

//! Finite-dimensional Lie superalgebras given by structure constants, with an
//! even supersymmetric invariant bilinear form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};
use crate::scalar::{Parity, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub id: String,
    pub parity: Parity,
}

/// A rational combination of basis indices.
pub type Combination = BTreeMap<usize, Scalar>;

/// Structure constants `[x_i, x_j] = Σ c_k x_k` (stored for `i ≤ j` only) and
/// form values `(x_i, x_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperalgebraSpec {
    pub name: String,
    pub basis: Vec<BasisElement>,
    brackets: BTreeMap<(usize, usize), Combination>,
    form: BTreeMap<(usize, usize), Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LieAxiom {
    SuperAntisymmetry,
    BracketParity,
    SuperJacobi,
    FormParity,
    FormSupersymmetry,
    FormInvariance,
}

/// One violated axiom together with the basis indices witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LieViolation {
    pub axiom: LieAxiom,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl LieSuperalgebraSpec {
    pub fn new(name: impl Into<String>, basis: Vec<BasisElement>) -> Self {
        LieSuperalgebraSpec {
            name: name.into(),
            basis,
            brackets: BTreeMap::new(),
            form: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::Index {
                what: "Lie superalgebra basis",
                index: i,
                len: self.dim(),
            })
        }
    }

    /// Sets `[x_i, x_j]` for `i ≤ j`; the opposite order is derived.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Combination) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        for &k in value.keys() {
            self.check_index(k)?;
        }
        if i > j {
            return Err(Error::Invalid(format!(
                "bracket ({i},{j}) must be given with i <= j"
            )));
        }
        let value: Combination = value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if value.is_empty() {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), value);
        }
        Ok(())
    }

    pub fn set_form(&mut self, i: usize, j: usize, value: Scalar) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if value.is_zero() {
            self.form.remove(&(i, j));
        } else {
            self.form.insert((i, j), value);
        }
        Ok(())
    }

    /// `[x_i, x_j]`, using super-antisymmetry for `i > j`.
    pub fn bracket(&self, i: usize, j: usize) -> Combination {
        if i <= j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let sign = -Scalar::from_int(self.parity(i).koszul(self.parity(j)));
            self.brackets
                .get(&(j, i))
                .map(|c| c.iter().map(|(k, x)| (*k, &sign * x)).collect())
                .unwrap_or_default()
        }
    }

    pub fn form(&self, i: usize, j: usize) -> Scalar {
        self.form.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn gram(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.form(i, j)).collect())
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::rank(&SparseMatrix::from_dense(&self.gram())) == self.dim()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.id == id)
    }

    /// Raw stored bracket entries (i ≤ j).
    pub fn stored_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Combination)> {
        self.brackets.iter()
    }

    pub fn stored_form(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.form.iter()
    }

    fn bracket_comb(&self, a: &Combination, b: &Combination) -> Combination {
        let mut out = Combination::new();
        for (i, x) in a {
            for (j, y) in b {
                let c = x * y;
                for (k, z) in self.bracket(*i, *j) {
                    add_into(&mut out, k, &(&c * &z));
                }
            }
        }
        out
    }

    fn form_comb(&self, a: &Combination, b: &Combination) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, x) in a {
            for (j, y) in b {
                let f = self.form(*i, *j);
                if !f.is_zero() {
                    acc += &(&(x * y) * &f);
                }
            }
        }
        acc
    }

    /// Checks every axiom on basis pairs and triples. An empty report means
    /// the structure constants define a Lie superalgebra and the form is even,
    /// supersymmetric and invariant. Nondegeneracy is not required.
    pub fn validate(&self) -> Result<Vec<LieViolation>> {
        for (&(i, j), comb) in &self.brackets {
            self.check_index(i)?;
            self.check_index(j)?;
            for &k in comb.keys() {
                self.check_index(k)?;
            }
        }
        for &(i, j) in self.form.keys() {
            self.check_index(i)?;
            self.check_index(j)?;
        }
        let n = self.dim();
        let mut out = Vec::new();
        let unit = |i: usize| -> Combination { [(i, Scalar::one())].into_iter().collect() };
        for i in 0..n {
            if !self.parity(i).is_odd() && !self.bracket(i, i).is_empty() {
                out.push(LieViolation {
                    axiom: LieAxiom::SuperAntisymmetry,
                    witness: vec![i, i],
                    detail: format!("[{0},{0}] must vanish for an even element", self.basis[i].id),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let p = self.parity(i) + self.parity(j);
                for k in self.bracket(i, j).keys() {
                    if self.parity(*k) != p {
                        out.push(LieViolation {
                            axiom: LieAxiom::BracketParity,
                            witness: vec![i, j, *k],
                            detail: "bracket term of the wrong parity".into(),
                        });
                    }
                }
                let f = self.form(i, j);
                if !f.is_zero() && self.parity(i) != self.parity(j) {
                    out.push(LieViolation {
                        axiom: LieAxiom::FormParity,
                        witness: vec![i, j],
                        detail: "form pairs even with odd".into(),
                    });
                }
                let swapped = &Scalar::from_int(self.parity(i).koszul(self.parity(j)))
                    * &self.form(j, i);
                if f != swapped {
                    out.push(LieViolation {
                        axiom: LieAxiom::FormSupersymmetry,
                        witness: vec![i, j],
                        detail: format!("({i},{j}) = {f} but sign·({j},{i}) = {swapped}"),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xy = self.bracket(i, j);
                for k in 0..n {
                    // ([x,y],z) = (x,[y,z])
                    let lhs = self.form_comb(&xy, &unit(k));
                    let rhs = self.form_comb(&unit(i), &self.bracket(j, k));
                    if lhs != rhs {
                        out.push(LieViolation {
                            axiom: LieAxiom::FormInvariance,
                            witness: vec![i, j, k],
                            detail: format!("([x,y],z) = {lhs}, (x,[y,z]) = {rhs}"),
                        });
                    }
                    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                    let a = self.bracket_comb(&unit(i), &self.bracket(j, k));
                    let mut b = self.bracket_comb(&xy, &unit(k));
                    let s = Scalar::from_int(self.parity(i).koszul(self.parity(j)));
                    for (l, x) in self.bracket_comb(&unit(j), &self.bracket(i, k)) {
                        add_into(&mut b, l, &(&s * &x));
                    }
                    if a != b {
                        out.push(LieViolation {
                            axiom: LieAxiom::SuperJacobi,
                            witness: vec![i, j, k],
                            detail: "super Jacobi identity fails".into(),
                        });
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let brackets: serde_json::Map<String, serde_json::Value> = self
            .brackets
            .iter()
            .map(|((i, j), c)| {
                let terms: Vec<serde_json::Value> = c
                    .iter()
                    .map(|(k, x)| serde_json::json!({"k": k, "c": x.to_string()}))
                    .collect();
                (format!("{i},{j}"), serde_json::Value::Array(terms))
            })
            .collect();
        let form: serde_json::Map<String, serde_json::Value> = self
            .form
            .iter()
            .map(|((i, j), x)| (format!("{i},{j}"), serde_json::Value::String(x.to_string())))
            .collect();
        serde_json::json!({
            "name": self.name,
            "T": 1,
            "basis": self.basis,
            "brackets": brackets,
            "form": form,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            k: usize,
            c: Scalar,
        }
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            #[serde(rename = "T", default = "one")]
            t: i64,
            basis: Vec<BasisElement>,
            #[serde(default)]
            brackets: BTreeMap<String, Vec<Term>>,
            #[serde(default)]
            form: BTreeMap<String, Scalar>,
        }
        fn one() -> i64 {
            1
        }
        let raw: Raw =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.t != 1 {
            return Err(Error::Invalid(format!(
                "Lie superalgebra specs are integrally graded; got T = {}",
                raw.t
            )));
        }
        let mut spec = LieSuperalgebraSpec::new(raw.name, raw.basis);
        for (key, terms) in raw.brackets {
            let (i, j) = parse_pair(&key)?;
            let mut comb = Combination::new();
            for t in terms {
                add_into(&mut comb, t.k, &t.c);
            }
            spec.set_bracket(i, j, comb)?;
        }
        for (key, x) in raw.form {
            let (i, j) = parse_pair(&key)?;
            spec.set_form(i, j, x)?;
        }
        Ok(spec)
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("expected \"i,j\", got {key:?}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

pub(crate) fn add_into<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, x: &Scalar) {
    if x.is_zero() {
        return;
    }
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// The abelian superalgebra `𝔥 ⊕ 𝔥̄` with the nondegenerate pairing
/// `(e_i, ē_j) = (ē_j, e_i) = δ_ij` on even generators and
/// `(f_i, f̄_j) = -(f̄_j, f_i) = δ_ij` on odd ones. Basis order: the copy of
/// 𝔥 first, then the barred copy.
pub fn heisenberg_double(h: &[(String, Parity)]) -> LieSuperalgebraSpec {
    let n = h.len();
    let mut basis: Vec<BasisElement> = h
        .iter()
        .map(|(id, p)| BasisElement {
            id: id.clone(),
            parity: *p,
        })
        .collect();
    basis.extend(h.iter().map(|(id, p)| BasisElement {
        id: format!("{id}_bar"),
        parity: *p,
    }));
    let name = format!(
        "heisenberg-double-({}|{})",
        h.iter().filter(|(_, p)| !p.is_odd()).count(),
        h.iter().filter(|(_, p)| p.is_odd()).count()
    );
    let mut spec = LieSuperalgebraSpec::new(name, basis);
    for (i, (_, p)) in h.iter().enumerate() {
        spec.set_form(i, n + i, Scalar::one()).expect("in range");
        let back = if p.is_odd() {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        spec.set_form(n + i, i, back).expect("in range");
    }
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(id: &str, parity: Parity) -> LieSuperalgebraSpec {
        LieSuperalgebraSpec::new(
            "one",
            vec![BasisElement {
                id: id.into(),
                parity,
            }],
        )
    }

    #[test]
    fn even_abelian_line_is_valid() {
        let mut s = single("x", Parity::Even);
        s.set_form(0, 0, Scalar::one()).unwrap();
        assert!(s.validate().unwrap().is_empty());
    }

    #[test]
    fn odd_line_with_nonzero_norm_breaks_supersymmetry() {
        let mut s = single("f", Parity::Odd);
        s.set_form(0, 0, Scalar::one()).unwrap();
        let r = s.validate().unwrap();
        assert!(r.iter().any(|v| v.axiom == LieAxiom::FormSupersymmetry));
    }

    #[test]
    fn doubles() {
        let d = heisenberg_double(&[("e".into(), Parity::Even)]);
        assert_eq!(
            d.gram(),
            vec![
                vec![Scalar::zero(), Scalar::one()],
                vec![Scalar::one(), Scalar::zero()]
            ]
        );
        let d = heisenberg_double(&[("f".into(), Parity::Odd)]);
        assert_eq!(
            d.gram(),
            vec![
                vec![Scalar::zero(), Scalar::one()],
                vec![-Scalar::one(), Scalar::zero()]
            ]
        );
        assert!(d.validate().unwrap().is_empty());
        let d = heisenberg_double(&[("e".into(), Parity::Even), ("f".into(), Parity::Odd)]);
        assert!(d.validate().unwrap().is_empty());
        assert!(d.is_nondegenerate());
        assert_eq!(heisenberg_double(&[]).dim(), 0);
    }

    #[test]
    fn structural_errors_are_not_violations() {
        let mut s = single("x", Parity::Even);
        assert!(s.set_form(0, 3, Scalar::one()).is_err());
        assert!(s
            .set_bracket(0, 0, [(5, Scalar::one())].into_iter().collect())
            .is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = heisenberg_double(&[("e".into(), Parity::Even), ("f".into(), Parity::Odd)]);
        let back = LieSuperalgebraSpec::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }
}

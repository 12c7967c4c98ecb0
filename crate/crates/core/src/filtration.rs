//! The standard filtration `E_p(V)` by sums of generator degrees, its
//! associated graded algebra, and the PBW certificate `gr_E(V) ≅ F(𝔥)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraSpec, FreeGenerator, Mode, Monomial, StateVector};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::scalar::{Parity, Scalar, Weight};
use crate::vertex::Violation;

/// A class in `E_p(V) / E_{p-1/T}(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrElement {
    pub rep: StateVector,
    pub level: Weight,
}

impl Algebra {
    /// The least `p` with `v ∈ E_p(V)`.
    pub fn filtration_level(&self, v: &StateVector) -> Result<Weight> {
        v.iter()
            .map(|(m, _)| self.level_of(m))
            .max()
            .ok_or_else(|| Error::Invalid("the zero vector has no filtration level".into()))
    }

    /// Terms of `v` of level exactly `p`.
    pub fn level_part(&self, v: &StateVector, p: Weight) -> StateVector {
        StateVector::from_terms(
            v.iter()
                .filter(|(m, _)| self.level_of(m) == p)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn gr_class(&self, v: &StateVector, level: Weight) -> GrElement {
        GrElement {
            rep: self.level_part(v, level),
            level,
        }
    }

    /// `(u + E_{p-1/T})_(n) (v + E_{q-1/T}) = u_(n) v + E_{p+q-1/T}`
    pub fn gr_product(&self, u: &GrElement, n: i64, v: &GrElement) -> GrElement {
        let level = u.level + v.level;
        let prod = self.nth_product(&u.rep, n, &v.rep);
        self.gr_class(&prod, level)
    }

    /// Checks on all basis pairs of weight at most `up_to` that products with
    /// `n ≥ 0` vanish in `gr_E(V)` and that the `(-1)`-product is
    /// supercommutative.
    pub fn check_gr_commutative(&self, up_to: Weight) -> Vec<Violation> {
        let basis = self.basis_up_to(up_to);
        let mut out = Vec::new();
        for x in &basis {
            let gx = GrElement {
                rep: StateVector::basis(x.clone()),
                level: self.level_of(x),
            };
            for y in &basis {
                let gy = GrElement {
                    rep: StateVector::basis(y.clone()),
                    level: self.level_of(y),
                };
                let top = (x.weight() + y.weight() - 1).floor();
                for n in 0..=top {
                    let r = self.gr_product(&gx, n, &gy);
                    if !r.rep.is_zero() {
                        out.push(Violation {
                            states: vec![x.clone(), y.clone()],
                            indices: vec![n],
                            difference: r.rep,
                        });
                    }
                }
                let s = if self.parity_of(x).is_odd() && self.parity_of(y).is_odd() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let lhs = self.gr_product(&gx, -1, &gy).rep;
                let rhs = self.gr_product(&gy, -1, &gx).rep.scaled(&s);
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    out.push(Violation {
                        states: vec![x.clone(), y.clone()],
                        indices: vec![-1],
                        difference: d,
                    });
                }
            }
        }
        out
    }

    /// All creation-mode words of weight exactly `w`, in any order, with
    /// their filtration levels.
    fn words(&self, w: Weight) -> Vec<(Vec<Mode>, Weight)> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_words(w, &mut cur, &mut out);
        out
    }

    fn extend_words(&self, remaining: Weight, cur: &mut Vec<Mode>, out: &mut Vec<(Vec<Mode>, Weight)>) {
        if remaining.is_zero() {
            let level = cur.iter().map(|m| self.gens[m.gen as usize].degree).sum();
            out.push((cur.clone(), level));
            return;
        }
        for (g, gen) in self.gens.iter().enumerate() {
            let mut depth = gen.degree;
            while depth <= remaining {
                cur.push(Mode {
                    gen: g as u32,
                    depth,
                });
                self.extend_words(remaining - depth, cur, out);
                cur.pop();
                depth = depth + 1;
            }
        }
    }

    /// Dimensions of `gr_E(V)` per (level, weight, parity) up to weight
    /// `up_to`, computed from the spans of all iterated generator-field
    /// products (words of creation modes in arbitrary order, straightened).
    pub fn gr_dimensions(&self, up_to: Weight) -> BTreeMap<(Weight, Weight, Parity), usize> {
        let mut out = BTreeMap::new();
        for w in up_to.lattice_up_to(self.t) {
            let mut words = self.words(w);
            words.sort_by_key(|a| a.1);
            let mut spans: BTreeMap<Parity, SparseEchelon<Monomial>> = BTreeMap::new();
            for (word, level) in words {
                let mut v = StateVector::vacuum();
                for md in word.iter().rev() {
                    v = self.apply_state(md.gen, Weight(-md.depth.0), &v);
                }
                if v.is_zero() {
                    continue;
                }
                let parity = word
                    .iter()
                    .fold(Parity::Even, |p, m| p + self.gens[m.gen as usize].parity);
                if spans.entry(parity).or_default().insert(v.into_terms()) {
                    *out.entry((level, w, parity)).or_insert(0) += 1;
                }
            }
        }
        out
    }

    /// Builds and checks the PBW certificate against `F(𝔥)` with the given
    /// generators, matched to this algebra's generators in order.
    pub fn pbw_certificate(&self, h: &[(String, Parity, Weight)], up_to: Weight) -> Result<PbwCertificate> {
        if h.len() != self.gens.len() {
            return Err(Error::Correspondence(format!(
                "{} generators in the candidate space, {} strong generators",
                h.len(),
                self.gens.len()
            )));
        }
        for ((id, p, d), g) in h.iter().zip(&self.gens) {
            if *p != g.parity || *d != g.degree {
                return Err(Error::Correspondence(format!(
                    "{id} ({p}, degree {d}) cannot correspond to {} ({}, degree {})",
                    g.id, g.parity, g.degree
                )));
            }
        }
        let free = Algebra::new(&AlgebraSpec::FreeDifferential {
            generators: h
                .iter()
                .map(|(id, parity, degree)| FreeGenerator {
                    id: id.clone(),
                    parity: *parity,
                    degree: Some(*degree),
                })
                .collect(),
        })?;

        // (a) bigraded dimensions
        let mine = self.gr_dimensions(up_to);
        let mut theirs: BTreeMap<(Weight, Weight, Parity), usize> = BTreeMap::new();
        for m in free.basis_up_to(up_to) {
            *theirs
                .entry((free.level_of(&m), m.weight(), free.parity_of(&m)))
                .or_insert(0) += 1;
        }
        let mut dims = CheckStatus::default();
        let keys: std::collections::BTreeSet<_> = mine.keys().chain(theirs.keys()).cloned().collect();
        for k in keys {
            dims.checked += 1;
            let (a, b) = (
                mine.get(&k).copied().unwrap_or(0),
                theirs.get(&k).copied().unwrap_or(0),
            );
            if a != b {
                dims.fail(format!(
                    "level {} weight {} {}: gr_E(V) has {a}, F has {b}",
                    k.0, k.1, k.2
                ));
            }
        }

        // (b) φ sends F-monomials to the classes of the same mode words; it
        // must be bijective on each bidegree and multiplicative
        let phi = |m: &Monomial| -> GrElement {
            let mut v = StateVector::vacuum();
            for md in m.modes().iter().rev() {
                v = self.apply_state(md.gen, Weight(-md.depth.0), &v);
            }
            self.gr_class(&v, free.level_of(m))
        };
        let phi_state = |v: &StateVector, level: Weight| -> StateVector {
            let mut out = StateVector::zero();
            for (m, c) in v.iter() {
                out.add_scaled(c, &phi(m).rep);
            }
            self.level_part(&out, level)
        };
        let fbasis = free.basis_up_to(up_to);
        let mut products = CheckStatus::default();
        let mut images: BTreeMap<(Weight, Weight), SparseEchelon<Monomial>> = BTreeMap::new();
        for m in &fbasis {
            products.checked += 1;
            let img = phi(m);
            let fresh = images
                .entry((img.level, m.weight()))
                .or_default()
                .insert(img.rep.clone().into_terms());
            if !fresh {
                products.fail(format!(
                    "image of {} is dependent on earlier images",
                    free.format_monomial(m)
                ));
            }
        }
        for x in &fbasis {
            for y in &fbasis {
                if x.weight() + y.weight() > up_to {
                    continue;
                }
                products.checked += 1;
                let level = free.level_of(x) + free.level_of(y);
                let fxy = free.nth_product(
                    &StateVector::basis(x.clone()),
                    -1,
                    &StateVector::basis(y.clone()),
                );
                let lhs = phi_state(&fxy, level);
                let rhs = self.gr_product(&phi(x), -1, &phi(y)).rep;
                if lhs != rhs {
                    products.fail(format!(
                        "φ({}·{}) differs from the gr product",
                        free.format_monomial(x),
                        free.format_monomial(y)
                    ));
                }
            }
        }

        // (c) 𝒟 on gr_E(V) against ∂ on F
        let mut derivation = CheckStatus::default();
        for m in &fbasis {
            if m.weight() + 1 > up_to {
                continue;
            }
            derivation.checked += 1;
            let level = free.level_of(m);
            let lhs = phi_state(&free.translation(&StateVector::basis(m.clone())), level);
            let rhs = self.level_part(&self.translation(&phi(m).rep), level);
            if lhs != rhs {
                derivation.fail(format!("𝒟φ({0}) ≠ φ(∂{0})", free.format_monomial(m)));
            }
        }
        let passed = dims.passed && products.passed && derivation.passed;
        Ok(PbwCertificate {
            up_to,
            dims,
            products,
            derivation,
            passed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckStatus {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl Default for CheckStatus {
    fn default() -> Self {
        CheckStatus {
            passed: true,
            checked: 0,
            witness: None,
        }
    }
}

impl CheckStatus {
    fn fail(&mut self, why: String) {
        if self.passed {
            self.witness = Some(why);
        }
        self.passed = false;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwCertificate {
    pub up_to: Weight,
    pub dims: CheckStatus,
    pub products: CheckStatus,
    pub derivation: CheckStatus,
    pub passed: bool,
}

/// Dimensions of the pieces `E_p ∩ V_w / E_{p-1/T} ∩ V_w`, summed over
/// parity.
pub fn gr_table(dims: &BTreeMap<(Weight, Weight, Parity), usize>) -> BTreeMap<(Weight, Weight), usize> {
    let mut out = BTreeMap::new();
    for ((p, w, _), d) in dims {
        *out.entry((*p, *w)).or_insert(0) += d;
    }
    out
}

/// `Σ_{p1+p2=p, w1+w2=w} a(p1,w1)·b(p2,w2)`, truncated at weight `up_to`.
pub fn convolve(
    a: &BTreeMap<(Weight, Weight), usize>,
    b: &BTreeMap<(Weight, Weight), usize>,
    up_to: Weight,
) -> BTreeMap<(Weight, Weight), usize> {
    let mut out = BTreeMap::new();
    for ((p1, w1), x) in a {
        for ((p2, w2), y) in b {
            if *w1 + *w2 <= up_to {
                *out.entry((*p1 + *p2, *w1 + *w2)).or_insert(0) += x * y;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn levels() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        assert_eq!(h.filtration_level(&StateVector::vacuum()).unwrap(), Weight::ZERO);
        let v = h.parse_state("x(-3)x(-1).1").unwrap();
        assert_eq!(h.filtration_level(&v).unwrap(), Weight::int(2));
        assert!(h.filtration_level(&StateVector::zero()).is_err());
        let ns = fixtures::algebra("ns-1/2").unwrap();
        let v = ns.parse_state("L(-2)G(-3/2).1").unwrap();
        assert_eq!(ns.filtration_level(&v).unwrap(), Weight::new(7, 2));
    }

    #[test]
    fn gr_products() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let x = h.gr_class(&h.parse_state("x(-1).1").unwrap(), Weight::int(1));
        let xx = h.gr_product(&x, -1, &x);
        assert_eq!(xx.level, Weight::int(2));
        assert_eq!(xx.rep, h.parse_state("x(-1)x(-1).1").unwrap());
        assert!(h.gr_product(&x, 1, &x).rep.is_zero());
        let one = h.gr_class(&StateVector::vacuum(), Weight::ZERO);
        assert_eq!(h.gr_product(&one, -1, &x), x);
    }

    #[test]
    fn gr_is_commutative() {
        for name in ["heisenberg-k1", "ns-1/2", "freediff-(1|1)", "affine-sl2"] {
            let a = fixtures::algebra(name).unwrap();
            assert!(a.check_gr_commutative(Weight::int(3)).is_empty(), "{name}");
        }
    }

    #[test]
    fn certificates() {
        let free = fixtures::algebra("freediff-(1|1)").unwrap();
        let h: Vec<_> = free
            .generators()
            .iter()
            .map(|g| (g.id.clone(), g.parity, g.degree))
            .collect();
        assert!(free.pbw_certificate(&h, Weight::int(3)).unwrap().passed);

        let ns = fixtures::algebra("ns-1/2").unwrap();
        let h = vec![
            ("x".to_string(), Parity::Even, Weight::int(2)),
            ("y".to_string(), Parity::Odd, Weight::new(3, 2)),
        ];
        let cert = ns.pbw_certificate(&h, Weight::new(7, 2)).unwrap();
        assert!(cert.passed, "{cert:?}");
        let wrong = vec![
            ("x".to_string(), Parity::Odd, Weight::int(2)),
            ("y".to_string(), Parity::Odd, Weight::new(3, 2)),
        ];
        assert!(ns.pbw_certificate(&wrong, Weight::int(2)).is_err());
    }
}

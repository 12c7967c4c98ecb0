//! Y(z)-injectivity on graded truncations: the coefficient matrix of
//! `u ⊗ v ↦ (u_(s) v)_s` restricted to `V_{≤N} ⊗ V_{≤N}`, certified by rank.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Algebra, Monomial, StateVector};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseEchelon, SparseMatrix};
use crate::scalar::{Scalar, Weight};

/// Closure rounds allowed before a generated subalgebra is declared unstable.
pub const CLOSURE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Injective,
    Undetermined,
}

/// The assembled coefficient matrix with its row and column labels.
#[derive(Clone, Debug)]
pub struct YzMatrix {
    pub matrix: SparseMatrix,
    /// pairs of domain-basis indices
    pub columns: Vec<(usize, usize)>,
    /// (mode index, target monomial)
    pub rows: Vec<(i64, Monomial)>,
    pub output_cutoff: Weight,
}

#[derive(Clone, Debug)]
pub struct InjectivityCertificate {
    pub domain_cutoff: Weight,
    pub window_extra: u64,
    pub max_window: u64,
    pub output_cutoff: Weight,
    /// basis of the domain factor; the domain is its tensor square
    pub domain: Vec<StateVector>,
    pub domain_dim: usize,
    pub rank: usize,
    pub status: Status,
    /// kernel of the widest matrix, as combinations of column pairs
    pub kernel_candidates: Vec<BTreeMap<(usize, usize), Scalar>>,
    /// for generated subalgebras: whether all products with `n ≥ 0` vanish
    pub nonneg_products_vanish: Option<bool>,
}

/// Output weight bound for a window: `max(2N - 1, 0) + window_extra / T`.
pub fn output_cutoff(alg: &Algebra, n: Weight, window_extra: u64) -> Weight {
    let base = Weight((n + n - 1).0.max(0.into()));
    base + Weight::new(window_extra as i64, alg.t())
}

/// Default `max_window = 2·N·T`.
pub fn default_max_window(alg: &Algebra, n: Weight) -> u64 {
    let w = n.0 * num_rational::Rational64::from_integer(2 * alg.t());
    w.ceil().to_integer().max(0) as u64
}

fn basis_states(alg: &Algebra, n: Weight) -> Vec<StateVector> {
    alg.basis_up_to(n).into_iter().map(StateVector::basis).collect()
}

fn assemble<F>(domain: &[StateVector], cutoff: Weight, mut coeff: F) -> YzMatrix
where
    F: FnMut(&StateVector, &StateVector, Weight) -> BTreeMap<i64, StateVector>,
{
    let mut columns = Vec::new();
    let mut entries: Vec<((i64, Monomial), usize, Scalar)> = Vec::new();
    for (i, u) in domain.iter().enumerate() {
        for (j, v) in domain.iter().enumerate() {
            let col = columns.len();
            columns.push((i, j));
            for (s, x) in coeff(u, v, cutoff) {
                for (m, c) in x.iter() {
                    if m.weight() <= cutoff {
                        entries.push(((s, m.clone()), col, c.clone()));
                    }
                }
            }
        }
    }
    let mut rows: Vec<(i64, Monomial)> = entries.iter().map(|e| e.0.clone()).collect();
    rows.sort();
    rows.dedup();
    let index: BTreeMap<&(i64, Monomial), usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut matrix = SparseMatrix::new(rows.len(), columns.len());
    for (r, col, c) in &entries {
        matrix.add_to(index[r], *col, c);
    }
    YzMatrix {
        matrix,
        columns,
        rows,
        output_cutoff: cutoff,
    }
}

impl Algebra {
    /// The Y(z) coefficient matrix on `V_{≤N} ⊗ V_{≤N}`.
    pub fn build_yz_matrix(&self, n: Weight, window_extra: u64) -> YzMatrix {
        let domain = basis_states(self, n);
        self.yz_matrix_on(&domain, n, window_extra)
    }

    fn yz_matrix_on(&self, domain: &[StateVector], n: Weight, window_extra: u64) -> YzMatrix {
        let cutoff = output_cutoff(self, n, window_extra);
        assemble(domain, cutoff, |u, v, c| self.vertex_operator(u, v, c).coeffs)
    }

    /// The same matrix for `gr_E(V)`, with products taken in the associated
    /// graded algebra.
    pub fn build_gr_yz_matrix(&self, n: Weight, window_extra: u64) -> YzMatrix {
        let domain = basis_states(self, n);
        let cutoff = output_cutoff(self, n, window_extra);
        assemble(&domain, cutoff, |u, v, c| {
            let (x, y) = (u.iter().next().unwrap().0, v.iter().next().unwrap().0);
            let level = self.level_of(x) + self.level_of(y);
            self.vertex_operator(u, v, c)
                .coeffs
                .into_iter()
                .map(|(s, w)| (s, self.level_part(&w, level)))
                .collect()
        })
    }

    fn certify_on(&self, domain: Vec<StateVector>, n: Weight, max_window: Option<u64>) -> InjectivityCertificate {
        let max_window = max_window.unwrap_or_else(|| default_max_window(self, n));
        let domain_dim = domain.len() * domain.len();
        let mut extra = 0;
        loop {
            let m = self.yz_matrix_on(&domain, n, extra);
            let rank = linalg::rank(&m.matrix);
            if rank == domain_dim || extra >= max_window {
                let status = if rank == domain_dim {
                    Status::Injective
                } else {
                    Status::Undetermined
                };
                let kernel_candidates = if status == Status::Undetermined {
                    linalg::kernel_basis(&m.matrix)
                        .into_iter()
                        .map(|v| {
                            v.into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(i, c)| (m.columns[i], c))
                                .collect()
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                return InjectivityCertificate {
                    domain_cutoff: n,
                    window_extra: extra,
                    max_window,
                    output_cutoff: m.output_cutoff,
                    domain,
                    domain_dim,
                    rank,
                    status,
                    kernel_candidates,
                    nonneg_products_vanish: None,
                };
            }
            extra += 1;
        }
    }

    /// Widens the output window until the matrix has full column rank or
    /// `max_window` (default `2·N·T`) is exhausted.
    pub fn certify(&self, n: Weight, max_window: Option<u64>) -> Result<InjectivityCertificate> {
        if n.is_negative() || !n.on_lattice(self.t()) {
            return Err(Error::Lattice {
                weight: n.to_string(),
                t: self.t(),
            });
        }
        Ok(self.certify_on(basis_states(self, n), n, max_window))
    }

    /// Spanning set of the subalgebra generated by `generators`, truncated at
    /// weight `n`: the closure of `{1} ∪ generators` under all products.
    pub fn generated_subspace(&self, generators: &[StateVector], n: Weight) -> Result<(Vec<StateVector>, bool)> {
        for g in generators {
            self.check_ambient(g)?;
            if !g.is_zero() && self.homogeneous_weight(g).is_none() {
                return Err(Error::Invalid(format!(
                    "generator {} is not homogeneous",
                    self.format_state(g)
                )));
            }
        }
        let mut span: SparseEchelon<Monomial> = SparseEchelon::new();
        let mut found: Vec<StateVector> = Vec::new();
        let push = |v: StateVector, span: &mut SparseEchelon<Monomial>, found: &mut Vec<StateVector>| {
            if !v.is_zero() && span.insert(v.clone().into_terms()) {
                found.push(v);
                true
            } else {
                false
            }
        };
        push(StateVector::vacuum(), &mut span, &mut found);
        for g in generators {
            if self.homogeneous_weight(g).is_some_and(|w| w <= n) {
                push(g.clone(), &mut span, &mut found);
            }
        }
        let mut vanish = true;
        let mut done = 0usize;
        for _round in 0..CLOSURE_CAP {
            let snapshot = found.clone();
            let mut grew = false;
            for (i, a) in snapshot.iter().enumerate() {
                for (j, b) in snapshot.iter().enumerate() {
                    if i < done && j < done {
                        continue;
                    }
                    let wa = self.homogeneous_weight(a).unwrap();
                    let wb = self.homogeneous_weight(b).unwrap();
                    let top = (wa + wb - 1).floor();
                    let lo = Weight((wa + wb - 1).0 - n.0).ceil();
                    for s in lo..=top {
                        let p = self.nth_product(a, s, b);
                        if s >= 0 && !p.is_zero() {
                            vanish = false;
                        }
                        grew |= push(p, &mut span, &mut found);
                    }
                }
            }
            done = snapshot.len();
            if !grew {
                return Ok((found, vanish));
            }
        }
        Err(Error::NoClosure(CLOSURE_CAP))
    }

    /// Certifies injectivity on the subalgebra generated by `generators`.
    pub fn certify_subalgebra(&self, generators: &[StateVector], n: Weight, max_window: Option<u64>) -> Result<InjectivityCertificate> {
        let (domain, vanish) = self.generated_subspace(generators, n)?;
        let mut cert = self.certify_on(domain, n, max_window);
        cert.nonneg_products_vanish = Some(vanish);
        Ok(cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn vacuum_line() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let m = h.build_yz_matrix(Weight::ZERO, 0);
        assert_eq!(m.matrix.cols(), 1);
        assert_eq!(linalg::rank(&m.matrix), 1);
    }

    #[test]
    fn heisenberg_needs_one_extra_step() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let m = h.build_yz_matrix(Weight::int(1), 0);
        assert_eq!(m.matrix.cols(), 4);
        assert_eq!(linalg::rank(&m.matrix), 3);
        let m = h.build_yz_matrix(Weight::int(1), 1);
        assert_eq!(linalg::rank(&m.matrix), 4);
        let c = h.certify(Weight::int(1), None).unwrap();
        assert_eq!(c.status, Status::Injective);
        assert_eq!(c.window_extra, 1);
        let c = h.certify(Weight::int(1), Some(0)).unwrap();
        assert_eq!(c.status, Status::Undetermined);
        assert_eq!(c.kernel_candidates.len(), 1);
        // the candidate is 1⊗x - x⊗1
        let k = &c.kernel_candidates[0];
        assert_eq!(k.len(), 2);
        assert_eq!(k[&(0, 1)], -&k[&(1, 0)]);
    }

    #[test]
    fn certificates() {
        for (name, n) in [
            ("freediff-(1|1)", Weight::int(2)),
            ("heisenberg-k1", Weight::int(2)),
            ("ns-1/2", Weight::new(5, 2)),
        ] {
            let a = fixtures::algebra(name).unwrap();
            let c = a.certify(n, None).unwrap();
            assert_eq!(c.status, Status::Injective, "{name}");
            assert_eq!(c.rank, c.domain_dim);
        }
    }

    #[test]
    fn subalgebras() {
        let d = fixtures::algebra("heisenberg-double-(1|0)").unwrap();
        let e = d.parse_state("e1(-1).1").unwrap();
        let c = d.certify_subalgebra(&[e], Weight::int(2), None).unwrap();
        assert_eq!(c.status, Status::Injective);
        assert_eq!(c.domain.len(), 4);
        assert_eq!(c.nonneg_products_vanish, Some(true));

        let c = d.certify_subalgebra(&[], Weight::int(2), None).unwrap();
        assert_eq!(c.domain_dim, 1);
        assert_eq!(c.status, Status::Injective);

        let odd = fixtures::algebra("heisenberg-double-(0|1)").unwrap();
        let f = odd.parse_state("f1(-1).1").unwrap();
        let c = odd.certify_subalgebra(&[f], Weight::int(2), None).unwrap();
        assert_eq!(c.status, Status::Injective);
        assert_eq!(c.nonneg_products_vanish, Some(true));

        // the whole Heisenberg algebra is not commutative
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let x = h.parse_state("x(-1).1").unwrap();
        let c = h.certify_subalgebra(&[x], Weight::int(2), None).unwrap();
        assert_eq!(c.nonneg_products_vanish, Some(false));
    }
}

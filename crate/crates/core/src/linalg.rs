//! Sparse matrices over exact rationals, rank and null space.
//!
//! Small matrices (both dimensions below [`DENSE_LIMIT`]) are ranked by
//! fraction-free Bareiss elimination over the integers; larger ones by sparse
//! row reduction. Pivots are always the first nonzero entry in a
//! column-major scan, so results never depend on scheduling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub const DENSE_LIMIT: usize = 64;

/// A rows × cols matrix holding only its nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        SparseMatrix::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Stores `x` at (i, j); zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.rows && j < self.cols, "entry out of bounds");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        let v = self.get(i, j) + x.clone();
        self.set(i, j, v);
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), x)| ((j, i), x.clone()))
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Scalar::zero(); self.rows];
        for (&(i, j), x) in &self.entries {
            if !v[j].is_zero() {
                out[i] += &(x * &v[j]);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (&(i, j), x) in &self.entries {
            d[i][j] = x.clone();
        }
        d
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(i, j), x) in &self.entries {
            rows[i].insert(j, x.clone());
        }
        rows
    }
}

/// Exact rank over ℚ.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 || m.entries.is_empty() {
        return 0;
    }
    if m.rows < DENSE_LIMIT && m.cols < DENSE_LIMIT {
        bareiss_rank(m)
    } else {
        sparse_rank(m)
    }
}

/// Clears denominators row by row, producing an integer matrix with the same
/// row space.
fn integer_rows(m: &SparseMatrix) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(m.rows);
    for row in m.to_dense() {
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        out.push(
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect(),
        );
    }
    out
}

fn bareiss_rank(m: &SparseMatrix) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let num = &pivot * &a[i][j] - &lead * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

fn sparse_rank(m: &SparseMatrix) -> usize {
    let mut ech: SparseEchelon<usize> = SparseEchelon::new();
    for row in m.sparse_rows() {
        ech.insert(row);
    }
    ech.dim()
}

/// A basis of the null space `{v : Mv = 0}`, one vector per free column in
/// increasing column order, with a 1 in that free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    let mut ech: SparseEchelon<usize> = SparseEchelon::new();
    for row in m.sparse_rows() {
        ech.insert(row);
    }
    let rref = ech.reduced_rows();
    let pivots: BTreeMap<usize, &BTreeMap<usize, Scalar>> =
        rref.iter().map(|(p, r)| (*p, r)).collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains_key(c)) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (&p, row) in &pivots {
            if let Some(x) = row.get(&free) {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

/// Incremental row echelon form over an arbitrary ordered key set.
///
/// Each stored row has leading coefficient 1 at its pivot key (its smallest
/// key). Rows are not kept mutually reduced; `reduce` sweeps keys in
/// increasing order, so its remainder is zero exactly on the span.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` after eliminating every pivot key.
    pub fn reduce(&self, mut v: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        let mut cursor: Option<K> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&K, &Scalar)>> = match &cursor {
                    None => Box::new(v.iter()),
                    Some(c) => Box::new(
                        v.range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded)),
                    ),
                };
                it.find(|(k, _)| self.rows.contains_key(*k))
                    .map(|(k, x)| (k.clone(), x.clone()))
            };
            let Some((k, coef)) = next else {
                return v;
            };
            for (key, x) in &self.rows[&k] {
                let e = v.entry(key.clone()).or_default();
                *e -= &(&coef * x);
                if e.is_zero() {
                    v.remove(key);
                }
            }
            cursor = Some(k);
        }
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: BTreeMap<K, Scalar>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inv().expect("nonzero lead");
        let row = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    /// Rows of the reduced row echelon form, keyed by pivot.
    pub fn reduced_rows(&self) -> BTreeMap<K, BTreeMap<K, Scalar>> {
        let mut out: BTreeMap<K, BTreeMap<K, Scalar>> = BTreeMap::new();
        // later pivots first: each row is reduced against all rows already
        // in `out`, which only contain keys beyond their own pivot
        for (p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let keys: Vec<K> = r.keys().filter(|k| *k != p).cloned().collect();
            for k in keys {
                if let Some(other) = out.get(&k) {
                    let coef = match r.get(&k) {
                        Some(c) => c.clone(),
                        None => continue,
                    };
                    for (key, x) in other {
                        let e = r.entry(key.clone()).or_default();
                        *e -= &(&coef * x);
                        if e.is_zero() {
                            r.remove(key);
                        }
                    }
                }
            }
            out.insert(p.clone(), r);
        }
        out
    }

    /// Stored rows, keyed by pivot.
    pub fn rows(&self) -> &BTreeMap<K, BTreeMap<K, Scalar>> {
        &self.rows
    }
}

/// Dense helpers for the small matrices that appear in Hopf computations.
pub mod dense {
    use super::*;

    pub type Matrix = Vec<Vec<Scalar>>;

    pub fn zeros(r: usize, c: usize) -> Matrix {
        vec![vec![Scalar::zero(); c]; r]
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = zeros(n, n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Scalar::one();
        }
        m
    }

    pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.len();
        let k = b.len();
        let m = b.first().map_or(0, Vec::len);
        let mut out = zeros(n, m);
        for i in 0..n {
            assert_eq!(a[i].len(), k, "inner dimension mismatch");
            for (l, bl) in b.iter().enumerate() {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if !bl[j].is_zero() {
                        out[i][j] += &(&a[i][l] * &bl[j]);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum()
            })
            .collect()
    }

    pub fn add_scaled(acc: &mut Matrix, c: &Scalar, b: &Matrix) {
        for (ra, rb) in acc.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                if !y.is_zero() {
                    *x += &(c * y);
                }
            }
        }
    }

    pub fn is_zero(a: &Matrix) -> bool {
        a.iter().all(|r| r.iter().all(Scalar::is_zero))
    }

    pub fn rank(a: &Matrix) -> usize {
        super::rank(&SparseMatrix::from_dense(a))
    }

    pub fn kernel(a: &Matrix, cols: usize) -> Vec<Vec<Scalar>> {
        if a.is_empty() {
            return (0..cols)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); cols];
                    v[i] = Scalar::one();
                    v
                })
                .collect();
        }
        super::kernel_basis(&SparseMatrix::from_dense(a))
    }
}

/// Rational roots of a polynomial given by coefficients, constant term first.
pub fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Scalar::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // strip the factor x^k
    let mut shift = 0;
    while c[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        roots.push(Scalar::zero());
        c.drain(..shift);
    }
    if c.len() <= 1 {
        return roots;
    }
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut ds = Vec::new();
        let mut d = BigInt::one();
        while &(&d * &d) <= n {
            if (n % &d).is_zero() {
                ds.push(d.clone());
                let other = n / &d;
                if other != d {
                    ds.push(other);
                }
            }
            d += 1;
        }
        ds
    };
    let mut candidates = Vec::new();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            let r = Scalar::from_bigints(p.clone(), q.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        // Horner
        let mut acc = Scalar::zero();
        for x in c.iter().rev() {
            acc = &(&acc * &r) + x;
        }
        if acc.is_zero() {
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::new(3, 5)), 0);
        assert_eq!(rank(&SparseMatrix::from_ints(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        assert_eq!(rank(&SparseMatrix::new(0, 0)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::new(1, 2)).len(), 2);
        let k = kernel_basis(&SparseMatrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * &Scalar::from_int(-1), &k[0][1] * &Scalar::from_int(2));
    }

    #[test]
    fn large_sparse_path_agrees() {
        // 70x70 with a planted dependency
        let n = 70;
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n - 1 {
            m.set(i, i, Scalar::from_int(i as i64 + 1));
            m.set(i, (i + 3) % n, Scalar::new(1, 2));
        }
        for j in 0..n {
            let x = &m.get(0, j) + &m.get(1, j);
            m.set(n - 1, j, x);
        }
        assert_eq!(rank(&m), n - 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn echelon_membership() {
        let mut e: SparseEchelon<&str> = SparseEchelon::new();
        let v = |xs: &[(&'static str, i64)]| -> BTreeMap<&'static str, Scalar> {
            xs.iter().map(|(k, x)| (*k, Scalar::from_int(*x))).collect()
        };
        assert!(e.insert(v(&[("a", 1), ("b", 2)])));
        assert!(e.insert(v(&[("b", 1), ("c", 1)])));
        assert!(e.contains(&v(&[("a", 1), ("b", 3), ("c", 1)])));
        assert!(!e.contains(&v(&[("c", 1)])));
        assert!(!e.insert(v(&[("a", 2), ("b", 4)])));
    }

    #[test]
    fn roots() {
        // (x - 1)(x + 1/2)(x^2 + x + 1)
        let p = [
            Scalar::new(-1, 2),
            Scalar::new(-1, 1),
            Scalar::zero(),
            Scalar::new(1, 2),
            Scalar::one(),
        ];
        let r = rational_roots(&p);
        assert_eq!(r, vec![Scalar::new(-1, 2), Scalar::one()]);
    }
}

//! Mode actions by PBW straightening, n-th products, the translation
//! operator, truncated vertex operators and the axiom checkers.
//!
//! Mode labels follow the Lie-algebra convention: `x(m)`, `L(m)`, `G(r)`,
//! where `a(m)` changes weight by `-m`. The field modes are
//! `a_(j) = a(j - deg a + 1)`, so `Y(a, z) = Σ a_(j) z^{-j-1}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Brackets, Kind, Mode, Monomial, StateVector};
use crate::error::{Error, Result};
use crate::scalar::{Parity, Scalar, Weight};

/// `[a(m), b(n)]`: generator terms at label `m + n` and the central scalar.
type BracketValue = (Vec<(u32, Scalar)>, Scalar);

fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

fn to_int(w: Weight) -> Option<i64> {
    w.0.is_integer().then(|| w.0.to_integer())
}

impl Algebra {
    fn is_creation(&self, a: u32, m: Weight) -> bool {
        m.0 <= -self.gens[a as usize].degree.0
    }

    fn parity_gen(&self, a: u32) -> Parity {
        self.gens[a as usize].parity
    }

    pub(crate) fn bracket_modes(&self, a: u32, m: Weight, b: u32, n: Weight) -> BracketValue {
        let Kind::Modes(br) = &self.kind else {
            return (Vec::new(), Scalar::zero());
        };
        let (mut terms, central) = match br {
            Brackets::Affine { lie, level } => {
                let terms: Vec<(u32, Scalar)> = lie
                    .bracket(a as usize, b as usize)
                    .into_iter()
                    .map(|(k, c)| (k as u32, c))
                    .collect();
                let central = if (m + n).is_zero() {
                    &(&m.scalar() * &lie.form(a as usize, b as usize)) * level
                } else {
                    Scalar::zero()
                };
                (terms, central)
            }
            Brackets::NeveuSchwarz { c } => {
                let zero_sum = (m + n).is_zero();
                let ms = m.scalar();
                let ns = n.scalar();
                let half = Scalar::new(1, 2);
                match (a, b) {
                    (0, 0) => {
                        let central = if zero_sum {
                            &(&(&ms.pow(3) - &ms) / &Scalar::from_int(12)) * c
                        } else {
                            Scalar::zero()
                        };
                        (vec![(0, &ms - &ns)], central)
                    }
                    (0, 1) => (vec![(1, &(&ms * &half) - &ns)], Scalar::zero()),
                    (1, 0) => (vec![(1, -(&(&ns * &half) - &ms))], Scalar::zero()),
                    _ => {
                        let central = if zero_sum {
                            &(&(&ms * &ms) - &Scalar::new(1, 4)) * &(c / &Scalar::from_int(3))
                        } else {
                            Scalar::zero()
                        };
                        (vec![(0, Scalar::from_int(2))], central)
                    }
                }
            }
        };
        if self.flip == Some((a, b)) {
            for (_, c) in terms.iter_mut() {
                *c = -&*c;
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        (terms, central)
    }

    /// Applies the mode `a(m)` to a state, straightening the result into the
    /// PBW basis.
    pub fn apply_generator_mode(&self, a: u32, m: Weight, v: &StateVector) -> Result<StateVector> {
        if a as usize >= self.gens.len() {
            return Err(Error::Index {
                what: "generators",
                index: a as usize,
                len: self.gens.len(),
            });
        }
        if !self.mode_on_lattice(a, m) {
            return Err(Error::ModeLattice {
                generator: self.gens[a as usize].id.clone(),
                mode: m.to_string(),
            });
        }
        Ok(self.apply_state(a, m, v))
    }

    pub(crate) fn apply_state(&self, a: u32, m: Weight, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (mono, c) in v.iter() {
            out.add_scaled(c, &self.apply_mono(a, m, mono));
        }
        out
    }

    pub(crate) fn apply_mono(&self, a: u32, m: Weight, mono: &Monomial) -> Arc<StateVector> {
        if (mono.weight() - m).is_negative() {
            return Arc::new(StateVector::zero());
        }
        match &self.kind {
            Kind::Tensor(left, right) => {
                let (l, r) = self.split_tensor(mono);
                let out = if (a as usize) < self.split {
                    let x = left.apply_mono(a, m, &l);
                    self.tensor_unchecked(&x, &StateVector::basis(r))
                } else {
                    let b = a - self.split as u32;
                    let s = sign(self.parity_gen(a).is_odd() && left.parity_of(&l).is_odd());
                    let y = right.apply_mono(b, m, &r);
                    self.tensor_unchecked(&StateVector::basis(l), &y).scaled(&s)
                };
                Arc::new(out)
            }
            Kind::Free => {
                if !self.is_creation(a, m) {
                    return Arc::new(StateVector::zero());
                }
                let mut modes = vec![Mode {
                    gen: a,
                    depth: Weight(-m.0),
                }];
                modes.extend_from_slice(mono.modes());
                Arc::new(self.free_canonical(modes))
            }
            Kind::Modes(_) => {
                let key = (a, m, mono.clone());
                if let Some(hit) = self.caches.apply.lock().unwrap().get(&key) {
                    return hit.clone();
                }
                let out = Arc::new(self.straighten(a, m, mono));
                self.caches.apply.lock().unwrap().insert(key, out.clone());
                out
            }
        }
    }

    fn apply_bracket_terms(&self, terms: &BracketValue, label: Weight, rest: &Monomial) -> StateVector {
        let (gens, central) = terms;
        let mut out = StateVector::zero();
        for (g, c) in gens {
            out.add_scaled(c, &self.apply_mono(*g, label, rest));
        }
        if !central.is_zero() {
            out.add_term(rest.clone(), central);
        }
        out
    }

    fn straighten(&self, a: u32, m: Weight, mono: &Monomial) -> StateVector {
        let creation = self.is_creation(a, m);
        let Some((first, rest)) = mono.modes().split_first() else {
            return if creation {
                StateVector::basis(Monomial(vec![Mode {
                    gen: a,
                    depth: Weight(-m.0),
                }]))
            } else {
                StateVector::zero()
            };
        };
        let rest = Monomial(rest.to_vec());
        if creation {
            let md = Mode {
                gen: a,
                depth: Weight(-m.0),
            };
            match md.cmp(first) {
                std::cmp::Ordering::Less => {
                    let mut modes = vec![md];
                    modes.extend_from_slice(mono.modes());
                    return StateVector::basis(Monomial(modes));
                }
                std::cmp::Ordering::Equal => {
                    if !self.parity_gen(a).is_odd() {
                        let mut modes = vec![md];
                        modes.extend_from_slice(mono.modes());
                        return StateVector::basis(Monomial(modes));
                    }
                    // a(m)a(m) = [a(m), a(m)]/2 for odd a
                    let br = self.bracket_modes(a, m, a, m);
                    return self
                        .apply_bracket_terms(&br, m + m, &rest)
                        .scaled(&Scalar::new(1, 2));
                }
                std::cmp::Ordering::Greater => {}
            }
        }
        // a(m) b(n) rest = ± b(n) a(m) rest + [a(m), b(n)] rest
        let b = first.gen;
        let n = Weight(-first.depth.0);
        let moved = self.apply_mono(a, m, &rest);
        let s = sign(self.parity_gen(a).is_odd() && self.parity_gen(b).is_odd());
        let mut out = self.apply_state(b, n, &moved).scaled(&s);
        let br = self.bracket_modes(a, m, b, n);
        out.add(&self.apply_bracket_terms(&br, m + n, &rest));
        out
    }

    /// Sorts free-algebra modes into normal order with Koszul signs; repeated
    /// odd modes give zero.
    fn free_canonical(&self, mut modes: Vec<Mode>) -> StateVector {
        let mut odd_swaps = false;
        for i in 1..modes.len() {
            let mut j = i;
            while j > 0 && modes[j] < modes[j - 1] {
                if self.parity_gen(modes[j].gen).is_odd() && self.parity_gen(modes[j - 1].gen).is_odd()
                {
                    odd_swaps = !odd_swaps;
                }
                modes.swap(j, j - 1);
                j -= 1;
            }
        }
        if modes
            .windows(2)
            .any(|w| w[0] == w[1] && self.parity_gen(w[0].gen).is_odd())
        {
            return StateVector::zero();
        }
        StateVector::term(Monomial(modes), sign(odd_swaps))
    }

    fn free_product(&self, u: &StateVector, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (x, c) in u.iter() {
            for (y, d) in v.iter() {
                let mut modes = x.modes().to_vec();
                modes.extend_from_slice(y.modes());
                out.add_scaled(&(c * d), &self.free_canonical(modes));
            }
        }
        out
    }

    /// The translation operator, computed as the derivation with
    /// `𝒟 a(-p) = (p - deg a + 1) a(-p-1)` and `𝒟1 = 0`.
    pub fn translation(&self, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (m, c) in v.iter() {
            out.add_scaled(c, &self.translation_mono(m));
        }
        out
    }

    fn translation_mono(&self, mono: &Monomial) -> StateVector {
        if let Kind::Tensor(left, right) = &self.kind {
            let (l, r) = self.split_tensor(mono);
            let mut out = self.tensor_unchecked(&left.translation_mono(&l), &StateVector::basis(r.clone()));
            out.add(&self.tensor_unchecked(&StateVector::basis(l), &right.translation_mono(&r)));
            return out;
        }
        let Some((first, rest)) = mono.modes().split_first() else {
            return StateVector::zero();
        };
        let rest = Monomial(rest.to_vec());
        let d = self.gens[first.gen as usize].degree;
        let coef = (first.depth - d + 1).scalar();
        let mut out = StateVector::zero();
        let mut shifted = vec![Mode {
            gen: first.gen,
            depth: first.depth + 1,
        }];
        shifted.extend_from_slice(rest.modes());
        out.add_term(Monomial(shifted), &coef);
        let tail = self.translation_mono(&rest);
        let label = Weight(-first.depth.0);
        match &self.kind {
            Kind::Free => {
                let single = StateVector::basis(Monomial(vec![*first]));
                out.add(&self.free_product(&single, &tail));
            }
            _ => out.add(&self.apply_state(first.gen, label, &tail)),
        }
        out
    }

    /// `u_(n) v`, extended bilinearly.
    pub fn nth_product(&self, u: &StateVector, n: i64, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (x, c) in u.iter() {
            for (y, d) in v.iter() {
                out.add_scaled(&(c * d), &self.nth_mono(x, n, y));
            }
        }
        out
    }

    pub(crate) fn nth_mono(&self, u: &Monomial, n: i64, v: &Monomial) -> Arc<StateVector> {
        if (u.weight() + v.weight() - (n + 1)).is_negative() {
            return Arc::new(StateVector::zero());
        }
        if u.is_vacuum() {
            return Arc::new(if n == -1 {
                StateVector::basis(v.clone())
            } else {
                StateVector::zero()
            });
        }
        let key = (u.clone(), n, v.clone());
        if let Some(hit) = self.caches.product.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = match &self.kind {
            Kind::Free => self.free_nth(u, n, v),
            Kind::Tensor(left, right) => self.tensor_nth(left, right, u, n, v),
            Kind::Modes(_) => {
                let (first, rest) = u.modes().split_first().expect("nonvacuum");
                self.iterate_nth(
                    first.gen,
                    Weight(-first.depth.0),
                    &StateVector::basis(Monomial(rest.to_vec())),
                    n,
                    &StateVector::basis(v.clone()),
                )
            }
        };
        let out = Arc::new(out);
        self.caches.product.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `u_(n) v = 0` for `n ≥ 0` and `u_(-k-1) v = (∂^k u / k!) v`.
    fn free_nth(&self, u: &Monomial, n: i64, v: &Monomial) -> StateVector {
        if n >= 0 {
            return StateVector::zero();
        }
        let k = (-n - 1) as u32;
        let mut du = StateVector::basis(u.clone());
        for _ in 0..k {
            du = self.translation(&du);
        }
        let du = du.scaled(&Scalar::inv_factorial(k));
        self.free_product(&du, &StateVector::basis(v.clone()))
    }

    /// `(u⊗u')_(n)(v⊗v') = (-1)^{|u'||v|} Σ_i u_(i)v ⊗ u'_(n-1-i)v'`
    fn tensor_nth(&self, left: &Algebra, right: &Algebra, u: &Monomial, n: i64, v: &Monomial) -> StateVector {
        let (u1, u2) = self.split_tensor(u);
        let (v1, v2) = self.split_tensor(v);
        let s = sign(right.parity_of(&u2).is_odd() && left.parity_of(&v1).is_odd());
        let hi = (u1.weight() + v1.weight() - 1).floor();
        let lo = Weight(Weight::int(n).0 - (u2.weight() + v2.weight()).0).ceil();
        let mut out = StateVector::zero();
        for i in lo..=hi {
            let x = left.nth_mono(&u1, i, &v1);
            if x.is_zero() {
                continue;
            }
            let y = right.nth_mono(&u2, n - 1 - i, &v2);
            if y.is_zero() {
                continue;
            }
            out.add(&self.tensor_unchecked(&x, &y));
        }
        out.scaled(&s)
    }

    /// `(a(m) u')_(n) v` evaluated through the iterate expansion, for an
    /// arbitrary (not necessarily normal-ordered) `u'`. With `p` the field
    /// index of `a(m)`:
    /// `Σ_j (-1)^j C(p,j) [ a_(p-j) u'_(n+j) v - (-1)^{p+|a||u'|} u'_(p+n-j) a_(j) v ]`.
    pub fn nth_product_via(&self, a: u32, m: Weight, u_rest: &StateVector, n: i64, v: &StateVector) -> Result<StateVector> {
        if !matches!(self.kind, Kind::Modes(_)) {
            return Err(Error::Invalid(
                "the iterate expansion is used by affine and Neveu-Schwarz algebras".into(),
            ));
        }
        if a as usize >= self.gens.len() || !self.mode_on_lattice(a, m) {
            return Err(Error::ModeLattice {
                generator: a.to_string(),
                mode: m.to_string(),
            });
        }
        let mut out = StateVector::zero();
        for p in [Parity::Even, Parity::Odd] {
            let part = StateVector::from_terms(
                u_rest
                    .iter()
                    .filter(|(x, _)| self.parity_of(x) == p)
                    .map(|(x, c)| (x.clone(), c.clone()))
                    .collect(),
            );
            if !part.is_zero() {
                out.add(&self.iterate_nth(a, m, &part, n, v));
            }
        }
        Ok(out)
    }

    /// The iterate expansion; `u_rest` must have homogeneous parity.
    fn iterate_nth(&self, a: u32, m: Weight, u_rest: &StateVector, n: i64, v: &StateVector) -> StateVector {
        let d = self.gens[a as usize].degree;
        let p = to_int(m + d - 1).expect("mode on lattice");
        let pa = self.parity_gen(a);
        let pu = u_rest
            .iter()
            .next()
            .map(|(x, _)| self.parity_of(x))
            .unwrap_or(Parity::Even);
        let wu = u_rest.iter().map(|(x, _)| x.weight()).max().unwrap_or(Weight::ZERO);
        let wv = v.iter().map(|(x, _)| x.weight()).max().unwrap_or(Weight::ZERO);
        let mut out = StateVector::zero();
        // a_(p-j) (u'_(n+j) v)
        let mut j = 0i64;
        while n + j <= (wu + wv - 1).floor() {
            let c = &Scalar::binomial(p, j) * &sign(j % 2 != 0);
            if p >= 0 && j > p {
                break;
            }
            if !c.is_zero() {
                let x = self.nth_product(u_rest, n + j, v);
                if !x.is_zero() {
                    let label = Weight::int(p - j) - d + 1;
                    out.add_scaled(&c, &self.apply_state(a, label, &x));
                }
            }
            j += 1;
        }
        // -(-1)^{p+|a||u'|} u'_(p+n-j) (a_(j) v)
        let s = -sign((p.rem_euclid(2) == 1) ^ (pa.is_odd() && pu.is_odd()));
        let mut j = 0i64;
        loop {
            let label = Weight::int(j) - d + 1;
            if label > wv {
                break;
            }
            if p >= 0 && j > p {
                break;
            }
            let c = &(&Scalar::binomial(p, j) * &sign(j % 2 != 0)) * &s;
            if !c.is_zero() {
                let y = self.apply_state(a, label, v);
                if !y.is_zero() {
                    out.add_scaled(&c, &self.nth_product(u_rest, p + n - j, &y));
                }
            }
            j += 1;
        }
        out
    }

    /// All coefficients `u_(s) v` whose terms have weight at most `cutoff`.
    pub fn vertex_operator(&self, u: &StateVector, v: &StateVector, cutoff: Weight) -> TruncatedField {
        let mut coeffs: BTreeMap<i64, StateVector> = BTreeMap::new();
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (x, c) in u.iter() {
            for (y, d) in v.iter() {
                let top = x.weight() + y.weight() - 1;
                let (a, b) = (Weight(top.0 - cutoff.0).ceil(), top.floor());
                lo = lo.min(a);
                hi = hi.max(b);
                for s in a..=b {
                    let r = self.nth_mono(x, s, y);
                    if !r.is_zero() {
                        coeffs.entry(s).or_default().add_scaled(&(c * d), &r);
                    }
                }
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        TruncatedField {
            coeffs,
            lowest_index: lo,
            highest_index: hi,
            cutoff,
        }
    }

    fn split_parity(&self, v: &StateVector) -> Vec<(Parity, StateVector)> {
        let mut parts: BTreeMap<Parity, StateVector> = BTreeMap::new();
        for (m, c) in v.iter() {
            parts
                .entry(self.parity_of(m))
                .or_default()
                .add_term(m.clone(), c);
        }
        parts.into_iter().collect()
    }

    fn borcherds_difference(&self, u: &StateVector, pu: Parity, v: &StateVector, pv: Parity, w: &StateVector, a: i64, b: i64, c: i64) -> StateVector {
        let wt = |x: &StateVector| x.iter().map(|(m, _)| m.weight()).max().unwrap_or(Weight::ZERO);
        let (wu, wv, ww) = (wt(u), wt(v), wt(w));
        let mut lhs = StateVector::zero();
        let mut j = 0i64;
        while a + j <= (wu + wv - 1).floor() {
            if b >= 0 && j > b {
                break;
            }
            let coef = Scalar::binomial(b, j);
            let x = self.nth_product(u, a + j, v);
            if !x.is_zero() {
                lhs.add_scaled(&coef, &self.nth_product(&x, b + c - j, w));
            }
            j += 1;
        }
        let mut rhs = StateVector::zero();
        let mut j = 0i64;
        while c + j <= (wv + ww - 1).floor() {
            if a >= 0 && j > a {
                break;
            }
            let coef = &Scalar::binomial(a, j) * &sign(j % 2 != 0);
            let y = self.nth_product(v, c + j, w);
            if !y.is_zero() {
                rhs.add_scaled(&coef, &self.nth_product(u, a + b - j, &y));
            }
            j += 1;
        }
        let s = sign((a.rem_euclid(2) == 1) ^ (pu.is_odd() && pv.is_odd()));
        let mut j = 0i64;
        while b + j <= (wu + ww - 1).floor() {
            if a >= 0 && j > a {
                break;
            }
            let coef = &(&Scalar::binomial(a, j) * &sign(j % 2 != 0)) * &s;
            let y = self.nth_product(u, b + j, w);
            if !y.is_zero() {
                rhs.add_scaled(&-coef, &self.nth_product(v, a + c - j, &y));
            }
            j += 1;
        }
        lhs.sub(&rhs)
    }

    /// Evaluates the Borcherds identity
    /// `Σ_j C(b,j) (u_(a+j) v)_(b+c-j) w =
    ///  Σ_j (-1)^j C(a,j) (u_(a+b-j) v_(c+j) w - (-1)^{a+|u||v|} v_(a+c-j) u_(b+j) w)`
    /// for every `(a, b, c)` in the given ranges.
    pub fn check_borcherds(
        &self,
        u: &StateVector,
        v: &StateVector,
        w: &StateVector,
        a_range: std::ops::RangeInclusive<i64>,
        b_range: std::ops::RangeInclusive<i64>,
        c_range: std::ops::RangeInclusive<i64>,
    ) -> Vec<Violation> {
        let us = self.split_parity(u);
        let vs = self.split_parity(v);
        let mut out = Vec::new();
        for a in a_range {
            for b in b_range.clone() {
                for c in c_range.clone() {
                    let mut diff = StateVector::zero();
                    for (pu, uu) in &us {
                        for (pv, vv) in &vs {
                            diff.add(&self.borcherds_difference(uu, *pu, vv, *pv, w, a, b, c));
                        }
                    }
                    if !diff.is_zero() {
                        out.push(Violation {
                            states: Vec::new(),
                            indices: vec![a, b, c],
                            difference: diff,
                        });
                    }
                }
            }
        }
        out
    }

    /// Compares `u_(n) v` with `(-1)^{|u||v|} Σ_i (-1)^{n+i+1} 𝒟^(i)(v_(n+i) u)`
    /// for every `n` whose output weight is at most `cutoff`.
    pub fn check_skew_symmetry(&self, u: &StateVector, v: &StateVector, cutoff: Weight) -> Vec<Violation> {
        let mut by_n: BTreeMap<i64, StateVector> = BTreeMap::new();
        for (pu, uu) in self.split_parity(u) {
            for (pv, vv) in self.split_parity(v) {
                let s = sign(pu.is_odd() && pv.is_odd());
                for (x, _) in uu.iter() {
                    for (y, _) in vv.iter() {
                        let top = x.weight() + y.weight() - 1;
                        let lo = Weight(top.0 - cutoff.0).ceil();
                        for n in lo..=top.floor() {
                            by_n.entry(n).or_default();
                        }
                    }
                }
                for (&n, acc) in by_n.iter_mut() {
                    let mut d = self.nth_product(&uu, n, &vv);
                    let mut rhs = StateVector::zero();
                    let mut i = 0i64;
                    loop {
                        let x = self.nth_product(&vv, n + i, &uu);
                        let top = uu.iter().chain(vv.iter()).map(|(m, _)| m.weight()).sum::<Weight>();
                        if x.is_zero() && Weight::int(n + i) > top {
                            break;
                        }
                        if !x.is_zero() {
                            let mut dx = x;
                            for _ in 0..i {
                                dx = self.translation(&dx);
                            }
                            let c = &Scalar::inv_factorial(i as u32) * &sign((n + i + 1).rem_euclid(2) == 1);
                            rhs.add_scaled(&c, &dx);
                        }
                        i += 1;
                    }
                    d.add_scaled(&-s.clone(), &rhs);
                    acc.add(&d);
                }
            }
        }
        by_n.into_iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(n, difference)| Violation {
                states: Vec::new(),
                indices: vec![n],
                difference,
            })
            .collect()
    }

    /// Compares `(𝒟v)_(n) w` with `-n v_(n-1) w` for every basis state `w`
    /// of weight at most `cutoff` and every `n` with output weight at most
    /// `cutoff`.
    pub fn check_translation(&self, v: &StateVector, cutoff: Weight) -> Vec<Violation> {
        let dv = self.translation(v);
        let wv = v.iter().map(|(m, _)| m.weight()).max().unwrap_or(Weight::ZERO);
        let mut out = Vec::new();
        for w in self.basis_up_to(cutoff) {
            let ws = StateVector::basis(w.clone());
            let top = wv + w.weight();
            let lo = Weight(top.0 - cutoff.0).ceil();
            for n in lo..=top.floor() {
                let lhs = self.nth_product(&dv, n, &ws);
                let rhs = self.nth_product(v, n - 1, &ws).scaled(&Scalar::from_int(-n));
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    out.push(Violation {
                        states: vec![w.clone()],
                        indices: vec![n],
                        difference: d,
                    });
                }
            }
        }
        out
    }
}

/// Coefficients of `Y(u, z)v` within a weight window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedField {
    pub coeffs: BTreeMap<i64, StateVector>,
    /// every index `s` with `lowest_index ≤ s ≤ highest_index` was computed;
    /// coefficients above `highest_index` vanish by weight
    pub lowest_index: i64,
    pub highest_index: i64,
    pub cutoff: Weight,
}

/// A failed identity: the mode indices and the nonzero difference of the two
/// sides.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    /// basis states the identity was evaluated on, when not implied by the call
    pub states: Vec<Monomial>,
    pub indices: Vec<i64>,
    pub difference: StateVector,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn st(a: &Algebra, s: &str) -> StateVector {
        a.parse_state(s).unwrap()
    }

    #[test]
    fn heisenberg_modes() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let x1 = st(&h, "x(-1).1");
        assert_eq!(
            h.apply_generator_mode(0, Weight::int(1), &x1).unwrap(),
            StateVector::vacuum()
        );
        assert!(h
            .apply_generator_mode(0, Weight::ZERO, &StateVector::vacuum())
            .unwrap()
            .is_zero());
        assert!(h.apply_generator_mode(0, Weight::new(1, 2), &x1).is_err());
        assert_eq!(h.nth_product(&x1, 1, &x1), StateVector::vacuum());
        assert_eq!(h.translation(&x1), st(&h, "x(-2).1"));
    }

    #[test]
    fn ns_modes() {
        let ns = fixtures::algebra("ns-1/2").unwrap();
        let omega = st(&ns, "L(-2).1");
        let l2 = ns.apply_generator_mode(0, Weight::int(2), &omega).unwrap();
        assert_eq!(l2, StateVector::term(Monomial::vacuum(), Scalar::new(1, 4)));
        assert_eq!(ns.nth_product(&omega, 3, &omega), l2);
        // L(-1) and G(-1/2) kill the vacuum
        assert!(ns
            .apply_generator_mode(0, Weight::int(-1), &StateVector::vacuum())
            .unwrap()
            .is_zero());
        assert!(ns
            .apply_generator_mode(1, Weight::new(-1, 2), &StateVector::vacuum())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn vacuum_axioms() {
        for name in ["heisenberg-k1", "ns-1/2", "freediff-(1|1)", "abelian-odd-pair"] {
            let a = fixtures::algebra(name).unwrap();
            for m in a.basis_up_to(Weight::int(3)) {
                let v = StateVector::basis(m);
                assert_eq!(a.nth_product(&StateVector::vacuum(), -1, &v), v);
                assert!(a.nth_product(&StateVector::vacuum(), 0, &v).is_zero());
                assert_eq!(a.nth_product(&v, -1, &StateVector::vacuum()), v);
                for n in 0..4 {
                    assert!(a.nth_product(&v, n, &StateVector::vacuum()).is_zero());
                }
                assert_eq!(
                    a.translation(&v),
                    a.nth_product(&v, -2, &StateVector::vacuum())
                );
            }
        }
    }

    #[test]
    fn vertex_operator_of_vacuum_and_on_vacuum() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let v = st(&h, "x(-2)x(-1).1");
        let f = h.vertex_operator(&StateVector::vacuum(), &v, Weight::int(6));
        assert_eq!(f.coeffs.len(), 1);
        assert_eq!(f.coeffs[&-1], v);
        let f = h.vertex_operator(&v, &StateVector::vacuum(), Weight::int(5));
        let dv = h.translation(&v);
        assert_eq!(f.coeffs[&-1], v);
        assert_eq!(f.coeffs[&-2], dv);
        assert_eq!(f.coeffs[&-3], h.translation(&dv).scaled(&Scalar::new(1, 2)));
    }

    #[test]
    fn heisenberg_field_coefficients() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let x = st(&h, "x(-1).1");
        let f = h.vertex_operator(&x, &x, Weight::int(3));
        assert_eq!(f.coeffs[&1], StateVector::vacuum());
        assert!(!f.coeffs.contains_key(&0));
        assert_eq!(f.coeffs[&-1], st(&h, "x(-1)x(-1).1"));
        assert_eq!(f.coeffs[&-2], st(&h, "x(-2)x(-1).1"));
    }

    #[test]
    fn free_closed_form_matches_recursion() {
        let free = fixtures::algebra("freediff-(1|1)").unwrap();
        let modes = Algebra::new(&fixtures::abelian_affine_spec(&free)).unwrap();
        for x in free.basis_up_to(Weight::int(3)) {
            for y in free.basis_up_to(Weight::int(2)) {
                for n in -4..3 {
                    assert_eq!(
                        *free.nth_mono(&x, n, &y),
                        *modes.nth_mono(&x, n, &y),
                        "{} {n} {}",
                        free.format_monomial(&x),
                        free.format_monomial(&y)
                    );
                }
            }
        }
    }

    #[test]
    fn skew_symmetry_odd_odd() {
        let ns = fixtures::algebra("ns-1/2").unwrap();
        let g = st(&ns, "G(-3/2).1");
        assert!(ns.check_skew_symmetry(&g, &g, Weight::int(5)).is_empty());
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let x = st(&h, "x(-1).1");
        assert!(h.check_skew_symmetry(&x, &x, Weight::int(5)).is_empty());
        assert!(h
            .check_skew_symmetry(&StateVector::vacuum(), &StateVector::vacuum(), Weight::int(3))
            .is_empty());
    }

    #[test]
    fn translation_checks() {
        let ns = fixtures::algebra("ns-1/2").unwrap();
        assert!(ns.check_translation(&st(&ns, "L(-2).1"), Weight::int(4)).is_empty());
        assert!(ns.check_translation(&StateVector::vacuum(), Weight::int(4)).is_empty());
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        assert!(h.check_translation(&st(&h, "x(-1).1"), Weight::int(4)).is_empty());
    }

    #[test]
    fn borcherds_on_virasoro_vector() {
        let ns = fixtures::algebra("ns-1/2").unwrap();
        let omega = st(&ns, "L(-2).1");
        let r = ns.check_borcherds(&omega, &omega, &omega, -3..=3, -3..=3, -3..=3);
        assert!(r.is_empty(), "{:?}", r.first().map(|v| &v.indices));
        let one = StateVector::vacuum();
        assert!(ns
            .check_borcherds(&one, &omega, &omega, -2..=2, -2..=2, -2..=2)
            .is_empty());
    }

    #[test]
    fn flipped_bracket_is_detected() {
        let ns = fixtures::algebra("ns-1/2").unwrap();
        let bad = ns
            .with_flipped_bracket(&crate::algebra::BracketFlip {
                left: "G".into(),
                right: "G".into(),
            })
            .unwrap();
        let states = [st(&bad, "G(-3/2).1"), st(&bad, "L(-2).1")];
        let mut found = 0;
        for u in &states {
            for v in &states {
                for w in &states {
                    found += bad.check_borcherds(u, v, w, -2..=2, -2..=2, -2..=2).len();
                }
            }
        }
        assert!(found > 0);
    }
}

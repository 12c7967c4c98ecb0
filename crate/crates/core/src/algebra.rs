//! PBW state spaces: generators, normal-ordered monomials, state vectors and
//! the algebra presentations they live in.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::LieSuperalgebraSpec;
use crate::scalar::{common_denominator, Parity, Scalar, Weight};

/// A strong generator: its id, parity and conformal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub parity: Parity,
    pub degree: Weight,
}

/// A creation mode `a(-depth)`; the depth is the weight it adds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub gen: u32,
    pub depth: Weight,
}

impl Ord for Mode {
    /// Normal order: deeper modes first, then lower generator index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .depth
            .cmp(&self.depth)
            .then(self.gen.cmp(&other.gen))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Modes applied to the vacuum, leftmost applied last. For tensor algebras
/// the left factor's modes come first, then the right factor's.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<Mode>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn weight(&self) -> Weight {
        self.0.iter().map(|m| m.depth).sum()
    }
}

/// A finite linear combination of monomials with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector(BTreeMap<Monomial, Scalar>);

impl StateVector {
    pub fn zero() -> Self {
        StateVector(BTreeMap::new())
    }

    pub fn vacuum() -> Self {
        Self::basis(Monomial::vacuum())
    }

    pub fn basis(m: Monomial) -> Self {
        StateVector([(m, Scalar::one())].into_iter().collect())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(m, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.0
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.0
    }

    pub fn from_terms(terms: BTreeMap<Monomial, Scalar>) -> Self {
        StateVector(terms.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.0.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        crate::lie::add_into(&mut self.0, m, c);
    }

    /// `self += c·other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &StateVector) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.0 {
            if c.is_one() {
                self.add_term(m.clone(), x);
            } else {
                self.add_term(m.clone(), &(c * x));
            }
        }
    }

    pub fn add(&mut self, other: &StateVector) {
        self.add_scaled(&Scalar::one(), other);
    }

    pub fn scaled(&self, c: &Scalar) -> StateVector {
        let mut out = StateVector::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn neg(&self) -> StateVector {
        self.scaled(&-Scalar::one())
    }

    pub fn sub(&self, other: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }
}

/// Generator of a free commutative differential superalgebra. The degree
/// defaults to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeGenerator {
    pub id: String,
    pub parity: Parity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Weight>,
}

/// A presentation of a vertex superalgebra with a PBW basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AlgebraSpec {
    FreeDifferential {
        generators: Vec<FreeGenerator>,
    },
    Affine {
        lie: LieSuperalgebraSpec,
        level: Scalar,
    },
    NeveuSchwarz {
        c: Scalar,
    },
    Tensor {
        left: Box<AlgebraSpec>,
        right: Box<AlgebraSpec>,
    },
}

impl Serialize for LieSuperalgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieSuperalgebraSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LieSuperalgebraSpec::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl AlgebraSpec {
    pub fn free(gens: &[(&str, Parity)]) -> Self {
        AlgebraSpec::FreeDifferential {
            generators: gens
                .iter()
                .map(|(id, p)| FreeGenerator {
                    id: id.to_string(),
                    parity: *p,
                    degree: None,
                })
                .collect(),
        }
    }

    pub fn tensor(left: AlgebraSpec, right: AlgebraSpec) -> Self {
        AlgebraSpec::Tensor {
            left: Box::new(left),
            right: Box::new(right),
        }
    }
}

/// Bracket data of a mode algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Brackets {
    /// `[x(m), y(n)] = [x,y](m+n) + m δ (x,y) k`
    Affine { lie: LieSuperalgebraSpec, level: Scalar },
    /// generators L (index 0) and G (index 1)
    NeveuSchwarz { c: Scalar },
}

#[derive(Clone, Debug)]
pub(crate) enum Kind {
    Modes(Brackets),
    Free,
    Tensor(Box<Algebra>, Box<Algebra>),
}

/// A deliberate corruption of the bracket table, for soundness tests of the
/// axiom checkers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFlip {
    pub left: String,
    pub right: String,
}

type ApplyKey = (u32, Weight, Monomial);
type ProductKey = (Monomial, i64, Monomial);

#[derive(Debug, Default)]
pub(crate) struct Caches {
    pub apply: Mutex<HashMap<ApplyKey, Arc<StateVector>>>,
    pub product: Mutex<HashMap<ProductKey, Arc<StateVector>>>,
    pub basis: Mutex<HashMap<Weight, Arc<Vec<Monomial>>>>,
}

/// A vertex superalgebra ready for computation.
#[derive(Debug)]
pub struct Algebra {
    pub(crate) spec: AlgebraSpec,
    pub(crate) gens: Vec<Generator>,
    pub(crate) t: i64,
    pub(crate) kind: Kind,
    pub(crate) split: usize,
    pub(crate) flip: Option<(u32, u32)>,
    pub(crate) caches: Caches,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            spec: self.spec.clone(),
            gens: self.gens.clone(),
            t: self.t,
            kind: self.kind.clone(),
            split: self.split,
            flip: self.flip,
            caches: Caches::default(),
        }
    }
}

impl Algebra {
    pub fn new(spec: &AlgebraSpec) -> Result<Self> {
        let (gens, kind, split) = match spec {
            AlgebraSpec::FreeDifferential { generators } => {
                let mut gens = Vec::new();
                for g in generators {
                    let degree = g.degree.unwrap_or(Weight::int(1));
                    if degree <= Weight::ZERO {
                        return Err(Error::Invalid(format!(
                            "generator {} needs a positive degree",
                            g.id
                        )));
                    }
                    gens.push(Generator {
                        id: g.id.clone(),
                        parity: g.parity,
                        degree,
                    });
                }
                (gens, Kind::Free, 0)
            }
            AlgebraSpec::Affine { lie, level } => {
                let gens = lie
                    .basis
                    .iter()
                    .map(|b| Generator {
                        id: b.id.clone(),
                        parity: b.parity,
                        degree: Weight::int(1),
                    })
                    .collect();
                (
                    gens,
                    Kind::Modes(Brackets::Affine {
                        lie: lie.clone(),
                        level: level.clone(),
                    }),
                    0,
                )
            }
            AlgebraSpec::NeveuSchwarz { c } => (
                vec![
                    Generator {
                        id: "L".into(),
                        parity: Parity::Even,
                        degree: Weight::int(2),
                    },
                    Generator {
                        id: "G".into(),
                        parity: Parity::Odd,
                        degree: Weight::new(3, 2),
                    },
                ],
                Kind::Modes(Brackets::NeveuSchwarz { c: c.clone() }),
                0,
            ),
            AlgebraSpec::Tensor { left, right } => {
                let a = Algebra::new(left)?;
                let b = Algebra::new(right)?;
                let mut gens = a.gens.clone();
                for g in &b.gens {
                    let mut id = g.id.clone();
                    while gens.iter().any(|h| h.id == id) {
                        id.push('\'');
                    }
                    gens.push(Generator { id, ..g.clone() });
                }
                let split = a.gens.len();
                (gens, Kind::Tensor(Box::new(a), Box::new(b)), split)
            }
        };
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.id == g.id) {
                return Err(Error::Invalid(format!("duplicate generator id {}", g.id)));
            }
            if !valid_id(&g.id) {
                return Err(Error::Invalid(format!("bad generator id {:?}", g.id)));
            }
        }
        let t = match &kind {
            Kind::Tensor(a, b) => a.t.lcm(&b.t),
            _ => common_denominator(gens.iter().map(|g| g.degree)),
        };
        Ok(Algebra {
            spec: spec.clone(),
            gens,
            t,
            kind,
            split,
            flip: None,
            caches: Caches::default(),
        })
    }

    /// A copy whose bracket `[left(m), right(n)]` has its structure-constant
    /// part negated (for the ordered pair only, central term untouched).
    pub fn with_flipped_bracket(&self, flip: &BracketFlip) -> Result<Algebra> {
        if !matches!(self.kind, Kind::Modes(_)) {
            return Err(Error::Invalid(
                "bracket flips apply to affine and Neveu-Schwarz algebras".into(),
            ));
        }
        let a = self.generator_index(&flip.left)?;
        let b = self.generator_index(&flip.right)?;
        let mut out = self.clone();
        out.flip = Some((a, b));
        Ok(out)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// The grading denominator `T`.
    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn generator_index(&self, id: &str) -> Result<u32> {
        self.gens
            .iter()
            .position(|g| g.id == id)
            .map(|i| i as u32)
            .ok_or_else(|| Error::Parse(format!("unknown generator {id:?}")))
    }

    pub fn parity_of(&self, m: &Monomial) -> Parity {
        m.0.iter()
            .fold(Parity::Even, |p, md| p + self.gens[md.gen as usize].parity)
    }

    /// Sum of generator degrees: the filtration level of a basis monomial.
    pub fn level_of(&self, m: &Monomial) -> Weight {
        m.0.iter().map(|md| self.gens[md.gen as usize].degree).sum()
    }

    /// Whether a mode label `m` for generator `a` lies in its lattice
    /// (`m + deg a ∈ ℤ`).
    pub fn mode_on_lattice(&self, a: u32, m: Weight) -> bool {
        (m + self.gens[a as usize].degree).0.is_integer()
    }

    pub(crate) fn split_tensor(&self, m: &Monomial) -> (Monomial, Monomial) {
        let cut = m
            .0
            .iter()
            .position(|md| md.gen as usize >= self.split)
            .unwrap_or(m.0.len());
        let left = Monomial(m.0[..cut].to_vec());
        let right = Monomial(
            m.0[cut..]
                .iter()
                .map(|md| Mode {
                    gen: md.gen - self.split as u32,
                    depth: md.depth,
                })
                .collect(),
        );
        (left, right)
    }

    pub(crate) fn join_tensor(&self, left: &Monomial, right: &Monomial) -> Monomial {
        let mut modes = left.0.clone();
        modes.extend(right.0.iter().map(|md| Mode {
            gen: md.gen + self.split as u32,
            depth: md.depth,
        }));
        Monomial(modes)
    }

    /// Whether `m` is a basis monomial of this algebra.
    pub fn is_canonical(&self, m: &Monomial) -> bool {
        match &self.kind {
            Kind::Tensor(a, b) => {
                let (l, r) = self.split_tensor(m);
                let joined = self.join_tensor(&l, &r);
                joined == *m && a.is_canonical(&l) && b.is_canonical(&r)
            }
            _ => {
                m.0.iter().all(|md| {
                    (md.gen as usize) < self.gens.len() && {
                        let d = self.gens[md.gen as usize].degree;
                        md.depth >= d && (md.depth - d).0.is_integer()
                    }
                }) && m.0.windows(2).all(|w| match w[0].cmp(&w[1]) {
                    Ordering::Less => true,
                    Ordering::Equal => !self.gens[w[0].gen as usize].parity.is_odd(),
                    Ordering::Greater => false,
                })
            }
        }
    }

    fn check_lattice(&self, n: Weight) -> Result<()> {
        if n.is_negative() || !n.on_lattice(self.t) {
            return Err(Error::Lattice {
                weight: n.to_string(),
                t: self.t,
            });
        }
        Ok(())
    }

    /// All basis monomials of weight exactly `n`, sorted.
    pub fn enumerate_basis(&self, n: Weight) -> Result<Arc<Vec<Monomial>>> {
        self.check_lattice(n)?;
        Ok(self.basis_at(n))
    }

    pub(crate) fn basis_at(&self, n: Weight) -> Arc<Vec<Monomial>> {
        if n.is_negative() || !n.on_lattice(self.t) {
            return Arc::new(Vec::new());
        }
        if let Some(b) = self.caches.basis.lock().unwrap().get(&n) {
            return b.clone();
        }
        let mut out = Vec::new();
        match &self.kind {
            Kind::Tensor(a, b) => {
                for i in n.lattice_up_to(self.t) {
                    let j = n - i;
                    let left = a.basis_at(i);
                    if left.is_empty() {
                        continue;
                    }
                    let right = b.basis_at(j);
                    for l in left.iter() {
                        for r in right.iter() {
                            out.push(self.join_tensor(l, r));
                        }
                    }
                }
            }
            _ => {
                // modes in normal order: depth descending, generator ascending
                let mut slots: Vec<Mode> = Vec::new();
                for g in 0..self.gens.len() {
                    let d = self.gens[g].degree;
                    let mut depth = d;
                    while depth <= n {
                        slots.push(Mode {
                            gen: g as u32,
                            depth,
                        });
                        depth = depth + 1;
                    }
                }
                slots.sort();
                let mut cur = Vec::new();
                self.fill(&slots, 0, n, &mut cur, &mut out);
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.caches.basis.lock().unwrap().insert(n, out.clone());
        out
    }

    fn fill(
        &self,
        slots: &[Mode],
        from: usize,
        remaining: Weight,
        cur: &mut Vec<Mode>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining.is_zero() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for (i, md) in slots.iter().enumerate().skip(from) {
            if md.depth > remaining {
                continue;
            }
            let odd = self.gens[md.gen as usize].parity.is_odd();
            cur.push(*md);
            self.fill(slots, if odd { i + 1 } else { i }, remaining - md.depth, cur, out);
            cur.pop();
        }
    }

    /// Basis monomials of weight at most `n`, ascending in weight.
    pub fn basis_up_to(&self, n: Weight) -> Vec<Monomial> {
        n.lattice_up_to(self.t)
            .into_iter()
            .flat_map(|w| self.basis_at(w).iter().cloned().collect::<Vec<_>>())
            .collect()
    }

    /// Dimensions (total, even, odd) at each lattice weight up to `up_to`.
    pub fn graded_dimension(&self, up_to: Weight) -> Vec<GradedDim> {
        up_to
            .lattice_up_to(self.t)
            .into_iter()
            .map(|w| {
                let b = self.basis_at(w);
                let odd = b.iter().filter(|m| self.parity_of(m).is_odd()).count();
                GradedDim {
                    weight: w,
                    dim: b.len(),
                    even: b.len() - odd,
                    odd,
                }
            })
            .collect()
    }

    /// `u ⊗ v` for states of the two tensor factors.
    pub fn tensor_state(&self, u: &StateVector, v: &StateVector) -> Result<StateVector> {
        let Kind::Tensor(a, b) = &self.kind else {
            return Err(Error::Ambient("not a tensor product algebra".into()));
        };
        for (m, _) in u.iter() {
            if !a.is_canonical(m) {
                return Err(Error::Ambient(format!(
                    "{} is not a state of the left factor",
                    a.format_monomial(m)
                )));
            }
        }
        for (m, _) in v.iter() {
            if !b.is_canonical(m) {
                return Err(Error::Ambient(format!(
                    "{} is not a state of the right factor",
                    b.format_monomial(m)
                )));
            }
        }
        Ok(self.tensor_unchecked(u, v))
    }

    pub(crate) fn tensor_unchecked(&self, u: &StateVector, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (l, x) in u.iter() {
            for (r, y) in v.iter() {
                out.add_term(self.join_tensor(l, r), &(x * y));
            }
        }
        out
    }

    /// Checks that every monomial of `v` is a basis monomial here.
    pub fn check_ambient(&self, v: &StateVector) -> Result<()> {
        for (m, _) in v.iter() {
            if !self.is_canonical(m) {
                return Err(Error::Ambient(self.format_monomial(m)));
            }
        }
        Ok(())
    }

    pub fn weight_of(&self, m: &Monomial) -> Weight {
        m.weight()
    }

    /// The weight of a nonzero homogeneous state, or `None` for zero or mixed
    /// states.
    pub fn homogeneous_weight(&self, v: &StateVector) -> Option<Weight> {
        let mut it = v.iter().map(|(m, _)| m.weight());
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn homogeneous_parity(&self, v: &StateVector) -> Option<Parity> {
        let mut it = v.iter().map(|(m, _)| self.parity_of(m));
        let p = it.next()?;
        it.all(|x| x == p).then_some(p)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_vacuum() {
            return "1".into();
        }
        let mut s = String::new();
        for md in &m.0 {
            let id = self.gens.get(md.gen as usize).map_or("?", |g| g.id.as_str());
            s.push_str(&format!("{}({})", id, Weight(-md.depth.0)));
        }
        s.push_str(".1");
        s
    }

    pub fn format_state(&self, v: &StateVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in v.iter().enumerate() {
            let (neg, abs) = if c.signum() < 0 {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&self.format_monomial(m));
        }
        s
    }

    /// JSON object mapping formatted monomials to coefficients.
    pub fn state_json(&self, v: &StateVector) -> serde_json::Value {
        let map: BTreeMap<String, String> = v
            .iter()
            .map(|(m, c)| (self.format_monomial(m), c.to_string()))
            .collect();
        serde_json::to_value(map).expect("string map")
    }

    /// Parses a state expression such as `1/2*x(-1)x(-2).1 - 3*1`. Modes are
    /// applied right to left and straightened, so any order is accepted.
    pub fn parse_state(&self, src: &str) -> Result<StateVector> {
        let mut p = StateParser {
            s: src.as_bytes(),
            i: 0,
            src,
        };
        let mut out = StateVector::zero();
        p.ws();
        let mut first = true;
        loop {
            p.ws();
            let mut sign = Scalar::one();
            if p.eat(b'-') {
                sign = -Scalar::one();
            } else if !p.eat(b'+') && !first {
                return Err(p.error("expected '+' or '-'"));
            }
            first = false;
            p.ws();
            let (coef, modes) = p.term(self)?;
            let mut v = StateVector::vacuum();
            for (g, m) in modes.into_iter().rev() {
                v = self.apply_generator_mode(g, m, &v)?;
            }
            out.add_scaled(&(&sign * &coef), &v);
            p.ws();
            if p.i >= p.s.len() {
                break;
            }
        }
        Ok(out)
    }
}

fn valid_id(id: &str) -> bool {
    let mut chars = id.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic())
        && id
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// One row of a graded-dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDim {
    pub weight: Weight,
    pub dim: usize,
    pub even: usize,
    pub odd: usize,
}

struct StateParser<'a> {
    s: &'a [u8],
    i: usize,
    src: &'a str,
}

impl StateParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.i, self.src))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.i < self.s.len() && self.s[self.i] == c {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn rational(&mut self) -> Result<Scalar> {
        let start = self.i;
        if self.peek() == Some(b'-') {
            self.i += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'/') {
            self.i += 1;
        }
        self.src[start..self.i]
            .parse()
            .map_err(|_| self.error("expected a rational number"))
    }

    /// `[coef*] (id(mode))* .1` or `[coef*] 1` or a bare coefficient.
    fn term(&mut self, alg: &Algebra) -> Result<(Scalar, Vec<(u32, Weight)>)> {
        let mut coef = Scalar::one();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let save = self.i;
            let q = self.rational()?;
            self.ws();
            if self.eat(b'*') {
                coef = q;
                self.ws();
            } else if q.is_one() && !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                // the vacuum itself
                return Ok((Scalar::one(), Vec::new()));
            } else {
                self.i = save;
                return Err(self.error("expected '*' after coefficient"));
            }
        }
        let mut modes = Vec::new();
        loop {
            match self.peek() {
                Some(b'1') => {
                    self.i += 1;
                    if !modes.is_empty() {
                        return Err(self.error("expected '.1' after modes"));
                    }
                    return Ok((coef, modes));
                }
                Some(b'.') if !modes.is_empty() => {
                    self.i += 1;
                    if !self.eat(b'1') {
                        return Err(self.error("expected '1' after '.'"));
                    }
                    return Ok((coef, modes));
                }
                Some(c) if (c as char).is_alphabetic() => {
                    let start = self.i;
                    while matches!(self.peek(), Some(c) if (c as char).is_alphanumeric() || c == b'_' || c == b'\'')
                    {
                        self.i += 1;
                    }
                    let id = &self.src[start..self.i];
                    let g = alg.generator_index(id)?;
                    if !self.eat(b'(') {
                        return Err(self.error("expected '('"));
                    }
                    let m = self.rational()?;
                    if !self.eat(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    let m = m
                        .to_rat()
                        .map(Weight)
                        .ok_or_else(|| self.error("mode out of range"))?;
                    modes.push((g, m));
                }
                _ => return Err(self.error("expected a mode or '1'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn dims(a: &Algebra, up: Weight) -> Vec<usize> {
        a.graded_dimension(up).iter().map(|d| d.dim).collect()
    }

    #[test]
    fn heisenberg_partitions() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        assert_eq!(dims(&h, Weight::int(8)), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(h.enumerate_basis(Weight::int(4)).unwrap().len(), 5);
    }

    #[test]
    fn ns_small_weights() {
        let ns = fixtures::algebra("ns-1/2").unwrap();
        assert_eq!(
            dims(&ns, Weight::int(4)),
            vec![1, 0, 0, 1, 1, 1, 1, 2, 3]
        );
        let b = ns.enumerate_basis(Weight::new(3, 2)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(ns.format_monomial(&b[0]), "G(-3/2).1");
        assert!(ns.enumerate_basis(Weight::new(1, 3)).is_err());
    }

    #[test]
    fn odd_free_strict_partitions() {
        let f = Algebra::new(&AlgebraSpec::free(&[("f", Parity::Odd)])).unwrap();
        assert_eq!(dims(&f, Weight::int(6)), vec![1, 1, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn vacuum_only_at_zero() {
        for name in ["heisenberg-k1", "ns-1/2", "freediff-(1|1)"] {
            let a = fixtures::algebra(name).unwrap();
            let b = a.enumerate_basis(Weight::ZERO).unwrap();
            assert_eq!(*b, vec![Monomial::vacuum()]);
        }
    }

    #[test]
    fn tensor_states_add_weight() {
        let t = fixtures::algebra("tensor(heisenberg-k1,ns-1/2)").unwrap();
        let Kind::Tensor(a, b) = &t.kind else { panic!() };
        let u = a.parse_state("x(-2).1").unwrap();
        let v = b.parse_state("G(-3/2).1").unwrap();
        let uv = t.tensor_state(&u, &v).unwrap();
        assert_eq!(t.homogeneous_weight(&uv), Some(Weight::new(7, 2)));
        assert_eq!(t.format_state(&uv), "x(-2)G(-3/2).1");
        let one = t
            .tensor_state(&StateVector::vacuum(), &StateVector::vacuum())
            .unwrap();
        assert_eq!(one, StateVector::vacuum());
        assert!(t.tensor_state(&v, &u).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let h = fixtures::algebra("heisenberg-k1").unwrap();
        let v = h.parse_state("1/2*x(-1)x(-2).1 - 3*1 + x(-1).1").unwrap();
        assert_eq!(h.format_state(&v), "-3*1 + 1/2*x(-2)x(-1).1 + x(-1).1");
        assert_eq!(h.parse_state(&h.format_state(&v)).unwrap(), v);
        assert!(h.parse_state("y(-1).1").is_err());
        assert!(h.parse_state("x(-1)").is_err());
        assert!(h.parse_state("0.5*1").is_err());
    }
}

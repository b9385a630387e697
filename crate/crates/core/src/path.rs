use crate::linalg::{format_q, parse_q, Q};
use crate::quiver::Quiver;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("arrows {0:?} and {1:?} are not composable")]
    NotComposable(String, String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("malformed path-vector: {0}")]
    Malformed(String),
    #[error("operands live over different quivers")]
    MixedQuivers,
    #[error("degree bound {d_max} is below the generator degree {degree}")]
    DegreeBound { d_max: usize, degree: usize },
}

/// A path of the quiver: arrows are composed left to right, so `a b` with `a: i -> j`,
/// `b: j -> k` runs from `i` to `k`. The trivial path at `v` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Path) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Path) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        Path { start: q.source(a), end: q.target(a), arrows: vec![a] }
    }

    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Path> {
        let (&first, _) = arrows.split_first()?;
        let mut end = q.source(first);
        for &a in arrows {
            if q.source(a) != end {
                return None;
            }
            end = q.target(a);
        }
        Some(Path { start: q.source(first), end, arrows: arrows.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.start == self.end && !self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    /// Subpath of arrows `[i, j)`; for `i == j` the trivial path at the vertex reached after `i` arrows.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> Path {
        if i == j {
            let v = if i == 0 { self.start } else { q.target(self.arrows[i - 1]) };
            return Path::vertex(v);
        }
        Path { start: q.source(self.arrows[i]), end: q.target(self.arrows[j - 1]), arrows: self.arrows[i..j].to_vec() }
    }

    /// Vertices visited, in order.
    pub fn vertices<'a>(&'a self, q: &'a Quiver) -> impl Iterator<Item = usize> + 'a {
        std::iter::once(self.start).chain(self.arrows.iter().map(|&a| q.target(a)))
    }

    pub fn degree(&self, q: &Quiver) -> i32 {
        self.arrows.iter().map(|&a| q.degree(a)).sum()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex(self.start))
        } else {
            self.arrows.iter().map(|&a| q.arrow(a).id.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        if self.arrows.is_empty() {
            Value::String(q.vertex(self.start).to_string())
        } else {
            Value::Array(self.arrows.iter().map(|&a| Value::String(q.arrow(a).id.clone())).collect())
        }
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<Path, PathError> {
        match v {
            Value::String(s) => {
                let i = q.vertex_index(s).ok_or_else(|| PathError::UnknownVertex(s.clone()))?;
                Ok(Path::vertex(i))
            }
            Value::Array(items) => {
                let mut arrows = Vec::with_capacity(items.len());
                for it in items {
                    let id = it.as_str().ok_or_else(|| PathError::Malformed("arrow id must be a string".into()))?;
                    arrows.push(q.arrow_index(id).ok_or_else(|| PathError::UnknownArrow(id.into()))?);
                }
                if arrows.is_empty() {
                    return Err(PathError::Malformed("empty arrow list; use a vertex id".into()));
                }
                for w in arrows.windows(2) {
                    if q.target(w[0]) != q.source(w[1]) {
                        return Err(PathError::NotComposable(q.arrow(w[0]).id.clone(), q.arrow(w[1]).id.clone()));
                    }
                }
                Ok(Path::from_arrows(q, &arrows).expect("checked composable"))
            }
            _ => Err(PathError::Malformed("path must be a vertex id or an array of arrow ids".into())),
        }
    }
}

/// Exact-rational linear combination of paths; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathVector {
    terms: BTreeMap<Path, Q>,
}

impl PathVector {
    pub fn zero() -> PathVector {
        PathVector::default()
    }

    pub fn from_path(p: Path) -> PathVector {
        PathVector::term(p, Q::one())
    }

    pub fn term(p: Path, c: Q) -> PathVector {
        let mut v = PathVector::zero();
        v.add_term(p, c);
        v
    }

    pub fn vertex(v: usize) -> PathVector {
        PathVector::from_path(Path::vertex(v))
    }

    pub fn arrow(q: &Quiver, a: usize) -> PathVector {
        PathVector::from_path(Path::arrow(q, a))
    }

    /// Builds from arrow-id words; panics on unknown or non-composable ids.
    pub fn from_words(q: &Quiver, terms: &[(Q, &[&str])]) -> PathVector {
        let mut v = PathVector::zero();
        for (c, word) in terms {
            let arrows: Vec<usize> = word.iter().map(|id| q.arrow_index(id).expect("known arrow")).collect();
            v.add_term(Path::from_arrows(q, &arrows).expect("composable word"), c.clone());
        }
        v
    }

    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Path, &Q)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Path, Q)> {
        self.terms.pop_last()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Path::len).min().unwrap_or(0)
    }

    pub fn add(&self, other: &PathVector) -> PathVector {
        let mut r = self.clone();
        for (p, c) in &other.terms {
            r.add_term(p.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &PathVector) -> PathVector {
        let mut r = self.clone();
        for (p, c) in &other.terms {
            r.add_term(p.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> PathVector {
        if c.is_zero() {
            return PathVector::zero();
        }
        PathVector { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &PathVector) -> PathVector {
        let mut r = PathVector::zero();
        for (p, a) in &self.terms {
            for (s, b) in &other.terms {
                if let Some(ps) = p.concat(s) {
                    r.add_term(ps, a * b);
                }
            }
        }
        r
    }

    /// Product with every term framed as `u * term * v`.
    pub fn sandwich(&self, u: &Path, v: &Path) -> PathVector {
        let mut r = PathVector::zero();
        for (p, c) in &self.terms {
            if let Some(x) = u.concat(p).and_then(|up| up.concat(v)) {
                r.add_term(x, c.clone());
            }
        }
        r
    }

    /// Component `e_i * self * e_j`.
    pub fn component(&self, i: usize, j: usize) -> PathVector {
        PathVector {
            terms: self.terms.iter().filter(|(p, _)| p.start == i && p.end == j).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    /// Splits into nonzero uniform components `e_i * self * e_j`.
    pub fn uniform_components(&self) -> Vec<PathVector> {
        let mut parts: BTreeMap<(usize, usize), PathVector> = BTreeMap::new();
        for (p, c) in &self.terms {
            parts.entry((p.start, p.end)).or_default().add_term(p.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    pub fn is_uniform(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(p) => it.all(|s| s.start == p.start && s.end == p.end),
        }
    }

    pub fn monic(&self) -> PathVector {
        match self.leading() {
            None => PathVector::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format_q(&a));
                out.push(' ');
            }
            out.push_str(&p.display(q));
        }
        out
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(p, c)| json!({"coeff": format_q(c), "path": p.to_json(q)}))
                .collect(),
        )
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<PathVector, PathError> {
        let items = v.as_array().ok_or_else(|| PathError::Malformed("path-vector must be an array".into()))?;
        let mut r = PathVector::zero();
        for it in items {
            let c = coeff_from_json(it.get("coeff"))?;
            let p = it.get("path").ok_or_else(|| PathError::Malformed("term without \"path\"".into()))?;
            r.add_term(Path::from_json(q, p)?, c);
        }
        Ok(r)
    }
}

pub(crate) fn coeff_from_json(v: Option<&Value>) -> Result<Q, PathError> {
    match v {
        Some(Value::String(s)) => parse_q(s).ok_or_else(|| PathError::BadCoefficient(s.clone())),
        Some(Value::Number(n)) => {
            let s = n.to_string();
            parse_q(&s).ok_or(PathError::BadCoefficient(s))
        }
        _ => Err(PathError::Malformed("term without a \"coeff\"".into())),
    }
}

/// Product in the path algebra of a single quiver. `same_quiver` guards against mixing
/// vectors from different quivers when the caller holds both.
pub fn multiply(qu: &Quiver, qv: &Quiver, u: &PathVector, v: &PathVector) -> Result<PathVector, PathError> {
    if qu != qv {
        return Err(PathError::MixedQuivers);
    }
    Ok(u.mul(v))
}

pub fn relations_from_json(q: &Quiver, v: &Value) -> Result<Vec<PathVector>, PathError> {
    let items = v.as_array().ok_or_else(|| PathError::Malformed("relations must be an array".into()))?;
    items.iter().map(|x| PathVector::from_json(q, x)).collect()
}

pub fn relations_to_json(q: &Quiver, rels: &[PathVector]) -> Value {
    Value::Array(rels.iter().map(|r| r.to_json(q)).collect())
}

/// All paths of length `len` starting anywhere, in increasing order.
pub fn paths_of_length(q: &Quiver, len: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::vertex).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &layer {
            for &a in q.arrows_from(p.end) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path { start: p.start, end: q.target(a), arrows });
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

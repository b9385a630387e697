use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub const STAR_SUFFIX: &str = "*";
pub const LOOP_PREFIX: &str = "t_";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex id {id:?} at vertices[{index}]")]
    DuplicateVertex { id: String, index: usize },
    #[error("duplicate arrow id {id:?} at arrows[{index}]")]
    DuplicateArrow { id: String, index: usize },
    #[error("dangling endpoint {endpoint:?} of arrow {arrow:?} at arrows[{index}]")]
    DanglingEndpoint { arrow: String, endpoint: String, index: usize },
    #[error("malformed quiver text at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
    #[error("arrow id {0:?} collides with the reserved suffix \"*\"")]
    ReservedSuffix(String),
    #[error("arrow {0:?} has nonzero degree but an ungraded quiver is required")]
    Graded(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub degree: i32,
}

impl Arrow {
    pub fn new(id: &str, source: &str, target: &str) -> Arrow {
        Arrow { id: id.into(), source: source.into(), target: target.into(), degree: 0 }
    }

    pub fn graded(id: &str, source: &str, target: &str, degree: i32) -> Arrow {
        Arrow { id: id.into(), source: source.into(), target: target.into(), degree }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct QuiverFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowFile>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ArrowFile {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i32,
}

fn is_zero(d: &i32) -> bool {
    *d == 0
}

/// A finite quiver. Vertices keep their input order; arrows are stored sorted by id,
/// which fixes the global arrow order used by the monomial order.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
    ends: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Quiver) -> bool {
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        a == b && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, QuiverError> {
        let mut vindex = HashMap::new();
        for (index, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), index).is_some() {
                return Err(QuiverError::DuplicateVertex { id: v.clone(), index });
            }
        }
        let mut seen = HashMap::new();
        for (index, a) in arrows.iter().enumerate() {
            if seen.insert(a.id.clone(), index).is_some() {
                return Err(QuiverError::DuplicateArrow { id: a.id.clone(), index });
            }
            for endpoint in [&a.source, &a.target] {
                if !vindex.contains_key(endpoint) {
                    return Err(QuiverError::DanglingEndpoint {
                        arrow: a.id.clone(),
                        endpoint: endpoint.clone(),
                        index,
                    });
                }
            }
        }
        let mut arrows = arrows;
        arrows.sort_by(|x, y| x.id.cmp(&y.id));
        let aindex = arrows.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        let ends: Vec<(usize, usize)> =
            arrows.iter().map(|a| (vindex[&a.source], vindex[&a.target])).collect();
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (i, &(s, t)) in ends.iter().enumerate() {
            out[s].push(i);
            inc[t].push(i);
        }
        Ok(Quiver { vertices, arrows, vindex, aindex, ends, out, inc })
    }

    /// Convenience constructor for ungraded quivers given as (id, source, target) triples.
    pub fn from_arrows(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        Quiver::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            arrows.iter().map(|(a, s, t)| Arrow::new(a, s, t)).collect(),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Quiver, QuiverError> {
        let file: QuiverFile = serde_json::from_str(text).map_err(|e| QuiverError::Malformed {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Quiver::from_file(file)
    }

    pub(crate) fn from_file(file: QuiverFile) -> Result<Quiver, QuiverError> {
        Quiver::new(
            file.vertices,
            file.arrows
                .into_iter()
                .map(|a| Arrow { id: a.id, source: a.source, target: a.target, degree: a.degree })
                .collect(),
        )
    }

    pub(crate) fn to_file(&self) -> QuiverFile {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        QuiverFile {
            vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    id: a.id.clone(),
                    source: a.source.clone(),
                    target: a.target.clone(),
                    degree: a.degree,
                })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("quiver serializes")
    }

    /// Canonical JSON text: vertices and arrows sorted by id.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("quiver serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vindex.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.aindex.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize, QuiverError> {
        self.vertex_index(id).ok_or_else(|| QuiverError::UnknownVertex(id.into()))
    }

    pub fn require_arrow(&self, id: &str) -> Result<usize, QuiverError> {
        self.arrow_index(id).ok_or_else(|| QuiverError::UnknownArrow(id.into()))
    }

    pub fn source(&self, a: usize) -> usize {
        self.ends[a].0
    }

    pub fn target(&self, a: usize) -> usize {
        self.ends[a].1
    }

    pub fn degree(&self, a: usize) -> i32 {
        self.arrows[a].degree
    }

    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn arrows_to(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// Number of arrows i -> j.
    pub fn arrow_multiplicity(&self, i: usize, j: usize) -> usize {
        self.out[i].iter().filter(|&&a| self.target(a) == j).count()
    }

    pub fn is_graded(&self) -> bool {
        self.arrows.iter().any(|a| a.degree != 0)
    }

    pub fn require_ungraded(&self) -> Result<(), QuiverError> {
        match self.arrows.iter().find(|a| a.degree != 0) {
            Some(a) => Err(QuiverError::Graded(a.id.clone())),
            None => Ok(()),
        }
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), source: a.target.clone(), target: a.source.clone(), degree: a.degree })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver is valid")
    }

    pub fn double(&self) -> Result<Quiver, QuiverError> {
        self.require_ungraded()?;
        if let Some(a) = self.arrows.iter().find(|a| a.id.ends_with(STAR_SUFFIX)) {
            return Err(QuiverError::ReservedSuffix(a.id.clone()));
        }
        let mut arrows = self.arrows.clone();
        for a in &self.arrows {
            arrows.push(Arrow::new(&star(&a.id), &a.target, &a.source));
        }
        Quiver::new(self.vertices.clone(), arrows)
    }

    /// True when there is no oriented cycle (loops included).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.inc[v].len()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &a in &self.out[v] {
                let t = self.target(a);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &a in self.out[v].iter().chain(&self.inc[v]) {
                for w in [self.source(a), self.target(a)] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn star(id: &str) -> String {
    format!("{id}{STAR_SUFFIX}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Quiver {
        Quiver::from_arrows(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2"), ("b'", "3", "2")]).unwrap()
    }

    #[test]
    fn minimal_quiver() {
        let q = Quiver::from_json_str(r#"{"vertices":["1"],"arrows":[]}"#).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 0);
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let err = Quiver::from_json_str(
            r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","source":"4","target":"1"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, QuiverError::DanglingEndpoint { index: 0, .. }));
        assert!(err.to_string().contains("dangling endpoint"));
    }

    #[test]
    fn duplicates_and_malformed() {
        let err = Quiver::from_json_str(r#"{"vertices":["1","1"]}"#).unwrap_err();
        assert!(matches!(err, QuiverError::DuplicateVertex { index: 1, .. }));
        let err = Quiver::from_json_str(
            r#"{"vertices":["1"],"arrows":[{"id":"a","source":"1","target":"1"},{"id":"a","source":"1","target":"1"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, QuiverError::DuplicateArrow { index: 1, .. }));
        let err = Quiver::from_json_str("{\"vertices\": [\n1]}").unwrap_err();
        assert!(matches!(err, QuiverError::Malformed { line: 2, .. }));
    }

    #[test]
    fn opposite_and_double() {
        let q = example();
        assert_eq!(q.opposite().opposite(), q);
        let op = q.opposite();
        let a = op.arrow(op.arrow_index("a").unwrap());
        assert_eq!((a.source.as_str(), a.target.as_str()), ("2", "1"));
        let d = q.double().unwrap();
        assert_eq!(d.arrow_count(), 6);
        let l = Quiver::from_arrows(&["i"], &[("t", "i", "i")]).unwrap();
        assert_eq!(l.opposite(), l);
        let bad = Quiver::from_arrows(&["1", "2"], &[("a*", "1", "2")]).unwrap();
        assert!(matches!(bad.double(), Err(QuiverError::ReservedSuffix(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let q = example();
        let text = q.to_json_string();
        let back = Quiver::from_json_str(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.to_json_string(), text);
    }
}

use crate::groebner::{groebner, quotient_dims, QuotientPresentation, Verdict};
use crate::linalg::{format_q, Q};
use crate::path::{coeff_from_json, Path, PathError, PathVector};
use crate::quiver::{star, Arrow, Quiver, QuiverError, QuiverFile, LOOP_PREFIX, STAR_SUFFIX};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotentialError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("term {0:?} of the potential is not a cycle")]
    NotACycle(String),
    #[error("vertex {0:?} occurs in both quivers")]
    VertexOverlap(String),
    #[error("arrow {0:?} occurs in both quivers")]
    ArrowOverlap(String),
    #[error("connecting arrow {0:?} must run from the first quiver to the second")]
    WrongDirection(String),
    #[error("Jacobian algebra of the {which} quiver is not certified finite: {verdict}")]
    NotFinite { which: &'static str, verdict: Verdict },
    #[error("arrow id {0:?} uses a reserved name")]
    ReservedName(String),
    #[error("malformed QP file: {0}")]
    Malformed(String),
}

/// A finite potential, stored as canonical (rotation-minimal) cycles with coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potential {
    cycles: BTreeMap<Path, Q>,
}

/// Rotation-minimal representative of a cycle under the monomial order.
pub fn canonical_rotation(q: &Quiver, p: &Path) -> Path {
    let n = p.len();
    (0..n)
        .map(|k| {
            let mut arrows = p.arrows[k..].to_vec();
            arrows.extend_from_slice(&p.arrows[..k]);
            Path::from_arrows(q, &arrows).expect("rotation of a cycle")
        })
        .min()
        .expect("nonempty cycle")
}

impl Potential {
    pub fn zero() -> Potential {
        Potential::default()
    }

    pub fn add_cycle(&mut self, q: &Quiver, p: &Path, c: Q) -> Result<(), PotentialError> {
        if !p.is_cycle() {
            return Err(PotentialError::NotACycle(p.display(q)));
        }
        if c.is_zero() {
            return Ok(());
        }
        let key = canonical_rotation(q, p);
        let e = self.cycles.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.cycles.remove(&key);
        }
        Ok(())
    }

    pub fn from_cycles(q: &Quiver, terms: &[(Q, &[&str])]) -> Result<Potential, PotentialError> {
        let mut w = Potential::zero();
        for (c, word) in terms {
            let arrows = word.iter().map(|id| q.require_arrow(id)).collect::<Result<Vec<_>, _>>()?;
            let p = Path::from_arrows(q, &arrows).ok_or_else(|| PotentialError::NotACycle(word.join("*")))?;
            w.add_cycle(q, &p, c.clone())?;
        }
        Ok(w)
    }

    pub fn is_zero(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> impl Iterator<Item = (&Path, &Q)> {
        self.cycles.iter()
    }

    pub fn add(&self, other: &Potential) -> Potential {
        let mut r = self.clone();
        for (p, c) in &other.cycles {
            let e = r.cycles.entry(p.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                r.cycles.remove(p);
            }
        }
        r
    }

    /// Transports the potential along an arrow-index map into another quiver.
    fn transport(&self, from: &Quiver, to: &Quiver) -> Potential {
        let mut r = Potential::zero();
        for (p, c) in &self.cycles {
            let arrows: Vec<usize> = p.arrows.iter().map(|&a| to.arrow_index(&from.arrow(a).id).unwrap()).collect();
            let path = Path::from_arrows(to, &arrows).unwrap();
            r.add_cycle(to, &path, c.clone()).unwrap();
        }
        r
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut v = PathVector::zero();
        for (p, c) in &self.cycles {
            v.add_term(p.clone(), c.clone());
        }
        v.display(q)
    }
}

/// A quiver with potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
}

impl Qp {
    pub fn new(quiver: Quiver, potential: Potential) -> Qp {
        Qp { quiver, potential }
    }

    pub fn from_json_str(text: &str) -> Result<Qp, PotentialError> {
        let v: Value = serde_json::from_str(text).map_err(|e| {
            PotentialError::Quiver(QuiverError::Malformed { line: e.line(), column: e.column(), message: e.to_string() })
        })?;
        Qp::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Qp, PotentialError> {
        let qv = v.get("quiver").ok_or_else(|| PotentialError::Malformed("missing \"quiver\"".into()))?;
        let file: QuiverFile =
            serde_json::from_value(qv.clone()).map_err(|e| PotentialError::Malformed(e.to_string()))?;
        let quiver = Quiver::from_file(file)?;
        let mut w = Potential::zero();
        if let Some(terms) = v.get("potential") {
            let terms = terms.as_array().ok_or_else(|| PotentialError::Malformed("\"potential\" must be an array".into()))?;
            for t in terms {
                let c = coeff_from_json(t.get("coeff"))?;
                let cyc = t
                    .get("cycle")
                    .and_then(Value::as_array)
                    .ok_or_else(|| PotentialError::Malformed("term without \"cycle\" array".into()))?;
                let ids: Vec<&str> = cyc.iter().filter_map(Value::as_str).collect();
                if ids.len() != cyc.len() || ids.is_empty() {
                    return Err(PotentialError::Malformed("cycle must be a nonempty array of arrow ids".into()));
                }
                let arrows = ids.iter().map(|id| quiver.require_arrow(id)).collect::<Result<Vec<_>, _>>()?;
                let p = Path::from_arrows(&quiver, &arrows).ok_or_else(|| PotentialError::NotACycle(ids.join("*")))?;
                w.add_cycle(&quiver, &p, c)?;
            }
        }
        Ok(Qp { quiver, potential: w })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .potential
            .cycles()
            .map(|(p, c)| {
                let ids: Vec<&str> = p.arrows.iter().map(|&a| self.quiver.arrow(a).id.as_str()).collect();
                json!({"coeff": format_q(c), "cycle": ids})
            })
            .collect();
        json!({"quiver": self.quiver.to_json_value(), "potential": terms})
    }
}

pub fn cyclic_derivative(q: &Quiver, w: &Potential, a: usize) -> Result<PathVector, PotentialError> {
    if a >= q.arrow_count() {
        return Err(PotentialError::Path(PathError::UnknownArrow(a.to_string())));
    }
    let mut r = PathVector::zero();
    for (p, c) in w.cycles() {
        for (i, &x) in p.arrows.iter().enumerate() {
            if x != a {
                continue;
            }
            let u = p.slice(q, 0, i);
            let v = p.slice(q, i + 1, p.len());
            r.add_term(v.concat(&u).expect("rotation of a cycle"), c.clone());
        }
    }
    Ok(r)
}

pub fn cyclic_derivative_by_id(q: &Quiver, w: &Potential, id: &str) -> Result<PathVector, PotentialError> {
    let a = q.require_arrow(id)?;
    cyclic_derivative(q, w, a)
}

pub fn jacobian_relations(qp: &Qp) -> Vec<PathVector> {
    (0..qp.quiver.arrow_count())
        .map(|a| cyclic_derivative(&qp.quiver, &qp.potential, a).expect("arrow in range"))
        .collect()
}

pub fn jacobian(qp: &Qp, d_max: usize) -> Result<QuotientPresentation, PotentialError> {
    Ok(groebner(&qp.quiver, &jacobian_relations(qp), d_max)?)
}

pub fn is_jacobi_finite(qp: &Qp, d_max: usize) -> Result<Verdict, PotentialError> {
    Ok(quotient_dims(&jacobian(qp, d_max)?).verdict)
}

/// Connecting arrow `(id, source in the first quiver, target in the second)`.
pub type Connector = (String, String, String);

pub fn triangular_extension(first: &Qp, second: &Qp, connecting: &[Connector]) -> Result<Qp, PotentialError> {
    let (q, q2) = (&first.quiver, &second.quiver);
    if let Some(v) = q.vertices().iter().find(|v| q2.vertex_index(v).is_some()) {
        return Err(PotentialError::VertexOverlap(v.clone()));
    }
    let mut ids: Vec<&str> = q.arrows().iter().chain(q2.arrows()).map(|a| a.id.as_str()).collect();
    ids.extend(connecting.iter().map(|c| c.0.as_str()));
    let mut sorted = ids.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(PotentialError::ArrowOverlap(w[0].to_string()));
    }
    for (id, s, t) in connecting {
        if q.vertex_index(s).is_none() || q2.vertex_index(t).is_none() {
            return Err(PotentialError::WrongDirection(id.clone()));
        }
    }
    let mut vertices = q.vertices().to_vec();
    vertices.extend(q2.vertices().iter().cloned());
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    arrows.extend(q2.arrows().iter().cloned());
    arrows.extend(connecting.iter().map(|(id, s, t)| Arrow::new(id, s, t)));
    let bar = Quiver::new(vertices, arrows)?;
    let w = first.potential.transport(q, &bar).add(&second.potential.transport(q2, &bar));
    Ok(Qp { quiver: bar, potential: w })
}

/// Per vertex-pair dimensions of `J' (x) (R' + kF + R) (x) J`, indexed by vertices of `bar`.
pub fn triangular_tensor_dims(
    bar: &Quiver,
    q: &Quiver,
    j: &[Vec<usize>],
    q2: &Quiver,
    j2: &[Vec<usize>],
    connecting: &[Connector],
) -> Vec<Vec<usize>> {
    let n = bar.vertex_count();
    let mut m = vec![vec![0usize; n]; n];
    let map1: Vec<usize> = q.vertices().iter().map(|v| bar.vertex_index(v).unwrap()).collect();
    let map2: Vec<usize> = q2.vertices().iter().map(|v| bar.vertex_index(v).unwrap()).collect();
    for (x, row) in j.iter().enumerate() {
        for (y, &d) in row.iter().enumerate() {
            m[map1[x]][map1[y]] += d;
        }
    }
    for (x, row) in j2.iter().enumerate() {
        for (y, &d) in row.iter().enumerate() {
            m[map2[x]][map2[y]] += d;
        }
    }
    for (_, s, t) in connecting {
        let s = q.vertex_index(s).unwrap();
        let t = q2.vertex_index(t).unwrap();
        for x in 0..q.vertex_count() {
            for y in 0..q2.vertex_count() {
                m[map1[x]][map2[y]] += j[x][s] * j2[t][y];
            }
        }
    }
    m
}

fn finite_dims(qp: &Qp, d_max: usize, which: &'static str) -> Result<Vec<Vec<usize>>, PotentialError> {
    let d = quotient_dims(&jacobian(qp, d_max)?);
    match (d.verdict, d.dim_matrix) {
        (Verdict::Finite(_), Some(m)) => Ok(m),
        (verdict, _) => Err(PotentialError::NotFinite { which, verdict }),
    }
}

/// Compares the directly computed Jacobian of the extension with the tensor-product count,
/// vertex pair by vertex pair.
pub fn verify_triangular_dim(
    bar: &Qp,
    first: &Qp,
    second: &Qp,
    connecting: &[Connector],
    d_max: usize,
) -> Result<bool, PotentialError> {
    let j = finite_dims(first, d_max, "first")?;
    let j2 = finite_dims(second, d_max, "second")?;
    let direct = finite_dims(bar, d_max, "extended")?;
    let predicted = triangular_tensor_dims(&bar.quiver, &first.quiver, &j, &second.quiver, &j2, connecting);
    Ok(direct == predicted)
}

/// The graded quiver of the Ginzburg construction together with the differential on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinzburgPresentation {
    pub quiver: Quiver,
    /// `differential[a]` is `d` of the arrow with index `a` in `quiver`.
    pub differential: Vec<PathVector>,
}

pub fn loop_id(vertex: &str) -> String {
    format!("{LOOP_PREFIX}{vertex}")
}

pub fn ginzburg(qp: &Qp) -> Result<GinzburgPresentation, PotentialError> {
    let q = &qp.quiver;
    q.require_ungraded()?;
    for a in q.arrows() {
        if a.id.ends_with(STAR_SUFFIX) || a.id.starts_with(LOOP_PREFIX) {
            return Err(PotentialError::ReservedName(a.id.clone()));
        }
    }
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    for a in q.arrows() {
        arrows.push(Arrow::graded(&star(&a.id), &a.target, &a.source, -1));
    }
    for v in q.vertices() {
        arrows.push(Arrow::graded(&loop_id(v), v, v, -2));
    }
    let g = Quiver::new(q.vertices().to_vec(), arrows)?;
    let lift = |p: &Path| -> Path {
        if p.is_empty() {
            return Path::vertex(g.vertex_index(q.vertex(p.start)).unwrap());
        }
        let arrows: Vec<usize> = p.arrows.iter().map(|&a| g.arrow_index(&q.arrow(a).id).unwrap()).collect();
        Path::from_arrows(&g, &arrows).unwrap()
    };
    let mut differential = vec![PathVector::zero(); g.arrow_count()];
    let one = Q::one();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let da = cyclic_derivative(q, &qp.potential, a)?;
        let mut lifted = PathVector::zero();
        for (p, c) in da.terms() {
            lifted.add_term(lift(p), c.clone());
        }
        differential[g.arrow_index(&star(&arrow.id)).unwrap()] = lifted;
    }
    // d(t_i) = e_i (sum over arrows of [a, a*]) e_i, with [a, a*] = a a* - a* a read right to left.
    for (vi, v) in q.vertices().iter().enumerate() {
        let mut d = PathVector::zero();
        for arrow in q.arrows() {
            let a = g.arrow_index(&arrow.id).unwrap();
            let s = g.arrow_index(&star(&arrow.id)).unwrap();
            let a_then_s = Path::from_arrows(&g, &[a, s]).unwrap();
            let s_then_a = Path::from_arrows(&g, &[s, a]).unwrap();
            if s_then_a.start == vi {
                d.add_term(s_then_a, one.clone());
            }
            if a_then_s.start == vi {
                d.add_term(a_then_s, -one.clone());
            }
        }
        differential[g.arrow_index(&loop_id(v)).unwrap()] = d;
    }
    Ok(GinzburgPresentation { quiver: g, differential })
}

impl GinzburgPresentation {
    /// Extends `d` to all of the path algebra by the signed Leibniz rule.
    pub fn apply(&self, f: &PathVector) -> PathVector {
        let g = &self.quiver;
        let mut out = PathVector::zero();
        for (p, c) in f.terms() {
            let mut sign_degree = 0i32;
            for k in 0..p.len() {
                let x = p.arrows[k];
                let left = p.slice(g, 0, k);
                let right = p.slice(g, k + 1, p.len());
                let dx = self.differential[x].sandwich(&left, &right);
                let coeff = if sign_degree.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
                out = out.add(&dx.scale(&coeff));
                sign_degree += g.degree(x);
            }
        }
        out
    }

    /// `d^2 = 0` on every generator.
    pub fn verify_differential(&self) -> bool {
        self.differential.iter().all(|d| self.apply(d).is_zero())
    }

    /// `d` raises the degree by one on every generator.
    pub fn degrees_consistent(&self) -> bool {
        self.differential.iter().enumerate().all(|(a, d)| {
            d.terms().all(|(p, _)| p.degree(&self.quiver) == self.quiver.degree(a) + 1)
        })
    }

    pub fn differential_of(&self, id: &str) -> Option<&PathVector> {
        self.quiver.arrow_index(id).map(|a| &self.differential[a])
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (a, d) in self.differential.iter().enumerate() {
            m.insert(self.quiver.arrow(a).id.clone(), d.to_json(&self.quiver));
        }
        json!({"quiver": self.quiver.to_json_value(), "differential": Value::Object(m)})
    }

    /// Replaces differential values from a JSON object `{generator id: path-vector}`.
    pub fn override_differential(&mut self, v: &Value) -> Result<(), PotentialError> {
        let obj = v.as_object().ok_or_else(|| PotentialError::Malformed("differential must be an object".into()))?;
        for (id, val) in obj {
            let a = self.quiver.require_arrow(id)?;
            self.differential[a] = PathVector::from_json(&self.quiver, val)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DMAX;
    use crate::linalg::q as qq;

    fn three_cycle() -> Qp {
        let q = Quiver::from_arrows(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]).unwrap();
        let w = Potential::from_cycles(&q, &[(qq(1), &["a", "b", "c"])]).unwrap();
        Qp::new(q, w)
    }

    #[test]
    fn derivative_examples() {
        let qp = three_cycle();
        let q = &qp.quiver;
        let d = cyclic_derivative_by_id(q, &qp.potential, "a").unwrap();
        assert_eq!(d, PathVector::from_words(q, &[(qq(1), &["b", "c"])]));
        let lq = Quiver::from_arrows(&["1"], &[("t", "1", "1"), ("x", "1", "1")]).unwrap();
        let w = Potential::from_cycles(&lq, &[(qq(1), &["t", "t", "t"])]).unwrap();
        let dt = cyclic_derivative_by_id(&lq, &w, "t").unwrap();
        assert_eq!(dt, PathVector::from_words(&lq, &[(qq(3), &["t", "t"])]));
        assert!(cyclic_derivative_by_id(&lq, &w, "x").unwrap().is_zero());
    }

    #[test]
    fn rotation_invariance() {
        let qp = three_cycle();
        let q = &qp.quiver;
        let rotated = Potential::from_cycles(q, &[(qq(1), &["b", "c", "a"])]).unwrap();
        assert_eq!(rotated, qp.potential);
        for a in 0..3 {
            assert_eq!(
                cyclic_derivative(q, &rotated, a).unwrap(),
                cyclic_derivative(q, &qp.potential, a).unwrap()
            );
        }
    }

    #[test]
    fn jacobian_of_three_cycle() {
        assert_eq!(is_jacobi_finite(&three_cycle(), DEFAULT_DMAX).unwrap(), Verdict::Finite(6));
        let l = Quiver::from_arrows(&["1"], &[("t", "1", "1")]).unwrap();
        assert_eq!(is_jacobi_finite(&Qp::new(l, Potential::zero()), DEFAULT_DMAX).unwrap(), Verdict::Infinite);
    }

    #[test]
    fn triangular_examples() {
        let a2 = Quiver::from_arrows(&["u", "v"], &[("x", "u", "v")]).unwrap();
        let second = Qp::new(a2, Potential::zero());
        let conn = vec![("f".to_string(), "1".to_string(), "u".to_string())];
        let bar = triangular_extension(&three_cycle(), &second, &conn).unwrap();
        assert_eq!(bar.quiver.arrow_count(), 5);
        assert!(verify_triangular_dim(&bar, &three_cycle(), &second, &conn, DEFAULT_DMAX).unwrap());
        let wrong = vec![("f".to_string(), "u".to_string(), "1".to_string())];
        assert!(matches!(
            triangular_extension(&three_cycle(), &second, &wrong),
            Err(PotentialError::WrongDirection(_))
        ));
    }

    #[test]
    fn ginzburg_three_cycle() {
        let g = ginzburg(&three_cycle()).unwrap();
        assert_eq!(g.differential_of("a*").unwrap(), &PathVector::from_words(&g.quiver, &[(qq(1), &["b", "c"])]));
        assert!(g.degrees_consistent());
        assert!(g.verify_differential());
        let mut bad = g.clone();
        let a = bad.quiver.arrow_index("a*").unwrap();
        bad.differential[a] = bad.differential[a].scale(&qq(2));
        assert!(!bad.verify_differential());
    }

    #[test]
    fn qp_json_round_trip() {
        let qp = three_cycle();
        let back = Qp::from_json(&qp.to_json()).unwrap();
        assert_eq!(back, qp);
    }
}

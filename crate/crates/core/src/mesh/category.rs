use super::knit::TranslationQuiver;
use crate::linalg::{span_rank, Matrix, Q};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::OnceLock;

/// Paths `x -> y` modulo the mesh ideal, with a row-reduced basis of the ideal.
#[derive(Debug)]
struct HomSpace {
    paths: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Reduced ideal rows with their pivot path.
    rows: Vec<(usize, Vec<Q>)>,
    /// Path indices forming a basis of the quotient.
    basis: Vec<usize>,
}

impl HomSpace {
    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        self.basis.iter().map(|&b| v[b].clone()).collect()
    }
}

type SourceTable = HashMap<usize, HomSpace>;

/// The mesh category of a knitted window: Hom spaces are computed lazily per source vertex and
/// cached, so queries may be issued from several threads.
#[derive(Debug)]
pub struct MeshCategory {
    tq: TranslationQuiver,
    order: Vec<usize>,
    position: Vec<usize>,
    cache: Vec<OnceLock<SourceTable>>,
}

impl MeshCategory {
    pub fn new(tq: TranslationQuiver) -> MeshCategory {
        let order = tq.topological_order();
        let mut position = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let cache = (0..order.len()).map(|_| OnceLock::new()).collect();
        MeshCategory { tq, order, position, cache }
    }

    pub fn translation_quiver(&self) -> &TranslationQuiver {
        &self.tq
    }

    fn table(&self, x: usize) -> &SourceTable {
        self.cache[x].get_or_init(|| self.build(x))
    }

    fn build(&self, x: usize) -> SourceTable {
        let tq = &self.tq;
        let mut spaces: SourceTable = HashMap::new();
        let trivial = vec![Vec::new()];
        spaces.insert(x, HomSpace { index: [(Vec::new(), 0)].into(), paths: trivial, rows: Vec::new(), basis: vec![0] });
        for &y in &self.order[self.position[x] + 1..] {
            let mut paths: Vec<Vec<usize>> = Vec::new();
            for &e in tq.incoming(y) {
                if let Some(sp) = spaces.get(&tq.arrow(e).source) {
                    for p in &sp.paths {
                        let mut w = p.clone();
                        w.push(e);
                        paths.push(w);
                    }
                }
            }
            if paths.is_empty() {
                continue;
            }
            let index: HashMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let len = paths.len();
            let mut gens: Vec<Vec<Q>> = Vec::new();
            for &e in tq.incoming(y) {
                let Some(sp) = spaces.get(&tq.arrow(e).source) else { continue };
                for (_, row) in &sp.rows {
                    let mut v = vec![Q::zero(); len];
                    for (k, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            let mut w = sp.paths[k].clone();
                            w.push(e);
                            v[index[&w]] = c.clone();
                        }
                    }
                    gens.push(v);
                }
            }
            if let Some(t) = tq.translate(y) {
                if let Some(sp) = spaces.get(&t) {
                    let pairs = tq.mesh_pairs(y);
                    for u in &sp.paths {
                        let mut v = vec![Q::zero(); len];
                        for &(e1, e2) in &pairs {
                            let mut w = u.clone();
                            w.push(e1);
                            w.push(e2);
                            v[index[&w]] += Q::one();
                        }
                        gens.push(v);
                    }
                }
            }
            let (rows, basis) = if gens.is_empty() {
                (Vec::new(), (0..len).collect())
            } else {
                let m = Matrix::from_rows(gens.len(), len, gens);
                let (r, pivots) = m.rref();
                let rows: Vec<(usize, Vec<Q>)> = pivots.iter().enumerate().map(|(i, &p)| (p, r.row(i).to_vec())).collect();
                let basis = (0..len).filter(|c| !pivots.contains(c)).collect();
                (rows, basis)
            };
            spaces.insert(y, HomSpace { paths, index, rows, basis });
        }
        spaces
    }

    fn space(&self, x: usize, y: usize) -> Option<&HomSpace> {
        self.table(x).get(&y)
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.space(x, y).map_or(0, |s| s.basis.len())
    }

    /// Paths (as arrow sequences of the translation quiver) whose classes form a basis.
    pub fn hom_basis(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        self.space(x, y).map_or(Vec::new(), |s| s.basis.iter().map(|&b| s.paths[b].clone()).collect())
    }

    /// Number of paths `x -> y` before taking the quotient.
    pub fn path_count(&self, x: usize, y: usize) -> usize {
        self.space(x, y).map_or(0, |s| s.paths.len())
    }

    /// Coordinates of a linear combination of paths `x -> y`.
    pub fn reduce(&self, x: usize, y: usize, terms: &[(Vec<usize>, Q)]) -> Vec<Q> {
        let Some(s) = self.space(x, y) else { return Vec::new() };
        let mut v = vec![Q::zero(); s.paths.len()];
        for (p, c) in terms {
            let i = *s.index.get(p).expect("path runs from x to y");
            v[i] += c;
        }
        s.reduce(v)
    }

    pub fn path_element(&self, x: usize, y: usize, path: &[usize]) -> Vec<Q> {
        self.reduce(x, y, &[(path.to_vec(), Q::one())])
    }

    pub fn identity(&self, x: usize) -> Vec<Q> {
        vec![Q::one(); self.hom_dim(x, x)]
    }

    /// `f` followed by `g`, for `f: x -> y` and `g: y -> z`.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: &[Q], g: &[Q]) -> Vec<Q> {
        let dim = self.hom_dim(x, z);
        if dim == 0 || f.iter().all(Zero::is_zero) || g.iter().all(Zero::is_zero) {
            return vec![Q::zero(); dim];
        }
        let (sf, sg, sz) = (self.space(x, y).unwrap(), self.space(y, z).unwrap(), self.space(x, z).unwrap());
        let mut v = vec![Q::zero(); sz.paths.len()];
        for (a, ca) in f.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in g.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mut w = sf.paths[sf.basis[a]].clone();
                w.extend_from_slice(&sg.paths[sg.basis[b]]);
                v[sz.index[&w]] += ca * cb;
            }
        }
        sz.reduce(v)
    }

    fn unit(dim: usize, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v
    }

    /// Spanning set of the maps `x -> y` factoring through one of `through`.
    pub fn factor_span(&self, x: usize, y: usize, through: &[usize]) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for &s in through {
            let (d1, d2) = (self.hom_dim(x, s), self.hom_dim(s, y));
            for a in 0..d1 {
                for b in 0..d2 {
                    out.push(self.compose(x, s, y, &Self::unit(d1, a), &Self::unit(d2, b)));
                }
            }
        }
        out
    }

    pub fn factor_rank(&self, x: usize, y: usize, through: &[usize]) -> usize {
        span_rank(&self.factor_span(x, y, through), self.hom_dim(x, y))
    }

    /// The mesh relation ending at `v`, read in `Hom(tau v, v)`; zero by construction.
    pub fn mesh_element(&self, v: usize) -> Option<Vec<Q>> {
        let t = self.tq.translate(v)?;
        let terms: Vec<(Vec<usize>, Q)> = self.tq.mesh_pairs(v).into_iter().map(|(a, b)| (vec![a, b], Q::one())).collect();
        if terms.is_empty() {
            return None;
        }
        Some(self.reduce(t, v, &terms))
    }
}

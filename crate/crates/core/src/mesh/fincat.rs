use super::category::MeshCategory;
use super::MeshError;
use crate::findim::BoundAlgebra;
use crate::linalg::{span_rank, Matrix, Quotient, Q};
use crate::path::{Path, PathVector};
use crate::quiver::{Arrow, Quiver};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// A finite k-linear category given by Hom dimensions and a structure-constant table.
#[derive(Clone, Debug)]
pub struct FinCat {
    names: Vec<String>,
    dims: Vec<Vec<usize>>,
    ids: Vec<Vec<Q>>,
    /// `table[(i * n + j) * n + k][a * dims[j][k] + b]`: basis `a` of `(i, j)` then basis `b` of `(j, k)`.
    table: Vec<Vec<Vec<Q>>>,
}

/// A bound quiver algebra presenting a directed [`FinCat`], with quiver vertices in object order
/// and arrows pointing in the direction of the maps.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub algebra: BoundAlgebra,
    /// Coordinates in `Hom(source, target)` of each arrow, by arrow index.
    pub arrow_elements: Vec<Vec<Q>>,
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

impl FinCat {
    /// The full subcategory of the mesh category on `objects`.
    pub fn from_mesh(mc: &MeshCategory, objects: &[usize], names: Vec<String>) -> FinCat {
        let n = objects.len();
        let dims: Vec<Vec<usize>> = objects.iter().map(|&x| objects.iter().map(|&y| mc.hom_dim(x, y)).collect()).collect();
        let ids = objects.iter().map(|&x| mc.identity(x)).collect();
        let mut table = Vec::with_capacity(n * n * n);
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                for (k, &z) in objects.iter().enumerate() {
                    let mut entry = Vec::with_capacity(dims[i][j] * dims[j][k]);
                    for a in 0..dims[i][j] {
                        for b in 0..dims[j][k] {
                            entry.push(mc.compose(x, y, z, &unit(dims[i][j], a), &unit(dims[j][k], b)));
                        }
                    }
                    table.push(entry);
                }
            }
        }
        FinCat { names, dims, ids, table }
    }

    pub fn object_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.dims[i][j]
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn identity(&self, i: usize) -> Vec<Q> {
        self.ids[i].clone()
    }

    fn entry(&self, i: usize, j: usize, k: usize) -> &Vec<Vec<Q>> {
        let n = self.names.len();
        &self.table[(i * n + j) * n + k]
    }

    /// `f: i -> j` followed by `g: j -> k`.
    pub fn compose(&self, i: usize, j: usize, k: usize, f: &[Q], g: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dims[i][k]];
        let e = self.entry(i, j, k);
        let djk = self.dims[j][k];
        for (a, ca) in f.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in g.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (o, x) in out.iter_mut().zip(&e[a * djk + b]) {
                    if !x.is_zero() {
                        *o += &c * x;
                    }
                }
            }
        }
        out
    }

    /// Spanning set of the maps `i -> j` factoring through one of `through`.
    pub fn factor_span(&self, i: usize, j: usize, through: &[usize]) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for &s in through {
            let djs = self.dims[s][j];
            for a in 0..self.dims[i][s] {
                for b in 0..djs {
                    out.push(self.entry(i, s, j)[a * djs + b].clone());
                }
            }
        }
        out
    }

    pub fn factor_rank(&self, i: usize, j: usize, through: &[usize]) -> usize {
        span_rank(&self.factor_span(i, j, through), self.dims[i][j])
    }

    fn rebuild(&self, keep: &[usize], quots: &HashMap<(usize, usize), Quotient>) -> FinCat {
        let m = keep.len();
        let dims: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| quots[&(i, j)].dim()).collect()).collect();
        let ids = keep.iter().enumerate().map(|(i, &x)| quots[&(i, i)].proj.mul_vec(&self.ids[x])).collect();
        let mut table = Vec::with_capacity(m * m * m);
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                for (k, &z) in keep.iter().enumerate() {
                    let (qij, qjk, qik) = (&quots[&(i, j)], &quots[&(j, k)], &quots[&(i, k)]);
                    let mut entry = Vec::with_capacity(dims[i][j] * dims[j][k]);
                    for a in 0..dims[i][j] {
                        for b in 0..dims[j][k] {
                            let prod = self.compose(x, y, z, &qij.sect.column(a), &qjk.sect.column(b));
                            entry.push(qik.proj.mul_vec(&prod));
                        }
                    }
                    table.push(entry);
                }
            }
        }
        FinCat { names: keep.iter().map(|&x| self.names[x].clone()).collect(), dims, ids, table }
    }

    pub fn subcategory(&self, keep: &[usize]) -> FinCat {
        let mut quots = HashMap::new();
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                quots.insert((i, j), Quotient::new(self.dims[x][y], &[]));
            }
        }
        self.rebuild(keep, &quots)
    }

    /// The quotient by the ideal of maps factoring through `kill`, with the objects of `kill`
    /// removed.
    pub fn quotient_by(&self, kill: &[usize]) -> FinCat {
        let keep: Vec<usize> = (0..self.object_count()).filter(|x| !kill.contains(x)).collect();
        let mut quots = HashMap::new();
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                quots.insert((i, j), Quotient::new(self.dims[x][y], &self.factor_span(x, y, kill)));
            }
        }
        self.rebuild(&keep, &quots)
    }

    /// Objects in an order where nonzero maps between distinct objects go forward.
    pub fn directed_order(&self) -> Result<Vec<usize>, MeshError> {
        let n = self.object_count();
        for i in 0..n {
            if self.dims[i][i] != 1 || self.ids[i].iter().all(Zero::is_zero) {
                return Err(MeshError::NotDirected(format!("End({}) is not one-dimensional", self.names[i])));
            }
        }
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| i != j && self.dims[i][j] > 0).count()).collect();
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for w in (0..n).rev() {
                if w != v && self.dims[v][w] > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        if order.len() != n {
            return Err(MeshError::NotDirected("nonzero maps form a cycle".into()));
        }
        Ok(order)
    }

    /// Quiver from radical layers, relations from the kernel of path evaluation.
    pub fn present(&self, d_max: usize) -> Result<Presentation, MeshError> {
        let order = self.directed_order()?;
        let n = self.object_count();
        let mut rank_of = vec![0; n];
        for (r, &v) in order.iter().enumerate() {
            rank_of[v] = r;
        }
        // Arrows: lifts of a basis of rad / rad^2.
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut arrow_elements: Vec<Vec<Q>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || self.dims[i][j] == 0 {
                    continue;
                }
                let through: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
                let quot = Quotient::new(self.dims[i][j], &self.factor_span(i, j, &through));
                let k = quot.dim();
                for c in 0..k {
                    let id = if k == 1 { format!("a{}_{}", i + 1, j + 1) } else { format!("a{}_{}_{}", i + 1, j + 1, c + 1) };
                    arrows.push(Arrow::new(&id, &self.names[i], &self.names[j]));
                    arrow_elements.push(quot.sect.column(c));
                }
            }
        }
        let by_id: HashMap<String, Vec<Q>> = arrows.iter().map(|a| a.id.clone()).zip(arrow_elements).collect();
        let quiver = Quiver::new(self.names.clone(), arrows)?;
        let arrow_elements: Vec<Vec<Q>> = quiver.arrows().iter().map(|a| by_id[&a.id].clone()).collect();
        // Paths of length at least one, by increasing length, with their values.
        let mut paths: Vec<(Vec<usize>, Vec<Q>)> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for a in 0..quiver.arrow_count() {
            paths.push((vec![a], arrow_elements[a].clone()));
            frontier.push(paths.len() - 1);
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &p in &frontier {
                let (word, value) = paths[p].clone();
                let last = *word.last().unwrap();
                let (i, j) = (quiver.source(word[0]), quiver.target(last));
                for &b in quiver.arrows_from(j) {
                    let k = quiver.target(b);
                    let mut w = word.clone();
                    w.push(b);
                    let v = self.compose(i, j, k, &value, &arrow_elements[b]);
                    paths.push((w, v));
                    next.push(paths.len() - 1);
                }
            }
            frontier = next;
        }
        let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (idx, (w, _)) in paths.iter().enumerate() {
            by_pair.entry((quiver.source(w[0]), quiver.target(*w.last().unwrap()))).or_default().push(idx);
        }
        for (&(i, j), idxs) in &by_pair {
            let values: Vec<Vec<Q>> = idxs.iter().map(|&p| paths[p].1.clone()).collect();
            if span_rank(&values, self.dims[i][j]) != self.dims[i][j] {
                return Err(MeshError::Internal(format!("paths do not span Hom({}, {})", self.names[i], self.names[j])));
            }
        }
        // Kernel of evaluation on paths of length >= 2, per pair.
        let mut long: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (&pair, idxs) in &by_pair {
            let l: Vec<usize> = idxs.iter().copied().filter(|&p| paths[p].0.len() >= 2).collect();
            if !l.is_empty() {
                long.insert(pair, l);
            }
        }
        let coord: HashMap<Vec<usize>, usize> = long
            .values()
            .flat_map(|l| l.iter().enumerate().map(|(c, &p)| (paths[p].0.clone(), c)))
            .collect();
        let mut kernels: HashMap<(usize, usize), Vec<Vec<Q>>> = HashMap::new();
        for (&(i, j), l) in &long {
            let cols: Vec<Vec<Q>> = l.iter().map(|&p| paths[p].1.clone()).collect();
            let e = Matrix::from_columns(self.dims[i][j], &cols);
            let k = e.kernel();
            kernels.insert((i, j), (0..k.cols()).map(|c| k.column(c)).collect());
        }
        let mut pairs: Vec<(usize, usize)> = long.keys().copied().collect();
        pairs.sort_by_key(|&(i, j)| (rank_of[i], rank_of[j]));
        let mut relations: Vec<PathVector> = Vec::new();
        for &(i, j) in &pairs {
            let ker = &kernels[&(i, j)];
            if ker.is_empty() {
                continue;
            }
            let len = long[&(i, j)].len();
            let mut generated: Vec<Vec<Q>> = Vec::new();
            let shift = |kv: &Vec<Q>, src: &[usize], arrow: usize, before: bool| -> Vec<Q> {
                let mut v = vec![Q::zero(); len];
                for (c, x) in kv.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mut w = Vec::new();
                    if before {
                        w.push(arrow);
                        w.extend_from_slice(&paths[src[c]].0);
                    } else {
                        w.extend_from_slice(&paths[src[c]].0);
                        w.push(arrow);
                    }
                    v[coord[&w]] += x;
                }
                v
            };
            for &a in quiver.arrows_from(i) {
                let k = quiver.target(a);
                if let Some(kk) = kernels.get(&(k, j)) {
                    for kv in kk {
                        generated.push(shift(kv, &long[&(k, j)], a, true));
                    }
                }
            }
            for &a in quiver.arrows_to(j) {
                let k = quiver.source(a);
                if let Some(kk) = kernels.get(&(i, k)) {
                    for kv in kk {
                        generated.push(shift(kv, &long[&(i, k)], a, false));
                    }
                }
            }
            let mut rank = span_rank(&generated, len);
            for kv in ker {
                generated.push(kv.clone());
                let r = span_rank(&generated, len);
                if r > rank {
                    rank = r;
                    let mut rel = PathVector::zero();
                    for (c, x) in kv.iter().enumerate() {
                        if !x.is_zero() {
                            let p = Path::from_arrows(&quiver, &paths[long[&(i, j)][c]].0).expect("path");
                            rel.add_term(p, x.clone());
                        }
                    }
                    relations.push(rel);
                } else {
                    generated.pop();
                }
            }
        }
        let algebra = BoundAlgebra::new(quiver, relations, d_max)?;
        if algebra.dim_matrix() != self.dims {
            return Err(MeshError::Internal("presented algebra has the wrong dimensions".into()));
        }
        Ok(Presentation { algebra, arrow_elements })
    }
}

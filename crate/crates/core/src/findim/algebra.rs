use super::module::{Morphism, Representation};
use super::FindimError;
use crate::groebner::{groebner, quotient_dims, QuotientPresentation, DEFAULT_DMAX};
use crate::linalg::{Matrix, Q};
use crate::path::{paths_of_length, relations_from_json, relations_to_json, Path, PathVector};
use crate::quiver::{Quiver, QuiverFile};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;

/// `kQ / I` with a certified finite normal-word basis and precomputed structure constants.
#[derive(Clone, Debug)]
pub struct BoundAlgebra {
    quiver: Quiver,
    relations: Vec<PathVector>,
    pres: QuotientPresentation,
    basis: Vec<Path>,
    pair: Vec<Vec<Vec<usize>>>,
    local: Vec<usize>,
    mult: HashMap<(usize, usize), Vec<(usize, Q)>>,
}

/// A map between free modules `P = sum_j e_{source_j} A -> sum_i e_{target_i} A`, sending the
/// generator of summand `j` to `sum_i x_ij` with `x_ij` in `e_{target_i} A e_{source_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub entries: Vec<Vec<Vec<Q>>>,
}

impl FreeMap {
    pub fn zero(alg: &BoundAlgebra, source: Vec<usize>, target: Vec<usize>) -> FreeMap {
        let entries = target
            .iter()
            .map(|&t| source.iter().map(|&s| vec![Q::zero(); alg.pair_dim(t, s)]).collect())
            .collect();
        FreeMap { source, target, entries }
    }
}

impl BoundAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<PathVector>, d_max: usize) -> Result<BoundAlgebra, FindimError> {
        quiver.require_ungraded()?;
        for r in &relations {
            if r.terms().any(|(p, _)| p.len() < 2) {
                return Err(FindimError::NotAdmissible(r.display(&quiver)));
            }
        }
        let pres = groebner(&quiver, &relations, d_max)?;
        let verdict = quotient_dims(&pres).verdict;
        let basis = match pres.basis() {
            Some(b) => b.to_vec(),
            None => return Err(FindimError::NotFinite(verdict)),
        };
        let n = quiver.vertex_count();
        let mut pair = vec![vec![Vec::new(); n]; n];
        let mut local = vec![0; basis.len()];
        for (g, p) in basis.iter().enumerate() {
            local[g] = pair[p.start][p.end].len();
            pair[p.start][p.end].push(g);
        }
        let mut alg = BoundAlgebra { quiver, relations, pres, basis, pair, local, mult: HashMap::new() };
        let mut mult = HashMap::new();
        for (gi, p) in alg.basis.iter().enumerate() {
            for v in 0..n {
                for &gj in &alg.pair[p.end][v] {
                    let w = p.concat(&alg.basis[gj]).expect("composable");
                    let r = alg.pres.reduce(&PathVector::from_path(w));
                    let coords: Vec<(usize, Q)> =
                        r.terms().map(|(t, c)| (alg.local[alg.pres.basis_index(t).unwrap()], c.clone())).collect();
                    mult.insert((gi, gj), coords);
                }
            }
        }
        alg.mult = mult;
        Ok(alg)
    }

    pub fn path_algebra(quiver: Quiver) -> Result<BoundAlgebra, FindimError> {
        BoundAlgebra::new(quiver, Vec::new(), DEFAULT_DMAX)
    }

    pub fn from_json(v: &Value, d_max: usize) -> Result<BoundAlgebra, FindimError> {
        let qv = v.get("quiver").ok_or_else(|| FindimError::Malformed("missing \"quiver\"".into()))?;
        let file: QuiverFile = serde_json::from_value(qv.clone()).map_err(|e| FindimError::Malformed(e.to_string()))?;
        let quiver = Quiver::from_file(file)?;
        let rels = match v.get("relations") {
            Some(r) => relations_from_json(&quiver, r)?,
            None => Vec::new(),
        };
        BoundAlgebra::new(quiver, rels, d_max)
    }

    pub fn to_json(&self) -> Value {
        json!({"quiver": self.quiver.to_json_value(), "relations": relations_to_json(&self.quiver, &self.relations)})
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathVector] {
        &self.relations
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.pres
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn pair_dim(&self, i: usize, j: usize) -> usize {
        self.pair[i][j].len()
    }

    pub fn pair_word(&self, i: usize, j: usize, k: usize) -> &Path {
        &self.basis[self.pair[i][j][k]]
    }

    pub fn dim_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        (0..n).map(|i| (0..n).map(|j| self.pair_dim(i, j)).collect()).collect()
    }

    /// Coordinates of a path in the basis of `e_start A e_end`.
    pub fn path_coords(&self, p: &Path) -> Vec<Q> {
        self.element_coords(&PathVector::from_path(p.clone()), p.start, p.end)
    }

    pub fn element_coords(&self, f: &PathVector, i: usize, j: usize) -> Vec<Q> {
        let r = self.pres.reduce(&f.component(i, j));
        let mut v = vec![Q::zero(); self.pair_dim(i, j)];
        for (t, c) in r.terms() {
            v[self.local[self.pres.basis_index(t).unwrap()]] = c.clone();
        }
        v
    }

    pub fn arrow_coords(&self, a: usize) -> Vec<Q> {
        self.path_coords(&Path::arrow(&self.quiver, a))
    }

    pub fn unit_coords(&self, v: usize) -> Vec<Q> {
        self.path_coords(&Path::vertex(v))
    }

    /// `x * y` for `x` in `e_i A e_j`, `y` in `e_j A e_k`.
    pub fn product(&self, i: usize, j: usize, k: usize, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.pair_dim(i, k)];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let ga = self.pair[i][j][a];
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let gb = self.pair[j][k][b];
                for (idx, c) in &self.mult[&(ga, gb)] {
                    out[*idx] += xa * yb * c;
                }
            }
        }
        out
    }

    /// Matrix of `y -> x * y` from `e_v A e_z` to `e_u A e_z`, for `x` in `e_u A e_v`.
    pub fn left_mult_matrix(&self, u: usize, v: usize, z: usize, x: &[Q]) -> Matrix {
        let (rows, cols) = (self.pair_dim(u, z), self.pair_dim(v, z));
        let mut m = Matrix::zeros(rows, cols);
        for c in 0..cols {
            let mut e = vec![Q::zero(); cols];
            e[c] = Q::one();
            for (r, val) in self.product(u, v, z, x, &e).into_iter().enumerate() {
                m[(r, c)] = val;
            }
        }
        m
    }

    /// Matrix of `y -> y * x` from `e_z A e_v` to `e_z A e_w`, for `x` in `e_v A e_w`.
    pub fn right_mult_matrix(&self, z: usize, v: usize, w: usize, x: &[Q]) -> Matrix {
        let (rows, cols) = (self.pair_dim(z, w), self.pair_dim(z, v));
        let mut m = Matrix::zeros(rows, cols);
        for c in 0..cols {
            let mut e = vec![Q::zero(); cols];
            e[c] = Q::one();
            for (r, val) in self.product(z, v, w, &e, x).into_iter().enumerate() {
                m[(r, c)] = val;
            }
        }
        m
    }

    /// The opposite algebra: reversed quiver, relations read backwards.
    pub fn opposite(&self) -> BoundAlgebra {
        let op = self.quiver.opposite();
        let rels = self
            .relations
            .iter()
            .map(|r| {
                let mut v = PathVector::zero();
                for (p, c) in r.terms() {
                    let arrows: Vec<usize> = p.arrows.iter().rev().copied().collect();
                    v.add_term(Path::from_arrows(&op, &arrows).unwrap(), c.clone());
                }
                v
            })
            .collect();
        BoundAlgebra::new(op, rels, self.pres.d_max).expect("opposite of a finite algebra is finite")
    }

    /// Smallest `L` with every path of length `L` zero in the algebra.
    pub fn loewy_length(&self) -> usize {
        let mut l = 1;
        loop {
            let all_zero = paths_of_length(&self.quiver, l)
                .into_iter()
                .all(|p| self.pres.reduce(&PathVector::from_path(p)).is_zero());
            if all_zero {
                return l;
            }
            l += 1;
        }
    }

    /// The indecomposable projective `e_v A`.
    pub fn projective(&self, v: usize) -> Representation {
        self.free_module(&[v])
    }

    /// `sum_i e_{v_i} A` as a representation; at vertex `z` the blocks are `e_{v_i} A e_z`.
    pub fn free_module(&self, summands: &[usize]) -> Representation {
        let n = self.vertex_count();
        let dims: Vec<usize> = (0..n).map(|z| summands.iter().map(|&v| self.pair_dim(v, z)).sum()).collect();
        let maps = (0..self.quiver.arrow_count())
            .map(|a| {
                let (s, t) = (self.quiver.source(a), self.quiver.target(a));
                let alpha = self.arrow_coords(a);
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (mut ro, mut co) = (0, 0);
                for &v in summands {
                    let block = self.right_mult_matrix(v, s, t, &alpha);
                    m.set_block(ro, co, &block);
                    ro += self.pair_dim(v, t);
                    co += self.pair_dim(v, s);
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// The indecomposable injective `D(A e_v)`.
    pub fn injective(&self, v: usize) -> Representation {
        self.injective_sum(&[v])
    }

    /// `sum_i D(A e_{v_i})`; at vertex `z` the blocks are dual to `e_z A e_{v_i}`.
    pub fn injective_sum(&self, summands: &[usize]) -> Representation {
        let n = self.vertex_count();
        let dims: Vec<usize> = (0..n).map(|z| summands.iter().map(|&v| self.pair_dim(z, v)).sum()).collect();
        let maps = (0..self.quiver.arrow_count())
            .map(|a| {
                let (s, t) = (self.quiver.source(a), self.quiver.target(a));
                let alpha = self.arrow_coords(a);
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (mut ro, mut co) = (0, 0);
                for &v in summands {
                    let block = self.left_mult_matrix(s, t, v, &alpha).transpose();
                    m.set_block(ro, co, &block);
                    ro += self.pair_dim(t, v);
                    co += self.pair_dim(s, v);
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    pub fn simple(&self, v: usize) -> Representation {
        Representation::simple(&self.quiver, v)
    }

    /// The module morphism induced by a free map.
    pub fn free_map_morphism(&self, f: &FreeMap) -> Morphism {
        let n = self.vertex_count();
        let blocks = (0..n)
            .map(|z| {
                let rows: usize = f.target.iter().map(|&t| self.pair_dim(t, z)).sum();
                let cols: usize = f.source.iter().map(|&s| self.pair_dim(s, z)).sum();
                let mut m = Matrix::zeros(rows, cols);
                let mut ro = 0;
                for (i, &t) in f.target.iter().enumerate() {
                    let mut co = 0;
                    for (j, &s) in f.source.iter().enumerate() {
                        let block = self.left_mult_matrix(t, s, z, &f.entries[i][j]);
                        m.set_block(ro, co, &block);
                        co += self.pair_dim(s, z);
                    }
                    ro += self.pair_dim(t, z);
                }
                m
            })
            .collect();
        Morphism { blocks }
    }

    /// The Nakayama functor on a free map: `sum_j D(A e_{source_j}) -> sum_i D(A e_{target_i})`.
    pub fn nakayama_morphism(&self, f: &FreeMap) -> Morphism {
        let n = self.vertex_count();
        let blocks = (0..n)
            .map(|z| {
                let rows: usize = f.target.iter().map(|&t| self.pair_dim(z, t)).sum();
                let cols: usize = f.source.iter().map(|&s| self.pair_dim(z, s)).sum();
                let mut m = Matrix::zeros(rows, cols);
                let mut ro = 0;
                for (i, &t) in f.target.iter().enumerate() {
                    let mut co = 0;
                    for (j, &s) in f.source.iter().enumerate() {
                        let block = self.right_mult_matrix(z, t, s, &f.entries[i][j]).transpose();
                        m.set_block(ro, co, &block);
                        co += self.pair_dim(z, s);
                    }
                    ro += self.pair_dim(z, t);
                }
                m
            })
            .collect();
        Morphism { blocks }
    }

    /// Column of the generator of summand `j` of a free module at its own vertex.
    pub fn generator_column(&self, summands: &[usize], j: usize) -> usize {
        let w = summands[j];
        let offset: usize = summands[..j].iter().map(|&v| self.pair_dim(v, w)).sum();
        let unit = self.unit_coords(w);
        offset + unit.iter().position(|c| !c.is_zero()).expect("idempotent survives")
    }

    /// Splits a vector of `(sum_i e_{v_i} A) e_z` into per-summand coordinates.
    pub fn split_free_vector(&self, summands: &[usize], z: usize, v: &[Q]) -> Vec<Vec<Q>> {
        let mut out = Vec::with_capacity(summands.len());
        let mut off = 0;
        for &s in summands {
            let d = self.pair_dim(s, z);
            out.push(v[off..off + d].to_vec());
            off += d;
        }
        out
    }

    /// Matrix by which `x` in `e_i A e_j` acts on a representation: `M_i -> M_j`.
    pub fn element_action(&self, m: &Representation, i: usize, j: usize, x: &[Q]) -> Matrix {
        let mut out = Matrix::zeros(m.dims[j], m.dims[i]);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.pair_word(i, j, k);
            out = out.add(&m.path_matrix(&self.quiver, p).scale(c));
        }
        out
    }

    pub fn satisfies_relations(&self, m: &Representation) -> bool {
        self.relations.iter().all(|r| {
            r.uniform_components().iter().all(|c| {
                let (p, _) = c.leading().unwrap();
                let (s, t) = (p.start, p.end);
                let mut acc = Matrix::zeros(m.dims[t], m.dims[s]);
                for (p, coef) in c.terms() {
                    acc = acc.add(&m.path_matrix(&self.quiver, p).scale(coef));
                }
                acc.is_zero()
            })
        })
    }

    pub fn check_module(&self, m: &Representation) -> Result<(), FindimError> {
        m.check_shapes(&self.quiver)?;
        for r in &self.relations {
            for c in r.uniform_components() {
                let (p, _) = c.leading().unwrap();
                let (s, t) = (p.start, p.end);
                let mut acc = Matrix::zeros(m.dims[t], m.dims[s]);
                for (p, coef) in c.terms() {
                    acc = acc.add(&m.path_matrix(&self.quiver, p).scale(coef));
                }
                if !acc.is_zero() {
                    return Err(FindimError::RelationViolated(r.display(&self.quiver)));
                }
            }
        }
        Ok(())
    }
}

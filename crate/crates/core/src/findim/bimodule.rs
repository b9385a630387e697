use super::algebra::BoundAlgebra;
use super::homological::{lift_chain_map, minimal_projective_resolution, Resolution};
use super::module::Morphism;
use super::FindimError;
use crate::linalg::{Matrix, Quotient, Q};
use num_traits::Zero;

/// An `A`-`A`-bimodule given by the spaces `e_u X e_v` and the actions of arrows.
/// `left[a][v]` maps `e_{t(a)} X e_v -> e_{s(a)} X e_v` (`x -> a x`) and
/// `right[a][u]` maps `e_u X e_{s(a)} -> e_u X e_{t(a)}` (`x -> x a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub dims: Vec<Vec<usize>>,
    pub left: Vec<Vec<Matrix>>,
    pub right: Vec<Vec<Matrix>>,
}

impl Bimodule {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The regular bimodule `A`.
    pub fn regular(alg: &BoundAlgebra) -> Bimodule {
        let q = alg.quiver();
        let n = alg.vertex_count();
        let dims = alg.dim_matrix();
        let left = (0..q.arrow_count())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                (0..n).map(|v| alg.left_mult_matrix(s, t, v, &alg.arrow_coords(a))).collect()
            })
            .collect();
        let right = (0..q.arrow_count())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                (0..n).map(|u| alg.right_mult_matrix(u, s, t, &alg.arrow_coords(a))).collect()
            })
            .collect();
        Bimodule { dims, left, right }
    }

    /// Left action of a basis word `a_1 ... a_m` (from `u` to `w`): `e_w X e_v -> e_u X e_v`.
    fn left_word(&self, alg: &BoundAlgebra, arrows: &[usize], w: usize, v: usize) -> Matrix {
        let q = alg.quiver();
        let mut m = Matrix::identity(self.dims[w][v]);
        for &a in arrows.iter().rev() {
            m = self.left[a][v].mul(&m);
        }
        let _ = q;
        m
    }

    /// Right action of a basis word (from `v` to `w`): `e_u X e_v -> e_u X e_w`.
    fn right_word(&self, arrows: &[usize], u: usize, v: usize) -> Matrix {
        let mut m = Matrix::identity(self.dims[u][v]);
        for &a in arrows {
            m = self.right[a][u].mul(&m);
        }
        m
    }

    /// Checks that the actions commute and that the relations act by zero on both sides.
    pub fn is_valid(&self, alg: &BoundAlgebra) -> bool {
        let q = alg.quiver();
        let n = alg.vertex_count();
        for a in 0..q.arrow_count() {
            for b in 0..q.arrow_count() {
                let (sa, ta) = (q.source(a), q.target(a));
                let (sb, tb) = (q.source(b), q.target(b));
                // e_{ta} X e_{sb} -> e_{sa} X e_{tb}, both orders
                let lr = self.left[a][tb].mul(&self.right[b][ta]);
                let rl = self.right[b][sa].mul(&self.left[a][sb]);
                if lr != rl {
                    return false;
                }
            }
        }
        for r in alg.relations() {
            for c in r.uniform_components() {
                let (p, _) = c.leading().unwrap();
                let (s, t) = (p.start, p.end);
                for v in 0..n {
                    let mut acc = Matrix::zeros(self.dims[s][v], self.dims[t][v]);
                    for (p, coef) in c.terms() {
                        acc = acc.add(&self.left_word(alg, &p.arrows, t, v).scale(coef));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
                for u in 0..n {
                    let mut acc = Matrix::zeros(self.dims[u][t], self.dims[u][s]);
                    for (p, coef) in c.terms() {
                        acc = acc.add(&self.right_word(&p.arrows, u, s).scale(coef));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Blocks of `Hom(sum_j e_{w_j} A, P_u) = sum_j e_u A e_{w_j}`.
fn hom_free_dim(alg: &BoundAlgebra, terms: &[usize], u: usize) -> usize {
    terms.iter().map(|&w| alg.pair_dim(u, w)).sum()
}

/// `Ext^2_A(DA, A)`, with `e_u X e_v = Ext^2(D(A e_v), e_u A)`.
pub fn ext2_bimodule(alg: &BoundAlgebra) -> Result<Bimodule, FindimError> {
    let q = alg.quiver();
    let n = alg.vertex_count();
    let injectives: Vec<_> = (0..n).map(|v| alg.injective(v)).collect();
    let resolutions: Vec<Resolution> = injectives.iter().map(|m| minimal_projective_resolution(alg, m, 3)).collect();
    for (v, r) in resolutions.iter().enumerate() {
        if r.projective_dimension.map_or(true, |d| d > 2) {
            return Err(FindimError::GlobalDimensionTooLarge(format!(
                "injective at {:?} has projective dimension above 2",
                q.vertex(v)
            )));
        }
    }
    let p2: Vec<Vec<usize>> = resolutions.iter().map(|r| r.terms.get(2).cloned().unwrap_or_default()).collect();
    let p1: Vec<Vec<usize>> = resolutions.iter().map(|r| r.terms.get(1).cloned().unwrap_or_default()).collect();
    // quots[u][v]: coker(Hom(P_1(v), P_u) -> Hom(P_2(v), P_u))
    let mut quots: Vec<Vec<Quotient>> = Vec::with_capacity(n);
    for u in 0..n {
        let mut row = Vec::with_capacity(n);
        for v in 0..n {
            let rows = hom_free_dim(alg, &p2[v], u);
            let cols = hom_free_dim(alg, &p1[v], u);
            let mut delta = Matrix::zeros(rows, cols);
            if let Some(d2) = resolutions[v].differentials.get(1) {
                let mut ro = 0;
                for (j, &w) in d2.source.iter().enumerate() {
                    let mut co = 0;
                    for (i, &vi) in d2.target.iter().enumerate() {
                        delta.set_block(ro, co, &alg.right_mult_matrix(u, vi, w, &d2.entries[i][j]));
                        co += alg.pair_dim(u, vi);
                    }
                    ro += alg.pair_dim(u, w);
                }
            }
            let spanning: Vec<Vec<Q>> = (0..delta.cols()).map(|j| delta.column(j)).collect();
            row.push(Quotient::new(rows, &spanning));
        }
        quots.push(row);
    }
    let dims: Vec<Vec<usize>> = quots.iter().map(|r| r.iter().map(Quotient::dim).collect()).collect();
    let left = (0..q.arrow_count())
        .map(|a| {
            let (s, t) = (q.source(a), q.target(a));
            let alpha = alg.arrow_coords(a);
            (0..n)
                .map(|v| {
                    let mut m = Matrix::zeros(hom_free_dim(alg, &p2[v], s), hom_free_dim(alg, &p2[v], t));
                    let (mut ro, mut co) = (0, 0);
                    for &w in &p2[v] {
                        m.set_block(ro, co, &alg.left_mult_matrix(s, t, w, &alpha));
                        ro += alg.pair_dim(s, w);
                        co += alg.pair_dim(t, w);
                    }
                    quots[s][v].proj.mul(&m).mul(&quots[t][v].sect)
                })
                .collect()
        })
        .collect();
    let right = (0..q.arrow_count())
        .map(|b| {
            let (s, t) = (q.source(b), q.target(b));
            let beta = alg.arrow_coords(b);
            // g: I_t -> I_s, m -> b m
            let g = Morphism {
                blocks: (0..n).map(|z| alg.right_mult_matrix(z, s, t, &beta).transpose()).collect(),
            };
            let chain = lift_chain_map(alg, &resolutions[t], &resolutions[s], &g, 2);
            (0..n)
                .map(|u| {
                    let rows = hom_free_dim(alg, &p2[t], u);
                    let cols = hom_free_dim(alg, &p2[s], u);
                    let mut m = Matrix::zeros(rows, cols);
                    if let Some(g2) = chain.get(2) {
                        let mut ro = 0;
                        for (j, &wj) in g2.source.iter().enumerate() {
                            let mut co = 0;
                            for (i, &wi) in g2.target.iter().enumerate() {
                                m.set_block(ro, co, &alg.right_mult_matrix(u, wi, wj, &g2.entries[i][j]));
                                co += alg.pair_dim(u, wi);
                            }
                            ro += alg.pair_dim(u, wj);
                        }
                    }
                    quots[u][t].proj.mul(&m).mul(&quots[u][s].sect)
                })
                .collect()
        })
        .collect();
    Ok(Bimodule { dims, left, right })
}

/// `X (x)_A Y`.
pub fn tensor(alg: &BoundAlgebra, x: &Bimodule, y: &Bimodule) -> Bimodule {
    let q = alg.quiver();
    let n = alg.vertex_count();
    // offsets[u][v][w]: start of the block e_u X e_w (x) e_w Y e_v
    let mut offsets = vec![vec![vec![0usize; n]; n]; n];
    let mut ambient = vec![vec![0usize; n]; n];
    for u in 0..n {
        for v in 0..n {
            let mut off = 0;
            for w in 0..n {
                offsets[u][v][w] = off;
                off += x.dims[u][w] * y.dims[w][v];
            }
            ambient[u][v] = off;
        }
    }
    let idx = |u: usize, v: usize, w: usize, i: usize, j: usize| offsets[u][v][w] + i * y.dims[w][v] + j;
    let mut quots: Vec<Vec<Quotient>> = Vec::with_capacity(n);
    for u in 0..n {
        let mut row = Vec::with_capacity(n);
        for v in 0..n {
            let mut rels: Vec<Vec<Q>> = Vec::new();
            for a in 0..q.arrow_count() {
                let (w, w2) = (q.source(a), q.target(a));
                let ra = &x.right[a][u];
                let la = &y.left[a][v];
                for i in 0..x.dims[u][w] {
                    for j in 0..y.dims[w2][v] {
                        let mut vec = vec![Q::zero(); ambient[u][v]];
                        for i2 in 0..x.dims[u][w2] {
                            let c = &ra[(i2, i)];
                            if !c.is_zero() {
                                vec[idx(u, v, w2, i2, j)] += c;
                            }
                        }
                        for j2 in 0..y.dims[w][v] {
                            let c = &la[(j2, j)];
                            if !c.is_zero() {
                                vec[idx(u, v, w, i, j2)] -= c;
                            }
                        }
                        if vec.iter().any(|c| !c.is_zero()) {
                            rels.push(vec);
                        }
                    }
                }
            }
            row.push(Quotient::new(ambient[u][v], &rels));
        }
        quots.push(row);
    }
    let dims: Vec<Vec<usize>> = quots.iter().map(|r| r.iter().map(Quotient::dim).collect()).collect();
    let left = (0..q.arrow_count())
        .map(|a| {
            let (s, t) = (q.source(a), q.target(a));
            (0..n)
                .map(|v| {
                    let mut m = Matrix::zeros(ambient[s][v], ambient[t][v]);
                    for w in 0..n {
                        let la = &x.left[a][w];
                        for i in 0..x.dims[t][w] {
                            for j in 0..y.dims[w][v] {
                                for i2 in 0..x.dims[s][w] {
                                    let c = &la[(i2, i)];
                                    if !c.is_zero() {
                                        m[(idx(s, v, w, i2, j), idx(t, v, w, i, j))] = c.clone();
                                    }
                                }
                            }
                        }
                    }
                    quots[s][v].proj.mul(&m).mul(&quots[t][v].sect)
                })
                .collect()
        })
        .collect();
    let right = (0..q.arrow_count())
        .map(|b| {
            let (s, t) = (q.source(b), q.target(b));
            (0..n)
                .map(|u| {
                    let mut m = Matrix::zeros(ambient[u][t], ambient[u][s]);
                    for w in 0..n {
                        let rb = &y.right[b][w];
                        for i in 0..x.dims[u][w] {
                            for j in 0..y.dims[w][s] {
                                for j2 in 0..y.dims[w][t] {
                                    let c = &rb[(j2, j)];
                                    if !c.is_zero() {
                                        m[(idx(u, t, w, i, j2), idx(u, s, w, i, j))] = c.clone();
                                    }
                                }
                            }
                        }
                    }
                    quots[u][t].proj.mul(&m).mul(&quots[u][s].sect)
                })
                .collect()
        })
        .collect();
    Bimodule { dims, left, right }
}

/// `X, X (x) X, ...` up to the first zero power or `bound` powers.
pub(crate) fn tensor_power_sequence(alg: &BoundAlgebra, x: &Bimodule, bound: usize) -> Vec<Bimodule> {
    let mut out = Vec::new();
    let mut cur = x.clone();
    for _ in 0..bound {
        let zero = cur.is_zero();
        out.push(cur.clone());
        if zero {
            break;
        }
        cur = tensor(alg, &cur, x);
    }
    out
}

/// `X^{(x) n}` for `n >= 1`.
pub fn tensor_power(alg: &BoundAlgebra, x: &Bimodule, n: usize) -> Bimodule {
    let mut cur = x.clone();
    for _ in 1..n {
        cur = tensor(alg, &cur, x);
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDims {
    /// `per_pair[u][v] = dim e_u T_A(X) e_v`.
    pub per_pair: Vec<Vec<usize>>,
    pub total: usize,
    /// Dimension matrices of `X^{(x) n}` for `n = 0, 1, ...` up to the last nonzero power.
    pub powers: Vec<Vec<Vec<usize>>>,
}

pub fn tensor_algebra_dims(alg: &BoundAlgebra, x: &Bimodule, bound: usize) -> Result<TensorDims, FindimError> {
    let seq = tensor_power_sequence(alg, x, bound);
    if !seq.last().is_some_and(Bimodule::is_zero) {
        return Err(FindimError::BoundExceeded(bound));
    }
    let mut powers = vec![alg.dim_matrix()];
    for p in &seq {
        if !p.is_zero() {
            powers.push(p.dims.clone());
        }
    }
    let n = alg.vertex_count();
    let mut per_pair = vec![vec![0; n]; n];
    for p in &powers {
        for u in 0..n {
            for v in 0..n {
                per_pair[u][v] += p[u][v];
            }
        }
    }
    let total = per_pair.iter().flatten().sum();
    Ok(TensorDims { per_pair, total, powers })
}

use super::algebra::BoundAlgebra;
use super::homological::{ext_dim, tor2_nilpotent, Nilpotency};
use super::FindimError;
use crate::linalg::{span_rank, Q};
use crate::path::{Path, PathVector};
use crate::quiver::{Arrow, Quiver};
use num_traits::Zero;
use std::collections::HashMap;

/// All paths of length below `limit`, grouped by endpoints.
fn paths_below(q: &Quiver, limit: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::vertex).collect();
    for _ in 0..limit {
        let mut next = Vec::new();
        for p in &layer {
            for &a in q.arrows_from(p.end) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path { start: p.start, end: q.target(a), arrows });
            }
        }
        out.append(&mut layer);
        layer = next;
    }
    out
}

/// `dim e_s (I / (I J + J I)) e_t` for every vertex pair, `J` the arrow ideal.
pub fn minimal_relation_dims(alg: &BoundAlgebra) -> Vec<Vec<usize>> {
    let q = alg.quiver();
    let n = q.vertex_count();
    let limit = alg.loewy_length() + 1;
    let paths = paths_below(q, limit);
    let mut coord: HashMap<&Path, usize> = HashMap::new();
    let mut pair_size = vec![vec![0usize; n]; n];
    for p in &paths {
        coord.insert(p, pair_size[p.start][p.end]);
        pair_size[p.start][p.end] += 1;
    }
    let ending: Vec<Vec<&Path>> = (0..n).map(|v| paths.iter().filter(|p| p.end == v).collect()).collect();
    let starting: Vec<Vec<&Path>> = (0..n).map(|v| paths.iter().filter(|p| p.start == v).collect()).collect();
    let mut all: Vec<Vec<Vec<Vec<Q>>>> = vec![vec![Vec::new(); n]; n];
    let mut outer: Vec<Vec<Vec<Vec<Q>>>> = vec![vec![Vec::new(); n]; n];
    let comps: Vec<PathVector> = alg.relations().iter().flat_map(PathVector::uniform_components).collect();
    for r in &comps {
        let (lw, _) = r.leading().unwrap();
        let (s, t) = (lw.start, lw.end);
        let min_len = r.min_len();
        for u in &ending[s] {
            for v in &starting[t] {
                if u.len() + v.len() + min_len >= limit {
                    continue;
                }
                let (x, y) = (u.start, v.end);
                let mut vec = vec![Q::zero(); pair_size[x][y]];
                for (p, c) in r.sandwich(u, v).terms() {
                    if p.len() < limit {
                        vec[coord[p]] += c;
                    }
                }
                if vec.iter().all(Zero::is_zero) {
                    continue;
                }
                if u.len() + v.len() >= 1 {
                    outer[x][y].push(vec.clone());
                }
                all[x][y].push(vec);
            }
        }
    }
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| span_rank(&all[x][y], pair_size[x][y]) - span_rank(&outer[x][y], pair_size[x][y]))
                .collect()
        })
        .collect()
}

/// `dim Ext^2(S_s, S_t)` for every vertex pair.
pub fn ext2_simple_dims(alg: &BoundAlgebra) -> Vec<Vec<usize>> {
    let n = alg.vertex_count();
    let simples: Vec<_> = (0..n).map(|v| alg.simple(v)).collect();
    (0..n).map(|s| (0..n).map(|t| ext_dim(alg, &simples[s], &simples[t], 2)).collect()).collect()
}

/// The quiver of `T_A Ext^2(DA, A)`: the quiver of `A` with, for each minimal relation from `s`
/// to `t`, a new arrow `t -> s`.
pub fn tilde_quiver(alg: &BoundAlgebra, bound: usize) -> Result<Quiver, FindimError> {
    match tor2_nilpotent(alg, bound)? {
        Nilpotency::Nilpotent(_) => {}
        Nilpotency::AboveBound(_) => return Err(FindimError::InfiniteTensorAlgebra),
    }
    let q = alg.quiver();
    let dims = minimal_relation_dims(alg);
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    let taken = |id: &str, arrows: &[Arrow]| arrows.iter().any(|a| a.id == id);
    for (s, row) in dims.iter().enumerate() {
        for (t, &k) in row.iter().enumerate() {
            for i in 0..k {
                let base = if k == 1 {
                    format!("rho_{}_{}", q.vertex(s), q.vertex(t))
                } else {
                    format!("rho_{}_{}_{}", q.vertex(s), q.vertex(t), i + 1)
                };
                let mut id = base.clone();
                while taken(&id, &arrows) {
                    id.push('\'');
                }
                arrows.push(Arrow::new(&id, q.vertex(t), q.vertex(s)));
            }
        }
    }
    Ok(Quiver::new(q.vertices().to_vec(), arrows)?)
}

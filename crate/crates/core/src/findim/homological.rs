use super::algebra::{BoundAlgebra, FreeMap};
use super::bimodule::{ext2_bimodule, tensor_power_sequence};
use super::module::{Morphism, Representation};
use super::FindimError;
use crate::linalg::{Matrix, Q};

/// A minimal projective resolution `... -> P_1 -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Summand vertices of each `P_k`.
    pub terms: Vec<Vec<usize>>,
    /// `differentials[k - 1]` is `d_k: P_k -> P_{k-1}`.
    pub differentials: Vec<FreeMap>,
    pub augmentation: Morphism,
    /// Projective dimension, when the resolution terminated within the requested length.
    pub projective_dimension: Option<usize>,
}

struct Cover {
    summands: Vec<usize>,
    gens: Vec<Vec<Q>>,
    map: Morphism,
}

fn projective_cover(alg: &BoundAlgebra, m: &Representation) -> Cover {
    let q = alg.quiver();
    let (summands, gens): (Vec<usize>, Vec<Vec<Q>>) = m.top_generators(q).into_iter().unzip();
    let n = alg.vertex_count();
    let blocks = (0..n)
        .map(|y| {
            let cols: usize = summands.iter().map(|&z| alg.pair_dim(z, y)).sum();
            let mut b = Matrix::zeros(m.dims[y], cols);
            let mut co = 0;
            for (i, &z) in summands.iter().enumerate() {
                for k in 0..alg.pair_dim(z, y) {
                    let p = alg.pair_word(z, y, k);
                    let v = m.path_matrix(q, p).mul_vec(&gens[i]);
                    for (r, x) in v.into_iter().enumerate() {
                        b[(r, co + k)] = x;
                    }
                }
                co += alg.pair_dim(z, y);
            }
            b
        })
        .collect();
    Cover { summands, gens, map: Morphism { blocks } }
}

/// Minimal projective resolution computed up to `P_len`.
pub fn minimal_projective_resolution(alg: &BoundAlgebra, m: &Representation, len: usize) -> Resolution {
    let q = alg.quiver();
    let cover = projective_cover(alg, m);
    let mut terms = vec![cover.summands.clone()];
    let mut differentials = Vec::new();
    let augmentation = cover.map.clone();
    let p0 = alg.free_module(&cover.summands);
    let (mut kernel, mut incl) = p0.kernel(q, &cover.map);
    let mut prev_summands = cover.summands;
    let mut projective_dimension = None;
    for k in 0..=len {
        if kernel.is_zero() {
            projective_dimension = Some(k);
            break;
        }
        if k == len {
            break;
        }
        let c = projective_cover(alg, &kernel);
        let mut d = FreeMap::zero(alg, c.summands.clone(), prev_summands.clone());
        for (j, (&w, g)) in c.summands.iter().zip(&c.gens).enumerate() {
            let image = incl.blocks[w].mul_vec(g);
            for (i, part) in alg.split_free_vector(&prev_summands, w, &image).into_iter().enumerate() {
                d.entries[i][j] = part;
            }
        }
        let pk = alg.free_module(&c.summands);
        let (next_kernel, next_incl_local) = pk.kernel(q, &c.map);
        terms.push(c.summands.clone());
        differentials.push(d);
        kernel = next_kernel;
        incl = next_incl_local;
        prev_summands = c.summands;
    }
    Resolution { terms, differentials, augmentation, projective_dimension }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Finite(usize),
    AboveBound(usize),
}

pub fn global_dimension(alg: &BoundAlgebra, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        let r = minimal_projective_resolution(alg, &alg.simple(v), bound);
        match r.projective_dimension {
            Some(d) => best = best.max(d),
            None => return GlobalDimension::AboveBound(bound),
        }
    }
    GlobalDimension::Finite(best)
}

/// `nu(d)` together with the injective modules it runs between.
pub fn nakayama(alg: &BoundAlgebra, d: &FreeMap) -> (Representation, Representation, Morphism) {
    (alg.injective_sum(&d.source), alg.injective_sum(&d.target), alg.nakayama_morphism(d))
}

/// `tau M = ker(nu P_1 -> nu P_0)` for a minimal presentation of `M`.
pub fn ar_translate(alg: &BoundAlgebra, m: &Representation) -> Representation {
    let r = minimal_projective_resolution(alg, m, 1);
    match r.differentials.first() {
        None => Representation::zero(alg.quiver()),
        Some(d1) => {
            let (src, _, nd) = nakayama(alg, d1);
            src.kernel(alg.quiver(), &nd).0
        }
    }
}

/// Matrix of `Hom(P_{k-1}, N) -> Hom(P_k, N)` induced by a free map `d: P_k -> P_{k-1}`,
/// with `Hom(sum e_v A, N) = sum N_v`.
fn hom_into(alg: &BoundAlgebra, d: &FreeMap, n: &Representation) -> Matrix {
    let rows: usize = d.source.iter().map(|&w| n.dims[w]).sum();
    let cols: usize = d.target.iter().map(|&v| n.dims[v]).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut ro = 0;
    for (j, &w) in d.source.iter().enumerate() {
        let mut co = 0;
        for (i, &v) in d.target.iter().enumerate() {
            m.set_block(ro, co, &alg.element_action(n, v, w, &d.entries[i][j]));
            co += n.dims[v];
        }
        ro += n.dims[w];
    }
    m
}

/// `dim Ext^k(M, N)` from a minimal projective resolution of `M`.
pub fn ext_dim(alg: &BoundAlgebra, m: &Representation, n: &Representation, k: usize) -> usize {
    let r = minimal_projective_resolution(alg, m, k + 1);
    if k >= r.terms.len() {
        return 0;
    }
    let dim_k: usize = r.terms[k].iter().map(|&v| n.dims[v]).sum();
    let rank_in = if k == 0 {
        0
    } else {
        hom_into(alg, &r.differentials[k - 1], n).rank()
    };
    let rank_out = match r.differentials.get(k) {
        Some(d) => hom_into(alg, d, n).rank(),
        None => 0,
    };
    dim_k - rank_out - rank_in
}

/// `Tor_2(N, DA) = ker(nu d_2) / im(nu d_3)` as a representation.
pub fn tor2(alg: &BoundAlgebra, n: &Representation) -> Representation {
    let q = alg.quiver();
    let r = minimal_projective_resolution(alg, n, 3);
    let Some(d2) = r.differentials.get(1) else {
        return Representation::zero(q);
    };
    let (p2, _, nd2) = nakayama(alg, d2);
    let (k, incl) = p2.kernel(q, &nd2);
    match r.differentials.get(2) {
        None => k,
        Some(d3) => {
            let nd3 = alg.nakayama_morphism(d3);
            let blocks = (0..alg.vertex_count())
                .map(|v| incl.blocks[v].solve_matrix(&nd3.blocks[v]).expect("image lies in the kernel"))
                .collect();
            k.cokernel(q, &Morphism { blocks }).0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// Least `n` with the `n`-th power zero.
    Nilpotent(usize),
    AboveBound(usize),
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Nilpotent(_))
    }
}

fn require_gldim_two(alg: &BoundAlgebra) -> Result<(), FindimError> {
    match global_dimension(alg, 3) {
        GlobalDimension::Finite(d) if d <= 2 => Ok(()),
        GlobalDimension::Finite(d) => Err(FindimError::GlobalDimensionTooLarge(d.to_string())),
        GlobalDimension::AboveBound(_) => Err(FindimError::GlobalDimensionTooLarge("above 3".into())),
    }
}

/// Nilpotency of `? (x)_A Ext^2(DA, A)` through the bimodule tensor powers.
pub fn tor2_nilpotent(alg: &BoundAlgebra, bound: usize) -> Result<Nilpotency, FindimError> {
    require_gldim_two(alg)?;
    let x = ext2_bimodule(alg)?;
    let powers = tensor_power_sequence(alg, &x, bound);
    match powers.last() {
        Some(p) if p.is_zero() => Ok(Nilpotency::Nilpotent(powers.len())),
        _ => Ok(Nilpotency::AboveBound(bound)),
    }
}

/// Nilpotency of `Tor_2(?, DA)`, iterated on `DA`. The functor is left exact when the global
/// dimension is at most 2, so it vanishes on every module once it vanishes on `DA`.
pub fn tor2_functor_nilpotent(alg: &BoundAlgebra, bound: usize) -> Result<Nilpotency, FindimError> {
    require_gldim_two(alg)?;
    let all: Vec<usize> = (0..alg.vertex_count()).collect();
    let mut n = alg.injective_sum(&all);
    if n.is_zero() {
        return Ok(Nilpotency::Nilpotent(0));
    }
    for k in 1..=bound {
        n = tor2(alg, &n);
        if n.is_zero() {
            return Ok(Nilpotency::Nilpotent(k));
        }
    }
    Ok(Nilpotency::AboveBound(bound))
}

/// Lifts `g: M' -> M` to `g_k: P_k(M') -> P_k(M)` for `k = 0..=upto`.
pub(crate) fn lift_chain_map(
    alg: &BoundAlgebra,
    src: &Resolution,
    tgt: &Resolution,
    g: &Morphism,
    upto: usize,
) -> Vec<FreeMap> {
    let mut out: Vec<FreeMap> = Vec::new();
    for k in 0..=upto {
        if k >= src.terms.len() {
            break;
        }
        let s_terms = &src.terms[k];
        let t_terms = tgt.terms.get(k).cloned().unwrap_or_default();
        let mut gk = FreeMap::zero(alg, s_terms.clone(), t_terms.clone());
        let (src_map, tgt_map) = if k == 0 {
            (src.augmentation.clone(), tgt.augmentation.clone())
        } else {
            (alg.free_map_morphism(&src.differentials[k - 1]), alg.free_map_morphism(&tgt.differentials[k - 1]))
        };
        let prev = if k == 0 { g.clone() } else { alg.free_map_morphism(&out[k - 1]) };
        for (j, &w) in s_terms.iter().enumerate() {
            let col = alg.generator_column(s_terms, j);
            let image = prev.blocks[w].mul_vec(&src_map.blocks[w].column(col));
            if t_terms.is_empty() {
                continue;
            }
            let x = tgt_map.blocks[w].solve(&image).expect("lift exists over a projective");
            for (i, part) in alg.split_free_vector(&t_terms, w, &x).into_iter().enumerate() {
                gk.entries[i][j] = part;
            }
        }
        out.push(gk);
    }
    out
}

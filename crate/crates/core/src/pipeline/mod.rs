//! From a hereditary algebra `kQ` and a preinjective tilting module `T` (or an initial
//! postprojective module) to the category `M`, the algebra `B = End(T)`, the word `w`, the
//! dimension vectors of the functor `F`, and the endomorphism algebra `A~ = T_A Ext^2(DA, A)`.
//!
//! All Hom spaces come from the mesh category of a knitted window; `B`-modules are the
//! representations `Hom(T, X)` and `tau_B` is computed over `B` itself.

mod analysis;
mod input;
mod report;

pub use analysis::{FundamentalSequence, TildeDims};
pub use input::{Setting, Summand, TiltingData};
pub use report::{run_report, CheckReport, Report};

use crate::coxeter::CoxeterSystem;
use crate::findim::{ar_translate, BoundAlgebra, FindimError, Representation};
use crate::linalg::{Matrix, Q};
use crate::mesh::{euler_form, knit_postprojective, FinCat, MeshCategory, MeshError, Presentation};
use crate::quiver::QuiverError;
use num_traits::{One, Zero};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error("malformed pipeline input: {0}")]
    Input(String),
    #[error("not a tilting module: {0}")]
    NotTilting(String),
    #[error("not an initial module: {0}")]
    NotInitial(String),
    #[error("tau_B leaves M: {0}")]
    TauLeavesM(String),
    #[error("tau_B orbits are not intervals ending in H: {0}")]
    IntervalViolation(String),
    #[error("M is not finite inside the scanned window: {0}")]
    NotFinite(String),
    #[error("{0} is not an object of M")]
    UnknownObject(String),
    #[error("{0} lies in add H")]
    InH(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// An indecomposable object of `M`.
#[derive(Clone, Debug)]
pub struct MObject {
    pub name: String,
    /// Vertex of the knitted window.
    pub vertex: usize,
    pub kq_dim: Vec<i64>,
    pub b_dim: Vec<usize>,
    /// Index of the `H`-summand ending the `tau_B`-orbit (a vertex of `Q`).
    pub phi: usize,
    /// The `q` with `X = tau_B^q H_phi`.
    pub tau_power: usize,
    /// Index of `tau_B X` in `M`.
    pub tau_b: Option<usize>,
    pub in_h: bool,
}

/// `M` with `B`, the `tau_B`-orbits and an admissible order.
#[derive(Debug)]
pub struct SliceCategory {
    data: TiltingData,
    mesh: MeshCategory,
    objects: Vec<MObject>,
    t_vertices: Vec<usize>,
    b: Presentation,
    b_op: BoundAlgebra,
    modules: Vec<Representation>,
    /// `orbits[j][p]`: index of `tau_B^p H_j`.
    orbits: Vec<Vec<usize>>,
    lambda: Vec<usize>,
    d_max: usize,
    bound: usize,
}

fn ext1_preinjective(mesh: &MeshCategory, x: usize, y: usize) -> Result<i64, MeshError> {
    let tq = mesh.translation_quiver();
    let (vx, vy) = (tq.vertex(x), tq.vertex(y));
    if vy.power > vx.power {
        Ok(-euler_form(&tq.base().opposite(), &vx.dim, &vy.dim)?)
    } else {
        Ok(0)
    }
}

fn is_iso(alg: &BoundAlgebra, x: &Representation, y: &Representation) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let basis = x.hom_basis(alg.quiver(), y);
    // A generic combination of a Hom basis is invertible iff some element is.
    for seed in 1..=4i64 {
        let mut blocks: Vec<Matrix> = x.dims.iter().map(|&d| Matrix::zeros(d, d)).collect();
        let mut c = seed;
        for f in &basis {
            for (b, fb) in blocks.iter_mut().zip(&f.blocks) {
                *b = b.add(&fb.scale(&Q::from_integer(c.into())));
            }
            c = c * 7 + seed;
        }
        if blocks.iter().all(|b| b.rank() == b.rows()) {
            return true;
        }
    }
    false
}

impl SliceCategory {
    pub fn build(data: TiltingData, d_max: usize, bound: usize) -> Result<SliceCategory, PipelineError> {
        let q = data.quiver.clone();
        let n = q.vertex_count();
        if let Setting::Initial { t } = &data.setting {
            if t.len() != n {
                return Err(PipelineError::Input(format!("{} powers for {} vertices", t.len(), n)));
            }
        }
        if data.lambda.as_ref().is_some_and(|l| l.len() != n) {
            return Err(PipelineError::Input("lambda labels must cover every vertex".into()));
        }
        let (mesh, m_vertices, t_vertices, h_vertices) = match &data.setting {
            Setting::Concealed { summands } => {
                let (tq, t_vertices) = input::locate_summands(&q, summands)?;
                let maxp = t_vertices.iter().map(|&v| tq.vertex(v).power).max().unwrap_or(0);
                let mesh = MeshCategory::new(tq);
                if t_vertices.len() != n {
                    return Err(PipelineError::NotTilting(format!("{} summands for {} vertices", t_vertices.len(), n)));
                }
                for (i, &x) in t_vertices.iter().enumerate() {
                    if t_vertices[..i].contains(&x) {
                        return Err(PipelineError::NotTilting("repeated summand".into()));
                    }
                    for &y in &t_vertices {
                        if ext1_preinjective(&mesh, x, y)? != 0 {
                            let tq = mesh.translation_quiver();
                            return Err(PipelineError::NotTilting(format!("Ext^1({}, {}) != 0", tq.label(x), tq.label(y))));
                        }
                    }
                }
                let tq = mesh.translation_quiver();
                let mut m_vertices = Vec::new();
                for v in 0..tq.vertex_count() {
                    let mut rigid = true;
                    for &t in &t_vertices {
                        if ext1_preinjective(&mesh, t, v)? != 0 {
                            rigid = false;
                            break;
                        }
                    }
                    if rigid {
                        if tq.vertex(v).power > maxp {
                            return Err(PipelineError::NotFinite(tq.label(v)));
                        }
                        m_vertices.push(v);
                    }
                }
                let h_vertices: Vec<usize> = (0..n).map(|j| tq.require(j, 0)).collect::<Result<_, _>>()?;
                (mesh, m_vertices, t_vertices, h_vertices)
            }
            Setting::Initial { t } => {
                let maxt = t.iter().copied().max().unwrap_or(0);
                let tq = knit_postprojective(&q, maxt)?;
                let mut m_vertices = Vec::new();
                for (i, &ti) in t.iter().enumerate() {
                    for p in 0..=ti {
                        m_vertices.push(tq.find(i, p).ok_or_else(|| {
                            PipelineError::NotInitial(format!("tau^-{p} P_{} is zero", q.vertex(i)))
                        })?);
                    }
                }
                for a in tq.arrows() {
                    if m_vertices.contains(&a.target) && !m_vertices.contains(&a.source) {
                        return Err(PipelineError::NotInitial(format!(
                            "{} maps irreducibly to {} but is not in M",
                            tq.label(a.source),
                            tq.label(a.target)
                        )));
                    }
                }
                let t_vertices: Vec<usize> = (0..n).map(|i| tq.find(i, 0).unwrap()).collect();
                let h_vertices: Vec<usize> = (0..n).map(|i| tq.find(i, t[i]).unwrap()).collect();
                (MeshCategory::new(tq), m_vertices, t_vertices, h_vertices)
            }
        };
        let b_names: Vec<String> = match &data.setting {
            Setting::Concealed { .. } => (1..=n).map(|i| i.to_string()).collect(),
            Setting::Initial { .. } => q.vertices().to_vec(),
        };
        let b = FinCat::from_mesh(&mesh, &t_vertices, b_names).present(d_max)?;
        let b_op = b.algebra.opposite();
        let modules: Vec<Representation> = m_vertices.iter().map(|&x| b_module(&mesh, &b, &t_vertices, x)).collect();
        for (k, m) in modules.iter().enumerate() {
            if !b_op.satisfies_relations(m) {
                return Err(PipelineError::Internal(format!("Hom(T, {}) is not a B-module", mesh.translation_quiver().label(m_vertices[k]))));
            }
        }
        // tau_B, matched inside M.
        let mut tau_b: Vec<Option<usize>> = Vec::with_capacity(modules.len());
        for (k, m) in modules.iter().enumerate() {
            let t = ar_translate(&b_op, m);
            if t.is_zero() {
                tau_b.push(None);
                continue;
            }
            let candidates: Vec<usize> = (0..modules.len()).filter(|&i| modules[i].dims == t.dims).collect();
            let found = match candidates.len() {
                0 => None,
                1 => Some(candidates[0]),
                _ => candidates.into_iter().find(|&i| is_iso(&b_op, &t, &modules[i])),
            };
            match found {
                Some(i) => tau_b.push(Some(i)),
                None => {
                    return Err(PipelineError::TauLeavesM(mesh.translation_quiver().label(m_vertices[k])));
                }
            }
        }
        // Orbits of H.
        let h_index: Vec<usize> = h_vertices
            .iter()
            .map(|h| m_vertices.iter().position(|v| v == h).ok_or_else(|| PipelineError::Internal("H is not in M".into())))
            .collect::<Result<_, _>>()?;
        let mut assigned: Vec<Option<(usize, usize)>> = vec![None; m_vertices.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::with_capacity(n);
        for (j, &h) in h_index.iter().enumerate() {
            let mut orbit = Vec::new();
            let mut cur = Some(h);
            while let Some(x) = cur {
                if assigned[x].is_some() {
                    return Err(PipelineError::IntervalViolation(format!(
                        "{} is reached twice",
                        mesh.translation_quiver().label(m_vertices[x])
                    )));
                }
                assigned[x] = Some((j, orbit.len()));
                orbit.push(x);
                cur = tau_b[x];
            }
            orbits.push(orbit);
        }
        if let Some(x) = assigned.iter().position(Option::is_none) {
            return Err(PipelineError::IntervalViolation(format!(
                "{} is not in the tau_B-orbit of H",
                mesh.translation_quiver().label(m_vertices[x])
            )));
        }
        // Admissible order.
        let count = m_vertices.len();
        let mut indeg = vec![0usize; count];
        for i in 0..count {
            for j in 0..count {
                if i != j && mesh.hom_dim(m_vertices[i], m_vertices[j]) > 0 {
                    indeg[j] += 1;
                }
            }
        }
        let key = |x: usize| {
            let (phi, p) = assigned[x].unwrap();
            Reverse((Reverse(p), phi, x))
        };
        let mut heap: BinaryHeap<Reverse<(Reverse<usize>, usize, usize)>> =
            (0..count).filter(|&x| indeg[x] == 0).map(key).collect();
        let mut order = Vec::with_capacity(count);
        while let Some(Reverse((_, _, x))) = heap.pop() {
            order.push(x);
            for y in 0..count {
                if y != x && mesh.hom_dim(m_vertices[x], m_vertices[y]) > 0 {
                    indeg[y] -= 1;
                    if indeg[y] == 0 {
                        heap.push(key(y));
                    }
                }
            }
        }
        if order.len() != count {
            return Err(PipelineError::Internal("Hom relation on M is cyclic".into()));
        }
        let mut new_index = vec![0; count];
        for (k, &x) in order.iter().enumerate() {
            new_index[x] = k;
        }
        let tq = mesh.translation_quiver();
        let objects: Vec<MObject> = order
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                let (phi, p) = assigned[x].unwrap();
                MObject {
                    name: format!("X{}", k + 1),
                    vertex: m_vertices[x],
                    kq_dim: tq.vertex(m_vertices[x]).dim.clone(),
                    b_dim: modules[x].dims.clone(),
                    phi,
                    tau_power: p,
                    tau_b: tau_b[x].map(|t| new_index[t]),
                    in_h: p == 0,
                }
            })
            .collect();
        let modules = order.iter().map(|&x| modules[x].clone()).collect();
        let orbits = orbits.iter().map(|o| o.iter().map(|&x| new_index[x]).collect()).collect();
        let lambda = data.lambda.clone().unwrap_or_else(|| (0..n).collect());
        Ok(SliceCategory { data, mesh, objects, t_vertices, b, b_op, modules, orbits, lambda, d_max, bound })
    }

    pub fn data(&self) -> &TiltingData {
        &self.data
    }

    pub fn mesh(&self) -> &MeshCategory {
        &self.mesh
    }

    /// Objects of `M` in admissible order.
    pub fn objects(&self) -> &[MObject] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Result<usize, PipelineError> {
        self.objects.iter().position(|o| o.name == name).ok_or_else(|| PipelineError::UnknownObject(name.into()))
    }

    pub fn find_kq_dim(&self, dim: &[i64]) -> Option<usize> {
        self.objects.iter().position(|o| o.kq_dim == dim)
    }

    pub fn t_vertices(&self) -> &[usize] {
        &self.t_vertices
    }

    /// `B = End(T)` with arrows in the direction of maps between summands of `T`.
    pub fn b(&self) -> &Presentation {
        &self.b
    }

    /// `Hom(T, X)`, a representation of the opposite of the quiver of `B`.
    pub fn b_module(&self, x: usize) -> &Representation {
        &self.modules[x]
    }

    pub fn b_opposite(&self) -> &BoundAlgebra {
        &self.b_op
    }

    /// Index of `tau_B^p H_j` in `M`.
    pub fn orbit(&self, j: usize, p: usize) -> Option<usize> {
        self.orbits[j].get(p).copied()
    }

    pub fn h(&self, j: usize) -> usize {
        self.orbits[j][0]
    }

    pub fn h_objects(&self) -> Vec<usize> {
        (0..self.orbits.len()).map(|j| self.h(j)).collect()
    }

    /// `M` without `H`, in admissible order.
    pub fn m_bar(&self) -> Vec<usize> {
        (0..self.objects.len()).filter(|&x| !self.objects[x].in_h).collect()
    }

    /// `tau_B^p X`.
    pub fn tau_power(&self, x: usize, p: usize) -> Option<usize> {
        let mut cur = Some(x);
        for _ in 0..p {
            cur = cur.and_then(|c| self.objects[c].tau_b);
        }
        cur
    }

    /// `{tau_B^p H_j}` over all `j` where it exists.
    pub fn tau_h(&self, p: usize) -> Vec<usize> {
        (0..self.orbits.len()).filter_map(|j| self.orbit(j, p)).collect()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.mesh.hom_dim(self.objects[x].vertex, self.objects[y].vertex)
    }

    pub fn factor_rank(&self, x: usize, y: usize, through: &[usize]) -> usize {
        let vs: Vec<usize> = through.iter().map(|&z| self.objects[z].vertex).collect();
        self.mesh.factor_rank(self.objects[x].vertex, self.objects[y].vertex, &vs)
    }

    /// The letters `phi(1) ... phi(N)`, 1-based vertex positions of `Q`.
    pub fn word(&self) -> Vec<usize> {
        self.objects.iter().map(|o| o.phi + 1).collect()
    }

    pub fn word_string(&self) -> String {
        let q = &self.data.quiver;
        let ids: Vec<&str> = self.objects.iter().map(|o| q.vertex(o.phi)).collect();
        if ids.iter().all(|s| s.chars().count() == 1) {
            ids.concat()
        } else {
            ids.join(",")
        }
    }

    pub fn coxeter_system(&self) -> CoxeterSystem {
        CoxeterSystem::from_quiver(&self.data.quiver)
    }

    /// Words of admissible orders, up to `cap` of them; the flag is false when the cap was hit.
    pub fn admissible_words(&self, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let n = self.objects.len();
        let pred: Vec<Vec<usize>> = (0..n).map(|j| (0..n).filter(|&i| i != j && self.hom_dim(i, j) > 0).collect()).collect();
        let mut out = Vec::new();
        let mut used = vec![false; n];
        let mut cur = Vec::with_capacity(n);
        fn rec(
            s: &SliceCategory,
            pred: &[Vec<usize>],
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) -> bool {
            if out.len() >= cap {
                return false;
            }
            if cur.len() == used.len() {
                out.push(cur.iter().map(|&x| s.objects[x].phi + 1).collect());
                return true;
            }
            for x in 0..used.len() {
                if !used[x] && pred[x].iter().all(|&p| used[p]) {
                    used[x] = true;
                    cur.push(x);
                    let ok = rec(s, pred, used, cur, out, cap);
                    cur.pop();
                    used[x] = false;
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        let complete = rec(self, &pred, &mut used, &mut cur, &mut out, cap);
        (out, complete)
    }

    /// Permutation from `H`-indices to `Lambda`-vertex positions.
    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

/// `Hom(T, X)` with `a: s -> t` of `B` acting `Hom(T_t, X) -> Hom(T_s, X)` by precomposition.
fn b_module(mesh: &MeshCategory, b: &Presentation, t: &[usize], x: usize) -> Representation {
    let q = b.algebra.quiver();
    let dims: Vec<usize> = t.iter().map(|&ti| mesh.hom_dim(ti, x)).collect();
    let maps = (0..q.arrow_count())
        .map(|a| {
            let (s, tt) = (q.source(a), q.target(a));
            let mut m = Matrix::zeros(dims[s], dims[tt]);
            for c in 0..dims[tt] {
                let mut g = vec![Q::zero(); dims[tt]];
                g[c] = Q::one();
                let v = mesh.compose(t[s], t[tt], x, &b.arrow_elements[a], &g);
                for (r, e) in v.into_iter().enumerate() {
                    m[(r, c)] = e;
                }
            }
            m
        })
        .collect();
    Representation { dims, maps }
}

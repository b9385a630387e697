use super::{injective_dims, MeshError};
use crate::quiver::Quiver;
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    /// Vertex `(j, p)` is `tau^p I_j`.
    Preinjective,
    /// Vertex `(j, p)` is `tau^{-p} P_j`.
    Postprojective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshVertex {
    pub orbit: usize,
    pub power: usize,
    pub dim: Vec<i64>,
}

/// An irreducible map, labelled by the arrow of the base quiver it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshArrow {
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

/// A finite window of a preinjective or postprojective component.
#[derive(Clone, Debug)]
pub struct TranslationQuiver {
    base: Quiver,
    component: Component,
    vertices: Vec<MeshVertex>,
    arrows: Vec<MeshArrow>,
    lookup: HashMap<(usize, usize), usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    depth: usize,
    complete: bool,
}

fn require_knittable(q: &Quiver) -> Result<Vec<usize>, MeshError> {
    q.require_ungraded()?;
    let order = q.topological_order().ok_or(MeshError::Cyclic)?;
    if !q.is_connected() {
        return Err(MeshError::Disconnected);
    }
    Ok(order)
}

/// Dimension vectors of `tau^p I_j` by layer; `None` once the orbit has ended.
fn knit_layers(q: &Quiver, depth: usize) -> Result<(Vec<Vec<Option<Vec<i64>>>>, bool), MeshError> {
    let order = require_knittable(q)?;
    let n = q.vertex_count();
    let inj = injective_dims(q)?;
    let mut layers: Vec<Vec<Option<Vec<i64>>>> = vec![inj.into_iter().map(Some).collect()];
    for p in 0..depth {
        let cur = &layers[p];
        if cur.iter().all(Option::is_none) {
            break;
        }
        let mut next: Vec<Option<Vec<i64>>> = vec![None; n];
        for &j in order.iter().rev() {
            let Some(x) = &cur[j] else { continue };
            let mut d: Vec<i64> = x.iter().map(|v| -v).collect();
            let terms = q.arrows_from(j).iter().filter_map(|&a| next[q.target(a)].as_ref());
            let terms = terms.chain(q.arrows_to(j).iter().filter_map(|&a| cur[q.source(a)].as_ref()));
            for y in terms {
                for (s, v) in d.iter_mut().zip(y) {
                    *s = s.checked_add(*v).ok_or(MeshError::Overflow(p + 1))?;
                }
            }
            if d.iter().all(|&v| v >= 0) && d.iter().any(|&v| v > 0) {
                next[j] = Some(d);
            }
        }
        layers.push(next);
    }
    let complete = layers.last().is_some_and(|l| l.iter().all(Option::is_none));
    if complete {
        layers.pop();
    }
    Ok((layers, complete))
}

impl TranslationQuiver {
    fn assemble(base: Quiver, component: Component, vertices: Vec<MeshVertex>, arrows: Vec<MeshArrow>, depth: usize, complete: bool) -> Self {
        let lookup = vertices.iter().enumerate().map(|(i, v)| ((v.orbit, v.power), i)).collect();
        let mut incoming = vec![Vec::new(); vertices.len()];
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (e, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(e);
            incoming[a.target].push(e);
        }
        TranslationQuiver { base, component, vertices, arrows, lookup, incoming, outgoing, depth, complete }
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn component(&self) -> Component {
        self.component
    }

    pub fn vertices(&self) -> &[MeshVertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> &MeshVertex {
        &self.vertices[v]
    }

    pub fn arrows(&self) -> &[MeshArrow] {
        &self.arrows
    }

    pub fn arrow(&self, e: usize) -> &MeshArrow {
        &self.arrows[e]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    /// Largest power knitted.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// True when every orbit ended inside the window, so the window is the whole component.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn find(&self, orbit: usize, power: usize) -> Option<usize> {
        self.lookup.get(&(orbit, power)).copied()
    }

    pub fn require(&self, orbit: usize, power: usize) -> Result<usize, MeshError> {
        self.find(orbit, power)
            .ok_or_else(|| MeshError::OutsideWindow { orbit: self.base.vertex(orbit).to_string(), power })
    }

    pub fn find_dim(&self, dim: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v.dim == dim)
    }

    /// `tau v`, when it lies in the window.
    pub fn translate(&self, v: usize) -> Option<usize> {
        let x = &self.vertices[v];
        match self.component {
            Component::Preinjective => self.find(x.orbit, x.power + 1),
            Component::Postprojective => x.power.checked_sub(1).and_then(|p| self.find(x.orbit, p)),
        }
    }

    pub fn translate_inverse(&self, v: usize) -> Option<usize> {
        let x = &self.vertices[v];
        match self.component {
            Component::Preinjective => x.power.checked_sub(1).and_then(|p| self.find(x.orbit, p)),
            Component::Postprojective => self.find(x.orbit, x.power + 1),
        }
    }

    /// Pairs of arrows `(tau v -> m, m -> v)` with equal labels: the terms of the mesh relation at `v`.
    pub fn mesh_pairs(&self, v: usize) -> Vec<(usize, usize)> {
        let Some(t) = self.translate(v) else { return Vec::new() };
        let mut out = Vec::new();
        for &e1 in &self.outgoing[t] {
            let a1 = &self.arrows[e1];
            for &e2 in &self.incoming[v] {
                let a2 = &self.arrows[e2];
                if a2.source == a1.target && a2.label == a1.label {
                    out.push((e1, e2));
                }
            }
        }
        out
    }

    /// `dim v + dim tau v = sum of middle terms` at every translated vertex.
    pub fn mesh_additivity_holds(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            let Some(t) = self.translate(v) else { return true };
            let mut lhs: Vec<i64> = self.vertices[v].dim.clone();
            lhs.iter_mut().zip(&self.vertices[t].dim).for_each(|(a, b)| *a += b);
            let mut rhs = vec![0i64; lhs.len()];
            for (_, e2) in self.mesh_pairs(v) {
                let m = self.arrows[e2].source;
                rhs.iter_mut().zip(&self.vertices[m].dim).for_each(|(a, b)| *a += b);
            }
            lhs == rhs
        })
    }

    /// Vertices in an order where every arrow goes forward.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indeg: Vec<usize> = self.incoming.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &e in &self.outgoing[v] {
                let t = self.arrows[e].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        order
    }

    pub fn label(&self, v: usize) -> String {
        let x = &self.vertices[v];
        format!("({},{})", self.base.vertex(x.orbit), x.power)
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| json!({"j": self.base.vertex(v.orbit), "p": v.power, "dim": v.dim}))
            .collect();
        let coord = |v: usize| json!({"j": self.base.vertex(self.vertices[v].orbit), "p": self.vertices[v].power});
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| json!({"source": coord(a.source), "target": coord(a.target), "label": self.base.arrow(a.label).id}))
            .collect();
        let kind = match self.component {
            Component::Preinjective => "preinjective",
            Component::Postprojective => "postprojective",
        };
        json!({"component": kind, "complete": self.complete, "vertices": vertices, "arrows": arrows})
    }
}

/// Knits `tau^p I_j` for `p <= depth`. For Dynkin quivers knitting stops once every orbit ends.
pub fn knit_preinjective(q: &Quiver, depth: usize) -> Result<TranslationQuiver, MeshError> {
    let (layers, complete) = knit_layers(q, depth)?;
    let mut vertices = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for (p, layer) in layers.iter().enumerate() {
        for (j, d) in layer.iter().enumerate() {
            if let Some(d) = d {
                index.insert((j, p), vertices.len());
                vertices.push(MeshVertex { orbit: j, power: p, dim: d.clone() });
            }
        }
    }
    let mut arrows = Vec::new();
    for p in 0..layers.len() {
        for a in 0..q.arrow_count() {
            let (j, k) = (q.source(a), q.target(a));
            if let (Some(&s), Some(&t)) = (index.get(&(j, p)), index.get(&(k, p))) {
                arrows.push(MeshArrow { source: s, target: t, label: a });
            }
            if let (Some(&s), Some(&t)) = (index.get(&(k, p + 1)), index.get(&(j, p))) {
                arrows.push(MeshArrow { source: s, target: t, label: a });
            }
        }
    }
    let depth = layers.len().saturating_sub(1);
    Ok(TranslationQuiver::assemble(q.clone(), Component::Preinjective, vertices, arrows, depth, complete))
}

/// Knits `tau^{-p} P_j` for `p <= depth` as the dual of the preinjective component of `q^op`.
pub fn knit_postprojective(q: &Quiver, depth: usize) -> Result<TranslationQuiver, MeshError> {
    let dual = knit_preinjective(&q.opposite(), depth)?;
    let arrows = dual
        .arrows
        .iter()
        .map(|a| MeshArrow { source: a.target, target: a.source, label: a.label })
        .collect();
    Ok(TranslationQuiver::assemble(q.clone(), Component::Postprojective, dual.vertices, arrows, dual.depth, dual.complete))
}

/// The whole (finite) Auslander-Reiten quiver of a Dynkin quiver.
pub fn knit_finite(q: &Quiver, max_depth: usize) -> Result<TranslationQuiver, MeshError> {
    let tq = knit_preinjective(q, max_depth)?;
    if !tq.is_complete() {
        return Err(MeshError::NotFinite(max_depth));
    }
    Ok(tq)
}

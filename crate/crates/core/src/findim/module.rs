use super::FindimError;
use crate::linalg::{format_q, parse_q, Matrix, Quotient, Q};
use crate::path::Path;
use crate::quiver::Quiver;
use num_traits::Zero;
use serde_json::{json, Map, Value};

/// Per-vertex spaces `k^{dims[v]}` and per-arrow matrices of shape `dims[target] x dims[source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// Per-vertex matrices `blocks[v]: M_v -> N_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(source: &Representation, target: &Representation) -> Morphism {
        Morphism { blocks: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(t, s)).collect() }
    }

    pub fn identity(m: &Representation) -> Morphism {
        Morphism { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_module_map(&self, q: &Quiver, source: &Representation, target: &Representation) -> bool {
        (0..q.arrow_count()).all(|a| {
            let (s, t) = (q.source(a), q.target(a));
            target.maps[a].mul(&self.blocks[s]) == self.blocks[t].mul(&source.maps[a])
        })
    }
}

impl Representation {
    pub fn zero(q: &Quiver) -> Representation {
        Representation::from_dims(q, vec![0; q.vertex_count()])
    }

    fn from_dims(q: &Quiver, dims: Vec<usize>) -> Representation {
        let maps = (0..q.arrow_count()).map(|a| Matrix::zeros(dims[q.target(a)], dims[q.source(a)])).collect();
        Representation { dims, maps }
    }

    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation, FindimError> {
        let r = Representation { dims, maps };
        r.check_shapes(q)?;
        Ok(r)
    }

    pub fn check_shapes(&self, q: &Quiver) -> Result<(), FindimError> {
        if self.dims.len() != q.vertex_count() || self.maps.len() != q.arrow_count() {
            return Err(FindimError::DimensionMismatch("vertex or arrow count".into()));
        }
        for a in 0..q.arrow_count() {
            let m = &self.maps[a];
            if m.rows() != self.dims[q.target(a)] || m.cols() != self.dims[q.source(a)] {
                return Err(FindimError::DimensionMismatch(format!("matrix of arrow {:?}", q.arrow(a).id)));
            }
        }
        Ok(())
    }

    pub fn simple(q: &Quiver, v: usize) -> Representation {
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        Representation::from_dims(q, dims)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of a path: `M_{a_n} ... M_{a_1}`.
    pub fn path_matrix(&self, q: &Quiver, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.start]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        let _ = q;
        m
    }

    pub fn direct_sum(q: &Quiver, parts: &[&Representation]) -> Representation {
        let n = q.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..q.arrow_count())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (mut ro, mut co) = (0, 0);
                for p in parts {
                    m.set_block(ro, co, &p.maps[a]);
                    ro += p.dims[t];
                    co += p.dims[s];
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// Basis of `Hom(self, other)`.
    pub fn hom_basis(&self, q: &Quiver, other: &Representation) -> Vec<Morphism> {
        let n = q.vertex_count();
        let mut offsets = Vec::with_capacity(n);
        let mut total = 0;
        for v in 0..n {
            offsets.push(total);
            total += other.dims[v] * self.dims[v];
        }
        if total == 0 {
            return Vec::new();
        }
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for a in 0..q.arrow_count() {
            let (s, t) = (q.source(a), q.target(a));
            let (ma, na) = (&self.maps[a], &other.maps[a]);
            for r in 0..other.dims[t] {
                for c in 0..self.dims[s] {
                    let mut row = vec![Q::zero(); total];
                    for k in 0..other.dims[s] {
                        let x = &na[(r, k)];
                        if !x.is_zero() {
                            row[offsets[s] + k * self.dims[s] + c] += x;
                        }
                    }
                    for k in 0..self.dims[t] {
                        let x = &ma[(k, c)];
                        if !x.is_zero() {
                            row[offsets[t] + r * self.dims[t] + k] -= x;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            Matrix::identity(total)
        } else {
            let nrows = rows.len();
            Matrix::from_rows(nrows, total, rows).kernel()
        };
        (0..kernel.cols())
            .map(|k| {
                let col = kernel.column(k);
                let blocks = (0..n)
                    .map(|v| {
                        let mut m = Matrix::zeros(other.dims[v], self.dims[v]);
                        for r in 0..other.dims[v] {
                            for c in 0..self.dims[v] {
                                m[(r, c)] = col[offsets[v] + r * self.dims[v] + c].clone();
                            }
                        }
                        m
                    })
                    .collect();
                Morphism { blocks }
            })
            .collect()
    }

    pub fn hom_dim(&self, q: &Quiver, other: &Representation) -> usize {
        self.hom_basis(q, other).len()
    }

    /// Kernel of `f: self -> _` with its inclusion.
    pub fn kernel(&self, q: &Quiver, f: &Morphism) -> (Representation, Morphism) {
        let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel).collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = (0..q.arrow_count())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                let image = self.maps[a].mul(&bases[s]);
                bases[t].solve_matrix(&image).expect("kernel is a subrepresentation")
            })
            .collect();
        (Representation { dims, maps }, Morphism { blocks: bases })
    }

    /// Cokernel of `f: _ -> self` with its projection.
    pub fn cokernel(&self, q: &Quiver, f: &Morphism) -> (Representation, Morphism) {
        let quots: Vec<Quotient> = (0..q.vertex_count())
            .map(|v| {
                let b = &f.blocks[v];
                let cols: Vec<Vec<Q>> = (0..b.cols()).map(|j| b.column(j)).collect();
                Quotient::new(self.dims[v], &cols)
            })
            .collect();
        let dims: Vec<usize> = quots.iter().map(Quotient::dim).collect();
        let maps = (0..q.arrow_count())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                quots[t].proj.mul(&self.maps[a]).mul(&quots[s].sect)
            })
            .collect();
        (Representation { dims, maps }, Morphism { blocks: quots.into_iter().map(|x| x.proj).collect() })
    }

    /// Spanning vectors of the radical at each vertex (images of incoming arrows).
    pub fn radical_vectors(&self, q: &Quiver, v: usize) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for &a in q.arrows_to(v) {
            let m = &self.maps[a];
            for j in 0..m.cols() {
                out.push(m.column(j));
            }
        }
        out
    }

    /// Vectors at each vertex lifting a basis of the top.
    pub fn top_generators(&self, q: &Quiver) -> Vec<(usize, Vec<Q>)> {
        let mut out = Vec::new();
        for v in 0..q.vertex_count() {
            if self.dims[v] == 0 {
                continue;
            }
            let quot = Quotient::new(self.dims[v], &self.radical_vectors(q, v));
            for j in 0..quot.sect.cols() {
                out.push((v, quot.sect.column(j)));
            }
        }
        out
    }

    pub fn top_dims(&self, q: &Quiver) -> Vec<usize> {
        let mut d = vec![0; q.vertex_count()];
        for (v, _) in self.top_generators(q) {
            d[v] += 1;
        }
        d
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let mut dims = Map::new();
        for (v, d) in self.dims.iter().enumerate() {
            dims.insert(q.vertex(v).to_string(), json!(d));
        }
        let mut maps = Map::new();
        for (a, m) in self.maps.iter().enumerate() {
            let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(format_q).collect()).collect();
            maps.insert(q.arrow(a).id.clone(), json!(rows));
        }
        json!({"dims": dims, "maps": maps})
    }

    pub fn from_json(q: &Quiver, v: &Value) -> Result<Representation, FindimError> {
        let bad = |m: &str| FindimError::Malformed(m.to_string());
        let dims_obj = v.get("dims").and_then(Value::as_object).ok_or_else(|| bad("missing \"dims\" object"))?;
        let mut dims = vec![0; q.vertex_count()];
        for (k, d) in dims_obj {
            let i = q.require_vertex(k)?;
            dims[i] = d.as_u64().ok_or_else(|| bad("dimension must be a nonnegative integer"))? as usize;
        }
        let empty = Map::new();
        let maps_obj = match v.get("maps") {
            Some(m) => m.as_object().ok_or_else(|| bad("\"maps\" must be an object"))?,
            None => &empty,
        };
        let mut maps: Vec<Matrix> =
            (0..q.arrow_count()).map(|a| Matrix::zeros(dims[q.target(a)], dims[q.source(a)])).collect();
        for (k, m) in maps_obj {
            let a = q.require_arrow(k)?;
            let rows = m.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
            let (r, c) = (dims[q.target(a)], dims[q.source(a)]);
            if rows.len() != r {
                return Err(FindimError::DimensionMismatch(format!("rows of arrow {k:?}")));
            }
            let mut mat = Matrix::zeros(r, c);
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
                if row.len() != c {
                    return Err(FindimError::DimensionMismatch(format!("columns of arrow {k:?}")));
                }
                for (j, x) in row.iter().enumerate() {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(bad("matrix entry must be a rational")),
                    };
                    mat[(i, j)] = parse_q(&s).ok_or_else(|| bad("matrix entry must be a rational"))?;
                }
            }
            maps[a] = mat;
        }
        Ok(Representation { dims, maps })
    }
}

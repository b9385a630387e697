use super::{PipelineError, Setting, SliceCategory};
use crate::linalg::{is_integer_vec, to_i64, Matrix, Q};
use crate::mesh::{FinCat, Presentation};

/// The dimension vectors of `0 -> F i_*(X^) -> F(H_0^) -> F(H_1^) -> F i_*(X^v) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSequence {
    pub object: usize,
    /// Multiplicity of `H_j` in `H_0`.
    pub h0: Vec<usize>,
    /// Multiplicity of `H_j` in `H_1`.
    pub h1: Vec<usize>,
    /// In `H`-index order.
    pub dims: [Vec<i64>; 4],
    pub totals: [i64; 4],
    pub exact: bool,
}

/// `dim e_U A~ e_V` split by powers of `tau_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeDims {
    pub per_power: Vec<usize>,
    pub total: usize,
}

fn add_scaled(acc: &mut [i64], v: &[i64], c: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += c * b;
    }
}

impl SliceCategory {
    fn require_m_bar(&self, x: usize) -> Result<(), PipelineError> {
        if self.objects()[x].in_h {
            return Err(PipelineError::InH(self.objects()[x].name.clone()));
        }
        Ok(())
    }

    /// `F(X^)_j = sum_p dim Hom(tau_B^p H_j, X)`, in `H`-index order.
    pub fn f_hat(&self, x: usize) -> Vec<i64> {
        (0..self.data().quiver.vertex_count())
            .map(|j| (0..).map_while(|p| self.orbit(j, p)).map(|h| self.hom_dim(h, x) as i64).sum())
            .collect()
    }

    /// `F i_*(X^v)_j = sum_{p >= 1} dim Hom(X, tau_B^p H_j)`; maps into `H` itself vanish modulo
    /// projectives.
    pub fn f_vee(&self, x: usize) -> Result<Vec<i64>, PipelineError> {
        self.require_m_bar(x)?;
        Ok((0..self.data().quiver.vertex_count())
            .map(|j| (1..).map_while(|p| self.orbit(j, p)).map(|h| self.hom_dim(x, h) as i64).sum())
            .collect())
    }

    pub fn f_simple(&self, x: usize) -> Vec<i64> {
        let mut v = vec![0; self.data().quiver.vertex_count()];
        v[self.objects()[x].phi] = 1;
        v
    }

    /// Reorders an `H`-indexed vector by the vertices of `Lambda`.
    pub fn to_lambda(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &l) in self.lambda().iter().enumerate() {
            out[l] = v[j];
        }
        out
    }

    pub fn fundamental_sequence(&self, x: usize) -> Result<FundamentalSequence, PipelineError> {
        self.require_m_bar(x)?;
        let n = self.data().quiver.vertex_count();
        let hs = self.h_objects();
        // H_0: the top of Hom(X, H) over End(H).
        let h0: Vec<usize> = (0..n)
            .map(|j| {
                let others: Vec<usize> = hs.iter().copied().filter(|&h| h != hs[j]).collect();
                self.hom_dim(x, hs[j]) - self.factor_rank(x, hs[j], &others)
            })
            .collect();
        // H_1 from dim X = dim H_0 - dim H_1, the dimensions of H being a basis.
        let objs = self.objects();
        let cols: Vec<Vec<Q>> =
            hs.iter().map(|&h| objs[h].kq_dim.iter().map(|&d| Q::from_integer(d.into())).collect()).collect();
        let h_mat = Matrix::from_columns(n, &cols);
        let mut rhs = vec![0i64; n];
        for (j, &m) in h0.iter().enumerate() {
            add_scaled(&mut rhs, &objs[hs[j]].kq_dim, m as i64);
        }
        add_scaled(&mut rhs, &objs[x].kq_dim, -1);
        let rhs_q: Vec<Q> = rhs.iter().map(|&d| Q::from_integer(d.into())).collect();
        let sol = h_mat
            .solve(&rhs_q)
            .filter(|s| is_integer_vec(s))
            .ok_or_else(|| PipelineError::Internal(format!("no integral H_1 for {}", objs[x].name)))?;
        let h1: Vec<usize> = sol
            .iter()
            .map(|c| to_i64(c).filter(|&v| v >= 0).map(|v| v as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| PipelineError::Internal(format!("negative H_1 multiplicity for {}", objs[x].name)))?;
        let hat_h: Vec<Vec<i64>> = hs.iter().map(|&h| self.f_hat(h)).collect();
        let mut d1 = vec![0; n];
        let mut d2 = vec![0; n];
        for j in 0..n {
            add_scaled(&mut d1, &hat_h[j], h0[j] as i64);
            add_scaled(&mut d2, &hat_h[j], h1[j] as i64);
        }
        let dims = [self.f_hat(x), d1, d2, self.f_vee(x)?];
        let exact = (0..n).all(|i| dims[0][i] - dims[1][i] + dims[2][i] - dims[3][i] == 0);
        let totals = [0, 1, 2, 3].map(|k| dims[k].iter().sum());
        Ok(FundamentalSequence { object: x, h0, h1, dims, totals, exact })
    }

    /// `sum_p dim M(tau_B^p U, V) / [add tau_B^p H]`.
    pub fn tilde_dims(&self, u: usize, v: usize) -> Result<TildeDims, PipelineError> {
        self.require_m_bar(u)?;
        self.require_m_bar(v)?;
        let per_power: Vec<usize> = (0..)
            .map_while(|p| self.tau_power(u, p).map(|up| (p, up)))
            .map(|(p, up)| self.hom_dim(up, v) - self.factor_rank(up, v, &self.tau_h(p)))
            .collect();
        let total = per_power.iter().sum();
        Ok(TildeDims { per_power, total })
    }

    /// `sum_p dim Hom(tau_B^p X_j, X_i)`.
    pub fn birs_hom_dim(&self, j: usize, i: usize) -> usize {
        (0..).map_while(|p| self.tau_power(j, p)).map(|x| self.hom_dim(x, i)).sum()
    }

    /// As [`Self::birs_hom_dim`], with the `p`-th term taken modulo maps through
    /// `add(H + tau_B H + ... + tau_B^p H)`.
    pub fn birs_stable_dim(&self, u: usize, v: usize) -> usize {
        let mut through = Vec::new();
        let mut total = 0;
        for p in 0.. {
            let Some(up) = self.tau_power(u, p) else { break };
            through.extend(self.tau_h(p));
            total += self.hom_dim(up, v) - self.factor_rank(up, v, &through);
        }
        total
    }

    /// Arrows `U -> V` of `A~` beyond those of `A`: `M(tau_B U, V)` modulo maps through
    /// `M_bar \ {V}`, `tau_B(M_bar \ {U})` and `tau_B H`.
    pub fn new_tilde_arrows(&self, u: usize, v: usize) -> Result<usize, PipelineError> {
        self.require_m_bar(u)?;
        self.require_m_bar(v)?;
        let Some(tu) = self.tau_power(u, 1) else { return Ok(0) };
        let m_bar = self.m_bar();
        let mut through: Vec<usize> = m_bar.iter().copied().filter(|&z| z != v).collect();
        through.extend(m_bar.iter().filter(|&&w| w != u).filter_map(|&w| self.tau_power(w, 1)));
        through.extend(self.tau_h(1));
        Ok(self.hom_dim(tu, v) - self.factor_rank(tu, v, &through))
    }

    /// The full subcategory on `M`, objects named as in [`Self::objects`].
    pub fn m_category(&self) -> FinCat {
        let vs: Vec<usize> = self.objects().iter().map(|o| o.vertex).collect();
        let names = self.objects().iter().map(|o| o.name.clone()).collect();
        FinCat::from_mesh(self.mesh(), &vs, names)
    }

    /// `A = End(M_bar)`, the quotient of `M` by `add H`; `None` when `M_bar` is empty.
    pub fn present_a(&self) -> Result<Option<Presentation>, PipelineError> {
        if self.m_bar().is_empty() {
            return Ok(None);
        }
        let cat = self.m_category().quotient_by(&self.h_objects());
        Ok(Some(cat.present(self.d_max())?))
    }

    /// In the initial setting: `F(X^) = sum_{q <= l} dim tau^{-q} P_i` for `X = tau^{-l} P_i`.
    pub fn gls_hat_formula_holds(&self) -> Option<bool> {
        let Setting::Initial { .. } = self.data().setting else { return None };
        let tq = self.mesh().translation_quiver();
        Some((0..self.objects().len()).all(|x| {
            let v = tq.vertex(self.objects()[x].vertex);
            let mut expect = vec![0i64; v.dim.len()];
            for q in 0..=v.power {
                add_scaled(&mut expect, &tq.vertex(tq.find(v.orbit, q).unwrap()).dim, 1);
            }
            self.f_hat(x) == expect
        }))
    }

    /// In the initial setting: `sum_j dim M(tau^j U, V) = sum_{j = max(0, p - q)}^{p} dim(tau^{-j} P_b)_a`
    /// for `U = tau^{-q} P_a`, `V = tau^{-p} P_b`.
    pub fn gls_birs_formula_holds(&self) -> Option<bool> {
        let Setting::Initial { .. } = self.data().setting else { return None };
        let tq = self.mesh().translation_quiver();
        let n = self.objects().len();
        Some((0..n).all(|u| {
            (0..n).all(|v| {
                let (xu, xv) = (tq.vertex(self.objects()[u].vertex), tq.vertex(self.objects()[v].vertex));
                let (a, q, b, p) = (xu.orbit, xu.power, xv.orbit, xv.power);
                let rhs: i64 = (p.saturating_sub(q)..=p).map(|j| tq.vertex(tq.find(b, j).unwrap()).dim[a]).sum();
                self.birs_hom_dim(u, v) as i64 == rhs
            })
        }))
    }

    /// In the initial setting, `tau_B` agrees with the knitted translation.
    pub fn gls_tau_matches_knitting(&self) -> Option<bool> {
        let Setting::Initial { .. } = self.data().setting else { return None };
        let tq = self.mesh().translation_quiver();
        Some(self.objects().iter().all(|o| o.tau_b.map(|t| self.objects()[t].vertex) == tq.translate(o.vertex)))
    }
}

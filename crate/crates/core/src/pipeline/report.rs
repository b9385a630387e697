use super::{PipelineError, SliceCategory};
use crate::findim::{ext2_bimodule, tensor_algebra_dims, tilde_quiver, BoundAlgebra};
use crate::path::relations_to_json;
use serde::Serialize;
use serde_json::Value;

/// Cap on the admissible orders enumerated for the word-invariance check.
const ORDER_CAP: usize = 5000;

#[derive(Clone, Debug, Serialize)]
pub struct ObjectReport {
    pub name: String,
    pub j: String,
    pub p: usize,
    pub kq_dim: Vec<i64>,
    pub b_dim: Vec<usize>,
    pub phi: String,
    pub tau_power: usize,
    pub tau_b: Option<String>,
    pub in_h: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub quiver: Value,
    pub relations: Value,
    pub dim: usize,
    pub dim_matrix: Vec<Vec<usize>>,
}

impl AlgebraReport {
    fn new(alg: &BoundAlgebra) -> AlgebraReport {
        AlgebraReport {
            quiver: alg.quiver().to_json_value(),
            relations: relations_to_json(alg.quiver(), alg.relations()),
            dim: alg.dim(),
            dim_matrix: alg.dim_matrix(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HatEntry {
    pub object: String,
    pub dim: Vec<i64>,
    pub projective_injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimEntry {
    pub object: String,
    pub dim: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FReport {
    pub lambda_vertices: Vec<String>,
    pub hat: Vec<HatEntry>,
    pub vee: Vec<DimEntry>,
    pub simple: Vec<DimEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub object: String,
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
    pub dims: Vec<Vec<i64>>,
    pub totals: Vec<i64>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TildeReport {
    pub source: String,
    pub target: String,
    pub per_power: Vec<usize>,
    pub total: usize,
    pub birs_stable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowCount {
    pub source: String,
    pub target: String,
    pub a_arrows: usize,
    pub new_from_mesh: usize,
    pub from_tilde_quiver: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    #[serde(rename = "M")]
    pub m: Vec<ObjectReport>,
    #[serde(rename = "B")]
    pub b: AlgebraReport,
    pub phi: Vec<String>,
    pub word: String,
    #[serde(rename = "F")]
    pub f: FReport,
    pub sequence_checks: Vec<SequenceReport>,
    pub tilde_dims: Vec<TildeReport>,
    #[serde(rename = "A")]
    pub a: Option<AlgebraReport>,
    pub tilde_quiver: Vec<ArrowCount>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> CheckReport {
    CheckReport { name: name.into(), pass, detail: detail.into() }
}

/// Runs every stage on a built [`SliceCategory`] and collects the cross-checks.
pub fn run_report(sc: &SliceCategory) -> Result<Report, PipelineError> {
    let q = &sc.data().quiver;
    let objs = sc.objects();
    let tq = sc.mesh().translation_quiver();
    let lam_names: Vec<String> = (0..q.vertex_count())
        .map(|l| q.vertex(l).to_string())
        .collect();
    let m: Vec<ObjectReport> = objs
        .iter()
        .map(|o| {
            let v = tq.vertex(o.vertex);
            ObjectReport {
                name: o.name.clone(),
                j: q.vertex(v.orbit).to_string(),
                p: v.power,
                kq_dim: o.kq_dim.clone(),
                b_dim: o.b_dim.clone(),
                phi: q.vertex(o.phi).to_string(),
                tau_power: o.tau_power,
                tau_b: o.tau_b.map(|t| objs[t].name.clone()),
                in_h: o.in_h,
            }
        })
        .collect();
    let mut checks = Vec::new();

    let cs = sc.coxeter_system();
    let word = sc.word();
    let reduced = cs.is_reduced(&word).unwrap_or(false);
    checks.push(check("word_reduced", reduced, format!("length {}", word.len())));
    let (words, complete) = sc.admissible_words(ORDER_CAP);
    let same = words.iter().all(|w| cs.equal_elements(w, &word).unwrap_or(false));
    let lengths = words.iter().all(|w| cs.length(w).ok() == cs.length(&word).ok());
    let note = if complete { "" } else { " (capped)" };
    checks.push(check("admissible_orders_same_element", same && lengths, format!("{} orders{note}", words.len())));

    let hat: Vec<HatEntry> = (0..objs.len())
        .map(|x| HatEntry { object: objs[x].name.clone(), dim: sc.to_lambda(&sc.f_hat(x)), projective_injective: objs[x].in_h })
        .collect();
    let m_bar = sc.m_bar();
    let vee: Vec<DimEntry> = m_bar
        .iter()
        .map(|&x| Ok(DimEntry { object: objs[x].name.clone(), dim: sc.to_lambda(&sc.f_vee(x)?) }))
        .collect::<Result<_, PipelineError>>()?;
    let simple: Vec<DimEntry> =
        (0..objs.len()).map(|x| DimEntry { object: objs[x].name.clone(), dim: sc.to_lambda(&sc.f_simple(x)) }).collect();

    let mut sequence_checks = Vec::new();
    for &x in &m_bar {
        let s = sc.fundamental_sequence(x)?;
        sequence_checks.push(SequenceReport {
            object: objs[x].name.clone(),
            h0: s.h0.clone(),
            h1: s.h1.clone(),
            dims: s.dims.iter().map(|d| sc.to_lambda(d)).collect(),
            totals: s.totals.to_vec(),
            exact: s.exact,
        });
    }
    let exact = sequence_checks.iter().all(|s| s.exact);
    checks.push(check("fundamental_sequences_exact", exact, format!("{} objects", sequence_checks.len())));

    if let Some(ok) = sc.gls_tau_matches_knitting() {
        checks.push(check("tau_b_matches_knitting", ok, ""));
    }
    if let Some(ok) = sc.gls_hat_formula_holds() {
        checks.push(check("gls_hat_formula", ok, ""));
    }
    if let Some(ok) = sc.gls_birs_formula_holds() {
        checks.push(check("gls_birs_formula", ok, ""));
    }

    let mut tilde_dims = Vec::new();
    let mut tilde = Vec::new();
    for &u in &m_bar {
        for &v in &m_bar {
            let t = sc.tilde_dims(u, v)?;
            let stable = sc.birs_stable_dim(u, v);
            tilde_dims.push(TildeReport {
                source: objs[u].name.clone(),
                target: objs[v].name.clone(),
                per_power: t.per_power.clone(),
                total: t.total,
                birs_stable: stable,
            });
            tilde.push((u, v, t));
        }
    }
    let stable_ok = tilde_dims.iter().all(|t| t.total == t.birs_stable);
    checks.push(check("birs_stable_equals_tilde", stable_ok, ""));

    let presentation = sc.present_a()?;
    let mut tilde_quiver_counts = Vec::new();
    let a_report = match &presentation {
        None => {
            checks.push(check("a_is_zero", true, "M_bar is empty"));
            None
        }
        Some(pres) => {
            let alg = &pres.algebra;
            let pos = |x: usize| m_bar.iter().position(|&y| y == x).unwrap();
            let dm = alg.dim_matrix();
            let yoneda = tilde.iter().all(|(u, v, t)| t.per_power[0] == dm[pos(*u)][pos(*v)]);
            checks.push(check("power_zero_equals_a", yoneda, ""));
            match ext2_bimodule(alg) {
                Ok(x) => {
                    let lemma = tilde
                        .iter()
                        .all(|(u, v, t)| t.per_power.get(1).copied().unwrap_or(0) == x.dims[pos(*u)][pos(*v)]);
                    checks.push(check("power_one_equals_ext2", lemma, ""));
                    match tensor_algebra_dims(alg, &x, sc.bound()) {
                        Ok(td) => {
                            let ok = tilde.iter().all(|(u, v, t)| t.total == td.per_pair[pos(*u)][pos(*v)]);
                            checks.push(check("tensor_algebra_equals_tilde", ok, format!("dim {}", td.total)));
                        }
                        Err(e) => checks.push(check("tensor_algebra_equals_tilde", false, e.to_string())),
                    }
                }
                Err(e) => checks.push(check("power_one_equals_ext2", false, e.to_string())),
            }
            let tq_alg = tilde_quiver(alg, sc.bound());
            if let Err(e) = &tq_alg {
                checks.push(check("tilde_quiver_matches", false, e.to_string()));
            }
            let mut agree = true;
            for &u in &m_bar {
                for &v in &m_bar {
                    let a_arrows = alg.quiver().arrow_multiplicity(pos(u), pos(v));
                    let new_from_mesh = sc.new_tilde_arrows(u, v)?;
                    let from_tilde_quiver = tq_alg.as_ref().ok().map(|t| t.arrow_multiplicity(pos(u), pos(v)));
                    if from_tilde_quiver.is_some_and(|c| c != a_arrows + new_from_mesh) {
                        agree = false;
                    }
                    if a_arrows + new_from_mesh > 0 || from_tilde_quiver.is_some_and(|c| c > 0) {
                        tilde_quiver_counts.push(ArrowCount {
                            source: objs[u].name.clone(),
                            target: objs[v].name.clone(),
                            a_arrows,
                            new_from_mesh,
                            from_tilde_quiver,
                        });
                    }
                }
            }
            if tq_alg.is_ok() {
                checks.push(check("tilde_quiver_matches", agree, ""));
            }
            Some(AlgebraReport::new(alg))
        }
    };

    Ok(Report {
        m,
        b: AlgebraReport::new(&sc.b().algebra),
        phi: objs.iter().map(|o| q.vertex(o.phi).to_string()).collect(),
        word: sc.word_string(),
        f: FReport { lambda_vertices: lam_names, hat, vee, simple },
        sequence_checks,
        tilde_dims,
        a: a_report,
        tilde_quiver: tilde_quiver_counts,
        checks,
    })
}

use super::PipelineError;
use crate::mesh::{knit_preinjective, MeshError, TranslationQuiver};
use crate::quiver::Quiver;
use serde_json::{json, Map, Value};

/// Deepest power scanned when a summand is given by its dimension vector.
pub const MAX_SCAN_DEPTH: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    /// `tau^power I_orbit`.
    Coordinate { orbit: usize, power: usize },
    Dim(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    /// `T` preinjective; `M = {X preinjective : Ext^1(T, X) = 0}` and `H` the injectives.
    Concealed { summands: Vec<Summand> },
    /// `T = kQ`; `M = {tau^{-p} P_i : p <= t[i]}` and `H_i = tau^{-t[i]} P_i`.
    Initial { t: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingData {
    pub quiver: Quiver,
    pub setting: Setting,
    /// `lambda[j]`: position of the vertex of `Lambda` labelling `H_j`, when not the identity.
    pub lambda: Option<Vec<usize>>,
}

fn bad(m: impl Into<String>) -> PipelineError {
    PipelineError::Input(m.into())
}

impl TiltingData {
    pub fn concealed(quiver: Quiver, summands: Vec<Summand>) -> TiltingData {
        TiltingData { quiver, setting: Setting::Concealed { summands }, lambda: None }
    }

    pub fn initial(quiver: Quiver, t: Vec<usize>) -> TiltingData {
        TiltingData { quiver, setting: Setting::Initial { t }, lambda: None }
    }

    /// Reads `{"quiver": .., "tilting": [{"j": .., "p": ..} | {"dim": [..]}], "lambda_labels": {..}}`
    /// or `{"quiver": .., "initial": {"vertex": t, ..}}`.
    pub fn from_json(v: &Value) -> Result<TiltingData, PipelineError> {
        let qv = v.get("quiver").ok_or_else(|| bad("missing \"quiver\""))?;
        let quiver = Quiver::from_json_str(&qv.to_string())?;
        let n = quiver.vertex_count();
        let setting = match (v.get("tilting"), v.get("initial")) {
            (Some(t), None) => {
                let items = t.as_array().ok_or_else(|| bad("\"tilting\" must be an array"))?;
                let summands = items
                    .iter()
                    .map(|s| {
                        if let Some(d) = s.get("dim") {
                            let d = d.as_array().ok_or_else(|| bad("\"dim\" must be an array"))?;
                            let d: Vec<i64> = d
                                .iter()
                                .map(|x| x.as_i64().ok_or_else(|| bad("dimension entries must be integers")))
                                .collect::<Result<_, _>>()?;
                            if d.len() != n {
                                return Err(bad(format!("dimension vector of length {} for {} vertices", d.len(), n)));
                            }
                            Ok(Summand::Dim(d))
                        } else {
                            let j = s.get("j").and_then(Value::as_str).ok_or_else(|| bad("summand needs \"j\" and \"p\" or \"dim\""))?;
                            let p = s.get("p").and_then(Value::as_u64).ok_or_else(|| bad("\"p\" must be a nonnegative integer"))?;
                            Ok(Summand::Coordinate { orbit: quiver.require_vertex(j)?, power: p as usize })
                        }
                    })
                    .collect::<Result<_, PipelineError>>()?;
                Setting::Concealed { summands }
            }
            (None, Some(t)) => {
                let obj = t.as_object().ok_or_else(|| bad("\"initial\" must be an object"))?;
                let mut ts = vec![0; n];
                for (k, x) in obj {
                    let i = quiver.require_vertex(k)?;
                    ts[i] = x.as_u64().ok_or_else(|| bad("initial powers must be nonnegative integers"))? as usize;
                }
                Setting::Initial { t: ts }
            }
            _ => return Err(bad("exactly one of \"tilting\" and \"initial\" is required")),
        };
        let lambda = match v.get("lambda_labels") {
            None | Some(Value::Null) => None,
            Some(l) => {
                let obj = l.as_object().ok_or_else(|| bad("\"lambda_labels\" must be an object"))?;
                let mut lam = vec![usize::MAX; n];
                for (k, x) in obj {
                    let j = quiver.require_vertex(k)?;
                    let label = x.as_str().ok_or_else(|| bad("labels must be vertex ids"))?;
                    lam[j] = quiver.require_vertex(label)?;
                }
                let mut seen = vec![false; n];
                for &x in &lam {
                    if x == usize::MAX || seen[x] {
                        return Err(bad("\"lambda_labels\" must be a permutation of the vertices"));
                    }
                    seen[x] = true;
                }
                Some(lam)
            }
        };
        Ok(TiltingData { quiver, setting, lambda })
    }

    pub fn to_json(&self) -> Value {
        let q = &self.quiver;
        let mut out = Map::new();
        out.insert("quiver".into(), q.to_json_value());
        match &self.setting {
            Setting::Concealed { summands } => {
                let items: Vec<Value> = summands
                    .iter()
                    .map(|s| match s {
                        Summand::Coordinate { orbit, power } => json!({"j": q.vertex(*orbit), "p": power}),
                        Summand::Dim(d) => json!({"dim": d}),
                    })
                    .collect();
                out.insert("tilting".into(), Value::Array(items));
            }
            Setting::Initial { t } => {
                let obj: Map<String, Value> = t.iter().enumerate().map(|(i, x)| (q.vertex(i).to_string(), json!(x))).collect();
                out.insert("initial".into(), Value::Object(obj));
            }
        }
        if let Some(lam) = &self.lambda {
            let obj: Map<String, Value> =
                lam.iter().enumerate().map(|(j, &l)| (q.vertex(j).to_string(), json!(q.vertex(l)))).collect();
            out.insert("lambda_labels".into(), Value::Object(obj));
        }
        Value::Object(out)
    }
}

fn resolve(tq: &TranslationQuiver, summands: &[Summand]) -> Option<Vec<usize>> {
    summands
        .iter()
        .map(|s| match s {
            Summand::Coordinate { orbit, power } => tq.find(*orbit, *power),
            Summand::Dim(d) => tq.find_dim(d),
        })
        .collect()
}

/// Knits a window containing every summand and at least one further layer.
pub(super) fn locate_summands(q: &Quiver, summands: &[Summand]) -> Result<(TranslationQuiver, Vec<usize>), PipelineError> {
    let start = summands
        .iter()
        .map(|s| match s {
            Summand::Coordinate { power, .. } => *power,
            Summand::Dim(_) => 0,
        })
        .max()
        .unwrap_or(0);
    for depth in start..=MAX_SCAN_DEPTH.max(start) {
        let tq = match knit_preinjective(q, depth) {
            Ok(tq) => tq,
            Err(MeshError::Overflow(_)) => break,
            Err(e) => return Err(e.into()),
        };
        if let Some(found) = resolve(&tq, summands) {
            let maxp = found.iter().map(|&v| tq.vertex(v).power).max().unwrap_or(0);
            if tq.depth() > maxp || tq.is_complete() {
                return Ok((tq, found));
            }
            let wider = knit_preinjective(q, maxp + 1)?;
            let found = resolve(&wider, summands).expect("knitting is prefix-stable");
            return Ok((wider, found));
        }
        if tq.is_complete() {
            break;
        }
    }
    Err(PipelineError::NotTilting("a summand is not in the preinjective component".into()))
}

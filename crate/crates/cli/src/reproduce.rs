use crate::CliError;
use quiverkit::findim::{global_dimension, tilde_quiver, GlobalDimension};
use quiverkit::mesh::{knit_finite, knit_preinjective, FinCat, MeshCategory};
use quiverkit::pipeline::{run_report, SliceCategory, TiltingData};
use quiverkit::quiver::Quiver;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const CONCEALED_INPUT: &str = include_str!("../data/concealed_example.json");
pub const GOLDEN: &str = include_str!("../data/golden.json");

fn concealed_values(d_max: usize, bound: usize) -> Result<Value, CliError> {
    let input: Value = serde_json::from_str(CONCEALED_INPUT).map_err(|e| CliError::Parse(e.to_string()))?;
    let data = TiltingData::from_json(&input)?;
    let knitting: Vec<Vec<i64>> =
        knit_preinjective(&data.quiver, 2)?.vertices().iter().map(|v| v.dim.clone()).collect();
    let sc = SliceCategory::build(data, d_max, bound)?;
    let report = run_report(&sc)?;
    let b = &sc.b().algebra;
    let seq = report.sequence_checks.iter().find(|s| s.object == "X1");
    let vee = report.f.vee.iter().find(|s| s.object == "X1");
    let new_arrows: Vec<Value> = report
        .tilde_quiver
        .iter()
        .filter(|c| c.new_from_mesh > 0)
        .map(|c| json!([c.source, c.target, c.new_from_mesh]))
        .collect();
    Ok(json!({
        "knitting": knitting,
        "M": sc.objects().iter().map(|o| o.kq_dim.clone()).collect::<Vec<_>>(),
        "B": {
            "dim": b.dim(),
            "arrows_1_2": b.quiver().arrow_multiplicity(0, 1),
            "arrows_2_3": b.quiver().arrow_multiplicity(1, 2),
            "relations": b.relations().len(),
        },
        "word": report.word,
        "word_reduced": sc.coxeter_system().is_reduced(&sc.word()).unwrap_or(false),
        "F": report.f.hat.iter().map(|h| h.dim.clone()).collect::<Vec<_>>(),
        "projective_injective": report.f.hat.iter().map(|h| h.projective_injective).collect::<Vec<_>>(),
        "F_vee_X1": vee.map(|v| json!(v.dim)).unwrap_or(Value::Null),
        "sequence_X1": seq.map(|s| json!(s.totals)).unwrap_or(Value::Null),
        "sequences_exact": report.sequence_checks.iter().all(|s| s.exact),
        "tilde_new_arrows": new_arrows,
    }))
}

fn a4() -> Quiver {
    Quiver::from_arrows(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")])
        .expect("valid quiver")
}

fn auslander_values(d_max: usize, bound: usize) -> Result<Value, CliError> {
    let mc = MeshCategory::new(knit_finite(&a4(), 32)?);
    let tq = mc.translation_quiver();
    let objs: Vec<usize> = (0..tq.vertex_count()).collect();
    let names = objs.iter().map(|&v| tq.label(v)).collect();
    let alg = FinCat::from_mesh(&mc, &objs, names).present(d_max)?.algebra;
    let gldim = match global_dimension(&alg, bound) {
        GlobalDimension::Finite(d) => json!(d),
        GlobalDimension::AboveBound(_) => Value::Null,
    };
    let tilde = tilde_quiver(&alg, bound)?;
    Ok(json!({
        "vertices": alg.quiver().vertex_count(),
        "global_dimension": gldim,
        "tilde_vertices": tilde.vertex_count(),
        "tilde_new_arrows": tilde.arrow_count() - alg.quiver().arrow_count(),
    }))
}

pub fn actual_values(d_max: usize, bound: usize) -> Result<Value, CliError> {
    Ok(json!({
        "concealed": concealed_values(d_max, bound)?,
        "auslander_a4": auslander_values(d_max, bound)?,
    }))
}

fn flatten(prefix: String, v: &Value, out: &mut BTreeMap<String, Value>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(key, x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(format!("{prefix}[{i}]"), x, out);
            }
            if items.is_empty() {
                out.insert(prefix, Value::Array(Vec::new()));
            }
        }
        _ => {
            out.insert(prefix, v.clone());
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diff {
    pub ok: bool,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compares every leaf of `golden` with `actual`; leaves only in `actual` count as mismatches too.
pub fn diff(golden: &Value, actual: &Value) -> Diff {
    let (mut g, mut a) = (BTreeMap::new(), BTreeMap::new());
    flatten(String::new(), golden, &mut g);
    flatten(String::new(), actual, &mut a);
    let mut mismatches = Vec::new();
    for (k, expected) in &g {
        let got = a.get(k).cloned().unwrap_or(Value::Null);
        if &got != expected {
            mismatches.push(Mismatch { key: k.clone(), expected: expected.clone(), actual: got });
        }
    }
    for (k, got) in &a {
        if !g.contains_key(k) {
            mismatches.push(Mismatch { key: k.clone(), expected: Value::Null, actual: got.clone() });
        }
    }
    Diff { ok: mismatches.is_empty(), checked: g.len(), mismatches }
}

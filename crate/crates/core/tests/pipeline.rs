use quiverkit::pipeline::{run_report, PipelineError, SliceCategory, Summand, TiltingData};
use quiverkit::quiver::Quiver;
use serde_json::json;

fn concealed_quiver() -> Quiver {
    Quiver::from_arrows(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2"), ("c", "3", "2")]).unwrap()
}

fn linear(n: usize) -> Quiver {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let ids: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> = (0..n - 1).map(|i| (ids[i].as_str(), vs[i], vs[i + 1])).collect();
    Quiver::from_arrows(&vs, &arrows).unwrap()
}

fn worked_example() -> SliceCategory {
    let input = json!({
        "quiver": concealed_quiver().to_json_value(),
        "tilting": [{"dim": [3, 8, 4]}, {"dim": [2, 6, 3]}, {"dim": [1, 1, 0]}],
        "lambda_labels": {"1": "3", "2": "2", "3": "1"}
    });
    SliceCategory::build(TiltingData::from_json(&input).unwrap(), 12, 64).unwrap()
}

#[test]
fn worked_example_objects_and_order() {
    let sc = worked_example();
    let dims: Vec<Vec<i64>> = sc.objects().iter().map(|o| o.kq_dim.clone()).collect();
    assert_eq!(dims, vec![vec![3, 8, 4], vec![2, 6, 3], vec![1, 4, 2], vec![1, 1, 0], vec![0, 2, 1], vec![0, 1, 0]]);
    let h: Vec<&str> = sc.h_objects().iter().map(|&x| sc.objects()[x].name.as_str()).collect();
    assert_eq!(h, ["X4", "X6", "X5"]);
    assert_eq!(sc.word_string(), "232132");
    assert!(sc.coxeter_system().is_reduced(&sc.word()).unwrap());
    let x1 = sc.object_index("X1").unwrap();
    assert_eq!(sc.objects()[x1].tau_power, 2);
    assert_eq!(sc.orbit(1, 2), Some(x1));
    assert_eq!(sc.tau_power(sc.h(1), 2), Some(x1));
    assert_eq!(sc.objects()[x1].tau_b, None);
}

#[test]
fn worked_example_b_and_f() {
    let sc = worked_example();
    let alg = &sc.b().algebra;
    assert_eq!(alg.dim(), 10);
    assert_eq!(alg.quiver().arrow_multiplicity(0, 1), 2);
    assert_eq!(alg.quiver().arrow_multiplicity(1, 2), 2);
    assert_eq!(alg.relations().len(), 1);
    let hats: Vec<Vec<i64>> = (0..6).map(|x| sc.to_lambda(&sc.f_hat(x))).collect();
    assert_eq!(hats, vec![vec![0, 1, 0], vec![1, 2, 0], vec![2, 4, 0], vec![2, 4, 1], vec![4, 6, 0], vec![8, 13, 1]]);
    let x1 = sc.object_index("X1").unwrap();
    assert_eq!(sc.to_lambda(&sc.f_vee(x1).unwrap()), vec![2, 4, 0]);
    let h = sc.h_objects()[0];
    assert!(matches!(sc.f_vee(h), Err(PipelineError::InH(_))));
}

#[test]
fn worked_example_sequence_of_x1() {
    let sc = worked_example();
    let s = sc.fundamental_sequence(sc.object_index("X1").unwrap()).unwrap();
    assert_eq!(s.totals, [1, 61, 66, 6]);
    assert!(s.exact);
    assert_eq!(sc.to_lambda(&s.dims[0]), vec![0, 1, 0]);
    assert_eq!(sc.to_lambda(&s.dims[3]), vec![2, 4, 0]);
}

#[test]
fn worked_example_report() {
    let sc = worked_example();
    let report = run_report(&sc).unwrap();
    for c in &report.checks {
        assert!(c.pass, "{} failed: {}", c.name, c.detail);
    }
    let a = report.a.as_ref().unwrap();
    assert_eq!(a.dim_matrix, vec![vec![1, 2, 3], vec![0, 1, 2], vec![0, 0, 1]]);
    let extra: Vec<(&str, &str, usize)> = report
        .tilde_quiver
        .iter()
        .filter(|c| c.new_from_mesh > 0)
        .map(|c| (c.source.as_str(), c.target.as_str(), c.new_from_mesh))
        .collect();
    assert_eq!(extra, [("X3", "X1", 1)]);
    let keys: Vec<String> = match serde_json::to_value(&report).unwrap() {
        serde_json::Value::Object(m) => m.keys().cloned().collect(),
        _ => unreachable!(),
    };
    assert_eq!(&keys[..7], ["M", "B", "phi", "word", "F", "sequence_checks", "tilde_dims"]);
}

#[test]
fn injective_slice_gives_a_permutation_word() {
    let q = concealed_quiver();
    let data = TiltingData::concealed(
        q,
        (0..3).map(|j| Summand::Coordinate { orbit: j, power: 0 }).collect(),
    );
    let sc = SliceCategory::build(data, 12, 64).unwrap();
    assert_eq!(sc.objects().len(), 3);
    let mut w = sc.word();
    w.sort();
    assert_eq!(w, [1, 2, 3]);
    let report = run_report(&sc).unwrap();
    assert!(report.a.is_none());
    assert!(report.all_pass());
}

#[test]
fn rejects_non_tilting_and_bad_input() {
    let q = concealed_quiver();
    let two = TiltingData::concealed(q.clone(), vec![Summand::Dim(vec![1, 1, 0]), Summand::Dim(vec![0, 1, 0])]);
    assert!(matches!(SliceCategory::build(two, 12, 64), Err(PipelineError::NotTilting(_))));
    let ext = TiltingData::concealed(
        q.clone(),
        vec![Summand::Dim(vec![0, 2, 1]), Summand::Dim(vec![2, 6, 3]), Summand::Dim(vec![1, 1, 0])],
    );
    assert!(matches!(SliceCategory::build(ext, 12, 64), Err(PipelineError::NotTilting(_))));
    let short = TiltingData::initial(linear(3), vec![1, 1]);
    assert!(matches!(SliceCategory::build(short, 12, 64), Err(PipelineError::Input(_))));
    assert!(TiltingData::from_json(&json!({"quiver": q.to_json_value()})).is_err());
}

#[test]
fn initial_setting_on_a3() {
    for t in [vec![0, 0, 0], vec![1, 1, 1], vec![2, 1, 0]] {
        let data = TiltingData::initial(linear(3), t.clone());
        let sc = match SliceCategory::build(data, 12, 64) {
            Ok(sc) => sc,
            Err(PipelineError::NotInitial(_)) => continue,
            Err(e) => panic!("{t:?}: {e}"),
        };
        assert_eq!(sc.objects().len(), t.iter().map(|x| x + 1).sum::<usize>());
        let report = run_report(&sc).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{t:?}: {} failed: {}", c.name, c.detail);
        }
    }
}

#[test]
fn initial_setting_on_d4() {
    let q = Quiver::from_arrows(&["1", "2", "3", "4"], &[("a", "1", "4"), ("b", "2", "4"), ("c", "3", "4")]).unwrap();
    let sc = SliceCategory::build(TiltingData::initial(q, vec![1; 4]), 12, 64).unwrap();
    assert_eq!(sc.objects().len(), 8);
    assert_eq!(sc.gls_tau_matches_knitting(), Some(true));
    assert_eq!(sc.gls_hat_formula_holds(), Some(true));
    assert_eq!(sc.gls_birs_formula_holds(), Some(true));
}

#[test]
fn projectives_of_a5_cut_out_mod_a4() {
    let q = linear(5);
    let proj: Vec<Summand> = quiverkit::mesh::projective_dims(&q).unwrap().into_iter().map(Summand::Dim).collect();
    let sc = SliceCategory::build(TiltingData::concealed(q, proj), 12, 64).unwrap();
    assert_eq!(sc.objects().len(), 15);
    assert_eq!(sc.m_bar().len(), 10);
    let report = run_report(&sc).unwrap();
    for c in &report.checks {
        assert!(c.pass, "{} failed: {}", c.name, c.detail);
    }
    let new: usize = report.tilde_quiver.iter().map(|c| c.new_from_mesh).sum();
    assert_eq!(new, 6);
}

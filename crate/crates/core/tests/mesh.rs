use quiverkit::linalg::{q, Q};
use quiverkit::mesh::{
    coxeter_translate_dim, coxeter_translate_inverse_dim, euler_form, knit_finite, knit_postprojective, knit_preinjective,
    FinCat, MeshCategory,
};
use quiverkit::quiver::Quiver;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn concealed_quiver() -> Quiver {
    Quiver::from_arrows(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2"), ("c", "3", "2")]).unwrap()
}

fn a4() -> Quiver {
    Quiver::from_arrows(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")]).unwrap()
}

#[test]
fn coxeter_images() {
    let q = concealed_quiver();
    assert_eq!(coxeter_translate_dim(&q, &[0, 2, 1]).unwrap(), vec![2, 6, 3]);
    assert_eq!(coxeter_translate_dim(&q, &[1, 1, 0]).unwrap(), vec![0, 3, 2]);
    assert_eq!(coxeter_translate_dim(&q, &[0, 1, 0]).unwrap(), vec![1, 4, 2]);
    assert_eq!(coxeter_translate_dim(&q, &[2, 6, 3]).unwrap(), vec![4, 16, 9]);
    assert_eq!(coxeter_translate_inverse_dim(&q, &[2, 6, 3]).unwrap(), vec![0, 2, 1]);
    assert!(coxeter_translate_dim(&q, &[1, 0]).is_err());
}

#[test]
fn euler_form_small_cases() {
    let a2 = Quiver::from_arrows(&["1", "2"], &[("a", "1", "2")]).unwrap();
    assert_eq!(euler_form(&a2, &[1, 1], &[0, 1]).unwrap(), 0);
    assert_eq!(euler_form(&a2, &[1, 0], &[1, 0]).unwrap(), 1);
    let cyc = Quiver::from_arrows(&["1"], &[("t", "1", "1")]).unwrap();
    assert!(euler_form(&cyc, &[1], &[1]).is_err());
}

#[test]
fn preinjective_window_of_concealed_example() {
    let tq = knit_preinjective(&concealed_quiver(), 2).unwrap();
    let dims: Vec<(usize, usize, Vec<i64>)> = tq.vertices().iter().map(|v| (v.orbit, v.power, v.dim.clone())).collect();
    let expect = [
        (0, 0, vec![1, 1, 0]),
        (1, 0, vec![0, 1, 0]),
        (2, 0, vec![0, 2, 1]),
        (0, 1, vec![0, 3, 2]),
        (1, 1, vec![1, 4, 2]),
        (2, 1, vec![2, 6, 3]),
        (0, 2, vec![3, 8, 4]),
        (1, 2, vec![3, 11, 6]),
        (2, 2, vec![4, 16, 9]),
    ];
    assert_eq!(dims.len(), 9);
    for e in &expect {
        assert!(dims.contains(e), "missing {e:?}");
    }
    assert!(tq.mesh_additivity_holds());
    assert!(!tq.is_complete());
    // Doubled arrows between the orbits of 2 and 3.
    let (x, y) = (tq.find(1, 1).unwrap(), tq.find(2, 0).unwrap());
    assert_eq!(tq.arrows().iter().filter(|a| a.source == x && a.target == y).count(), 2);
}

#[test]
fn depth_zero_is_the_injective_slice() {
    let tq = knit_preinjective(&concealed_quiver(), 0).unwrap();
    assert_eq!(tq.vertex_count(), 3);
    assert!(tq.vertices().iter().all(|v| v.power == 0));
    assert_eq!(tq.arrows().len(), 3);
}

#[test]
fn dynkin_components_are_finite() {
    let tq = knit_finite(&a4(), 20).unwrap();
    assert_eq!(tq.vertex_count(), 10);
    assert!(tq.mesh_additivity_holds());
    let d4 = Quiver::from_arrows(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "3", "2"), ("c", "4", "2")]).unwrap();
    assert_eq!(knit_finite(&d4, 20).unwrap().vertex_count(), 12);
    assert!(knit_finite(&concealed_quiver(), 20).is_err());
}

#[test]
fn postprojective_starts_with_projectives() {
    let q = concealed_quiver();
    let tq = knit_postprojective(&q, 2).unwrap();
    let p = |j: usize| tq.vertex(tq.find(j, 0).unwrap()).dim.clone();
    assert_eq!(p(0), vec![1, 0, 0]);
    assert_eq!(p(1), vec![1, 1, 2]);
    assert_eq!(p(2), vec![0, 0, 1]);
    assert!(tq.mesh_additivity_holds());
    for v in 0..tq.vertex_count() {
        if let Some(t) = tq.translate(v) {
            assert_eq!(coxeter_translate_dim(&q, &tq.vertex(v).dim).unwrap(), tq.vertex(t).dim);
        }
    }
}

#[test]
fn mesh_homs_match_the_euler_form() {
    let quiver = concealed_quiver();
    let qop = quiver.opposite();
    let mc = MeshCategory::new(knit_preinjective(&quiver, 2).unwrap());
    let tq = mc.translation_quiver();
    for x in 0..tq.vertex_count() {
        assert_eq!(mc.hom_dim(x, x), 1);
        if let Some(m) = mc.mesh_element(x) {
            assert!(m.iter().all(|c| *c == q(0)));
        }
        for y in 0..tq.vertex_count() {
            let (vx, vy) = (tq.vertex(x), tq.vertex(y));
            let e = euler_form(&qop, &vx.dim, &vy.dim).unwrap();
            if vy.power <= vx.power {
                assert_eq!(mc.hom_dim(x, y) as i64, e.max(0), "{} -> {}", tq.label(x), tq.label(y));
            } else {
                assert_eq!(mc.hom_dim(x, y), 0);
                assert!(e <= 0);
            }
        }
    }
}

#[test]
fn composition_is_associative() {
    let mc = MeshCategory::new(knit_preinjective(&concealed_quiver(), 2).unwrap());
    let n = mc.translation_quiver().vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random = |rng: &mut ChaCha8Rng, d: usize| -> Vec<Q> { (0..d).map(|_| q(rng.gen_range(-3..=3))).collect() };
    let mut checked = 0;
    for _ in 0..400 {
        let (w, x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let (d1, d2, d3) = (mc.hom_dim(w, x), mc.hom_dim(x, y), mc.hom_dim(y, z));
        if d1 * d2 * d3 == 0 {
            continue;
        }
        let (f, g, h) = (random(&mut rng, d1), random(&mut rng, d2), random(&mut rng, d3));
        let left = mc.compose(w, y, z, &mc.compose(w, x, y, &f, &g), &h);
        let right = mc.compose(w, x, z, &f, &mc.compose(x, y, z, &g, &h));
        assert_eq!(left, right);
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn endomorphisms_of_a_slice_present_the_concealed_algebra() {
    let mc = MeshCategory::new(knit_preinjective(&concealed_quiver(), 3).unwrap());
    let tq = mc.translation_quiver();
    let objs = [tq.find(0, 2).unwrap(), tq.find(2, 1).unwrap(), tq.find(0, 0).unwrap()];
    let cat = FinCat::from_mesh(&mc, &objs, vec!["1".into(), "2".into(), "3".into()]);
    assert_eq!(cat.total_dim(), 10);
    let pres = cat.present(12).unwrap();
    let alg = &pres.algebra;
    let quiver = alg.quiver();
    assert_eq!(quiver.arrow_multiplicity(0, 1), 2);
    assert_eq!(quiver.arrow_multiplicity(1, 2), 2);
    assert_eq!(quiver.arrow_count(), 4);
    assert_eq!(alg.relations().len(), 1);
    assert_eq!(alg.dim(), 10);
    // Quotient by the last object leaves the Kronecker algebra.
    let quot = cat.quotient_by(&[2]);
    assert_eq!(quot.dims(), &[vec![1, 2], vec![0, 1]]);
}

#[test]
fn auslander_algebra_of_a4() {
    let mc = MeshCategory::new(knit_finite(&a4(), 20).unwrap());
    let n = mc.translation_quiver().vertex_count();
    let objs: Vec<usize> = (0..n).collect();
    let names = objs.iter().map(|&v| mc.translation_quiver().label(v)).collect();
    let pres = FinCat::from_mesh(&mc, &objs, names).present(12).unwrap();
    let quiver = pres.algebra.quiver();
    assert_eq!(quiver.vertex_count(), 10);
    assert_eq!(quiver.arrow_count(), mc.translation_quiver().arrows().len());
    assert_eq!(pres.algebra.relations().len(), 6);
}

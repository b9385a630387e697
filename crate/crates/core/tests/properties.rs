mod common;

use proptest::prelude::*;
use quiverkit::coxeter::CoxeterSystem;
use quiverkit::groebner::{Verdict, DEFAULT_DMAX};
use quiverkit::mesh::{coxeter_translate_dim, knit_preinjective, MeshError};
use quiverkit::potential::{ginzburg, jacobian, Potential, Qp};
use quiverkit::quiver::Quiver;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn concealed_system() -> CoxeterSystem {
    let q = Quiver::from_arrows(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2"), ("c", "3", "2")]).unwrap();
    CoxeterSystem::from_quiver(&q)
}

/// Applies a commutation (1 3) or braid (121 = 212) move at `i` when one fits.
fn apply_move(w: &mut [usize], i: usize) {
    if w.len() >= 2 {
        let i = i % (w.len() - 1);
        if (w[i] == 1 && w[i + 1] == 3) || (w[i] == 3 && w[i + 1] == 1) {
            w.swap(i, i + 1);
            return;
        }
    }
    if w.len() >= 3 {
        let i = i % (w.len() - 2);
        match w[i..i + 3] {
            [1, 2, 1] => w[i..i + 3].copy_from_slice(&[2, 1, 2]),
            [2, 1, 2] => w[i..i + 3].copy_from_slice(&[1, 2, 1]),
            _ => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zero_potential_gives_the_path_algebra(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = common::random_acyclic(&mut rng, n, 2 * n, "v");
        let expect = common::path_counts(&q);
        let d = jacobian(&Qp::new(q, Potential::zero()), DEFAULT_DMAX).unwrap().dims();
        prop_assert!(matches!(d.verdict, Verdict::Finite(_)));
        prop_assert_eq!(d.dim_matrix, Some(expect));
    }

    #[test]
    fn ginzburg_differential_squares_to_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qp = common::random_qp(&mut rng);
        let g = ginzburg(&qp).unwrap();
        prop_assert!(g.verify_differential());
        prop_assert!(g.degrees_consistent());
    }

    #[test]
    fn coxeter_length_survives_braid_moves(
        word in proptest::collection::vec(1usize..=3, 0..10),
        moves in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let cs = concealed_system();
        let mut w = word.clone();
        for m in moves {
            apply_move(&mut w, m);
        }
        prop_assert!(cs.equal_elements(&word, &w).unwrap());
        prop_assert_eq!(cs.length(&word).unwrap(), cs.length(&w).unwrap());
        let l = cs.length(&word).unwrap();
        prop_assert_eq!(cs.is_reduced(&word).unwrap(), l == word.len());
    }

    #[test]
    fn knitting_agrees_with_the_coxeter_matrix(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = common::random_acyclic(&mut rng, n, n + 1, "v");
        let tq = match knit_preinjective(&q, 3) {
            Ok(tq) => tq,
            Err(MeshError::Disconnected) | Err(MeshError::Overflow(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!(tq.mesh_additivity_holds());
        for v in 0..tq.vertex_count() {
            if let Some(t) = tq.translate(v) {
                prop_assert_eq!(coxeter_translate_dim(&q, &tq.vertex(v).dim).unwrap(), tq.vertex(t).dim.clone());
            }
        }
    }
}

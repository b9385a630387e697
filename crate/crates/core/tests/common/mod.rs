#![allow(dead_code)]

use quiverkit::linalg::{qfrac, Q};
use quiverkit::path::{paths_of_length, Path};
use quiverkit::potential::{Potential, Qp};
use quiverkit::quiver::{Arrow, Quiver};
use rand::seq::SliceRandom;
use rand::Rng;

fn nonzero_coeff<R: Rng>(rng: &mut R) -> Q {
    let n = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    qfrac(n, rng.gen_range(1..=3))
}

/// An acyclic quiver on `n` vertices named `{prefix}0..`, vertex order shuffled against the
/// orientation.
pub fn random_acyclic<R: Rng>(rng: &mut R, n: usize, arrows: usize, prefix: &str) -> Quiver {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut list = Vec::new();
    if n >= 2 {
        for k in 0..arrows {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let (s, t) = if rank[i] < rank[j] { (i, j) } else { (j, i) };
            list.push(Arrow::new(&format!("{prefix}x{k}"), &names[s], &names[t]));
        }
    }
    Quiver::new(names, list).unwrap()
}

/// `out[i][j]` = number of paths from `i` to `j`, trivial paths included.
pub fn path_counts(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertex_count();
    let order = q.topological_order().expect("acyclic");
    let mut out = vec![vec![0usize; n]; n];
    for i in 0..n {
        out[i][i] = 1;
        for &v in &order {
            if out[i][v] == 0 {
                continue;
            }
            for &a in q.arrows_from(v) {
                out[i][q.target(a)] += out[i][v];
            }
        }
    }
    out
}

fn cycles(q: &Quiver, max_len: usize) -> Vec<Path> {
    (1..=max_len).flat_map(|l| paths_of_length(q, l)).filter(Path::is_cycle).collect()
}

/// A quiver with potential whose Jacobian algebra is finite-dimensional by construction:
/// either acyclic with zero potential, or an oriented triangle with a scaled 3-cycle and
/// pendant arrows leaving it.
pub fn random_jacobi_finite<R: Rng>(rng: &mut R, prefix: &str) -> Qp {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=4);
        let q = random_acyclic(rng, n, m, prefix);
        return Qp::new(q, Potential::zero());
    }
    let extra = rng.gen_range(0..=2);
    let names: Vec<String> = (0..3 + extra).map(|i| format!("{prefix}{i}")).collect();
    let mut arrows = vec![
        Arrow::new(&format!("{prefix}a"), &names[0], &names[1]),
        Arrow::new(&format!("{prefix}b"), &names[1], &names[2]),
        Arrow::new(&format!("{prefix}c"), &names[2], &names[0]),
    ];
    for k in 0..extra {
        let s = rng.gen_range(0..3);
        arrows.push(Arrow::new(&format!("{prefix}y{k}"), &names[s], &names[3 + k]));
    }
    let q = Quiver::new(names, arrows).unwrap();
    let ids = [format!("{prefix}a"), format!("{prefix}b"), format!("{prefix}c")];
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    let w = Potential::from_cycles(&q, &[(nonzero_coeff(rng), &ids)]).unwrap();
    Qp::new(q, w)
}

/// Any small quiver (cycles and loops allowed) with a random potential of short cycles.
pub fn random_qp<R: Rng>(rng: &mut R) -> Qp {
    let n = rng.gen_range(1..=4);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let m = rng.gen_range(1..=6);
    let arrows: Vec<Arrow> = (0..m)
        .map(|k| Arrow::new(&format!("a{k}"), &names[rng.gen_range(0..n)], &names[rng.gen_range(0..n)]))
        .collect();
    let q = Quiver::new(names, arrows).unwrap();
    let mut w = Potential::zero();
    let cs = cycles(&q, 4);
    if !cs.is_empty() {
        for _ in 0..rng.gen_range(1..=4) {
            let c = &cs[rng.gen_range(0..cs.len())];
            w.add_cycle(&q, c, nonzero_coeff(rng)).unwrap();
        }
    }
    Qp::new(q, w)
}

/// Random connecting arrows from `first` to `second`.
pub fn random_connectors<R: Rng>(rng: &mut R, first: &Quiver, second: &Quiver) -> Vec<(String, String, String)> {
    (0..rng.gen_range(1..=3))
        .map(|k| {
            let s = first.vertex(rng.gen_range(0..first.vertex_count())).to_string();
            let t = second.vertex(rng.gen_range(0..second.vertex_count())).to_string();
            (format!("f{k}"), s, t)
        })
        .collect()
}

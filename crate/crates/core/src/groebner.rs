use crate::linalg::Q;
use crate::path::{Path, PathError, PathVector};
use crate::quiver::Quiver;
use std::collections::{BTreeMap, HashMap, HashSet};

pub const DEFAULT_DMAX: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalWords {
    Finite(Vec<Path>),
    Infinite,
    Inconclusive(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite(usize),
    Infinite,
    Inconclusive(usize),
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, Verdict::Finite(_))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Finite(d) => write!(f, "Finite, dim {d}"),
            Verdict::Infinite => write!(f, "Infinite"),
            Verdict::Inconclusive(d) => write!(f, "Inconclusive at d_max {d}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientDims {
    pub verdict: Verdict,
    /// `dim_matrix[i][j] = dim e_i A e_j`, present only for finite verdicts.
    pub dim_matrix: Option<Vec<Vec<usize>>>,
}

/// Leading-word index used for reduction.
#[derive(Clone, Debug, Default)]
struct Reducer {
    elems: Vec<PathVector>,
    index: HashMap<Vec<usize>, usize>,
    killed: Vec<bool>,
    max_lw: usize,
}

impl Reducer {
    fn new(q: &Quiver, elems: Vec<PathVector>) -> Reducer {
        let mut killed = vec![false; q.vertex_count()];
        let mut index = HashMap::new();
        let mut max_lw = 0;
        for (i, g) in elems.iter().enumerate() {
            let (lw, _) = g.leading().expect("nonzero element");
            if lw.is_empty() {
                killed[lw.start] = true;
            } else {
                max_lw = max_lw.max(lw.len());
                index.entry(lw.arrows.clone()).or_insert(i);
            }
        }
        Reducer { elems, index, killed, max_lw }
    }

    /// Position `(element, offset)` of a leading word inside `p`, if any.
    fn divisor(&self, q: &Quiver, p: &Path) -> Option<(usize, usize)> {
        if self.killed.iter().any(|&k| k) {
            for (pos, v) in p.vertices(q).enumerate() {
                if self.killed[v] {
                    let g = self.elems.iter().position(|g| {
                        let lw = g.leading().unwrap().0;
                        lw.is_empty() && lw.start == v
                    });
                    return Some((g.unwrap(), pos));
                }
            }
        }
        let n = p.len();
        for start in 0..n {
            for end in start + 1..=n.min(start + self.max_lw) {
                if let Some(&g) = self.index.get(&p.arrows[start..end]) {
                    return Some((g, start));
                }
            }
        }
        None
    }

    fn reduce(&self, q: &Quiver, f: &PathVector) -> PathVector {
        let mut f = f.clone();
        let mut out = PathVector::zero();
        while let Some((p, c)) = f.pop_leading() {
            match self.divisor(q, &p) {
                None => out.add_term(p, c),
                Some((gi, pos)) => {
                    let g = &self.elems[gi];
                    let lw = g.leading().unwrap().0;
                    let u = p.slice(q, 0, pos);
                    let v = p.slice(q, pos + lw.len(), p.len());
                    for (t, d) in g.terms() {
                        if t == lw {
                            continue;
                        }
                        let w = u.concat(t).and_then(|ut| ut.concat(&v)).expect("uniform element");
                        f.add_term(w, -(&c * d));
                    }
                }
            }
        }
        out
    }
}

/// A degree-truncated Gröbner basis of a two-sided ideal and the induced normal words.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub generators: Vec<PathVector>,
    pub groebner: Vec<PathVector>,
    pub complete: bool,
    pub d_max: usize,
    pub normal_words: NormalWords,
    /// Some S-polynomial overlap exceeded `d_max` and was skipped.
    pub truncated: bool,
    /// Smallest length with no normal word, when found within `d_max`.
    pub certification_degree: Option<usize>,
    quiver: Quiver,
    reducer: Reducer,
    word_index: HashMap<Path, usize>,
}

impl QuotientPresentation {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn reduce(&self, f: &PathVector) -> PathVector {
        self.reducer.reduce(&self.quiver, f)
    }

    pub fn max_leading_len(&self) -> usize {
        self.reducer.max_lw
    }

    /// Normal words when the quotient is certified finite.
    pub fn basis(&self) -> Option<&[Path]> {
        match &self.normal_words {
            NormalWords::Finite(w) => Some(w),
            _ => None,
        }
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.word_index.get(p).copied()
    }

    /// Coordinates of the normal form of `f` in the normal-word basis.
    pub fn coordinates(&self, f: &PathVector) -> Option<Vec<Q>> {
        let basis = self.basis()?;
        let r = self.reduce(f);
        let mut v = vec![Q::from_integer(0.into()); basis.len()];
        for (p, c) in r.terms() {
            v[self.word_index[p]] = c.clone();
        }
        Some(v)
    }

    pub fn dims(&self) -> QuotientDims {
        quotient_dims(self)
    }
}

fn leading_word(g: &PathVector) -> &Path {
    g.leading().expect("nonzero").0
}

fn interreduce(q: &Quiver, basis: &mut Vec<PathVector>) {
    basis.retain(|g| !g.is_zero());
    for g in basis.iter_mut() {
        *g = g.monic();
    }
    loop {
        basis.sort_by(|a, b| leading_word(a).cmp(leading_word(b)).then_with(|| a.len().cmp(&b.len())));
        basis.dedup();
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<PathVector> =
                basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let r = Reducer::new(q, others).reduce(q, &basis[i]);
            if r != basis[i] {
                changed = true;
                if r.is_zero() {
                    basis.remove(i);
                } else {
                    basis[i] = r.monic();
                }
                break;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Overlaps `(i, j, k)`: the last `k` arrows of `lw_i` equal the first `k` of `lw_j`.
fn overlaps(basis: &[PathVector]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, gi) in basis.iter().enumerate() {
        let a = &leading_word(gi).arrows;
        for (j, gj) in basis.iter().enumerate() {
            let b = &leading_word(gj).arrows;
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] == b[..k] {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn s_polynomial(q: &Quiver, gi: &PathVector, gj: &PathVector, k: usize) -> PathVector {
    let a = leading_word(gi);
    let b = leading_word(gj);
    let right = b.slice(q, k, b.len());
    let left = a.slice(q, 0, a.len() - k);
    gi.sandwich(&Path::vertex(a.start), &right).sub(&gj.sandwich(&left, &Path::vertex(b.end)))
}

pub fn groebner(q: &Quiver, gens: &[PathVector], d_max: usize) -> Result<QuotientPresentation, PathError> {
    let degree = gens.iter().map(PathVector::max_len).max().unwrap_or(0);
    if d_max < degree {
        return Err(PathError::DegreeBound { d_max, degree });
    }
    let mut basis: Vec<PathVector> = gens.iter().flat_map(PathVector::uniform_components).collect();
    interreduce(q, &mut basis);
    let mut processed: HashSet<(Path, Path, usize)> = HashSet::new();
    loop {
        let mut next = None;
        for (i, j, k) in overlaps(&basis) {
            let (a, b) = (leading_word(&basis[i]), leading_word(&basis[j]));
            let key = (a.clone(), b.clone(), k);
            if processed.contains(&key) || a.len() + b.len() - k > d_max {
                continue;
            }
            next = Some((i, j, k, key));
            break;
        }
        let Some((i, j, k, key)) = next else { break };
        processed.insert(key);
        let s = s_polynomial(q, &basis[i], &basis[j], k);
        let r = Reducer::new(q, basis.clone()).reduce(q, &s);
        if !r.is_zero() {
            basis.push(r.monic());
            interreduce(q, &mut basis);
        }
    }
    let truncated = overlaps(&basis).into_iter().any(|(i, j, k)| {
        leading_word(&basis[i]).len() + leading_word(&basis[j]).len() - k > d_max
    });
    let reducer = Reducer::new(q, basis.clone());
    let automaton = Automaton::new(q, &reducer);
    let counts = automaton.count_words(d_max);
    let certification_degree = counts.iter().position(|&c| c == 0);
    let complete = matches!(certification_degree, Some(d) if d + reducer.max_lw <= d_max) && !truncated;
    let normal_words = if complete {
        NormalWords::Finite(automaton.words_below(certification_degree.unwrap()))
    } else if !truncated && automaton.has_cycle() {
        NormalWords::Infinite
    } else {
        NormalWords::Inconclusive(d_max)
    };
    let word_index = match &normal_words {
        NormalWords::Finite(w) => w.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect(),
        _ => HashMap::new(),
    };
    Ok(QuotientPresentation {
        generators: gens.to_vec(),
        groebner: basis,
        complete,
        d_max,
        normal_words,
        truncated,
        certification_degree,
        quiver: q.clone(),
        reducer,
        word_index,
    })
}

pub fn quotient_dims(p: &QuotientPresentation) -> QuotientDims {
    match &p.normal_words {
        NormalWords::Finite(words) => {
            let n = p.quiver.vertex_count();
            let mut m = vec![vec![0; n]; n];
            for w in words {
                m[w.start][w.end] += 1;
            }
            QuotientDims { verdict: Verdict::Finite(words.len()), dim_matrix: Some(m) }
        }
        NormalWords::Infinite => QuotientDims { verdict: Verdict::Infinite, dim_matrix: None },
        NormalWords::Inconclusive(d) => QuotientDims { verdict: Verdict::Inconclusive(*d), dim_matrix: None },
    }
}

/// Automaton recognising normal words: a state is the current end vertex together with the
/// longest suffix of the word read so far that is a proper prefix of a leading word.
struct Automaton<'a> {
    q: &'a Quiver,
    reducer: &'a Reducer,
    prefixes: HashSet<Vec<usize>>,
}

type State = (usize, Vec<usize>);

impl<'a> Automaton<'a> {
    fn new(q: &'a Quiver, reducer: &'a Reducer) -> Automaton<'a> {
        let mut prefixes = HashSet::new();
        for lw in reducer.index.keys() {
            for k in 1..lw.len() {
                prefixes.insert(lw[..k].to_vec());
            }
        }
        Automaton { q, reducer, prefixes }
    }

    fn initial(&self) -> Vec<State> {
        (0..self.q.vertex_count()).filter(|&v| !self.reducer.killed[v]).map(|v| (v, Vec::new())).collect()
    }

    fn step(&self, state: &State, a: usize) -> Option<State> {
        let t = self.q.target(a);
        if self.reducer.killed[t] {
            return None;
        }
        let mut w = state.1.clone();
        w.push(a);
        for k in 1..=w.len() {
            if self.reducer.index.contains_key(&w[w.len() - k..]) {
                return None;
            }
        }
        for k in (1..=w.len()).rev() {
            let s = &w[w.len() - k..];
            if self.prefixes.contains(s) {
                return Some((t, s.to_vec()));
            }
        }
        Some((t, Vec::new()))
    }

    fn successors(&self, state: &State) -> Vec<State> {
        self.q.arrows_from(state.0).iter().filter_map(|&a| self.step(state, a)).collect()
    }

    /// Number of normal words of each length `0..=d_max` (saturating).
    fn count_words(&self, d_max: usize) -> Vec<u128> {
        let mut layer: BTreeMap<State, u128> = self.initial().into_iter().map(|s| (s, 1)).collect();
        let mut counts = Vec::with_capacity(d_max + 1);
        for d in 0..=d_max {
            counts.push(layer.values().fold(0u128, |acc, &c| acc.saturating_add(c)));
            if d == d_max {
                break;
            }
            let mut next: BTreeMap<State, u128> = BTreeMap::new();
            for (s, c) in &layer {
                for t in self.successors(s) {
                    let e = next.entry(t).or_insert(0);
                    *e = e.saturating_add(*c);
                }
            }
            layer = next;
        }
        counts
    }

    fn words_below(&self, d: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut layer: Vec<(Path, State)> =
            self.initial().into_iter().map(|s| (Path::vertex(s.0), s)).collect();
        for _ in 0..d {
            let mut next = Vec::new();
            for (p, s) in &layer {
                for &a in self.q.arrows_from(s.0) {
                    if let Some(t) = self.step(s, a) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push((Path { start: p.start, end: self.q.target(a), arrows }, t));
                    }
                }
            }
            out.extend(layer.into_iter().map(|(p, _)| p));
            layer = next;
        }
        out.sort();
        out
    }

    fn has_cycle(&self) -> bool {
        let mut color: HashMap<State, u8> = HashMap::new();
        for s in self.initial() {
            if self.dfs_cycle(s, &mut color) {
                return true;
            }
        }
        false
    }

    fn dfs_cycle(&self, root: State, color: &mut HashMap<State, u8>) -> bool {
        if color.contains_key(&root) {
            return false;
        }
        let mut stack: Vec<(State, Vec<State>)> = Vec::new();
        color.insert(root.clone(), 1);
        let succ = self.successors(&root);
        stack.push((root, succ));
        while let Some((_, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(t) => match color.get(&t) {
                    Some(1) => return true,
                    Some(_) => {}
                    None => {
                        color.insert(t.clone(), 1);
                        let succ = self.successors(&t);
                        stack.push((t, succ));
                    }
                },
                None => {
                    let (s, _) = stack.pop().unwrap();
                    color.insert(s, 2);
                }
            }
        }
        false
    }
}

/// The relations `e_i c e_i` of the preprojective algebra, `c = sum over arrows of a a* + a* a`,
/// as elements of the path algebra of the double quiver.
pub fn preprojective_relations(q: &Quiver) -> Result<(Quiver, Vec<PathVector>), crate::quiver::QuiverError> {
    let d = q.double()?;
    let one = Q::from_integer(1.into());
    let mut c = PathVector::zero();
    for a in q.arrows() {
        let star = crate::quiver::star(&a.id);
        c = c.add(&PathVector::from_words(&d, &[(one.clone(), &[a.id.as_str(), star.as_str()])]));
        c = c.add(&PathVector::from_words(&d, &[(one.clone(), &[star.as_str(), a.id.as_str()])]));
    }
    let comps = (0..d.vertex_count()).map(|i| c.component(i, i)).filter(|v| !v.is_zero()).collect();
    Ok((d, comps))
}

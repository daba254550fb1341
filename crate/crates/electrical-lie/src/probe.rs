use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{braid_params, factorize_eval, CoxeterWord, ElError, ElFunction, Factorization, Family, Mode, Move, Params};

/// Two parameter tuples with (numerically) equal products.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Collision {
    pub first: Params,
    pub second: Params,
    pub distance: f64,
}

/// Outcome of a sampling probe. Finding no collision is evidence, not proof.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub word: CoxeterWord,
    pub mode: Mode,
    pub reduced: bool,
    pub trials: usize,
    /// Smallest distance between products of distinct tuples among the random trials.
    pub min_distance: f64,
    pub collision: Option<Collision>,
}

impl ProbeReport {
    /// Reduced words show no collision and non-reduced words show one.
    pub fn consistent(&self) -> bool {
        self.reduced == self.collision.is_none()
    }
}

const COLLISION_DISTANCE: f64 = 1e-9;

fn magnitude(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// A PWL bijection with two breakpoints on each side of 0 and unrelated slopes on the two sides.
pub fn random_function(rng: &mut ChaCha8Rng, increasing: bool) -> ElFunction {
    let sign = if increasing { 1.0 } else { -1.0 };
    let mut points = Vec::new();
    for side in [-1.0, 1.0] {
        let (x1, x2) = (rng.gen_range(0.2..1.5), rng.gen_range(1.6..3.0));
        let (s1, s2) = (rng.gen_range(0.2..4.0), rng.gen_range(0.2..4.0));
        let y1 = sign * s1 * x1;
        points.push([side * x1, side * y1]);
        points.push([side * x2, side * (y1 + sign * s2 * (x2 - x1))]);
    }
    ElFunction::pwl(points).expect("monotone by construction")
}

fn random_params(rng: &mut ChaCha8Rng, mode: Mode, len: usize) -> Params {
    match mode {
        Mode::Matrix => Params::Reals((0..len).map(|_| magnitude(rng, 0.5, 2.0)).collect()),
        _ => Params::Functions(
            (0..len)
                .map(|_| {
                    let up = rng.gen_bool(0.5);
                    random_function(rng, up)
                })
                .collect(),
        ),
    }
}

fn perturb(rng: &mut ChaCha8Rng, p: &Params) -> Params {
    let k = rng.gen_range(0..p.len());
    match p {
        Params::Reals(v) => {
            let mut v = v.clone();
            v[k] *= 1.0 + 1e-3;
            Params::Reals(v)
        }
        Params::Functions(v) => {
            let mut v = v.clone();
            v[k] = ElFunction::combine(1.0 + 1e-3, &v[k], 0.0, &v[k]).expect("positive rescaling");
            Params::Functions(v)
        }
    }
}

fn probe_vectors(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0; dim]];
    for k in 0..dim {
        for t in [-3.0, -1.0, 1.0, 3.0] {
            let mut v = vec![0.0; dim];
            v[k] = t;
            out.push(v);
        }
    }
    out.extend((0..16).map(|_| (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect()));
    out
}

fn distance(a: &Factorization, b: &Factorization, probes: &[Vec<f64>]) -> f64 {
    match (a, b) {
        (Factorization::Matrix(x), Factorization::Matrix(y)) => x.distance(y),
        (Factorization::Map(f), Factorization::Map(g)) => probes
            .iter()
            .map(|v| {
                let (p, q) = (f.apply(v).expect("probe sized to the map"), g.apply(v).expect("probe sized to the map"));
                p.iter().zip(&q).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max),
        _ => f64::INFINITY,
    }
}

fn differ(p: &Params, q: &Params) -> bool {
    match (p, q) {
        (Params::Reals(a), Params::Reals(b)) => a.iter().zip(b).any(|(s, t)| (s - t).abs() > 1e-6 * s.abs().max(t.abs())),
        _ => p != q,
    }
}

/// Carry real parameters along `moves`, keeping the product fixed.
fn transport(family: Family, params: &[f64], moves: &[Move]) -> Option<Vec<f64>> {
    let mut p = params.to_vec();
    for &mv in moves {
        match mv {
            Move::Commute(k) => p.swap(k, k + 1),
            Move::Braid(k) => {
                let q = braid_params(family, [p[k], p[k + 1], p[k + 2]])?;
                p[k..k + 3].copy_from_slice(&q);
            }
        }
    }
    Some(p)
}

/// Parameters for `target` giving the same product as `params` on `word`, for two words joined by
/// commutations and braid moves.
pub fn transfer(family: Family, word: &CoxeterWord, params: &[f64], target: &CoxeterWord) -> Option<Vec<f64>> {
    transport(family, params, &word.path_to(target)?)
}


/// Search for a relation-derived collision: move to a word with a repeated letter, trade part of
/// one parameter of the pair into the other, and move back.
fn relation_collision(word: &CoxeterWord, mode: Mode, attempts: usize, rng: &mut ChaCha8Rng, probes: &[Vec<f64>]) -> Option<Collision> {
    let (moves, at) = word.path_to_repeat(mode == Mode::Matrix)?;
    // each move is its own inverse on the word it produced
    let back: Vec<Move> = moves.iter().rev().copied().collect();
    for _ in 0..attempts {
        let first = random_params(rng, mode, word.len());
        let second = match &first {
            Params::Reals(v) => {
                let Some(mut p) = transport(Family::U, v, &moves) else { continue };
                let t = magnitude(rng, 0.1, 1.0);
                p[at] += t;
                p[at + 1] -= t;
                if p[at] == 0.0 || p[at + 1] == 0.0 {
                    continue;
                }
                let Some(q) = transport(Family::U, &p, &back) else { continue };
                Params::Reals(q)
            }
            Params::Functions(v) => {
                let mut p = v.clone();
                for &mv in &moves {
                    let Move::Commute(k) = mv else { unreachable!("commutations only") };
                    p.swap(k, k + 1);
                }
                let (f, g) = (&p[at], &p[at + 1]);
                let eps = rng.gen_range(0.1..0.5);
                let (nf, ng) = if f.is_increasing() == g.is_increasing() {
                    (ElFunction::combine(1.0, f, eps, g), ElFunction::combine(1.0 - eps, g, 0.0, g))
                } else {
                    (ElFunction::combine(1.0 + eps, f, 0.0, f), ElFunction::combine(1.0, g, -eps, f))
                };
                let (Ok(nf), Ok(ng)) = (nf, ng) else { continue };
                p[at] = nf;
                p[at + 1] = ng;
                for &mv in &back {
                    let Move::Commute(k) = mv else { unreachable!("commutations only") };
                    p.swap(k, k + 1);
                }
                Params::Functions(p)
            }
        };
        if !differ(&first, &second) {
            continue;
        }
        let a = factorize_eval(word.n, &word.letters, &first, mode).ok()?;
        let b = factorize_eval(word.n, &word.letters, &second, mode).ok()?;
        let d = distance(&a, &b, probes);
        if d <= COLLISION_DISTANCE {
            return Some(Collision { first, second, distance: d });
        }
    }
    None
}

/// Sample pairs of distinct parameter tuples and compare their products. Half the pairs are
/// independent, half differ by a relative `1e-3` in one parameter. Non-reduced words additionally
/// get a relation-derived collision search.
pub fn injectivity_probe(word: &CoxeterWord, mode: Mode, trials: usize, seed: u64) -> Result<ProbeReport, ElError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = if mode == Mode::NonlinearX { Family::X.dim(word.n) } else { Family::U.dim(word.n) };
    let probes = probe_vectors(dim, &mut rng);
    let mut report = ProbeReport { word: word.clone(), mode, reduced: word.is_reduced(), trials, min_distance: f64::INFINITY, collision: None };
    if word.is_empty() {
        return Ok(report);
    }
    for t in 0..trials {
        let first = random_params(&mut rng, mode, word.len());
        let second = if t % 2 == 0 { random_params(&mut rng, mode, word.len()) } else { perturb(&mut rng, &first) };
        let a = factorize_eval(word.n, &word.letters, &first, mode)?;
        let b = factorize_eval(word.n, &word.letters, &second, mode)?;
        let d = distance(&a, &b, &probes);
        report.min_distance = report.min_distance.min(d);
        if d <= COLLISION_DISTANCE && report.collision.is_none() {
            report.collision = Some(Collision { first, second, distance: d });
        }
    }
    if !report.reduced && report.collision.is_none() {
        report.collision = relation_collision(word, mode, trials.clamp(1, 1000), &mut rng, &probes);
    }
    Ok(report)
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{gen_u, gen_x, symplectic_residual, ElMatrix, Family};

pub const RELATION_TOLERANCE: f64 = 1e-11;

/// Parameters of the right side of `g_i(a) g_j(b) g_i(c) = g_j(a') g_i(b') g_j(c')`.
///
/// The map is its own inverse. Returns `None` when the denominator vanishes.
pub fn braid_params(family: Family, [a, b, c]: [f64; 3]) -> Option<[f64; 3]> {
    let d = match family {
        Family::U => a + c + a * b * c,
        _ => a + c,
    };
    if d.abs() < 1e-12 || !d.is_finite() {
        return None;
    }
    Some([b * c / d, d, a * b / d])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub samples: usize,
    pub additive: f64,
    pub commuting: f64,
    pub braid: f64,
    pub x_additive: f64,
    pub x_commuting: f64,
    pub x_braid: f64,
    pub symplectic: f64,
    pub passes: bool,
}

fn nonzero(rng: &mut ChaCha8Rng) -> f64 {
    let m = rng.gen_range(0.1..2.0);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// Maximum elementwise residuals of the three relations for both families, over every applicable
/// pair of indices and `samples` random parameter triples.
pub fn verify_relations(n: usize, samples: usize, seed: u64) -> RelationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = |i, a| gen_u(n, i, a).expect("index in range");
    let x = |i, a| gen_x(n, i, a).expect("index in range");
    let prod = |ms: [ElMatrix; 3]| ms[0].mul(&ms[1]).mul(&ms[2]);
    let mut r = RelationReport { n, samples, additive: 0.0, commuting: 0.0, braid: 0.0, x_additive: 0.0, x_commuting: 0.0, x_braid: 0.0, symplectic: 0.0, passes: false };
    let letters = 1..=2 * n;
    for _ in 0..samples {
        let (a, b) = (nonzero(&mut rng), nonzero(&mut rng));
        let c = loop {
            let c = nonzero(&mut rng);
            if (a + c + a * b * c).abs() > 0.5 && (a + c).abs() > 0.5 {
                break c;
            }
        };
        for i in letters.clone() {
            r.symplectic = r.symplectic.max(symplectic_residual(&u(i, a)));
            r.additive = r.additive.max(u(i, a).mul(&u(i, b)).max_abs_diff(&u(i, a + b)));
            r.x_additive = r.x_additive.max((x(i, a) * x(i, b) - x(i, a + b)).amax());
            for j in letters.clone() {
                match i.abs_diff(j) {
                    0 => {}
                    1 => {
                        let [p, q, s] = braid_params(Family::U, [a, b, c]).expect("denominator bounded away from 0");
                        let lhs = prod([u(i, a), u(j, b), u(i, c)]);
                        r.braid = r.braid.max(lhs.max_abs_diff(&prod([u(j, p), u(i, q), u(j, s)])));
                        let [p, q, s] = braid_params(Family::X, [a, b, c]).expect("denominator bounded away from 0");
                        let lhs = x(i, a) * x(j, b) * x(i, c);
                        r.x_braid = r.x_braid.max((lhs - x(j, p) * x(i, q) * x(j, s)).amax());
                    }
                    _ => {
                        r.commuting = r.commuting.max(u(i, a).mul(&u(j, b)).max_abs_diff(&u(j, b).mul(&u(i, a))));
                        r.x_commuting = r.x_commuting.max((x(i, a) * x(j, b) - x(j, b) * x(i, a)).amax());
                    }
                }
            }
        }
    }
    r.passes = [r.additive, r.commuting, r.braid, r.x_additive, r.x_commuting, r.x_braid].iter().all(|&v| v < RELATION_TOLERANCE) && r.symplectic < 1e-12;
    r
}

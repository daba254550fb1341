use cellset::{build_recovery_sets, closure, spanning_boundary_set, CellSet, CellsetError, Labelling};
use forward::*;
use medial::build_medial;
use network_core::samples::{series_pair, single_edge, star3, star3_linear};
use network_core::{BoundaryData, ConductanceSpec, Network};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transforms::generate::{random_critical_network, random_network, with_conductances};

fn volts(net: &Network, f: &[f64]) -> BoundaryData {
    BoundaryData::voltages(net.boundary.iter().cloned().zip(f.iter().copied()))
}

fn currents(net: &Network, f: &[f64]) -> BoundaryData {
    BoundaryData::currents(net.boundary.iter().cloned().zip(f.iter().copied()))
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn random_positive(rng: &mut ChaCha8Rng, critical: bool) -> Network {
    let shape = if critical { random_critical_network(rng, 7, 12) } else { random_network(rng, 7, 12) };
    with_conductances(&shape, |_| ConductanceSpec::linear(rng.gen_range(0.1..10.0)))
}

/// Boundary vertices that share a component, as a representative per boundary index.
fn boundary_components(net: &Network) -> Vec<usize> {
    let n = net.vertex_ids().count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in &net.edges {
        let (a, b) = (net.vertex_index(&e.u).unwrap(), net.vertex_index(&e.v).unwrap());
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..net.boundary.len()).map(|i| find(&mut parent, i)).collect()
}

#[test]
fn dirichlet_three_star() {
    let net = star3_linear([1.0; 3]);
    let sol = solve_dirichlet(&net, &volts(&net, &[1.0, 0.0, 0.0])).unwrap();
    assert!((sol.voltages["h"] - 1.0 / 3.0).abs() < 1e-10);
    assert!(close(&sol.boundary_currents, &[2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0], 1e-10));
    assert!((sol.edge_currents["e1"] - 2.0 / 3.0).abs() < 1e-10);
}

#[test]
fn dirichlet_zero_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let net = random_positive(&mut rng, false);
        let sol = solve_dirichlet(&net, &volts(&net, &vec![0.0; net.boundary.len()])).unwrap();
        assert!(sol.edge_currents.values().all(|&i| i == 0.0));
        assert!(sol.boundary_currents.iter().all(|&i| i == 0.0));
    }
}

#[test]
fn dirichlet_cubic_edge() {
    let points: Vec<[f64; 2]> = (1..=16).map(|k| k as f64 / 8.0).map(|x| [x, x * x * x]).collect();
    let net = single_edge(ConductanceSpec::pwl(points, 12.0));
    let sol = solve_dirichlet(&net, &volts(&net, &[2.0, 1.0])).unwrap();
    assert!((sol.boundary_currents[0] - 1.0).abs() < 1e-6);
    assert!((sol.boundary_currents[1] + 1.0).abs() < 1e-6);
}

#[test]
fn dirichlet_refuses_signed_conductance() {
    let net = star3_linear([1.0, -1.0, 1.0]);
    assert_eq!(solve_dirichlet(&net, &volts(&net, &[1.0, 0.0, 0.0])).unwrap_err(), ForwardError::NonMonotone("e2".into()));
    let decreasing = ConductanceSpec::pwl(vec![[1.0, -1.0]], -2.0);
    let net = star3([decreasing, ConductanceSpec::linear(1.0), ConductanceSpec::linear(1.0)]);
    assert!(matches!(solve_dirichlet(&net, &volts(&net, &[1.0, 0.0, 0.0])), Err(ForwardError::NonMonotone(_))));
}

#[test]
fn dirichlet_wants_voltages() {
    let net = star3_linear([1.0; 3]);
    assert!(matches!(solve_dirichlet(&net, &currents(&net, &[0.0; 3])), Err(ForwardError::Network(_))));
}

#[test]
fn neumann_examples() {
    let net = single_edge(ConductanceSpec::linear(0.5));
    let sol = solve_neumann(&net, &currents(&net, &[1.0, -1.0])).unwrap();
    assert!((sol.boundary_voltages[0] - sol.boundary_voltages[1] - 2.0).abs() < 1e-12);

    let net = star3_linear([1.0; 3]);
    let sol = solve_neumann(&net, &currents(&net, &[2.0, -1.0, -1.0])).unwrap();
    assert_eq!(sol.voltages["h"], 0.0);
    assert!(close(&sol.boundary_voltages, &[2.0, -1.0, -1.0], 1e-12));

    assert!(matches!(solve_neumann(&net, &currents(&net, &[1.0, 0.0, 0.0])), Err(ForwardError::BadCurrentSum { .. })));
}

#[test]
fn response_examples() {
    let r = response_matrix(&single_edge(ConductanceSpec::linear(5.0))).unwrap();
    assert_eq!(r.rows(), vec![vec![5.0, -5.0], vec![-5.0, 5.0]]);
    let r = response_matrix(&star3_linear([1.0; 3])).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { 2.0 / 3.0 } else { -1.0 / 3.0 };
            assert!((r.matrix[(i, j)] - want).abs() < 1e-14);
        }
    }
    let r = response_matrix(&series_pair(2.0, 2.0)).unwrap();
    assert!(close(&r.matrix.as_slice().to_vec(), &[1.0, -1.0, -1.0, 1.0], 1e-14));
    assert_eq!(response_matrix(&series_pair(1.0, -1.0)).unwrap_err(), ForwardError::SingularInterior);
    let pwl = single_edge(ConductanceSpec::pwl(vec![[1.0, 1.0]], 2.0));
    assert!(matches!(response_matrix(&pwl), Err(ForwardError::Network(_))));
}

#[test]
fn response_rows_sum_to_zero_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let net = random_positive(&mut rng, false);
        let r = response_matrix(&net).unwrap();
        assert!(r.max_row_sum() < 1e-10);
        assert!(r.asymmetry() < 1e-10);
    }
}

#[test]
fn oracle_zero_query() {
    let net = star3_linear([1.0, 2.0, 3.0]);
    let m = build_medial(&net).unwrap();
    let s = spanning_boundary_set(&m).unwrap();
    let oracle = make_oracle(&net, m.clone()).unwrap();
    let known = Labelling::from_pairs(s.iter().map(|c| (c, 0.0)));
    let out = oracle.boundary_labelling(&known).unwrap();
    assert_eq!(out.len(), m.boundary_cells().len());
    assert!(out.values.values().all(|&x| x == 0.0));
    assert_eq!(oracle.queries(), 1);
}

#[test]
fn oracle_rejects_unsafe_sets_and_interior_cells() {
    let net = star3_linear([1.0, 2.0, 3.0]);
    let m = build_medial(&net).unwrap();
    let oracle = make_oracle(&net, m.clone()).unwrap();
    let all = Labelling::from_pairs(m.boundary_cells().into_iter().map(|c| (c, 0.0)));
    let err = oracle.boundary_labelling(&all).unwrap_err();
    assert!(matches!(err, OracleError::Cellset(CellsetError::NotSafe { .. })), "{err:?}");
    let interior = m.cell_ids().find(|&c| !m.is_boundary_cell(c)).unwrap();
    let s = spanning_boundary_set(&m).unwrap();
    let known = Labelling::from_pairs(s.iter().map(|c| (c, 0.0)));
    assert_eq!(oracle.answer(&known, &[interior]).unwrap_err(), OracleError::NotBoundary(interior));
}

#[test]
fn oracle_vanishes_on_the_far_halfplane() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let net = with_conductances(&random_critical_network(&mut rng, 7, 12), |_| {
            ConductanceSpec::linear(if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * rng.gen_range(0.1..10.0))
        });
        let m = build_medial(&net).unwrap();
        let oracle = make_oracle(&net, m.clone()).unwrap();
        for (b, _) in m.triangles() {
            let ac = m.apex_cells(b).unwrap();
            let sets = build_recovery_sets(&m, b, ac.g).unwrap();
            let known = Labelling::from_pairs(sets.s.iter().map(|c| (c, if c == b { 1.0 } else { 0.0 })));
            let out = oracle.boundary_labelling(&known).unwrap();
            let far: CellSet = closure(&sets.t).set;
            for c in far.iter().filter(|&c| m.is_boundary_cell(c)) {
                assert_eq!(out.get(c), Some(0.0));
            }
            assert_eq!(out.get(b), Some(1.0));
        }
    }
}

#[test]
fn oracle_matches_response_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let net = random_positive(&mut rng, true);
        let m = build_medial(&net).unwrap();
        let r = response_matrix(&net).unwrap();
        let oracle = make_oracle(&net, m.clone()).unwrap();
        let s = spanning_boundary_set(&m).unwrap();
        let known = Labelling::from_pairs(s.iter().map(|c| (c, rng.gen_range(-1.0..1.0))));
        let out = oracle.boundary_labelling(&known).unwrap();
        let (v, i) = boundary_currents_from_labelling(&m, &out).unwrap();
        let predicted = r.apply(&v);
        assert!(close(&i, &predicted, 1e-8), "{i:?} vs {predicted:?}");
    }
}

#[test]
fn dirichlet_matches_response_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let net = random_positive(&mut rng, false);
        let f: Vec<f64> = (0..net.boundary.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sol = solve_dirichlet(&net, &volts(&net, &f)).unwrap();
        let predicted = response_matrix(&net).unwrap().apply(&f);
        assert!(close(&sol.boundary_currents, &predicted, 1e-7), "{:?} vs {predicted:?}", sol.boundary_currents);
    }
}

#[test]
fn dirichlet_currents_do_not_depend_on_the_start() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let net = with_conductances(&random_network(&mut rng, 7, 12), |_| {
            let x1 = rng.gen_range(0.2..1.0);
            let s1 = rng.gen_range(0.2..5.0);
            ConductanceSpec::pwl(vec![[x1, s1 * x1]], rng.gen_range(0.2..5.0))
        });
        let f: Vec<f64> = (0..net.boundary.len()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let runs: Vec<DirichletSolution> = (0..2)
            .map(|_| {
                let init = (0..net.interior.len()).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let opts = DirichletOptions { initial: Some(init), ..Default::default() };
                solve_dirichlet_with(&net, &volts(&net, &f), &opts).unwrap()
            })
            .collect();
        for (a, b) in runs[0].edge_currents.values().zip(runs[1].edge_currents.values()) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}

#[test]
fn pseudopower_never_increases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let net = random_positive(&mut rng, false);
        let f: Vec<f64> = (0..net.boundary.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sol = solve_dirichlet(&net, &volts(&net, &f)).unwrap();
        let h = &sol.state.history;
        assert!(h.windows(2).all(|w| w[1] <= w[0] + 1e-12 * (1.0 + w[0].abs())), "{h:?}");
        assert!(sol.state.residuals.iter().all(|r| r.abs() < 1e-10));
    }
}

#[test]
fn neumann_inverts_dirichlet() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 100 {
        let net = random_positive(&mut rng, false);
        let comps = boundary_components(&net);
        if comps.iter().any(|&c| c != comps[0]) {
            continue;
        }
        let f: Vec<f64> = (0..net.boundary.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let d = solve_dirichlet(&net, &volts(&net, &f)).unwrap();
        let n = solve_neumann(&net, &currents(&net, &d.boundary_currents)).unwrap();
        let shift = f[0] - n.boundary_voltages[0];
        let back: Vec<f64> = n.boundary_voltages.iter().map(|x| x + shift).collect();
        assert!(close(&back, &f, 1e-7), "{back:?} vs {f:?}");
        assert!(n.cycle_residual < 1e-9);
        done += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neumann_meets_its_data(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_positive(&mut rng, false);
        let comps = boundary_components(&net);
        let mut f: Vec<f64> = (0..net.boundary.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for i in 0..f.len() {
            let members: Vec<usize> = (0..f.len()).filter(|&j| comps[j] == comps[i]).collect();
            if members[0] == i {
                let mean = members.iter().map(|&j| f[j]).sum::<f64>() / members.len() as f64;
                for &j in &members {
                    f[j] -= mean;
                }
            }
        }
        let sol = solve_neumann(&net, &currents(&net, &f)).unwrap();
        let f2: Vec<f64> = sol.boundary_voltages.clone();
        let d = solve_dirichlet(&net, &volts(&net, &f2)).unwrap();
        prop_assert!(close(&d.boundary_currents, &f, 1e-8), "{:?} vs {:?}", d.boundary_currents, f);
    }
}

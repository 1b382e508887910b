use abcover::graph::families::{
    complete_bipartite, cycle, h_graph, h_partition, path, petersen, star,
};
use abcover::spectral::{
    characteristic_polynomial, compare_results, compare_rho, complement_size_check,
    hong_nikiforov_bound, quotient_matrix, quotient_spectral_radius, rho_at_least, spectral_radius,
    spectral_radius_with, RhoOrdering, DEFAULT_TOL,
};
use abcover::{Error, Graph, VertexSet};
use proptest::prelude::*;

fn graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            g.add_edge(u, v);
                        }
                        k += 1;
                    }
                }
                g
            },
        )
    })
}

/// Largest eigenvalue of the adjacency matrix by cyclic Jacobi rotations.
fn jacobi_max_eigenvalue(g: &Graph) -> f64 {
    let n = g.order();
    if n == 0 {
        return 0.0;
    }
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j) as u8 as f64).collect())
        .collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let phi = 0.5 * (2.0 * m[p][q]).atan2(m[q][q] - m[p][p]);
                let (s, c) = phi.sin_cos();
                for row in m.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                let (rp, rq) = (m[p].clone(), m[q].clone());
                for k in 0..n {
                    m[p][k] = c * rp[k] - s * rq[k];
                    m[q][k] = s * rp[k] + c * rq[k];
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn power_iteration_matches_jacobi(g in graphs(1, 12)) {
        let r = spectral_radius(&g, DEFAULT_TOL).unwrap();
        let want = jacobi_max_eigenvalue(&g);
        prop_assert!((r.rho - want).abs() < 1e-8, "{} vs {}", r.rho, want);
        let (lo, hi) = r.enclosure();
        prop_assert!(lo <= want + 1e-12 && want <= hi + 1e-12, "{} not in [{}, {}]", want, lo, hi);
    }

    #[test]
    fn degree_bounds(g in graphs(1, 20)) {
        let r = spectral_radius(&g, DEFAULT_TOL).unwrap().rho;
        let avg = 2.0 * g.size() as f64 / g.order() as f64;
        prop_assert!(r >= avg - 1e-9);
        prop_assert!(r <= g.max_degree() as f64 + 1e-9);
        prop_assert!(r >= (g.max_degree() as f64).sqrt() - 1e-9);
        prop_assert!(r <= hong_nikiforov_bound(&g).unwrap() + 1e-9);
    }

    #[test]
    fn edge_addition_is_monotone(g in graphs(2, 20), pick in any::<usize>()) {
        let missing: Vec<_> = g.complement().edges().collect();
        if missing.is_empty() {
            return Ok(());
        }
        let (u, v) = missing[pick % missing.len()];
        let mut h = g.clone();
        h.add_edge(u, v);
        let before = spectral_radius(&g, DEFAULT_TOL).unwrap();
        let after = spectral_radius(&h, DEFAULT_TOL).unwrap();
        prop_assert!(after.rho >= before.rho - 1e-10);
        prop_assert_ne!(compare_results(&before, &after), RhoOrdering::Greater);
    }

    #[test]
    fn relabelling_keeps_rho(
        (g, perm) in graphs(1, 14).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        }),
    ) {
        let x = spectral_radius(&g, DEFAULT_TOL).unwrap().rho;
        let y = spectral_radius(&g.relabel(&perm), DEFAULT_TOL).unwrap().rho;
        prop_assert!((x - y).abs() < 1e-9);
        prop_assert_eq!(compare_rho(&g, &g.relabel(&perm), 1e-10).unwrap(), RhoOrdering::Indistinguishable);
    }

    #[test]
    fn h_graph_quotient_matches_power_iteration(n in 4usize..=60, gamma in 1usize..=6) {
        prop_assume!(gamma < n);
        let g = h_graph(n, gamma).unwrap();
        let q = quotient_matrix(&g, &h_partition(n, gamma)).unwrap();
        let exact = quotient_spectral_radius(&q, 1e-12).unwrap();
        let power = spectral_radius(&g, DEFAULT_TOL).unwrap().rho;
        prop_assert!((exact - power).abs() < 1e-8, "{} vs {}", exact, power);
    }
}

#[test]
fn closed_forms() {
    let check = |g: &Graph, want: f64| {
        let r = spectral_radius(g, DEFAULT_TOL).unwrap();
        assert!((r.rho - want).abs() < 1e-10, "{} vs {want}", r.rho);
        let (lo, hi) = r.enclosure();
        assert!(lo <= want && want <= hi, "{want} not in [{lo}, {hi}]");
    };
    for m in 1..=60 {
        check(&Graph::complete(m), (m - 1) as f64);
    }
    check(&Graph::empty(5), 0.0);
    check(&cycle(9), 2.0);
    check(&star(7), 7f64.sqrt());
    check(&complete_bipartite(3, 5), 15f64.sqrt());
    check(&petersen(), 3.0);
    check(&path(5), 2.0 * (std::f64::consts::PI / 6.0).cos());
    // Disconnected: the larger component wins.
    check(&Graph::complete(4).disjoint_union(&cycle(5)), 3.0);
    check(
        &Graph::complete(3).join(&Graph::empty(3)),
        1.0 + 10f64.sqrt(),
    );
}

#[test]
fn quotient_polynomials() {
    let kpq = complete_bipartite(2, 3);
    let parts: Vec<VertexSet> = vec![(0..2).collect(), (2..5).collect()];
    let q = quotient_matrix(&kpq, &parts).unwrap();
    // [[0,3],[2,0]] has characteristic polynomial x^2 - 6.
    assert_eq!(characteristic_polynomial(&q).unwrap(), vec![1, 0, -6]);
    assert!((quotient_spectral_radius(&q, 1e-12).unwrap() - 6f64.sqrt()).abs() < 1e-12);

    // A partition that is not equitable is rejected.
    let bad: Vec<VertexSet> = vec![(0..1).collect(), (1..5).collect()];
    assert!(matches!(
        quotient_matrix(&kpq, &bad),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn strict_comparisons() {
    let h = h_graph(6, 3).unwrap();
    let k = Graph::complete(3).join(&Graph::empty(3));
    assert_eq!(compare_rho(&h, &k, 1e-8).unwrap(), RhoOrdering::Greater);
    assert_eq!(compare_rho(&k, &h, 1e-8).unwrap(), RhoOrdering::Less);
}

#[test]
fn thresholds() {
    let h = h_graph(10, 2).unwrap();
    assert_eq!(rho_at_least(&h, 8.0, DEFAULT_TOL).unwrap(), Some(true));
    assert_eq!(rho_at_least(&h, 8.1, DEFAULT_TOL).unwrap(), Some(false));
    // rho(K_9) is exactly 8 and cannot be separated from the threshold.
    assert_eq!(
        rho_at_least(&Graph::complete(9), 8.0, DEFAULT_TOL).unwrap(),
        None
    );
    assert!(complement_size_check(&Graph::complete(8), 3, DEFAULT_TOL).unwrap());
}

#[test]
fn bad_tolerances_and_caps() {
    let g = cycle(5);
    for tol in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(matches!(
            spectral_radius(&g, tol),
            Err(Error::InvalidParameter(_))
        ));
    }
    assert!(matches!(
        spectral_radius_with(&path(9), 1e-14, 3),
        Err(Error::NumericFailure(_))
    ));
}

//! Dijkstra rows and the meeting-point choice against the Floyd-Warshall and
//! exhaustive-search oracles.

mod common;

use common::{connected_graph, to_graph, two_channel_graph};
use meetpoint::graph::{ChannelId, Direction, Edge, Graph};
use meetpoint::meetpoint::{plan, total_distance};
use meetpoint::oracle::{brute_force_destination, floyd_all_pairs};
use meetpoint::sssp::{
    build_partial_matrix, build_partial_matrix_with, dijkstra_row, settle_order,
};
use meetpoint::{Extended, ObjectiveWeights, PreferenceProfile, Rational, DISTANCE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn dijkstra_rows_equal_floyd_rows_on_integer_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let (n, edges) = connected_graph(&mut rng, 50);
        let g = to_graph::<f64>(n, &edges, Direction::Undirected);
        let full = floyd_all_pairs(&g, DISTANCE).unwrap();
        for s in 0..n {
            assert_eq!(
                dijkstra_row(&g, s, DISTANCE).unwrap().distances,
                full.row(s)
            );
        }
    }
}

#[test]
fn directed_graphs_and_exact_scalars_agree_too() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let (n, edges) = connected_graph(&mut rng, 30);
        let g = to_graph::<Rational>(n, &edges, Direction::Directed);
        let full = floyd_all_pairs(&g, DISTANCE).unwrap();
        for s in 0..n {
            assert_eq!(
                dijkstra_row(&g, s, DISTANCE).unwrap().distances,
                full.row(s)
            );
        }
    }
}

#[test]
fn real_weights_agree_within_relative_tolerance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let (n, edges) = connected_graph(&mut rng, 40);
        let edges: Vec<Edge<f64>> = edges
            .iter()
            .map(|&(a, b, _)| Edge::new(a, b, vec![rng.random_range(0.01..10.0)]))
            .collect();
        let g = Graph::build(n, &edges, &[DISTANCE], Direction::Undirected).unwrap();
        let full = floyd_all_pairs(&g, DISTANCE).unwrap();
        for s in 0..n {
            let row = dijkstra_row(&g, s, DISTANCE).unwrap();
            for (a, b) in row.distances.iter().zip(full.row(s)) {
                let (a, b) = (a.finite().unwrap(), b.finite().unwrap());
                assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn floyd_is_symmetric_on_undirected_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let (n, edges) = connected_graph(&mut rng, 30);
        let full =
            floyd_all_pairs(&to_graph::<f64>(n, &edges, Direction::Undirected), DISTANCE).unwrap();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(full.get(i, j), full.get(j, i));
            }
        }
    }
}

#[test]
fn total_distance_equals_floyd_column_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (n, edges) = connected_graph(&mut rng, 50);
        let g = to_graph::<f64>(n, &edges, Direction::Undirected);
        let users: Vec<usize> = (0..rng.random_range(1..=5))
            .map(|_| rng.random_range(0..n))
            .collect();
        let full = floyd_all_pairs(&g, DISTANCE).unwrap();
        let total = total_distance(&build_partial_matrix(&g, &users, DISTANCE).unwrap()).unwrap();
        for v in 0..n {
            let expected: f64 = users
                .iter()
                .map(|&u| full.get(u, v).finite().unwrap())
                .sum();
            assert_eq!(total.values[v], Extended::Finite(expected));
        }
    }
}

fn random_weights(rng: &mut impl Rng) -> ObjectiveWeights<f64> {
    let alpha = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0][rng.random_range(0..7)];
    ObjectiveWeights::from_alpha(alpha).unwrap()
}

#[test]
fn selection_equals_brute_force_single_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (n, edges) = connected_graph(&mut rng, 50);
        let g = to_graph::<f64>(n, &edges, Direction::Undirected);
        let k = rng.random_range(2..=5);
        let users: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let profile = PreferenceProfile::uniform(k, &[DISTANCE]);
        let w = random_weights(&mut rng);
        let fast = plan(&g, &users, &profile, w, 1).unwrap().destination;
        let slow = brute_force_destination(&g, &users, &profile, w).unwrap();
        assert_eq!(fast, slow, "users {users:?} weights {w:?}");
    }
}

#[test]
fn selection_equals_brute_force_with_preferences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (n, edges) = connected_graph(&mut rng, 40);
        let g = two_channel_graph::<Rational>(&mut rng, n, &edges);
        let k = rng.random_range(2..=5);
        let users: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let scores: Vec<Vec<u8>> = (0..k)
            .map(|_| vec![rng.random_range(0..=5), rng.random_range(1..=5)])
            .collect();
        let profile = PreferenceProfile::new(vec![DISTANCE.into(), "time".into()], scores).unwrap();
        let alpha = Rational::new(rng.random_range(0..=10), 10);
        let w = ObjectiveWeights::from_alpha(alpha).unwrap();
        let fast = plan(&g, &users, &profile, w, 1).unwrap().destination;
        let slow = brute_force_destination(&g, &users, &profile, w).unwrap();
        assert_eq!(fast, slow);
    }
}

#[test]
fn disconnected_users_only_consider_shared_vertices() {
    // 0-1-2 and 3-4, users at 0 and 2
    let g = to_graph::<f64>(5, &[(0, 1, 1), (1, 2, 1), (3, 4, 1)], Direction::Undirected);
    let profile = PreferenceProfile::uniform(2, &[DISTANCE]);
    let p = plan(&g, &[0, 2], &profile, ObjectiveWeights::default(), 1).unwrap();
    assert_eq!(p.destination, 1);
    assert_eq!(p.reachability.mutual(), vec![0, 1, 2]);
    assert_eq!(
        brute_force_destination(&g, &[0, 2], &profile, ObjectiveWeights::default()).unwrap(),
        1
    );
    assert!(plan(&g, &[0, 3], &profile, ObjectiveWeights::default(), 1).is_err());
}

#[test]
fn settle_order_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let (n, edges) = connected_graph(&mut rng, 50);
        let g = to_graph::<f64>(n, &edges, Direction::Undirected);
        let order = settle_order(&g, rng.random_range(0..n), ChannelId(0)).unwrap();
        assert_eq!(order.len(), n);
        assert!(order.windows(2).all(|w| w[0].1 <= w[1].1));
    }
}

#[test]
fn rows_are_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (n, edges) = connected_graph(&mut rng, 50);
    let g = to_graph::<f64>(n, &edges, Direction::Undirected);
    for s in 0..n {
        assert_eq!(
            dijkstra_row(&g, s, DISTANCE).unwrap(),
            dijkstra_row(&g, s, DISTANCE).unwrap()
        );
    }
}

#[test]
fn doubling_users_at_most_doubles_work() {
    let map = meetpoint::maps::walled_88x27();
    let g = map.to_graph::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let users: Vec<usize> = (0..8)
        .map(|_| rng.random_range(0..g.vertex_count()))
        .collect();
    let work = |k: usize| {
        let (_, s) = build_partial_matrix_with(&g, &users[..k], ChannelId(0), 1).unwrap();
        (s.pops + s.relaxations) as f64
    };
    for k in [1, 2, 4] {
        let ratio = work(2 * k) / work(k);
        assert!((1.8..=2.2).contains(&ratio), "k={k} ratio={ratio}");
    }
}

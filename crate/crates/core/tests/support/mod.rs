//! Test support: a brute-force play-out oracle and a random graph corpus.
//!
//! The oracle decides who wins by naive value iteration over the full state
//! space, with its own BFS and its own move generation. It shares nothing
//! with the solver under test except the graph's adjacency lists.

#![allow(dead_code)]

use itertools::Itertools;
use rand::Rng;
use std::collections::{HashSet, VecDeque};
use zp_core::{Graph, PursuerKind, Rules, Side};

fn bfs_distances(graph: &Graph, source: usize) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut d = vec![u32::MAX; n];
    d[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if d[v] == u32::MAX {
                d[v] = d[u] + 1;
                queue.push_back(v);
            }
        }
    }
    d
}

type OracleState = (Vec<usize>, usize, Side);

/// True when `k` pursuers win on `graph` under `rules`: some placement wins
/// against every survivor start. Value iteration to a fixpoint; anything not
/// eventually forced into capture is a survivor win.
pub fn oracle_pursuer_wins(graph: &Graph, k: usize, rules: &Rules) -> bool {
    let n = graph.vertex_count();
    let dist: Vec<Vec<u32>> = (0..n).map(|v| bfs_distances(graph, v)).collect();
    let multisets: Vec<Vec<usize>> = (0..n).combinations_with_replacement(k).collect();

    let captured = |z: &[usize], s: usize| z.contains(&s);
    let zombie_options = |from: usize, s: usize| -> Vec<usize> {
        graph
            .neighbors(from)
            .iter()
            .copied()
            .filter(|&w| dist[w][s] + 1 == dist[from][s])
            .collect()
    };
    let pursuer_option_sets = |z: &[usize], s: usize| -> Vec<Vec<usize>> {
        z.iter()
            .map(|&p| match rules.pursuer_kind {
                PursuerKind::Zombie => zombie_options(p, s),
                PursuerKind::Cop => {
                    let mut opts = graph.neighbors(p).to_vec();
                    if !rules.pursuers_must_move {
                        opts.push(p);
                    }
                    opts
                }
            })
            .collect()
    };
    let survivor_dests = |z: &[usize], s: usize| -> Vec<usize> {
        let mut dests: Vec<usize> = graph.neighbors(s).to_vec();
        if rules.survivor_may_pass {
            dests.push(s);
        }
        if !rules.capture_on_survivor_entry {
            dests.retain(|d| !z.contains(d));
        }
        dests
    };

    let mut win: HashSet<OracleState> = HashSet::new();
    loop {
        let mut changed = false;
        for z in &multisets {
            for s in 0..n {
                if captured(z, s) {
                    continue;
                }
                for side in [Side::Pursuers, Side::Survivor] {
                    let key = (z.clone(), s, side);
                    if win.contains(&key) {
                        continue;
                    }
                    let wins_now = match side {
                        Side::Pursuers => pursuer_option_sets(z, s)
                            .into_iter()
                            .multi_cartesian_product()
                            .any(|mut dest| {
                                dest.sort_unstable();
                                captured(&dest, s) || win.contains(&(dest, s, Side::Survivor))
                            }),
                        Side::Survivor => survivor_dests(z, s).into_iter().all(|d| {
                            captured(z, d) || win.contains(&(z.clone(), d, Side::Pursuers))
                        }),
                    };
                    if wins_now {
                        win.insert(key);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let first = rules.first_side();
    multisets
        .iter()
        .any(|z| (0..n).all(|s| captured(z, s) || win.contains(&(z.clone(), s, first))))
}

/// Smallest winning pursuer count up to `k_max`, or None.
pub fn oracle_pursuit_number(graph: &Graph, rules: &Rules, k_max: usize) -> Option<usize> {
    (1..=k_max).find(|&k| oracle_pursuer_wins(graph, k, rules))
}

/// Random connected graph: a random spanning tree plus each extra edge with
/// probability `extra_edge_prob`.
pub fn random_connected_graph<R: Rng>(n: usize, extra_edge_prob: f64, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("spanning tree keeps it connected")
}

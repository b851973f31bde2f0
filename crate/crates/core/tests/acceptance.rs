//! Acceptance gate: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{oracle_pursuit_number, random_connected_graph};
use zp_core::{
    cartesian_product, extract_strategies, families, is_dismantlable, pursuit_number, simulate,
    solve_fixed, verify_pursuer_policy, verify_survivor_policy, Budget, DistanceMatrix, Factor,
    GameState, Graph, GreedyPursuer, Outcome, PetalSurvivorPolicy, PolicyError,
    ProductZombiePolicy, PursuerVerdict, PursuitOutcome, Rules, SurvivorPolicy, SurvivorVerdict,
    TracePhase, TraceStep, TurnOrder, VertexId, VertexLabel,
};

fn solve_number(graph: &Graph, rules: &Rules, k_max: usize) -> usize {
    let dist = DistanceMatrix::compute(graph);
    match pursuit_number(graph, &dist, rules, k_max, &Budget::default()).unwrap() {
        PursuitOutcome::Found { number, .. } => number,
        PursuitOutcome::Unknown { k_max } => panic!("no winning count up to {k_max}"),
    }
}

#[test]
fn acceptance_1_hypercube_zombie_numbers() {
    assert_eq!(
        solve_number(&families::hypercube(3).unwrap(), &Rules::zombie(), 4),
        2
    );
    assert_eq!(
        solve_number(&families::hypercube(4).unwrap(), &Rules::zombie(), 4),
        3
    );
    println!("acceptance 1 (hypercube zombie numbers: z(Q_3) = 2, z(Q_4) = 3): PASS");
}

#[test]
fn acceptance_2_one_zombie_loses_on_petal_2() {
    let (graph, _) = families::petal(2).unwrap();
    let dist = DistanceMatrix::compute(&graph);
    let result = solve_fixed(&graph, &dist, 1, &Rules::zombie(), &Budget::default()).unwrap();
    assert!(
        !result.pursuer_wins_game(),
        "every placement of one zombie must lose against the best start"
    );
    println!("acceptance 2 (solver: one zombie loses on petal 2, so its zombie number is at least 2): PASS");
}

fn assert_walk_survives(petal_k: usize, zombies: usize, offset: usize, order: TurnOrder) -> u64 {
    let (graph, descriptor) = families::petal(petal_k).unwrap();
    let dist = DistanceMatrix::compute(&graph);
    let rules = Rules::zombie().with_turn_order(order);
    let policy = PetalSurvivorPolicy::new(&descriptor, &dist)
        .with_start_offset(offset)
        .with_turn_order(order);
    let verdict =
        verify_survivor_policy(&graph, &dist, &rules, &policy, zombies, &Budget::default())
            .unwrap();
    match verdict {
        SurvivorVerdict::Survives { placements, .. } => placements,
        SurvivorVerdict::Caught { counterexample } => {
            panic!(
                "petal {petal_k}, offset {offset}, {order:?}: caught\n{}",
                counterexample.to_text()
            )
        }
    }
}

#[test]
fn acceptance_3_petal_walk_verified_exhaustively() {
    for order in [TurnOrder::PursuersFirst, TurnOrder::SurvivorFirst] {
        assert_eq!(assert_walk_survives(2, 1, 2, order), 33);
        assert_eq!(assert_walk_survives(3, 2, 2, order), 8911);
    }

    // The tighter "second vertex" reading (clockwise distance 1) holds only
    // when the survivor opens each round; a hub zombie refutes it otherwise.
    assert_eq!(assert_walk_survives(2, 1, 1, TurnOrder::SurvivorFirst), 33);
    assert_eq!(
        assert_walk_survives(3, 2, 1, TurnOrder::SurvivorFirst),
        8911
    );
    let (graph, descriptor) = families::petal(2).unwrap();
    let dist = DistanceMatrix::compute(&graph);
    let policy = PetalSurvivorPolicy::new(&descriptor, &dist).with_start_offset(1);
    let verdict = verify_survivor_policy(
        &graph,
        &dist,
        &Rules::zombie(),
        &policy,
        1,
        &Budget::default(),
    )
    .unwrap();
    let SurvivorVerdict::Caught { counterexample } = verdict else {
        panic!("offset 1 with pursuers moving first must lose to a hub zombie");
    };
    assert_eq!(counterexample.placement(), [descriptor.hub]);
    assert_eq!(counterexample.outcome, Outcome::Captured { round: 1 });
    counterexample.replay(&graph, &dist).unwrap();

    println!(
        "acceptance 3 (petal walk survives all 33 and 8911 placements under both turn orders; \
         offset-1 start survives only when the survivor opens): PASS"
    );
}

struct SolvedFactor {
    graph: Graph,
    zombies: usize,
}

#[test]
fn acceptance_4_product_policy_captures_everywhere() {
    let cases = [
        (
            SolvedFactor {
                graph: families::cycle(3).unwrap(),
                zombies: 1,
            },
            SolvedFactor {
                graph: families::cycle(3).unwrap(),
                zombies: 1,
            },
        ),
        (
            SolvedFactor {
                graph: families::cycle(5).unwrap(),
                zombies: 2,
            },
            SolvedFactor {
                graph: families::cycle(4).unwrap(),
                zombies: 2,
            },
        ),
    ];
    for (left, right) in &cases {
        let ld = DistanceMatrix::compute(&left.graph);
        let rd = DistanceMatrix::compute(&right.graph);
        let lr = solve_fixed(
            &left.graph,
            &ld,
            left.zombies,
            &Rules::zombie(),
            &Budget::default(),
        )
        .unwrap();
        let rr = solve_fixed(
            &right.graph,
            &rd,
            right.zombies,
            &Rules::zombie(),
            &Budget::default(),
        )
        .unwrap();
        let (ls, _) = extract_strategies(&left.graph, &ld, &lr);
        let (rs, _) = extract_strategies(&right.graph, &rd, &rr);
        let product = cartesian_product(&left.graph, &right.graph);
        let dist = DistanceMatrix::compute(&product);
        let policy = ProductZombiePolicy::new(
            &product,
            Factor {
                graph: &left.graph,
                dist: &ld,
                strategy: &ls,
                placement: lr.winning_placement().unwrap().to_vec(),
            },
            Factor {
                graph: &right.graph,
                dist: &rd,
                strategy: &rs,
                placement: rr.winning_placement().unwrap().to_vec(),
            },
        )
        .unwrap();
        let verdict = verify_pursuer_policy(
            &product,
            &dist,
            &Rules::zombie(),
            &policy,
            &Budget::default(),
        )
        .unwrap();
        let PursuerVerdict::Captures {
            survivor_starts, ..
        } = verdict
        else {
            panic!("composed policy must capture from every start: {verdict:?}");
        };
        assert_eq!(survivor_starts, product.vertex_count());
    }

    // The solver agrees that two zombies win on C_3 x C_3 outright.
    let c3 = families::cycle(3).unwrap();
    let product = cartesian_product(&c3, &c3);
    let dist = DistanceMatrix::compute(&product);
    let result = solve_fixed(&product, &dist, 2, &Rules::zombie(), &Budget::default()).unwrap();
    assert!(result.pursuer_wins_game());

    println!(
        "acceptance 4 (factor-composed zombies capture on C_3xC_3 with 2 and C_5xC_4 with 4; \
         solver confirms z(C_3xC_3) <= 2): PASS"
    );
}

#[test]
fn acceptance_5_zombie_number_dominates_cop_number() {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for n in 2..=6 {
        corpus.push((format!("P_{n}"), families::path(n).unwrap()));
    }
    for n in 3..=9 {
        corpus.push((format!("C_{n}"), families::cycle(n).unwrap()));
    }
    corpus.push(("Q_3".into(), families::hypercube(3).unwrap()));
    corpus.push(("petal 2".into(), families::petal(2).unwrap().0));
    corpus.push((
        "star".into(),
        Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap(),
    ));
    corpus.push((
        "caterpillar".into(),
        Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (1, 5), (2, 6)]).unwrap(),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..6 {
        let n = 5 + (i % 4);
        corpus.push((
            format!("random {i}"),
            random_connected_graph(n, 0.25, &mut rng),
        ));
    }
    assert!(corpus.len() >= 20);

    for (name, graph) in &corpus {
        let n = graph.vertex_count();
        let z = solve_number(graph, &Rules::zombie(), n);
        let c = solve_number(graph, &Rules::cop(), n);
        assert!(z >= c, "{name}: z = {z} < c = {c}");
    }
    println!(
        "acceptance 5 (zombie number >= cop number on {} graphs): PASS",
        corpus.len()
    );
}

#[test]
fn acceptance_6_dismantlable_iff_one_cop_wins() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let probs = [0.15, 0.3, 0.45];
    for i in 0..200 {
        let n = 4 + (i % 5);
        let graph = random_connected_graph(n, probs[i % probs.len()], &mut rng);
        let dist = DistanceMatrix::compute(&graph);
        let one_cop =
            match pursuit_number(&graph, &dist, &Rules::cop(), 1, &Budget::default()).unwrap() {
                PursuitOutcome::Found { number, .. } => number == 1,
                PursuitOutcome::Unknown { .. } => false,
            };
        assert_eq!(
            is_dismantlable(&graph),
            one_cop,
            "graph {i}: {}",
            graph.to_edge_list()
        );
    }
    println!("acceptance 6 (dismantlable iff one cop wins, 200 random graphs): PASS");
}

/// Survivor that drifts pseudo-randomly, for shaking out traces.
struct Drifter<'a> {
    graph: &'a Graph,
    dist: &'a DistanceMatrix,
    seed: u64,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl SurvivorPolicy for Drifter<'_> {
    type Memory = u32;

    fn choose_start(&self, placement: &[VertexId]) -> Result<(VertexId, u32), PolicyError> {
        let spread = |v: VertexId| {
            placement
                .iter()
                .map(|&p| self.dist.get(p, v))
                .min()
                .unwrap()
        };
        let start = (0..self.graph.vertex_count())
            .max_by_key(|&v| (spread(v), v))
            .unwrap();
        Ok((start, 0))
    }

    fn step(&self, state: &GameState, memory: &u32) -> Result<(VertexId, u32), PolicyError> {
        let mut options = self.graph.neighbors(state.survivor()).to_vec();
        options.push(state.survivor());
        let roll = splitmix(self.seed ^ (u64::from(*memory) << 32) ^ state.survivor() as u64);
        Ok((options[(roll % options.len() as u64) as usize], memory + 1))
    }
}

/// Zombie moves within a pursuer trace row form a multiset; the row is sound
/// when some pairing of sources to destinations steps every zombie exactly
/// one vertex closer to the survivor it saw. k <= 2 here, so trying both
/// pairings is exhaustive.
fn matched_unit_steps(
    dist: &DistanceMatrix,
    before: &[VertexId],
    after: &[VertexId],
    survivor: VertexId,
) -> bool {
    fn assign(
        dist: &DistanceMatrix,
        before: &[VertexId],
        after: &[VertexId],
        used: &mut [bool],
        s: VertexId,
        i: usize,
    ) -> bool {
        if i == before.len() {
            return true;
        }
        for j in 0..after.len() {
            if used[j] || dist.get(after[j], s) + 1 != dist.get(before[i], s) {
                continue;
            }
            used[j] = true;
            if assign(dist, before, after, used, s, i + 1) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    let mut used = vec![false; after.len()];
    assign(dist, before, after, &mut used, survivor, 0)
}

#[test]
fn acceptance_7_metric_and_legality_properties() {
    let mut checks: u64 = 0;

    // Product metric: distance in G x H is the sum of factor distances.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let g = random_connected_graph(rng.random_range(3..=6), 0.3, &mut rng);
        let h = random_connected_graph(rng.random_range(3..=6), 0.3, &mut rng);
        let gd = DistanceMatrix::compute(&g);
        let hd = DistanceMatrix::compute(&h);
        let product = cartesian_product(&g, &h);
        let pd = DistanceMatrix::compute(&product);
        let labels = product.labels().unwrap();
        let coord = |v: VertexId| match labels[v] {
            VertexLabel::Product { left, right } => (left, right),
            _ => unreachable!("products label every vertex with coordinates"),
        };
        for v in 0..product.vertex_count() {
            for w in 0..product.vertex_count() {
                let (a, x) = coord(v);
                let (b, y) = coord(w);
                assert_eq!(pd.get(v, w), gd.get(a, b) + hd.get(x, y));
                checks += 1;
            }
        }
    }

    // Zombie legality and round-boundary monotonicity, read off simulated
    // traces under the default pursuers-first order.
    let mut traces = Vec::new();
    let mut keep = |graph: Graph, k: usize, seed: u64, rounds: usize| {
        let dist = DistanceMatrix::compute(&graph);
        let greedy = GreedyPursuer::new(&graph, &dist, k);
        let drifter = Drifter {
            graph: &graph,
            dist: &dist,
            seed,
        };
        let trace = simulate(&graph, &dist, &Rules::zombie(), &greedy, &drifter, rounds).unwrap();
        traces.push((graph, trace));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..40 {
        let n = 5 + (i % 4);
        let graph = random_connected_graph(n, 0.3, &mut rng);
        keep(graph, 1 + (i % 2), i as u64, 25);
    }
    for petal_k in [2, 3] {
        let (graph, descriptor) = families::petal(petal_k).unwrap();
        let dist = DistanceMatrix::compute(&graph);
        let greedy = GreedyPursuer::new(&graph, &dist, 1);
        let walker = PetalSurvivorPolicy::new(&descriptor, &dist);
        let trace = simulate(&graph, &dist, &Rules::zombie(), &greedy, &walker, 300).unwrap();
        assert!(matches!(trace.outcome, Outcome::SurvivesForever { .. }));
        traces.push((graph, trace));
    }

    for (graph, trace) in &traces {
        let dist = DistanceMatrix::compute(graph);
        let steps = &trace.steps;
        for i in 1..steps.len() {
            if steps[i].phase != TracePhase::Pursuers {
                continue;
            }
            // Pursuers decide before the survivor's move of the same round.
            assert_eq!(steps[i - 1].survivor, steps[i].survivor);
            assert!(
                matched_unit_steps(
                    &dist,
                    &steps[i - 1].pursuers,
                    &steps[i].pursuers,
                    steps[i].survivor,
                ),
                "round {}: no unit-step matching",
                steps[i].round
            );
            checks += steps[i].pursuers.len() as u64;
        }

        // Sorted zombie-survivor distances never increase between round
        // starts: each zombie closes one step and the survivor re-opens at
        // most one.
        let round_starts: Vec<&TraceStep> = steps
            .iter()
            .filter(|s| s.phase != TracePhase::Pursuers)
            .collect();
        let sorted_dists = |s: &TraceStep| {
            let mut d: Vec<u32> = s
                .pursuers
                .iter()
                .map(|&p| dist.get(p, s.survivor))
                .collect();
            d.sort_unstable();
            d
        };
        for pair in round_starts.windows(2) {
            let before = sorted_dists(pair[0]);
            let after = sorted_dists(pair[1]);
            for (b, a) in before.iter().zip(&after) {
                assert!(
                    a <= b,
                    "distance grew between rounds: {before:?} -> {after:?}"
                );
                checks += 1;
            }
        }
    }

    assert!(checks >= 10_000, "only {checks} property checks ran");
    println!("acceptance 7 (metric and legality invariants, {checks} checks): PASS");
}

#[test]
fn petal_construction_matches_its_closed_form_size() {
    // k copies each of k odd cycles glued at one hub: cycle i contributes
    // 2^(i+2) - 4 interior vertices, summing to 1 + k * (2^(k+3) - 8 - 4k).
    for k in 1..=6 {
        let (graph, descriptor) = families::petal(k).unwrap();
        let expected = 1 + k * ((1usize << (k + 3)) - 8 - 4 * k);
        assert_eq!(graph.vertex_count(), expected, "petal {k}");
        assert_eq!(descriptor.cycles.len(), k * k);
    }
    println!("acceptance addendum (petal vertex counts match the closed form for k <= 6): PASS");
}

#[test]
fn acceptance_8_small_cycles_match_the_oracle() {
    for n in 3..=9 {
        let graph = families::cycle(n).unwrap();
        let expected = if n == 3 { 1 } else { 2 };
        assert_eq!(
            solve_number(&graph, &Rules::zombie(), 3),
            expected,
            "solver on C_{n}"
        );
        assert_eq!(
            oracle_pursuit_number(&graph, &Rules::zombie(), 3),
            Some(expected),
            "oracle on C_{n}"
        );
    }
    println!(
        "acceptance 8 (z(C_3) = 1 and z(C_n) = 2 for 4 <= n <= 9, solver and oracle agree): PASS"
    );
}

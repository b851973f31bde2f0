//! Exhaustive verification of policies against every opposing line of play.
//!
//! A pursuer policy is checked against every survivor start and every legal
//! survivor move; a survivor policy against every pursuer placement and every
//! joint pursuer move. Both explorations run over (state, policy memory)
//! nodes, so a revisited node under the deterministic policy means the play
//! repeats forever. Failures come back as replayable counterexample traces.

use crate::dist::DistanceMatrix;
use crate::error::VerifyError;
use crate::graph::{Graph, VertexId};
use crate::policy::{PursuerPolicy, SurvivorPolicy};
use crate::rules::{
    apply, pursuer_moves, survivor_moves, GameState, JointMove, Rules, Side, TurnOrder,
};
use crate::simulate::{Outcome, SimulationTrace, TracePhase, TraceStep};
use crate::solver::{Budget, MultisetIndex};
use rayon::prelude::*;
use std::collections::HashMap;
use std::hash::Hash;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PursuerVerdict {
    /// Every survivor start and every survivor line ends in capture.
    Captures {
        survivor_starts: usize,
        explored: usize,
        /// Rounds the most stubborn survivor lasts.
        worst_case_rounds: u32,
    },
    /// Some survivor line never gets caught.
    Escapes { counterexample: SimulationTrace },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurvivorVerdict {
    /// The survivor outlives every placement and every pursuer line.
    Survives { placements: u64, explored: u64 },
    /// Some placement and pursuer line captures the survivor.
    Caught { counterexample: SimulationTrace },
}

struct NodeInfo {
    color: u8, // 1 on the stack, 2 finished
    remaining: u32,
}

struct Frame {
    id: usize,
    state: GameState,
    moves: Vec<VertexId>,
    next: usize,
    /// Index into `moves` of the step that spawned the child being explored.
    taken: usize,
    pending: Option<usize>,
    best: u32,
}

enum Step<M> {
    Pop,
    Recurse((GameState, M)),
    Escape(usize),
    Next,
}

/// Checks a deterministic pursuer policy against every survivor start and
/// every survivor reply. Returns the worst-case number of rounds to capture,
/// or a trace on which the survivor walks forever.
pub fn verify_pursuer_policy<P: PursuerPolicy>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    policy: &P,
    budget: &Budget,
) -> Result<PursuerVerdict, VerifyError> {
    let (placement, start_memory) = policy.place();
    // Rounds added when the capture lands on the pursuer half that follows a
    // survivor move: that half belongs to the next round when pursuers open
    // each round, and to the same round otherwise.
    let response_delta: u32 = match rules.turn_order {
        TurnOrder::PursuersFirst => 1,
        TurnOrder::SurvivorFirst => 0,
    };

    let mut ids: HashMap<(GameState, P::Memory), usize> = HashMap::new();
    let mut infos: Vec<NodeInfo> = Vec::new();
    let mut memories: Vec<P::Memory> = Vec::new();
    let mut worst = 0u32;

    for start in 0..graph.vertex_count() {
        let mut state = GameState::new(placement.clone(), start, rules.first_side());
        if state.is_capture() {
            continue; // capture at placement, round 0
        }
        let mut memory = start_memory.clone();
        if rules.turn_order == TurnOrder::PursuersFirst {
            let (dests, next) = policy.step(&state, &memory)?;
            state = apply(graph, dist, rules, &state, &JointMove::Pursuers(dests))?;
            memory = next;
            if state.is_capture() {
                worst = worst.max(1);
                continue;
            }
        }

        let root = (state, memory);
        if let Some(&id) = ids.get(&root) {
            debug_assert_eq!(infos[id].color, 2);
            worst = worst.max(1 + infos[id].remaining);
            continue;
        }
        let root_id = infos.len();
        let first = open_frame(graph, rules, root, &mut ids, &mut infos, &mut memories);
        let mut stack = vec![first];
        while !stack.is_empty() {
            if ids.len() as u64 > budget.max_states {
                return Err(VerifyError::BudgetExceeded {
                    budget: budget.max_states,
                });
            }
            let step = {
                let frame = stack.last_mut().unwrap();
                if let Some(child) = frame.pending.take() {
                    frame.best = frame.best.max(1 + infos[child].remaining);
                }
                if frame.next >= frame.moves.len() {
                    infos[frame.id].color = 2;
                    infos[frame.id].remaining = frame.best;
                    Step::Pop
                } else {
                    let dest = frame.moves[frame.next];
                    frame.taken = frame.next;
                    frame.next += 1;
                    let after_survivor =
                        GameState::new(frame.state.pursuers().to_vec(), dest, Side::Pursuers);
                    if after_survivor.is_capture() {
                        // The survivor walked into a pursuer: capture now.
                        Step::Next
                    } else {
                        let (dests, next_memory) =
                            policy.step(&after_survivor, &memories[frame.id])?;
                        let responded = apply(
                            graph,
                            dist,
                            rules,
                            &after_survivor,
                            &JointMove::Pursuers(dests),
                        )?;
                        if responded.is_capture() {
                            frame.best = frame.best.max(response_delta);
                            Step::Next
                        } else {
                            let child = (responded, next_memory);
                            match ids.get(&child) {
                                None => {
                                    frame.pending = Some(infos.len());
                                    Step::Recurse(child)
                                }
                                Some(&seen) if infos[seen].color == 1 => Step::Escape(seen),
                                Some(&seen) => {
                                    frame.pending = Some(seen);
                                    Step::Next
                                }
                            }
                        }
                    }
                }
            };
            match step {
                Step::Pop => {
                    stack.pop();
                }
                Step::Recurse(node) => {
                    let frame = open_frame(graph, rules, node, &mut ids, &mut infos, &mut memories);
                    stack.push(frame);
                }
                Step::Escape(seen) => {
                    let counterexample =
                        rebuild_escape(graph, dist, rules, policy, start, &stack, seen);
                    return Ok(PursuerVerdict::Escapes { counterexample });
                }
                Step::Next => {}
            }
        }
        worst = worst.max(1 + infos[root_id].remaining);
    }

    Ok(PursuerVerdict::Captures {
        survivor_starts: graph.vertex_count(),
        explored: ids.len(),
        worst_case_rounds: worst,
    })
}

fn open_frame<M: Clone + Eq + Hash>(
    graph: &Graph,
    rules: &Rules,
    node: (GameState, M),
    ids: &mut HashMap<(GameState, M), usize>,
    infos: &mut Vec<NodeInfo>,
    memories: &mut Vec<M>,
) -> Frame {
    debug_assert_eq!(node.0.to_move(), Side::Survivor);
    let id = infos.len();
    ids.insert(node.clone(), id);
    infos.push(NodeInfo {
        color: 1,
        remaining: 0,
    });
    memories.push(node.1);
    let moves = survivor_moves(graph, rules, &node.0)
        .into_iter()
        .map(|m| m.dest)
        .collect();
    Frame {
        id,
        state: node.0,
        moves,
        next: 0,
        taken: 0,
        pending: None,
        best: 0,
    }
}

/// The DFS stack just closed a cycle: the play from the repeated node loops
/// forever. Replay the survivor moves along the stack into a trace.
fn rebuild_escape<P: PursuerPolicy>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    policy: &P,
    start: VertexId,
    stack: &[Frame],
    cycle_id: usize,
) -> SimulationTrace {
    let cycle_at = stack
        .iter()
        .position(|f| f.id == cycle_id)
        .expect("node is on the stack");
    let mut script: Vec<VertexId> = stack.iter().map(|f| f.moves[f.taken]).collect();
    let (first_round, repeat_round) = match rules.turn_order {
        // Nodes sit after the pursuer half of their round; the repeated
        // round-start position is one round past the repeated node, and one
        // more scripted survivor move materializes it in the trace.
        TurnOrder::PursuersFirst => {
            script.push(stack[cycle_at].moves[stack[cycle_at].taken]);
            (cycle_at + 2, stack.len() + 2)
        }
        // Nodes are round starts themselves.
        TurnOrder::SurvivorFirst => (cycle_at + 1, stack.len() + 1),
    };
    let steps = rebuild_with_survivor_script(graph, dist, rules, policy, start, &script);
    SimulationTrace {
        rules: *rules,
        steps,
        outcome: Outcome::SurvivesForever {
            first_round,
            repeat_round,
        },
    }
}

fn rebuild_with_survivor_script<P: PursuerPolicy>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    policy: &P,
    start: VertexId,
    script: &[VertexId],
) -> Vec<TraceStep> {
    let expect = "replaying explored play";
    let (placement, mut memory) = policy.place();
    let mut state = GameState::new(placement, start, rules.first_side());
    let mut steps = vec![TraceStep {
        round: 0,
        phase: TracePhase::Start,
        pursuers: state.pursuers().to_vec(),
        survivor: state.survivor(),
    }];
    let order = [rules.first_side(), rules.first_side().other()];
    for (i, &dest) in script.iter().enumerate() {
        for side in order {
            let joint = match side {
                Side::Pursuers => {
                    let (dests, next) = policy.step(&state, &memory).expect(expect);
                    memory = next;
                    JointMove::Pursuers(dests)
                }
                Side::Survivor => JointMove::Survivor(dest),
            };
            state = apply(graph, dist, rules, &state, &joint).expect(expect);
            steps.push(TraceStep {
                round: i + 1,
                phase: TracePhase::of(side),
                pursuers: state.pursuers().to_vec(),
                survivor: state.survivor(),
            });
        }
    }
    steps
}

enum PlacementOutcome {
    Survived(u64),
    Caught(SimulationTrace),
}

/// Checks a deterministic survivor policy against every pursuer placement of
/// `k` pursuers and every joint pursuer move. Placements run in parallel and
/// the budget caps each placement's exploration; on failure the counterexample
/// of the smallest placement (in multiset order) is reported.
pub fn verify_survivor_policy<S>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    policy: &S,
    k: usize,
    budget: &Budget,
) -> Result<SurvivorVerdict, VerifyError>
where
    S: SurvivorPolicy + Sync,
    S::Memory: Send + Sync,
{
    let index = MultisetIndex::new(graph.vertex_count(), k);
    let reports: Vec<Result<PlacementOutcome, VerifyError>> = (0..index.count())
        .into_par_iter()
        .map(|rank| {
            let mut placement = Vec::with_capacity(k);
            index.unrank(rank, &mut placement);
            check_placement(graph, dist, rules, policy, &placement, budget)
        })
        .collect();

    let mut explored = 0u64;
    for report in reports {
        match report? {
            PlacementOutcome::Survived(nodes) => explored += nodes,
            PlacementOutcome::Caught(counterexample) => {
                return Ok(SurvivorVerdict::Caught { counterexample })
            }
        }
    }
    Ok(SurvivorVerdict::Survives {
        placements: index.count(),
        explored,
    })
}

fn check_placement<S: SurvivorPolicy>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    policy: &S,
    placement: &[VertexId],
    budget: &Budget,
) -> Result<PlacementOutcome, VerifyError> {
    let (start, start_memory) = policy.choose_start(placement)?;
    let root = GameState::new(placement.to_vec(), start, rules.first_side());
    if root.is_capture() {
        // The policy placed the survivor onto a pursuer.
        let steps = vec![TraceStep {
            round: 0,
            phase: TracePhase::Start,
            pursuers: root.pursuers().to_vec(),
            survivor: root.survivor(),
        }];
        return Ok(PlacementOutcome::Caught(SimulationTrace {
            rules: *rules,
            steps,
            outcome: Outcome::Captured { round: 0 },
        }));
    }

    // Nodes are round starts. Edges remember the round's joint pursuer move
    // for counterexample reconstruction.
    let mut ids: HashMap<(GameState, S::Memory), usize> = HashMap::new();
    let mut parents: Vec<Option<(usize, Vec<VertexId>)>> = Vec::new();
    let mut nodes: Vec<(GameState, S::Memory)> = Vec::new();
    ids.insert((root.clone(), start_memory.clone()), 0);
    parents.push(None);
    nodes.push((root, start_memory));
    let mut head = 0;

    while head < nodes.len() {
        if nodes.len() as u64 > budget.max_states {
            return Err(VerifyError::BudgetExceeded {
                budget: budget.max_states,
            });
        }
        let (state, memory) = nodes[head].clone();
        match rules.turn_order {
            TurnOrder::PursuersFirst => {
                for joint in pursuer_moves(graph, dist, rules, &state) {
                    let mid = apply(
                        graph,
                        dist,
                        rules,
                        &state,
                        &JointMove::Pursuers(joint.clone()),
                    )?;
                    if mid.is_capture() {
                        let script = script_to(&parents, head, Some(joint));
                        return Ok(PlacementOutcome::Caught(rebuild_caught(
                            graph, dist, rules, policy, placement, &script,
                        )));
                    }
                    let (dest, next_memory) = policy.step(&mid, &memory)?;
                    let next = apply(graph, dist, rules, &mid, &JointMove::Survivor(dest))?;
                    if next.is_capture() {
                        let script = script_to(&parents, head, Some(joint));
                        return Ok(PlacementOutcome::Caught(rebuild_caught(
                            graph, dist, rules, policy, placement, &script,
                        )));
                    }
                    intern(
                        (next, next_memory),
                        (head, joint),
                        &mut ids,
                        &mut parents,
                        &mut nodes,
                    );
                }
            }
            TurnOrder::SurvivorFirst => {
                let (dest, next_memory) = policy.step(&state, &memory)?;
                let mid = apply(graph, dist, rules, &state, &JointMove::Survivor(dest))?;
                if mid.is_capture() {
                    let script = script_to(&parents, head, None);
                    return Ok(PlacementOutcome::Caught(rebuild_caught(
                        graph, dist, rules, policy, placement, &script,
                    )));
                }
                for joint in pursuer_moves(graph, dist, rules, &mid) {
                    let next = apply(
                        graph,
                        dist,
                        rules,
                        &mid,
                        &JointMove::Pursuers(joint.clone()),
                    )?;
                    if next.is_capture() {
                        let script = script_to(&parents, head, Some(joint));
                        return Ok(PlacementOutcome::Caught(rebuild_caught(
                            graph, dist, rules, policy, placement, &script,
                        )));
                    }
                    intern(
                        (next, next_memory.clone()),
                        (head, joint),
                        &mut ids,
                        &mut parents,
                        &mut nodes,
                    );
                }
            }
        }
        head += 1;
    }
    Ok(PlacementOutcome::Survived(nodes.len() as u64))
}

fn intern<M: Clone + Eq + Hash>(
    node: (GameState, M),
    parent: (usize, Vec<VertexId>),
    ids: &mut HashMap<(GameState, M), usize>,
    parents: &mut Vec<Option<(usize, Vec<VertexId>)>>,
    nodes: &mut Vec<(GameState, M)>,
) {
    if !ids.contains_key(&node) {
        ids.insert(node.clone(), nodes.len());
        parents.push(Some(parent));
        nodes.push(node);
    }
}

/// Joint pursuer moves along the path from the root to `node`, plus the
/// final round's joint when the capture involved a pursuer half.
fn script_to(
    parents: &[Option<(usize, Vec<VertexId>)>],
    node: usize,
    last: Option<Vec<VertexId>>,
) -> Vec<Vec<VertexId>> {
    let mut joints = Vec::new();
    let mut at = node;
    while let Some((parent, joint)) = &parents[at] {
        joints.push(joint.clone());
        at = *parent;
    }
    joints.reverse();
    if let Some(joint) = last {
        joints.push(joint);
    }
    joints
}

fn rebuild_caught<S: SurvivorPolicy>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    policy: &S,
    placement: &[VertexId],
    joints: &[Vec<VertexId>],
) -> SimulationTrace {
    let expect = "replaying explored play";
    let (start, mut memory) = policy.choose_start(placement).expect(expect);
    let mut state = GameState::new(placement.to_vec(), start, rules.first_side());
    let mut steps = vec![TraceStep {
        round: 0,
        phase: TracePhase::Start,
        pursuers: state.pursuers().to_vec(),
        survivor: state.survivor(),
    }];
    let order = [rules.first_side(), rules.first_side().other()];
    let mut round = 0;
    'rounds: for r in 1..=joints.len() + 1 {
        round = r;
        for side in order {
            let joint = match side {
                Side::Pursuers => JointMove::Pursuers(joints[r - 1].clone()),
                Side::Survivor => {
                    let (dest, next) = policy.step(&state, &memory).expect(expect);
                    memory = next;
                    JointMove::Survivor(dest)
                }
            };
            state = apply(graph, dist, rules, &state, &joint).expect(expect);
            steps.push(TraceStep {
                round: r,
                phase: TracePhase::of(side),
                pursuers: state.pursuers().to_vec(),
                survivor: state.survivor(),
            });
            if state.is_capture() {
                break 'rounds;
            }
        }
    }
    debug_assert!(state.is_capture());
    SimulationTrace {
        rules: *rules,
        steps,
        outcome: Outcome::Captured { round },
    }
}

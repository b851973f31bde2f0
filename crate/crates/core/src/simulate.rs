//! Plays two policies against each other and records a replayable trace.
//!
//! Play is deterministic, so if a (state, pursuer memory, survivor memory)
//! triple recurs at a round boundary the game loops forever; the simulator
//! detects this and reports the loop instead of spinning.

use crate::dist::{geodesic_successors, DistanceMatrix};
use crate::error::{SimulateError, TraceError};
use crate::graph::{Graph, VertexId};
use crate::policy::{PursuerPolicy, SurvivorPolicy};
use crate::rules::{apply, GameState, JointMove, PursuerKind, Rules, Side, TurnOrder};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TracePhase {
    /// Both sides placed, nobody has moved.
    Start,
    Pursuers,
    Survivor,
}

impl TracePhase {
    fn as_str(self) -> &'static str {
        match self {
            TracePhase::Start => "start",
            TracePhase::Pursuers => "pursuers",
            TracePhase::Survivor => "survivor",
        }
    }

    pub(crate) fn of(side: Side) -> TracePhase {
        match side {
            Side::Pursuers => TracePhase::Pursuers,
            Side::Survivor => TracePhase::Survivor,
        }
    }
}

/// Positions after the half-move of `phase` in round `round`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub round: usize,
    pub phase: TracePhase,
    pub pursuers: Vec<VertexId>,
    pub survivor: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Captured {
        round: usize,
    },
    /// The position and both memories before round `repeat_round` match
    /// those before round `first_round`: the survivor walks forever.
    SurvivesForever {
        first_round: usize,
        repeat_round: usize,
    },
    Cutoff {
        rounds: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationTrace {
    pub rules: Rules,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

pub fn simulate<P: PursuerPolicy, S: SurvivorPolicy>(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    pursuer: &P,
    survivor: &S,
    max_rounds: usize,
) -> Result<SimulationTrace, SimulateError> {
    let (placement, mut pmem) = pursuer.place();
    let (start, mut smem) = survivor
        .choose_start(&placement)
        .map_err(|source| SimulateError::Policy { round: 0, source })?;
    let mut state = GameState::new(placement, start, rules.first_side());
    let mut steps = vec![TraceStep {
        round: 0,
        phase: TracePhase::Start,
        pursuers: state.pursuers().to_vec(),
        survivor: state.survivor(),
    }];
    let mut outcome = if state.is_capture() {
        Some(Outcome::Captured { round: 0 })
    } else {
        None
    };

    let order = [rules.first_side(), rules.first_side().other()];
    let mut seen: HashMap<(GameState, P::Memory, S::Memory), usize> = HashMap::new();
    if outcome.is_none() {
        'rounds: for round in 1..=max_rounds {
            let key = (state.clone(), pmem.clone(), smem.clone());
            if let Some(&first_round) = seen.get(&key) {
                outcome = Some(Outcome::SurvivesForever {
                    first_round,
                    repeat_round: round,
                });
                break 'rounds;
            }
            seen.insert(key, round);
            for side in order {
                let joint = match side {
                    Side::Pursuers => {
                        let (dests, next) = pursuer
                            .step(&state, &pmem)
                            .map_err(|source| SimulateError::Policy { round, source })?;
                        pmem = next;
                        JointMove::Pursuers(dests)
                    }
                    Side::Survivor => {
                        let (dest, next) = survivor
                            .step(&state, &smem)
                            .map_err(|source| SimulateError::Policy { round, source })?;
                        smem = next;
                        JointMove::Survivor(dest)
                    }
                };
                state = apply(graph, dist, rules, &state, &joint)
                    .map_err(|source| SimulateError::IllegalMove { round, source })?;
                steps.push(TraceStep {
                    round,
                    phase: TracePhase::of(side),
                    pursuers: state.pursuers().to_vec(),
                    survivor: state.survivor(),
                });
                if state.is_capture() {
                    outcome = Some(Outcome::Captured { round });
                    break 'rounds;
                }
            }
        }
    }
    Ok(SimulationTrace {
        rules: *rules,
        steps,
        outcome: outcome.unwrap_or(Outcome::Cutoff { rounds: max_rounds }),
    })
}

fn flag(on: bool) -> &'static str {
    if on {
        "on"
    } else {
        "off"
    }
}

fn multiset_text(vertices: &[VertexId]) -> String {
    if vertices.is_empty() {
        "-".to_string()
    } else {
        vertices
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl SimulationTrace {
    pub fn placement(&self) -> &[VertexId] {
        &self.steps[0].pursuers
    }

    pub fn survivor_start(&self) -> VertexId {
        self.steps[0].survivor
    }

    /// One half-move per line: round, phase, pursuer multiset, survivor.
    /// Rules and outcome travel in comment lines so the text alone replays.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let r = &self.rules;
        let kind = match r.pursuer_kind {
            PursuerKind::Zombie => "zombie",
            PursuerKind::Cop => "cop",
        };
        let order = match r.turn_order {
            TurnOrder::PursuersFirst => "pursuers-first",
            TurnOrder::SurvivorFirst => "survivor-first",
        };
        writeln!(
            out,
            "# rules: pursuers={kind} order={order} entry-capture={} pass={} must-move={}",
            flag(r.capture_on_survivor_entry),
            flag(r.survivor_may_pass),
            flag(r.pursuers_must_move),
        )
        .unwrap();
        for step in &self.steps {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                step.round,
                step.phase.as_str(),
                multiset_text(&step.pursuers),
                step.survivor
            )
            .unwrap();
        }
        let outcome = match self.outcome {
            Outcome::Captured { round } => format!("captured round={round}"),
            Outcome::SurvivesForever {
                first_round,
                repeat_round,
            } => {
                format!("survives-forever first={first_round} repeat={repeat_round}")
            }
            Outcome::Cutoff { rounds } => format!("cutoff rounds={rounds}"),
        };
        writeln!(out, "# outcome: {outcome}").unwrap();
        out
    }

    pub fn from_text(text: &str) -> Result<SimulationTrace, TraceError> {
        let fail = |line: usize, message: &str| TraceError::Parse {
            line,
            message: message.to_string(),
        };
        let mut rules = None;
        let mut outcome = None;
        let mut steps: Vec<TraceStep> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("# rules:") {
                rules = Some(parse_rules(line, rest)?);
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("# outcome:") {
                outcome = Some(parse_outcome(line, rest)?);
                continue;
            }
            if trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(fail(line, "expected round, phase, pursuers, survivor"));
            }
            let round: usize = fields[0]
                .parse()
                .map_err(|_| fail(line, "bad round number"))?;
            let phase = match fields[1] {
                "start" => TracePhase::Start,
                "pursuers" => TracePhase::Pursuers,
                "survivor" => TracePhase::Survivor,
                other => return Err(fail(line, &format!("unknown phase {other:?}"))),
            };
            let pursuers = if fields[2] == "-" {
                Vec::new()
            } else {
                fields[2]
                    .split(',')
                    .map(|t| t.parse().map_err(|_| fail(line, "bad pursuer vertex")))
                    .collect::<Result<Vec<VertexId>, _>>()?
            };
            let survivor: VertexId = fields[3]
                .parse()
                .map_err(|_| fail(line, "bad survivor vertex"))?;
            if steps.is_empty() && phase != TracePhase::Start {
                return Err(fail(line, "trace must open with the start row"));
            }
            steps.push(TraceStep {
                round,
                phase,
                pursuers,
                survivor,
            });
        }
        let rules = rules.ok_or_else(|| fail(0, "missing rules line"))?;
        let outcome = outcome.ok_or_else(|| fail(0, "missing outcome line"))?;
        if steps.is_empty() {
            return Err(fail(0, "trace has no rows"));
        }
        Ok(SimulationTrace {
            rules,
            steps,
            outcome,
        })
    }

    /// Checks every transition against the rules, confirms captures happen
    /// exactly where claimed, and that loop outcomes revisit a round-start
    /// position.
    pub fn replay(&self, graph: &Graph, dist: &DistanceMatrix) -> Result<(), TraceError> {
        let fail = |place: &str, message: String| TraceError::Replay {
            place: place.to_string(),
            message,
        };
        let start = &self.steps[0];
        if start.phase != TracePhase::Start || start.round != 0 {
            return Err(fail("start", "first row is not the start row".to_string()));
        }
        let mut state = GameState::new(
            start.pursuers.clone(),
            start.survivor,
            self.rules.first_side(),
        );
        // Position before each round's first half-move, indexed by round.
        let mut round_starts: Vec<GameState> = vec![state.clone(), state.clone()];
        let order = [self.rules.first_side(), self.rules.first_side().other()];
        let mut half = 0usize;
        let mut round = 1usize;
        for (i, step) in self.steps.iter().enumerate().skip(1) {
            let place = format!("round {} {}", step.round, step.phase.as_str());
            if state.is_capture() {
                return Err(fail(&place, "rows continue past a capture".to_string()));
            }
            if step.round != round || step.phase != TracePhase::of(order[half]) {
                return Err(fail(
                    &place,
                    format!(
                        "expected round {round} {}",
                        TracePhase::of(order[half]).as_str()
                    ),
                ));
            }
            match order[half] {
                Side::Pursuers => {
                    if step.survivor != state.survivor() {
                        return Err(fail(
                            &place,
                            "survivor moved on the pursuer turn".to_string(),
                        ));
                    }
                    let mut dests = step.pursuers.clone();
                    dests.sort_unstable();
                    if !pursuer_multiset_reachable(
                        graph,
                        dist,
                        &self.rules,
                        &state,
                        &mut vec![false; dests.len()],
                        &dests,
                        0,
                    ) {
                        return Err(fail(&place, "no legal joint pursuer move fits".to_string()));
                    }
                    state = GameState::new(dests, state.survivor(), state.to_move().other());
                }
                Side::Survivor => {
                    if step.pursuers != state.pursuers() {
                        return Err(fail(
                            &place,
                            "pursuers moved on the survivor turn".to_string(),
                        ));
                    }
                    state = apply(
                        graph,
                        dist,
                        &self.rules,
                        &state,
                        &JointMove::Survivor(step.survivor),
                    )
                    .map_err(|e| fail(&place, e.to_string()))?;
                }
            }
            if state.is_capture() && i + 1 != self.steps.len() {
                return Err(fail(&place, "capture is not the final row".to_string()));
            }
            half += 1;
            if half == order.len() {
                half = 0;
                round += 1;
                round_starts.push(state.clone());
            }
        }
        match self.outcome {
            Outcome::Captured { round } => {
                if !state.is_capture() {
                    return Err(fail("outcome", "claims capture, none happened".to_string()));
                }
                let last = self.steps.last().unwrap();
                if last.round != round {
                    return Err(fail(
                        "outcome",
                        format!("capture was in round {}", last.round),
                    ));
                }
            }
            Outcome::SurvivesForever {
                first_round,
                repeat_round,
            } => {
                if state.is_capture() {
                    return Err(fail("outcome", "claims a loop, but play ended".to_string()));
                }
                if first_round >= repeat_round
                    || repeat_round >= round_starts.len()
                    || round_starts[first_round] != round_starts[repeat_round]
                {
                    return Err(fail(
                        "outcome",
                        format!("rounds {first_round} and {repeat_round} do not repeat"),
                    ));
                }
            }
            Outcome::Cutoff { .. } => {
                if state.is_capture() {
                    return Err(fail(
                        "outcome",
                        "claims a cutoff, but play ended".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// True when the pursuers at `state` can jointly land exactly on the sorted
/// multiset `dests`: a backtracking perfect matching of per-pursuer legal
/// steps.
fn pursuer_multiset_reachable(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    state: &GameState,
    used: &mut Vec<bool>,
    dests: &[VertexId],
    i: usize,
) -> bool {
    if i == state.pursuers().len() {
        return true;
    }
    let src = state.pursuers()[i];
    for j in 0..dests.len() {
        if used[j] || (j > 0 && dests[j] == dests[j - 1] && !used[j - 1]) {
            continue;
        }
        let dst = dests[j];
        let legal = match rules.pursuer_kind {
            PursuerKind::Zombie => {
                geodesic_successors(graph, dist, src, state.survivor()).contains(&dst)
            }
            PursuerKind::Cop => {
                (dst == src && !rules.pursuers_must_move) || graph.has_edge(src, dst)
            }
        };
        if !legal {
            continue;
        }
        used[j] = true;
        if pursuer_multiset_reachable(graph, dist, rules, state, used, dests, i + 1) {
            return true;
        }
        used[j] = false;
    }
    false
}

fn parse_kv(line: usize, rest: &str) -> Result<Vec<(&str, &str)>, TraceError> {
    rest.split_whitespace()
        .map(|token| {
            token.split_once('=').ok_or_else(|| TraceError::Parse {
                line,
                message: format!("expected key=value, got {token:?}"),
            })
        })
        .collect()
}

fn parse_rules(line: usize, rest: &str) -> Result<Rules, TraceError> {
    let fail = |message: String| TraceError::Parse { line, message };
    let mut rules = Rules::zombie();
    let mut must_move = None;
    for (key, value) in parse_kv(line, rest)? {
        let on = match value {
            "on" => true,
            "off" => false,
            _ => true, // only the flag keys check this
        };
        match key {
            "pursuers" => match value {
                "zombie" => rules.pursuer_kind = PursuerKind::Zombie,
                "cop" => rules.pursuer_kind = PursuerKind::Cop,
                _ => return Err(fail(format!("unknown pursuer kind {value:?}"))),
            },
            "order" => match value {
                "pursuers-first" => rules.turn_order = TurnOrder::PursuersFirst,
                "survivor-first" => rules.turn_order = TurnOrder::SurvivorFirst,
                _ => return Err(fail(format!("unknown turn order {value:?}"))),
            },
            "entry-capture" => rules.capture_on_survivor_entry = on,
            "pass" => rules.survivor_may_pass = on,
            "must-move" => must_move = Some(on),
            _ => return Err(fail(format!("unknown rules key {key:?}"))),
        }
    }
    if let Some(on) = must_move {
        if !on && rules.pursuer_kind == PursuerKind::Zombie {
            return Err(fail("zombies always have to move".to_string()));
        }
        rules.pursuers_must_move = on;
    } else if rules.pursuer_kind == PursuerKind::Cop {
        rules.pursuers_must_move = false;
    }
    Ok(rules)
}

fn parse_outcome(line: usize, rest: &str) -> Result<Outcome, TraceError> {
    let fail = |message: String| TraceError::Parse { line, message };
    let mut tokens = rest.split_whitespace();
    let head = tokens
        .next()
        .ok_or_else(|| fail("empty outcome".to_string()))?;
    let kv = parse_kv(line, &rest[rest.find(head).unwrap() + head.len()..])?;
    let get = |key: &str| -> Result<usize, TraceError> {
        kv.iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| fail(format!("outcome is missing {key}")))?
            .1
            .parse()
            .map_err(|_| fail(format!("bad {key} value")))
    };
    match head {
        "captured" => Ok(Outcome::Captured {
            round: get("round")?,
        }),
        "survives-forever" => Ok(Outcome::SurvivesForever {
            first_round: get("first")?,
            repeat_round: get("repeat")?,
        }),
        "cutoff" => Ok(Outcome::Cutoff {
            rounds: get("rounds")?,
        }),
        _ => Err(fail(format!("unknown outcome {head:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::policy::{GreedyPursuer, OptimalPursuer, OptimalSurvivor};
    use crate::solver::{extract_strategies, solve_fixed, Budget, PositionalStrategy, SolveResult};

    fn solved(
        graph: &Graph,
        k: usize,
    ) -> (
        DistanceMatrix,
        SolveResult,
        PositionalStrategy,
        PositionalStrategy,
    ) {
        let dist = DistanceMatrix::compute(graph);
        let result = solve_fixed(graph, &dist, k, &Rules::zombie(), &Budget::default()).unwrap();
        let (p, s) = extract_strategies(graph, &dist, &result);
        (dist, result, p, s)
    }

    #[test]
    fn capture_on_an_edge_takes_one_round() {
        let graph = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (dist, result, p, s) = solved(&graph, 1);
        let trace = simulate(
            &graph,
            &dist,
            &Rules::zombie(),
            &OptimalPursuer::new(&result, &p),
            &OptimalSurvivor::new(&result, &s),
            100,
        )
        .unwrap();
        assert_eq!(trace.outcome, Outcome::Captured { round: 1 });
        assert_eq!(trace.steps.len(), 2);
        trace.replay(&graph, &dist).unwrap();
    }

    #[test]
    fn lone_zombie_loops_forever_on_a_four_cycle() {
        let graph = families::cycle(4).unwrap();
        let (dist, result, p, s) = solved(&graph, 1);
        let trace = simulate(
            &graph,
            &dist,
            &Rules::zombie(),
            &OptimalPursuer::new(&result, &p),
            &OptimalSurvivor::new(&result, &s),
            100,
        )
        .unwrap();
        let Outcome::SurvivesForever {
            first_round,
            repeat_round,
        } = trace.outcome
        else {
            panic!("expected a loop, got {:?}", trace.outcome);
        };
        assert!(first_round < repeat_round);
        trace.replay(&graph, &dist).unwrap();
    }

    #[test]
    fn greedy_zombie_also_loops_on_a_four_cycle() {
        let graph = families::cycle(4).unwrap();
        let (dist, result, _, s) = solved(&graph, 1);
        let trace = simulate(
            &graph,
            &dist,
            &Rules::zombie(),
            &GreedyPursuer::new(&graph, &dist, 1),
            &OptimalSurvivor::new(&result, &s),
            100,
        )
        .unwrap();
        assert!(matches!(trace.outcome, Outcome::SurvivesForever { .. }));
    }

    #[test]
    fn cutoff_reports_the_round_budget() {
        let graph = families::path(5).unwrap();
        let (dist, result, p, s) = solved(&graph, 1);
        let trace = simulate(
            &graph,
            &dist,
            &Rules::zombie(),
            &OptimalPursuer::new(&result, &p),
            &OptimalSurvivor::new(&result, &s),
            2,
        )
        .unwrap();
        assert_eq!(trace.outcome, Outcome::Cutoff { rounds: 2 });
        trace.replay(&graph, &dist).unwrap();
    }

    #[test]
    fn traces_round_trip_through_text() {
        let graph = families::path(5).unwrap();
        let (dist, result, p, s) = solved(&graph, 1);
        let trace = simulate(
            &graph,
            &dist,
            &Rules::zombie(),
            &OptimalPursuer::new(&result, &p),
            &OptimalSurvivor::new(&result, &s),
            50,
        )
        .unwrap();
        assert_eq!(trace.outcome, Outcome::Captured { round: 4 });
        let text = trace.to_text();
        let parsed = SimulationTrace::from_text(&text).unwrap();
        assert_eq!(parsed, trace);
        parsed.replay(&graph, &dist).unwrap();
    }

    #[test]
    fn replay_rejects_teleports_and_false_outcomes() {
        let graph = families::path(5).unwrap();
        let (dist, result, p, s) = solved(&graph, 1);
        let trace = simulate(
            &graph,
            &dist,
            &Rules::zombie(),
            &OptimalPursuer::new(&result, &p),
            &OptimalSurvivor::new(&result, &s),
            50,
        )
        .unwrap();

        let mut teleported = trace.clone();
        let last = teleported.steps.len() - 1;
        teleported.steps[last - 1].survivor = 0;
        assert!(teleported.replay(&graph, &dist).is_err());

        let mut wrong_round = trace.clone();
        wrong_round.outcome = Outcome::Captured { round: 2 };
        assert!(wrong_round.replay(&graph, &dist).is_err());

        let mut fake_loop = trace;
        fake_loop.outcome = Outcome::SurvivesForever {
            first_round: 1,
            repeat_round: 2,
        };
        assert!(fake_loop.replay(&graph, &dist).is_err());
    }

    #[test]
    fn parser_reports_malformed_rows() {
        let text = "# rules: pursuers=zombie order=pursuers-first entry-capture=on pass=on must-move=on\n0\tstart\t0\n# outcome: cutoff rounds=0\n";
        let err = SimulationTrace::from_text(text).unwrap_err();
        assert_eq!(
            err,
            TraceError::Parse {
                line: 2,
                message: "expected round, phase, pursuers, survivor".to_string()
            }
        );
    }
}

//! Game states, rule configuration, move generation, and transitions.
//!
//! A state is the sorted multiset of pursuer positions, the survivor's
//! vertex, and whose turn it is. A state is a capture state exactly when the
//! survivor shares a vertex with some pursuer; capture states are terminal.

use crate::dist::{geodesic_successors, DistanceMatrix};
use crate::error::RulesError;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PursuerKind {
    /// Must move every round, along some geodesic toward the survivor.
    Zombie,
    /// May move to any neighbor or stay put.
    Cop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TurnOrder {
    PursuersFirst,
    SurvivorFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Pursuers,
    Survivor,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Pursuers => Side::Survivor,
            Side::Survivor => Side::Pursuers,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rules {
    pub pursuer_kind: PursuerKind,
    pub turn_order: TurnOrder,
    pub capture_on_survivor_entry: bool,
    pub survivor_may_pass: bool,
    pub pursuers_must_move: bool,
}

impl Rules {
    pub fn zombie() -> Rules {
        Rules {
            pursuer_kind: PursuerKind::Zombie,
            turn_order: TurnOrder::PursuersFirst,
            capture_on_survivor_entry: true,
            survivor_may_pass: true,
            pursuers_must_move: true,
        }
    }

    pub fn cop() -> Rules {
        Rules {
            pursuer_kind: PursuerKind::Cop,
            pursuers_must_move: false,
            ..Rules::zombie()
        }
    }

    pub fn with_turn_order(mut self, order: TurnOrder) -> Rules {
        self.turn_order = order;
        self
    }

    pub fn with_entry_capture(mut self, on: bool) -> Rules {
        self.capture_on_survivor_entry = on;
        self
    }

    pub fn with_survivor_pass(mut self, on: bool) -> Rules {
        self.survivor_may_pass = on;
        self
    }

    pub fn with_pursuers_must_move(mut self, on: bool) -> Rules {
        assert!(
            on || self.pursuer_kind == PursuerKind::Cop,
            "zombies always have to move"
        );
        self.pursuers_must_move = on;
        self
    }

    /// Which side moves first once both sides are placed.
    pub fn first_side(&self) -> Side {
        match self.turn_order {
            TurnOrder::PursuersFirst => Side::Pursuers,
            TurnOrder::SurvivorFirst => Side::Survivor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameState {
    pursuers: Vec<VertexId>,
    survivor: VertexId,
    to_move: Side,
}

impl GameState {
    /// Canonicalizes by sorting the pursuer positions.
    pub fn new(mut pursuers: Vec<VertexId>, survivor: VertexId, to_move: Side) -> GameState {
        pursuers.sort_unstable();
        GameState {
            pursuers,
            survivor,
            to_move,
        }
    }

    pub fn pursuers(&self) -> &[VertexId] {
        &self.pursuers
    }

    pub fn survivor(&self) -> VertexId {
        self.survivor
    }

    pub fn to_move(&self) -> Side {
        self.to_move
    }

    pub fn is_capture(&self) -> bool {
        self.pursuers.binary_search(&self.survivor).is_ok()
    }
}

/// A half-round move: pursuer destinations aligned index by index with the
/// sorted pursuer multiset, or a single survivor destination.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JointMove {
    Pursuers(Vec<VertexId>),
    Survivor(VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurvivorMove {
    pub dest: VertexId,
    /// True when the destination holds a pursuer and moving there ends the
    /// game immediately.
    pub capturing: bool,
}

/// Per-pursuer destination options from `from`, in increasing order.
fn pursuer_options(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    from: VertexId,
    survivor: VertexId,
) -> Vec<VertexId> {
    match rules.pursuer_kind {
        PursuerKind::Zombie => geodesic_successors(graph, dist, from, survivor),
        PursuerKind::Cop => {
            let mut opts = graph.neighbors(from).to_vec();
            if !rules.pursuers_must_move {
                let at = opts.binary_search(&from).unwrap_err();
                opts.insert(at, from);
            }
            opts
        }
    }
}

/// All legal joint pursuer moves as aligned destination vectors, one per
/// distinct destination multiset, in increasing order.
pub fn pursuer_moves(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    state: &GameState,
) -> Vec<Vec<VertexId>> {
    assert_eq!(state.to_move(), Side::Pursuers);
    assert!(!state.is_capture(), "no moves from a terminal state");
    let options: Vec<Vec<VertexId>> = state
        .pursuers()
        .iter()
        .map(|&p| pursuer_options(graph, dist, rules, p, state.survivor()))
        .collect();
    let k = options.len();
    let mut moves = Vec::new();
    let mut pick = vec![0usize; k];
    loop {
        let mut combo: Vec<VertexId> = (0..k).map(|i| options[i][pick[i]]).collect();
        // Pursuers on the same vertex are interchangeable: sort each run of
        // equal sources so equivalent assignments collapse to one move.
        let mut run = 0;
        for i in 1..=k {
            if i == k || state.pursuers()[i] != state.pursuers()[run] {
                combo[run..i].sort_unstable();
                run = i;
            }
        }
        moves.push(combo);
        let mut carry = k;
        while carry > 0 {
            pick[carry - 1] += 1;
            if pick[carry - 1] < options[carry - 1].len() {
                break;
            }
            pick[carry - 1] = 0;
            carry -= 1;
        }
        if carry == 0 {
            break;
        }
    }
    moves.sort_unstable();
    moves.dedup();
    moves
}

/// All legal survivor moves in increasing destination order. Pass comes in
/// destination order too (the survivor's own vertex). Occupied destinations
/// appear flagged as capturing when entry capture is on, and are omitted
/// when it is off.
pub fn survivor_moves(graph: &Graph, rules: &Rules, state: &GameState) -> Vec<SurvivorMove> {
    assert_eq!(state.to_move(), Side::Survivor);
    assert!(!state.is_capture(), "no moves from a terminal state");
    let s = state.survivor();
    let mut dests = graph.neighbors(s).to_vec();
    if rules.survivor_may_pass {
        let at = dests.binary_search(&s).unwrap_err();
        dests.insert(at, s);
    }
    dests
        .into_iter()
        .filter_map(|dest| {
            let occupied = state.pursuers().binary_search(&dest).is_ok();
            if occupied && !rules.capture_on_survivor_entry {
                None
            } else {
                Some(SurvivorMove {
                    dest,
                    capturing: occupied,
                })
            }
        })
        .collect()
}

/// Validates a move and produces the canonical successor state with the turn
/// toggled.
pub fn apply(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    state: &GameState,
    mv: &JointMove,
) -> Result<GameState, RulesError> {
    if state.is_capture() {
        return Err(RulesError::MoveFromTerminal);
    }
    match (state.to_move(), mv) {
        (Side::Pursuers, JointMove::Pursuers(dests)) => {
            if dests.len() != state.pursuers().len() {
                return Err(RulesError::WrongArity {
                    expected: state.pursuers().len(),
                    got: dests.len(),
                });
            }
            for (index, (&from, &to)) in state.pursuers().iter().zip(dests).enumerate() {
                let legal = match rules.pursuer_kind {
                    PursuerKind::Zombie => {
                        graph.has_edge(from, to)
                            && dist.get(to, state.survivor()) + 1
                                == dist.get(from, state.survivor())
                    }
                    PursuerKind::Cop => {
                        graph.has_edge(from, to) || (to == from && !rules.pursuers_must_move)
                    }
                };
                if !legal {
                    return Err(RulesError::IllegalPursuerStep { index, from, to });
                }
            }
            Ok(GameState::new(
                dests.clone(),
                state.survivor(),
                Side::Survivor,
            ))
        }
        (Side::Survivor, &JointMove::Survivor(dest)) => {
            let from = state.survivor();
            let stepping = graph.has_edge(from, dest);
            let passing = dest == from && rules.survivor_may_pass;
            let entering =
                state.pursuers().binary_search(&dest).is_ok() && !rules.capture_on_survivor_entry;
            if (!stepping && !passing) || entering {
                return Err(RulesError::IllegalSurvivorStep { from, to: dest });
            }
            Ok(GameState::new(
                state.pursuers().to_vec(),
                dest,
                Side::Pursuers,
            ))
        }
        (expected, mv) => {
            let got = match mv {
                JointMove::Pursuers(_) => Side::Pursuers,
                JointMove::Survivor(_) => Side::Survivor,
            };
            Err(RulesError::WrongSide { expected, got })
        }
    }
}

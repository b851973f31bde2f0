//! Deterministic playing policies with explicit memory.
//!
//! Memory is a plain hashable value so that simulation and verification can
//! treat (state, memory) pairs as nodes of a finite graph: revisiting a pair
//! under deterministic play proves the play loops forever.

use crate::dist::{geodesic_successors, DistanceMatrix};
use crate::error::PolicyError;
use crate::families::PetalDescriptor;
use crate::graph::{Graph, VertexId, VertexLabel};
use crate::rules::{GameState, JointMove, Side, TurnOrder};
use crate::solver::{PositionalStrategy, SolveResult};
use std::fmt::Debug;
use std::hash::Hash;

pub trait PursuerPolicy {
    type Memory: Clone + Eq + Hash + Debug;

    /// Starting positions, chosen before the survivor is placed.
    fn place(&self) -> (Vec<VertexId>, Self::Memory);

    /// Joint move destinations aligned with the state's sorted pursuer
    /// multiset, plus the successor memory.
    fn step(
        &self,
        state: &GameState,
        memory: &Self::Memory,
    ) -> Result<(Vec<VertexId>, Self::Memory), PolicyError>;
}

pub trait SurvivorPolicy {
    type Memory: Clone + Eq + Hash + Debug;

    /// Start vertex, chosen with the pursuer placement in full view.
    fn choose_start(&self, placement: &[VertexId])
        -> Result<(VertexId, Self::Memory), PolicyError>;

    fn step(
        &self,
        state: &GameState,
        memory: &Self::Memory,
    ) -> Result<(VertexId, Self::Memory), PolicyError>;
}

/// Plays the extracted optimal pursuer strategy from its winning placement
/// (or the all-zeros placement when there is none to win from).
pub struct OptimalPursuer<'a> {
    result: &'a SolveResult,
    strategy: &'a PositionalStrategy,
}

impl<'a> OptimalPursuer<'a> {
    pub fn new(result: &'a SolveResult, strategy: &'a PositionalStrategy) -> OptimalPursuer<'a> {
        assert_eq!(strategy.side(), Side::Pursuers);
        OptimalPursuer { result, strategy }
    }
}

impl PursuerPolicy for OptimalPursuer<'_> {
    type Memory = ();

    fn place(&self) -> (Vec<VertexId>, ()) {
        let placement = self
            .result
            .winning_placement()
            .map(<[VertexId]>::to_vec)
            .unwrap_or_else(|| vec![0; self.result.k()]);
        (placement, ())
    }

    fn step(&self, state: &GameState, _: &()) -> Result<(Vec<VertexId>, ()), PolicyError> {
        let Some(JointMove::Pursuers(dests)) = self.strategy.choice(state) else {
            panic!("optimal pursuer strategy is total, missing {state:?}");
        };
        Ok((dests.clone(), ()))
    }
}

/// Plays the extracted survivor strategy, starting on a winning vertex when
/// one exists and otherwise on a longest-stalling one.
pub struct OptimalSurvivor<'a> {
    result: &'a SolveResult,
    strategy: &'a PositionalStrategy,
}

impl<'a> OptimalSurvivor<'a> {
    pub fn new(result: &'a SolveResult, strategy: &'a PositionalStrategy) -> OptimalSurvivor<'a> {
        assert_eq!(strategy.side(), Side::Survivor);
        OptimalSurvivor { result, strategy }
    }
}

impl SurvivorPolicy for OptimalSurvivor<'_> {
    type Memory = ();

    fn choose_start(&self, placement: &[VertexId]) -> Result<(VertexId, ()), PolicyError> {
        let first = self.result.rules().first_side();
        let rank_at = |s: VertexId| {
            self.result
                .rank_of(&GameState::new(placement.to_vec(), s, first))
        };
        let n = self.result.vertex_count();
        let winning = (0..n).find(|&s| rank_at(s).is_none());
        let start = winning.unwrap_or_else(|| {
            (0..n)
                .max_by_key(|&s| (rank_at(s), std::cmp::Reverse(s)))
                .unwrap()
        });
        Ok((start, ()))
    }

    fn step(&self, state: &GameState, _: &()) -> Result<(VertexId, ()), PolicyError> {
        let Some(JointMove::Survivor(dest)) = self.strategy.choice(state) else {
            panic!("optimal survivor strategy is total, missing {state:?}");
        };
        Ok((*dest, ()))
    }
}

/// Every pursuer independently takes the smallest geodesic step toward the
/// survivor. Simple, legal, and beatable; useful as a baseline and as a
/// negative control for the verifier.
pub struct GreedyPursuer<'a> {
    graph: &'a Graph,
    dist: &'a DistanceMatrix,
    k: usize,
}

impl<'a> GreedyPursuer<'a> {
    pub fn new(graph: &'a Graph, dist: &'a DistanceMatrix, k: usize) -> GreedyPursuer<'a> {
        GreedyPursuer { graph, dist, k }
    }
}

impl PursuerPolicy for GreedyPursuer<'_> {
    type Memory = ();

    fn place(&self) -> (Vec<VertexId>, ()) {
        (vec![0; self.k], ())
    }

    fn step(&self, state: &GameState, _: &()) -> Result<(Vec<VertexId>, ()), PolicyError> {
        let dests = state
            .pursuers()
            .iter()
            .map(|&p| geodesic_successors(self.graph, self.dist, p, state.survivor())[0])
            .collect();
        Ok((dests, ()))
    }
}

/// One factor of a product pursuer: the factor graph, its distances, an
/// extracted pursuer strategy on it, and the placement that strategy wins
/// from.
pub struct Factor<'a> {
    pub graph: &'a Graph,
    pub dist: &'a DistanceMatrix,
    pub strategy: &'a PositionalStrategy,
    pub placement: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductMemory {
    /// Product vertices of the zombies assigned to the left factor strategy.
    pub blue: Vec<VertexId>,
    /// Product vertices of the zombies assigned to the right factor strategy.
    pub red: Vec<VertexId>,
    /// Common right-coordinate distance from the blue set to the survivor,
    /// measured after each pursuer move. Never increases.
    pub d_right: Option<u32>,
    /// Common left-coordinate distance from the red set, likewise.
    pub d_left: Option<u32>,
    pub last_survivor: Option<(VertexId, VertexId)>,
}

/// Zombies on a Cartesian product, split into a blue set running the left
/// factor's strategy and a red set running the right factor's strategy.
///
/// Blue zombies chase the survivor along the right coordinate until they
/// share its copy of the left factor, then replay the left strategy inside
/// that copy, trailing along the right coordinate whenever the survivor
/// leaves it. Red zombies mirror this with the coordinates swapped. Either
/// way every step shortens the product distance by one, so the moves are
/// legal zombie moves.
pub struct ProductZombiePolicy<'a> {
    left: Factor<'a>,
    right: Factor<'a>,
    coords: Vec<(VertexId, VertexId)>,
    ids: Vec<Vec<VertexId>>,
}

impl<'a> ProductZombiePolicy<'a> {
    pub fn new(
        product: &'a Graph,
        left: Factor<'a>,
        right: Factor<'a>,
    ) -> Result<ProductZombiePolicy<'a>, PolicyError> {
        let (nl, nr) = (left.graph.vertex_count(), right.graph.vertex_count());
        let labels = product
            .labels()
            .ok_or_else(|| PolicyError::MissingLabels("product coordinates".to_string()))?;
        if product.vertex_count() != nl * nr {
            return Err(PolicyError::MissingLabels(format!(
                "product has {} vertices, factors give {}",
                product.vertex_count(),
                nl * nr
            )));
        }
        let mut coords = Vec::with_capacity(labels.len());
        let mut ids = vec![vec![usize::MAX; nr]; nl];
        for (v, label) in labels.iter().enumerate() {
            let &VertexLabel::Product { left: a, right: x } = label else {
                return Err(PolicyError::MissingLabels(format!(
                    "vertex {v} is not a pair"
                )));
            };
            if a >= nl || x >= nr {
                return Err(PolicyError::MissingLabels(format!(
                    "pair ({a},{x}) out of range"
                )));
            }
            coords.push((a, x));
            ids[a][x] = v;
        }
        Ok(ProductZombiePolicy {
            left,
            right,
            coords,
            ids,
        })
    }

    /// Moves one set: chase along the `chase` coordinate until it matches the
    /// survivor's, then hand the other coordinate to the factor strategy.
    /// Returns (source, destination) pairs in product vertices.
    fn move_set(
        &self,
        set: &[VertexId],
        survivor: (VertexId, VertexId),
        left_set: bool,
    ) -> Result<Vec<(VertexId, VertexId)>, PolicyError> {
        type CoordOf = fn((usize, usize)) -> usize;
        let (own, own_of, other_of): (&Factor, CoordOf, CoordOf) = if left_set {
            (&self.left, |c| c.0, |c| c.1)
        } else {
            (&self.right, |c| c.1, |c| c.0)
        };
        let chase_factor = if left_set { &self.right } else { &self.left };
        let id = |own_c: usize, other_c: usize| {
            if left_set {
                self.ids[own_c][other_c]
            } else {
                self.ids[other_c][own_c]
            }
        };
        let shared = other_of(self.coords[set[0]]);
        assert!(
            set.iter().all(|&v| other_of(self.coords[v]) == shared),
            "set must share its chase coordinate"
        );
        let target = other_of(survivor);
        if shared != target {
            let step =
                geodesic_successors(chase_factor.graph, chase_factor.dist, shared, target)[0];
            return Ok(set
                .iter()
                .map(|&v| (v, id(own_of(self.coords[v]), step)))
                .collect());
        }
        let projected: Vec<VertexId> = set.iter().map(|&v| own_of(self.coords[v])).collect();
        let state = GameState::new(projected, own_of(survivor), Side::Pursuers);
        debug_assert!(
            !state.is_capture(),
            "a capture would have ended the game already"
        );
        let Some(JointMove::Pursuers(dests)) = own.strategy.choice(&state) else {
            return Err(PolicyError::FactorStrategyUndefined {
                pursuers: state.pursuers().to_vec(),
                survivor: state.survivor(),
            });
        };
        // The factor move is aligned with the sorted projection, which is the
        // order of `set` itself: its members share the chase coordinate, so
        // sorted product ids sort the own coordinate too.
        let mut sorted = set.to_vec();
        sorted.sort_unstable_by_key(|&v| own_of(self.coords[v]));
        Ok(sorted
            .iter()
            .zip(dests)
            .map(|(&v, &d)| (v, id(d, shared)))
            .collect())
    }
}

impl PursuerPolicy for ProductZombiePolicy<'_> {
    type Memory = ProductMemory;

    fn place(&self) -> (Vec<VertexId>, ProductMemory) {
        let blue: Vec<VertexId> = self
            .left
            .placement
            .iter()
            .map(|&a| self.ids[a][0])
            .collect();
        let red: Vec<VertexId> = self
            .right
            .placement
            .iter()
            .map(|&x| self.ids[0][x])
            .collect();
        let mut all = blue.clone();
        all.extend(&red);
        let mut memory = ProductMemory {
            blue,
            red,
            d_right: None,
            d_left: None,
            last_survivor: None,
        };
        memory.blue.sort_unstable();
        memory.red.sort_unstable();
        (all, memory)
    }

    fn step(
        &self,
        state: &GameState,
        memory: &ProductMemory,
    ) -> Result<(Vec<VertexId>, ProductMemory), PolicyError> {
        let mut tracked: Vec<VertexId> = memory.blue.iter().chain(&memory.red).copied().collect();
        tracked.sort_unstable();
        if tracked != state.pursuers() {
            return Err(PolicyError::PositionMismatch);
        }
        let survivor = self.coords[state.survivor()];
        if let Some(last) = memory.last_survivor {
            assert!(
                (last.0 == survivor.0) || (last.1 == survivor.1),
                "survivor moves change at most one coordinate"
            );
        }

        let mut pairs = self.move_set(&memory.blue, survivor, true)?;
        let blue_after: Vec<VertexId> = {
            let mut b: Vec<_> = pairs.iter().map(|&(_, d)| d).collect();
            b.sort_unstable();
            b
        };
        let red_pairs = self.move_set(&memory.red, survivor, false)?;
        let red_after: Vec<VertexId> = {
            let mut r: Vec<_> = red_pairs.iter().map(|&(_, d)| d).collect();
            r.sort_unstable();
            r
        };
        pairs.extend(red_pairs);
        pairs.sort_unstable();
        let dests: Vec<VertexId> = pairs.iter().map(|&(_, d)| d).collect();

        let d_right = self
            .right
            .dist
            .get(self.coords[blue_after[0]].1, survivor.1);
        let d_left = self.left.dist.get(self.coords[red_after[0]].0, survivor.0);
        assert!(
            d_right <= memory.d_right.unwrap_or(u32::MAX),
            "blue distance regressed"
        );
        assert!(
            d_left <= memory.d_left.unwrap_or(u32::MAX),
            "red distance regressed"
        );
        Ok((
            dests,
            ProductMemory {
                blue: blue_after,
                red: red_after,
                d_right: Some(d_right),
                d_left: Some(d_left),
                last_survivor: Some(survivor),
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PetalMemory {
    /// 1-based copy whose interior was free of pursuers at placement.
    pub chosen_copy: usize,
    /// 1-based length index of the cycle currently being circled.
    pub stage: usize,
    /// Index into the clockwise vertex list of the stage cycle; 0 while
    /// resting on the hub between circuits.
    pub pos: usize,
}

/// The survivor strategy on petal graphs against at most k - 1 zombies.
///
/// The i-th closest zombie gates stage i: while it is far the survivor
/// circles the stage-i cycle of the chosen copy, re-checking the gate only
/// on the hub; otherwise the stage advances. The missing k-th zombie counts
/// as infinitely far, so stage k never ends.
///
/// "Far" compares hub distances against 2^(i+2) - 1 discounted by the
/// clockwise head start the survivor will have spent when the pursuers next
/// pick a move: her entry offset into the cycle, plus one step when she
/// moves first within a round. The discount keeps the entry dichotomy
/// honest on both sides: a zombie inside the gate is close enough to end up
/// trailing clockwise behind her, while one past it cannot reach the hub
/// until she has completed the circuit and reassessed, so nobody ever
/// rounds the hub ahead of her for a head-on interception.
pub struct PetalSurvivorPolicy<'a> {
    descriptor: &'a PetalDescriptor,
    dist: &'a DistanceMatrix,
    start_offset: usize,
    /// Extra clockwise steps the survivor will have taken by the next
    /// pursuer decision: 0 when they move first, 1 when she does.
    decision_shift: usize,
}

impl<'a> PetalSurvivorPolicy<'a> {
    pub fn new(
        descriptor: &'a PetalDescriptor,
        dist: &'a DistanceMatrix,
    ) -> PetalSurvivorPolicy<'a> {
        PetalSurvivorPolicy {
            descriptor,
            dist,
            start_offset: 2,
            decision_shift: 0,
        }
    }

    /// Start the play this many clockwise steps from the hub (1 or 2).
    pub fn with_start_offset(mut self, offset: usize) -> PetalSurvivorPolicy<'a> {
        assert!(offset == 1 || offset == 2, "start offset is 1 or 2");
        self.start_offset = offset;
        self
    }

    /// Match the round structure the policy will be played under.
    pub fn with_turn_order(mut self, order: TurnOrder) -> PetalSurvivorPolicy<'a> {
        self.decision_shift = match order {
            TurnOrder::PursuersFirst => 0,
            TurnOrder::SurvivorFirst => 1,
        };
        self
    }

    fn gate(i: usize) -> u32 {
        (1u32 << (i + 2)) - 1
    }

    /// Clockwise steps already spent by the next pursuer decision when the
    /// survivor enters a cycle `offset` steps from the hub now.
    fn handicap(&self, offset: usize) -> u32 {
        (offset + self.decision_shift) as u32
    }

    /// Hub distance of the i-th closest pursuer, infinite when there are
    /// fewer than i of them.
    fn ranked_distance(&self, pursuers: &[VertexId], i: usize) -> u32 {
        let mut d: Vec<u32> = pursuers
            .iter()
            .map(|&p| self.dist.get(p, self.descriptor.hub))
            .collect();
        d.sort_unstable();
        d.get(i - 1).copied().unwrap_or(u32::MAX)
    }

    fn stage_holds(&self, pursuers: &[VertexId], i: usize, handicap: u32) -> bool {
        self.ranked_distance(pursuers, i) >= Self::gate(i).saturating_sub(handicap)
    }

    /// On entering the stage-i cycle every pursuer must sit at hub distance
    /// at most 2^(i+1) - 2 or at least 2^(i+2) - 1, both discounted by the
    /// survivor's head start. Near ones end up trailing clockwise behind;
    /// far ones cannot reach the hub in time to cut the circuit off.
    /// Anything in between could meet the survivor head-on.
    fn check_entry(
        &self,
        pursuers: &[VertexId],
        stage: usize,
        handicap: u32,
    ) -> Result<(), PolicyError> {
        let near = ((1u32 << (stage + 1)) - 2).saturating_sub(handicap);
        let far = Self::gate(stage).saturating_sub(handicap);
        for &p in pursuers {
            let d = self.dist.get(p, self.descriptor.hub);
            if d > near && d < far {
                return Err(PolicyError::EntrySafetyViolated {
                    stage,
                    distance: d,
                    near,
                    far,
                });
            }
        }
        Ok(())
    }

    /// First stage at or after `stage` whose gate holds.
    fn advance_stage(
        &self,
        pursuers: &[VertexId],
        mut stage: usize,
        handicap: u32,
    ) -> Result<usize, PolicyError> {
        while !self.stage_holds(pursuers, stage, handicap) {
            stage += 1;
            if stage > self.descriptor.k {
                return Err(PolicyError::TooManyPursuers {
                    got: pursuers.len(),
                    max: self.descriptor.k - 1,
                });
            }
        }
        Ok(stage)
    }
}

impl SurvivorPolicy for PetalSurvivorPolicy<'_> {
    type Memory = PetalMemory;

    fn choose_start(&self, placement: &[VertexId]) -> Result<(VertexId, PetalMemory), PolicyError> {
        let k = self.descriptor.k;
        if placement.len() > k - 1 {
            return Err(PolicyError::TooManyPursuers {
                got: placement.len(),
                max: k - 1,
            });
        }
        let chosen_copy = (1..=k)
            .find(|&copy| {
                self.descriptor
                    .cycles
                    .iter()
                    .filter(|c| c.copy == copy)
                    .all(|c| c.interior().iter().all(|v| !placement.contains(v)))
            })
            .expect("with fewer pursuers than copies one copy is free");
        let handicap = self.handicap(self.start_offset);
        let stage = self.advance_stage(placement, 1, handicap)?;
        self.check_entry(placement, stage, handicap)?;
        let start = self.descriptor.cycle(chosen_copy, stage).vertices[self.start_offset];
        Ok((
            start,
            PetalMemory {
                chosen_copy,
                stage,
                pos: self.start_offset,
            },
        ))
    }

    fn step(
        &self,
        state: &GameState,
        memory: &PetalMemory,
    ) -> Result<(VertexId, PetalMemory), PolicyError> {
        let mut m = memory.clone();
        if m.pos == 0 {
            debug_assert_eq!(state.survivor(), self.descriptor.hub);
            let handicap = self.handicap(0);
            m.stage = self.advance_stage(state.pursuers(), m.stage, handicap)?;
            self.check_entry(state.pursuers(), m.stage, handicap)?;
            m.pos = 1;
        } else {
            m.pos += 1;
        }
        let cycle = self.descriptor.cycle(m.chosen_copy, m.stage);
        debug_assert_eq!(state.survivor(), cycle.vertices[m.pos - 1]);
        let dest = cycle.vertices[m.pos];
        if m.pos == cycle.length {
            m.pos = 0;
        }
        Ok((dest, m))
    }
}

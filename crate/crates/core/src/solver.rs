//! Exact game solving by backward induction over the full arena.
//!
//! States are indexed densely: sorted pursuer multisets are ranked in
//! colexicographic order through the combinatorial number system, then
//! combined with the survivor vertex and the side to move. Classification
//! runs backwards from the capture states; a pursuer-to-move state joins the
//! attractor as soon as one successor is in it, a survivor-to-move state when
//! its outstanding-successor counter drains. The rank of a state is the
//! number of plies to capture under optimal play on both sides.

use crate::dist::DistanceMatrix;
use crate::error::SolveError;
use crate::graph::{Graph, VertexId};
use crate::rules::{pursuer_moves, survivor_moves, GameState, JointMove, PursuerKind, Rules, Side};
use std::collections::HashMap;
use std::collections::VecDeque;

/// Cap on the number of arena states a single solve may allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_states: 50_000_000,
        }
    }
}

const SURVIVOR_WINS: u32 = u32::MAX;

/// Ranks sorted multisets of `k` values below `n` in colexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetIndex {
    n: usize,
    k: usize,
    // binom[c * (k + 1) + r] = C(c, r), saturating; c < n + k.
    binom: Vec<u64>,
}

impl MultisetIndex {
    pub fn new(n: usize, k: usize) -> MultisetIndex {
        assert!(n >= 1 && k >= 1);
        let rows = n + k;
        let cols = k + 1;
        let mut binom = vec![0u64; rows * cols];
        for c in 0..rows {
            for r in 0..cols {
                binom[c * cols + r] = if r == 0 {
                    1
                } else if r > c {
                    0
                } else {
                    binom[(c - 1) * cols + r - 1].saturating_add(binom[(c - 1) * cols + r])
                };
            }
        }
        MultisetIndex { n, k, binom }
    }

    fn c(&self, c: usize, r: usize) -> u64 {
        if r > c {
            0
        } else {
            self.binom[c * (self.k + 1) + r]
        }
    }

    /// Number of multisets: C(n + k - 1, k).
    pub fn count(&self) -> u64 {
        self.c(self.n + self.k - 1, self.k)
    }

    /// Colex rank of a sorted multiset.
    pub fn rank(&self, sorted: &[VertexId]) -> u64 {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        sorted
            .iter()
            .enumerate()
            .map(|(i, &m)| self.c(m + i, i + 1))
            .sum()
    }

    /// Inverse of `rank`, written into `out`.
    pub fn unrank(&self, mut r: u64, out: &mut Vec<VertexId>) {
        out.clear();
        out.resize(self.k, 0);
        for i in (0..self.k).rev() {
            // Largest c with C(c, i + 1) <= r; c = i when r runs out.
            let mut c = i;
            while self.c(c + 1, i + 1) <= r {
                c += 1;
            }
            r -= self.c(c, i + 1);
            out[i] = c - i;
        }
    }

    /// First multiset in colex order (all zeros).
    pub fn first(&self) -> Vec<VertexId> {
        vec![0; self.k]
    }

    /// Advances to the colex successor in place; false after the last one.
    pub fn advance(&self, m: &mut [VertexId]) -> bool {
        for i in 0..self.k {
            let cap = if i + 1 == self.k {
                self.n - 1
            } else {
                m[i + 1]
            };
            if m[i] < cap {
                m[i] += 1;
                m[..i].fill(0);
                return true;
            }
        }
        false
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    n: usize,
    k: usize,
    rules: Rules,
    index: MultisetIndex,
    rank: Vec<u32>,
    max_rank: u32,
    pursuer_wins: bool,
    winning_placement: Option<Vec<VertexId>>,
}

impl SolveResult {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    pub fn state_count(&self) -> u64 {
        self.rank.len() as u64
    }

    /// Largest finite rank in the arena.
    pub fn max_rank(&self) -> u32 {
        self.max_rank
    }

    /// True when some placement wins against every survivor start.
    pub fn pursuer_wins_game(&self) -> bool {
        self.pursuer_wins
    }

    /// Lexicographically smallest winning placement, if any.
    pub fn winning_placement(&self) -> Option<&[VertexId]> {
        self.winning_placement.as_deref()
    }

    fn idx(&self, pursuers: &[VertexId], survivor: VertexId, side: Side) -> usize {
        let side_bit = match side {
            Side::Pursuers => 0,
            Side::Survivor => 1,
        };
        (self.index.rank(pursuers) as usize * self.n + survivor) * 2 + side_bit
    }

    pub fn pursuer_wins_state(&self, state: &GameState) -> bool {
        self.rank_of(state).is_some()
    }

    /// Plies to capture under optimal play, or None when the survivor wins.
    pub fn rank_of(&self, state: &GameState) -> Option<u32> {
        assert_eq!(
            state.pursuers().len(),
            self.k,
            "state has the wrong pursuer count"
        );
        let r = self.rank[self.idx(state.pursuers(), state.survivor(), state.to_move())];
        (r != SURVIVOR_WINS).then_some(r)
    }

    /// Iterates every state of the arena for one side to move.
    pub fn states(&self, side: Side) -> impl Iterator<Item = GameState> + '_ {
        let mut multiset = self.index.first();
        let mut survivor = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let state = GameState::new(multiset.clone(), survivor, side);
            survivor += 1;
            if survivor == self.n {
                survivor = 0;
                done = !self.index.advance(&mut multiset);
            }
            Some(state)
        })
    }
}

fn arena_size(n: usize, k: usize, budget: &Budget) -> Result<u64, SolveError> {
    // Count in u128 first so absurd inputs fail cleanly instead of wrapping.
    let mut count: u128 = 1;
    for i in 0..k {
        count = count * (n + i) as u128 / (i + 1) as u128;
    }
    let required = count.saturating_mul(n as u128).saturating_mul(2);
    let table = ((n + k) as u128).saturating_mul((k + 2) as u128);
    if required > budget.max_states as u128 || table > budget.max_states as u128 {
        return Err(SolveError::BudgetExceeded {
            required: required.max(table),
            budget: budget.max_states,
        });
    }
    Ok(required as u64)
}

/// Destinations a pursuer could have moved from to reach `at`, given the
/// survivor sits at `s`. Inverse of the per-pursuer move options.
fn premove_options(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    at: VertexId,
    s: VertexId,
) -> Vec<VertexId> {
    match rules.pursuer_kind {
        PursuerKind::Zombie => graph
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&w| dist.get(w, s) == dist.get(at, s) + 1)
            .collect(),
        PursuerKind::Cop => {
            let mut opts = graph.neighbors(at).to_vec();
            if !rules.pursuers_must_move {
                opts.push(at);
            }
            opts
        }
    }
}

/// Solves the game for exactly `k` pursuers.
pub fn solve_fixed(
    graph: &Graph,
    dist: &DistanceMatrix,
    k: usize,
    rules: &Rules,
    budget: &Budget,
) -> Result<SolveResult, SolveError> {
    if k == 0 {
        return Err(SolveError::NoPursuers);
    }
    let n = graph.vertex_count();
    let total = arena_size(n, k, budget)? as usize;
    assert!(
        n <= u16::MAX as usize,
        "survivor out-degree counter is 16 bits"
    );

    let index = MultisetIndex::new(n, k);
    let mut rank = vec![SURVIVOR_WINS; total];
    let mut counter = vec![0u16; total / 2];
    let mut queue: VecDeque<usize> = VecDeque::new();

    let p_idx = |mr: u64, s: usize| (mr as usize * n + s) * 2;
    let s_idx = |mr: u64, s: usize| (mr as usize * n + s) * 2 + 1;

    // Seed: capture states on both sides, plus stuck survivors.
    let mut multiset = index.first();
    let mut mr: u64 = 0;
    loop {
        for s in 0..n {
            if multiset.binary_search(&s).is_ok() {
                rank[p_idx(mr, s)] = 0;
                rank[s_idx(mr, s)] = 0;
                queue.push_back(p_idx(mr, s));
                queue.push_back(s_idx(mr, s));
            } else {
                let mut out = graph.degree(s) + usize::from(rules.survivor_may_pass);
                if !rules.capture_on_survivor_entry {
                    out -= graph
                        .neighbors(s)
                        .iter()
                        .filter(|w| multiset.binary_search(w).is_ok())
                        .count();
                }
                if out == 0 {
                    rank[s_idx(mr, s)] = 0;
                    queue.push_back(s_idx(mr, s));
                } else {
                    counter[mr as usize * n + s] = out as u16;
                }
            }
        }
        mr += 1;
        if !index.advance(&mut multiset) {
            break;
        }
    }

    let mut max_rank = 0;
    let mut here = Vec::with_capacity(k);
    let mut pred = Vec::with_capacity(k);
    while let Some(idx) = queue.pop_front() {
        let r = rank[idx];
        max_rank = max_rank.max(r);
        let s = (idx >> 1) % n;
        let mr = (idx >> 1) / n;
        index.unrank(mr as u64, &mut here);
        let survivor_on_pursuer = here.binary_search(&s).is_ok();
        if idx & 1 == 1 {
            // A survivor-to-move state was classified; its predecessors are
            // pursuer-to-move states one joint move earlier.
            let options: Vec<Vec<VertexId>> = here
                .iter()
                .map(|&at| premove_options(graph, dist, rules, at, s))
                .collect();
            if options.iter().any(|o| o.is_empty()) {
                continue;
            }
            let mut pick = vec![0usize; k];
            loop {
                pred.clear();
                pred.extend((0..k).map(|i| options[i][pick[i]]));
                pred.sort_unstable();
                let pidx = p_idx(index.rank(&pred), s);
                if rank[pidx] == SURVIVOR_WINS {
                    rank[pidx] = r + 1;
                    queue.push_back(pidx);
                }
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
        } else {
            // A pursuer-to-move state was classified; its predecessors are
            // survivor-to-move states one survivor step earlier. A capture
            // state is only entered by the survivor when entry capture is on.
            if survivor_on_pursuer && !rules.capture_on_survivor_entry {
                continue;
            }
            let mut sources = graph.neighbors(s).to_vec();
            if rules.survivor_may_pass {
                sources.push(s);
            }
            for s_prev in sources {
                if here.binary_search(&s_prev).is_ok() {
                    continue;
                }
                let pidx = s_idx(mr as u64, s_prev);
                if rank[pidx] != SURVIVOR_WINS {
                    continue;
                }
                let c = &mut counter[mr * n + s_prev];
                *c -= 1;
                if *c == 0 {
                    rank[pidx] = r + 1;
                    queue.push_back(pidx);
                }
            }
        }
    }

    // A placement wins when every survivor start is already lost.
    let first = rules.first_side();
    let side_bit = usize::from(first == Side::Survivor);
    let mut placement: Option<Vec<VertexId>> = None;
    let mut multiset = index.first();
    let mut mr: u64 = 0;
    loop {
        let wins = (0..n).all(|s| rank[(mr as usize * n + s) * 2 + side_bit] != SURVIVOR_WINS);
        if wins && placement.as_ref().is_none_or(|best| multiset < *best) {
            placement = Some(multiset.clone());
        }
        mr += 1;
        if !index.advance(&mut multiset) {
            break;
        }
    }

    Ok(SolveResult {
        n,
        k,
        rules: *rules,
        index,
        rank,
        max_rank,
        pursuer_wins: placement.is_some(),
        winning_placement: placement,
    })
}

#[derive(Debug, Clone)]
pub enum PursuitOutcome {
    Found { number: usize, result: SolveResult },
    Unknown { k_max: usize },
}

/// Smallest winning pursuer count, trying k = 1..=k_max in turn. With
/// pursuers on every vertex any placement capture is immediate, so k = n
/// always suffices; k_max only trims the search.
pub fn pursuit_number(
    graph: &Graph,
    dist: &DistanceMatrix,
    rules: &Rules,
    k_max: usize,
    budget: &Budget,
) -> Result<PursuitOutcome, SolveError> {
    for k in 1..=k_max {
        let result = solve_fixed(graph, dist, k, rules, budget)?;
        if result.pursuer_wins_game() {
            return Ok(PursuitOutcome::Found { number: k, result });
        }
    }
    Ok(PursuitOutcome::Unknown { k_max })
}

/// Positional strategy: one move per state of the owning side.
#[derive(Debug, Clone)]
pub struct PositionalStrategy {
    side: Side,
    choices: HashMap<GameState, JointMove>,
}

impl PositionalStrategy {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn choice(&self, state: &GameState) -> Option<&JointMove> {
        self.choices.get(state)
    }
}

/// Extracts positional strategies from a solved arena.
///
/// The pursuer strategy plays the lexicographically smallest rank-decreasing
/// joint move on pursuer-winning states (each such move lands exactly one
/// rank lower) and the smallest legal move elsewhere. The survivor strategy
/// plays the smallest destination that stays out of the attractor on
/// survivor-winning states, and stalls via the smallest rank-maximal
/// destination on lost ones.
pub fn extract_strategies(
    graph: &Graph,
    dist: &DistanceMatrix,
    result: &SolveResult,
) -> (PositionalStrategy, PositionalStrategy) {
    let rules = result.rules();
    let mut pursuer = HashMap::new();
    for state in result.states(Side::Pursuers) {
        if state.is_capture() {
            continue;
        }
        let moves = pursuer_moves(graph, dist, rules, &state);
        let choice = match result.rank_of(&state) {
            Some(r) => moves
                .into_iter()
                .find(|dests| {
                    let succ = GameState::new(dests.clone(), state.survivor(), Side::Survivor);
                    result.rank_of(&succ).is_some_and(|sr| sr < r)
                })
                .expect("a winning state has a rank-decreasing move"),
            None => moves
                .into_iter()
                .next()
                .expect("pursuers always have a move"),
        };
        pursuer.insert(state, JointMove::Pursuers(choice));
    }

    let mut survivor = HashMap::new();
    for state in result.states(Side::Survivor) {
        if state.is_capture() {
            continue;
        }
        let moves = survivor_moves(graph, rules, &state);
        if moves.is_empty() {
            continue; // stuck, scored as terminal at solve time
        }
        let succ_rank = |dest: VertexId| {
            result.rank_of(&GameState::new(
                state.pursuers().to_vec(),
                dest,
                Side::Pursuers,
            ))
        };
        let choice = match result.rank_of(&state) {
            None => {
                moves
                    .iter()
                    .find(|m| succ_rank(m.dest).is_none())
                    .expect("an unwon state has an attractor-avoiding move")
                    .dest
            }
            Some(r) => {
                moves
                    .iter()
                    .find(|m| succ_rank(m.dest) == Some(r - 1))
                    .expect("rank is one above the best successor")
                    .dest
            }
        };
        survivor.insert(state, JointMove::Survivor(choice));
    }

    (
        PositionalStrategy {
            side: Side::Pursuers,
            choices: pursuer,
        },
        PositionalStrategy {
            side: Side::Survivor,
            choices: survivor,
        },
    )
}

/// True when repeatedly deleting dominated vertices (closed neighborhood
/// contained in a neighbor's) empties the graph down to one vertex. This
/// characterizes the graphs where one cop wins.
pub fn is_dismantlable(graph: &Graph) -> bool {
    let n = graph.vertex_count();
    let words = n.div_ceil(64);
    let mut alive = vec![true; n];
    let mut alive_count = n;
    while alive_count > 1 {
        let mut closed = vec![vec![0u64; words]; n];
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            closed[v][v / 64] |= 1 << (v % 64);
            for &w in graph.neighbors(v) {
                if alive[w] {
                    closed[v][w / 64] |= 1 << (w % 64);
                }
            }
        }
        let mut dominated = None;
        'scan: for v in 0..n {
            if !alive[v] {
                continue;
            }
            for u in 0..n {
                if u == v || !alive[u] {
                    continue;
                }
                if closed[v].iter().zip(&closed[u]).all(|(a, b)| a & !b == 0) {
                    dominated = Some(v);
                    break 'scan;
                }
            }
        }
        match dominated {
            Some(v) => {
                alive[v] = false;
                alive_count -= 1;
            }
            None => return false,
        }
    }
    true
}

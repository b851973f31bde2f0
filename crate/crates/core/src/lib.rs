//! Exact solver and strategy toolkit for vertex pursuit games on finite
//! connected graphs, covering zombies (forced geodesic movement) and cops.

pub mod dist;
pub mod error;
pub mod families;
pub mod graph;
pub mod policy;
pub mod rules;
pub mod simulate;
pub mod solver;
pub mod verify;

pub use dist::{geodesic_successors, DistanceMatrix};
pub use error::{
    GraphError, PolicyError, RulesError, SimulateError, SolveError, TraceError, VerifyError,
};
pub use families::{cartesian_product, PetalCycle, PetalDescriptor};
pub use graph::{Graph, VertexId, VertexLabel};
pub use policy::{
    Factor, GreedyPursuer, OptimalPursuer, OptimalSurvivor, PetalMemory, PetalSurvivorPolicy,
    ProductMemory, ProductZombiePolicy, PursuerPolicy, SurvivorPolicy,
};
pub use rules::{GameState, JointMove, PursuerKind, Rules, Side, SurvivorMove, TurnOrder};
pub use simulate::{simulate, Outcome, SimulationTrace, TracePhase, TraceStep};
pub use solver::{
    extract_strategies, is_dismantlable, pursuit_number, solve_fixed, Budget, MultisetIndex,
    PositionalStrategy, PursuitOutcome, SolveResult,
};
pub use verify::{verify_pursuer_policy, verify_survivor_policy, PursuerVerdict, SurvivorVerdict};

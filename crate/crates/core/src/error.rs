use crate::graph::VertexId;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("labels must assign every vertex a distinct label")]
    BadLabels,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulesError {
    #[error("move belongs to {got:?} but it is {expected:?} to move")]
    WrongSide {
        expected: crate::rules::Side,
        got: crate::rules::Side,
    },
    #[error("joint move lists {got} destinations for {expected} pursuers")]
    WrongArity { expected: usize, got: usize },
    #[error("illegal pursuer step {from} -> {to} (pursuer {index})")]
    IllegalPursuerStep {
        index: usize,
        from: VertexId,
        to: VertexId,
    },
    #[error("illegal survivor step {from} -> {to}")]
    IllegalSurvivorStep { from: VertexId, to: VertexId },
    #[error("no moves from a terminal state")]
    MoveFromTerminal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("arena of {required} states exceeds the budget of {budget} states")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("pursuer count must be at least 1")]
    NoPursuers,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("policy expects at most {max} pursuers, got {got}")]
    TooManyPursuers { got: usize, max: usize },
    #[error("policy expects exactly {expected} pursuers, got {got}")]
    WrongPursuerCount { expected: usize, got: usize },
    #[error("factor strategy has no move for the projected state (pursuers {pursuers:?}, survivor {survivor})")]
    FactorStrategyUndefined {
        pursuers: Vec<VertexId>,
        survivor: VertexId,
    },
    #[error("cycle entry safety violated at stage {stage}: pursuer at distance {distance}, expected <= {near} or >= {far}")]
    EntrySafetyViolated {
        stage: usize,
        distance: u32,
        near: u32,
        far: u32,
    },
    #[error("graph does not carry the labels this policy needs: {0}")]
    MissingLabels(String),
    #[error("pursuer positions do not match the policy's tracked positions")]
    PositionMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulateError {
    #[error("round {round}: {source}")]
    IllegalMove { round: usize, source: RulesError },
    #[error("round {round}: {source}")]
    Policy { round: usize, source: PolicyError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trace replay, {place}: {message}")]
    Replay { place: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("exploration exceeded the budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Rules(#[from] RulesError),
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge ({from}, {to}) references a vertex outside 0..{vertex_count}")]
    InvalidEdgeEndpoint {
        from: usize,
        to: usize,
        vertex_count: usize,
    },
    #[error("edge ({from}, {to}) has a negative or non-finite weight on channel `{channel}`")]
    NegativeWeight {
        from: usize,
        to: usize,
        channel: String,
    },
    #[error("a graph needs at least one weight channel")]
    EmptyChannelList,
    #[error("the first channel must be `distance`, got `{0}`")]
    FirstChannelNotDistance(String),
    #[error("duplicate channel `{0}`")]
    DuplicateChannel(String),
    #[error("edge ({from}, {to}) carries {got} weights, graph has {expected} channels")]
    WeightCountMismatch {
        from: usize,
        to: usize,
        got: usize,
        expected: usize,
    },
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("vertex {vertex} is not in the graph (0..{vertex_count})")]
    InvalidSource { vertex: usize, vertex_count: usize },

    #[error("unknown map character {ch:?} at line {line}, column {column}")]
    UnknownCharacter {
        ch: char,
        line: usize,
        column: usize,
    },
    #[error("map has no user start cells")]
    NoUsers,
    #[error("map is empty")]
    EmptyMap,
    #[error("user start at row {row}, column {column} is not a free cell")]
    UserOnWall { row: usize, column: usize },

    #[error("no sources given")]
    EmptySources,
    #[error("matrix has no rows")]
    EmptyMatrix,
    #[error("vector sums to zero")]
    ZeroSum,
    #[error("vector entry {0} is not finite")]
    NonFiniteEntry(usize),
    #[error("priority score {score} for user {user} is outside 0..=5")]
    ScoreOutOfRange { user: usize, score: u8 },
    #[error("user {user} has {got} priority scores, expected {expected}")]
    ScoreCountMismatch {
        user: usize,
        got: usize,
        expected: usize,
    },
    #[error("every priority score is zero")]
    AllZeroScores,
    #[error("objective weights must lie in [0, 1] and sum to 1")]
    InvalidObjectiveWeights,
    #[error("matrices disagree in shape, user order or weight count")]
    ShapeMismatch,
    #[error("score vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("no vertex is reachable by every user")]
    NoMutuallyReachableVertex,
    #[error("no candidate destination")]
    NoCandidate,

    #[error("destination {destination} is unreachable from vertex {position}")]
    UnreachableDestination { position: usize, destination: usize },
    #[error("simulation did not converge within {max_ticks} ticks")]
    MaxTicksExceeded {
        max_ticks: usize,
        trace: Box<crate::sim::SimTrace>,
    },
    #[error("max_ticks must be at least 1")]
    ZeroMaxTicks,

    #[error("trace parse error on line {line}: {message}")]
    TraceFormat { line: usize, message: String },
    #[error("trace does not fit the map: {0}")]
    TraceMapMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

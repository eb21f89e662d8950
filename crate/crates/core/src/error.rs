use thiserror::Error;

/// Grid node identified by its (u, v) indices and parameter values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub i: usize,
    pub j: usize,
    pub u: f64,
    pub v: f64,
}

impl std::fmt::Display for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "node ({}, {}) at (u, v) = ({}, {})", self.i, self.j, self.u, self.v)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("({u}, {v}) lies outside the surface domain")]
    Domain { u: f64, v: f64 },

    #[error("grid touches the singular set at {} node(s), first {first}", count)]
    SingularGrid { count: usize, first: Node },

    #[error("degenerate first fundamental form at (u, v) = ({u}, {v}): EG - F^2 = {det}")]
    DegenerateMetric { u: f64, v: f64, det: f64 },

    #[error("normal direction is not spacelike at (u, v) = ({u}, {v}); not a Lorentz surface")]
    NotLorentz { u: f64, v: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("surface is not of general type: {coefficient} vanishes at {param} = {value}")]
    NotGeneralType {
        coefficient: &'static str,
        param: &'static str,
        value: f64,
    },

    #[error("surface changes kind along the base line: {coefficient} changes sign at {param} = {value}")]
    KindChange {
        coefficient: &'static str,
        param: &'static str,
        value: f64,
    },

    #[error("requested value {value} lies outside the map range [{min}, {max}]")]
    Range { value: f64, min: f64, max: f64 },

    #[error("grid needs at least {needed} nodes per axis, got {nu} x {nv}")]
    Stencil { needed: usize, nu: usize, nv: usize },

    #[error("degenerate data at {node}: {quantity} = {value} is within tolerance of zero")]
    Degeneracy {
        node: Node,
        quantity: &'static str,
        value: f64,
    },

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("reconstruction aborted at {node}: {reason}")]
    Abort { node: Node, reason: String },

    #[error("residual {residual:e} exceeds {tolerance:e}; pass force to reconstruct anyway")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("unknown corpus surface `{0}`")]
    UnknownSurface(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

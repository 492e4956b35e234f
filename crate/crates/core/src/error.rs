use thiserror::Error;

/// Structural problems with an input document, detected before any axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration has no angles")]
    Empty,
    #[error("empty angle name")]
    EmptyAngleName,
    #[error("duplicate angle `{0}`")]
    DuplicateAngle(String),
    #[error("unknown angle `{name}` in {context}")]
    UnknownAngle { name: String, context: &'static str },
    #[error("angle `{0}` occurs in more than one cycle of g")]
    ActionNotBijective(String),
    #[error("angle `{name}` is covered more than once by partition {partition}")]
    OverlappingBlocks { name: String, partition: &'static str },
    #[error("angle `{name}` is not covered by partition {partition}")]
    UncoveredAngle { name: String, partition: &'static str },
    #[error("empty block in partition {0}")]
    EmptyBlock(&'static str),
    #[error("no degree given for angle `{0}`")]
    MissingDegree(String),
    #[error("degree of angle `{0}` must be a positive integer")]
    NonPositiveDegree(String),
    #[error("degree given twice for the orbit of `{0}`")]
    DuplicateOrbitDegree(String),
    #[error("exactly one of `d` and `d_orbit` must be present")]
    DegreeSpec,
    #[error("unrecognised value for L: `{0}` (expected \"trivial\" or a list of blocks)")]
    BadTrivialTag(String),
}

/// Violations of the Brauer configuration conditions in a presentation given by
/// vertices, a connection map, polygons, an orientation and multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BcError {
    #[error(transparent)]
    Structure(#[from] ConfigError),
    #[error("vertex `{0}` has no angle attached")]
    ConnectionNotSurjective(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("orientation cycle containing `{angle}` does not equal the fibre of vertex `{vertex}`")]
    OrientationFibre { angle: String, vertex: String },
    #[error("polygon {0:?} has fewer than two angles")]
    SmallPolygon(Vec<String>),
    #[error("polygon {0:?} violates condition (7): no angle h with |fibre(h)| * multiplicity > 1")]
    Condition7(Vec<String>),
    #[error("multiplicity of vertex `{0}` missing or not positive")]
    Multiplicity(String),
}

/// Refusals by operations that need more than the basic axioms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("configuration violates the axioms: {0}")]
    NotFbc(String),
    #[error("configuration is not of type S (witness {0}); use the congruence-closure engine")]
    NotTypeS(String),
    #[error("relation R is not transitive on {0}")]
    NotTransitive(String),
    #[error("engines disagree: {0}")]
    EngineMismatch(String),
    #[error("reconstruction refused: {0}")]
    Reconstruction(String),
}

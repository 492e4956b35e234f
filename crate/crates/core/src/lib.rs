//! Fractional Brauer configurations: axioms and classification, the quiver with
//! relations, the quotient algebra and its invariants, and the Gabriel
//! presentation with reconstruction from socle paths.
//!
//! ```
//! use fracbrauer::{io, algebra};
//!
//! let c = io::parse_configuration(r#"{
//!     "angles": ["e"], "P": [["e"]], "L": "trivial", "d": {"e": 2}
//! }"#).unwrap();
//! let t = algebra::congruence_closure(&c).unwrap();
//! assert_eq!(t.total_dim(), 3);
//! ```

pub mod algebra;
pub mod classify;
pub mod closure;
pub mod config;
pub mod corpus;
pub mod error;
pub mod gabriel;
pub mod io;
pub mod linalg;
pub mod path;
pub mod quiver;
pub mod random;
pub mod relations;
pub mod seq;

pub use algebra::{AlgebraTable, BasisClass, FrobeniusData, LoewyDiagram};
pub use classify::{classify, ClassificationReport};
pub use config::{Angle, AngleId, Axiom, AxiomReport, Configuration, Degrees, F6Mode, NakayamaMap};
pub use error::{AlgebraError, BcError, ConfigError};
pub use gabriel::{GabrielPresentation, ReconstructedConfiguration};
pub use path::{ArrowIx, Path, Vertex};
pub use quiver::{Arrow, Quiver};
pub use relations::{IdealGenerators, RClasses, Relation};
pub use seq::{PathKind, PathVerdict, SequenceIndex, StandardSequence};

//! The pregroup type calculus: simple and compound types, the contraction
//! rule, and the search for planar reduction diagrams.

mod diagram;
mod reduce;
mod types;

pub use diagram::{DiagramError, Link, ReductionDiagram};
pub use reduce::{enumerate_reductions, is_sentence, reduce};
pub use types::{contracts, parse_type, BasicType, PregroupType, SimpleType, TypeParseError};

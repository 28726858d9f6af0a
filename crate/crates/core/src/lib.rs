//! Sentence meanings from word meanings.
//!
//! Grammaticality is checked by pregroup type reduction ([`pregroup`]); the
//! reduction's cup diagram is then read as a linear map that contracts the
//! tensor product of the word tensors down to a sentence vector
//! ([`semantics`]). Word vectors come from corpus co-occurrence counts
//! ([`distributional`]) or from files and fixed constructions ([`lexicon`]).
//!
//! ```
//! use wordflow::pregroup::{parse_type, reduce, PregroupType};
//!
//! let seq = parse_type("n n^r s n^l n").unwrap();
//! let diagram = reduce(&seq, &PregroupType::sentence()).unwrap();
//! assert_eq!(diagram.links(), &[(0, 1), (3, 4)]);
//! assert_eq!(diagram.through(), &[2]);
//! ```

pub mod distributional;
pub mod exec;
pub mod lexicon;
pub mod pregroup;
pub mod semantics;

pub use exec::Execution;

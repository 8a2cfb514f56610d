//! Combinatorics on words: partial lexicographic order, n-divisibility,
//! heights over word sets, Dilworth decompositions, closed-form bounds,
//! permutation enumeration through RSK, Thue morphisms and exhaustive
//! extremal searches.

pub mod bounds;
pub mod divisibility;
pub mod enumeration;
pub mod error;
pub mod height;
pub mod poset;
pub mod precision;
pub mod search;
pub mod selftest;
pub mod thue;
pub mod word;

pub use error::{Error, Result};
pub use word::{compare, Alphabet, LexOrdering, Word};

//! Mealy automata over finite alphabets, the Aleshin and Bellaterra series,
//! and bounded machine checks for freeness, free products, identities,
//! duality and orbit structure.

pub mod error;
pub mod families;
pub mod machine;
pub mod orbits;
pub mod transforms;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use families::{Kind, Permutation, Scope};
pub use machine::{Alphabet, Limits, MealyMachine, PointedMachine};
pub use words::{Sign, SignedAlphabet, StateWord};

//! The stylic monoid and the combinatorics around it: Schensted insertion,
//! the action of words on columns, N-tableaux, set-partition evacuation,
//! the J-order, column rewriting and syntactic congruences.

pub mod columns;
pub mod error;
pub mod evacuation;
pub mod rewriting;
pub mod stylic;
pub mod syntactic;
pub mod tableaux;
pub mod verify;
pub mod word;

pub use columns::Column;
pub use error::{Error, Result};
pub use evacuation::{Composition, SkewPartition};
pub use stylic::{NTableau, SetPartition, StylicElement, StylicMonoid};
pub use tableaux::{Shape, Tableau};
pub use word::{Alphabet, Letter, LetterSet, LetterStyle, Word};

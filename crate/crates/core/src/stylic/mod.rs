//! N-tableaux, set partitions and the enumerated stylic monoid.

mod monoid;
mod ntableau;
mod partition;

pub use monoid::{
    complete_elements_bijection_check, CompleteElementsReport, JOrder, StylicElement, StylicMonoid,
    DEFAULT_ENUMERATION_LIMIT, FORCED_ENUMERATION_LIMIT,
};
pub use ntableau::{
    d_operator, delta_word, from_partition, left_insert, n_insert, n_tableau, pi, theta_tableau,
    to_partition, up, NTableau,
};
pub use partition::{bell, SetPartition};

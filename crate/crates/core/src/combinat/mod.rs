//! Partitions, compositions, tableaux, contingency matrices and the RSK
//! correspondence.

mod contingency;
mod partition;
mod rsk;
mod tableau;

pub use contingency::{contingency_matrices, ContingencyMatrix};
pub use partition::{join, meet, opp_dominance_leq, partitions_of, Composition, Partition};
pub use rsk::{rsk, rsk_inverse, rsk_inverse_sized};
pub use tableau::{
    is_permissible, kostka, permissible_matrices, sstd_enumerate, std_enumerate,
    tableau_of_intersection_matrix, Tableau,
};

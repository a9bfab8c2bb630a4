//! Fuzzy subsets of monoids and of `([0,1], C)`.

mod carrier;
mod checks;
mod special;
mod subset;

pub use carrier::{CarrierMonoid, Elem, FiniteMonoid};
pub use checks::{
    check_discrete_subalgebra, check_fuzzy_property, check_fuzzy_subgroup, check_fuzzy_subgroupoid,
    check_fuzzy_submonoid, check_not_strictly_decreasing, extract_core, l_nm, Core, FuzzyProperty,
    KindTag, SubstructureKind,
};
pub use special::*;
pub use subset::{intersect_fuzzy_subsets, FuzzySubset, Key};

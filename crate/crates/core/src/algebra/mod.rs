//! Order relations between games, number certificates and related searches.

pub mod certify;
pub mod classify;
pub mod numbers;
pub mod verdict;

pub use certify::{
    identify_number_value, is_infinitesimal_bounded, is_number, InfinitesimalVerdict,
    NumberCertificate, OptionCheck,
};
pub use classify::{
    classify, classify_vs_zero, compare, compare_auto, default_witness_pool, find_witness,
    is_certified_inverse, zero_sandwich, Classification, Comparison,
};
pub use numbers::{dyadic_copies, dyadic_form, integer_form, unit_dyadic, DyadicValue};
pub use verdict::{Evidence, Relation, RelationVerdict, Status, Theorem, VerdictSet, Witness};

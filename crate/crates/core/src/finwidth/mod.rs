//! Finite permutation groups: closures, conjugacy classes, widths with
//! respect to class-closed sets, and norms built from lengths and chains.

mod cayley;
mod group;
mod norms;
mod perm;
mod width;

pub use cayley::{grow_balls, Balls, DEFAULT_SIZE_LIMIT};
pub use group::{
    class_closure, named, named_group, ClassClosedSet, ElemSet, FiniteGroup, GroupSpec, Quotient,
};
pub use norms::{
    chain_from_action, chain_norm, induced_metric, word_norm, ActionChain, FiniteAction,
    MetricTable, MetricViolation, NormTable, NormViolation, SubgroupChain,
};
pub use perm::{Perm, PermSpec};
pub use width::{
    bergman_lemma_check, extension_bound_check, minimal_bergman_radius, trivlemma_bound_check,
    width, word_lengths, BergmanReport, ExtensionReport, TrivLemmaReport, WidthReport,
};

//! Surface-kernel epimorphisms `Γ(σ) → G`: exhaustive search, kernel counts,
//! quotient surfaces, braid equivalence and regular (hyper)map invariants.

mod braid;
mod hypermap;
mod quotient;
mod search;
mod tuple;

pub use braid::{braid_move, braid_orbits, kernel_key, topological_classes, BraidOrbit, KernelKey};
pub use hypermap::{
    analyse_hypermaps, commutator_order, full_automorphism_type, hall_test, inverting_automorphism, is_reflexible,
    mirror, nonorientable_petrie_length, petrie_length, triality_images, FullAutType, HallVerdict, HypermapAnalysis,
    KernelHypermap, TrialityOp,
};
pub use quotient::{quotient_data, QuotientData};
pub use search::{
    count_epimorphisms, count_kernels, count_kernels_with, enumerate_epimorphisms, enumerate_epimorphisms_with,
    find_epimorphism, find_epimorphism_ordered, set_default_budget, EpimorphismSet, KernelClass, SearchOptions,
    DEFAULT_SEARCH_BUDGET,
};
pub use tuple::{GeneratingTuple, TupleJson};

#[cfg(test)]
mod tests;

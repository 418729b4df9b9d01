//! Brute-force oracles and instance generators backing the acceptance
//! suite. Everything here trades speed for obviousness: subspaces are
//! enumerated outright, closure is checked definitionally, and random
//! parallel pairs come from seeded generators so failures replay.

pub mod enumerate;
pub mod instances;
pub mod oracle;

pub use enumerate::{
    enumerate_grouplikes, enumerate_subspaces, field_elements, gaussian_binomial, subspace_count,
};
pub use instances::{
    comatrix_conjugation, curated_f2_coalgebras, dual_upper_triangular, random_parallel_pair,
    ParallelPair,
};
pub use oracle::{brute_force_equalizer_carrier, brute_force_largest_subcoalgebra};

//! The cyclic bar construction, Hochschild homology and cyclic homology.

mod cyclic;
mod cyclic_homology;
mod normalized;
pub mod tensor;

pub use cyclic::{CyclicModule, DEFAULT_LEVEL_CAP};
pub use cyclic_homology::{cyclic_homology, induced_chain_map, total_complex};
pub use normalized::{hochschild_homology, HochschildHomology, HomologyClass, NormalizedComplex, UnitFirstFrame};

/// Default top degree for homology tables.
pub const DEFAULT_MAX_DEGREE: usize = 4;

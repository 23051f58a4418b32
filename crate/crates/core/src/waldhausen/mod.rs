//! Finite Waldhausen categories, the S-construction and K-theory diagrams.

pub mod category;
pub mod cube;
pub mod end;
pub mod families;
pub mod fixtures;
pub mod k0;
pub mod sdot;
pub mod sigma_delta;
pub mod validate;

pub use end::{end_category, EndCategory, ExactFunctor};
pub use category::{CategoryTables, FiniteWaldhausenCategory, Morphism, PushoutWitness};
pub use families::{finite_modules, pointed_sets, trivial, vect_gf};
pub use validate::validate_waldhausen;
pub use cube::Cube;
pub use sdot::{check_s_diagram, s_diagrams, s_k_objects};
pub use k0::{grothendieck_k0, induced_k0_map, k0_via_sdot, ws_diagonal, GrothendieckGroup, SdotK0, WsDiagonal};
pub use sigma_delta::{free_sigma_delta, ktheory_sigma_delta, ktheory_sigma_delta_with, sigma_delta_validate, Op, SigmaDeltaDiagram, SigmaDeltaLimits};
pub use fixtures::{corrupted_fixtures, CorruptedFixture};

//! Exact linear algebra: dense and sparse matrices, Smith normal form,
//! homology of chain complexes and membership queries.

mod homology;
mod matrix;
pub mod snf;
pub mod sparse;

pub use homology::{solve_membership, ChainComplex, FPAbelianGroup, Homology, HomologyStructure, Membership};
pub use matrix::{is_inverse_pair, Matrix};
pub use snf::{smith_normal_form, smith_normal_form_with, SmithForm, Tracking};
pub use sparse::{SparseMatrix, SparseVec};

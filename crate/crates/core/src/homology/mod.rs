//! Chain complexes, Smith normal form and integral homology of cubical and
//! simplicial sets.
//!
//! Cubical chains use the sign convention `Σₖ (−1)ᵏ (∂_{k,1} − ∂_{k,0})`.
//! Any consistent choice gives the same homology.

mod chain;
mod chains;
mod compute;
mod simplicial;
mod snf;
mod triangulate;

pub use chain::{ChainComplex, ChainMap, SparseMatrix};
pub use chains::{cubical_chains, simplicial_chains};
pub use compute::{eliminate, homology, DegreeHomology, Elimination, HomologyReport};
pub use simplicial::{
    circle, collapse_positions, point, simplicial_coproduct, standard_simplex, surjection_values,
    wedge_of_intervals, SimplicialSet,
};
pub use snf::{determinant, identity as big_identity, mat_mul, smith_normal_form, BigMatrix, SmithForm};
pub use triangulate::{ordered_partitions, triangulate, triangulate_with_origin, Triangulation};

use crate::cubical::CubicalSet;
use crate::error::Result;

/// Which chain model to compute homology from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Cubical,
    Triangulated,
}

pub fn cubical_homology(x: &CubicalSet, pipeline: Pipeline) -> Result<HomologyReport> {
    match pipeline {
        Pipeline::Cubical => homology(&cubical_chains(x)),
        Pipeline::Triangulated => homology(&simplicial_chains(&triangulate(x)?)),
    }
}

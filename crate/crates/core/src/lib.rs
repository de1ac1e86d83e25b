//! Exact link homology: Khovanov homology from planar diagrams, tilde and hat
//! grid homology with basepoint operators, grid skein maps, and drivers that
//! check Conway mutation invariance on concrete links.

pub mod algebra;
pub mod basepoints;
pub mod diagrams;
pub mod grid;
pub mod khovanov;
pub mod mutation;
pub mod skein;

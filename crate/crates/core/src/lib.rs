//! Exact fixed-point lower bounds for Hamiltonian diffeomorphisms.
//!
//! The crate evaluates the combinatorial side of Floer-theoretic fixed-point
//! estimates: Novikov-ring arithmetic, non-Archimedean linear algebra, small
//! quantum homology rings with explicit presentations, root-system data of
//! coadjoint orbits, toric weight data and a minmax selector over filtered
//! chain complexes. All arithmetic is over exact rationals.

pub mod rat;
pub mod novikov;
pub mod qlinalg;
pub mod nalinalg;
pub mod quantum;
pub mod roots;
pub mod toric;
pub mod ls;
pub mod bounds;
pub mod cli;

//! Cell models for moduli spaces of two-dimensional cobordisms.
//!
//! Two combinatorial models are implemented side by side: radial slit
//! combinatorial types ([`radial`]) and Sullivan diagrams ([`sullivan`]).
//! The [`critical`] module maps slit types to admissible fat graphs
//! ([`graph`]), and [`homology`] builds integer cellular chain complexes for
//! both models so that they can be compared cell by cell.

pub mod cli;
pub mod critical;
pub mod graph;
pub mod homology;
pub mod radial;
pub mod sullivan;

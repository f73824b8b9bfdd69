//! Weierstrass curves over exact fields, torsion subgroups, and the rank of
//! their torsion sections.

pub mod aut;
pub mod curve;
pub mod divpoly;
pub mod function;
pub mod rank;
pub mod sample;
pub mod survey;
pub mod torsion;

pub use curve::{curve_from_j, Curve, Point};
pub use torsion::Subgroup;

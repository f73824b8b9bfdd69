pub mod cyclo;
pub mod factor;
pub mod ffpoly;
pub mod field;
pub(crate) mod fpoly;
pub mod gf;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod series;

pub use cyclo::Cyclo;
pub use field::{FiniteField, Field};
pub use gf::{Embedding, Fp, Gf, GfCtx};
pub use poly::UPoly;
pub use rational::Rational;
pub use series::LaurentSeries;

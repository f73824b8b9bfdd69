//! Tate-curve q-expansions: theta quotients for the sections and their
//! character sums, the hauptmodul `t` of `X_0(N)`, and recognition of the
//! exceptional polynomials.

pub mod theta;
pub mod modular;
pub mod recognize;
pub mod exceptional;

//! Exact computer-algebra toolkit for singular curves and surfaces arising
//! from invariants of complex reflection groups: number-field arithmetic,
//! sparse multivariate polynomials, Groebner bases, group models, invariant
//! theory, pencil scans, singularity certification and reporting.

pub mod field;
pub mod interval;
pub mod poly;
pub mod unipoly;
pub mod ideal;
pub mod modp;
pub mod zerodim;
pub mod group;
pub mod invariant;
pub mod pencil;
pub mod singular;
pub mod report;
pub mod render;

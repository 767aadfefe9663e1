//! Exact arithmetic layer: coefficient domains, graded polynomial rings,
//! parsing, and polynomial matrices.

pub mod coeff;
pub mod matrix;
pub mod parse;
pub mod poly;

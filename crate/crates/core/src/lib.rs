//! Exact symbolic Donaldson series for simple-type 4-manifolds and the
//! gluing formulas for fiber sums along genus-2 surfaces.

pub mod catalog;
pub mod donaldson;
pub mod error;
pub mod floer;
pub mod gluing;
pub mod lattice;
pub mod linalg;
pub mod manifest;
pub mod number;
mod poly;
pub mod ray;
pub mod regression;
pub mod series;


pub use error::{Error, Result};
pub use lattice::{adjunction_check, pair, validate_allowable, IntersectionLattice, LatticeClass};
pub use number::{GaussianRational, Rational};
pub use ray::RaySeries;
pub use series::{DSeries, ExpTerm, ExpansionTable};

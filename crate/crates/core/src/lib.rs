//! Exact computations with EPW sextics: Lagrangian subspaces of the third
//! exterior power of a six-dimensional space, the degree-six hypersurfaces
//! they define, their special members, and the plane families they contain.

pub mod chow;
pub mod epw;
pub mod error;
pub mod exterior;
pub mod field;
pub mod grassmann;
pub mod io;
pub mod lagrangian;
pub mod matrix;
pub mod menagerie;
pub mod morin;
pub mod poly;
pub mod quadform;
pub mod report;
pub mod subspace;
pub mod verify;

pub use error::{EpwError, Result};
pub use field::{Field, PrimeField, Rationals, Q};
pub use matrix::Mat;
pub use poly::MultiPoly;
pub use subspace::Subspace;

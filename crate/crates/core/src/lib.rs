//! Exact computation of independence systems and matroids arising from
//! matrices and linear codes over finite commutative local rings.

pub mod codes;
pub mod enumgeo;
pub mod error;
pub mod gallery;
pub mod indepsys;
pub mod limits;
pub mod linalg;
pub mod modindep;
pub mod oracle;
pub mod random;
pub mod rings;

pub use error::{Error, Result};
pub use rings::{make_ring, Elem, Ring};

//! Exact computation of nonsymmetric Macdonald polynomials specialised at
//! `t = ∞` (quantum alcove paths) and `t = 0` (affine Demazure operators),
//! together with the characters of the associated cyclic modules.

pub mod affweyl;
pub mod charring;
pub mod demazure;
pub mod error;
pub mod macdinf;
pub mod qbgpath;
pub mod rootsys;
pub mod verify_orth;

pub use error::{Error, Result};

//! Exact-arithmetic toolkit for plane projective curves with nodes and
//! cusps: singularity classification, adjoint linear systems and
//! interpolation normality, Brill-Noether multiplication maps, and the
//! numerology of families of curves with prescribed singularities.

pub mod analysis;
pub mod brill_noether;
pub mod constructions;
pub mod error;
pub mod field;
pub mod form;
pub mod io;
pub mod matrix;
pub mod normality;
pub mod numerology;
pub mod point;
pub mod resultant;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use form::TernaryForm;
pub use matrix::ExactMatrix;
pub use point::ProjPoint;

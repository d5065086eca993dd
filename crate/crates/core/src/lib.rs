//! Affine variety codes over small finite fields.
//!
//! The crate builds evaluation codes from polynomial ideals: Buchberger's
//! algorithm with field equations, footprint (staircase) enumeration,
//! weight bounds derived from coefficient case analyses, exact minimum and
//! relative distances by exhaustive enumeration or MacWilliams transform,
//! primary descriptions of dual codes via evaluation-matrix inversion, and
//! CSS asymmetric quantum code parameters from nested code pairs.

pub mod gf;
pub mod groebner;
pub mod poly;

//! Exact computations on classical root systems, their affine extensions and
//! the loop algebras built from them.
//!
//! Everything here works over exact rationals ([`Q`]) or machine integers.
//! The modules are layered bottom-up:
//!
//! * [`rootsys`]: classical finite root data with Killing-normalized pairing.
//! * [`affine`]: crossings on the extended diagram and the parabolic
//!   subalgebras of the loop algebra they determine.
//! * [`autgrp`]: automorphisms of extended Dynkin diagrams acting on crossings.
//! * [`weyl`]: the affine Weyl group, lengths, Hasse diagrams of parabolics.
//! * [`degcalc`]: Levi projection constants and degree formulas.
//! * [`sheafseq`]: index bookkeeping for the nested sheaf sequences.
//! * [`laurent`]: Laurent-polynomial matrices and the outer conjugations.
//! * [`monad`]: monad data `(A, B, C, D)` and its Hecke transform.

pub mod affine;
pub mod autgrp;
pub mod degcalc;
mod error;
pub mod laurent;
pub mod linalg;
pub mod monad;
pub mod rootsys;
pub mod sheafseq;
pub mod weyl;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = num_rational::BigRational;

/// Shorthand for building a rational from a numerator and denominator.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Shorthand for an integral rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

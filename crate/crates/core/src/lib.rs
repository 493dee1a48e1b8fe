//! Classification of genus-2 curves `y^2 + y = u(x)` over binary fields
//! F_{2^m} up to isomorphism over the base field.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: arithmetic in F_{2^m}, traces, Artin–Schreier solving and
//!   F_2-linear algebra.
//! * [`polyrat`]: polynomials, rational functions, factorization, Hasse
//!   reduction of pole orders, Möbius maps and extension fields.
//! * [`models`]: the five normal-form families, their symmetry groups,
//!   canonical forms, isomorphism testing and automorphism groups.
//! * [`invariants`]: Igusa j-invariants and curves with prescribed j.
//! * [`twists`]: twists of a curve, with explicit isomorphisms over
//!   extension fields.
//! * [`census`]: exhaustive enumeration and the counting identities.
//! * [`text`]: the line-oriented text formats used by the CLI.

pub mod census;
pub mod error;
pub mod field;
pub mod invariants;
pub mod models;
pub mod polyrat;
pub mod text;
pub mod twists;

pub use error::{Error, Result};
pub use field::{FieldCtx, Fq};
pub use models::{CurveCtx, CurveModel, NormalModel};
pub use polyrat::Family;

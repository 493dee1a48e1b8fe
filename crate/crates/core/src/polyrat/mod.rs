//! Polynomials and rational functions over F_{2^m}.

pub mod cubic;
pub mod ext;
pub mod factor;
pub mod hasse;
pub mod mobius;
pub mod poly;
pub mod ratfn;

pub use cubic::{cubic_normalize, CubicNormal};
pub use ext::ExtField;
pub use factor::{factor, roots, set_split_seed};
pub use hasse::{as_reduce, poles, ram_profile, Family, Place, RamProfile};
pub use mobius::{mobius_from_triple, mobius_through, Mobius, P1Point};
pub use poly::Poly;
pub use ratfn::RatFn;

//! Exact finite computations around Burnside rings, Bernoulli shifts and the
//! K-theory of wreath products.
//!
//! Everything here works with explicit element tables and integer
//! arithmetic; resource limits are set through [`Caps`].

pub mod burnside;
pub mod caps;
pub mod error;
pub mod groups;
pub mod gsets;
pub mod izumi;
pub mod ktheory;

pub use caps::Caps;
pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/gsets.md")]
    mod gsets {}
    #[doc = include_str!("../../../book/src/burnside.md")]
    mod burnside {}
    #[doc = include_str!("../../../book/src/izumi.md")]
    mod izumi {}
    #[doc = include_str!("../../../book/src/ktheory.md")]
    mod ktheory {}
}

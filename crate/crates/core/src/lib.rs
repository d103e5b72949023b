//! Identities of the derived operations `x ≺ y = x·d(y)` and `x ≻ y = d(x)·y`
//! on algebras with a derivation `d`.
//!
//! For a variety `Var` given by multilinear identities of degree 2 and 3,
//! the identities satisfied by `≺`/`≻` on every differential `Var`-algebra
//! are the relations of the Manin white product `Var ∘ Nov`. This crate
//! computes both sides exactly, arity by arity:
//!
//! * [`products`] evaluates the white product as the kernel of an
//!   evaluation map into `Var(n) ⊗ Nov(n)`;
//! * [`oracle`] expands `≺`/`≻` words in the free differential algebra and
//!   tests each derivative pattern against `Var(n)`;
//! * [`hat`] runs the embedding `A → A ⊗ H` into the divided-power Novikov
//!   algebra on random elements.
//!
//! ```
//! use derived_identities::presentation::{builtin, ComponentCache};
//! use derived_identities::products::derived_identities;
//!
//! let cache = ComponentCache::new();
//! let lie = builtin("lie")?;
//! let r = derived_identities(&cache, &lie, 3)?;
//! assert_eq!(r.image_dim(), 12);
//! assert!(r.essential().is_zero());
//! # Ok::<(), derived_identities::Error>(())
//! ```
//!
//! Everything is exact rational arithmetic; no floating point is involved.

pub mod cli;
pub mod error;
pub mod freeop;
pub mod hat;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod presentation;
pub mod products;

pub use error::{Error, ParseError, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/monomials.md")]
    mod monomials {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/varieties.md")]
    mod varieties {}
    #[doc = include_str!("../../../book/src/white-product.md")]
    mod white_product {}
    #[doc = include_str!("../../../book/src/differential-oracle.md")]
    mod differential_oracle {}
    #[doc = include_str!("../../../book/src/hat-construction.md")]
    mod hat_construction {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! The free nonassociative operad on a finite alphabet of binary operations:
//! multilinear monomials, their canonical enumeration, the symmetric-group
//! action on leaf labels, and operadic grafting.

mod basis;
mod monomial;
mod perm;
mod poly;

pub use basis::{enumerate_monomials, Basis};
pub use monomial::{Monomial, Node, Tree, TreeShape};
pub use perm::Perm;
pub use poly::{act, graft_poly, Poly};

/// Position of `m` in [`enumerate_monomials`]`(arity, k)`.
pub fn index_of(m: &Monomial, k: usize) -> crate::Result<usize> {
    Basis::new(m.arity(), k)?.index_of(m)
}

/// The monomial at position `index` of [`enumerate_monomials`]`(n, k)`.
pub fn monomial_at(n: usize, k: usize, index: usize) -> crate::Result<Monomial> {
    Basis::new(n, k)?.monomial_at(index)
}

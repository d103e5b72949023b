use num_traits::Zero;

use super::{relation_subspace_bounded, OperadPresentation, DEFAULT_ARITY_BOUND};
use crate::error::{Error, Result};
use crate::freeop::{Basis, Poly};
use crate::linalg::{Rational, SparseVector, Subspace};

/// `Var(n)`: the quotient of `M_n` by the multilinear relations.
///
/// The quotient is identified with the span of the *normal* monomials, the
/// non-pivot columns of the relation basis. Every monomial's normal form is
/// precomputed.
#[derive(Clone, Debug)]
pub struct Component {
    name: String,
    hash: String,
    basis: Basis,
    relations: Subspace,
    normal_basis: Vec<usize>,
    projection: Vec<SparseVector>,
}

impl Component {
    /// Builds the component from an already computed relation space.
    pub fn from_relations(p: &OperadPresentation, n: usize, relations: Subspace) -> Result<Self> {
        let basis = Basis::new(n, p.alphabet())?;
        if relations.ambient() != basis.len() {
            return Err(Error::AmbientMismatch(basis.len(), relations.ambient()));
        }
        let mut pivot_row = vec![None; basis.len()];
        for (i, row) in relations.rows().iter().enumerate() {
            pivot_row[row.leading().expect("nonzero").0] = Some(i);
        }
        let normal_basis: Vec<usize> = (0..basis.len()).filter(|j| pivot_row[*j].is_none()).collect();
        let mut position = vec![usize::MAX; basis.len()];
        for (pos, &j) in normal_basis.iter().enumerate() {
            position[j] = pos;
        }
        let dim = normal_basis.len();
        let projection = (0..basis.len())
            .map(|j| match pivot_row[j] {
                None => SparseVector::unit(dim, position[j]),
                Some(i) => SparseVector::from_entries(
                    dim,
                    relations.rows()[i]
                        .iter()
                        .filter(|(c, _)| *c != j)
                        .map(|(c, v)| (position[c], -v.clone()))
                        .collect(),
                ),
            })
            .collect();
        Ok(Component {
            name: p.name().to_string(),
            hash: p.content_hash(),
            basis,
            relations,
            normal_basis,
            projection,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation_hash(&self) -> &str {
        &self.hash
    }

    pub fn arity(&self) -> usize {
        self.basis.arity()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Indices (in the monomial basis) of the normal monomials.
    pub fn normal_basis(&self) -> &[usize] {
        &self.normal_basis
    }

    pub fn dim(&self) -> usize {
        self.normal_basis.len()
    }

    /// Normal-form coordinates of the monomial with basis index `index`.
    pub fn normal_form_of_index(&self, index: usize) -> &SparseVector {
        &self.projection[index]
    }

    fn check(&self, p: &Poly) -> Result<()> {
        if p.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: p.arity(),
            });
        }
        if p.alphabet() != self.basis.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: self.basis.alphabet(),
                right: p.alphabet(),
            });
        }
        Ok(())
    }

    pub fn normal_form_sparse(&self, p: &Poly) -> Result<SparseVector> {
        self.check(p)?;
        let mut acc = SparseVector::zero(self.dim());
        for (m, c) in p.terms() {
            acc.axpy(c, &self.projection[self.basis.index_of(m)?]);
        }
        Ok(acc)
    }

    /// Coordinates of `p` modulo the relations, over [`Self::normal_basis`].
    pub fn normal_form(&self, p: &Poly) -> Result<Vec<Rational>> {
        Ok(self.normal_form_sparse(p)?.to_dense())
    }

    /// The polynomial in normal monomials with the given coordinates.
    pub fn lift(&self, coords: &[Rational]) -> Result<Poly> {
        if coords.len() != self.dim() {
            return Err(Error::AmbientMismatch(self.dim(), coords.len()));
        }
        let terms = coords
            .iter()
            .zip(&self.normal_basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &j)| Ok((self.basis.monomial_at(j)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(self.arity(), self.basis.alphabet(), terms)
    }

    pub fn is_identity(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form_sparse(p)?.is_zero())
    }
}

/// Uncached `Var(n)` with the default arity bound.
pub fn component(p: &OperadPresentation, n: usize) -> Result<Component> {
    let relations = relation_subspace_bounded(p, n, DEFAULT_ARITY_BOUND)?;
    Component::from_relations(p, n, relations)
}

pub fn normal_form(p: &OperadPresentation, n: usize, poly: &Poly) -> Result<Vec<Rational>> {
    if poly.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: poly.arity(),
        });
    }
    component(p, n)?.normal_form(poly)
}

/// Whether `poly` holds identically in the variety of `p`.
pub fn is_identity(p: &OperadPresentation, poly: &Poly) -> Result<bool> {
    component(p, poly.arity())?.is_identity(poly)
}

use std::collections::BTreeMap;

use num_traits::Zero;

use super::basis::Basis;
use super::monomial::{Monomial, Tree};
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseVector};

/// A rational combination of multilinear monomials of one arity over one
/// alphabet. Zero coefficients are never stored and terms iterate in
/// canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    alphabet: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(arity: usize, alphabet: usize) -> Self {
        Poly {
            arity,
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial, alphabet: usize) -> Result<Self> {
        Self::from_terms(m.arity(), alphabet, [(m, Rational::from_integer(1.into()))])
    }

    pub fn from_tree(tree: &Tree, alphabet: usize) -> Result<Self> {
        Self::monomial(Monomial::from_tree(tree)?, alphabet)
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms(
        arity: usize,
        alphabet: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(arity, alphabet);
        for (m, c) in terms {
            p.check_monomial(&m)?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: m.arity(),
            });
        }
        if let Some(op) = m.max_op() {
            if op as usize >= self.alphabet {
                return Err(Error::OpOutOfRange {
                    op: op as usize,
                    alphabet: self.alphabet,
                });
            }
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity, self.alphabet);
        }
        Poly {
            arity: self.arity,
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Relabels every leaf `i` as `σ(i)`.
    pub fn act(&self, sigma: &Perm) -> Result<Poly> {
        if sigma.degree() != self.arity {
            return Err(Error::DegreeMismatch {
                perm: sigma.degree(),
                poly: self.arity,
            });
        }
        let mut out = Poly::zero(self.arity, self.alphabet);
        for (m, c) in &self.terms {
            out.add_term(m.relabel(sigma.images0()), c.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of [`Monomial::graft`].
    pub fn graft(&self, position: usize, inner: &Poly) -> Result<Poly> {
        if self.alphabet != inner.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: inner.alphabet,
            });
        }
        if position == 0 || position > self.arity {
            return Err(Error::PositionOutOfRange {
                position,
                arity: self.arity,
            });
        }
        let mut out = Poly::zero(self.arity + inner.arity - 1, self.alphabet);
        for (a, ca) in &self.terms {
            for (b, cb) in &inner.terms {
                out.add_term(a.graft(position, b)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Coordinates in the canonical basis of matching arity and alphabet.
    pub fn to_sparse(&self, basis: &Basis) -> Result<SparseVector> {
        if basis.arity() != self.arity || basis.alphabet() != self.alphabet {
            return Err(Error::ArityMismatch {
                expected: basis.arity(),
                found: self.arity,
            });
        }
        let mut entries = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            entries.push((basis.index_of(m)?, c.clone()));
        }
        Ok(SparseVector::from_entries(basis.len(), entries))
    }

    pub fn from_sparse(basis: &Basis, v: &SparseVector) -> Result<Poly> {
        let mut p = Poly::zero(basis.arity(), basis.alphabet());
        for (i, c) in v.iter() {
            p.add_term(basis.monomial_at(i)?, c.clone());
        }
        Ok(p)
    }
}

/// `σ · p`, see [`Poly::act`].
pub fn act(sigma: &Perm, p: &Poly) -> Result<Poly> {
    p.act(sigma)
}

/// Operadic partial composition of polynomials, see [`Poly::graft`].
pub fn graft_poly(outer: &Poly, position: usize, inner: &Poly) -> Result<Poly> {
    outer.graft(position, inner)
}

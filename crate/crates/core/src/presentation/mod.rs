//! Varieties of algebras given by generators and relations, and their
//! arity components `Var(n) = M_n / (M_n ∩ T-ideal)`.

mod builtin;
mod cache;
mod component;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::freeop::{Basis, Monomial, Node, Perm, Poly, Tree};
use crate::linalg::{EchelonBuilder, SparseVector, Subspace};

pub use builtin::{builtin, BUILTIN_NAMES};
pub use cache::{ComponentCache, ComponentStore, cache_key};
pub use component::{component, is_identity, normal_form, Component};

/// Components are computed up to this arity unless a cache says otherwise.
pub const DEFAULT_ARITY_BOUND: usize = 5;

/// A binary operad presented by named operations and multilinear relations
/// of arity 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadPresentation {
    name: String,
    ops: Vec<String>,
    rel2: Vec<Poly>,
    rel3: Vec<Poly>,
}

impl OperadPresentation {
    pub fn new(
        name: impl Into<String>,
        ops: Vec<String>,
        rel2: Vec<Poly>,
        rel3: Vec<Poly>,
    ) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let k = ops.len();
        for (expected, list) in [(2, &rel2), (3, &rel3)] {
            for r in list {
                if r.arity() != expected {
                    return Err(Error::ArityMismatch {
                        expected,
                        found: r.arity(),
                    });
                }
                if r.alphabet() != k {
                    return Err(Error::AlphabetMismatch {
                        left: k,
                        right: r.alphabet(),
                    });
                }
            }
        }
        Ok(OperadPresentation {
            name: name.into(),
            ops,
            rel2,
            rel3,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ops(&self) -> &[String] {
        &self.ops
    }

    pub fn alphabet(&self) -> usize {
        self.ops.len()
    }

    pub fn rel2(&self) -> &[Poly] {
        &self.rel2
    }

    pub fn rel3(&self) -> &[Poly] {
        &self.rel3
    }

    pub fn relations(&self) -> impl Iterator<Item = &Poly> {
        self.rel2.iter().chain(&self.rel3)
    }

    /// Hex SHA-256 of the operation count and relations. Operation names and
    /// the presentation name do not enter: renaming does not change the
    /// operad.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("ops {}\n", self.ops.len()));
        for r in self.relations() {
            h.update(format!("rel {}\n", r.arity()));
            for (m, c) in r.terms() {
                let code: String = m
                    .shape()
                    .code()
                    .iter()
                    .map(|n| if *n == Node::Internal { 'N' } else { 'L' })
                    .collect();
                h.update(format!("{code} {:?} {:?} {c}\n", m.ops(), m.leaves()));
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Every arity-2 monomial over `k` operations, as polynomials.
pub(crate) fn generator_monomials(k: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(2 * k);
    for op in 0..k as u8 {
        for (a, b) in [(0, 1), (1, 0)] {
            let t = Tree::node(op, Tree::Leaf(a), Tree::Leaf(b));
            out.push(Poly::from_tree(&t, k).expect("valid generator"));
        }
    }
    out
}

/// The `S_n`-closed span of everything derivable from `relations` at arity
/// `n`: relations of arity `m` seed level `m`, each level is grafted with
/// the arity-2 generators in every position and order to seed the next,
/// and every level is closed under the symmetric group.
///
/// Relations may have any arity from 2 up; those above `n` are ignored.
pub fn consequence_space(alphabet: usize, relations: &[Poly], n: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::ZeroArity);
    }
    for r in relations {
        if r.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch {
                left: alphabet,
                right: r.alphabet(),
            });
        }
    }
    let generators = generator_monomials(alphabet);
    let mut previous: Option<(Basis, Subspace)> = None;
    for m in 1..=n {
        let basis = Basis::new(m, alphabet)?;
        let mut echelon = EchelonBuilder::new(basis.len());
        let mut queue: Vec<SparseVector> = Vec::new();
        let mut push = |v: SparseVector, echelon: &mut EchelonBuilder| {
            if echelon.insert(&v) {
                queue.push(v);
            }
        };
        for r in relations.iter().filter(|r| r.arity() == m) {
            push(r.to_sparse(&basis)?, &mut echelon);
        }
        if let Some((prev_basis, prev_space)) = &previous {
            for row in prev_space.rows() {
                let r = Poly::from_sparse(prev_basis, row)?;
                for g in &generators {
                    for i in 1..m {
                        push(r.graft(i, g)?.to_sparse(&basis)?, &mut echelon);
                    }
                    for j in 1..=2 {
                        push(g.graft(j, &r)?.to_sparse(&basis)?, &mut echelon);
                    }
                }
            }
        }
        symmetric_closure(&basis, &mut echelon, queue);
        previous = Some((basis, Subspace::from_echelon(echelon)));
    }
    Ok(previous.expect("n >= 1").1)
}

/// Extends `echelon` until it is stable under `S_n`, starting from the
/// vectors in `queue` (which must span what has been inserted so far).
pub(crate) fn symmetric_closure(basis: &Basis, echelon: &mut EchelonBuilder, mut queue: Vec<SparseVector>) {
    if queue.is_empty() {
        return;
    }
    let tables: Vec<Vec<usize>> = Perm::adjacent_transpositions(basis.arity())
        .iter()
        .map(|s| basis.action_table(s))
        .collect();
    while let Some(v) = queue.pop() {
        for t in &tables {
            let w = v.permute(t);
            if echelon.insert(&w) {
                queue.push(w);
            }
        }
    }
}

/// The `S_n`-closure of the span of `vectors`.
pub fn symmetric_span(basis: &Basis, vectors: &[SparseVector]) -> Subspace {
    let mut echelon = EchelonBuilder::new(basis.len());
    let mut queue = Vec::new();
    for v in vectors {
        if echelon.insert(v) {
            queue.push(v.clone());
        }
    }
    symmetric_closure(basis, &mut echelon, queue);
    Subspace::from_echelon(echelon)
}

/// The multilinear relations of `p` at arity `n`, i.e. `M_n ∩ T_p`.
pub fn relation_subspace(p: &OperadPresentation, n: usize) -> Result<Subspace> {
    relation_subspace_bounded(p, n, DEFAULT_ARITY_BOUND)
}

pub fn relation_subspace_bounded(p: &OperadPresentation, n: usize, bound: usize) -> Result<Subspace> {
    if n == 0 || n > bound {
        return Err(Error::ArityOutOfBounds { n, bound });
    }
    let relations: Vec<Poly> = p.relations().cloned().collect();
    consequence_space(p.alphabet(), &relations, n)
}

/// Convenience used by the builtins: the single-monomial polynomial of a tree.
pub(crate) fn mono(t: Tree, k: usize) -> Poly {
    Poly::monomial(Monomial::from_tree(&t).expect("valid tree"), k).expect("valid alphabet")
}

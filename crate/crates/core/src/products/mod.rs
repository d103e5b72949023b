//! Hadamard pairing of components and the white product.
//!
//! The white product `P ∘ Q` is computed at arity `n` as the kernel of the
//! evaluation map `Φ : M_n(pair alphabet) → P(n) ⊗ Q(n)`. A pair symbol
//! carries a `P`-operation, a `Q`-operation and an orientation; the aligned
//! symbol evaluates to `m_j(x1,x2) ⊗ q_l(x1,x2)`, the crossed one to
//! `m_j(x1,x2) ⊗ q_l(x2,x1)`. With `Q = nov` these are `≺` and `≻`.

use crate::error::{Error, Result};
use crate::freeop::{Basis, Monomial, Poly, Tree};
use crate::linalg::{kernel_of_rows, Matrix, SparseVector, Subspace};
use crate::presentation::{builtin, consequence_space, ComponentCache, OperadPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// `x1 ≺ x2 ↦ (x1x2) ⊗ (x1x2)`
    Aligned,
    /// `x1 ≻ x2 ↦ (x1x2) ⊗ (x2x1)`
    Crossed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSymbol {
    pub p_op: usize,
    pub q_op: usize,
    pub orientation: Orientation,
}

/// The `2·k_P·k_Q` pair symbols, indexed by `((j·k_Q)+l)·2 + orientation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAlphabet {
    p_ops: usize,
    q_ops: usize,
    names: Vec<String>,
}

impl PairAlphabet {
    /// Symbol names are `prec`/`succ` when both sides have one operation,
    /// `prec_<p>`/`succ_<p>` when only `Q` does, and `prec_<p>_<q>` otherwise.
    pub fn new(p_ops: &[String], q_ops: &[String]) -> Result<Self> {
        if p_ops.is_empty() || q_ops.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut names = Vec::with_capacity(2 * p_ops.len() * q_ops.len());
        for p in p_ops {
            for q in q_ops {
                for side in ["prec", "succ"] {
                    names.push(match (p_ops.len(), q_ops.len()) {
                        (1, 1) => side.to_string(),
                        (_, 1) => format!("{side}_{p}"),
                        _ => format!("{side}_{p}_{q}"),
                    });
                }
            }
        }
        Ok(PairAlphabet {
            p_ops: p_ops.len(),
            q_ops: q_ops.len(),
            names,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn p_ops(&self) -> usize {
        self.p_ops
    }

    pub fn q_ops(&self) -> usize {
        self.q_ops
    }

    pub fn index(&self, symbol: PairSymbol) -> usize {
        let o = match symbol.orientation {
            Orientation::Aligned => 0,
            Orientation::Crossed => 1,
        };
        (symbol.p_op * self.q_ops + symbol.q_op) * 2 + o
    }

    pub fn symbol(&self, index: usize) -> Result<PairSymbol> {
        if index >= self.len() {
            return Err(Error::OpOutOfRange {
                op: index,
                alphabet: self.len(),
            });
        }
        let orientation = if index.is_multiple_of(2) {
            Orientation::Aligned
        } else {
            Orientation::Crossed
        };
        let pair = index / 2;
        Ok(PairSymbol {
            p_op: pair / self.q_ops,
            q_op: pair % self.q_ops,
            orientation,
        })
    }

    /// Every arity-2 monomial over the pair alphabet.
    pub fn generators(&self) -> Vec<Poly> {
        crate::presentation::generator_monomials(self.len())
    }

    /// Splits a pair-alphabet monomial into its `P`-side and `Q`-side trees.
    /// Both have the same shape; the `Q` side swaps children below every
    /// crossed symbol.
    pub fn evaluate(&self, m: &Monomial) -> Result<(Monomial, Monomial)> {
        let (p, q) = self.split(&m.to_tree())?;
        Ok((Monomial::from_tree(&p)?, Monomial::from_tree(&q)?))
    }

    fn split(&self, t: &Tree) -> Result<(Tree, Tree)> {
        match t {
            Tree::Leaf(i) => Ok((Tree::Leaf(*i), Tree::Leaf(*i))),
            Tree::Node(op, l, r) => {
                let s = self.symbol(*op as usize)?;
                let (pl, ql) = self.split(l)?;
                let (pr, qr) = self.split(r)?;
                let q = match s.orientation {
                    Orientation::Aligned => Tree::node(s.q_op as u8, ql, qr),
                    Orientation::Crossed => Tree::node(s.q_op as u8, qr, ql),
                };
                Ok((Tree::node(s.p_op as u8, pl, pr), q))
            }
        }
    }
}

/// The white product at one arity.
///
/// `relations` is the whole of `ker Φ`. Part of it is forced by relations of
/// lower arity (grafting them with pair symbols, e.g. the arity-3 shadows of
/// `x1≻x2 − x2≺x1` for `com`); that part is `induced`, and `essential` is the
/// canonical complement representative of `relations / induced`.
#[derive(Clone, Debug)]
pub struct WhiteResult {
    p_name: String,
    q_name: String,
    p_hash: String,
    q_hash: String,
    n: usize,
    alphabet: PairAlphabet,
    basis: Basis,
    target_dim: usize,
    p_dim: usize,
    q_dim: usize,
    phi: Vec<SparseVector>,
    relations: Subspace,
    induced: Subspace,
    essential: Subspace,
}

impl WhiteResult {
    pub fn p_name(&self) -> &str {
        &self.p_name
    }

    pub fn q_name(&self) -> &str {
        &self.q_name
    }

    pub fn p_hash(&self) -> &str {
        &self.p_hash
    }

    pub fn q_hash(&self) -> &str {
        &self.q_hash
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &PairAlphabet {
        &self.alphabet
    }

    /// Monomial basis of `M_n(pair alphabet)`, the domain of `Φ`.
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// `dim P(n) · dim Q(n)`.
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn component_dims(&self) -> (usize, usize) {
        (self.p_dim, self.q_dim)
    }

    /// Column `i` of `Φ`, the image of the `i`-th pair monomial. Row `a·dim
    /// Q(n) + b` pairs normal monomial `a` of `P` with `b` of `Q`.
    pub fn phi_column(&self, i: usize) -> &SparseVector {
        &self.phi[i]
    }

    pub fn phi(&self) -> Matrix {
        Matrix::from_sparse_columns(self.target_dim, &self.phi)
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn image_dim(&self) -> usize {
        self.basis.len() - self.relations.dim()
    }

    pub fn induced(&self) -> &Subspace {
        &self.induced
    }

    pub fn essential(&self) -> &Subspace {
        &self.essential
    }

    pub fn relation_polys(&self) -> Result<Vec<Poly>> {
        polys(&self.basis, &self.relations)
    }

    pub fn essential_polys(&self) -> Result<Vec<Poly>> {
        polys(&self.basis, &self.essential)
    }

    /// Image of a pair-alphabet polynomial under `Φ`.
    pub fn apply(&self, f: &Poly) -> Result<SparseVector> {
        let mut acc = SparseVector::zero(self.target_dim);
        for (m, c) in f.terms() {
            acc.axpy(c, &self.phi[self.basis.index_of(m)?]);
        }
        Ok(acc)
    }
}

/// Ranks pair monomials by how many crossed symbols they use, then by index,
/// so relation representatives favour aligned (`≺`) words.
fn crossed_rank(basis: &Basis) -> Vec<usize> {
    let crossed: Vec<usize> = basis
        .iter()
        .map(|m| m.ops().iter().filter(|op| *op % 2 == 1).count())
        .collect();
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| (crossed[i], i));
    let mut rank = vec![0; basis.len()];
    for (position, i) in order.into_iter().enumerate() {
        rank[i] = position;
    }
    rank
}

fn polys(basis: &Basis, s: &Subspace) -> Result<Vec<Poly>> {
    s.rows().iter().map(|r| Poly::from_sparse(basis, r)).collect()
}

struct Kernel {
    alphabet: PairAlphabet,
    basis: Basis,
    p_dim: usize,
    q_dim: usize,
    phi: Vec<SparseVector>,
    relations: Subspace,
}

fn kernel(cache: &ComponentCache, p: &OperadPresentation, q: &OperadPresentation, n: usize) -> Result<Kernel> {
    let alphabet = PairAlphabet::new(p.ops(), q.ops())?;
    let cp = cache.component(p, n)?;
    let cq = cache.component(q, n)?;
    let basis = Basis::new(n, alphabet.len())?;
    let (p_dim, q_dim) = (cp.dim(), cq.dim());
    let target = p_dim * q_dim;
    let mut phi = Vec::with_capacity(basis.len());
    let mut rows: Vec<Vec<(usize, crate::linalg::Rational)>> = vec![Vec::new(); target];
    for (i, m) in basis.iter().enumerate() {
        let (mp, mq) = alphabet.evaluate(&m)?;
        let a = cp.normal_form_of_index(cp.basis().index_of(&mp)?);
        let b = cq.normal_form_of_index(cq.basis().index_of(&mq)?);
        let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
        for (ia, va) in a.iter() {
            for (ib, vb) in b.iter() {
                let row = ia * q_dim + ib;
                let v = va * vb;
                rows[row].push((i, v.clone()));
                entries.push((row, v));
            }
        }
        phi.push(SparseVector::from_entries(target, entries));
    }
    let rows: Vec<SparseVector> = rows
        .into_iter()
        .map(|e| SparseVector::from_entries(basis.len(), e))
        .collect();
    let relations = kernel_of_rows(basis.len(), &rows);
    Ok(Kernel {
        alphabet,
        basis,
        p_dim,
        q_dim,
        phi,
        relations,
    })
}

/// The evaluation map `Φ` at arity `n` as a dense matrix.
pub fn phi_map(cache: &ComponentCache, p: &OperadPresentation, q: &OperadPresentation, n: usize) -> Result<Matrix> {
    let k = kernel(cache, p, q, n)?;
    Ok(Matrix::from_sparse_columns(k.p_dim * k.q_dim, &k.phi))
}

pub fn white_relations(
    cache: &ComponentCache,
    p: &OperadPresentation,
    q: &OperadPresentation,
    n: usize,
) -> Result<WhiteResult> {
    let k = kernel(cache, p, q, n)?;
    let induced = if n >= 3 {
        let lower = kernel(cache, p, q, n - 1)?;
        let seeds = polys(&lower.basis, &lower.relations)?;
        consequence_space(k.alphabet.len(), &seeds, n)?
    } else {
        Subspace::zero(k.basis.len())
    };
    let essential = k.relations.modulo_ranked(&induced, &crossed_rank(&k.basis))?;
    Ok(WhiteResult {
        p_name: p.name().to_string(),
        q_name: q.name().to_string(),
        p_hash: p.content_hash(),
        q_hash: q.content_hash(),
        n,
        target_dim: k.p_dim * k.q_dim,
        p_dim: k.p_dim,
        q_dim: k.q_dim,
        alphabet: k.alphabet,
        basis: k.basis,
        phi: k.phi,
        relations: k.relations,
        induced,
        essential,
    })
}

/// `P ∘ Nov` at arity `n`: the identities of `≺`/`≻` on differential
/// `P`-algebras.
pub fn derived_identities(cache: &ComponentCache, p: &OperadPresentation, n: usize) -> Result<WhiteResult> {
    white_relations(cache, p, &builtin("nov")?, n)
}

/// Whether `generators`, together with everything forced by lower arities,
/// span exactly the relations of `result`.
pub fn relations_match(result: &WhiteResult, generators: &[Poly]) -> Result<bool> {
    let k = result.alphabet.len();
    for g in generators {
        if g.arity() > result.n {
            return Err(Error::ArityMismatch {
                expected: result.n,
                found: g.arity(),
            });
        }
        if g.alphabet() != k {
            return Err(Error::AlphabetMismatch {
                left: k,
                right: g.alphabet(),
            });
        }
    }
    let generated = consequence_space(k, generators, result.n)?.sum(&result.induced)?;
    Ok(generated == result.relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeop::Perm;
    use crate::linalg::int;

    const PREC: u8 = 0;
    const SUCC: u8 = 1;

    fn x(i: u8) -> Tree {
        Tree::Leaf(i - 1)
    }
    fn op(o: u8, a: Tree, b: Tree) -> Tree {
        Tree::node(o, a, b)
    }
    fn poly(terms: &[(i64, Tree)], k: usize) -> Poly {
        let mut p = Poly::zero(terms[0].1.leaf_count(), k);
        for (c, t) in terms {
            p = p.add(&Poly::from_tree(t, k).unwrap().scale(&int(*c))).unwrap();
        }
        p
    }
    fn middle_assoc() -> Poly {
        poly(
            &[
                (1, op(PREC, op(SUCC, x(1), x(2)), x(3))),
                (-1, op(SUCC, x(1), op(PREC, x(2), x(3)))),
            ],
            2,
        )
    }
    fn total_assoc() -> Poly {
        poly(
            &[
                (1, op(PREC, op(PREC, x(1), x(2)), x(3))),
                (-1, op(PREC, x(1), op(SUCC, x(2), x(3)))),
                (1, op(SUCC, op(PREC, x(1), x(2)), x(3))),
                (-1, op(SUCC, x(1), op(SUCC, x(2), x(3)))),
            ],
            2,
        )
    }

    fn b(name: &str) -> OperadPresentation {
        builtin(name).unwrap()
    }

    #[test]
    fn pair_alphabet_layout() {
        let a = PairAlphabet::new(&["m".into()], &["m".into()]).unwrap();
        assert_eq!(a.names(), ["prec", "succ"]);
        let two = PairAlphabet::new(&["a".into(), "b".into()], &["m".into()]).unwrap();
        assert_eq!(two.names(), ["prec_a", "succ_a", "prec_b", "succ_b"]);
        for i in 0..two.len() {
            assert_eq!(two.index(two.symbol(i).unwrap()), i);
        }
        assert!(two.symbol(4).is_err());
    }

    #[test]
    fn example_columns() {
        let cache = ComponentCache::new();
        let r = derived_identities(&cache, &b("as"), 3).unwrap();
        let cas = cache.component(&b("as"), 3).unwrap();
        let cnov = cache.component(&b("nov"), 3).unwrap();
        let cases = [
            (op(PREC, op(PREC, x(1), x(2)), x(3)), m(m(x(1), x(2)), x(3)), m(m(x(1), x(2)), x(3))),
            (op(SUCC, x(1), op(SUCC, x(2), x(3))), m(x(1), m(x(2), x(3))), m(m(x(3), x(2)), x(1))),
            (op(SUCC, op(PREC, x(1), x(2)), x(3)), m(m(x(1), x(2)), x(3)), m(x(3), m(x(1), x(2)))),
            (op(PREC, x(1), op(SUCC, x(2), x(3))), m(x(1), m(x(2), x(3))), m(x(1), m(x(3), x(2)))),
        ];
        for (pair, pside, qside) in cases {
            let i = r.basis().index_of(&Monomial::from_tree(&pair).unwrap()).unwrap();
            let a = cas.normal_form_of_index(cas.basis().index_of(&Monomial::from_tree(&pside).unwrap()).unwrap());
            let bq = cnov.normal_form_of_index(cnov.basis().index_of(&Monomial::from_tree(&qside).unwrap()).unwrap());
            let mut expected = Vec::new();
            for (ia, va) in a.iter() {
                for (ib, vb) in bq.iter() {
                    expected.push((ia * cnov.dim() + ib, va * vb));
                }
            }
            assert_eq!(r.phi_column(i), &SparseVector::from_entries(r.target_dim(), expected));
        }
    }

    fn m(a: Tree, b: Tree) -> Tree {
        Tree::node(0, a, b)
    }

    #[test]
    fn commutative_identifies_prec_and_succ() {
        let cache = ComponentCache::new();
        let r = derived_identities(&cache, &b("com"), 2).unwrap();
        let f = poly(&[(1, op(SUCC, x(1), x(2))), (-1, op(PREC, x(2), x(1)))], 2);
        assert!(r.relations().contains(&f.to_sparse(r.basis()).unwrap()).unwrap());
        let column_diff = r.apply(&poly(&[(1, op(PREC, x(1), x(2))), (-1, op(SUCC, x(2), x(1)))], 2)).unwrap();
        assert!(column_diff.is_zero());
        assert_eq!(r.image_dim(), 2);
    }

    #[test]
    fn associative_novikov_at_three() {
        let cache = ComponentCache::new();
        let r = derived_identities(&cache, &b("as"), 3).unwrap();
        assert_eq!(r.relations().dim(), 12);
        assert_eq!(r.image_dim(), 36);
        for f in [middle_assoc(), total_assoc()] {
            assert!(r.relations().contains(&f.to_sparse(r.basis()).unwrap()).unwrap());
        }
        assert!(relations_match(&r, &[middle_assoc(), total_assoc()]).unwrap());
        assert!(!relations_match(&r, &[middle_assoc()]).unwrap());
        assert!(r.induced().is_zero());
    }

    #[test]
    fn lie_has_no_essential_relations() {
        let cache = ComponentCache::new();
        let r = derived_identities(&cache, &b("lie"), 3).unwrap();
        assert_eq!(r.image_dim(), 12);
        assert!(r.essential().is_zero());
        assert!(relations_match(&r, &[]).unwrap());
    }

    #[test]
    fn rank_nullity_and_symmetry() {
        let cache = ComponentCache::new();
        for name in crate::presentation::BUILTIN_NAMES {
            let r = derived_identities(&cache, &b(name), 3).unwrap();
            assert_eq!(r.image_dim() + r.relations().dim(), 48);
            for sigma in Perm::all(3) {
                let t = r.basis().action_table(&sigma);
                for row in r.relations().rows() {
                    assert!(r.relations().contains(&row.permute(&t)).unwrap());
                }
            }
            assert!(r.relations().contains_subspace(r.induced()).unwrap());
        }
    }

    #[test]
    fn magmatic_square_has_no_monomial_relations() {
        let cache = ComponentCache::new();
        let r = white_relations(&cache, &b("mag"), &b("mag"), 3).unwrap();
        assert!(r.relations().is_zero());
        assert_eq!(r.image_dim(), 48);
        for i in 0..r.basis().len() {
            assert!(!r.relations().contains(&SparseVector::unit(48, i)).unwrap());
        }
    }

    #[test]
    fn relations_match_checks_inputs() {
        let cache = ComponentCache::new();
        let r = derived_identities(&cache, &b("as"), 3).unwrap();
        let wrong = Poly::from_tree(&m(m(x(1), x(2)), x(3)), 1).unwrap();
        assert!(relations_match(&r, &[wrong]).is_err());
    }
}

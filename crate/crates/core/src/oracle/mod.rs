//! Independent check of derived identities through the free differential
//! algebra.
//!
//! A word in `≺`/`≻` is expanded with `x ≺ y = x·d(y)` and `x ≻ y = d(x)·y`,
//! where `d` obeys `d(ab) = d(a)b + a d(b) + λab`. Terms are then grouped by
//! the derivative order sitting on each variable; since the `d^s(x_i)` are
//! free generators, the expansion vanishes in the free differential
//! `P`-algebra exactly when every group is an identity of `P`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freeop::{Basis, Monomial, Poly, Tree};
use crate::linalg::{kernel_of_rows, Rational, SparseVector, Subspace};
use crate::presentation::{ComponentCache, OperadPresentation};
use crate::products::{Orientation, PairAlphabet};

/// Derivative orders `(s_1, …, s_n)` carried by the variables of a term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub Vec<u32>);

impl Pattern {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A magmatic tree whose leaves are `d^order(x_var)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiffTree {
    Leaf { var: u8, order: u32 },
    Node(u8, Box<DiffTree>, Box<DiffTree>),
}

impl DiffTree {
    fn internal_nodes(&self) -> usize {
        match self {
            DiffTree::Leaf { .. } => 0,
            DiffTree::Node(_, l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            DiffTree::Leaf { .. } => 1,
            DiffTree::Node(_, l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Every tree obtained by raising the order of exactly one leaf.
    fn increments(&self) -> Vec<DiffTree> {
        match self {
            DiffTree::Leaf { var, order } => vec![DiffTree::Leaf {
                var: *var,
                order: order + 1,
            }],
            DiffTree::Node(op, l, r) => {
                let mut out = Vec::new();
                for dl in l.increments() {
                    out.push(DiffTree::Node(*op, Box::new(dl), r.clone()));
                }
                for dr in r.increments() {
                    out.push(DiffTree::Node(*op, l.clone(), Box::new(dr)));
                }
                out
            }
        }
    }

    fn strip(&self, orders: &mut BTreeMap<u8, u32>) -> Tree {
        match self {
            DiffTree::Leaf { var, order } => {
                orders.insert(*var, *order);
                Tree::Leaf(*var)
            }
            DiffTree::Node(op, l, r) => {
                let l = l.strip(orders);
                Tree::node(*op, l, r.strip(orders))
            }
        }
    }
}

impl fmt::Display for DiffTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffTree::Leaf { var, order: 0 } => write!(f, "x{}", var + 1),
            DiffTree::Leaf { var, order: 1 } => write!(f, "d(x{})", var + 1),
            DiffTree::Leaf { var, order } => write!(f, "d^{order}(x{})", var + 1),
            DiffTree::Node(op, l, r) => write!(f, "m{op}({l},{r})"),
        }
    }
}

/// A finite rational combination of [`DiffTree`]s over `alphabet` operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPoly {
    alphabet: usize,
    terms: BTreeMap<DiffTree, Rational>,
}

impl DiffPoly {
    pub fn zero(alphabet: usize) -> Self {
        DiffPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn leaf(alphabet: usize, var: u8, order: u32) -> Self {
        DiffPoly::term(alphabet, DiffTree::Leaf { var, order }, Rational::one())
    }

    pub fn term(alphabet: usize, tree: DiffTree, coefficient: Rational) -> Self {
        let mut p = DiffPoly::zero(alphabet);
        p.push(tree, coefficient);
        p
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffTree, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn push(&mut self, tree: DiffTree, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tree) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.push(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        let mut out = DiffPoly::zero(self.alphabet);
        for (t, v) in &self.terms {
            out.push(t.clone(), v * c);
        }
        out
    }

    /// The terms whose tree satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&DiffTree) -> bool) -> DiffPoly {
        DiffPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    /// The product `m_op(a, b)`, extended bilinearly.
    pub fn join(op: u8, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly> {
        if a.alphabet != b.alphabet {
            return Err(Error::AlphabetMismatch {
                left: a.alphabet,
                right: b.alphabet,
            });
        }
        if op as usize >= a.alphabet {
            return Err(Error::OpOutOfRange {
                op: op as usize,
                alphabet: a.alphabet,
            });
        }
        let mut out = DiffPoly::zero(a.alphabet);
        for (ta, ca) in &a.terms {
            for (tb, cb) in &b.terms {
                out.push(DiffTree::Node(op, Box::new(ta.clone()), Box::new(tb.clone())), ca * cb);
            }
        }
        Ok(out)
    }

    /// `D` with `D(x) = d(x)` on generators and `D(ab) = D(a)b + aD(b) + λab`.
    pub fn derive(&self, lambda: &Rational) -> DiffPoly {
        let mut out = DiffPoly::zero(self.alphabet);
        for (t, c) in &self.terms {
            for inc in t.increments() {
                out.push(inc, c.clone());
            }
            let internal = t.internal_nodes();
            if internal > 0 {
                out.push(t.clone(), c * lambda * Rational::from_integer(internal.into()));
            }
        }
        out
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{abs}*{t}")?;
            }
        }
        Ok(())
    }
}

fn derived_alphabet(f: &Poly) -> Result<PairAlphabet> {
    if !f.alphabet().is_multiple_of(2) {
        return Err(Error::NotDerivedAlphabet(f.alphabet()));
    }
    let ops: Vec<String> = (0..f.alphabet() / 2).map(|j| format!("m{j}")).collect();
    PairAlphabet::new(&ops, &["m".to_string()])
}

fn evaluate(t: &Tree, alphabet: &PairAlphabet, lambda: &Rational) -> Result<DiffPoly> {
    let k = alphabet.p_ops();
    match t {
        Tree::Leaf(v) => Ok(DiffPoly::leaf(k, *v, 0)),
        Tree::Node(op, l, r) => {
            let s = alphabet.symbol(*op as usize)?;
            let l = evaluate(l, alphabet, lambda)?;
            let r = evaluate(r, alphabet, lambda)?;
            match s.orientation {
                Orientation::Aligned => DiffPoly::join(s.p_op as u8, &l, &r.derive(lambda)),
                Orientation::Crossed => DiffPoly::join(s.p_op as u8, &l.derive(lambda), &r),
            }
        }
    }
}

/// Expands a word in the derived alphabet (`2k` symbols: `prec_j`, `succ_j`
/// at `2j`, `2j+1`) into the free differential algebra over `k` operations.
pub fn expand(f: &Poly, lambda: &Rational) -> Result<DiffPoly> {
    let alphabet = derived_alphabet(f)?;
    let mut out = DiffPoly::zero(alphabet.p_ops());
    for (m, c) in f.terms() {
        out = out.add(&evaluate(&m.to_tree(), &alphabet, lambda)?.scale(c));
    }
    Ok(out)
}

/// Splits a multilinear expansion by derivative pattern; each group is a
/// plain polynomial over the `k` original operations.
pub fn group(dp: &DiffPoly) -> Result<BTreeMap<Pattern, Poly>> {
    let mut out: BTreeMap<Pattern, Poly> = BTreeMap::new();
    for (t, c) in dp.terms() {
        let n = t.leaf_count();
        let mut orders = BTreeMap::new();
        let plain = t.strip(&mut orders);
        if orders.len() != n || orders.keys().any(|v| *v as usize >= n) {
            return Err(Error::InvalidShape(format!("term {t} is not multilinear")));
        }
        let pattern = Pattern(orders.values().copied().collect());
        let term = Poly::monomial(Monomial::from_tree(&plain)?, dp.alphabet())?.scale(c);
        let slot = out
            .entry(pattern)
            .or_insert_with(|| Poly::zero(n, dp.alphabet()));
        *slot = slot.add(&term)?;
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

fn check_alphabet(p: &OperadPresentation, f: &Poly) -> Result<()> {
    if f.alphabet() != 2 * p.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: 2 * p.alphabet(),
            right: f.alphabet(),
        });
    }
    Ok(())
}

/// Whether `f` holds for `≺`/`≻` on every differential `P`-algebra (with `d`
/// a generalized derivation of weight `λ`).
pub fn is_derived_identity(cache: &ComponentCache, p: &OperadPresentation, f: &Poly, lambda: &Rational) -> Result<bool> {
    check_alphabet(p, f)?;
    let c = cache.component(p, f.arity())?;
    for g in group(&expand(f, lambda)?)?.values() {
        if !c.is_identity(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All derived identities of `P` at arity `n`: the kernel of the map sending
/// a derived word to the normal forms of its pattern groups.
pub fn derived_identity_space(cache: &ComponentCache, p: &OperadPresentation, n: usize, lambda: &Rational) -> Result<Subspace> {
    let c = cache.component(p, n)?;
    let basis = Basis::new(n, 2 * p.alphabet())?;
    let mut columns: Vec<BTreeMap<Pattern, SparseVector>> = Vec::with_capacity(basis.len());
    for m in basis.iter() {
        let f = Poly::monomial(m, basis.alphabet())?;
        let mut col = BTreeMap::new();
        for (pattern, g) in group(&expand(&f, lambda)?)? {
            let v = c.normal_form_sparse(&g)?;
            if !v.is_zero() {
                col.insert(pattern, v);
            }
        }
        columns.push(col);
    }
    let mut block: BTreeMap<&Pattern, usize> = BTreeMap::new();
    for col in &columns {
        for pattern in col.keys() {
            let next = block.len();
            block.entry(pattern).or_insert(next);
        }
    }
    let dim = c.dim();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); block.len() * dim];
    for (i, col) in columns.iter().enumerate() {
        for (pattern, v) in col {
            let offset = block[pattern] * dim;
            for (j, x) in v.iter() {
                rows[offset + j].push((i, x.clone()));
            }
        }
    }
    let rows: Vec<SparseVector> = rows
        .into_iter()
        .map(|e| SparseVector::from_entries(basis.len(), e))
        .collect();
    Ok(kernel_of_rows(basis.len(), &rows))
}

/// Whether [`derived_identity_space`] is the same for every `λ` given.
pub fn lambda_invariance(cache: &ComponentCache, p: &OperadPresentation, n: usize, lambdas: &[Rational]) -> Result<bool> {
    let Some((first, rest)) = lambdas.split_first() else {
        return Err(Error::InvalidShape("empty list of weights".into()));
    };
    let base = derived_identity_space(cache, p, n, first)?;
    for l in rest {
        if derived_identity_space(cache, p, n, l)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};
    use crate::presentation::builtin;
    use crate::products::derived_identities;

    const PREC: u8 = 0;
    const SUCC: u8 = 1;

    fn x(i: u8) -> Tree {
        Tree::Leaf(i - 1)
    }
    fn op(o: u8, a: Tree, b: Tree) -> Tree {
        Tree::node(o, a, b)
    }
    fn poly(terms: &[(i64, Tree)]) -> Poly {
        let mut p = Poly::zero(terms[0].1.leaf_count(), 2);
        for (c, t) in terms {
            p = p.add(&Poly::from_tree(t, 2).unwrap().scale(&int(*c))).unwrap();
        }
        p
    }
    fn d(var: u8, order: u32) -> DiffTree {
        DiffTree::Leaf { var: var - 1, order }
    }
    fn dm(a: DiffTree, b: DiffTree) -> DiffTree {
        DiffTree::Node(0, Box::new(a), Box::new(b))
    }
    fn middle_assoc() -> Poly {
        poly(&[
            (1, op(PREC, op(SUCC, x(1), x(2)), x(3))),
            (-1, op(SUCC, x(1), op(PREC, x(2), x(3)))),
        ])
    }

    #[test]
    fn prec_differentiates_the_right_argument() {
        let e = expand(&poly(&[(1, op(PREC, x(1), x(2)))]), &int(0)).unwrap();
        assert_eq!(e, DiffPoly::term(1, dm(d(1, 0), d(2, 1)), int(1)));
        let g = group(&e).unwrap();
        assert_eq!(g.keys().collect::<Vec<_>>(), vec![&Pattern(vec![0, 1])]);
    }

    #[test]
    fn one_leibniz_step() {
        let e = expand(&poly(&[(1, op(PREC, x(1), op(PREC, x(2), x(3))))]), &int(0)).unwrap();
        let expected = DiffPoly::term(1, dm(d(1, 0), dm(d(2, 1), d(3, 1))), int(1))
            .add(&DiffPoly::term(1, dm(d(1, 0), dm(d(2, 0), d(3, 2))), int(1)));
        assert_eq!(e, expected);
    }

    #[test]
    fn expansion_of_the_left_derived_law() {
        let e = expand(&middle_assoc(), &int(0)).unwrap();
        let expected = DiffPoly::term(1, dm(dm(d(1, 1), d(2, 0)), d(3, 1)), int(1))
            .add(&DiffPoly::term(1, dm(d(1, 1), dm(d(2, 0), d(3, 1))), int(-1)));
        assert_eq!(e, expected);
        let g = group(&e).unwrap();
        assert_eq!(g.len(), 1);
        let assoc = &g[&Pattern(vec![1, 0, 1])];
        assert_eq!(assoc.len(), 2);
        assert!(crate::presentation::is_identity(&builtin("as").unwrap(), assoc).unwrap());
    }

    #[test]
    fn empty_group() {
        assert!(group(&DiffPoly::zero(1)).unwrap().is_empty());
    }

    #[test]
    fn spot_checks() {
        let cache = ComponentCache::new();
        let as_ = builtin("as").unwrap();
        assert!(is_derived_identity(&cache, &as_, &middle_assoc(), &int(0)).unwrap());
        assert!(!is_derived_identity(&cache, &as_, &poly(&[(1, op(PREC, x(1), x(2)))]), &int(0)).unwrap());
        let wrong = Poly::from_tree(&op(0, x(1), x(2)), 1).unwrap();
        assert!(is_derived_identity(&cache, &as_, &wrong, &int(0)).is_err());
    }

    #[test]
    fn agrees_with_white_product() {
        let cache = ComponentCache::new();
        for name in crate::presentation::BUILTIN_NAMES {
            let p = builtin(name).unwrap();
            let white = derived_identities(&cache, &p, 3).unwrap();
            assert_eq!(&derived_identity_space(&cache, &p, 3, &int(0)).unwrap(), white.relations(), "{name}");
        }
    }

    #[test]
    fn weight_does_not_matter() {
        let cache = ComponentCache::new();
        let as_ = builtin("as").unwrap();
        assert!(lambda_invariance(&cache, &as_, 3, &[int(0), int(1), int(-2), frac(7, 3)]).unwrap());
        assert!(lambda_invariance(&cache, &as_, 3, &[int(5)]).unwrap());
        assert!(lambda_invariance(&cache, &as_, 3, &[]).is_err());
    }

    #[test]
    fn weight_adds_lower_order_patterns() {
        let e = expand(&poly(&[(1, op(PREC, x(1), op(PREC, x(2), x(3))))]), &int(1)).unwrap();
        let totals: Vec<u32> = group(&e).unwrap().keys().map(Pattern::total).collect();
        assert!(totals.contains(&1) && totals.contains(&2));
    }
}

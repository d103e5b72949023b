//! Planar binary trees and multilinear monomials.

use std::fmt;

use crate::error::{Error, Result};

/// One token of a preorder shape code. `Internal` sorts before `Leaf`, so
/// left-combed trees come first: `(x1x2)x3` precedes `x1(x2x3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Internal,
    Leaf,
}

/// The bare shape of a planar binary tree, stored as its preorder code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeShape {
    code: Vec<Node>,
}

impl TreeShape {
    pub fn leaf() -> Self {
        TreeShape {
            code: vec![Node::Leaf],
        }
    }

    /// Validates a preorder code: it must describe exactly one full binary tree.
    pub fn from_code(code: Vec<Node>) -> Result<Self> {
        let mut open = 1usize;
        for (i, node) in code.iter().enumerate() {
            if open == 0 {
                return Err(Error::InvalidShape(format!(
                    "trailing tokens after position {i}"
                )));
            }
            match node {
                Node::Internal => open += 1,
                Node::Leaf => open -= 1,
            }
        }
        if open != 0 || code.is_empty() {
            return Err(Error::InvalidShape("code does not close".to_string()));
        }
        Ok(TreeShape { code })
    }

    pub fn code(&self) -> &[Node] {
        &self.code
    }

    pub fn leaf_count(&self) -> usize {
        self.code.iter().filter(|n| **n == Node::Leaf).count()
    }

    /// All shapes with `n` leaves, sorted by code.
    pub fn all(n: usize) -> Vec<TreeShape> {
        fn build(n: usize) -> Vec<Vec<Node>> {
            if n == 1 {
                return vec![vec![Node::Leaf]];
            }
            let mut out = Vec::new();
            for left in 1..n {
                let ls = build(left);
                let rs = build(n - left);
                for l in &ls {
                    for r in &rs {
                        let mut code = Vec::with_capacity(2 * n - 1);
                        code.push(Node::Internal);
                        code.extend_from_slice(l);
                        code.extend_from_slice(r);
                        out.push(code);
                    }
                }
            }
            out
        }
        if n == 0 {
            return Vec::new();
        }
        let mut shapes: Vec<TreeShape> = build(n).into_iter().map(|code| TreeShape { code }).collect();
        shapes.sort();
        shapes
    }
}

/// A monomial as an explicit tree. Leaves carry 0-based variable indices,
/// nodes carry 0-based operation indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(u8),
    Node(u8, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(op: u8, left: Tree, right: Tree) -> Tree {
        Tree::Node(op, Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn leaves(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u8>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn map_leaves(&self, f: &impl Fn(u8) -> Tree) -> Tree {
        match self {
            Tree::Leaf(v) => f(*v),
            Tree::Node(op, l, r) => Tree::node(*op, l.map_leaves(f), r.map_leaves(f)),
        }
    }
}

/// A multilinear monomial: shape, preorder operation labels, left-to-right
/// leaf variables. The derived ordering is the canonical basis order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    shape: TreeShape,
    ops: Vec<u8>,
    leaves: Vec<u8>,
}

impl Monomial {
    /// The single-leaf monomial `x1`, the unit of the operad.
    pub fn unit() -> Self {
        Monomial {
            shape: TreeShape::leaf(),
            ops: Vec::new(),
            leaves: vec![0],
        }
    }

    /// Builds a monomial and checks that the leaves are a permutation of
    /// `0..n` and the label counts fit the shape.
    pub fn new(shape: TreeShape, ops: Vec<u8>, leaves: Vec<u8>) -> Result<Self> {
        let n = shape.leaf_count();
        if ops.len() + 1 != n {
            return Err(Error::ArityMismatch {
                expected: n - 1,
                found: ops.len(),
            });
        }
        if leaves.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: leaves.len(),
            });
        }
        let mut seen = vec![false; n];
        for &v in &leaves {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "leaf labels {:?} are not a permutation of 1..={n}",
                    leaves.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            seen[v] = true;
        }
        Ok(Monomial { shape, ops, leaves })
    }

    pub(crate) fn from_parts_unchecked(shape: TreeShape, ops: Vec<u8>, leaves: Vec<u8>) -> Self {
        Monomial { shape, ops, leaves }
    }

    /// Flattens a tree. Fails unless the leaves are a permutation of `0..n`.
    pub fn from_tree(tree: &Tree) -> Result<Self> {
        let mut code = Vec::new();
        let mut ops = Vec::new();
        let mut leaves = Vec::new();
        fn walk(t: &Tree, code: &mut Vec<Node>, ops: &mut Vec<u8>, leaves: &mut Vec<u8>) {
            match t {
                Tree::Leaf(v) => {
                    code.push(Node::Leaf);
                    leaves.push(*v);
                }
                Tree::Node(op, l, r) => {
                    code.push(Node::Internal);
                    ops.push(*op);
                    walk(l, code, ops, leaves);
                    walk(r, code, ops, leaves);
                }
            }
        }
        walk(tree, &mut code, &mut ops, &mut leaves);
        Monomial::new(TreeShape { code }, ops, leaves)
    }

    pub fn to_tree(&self) -> Tree {
        let mut code = self.shape.code.iter();
        let mut ops = self.ops.iter();
        let mut leaves = self.leaves.iter();
        fn build<'a>(
            code: &mut impl Iterator<Item = &'a Node>,
            ops: &mut impl Iterator<Item = &'a u8>,
            leaves: &mut impl Iterator<Item = &'a u8>,
        ) -> Tree {
            match code.next().expect("shape code is well formed") {
                Node::Leaf => Tree::Leaf(*leaves.next().expect("leaf count matches")),
                Node::Internal => {
                    let op = *ops.next().expect("op count matches");
                    let l = build(code, ops, leaves);
                    let r = build(code, ops, leaves);
                    Tree::node(op, l, r)
                }
            }
        }
        build(&mut code, &mut ops, &mut leaves)
    }

    pub fn arity(&self) -> usize {
        self.leaves.len()
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn ops(&self) -> &[u8] {
        &self.ops
    }

    pub fn leaves(&self) -> &[u8] {
        &self.leaves
    }

    /// Largest operation index used, if any.
    pub fn max_op(&self) -> Option<u8> {
        self.ops.iter().copied().max()
    }

    /// Replaces every leaf label `i` by `images[i]`.
    pub(crate) fn relabel(&self, images: &[u8]) -> Monomial {
        Monomial {
            shape: self.shape.clone(),
            ops: self.ops.clone(),
            leaves: self.leaves.iter().map(|&v| images[v as usize]).collect(),
        }
    }

    /// Operadic partial composition `self ∘_position inner`: `inner` replaces
    /// the leaf labelled `position` (1-based), its labels shift to occupy
    /// `position..position + arity(inner) - 1`, and outer labels above
    /// `position` shift up by `arity(inner) - 1`.
    pub fn graft(&self, position: usize, inner: &Monomial) -> Result<Monomial> {
        let n = self.arity();
        if position == 0 || position > n {
            return Err(Error::PositionOutOfRange { position, arity: n });
        }
        let at = (position - 1) as u8;
        let shift = (inner.arity() - 1) as u8;
        if n + inner.arity() - 1 > u8::MAX as usize {
            return Err(Error::ArityTooLarge(n + inner.arity() - 1));
        }
        let inner_tree = inner.to_tree().map_leaves(&|v| Tree::Leaf(v + at));
        let grafted = self.to_tree().map_leaves(&|v| {
            if v == at {
                inner_tree.clone()
            } else if v > at {
                Tree::Leaf(v + shift)
            } else {
                Tree::Leaf(v)
            }
        });
        Monomial::from_tree(&grafted)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Tree, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Tree::Leaf(v) => write!(f, "x{}", v + 1),
                Tree::Node(op, l, r) => {
                    write!(f, "o{op}(")?;
                    go(l, f)?;
                    write!(f, ",")?;
                    go(r, f)?;
                    write!(f, ")")
                }
            }
        }
        go(&self.to_tree(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: Tree, b: Tree) -> Tree {
        Tree::node(0, a, b)
    }
    fn x(i: u8) -> Tree {
        Tree::Leaf(i - 1)
    }

    #[test]
    fn shapes_are_catalan() {
        let counts: Vec<usize> = (1..=6).map(|n| TreeShape::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn left_comb_sorts_first() {
        let shapes = TreeShape::all(3);
        let left = Monomial::from_tree(&m(m(x(1), x(2)), x(3))).unwrap();
        assert_eq!(left.shape(), &shapes[0]);
    }

    #[test]
    fn shape_code_validation() {
        use Node::*;
        assert!(TreeShape::from_code(vec![Internal, Leaf, Leaf]).is_ok());
        assert!(TreeShape::from_code(vec![Internal, Leaf]).is_err());
        assert!(TreeShape::from_code(vec![Leaf, Leaf]).is_err());
        assert!(TreeShape::from_code(vec![]).is_err());
    }

    #[test]
    fn tree_round_trip() {
        let t = m(x(2), m(x(3), x(1)));
        assert_eq!(Monomial::from_tree(&t).unwrap().to_tree(), t);
    }

    #[test]
    fn rejects_repeated_leaf() {
        assert!(Monomial::from_tree(&m(x(1), x(1))).is_err());
    }

    #[test]
    fn graft_right_and_left() {
        let mu = Monomial::from_tree(&m(x(1), x(2))).unwrap();
        let right = mu.graft(2, &mu).unwrap();
        assert_eq!(right.to_tree(), m(x(1), m(x(2), x(3))));
        let left = mu.graft(1, &mu).unwrap();
        assert_eq!(left.to_tree(), m(m(x(1), x(2)), x(3)));
    }

    #[test]
    fn graft_follows_leaf_label_not_position() {
        let swapped = Monomial::from_tree(&m(x(2), x(1))).unwrap();
        let mu = Monomial::from_tree(&m(x(1), x(2))).unwrap();
        let g = swapped.graft(1, &mu).unwrap();
        assert_eq!(g.to_tree(), m(x(3), m(x(1), x(2))));
    }

    #[test]
    fn graft_unit_is_identity() {
        let t = Monomial::from_tree(&m(x(2), m(x(3), x(1)))).unwrap();
        for i in 1..=3 {
            assert_eq!(t.graft(i, &Monomial::unit()).unwrap(), t);
        }
        assert_eq!(Monomial::unit().graft(1, &t).unwrap(), t);
    }

    #[test]
    fn graft_position_checked() {
        let mu = Monomial::from_tree(&m(x(1), x(2))).unwrap();
        assert!(matches!(mu.graft(0, &mu), Err(Error::PositionOutOfRange { .. })));
        assert!(matches!(mu.graft(3, &mu), Err(Error::PositionOutOfRange { .. })));
    }
}

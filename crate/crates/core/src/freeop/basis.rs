use std::collections::HashMap;

use super::monomial::{Monomial, TreeShape};
use super::perm::{next_permutation, perm_rank, perm_unrank, Perm};
use crate::error::{Error, Result};

/// The canonical monomial basis of `M_n` over an alphabet of `k` operations.
///
/// Index layout: `shape_rank · (k^(n-1) · n!) + ops_rank · n! + leaf_rank`,
/// each rank lexicographic, so positions agree with [`enumerate_monomials`].
#[derive(Clone, Debug)]
pub struct Basis {
    arity: usize,
    alphabet: usize,
    shapes: Vec<TreeShape>,
    shape_rank: HashMap<TreeShape, usize>,
    op_words: usize,
    leaf_orders: usize,
}

impl Basis {
    pub fn new(arity: usize, alphabet: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        if alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if arity > u8::MAX as usize || alphabet > u8::MAX as usize + 1 {
            return Err(Error::ArityTooLarge(arity.max(alphabet)));
        }
        let shapes = TreeShape::all(arity);
        let shape_rank = shapes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Basis {
            arity,
            alphabet,
            shapes,
            shape_rank,
            op_words: alphabet.pow(arity as u32 - 1),
            leaf_orders: (1..=arity).product(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.shapes.len() * self.op_words * self.leaf_orders
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index_of(&self, m: &Monomial) -> Result<usize> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: m.arity(),
            });
        }
        let shape = self.shape_rank[m.shape()];
        let mut ops = 0;
        for &op in m.ops() {
            if op as usize >= self.alphabet {
                return Err(Error::OpOutOfRange {
                    op: op as usize,
                    alphabet: self.alphabet,
                });
            }
            ops = ops * self.alphabet + op as usize;
        }
        let leaves = perm_rank(m.leaves());
        Ok((shape * self.op_words + ops) * self.leaf_orders + leaves)
    }

    pub fn monomial_at(&self, index: usize) -> Result<Monomial> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            });
        }
        let leaves = perm_unrank(self.arity, index % self.leaf_orders);
        let rest = index / self.leaf_orders;
        let mut ops_rank = rest % self.op_words;
        let shape = rest / self.op_words;
        let mut ops = vec![0u8; self.arity - 1];
        for slot in ops.iter_mut().rev() {
            *slot = (ops_rank % self.alphabet) as u8;
            ops_rank /= self.alphabet;
        }
        Ok(Monomial::from_parts_unchecked(self.shapes[shape].clone(), ops, leaves))
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.len()).map(move |i| self.monomial_at(i).expect("index in range"))
    }

    /// Where each basis index goes under the action of `sigma`.
    pub fn action_table(&self, sigma: &Perm) -> Vec<usize> {
        self.iter()
            .map(|m| self.index_of(&m.relabel(sigma.images0())).expect("relabelling stays in basis"))
            .collect()
    }
}

/// All multilinear monomials of arity `n` over `k` operations, in canonical
/// order: shape code, then operation labels, then leaf labels.
pub fn enumerate_monomials(n: usize, k: usize) -> Result<Vec<Monomial>> {
    let basis = Basis::new(n, k)?;
    let mut out = Vec::with_capacity(basis.len());
    for shape in &basis.shapes {
        let mut ops = vec![0u8; n - 1];
        loop {
            let mut leaves: Vec<u8> = (0..n as u8).collect();
            loop {
                out.push(Monomial::from_parts_unchecked(shape.clone(), ops.clone(), leaves.clone()));
                if !next_permutation(&mut leaves) {
                    break;
                }
            }
            if !next_word(&mut ops, k as u8) {
                break;
            }
        }
    }
    Ok(out)
}

fn next_word(word: &mut [u8], k: u8) -> bool {
    for slot in word.iter_mut().rev() {
        if *slot + 1 < k {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeop::Tree;

    fn catalan(n: usize) -> usize {
        let mut c = 1usize;
        for i in 0..n {
            c = c * 2 * (2 * i + 1) / (i + 2);
        }
        c
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_monomials(2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_monomials(3, 1).unwrap().len(), 12);
        assert_eq!(enumerate_monomials(3, 2).unwrap().len(), 48);
    }

    #[test]
    fn sizes_match_closed_form() {
        for n in 1..=5 {
            for k in 1..=2usize {
                let fact: usize = (1..=n).product();
                let expected = catalan(n - 1) * k.pow(n as u32 - 1) * fact;
                let all = enumerate_monomials(n, k).unwrap();
                assert_eq!(all.len(), expected, "n={n} k={k}");
                assert_eq!(Basis::new(n, k).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn first_monomials_of_arity_two() {
        let all = enumerate_monomials(2, 1).unwrap();
        assert_eq!(all[0].to_tree(), Tree::node(0, Tree::Leaf(0), Tree::Leaf(1)));
        assert_eq!(all[1].to_tree(), Tree::node(0, Tree::Leaf(1), Tree::Leaf(0)));
    }

    #[test]
    fn enumeration_is_sorted_and_matches_indexing() {
        for (n, k) in [(3, 2), (4, 2), (4, 1)] {
            let basis = Basis::new(n, k).unwrap();
            let all = enumerate_monomials(n, k).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for (i, m) in all.iter().enumerate() {
                assert_eq!(basis.index_of(m).unwrap(), i);
                assert_eq!(&basis.monomial_at(i).unwrap(), m);
            }
        }
    }

    #[test]
    fn last_monomial_of_arity_three() {
        let basis = Basis::new(3, 1).unwrap();
        let last = basis.monomial_at(11).unwrap();
        // x3(x2x1)
        assert_eq!(
            last.to_tree(),
            Tree::node(0, Tree::Leaf(2), Tree::node(0, Tree::Leaf(1), Tree::Leaf(0)))
        );
        assert!(basis.monomial_at(12).is_err());
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert_eq!(enumerate_monomials(0, 1).unwrap_err(), Error::ZeroArity);
        assert_eq!(enumerate_monomials(2, 0).unwrap_err(), Error::EmptyAlphabet);
    }
}

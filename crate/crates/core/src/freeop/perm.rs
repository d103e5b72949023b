use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}`.
///
/// Acting on a monomial replaces every leaf label `i` by `σ(i)`. This is a
/// left action: `act(σ∘τ, p) = act(σ, act(τ, p))` where
/// `(σ∘τ)(i) = σ(τ(i))`, which is what [`Perm::compose`] computes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    /// From 1-based images `(σ(1), …, σ(n))`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::ArityTooLarge(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u8);
        }
        Ok(Perm { images: out })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// The transposition `(a b)`, 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!("({a} {b}) in S_{n}")));
        }
        let mut p = Perm::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// The adjacent transpositions `(1 2), (2 3), …`, which generate `S_n`.
    pub fn adjacent_transpositions(n: usize) -> Vec<Perm> {
        (1..n)
            .map(|i| Perm::transposition(n, i, i + 1).expect("in range"))
            .collect()
    }

    /// All of `S_n` in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut current: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Perm {
            images: current.clone(),
        }];
        while next_permutation(&mut current) {
            out.push(Perm {
                images: current.clone(),
            });
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub(crate) fn images0(&self) -> &[u8] {
        &self.images
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm { images: inv }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|&i| i as usize + 1).collect();
        write!(f, "Perm{one_based:?}")
    }
}

/// Advances to the lexicographically next arrangement; false at the last one.
pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic rank of a permutation of `0..n` (Lehmer code).
pub(crate) fn perm_rank(v: &[u8]) -> usize {
    let n = v.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = v[i + 1..].iter().filter(|&&w| w < v[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`perm_rank`].
pub(crate) fn perm_unrank(n: usize, mut rank: usize) -> Vec<u8> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_symmetric_group_in_order() {
        let all = Perm::all(3);
        assert_eq!(all.len(), 6);
        for (rank, p) in all.iter().enumerate() {
            assert_eq!(perm_rank(p.images0()), rank);
            assert_eq!(perm_unrank(3, rank), p.images0());
        }
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let s = Perm::from_images(&[2, 3, 1]).unwrap();
        let t = Perm::transposition(3, 1, 2).unwrap();
        let st = s.compose(&t);
        for i in 1..=3 {
            assert_eq!(st.image(i), s.image(t.image(i)));
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in Perm::all(4) {
            assert_eq!(p.compose(&p.inverse()), Perm::identity(4));
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[1, 1]).is_err());
        assert!(Perm::from_images(&[0, 1]).is_err());
        assert!(Perm::from_images(&[1, 3]).is_err());
    }
}

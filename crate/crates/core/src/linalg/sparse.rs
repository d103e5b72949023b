use num_traits::Zero;

use super::Rational;

/// A vector stored as strictly increasing `(index, value)` pairs with no
/// zero values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit vector index {index} outside dimension {dim}");
        SparseVector {
            dim,
            entries: vec![(index, Rational::from_integer(1.into()))],
        }
    }

    /// Sorts, merges repeated indices and drops zeros.
    pub fn from_entries(dim: usize, mut entries: Vec<(usize, Rational)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            assert!(i < dim, "index {i} outside dimension {dim}");
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVector { dim, entries: out }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVector {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, c: &Rational) -> SparseVector {
        if c.is_zero() {
            return SparseVector::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self += factor · other`.
    pub fn axpy(&mut self, factor: &Rational, other: &SparseVector) {
        debug_assert_eq!(self.dim, other.dim);
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, factor * w));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = v + factor * w;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, factor * w));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    /// Moves coordinate `i` to `table[i]`. `table` must be a bijection.
    pub fn permute(&self, table: &[usize]) -> SparseVector {
        debug_assert_eq!(table.len(), self.dim);
        let mut entries: Vec<(usize, Rational)> =
            self.entries.iter().map(|(i, v)| (table[*i], v.clone())).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVector {
            dim: self.dim,
            entries,
        }
    }

    /// Coordinates `i` move to `dim - 1 - i`.
    pub(crate) fn reversed(&self) -> SparseVector {
        let mut entries: Vec<(usize, Rational)> = self
            .entries
            .iter()
            .rev()
            .map(|(i, v)| (self.dim - 1 - i, v.clone()))
            .collect();
        entries.shrink_to_fit();
        SparseVector {
            dim: self.dim,
            entries,
        }
    }

    /// Embeds into a larger space starting at `offset`.
    pub(crate) fn shifted(&self, dim: usize, offset: usize) -> SparseVector {
        SparseVector {
            dim,
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    pub(crate) fn concat(&self, other: &SparseVector) -> SparseVector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, v)| (i + self.dim, v.clone())));
        SparseVector {
            dim: self.dim + other.dim,
            entries,
        }
    }

    /// Keeps coordinates in `start..start + dim`, re-indexed from zero.
    pub(crate) fn window(&self, start: usize, dim: usize) -> SparseVector {
        SparseVector {
            dim,
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + dim)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }

    pub(crate) fn normalized(mut self) -> SparseVector {
        if let Some((_, lead)) = self.entries.first() {
            let inv = lead.recip();
            for (_, v) in &mut self.entries {
                *v *= &inv;
            }
        }
        self
    }
}

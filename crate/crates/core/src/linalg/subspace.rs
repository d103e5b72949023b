use super::echelon::{reduced_rows, EchelonBuilder};
use super::{Matrix, SparseVector};
use crate::error::{Error, Result};

/// A linear subspace of `Q^ambient`, held in its unique reduced row echelon
/// basis. Two subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| SparseVector::unit(ambient, i)).collect(),
        }
    }

    pub fn span<'a>(
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a SparseVector>,
    ) -> Result<Self> {
        let vectors: Vec<&SparseVector> = vectors.into_iter().collect();
        if let Some(v) = vectors.iter().find(|v| v.dim() != ambient) {
            return Err(Error::AmbientMismatch(ambient, v.dim()));
        }
        Ok(Subspace {
            ambient,
            rows: reduced_rows(ambient, vectors),
        })
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        let rows = m.sparse_rows();
        Subspace {
            ambient: m.cols(),
            rows: reduced_rows(m.cols(), &rows),
        }
    }

    pub(crate) fn from_echelon(e: EchelonBuilder) -> Self {
        Subspace {
            ambient: e.dim(),
            rows: e.into_reduced_rows(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("basis rows are nonzero").0).collect()
    }

    /// The canonical basis as a dense matrix.
    pub fn basis(&self) -> Matrix {
        Matrix::from_sparse_rows(self.ambient, &self.rows)
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, dim));
        }
        Ok(())
    }

    /// `v` minus its component along the pivots: zero exactly when `v` lies
    /// in the subspace, and zero at every pivot column otherwise.
    pub fn reduce(&self, v: &SparseVector) -> Result<SparseVector> {
        self.check(v.dim())?;
        let mut out = v.clone();
        for row in &self.rows {
            let pivot = row.leading().expect("nonzero").0;
            if let Some(c) = v.get(pivot) {
                out.axpy(&-c.clone(), row);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check(other.ambient)?;
        for r in &other.rows {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows))
    }

    /// Zassenhaus: row-reduce `[a | a]` stacked over `[b | 0]`; rows whose
    /// left half vanishes span the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let d = self.ambient;
        let mut e = EchelonBuilder::new(2 * d);
        for r in &self.rows {
            e.insert(&r.concat(r));
        }
        for r in &other.rows {
            e.insert(&r.shifted(2 * d, 0));
        }
        let meet: Vec<SparseVector> = e
            .into_reduced_rows()
            .into_iter()
            .filter(|r| r.leading().is_some_and(|(c, _)| c >= d))
            .map(|r| r.window(d, d))
            .collect();
        Subspace::span(d, &meet)
    }

    /// A canonical copy of `self / by` inside the ambient space: each basis
    /// vector is reduced modulo `by`, eliminating `by`'s *last* nonzero
    /// coordinates so the survivors sit on the earliest monomials.
    pub fn modulo(&self, by: &Subspace) -> Result<Subspace> {
        self.check(by.ambient)?;
        let by_rev = Subspace::span(self.ambient, &by.rows.iter().map(SparseVector::reversed).collect::<Vec<_>>())?;
        let mut reduced = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            reduced.push(by_rev.reduce(&r.reversed())?.reversed());
        }
        Subspace::span(self.ambient, &reduced)
    }

    /// [`Self::modulo`] with coordinates ranked by `rank` instead of by
    /// index: coordinate `i` is treated as if it sat at position `rank[i]`,
    /// so low-ranked coordinates are the ones kept.
    pub fn modulo_ranked(&self, by: &Subspace, rank: &[usize]) -> Result<Subspace> {
        self.check(by.ambient)?;
        if rank.len() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, rank.len()));
        }
        let mut back = vec![usize::MAX; rank.len()];
        for (i, &r) in rank.iter().enumerate() {
            if r >= rank.len() || back[r] != usize::MAX {
                return Err(Error::InvalidPermutation("rank is not a permutation".into()));
            }
            back[r] = i;
        }
        let moved = |s: &Subspace| Subspace::span(s.ambient, &s.rows.iter().map(|v| v.permute(rank)).collect::<Vec<_>>());
        let result = moved(self)?.modulo(&moved(by)?)?;
        Subspace::span(self.ambient, &result.rows.iter().map(|v| v.permute(&back)).collect::<Vec<_>>())
    }
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_eq(a: &Subspace, b: &Subspace) -> Result<bool> {
    a.check(b.ambient)?;
    Ok(a == b)
}

pub fn contains(a: &Subspace, v: &SparseVector) -> Result<bool> {
    a.contains(v)
}

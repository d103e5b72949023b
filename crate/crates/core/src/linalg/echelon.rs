use super::SparseVector;

/// Incremental row echelon form over sparse rows.
///
/// Each stored row is monic at its leading column (its pivot) and no two
/// rows share a pivot. Inserting reduces the new vector against the stored
/// rows; only independent vectors are kept.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    dim: usize,
    rows: Vec<SparseVector>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBuilder {
    pub fn new(dim: usize) -> Self {
        EchelonBuilder {
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// What is left of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        assert_eq!(v.dim(), self.dim, "vector dimension differs from echelon ambient");
        let mut v = v.clone();
        let mut cursor = 0;
        loop {
            let next = v
                .iter()
                .find(|(c, _)| *c >= cursor && self.pivot_row[*c].is_some())
                .map(|(c, x)| (c, x.clone()));
            let Some((col, coef)) = next else { break };
            let row = &self.rows[self.pivot_row[col].expect("checked above")];
            v.axpy(&-coef, row);
            cursor = col + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((col, _)) => {
                self.pivot_row[col] = Some(self.rows.len());
                self.rows.push(r.normalized());
                true
            }
        }
    }

    /// Back-substitutes into reduced row echelon form, rows sorted by pivot.
    pub fn into_reduced_rows(self) -> Vec<SparseVector> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        for i in (0..rows.len()).rev() {
            let pivot = rows[i].leading().expect("stored rows are nonzero").0;
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if let Some(f) = row.get(pivot).cloned() {
                    row.axpy(&-f, pivot_row);
                }
            }
        }
        rows
    }
}

/// Reduced row echelon rows spanning the given vectors.
pub(crate) fn reduced_rows<'a>(
    dim: usize,
    vectors: impl IntoIterator<Item = &'a SparseVector>,
) -> Vec<SparseVector> {
    let mut e = EchelonBuilder::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.into_reduced_rows()
}

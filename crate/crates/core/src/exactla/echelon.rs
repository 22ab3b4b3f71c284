//! Incremental row echelon forms over sparse rows.
//!
//! Every elimination in the crate goes through [`Echelon`]: rows are inserted one at
//! a time, reduced against the existing pivots, and kept with a leading coefficient
//! of one. [`Echelon::into_reduced`] then back-substitutes to reduced row echelon form.

use super::scalar::{Field, Scalar};

/// A sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(dense: &[Scalar]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(field: Field, sparse: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, x) in sparse {
        out[*i] = x.clone();
    }
    out
}

/// Builds a sparse vector from unsorted `(index, value)` terms, summing duplicates.
pub fn sparse_collect(mut terms: Vec<(usize, Scalar)>) -> SparseVec {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, x) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

fn lookup(row: &SparseVec, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// `a - coef * b`.
fn axpy(a: &SparseVec, coef: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let kb = b.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, -(coef * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(coef * &b[j].1);
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(row: &mut SparseVec, by: &Scalar) {
    for (_, x) in row.iter_mut() {
        *x = &*x * by;
    }
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots until its leading column is free.
    pub fn reduce_leading(&self, mut row: SparseVec) -> SparseVec {
        while let Some((lead, coef)) = row.first() {
            match self.pivot_row[*lead] {
                Some(r) => {
                    let coef = coef.clone();
                    row = axpy(&row, &coef, &self.rows[r]);
                }
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns `true` when it was independent of the rows seen so far.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        let mut row = self.reduce_leading(row);
        let Some((lead, coef)) = row.first() else {
            return false;
        };
        let lead = *lead;
        let inv = coef.inv().expect("nonzero leading coefficient");
        scale(&mut row, &inv);
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivot_row[*c].is_some()).collect()
    }

    pub fn into_reduced(self) -> Reduced {
        let Echelon { field, ncols, rows, .. } = self;
        let mut rows: Vec<(usize, SparseVec)> = rows.into_iter().map(|r| (r[0].0, r)).collect();
        rows.sort_by_key(|(p, _)| *p);
        // Back-substitute from the last pivot upward.
        for j in (0..rows.len()).rev() {
            let (pj, _) = rows[j];
            for i in 0..j {
                if let Some(coef) = lookup(&rows[i].1, pj).cloned() {
                    let reduced = axpy(&rows[i].1, &coef, &rows[j].1);
                    rows[i].1 = reduced;
                }
            }
        }
        Reduced { field, ncols, rows }
    }
}

/// Reduced row echelon form: rows sorted by pivot column, pivots equal to one, and
/// every pivot column zero outside its own row.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<(usize, SparseVec)>,
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.ncols).filter(|c| !is_pivot[*c]).collect()
    }

    /// Basis of the null space, one vector per free column, in increasing column order.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v: Vec<(usize, Scalar)> = vec![(f, self.field.one())];
                for (p, row) in &self.rows {
                    if let Some(x) = lookup(row, f) {
                        v.push((*p, -x));
                    }
                }
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&Scalar> {
        lookup(&self.rows[row].1, col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_rows_are_rejected() {
        let q = Field::Rational;
        let mut e = Echelon::new(q, 3);
        let r = |v: &[i64]| sparse_from_dense(&v.iter().map(|x| q.from_i64(*x)).collect::<Vec<_>>());
        assert!(e.insert(r(&[1, 2, 3])));
        assert!(e.insert(r(&[0, 1, 1])));
        assert!(!e.insert(r(&[2, 5, 7])));
        assert!(!e.insert(r(&[0, 0, 0])));
        assert_eq!(e.rank(), 2);
        let red = e.into_reduced();
        assert_eq!(red.kernel().len(), 1);
    }
}

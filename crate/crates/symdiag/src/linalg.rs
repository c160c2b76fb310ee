//! Exact dense linear algebra over ℚ.
//!
//! Everything downstream (invariant dimensions, Koszul homology, exactness
//! of complexes) reduces to ranks and kernels of matrices with rational
//! entries.  Sizes stay in the hundreds, so plain fraction-free-ish Gaussian
//! elimination with explicit pivoting is both fast enough and obviously
//! correct.

use crate::Rat;
use num::traits::{One, Zero};

/// A dense matrix over ℚ, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// Build from a closure giving the entry at `(r, c)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Build from an iterator of rows (each a `Vec<Rat>` of length `cols`).
    pub fn from_rows(cols: usize, rows_iter: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for row in rows_iter {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row);
            rows += 1;
        }
        QMatrix { rows, cols, data }
    }

    /// Build from a slice of columns (each a `Vec<Rat>` of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = QMatrix::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut s = Rat::zero();
                for c in 0..self.cols {
                    s += self.get(r, c) * &v[c];
                }
                s
            })
            .collect()
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    /// True if every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rank by Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon()
    }

    /// Trace (requires a square matrix).
    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Determinant by Gaussian elimination (requires a square matrix).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != col {
                for c in 0..n {
                    let a = m.get(p, c).clone();
                    let b = m.get(col, c).clone();
                    m.set(p, c, b);
                    m.set(col, c, a);
                }
                det = -det;
            }
            let lead = m.get(col, col).clone();
            det *= &lead;
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &lead;
                for c in col..n {
                    let sub = &factor * m.get(col, c);
                    let val = m.get(r, c) - sub;
                    m.set(r, c, val);
                }
            }
        }
        det
    }

    /// In-place forward elimination; returns the rank.  The matrix is left in
    /// (unreduced) row-echelon form.
    pub fn row_echelon(&mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // Find a pivot in this column at or below pivot_row.
            let mut sel = None;
            for r in pivot_row..self.rows {
                if !self.get(r, col).is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.swap_rows(pivot_row, sel);
            let inv = {
                let p = self.get(pivot_row, col).clone();
                Rat::new(p.denom().clone(), p.numer().clone())
            };
            // Normalise the pivot row so the pivot is 1 (cheap at our sizes,
            // and keeps numerators small).
            for c in col..self.cols {
                let v = self.get(pivot_row, c) * &inv;
                self.set(pivot_row, c, v);
            }
            for r in (pivot_row + 1)..self.rows {
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                self.set(r, col, Rat::zero());
                for c in (col + 1)..self.cols {
                    let v = self.get(r, c) - &factor * self.get(pivot_row, c);
                    self.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// A basis of the right kernel `{v : Av = 0}`, as column vectors
    /// (each returned `Vec<Rat>` has length `cols`).
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        // Reduced row echelon form, tracking pivot columns.
        let mut m = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let mut sel = None;
            for r in pivot_row..m.rows {
                if !m.get(r, col).is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            m.swap_rows(pivot_row, sel);
            let inv = {
                let p = m.get(pivot_row, col).clone();
                Rat::new(p.denom().clone(), p.numer().clone())
            };
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rat::zero(); m.cols];
            v[fc] = Rat::from_integer(1.into());
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(pr, fc).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Vertical stack: `self` on top of `other` (same number of columns).
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Express `v` as a linear combination of the given columns, if possible.
/// Returns the coefficient vector (one entry per column).  The columns need
/// not be independent; any valid solution is returned.
pub fn solve_in_span(columns: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let rows = v.len();
    let cols = columns.len();
    let mut m = QMatrix::zero(rows, cols + 1);
    for (c, b) in columns.iter().enumerate() {
        assert_eq!(b.len(), rows, "column length mismatch");
        for r in 0..rows {
            m.set(r, c, b[r].clone());
        }
    }
    for r in 0..rows {
        m.set(r, cols, v[r].clone());
    }
    for vec in m.nullspace() {
        if !vec[cols].is_zero() {
            let inv = -vec[cols].clone();
            return Some((0..cols).map(|c| &vec[c] / &inv).collect());
        }
    }
    None
}

/// Incremental solver for repeated "express `v` in this fixed family"
/// queries.  Vectors of the family are inserted once (eliminating against
/// the rows stored so far, with the combination tracked); every later
/// [`SpanSolver::solve`] is a single elimination pass, `O(rank · dim)`,
/// instead of a fresh Gaussian elimination per query.  The family may be
/// dependent; dependent vectors simply never receive weight in solutions.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    dim: usize,
    /// `(reduced vector, pivot position, combination over inserted family)`;
    /// the reduced vector is normalized to `1` at its pivot.
    rows: Vec<(Vec<Rat>, usize, Vec<Rat>)>,
    inserted: usize,
}

impl SpanSolver {
    pub fn new(dim: usize) -> Self {
        SpanSolver {
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    /// Build from columns, requiring them to be linearly independent.
    pub fn from_independent(dim: usize, columns: &[Vec<Rat>]) -> Self {
        let mut s = SpanSolver::new(dim);
        for c in columns {
            assert!(s.insert(c.clone()), "columns are not independent");
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Insert the next vector of the family.  Returns `false` if it was
    /// already in the span of the previous ones (nothing is stored then,
    /// but the vector still counts towards the family size).
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let k = self.inserted;
        self.inserted += 1;
        let mut combo = vec![Rat::zero(); k + 1];
        combo[k] = Rat::one();
        for (row, pivot, rcombo) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                if !row[i].is_zero() {
                    let updated = &v[i] - &c * &row[i];
                    v[i] = updated;
                }
            }
            for (i, rc) in rcombo.iter().enumerate() {
                if !rc.is_zero() {
                    let updated = &combo[i] - &c * rc;
                    combo[i] = updated;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = {
            let piv = v[p].clone();
            Rat::new(piv.denom().clone(), piv.numer().clone())
        };
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for x in combo.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((v, p, combo));
        true
    }

    /// Express `v` in the inserted family; returns one coefficient per
    /// inserted vector (dependent members get weight zero), or `None` if
    /// `v` is outside the span.
    pub fn solve(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut v = v.to_vec();
        let mut combo = vec![Rat::zero(); self.inserted];
        for (row, pivot, rcombo) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                if !row[i].is_zero() {
                    let updated = &v[i] - &c * &row[i];
                    v[i] = updated;
                }
            }
            for (i, rc) in rcombo.iter().enumerate() {
                if !rc.is_zero() {
                    let updated = &combo[i] + &c * rc;
                    combo[i] = updated;
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(combo)
        } else {
            None
        }
    }
}

/// A sparse rational matrix stored row-wise, for exact ranks of the large
/// but extremely sparse blocks that Koszul differentials produce (a couple
/// of thousand columns, a handful of nonzeros per column).
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<std::collections::BTreeMap<usize, Rat>>,
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: vec![std::collections::BTreeMap::new(); rows] }
    }

    /// Accumulate `v` into entry `(r, c)`, dropping it if the sum cancels.
    pub fn add(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries[r].entry(c) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|r| r.len()).sum()
    }

    /// Exact rank by sparse Gaussian elimination.  Pivot rows are chosen
    /// fewest-nonzeros-first to keep fill-in low on incidence-like input.
    pub fn rank(mut self) -> usize {
        let mut active: Vec<usize> =
            (0..self.rows).filter(|&r| !self.entries[r].is_empty()).collect();
        let mut rank = 0;
        while !active.is_empty() {
            let (pos, _) = active
                .iter()
                .enumerate()
                .min_by_key(|(_, &r)| self.entries[r].len())
                .unwrap();
            let r = active.swap_remove(pos);
            let row = std::mem::take(&mut self.entries[r]);
            if row.is_empty() {
                continue;
            }
            rank += 1;
            let (&pivot_col, pivot_val) = row.iter().next().unwrap();
            let pivot_val = pivot_val.clone();
            let mut i = 0;
            while i < active.len() {
                let j = active[i];
                if let Some(v) = self.entries[j].get(&pivot_col).cloned() {
                    let factor = v / &pivot_val;
                    for (&cc, vv) in &row {
                        let delta = -(&factor * vv);
                        self.add(j, cc, delta);
                    }
                    debug_assert!(!self.entries[j].contains_key(&pivot_col));
                    if self.entries[j].is_empty() {
                        active.swap_remove(i);
                        continue;
                    }
                }
                i += 1;
            }
        }
        rank
    }

    /// Dense view, for small matrices and tests.
    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zero(self.rows, self.cols);
        for (r, row) in self.entries.iter().enumerate() {
            for (&c, v) in row {
                m.set(r, c, v.clone());
            }
        }
        m
    }
}

/// Incremental row-space builder: feed rows one at a time, and it tells you
/// whether each row was independent of everything fed so far.  Used to count
/// dimensions of spans without materialising one huge matrix.
pub struct RowSpace {
    cols: usize,
    /// Echelonised independent rows, each with its pivot column.
    rows: Vec<(usize, Vec<Rat>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current span; if a nonzero remainder survives,
    /// add it and return `true`.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for c in *pivot..self.cols {
                    let nv = &v[c] - &factor * &row[c];
                    v[c] = nv;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = {
            let p = v[pivot].clone();
            Rat::new(p.denom().clone(), p.numer().clone())
        };
        for c in pivot..self.cols {
            let nv = &v[c] * &inv;
            v[c] = nv;
        }
        let at = self
            .rows
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .unwrap_err();
        self.rows.insert(at, (pivot, v));
        true
    }

    /// Whether `v` lies in the current span (does not modify the space).
    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for c in *pivot..self.cols {
                    let nv = &v[c] - &factor * &row[c];
                    v[c] = nv;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rank_and_nullspace() {
        // [[1,2,3],[2,4,6],[1,0,1]] has rank 2 and a 1-dim kernel.
        let m = QMatrix::from_rows(
            3,
            vec![
                vec![rat(1), rat(2), rat(3)],
                vec![rat(2), rat(4), rat(6)],
                vec![rat(1), rat(0), rat(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        // Check A v = 0.
        for r in 0..m.rows {
            let mut s = Rat::zero();
            for c in 0..m.cols {
                s += m.get(r, c) * &ns[0][c];
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn sparse_rank_agrees_with_dense() {
        // deterministic pseudo-random sparse matrices, both engines
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..30 {
            let rows = 5 + (next() % 20) as usize;
            let cols = 5 + (next() % 20) as usize;
            let mut s = SparseMat::new(rows, cols);
            for _ in 0..(rows * cols / 4) {
                let r = (next() % rows as u64) as usize;
                let c = (next() % cols as u64) as usize;
                let v = (next() % 5) as i64 - 2;
                s.add(r, c, rat(v));
            }
            assert_eq!(s.clone().rank(), s.to_dense().rank(), "trial {trial}");
        }
    }

    #[test]
    fn rowspace_counts_dimension() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(vec![rat(1), rat(1), rat(0)]));
        assert!(rs.insert(vec![rat(0), rat(1), rat(1)]));
        assert!(!rs.insert(vec![rat(1), rat(2), rat(1)]));
        assert_eq!(rs.dim(), 2);
        assert!(rs.contains(&[rat(2), rat(3), rat(1)]));
        assert!(!rs.contains(&[rat(0), rat(0), rat(1)]));
    }
}

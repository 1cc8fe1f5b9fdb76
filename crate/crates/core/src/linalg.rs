//! Exact linear algebra over GF(p): sparse matrices and an incremental
//! sparse row-echelon form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Arithmetic in GF(p) for a prime `p < 2^16`.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    inverses: Vec<u32>,
}

impl Field {
    pub fn new(p: u32) -> Self {
        assert!((2..1 << 16).contains(&p), "field prime out of range: {p}");
        let mut inverses = vec![0; p as usize];
        for a in 1..p {
            // brute force is fine for the small primes used here
            inverses[a as usize] = (1..p).find(|b| (a * b) % p == 1).expect("p is prime");
        }
        Field { p, inverses }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.inverses[a as usize]
    }

    /// Reduces a signed integer into `0..p`.
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

/// A sparse vector: `(column, nonzero value)` pairs sorted by column.
pub type SparseRow = Vec<(u32, u32)>;

/// Sparse matrix over GF(p) in compressed-row form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl FieldMatrix {
    /// Builds from rows that are sorted, duplicate-free and have no zeros.
    pub fn from_rows(p: u32, cols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut row_ptr = vec![0];
        let mut entries = Vec::new();
        for row in rows {
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(row.iter().all(|&(c, v)| (c as usize) < cols && v != 0 && v < p));
            entries.extend(row);
            row_ptr.push(entries.len());
        }
        FieldMatrix {
            p,
            rows: row_ptr.len() - 1,
            cols,
            row_ptr,
            entries,
        }
    }

    pub fn from_dense(p: u32, dense: &[Vec<u32>], cols: usize) -> Self {
        Self::from_rows(
            p,
            cols,
            dense.iter().map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v % p != 0)
                    .map(|(c, &v)| (c as u32, v % p))
                    .collect()
            }),
        )
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn row(&self, i: usize) -> &[(u32, u32)] {
        &self.entries[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| {
                let mut r = vec![0; self.cols];
                for &(c, v) in self.row(i) {
                    r[c as usize] = v;
                }
                r
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let f = Field::new(self.p);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(0, |acc, &(c, v)| f.add(acc, f.mul(v, x[c as usize])))
            })
            .collect()
    }

    /// `self · other`.
    pub fn matmul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let f = Field::new(self.p);
        let mut acc = vec![0u32; other.cols];
        let mut touched: Vec<u32> = Vec::new();
        let rows = (0..self.rows).map(|i| {
            for &(k, a) in self.row(i) {
                for &(c, b) in other.row(k as usize) {
                    if acc[c as usize] == 0 {
                        touched.push(c);
                    }
                    acc[c as usize] = f.add(acc[c as usize], f.mul(a, b));
                    if acc[c as usize] == 0 {
                        // stays in `touched`; filtered below
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let row: SparseRow = touched
                .iter()
                .filter(|&&c| acc[c as usize] != 0)
                .map(|&c| (c, acc[c as usize]))
                .collect();
            for &c in &touched {
                acc[c as usize] = 0;
            }
            touched.clear();
            row
        });
        let rows: Vec<SparseRow> = rows.collect();
        FieldMatrix::from_rows(self.p, other.cols, rows)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut cols: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for &(c, v) in self.row(i) {
                cols[c as usize].push((i as u32, v));
            }
        }
        FieldMatrix::from_rows(self.p, self.rows, cols)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(Field::new(self.p), self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
            if e.rank() == self.cols {
                break;
            }
        }
        e.rank()
    }
}

/// Incremental sparse row-echelon form.
///
/// Every stored row has leading coefficient 1 at its pivot column and
/// all other entries to the right of it. Incoming rows are reduced against
/// all existing pivots before insertion.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    cols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<SparseRow>,
    // scratch space for reduction
    acc: Vec<u32>,
    queued: Vec<bool>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            pivot_row: vec![NO_PIVOT; cols],
            rows: Vec::new(),
            acc: vec![0; cols],
            queued: vec![false; cols],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cols).filter(|&c| self.is_pivot(c))
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Reduces `row` against the stored pivots; the result has no entry in
    /// any pivot column.
    pub fn reduce(&mut self, row: SparseRow) -> SparseRow {
        let f = self.field.clone();
        let mut heap = BinaryHeap::with_capacity(row.len() * 4);
        for (c, v) in row {
            self.acc[c as usize] = v;
            self.queued[c as usize] = true;
            heap.push(Reverse(c));
        }
        let mut out = Vec::new();
        while let Some(Reverse(c)) = heap.pop() {
            let cu = c as usize;
            self.queued[cu] = false;
            let v = std::mem::take(&mut self.acc[cu]);
            if v == 0 {
                continue;
            }
            let r = self.pivot_row[cu];
            if r == NO_PIVOT {
                out.push((c, v));
                continue;
            }
            for &(c2, v2) in &self.rows[r as usize][1..] {
                let c2u = c2 as usize;
                self.acc[c2u] = f.sub(self.acc[c2u], f.mul(v, v2));
                if !self.queued[c2u] {
                    self.queued[c2u] = true;
                    heap.push(Reverse(c2));
                }
            }
        }
        out
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let mut reduced = self.reduce(row);
        let &(lead, lv) = reduced.first()?;
        if lv != 1 {
            let inv = self.field.inv(lv);
            for e in reduced.iter_mut() {
                e.1 = self.field.mul(e.1, inv);
            }
        }
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(reduced);
        Some(lead as usize)
    }

    /// Reduces a dense vector in place, eliminating every pivot column.
    pub fn reduce_dense(&self, v: &mut [u32]) {
        let f = &self.field;
        for c in 0..self.cols {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let r = self.pivot_row[c];
            if r == NO_PIVOT {
                continue;
            }
            for &(c2, v2) in &self.rows[r as usize] {
                v[c2 as usize] = f.sub(v[c2 as usize], f.mul(x, v2));
            }
        }
    }

    /// The kernel vector of the stored rows that is 1 at the free column
    /// `free`, 0 at every other free column.
    pub fn kernel_vector(&self, free: usize) -> Vec<u32> {
        assert!(!self.is_pivot(free));
        let f = &self.field;
        let mut v = vec![0u32; self.cols];
        v[free] = 1;
        for c in (0..self.cols).rev() {
            let r = self.pivot_row[c];
            if r == NO_PIVOT {
                continue;
            }
            let s = self.rows[r as usize][1..]
                .iter()
                .fold(0, |acc, &(c2, v2)| f.add(acc, f.mul(v2, v[c2 as usize])));
            v[c] = f.neg(s);
        }
        v
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        self.free_columns()
            .into_iter()
            .map(|c| self.kernel_vector(c))
            .collect()
    }
}

/// Canonical reduced row-echelon basis of the span of `vectors`.
pub fn rref_basis(field: &Field, cols: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(field.clone(), cols);
    for v in vectors {
        e.insert(dense_to_sparse(v));
    }
    let mut pivots: Vec<usize> = e.pivot_columns().collect();
    pivots.sort_unstable();
    // back-reduce each row so pivot columns are clean everywhere
    let mut out: Vec<Vec<u32>> = Vec::new();
    for &c in pivots.iter().rev() {
        let r = e.pivot_row[c] as usize;
        let mut dense = vec![0u32; cols];
        for &(c2, v2) in &e.rows[r] {
            dense[c2 as usize] = v2;
        }
        for done in &out {
            let lead = done.iter().position(|&x| x != 0).expect("nonzero row");
            let x = dense[lead];
            if x != 0 {
                for k in 0..cols {
                    dense[k] = field.sub(dense[k], field.mul(x, done[k]));
                }
            }
        }
        out.push(dense);
    }
    out.reverse();
    out
}

pub fn dense_to_sparse(v: &[u32]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(c, &x)| (c as u32, x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by plain dense Gaussian elimination.
    fn dense_rank(p: u32, mut m: Vec<Vec<u32>>, cols: usize) -> usize {
        let f = Field::new(p);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = f.inv(m[rank][c]);
            for k in 0..cols {
                m[rank][k] = f.mul(m[rank][k], inv);
            }
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let x = m[r][c];
                    for k in 0..cols {
                        m[r][k] = f.sub(m[r][k], f.mul(x, m[rank][k]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn matrix_strategy() -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>)> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..9, 1usize..9).prop_flat_map(
            |(p, rows, cols)| {
                (
                    Just(p),
                    Just(cols),
                    prop::collection::vec(prop::collection::vec(0..p, cols), rows),
                )
            },
        )
    }

    #[test]
    fn field_inverses() {
        for p in [2, 3, 5, 7, 11] {
            let f = Field::new(p);
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            assert_eq!(f.from_i64(-1), p - 1);
        }
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let id: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| u32::from(i == j)).collect()).collect();
        assert_eq!(FieldMatrix::from_dense(3, &id, 4).rank(), 4);
        assert_eq!(FieldMatrix::from_rows(3, 5, vec![vec![]; 3]).rank(), 0);
    }

    proptest! {
        #[test]
        fn rank_matches_dense_elimination((p, cols, m) in matrix_strategy()) {
            let a = FieldMatrix::from_dense(p, &m, cols);
            prop_assert_eq!(a.rank(), dense_rank(p, m.clone(), cols));
            prop_assert_eq!(a.transpose().rank(), a.rank());
        }

        #[test]
        fn kernel_vectors_are_annihilated((p, cols, m) in matrix_strategy()) {
            let a = FieldMatrix::from_dense(p, &m, cols);
            let mut e = Echelon::new(Field::new(p), cols);
            for i in 0..a.rows() {
                e.insert(a.row(i).to_vec());
            }
            let kernel = e.kernel_basis();
            prop_assert_eq!(kernel.len() + a.rank(), cols);
            for v in &kernel {
                prop_assert!(a.mul_vec(v).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(rref_basis(&Field::new(p), cols, &kernel).len(), kernel.len());
        }

        #[test]
        fn reduce_dense_removes_span((p, cols, m) in matrix_strategy()) {
            let f = Field::new(p);
            let mut e = Echelon::new(f.clone(), cols);
            for r in &m {
                e.insert(dense_to_sparse(r));
            }
            for r in &m {
                let mut v = r.clone();
                e.reduce_dense(&mut v);
                prop_assert!(v.iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn matmul_small() {
        let a = FieldMatrix::from_dense(5, &[vec![1, 2], vec![0, 3]], 2);
        let b = FieldMatrix::from_dense(5, &[vec![4, 0, 1], vec![1, 1, 0]], 3);
        assert_eq!(a.matmul(&b).to_dense(), vec![vec![1, 2, 1], vec![3, 3, 0]]);
    }
}

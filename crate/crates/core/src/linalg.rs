//! Exact sparse linear algebra over the supported rings: Smith normal form
//! with transformation matrices, ranks, saturated kernel bases and the
//! membership solvers behind the classification and cone checks.
//!
//! Matrices are stored column-major and sparse; elimination densifies
//! internally, which at the matrix sizes this crate handles is always the
//! right trade.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num::bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::ring::Ring;

/// Sparse matrix with scalars from a fixed ring. Stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, R::Elem)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveTargetError {
    #[error("target is not a standard basis column")]
    InvalidTarget,
    #[error("target coordinate {0} is among the killed rows")]
    TargetKilled(usize),
}

impl<R: Ring> SparseMatrix<R> {
    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        SparseMatrix { ring, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zero(ring.clone(), n, n);
        for i in 0..n {
            m.columns[i].push((i, ring.one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples. Zero values are
    /// dropped; a duplicate or out-of-range index is an error string (the
    /// callers wrap it into their own error types).
    pub fn from_triples(
        ring: R,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, R::Elem)>,
    ) -> Result<Self, String> {
        let mut m = Self::zero(ring, rows, cols);
        let mut seen = BTreeSet::new();
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(format!("entry ({r}, {c}) outside a {rows}x{cols} matrix"));
            }
            if !seen.insert((r, c)) {
                return Err(format!("duplicate entry at ({r}, {c})"));
            }
            if !m.ring.is_zero(&v) {
                m.columns[c].push((r, v));
            }
        }
        for col in &mut m.columns {
            col.sort_by_key(|(r, _)| *r);
        }
        Ok(m)
    }

    pub fn from_dense(ring: R, data: &[Vec<R::Elem>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut m = Self::zero(ring, rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !m.ring.is_zero(v) {
                    m.columns[c].push((r, v.clone()));
                }
            }
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, R::Elem)] {
        &self.columns[c]
    }

    pub fn column_vec(&self, c: usize) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.rows];
        for (r, x) in &self.columns[c] {
            v[*r] = x.clone();
        }
        v
    }

    pub fn get(&self, r: usize, c: usize) -> R::Elem {
        self.columns[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R::Elem)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn entry_count(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<R::Elem>> {
        let mut d = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.ring.clone(), self.cols, self.rows);
        for (r, c, v) in self.entries() {
            m.columns[r].push((c, v.clone()));
        }
        for col in &mut m.columns {
            col.sort_by_key(|(r, _)| *r);
        }
        m
    }

    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let ring = self.ring.clone();
        let mut out = Self::zero(ring.clone(), self.rows, other.cols);
        for c in 0..other.cols {
            let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
            for (k, w) in &other.columns[c] {
                for (r, v) in &self.columns[*k] {
                    let t = ring.mul(v, w);
                    match acc.remove(r) {
                        Some(cur) => {
                            let s = ring.add(&cur, &t);
                            if !ring.is_zero(&s) {
                                acc.insert(*r, s);
                            }
                        }
                        None => {
                            if !ring.is_zero(&t) {
                                acc.insert(*r, t);
                            }
                        }
                    }
                }
            }
            out.columns[c] = acc.into_iter().collect();
        }
        out
    }

    pub fn mat_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let mut out = vec![self.ring.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (r, a) in &self.columns[c] {
                out[*r] = self.ring.add(&out[*r], &self.ring.mul(a, x));
            }
        }
        out
    }

    /// Keeps the rows not listed in `drop`, renumbering them in order.
    pub fn drop_rows(&self, drop: &BTreeSet<usize>) -> Self {
        let mut map = vec![usize::MAX; self.rows];
        let mut next = 0;
        for r in 0..self.rows {
            if !drop.contains(&r) {
                map[r] = next;
                next += 1;
            }
        }
        let mut m = Self::zero(self.ring.clone(), next, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                if map[*r] != usize::MAX {
                    m.columns[c].push((map[*r], v.clone()));
                }
            }
        }
        m
    }

    /// New matrix from a subset of columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zero(self.ring.clone(), self.rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.columns[j] = self.columns[*c].clone();
        }
        m
    }
}

/// Exact determinant of a square matrix, by fraction-free (Bareiss)
/// elimination. Used by tests to confirm unimodularity of SNF transforms.
pub fn determinant<R: Ring>(m: &SparseMatrix<R>) -> R::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let ring = m.ring().clone();
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    let mut a = m.to_dense();
    let mut sign_flip = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&a[k][k]) {
            let Some(swap) = (k + 1..n).find(|&i| !ring.is_zero(&a[i][k])) else {
                return ring.zero();
            };
            a.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring.div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            a[i][k] = ring.zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip { ring.neg(&det) } else { det }
}

/// Smith normal form `U·M·V = D` with unimodular `U`, `V` and a diagonal `D`
/// whose entries form a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfDecomposition<R: Ring> {
    pub u: SparseMatrix<R>,
    pub v: SparseMatrix<R>,
    diag: Vec<R::Elem>,
    rows: usize,
    cols: usize,
}

impl<R: Ring> SnfDecomposition<R> {
    /// Diagonal entries, canonical associates, zeros trailing.
    pub fn diagonal(&self) -> &[R::Elem] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        let ring = self.u.ring();
        self.diag.iter().filter(|d| !ring.is_zero(d)).count()
    }

    pub fn d_matrix(&self) -> SparseMatrix<R> {
        let ring = self.u.ring().clone();
        let mut d = SparseMatrix::zero(ring.clone(), self.rows, self.cols);
        for (i, e) in self.diag.iter().enumerate() {
            if !ring.is_zero(e) {
                d.columns[i].push((i, e.clone()));
            }
        }
        d
    }
}

struct Dense<R: Ring> {
    ring: R,
    data: Vec<Vec<R::Elem>>,
}

impl<R: Ring> Dense<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.data {
            row.swap(i, j);
        }
    }
    /// row_t += f · row_s
    fn add_row(&mut self, t: usize, s: usize, f: &R::Elem) {
        if self.ring.is_zero(f) {
            return;
        }
        let src = self.data[s].clone();
        let ring = self.ring.clone();
        for (x, y) in self.data[t].iter_mut().zip(src.iter()) {
            *x = ring.add(x, &ring.mul(f, y));
        }
    }
    /// col_t += f · col_s
    fn add_col(&mut self, t: usize, s: usize, f: &R::Elem) {
        if self.ring.is_zero(f) {
            return;
        }
        let ring = self.ring.clone();
        for row in &mut self.data {
            let y = row[s].clone();
            row[t] = ring.add(&row[t], &ring.mul(f, &y));
        }
    }
    fn scale_row(&mut self, t: usize, u: &R::Elem) {
        let ring = self.ring.clone();
        for x in &mut self.data[t] {
            *x = ring.mul(x, u);
        }
    }
}

pub fn smith_normal_form<R: Ring>(m: &SparseMatrix<R>) -> SnfDecomposition<R> {
    let ring = m.ring().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = Dense { ring: ring.clone(), data: m.to_dense() };
    let mut u = Dense { ring: ring.clone(), data: SparseMatrix::identity(ring.clone(), rows).to_dense() };
    let mut v = Dense { ring: ring.clone(), data: SparseMatrix::identity(ring.clone(), cols).to_dense() };

    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        // Minimal-norm pivot over the trailing submatrix; ties broken by
        // position, which keeps the whole decomposition deterministic.
        let mut pivot: Option<(usize, usize, BigUint)> = None;
        for i in t..rows {
            for j in t..cols {
                if ring.is_zero(&d.data[i][j]) {
                    continue;
                }
                let n = ring.norm(&d.data[i][j]);
                if pivot.as_ref().is_none_or(|(_, _, best)| n < *best) {
                    pivot = Some((i, j, n));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        if pi != t {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if pj != t {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        'reduce: loop {
            for i in t + 1..rows {
                if ring.is_zero(&d.data[i][t]) {
                    continue;
                }
                let (q, _) = ring.div_rem(&d.data[i][t], &d.data[t][t]);
                let f = ring.neg(&q);
                d.add_row(i, t, &f);
                u.add_row(i, t, &f);
                if !ring.is_zero(&d.data[i][t]) {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..cols {
                if ring.is_zero(&d.data[t][j]) {
                    continue;
                }
                let (q, _) = ring.div_rem(&d.data[t][j], &d.data[t][t]);
                let f = ring.neg(&q);
                d.add_col(j, t, &f);
                v.add_col(j, t, &f);
                if !ring.is_zero(&d.data[t][j]) {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // Row and column are clean; enforce the divisibility chain.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if ring.div_exact(&d.data[i][j], &d.data[t][t]).is_none() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = ring.one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    continue 'reduce;
                }
                None => break,
            }
        }

        let unit = ring.normalizing_unit(&d.data[t][t]);
        if unit != ring.one() {
            d.scale_row(t, &unit);
            u.scale_row(t, &unit);
        }
        t += 1;
    }

    let diag = (0..limit).map(|i| d.data[i][i].clone()).collect();
    SnfDecomposition {
        u: SparseMatrix::from_dense(ring.clone(), &u.data),
        v: SparseMatrix::from_dense(ring, &v.data),
        diag,
        rows,
        cols,
    }
}

/// Number of nonzero diagonal entries of the Smith normal form; for integer
/// matrices this is also the rank over the rationals.
pub fn rank<R: Ring>(m: &SparseMatrix<R>) -> usize {
    smith_normal_form(m).rank()
}

/// A basis of the kernel, as coefficient vectors of length `cols`.
///
/// The basis vectors are columns of the unimodular `V` matching zero diagonal
/// entries, so over the integers they generate the full (saturated) kernel
/// lattice, not a finite-index sublattice.
pub fn kernel_basis<R: Ring>(m: &SparseMatrix<R>) -> Vec<Vec<R::Elem>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols()).map(|j| snf.v.column_vec(j)).collect()
}

/// Some `x` with `M·x = v` over the ring, if one exists.
pub fn lattice_membership<R: Ring>(m: &SparseMatrix<R>, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
    assert_eq!(v.len(), m.rows(), "target length must match row count");
    let ring = m.ring().clone();
    let snf = smith_normal_form(m);
    let w = snf.u.mat_vec(v);
    let mut y = vec![ring.zero(); m.cols()];
    for (i, wi) in w.iter().enumerate() {
        match snf.diagonal().get(i) {
            Some(d) if !ring.is_zero(d) => {
                y[i] = ring.div_exact(wi, d)?;
            }
            _ => {
                if !ring.is_zero(wi) {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mat_vec(&y))
}

/// Some `(a, x)` with `a ≠ 0` and `a·v = M·x`, if `v` lies in the span of the
/// columns over the fraction field; denominators are cleared so `a` and `x`
/// live in the ring. Over a field `a = 1`.
pub fn rational_span_membership<R: Ring>(
    m: &SparseMatrix<R>,
    v: &[R::Elem],
) -> Option<(R::Elem, Vec<R::Elem>)> {
    assert_eq!(v.len(), m.rows(), "target length must match row count");
    let ring = m.ring().clone();
    let snf = smith_normal_form(m);
    let w = snf.u.mat_vec(v);
    let r = snf.rank();
    for (i, wi) in w.iter().enumerate() {
        if i >= r && !ring.is_zero(wi) {
            return None;
        }
    }
    // a = lcm over i of d_i / gcd(d_i, w_i); minimal by construction, though
    // any nonzero multiple would do.
    let mut a = ring.one();
    for i in 0..r {
        if ring.is_zero(&w[i]) {
            continue;
        }
        let d = &snf.diagonal()[i];
        let g = ring.gcd(d, &w[i]);
        let t = ring.div_exact(d, &g).expect("gcd divides");
        let ga = ring.gcd(&a, &t);
        a = ring.mul(&ring.div_exact(&a, &ga).expect("gcd divides"), &t);
    }
    let mut y = vec![ring.zero(); m.cols()];
    for i in 0..r {
        let num = ring.mul(&a, &w[i]);
        y[i] = ring.div_exact(&num, &snf.diagonal()[i]).expect("lcm clears denominators");
    }
    Some((a, snf.v.mat_vec(&y)))
}

/// Finds `c` and `x` with `M·x = c·e_k + r` where `r` is supported on the
/// `kill_rows` coordinates. With `unit_required`, `c` must be a unit;
/// otherwise any `c ≠ 0` is accepted.
pub fn solve_in_quotient<R: Ring>(
    m: &SparseMatrix<R>,
    v: &[R::Elem],
    kill_rows: &BTreeSet<usize>,
    unit_required: bool,
) -> Result<Option<(R::Elem, Vec<R::Elem>)>, SolveTargetError> {
    assert_eq!(v.len(), m.rows(), "target length must match row count");
    let ring = m.ring().clone();
    let mut k = None;
    for (i, x) in v.iter().enumerate() {
        if !ring.is_zero(x) {
            if k.is_some() || *x != ring.one() {
                return Err(SolveTargetError::InvalidTarget);
            }
            k = Some(i);
        }
    }
    let Some(k) = k else {
        return Err(SolveTargetError::InvalidTarget);
    };
    if kill_rows.contains(&k) {
        return Err(SolveTargetError::TargetKilled(k));
    }
    let reduced = m.drop_rows(kill_rows);
    let new_k = (0..k).filter(|r| !kill_rows.contains(r)).count();
    let mut target = vec![ring.zero(); reduced.rows()];
    target[new_k] = ring.one();
    if unit_required {
        Ok(lattice_membership(&reduced, &target).map(|x| (ring.one(), x)))
    } else {
        Ok(rational_span_membership(&reduced, &target))
    }
}

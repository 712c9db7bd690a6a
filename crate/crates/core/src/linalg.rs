//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are sorted `(index, value)` lists with no stored zeros, matrices are
//! stored by column. Row reduction always pivots on the first nonzero column.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SVec {
    entries: Vec<(usize, Rational)>,
}

impl fmt::Debug for SVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v.to_string()))).finish()
    }
}

impl SVec {
    pub fn new() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SVec { entries: vec![(i, Rational::one())] }
    }

    /// Builds a vector from arbitrary pairs; repeated indices are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut acc = Accumulator::new();
        for (i, v) in pairs {
            acc.add(i, &v);
        }
        acc.finish()
    }

    fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn pivot(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= c;
        }
    }

    pub fn scaled(&self, c: &Rational) -> SVec {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rational, other: &SVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) => {
                    if ia < ib {
                        out.push(a.next().unwrap());
                    } else if ib < ia {
                        let (ib, vb) = b.next().unwrap();
                        out.push((*ib, c * vb));
                    } else {
                        let (ia, va) = a.next().unwrap();
                        let (_, vb) = b.next().unwrap();
                        let s = va + c * vb;
                        if !s.is_zero() {
                            out.push((ia, s));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (ib, vb) = b.next().unwrap();
                    out.push((*ib, c * vb));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SVec) -> SVec {
        let mut out = self.clone();
        out.axpy(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        let mut out = self.clone();
        out.axpy(&-Rational::one(), other);
        out
    }

    pub fn dot(&self, other: &SVec) -> Rational {
        let (small, large) =
            if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = Rational::zero();
        for (i, v) in small.iter() {
            if let Some(w) = large.get(i) {
                acc += v * w;
            }
        }
        acc
    }

    /// Keeps only the entries whose index satisfies `keep`, re-indexed by `map`.
    pub fn remap(&self, mut map: impl FnMut(usize) -> Option<usize>) -> SVec {
        SVec::from_pairs(self.iter().filter_map(|(i, v)| map(i).map(|j| (j, v.clone()))))
    }
}

/// Accumulates a sparse sum before sorting it into an [`SVec`].
#[derive(Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Rational>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    pub fn add(&mut self, i: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self.map.entry(i).or_insert_with(Rational::zero);
        *slot += v;
    }

    pub fn add_scaled(&mut self, c: &Rational, v: &SVec) {
        for (i, x) in v.iter() {
            self.add(i, &(c * x));
        }
    }

    pub fn finish(self) -> SVec {
        SVec::from_sorted(self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }
}

/// Column-stored sparse matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SVec>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz={})", self.nrows, self.ncols(), self.nnz())
    }
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(SVec::unit).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.indices().all(|i| i < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn from_rows(ncols: usize, rows: &[SVec]) -> Self {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter() {
                cols[c].push((r, v.clone()));
            }
        }
        SparseMatrix { nrows: rows.len(), cols: cols.into_iter().map(SVec::from_sorted).collect() }
    }

    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut accs: Vec<Accumulator> = (0..ncols).map(|_| Accumulator::new()).collect();
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) out of bounds");
            accs[j].add(i, &v);
        }
        SparseMatrix { nrows, cols: accs.into_iter().map(Accumulator::finish).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SVec::nnz).sum()
    }

    pub fn col(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.cols[j].get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVec::is_zero)
    }

    pub fn mul_vec(&self, v: &SVec) -> SVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_scaled(x, &self.cols[j]);
        }
        acc.finish()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, row: &SVec) -> SVec {
        SVec::from_sorted(
            self.cols
                .iter()
                .enumerate()
                .filter_map(|(j, c)| {
                    let d = row.dot(c);
                    (!d.is_zero()).then_some((j, d))
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch in product");
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.mul_vec(c)).collect() }
    }

    pub fn lin_comb(&self, a: &Rational, other: &SparseMatrix, b: &Rational) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let mut out = x.scaled(a);
                out.axpy(b, y);
                out
            })
            .collect();
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(&Rational::one(), other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(&Rational::one(), other, &-Rational::one())
    }

    pub fn scaled(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().map(|x| x.scaled(c)).collect() }
    }

    pub fn add_scaled_assign(&mut self, c: &Rational, other: &SparseMatrix) {
        for (x, y) in self.cols.iter_mut().zip(&other.cols) {
            x.axpy(c, y);
        }
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols(), cols: rows.into_iter().map(SVec::from_sorted).collect() }
    }

    pub fn rows(&self) -> Vec<SVec> {
        self.transpose().cols
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.nrows + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let (nb, mb) = (other.nrows, other.ncols());
        let mut cols = Vec::with_capacity(self.ncols() * mb);
        for ca in &self.cols {
            for cb in &other.cols {
                let mut entries = Vec::with_capacity(ca.nnz() * cb.nnz());
                for (i, va) in ca.iter() {
                    for (k, vb) in cb.iter() {
                        entries.push((i * nb + k, va * vb));
                    }
                }
                cols.push(SVec::from_sorted(entries));
            }
        }
        SparseMatrix { nrows: self.nrows * nb, cols }
    }

    /// Sub-block with the given row and column index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        SparseMatrix {
            nrows: rows.len(),
            cols: cols.iter().map(|&j| self.cols[j].remap(|i| pos.get(&i).copied())).collect(),
        }
    }
}

/// A subspace kept in fully reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(p) {
                out.axpy(&-c.clone(), row);
            }
        }
        out
    }

    /// Adds `v` to the span; returns the new row index if `v` was independent.
    pub fn insert(&mut self, v: &SVec) -> Option<usize> {
        let mut r = self.reduce(v);
        let p = r.pivot()?;
        let inv = r.get(p).unwrap().recip();
        r.scale(&inv);
        for row in &mut self.rows {
            if let Some(c) = row.get(p).cloned() {
                row.axpy(&-c, &r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in terms of the rows; meaningful only when `v` lies in the span.
    pub fn coords(&self, v: &SVec) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v.get(p).cloned().unwrap_or_else(Rational::zero)).collect()
    }
}

/// Basis of `{x : row . x = 0 for every row}` in a space of dimension `ncols`.
pub fn nullspace(rows: &[SVec], ncols: usize) -> Vec<SVec> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let pivot_set: std::collections::BTreeSet<usize> = ech.pivots.iter().copied().collect();
    (0..ncols)
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut pairs = vec![(free, Rational::one())];
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if let Some(v) = row.get(free) {
                    pairs.push((p, -v.clone()));
                }
            }
            SVec::from_pairs(pairs)
        })
        .collect()
}

/// Inverse of a square matrix given by dense rows, or `None` if singular.
pub fn invert(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n);
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in &mut a[col] {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients `c` with `target = sum c_k basis_k`, or `None` if `target` is
/// outside the span. The basis vectors must be linearly independent and live in
/// indices below `dim`.
pub fn solve_in_span(basis: &[SVec], target: &SVec, dim: usize) -> Option<Vec<Rational>> {
    let mut ech = Echelon::new();
    for (k, b) in basis.iter().enumerate() {
        let mut aug = b.clone();
        aug.axpy(&Rational::one(), &SVec::unit(dim + k));
        ech.insert(&aug);
    }
    let r = ech.reduce(target);
    if r.iter().any(|(i, _)| i < dim) {
        return None;
    }
    Some((0..basis.len()).map(|k| -r.get(dim + k).cloned().unwrap_or_else(Rational::zero)).collect())
}

impl SparseMatrix {
    /// Column-major flattening, index `j * nrows + i`.
    pub fn flatten(&self) -> SVec {
        SVec::from_sorted(
            self.cols
                .iter()
                .enumerate()
                .flat_map(|(j, c)| c.iter().map(move |(i, v)| (j * self.nrows + i, v.clone())))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, i64)]) -> SVec {
        SVec::from_pairs(pairs.iter().map(|&(i, x)| (i, q(x))))
    }

    #[test]
    fn axpy_cancels_to_exact_zero() {
        let mut a = v(&[(0, 1), (3, 2)]);
        a.axpy(&q(-2), &v(&[(3, 1)]));
        assert_eq!(a, v(&[(0, 1)]));
        a.axpy(&q(-1), &v(&[(0, 1)]));
        assert!(a.is_zero());
    }

    #[test]
    fn echelon_rank_and_coords() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 1)])).is_some());
        assert!(e.insert(&v(&[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(&v(&[(0, 1), (2, -1)])).is_none());
        assert_eq!(e.rank(), 2);
        let w = v(&[(0, 2), (1, 5), (2, 3)]);
        assert!(e.contains(&w));
        let c = e.coords(&w);
        let mut back = SVec::new();
        for (ci, row) in c.iter().zip(e.rows()) {
            back.axpy(ci, row);
        }
        assert_eq!(back, w);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let ns = nullspace(&[v(&[(0, 1), (1, 1), (2, 1)])], 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(x.dot(&v(&[(0, 1), (1, 1), (2, 1)])).is_zero());
        }
    }

    #[test]
    fn kron_and_transpose() {
        let a = SparseMatrix::from_entries(2, 2, [(0, 1, q(1))]);
        let i = SparseMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), q(1));
        assert_eq!(k.get(1, 3), q(1));
        assert_eq!(k.nnz(), 2);
        assert_eq!(k.transpose().transpose(), k);
        assert_eq!(a.vec_mul(&v(&[(0, 1)])), v(&[(1, 1)]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn span_coefficients() {
        let b = [v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 2)])];
        let t = v(&[(0, 2), (1, 5), (2, 6)]);
        assert_eq!(solve_in_span(&b, &t, 3).unwrap(), vec![q(2), q(3)]);
        assert!(solve_in_span(&b, &v(&[(2, 1)]), 3).is_none());
    }
}

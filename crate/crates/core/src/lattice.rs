//! Exact integer linear algebra over `BigInt`.
//!
//! Everything downstream reduces to the handful of routines here: column
//! Hermite normal form (for canonical coset representatives and saturated
//! kernels), Smith normal form (for cyclic structure and preimage lattices)
//! and finite quotients `Z^n / B Z^n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer column vector.
pub type IntVec = Vec<BigInt>;

pub fn int_vec(values: &[i64]) -> IntVec {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input,
    /// so it is meant for literals; use [`IntMat::from_big_rows`] for data.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let big: Vec<IntVec> = rows.iter().map(|r| int_vec(r.as_ref())).collect();
        Self::from_big_rows(&big).expect("ragged matrix literal")
    }

    /// Builds a matrix from rows; an empty row list gives a 0x0 matrix.
    pub fn from_big_rows(rows: &[IntVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[IntVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a {rows}-row matrix",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> IntVec {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &IntMat) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack column counts differ".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat::new(self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(&self, other: &IntMat) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics if not square.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn rank(&self) -> usize {
        hnf_columns(self).rank
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Adjugate matrix, so that `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return IntMat::zeros(0, 0);
        }
        if n == 1 {
            return IntMat::identity(1);
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor_rows: Vec<IntVec> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| self.get(r, c).clone())
                            .collect()
                    })
                    .collect();
                let minor = IntMat::from_big_rows(&minor_rows)
                    .expect("square minor")
                    .det();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                adj.set(j, i, cof);
            }
        }
        adj
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular(format!("determinant {d}")));
        }
        Ok(self.adjugate().scale(&d))
    }

    /// Solves `self * X = rhs` exactly for square nonsingular `self`,
    /// returning `None` when the solution is not integral.
    pub fn solve_integral(&self, rhs: &IntMat) -> Option<IntMat> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let num = &self.adjugate() * rhs;
        let mut out = Vec::with_capacity(num.data.len());
        for x in &num.data {
            let (q, r) = x.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntMat {
            rows: num.rows,
            cols: num.cols,
            data: out,
        })
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, src) * q;
            self.data[i * self.cols + dst] -= t;
        }
    }

    /// `row[dst] -= q * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(src, j) * q;
            self.data[dst * self.cols + j] -= t;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Replaces columns `a`, `b` by `x*a + y*b` and `s*a + t*b`.
    fn col_combine(&mut self, a: usize, b: usize, [x, y, s, t]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let va = self.get(i, a).clone();
            let vb = self.get(i, b).clone();
            self.set(i, a, x * &va + y * &vb);
            self.set(i, b, s * &va + t * &vb);
        }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMat {
    type Output = IntMat;

    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut m = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * rhs.get(k, j);
                    m.data[i * rhs.cols + j] += t;
                }
            }
        }
        m
    }
}

impl Add for &IntMat {
    type Output = IntMat;

    fn add(self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMat {
    type Output = IntMat;

    fn sub(self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMat {
    type Output = IntMat;

    fn neg(self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

/// Column Hermite normal form `A * U = H`.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMat,
    pub u: IntMat,
    /// Number of nonzero leading columns of `h`; the remaining columns of `u`
    /// span the integer kernel of `A`.
    pub rank: usize,
    /// Row index of the pivot of each nonzero column.
    pub pivots: Vec<usize>,
}

/// Column-style Hermite normal form.
///
/// `H` is in column echelon form: column `j < rank` has its first nonzero entry
/// at row `pivots[j]`, that entry is positive, and every entry to its left in
/// the same row lies in `[0, pivot)`. Columns at and beyond `rank` are zero.
pub fn hnf_columns(a: &IntMat) -> HnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMat::identity(n);
    let mut pivots = Vec::new();
    let mut pc = 0;
    for r in 0..m {
        if pc == n {
            break;
        }
        for j in pc + 1..n {
            if h.get(r, j).is_zero() {
                continue;
            }
            let a_ = h.get(r, pc).clone();
            let b_ = h.get(r, j).clone();
            let eg = a_.extended_gcd(&b_);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let a_red = &a_ / &g;
            let b_red = &b_ / &g;
            let nb = -&b_red;
            h.col_combine(pc, j, [&x, &y, &nb, &a_red]);
            u.col_combine(pc, j, [&x, &y, &nb, &a_red]);
        }
        if h.get(r, pc).is_zero() {
            continue;
        }
        if h.get(r, pc).is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let p = h.get(r, pc).clone();
        for l in 0..pc {
            let q = h.get(r, l).div_floor(&p);
            if !q.is_zero() {
                h.col_axpy(l, pc, &q);
                u.col_axpy(l, pc, &q);
            }
        }
        pivots.push(r);
        pc += 1;
    }
    HnfResult {
        h,
        u,
        rank: pc,
        pivots,
    }
}

/// Smith normal form `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl SnfResult {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> IntVec {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(a: &IntMat) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SnfResult { d, u, v };
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t) / &p;
                if !q.is_zero() {
                    d.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j) / &p;
                if !q.is_zero() {
                    d.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d, u, v }
}

/// Basis (as columns) of the integer kernel `{x : A x = 0}`.
///
/// The basis comes from the unimodular transform of the column HNF, so the
/// kernel it spans is saturated; it is then put in column HNF itself so the
/// output does not depend on elimination order.
pub fn kernel_saturated(a: &IntMat) -> IntMat {
    let res = hnf_columns(a);
    let n = a.cols();
    let basis = res.u.submatrix(0..n, res.rank..n);
    hnf_columns(&basis).h
}

/// Finite quotient `Z^n / B Z^n` for a full-rank square `B`.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    ambient_rank: usize,
    sublattice_basis: IntMat,
    /// Lower-triangular HNF of the sublattice; drives canonical reduction.
    hnf: IntMat,
    cyclic_factors: IntVec,
    to_normal: IntMat,
    from_normal: IntMat,
}

impl PartialEq for QuotientStructure {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf
    }
}

impl Eq for QuotientStructure {}

impl QuotientStructure {
    pub fn new(sublattice_basis: &IntMat) -> Result<Self> {
        if !sublattice_basis.is_square() {
            return Err(Error::DimensionMismatch(
                "sublattice basis must be square".into(),
            ));
        }
        if sublattice_basis.det().is_zero() {
            return Err(Error::SingularSublattice);
        }
        let n = sublattice_basis.rows();
        let hnf = hnf_columns(sublattice_basis).h;
        let s = snf(sublattice_basis);
        let from_normal = s.u.inverse_unimodular()?;
        Ok(QuotientStructure {
            ambient_rank: n,
            sublattice_basis: sublattice_basis.clone(),
            hnf,
            cyclic_factors: s.diagonal(),
            to_normal: s.u,
            from_normal,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn sublattice_basis(&self) -> &IntMat {
        &self.sublattice_basis
    }

    /// Canonical (HNF) basis of the sublattice.
    pub fn hnf_basis(&self) -> &IntMat {
        &self.hnf
    }

    /// Invariant factors `d_1 | ... | d_n`, ones included.
    pub fn cyclic_factors(&self) -> &[BigInt] {
        &self.cyclic_factors
    }

    /// Number of cosets, `|det B|`.
    pub fn size(&self) -> BigInt {
        self.cyclic_factors.iter().product()
    }

    /// Canonical representative: the unique coset member with
    /// `0 <= v_i < H_ii` for the lower-triangular HNF `H`.
    pub fn reduce(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(
            v.len(),
            self.ambient_rank,
            "vector length does not match quotient rank"
        );
        let mut v = v.to_vec();
        let n = self.ambient_rank;
        for i in 0..n {
            let p = self.hnf.get(i, i);
            let q = v[i].div_floor(p);
            if q.is_zero() {
                continue;
            }
            for (r, x) in v.iter_mut().enumerate().skip(i) {
                *x -= &q * self.hnf.get(r, i);
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn equivalent(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.contains(&vec_sub(a, b))
    }

    /// Coordinates in `prod Z/d_i` (components in `[0, d_i)`).
    pub fn to_normal_coords(&self, v: &[BigInt]) -> IntVec {
        self.to_normal
            .mul_vec(v)
            .into_iter()
            .zip(&self.cyclic_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    pub fn from_normal_coords(&self, c: &[BigInt]) -> IntVec {
        self.reduce(&self.from_normal.mul_vec(c))
    }

    /// All canonical representatives in lexicographic order.
    pub fn enumerate(&self) -> Vec<IntVec> {
        let n = self.ambient_rank;
        let bounds: Vec<BigInt> = (0..n).map(|i| self.hnf.get(i, i).clone()).collect();
        let mut out = Vec::new();
        let mut cur: IntVec = vec![BigInt::zero(); n];
        loop {
            out.push(cur.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = BigInt::zero();
            }
        }
    }
}

/// Representatives of `outer Z^n / inner Z^n`, where `inner Z^n ⊆ outer Z^n`.
pub fn coset_reps_of_inclusion(inner: &IntMat, outer: &IntMat) -> Result<Vec<IntVec>> {
    if !inner.is_square() || !outer.is_square() || inner.rows() != outer.rows() {
        return Err(Error::DimensionMismatch(
            "lattice bases must be square of equal size".into(),
        ));
    }
    if inner.det().is_zero() || outer.det().is_zero() {
        return Err(Error::SingularSublattice);
    }
    let coords = outer
        .solve_integral(inner)
        .ok_or_else(|| Error::NotSublattice(format!("{inner} not inside {outer}")))?;
    let q = QuotientStructure::new(&coords)?;
    Ok(q.enumerate().iter().map(|r| outer.mul_vec(r)).collect())
}

/// The lattice `{x in Q^k : F x in Z^n}` as `(1/denom) * basis * Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageLattice {
    pub basis: IntMat,
    pub denom: BigInt,
}

impl PreimageLattice {
    /// `[(1/denom) basis Z^k : Z^k]`, the order of the kernel of the torus map.
    pub fn index(&self) -> BigInt {
        let k = self.basis.cols();
        num_traits::pow(self.denom.clone(), k) / self.basis.det().abs()
    }
}

pub fn preimage_lattice(f: &IntMat) -> Result<PreimageLattice> {
    let k = f.cols();
    let s = snf(f);
    let rank = s.rank();
    if rank < k {
        return Err(Error::NotInjective { rank, cols: k });
    }
    let diag = s.diagonal();
    let denom = diag.last().cloned().unwrap_or_else(BigInt::one);
    let scales: IntVec = diag.iter().map(|d| &denom / d).collect();
    let n = &s.v * &IntMat::diagonal(&scales);
    let g = n
        .to_rows()
        .iter()
        .flatten()
        .fold(denom.clone(), |acc, x| acc.gcd(x));
    let n = IntMat::new(
        k,
        k,
        n.to_rows().into_iter().flatten().map(|x| x / &g).collect(),
    )?;
    Ok(PreimageLattice {
        basis: hnf_columns(&n).h,
        denom: &denom / &g,
    })
}

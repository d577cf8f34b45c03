//! Exact integer linear algebra over `Z^d`.
//!
//! Everything here works on arbitrary-precision integers. Determinants and
//! ranks use fraction-free (Bareiss) elimination; lattice bases come from a
//! column-style Hermite normal form.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An integer vector in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, x: &[BigRational]) -> BigRational {
        debug_assert_eq!(self.dim(), x.len());
        self.0
            .iter()
            .zip(x)
            .map(|(a, b)| b * a)
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn scaled(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn plus(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn negated(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    /// gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Sign of the first nonzero entry (0 for the zero vector).
    pub fn leading_sign(&self) -> i32 {
        match self.0.iter().find(|a| !a.is_zero()) {
            Some(a) if a.is_positive() => 1,
            Some(_) => -1,
            None => 0,
        }
    }

    /// The representative of `{v, -v}` whose first nonzero entry is positive.
    pub fn sign_normalized(&self) -> IntVector {
        if self.leading_sign() < 0 {
            self.negated()
        } else {
            self.clone()
        }
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|a| BigRational::from_integer(a.clone())).collect()
    }

    pub fn to_i64s(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|a| a.to_i64().ok_or_else(|| Error::Overflow(a.to_string())))
            .collect()
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// A `rows x cols` integer matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<IntVector>,
}

impl IntMatrix {
    pub fn from_columns(rows: usize, columns: Vec<IntVector>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.dim() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: bad.dim(),
            });
        }
        Ok(IntMatrix { rows, columns })
    }

    /// Builds a matrix from row vectors of equal length.
    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.dim(),
            });
        }
        let columns = (0..cols)
            .map(|j| IntVector(rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        Ok(IntMatrix {
            rows: rows.len(),
            columns,
        })
    }

    /// Convenience constructor from row-major `i64` data.
    pub fn from_rows_i64(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn identity(d: usize) -> Self {
        IntMatrix {
            rows: d,
            columns: (0..d).map(|i| IntVector::unit(d, i)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &IntVector {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.columns[j][i]
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.columns.iter().map(|c| c[i].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix {
            rows: self.cols(),
            columns: (0..self.rows).map(|i| self.row(i)).collect(),
        }
    }

    pub fn select_columns(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            columns: indices.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        debug_assert_eq!(self.cols(), v.dim());
        let mut out = vec![BigInt::zero(); self.rows];
        for (col, x) in self.columns.iter().zip(v.entries()) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(col.entries()) {
                *o += a * x;
            }
        }
        IntVector(out)
    }

    pub fn mul_rational_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        debug_assert_eq!(self.cols(), v.len());
        (0..self.rows)
            .map(|i| self.row(i).dot_rational(v))
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        debug_assert_eq!(self.cols(), other.rows());
        IntMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    fn row_major(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).0).collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols() {
            return Err(Error::arg(format!(
                "expected a square matrix, got {}x{}",
                self.rows,
                self.cols()
            )));
        }
        Ok(())
    }

    pub fn determinant(&self) -> Result<BigInt> {
        self.require_square()?;
        Ok(bareiss_determinant(self.row_major()))
    }

    /// Classical adjoint: `self * adj = det * I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(IntMatrix::identity(0));
        }
        let a = self.row_major();
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            // column j of adj: entries adj[i][j] = (-1)^{i+j} M_{j,i}
            let col = (0..n)
                .map(|i| {
                    let minor: Vec<Vec<BigInt>> = a
                        .iter()
                        .enumerate()
                        .filter(|&(r, _)| r != j)
                        .map(|(_, row)| {
                            row.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != i)
                                .map(|(_, x)| x.clone())
                                .collect()
                        })
                        .collect();
                    let m = bareiss_determinant(minor);
                    if (i + j) % 2 == 0 {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            columns.push(IntVector(col));
        }
        Ok(IntMatrix { rows: n, columns })
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant()
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss_rank(m.row_major())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// gcd of the absolute values of all `k x k` minors of `m`.
///
/// Zero exactly when every `k x k` minor vanishes, i.e. `rank(m) < k`.
pub fn gcd_of_minors(m: &IntMatrix, k: usize) -> Result<BigInt> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return Err(Error::arg(format!(
            "minor size {k} out of range for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let a = m.row_major();
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let sub = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
                .collect();
            g = g.gcd(&bareiss_determinant(sub));
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// `v` divided by the gcd of its entries.
pub fn primitive_part(v: &IntVector) -> Result<IntVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::arg("primitive part of the zero vector"));
    }
    Ok(IntVector(v.entries().iter().map(|a| a / &g).collect()))
}

/// Lattice length of the segment `[0, v]`: the number of lattice points on it minus one.
pub fn segment_length(v: &IntVector) -> Result<BigInt> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::arg("segment length of the zero vector"));
    }
    Ok(g)
}

pub fn is_primitive(v: &IntVector) -> bool {
    v.content().is_one()
}

/// Every subset of column indices (including the empty one) whose columns are
/// linearly independent, ordered by size and then lexicographically.
pub fn independent_subsets(m: &IntMatrix) -> Vec<Vec<usize>> {
    let r = rank(m);
    let mut out = vec![Vec::new()];
    for k in 1..=r {
        for s in combinations(m.cols(), k) {
            if rank(&m.select_columns(&s)) == k {
                out.push(s);
            }
        }
    }
    out
}

/// Result of [`column_hermite_form`]: `hnf = m * transform` with `transform`
/// unimodular.
#[derive(Clone, Debug)]
pub struct ColumnHermiteForm {
    pub hnf: IntMatrix,
    pub transform: IntMatrix,
    /// Row index of each pivot; its length is the rank.
    pub pivot_rows: Vec<usize>,
}

/// Column-style Hermite normal form.
///
/// The result is lower-triangular in echelon form: column `k` has its first
/// nonzero entry (the pivot, positive) in row `pivot_rows[k]`, and every entry
/// to the left of a pivot in the pivot's row lies in `[0, pivot)`. Columns
/// past the rank are zero.
pub fn column_hermite_form(m: &IntMatrix) -> ColumnHermiteForm {
    let rows = m.rows();
    let cols = m.cols();
    // Work on columns directly; column operations act on `a` and `u` alike.
    let mut a: Vec<Vec<BigInt>> = m.columns.iter().map(|c| c.0.clone()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..cols).map(|j| IntVector::unit(cols, j).0).collect();
    let mut pivot_rows = Vec::new();
    let mut c = 0;

    fn axpy(col: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
        for (x, s) in col.iter_mut().zip(src) {
            *x -= q * s;
        }
    }

    for i in 0..rows {
        if c == cols {
            break;
        }
        loop {
            let Some(jmin) = (c..cols)
                .filter(|&j| !a[j][i].is_zero())
                .min_by(|&x, &y| a[x][i].abs().cmp(&a[y][i].abs()).then(x.cmp(&y)))
            else {
                break;
            };
            a.swap(c, jmin);
            u.swap(c, jmin);
            let mut reduced = true;
            for j in c + 1..cols {
                if a[j][i].is_zero() {
                    continue;
                }
                let q = a[j][i].div_floor(&a[c][i]);
                let (left, right) = a.split_at_mut(j);
                axpy(&mut right[0], &q, &left[c]);
                let (uleft, uright) = u.split_at_mut(j);
                axpy(&mut uright[0], &q, &uleft[c]);
                if !a[j][i].is_zero() {
                    reduced = false;
                }
            }
            if reduced {
                break;
            }
        }
        if a[c][i].is_zero() {
            continue;
        }
        if a[c][i].is_negative() {
            for x in a[c].iter_mut().chain(u[c].iter_mut()) {
                *x = -&*x;
            }
        }
        for j in 0..c {
            let q = a[j][i].div_floor(&a[c][i]);
            if q.is_zero() {
                continue;
            }
            let (left, right) = a.split_at_mut(c);
            axpy(&mut left[j], &q, &right[0]);
            let (uleft, uright) = u.split_at_mut(c);
            axpy(&mut uleft[j], &q, &uright[0]);
        }
        pivot_rows.push(i);
        c += 1;
    }

    ColumnHermiteForm {
        hnf: IntMatrix {
            rows,
            columns: a.into_iter().map(IntVector).collect(),
        },
        transform: IntMatrix {
            rows: cols,
            columns: u.into_iter().map(IntVector).collect(),
        },
        pivot_rows,
    }
}

/// A lattice basis of `{x in Z^cols : m x = 0}`, in column Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let h = column_hermite_form(m);
    let r = h.pivot_rows.len();
    let kernel = h.transform.columns[r..].to_vec();
    if kernel.is_empty() {
        return kernel;
    }
    let k = IntMatrix::from_columns(m.cols(), kernel).expect("kernel columns share a dimension");
    let reduced = column_hermite_form(&k);
    let n = reduced.pivot_rows.len();
    reduced.hnf.columns.into_iter().take(n).collect()
}

/// A basis of the sublattice `{x in Z^d : v . x = 0}` for primitive `v`.
pub fn hyperplane_lattice_basis(v: &IntVector) -> Result<Vec<IntVector>> {
    if v.dim() < 2 {
        return Err(Error::arg("hyperplane lattice basis needs dimension >= 2"));
    }
    if v.is_zero() {
        return Err(Error::arg("normal vector is zero"));
    }
    if !is_primitive(v) {
        return Err(Error::arg(format!("normal vector {v} is not primitive")));
    }
    let row = IntMatrix::from_rows(v.dim(), std::slice::from_ref(v))?;
    Ok(integer_kernel(&row))
}

/// Given a basis `b_1..b_{d-1}` and a vector `w` forming a basis of `Z^d`,
/// returns the unimodular `U` with `U b_i = e_i` and `U w = e_d`.
pub fn unimodular_complement(basis: &[IntVector], w: &IntVector) -> Result<IntMatrix> {
    let d = w.dim();
    if basis.len() + 1 != d {
        return Err(Error::arg(format!(
            "expected {} basis vectors in dimension {d}, got {}",
            d.saturating_sub(1),
            basis.len()
        )));
    }
    let mut cols = basis.to_vec();
    cols.push(w.clone());
    let b = IntMatrix::from_columns(d, cols)?;
    let det = b.determinant()?;
    if !det.abs().is_one() {
        return Err(Error::NotLatticeBasis(det));
    }
    let adj = b.adjugate()?;
    Ok(if det.is_one() {
        adj
    } else {
        IntMatrix {
            rows: d,
            columns: adj.columns.iter().map(IntVector::negated).collect(),
        }
    })
}

/// Integer vector `n` with `n . x = det[a_1 ... a_{d-1} x]` for all `x`.
///
/// For linearly independent inputs this is a normal of their span; it is zero
/// when they are dependent.
pub fn orthogonal_vector(vectors: &[IntVector], d: usize) -> IntVector {
    debug_assert_eq!(vectors.len() + 1, d);
    let rows: Vec<Vec<BigInt>> = (0..d)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let entries = (0..d)
        .map(|i| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.clone())
                .collect();
            let m = bareiss_determinant(minor);
            if (i + d - 1) % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    IntVector(entries)
}

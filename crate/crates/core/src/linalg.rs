//! Exact rational linear algebra: matrices, reduced row-echelon form,
//! canonical subspaces, images, kernels and linear solving.
//!
//! Every linear operator in the crate is a [`Matrix`] acting on coordinate
//! columns, so the image of basis vector `j` is column `j`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A coordinate vector.
pub type Vector = Vec<Rational>;

/// Builds `num/den`. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Concatenates two coordinate blocks.
pub fn concat(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().chain(b).cloned().collect()
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, s: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length. With no rows
    /// the column count is taken from `cols_if_empty`.
    pub fn from_rows(rows: Vec<Vector>, cols_if_empty: usize) -> Result<Self, Error> {
        let cols = rows.first().map_or(cols_if_empty, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has length {}, expected {cols}",
                r.len()
            )));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vector>, rows_if_empty: usize) -> Result<Self, Error> {
        Ok(Self::from_rows(cols, rows_if_empty)?.transpose())
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = &out.data[idx] + a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &other.data),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vec_scale(&self.data, s) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Exact inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, pivots) = rref(&aug);
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) != other.get(r, c))
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form and the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if found != pr {
            for k in 0..cols {
                a.data.swap(found * cols + k, pr * cols + k);
            }
        }
        let inv = a.get(pr, c).recip();
        for k in c..cols {
            let v = a.get(pr, k) * &inv;
            a.set(pr, k, v);
        }
        for r in 0..rows {
            if r == pr || a.get(r, c).is_zero() {
                continue;
            }
            let factor = a.get(r, c).clone();
            for k in c..cols {
                let v = a.get(r, k) - &factor * a.get(pr, k);
                a.set(r, k, v);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    (a, pivots)
}

/// Basis of the null space of `m`, one vector per free column, in increasing
/// free-column order.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = zero_vec(m.cols);
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, fc).clone();
            }
            v
        })
        .collect()
}

/// A linear subspace stored by its canonical reduced row-echelon basis.
///
/// Two subspaces are equal exactly when their basis matrices are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self, Error> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient_dim)?;
        if m.cols != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "spanning vectors have length {}, ambient dimension is {ambient_dim}",
                m.cols
            )));
        }
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = rref(m);
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Self { ambient_dim: m.cols, basis: r.select_rows(&keep), pivots }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        self.basis.row(i).to_vec()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim, "vector length does not match ambient dimension");
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.combine(&coords);
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The ambient vector with the given coordinates.
    pub fn combine(&self, coords: &[Rational]) -> Vector {
        assert_eq!(coords.len(), self.dim(), "coordinate count does not match subspace dimension");
        let mut out = zero_vec(self.ambient_dim);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o += c * b;
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &rows).expect("rows share the ambient dimension")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // a·A = b·B  <=>  (a, b) in the left kernel of [A; -B]
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors().iter().map(|v| vec_neg(v)));
        let stacked = Matrix::from_cols(cols, self.ambient_dim).expect("uniform lengths");
        let vectors: Vec<Vector> = kernel_basis(&stacked)
            .iter()
            .map(|k| self.combine(&k[..self.dim()]))
            .collect();
        Subspace::span(self.ambient_dim, &vectors).expect("uniform lengths")
    }

    /// Reduces `v` modulo this subspace: subtracts the combination that
    /// clears every pivot coordinate.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o -= &f * b;
            }
        }
        out
    }

    /// Coordinates that are not pivots; these index the canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Column space (as a subspace of the target) and null space (of the source).
pub fn image_and_kernel(m: &Matrix) -> (Subspace, Subspace) {
    let image = Subspace::row_space(&m.transpose());
    let kernel = Subspace::span(m.cols, &kernel_basis(m)).expect("kernel vectors have source length");
    (image, kernel)
}

/// One exact solution of `a·x = b`, with free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Option<Vector>, Error> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} equations but right-hand side has length {}",
            a.rows,
            b.len()
        )));
    }
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = zero_vec(a.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, a.cols).clone();
    }
    Ok(Some(x))
}

/// Canonical string form: `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p/q` or `p`; the result is normalised to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            t.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Human-readable linear combination such as `h - 2*f`.
pub fn format_combination(labels: &[String], v: &[Rational]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

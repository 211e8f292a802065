//! Dense exact linear algebra over any [`Scalar`] field.
//!
//! Elimination is Gauss–Jordan with the first nonzero entry of each column
//! as pivot. The reduced row echelon form is unique, so every basis produced
//! here (kernels, spans, particular solutions) is canonical.

mod poly;
mod subspace;

pub use poly::Poly;
pub use subspace::Subspace;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Column vector of field elements.
pub type Vector<F = Rational> = Vec<F>;

#[derive(Clone, PartialEq)]
pub struct Matrix<F = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// An affine solution set `particular + span(directions)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F: Scalar = Rational> {
    pub particular: Vector<F>,
    pub directions: Vec<Vector<F>>,
}

/// Integer eigenvalues with multiplicities, in decreasing eigenvalue order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Spectrum(pub Vec<(i64, usize)>);

impl Spectrum {
    pub fn multiplicity(&self, k: i64) -> usize {
        self.0
            .iter()
            .find(|(e, _)| *e == k)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|(_, m)| m).sum()
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().map(|(e, _)| *e)
    }

    /// Eigenvalues repeated by multiplicity, decreasing.
    pub fn to_multiset(&self) -> Vec<i64> {
        self.0
            .iter()
            .flat_map(|&(e, m)| std::iter::repeat(e).take(m))
            .collect()
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = F::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dim("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a `len × columns.len()` matrix; all columns must have length `len`.
    pub fn from_columns(len: usize, columns: &[Vector<F>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::dim("column length mismatch"));
        }
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let acc = std::mem::replace(&mut out[(i, j)], F::zero());
                    out[(i, j)] = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn try_mul_vec(&self, v: &[F]) -> Result<Vector<F>> {
        if v.len() != self.cols {
            return Err(Error::dim(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Panics on a dimension mismatch; see [`Matrix::try_mul_vec`].
    pub fn mul_vec(&self, v: &[F]) -> Vector<F> {
        self.try_mul_vec(v).expect("matrix-vector dimension mismatch")
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::dim("vstack column mismatch"));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Self::new(self.rows + below.rows, self.cols, data)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let m = Matrix {
            rows: self.rows,
            cols: self.cols,
            data: rows.into_iter().flatten().collect(),
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::dim("determinant of non-square matrix"));
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det = det * pivot.clone();
            let inv = pivot.inverse().expect("nonzero pivot");
            for i in (c + 1)..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone() * inv.clone();
                for j in c..n {
                    if rows[c][j].is_zero() {
                        continue;
                    }
                    let x = std::mem::replace(&mut rows[i][j], F::zero());
                    rows[i][j] = x - f.clone() * rows[c][j].clone();
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<F>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { F::one() } else { F::zero() }));
                row
            })
            .collect();
        let pivots = rref_rows(&mut rows, n);
        if pivots.len() < n {
            return None;
        }
        let data = rows.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(Matrix {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Basis of `{v : A v = 0}`, itself in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vector<F>> {
        let (r, pivots) = self.rref();
        let raw = kernel_from_rref(&r, &pivots);
        Subspace::from_spanning(self.cols, &raw).into_basis()
    }

    /// Exact solution of `A x = b` with all free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vector<F>>> {
        Ok(self.solve_affine(b)?.map(|s| s.particular))
    }

    /// The full solution set of `A x = b`.
    pub fn solve_affine(&self, b: &[F]) -> Result<Option<AffineSolution<F>>> {
        if b.len() != self.rows {
            return Err(Error::dim(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_rows(&mut rows, n + 1);
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut particular = vec![F::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = rows[r][n].clone();
        }
        let coeff = Matrix {
            rows: self.rows,
            cols: n,
            data: rows
                .iter()
                .flat_map(|row| row[..n].iter().cloned())
                .collect(),
        };
        let directions = kernel_from_rref(&coeff, &pivots);
        Ok(Some(AffineSolution {
            particular,
            directions,
        }))
    }

    /// Solves `A X = B` column by column in a single elimination. Returns
    /// `None` if any column is inconsistent.
    pub fn solve_many(&self, rhs: &Self) -> Result<Option<Self>> {
        if rhs.rows != self.rows {
            return Err(Error::dim("solve_many row mismatch"));
        }
        let n = self.cols;
        let k = rhs.cols;
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(rhs.row(r).iter().cloned());
                row
            })
            .collect();
        let pivots = rref_rows(&mut rows, n);
        let rank = pivots.len();
        if rows[rank..]
            .iter()
            .any(|row| row[n..].iter().any(|x| !x.is_zero()))
        {
            return Ok(None);
        }
        let mut out = Self::zeros(n, k);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                out[(c, j)] = rows[r][n + j].clone();
            }
        }
        Ok(Some(out))
    }

    /// Quick nilpotency test: `A^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut p = self.clone();
        let mut k = 1;
        while k < self.rows {
            if p.is_zero() {
                return true;
            }
            p = &p * &p;
            k *= 2;
        }
        p.is_zero()
    }

    /// Monic minimal polynomial, found as the first linear dependence among
    /// `I, A, A², …` (flattened).
    pub fn minimal_polynomial(&self) -> Result<Poly<F>> {
        if !self.is_square() {
            return Err(Error::dim("minimal polynomial of non-square matrix"));
        }
        let n = self.rows;
        let mut powers: Vec<Vector<F>> = vec![Self::identity(n).data];
        let mut current = Self::identity(n);
        for _ in 1..=n {
            current = &current * self;
            let target: Vector<F> = current.data.iter().map(|x| -x.clone()).collect();
            let krylov = Matrix::from_columns(n * n, &powers)?;
            if let Some(c) = krylov.solve(&target)? {
                let mut coeffs = c;
                coeffs.push(F::one());
                return Ok(Poly::new(coeffs));
            }
            powers.push(current.data.clone());
        }
        // n = 0: the empty matrix has minimal polynomial 1.
        Ok(Poly::new(vec![F::one()]))
    }

    /// Diagonalizable over the algebraic closure: the minimal polynomial is
    /// square-free.
    pub fn is_semisimple(&self) -> Result<bool> {
        let m = self.minimal_polynomial()?;
        Ok(m.gcd(&m.derivative()).degree() == Some(0))
    }

    /// Nilpotent via the minimal polynomial (`m = x^k`).
    pub fn is_nilpotent_exact(&self) -> Result<bool> {
        Ok(self.minimal_polynomial()?.is_monomial())
    }

    /// Spectrum of a semisimple matrix with integer eigenvalues in
    /// `[-bound, bound]`, by scanning `dim ker(A − k I)`.
    pub fn integer_spectrum(&self, bound: i64) -> Result<Spectrum> {
        if !self.is_square() {
            return Err(Error::dim("spectrum of non-square matrix"));
        }
        let n = self.rows;
        let mut found = Vec::new();
        let mut total = 0usize;
        let scan = std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]));
        for k in scan {
            if total == n {
                break;
            }
            let shifted = self - &Self::identity(n).scale(&F::from_integer(k));
            let mult = n - shifted.rank();
            if mult > 0 {
                found.push((k, mult));
                total += mult;
            }
        }
        if total != n {
            return Err(Error::invariant(format!(
                "non-integral or out-of-range spectrum: {total} of {n} eigenvalues in [-{bound}, {bound}]"
            )));
        }
        found.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(Spectrum(found))
    }
}

pub(crate) fn rref_rows<F: Scalar>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    let v = std::mem::replace(x, F::zero());
                    *x = v * inv.clone();
                }
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (c..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let v = std::mem::replace(&mut row[j], F::zero());
                row[j] = v - f.clone() * pivot_row[j].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref<F: Scalar>(r: &Matrix<F>, pivots: &[usize]) -> Vec<Vector<F>> {
    let n = r.cols;
    let free = (0..n).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![F::zero(); n];
        v[f] = F::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, f)].clone();
        }
        v
    })
    .collect()
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Scalar> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<F: Scalar> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

/// Vector helpers shared across modules.
pub mod vec_ops {
    use super::Vector;
    use crate::scalar::Scalar;

    pub fn zero<F: Scalar>(n: usize) -> Vector<F> {
        vec![F::zero(); n]
    }

    pub fn basis<F: Scalar>(n: usize, i: usize) -> Vector<F> {
        let mut v = zero(n);
        v[i] = F::one();
        v
    }

    pub fn add<F: Scalar>(a: &[F], b: &[F]) -> Vector<F> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub<F: Scalar>(a: &[F], b: &[F]) -> Vector<F> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale<F: Scalar>(a: &[F], s: &F) -> Vector<F> {
        a.iter().map(|x| x.clone() * s.clone()).collect()
    }

    pub fn is_zero<F: Scalar>(a: &[F]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// `Σ coeffs[i]·vectors[i]`.
    pub fn combination<F: Scalar>(n: usize, coeffs: &[F], vectors: &[Vector<F>]) -> Vector<F> {
        let mut out = zero(n);
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    let acc = std::mem::replace(o, F::zero());
                    *o = acc + c.clone() * x.clone();
                }
            }
        }
        out
    }
}

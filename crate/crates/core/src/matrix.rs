//! Dense matrices over an exact [`Field`] with Gauss–Jordan based rank, kernel,
//! solve and inverse, plus the rational-root splitting of characteristic
//! polynomials used for involutions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{join_fields, ComplexScalar, ExactScalar, Field};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Matrix over `Q` or a single real quadratic field.
pub type ExactMatrix = Matrix<ExactScalar>;
pub type ComplexMatrix = Matrix<ComplexScalar>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// `[[a, b], [c, d]]` from four blocks with compatible shapes.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let (r, cl) = (a.rows, a.cols);
        Self::from_fn(r + c.rows, cl + b.cols, |i, j| match (i < r, j < cl) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - cl)].clone(),
            (false, true) => c[(i - r, j)].clone(),
            (false, false) => d[(i - r, j - cl)].clone(),
        })
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the first
    /// nonzero entry in the column, so the result is canonical.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null-space basis as columns; one column per free variable.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -r[(i, f)].clone();
            }
        }
        k
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Solves `self · X = rhs`; `None` when inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let (r, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn col_space_contains(&self, other: &Self) -> bool {
        self.hstack(other).rank() == self.rank()
    }

    pub fn same_col_space(&self, other: &Self) -> bool {
        let r = self.hstack(other).rank();
        r == self.rank() && r == other.rank()
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients in ascending degree.
    /// Faddeev–LeVerrier; fine in characteristic zero.
    pub fn charpoly(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            m = next;
            let am = self * &m;
            let tr = (0..n).fold(F::zero(), |acc, i| acc + am[(i, i)].clone());
            coeffs[n - k] = -tr / F::from_i64(k as i64);
        }
        coeffs
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch");
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(l, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

impl ExactMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| ExactScalar::int(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    pub fn diag(entries: &[ExactScalar]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { ExactScalar::zero() })
    }

    /// The quadratic field all entries live in (`1` for a rational matrix).
    pub fn field(&self) -> Result<u64> {
        self.data.iter().try_fold(1, |d, x| join_fields(d, x.d()))
    }

    /// Like `from_rows`, additionally rejecting entries from two different fields.
    pub fn try_from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        m.field()?;
        Ok(m)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        join_fields(self.field()?, rhs.field()?)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self * rhs)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(ExactScalar::is_rational)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.as_integer().is_some())
    }

    pub fn to_integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.as_integer().ok_or(Error::NotInteger)).collect())
            .collect()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    /// Exact binary values of a float matrix.
    pub fn from_f64(m: &DMatrix<f64>) -> Result<Self> {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = ExactScalar::from_f64(m[(i, j)])?;
            }
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(|x| ComplexScalar::real(x.clone()))
    }

    /// Leading principal minors all positive (Sylvester). Assumes symmetry.
    pub fn is_positive_definite(&self) -> bool {
        self.is_square()
            && (1..=self.rows).all(|k| self.submatrix(0, 0, k, k).determinant().is_positive())
    }

    /// Scales each column to a primitive integer vector with the same direction.
    /// Requires rational entries.
    pub fn primitive_columns(&self) -> Result<Self> {
        let mut out = self.clone();
        for j in 0..self.cols {
            let col: Vec<BigRational> = self
                .column(j)
                .iter()
                .map(|x| x.as_rational().cloned().ok_or(Error::NotInteger))
                .collect::<Result<_>>()?;
            let den = crate::scalar::lcm_all(col.iter().map(|r| r.denom()));
            let ints: Vec<BigInt> = col.iter().map(|r| (r * BigRational::from_integer(den.clone())).to_integer()).collect();
            let g = crate::scalar::gcd_all(ints.iter());
            for (i, v) in ints.into_iter().enumerate() {
                out[(i, j)] = if g.is_zero() {
                    ExactScalar::zero()
                } else {
                    ExactScalar::rational(BigRational::from_integer(v / &g))
                };
            }
        }
        Ok(out)
    }
}

impl ComplexMatrix {
    pub fn from_parts(re: &ExactMatrix, im: &ExactMatrix) -> Self {
        assert_eq!((re.rows, re.cols), (im.rows, im.cols));
        Self::from_fn(re.rows, re.cols, |i, j| ComplexScalar::new(re[(i, j)].clone(), im[(i, j)].clone()))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }
}

/// Polynomial with exact coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPolynomial {
    /// Rational roots with multiplicity, ascending.
    pub roots: Vec<(BigRational, usize)>,
    /// Remaining factor with no rational roots (ascending coefficients, monic).
    pub remainder: Vec<BigRational>,
}

/// Splits off all rational roots of a rational polynomial (ascending
/// coefficients). The remainder is left unfactored.
pub fn split_rational_roots(coeffs: &[ExactScalar]) -> Result<SplitPolynomial> {
    let mut p: Vec<BigRational> =
        coeffs.iter().map(|c| c.as_rational().cloned().ok_or(Error::NotInteger)).collect::<Result<_>>()?;
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    let push_root = |roots: &mut Vec<(BigRational, usize)>, r: BigRational| {
        if let Some(e) = roots.iter_mut().find(|(x, _)| *x == r) {
            e.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push_root(&mut roots, BigRational::zero());
    }
    'outer: loop {
        if p.len() <= 1 {
            break;
        }
        let den = crate::scalar::lcm_all(p.iter().map(|c| c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        for num in divisors(&constant) {
            for den in divisors(&lead) {
                for sign in [1i32, -1] {
                    let r = BigRational::new(BigInt::from(sign) * num.clone(), den.clone());
                    if let Some(q) = deflate(&p, &r) {
                        p = q;
                        push_root(&mut roots, r);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    let lead = p.last().unwrap().clone();
    let remainder = p.into_iter().map(|c| c / lead.clone()).collect();
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SplitPolynomial { roots, remainder })
}

/// Divides by `(x - r)` if `r` is a root.
fn deflate(p: &[BigRational], r: &BigRational) -> Option<Vec<BigRational>> {
    let n = p.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut acc = BigRational::zero();
    for i in (0..=n).rev() {
        acc = &acc * r + &p[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    acc.is_zero().then_some(q)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if n.is_multiple_of(&i) {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

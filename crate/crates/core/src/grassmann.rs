//! Real Grassmannians: the largest-principal-angle metric, eigenspaces of
//! rational involutions, and rational approximation of planes stable under an
//! involution.
//!
//! [`rational_approx_fixed`] splits an `F`-stable real plane `L` into its parts
//! `L ∩ V₊` and `L ∩ V₋`, writes each part in coordinates of a rational basis
//! of the eigenspace, puts the coordinates in column echelon form and rounds
//! every free entry to its best rational approximation with bounded
//! denominator. Each rounded vector stays inside its eigenspace, so the result
//! is exactly `F`-stable no matter how coarse the rounding is.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;
use crate::subvariety::RationalPlane;

pub const DEFAULT_TOL_FSTABLE: f64 = 1e-8;

/// Relative singular-value cutoff used to decide numerical rank.
const RANK_CUTOFF: f64 = 1e-6;

/// Echelon pivots are taken at the first entry reaching this fraction of the
/// row maximum, which keeps free entries bounded.
const PIVOT_FRACTION: f64 = 0.5;

/// An `r`-dimensional subspace of `R^n`, stored by an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPlane {
    basis: DMatrix<f64>,
}

impl RealPlane {
    /// Orthonormalizes the columns of `b`; fails if they are numerically dependent.
    pub fn new(b: &DMatrix<f64>) -> Result<Self> {
        let r = b.ncols();
        let p = Self::span(b);
        if p.dim() != r {
            return Err(Error::DimensionDrop { expected: r, got: p.dim() });
        }
        Ok(p)
    }

    /// Orthonormal basis of the column space of `b`, from a column-pivoted QR
    /// factorization. Rank is decided by the diagonal of `R` relative to its
    /// largest entry.
    pub fn span(b: &DMatrix<f64>) -> Self {
        let n = b.nrows();
        if b.ncols() == 0 || b.amax() == 0.0 {
            return Self { basis: DMatrix::zeros(n, 0) };
        }
        let qr = b.clone().col_piv_qr();
        let r = qr.r();
        let d = r.nrows().min(r.ncols());
        let rmax = (0..d).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
        let rank = (0..d).take_while(|&i| r[(i, i)].abs() > RANK_CUTOFF * rmax).count();
        Self { basis: qr.q().columns(0, rank).into_owned() }
    }

    pub fn from_orthonormal(basis: DMatrix<f64>) -> Result<Self> {
        let r = basis.ncols();
        let gram = basis.transpose() * &basis;
        if (gram - DMatrix::<f64>::identity(r, r)).amax() > 1e-12 {
            return Err(Error::InvalidInput("basis is not orthonormal".into()));
        }
        Ok(Self { basis })
    }

    pub fn n(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthogonal projector `B Bᵗ`.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Image under a linear map, re-orthonormalized.
    pub fn image(&self, f: &DMatrix<f64>) -> Self {
        Self::span(&(f * &self.basis))
    }
}

/// Largest principal angle between two planes of equal dimension, in `[0, π/2]`.
pub fn subspace_distance(l1: &RealPlane, l2: &RealPlane) -> Result<f64> {
    if l1.n() != l2.n() || l1.dim() != l2.dim() {
        return Err(Error::ShapeMismatch(format!(
            "planes of shape {}x{} and {}x{}",
            l1.n(),
            l1.dim(),
            l2.n(),
            l2.dim()
        )));
    }
    if l1.dim() == 0 {
        return Ok(0.0);
    }
    // sin of the largest angle from the residual, cos from the overlap; use
    // whichever is better conditioned
    let overlap = l1.basis.transpose() * &l2.basis;
    let residual = &l2.basis - &l1.basis * &overlap;
    let sin = residual.singular_values().max().min(1.0);
    if sin < core::f64::consts::FRAC_1_SQRT_2 {
        Ok(libm::asin(sin))
    } else {
        let cos = overlap.singular_values().min().clamp(0.0, 1.0);
        Ok(libm::acos(cos))
    }
}

/// Exact bases of the `+1` and `-1` eigenspaces of a rational involution.
pub fn eig_decomp_involution(f: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    if !f.is_square() {
        return Err(Error::ShapeMismatch("F must be square".into()));
    }
    let n = f.rows();
    let id = ExactMatrix::identity(n);
    if (f * f) != id {
        return Err(Error::NotInvolution);
    }
    Ok(((f - &id).kernel(), (f + &id).kernel()))
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fractions with the final semiconvergent).
pub fn limit_denominator(x: &BigRational, max_den: &BigInt) -> BigRational {
    if x.denom() <= max_den {
        return x.clone();
    }
    let zero = BigInt::zero;
    let one = || BigInt::from(1);
    let (mut p0, mut q0, mut p1, mut q1) = (zero(), one(), one(), zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = core::mem::replace(&mut p1, p2);
        q0 = core::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = core::mem::replace(&mut d, r);
    }
    let k = (max_den - &q0).div_floor(&q1);
    let bound1 = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let bound2 = BigRational::new(p1, q1);
    if (&bound2 - x).abs() <= (&bound1 - x).abs() {
        bound2
    } else {
        bound1
    }
}

/// Rounds a float to the best rational with denominator `<= max_den`.
pub fn round_rational(x: f64, max_den: u64) -> Result<BigRational> {
    let exact = BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))?;
    Ok(limit_denominator(&exact, &BigInt::from(max_den)))
}

/// Column echelon form of `coords` (one column per basis vector) with bounded
/// free entries. Returns the transformed coordinates and `(column, pivot row)` pairs.
fn echelon_columns(coords: &DMatrix<f64>) -> (DMatrix<f64>, Vec<(usize, usize)>) {
    let mut m = coords.transpose();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::with_capacity(rows);
    for i in 0..rows {
        let free: Vec<usize> = (0..cols).filter(|&j| !pivots.iter().any(|&(_, p)| p == j)).collect();
        let max = free.iter().map(|&j| m[(i, j)].abs()).fold(0.0, f64::max);
        let Some(&p) = free.iter().find(|&&j| m[(i, j)].abs() >= PIVOT_FRACTION * max && max > 0.0) else {
            continue;
        };
        let pv = m[(i, p)];
        for j in 0..cols {
            m[(i, j)] /= pv;
        }
        for r in 0..rows {
            if r != i {
                let f = m[(r, p)];
                if f != 0.0 {
                    for j in 0..cols {
                        m[(r, j)] -= f * m[(i, j)];
                    }
                }
            }
        }
        pivots.push((i, p));
    }
    (m.transpose(), pivots)
}

/// Rational `F`-stable plane close to `l`; see the module docs for the method.
///
/// The free echelon coordinates of each eigencomponent have denominators at
/// most `max_den`; ambient coordinates are those times the rational eigenbasis.
pub fn rational_approx_fixed(f: &ExactMatrix, l: &RealPlane, max_den: u64, tol_fstable: f64) -> Result<RationalPlane> {
    let n = f.rows();
    if l.n() != n {
        return Err(Error::ShapeMismatch(format!("F is {n}x{n}, plane lives in R^{}", l.n())));
    }
    if !f.is_rational() {
        return Err(Error::InvalidInput("F must have rational entries".into()));
    }
    if max_den == 0 {
        return Err(Error::InvalidInput("denominator bound must be at least 1".into()));
    }
    let (vplus, vminus) = eig_decomp_involution(f)?;
    let ff = f.to_f64();
    let angle = subspace_distance(&l.image(&ff), l).unwrap_or(core::f64::consts::FRAC_PI_2);
    if l.image(&ff).dim() != l.dim() || angle > tol_fstable {
        return Err(Error::NotFStable(angle));
    }

    let id = DMatrix::<f64>::identity(n, n);
    let mut columns: Vec<Vec<ExactScalar>> = Vec::new();
    let mut found = 0;
    for (sign, vb) in [(1.0, &vplus), (-1.0, &vminus)] {
        if vb.cols() == 0 {
            continue;
        }
        let proj = (&id + &ff * sign) * 0.5;
        let part = proj * l.basis();
        if part.amax() <= RANK_CUTOFF * 10.0 {
            continue;
        }
        let comp = RealPlane::span(&part);
        found += comp.dim();
        let vf = vb.to_f64();
        let coords = (vf.transpose() * &vf)
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("singular eigenbasis".into()))?
            * vf.transpose()
            * comp.basis();
        let (ech, pivots) = echelon_columns(&coords);
        for &(c, pivot) in &pivots {
            let mut rat = Vec::with_capacity(vb.cols());
            for i in 0..vb.cols() {
                let v = if i == pivot {
                    BigRational::from_integer(1.into())
                } else if pivots.iter().any(|&(_, p)| p == i) {
                    BigRational::zero()
                } else {
                    round_rational(ech[(i, c)], max_den)?
                };
                rat.push(ExactScalar::rational(v));
            }
            let coord = ExactMatrix::from_columns(vb.cols(), &[rat]);
            columns.push((vb * &coord).column(0));
        }
    }
    if found != l.dim() {
        return Err(Error::NotFStable(angle));
    }
    let basis = ExactMatrix::from_columns(n, &columns);
    let got = basis.rank();
    if got != l.dim() {
        return Err(Error::DimensionDrop { expected: l.dim(), got });
    }
    RationalPlane::from_basis(&basis)
}

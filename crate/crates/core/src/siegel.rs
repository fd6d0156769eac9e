//! Points of the Siegel upper half space, the complex structure they induce on
//! homology, the `Sp(2g, Z)` action and the real-structure involutions `τ`.
//!
//! Homology coordinates are `(a_1..a_g, b_1..b_g)` and the period map is
//! `(a, b) ↦ a + Z·b`, i.e. the period matrix is `Π = (I_g | Z)`. The
//! polarization is `E = [[0, I], [-I, 0]]` with `E(x, y) = xᵗ E y`. With these
//! choices `E(x, J x) > 0` and complex conjugation on the fixed locus of
//! `τ(Z) = M - conj(Z)` acts on the lattice by `[[I, M], [0, -I]]`.

use alloc::format;

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;

pub const DEFAULT_TOL_FIX: f64 = 1e-9;

const FLOAT_SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// `Z = X + iY`, with real and imaginary parts stored separately.
#[derive(Clone, Debug, PartialEq)]
pub enum SiegelPoint {
    Exact { x: ExactMatrix, y: ExactMatrix },
    Float { x: DMatrix<f64>, y: DMatrix<f64> },
}

/// Matrix of multiplication by `i` on `R^{2g}`.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexStructure {
    Exact(ExactMatrix),
    Float(DMatrix<f64>),
}

fn shape_check(xr: usize, xc: usize, yr: usize, yc: usize) -> Result<()> {
    if xr != xc || yr != yc || xr != yr || xr == 0 {
        return Err(Error::ShapeMismatch(format!("X is {xr}x{xc}, Y is {yr}x{yc}")));
    }
    Ok(())
}

impl SiegelPoint {
    /// Builds an exact point without checking symmetry or positivity; see [`validate`](Self::validate).
    pub fn exact(x: ExactMatrix, y: ExactMatrix) -> Result<Self> {
        shape_check(x.rows(), x.cols(), y.rows(), y.cols())?;
        x.field()?;
        y.field()?;
        Ok(Self::Exact { x, y })
    }

    pub fn float(x: DMatrix<f64>, y: DMatrix<f64>) -> Result<Self> {
        shape_check(x.nrows(), x.ncols(), y.nrows(), y.ncols())?;
        Ok(Self::Float { x, y })
    }

    /// `i·I_g`.
    pub fn i_identity(g: usize) -> Self {
        Self::Exact { x: ExactMatrix::zeros(g, g), y: ExactMatrix::identity(g) }
    }

    pub fn g(&self) -> usize {
        match self {
            Self::Exact { x, .. } => x.rows(),
            Self::Float { x, .. } => x.nrows(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Self::Exact { .. } => Mode::Exact,
            Self::Float { .. } => Mode::Float,
        }
    }

    pub fn real_part_f64(&self) -> DMatrix<f64> {
        match self {
            Self::Exact { x, .. } => x.to_f64(),
            Self::Float { x, .. } => x.clone(),
        }
    }

    pub fn imag_part_f64(&self) -> DMatrix<f64> {
        match self {
            Self::Exact { y, .. } => y.to_f64(),
            Self::Float { y, .. } => y.clone(),
        }
    }

    pub fn to_float(&self) -> Self {
        Self::Float { x: self.real_part_f64(), y: self.imag_part_f64() }
    }

    /// Symmetry of `X` and `Y` and positive definiteness of `Y`: leading principal
    /// minors in exact mode, a Cholesky factorization in float mode.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Exact { x, y } => {
                if !x.is_symmetric() || !y.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
                if !y.is_positive_definite() {
                    return Err(Error::NotPositiveDefinite);
                }
            }
            Self::Float { x, y } => {
                if !float_symmetric(x) || !float_symmetric(y) {
                    return Err(Error::NotSymmetric);
                }
                if y.iter().any(|v| !v.is_finite()) || x.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidInput("non-finite entry".into()));
                }
                if nalgebra::Cholesky::new(y.clone()).is_none() {
                    return Err(Error::NotPositiveDefinite);
                }
            }
        }
        Ok(())
    }

    /// Max-norm distance between two points, compared in floating point.
    pub fn distance_max(&self, other: &Self) -> f64 {
        let dx = (self.real_part_f64() - other.real_part_f64()).amax();
        let dy = (self.imag_part_f64() - other.imag_part_f64()).amax();
        dx.max(dy)
    }
}

fn float_symmetric(m: &DMatrix<f64>) -> bool {
    let scale = m.amax().max(1.0);
    (m - m.transpose()).amax() <= FLOAT_SYMMETRY_TOL * scale
}

/// `E = [[0, I_g], [-I_g, 0]]`.
pub fn symplectic_form(g: usize) -> ExactMatrix {
    let i = ExactMatrix::identity(g);
    let z = ExactMatrix::zeros(g, g);
    ExactMatrix::from_blocks(&z, &i, &(-&i), &z)
}

pub fn symplectic_form_f64(g: usize) -> DMatrix<f64> {
    symplectic_form(g).to_f64()
}

impl ComplexStructure {
    pub fn g(&self) -> usize {
        self.to_f64().nrows() / 2
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Self::Exact(j) => j.to_f64(),
            Self::Float(j) => j.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactMatrix> {
        match self {
            Self::Exact(j) => Some(j),
            Self::Float(_) => None,
        }
    }
}

/// `J = [[-X Y⁻¹, -Y - X Y⁻¹ X], [Y⁻¹, Y⁻¹ X]]`, the unique real matrix with `Π J = i Π`.
pub fn complex_structure(z: &SiegelPoint) -> Result<ComplexStructure> {
    z.validate()?;
    Ok(match z {
        SiegelPoint::Exact { x, y } => {
            let yi = y.inverse().ok_or(Error::NotPositiveDefinite)?;
            let xyi = x * &yi;
            let a = -&xyi;
            let b = -&(y + &(&xyi * x));
            let d = &yi * x;
            ComplexStructure::Exact(ExactMatrix::from_blocks(&a, &b, &yi, &d))
        }
        SiegelPoint::Float { x, y } => ComplexStructure::Float(complex_structure_f64(x, y)?),
    })
}

pub(crate) fn complex_structure_f64(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let g = x.nrows();
    let yi = nalgebra::Cholesky::new(y.clone()).ok_or(Error::NotPositiveDefinite)?.inverse();
    let xyi = x * &yi;
    let mut j = DMatrix::zeros(2 * g, 2 * g);
    j.view_mut((0, 0), (g, g)).copy_from(&(-&xyi));
    j.view_mut((0, g), (g, g)).copy_from(&(-(y + &xyi * x)));
    j.view_mut((g, 0), (g, g)).copy_from(&yi);
    j.view_mut((g, g), (g, g)).copy_from(&(&yi * x));
    Ok(j)
}

/// `max |Π J - i Π|` with `Π = (I | Z)`; zero up to rounding for a correct `J`.
pub fn period_residual(z: &SiegelPoint, j: &DMatrix<f64>) -> f64 {
    let g = z.g();
    let (x, y) = (z.real_part_f64(), z.imag_part_f64());
    let mut re_pi = DMatrix::zeros(g, 2 * g);
    re_pi.view_mut((0, 0), (g, g)).fill_with_identity();
    re_pi.view_mut((0, g), (g, g)).copy_from(&x);
    let mut im_pi = DMatrix::zeros(g, 2 * g);
    im_pi.view_mut((0, g), (g, g)).copy_from(&y);
    // (Re Π + i Im Π) J = i Re Π - Im Π
    let re = &re_pi * j + &im_pi;
    let im = &im_pi * j - &re_pi;
    re.amax().max(im.amax())
}

/// Exact form of the defining identity `Π J = i Π`.
pub fn period_identity_exact(x: &ExactMatrix, y: &ExactMatrix, j: &ExactMatrix) -> bool {
    let g = x.rows();
    let re_pi = ExactMatrix::identity(g).hstack(x);
    let im_pi = ExactMatrix::zeros(g, g).hstack(y);
    (&re_pi * j) == -&im_pi && (&im_pi * j) == re_pi
}

/// Deviation of a complex structure from the Riemann relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannReport {
    /// `max |J² + I|`.
    pub j_squared: f64,
    /// `max |Jᵗ E J - E|`.
    pub symplectic: f64,
    /// Smallest eigenvalue of the symmetric form `x ↦ E(x, J x)`.
    pub min_positivity: f64,
}

impl RiemannReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.j_squared <= tol && self.symplectic <= tol && self.min_positivity > 0.0
    }
}

pub fn riemann_report(j: &DMatrix<f64>) -> RiemannReport {
    let n = j.nrows();
    let e = symplectic_form_f64(n / 2);
    let j2 = j * j + DMatrix::<f64>::identity(n, n);
    let sym = j.transpose() * &e * j - &e;
    let ej = &e * j;
    let form = (&ej + ej.transpose()) * 0.5;
    let min_positivity = form.symmetric_eigenvalues().min();
    RiemannReport { j_squared: j2.amax(), symplectic: sym.amax(), min_positivity }
}

/// Exact Riemann relations: `J² = -I`, `Jᵗ E J = E` and `E J` positive definite.
pub fn riemann_relations_exact(j: &ExactMatrix) -> bool {
    let n = j.rows();
    let e = symplectic_form(n / 2);
    let ej = &e * j;
    (j * j) == -&ExactMatrix::identity(n)
        && (&(&j.transpose() * &e) * j) == e
        && ej.is_symmetric()
        && ej.is_positive_definite()
}

/// Checks `γᵗ E γ = E` for an integer matrix.
pub fn check_symplectic(gamma: &ExactMatrix) -> Result<()> {
    if !gamma.is_square() || !gamma.rows().is_multiple_of(2) {
        return Err(Error::ShapeMismatch("gamma must be 2g x 2g".into()));
    }
    if !gamma.is_integral() {
        return Err(Error::NotInteger);
    }
    let e = symplectic_form(gamma.rows() / 2);
    if &(&gamma.transpose() * &e) * gamma != e {
        return Err(Error::NotSymplectic);
    }
    Ok(())
}

/// Real `2n×2n` block form `[[R, -I], [I, R]]` of a complex matrix `R + iI`.
fn realify<M>(re: &M, im: &M, blocks: impl Fn(&M, &M, &M, &M) -> M, neg: impl Fn(&M) -> M) -> M {
    blocks(re, &neg(im), im, re)
}

/// `Z ↦ (A Z + B)(C Z + D)⁻¹` for `γ = [[A, B], [C, D]]` in `Sp(2g, Z)`.
pub fn sp_action(gamma: &ExactMatrix, z: &SiegelPoint) -> Result<SiegelPoint> {
    check_symplectic(gamma)?;
    let g = z.g();
    if gamma.rows() != 2 * g {
        return Err(Error::ShapeMismatch(format!("gamma is {0}x{0}, Z has g = {g}", gamma.rows())));
    }
    z.validate()?;
    let out = match z {
        SiegelPoint::Exact { x, y } => {
            let (a, b) = (gamma.submatrix(0, 0, g, g), gamma.submatrix(0, g, g, g));
            let (c, d) = (gamma.submatrix(g, 0, g, g), gamma.submatrix(g, g, g, g));
            let p = realify(&(&(&a * x) + &b), &(&a * y), ExactMatrix::from_blocks, |m| -m);
            let q = realify(&(&(&c * x) + &d), &(&c * y), ExactMatrix::from_blocks, |m| -m);
            let qi = q.inverse().ok_or(Error::SingularDenominator)?;
            let r = &p * &qi;
            SiegelPoint::Exact { x: r.submatrix(0, 0, g, g), y: r.submatrix(g, 0, g, g) }
        }
        SiegelPoint::Float { x, y } => {
            let gf = gamma.to_f64();
            let blk = |r, c| gf.view((r, c), (g, g)).into_owned();
            let (a, b, c, d) = (blk(0, 0), blk(0, g), blk(g, 0), blk(g, g));
            let stack = |p: &DMatrix<f64>, q: &DMatrix<f64>, r: &DMatrix<f64>, s: &DMatrix<f64>| {
                let mut m = DMatrix::zeros(2 * g, 2 * g);
                m.view_mut((0, 0), (g, g)).copy_from(p);
                m.view_mut((0, g), (g, g)).copy_from(q);
                m.view_mut((g, 0), (g, g)).copy_from(r);
                m.view_mut((g, g), (g, g)).copy_from(s);
                m
            };
            let p = realify(&(&a * x + &b), &(&a * y), stack, |m| -m);
            let q = realify(&(&c * x + &d), &(&c * y), stack, |m| -m);
            let qi = q.try_inverse().ok_or(Error::SingularDenominator)?;
            let r = p * qi;
            let sym = |m: DMatrix<f64>| (&m + m.transpose()) * 0.5;
            SiegelPoint::Float {
                x: sym(r.view((0, 0), (g, g)).into_owned()),
                y: sym(r.view((g, 0), (g, g)).into_owned()),
            }
        }
    };
    out.validate()?;
    Ok(out)
}

fn check_m(m: &ExactMatrix, g: usize) -> Result<()> {
    if m.rows() != g || m.cols() != g {
        return Err(Error::ShapeMismatch(format!("M is {}x{}, expected {g}x{g}", m.rows(), m.cols())));
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// `τ(Z) = M - conj(Z)`.
pub fn tau(m: &ExactMatrix, z: &SiegelPoint) -> Result<SiegelPoint> {
    z.validate()?;
    check_m(m, z.g())?;
    Ok(match z {
        SiegelPoint::Exact { x, y } => SiegelPoint::Exact { x: m - x, y: y.clone() },
        SiegelPoint::Float { x, y } => SiegelPoint::Float { x: m.to_f64() - x, y: y.clone() },
    })
}

/// `τ(Z) = Z`, i.e. `2·Re Z = M` (exactly, or within `tol` in float mode).
pub fn in_fixed_locus(m: &ExactMatrix, z: &SiegelPoint, tol: f64) -> Result<bool> {
    check_m(m, z.g())?;
    Ok(match z {
        SiegelPoint::Exact { x, .. } => x.scale(&ExactScalar::int(2)) == *m,
        SiegelPoint::Float { x, .. } => (x * 2.0 - m.to_f64()).amax() <= tol,
    })
}

/// Replaces `X` by `M/2`, keeping `Y`.
pub fn nearest_fixed(m: &ExactMatrix, z: &SiegelPoint) -> Result<SiegelPoint> {
    check_m(m, z.g())?;
    let half = ExactScalar::ratio(1, 2);
    Ok(match z {
        SiegelPoint::Exact { y, .. } => SiegelPoint::Exact { x: m.scale(&half), y: y.clone() },
        SiegelPoint::Float { y, .. } => SiegelPoint::Float { x: m.to_f64() * 0.5, y: y.clone() },
    })
}

/// Used by tests and the CLI to build exact diagonal points such as `diag(i, 2i)`.
pub fn diagonal_point(imag: &[i64]) -> SiegelPoint {
    let g = imag.len();
    let y = ExactMatrix::from_fn(g, g, |i, j| if i == j { ExactScalar::int(imag[i]) } else { ExactScalar::zero() });
    SiegelPoint::Exact { x: ExactMatrix::zeros(g, g), y }
}

impl ComplexStructure {
    /// `J` applied to the standard basis vector `e_k`.
    pub fn apply_basis(&self, k: usize) -> alloc::vec::Vec<f64> {
        let j = self.to_f64();
        j.column(k).iter().copied().collect()
    }
}

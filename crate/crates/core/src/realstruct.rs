//! Normal forms of real structures on principally polarized abelian varieties
//! and the topological types of real curves.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::f2::{f2_classify, F2Class, F2SymmetricForm};
use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;

/// A type `(alpha, lambda)` with its normal matrix `M` and lattice involution `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealStructureType {
    pub alpha: u8,
    pub lambda: usize,
    pub g: usize,
    pub m: ExactMatrix,
    pub t: ExactMatrix,
}

impl RealStructureType {
    pub fn new(alpha: u8, lambda: usize, g: usize) -> Result<Self> {
        let m = standard_m(alpha, lambda, g)?;
        let t = involution_t(&m)?;
        Ok(Self { alpha, lambda, g, m, t })
    }

    pub fn class(&self) -> F2Class {
        F2Class { alpha: self.alpha, lambda: self.lambda }
    }
}

/// Topological type `(epsilon, k)` of a real curve of genus `g`: `k` counts the
/// real components, `epsilon = 0` when the complement of the real locus is connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveTopologicalType {
    pub epsilon: u8,
    pub k: usize,
    pub g: usize,
}

/// Membership in the index set `I(g)`.
pub fn is_abelian_type(alpha: u8, lambda: usize, g: usize) -> bool {
    match (alpha, lambda) {
        (0, 0) => true,
        (1, l) => (1..=g).contains(&l),
        (2, l) => (1..=g).contains(&l) && l % 2 == 0,
        _ => false,
    }
}

pub fn is_curve_type(epsilon: u8, k: usize, g: usize) -> bool {
    match epsilon {
        0 => k <= g,
        1 => (1..=g + 1).contains(&k) && k % 2 == (g + 1) % 2,
        _ => false,
    }
}

/// `I_λ ⊕ 0` for `alpha = 1`, `λ/2` hyperbolic blocks `[[0,1],[1,0]]` ⊕ 0 for `alpha = 2`.
pub fn standard_m(alpha: u8, lambda: usize, g: usize) -> Result<ExactMatrix> {
    if !is_abelian_type(alpha, lambda, g) {
        return Err(Error::IndexNotInI { alpha, lambda, g });
    }
    let mut m = ExactMatrix::zeros(g, g);
    match alpha {
        1 => {
            for i in 0..lambda {
                m[(i, i)] = ExactScalar::one();
            }
        }
        2 => {
            for b in 0..lambda / 2 {
                m[(2 * b, 2 * b + 1)] = ExactScalar::one();
                m[(2 * b + 1, 2 * b)] = ExactScalar::one();
            }
        }
        _ => {}
    }
    Ok(m)
}

fn check_symmetric_integer(m: &ExactMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("M is {}x{}", m.rows(), m.cols())));
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !m.is_integral() {
        return Err(Error::NotInteger);
    }
    Ok(())
}

/// `T = [[I, M], [0, -I]]`: an involution with `Tᵗ E T = -E`.
pub fn involution_t(m: &ExactMatrix) -> Result<ExactMatrix> {
    check_symmetric_integer(m)?;
    let g = m.rows();
    let i = ExactMatrix::identity(g);
    Ok(ExactMatrix::from_blocks(&i, m, &ExactMatrix::zeros(g, g), &(-&i)))
}

/// Reads `M` back out of a block-shaped `T = [[I, M], [0, -I]]`.
pub fn m_from_t(t: &ExactMatrix) -> Result<ExactMatrix> {
    if !t.is_square() || !t.rows().is_multiple_of(2) {
        return Err(Error::ShapeMismatch("T must be 2g x 2g".into()));
    }
    let g = t.rows() / 2;
    let m = t.submatrix(0, g, g, g);
    let expected = involution_t(&m)?;
    if expected != *t {
        return Err(Error::InvalidInput("T is not of the form [[I, M], [0, -I]]".into()));
    }
    Ok(m)
}

pub fn classify_normal_form(m: &ExactMatrix) -> Result<F2Class> {
    check_symmetric_integer(m)?;
    Ok(f2_classify(&F2SymmetricForm::from_integer_matrix(m)?))
}

/// All of `I(g)`, ordered by `lambda` then `alpha`.
pub fn enumerate_ab_types(g: usize) -> Vec<RealStructureType> {
    let mut out = Vec::new();
    for lambda in 0..=g {
        for alpha in 0..=2u8 {
            if is_abelian_type(alpha, lambda, g) {
                out.push(RealStructureType::new(alpha, lambda, g).expect("member of I(g)"));
            }
        }
    }
    out
}

/// All of `J(g)`, ordered by `epsilon` then `k`.
pub fn enumerate_curve_types(g: usize) -> Vec<CurveTopologicalType> {
    (0..=1u8)
        .flat_map(|epsilon| (0..=g + 1).map(move |k| (epsilon, k)))
        .filter(|&(epsilon, k)| is_curve_type(epsilon, k, g))
        .map(|(epsilon, k)| CurveTopologicalType { epsilon, k, g })
        .collect()
}

fn check_unimodular(a: &ExactMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("A must be square".into()));
    }
    if !a.is_integral() {
        return Err(Error::NotInteger);
    }
    let det = a.determinant();
    if det.as_integer().is_some_and(|d| d.abs().is_one()) {
        Ok(())
    } else {
        Err(Error::NotUnimodular)
    }
}

/// Whether `A M Aᵗ = M`, i.e. `A` lies in the stabilizer `Γ_i`.
pub fn gamma_i_member(a: &ExactMatrix, m: &ExactMatrix) -> Result<bool> {
    check_unimodular(a)?;
    check_symmetric_integer(m)?;
    if a.rows() != m.rows() {
        return Err(Error::ShapeMismatch("A and M differ in size".into()));
    }
    Ok(&(a * m) * &a.transpose() == *m)
}

/// `A ↦ [[A, 0], [0, A⁻ᵗ]]`, the embedding `GL_g(Z) → Sp_{2g}(Z)`.
pub fn embed_gl(a: &ExactMatrix) -> Result<ExactMatrix> {
    check_unimodular(a)?;
    let g = a.rows();
    let ait = a.inverse().ok_or(Error::NotUnimodular)?.transpose();
    let z = ExactMatrix::zeros(g, g);
    Ok(ExactMatrix::from_blocks(a, &z, &z, &ait))
}

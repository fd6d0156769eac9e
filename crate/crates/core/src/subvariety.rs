//! Abelian subvarieties as rational planes in homology.
//!
//! A rational `2k`-plane `L ⊂ Q^{2g}` is the homology of a complex subtorus
//! exactly when `L ⊗ R` is `J_Z`-stable; the subtorus is an abelian subvariety
//! when `E` restricted to `L` is nondegenerate, and it is defined over `R`
//! when `L` is also stable under the lattice involution `T`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::grassmann::RealPlane;
use crate::matrix::ExactMatrix;
use crate::realstruct::m_from_t;
use crate::scalar::ExactScalar;
use crate::siegel::{self, complex_structure, in_fixed_locus, symplectic_form, SiegelPoint};

pub const DEFAULT_TOL_RES: f64 = 1e-8;

/// A subspace of `Q^n` in canonical form: columns are the rows of the reduced
/// row echelon form of the transposed basis, each scaled to a primitive integer
/// vector. Two planes are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPlane {
    basis: ExactMatrix,
}

impl RationalPlane {
    pub fn from_basis(b: &ExactMatrix) -> Result<Self> {
        let p = Self::span(b)?;
        if p.dim() != b.cols() {
            return Err(Error::InvalidInput(format!("basis has {} columns but rank {}", b.cols(), p.dim())));
        }
        Ok(p)
    }

    /// Canonical basis of the column space of `b`.
    pub fn span(b: &ExactMatrix) -> Result<Self> {
        if !b.is_rational() {
            return Err(Error::InvalidInput("plane basis must be rational".into()));
        }
        let (r, pivots) = b.transpose().rref();
        let rows = r.submatrix(0, 0, pivots.len(), b.rows());
        Ok(Self { basis: rows.transpose().primitive_columns()? })
    }

    /// Full space `Q^n`.
    pub fn full(n: usize) -> Self {
        Self { basis: ExactMatrix::identity(n) }
    }

    pub fn coordinate(n: usize, idx: &[usize]) -> Self {
        Self::span(&ExactMatrix::identity(n).columns(idx)).expect("rational")
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn to_real(&self) -> RealPlane {
        RealPlane::span(&self.basis.to_f64())
    }

    /// Whether `f(L) ⊂ L` exactly. `f` may have entries in a quadratic field.
    pub fn is_stable_under(&self, f: &ExactMatrix) -> bool {
        self.basis.col_space_contains(&(f * &self.basis))
    }

    /// Rank of `Bᵗ E B`.
    pub fn symplectic_rank(&self) -> usize {
        let e = symplectic_form(self.n() / 2);
        (&(&self.basis.transpose() * &e) * &self.basis).rank()
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(&self.basis.hstack(&other.basis)).expect("rational")
    }

    /// Integer entries in column-major order; gives planes a total order.
    pub fn sort_key(&self) -> Vec<BigInt> {
        (0..self.dim())
            .flat_map(|j| self.basis.column(j).into_iter().map(|x| x.as_integer().expect("primitive columns")))
            .collect()
    }
}

/// Evidence that a rational plane is (or is not) an abelian subvariety.
#[derive(Clone, Debug, PartialEq)]
pub struct SubvarietyCertificate {
    pub plane: RationalPlane,
    pub j_stable: bool,
    /// `‖(I - P) J P‖_F` for the orthoprojector `P`; exactly 0 when checked exactly.
    pub j_residual: f64,
    /// `None` when no real structure was supplied.
    pub t_stable: Option<bool>,
    pub symplectic_rank: usize,
}

impl SubvarietyCertificate {
    pub fn k(&self) -> usize {
        self.plane.dim() / 2
    }

    /// J-stable, T-stable when a real structure is given, and polarized.
    pub fn certified(&self) -> bool {
        self.j_stable && self.t_stable != Some(false) && self.symplectic_rank == self.plane.dim()
    }
}

/// `‖(I - P) J P‖_F`: how far `J` moves the plane out of itself.
pub fn j_residual(j: &DMatrix<f64>, plane: &RealPlane) -> f64 {
    let p = plane.projector();
    let n = p.nrows();
    ((DMatrix::<f64>::identity(n, n) - &p) * j * &p).norm()
}

const HODGE_TOL: f64 = 1e-9;

/// Real `2k`-plane whose image under `v ↦ (v - iJv)/2` is the complex subspace
/// spanned by the columns of `w`, which must lie in the `+i` eigenspace of `J_Z`.
pub fn phi_plane(z: &SiegelPoint, w: &DMatrix<Complex<f64>>) -> Result<RealPlane> {
    let j = complex_structure(z)?.to_f64();
    let n = j.nrows();
    if w.nrows() != n {
        return Err(Error::ShapeMismatch(format!("W has {} rows, expected {n}", w.nrows())));
    }
    let jc = j.map(|x| Complex::new(x, 0.0));
    let defect = (&jc * w - w * Complex::new(0.0, 1.0)).camax();
    let scale = w.camax().max(1.0);
    if defect > HODGE_TOL * scale {
        return Err(Error::WNotHodge);
    }
    // the preimage of w is 2·Re(w), that of i·w is -2·Im(w)
    let k = w.ncols();
    let mut real = DMatrix::zeros(n, 2 * k);
    for c in 0..k {
        for r in 0..n {
            real[(r, 2 * c)] = w[(r, c)].re;
            real[(r, 2 * c + 1)] = w[(r, c)].im;
        }
    }
    let l = RealPlane::span(&real);
    if l.dim() != 2 * k {
        return Err(Error::DimensionDrop { expected: 2 * k, got: l.dim() });
    }
    Ok(l)
}

/// `v ↦ (v - iJv)/2` applied to each column of `b`.
pub fn hodge_projection(j: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<Complex<f64>> {
    let jb = j * b;
    DMatrix::from_fn(b.nrows(), b.ncols(), |r, c| Complex::new(b[(r, c)] / 2.0, -jb[(r, c)] / 2.0))
}

/// The Hodge line through a real seed vector: `span((v - iJv)/2)`.
pub fn hodge_line(z: &SiegelPoint, v: &[f64]) -> Result<DMatrix<Complex<f64>>> {
    let j = complex_structure(z)?.to_f64();
    Ok(hodge_projection(&j, &DMatrix::from_column_slice(v.len(), 1, v)))
}

fn exact_j(z: &SiegelPoint) -> Result<ExactMatrix> {
    match complex_structure(z)? {
        siegel::ComplexStructure::Exact(j) => Ok(j),
        siegel::ComplexStructure::Float(_) => Err(Error::ModeMismatch),
    }
}

fn check_plane(z: &SiegelPoint, plane: &RationalPlane) -> Result<()> {
    if plane.n() != 2 * z.g() {
        return Err(Error::ShapeMismatch(format!("plane lives in Q^{}, expected Q^{}", plane.n(), 2 * z.g())));
    }
    Ok(())
}

/// Exact test that `J_Z` maps `L ⊗ R` into itself.
pub fn is_j_stable(z: &SiegelPoint, plane: &RationalPlane) -> Result<bool> {
    check_plane(z, plane)?;
    let j = exact_j(z)?;
    Ok(plane.is_stable_under(&j))
}

fn certify(j: &siegel::ComplexStructure, t: Option<&ExactMatrix>, plane: &RationalPlane, tol_res: f64) -> SubvarietyCertificate {
    let (j_stable, j_residual) = match j {
        siegel::ComplexStructure::Exact(je) => {
            let s = plane.is_stable_under(je);
            (s, if s { 0.0 } else { self::j_residual(&je.to_f64(), &plane.to_real()) })
        }
        siegel::ComplexStructure::Float(jf) => {
            let r = self::j_residual(jf, &plane.to_real());
            (r <= tol_res, r)
        }
    };
    SubvarietyCertificate {
        plane: plane.clone(),
        j_stable,
        j_residual,
        t_stable: t.map(|t| plane.is_stable_under(t)),
        symplectic_rank: plane.symplectic_rank(),
    }
}

/// Certificate for `L` at a point fixed by the real structure `T = [[I, M], [0, -I]]`.
///
/// Exact points are checked exactly; for float points J-stability means the
/// residual is at most `tol_res`.
pub fn is_real_subvariety(z: &SiegelPoint, t: &ExactMatrix, plane: &RationalPlane, tol_res: f64) -> Result<SubvarietyCertificate> {
    check_plane(z, plane)?;
    let m = m_from_t(t)?;
    if m.rows() != z.g() {
        return Err(Error::ShapeMismatch("T does not match g".into()));
    }
    if !in_fixed_locus(&m, z, siegel::DEFAULT_TOL_FIX)? {
        return Err(Error::NotInFixedLocus);
    }
    let j = complex_structure(z)?;
    Ok(certify(&j, Some(t), plane, tol_res))
}

/// Primitive integer vectors in `[-h, h]^n`, one per ± pair (first nonzero entry positive).
fn primitive_vectors(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = alloc::vec![-h; n];
    loop {
        let first = v.iter().find(|&&x| x != 0);
        if first.is_some_and(|&x| x > 0) && v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1 {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < h {
                v[i] += 1;
                break;
            }
            v[i] = -h;
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Candidate planes: spans of `k` pairs `(v, J v)` over primitive integer `v`
/// with `‖v‖_∞ ≤ h` and rational `J v`, plus every coordinate `2k`-plane. This
/// is a finite search used as an oracle, not a decision procedure.
pub fn candidate_planes(z: &SiegelPoint, k: usize, h: u32) -> Result<Vec<RationalPlane>> {
    let g = z.g();
    let n = 2 * g;
    let j = exact_j(z)?;
    let mut pairs: BTreeMap<Vec<BigInt>, RationalPlane> = BTreeMap::new();
    for v in primitive_vectors(n, h as i64) {
        let col: Vec<ExactScalar> = v.iter().map(|&x| ExactScalar::int(x)).collect();
        let vm = ExactMatrix::from_columns(n, &[col]);
        let jv = &j * &vm;
        if !jv.is_rational() {
            continue;
        }
        let p = RationalPlane::span(&vm.hstack(&jv))?;
        pairs.entry(p.sort_key()).or_insert(p);
    }
    let pairs: Vec<RationalPlane> = pairs.into_values().collect();
    let mut out: BTreeMap<Vec<BigInt>, RationalPlane> = BTreeMap::new();
    for combo in combinations(pairs.len(), k) {
        let mut p = pairs[combo[0]].clone();
        for &i in &combo[1..] {
            p = p.sum(&pairs[i]);
        }
        if p.dim() == 2 * k {
            out.entry(p.sort_key()).or_insert(p);
        }
    }
    for idx in combinations(n, 2 * k) {
        let p = RationalPlane::coordinate(n, &idx);
        out.entry(p.sort_key()).or_insert(p);
    }
    Ok(out.into_values().collect())
}

/// Certified subvarieties among [`candidate_planes`], sorted by plane.
///
/// With `t` given, T-stability is required as well (real subvarieties) and
/// `z` must be fixed by the corresponding involution.
pub fn brute_search(z: &SiegelPoint, k: usize, h: u32, t: Option<&ExactMatrix>) -> Result<Vec<SubvarietyCertificate>> {
    let g = z.g();
    if k == 0 || k >= g {
        return Err(Error::BadK { k, max: g.saturating_sub(1) });
    }
    if h == 0 {
        return Err(Error::InvalidInput("height bound must be at least 1".into()));
    }
    if let Some(t) = t {
        let m = m_from_t(t)?;
        if m.rows() != g {
            return Err(Error::ShapeMismatch("T does not match g".into()));
        }
        if !in_fixed_locus(&m, z, 0.0)? {
            return Err(Error::NotInFixedLocus);
        }
    }
    let j = complex_structure(z)?;
    if j.as_exact().is_none() {
        return Err(Error::ModeMismatch);
    }
    Ok(candidate_planes(z, k, h)?
        .iter()
        .map(|p| certify(&j, t, p, 0.0))
        .filter(SubvarietyCertificate::certified)
        .collect())
}

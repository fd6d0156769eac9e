//! Exactness criteria for the multiplication map `μ: W ⊗ H^{1,0} → T*B`
//! induced by a symmetric tensor `q`, with the universal (Siegel) instance and
//! the cup-product instance of a smooth plane curve.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ExactMatrix, Matrix};
use crate::scalar::{ComplexScalar, ExactScalar};

pub const DEFAULT_FERMAT_SEED: u64 = 0;
const FERMAT_RANDOM_TRIES: usize = 64;

/// `q: C^g ⊗ C^g → C^m`, symmetric in the first two slots. Entry `q[i][j][c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTensor {
    g: usize,
    m: usize,
    data: Vec<ExactScalar>,
}

impl QTensor {
    /// `data` is indexed as `(i * g + j) * m + c`.
    pub fn new(g: usize, m: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if data.len() != g * g * m {
            return Err(Error::ShapeMismatch(format!("expected {} entries, got {}", g * g * m, data.len())));
        }
        let q = Self { g, m, data };
        for i in 0..g {
            for j in 0..i {
                if (0..m).any(|c| q.get(i, j, c) != q.get(j, i, c)) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(q)
    }

    pub fn zero(g: usize, m: usize) -> Self {
        Self { g, m, data: vec![ExactScalar::zero(); g * g * m] }
    }

    pub fn from_nested(q: &[Vec<Vec<ExactScalar>>]) -> Result<Self> {
        let g = q.len();
        let m = q.first().and_then(|r| r.first()).map_or(0, Vec::len);
        if q.iter().any(|r| r.len() != g || r.iter().any(|v| v.len() != m)) {
            return Err(Error::ShapeMismatch("q must be g x g x m".into()));
        }
        Self::new(g, m, q.iter().flatten().flatten().cloned().collect())
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<ExactScalar>>> {
        (0..self.g).map(|i| (0..self.g).map(|j| (0..self.m).map(|c| self.get(i, j, c).clone()).collect()).collect()).collect()
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, c: usize) -> &ExactScalar {
        &self.data[(i * self.g + j) * self.m + c]
    }

    /// `q(v, ·)` as an `m × g` matrix.
    pub fn contract(&self, v: &[ExactScalar]) -> ExactMatrix {
        Matrix::from_fn(self.m, self.g, |c, j| {
            v.iter().enumerate().fold(ExactScalar::zero(), |acc, (i, vi)| {
                if vi.is_zero() {
                    acc
                } else {
                    acc + vi * self.get(i, j, c)
                }
            })
        })
    }

    /// Rank of the `m × g²` flattening.
    pub fn total_rank(&self) -> usize {
        ExactMatrix::from_fn(self.m, self.g * self.g, |c, ij| self.get(ij / self.g, ij % self.g, c).clone()).rank()
    }
}

/// A `k`-dimensional subspace of `C^g`, given by `k` independent columns.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeSubspace {
    w: ComplexMatrix,
}

impl HodgeSubspace {
    pub fn new(w: ComplexMatrix) -> Result<Self> {
        let r = w.rank();
        if r != w.cols() {
            return Err(Error::DimensionDrop { expected: w.cols(), got: r });
        }
        Ok(Self { w })
    }

    pub fn from_real(w: &ExactMatrix) -> Result<Self> {
        Self::new(w.to_complex())
    }

    pub fn g(&self) -> usize {
        self.w.rows()
    }

    pub fn k(&self) -> usize {
        self.w.cols()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.w
    }
}

/// `Sym²`: `q(e_i, e_j)` is the basis vector of `Sym² C^g` indexed by `{i, j}`.
pub fn siegel_q(g: usize) -> QTensor {
    let m = g * (g + 1) / 2;
    let mut q = QTensor::zero(g, m);
    let mut idx = 0;
    for i in 0..g {
        for j in i..g {
            q.data[(i * g + j) * m + idx] = ExactScalar::one();
            q.data[(j * g + i) * m + idx] = ExactScalar::one();
            idx += 1;
        }
    }
    q
}

fn cx(x: &ExactScalar) -> ComplexScalar {
    ComplexScalar::real(x.clone())
}

/// Matrix of `μ` on `W ⊗ U`, columns indexed by `(a, b)` as `a * dim U + b`.
fn mu_matrix(q: &QTensor, w: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    let (g, m) = (q.g, q.m);
    let (k, l) = (w.cols(), u.cols());
    let mut out = ComplexMatrix::zeros(m, k * l);
    for a in 0..k {
        for b in 0..l {
            for c in 0..m {
                let mut s = ComplexScalar::zero();
                for i in 0..g {
                    if w[(i, a)].is_zero() {
                        continue;
                    }
                    for j in 0..g {
                        let qc = q.get(i, j, c);
                        if qc.is_zero() || u[(j, b)].is_zero() {
                            continue;
                        }
                        s = s + w[(i, a)].clone() * u[(j, b)].clone() * cx(qc);
                    }
                }
                out[(c, a * l + b)] = s;
            }
        }
    }
    out
}

fn check_shapes(q: &QTensor, w: &HodgeSubspace) -> Result<()> {
    if w.g() != q.g {
        return Err(Error::ShapeMismatch(format!("W lives in C^{}, q has g = {}", w.g(), q.g)));
    }
    Ok(())
}

/// Image of `⋀²W` in `W ⊗ C^g`: `w_a ∧ w_b ↦ w_a ⊗ w_b - w_b ⊗ w_a`.
fn wedge2(w: &ComplexMatrix) -> ComplexMatrix {
    let (g, k) = (w.rows(), w.cols());
    let mut cols = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let mut v = vec![ComplexScalar::zero(); k * g];
            for j in 0..g {
                v[a * g + j] = w[(j, b)].clone();
                v[b * g + j] = -w[(j, a)].clone();
            }
            cols.push(v);
        }
    }
    ComplexMatrix::from_columns(k * g, &cols)
}

/// Whether `0 → ⋀²W → W ⊗ C^g → C^m` is exact: `rank μ = kg - k(k-1)/2` and
/// `ker μ ⊂ ⋀²W`.
pub fn check_condition1(q: &QTensor, w: &HodgeSubspace) -> Result<bool> {
    check_shapes(q, w)?;
    let (g, k) = (q.g, w.k());
    let mu = mu_matrix(q, w.matrix(), &ComplexMatrix::identity(g));
    let expected = k * g - k * (k.saturating_sub(1)) / 2;
    if mu.rank() != expected {
        return Ok(false);
    }
    let ker = mu.kernel();
    Ok(ker.cols() == 0 || wedge2(w.matrix()).col_space_contains(&ker))
}

/// `W^⊥ = ker(Wᴴ E_H)`.
pub fn orthogonal_complement(w: &HodgeSubspace, e_h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let g = w.g();
    if e_h.rows() != g || e_h.cols() != g {
        return Err(Error::ShapeMismatch(format!("E_H must be {g} x {g}")));
    }
    if e_h.determinant().is_zero() {
        return Err(Error::DegeneratePolarization);
    }
    Ok((&w.matrix().conj_transpose() * e_h).kernel())
}

/// Whether `μ` is injective on `W ⊗ W^⊥`, `W^⊥` taken with respect to `E_H`.
pub fn check_ek(q: &QTensor, w: &HodgeSubspace, e_h: &ComplexMatrix) -> Result<bool> {
    check_shapes(q, w)?;
    let perp = orthogonal_complement(w, e_h)?;
    let mu = mu_matrix(q, w.matrix(), &perp);
    Ok(mu.rank() == w.k() * perp.cols())
}

/// A homogeneous polynomial in `X0, X1, X2` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm {
    degree: u32,
    terms: BTreeMap<[u32; 3], ExactScalar>,
}

impl TernaryForm {
    pub fn new(degree: u32, terms: impl IntoIterator<Item = ([u32; 3], ExactScalar)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidInput(format!("monomial {e:?} is not of degree {degree}")));
            }
            let s: ExactScalar = map.remove(&e).map_or(c.clone(), |old: ExactScalar| old + c);
            if !s.is_zero() {
                map.insert(e, s);
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        Ok(Self { degree, terms: map })
    }

    /// `X0^d + X1^d + X2^d`.
    pub fn fermat(d: u32) -> Self {
        Self::new(d, (0..3).map(|i| {
            let mut e = [0; 3];
            e[i] = d;
            (e, ExactScalar::one())
        }))
        .expect("nonzero")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &ExactScalar)> {
        self.terms.iter()
    }

    pub fn partial(&self, var: usize) -> Vec<([u32; 3], ExactScalar)> {
        self.terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[var] -= 1;
                (e2, c * &ExactScalar::int(e[var] as i64))
            })
            .collect()
    }
}

/// Monomials of degree `d` in three variables, `X0` powers descending first.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn monomial_index(d: u32) -> BTreeMap<[u32; 3], usize> {
    monomials(d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

fn times(e: [u32; 3], f: [u32; 3]) -> [u32; 3] {
    [e[0] + f[0], e[1] + f[1], e[2] + f[2]]
}

/// Rows `x^α · p` for all monomials of degree `shift`, as coordinate vectors in degree `shift + deg p`.
fn multiples(p: &[([u32; 3], ExactScalar)], shift: u32, target: &BTreeMap<[u32; 3], usize>) -> Vec<Vec<ExactScalar>> {
    monomials(shift)
        .into_iter()
        .map(|a| {
            let mut row = vec![ExactScalar::zero(); target.len()];
            for (e, c) in p {
                row[target[&times(a, *e)]] = c.clone();
            }
            row
        })
        .collect()
}

/// Smoothness of `F = 0`: the partials generate every form of degree `3d - 5`.
pub fn is_smooth(f: &TernaryForm) -> bool {
    let d = f.degree;
    if d < 2 {
        return d == 1;
    }
    let top = 3 * d - 5;
    let target = monomial_index(top);
    let mut rows = Vec::new();
    for var in 0..3 {
        rows.extend(multiples(&f.partial(var), top - (d - 1), &target));
    }
    ExactMatrix::from_rows(rows).expect("rectangular").rank() == target.len()
}

/// Cup product `H⁰(K) ⊗ H⁰(K) → H⁰(K²)` of the smooth plane curve `F = 0`,
/// with `H⁰(K)` = forms of degree `d - 3` and target = forms of degree
/// `2d - 6` modulo `F · (forms of degree d - 6)`.
pub fn plane_curve_q(f: &TernaryForm) -> Result<QTensor> {
    if f.degree < 4 {
        return Err(Error::DegreeTooSmall(f.degree as usize));
    }
    if !is_smooth(f) {
        return Err(Error::SingularCurve);
    }
    plane_curve_q_assume_smooth(f)
}

/// [`plane_curve_q`] without the smoothness check.
pub fn plane_curve_q_assume_smooth(f: &TernaryForm) -> Result<QTensor> {
    let d = f.degree;
    if d < 4 {
        return Err(Error::DegreeTooSmall(d as usize));
    }
    let basis = monomials(d - 3);
    let target = monomial_index(2 * d - 6);
    let n = target.len();
    let terms: Vec<_> = f.terms().map(|(e, c)| (*e, c.clone())).collect();
    let relations = if d >= 6 { multiples(&terms, d - 6, &target) } else { Vec::new() };
    let (rel, pivots) = if relations.is_empty() {
        (ExactMatrix::zeros(0, n), Vec::new())
    } else {
        ExactMatrix::from_rows(relations).expect("rectangular").rref()
    };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let m = free.len();
    let g = basis.len();
    let mut data = vec![ExactScalar::zero(); g * g * m];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let col = target[&times(*a, *b)];
            // reduce the monomial against the echelon relations, keep free coordinates
            let mut v = vec![ExactScalar::zero(); n];
            v[col] = ExactScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                if !v[p].is_zero() {
                    let s = v[p].clone();
                    for (x, y) in v.iter_mut().zip(rel.row(r)) {
                        if !y.is_zero() {
                            *x = &*x - &(&s * y);
                        }
                    }
                }
            }
            for (c, &fc) in free.iter().enumerate() {
                data[(i * g + j) * m + c] = v[fc].clone();
            }
        }
    }
    QTensor::new(g, m, data)
}

/// Outcome of the Fermat search: the first witness found and the rank of `μ` on it.
#[derive(Clone, Debug, PartialEq)]
pub struct FermatReport {
    pub d: u32,
    pub g: usize,
    pub m: usize,
    pub k: usize,
    /// Columns span the witness `W` in the monomial basis of forms of degree `d - 3`.
    pub witness: Option<ExactMatrix>,
    pub rank: usize,
    pub passes: bool,
    pub tried: usize,
}

fn condition1_real(q: &QTensor, w: &ExactMatrix) -> (bool, usize) {
    let hw = match HodgeSubspace::from_real(w) {
        Ok(hw) => hw,
        Err(_) => return (false, 0),
    };
    let rank = mu_matrix(q, hw.matrix(), &ComplexMatrix::identity(q.g)).rank();
    (check_condition1(q, &hw).unwrap_or(false), rank)
}

/// Looks for a `k`-dimensional `W` satisfying the exactness criterion for the
/// Fermat curve of degree `d`: first spans of monomial basis vectors, then
/// seeded random integer matrices. For `k = 1` this is injectivity of `μ` on `⟨v⟩ ⊗ H⁰(K)`.
pub fn fermat_criterion(d: u32, k: usize, seed: u64) -> Result<FermatReport> {
    let q = plane_curve_q(&TernaryForm::fermat(d))?;
    let g = q.g();
    if k == 0 || k >= g {
        return Err(Error::BadK { k, max: g - 1 });
    }
    let mut tried = 0;
    let mut best: Option<(ExactMatrix, usize)> = None;
    let mut candidates: Vec<ExactMatrix> = (0..g.min(8))
        .filter(|&s| s + k <= g)
        .map(|s| ExactMatrix::identity(g).columns(&(s..s + k).collect::<Vec<_>>()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.extend((0..FERMAT_RANDOM_TRIES).map(|_| ExactMatrix::from_fn(g, k, |_, _| ExactScalar::int(rng.random_range(-5..=5)))));
    for w in candidates {
        tried += 1;
        let (ok, rank) = condition1_real(&q, &w);
        if ok {
            return Ok(FermatReport { d, g, m: q.m(), k, witness: Some(w), rank, passes: true, tried });
        }
        if best.as_ref().is_none_or(|(_, r)| rank > *r) {
            best = Some((w, rank));
        }
    }
    let rank = best.as_ref().map_or(0, |(_, r)| *r);
    Ok(FermatReport { d, g, m: q.m(), k, witness: None, rank, passes: false, tried })
}

/// Entries `a + bi` with `a, b` uniform in `[-bound, bound]`.
pub fn random_gaussian_integer_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        ComplexScalar::new(ExactScalar::int(rng.random_range(-bound..=bound)), ExactScalar::int(rng.random_range(-bound..=bound)))
    })
}

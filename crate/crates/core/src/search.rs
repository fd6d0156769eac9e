//! Density witnesses: from a real period matrix `Z0` of a given type, find a
//! nearby real period matrix whose abelian variety has a real abelian
//! subvariety of dimension `k`, together with the rational plane certifying it.
//!
//! The pipeline: pick `v_1..v_k` from the `+1` eigenspace of `T` and take the
//! Hodge plane through them, so that `L₀ = span(v_i, J v_i)` is `T`-stable;
//! approximate `L₀` by a rational `T`-stable plane `P`; then move `Y` (keeping
//! `X = M/2`) until `P` is `J`-stable, by damped Gauss–Newton on
//! `‖(I - Π_P) J Π_P‖`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{Cholesky, Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::criterion::{check_ek, siegel_q, HodgeSubspace};
use crate::error::{Error, Result};
use crate::grassmann::{rational_approx_fixed, RealPlane};
use crate::matrix::{ComplexMatrix, ExactMatrix};
use crate::realstruct::RealStructureType;
use crate::scalar::{ComplexScalar, ExactScalar};
use crate::siegel::{self, in_fixed_locus, SiegelPoint};
use crate::subvariety::{hodge_projection, j_residual, phi_plane, RationalPlane};

/// Solver settings. Defaults: `tol_fix = 1e-9`, `tol_res = 1e-8`,
/// `tol_fstable = 1e-8`, `denom_bound = 10⁴`, `max_iters = 500`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub tol_fix: f64,
    pub tol_res: f64,
    pub tol_fstable: f64,
    pub denom_bound: u64,
    pub max_iters: usize,
    /// How many times the denominator bound may be multiplied by 10 when the
    /// displacement budget is exceeded.
    pub max_escalations: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            tol_fix: siegel::DEFAULT_TOL_FIX,
            tol_res: 1e-8,
            tol_fstable: crate::grassmann::DEFAULT_TOL_FSTABLE,
            denom_bound: 10_000,
            max_iters: 500,
            max_escalations: 3,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [self.tol_fix, self.tol_res, self.tol_fstable];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if self.denom_bound == 0 {
            return Err(Error::InvalidInput("denominator bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// A nearby real period matrix and the rational plane of its real abelian subvariety.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityWitness {
    pub z_start: SiegelPoint,
    pub z_found: SiegelPoint,
    pub plane: RationalPlane,
    pub j_residual: f64,
    /// `max |Z_found - Z_start|`.
    pub displacement: f64,
    pub alpha: u8,
    pub lambda: usize,
    pub m: ExactMatrix,
    pub k: usize,
    pub denom_bound: u64,
    pub iterations: usize,
}

impl DensityWitness {
    pub fn t(&self) -> ExactMatrix {
        crate::realstruct::involution_t(&self.m).expect("M is symmetric integral")
    }
}

fn check_type(z0: &SiegelPoint, ty: &RealStructureType, k: usize, cfg: &SearchConfig) -> Result<()> {
    cfg.validate()?;
    z0.validate()?;
    let g = z0.g();
    if ty.g != g {
        return Err(Error::ShapeMismatch(format!("type is for g = {}, point has g = {g}", ty.g)));
    }
    if k == 0 || k >= g {
        return Err(Error::BadK { k, max: g.saturating_sub(1) });
    }
    if !in_fixed_locus(&ty.m, z0, cfg.tol_fix)? {
        return Err(Error::NotInFixedLocus);
    }
    Ok(())
}

/// Hodge data at `z` for the `+1` eigenvectors `e_i`, `i ∈ idx`: the columns
/// `(e_i - iJe_i)/2` in `C^{2g}`.
fn hodge_plane(j: &DMatrix<f64>, idx: &[usize]) -> DMatrix<Complex<f64>> {
    let n = j.nrows();
    let mut b = DMatrix::zeros(n, idx.len());
    for (c, &i) in idx.iter().enumerate() {
        b[(i, c)] = 1.0;
    }
    hodge_projection(j, &b)
}

/// The E_k condition for `W ⊂ H^{1,0} ≅ C^g` (coordinates via `Π = (I | Z)`),
/// with the polarization `E_H = Y⁻¹`, checked exactly on the binary expansions.
fn ek_condition(z: &SiegelPoint, w: &DMatrix<Complex<f64>>) -> Result<bool> {
    let g = z.g();
    let (x, y) = (z.real_part_f64(), z.imag_part_f64());
    let top = w.rows(0, g);
    let bottom = w.rows(g, g);
    let zc = DMatrix::from_fn(g, g, |r, c| Complex::new(x[(r, c)], y[(r, c)]));
    let wg = top + &zc * bottom;
    let exact = |v: f64| ExactScalar::from_f64(v);
    let cw = ComplexMatrix::from_fn(g, w.ncols(), |r, c| ComplexScalar::new(exact(wg[(r, c)].re).unwrap(), exact(wg[(r, c)].im).unwrap()));
    let yi = Cholesky::new(y).ok_or(Error::NotPositiveDefinite)?.inverse();
    let eh = ComplexMatrix::from_fn(g, g, |r, c| ComplexScalar::real(exact(yi[(r, c)]).unwrap()));
    check_ek(&siegel_q(g), &HodgeSubspace::new(cw)?, &eh)
}

/// Residual blocks `(I - Π_P) A Π_P` flattened column-major.
fn residual_vec(q: &DMatrix<f64>, p: &DMatrix<f64>, a: &DMatrix<f64>) -> Vec<f64> {
    (q * a * p).iter().copied().collect()
}

fn sym_unit(g: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut e = DMatrix::zeros(g, g);
    e[(i, j)] = 1.0;
    e[(j, i)] = 1.0;
    e
}

/// `dJ` along `dY` at `(X, Y)`, using `d(Y⁻¹) = -Y⁻¹ dY Y⁻¹`.
fn d_complex_structure(x: &DMatrix<f64>, yi: &DMatrix<f64>, dy: &DMatrix<f64>) -> DMatrix<f64> {
    let g = x.nrows();
    let dyi = -(yi * dy * yi);
    let mut dj = DMatrix::zeros(2 * g, 2 * g);
    dj.view_mut((0, 0), (g, g)).copy_from(&(-(x * &dyi)));
    dj.view_mut((0, g), (g, g)).copy_from(&(-(dy + x * &dyi * x)));
    dj.view_mut((g, 0), (g, g)).copy_from(&dyi);
    dj.view_mut((g, g), (g, g)).copy_from(&(&dyi * x));
    dj
}

/// Minimum-norm least-squares solution of `A x = b` through the eigenvectors
/// of `AᵗA`, dropping directions with eigenvalue below `1e-20` of the largest.
fn min_norm_solve(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = (a.transpose() * a).symmetric_eigen();
    let lmax = eig.eigenvalues.max().max(f64::MIN_POSITIVE);
    let atb = a.transpose() * b;
    let mut x = DMatrix::zeros(a.ncols(), 1);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l > 1e-20 * lmax {
            let v = eig.eigenvectors.column(i);
            x += v * (v.dot(&atb.column(0)) / l);
        }
    }
    x
}

struct SolveOutcome {
    y: DMatrix<f64>,
    iterations: usize,
}

/// Damped Gauss–Newton in the `g(g+1)/2` entries of `Y` with `X` fixed.
/// Minimum-norm steps via the pseudo-inverse; steps are halved until `Y`
/// stays positive definite and the residual decreases.
fn solve_y(x: &DMatrix<f64>, y0: &DMatrix<f64>, plane: &RealPlane, cfg: &SearchConfig) -> Result<SolveOutcome> {
    let g = x.nrows();
    let n = 2 * g;
    let p = plane.projector();
    let q = DMatrix::<f64>::identity(n, n) - &p;
    let params: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let units: Vec<DMatrix<f64>> = params.iter().map(|&(i, j)| sym_unit(g, i, j)).collect();
    let res_at = |y: &DMatrix<f64>| -> Option<f64> {
        let j = siegel::complex_structure_f64(x, y).ok()?;
        Some((&q * j * &p).norm())
    };
    let mut y = y0.clone();
    let mut r = res_at(&y).ok_or(Error::NotPositiveDefinite)?;
    let mut it = 0;
    while r > cfg.tol_res && it < cfg.max_iters {
        it += 1;
        let yi = Cholesky::new(y.clone()).ok_or(Error::NotPositiveDefinite)?.inverse();
        let j = siegel::complex_structure_f64(x, &y)?;
        let rv = DMatrix::from_vec(n * n, 1, residual_vec(&q, &p, &j));
        let mut jac = DMatrix::zeros(n * n, params.len());
        for (c, e) in units.iter().enumerate() {
            let col = residual_vec(&q, &p, &d_complex_structure(x, &yi, e));
            jac.column_mut(c).copy_from_slice(&col);
        }
        let step = -min_norm_solve(&jac, &rv);
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-12 {
            let mut trial = y.clone();
            for (c, &(i, j)) in params.iter().enumerate() {
                trial[(i, j)] += t * step[c];
                if i != j {
                    trial[(j, i)] = trial[(i, j)];
                }
            }
            if let Some(rt) = res_at(&trial) {
                if rt < r {
                    y = trial;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Ok(SolveOutcome { y, iterations: it })
}

/// Index sets of `+1` eigenvectors to try, in lexicographic order.
fn index_sets(g: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < g - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// One pass at a fixed denominator bound and eigenvector choice, with no
/// displacement budget. Used by [`density_search`] and by convergence studies.
pub fn search_with_bound(z0: &SiegelPoint, ty: &RealStructureType, idx: &[usize], max_den: u64, cfg: &SearchConfig) -> Result<DensityWitness> {
    let k = idx.len();
    check_type(z0, ty, k, cfg)?;
    let zf = z0.to_float();
    let (x, y0) = (ty.m.to_f64() * 0.5, zf.imag_part_f64());
    let start = SiegelPoint::float(x.clone(), y0.clone())?;
    let j0 = siegel::complex_structure_f64(&x, &y0)?;
    let w = hodge_plane(&j0, idx);
    if !ek_condition(&start, &w)? {
        return Err(Error::InvalidInput("E_k condition fails for the universal tensor".into()));
    }
    let l0 = phi_plane(&start, &w)?;
    let p = rational_approx_fixed(&ty.t, &l0, max_den, cfg.tol_fstable)?;
    if p.symplectic_rank() != 2 * k {
        return Err(Error::DegeneratePolarization);
    }
    let sol = solve_y(&x, &y0, &p.to_real(), cfg)?;
    let found = SiegelPoint::float(x, sol.y)?;
    let jf = siegel::complex_structure_f64(&found.real_part_f64(), &found.imag_part_f64())?;
    let res = exact_or_float_residual(&found, &jf, &p);
    Ok(DensityWitness {
        displacement: found.distance_max(z0),
        z_start: z0.clone(),
        z_found: found,
        plane: p,
        j_residual: res,
        alpha: ty.alpha,
        lambda: ty.lambda,
        m: ty.m.clone(),
        k,
        denom_bound: max_den,
        iterations: sol.iterations,
    })
}

/// Float points are dyadic rationals, so exact stability can be decided; an
/// exactly stable plane reports residual 0.
fn exactly_stable(z: &SiegelPoint, p: &RationalPlane) -> bool {
    let (x, y) = (z.real_part_f64(), z.imag_part_f64());
    let (Ok(x), Ok(y)) = (ExactMatrix::from_f64(&x), ExactMatrix::from_f64(&y)) else {
        return false;
    };
    match siegel::complex_structure(&SiegelPoint::Exact { x, y }) {
        Ok(siegel::ComplexStructure::Exact(j)) => p.is_stable_under(&j),
        _ => false,
    }
}

fn exact_or_float_residual(z: &SiegelPoint, j: &DMatrix<f64>, p: &RationalPlane) -> f64 {
    let r = j_residual(j, &p.to_real());
    if r <= EXACT_CHECK_BELOW && exactly_stable(z, p) {
        0.0
    } else {
        r
    }
}

const EXACT_CHECK_BELOW: f64 = 1e-12;

/// Finds a witness within max-norm distance `eps` of `z0`.
///
/// Tries eigenvector choices in order at the configured denominator bound,
/// then multiplies the bound by 10 (up to `max_escalations` times) while the
/// displacement is too large. Failure is reported as [`Error::NoConvergence`]
/// with the best residual and displacement seen.
pub fn density_search(z0: &SiegelPoint, ty: &RealStructureType, k: usize, eps: f64, cfg: &SearchConfig) -> Result<DensityWitness> {
    check_type(z0, ty, k, cfg)?;
    let g = z0.g();
    let mut best: Option<(f64, f64)> = None;
    let mut iterations = 0;
    let mut d = cfg.denom_bound;
    for _ in 0..=cfg.max_escalations {
        for idx in index_sets(g, k) {
            match search_with_bound(z0, ty, &idx, d, cfg) {
                Ok(w) => {
                    iterations += w.iterations;
                    if w.j_residual <= cfg.tol_res && w.displacement <= eps {
                        return Ok(w);
                    }
                    let cand = (w.j_residual, w.displacement);
                    if best.is_none_or(|b| (cand.0 > cfg.tol_res, cand.1) < (b.0 > cfg.tol_res, b.1)) {
                        best = Some(cand);
                    }
                }
                Err(Error::DimensionDrop { .. } | Error::DegeneratePolarization) => {}
                Err(e) => return Err(e),
            }
        }
        d = d.saturating_mul(10);
    }
    let (best_residual, displacement) = best.unwrap_or((f64::INFINITY, f64::INFINITY));
    Err(Error::NoConvergence { best_residual, displacement, iterations })
}

/// Per-invariant verdicts from [`certify`].
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyReport {
    pub valid_point: bool,
    pub fixed_locus: bool,
    pub t_stable: bool,
    pub symplectic_rank: usize,
    pub symplectic_ok: bool,
    pub j_residual: f64,
    pub j_residual_ok: bool,
}

impl CertifyReport {
    pub fn all_pass(&self) -> bool {
        self.valid_point && self.fixed_locus && self.t_stable && self.symplectic_ok && self.j_residual_ok
    }

    pub fn checks(&self) -> [(&'static str, bool); 5] {
        [
            ("valid_point", self.valid_point),
            ("fixed_locus", self.fixed_locus),
            ("t_stable", self.t_stable),
            ("symplectic_rank", self.symplectic_ok),
            ("j_residual", self.j_residual_ok),
        ]
    }
}

/// `J` as the solution of `Π J = i Π` for `Π = (I | Z)`, via LU on the real
/// and imaginary parts. Kept separate from the closed form used by the solver.
fn structure_from_periods(z: &SiegelPoint) -> Option<DMatrix<f64>> {
    let g = z.g();
    let (x, y) = (z.real_part_f64(), z.imag_part_f64());
    let mut re = DMatrix::zeros(g, 2 * g);
    re.view_mut((0, 0), (g, g)).fill_with_identity();
    re.view_mut((0, g), (g, g)).copy_from(&x);
    let mut im = DMatrix::zeros(g, 2 * g);
    im.view_mut((0, g), (g, g)).copy_from(&y);
    let mut lhs = DMatrix::zeros(2 * g, 2 * g);
    lhs.view_mut((0, 0), (g, 2 * g)).copy_from(&re);
    lhs.view_mut((g, 0), (g, 2 * g)).copy_from(&im);
    let mut rhs = DMatrix::zeros(2 * g, 2 * g);
    rhs.view_mut((0, 0), (g, 2 * g)).copy_from(&(-&im));
    rhs.view_mut((g, 0), (g, 2 * g)).copy_from(&re);
    lhs.lu().solve(&rhs)
}

/// Recomputes every witness invariant from the stored data alone.
pub fn certify_with(w: &DensityWitness, tol_fix: f64, tol_res: f64) -> CertifyReport {
    let valid_point = w.z_found.validate().is_ok();
    let fixed_locus = in_fixed_locus(&w.m, &w.z_found, tol_fix).unwrap_or(false);
    let t_stable = w.plane.is_stable_under(&w.t());
    let symplectic_rank = w.plane.symplectic_rank();
    let j_res = if valid_point {
        structure_from_periods(&w.z_found).map_or(f64::INFINITY, |j| {
            let b = w.plane.basis().to_f64();
            let qr = b.qr();
            let qm = qr.q();
            let p = &qm * qm.transpose();
            let n = p.nrows();
            let r = ((DMatrix::<f64>::identity(n, n) - &p) * j * &p).norm();
            if r <= EXACT_CHECK_BELOW && exactly_stable(&w.z_found, &w.plane) {
                0.0
            } else {
                r
            }
        })
    } else {
        f64::INFINITY
    };
    CertifyReport {
        valid_point,
        fixed_locus,
        t_stable,
        symplectic_rank,
        symplectic_ok: symplectic_rank == 2 * w.k && w.plane.dim() == 2 * w.k,
        j_residual: j_res,
        j_residual_ok: j_res <= tol_res,
    }
}

pub fn certify(w: &DensityWitness) -> CertifyReport {
    let cfg = SearchConfig::default();
    certify_with(w, cfg.tol_fix, cfg.tol_res)
}

/// Seed for sample `i`, derived from the master seed.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    // splitmix64 step
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `Z0 = M/2 + iY` with `Y = A Aᵗ + I/2` for a standard Gaussian `A`.
pub fn random_fixed_point(ty: &RealStructureType, seed: u64) -> SiegelPoint {
    let g = ty.g;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::<f64>::from_fn(g, g, |_, _| StandardNormal.sample(&mut rng));
    let y = &a * a.transpose() + DMatrix::<f64>::identity(g, g) * 0.5;
    let y = (&y + y.transpose()) * 0.5;
    SiegelPoint::float(ty.m.to_f64() * 0.5, y).expect("square blocks")
}

/// One row of a sampling table.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub sample: usize,
    pub eps: f64,
    pub success: bool,
    pub j_residual: f64,
    pub displacement: f64,
    pub iterations: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSummary {
    pub eps: f64,
    pub n: usize,
    pub success_rate: f64,
    pub median_residual: f64,
    pub median_displacement: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleTable {
    pub alpha: u8,
    pub lambda: usize,
    pub g: usize,
    pub k: usize,
    pub seed: u64,
    pub rows: Vec<SampleRow>,
    pub summary: Vec<SampleSummary>,
}

/// Runs sample `i` at every `eps` in the schedule.
pub fn run_sample(ty: &RealStructureType, k: usize, i: usize, eps_schedule: &[f64], seed: u64, cfg: &SearchConfig) -> Vec<SampleRow> {
    let z0 = random_fixed_point(ty, sample_seed(seed, i));
    eps_schedule
        .iter()
        .map(|&eps| match density_search(&z0, ty, k, eps, cfg) {
            Ok(w) => SampleRow {
                sample: i,
                eps,
                success: certify_with(&w, cfg.tol_fix, cfg.tol_res).all_pass(),
                j_residual: w.j_residual,
                displacement: w.displacement,
                iterations: w.iterations,
                error: None,
            },
            Err(e) => {
                let (r, d, it) = match e {
                    Error::NoConvergence { best_residual, displacement, iterations } => (best_residual, displacement, iterations),
                    _ => (f64::INFINITY, f64::INFINITY, 0),
                };
                SampleRow { sample: i, eps, success: false, j_residual: r, displacement: d, iterations: it, error: Some(e.kind().into()) }
            }
        })
        .collect()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.retain(|x| x.is_finite());
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Per-`eps` success rate and medians over all rows at that `eps`. Rows are
/// sorted by `(sample, eps position)` first so the result does not depend on
/// the order samples were run in.
pub fn summarize(ty: &RealStructureType, k: usize, seed: u64, eps_schedule: &[f64], mut rows: Vec<SampleRow>) -> SampleTable {
    let pos = |e: f64| eps_schedule.iter().position(|&x| x.to_bits() == e.to_bits()).unwrap_or(usize::MAX);
    rows.sort_by_key(|r| (r.sample, pos(r.eps)));
    let summary = eps_schedule
        .iter()
        .map(|&eps| {
            let at: Vec<&SampleRow> = rows.iter().filter(|r| r.eps.to_bits() == eps.to_bits()).collect();
            let n = at.len();
            let ok = at.iter().filter(|r| r.success).count();
            SampleSummary {
                eps,
                n,
                success_rate: if n == 0 { 0.0 } else { ok as f64 / n as f64 },
                median_residual: median(at.iter().map(|r| r.j_residual).collect()),
                median_displacement: median(at.iter().map(|r| r.displacement).collect()),
            }
        })
        .collect();
    SampleTable { alpha: ty.alpha, lambda: ty.lambda, g: ty.g, k, seed, rows, summary }
}

/// Samples `n` random fixed points of the type and searches at each `eps`.
/// Deterministic in `seed`; sample `i` depends only on `(seed, i)`.
pub fn sample_density(ty: &RealStructureType, k: usize, n: usize, eps_schedule: &[f64], seed: u64, cfg: &SearchConfig) -> SampleTable {
    let rows = (0..n).flat_map(|i| run_sample(ty, k, i, eps_schedule, seed, cfg)).collect();
    summarize(ty, k, seed, eps_schedule, rows)
}

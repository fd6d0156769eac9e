//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use realav_core::criterion::{
    check_condition1, fermat_criterion, random_gaussian_integer_matrix, siegel_q, HodgeSubspace, QTensor,
    DEFAULT_FERMAT_SEED,
};
use realav_core::grassmann::{rational_approx_fixed, RealPlane};
use realav_core::matrix::{ComplexMatrix, ExactMatrix};
use realav_core::realstruct::{classify_normal_form, enumerate_ab_types, enumerate_curve_types, RealStructureType};
use realav_core::scalar::ExactScalar;
use realav_core::search::{certify, density_search, random_fixed_point, sample_density, SearchConfig};
use realav_core::siegel::{complex_structure, symplectic_form, SiegelPoint};
use realav_core::subvariety::{brute_search, is_real_subvariety, RationalPlane};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn gaussian(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| StandardNormal.sample(rng))
}

fn random_point(rng: &mut ChaCha8Rng, g: usize) -> SiegelPoint {
    let a = gaussian(rng, g, g);
    let y = &a * a.transpose() + DMatrix::identity(g, g) * 0.5;
    let b = gaussian(rng, g, g);
    let x = (&b + b.transpose()) * 0.5;
    SiegelPoint::float(x, (&y + y.transpose()) * 0.5).unwrap()
}

fn e_f64(g: usize) -> DMatrix<f64> {
    symplectic_form(g).to_f64()
}

/// Riemann relations on random period matrices, checked directly on `J`.
fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = (0.0f64, 0.0f64, f64::INFINITY);
    let mut fails = 0;
    for i in 0..1000 {
        let g = 1 + i % 4;
        let z = random_point(&mut rng, g);
        let j = complex_structure(&z).unwrap().to_f64();
        let n = 2 * g;
        let e = e_f64(g);
        let sq = (&j * &j + DMatrix::identity(n, n)).norm();
        let sp = (j.transpose() * &e * &j - &e).norm();
        let ej = &e * &j;
        let pos = ((&ej + ej.transpose()) * 0.5).symmetric_eigenvalues().min();
        worst = (worst.0.max(sq), worst.1.max(sp), worst.2.min(pos));
        if !(sq <= 1e-10 && sp <= 1e-10 && pos > 0.0) {
            fails += 1;
        }
    }
    outcome(fails == 0, format!("1000 points, max |J²+I| {:.1e}, max |JᵗEJ-E| {:.1e}, min positivity {:.2e}", worst.0, worst.1, worst.2))
}

/// Direct count of `J(g)` from its defining conditions.
fn curve_types_by_hand(g: usize) -> usize {
    let mut n = 0;
    for k in 0..=g + 1 {
        if k <= g {
            n += 1;
        }
        if k >= 1 && (g + 1 - k).is_multiple_of(2) {
            n += 1;
        }
    }
    n
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut types = 0;
    for g in 1..=6 {
        let e = symplectic_form(g);
        for ty in enumerate_ab_types(g) {
            types += 1;
            ok &= &ty.t * &ty.t == ExactMatrix::identity(2 * g);
            ok &= &(&ty.t.transpose() * &e) * &ty.t == -&e;
            ok &= classify_normal_form(&ty.m).unwrap() == ty.class();
        }
    }
    for g in 1..=10 {
        let n = enumerate_curve_types(g).len();
        ok &= n == (3 * g + 4) / 2 && n == curve_types_by_hand(g);
    }
    ok &= enumerate_ab_types(2).len() == 4;
    outcome(ok, format!("{types} types for g ≤ 6, curve counts for g ≤ 10"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut n = 0;
    for g in [2, 3] {
        for ty in enumerate_ab_types(g) {
            let t = ty.t.to_f64();
            for _ in 0..100 {
                let a = gaussian(&mut rng, g, g);
                let y = &a * a.transpose() + DMatrix::identity(g, g) * 0.5;
                let z = SiegelPoint::float(ty.m.to_f64() * 0.5, (&y + y.transpose()) * 0.5).unwrap();
                let j = complex_structure(&z).unwrap().to_f64();
                worst = worst.max((&t * &j + &j * &t).norm());
                n += 1;
            }
        }
    }
    outcome(worst <= 1e-9, format!("{n} fixed points, max |TJ+JT| {worst:.1e}"))
}

// ---- criterion 4: an independent oracle for real subvarieties of height 1 ----

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qr(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

type QMat = Vec<Vec<BigRational>>;

fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let (r, m, c) = (a.len(), b.len(), b[0].len());
    (0..r).map(|i| (0..c).map(|j| (0..m).fold(q(0), |s, k| s + &a[i][k] * &b[k][j])).collect()).collect()
}

/// Gauss–Jordan rank over the rationals.
fn qrank(mut m: QMat) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `A J = B` for square invertible `A`, by Gauss–Jordan on `[A | B]`.
fn qsolve(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let mut m: QMat = (0..n).map(|i| a[i].iter().chain(b[i].iter()).cloned().collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let v = &m[c][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// `J` from `Π J = i Π` with `Π = (I | X + iY)`: real part `[I X] J = -[0 Y]`,
/// imaginary part `[0 Y] J = [I X]`.
fn oracle_j(x: &QMat, y: &QMat) -> QMat {
    let g = x.len();
    let mut a = vec![vec![q(0); 2 * g]; 2 * g];
    let mut b = vec![vec![q(0); 2 * g]; 2 * g];
    for i in 0..g {
        a[i][i] = q(1);
        b[g + i][i] = q(1);
        for j in 0..g {
            a[i][g + j] = x[i][j].clone();
            a[g + i][g + j] = y[i][j].clone();
            b[i][g + j] = -y[i][j].clone();
            b[g + i][g + j] = x[i][j].clone();
        }
    }
    qsolve(&a, &b)
}

fn cols_to_qmat(cols: &[Vec<BigRational>]) -> QMat {
    let n = cols[0].len();
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Reduced row echelon form of the rows `p`, flattened; equal exactly when
/// the spans are equal.
fn span_key(p: &[Vec<BigRational>]) -> Vec<BigRational> {
    let mut m: QMat = p.to_vec();
    let (rows, cols) = (m.len(), m[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for j in 0..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    m.truncate(r);
    m.into_iter().flatten().collect()
}

/// Every `span(v, Jv)` with `v ∈ {-1,0,1}^{2g}` and rational `Jv`, plus the
/// coordinate 2-planes, kept when `keep` accepts them; deduplicated by span.
fn oracle_candidates(j: &QMat, keep: impl Fn(&[Vec<BigRational>]) -> bool) -> Vec<Vec<Vec<BigRational>>> {
    let n = j.len();
    let mut seen = BTreeSet::new();
    let mut out: Vec<Vec<Vec<BigRational>>> = Vec::new();
    let mut push = |p: Vec<Vec<BigRational>>| {
        if qrank(cols_to_qmat(&p)) == 2 && seen.insert(span_key(&p)) && keep(&p) {
            out.push(p);
        }
    };
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let v: Vec<BigRational> = (0..n)
            .map(|_| {
                let d = c % 3;
                c /= 3;
                q(d as i64 - 1)
            })
            .collect();
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let jv: Vec<BigRational> = (0..n).map(|i| (0..n).fold(q(0), |s, k| s + &j[i][k] * &v[k])).collect();
        push(vec![v, jv]);
    }
    for a in 0..n {
        for b in a + 1..n {
            let e = |i: usize| (0..n).map(|r| q((r == i) as i64)).collect::<Vec<_>>();
            push(vec![e(a), e(b)]);
        }
    }
    out
}

fn oracle_certified(j: &QMat, t: &QMat, p: &[Vec<BigRational>]) -> bool {
    let n = j.len();
    let g = n / 2;
    let b = cols_to_qmat(p);
    let stable = |f: &QMat| {
        let fb = qmat_mul(f, &b);
        let both: QMat = (0..n).map(|i| b[i].iter().chain(fb[i].iter()).cloned().collect()).collect();
        qrank(both) == 2
    };
    // E(p0, p1) ≠ 0
    let e01 = (0..g).fold(q(0), |s, i| s + &p[0][i] * &p[1][g + i] - &p[0][g + i] * &p[1][i]);
    stable(j) && stable(t) && !e01.is_zero()
}

fn exact_point(x: &QMat, y: &QMat) -> SiegelPoint {
    let conv = |m: &QMat| ExactMatrix::from_rows(m.iter().map(|r| r.iter().map(|v| ExactScalar::rational(v.clone())).collect()).collect()).unwrap();
    SiegelPoint::exact(conv(x), conv(y)).unwrap()
}

fn to_cols(p: &RationalPlane) -> Vec<Vec<BigRational>> {
    (0..p.dim()).map(|c| p.basis().column(c).iter().map(|v| v.as_rational().unwrap().clone()).collect()).collect()
}

fn criterion_4() -> Outcome {
    // (M, X, Y) with X = M/2; all block-split or rational
    let examples: Vec<(QMat, QMat)> = vec![
        (vec![vec![q(0), q(0)], vec![q(0), q(0)]], vec![vec![q(1), q(0)], vec![q(0), q(2)]]),
        (vec![vec![q(0), q(0)], vec![q(0), q(0)]], vec![vec![q(1), q(0)], vec![q(0), q(1)]]),
        (vec![vec![q(1), q(0)], vec![q(0), q(0)]], vec![vec![q(1), q(0)], vec![q(0), q(3)]]),
        (vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(2), q(0)], vec![q(0), q(1)]]),
        (vec![vec![q(0), q(1)], vec![q(1), q(0)]], vec![vec![q(1), q(0)], vec![q(0), q(1)]]),
        (vec![vec![q(0), q(1)], vec![q(1), q(0)]], vec![vec![q(2), q(1)], vec![q(1), q(2)]]),
        (
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(0)], vec![q(0), q(0), q(0)]],
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(1)]],
        ),
    ];
    let mut ok = true;
    let mut total = 0;
    let mut detail = String::new();
    for (m, y) in &examples {
        let g = m.len();
        let x: QMat = m.iter().map(|r| r.iter().map(|v| v * qr(1, 2)).collect()).collect();
        let z = exact_point(&x, y);
        let mq = ExactMatrix::from_rows(m.iter().map(|r| r.iter().map(|v| ExactScalar::rational(v.clone())).collect()).collect()).unwrap();
        let t = realav_core::realstruct::involution_t(&mq).unwrap();
        let tq: QMat = (0..2 * g).map(|i| (0..2 * g).map(|j| t[(i, j)].as_rational().unwrap().clone()).collect()).collect();
        let j = oracle_j(&x, y);
        let expected = oracle_candidates(&j, |p| oracle_certified(&j, &tq, p));
        let found = brute_search(&z, 1, 1, Some(&t)).unwrap();
        let found_cols: Vec<_> = found.iter().map(|c| to_cols(&c.plane)).collect();
        let matched = found_cols.len() == expected.len()
            && found_cols.iter().map(|f| span_key(f)).collect::<BTreeSet<_>>() == expected.iter().map(|e| span_key(e)).collect();
        let recheck = found.iter().all(|c| is_real_subvariety(&z, &t, &c.plane, 0.0).map(|r| r.certified()).unwrap_or(false));
        if !(matched && recheck) {
            detail = format!("mismatch at M = {m:?}, Y = {y:?}: {} found vs {} expected", found.len(), expected.len());
        }
        ok &= matched && recheck;
        total += found.len();
    }
    if ok {
        detail = format!("{} examples, {total} real subvarieties, all re-verified", examples.len());
    }
    outcome(ok, detail)
}

// ---- criterion 5 ----

/// `μ` for the symmetrization tensor, written directly in `Sym²` coordinates:
/// `w ⊗ e_j ↦ Σ_i w_i e_i e_j`.
fn oracle_sym_mu(w: &ComplexMatrix) -> ComplexMatrix {
    let (g, k) = (w.rows(), w.cols());
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut mu = ComplexMatrix::zeros(pairs.len(), k * g);
    for a in 0..k {
        for j in 0..g {
            for i in 0..g {
                let r = index(i, j);
                mu[(r, a * g + j)] = mu[(r, a * g + j)].clone() + w[(i, a)].clone();
            }
        }
    }
    mu
}

fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> ComplexMatrix {
    loop {
        let a = random_gaussian_integer_matrix(rng, k, k, 2);
        if a.rank() == k {
            return a;
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shapes: Vec<(usize, usize)> = (2..=4).flat_map(|g| (1..g).map(move |k| (g, k))).collect();
    let mut ok = true;
    let mut runs = 0;
    let mut oracle_ok = true;
    for i in 0..200 {
        let (g, k) = shapes[i % shapes.len()];
        let w = loop {
            let m = random_gaussian_integer_matrix(&mut rng, g, k, 3);
            if let Ok(h) = HodgeSubspace::new(m) {
                break h;
            }
        };
        ok &= check_condition1(&siegel_q(g), &w).unwrap();
        oracle_ok &= oracle_sym_mu(w.matrix()).rank() == k * g - k * (k - 1) / 2;
        if g >= 2 {
            ok &= !check_condition1(&QTensor::zero(g, g * (g + 1) / 2), &w).unwrap();
        }
        runs += 1;
    }
    let mut invariant = true;
    for i in 0..50 {
        let (g, k) = shapes[i % shapes.len()];
        // a random tensor keeps the verdict nontrivial
        let m = g * (g + 1) / 2 - (i % 2);
        let mut data = vec![ExactScalar::zero(); g * g * m];
        for a in 0..g {
            for b in a..g {
                for c in 0..m {
                    let v = ExactScalar::int(rng.random_range(-1..=1));
                    data[(a * g + b) * m + c] = v.clone();
                    data[(b * g + a) * m + c] = v;
                }
            }
        }
        let qt = QTensor::new(g, m, data).unwrap();
        let w = HodgeSubspace::new(random_gaussian_integer_matrix(&mut rng, g, k, 3)).unwrap_or_else(|_| HodgeSubspace::from_real(&ExactMatrix::identity(g).columns(&(0..k).collect::<Vec<_>>())).unwrap());
        let a = random_invertible(&mut rng, k);
        let w2 = HodgeSubspace::new(w.matrix() * &a).unwrap();
        invariant &= check_condition1(&qt, &w).unwrap() == check_condition1(&qt, &w2).unwrap();
        invariant &= check_condition1(&siegel_q(g), &w2).unwrap();
    }
    outcome(ok && oracle_ok && invariant, format!("{runs} subspaces true, zero tensor false, oracle ranks {oracle_ok}, basis invariance {invariant}"))
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for d in [4u32, 5, 6] {
        let r = fermat_criterion(d, 1, DEFAULT_FERMAT_SEED).unwrap();
        ok &= r.passes && r.rank == r.g;
        parts.push(format!("d={d}: g={} m={} rank={}", r.g, r.m, r.rank));
        if d == 4 {
            ok &= r.g == 3 && r.rank == 3;
            // X0·{X0, X1, X2} are three distinct quadric monomials
            let w = r.witness.clone().unwrap();
            ok &= w == ExactMatrix::from_i64_rows(&[&[1], &[0], &[0]]);
        }
    }
    outcome(ok, parts.join(", "))
}

// ---- criterion 7 ----

fn random_involution(rng: &mut ChaCha8Rng, n: usize) -> (ExactMatrix, ExactMatrix, Vec<bool>) {
    loop {
        let p = ExactMatrix::from_fn(n, n, |_, _| ExactScalar::int(rng.random_range(-2..=2)));
        let Some(pinv) = p.inverse() else { continue };
        let signs: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let d = ExactMatrix::diag(&signs.iter().map(|&s| ExactScalar::int(if s { 1 } else { -1 })).collect::<Vec<_>>());
        return (&(&p * &d) * &pinv, p, signs);
    }
}

/// Largest principal angle from the residual of one orthonormal basis against
/// the other: `sin² θ` is the top eigenvalue of `RᵗR`.
fn oracle_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let qa = a.clone().qr().q();
    let qb = b.clone().qr().q();
    let res = &qb - &qa * (qa.transpose() * &qb);
    let s2 = (res.transpose() * &res).symmetric_eigenvalues().max().max(0.0);
    s2.sqrt().min(1.0).asin()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bounds = [100u64, 1000, 10000];
    let mut within = [0usize; 3];
    let mut sums = [0.0f64; 3];
    let mut stable = true;
    let mut cases = 0;
    while cases < 500 {
        let n = rng.random_range(2..=8);
        let (f, p, signs) = random_involution(&mut rng, n);
        let plus: Vec<usize> = (0..n).filter(|&i| signs[i]).collect();
        let minus: Vec<usize> = (0..n).filter(|&i| !signs[i]).collect();
        let r = rng.random_range(1..=4.min(n));
        let rp = rng.random_range(r.saturating_sub(minus.len())..=r.min(plus.len()));
        let rm = r - rp;
        let pf = p.to_f64();
        let mut cols = Vec::new();
        for (cnt, idx) in [(rp, &plus), (rm, &minus)] {
            for _ in 0..cnt {
                let mut v = DMatrix::<f64>::zeros(n, 1);
                for &i in idx.iter() {
                    let c: f64 = StandardNormal.sample(&mut rng);
                    v += pf.column(i) * c;
                }
                cols.push(v);
            }
        }
        let b = DMatrix::from_columns(&cols.iter().map(|c| c.column(0).into_owned()).collect::<Vec<_>>());
        let Ok(l) = RealPlane::new(&b) else { continue };
        cases += 1;
        for (t, &d) in bounds.iter().enumerate() {
            match rational_approx_fixed(&f, &l, d, 1e-8) {
                Ok(pl) => {
                    let fb = &f * pl.basis();
                    stable &= pl.basis().hstack(&fb).rank() == pl.dim() && pl.dim() == r;
                    let dist = oracle_distance(l.basis(), &pl.basis().to_f64());
                    sums[t] += dist;
                    if dist <= 10.0 / d as f64 {
                        within[t] += 1;
                    }
                }
                Err(_) => sums[t] += std::f64::consts::FRAC_PI_2,
            }
        }
    }
    let rates: Vec<f64> = within.iter().map(|&w| w as f64 / cases as f64).collect();
    let means: Vec<f64> = sums.iter().map(|s| s / cases as f64).collect();
    let monotone = means.windows(2).all(|w| w[1] <= w[0]);
    let ok = stable && rates.iter().all(|&r| r >= 0.95) && monotone;
    outcome(ok, format!("{cases} cases, exact stability {stable}, rate ≤10/D at D=1e2,1e3,1e4: {:.3} {:.3} {:.3}, mean distance {:.2e} {:.2e} {:.2e}", rates[0], rates[1], rates[2], means[0], means[1], means[2]))
}

fn criterion_8() -> Outcome {
    let cfg = SearchConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for ty in enumerate_ab_types(2) {
        let mut wins = [0usize; 2];
        for s in 0..50u64 {
            let z0 = random_fixed_point(&ty, 8_000 + s);
            for (i, eps) in [1e-2, 5e-2].into_iter().enumerate() {
                if let Ok(w) = density_search(&z0, &ty, 1, eps, &cfg) {
                    if certify(&w).all_pass() && w.j_residual <= 1e-8 && w.displacement <= eps {
                        wins[i] += 1;
                    }
                }
            }
        }
        ok &= wins[0] * 100 >= 90 * 50 && wins[1] * 100 >= 99 * 50;
        parts.push(format!("({},{}) {}/50 {}/50", ty.alpha, ty.lambda, wins[0], wins[1]));
    }
    let split = density_search(&realav_core::siegel::diagonal_point(&[1, 2]), &RealStructureType::new(0, 0, 2).unwrap(), 1, 1e-2, &cfg)
        .map(|w| w.displacement == 0.0 && w.j_residual == 0.0)
        .unwrap_or(false);
    ok &= split;
    outcome(ok, format!("{}; split displacement 0: {split}", parts.join(", ")))
}

fn criterion_9() -> Outcome {
    let ty = RealStructureType::new(1, 2, 2).unwrap();
    let cfg = SearchConfig::default();
    let a = format!("{:?}", sample_density(&ty, 1, 12, &[1e-2, 5e-2], 2024, &cfg));
    let b = format!("{:?}", sample_density(&ty, 1, 12, &[1e-2, 5e-2], 2024, &cfg));
    outcome(a.as_bytes() == b.as_bytes(), format!("two runs, {} bytes each", a.len()))
}

fn main() -> ExitCode {
    let suite: [(u32, &str, fn() -> Outcome, Duration); 9] = [
        (1, "riemann relations", criterion_1, Duration::from_secs(10)),
        (2, "real structures", criterion_2, Duration::from_secs(1)),
        (3, "anti-holomorphy", criterion_3, Duration::MAX),
        (4, "oracle equivalence", criterion_4, Duration::from_secs(5)),
        (5, "condition 1", criterion_5, Duration::MAX),
        (6, "fermat", criterion_6, Duration::from_secs(10)),
        (7, "rational fixed planes", criterion_7, Duration::from_secs(60)),
        (8, "density search", criterion_8, Duration::from_secs(120)),
        (9, "determinism", criterion_9, Duration::MAX),
    ];
    let mut failed = BTreeSet::new();
    for (id, name, run, limit) in suite {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let pass = o.pass && took <= limit;
        if !pass {
            failed.insert(id);
        }
        let budget = if limit == Duration::MAX { String::new() } else { format!(" (limit {}s)", limit.as_secs()) };
        println!("criterion {id} [{name}]: {} in {:.2}s{budget}: {}", if pass { "PASS" } else { "FAIL" }, took.as_secs_f64(), o.detail);
    }
    if failed.is_empty() {
        println!("acceptance: 9/9 passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}

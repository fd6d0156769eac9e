use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use realav_core::criterion::{
    check_condition1, check_ek, fermat_criterion, plane_curve_q, plane_curve_q_assume_smooth, HodgeSubspace, QTensor,
};
use realav_core::grassmann::{rational_approx_fixed, subspace_distance, RealPlane};
use realav_core::matrix::{ComplexMatrix, ExactMatrix};
use realav_core::realstruct::{classify_normal_form, enumerate_ab_types, enumerate_curve_types, RealStructureType};
use realav_core::search::{certify_with, density_search, run_sample, summarize};
use realav_core::siegel::{
    complex_structure, in_fixed_locus, nearest_fixed, riemann_relations_exact, riemann_report, sp_action, tau, ComplexStructure,
    SiegelPoint,
};
use realav_core::subvariety::{brute_search, is_real_subvariety, RationalPlane};
use realav_core::Error;

use crate::args::{AtlasCmd, Command, CriterionCmd, GrassmannCmd, PointArg, SearchCmd, SiegelCmd, SubCmd};
use crate::config::Config;
use crate::error::CliError;
use crate::output::*;
use crate::wire::{
    complex_matrix_from_json, float_from_json, matrix_from_json, matrix_to_json, structure_to_json, tensor_from_json, ComplexJson,
    FloatMatrixJson, FormJson, MatrixJson, PointJson, TensorJson,
};

/// Reads and parses a JSON file; `-` means stdin.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn read_point(p: &PointArg) -> Result<SiegelPoint, CliError> {
    read_json::<PointJson>(&p.z)?.to_point()
}

fn read_matrix(path: &Path) -> Result<ExactMatrix, CliError> {
    matrix_from_json(&read_json::<MatrixJson>(path)?)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn check_g(g: usize) -> Result<(), CliError> {
    if g == 0 {
        return Err(CliError::input("g must be at least 1"));
    }
    Ok(())
}

/// Runs one subcommand and returns the text for stdout.
pub fn execute(cmd: &Command, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        Command::Siegel(c) => siegel(c, cfg),
        Command::Atlas(c) => atlas(c),
        Command::Sub(c) => sub(c, cfg),
        Command::Criterion(c) => criterion(c, cfg),
        Command::Grassmann(c) => grassmann(c, cfg),
        Command::Search(c) => search(c, cfg),
    }
}

fn siegel(cmd: &SiegelCmd, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        SiegelCmd::Validate(p) => {
            let z = read_point(p)?;
            z.validate()?;
            Ok(to_json(&ValidateOut { valid: true, g: z.g(), mode: z.mode().into() }))
        }
        SiegelCmd::Jmat(p) => {
            let z = read_point(p)?;
            let j = complex_structure(&z)?;
            let report = riemann_report(&j.to_f64());
            let holds = match &j {
                ComplexStructure::Exact(je) => riemann_relations_exact(je),
                ComplexStructure::Float(_) => report.holds(cfg.search.tol_fix),
            };
            Ok(to_json(&JmatOut {
                g: z.g(),
                mode: z.mode().into(),
                j: structure_to_json(&j),
                riemann_holds: holds,
                j_squared: report.j_squared,
                symplectic: report.symplectic,
                min_positivity: report.min_positivity,
            }))
        }
        SiegelCmd::Act { point, gamma } => {
            let z = read_point(point)?;
            let gamma = read_matrix(gamma)?;
            Ok(to_json(&PointJson::from_point(&sp_action(&gamma, &z)?)))
        }
        SiegelCmd::Tau { point, m } => {
            let z = read_point(point)?;
            Ok(to_json(&PointJson::from_point(&tau(&read_matrix(m)?, &z)?)))
        }
        SiegelCmd::Fix { point, m } => {
            let z = read_point(point)?;
            z.validate()?;
            let m = read_matrix(m)?;
            let fixed = in_fixed_locus(&m, &z, cfg.search.tol_fix)?;
            Ok(to_json(&FixOut { in_fixed_locus: fixed, nearest: PointJson::from_point(&nearest_fixed(&m, &z)?) }))
        }
    }
}

fn atlas(cmd: &AtlasCmd) -> Result<String, CliError> {
    match cmd {
        AtlasCmd::Abelian { g } => {
            check_g(*g)?;
            let types: Vec<_> = enumerate_ab_types(*g)
                .iter()
                .map(|t| AbelianTypeOut { alpha: t.alpha, lambda: t.lambda, m: matrix_to_json(&t.m), t: matrix_to_json(&t.t) })
                .collect();
            Ok(to_json(&AbelianOut { g: *g, count: types.len(), types }))
        }
        AtlasCmd::Curves { g } => {
            check_g(*g)?;
            let types: Vec<_> = enumerate_curve_types(*g).iter().map(|t| CurveTypeOut { epsilon: t.epsilon, k: t.k }).collect();
            Ok(to_json(&CurvesOut { g: *g, count: types.len(), types }))
        }
        AtlasCmd::Classify { m } => {
            let m = read_matrix(m)?;
            let class = classify_normal_form(&m)?;
            Ok(to_json(&ClassifyOut { g: m.rows(), alpha: class.alpha, lambda: class.lambda }))
        }
    }
}

fn sub(cmd: &SubCmd, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        SubCmd::Check { point, t, l } => {
            let z = read_point(point)?;
            let t = read_matrix(t)?;
            let plane = RationalPlane::from_basis(&read_matrix(l)?)?;
            let cert = is_real_subvariety(&z, &t, &plane, cfg.search.tol_res)?;
            Ok(to_json(&CertificateOut::from(&cert)))
        }
        SubCmd::Search { point, k, height, t } => {
            let z = read_point(point)?;
            let t = t.as_deref().map(read_matrix).transpose()?;
            let found = brute_search(&z, *k, *height, t.as_ref())?;
            let certificates: Vec<CertificateOut> = found.iter().map(Into::into).collect();
            Ok(to_json(&SubSearchOut { g: z.g(), k: *k, height: *height, count: certificates.len(), certificates }))
        }
    }
}

fn identity_polarization(g: usize) -> ComplexMatrix {
    ComplexMatrix::identity(g)
}

fn criterion(cmd: &CriterionCmd, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        CriterionCmd::Check { q, curve, assume_smooth, w, e } => {
            let q: QTensor = match (q, curve) {
                (Some(q), _) => tensor_from_json(&read_json::<TensorJson>(q)?)?,
                (None, Some(c)) => {
                    let f = read_json::<FormJson>(c)?.to_form()?;
                    if *assume_smooth {
                        plane_curve_q_assume_smooth(&f)?
                    } else {
                        plane_curve_q(&f)?
                    }
                }
                (None, None) => return Err(CliError::input("one of --q or --curve is required")),
            };
            let w = HodgeSubspace::new(complex_matrix_from_json(&read_json::<Vec<Vec<ComplexJson>>>(w)?)?)?;
            let e = match e {
                Some(e) => complex_matrix_from_json(&read_json::<Vec<Vec<ComplexJson>>>(e)?)?,
                None => identity_polarization(w.g()),
            };
            Ok(to_json(&CriterionOut {
                g: q.g(),
                k: w.k(),
                m: q.m(),
                condition1: check_condition1(&q, &w)?,
                ek: check_ek(&q, &w, &e)?,
            }))
        }
        CriterionCmd::Fermat { d, k } => {
            let r = fermat_criterion(*d, *k, cfg.seed)?;
            Ok(to_json(&FermatOut {
                d: r.d,
                g: r.g,
                m: r.m,
                k: r.k,
                seed: cfg.seed,
                witness: r.witness.as_ref().map(matrix_to_json),
                rank: r.rank,
                passes: r.passes,
                tried: r.tried,
            }))
        }
    }
}

fn grassmann(cmd: &GrassmannCmd, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        GrassmannCmd::Approx { f, l, denom } => {
            let f = read_matrix(f)?;
            let l = RealPlane::new(&float_from_json(&read_json::<FloatMatrixJson>(l)?)?)?;
            let d = denom.unwrap_or(cfg.search.denom_bound);
            if d == 0 {
                return Err(CliError::input("denominator bound must be at least 1"));
            }
            let p = rational_approx_fixed(&f, &l, d, cfg.search.tol_fstable)?;
            let distance = subspace_distance(&p.to_real(), &l)?;
            Ok(to_json(&ApproxOut { plane: matrix_to_json(p.basis()), dim: p.dim(), denom_bound: d, distance }))
        }
    }
}

fn search(cmd: &SearchCmd, cfg: &Config) -> Result<String, CliError> {
    match cmd {
        SearchCmd::Run { point, ty, k, eps } => {
            let z = read_point(point)?;
            let ty = RealStructureType::new(ty.0, ty.1, z.g())?;
            let w = density_search(&z, &ty, *k, *eps, &cfg.search)?;
            let report = certify_with(&w, cfg.search.tol_fix, cfg.search.tol_res);
            Ok(to_json(&WitnessOut::new(&w, &report)))
        }
        SearchCmd::Sample { g, k, ty, n, eps, csv } => {
            check_g(*g)?;
            let ty = RealStructureType::new(ty.0, ty.1, *g)?;
            if *k == 0 || *k >= *g {
                return Err(Error::BadK { k: *k, max: g - 1 }.into());
            }
            if eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
                return Err(CliError::input("eps values must be positive"));
            }
            let seed = cfg.seed;
            let rows = (0..*n).into_par_iter().flat_map_iter(|i| run_sample(&ty, *k, i, eps, seed, &cfg.search)).collect();
            let table = summarize(&ty, *k, seed, eps, rows);
            let out = SampleTableOut::from(&table);
            if *csv {
                rows_to_csv(&out.rows)
            } else {
                Ok(to_json(&out))
            }
        }
    }
}

pub fn rows_to_csv(rows: &[SampleRowOut]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

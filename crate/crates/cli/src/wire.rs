//! JSON shapes read and written by the CLI, and their conversions to core types.
//!
//! Exact scalars are written as `"p/q"` strings (`"p"` for integers) or as
//! `{"a": "p/q", "b": "p/q", "d": n}` for `a + b·√d`. Matrices are row-major
//! nested arrays.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use realav_core::criterion::{QTensor, TernaryForm};
use realav_core::matrix::{ComplexMatrix, ExactMatrix};
use realav_core::scalar::{ComplexScalar, ExactScalar};
use realav_core::siegel::{ComplexStructure, Mode, SiegelPoint};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Rational(String),
    /// Accepted on input only; output always uses the string form.
    Integer(i64),
    Quadratic { a: String, b: String, d: u64 },
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.trim().parse::<BigRational>().map_err(|_| CliError::input(format!("not a rational number: {s:?}")))
}

impl ScalarJson {
    pub fn from_exact(x: &ExactScalar) -> Self {
        if x.is_rational() {
            ScalarJson::Rational(x.a().to_string())
        } else {
            ScalarJson::Quadratic { a: x.a().to_string(), b: x.b().to_string(), d: x.d() }
        }
    }

    pub fn to_exact(&self) -> Result<ExactScalar, CliError> {
        match self {
            ScalarJson::Rational(s) => Ok(ExactScalar::rational(parse_rational(s)?)),
            ScalarJson::Integer(n) => Ok(ExactScalar::rational(BigRational::from_integer(BigInt::from(*n)))),
            ScalarJson::Quadratic { a, b, d } => Ok(ExactScalar::new(parse_rational(a)?, parse_rational(b)?, *d)?),
        }
    }
}

pub type MatrixJson = Vec<Vec<ScalarJson>>;

pub fn matrix_to_json(m: &ExactMatrix) -> MatrixJson {
    m.to_rows().iter().map(|r| r.iter().map(ScalarJson::from_exact).collect()).collect()
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<ExactMatrix, CliError> {
    let rows = m.iter().map(|r| r.iter().map(ScalarJson::to_exact).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(CliError::input("empty matrix"));
    }
    Ok(ExactMatrix::try_from_rows(rows)?)
}

pub type FloatMatrixJson = Vec<Vec<f64>>;

pub fn float_to_json(m: &DMatrix<f64>) -> FloatMatrixJson {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

pub fn float_from_json(m: &FloatMatrixJson) -> Result<DMatrix<f64>, CliError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(CliError::input("matrix rows must be non-empty and of equal length"));
    }
    if m.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::input("matrix entries must be finite"));
    }
    Ok(DMatrix::from_fn(rows, cols, |r, c| m[r][c]))
}

/// A matrix in either mode. Float entries are JSON numbers; exact entries are
/// strings or quadratic objects (plain JSON integers are accepted as exact too).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyMatrixJson {
    Exact(MatrixJson),
    Float(FloatMatrixJson),
}

impl AnyMatrixJson {
    fn to_exact(&self) -> Result<ExactMatrix, CliError> {
        match self {
            AnyMatrixJson::Exact(m) => matrix_from_json(m),
            AnyMatrixJson::Float(_) => Err(CliError::input("exact-mode entries must be strings such as \"1/2\" or integers")),
        }
    }

    fn to_float(&self) -> Result<DMatrix<f64>, CliError> {
        match self {
            AnyMatrixJson::Float(m) => float_from_json(m),
            AnyMatrixJson::Exact(m) => Ok(matrix_from_json(m)?.to_f64()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    Exact,
    Float,
}

impl From<Mode> for ModeJson {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ModeJson::Exact,
            Mode::Float => ModeJson::Float,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub g: usize,
    pub mode: ModeJson,
    #[serde(rename = "X")]
    pub x: AnyMatrixJson,
    #[serde(rename = "Y")]
    pub y: AnyMatrixJson,
}

impl PointJson {
    pub fn from_point(z: &SiegelPoint) -> Self {
        let (x, y) = match z {
            SiegelPoint::Exact { x, y } => (AnyMatrixJson::Exact(matrix_to_json(x)), AnyMatrixJson::Exact(matrix_to_json(y))),
            SiegelPoint::Float { x, y } => (AnyMatrixJson::Float(float_to_json(x)), AnyMatrixJson::Float(float_to_json(y))),
        };
        PointJson { g: z.g(), mode: z.mode().into(), x, y }
    }

    pub fn to_point(&self) -> Result<SiegelPoint, CliError> {
        let z = match self.mode {
            ModeJson::Exact => SiegelPoint::exact(self.x.to_exact()?, self.y.to_exact()?)?,
            ModeJson::Float => SiegelPoint::float(self.x.to_float()?, self.y.to_float()?)?,
        };
        if z.g() != self.g {
            return Err(CliError::input(format!("g = {} but X is {0}x{0}", z.g())));
        }
        Ok(z)
    }
}

pub fn structure_to_json(j: &ComplexStructure) -> AnyMatrixJson {
    match j {
        ComplexStructure::Exact(m) => AnyMatrixJson::Exact(matrix_to_json(m)),
        ComplexStructure::Float(m) => AnyMatrixJson::Float(float_to_json(m)),
    }
}

/// A complex entry: an exact scalar, or `{"re": .., "im": ..}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Complex { re: ScalarJson, im: ScalarJson },
    Real(ScalarJson),
}

impl ComplexJson {
    fn to_complex(&self) -> Result<ComplexScalar, CliError> {
        match self {
            ComplexJson::Complex { re, im } => Ok(ComplexScalar::new(re.to_exact()?, im.to_exact()?)),
            ComplexJson::Real(re) => Ok(ComplexScalar::real(re.to_exact()?)),
        }
    }
}

pub fn complex_matrix_from_json(m: &[Vec<ComplexJson>]) -> Result<ComplexMatrix, CliError> {
    let rows = m.iter().map(|r| r.iter().map(ComplexJson::to_complex).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::input("matrix rows must be non-empty and of equal length"));
    }
    Ok(ComplexMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c].clone()))
}

/// `q[i][j][c]` as nested arrays.
pub type TensorJson = Vec<Vec<Vec<ScalarJson>>>;

pub fn tensor_from_json(t: &TensorJson) -> Result<QTensor, CliError> {
    let nested = t
        .iter()
        .map(|a| a.iter().map(|b| b.iter().map(ScalarJson::to_exact).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QTensor::from_nested(&nested)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    /// Exponents of `X0, X1, X2`.
    pub exponents: [u32; 3],
    pub coeff: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

impl FormJson {
    pub fn to_form(&self) -> Result<TernaryForm, CliError> {
        let terms = self.terms.iter().map(|t| Ok((t.exponents, t.coeff.to_exact()?))).collect::<Result<Vec<_>, CliError>>()?;
        Ok(TernaryForm::new(self.degree, terms)?)
    }
}

/// JSON has no infinities; non-finite values are written as `null`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

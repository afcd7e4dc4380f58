//! Least-squares model fitting for benchmark series.
//!
//! Three model families cover the regressions used to characterize the
//! algorithms' growth:
//!
//! - `A * n^b`: linear least squares on `ln y` against `ln n`;
//! - `A * n^b / ln n`: the `ln n` factor is multiplied out before taking
//!   logs, i.e. `ln(y ln n)` is regressed against `ln n`;
//! - `A * n^2 + B * n`: ordinary least squares on the two monomials.
//!
//! The reported correlation is the Pearson coefficient in the space the
//! fit was performed in (transformed log space for the power models,
//! observed-vs-fitted for the quadratic). Degenerate inputs with zero
//! variance report a correlation of 0 rather than failing.

use crate::{AlgorithmId, BenchError, BenchRecord, Result};
use clap::ValueEnum;
use std::fmt;

/// Model family to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitModel {
    /// `y = A * n^b`
    Powb,
    /// `y = A * n^b / ln n`
    PowbLn,
    /// `y = A * n^2 + B * n`
    Quad,
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitModel::Powb => write!(f, "A*n^b"),
            FitModel::PowbLn => write!(f, "A*n^b/ln(n)"),
            FitModel::Quad => write!(f, "A*n^2 + B*n"),
        }
    }
}

/// A fitted model: coefficients are `[A, b]` for the power forms and
/// `[A, B]` for the quadratic.
#[derive(Debug, Clone)]
pub struct PowerFit {
    pub model: FitModel,
    pub coefficients: Vec<f64>,
    pub correlation: f64,
}

impl PowerFit {
    /// The fitted exponent, for the power-law families.
    pub fn exponent(&self) -> Option<f64> {
        match self.model {
            FitModel::Powb | FitModel::PowbLn => Some(self.coefficients[1]),
            FitModel::Quad => None,
        }
    }

    pub fn predict(&self, x: f64) -> f64 {
        match self.model {
            FitModel::Powb => self.coefficients[0] * x.powf(self.coefficients[1]),
            FitModel::PowbLn => self.coefficients[0] * x.powf(self.coefficients[1]) / x.ln(),
            FitModel::Quad => self.coefficients[0] * x * x + self.coefficients[1] * x,
        }
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / (sxx * syy).sqrt()
}

/// Slope and intercept of the least-squares line through `(xs, ys)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return (0.0, my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Fits one model to a series of `(x, y)` points. Requires at least
/// three points with positive `y`; the power families additionally need
/// `x > 1` so logarithms are defined and positive.
pub fn fit_series(xs: &[f64], ys: &[f64], model: FitModel) -> Result<PowerFit> {
    if xs.len() != ys.len() {
        return Err(BenchError::InvalidInput(
            "fit: mismatched series lengths".into(),
        ));
    }
    if xs.len() < 3 {
        return Err(BenchError::InvalidInput(format!(
            "fit: need at least 3 points, got {}",
            xs.len()
        )));
    }
    if ys.iter().any(|&y| y <= 0.0) || xs.iter().any(|&x| x <= 1.0) {
        return Err(BenchError::InvalidInput(
            "fit: requires x > 1 and y > 0".into(),
        ));
    }
    match model {
        FitModel::Powb | FitModel::PowbLn => {
            let lx: Vec<f64> = xs.iter().map(|&x| x.ln()).collect();
            let ly: Vec<f64> = xs
                .iter()
                .zip(ys)
                .map(|(&x, &y)| match model {
                    FitModel::Powb => y.ln(),
                    _ => (y * x.ln()).ln(),
                })
                .collect();
            let (slope, intercept) = linear_fit(&lx, &ly);
            Ok(PowerFit {
                model,
                coefficients: vec![intercept.exp(), slope],
                correlation: pearson(&lx, &ly),
            })
        }
        FitModel::Quad => {
            // Normal equations for y = A x^2 + B x.
            let (mut s4, mut s3, mut s2) = (0.0f64, 0.0, 0.0);
            let (mut s2y, mut s1y) = (0.0f64, 0.0);
            for (&x, &y) in xs.iter().zip(ys) {
                let x2 = x * x;
                s4 += x2 * x2;
                s3 += x2 * x;
                s2 += x2;
                s2y += x2 * y;
                s1y += x * y;
            }
            let det = s4 * s2 - s3 * s3;
            if det == 0.0 {
                return Err(BenchError::InvalidInput(
                    "fit: singular quadratic system".into(),
                ));
            }
            let a = (s2y * s2 - s3 * s1y) / det;
            let b = (s4 * s1y - s3 * s2y) / det;
            let fit = PowerFit {
                model,
                coefficients: vec![a, b],
                correlation: 0.0,
            };
            let fitted: Vec<f64> = xs.iter().map(|&x| fit.predict(x)).collect();
            let correlation = pearson(ys, &fitted);
            Ok(PowerFit {
                correlation,
                ..fit
            })
        }
    }
}

/// Fits the model per algorithm over `(n_max, seconds)` and returns the
/// fits for every algorithm with at least three rows. Errors if no
/// algorithm qualifies.
pub fn fit_records(
    records: &[BenchRecord],
    model: FitModel,
) -> Result<Vec<(AlgorithmId, PowerFit)>> {
    let mut fits = Vec::new();
    for algo in crate::ALL_ALGORITHMS {
        let mut points: Vec<(f64, f64)> = records
            .iter()
            .filter(|r| r.algorithm == algo)
            .map(|r| (r.n_max as f64, r.elapsed_ns as f64 * 1e-9))
            .collect();
        if points.len() < 3 {
            continue;
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
        fits.push((algo, fit_series(&xs, &ys, model)?));
    }
    if fits.is_empty() {
        return Err(BenchError::InvalidInput(
            "fit: no algorithm has at least 3 data points".into(),
        ));
    }
    Ok(fits)
}

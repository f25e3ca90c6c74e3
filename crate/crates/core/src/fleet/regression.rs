//! Ordinary least-squares fits relating cargo capacity to construction effort.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegressionModel {
    /// `y = slope * x + intercept`
    Linear,
    /// `y = scale * x^exponent`, fitted on `ln y` against `ln x`.
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit<T> {
    pub model: RegressionModel,
    /// Slope for linear fits, scale for power fits.
    pub coeff_slope_or_scale: T,
    /// Intercept for linear fits, exponent for power fits.
    pub coeff_intercept_or_exponent: T,
    /// Pearson correlation; computed in log-log space for power fits.
    pub correlation: T,
    pub n_points: usize,
}

impl<T: Scalar> RegressionFit<T> {
    pub fn predict(&self, x: T) -> T {
        match self.model {
            RegressionModel::Linear => {
                self.coeff_slope_or_scale * x + self.coeff_intercept_or_exponent
            }
            RegressionModel::Power => {
                self.coeff_slope_or_scale * x.powf(self.coeff_intercept_or_exponent)
            }
        }
    }

    /// Residuals `y - predict(x)` in the original coordinates.
    pub fn residuals(&self, points: &[(T, T)]) -> Vec<T> {
        points.iter().map(|&(x, y)| y - self.predict(x)).collect()
    }

    pub fn residual_summary(&self, points: &[(T, T)]) -> ResidualSummary<T> {
        let res = self.residuals(points);
        let n = T::from_usize(res.len().max(1)).expect("count fits scalar");
        let sq = res.iter().fold(T::zero(), |acc, &r| acc + r * r);
        let max_abs = res.iter().fold(T::zero(), |acc, &r| acc.max(r.abs()));
        let mean = res.iter().fold(T::zero(), |acc, &r| acc + r) / n;
        ResidualSummary {
            rmse: (sq / n).sqrt(),
            max_abs,
            mean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary<T> {
    pub rmse: T,
    pub max_abs: T,
    pub mean: T,
}

struct Moments<T> {
    slope: T,
    intercept: T,
    correlation: T,
}

fn least_squares<T: Scalar>(xs: &[T], ys: &[T]) -> Result<Moments<T>> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::Fit(format!("need at least 2 points, got {n}")));
    }
    let nf = T::from_usize(n).expect("count fits scalar");
    let mean_x = xs.iter().fold(T::zero(), |a, &x| a + x) / nf;
    let mean_y = ys.iter().fold(T::zero(), |a, &y| a + y) / nf;
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
        sxy = sxy + dx * dy;
    }
    let scale = xs
        .iter()
        .fold(T::zero(), |a, &x| a.max(x.abs()))
        .max(T::one());
    if !(sxx > T::epsilon() * scale * scale * nf) {
        return Err(Error::Fit(format!(
            "x values have no variance across {n} points"
        )));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    // Constant y: the fit is exact but correlation is undefined; report 0.
    let correlation = if syy > T::zero() {
        (sxy / (sxx.sqrt() * syy.sqrt()))
            .max(-T::one())
            .min(T::one())
    } else {
        T::zero()
    };
    Ok(Moments {
        slope,
        intercept,
        correlation,
    })
}

/// Ordinary least squares line through `(x, y)` points.
pub fn fit_linear<T: Scalar>(points: &[(T, T)]) -> Result<RegressionFit<T>> {
    let (xs, ys): (Vec<T>, Vec<T>) = points.iter().copied().unzip();
    let m = least_squares(&xs, &ys)?;
    Ok(RegressionFit {
        model: RegressionModel::Linear,
        coeff_slope_or_scale: m.slope,
        coeff_intercept_or_exponent: m.intercept,
        correlation: m.correlation,
        n_points: points.len(),
    })
}

/// Power-law fit via least squares on log-transformed coordinates.
pub fn fit_power<T: Scalar>(points: &[(T, T)]) -> Result<RegressionFit<T>> {
    if let Some((x, y)) = points
        .iter()
        .find(|(x, y)| !(*x > T::zero() && *y > T::zero()))
    {
        return Err(Error::Fit(format!(
            "power fit needs strictly positive coordinates, got ({x}, {y})"
        )));
    }
    let xs: Vec<T> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.1.ln()).collect();
    let m = least_squares(&xs, &ys)?;
    Ok(RegressionFit {
        model: RegressionModel::Power,
        coeff_slope_or_scale: m.intercept.exp(),
        coeff_intercept_or_exponent: m.slope,
        correlation: m.correlation,
        n_points: points.len(),
    })
}

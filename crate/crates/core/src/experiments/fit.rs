use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line through `(ln n, ln value)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute residual in log space.
    pub max_residual: f64,
    pub points: usize,
}

/// Fits `value ≈ e^intercept · n^slope` to `(n, value)` pairs.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if points.len() < 3 {
        return Err(Error::Input(format!(
            "an exponent fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, v)) = points.iter().find(|&&(n, v)| !(n > 0.0 && v > 0.0) || !n.is_finite() || !v.is_finite()) {
        return Err(Error::Domain(format!("cannot take logarithms of ({n}, {v})")));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let count = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= f64::EPSILON * count * (1.0 + mx * mx) {
        return Err(Error::Domain("all sizes are equal, the slope is undefined".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = logs
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);
    Ok(ExponentFit {
        slope,
        intercept,
        max_residual,
        points: logs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_power_law() {
        let pts: Vec<(f64, f64)> = (1..8).map(|k| {
            let n = 6f64.powi(k);
            (n, 3.5 * n.powf(0.4))
        })
        .collect();
        let f = fit_exponent(&pts).unwrap();
        assert!((f.slope - 0.4).abs() < 1e-12);
        assert!((f.intercept - 3.5f64.ln()).abs() < 1e-10);
        assert!(f.max_residual < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_exponent(&[(5.0, 1.0), (5.0, 2.0), (5.0, 3.0)]).is_err());
    }
}

use serde::Serialize;

use crate::{Error, Result};

/// Fewest size points a scaling fit accepts.
pub const MIN_FIT_POINTS: usize = 4;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    /// Natural-log intercept, so `y ~ exp(intercept) * x^exponent`.
    pub intercept: f64,
    /// Root mean square of the log residuals.
    pub residual: f64,
    pub points: usize,
}

impl PowerLawFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.exponent * x.ln()).exp()
    }
}

pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit> {
    if xs.len() != ys.len() {
        return Err(Error::invalid("fit needs as many x values as y values"));
    }
    if xs.len() < MIN_FIT_POINTS {
        return Err(Error::invalid(format!(
            "fit needs at least {MIN_FIT_POINTS} points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::invalid("fit needs positive finite values"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("fit needs at least two distinct sizes"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let sse: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - exponent * x).powi(2))
        .sum();
    Ok(PowerLawFit {
        exponent,
        intercept,
        residual: (sse / k).sqrt(),
        points: xs.len(),
    })
}

/// Nearest-rank percentile of `values` (need not be sorted), `q` in `[0, 1]`.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (q * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_power_law() {
        let xs = [256.0, 1024.0, 4096.0, 16384.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.sqrt()).collect();
        let fit = fit_power_law(&xs, &ys).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
        assert!((fit.predict(100.0) - 30.0).abs() < 1e-9);
    }

    #[test]
    fn needs_four_points() {
        assert!(fit_power_law(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0, 3.0, 4.0], &[1.0, 0.0, 3.0, 4.0]).is_err());
        assert!(fit_power_law(&[2.0; 4], &[1.0, 2.0, 3.0, 4.0]).is_err());
    }

    #[test]
    fn percentiles() {
        let v = [5.0, 1.0, 4.0, 2.0, 3.0];
        assert_eq!(percentile(&v, 0.5), 3.0);
        assert_eq!(percentile(&v, 0.95), 5.0);
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert!(percentile(&[], 0.5).is_nan());
    }

    proptest! {
        #[test]
        fn recovers_slope(a in 0.05f64..2.0, c in 0.1f64..50.0) {
            let xs = [10.0, 40.0, 160.0, 640.0, 2560.0];
            let ys: Vec<f64> = xs.iter().map(|x: &f64| c * x.powf(a)).collect();
            let fit = fit_power_law(&xs, &ys).unwrap();
            prop_assert!((fit.exponent - a).abs() < 1e-9);
        }
    }
}

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::interp::{eval_1d, Parity};
use serde::{Deserialize, Serialize};

/// Fitted exponential-algebraic tail U(r) ≈ e^c · e^{-rate·r} · r^{-power}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DecayFit {
    /// Exponential rate b̂.
    pub rate: f64,
    /// Algebraic power â, fixed to (N-1)/2 for ground-state tails.
    pub power: f64,
    /// ln-amplitude of the fit.
    pub amplitude: f64,
    /// Max |ln U - fit| over the window (fit quality).
    pub residual: f64,
    /// Radius window the fit used.
    pub window: (f64, f64),
}

/// A sampled radial function: values on every node of a `RadialGrid`
/// (including the Dirichlet node), with a precomputed radial derivative and
/// optional decay-fit metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialProfile {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
    pub deriv: Vec<f64>,
    pub decay: Option<DecayFit>,
}

impl RadialProfile {
    pub fn from_values(grid: RadialGrid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.n_nodes);
        let deriv = radial_derivative(&values, grid.h);
        Self { grid, values, deriv, decay: None }
    }

    /// Samples a function of r on the grid.
    pub fn from_fn(grid: RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = (0..grid.n_nodes).map(|i| f(grid.r(i))).collect();
        Self::from_values(grid, values)
    }

    /// Cubic evaluation at radius r (zero beyond the truncation radius).
    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        eval_1d(&self.values, self.grid.h, Parity::Even, r.abs())
    }

    /// Radial derivative U'(r), from the cubic interpolant of the precomputed
    /// derivative samples. U'(0) = 0 by evenness.
    #[inline]
    pub fn eval_deriv(&self, r: f64) -> f64 {
        eval_1d(&self.deriv, self.grid.h, Parity::Odd, r.abs())
    }

    /// Value at a point x in R^N (radial extension).
    #[inline]
    pub fn eval_point(&self, x: &[f64]) -> f64 {
        self.eval(norm(x))
    }

    /// ∂_{x1} of the radial extension at x: U'(|x|)·x1/|x|.
    #[inline]
    pub fn eval_d1(&self, x: &[f64]) -> f64 {
        let r = norm(x);
        if r == 0.0 {
            return 0.0;
        }
        self.eval_deriv(r) * x[0] / r
    }

    pub fn peak_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Resamples onto another grid by cubic interpolation.
    pub fn resample(&self, grid: RadialGrid) -> Self {
        let values: Vec<f64> = (0..grid.n_nodes).map(|i| self.eval(grid.r(i))).collect();
        Self::from_values(grid, values)
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Fourth-order central differences with even reflection at the origin; the
/// outermost two nodes fall back to second order.
pub fn radial_derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let v = |i: i64| -> f64 {
        if i < 0 {
            values[(-i) as usize] // even reflection
        } else if (i as usize) < n {
            values[i as usize]
        } else {
            0.0
        }
    };
    (0..n as i64)
        .map(|i| {
            if i == 0 {
                0.0
            } else if i >= n as i64 - 2 {
                (v(i + 1) - v(i - 1)) / (2.0 * h)
            } else {
                (v(i - 2) - 8.0 * v(i - 1) + 8.0 * v(i + 1) - v(i + 2)) / (12.0 * h)
            }
        })
        .collect()
}

/// Least-squares fit of ln U(r) ≈ amplitude − rate·r − power·ln r over the
/// given radius window, with the algebraic power held fixed at (N-1)/2.
pub fn fit_decay(profile: &RadialProfile, window: Option<(f64, f64)>) -> Result<DecayFit> {
    let grid = &profile.grid;
    let power = (grid.dim as f64 - 1.0) / 2.0;
    let in_window = |i: usize| -> bool {
        let (r, u) = (grid.r(i), profile.values[i]);
        match window {
            Some((lo, hi)) => r >= lo && r <= hi && u > 0.0,
            // resolved-but-not-roundoff region
            None => u >= 1e-8 && u <= 1e-2 && r > 0.0,
        }
    };
    let nodes: Vec<usize> = (1..grid.n_nodes).filter(|&i| in_window(i)).collect();
    if nodes.len() < 10 {
        return Err(Error::WindowTooSmall(nodes.len(), 10));
    }
    // y = ln U + power·ln r = amplitude − rate·r
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let m = nodes.len() as f64;
    for &i in &nodes {
        let r = grid.r(i);
        let y = profile.values[i].ln() + power * r.ln();
        sx += r;
        sy += y;
        sxx += r * r;
        sxy += r * y;
    }
    let rate = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    let amplitude = (sy + rate * sx) / m;
    let mut residual = 0.0f64;
    for &i in &nodes {
        let r = grid.r(i);
        let y = profile.values[i].ln() + power * r.ln();
        residual = residual.max((y - (amplitude - rate * r)).abs());
    }
    let window = (
        grid.r(*nodes.first().unwrap()),
        grid.r(*nodes.last().unwrap()),
    );
    Ok(DecayFit { rate, power, amplitude, residual, window })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sech_profile(h: f64, r_max: f64) -> RadialProfile {
        let grid = RadialGrid::new(r_max, h, 1).unwrap();
        RadialProfile::from_fn(grid, |r| 2.0f64.sqrt() / r.cosh())
    }

    #[test]
    fn eval_and_derivative_match_sech() {
        let p = sech_profile(0.01, 20.0);
        for &r in &[0.0f64, 0.123, 1.77, 5.5] {
            let exact = 2.0f64.sqrt() / r.cosh();
            let dexact = -2.0f64.sqrt() * r.tanh() / r.cosh();
            assert!((p.eval(r) - exact).abs() < 1e-8, "r={r}");
            assert!((p.eval_deriv(r) - dexact).abs() < 1e-7, "r={r}");
        }
        assert_eq!(p.eval_deriv(0.0), 0.0);
    }

    #[test]
    fn eval_beyond_truncation_is_zero() {
        let p = sech_profile(0.05, 10.0);
        assert_eq!(p.eval(11.0), 0.0);
        assert_eq!(p.eval_d1(&[12.0, 0.0]), 0.0);
    }

    #[test]
    fn decay_fit_recovers_sech_rate() {
        let p = sech_profile(0.01, 25.0);
        let fit = fit_decay(&p, None).unwrap();
        assert!((fit.rate - 1.0).abs() < 0.01, "rate={}", fit.rate);
        assert_eq!(fit.power, 0.0);
    }

    #[test]
    fn decay_fit_rejects_tiny_window() {
        let p = sech_profile(0.5, 10.0);
        // explicit window with almost no nodes
        assert!(matches!(
            fit_decay(&p, Some((9.0, 9.6))),
            Err(Error::WindowTooSmall(_, _))
        ));
    }

    #[test]
    fn d1_is_odd_in_x1() {
        let p = sech_profile(0.01, 20.0);
        let a = p.eval_d1(&[1.3, 0.7]);
        let b = p.eval_d1(&[-1.3, 0.7]);
        assert!((a + b).abs() < 1e-14);
    }
}

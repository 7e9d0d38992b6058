use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Interaction integral Θ_{s,t}(ζ) = ∫ U^s(x + ζ e₁) ∂_{x₁} U^t(x) dx between
/// powers of translated copies of a radial profile.
#[derive(Debug, Clone)]
pub struct OverlapQuery<'a> {
    pub s: f64,
    pub t: f64,
    /// Signed shift along x₁.
    pub zeta: f64,
    pub profile: &'a RadialProfile,
}

fn tail_rate_estimate(profile: &RadialProfile) -> f64 {
    if let Some(fit) = profile.decay {
        return fit.rate;
    }
    // crude two-point tail slope in the resolved region
    let g = &profile.grid;
    let pick = |level: f64| {
        (1..g.n_nodes)
            .rev()
            .find(|&i| profile.values[i] > level)
            .unwrap_or(g.n_nodes / 2)
    };
    let (i1, i2) = (pick(1e-6), pick(1e-3));
    if i1 <= i2 {
        return 1.0;
    }
    (profile.values[i2] / profile.values[i1]).ln() / (g.r(i1) - g.r(i2))
}

fn check_window(profile: &RadialProfile, zeta: f64) -> Result<f64> {
    let rate = tail_rate_estimate(profile).abs().max(1e-6);
    let r_max = profile.grid.r_max;
    if zeta.abs() + 3.0 / rate > 2.0 * r_max {
        return Err(Error::UnderResolved(format!(
            "shift {zeta} needs the profile resolved past |x| = {:.2} (r_max = {r_max})",
            (zeta.abs() + 3.0 / rate) / 2.0
        )));
    }
    Ok(rate)
}

/// Quadrature step: two profile cells, capped near 0.02 per decay length.
fn quad_step(profile: &RadialProfile, rate: f64) -> f64 {
    (2.0 * profile.grid.h).min(0.02 / rate.min(1.0))
}

/// Direct quadrature of Θ_{s,t}(ζ) with ∂_{x₁}U^t = t U^{t-1} U'(r) x₁/r by
/// the chain rule. The shift is taken along x₁; the transverse directions are
/// integrated with the plane (N=2) or cylindrical (N=3) weight.
pub fn theta_integral(q: &OverlapQuery) -> Result<f64> {
    if q.s < 1.0 || q.t < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "powers (s, t) = ({}, {}) must be >= 1",
            q.s, q.t
        )));
    }
    let rate = check_window(q.profile, q.zeta)?;
    let u = q.profile;
    let integrand = |x1: f64, tr: f64| -> f64 {
        let r = (x1 * x1 + tr * tr).sqrt();
        let uv = u.eval(r);
        if uv <= 0.0 {
            return 0.0;
        }
        let d1 = if r == 0.0 { 0.0 } else { u.eval_deriv(r) * x1 / r };
        let shifted = u.eval(((x1 + q.zeta) * (x1 + q.zeta) + tr * tr).sqrt());
        if shifted <= 0.0 {
            return 0.0;
        }
        shifted.powf(q.s) * q.t * uv.powf(q.t - 1.0) * d1
    };
    Ok(integrate_shifted(u, rate, integrand))
}

/// ∫ u(x − ζ e₁) v(x) dx for two positive radial profiles.
pub fn overlap_uv(u: &RadialProfile, v: &RadialProfile, zeta: f64) -> Result<f64> {
    check_window(u, zeta)?;
    let rate = check_window(v, zeta)?;
    let integrand = |x1: f64, tr: f64| -> f64 {
        let rv = (x1 * x1 + tr * tr).sqrt();
        let ru = ((x1 - zeta) * (x1 - zeta) + tr * tr).sqrt();
        u.eval(ru) * v.eval(rv)
    };
    Ok(integrate_shifted(v, rate, integrand))
}

/// Tensor trapezoid over x₁ ∈ [-R, R] (symmetric nodes, so odd integrands
/// cancel exactly) and the transverse half-range with the dimension weight.
fn integrate_shifted(
    profile: &RadialProfile,
    rate: f64,
    integrand: impl Fn(f64, f64) -> f64,
) -> f64 {
    let r_max = profile.grid.r_max;
    let h = quad_step(profile, rate);
    let n1 = (r_max / h).ceil() as i64;
    let hx = r_max / n1 as f64;
    let dim = profile.grid.dim;
    let mut total = 0.0;
    match dim {
        1 => {
            for i in -n1..=n1 {
                let w = if i == -n1 || i == n1 { 0.5 } else { 1.0 };
                total += w * integrand(i as f64 * hx, 0.0);
            }
            total * hx
        }
        2 | 3 => {
            let n2 = n1;
            for j in 0..=n2 {
                let tr = j as f64 * hx;
                let wj = if j == 0 || j == n2 { 0.5 } else { 1.0 };
                let ring = if dim == 2 { 2.0 } else { 2.0 * PI * tr };
                if ring == 0.0 {
                    continue;
                }
                let mut row = 0.0;
                for i in -n1..=n1 {
                    let wi = if i == -n1 || i == n1 { 0.5 } else { 1.0 };
                    row += wi * integrand(i as f64 * hx, tr);
                }
                total += wj * ring * row;
            }
            total * hx * hx
        }
        _ => unreachable!(),
    }
}

/// The four asymptotic forms of the overlap ∫ u_ζ v for tails
/// u ~ |x|^a e^{-b|x|}, v ~ |x|^{a'} e^{-b'|x|}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeCase {
    /// b ≠ b': the slower tail wins, |ζ|^a e^{-b|ζ|} with (a, b) of that tail.
    RateGap,
    /// b = b', a' > -(N+1)/2: power a + a' + (N+1)/2.
    PowerSum,
    /// b = b', a' = -(N+1)/2: power a with a log|ζ| correction.
    LogCorrected,
    /// b = b', a' < -(N+1)/2: power a, no log.
    PowerOnly,
}

/// Predicted asymptotics e^{-rate·|ζ|}·|ζ|^{power}·(log|ζ|)^{log_flag}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegimePrediction {
    pub case: RegimeCase,
    pub rate: f64,
    pub power: f64,
    pub log_factor: bool,
}

/// Classification per the overlap lemma; (a, b) and (a', b') may be swapped
/// to satisfy its normalization (b <= b', then a >= a' when b = b').
pub fn classify_regime(u_tail: (f64, f64), v_tail: (f64, f64), dim: usize) -> RegimePrediction {
    let ((a, b), (ap, bp)) = (u_tail, v_tail);
    let crit = -(dim as f64 + 1.0) / 2.0;
    let eq = (b - bp).abs() <= 1e-12 * b.abs().max(bp.abs());
    if !eq {
        let (aw, bw) = if b < bp { (a, b) } else { (ap, bp) };
        return RegimePrediction { case: RegimeCase::RateGap, rate: bw, power: aw, log_factor: false };
    }
    // normalize a >= a'
    let (a, ap) = if a >= ap { (a, ap) } else { (ap, a) };
    if (ap - crit).abs() <= 1e-12 * crit.abs() {
        RegimePrediction { case: RegimeCase::LogCorrected, rate: b, power: a, log_factor: true }
    } else if ap > crit {
        RegimePrediction {
            case: RegimeCase::PowerSum,
            rate: b,
            power: a + ap + (dim as f64 + 1.0) / 2.0,
            log_factor: false,
        }
    } else {
        RegimePrediction { case: RegimeCase::PowerOnly, rate: b, power: a, log_factor: false }
    }
}

/// Printed asymptotic form of Θ_{s,t} for a ground-state profile with decay
/// rate √λ and algebraic power (N-1)/2: rate multiplier min(s,t)·√λ and the
/// case split of the decay lemma (s = t splits on s vs (N+1)/(N-1)).
pub fn theta_regime(s: f64, t: f64, dim: usize, sqrt_lambda: f64) -> RegimePrediction {
    let n = dim as f64;
    let smin = s.min(t);
    if (s - t).abs() > 1e-12 {
        return RegimePrediction {
            case: RegimeCase::RateGap,
            rate: smin * sqrt_lambda,
            power: -smin * (n - 1.0) / 2.0,
            log_factor: false,
        };
    }
    if dim == 1 {
        // the lemma's N=1 note: the first option applies
        return RegimePrediction {
            case: RegimeCase::PowerSum,
            rate: s * sqrt_lambda,
            power: 1.0,
            log_factor: false,
        };
    }
    let critical = (n + 1.0) / (n - 1.0);
    if (s - critical).abs() <= 1e-12 {
        RegimePrediction {
            case: RegimeCase::LogCorrected,
            rate: s * sqrt_lambda,
            power: -s * (n - 1.0) / 2.0,
            log_factor: true,
        }
    } else if s < critical {
        RegimePrediction {
            case: RegimeCase::PowerSum,
            rate: s * sqrt_lambda,
            power: -s * (n - 1.0) + (n + 1.0) / 2.0,
            log_factor: false,
        }
    } else {
        RegimePrediction {
            case: RegimeCase::PowerOnly,
            rate: s * sqrt_lambda,
            power: -s * (n - 1.0) / 2.0,
            log_factor: false,
        }
    }
}

/// Result of a rate fit against ln|v| = amplitude − rate·ζ − power·ln ζ
/// [− log-log term] with the algebraic structure divided out.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RateFit {
    pub rate: f64,
    pub amplitude: f64,
    pub max_residual: f64,
}

/// Least-squares (amplitude, rate) with fixed algebraic power and optional
/// log|ζ| factor divided out first.
pub fn fit_rate(zetas: &[f64], values: &[f64], power: f64, log_factor: bool) -> Result<RateFit> {
    if zetas.len() < 3 || zetas.len() != values.len() {
        return Err(Error::WindowTooSmall(zetas.len(), 3));
    }
    let ys: Vec<f64> = zetas
        .iter()
        .zip(values)
        .map(|(z, v)| {
            let mut y = v.abs().ln() + power * z.ln();
            if log_factor {
                y -= z.ln().ln();
            }
            y
        })
        .collect();
    let m = zetas.len() as f64;
    let sx: f64 = zetas.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = zetas.iter().map(|z| z * z).sum();
    let sxy: f64 = zetas.iter().zip(&ys).map(|(z, y)| z * y).sum();
    let rate = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    let amplitude = (sy + rate * sx) / m;
    let max_residual = zetas
        .iter()
        .zip(&ys)
        .map(|(z, y)| (y - (amplitude - rate * z)).abs())
        .fold(0.0, f64::max);
    Ok(RateFit { rate, amplitude, max_residual })
}

/// Per-ζ prefactor |v| / (e^{-rate ζ} ζ^{-power-ish} model); its drift over
/// the window measures how far into the asymptotic regime the data sits.
pub fn prefactors(
    zetas: &[f64],
    values: &[f64],
    rate: f64,
    power: f64,
    log_factor: bool,
) -> Vec<f64> {
    zetas
        .iter()
        .zip(values)
        .map(|(z, v)| {
            let mut model = (-rate * z).exp() * z.powf(-power);
            if log_factor {
                model *= z.ln();
            }
            v.abs() / model
        })
        .collect()
}

/// Nested model comparison for the log|ζ| correction: fits (amplitude, rate)
/// with and without the log factor and reports true when the log-corrected
/// model has the smaller residual sum of squares.
pub fn prefers_log_model(zetas: &[f64], values: &[f64], power: f64) -> Result<bool> {
    let rss = |log_factor: bool| -> Result<f64> {
        let fit = fit_rate(zetas, values, power, log_factor)?;
        Ok(zetas
            .iter()
            .zip(values)
            .map(|(z, v)| {
                let mut y = v.abs().ln() + power * z.ln();
                if log_factor {
                    y -= z.ln().ln();
                }
                let e = y - (fit.amplitude - fit.rate * z);
                e * e
            })
            .sum())
    };
    Ok(rss(true)? < rss(false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;

    fn sech_profile() -> RadialProfile {
        let grid = RadialGrid::new(30.0, 0.01, 1).unwrap();
        RadialProfile::from_fn(grid, |r| 2.0f64.sqrt() / r.cosh())
    }

    #[test]
    fn theta_vanishes_at_zero_shift() {
        let p = sech_profile();
        let v = theta_integral(&OverlapQuery { s: 2.0, t: 2.0, zeta: 0.0, profile: &p }).unwrap();
        assert!(v.abs() < 1e-12, "got {v}");
    }

    #[test]
    fn theta_is_odd_in_zeta() {
        let p = sech_profile();
        let plus = theta_integral(&OverlapQuery { s: 1.0, t: 3.0, zeta: 4.0, profile: &p }).unwrap();
        let minus =
            theta_integral(&OverlapQuery { s: 1.0, t: 3.0, zeta: -4.0, profile: &p }).unwrap();
        assert!((plus + minus).abs() <= 1e-12 * plus.abs(), "{plus} vs {minus}");
    }

    #[test]
    fn sech_overlap_matches_closed_form() {
        // ∫ U(x-ζ) U(x) dx = 4ζ/sinh(ζ) for U = √2 sech
        let p = sech_profile();
        for &z in &[2.0f64, 5.0, 8.0, 10.0] {
            let v = overlap_uv(&p, &p, z).unwrap();
            let exact = 4.0 * z / z.sinh();
            assert!(
                (v - exact).abs() <= 5e-3 * exact,
                "zeta={z}: {v} vs {exact}"
            );
        }
        let v5 = overlap_uv(&p, &p, 5.0).unwrap();
        assert!((v5 - 0.26953).abs() < 3e-4, "{v5}");
    }

    #[test]
    fn theta_13_rate_matches_sqrt_lambda() {
        let p = sech_profile();
        let zetas: Vec<f64> = (0..7).map(|k| 6.0 + k as f64).collect();
        let vals: Vec<f64> = zetas
            .iter()
            .map(|&z| {
                theta_integral(&OverlapQuery { s: 1.0, t: 3.0, zeta: z, profile: &p }).unwrap()
            })
            .collect();
        let reg = theta_regime(1.0, 3.0, 1, 1.0);
        let fit = fit_rate(&zetas, &vals, reg.power, reg.log_factor).unwrap();
        assert!((fit.rate - 1.0).abs() < 0.02, "rate {}", fit.rate);
    }

    #[test]
    fn rate_gap_overlap_decays_at_slower_rate() {
        let grid = RadialGrid::new(40.0, 0.01, 1).unwrap();
        let u = RadialProfile::from_fn(grid.clone(), |r| (-r).exp());
        let v = RadialProfile::from_fn(grid, |r| (-2.0 * r).exp());
        let zetas: Vec<f64> = (0..6).map(|k| 8.0 + 2.0 * k as f64).collect();
        let vals: Vec<f64> =
            zetas.iter().map(|&z| overlap_uv(&u, &v, z).unwrap()).collect();
        let reg = classify_regime((0.0, 1.0), (0.0, 2.0), 1);
        assert_eq!(reg.case, RegimeCase::RateGap);
        assert_eq!(reg.rate, 1.0);
        let fit = fit_rate(&zetas, &vals, reg.power, reg.log_factor).unwrap();
        assert!((fit.rate - 1.0).abs() < 0.02, "rate {}", fit.rate);
    }

    #[test]
    fn classify_regime_cases() {
        // equal rates, a' > -(N+1)/2: power sum (sech in N=1: a=a'=0 -> power 1)
        let r = classify_regime((0.0, 1.0), (0.0, 1.0), 1);
        assert_eq!(r.case, RegimeCase::PowerSum);
        assert_eq!(r.power, 1.0);
        assert!(!r.log_factor);
        // log-corrected middle case
        let r = classify_regime((0.0, 1.0), (-2.0, 1.0), 3);
        assert_eq!(r.case, RegimeCase::LogCorrected);
        assert!(r.log_factor);
        assert_eq!(r.power, 0.0);
        // a' below critical: plain power a
        let r = classify_regime((0.5, 1.0), (-3.0, 1.0), 3);
        assert_eq!(r.case, RegimeCase::PowerOnly);
        assert_eq!(r.power, 0.5);
        // normalization swap when a < a' at b = b'
        let r = classify_regime((-3.0, 1.0), (0.5, 1.0), 3);
        assert_eq!(r.power, 0.5);
    }

    #[test]
    fn theta_regime_matches_printed_exponents() {
        // s<t
        let r = theta_regime(1.0, 3.0, 2, 2.0);
        assert_eq!(r.rate, 2.0);
        assert_eq!(r.power, -0.5);
        // N=2, s=t=2 < 3: first branch, -s(N-1)+(N+1)/2 = -1/2
        let r = theta_regime(2.0, 2.0, 2, 1.0);
        assert_eq!(r.case, RegimeCase::PowerSum);
        assert_eq!(r.power, -0.5);
        // N=3, s=t=2 = (N+1)/(N-1): log-corrected, power -2
        let r = theta_regime(2.0, 2.0, 3, 1.0);
        assert!(r.log_factor);
        assert_eq!(r.power, -2.0);
        // N=1, s=t: power 1
        let r = theta_regime(2.0, 2.0, 1, 1.0);
        assert_eq!(r.power, 1.0);
    }

    #[test]
    fn nested_log_comparison_detects_synthetic_log() {
        let zetas: Vec<f64> = (0..8).map(|k| 5.0 + k as f64).collect();
        let with_log: Vec<f64> =
            zetas.iter().map(|z| (-2.0 * z).exp() * z.powf(-2.0) * z.ln()).collect();
        let without: Vec<f64> =
            zetas.iter().map(|z| (-2.0 * z).exp() * z.powf(-2.0)).collect();
        assert!(prefers_log_model(&zetas, &with_log, 2.0).unwrap());
        assert!(!prefers_log_model(&zetas, &without, 2.0).unwrap());
    }

    #[test]
    fn under_resolved_window_rejected() {
        let grid = RadialGrid::new(6.0, 0.01, 1).unwrap();
        let p = RadialProfile::from_fn(grid, |r| (-r).exp());
        assert!(matches!(
            overlap_uv(&p, &p, 11.0),
            Err(Error::UnderResolved(_))
        ));
    }

    #[test]
    fn rejects_powers_below_one() {
        let p = sech_profile();
        assert!(theta_integral(&OverlapQuery { s: 0.5, t: 1.0, zeta: 1.0, profile: &p }).is_err());
    }
}

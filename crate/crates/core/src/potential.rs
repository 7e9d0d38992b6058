use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Potential families supported by the lab. `Constant` and `PowerTrap` are
/// radial; `QuadraticForm` is even in each variable; `TabulatedRadial` is a
/// linearly interpolated radial table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialSpec {
    Constant { lambda: f64 },
    PowerTrap { lambda: f64, c: f64, m: f64 },
    QuadraticForm { w0: f64, coeffs: Vec<f64> },
    TabulatedRadial { rs: Vec<f64>, vs: Vec<f64> },
}

impl PotentialSpec {
    pub fn constant(lambda: f64) -> Self {
        PotentialSpec::Constant { lambda }
    }

    /// Validates positivity of the infimum over a ball of radius `r_max`
    /// (realizing inf V > 0 on the computational domain) and structural
    /// constraints of each family.
    pub fn validate(&self, r_max: f64, dim: usize) -> Result<()> {
        let inf = self.inf_on_ball(r_max, dim);
        if !(inf > 0.0) {
            return Err(Error::InvalidPotential(format!(
                "inf over the grid is {inf}, must be positive"
            )));
        }
        match self {
            PotentialSpec::PowerTrap { c, m, .. } => {
                if *c < 0.0 || *m <= 0.0 {
                    return Err(Error::InvalidPotential(
                        "power trap requires c >= 0 and m > 0".into(),
                    ));
                }
            }
            PotentialSpec::QuadraticForm { coeffs, .. } => {
                if coeffs.len() != dim {
                    return Err(Error::InvalidPotential(format!(
                        "quadratic form has {} coefficients for dimension {dim}",
                        coeffs.len()
                    )));
                }
            }
            PotentialSpec::TabulatedRadial { rs, vs } => {
                if rs.len() != vs.len() || rs.len() < 2 {
                    return Err(Error::InvalidPotential("table needs >= 2 rows".into()));
                }
                if rs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidPotential("table radii must increase".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn inf_on_ball(&self, r_max: f64, dim: usize) -> f64 {
        match self {
            PotentialSpec::Constant { lambda } => *lambda,
            PotentialSpec::PowerTrap { lambda, c, m } => {
                let at_edge = lambda + c * r_max.powf(*m);
                lambda.min(at_edge)
            }
            PotentialSpec::QuadraticForm { w0, coeffs } => {
                // min over |x_i| <= r_max of w0 + sum a_i x_i²
                let mut v = *w0;
                for a in coeffs.iter().take(dim) {
                    if *a < 0.0 {
                        v += a * r_max * r_max;
                    }
                }
                v
            }
            PotentialSpec::TabulatedRadial { vs, .. } => {
                vs.iter().cloned().fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// True when the potential is a function of |x| alone.
    pub fn is_radial(&self) -> bool {
        match self {
            PotentialSpec::Constant { .. }
            | PotentialSpec::PowerTrap { .. }
            | PotentialSpec::TabulatedRadial { .. } => true,
            PotentialSpec::QuadraticForm { coeffs, .. } => {
                coeffs.windows(2).all(|w| w[0] == w[1])
            }
        }
    }

    /// Evaluation at radius r (radial families only; panics on a non-radial
    /// quadratic form, which callers must route through `eval_point`).
    pub fn eval_radial(&self, r: f64) -> f64 {
        match self {
            PotentialSpec::Constant { lambda } => *lambda,
            PotentialSpec::PowerTrap { lambda, c, m } => lambda + c * r.abs().powf(*m),
            PotentialSpec::QuadraticForm { w0, coeffs } => {
                assert!(self.is_radial(), "quadratic form is not radial");
                w0 + coeffs.first().copied().unwrap_or(0.0) * r * r
            }
            PotentialSpec::TabulatedRadial { rs, vs } => {
                let r = r.abs();
                if r <= rs[0] {
                    return vs[0];
                }
                if r >= *rs.last().unwrap() {
                    return *vs.last().unwrap();
                }
                let k = rs.partition_point(|&x| x < r).max(1);
                let t = (r - rs[k - 1]) / (rs[k] - rs[k - 1]);
                vs[k - 1] * (1.0 - t) + vs[k] * t
            }
        }
    }

    /// Evaluation at a point x (len = ambient dimension).
    pub fn eval_point(&self, x: &[f64]) -> f64 {
        match self {
            PotentialSpec::QuadraticForm { w0, coeffs } => {
                w0 + coeffs.iter().zip(x).map(|(a, xi)| a * xi * xi).sum::<f64>()
            }
            _ => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                self.eval_radial(r)
            }
        }
    }

    /// Evaluation on the symmetry-reduced plane: (x1, t) is (x1, x2) on the
    /// quarter plane and (x1, r') on the half cylinder, where r'² carries the
    /// remaining coordinates. For a quadratic form on the cylinder the
    /// transverse coefficients must agree (axisymmetry), which `validate`
    /// plus `is_axisymmetric` guard.
    pub fn eval_plane(&self, x1: f64, t: f64, _dim: usize) -> f64 {
        match self {
            PotentialSpec::QuadraticForm { w0, coeffs } => {
                w0 + coeffs[0] * x1 * x1 + coeffs[1] * t * t
            }
            _ => self.eval_radial((x1 * x1 + t * t).sqrt()),
        }
    }

    /// Axisymmetry about the x1-axis (required on the half cylinder).
    pub fn is_axisymmetric(&self, dim: usize) -> bool {
        match self {
            PotentialSpec::QuadraticForm { coeffs, .. } => {
                dim < 3 || coeffs[1..].windows(2).all(|w| w[0] == w[1])
            }
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_trap_eval() {
        let v = PotentialSpec::constant(2.5);
        assert_eq!(v.eval_radial(3.0), 2.5);
        let t = PotentialSpec::PowerTrap { lambda: 1.0, c: 1.0, m: 2.0 };
        assert_eq!(t.eval_radial(2.0), 5.0);
        assert_eq!(t.eval_point(&[0.0, 2.0]), 5.0);
    }

    #[test]
    fn validate_rejects_nonpositive_inf() {
        let v = PotentialSpec::constant(0.0);
        assert!(v.validate(10.0, 2).is_err());
        let q = PotentialSpec::QuadraticForm { w0: 1.0, coeffs: vec![-1.0, 0.0] };
        assert!(q.validate(2.0, 2).is_err()); // 1 - 4 < 0 at the corner
    }

    #[test]
    fn tabulated_interpolates_linearly() {
        let t = PotentialSpec::TabulatedRadial {
            rs: vec![0.0, 1.0, 2.0],
            vs: vec![1.0, 3.0, 3.0],
        };
        t.validate(2.0, 3).unwrap();
        assert_eq!(t.eval_radial(0.5), 2.0);
        assert_eq!(t.eval_radial(5.0), 3.0);
    }
}

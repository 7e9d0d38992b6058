use crate::grid::{Reduction, SymmetricGrid};
use crate::interp::{axis_stencil, eval_1d, Parity};
use crate::quad::{integrate_symmetric, symmetric_weights};
use serde::{Deserialize, Serialize};

/// A grid function on the symmetry-reduced domain. Values live on the
/// unknown nodes (outer Dirichlet edges implicit zero); the implied full-
/// domain field extends by reflection: even in the transverse variable(s),
/// even or odd in x1 according to `parity_x1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricField {
    pub grid: SymmetricGrid,
    pub values: Vec<f64>,
    pub parity_x1: Parity,
}

impl SymmetricField {
    pub fn zeros(grid: &SymmetricGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.n_unknowns()],
            parity_x1: Parity::Even,
        }
    }

    pub fn from_fn(grid: &SymmetricGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = vec![0.0; grid.n_unknowns()];
        for i in 0..grid.n1 {
            for j in 0..grid.n2 {
                values[grid.idx(i, j)] = f(grid.x1(i), grid.x2(j));
            }
        }
        Self { grid: grid.clone(), values, parity_x1: Parity::Even }
    }

    pub fn odd_from_fn(grid: &SymmetricGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = Self::from_fn(grid, f);
        out.parity_x1 = Parity::Odd;
        // odd fields vanish on the x1 = 0 axis
        for j in 0..grid.n2 {
            out.values[grid.idx(0, j)] = 0.0;
        }
        out
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    /// Bicubic evaluation at an arbitrary point of the full domain (signed
    /// x1, transverse coordinate t >= 0 or reflected), zero beyond the box.
    pub fn eval(&self, x1: f64, t: f64) -> f64 {
        let g = &self.grid;
        let (sx, m) = axis_stencil(x1, g.h, g.n1, self.parity_x1);
        let mut acc = 0.0;
        for &(i, wi) in &sx[..m] {
            let col = &self.values[i * g.n2..(i + 1) * g.n2];
            acc += wi * eval_1d(col, g.h, Parity::Even, t);
        }
        acc
    }

    /// L² norm over R^N with the symmetry/volume quadrature weights.
    pub fn l2_norm(&self) -> f64 {
        let w = symmetric_weights(&self.grid);
        self.values
            .iter()
            .zip(&w)
            .map(|(v, w)| v * v * w)
            .sum::<f64>()
            .sqrt()
    }

    pub fn integral(&self) -> f64 {
        integrate_symmetric(&self.values, &self.grid)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Max |f(x) - parity·f(reflected x)| sampled off-grid; by construction
    /// this is zero up to interpolation roundoff, and tests pin it ≤ 1e-13.
    pub fn reflection_defect(&self) -> f64 {
        let g = &self.grid;
        let sign = if self.parity_x1 == Parity::Odd { -1.0 } else { 1.0 };
        let mut worst = 0.0f64;
        let samples = 17;
        for k in 0..samples {
            let x1 = (k as f64 + 0.37) / samples as f64 * (g.l1 * 0.8);
            let t = (k as f64 + 0.61) / samples as f64 * (g.l2 * 0.8);
            let a = self.eval(x1, t);
            let b = self.eval(-x1, t);
            worst = worst.max((a - sign * b).abs());
        }
        worst
    }
}

/// Matrix-free application of the symmetric-grid Laplacian honoring the x1
/// parity of the field (odd fields reflect with a sign at x1 = 0). Used for
/// residual checks of odd-parity fields, which the banded operators (built
/// for the even class) cannot represent.
pub fn laplacian_apply_parity(field: &SymmetricField) -> Vec<f64> {
    let g = &field.grid;
    let (n1, n2, h) = (g.n1, g.n2, g.h);
    let h2 = h * h;
    let v = &field.values;
    let sgn = if field.parity_x1 == Parity::Odd { -1.0 } else { 1.0 };
    let mut out = vec![0.0; v.len()];
    for i in 0..n1 {
        for j in 0..n2 {
            let c = v[g.idx(i, j)];
            let xm = if i == 0 { sgn * v[g.idx(1, j)] } else { v[g.idx(i - 1, j)] };
            let xp = if i + 1 < n1 { v[g.idx(i + 1, j)] } else { 0.0 };
            let mut acc = (xp - 2.0 * c + xm) / h2;
            match g.reduction {
                Reduction::QuarterPlane => {
                    let ym = if j == 0 { v[g.idx(i, 1)] } else { v[g.idx(i, j - 1)] };
                    let yp = if j + 1 < n2 { v[g.idx(i, j + 1)] } else { 0.0 };
                    acc += (yp - 2.0 * c + ym) / h2;
                }
                Reduction::HalfCylinder => {
                    if j == 0 {
                        acc += 4.0 * (v[g.idx(i, 1)] - c) / h2;
                    } else {
                        let ym = v[g.idx(i, j - 1)];
                        let yp = if j + 1 < n2 { v[g.idx(i, j + 1)] } else { 0.0 };
                        let drift = 1.0 / (2.0 * g.x2(j) * h);
                        acc += (yp - 2.0 * c + ym) / h2 + drift * (yp - ym);
                    }
                }
            }
            out[g.idx(i, j)] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SymmetricGrid;

    #[test]
    fn even_field_reflection_is_exact() {
        let g = SymmetricGrid::for_dim(3.0, 3.0, 0.1, 2).unwrap();
        let f = SymmetricField::from_fn(&g, |x, y| (-(x * x + 0.3 * y * y)).exp());
        assert!(f.reflection_defect() <= 1e-13);
    }

    #[test]
    fn odd_field_reflection_is_exact() {
        let g = SymmetricGrid::for_dim(3.0, 3.0, 0.1, 2).unwrap();
        let f = SymmetricField::odd_from_fn(&g, |x, y| x * (-(x * x + y * y)).exp());
        assert!(f.reflection_defect() <= 1e-13);
        assert_eq!(f.at(0, 5), 0.0);
    }

    #[test]
    fn bicubic_matches_smooth_function() {
        let g = SymmetricGrid::for_dim(4.0, 4.0, 0.05, 2).unwrap();
        let fun = |x: f64, y: f64| (-(x * x + y * y) / 2.0).exp() * (1.0 + x * x * 0.1);
        let f = SymmetricField::from_fn(&g, fun);
        for &(x, y) in &[(0.31, 0.77), (1.501, 0.013), (-2.2, 1.1)] {
            assert!((f.eval(x, y) - fun(x.abs(), y)).abs() < 2e-6, "({x},{y})");
        }
    }

    #[test]
    fn odd_laplacian_apply_matches_analytic() {
        let g = SymmetricGrid::for_dim(6.0, 6.0, 0.02, 2).unwrap();
        let f = SymmetricField::odd_from_fn(&g, |x, y| x * (-(x * x + y * y)).exp());
        let lap = laplacian_apply_parity(&f);
        // Δ [x e^{-r²}] = (4 r² - 8) x e^{-r²}  (2D)
        let mut worst = 0.0f64;
        for i in 0..g.n1 - 2 {
            for j in 0..g.n2 - 2 {
                let (x, y) = (g.x1(i), g.x2(j));
                let r2 = x * x + y * y;
                let exact = (4.0 * r2 - 8.0) * x * (-r2).exp();
                worst = worst.max((lap[g.idx(i, j)] - exact).abs());
            }
        }
        assert!(worst < 5e-3, "worst={worst}");
    }
}

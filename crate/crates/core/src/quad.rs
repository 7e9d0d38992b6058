use crate::grid::{RadialGrid, Reduction, SymmetricGrid};
use std::f64::consts::PI;

/// Surface measure of the unit sphere S^{N-1}: 2, 2π, 4π.
pub fn sphere_surface(dim: usize) -> f64 {
    match dim {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => unreachable!("dimension validated at grid construction"),
    }
}

/// Quadrature weights over the radial grid realizing ∫_{R^N} f(|x|) dx by the
/// trapezoidal rule with the r^{N-1} volume weight. One weight per node
/// (including the Dirichlet node, whose field value is zero anyway).
pub fn radial_weights(grid: &RadialGrid) -> Vec<f64> {
    let s = sphere_surface(grid.dim);
    let n = grid.n_nodes;
    (0..n)
        .map(|i| {
            let trap = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            let r = grid.r(i);
            s * trap * grid.h * r.powi(grid.dim as i32 - 1)
        })
        .collect()
}

/// ∫_{R^N} f dx for a radial field sampled on grid nodes (length
/// `grid.n_nodes` or `grid.n_unknowns()`, the Dirichlet tail treated as zero).
pub fn integrate_radial(field: &[f64], grid: &RadialGrid) -> f64 {
    let w = radial_weights(grid);
    field.iter().zip(w.iter()).map(|(f, w)| f * w).sum()
}

/// Quadrature weights over the symmetry-reduced grid realizing ∫_{R^N} f dx:
/// ×2 per reflected axis for the quarter plane, ×2 (x1 reflection) and 2πr'
/// cylindrical weight for the half cylinder. One weight per unknown (i, j);
/// Dirichlet edges carry zero field and are excluded.
pub fn symmetric_weights(grid: &SymmetricGrid) -> Vec<f64> {
    let (n1, n2, h) = (grid.n1, grid.n2, grid.h);
    let mut w = vec![0.0; grid.n_unknowns()];
    for i in 0..n1 {
        let tx = if i == 0 { 0.5 } else { 1.0 };
        for j in 0..n2 {
            let ty = if j == 0 { 0.5 } else { 1.0 };
            let base = tx * ty * h * h;
            w[grid.idx(i, j)] = match grid.reduction {
                Reduction::QuarterPlane => 4.0 * base,
                Reduction::HalfCylinder => 2.0 * (2.0 * PI * grid.x2(j)) * base,
            };
        }
    }
    w
}

pub fn integrate_symmetric(field: &[f64], grid: &SymmetricGrid) -> f64 {
    let w = symmetric_weights(grid);
    debug_assert_eq!(field.len(), w.len());
    field.iter().zip(w.iter()).map(|(f, w)| f * w).sum()
}

/// Weighted L² inner product with precomputed weights.
pub fn dot_w(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    a.iter().zip(b).zip(w).map(|((a, b), w)| a * b * w).sum()
}

pub fn norm_w(a: &[f64], w: &[f64]) -> f64 {
    dot_w(a, a, w).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{RadialGrid, SymmetricGrid};

    #[test]
    fn gaussian_integral_r3() {
        // ∫ exp(-r²) over R³ = π^{3/2}
        let grid = RadialGrid::new(8.0, 0.01, 3).unwrap();
        let f: Vec<f64> = (0..grid.n_nodes).map(|i| (-grid.r(i).powi(2)).exp()).collect();
        let v = integrate_radial(&f, &grid);
        assert!((v - PI.powf(1.5)).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn sech_squared_line_integral() {
        // ∫_R 2 sech²(x) dx = 4
        let grid = RadialGrid::new(20.0, 0.01, 1).unwrap();
        let f: Vec<f64> =
            (0..grid.n_nodes).map(|i| 2.0 / grid.r(i).cosh().powi(2)).collect();
        let v = integrate_radial(&f, &grid);
        assert!((v - 4.0).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn zero_field_integrates_to_zero() {
        let grid = RadialGrid::new(5.0, 0.1, 2).unwrap();
        let f = vec![0.0; grid.n_nodes];
        assert_eq!(integrate_radial(&f, &grid), 0.0);
    }

    #[test]
    fn quarter_plane_matches_full_grid_quadrature() {
        // Symmetry multiplicity: quadrature of the even-extended field equals
        // an explicit full-domain trapezoid at small size.
        let grid = SymmetricGrid::for_dim(2.0, 2.0, 0.25, 2).unwrap();
        let g = |x: f64, y: f64| (-(x * x + 0.5 * y * y)).exp();
        let mut field = vec![0.0; grid.n_unknowns()];
        for i in 0..grid.n1 {
            for j in 0..grid.n2 {
                field[grid.idx(i, j)] = g(grid.x1(i), grid.x2(j));
            }
        }
        let reduced = integrate_symmetric(&field, &grid);
        // full-domain trapezoid on [-2,2]² with the same h; the outer edge is
        // the Dirichlet boundary where the reduced field is implicitly zero
        let n = 2 * grid.n1;
        let mut full = 0.0;
        for a in 1..n {
            let x = -2.0 + a as f64 * grid.h;
            for b in 1..n {
                let y = -2.0 + b as f64 * grid.h;
                full += grid.h * grid.h * g(x, y);
            }
        }
        assert!((reduced - full).abs() < 1e-12, "reduced={reduced} full={full}");
    }

    #[test]
    fn cylinder_gaussian_matches_r3() {
        // axisymmetric Gaussian on the half cylinder integrates to π^{3/2}
        let grid = SymmetricGrid::for_dim(7.0, 7.0, 0.005, 3).unwrap();
        let mut field = vec![0.0; grid.n_unknowns()];
        for i in 0..grid.n1 {
            for j in 0..grid.n2 {
                let (x, r) = (grid.x1(i), grid.x2(j));
                field[grid.idx(i, j)] = (-(x * x + r * r)).exp();
            }
        }
        let v = integrate_symmetric(&field, &grid);
        // trapezoid against the 2πr' weight is O(h²) at the axis
        assert!((v - PI.powf(1.5)).abs() < 1e-4, "got {v}");
    }
}

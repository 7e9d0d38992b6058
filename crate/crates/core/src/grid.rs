use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform radial grid on [0, R_max] for functions of r = |x| in ambient dimension `dim`.
///
/// Node 0 sits at the origin; the last node sits at R_max and carries the
/// homogeneous Dirichlet condition. The origin gets the even (Neumann) ghost
/// treatment in every operator built on this grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_max: f64,
    pub h: f64,
    pub dim: usize,
    /// Number of nodes including both endpoints.
    pub n_nodes: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, h: f64, dim: usize) -> Result<Self> {
        if !(r_max > 0.0) || !(h > 0.0) || h >= r_max {
            return Err(Error::InvalidGrid(format!("r_max={r_max}, h={h}")));
        }
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        let n_cells = (r_max / h).round() as usize;
        if ((n_cells as f64) * h - r_max).abs() > 1e-9 * r_max {
            return Err(Error::InvalidGrid(format!(
                "r_max={r_max} is not an integer multiple of h={h}"
            )));
        }
        Ok(Self { r_max, h, dim, n_nodes: n_cells + 1 })
    }

    /// Truncation radius such that exp(-sqrt(pot_inf) * R) < 1e-10, rounded up
    /// to a multiple of h.
    pub fn default_radius(pot_inf: f64) -> f64 {
        23.1 / pot_inf.sqrt()
    }

    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    /// Interior unknowns (Dirichlet node excluded).
    pub fn n_unknowns(&self) -> usize {
        self.n_nodes - 1
    }
}

/// Symmetry reduction of the full domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reduction {
    /// N=2: quarter plane {x1 >= 0, x2 >= 0}, even reflection across both axes.
    QuarterPlane,
    /// N=3: half cylinder {x1 >= 0, r' >= 0} for fields axisymmetric about the
    /// x1-axis and even in x1.
    HalfCylinder,
}

/// Uniform tensor grid on [0, L1] x [0, L2] carrying the symmetry reduction.
///
/// Index convention: node (i, j) at (i*h, j*h), i = 0..=n1, j = 0..=n2.
/// Unknowns exclude the outer Dirichlet edges i = n1 and j = n2; the symmetry
/// axes i = 0 and j = 0 are regular unknowns with reflected stencils.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricGrid {
    pub l1: f64,
    pub l2: f64,
    pub h: f64,
    pub dim: usize,
    pub reduction: Reduction,
    /// Cells along x1 (nodes 0..=n1).
    pub n1: usize,
    /// Cells along the transverse coordinate (nodes 0..=n2).
    pub n2: usize,
}

impl SymmetricGrid {
    pub fn new(l1: f64, l2: f64, h: f64, dim: usize, reduction: Reduction) -> Result<Self> {
        if !(l1 > 0.0) || !(l2 > 0.0) || !(h > 0.0) || h >= l1.min(l2) {
            return Err(Error::InvalidGrid(format!("l1={l1}, l2={l2}, h={h}")));
        }
        match (dim, reduction) {
            (2, Reduction::QuarterPlane) | (3, Reduction::HalfCylinder) => {}
            _ => {
                return Err(Error::ReductionMismatch(format!(
                    "dim={dim} with {reduction:?}"
                )))
            }
        }
        let n1 = (l1 / h).round() as usize;
        let n2 = (l2 / h).round() as usize;
        if ((n1 as f64) * h - l1).abs() > 1e-9 * l1 || ((n2 as f64) * h - l2).abs() > 1e-9 * l2 {
            return Err(Error::InvalidGrid(format!(
                "box ({l1}, {l2}) is not an integer multiple of h={h}"
            )));
        }
        Ok(Self { l1, l2, h, dim, reduction, n1, n2 })
    }

    pub fn for_dim(l1: f64, l2: f64, h: f64, dim: usize) -> Result<Self> {
        let reduction = match dim {
            2 => Reduction::QuarterPlane,
            3 => Reduction::HalfCylinder,
            other => return Err(Error::UnsupportedDimension(other)),
        };
        Self::new(l1, l2, h, dim, reduction)
    }

    /// Interior unknowns per direction (outer Dirichlet edge excluded).
    pub fn nx(&self) -> usize {
        self.n1
    }
    pub fn ny(&self) -> usize {
        self.n2
    }
    pub fn n_unknowns(&self) -> usize {
        self.n1 * self.n2
    }

    /// Flat index of unknown (i, j): the transverse index j is fastest so the
    /// operator bandwidth is min(n1, n2) when n2 <= n1.
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.n2 + j
    }

    #[inline]
    pub fn x1(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    #[inline]
    pub fn x2(&self, j: usize) -> f64 {
        j as f64 * self.h
    }
}

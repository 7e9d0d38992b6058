use crate::error::{Error, Result};

/// General band matrix in LAPACK-style band storage with room for the kl
/// extra superdiagonals that partial pivoting fills in.
///
/// Entry (i, j) lives at `ab[j * ldab + (kl + ku + i - j)]` and is valid for
/// `j - kl - ku <= i <= j + kl`; before factorization only `|i - j| <= ku`
/// above and `<= kl` below are populated.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    ldab: usize,
    ab: Vec<f64>,
}

impl BandMatrix {
    pub fn new(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        Self { n, kl, ku, ldab, ab: vec![0.0; n * ldab] }
    }

    #[inline]
    fn off(&self, i: usize, j: usize) -> usize {
        debug_assert!(i + self.ku + self.kl >= j && i <= j + self.kl);
        j * self.ldab + (self.kl + self.ku + i - j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let o = self.off(i, j);
        self.ab[o] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let o = self.off(i, j);
        self.ab[o] += v;
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i + self.ku >= j && i <= j + self.kl {
            self.ab[j * self.ldab + (self.kl + self.ku + i - j)]
        } else {
            0.0
        }
    }

    /// Adds `diag[i]` to each diagonal entry.
    pub fn add_diagonal(&mut self, diag: &[f64]) {
        assert_eq!(diag.len(), self.n);
        for (i, d) in diag.iter().enumerate() {
            self.add(i, i, *d);
        }
    }

    /// Scales all stored entries (used to flip the sign of a Laplacian).
    pub fn scale(&mut self, s: f64) {
        for v in &mut self.ab {
            *v *= s;
        }
    }

    /// y = A x over the declared (pre-factorization) band.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for j in 0..self.n {
            let xj = x[j];
            if xj == 0.0 {
                continue;
            }
            let i0 = j.saturating_sub(self.ku);
            let i1 = (j + self.kl).min(self.n - 1);
            let base = j * self.ldab + self.kl + self.ku;
            for i in i0..=i1 {
                y[i] += self.ab[base + i - j] * xj;
            }
        }
        y
    }

    /// LU factorization with partial pivoting (gbtrf). Consumes the matrix.
    pub fn factor(mut self) -> Result<BandLu> {
        let n = self.n;
        let (kl, ku, ldab) = (self.kl, self.ku, self.ldab);
        let kv = kl + ku;
        let mut ipiv = vec![0usize; n];
        for j in 0..n {
            let jend = (j + kl).min(n - 1);
            // pivot search in column j
            let mut jp = j;
            let mut amax = 0.0f64;
            for i in j..=jend {
                let v = self.ab[j * ldab + kv + i - j].abs();
                if v > amax {
                    amax = v;
                    jp = i;
                }
            }
            if amax == 0.0 {
                return Err(Error::SingularFactorization { pivot: j });
            }
            ipiv[j] = jp;
            let kend = (j + kv).min(n - 1);
            if jp != j {
                for k in j..=kend {
                    let oa = k * ldab + kv + j - k;
                    let ob = k * ldab + kv + jp - k;
                    self.ab.swap(oa, ob);
                }
            }
            let piv = self.ab[j * ldab + kv];
            let inv = 1.0 / piv;
            for i in (j + 1)..=jend {
                self.ab[j * ldab + kv + i - j] *= inv;
            }
            for k in (j + 1)..=kend {
                let ujk = self.ab[k * ldab + kv + j - k];
                if ujk != 0.0 {
                    let base_k = k * ldab + kv;
                    let base_j = j * ldab + kv;
                    for i in (j + 1)..=jend {
                        self.ab[base_k + i - k] -= self.ab[base_j + i - j] * ujk;
                    }
                }
            }
        }
        Ok(BandLu { n, kl, ku, ldab, ab: self.ab, ipiv })
    }
}

/// Factored band matrix: A = P·L·U in band storage.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    ab: Vec<f64>,
    ipiv: Vec<usize>,
}

impl BandLu {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Solves A x = b in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.n);
        let (n, kl, ldab) = (self.n, self.kl, self.ldab);
        let kv = self.kl + self.ku;
        // L y = P b
        for j in 0..n {
            let jp = self.ipiv[j];
            if jp != j {
                b.swap(j, jp);
            }
            let bj = b[j];
            if bj != 0.0 {
                let jend = (j + kl).min(n - 1);
                let base = j * ldab + kv;
                for i in (j + 1)..=jend {
                    b[i] -= self.ab[base + i - j] * bj;
                }
            }
        }
        // U x = y
        for j in (0..n).rev() {
            let bj = b[j] / self.ab[j * ldab + kv];
            b[j] = bj;
            if bj != 0.0 {
                let i0 = j.saturating_sub(kv);
                let base = j * ldab + kv;
                for i in i0..j {
                    b[i] -= self.ab[base + i - j] * bj;
                }
            }
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    /// Solves A^T x = b in place.
    pub fn solve_transposed_in_place(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.n);
        let (n, kl, ldab) = (self.n, self.kl, self.ldab);
        let kv = self.kl + self.ku;
        // U^T y = b (forward)
        for j in 0..n {
            let i0 = j.saturating_sub(kv);
            let base = j * ldab + kv;
            let mut s = b[j];
            for i in i0..j {
                s -= self.ab[base + i - j] * b[i];
            }
            b[j] = s / self.ab[j * ldab + kv];
        }
        // L^T z = y (backward), then undo interchanges in reverse order
        for j in (0..n).rev() {
            let jend = (j + kl).min(n - 1);
            let base = j * ldab + kv;
            let mut s = b[j];
            for i in (j + 1)..=jend {
                s -= self.ab[base + i - j] * b[i];
            }
            b[j] = s;
            let jp = self.ipiv[j];
            if jp != j {
                b.swap(j, jp);
            }
        }
    }

    pub fn solve_transposed(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_transposed_in_place(&mut x);
        x
    }
}

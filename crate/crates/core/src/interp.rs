//! Catmull-Rom cubic interpolation on uniform grids with even/odd reflection
//! at the symmetry axes and zero extension beyond the Dirichlet edge.

/// Cubic Lagrange weights on the uniform nodes i-1, i, i+1, i+2 for offset
/// t in [0,1) past node i. Exact on cubic polynomials (O(h⁴) on smooth data).
#[inline]
pub fn cr_weights(t: f64) -> [f64; 4] {
    [
        -t * (t - 1.0) * (t - 2.0) / 6.0,
        (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
        -(t + 1.0) * t * (t - 2.0) / 2.0,
        (t + 1.0) * t * (t - 1.0) / 6.0,
    ]
}

/// Derivative of the cubic weights with respect to t (divide by h for the
/// physical derivative).
#[inline]
pub fn cr_weights_d(t: f64) -> [f64; 4] {
    let t2 = t * t;
    [
        -(3.0 * t2 - 6.0 * t + 2.0) / 6.0,
        (3.0 * t2 - 4.0 * t - 1.0) / 2.0,
        -(3.0 * t2 - 2.0 * t - 2.0) / 2.0,
        (3.0 * t2 - 1.0) / 6.0,
    ]
}

/// Parity of a field across a symmetry axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Folds a (possibly negative) node index into [0, n) using the reflection
/// parity at 0; returns (index, sign) or None beyond the zero-extended edge.
#[inline]
pub fn fold_index(raw: i64, n: usize, parity: Parity) -> Option<(usize, f64)> {
    let (idx, sign) = if raw < 0 {
        ((-raw) as usize, if parity == Parity::Odd { -1.0 } else { 1.0 })
    } else {
        (raw as usize, 1.0)
    };
    if idx < n {
        Some((idx, sign))
    } else {
        None
    }
}

/// Cubic evaluation of a 1D sample array (uniform spacing h, node 0 at the
/// axis with the given parity, zero beyond the last node).
pub fn eval_1d(values: &[f64], h: f64, parity: Parity, x: f64) -> f64 {
    let n = values.len();
    let (xa, sign_out) = if x < 0.0 {
        (-x, if parity == Parity::Odd { -1.0 } else { 1.0 })
    } else {
        (x, 1.0)
    };
    let s = xa / h;
    let i = s.floor() as i64;
    let t = s - i as f64;
    let w = cr_weights(t);
    let mut acc = 0.0;
    for (k, wk) in w.iter().enumerate() {
        if let Some((idx, sign)) = fold_index(i - 1 + k as i64, n, parity) {
            acc += wk * sign * values[idx];
        }
    }
    sign_out * acc
}

/// Interpolation stencil for one axis: up to four (index, weight) pairs after
/// folding; entries beyond the grid are dropped (zero extension).
#[inline]
pub fn axis_stencil(x: f64, h: f64, n: usize, parity: Parity) -> ([(usize, f64); 4], usize) {
    let (xa, sign_out) = if x < 0.0 {
        (-x, if parity == Parity::Odd { -1.0 } else { 1.0 })
    } else {
        (x, 1.0)
    };
    let s = xa / h;
    let i = s.floor() as i64;
    let t = s - i as f64;
    let w = cr_weights(t);
    let mut out = [(0usize, 0.0f64); 4];
    let mut m = 0;
    for (k, wk) in w.iter().enumerate() {
        if let Some((idx, sign)) = fold_index(i - 1 + k as i64, n, parity) {
            if let Some(slot) = out[..m].iter_mut().find(|(j, _)| *j == idx) {
                slot.1 += wk * sign * sign_out;
            } else {
                out[m] = (idx, wk * sign * sign_out);
                m += 1;
            }
        }
    }
    (out, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_reproduces_polynomials() {
        // Catmull-Rom is exact on cubics away from boundaries
        let h = 0.1;
        let n = 50;
        let f = |x: f64| 1.0 + 2.0 * x - 0.5 * x * x + 0.25 * x * x * x;
        let values: Vec<f64> = (0..n).map(|i| f(i as f64 * h)).collect();
        for &x in &[0.234, 1.01, 3.999, 4.5] {
            let v = eval_1d(&values, h, Parity::Even, x);
            assert!((v - f(x)).abs() < 1e-12, "x={x}: {v} vs {}", f(x));
        }
    }

    #[test]
    fn even_reflection_matches_even_function() {
        let h = 0.01;
        let n = 500;
        let f = |x: f64| (x * x).cos();
        let values: Vec<f64> = (0..n).map(|i| f(i as f64 * h)).collect();
        for &x in &[0.01f64, 0.03, -0.07, -0.01] {
            let v = eval_1d(&values, h, Parity::Even, x);
            assert!((v - f(x)).abs() < 5e-8);
        }
    }

    #[test]
    fn odd_reflection_is_antisymmetric() {
        let h = 0.05;
        let n = 100;
        let f = |x: f64| x * (-x * x).exp();
        let values: Vec<f64> = (0..n).map(|i| f(i as f64 * h)).collect();
        for &x in &[0.12f64, 0.33, 1.7] {
            let vp = eval_1d(&values, h, Parity::Odd, x);
            let vm = eval_1d(&values, h, Parity::Odd, -x);
            assert_eq!(vp, -vm);
            assert!((vp - f(x)).abs() < 1e-5);
        }
    }

    #[test]
    fn stencil_weights_sum_to_one_in_the_interior() {
        let (st, m) = axis_stencil(1.234, 0.1, 100, Parity::Even);
        let sum: f64 = st[..m].iter().map(|(_, w)| w).sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }
}

//! Small least-squares and rank helpers shared by the diagnostics.

use alloc::vec::Vec;

use crate::math::sqrt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination; zero when `y` has no variance.
    pub r2: f64,
}

/// Ordinary least squares `y = intercept + slope * x`.
///
/// Returns `None` for fewer than two points or when all `x` coincide.
pub fn ols_line(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        0.0
    } else {
        (sxy * sxy / (sxx * syy)).min(1.0)
    };
    Some(LineFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    /// Coefficients of `c0 + c1 * u + c2 * u^2` in the original units.
    pub coefficients: [f64; 3],
    /// OLS standard error of `c2`.
    pub curvature_se: f64,
}

impl QuadraticFit {
    pub fn curvature(&self) -> f64 {
        self.coefficients[2]
    }
}

/// Least-squares parabola with the classical OLS standard error of the
/// quadratic coefficient. The abscissa is standardized internally.
pub fn quadratic_fit(xs: &[f64], ys: &[f64]) -> Option<QuadraticFit> {
    let n = xs.len();
    if n < 4 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let sd = sqrt(xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>() / nf);
    if sd == 0.0 {
        return None;
    }

    // Normal equations on t = (x - mx) / sd.
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let t = (x - mx) / sd;
        let basis = [1.0, t, t * t];
        for i in 0..3 {
            rhs[i] += basis[i] * y;
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
        }
    }
    let inv = invert3(&m)?;
    let mut b = [0.0f64; 3];
    for i in 0..3 {
        b[i] = (0..3).map(|j| inv[i][j] * rhs[j]).sum();
    }
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let t = (x - mx) / sd;
            let r = y - (b[0] + b[1] * t + b[2] * t * t);
            r * r
        })
        .sum();
    let s2 = rss / (nf - 3.0);
    let se_t = sqrt(s2 * inv[2][2]);

    // Back to original units: t = (x - mx) / sd.
    let k = 1.0 / (sd * sd);
    let c2 = b[2] * k;
    let c1 = b[1] / sd - 2.0 * b[2] * mx * k;
    let c0 = b[0] - b[1] * mx / sd + b[2] * mx * mx * k;
    Some(QuadraticFit {
        coefficients: [c0, c1, c2],
        curvature_se: se_t * k,
    })
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let d = 1.0 / det;
    Some([
        [
            (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * d,
            (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * d,
            (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * d,
        ],
        [
            (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * d,
            (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * d,
            (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * d,
        ],
        [
            (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * d,
            (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * d,
            (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * d,
        ],
    ])
}

/// Mid-ranks (1-based, ties averaged).
pub fn ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = alloc::vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = rank;
        }
        i = j + 1;
    }
    out
}

/// Pearson correlation; zero when either side is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        0.0
    } else {
        sxy / sqrt(sxx * syy)
    }
}

/// Spearman rank correlation; zero by convention when either side is constant.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    pearson(&ranks(xs), &ranks(ys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let fit = ols_line(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-15);
        assert!((fit.intercept - 1.0).abs() < 1e-14);
        assert!((fit.r2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_parabola() {
        let xs: Vec<f64> = (0..20).map(|i| 10.0 + i as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.5 - 0.25 * x + 0.125 * x * x).collect();
        let fit = quadratic_fit(&xs, &ys).unwrap();
        assert!((fit.coefficients[0] - 1.5).abs() < 1e-9);
        assert!((fit.coefficients[1] + 0.25).abs() < 1e-10);
        assert!((fit.coefficients[2] - 0.125).abs() < 1e-12);
        assert!(fit.curvature_se < 1e-10);
    }

    #[test]
    fn mid_ranks() {
        assert_eq!(ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn spearman_of_monotone_map_is_one() {
        let xs: Vec<f64> = (1..30).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x * x).collect();
        assert!((spearman(&xs, &ys) - 1.0).abs() < 1e-15);
        assert_eq!(spearman(&xs, &[2.0; 29]), 0.0);
    }
}

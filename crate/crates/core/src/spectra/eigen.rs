//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit-shift QL iteration. Values only, no vectors.

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Reduces a symmetric matrix (row-major, `n x n`) to tridiagonal form.
/// Returns `(diagonal, offdiagonal)` where `offdiagonal[i]` couples `i` and `i+1`.
pub fn tridiagonalize(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    // e[i] couples rows i-1 and i (e[0] unused) during the sweep.
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        if l == 0 {
            e[i] = a[i][l];
            continue;
        }
        let scale: f64 = a[i][..=l].iter().map(|x| x.abs()).sum();
        if scale == 0.0 {
            e[i] = a[i][l];
            continue;
        }
        let mut h = 0.0;
        for k in 0..=l {
            a[i][k] /= scale;
            h += a[i][k] * a[i][k];
        }
        let f = a[i][l];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        let mut f_acc = 0.0;
        for j in 0..=l {
            let mut g = 0.0;
            for k in 0..=j {
                g += a[j][k] * a[i][k];
            }
            for k in j + 1..=l {
                g += a[k][j] * a[i][k];
            }
            e[j] = g / h;
            f_acc += e[j] * a[i][j];
        }
        let hh = f_acc / (h + h);
        for j in 0..=l {
            let f = a[i][j];
            let g = e[j] - hh * f;
            e[j] = g;
            for k in 0..=j {
                a[j][k] -= f * e[k] + g * a[i][k];
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    let off = e[1..].to_vec();
    (diag, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal (`off.len() == diag.len() - 1`), in no particular order.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    assert_eq!(off.len() + 1, n, "off-diagonal length must be n - 1");
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    #[test]
    fn path_graph_eigenvalues() {
        // P_n has eigenvalues 2 cos(pi j / (n+1))
        let n = 7;
        let ev = sorted(tridiagonal_eigenvalues(&vec![0.0; n], &vec![1.0; n - 1]).unwrap());
        for (j, v) in ev.iter().enumerate() {
            let want = 2.0 * (std::f64::consts::PI * (j + 1) as f64 / (n + 1) as f64).cos();
            assert!((v - want).abs() < 1e-12, "{v} vs {want}");
        }
    }

    #[test]
    fn householder_preserves_trace_and_frobenius() {
        let a = vec![
            vec![4.0, 1.0, -2.0, 2.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -2.0],
            vec![2.0, 1.0, -2.0, -1.0],
        ];
        let fro: f64 = a.iter().flatten().map(|x| x * x).sum();
        let (d, e) = tridiagonalize(a);
        let tr: f64 = d.iter().sum();
        assert!((tr - 8.0).abs() < 1e-12);
        let fro_t: f64 = d.iter().map(|x| x * x).sum::<f64>() + 2.0 * e.iter().map(|x| x * x).sum::<f64>();
        assert!((fro - fro_t).abs() < 1e-10);
        let ev = tridiagonal_eigenvalues(&d, &e).unwrap();
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        assert!((sq - fro).abs() < 1e-10);
    }

    #[test]
    fn trivial_sizes() {
        assert!(tridiagonal_eigenvalues(&[], &[]).unwrap().is_empty());
        assert_eq!(tridiagonal_eigenvalues(&[3.5], &[]).unwrap(), vec![3.5]);
    }
}

use super::SymmetricMatrix;
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 60;

/// Householder reduction to tridiagonal form followed by implicit-shift QL.
pub fn tridiagonal_ql_eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut a = m.data().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder(&mut a, n, &mut d, &mut e);
    implicit_ql(&mut d, &mut e)?;
    Ok(d)
}

/// Reduces `a` in place, reading and writing only its lower triangle. On
/// return `d` holds the diagonal and `e[1..]` the subdiagonal. Row slices of
/// the lower triangle are contiguous, so both the matrix-vector product and
/// the rank-2 update stream through memory once per step.
fn householder(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let m = n - lo;
        // column k below the diagonal
        for (t, i) in (lo..n).enumerate() {
            v[t] = a[i * n + k];
        }
        let x = &mut v[..m];
        let scale = x.iter().fold(0.0f64, |acc, t| acc.max(t.abs()));
        if scale == 0.0 {
            e[lo] = 0.0;
            continue;
        }
        let sigma: f64 = x.iter().map(|t| (t / scale) * (t / scale)).sum();
        let norm = scale * sigma.sqrt();
        let alpha = if x[0] > 0.0 { -norm } else { norm };
        e[lo] = alpha;
        x[0] -= alpha;
        let vv = dot(x, x);
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        let v = &v[..m];

        // p = beta * A' v from the lower triangle: row t contributes its dot
        // with v to p[t] and, by symmetry, v[t] times itself to p[..t]
        let p = &mut p[..m];
        p.fill(0.0);
        for (t, i) in (lo..n).enumerate() {
            let row = &a[i * n + lo..i * n + i + 1];
            let (below, diag) = row.split_at(t);
            let vt = v[t];
            for (pj, r) in p[..t].iter_mut().zip(below) {
                *pj += r * vt;
            }
            p[t] += dot(below, &v[..t]) + diag[0] * vt;
        }
        for pi in p.iter_mut() {
            *pi *= beta;
        }
        // w = p - (beta/2)(p.v) v
        let c = 0.5 * beta * dot(p, v);
        for (pi, vi) in p.iter_mut().zip(v) {
            *pi -= c * vi;
        }

        // A' -= v w^T + w v^T on the lower triangle
        for (t, i) in (lo..n).enumerate() {
            let (vi, wi) = (v[t], p[t]);
            let row = &mut a[i * n + lo..i * n + i + 1];
            for ((r, vj), wj) in row.iter_mut().zip(&v[..=t]).zip(&p[..=t]) {
                *r -= vi * wj + wi * vj;
            }
        }
    }
    if n >= 2 {
        e[n - 1] = a[(n - 1) * n + n - 2];
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
}

/// Dot product with independent partial sums, which lets the compiler keep
/// several lanes in flight.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (x, y) in ca.zip(cb) {
        for t in 0..4 {
            acc[t] += x[t] * y[t];
        }
    }
    acc[0] + acc[1] + acc[2] + acc[3] + tail
}

fn implicit_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // without this floor a pair of zero diagonal entries (Dirac matrices have
    // a zero diagonal) never deflates a tiny but nonzero off-diagonal entry
    let scale = d.iter().chain(e.iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = f64::EPSILON * scale;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITERATIONS {
                return Err(Error::NonConvergence {
                    dim: n,
                    iterations: MAX_ITERATIONS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
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
                    underflow = true;
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
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

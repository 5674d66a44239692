//! Fixed-size symmetric eigen and small SVD kernels. Everything here is a
//! cyclic Jacobi rotation scheme: the problems are 3x3 or 4x4 (plus an n x 4
//! column block for the homogeneous fit), so a dependency-free solver that
//! converges to machine precision is both simpler and fully deterministic.

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

const MAX_SWEEPS: usize = 64;

fn identity<F: Real, const N: usize>() -> [[F; N]; N] {
    let mut v = [[F::zero(); N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = F::one();
    }
    v
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(values, vectors)` sorted ascending by eigenvalue, with
/// `vectors[k]` the unit eigenvector paired with `values[k]`.
pub fn jacobi_eigen<F: Real, const N: usize>(mut a: [[F; N]; N]) -> ([F; N], [[F; N]; N]) {
    let mut v = identity::<F, N>();
    let eps = F::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut off = F::zero();
        let mut diag = F::zero();
        for p in 0..N {
            diag += a[p][p].abs();
            for q in (p + 1)..N {
                off += a[p][q].abs();
            }
        }
        if off <= eps * (diag + off) || off == F::zero() {
            break;
        }

        for p in 0..N - 1 {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq.abs() <= eps * eps * (a[p][p].abs() + a[q][q].abs() + F::one()) {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (cast::<F>(2.0) * apq);
                let t = {
                    let s = if tau >= F::zero() { F::one() } else { -F::one() };
                    s / (tau.abs() + (F::one() + tau * tau).sqrt())
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = t * c;

                // A <- G^T A G on rows/columns p, q
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                // numerical symmetry cleanup on the rotated pair
                a[p][q] = (a[p][q] + a[q][p]) * cast::<F>(0.5);
                a[q][p] = a[p][q];

                for vk in v.iter_mut() {
                    let vp = vk[p];
                    let vq = vk[q];
                    vk[p] = c * vp - s * vq;
                    vk[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut vals = [F::zero(); N];
    for (k, val) in vals.iter_mut().enumerate() {
        *val = a[k][k];
    }
    // columns of v are the eigenvectors; transpose into row vectors and sort
    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());

    let mut out_vals = [F::zero(); N];
    let mut out_vecs = [[F::zero(); N]; N];
    for (k, &src) in order.iter().enumerate() {
        out_vals[k] = vals[src];
        for i in 0..N {
            out_vecs[k][i] = v[i][src];
        }
    }
    (out_vals, out_vecs)
}

/// Solve `A x = b` for symmetric 3x3 `A` through its eigen-decomposition.
/// Rejects systems whose smallest/largest eigenvalue magnitude ratio falls
/// below 1e-12.
pub fn solve_sym3<F: Real>(a: [[F; 3]; 3], b: [F; 3]) -> Result<[F; 3]> {
    let (vals, vecs) = jacobi_eigen(a);
    let max_abs = vals.iter().fold(F::zero(), |m, v| m.max(v.abs()));
    let min_abs = vals.iter().fold(F::infinity(), |m, v| m.min(v.abs()));
    if max_abs == F::zero() || min_abs / max_abs < cast::<F>(1e-12) {
        return Err(Error::SingularSystem);
    }
    let mut x = [F::zero(); 3];
    for k in 0..3 {
        let proj = (0..3).map(|i| vecs[k][i] * b[i]).sum::<F>() / vals[k];
        for i in 0..3 {
            x[i] += proj * vecs[k][i];
        }
    }
    Ok(x)
}

/// Singular values and right singular vectors of a tall matrix given as four
/// column vectors, via one-sided (Hestenes) Jacobi orthogonalization.
///
/// Returns `(sigmas, vectors)` sorted ascending, `vectors[k]` the unit right
/// singular vector for `sigmas[k]`.
pub fn hestenes_svd4<F: Real>(cols: &mut [Vec<F>; 4]) -> ([F; 4], [[F; 4]; 4]) {
    let n = cols[0].len();
    debug_assert!(cols.iter().all(|c| c.len() == n));
    let mut v = identity::<F, 4>();
    let eps = F::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let mut alpha = F::zero();
                let mut beta = F::zero();
                let mut gamma = F::zero();
                for i in 0..n {
                    let cp = cols[p][i];
                    let cq = cols[q][i];
                    alpha += cp * cp;
                    beta += cq * cq;
                    gamma += cp * cq;
                }
                if alpha == F::zero() || beta == F::zero() {
                    continue;
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (cast::<F>(2.0) * gamma);
                let t = {
                    let s = if zeta >= F::zero() { F::one() } else { -F::one() };
                    s / (zeta.abs() + (F::one() + zeta * zeta).sqrt())
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let cp = cols[p][i];
                    let cq = cols[q][i];
                    cols[p][i] = c * cp - s * cq;
                    cols[q][i] = s * cp + c * cq;
                }
                for vk in v.iter_mut() {
                    let vp = vk[p];
                    let vq = vk[q];
                    vk[p] = c * vp - s * vq;
                    vk[q] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sig = [F::zero(); 4];
    for (j, s) in sig.iter_mut().enumerate() {
        *s = cols[j].iter().map(|&x| x * x).sum::<F>().sqrt();
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| sig[i].partial_cmp(&sig[j]).unwrap());

    let mut out_sig = [F::zero(); 4];
    let mut out_vec = [[F::zero(); 4]; 4];
    for (k, &src) in order.iter().enumerate() {
        out_sig[k] = sig[src];
        for i in 0..4 {
            out_vec[k][i] = v[i][src];
        }
    }
    (out_sig, out_vec)
}

/// Quadratic form `x^T M x`.
pub fn quad_form<F: Real, const N: usize>(m: &[[F; N]; N], x: &[F; N]) -> F {
    let mut acc = F::zero();
    for i in 0..N {
        for j in 0..N {
            acc += x[i] * m[i][j] * x[j];
        }
    }
    acc
}

/// Bilinear form `x^T M y`.
pub fn bilinear_form<F: Real, const N: usize>(m: &[[F; N]; N], x: &[F; N], y: &[F; N]) -> F {
    let mut acc = F::zero();
    for i in 0..N {
        for j in 0..N {
            acc += x[i] * m[i][j] * y[j];
        }
    }
    acc
}

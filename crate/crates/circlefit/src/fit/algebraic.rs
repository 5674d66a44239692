//! Closed-form algebraic circle fits: plain least squares on the implicit
//! equation, the Pratt / Taubin / hyper-normalized constrained variants, and
//! the two homogeneous formulations (SVD and scatter-matrix eigenvector).
//!
//! Every fitter first translates the data to its centroid and rescales by
//! the RMS radius. Both transforms are undone on the way out; they keep the
//! moment matrices well conditioned regardless of where the contour sits in
//! the image.

use super::FitResult;
use crate::error::{Error, Result};
use crate::geom::{Circle, Point, PointSet};
use crate::linalg::{bilinear_form, hestenes_svd4, jacobi_eigen, quad_form, solve_sym3};
use crate::scalar::{cast, Real};

const EIG_RATIO_FLOOR: f64 = 1e-12;

/// Similarity transform applied before forming moment matrices.
struct Frame<F> {
    cx: F,
    cy: F,
    scale: F,
}

impl<F: Real> Frame<F> {
    fn restore(&self, a: F, b: F, r: F) -> Circle<F> {
        Circle::new(
            a * self.scale + self.cx,
            b * self.scale + self.cy,
            r * self.scale,
        )
    }
}

fn normalize<F: Real>(ps: &PointSet<F>, min_points: usize) -> Result<(Vec<Point<F>>, Frame<F>)> {
    let n = ps.len();
    if n < min_points {
        return Err(Error::TooFewPoints {
            needed: min_points,
            got: n,
        });
    }
    let nf = cast::<F>(n as f64);
    let mut cx = F::zero();
    let mut cy = F::zero();
    for p in ps {
        cx += p.x;
        cy += p.y;
    }
    cx /= nf;
    cy /= nf;

    let mut msq = F::zero();
    for p in ps {
        let dx = p.x - cx;
        let dy = p.y - cy;
        msq += dx * dx + dy * dy;
    }
    let scale = (msq / nf).sqrt();
    if !(scale > F::zero()) || !scale.is_finite() {
        return Err(Error::SingularSystem);
    }
    let pts = ps
        .iter()
        .map(|p| Point::new((p.x - cx) / scale, (p.y - cy) / scale))
        .collect();
    Ok((pts, Frame { cx, cy, scale }))
}

fn closed_form<F: Real>(circle: Circle<F>, n: usize) -> FitResult<F> {
    FitResult {
        circle,
        iterations: 1,
        converged: true,
        inlier_count: n,
    }
}

fn circle_from_def<F: Real>(d: F, e: F, f: F, frame: &Frame<F>) -> Result<Circle<F>> {
    let a = -d * cast::<F>(0.5);
    let b = -e * cast::<F>(0.5);
    let r_sq = a * a + b * b - f;
    if !(r_sq > F::zero()) || !r_sq.is_finite() {
        return Err(Error::SingularSystem);
    }
    Ok(frame.restore(a, b, r_sq.sqrt()))
}

/// Algebraic least squares: solve the normal equations of
/// `x^2 + y^2 + Dx + Ey + F = 0` and read the circle off `[D E F]`.
pub fn fit_lsf<F: Real>(ps: &PointSet<F>) -> Result<FitResult<F>> {
    let (pts, frame) = normalize(ps, 3)?;
    let nf = cast::<F>(pts.len() as f64);

    let mut sxx = F::zero();
    let mut sxy = F::zero();
    let mut syy = F::zero();
    let mut sx = F::zero();
    let mut sy = F::zero();
    let mut sxz = F::zero();
    let mut syz = F::zero();
    let mut sz = F::zero();
    for p in &pts {
        let z = p.x * p.x + p.y * p.y;
        sxx += p.x * p.x;
        sxy += p.x * p.y;
        syy += p.y * p.y;
        sx += p.x;
        sy += p.y;
        sxz += p.x * z;
        syz += p.y * z;
        sz += z;
    }
    let a = [[sxx, sxy, sx], [sxy, syy, sy], [sx, sy, nf]];
    let b = [-sxz, -syz, -sz];
    let [d, e, f] = solve_sym3(a, b)?;
    Ok(closed_form(circle_from_def(d, e, f, &frame)?, ps.len()))
}

/// Constraint used by the generalized-eigenvalue fits. The parameter vector
/// is `[alpha, D, E, F]` for `alpha (x^2+y^2) + Dx + Ey + F = 0`.
enum Normalization {
    Pratt,
    Taubin,
    Hyper,
}

fn moment_matrix<F: Real>(pts: &[Point<F>]) -> [[F; 4]; 4] {
    let nf = cast::<F>(pts.len() as f64);
    let mut m = [[F::zero(); 4]; 4];
    for p in pts {
        let xi = [p.x * p.x + p.y * p.y, p.x, p.y, F::one()];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += xi[i] * xi[j];
            }
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v /= nf;
        }
    }
    m
}

fn constraint_matrix<F: Real>(kind: &Normalization, pts: &[Point<F>]) -> [[F; 4]; 4] {
    let nf = cast::<F>(pts.len() as f64);
    let mut zm = F::zero();
    let mut xm = F::zero();
    let mut ym = F::zero();
    for p in pts {
        zm += p.x * p.x + p.y * p.y;
        xm += p.x;
        ym += p.y;
    }
    zm /= nf;
    xm /= nf;
    ym /= nf;

    let z = F::zero();
    let one = F::one();
    let two = cast::<F>(2.0);
    let four = cast::<F>(4.0);
    let eight = cast::<F>(8.0);
    match kind {
        // theta^T C theta = D^2 + E^2 - 4 alpha F, Pratt's circularity form
        Normalization::Pratt => [
            [z, z, z, -two],
            [z, one, z, z],
            [z, z, one, z],
            [-two, z, z, z],
        ],
        // mean squared gradient of the implicit function
        Normalization::Taubin => [
            [four * zm, two * xm, two * ym, z],
            [two * xm, one, z, z],
            [two * ym, z, one, z],
            [z, z, z, z],
        ],
        // hyper-normalization built from the same first/second moments
        Normalization::Hyper => [
            [eight * zm, four * xm, four * ym, two],
            [four * xm, one, z, z],
            [four * ym, z, one, z],
            [two, z, z, z],
        ],
    }
}

/// Minimize `theta^T M theta` subject to `theta^T C theta = 1` and return
/// the constraint-normalized parameter vector.
///
/// With `M = V diag(l) V^T` positive definite, substituting
/// `theta = V diag(1/sqrt(l)) w` turns the pencil into a single symmetric
/// eigenproblem for `S = diag(1/sqrt(l)) V^T C V diag(1/sqrt(l))`; the
/// generalized eigenvalue is `1/mu`, so the smallest admissible one
/// corresponds to the largest positive `mu`. Noiseless data (singular `M`)
/// short-circuits to the null eigenvector, the exact fit.
fn constrained_solution<F: Real>(
    m: [[F; 4]; 4],
    c: [[F; 4]; 4],
    degenerate_err: Error,
) -> Result<[F; 4]> {
    let (vals, vecs) = jacobi_eigen(m);
    if !(vals[3] > F::zero()) {
        return Err(Error::SingularSystem);
    }
    let ratio_floor = cast::<F>(EIG_RATIO_FLOOR);
    if vals[1].max(F::zero()) / vals[3] < ratio_floor {
        // rank <= 2: not enough structure to determine a circle
        return Err(Error::SingularSystem);
    }

    let mut theta = if vals[0].max(F::zero()) / vals[3] < ratio_floor {
        vecs[0]
    } else {
        let inv_sqrt: [F; 4] = std::array::from_fn(|k| F::one() / vals[k].sqrt());
        let mut s = [[F::zero(); 4]; 4];
        for k in 0..4 {
            for l in 0..4 {
                s[k][l] = bilinear_form(&c, &vecs[k], &vecs[l]) * inv_sqrt[k] * inv_sqrt[l];
            }
        }
        let (mu, w) = jacobi_eigen(s);
        // largest mu is last after ascending sort
        if !(mu[3] > F::zero()) {
            return Err(degenerate_err);
        }
        let mut theta = [F::zero(); 4];
        for k in 0..4 {
            let coef = inv_sqrt[k] * w[3][k];
            for i in 0..4 {
                theta[i] += coef * vecs[k][i];
            }
        }
        theta
    };

    let q = quad_form(&c, &theta);
    if !(q > F::zero()) || !q.is_finite() {
        return Err(degenerate_err);
    }
    let inv = F::one() / q.sqrt();
    for t in theta.iter_mut() {
        *t *= inv;
    }
    if theta[0] < F::zero() {
        for t in theta.iter_mut() {
            *t = -*t;
        }
    }
    Ok(theta)
}

fn circle_from_theta4<F: Real>(theta: [F; 4], frame: &Frame<F>) -> Result<Circle<F>> {
    let norm = theta.iter().map(|t| *t * *t).sum::<F>().sqrt();
    let alpha = theta[0];
    if alpha.abs() <= cast::<F>(1e-12) * norm {
        return Err(Error::SingularSystem);
    }
    let a = -theta[1] / (cast::<F>(2.0) * alpha);
    let b = -theta[2] / (cast::<F>(2.0) * alpha);
    let r_sq = a * a + b * b - theta[3] / alpha;
    if !(r_sq > F::zero()) || !r_sq.is_finite() {
        return Err(Error::SingularSystem);
    }
    Ok(frame.restore(a, b, r_sq.sqrt()))
}

fn constrained_fit<F: Real>(
    ps: &PointSet<F>,
    kind: Normalization,
    degenerate_err: fn() -> Error,
) -> Result<FitResult<F>> {
    let (pts, frame) = normalize(ps, 3)?;
    let m = moment_matrix(&pts);
    let c = constraint_matrix(&kind, &pts);
    let theta = constrained_solution(m, c, degenerate_err())?;
    Ok(closed_form(circle_from_theta4(theta, &frame)?, ps.len()))
}

/// Pratt fit: generalized eigenproblem under the circularity constraint
/// `D^2 + E^2 - 4 alpha F = 1`.
pub fn fit_pratt<F: Real>(ps: &PointSet<F>) -> Result<FitResult<F>> {
    constrained_fit(ps, Normalization::Pratt, || Error::NoAdmissibleEigenvalue)
}

/// Taubin fit: algebraic error normalized by the mean squared gradient.
pub fn fit_taubin<F: Real>(ps: &PointSet<F>) -> Result<FitResult<F>> {
    constrained_fit(ps, Normalization::Taubin, || Error::NoAdmissibleEigenvalue)
}

/// Hyper-normalized fit: the bias-cancelling moment constraint.
pub fn fit_hyperls<F: Real>(ps: &PointSet<F>) -> Result<FitResult<F>> {
    constrained_fit(ps, Normalization::Hyper, || Error::SingularSystem)
}

/// Design-matrix columns of the homogeneous system, `[x, y, 1, -(x^2+y^2)]`.
fn homogeneous_columns<F: Real>(pts: &[Point<F>]) -> [Vec<F>; 4] {
    let n = pts.len();
    let mut cols: [Vec<F>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
    for p in pts {
        cols[0].push(p.x);
        cols[1].push(p.y);
        cols[2].push(F::one());
        cols[3].push(-(p.x * p.x + p.y * p.y));
    }
    cols
}

/// Circle from the homogeneous vector `[D, E, F, s]` of the
/// `[x, y, 1, -z]` system, after dividing through by `s`:
/// `z = (D/s) x + (E/s) y + F/s`.
fn circle_from_homogeneous<F: Real>(v: [F; 4], frame: &Frame<F>) -> Result<Circle<F>> {
    let norm = v.iter().map(|t| *t * *t).sum::<F>().sqrt();
    if v[3].abs() < cast::<F>(1e-12) * norm {
        return Err(Error::DegenerateScale);
    }
    let d = v[0] / v[3];
    let e = v[1] / v[3];
    let f = v[2] / v[3];
    let a = d * cast::<F>(0.5);
    let b = e * cast::<F>(0.5);
    let r_sq = a * a + b * b + f;
    if !(r_sq > F::zero()) || !r_sq.is_finite() {
        return Err(Error::SingularSystem);
    }
    Ok(frame.restore(a, b, r_sq.sqrt()))
}

/// Total least squares: right singular vector of the n x 4 design matrix
/// with the smallest singular value, rescaled so its last component is 1.
pub fn fit_tls<F: Real>(ps: &PointSet<F>) -> Result<FitResult<F>> {
    let (pts, frame) = normalize(ps, 3)?;
    let mut cols = homogeneous_columns(&pts);
    let (sigmas, vectors) = hestenes_svd4(&mut cols);
    if !(sigmas[3] > F::zero())
        || (sigmas[1] / sigmas[3]).powi(2) < cast::<F>(EIG_RATIO_FLOOR)
    {
        return Err(Error::SingularSystem);
    }
    Ok(closed_form(
        circle_from_homogeneous(vectors[0], &frame)?,
        ps.len(),
    ))
}

/// Same homogeneous problem as [`fit_tls`], solved through the eigenvector
/// of the 4 x 4 scatter matrix `A^T A` instead of a singular decomposition.
/// The two routes agree to solver precision on non-degenerate inputs.
pub fn fit_edcircle<F: Real>(ps: &PointSet<F>) -> Result<FitResult<F>> {
    let (pts, frame) = normalize(ps, 3)?;
    let cols = homogeneous_columns(&pts);
    let mut scatter = [[F::zero(); 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let s = cols[i].iter().zip(&cols[j]).map(|(&a, &b)| a * b).sum();
            scatter[i][j] = s;
            scatter[j][i] = s;
        }
    }
    let (vals, vecs) = jacobi_eigen(scatter);
    if !(vals[3] > F::zero()) || vals[1].max(F::zero()) / vals[3] < cast::<F>(EIG_RATIO_FLOOR) {
        return Err(Error::SingularSystem);
    }
    Ok(closed_form(
        circle_from_homogeneous(vecs[0], &frame)?,
        ps.len(),
    ))
}

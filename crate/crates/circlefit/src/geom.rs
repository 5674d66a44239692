//! Geometric primitives shared by every fitter and filter: points, circles,
//! signed radial residuals, the polar transform and its inverse, and the
//! exact circle through three points.

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

/// 2-D edge point in pixel units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<F> {
    pub x: F,
    pub y: F,
}

impl<F: Real> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point<F>) -> F {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Circle with center `(a, b)` and radius `r`, pixel units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle<F> {
    pub a: F,
    pub b: F,
    pub r: F,
}

impl<F: Real> Circle<F> {
    pub fn new(a: F, b: F, r: F) -> Self {
        Circle { a, b, r }
    }

    pub fn center(&self) -> Point<F> {
        Point::new(self.a, self.b)
    }

    pub fn diameter(&self) -> F {
        self.r + self.r
    }

    /// Signed radial residual of one point: distance to center minus radius.
    pub fn residual(&self, p: &Point<F>) -> F {
        p.distance(&self.center()) - self.r
    }
}

/// Polar coordinates of a point relative to some center: `r >= 0`,
/// `theta` in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint<F> {
    pub r: F,
    pub theta: F,
}

/// Ordered collection of points. Construction rejects non-finite
/// coordinates; iteration order is insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<F> {
    points: Vec<Point<F>>,
}

impl<F: Real> PointSet<F> {
    pub fn new(points: Vec<Point<F>>) -> Result<Self> {
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(PointSet { points })
    }

    /// Construction from values already known to be finite.
    pub(crate) fn new_unchecked(points: Vec<Point<F>>) -> Self {
        debug_assert!(points.iter().all(Point::is_finite));
        PointSet { points }
    }

    pub fn from_xy(pairs: &[(F, F)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<F>] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Point<F> {
        self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<F>> {
        self.points.iter()
    }
}

impl<'a, F: Real> IntoIterator for &'a PointSet<F> {
    type Item = &'a Point<F>;
    type IntoIter = std::slice::Iter<'a, Point<F>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Arithmetic mean of the point set.
pub fn centroid<F: Real>(ps: &PointSet<F>) -> Result<Point<F>> {
    if ps.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = cast::<F>(ps.len() as f64);
    let mut sx = F::zero();
    let mut sy = F::zero();
    for p in ps {
        sx += p.x;
        sy += p.y;
    }
    Ok(Point::new(sx / n, sy / n))
}

/// Convert each point to polar coordinates about `center`, preserving input
/// order. A point coincident with the center maps to `(r = 0, theta = 0)`.
pub fn to_polar<F: Real>(ps: &PointSet<F>, center: Point<F>) -> Result<Vec<PolarPoint<F>>> {
    if ps.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(ps
        .iter()
        .map(|p| {
            let dx = p.x - center.x;
            let dy = p.y - center.y;
            let r = (dx * dx + dy * dy).sqrt();
            let theta = if r == F::zero() {
                F::zero()
            } else {
                let t = dy.atan2(dx);
                // atan2 can return -pi for y = -0; keep theta in (-pi, pi]
                if t == -F::from_f64(std::f64::consts::PI).unwrap() {
                    -t
                } else {
                    t
                }
            };
            PolarPoint { r, theta }
        })
        .collect())
}

/// Inverse polar transform about `center`.
pub fn from_polar<F: Real>(pp: &[PolarPoint<F>], center: Point<F>) -> PointSet<F> {
    PointSet::new_unchecked(
        pp.iter()
            .map(|p| {
                Point::new(
                    p.r * p.theta.cos() + center.x,
                    p.r * p.theta.sin() + center.y,
                )
            })
            .collect(),
    )
}

/// Exact circle through three non-collinear points.
///
/// Degeneracy test: twice the signed triangle area is compared against
/// `1e-9 * (bounding-box diagonal)^2`, which keeps the threshold scale-free.
/// The triplet is ordered canonically first, so every permutation of the
/// same points produces bit-identical output.
pub fn circle_from_three_points<F: Real>(
    p1: Point<F>,
    p2: Point<F>,
    p3: Point<F>,
) -> Result<Circle<F>> {
    let mut t = [p1, p2, p3];
    t.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    let [p1, p2, p3] = t;

    let area2 = (p1.x * (p2.y - p3.y) + p2.x * (p3.y - p1.y) + p3.x * (p1.y - p2.y)).abs();
    let xmin = p1.x.min(p2.x).min(p3.x);
    let xmax = p1.x.max(p2.x).max(p3.x);
    let ymin = p1.y.min(p2.y).min(p3.y);
    let ymax = p1.y.max(p2.y).max(p3.y);
    let dx = xmax - xmin;
    let dy = ymax - ymin;
    let diag_sq = dx * dx + dy * dy;
    if area2 <= cast::<F>(1e-9) * diag_sq {
        return Err(Error::CollinearPoints);
    }

    // Work relative to p1 for conditioning.
    let bx = p2.x - p1.x;
    let by = p2.y - p1.y;
    let cx = p3.x - p1.x;
    let cy = p3.y - p1.y;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let d = (bx * cy - by * cx) * cast::<F>(2.0);
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let r = (ux * ux + uy * uy).sqrt();
    Ok(Circle::new(ux + p1.x, uy + p1.y, r))
}

/// Signed radial residuals of every point against `c`, in input order.
pub fn residuals<F: Real>(ps: &PointSet<F>, c: &Circle<F>) -> Vec<F> {
    ps.iter().map(|p| c.residual(p)).collect()
}

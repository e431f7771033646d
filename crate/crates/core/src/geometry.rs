//! Half-plane intersections in the plane.

use crate::Scalar;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Point<T>) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

/// The constraint `a*x + b*y >= c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> HalfPlane<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(invalid("half-plane", "coefficients must be finite", a + b + c));
        }
        if a == T::zero() && b == T::zero() {
            return Err(invalid("half-plane", "normal (a, b) must be nonzero", T::zero()));
        }
        Ok(HalfPlane { a, b, c })
    }

    /// Signed slack `a*x + b*y - c`; nonnegative inside.
    #[inline]
    pub fn slack(&self, p: Point<T>) -> T {
        self.a * p.x + self.b * p.y - self.c
    }

    /// Euclidean distance from `p` to the boundary line.
    #[inline]
    pub fn distance(&self, p: Point<T>) -> T {
        self.slack(p).abs() / self.a.hypot(self.b)
    }

    #[inline]
    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        self.slack(p) >= -tol
    }

    /// Intersection of the two boundary lines, `None` when parallel.
    pub fn intersect(&self, other: &HalfPlane<T>) -> Option<Point<T>> {
        let det = self.a * other.b - self.b * other.a;
        if det.abs() <= T::epsilon() * (self.a.abs() + self.b.abs()) * (other.a.abs() + other.b.abs()) {
            return None;
        }
        let x = (self.c * other.b - self.b * other.c) / det;
        let y = (self.a * other.c - self.c * other.a) / det;
        Some(Point { x, y })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint<T> {
    pub label: String,
    pub point: Point<T>,
}

/// An intersection of half-planes, with annotated corners.
///
/// Vertices are annotations only; membership is decided by the half-planes,
/// so unbounded pieces are represented exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPiece<T> {
    pub halfplanes: Vec<HalfPlane<T>>,
    pub vertices: Vec<LabeledPoint<T>>,
}

impl<T: Scalar> ConvexPiece<T> {
    pub fn new(halfplanes: Vec<HalfPlane<T>>) -> Self {
        ConvexPiece {
            halfplanes,
            vertices: Vec::new(),
        }
    }

    pub fn with_vertex(mut self, label: &str, point: Point<T>) -> Self {
        self.vertices.push(LabeledPoint {
            label: label.to_string(),
            point,
        });
        self
    }

    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        self.halfplanes.iter().all(|h| h.contains(p, tol))
    }

    /// Smallest signed slack over all constraints.
    pub fn min_slack(&self, p: Point<T>) -> T {
        self.halfplanes
            .iter()
            .map(|h| h.slack(p))
            .fold(T::infinity(), T::min)
    }

    /// Distance from `p` to the nearest boundary line of any constraint.
    pub fn boundary_distance(&self, p: Point<T>) -> T {
        self.halfplanes
            .iter()
            .map(|h| h.distance(p))
            .fold(T::infinity(), T::min)
    }

    /// Number of constraints whose boundary passes within `tol` of `p`.
    pub fn tight_count(&self, p: Point<T>, tol: T) -> usize {
        self.halfplanes.iter().filter(|h| h.slack(p).abs() <= tol).count()
    }

    pub fn vertex(&self, label: &str) -> Option<Point<T>> {
        self.vertices.iter().find(|v| v.label == label).map(|v| v.point)
    }
}

/// Membership test with slack `>= -tol` on every constraint.
pub fn region_contains<T: Scalar>(piece: &ConvexPiece<T>, point: Point<T>, tol: T) -> bool {
    piece.contains(point, tol)
}

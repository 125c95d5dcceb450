//! Exact geometric kernel: points, segments, simple polygons and the
//! predicates every other module builds on.

pub mod kernel;

use alloc::vec::Vec;
use core::fmt;

pub use kernel::{Location, Pt};

use crate::error::GeomError;
use crate::field::ExactField;
use crate::scalar::{int, Scalar, Sign};

pub type Point = Pt<Scalar>;

impl Point {
    pub fn from_ints(x: i64, y: i64) -> Point {
        Pt::new(int(x), int(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed straight segment with distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Segment, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }
}

/// Exact orientation of `c` relative to the directed line `ab`.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Sign {
    kernel::orient(a, b, c)
}

pub fn segments_properly_intersect(s1: &Segment, s2: &Segment) -> bool {
    kernel::segments_properly_intersect(&s1.a, &s1.b, &s2.a, &s2.b)
}

pub fn is_simple(vertices: &[Point]) -> bool {
    kernel::check_simple(vertices).is_ok()
}

/// A simple polygon with exact rational vertices, stored counterclockwise.
///
/// Clockwise input is reversed on construction, keeping vertex 0 in place, so
/// internal index `i` corresponds to caller index `(n - i) % n`. The flag is
/// kept so output can be written back in the caller's order. Equality
/// compares the internal vertex lists only.
#[derive(Debug, Clone)]
pub struct Polygon {
    vertices: Vec<Point>,
    reversed: bool,
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Polygon) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polygon {}

impl core::hash::Hash for Polygon {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Polygon, GeomError> {
        let mut vertices = vertices;
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if let Err((edge_a, edge_b)) = kernel::check_simple(&vertices) {
            return Err(GeomError::NotSimple { edge_a, edge_b });
        }
        let reversed = kernel::signed_area2(&vertices).sign() == Sign::Negative;
        if reversed {
            vertices[1..].reverse();
        }
        Ok(Polygon { vertices, reversed })
    }

    /// Builds a polygon whose vertices are already in internal order, carrying
    /// over the caller-order flag of the polygon it derives from.
    pub(crate) fn with_orientation(vertices: Vec<Point>, reversed: bool) -> Result<Polygon, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if let Err((edge_a, edge_b)) = kernel::check_simple(&vertices) {
            return Err(GeomError::NotSimple { edge_a, edge_b });
        }
        if kernel::signed_area2(&vertices).sign() != Sign::Positive {
            return Err(GeomError::OrientationFlip);
        }
        Ok(Polygon { vertices, reversed })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Polygon, GeomError> {
        Polygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` joins vertex `i` to vertex `i + 1 (mod n)`.
    pub fn edge(&self, i: usize) -> Segment {
        let n = self.len();
        Segment { a: self.vertices[i].clone(), b: self.vertices[(i + 1) % n].clone() }
    }

    pub fn reversed(&self) -> bool {
        self.reversed
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        i != j && ((i + 1) % n == j || (j + 1) % n == i)
    }

    /// Index in the caller's original vertex order of internal vertex `i`.
    pub fn caller_index(&self, i: usize) -> usize {
        if self.reversed {
            (self.len() - i) % self.len()
        } else {
            i
        }
    }

    /// Internal index of the caller's vertex `i`. The mapping is an involution.
    pub fn internal_index(&self, i: usize) -> usize {
        self.caller_index(i)
    }

    pub fn caller_order(&self) -> Vec<Point> {
        (0..self.len()).map(|i| self.vertices[self.internal_index(i)].clone()).collect()
    }

    pub fn check_index(&self, i: usize) -> Result<(), GeomError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(GeomError::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    /// Same vertices with one of them replaced; fails if the result is not simple.
    pub fn with_vertex(&self, i: usize, p: Point) -> Result<Polygon, GeomError> {
        self.check_index(i)?;
        let mut v = self.vertices.clone();
        v[i] = p;
        if let Err((edge_a, edge_b)) = kernel::check_simple_after_move(&v, i) {
            return Err(GeomError::NotSimple { edge_a, edge_b });
        }
        if kernel::signed_area2(&v).sign() != Sign::Positive {
            return Err(GeomError::OrientationFlip);
        }
        Ok(Polygon { vertices: v, reversed: self.reversed })
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

pub fn point_location(poly: &Polygon, q: &Point) -> Location {
    kernel::locate(poly.vertices(), q)
}

/// Convexity classification under the straight-vertex policy: a vertex whose
/// neighbours are collinear with it keeps the polygon convex but is flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Convexity {
    Strict,
    /// Convex with the listed straight vertices.
    Degenerate { straight: Vec<usize> },
    NotConvex { reflex: Vec<usize> },
}

pub fn convexity(poly: &Polygon) -> Convexity {
    let v = poly.vertices();
    let n = v.len();
    let mut straight = Vec::new();
    let mut reflex = Vec::new();
    for i in 0..n {
        match kernel::orient(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]) {
            Sign::Positive => {}
            Sign::Zero => straight.push(i),
            Sign::Negative => reflex.push(i),
        }
    }
    if !reflex.is_empty() {
        Convexity::NotConvex { reflex }
    } else if !straight.is_empty() {
        Convexity::Degenerate { straight }
    } else {
        Convexity::Strict
    }
}

/// True for strictly convex polygons and for convex polygons with straight
/// vertices; use [`convexity`] to tell them apart.
pub fn is_convex(poly: &Polygon) -> bool {
    !matches!(convexity(poly), Convexity::NotConvex { .. })
}

pub fn segment_in_closure(poly: &Polygon, s: &Segment) -> bool {
    kernel::segment_in_closure(poly.vertices(), &s.a, &s.b)
}

/// Lifts rational points into another exact field.
pub fn lift<F: ExactField>(points: &[Point]) -> Vec<Pt<F>> {
    points.iter().map(|p| Pt::new(F::from_scalar(&p.x), F::from_scalar(&p.y))).collect()
}

use alloc::boxed::Box;
use alloc::string::String;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple: edges {edge_a} and {edge_b} intersect")]
    NotSimple { edge_a: usize, edge_b: usize },
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("vertex index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex pair needs two distinct indices, got {0} twice")]
    RepeatedIndex(usize),
    #[error("vertex order flipped to clockwise")]
    OrientationFlip,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotionError {
    #[error("orbit has no keyframes")]
    EmptyOrbit,
    #[error("orbit {orbit} keyframe times are not strictly increasing")]
    NonIncreasingTimes { orbit: usize },
    #[error("orbit {orbit} does not cover the transformation domain")]
    OrbitDomain { orbit: usize },
    #[error("transformation end {end} precedes start {start}")]
    InvertedDomain { start: Scalar, end: Scalar },
    #[error("time {t} outside [{start}, {end}]")]
    TimeOutOfDomain { t: Scalar, start: Scalar, end: Scalar },
    #[error("polygon at time {t} is not simple: edges {edge_a} and {edge_b} intersect")]
    NotSimpleAt { t: Scalar, edge_a: usize, edge_b: usize },
    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },
    #[error("move {index}: vertex {vertex} path does not start at its current position")]
    PathStart { index: usize, vertex: usize },
    #[error("move {index} starts before the previous move ends")]
    MoveTimes { index: usize },
    #[error("plans {junction} and {next} do not meet: final and initial polygons differ", next = junction + 1)]
    JunctionMismatch { junction: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("interval [{lo}, {hi}] spans a keyframe at {at}")]
    SpansKeyframe { lo: Scalar, hi: Scalar, at: Scalar },
    #[error("initial polygon is not simple: edges {edge_a} and {edge_b} intersect")]
    NonSimpleInitial { edge_a: usize, edge_b: usize },
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error("polygon has no critical tuple")]
    NotCritical,
    #[error("no certified visibility-increasing move after {attempts} attempts")]
    CertificationFailed { attempts: usize },
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle has no answer for this polygon: {0}")]
    Mismatch(String),
    #[error("oracle stuck after {steps} steps: {reason}")]
    Stuck {
        steps: usize,
        reason: String,
        partial: Option<Box<crate::motion::Transformation>>,
    },
    #[error(transparent)]
    Motion(#[from] MotionError),
}

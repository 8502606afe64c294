use core::fmt;

/// Reasons a pair `(a, b)` fails to be good.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NotGood {
    /// `a` or `b` is negative or not finite.
    OutOfDomain { a: f64, b: f64 },
    /// `sinh(a - b) > 2 sinh(a / 2)` does not hold.
    Inequality { lhs: f64, rhs: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point had a non-finite coordinate.
    NonFinite,
    /// A point of the upper half-plane (or half-space) had height `<= 0`.
    NotInUpperHalf(f64),
    /// Matrix determinant outside the renormalisable window around 1.
    BadDeterminant(f64),
    /// A side adjacent to the requested angle has zero length.
    DegenerateTriangle,
    /// Three lengths violate the triangle inequality.
    InvalidSides {
        a: f64,
        b: f64,
        c: f64,
    },
    /// The two points spanning a geodesic coincide.
    DegenerateGeodesic,
    NotGood(NotGood),
    /// Chains need at least two points.
    ChainTooShort(usize),
    /// Consecutive chain points at zero distance (index of the second one).
    RepeatedPoint(usize),
    /// A chain point is not part of the metric space.
    UnknownPoint(usize),
    StepTooShort {
        index: usize,
        step: f64,
        min: f64,
    },
    AngleOutOfRange {
        angle: f64,
        min: f64,
        max: f64,
    },
    NotConvexInput,
    PreconditionFailed(&'static str),
    UnknownNode(usize),
    InvalidTree(&'static str),
    /// Consecutive triple of a chain that is not realisable in H² (index of the middle point).
    DegenerateTriple(usize),
    InvalidArgument(&'static str),
    /// Total step length beyond [`crate::hyp2::MAX_CHAIN_LENGTH`].
    TooLong(f64),
}

impl From<NotGood> for Error {
    fn from(e: NotGood) -> Self {
        Error::NotGood(e)
    }
}

impl fmt::Display for NotGood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotGood::OutOfDomain { a, b } => {
                write!(f, "good pairs need finite a, b >= 0 (got a = {a}, b = {b})")
            }
            NotGood::Inequality { lhs, rhs } => {
                write!(f, "sinh(a - b) > 2 sinh(a/2) fails: {lhs} <= {rhs}")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => f.write_str("non-finite coordinate"),
            Error::NotInUpperHalf(h) => write!(f, "height must be positive, got {h}"),
            Error::BadDeterminant(d) => write!(f, "determinant {d} is not close to 1"),
            Error::DegenerateTriangle => f.write_str("triangle side adjacent to the angle is zero"),
            Error::InvalidSides { a, b, c } => {
                write!(f, "sides ({a}, {b}, {c}) violate the triangle inequality")
            }
            Error::DegenerateGeodesic => f.write_str("geodesic through two equal points"),
            Error::NotGood(e) => write!(f, "pair is not good: {e}"),
            Error::ChainTooShort(n) => write!(f, "chain needs at least 2 points, got {n}"),
            Error::RepeatedPoint(i) => write!(f, "points {} and {i} coincide", i - 1),
            Error::UnknownPoint(i) => write!(f, "point {i} is not in the space"),
            Error::StepTooShort { index, step, min } => {
                write!(f, "step {index} has length {step} < {min}")
            }
            Error::AngleOutOfRange { angle, min, max } => {
                write!(f, "angle {angle} outside [{min}, {max}]")
            }
            Error::NotConvexInput => f.write_str("input chain is not convex"),
            Error::PreconditionFailed(what) => write!(f, "precondition failed: {what}"),
            Error::UnknownNode(v) => write!(f, "node {v} is not in the tree"),
            Error::InvalidTree(why) => write!(f, "invalid tree: {why}"),
            Error::DegenerateTriple(j) => write!(f, "triple around point {j} is degenerate"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::TooLong(len) => write!(
                f,
                "chain of total length {len} exceeds {}, beyond which coordinates overflow",
                crate::hyp2::MAX_CHAIN_LENGTH
            ),
        }
    }
}

impl core::error::Error for Error {}

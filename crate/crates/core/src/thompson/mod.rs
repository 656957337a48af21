//! Thompson's group `F`, realised as `PL_2([0,1])`: increasing piecewise
//! linear homeomorphisms of the unit interval with dyadic breakpoints and
//! slopes that are powers of two.
//!
//! A map is stored as its minimal breakpoint list, so structural equality is
//! equality of maps.

mod geometry;
mod random;
mod transitivity;

pub use geometry::{
    displaces_check, fixed_interval_analysis, in_commutator_subgroup, support, DisplacementData,
    DyadicInterval,
};
pub use random::{random_fprime, random_word};
pub use transitivity::{move_support_into, pl2_interval_map, tuple_conjugator, PlFragment};

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::{Dyadic, Rational};
use crate::error::{Error, Result};
use crate::group::GroupElement;

pub type Point = (Dyadic, Dyadic);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PL2Map {
    points: Vec<Point>,
}

impl PL2Map {
    pub fn identity() -> Self {
        PL2Map {
            points: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::one(), Dyadic::one()),
            ],
        }
    }

    /// Validates a breakpoint list, including minimality.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let slopes = validate_points(&points)?;
        if let Some(i) = slopes.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidMap(format!(
                "non-minimal: breakpoint {} has equal slopes on both sides",
                fmt_point(&points[i + 1])
            )));
        }
        Ok(PL2Map { points })
    }

    /// Validates a breakpoint list and drops redundant breakpoints.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let slopes = validate_points(&points)?;
        Ok(PL2Map {
            points: minimize(points, &slopes),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn breakpoint_count(&self) -> usize {
        self.points.len()
    }

    /// Slope exponents of each segment.
    pub fn slopes(&self) -> Vec<i64> {
        self.points
            .windows(2)
            .map(|w| segment_slope(&w[0], &w[1]).unwrap())
            .collect()
    }

    pub fn is_identity_map(&self) -> bool {
        self.points.len() == 2
    }

    /// Index of the segment `[x_i, x_{i+1}]` containing `x`; breakpoints
    /// belong to the segment on their left (except `0`).
    fn segment_index(&self, x: &Dyadic) -> usize {
        let n = self.points.len();
        let idx = self.points.partition_point(|(px, _)| px < x);
        idx.saturating_sub(1).min(n - 2)
    }

    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let i = self.segment_index(x);
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        if x == x1 {
            return y1.clone();
        }
        let k = segment_slope(&self.points[i], &self.points[i + 1]).unwrap();
        y0 + &(x - x0).mul_pow2(k)
    }

    /// Preimage of a dyadic point.
    pub fn inverse_eval_dyadic(&self, y: &Dyadic) -> Dyadic {
        let n = self.points.len();
        let idx = self.points.partition_point(|(_, py)| py < y);
        let i = idx.saturating_sub(1).min(n - 2);
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        if y == y1 {
            return x1.clone();
        }
        let k = segment_slope(&self.points[i], &self.points[i + 1]).unwrap();
        x0 + &(y - y0).mul_pow2(-k)
    }

    /// Exact value at a rational point of `[0,1]`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let zero = Rational::from_int(0);
        let one = Rational::from_int(1);
        if *x < zero || *x > one {
            return Err(Error::pre(format!("{x} lies outside [0,1]")));
        }
        let i = self
            .points
            .windows(2)
            .position(|w| *x <= w[1].0.to_rational())
            .expect("x <= 1");
        let (x0, y0) = &self.points[i];
        let k = segment_slope(&self.points[i], &self.points[i + 1]).unwrap();
        let scale = Dyadic::one().mul_pow2(k).to_rational();
        Ok(&y0.to_rational() + &(&scale * &(x - &x0.to_rational())))
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &PL2Map) -> PL2Map {
        let mut xs: Vec<Dyadic> = g.points.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.points.iter().map(|(x, _)| g.inverse_eval_dyadic(x)));
        xs.sort();
        xs.dedup();
        let points: Vec<Point> = xs
            .into_iter()
            .map(|x| {
                let y = self.eval_dyadic(&g.eval_dyadic(&x));
                (x, y)
            })
            .collect();
        let slopes: Vec<i64> = points
            .windows(2)
            .map(|w| segment_slope(&w[0], &w[1]).expect("composition of PL2 maps"))
            .collect();
        PL2Map {
            points: minimize(points, &slopes),
        }
    }

    pub fn invert(&self) -> PL2Map {
        PL2Map {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn fmt_point((x, y): &Point) -> String {
    format!("({x}, {y})")
}

/// Exponent `k` with slope `2^k` of the segment between two points, if the
/// segment is increasing with a power-of-two slope.
pub(crate) fn segment_slope(a: &Point, b: &Point) -> Option<i64> {
    let dx = &b.0 - &a.0;
    let dy = &b.1 - &a.1;
    dy.log2_ratio(&dx)
}

fn validate_points(points: &[Point]) -> Result<Vec<i64>> {
    if points.len() < 2 {
        return Err(Error::InvalidMap(
            "at least two breakpoints required".into(),
        ));
    }
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    if points[0] != (zero.clone(), zero) {
        return Err(Error::InvalidMap(format!(
            "first breakpoint must be (0, 0), got {}",
            fmt_point(&points[0])
        )));
    }
    let last = points.last().unwrap();
    if *last != (one.clone(), one) {
        return Err(Error::InvalidMap(format!(
            "last breakpoint must be (1, 1), got {}",
            fmt_point(last)
        )));
    }
    let mut slopes = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::InvalidMap(format!(
                "x-coordinates not strictly increasing at {}",
                fmt_point(&w[1])
            )));
        }
        if w[1].1 <= w[0].1 {
            return Err(Error::InvalidMap(format!(
                "y-coordinates not strictly increasing at {}",
                fmt_point(&w[1])
            )));
        }
        match segment_slope(&w[0], &w[1]) {
            Some(k) => slopes.push(k),
            None => {
                return Err(Error::InvalidMap(format!(
                    "slope between {} and {} is not a power of 2",
                    fmt_point(&w[0]),
                    fmt_point(&w[1])
                )))
            }
        }
    }
    Ok(slopes)
}

fn minimize(points: Vec<Point>, slopes: &[i64]) -> Vec<Point> {
    let n = points.len();
    let mut out = Vec::with_capacity(n);
    for (i, p) in points.into_iter().enumerate() {
        if i == 0 || i == n - 1 || slopes[i - 1] != slopes[i] {
            out.push(p);
        }
    }
    out
}

impl GroupElement for PL2Map {
    fn mul(&self, rhs: &Self) -> Self {
        self.compose(rhs)
    }

    fn inverse(&self) -> Self {
        self.invert()
    }

    fn identity_like(&self) -> Self {
        PL2Map::identity()
    }

    fn is_identity(&self) -> bool {
        self.is_identity_map()
    }
}

impl fmt::Debug for PL2Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL2Map[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_point(p))?;
        }
        write!(f, "]")
    }
}

impl Serialize for PL2Map {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .points
            .iter()
            .map(|(x, y)| [x.to_string(), y.to_string()])
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PL2Map {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[String; 2]> = Vec::deserialize(d)?;
        let mut points = Vec::with_capacity(pairs.len());
        for [x, y] in pairs {
            let x: Dyadic = x.parse().map_err(D::Error::custom)?;
            let y: Dyadic = y.parse().map_err(D::Error::custom)?;
            points.push((x, y));
        }
        PL2Map::new(points).map_err(D::Error::custom)
    }
}

/// The standard generators `x0` and `x1` of `F`.
pub fn standard_generators() -> (PL2Map, PL2Map) {
    let x0 = map_from_strs(&[("0", "0"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1")]);
    let x1 = map_from_strs(&[
        ("0", "0"),
        ("1/2", "1/2"),
        ("3/4", "5/8"),
        ("7/8", "3/4"),
        ("1", "1"),
    ]);
    (x0, x1)
}

/// Builds a map from string breakpoints; panics on invalid input, so reserve it
/// for literals.
pub fn map_from_strs(pts: &[(&str, &str)]) -> PL2Map {
    let points = pts
        .iter()
        .map(|(x, y)| (x.parse().unwrap(), y.parse().unwrap()))
        .collect();
    PL2Map::new(points).unwrap()
}

/// A small element of `F'` supported on `[1/4, 3/4]`, handy as a fixed `f`.
pub fn bump() -> PL2Map {
    map_from_strs(&[
        ("0", "0"),
        ("1/4", "1/4"),
        ("1/2", "3/8"),
        ("5/8", "1/2"),
        ("3/4", "3/4"),
        ("1", "1"),
    ])
}

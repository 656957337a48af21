use std::fmt;

use serde::{Deserialize, Serialize};

use super::{segment_slope, PL2Map};
use crate::dyadic::{dyadic_strictly_between, linear_fixed_point, Dyadic, Rational};
use crate::error::{Error, Result};

/// An interval `lo < hi` inside `[0,1]` with dyadic endpoints. Whether it is
/// read as open or closed depends on the call site.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[String; 2]", into = "[String; 2]")]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo.is_negative() || hi > Dyadic::one() || lo >= hi {
            return Err(Error::pre(format!(
                "invalid interval ({lo}, {hi}) in [0,1]"
            )));
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    /// `other` (closed) is contained in `self` (closed).
    pub fn contains(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other` (closed) is contained in the open interior of `self`.
    pub fn contains_strictly(&self, other: &DyadicInterval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    /// The open intervals do not meet.
    pub fn disjoint_open(&self, other: &DyadicInterval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }

    /// Image under an increasing homeomorphism.
    pub fn image(&self, f: &PL2Map) -> DyadicInterval {
        DyadicInterval {
            lo: f.eval_dyadic(&self.lo),
            hi: f.eval_dyadic(&self.hi),
        }
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl TryFrom<[String; 2]> for DyadicInterval {
    type Error = Error;
    fn try_from([lo, hi]: [String; 2]) -> Result<Self> {
        DyadicInterval::new(lo.parse()?, hi.parse()?)
    }
}

impl From<DyadicInterval> for [String; 2] {
    fn from(i: DyadicInterval) -> Self {
        [i.lo.to_string(), i.hi.to_string()]
    }
}

fn on_diagonal(f: &PL2Map, seg: usize) -> bool {
    let p = &f.points()[seg];
    p.0 == p.1 && segment_slope(p, &f.points()[seg + 1]) == Some(0)
}

/// Smallest closed interval containing every point moved by `f`; `None` for
/// the identity.
pub fn support(f: &PL2Map) -> Option<DyadicInterval> {
    let segs = f.breakpoint_count() - 1;
    let first = (0..segs).find(|&i| !on_diagonal(f, i))?;
    let last = (0..segs).rev().find(|&i| !on_diagonal(f, i))?;
    Some(DyadicInterval {
        lo: f.points()[first].0.clone(),
        hi: f.points()[last + 1].0.clone(),
    })
}

/// Membership in `F'`: the identity on a neighbourhood of both endpoints.
pub fn in_commutator_subgroup(f: &PL2Map) -> bool {
    let segs = f.breakpoint_count() - 1;
    on_diagonal(f, 0) && on_diagonal(f, segs - 1)
}

/// Fixed-point data of a nonidentity `f` in `F'`.
///
/// `alpha0` ends the initial segment fixed pointwise, `alpha1` is the next
/// fixed point, `alpha` a dyadic between them and `j` the open interval
/// between `alpha` and `f(alpha)`, whose forward images are pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplacementData {
    pub alpha0: Dyadic,
    pub alpha1: Rational,
    pub alpha: Dyadic,
    pub j: DyadicInterval,
}

pub fn fixed_interval_analysis(f: &PL2Map) -> Result<DisplacementData> {
    if f.is_identity_map() {
        return Err(Error::NonidentityRequired);
    }
    if !in_commutator_subgroup(f) {
        return Err(Error::NotInFPrime);
    }
    let pts = f.points();
    let segs = pts.len() - 1;
    let first = (0..segs)
        .find(|&i| !on_diagonal(f, i))
        .expect("nonidentity");
    let alpha0 = pts[first].0.clone();

    let mut alpha1 = None;
    for i in first..segs {
        let (x0, y0) = &pts[i];
        let x1 = &pts[i + 1].0;
        let k = segment_slope(&pts[i], &pts[i + 1]).unwrap();
        if k == 0 {
            // constant offset; a zero offset would contradict the choice of
            // `first` or end the search at x0, which the previous piece caught
            if x0 == y0 {
                alpha1 = Some(x0.to_rational());
                break;
            }
            continue;
        }
        let x = linear_fixed_point(k, x0, y0)?;
        if x > x0.to_rational() && x <= x1.to_rational() {
            alpha1 = Some(x);
            break;
        }
    }
    let alpha1 = alpha1.expect("f is the identity near 1, so a fixed point follows alpha0");
    let alpha = dyadic_strictly_between(&alpha0.to_rational(), &alpha1)?;
    let image = f.eval_dyadic(&alpha);
    let j = if alpha < image {
        DyadicInterval::new(alpha.clone(), image)?
    } else {
        DyadicInterval::new(image, alpha.clone())?
    };
    Ok(DisplacementData {
        alpha0,
        alpha1,
        alpha,
        j,
    })
}

/// Whether `J, fJ, ..., f^m J` are pairwise disjoint as open intervals.
pub fn displaces_check(f: &PL2Map, j: &DyadicInterval, m: usize) -> bool {
    let mut images = vec![j.clone()];
    for _ in 0..m {
        let next = images.last().unwrap().image(f);
        images.push(next);
    }
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if !images[a].disjoint_open(&images[b]) {
                return false;
            }
        }
    }
    true
}

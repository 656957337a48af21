use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// A permutation of `{0, ..., d-1}` stored as its image array.
///
/// Products compose right to left: `(p * q)(i) = p(q(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::parse(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `"(0 1)(2 3 4)"`; `"()"` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::parse(format!("malformed cycle string {s:?}")))?;
            let points: Vec<usize> = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(format!("bad point {t:?}")))
                })
                .collect::<Result<_>>()?;
            for &x in &points {
                if x >= degree {
                    return Err(Error::parse(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if seen[x] {
                    return Err(Error::parse(format!("point {x} repeated in {s:?}")));
                }
                seen[x] = true;
            }
            for (i, &x) in points.iter().enumerate() {
                images[x] = points[(i + 1) % points.len()];
            }
            rest = body.1.trim_start();
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn compose(&self, rhs: &Perm) -> Perm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Perm {
            images: rhs.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn invert(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl GroupElement for Perm {
    fn mul(&self, rhs: &Self) -> Self {
        self.compose(rhs)
    }

    fn inverse(&self) -> Self {
        self.invert()
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }

    fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Perm::from_images(images).map_err(serde::de::Error::custom)
    }
}

/// A permutation given either as an image array or as a cycle string; the
/// latter needs the degree from context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermSpec {
    pub fn resolve(&self, degree: usize) -> Result<Perm> {
        match self {
            PermSpec::Images(v) => {
                if v.len() != degree {
                    return Err(Error::Dimension(format!(
                        "image array of length {} for degree {degree}",
                        v.len()
                    )));
                }
                Perm::from_images(v.clone())
            }
            PermSpec::Cycles(s) => Perm::parse_cycles(degree, s),
        }
    }
}

impl From<&Perm> for PermSpec {
    fn from(p: &Perm) -> Self {
        PermSpec::Cycles(p.to_string())
    }
}

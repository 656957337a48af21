//! Reduced words in free products of cyclic groups, palindromes, and the
//! decomposition of `Z2 * Z2` elements into conjugates of the generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::displacement::CERTIFICATE_FORMAT_VERSION;
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Order of one cyclic free factor. JSON: an integer `>= 2` or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorOrder {
    Finite(u32),
    Infinite,
}

impl Serialize for FactorOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FactorOrder::Finite(n) => s.serialize_u32(*n),
            FactorOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for FactorOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) if n >= 2 => Ok(FactorOrder::Finite(n)),
            Raw::N(n) => Err(serde::de::Error::custom(format!(
                "factor order {n} is trivial"
            ))),
            Raw::S(s) if s == "inf" => Ok(FactorOrder::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad factor order {s:?}"))),
        }
    }
}

impl FactorOrder {
    /// Reduced exponent, `None` if the power is trivial.
    fn reduce(self, e: i64) -> Option<i64> {
        let r = match self {
            FactorOrder::Finite(n) => e.rem_euclid(n as i64),
            FactorOrder::Infinite => e,
        };
        (r != 0).then_some(r)
    }
}

/// The factor orders of a free product of at least two nontrivial cyclic
/// groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FactorSpec {
    orders: Vec<FactorOrder>,
}

impl FactorSpec {
    pub fn new(orders: Vec<FactorOrder>) -> Result<Self> {
        if orders.len() < 2 {
            return Err(Error::pre("a free product needs at least two factors"));
        }
        if orders
            .iter()
            .any(|o| matches!(o, FactorOrder::Finite(n) if *n < 2))
        {
            return Err(Error::pre("every factor must be nontrivial"));
        }
        Ok(FactorSpec { orders })
    }

    pub fn finite(orders: &[u32]) -> Result<Self> {
        Self::new(orders.iter().map(|&n| FactorOrder::Finite(n)).collect())
    }

    /// `Z2 * Z2`, with generators `a` (factor 0) and `b` (factor 1).
    pub fn z2z2() -> Self {
        FactorSpec::finite(&[2, 2]).unwrap()
    }

    pub fn orders(&self) -> &[FactorOrder] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn all_order_two(&self) -> bool {
        self.orders.iter().all(|o| *o == FactorOrder::Finite(2))
    }
}

impl<'de> Deserialize<'de> for FactorSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FactorSpec::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A reduced word: adjacent syllables lie in distinct factors and every
/// exponent is nonzero (in `1..order` for finite factors).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FPWord {
    spec: FactorSpec,
    syllables: Vec<(usize, i64)>,
}

impl Serialize for FPWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.syllables.serialize(s)
    }
}

impl FPWord {
    pub fn empty(spec: &FactorSpec) -> Self {
        FPWord {
            spec: spec.clone(),
            syllables: vec![],
        }
    }

    /// Accepts only syllable lists already in normal form.
    pub fn new(spec: &FactorSpec, syllables: Vec<(usize, i64)>) -> Result<Self> {
        for (k, &(i, e)) in syllables.iter().enumerate() {
            let order = *spec
                .orders
                .get(i)
                .ok_or_else(|| Error::parse(format!("factor index {i} out of range")))?;
            if order.reduce(e) != Some(e) {
                return Err(Error::parse(format!(
                    "syllable {k} has unreduced exponent {e}"
                )));
            }
            if k > 0 && syllables[k - 1].0 == i {
                return Err(Error::parse(format!(
                    "syllables {} and {k} lie in the same factor",
                    k - 1
                )));
            }
        }
        Ok(FPWord {
            spec: spec.clone(),
            syllables,
        })
    }

    /// Reduces an arbitrary list of powers of generators.
    pub fn reduce(spec: &FactorSpec, letters: &[(usize, i64)]) -> Result<Self> {
        let mut w = FPWord::empty(spec);
        for &(i, e) in letters {
            if i >= spec.len() {
                return Err(Error::parse(format!("factor index {i} out of range")));
            }
            w.push(i, e);
        }
        Ok(w)
    }

    /// The generator of factor `i`.
    pub fn generator(spec: &FactorSpec, i: usize) -> Result<Self> {
        Self::reduce(spec, &[(i, 1)])
    }

    /// Parses whitespace-separated letters `a`, `b`, ... (factor 0, 1, ...)
    /// with optional exponents, e.g. `"a b^-1 c^2"`.
    pub fn parse(spec: &FactorSpec, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let (name, exp) = match tok.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>()
                            .map_err(|_| Error::parse(format!("bad exponent in {tok:?}")))?,
                    ),
                    None => (tok, 1),
                };
                let mut chars = name.chars();
                match (chars.next(), chars.next()) {
                    (Some(c @ 'a'..='z'), None) => Ok(((c as u8 - b'a') as usize, exp)),
                    _ => Err(Error::parse(format!("bad letter {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::reduce(spec, &letters)
    }

    fn push(&mut self, i: usize, e: i64) {
        let order = self.spec.orders[i];
        match self.syllables.last_mut() {
            Some(last) if last.0 == i => match order.reduce(last.1 + e) {
                Some(r) => last.1 = r,
                None => {
                    self.syllables.pop();
                }
            },
            _ => {
                if let Some(r) = order.reduce(e) {
                    self.syllables.push((i, r));
                }
            }
        }
    }

    pub fn spec(&self) -> &FactorSpec {
        &self.spec
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn multiply(&self, rhs: &FPWord) -> Result<FPWord> {
        if self.spec != rhs.spec {
            return Err(Error::pre("words belong to different free products"));
        }
        let mut out = self.clone();
        for &(i, e) in &rhs.syllables {
            out.push(i, e);
        }
        Ok(out)
    }

    pub fn invert(&self) -> FPWord {
        let mut out = FPWord::empty(&self.spec);
        for &(i, e) in self.syllables.iter().rev() {
            out.push(i, -e);
        }
        out
    }

    /// `x w x^-1`.
    pub fn conjugate(&self, x: &FPWord) -> Result<FPWord> {
        x.multiply(self)?.multiply(&x.invert())
    }

    /// The syllable sequence reads the same backwards.
    pub fn is_palindrome(&self) -> bool {
        self.syllables.iter().eq(self.syllables.iter().rev())
    }
}

impl GroupElement for FPWord {
    fn mul(&self, rhs: &Self) -> Self {
        self.multiply(rhs)
            .expect("words over the same free product")
    }

    fn inverse(&self) -> Self {
        self.invert()
    }

    fn identity_like(&self) -> Self {
        FPWord::empty(&self.spec)
    }
}

impl fmt::Display for FPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(i, e)| {
                let c = (b'a' + i as u8) as char;
                if e == 1 {
                    c.to_string()
                } else {
                    format!("{c}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for FPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn require_z2z2(w: &FPWord) -> Result<()> {
    if w.spec != FactorSpec::z2z2() {
        return Err(Error::pre("expected the free product Z2 * Z2"));
    }
    Ok(())
}

/// The four alternating shapes of a nonempty reduced `Z2 * Z2` word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Z2Z2Shape {
    Empty,
    /// `(ab)^k`
    AbPow,
    /// `(ab)^k a`
    AbPowA,
    /// `(ba)^k`
    BaPow,
    /// `(ba)^k b`
    BaPowB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Z2NormalForm {
    pub k: usize,
    pub shape: Z2Z2Shape,
}

pub fn z2z2_normal_form(w: &FPWord) -> Result<Z2Z2NormalForm> {
    require_z2z2(w)?;
    let k = w.len() / 2;
    let shape = match (w.syllables.first(), w.len() % 2) {
        (None, _) => Z2Z2Shape::Empty,
        (Some((0, _)), 0) => Z2Z2Shape::AbPow,
        (Some((0, _)), _) => Z2Z2Shape::AbPowA,
        (Some(_), 0) => Z2Z2Shape::BaPow,
        (Some(_), _) => Z2Z2Shape::BaPowB,
    };
    Ok(Z2Z2NormalForm { k, shape })
}

/// `conjugator · generator(base) · conjugator^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Z2Factor {
    pub conjugator: FPWord,
    /// Factor index of the conjugated generator: 0 for `a`, 1 for `b`.
    pub base: usize,
}

impl Z2Z2Factor {
    pub fn value(&self) -> FPWord {
        let s = FPWord::generator(self.conjugator.spec(), self.base).unwrap();
        s.conjugate_by(&self.conjugator)
    }
}

/// A `Z2 * Z2` element as a product of conjugates of `a` or `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Z2Certificate {
    pub format_version: u32,
    pub target: FPWord,
    pub factors: Vec<Z2Z2Factor>,
}

#[derive(Deserialize)]
struct RawFactor {
    conjugator: Vec<(usize, i64)>,
    base: usize,
}

#[derive(Deserialize)]
struct RawCertificate {
    format_version: u32,
    target: Vec<(usize, i64)>,
    factors: Vec<RawFactor>,
}

impl<'de> Deserialize<'de> for Z2Z2Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawCertificate::deserialize(d)?;
        let spec = FactorSpec::z2z2();
        let target = FPWord::new(&spec, raw.target).map_err(D::Error::custom)?;
        let factors = raw
            .factors
            .into_iter()
            .map(|f| {
                if f.base > 1 {
                    return Err(D::Error::custom(format!("base {} is not a or b", f.base)));
                }
                let conjugator = FPWord::new(&spec, f.conjugator).map_err(D::Error::custom)?;
                Ok(Z2Z2Factor {
                    conjugator,
                    base: f.base,
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Z2Z2Certificate {
            format_version: raw.format_version,
            target,
            factors,
        })
    }
}

impl Z2Z2Certificate {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> FPWord {
        self.factors
            .iter()
            .fold(self.target.identity_like(), |acc, f| acc.mul(&f.value()))
    }

    pub fn verify(&self) -> bool {
        self.product() == self.target
    }
}

/// Peels the first letter off both ends of an odd word until one letter is
/// left: `w = x w' x`, so the conjugator is the product of peeled letters.
fn odd_as_conjugate(w: &FPWord) -> Z2Z2Factor {
    debug_assert!(w.len() % 2 == 1);
    let half = w.len() / 2;
    let conjugator = FPWord {
        spec: w.spec.clone(),
        syllables: w.syllables[..half].to_vec(),
    };
    Z2Z2Factor {
        conjugator,
        base: w.syllables[half].0,
    }
}

/// Odd words are a single conjugate of a generator; even words split as
/// `((ab)^(k-1) a) · b` (or the `b`-leading analogue).
pub fn z2z2_decompose(w: &FPWord) -> Result<Z2Z2Certificate> {
    require_z2z2(w)?;
    let factors = if w.is_empty() {
        vec![]
    } else if w.len() % 2 == 1 {
        vec![odd_as_conjugate(w)]
    } else {
        let n = w.len();
        let prefix = FPWord {
            spec: w.spec.clone(),
            syllables: w.syllables[..n - 1].to_vec(),
        };
        vec![
            odd_as_conjugate(&prefix),
            Z2Z2Factor {
                conjugator: FPWord::empty(&w.spec),
                base: w.syllables[n - 1].0,
            },
        ]
    };
    Ok(Z2Z2Certificate {
        format_version: CERTIFICATE_FORMAT_VERSION,
        target: w.clone(),
        factors,
    })
}

/// All reduced words of syllable length at most `max_len`, shortest first.
/// Exponents of infinite factors are limited to `±1`.
pub fn reduced_words(spec: &FactorSpec, max_len: usize) -> Vec<FPWord> {
    let choices: Vec<(usize, i64)> = spec
        .orders
        .iter()
        .enumerate()
        .flat_map(|(i, o)| match *o {
            FactorOrder::Finite(n) => (1..n as i64).map(|e| (i, e)).collect::<Vec<_>>(),
            FactorOrder::Infinite => vec![(i, 1), (i, -1)],
        })
        .collect();
    let mut out = vec![FPWord::empty(spec)];
    let mut layer = vec![FPWord::empty(spec)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &(i, e) in &choices {
                if w.syllables.last().is_some_and(|s| s.0 == i) {
                    continue;
                }
                let mut v = w.clone();
                v.syllables.push((i, e));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A palindrome `w` and a conjugator `x` with `x w x^-1` not a palindrome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PalindromeCounterexample {
    pub word: FPWord,
    pub conjugator: FPWord,
    pub conjugate: FPWord,
}

/// Exhaustive search over palindromes of length at most `word_len` and
/// conjugators of length at most `conj_len`.
pub fn palindrome_counterexample(
    spec: &FactorSpec,
    word_len: usize,
    conj_len: usize,
) -> Option<PalindromeCounterexample> {
    let palindromes: Vec<FPWord> = reduced_words(spec, word_len)
        .into_iter()
        .filter(FPWord::is_palindrome)
        .collect();
    let conjugators = reduced_words(spec, conj_len);
    for x in &conjugators {
        for w in &palindromes {
            let c = w.conjugate(x).unwrap();
            if !c.is_palindrome() {
                return Some(PalindromeCounterexample {
                    word: w.clone(),
                    conjugator: x.clone(),
                    conjugate: c,
                });
            }
        }
    }
    None
}

/// True iff conjugates of palindromes stay palindromes at the given sizes.
/// Only free products of groups of order two are accepted.
pub fn palindrome_closure_check(
    spec: &FactorSpec,
    word_len: usize,
    conj_len: usize,
) -> Result<bool> {
    if !spec.all_order_two() {
        return Err(Error::pre("every factor must have order 2"));
    }
    Ok(palindrome_counterexample(spec, word_len, conj_len).is_none())
}

//! Exact dyadic rationals `num / 2^exp` and general rationals `p / q`.
//!
//! All geometry of `PL_2` maps is carried out over [`Dyadic`]; fixed points of
//! linear pieces can leave the dyadics, so those are stored as [`Rational`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The value `num / 2^exp`, normalized so that `exp == 0` or `num` is odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(u64::from(self.exp)) as u32;
        if shift > 0 {
            self.num >>= shift;
            self.exp -= shift;
        }
    }

    /// Numerator rescaled to denominator `2^exp`, `exp >= self.exp`.
    fn scaled_num(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }

    /// Multiplication by `2^k` for any signed `k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if k >= u64::from(self.exp) {
                Dyadic {
                    num: &self.num << (k - u64::from(self.exp)),
                    exp: 0,
                }
            } else {
                Dyadic {
                    num: self.num.clone(),
                    exp: self.exp - k as u32,
                }
            }
        } else {
            // num is odd (or exp==0), so the result is already normalized
            // unless exp == 0 and num has trailing zeros.
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    /// Approximate value for display purposes only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.to_rational().to_f64_lossy()
    }

    pub fn to_rational(&self) -> Rational {
        Rational(BigRational::new(
            self.num.clone(),
            BigInt::one() << self.exp,
        ))
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// If `self / other` is an exact power of two `2^k`, returns `k`. Both
    /// values must be strictly positive.
    pub fn log2_ratio(&self, other: &Dyadic) -> Option<i64> {
        if !self.is_positive() || !other.is_positive() {
            return None;
        }
        let (a, ea) = self.odd_part();
        let (b, eb) = other.odd_part();
        if a != b {
            return None;
        }
        Some(ea - eb)
    }

    /// Writes a nonzero value as `odd * 2^e`.
    fn odd_part(&self) -> (BigInt, i64) {
        let tz = self.num.trailing_zeros().unwrap_or(0);
        (&self.num >> tz, tz as i64 - i64::from(self.exp))
    }

    /// Midpoint `(a + b) / 2`, always dyadic.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).mul_pow2(-1)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_num(e).cmp(&other.scaled_num(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_num(e) + rhs.scaled_num(e), e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_num(e) - rhs.scaled_num(e), e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add, Dyadic);
forward_owned!(Sub, sub, Dyadic);
forward_owned!(Mul, mul, Dyadic);

/// Arithmetic selector used by [`dyadic_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn dyadic_arith(a: &Dyadic, b: &Dyadic, op: ArithOp) -> Dyadic {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("not an integer: {s:?}")));
    }
    BigInt::from_str(t).map_err(|e| Error::parse(format!("{s:?}: {e}")))
}

/// Splits `"p/q"` (or `"p"`) into numerator and positive denominator, rejecting
/// fractions not in lowest terms.
fn parse_fraction(s: &str) -> Result<(BigInt, BigInt)> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (parse_int(p)?, parse_int(q)?),
        None => (parse_int(s)?, BigInt::one()),
    };
    if !q.is_positive() {
        return Err(Error::parse(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    if !p.gcd(&q).is_one() {
        return Err(Error::parse(format!("{s:?} is not in lowest terms")));
    }
    Ok((p, q))
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_fraction(s)?;
        let tz = q.trailing_zeros().unwrap_or(0);
        if (&q >> tz) != BigInt::one() {
            return Err(Error::parse(format!(
                "denominator of {s:?} is not a power of two"
            )));
        }
        Ok(Dyadic {
            num: p,
            exp: tz as u32,
        })
    }
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::parse("zero denominator"));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// Partial conversion: succeeds only when the denominator is a power of two.
    pub fn to_dyadic(&self) -> Result<Dyadic> {
        let d = self.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz) != BigInt::one() {
            return Err(Error::Precondition(format!("{self} is not dyadic")));
        }
        Ok(Dyadic {
            num: self.numer().clone(),
            exp: tz as u32,
        })
    }

    pub fn is_dyadic(&self) -> bool {
        self.to_dyadic().is_ok()
    }

    /// Approximate value for display purposes only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<&Dyadic> for Rational {
    fn from(d: &Dyadic) -> Self {
        d.to_rational()
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_fraction(s)?;
        Ok(Rational(BigRational::new(p, q)))
    }
}

/// Fixed point of the affine piece `y = 2^k (x - x0) + y0`.
///
/// Fails for `k == 0`: a slope-one piece either has no fixed point or is
/// fixed entirely, and the caller has to tell those apart.
pub fn linear_fixed_point(slope_log2: i64, x0: &Dyadic, y0: &Dyadic) -> Result<Rational> {
    if slope_log2 == 0 {
        return Err(Error::pre("slope 1 piece has no isolated fixed point"));
    }
    // x = s(x - x0) + y0  =>  x (s - 1) = s x0 - y0
    let s = Dyadic::one().mul_pow2(slope_log2).to_rational();
    let rhs = &(&s * &x0.to_rational()) - &y0.to_rational();
    let denom = &s - &Rational::from_int(1);
    Ok(Rational(rhs.0 / denom.0))
}

/// The dyadic in the open interval `(lo, hi)` with the smallest exponent, and
/// among those the smallest numerator.
pub fn dyadic_strictly_between(lo: &Rational, hi: &Rational) -> Result<Dyadic> {
    if lo >= hi {
        return Err(Error::pre(format!("empty interval ({lo}, {hi})")));
    }
    let mut exp: u32 = 0;
    loop {
        let scale = BigInt::one() << exp;
        // least integer n with n / 2^exp > lo
        let scaled = &lo.0 * BigRational::from_integer(scale.clone());
        let n = scaled.floor().to_integer() + BigInt::one();
        let candidate = BigRational::new(n.clone(), scale);
        if candidate < hi.0 {
            return Ok(Dyadic::new(n, exp));
        }
        exp += 1;
    }
}

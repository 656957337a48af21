use serde::{Deserialize, Serialize};

use crate::group::GroupElement;

pub const CERTIFICATE_FORMAT_VERSION: u32 = 1;

/// Exponent `±1` on a conjugate of the base element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply<G: GroupElement>(self, x: &G) -> G {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => x.inverse(),
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertFactor<G> {
    pub conjugator: G,
    pub sign: Sign,
}

impl<G: GroupElement> CertFactor<G> {
    pub fn new(conjugator: G, sign: Sign) -> Self {
        CertFactor { conjugator, sign }
    }

    /// `u f^sign u^-1`.
    pub fn value(&self, base: &G) -> G {
        self.sign.apply(base).conjugate_by(&self.conjugator)
    }
}

/// The claim `target = ∏ u_i base^{e_i} u_i^-1`, checked by [`verify`].
///
/// [`verify`]: ConjugateCertificate::verify
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugateCertificate<G> {
    pub format_version: u32,
    pub base: G,
    pub target: G,
    pub factors: Vec<CertFactor<G>>,
}

impl<G: GroupElement> ConjugateCertificate<G> {
    pub fn new(base: G, target: G, factors: Vec<CertFactor<G>>) -> Self {
        ConjugateCertificate {
            format_version: CERTIFICATE_FORMAT_VERSION,
            base,
            target,
            factors,
        }
    }

    /// The width claimed by the certificate.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> G {
        self.factors
            .iter()
            .fold(self.base.identity_like(), |acc, fac| {
                acc.mul(&fac.value(&self.base))
            })
    }

    pub fn verify(&self) -> bool {
        self.product() == self.target
    }

    /// The certificate for `w target w^-1` over the base `w base w^-1`.
    pub fn conjugated_by(&self, w: &G) -> Self {
        ConjugateCertificate::new(
            self.base.conjugate_by(w),
            self.target.conjugate_by(w),
            self.factors
                .iter()
                .map(|f| CertFactor::new(f.conjugator.conjugate_by(w), f.sign))
                .collect(),
        )
    }
}

/// Standalone verifier, equivalent to [`ConjugateCertificate::verify`].
pub fn verify_certificate<G: GroupElement>(c: &ConjugateCertificate<G>) -> bool {
    c.verify()
}

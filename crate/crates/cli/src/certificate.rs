use conjwidth::displacement::verify_in_fprime;
use conjwidth::freeprod::Z2Z2Certificate;
use conjwidth::linear::{conjugators_in_sl, IntMatrix};
use conjwidth::thompson::PL2Map;
use conjwidth::ConjugateCertificate;
use serde::{Deserialize, Serialize};

/// Every certificate file the tool writes, tagged by ambient group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "group")]
pub enum AnyCertificate {
    #[serde(rename = "thompson_f")]
    Thompson(ConjugateCertificate<PL2Map>),
    #[serde(rename = "sl_z")]
    SlZ(ConjugateCertificate<IntMatrix>),
    #[serde(rename = "z2z2")]
    Z2Z2(Z2Z2Certificate),
}

impl AnyCertificate {
    pub fn group(&self) -> &'static str {
        match self {
            AnyCertificate::Thompson(_) => "thompson_f",
            AnyCertificate::SlZ(_) => "sl_z",
            AnyCertificate::Z2Z2(_) => "z2z2",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyCertificate::Thompson(c) => c.len(),
            AnyCertificate::SlZ(c) => c.len(),
            AnyCertificate::Z2Z2(c) => c.len(),
        }
    }

    /// Exact re-multiplication plus the membership checks on conjugators.
    pub fn verify(&self) -> bool {
        match self {
            AnyCertificate::Thompson(c) => verify_in_fprime(c),
            AnyCertificate::SlZ(c) => c.verify() && conjugators_in_sl(c),
            AnyCertificate::Z2Z2(c) => c.verify(),
        }
    }
}

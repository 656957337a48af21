//! f-commutators and displacement.
//!
//! For an element `f` of a group `G` and elements whose conjugates by
//! `f^0, ..., f^m` pairwise commute, products of commutators collapse into a
//! bounded number of f-commutators `u [f, g]^{±1} u^-1`. The identities are
//! realised with explicit witnesses and every result can be re-checked by
//! exact multiplication.

mod certificate;
mod fprime;

pub use certificate::{
    verify_certificate, CertFactor, ConjugateCertificate, Sign, CERTIFICATE_FORMAT_VERSION,
};
pub use fprime::{six_conjugates, verify_in_fprime, SixConjugates};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// A product of commutators `[a_1, b_1] ... [a_m, b_m]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CommutatorList<G> {
    pub pairs: Vec<(G, G)>,
}

impl<G: GroupElement> CommutatorList<G> {
    pub fn new(pairs: Vec<(G, G)>) -> Self {
        CommutatorList { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn commutators(&self) -> Vec<G> {
        self.pairs.iter().map(|(a, b)| a.commutator(b)).collect()
    }

    /// The product, with `ambient` supplying the identity for an empty list.
    pub fn value(&self, ambient: &G) -> G {
        self.commutators()
            .iter()
            .fold(ambient.identity_like(), |acc, c| acc.mul(c))
    }

    pub fn conjugated_by(&self, w: &G) -> Self {
        CommutatorList::new(
            self.pairs
                .iter()
                .map(|(a, b)| (a.conjugate_by(w), b.conjugate_by(w)))
                .collect(),
        )
    }

    pub fn entries(&self) -> impl Iterator<Item = &G> {
        self.pairs.iter().flat_map(|(a, b)| [a, b])
    }
}

/// `u [f, g]^sign u^-1` for the ambient `f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FCommutatorWitness<G> {
    pub u: G,
    pub g: G,
    pub sign: Sign,
}

impl<G: GroupElement> FCommutatorWitness<G> {
    pub fn value(&self, f: &G) -> G {
        self.sign
            .apply(&f.commutator(&self.g))
            .conjugate_by(&self.u)
    }

    pub fn inverse(&self) -> Self {
        FCommutatorWitness {
            u: self.u.clone(),
            g: self.g.clone(),
            sign: self.sign.flip(),
        }
    }

    /// The same witness seen after conjugating everything by `w`, i.e. for the
    /// element `w value w^-1`.
    pub fn left_translate(&self, w: &G) -> Self {
        FCommutatorWitness {
            u: w.mul(&self.u),
            g: self.g.clone(),
            sign: self.sign,
        }
    }
}

/// `[a, b] = X Y` with `X = a [f,b]^-1 a^-1` and `Y = [f,b]`, valid when `a`
/// commutes with `f b f^-1`.
pub fn two_f_commutators<G: GroupElement>(
    a: &G,
    b: &G,
    f: &G,
) -> Result<(FCommutatorWitness<G>, FCommutatorWitness<G>)> {
    if !a.commutes_with(&b.conjugate_by(f)) {
        return Err(Error::pre("a does not commute with f b f^-1"));
    }
    Ok((
        FCommutatorWitness {
            u: a.clone(),
            g: b.clone(),
            sign: Sign::Minus,
        },
        FCommutatorWitness {
            u: a.identity_like(),
            g: b.clone(),
            sign: Sign::Plus,
        },
    ))
}

/// Output of [`telescope`]: `value(cs) = [g, f] [a_prime, b_prime]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Telescoped<G> {
    pub g: G,
    pub a_prime: G,
    pub b_prime: G,
}

impl<G: GroupElement> Telescoped<G> {
    pub fn value(&self, f: &G) -> G {
        self.g
            .commutator(f)
            .mul(&self.a_prime.commutator(&self.b_prime))
    }
}

/// Checks that conjugates of the list entries by distinct powers
/// `f^0, ..., f^m` commute.
pub fn check_block_commutation<G: GroupElement>(cs: &CommutatorList<G>, f: &G) -> Result<()> {
    let m = cs.len();
    let entries: Vec<&G> = cs.entries().collect();
    let mut power = f.identity_like();
    let mut blocks: Vec<Vec<G>> = Vec::with_capacity(m + 1);
    for _ in 0..=m {
        blocks.push(entries.iter().map(|x| x.conjugate_by(&power)).collect());
        power = power.mul(f);
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for (p, x) in blocks[i].iter().enumerate() {
                for (q, y) in blocks[j].iter().enumerate() {
                    if !x.commutes_with(y) {
                        return Err(Error::pre(format!(
                            "blocks {i} and {j} do not commute (entries {p} and {q})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Rewrites a product of `m` commutators whose `f`-translates commute as one
/// f-commutator times one commutator.
///
/// With `c_i = [a_i, b_i]` and `h_i = c_{i+1} ... c_m`:
/// `g = ∏_{i<m} f^i h_i f^-i`, `A' = ∏_j f^j a_j f^-j`, `B' = ∏_j f^j b_j f^-j`.
pub fn telescope<G: GroupElement>(cs: &CommutatorList<G>, f: &G) -> Result<Telescoped<G>> {
    check_block_commutation(cs, f)?;
    Ok(telescope_unchecked(cs, f))
}

/// [`telescope`] without the commutation check; the caller vouches for it.
pub fn telescope_unchecked<G: GroupElement>(cs: &CommutatorList<G>, f: &G) -> Telescoped<G> {
    let id = f.identity_like();
    let cs_values = cs.commutators();
    let m = cs_values.len();
    // suffix products h_i = c_{i+1} ... c_m (1-based), stored for i = 0..m
    let mut suffix = vec![id.clone(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = cs_values[i].mul(&suffix[i + 1]);
    }
    let mut g = id.clone();
    let mut a_prime = id.clone();
    let mut b_prime = id.clone();
    let mut power = id;
    for i in 0..m {
        g = g.mul(&suffix[i].conjugate_by(&power));
        power = power.mul(f);
        let (a, b) = &cs.pairs[i];
        a_prime = a_prime.mul(&a.conjugate_by(&power));
        b_prime = b_prime.mul(&b.conjugate_by(&power));
    }
    Telescoped {
        g,
        a_prime,
        b_prime,
    }
}

/// Two commutators whose product is `value(cs)`: `[g, f]` and `[A', B']`.
pub fn commutator_length_two<G: GroupElement>(cs: &CommutatorList<G>, f: &G) -> Result<(G, G)> {
    let t = telescope(cs, f)?;
    Ok((t.g.commutator(f), t.a_prime.commutator(&t.b_prime)))
}

/// Splits an f-commutator into two conjugates of `f^{±1}`, using
/// `[f, g] = f · g f^-1 g^-1`.
pub fn fcommutator_to_conjugates<G: GroupElement>(w: &FCommutatorWitness<G>) -> [CertFactor<G>; 2] {
    let ug = w.u.mul(&w.g);
    match w.sign {
        Sign::Plus => [
            CertFactor::new(w.u.clone(), Sign::Plus),
            CertFactor::new(ug, Sign::Minus),
        ],
        Sign::Minus => [
            CertFactor::new(ug, Sign::Plus),
            CertFactor::new(w.u.clone(), Sign::Minus),
        ],
    }
}

/// Expands a product of f-commutator witnesses into a certificate over `f`.
pub fn certificate_from_witnesses<G: GroupElement>(
    f: &G,
    target: G,
    witnesses: &[FCommutatorWitness<G>],
) -> ConjugateCertificate<G> {
    let factors = witnesses
        .iter()
        .flat_map(fcommutator_to_conjugates)
        .collect();
    ConjugateCertificate::new(f.clone(), target, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finwidth::Perm;

    fn p(deg: usize, s: &str) -> Perm {
        Perm::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn two_f_commutators_in_permutations() {
        let a = p(10, "(1 2)");
        let b = p(10, "(1 2 3)");
        let f = p(10, "(1 4 7)(2 5 8)(3 6 9)");
        let (x, y) = two_f_commutators(&a, &b, &f).unwrap();
        assert_eq!(x.value(&f).mul(&y.value(&f)), a.commutator(&b));
        // without displacement the precondition fails
        assert!(two_f_commutators(&a, &b, &p(10, "(3 4)")).is_err());
    }

    #[test]
    fn two_f_commutators_abelian() {
        let c = p(5, "(0 1 2 3 4)");
        let (a, b, f) = (c.pow(2), c.pow(3), c.clone());
        let (x, y) = two_f_commutators(&a, &b, &f).unwrap();
        assert!(x.value(&f).is_identity() && y.value(&f).is_identity());
        assert!(a.commutator(&b).is_identity());
    }

    #[test]
    fn telescope_small_cases() {
        let f = p(6, "(0 3)(1 4)(2 5)");
        let empty: CommutatorList<Perm> = CommutatorList::new(vec![]);
        let t = telescope(&empty, &f).unwrap();
        assert!(t.g.is_identity() && t.a_prime.is_identity() && t.b_prime.is_identity());

        // m = 1 holds in any group, displaced or not
        let a = p(6, "(0 1)");
        let b = p(6, "(1 2 3)");
        let f = p(6, "(0 5 2)");
        let cs = CommutatorList::new(vec![(a.clone(), b.clone())]);
        let t = telescope_unchecked(&cs, &f);
        assert_eq!(t.g, a.commutator(&b));
        assert_eq!(t.a_prime, a.conjugate_by(&f));
        assert_eq!(t.value(&f), cs.value(&f));
    }

    #[test]
    fn telescope_m3_in_s12() {
        let f = p(12, "(0 3 6 9)(1 4 7 10)(2 5 8 11)");
        let cs = CommutatorList::new(vec![
            (p(12, "(0 1)"), p(12, "(1 2)")),
            (p(12, "(0 1 2)"), p(12, "(0 2)")),
            (p(12, "(1 2)"), p(12, "(0 1 2)")),
        ]);
        let t = telescope(&cs, &f).unwrap();
        assert_eq!(t.value(&f), cs.value(&f));
        let (c1, c2) = commutator_length_two(&cs, &f).unwrap();
        assert_eq!(c1.mul(&c2), cs.value(&f));
    }

    #[test]
    fn telescope_detects_missing_displacement() {
        // block 3 wraps onto block 0 when f has order 3
        let f = p(9, "(0 3 6)(1 4 7)(2 5 8)");
        let cs = CommutatorList::new(vec![
            (p(9, "(0 1)"), p(9, "(1 2)")),
            (p(9, "(0 1)"), p(9, "(0 2)")),
            (p(9, "(1 2)"), p(9, "(0 1)")),
        ]);
        assert!(telescope(&cs, &f).is_err());
    }

    #[test]
    fn fcommutator_expansion() {
        let f = p(4, "(0 1 2 3)");
        let id = f.identity_like();
        let w = FCommutatorWitness {
            u: id.clone(),
            g: id.clone(),
            sign: Sign::Plus,
        };
        let [x, y] = fcommutator_to_conjugates(&w);
        assert!(x.value(&f).mul(&y.value(&f)).is_identity());

        let g = p(4, "(0 1)");
        let w = FCommutatorWitness {
            u: id,
            g: g.clone(),
            sign: Sign::Plus,
        };
        let [x, y] = fcommutator_to_conjugates(&w);
        assert_eq!(x.value(&f), f);
        assert_eq!(y.value(&f), f.inverse().conjugate_by(&g));
        assert_eq!(x.value(&f).mul(&y.value(&f)), f.commutator(&g));

        let u = p(4, "(1 3)");
        for sign in [Sign::Plus, Sign::Minus] {
            let w = FCommutatorWitness {
                u: u.clone(),
                g: g.clone(),
                sign,
            };
            let [x, y] = fcommutator_to_conjugates(&w);
            assert_eq!(x.value(&f).mul(&y.value(&f)), w.value(&f));
            assert_eq!((x.sign, y.sign), (Sign::Plus, Sign::Minus));
        }
    }

    #[test]
    fn certificate_basics() {
        let f = p(4, "(0 1 2)");
        let id = f.identity_like();
        assert!(ConjugateCertificate::new(f.clone(), id.clone(), vec![]).verify());
        let single = ConjugateCertificate::new(
            f.clone(),
            f.clone(),
            vec![CertFactor::new(id.clone(), Sign::Plus)],
        );
        assert!(verify_certificate(&single));

        let w = FCommutatorWitness {
            u: p(4, "(2 3)"),
            g: p(4, "(0 3)"),
            sign: Sign::Plus,
        };
        let mut cert = certificate_from_witnesses(&f, w.value(&f), &[w]);
        assert!(cert.verify());
        cert.factors[1].sign = cert.factors[1].sign.flip();
        assert!(!cert.verify());
    }

    #[test]
    fn certificates_are_conjugation_invariant() {
        let f = p(5, "(0 1 2)");
        let ws = [
            FCommutatorWitness {
                u: p(5, "(3 4)"),
                g: p(5, "(0 3)"),
                sign: Sign::Plus,
            },
            FCommutatorWitness {
                u: p(5, "(0 4 1)"),
                g: p(5, "(2 3 4)"),
                sign: Sign::Minus,
            },
        ];
        let target = ws[0].value(&f).mul(&ws[1].value(&f));
        let cert = certificate_from_witnesses(&f, target, &ws);
        assert!(cert.verify());
        for w in ["(0 1)", "(0 1 2 3 4)", "(1 4)(2 3)"] {
            assert!(cert.conjugated_by(&p(5, w)).verify());
        }
    }
}

//! Every element of `F'` as a product of at most six conjugates of `f^{±1}`,
//! for any fixed nonidentity `f` in `F'`.

use super::{
    certificate_from_witnesses, telescope, telescope_unchecked, two_f_commutators, CommutatorList,
    ConjugateCertificate, FCommutatorWitness, Sign, Telescoped,
};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::thompson::{
    displaces_check, fixed_interval_analysis, in_commutator_subgroup, move_support_into, support,
    DisplacementData, PL2Map,
};

/// The certificate together with the intermediate objects of the
/// construction.
#[derive(Clone, Debug)]
pub struct SixConjugates {
    pub certificate: ConjugateCertificate<PL2Map>,
    /// `None` when the input list is empty.
    pub trace: Option<Trace>,
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub displacement: DisplacementData,
    /// Moves every commutator entry into `J`.
    pub rho: PL2Map,
    pub telescoped: Telescoped<PL2Map>,
    /// Moves `A'` and `B'` into `J`.
    pub c: PL2Map,
    /// Three f-commutators whose product is `h`.
    pub witnesses: Vec<FCommutatorWitness<PL2Map>>,
}

fn telescope_in_j(
    cs: &CommutatorList<PL2Map>,
    f: &PL2Map,
    data: &DisplacementData,
) -> Result<Telescoped<PL2Map>> {
    let inside = cs
        .entries()
        .all(|g| support(g).is_none_or(|s| data.j.contains(&s)));
    if inside && displaces_check(f, &data.j, cs.len()) {
        Ok(telescope_unchecked(cs, f))
    } else {
        telescope(cs, f)
    }
}

pub fn six_conjugates(h: &CommutatorList<PL2Map>, f: &PL2Map) -> Result<SixConjugates> {
    let data = fixed_interval_analysis(f)?;
    if h.entries().any(|g| !in_commutator_subgroup(g)) {
        return Err(Error::NotInFPrime);
    }
    let target = h.value(f);
    if h.is_empty() {
        return Ok(SixConjugates {
            certificate: ConjugateCertificate::new(f.clone(), target, vec![]),
            trace: None,
        });
    }

    let entries: Vec<PL2Map> = h.entries().cloned().collect();
    let rho = move_support_into(&entries, &data.j)?;
    let moved = h.conjugated_by(&rho);
    let telescoped = telescope_in_j(&moved, f, &data)?;

    let c = move_support_into(
        &[telescoped.a_prime.clone(), telescoped.b_prime.clone()],
        &data.j,
    )?;
    let a2 = telescoped.a_prime.conjugate_by(&c);
    let b2 = telescoped.b_prime.conjugate_by(&c);
    let (x, y) = two_f_commutators(&a2, &b2, f)?;
    let c_inv = c.inverse();

    // [g, f] = [f, g]^-1
    let first = FCommutatorWitness {
        u: f.identity_like(),
        g: telescoped.g.clone(),
        sign: Sign::Minus,
    };
    let rho_inv = rho.inverse();
    let witnesses: Vec<FCommutatorWitness<PL2Map>> =
        [first, x.left_translate(&c_inv), y.left_translate(&c_inv)]
            .into_iter()
            .map(|w| w.left_translate(&rho_inv))
            .collect();

    let nontrivial: Vec<FCommutatorWitness<PL2Map>> = witnesses
        .iter()
        .filter(|w| !w.g.is_identity())
        .cloned()
        .collect();
    let certificate = certificate_from_witnesses(f, target, &nontrivial);
    Ok(SixConjugates {
        certificate,
        trace: Some(Trace {
            displacement: data,
            rho,
            telescoped,
            c,
            witnesses,
        }),
    })
}

/// Exact verification plus the check that every conjugator lies in `F'`, so
/// each factor is a conjugate of `f^{±1}` inside `F'`.
pub fn verify_in_fprime(cert: &ConjugateCertificate<PL2Map>) -> bool {
    in_commutator_subgroup(&cert.base)
        && cert
            .factors
            .iter()
            .all(|fac| in_commutator_subgroup(&fac.conjugator))
        && cert.verify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::{bump, random_fprime, standard_generators};

    #[test]
    fn empty_list_gives_empty_certificate() {
        let out = six_conjugates(&CommutatorList::new(vec![]), &bump()).unwrap();
        assert!(out.certificate.is_empty());
        assert!(out.certificate.verify());
    }

    #[test]
    fn errors() {
        let cs = CommutatorList::new(vec![]);
        assert_eq!(
            six_conjugates(&cs, &PL2Map::identity()).unwrap_err(),
            Error::NonidentityRequired
        );
        let (x0, x1) = standard_generators();
        assert_eq!(six_conjugates(&cs, &x0).unwrap_err(), Error::NotInFPrime);
        let bad = CommutatorList::new(vec![(x0, x1)]);
        assert_eq!(
            six_conjugates(&bad, &bump()).unwrap_err(),
            Error::NotInFPrime
        );
    }

    #[test]
    fn single_commutator_with_bump() {
        let cs = CommutatorList::new(vec![(random_fprime(1, 2), random_fprime(2, 2))]);
        let out = six_conjugates(&cs, &bump()).unwrap();
        assert!(out.certificate.len() <= 6);
        assert!(verify_in_fprime(&out.certificate));
        assert_eq!(out.certificate.target, cs.value(&bump()));
        let trace = out.trace.unwrap();
        let product = trace
            .witnesses
            .iter()
            .fold(PL2Map::identity(), |acc, w| acc.compose(&w.value(&bump())));
        assert_eq!(product, cs.value(&bump()));
    }

    #[test]
    fn random_campaign() {
        for seed in 0..20u64 {
            let f = random_fprime(seed, 2);
            if f.is_identity() {
                continue;
            }
            let m = 1 + (seed as usize % 3);
            let pairs = (0..m)
                .map(|i| {
                    let s = 1000 + 10 * seed + i as u64;
                    (random_fprime(s, 1), random_fprime(s + 5000, 1))
                })
                .collect();
            let cs = CommutatorList::new(pairs);
            let out = six_conjugates(&cs, &f).unwrap();
            assert!(out.certificate.len() <= 6, "seed {seed}");
            assert!(verify_in_fprime(&out.certificate), "seed {seed}");
            if !cs.value(&f).is_identity() {
                assert_eq!(out.certificate.len(), 6, "seed {seed}");
            }
        }
    }
}

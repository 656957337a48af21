use conjwidth::displacement::{six_conjugates, two_f_commutators, verify_in_fprime};
use conjwidth::thompson::{
    bump, displaces_check, fixed_interval_analysis, in_commutator_subgroup, map_from_strs,
    random_fprime, standard_generators, support, PL2Map,
};
use conjwidth::{CommutatorList, Dyadic, Error, GroupElement};

fn pairs(seed: u64, n: u64, complexity: usize) -> CommutatorList<PL2Map> {
    CommutatorList::new(
        (0..n)
            .map(|i| {
                (
                    random_fprime(seed * 100 + 2 * i, complexity),
                    random_fprime(seed * 100 + 2 * i + 1, complexity),
                )
            })
            .collect(),
    )
}

#[test]
fn generators_satisfy_thompson_relations() {
    let (x0, x1) = standard_generators();
    let x2 = x1.conjugate_by(&x0.inverse());
    let x3 = x2.conjugate_by(&x0.inverse());
    let w = x0.mul(&x1.inverse());
    assert!(w.commutes_with(&x2));
    assert!(w.commutes_with(&x3));
    assert!(!x0.commutes_with(&x1));
    let c = x0.commutator(&x1);
    assert!(in_commutator_subgroup(&c));
    assert!(!in_commutator_subgroup(&x0));
}

#[test]
fn json_round_trip_preserves_maps() {
    for seed in 0..20 {
        let f = random_fprime(seed, 3);
        let s = f.to_json_string();
        assert_eq!(PL2Map::from_json_str(&s).unwrap(), f);
    }
    assert!(PL2Map::from_json_str(r#"[["0","0"],["1/3","1/3"],["1","1"]]"#).is_err());
    assert!(PL2Map::from_json_str(r#"[["0","0"],["1/2","3/4"],["1","1"]]"#).is_err());
}

#[test]
fn evaluation_matches_composition() {
    let f = random_fprime(4, 3);
    let g = random_fprime(5, 3);
    let fg = f.compose(&g);
    for k in 0..=16u32 {
        let x = Dyadic::new(k, 4);
        assert_eq!(fg.eval_dyadic(&x), f.eval_dyadic(&g.eval_dyadic(&x)));
        assert_eq!(f.inverse_eval_dyadic(&f.eval_dyadic(&x)), x);
    }
}

#[test]
fn displacement_data_for_bump() {
    let f = bump();
    let d = fixed_interval_analysis(&f).unwrap();
    assert!(displaces_check(&f, &d.j, 1));
    let s = support(&f).unwrap();
    assert!(s.contains(&d.j));
    assert!(matches!(
        fixed_interval_analysis(&PL2Map::identity()),
        Err(Error::NonidentityRequired)
    ));
}

#[test]
fn six_conjugates_end_to_end() {
    for seed in 0..8 {
        let f = random_fprime(9_000 + seed, 2);
        if f.is_identity_map() {
            continue;
        }
        let h = pairs(seed, 1 + seed % 3, 2);
        let out = six_conjugates(&h, &f).unwrap();
        let cert = &out.certificate;
        assert!(cert.len() <= 6);
        assert!(verify_in_fprime(cert));
        assert_eq!(cert.product(), h.value(&f));
        assert_eq!(cert.base, f);
    }
}

#[test]
fn six_conjugates_edge_cases() {
    let f = bump();
    let empty = six_conjugates(&CommutatorList::new(vec![]), &f).unwrap();
    assert!(empty.certificate.is_empty());
    assert!(empty.certificate.verify());

    let (x0, x1) = standard_generators();
    let outside = CommutatorList::new(vec![(x0.clone(), x1)]);
    assert!(matches!(
        six_conjugates(&outside, &f),
        Err(Error::NotInFPrime)
    ));
    assert!(matches!(
        six_conjugates(&pairs(1, 1, 2), &x0),
        Err(Error::NotInFPrime)
    ));

    // h equal to the identity still gets a valid certificate
    let g = random_fprime(77, 2);
    let trivial = CommutatorList::new(vec![(g.clone(), g)]);
    let out = six_conjugates(&trivial, &f).unwrap();
    assert!(out.certificate.verify());
    assert!(out.certificate.product().is_identity());
}

#[test]
fn two_f_commutators_on_disjoint_supports() {
    let a = map_from_strs(&[
        ("0", "0"),
        ("1/16", "1/16"),
        ("1/8", "3/32"),
        ("5/32", "1/8"),
        ("3/16", "3/16"),
        ("1", "1"),
    ]);
    let b = map_from_strs(&[
        ("0", "0"),
        ("13/16", "13/16"),
        ("7/8", "27/32"),
        ("29/32", "7/8"),
        ("15/16", "15/16"),
        ("1", "1"),
    ]);
    let f = bump();
    let (x, y) = two_f_commutators(&a, &b, &f).unwrap();
    assert_eq!(x.value(&f).mul(&y.value(&f)), a.commutator(&b));
}

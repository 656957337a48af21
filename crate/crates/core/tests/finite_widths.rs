use conjwidth::finwidth::{
    bergman_lemma_check, chain_from_action, chain_norm, class_closure, extension_bound_check,
    grow_balls, induced_metric, minimal_bergman_radius, named, trivlemma_bound_check, width,
    word_lengths, word_norm, ElemSet, FiniteAction, FiniteGroup, NormTable, NormViolation, Perm,
    SubgroupChain, DEFAULT_SIZE_LIMIT,
};
use conjwidth::Error;

fn set(g: &FiniteGroup, cycles: &[&str]) -> ElemSet {
    let perms: Vec<Perm> = cycles
        .iter()
        .map(|c| Perm::parse_cycles(g.degree(), c).unwrap())
        .collect();
    g.indices_of(&perms).unwrap()
}

#[test]
fn named_groups_have_expected_orders() {
    for (name, order) in [
        ("S3", 6),
        ("S4", 24),
        ("A4", 12),
        ("A5", 60),
        ("D4", 8),
        ("Z7", 7),
    ] {
        assert_eq!(named(name).unwrap().order(), order, "{name}");
    }
    assert!(named("Q8").is_err());
    let (deg, gens) = conjwidth::finwidth::named_group("S12").unwrap();
    assert!(matches!(
        FiniteGroup::closure_with_limit(deg, &gens, DEFAULT_SIZE_LIMIT),
        Err(Error::SizeGuard { .. })
    ));
}

#[test]
fn transposition_widths_of_symmetric_groups() {
    // every permutation of n points is a product of at most n-1 transpositions
    for (name, expect) in [("S3", 2), ("S4", 3), ("S5", 4)] {
        let g = named(name).unwrap();
        let s = class_closure(&g, &set(&g, &["(0 1)"])).unwrap();
        let r = width(&g, &s).unwrap();
        assert_eq!(r.width, expect, "{name}");
        assert_eq!(*r.ball_sizes.last().unwrap(), g.order());
        assert_eq!(r.ball(r.width).len(), g.order());
    }
}

#[test]
fn width_needs_a_generating_class() {
    let g = named("S4").unwrap();
    let s = class_closure(&g, &set(&g, &["(0 1)(2 3)"])).unwrap();
    assert!(matches!(width(&g, &s), Err(Error::NotGenerating)));
    assert!(word_lengths(&g, &set(&g, &["(0 1 2)"])).is_err());
}

#[test]
fn ball_growth_matches_enumeration() {
    let g = named("A5").unwrap();
    let gens: Vec<usize> = set(&g, &["(0 1 2)", "(0 1 2 3 4)"]).into_iter().collect();
    let balls = grow_balls(g.identity(), &gens, |a, b| g.mul(*a, *b), 1000).unwrap();
    assert_eq!(balls.ball_sizes.last().copied(), Some(60));
}

#[test]
fn trivial_bound_on_s4() {
    let g = named("S4").unwrap();
    let reps = set(&g, &["(0 1 2 3)"]);
    let s = class_closure(&g, &set(&g, &["(0 1)"])).unwrap();
    let r = trivlemma_bound_check(&g, &reps, &s).unwrap();
    assert!(r.holds);
    assert!(r.width_s <= r.n * r.p);
}

#[test]
fn bergman_on_s4() {
    let g = named("S4").unwrap();
    let h = g.subgroup(&set(&g, &["(0 1 2)", "(0 1)(2 3)"]));
    let mut u = set(&g, &["(0 1)", "(1 2)", "(2 3)"]);
    u.insert(g.identity());
    let lengths = word_lengths(&g, &u).unwrap();
    let n = minimal_bergman_radius(&g, &h, &lengths.lengths);
    let r = bergman_lemma_check(&g, &h, &u, n).unwrap();
    assert!(r.hypothesis && r.holds);
    assert_eq!(r.generated_order, 12);

    let asym = set(&g, &["(0 1 2)"]);
    assert!(bergman_lemma_check(&g, &h, &asym, 1).is_err());
    let not_sub = set(&g, &["(0 1)", "(1 2)"]);
    assert!(bergman_lemma_check(&g, &not_sub, &u, 1).is_err());
}

#[test]
fn extension_bound_on_s4_over_klein() {
    let g = named("S4").unwrap();
    let v4 = g.subgroup(&set(&g, &["(0 1)(2 3)", "(0 2)(1 3)"]));
    let u = class_closure(&g, &set(&g, &["(0 1 2 3)"])).unwrap();
    let r = extension_bound_check(&g, &v4, &u).unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.invariant_in_h);
    assert!(r.width_g <= r.bound.unwrap());
    assert!(extension_bound_check(&g, &g.subgroup(&set(&g, &["(0 1)"])), &u).is_err());
}

#[test]
fn norms_metrics_and_chains() {
    for name in ["S3", "S4", "D4"] {
        let g = named(name).unwrap();
        let gens: ElemSet = g.indices_of(g.generators()).unwrap();
        let s = class_closure(&g, &gens).unwrap();
        let norm = word_norm(&g, &s).unwrap();
        assert_eq!(norm.audit(&g), None, "{name}");
        let metric = induced_metric(&g, &norm).unwrap();
        assert_eq!(metric.audit(&g), None, "{name}");
        let action = FiniteAction::left_regular(&g, &metric);
        assert_eq!(action.isometry_violation(), None);
        let chain = chain_from_action(&g, &action, g.identity()).unwrap();
        assert!(chain.holds(), "{name}");
    }
}

#[test]
fn chain_norm_on_s4() {
    let g = named("S4").unwrap();
    let members = vec![
        [g.identity()].into_iter().collect(),
        g.subgroup(&set(&g, &["(0 1)(2 3)", "(0 2)(1 3)"])),
        g.subgroup(&set(&g, &["(0 1 2)", "(0 1)(2 3)"])),
        g.all(),
    ];
    let chain = SubgroupChain::checked(&g, members).unwrap();
    let l = chain_norm(&g, &chain);
    assert_eq!(l.audit(&g), None);
    assert_eq!(l.max_bound_violation(&g), None);
    assert_eq!(l.get(g.identity()), 0);

    let bad = vec![
        [g.identity()].into_iter().collect(),
        g.subgroup(&set(&g, &["(0 1)"])),
        g.all(),
    ];
    assert!(SubgroupChain::checked(&g, bad).is_err());
}

#[test]
fn norm_audit_reports_each_axiom() {
    let g = named("S3").unwrap();
    let t = set(&g, &["(0 1)"]).into_iter().next().unwrap();
    let c = set(&g, &["(0 1 2)"]).into_iter().next().unwrap();
    let mut v = vec![1u64; 6];
    v[g.identity()] = 0;
    assert_eq!(NormTable::new(&g, v.clone()).unwrap().audit(&g), None);

    let mut zero = v.clone();
    zero[t] = 0;
    assert!(matches!(
        NormTable::new(&g, zero).unwrap().audit(&g),
        Some(NormViolation::Definite { .. })
    ));
    let mut asym = v.clone();
    asym[c] = 2;
    assert!(matches!(
        NormTable::new(&g, asym).unwrap().audit(&g),
        Some(NormViolation::Symmetric { .. })
    ));
    let mut tri = v.clone();
    for x in set(&g, &["(0 1 2)", "(0 2 1)"]) {
        tri[x] = 5;
    }
    assert!(matches!(
        NormTable::new(&g, tri).unwrap().audit(&g),
        Some(NormViolation::Triangle { .. })
    ));
    let mut conj = v;
    conj[t] = 2;
    assert!(matches!(
        NormTable::new(&g, conj).unwrap().audit(&g),
        Some(NormViolation::ConjugationInvariant { .. })
    ));
    assert!(NormTable::new(&g, vec![0; 5]).is_err());
}

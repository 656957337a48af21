use serde::Serialize;

use super::cayley::grow_balls;
use super::group::{class_closure, ClassClosedSet, ElemSet, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub width: usize,
    pub ball_sizes: Vec<usize>,
    /// `lengths[g]`: least number of factors from `S ∪ S^-1` with product `g`.
    pub lengths: Vec<usize>,
}

impl WidthReport {
    /// Elements of length at most `k`.
    pub fn ball(&self, k: usize) -> ElemSet {
        (0..self.lengths.len())
            .filter(|&g| self.lengths[g] <= k)
            .collect()
    }
}

/// Word lengths with respect to an arbitrary subset, closed under inverses
/// before the search. Fails if the subset does not generate.
pub fn word_lengths(g: &FiniteGroup, s: &ElemSet) -> Result<WidthReport> {
    let mut steps: ElemSet = s.clone();
    steps.extend(s.iter().map(|&a| g.inv(a)));
    let steps: Vec<usize> = steps.into_iter().collect();
    let balls = grow_balls(g.identity(), &steps, |a, x| g.mul(*a, *x), usize::MAX)?;
    if balls.elements.len() != g.order() {
        return Err(Error::NotGenerating);
    }
    let mut lengths = vec![0; g.order()];
    for (e, l) in balls.elements.iter().zip(&balls.lengths) {
        lengths[*e] = *l;
    }
    Ok(WidthReport {
        width: balls.radius(),
        ball_sizes: balls.ball_sizes,
        lengths,
    })
}

/// `wid(G, S)`: the least `k` with `S^k = G`, where `S^k` is the set of
/// products of at most `k` elements.
pub fn width(g: &FiniteGroup, s: &ClassClosedSet) -> Result<WidthReport> {
    word_lengths(g, s.elements())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivLemmaReport {
    /// Width with respect to the union of the given classes.
    pub n: usize,
    /// Largest `S`-length of a class representative.
    pub p: usize,
    pub width_s: usize,
    pub holds: bool,
}

/// If finitely many classes generate `G` in `N` steps and every class
/// representative has `S`-length at most `p`, then `wid(G, S) <= pN`.
pub fn trivlemma_bound_check(
    g: &FiniteGroup,
    class_reps: &ElemSet,
    s: &ClassClosedSet,
) -> Result<TrivLemmaReport> {
    let classes = class_closure(g, class_reps)?;
    let n = width(g, &classes)?.width;
    let by_s = width(g, s)?;
    let p = class_reps
        .iter()
        .map(|&a| by_s.lengths[a])
        .max()
        .unwrap_or(0);
    Ok(TrivLemmaReport {
        n,
        p,
        width_s: by_s.width,
        holds: by_s.width <= p * n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BergmanReport {
    /// Every right coset `Hg` meets `U^n`.
    pub hypothesis: bool,
    pub subgroup_order: usize,
    /// Order of the subgroup generated by `H ∩ U^(2n+1)`.
    pub generated_order: usize,
    pub holds: bool,
}

/// Smallest `n` such that every right coset of `sub` meets the radius-`n` ball.
pub fn minimal_bergman_radius(g: &FiniteGroup, sub: &ElemSet, lengths: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    let mut radius = 0;
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let coset: Vec<usize> = sub.iter().map(|&h| g.mul(h, x)).collect();
        for &y in &coset {
            seen[y] = true;
        }
        radius = radius.max(coset.iter().map(|&y| lengths[y]).min().unwrap());
    }
    radius
}

/// Checks that `H = <H ∩ U^(2n+1)>` whenever every coset `Hg` meets `U^n`.
///
/// Powers of `U` are balls: `U^k` holds the products of at most `k` elements.
pub fn bergman_lemma_check(
    g: &FiniteGroup,
    sub: &ElemSet,
    u: &ElemSet,
    n: usize,
) -> Result<BergmanReport> {
    if !g.is_symmetric(u) {
        return Err(Error::pre("U is not symmetric"));
    }
    if !g.is_subgroup(sub) {
        return Err(Error::pre("H is not a subgroup"));
    }
    let lengths = word_lengths(g, u)?.lengths;
    let hypothesis = minimal_bergman_radius(g, sub, &lengths) <= n;
    let short: ElemSet = sub
        .iter()
        .copied()
        .filter(|&h| lengths[h] <= 2 * n + 1)
        .collect();
    let generated_order = g.subgroup(&short).len();
    Ok(BergmanReport {
        hypothesis,
        subgroup_order: sub.len(),
        generated_order,
        holds: generated_order == sub.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    /// `wid(G/H, f(U))`.
    pub n: usize,
    /// `wid(H, H ∩ U^(2n+1))`, `None` if that set fails to generate `H`.
    pub m: Option<usize>,
    pub width_g: usize,
    pub bound: Option<usize>,
    /// `H ∩ U^(2n+1)` is invariant under conjugation by `H`.
    pub invariant_in_h: bool,
    pub holds: bool,
}

/// Checks `wid(G, U) <= n + (2n+1) m` for a normal subgroup `H`.
pub fn extension_bound_check(
    g: &FiniteGroup,
    normal: &ElemSet,
    u: &ClassClosedSet,
) -> Result<ExtensionReport> {
    let quotient = g.quotient(normal)?;
    let image = ClassClosedSet::checked(&quotient.group, quotient.image(u.elements()))?;
    let n = width(&quotient.group, &image)?.width;

    let by_u = width(g, u)?;
    let short: ElemSet = normal
        .iter()
        .copied()
        .filter(|&h| by_u.lengths[h] <= 2 * n + 1)
        .collect();
    let invariant_in_h = normal
        .iter()
        .all(|&h| short.iter().all(|&x| short.contains(&g.conj(x, h))));

    let h_group = FiniteGroup::closure(g.degree(), &g.perms_of(&short))?;
    let m = if h_group.order() == normal.len() {
        let inside = h_group.indices_of(&g.perms_of(&short))?;
        Some(width(&h_group, &ClassClosedSet::checked(&h_group, inside)?)?.width)
    } else {
        None
    };
    let bound = m.map(|m| n + (2 * n + 1) * m);
    Ok(ExtensionReport {
        n,
        m,
        width_g: by_u.width,
        bound,
        invariant_in_h,
        holds: invariant_in_h && bound.is_some_and(|b| by_u.width <= b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finwidth::group::named;
    use crate::finwidth::Perm;

    fn p(deg: usize, s: &str) -> Perm {
        Perm::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn width_examples() {
        let trivial = FiniteGroup::closure(1, &[]).unwrap();
        let empty = ClassClosedSet::checked(&trivial, ElemSet::new()).unwrap();
        assert_eq!(width(&trivial, &empty).unwrap().width, 0);

        let s3 = named("S3").unwrap();
        let t = class_closure(&s3, &s3.indices_of(&[p(3, "(0 1)")]).unwrap()).unwrap();
        let report = width(&s3, &t).unwrap();
        assert_eq!(report.width, 2);
        assert_eq!(report.ball_sizes, vec![1, 4, 6]);
        let three_cycle = s3.index_of(&p(3, "(0 1 2)")).unwrap();
        assert_eq!(report.lengths[three_cycle], 2);

        let z5 = named("Z5").unwrap();
        let c = class_closure(&z5, &z5.indices_of(&[p(5, "(0 1 2 3 4)")]).unwrap()).unwrap();
        assert_eq!(width(&z5, &c).unwrap().width, 2);
    }

    #[test]
    fn width_requires_generation() {
        let s3 = named("S3").unwrap();
        let a3 = class_closure(&s3, &s3.indices_of(&[p(3, "(0 1 2)")]).unwrap()).unwrap();
        assert_eq!(width(&s3, &a3), Err(Error::NotGenerating));
    }

    #[test]
    fn ball_sizes_first_hit() {
        let s4 = named("S4").unwrap();
        for g in 1..s4.order() {
            let s = class_closure(&s4, &[g].into()).unwrap();
            let Ok(r) = width(&s4, &s) else { continue };
            assert_eq!(*r.ball_sizes.last().unwrap(), 24);
            assert!(r.ball_sizes.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(r.ball_sizes.len(), r.width + 1);
            assert!(r.ball(r.width - 1).len() < 24);
        }
    }

    #[test]
    fn trivlemma_examples() {
        let s3 = named("S3").unwrap();
        let t = s3.indices_of(&[p(3, "(0 1)")]).unwrap();
        let closed = class_closure(&s3, &t).unwrap();
        let r = trivlemma_bound_check(&s3, &t, &closed).unwrap();
        assert_eq!((r.p, r.n, r.width_s), (1, 2, 2));
        assert!(r.holds);

        let mut s = closed.elements().clone();
        s.extend(
            class_closure(&s3, &s3.indices_of(&[p(3, "(0 1 2)")]).unwrap())
                .unwrap()
                .elements(),
        );
        let s = ClassClosedSet::checked(&s3, s).unwrap();
        assert!(trivlemma_bound_check(&s3, &t, &s).unwrap().holds);

        let a5 = named("A5").unwrap();
        let c5 = a5.indices_of(&[p(5, "(0 1 2 3 4)")]).unwrap();
        for g in 1..a5.order() {
            let s = class_closure(&a5, &[g].into()).unwrap();
            assert!(trivlemma_bound_check(&a5, &c5, &s).unwrap().holds);
        }
    }

    #[test]
    fn bergman_examples() {
        let s4 = named("S4").unwrap();
        let all = s4.all();
        let a4: ElemSet = all
            .iter()
            .copied()
            .filter(|&i| s4.element(i).is_even())
            .collect();
        let r = bergman_lemma_check(&s4, &a4, &all, 1).unwrap();
        assert!(r.hypothesis && r.holds);

        let mut u = class_closure(&s4, &s4.indices_of(&[p(4, "(0 1)")]).unwrap())
            .unwrap()
            .elements()
            .clone();
        u.insert(s4.identity());
        let lengths = word_lengths(&s4, &u).unwrap().lengths;
        let n = minimal_bergman_radius(&s4, &a4, &lengths);
        assert_eq!(n, 1);
        let r = bergman_lemma_check(&s4, &a4, &u, n).unwrap();
        assert!(r.hypothesis && r.holds);

        let not_symmetric = s4.indices_of(&[p(4, "(0 1 2)")]).unwrap();
        assert!(bergman_lemma_check(&s4, &a4, &not_symmetric, 1).is_err());
    }

    #[test]
    fn extension_examples() {
        let s4 = named("S4").unwrap();
        let u = class_closure(&s4, &s4.indices_of(&[p(4, "(0 1)")]).unwrap()).unwrap();
        let r = extension_bound_check(&s4, &s4.all(), &u).unwrap();
        assert_eq!(r.n, 0);
        assert_eq!(r.bound, Some(r.width_g));
        assert!(r.holds);

        let a4: ElemSet = (0..24).filter(|&i| s4.element(i).is_even()).collect();
        let r = extension_bound_check(&s4, &a4, &u).unwrap();
        assert!(r.holds && r.invariant_in_h);
        assert_eq!(r.n, 1);

        let d4 = named("D4").unwrap();
        let rot = d4.subgroup(&d4.indices_of(&[p(4, "(0 1 2 3)")]).unwrap());
        assert_eq!(rot.len(), 4);
        let u = class_closure(
            &d4,
            &d4.indices_of(&[p(4, "(1 3)"), p(4, "(0 1)(2 3)")]).unwrap(),
        )
        .unwrap();
        assert!(extension_bound_check(&d4, &rot, &u).unwrap().holds);

        let not_normal = s4.subgroup(&s4.indices_of(&[p(4, "(0 1)")]).unwrap());
        let u = class_closure(&s4, &s4.indices_of(&[p(4, "(0 1)")]).unwrap()).unwrap();
        assert!(extension_bound_check(&s4, &not_normal, &u).is_err());
    }
}

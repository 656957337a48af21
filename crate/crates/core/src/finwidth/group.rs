use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::cayley::{grow_balls, DEFAULT_SIZE_LIMIT};
use super::perm::{Perm, PermSpec};
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// A set of elements of a [`FiniteGroup`], by index.
pub type ElemSet = BTreeSet<usize>;

/// A permutation group with all of its elements materialised.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl FiniteGroup {
    pub fn closure(degree: usize, generators: &[Perm]) -> Result<Self> {
        Self::closure_with_limit(degree, generators, DEFAULT_SIZE_LIMIT)
    }

    pub fn closure_with_limit(degree: usize, generators: &[Perm], limit: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Dimension(format!(
                "generator {g} is not of degree {degree}"
            )));
        }
        let balls = grow_balls(
            Perm::identity(degree),
            generators,
            |a, s| a.compose(s),
            limit,
        )?;
        let elements = balls.elements;
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(FiniteGroup {
            degree,
            generators: generators.to_vec(),
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn all(&self) -> ElemSet {
        (0..self.order()).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].invert()]
    }

    /// `h a h^-1`.
    pub fn conj(&self, a: usize, h: usize) -> usize {
        self.index[&self.elements[a].conjugate_by(&self.elements[h])]
    }

    /// Looks up permutations, failing if one lies outside the group.
    pub fn indices_of(&self, perms: &[Perm]) -> Result<ElemSet> {
        perms
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::pre(format!("{p} is not in the group")))
            })
            .collect()
    }

    pub fn perms_of(&self, set: &ElemSet) -> Vec<Perm> {
        set.iter().map(|&i| self.elements[i].clone()).collect()
    }

    /// The subgroup generated by `gens`, as an element set.
    pub fn subgroup(&self, gens: &ElemSet) -> ElemSet {
        let steps: Vec<usize> = gens.iter().copied().collect();
        let balls = grow_balls(self.identity(), &steps, |a, s| self.mul(*a, *s), usize::MAX)
            .expect("subgroup of a finite group");
        balls.elements.into_iter().collect()
    }

    pub fn conjugacy_class(&self, a: usize) -> ElemSet {
        (0..self.order()).map(|h| self.conj(a, h)).collect()
    }

    pub fn is_symmetric(&self, set: &ElemSet) -> bool {
        set.iter().all(|&a| set.contains(&self.inv(a)))
    }

    pub fn is_conjugation_invariant(&self, set: &ElemSet) -> bool {
        (0..self.order()).all(|h| set.iter().all(|&a| set.contains(&self.conj(a, h))))
    }

    pub fn is_normal(&self, sub: &ElemSet) -> bool {
        self.is_conjugation_invariant(sub)
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(&self.identity())
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn generates(&self, set: &ElemSet) -> bool {
        self.subgroup(set).len() == self.order()
    }

    /// Product set `A B`.
    pub fn product_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| self.mul(x, y)))
            .collect()
    }

    /// Left cosets `gH` of a subgroup, each element mapped to a coset id.
    /// Coset ids follow the order of first appearance.
    pub fn coset_table(&self, sub: &ElemSet) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in sub {
                coset_of[self.mul(g, h)] = id;
            }
        }
        (coset_of, reps)
    }

    /// The quotient by a normal subgroup, realised as the permutation action
    /// on left cosets, with the natural map from element indices.
    pub fn quotient(&self, normal: &ElemSet) -> Result<Quotient> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::pre("subgroup is not normal"));
        }
        let (coset_of, reps) = self.coset_table(normal);
        let k = reps.len();
        let image = |g: usize| -> Perm {
            Perm::from_images(reps.iter().map(|&r| coset_of[self.mul(g, r)]).collect())
                .expect("left multiplication permutes cosets")
        };
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|p| image(self.index[p]))
            .collect();
        let group = FiniteGroup::closure(k, &gens)?;
        let map = (0..self.order()).map(|g| group.index[&image(g)]).collect();
        Ok(Quotient { group, map })
    }
}

/// `G/H` together with the projection `G -> G/H` on element indices.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub map: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, set: &ElemSet) -> ElemSet {
        set.iter().map(|&g| self.map[g]).collect()
    }
}

/// A symmetric, conjugation-invariant subset of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassClosedSet {
    elements: ElemSet,
}

impl ClassClosedSet {
    /// Accepts `set` only if it is already symmetric and a union of classes.
    pub fn checked(g: &FiniteGroup, set: ElemSet) -> Result<Self> {
        if !g.is_symmetric(&set) {
            return Err(Error::pre("set is not closed under inverses"));
        }
        if !g.is_conjugation_invariant(&set) {
            return Err(Error::pre("set is not conjugation-invariant"));
        }
        Ok(ClassClosedSet { elements: set })
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Smallest symmetric conjugation-invariant superset of `s`.
pub fn class_closure(g: &FiniteGroup, s: &ElemSet) -> Result<ClassClosedSet> {
    if let Some(&bad) = s.iter().find(|&&a| a >= g.order()) {
        return Err(Error::pre(format!(
            "index {bad} is not an element of the group"
        )));
    }
    let mut out = ElemSet::new();
    for &a in s {
        out.extend(g.conjugacy_class(a));
        out.extend(g.conjugacy_class(g.inv(a)));
    }
    Ok(ClassClosedSet { elements: out })
}

/// Generator list of a permutation group, as found in group spec files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default)]
    pub named: Option<String>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub generators: Vec<PermSpec>,
}

impl GroupSpec {
    pub fn build(&self, limit: usize) -> Result<FiniteGroup> {
        if let Some(name) = &self.named {
            let (degree, gens) = named_group(name)?;
            return FiniteGroup::closure_with_limit(degree, &gens, limit);
        }
        let degree = self
            .degree
            .ok_or_else(|| Error::parse("group spec needs a degree"))?;
        let gens = self
            .generators
            .iter()
            .map(|p| p.resolve(degree))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::closure_with_limit(degree, &gens, limit)
    }
}

/// Standard generators: `S<n>`, `A<n>`, `D<n>` (order `2n`), `Z<n>`.
pub fn named_group(name: &str) -> Result<(usize, Vec<Perm>)> {
    let bad = || Error::parse(format!("unknown group name {name:?}"));
    let (kind, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let cycle = |pts: Vec<usize>, deg: usize| -> Perm {
        let mut images: Vec<usize> = (0..deg).collect();
        for (i, &x) in pts.iter().enumerate() {
            images[x] = pts[(i + 1) % pts.len()];
        }
        Perm::from_images(images).unwrap()
    };
    match kind {
        "S" => {
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(cycle(vec![0, 1], n));
            }
            if n >= 3 {
                gens.push(cycle((0..n).collect(), n));
            }
            Ok((n, gens))
        }
        "A" => {
            let gens = (2..n).map(|k| cycle(vec![0, 1, k], n)).collect();
            Ok((n, gens))
        }
        "D" => {
            if n < 3 {
                return Err(bad());
            }
            let rotation = cycle((0..n).collect(), n);
            let images: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            Ok((n, vec![rotation, Perm::from_images(images).unwrap()]))
        }
        "Z" => Ok((
            n,
            if n >= 2 {
                vec![cycle((0..n).collect(), n)]
            } else {
                vec![]
            },
        )),
        _ => Err(bad()),
    }
}

pub fn named(name: &str) -> Result<FiniteGroup> {
    let (degree, gens) = named_group(name)?;
    FiniteGroup::closure(degree, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Perm {
        Perm::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            FiniteGroup::closure(2, &[p(2, "(0 1)")]).unwrap().order(),
            2
        );
        assert_eq!(
            FiniteGroup::closure(3, &[p(3, "(0 1)"), p(3, "(0 1 2)")])
                .unwrap()
                .order(),
            6
        );
        assert_eq!(FiniteGroup::closure(3, &[]).unwrap().order(), 1);
        let err = FiniteGroup::closure_with_limit(6, &named_group("S6").unwrap().1, 100);
        assert!(matches!(err, Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn named_orders() {
        for (name, order) in [
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("D4", 8),
            ("Z5", 5),
        ] {
            assert_eq!(named(name).unwrap().order(), order, "{name}");
        }
        assert!(named("Q8").is_err());
    }

    #[test]
    fn class_closure_examples() {
        let s3 = named("S3").unwrap();
        let id: ElemSet = [s3.identity()].into();
        assert_eq!(class_closure(&s3, &id).unwrap().elements(), &id);

        let t = s3.indices_of(&[p(3, "(0 1)")]).unwrap();
        let closed = class_closure(&s3, &t).unwrap();
        let transpositions = s3
            .indices_of(&[p(3, "(0 1)"), p(3, "(0 2)"), p(3, "(1 2)")])
            .unwrap();
        assert_eq!(closed.elements(), &transpositions);

        let z5 = named("Z5").unwrap();
        let c = z5.indices_of(&[p(5, "(0 1 2 3 4)")]).unwrap();
        let closed = class_closure(&z5, &c).unwrap();
        let expected = z5
            .indices_of(&[p(5, "(0 1 2 3 4)"), p(5, "(0 4 3 2 1)")])
            .unwrap();
        assert_eq!(closed.elements(), &expected);

        assert!(class_closure(&s3, &[17].into()).is_err());
    }

    #[test]
    fn class_closed_sets_are_invariant() {
        let s4 = named("S4").unwrap();
        for g in 0..s4.order() {
            let closed = class_closure(&s4, &[g].into()).unwrap();
            assert!(ClassClosedSet::checked(&s4, closed.elements().clone()).is_ok());
        }
        let single = s4.indices_of(&[p(4, "(0 1)")]).unwrap();
        assert!(ClassClosedSet::checked(&s4, single).is_err());
    }

    #[test]
    fn quotient_s4_by_a4() {
        let s4 = named("S4").unwrap();
        let a4: ElemSet = (0..s4.order())
            .filter(|&i| s4.element(i).is_even())
            .collect();
        let q = s4.quotient(&a4).unwrap();
        assert_eq!(q.group.order(), 2);
        for a in 0..s4.order() {
            for b in 0..s4.order() {
                assert_eq!(q.map[s4.mul(a, b)], q.group.mul(q.map[a], q.map[b]));
            }
        }
        let not_normal = s4.subgroup(&s4.indices_of(&[p(4, "(0 1)")]).unwrap());
        assert!(s4.quotient(&not_normal).is_err());
    }
}

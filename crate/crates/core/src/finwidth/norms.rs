use serde::Serialize;

use super::group::{ClassClosedSet, ElemSet, FiniteGroup};
use super::width::width;
use crate::error::{Error, Result};

/// A function `L: G -> N` indexed like the elements of its group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct NormTable {
    values: Vec<u64>,
}

/// The first norm axiom that fails, with the elements involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum NormViolation {
    Definite { g: usize },
    Symmetric { g: usize },
    Triangle { g: usize, h: usize },
    ConjugationInvariant { g: usize, h: usize },
}

impl NormTable {
    pub fn new(g: &FiniteGroup, values: Vec<u64>) -> Result<Self> {
        if values.len() != g.order() {
            return Err(Error::Dimension(format!(
                "{} values for a group of order {}",
                values.len(),
                g.order()
            )));
        }
        Ok(NormTable { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, g: usize) -> u64 {
        self.values[g]
    }

    /// Exhaustive check of `L(g)=0 iff g=1`, `L(g^-1)=L(g)`,
    /// `L(gh) <= L(g)+L(h)` and `L(hgh^-1)=L(g)`.
    pub fn audit(&self, g: &FiniteGroup) -> Option<NormViolation> {
        let n = g.order();
        for a in 0..n {
            if (self.values[a] == 0) != (a == g.identity()) {
                return Some(NormViolation::Definite { g: a });
            }
            if self.values[g.inv(a)] != self.values[a] {
                return Some(NormViolation::Symmetric { g: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.values[g.mul(a, b)] > self.values[a] + self.values[b] {
                    return Some(NormViolation::Triangle { g: a, h: b });
                }
                if self.values[g.conj(a, b)] != self.values[a] {
                    return Some(NormViolation::ConjugationInvariant { g: a, h: b });
                }
            }
        }
        None
    }

    /// First pair with `L(ab) > max(L(a), L(b))`.
    pub fn max_bound_violation(&self, g: &FiniteGroup) -> Option<(usize, usize)> {
        let n = g.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.values[g.mul(a, b)] > self.values[a].max(self.values[b]))
    }
}

/// `L(g) = |g|_S`.
pub fn word_norm(g: &FiniteGroup, s: &ClassClosedSet) -> Result<NormTable> {
    let lengths = width(g, s)?.lengths;
    NormTable::new(g, lengths.into_iter().map(|l| l as u64).collect())
}

/// Increasing normal subgroups `{1} = N_0 <= ... <= N_r = G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupChain {
    members: Vec<ElemSet>,
}

impl SubgroupChain {
    pub fn checked(g: &FiniteGroup, members: Vec<ElemSet>) -> Result<Self> {
        let first = members.first().ok_or_else(|| Error::pre("empty chain"))?;
        if *first != ElemSet::from([g.identity()]) {
            return Err(Error::pre("N_0 must be the trivial subgroup"));
        }
        if *members.last().unwrap() != g.all() {
            return Err(Error::pre("last member of the chain must be G"));
        }
        for (k, n) in members.iter().enumerate() {
            if !g.is_subgroup(n) || !g.is_normal(n) {
                return Err(Error::pre(format!("N_{k} is not a normal subgroup")));
            }
        }
        if let Some(k) = members.windows(2).position(|w| !w[0].is_subset(&w[1])) {
            return Err(Error::pre(format!("N_{k} is not contained in N_{}", k + 1)));
        }
        Ok(SubgroupChain { members })
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }
}

/// `L(g) = min { k : g in N_k }`.
pub fn chain_norm(g: &FiniteGroup, chain: &SubgroupChain) -> NormTable {
    let values = (0..g.order())
        .map(|a| chain.members.iter().position(|n| n.contains(&a)).unwrap() as u64)
        .collect();
    NormTable { values }
}

/// `d(a, b) = L(ab^-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MetricTable {
    d: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum MetricViolation {
    ZeroIffEqual { a: usize, b: usize },
    Symmetric { a: usize, b: usize },
    Triangle { a: usize, b: usize, c: usize },
    LeftInvariant { g: usize, a: usize, b: usize },
    ConjugateDisplacement { a: usize, g: usize, h: usize },
}

impl MetricTable {
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.d[a][b]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.d
    }

    /// Exhaustive check of the metric axioms, left invariance and
    /// `d(a, ghg^-1 a) = d(a, ha)`.
    pub fn audit(&self, g: &FiniteGroup) -> Option<MetricViolation> {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                if (self.d[a][b] == 0) != (a == b) {
                    return Some(MetricViolation::ZeroIffEqual { a, b });
                }
                if self.d[a][b] != self.d[b][a] {
                    return Some(MetricViolation::Symmetric { a, b });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.d[a][c] > self.d[a][b] + self.d[b][c] {
                        return Some(MetricViolation::Triangle { a, b, c });
                    }
                    let (x, y) = (b, c);
                    if self.d[g.mul(a, x)][g.mul(a, y)] != self.d[x][y] {
                        return Some(MetricViolation::LeftInvariant { g: a, a: x, b: y });
                    }
                    let (gg, h) = (b, c);
                    let lhs = self.d[a][g.mul(g.conj(h, gg), a)];
                    if lhs != self.d[a][g.mul(h, a)] {
                        return Some(MetricViolation::ConjugateDisplacement { a, g: gg, h });
                    }
                }
            }
        }
        None
    }
}

pub fn induced_metric(g: &FiniteGroup, norm: &NormTable) -> Result<MetricTable> {
    if let Some(v) = norm.audit(g) {
        return Err(Error::pre(format!("input is not a norm: {v:?}")));
    }
    let n = g.order();
    let d = (0..n)
        .map(|a| (0..n).map(|b| norm.get(g.mul(a, g.inv(b)))).collect())
        .collect();
    Ok(MetricTable { d })
}

/// An action of a finite group on a finite metric space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    /// `act[g][x]` is the image of point `x` under element `g`.
    pub act: Vec<Vec<usize>>,
    pub dist: Vec<Vec<u64>>,
}

impl FiniteAction {
    /// `G` acting on itself by left multiplication.
    pub fn left_regular(g: &FiniteGroup, metric: &MetricTable) -> Self {
        let n = g.order();
        let act = (0..n)
            .map(|a| (0..n).map(|x| g.mul(a, x)).collect())
            .collect();
        FiniteAction {
            act,
            dist: metric.rows().to_vec(),
        }
    }

    /// Every element fixes every point.
    pub fn trivial(g: &FiniteGroup, dist: Vec<Vec<u64>>) -> Self {
        let points = dist.len();
        FiniteAction {
            act: vec![(0..points).collect(); g.order()],
            dist,
        }
    }

    pub fn points(&self) -> usize {
        self.dist.len()
    }

    /// First `(g, x, y)` with `d(gx, gy) != d(x, y)`.
    pub fn isometry_violation(&self) -> Option<(usize, usize, usize)> {
        let p = self.points();
        for (g, row) in self.act.iter().enumerate() {
            for x in 0..p {
                for y in 0..p {
                    if self.dist[row[x]][row[y]] != self.dist[x][y] {
                        return Some((g, x, y));
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionChain {
    /// `sets[n] = { g : d(a, ga) <= n }` for `n = 0..=m`.
    pub sets: Vec<ElemSet>,
    pub m: usize,
    pub orbit_diameter: u64,
    pub symmetric: bool,
    pub conjugation_invariant: bool,
    /// `U_n U_n` is contained in `U_{2n}` for every `n`.
    pub products_contained: bool,
}

impl ActionChain {
    pub fn holds(&self) -> bool {
        self.symmetric
            && self.conjugation_invariant
            && self.products_contained
            && self.orbit_diameter <= 2 * self.m as u64
    }
}

/// Builds the sets `U_n` from the displacement of a basepoint.
///
/// Fails with a witness `(g, h)` when `d(a, ghg^-1 a) != d(a, ha)`.
pub fn chain_from_action(
    g: &FiniteGroup,
    action: &FiniteAction,
    basepoint: usize,
) -> Result<ActionChain> {
    if action.act.len() != g.order() || basepoint >= action.points() {
        return Err(Error::Dimension("action does not match the group".into()));
    }
    if let Some((x, p, q)) = action.isometry_violation() {
        return Err(Error::pre(format!(
            "element {x} is not an isometry on ({p}, {q})"
        )));
    }
    let a = basepoint;
    let disp = |x: usize| action.dist[a][action.act[x][a]];
    for gg in 0..g.order() {
        for h in 0..g.order() {
            if disp(g.conj(h, gg)) != disp(h) {
                return Err(Error::pre(format!(
                    "d(a, ghg^-1 a) != d(a, ha) at a={a}, g={gg}, h={h}"
                )));
            }
        }
    }
    let m = (0..g.order()).map(disp).max().unwrap_or(0) as usize;
    let sets: Vec<ElemSet> = (0..=m)
        .map(|n| (0..g.order()).filter(|&x| disp(x) <= n as u64).collect())
        .collect();
    let symmetric = sets.iter().all(|u| g.is_symmetric(u));
    let conjugation_invariant = sets.iter().all(|u| g.is_conjugation_invariant(u));
    let products_contained = sets
        .iter()
        .enumerate()
        .all(|(n, u)| g.product_set(u, u).is_subset(&sets[(2 * n).min(m)]));
    let orbit: Vec<usize> = (0..g.order()).map(|x| action.act[x][a]).collect();
    let orbit_diameter = orbit
        .iter()
        .flat_map(|&p| orbit.iter().map(move |&q| (p, q)))
        .map(|(p, q)| action.dist[p][q])
        .max()
        .unwrap_or(0);
    Ok(ActionChain {
        sets,
        m,
        orbit_diameter,
        symmetric,
        conjugation_invariant,
        products_contained,
    })
}

use super::geometry::{in_commutator_subgroup, support, DyadicInterval};
use super::{segment_slope, PL2Map, Point};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// An increasing PL map between two dyadic intervals with dyadic breakpoints
/// and power-of-two slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFragment {
    pub points: Vec<Point>,
}

impl PlFragment {
    pub fn domain(&self) -> (&Dyadic, &Dyadic) {
        (&self.points[0].0, &self.points.last().unwrap().0)
    }

    pub fn slopes(&self) -> Option<Vec<i64>> {
        self.points
            .windows(2)
            .map(|w| segment_slope(&w[0], &w[1]))
            .collect()
    }
}

/// Splits `[p, q]` greedily into standard dyadic intervals `[a 2^-k, (a+1) 2^-k]`
/// and returns their length exponents `k`.
fn standard_pieces(p: &Dyadic, q: &Dyadic) -> Vec<u32> {
    let mut out = Vec::new();
    let mut x = p.clone();
    while x < *q {
        let mut k = x.exp();
        loop {
            let len = Dyadic::new(1, k);
            if &x + &len <= *q {
                x = &x + &len;
                out.push(k);
                break;
            }
            k += 1;
        }
    }
    out
}

/// Halves the largest piece until `pieces` has `target` entries.
fn refine_to(pieces: &mut Vec<u32>, target: usize) {
    while pieces.len() < target {
        let (i, &k) = pieces.iter().enumerate().min_by_key(|&(_, k)| *k).unwrap();
        pieces[i] = k + 1;
        pieces.insert(i + 1, k + 1);
    }
}

fn cumulative(start: &Dyadic, pieces: &[u32]) -> Vec<Dyadic> {
    let mut xs = vec![start.clone()];
    for &k in pieces {
        let next = xs.last().unwrap() + &Dyadic::new(1, k);
        xs.push(next);
    }
    xs
}

/// A PL map `[p, q] -> [r, s]` sending `p` to `r` and `q` to `s`: both
/// intervals are cut into the same number of standard dyadic pieces, which
/// are then matched in order.
pub fn pl2_interval_map(p: &Dyadic, q: &Dyadic, r: &Dyadic, s: &Dyadic) -> Result<PlFragment> {
    if p >= q || r >= s {
        return Err(Error::pre(format!(
            "degenerate interval [{p}, {q}] -> [{r}, {s}]"
        )));
    }
    let mut src = standard_pieces(p, q);
    let mut dst = standard_pieces(r, s);
    let n = src.len().max(dst.len());
    refine_to(&mut src, n);
    refine_to(&mut dst, n);
    let xs = cumulative(p, &src);
    let ys = cumulative(r, &dst);
    let mut points: Vec<Point> = Vec::with_capacity(n + 1);
    let mut last_slope: Option<i64> = None;
    for (x, y) in xs.into_iter().zip(ys) {
        if let Some(prev) = points.last() {
            let k = segment_slope(prev, &(x.clone(), y.clone())).expect("matched dyadic pieces");
            if last_slope == Some(k) {
                points.pop();
            }
            last_slope = Some(k);
        }
        points.push((x, y));
    }
    Ok(PlFragment { points })
}

fn check_tuple(name: &str, t: &[Dyadic]) -> Result<()> {
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    if t.iter().any(|x| *x <= zero || *x >= one) {
        return Err(Error::pre(format!("{name} must lie strictly inside (0,1)")));
    }
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::pre(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// An element `rho` of `F'` with `rho(xs[i]) = ys[i]`.
///
/// Guard points `u = 2^-k` below both tuples and `v = 1 - 2^-k` above them
/// are fixed, and `rho` is the identity outside `[u, v]`.
pub fn tuple_conjugator(xs: &[Dyadic], ys: &[Dyadic]) -> Result<PL2Map> {
    if xs.len() != ys.len() {
        return Err(Error::pre("tuples have different lengths"));
    }
    check_tuple("xs", xs)?;
    check_tuple("ys", ys)?;
    if xs.is_empty() {
        return Ok(PL2Map::identity());
    }
    let lowest = xs[0].clone().min(ys[0].clone());
    let highest = xs.last().unwrap().clone().max(ys.last().unwrap().clone());
    let one = Dyadic::one();
    let u = (1u32..)
        .map(|k| Dyadic::new(1, k))
        .find(|u| *u < lowest)
        .unwrap();
    let v = (1u32..)
        .map(|k| &one - &Dyadic::new(1, k))
        .find(|v| *v > highest)
        .unwrap();

    let mut src = vec![u.clone()];
    src.extend_from_slice(xs);
    src.push(v.clone());
    let mut dst = vec![u.clone()];
    dst.extend_from_slice(ys);
    dst.push(v);

    let mut points: Vec<Point> = vec![(Dyadic::zero(), Dyadic::zero())];
    for i in 0..src.len() - 1 {
        let frag = pl2_interval_map(&src[i], &src[i + 1], &dst[i], &dst[i + 1])?;
        // fragment endpoints coincide with neighbours; skip duplicates
        points.extend(frag.points.into_iter().skip(if i == 0 { 0 } else { 1 }));
    }
    points.push((one.clone(), one));
    PL2Map::from_points(points)
}

/// An element `rho` of `F'` such that every `rho g rho^-1` is supported in the
/// open interval `j`.
pub fn move_support_into(gs: &[PL2Map], j: &DyadicInterval) -> Result<PL2Map> {
    if gs.iter().any(|g| !in_commutator_subgroup(g)) {
        return Err(Error::NotInFPrime);
    }
    let hull = gs.iter().filter_map(support).reduce(|a, b| {
        DyadicInterval::new(
            a.lo().clone().min(b.lo().clone()),
            a.hi().clone().max(b.hi().clone()),
        )
        .expect("hull of valid intervals")
    });
    let Some(hull) = hull else {
        return Ok(PL2Map::identity());
    };
    if j.contains_strictly(&hull) {
        return Ok(PL2Map::identity());
    }
    let width = j.hi() - j.lo();
    let t1 = j.lo() + &width.mul_pow2(-2);
    let t2 = j.lo() + &(&width.mul_pow2(-1) + &width.mul_pow2(-2));
    let rho = tuple_conjugator(&[hull.lo().clone(), hull.hi().clone()], &[t1, t2])?;
    debug_assert!(gs
        .iter()
        .all(|g| support(&g.conjugate_by(&rho)).is_none_or(|s| j.contains_strictly(&s))));
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::{bump, random_fprime};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    /// Checks a fragment without reusing the construction: endpoints, slope
    /// audit and monotonicity.
    fn audit(frag: &PlFragment, p: &str, q: &str, r: &str, s: &str) {
        assert_eq!(frag.points[0], (d(p), d(r)));
        assert_eq!(*frag.points.last().unwrap(), (d(q), d(s)));
        let slopes = frag.slopes().expect("power-of-two slopes");
        assert!(slopes.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn interval_map_examples() {
        let f = pl2_interval_map(&d("0"), &d("1"), &d("0"), &d("1")).unwrap();
        assert_eq!(f.points.len(), 2);
        assert_eq!(f.slopes().unwrap(), vec![0]);

        let f = pl2_interval_map(&d("0"), &d("1/2"), &d("0"), &d("1/4")).unwrap();
        assert_eq!(f.slopes().unwrap(), vec![-1]);

        let f = pl2_interval_map(&d("1/4"), &d("3/4"), &d("3/8"), &d("7/16")).unwrap();
        audit(&f, "1/4", "3/4", "3/8", "7/16");

        assert!(pl2_interval_map(&d("1/2"), &d("1/2"), &d("0"), &d("1")).is_err());
    }

    #[test]
    fn interval_map_awkward_lengths() {
        let cases = [
            ("1/8", "7/8", "3/64", "5/32"),
            ("3/16", "5/8", "1/2", "1023/1024"),
            ("0", "3/4", "1/1024", "3/1024"),
        ];
        for (p, q, r, s) in cases {
            let f = pl2_interval_map(&d(p), &d(q), &d(r), &d(s)).unwrap();
            audit(&f, p, q, r, s);
        }
    }

    #[test]
    fn tuple_conjugator_examples() {
        let xs = [d("1/4"), d("3/4")];
        let rho = tuple_conjugator(&xs, &xs).unwrap();
        assert!(xs.iter().all(|x| rho.eval_dyadic(x) == *x));

        let rho = tuple_conjugator(&xs, &[d("3/8"), d("7/16")]).unwrap();
        assert_eq!(rho.eval_dyadic(&d("1/4")), d("3/8"));
        assert_eq!(rho.eval_dyadic(&d("3/4")), d("7/16"));
        assert!(in_commutator_subgroup(&rho));

        let rho = tuple_conjugator(&[d("1/2")], &[d("1/2")]).unwrap();
        assert_eq!(rho.eval_dyadic(&d("1/2")), d("1/2"));
        assert!(in_commutator_subgroup(&rho));
    }

    #[test]
    fn tuple_conjugator_errors() {
        assert!(tuple_conjugator(&[d("1/2")], &[]).is_err());
        assert!(tuple_conjugator(&[d("1/2"), d("1/4")], &[d("1/8"), d("1/4")]).is_err());
        assert!(tuple_conjugator(&[d("0")], &[d("1/2")]).is_err());
        assert!(tuple_conjugator(&[d("1/2")], &[d("1")]).is_err());
    }

    #[test]
    fn tuple_conjugator_many_points() {
        let xs = vec![d("1/64")];
        let ys = vec![d("63/64")];
        let rho = tuple_conjugator(&xs, &ys).unwrap();
        assert_eq!(rho.eval_dyadic(&xs[0]), ys[0]);
        assert!(in_commutator_subgroup(&rho));

        let xs = [d("1/16"), d("1/8"), d("1/2"), d("11/16"), d("31/32")];
        let ys = [d("1/1024"), d("3/8"), d("13/32"), d("7/16"), d("15/32")];
        let rho = tuple_conjugator(&xs, &ys).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(rho.eval_dyadic(x), *y);
        }
        assert!(in_commutator_subgroup(&rho));
    }

    #[test]
    fn move_support_examples() {
        let j = DyadicInterval::new(d("3/8"), d("1/2")).unwrap();
        assert!(move_support_into(&[PL2Map::identity()], &j)
            .unwrap()
            .is_identity());

        let wide = DyadicInterval::new(d("1/16"), d("15/16")).unwrap();
        let rho = move_support_into(&[bump()], &wide).unwrap();
        assert!(wide.contains_strictly(&support(&bump().conjugate_by(&rho)).unwrap()));

        let a = random_fprime(3, 2).commutator(&random_fprime(4, 2));
        let b = random_fprime(5, 2).commutator(&random_fprime(6, 2));
        let rho = move_support_into(&[a.clone(), b.clone()], &j).unwrap();
        for g in [a, b] {
            if let Some(s) = support(&g.conjugate_by(&rho)) {
                assert!(j.contains(&s));
            }
        }

        let (x0, _) = crate::thompson::standard_generators();
        assert_eq!(move_support_into(&[x0], &j), Err(Error::NotInFPrime));
    }

    #[test]
    fn move_support_random() {
        for seed in 0..30 {
            let gs = [random_fprime(seed, 2), random_fprime(seed + 1000, 1)];
            let j = DyadicInterval::new(d("5/16"), d("11/32")).unwrap();
            let rho = move_support_into(&gs, &j).unwrap();
            assert!(in_commutator_subgroup(&rho));
            for g in &gs {
                if let Some(s) = support(&g.conjugate_by(&rho)) {
                    assert!(j.contains_strictly(&s), "seed {seed}");
                }
            }
        }
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::displacement::{CertFactor, ConjugateCertificate, Sign};
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// A square integer matrix, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

/// One entry in JSON: a number when it fits in `i64`, else a decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(x: &BigInt) -> Self {
        x.to_i64()
            .map_or_else(|| JsonInt::Big(x.to_string()), JsonInt::Small)
    }

    fn into_big(self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Big(s) => s
                .parse::<BigInt>()
                .map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

mod json_bigint {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        x: &BigInt,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        JsonInt::from_big(x).serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigInt, D::Error> {
        JsonInt::deserialize(d)?
            .into_big()
            .map_err(serde::de::Error::custom)
    }
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row {r} has length {}, expected {n}",
                rows[r].len()
            )));
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul_matrix(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * &rhs.entries[k * n + j];
                }
            }
        }
        IntMatrix { n, entries }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        let mut a = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, m: &BigInt) {
        let n = self.n;
        for c in 0..n {
            let v = &self.entries[source * n + c] * m;
            self.entries[target * n + c] += v;
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| self.entries[(k % n) * n + k / n].clone())
            .collect();
        IntMatrix { n, entries }
    }

    fn check_sl(&self) -> Result<()> {
        let det = self.determinant();
        if !det.is_one() {
            return Err(Error::Determinant(det.to_string()));
        }
        Ok(())
    }
}

impl GroupElement for IntMatrix {
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_matrix(rhs)
    }

    /// Exact inverse; panics unless the determinant is `±1`.
    fn inverse(&self) -> Self {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self.get(i, j).clone())
                        } else {
                            BigRational::from_integer(BigInt::from((j - n == i) as i32))
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let r = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .expect("matrix is singular");
            a.swap(c, r);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let factor = a[r][c].clone();
                    for j in 0..2 * n {
                        let v = &a[c][j] * &factor;
                        a[r][j] -= v;
                    }
                }
            }
        }
        let entries = a
            .into_iter()
            .flat_map(|row| row.into_iter().skip(n))
            .map(|x| {
                assert!(x.is_integer(), "inverse is not integral");
                x.to_integer()
            })
            .collect();
        IntMatrix { n, entries }
    }

    fn identity_like(&self) -> Self {
        IntMatrix::identity(self.n)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInt>> = self
            .entries
            .chunks(self.n)
            .map(|r| r.iter().map(JsonInt::from_big).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<JsonInt>>::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(JsonInt::into_big)
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        IntMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// An elementary transvection `t_ij(m)` with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elementary {
    pub i: usize,
    pub j: usize,
    #[serde(with = "json_bigint")]
    pub m: BigInt,
}

impl Elementary {
    pub fn matrix(&self, n: usize) -> IntMatrix {
        transvection(n, self.i, self.j, self.m.clone()).expect("valid elementary factor")
    }
}

fn check_indices(n: usize, idx: &[usize]) -> Result<()> {
    if let Some(&x) = idx.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::pre(format!("index {x} out of range 1..={n}")));
    }
    for (a, x) in idx.iter().enumerate() {
        if idx[a + 1..].contains(x) {
            return Err(Error::pre(format!(
                "indices {idx:?} are not pairwise distinct"
            )));
        }
    }
    Ok(())
}

/// `t_ij(m) = I + m E_ij`, indices 1-based.
pub fn transvection(n: usize, i: usize, j: usize, m: impl Into<BigInt>) -> Result<IntMatrix> {
    check_indices(n, &[i, j])?;
    let mut t = IntMatrix::identity(n);
    t.entries[(i - 1) * n + (j - 1)] = m.into();
    Ok(t)
}

/// Checks `t_ij(m) = [t_ik(1), t_kj(m)]` by exact multiplication.
pub fn commutator_identity_check(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    m: impl Into<BigInt>,
) -> Result<bool> {
    check_indices(n, &[i, j, k])?;
    let m = m.into();
    let lhs = transvection(n, i, j, m.clone())?;
    let rhs = transvection(n, i, k, 1)?.commutator(&transvection(n, k, j, m)?);
    Ok(lhs == rhs)
}

/// Number of conjugates of `t_12(1)^{±1}` needed for `t_ij(m)`.
fn certificate_cost(es: &[Elementary]) -> usize {
    es.iter()
        .map(|e| match e.m.magnitude() {
            x if x.is_zero() => 0,
            x if x.is_one() => 1,
            _ => 2,
        })
        .sum()
}

/// Writes `M` as a product of elementary transvections, left to right.
///
/// Row reduction by the Euclidean algorithm is run on `M`, its transpose,
/// its inverse and the inverse transpose; the factorization with the
/// shortest certificate is kept.
pub fn elementary_factorize(m: &IntMatrix) -> Result<Vec<Elementary>> {
    let n = m.dim();
    if n < 3 {
        return Err(Error::Dimension(format!("n = {n}, need n >= 3")));
    }
    m.check_sl()?;
    let swap = |e: Elementary| Elementary {
        i: e.j,
        j: e.i,
        m: e.m,
    };
    let negate = |e: Elementary| Elementary {
        i: e.i,
        j: e.j,
        m: -e.m,
    };
    let inv = m.inverse();

    let direct = row_reduce(m);
    let from_transpose: Vec<Elementary> = row_reduce(&m.transpose())
        .into_iter()
        .rev()
        .map(swap)
        .collect();
    let from_inverse: Vec<Elementary> = row_reduce(&inv).into_iter().rev().map(negate).collect();
    let from_inverse_transpose: Vec<Elementary> = row_reduce(&inv.transpose())
        .into_iter()
        .map(|e| negate(swap(e)))
        .collect();

    Ok(
        [direct, from_transpose, from_inverse, from_inverse_transpose]
            .into_iter()
            .min_by_key(|es| (certificate_cost(es), es.len()))
            .unwrap(),
    )
}

/// Euclidean row reduction of a determinant-1 matrix, one column at a time;
/// a pivot of `-1` is turned into `1` with three row additions through the
/// next row.
fn row_reduce(m: &IntMatrix) -> Vec<Elementary> {
    let n = m.dim();
    let mut a = m.clone();
    // Row operations applied to `a`, as 0-based (target, source, multiple).
    let mut ops: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut apply = |a: &mut IntMatrix, t: usize, s: usize, k: BigInt| {
        if !k.is_zero() {
            a.add_row_multiple(t, s, &k);
            ops.push((t, s, k));
        }
    };

    for c in 0..n {
        loop {
            let nonzero: Vec<usize> = (c..n).filter(|&r| !a.get(r, c).is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&r| a.get(r, c).abs()).unwrap();
            for &r in &nonzero {
                if r != p {
                    let q = a.get(r, c).div_floor(a.get(p, c));
                    apply(&mut a, r, p, -q);
                }
            }
        }
        let p = (c..n)
            .find(|&r| !a.get(r, c).is_zero())
            .expect("determinant 1 forces a pivot");
        if p != c {
            apply(&mut a, c, p, BigInt::one());
            let v = a.get(p, c).clone();
            let piv = a.get(c, c).clone();
            apply(&mut a, p, c, -(v / piv));
        }
        if a.get(c, c) == &BigInt::from(-1) {
            let s = c + 1;
            apply(&mut a, s, c, BigInt::one());
            apply(&mut a, c, s, BigInt::from(-2));
            apply(&mut a, s, c, BigInt::one());
        }
        debug_assert!(a.get(c, c).is_one());
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let v = a.get(r, c).clone();
            apply(&mut a, r, c, -v);
        }
    }
    debug_assert_eq!(a, IntMatrix::identity(n));

    // E_k ... E_1 M = I, so M = E_1^-1 ... E_k^-1.
    ops.into_iter()
        .map(|(t, s, k)| Elementary {
            i: t + 1,
            j: s + 1,
            m: -k,
        })
        .collect()
}

/// `t_12(1)`, the base of every certificate in this module.
pub fn base_transvection(n: usize) -> IntMatrix {
    transvection(n, 1, 2, 1).expect("n >= 2")
}

/// A signed permutation matrix of determinant 1 with `P e_1 = e_a` and
/// `P e_2 = e_b`, so that `P t_12(1) P^-1 = t_ab(1)`. Needs a third
/// coordinate to absorb the sign.
pub fn transvection_conjugator(n: usize, a: usize, b: usize) -> Result<IntMatrix> {
    if n < 3 {
        return Err(Error::Dimension(format!("n = {n}, need n >= 3")));
    }
    check_indices(n, &[a, b])?;
    let mut targets = vec![a - 1, b - 1];
    targets.extend((0..n).filter(|&x| x != a - 1 && x != b - 1));
    let mut p = IntMatrix {
        n,
        entries: vec![BigInt::zero(); n * n],
    };
    for (col, &row) in targets.iter().enumerate() {
        p.entries[row * n + col] = BigInt::one();
    }
    if p.determinant().is_negative() {
        let row = targets[n - 1];
        p.entries[row * n + n - 1] = BigInt::from(-1);
    }
    Ok(p)
}

/// `t_ij(m)` as a product of at most two conjugates of `t_12(1)^{±1}`.
pub fn transvection_as_t_conjugates(
    n: usize,
    i: usize,
    j: usize,
    m: impl Into<BigInt>,
) -> Result<ConjugateCertificate<IntMatrix>> {
    if n < 3 {
        return Err(Error::Dimension(format!("n = {n}, need n >= 3")));
    }
    let m = m.into();
    let target = transvection(n, i, j, m.clone())?;
    let base = base_transvection(n);
    let factors = if m.is_zero() {
        vec![]
    } else if m.abs().is_one() {
        let sign = if m.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        vec![CertFactor::new(transvection_conjugator(n, i, j)?, sign)]
    } else {
        let k = (1..=n).find(|&k| k != i && k != j).unwrap();
        let p = transvection_conjugator(n, i, k)?;
        let tkj = transvection(n, k, j, m)?;
        vec![
            CertFactor::new(p.clone(), Sign::Plus),
            CertFactor::new(tkj.mul(&p), Sign::Minus),
        ]
    };
    Ok(ConjugateCertificate::new(base, target, factors))
}

/// Concatenates the per-transvection certificates of an elementary
/// factorization of `M`.
pub fn matrix_as_t_conjugates(m: &IntMatrix) -> Result<ConjugateCertificate<IntMatrix>> {
    let n = m.dim();
    let mut factors = Vec::new();
    for e in elementary_factorize(m)? {
        factors.extend(transvection_as_t_conjugates(n, e.i, e.j, e.m)?.factors);
    }
    Ok(ConjugateCertificate::new(
        base_transvection(n),
        m.clone(),
        factors,
    ))
}

/// Every conjugator has determinant 1, so each factor is a conjugate of
/// `t_12(1)^{±1}` inside `SL_n(Z)`.
pub fn conjugators_in_sl(cert: &ConjugateCertificate<IntMatrix>) -> bool {
    cert.factors
        .iter()
        .all(|f| f.conjugator.determinant().is_one())
}

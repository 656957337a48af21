use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finwidth::{grow_balls, Balls};
use crate::group::GroupElement;

/// A square matrix over `F_p`, stored row-major with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: usize,
    p: u32,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ModMatrixJson {
    p: u32,
    rows: Vec<Vec<i64>>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::pre(format!("{p} is not prime")))
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat
    let mut acc: u64 = 1;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl ModMatrix {
    pub fn identity(n: usize, p: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % p;
        }
        ModMatrix { n, p, entries }
    }

    /// Entries are reduced mod `p`; negative values are allowed.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u32)
            .collect();
        Ok(ModMatrix { n, p, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul_matrix(&self, rhs: &ModMatrix) -> ModMatrix {
        assert!(self.n == rhs.n && self.p == rhs.p, "shape mismatch");
        let (n, p) = (self.n, self.p as u64);
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n)
                    .map(|k| self.entries[i * n + k] as u64 * rhs.entries[k * n + j] as u64)
                    .sum();
                entries[i * n + j] = (s % p) as u32;
            }
        }
        ModMatrix {
            n,
            p: self.p,
            entries,
        }
    }

    pub fn determinant(&self) -> u32 {
        let (n, p) = (self.n, self.p as u64);
        let mut a: Vec<Vec<u64>> = self
            .entries
            .chunks(n)
            .map(|r| r.iter().map(|&x| x as u64).collect())
            .collect();
        let mut det: u64 = 1;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if r != c {
                a.swap(r, c);
                det = (p - det) % p;
            }
            det = det * a[c][c] % p;
            let inv = inv_mod(a[c][c] as u32, self.p) as u64;
            for r in c + 1..n {
                let f = a[r][c] * inv % p;
                for j in c..n {
                    a[r][j] = (a[r][j] + p * p - f * a[c][j]) % p;
                }
            }
        }
        det as u32
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, k: u32) {
        let (n, p) = (self.n, self.p as u64);
        for c in 0..n {
            let v = self.entries[target * n + c] as u64
                + k as u64 * self.entries[source * n + c] as u64;
            self.entries[target * n + c] = (v % p) as u32;
        }
    }

    /// `I + v w^T`.
    pub fn rank_one_update(p: u32, v: &[u32], w: &[u32]) -> Self {
        let n = v.len();
        let mut m = ModMatrix::identity(n, p);
        for i in 0..n {
            for j in 0..n {
                let e = m.entries[i * n + j] as u64 + v[i] as u64 * w[j] as u64;
                m.entries[i * n + j] = (e % p as u64) as u32;
            }
        }
        m
    }

    /// `M - I` has rank one and squares to zero.
    pub fn is_transvection(&self) -> bool {
        let n = self.n;
        let mut d = self.clone();
        for i in 0..n {
            d.entries[i * n + i] = (d.entries[i * n + i] + self.p - 1) % self.p;
        }
        if d.entries.iter().all(|&x| x == 0) {
            return false;
        }
        let rank_one = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|l| {
                        let lhs = d.get(i, j) as u64 * d.get(k, l) as u64;
                        let rhs = d.get(i, l) as u64 * d.get(k, j) as u64;
                        lhs % self.p as u64 == rhs % self.p as u64
                    })
                })
            })
        });
        rank_one && d.mul_matrix(&d).entries.iter().all(|&x| x == 0)
    }
}

impl GroupElement for ModMatrix {
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_matrix(rhs)
    }

    /// Gauss-Jordan inverse; panics on a singular matrix.
    fn inverse(&self) -> Self {
        let (n, p) = (self.n, self.p);
        let mut a = self.clone();
        let mut inv = ModMatrix::identity(n, p);
        for c in 0..n {
            let r = (c..n)
                .find(|&r| a.get(r, c) != 0)
                .expect("matrix is singular");
            if r != c {
                a.add_row_multiple(c, r, 1);
                inv.add_row_multiple(c, r, 1);
            }
            let s = inv_mod(a.get(c, c), p);
            for j in 0..n {
                a.entries[c * n + j] = (a.entries[c * n + j] as u64 * s as u64 % p as u64) as u32;
                inv.entries[c * n + j] =
                    (inv.entries[c * n + j] as u64 * s as u64 % p as u64) as u32;
            }
            for r in (0..n).filter(|&r| r != c) {
                let k = (p - a.get(r, c)) % p;
                a.add_row_multiple(r, c, k);
                inv.add_row_multiple(r, c, k);
            }
        }
        inv
    }

    fn identity_like(&self) -> Self {
        ModMatrix::identity(self.n, self.p)
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.rows(), self.p)
    }
}

impl Serialize for ModMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self
            .entries
            .chunks(self.n)
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        ModMatrixJson { p: self.p, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ModMatrixJson::deserialize(d)?;
        ModMatrix::from_rows(j.p, &j.rows).map_err(serde::de::Error::custom)
    }
}

/// `t_ij(a)` over `F_p`, 0-based indices.
fn field_elementary(n: usize, p: u32, i: usize, j: usize, a: u32) -> ModMatrix {
    let mut t = ModMatrix::identity(n, p);
    t.entries[i * n + j] = a % p;
    t
}

/// Writes `M` in `SL_n(F_p)` as a product of transvections, left to right,
/// by Gaussian elimination with row additions.
pub fn field_transvection_factorize(m: &ModMatrix) -> Result<Vec<ModMatrix>> {
    let (n, p) = (m.dim(), m.modulus());
    let det = m.determinant();
    if det != 1 {
        return Err(Error::Determinant(format!("{det} mod {p}")));
    }
    let mut a = m.clone();
    let mut ops: Vec<(usize, usize, u32)> = Vec::new();
    let mut apply = |a: &mut ModMatrix, t: usize, s: usize, k: u32| {
        let k = k % p;
        if k != 0 {
            a.add_row_multiple(t, s, k);
            ops.push((t, s, k));
        }
    };
    for c in 0..n {
        if a.get(c, c) == 0 {
            let r = (c + 1..n)
                .find(|&r| a.get(r, c) != 0)
                .expect("nonzero determinant");
            apply(&mut a, c, r, 1);
        }
        let inv = inv_mod(a.get(c, c), p) as u64;
        for r in c + 1..n {
            let f = (a.get(r, c) as u64 * inv % p as u64) as u32;
            apply(&mut a, r, c, p - f);
        }
        let piv = a.get(c, c);
        if piv != 1 {
            // Only the last pivot is forced to be 1, so a spare row exists.
            let s = c + 1;
            let one_minus = (1 + p - piv) % p;
            apply(&mut a, s, c, (one_minus as u64 * inv % p as u64) as u32);
            apply(&mut a, c, s, 1);
            apply(&mut a, s, c, p - one_minus);
        }
        debug_assert_eq!(a.get(c, c), 1);
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let v = a.get(r, c);
            apply(&mut a, r, c, p - v);
        }
    }
    debug_assert_eq!(a, ModMatrix::identity(n, p));
    Ok(ops
        .into_iter()
        .map(|(t, s, k)| field_elementary(n, p, t, s, p - k))
        .collect())
}

/// All transvections `I + v phi^T` with `phi(v) = 0` in `SL_n(F_p)`.
pub fn all_transvections(n: usize, p: u32) -> Result<Vec<ModMatrix>> {
    check_prime(p)?;
    let count = (p as u128)
        .checked_pow(n as u32)
        .filter(|&c| c <= 1 << 20)
        .ok_or(Error::SizeGuard {
            size: (p as u128).saturating_pow(n as u32),
            limit: 1 << 20,
        })? as usize;
    let vectors: Vec<Vec<u32>> = (1..count)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    for v in &vectors {
        for w in &vectors {
            let dot: u64 = v.iter().zip(w).map(|(&a, &b)| a as u64 * b as u64).sum();
            if dot.is_multiple_of(p as u64) {
                out.insert(ModMatrix::rank_one_update(p, v, w));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `|SL_n(F_p)| = p^(n(n-1)/2) * prod_{k=2..n} (p^k - 1)`, saturating.
pub fn sl_order(n: usize, p: u32) -> u128 {
    let p = p as u128;
    let mut order = p.saturating_pow((n * (n - 1) / 2) as u32);
    for k in 2..=n {
        order = order.saturating_mul(p.saturating_pow(k as u32) - 1);
    }
    order
}

#[derive(Clone, Debug, Serialize)]
pub struct FpWidthReport {
    pub width: usize,
    pub ball_sizes: Vec<usize>,
    #[serde(skip)]
    pub balls: Balls<ModMatrix>,
}

/// `wid(SL_n(F_p), T)` for `T` the set of all transvections, by breadth-first
/// search over the whole group.
pub fn bfs_width_fp(n: usize, p: u32, limit: usize) -> Result<FpWidthReport> {
    check_prime(p)?;
    if n < 2 {
        return Err(Error::Dimension(format!("n = {n}, need n >= 2")));
    }
    let order = sl_order(n, p);
    if order > limit as u128 {
        return Err(Error::SizeGuard { size: order, limit });
    }
    let t = all_transvections(n, p)?;
    let balls = grow_balls(ModMatrix::identity(n, p), &t, |a, b| a.mul_matrix(b), limit)?;
    assert_eq!(
        balls.elements.len() as u128,
        order,
        "transvections generate SL_n(F_p)"
    );
    Ok(FpWidthReport {
        width: balls.radius(),
        ball_sizes: balls.ball_sizes.clone(),
        balls,
    })
}

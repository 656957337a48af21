use std::fmt::Debug;

/// Exact group arithmetic. Elements carry enough shape information (degree,
/// dimension, factor orders) to produce the identity of their own group.
pub trait GroupElement: Clone + PartialEq + Debug {
    fn mul(&self, rhs: &Self) -> Self;

    fn inverse(&self) -> Self;

    fn identity_like(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `h * self * h^-1`.
    fn conjugate_by(&self, h: &Self) -> Self {
        h.mul(self).mul(&h.inverse())
    }

    /// `[self, other] = self * other * self^-1 * other^-1`.
    fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = self.identity_like();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }
}

/// Left-to-right product of a sequence; `identity` is returned for an empty
/// sequence.
pub fn product<'a, G: GroupElement + 'a>(
    identity: &G,
    items: impl IntoIterator<Item = &'a G>,
) -> G {
    items
        .into_iter()
        .fold(identity.identity_like(), |acc, x| acc.mul(x))
}

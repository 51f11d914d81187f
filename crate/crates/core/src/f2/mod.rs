//! Arithmetic over the two-element field: mod-2 binomials, formal sums,
//! packed matrices and dimension counts for free commutative algebras.

mod combination;
mod matrix;
mod series;

pub use combination::F2Combination;
pub use matrix::{F2Matrix, F2Vector, GradedMatrix};
pub use series::{free_commutative_dims, GeneratorCounts};

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// An element of the field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl From<Bit> for bool {
    fn from(b: Bit) -> Self {
        b.0
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Bit {
    type Output = Bit;
    fn add(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Bit {
    fn add_assign(&mut self, rhs: Bit) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Bit {
    type Output = Bit;
    fn mul(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

/// `C(n, k) mod 2`, by Lucas' theorem: odd iff the bits of `k` are a
/// submask of the bits of `n`. Zero when `k > n`.
pub fn binom_mod2(n: u64, k: u64) -> Bit {
    Bit(k <= n && (k & !n) == 0)
}

/// Signed variant used by formulas whose arguments may go negative;
/// any negative argument gives zero.
pub fn binom_mod2_signed(n: i64, k: i64) -> Bit {
    if n < 0 || k < 0 {
        Bit::ZERO
    } else {
        binom_mod2(n as u64, k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Pascal's triangle mod 2, rows 0..=max.
    fn pascal_rows(max: usize) -> Vec<Vec<bool>> {
        let mut rows: Vec<Vec<bool>> = vec![vec![true]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = vec![false; n + 1];
            row[0] = true;
            row[n] = true;
            for k in 1..n {
                row[k] = prev[k - 1] ^ prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn spec_examples() {
        assert_eq!(binom_mod2(3, 1), Bit::ONE);
        assert_eq!(binom_mod2(4, 2), Bit::ZERO);
        assert_eq!(binom_mod2(7, 0), Bit::ONE);
        assert_eq!(binom_mod2(2, 5), Bit::ZERO);
    }

    #[test]
    fn agrees_with_pascal_triangle() {
        let rows = pascal_rows(1024);
        for (n, row) in rows.iter().enumerate() {
            for k in 0..=n + 3 {
                let expected = row.get(k).copied().unwrap_or(false);
                assert_eq!(
                    binom_mod2(n as u64, k as u64).is_one(),
                    expected,
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn signed_negative_is_zero() {
        assert_eq!(binom_mod2_signed(-1, 0), Bit::ZERO);
        assert_eq!(binom_mod2_signed(3, -2), Bit::ZERO);
        assert_eq!(binom_mod2_signed(5, 1), Bit::ONE);
    }

    #[test]
    fn field_ops() {
        assert_eq!(Bit::ONE + Bit::ONE, Bit::ZERO);
        assert_eq!(Bit::ONE * Bit::ZERO, Bit::ZERO);
        assert_eq!(Bit::ONE * Bit::ONE, Bit::ONE);
    }

    proptest! {
        #[test]
        fn pascal_recurrence(n in 1u64..=(1 << 16), k in 1u64..=(1 << 16)) {
            prop_assert_eq!(binom_mod2(n, k), binom_mod2(n - 1, k - 1) + binom_mod2(n - 1, k));
        }
    }
}

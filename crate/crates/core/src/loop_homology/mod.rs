//! Graded models of `H_*(Q_0(Y_+))` for `Y` a point, `BO_1` or `BO_2`.
//!
//! `H_*(Q_0(Y_+))` is polynomial on the classes `Q^I(x) * [-2^{l(I)}]` with
//! `x` running over a basis of `H_*(Y)`, `I` admissible and `e(I) > |x|`.
//! Generators are always reported in the zero component; the translation is
//! implicit in [`QGenerator`].

mod hopf;

pub use hopf::{HopfBasis, HopfElement, HopfError, HopfModel, Monomial, Tensor, Tensor3};

use std::fmt;

use crate::dyer_lashof::{admissible_sequences, Excess, OpSequence};
use crate::f2::{binom_mod2_signed, F2Combination, F2Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseSpace {
    Point,
    Bo1,
    Bo2,
}

impl BaseSpace {
    pub fn name(self) -> &'static str {
        match self {
            BaseSpace::Point => "s0",
            BaseSpace::Bo1 => "bo1",
            BaseSpace::Bo2 => "bo2",
        }
    }
}

impl fmt::Display for BaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis class of `H_*(Y)`.
///
/// `B(i, j)` is the image `d_*(e_i ⊗ e_j)` under `BO_1 × BO_1 → BO_2`,
/// always stored with `i <= j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseClass {
    Unit,
    E(u32),
    B(u32, u32),
}

impl BaseClass {
    pub fn b(i: u32, j: u32) -> Self {
        BaseClass::B(i.min(j), i.max(j))
    }

    pub fn degree(self) -> u32 {
        match self {
            BaseClass::Unit => 0,
            BaseClass::E(m) => m,
            BaseClass::B(i, j) => i + j,
        }
    }

    pub fn space(self) -> BaseSpace {
        match self {
            BaseClass::Unit => BaseSpace::Point,
            BaseClass::E(_) => BaseSpace::Bo1,
            BaseClass::B(..) => BaseSpace::Bo2,
        }
    }

    /// The coproduct of `H_*(Y)`, as the list of pairs `x' ⊗ x''`.
    ///
    /// `e_m` is dual to `x^m` in `H^*(BO_1) = F_2[x]`, so every splitting
    /// occurs once; the `BO_2` coproduct is pushed forward along `d`.
    pub fn coproduct(self) -> F2Combination<(BaseClass, BaseClass)> {
        match self {
            BaseClass::Unit => F2Combination::single((BaseClass::Unit, BaseClass::Unit)),
            BaseClass::E(m) => (0..=m)
                .map(|p| (BaseClass::E(p), BaseClass::E(m - p)))
                .collect(),
            BaseClass::B(i, j) => {
                let mut out = F2Combination::zero();
                for p in 0..=i {
                    for r in 0..=j {
                        out.add_term((BaseClass::b(p, r), BaseClass::b(i - p, j - r)));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseClass::Unit => write!(f, "[1]"),
            BaseClass::E(m) => write!(f, "e_{m}"),
            BaseClass::B(i, j) => write!(f, "b_{{{i},{j}}}"),
        }
    }
}

/// A polynomial generator `Q^I(x)` of `H_*(Q(Y_+))`, with `I` admissible and
/// `e(I) > |x|`. As an element of the zero component it stands for
/// `Q^I(x) * [-2^{l(I)}]`.
///
/// Ordered canonically by `|x|`, then `x`, then `I` lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QGenerator {
    pub ops: OpSequence,
    pub base: BaseClass,
}

impl QGenerator {
    pub fn new(ops: impl Into<OpSequence>, base: BaseClass) -> Self {
        let g = Self {
            ops: ops.into(),
            base,
        };
        debug_assert!(g.is_valid(), "not a generator: {g}");
        g
    }

    pub fn is_valid(&self) -> bool {
        self.ops.is_admissible() && self.ops.excess().exceeds(self.base.degree())
    }

    pub fn degree(&self) -> u32 {
        self.ops.degree() + self.base.degree()
    }

    /// Component `2^{l(I)}` in which `Q^I(x)` naturally lives.
    pub fn natural_component(&self) -> i64 {
        1i64 << self.ops.len()
    }

    fn sort_key(&self) -> (u32, BaseClass, &OpSequence) {
        (self.base.degree(), self.base, &self.ops)
    }
}

impl PartialOrd for QGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QGenerator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for QGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ops.entries() {
            [] => write!(f, "{}", self.base),
            [s] => write!(f, "Q^{s}({})", self.base),
            _ => write!(f, "Q^{}({})", self.ops, self.base),
        }
    }
}

impl fmt::Debug for QGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Basis of `H_n(Y)`.
pub fn base_basis(space: BaseSpace, n: u32) -> Vec<BaseClass> {
    match space {
        BaseSpace::Point => {
            if n == 0 {
                vec![BaseClass::Unit]
            } else {
                vec![]
            }
        }
        BaseSpace::Bo1 => vec![BaseClass::E(n)],
        BaseSpace::Bo2 => (0..=n / 2).map(|i| BaseClass::B(i, n - i)).collect(),
    }
}

/// Checks that `{b_{i,j} : i <= j, i + j = n}` is a basis of `H_n(BO_2)` by
/// pairing against the monomials `w_1^a w_2^b` of `H^n(BO_2)`.
///
/// With `d^*(w_1) = x + y` and `d^*(w_2) = xy`, the pairing is the
/// coefficient of `x^i y^j` in `(x+y)^a (xy)^b`, namely `C(a, i - b)`.
pub fn verify_bo2_basis(n: u32) -> bool {
    bo2_pairing_matrix(n).rank() == (n / 2 + 1) as usize
}

pub fn bo2_pairing_matrix(n: u32) -> F2Matrix {
    let homology: Vec<(u32, u32)> = (0..=n / 2).map(|i| (i, n - i)).collect();
    let cohomology: Vec<(u32, u32)> = (0..=n / 2).map(|b| (n - 2 * b, b)).collect();
    let mut m = F2Matrix::zeros(homology.len(), cohomology.len());
    for (r, &(i, _)) in homology.iter().enumerate() {
        for (c, &(a, b)) in cohomology.iter().enumerate() {
            let entry = binom_mod2_signed(i64::from(a), i64::from(i) - i64::from(b));
            m.set(r, c, entry.is_one());
        }
    }
    m
}

/// All polynomial generators of `H_n(Q_0(Y_+))`, `n >= 1`, in canonical order.
pub fn q_generators(space: BaseSpace, n: u32) -> Vec<QGenerator> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for m in 0..=n {
        for x in base_basis(space, m) {
            if m == n {
                out.push(QGenerator {
                    ops: OpSequence::empty(),
                    base: x,
                });
            } else {
                out.extend(
                    admissible_sequences(n - m, m)
                        .into_iter()
                        .map(|ops| QGenerator { ops, base: x }),
                );
            }
        }
    }
    out
}

/// How an admissible `Q^K` acts on a class of degree `|x|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unstable {
    /// `e(K) < |x|`.
    Zero,
    /// `e(K) = |x|`: `Q^K x = (Q^{K'} x)^2` with `K'` the tail of `K`.
    Square,
    /// `e(K) > |x|`: a polynomial generator.
    Generator,
}

/// Classifies `Q^K(x)` for admissible `K` by the instability rules
/// `Q^s y = 0` for `s < |y|` and `Q^{|y|} y = y^2`.
pub fn eval_unstable(k: &OpSequence, x_degree: u32) -> Unstable {
    debug_assert!(k.is_admissible(), "{k} is not admissible");
    match k.excess() {
        Excess::Infinite => Unstable::Generator,
        Excess::Finite(e) => match e.cmp(&i64::from(x_degree)) {
            std::cmp::Ordering::Less => Unstable::Zero,
            std::cmp::Ordering::Equal => Unstable::Square,
            std::cmp::Ordering::Greater => Unstable::Generator,
        },
    }
}

/// Dual Steenrod operation on `H_*(BO_1)`: `Sq^s_*(e_b) = C(b-s, s) e_{b-s}`.
pub fn sq_lower(s: u32, b: u32) -> F2Combination<BaseClass> {
    if s > b {
        return F2Combination::zero();
    }
    if binom_mod2_signed(i64::from(b - s), i64::from(s)).is_one() {
        F2Combination::single(BaseClass::E(b - s))
    } else {
        F2Combination::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(gens: &[QGenerator]) -> Vec<String> {
        gens.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn base_bases() {
        assert_eq!(base_basis(BaseSpace::Point, 0), vec![BaseClass::Unit]);
        assert!(base_basis(BaseSpace::Point, 3).is_empty());
        assert_eq!(base_basis(BaseSpace::Bo1, 5), vec![BaseClass::E(5)]);
        assert_eq!(
            base_basis(BaseSpace::Bo2, 4),
            vec![BaseClass::B(0, 4), BaseClass::B(1, 3), BaseClass::B(2, 2)]
        );
        for n in 0..30 {
            assert_eq!(base_basis(BaseSpace::Bo2, n).len() as u32, n / 2 + 1);
        }
    }

    /// Expands `(x+y)^a (xy)^b` over the two-element field and reads off the
    /// coefficient of `x^i y^j`.
    fn pairing_by_expansion(i: u32, j: u32, a: u32, b: u32) -> bool {
        let mut poly = vec![vec![false; (a + 1) as usize]; (a + 1) as usize];
        poly[0][0] = true;
        for _ in 0..a {
            let mut next = vec![vec![false; (a + 1) as usize]; (a + 1) as usize];
            for p in 0..=a as usize {
                for q in 0..=a as usize {
                    if poly[p][q] {
                        if p < a as usize {
                            next[p + 1][q] ^= true;
                        }
                        if q < a as usize {
                            next[p][q + 1] ^= true;
                        }
                    }
                }
            }
            poly = next;
        }
        if i < b || j < b {
            return false;
        }
        let (p, q) = ((i - b) as usize, (j - b) as usize);
        p <= a as usize && q <= a as usize && poly[p][q]
    }

    #[test]
    fn bo2_pairing_matches_polynomial_expansion() {
        for n in 0..=16u32 {
            let m = bo2_pairing_matrix(n);
            for (r, i) in (0..=n / 2).enumerate() {
                for (c, b) in (0..=n / 2).enumerate() {
                    let a = n - 2 * b;
                    assert_eq!(
                        m.get(r, c),
                        pairing_by_expansion(i, n - i, a, b),
                        "n={n} i={i} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn bo2_basis_is_genuine() {
        for n in 0..=24 {
            assert!(verify_bo2_basis(n), "degree {n}");
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(names(&q_generators(BaseSpace::Point, 1)), vec!["Q^1([1])"]);
        assert_eq!(
            names(&q_generators(BaseSpace::Bo1, 2)),
            vec!["Q^2(e_0)", "e_2"]
        );
        assert_eq!(
            names(&q_generators(BaseSpace::Bo2, 1)),
            vec!["Q^1(b_{0,0})", "b_{0,1}"]
        );
        assert_eq!(q_generators(BaseSpace::Point, 3).len(), 2);
    }

    #[test]
    fn generator_order_is_canonical() {
        for space in [BaseSpace::Point, BaseSpace::Bo1, BaseSpace::Bo2] {
            for n in 1..=12 {
                let gens = q_generators(space, n);
                assert!(gens.windows(2).all(|w| w[0] < w[1]));
                assert!(gens.iter().all(|g| g.is_valid() && g.degree() == n));
            }
        }
    }

    #[test]
    fn unstable_examples() {
        assert_eq!(eval_unstable(&OpSequence::from([1]), 2), Unstable::Zero);
        assert_eq!(eval_unstable(&OpSequence::from([1]), 1), Unstable::Square);
        assert_eq!(
            eval_unstable(&OpSequence::from([3]), 1),
            Unstable::Generator
        );
        assert_eq!(eval_unstable(&OpSequence::empty(), 7), Unstable::Generator);
    }

    #[test]
    fn sq_lower_examples() {
        for b in 0..10 {
            assert_eq!(sq_lower(0, b), F2Combination::single(BaseClass::E(b)));
        }
        assert_eq!(sq_lower(1, 2), F2Combination::single(BaseClass::E(1)));
        assert!(sq_lower(1, 3).is_zero());
        assert!(sq_lower(4, 3).is_zero());
    }

    #[test]
    fn base_coproducts() {
        let psi = BaseClass::E(2).coproduct();
        assert_eq!(psi.len(), 3);
        let psi = BaseClass::B(1, 1).coproduct();
        let expect: F2Combination<_> = [
            (BaseClass::B(0, 0), BaseClass::B(1, 1)),
            (BaseClass::B(1, 1), BaseClass::B(0, 0)),
        ]
        .into_iter()
        .collect();
        assert_eq!(psi, expect);
    }
}

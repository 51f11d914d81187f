//! Truncated Hopf structure on `H_*(Q(Y_+))`, all components at once.
//!
//! A basis element is a commutative monomial in positive-degree generators
//! `Q^I(x)` together with the total component label `n`: it stands for
//! `m * [n - c(m)]` where `c(m)` is the natural component of `m`. The
//! coproduct is the algebra map given on generators by the Cartan formula;
//! the antipode is solved degree by degree from
//! `m ∘ (χ ⊗ id) ∘ ψ = η ∘ ε`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use thiserror::Error;

use super::{eval_unstable, BaseClass, BaseSpace, QGenerator, Unstable};
use crate::dyer_lashof::{normalize, OpSequence};
use crate::f2::F2Combination;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("degree {degree} exceeds the truncation degree {max}")]
    TruncationOverflow { degree: u32, max: u32 },
    #[error("{0} does not belong to H_*({1})")]
    WrongSpace(String, BaseSpace),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("expected a positive-degree element")]
    DegreeZero,
    #[error("term in component {0}, expected component 0")]
    WrongComponent(i64),
}

/// A commutative monomial in positive-degree generators.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<QGenerator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(g: QGenerator) -> Self {
        Self(BTreeMap::from([(g, 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(g, &e)| g.degree() * e).sum()
    }

    pub fn natural_component(&self) -> i64 {
        self.0
            .iter()
            .map(|(g, &e)| g.natural_component() * i64::from(e))
            .sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&QGenerator, u32)> {
        self.0.iter().map(|(g, &e)| (g, e))
    }

    /// Total number of factors counted with multiplicity.
    pub fn weight(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (g, &e) in &other.0 {
            *out.entry(g.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, &e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `monomial` placed in the component `component`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HopfBasis {
    pub monomial: Monomial,
    pub component: i64,
}

impl HopfBasis {
    pub fn degree(&self) -> u32 {
        self.monomial.degree()
    }

    /// The translation `[k]` with `self = monomial * [k]`.
    pub fn offset(&self) -> i64 {
        self.component - self.monomial.natural_component()
    }

    fn mul(&self, other: &HopfBasis) -> HopfBasis {
        HopfBasis {
            monomial: self.monomial.mul(&other.monomial),
            component: self.component + other.component,
        }
    }
}

impl fmt::Display for HopfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            write!(f, "[{}]", self.component)
        } else {
            write!(f, "{}[{}]", self.monomial, self.component)
        }
    }
}

impl fmt::Debug for HopfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type HopfElement = F2Combination<HopfBasis>;
pub type Tensor = F2Combination<(HopfBasis, HopfBasis)>;
pub type Tensor3 = F2Combination<(HopfBasis, HopfBasis, HopfBasis)>;

/// `H_*(Q(Y_+))` truncated above `max_degree`. Exceeding the truncation is
/// an error, never a silent drop.
pub struct HopfModel {
    space: BaseSpace,
    max_degree: u32,
    coproducts: Mutex<HashMap<QGenerator, Tensor>>,
    antipodes: Mutex<HashMap<QGenerator, HopfElement>>,
}

impl HopfModel {
    pub const DEFAULT_MAX_DEGREE: u32 = 12;

    pub fn new(space: BaseSpace, max_degree: u32) -> Self {
        Self {
            space,
            max_degree,
            coproducts: Mutex::default(),
            antipodes: Mutex::default(),
        }
    }

    pub fn space(&self) -> BaseSpace {
        self.space
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    fn check_degree(&self, degree: u32) -> Result<(), HopfError> {
        if degree > self.max_degree {
            Err(HopfError::TruncationOverflow {
                degree,
                max: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    fn check_base(&self, x: BaseClass) -> Result<(), HopfError> {
        if x.space() != self.space {
            Err(HopfError::WrongSpace(x.to_string(), self.space))
        } else {
            Ok(())
        }
    }

    /// The group-like class `[n]`.
    pub fn component(&self, n: i64) -> HopfElement {
        HopfElement::single(HopfBasis {
            monomial: Monomial::one(),
            component: n,
        })
    }

    pub fn unit(&self) -> HopfElement {
        self.component(0)
    }

    /// `Q^I(x)` in its natural component `2^{l(I)}`.
    pub fn generator(&self, g: &QGenerator) -> Result<HopfElement, HopfError> {
        self.check_base(g.base)?;
        self.check_degree(g.degree())?;
        debug_assert!(g.is_valid());
        let component = g.natural_component();
        Ok(HopfElement::single(HopfBasis {
            monomial: Monomial::generator(g.clone()),
            component,
        }))
    }

    /// `Q^I(x) * [-2^{l(I)}]`.
    pub fn generator_in_zero(&self, g: &QGenerator) -> Result<HopfElement, HopfError> {
        Ok(self.translate(&self.generator(g)?, -g.natural_component()))
    }

    /// The base class `x` as an element: `[1]` in degree zero.
    pub fn base_class(&self, x: BaseClass) -> Result<HopfElement, HopfError> {
        if x.degree() == 0 {
            self.check_base(x)?;
            Ok(self.component(1))
        } else {
            self.generator(&QGenerator {
                ops: OpSequence::empty(),
                base: x,
            })
        }
    }

    /// `Q^K(x)` for admissible `K`, resolving instability recursively.
    fn eval_admissible(&self, k: &OpSequence, x: BaseClass) -> Result<HopfElement, HopfError> {
        if k.is_empty() {
            return self.base_class(x);
        }
        self.check_degree(k.degree() + x.degree())?;
        match eval_unstable(k, x.degree()) {
            Unstable::Zero => Ok(HopfElement::zero()),
            Unstable::Square => Ok(self.square(&self.eval_admissible(&k.tail(), x)?)),
            Unstable::Generator => self.generator(&QGenerator {
                ops: k.clone(),
                base: x,
            }),
        }
    }

    /// `Q^I(x)` for an arbitrary sequence `I`.
    pub fn apply_ops(&self, ops: &OpSequence, x: BaseClass) -> Result<HopfElement, HopfError> {
        self.check_base(x)?;
        self.check_degree(ops.degree() + x.degree())?;
        let mut acc = HopfElement::zero();
        for k in normalize(ops).terms.iter() {
            acc += self.eval_admissible(k, x)?;
        }
        Ok(acc)
    }

    /// `a * [n]`.
    pub fn translate(&self, a: &HopfElement, n: i64) -> HopfElement {
        a.map(|t| HopfBasis {
            monomial: t.monomial.clone(),
            component: t.component + n,
        })
    }

    /// Pontrjagin product.
    pub fn product(&self, a: &HopfElement, b: &HopfElement) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for x in a {
            for y in b {
                let z = x.mul(y);
                self.check_degree(z.degree())?;
                out.add_term(z);
            }
        }
        Ok(out)
    }

    /// Squaring is additive in characteristic two.
    pub fn square(&self, a: &HopfElement) -> HopfElement {
        a.map(|t| t.mul(t))
    }

    fn power(&self, a: &HopfElement, e: u32) -> Result<HopfElement, HopfError> {
        let mut out = self.unit();
        for _ in 0..e {
            out = self.product(&out, a)?;
        }
        Ok(out)
    }

    /// `Σ a_i ⊗ b_j` over all pairs of terms.
    pub fn tensor(&self, a: &HopfElement, b: &HopfElement) -> Tensor {
        let mut out = Tensor::zero();
        for x in a {
            for y in b {
                out.add_term((x.clone(), y.clone()));
            }
        }
        out
    }

    /// Product in `X ⊗ X`.
    pub fn tensor_product(&self, s: &Tensor, t: &Tensor) -> Result<Tensor, HopfError> {
        let mut out = Tensor::zero();
        for (a, b) in s {
            for (c, d) in t {
                let (ac, bd) = (a.mul(c), b.mul(d));
                self.check_degree(ac.degree() + bd.degree())?;
                out.add_term((ac, bd));
            }
        }
        Ok(out)
    }

    /// The Cartan expansion of `ψ(Q^I(x))`:
    /// `Σ Q^A(x') ⊗ Q^B(x'')` over entrywise splittings `A + B = I` and
    /// the terms `x' ⊗ x''` of `ψ(x)`, each side resolved by normalization
    /// and instability.
    pub fn cartan_coproduct(&self, ops: &OpSequence, x: BaseClass) -> Result<Tensor, HopfError> {
        self.check_base(x)?;
        self.check_degree(ops.degree() + x.degree())?;
        let entries = ops.entries();
        let mut out = Tensor::zero();
        let mut left = vec![0u32; entries.len()];
        loop {
            let a = OpSequence::new(left.clone());
            let b = OpSequence::new(
                entries
                    .iter()
                    .zip(&left)
                    .map(|(s, l)| s - l)
                    .collect::<Vec<_>>(),
            );
            for (x1, x2) in x.coproduct().iter() {
                let qa = self.apply_ops(&a, *x1)?;
                if qa.is_zero() {
                    continue;
                }
                let qb = self.apply_ops(&b, *x2)?;
                out += self.tensor(&qa, &qb);
            }
            // Odometer over 0 <= left[k] <= entries[k].
            let mut k = 0;
            loop {
                if k == entries.len() {
                    return Ok(out);
                }
                if left[k] < entries[k] {
                    left[k] += 1;
                    break;
                }
                left[k] = 0;
                k += 1;
            }
        }
    }

    fn generator_coproduct(&self, g: &QGenerator) -> Result<Tensor, HopfError> {
        if let Some(t) = self
            .coproducts
            .lock()
            .expect("coproduct memo poisoned")
            .get(g)
        {
            return Ok(t.clone());
        }
        let t = self.cartan_coproduct(&g.ops, g.base)?;
        self.coproducts
            .lock()
            .expect("coproduct memo poisoned")
            .insert(g.clone(), t.clone());
        Ok(t)
    }

    fn basis_coproduct(&self, b: &HopfBasis) -> Result<Tensor, HopfError> {
        let offset = HopfBasis {
            monomial: Monomial::one(),
            component: b.offset(),
        };
        let mut out = Tensor::single((offset.clone(), offset));
        for (g, e) in b.monomial.factors() {
            let psi = self.generator_coproduct(g)?;
            for _ in 0..e {
                out = self.tensor_product(&out, &psi)?;
            }
        }
        Ok(out)
    }

    /// `ψ`, the algebra map with `ψ([n]) = [n] ⊗ [n]` and the Cartan
    /// formula on generators.
    pub fn coproduct(&self, a: &HopfElement) -> Result<Tensor, HopfError> {
        let mut out = Tensor::zero();
        for b in a {
            self.check_degree(b.degree())?;
            out += self.basis_coproduct(b)?;
        }
        Ok(out)
    }

    /// `(ψ ⊗ id) ∘ ψ`.
    pub fn coproduct_left_iterated(&self, a: &HopfElement) -> Result<Tensor3, HopfError> {
        let mut out = Tensor3::zero();
        for (x, y) in self.coproduct(a)?.iter() {
            for (x1, x2) in self.basis_coproduct(x)?.iter() {
                out.add_term((x1.clone(), x2.clone(), y.clone()));
            }
        }
        Ok(out)
    }

    /// `(id ⊗ ψ) ∘ ψ`.
    pub fn coproduct_right_iterated(&self, a: &HopfElement) -> Result<Tensor3, HopfError> {
        let mut out = Tensor3::zero();
        for (x, y) in self.coproduct(a)?.iter() {
            for (y1, y2) in self.basis_coproduct(y)?.iter() {
                out.add_term((x.clone(), y1.clone(), y2.clone()));
            }
        }
        Ok(out)
    }

    /// Swaps the tensor factors.
    pub fn twist(t: &Tensor) -> Tensor {
        t.map(|(a, b)| (b.clone(), a.clone()))
    }

    /// `m: X ⊗ X → X`.
    pub fn multiply(&self, t: &Tensor) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for (a, b) in t {
            let z = a.mul(b);
            self.check_degree(z.degree())?;
            out.add_term(z);
        }
        Ok(out)
    }

    /// `ε`: one on every group-like class, zero in positive degree.
    pub fn counit(&self, a: &HopfElement) -> bool {
        a.iter().filter(|b| b.degree() == 0).count() % 2 == 1
    }

    /// `χ` on a generator in its natural component `c`.
    ///
    /// `ψ(g) = g ⊗ [c] + Σ g' ⊗ g''` with `|g''| > 0`, so
    /// `χ(g) = [-c] * Σ χ(g') * g''`.
    fn generator_antipode(&self, g: &QGenerator) -> Result<HopfElement, HopfError> {
        if let Some(x) = self
            .antipodes
            .lock()
            .expect("antipode memo poisoned")
            .get(g)
        {
            return Ok(x.clone());
        }
        let c = g.natural_component();
        let head = HopfBasis {
            monomial: Monomial::generator(g.clone()),
            component: c,
        };
        let unit_c = HopfBasis {
            monomial: Monomial::one(),
            component: c,
        };
        let mut sum = HopfElement::zero();
        let mut saw_head = false;
        for (x, y) in self.generator_coproduct(g)?.iter() {
            if y.degree() == 0 {
                assert!(
                    x == &head && y == &unit_c && !saw_head,
                    "unexpected primitive part {x} ⊗ {y} in ψ({g})"
                );
                saw_head = true;
                continue;
            }
            sum += self.product(&self.basis_antipode(x)?, &HopfElement::single(y.clone()))?;
        }
        assert!(saw_head, "ψ({g}) lacks the term {g} ⊗ [{c}]");
        let chi = self.translate(&sum, -c);
        self.antipodes
            .lock()
            .expect("antipode memo poisoned")
            .insert(g.clone(), chi.clone());
        Ok(chi)
    }

    fn basis_antipode(&self, b: &HopfBasis) -> Result<HopfElement, HopfError> {
        let mut out = self.component(-b.offset());
        for (g, e) in b.monomial.factors() {
            let chi = self.generator_antipode(g)?;
            out = self.product(&out, &self.power(&chi, e)?)?;
        }
        Ok(out)
    }

    /// `χ`, with `χ([n]) = [-n]`.
    pub fn antipode(&self, a: &HopfElement) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for b in a {
            self.check_degree(b.degree())?;
            out += self.basis_antipode(b)?;
        }
        Ok(out)
    }

    /// `m ∘ (χ ⊗ id) ∘ ψ`.
    pub fn antipode_left_convolution(&self, a: &HopfElement) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for (x, y) in self.coproduct(a)?.iter() {
            out += self.product(&self.basis_antipode(x)?, &HopfElement::single(y.clone()))?;
        }
        Ok(out)
    }

    /// `m ∘ (id ⊗ χ) ∘ ψ`.
    pub fn antipode_right_convolution(&self, a: &HopfElement) -> Result<HopfElement, HopfError> {
        let mut out = HopfElement::zero();
        for (x, y) in self.coproduct(a)?.iter() {
            out += self.product(&HopfElement::single(x.clone()), &self.basis_antipode(y)?)?;
        }
        Ok(out)
    }

    /// Image in the indecomposables `QH_*` of the zero component: keeps
    /// monomials consisting of a single generator to the first power.
    pub fn project_indecomposables(
        &self,
        a: &HopfElement,
    ) -> Result<F2Combination<QGenerator>, HopfError> {
        let mut degree = None;
        let mut out = F2Combination::zero();
        for b in a {
            let d = b.degree();
            if *degree.get_or_insert(d) != d {
                return Err(HopfError::NotHomogeneous);
            }
            if d == 0 {
                return Err(HopfError::DegreeZero);
            }
            if b.component != 0 {
                return Err(HopfError::WrongComponent(b.component));
            }
            let mut factors = b.monomial.factors();
            if let (Some((g, 1)), None) = (factors.next(), factors.next()) {
                out.add_term(g.clone());
            }
        }
        Ok(out)
    }

    /// Every monomial of degree `n` in the generators of `H_*(Q_0(Y_+))`,
    /// placed in the zero component.
    pub fn monomials(&self, n: u32) -> Result<Vec<HopfBasis>, HopfError> {
        self.check_degree(n)?;
        let gens: Vec<QGenerator> = (1..=n)
            .flat_map(|m| super::q_generators(self.space, m))
            .collect();
        let mut out = Vec::new();
        fn go(gens: &[QGenerator], remaining: u32, acc: Monomial, out: &mut Vec<Monomial>) {
            let Some((g, rest)) = gens.split_first() else {
                if remaining == 0 {
                    out.push(acc);
                }
                return;
            };
            let d = g.degree();
            let mut m = acc;
            let mut left = remaining;
            loop {
                go(rest, left, m.clone(), out);
                if left < d {
                    break;
                }
                left -= d;
                m = m.mul(&Monomial::generator(g.clone()));
            }
        }
        let mut monos = Vec::new();
        go(&gens, n, Monomial::one(), &mut monos);
        for m in monos {
            out.push(HopfBasis {
                monomial: m,
                component: 0,
            });
        }
        out.sort();
        Ok(out)
    }
}

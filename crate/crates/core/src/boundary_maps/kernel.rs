use std::fmt;

use super::{Ambient, BoundaryError};
use crate::dyer_lashof::{normalize, OpSequence};
use crate::f2::{F2Combination, F2Matrix, F2Vector, GradedMatrix};
use crate::loop_homology::{
    eval_unstable, q_generators, BaseClass, BaseSpace, QGenerator, Unstable,
};

/// Label `(I, i)` of a kernel generator `v^{I,i}`.
///
/// Ordered like the generator `Q^I(e_i)`: by `i`, then `I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VKey {
    pub index: u32,
    pub ops: OpSequence,
}

impl VKey {
    pub fn new(ops: impl Into<OpSequence>, index: u32) -> Self {
        Self {
            index,
            ops: ops.into(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.ops.degree() + self.index
    }

    /// The ambient generator `Q^I(e_i)` at which `v^{I,i}` has coordinate one.
    pub fn head(&self) -> QGenerator {
        QGenerator {
            ops: self.ops.clone(),
            base: BaseClass::E(self.index),
        }
    }
}

impl fmt::Display for VKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v^{{{},{}}}", self.ops, self.index)
    }
}

impl fmt::Debug for VKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Resolution of the symbol `v^{I,i}` for arbitrary `(I, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VSymbol {
    /// `I` itself is inadmissible or `e(I) <= i`: the symbol is zero.
    Invalid,
    /// `(I, i)` is admissible: `Q^I Q^i` needs no rewriting, the symbol is zero.
    Admissible,
    Generator(VKey),
}

/// The single place where the conventions for `v^{I,i}` are decided.
pub fn v_symbol(ops: &OpSequence, i: u32) -> VSymbol {
    if ops.is_empty() || !ops.is_admissible() || !ops.excess().exceeds(i) {
        VSymbol::Invalid
    } else if ops.append(i).is_admissible() {
        VSymbol::Admissible
    } else {
        VSymbol::Generator(VKey {
            index: i,
            ops: ops.clone(),
        })
    }
}

fn v_symbol_comb(ops: &OpSequence, i: u32) -> F2Combination<VKey> {
    match v_symbol(ops, i) {
        VSymbol::Generator(k) => F2Combination::single(k),
        _ => F2Combination::zero(),
    }
}

/// `Q(∂̄_*)` on one generator: `Q^I(e_i) ↦ Q^I Q^i([1])`, rewritten into
/// admissible terms of positive excess (excess zero gives squares, negative
/// excess gives zero).
pub fn dbar_apply(g: &QGenerator) -> Ambient {
    let BaseClass::E(i) = g.base else {
        panic!("∂̄ is defined on H_*(Q(BO_1+)), got {g}");
    };
    normalize(&g.ops.append(i))
        .terms
        .into_iter()
        .filter(|k| eval_unstable(k, 0) == Unstable::Generator)
        .map(|k| QGenerator {
            ops: k,
            base: BaseClass::Unit,
        })
        .collect()
}

fn dbar_apply_comb(w: &Ambient) -> Ambient {
    let mut out = Ambient::zero();
    for g in w {
        out += dbar_apply(g);
    }
    out
}

fn degree_of(w: &Ambient) -> Option<u32> {
    w.iter().next().map(QGenerator::degree)
}

fn column_vector<T: Ord>(index: &[T], comb: &F2Combination<T>) -> F2Vector {
    let mut v = F2Vector::zeros(index.len());
    for t in comb {
        let r = index
            .binary_search(t)
            .unwrap_or_else(|_| panic!("term outside the codomain basis"));
        v.set(r, true);
    }
    v
}

/// The matrix of `Q(∂̄_*): QH_n(Q_0(BO_{1+})) → QH_n(Q_0(S^0))`.
pub fn dbar_matrix(n: u32) -> GradedMatrix<QGenerator, QGenerator> {
    let domain = q_generators(BaseSpace::Bo1, n);
    let codomain = q_generators(BaseSpace::Point, n);
    let cols: Vec<F2Vector> = domain
        .iter()
        .map(|g| column_vector(&codomain, &dbar_apply(g)))
        .collect();
    let matrix = F2Matrix::from_columns(codomain.len(), &cols);
    GradedMatrix {
        degree: n,
        domain,
        codomain,
        matrix,
    }
}

/// A kernel generator with its expansion in the ambient generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VGen {
    pub key: VKey,
    pub ambient: Ambient,
}

/// `v^{I,i} = Q^I(e_i) + Σ λ^{I,i}_{J,j} Q^J(e_j)`, with the squares and
/// zeros among the `Q^J(e_j)` dropped.
pub fn v_ambient(key: &VKey) -> Ambient {
    let mut out = Ambient::single(key.head());
    for term in normalize(&key.ops.append(key.index)).terms.iter() {
        let (j_ops, j) = term.split_last().expect("normal forms keep their length");
        if eval_unstable(&j_ops, j) == Unstable::Generator {
            out.add_term(QGenerator {
                ops: j_ops,
                base: BaseClass::E(j),
            });
        }
    }
    out
}

/// The basis `{v^{I,i}}` of `ker Q(∂̄_*)` in degree `n`, in generator order.
pub fn v_basis(n: u32) -> Vec<VGen> {
    q_generators(BaseSpace::Bo1, n)
        .into_iter()
        .filter_map(|g| {
            let BaseClass::E(i) = g.base else {
                unreachable!()
            };
            match v_symbol(&g.ops, i) {
                VSymbol::Generator(key) => Some(VGen {
                    ambient: v_ambient(&key),
                    key,
                }),
                _ => None,
            }
        })
        .collect()
}

/// Coordinates of a kernel element in the `v`-basis, read off at the
/// inadmissible-pair generators and checked by reconstruction.
pub fn to_v_coords(w: &Ambient) -> Result<F2Combination<VKey>, BoundaryError> {
    let coords: F2Combination<VKey> = w
        .iter()
        .filter_map(|g| match g.base {
            BaseClass::E(i) => match v_symbol(&g.ops, i) {
                VSymbol::Generator(k) => Some(k),
                _ => None,
            },
            _ => None,
        })
        .collect();
    let mut rebuilt = Ambient::zero();
    for k in &coords {
        rebuilt += v_ambient(k);
    }
    if &rebuilt != w {
        return Err(BoundaryError::NotInKernel {
            degree: degree_of(w).unwrap_or(0),
            element: w.to_string(),
            residue: (rebuilt + w.clone()).to_string(),
        });
    }
    Ok(coords)
}

fn ensure_kernel(w: &Ambient) -> Result<(), BoundaryError> {
    let image = dbar_apply_comb(w);
    if image.is_zero() {
        Ok(())
    } else {
        Err(BoundaryError::NotInKernel {
            degree: degree_of(w).unwrap_or(0),
            element: w.to_string(),
            residue: image.to_string(),
        })
    }
}

/// `Q^l` on `ker Q(∂̄_*)`, computed on ambient terms:
/// `Q^l Q^K(e_m) = Σ λ^{(l,K)}_{J'} Q^{J'}(e_m)`.
pub fn act_q(l: u32, w: &Ambient) -> Result<Ambient, BoundaryError> {
    ensure_kernel(w)?;
    let mut out = Ambient::zero();
    for g in w {
        let BaseClass::E(m) = g.base else {
            return Err(BoundaryError::Precondition(format!(
                "{g} is not a BO_1 generator"
            )));
        };
        for k in normalize(&g.ops.prepend(l)).terms.iter() {
            if eval_unstable(k, m) == Unstable::Generator {
                out.add_term(QGenerator {
                    ops: k.clone(),
                    base: BaseClass::E(m),
                });
            }
        }
    }
    ensure_kernel(&out)?;
    Ok(out)
}

/// Both sides of `Q^l(v^{I,i}) = v^{(l,I),i} + Σ λ^{I,i}_{J,j} λ^{l,J}_{J'} v^{J',j}`
/// in `v`-coordinates, plus whether every `λ^{I,i}_{J,j} ≠ 0` has `j > i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkSides {
    pub lhs: F2Combination<VKey>,
    pub rhs: F2Combination<VKey>,
    pub indices_increase: bool,
}

impl AkSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.indices_increase
    }
}

pub fn ak_theorem_sides(l: u32, key: &VKey) -> Result<AkSides, BoundaryError> {
    if !key.ops.prepend(l).is_admissible() {
        return Err(BoundaryError::Precondition(format!(
            "({l}, {}) is not admissible",
            key.ops
        )));
    }
    let lhs = to_v_coords(&act_q(l, &v_ambient(key))?)?;

    let mut rhs = v_symbol_comb(&key.ops.prepend(l), key.index);
    let mut indices_increase = true;
    for term in normalize(&key.ops.append(key.index)).terms.iter() {
        let (j_ops, j) = term.split_last().expect("normal forms keep their length");
        indices_increase &= j > key.index;
        for j_prime in normalize(&j_ops.prepend(l)).terms.iter() {
            rhs += v_symbol_comb(j_prime, j);
        }
    }
    Ok(AkSides {
        lhs,
        rhs,
        indices_increase,
    })
}

/// Checks the Araki–Kudo action formula on `v^{I,i}` for admissible `(l, I)`.
pub fn verify_ak_theorem(l: u32, key: &VKey) -> Result<bool, BoundaryError> {
    Ok(ak_theorem_sides(l, key)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(ops: &[u32], i: u32) -> QGenerator {
        QGenerator::new(OpSequence::new(ops.to_vec()), BaseClass::E(i))
    }

    fn ambient(gens: &[QGenerator]) -> Ambient {
        gens.iter().cloned().collect()
    }

    #[test]
    fn dbar_low_degrees() {
        let m = dbar_matrix(1);
        assert_eq!(m.domain, vec![gen(&[1], 0), gen(&[], 1)]);
        assert_eq!(m.codomain.len(), 1);
        assert!(!m.matrix.get(0, 0) && m.matrix.get(0, 1));
        assert_eq!(m.rank(), 1);

        let m = dbar_matrix(2);
        assert_eq!(dbar_apply(&gen(&[2], 0)), Ambient::zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn dbar_is_surjective_and_kernel_is_v_span() {
        for n in 1..=14 {
            let m = dbar_matrix(n);
            assert_eq!(m.rank(), m.codomain.len(), "degree {n}");
            let v = v_basis(n);
            assert_eq!(v.len(), m.kernel_dim(), "degree {n}");
            for g in &v {
                assert!(
                    dbar_apply_comb(&g.ambient).is_zero(),
                    "{} not in kernel",
                    g.key
                );
                assert!(g.ambient.contains(&g.key.head()));
            }
        }
    }

    #[test]
    fn v_examples() {
        let v2 = v_basis(2);
        assert_eq!(v2.len(), 1);
        assert_eq!(v2[0].key, VKey::new([2], 0));
        assert_eq!(v2[0].ambient, ambient(&[gen(&[2], 0)]));

        let v41 = v_ambient(&VKey::new([4], 1));
        assert_eq!(v41, ambient(&[gen(&[4], 1), gen(&[3], 2)]));

        let keys: Vec<VKey> = v_basis(3).into_iter().map(|g| g.key).collect();
        assert_eq!(keys, vec![VKey::new([2, 1], 0), VKey::new([3], 0)]);
    }

    #[test]
    fn symbol_conventions() {
        assert_eq!(v_symbol(&OpSequence::from([0]), 0), VSymbol::Invalid);
        assert_eq!(v_symbol(&OpSequence::from([2]), 1), VSymbol::Admissible);
        assert_eq!(v_symbol(&OpSequence::from([1]), 1), VSymbol::Invalid);
        assert_eq!(
            v_symbol(&OpSequence::from([3]), 1),
            VSymbol::Generator(VKey::new([3], 1))
        );
        assert_eq!(v_symbol(&OpSequence::from([3, 1]), 0), VSymbol::Invalid);
    }

    #[test]
    fn read_off_examples() {
        let k41 = VKey::new([4], 1);
        assert_eq!(
            to_v_coords(&v_ambient(&k41)).unwrap(),
            F2Combination::single(k41)
        );
        assert!(to_v_coords(&Ambient::zero()).unwrap().is_zero());
        let (a, b) = (VKey::new([3], 0), VKey::new([2, 1], 0));
        let w = v_ambient(&a) + v_ambient(&b);
        assert_eq!(to_v_coords(&w).unwrap(), [a, b].into_iter().collect());
        // e_1 maps to Q^1([1]), so it is not a kernel element.
        assert!(matches!(
            to_v_coords(&ambient(&[gen(&[], 1)])),
            Err(BoundaryError::NotInKernel { .. })
        ));
    }

    #[test]
    fn action_examples() {
        let w = act_q(7, &v_ambient(&VKey::new([4], 1))).unwrap();
        assert_eq!(w, ambient(&[gen(&[7, 4], 1)]));
        assert_eq!(w, v_ambient(&VKey::new([7, 4], 1)));
        assert!(act_q(1, &Ambient::zero()).unwrap().is_zero());
        assert!(act_q(5, &v_ambient(&VKey::new([2], 0))).unwrap().is_zero());
        assert!(act_q(3, &ambient(&[gen(&[], 1)])).is_err());
    }

    #[test]
    fn ak_examples() {
        let sides = ak_theorem_sides(7, &VKey::new([4], 1)).unwrap();
        assert_eq!(sides.rhs, F2Combination::single(VKey::new([7, 4], 1)));
        assert!(sides.holds());
        assert!(verify_ak_theorem(2, &VKey::new([1], 0)).unwrap());
        assert!(verify_ak_theorem(9, &VKey::new([4], 1)).is_err());
    }
}

use super::kernel::{act_q, to_v_coords, v_ambient, v_basis, v_symbol, VKey, VSymbol};
use super::{Ambient, BoundaryError};
use crate::dyer_lashof::OpSequence;
use crate::f2::{binom_mod2, F2Combination, F2Matrix, F2Vector, GradedMatrix};
use crate::loop_homology::{
    q_generators, sq_lower, BaseClass, BaseSpace, HopfElement, HopfError, HopfModel, QGenerator,
};

fn add_v(acc: &mut F2Combination<VKey>, a: u32, b: u32) {
    if let VSymbol::Generator(k) = v_symbol(&OpSequence::new(vec![a]), b) {
        acc.add_term(k);
    }
}

/// `Q(∂_*)(b_{i,j})` in the `v`-basis:
/// `Σ_s C(j-s, s) v^{i+s, j-s} + Σ_t C(i-t, t) v^{j+t, i-t}`.
pub fn partial0(i: u32, j: u32) -> F2Combination<VKey> {
    let mut out = F2Combination::zero();
    for s in 0..=j {
        if binom_mod2(u64::from(j - s), u64::from(s)).is_one() {
            add_v(&mut out, i + s, j - s);
        }
    }
    for t in 0..=i {
        if binom_mod2(u64::from(i - t), u64::from(t)).is_one() {
            add_v(&mut out, j + t, i - t);
        }
    }
    out
}

/// [`partial0`] expanded into ambient generators.
pub fn partial0_ambient(i: u32, j: u32) -> Ambient {
    let mut out = Ambient::zero();
    for k in &partial0(i, j) {
        out += v_ambient(k);
    }
    out
}

/// `ω̄_* ∂_* d_*(e_i ⊗ e_j)` in `H_*(Q_0(BO_{1+}))`:
///
/// ```text
/// Σ_{a<=i} Σ_{b<=j} Σ_{s<=b} Σ_{t<=a} Q^{i-a+s}(Sq^s_* e_b) * χ(Q^{j-b+t}(Sq^t_* e_a))
/// ```
/// with `Sq^s_*(e_b) = C(b-s, s) e_{b-s}`.
pub fn partial_full(model: &HopfModel, i: u32, j: u32) -> Result<HopfElement, HopfError> {
    if model.space() != BaseSpace::Bo1 {
        return Err(HopfError::WrongSpace(
            "∂ lands in H_*(Q(BO_1+))".into(),
            model.space(),
        ));
    }
    if i + j > model.max_degree() {
        return Err(HopfError::TruncationOverflow {
            degree: i + j,
            max: model.max_degree(),
        });
    }
    let mut out = HopfElement::zero();
    for a in 0..=i {
        for b in 0..=j {
            for s in 0..=b {
                for x in sq_lower(s, b).iter() {
                    let left = model.apply_ops(&OpSequence::new(vec![i - a + s]), *x)?;
                    if left.is_zero() {
                        continue;
                    }
                    for t in 0..=a {
                        for y in sq_lower(t, a).iter() {
                            let inner = model.apply_ops(&OpSequence::new(vec![j - b + t]), *y)?;
                            if inner.is_zero() {
                                continue;
                            }
                            let right = model.antipode(&inner)?;
                            out += model.product(&left, &right)?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The column of `Q(∂_*)` at `Q^I(b_{p,q})`: start from `partial0(p, q)`
/// and apply the entries of `I` from the right.
pub fn dpartial_column(g: &QGenerator) -> Result<F2Combination<VKey>, BoundaryError> {
    let BaseClass::B(p, q) = g.base else {
        return Err(BoundaryError::Precondition(format!(
            "{g} is not a BO_2 generator"
        )));
    };
    let mut w = partial0_ambient(p, q);
    for &l in g.ops.entries().iter().rev() {
        w = act_q(l, &w)?;
    }
    to_v_coords(&w)
}

/// The matrix of `Q(∂_*): QH_n(Q_0(BO_{2+})) → QH_n(Ω_0^∞ MTO(1))`.
pub fn dpartial_matrix(n: u32) -> Result<GradedMatrix<QGenerator, VKey>, BoundaryError> {
    let domain = q_generators(BaseSpace::Bo2, n);
    let codomain: Vec<VKey> = v_basis(n).into_iter().map(|v| v.key).collect();
    let mut cols = Vec::with_capacity(domain.len());
    for g in &domain {
        let coords = dpartial_column(g)?;
        let mut v = F2Vector::zeros(codomain.len());
        for k in &coords {
            let r = codomain.binary_search(k).map_err(|_| {
                BoundaryError::Precondition(format!("{k} is not a degree-{n} basis element"))
            })?;
            v.set(r, true);
        }
        cols.push(v);
    }
    let matrix = F2Matrix::from_columns(codomain.len(), &cols);
    Ok(GradedMatrix {
        degree: n,
        domain,
        codomain,
        matrix,
    })
}

/// Whether `Q(∂_*)` is onto in degree `n`.
pub fn check_surjectivity(n: u32) -> Result<bool, BoundaryError> {
    let m = dpartial_matrix(n)?;
    Ok(m.rank() == m.codomain.len())
}

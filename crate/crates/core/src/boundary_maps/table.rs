use serde::Serialize;

use super::kernel::v_basis;
use super::partial::dpartial_matrix;
use super::BoundaryError;
use crate::f2::{free_commutative_dims, GeneratorCounts};
use crate::loop_homology::{q_generators, BaseSpace};

/// One degree of the rank table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub degree: u32,
    /// `dim QH_n(Q_0(BO_{2+}))`.
    pub dim_qh_qbo2: u64,
    /// `dim QH_n(Ω_0^∞ MTO(1))`.
    pub dim_qh_mto1: u64,
    /// `rank Q(∂_*)` in degree `n`.
    pub rank_dpartial: u64,
    pub surjective: bool,
    /// `dim QH_n(Ω_0^∞ MTO(2))`, withheld when `Q(∂_*)` is not onto.
    pub qh: Option<u64>,
    /// `dim H_n(Ω_0^∞ MTO(2))`, withheld unless every degree up to `n` is onto.
    pub h: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankTable {
    pub rows: Vec<RankRow>,
}

impl RankTable {
    pub fn all_surjective(&self) -> bool {
        self.rows.iter().all(|r| r.surjective)
    }

    pub fn qh_row(&self) -> Vec<Option<u64>> {
        self.rows.iter().map(|r| r.qh).collect()
    }

    pub fn h_row(&self) -> Vec<Option<u64>> {
        self.rows.iter().map(|r| r.h).collect()
    }
}

/// Ranks of `QH_n` and `H_n` of `Ω_0^∞ MTO(2)` for `1 <= n <= max_degree`.
///
/// Exactness of `H_*(MTO(2)) → H_*(Q_0(BO_{2+})) → H_*(MTO(1))` with a
/// surjective right map gives `dim QH_n(MTO(2)) = dim QH_n(Q_0 BO_{2+}) -
/// dim QH_n(MTO(1))`, and `H_*(MTO(2))` is polynomial on those generators.
pub fn rank_table(max_degree: u32) -> Result<RankTable, BoundaryError> {
    let mut rows = Vec::with_capacity(max_degree as usize);
    for n in 1..=max_degree {
        let dim_qh_qbo2 = q_generators(BaseSpace::Bo2, n).len() as u64;
        let dim_qh_mto1 = v_basis(n).len() as u64;
        let rank_dpartial = dpartial_matrix(n)?.rank() as u64;
        let surjective = rank_dpartial == dim_qh_mto1;
        rows.push(RankRow {
            degree: n,
            dim_qh_qbo2,
            dim_qh_mto1,
            rank_dpartial,
            surjective,
            qh: surjective.then(|| dim_qh_qbo2 - dim_qh_mto1),
            h: None,
        });
    }
    let onto_prefix = rows.iter().take_while(|r| r.surjective).count();
    let q: GeneratorCounts = rows[..onto_prefix]
        .iter()
        .map(|r| (r.degree, r.qh.unwrap_or(0)))
        .collect();
    let dims = free_commutative_dims(&q, max_degree);
    for row in rows.iter_mut().take(onto_prefix) {
        row.h = Some(dims[row.degree as usize]);
    }
    Ok(RankTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_through_degree_six() {
        let t = rank_table(6).unwrap();
        assert!(t.all_surjective());
        let qh: Vec<u64> = t.qh_row().into_iter().map(Option::unwrap).collect();
        let h: Vec<u64> = t.h_row().into_iter().map(Option::unwrap).collect();
        assert_eq!(qh, vec![1, 2, 3, 3, 5, 6]);
        assert_eq!(h, vec![1, 3, 6, 12, 23, 45]);
    }

    #[test]
    fn intermediate_dimensions() {
        let t = rank_table(6).unwrap();
        let dims: Vec<(u64, u64)> = t
            .rows
            .iter()
            .map(|r| (r.dim_qh_qbo2, r.dim_qh_mto1))
            .collect();
        // Enumerated by hand from the generator sets.
        assert_eq!(&dims[..5], &[(2, 1), (3, 1), (5, 2), (5, 2), (8, 3)]);
    }
}

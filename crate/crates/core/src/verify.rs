//! Verification suites over the whole pipeline.
//!
//! Every check is exhaustive up to its degree cap and reports the first
//! failing case as a witness.

use std::fmt;

use serde::Serialize;

use crate::boundary_maps::{
    ak_theorem_sides, check_surjectivity, dbar_matrix, partial0, partial0_ambient, partial_full,
    to_v_coords, v_basis, VKey,
};
use crate::dyer_lashof::{adem_pair, all_sequences, normalize, rewrite_with, RewriteStrategy};
use crate::f2::{free_commutative_dims, F2Combination, F2Matrix, F2Vector, GeneratorCounts};
use crate::loop_homology::{
    q_generators, verify_bo2_basis, BaseSpace, HopfElement, HopfModel, QGenerator,
};

/// Reference values for degrees 1 through 6.
pub const TABLE_QH: [u64; 6] = [1, 2, 3, 3, 5, 6];
pub const TABLE_H: [u64; 6] = [1, 3, 6, 12, 23, 45];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Adem,
    Hopf,
    Mto1,
    Mto2,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Adem, Suite::Hopf, Suite::Mto1, Suite::Mto2];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adem => "adem",
            Suite::Hopf => "hopf",
            Suite::Mto1 => "mto1",
            Suite::Mto2 => "mto2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub check: String,
    pub max_degree: u32,
    pub cases: u64,
    pub passed: bool,
    pub witness: Option<String>,
}

struct Check {
    suite: Suite,
    name: &'static str,
    max_degree: u32,
    cases: u64,
    witness: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: &'static str, max_degree: u32) -> Self {
        Self {
            suite,
            name,
            max_degree,
            cases: 0,
            witness: None,
        }
    }

    /// Records one case; keeps only the first failure.
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.case(false, || witness);
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome {
            suite: self.suite.name().to_string(),
            check: self.name.to_string(),
            max_degree: self.max_degree,
            cases: self.cases,
            passed: self.witness.is_none(),
            witness: self.witness,
        }
    }
}

fn cap(default: u32, max_degree: Option<u32>) -> u32 {
    max_degree.unwrap_or(default)
}

/// Runs one suite. `max_degree` replaces every default cap in the suite.
pub fn run_suite(suite: Suite, max_degree: Option<u32>) -> Vec<CheckOutcome> {
    match suite {
        Suite::Adem => adem_suite(max_degree),
        Suite::Hopf => hopf_suite(max_degree),
        Suite::Mto1 => mto1_suite(max_degree),
        Suite::Mto2 => mto2_suite(max_degree),
    }
}

// ---------------------------------------------------------------- adem

pub fn adem_suite(max_degree: Option<u32>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let d = cap(24, max_degree);
    let mut c = Check::new(Suite::Adem, "adem_pair_structure", d);
    for r in 0..=d {
        for s in 0..=(d - r) {
            if r <= 2 * s {
                c.case(adem_pair(r, s).is_err(), || {
                    format!("adem_pair({r},{s}) accepted an admissible pair")
                });
                continue;
            }
            let terms = adem_pair(r, s).expect("inadmissible pair");
            let ok = terms.iter().all(|t| {
                let (a, b) = (t.entries()[0], t.entries()[1]);
                a + b == r + s
                    && b > s
                    && a <= 2 * b
                    && i64::from(a) - i64::from(b) < i64::from(r) - i64::from(s)
            });
            c.case(ok, || format!("adem_pair({r},{s}) = {terms}"));
        }
    }
    out.push(c.done());

    let mut nf = Check::new(Suite::Adem, "normal_form", d);
    let mut ex = Check::new(Suite::Adem, "excess_filtration", d);
    let mut idem = Check::new(Suite::Adem, "idempotence", d);
    let mut fixed = Check::new(Suite::Adem, "admissible_fixed", d);
    for seq in all_sequences(d, 4) {
        let terms = normalize(&seq).terms;
        nf.case(
            terms
                .iter()
                .all(|t| t.is_admissible() && t.degree() == seq.degree() && t.len() == seq.len()),
            || format!("normalize{seq} = {terms}"),
        );
        ex.case(terms.iter().all(|t| t.excess() <= seq.excess()), || {
            format!("normalize{seq} = {terms}")
        });
        idem.case(
            terms
                .iter()
                .all(|t| normalize(t).terms == F2Combination::single(t.clone())),
            || format!("a term of normalize{seq} = {terms} is not fixed"),
        );
        if seq.is_admissible() {
            fixed.case(terms == F2Combination::single(seq.clone()), || {
                format!("normalize{seq} = {terms}")
            });
        }
    }
    out.extend([nf.done(), ex.done(), idem.done(), fixed.done()]);

    let d = cap(16, max_degree);
    let mut conf = Check::new(Suite::Adem, "confluence", d);
    for seq in all_sequences(d, 4) {
        let left = rewrite_with(&seq, RewriteStrategy::Leftmost);
        let right = rewrite_with(&seq, RewriteStrategy::Rightmost);
        let memo = normalize(&seq).terms;
        let ok = matches!((&left, &right), (Ok(l), Ok(r)) if *l == memo && *r == memo);
        conf.case(ok, || {
            format!("{seq}: leftmost {left:?}, rightmost {right:?}, memoized {memo}")
        });
    }
    out.push(conf.done());
    out
}

// ---------------------------------------------------------------- hopf

pub fn hopf_suite(max_degree: Option<u32>) -> Vec<CheckOutcome> {
    let d = cap(8, max_degree);
    let model = HopfModel::new(BaseSpace::Bo1, d);
    let mut out = Vec::new();

    let mut coassoc = Check::new(Suite::Hopf, "coassociativity", d);
    let mut cocomm = Check::new(Suite::Hopf, "cocommutativity", d);
    let mut counit = Check::new(Suite::Hopf, "counit", d);
    let mut left = Check::new(Suite::Hopf, "antipode_left", d);
    let mut right = Check::new(Suite::Hopf, "antipode_right", d);
    for n in 0..=d {
        let monomials = if n == 0 {
            vec![model.unit().into_iter().next().expect("unit")]
        } else {
            match model.monomials(n) {
                Ok(m) => m,
                Err(e) => {
                    coassoc.fail(format!("degree {n}: {e}"));
                    continue;
                }
            }
        };
        for b in monomials {
            let x = HopfElement::single(b.clone());
            match (
                model.coproduct_left_iterated(&x),
                model.coproduct_right_iterated(&x),
            ) {
                (Ok(l), Ok(r)) => coassoc.case(l == r, || format!("{b}: (ψ⊗1)ψ ≠ (1⊗ψ)ψ")),
                (Err(e), _) | (_, Err(e)) => coassoc.fail(format!("{b}: {e}")),
            }
            let psi = match model.coproduct(&x) {
                Ok(p) => p,
                Err(e) => {
                    cocomm.fail(format!("{b}: {e}"));
                    continue;
                }
            };
            cocomm.case(HopfModel::twist(&psi) == psi, || {
                format!("ψ({b}) = {psi:?}")
            });
            let right_counit: HopfElement = psi
                .iter()
                .filter(|(_, y)| y.degree() == 0)
                .map(|(x, _)| x.clone())
                .collect();
            let left_counit: HopfElement = psi
                .iter()
                .filter(|(x, _)| x.degree() == 0)
                .map(|(_, y)| y.clone())
                .collect();
            counit.case(right_counit == x && left_counit == x, || {
                format!("counit fails on ψ({b})")
            });
            let unit_part = if n == 0 {
                model.unit()
            } else {
                HopfElement::zero()
            };
            match model.antipode_left_convolution(&x) {
                Ok(v) => left.case(v == unit_part, || format!("m(χ⊗1)ψ({b}) = {v}")),
                Err(e) => left.fail(format!("{b}: {e}")),
            }
            match model.antipode_right_convolution(&x) {
                Ok(v) => right.case(v == unit_part, || format!("m(1⊗χ)ψ({b}) = {v}")),
                Err(e) => right.fail(format!("{b}: {e}")),
            }
        }
    }
    out.extend([
        coassoc.done(),
        cocomm.done(),
        counit.done(),
        left.done(),
        right.done(),
    ]);

    let mut bialg = Check::new(Suite::Hopf, "bialgebra_products", d);
    let mut by_degree: Vec<Vec<HopfElement>> = vec![Vec::new()];
    for n in 1..d {
        by_degree.push(
            model
                .monomials(n)
                .unwrap_or_default()
                .into_iter()
                .map(HopfElement::single)
                .collect(),
        );
    }
    for p in 1..d {
        for q in p..=(d - p) {
            for (ia, x) in by_degree[p as usize].iter().enumerate() {
                for (ib, y) in by_degree[q as usize].iter().enumerate() {
                    if p == q && ib < ia {
                        continue;
                    }
                    let lhs = model.product(x, y).and_then(|xy| model.coproduct(&xy));
                    let rhs = model.coproduct(x).and_then(|px| {
                        model
                            .coproduct(y)
                            .and_then(|py| model.tensor_product(&px, &py))
                    });
                    c_eq(&mut bialg, lhs, rhs, || format!("ψ(({x})*({y}))"));
                }
            }
        }
    }
    out.push(bialg.done());

    // ψ(Q^I x), computed by first rewriting Q^I into admissible form and
    // resolving instability, against the raw Cartan expansion of Q^I.
    let g = d.min(6);
    let mut cartan = Check::new(Suite::Hopf, "cartan_adem_compatibility", g);
    for space in [BaseSpace::Point, BaseSpace::Bo1, BaseSpace::Bo2] {
        let model = HopfModel::new(space, g);
        for m in 0..=g {
            for x in crate::loop_homology::base_basis(space, m) {
                for seq in all_sequences(g - m, 3) {
                    let lhs = model.apply_ops(&seq, x).and_then(|v| model.coproduct(&v));
                    let rhs = model.cartan_coproduct(&seq, x);
                    c_eq(&mut cartan, lhs, rhs, || format!("ψ(Q^{seq}({x}))"));
                }
            }
        }
    }
    out.push(cartan.done());
    out
}

fn c_eq<T: PartialEq + fmt::Debug, E: fmt::Display>(
    c: &mut Check,
    lhs: Result<T, E>,
    rhs: Result<T, E>,
    what: impl FnOnce() -> String,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let ok = l == r;
            c.case(ok, || format!("{}: {l:?} ≠ {r:?}", what()));
        }
        (Err(e), _) | (_, Err(e)) => c.fail(format!("{}: {e}", what())),
    }
}

// ---------------------------------------------------------------- mto1

pub fn mto1_suite(max_degree: Option<u32>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let d = cap(20, max_degree);
    let mut surj = Check::new(Suite::Mto1, "dbar_surjective", d);
    let mut kdim = Check::new(Suite::Mto1, "kernel_basis_dimension", d);
    let mut indep = Check::new(Suite::Mto1, "kernel_basis_independent", d);
    for n in 1..=d {
        let m = dbar_matrix(n);
        let rank = m.rank();
        surj.case(rank == m.codomain.len(), || {
            format!("degree {n}: rank {rank} of {} rows", m.codomain.len())
        });
        let v = v_basis(n);
        kdim.case(v.len() == m.kernel_dim(), || {
            format!(
                "degree {n}: |v_basis| = {}, kernel dim {}",
                v.len(),
                m.kernel_dim()
            )
        });
        let vectors: Vec<F2Vector> = v.iter().map(|g| indicator(&m.domain, &g.ambient)).collect();
        let r = F2Matrix::rank_of_vectors(&vectors);
        let annihilated = vectors.iter().all(|x| m.matrix.mul_vec(x).is_zero());
        indep.case(r == v.len() && annihilated, || {
            format!("degree {n}: rank {r} of {} ambients", v.len())
        });
    }
    out.extend([surj.done(), kdim.done(), indep.done()]);

    let d = cap(14, max_degree);
    let mut readoff = Check::new(Suite::Mto1, "read_off_soundness", d);
    for n in 1..=d {
        let m = dbar_matrix(n);
        // Kernel vectors found by row reduction, independently of the v-basis.
        for k in m.kernel_basis() {
            let w: F2Combination<QGenerator> = k
                .support()
                .into_iter()
                .map(|i| m.domain[i].clone())
                .collect();
            match to_v_coords(&w) {
                Ok(coords) => {
                    let rebuilt = coords
                        .iter()
                        .map(crate::boundary_maps::v_ambient)
                        .fold(F2Combination::zero(), |a, b| a + b);
                    readoff.case(rebuilt == w, || format!("degree {n}: {w}"));
                }
                Err(e) => readoff.fail(format!("degree {n}: {e}")),
            }
        }
    }
    out.push(readoff.done());

    let d = cap(24, max_degree);
    let mut split = Check::new(Suite::Mto1, "splitting_counts", d);
    for n in 1..=d {
        let (bo1, pt, v) = (
            q_generators(BaseSpace::Bo1, n).len(),
            q_generators(BaseSpace::Point, n).len(),
            v_basis(n).len(),
        );
        split.case(bo1 == pt + v, || format!("degree {n}: {bo1} ≠ {pt} + {v}"));
    }
    out.push(split.done());

    let d = cap(12, max_degree);
    let mut ak = Check::new(Suite::Mto1, "araki_kudo_action", d);
    for n in 1..d {
        for g in v_basis(n) {
            let top = g.key.ops.first().expect("v-generators have nonempty I");
            for l in 0..=(2 * top).min(d - n) {
                match ak_theorem_sides(l, &g.key) {
                    Ok(s) => ak.case(s.holds(), || {
                        format!(
                            "Q^{l} {}: lhs {}, rhs {}, j>i {}",
                            g.key, s.lhs, s.rhs, s.indices_increase
                        )
                    }),
                    Err(e) => ak.fail(format!("Q^{l} {}: {e}", g.key)),
                }
            }
        }
    }
    out.push(ak.done());
    out
}

fn indicator(index: &[QGenerator], comb: &F2Combination<QGenerator>) -> F2Vector {
    let mut v = F2Vector::zeros(index.len());
    for g in comb {
        if let Ok(i) = index.binary_search(g) {
            v.set(i, true);
        }
    }
    v
}

// ---------------------------------------------------------------- mto2

pub fn mto2_suite(max_degree: Option<u32>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let d = cap(24, max_degree);
    let mut basis = Check::new(Suite::Mto2, "bo2_basis", d);
    for n in 0..=d {
        basis.case(verify_bo2_basis(n), || {
            format!("degree {n}: pairing matrix singular")
        });
    }
    out.push(basis.done());

    let d = cap(12, max_degree);
    let mut surj = Check::new(Suite::Mto2, "dpartial_surjective", d);
    for n in 1..=d {
        match check_surjectivity(n) {
            Ok(ok) => surj.case(ok, || format!("degree {n}: Q(∂_*) not onto")),
            Err(e) => surj.fail(format!("degree {n}: {e}")),
        }
    }
    out.push(surj.done());

    let d = cap(10, max_degree);
    let mut coherence = Check::new(Suite::Mto2, "formula_coherence", d);
    let model = HopfModel::new(BaseSpace::Bo1, d);
    for total in 0..=d {
        for i in 0..=total {
            let j = total - i;
            let full = partial_full(&model, i, j);
            let expect = partial0_ambient(i, j);
            match full {
                Ok(x) if total == 0 => {
                    coherence.case(x == model.unit(), || format!("∂(e_0⊗e_0) = {x}"))
                }
                Ok(x) => match model.project_indecomposables(&x) {
                    Ok(p) => {
                        coherence.case(p == expect, || format!("(i,j)=({i},{j}): {p} ≠ {expect}"))
                    }
                    Err(e) => coherence.fail(format!("(i,j)=({i},{j}): {e}")),
                },
                Err(e) => coherence.fail(format!("(i,j)=({i},{j}): {e}")),
            }
        }
    }
    out.push(coherence.done());

    let d = cap(15, max_degree);
    let mut cor = Check::new(Suite::Mto2, "partial0_corollary", d);
    let mut sym = Check::new(Suite::Mto2, "partial0_symmetry", d);
    for i in 1..=d {
        let p = partial0(0, i);
        cor.case(p == F2Combination::single(VKey::new([i], 0)), || {
            format!("partial0(0,{i}) = {p}")
        });
    }
    for i in 0..=d {
        for j in 0..=d - i {
            sym.case(partial0(i, j) == partial0(j, i), || {
                format!("partial0({i},{j}) ≠ partial0({j},{i})")
            });
        }
    }
    out.extend([cor.done(), sym.done()]);

    let d = cap(10, max_degree);
    let mut exact = Check::new(Suite::Mto2, "exactness_counts", d);
    let counts =
        |f: &dyn Fn(u32) -> u64| -> GeneratorCounts { (1..=d).map(|n| (n, f(n))).collect() };
    let bo2 = counts(&|n| q_generators(BaseSpace::Bo2, n).len() as u64);
    let mto1 = counts(&|n| v_basis(n).len() as u64);
    let mto2 = counts(&|n| (q_generators(BaseSpace::Bo2, n).len() - v_basis(n).len()) as u64);
    let (h_bo2, h_mto1, h_mto2) = (
        free_commutative_dims(&bo2, d),
        free_commutative_dims(&mto1, d),
        free_commutative_dims(&mto2, d),
    );
    for n in 0..=d as usize {
        let conv: u64 = (0..=n).map(|p| h_mto2[p] * h_mto1[n - p]).sum();
        exact.case(conv == h_bo2[n], || {
            format!("degree {n}: {} ≠ {conv}", h_bo2[n])
        });
    }
    out.push(exact.done());

    let d = cap(6, max_degree).min(6);
    let mut table = Check::new(Suite::Mto2, "table_match", d);
    match crate::boundary_maps::rank_table(d) {
        Ok(t) => {
            for row in &t.rows {
                let k = (row.degree - 1) as usize;
                table.case(
                    row.qh == Some(TABLE_QH[k]) && row.h == Some(TABLE_H[k]),
                    || format!("degree {}: qh {:?} h {:?}", row.degree, row.qh, row.h),
                );
            }
        }
        Err(e) => table.fail(e.to_string()),
    }
    out.push(table.done());
    out
}

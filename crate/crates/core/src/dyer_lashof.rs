//! The mod-2 Dyer–Lashof algebra as a rewriting system.
//!
//! A composite `Q^{s_1} ⋯ Q^{s_k}` is written as an [`OpSequence`]. The
//! inadmissible pairs `Q^r Q^s` with `r > 2s` are rewritten by the Adém
//! relation
//!
//! ```text
//! Q^r Q^s = Σ_i C(i - s - 1, 2i - r) Q^{r+s-i} Q^i      (r > 2s)
//! ```
//!
//! until every term is admissible. The coefficients of the resulting
//! admissible expansion are the `λ^I_J`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use thiserror::Error;

use crate::f2::{binom_mod2, F2Combination};

/// Upper bound on nested rewrites for one normalization.
const REWRITE_BUDGET: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyerLashofError {
    #[error("Q^{r} Q^{s} is already admissible")]
    AdmissiblePair { r: u32, s: u32 },
    #[error("rewrite budget exhausted while normalizing {0}")]
    RewriteBudget(OpSequence),
}

/// Excess of a sequence. The empty sequence has infinite excess.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Excess {
    Finite(i64),
    Infinite,
}

impl Excess {
    /// `e > d`.
    pub fn exceeds(self, d: u32) -> bool {
        match self {
            Excess::Finite(e) => e > i64::from(d),
            Excess::Infinite => true,
        }
    }
}

impl fmt::Display for Excess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Excess::Finite(e) => write!(f, "{e}"),
            Excess::Infinite => write!(f, "inf"),
        }
    }
}

/// A finite sequence of operation indices `I = (s_1, ..., s_k)` standing for
/// `Q^I = Q^{s_1} ⋯ Q^{s_k}`, applied right to left.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpSequence(Vec<u32>);

impl OpSequence {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        Self(entries.into())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn excess(&self) -> Excess {
        match self.0.split_first() {
            None => Excess::Infinite,
            Some((&s1, rest)) => {
                Excess::Finite(i64::from(s1) - rest.iter().map(|&s| i64::from(s)).sum::<i64>())
            }
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= 2 * w[1])
    }

    /// Positions `p` with `(s_p, s_{p+1})` inadmissible.
    pub fn inadmissible_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > 2 * w[1])
            .map(|(p, _)| p)
    }

    pub fn concat(&self, other: &OpSequence) -> OpSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OpSequence(v)
    }

    /// `(l, I)`.
    pub fn prepend(&self, l: u32) -> OpSequence {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        OpSequence(v)
    }

    /// `(I, i)`.
    pub fn append(&self, i: u32) -> OpSequence {
        let mut v = self.0.clone();
        v.push(i);
        OpSequence(v)
    }

    /// Splits `(J, j)` into `J` and `j`.
    pub fn split_last(&self) -> Option<(OpSequence, u32)> {
        self.0
            .split_last()
            .map(|(&j, rest)| (OpSequence(rest.to_vec()), j))
    }

    /// Drops the first entry.
    pub fn tail(&self) -> OpSequence {
        OpSequence(self.0.get(1..).unwrap_or_default().to_vec())
    }

    fn replace_pair(&self, p: usize, a: u32, b: u32) -> OpSequence {
        let mut v = self.0.clone();
        v[p] = a;
        v[p + 1] = b;
        OpSequence(v)
    }
}

impl From<Vec<u32>> for OpSequence {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[u32; N]> for OpSequence {
    fn from(v: [u32; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for OpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for OpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The admissible expansion `Q^I = Σ_J λ^I_J Q^J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaExpansion {
    pub source: OpSequence,
    pub terms: F2Combination<OpSequence>,
}

impl LambdaExpansion {
    /// `λ^I_J`.
    pub fn coefficient(&self, j: &OpSequence) -> bool {
        self.terms.contains(j)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
}

/// The Adém relation for an inadmissible pair `Q^r Q^s`, `r > 2s`.
pub fn adem_pair(r: u32, s: u32) -> Result<F2Combination<OpSequence>, DyerLashofError> {
    if r <= 2 * s {
        return Err(DyerLashofError::AdmissiblePair { r, s });
    }
    // C(i-s-1, 2i-r) needs 2i >= r and i-s-1 >= 2i-r, i.e. i <= r-s-1.
    let lo = r.div_ceil(2);
    let hi = r - s - 1;
    Ok((lo..=hi)
        .filter(|&i| binom_mod2(u64::from(i - s - 1), u64::from(2 * i - r)).is_one())
        .map(|i| OpSequence(vec![r + s - i, i]))
        .collect())
}

static MEMO: LazyLock<RwLock<HashMap<OpSequence, F2Combination<OpSequence>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn normalize_memo(
    seq: &OpSequence,
    depth: usize,
) -> Result<F2Combination<OpSequence>, DyerLashofError> {
    if let Some(hit) = MEMO.read().expect("normalize memo poisoned").get(seq) {
        return Ok(hit.clone());
    }
    if depth > REWRITE_BUDGET {
        return Err(DyerLashofError::RewriteBudget(seq.clone()));
    }
    let result = match seq.inadmissible_positions().last() {
        None => F2Combination::single(seq.clone()),
        Some(p) => {
            let (r, s) = (seq.0[p], seq.0[p + 1]);
            let mut acc = F2Combination::zero();
            for pair in adem_pair(r, s)? {
                let next = seq.replace_pair(p, pair.0[0], pair.0[1]);
                acc += normalize_memo(&next, depth + 1)?;
            }
            acc
        }
    };
    MEMO.write()
        .expect("normalize memo poisoned")
        .insert(seq.clone(), result.clone());
    Ok(result)
}

/// Writes `Q^I` as a sum of admissible monomials.
pub fn try_normalize(seq: &OpSequence) -> Result<LambdaExpansion, DyerLashofError> {
    Ok(LambdaExpansion {
        source: seq.clone(),
        terms: normalize_memo(seq, 0)?,
    })
}

/// Writes `Q^I` as a sum of admissible monomials.
///
/// Panics if the rewrite budget is exhausted, which does not happen for
/// any sequence the rest of the crate produces.
pub fn normalize(seq: &OpSequence) -> LambdaExpansion {
    try_normalize(seq).unwrap_or_else(|e| panic!("{e}"))
}

/// `normalize(I ++ K)`.
pub fn compose_and_normalize(i: &OpSequence, k: &OpSequence) -> LambdaExpansion {
    normalize(&i.concat(k))
}

/// Which inadmissible pair to rewrite first in [`rewrite_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// Unmemoized worklist normalization under a fixed rewriting order.
/// Used to cross-check [`normalize`].
pub fn rewrite_with(
    seq: &OpSequence,
    strategy: RewriteStrategy,
) -> Result<F2Combination<OpSequence>, DyerLashofError> {
    let mut pending: F2Combination<OpSequence> = F2Combination::single(seq.clone());
    let mut done = F2Combination::zero();
    let mut steps = 0usize;
    while !pending.is_zero() {
        steps += 1;
        if steps > REWRITE_BUDGET * 16 {
            return Err(DyerLashofError::RewriteBudget(seq.clone()));
        }
        let mut next = F2Combination::zero();
        for term in pending {
            let pos = match strategy {
                RewriteStrategy::Leftmost => term.inadmissible_positions().next(),
                RewriteStrategy::Rightmost => term.inadmissible_positions().last(),
            };
            match pos {
                None => done.add_term(term),
                Some(p) => {
                    for pair in adem_pair(term.0[p], term.0[p + 1])? {
                        next.add_term(term.replace_pair(p, pair.0[0], pair.0[1]));
                    }
                }
            }
        }
        pending = next;
    }
    Ok(done)
}

/// Nonempty admissible sequences of the given degree with `e(I) > bound`,
/// in lexicographic order. All entries are positive.
pub fn admissible_sequences(degree: u32, bound: u32) -> Vec<OpSequence> {
    fn go(
        remaining: u32,
        right: Option<u32>,
        rev: &mut Vec<u32>,
        degree: u32,
        bound: u32,
        out: &mut Vec<OpSequence>,
    ) {
        let cap = right.map_or(remaining, |r| remaining.min(2 * r));
        for s in 1..=cap {
            rev.push(s);
            if s == remaining {
                if i64::from(2 * s) - i64::from(degree) > i64::from(bound) {
                    out.push(OpSequence(rev.iter().rev().copied().collect()));
                }
            } else {
                go(remaining - s, Some(s), rev, degree, bound, out);
            }
            rev.pop();
        }
    }
    let mut out = Vec::new();
    if degree > 0 {
        go(degree, None, &mut Vec::new(), degree, bound, &mut out);
    }
    out.sort();
    out
}

/// Every sequence of nonnegative entries with length in `1..=max_len` and
/// degree at most `max_degree`.
pub fn all_sequences(max_degree: u32, max_len: usize) -> Vec<OpSequence> {
    fn go(len: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<OpSequence>) {
        if cur.len() == len {
            out.push(OpSequence(cur.clone()));
            return;
        }
        for s in 0..=budget {
            cur.push(s);
            go(len, budget - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..=max_len {
        go(len, max_degree, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(c: &F2Combination<OpSequence>) -> Vec<Vec<u32>> {
        c.iter().map(|s| s.entries().to_vec()).collect()
    }

    #[test]
    fn statistics() {
        let i = OpSequence::from([4, 2, 1]);
        assert_eq!(i.degree(), 7);
        assert_eq!(i.len(), 3);
        assert_eq!(i.excess(), Excess::Finite(1));
        assert!(i.is_admissible());
        assert_eq!(OpSequence::empty().excess(), Excess::Infinite);
        assert!(OpSequence::empty().excess().exceeds(1000));
        assert!(!OpSequence::from([3, 1]).is_admissible());
        assert_eq!(OpSequence::from([3, 1]).to_string(), "(3,1)");
    }

    #[test]
    fn adem_pair_examples() {
        assert_eq!(seqs(&adem_pair(4, 1).unwrap()), vec![vec![3, 2]]);
        assert!(adem_pair(3, 1).unwrap().is_zero());
        assert_eq!(seqs(&adem_pair(2, 0).unwrap()), vec![vec![1, 1]]);
        assert_eq!(
            adem_pair(2, 1),
            Err(DyerLashofError::AdmissiblePair { r: 2, s: 1 })
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            seqs(&normalize(&OpSequence::from([2, 1])).terms),
            vec![vec![2, 1]]
        );
        assert!(normalize(&OpSequence::from([7, 3])).is_zero());
        assert!(normalize(&OpSequence::from([7, 4, 1])).is_zero());
        assert!(normalize(&OpSequence::from([5, 2])).is_zero());
        assert!(normalize(&OpSequence::from([1, 0])).is_zero());
        assert_eq!(
            seqs(&normalize(&OpSequence::from([4, 1])).terms),
            vec![vec![3, 2]]
        );
    }

    #[test]
    fn compose_examples() {
        let e = compose_and_normalize(&OpSequence::from([7]), &OpSequence::from([4, 1]));
        assert!(e.is_zero());
        assert!(compose_and_normalize(&OpSequence::empty(), &OpSequence::from([3, 1])).is_zero());
        let e = compose_and_normalize(&OpSequence::from([5]), &OpSequence::empty());
        assert_eq!(seqs(&e.terms), vec![vec![5]]);
    }

    #[test]
    fn adem_pair_terms_raise_last_entry_and_lower_excess() {
        for r in 0..40u32 {
            for s in 0..20u32 {
                if r <= 2 * s {
                    continue;
                }
                for t in adem_pair(r, s).unwrap().iter() {
                    let (a, b) = (t.entries()[0], t.entries()[1]);
                    assert_eq!(a + b, r + s);
                    assert!(b > s, "({r},{s}) -> {t}");
                    assert!(a <= 2 * b, "({r},{s}) -> {t} not admissible");
                    assert!(i64::from(a) - i64::from(b) <= i64::from(s));
                    assert!(i64::from(a) - i64::from(b) < i64::from(r) - i64::from(s));
                }
            }
        }
    }

    #[test]
    fn strategies_agree_with_memo() {
        for seq in all_sequences(12, 4) {
            let memo = normalize(&seq).terms;
            assert_eq!(
                rewrite_with(&seq, RewriteStrategy::Leftmost).unwrap(),
                memo,
                "{seq}"
            );
            assert_eq!(
                rewrite_with(&seq, RewriteStrategy::Rightmost).unwrap(),
                memo,
                "{seq}"
            );
        }
    }

    #[test]
    fn admissible_enumeration_matches_filter() {
        for d in 1..=14 {
            for bound in 0..4 {
                let fast = admissible_sequences(d, bound);
                // Compositions of d into positive parts; a zero entry forces
                // excess <= 0 for admissible sequences.
                let mut slow: Vec<OpSequence> = (0u32..1 << (d - 1))
                    .map(|cuts| {
                        let mut parts = vec![1u32];
                        for k in 0..d - 1 {
                            if (cuts >> k) & 1 == 1 {
                                parts.push(1);
                            } else {
                                *parts.last_mut().unwrap() += 1;
                            }
                        }
                        OpSequence::new(parts)
                    })
                    .filter(|s| s.is_admissible() && s.excess().exceeds(bound))
                    .collect();
                slow.sort();
                assert_eq!(fast, slow, "degree {d} bound {bound}");
            }
        }
    }
}

use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};

/// A formal sum `Σ c_t · t` with coefficients in the two-element field.
///
/// Stored as the set of terms with coefficient one; adding a term that is
/// already present cancels it. Zero is the empty set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Combination<T: Ord> {
    terms: BTreeSet<T>,
}

impl<T: Ord> Default for F2Combination<T> {
    fn default() -> Self {
        Self {
            terms: BTreeSet::new(),
        }
    }
}

impl<T: Ord> F2Combination<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(term: T) -> Self {
        let mut c = Self::zero();
        c.terms.insert(term);
        c
    }

    /// Adds one copy of `term`.
    pub fn add_term(&mut self, term: T) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    pub fn contains(&self, term: &T) -> bool {
        self.terms.contains(term)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, T> {
        self.terms.iter()
    }

    pub fn map<U: Ord>(&self, f: impl FnMut(&T) -> U) -> F2Combination<U> {
        self.iter().map(f).collect()
    }

    pub fn into_terms(self) -> BTreeSet<T> {
        self.terms
    }
}

impl<T: Ord> FromIterator<T> for F2Combination<T> {
    /// Sums the iterated terms, so repeated terms cancel in pairs.
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut c = Self::zero();
        for t in iter {
            c.add_term(t);
        }
        c
    }
}

impl<T: Ord> Extend<T> for F2Combination<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for t in iter {
            self.add_term(t);
        }
    }
}

impl<T: Ord> AddAssign for F2Combination<T> {
    fn add_assign(&mut self, rhs: Self) {
        for t in rhs.terms {
            self.add_term(t);
        }
    }
}

impl<T: Ord + Clone> AddAssign<&F2Combination<T>> for F2Combination<T> {
    fn add_assign(&mut self, rhs: &Self) {
        for t in &rhs.terms {
            self.add_term(t.clone());
        }
    }
}

impl<T: Ord> Add for F2Combination<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<'a, T: Ord> IntoIterator for &'a F2Combination<T> {
    type Item = &'a T;
    type IntoIter = btree_set::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<T: Ord> IntoIterator for F2Combination<T> {
    type Item = T;
    type IntoIter = btree_set::IntoIter<T>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<T: Ord + fmt::Display> fmt::Display for F2Combination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for F2Combination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_cancel_in_pairs() {
        let c: F2Combination<u32> = [1, 2, 2, 3, 1, 1].into_iter().collect();
        assert_eq!(c.iter().copied().collect::<Vec<_>>(), vec![1, 3]);
        let d = c.clone() + c;
        assert!(d.is_zero());
        assert_eq!(format!("{d}"), "0");
    }
}

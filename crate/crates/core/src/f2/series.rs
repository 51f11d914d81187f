use std::collections::BTreeMap;

/// Number of polynomial generators in each positive degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorCounts {
    counts: BTreeMap<u32, u64>,
}

impl GeneratorCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the count in `degree`; degree zero is not a generator degree.
    pub fn set(&mut self, degree: u32, count: u64) {
        assert!(degree > 0, "generators live in positive degree");
        if count == 0 {
            self.counts.remove(&degree);
        } else {
            self.counts.insert(degree, count);
        }
    }

    pub fn get(&self, degree: u32) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }
}

impl FromIterator<(u32, u64)> for GeneratorCounts {
    fn from_iter<I: IntoIterator<Item = (u32, u64)>>(iter: I) -> Self {
        let mut q = Self::new();
        for (d, c) in iter {
            q.set(d, q.get(d) + c);
        }
        q
    }
}

/// Graded dimensions `0..=max_degree` of the free commutative algebra over
/// the two-element field with `q[m]` polynomial generators in degree `m`.
///
/// Each generator of degree `m` multiplies the Poincaré series by
/// `1/(1 - t^m)`, applied as an in-place prefix convolution.
pub fn free_commutative_dims(q: &GeneratorCounts, max_degree: u32) -> Vec<u64> {
    let top = max_degree as usize;
    let mut dims = vec![0u64; top + 1];
    dims[0] = 1;
    for (m, count) in q.iter() {
        let m = m as usize;
        if m > top {
            continue;
        }
        for _ in 0..count {
            for n in m..=top {
                dims[n] += dims[n - m];
            }
        }
    }
    dims
}

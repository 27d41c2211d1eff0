use std::fmt;

/// Multi-index `β ∈ ℕⁿ`; its length is the ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVec(Vec<u32>);

impl ExponentVec {
    pub fn new(v: Vec<u32>) -> Self {
        ExponentVec(v)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVec(vec![0; n])
    }

    pub fn ones(n: usize) -> Self {
        ExponentVec(vec![1; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|β|`
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn add(&self, other: &ExponentVec) -> ExponentVec {
        debug_assert_eq!(self.len(), other.len());
        ExponentVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &ExponentVec) -> Option<ExponentVec> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(ExponentVec)
    }

    pub fn dot(&self, other: &[u32]) -> u64 {
        self.0.iter().zip(other).map(|(&a, &b)| a as u64 * b as u64).sum()
    }

    /// Nonzero coordinates, as (index, exponent).
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|(_, e)| *e > 0)
    }

    /// All exponent vectors of length `n` with `|β| ≤ bound`, in a fixed order.
    pub fn simplex(n: usize, bound: u64) -> Vec<ExponentVec> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<ExponentVec>) {
            if i == cur.len() {
                out.push(ExponentVec(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e as u32;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, bound, &mut cur, &mut out);
        out
    }

    /// All `β` with `β ≤ upper` componentwise.
    pub fn boxed(upper: &[u32]) -> Vec<ExponentVec> {
        let mut out = vec![ExponentVec(Vec::with_capacity(upper.len()))];
        for &u in upper {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..=u).map(move |k| {
                        let mut v = e.0.clone();
                        v.push(k);
                        ExponentVec(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl From<Vec<u32>> for ExponentVec {
    fn from(v: Vec<u32>) -> Self {
        ExponentVec(v)
    }
}

impl From<&[u32]> for ExponentVec {
    fn from(v: &[u32]) -> Self {
        ExponentVec(v.to_vec())
    }
}

impl fmt::Display for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(ExponentVec::simplex(2, 3).len(), 10);
        assert_eq!(ExponentVec::simplex(3, 2).len(), 10);
        assert_eq!(ExponentVec::simplex(0, 5).len(), 1);
        assert!(ExponentVec::simplex(3, 4).iter().all(|e| e.total() <= 4));
    }

    #[test]
    fn boxed_enumeration() {
        let b = ExponentVec::boxed(&[1, 2]);
        assert_eq!(b.len(), 6);
        assert!(b.contains(&ExponentVec::new(vec![1, 2])));
    }
}

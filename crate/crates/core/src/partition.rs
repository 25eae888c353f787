//! Integer partitions and their statistics.

use std::fmt;

use serde_json::Value;

use crate::Error;

/// An integer partition: a weakly decreasing sequence of positive parts.
/// The empty partition is a first-class value (the unique partition of 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, panicking unless the parts are positive and
    /// weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive: {parts:?}"
        );
        Partition { parts }
    }

    /// Builds a partition from arbitrary nonnegative entries by dropping
    /// zeros and sorting decreasingly.
    pub fn from_unsorted(mut entries: Vec<usize>) -> Self {
        entries.retain(|&e| e > 0);
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: entries }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`, the integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ell(lambda)`, the number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), with parts beyond the length reading as 0.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The conjugate partition `lambda'`.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// True if the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// `z_mu = prod_i i^{k_i} k_i!` where `mu` has `k_i` parts of size `i`.
    pub fn z(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let size = self.parts[i];
            let mut mult = 0u64;
            while i < self.parts.len() && self.parts[i] == size {
                mult += 1;
                i += 1;
            }
            for k in 1..=mult {
                z *= size as u64 * k;
            }
        }
        // prod over blocks of size^mult * mult! -- the loop above multiplies
        // size*k for k = 1..mult, which is exactly size^mult * mult!.
        z
    }

    /// Hook lengths of all cells, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.part(j) - i - 1);
            }
        }
        hooks
    }

    /// `f_lambda = n! / prod(hooks)`: the number of standard Young tableaux,
    /// equivalently the multiplicity of the irreducible indexed by `lambda`
    /// in the regular representation.
    pub fn hook_multiplicity(&self) -> u64 {
        let n = self.size() as u64;
        let numerator: u64 = (1..=n).product::<u64>().max(1);
        let denominator: u64 = self.hook_lengths().iter().map(|&h| h as u64).product();
        debug_assert_eq!(numerator % denominator, 0);
        numerator / denominator
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.parts.iter().map(|&p| Value::from(p as u64)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("expected a JSON array, got {v}")))?;
        let mut parts = Vec::with_capacity(arr.len());
        for e in arr {
            let p = e
                .as_u64()
                .ok_or_else(|| Error::InvalidInput(format!("bad partition entry {e}")))?;
            parts.push(p as usize);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidInput(format!(
                "not a partition: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, each exactly once, in reverse-lexicographic order:
/// `(n)` first, `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    rec(n, n, &mut prefix, &mut out);
    return out;

    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_zero_is_the_empty_partition() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
    }

    #[test]
    fn partitions_of_three_in_reverse_lex_order() {
        let expected = vec![
            Partition::new(vec![3]),
            Partition::new(vec![2, 1]),
            Partition::new(vec![1, 1, 1]),
        ];
        assert_eq!(partitions_of(3), expected);
    }

    #[test]
    fn partitions_of_six_counted_by_brute_force() {
        // Independent oracle: enumerate weakly decreasing positive sequences
        // summing to 6.
        fn walk(remaining: usize, max: usize, count: &mut usize) {
            if remaining == 0 {
                *count += 1;
                return;
            }
            for p in 1..=max.min(remaining) {
                walk(remaining - p, p, count);
            }
        }
        let mut count = 0usize;
        walk(6, 6, &mut count);
        assert_eq!(count, 11);
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn z_values() {
        assert_eq!(Partition::new(vec![1, 1, 1]).z(), 6);
        assert_eq!(Partition::new(vec![2, 1]).z(), 2);
        assert_eq!(Partition::new(vec![2, 2]).z(), 8);
        assert_eq!(Partition::empty().z(), 1);
    }

    #[test]
    fn hook_multiplicities() {
        assert_eq!(Partition::new(vec![5]).hook_multiplicity(), 1);
        assert_eq!(Partition::new(vec![2, 1]).hook_multiplicity(), 2);
        assert_eq!(Partition::new(vec![2, 2]).hook_multiplicity(), 2);
    }

    #[test]
    fn conjugate_is_an_involution() {
        for n in 0..=7 {
            for p in partitions_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn hook_multiplicities_square_to_factorial() {
        // Regular-representation dimension count.
        for n in 1..=7u64 {
            let total: u64 = partitions_of(n as usize)
                .iter()
                .map(|p| p.hook_multiplicity().pow(2))
                .sum();
            let factorial: u64 = (1..=n).product();
            assert_eq!(total, factorial, "n = {n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = Partition::new(vec![4, 2, 1]);
        assert_eq!(Partition::from_json(&p.to_json()).unwrap(), p);
        assert!(Partition::from_json(&serde_json::json!([1, 3])).is_err());
    }
}

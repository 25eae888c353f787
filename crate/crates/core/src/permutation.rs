//! Permutations in one-line notation and their descent statistics.

use std::fmt;

use serde_json::Value;

use crate::Error;

/// A permutation of `{1..n}` stored as its one-line word
/// `sigma(1) sigma(2) ... sigma(n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, panicking unless the word is a bijection on
    /// `{1..n}`.
    pub fn new(word: Vec<usize>) -> Self {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            assert!(
                v >= 1 && v <= n && !seen[v],
                "not a permutation of 1..{n}: {word:?}"
            );
            seen[v] = true;
        }
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// Descent positions: 1-based `i` with `sigma(i) > sigma(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.word.len())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .collect()
    }

    /// The major index: the sum of the descent positions.
    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    /// The comajor index: `sum of (n - i)` over descent positions `i`.
    /// This is the statistic carried by the weights of compact diagrams.
    pub fn comaj(&self) -> usize {
        let n = self.n();
        self.descents().iter().map(|&i| n - i).sum()
    }

    /// `(d_1, ..., d_n)` where `d_i` counts descent positions strictly
    /// below `i`. Weakly increasing with steps in `{0, 1}`, `d_1 = 0`.
    pub fn descent_prefix_counts(&self) -> Vec<usize> {
        let mut counts = Vec::with_capacity(self.n());
        let mut seen = 0usize;
        for i in 1..=self.n() {
            counts.push(seen);
            if i < self.n() && self.word[i - 1] > self.word[i] {
                seen += 1;
            }
        }
        counts
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.word.iter().map(|&v| Value::from(v as u64)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("expected a JSON array, got {v}")))?;
        let mut word = Vec::with_capacity(arr.len());
        for e in arr {
            let p = e
                .as_u64()
                .ok_or_else(|| Error::InvalidInput(format!("bad permutation entry {e}")))?;
            word.push(p as usize);
        }
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v < 1 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 1..{n}: {word:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// All of `S_n` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    rec(n, &mut word, &mut used, &mut out);
    return out;

    fn rec(n: usize, word: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if word.len() == n {
            out.push(Permutation { word: word.clone() });
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                word.push(v);
                rec(n, word, used, out);
                word.pop();
                used[v] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_no_descents() {
        let id = Permutation::identity(7);
        assert_eq!(id.maj(), 0);
        assert_eq!(id.descent_prefix_counts(), vec![0; 7]);
    }

    #[test]
    fn maj_of_the_ten_letter_example() {
        let s = Permutation::new(vec![1, 10, 2, 6, 7, 8, 9, 3, 4, 5]);
        assert_eq!(s.descents(), vec![2, 7]);
        assert_eq!(s.maj(), 9);
        assert_eq!(
            s.descent_prefix_counts(),
            vec![0, 0, 1, 1, 1, 1, 1, 2, 2, 2]
        );
    }

    #[test]
    fn maj_generating_function_for_s3() {
        // Coefficients of 1 + 2q + 2q^2 + q^3, the q-analog of 3!.
        let mut coeffs = [0usize; 4];
        for s in all_permutations(3) {
            coeffs[s.maj()] += 1;
        }
        assert_eq!(coeffs, [1, 2, 2, 1]);
    }

    #[test]
    fn prefix_counts_of_213() {
        let s = Permutation::new(vec![2, 1, 3]);
        assert_eq!(s.descent_prefix_counts(), vec![0, 1, 1]);
    }

    #[test]
    fn inverse_is_an_involution_and_prefix_counts_are_monotone() {
        for s in all_permutations(5) {
            assert_eq!(s.inverse().inverse(), s);
            let d = s.descent_prefix_counts();
            assert_eq!(d[0], 0);
            assert!(d.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1));
            // d_n counts all descents; maj is the sum of descent positions.
            assert_eq!(*d.last().unwrap(), s.descents().len());
            assert_eq!(s.maj(), s.descents().iter().sum::<usize>());
        }
    }

    #[test]
    fn all_permutations_count() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0).len(), 1);
    }
}

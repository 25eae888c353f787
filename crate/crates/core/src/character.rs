//! Irreducible characters of `S_n` by the Murnaghan-Nakayama rule, and
//! Kostka numbers by semistandard-tableau counting.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::partition::Partition;
use crate::Error;

static CHARACTER_CACHE: OnceLock<Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>> = OnceLock::new();

/// The irreducible character value `chi^lambda(mu)`.
///
/// Computed by the Murnaghan-Nakayama border-strip recursion on beta-sets,
/// memoized on `(lambda, mu)` behind a mutex so concurrent callers share the
/// cache.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, Error> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    let key = (lambda.parts().to_vec(), mu.parts().to_vec());
    let cache = CHARACTER_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return Ok(v);
    }
    let value = mn_recurse(lambda.parts(), mu.parts());
    cache.lock().unwrap().insert(key, value);
    Ok(value)
}

/// Strips a border strip of length `mu[0]` in every possible way.
///
/// With `lambda` encoded by beta-numbers `B = {lambda_i + m - i}`, removing a
/// strip of length `k` means replacing some `b` in `B` by `b - k` (which must
/// be fresh and nonnegative); the sign is `(-1)^h` where `h` counts elements
/// of `B` strictly between `b - k` and `b`.
fn mn_recurse(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let k = mu[0];
    let rest = &mu[1..];
    let m = lambda.len().max(1);
    let betas: Vec<usize> = (0..m)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + (m - 1 - i))
        .collect();
    let mut total = 0i64;
    for (pos, &b) in betas.iter().enumerate() {
        if b < k || betas.contains(&(b - k)) {
            continue;
        }
        let height = betas.iter().filter(|&&x| x > b - k && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut next = betas.clone();
        next[pos] = b - k;
        next.sort_unstable_by(|a, c| c.cmp(a));
        // Back from beta-numbers to a partition.
        let reduced: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &beta)| beta - (m - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_recurse(&reduced, rest);
    }
    total
}

/// The Kostka number `K_{lambda,mu}`: the number of semistandard tableaux of
/// shape `lambda` and content `mu`. Counted by peeling horizontal strips of
/// the largest entry.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    count_strips(lambda.parts(), mu.parts())
}

fn count_strips(lambda: &[usize], mu: &[usize]) -> u64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let strip = mu[mu.len() - 1];
    let rest = &mu[..mu.len() - 1];
    // Enumerate inner shapes nu with lambda/nu a horizontal strip of the
    // right size: lambda_{i+1} <= nu_i <= lambda_i.
    let mut total = 0u64;
    let mut nu = vec![0usize; lambda.len()];
    fn rec(
        lambda: &[usize],
        row: usize,
        removed: usize,
        strip: usize,
        nu: &mut Vec<usize>,
        rest: &[usize],
        total: &mut u64,
    ) {
        if row == lambda.len() {
            if removed == strip {
                let inner: Vec<usize> = nu.iter().copied().filter(|&p| p > 0).collect();
                *total += count_strips(&inner, rest);
            }
            return;
        }
        let lo = lambda.get(row + 1).copied().unwrap_or(0);
        let hi = lambda[row];
        // Horizontal strips also need nu_i >= lambda_{i+1} so rows stay nested.
        for keep in lo..=hi {
            let take = hi - keep;
            if removed + take > strip {
                continue;
            }
            nu[row] = keep;
            rec(lambda, row + 1, removed + take, strip, nu, rest, total);
        }
        nu[row] = 0;
    }
    rec(lambda, 0, 0, strip, &mut nu, rest, &mut total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn trivial_character_is_one() {
        for mu in partitions_of(5) {
            assert_eq!(character(&p(&[5]), &mu).unwrap(), 1);
        }
    }

    #[test]
    fn sign_character_on_a_transposition() {
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
    }

    #[test]
    fn standard_representation_dimension() {
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
    }

    #[test]
    fn dimension_equals_hook_multiplicity() {
        for n in 1..=6 {
            let ones = Partition::new(vec![1; n]);
            for lambda in partitions_of(n) {
                assert_eq!(
                    character(&lambda, &ones).unwrap(),
                    lambda.hook_multiplicity() as i64,
                    "lambda = {lambda}"
                );
            }
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(character(&p(&[2]), &p(&[3])).is_err());
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let parts = partitions_of(n);
            for mu in &parts {
                for nu in &parts {
                    let sum: i64 = parts
                        .iter()
                        .map(|l| character(l, mu).unwrap() * character(l, nu).unwrap())
                        .sum();
                    let expected = if mu == nu { mu.z() as i64 } else { 0 };
                    assert_eq!(sum, expected, "n = {n}, mu = {mu}, nu = {nu}");
                }
            }
        }
    }

    #[test]
    fn kostka_against_hook_multiplicities_and_edges() {
        for n in 1..=5 {
            let ones = Partition::new(vec![1; n]);
            for lambda in partitions_of(n) {
                // K_{lambda, 1^n} counts standard tableaux.
                assert_eq!(kostka(&lambda, &ones), lambda.hook_multiplicity());
                // K_{lambda, lambda} = 1 and K is 0 unless lambda >= mu in
                // dominance; the (n) row is all ones.
                assert_eq!(kostka(&lambda, &lambda), 1);
                assert_eq!(kostka(&p(&[n]), &lambda), 1);
            }
        }
        assert_eq!(kostka(&p(&[2, 1]), &p(&[3])), 0);
        // s_31 = m_31 + m_22 + 2 m_211 + 3 m_1111.
        assert_eq!(kostka(&p(&[3, 1]), &p(&[2, 2])), 1);
        assert_eq!(kostka(&p(&[3, 1]), &p(&[2, 1, 1])), 2);
    }
}

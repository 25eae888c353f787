//! Symmetric-function engine over `q,t`-series coefficients: power-sum
//! expansions, plethystic specialization, the internal (Kronecker) product,
//! Schur and monomial conversion, and the bigraded Frobenius tables of the
//! diagonal coinvariant module.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::character::{character, kostka};
use crate::partition::{partitions_of, Partition};
use crate::permutation::all_permutations;
use crate::qt::{poch, q_factorial, truncated_inverse_factor, QtSeries, Variable};
use crate::{staircase, Coeff, Error};

/// A symmetric function written on the power-sum basis:
/// `sum over mu of c_mu p_mu`, with `q,t`-series coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PExpansion {
    n: usize,
    coeffs: BTreeMap<Partition, QtSeries>,
}

impl PExpansion {
    pub fn new(n: usize, coeffs: BTreeMap<Partition, QtSeries>) -> Self {
        for (mu, _) in &coeffs {
            assert_eq!(mu.size(), n, "p-index {mu} is not a partition of {n}");
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PExpansion { n, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, mu: &Partition) -> QtSeries {
        self.coeffs.get(mu).cloned().unwrap_or_else(QtSeries::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Partition, &QtSeries)> {
        self.coeffs.iter()
    }

    /// Applies the plethystic kernel `1 / ((1 - q^k)(1 - t^k))` to every
    /// power sum `p_k`, as a truncated series within `caps`: the coefficient
    /// of `p_mu` is multiplied by the product of the geometric factors of
    /// its parts. The p-support is unchanged.
    pub fn plethystic_specialize(&self, caps: (usize, usize)) -> PExpansion {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(mu, c)| {
                let mut scaled = c.clone().with_caps(caps.0, caps.1);
                for &part in mu.parts() {
                    scaled = &scaled * &truncated_inverse_factor(part, caps);
                }
                (mu.clone(), scaled)
            })
            .collect();
        PExpansion { n: self.n, coeffs }
    }

    /// The internal (Kronecker) product: `p_mu * p_mu = z_mu p_mu` and
    /// distinct power sums annihilate.
    pub fn internal_product(&self, other: &PExpansion) -> Result<PExpansion, Error> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        let mut coeffs = BTreeMap::new();
        for (mu, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(mu) {
                let z = Coeff::from_integer((mu.z() as i64).into());
                let product = (c * d).scale(&z);
                if !product.is_zero() {
                    coeffs.insert(mu.clone(), product);
                }
            }
        }
        Ok(PExpansion { n: self.n, coeffs })
    }

    /// The involution `omega`: `p_k -> (-1)^(k-1) p_k`, which conjugates
    /// Schur indices.
    pub fn omega(&self) -> PExpansion {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(mu, c)| {
                let sign = mu.size() - mu.len();
                let scaled = if sign % 2 == 0 { c.clone() } else { -c };
                (mu.clone(), scaled)
            })
            .collect();
        PExpansion { n: self.n, coeffs }
    }

    /// Converts to the Schur basis: the coefficient of `s_lambda` is
    /// `sum over mu of chi^lambda(mu) c_mu`.
    pub fn to_schur(&self) -> SchurTable {
        let mut coeffs = BTreeMap::new();
        for lambda in partitions_of(self.n) {
            let mut f = QtSeries::zero();
            for (mu, c) in &self.coeffs {
                let chi = character(&lambda, mu).expect("sizes match by construction");
                if chi != 0 {
                    f = &f + &c.scale(&Coeff::from_integer(chi.into()));
                }
            }
            if !f.is_zero() {
                coeffs.insert(lambda, f);
            }
        }
        SchurTable {
            n: self.n,
            coeffs,
        }
    }
}

/// `h_n = sum over mu of p_mu / z_mu`.
pub fn h_to_p(n: usize) -> PExpansion {
    let coeffs = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let c = Coeff::new(1.into(), (mu.z() as i64).into());
            (mu, QtSeries::monomial(0, 0, c))
        })
        .collect();
    PExpansion { n, coeffs }
}

/// `e_n = sum over mu of (-1)^(n - ell(mu)) p_mu / z_mu`.
pub fn e_to_p(n: usize) -> PExpansion {
    let coeffs = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let sign: i64 = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
            let c = Coeff::new(sign.into(), (mu.z() as i64).into());
            (mu, QtSeries::monomial(0, 0, c))
        })
        .collect();
    PExpansion { n, coeffs }
}

/// A symmetric function on the Schur basis: `lambda -> f_lambda(q, t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurTable {
    n: usize,
    coeffs: BTreeMap<Partition, QtSeries>,
}

impl SchurTable {
    pub fn new(n: usize, coeffs: BTreeMap<Partition, QtSeries>) -> Self {
        for (lambda, _) in &coeffs {
            assert_eq!(lambda.size(), n, "index {lambda} is not a partition of {n}");
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SchurTable { n, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, lambda: &Partition) -> QtSeries {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(QtSeries::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Partition, &QtSeries)> {
        self.coeffs.iter()
    }

    /// Back to the power-sum basis via `s_lambda = sum over mu of
    /// chi^lambda(mu) p_mu / z_mu`.
    pub fn to_p_expansion(&self) -> PExpansion {
        let mut coeffs: BTreeMap<Partition, QtSeries> = BTreeMap::new();
        for mu in partitions_of(self.n) {
            let mut c = QtSeries::zero();
            for (lambda, f) in &self.coeffs {
                let chi = character(lambda, &mu).expect("sizes match by construction");
                if chi != 0 {
                    c = &c + &f.scale(&Coeff::from_integer(chi.into()));
                }
            }
            if !c.is_zero() {
                coeffs.insert(
                    mu.clone(),
                    c.scale(&Coeff::new(1.into(), (mu.z() as i64).into())),
                );
            }
        }
        PExpansion {
            n: self.n,
            coeffs,
        }
    }

    /// Reindexes by conjugate partitions (the effect of `omega` on a Schur
    /// expansion).
    pub fn conjugate_reindexed(&self) -> SchurTable {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(lambda, f)| (lambda.conjugate(), f.clone()))
            .collect();
        SchurTable {
            n: self.n,
            coeffs,
        }
    }

    /// Expands into the monomial basis: the coefficient of `m_mu` is
    /// `sum over lambda of K_{lambda,mu} f_lambda`.
    pub fn to_monomial(&self) -> BTreeMap<Partition, QtSeries> {
        let mut out = BTreeMap::new();
        for mu in partitions_of(self.n) {
            let mut c = QtSeries::zero();
            for (lambda, f) in &self.coeffs {
                let k = kostka(lambda, &mu);
                if k != 0 {
                    c = &c + &f.scale(&Coeff::from_integer((k as i64).into()));
                }
            }
            if !c.is_zero() {
                out.insert(mu, c);
            }
        }
        out
    }

    /// JSON in the documented schema: a list of `{lambda, matrix}` entries
    /// in the canonical partition order, matrices bottom-up.
    pub fn to_json(&self) -> Result<Value, Error> {
        let mut entries = Vec::new();
        for lambda in partitions_of(self.n) {
            let f = self.coefficient(&lambda);
            entries.push(json!({
                "lambda": lambda.to_json(),
                "matrix": f.to_matrix()?.to_json(),
            }));
        }
        Ok(json!({ "n": self.n, "entries": entries }))
    }
}

/// The graded Frobenius characteristic of the singly-graded coinvariant
/// module on the power-sum basis: the coefficient of `p_mu` is
/// `(v; v)_n / (z_mu * prod over parts (1 - v^part))`, an exact polynomial
/// of degree `C(n, 2)`.
pub fn coinvariant_p_expansion(n: usize, variable: Variable) -> PExpansion {
    let top = staircase(n);
    let pad = 2;
    let caps = match variable {
        Variable::Q => (top + pad, 0),
        Variable::T => (0, top + pad),
    };
    let pochhammer = poch(n, variable).with_caps(caps.0, caps.1);
    let mut coeffs = BTreeMap::new();
    for mu in partitions_of(n) {
        let mut c = pochhammer.scale(&Coeff::new(1.into(), (mu.z() as i64).into()));
        for &part in mu.parts() {
            c = &c * &truncated_inverse_factor(part, caps);
        }
        let exact = c.into_exact();
        let (dq, dt) = exact.degrees();
        assert!(
            dq.max(dt) <= top,
            "coinvariant coefficient exceeded its degree bound"
        );
        coeffs.insert(mu, exact);
    }
    PExpansion { n, coeffs }
}

/// `(q; q)_n h_n[z / (1 - q)]` on the Schur basis: the graded Frobenius
/// characteristic of the coinvariant (equivalently harmonic) module of
/// `S_n`, with coefficients in `q` alone.
pub fn frobenius_single(n: usize) -> SchurTable {
    coinvariant_p_expansion(n, Variable::Q).to_schur()
}

/// `(q; q)_n (t; t)_n h_n[z / ((1 - t)(1 - q))]` on the Schur basis: the
/// bigraded Frobenius characteristic of the `(S_n x S_n)`-coinvariants as a
/// diagonal `S_n`-module.
///
/// Every coefficient is verified to be an exact polynomial of bidegree at
/// most `(C(n,2), C(n,2))` with nonnegative integer coefficients; a term
/// surviving beyond that bound signals an internal bug and is reported as
/// `CapOverflow`.
pub fn frobenius_bigraded(n: usize) -> Result<SchurTable, Error> {
    let top = staircase(n);
    let pad = 2;
    let caps = (top + pad, top + pad);
    let kernel = h_to_p(n).plethystic_specialize(caps);
    let scale = &poch(n, Variable::Q).with_caps(caps.0, caps.1) * &poch(n, Variable::T);
    let mut coeffs = BTreeMap::new();
    for (mu, c) in &kernel.coeffs {
        coeffs.insert(mu.clone(), c * &scale);
    }
    let table = PExpansion { n, coeffs }.to_schur();

    let mut exact = BTreeMap::new();
    for (lambda, f) in table.coeffs {
        let f = f.into_exact();
        let (dq, dt) = f.degrees();
        if dq > top || dt > top {
            return Err(Error::CapOverflow(dq, dt));
        }
        for (i, j, c) in f.terms() {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::NonIntegerCoefficient(format!(
                    "coefficient of q^{i} t^{j} in f_{lambda} is {c}"
                )));
            }
        }
        exact.insert(lambda, f);
    }
    Ok(SchurTable { n, coeffs: exact })
}

/// `sum over sigma of q^maj(sigma) t^maj(sigma^{-1})`: the bigraded Hilbert
/// series of the trivial isotypic component, by brute force over `S_n`.
pub fn maj_polynomial_trivial(n: usize) -> QtSeries {
    let mut out = QtSeries::zero();
    for sigma in all_permutations(n) {
        out.add_term(sigma.maj(), sigma.inverse().maj(), Coeff::one());
    }
    out
}

/// `sum over sigma of q^maj(sigma) t^(C(n,2) - maj(sigma^{-1}))`: the
/// bigraded Hilbert series of the alternating isotypic component.
pub fn maj_polynomial_alternating(n: usize) -> QtSeries {
    let top = staircase(n);
    let mut out = QtSeries::zero();
    for sigma in all_permutations(n) {
        out.add_term(sigma.maj(), top - sigma.inverse().maj(), Coeff::one());
    }
    out
}

/// `sum over lambda of f_lambda * f_lambda(q, t)`, checked against the
/// closed form `[n]_q! [n]_t!` (the bigraded analog of `n!^2`). A mismatch
/// is a verification failure.
pub fn hilbert_series_check(n: usize) -> Result<QtSeries, Error> {
    let table = frobenius_bigraded(n)?;
    let mut total = QtSeries::zero();
    for (lambda, f) in table.coefficients() {
        let mult = Coeff::from_integer((lambda.hook_multiplicity() as i64).into());
        total = &total + &f.scale(&mult);
    }
    let closed = &q_factorial(n, Variable::Q) * &q_factorial(n, Variable::T);
    if total != closed {
        return Err(Error::VerificationFailed(format!(
            "bigraded Hilbert series mismatch for n = {n}: {total} vs {closed}"
        )));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn int(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    fn half() -> Coeff {
        Coeff::new(1.into(), 2.into())
    }

    #[test]
    fn h_and_e_expansions_for_small_n() {
        let h1 = h_to_p(1);
        assert_eq!(h1.coefficient(&p(&[1])), QtSeries::monomial(0, 0, int(1)));

        let h2 = h_to_p(2);
        assert_eq!(h2.coefficient(&p(&[2])), QtSeries::monomial(0, 0, half()));
        assert_eq!(
            h2.coefficient(&p(&[1, 1])),
            QtSeries::monomial(0, 0, half())
        );

        let e2 = e_to_p(2);
        assert_eq!(e2.coefficient(&p(&[2])), QtSeries::monomial(0, 0, -half()));
        assert_eq!(
            e2.coefficient(&p(&[1, 1])),
            QtSeries::monomial(0, 0, half())
        );
    }

    #[test]
    fn plethystic_kernel_on_single_power_sums() {
        let f = PExpansion::new(2, BTreeMap::from([(p(&[2]), QtSeries::one())]));
        let g = f.plethystic_specialize((2, 2));
        let expected = QtSeries::from_integer_terms(&[(0, 0, 1), (2, 0, 1), (0, 2, 1), (2, 2, 1)])
            .with_caps(2, 2);
        assert_eq!(g.coefficient(&p(&[2])), expected);
    }

    #[test]
    fn internal_product_unit_and_annihilation() {
        // h_n is the unit of the internal product.
        for n in 1..=4 {
            let h = h_to_p(n);
            let f = frobenius_single(n).to_p_expansion();
            let back = f.internal_product(&h).unwrap();
            assert_eq!(back, f, "n = {n}");
        }
        let p2 = PExpansion::new(2, BTreeMap::from([(p(&[2]), QtSeries::one())]));
        let p11 = PExpansion::new(2, BTreeMap::from([(p(&[1, 1]), QtSeries::one())]));
        let z = p2.internal_product(&p11).unwrap();
        assert!(z.coefficients().next().is_none());
        assert!(p2.internal_product(&h_to_p(3)).is_err());
    }

    #[test]
    fn schur_conversion_of_h_and_e() {
        for n in 1..=5 {
            let h = h_to_p(n).to_schur();
            assert_eq!(h.coefficient(&p(&[n])), QtSeries::one());
            assert_eq!(h.coefficients().count(), 1);

            let e = e_to_p(n).to_schur();
            assert_eq!(e.coefficient(&Partition::new(vec![1; n])), QtSeries::one());
            assert_eq!(e.coefficients().count(), 1);
        }
    }

    #[test]
    fn schur_p_round_trip() {
        let table = frobenius_bigraded(3).unwrap();
        assert_eq!(table.to_p_expansion().to_schur(), table);
    }

    #[test]
    fn frobenius_small_tables() {
        let f1 = frobenius_bigraded(1).unwrap();
        assert_eq!(f1.coefficient(&p(&[1])), QtSeries::one());

        let f2 = frobenius_bigraded(2).unwrap();
        assert_eq!(
            f2.coefficient(&p(&[2])),
            QtSeries::from_integer_terms(&[(1, 1, 1), (0, 0, 1)])
        );
        assert_eq!(
            f2.coefficient(&p(&[1, 1])),
            QtSeries::from_integer_terms(&[(1, 0, 1), (0, 1, 1)])
        );
    }

    #[test]
    fn frobenius_single_small_tables() {
        let f2 = frobenius_single(2);
        assert_eq!(f2.coefficient(&p(&[2])), QtSeries::one());
        assert_eq!(
            f2.coefficient(&p(&[1, 1])),
            QtSeries::from_integer_terms(&[(1, 0, 1)])
        );
        // At q = 1 the multiplicities are the hook numbers.
        for n in 1..=5 {
            let table = frobenius_single(n);
            for lambda in partitions_of(n) {
                assert_eq!(
                    table.coefficient(&lambda).substitute_q(&int(1)),
                    QtSeries::monomial(0, 0, int(lambda.hook_multiplicity() as i64)),
                    "lambda = {lambda}"
                );
            }
        }
    }

    #[test]
    fn bigraded_at_t_zero_is_the_single_grading() {
        for n in 1..=4 {
            let big = frobenius_bigraded(n).unwrap();
            let single = frobenius_single(n);
            for lambda in partitions_of(n) {
                assert_eq!(
                    big.coefficient(&lambda).substitute_t(&int(0)),
                    single.coefficient(&lambda),
                    "n = {n}, lambda = {lambda}"
                );
            }
        }
    }

    #[test]
    fn maj_polynomials_match_corner_coefficients() {
        assert_eq!(
            maj_polynomial_trivial(2),
            QtSeries::from_integer_terms(&[(0, 0, 1), (1, 1, 1)])
        );
        assert_eq!(
            maj_polynomial_alternating(2),
            QtSeries::from_integer_terms(&[(1, 0, 1), (0, 1, 1)])
        );
        for n in 1..=5 {
            let table = frobenius_bigraded(n).unwrap();
            assert_eq!(table.coefficient(&p(&[n])), maj_polynomial_trivial(n));
            assert_eq!(
                table.coefficient(&Partition::new(vec![1; n])),
                maj_polynomial_alternating(n)
            );
        }
    }

    #[test]
    fn omega_swaps_h_and_e_and_is_an_involution() {
        for n in 1..=5 {
            assert_eq!(h_to_p(n).omega(), e_to_p(n));
            let f = frobenius_bigraded(n).unwrap().to_p_expansion();
            assert_eq!(f.omega().omega(), f);
            // omega conjugates the Schur indices.
            assert_eq!(f.omega().to_schur(), f.to_schur().conjugate_reindexed());
        }
    }

    #[test]
    fn hilbert_series_small_cases() {
        assert_eq!(hilbert_series_check(1).unwrap(), QtSeries::one());
        let h2 = hilbert_series_check(2).unwrap();
        // (1+q)(1+t)
        assert_eq!(
            h2,
            QtSeries::from_integer_terms(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
        );
        let h3 = hilbert_series_check(3).unwrap();
        assert_eq!(h3.evaluate(&int(1), &int(1)), int(36));
    }

    #[test]
    fn truncation_exactness_witness() {
        // With caps well beyond C(n,2), every surviving term of the scaled
        // plethystic sum still lies within C(n,2).
        for n in 1..=4 {
            let top = staircase(n);
            let caps = (top + 5, top + 5);
            let scale = &poch(n, Variable::Q).with_caps(caps.0, caps.1) * &poch(n, Variable::T);
            let kernel = h_to_p(n).plethystic_specialize(caps);
            let mut total = QtSeries::zero_capped(caps.0, caps.1);
            for (_, c) in kernel.coefficients() {
                total = &total + &(c * &scale);
            }
            let (dq, dt) = total.degrees();
            assert!(dq <= top && dt <= top, "n = {n}: got degrees ({dq}, {dt})");
        }
    }

    #[test]
    fn two_path_frobenius_for_small_n() {
        for n in 1..=3 {
            let a = coinvariant_p_expansion(n, Variable::Q);
            let b = coinvariant_p_expansion(n, Variable::T);
            let product = a.internal_product(&b).unwrap().to_schur();
            assert_eq!(product, frobenius_bigraded(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn monomial_expansion_of_h_and_e() {
        for n in 1..=4 {
            let h = h_to_p(n).to_schur().to_monomial();
            for mu in partitions_of(n) {
                assert_eq!(h.get(&mu), Some(&QtSeries::one()), "mu = {mu}");
            }
            let e = e_to_p(n).to_schur().to_monomial();
            let ones = Partition::new(vec![1; n]);
            assert_eq!(e.len(), 1);
            assert_eq!(e.get(&ones), Some(&QtSeries::one()));
        }
    }
}

//! Exact bivariate arithmetic in `q` and `t`: sparse polynomials and
//! truncated power series with rational coefficients, plus the dense integer
//! matrix layout used for printed tables.
//!
//! A series with caps `(Nq, Nt)` is known exactly for exponents `i <= Nq`,
//! `j <= Nt` and unknown beyond; a series without caps is an exact
//! polynomial. Arithmetic intersects caps, so truncated computations stay
//! sound: coefficients inside the caps of a product depend only on
//! coefficients inside the caps of the factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::{Coeff, Error};

/// Variable selector for single-variable constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    Q,
    T,
}

/// A sparse `q,t`-polynomial or truncated series over exact rationals.
///
/// Invariants: no stored zero coefficients; all stored exponents lie within
/// the caps when caps are present.
#[derive(Clone, PartialEq, Eq)]
pub struct QtSeries {
    coeffs: BTreeMap<(usize, usize), Coeff>,
    caps: Option<(usize, usize)>,
}

impl QtSeries {
    pub fn zero() -> Self {
        QtSeries {
            coeffs: BTreeMap::new(),
            caps: None,
        }
    }

    pub fn zero_capped(nq: usize, nt: usize) -> Self {
        QtSeries {
            coeffs: BTreeMap::new(),
            caps: Some((nq, nt)),
        }
    }

    pub fn one() -> Self {
        QtSeries::monomial(0, 0, Coeff::one())
    }

    /// `c * q^i t^j` as an exact polynomial.
    pub fn monomial(i: usize, j: usize, c: Coeff) -> Self {
        let mut s = QtSeries::zero();
        s.add_term(i, j, c);
        s
    }

    pub fn from_integer_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut s = QtSeries::zero();
        for &(i, j, c) in terms {
            s.add_term(i, j, Coeff::from_integer(c.into()));
        }
        s
    }

    pub fn caps(&self) -> Option<(usize, usize)> {
        self.caps
    }

    /// Reinterprets a capped series as an exact polynomial. The caller is
    /// asserting that nothing was lost to truncation.
    pub fn into_exact(mut self) -> Self {
        self.caps = None;
        self
    }

    pub fn with_caps(mut self, nq: usize, nt: usize) -> Self {
        self.caps = Some((nq, nt));
        self.coeffs.retain(|&(i, j), _| i <= nq && j <= nt);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^i t^j`. Panics when the exponent lies beyond the
    /// caps, where the coefficient is unknown.
    pub fn coeff(&self, i: usize, j: usize) -> Coeff {
        if let Some((nq, nt)) = self.caps {
            assert!(
                i <= nq && j <= nt,
                "coefficient of q^{i} t^{j} is beyond the caps ({nq}, {nt})"
            );
        }
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Adds `c` to the coefficient of `q^i t^j`, dropping terms beyond the
    /// caps and zero results.
    pub fn add_term(&mut self, i: usize, j: usize, c: Coeff) {
        if c.is_zero() {
            return;
        }
        if let Some((nq, nt)) = self.caps {
            if i > nq || j > nt {
                return;
            }
        }
        let entry = self.coeffs.entry((i, j)).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Coeff)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `(max q-exponent, max t-exponent)` over stored terms; `(0, 0)` for 0.
    pub fn degrees(&self) -> (usize, usize) {
        let dq = self.coeffs.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let dt = self.coeffs.keys().map(|&(_, j)| j).max().unwrap_or(0);
        (dq, dt)
    }

    fn merged_caps(a: Option<(usize, usize)>, b: Option<(usize, usize)>) -> Option<(usize, usize)> {
        match (a, b) {
            (None, None) => None,
            (Some(c), None) | (None, Some(c)) => Some(c),
            (Some((aq, at)), Some((bq, bt))) => Some((aq.min(bq), at.min(bt))),
        }
    }

    pub fn scale(&self, c: &Coeff) -> QtSeries {
        if c.is_zero() {
            let mut z = QtSeries::zero();
            z.caps = self.caps;
            return z;
        }
        QtSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, v)| (k, v * c))
                .collect(),
            caps: self.caps,
        }
    }

    /// Swaps the roles of `q` and `t`.
    pub fn swap_variables(&self) -> QtSeries {
        QtSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
            caps: self.caps.map(|(nq, nt)| (nt, nq)),
        }
    }

    /// Substitutes a rational value for `t`, collapsing onto powers of `q`.
    pub fn substitute_t(&self, value: &Coeff) -> QtSeries {
        let mut out = QtSeries::zero();
        out.caps = self.caps.map(|(nq, _)| (nq, 0));
        for (&(i, j), c) in &self.coeffs {
            let mut pow = Coeff::one();
            for _ in 0..j {
                pow *= value;
            }
            out.add_term(i, 0, c * &pow);
        }
        out
    }

    pub fn substitute_q(&self, value: &Coeff) -> QtSeries {
        self.swap_variables().substitute_t(value).swap_variables()
    }

    /// Evaluates at rational `(q, t)`.
    pub fn evaluate(&self, q: &Coeff, t: &Coeff) -> Coeff {
        let mut total = Coeff::zero();
        for (&(i, j), c) in &self.coeffs {
            let mut term = c.clone();
            for _ in 0..i {
                term *= q;
            }
            for _ in 0..j {
                term *= t;
            }
            total += term;
        }
        total
    }

    /// `(q^eq t^et) * f(1/q, 1/t)` realized as exponent reflection:
    /// coefficient of `q^i t^j` in the result is the coefficient of
    /// `q^(eq-i) t^(et-j)` in `f`. Requires an exact polynomial whose
    /// degrees fit inside the reflection bounds.
    pub fn reverse(&self, eq: usize, et: usize) -> Result<QtSeries, Error> {
        let (dq, dt) = self.degrees();
        if dq > eq || dt > et {
            return Err(Error::DegreeExceedsBound {
                got_q: dq,
                got_t: dt,
                bound_q: eq,
                bound_t: et,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| ((eq - i, et - j), c.clone()))
            .collect();
        Ok(QtSeries {
            coeffs,
            caps: None,
        })
    }

    /// Reflects the `q`-exponent only: `i -> eq - i`.
    pub fn reverse_q(&self, eq: usize) -> Result<QtSeries, Error> {
        let (dq, dt) = self.degrees();
        if dq > eq {
            return Err(Error::DegreeExceedsBound {
                got_q: dq,
                got_t: dt,
                bound_q: eq,
                bound_t: usize::MAX,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| ((eq - i, j), c.clone()))
            .collect();
        Ok(QtSeries {
            coeffs,
            caps: None,
        })
    }

    /// Dense integer layout: entry `(j, i)` (row `j` = `t`-exponent counted
    /// from the bottom, column `i` = `q`-exponent) holds the coefficient of
    /// `q^i t^j`. Fails on capped series or non-integer coefficients. The
    /// zero polynomial renders as a 1x1 zero matrix.
    pub fn to_matrix(&self) -> Result<QtMatrix, Error> {
        if self.caps.is_some() {
            return Err(Error::InvalidInput(
                "to_matrix requires an exact polynomial, not a capped series".into(),
            ));
        }
        let (dq, dt) = self.degrees();
        let mut rows = vec![vec![0i64; dq + 1]; dt + 1];
        for (&(i, j), c) in &self.coeffs {
            if !c.is_integer() {
                return Err(Error::NonIntegerCoefficient(c.to_string()));
            }
            let int = c.to_integer();
            let as_i64 = i64::try_from(&int)
                .map_err(|_| Error::NonIntegerCoefficient(format!("{int} overflows i64")))?;
            rows[j][i] = as_i64;
        }
        Ok(QtMatrix { rows })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| json!({ "q": i, "t": j, "c": c.to_string() }))
            .collect();
        json!({
            "terms": terms,
            "caps": self.caps.map(|(nq, nt)| json!([nq, nt])).unwrap_or(Value::Null),
        })
    }
}

impl Add for &QtSeries {
    type Output = QtSeries;

    fn add(self, rhs: &QtSeries) -> QtSeries {
        let caps = QtSeries::merged_caps(self.caps, rhs.caps);
        let mut out = QtSeries {
            coeffs: BTreeMap::new(),
            caps,
        };
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i, j, c.clone());
        }
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &QtSeries {
    type Output = QtSeries;

    fn sub(self, rhs: &QtSeries) -> QtSeries {
        self + &(-rhs)
    }
}

impl Neg for &QtSeries {
    type Output = QtSeries;

    fn neg(self) -> QtSeries {
        QtSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, v)| (k, -v.clone()))
                .collect(),
            caps: self.caps,
        }
    }
}

impl Mul for &QtSeries {
    type Output = QtSeries;

    fn mul(self, rhs: &QtSeries) -> QtSeries {
        let caps = QtSeries::merged_caps(self.caps, rhs.caps);
        let mut out = QtSeries {
            coeffs: BTreeMap::new(),
            caps,
        };
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &rhs.coeffs {
                let (i, j) = (i1 + i2, j1 + j2);
                if let Some((nq, nt)) = caps {
                    if i > nq || j > nt {
                        continue;
                    }
                }
                out.add_term(i, j, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for QtSeries {
    /// Terms in decreasing total degree, ties broken by decreasing
    /// `q`-exponent — the order used by the printed tables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(usize, usize)> = self.coeffs.keys().copied().collect();
        keys.sort_by(|&(i1, j1), &(i2, j2)| (i2 + j2, i2).cmp(&(i1 + j1, i1)));
        for (pos, &(i, j)) in keys.iter().enumerate() {
            let c = &self.coeffs[&(i, j)];
            let negative = c.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let mut pieces: Vec<String> = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                pieces.push(abs.to_string());
            }
            if i == 1 {
                pieces.push("q".into());
            } else if i > 1 {
                pieces.push(format!("q^{i}"));
            }
            if j == 1 {
                pieces.push("t".into());
            } else if j > 1 {
                pieces.push(format!("t^{j}"));
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QtSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if let Some((nq, nt)) = self.caps {
            write!(f, " (caps {nq},{nt})")?;
        }
        Ok(())
    }
}

/// `(v; v)_n = (1 - v)(1 - v^2) ... (1 - v^n)` as an exact polynomial.
pub fn poch(n: usize, variable: Variable) -> QtSeries {
    let mut product = QtSeries::one();
    for k in 1..=n {
        let mut factor = QtSeries::one();
        let exps = match variable {
            Variable::Q => (k, 0),
            Variable::T => (0, k),
        };
        factor.add_term(exps.0, exps.1, -Coeff::one());
        product = &product * &factor;
    }
    product
}

/// The truncated geometric expansion of `1 / ((1 - q^k)(1 - t^k))`:
/// all `q^(ak) t^(bk)` within the caps.
pub fn truncated_inverse_factor(k: usize, caps: (usize, usize)) -> QtSeries {
    assert!(k >= 1, "geometric factor needs k >= 1");
    let (nq, nt) = caps;
    let mut out = QtSeries::zero_capped(nq, nt);
    let mut i = 0;
    while i <= nq {
        let mut j = 0;
        while j <= nt {
            out.add_term(i, j, Coeff::one());
            j += k;
        }
        i += k;
    }
    out
}

/// The q-factorial `[n]_v! = prod_{k=1}^{n} (1 + v + ... + v^(k-1))` as an
/// exact polynomial.
pub fn q_factorial(n: usize, variable: Variable) -> QtSeries {
    let mut product = QtSeries::one();
    for k in 1..=n {
        let mut factor = QtSeries::zero();
        for e in 0..k {
            let exps = match variable {
                Variable::Q => (e, 0),
                Variable::T => (0, e),
            };
            factor.add_term(exps.0, exps.1, Coeff::one());
        }
        product = &product * &factor;
    }
    product
}

/// Dense integer matrix in the display convention: `rows[j][i]` is the
/// coefficient of `q^i t^j` (row index = `t`-exponent from the bottom).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QtMatrix {
    rows: Vec<Vec<i64>>,
}

impl QtMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        assert!(!rows.is_empty(), "a matrix needs at least one row");
        let width = rows[0].len();
        assert!(
            width > 0 && rows.iter().all(|r| r.len() == width),
            "rows must be nonempty and rectangular"
        );
        QtMatrix { rows }
    }

    /// Builds from rows listed top-down (highest `t`-exponent first), the
    /// order in which tables are printed.
    pub fn from_printed_rows(mut rows: Vec<Vec<i64>>) -> Self {
        rows.reverse();
        QtMatrix::new(rows)
    }

    /// `(height, width)` = (max t-degree + 1, max q-degree + 1).
    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.rows[0].len())
    }

    /// Entry at `(q-exponent, t-exponent)`, zero outside the stored block.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows.get(j).and_then(|r| r.get(i)).copied().unwrap_or(0)
    }

    /// Rows bottom-up (row 0 = coefficient row of `t^0`).
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Entrywise `self <= other`, reading absent entries as zero.
    pub fn entrywise_le(&self, other: &QtMatrix) -> bool {
        let (h, w) = self.dims();
        let (oh, ow) = other.dims();
        for j in 0..h.max(oh) {
            for i in 0..w.max(ow) {
                if self.entry(i, j) > other.entry(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Space-separated integer rows, top row = highest `t`-exponent.
    pub fn render_text(&self) -> String {
        self.rows
            .iter()
            .rev()
            .map(|row| {
                row.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Nested arrays, bottom row first (`rows[j][i]` = coefficient of
    /// `q^i t^j`).
    pub fn to_json(&self) -> Value {
        json!(self.rows)
    }
}

impl fmt::Display for QtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    #[test]
    fn poch_small_cases() {
        assert_eq!(poch(0, Variable::Q), QtSeries::one());
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let expected =
            QtSeries::from_integer_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1), (3, 0, 1)]);
        assert_eq!(poch(2, Variable::Q), expected);
        // q = 1 kills the (1 - q) factor.
        assert!(poch(3, Variable::Q)
            .substitute_q(&int(1))
            .is_zero());
    }

    #[test]
    fn truncated_geometric_factors() {
        let g = truncated_inverse_factor(1, (2, 0));
        let expected = QtSeries::from_integer_terms(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)])
            .with_caps(2, 0);
        assert_eq!(g, expected);

        // k = 2 with caps (3, 3) is (1 + q^2)(1 + t^2).
        let g = truncated_inverse_factor(2, (3, 3));
        let expected =
            QtSeries::from_integer_terms(&[(0, 0, 1), (2, 0, 1), (0, 2, 1), (2, 2, 1)])
                .with_caps(3, 3);
        assert_eq!(g, expected);

        // k beyond both caps leaves only the constant term.
        let g = truncated_inverse_factor(9, (3, 3));
        assert_eq!(g, QtSeries::one().with_caps(3, 3));
    }

    #[test]
    fn reverse_examples() {
        let one = QtSeries::one();
        assert_eq!(
            one.reverse(1, 1).unwrap(),
            QtSeries::from_integer_terms(&[(1, 1, 1)])
        );

        let f = QtSeries::from_integer_terms(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(f.reverse(1, 1).unwrap(), f);

        // qt + 1 is self-reverse at bounds (1, 1).
        let f = QtSeries::from_integer_terms(&[(1, 1, 1), (0, 0, 1)]);
        assert_eq!(f.reverse(1, 1).unwrap(), f);

        // Degree above the bound is an error.
        let f = QtSeries::from_integer_terms(&[(2, 0, 1)]);
        assert!(f.reverse(1, 1).is_err());
    }

    #[test]
    fn matrix_layout() {
        assert_eq!(
            QtSeries::zero().to_matrix().unwrap(),
            QtMatrix::new(vec![vec![0]])
        );
        let f = QtSeries::from_integer_terms(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(
            f.to_matrix().unwrap(),
            QtMatrix::new(vec![vec![0, 1], vec![1, 0]])
        );
        let half = QtSeries::monomial(0, 0, Coeff::new(1.into(), 2.into()));
        assert!(half.to_matrix().is_err());
    }

    #[test]
    fn matrix_text_puts_highest_t_on_top() {
        let f = QtSeries::from_integer_terms(&[(0, 2, 3), (1, 0, 2)]);
        let m = f.to_matrix().unwrap();
        assert_eq!(m.render_text(), "3 0\n0 0\n0 2");
        assert_eq!(m.to_json(), serde_json::json!([[0, 2], [0, 0], [3, 0]]));
    }

    #[test]
    fn display_uses_table_term_order() {
        // q^3 t^3 + q^2 t^2 + q^2 t + q t^2 + q t + 1 prints exactly in this
        // order: total degree descending, then q-exponent descending.
        let f = QtSeries::from_integer_terms(&[
            (3, 3, 1),
            (2, 2, 1),
            (2, 1, 1),
            (1, 2, 1),
            (1, 1, 1),
            (0, 0, 1),
        ]);
        assert_eq!(
            f.to_string(),
            "q^3*t^3+q^2*t^2+q^2*t+q*t^2+q*t+1"
        );
        let g = QtSeries::from_integer_terms(&[(1, 1, 1), (0, 0, 1)]);
        assert_eq!(g.to_string(), "q*t+1");
    }

    #[test]
    fn capped_product_drops_out_of_range_terms() {
        let f = QtSeries::from_integer_terms(&[(1, 0, 1), (0, 0, 1)]).with_caps(1, 1);
        let g = &f * &f;
        assert_eq!(g.caps(), Some((1, 1)));
        // (1 + q)^2 truncated at degree 1 in q: 1 + 2q.
        assert_eq!(g.coeff(0, 0), int(1));
        assert_eq!(g.coeff(1, 0), int(2));
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = QtSeries::from_integer_terms(&[(1, 1, 2), (0, 3, 1)]);
        let at_t1 = f.substitute_t(&int(1));
        assert_eq!(
            at_t1,
            QtSeries::from_integer_terms(&[(1, 0, 2), (0, 0, 1)])
        );
        assert_eq!(f.evaluate(&int(2), &int(1)), int(5));
        assert_eq!(f.swap_variables().evaluate(&int(1), &int(2)), int(5));
    }
}

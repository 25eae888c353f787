//! Sparse polynomials in the doubled alphabet `x_1..x_n, y_1..y_n` over
//! exact rationals: orbit sums of diagrams, monomial symmetric polynomials,
//! Vandermonde determinants, diagram determinants, and the differential
//! flips.
//!
//! Monomials are ordered lexicographically under the variable order
//! `x_n > y_n > ... > x_2 > y_2 > x_1 > y_1`; the leading monomial of the
//! orbit sum of a diagram reads off the diagram itself.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::diagram::{Cell, Diagram};
use crate::partition::Partition;
use crate::permutation::{all_permutations, Permutation};
use crate::strict::StrictDiagram;
use crate::{Coeff, Error};

/// Which of the two alphabets a single-alphabet construction lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    X,
    Y,
}

/// Exponent vectors `(a_1..a_n, b_1..b_n)` for `x^a y^b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    xs: Vec<usize>,
    ys: Vec<usize>,
}

impl Monomial {
    pub fn new(xs: Vec<usize>, ys: Vec<usize>) -> Self {
        assert_eq!(xs.len(), ys.len(), "alphabets must share the length");
        Monomial { xs, ys }
    }

    pub fn constant(n: usize) -> Self {
        Monomial {
            xs: vec![0; n],
            ys: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn x_exponents(&self) -> &[usize] {
        &self.xs
    }

    pub fn y_exponents(&self) -> &[usize] {
        &self.ys
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.xs.iter().sum(), self.ys.iter().sum())
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            xs: self
                .xs
                .iter()
                .zip(&other.xs)
                .map(|(a, b)| a + b)
                .collect(),
            ys: self
                .ys
                .iter()
                .zip(&other.ys)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Reads the exponent pairs as diagram cells `(a_i, b_i)`.
    pub fn to_cells(&self) -> Vec<Cell> {
        self.xs
            .iter()
            .zip(&self.ys)
            .map(|(&a, &b)| Cell::new(a, b))
            .collect()
    }

    fn permuted(&self, sigma: &Permutation) -> Monomial {
        // The diagonal action sends x_i to x_{sigma(i)}, so the exponent at
        // position sigma(i) in the image is the exponent at i here.
        let n = self.n();
        let mut xs = vec![0; n];
        let mut ys = vec![0; n];
        for i in 1..=n {
            xs[sigma.apply(i) - 1] = self.xs[i - 1];
            ys[sigma.apply(i) - 1] = self.ys[i - 1];
        }
        Monomial { xs, ys }
    }
}

impl Ord for Monomial {
    /// Lexicographic under `x_n > y_n > ... > x_1 > y_1`.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n(), other.n());
        for i in (0..self.n()).rev() {
            match self.xs[i].cmp(&other.xs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match self.ys[i].cmp(&other.ys[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_monomial(self))
    }
}

fn render_monomial(m: &Monomial) -> String {
    let mut pieces = Vec::new();
    for (i, (&a, &b)) in m.xs.iter().zip(&m.ys).enumerate() {
        if a == 1 {
            pieces.push(format!("x{}", i + 1));
        } else if a > 1 {
            pieces.push(format!("x{}^{}", i + 1, a));
        }
        if b == 1 {
            pieces.push(format!("y{}", i + 1));
        } else if b > 1 {
            pieces.push(format!("y{}^{}", i + 1, b));
        }
    }
    if pieces.is_empty() {
        "1".into()
    } else {
        pieces.join("*")
    }
}

/// A sparse polynomial in `x_1..x_n, y_1..y_n` with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        let mut p = MultiPoly::zero(n);
        p.add_term(Monomial::constant(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::constant(n, Coeff::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        use std::collections::btree_map::Entry;
        assert_eq!(m.n(), self.n, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// The lex-largest monomial and its coefficient.
    pub fn leading_term(&self) -> Result<(&Monomial, &Coeff), Error> {
        self.terms
            .iter()
            .next_back()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial, Error> {
        Ok(self.leading_term()?.0)
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// `(total x-degree, total y-degree)` maxima over terms; `(0,0)` for 0.
    /// For bihomogeneous polynomials this is the bidegree.
    pub fn bidegree(&self) -> (usize, usize) {
        self.terms
            .keys()
            .map(Monomial::bidegree)
            .fold((0, 0), |(mx, my), (dx, dy)| (mx.max(dx), my.max(dy)))
    }

    pub fn is_bihomogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::bidegree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// The diagonal action: permute both alphabets by `sigma`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> MultiPoly {
        assert_eq!(sigma.n(), self.n);
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.permuted(sigma), c.clone());
        }
        out
    }

    /// Diagonal symmetry check via the generators: the transposition
    /// `(1 2)` and the long cycle `(1 2 ... n)`.
    pub fn is_diagonally_symmetric(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut swap = (1..=self.n).collect::<Vec<_>>();
        swap.swap(0, 1);
        let swap = Permutation::new(swap);
        if self.apply_permutation(&swap) != *self {
            return false;
        }
        let mut cycle: Vec<usize> = (2..=self.n).collect();
        cycle.push(1);
        let cycle = Permutation::new(cycle);
        self.apply_permutation(&cycle) == *self
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                json!({
                    "a": m.x_exponents(),
                    "b": m.y_exponents(),
                    "c": c.to_string(),
                })
            })
            .collect();
        json!({ "n": self.n, "terms": records })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput(format!("missing field \"n\" in {v}")))?
            as usize;
        let records = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("missing array field \"terms\"".into()))?;
        let mut out = MultiPoly::zero(n);
        for rec in records {
            let xs = exponents_from_json(rec, "a", n)?;
            let ys = exponents_from_json(rec, "b", n)?;
            let c_str = rec
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidInput(format!("missing coefficient in {rec}")))?;
            let c = Coeff::from_str(c_str)
                .map_err(|e| Error::InvalidInput(format!("bad rational {c_str:?}: {e}")))?;
            out.add_term(Monomial::new(xs, ys), c);
        }
        Ok(out)
    }
}

fn exponents_from_json(v: &Value, key: &str, n: usize) -> Result<Vec<usize>, Error> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput(format!("missing array field {key:?} in {v}")))?;
    if arr.len() != n {
        return Err(Error::InvalidInput(format!(
            "exponent row {key:?} has length {}, expected {n}",
            arr.len()
        )));
    }
    arr.iter()
        .map(|e| {
            e.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::InvalidInput(format!("bad exponent {e}")))
        })
        .collect()
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = MultiPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing lex order, leading term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let vars = render_monomial(m);
            if vars == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{abs}*{vars}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The monomial diagonally symmetric polynomial `M_D`: the sum of
/// `x^a y^b` over all distinct assignments of the cell multiset of `D` to
/// the positions `1..n`. Each distinct monomial appears with coefficient 1,
/// and the sum is bihomogeneous of bidegree `weight(D)`.
pub fn monomial_diagonal_symmetric(d: &Diagram) -> MultiPoly {
    let n = d.n();
    // Distinct cells with multiplicities.
    let mut distinct: Vec<(Cell, usize)> = Vec::new();
    for &c in d.cells() {
        match distinct.iter_mut().find(|(cell, _)| *cell == c) {
            Some((_, count)) => *count += 1,
            None => distinct.push((c, 1)),
        }
    }
    let mut out = MultiPoly::zero(n);
    let mut assignment = vec![Cell::new(0, 0); n];
    place(&mut distinct, 0, n, &mut assignment, &mut out);
    return out;

    fn place(
        remaining: &mut Vec<(Cell, usize)>,
        pos: usize,
        n: usize,
        assignment: &mut Vec<Cell>,
        out: &mut MultiPoly,
    ) {
        if pos == n {
            let xs = assignment.iter().map(|c| c.a).collect();
            let ys = assignment.iter().map(|c| c.b).collect();
            out.add_term(Monomial::new(xs, ys), Coeff::one());
            return;
        }
        for idx in 0..remaining.len() {
            if remaining[idx].1 == 0 {
                continue;
            }
            remaining[idx].1 -= 1;
            assignment[pos] = remaining[idx].0;
            place(remaining, pos + 1, n, assignment, out);
            remaining[idx].1 += 1;
        }
    }
}

/// The monomial symmetric polynomial `m_lambda` in one alphabet: the sum
/// over all distinct permutations of the padded part vector.
pub fn monomial_symmetric(
    lambda: &Partition,
    alphabet: Alphabet,
    n: usize,
) -> Result<MultiPoly, Error> {
    if lambda.len() > n {
        return Err(Error::TooManyParts(lambda.len(), n));
    }
    let mut padded: Vec<usize> = lambda.parts().to_vec();
    padded.resize(n, 0);
    let mut values: Vec<(usize, usize)> = Vec::new();
    for v in padded {
        match values.iter_mut().find(|(x, _)| *x == v) {
            Some((_, count)) => *count += 1,
            None => values.push((v, 1)),
        }
    }
    let mut out = MultiPoly::zero(n);
    let mut assignment = vec![0usize; n];
    place(&mut values, 0, n, alphabet, &mut assignment, &mut out);
    return Ok(out);

    fn place(
        remaining: &mut Vec<(usize, usize)>,
        pos: usize,
        n: usize,
        alphabet: Alphabet,
        assignment: &mut Vec<usize>,
        out: &mut MultiPoly,
    ) {
        if pos == n {
            let (xs, ys) = match alphabet {
                Alphabet::X => (assignment.clone(), vec![0; n]),
                Alphabet::Y => (vec![0; n], assignment.clone()),
            };
            out.add_term(Monomial::new(xs, ys), Coeff::one());
            return;
        }
        for idx in 0..remaining.len() {
            if remaining[idx].1 == 0 {
                continue;
            }
            remaining[idx].1 -= 1;
            assignment[pos] = remaining[idx].0;
            place(remaining, pos + 1, n, alphabet, assignment, out);
            remaining[idx].1 += 1;
        }
    }
}

/// The Vandermonde determinant `prod_{i<j} (v_i - v_j)` in one alphabet.
pub fn vandermonde(n: usize, alphabet: Alphabet) -> MultiPoly {
    let var = |i: usize| {
        let mut xs = vec![0; n];
        let mut ys = vec![0; n];
        match alphabet {
            Alphabet::X => xs[i] = 1,
            Alphabet::Y => ys[i] = 1,
        }
        Monomial::new(xs, ys)
    };
    let mut product = MultiPoly::one(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut factor = MultiPoly::zero(n);
            factor.add_term(var(i), Coeff::one());
            factor.add_term(var(j), -Coeff::one());
            product = &product * &factor;
        }
    }
    product
}

/// The determinant `det(x_i^a y_i^b)` over the cells `(a, b)` of a strict
/// diagram, rows indexed by the points `i`. Expanded over permutations;
/// with distinct cells no two terms collide, so the result has `n!`
/// monomials with coefficients `+-1`. Diagonally alternating.
pub fn diagram_determinant(d: &StrictDiagram) -> MultiPoly {
    let n = d.n();
    let cells = d.cells();
    let mut out = MultiPoly::zero(n);
    for pi in all_permutations(n) {
        let xs = (1..=n).map(|i| cells[pi.apply(i) - 1].a).collect();
        let ys = (1..=n).map(|i| cells[pi.apply(i) - 1].b).collect();
        let sign = if permutation_sign(&pi) { 1 } else { -1 };
        out.add_term(Monomial::new(xs, ys), Coeff::from_integer(sign.into()));
    }
    out
}

fn permutation_sign(p: &Permutation) -> bool {
    let w = p.word();
    let mut inversions = 0usize;
    for i in 0..w.len() {
        for j in (i + 1)..w.len() {
            if w[i] > w[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// `flip_x(P) = P(dx, y) applied to Delta_n(x)`: each term `c x^A y^B`
/// becomes `c y^B * d^A Delta_n(x)`, with exact falling-factorial scalars.
/// Sends bidegree `(j, k)` to `(C(n,2) - j, k)` when nonzero.
pub fn flip_x(p: &MultiPoly) -> MultiPoly {
    let n = p.n();
    let delta = vandermonde(n, Alphabet::X);
    let mut out = MultiPoly::zero(n);
    for (m, c) in p.terms() {
        let differentiated = differentiate(&delta, m.x_exponents(), Alphabet::X);
        for (dm, dc) in differentiated.terms() {
            // y^B multiplies; the x-part comes from the derivative.
            let xs = dm.x_exponents().to_vec();
            let ys = m.y_exponents().to_vec();
            debug_assert!(dm.y_exponents().iter().all(|&e| e == 0));
            out.add_term(Monomial::new(xs, ys), c * dc);
        }
    }
    out
}

/// `flip_y(P) = P(x, dy) applied to Delta_n(y)`.
pub fn flip_y(p: &MultiPoly) -> MultiPoly {
    let n = p.n();
    let delta = vandermonde(n, Alphabet::Y);
    let mut out = MultiPoly::zero(n);
    for (m, c) in p.terms() {
        let differentiated = differentiate(&delta, m.y_exponents(), Alphabet::Y);
        for (dm, dc) in differentiated.terms() {
            let xs = m.x_exponents().to_vec();
            let ys = dm.y_exponents().to_vec();
            debug_assert!(dm.x_exponents().iter().all(|&e| e == 0));
            out.add_term(Monomial::new(xs, ys), c * dc);
        }
    }
    out
}

/// Applies `d^orders` to `p` in the chosen alphabet, term by term.
pub fn differentiate(p: &MultiPoly, orders: &[usize], alphabet: Alphabet) -> MultiPoly {
    let n = p.n();
    assert_eq!(orders.len(), n);
    let mut out = MultiPoly::zero(n);
    'terms: for (m, c) in p.terms() {
        let exps = match alphabet {
            Alphabet::X => m.x_exponents(),
            Alphabet::Y => m.y_exponents(),
        };
        let mut scalar = Coeff::one();
        let mut reduced = exps.to_vec();
        for i in 0..n {
            if exps[i] < orders[i] {
                continue 'terms;
            }
            // Falling factorial e (e-1) ... (e-k+1).
            for f in (exps[i] - orders[i] + 1)..=exps[i] {
                scalar *= Coeff::from_integer((f as i64).into());
            }
            reduced[i] = exps[i] - orders[i];
        }
        let (xs, ys) = match alphabet {
            Alphabet::X => (reduced, m.y_exponents().to_vec()),
            Alphabet::Y => (m.x_exponents().to_vec(), reduced),
        };
        out.add_term(Monomial::new(xs, ys), c * &scalar);
    }
    out
}

//! The diagram calculus: sorted bipartite compositions, the classifying
//! permutation, compactification, compact diagrams indexed by permutations,
//! compacting moves, and the bijection between diagrams and triples
//! `(D_sigma, lambda, mu)`.
//!
//! Cells are sorted in the canonical order `a` ascending with ties broken by
//! `b` ascending. Descent counts are positional: `d_i(D)` counts descent
//! positions strictly below `i`.

use std::fmt;

use serde_json::{json, Value};

use crate::partition::Partition;
use crate::permutation::Permutation;
use crate::Error;

/// A cell `(a, b)` of the combinatorial plane `N x N`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub a: usize,
    pub b: usize,
}

impl Cell {
    pub fn new(a: usize, b: usize) -> Self {
        Cell { a, b }
    }

    /// `(a, b) -> (b, a)`.
    pub fn swap(self) -> Cell {
        Cell {
            a: self.b,
            b: self.a,
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// An `n`-cell diagram: a multiset of cells kept in canonical sorted order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    cells: Vec<Cell>,
}

/// Direction of a compacting move.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveDir {
    Left,
    Down,
}

impl Diagram {
    /// Canonicalizes an arbitrary cell multiset. Idempotent on sorted input.
    pub fn normalize(mut cells: Vec<Cell>) -> Diagram {
        assert!(!cells.is_empty(), "a diagram needs at least one cell");
        cells.sort();
        Diagram { cells }
    }

    pub fn from_rows(a_row: &[usize], b_row: &[usize]) -> Diagram {
        assert_eq!(a_row.len(), b_row.len(), "two-line rows differ in length");
        Diagram::normalize(
            a_row
                .iter()
                .zip(b_row)
                .map(|(&a, &b)| Cell::new(a, b))
                .collect(),
        )
    }

    /// The graph of a permutation: cells `(i - 1, sigma(i) - 1)`.
    pub fn permutation_graph(sigma: &Permutation) -> Diagram {
        Diagram {
            cells: (1..=sigma.n())
                .map(|i| Cell::new(i - 1, sigma.apply(i) - 1))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn a_row(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.a).collect()
    }

    pub fn b_row(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.b).collect()
    }

    /// `omega(D)`: the componentwise cell sum.
    pub fn weight(&self) -> (usize, usize) {
        self.cells
            .iter()
            .fold((0, 0), |(wa, wb), c| (wa + c.a, wb + c.b))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Swap all cells and renormalize. An involution.
    pub fn inverse(&self) -> Diagram {
        Diagram::normalize(self.cells.iter().map(|c| c.swap()).collect())
    }

    /// Descent positions: 1-based `i < n` with `a_{i+1} > a_i` and
    /// `b_{i+1} < b_i`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| {
                let prev = self.cells[i - 1];
                let next = self.cells[i];
                next.a > prev.a && next.b < prev.b
            })
            .collect()
    }

    /// `(d_1(D), ..., d_n(D))` with `d_i` the number of descent positions
    /// strictly below `i`. Satisfies `a_i >= d_i(D)` for every cell.
    pub fn descent_prefix_counts(&self) -> Vec<usize> {
        let descents = self.descents();
        let mut counts = Vec::with_capacity(self.n());
        let mut seen = 0usize;
        let mut next_descent = descents.iter().copied().peekable();
        for i in 1..=self.n() {
            if let Some(&d) = next_descent.peek() {
                if d < i {
                    seen += 1;
                    next_descent.next();
                }
            }
            counts.push(seen);
        }
        counts
    }

    /// The classifying permutation: the standardization of the `b`-word,
    /// ties broken left to right. Its descents agree with those of the
    /// diagram, and the descents of its inverse with those of `D^{-1}`.
    pub fn classifying_permutation(&self) -> Permutation {
        let b = self.b_row();
        let word = (0..b.len())
            .map(|i| {
                1 + b.iter().filter(|&&x| x < b[i]).count()
                    + b[..i].iter().filter(|&&x| x == b[i]).count()
            })
            .collect();
        Permutation::new(word)
    }

    /// The compactified diagram: cell `i` maps to
    /// `(d_i(D), d_{sigma(i)}(D^{-1}))` where `sigma(i)` is the position the
    /// swapped cell takes in `D^{-1}`. Idempotent, classification-preserving.
    pub fn compactify(&self) -> Diagram {
        let sigma = self.classifying_permutation();
        let d_direct = self.descent_prefix_counts();
        let d_inverse = self.inverse().descent_prefix_counts();
        let cells = (0..self.n())
            .map(|i| Cell::new(d_direct[i], d_inverse[sigma.apply(i + 1) - 1]))
            .collect();
        Diagram::normalize(cells)
    }

    pub fn is_compact(&self) -> bool {
        *self == self.compactify()
    }

    /// The compact diagram `D_sigma`: cells
    /// `(d_i(sigma), d_{sigma(i)}(sigma^{-1}))`. Its weight is
    /// `(comaj(sigma), comaj(sigma^{-1}))`, and the multiset of these weights
    /// over `S_n` matches the multiset of `(maj, maj of inverse)` pairs.
    pub fn compact_of_permutation(sigma: &Permutation) -> Diagram {
        let d_direct = sigma.descent_prefix_counts();
        let d_inverse = sigma.inverse().descent_prefix_counts();
        let cells: Vec<Cell> = (1..=sigma.n())
            .map(|i| Cell::new(d_direct[i - 1], d_inverse[sigma.apply(i) - 1]))
            .collect();
        // The construction order is already canonical: a is weakly
        // increasing, and within an ascending run of sigma the b-entries are
        // weakly increasing too.
        debug_assert!(cells.windows(2).all(|w| w[0] <= w[1]));
        Diagram { cells }
    }

    /// The bijection onto triples: `phi(D) = (sigma, lambda, mu)` with
    /// `lambda_{n+1-i} = a_i - d_i(sigma)` and
    /// `mu_{n+1-sigma(i)} = b_i - d_{sigma(i)}(sigma^{-1})`.
    /// `omega(D) = omega(D_sigma) + (|lambda|, |mu|)`.
    pub fn phi(&self) -> (Permutation, Partition, Partition) {
        let n = self.n();
        let sigma = self.classifying_permutation();
        let d_direct = sigma.descent_prefix_counts();
        let d_inverse = sigma.inverse().descent_prefix_counts();
        let mut lambda = vec![0usize; n];
        let mut mu = vec![0usize; n];
        for i in 1..=n {
            let cell = self.cells[i - 1];
            let s = sigma.apply(i);
            assert!(
                cell.a >= d_direct[i - 1] && cell.b >= d_inverse[s - 1],
                "diagram is not dominated by its compactification; this is a bug"
            );
            lambda[n - i] = cell.a - d_direct[i - 1];
            mu[n - s] = cell.b - d_inverse[s - 1];
        }
        let lambda = partition_from_decreasing(lambda);
        let mu = partition_from_decreasing(mu);
        (sigma, lambda, mu)
    }

    /// The inverse bijection: rebuilds the diagram with
    /// `a_i = d_i(sigma) + lambda_{n+1-i}` and
    /// `b_i = d_{sigma(i)}(sigma^{-1}) + mu_{n+1-sigma(i)}`.
    ///
    /// Panics if `lambda` or `mu` has more than `n` parts.
    pub fn phi_inverse(sigma: &Permutation, lambda: &Partition, mu: &Partition) -> Diagram {
        let n = sigma.n();
        assert!(
            lambda.len() <= n && mu.len() <= n,
            "phi_inverse needs partitions with at most {n} parts"
        );
        let d_direct = sigma.descent_prefix_counts();
        let d_inverse = sigma.inverse().descent_prefix_counts();
        let cells = (1..=n)
            .map(|i| {
                let s = sigma.apply(i);
                Cell::new(
                    d_direct[i - 1] + lambda.part(n - i),
                    d_inverse[s - 1] + mu.part(n - s),
                )
            })
            .collect();
        Diagram::normalize(cells)
    }

    /// Cells blocking a left move of `cells[pos]`: anything strictly between
    /// the target and the mover in the canonical order, i.e. cells
    /// `(a - 1, y)` with `y > b` or `(a, y)` with `y < b`.
    fn left_blockers(&self, pos: usize) -> Vec<Cell> {
        let Cell { a, b } = self.cells[pos];
        self.cells
            .iter()
            .filter(|c| (c.a + 1 == a && c.b > b) || (c.a == a && c.b < b))
            .copied()
            .collect()
    }

    /// Cells blocking a down move of `cells[pos]`: the swapped-space
    /// analogue, i.e. cells `(x, b - 1)` with `x > a` or `(x, b)` with
    /// `x < a`.
    fn down_blockers(&self, pos: usize) -> Vec<Cell> {
        let Cell { a, b } = self.cells[pos];
        self.cells
            .iter()
            .filter(|c| (c.b + 1 == b && c.a > a) || (c.b == b && c.a < a))
            .copied()
            .collect()
    }

    /// Moves the cell at `pos` (index into the sorted sequence) one unit
    /// left, if the move is permitted, and renormalizes. The classifying
    /// permutation is unchanged.
    pub fn left_move(&self, pos: usize) -> Result<Diagram, Error> {
        let cell = self.cells[pos];
        if cell.a == 0 {
            return Err(Error::MoveNotPermitted(format!(
                "cell {cell:?} is already in the leftmost column"
            )));
        }
        let blockers = self.left_blockers(pos);
        if let Some(blocker) = blockers.first() {
            return Err(Error::MoveNotPermitted(format!(
                "vertical constraint interval of {cell:?} contains {blocker:?}"
            )));
        }
        let mut cells = self.cells.clone();
        cells[pos] = Cell::new(cell.a - 1, cell.b);
        Ok(Diagram::normalize(cells))
    }

    /// Moves the cell at `pos` one unit down, if permitted.
    pub fn down_move(&self, pos: usize) -> Result<Diagram, Error> {
        let cell = self.cells[pos];
        if cell.b == 0 {
            return Err(Error::MoveNotPermitted(format!(
                "cell {cell:?} is already in the bottom row"
            )));
        }
        let blockers = self.down_blockers(pos);
        if let Some(blocker) = blockers.first() {
            return Err(Error::MoveNotPermitted(format!(
                "horizontal constraint interval of {cell:?} contains {blocker:?}"
            )));
        }
        let mut cells = self.cells.clone();
        cells[pos] = Cell::new(cell.a, cell.b - 1);
        Ok(Diagram::normalize(cells))
    }

    /// All permitted moves as `(position, direction)` pairs.
    pub fn permitted_moves(&self) -> Vec<(usize, MoveDir)> {
        let mut moves = Vec::new();
        for pos in 0..self.n() {
            // Later copies of a repeated cell describe the same move.
            if pos > 0 && self.cells[pos] == self.cells[pos - 1] {
                continue;
            }
            let cell = self.cells[pos];
            if cell.a > 0 && self.left_blockers(pos).is_empty() {
                moves.push((pos, MoveDir::Left));
            }
            if cell.b > 0 && self.down_blockers(pos).is_empty() {
                moves.push((pos, MoveDir::Down));
            }
        }
        moves
    }

    pub fn apply_move(&self, pos: usize, dir: MoveDir) -> Result<Diagram, Error> {
        match dir {
            MoveDir::Left => self.left_move(pos),
            MoveDir::Down => self.down_move(pos),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": self.a_row(), "b": self.b_row() })
    }

    pub fn from_json(v: &Value) -> Result<Diagram, Error> {
        let a = row_from_json(v, "a")?;
        let b = row_from_json(v, "b")?;
        if a.len() != b.len() {
            return Err(Error::InvalidInput(format!(
                "rows differ in length: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::InvalidInput(
                "a diagram needs at least one cell".into(),
            ));
        }
        Ok(Diagram::from_rows(&a, &b))
    }

    /// Parses the two-line text form: two comma-separated rows joined by a
    /// semicolon or a newline, e.g. `0,1,3;0,6,2`.
    pub fn parse_two_line(input: &str) -> Result<Diagram, Error> {
        let rows: Vec<&str> = input
            .split(|c| c == ';' || c == '\n')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if rows.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "expected two rows, found {}",
                rows.len()
            )));
        }
        let parse_row = |row: &str| -> Result<Vec<usize>, Error> {
            row.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad entry {tok:?}")))
                })
                .collect()
        };
        let a = parse_row(rows[0])?;
        let b = parse_row(rows[1])?;
        if a.len() != b.len() {
            return Err(Error::InvalidInput(format!(
                "rows differ in length: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::InvalidInput(
                "a diagram needs at least one cell".into(),
            ));
        }
        Ok(Diagram::from_rows(&a, &b))
    }

    /// Two-line matrix rendering, columns in canonical order.
    pub fn render_two_line(&self) -> String {
        let join = |row: Vec<usize>| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}\n{}", join(self.a_row()), join(self.b_row()))
    }

    /// ASCII picture in the plane: rows printed from the top (largest `b`)
    /// down to the x-axis, `#` for a cell of multiplicity one, the digit for
    /// higher multiplicities, `.` for empty positions.
    pub fn render_ascii(&self) -> String {
        let max_a = self.cells.iter().map(|c| c.a).max().unwrap_or(0);
        let max_b = self.cells.iter().map(|c| c.b).max().unwrap_or(0);
        let mut lines = Vec::new();
        for b in (0..=max_b).rev() {
            let mut line = String::new();
            for a in 0..=max_a {
                let count = self.cells.iter().filter(|c| c.a == a && c.b == b).count();
                let glyph = match count {
                    0 => '.'.to_string(),
                    1 => '#'.to_string(),
                    m => m.to_string(),
                };
                if a > 0 {
                    line.push(' ');
                }
                line.push_str(&glyph);
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}

fn partition_from_decreasing(entries: Vec<usize>) -> Partition {
    // The reversed indexing in phi lays the entries out weakly decreasing.
    debug_assert!(entries.windows(2).all(|w| w[0] >= w[1]));
    Partition::from_unsorted(entries)
}

fn row_from_json(v: &Value, key: &str) -> Result<Vec<usize>, Error> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput(format!("missing array field {key:?} in {v}")))?;
    arr.iter()
        .map(|e| {
            e.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::InvalidInput(format!("bad entry {e} in row {key:?}")))
        })
        .collect()
}

/// All `n`-cell diagrams with entries bounded by `max_entry`, i.e. all
/// multisets of cells from the `(max_entry + 1) x (max_entry + 1)` grid.
pub fn enumerate_diagrams(n: usize, max_entry: usize) -> Vec<Diagram> {
    let side = max_entry + 1;
    let grid: Vec<Cell> = (0..side)
        .flat_map(|a| (0..side).map(move |b| Cell::new(a, b)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    rec(&grid, 0, n, &mut chosen, &mut out);
    return out;

    fn rec(
        grid: &[Cell],
        from: usize,
        remaining: usize,
        chosen: &mut Vec<Cell>,
        out: &mut Vec<Diagram>,
    ) {
        if remaining == 0 {
            out.push(Diagram::normalize(chosen.clone()));
            return;
        }
        for idx in from..grid.len() {
            chosen.push(grid[idx]);
            // Reusing `idx` keeps multisets; starting at `idx` avoids
            // permuted duplicates.
            rec(grid, idx, remaining - 1, chosen, out);
            chosen.pop();
        }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{:?}", self.cells)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_two_line())
    }
}

//! Strict diagrams (all cells distinct): the strictly compact diagrams
//! `D_sigma^s` indexed by permutations, strict compacting moves, and the
//! operational classification of strict diagrams by fixpoints of maximal
//! move sequences.
//!
//! The strict constraint intervals are the closed variants of the plain
//! ones: the target cell itself blocks, which is what keeps strictness. For
//! a left move of `c = (a, b)` the blockers are `(a-1, y)` with `y >= b` and
//! `(a, y)` with `y < b`; for a down move they are `(x, b-1)` with `x <= a`
//! and `(x, b)` with `x > a`.

use std::fmt;

use serde_json::{json, Value};

use crate::diagram::{Cell, Diagram, MoveDir};
use crate::partition::Partition;
use crate::permutation::{all_permutations, Permutation};
use crate::{staircase, Error};

/// An `n`-cell diagram with pairwise distinct cells, in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrictDiagram {
    cells: Vec<Cell>,
}

impl StrictDiagram {
    /// Sorts and checks distinctness.
    pub fn new(mut cells: Vec<Cell>) -> Result<Self, Error> {
        assert!(!cells.is_empty(), "a diagram needs at least one cell");
        cells.sort();
        for w in cells.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedCell(w[0].a, w[0].b));
            }
        }
        Ok(StrictDiagram { cells })
    }

    pub fn from_rows(a_row: &[usize], b_row: &[usize]) -> Result<Self, Error> {
        assert_eq!(a_row.len(), b_row.len(), "two-line rows differ in length");
        StrictDiagram::new(
            a_row
                .iter()
                .zip(b_row)
                .map(|(&a, &b)| Cell::new(a, b))
                .collect(),
        )
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

    pub fn weight(&self) -> (usize, usize) {
        self.cells
            .iter()
            .fold((0, 0), |(wa, wb), c| (wa + c.a, wb + c.b))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn to_diagram(&self) -> Diagram {
        Diagram::normalize(self.cells.clone())
    }

    /// The strictly compact diagram `D_sigma^s`, obtained from `D_sigma` by
    /// keeping the first row and flipping the second inside the staircase:
    /// cell `i` is `(d_i(sigma), sigma(i) - 1 - d_{sigma(i)}(sigma^{-1}))`.
    /// Its weight is `(comaj(sigma), C(n,2) - comaj(sigma^{-1}))`.
    pub fn compact_of_permutation(sigma: &Permutation) -> StrictDiagram {
        let d_direct = sigma.descent_prefix_counts();
        let d_inverse = sigma.inverse().descent_prefix_counts();
        let cells: Vec<Cell> = (1..=sigma.n())
            .map(|i| {
                let s = sigma.apply(i);
                Cell::new(d_direct[i - 1], s - 1 - d_inverse[s - 1])
            })
            .collect();
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        StrictDiagram { cells }
    }

    fn left_blockers(&self, pos: usize) -> Vec<Cell> {
        let Cell { a, b } = self.cells[pos];
        self.cells
            .iter()
            .filter(|c| (c.a + 1 == a && c.b >= b) || (c.a == a && c.b < b))
            .copied()
            .collect()
    }

    fn down_blockers(&self, pos: usize) -> Vec<Cell> {
        let Cell { a, b } = self.cells[pos];
        self.cells
            .iter()
            .filter(|c| (c.b + 1 == b && c.a <= a) || (c.b == b && c.a > a))
            .copied()
            .collect()
    }

    /// Strict left move: as the plain left move, with the target cell also
    /// blocking, so the result is again strict.
    pub fn left_move(&self, pos: usize) -> Result<StrictDiagram, Error> {
        let cell = self.cells[pos];
        if cell.a == 0 {
            return Err(Error::MoveNotPermitted(format!(
                "cell {cell:?} is already in the leftmost column"
            )));
        }
        if let Some(blocker) = self.left_blockers(pos).first() {
            return Err(Error::MoveNotPermitted(format!(
                "strict vertical interval of {cell:?} contains {blocker:?}"
            )));
        }
        let mut cells = self.cells.clone();
        cells[pos] = Cell::new(cell.a - 1, cell.b);
        StrictDiagram::new(cells)
    }

    /// Strict down move.
    pub fn down_move(&self, pos: usize) -> Result<StrictDiagram, Error> {
        let cell = self.cells[pos];
        if cell.b == 0 {
            return Err(Error::MoveNotPermitted(format!(
                "cell {cell:?} is already in the bottom row"
            )));
        }
        if let Some(blocker) = self.down_blockers(pos).first() {
            return Err(Error::MoveNotPermitted(format!(
                "strict horizontal interval of {cell:?} contains {blocker:?}"
            )));
        }
        let mut cells = self.cells.clone();
        cells[pos] = Cell::new(cell.a, cell.b - 1);
        StrictDiagram::new(cells)
    }

    pub fn apply_move(&self, pos: usize, dir: MoveDir) -> Result<StrictDiagram, Error> {
        match dir {
            MoveDir::Left => self.left_move(pos),
            MoveDir::Down => self.down_move(pos),
        }
    }

    pub fn permitted_moves(&self) -> Vec<(usize, MoveDir)> {
        let mut moves = Vec::new();
        for pos in 0..self.n() {
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

    /// Runs strict moves to a fixpoint, taking the first permitted move at
    /// each step. Terminates because every move lowers the total weight.
    pub fn compactify(&self) -> StrictDiagram {
        let mut current = self.clone();
        loop {
            match current.permitted_moves().first() {
                Some(&(pos, dir)) => {
                    current = current
                        .apply_move(pos, dir)
                        .expect("a permitted move applies");
                }
                None => return current,
            }
        }
    }

    pub fn is_compact(&self) -> bool {
        self.permitted_moves().is_empty()
    }

    /// Classifies a strict diagram: runs moves to the fixpoint, identifies
    /// which `D_tau^s` it is, and reads `lambda` and `mu` off the sorted row
    /// differences. Fails if the fixpoint is not a strictly compact diagram
    /// or the displacements do not sort to partitions (either would signal a
    /// bug in the move rules).
    pub fn classify(&self) -> Result<(Permutation, Partition, Partition), Error> {
        let fixpoint = self.compactify();
        let n = self.n();
        let tau = all_permutations(n)
            .into_iter()
            .find(|p| StrictDiagram::compact_of_permutation(p) == fixpoint)
            .ok_or_else(|| {
                Error::VerificationFailed(format!(
                    "strict fixpoint {fixpoint:?} is not indexed by a permutation"
                ))
            })?;
        let mut a_diffs = Vec::with_capacity(n);
        let mut b_diffs = Vec::with_capacity(n);
        for (c, f) in self.cells.iter().zip(fixpoint.cells()) {
            if c.a < f.a || c.b < f.b {
                return Err(Error::VerificationFailed(format!(
                    "displacement of {c:?} against {f:?} is negative"
                )));
            }
            a_diffs.push(c.a - f.a);
            b_diffs.push(c.b - f.b);
        }
        Ok((
            tau,
            Partition::from_unsorted(a_diffs),
            Partition::from_unsorted(b_diffs),
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": self.a_row(), "b": self.b_row() })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let d = Diagram::from_json(v)?;
        StrictDiagram::new(d.cells().to_vec())
    }

    pub fn render_two_line(&self) -> String {
        self.to_diagram().render_two_line()
    }

    pub fn render_ascii(&self) -> String {
        self.to_diagram().render_ascii()
    }
}

impl fmt::Debug for StrictDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strict{:?}", self.cells)
    }
}

impl fmt::Display for StrictDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_two_line())
    }
}

/// All strict `n`-cell diagrams with entries bounded by `max_entry`.
pub fn enumerate_strict_diagrams(n: usize, max_entry: usize) -> Vec<StrictDiagram> {
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
        out: &mut Vec<StrictDiagram>,
    ) {
        if remaining == 0 {
            out.push(StrictDiagram {
                cells: chosen.clone(),
            });
            return;
        }
        if grid.len() - from < remaining {
            return;
        }
        for idx in from..grid.len() {
            chosen.push(grid[idx]);
            rec(grid, idx + 1, remaining - 1, chosen, out);
            chosen.pop();
        }
    }
}

/// The staircase weight identity for strictly compact diagrams:
/// `weight(D_sigma^s) = (comaj(sigma), C(n,2) - comaj(sigma^{-1}))`.
pub fn strict_weight(sigma: &Permutation) -> (usize, usize) {
    (
        sigma.comaj(),
        staircase(sigma.n()) - sigma.inverse().comaj(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(word: &[usize]) -> Permutation {
        Permutation::new(word.to_vec())
    }

    fn strict(a: &[usize], b: &[usize]) -> StrictDiagram {
        StrictDiagram::from_rows(a, b).unwrap()
    }

    #[test]
    fn repeated_cells_are_rejected() {
        let err = StrictDiagram::from_rows(&[0, 0], &[1, 1]).unwrap_err();
        assert_eq!(err, Error::RepeatedCell(0, 1));
    }

    #[test]
    fn strict_table_for_n3() {
        let catalog: Vec<(&[usize], &[usize], &[usize])> = vec![
            (&[1, 2, 3], &[0, 0, 0], &[0, 1, 2]),
            (&[1, 3, 2], &[0, 0, 1], &[0, 1, 1]),
            (&[2, 1, 3], &[0, 1, 1], &[0, 0, 1]),
            (&[2, 3, 1], &[0, 0, 1], &[0, 1, 0]),
            (&[3, 1, 2], &[0, 1, 1], &[1, 0, 1]),
            (&[3, 2, 1], &[0, 1, 2], &[0, 0, 0]),
        ];
        for (word, a, b) in catalog {
            let sigma = perm(word);
            assert_eq!(
                StrictDiagram::compact_of_permutation(&sigma),
                strict(a, b),
                "sigma = {sigma}"
            );
        }
    }

    #[test]
    fn strict_compacts_are_distinct_and_fixed() {
        for n in 1..=4 {
            let mut seen = std::collections::BTreeSet::new();
            for sigma in all_permutations(n) {
                let d = StrictDiagram::compact_of_permutation(&sigma);
                assert!(
                    d.permitted_moves().is_empty(),
                    "sigma = {sigma}, d = {d:?}, moves = {:?}",
                    d.permitted_moves()
                );
                assert_eq!(d.weight(), strict_weight(&sigma), "sigma = {sigma}");
                assert!(seen.insert(d.clone()), "duplicate for sigma = {sigma}");
            }
        }
    }

    #[test]
    fn strict_weights_match_maj_statistics_as_multisets() {
        for n in 1..=5 {
            let top = staircase(n);
            let mut weights: Vec<(usize, usize)> = all_permutations(n)
                .iter()
                .map(|s| StrictDiagram::compact_of_permutation(s).weight())
                .collect();
            let mut maj_pairs: Vec<(usize, usize)> = all_permutations(n)
                .iter()
                .map(|s| (s.maj(), top - s.inverse().maj()))
                .collect();
            weights.sort_unstable();
            maj_pairs.sort_unstable();
            assert_eq!(weights, maj_pairs, "n = {n}");
        }
    }

    #[test]
    fn fixpoints_of_bounded_enumeration_are_exactly_the_strict_compacts() {
        for n in 2..=4 {
            let compacts: std::collections::BTreeSet<StrictDiagram> = all_permutations(n)
                .iter()
                .map(StrictDiagram::compact_of_permutation)
                .collect();
            for d in enumerate_strict_diagrams(n, n) {
                let fixed = d.permitted_moves().is_empty();
                assert_eq!(
                    fixed,
                    compacts.contains(&d),
                    "d = {d:?}, moves = {:?}",
                    d.permitted_moves()
                );
            }
        }
    }

    #[test]
    fn every_strict_diagram_classifies() {
        for d in enumerate_strict_diagrams(3, 3) {
            let (tau, lambda, mu) = d.classify().unwrap();
            let fixpoint = StrictDiagram::compact_of_permutation(&tau);
            let (wa, wb) = d.weight();
            let (fa, fb) = fixpoint.weight();
            assert_eq!(wa, fa + lambda.size(), "d = {d:?}");
            assert_eq!(wb, fb + mu.size(), "d = {d:?}");
            assert!(lambda.len() <= 3 && mu.len() <= 3);
        }
    }

    #[test]
    fn worked_small_classification() {
        // {(0,0),(0,1),(2,0)} runs to some strict compact with partition
        // displacements.
        let d = strict(&[0, 0, 2], &[0, 1, 0]);
        let (tau, lambda, mu) = d.classify().unwrap();
        assert_eq!(
            StrictDiagram::compact_of_permutation(&tau),
            strict(&[0, 0, 1], &[0, 1, 0]),
            "fixpoint should be the strictly compact diagram of 231"
        );
        assert_eq!(tau, perm(&[2, 3, 1]));
        assert_eq!(lambda, Partition::new(vec![1]));
        assert!(mu.is_empty());
    }

    #[test]
    fn confluence_under_different_move_orders() {
        // Take the last permitted move instead of the first; the fixpoint
        // must agree.
        for d in enumerate_strict_diagrams(3, 3) {
            let first = d.compactify();
            let mut current = d.clone();
            loop {
                let moves = current.permitted_moves();
                match moves.last() {
                    Some(&(pos, dir)) => current = current.apply_move(pos, dir).unwrap(),
                    None => break,
                }
            }
            assert_eq!(current, first, "d = {d:?}");
        }
    }

    #[test]
    fn moves_preserve_strictness_and_report_blockers() {
        let d = strict(&[0, 1], &[1, 0]);
        // Left move of (1,0) is blocked by (0,1) in the closed interval.
        assert!(d.left_move(1).is_err());
        // Down move of (0,1) is permitted and lands on the compact of 21.
        let moved = d.down_move(0).unwrap();
        assert_eq!(moved, strict(&[0, 1], &[0, 0]));
        assert_eq!(
            moved,
            StrictDiagram::compact_of_permutation(&perm(&[2, 1]))
        );
    }

    #[test]
    fn json_round_trip() {
        let d = strict(&[0, 1, 2], &[1, 0, 2]);
        assert_eq!(StrictDiagram::from_json(&d.to_json()).unwrap(), d);
        let dup = json!({ "a": [0, 0], "b": [1, 1] });
        assert!(StrictDiagram::from_json(&dup).is_err());
    }
}

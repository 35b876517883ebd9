//! Young diagrams as posets: cells, diagonals, corners, up-sets and the
//! per-diagonal restriction sets used by restricted chain-order polytopes.
//!
//! Cells are `(row, col)` pairs with the componentwise order. The canonical
//! coordinate order of `R^λ` is row-major, and every vector in the crate is
//! indexed that way. Cells outside the diagram are valid values of [`Cell`];
//! formulas treat their coordinates as zero.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box `(row, col)` of `N^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
}

impl Cell {
    pub const fn new(row: i64, col: i64) -> Self {
        Cell { row, col }
    }

    /// `row - col`, the index of the diagonal through this cell.
    pub fn diagonal(self) -> i64 {
        self.row - self.col
    }

    /// Componentwise `self <= other`.
    pub fn leq(self, other: Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }

    pub fn lt(self, other: Cell) -> bool {
        self != other && self.leq(other)
    }

    pub fn comparable(self, other: Cell) -> bool {
        self.leq(other) || other.leq(self)
    }

    pub fn up(self) -> Cell {
        Cell::new(self.row - 1, self.col)
    }

    pub fn left(self) -> Cell {
        Cell::new(self.row, self.col - 1)
    }

    pub fn down(self) -> Cell {
        Cell::new(self.row + 1, self.col)
    }

    pub fn right(self) -> Cell {
        Cell::new(self.row, self.col + 1)
    }

    /// Shift along the diagonal by `-steps` in both coordinates.
    pub fn back(self, steps: i64) -> Cell {
        Cell::new(self.row - steps, self.col - steps)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A Young diagram, stored as its partition together with the row-major
/// list of cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    parts: Vec<usize>,
    offsets: Vec<usize>,
    cells: Vec<Cell>,
}

impl YoungDiagram {
    pub fn from_partition(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut cells = Vec::new();
        offsets.push(0);
        for (i, &len) in parts.iter().enumerate() {
            for j in 0..len {
                cells.push(Cell::new(i as i64 + 1, j as i64 + 1));
            }
            offsets.push(cells.len());
        }
        Ok(YoungDiagram { parts: parts.to_vec(), offsets, cells })
    }

    /// Rebuild a diagram from an arbitrary cell set, which must be a
    /// nonempty finite down-set of `N^2`.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        if set.iter().any(|c| c.row < 1 || c.col < 1) {
            return Err(Error::InvalidPartition("cell with non-positive coordinate".into()));
        }
        let rows = set.iter().map(|c| c.row).max().unwrap_or(0) as usize;
        let mut parts = vec![0usize; rows];
        for c in &set {
            parts[c.row as usize - 1] += 1;
        }
        let diagram = YoungDiagram::from_partition(&parts)?;
        if diagram.cells.iter().copied().collect::<BTreeSet<_>>() != set {
            return Err(Error::InvalidPartition("cell set is not a down-set".into()));
        }
        Ok(diagram)
    }

    /// Parse the comma-separated text format, e.g. `"4,4,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad partition entry {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.iter().any(|&p| p <= 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a non-positive part")));
        }
        let parts: Vec<usize> = parts.into_iter().map(|p| p as usize).collect();
        YoungDiagram::from_partition(&parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of rows (`m1`).
    pub fn m1(&self) -> usize {
        self.parts.len()
    }

    /// Number of columns (`m2`).
    pub fn m2(&self) -> usize {
        self.parts[0]
    }

    /// Cells in canonical row-major order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.index_of(c).is_some()
    }

    /// Position of `c` in the canonical coordinate order.
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        if c.row < 1 || c.col < 1 || c.row as usize > self.parts.len() {
            return None;
        }
        let r = c.row as usize - 1;
        if c.col as usize > self.parts[r] {
            return None;
        }
        Some(self.offsets[r] + c.col as usize - 1)
    }

    /// Coordinate labels `"(i,j)"` in canonical order.
    pub fn labels(&self) -> Vec<String> {
        self.cells.iter().map(|c| c.to_string()).collect()
    }

    /// The diagonal indices `1 - m2 ..= m1 - 1`, in descending order as used
    /// by d-vectors.
    pub fn diags(&self) -> Vec<i64> {
        let hi = self.m1() as i64 - 1;
        let lo = 1 - self.m2() as i64;
        (lo..=hi).rev().collect()
    }

    pub fn check_diagonal(&self, ell: i64) -> Result<()> {
        let hi = self.m1() as i64 - 1;
        let lo = 1 - self.m2() as i64;
        if ell < lo || ell > hi {
            return Err(Error::DiagonalOutOfRange { index: ell, lo, hi });
        }
        Ok(())
    }

    /// Cells of the `ell`-th diagonal from top-left to bottom-right.
    pub fn diagonal(&self, ell: i64) -> Vec<Cell> {
        self.cells.iter().copied().filter(|c| c.diagonal() == ell).collect()
    }

    pub fn diagonal_len(&self, ell: i64) -> usize {
        self.cells.iter().filter(|c| c.diagonal() == ell).count()
    }

    /// The maximal cell `r_ℓ` of diagonal `ell`.
    pub fn diagonal_max(&self, ell: i64) -> Result<Cell> {
        self.check_diagonal(ell)?;
        self.diagonal(ell).last().copied().ok_or(Error::DiagonalOutOfRange {
            index: ell,
            lo: 1 - self.m2() as i64,
            hi: self.m1() as i64 - 1,
        })
    }

    /// Maximal cells of the diagram.
    pub fn corners(&self) -> Vec<Cell> {
        self.cells.iter().copied().filter(|&c| !self.contains(c.down()) && !self.contains(c.right())).collect()
    }

    /// All up-sets, enumerated through their complementary sub-diagrams.
    pub fn up_sets(&self) -> Vec<UpSet> {
        let mut out = Vec::new();
        let mut shape = vec![0usize; self.parts.len()];
        self.sub_shapes(0, usize::MAX, &mut shape, &mut out);
        out
    }

    fn sub_shapes(&self, row: usize, cap: usize, shape: &mut Vec<usize>, out: &mut Vec<UpSet>) {
        if row == self.parts.len() {
            let members = self.cells.iter().copied().filter(|c| c.col as usize > shape[c.row as usize - 1]).collect();
            out.push(UpSet { members });
            return;
        }
        for len in 0..=self.parts[row].min(cap) {
            shape[row] = len;
            self.sub_shapes(row + 1, len, shape, out);
        }
        shape[row] = 0;
    }

    /// All antichains (including the empty one), by exhaustive search.
    pub fn antichains(&self) -> Vec<Vec<Cell>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.antichains_from(0, &mut current, &mut out);
        out
    }

    fn antichains_from(&self, start: usize, current: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        out.push(current.clone());
        for i in start..self.cells.len() {
            let c = self.cells[i];
            if current.iter().all(|&d| !d.comparable(c)) {
                current.push(c);
                self.antichains_from(i + 1, current, out);
                current.pop();
            }
        }
    }

    /// Every maximal chain, as a monotone down/right lattice path from
    /// `(1,1)` to a corner.
    pub fn maximal_chains(&self) -> Vec<Vec<Cell>> {
        paths_to_corners(self, Cell::new(1, 1), &|c| self.contains(c))
    }
}

/// Monotone down/right paths starting at `start`, staying inside `keep`,
/// and ending at a cell with no successor in `keep`.
pub(crate) fn paths_to_corners(diagram: &YoungDiagram, start: Cell, keep: &dyn Fn(Cell) -> bool) -> Vec<Vec<Cell>> {
    let mut out = Vec::new();
    let mut path = vec![start];
    walk(diagram, keep, &mut path, &mut out);
    out
}

fn walk(diagram: &YoungDiagram, keep: &dyn Fn(Cell) -> bool, path: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
    let last = *path.last().expect("nonempty path");
    let next: Vec<Cell> = [last.down(), last.right()].into_iter().filter(|&c| diagram.contains(c) && keep(c)).collect();
    if next.is_empty() {
        out.push(path.clone());
        return;
    }
    for c in next {
        path.push(c);
        walk(diagram, keep, path, out);
        path.pop();
    }
}

/// An up-set of a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UpSet {
    members: BTreeSet<Cell>,
}

impl UpSet {
    pub fn empty() -> Self {
        UpSet::default()
    }

    pub fn full(diagram: &YoungDiagram) -> Self {
        UpSet { members: diagram.cells().iter().copied().collect() }
    }

    /// Validate `cells` as an up-set of `diagram`.
    pub fn new<I: IntoIterator<Item = Cell>>(diagram: &YoungDiagram, cells: I) -> Result<Self> {
        let members: BTreeSet<Cell> = cells.into_iter().collect();
        let list: Vec<Cell> = members.iter().copied().collect();
        if !is_up_set(diagram, &list)? {
            return Err(Error::NotUpSet(format_cells(&list)));
        }
        Ok(UpSet { members })
    }

    /// The smallest up-set containing every generator.
    pub fn generated(diagram: &YoungDiagram, generators: &[Cell]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|&&g| !diagram.contains(g)) {
            return Err(Error::InvalidBox(format!("{g} is not in the diagram")));
        }
        let members = diagram.cells().iter().copied().filter(|&c| generators.iter().any(|&g| g.leq(c))).collect();
        Ok(UpSet { members })
    }

    /// Parse `"full"`, `"empty"`, or semicolon-separated generators such as
    /// `"4,3;3,5"`.
    pub fn parse(diagram: &YoungDiagram, text: &str) -> Result<Self> {
        match text.trim() {
            "empty" | "" => Ok(UpSet::empty()),
            "full" => Ok(UpSet::full(diagram)),
            other => {
                let gens = other.split(';').map(parse_cell).collect::<Result<Vec<_>>>()?;
                UpSet::generated(diagram, &gens)
            }
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.members.contains(&c)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self, diagram: &YoungDiagram) -> bool {
        self.members.len() == diagram.len()
    }

    /// This up-set with one more cell added (no validation).
    pub fn with(&self, c: Cell) -> UpSet {
        let mut members = self.members.clone();
        members.insert(c);
        UpSet { members }
    }

    /// Corners of the complement `λ \ C`.
    pub fn complement_corners(&self, diagram: &YoungDiagram) -> Vec<Cell> {
        let outside = |c: Cell| diagram.contains(c) && !self.contains(c);
        diagram.cells().iter().copied().filter(|&c| outside(c) && !outside(c.down()) && !outside(c.right())).collect()
    }

    /// Minimal generators, as the text format accepted by [`UpSet::parse`].
    pub fn to_text(&self, diagram: &YoungDiagram) -> String {
        if self.is_empty() {
            return "empty".into();
        }
        if self.is_full(diagram) {
            return "full".into();
        }
        let mins: Vec<String> = self
            .members
            .iter()
            .filter(|&&c| !self.members.iter().any(|&d| d.lt(c)))
            .map(|c| format!("{},{}", c.row, c.col))
            .collect();
        mins.join(";")
    }
}

pub(crate) fn parse_cell(text: &str) -> Result<Cell> {
    let nums = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad cell {text:?}"))))
        .collect::<Result<Vec<_>>>()?;
    match nums.as_slice() {
        [r, c] => Ok(Cell::new(*r, *c)),
        _ => Err(Error::Parse(format!("bad cell {text:?}"))),
    }
}

fn format_cells(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Whether `set` is closed upward inside `diagram`.
pub fn is_up_set(diagram: &YoungDiagram, set: &[Cell]) -> Result<bool> {
    if let Some(c) = set.iter().find(|&&c| !diagram.contains(c)) {
        return Err(Error::InvalidBox(format!("{c} is not in the diagram")));
    }
    let members: BTreeSet<Cell> = set.iter().copied().collect();
    // Closure under covering relations implies closure under the order.
    Ok(members.iter().all(|c| [c.down(), c.right()].into_iter().all(|n| !diagram.contains(n) || members.contains(&n))))
}

/// Corner selection rule for [`corner_flag`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagOrder {
    /// Lexicographically largest `(row, col)` corner first.
    #[default]
    LexLargest,
    /// Lexicographically smallest corner first.
    LexSmallest,
    /// Corner with the largest column first (column-major sweep).
    ColumnLargest,
}

impl std::str::FromStr for FlagOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex-largest" => Ok(FlagOrder::LexLargest),
            "lex-smallest" => Ok(FlagOrder::LexSmallest),
            "column-largest" => Ok(FlagOrder::ColumnLargest),
            _ => Err(Error::Parse(format!("unknown flag order {s:?}"))),
        }
    }
}

/// A maximal flag `∅ = C_0 ⊊ C_1 ⊊ … ⊊ C_n = λ` of up-sets.
pub fn corner_flag(diagram: &YoungDiagram, order: FlagOrder) -> Vec<UpSet> {
    let mut flag = vec![UpSet::empty()];
    let mut current = UpSet::empty();
    while current.len() < diagram.len() {
        let corners = current.complement_corners(diagram);
        let pick = match order {
            FlagOrder::LexLargest => corners.iter().max(),
            FlagOrder::LexSmallest => corners.iter().min(),
            FlagOrder::ColumnLargest => corners.iter().max_by_key(|c| (c.col, c.row)),
        };
        current = current.with(*pick.expect("nonempty complement has a corner"));
        flag.push(current.clone());
    }
    flag
}

/// Check that `flag` is a maximal flag of up-sets and return the cell added
/// at each step.
pub fn flag_steps(diagram: &YoungDiagram, flag: &[UpSet]) -> Result<Vec<Cell>> {
    if flag.first().is_none_or(|c| !c.is_empty()) {
        return Err(Error::InvalidFlag("flag must start at the empty up-set".into()));
    }
    if !flag.last().is_some_and(|c| c.is_full(diagram)) {
        return Err(Error::InvalidFlag("flag must end at the full diagram".into()));
    }
    let mut steps = Vec::with_capacity(flag.len() - 1);
    for (i, pair) in flag.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        let added: Vec<Cell> = next.cells().filter(|&c| !prev.contains(c)).collect();
        if next.len() != prev.len() + 1 || added.len() != 1 {
            return Err(Error::InvalidFlag(format!("step {} does not add exactly one cell", i + 1)));
        }
        if !prev.complement_corners(diagram).contains(&added[0]) {
            return Err(Error::InvalidFlag(format!(
                "step {} adds {} which is not a corner of the complement",
                i + 1,
                added[0]
            )));
        }
        steps.push(added[0]);
    }
    Ok(steps)
}

/// The vector `d = (d_{m1-1}, …, d_0, …, d_{1-m2})`, stored in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DVector {
    values: Vec<i64>,
    top: i64,
}

impl DVector {
    pub fn new(diagram: &YoungDiagram, values: Vec<i64>) -> Result<Self> {
        let expected = diagram.m1() + diagram.m2() - 1;
        if values.len() != expected {
            return Err(Error::InvalidDVector(format!("expected {expected} entries, got {}", values.len())));
        }
        if values.iter().any(|&v| v < 0) {
            return Err(Error::InvalidDVector(format!("{values:?} has a negative entry")));
        }
        Ok(DVector { values, top: diagram.m1() as i64 - 1 })
    }

    pub fn parse(diagram: &YoungDiagram, text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad d entry {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        DVector::new(diagram, values)
    }

    /// The vector of diagonal lengths.
    pub fn diagonal_lengths(diagram: &YoungDiagram) -> Self {
        let values = diagram.diags().into_iter().map(|l| diagram.diagonal_len(l) as i64).collect();
        DVector { values, top: diagram.m1() as i64 - 1 }
    }

    /// `d_ℓ`.
    pub fn get(&self, ell: i64) -> i64 {
        self.values[(self.top - ell) as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn scaled(&self, n: i64) -> DVector {
        DVector { values: self.values.iter().map(|v| v * n).collect(), top: self.top }
    }
}

impl fmt::Display for DVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The sets `R_ℓ, S_ℓ, S̄_ℓ, T_ℓ, T̄_ℓ` for one diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionSets {
    pub r_ell: Cell,
    pub rect: BTreeSet<Cell>,
    pub s: BTreeSet<Cell>,
    pub s_bar: BTreeSet<Cell>,
    pub t: BTreeSet<Cell>,
    pub t_bar: BTreeSet<Cell>,
}

pub fn restriction_sets(diagram: &YoungDiagram, upset: &UpSet, ell: i64) -> Result<RestrictionSets> {
    let gens: Vec<Cell> = upset.cells().collect();
    if !is_up_set(diagram, &gens)? {
        return Err(Error::NotUpSet(format_cells(&gens)));
    }
    let r_ell = diagram.diagonal_max(ell)?;
    let rect: BTreeSet<Cell> = diagram.cells().iter().copied().filter(|c| c.leq(r_ell)).collect();
    let free: Vec<Cell> = rect.iter().copied().filter(|&c| !upset.contains(c)).collect();
    let inside: Vec<Cell> = rect.iter().copied().filter(|&c| upset.contains(c)).collect();

    let s: BTreeSet<Cell> = free.iter().copied().filter(|&c| !free.iter().any(|&d| c.lt(d))).collect();
    let t: BTreeSet<Cell> = inside.iter().copied().filter(|&c| !inside.iter().any(|&d| d.lt(c))).collect();
    // Cells of R whose forward diagonal reaches S (shift ≥ 0) or T (shift ≥ 1).
    let reaches = |c: Cell, targets: &BTreeSet<Cell>, min_shift: i64| {
        targets.iter().any(|&x| x.diagonal() == c.diagonal() && x.row - c.row >= min_shift)
    };
    let s_bar = rect.iter().copied().filter(|&c| reaches(c, &s, 0)).collect();
    let t_bar = rect.iter().copied().filter(|&c| reaches(c, &t, 1)).collect();
    Ok(RestrictionSets { r_ell, rect, s, s_bar, t, t_bar })
}

/// Result of removing one of two equal-length adjacent diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalDeletion {
    pub diagram: YoungDiagram,
    pub dvector: DVector,
    /// For each coordinate of the new diagram, the coordinate of the old
    /// diagram it is read from.
    pub source: Vec<usize>,
    /// The adjacent diagonal paired with the removed one.
    pub partner: i64,
}

impl DiagonalDeletion {
    /// Apply the coordinate projection to a vector in the old coordinates.
    pub fn project<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.source.iter().map(|&i| x[i].clone()).collect()
    }
}

pub fn delete_diagonal(diagram: &YoungDiagram, d: &DVector, ell: i64) -> Result<DiagonalDeletion> {
    diagram.check_diagonal(ell)?;
    let len = diagram.diagonal_len(ell);
    let has_partner = |p: i64| diagram.check_diagonal(p).is_ok() && diagram.diagonal_len(p) == len;
    let partner = if ell > 0 || (ell == 0 && has_partner(1)) { ell + 1 } else { ell - 1 };
    if !has_partner(partner) {
        let other = if diagram.check_diagonal(partner).is_ok() {
            diagram.diagonal_len(partner).to_string()
        } else {
            "absent".to_string()
        };
        return Err(Error::DiagonalDeletion {
            index: ell,
            reason: format!("diagonal {ell} has length {len}, adjacent diagonal {partner} has length {other}"),
        });
    }
    let mut moved: Vec<(Cell, usize)> = Vec::new();
    for (idx, &c) in diagram.cells().iter().enumerate() {
        let k = c.diagonal();
        if k == ell {
            continue;
        }
        let target = if partner > ell {
            if k < ell {
                c
            } else {
                c.up()
            }
        } else if k > ell {
            c
        } else {
            c.left()
        };
        moved.push((target, idx));
    }
    let new_diagram = YoungDiagram::from_cells(moved.iter().map(|(c, _)| *c))
        .map_err(|e| Error::DiagonalDeletion { index: ell, reason: e.to_string() })?;
    let mut source = vec![0usize; new_diagram.len()];
    for (c, idx) in moved {
        source[new_diagram.index_of(c).expect("moved cell lies in new diagram")] = idx;
    }
    let values: Vec<i64> = diagram.diags().into_iter().filter(|&l| l != ell).map(|l| d.get(l)).collect();
    let dvector = DVector::new(&new_diagram, values)?;
    Ok(DiagonalDeletion { diagram: new_diagram, dvector, source, partner })
}

/// All partitions of `n`, parts in weakly decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Whether `order` lists every cell of `diagram` once with smaller cells
/// first.
pub fn is_linear_extension(diagram: &YoungDiagram, order: &[Cell]) -> bool {
    if order.len() != diagram.len() {
        return false;
    }
    let mut seen = vec![false; diagram.len()];
    for &c in order {
        let Some(i) = diagram.index_of(c) else { return false };
        if seen[i] {
            return false;
        }
        for q in [c.up(), c.left()] {
            if let Some(j) = diagram.index_of(q) {
                if !seen[j] {
                    return false;
                }
            }
        }
        seen[i] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::from_partition(parts).unwrap()
    }

    fn cells(list: &[(i64, i64)]) -> BTreeSet<Cell> {
        list.iter().map(|&(r, c)| Cell::new(r, c)).collect()
    }

    #[test]
    fn partition_sizes() {
        let l = yd(&[4, 4, 3]);
        assert_eq!((l.len(), l.m1(), l.m2()), (11, 3, 4));
        let l = yd(&[1]);
        assert_eq!(l.cells(), &[Cell::new(1, 1)]);
        assert_eq!((l.m1(), l.m2()), (1, 1));
        let l = yd(&[4, 4, 3, 2]);
        assert_eq!((l.len(), l.m1(), l.m2()), (13, 4, 4));
    }

    #[test]
    fn partition_errors() {
        assert!(YoungDiagram::from_partition(&[]).is_err());
        assert!(YoungDiagram::from_partition(&[2, 3]).is_err());
        assert!(YoungDiagram::from_partition(&[2, 0]).is_err());
        assert!(YoungDiagram::parse("3,-1").is_err());
        assert!(YoungDiagram::parse("3,x").is_err());
        assert_eq!(YoungDiagram::parse(" 4, 4,3").unwrap(), yd(&[4, 4, 3]));
    }

    #[test]
    fn corners_of_small_diagrams() {
        let got: BTreeSet<Cell> = yd(&[4, 4, 3]).corners().into_iter().collect();
        assert_eq!(got, cells(&[(2, 4), (3, 3)]));
        assert_eq!(yd(&[1]).corners(), vec![Cell::new(1, 1)]);
        let got: BTreeSet<Cell> = yd(&[3, 2]).corners().into_iter().collect();
        assert_eq!(got, cells(&[(1, 3), (2, 2)]));
    }

    #[test]
    fn diagonal_maxima() {
        let l = yd(&[4, 4, 3]);
        assert_eq!(l.diagonal_max(1).unwrap(), Cell::new(3, 2));
        assert_eq!(l.diagonal_max(-2).unwrap(), Cell::new(2, 4));
        assert_eq!(yd(&[1]).diagonal_max(0).unwrap(), Cell::new(1, 1));
        assert!(l.diagonal_max(3).is_err());
        assert!(l.diagonal_max(-4).is_err());
        assert_eq!(l.diags(), vec![2, 1, 0, -1, -2, -3]);
    }

    #[test]
    fn diagonal_count() {
        for parts in [vec![1], vec![3, 2], vec![4, 4, 3], vec![5, 1, 1]] {
            let l = yd(&parts);
            assert_eq!(l.diags().len(), l.m1() + l.m2() - 1);
            assert!(l.diags().iter().all(|&d| l.diagonal_len(d) > 0));
        }
    }

    #[test]
    fn up_set_checks() {
        let l = yd(&[3, 2]);
        let s: Vec<Cell> = cells(&[(1, 2), (1, 3), (2, 2)]).into_iter().collect();
        assert!(is_up_set(&l, &s).unwrap());
        assert!(is_up_set(&l, &[]).unwrap());
        assert!(!is_up_set(&l, &[Cell::new(1, 2)]).unwrap());
        assert!(is_up_set(&l, &[Cell::new(3, 1)]).is_err());
    }

    #[test]
    fn up_set_parsing() {
        let l = yd(&[3, 2]);
        let c = UpSet::parse(&l, "1,2;2,2").unwrap();
        assert_eq!(c.cells().collect::<BTreeSet<_>>(), cells(&[(1, 2), (1, 3), (2, 2)]));
        assert_eq!(c.to_text(&l), "1,2");
        assert!(UpSet::parse(&l, "full").unwrap().is_full(&l));
        assert!(UpSet::parse(&l, "empty").unwrap().is_empty());
        assert!(UpSet::parse(&l, "3,3").is_err());
    }

    #[test]
    fn flags() {
        let flag = corner_flag(&yd(&[1]), FlagOrder::LexLargest);
        assert_eq!(flag.len(), 2);
        assert!(flag[0].is_empty());
        let l = yd(&[3, 2]);
        for order in [FlagOrder::LexLargest, FlagOrder::LexSmallest, FlagOrder::ColumnLargest] {
            let flag = corner_flag(&l, order);
            assert_eq!(flag.len(), 6);
            assert!(flag.last().unwrap().is_full(&l));
            let steps = flag_steps(&l, &flag).unwrap();
            assert_eq!(steps.len(), 5);
        }
        let flag = corner_flag(&l, FlagOrder::LexLargest);
        let steps = flag_steps(&l, &flag).unwrap();
        assert_eq!(steps[0], Cell::new(2, 2));
        assert_eq!(steps[1], Cell::new(2, 1));
    }

    #[test]
    fn bad_flags() {
        let l = yd(&[2, 1]);
        let full = UpSet::full(&l);
        assert!(flag_steps(&l, &[UpSet::empty(), full.clone()]).is_err());
        let bad = UpSet { members: cells(&[(1, 1)]) };
        assert!(flag_steps(&l, &[UpSet::empty(), bad, full]).is_err());
    }

    #[test]
    fn restriction_sets_of_rectangle_example() {
        let l = yd(&[6, 6, 6, 6, 6]);
        let c = UpSet::generated(&l, &[Cell::new(4, 3), Cell::new(3, 5)]).unwrap();
        let rs = restriction_sets(&l, &c, -1).unwrap();
        assert_eq!(rs.r_ell, Cell::new(5, 6));
        assert_eq!(rs.rect.len(), 30);
        assert_eq!(rs.s, cells(&[(2, 6), (3, 4), (5, 2)]));
        assert_eq!(rs.s_bar, cells(&[(2, 6), (3, 4), (5, 2), (1, 2), (1, 5), (2, 3), (4, 1)]));
        assert_eq!(rs.t, cells(&[(4, 3), (3, 5)]));
        assert_eq!(rs.t_bar, cells(&[(1, 3), (2, 1), (2, 4), (3, 2)]));
    }

    #[test]
    fn restriction_sets_extremes() {
        let l = yd(&[4, 4, 3]);
        for ell in l.diags() {
            let rs = restriction_sets(&l, &UpSet::empty(), ell).unwrap();
            assert!(rs.t.is_empty() && rs.t_bar.is_empty());
            assert_eq!(rs.s, [rs.r_ell].into_iter().collect());
            assert_eq!(rs.s_bar, l.diagonal(ell).into_iter().collect());

            let rs = restriction_sets(&l, &UpSet::full(&l), ell).unwrap();
            assert!(rs.s.is_empty() && rs.s_bar.is_empty());
            assert_eq!(rs.t, cells(&[(1, 1)]));
            assert!(rs.t_bar.is_empty());
        }
    }

    #[test]
    fn restriction_sets_structure() {
        let l = yd(&[4, 3, 3, 1]);
        for c in l.up_sets() {
            for ell in l.diags() {
                let rs = restriction_sets(&l, &c, ell).unwrap();
                assert!(rs.s.is_subset(&rs.s_bar) && rs.s_bar.is_subset(&rs.rect));
                assert!(rs.t_bar.is_subset(&rs.rect));
                assert!(rs.s_bar.iter().all(|&x| !c.contains(x)));
                // S̄ and T̄ are closed under moving back along a diagonal inside R.
                for set in [&rs.s_bar, &rs.t_bar] {
                    for &x in set.iter() {
                        let prev = x.back(1);
                        assert!(!l.contains(prev) || set.contains(&prev));
                    }
                }
            }
        }
    }

    #[test]
    fn every_flag_member_is_an_up_set() {
        for parts in [vec![3, 2], vec![4, 4, 3], vec![3, 3, 1], vec![2, 2, 2]] {
            let l = yd(&parts);
            for order in [FlagOrder::LexLargest, FlagOrder::LexSmallest, FlagOrder::ColumnLargest] {
                for c in corner_flag(&l, order) {
                    let list: Vec<Cell> = c.cells().collect();
                    assert!(is_up_set(&l, &list).unwrap());
                }
            }
        }
    }

    #[test]
    fn up_set_enumeration_matches_brute_force() {
        let l = yd(&[3, 2, 1]);
        let n = l.len();
        let brute = (0u32..1 << n)
            .filter(|mask| {
                let s: Vec<Cell> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| l.cells()[i]).collect();
                is_up_set(&l, &s).unwrap()
            })
            .count();
        assert_eq!(l.up_sets().len(), brute);
        assert_eq!(yd(&[2, 1]).antichains().len(), 5);
    }

    #[test]
    fn delete_diagonal_example() {
        let l = yd(&[4, 4, 3]);
        let d = DVector::new(&l, vec![1, 2, 3, 2, 2, 1]).unwrap();
        let del = delete_diagonal(&l, &d, -1).unwrap();
        assert_eq!(del.diagram, yd(&[3, 3, 3]));
        assert_eq!(del.dvector.values(), &[1, 2, 3, 2, 1]);
        assert_eq!(del.partner, -2);
        // new (1,2) reads old (1,3); new (2,3) reads old (2,4).
        assert_eq!(del.source[1], l.index_of(Cell::new(1, 3)).unwrap());
        assert_eq!(del.source[5], l.index_of(Cell::new(2, 4)).unwrap());
    }

    #[test]
    fn delete_diagonal_rejections() {
        let sq = yd(&[2, 2]);
        let d = DVector::new(&sq, vec![1, 1, 1]).unwrap();
        assert!(delete_diagonal(&sq, &d, 0).is_err());
        assert!(delete_diagonal(&sq, &d, 1).is_err());
        assert!(delete_diagonal(&sq, &d, 5).is_err());
    }

    #[test]
    fn delete_diagonal_positive_side() {
        let l = yd(&[2, 2, 2]);
        let d = DVector::new(&l, vec![1, 2, 2, 1]).unwrap();
        let del = delete_diagonal(&l, &d, 0).unwrap();
        assert_eq!(del.partner, 1);
        assert_eq!(del.diagram, yd(&[2, 2]));
        assert_eq!(del.dvector.values(), &[1, 2, 1]);
    }

    #[test]
    fn dvector_validation() {
        let l = yd(&[4, 4, 3]);
        assert!(DVector::new(&l, vec![1, 2, 3]).is_err());
        assert!(DVector::new(&l, vec![1, 2, 3, 2, -2, 1]).is_err());
        let d = DVector::parse(&l, "1,2,3,2,2,1").unwrap();
        assert_eq!(d.get(2), 1);
        assert_eq!(d.get(0), 3);
        assert_eq!(d.get(-3), 1);
        assert_eq!(DVector::diagonal_lengths(&l).values(), &[1, 2, 3, 2, 2, 1]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn linear_extensions() {
        let l = yd(&[2, 2]);
        assert!(is_linear_extension(&l, l.cells()));
        let swapped = [Cell::new(1, 1), Cell::new(2, 1), Cell::new(1, 2), Cell::new(2, 2)];
        assert!(is_linear_extension(&l, &swapped));
        let bad = [Cell::new(1, 2), Cell::new(1, 1), Cell::new(2, 1), Cell::new(2, 2)];
        assert!(!is_linear_extension(&l, &bad));
        assert!(!is_linear_extension(&l, &l.cells()[..3]));
    }
}

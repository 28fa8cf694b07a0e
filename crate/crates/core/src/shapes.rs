//! Ordinary and shifted skew Young diagrams as posets, plus the named posets
//! used throughout: rectangles, trapezoids and the exceptional pairs.
//!
//! Boxes use French coordinates: `x` is the column and `y` the row, both
//! starting at 1, with row 1 at the bottom. Shifted diagrams live in the
//! region `y <= x`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ordinary,
    Shifted,
}

/// A box at column `x`, row `y`. Cells sort row-major, bottom row first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Cell {
        Cell { x, y }
    }

    /// Builds a cell from the (row, column) labelling.
    pub const fn at(row: i32, col: i32) -> Cell {
        Cell { x: col, y: row }
    }

    pub fn row(self) -> i32 {
        self.y
    }

    pub fn col(self) -> i32 {
        self.x
    }

    pub fn right(self) -> Cell {
        Cell::new(self.x + 1, self.y)
    }

    pub fn up(self) -> Cell {
        Cell::new(self.x, self.y + 1)
    }

    pub fn left(self) -> Cell {
        Cell::new(self.x - 1, self.y)
    }

    pub fn down(self) -> Cell {
        Cell::new(self.x, self.y - 1)
    }

    /// Unit-step neighbours in all four directions.
    pub fn neighbours(self) -> [Cell; 4] {
        [self.left(), self.down(), self.right(), self.up()]
    }

    /// Componentwise order of the ambient quadrant.
    pub fn le(self, other: Cell) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn label(self) -> String {
        format!("({},{})", self.y, self.x)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.y, self.x)
    }
}

impl FromStr for Cell {
    type Err = Error;

    /// Parses the `(row,col)` label.
    fn from_str(s: &str) -> Result<Cell> {
        let bad = || Error::InvalidShape(format!("bad cell label `{s}`"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (r, c) = inner.split_once(',').ok_or_else(bad)?;
        let row = r.trim().parse().map_err(|_| bad())?;
        let col = c.trim().parse().map_err(|_| bad())?;
        Ok(Cell::at(row, col))
    }
}

/// Whether `cell` lies in the ambient region of the given kind.
pub fn in_ambient(kind: Kind, cell: Cell) -> bool {
    match kind {
        Kind::Ordinary => cell.x >= 1 && cell.y >= 1,
        Kind::Shifted => cell.y >= 1 && cell.y <= cell.x,
    }
}

/// A skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub kind: Kind,
    pub outer: Vec<usize>,
    #[serde(default)]
    pub inner: Vec<usize>,
}

fn trim_zeros(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Shape {
    pub fn new(kind: Kind, outer: Vec<usize>, inner: Vec<usize>) -> Result<Shape> {
        let outer = trim_zeros(outer);
        let inner = trim_zeros(inner);
        let strict = kind == Kind::Shifted;
        check_partition(&outer, strict, "outer")?;
        check_partition(&inner, strict, "inner")?;
        if inner.len() > outer.len() || inner.iter().zip(&outer).any(|(m, l)| m > l) {
            return Err(Error::InvalidShape(format!("{inner:?} is not contained in {outer:?}")));
        }
        Ok(Shape { kind, outer, inner })
    }

    pub fn straight(kind: Kind, outer: Vec<usize>) -> Result<Shape> {
        Shape::new(kind, outer, Vec::new())
    }

    /// Recovers a shape from its inner and inner-plus-skew cell sets.
    pub fn from_cell_sets(kind: Kind, inner: &BTreeSet<Cell>, outer: &BTreeSet<Cell>) -> Result<Shape> {
        let lengths = |cells: &BTreeSet<Cell>| -> Vec<usize> {
            let rows = cells.iter().map(|c| c.y).max().unwrap_or(0);
            (1..=rows).map(|y| cells.iter().filter(|c| c.y == y).count()).collect()
        };
        let shape = Shape::new(kind, lengths(outer), lengths(inner))?;
        let same = |cells: &BTreeSet<Cell>, lens: &[usize]| {
            cells.iter().all(|&c| in_ambient(kind, c) && shape.in_partition(lens, c))
        };
        if !same(inner, &shape.inner) || !same(outer, &shape.outer) || !inner.is_subset(outer) {
            return Err(Error::InvalidShape("cell sets are not Young diagrams".into()));
        }
        Ok(shape)
    }

    fn row_start(&self, y: i32) -> i32 {
        match self.kind {
            Kind::Ordinary => 1,
            Kind::Shifted => y,
        }
    }

    fn in_partition(&self, lens: &[usize], c: Cell) -> bool {
        if c.y < 1 || c.y as usize > lens.len() {
            return false;
        }
        let start = self.row_start(c.y);
        c.x >= start && c.x < start + lens[c.y as usize - 1] as i32
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn size(&self) -> usize {
        self.outer.iter().sum::<usize>() - self.inner.iter().sum::<usize>()
    }

    /// Inclusive column range of row `y`, or `None` if the row is empty.
    pub fn row_range(&self, y: i32) -> Option<(i32, i32)> {
        if y < 1 || y as usize > self.outer.len() {
            return None;
        }
        let start = self.row_start(y);
        let m = self.inner.get(y as usize - 1).copied().unwrap_or(0) as i32;
        let l = self.outer[y as usize - 1] as i32;
        (m < l).then(|| (start + m, start + l - 1))
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.in_partition(&self.outer, c) && !self.in_partition(&self.inner, c)
    }

    pub fn in_inner(&self, c: Cell) -> bool {
        self.in_partition(&self.inner, c)
    }

    pub fn in_outer(&self, c: Cell) -> bool {
        self.in_partition(&self.outer, c)
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for y in 1..=self.rows() as i32 {
            if let Some((s, e)) = self.row_range(y) {
                out.extend((s..=e).map(|x| Cell::new(x, y)));
            }
        }
        out
    }

    pub fn inner_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (k, &m) in self.inner.iter().enumerate() {
            let y = k as i32 + 1;
            let start = self.row_start(y);
            out.extend((start..start + m as i32).map(|x| Cell::new(x, y)));
        }
        out
    }

    /// Maximal boxes of the inner diagram.
    pub fn inner_corners(&self) -> Vec<Cell> {
        self.inner_cells()
            .into_iter()
            .filter(|&c| !self.in_inner(c.right()) && !self.in_inner(c.up()))
            .collect()
    }

    /// Minimal boxes of the ambient region outside the outer diagram.
    pub fn outer_corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for y in 1..=self.rows() as i32 + 1 {
            let len = self.outer.get(y as usize - 1).copied().unwrap_or(0) as i32;
            let c = Cell::new(self.row_start(y) + len, y);
            let ok = |n: Cell| !in_ambient(self.kind, n) || self.in_outer(n);
            if in_ambient(self.kind, c) && ok(c.left()) && ok(c.down()) {
                out.push(c);
            }
        }
        out
    }

    /// Shift so that the smallest box rank is 1.
    pub fn rank_offset(&self) -> i32 {
        self.cells().iter().map(|c| c.x + c.y - 1).min().unwrap_or(1) - 1
    }

    pub fn rank(&self, c: Cell) -> i32 {
        c.x + c.y - 1 - self.rank_offset()
    }

    /// Unit-step covers between boxes of the shape.
    pub fn covers(&self) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for c in self.cells() {
            for n in [c.right(), c.up()] {
                if self.contains(n) {
                    out.push((c, n));
                }
            }
        }
        out
    }
}

fn check_partition(parts: &[usize], strict: bool, what: &str) -> Result<()> {
    let ok = parts.windows(2).all(|w| if strict { w[0] > w[1] || w[1] == 0 } else { w[0] >= w[1] });
    let zero_gap = parts.windows(2).any(|w| w[0] == 0 && w[1] > 0);
    if !ok || zero_gap {
        let adj = if strict { "strictly" } else { "weakly" };
        return Err(Error::InvalidShape(format!("{what} partition {parts:?} is not {adj} decreasing")));
    }
    Ok(())
}

/// A shape together with its poset of boxes.
#[derive(Clone, Debug)]
pub struct ShapePoset {
    pub shape: Shape,
    pub poset: Poset,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl PartialEq for ShapePoset {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
    }
}

impl ShapePoset {
    pub fn new(shape: Shape) -> Result<ShapePoset> {
        let cells = shape.cells();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let names: Vec<String> = cells.iter().map(|c| c.label()).collect();
        let covers = shape.covers().into_iter().map(|(lo, hi)| (index[&lo], index[&hi])).collect();
        let ranks = cells.iter().map(|&c| shape.rank(c) as u32).collect();
        let poset = Poset::from_parts(names, covers)?.with_rank(ranks)?;
        Ok(ShapePoset { shape, poset, cells, index })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> Cell {
        self.cells[i]
    }

    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub fn rank(&self, c: Cell) -> i32 {
        self.shape.rank(c)
    }

    pub fn max_rank(&self) -> i32 {
        self.cells.iter().map(|&c| self.rank(c)).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn check_sides(a: usize, b: usize) -> Result<()> {
    if a == 0 || a > b {
        return Err(Error::InvalidShape(format!("need 1 <= a <= b, got a={a}, b={b}")));
    }
    Ok(())
}

/// The rectangle `R(a,b)`: `a` rows of length `b`.
pub fn rectangle(a: usize, b: usize) -> Result<ShapePoset> {
    check_sides(a, b)?;
    ShapePoset::new(Shape::straight(Kind::Ordinary, vec![b; a])?)
}

/// The trapezoid `T(a,b)`: shifted rows of lengths `a+b-1, a+b-3, ..., b-a+1`.
pub fn trapezoid(a: usize, b: usize) -> Result<ShapePoset> {
    check_sides(a, b)?;
    let rows = (1..=a).map(|i| a + b + 1 - 2 * i).collect();
    ShapePoset::new(Shape::straight(Kind::Shifted, rows)?)
}

pub fn shape_from_partitions(kind: Kind, outer: &[usize], inner: &[usize]) -> Result<ShapePoset> {
    ShapePoset::new(Shape::new(kind, outer.to_vec(), inner.to_vec())?)
}

/// Realizes an ordinary skew shape with `n` rows as a shifted skew shape by
/// moving every box `n-1` columns to the right. Returns the new shape poset
/// and the element map from the old poset to the new one.
pub fn embed_ordinary_as_shifted(sp: &ShapePoset) -> Result<(ShapePoset, Vec<usize>)> {
    if sp.shape.kind != Kind::Ordinary {
        return Err(Error::InvalidShape("expected an ordinary shape".into()));
    }
    let n = sp.shape.rows();
    let lift = |parts: &[usize]| -> Vec<usize> {
        (0..n).map(|k| parts.get(k).copied().unwrap_or(0) + (n - 1 - k)).collect()
    };
    let shape = Shape::new(Kind::Shifted, lift(&sp.shape.outer), lift(&sp.shape.inner))?;
    let embedded = ShapePoset::new(shape)?;
    let shift = n as i32 - 1;
    let map = sp
        .cells()
        .iter()
        .map(|c| {
            embedded
                .index_of(Cell::new(c.x + shift, c.y))
                .ok_or_else(|| Error::Internal("embedding lost a box".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((embedded, map))
}

/// Shifts an ordinary cell into the shifted embedding of a shape with `rows` rows.
pub fn embed_cell(c: Cell, rows: usize) -> Cell {
    Cell::new(c.x + rows as i32 - 1, c.y)
}

/// The exceptional posets that pair up with one another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exceptional {
    Og612,
    H3,
    /// Chain of `n-1`, two incomparable elements, chain of `n-1`.
    Q(usize),
    /// Chain of `m-1` with an extra minimal element below its second element.
    I2(usize),
}

const EXCEPTIONAL_DATA: &str = include_str!("../data/exceptional.txt");

fn load_section(section: &str) -> Result<Poset> {
    let header = format!("[{section}]");
    let mut lines = EXCEPTIONAL_DATA
        .lines()
        .map(str::trim)
        .skip_while(|l| *l != header)
        .skip(1)
        .take_while(|l| !l.starts_with('['))
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let elements: Vec<&str> = lines
        .next()
        .and_then(|l| l.strip_prefix("elements:"))
        .ok_or_else(|| Error::Internal(format!("missing element list for {section}")))?
        .split_whitespace()
        .collect();
    let covers: Vec<(&str, &str)> = lines
        .map(|l| {
            l.split_once(' ')
                .map(|(a, b)| (a.trim(), b.trim()))
                .ok_or_else(|| Error::Internal(format!("bad cover line `{l}`")))
        })
        .collect::<Result<_>>()?;
    crate::poset::build_poset(&elements, &covers)
}

pub fn exceptional_poset(which: Exceptional) -> Result<Poset> {
    match which {
        Exceptional::Og612 => load_section("og612"),
        Exceptional::H3 => load_section("h3"),
        Exceptional::Q(n) => {
            if n < 2 {
                return Err(Error::InvalidShape("Q(n) needs n >= 2".into()));
            }
            let mut names: Vec<String> = (1..n).map(|i| format!("b{i}")).collect();
            names.extend(["l".to_string(), "r".to_string()]);
            names.extend((1..n).map(|i| format!("t{i}")));
            let mut covers = Vec::new();
            for i in 1..n - 1 {
                covers.push((format!("b{i}"), format!("b{}", i + 1)));
                covers.push((format!("t{i}"), format!("t{}", i + 1)));
            }
            let top_of_bottom = format!("b{}", n - 1);
            for mid in ["l", "r"] {
                covers.push((top_of_bottom.clone(), mid.to_string()));
                covers.push((mid.to_string(), "t1".to_string()));
            }
            crate::poset::build_poset(&names, &covers)
        }
        Exceptional::I2(m) => {
            if m < 3 {
                return Err(Error::InvalidShape("I2(m) needs m >= 3".into()));
            }
            let mut names: Vec<String> = vec!["e".to_string()];
            names.extend((1..m).map(|i| format!("c{i}")));
            let mut covers: Vec<(String, String)> =
                (1..m - 1).map(|i| (format!("c{i}"), format!("c{}", i + 1))).collect();
            covers.push(("e".to_string(), "c2".to_string()));
            crate::poset::build_poset(&names, &covers)
        }
    }
}

impl FromStr for Exceptional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Exceptional> {
        let lower = s.trim().to_ascii_lowercase();
        let arg = |prefix: &str| -> Option<usize> {
            let rest = lower.strip_prefix(prefix)?;
            let rest = rest.strip_prefix(':').or_else(|| rest.strip_prefix('(')?.strip_suffix(')'))?;
            rest.trim().parse().ok()
        };
        match lower.as_str() {
            "og612" => return Ok(Exceptional::Og612),
            "h3" => return Ok(Exceptional::H3),
            _ => {}
        }
        if let Some(n) = arg("q") {
            return Ok(Exceptional::Q(n));
        }
        if let Some(m) = arg("i2") {
            return Ok(Exceptional::I2(m));
        }
        Err(Error::UnknownPoset(s.to_string()))
    }
}

/// A poset addressed by name: `rect:a,b`, `trap:a,b`, `og612`, `h3`, `q:n`, `i2:m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedPoset {
    Rect(usize, usize),
    Trap(usize, usize),
    Exceptional(Exceptional),
}

impl NamedPoset {
    pub fn shape_poset(&self) -> Result<Option<ShapePoset>> {
        match *self {
            NamedPoset::Rect(a, b) => rectangle(a, b).map(Some),
            NamedPoset::Trap(a, b) => trapezoid(a, b).map(Some),
            NamedPoset::Exceptional(_) => Ok(None),
        }
    }

    pub fn poset(&self) -> Result<Poset> {
        match *self {
            NamedPoset::Rect(a, b) => Ok(rectangle(a, b)?.poset),
            NamedPoset::Trap(a, b) => Ok(trapezoid(a, b)?.poset),
            NamedPoset::Exceptional(e) => exceptional_poset(e),
        }
    }
}

impl fmt::Display for NamedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedPoset::Rect(a, b) => write!(f, "rect:{a},{b}"),
            NamedPoset::Trap(a, b) => write!(f, "trap:{a},{b}"),
            NamedPoset::Exceptional(Exceptional::Og612) => write!(f, "og612"),
            NamedPoset::Exceptional(Exceptional::H3) => write!(f, "h3"),
            NamedPoset::Exceptional(Exceptional::Q(n)) => write!(f, "q:{n}"),
            NamedPoset::Exceptional(Exceptional::I2(m)) => write!(f, "i2:{m}"),
        }
    }
}

impl FromStr for NamedPoset {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedPoset> {
        let pair = |rest: &str| -> Result<(usize, usize)> {
            let (a, b) = rest.split_once(',').ok_or_else(|| Error::UnknownPoset(s.to_string()))?;
            let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::UnknownPoset(s.to_string()));
            Ok((parse(a)?, parse(b)?))
        };
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("rect:") {
            let (a, b) = pair(rest)?;
            return Ok(NamedPoset::Rect(a, b));
        }
        if let Some(rest) = t.strip_prefix("trap:") {
            let (a, b) = pair(rest)?;
            return Ok(NamedPoset::Trap(a, b));
        }
        t.parse().map(NamedPoset::Exceptional)
    }
}

/// All connected skew shapes of the given kind with between 1 and `max_boxes`
/// boxes, each cell set listed once.
///
/// Ordinary shapes are normalized to touch column 1 and row 1. Shifted shapes
/// must meet the diagonal; the ones that do not are ordinary shapes in disguise.
pub fn connected_shapes(kind: Kind, max_boxes: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    let mut rows: Vec<(i32, i32)> = Vec::new();
    grow_rows(kind, max_boxes as i32, &mut rows, &mut out);
    out
}

fn grow_rows(kind: Kind, budget: i32, rows: &mut Vec<(i32, i32)>, out: &mut Vec<Shape>) {
    if let Some(shape) = rows_to_shape(kind, rows) {
        out.push(shape);
    }
    let y = rows.len() as i32 + 1;
    let used: i32 = rows.iter().map(|(s, e)| e - s + 1).sum();
    let room = budget - used;
    if room <= 0 {
        return;
    }
    let floor = match kind {
        Kind::Ordinary => 1,
        Kind::Shifted => y,
    };
    match rows.last().copied() {
        None => {
            // Later rows must reach back to column 1 or the diagonal, so the
            // bottom row cannot start further out than the budget allows.
            for s in floor..=room {
                for e in s..s + room {
                    rows.push((s, e));
                    grow_rows(kind, budget, rows, out);
                    rows.pop();
                }
            }
        }
        Some((ps, pe)) => {
            let on_diagonal = kind == Kind::Shifted && ps == y - 1;
            let starts: Vec<i32> = if on_diagonal { vec![y] } else { (floor..=ps).collect() };
            for s in starts {
                for e in s.max(ps)..=pe {
                    if e - s + 1 > room || e < s {
                        continue;
                    }
                    rows.push((s, e));
                    grow_rows(kind, budget, rows, out);
                    rows.pop();
                }
            }
        }
    }
}

fn rows_to_shape(kind: Kind, rows: &[(i32, i32)]) -> Option<Shape> {
    let (top_start, _) = *rows.last()?;
    let y_top = rows.len() as i32;
    match kind {
        Kind::Ordinary if top_start != 1 => return None,
        Kind::Shifted if top_start != y_top => return None,
        _ => {}
    }
    let mut outer = Vec::with_capacity(rows.len());
    let mut inner = Vec::with_capacity(rows.len());
    for (k, &(s, e)) in rows.iter().enumerate() {
        let start = match kind {
            Kind::Ordinary => 1,
            Kind::Shifted => k as i32 + 1,
        };
        inner.push((s - start) as usize);
        outer.push((e - start + 1) as usize);
    }
    Shape::new(kind, outer, inner).ok()
}

/// Straight shapes (partitions, or strict partitions when shifted) of size
/// 1 to `max_boxes`.
pub fn straight_shapes(kind: Kind, max_boxes: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for n in 1..=max_boxes {
        let mut parts = Vec::new();
        partitions_of(n, n, kind == Kind::Shifted, &mut parts, &mut |p| {
            out.push(Shape::straight(kind, p.to_vec()).expect("generated partition is valid"));
        });
    }
    out
}

fn partitions_of(n: usize, max_part: usize, strict: bool, parts: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if n == 0 {
        emit(parts);
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        parts.push(p);
        let next_max = if strict { p - 1 } else { p };
        partitions_of(n - p, next_max, strict, parts, emit);
        parts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::DEFAULT_IDEAL_CAP;

    #[test]
    fn rectangle_basics() {
        let r = rectangle(3, 5).unwrap();
        assert_eq!(r.len(), 15);
        assert_eq!(r.max_rank(), 7);
        assert!(r.poset.is_graded());
        assert_eq!(rectangle(1, 1).unwrap().len(), 1);
        assert!(rectangle(3, 2).is_err());
    }

    #[test]
    fn trapezoid_basics() {
        let t = trapezoid(3, 5).unwrap();
        assert_eq!(t.shape.outer, vec![7, 5, 3]);
        assert_eq!(t.len(), 15);
        assert_eq!(t.max_rank(), 7);
        assert!(t.poset.is_graded());
        assert_eq!(trapezoid(2, 2).unwrap().shape.outer, vec![3, 1]);
        let chain = trapezoid(1, 4).unwrap();
        assert_eq!(chain.poset.covers().len(), 3);
    }

    #[test]
    fn trapezoid_labels_run_along_rows() {
        let t = trapezoid(3, 5).unwrap();
        let row2: Vec<String> = t.cells().iter().filter(|c| c.y == 2).map(|c| c.label()).collect();
        assert_eq!(row2, ["(2,2)", "(2,3)", "(2,4)", "(2,5)", "(2,6)"]);
    }

    #[test]
    fn linear_extension_of_small_rectangle() {
        let r = rectangle(2, 2).unwrap();
        let names: Vec<&str> = r.poset.linear_extension().iter().map(|&i| r.poset.name(i)).collect();
        assert_eq!(names, ["(1,1)", "(1,2)", "(2,1)", "(2,2)"]);
    }

    #[test]
    fn skew_examples() {
        let left = shape_from_partitions(Kind::Ordinary, &[4, 4, 4], &[3, 1]).unwrap();
        assert_eq!(left.len(), 8);
        let right = shape_from_partitions(Kind::Shifted, &[4, 3, 2], &[3, 1]).unwrap();
        assert_eq!(right.len(), 5);
        let empty = shape_from_partitions(Kind::Ordinary, &[3, 2], &[3, 2]).unwrap();
        assert!(empty.is_empty());
        assert!(shape_from_partitions(Kind::Shifted, &[3, 3], &[]).is_err());
        assert!(shape_from_partitions(Kind::Ordinary, &[2], &[3]).is_err());
    }

    #[test]
    fn embedding_of_square() {
        let r = rectangle(3, 3).unwrap();
        let (e, map) = embed_ordinary_as_shifted(&r).unwrap();
        assert_eq!(e.shape.outer, vec![5, 4, 3]);
        assert_eq!(e.shape.inner, vec![2, 1]);
        for &(lo, hi) in r.poset.covers() {
            assert!(e.poset.covers().contains(&(map[lo], map[hi])));
        }
        assert_eq!(r.poset.covers().len(), e.poset.covers().len());
        let row = shape_from_partitions(Kind::Ordinary, &[4], &[]).unwrap();
        let (e, _) = embed_ordinary_as_shifted(&row).unwrap();
        assert_eq!(e.shape.outer, vec![4]);
    }

    #[test]
    fn exceptional_sizes() {
        let og = exceptional_poset(Exceptional::Og612).unwrap();
        let h3 = exceptional_poset(Exceptional::H3).unwrap();
        assert_eq!((og.len(), h3.len()), (15, 15));
        for n in 2..6 {
            let q = exceptional_poset(Exceptional::Q(n)).unwrap();
            let i2 = exceptional_poset(Exceptional::I2(2 * n)).unwrap();
            assert_eq!(q.len(), 2 * n);
            let nq = q.enumerate_ideals(DEFAULT_IDEAL_CAP).unwrap().len();
            let ni = i2.enumerate_ideals(DEFAULT_IDEAL_CAP).unwrap().len();
            assert_eq!(nq, ni);
            assert_eq!(nq, 2 * n + 2);
        }
    }

    #[test]
    fn named_posets_parse() {
        assert_eq!("rect:3,5".parse::<NamedPoset>().unwrap(), NamedPoset::Rect(3, 5));
        assert_eq!("trap:2,4".parse::<NamedPoset>().unwrap(), NamedPoset::Trap(2, 4));
        assert_eq!("og612".parse::<NamedPoset>().unwrap(), NamedPoset::Exceptional(Exceptional::Og612));
        assert_eq!("q:4".parse::<NamedPoset>().unwrap(), NamedPoset::Exceptional(Exceptional::Q(4)));
        assert_eq!("I2(8)".parse::<NamedPoset>().unwrap(), NamedPoset::Exceptional(Exceptional::I2(8)));
        assert!("blob".parse::<NamedPoset>().is_err());
    }

    #[test]
    fn corners() {
        let s = Shape::new(Kind::Ordinary, vec![3, 3, 1], vec![2, 1]).unwrap();
        assert_eq!(s.inner_corners(), vec![Cell::new(2, 1), Cell::new(1, 2)]);
        assert_eq!(s.outer_corners(), vec![Cell::new(4, 1), Cell::new(2, 3), Cell::new(1, 4)]);
        let t = Shape::straight(Kind::Shifted, vec![3, 1]).unwrap();
        assert_eq!(t.outer_corners(), vec![Cell::new(4, 1), Cell::new(3, 2)]);
    }

    #[test]
    fn connected_shape_counts_are_small_cases() {
        // One box, then the 2-box shapes: row, column, and the two-box skew diagonal is disconnected.
        let ord: Vec<Shape> = connected_shapes(Kind::Ordinary, 2);
        assert_eq!(ord.len(), 3);
        // Shifted: one box, a row of two, and the skew column (2,1)/(1).
        let sh: Vec<Shape> = connected_shapes(Kind::Shifted, 2);
        assert_eq!(sh.len(), 3);
        let all = connected_shapes(Kind::Ordinary, 6);
        let unique: BTreeSet<Vec<Cell>> = all.iter().map(|s| s.cells().into_iter().collect()).collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn straight_shape_counts() {
        assert_eq!(straight_shapes(Kind::Ordinary, 4).len(), 1 + 2 + 3 + 5);
        assert_eq!(straight_shapes(Kind::Shifted, 5).len(), 1 + 1 + 2 + 2 + 3);
    }
}

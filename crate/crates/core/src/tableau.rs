//! Increasing tableaux on skew shapes and the K-theoretic operations on them:
//! bullet swaps, K-jeu-de-taquin slides, K-promotion, K-Bender-Knuth
//! involutions, restriction, doubling and the rank shift to P-partitions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knuth::Word;
use crate::poset::{ElementSet, Ideal, Poset};
use crate::shapes::{Cell, Kind, Shape, ShapePoset};

/// A letter of a filling in the middle of a slide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Bullet,
    Value(u32),
}

pub type Filling = BTreeMap<Cell, Letter>;

fn adjacent(a: Cell, b: Cell) -> bool {
    (a.x - b.x).abs() + (a.y - b.y).abs() == 1
}

/// Simultaneously exchanges `a` and `b` in every box holding one of them that
/// is adjacent to a box holding the other.
pub fn swap(filling: &Filling, a: Letter, b: Letter) -> Filling {
    let holding = |l: Letter| -> Vec<Cell> {
        filling.iter().filter(|(_, &v)| v == l).map(|(&c, _)| c).collect()
    };
    let cells_a = holding(a);
    let cells_b = holding(b);
    let mut out = filling.clone();
    for &c in &cells_a {
        if cells_b.iter().any(|&d| adjacent(c, d)) {
            out.insert(c, b);
        }
    }
    for &c in &cells_b {
        if cells_a.iter().any(|&d| adjacent(c, d)) {
            out.insert(c, a);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncreasingTableau {
    shape: Shape,
    entries: BTreeMap<Cell, u32>,
    ell: u32,
}

impl IncreasingTableau {
    /// Validates that `entries` fills exactly the boxes of `shape` with values
    /// in `1..=ell`, strictly increasing along rows and columns.
    pub fn new(shape: Shape, entries: BTreeMap<Cell, u32>, ell: u32) -> Result<Self> {
        let cells = shape.cells();
        if cells.len() != entries.len() || cells.iter().any(|c| !entries.contains_key(c)) {
            return Err(Error::InvalidTableau("entries do not match the shape".into()));
        }
        for (&c, &v) in &entries {
            if v == 0 || v > ell {
                return Err(Error::InvalidTableau(format!("entry {v} at {c} outside 1..={ell}")));
            }
            for n in [c.right(), c.up()] {
                if let Some(&w) = entries.get(&n) {
                    if w <= v {
                        return Err(Error::InvalidTableau(format!("{c}={v} is not below {n}={w}")));
                    }
                }
            }
        }
        Ok(IncreasingTableau { shape, entries, ell })
    }

    /// Builds a tableau from rows listed bottom first, each left to right.
    pub fn from_rows(kind: Kind, inner: &[usize], rows: &[Vec<u32>], ell: u32) -> Result<Self> {
        let outer: Vec<usize> =
            (0..rows.len()).map(|k| inner.get(k).copied().unwrap_or(0) + rows[k].len()).collect();
        let shape = Shape::new(kind, outer, inner.to_vec())?;
        let mut entries = BTreeMap::new();
        for (k, row) in rows.iter().enumerate() {
            let y = k as i32 + 1;
            let start = match kind {
                Kind::Ordinary => 1,
                Kind::Shifted => y,
            } + inner.get(k).copied().unwrap_or(0) as i32;
            for (j, &v) in row.iter().enumerate() {
                entries.insert(Cell::new(start + j as i32, y), v);
            }
        }
        Self::new(shape, entries, ell)
    }

    /// As [`from_rows`](Self::from_rows) with rows listed top first.
    pub fn from_rows_top_first(kind: Kind, inner: &[usize], rows: &[Vec<u32>], ell: u32) -> Result<Self> {
        let mut bottom_first = rows.to_vec();
        bottom_first.reverse();
        Self::from_rows(kind, inner, &bottom_first, ell)
    }

    /// Fills every box with its rank.
    pub fn minimal(shape: &Shape) -> Self {
        let entries: BTreeMap<Cell, u32> = shape.cells().into_iter().map(|c| (c, shape.rank(c) as u32)).collect();
        let ell = entries.values().copied().max().unwrap_or(0);
        IncreasingTableau { shape: shape.clone(), entries, ell }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn kind(&self) -> Kind {
        self.shape.kind
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn with_ell(mut self, ell: u32) -> Result<Self> {
        if self.max_value() > ell {
            return Err(Error::InvalidTableau(format!("entries exceed {ell}")));
        }
        self.ell = ell;
        Ok(self)
    }

    pub fn entries(&self) -> &BTreeMap<Cell, u32> {
        &self.entries
    }

    pub fn get(&self, c: Cell) -> Option<u32> {
        self.entries.get(&c).copied()
    }

    pub fn max_value(&self) -> u32 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Row values, bottom row first; inner boxes are skipped.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (1..=self.shape.rows() as i32)
            .map(|y| self.entries.range(Cell::new(i32::MIN, y)..=Cell::new(i32::MAX, y)).map(|(_, &v)| v).collect())
            .collect()
    }

    pub fn rows_top_first(&self) -> Vec<Vec<u32>> {
        let mut rows = self.rows();
        rows.reverse();
        rows
    }

    /// Entries listed by element index of the matching shape poset.
    pub fn values_on(&self, sp: &ShapePoset) -> Vec<u32> {
        sp.cells().iter().map(|c| self.entries[c]).collect()
    }

    fn filling(&self) -> Filling {
        self.entries.iter().map(|(&c, &v)| (c, Letter::Value(v))).collect()
    }

    pub fn to_json(&self) -> TableauJson {
        let mut rows = Vec::with_capacity(self.shape.rows());
        for y in 1..=self.shape.rows() as i32 {
            let start = match self.shape.kind {
                Kind::Ordinary => 1,
                Kind::Shifted => y,
            };
            let len = self.shape.outer[y as usize - 1] as i32;
            rows.push((start..start + len).map(|x| self.get(Cell::new(x, y))).collect());
        }
        TableauJson { shape: self.shape.clone(), entries: rows, ell: self.ell }
    }

    pub fn from_json(json: &TableauJson) -> Result<Self> {
        let shape = Shape::new(json.shape.kind, json.shape.outer.clone(), json.shape.inner.clone())?;
        if json.entries.len() != shape.rows() {
            return Err(Error::InvalidTableau("row count does not match the shape".into()));
        }
        let mut entries = BTreeMap::new();
        for (k, row) in json.entries.iter().enumerate() {
            let y = k as i32 + 1;
            let start = match shape.kind {
                Kind::Ordinary => 1,
                Kind::Shifted => y,
            };
            if row.len() != shape.outer[k] {
                return Err(Error::InvalidTableau(format!("row {y} has the wrong length")));
            }
            for (j, v) in row.iter().enumerate() {
                let c = Cell::new(start + j as i32, y);
                match (v, shape.contains(c)) {
                    (Some(v), true) => {
                        entries.insert(c, *v);
                    }
                    (None, false) => {}
                    _ => return Err(Error::InvalidTableau(format!("box {c} disagrees with the inner shape"))),
                }
            }
        }
        Self::new(shape, entries, json.ell)
    }

    /// Text rendering with the top row printed first; inner boxes show as `.`.
    pub fn render(&self) -> String {
        let width = self.max_value().max(1).to_string().len();
        let mut out = String::new();
        for y in (1..=self.shape.rows() as i32).rev() {
            let start = match self.shape.kind {
                Kind::Ordinary => 1,
                Kind::Shifted => y,
            };
            let mut line = " ".repeat((start as usize - 1) * (width + 1));
            let len = self.shape.outer[y as usize - 1] as i32;
            for x in start..start + len {
                let cell = match self.get(Cell::new(x, y)) {
                    Some(v) => format!("{v:>width$}"),
                    None => format!("{:>width$}", "."),
                };
                line.push_str(&cell);
                line.push(' ');
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

/// Serialized tableau. `entries` lists rows bottom first, each from the first
/// box of the row's ambient start through the end of the outer row, with
/// `null` in inner boxes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub shape: Shape,
    pub entries: Vec<Vec<Option<u32>>>,
    pub ell: u32,
}

/// Result of a slide together with the boxes the bullets ended in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slide {
    pub tableau: IncreasingTableau,
    pub vacated: Vec<Cell>,
}

fn bullet_cells(filling: &Filling) -> BTreeSet<Cell> {
    filling.iter().filter(|(_, &l)| l == Letter::Bullet).map(|(&c, _)| c).collect()
}

fn check_subset(c: &[Cell], allowed: &[Cell], what: &str) -> Result<()> {
    match c.iter().find(|x| !allowed.contains(x)) {
        Some(bad) => Err(Error::InvalidSlide(format!("{bad} is not {what}"))),
        None => Ok(()),
    }
}

/// Forward slide into the inner corners `c`, returning the vacated outer boxes.
pub fn kjdt_forward_vacating(t: &IncreasingTableau, c: &[Cell]) -> Result<Slide> {
    let corners = t.shape.inner_corners();
    check_subset(c, &corners, "a maximal box of the inner shape")?;
    let mut filling = t.filling();
    for &cell in c {
        filling.insert(cell, Letter::Bullet);
    }
    for b in 1..=t.ell {
        filling = swap(&filling, Letter::Bullet, Letter::Value(b));
    }
    let bullets = bullet_cells(&filling);
    let inner: BTreeSet<Cell> = t.shape.inner_cells().into_iter().filter(|x| !c.contains(x)).collect();
    finish_slide(t, filling, inner, bullets)
}

pub fn kjdt_forward(t: &IncreasingTableau, c: &[Cell]) -> Result<IncreasingTableau> {
    kjdt_forward_vacating(t, c).map(|s| s.tableau)
}

/// Runs the forward slide's swaps only for values `1..=through` and reports
/// where the bullets sit at that point.
pub fn forward_bullets_after(t: &IncreasingTableau, c: &[Cell], through: u32) -> Result<BTreeSet<Cell>> {
    check_subset(c, &t.shape.inner_corners(), "a maximal box of the inner shape")?;
    let mut filling = t.filling();
    for &cell in c {
        filling.insert(cell, Letter::Bullet);
    }
    for b in 1..=through.min(t.ell) {
        filling = swap(&filling, Letter::Bullet, Letter::Value(b));
    }
    Ok(bullet_cells(&filling))
}

/// Runs the reverse slide's swaps only for values `ell` down to `from`.
pub fn reverse_bullets_after(t: &IncreasingTableau, c: &[Cell], from: u32) -> Result<BTreeSet<Cell>> {
    check_subset(c, &t.shape.outer_corners(), "a minimal box outside the outer shape")?;
    let mut filling = t.filling();
    for &cell in c {
        filling.insert(cell, Letter::Bullet);
    }
    for b in (from.max(1)..=t.ell).rev() {
        filling = swap(&filling, Letter::Value(b), Letter::Bullet);
    }
    Ok(bullet_cells(&filling))
}

/// Reverse slide from the outer corners `c`, returning the boxes that joined
/// the inner shape.
pub fn kjdt_reverse_vacating(t: &IncreasingTableau, c: &[Cell]) -> Result<Slide> {
    let corners = t.shape.outer_corners();
    check_subset(c, &corners, "a minimal box outside the outer shape")?;
    let mut filling = t.filling();
    for &cell in c {
        filling.insert(cell, Letter::Bullet);
    }
    for b in (1..=t.ell).rev() {
        filling = swap(&filling, Letter::Value(b), Letter::Bullet);
    }
    let bullets = bullet_cells(&filling);
    let mut inner: BTreeSet<Cell> = t.shape.inner_cells().into_iter().collect();
    inner.extend(bullets.iter().copied());
    let values: Filling = filling.into_iter().filter(|(_, l)| *l != Letter::Bullet).collect();
    let entries: BTreeMap<Cell, u32> = values
        .into_iter()
        .map(|(c, l)| match l {
            Letter::Value(v) => (c, v),
            Letter::Bullet => unreachable!(),
        })
        .collect();
    let mut outer = inner.clone();
    outer.extend(entries.keys().copied());
    let shape = Shape::from_cell_sets(t.shape.kind, &inner, &outer)
        .map_err(|e| Error::Internal(format!("reverse slide left a non-shape: {e}")))?;
    let tableau = IncreasingTableau::new(shape, entries, t.ell)
        .map_err(|e| Error::Internal(format!("reverse slide broke increase: {e}")))?;
    Ok(Slide { tableau, vacated: bullets.into_iter().collect() })
}

pub fn kjdt_reverse(t: &IncreasingTableau, c: &[Cell]) -> Result<IncreasingTableau> {
    kjdt_reverse_vacating(t, c).map(|s| s.tableau)
}

fn finish_slide(
    t: &IncreasingTableau,
    filling: Filling,
    inner: BTreeSet<Cell>,
    bullets: BTreeSet<Cell>,
) -> Result<Slide> {
    let entries: BTreeMap<Cell, u32> = filling
        .into_iter()
        .filter_map(|(c, l)| match l {
            Letter::Value(v) => Some((c, v)),
            Letter::Bullet => None,
        })
        .collect();
    let mut outer = inner.clone();
    outer.extend(entries.keys().copied());
    let shape = Shape::from_cell_sets(t.shape.kind, &inner, &outer)
        .map_err(|e| Error::Internal(format!("forward slide left a non-shape: {e}")))?;
    let tableau = IncreasingTableau::new(shape, entries, t.ell)
        .map_err(|e| Error::Internal(format!("forward slide broke increase: {e}")))?;
    Ok(Slide { tableau, vacated: bullets.into_iter().collect() })
}

/// K-promotion: drop the 1s, decrement, slide into the vacated boxes and fill
/// the boxes vacated on the outside with `ell`.
pub fn k_promotion(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    let ones: Vec<Cell> = t.entries.iter().filter(|(_, &v)| v == 1).map(|(&c, _)| c).collect();
    let decremented: BTreeMap<Cell, u32> =
        t.entries.iter().filter(|(_, &v)| v != 1).map(|(&c, &v)| (c, v - 1)).collect();
    if ones.is_empty() {
        return IncreasingTableau::new(t.shape.clone(), decremented, t.ell);
    }
    let mut inner: BTreeSet<Cell> = t.shape.inner_cells().into_iter().collect();
    inner.extend(ones.iter().copied());
    let mut outer = inner.clone();
    outer.extend(decremented.keys().copied());
    let shape = Shape::from_cell_sets(t.shape.kind, &inner, &outer)?;
    let reduced = IncreasingTableau::new(shape, decremented, t.ell)?;
    let slide = kjdt_forward_vacating(&reduced, &ones)?;
    let mut entries = slide.tableau.entries;
    for c in slide.vacated {
        entries.insert(c, t.ell);
    }
    IncreasingTableau::new(t.shape.clone(), entries, t.ell)
}

/// The K-Bender-Knuth involution exchanging `i` and `i+1` where possible.
pub fn kbk(t: &IncreasingTableau, i: u32) -> IncreasingTableau {
    let strictly_below = |a: Cell, b: Cell| a != b && a.le(b);
    let mut entries = t.entries.clone();
    for (&c, &v) in &t.entries {
        if v == i + 1 && !t.entries.iter().any(|(&d, &w)| w == i && strictly_below(d, c)) {
            entries.insert(c, i);
        } else if v == i && !t.entries.iter().any(|(&d, &w)| w == i + 1 && strictly_below(c, d)) {
            entries.insert(c, i + 1);
        }
    }
    IncreasingTableau { shape: t.shape.clone(), entries, ell: t.ell }
}

/// K-promotion as `kbk_{ell-1} ∘ ... ∘ kbk_1`.
pub fn k_promotion_via_kbk(t: &IncreasingTableau) -> IncreasingTableau {
    (1..t.ell).fold(t.clone(), |acc, i| kbk(&acc, i))
}

/// Toggles every element of rank `i` of a graded poset.
pub fn rank_toggle_product(poset: &Poset, ideal: &Ideal, i: u32) -> Result<Ideal> {
    if !poset.is_graded() {
        return Err(Error::NotGraded);
    }
    let ranks = poset.require_rank()?;
    let mut next = ideal.clone();
    for p in (0..poset.len()).filter(|&p| ranks[p] == i) {
        poset.toggle_in_place(&mut next, p);
    }
    Ok(next)
}

/// Rows read top to bottom, each row left to right.
pub fn reading_word(t: &IncreasingTableau) -> Word {
    Word(t.rows_top_first().into_iter().flatten().collect())
}

/// The part of `t` with values in `lo..=hi`, keeping the values as they are.
pub fn restrict(t: &IncreasingTableau, lo: u32, hi: u32) -> Result<IncreasingTableau> {
    let mut inner: BTreeSet<Cell> = t.shape.inner_cells().into_iter().collect();
    inner.extend(t.entries.iter().filter(|(_, &v)| v < lo).map(|(&c, _)| c));
    let entries: BTreeMap<Cell, u32> =
        t.entries.iter().filter(|(_, &v)| v >= lo && v <= hi).map(|(&c, &v)| (c, v)).collect();
    let mut outer = inner.clone();
    outer.extend(entries.keys().copied());
    let shape = Shape::from_cell_sets(t.shape.kind, &inner, &outer)?;
    IncreasingTableau::new(shape, entries, hi.max(1))
}

/// Reflects a straight shifted tableau across the diagonal into an ordinary one.
pub fn double(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    if t.kind() != Kind::Shifted || !t.shape.is_straight() {
        return Err(Error::InvalidTableau("doubling needs a straight shifted tableau".into()));
    }
    double_skew(t)
}

/// Doubling for skew shifted tableaux: both the inner and outer diagrams are
/// reflected.
pub fn double_skew(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    if t.kind() != Kind::Shifted {
        return Err(Error::InvalidTableau("doubling needs a shifted tableau".into()));
    }
    let reflect = |cells: Vec<Cell>| -> BTreeSet<Cell> {
        cells.into_iter().flat_map(|c| [c, Cell::new(c.y, c.x)]).collect()
    };
    let inner = reflect(t.shape.inner_cells());
    let mut outer = inner.clone();
    outer.extend(reflect(t.shape.cells()));
    let entries: BTreeMap<Cell, u32> =
        t.entries.iter().flat_map(|(&c, &v)| [(c, v), (Cell::new(c.y, c.x), v)]).collect();
    let shape = Shape::from_cell_sets(Kind::Ordinary, &inner, &outer)?;
    IncreasingTableau::new(shape, entries, t.ell)
}

/// An order-preserving map from a poset to `0..=height`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PPartition {
    pub values: Vec<u32>,
    pub height: u32,
}

impl PPartition {
    pub fn new(poset: &Poset, values: Vec<u32>, height: u32) -> Result<PPartition> {
        if values.len() != poset.len() || values.iter().any(|&v| v > height) {
            return Err(Error::InvalidTableau("P-partition values out of range".into()));
        }
        if poset.covers().iter().any(|&(lo, hi)| values[lo] > values[hi]) {
            return Err(Error::InvalidTableau("P-partition is not order-preserving".into()));
        }
        Ok(PPartition { values, height })
    }

    /// Height-1 partition: the indicator of the complement of the ideal.
    pub fn from_ideal(ideal: &Ideal) -> PPartition {
        let n = ideal.0.universe();
        PPartition { values: (0..n).map(|i| u32::from(!ideal.contains(i))).collect(), height: 1 }
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        if self.height != 1 {
            return Err(Error::Unsupported("only height-1 P-partitions are ideals".into()));
        }
        let n = self.values.len();
        Ok(Ideal(ElementSet::from_indices(n, (0..n).filter(|&i| self.values[i] == 0))))
    }
}

/// Every P-partition of `poset` with the given height, in lexicographic order.
pub fn enumerate_ppartitions(poset: &Poset, height: u32) -> Vec<PPartition> {
    let order = poset.linear_extension().to_vec();
    let mut values = vec![0u32; poset.len()];
    let mut out = Vec::new();
    fn go(poset: &Poset, order: &[usize], k: usize, height: u32, values: &mut Vec<u32>, out: &mut Vec<PPartition>) {
        if k == order.len() {
            out.push(PPartition { values: values.clone(), height });
            return;
        }
        let p = order[k];
        let lo = poset.lower_covers(p).iter().map(|&q| values[q]).max().unwrap_or(0);
        for v in lo..=height {
            values[p] = v;
            go(poset, order, k + 1, height, values, out);
        }
        values[p] = 0;
    }
    go(poset, &order, 0, height, &mut values, &mut out);
    out.sort();
    out
}

/// P-partition of height `m` to the increasing tableau `f + rank` with
/// alphabet `m + max rank`.
pub fn rank_shift_to_tableau(sp: &ShapePoset, f: &PPartition) -> Result<IncreasingTableau> {
    if f.values.len() != sp.len() {
        return Err(Error::InvalidTableau("P-partition does not match the shape".into()));
    }
    let entries: BTreeMap<Cell, u32> = sp
        .cells()
        .iter()
        .zip(&f.values)
        .map(|(&c, &v)| (c, v + sp.rank(c) as u32))
        .collect();
    IncreasingTableau::new(sp.shape.clone(), entries, f.height + sp.max_rank() as u32)
}

/// Inverse of [`rank_shift_to_tableau`].
pub fn rank_shift_to_ppartition(sp: &ShapePoset, t: &IncreasingTableau) -> Result<PPartition> {
    if t.shape() != &sp.shape {
        return Err(Error::InvalidTableau("tableau does not match the shape".into()));
    }
    let rmax = sp.max_rank() as u32;
    let height = t.ell.checked_sub(rmax).ok_or_else(|| Error::InvalidTableau("alphabet below the top rank".into()))?;
    let mut values = Vec::with_capacity(sp.len());
    for &c in sp.cells() {
        let v = t.entries[&c] as i64 - sp.rank(c) as i64;
        if v < 0 || v > height as i64 {
            return Err(Error::InvalidTableau(format!("entry at {c} is outside the rank band")));
        }
        values.push(v as u32);
    }
    PPartition::new(&sp.poset, values, height)
}

/// The almost-minimal tableau of an ideal.
pub fn ideal_to_tableau(sp: &ShapePoset, ideal: &Ideal) -> Result<IncreasingTableau> {
    rank_shift_to_tableau(sp, &PPartition::from_ideal(ideal))
}

pub fn tableau_to_ideal(sp: &ShapePoset, t: &IncreasingTableau) -> Result<Ideal> {
    let f = rank_shift_to_ppartition(sp, t)?;
    if f.height != 1 {
        return Err(Error::InvalidTableau("tableau is not almost minimal".into()));
    }
    f.to_ideal()
}

fn heights_above(shape: &Shape) -> BTreeMap<Cell, u32> {
    let mut above = BTreeMap::new();
    for c in shape.cells().into_iter().rev() {
        let h = [c.right(), c.up()]
            .into_iter()
            .filter(|n| shape.contains(*n))
            .map(|n| above[&n] + 1)
            .max()
            .unwrap_or(0);
        above.insert(c, h);
    }
    above
}

/// Every increasing tableau of `shape` with entries in `1..=ell`.
pub fn enumerate_tableaux(shape: &Shape, ell: u32) -> Vec<IncreasingTableau> {
    let cells = shape.cells();
    let above = heights_above(shape);
    let mut entries = BTreeMap::new();
    let mut out = Vec::new();
    fill(shape, &cells, &above, 0, ell, &mut entries, &mut out);
    out
}

fn fill(
    shape: &Shape,
    cells: &[Cell],
    above: &BTreeMap<Cell, u32>,
    k: usize,
    ell: u32,
    entries: &mut BTreeMap<Cell, u32>,
    out: &mut Vec<IncreasingTableau>,
) {
    if k == cells.len() {
        out.push(IncreasingTableau { shape: shape.clone(), entries: entries.clone(), ell });
        return;
    }
    let c = cells[k];
    let lo = [c.left(), c.down()].iter().filter_map(|n| entries.get(n)).max().map_or(1, |v| v + 1);
    let hi = ell.saturating_sub(above[&c]);
    for v in lo..=hi {
        entries.insert(c, v);
        fill(shape, cells, above, k + 1, ell, entries, out);
    }
    entries.remove(&c);
}

/// A random increasing tableau of `shape` with entries in `1..=ell`, or
/// `None` when the alphabet is too small.
pub fn random_tableau(shape: &Shape, ell: u32, rng: &mut impl Rng) -> Option<IncreasingTableau> {
    let above = heights_above(shape);
    let mut entries = BTreeMap::new();
    for c in shape.cells() {
        let lo = [c.left(), c.down()].iter().filter_map(|n| entries.get(n)).max().map_or(1, |v| v + 1);
        let hi = ell.checked_sub(above[&c])?;
        if lo > hi {
            return None;
        }
        entries.insert(c, rng.gen_range(lo..=hi));
    }
    Some(IncreasingTableau { shape: shape.clone(), entries, ell })
}

//! The rectangle-to-trapezoid bijection built from K-jeu-de-taquin slides,
//! its variant driven by other staircase fillings, and audits of how it
//! interacts with rowmotion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knuth::tableau_hecke_permutation;
use crate::poset::{Ideal, Poset, DEFAULT_IDEAL_CAP};
use crate::shapes::{exceptional_poset, rectangle, trapezoid, Cell, Exceptional, Kind, Shape, ShapePoset};
use crate::stats::pl_rowmotion_lattice;
use crate::tableau::{
    double, enumerate_ppartitions, enumerate_tableaux, ideal_to_tableau, kjdt_forward_vacating,
    rank_shift_to_ppartition, rank_shift_to_tableau, tableau_to_ideal, IncreasingTableau, PPartition,
};

/// A box of a slide diagram: a tableau entry or a barred staircase label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Value(u32),
    Barred(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Staircase label whose boxes were slid into, `None` for the start.
    pub label: Option<u32>,
    pub bullets: Vec<Cell>,
    pub tableau: IncreasingTableau,
    /// Barred labels: staircase boxes not yet slid into, and outer boxes
    /// vacated so far labelled by the slide that vacated them.
    pub barred: BTreeMap<Cell, u32>,
}

impl TraceStep {
    /// Rows top first, columns from 1 to the widest box.
    pub fn grid(&self) -> Vec<Vec<Option<Mark>>> {
        let mut marks: BTreeMap<Cell, Mark> = self.barred.iter().map(|(&c, &k)| (c, Mark::Barred(k))).collect();
        marks.extend(self.tableau.entries().iter().map(|(&c, &v)| (c, Mark::Value(v))));
        let rows = marks.keys().map(|c| c.y).max().unwrap_or(0);
        let width = marks.keys().map(|c| c.x).max().unwrap_or(0);
        (1..=rows)
            .rev()
            .map(|y| (1..=width).map(|x| marks.get(&Cell::new(x, y)).copied()).collect())
            .collect()
    }

    /// Text diagram with barred labels written as `k'`.
    pub fn render(&self) -> String {
        let grid = self.grid();
        let token = |m: &Option<Mark>| match m {
            Some(Mark::Value(v)) => v.to_string(),
            Some(Mark::Barred(k)) => format!("{k}'"),
            None => String::new(),
        };
        let width = grid.iter().flatten().map(|m| token(m).len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in &grid {
            let line: Vec<String> = row.iter().map(|m| format!("{:>width$}", token(m))).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlideTrace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for SlideTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, step) in self.steps.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            f.write_str(&step.render())?;
        }
        Ok(())
    }
}

fn rectangle_sides(t: &IncreasingTableau) -> Result<(usize, usize)> {
    let shape = t.shape();
    let a = shape.rows();
    let b = shape.outer.first().copied().unwrap_or(0);
    if shape.kind != Kind::Ordinary || !shape.is_straight() || a == 0 || shape.outer.iter().any(|&l| l != b) || a > b {
        return Err(Error::InvalidTableau("expected a tableau on a rectangle R(a,b) with a <= b".into()));
    }
    Ok((a, b))
}

/// The minimal shifted staircase `(a-1, ..., 1)`: box `(x,y)` holds `x+y-1`.
pub fn minimal_staircase(a: usize) -> IncreasingTableau {
    let shape = Shape::straight(Kind::Shifted, (1..a).rev().collect()).expect("staircase is strict");
    IncreasingTableau::minimal(&shape)
}

/// Moves the rectangle tableau `t` into the shifted skew shape whose inner
/// diagram is the staircase `(a-1, ..., 1)`.
pub fn embed_rectangle_tableau(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    let (a, b) = rectangle_sides(t)?;
    let outer: Vec<usize> = (1..=a).map(|y| b + a - y).collect();
    let inner: Vec<usize> = (1..=a).map(|y| a - y).collect();
    let shape = Shape::new(Kind::Shifted, outer, inner)?;
    let entries = t.entries().iter().map(|(&c, &v)| (Cell::new(c.x + a as i32 - 1, c.y), v)).collect();
    IncreasingTableau::new(shape, entries, t.ell())
}

pub fn phi(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    let (a, _) = rectangle_sides(t)?;
    Ok(run_schedule(t, &minimal_staircase(a), false)?.0)
}

pub fn phi_traced(t: &IncreasingTableau) -> Result<(IncreasingTableau, SlideTrace)> {
    let (a, _) = rectangle_sides(t)?;
    run_schedule(t, &minimal_staircase(a), true)
}

/// As [`phi`] with the slide order read off the staircase filling `target`,
/// largest label first.
pub fn phi_with_target(t: &IncreasingTableau, target: &IncreasingTableau) -> Result<IncreasingTableau> {
    let (a, _) = rectangle_sides(t)?;
    let staircase: Vec<usize> = (1..a).rev().collect();
    if target.kind() != Kind::Shifted || !target.shape().is_straight() || target.shape().outer != staircase {
        return Err(Error::InvalidTableau(format!("target must fill the shifted staircase {staircase:?}")));
    }
    Ok(run_schedule(t, target, false)?.0)
}

fn run_schedule(
    t: &IncreasingTableau,
    target: &IncreasingTableau,
    trace: bool,
) -> Result<(IncreasingTableau, SlideTrace)> {
    let mut current = embed_rectangle_tableau(t)?;
    let mut pending: BTreeMap<Cell, u32> = target.entries().clone();
    let mut vacated: BTreeMap<Cell, u32> = BTreeMap::new();
    let mut steps = Vec::new();
    let snapshot = |label, bullets: Vec<Cell>, tab: &IncreasingTableau, pending: &BTreeMap<Cell, u32>, vacated: &BTreeMap<Cell, u32>| {
        let mut barred = pending.clone();
        barred.extend(vacated.iter().map(|(&c, &k)| (c, k)));
        TraceStep { label, bullets, tableau: tab.clone(), barred }
    };
    if trace {
        steps.push(snapshot(None, Vec::new(), &current, &pending, &vacated));
    }
    let labels: BTreeSet<u32> = pending.values().copied().collect();
    for &k in labels.iter().rev() {
        let c: Vec<Cell> = pending.iter().filter(|(_, &v)| v == k).map(|(&c, _)| c).collect();
        for cell in &c {
            pending.remove(cell);
        }
        let slide = kjdt_forward_vacating(&current, &c)?;
        current = slide.tableau;
        for cell in &slide.vacated {
            vacated.insert(*cell, k);
        }
        if trace {
            steps.push(snapshot(Some(k), c, &current, &pending, &vacated));
        }
    }
    if !current.shape().is_straight() {
        return Err(Error::Internal("slides did not reach a straight shape".into()));
    }
    Ok((current, SlideTrace { steps }))
}

/// `phi` read through the rank shift on height-`m` P-partitions.
pub fn phi_on_ppartitions(rect: &ShapePoset, trap: &ShapePoset, f: &PPartition) -> Result<PPartition> {
    let image = phi(&rank_shift_to_tableau(rect, f)?)?;
    rank_shift_to_ppartition(trap, &image)
        .map_err(|e| Error::Internal(format!("phi left the rank band: {e}")))
}

pub fn phi_on_ideals(rect: &ShapePoset, trap: &ShapePoset, ideal: &Ideal) -> Result<Ideal> {
    let image = phi(&ideal_to_tableau(rect, ideal)?)?;
    tableau_to_ideal(trap, &image).map_err(|e| Error::Internal(format!("phi image is not almost minimal: {e}")))
}

/// Sufficient check that `s` is the only straight shifted tableau in its
/// slide class: no other straight shifted tableau with the same set of
/// values has a double with the same Hecke permutation.
pub fn certify_urt(s: &IncreasingTableau) -> Result<bool> {
    let own = tableau_hecke_permutation(&double(s)?);
    let values: BTreeSet<u32> = s.entries().values().copied().collect();
    let k = values.len();
    let max = values.iter().copied().max().unwrap_or(0);
    // Chains of a straight shifted tableau use distinct values, so every
    // candidate fits inside the staircase (k, k-2, ...).
    let bound: Vec<usize> = (0..k.div_ceil(2)).map(|i| k - 2 * i).collect();
    for outer in strict_partitions_inside(&bound) {
        let shape = Shape::straight(Kind::Shifted, outer)?;
        for t in enumerate_tableaux(&shape, max) {
            if &t == s {
                continue;
            }
            let used: BTreeSet<u32> = t.entries().values().copied().collect();
            if used == values && tableau_hecke_permutation(&double(&t)?) == own {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn strict_partitions_inside(bound: &[usize]) -> Vec<Vec<usize>> {
    fn go(bound: &[usize], k: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if k == bound.len() {
            return;
        }
        for part in 1..=bound[k].min(prev.saturating_sub(1)) {
            cur.push(part);
            go(bound, k + 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, 0, usize::MAX, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pair", rename_all = "kebab-case")]
pub enum Pair {
    RectTrap { a: usize, b: usize },
    QI2 { n: usize },
    Og612H3,
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pair::RectTrap { a, b } => write!(f, "rect-trap({a},{b})"),
            Pair::QI2 { n } => write!(f, "q-i2({n})"),
            Pair::Og612H3 => write!(f, "og612-h3"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Rowmotion,
    PlRowmotion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommuteViolation {
    /// P-partition values on the rectangle, in canonical box order.
    pub input: Vec<u32>,
    pub phi_then_row: Vec<u32>,
    pub row_then_phi: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommuteReport {
    pub pair: Pair,
    pub action: Action,
    pub height: u32,
    pub checked: usize,
    pub violation_count: usize,
    /// The first few violations.
    pub violations: Vec<CommuteViolation>,
    pub left_orbits: Option<Vec<usize>>,
    pub right_orbits: Option<Vec<usize>>,
    /// Whether the square commutes (or the orbit multisets agree).
    pub commutes: bool,
}

const KEPT_VIOLATIONS: usize = 20;

/// Checks `phi ∘ row = row ∘ phi` exhaustively, or compares orbit multisets
/// for the exceptional pairs.
pub fn commute_audit(pair: Pair, height: u32, action: Action, cap: usize) -> Result<CommuteReport> {
    commute_audit_with(pair, height, action, cap, &|p: &Poset, i: &Ideal| p.row(i))
}

/// As [`commute_audit`] with a replacement for rowmotion on ideals.
pub fn commute_audit_with(
    pair: Pair,
    height: u32,
    action: Action,
    cap: usize,
    row: &dyn Fn(&Poset, &Ideal) -> Ideal,
) -> Result<CommuteReport> {
    if height == 0 {
        return Err(Error::Unsupported("height must be at least 1".into()));
    }
    match pair {
        Pair::RectTrap { a, b } => {
            let rect = rectangle(a, b)?;
            let trap = trapezoid(a, b)?;
            match (action, height) {
                (Action::Rowmotion, 1) => ideal_square(pair, &rect, &trap, cap, row),
                (Action::Rowmotion, _) => {
                    Err(Error::Unsupported("rowmotion acts on ideals; use the piecewise-linear action above height 1".into()))
                }
                (Action::PlRowmotion, m) => pl_square(pair, &rect, &trap, m, cap),
            }
        }
        Pair::QI2 { n } => {
            let left = exceptional_poset(Exceptional::Q(n))?;
            let right = exceptional_poset(Exceptional::I2(2 * n))?;
            orbit_comparison(pair, action, height, &left, &right, cap, row)
        }
        Pair::Og612H3 => {
            let left = exceptional_poset(Exceptional::Og612)?;
            let right = exceptional_poset(Exceptional::H3)?;
            orbit_comparison(pair, action, height, &left, &right, cap, row)
        }
    }
}

fn orbit_comparison(
    pair: Pair,
    action: Action,
    height: u32,
    left: &Poset,
    right: &Poset,
    cap: usize,
    row: &dyn Fn(&Poset, &Ideal) -> Ideal,
) -> Result<CommuteReport> {
    if action != Action::Rowmotion || height != 1 {
        return Err(Error::Unsupported(format!("{pair} supports only the orbit comparison under rowmotion")));
    }
    let l = left.orbit_decomposition_by(cap, |i| row(left, i))?;
    let r = right.orbit_decomposition_by(cap, |i| row(right, i))?;
    let (ls, rs) = (l.sizes(), r.sizes());
    Ok(CommuteReport {
        pair,
        action,
        height,
        checked: l.total() + r.total(),
        violation_count: 0,
        violations: Vec::new(),
        commutes: ls == rs,
        left_orbits: Some(ls),
        right_orbits: Some(rs),
    })
}

fn ideal_square(
    pair: Pair,
    rect: &ShapePoset,
    trap: &ShapePoset,
    cap: usize,
    row: &dyn Fn(&Poset, &Ideal) -> Ideal,
) -> Result<CommuteReport> {
    let ideals = rect.poset.enumerate_ideals(cap)?;
    let mut violations = Vec::new();
    let mut count = 0;
    for ideal in &ideals {
        let phi_then_row = row(&trap.poset, &phi_on_ideals(rect, trap, ideal)?);
        let row_then_phi = phi_on_ideals(rect, trap, &row(&rect.poset, ideal))?;
        if phi_then_row != row_then_phi {
            count += 1;
            if violations.len() < KEPT_VIOLATIONS {
                violations.push(CommuteViolation {
                    input: PPartition::from_ideal(ideal).values,
                    phi_then_row: PPartition::from_ideal(&phi_then_row).values,
                    row_then_phi: PPartition::from_ideal(&row_then_phi).values,
                });
            }
        }
    }
    let l = rect.poset.orbit_decomposition_by(cap, |i| row(&rect.poset, i))?;
    let r = trap.poset.orbit_decomposition_by(cap, |i| row(&trap.poset, i))?;
    Ok(CommuteReport {
        pair,
        action: Action::Rowmotion,
        height: 1,
        checked: ideals.len(),
        violation_count: count,
        violations,
        left_orbits: Some(l.sizes()),
        right_orbits: Some(r.sizes()),
        commutes: count == 0,
    })
}

fn pl_square(pair: Pair, rect: &ShapePoset, trap: &ShapePoset, m: u32, cap: usize) -> Result<CommuteReport> {
    let points = enumerate_ppartitions(&rect.poset, m);
    if points.len() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut violations = Vec::new();
    let mut count = 0;
    for f in &points {
        let image = phi_on_ppartitions(rect, trap, f)?;
        let phi_then_row = pl_rowmotion_lattice(&trap.poset, &image.values, m);
        let rowed = PPartition { values: pl_rowmotion_lattice(&rect.poset, &f.values, m), height: m };
        let row_then_phi = phi_on_ppartitions(rect, trap, &rowed)?.values;
        if phi_then_row != row_then_phi {
            count += 1;
            if violations.len() < KEPT_VIOLATIONS {
                violations.push(CommuteViolation { input: f.values.clone(), phi_then_row, row_then_phi });
            }
        }
    }
    Ok(CommuteReport {
        pair,
        action: Action::PlRowmotion,
        height: m,
        checked: points.len(),
        violation_count: count,
        violations,
        left_orbits: None,
        right_orbits: None,
        commutes: count == 0,
    })
}

/// Convenience wrapper with the default ideal cap.
pub fn commute_audit_default(pair: Pair, height: u32, action: Action) -> Result<CommuteReport> {
    commute_audit(pair, height, action, DEFAULT_IDEAL_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_input() -> IncreasingTableau {
        IncreasingTableau::from_rows_top_first(Kind::Ordinary, &[], &[vec![3, 5, 6], vec![2, 4, 5], vec![1, 3, 4]], 6)
            .unwrap()
    }

    #[test]
    fn example_output() {
        let out = phi(&example_input()).unwrap();
        assert_eq!(out.rows(), vec![vec![1, 2, 3, 4, 5], vec![4, 5, 6], vec![6]]);
        assert_eq!(out.shape(), &trapezoid(3, 3).unwrap().shape);
    }

    #[test]
    fn embedding_footprint() {
        let e = embed_rectangle_tableau(&example_input()).unwrap();
        assert_eq!(e.shape().outer, vec![5, 4, 3]);
        assert_eq!(e.shape().inner, vec![2, 1]);
        assert_eq!(e.get(Cell::new(3, 1)), Some(1));
    }

    #[test]
    fn minimal_goes_to_minimal() {
        for (a, b) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
            let r = rectangle(a, b).unwrap();
            let t = trapezoid(a, b).unwrap();
            let min = IncreasingTableau::minimal(&r.shape);
            assert_eq!(phi(&min).unwrap(), IncreasingTableau::minimal(&t.shape));
            assert_eq!(phi_on_ideals(&r, &t, &r.poset.full_ideal()).unwrap(), t.poset.full_ideal());
            assert_eq!(phi_on_ideals(&r, &t, &r.poset.empty_ideal()).unwrap(), t.poset.empty_ideal());
        }
    }

    #[test]
    fn single_row_is_unchanged() {
        let t = IncreasingTableau::from_rows(Kind::Ordinary, &[], &[vec![1, 3, 4]], 4).unwrap();
        assert_eq!(phi(&t).unwrap().rows(), vec![vec![1, 3, 4]]);
    }

    #[test]
    fn rejects_non_rectangles() {
        let t = IncreasingTableau::from_rows(Kind::Ordinary, &[], &[vec![1, 2], vec![2]], 3).unwrap();
        assert!(phi(&t).is_err());
    }

    #[test]
    fn minimal_staircase_is_its_own_target() {
        let t = example_input();
        assert_eq!(phi_with_target(&t, &minimal_staircase(3)).unwrap(), phi(&t).unwrap());
        assert!(certify_urt(&minimal_staircase(3)).unwrap());
    }

    #[test]
    fn small_square_commutes() {
        let report = commute_audit_default(Pair::RectTrap { a: 2, b: 2 }, 1, Action::Rowmotion).unwrap();
        assert!(report.commutes);
        assert_eq!(report.checked, 6);
        assert_eq!(report.left_orbits, Some(vec![4, 2]));
    }

    #[test]
    fn unsupported_combinations() {
        assert!(commute_audit_default(Pair::RectTrap { a: 2, b: 2 }, 2, Action::Rowmotion).is_err());
        assert!(commute_audit_default(Pair::Og612H3, 2, Action::Rowmotion).is_err());
    }
}

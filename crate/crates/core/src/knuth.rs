//! Words, Hecke (Demazure) products, K-Knuth moves and the minimal-ideal
//! invariant of straight tableaux.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{ElementSet, Ideal};
use crate::shapes::{Cell, Kind, ShapePoset};
use crate::tableau::{reading_word, IncreasingTableau};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    /// Concatenated digits when every letter is below 10, otherwise comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&l| l < 10) { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        let bad = || Error::Unsupported(format!("cannot parse word `{s}`"));
        let letters: Vec<u32> = if s.contains([',', ' ']) {
            s.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if letters.contains(&0) {
            return Err(bad());
        }
        Ok(Word(letters))
    }
}

/// A permutation in one-line notation on `1..=n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w(i)`, with fixed points outside the stored domain.
    pub fn apply(&self, i: u32) -> u32 {
        self.0.get(i as usize - 1).copied().unwrap_or(i)
    }

    pub fn extended(&self, n: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(v.len() as u32 + 1..=n as u32);
        Permutation(v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = k as u32 + 1;
        }
        Permutation(inv)
    }

    /// The same permutation with trailing fixed points removed.
    pub fn trimmed(&self) -> Permutation {
        let mut v = self.0.clone();
        while v.last() == Some(&(v.len() as u32)) {
            v.pop();
        }
        Permutation(v)
    }
}

impl PartialEq for Permutation {
    /// Equality up to padding with fixed points.
    fn eq(&self, other: &Self) -> bool {
        self.trimmed().0 == other.trimmed().0
    }
}

impl Eq for Permutation {}

impl std::hash::Hash for Permutation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.trimmed().0.hash(state);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `w · s_i` in the Hecke monoid: `w` itself when `w(i) > w(i+1)`.
pub fn hecke_right_product(w: &Permutation, i: u32) -> Permutation {
    let mut v = if w.len() < i as usize + 1 { w.extended(i as usize + 1) } else { w.clone() };
    let k = i as usize - 1;
    if v.0[k] < v.0[k + 1] {
        v.0.swap(k, k + 1);
    }
    v
}

/// Hecke permutation of a word, folding from the last letter to the first on
/// `max letter + 1` points.
pub fn hecke_permutation(word: &Word) -> Permutation {
    let n = word.max_letter() as usize + 1;
    word.0.iter().rev().fold(Permutation::identity(n), |w, &a| hecke_right_product(&w, a))
}

pub fn tableau_hecke_permutation(t: &IncreasingTableau) -> Permutation {
    hecke_permutation(&reading_word(t))
}

/// Words one basic K-Knuth move away. Insertions of a repeated letter are
/// limited to words of length at most `max_len`. The weak relation adds the
/// exchange of the first two letters.
pub fn knuth_neighbors(word: &Word, weak: bool, max_len: usize) -> BTreeSet<Word> {
    let w = &word.0;
    let n = w.len();
    let mut out = BTreeSet::new();
    let mut emit = |v: Vec<u32>| {
        if v != *w {
            out.insert(Word(v));
        }
    };
    for k in 0..n {
        if k + 1 < n && w[k] == w[k + 1] {
            let mut v = w.clone();
            v.remove(k);
            emit(v);
        }
        if n < max_len {
            let mut v = w.clone();
            v.insert(k, w[k]);
            emit(v);
        }
    }
    for k in 0..n.saturating_sub(2) {
        let (x, y, z) = (w[k], w[k + 1], w[k + 2]);
        if x == z && x != y {
            let mut v = w.clone();
            v[k] = y;
            v[k + 1] = x;
            v[k + 2] = y;
            emit(v);
        }
        // uabcv ~ uacbv for b < a < c, in either direction
        if (y < x && x < z) || (z < x && x < y) {
            let mut v = w.clone();
            v.swap(k + 1, k + 2);
            emit(v);
        }
        // uabcv ~ ubacv for a < c < b, in either direction
        if (x < z && z < y) || (y < z && z < x) {
            let mut v = w.clone();
            v.swap(k, k + 1);
            emit(v);
        }
    }
    if weak && n >= 2 && w[0] != w[1] {
        let mut v = w.clone();
        v.swap(0, 1);
        emit(v);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Consecutive words related by one basic move.
    Moves { path: Vec<Word> },
    HeckePermutations { left: Permutation, right: Permutation },
    MinimalIdeals { left: Vec<String>, right: Vec<String> },
    Exhausted { states: usize, max_len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Equivalent,
    Distinct,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_len: usize,
    pub max_states: usize,
}

impl SearchBounds {
    pub fn default_for(w1: &Word, w2: &Word) -> SearchBounds {
        SearchBounds { max_len: w1.len().max(w2.len()) + 2, max_states: 1_000_000 }
    }
}

/// Bounded breadth-first search for a chain of basic moves from `w1` to `w2`.
/// For the strong relation, differing Hecke permutations refute equivalence.
pub fn equivalent_bounded(w1: &Word, w2: &Word, weak: bool, bounds: SearchBounds) -> Verdict {
    if !weak {
        let (h1, h2) = (hecke_permutation(w1), hecke_permutation(w2));
        if h1 != h2 {
            return Verdict {
                verdict: VerdictKind::Distinct,
                certificate: Certificate::HeckePermutations { left: h1, right: h2 },
            };
        }
    }
    match search(w1, w2, weak, bounds) {
        Ok(path) => Verdict { verdict: VerdictKind::Equivalent, certificate: Certificate::Moves { path } },
        Err(states) => Verdict {
            verdict: VerdictKind::Unknown,
            certificate: Certificate::Exhausted { states, max_len: bounds.max_len },
        },
    }
}

/// As [`equivalent_bounded`] on reading words, additionally refuting with
/// minimal ideals when both tableaux are straight and of the same kind.
pub fn tableaux_equivalent_bounded(
    t1: &IncreasingTableau,
    t2: &IncreasingTableau,
    weak: bool,
    bounds: SearchBounds,
) -> Result<Verdict> {
    if t1.shape().is_straight() && t2.shape().is_straight() && t1.kind() == t2.kind() {
        let (c1, c2) = (minimal_cells(t1), minimal_cells(t2));
        if c1 != c2 {
            let names = |cells: BTreeSet<Cell>| cells.into_iter().map(|c| c.label()).collect();
            return Ok(Verdict {
                verdict: VerdictKind::Distinct,
                certificate: Certificate::MinimalIdeals { left: names(c1), right: names(c2) },
            });
        }
    }
    Ok(equivalent_bounded(&reading_word(t1), &reading_word(t2), weak, bounds))
}

fn search(w1: &Word, w2: &Word, weak: bool, bounds: SearchBounds) -> std::result::Result<Vec<Word>, usize> {
    let mut parent: HashMap<Word, Option<Word>> = HashMap::new();
    parent.insert(w1.clone(), None);
    let mut queue = VecDeque::from([w1.clone()]);
    while let Some(w) = queue.pop_front() {
        if &w == w2 {
            let mut path = vec![w.clone()];
            let mut cur = w;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Ok(path);
        }
        for next in knuth_neighbors(&w, weak, bounds.max_len) {
            if parent.len() >= bounds.max_states {
                return Err(parent.len());
            }
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some(w.clone()));
                queue.push_back(next);
            }
        }
    }
    Err(parent.len())
}

/// Boxes whose entry equals their rank.
pub fn minimal_cells(t: &IncreasingTableau) -> BTreeSet<Cell> {
    t.entries().iter().filter(|(&c, &v)| v as i32 == t.shape().rank(c)).map(|(&c, _)| c).collect()
}

/// The minimal ideal of `t` in the poset of its shape.
pub fn minimal_ideal(t: &IncreasingTableau) -> Result<Ideal> {
    let sp = ShapePoset::new(t.shape().clone())?;
    let cells = minimal_cells(t);
    let set = ElementSet::from_indices(sp.len(), cells.iter().filter_map(|&c| sp.index_of(c)));
    sp.poset.ideal(set).map_err(|_| Error::Internal("minimal boxes are not downward closed".into()))
}

/// Case of the first-occurrence rule for a letter `i`, comparing rows `i` and
/// `i-1` of the minimal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstPositionCase {
    /// Row `i` holds fewer minimal boxes than row `i-1`: the position is forced.
    Shrinking,
    /// Rows `i` and `i-1` hold equally many: the position is strictly later.
    Level,
    /// Row `i-1` holds fewer than row `i`; cannot happen for an ideal.
    Growing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstPositionRow {
    pub letter: u32,
    /// Position of `letter` in the one-line notation of the reading-order product.
    pub position: u32,
    pub minimal_in_row: usize,
    pub case: FirstPositionCase,
    pub holds: bool,
}

/// Where each letter sits in the Hecke permutation of a straight ordinary
/// tableau, against the size of each row of its minimal ideal.
///
/// The reading-order product `s_{w_1} · s_{w_2} · ...` is the inverse of the
/// right fold in [`hecke_permutation`], so the position of `i` in it is the
/// fold's value at `i`. Row 0 counts as having unboundedly many minimal boxes.
pub fn hecke_first_position_report(t: &IncreasingTableau) -> Result<Vec<FirstPositionRow>> {
    if t.kind() != Kind::Ordinary || !t.shape().is_straight() {
        return Err(Error::InvalidTableau("expected a straight ordinary tableau".into()));
    }
    let fold = tableau_hecke_permutation(t);
    let cells = minimal_cells(t);
    let count = |row: u32| cells.iter().filter(|c| c.y == row as i32).count();
    let n = fold.len().max(t.shape().rows() + 1) as u32;
    let mut out = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let here = count(i);
        let position = fold.apply(i);
        let case = if i == 1 || here < count(i - 1) {
            FirstPositionCase::Shrinking
        } else if here == count(i - 1) {
            FirstPositionCase::Level
        } else {
            FirstPositionCase::Growing
        };
        let holds = match case {
            FirstPositionCase::Shrinking => position as usize == here + 1,
            FirstPositionCase::Level => position as usize > here + 1,
            FirstPositionCase::Growing => false,
        };
        out.push(FirstPositionRow { letter: i, position, minimal_in_row: here, case, holds });
    }
    Ok(out)
}

/// Drops the bottom `r` rows of a straight ordinary tableau.
pub fn without_bottom_rows(t: &IncreasingTableau, r: usize) -> Result<IncreasingTableau> {
    let rows: Vec<Vec<u32>> = t.rows().into_iter().skip(r).collect();
    IncreasingTableau::from_rows(t.kind(), &[], &rows, t.ell())
}

/// Checks that removing the bottom `r` rows moves no letter more than `r`
/// places earlier in the reading-order product, for every `r` and letter.
pub fn row_removal_bound_holds(t: &IncreasingTableau) -> Result<bool> {
    let full = tableau_hecke_permutation(t);
    for r in 1..=t.shape().rows() {
        let rest = tableau_hecke_permutation(&without_bottom_rows(t, r)?);
        let n = full.len().max(rest.len()) as u32;
        for i in 1..=n {
            if (full.apply(i) as i64) < rest.apply(i) as i64 - r as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(v: &[u32]) -> Permutation {
        Permutation(v.to_vec())
    }

    #[test]
    fn right_products() {
        assert_eq!(hecke_right_product(&Permutation::identity(2), 1).0, vec![2, 1]);
        assert_eq!(hecke_right_product(&p(&[2, 1]), 1).0, vec![2, 1]);
        assert_eq!(hecke_right_product(&p(&[1, 3, 2]), 1).0, vec![3, 1, 2]);
        assert_eq!(hecke_right_product(&Permutation::identity(1), 2).0, vec![1, 3, 2]);
    }

    #[test]
    fn hecke_of_words() {
        assert_eq!(hecke_permutation(&w("1")).0, vec![2, 1]);
        assert_eq!(hecke_permutation(&w("11")).0, vec![2, 1]);
        assert_eq!(hecke_permutation(&w("12")).0, vec![3, 1, 2]);
        assert_eq!(hecke_permutation(&w("21")).0, vec![2, 3, 1]);
        assert_eq!(hecke_permutation(&w("2312")).0, vec![3, 4, 1, 2]);
    }

    #[test]
    fn padding_is_ignored_by_equality() {
        assert_eq!(p(&[2, 1]), p(&[2, 1, 3, 4]));
        assert_ne!(p(&[2, 1]), p(&[1, 3, 2]));
    }

    #[test]
    fn neighbors() {
        assert!(knuth_neighbors(&w("121"), false, 5).contains(&w("212")));
        assert!(knuth_neighbors(&w("11"), false, 2).contains(&w("1")));
        assert!(knuth_neighbors(&w("1"), false, 2).contains(&w("11")));
        assert!(knuth_neighbors(&w("213"), true, 3).contains(&w("123")));
        assert!(!knuth_neighbors(&w("213"), false, 3).contains(&w("123")));
        // b < a < c: 213 -> 231
        assert!(knuth_neighbors(&w("213"), false, 3).contains(&w("231")));
        // a < c < b: 132 -> 312
        assert!(knuth_neighbors(&w("132"), false, 3).contains(&w("312")));
    }

    #[test]
    fn verdicts() {
        let b = |a: &Word, c: &Word| SearchBounds::default_for(a, c);
        let v = equivalent_bounded(&w("121"), &w("212"), false, b(&w("121"), &w("212")));
        assert_eq!(v.verdict, VerdictKind::Equivalent);
        let v = equivalent_bounded(&w("1"), &w("2"), false, b(&w("1"), &w("2")));
        assert_eq!(v.verdict, VerdictKind::Distinct);
        let tight = SearchBounds { max_len: 2, max_states: 2 };
        let v = equivalent_bounded(&w("12"), &w("21"), false, tight);
        assert!(matches!(v.certificate, Certificate::HeckePermutations { .. }));
        let v = equivalent_bounded(&w("12"), &w("21"), true, b(&w("12"), &w("21")));
        assert_eq!(v.verdict, VerdictKind::Equivalent);
    }

    #[test]
    fn verdict_json() {
        let v = equivalent_bounded(&w("1"), &w("2"), false, SearchBounds { max_len: 3, max_states: 10 });
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"{"verdict":"distinct","certificate":{"kind":"hecke_permutations","left":[2,1],"right":[1,3,2]}}"#);
    }

    #[test]
    fn minimal_ideals() {
        let sq = crate::shapes::Shape::straight(Kind::Ordinary, vec![3, 3, 3]).unwrap();
        let min = IncreasingTableau::minimal(&sq);
        assert_eq!(minimal_cells(&min).len(), 9);
        let t = IncreasingTableau::from_rows_top_first(
            Kind::Ordinary,
            &[],
            &[vec![3, 5, 6], vec![2, 4, 5], vec![1, 3, 4]],
            6,
        )
        .unwrap();
        let cells: Vec<String> = minimal_cells(&t).into_iter().map(|c| c.label()).collect();
        assert_eq!(cells, ["(1,1)", "(2,1)", "(3,1)"]);
        assert!(minimal_ideal(&t).is_ok());
        let shifted: std::collections::BTreeMap<Cell, u32> =
            min.entries().iter().map(|(&c, &v)| (c, v + 1)).collect();
        let up = IncreasingTableau::new(sq, shifted, 6).unwrap();
        assert!(minimal_cells(&up).is_empty());
    }

    #[test]
    fn first_positions_of_small_square() {
        let sq = crate::shapes::Shape::straight(Kind::Ordinary, vec![2, 2]).unwrap();
        let report = hecke_first_position_report(&IncreasingTableau::minimal(&sq)).unwrap();
        assert_eq!(report[0].minimal_in_row, 2);
        assert_eq!(report[1].minimal_in_row, 2);
        assert_eq!(report[1].case, FirstPositionCase::Level);
        assert!(report.iter().all(|r| r.holds));
    }
}

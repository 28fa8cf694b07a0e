//! Finite posets, order ideals, antichains, toggles and rowmotion.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default hard cap on the number of order ideals any enumeration may produce.
pub const DEFAULT_IDEAL_CAP: usize = 2_000_000;

/// A subset of a poset's elements, stored as a bitset over the canonical
/// element order.
///
/// Sets compare lexicographically on their membership sequence
/// `(b_0, b_1, ..., b_{n-1})`, so the empty set is smallest and the full set
/// largest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        for i in 0..len {
            set.insert(i);
        }
        set
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff.trailing_zeros();
                return if a >> low & 1 == 1 { Ordering::Greater } else { Ordering::Less };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A downward-closed subset of a poset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ideal(pub ElementSet);

/// A set of pairwise incomparable elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Antichain(pub ElementSet);

impl Ideal {
    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }
}

impl Antichain {
    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }
}

/// Which of the two equivalent rowmotion definitions to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowmotionMethod {
    /// The ideal generated by the minimal elements of the complement.
    Generators,
    /// Toggles along a linear extension, top element first.
    Toggles,
}

/// Serialized form of a poset: `{"elements": [...], "covers": [[lo, hi], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    rank: Option<Vec<u32>>,
    extension: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers && self.rank == other.rank
    }
}

impl Eq for Poset {}

/// Validates a cover relation and builds the poset. Element order is the
/// declared order; a rank function is attached whenever one exists.
pub fn build_poset<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    let mut pairs = Vec::with_capacity(covers.len());
    for (lo, hi) in covers {
        let lo = lookup(&index, lo.as_ref())?;
        let hi = lookup(&index, hi.as_ref())?;
        pairs.push((lo, hi));
    }
    Poset::from_indexed(names, index, pairs)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
}

impl Poset {
    pub(crate) fn from_parts(names: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Poset> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        Self::from_indexed(names, index, covers)
    }

    fn from_indexed(
        names: Vec<String>,
        index: HashMap<String, usize>,
        mut covers: Vec<(usize, usize)>,
    ) -> Result<Poset> {
        let n = names.len();
        covers.sort_unstable();
        covers.dedup();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            if lo == hi {
                return Err(Error::Cycle(names[lo].clone()));
            }
            lower[hi].push(lo);
            upper[lo].push(hi);
        }

        // Kahn's algorithm, smallest available index first.
        let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
        let mut extension = Vec::with_capacity(n);
        while let Some(Reverse(i)) = heap.pop() {
            extension.push(i);
            for &j in &upper[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    heap.push(Reverse(j));
                }
            }
        }
        if extension.len() != n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(Error::Cycle(names[stuck].clone()));
        }

        let mut down = vec![ElementSet::empty(n); n];
        for &i in &extension {
            let mut set = ElementSet::empty(n);
            set.insert(i);
            for &lo in &lower[i] {
                set.union_with(&down[lo]);
            }
            down[i] = set;
        }
        let mut up = vec![ElementSet::empty(n); n];
        for &i in extension.iter().rev() {
            let mut set = ElementSet::empty(n);
            set.insert(i);
            for &hi in &upper[i] {
                set.union_with(&up[hi]);
            }
            up[i] = set;
        }

        // A cover lo < hi is redundant when hi sits above another upper cover of lo.
        for &(lo, hi) in &covers {
            if upper[lo].iter().any(|&mid| mid != hi && up[mid].contains(hi)) {
                return Err(Error::NonReduced { lo: names[lo].clone(), hi: names[hi].clone() });
            }
        }

        let mut depth = vec![1u32; n];
        for &i in &extension {
            for &lo in &lower[i] {
                depth[i] = depth[i].max(depth[lo] + 1);
            }
        }
        let ranked = covers.iter().all(|&(lo, hi)| depth[hi] == depth[lo] + 1);

        Ok(Poset {
            names,
            index,
            covers,
            lower,
            upper,
            down,
            up,
            rank: ranked.then_some(depth),
            extension,
        })
    }

    /// Replaces the rank function with an explicit one (used for shape posets,
    /// whose rank comes from the ambient lattice).
    pub fn with_rank(mut self, rank: Vec<u32>) -> Result<Poset> {
        if rank.len() != self.len() {
            return Err(Error::Internal("rank vector length mismatch".into()));
        }
        if !self.covers.iter().all(|&(lo, hi)| rank[hi] == rank[lo] + 1) {
            return Err(Error::NotGraded);
        }
        if !rank.is_empty() && rank.iter().min() != Some(&1) {
            return Err(Error::NotGraded);
        }
        self.rank = Some(rank);
        Ok(self)
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Poset> {
        let covers: Vec<(&str, &str)> =
            spec.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = spec.elements.iter().map(String::as_str).collect();
        build_poset(&elements, &covers)
    }

    pub fn to_spec(&self) -> PosetSpec {
        PosetSpec {
            elements: self.names.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(lo, hi)| (self.names[lo].clone(), self.names[hi].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// `i <= j` in the poset.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn principal_ideal(&self, i: usize) -> &ElementSet {
        &self.down[i]
    }

    pub fn principal_filter(&self, i: usize) -> &ElementSet {
        &self.up[i]
    }

    pub fn rank(&self, i: usize) -> Option<u32> {
        self.rank.as_ref().map(|r| r[i])
    }

    pub fn ranks(&self) -> Option<&[u32]> {
        self.rank.as_deref()
    }

    /// Rank function, or an error for unranked posets.
    pub fn require_rank(&self) -> Result<&[u32]> {
        self.ranks().ok_or(Error::NotGraded)
    }

    pub fn max_rank(&self) -> Option<u32> {
        self.rank.as_ref().map(|r| r.iter().copied().max().unwrap_or(0))
    }

    /// Ranked, with every minimal element at rank 1 and every maximal element
    /// at the top rank.
    pub fn is_graded(&self) -> bool {
        let Some(rank) = &self.rank else { return false };
        let top = rank.iter().copied().max().unwrap_or(0);
        (0..self.len()).all(|i| {
            (!self.lower[i].is_empty() || rank[i] == 1) && (!self.upper[i].is_empty() || rank[i] == top)
        })
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// The deterministic linear extension: among the available minima, the
    /// one with the smallest canonical index goes first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.extension
    }

    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut position = vec![usize::MAX; self.len()];
        for (k, &i) in order.iter().enumerate() {
            if i >= self.len() || position[i] != usize::MAX {
                return false;
            }
            position[i] = k;
        }
        self.covers.iter().all(|&(lo, hi)| position[lo] < position[hi])
    }

    pub fn empty_ideal(&self) -> Ideal {
        Ideal(ElementSet::empty(self.len()))
    }

    pub fn full_ideal(&self) -> Ideal {
        Ideal(ElementSet::full(self.len()))
    }

    pub fn is_downset(&self, set: &ElementSet) -> bool {
        set.iter().all(|i| self.lower[i].iter().all(|&lo| set.contains(lo)))
    }

    pub fn ideal(&self, set: ElementSet) -> Result<Ideal> {
        if set.universe() != self.len() || !self.is_downset(&set) {
            return Err(Error::NotAnIdeal);
        }
        Ok(Ideal(set))
    }

    pub fn ideal_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Ideal> {
        let mut set = ElementSet::empty(self.len());
        for name in names {
            set.insert(self.index_of(name.as_ref())?);
        }
        self.ideal(set)
    }

    /// Member names in canonical element order.
    pub fn ideal_names(&self, ideal: &Ideal) -> Vec<String> {
        ideal.members().map(|i| self.names[i].clone()).collect()
    }

    pub fn is_antichain(&self, set: &ElementSet) -> bool {
        let members: Vec<usize> = set.iter().collect();
        members
            .iter()
            .enumerate()
            .all(|(k, &i)| members[k + 1..].iter().all(|&j| !self.comparable(i, j)))
    }

    pub fn antichain(&self, set: ElementSet) -> Result<Antichain> {
        if set.universe() != self.len() || !self.is_antichain(&set) {
            return Err(Error::NotAntichain);
        }
        Ok(Antichain(set))
    }

    /// The ideal generated by a set of elements.
    pub fn generated_ideal(&self, generators: impl IntoIterator<Item = usize>) -> Ideal {
        let mut set = ElementSet::empty(self.len());
        for g in generators {
            set.union_with(&self.down[g]);
        }
        Ideal(set)
    }

    /// Maximal elements of an ideal.
    pub fn ideal_maxima(&self, ideal: &Ideal) -> Antichain {
        let set = ElementSet::from_indices(
            self.len(),
            ideal.members().filter(|&i| self.upper[i].iter().all(|&hi| !ideal.contains(hi))),
        );
        Antichain(set)
    }

    /// Minimal elements of the complement of an ideal.
    pub fn complement_minima(&self, ideal: &Ideal) -> Antichain {
        let set = ElementSet::from_indices(
            self.len(),
            (0..self.len())
                .filter(|&i| !ideal.contains(i) && self.lower[i].iter().all(|&lo| ideal.contains(lo))),
        );
        Antichain(set)
    }

    /// Every order ideal exactly once, sorted lexicographically on membership.
    pub fn enumerate_ideals(&self, cap: usize) -> Result<Vec<Ideal>> {
        self.check_width_bound(cap)?;
        let n = self.len();
        let mut out = Vec::new();
        let mut current = ElementSet::empty(n);
        self.extend_ideals(0, &mut current, &mut out, cap)?;
        out.sort_unstable();
        Ok(out)
    }

    /// Refuses up front when an antichain of levels already forces more than
    /// `cap` ideals.
    fn check_width_bound(&self, cap: usize) -> Result<()> {
        let mut depth = vec![0usize; self.len()];
        for &i in &self.extension {
            for &lo in &self.lower[i] {
                depth[i] = depth[i].max(depth[lo] + 1);
            }
        }
        let mut level_sizes: HashMap<usize, usize> = HashMap::new();
        for d in depth {
            *level_sizes.entry(d).or_default() += 1;
        }
        let widest = level_sizes.values().copied().max().unwrap_or(0);
        if widest >= usize::BITS as usize - 1 || (1usize << widest) > cap {
            return Err(Error::CapExceeded { cap });
        }
        Ok(())
    }

    fn extend_ideals(
        &self,
        k: usize,
        current: &mut ElementSet,
        out: &mut Vec<Ideal>,
        cap: usize,
    ) -> Result<()> {
        if k == self.extension.len() {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(Ideal(current.clone()));
            return Ok(());
        }
        let p = self.extension[k];
        self.extend_ideals(k + 1, current, out, cap)?;
        if self.lower[p].iter().all(|&lo| current.contains(lo)) {
            current.insert(p);
            self.extend_ideals(k + 1, current, out, cap)?;
            current.remove(p);
        }
        Ok(())
    }

    /// The toggle at `p`: add or remove `p` when the result is still an ideal.
    pub fn toggle(&self, ideal: &Ideal, p: usize) -> Ideal {
        let mut next = ideal.clone();
        self.toggle_in_place(&mut next, p);
        next
    }

    pub fn toggle_in_place(&self, ideal: &mut Ideal, p: usize) {
        if ideal.contains(p) {
            if self.upper[p].iter().all(|&hi| !ideal.contains(hi)) {
                ideal.0.remove(p);
            }
        } else if self.lower[p].iter().all(|&lo| ideal.contains(lo)) {
            ideal.0.insert(p);
        }
    }

    pub fn toggle_by_name(&self, ideal: &Ideal, name: &str) -> Result<Ideal> {
        Ok(self.toggle(ideal, self.index_of(name)?))
    }

    pub fn rowmotion(&self, ideal: &Ideal, method: RowmotionMethod) -> Ideal {
        match method {
            RowmotionMethod::Generators => self.generated_ideal(self.complement_minima(ideal).members()),
            RowmotionMethod::Toggles => self.rowmotion_along(ideal, &self.extension),
        }
    }

    pub fn row(&self, ideal: &Ideal) -> Ideal {
        self.rowmotion(ideal, RowmotionMethod::Generators)
    }

    /// Toggles along `extension` from its last element to its first.
    pub fn rowmotion_along(&self, ideal: &Ideal, extension: &[usize]) -> Ideal {
        let mut next = ideal.clone();
        for &p in extension.iter().rev() {
            self.toggle_in_place(&mut next, p);
        }
        next
    }

    /// Inverse rowmotion: toggles along the linear extension bottom first.
    pub fn rowmotion_inverse(&self, ideal: &Ideal) -> Ideal {
        let mut next = ideal.clone();
        for &p in &self.extension {
            self.toggle_in_place(&mut next, p);
        }
        next
    }

    pub fn orbit_decomposition(&self, cap: usize) -> Result<OrbitDecomposition> {
        self.orbit_decomposition_by(cap, |ideal| self.row(ideal))
    }

    /// Splits J(P) into orbits of an invertible ideal map. Orbits are listed
    /// seed first, seeds taken in ideal order.
    pub fn orbit_decomposition_by(
        &self,
        cap: usize,
        action: impl Fn(&Ideal) -> Ideal,
    ) -> Result<OrbitDecomposition> {
        let ideals = self.enumerate_ideals(cap)?;
        orbits_of(&ideals, action)
    }
}

/// Orbit decomposition of an arbitrary finite set under a permutation.
pub fn orbits_of<T: Clone + Eq + std::hash::Hash>(
    items: &[T],
    action: impl Fn(&T) -> T,
) -> Result<OrbitDecomposition<T>> {
    let position: HashMap<&T, usize> = items.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let mut visited = vec![false; items.len()];
    let mut orbits = Vec::new();
    for seed in 0..items.len() {
        if visited[seed] {
            continue;
        }
        let mut orbit = vec![items[seed].clone()];
        visited[seed] = true;
        let mut current = action(&items[seed]);
        while current != items[seed] {
            let k = *position
                .get(&current)
                .ok_or_else(|| Error::Internal("action leaves the enumerated set".into()))?;
            if visited[k] {
                return Err(Error::Internal("action is not a bijection".into()));
            }
            visited[k] = true;
            orbit.push(current.clone());
            current = action(&current);
        }
        orbits.push(orbit);
    }
    Ok(OrbitDecomposition { orbits })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition<T = Ideal> {
    pub orbits: Vec<Vec<T>>,
}

impl<T> OrbitDecomposition<T> {
    /// Orbit sizes as a sorted multiset (descending).
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn total(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(String, String)> =
            (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        build_poset(&names, &covers).unwrap()
    }

    fn diamond() -> Poset {
        build_poset(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap()
    }

    #[test]
    fn singleton_and_chain_ranks() {
        let p = build_poset::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.rank(0), Some(1));
        let c = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(c.ranks(), Some(&[1, 2, 3][..]));
    }

    #[test]
    fn rejects_transitive_cover() {
        let err = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap_err();
        assert!(matches!(err, Error::NonReduced { ref lo, ref hi } if lo == "a" && hi == "c"));
    }

    #[test]
    fn rejects_cycles_and_unknowns() {
        assert!(matches!(
            build_poset(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(build_poset(&["a"], &[("a", "z")]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn unranked_poset_has_no_rank() {
        // a < b < c and a < d < ... with c covering d would break ranks.
        let p = build_poset(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("d", "c")]).unwrap();
        assert!(p.ranks().is_none());
        assert_eq!(p.require_rank(), Err(Error::NotGraded));
    }

    #[test]
    fn chain_ideals_are_prefixes() {
        for n in 0..6 {
            assert_eq!(chain(n).enumerate_ideals(DEFAULT_IDEAL_CAP).unwrap().len(), n + 1);
        }
    }

    #[test]
    fn antichain_extension_uses_index_order() {
        let p = build_poset::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(p.linear_extension(), &[0, 1]);
    }

    #[test]
    fn ideal_order_is_lexicographic() {
        let p = diamond();
        let ideals = p.enumerate_ideals(100).unwrap();
        assert_eq!(ideals.first(), Some(&p.empty_ideal()));
        assert_eq!(ideals.last(), Some(&p.full_ideal()));
        assert!(ideals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_is_enforced() {
        let p = build_poset::<String>(&(0..12).map(|i| i.to_string()).collect::<Vec<_>>(), &[]).unwrap();
        assert_eq!(p.enumerate_ideals(100), Err(Error::CapExceeded { cap: 100 }));
        assert_eq!(p.enumerate_ideals(4096).unwrap().len(), 4096);
    }

    #[test]
    fn toggles_are_involutions_and_methods_agree() {
        let p = diamond();
        for ideal in p.enumerate_ideals(100).unwrap() {
            for x in 0..p.len() {
                assert_eq!(p.toggle(&p.toggle(&ideal, x), x), ideal);
            }
            assert_eq!(
                p.rowmotion(&ideal, RowmotionMethod::Generators),
                p.rowmotion(&ideal, RowmotionMethod::Toggles)
            );
            assert_eq!(p.rowmotion_inverse(&p.row(&ideal)), ideal);
        }
    }

    #[test]
    fn chain_is_one_orbit() {
        let d = chain(5).orbit_decomposition(100).unwrap();
        assert_eq!(d.sizes(), vec![6]);
    }

    #[test]
    fn spec_round_trip() {
        let p = diamond();
        let q = Poset::from_spec(&p.to_spec()).unwrap();
        assert_eq!(p, q);
        let json = serde_json::to_string(&p.to_spec()).unwrap();
        assert_eq!(json, r#"{"elements":["a","b","c","d"],"covers":[["a","b"],["a","c"],["b","d"],["c","d"]]}"#);
    }
}

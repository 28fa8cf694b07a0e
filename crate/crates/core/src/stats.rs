//! Statistics on order ideals and their behaviour under rowmotion: down-degree,
//! Stanley-Thomas words, toggleability, rook statistics, homomesy, and the
//! piecewise-linear toggles on the order polytope.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Antichain, ElementSet, Ideal, Poset};
use crate::shapes::{Cell, Kind, ShapePoset};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Writes `p/q`, or just `p` for integers.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Number of maximal elements of the ideal.
pub fn down_degree(poset: &Poset, ideal: &Ideal) -> usize {
    poset.ideal_maxima(ideal).len()
}

fn rectangle_sides(sp: &ShapePoset) -> Result<(usize, usize)> {
    let s = &sp.shape;
    let b = s.outer.first().copied().unwrap_or(0);
    if s.kind != Kind::Ordinary || !s.is_straight() || b == 0 || s.outer.iter().any(|&l| l != b) {
        return Err(Error::Unsupported("Stanley-Thomas words need a rectangle".into()));
    }
    Ok((s.rows(), b))
}

/// Binary word of length `a+b`: letter `i <= a` is 1 when row `i` holds a
/// maximal element of the ideal, letter `a+j` is 1 when column `j` holds none.
/// Rowmotion moves the last letter to the front.
pub fn stanley_thomas(sp: &ShapePoset, ideal: &Ideal) -> Result<String> {
    let (a, b) = rectangle_sides(sp)?;
    let maxima: Vec<Cell> = sp.poset.ideal_maxima(ideal).members().map(|i| sp.cell(i)).collect();
    let mut word = String::with_capacity(a + b);
    for row in 1..=a as i32 {
        word.push(if maxima.iter().any(|c| c.y == row) { '1' } else { '0' });
    }
    for col in 1..=b as i32 {
        word.push(if maxima.iter().any(|c| c.x == col) { '0' } else { '1' });
    }
    Ok(word)
}

/// Moves the last letter to the front.
pub fn rotate_right(word: &str) -> String {
    match word.char_indices().last() {
        Some((k, c)) => format!("{c}{}", &word[..k]),
        None => String::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Toggleability {
    pub plus: i32,
    pub minus: i32,
}

impl Toggleability {
    pub fn total(&self) -> i32 {
        self.plus - self.minus
    }
}

/// Whether the antichain can be toggled into (`plus`) or out of (`minus`) the ideal.
pub fn toggleability(poset: &Poset, a: &Antichain, ideal: &Ideal) -> Toggleability {
    let plus = a.0.is_disjoint(&ideal.0) && {
        let mut u = ideal.0.clone();
        u.union_with(&a.0);
        poset.is_downset(&u)
    };
    let minus = a.0.is_subset(&ideal.0) && {
        let mut d = ideal.0.clone();
        d.difference_with(&a.0);
        poset.is_downset(&d)
    };
    Toggleability { plus: plus as i32, minus: minus as i32 }
}

pub fn toggle_plus(poset: &Poset, a: &Antichain, ideal: &Ideal) -> i32 {
    toggleability(poset, a, ideal).plus
}

pub fn toggle_minus(poset: &Poset, a: &Antichain, ideal: &Ideal) -> i32 {
    toggleability(poset, a, ideal).minus
}

/// Every nonempty antichain, as the maximal elements of the nonempty ideals.
pub fn all_antichains(poset: &Poset, cap: usize) -> Result<Vec<Antichain>> {
    let mut out: Vec<Antichain> = poset
        .enumerate_ideals(cap)?
        .iter()
        .filter(|i| !i.is_empty())
        .map(|i| poset.ideal_maxima(i))
        .collect();
    out.sort();
    Ok(out)
}

pub fn singleton(poset: &Poset, p: usize) -> Antichain {
    Antichain(ElementSet::from_indices(poset.len(), [p]))
}

/// Trapezoid `T(a,b)` in (row, column) labels, used by the rook statistics.
#[derive(Clone, Debug)]
pub struct Trapezoid {
    pub a: usize,
    pub b: usize,
    pub sp: ShapePoset,
}

impl Trapezoid {
    pub fn new(a: usize, b: usize) -> Result<Trapezoid> {
        Ok(Trapezoid { a, b, sp: crate::shapes::trapezoid(a, b)? })
    }

    /// Last column of row `i`.
    pub fn row_end(&self, i: usize) -> usize {
        self.a + self.b - i
    }

    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        self.sp
            .index_of(Cell::at(i as i32, j as i32))
            .ok_or_else(|| Error::Unsupported(format!("({i},{j}) is not a box of T({},{})", self.a, self.b)))
    }

    pub fn box_antichain(&self, i: usize, j: usize) -> Result<Antichain> {
        Ok(singleton(&self.sp.poset, self.index(i, j)?))
    }

    /// The two maximal boxes ending rows `i` and `i+1`.
    pub fn pair_antichain(&self, i: usize) -> Result<Antichain> {
        let p = self.index(i, self.row_end(i))?;
        let q = self.index(i + 1, self.row_end(i + 1))?;
        Ok(Antichain(ElementSet::from_indices(self.sp.len(), [p, q])))
    }
}

/// Nonzero coefficients of the rook on box `(i,j)`: per-box `c-` and `c+`,
/// and per-row `c-` for the pair of maximal boxes ending rows `i'` and `i'+1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RookCoefficients {
    pub minus: BTreeMap<(usize, usize), i32>,
    pub plus: BTreeMap<(usize, usize), i32>,
    pub pairs: BTreeMap<usize, i32>,
}

pub fn rook_coefficients(t: &Trapezoid, i: usize, j: usize) -> Result<RookCoefficients> {
    t.index(i, j)?;
    let mut out = RookCoefficients::default();
    for &c in t.sp.cells() {
        let (ip, jp) = (c.row() as usize, c.col() as usize);
        let minus = if ip >= i && jp >= j {
            1
        } else if ip < i && jp < j && jp > ip {
            -1
        } else {
            0
        };
        let plus = if ip <= i && jp <= j {
            1
        } else if ip > i && jp > j && jp > ip {
            -1
        } else {
            0
        };
        if minus != 0 {
            out.minus.insert((ip, jp), minus);
        }
        if plus != 0 {
            out.plus.insert((ip, jp), plus);
        }
    }
    for ip in 1..t.a {
        if ip >= i && t.row_end(ip + 1) >= j {
            out.pairs.insert(ip, -1);
        }
    }
    Ok(out)
}

/// The rook statistic `R_{i,j}` evaluated at an ideal of `T(a,b)`.
pub fn rook_statistic(t: &Trapezoid, i: usize, j: usize, ideal: &Ideal) -> Result<BigRational> {
    let coeffs = rook_coefficients(t, i, j)?;
    let poset = &t.sp.poset;
    let mut total = 0i64;
    for (&(ip, jp), &c) in &coeffs.minus {
        total += c as i64 * toggle_minus(poset, &t.box_antichain(ip, jp)?, ideal) as i64;
    }
    for (&(ip, jp), &c) in &coeffs.plus {
        total += c as i64 * toggle_plus(poset, &t.box_antichain(ip, jp)?, ideal) as i64;
    }
    for (&ip, &c) in &coeffs.pairs {
        total += c as i64 * toggle_minus(poset, &t.pair_antichain(ip)?, ideal) as i64;
    }
    Ok(rat(total))
}

/// Exact weights on ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub weights: BTreeMap<Ideal, BigRational>,
}

impl Distribution {
    pub fn new(weights: BTreeMap<Ideal, BigRational>) -> Result<Distribution> {
        if weights.values().any(|w| w.is_negative()) {
            return Err(Error::Unnormalized);
        }
        Ok(Distribution { weights })
    }

    pub fn point_mass(ideal: Ideal) -> Distribution {
        Distribution { weights: BTreeMap::from([(ideal, BigRational::one())]) }
    }

    pub fn uniform(ideals: &[Ideal]) -> Distribution {
        let w = BigRational::new(BigInt::one(), BigInt::from(ideals.len()));
        let mut weights = BTreeMap::new();
        for i in ideals {
            *weights.entry(i.clone()).or_insert_with(BigRational::zero) += &w;
        }
        Distribution { weights }
    }

    /// Convex combination `sum c_k d_k`.
    pub fn mixture(parts: &[(BigRational, &Distribution)]) -> Result<Distribution> {
        let mut weights: BTreeMap<Ideal, BigRational> = BTreeMap::new();
        for (c, d) in parts {
            if c.is_negative() {
                return Err(Error::Unnormalized);
            }
            for (i, w) in &d.weights {
                *weights.entry(i.clone()).or_insert_with(BigRational::zero) += c * w;
            }
        }
        weights.retain(|_, w| !w.is_zero());
        Ok(Distribution { weights })
    }

    pub fn total(&self) -> BigRational {
        self.weights.values().fold(BigRational::zero(), |acc, w| acc + w)
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }
}

/// `E[mu; f]`, refusing unnormalized weights.
pub fn expectation(d: &Distribution, f: impl Fn(&Ideal) -> BigRational) -> Result<BigRational> {
    if !d.is_normalized() {
        return Err(Error::Unnormalized);
    }
    Ok(d.weights.iter().fold(BigRational::zero(), |acc, (i, w)| acc + w * f(i)))
}

fn expect_int(d: &Distribution, f: impl Fn(&Ideal) -> i64) -> Result<BigRational> {
    expectation(d, |i| rat(f(i)))
}

/// Uniform distribution on the rowmotion orbit of `seed`.
pub fn orbit_uniform(poset: &Poset, seed: &Ideal) -> Distribution {
    let mut orbit = vec![seed.clone()];
    let mut cur = poset.row(seed);
    while &cur != seed {
        orbit.push(cur.clone());
        cur = poset.row(&cur);
    }
    Distribution::uniform(&orbit)
}

/// `E[T_A] = 0` for every antichain in `antichains`.
pub fn is_symmetric_for(poset: &Poset, d: &Distribution, antichains: &[Antichain]) -> Result<bool> {
    for a in antichains {
        if !expect_int(d, |i| toggleability(poset, a, i).total() as i64)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_toggle_symmetric(poset: &Poset, d: &Distribution) -> Result<bool> {
    let singles: Vec<Antichain> = (0..poset.len()).map(|p| singleton(poset, p)).collect();
    is_symmetric_for(poset, d, &singles)
}

pub fn is_antichain_symmetric(poset: &Poset, d: &Distribution, cap: usize) -> Result<bool> {
    is_symmetric_for(poset, d, &all_antichains(poset, cap)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitAverage {
    pub orbit_id: usize,
    pub size: usize,
    #[serde(serialize_with = "ser_rational")]
    pub sum: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub average: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomesyReport {
    pub orbits: Vec<OrbitAverage>,
    #[serde(serialize_with = "ser_rational")]
    pub global_average: BigRational,
    pub homomesic: bool,
    /// Orbits whose average differs from the global one.
    pub witnesses: Vec<usize>,
}

pub fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

impl HomomesyReport {
    /// CSV with columns `orbit_id,size,<stat>_sum,average_as_fraction`.
    pub fn to_csv(&self, stat: &str) -> String {
        let mut out = format!("orbit_id,size,{stat}_sum,average_as_fraction\n");
        for o in &self.orbits {
            out.push_str(&format!("{},{},{},{}\n", o.orbit_id, o.size, fmt_rational(&o.sum), fmt_rational(&o.average)));
        }
        out
    }
}

/// Per-orbit averages of `stat` under rowmotion.
pub fn homomesy_audit(poset: &Poset, cap: usize, stat: impl Fn(&Ideal) -> BigRational) -> Result<HomomesyReport> {
    homomesy_audit_with(poset, cap, |i| poset.row(i), stat)
}

pub fn homomesy_audit_with(
    poset: &Poset,
    cap: usize,
    action: impl Fn(&Ideal) -> Ideal,
    stat: impl Fn(&Ideal) -> BigRational,
) -> Result<HomomesyReport> {
    let decomposition = poset.orbit_decomposition_by(cap, action)?;
    let mut orbits = Vec::with_capacity(decomposition.len());
    let mut total = BigRational::zero();
    for (k, orbit) in decomposition.orbits.iter().enumerate() {
        let sum = orbit.iter().fold(BigRational::zero(), |acc, i| acc + stat(i));
        total += &sum;
        let average = &sum / rat(orbit.len() as i64);
        orbits.push(OrbitAverage { orbit_id: k, size: orbit.len(), sum, average });
    }
    let global_average = total / rat(decomposition.total().max(1) as i64);
    let witnesses: Vec<usize> =
        orbits.iter().filter(|o| o.average != global_average).map(|o| o.orbit_id).collect();
    Ok(HomomesyReport { homomesic: witnesses.is_empty(), orbits, global_average, witnesses })
}

/// Right-hand side of the down-degree formula for toggle-symmetric
/// distributions on `T(a,b)`:
/// `ab/(a+b) + (a-b)/(a+b) * (sum_i (a-i) E[T+_(i,i)] - sum_i i E[T-_pair(i)])`.
pub fn ddeg_formula(t: &Trapezoid, d: &Distribution) -> Result<BigRational> {
    let (a, b) = (t.a as i64, t.b as i64);
    let poset = &t.sp.poset;
    let mut diag = BigRational::zero();
    for i in 1..=t.a {
        let ac = t.box_antichain(i, i)?;
        diag += rat(a - i as i64) * expect_int(d, |x| toggle_plus(poset, &ac, x) as i64)?;
    }
    let mut pairs = BigRational::zero();
    for i in 1..t.a {
        let ac = t.pair_antichain(i)?;
        pairs += rat(i as i64) * expect_int(d, |x| toggle_minus(poset, &ac, x) as i64)?;
    }
    Ok(frac(a * b, a + b) + frac(a - b, a + b) * (diag - pairs))
}

pub fn expected_ddeg(poset: &Poset, d: &Distribution) -> Result<BigRational> {
    expect_int(d, |i| down_degree(poset, i) as i64)
}

/// `sum_i (a-i) E[T-_(i,i)] - sum_{i<j<=a} E[T-_(i,j)]`, which vanishes for
/// toggle-symmetric distributions.
pub fn diagonal_balance(t: &Trapezoid, d: &Distribution) -> Result<BigRational> {
    let poset = &t.sp.poset;
    let mut total = BigRational::zero();
    for i in 1..=t.a {
        let ac = t.box_antichain(i, i)?;
        total += rat((t.a - i) as i64) * expect_int(d, |x| toggle_minus(poset, &ac, x) as i64)?;
    }
    for j in 1..=t.a {
        for i in 1..j {
            let ac = t.box_antichain(i, j)?;
            total -= expect_int(d, |x| toggle_minus(poset, &ac, x) as i64)?;
        }
    }
    Ok(total)
}

/// `(sum_i E[T-_pair(i)], sum_i E[T-_(i,i+1)])` over `i < a`.
pub fn pair_balance(t: &Trapezoid, d: &Distribution) -> Result<(BigRational, BigRational)> {
    let poset = &t.sp.poset;
    let mut left = BigRational::zero();
    let mut right = BigRational::zero();
    for i in 1..t.a {
        let pair = t.pair_antichain(i)?;
        left += expect_int(d, |x| toggle_minus(poset, &pair, x) as i64)?;
        let next = t.box_antichain(i, i + 1)?;
        right += expect_int(d, |x| toggle_minus(poset, &next, x) as i64)?;
    }
    Ok((left, right))
}

/// A point of the order polytope: order-preserving values in `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolytopePoint {
    pub values: Vec<BigRational>,
}

impl PolytopePoint {
    pub fn new(poset: &Poset, values: Vec<BigRational>) -> Result<PolytopePoint> {
        let inside = values.len() == poset.len()
            && values.iter().all(|v| !v.is_negative() && v <= &BigRational::one())
            && poset.covers().iter().all(|&(lo, hi)| values[lo] <= values[hi]);
        if !inside {
            return Err(Error::OutsidePolytope);
        }
        Ok(PolytopePoint { values })
    }

    /// The vertex for an ideal: the indicator of its complement.
    pub fn from_ideal(ideal: &Ideal) -> PolytopePoint {
        let n = ideal.0.universe();
        PolytopePoint { values: (0..n).map(|i| if ideal.contains(i) { rat(0) } else { rat(1) }).collect() }
    }

    pub fn to_ideal(&self) -> Option<Ideal> {
        let n = self.values.len();
        if self.values.iter().any(|v| !v.is_zero() && !v.is_one()) {
            return None;
        }
        Some(Ideal(ElementSet::from_indices(n, (0..n).filter(|&i| self.values[i].is_zero()))))
    }
}

fn pl_toggle_in_place(poset: &Poset, values: &mut [BigRational], p: usize) {
    let up = poset.upper_covers(p).iter().map(|&q| &values[q]).min().cloned().unwrap_or_else(BigRational::one);
    let up = up.min(BigRational::one());
    let down = poset.lower_covers(p).iter().map(|&q| &values[q]).max().cloned().unwrap_or_else(BigRational::zero);
    let down = down.max(BigRational::zero());
    values[p] = up + down - &values[p];
}

pub fn pl_toggle(poset: &Poset, point: &PolytopePoint, p: usize) -> Result<PolytopePoint> {
    let point = PolytopePoint::new(poset, point.values.clone())?;
    let mut values = point.values;
    pl_toggle_in_place(poset, &mut values, p);
    Ok(PolytopePoint { values })
}

/// Piecewise-linear rowmotion: toggles from the top of the linear extension down.
pub fn pl_rowmotion(poset: &Poset, point: &PolytopePoint) -> Result<PolytopePoint> {
    pl_rowmotion_along(poset, point, poset.linear_extension())
}

pub fn pl_rowmotion_along(poset: &Poset, point: &PolytopePoint, extension: &[usize]) -> Result<PolytopePoint> {
    let mut values = PolytopePoint::new(poset, point.values.clone())?.values;
    for &p in extension.iter().rev() {
        pl_toggle_in_place(poset, &mut values, p);
    }
    Ok(PolytopePoint { values })
}

/// Piecewise-linear rowmotion on the lattice `(1/m) Z`, with values scaled by `m`.
pub fn pl_rowmotion_lattice(poset: &Poset, values: &[u32], m: u32) -> Vec<u32> {
    let mut v = values.to_vec();
    for &p in poset.linear_extension().iter().rev() {
        let up = poset.upper_covers(p).iter().map(|&q| v[q]).min().unwrap_or(m).min(m);
        let down = poset.lower_covers(p).iter().map(|&q| v[q]).max().unwrap_or(0);
        v[p] = up + down - v[p];
    }
    v
}

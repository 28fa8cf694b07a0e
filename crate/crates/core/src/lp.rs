//! Exact linear programs over distributions on order ideals.
//!
//! The solver is a dense two-phase simplex on big rationals with Bland's rule,
//! so it terminates and every reported optimum is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{Antichain, Ideal, Poset};
use crate::stats::{self, fmt_rational, frac, rat, ser_rational, Distribution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One constraint per element.
    Elements,
    /// One constraint per nonempty antichain.
    Antichains,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "elements" => Ok(Mode::Elements),
            "antichains" => Ok(Mode::Antichains),
            _ => Err(Error::Unsupported(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowLabel {
    Normalization,
    Antichain(Antichain),
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub label: RowLabel,
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

/// Equality-constrained program over nonnegative weights, one per ideal.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub variables: Vec<Ideal>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<BigRational>,
}

impl LinearProgram {
    pub fn with_objective(mut self, f: impl Fn(&Ideal) -> BigRational) -> LinearProgram {
        self.objective = self.variables.iter().map(f).collect();
        self
    }

    pub fn value(&self, x: &[BigRational]) -> BigRational {
        self.objective.iter().zip(x).fold(BigRational::zero(), |acc, (c, v)| acc + c * v)
    }

    /// Checks `x >= 0` and every equality row directly.
    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.variables.len()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|row| {
                row.coeffs.iter().zip(x).fold(BigRational::zero(), |acc, (c, v)| acc + c * v) == row.rhs
            })
    }

    pub fn distribution(&self, x: &[BigRational]) -> Distribution {
        let weights = self
            .variables
            .iter()
            .zip(x)
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| (i.clone(), w.clone()))
            .collect();
        Distribution { weights }
    }

    pub fn point(&self, d: &Distribution) -> Vec<BigRational> {
        self.variables.iter().map(|i| d.weights.get(i).cloned().unwrap_or_else(BigRational::zero)).collect()
    }
}

/// Distributions on `J(P)` with `E[T_A] = 0` for the antichains of `mode`.
/// The objective starts at zero.
pub fn build_symmetry_polytope(poset: &Poset, mode: Mode, cap: usize) -> Result<LinearProgram> {
    let variables = poset.enumerate_ideals(cap)?;
    let antichains = match mode {
        Mode::Elements => (0..poset.len()).map(|p| stats::singleton(poset, p)).collect(),
        Mode::Antichains => stats::all_antichains(poset, cap)?,
    };
    let mut constraints = vec![Constraint {
        label: RowLabel::Normalization,
        coeffs: vec![BigRational::one(); variables.len()],
        rhs: BigRational::one(),
    }];
    for a in antichains {
        let coeffs = variables.iter().map(|i| rat(stats::toggleability(poset, &a, i).total() as i64)).collect();
        constraints.push(Constraint { label: RowLabel::Antichain(a), coeffs, rhs: BigRational::zero() });
    }
    let objective = vec![BigRational::zero(); variables.len()];
    Ok(LinearProgram { variables, constraints, objective })
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub optimum: BigRational,
    pub x: Vec<BigRational>,
}

/// Exact optimum and a vertex attaining it; the vertex is re-checked for feasibility.
pub fn optimize(lp: &LinearProgram, sense: Sense) -> Result<Solution> {
    let a: Vec<Vec<BigRational>> = lp.constraints.iter().map(|r| r.coeffs.clone()).collect();
    let b: Vec<BigRational> = lp.constraints.iter().map(|r| r.rhs.clone()).collect();
    let c: Vec<BigRational> = match sense {
        Sense::Minimize => lp.objective.clone(),
        Sense::Maximize => lp.objective.iter().map(|v| -v).collect(),
    };
    let x = simplex(&a, &b, &c)?;
    if !lp.is_feasible(&x) {
        return Err(Error::Internal("simplex returned an infeasible point".into()));
    }
    Ok(Solution { optimum: lp.value(&x), x })
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][col].is_zero() {
                continue;
            }
            let f = self.rows[k][col].clone();
            for (v, pv) in self.rows[k].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
            self.rhs[k] = &self.rhs[k] - &f * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Minimizes `c` over the columns in `allowed`, starting from the current basis.
    fn run(&mut self, c: &[BigRational], allowed: usize) -> Result<()> {
        loop {
            let reduced = |j: usize, t: &Tableau| {
                let mut d = c[j].clone();
                for (k, &bj) in t.basis.iter().enumerate() {
                    if !t.rows[k][j].is_zero() && !c[bj].is_zero() {
                        d -= &c[bj] * &t.rows[k][j];
                    }
                }
                d
            };
            let entering = (0..allowed).find(|&j| !self.basis.contains(&j) && reduced(j, self).is_negative());
            let Some(col) = entering else { return Ok(()) };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for k in 0..self.rows.len() {
                if self.rows[k][col].is_positive() {
                    let ratio = &self.rhs[k] / &self.rows[k][col];
                    let better = match &best {
                        None => true,
                        Some((r, _, bv)) => ratio < *r || (ratio == *r && self.basis[k] < *bv),
                    };
                    if better {
                        best = Some((ratio, k, self.basis[k]));
                    }
                }
            }
            let Some((_, r, _)) = best else { return Err(Error::Unbounded) };
            self.pivot(r, col);
        }
    }
}

/// Minimizes `c.x` subject to `A x = b`, `x >= 0`.
pub fn simplex(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Result<Vec<BigRational>> {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, (row, bk)) in a.iter().zip(b).enumerate() {
        let flip = bk.is_negative();
        let mut full: Vec<BigRational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        full.extend((0..m).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }));
        rows.push(full);
        rhs.push(if flip { -bk } else { bk.clone() });
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect() };
    let mut phase1 = vec![BigRational::zero(); n + m];
    for v in &mut phase1[n..] {
        *v = BigRational::one();
    }
    t.run(&phase1, n + m)?;
    let infeasibility = t.basis.iter().zip(&t.rhs).filter(|(&j, _)| j >= n).fold(BigRational::zero(), |acc, (_, v)| acc + v);
    if !infeasibility.is_zero() {
        return Err(Error::Infeasible);
    }
    // Drive artificial variables out of the basis; rows that cannot pivot are redundant.
    let mut k = 0;
    while k < t.rows.len() {
        if t.basis[k] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[k][j].is_zero()) {
                t.pivot(k, col);
            } else {
                t.rows.remove(k);
                t.rhs.remove(k);
                t.basis.remove(k);
                continue;
            }
        }
        k += 1;
    }
    let mut phase2 = c.to_vec();
    phase2.extend((0..m).map(|_| BigRational::zero()));
    t.run(&phase2, n)?;
    let mut x = vec![BigRational::zero(); n];
    for (k, &j) in t.basis.iter().enumerate() {
        x[j] = t.rhs[k].clone();
    }
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AuditVerdict {
    #[serde(rename = "PROVEN-AT-SIZE")]
    ProvenAtSize,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
    #[serde(rename = "SIZE-SKIPPED")]
    SizeSkipped,
}

impl std::fmt::Display for AuditVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AuditVerdict::ProvenAtSize => "PROVEN-AT-SIZE",
            AuditVerdict::Counterexample => "COUNTEREXAMPLE",
            AuditVerdict::SizeSkipped => "SIZE-SKIPPED",
        })
    }
}

/// A distribution written as `(ideal element names, weight)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub ideal: Vec<String>,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DdegRange {
    pub a: usize,
    pub b: usize,
    pub mode: Mode,
    #[serde(serialize_with = "ser_opt")]
    pub min: Option<BigRational>,
    #[serde(serialize_with = "ser_opt")]
    pub max: Option<BigRational>,
    #[serde(serialize_with = "ser_rational")]
    pub target: BigRational,
    pub verdict: AuditVerdict,
    /// For a counterexample, the extremal distribution farthest from the target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessEntry>>,
    #[serde(skip)]
    pub min_point: Option<Distribution>,
    #[serde(skip)]
    pub max_point: Option<Distribution>,
}

fn ser_opt<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_str(&fmt_rational(v)),
        None => s.serialize_none(),
    }
}

pub fn witness_entries(poset: &Poset, d: &Distribution) -> Vec<WitnessEntry> {
    d.weights
        .iter()
        .map(|(i, w)| WitnessEntry {
            ideal: poset.ideal_names(i),
            weight: fmt_rational(w),
        })
        .collect()
}

/// Largest number of ideals the audit will put into a program.
pub const DEFAULT_LP_VARIABLES: usize = 400;

/// Range of `E[ddeg]` over the symmetry polytope of `T(a,b)`, against `ab/(a+b)`.
pub fn ddeg_range(a: usize, b: usize, mode: Mode, cap: usize, max_variables: usize) -> Result<DdegRange> {
    let t = crate::shapes::trapezoid(a, b)?;
    let poset = &t.poset;
    let target = frac((a * b) as i64, (a + b) as i64);
    let ideals = poset.enumerate_ideals(cap)?;
    if ideals.len() > max_variables {
        return Ok(DdegRange {
            a,
            b,
            mode,
            min: None,
            max: None,
            target,
            verdict: AuditVerdict::SizeSkipped,
            witness: None,
            min_point: None,
            max_point: None,
        });
    }
    let lp = build_symmetry_polytope(poset, mode, cap)?.with_objective(|i| rat(stats::down_degree(poset, i) as i64));
    let lo = optimize(&lp, Sense::Minimize)?;
    let hi = optimize(&lp, Sense::Maximize)?;
    let min_point = lp.distribution(&lo.x);
    let max_point = lp.distribution(&hi.x);
    let (verdict, witness) = if lo.optimum == target && hi.optimum == target {
        (AuditVerdict::ProvenAtSize, None)
    } else {
        let far = if (&hi.optimum - &target).abs() >= (&target - &lo.optimum).abs() { &max_point } else { &min_point };
        (AuditVerdict::Counterexample, Some(witness_entries(poset, far)))
    };
    Ok(DdegRange {
        a,
        b,
        mode,
        min: Some(lo.optimum),
        max: Some(hi.optimum),
        target,
        verdict,
        witness,
        min_point: Some(min_point),
        max_point: Some(max_point),
    })
}

/// Independent check of a counterexample: the distribution is normalized,
/// satisfies every symmetry constraint, and its expected down-degree is off target.
pub fn certify_counterexample(a: usize, b: usize, mode: Mode, d: &Distribution, cap: usize) -> Result<bool> {
    let t = crate::shapes::trapezoid(a, b)?;
    let poset = &t.poset;
    let symmetric = match mode {
        Mode::Elements => stats::is_toggle_symmetric(poset, d)?,
        Mode::Antichains => stats::is_antichain_symmetric(poset, d, cap)?,
    };
    let value = stats::expected_ddeg(poset, d)?;
    Ok(symmetric && value != frac((a * b) as i64, (a + b) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn chain(n: usize) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        build_poset(&names, &covers).unwrap()
    }

    #[test]
    fn row_counts() {
        let lp = build_symmetry_polytope(&chain(2), Mode::Elements, 100).unwrap();
        assert_eq!(lp.variables.len(), 3);
        assert_eq!(lp.constraints.len(), 3);
        let sq = crate::shapes::rectangle(2, 2).unwrap();
        let lp = build_symmetry_polytope(&sq.poset, Mode::Antichains, 100).unwrap();
        assert_eq!(lp.constraints.len() - 1, lp.variables.len() - 1);
    }

    #[test]
    fn constant_objective() {
        let lp = build_symmetry_polytope(&chain(3), Mode::Elements, 100).unwrap().with_objective(|_| rat(5));
        assert_eq!(optimize(&lp, Sense::Maximize).unwrap().optimum, rat(5));
        assert_eq!(optimize(&lp, Sense::Minimize).unwrap().optimum, rat(5));
    }

    #[test]
    fn chain_ddeg() {
        let r = ddeg_range(1, 3, Mode::Antichains, 1000, 1000).unwrap();
        assert_eq!(r.min, Some(frac(3, 4)));
        assert_eq!(r.max, Some(frac(3, 4)));
        assert_eq!(r.verdict, AuditVerdict::ProvenAtSize);
    }

    #[test]
    fn uniform_is_feasible_in_elements_mode() {
        let sq = crate::shapes::rectangle(2, 3).unwrap();
        let lp = build_symmetry_polytope(&sq.poset, Mode::Elements, 100).unwrap();
        let u = Distribution::uniform(&lp.variables);
        assert!(lp.is_feasible(&lp.point(&u)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let one = vec![vec![rat(1)]];
        assert_eq!(simplex(&one, &[rat(-1)], &[rat(0)]), Err(Error::Infeasible));
        let a = vec![vec![rat(1), rat(-1)]];
        assert_eq!(simplex(&a, &[rat(0)], &[rat(-1), rat(0)]), Err(Error::Unbounded));
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        let x = simplex(&a, &[rat(1), rat(2)], &[rat(1), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(0)]);
    }

    #[test]
    fn size_skip() {
        let r = ddeg_range(3, 3, Mode::Antichains, 1000, 5).unwrap();
        assert_eq!(r.verdict, AuditVerdict::SizeSkipped);
        assert!(r.min.is_none());
    }
}

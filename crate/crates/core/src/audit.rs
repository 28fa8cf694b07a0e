//! Exhaustive and sampled checks of the rowmotion results, shared by the
//! acceptance suite and the `report` command.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::knuth::{hecke_first_position_report, hecke_permutation, row_removal_bound_holds, tableau_hecke_permutation, FirstPositionCase};
use crate::lp::{certify_counterexample, ddeg_range, AuditVerdict, Mode};
use crate::phi::{commute_audit, commute_audit_with, phi_on_ideals, phi_traced, Action, Mark, Pair};
use crate::poset::{Ideal, Poset, DEFAULT_IDEAL_CAP};
use crate::shapes::{connected_shapes, rectangle, straight_shapes, trapezoid, Kind, Shape, ShapePoset};
use crate::stats::{self, fmt_rational, frac, rat, Distribution, PolytopePoint, Trapezoid};
use crate::tableau::{
    double, enumerate_tableaux, ideal_to_tableau, k_promotion, k_promotion_via_kbk, kbk, kjdt_forward, kjdt_reverse,
    random_tableau, rank_toggle_product, reading_word, IncreasingTableau,
};

pub type RowFn = fn(&Poset, &Ideal) -> Ideal;

fn true_rowmotion(p: &Poset, i: &Ideal) -> Ideal {
    p.row(i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u32,
    pub key: &'static str,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub evidence: Value,
}

/// Sizes of every sweep.
#[derive(Clone, Debug)]
pub struct AuditConfig {
    /// Largest `a+b` for the orbit and commuting sweeps.
    pub max_sum: usize,
    /// Largest `a+b` for the other rectangle/trapezoid families, on top of
    /// their own side bounds.
    pub family_sum: usize,
    /// Largest box count for the shape sweeps.
    pub max_boxes: usize,
    /// Box count up to which two-route promotion covers every connected skew shape.
    pub all_skew_boxes: usize,
    pub slide_samples: usize,
    pub mixtures: usize,
    pub max_exceptional_n: usize,
    pub seed: u64,
    pub cap: usize,
    pub lp_variables: usize,
    pub row: RowFn,
}

impl Default for AuditConfig {
    fn default() -> AuditConfig {
        AuditConfig {
            max_sum: 10,
            family_sum: 12,
            max_boxes: 12,
            all_skew_boxes: 8,
            slide_samples: 10_000,
            mixtures: 100,
            max_exceptional_n: 8,
            seed: 0x5eed,
            cap: DEFAULT_IDEAL_CAP,
            lp_variables: crate::lp::DEFAULT_LP_VARIABLES,
            row: true_rowmotion,
        }
    }
}

impl AuditConfig {
    /// Every sweep bounded by `a+b <= max_sum`.
    pub fn with_max_sum(max_sum: usize) -> AuditConfig {
        AuditConfig { max_sum, family_sum: max_sum, ..AuditConfig::default() }
    }

    /// Pairs `a <= b` inside the given bounds and with `a+b <= family_sum`.
    fn pairs(&self, max_a: usize, max_b: usize) -> Vec<(usize, usize)> {
        self.pairs_up_to(max_a, max_b, self.family_sum)
    }

    fn pairs_up_to(&self, max_a: usize, max_b: usize, sum: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=max_a {
            for b in a..=max_b {
                if a + b <= sum {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

pub const CHECKS: [(u32, &str, &str); 14] = [
    (1, "orbit-structure", "rectangle and trapezoid have equal rowmotion orbit multisets"),
    (2, "commuting-square", "phi commutes with rowmotion"),
    (3, "promotion-equivariance", "rank shift intertwines rank toggles with K-Bender-Knuth and promotion with inverse rowmotion"),
    (4, "two-route-promotion", "K-promotion by slides equals the composite of K-Bender-Knuth involutions"),
    (5, "hecke-invariance", "random slides preserve the Hecke permutation of the reading word"),
    (6, "separation", "almost minimal tableaux have distinct Hecke permutations"),
    (7, "rook-identity", "every rook statistic is identically 1 on the trapezoid"),
    (8, "homomesy", "down-degree is homomesic under rowmotion"),
    (9, "stanley-thomas", "Stanley-Thomas words conjugate rowmotion to rotation"),
    (10, "lp-audit", "exact range of expected down-degree over symmetric distributions"),
    (11, "exceptional-pairs", "exceptional doppelganger pairs have equal orbit multisets"),
    (12, "piecewise-linear", "piecewise-linear rowmotion on lattice points"),
    (13, "toggle-identities", "down-degree, diagonal and pair identities on symmetric distributions"),
    (14, "phi-trace", "the worked slide diagram of phi"),
];

pub fn run_all(config: &AuditConfig) -> Vec<Check> {
    CHECKS.iter().map(|&(id, _, _)| run_check(id, config)).collect()
}

pub fn run_check(id: u32, config: &AuditConfig) -> Check {
    let (_, key, title) = CHECKS.iter().copied().find(|c| c.0 == id).expect("known check id");
    let outcome = match id {
        1 => orbit_structure(config),
        2 => commuting_square(config),
        3 => promotion_equivariance(config),
        4 => two_route_promotion(config),
        5 => hecke_invariance(config),
        6 => separation(config),
        7 => rook_identity(config),
        8 => homomesy(config),
        9 => stanley_thomas(config),
        10 => lp_audit(config),
        11 => exceptional_pairs(config),
        12 => piecewise_linear(config),
        13 => toggle_identities(config),
        14 => phi_trace(),
        _ => unreachable!(),
    };
    let (status, detail, evidence) = match outcome {
        Ok(o) => o,
        Err(e) => (Status::Fail, format!("error: {e}"), Value::Null),
    };
    Check { id, key, title, status, detail, evidence }
}

type Outcome = Result<(Status, String, Value)>;

fn verdict(ok: bool, empty: bool) -> Status {
    if empty {
        Status::Skip
    } else if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn orbit_structure(config: &AuditConfig) -> Outcome {
    let row = config.row;
    let mut failures = Vec::new();
    let pairs = config.pairs_up_to(config.max_sum, config.max_sum, config.max_sum);
    for &(a, b) in &pairs {
        let r = rectangle(a, b)?;
        let t = trapezoid(a, b)?;
        let left = r.poset.orbit_decomposition_by(config.cap, |i| row(&r.poset, i))?.sizes();
        let right = t.poset.orbit_decomposition_by(config.cap, |i| row(&t.poset, i))?.sizes();
        if left != right {
            failures.push(json!({"a": a, "b": b, "rectangle": left, "trapezoid": right}));
        }
    }
    let detail = format!("{} pairs with a+b <= {}, {} mismatches", pairs.len(), config.max_sum, failures.len());
    Ok((verdict(failures.is_empty(), pairs.is_empty()), detail, json!({"mismatches": failures})))
}

fn names(sp: &ShapePoset, ideal: &Ideal) -> Vec<String> {
    sp.poset.ideal_names(ideal)
}

/// The two `R(2,2)` orbits and their images, in (row,col) labels.
pub fn small_square_orbits() -> [(&'static [&'static str], &'static [&'static str]); 6] {
    [
        (&[], &[]),
        (&["(1,1)"], &["(1,1)"]),
        (&["(1,1)", "(1,2)", "(2,1)"], &["(1,1)", "(1,2)"]),
        (&["(1,1)", "(1,2)", "(2,1)", "(2,2)"], &["(1,1)", "(1,2)", "(1,3)", "(2,2)"]),
        (&["(1,1)", "(1,2)"], &["(1,1)", "(1,2)", "(2,2)"]),
        (&["(1,1)", "(2,1)"], &["(1,1)", "(1,2)", "(1,3)"]),
    ]
}

fn commuting_square(config: &AuditConfig) -> Outcome {
    let row = config.row;
    let pairs = config.pairs_up_to(config.max_sum, config.max_sum, config.max_sum);
    let mut failures = Vec::new();
    let mut checked = 0;
    for &(a, b) in &pairs {
        let report = commute_audit_with(Pair::RectTrap { a, b }, 1, Action::Rowmotion, config.cap, &|p, i| row(p, i))?;
        checked += report.checked;
        if !report.commutes {
            failures.push(json!({"a": a, "b": b, "violations": report.violation_count, "first": report.violations.first()}));
        }
    }
    let r = rectangle(2, 2)?;
    let t = trapezoid(2, 2)?;
    let mut spot_ok = true;
    for (input, image) in small_square_orbits() {
        let i = r.poset.ideal_from_names(input)?;
        spot_ok &= names(&t, &phi_on_ideals(&r, &t, &i)?) == image;
    }
    // The four-element orbit in rowmotion order, then the two-element one.
    let orbit: Vec<Ideal> = small_square_orbits()[..4]
        .iter()
        .map(|(i, _)| r.poset.ideal_from_names(i))
        .collect::<Result<_>>()?;
    for k in 0..4 {
        spot_ok &= row(&r.poset, &orbit[k]) == orbit[(k + 1) % 4];
    }
    let detail = format!(
        "{} pairs, {checked} ideals, {} failing pairs; R(2,2) spot values {}",
        pairs.len(),
        failures.len(),
        if spot_ok { "match" } else { "differ" }
    );
    Ok((verdict(failures.is_empty() && spot_ok, pairs.is_empty()), detail, json!({"failures": failures, "spot": spot_ok})))
}

/// The promotion example: input and output, rows bottom first.
pub fn promotion_example() -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    (vec![vec![1, 2, 3], vec![2, 4, 5], vec![4, 5, 6]], vec![vec![1, 2, 4], vec![3, 4, 5], vec![4, 5, 6]])
}

fn promotion_equivariance(config: &AuditConfig) -> Outcome {
    let mut shapes = 0;
    let mut ideals = 0;
    let mut failures = Vec::new();
    for kind in [Kind::Ordinary, Kind::Shifted] {
        for s in connected_shapes(kind, config.max_boxes) {
            let sp = ShapePoset::new(s.clone())?;
            if !sp.poset.is_graded() {
                continue;
            }
            shapes += 1;
            let top = sp.max_rank() as u32;
            for i in sp.poset.enumerate_ideals(config.cap)? {
                ideals += 1;
                let t = ideal_to_tableau(&sp, &i)?;
                let mut ok = (1..=top).all(|r| {
                    rank_toggle_product(&sp.poset, &i, r).and_then(|h| ideal_to_tableau(&sp, &h)).ok() == Some(kbk(&t, r))
                });
                ok &= k_promotion(&t)? == ideal_to_tableau(&sp, &sp.poset.rowmotion_inverse(&i))?;
                if !ok && failures.len() < 5 {
                    failures.push(json!({"shape": s, "ideal": sp.poset.ideal_names(&i)}));
                }
            }
        }
    }
    let (input, output) = promotion_example();
    let t = IncreasingTableau::from_rows(Kind::Ordinary, &[], &input, 6)?;
    let example_ok = k_promotion(&t)?.rows() == output;
    let detail = format!("{shapes} graded shapes with at most {} boxes, {ideals} ideals, {} failures; example {}", config.max_boxes, failures.len(), if example_ok { "reproduced" } else { "differs" });
    Ok((verdict(failures.is_empty() && example_ok, shapes == 0), detail, json!({"failures": failures})))
}

fn two_route_promotion(config: &AuditConfig) -> Outcome {
    let mut tableaux = 0usize;
    let mut failures = Vec::new();
    for kind in [Kind::Ordinary, Kind::Shifted] {
        let mut seen = HashSet::new();
        let mut domain: Vec<Shape> = Vec::new();
        for s in straight_shapes(kind, config.max_boxes) {
            if seen.insert(s.clone()) {
                domain.push(s);
            }
        }
        for s in connected_shapes(kind, config.max_boxes) {
            let small = s.size() <= config.all_skew_boxes;
            if (small || ShapePoset::new(s.clone())?.poset.is_graded()) && seen.insert(s.clone()) {
                domain.push(s);
            }
        }
        for s in domain {
            let ell = ShapePoset::new(s.clone())?.max_rank() as u32 + 1;
            for t in enumerate_tableaux(&s, ell) {
                tableaux += 1;
                if k_promotion(&t)? != k_promotion_via_kbk(&t) && failures.len() < 5 {
                    failures.push(json!({"shape": s, "rows": t.rows()}));
                }
            }
        }
    }
    let detail = format!(
        "{tableaux} tableaux on straight and graded shapes with at most {} boxes and all connected shapes with at most {}, {} failures",
        config.max_boxes,
        config.all_skew_boxes,
        failures.len()
    );
    Ok((verdict(failures.is_empty(), tableaux == 0), detail, json!({"failures": failures})))
}

/// One random slide on `t`: forward into inner corners or reverse from outer corners.
pub fn random_slide(t: &IncreasingTableau, rng: &mut impl Rng) -> Result<IncreasingTableau> {
    let inner = t.shape().inner_corners();
    let forward = !inner.is_empty() && rng.gen_bool(0.5);
    let mut corners = if forward { inner } else { t.shape().outer_corners() };
    corners.shuffle(rng);
    let k = rng.gen_range(1..=corners.len());
    corners.truncate(k);
    if forward {
        kjdt_forward(t, &corners)
    } else {
        kjdt_reverse(t, &corners)
    }
}

fn hecke_invariance(config: &AuditConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let shapes = connected_shapes(Kind::Ordinary, 10.min(config.max_boxes));
    let mut sequences = 0;
    let mut slides = 0;
    let mut failures = Vec::new();
    while sequences < config.slide_samples && !shapes.is_empty() {
        let s = shapes.choose(&mut rng).expect("nonempty");
        let ell = s.size() as u32 + rng.gen_range(0..3);
        let Some(mut t) = random_tableau(s, ell, &mut rng) else { continue };
        sequences += 1;
        let start = hecke_permutation(&reading_word(&t));
        for _ in 0..rng.gen_range(1..=6) {
            t = random_slide(&t, &mut rng)?;
            slides += 1;
            if hecke_permutation(&reading_word(&t)) != start {
                if failures.len() < 5 {
                    failures.push(json!({"rows": t.rows(), "inner": t.shape().inner}));
                }
                break;
            }
        }
    }
    let detail = format!("{sequences} sequences, {slides} slides, seed {}, {} failures", config.seed, failures.len());
    Ok((verdict(failures.is_empty(), sequences == 0), detail, json!({"failures": failures})))
}

fn separation(config: &AuditConfig) -> Outcome {
    let mut tableaux = 0;
    let mut collisions = Vec::new();
    let mut first_position = [0usize; 2];
    let mut first_position_failures = 0;
    let mut level_failures = 0;
    let mut bound_failures = 0;
    for kind in [Kind::Ordinary, Kind::Shifted] {
        for s in straight_shapes(kind, config.max_boxes) {
            let sp = ShapePoset::new(s.clone())?;
            let mut seen = HashSet::new();
            for i in sp.poset.enumerate_ideals(config.cap)? {
                tableaux += 1;
                let t = ideal_to_tableau(&sp, &i)?;
                let ordinary = if kind == Kind::Shifted { double(&t)? } else { t };
                if !seen.insert(tableau_hecke_permutation(&ordinary)) && collisions.len() < 5 {
                    collisions.push(json!({"shape": s, "ideal": sp.poset.ideal_names(&i)}));
                }
                for r in hecke_first_position_report(&ordinary)? {
                    match r.case {
                        FirstPositionCase::Shrinking => {
                            first_position[0] += 1;
                            first_position_failures += !r.holds as usize;
                        }
                        _ => {
                            first_position[1] += 1;
                            level_failures += !r.holds as usize;
                        }
                    }
                }
                bound_failures += !row_removal_bound_holds(&ordinary)? as usize;
            }
        }
    }
    let ok = collisions.is_empty() && first_position_failures == 0 && bound_failures == 0;
    let detail = format!(
        "{tableaux} almost minimal tableaux, {} collisions, forced positions {}/{} hold, row-removal bound fails {bound_failures} times",
        collisions.len(),
        first_position[0] - first_position_failures,
        first_position[0]
    );
    let evidence = json!({
        "collisions": collisions,
        "level_rows": first_position[1],
        "level_failures": level_failures,
    });
    Ok((verdict(ok, tableaux == 0), detail, evidence))
}

fn rook_identity(config: &AuditConfig) -> Outcome {
    let pairs = config.pairs(4, 6);
    let mut evaluations = 0usize;
    let mut failures = Vec::new();
    for &(a, b) in &pairs {
        let t = Trapezoid::new(a, b)?;
        let ideals = t.sp.poset.enumerate_ideals(config.cap)?;
        for &c in t.sp.cells() {
            let (i, j) = (c.row() as usize, c.col() as usize);
            for ideal in &ideals {
                evaluations += 1;
                let v = stats::rook_statistic(&t, i, j, ideal)?;
                if v != rat(1) && failures.len() < 5 {
                    failures.push(json!({"a": a, "b": b, "box": [i, j], "ideal": t.sp.poset.ideal_names(ideal), "value": fmt_rational(&v)}));
                }
            }
        }
    }
    let detail = format!("{} trapezoids, {evaluations} evaluations, {} failures", pairs.len(), failures.len());
    Ok((verdict(failures.is_empty(), pairs.is_empty()), detail, json!({"failures": failures})))
}

fn homomesy(config: &AuditConfig) -> Outcome {
    let row = config.row;
    let mut failures = Vec::new();
    let mut orbits = 0;
    let mut families = 0;
    let sides = [("trapezoid", config.pairs(3, 6)), ("rectangle", config.pairs(6, 6))];
    for (name, pairs) in sides {
        for (a, b) in pairs {
            families += 1;
            let sp = if name == "trapezoid" { trapezoid(a, b)? } else { rectangle(a, b)? };
            let p = &sp.poset;
            let report = stats::homomesy_audit_with(p, config.cap, |i| row(p, i), |i| rat(stats::down_degree(p, i) as i64))?;
            let target = frac((a * b) as i64, (a + b) as i64);
            orbits += report.orbits.len();
            if let Some(o) = report.orbits.iter().find(|o| o.average != target) {
                failures.push(json!({"poset": name, "a": a, "b": b, "orbit_size": o.size, "average": fmt_rational(&o.average)}));
            }
        }
    }
    let detail = format!("{families} posets, {orbits} orbits, {} with an average other than ab/(a+b)", failures.len());
    Ok((verdict(failures.is_empty(), families == 0), detail, json!({"failures": failures})))
}

/// Words on `R(2,2)`: the four-orbit from the empty ideal, then the two-orbit.
pub const SMALL_SQUARE_WORDS: [&str; 6] = ["0011", "1001", "1100", "0110", "1010", "0101"];

fn stanley_thomas(config: &AuditConfig) -> Outcome {
    let row = config.row;
    let pairs = config.pairs(5, 5);
    let mut ideals = 0;
    let mut failures = Vec::new();
    for &(a, b) in &pairs {
        let r = rectangle(a, b)?;
        for i in r.poset.enumerate_ideals(config.cap)? {
            ideals += 1;
            let w = stats::stanley_thomas(&r, &i)?;
            if stats::stanley_thomas(&r, &row(&r.poset, &i))? != stats::rotate_right(&w) && failures.len() < 5 {
                failures.push(json!({"a": a, "b": b, "ideal": r.poset.ideal_names(&i)}));
            }
        }
    }
    let r = rectangle(2, 2)?;
    let words: Vec<String> = small_square_orbits()
        .iter()
        .map(|(i, _)| r.poset.ideal_from_names(i).and_then(|i| stats::stanley_thomas(&r, &i)))
        .collect::<Result<_>>()?;
    let words_ok = words == SMALL_SQUARE_WORDS;
    let detail = format!("{} rectangles, {ideals} ideals, {} failures; R(2,2) words {}", pairs.len(), failures.len(), words.join(" "));
    Ok((verdict(failures.is_empty() && words_ok, pairs.is_empty()), detail, json!({"failures": failures, "words": words})))
}

fn lp_audit(config: &AuditConfig) -> Outcome {
    let mut results = Vec::new();
    let mut ok = true;
    let mut solved = 0;
    for (a, b) in config.pairs(3, 6) {
        let r = ddeg_range(a, b, Mode::Antichains, config.cap, config.lp_variables)?;
        if r.verdict == AuditVerdict::SizeSkipped {
            results.push(json!({"a": a, "b": b, "verdict": r.verdict}));
            continue;
        }
        solved += 1;
        ok &= r.min.as_ref() == Some(&r.target) && r.max.as_ref() == Some(&r.target);
        results.push(serde_json::to_value(&r).expect("serializable"));
    }
    let mut open = Vec::new();
    for (a, b) in [(4, 4), (4, 5)] {
        if a + b > config.family_sum {
            continue;
        }
        let r = ddeg_range(a, b, Mode::Antichains, config.cap, config.lp_variables.max(200))?;
        let certified = match r.verdict {
            AuditVerdict::ProvenAtSize => r.min == Some(r.target.clone()) && r.max == Some(r.target.clone()),
            AuditVerdict::Counterexample => {
                let d = if r.max.as_ref() != Some(&r.target) { r.max_point.as_ref() } else { r.min_point.as_ref() };
                d.map(|d| certify_counterexample(a, b, Mode::Antichains, d, config.cap)).transpose()?.unwrap_or(false)
            }
            AuditVerdict::SizeSkipped => false,
        };
        ok &= certified;
        open.push(format!("T({a},{b}) {}", r.verdict));
        results.push(serde_json::to_value(&r).expect("serializable"));
    }
    let detail = format!("{solved} trapezoids with a <= 3 pinned at ab/(a+b); open cases: {}", if open.is_empty() { "none".into() } else { open.join(", ") });
    Ok((verdict(ok, solved == 0 && open.is_empty()), detail, json!({"ranges": results})))
}

fn exceptional_pairs(config: &AuditConfig) -> Outcome {
    let row = config.row;
    let mut pairs: Vec<Pair> = (2..=config.max_exceptional_n).map(|n| Pair::QI2 { n }).collect();
    pairs.push(Pair::Og612H3);
    let mut failures = Vec::new();
    let mut evidence = Vec::new();
    for &pair in &pairs {
        let r = commute_audit_with(pair, 1, Action::Rowmotion, config.cap, &|p, i| row(p, i))?;
        evidence.push(json!({"pair": pair.to_string(), "left": r.left_orbits, "right": r.right_orbits}));
        if !r.commutes {
            failures.push(pair.to_string());
        }
    }
    let detail = format!("{} pairs, mismatched: {}", pairs.len(), if failures.is_empty() { "none".into() } else { failures.join(", ") });
    Ok((verdict(failures.is_empty(), false), detail, json!({"orbits": evidence})))
}

fn piecewise_linear(config: &AuditConfig) -> Outcome {
    let mut ideals = 0usize;
    let mut failures = Vec::new();
    for kind in [Kind::Ordinary, Kind::Shifted] {
        for s in connected_shapes(kind, config.max_boxes) {
            let sp = ShapePoset::new(s.clone())?;
            for i in sp.poset.enumerate_ideals(config.cap)? {
                ideals += 1;
                let image = stats::pl_rowmotion(&sp.poset, &PolytopePoint::from_ideal(&i))?;
                if image.to_ideal() != Some(sp.poset.row(&i)) && failures.len() < 5 {
                    failures.push(json!({"shape": s, "ideal": sp.poset.ideal_names(&i)}));
                }
            }
        }
    }
    let mut witness = None;
    'search: for a in 1..=4 {
        for b in a..=4 {
            let report = commute_audit(Pair::RectTrap { a, b }, 2, Action::PlRowmotion, config.cap)?;
            if let Some(v) = report.violations.first() {
                let rect = rectangle(a, b)?;
                let values: BTreeMap<String, u32> =
                    rect.cells().iter().map(|c| c.label()).zip(v.input.iter().copied()).collect();
                witness = Some(json!({"a": a, "b": b, "height": 2, "input": values, "phi_then_row": v.phi_then_row, "row_then_phi": v.row_then_phi}));
                break 'search;
            }
        }
    }
    let detail = format!(
        "{ideals} lattice points on shapes with at most {} boxes, {} mismatches; height-2 witness {}",
        config.max_boxes,
        failures.len(),
        match &witness {
            Some(w) => format!("on R({},{})", w["a"], w["b"]),
            None => "not found".into(),
        }
    );
    let ok = failures.is_empty() && witness.is_some();
    Ok((verdict(ok, false), detail, json!({"failures": failures, "witness": witness})))
}

fn random_mixture(parts: &[Distribution], rng: &mut impl Rng) -> Result<Distribution> {
    let mut chosen: Vec<(BigRational, &Distribution)> = Vec::new();
    for d in parts {
        if rng.gen_bool(0.5) {
            chosen.push((rat(rng.gen_range(1..=9)), d));
        }
    }
    if chosen.is_empty() {
        chosen.push((rat(1), parts.choose(rng).expect("nonempty")));
    }
    let total = chosen.iter().fold(BigRational::zero(), |acc, (w, _)| acc + w);
    let scaled: Vec<(BigRational, &Distribution)> = chosen.into_iter().map(|(w, d)| (w / &total, d)).collect();
    Distribution::mixture(&scaled)
}

fn toggle_identities(config: &AuditConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x6d69);
    let pairs = config.pairs(4, 6);
    let mut distributions = 0;
    let mut failures = Vec::new();
    for &(a, b) in &pairs {
        let t = Trapezoid::new(a, b)?;
        let p = &t.sp.poset;
        let orbits = p.orbit_decomposition(config.cap)?;
        let uniforms: Vec<Distribution> = orbits.orbits.iter().map(|o| Distribution::uniform(o)).collect();
        let mut all = uniforms.clone();
        for _ in 0..config.mixtures {
            all.push(random_mixture(&uniforms, &mut rng)?);
        }
        for d in &all {
            distributions += 1;
            let ddeg_ok = stats::expected_ddeg(p, d)? == stats::ddeg_formula(&t, d)?;
            let diagonal_ok = stats::diagonal_balance(&t, d)?.is_zero();
            let (l, r) = stats::pair_balance(&t, d)?;
            if !(ddeg_ok && diagonal_ok && l == r) && failures.len() < 5 {
                failures.push(json!({"a": a, "b": b, "down_degree": ddeg_ok, "diagonal": diagonal_ok, "pairs": l == r}));
            }
        }
    }
    let detail = format!("{} trapezoids, {distributions} distributions, {} failures", pairs.len(), failures.len());
    Ok((verdict(failures.is_empty(), pairs.is_empty()), detail, json!({"failures": failures})))
}

/// The slide diagrams of phi on the worked example, top row first.
/// Positive numbers are entries, negative numbers barred labels, 0 is empty.
pub const PHI_TRACE: [[[i32; 5]; 3]; 4] = [
    [[0, 0, 3, 5, 6], [0, -3, 2, 4, 5], [-1, -2, 1, 3, 4]],
    [[0, 0, 5, 6, -3], [0, 2, 3, 4, 5], [-1, -2, 1, 3, 4]],
    [[0, 0, 5, 6, -3], [0, 2, 4, 5, -2], [-1, 1, 3, 4, 5]],
    [[0, 0, 6, -1, -3], [0, 4, 5, 6, -2], [1, 2, 3, 4, 5]],
];

/// The worked example's input, rows top first.
pub const PHI_INPUT: [[u32; 3]; 3] = [[3, 5, 6], [2, 4, 5], [1, 3, 4]];

pub fn encode_grid(grid: &[Vec<Option<Mark>>]) -> Vec<Vec<i32>> {
    grid.iter()
        .map(|row| {
            row.iter()
                .map(|m| match m {
                    Some(Mark::Value(v)) => *v as i32,
                    Some(Mark::Barred(k)) => -(*k as i32),
                    None => 0,
                })
                .collect()
        })
        .collect()
}

fn phi_trace() -> Outcome {
    let rows: Vec<Vec<u32>> = PHI_INPUT.iter().map(|r| r.to_vec()).collect();
    let t = IncreasingTableau::from_rows_top_first(Kind::Ordinary, &[], &rows, 6)?;
    let (out, trace) = phi_traced(&t)?;
    let got: Vec<Vec<Vec<i32>>> = trace.steps.iter().map(|s| encode_grid(&s.grid())).collect();
    let want: Vec<Vec<Vec<i32>>> = PHI_TRACE.iter().map(|g| g.iter().map(|r| r.to_vec()).collect()).collect();
    let output_ok = out.rows() == vec![vec![1, 2, 3, 4, 5], vec![4, 5, 6], vec![6]];
    let ok = got == want && output_ok;
    let detail = format!("{} diagrams compared, output {}", got.len(), if output_ok { "matches" } else { "differs" });
    Ok((verdict(ok, false), detail, json!({"trace": trace.to_string()})))
}

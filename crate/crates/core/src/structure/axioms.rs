//! Exhaustive search for counterexamples to the centrality axioms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::StructureError;
use crate::centrality::{centralities, Measure};
use crate::graph::{enumerate_labeled_graphs, write_graph6, Graph};
use crate::value::Value;

pub const MAX_FALSIFIER_VERTICES: usize = 6;
const NEAR_BAND_LOG: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    /// Every addition strictly raises both endpoints.
    #[serde(rename = "1")]
    One,
    /// Every addition strictly lowers both endpoints.
    #[serde(rename = "1p")]
    OnePrime,
    /// Additions raise endpoints inside a component and never across.
    #[serde(rename = "2")]
    Two,
    /// Additions raise endpoints across components and never inside one.
    #[serde(rename = "2p")]
    TwoPrime,
    /// An addition helps `i` iff `deg(j) ≤ f(deg(i))` for some strictly
    /// increasing `f`.
    #[serde(rename = "3")]
    Three,
    /// Isolated vertices score 0 and an addition never raises a third vertex.
    #[serde(rename = "4")]
    Four,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::One, Axiom::OnePrime, Axiom::Two, Axiom::TwoPrime, Axiom::Three, Axiom::Four];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::One => "1",
            Axiom::OnePrime => "1p",
            Axiom::Two => "2",
            Axiom::TwoPrime => "2p",
            Axiom::Three => "3",
            Axiom::Four => "4",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Axiom {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().replace(['\'', '′'], "p");
        Axiom::ALL.into_iter().find(|a| a.code() == norm).ok_or_else(|| StructureError::UnknownAxiom(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomViolation {
    pub graph6: String,
    pub n: usize,
    /// The added pair; absent for the isolated-vertex clause.
    pub flip: Option<[usize; 2]>,
    pub vertex: usize,
    pub before: Option<Value>,
    pub after: Value,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FalsifierReport {
    pub measure: String,
    pub axiom: Axiom,
    pub n_max: usize,
    pub graphs_checked: u64,
    pub counterexample: Option<AxiomViolation>,
    /// Float comparisons too close to call, never reported as violations.
    pub near_band_total: u64,
    pub near_band: Vec<AxiomViolation>,
    /// For Axiom 3: a strictly increasing `f` consistent with every
    /// observed addition, indexed by `deg(i)`.
    pub fitted_f: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Want {
    Positive,
    Negative,
    NonPositive,
    Zero,
}

impl Want {
    fn accepts(self, o: Ordering) -> bool {
        match self {
            Want::Positive => o == Ordering::Greater,
            Want::Negative => o == Ordering::Less,
            Want::NonPositive => o != Ordering::Greater,
            Want::Zero => o == Ordering::Equal,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Want::Positive => "must strictly increase",
            Want::Negative => "must strictly decrease",
            Want::NonPositive => "must not increase",
            Want::Zero => "must be 0",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Judgment {
    Holds,
    Violated,
    NearBand,
}

fn tol(v: &Value) -> f64 {
    match v {
        Value::Approx { tol, .. } => *tol,
        Value::Exact(_) => 0.0,
    }
}

/// Compares `after` with `before`. Float deltas below `1000τ` leave both
/// zero and the observed sign open.
fn judge(before: &Value, after: &Value, want: Want) -> Judgment {
    let candidates: Vec<Ordering> = match (before, after) {
        (Value::Exact(a), Value::Exact(b)) => vec![b.cmp(a)],
        _ => {
            let d = after.to_f64() - before.to_f64();
            let tau = tol(before).max(tol(after));
            let sign = d.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
            if d.abs() >= 1000.0 * tau {
                vec![sign]
            } else {
                vec![Ordering::Equal, sign]
            }
        }
    };
    let ok: Vec<bool> = candidates.iter().map(|&o| want.accepts(o)).collect();
    if ok.iter().all(|&b| b) {
        Judgment::Holds
    } else if ok.iter().all(|&b| !b) {
        Judgment::Violated
    } else {
        Judgment::NearBand
    }
}

/// An addition observed for the degree-homophily fit.
#[derive(Clone, Copy, Debug)]
struct Observation {
    di: usize,
    dj: usize,
    improving: bool,
    n: usize,
    mask: u128,
    i: usize,
    j: usize,
}

#[derive(Default)]
struct Outcome {
    violation: Option<AxiomViolation>,
    near: Vec<AxiomViolation>,
    near_total: u64,
    observations: Vec<Observation>,
}

fn violation(g: &Graph, flip: Option<[usize; 2]>, vertex: usize, before: Option<&Value>, after: &Value, reason: String) -> AxiomViolation {
    AxiomViolation { graph6: write_graph6(g), n: g.n(), flip, vertex, before: before.cloned(), after: after.clone(), reason }
}

fn scan_graph(m: &Measure, axiom: Axiom, g: &Graph) -> Result<Outcome, StructureError> {
    let mut out = Outcome::default();
    let base = centralities(m, g)?;
    let record = |out: &mut Outcome, j: Judgment, make: &dyn Fn() -> AxiomViolation| match j {
        Judgment::Holds => {}
        Judgment::Violated => {
            if out.violation.is_none() {
                out.violation = Some(make());
            }
        }
        Judgment::NearBand => {
            out.near_total += 1;
            if out.near.len() < NEAR_BAND_LOG {
                out.near.push(make());
            }
        }
    };
    if axiom == Axiom::Four {
        for k in g.vertices().filter(|&k| g.is_isolated(k)) {
            let j = judge(&Value::zero(), &base[k], Want::Zero);
            record(&mut out, j, &|| violation(g, None, k, None, &base[k], "isolated vertex must score 0".into()));
        }
    }
    for (a, b) in g.non_edges() {
        let h = g.with_edge(a, b);
        let after = centralities(m, &h)?;
        let same = g.same_component(a, b);
        let targets: Vec<(usize, Want)> = match axiom {
            Axiom::One => vec![(a, Want::Positive), (b, Want::Positive)],
            Axiom::OnePrime => vec![(a, Want::Negative), (b, Want::Negative)],
            Axiom::Two | Axiom::TwoPrime => {
                let inside = if axiom == Axiom::Two { Want::Positive } else { Want::NonPositive };
                let across = if axiom == Axiom::Two { Want::NonPositive } else { Want::Positive };
                let w = if same { inside } else { across };
                vec![(a, w), (b, w)]
            }
            Axiom::Four => g.vertices().filter(|&k| k != a && k != b).map(|k| (k, Want::NonPositive)).collect(),
            Axiom::Three => {
                for (i, j) in [(a, b), (b, a)] {
                    match judge(&base[i], &after[i], Want::Positive) {
                        Judgment::NearBand => record(&mut out, Judgment::NearBand, &|| {
                            violation(g, Some([a, b]), i, Some(&base[i]), &after[i], "improvement too close to call".into())
                        }),
                        verdict => out.observations.push(Observation {
                            di: g.degree(i),
                            dj: g.degree(j),
                            improving: verdict == Judgment::Holds,
                            n: g.n(),
                            mask: g.pair_mask(),
                            i,
                            j,
                        }),
                    }
                }
                Vec::new()
            }
        };
        for (k, want) in targets {
            let scope = match axiom {
                Axiom::Two | Axiom::TwoPrime if same => " (same component)",
                Axiom::Two | Axiom::TwoPrime => " (different components)",
                Axiom::Four => " (unrelated vertex)",
                _ => "",
            };
            let j = judge(&base[k], &after[k], want);
            record(&mut out, j, &|| {
                violation(g, Some([a, b]), k, Some(&base[k]), &after[k], format!("centrality {} on adding {a}-{b}{scope}", want.describe()))
            });
        }
    }
    Ok(out)
}

fn observed(m: &Measure, o: &Observation, reason: String) -> Result<AxiomViolation, StructureError> {
    let g = Graph::from_pair_mask(o.n, o.mask)?;
    let before = centralities(m, &g)?.swap_remove(o.i);
    let after = centralities(m, &g.with_edge(o.i, o.j))?.swap_remove(o.i);
    let (a, b) = (o.i.min(o.j), o.i.max(o.j));
    Ok(violation(&g, Some([a, b]), o.i, Some(&before), &after, reason))
}

/// Fits a strictly increasing `f` to the observations, or explains why none exists.
fn fit_homophily(m: &Measure, obs: &[Observation]) -> Result<Result<Vec<i64>, AxiomViolation>, StructureError> {
    let mut first: BTreeMap<(usize, usize, bool), Observation> = BTreeMap::new();
    for o in obs {
        first.entry((o.di, o.dj, o.improving)).or_insert(*o);
    }
    let max_deg = obs.iter().map(|o| o.di).max().unwrap_or(0);
    // lo: largest deg(j) accepted; hi: smallest deg(j) refused.
    let mut bounds: Vec<(Option<&Observation>, Option<&Observation>)> = vec![(None, None); max_deg + 1];
    for ((di, _, improving), o) in &first {
        let slot = &mut bounds[*di];
        if *improving {
            if slot.0.map_or(true, |p| o.dj > p.dj) {
                slot.0 = Some(o);
            }
        } else if slot.1.map_or(true, |p| o.dj < p.dj) {
            slot.1 = Some(o);
        }
    }
    let mut f = Vec::with_capacity(max_deg + 1);
    for (d, (lo, hi)) in bounds.iter().enumerate() {
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if lo.dj >= hi.dj {
                return Ok(Err(observed(
                    m,
                    hi,
                    format!(
                        "deg(i) = {d}: refuses deg(j) = {} but accepts deg(j) = {} (in {})",
                        hi.dj,
                        lo.dj,
                        write_graph6(&Graph::from_pair_mask(lo.n, lo.mask)?)
                    ),
                )?));
            }
        }
        let upper = hi.map(|h| h.dj as i64 - 1);
        let lower = lo.map(|l| l.dj as i64);
        let floor = f.last().map(|&p: &i64| p + 1);
        let pick = match (lower, floor) {
            (Some(l), Some(p)) => l.max(p),
            (Some(l), None) => l,
            (None, Some(p)) => p,
            (None, None) => upper.unwrap_or(0).min(-1),
        };
        if let (Some(u), Some(h)) = (upper, hi) {
            if pick > u {
                return Ok(Err(observed(
                    m,
                    h,
                    format!("no strictly increasing f: f({d}) must be at least {pick} but below {}", h.dj),
                )?));
            }
        }
        f.push(pick);
    }
    Ok(Ok(f))
}

/// The first counterexample over all labeled graphs on `1..=n_max`
/// vertices, in mask order, with the same report for every thread count.
pub fn falsify_axiom(m: &Measure, axiom: Axiom, n_max: usize) -> Result<FalsifierReport, StructureError> {
    if n_max > MAX_FALSIFIER_VERTICES {
        return Err(StructureError::Size { n: n_max, max: MAX_FALSIFIER_VERTICES });
    }
    let mut report = FalsifierReport {
        measure: m.to_string(),
        axiom,
        n_max,
        graphs_checked: 0,
        counterexample: None,
        near_band_total: 0,
        near_band: Vec::new(),
        fitted_f: None,
    };
    let mut observations = Vec::new();
    for n in 1..=n_max {
        let all = enumerate_labeled_graphs(n)?;
        let outcomes: Vec<Outcome> = (0..all.total())
            .into_par_iter()
            .map(|mask| scan_graph(m, axiom, &Graph::from_pair_mask(n, mask as u128)?))
            .collect::<Result<_, StructureError>>()?;
        report.graphs_checked += outcomes.len() as u64;
        for o in outcomes {
            report.near_band_total += o.near_total;
            for e in o.near {
                if report.near_band.len() < NEAR_BAND_LOG {
                    report.near_band.push(e);
                }
            }
            if report.counterexample.is_none() {
                report.counterexample = o.violation;
            }
            observations.extend(o.observations);
        }
        if report.counterexample.is_some() {
            break;
        }
    }
    if axiom == Axiom::Three && report.counterexample.is_none() {
        match fit_homophily(m, &observations)? {
            Ok(f) => report.fitted_f = Some(f),
            Err(v) => report.counterexample = Some(v),
        }
    }
    Ok(report)
}

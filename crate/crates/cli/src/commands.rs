use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use apsn_core::census::{conjecture_report, labeled_apsn, run_census, CensusOptions, MAX_CENSUS_VERTICES};
use apsn_core::centrality::{centralities, centrality, warnings, Measure, WeightTable};
use apsn_core::game::{
    best_response_dynamics, finite_cost_check, is_apsn, parse_profile, DynamicsRule, GameSpec, Homophily, MonotoneType,
};
use apsn_core::graph::{canonical_form, enumerate_labeled_graphs, read_graph, write_graph6, Graph, GraphFormat};
use apsn_core::learning::{learn_threshold, HiddenGame};
use apsn_core::structure::{
    betweenness_condition, check_monotone_structure, ecc_necessary, ecc_sufficient, falsify_axiom, infer_types,
    is_stratified, stratified_sequences, validate_homophily, Axiom,
};
use apsn_core::truncated::{
    greedy_linear_apsn, maximal_member, pareto_check, truncated_game, universality_thresholds,
};
use apsn_core::{AgentProfile, ExtRational};
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::args::*;
use crate::error::CliError;

pub enum Output {
    Json(Json),
    Text(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Ok(read_graph(&read_text(path)?, GraphFormat::from_path(path))?)
}

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent()
}

fn load_profile(path: &Path, n: usize) -> Result<GameSpec> {
    Ok(parse_profile(&read_text(path)?, n, base_dir(path))?)
}

fn parse_measure(spec: &str) -> Result<Measure> {
    Ok(Measure::parse(spec, Some(Path::new(".")))?)
}

fn parse_rationals(list: &[String], n: usize, what: &str) -> Result<Vec<ExtRational>> {
    let values: Vec<ExtRational> =
        list.iter().map(|s| s.parse::<ExtRational>()).collect::<std::result::Result<_, _>>()?;
    match values.len() {
        1 => Ok(vec![values[0].clone(); n]),
        k if k == n => Ok(values),
        k => Err(CliError::invalid(format!("{k} {what} for {n} vertices"))),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("reports serialize")
}

fn numeric_measures(spec: &GameSpec) -> Result<(Vec<Measure>, Vec<ExtRational>)> {
    let mut measures = Vec::new();
    let mut thresholds = Vec::new();
    for (k, a) in spec.agents().iter().enumerate() {
        match a {
            AgentProfile::Numeric { measure, threshold: Some(t) } => {
                measures.push(measure.clone());
                thresholds.push(t.clone());
            }
            _ => return Err(CliError::new("malformed_profile", format!("agent {k} needs a measure and a threshold"))),
        }
    }
    Ok((measures, thresholds))
}

pub fn centrality_cmd(a: &CentralityArgs) -> Result<Output> {
    let measure = parse_measure(&a.measure)?;
    let g = load_graph(&a.graph)?;
    let values = match a.vertex {
        Some(i) => vec![centrality(&measure, &g, i)?],
        None => centralities(&measure, &g)?,
    };
    let vertices: Vec<usize> = a.vertex.map_or_else(|| g.vertices().collect(), |i| vec![i]);
    Ok(Output::Json(json!({
        "measure": measure.to_string(),
        "graph6": write_graph6(&g),
        "vertices": vertices,
        "values": to_json(&values),
        "warnings": warnings(&measure, &g),
    })))
}

pub fn check_cmd(a: &CheckArgs) -> Result<Output> {
    let cost = a
        .cost
        .as_deref()
        .map(|c| match c.parse::<ExtRational>()? {
            ExtRational::Finite(r) if r > BigRational::from_integer(0.into()) => Ok(r),
            _ => Err(CliError::invalid(format!("cost must be a positive rational, got {c:?}"))),
        })
        .transpose()?;
    let g = load_graph(&a.graph)?;
    let spec = load_profile(&a.profile, g.n())?;
    let report = is_apsn(&spec, &g)?;
    let mut out = to_json(&report);
    out["graph6"] = json!(write_graph6(&g));
    out["n"] = json!(g.n());
    if let Some(c) = cost {
        let stable = finite_cost_check(&spec, &g, &c)?;
        out["finite_cost"] = json!({ "cost": c.to_string(), "stable": stable });
    }
    Ok(Output::Json(out))
}

fn write_graph6_list(path: &Path, graphs: &[String]) -> Result<()> {
    let mut text = graphs.join("\n");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn census_cmd(a: &CensusArgs) -> Result<Output> {
    if let Some(m) = &a.conjecture {
        let measure = parse_measure(m)?;
        let report = conjecture_report(&measure, a.n, a.shards as usize)?;
        if let Some(p) = &a.graph6_out {
            write_graph6_list(p, &report.census.apsn.iter().map(|c| c.graph6.clone()).collect::<Vec<_>>())?;
        }
        let mut out = to_json(&report);
        out["consistent"] = json!(report.is_consistent());
        return Ok(Output::Json(out));
    }
    let profile = a.profile.as_ref().expect("clap requires profile or conjecture");
    let spec = load_profile(profile, a.n)?;
    let (checkpoint, resume) = match (&a.checkpoint, &a.resume) {
        (_, Some(r)) => (Some(r.clone()), true),
        (c, None) => (c.clone(), false),
    };
    let options = CensusOptions { shards: a.shards as usize, checkpoint, resume };
    let result = run_census(&spec, a.n, &options)?;
    if let Some(p) = &a.graph6_out {
        write_graph6_list(p, &result.summary.apsn.iter().map(|c| c.graph6.clone()).collect::<Vec<_>>())?;
    }
    Ok(Output::Json(to_json(&result)))
}

pub fn axiom_cmd(a: &AxiomArgs) -> Result<Output> {
    let measure = parse_measure(&a.measure)?;
    let axiom: Axiom = a.axiom.parse()?;
    Ok(Output::Json(to_json(&falsify_axiom(&measure, axiom, a.max_n)?)))
}

fn parse_homophily(s: &str) -> Result<Homophily> {
    if s == "gt" {
        return Ok(Homophily::GameTheoretic);
    }
    let table = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| CliError::invalid(format!("homophily must be `gt` or a comma list of integers, got {s:?}")))?;
    Ok(Homophily::Table(table))
}

fn parse_type(s: &str) -> Result<MonotoneType> {
    MonotoneType::from_code(s.trim())
        .ok_or_else(|| CliError::new("invalid_types", format!("type must be one of 1, 1p, 2, 2p, got {s:?}")))
}

fn classes(graphs: impl IntoIterator<Item = Graph>) -> Result<BTreeSet<String>> {
    graphs.into_iter().map(|g| Ok(canonical_form(&g)?.to_string())).collect()
}

fn set_diff(a: &BTreeSet<String>, b: &BTreeSet<String>) -> Vec<String> {
    a.difference(b).cloned().collect()
}

fn census_classes(spec: &GameSpec, n: usize) -> Result<BTreeSet<String>> {
    let r = run_census(spec, n, &CensusOptions::with_shards(8))?;
    Ok(r.summary.apsn.iter().map(|c| c.graph6.clone()).collect())
}

fn family_guard(n: usize) -> Result<()> {
    if n > MAX_CENSUS_VERTICES {
        return Err(CliError::new("size_guard", format!("predictions are limited to {MAX_CENSUS_VERTICES} vertices, got {n}")));
    }
    Ok(())
}

pub fn predict_cmd(a: &PredictArgs) -> Result<Output> {
    if let Some(path) = &a.graph {
        return describe_graph(path, &a.known);
    }
    let family = a.family.expect("clap requires family or graph");
    let n = a.n.expect("clap requires n with family");
    family_guard(n)?;
    let out = match family {
        Family::Monotone => {
            let types: Vec<MonotoneType> = a.types.iter().map(|s| parse_type(s)).collect::<Result<_>>()?;
            if types.len() != n {
                return Err(CliError::new("invalid_types", format!("{} types for {n} vertices", types.len())));
            }
            let predicted: Vec<Graph> =
                enumerate_labeled_graphs(n)?.iter().filter(|g| check_monotone_structure(g, &types)).collect();
            let labels: BTreeSet<String> = predicted.iter().map(write_graph6).collect();
            let mut out = json!({
                "family": "monotone",
                "n": n,
                "types": types,
                "labeled": true,
                "predicted": labels,
                "count": labels.len(),
            });
            if a.verify {
                let census: BTreeSet<String> =
                    labeled_apsn(&GameSpec::monotone(&types), n)?.iter().map(write_graph6).collect();
                out["verification"] = verification(&labels, &census);
            }
            out
        }
        Family::Stratified => {
            let f = parse_homophily(&a.homophily)?;
            validate_homophily(&f, n)?;
            let seqs = stratified_sequences(n, &f)?;
            let predicted = classes(seqs.iter().map(|s| s.graph()).collect::<std::result::Result<Vec<_>, _>>()?)?;
            let mut out = json!({
                "family": "stratified",
                "n": n,
                "homophily": f.describe(),
                "labeled": false,
                "sequences": to_json(&seqs),
                "predicted": predicted,
                "count": predicted.len(),
            });
            if a.verify {
                let census = census_classes(&GameSpec::homophilic(f, n)?, n)?;
                out["verification"] = verification(&predicted, &census);
            }
            out
        }
        Family::Betweenness => {
            let predicted = classes(enumerate_labeled_graphs(n)?.iter().filter(betweenness_condition))?;
            let mut out = json!({
                "family": "betweenness",
                "n": n,
                "labeled": false,
                "predicted": predicted,
                "count": predicted.len(),
            });
            if a.verify {
                let census = census_classes(&GameSpec::uniform(Measure::Betweenness, n)?, n)?;
                out["verification"] = verification(&predicted, &census);
            }
            out
        }
        Family::Eccentricity => {
            let all = enumerate_labeled_graphs(n)?;
            let sufficient = classes(all.iter().filter(ecc_sufficient))?;
            let necessary = classes(all.iter().filter(ecc_necessary))?;
            let mut out = json!({
                "family": "eccentricity",
                "n": n,
                "labeled": false,
                "predicted": sufficient,
                "count": sufficient.len(),
                "necessary_count": necessary.len(),
            });
            if a.verify {
                let census = census_classes(&GameSpec::uniform(Measure::Eccentricity, n)?, n)?;
                let mut v = verification(&sufficient, &census);
                v["stable_without_necessary"] = json!(set_diff(&census, &necessary));
                v["sufficient_but_unstable"] = json!(set_diff(&sufficient, &census));
                v["consistent"] = json!(census.is_subset(&necessary) && sufficient.is_subset(&census));
                out["verification"] = v;
            }
            out
        }
    };
    Ok(Output::Json(out))
}

fn verification(predicted: &BTreeSet<String>, census: &BTreeSet<String>) -> Json {
    json!({
        "census": census,
        "equal": predicted == census,
        "census_only": set_diff(census, predicted),
        "predicted_only": set_diff(predicted, census),
        "consistent": predicted == census,
    })
}

fn describe_graph(path: &Path, known: &[String]) -> Result<Output> {
    let g = load_graph(path)?;
    let mut types: Vec<Option<MonotoneType>> = vec![None; g.n()];
    for item in known {
        let (v, t) = item
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("known type must look like `vertex=type`, got {item:?}")))?;
        let v: usize = v.trim().parse().map_err(|_| CliError::invalid(format!("bad vertex in {item:?}")))?;
        g.check_vertex(v)?;
        types[v] = Some(parse_type(t)?);
    }
    let candidates = if known.is_empty() { infer_types(&g, None) } else { infer_types(&g, Some(&types)) };
    let monotone = match candidates {
        Ok(c) => json!({ "candidates": c }),
        Err(e) => json!({ "error": { "code": e.code(), "message": e.to_string() } }),
    };
    Ok(Output::Json(json!({
        "graph6": write_graph6(&g),
        "n": g.n(),
        "monotone": monotone,
        "stratified_gt": is_stratified(&g, &Homophily::GameTheoretic)?,
        "betweenness_condition": betweenness_condition(&g),
        "ecc_necessary": ecc_necessary(&g),
        "ecc_sufficient": ecc_sufficient(&g),
    })))
}

pub fn truncated_cmd(a: &TruncatedArgs) -> Result<Output> {
    let out = match &a.action {
        TruncatedAction::Universality { graph, measure } => {
            let m = parse_measure(measure)?;
            let g = load_graph(graph)?;
            let measures = vec![m; g.n()];
            let theta = universality_thresholds(&g, &measures)?;
            let spec = truncated_game(&measures, &theta)?;
            json!({
                "action": "universality",
                "graph6": write_graph6(&g),
                "thresholds": to_json(&theta),
                "stable": is_apsn(&spec, &g)?.stable,
            })
        }
        TruncatedAction::Pareto { graph, profile } => {
            let g = load_graph(graph)?;
            let (measures, theta) = numeric_measures(&load_profile(profile, g.n())?)?;
            let spec = truncated_game(&measures, &theta)?;
            json!({
                "action": "pareto",
                "graph6": write_graph6(&g),
                "pareto": pareto_check(&g, &measures, &theta)?,
                "stable": is_apsn(&spec, &g)?.stable,
            })
        }
        TruncatedAction::Greedy { weights, thresholds } => {
            let w = WeightTable::parse(&read_text(weights)?)?;
            let theta = parse_rationals(thresholds, w.n(), "thresholds")?;
            let g = greedy_linear_apsn(&w, &theta)?;
            let measures = vec![Measure::Linear(Arc::new(w)); g.n()];
            json!({
                "action": "greedy",
                "graph6": write_graph6(&g),
                "edges": g.edges(),
                "pareto": pareto_check(&g, &measures, &theta)?,
            })
        }
        TruncatedAction::Maximal { n, measure, thresholds, bounds } => {
            let m = parse_measure(measure)?;
            let theta = parse_rationals(thresholds, *n, "thresholds")?;
            let bounds = if bounds.is_empty() { None } else { Some(parse_rationals(bounds, *n, "bounds")?) };
            let measures = vec![m; *n];
            let r = maximal_member(*n, &measures, &theta, bounds.as_deref())?;
            let spec = truncated_game(&measures, &theta)?;
            json!({
                "action": "maximal",
                "graph6": write_graph6(&r.graph),
                "edges": r.graph.edges(),
                "bounds": to_json(&r.bounds),
                "stable": is_apsn(&spec, &r.graph)?.stable,
            })
        }
    };
    Ok(Output::Json(out))
}

pub fn learn_cmd(a: &LearnArgs) -> Result<Output> {
    let spec = load_profile(&a.profile, a.n)?;
    numeric_measures(&spec)?;
    let agents: Vec<usize> = match a.agent {
        Some(i) if i >= a.n => return Err(CliError::invalid(format!("agent {i} out of range for {} vertices", a.n))),
        Some(i) => vec![i],
        None => (0..a.n).collect(),
    };
    let game = HiddenGame::new(spec)?;
    let reports = agents.iter().map(|&i| learn_threshold(&game, i)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Output::Json(json!({ "n": a.n, "reports": to_json(&reports) })))
}

pub fn dynamics_cmd(a: &DynamicsArgs) -> Result<Output> {
    let g0 = match (&a.graph, a.n) {
        (Some(p), _) => load_graph(p)?,
        (None, Some(n)) => Graph::empty(n)?,
        (None, None) => unreachable!("clap requires a start"),
    };
    let spec = load_profile(&a.profile, g0.n())?;
    let rule = match a.rule {
        Rule::Random => DynamicsRule::Random,
        Rule::FirstBlocking => DynamicsRule::FirstBlocking,
    };
    let t = best_response_dynamics(&spec, &g0, a.max_steps, a.seed, rule)?;
    let mut out = to_json(&t);
    out["seed"] = json!(a.seed);
    Ok(Output::Json(out))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot_cmd(a: &ExportDotArgs) -> Result<Output> {
    let g = load_graph(&a.graph)?;
    let labels: Vec<String> = match (&a.profile, &a.measure) {
        (Some(p), _) => {
            let spec = load_profile(p, g.n())?;
            spec.agents()
                .iter()
                .enumerate()
                .map(|(v, agent)| {
                    let value = match agent.measure() {
                        Some(m) => format!("\\n{}", centrality(m, &g, v)?),
                        None => String::new(),
                    };
                    Ok(format!("{v}\\n{}{value}", dot_escape(&agent.describe())))
                })
                .collect::<Result<_>>()?
        }
        (None, Some(m)) => {
            let m = parse_measure(m)?;
            let values = centralities(&m, &g)?;
            values.iter().enumerate().map(|(v, c)| format!("{v}\\n{}={c}", dot_escape(&m.to_string()))).collect()
        }
        (None, None) => g.vertices().map(|v| v.to_string()).collect(),
    };
    let mut dot = String::from("graph apsn {\n  node [shape=circle];\n");
    for (v, label) in labels.iter().enumerate() {
        dot.push_str(&format!("  {v} [label=\"{label}\"];\n"));
    }
    for (i, j) in g.edges() {
        dot.push_str(&format!("  {i} -- {j};\n"));
    }
    dot.push_str("}\n");
    Ok(Output::Text(dot))
}

pub fn write_output(out: &Output, path: Option<&PathBuf>) -> Result<()> {
    let text = match out {
        Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(v).expect("json")),
        Output::Text(s) => s.clone(),
    };
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

//! Command-line verification harness over `quotkit-core`.

pub mod checks;
pub mod report;
pub mod scenario;

use quotkit_core::sampling;
use quotkit_core::transform::{picard_one_graph, two_c_graph, ResolutionGraph, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use report::{Check, Report};
use scenario::{GraphParams, Preset, Scenario, ScenarioError, ScenarioFile};

/// Independent stream for battery `k`, so adding a battery leaves the others
/// unchanged.
fn battery_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

const GAMMA: u64 = 1;
const CHERN: u64 = 2;
const TRANSFORM: u64 = 3;
const GRAPH: u64 = 4;

fn load_graphs(p: &GraphParams, seed: u64) -> Result<Vec<(String, ResolutionGraph, Option<u64>)>, ScenarioError> {
    let bad = |e: quotkit_core::transform::TransformError| ScenarioError::Invalid {
        field: "graph",
        reason: e.to_string(),
    };
    Ok(match (&p.scenario, &p.graph, &p.inline, p.random) {
        (Some(Preset::TwoC), ..) => {
            let d = p.d.unwrap_or(1);
            vec![(format!("2c/d={d}"), two_c_graph(d), Some((d + 2) as u64))]
        }
        (Some(Preset::PicardOne), ..) => {
            let c = p.csq.unwrap_or(1);
            vec![(format!("picard-1/csq={c}"), picard_one_graph(c), Some(1))]
        }
        (_, Some(path), ..) => {
            let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
                path: path.clone(),
                source,
            })?;
            vec![("graph".into(), ResolutionGraph::from_json(&text).map_err(bad)?, None)]
        }
        (_, _, Some(spec), _) => vec![("inline".into(), ResolutionGraph::new(spec.clone()).map_err(bad)?, None)],
        (_, _, _, Some(n)) => {
            let mut rng = battery_rng(seed, GRAPH);
            let width = n.to_string().len();
            (0..n)
                .map(|i| (format!("random/{i:0width$}"), sampling::consistent_graph(&mut rng, 20), None))
                .collect()
        }
        _ => {
            return Err(ScenarioError::Invalid {
                field: "scenario",
                reason: "no graph source".into(),
            })
        }
    })
}

fn graph_checks(
    p: &GraphParams,
    seed: u64,
    run: impl Fn(&str, &ResolutionGraph, Option<u64>) -> Vec<Check>,
) -> Result<Vec<Check>, ScenarioError> {
    Ok(load_graphs(p, seed)?
        .iter()
        .flat_map(|(label, g, expected)| run(label, g, *expected))
        .collect())
}

/// Run one scenario and collect its checks.
pub fn run_scenario(sc: &Scenario, seed: u64, strategy: Strategy) -> Result<Report, ScenarioError> {
    sc.validate()?;
    let checks = match sc {
        Scenario::Gamma(p) => gamma_battery(p.d_min..=p.d_max, p.samples, p.limit_samples, p.limit_d_max, seed),
        Scenario::Chart(p) => checks::chart_checks(p.d),
        Scenario::Transition(p) => checks::transition_checks(1..=p.d_max),
        Scenario::Forward(p) => graph_checks(p, seed, |l, g, _| checks::forward_checks(&format!("forward/{l}"), g, strategy))?,
        Scenario::Backward(p) => graph_checks(p, seed, |l, g, _| checks::backward_checks(&format!("backward/{l}"), g, strategy))?,
        Scenario::ChoiceDim(p) => {
            graph_checks(p, seed, |l, g, e| checks::choice_checks(&format!("choice-dim/{l}"), g, e, strategy))?
        }
        Scenario::Chern(p) => checks::chern_checks(p.d_max as i64, p.chains, &mut battery_rng(seed, CHERN)),
        Scenario::Ineq(p) => checks::ineq_checks(p.m_max, p.r_max as u64),
        Scenario::Suite(p) => suite_checks(&p.d_range, seed, strategy),
    };
    Ok(Report::new(sc.clone(), seed, checks))
}

/// Run a parsed scenario document; its own seed and strategy win over the
/// caller's.
pub fn run_file(f: &ScenarioFile, seed: u64, strategy: Strategy) -> Result<Report, ScenarioError> {
    run_scenario(&f.scenario, f.seed.unwrap_or(seed), f.strategy.unwrap_or(strategy))
}

fn gamma_battery(
    d_range: impl IntoIterator<Item = usize>,
    samples: usize,
    limit_samples: usize,
    limit_d_max: usize,
    seed: u64,
) -> Vec<Check> {
    checks::gamma_checks(d_range, samples, limit_samples, limit_d_max, &mut battery_rng(seed, GAMMA))
}

fn suite_checks(d_range: &[usize], seed: u64, strategy: Strategy) -> Vec<Check> {
    let mut out = Vec::new();
    for &d in d_range {
        out.extend(checks::chart_checks(d));
    }
    out.extend(gamma_battery(d_range.iter().copied(), 20, 50, 4, seed));
    out.extend(checks::transition_checks(d_range.iter().copied()));
    out.extend(checks::ineq_checks(5, 5));
    out.extend(checks::chern_checks(10, 200, &mut battery_rng(seed, CHERN)));
    out.extend(checks::transform_checks(1..=5, 100, strategy, &mut battery_rng(seed, TRANSFORM)));
    out
}

/// The full battery over the given chart dimensions.
pub fn verify_suite(d_range: &[usize], seed: u64, strategy: Strategy) -> Result<Report, ScenarioError> {
    run_scenario(
        &Scenario::Suite(scenario::SuiteParams {
            d_range: d_range.to_vec(),
        }),
        seed,
        strategy,
    )
}

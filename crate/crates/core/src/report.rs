//! Algorithm dispatch and serializable reports for the command line.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::cm::{self, CmInstance};
use crate::error::{Error, Result};
use crate::graph::{evaluate_cost, Graph};
use crate::iqp::IqpOptions;
use crate::oracle::{brute_force_msvc, greedy_msvc, DEFAULT_BRUTE_FORCE_LIMIT};
use crate::solution::{SearchStats, Solution};
use crate::vc::{self, min_vertex_cover, VcInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Brute,
    Greedy,
    Vc,
    Cm,
    Auto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::Greedy => "greedy",
            Algorithm::Vc => "vc",
            Algorithm::Cm => "cm",
            Algorithm::Auto => "auto",
        }
    }

    /// Whether the algorithm is guaranteed to return an optimum.
    pub fn is_exact(self) -> bool {
        self != Algorithm::Greedy
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "brute" => Algorithm::Brute,
            "greedy" => Algorithm::Greedy,
            "vc" => Algorithm::Vc,
            "cm" => Algorithm::Cm,
            "auto" => Algorithm::Auto,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown algorithm {other:?} (expected brute, greedy, vc, cm or auto)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub max_k: usize,
    pub brute_cap: usize,
    /// Overrides the configuration budget (vc) and the per-program node budget (cm).
    pub budget: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_k: 8,
            brute_cap: DEFAULT_BRUTE_FORCE_LIMIT,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    /// Vertex cover or clique modulator size, for the parameterized solvers.
    pub k: Option<usize>,
    pub cost: u64,
    /// 1-based vertex labels by position.
    pub ordering: Vec<usize>,
    pub stats: SearchStats,
    pub elapsed_ms: f64,
}

fn run_exact(
    g: &Graph,
    algo: Algorithm,
    cfg: &RunConfig,
) -> Result<(Algorithm, Option<usize>, Solution)> {
    let vc_budget = cfg
        .budget
        .map_or(vc::DEFAULT_CONFIGURATION_BUDGET, u128::from);
    let iqp = cfg
        .budget
        .map_or_else(IqpOptions::default, |b| IqpOptions { node_budget: b });
    match algo {
        Algorithm::Brute => Ok((algo, None, brute_force_msvc(g, cfg.brute_cap)?)),
        Algorithm::Greedy => Ok((algo, None, greedy_msvc(g))),
        Algorithm::Vc => {
            let inst = VcInstance::with_minimum_cover(g, cfg.max_k)?;
            Ok((algo, Some(inst.k()), vc::solve_instance(&inst, vc_budget)?))
        }
        Algorithm::Cm => {
            let inst = CmInstance::with_minimum_modulator(g, cfg.max_k)?;
            Ok((algo, Some(inst.k()), cm::solve_instance(&inst, &iqp)?))
        }
        Algorithm::Auto => {
            if let Ok(cover) = min_vertex_cover(g, cfg.max_k) {
                let inst = VcInstance::new(g, &cover)?;
                return Ok((
                    Algorithm::Vc,
                    Some(inst.k()),
                    vc::solve_instance(&inst, vc_budget)?,
                ));
            }
            if let Ok(m) = cm::find_clique_modulator(g, cfg.max_k) {
                let inst = CmInstance::new(g, &m)?;
                return Ok((
                    Algorithm::Cm,
                    Some(inst.k()),
                    cm::solve_instance(&inst, &iqp)?,
                ));
            }
            if g.num_vertices() <= cfg.brute_cap {
                return Ok((Algorithm::Brute, None, brute_force_msvc(g, cfg.brute_cap)?));
            }
            Err(Error::ParameterExceeded {
                parameter: "vertex cover, clique modulator and brute-force size",
                k_max: cfg.max_k,
            })
        }
    }
}

/// Runs one algorithm and checks the reported cost against the ordering.
pub fn solve(g: &Graph, algo: Algorithm, cfg: &RunConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let (used, k, sol) = run_exact(g, algo, cfg)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let recomputed = evaluate_cost(g, &sol.ordering)?;
    if recomputed != sol.cost {
        return Err(Error::Internal(format!(
            "{used} reported cost {} but its ordering costs {recomputed}",
            sol.cost
        )));
    }
    Ok(SolveReport {
        algorithm: used.name().to_string(),
        k,
        cost: sol.cost,
        ordering: sol.ordering.sequence().iter().map(|&v| v + 1).collect(),
        stats: sol.stats,
        elapsed_ms,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    /// Common cost of the exact algorithms.
    pub optimum: Option<u64>,
    /// Greedy cost divided by the optimum (1.0 when both are 0).
    pub greedy_ratio: Option<f64>,
    pub runs: Vec<SolveReport>,
    pub failures: Vec<String>,
}

/// Runs every algorithm, requires the exact ones to agree and greedy to stay
/// within four times the optimum.
pub fn verify(g: &Graph, algos: &[Algorithm], cfg: &RunConfig) -> Result<VerifyReport> {
    if algos.len() < 2 {
        return Err(Error::InvalidInput(
            "verify needs at least two algorithms".into(),
        ));
    }
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    let mut optimum: Option<(u64, String)> = None;
    let mut greedy: Option<u64> = None;
    for &algo in algos {
        let report = solve(g, algo, cfg)?;
        if algo.is_exact() {
            match &optimum {
                None => optimum = Some((report.cost, report.algorithm.clone())),
                Some((cost, name)) if *cost != report.cost => failures.push(format!(
                    "{} found cost {} but {} found {}",
                    report.algorithm, report.cost, name, cost
                )),
                _ => {}
            }
        } else {
            greedy = Some(report.cost);
        }
        runs.push(report);
    }
    let opt = optimum.as_ref().map(|(c, _)| *c);
    let greedy_ratio = match (greedy, opt) {
        (Some(gc), Some(o)) => {
            if gc > 4 * o {
                failures.push(format!("greedy cost {gc} exceeds 4 x optimum {o}"));
            }
            if gc < o {
                failures.push(format!("greedy cost {gc} is below the optimum {o}"));
            }
            Some(if o == 0 { 1.0 } else { gc as f64 / o as f64 })
        }
        _ => None,
    };
    Ok(VerifyReport {
        pass: failures.is_empty(),
        optimum: opt,
        greedy_ratio,
        runs,
        failures,
    })
}

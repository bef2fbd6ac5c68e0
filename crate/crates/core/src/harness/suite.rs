use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algo::{
    map_by_name, run_grover, run_linear_sim, run_nonlinear_counterexample, run_period_finding, GroverOptions,
    HoppingHamiltonian, Payload, ScenarioResult,
};
use crate::codec::{load_fixture, synthetic_directory, DirectoryRecord, LookupMode};
use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qtm::{
    specify_api_call, specify_qtm_program, ApiCall, ApiRegistry, GroverApiMode, ParamValue, ProgramSpec, GROVER,
};

use super::config::{ScenarioConfig, ScenarioKind, SuiteConfig, Topology};
use super::report::{Report, ReportRow};

pub const WORKERS_ENV: &str = "QCI_WORKERS";

/// `QCI_WORKERS` if set and valid, else the config's worker count, else the
/// available parallelism.
pub fn worker_count(config: &SuiteConfig) -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .or(config.workers)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Debug, Clone)]
enum Job {
    Grover {
        n: usize,
        seed: u64,
        lookup: LookupMode,
        fixture: Option<Arc<Vec<DirectoryRecord>>>,
        query: Option<String>,
    },
    Period {
        a: u64,
        modulus: u64,
        seed: u64,
    },
    Linsim {
        n: usize,
        topology: Topology,
        hopping: f64,
        time: f64,
        seed: u64,
    },
    Nonlinear {
        n: usize,
        map: String,
        seed: u64,
    },
    QtmCost {
        m: usize,
        mode: GroverApiMode,
    },
}

fn row_seed(suite_seed: u64, seed: u64) -> u64 {
    seed.wrapping_add(suite_seed.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn expand(config: &SuiteConfig) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for sc in &config.scenarios {
        let seeds: Vec<u64> = sc.seeds.iter().map(|&s| row_seed(config.seed, s)).collect();
        match sc.kind {
            ScenarioKind::Grover => expand_grover(sc, &seeds, &mut jobs)?,
            ScenarioKind::Period => {
                for &(a, modulus) in &sc.cases {
                    jobs.extend(seeds.iter().map(|&seed| Job::Period { a, modulus, seed }));
                }
            }
            ScenarioKind::Linsim => {
                for &n in &sc.sizes {
                    jobs.extend(seeds.iter().map(|&seed| Job::Linsim {
                        n,
                        topology: sc.topology,
                        hopping: sc.hopping.unwrap_or(1.0),
                        time: sc.time.unwrap_or(std::f64::consts::FRAC_PI_2),
                        seed,
                    }));
                }
            }
            ScenarioKind::Nonlinear => {
                for &n in &sc.sizes {
                    for map in &sc.maps {
                        jobs.extend(seeds.iter().map(|&seed| Job::Nonlinear {
                            n,
                            map: map.clone(),
                            seed,
                        }));
                    }
                }
            }
            ScenarioKind::QtmCost => {
                for &m in &sc.sizes {
                    jobs.extend(seeds.iter().map(|_| Job::QtmCost {
                        m,
                        mode: sc.grover_mode,
                    }));
                }
            }
        }
    }
    Ok(jobs)
}

fn expand_grover(sc: &ScenarioConfig, seeds: &[u64], jobs: &mut Vec<Job>) -> Result<()> {
    if let Some(path) = &sc.fixture {
        let mut rows = load_fixture(path)?;
        rows.sort_by_key(|r| r.state_index);
        let n = rows.len().trailing_zeros() as usize;
        let rows = Arc::new(rows);
        jobs.extend(seeds.iter().map(|&seed| Job::Grover {
            n,
            seed,
            lookup: sc.lookup,
            fixture: Some(Arc::clone(&rows)),
            query: sc.query.clone(),
        }));
        return Ok(());
    }
    for &n in &sc.sizes {
        jobs.extend(seeds.iter().map(|&seed| Job::Grover {
            n,
            seed,
            lookup: sc.lookup,
            fixture: None,
            query: sc.query.clone(),
        }));
    }
    Ok(())
}

fn job_label(job: &Job) -> (&'static str, usize) {
    match job {
        Job::Grover { n, .. } => ("grover", *n),
        Job::Period { modulus, .. } => (
            "period",
            crate::algo::work_qubits(*modulus) + crate::algo::control_qubits(*modulus),
        ),
        Job::Linsim { n, .. } => ("linsim", *n),
        Job::Nonlinear { n, .. } => ("nonlinear", *n),
        Job::QtmCost { m, .. } => ("qtm-cost", *m),
    }
}

fn run_job(job: &Job) -> Result<ScenarioResult> {
    match job {
        Job::Grover {
            n,
            seed,
            lookup,
            fixture,
            query,
        } => {
            let records: Vec<(String, u64)> = match fixture {
                Some(rows) => rows.iter().map(|r| (r.phone_number.clone(), r.uid)).collect(),
                None => synthetic_directory(*n, *seed),
            };
            let query = match query {
                Some(q) => q.clone(),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed ^ 0x05EE_D0FD_1EC7);
                    records[rng.gen_range(0..records.len())].0.clone()
                }
            };
            let options = GroverOptions {
                lookup: *lookup,
                measure: None,
            };
            let mut r = run_grover(*n, records, &query, *seed, options)?;
            r.seed = *seed;
            Ok(r)
        }
        Job::Period { a, modulus, seed } => run_period_finding(*a, *modulus, *seed),
        Job::Linsim {
            n,
            topology,
            hopping,
            time,
            seed,
        } => {
            let h = match topology {
                Topology::Chain => HoppingHamiltonian::chain(*n, *hopping, *time)?,
                Topology::Ring => HoppingHamiltonian::ring(*n, *hopping, *time)?,
            };
            let labels: Vec<String> = (0..*n).map(|i| format!("site{i}")).collect();
            let mut r = run_linear_sim(&h, &initial_coefficients(*n, *seed), &labels)?;
            r.seed = *seed;
            Ok(r)
        }
        Job::Nonlinear { n, map, seed } => {
            let domain: Vec<String> = (0..*n).map(|i| format!("x{i}")).collect();
            let map = map_by_name(map, &domain)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let pick = rng.gen_range(0..=*n);
            let input = domain.get(pick).map_or("null", String::as_str);
            let mut r = run_nonlinear_counterexample(&domain, map.as_ref(), input)?;
            r.seed = *seed;
            Ok(r)
        }
        Job::QtmCost { m, mode } => run_qtm_cost(*m, *mode),
    }
}

/// Site 0 for seed 0, otherwise a seeded random normalized vector.
fn initial_coefficients(n: usize, seed: u64) -> Vec<Complex64> {
    if seed == 0 {
        return (0..n)
            .map(|i| Complex64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|c| c / norm).collect()
}

/// Program-register cost in `parameter_steps`, the equivalent named Grover
/// call in `baseline_steps`.
fn run_qtm_cost(m: usize, mode: GroverApiMode) -> Result<ScenarioResult> {
    let spec = ProgramSpec::identity(m as u32)?;
    let mut ledger = CostLedger::new();
    let program_cost = specify_qtm_program(&spec, &mut ledger);
    let registry = ApiRegistry::standard(mode);
    let arity = registry.arity(GROVER).expect("grover is registered");
    let call = ApiCall::new(GROVER, vec![ParamValue::Int(0); arity]);
    let mut api_ledger = CostLedger::new();
    let api_cost = specify_api_call(&registry, &call, &mut api_ledger)?;
    ledger.charge(Counter::BaselineSteps, api_cost);
    Ok(ScenarioResult {
        scenario: "qtm-cost".into(),
        n: m,
        big_n: 1 << m,
        seed: 0,
        ledger,
        correct: program_cost == 1 << m && api_cost == arity as u64 + 1,
        payload: Payload::QtmCost { program_cost, api_cost },
    })
}

pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    run_suite_with_workers(config, worker_count(config))
}

/// Run every `(kind, size, seed)` job. Scenario errors become failed rows;
/// only invalid configuration is an error here. Row order follows the config
/// regardless of the worker count.
pub fn run_suite_with_workers(config: &SuiteConfig, workers: usize) -> Result<Report> {
    config.validate()?;
    let jobs = expand(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let rows: Vec<ReportRow> = pool.install(|| {
        jobs.par_iter()
            .map(|job| match run_job(job) {
                Ok(r) => ReportRow::from_result(&r),
                Err(e) => {
                    let (kind, n) = job_label(job);
                    ReportRow::failed(kind, n, &e)
                }
            })
            .collect()
    });
    Ok(Report::from_rows(rows))
}

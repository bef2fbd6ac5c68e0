//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always print; exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qci_core::algo::{
    classical_probabilities, quantum_probabilities, run_linear_sim, run_nonlinear_counterexample, run_period_finding,
    shipped_maps, HoppingHamiltonian, Payload,
};
use qci_core::harness::{
    run_suite, verify_simulation, ScenarioConfig, ScenarioKind, SimulationFault, SuiteConfig, INTERFACE_STEPS,
};
use qci_core::qtm::{
    check_boundary_linearity, specify_api_call, specify_qtm_program, ApiCall, ApiRegistry, BoundarySpec, GroverApiMode,
    ParamValue, ProgramSpec, DEFAULT_LINEARITY_TRIALS,
};
use qci_core::{fit_growth, CostLedger, GrowthLabel, StateVector};

type Check = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Multiplicative order by repeated multiplication.
fn order_oracle(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut r = 1;
    while x != 1 {
        x = x * a % m;
        r += 1;
    }
    r
}

fn c1_period_case1_cost() -> Check {
    let mut points = Vec::new();
    for (a, m) in [(2u64, 3u64), (2, 5), (7, 15), (2, 21)] {
        for seed in 0..5 {
            let r = run_period_finding(a, m, seed).map_err(|e| format!("a={a} M={m}: {e}"))?;
            ensure(r.ledger.definition_steps() == 1, || {
                format!(
                    "a={a} M={m} seed={seed}: definition_steps={}",
                    r.ledger.definition_steps()
                )
            })?;
            ensure(r.ledger.parameter_steps() == 3, || {
                format!(
                    "a={a} M={m} seed={seed}: parameter_steps={}",
                    r.ledger.parameter_steps()
                )
            })?;
            if seed == 0 {
                points.push((r.big_n, r.ledger.definition_steps() as f64));
            }
        }
    }
    let fit = fit_growth(&points).map_err(|e| e.to_string())?;
    ensure(fit.label == GrowthLabel::Constant && fit.residual == 0.0, || {
        format!("fit {fit:?}")
    })?;
    Ok(format!("20 rows, fit constant residual {}", fit.residual))
}

fn c2_linsim_case2_cost() -> Check {
    let mut points = Vec::new();
    for n in [2usize, 4, 6, 8] {
        let h = HoppingHamiltonian::chain(n, 1.0, FRAC_PI_2).unwrap();
        let mut init = vec![Complex64::new(0.0, 0.0); n];
        init[0] = Complex64::new(1.0, 0.0);
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let r = run_linear_sim(&h, &init, &labels).map_err(|e| format!("n={n}: {e}"))?;
        let steps = r.ledger.interface_steps();
        ensure(steps == 2 * n as u64, || format!("n={n}: interface steps {steps}"))?;
        points.push((r.big_n, steps as f64));
    }
    let fit = fit_growth(&points).map_err(|e| e.to_string())?;
    ensure(fit.label == GrowthLabel::LogN && fit.residual == 0.0, || {
        format!("fit {fit:?}")
    })?;
    Ok(format!("n in {{2,4,6,8}}, fit log_N residual {}", fit.residual))
}

const GROVER_SEEDS: u64 = 500;

fn grover_suite() -> qci_core::harness::Report {
    let config = SuiteConfig {
        seed: 0,
        workers: None,
        scenarios: vec![ScenarioConfig::new(ScenarioKind::Grover)
            .sizes(2..=10)
            .seeds(0..GROVER_SEEDS)],
    };
    run_suite(&config).expect("grover sweep runs")
}

fn c3_grover_case3_cost(report: &qci_core::harness::Report) -> Check {
    ensure(report.rows.iter().all(|r| r.error.is_none() && r.correct), || {
        "failed grover row".into()
    })?;
    let mut worst: f64 = 0.0;
    for n in 2..=10usize {
        let big_n = 1u64 << n;
        let rows: Vec<_> = report.rows.iter().filter(|r| r.n == n).collect();
        ensure(rows.len() as u64 == GROVER_SEEDS, || {
            format!("n={n}: {} rows", rows.len())
        })?;
        if let Some(r) = rows.iter().find(|r| r.definition_steps != big_n) {
            return Err(format!("n={n}: definition_steps {} ≠ N", r.definition_steps));
        }
        let mean = rows
            .iter()
            .map(|r| (r.parameter_steps + r.interpretation_steps) as f64)
            .sum::<f64>()
            / rows.len() as f64;
        let rel = (mean - (big_n + 1) as f64).abs() / (big_n + 1) as f64;
        worst = worst.max(rel);
        ensure(rel <= 0.10, || {
            format!("n={n}: mean scan steps {mean:.2} vs N+1={}", big_n + 1)
        })?;
    }
    let g = report.growth_for("grover", INTERFACE_STEPS).ok_or("no growth entry")?;
    let class = g.class.as_ref().ok_or_else(|| format!("no fit: {:?}", g.note))?;
    ensure(class.label == GrowthLabel::LinearN, || format!("fit {class:?}"))?;
    Ok(format!(
        "{GROVER_SEEDS} seeds per n, worst relative deviation {worst:.4}, interface fit linear_N"
    ))
}

fn c4_headline_inequality(report: &qci_core::harness::Report) -> Check {
    let bad = report
        .rows
        .iter()
        .filter(|r| r.interface_steps() < r.baseline_steps)
        .count();
    ensure(bad == 0 && !report.rows.is_empty(), || {
        format!("{bad} rows below baseline")
    })?;
    Ok(format!("{} of {} rows", report.rows.len(), report.rows.len()))
}

fn c5_nonlinear_equivalence() -> Check {
    let mut runs = 0;
    for n in [1usize, 2, 4, 8, 12] {
        let domain: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let inputs = domain.iter().cloned().chain(std::iter::once("null".to_owned()));
        for input in inputs {
            for map in shipped_maps(&domain) {
                let r = run_nonlinear_counterexample(&domain, map.as_ref(), &input)
                    .map_err(|e| format!("{} n={n}: {e}", map.name()))?;
                let Payload::Nonlinear { decode_steps, .. } = r.payload else {
                    unreachable!()
                };
                let (_, standalone) = map.run_standalone(&input);
                let lhs = r.ledger.interpretation_steps() - decode_steps;
                ensure(decode_steps == n as u64 && lhs == standalone && r.correct, || {
                    format!("{} n={n} input={input}: {lhs} vs {standalone}", map.name())
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} map/input pairs exact"))
}

fn c6_grover_closed_form() -> Check {
    let mut worst: f64 = 0.0;
    for n in 2..=10usize {
        let big_n = 1usize << n;
        let k_max = (PI / 4.0 * (big_n as f64).sqrt()).floor() as usize;
        let theta = (1.0 / (big_n as f64).sqrt()).asin();
        for marked in 0..big_n {
            let mut s = StateVector::uniform(n).unwrap();
            for k in 0..=k_max {
                if k > 0 {
                    s.grover_iteration(marked).unwrap();
                }
                let expected = ((2 * k + 1) as f64 * theta).sin().powi(2);
                let err = (s.probability(marked) - expected).abs();
                worst = worst.max(err);
                ensure(err <= 1e-9, || format!("n={n} marked={marked} k={k}: error {err:.3e}"))?;
            }
        }
    }
    Ok(format!("max error {worst:.2e}"))
}

fn c7_simulation_commutes() -> Check {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 4, 8] {
        let mut site0 = vec![Complex64::new(0.0, 0.0); n];
        site0[0] = Complex64::new(1.0, 0.0);
        let mut mixed: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = mixed.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        mixed.iter_mut().for_each(|c| *c /= norm);
        for t in [0.0, 0.5, FRAC_PI_2, 3.0] {
            for h in [
                HoppingHamiltonian::chain(n, 1.0, t).unwrap(),
                HoppingHamiltonian::ring(n, 1.0, t).unwrap(),
            ] {
                for init in [&site0, &mixed] {
                    let v = verify_simulation(&h, init, SimulationFault::None);
                    let q = quantum_probabilities(&h, init).unwrap();
                    let c = classical_probabilities(&h, init).unwrap();
                    let d = q.iter().zip(&c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    worst = worst.max(d);
                    ensure(v.commutes && d <= 1e-6, || format!("{}: {}", v.name, v.detail))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances, max discrepancy {worst:.2e}"))
}

fn c8_qtm_identities() -> Check {
    for m in 0..=10u32 {
        let cost = specify_qtm_program(&ProgramSpec::identity(m).unwrap(), &mut CostLedger::new());
        ensure(cost == 1 << m, || format!("m={m}: cost {cost}"))?;
    }
    let mut calls = 0;
    for mode in [GroverApiMode::Query, GroverApiMode::IonTrap] {
        let registry = ApiRegistry::standard(mode);
        for (name, arity) in registry.iter() {
            let call = ApiCall::new(name, (0..arity).map(|i| ParamValue::Int(i as i64)).collect());
            let mut ledger = CostLedger::new();
            let cost = specify_api_call(&registry, &call, &mut ledger).map_err(|e| e.to_string())?;
            ensure(cost == arity as u64 + 1 && ledger.parameter_steps() == cost, || {
                format!("{name}: cost {cost}, arity {arity}")
            })?;
            calls += 1;
        }
    }
    let values: Vec<Complex64> = (0..4).map(|i| Complex64::new(i as f64 + 0.5, -0.25)).collect();
    let linear = BoundarySpec::linear(values.clone()).unwrap();
    let squaring = BoundarySpec::coefficient_squaring(values).unwrap();
    for seed in 0..8 {
        let a = check_boundary_linearity(&linear, DEFAULT_LINEARITY_TRIALS, seed);
        let b = check_boundary_linearity(&squaring, DEFAULT_LINEARITY_TRIALS, seed);
        ensure(a.linear && !b.linear, || format!("seed {seed}: {a:?} / {b:?}"))?;
        ensure(
            a == check_boundary_linearity(&linear, DEFAULT_LINEARITY_TRIALS, seed)
                && b == check_boundary_linearity(&squaring, DEFAULT_LINEARITY_TRIALS, seed),
            || format!("seed {seed}: verdict not reproducible"),
        )?;
    }
    Ok(format!(
        "m in 0..=10, {calls} API calls, linearity verdicts stable over 8 seeds"
    ))
}

fn c9_period_correctness() -> Check {
    let expected = order_oracle(7, 15);
    ensure(expected == 4, || format!("oracle gave {expected}"))?;
    let mut hits = 0;
    for seed in 0..100 {
        let r = run_period_finding(7, 15, seed).map_err(|e| e.to_string())?;
        let Payload::Period { order, attempts, .. } = r.payload else {
            unreachable!()
        };
        if order == Some(expected) && attempts <= 10 {
            hits += 1;
        }
    }
    ensure(hits >= 99, || format!("{hits}/100 runs recovered r=4"))?;
    Ok(format!("{hits}/100 runs recovered r={expected}"))
}

fn c10_determinism() -> Check {
    let config = SuiteConfig::default_suite();
    let a = run_suite(&config).map_err(|e| e.to_string())?.to_csv();
    let b = run_suite(&config).map_err(|e| e.to_string())?.to_csv();
    ensure(a == b, || "CSV differs between runs".into())?;
    Ok(format!("{} rows, {} bytes identical", a.lines().count() - 1, a.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let grover = grover_suite();
    let criteria: Vec<Criterion> = vec![
        ("1 case-1 cost", Box::new(c1_period_case1_cost)),
        ("2 case-2 cost", Box::new(c2_linsim_case2_cost)),
        ("3 case-3 cost", Box::new(|| c3_grover_case3_cost(&grover))),
        ("4 headline inequality", Box::new(|| c4_headline_inequality(&grover))),
        ("5 nonlinear equivalence", Box::new(c5_nonlinear_equivalence)),
        ("6 grover closed form", Box::new(c6_grover_closed_form)),
        ("7 linear-sim commutativity", Box::new(c7_simulation_commutes)),
        ("8 qtm cost identities", Box::new(c8_qtm_identities)),
        ("9 period finding (7, 15)", Box::new(c9_period_correctness)),
        ("10 default suite determinism", Box::new(c10_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "{} of {} criteria passed in {elapsed:.1}s",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

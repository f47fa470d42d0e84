//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spacer_cli::commands::estimate_report;
use spacer_cli::{Cli, Command};
use spacer_core::analysis::{
    critical_register_size, fit_linear, fit_power_law, measure_effective_coupling,
};
use spacer_core::encoder::{compile_circuit, compile_two_qubit};
use spacer_core::interaction::coulomb_nonadditive;
use spacer_core::simulator::{
    embed_logical, final_data_sites, restrict_to_sites, run, run_compressed,
};
use spacer_core::sweep::{random_circuit, run_point, run_sweep, SweepConfig};
use spacer_core::{
    CouplingLaw, EncodingParams, ErrorModel, LogicalCircuit, LogicalGate, Mat4, StateVector,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Random instances: `L ≤ 3`, `m ≤ 3`, at most 10 gates.
fn instances(count: usize, seed: u64) -> Vec<(LogicalCircuit<f64>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let l = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let gates = rng.gen_range(0..=10);
            (random_circuit(l, gates, &mut rng).unwrap(), m)
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for (logical, m) in instances(50, 1) {
        let l = logical.qubits();
        let params = EncodingParams::new(m).unwrap();
        let (physical, _) = compile_circuit(&logical, &params).unwrap();
        for delta in [0.0, 0.01, 0.1] {
            let model = ErrorModel::new(CouplingLaw::dipole(delta).unwrap(), physical.sites())
                .unwrap()
                .with_active_pair_compensation(rng.gen_bool(0.5));
            let initial = StateVector::plus(l).unwrap();
            let compressed = run_compressed(&physical, &model, &params, &initial).unwrap();
            let full = run(&physical, &model, &embed_logical(&initial, physical.encoding().unwrap()).unwrap()).unwrap();
            let data = restrict_to_sites(&full.final_state, &final_data_sites(&physical).unwrap()).unwrap();
            worst = worst.max(compressed.distance_up_to_phase(&data).unwrap());
            runs += 1;
        }
    }
    outcome(worst <= 1e-10, format!("{runs} runs, max distance {worst:.2e} (tolerance 1e-10)"))
}

fn semantics_preservation() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut dirty = 0;
    let mut checks = 0;
    for (logical, m) in instances(50, 2) {
        let l = logical.qubits();
        let (physical, _) = compile_circuit(&logical, &EncodingParams::new(m).unwrap()).unwrap();
        let off = CouplingLaw::dipole(0.0).unwrap();
        let ideal = run(&logical.to_physical(), &ErrorModel::new(off, l).unwrap(), &StateVector::plus(l).unwrap()).unwrap();
        let init = embed_logical(&StateVector::plus(l).unwrap(), physical.encoding().unwrap()).unwrap();
        let got = run(&physical, &ErrorModel::new(off, physical.sites()).unwrap(), &init).unwrap();
        let verdicts = got.spacer_check.clone().unwrap_or_default();
        checks += verdicts.len();
        dirty += verdicts.iter().filter(|ok| !**ok).count();
        let data = restrict_to_sites(&got.final_state, &final_data_sites(&physical).unwrap()).unwrap();
        worst = worst.max(data.distance_up_to_phase(&ideal.final_state).unwrap());
    }
    outcome(
        worst <= 1e-12 && dirty == 0,
        format!("max distance {worst:.2e} (tolerance 1e-12), {dirty} of {checks} spacer checks failed"),
    )
}

fn resource_exactness() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 1..=16usize {
        let params = EncodingParams::new(m).unwrap();
        if compile_two_qubit::<f64>(1, 2, &Mat4::cz(), m).unwrap().len() != 2 * m - 1 {
            failures.push(format!("m={m}: gate count"));
        }
        for l in 2..=5usize {
            let mixed = random_circuit::<f64, _>(l, 12, &mut rng).unwrap();
            let (_, r) = compile_circuit(&mixed, &params).unwrap();
            if r.physical_qubits != m * l || r.physical_steps > (2 * m - 1) * r.logical_steps {
                failures.push(format!("m={m} L={l}: mixed circuit"));
            }
            let has_other = mixed.step_count() != mixed.gates().iter().filter(|g| matches!(g, LogicalGate::TwoQubitNeighbor { .. })).count();
            if m > 1 && has_other && r.physical_steps == r.physical_steps_bound {
                failures.push(format!("m={m} L={l}: bound attained with one-qubit gates"));
            }
            let two_only = LogicalCircuit::<f64>::new(
                l,
                (0..7).map(|i| LogicalGate::TwoQubitNeighbor { first: 1 + i % (l - 1), matrix: Mat4::cnot() }).collect(),
            )
            .unwrap();
            let (_, r) = compile_circuit(&two_only, &params).unwrap();
            if r.physical_steps != (2 * m - 1) * r.logical_steps {
                failures.push(format!("m={m} L={l}: two-qubit-only equality"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() { "m = 1..16, L = 2..5 exact".into() } else { failures.join("; ") },
    )
}

fn coupling_law() -> Outcome {
    let mut worst: f64 = 0.0;
    for delta in [0.01, 0.1, 0.3] {
        for m in 1..=6usize {
            let law = CouplingLaw::dipole(delta).unwrap();
            let measured = measure_effective_coupling(&law, m).unwrap();
            let expected = delta / (m * m * m) as f64;
            worst = worst.max((measured - expected).abs() / expected);
        }
    }
    outcome(worst <= 1e-12, format!("max relative deviation from delta/m^3: {worst:.2e}"))
}

/// Smallest `δ` at which `σ_est(m = 1)` reaches `target`, by bisection.
fn delta_for_sigma(qubits: usize, steps: usize, target: f64) -> f64 {
    let cfg = SweepConfig::sandwich(1, qubits, steps, 0.0);
    let sigma = |d: f64| run_point(&cfg, 1, qubits, steps, d).unwrap().sigma_est;
    let (mut lo, mut hi) = (0.0, 0.1);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if sigma(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn spacer_scaling() -> Outcome {
    let (l, p) = (3, 40);
    let delta = delta_for_sigma(l, p, 0.2);
    let mut cfg = SweepConfig::sandwich(1, l, p, delta);
    cfg.ms = (1..=6).collect();
    let curve = run_sweep(&cfg).unwrap();
    let pts: Vec<(f64, f64)> = curve.rows.iter().map(|r| (r.m as f64, r.sigma_est)).collect();
    let fit = fit_power_law(&pts).unwrap();
    let sigma1 = pts[0].1;
    let bound_holds = pts.iter().all(|&(m, s)| s <= sigma1 * m.powf(-1.5) * (1.0 + 1e-12));
    let sigmas: Vec<String> = pts.iter().map(|(_, s)| format!("{s:.4e}")).collect();
    outcome(
        (fit.exponent + 1.5).abs() <= 0.15,
        format!(
            "delta = {delta:.6e}, sigma_est = [{}], exponent {:.4} (target -1.5 +/- 0.15); sigma(m) <= sigma(1) m^-1.5 holds: {bound_holds}",
            sigmas.join(", "),
            fit.exponent
        ),
    )
}

fn quality_form() -> Outcome {
    let (l, p) = (2usize, 10usize);
    let deltas: Vec<f64> = (0..12).map(|i| 1e-3 * 50f64.powf(i as f64 / 11.0)).collect();
    let cfg = SweepConfig::sandwich(1, l, p, 0.0);
    let mut worst: f64 = 0.0;
    let mut pts = Vec::new();
    for &d in &deltas {
        let q = run_point(&cfg, 1, l, p, d).unwrap().q;
        worst = worst.max((q - (p as f64 * d / 2.0).cos().powi(2)).abs());
        pts.push((d * d, q.ln()));
    }
    let line = fit_linear(&pts).unwrap();
    outcome(
        line.r_squared > 0.99 && worst <= 1e-9,
        format!("R^2 = {:.8} (> 0.99), max |Q - cos^2(P delta/2)| = {worst:.2e} (tolerance 1e-9)", line.r_squared),
    )
}

fn dispersion_proportionality() -> Outcome {
    let (l, delta) = (3usize, 0.0015);
    let cfg = SweepConfig::sandwich(1, l, 10, delta);
    let sigma = |p: usize, d: f64| run_point(&cfg, 1, l, p, d).unwrap().sigma_est;
    let pts: Vec<(f64, f64)> = (1..=8).map(|k| (10.0 * k as f64, sigma(10 * k, delta))).collect();
    let max_sigma = pts.iter().map(|p| p.1).fold(0.0, f64::max);
    let fit = fit_power_law(&pts).unwrap();
    let ratio = sigma(40, 2.0 * delta) / sigma(40, delta);
    outcome(
        (fit.exponent - 1.0).abs() <= 0.05 && (ratio / 2.0 - 1.0).abs() <= 0.01 && max_sigma < 0.3,
        format!(
            "P exponent {:.5} (1 +/- 0.05), sigma(2 delta)/sigma(delta) = {ratio:.6} (2 within 1%), max sigma {max_sigma:.3}"
            , fit.exponent
        ),
    )
}

fn dual_rail() -> Outcome {
    let pts: Vec<(f64, f64)> = (0..=18)
        .map(|i| {
            let d = 10.0 + 5.0 * i as f64;
            (d, coulomb_nonadditive(d, 1.0, 1.0).unwrap().abs())
        })
        .collect();
    let fit = fit_power_law(&pts).unwrap();
    let at10: f64 = coulomb_nonadditive(10.0, 1.0, 1.0).unwrap();
    let dev = (at10 + 2.0 / 990.0).abs();
    outcome(
        (fit.exponent + 3.0).abs() <= 0.05 && dev <= 1e-12,
        format!("exponent {:.5} (-3 +/- 0.05), |E(10) + 2/990| = {dev:.1e}", fit.exponent),
    )
}

fn headline_numbers() -> Outcome {
    let cli = Cli::try_parse_from(["spacer", "estimate", "--qubits", "1e4", "--steps", "5e6", "--delta", "0.01"])
        .expect("estimate arguments parse");
    let Command::Estimate(args) = cli.command else {
        unreachable!("parsed an estimate command")
    };
    let report = estimate_report(&args);
    let text = report.as_deref().unwrap_or("");
    let value = |key: &str| -> Option<f64> {
        text.lines().find_map(|l| l.strip_prefix(key)?.trim().parse().ok())
    };
    let psl = value("P*sqrt(L) =");
    let crit = value("critical L =");
    let exact = [0.01, 0.003, 0.25, 1e-4, 0.7]
        .iter()
        .all(|&d| critical_register_size(d).unwrap() == 1.0 / (d * d));
    outcome(
        report.is_ok() && psl == Some(5e8) && crit == Some(1.0 / (0.01 * 0.01)) && exact,
        format!("P*sqrt(L) = {psl:?}, critical L at delta 0.01 = {crit:?}, 1/delta^2 exact: {exact}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 semantics preservation", semantics_preservation),
        ("3 resource exactness", resource_exactness),
        ("4 coupling law", coupling_law),
        ("5 spacer scaling of sigma", spacer_scaling),
        ("6 quality functional form", quality_form),
        ("7 dispersion proportionality", dispersion_proportionality),
        ("8 dual-rail reduction", dual_rail),
        ("9 headline numbers", headline_numbers),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} [{name}] {} ({:.2}s)", o.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!o.pass);
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

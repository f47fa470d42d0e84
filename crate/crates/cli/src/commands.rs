use std::io::Write;
use std::path::Path;

use serde_json::json;
use spacer_core::analysis::{fit_power_law, resource_table, sigma_from_quality};
use spacer_core::encoder::compile_circuit;
use spacer_core::format::{parse_document, write_document, CircuitDoc};
use spacer_core::interaction::coulomb_nonadditive;
use spacer_core::simulator::{
    embed_logical, final_data_sites, quality, restrict_to_sites, run, run_compressed, SolutionSet,
};
use spacer_core::sweep::{report, run_sweep, to_csv, Axis, Benchmark, Engine, SweepConfig};
use spacer_core::{
    BasisState, CouplingLaw, EncodingParams, ErrorModel, ErrorSchedule, PhysicalCircuit,
    StateVector, MAX_QUBITS,
};

use crate::args::{
    BenchmarkArg, CompileArgs, DualrailArgs, EngineArg, ErrorsArg, EstimateArgs, Format, RunArgs,
    SpacerPhases, SweepArgs, SweepEngine,
};
use crate::error::{read, write, CliError, Result};

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

pub fn compile(a: &CompileArgs) -> Result<()> {
    let doc = parse_document(&read(&a.input)?)?;
    if doc.encoding.is_some() {
        return Err(CliError::Usage(format!(
            "{}: circuit is already encoded",
            a.input.display()
        )));
    }
    let logical = doc.to_logical::<f64>()?;
    let (physical, r) = compile_circuit(&logical, &EncodingParams::new(a.m)?)?;
    emit(a.output.as_deref(), &write_document(&CircuitDoc::from_physical(&physical)))?;
    let lines = [
        format!("L' = {} (L = {}, m = {})", r.physical_qubits, r.logical_qubits, r.m),
        format!(
            "P' = {} (P = {}, bound (2m-1)P = {})",
            r.physical_steps, r.logical_steps, r.physical_steps_bound
        ),
        format!("delta'/delta <= {:e}", r.coupling_ratio_bound),
    ];
    for line in lines {
        if a.output.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(())
}

/// Solutions as logical bitstrings. Register-length entries with a 1 on a
/// spacer site can never be observed and are dropped.
/// `data_sites` are 0-based.
fn load_solutions(
    path: &Path,
    logical_qubits: usize,
    sites: usize,
    data_sites: &[usize],
) -> Result<Vec<BasisState>> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| CliError::Solutions {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let bits: BasisState = line.parse().map_err(|e: spacer_core::Error| bad(e.to_string()))?;
        if bits.len() == logical_qubits {
            out.push(bits);
        } else if bits.len() == sites {
            let spacer_set = (0..sites)
                .filter(|s| !data_sites.contains(s))
                .any(|s| bits.bits()[s]);
            if !spacer_set {
                out.push(BasisState::new(data_sites.iter().map(|&s| bits.bits()[s]).collect()));
            }
        } else {
            return Err(bad(format!(
                "bitstring of length {} matches neither {logical_qubits} logical qubits nor {sites} sites",
                bits.len()
            )));
        }
    }
    Ok(out)
}

fn load_physical(a: &RunArgs) -> Result<(PhysicalCircuit<f64>, EncodingParams)> {
    let doc = parse_document(&read(&a.input)?)?;
    if let Some(enc) = doc.encoding {
        return Ok((doc.to_physical()?, EncodingParams::new(enc.m)?));
    }
    let logical = doc.to_logical::<f64>()?;
    let params = EncodingParams::new(a.m)?;
    Ok((compile_circuit(&logical, &params)?.0, params))
}

pub fn run_cmd(a: &RunArgs) -> Result<()> {
    let (physical, params) = load_physical(a)?;
    let encoding = *physical.encoding().expect("encoded circuit");
    let l = encoding.logical_qubits;
    let sites = physical.sites();

    let initial = match &a.initial {
        Some(s) => {
            let bits: BasisState = s.parse()?;
            if bits.len() != l {
                return Err(CliError::Usage(format!(
                    "initial state has {} bits, circuit has {l} logical qubits",
                    bits.len()
                )));
            }
            StateVector::basis(&bits)?
        }
        None => StateVector::zero(l)?,
    };

    let law = CouplingLaw::new(a.error.delta1, a.error.exponent)?;
    let model = ErrorModel::new(law, sites)?
        .with_schedule(match a.errors {
            ErrorsArg::Every => ErrorSchedule::EveryStep,
            ErrorsArg::Idle => ErrorSchedule::IdleOnly,
        })
        .with_active_pair_compensation(a.error.compensate)
        .with_spacer_compensation(a.spacer_phases == SpacerPhases::Compensate);

    let full = match a.engine {
        EngineArg::Auto => sites <= MAX_QUBITS,
        EngineArg::Full => true,
        EngineArg::Compressed => false,
    };
    let data_sites = final_data_sites(&physical)?;
    let (data, spacers) = if full {
        let result = run(&physical, &model, &embed_logical(&initial, &encoding)?)?;
        let verdict = match (&result.spacer_check, encoding.m) {
            (_, 1) => "none (m = 1)".to_string(),
            (Some(v), _) if v.iter().all(|&ok| ok) => {
                format!("clean at every step ({} checks)", v.len())
            }
            (Some(v), _) => format!(
                "LEAKED at {} of {} steps (max probability {:e})",
                v.iter().filter(|ok| !**ok).count(),
                v.len(),
                result.max_spacer_leak.unwrap_or(f64::NAN)
            ),
            (None, _) => "not checked".to_string(),
        };
        (restrict_to_sites(&result.final_state, &data_sites)?, verdict)
    } else {
        let verdict = if encoding.m == 1 {
            "none (m = 1)".to_string()
        } else {
            "held in |0> by the compressed engine".to_string()
        };
        (run_compressed(&physical, &model, &params, &initial)?, verdict)
    };

    let solutions = load_solutions(&a.solutions, l, sites, &data_sites)?;
    let q = if solutions.is_empty() {
        0.0
    } else {
        quality(&data, &SolutionSet::new(solutions)?)?
    };
    let sigma = if q > 0.0 { sigma_from_quality(q)? } else { f64::INFINITY };

    println!(
        "circuit: L = {l}, m = {}, sites = {sites}, steps = {}",
        encoding.m,
        physical.step_count()
    );
    println!("engine: {}", if full { "full" } else { "compressed" });
    println!("Q = {q:.6}");
    println!("sigma_est = {sigma:e}");
    println!("spacers: {spacers}");

    if let Some(path) = &a.output {
        let amps: Vec<[f64; 2]> = data.amplitudes().iter().map(|c| [c.re, c.im]).collect();
        let doc = json!({ "qubits": l, "amplitudes": amps });
        write(path, &(serde_json::to_string_pretty(&doc).expect("json") + "\n"))?;
    }
    Ok(())
}

fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::M => "m",
        Axis::Qubits => "L",
        Axis::Steps => "P",
        Axis::Delta => "delta",
    }
}

pub fn sweep(a: &SweepArgs) -> Result<()> {
    let config = SweepConfig {
        ms: a.m.0.clone(),
        qubits: a.qubits.0.clone(),
        steps: a.steps.0.clone(),
        deltas: a.deltas.0.clone(),
        exponent: a.exponent,
        benchmark: match a.benchmark {
            BenchmarkArg::Sandwich => Benchmark::Sandwich,
            BenchmarkArg::Echo => Benchmark::Echo { gates: a.gates },
        },
        seed: a.seed,
        engine: match a.engine {
            SweepEngine::Full => Engine::Full,
            SweepEngine::Compressed => Engine::Compressed,
        },
        compensate_active_pair: a.compensate,
        compensate_spacer_phases: a.spacer_phases == SpacerPhases::Compensate,
    };
    let curve = run_sweep(&config)?;
    let rep = report(&config, &curve);
    match a.format {
        Format::Json => {
            let doc = json!({ "config": config, "report": rep });
            emit(a.output.as_deref(), &(serde_json::to_string_pretty(&doc).expect("json") + "\n"))
        }
        Format::Csv => {
            emit(a.output.as_deref(), &to_csv(&curve))?;
            let mut lines = Vec::new();
            for f in &rep.fits {
                lines.push(format!(
                    "fit: sigma_est ~ {:e} * {}^{:.6} ({} points, rms residual {:e})",
                    f.fit.prefactor,
                    axis_name(f.axis),
                    f.fit.exponent,
                    f.points,
                    f.fit.residual
                ));
            }
            if let Some(lf) = &rep.quality_form {
                lines.push(format!(
                    "fit: ln Q = {:e} + {:e} * delta^2 (R^2 = {:.6})",
                    lf.intercept, lf.slope, lf.r_squared
                ));
            }
            for line in lines {
                if a.output.is_some() {
                    println!("{line}");
                } else {
                    eprintln!("{line}");
                }
            }
            Ok(())
        }
    }
}

pub fn estimate(a: &EstimateArgs) -> Result<()> {
    print!("{}", estimate_report(a)?);
    Ok(())
}

/// Text printed by `estimate`.
pub fn estimate_report(a: &EstimateArgs) -> Result<String> {
    if a.c.is_nan() || a.c <= 0.0 || a.c.is_infinite() {
        return Err(CliError::Usage(format!("C must be positive, got {}", a.c)));
    }
    let e = resource_table(a.qubits, a.steps, a.delta, a.m)?;
    let sigma = a.c * e.sigma;
    let sigma_prime = a.c * e.sigma_prime_bound;
    if a.format == Some(Format::Json) {
        let doc = json!({ "c": a.c, "estimate": e, "sigma": sigma, "sigma_prime_bound": sigma_prime });
        return Ok(serde_json::to_string_pretty(&doc).expect("json") + "\n");
    }
    let critical = match e.critical_register_size {
        Some(n) => n.to_string(),
        None => "unbounded (delta = 0)".to_string(),
    };
    Ok([
        format!("L = {}", e.logical_qubits),
        format!("P = {}", e.logical_steps),
        format!("m = {}", e.m),
        format!("P*sqrt(L) = {}", e.steps_sqrt_qubits),
        format!("L' = {}", e.physical_qubits),
        format!("P' <= {}", e.physical_steps_bound),
        format!("delta' <= {}", e.delta_prime_bound),
        format!("sigma = {sigma}"),
        format!("sigma' <= {sigma_prime}"),
        format!("sigma'/sigma <= {}", e.sigma_ratio_bound),
        format!("critical L = {critical}"),
    ]
    .iter()
    .map(|l| l.clone() + "\n")
    .collect())
}

pub fn dualrail(a: &DualrailArgs) -> Result<()> {
    if a.points < 3 {
        return Err(CliError::Usage("at least 3 points are needed for a fit".into()));
    }
    if a.d_max.is_nan() || a.d_min.is_nan() || a.d_max <= a.d_min {
        return Err(CliError::Usage(format!(
            "need d-max > d-min, got {} and {}",
            a.d_min, a.d_max
        )));
    }
    let step = (a.d_max - a.d_min) / (a.points - 1) as f64;
    let rows = (0..a.points)
        .map(|i| {
            let d = if i + 1 == a.points { a.d_max } else { a.d_min + step * i as f64 };
            // `+ 0.0` folds the −0 of g = 0 into 0.
            Ok((d, coulomb_nonadditive(d, a.r, a.g)? + 0.0))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;

    let fit = if a.g == 0.0 {
        Err(CliError::Usage(
            "g = 0: every nonadditive energy vanishes, so there is no power law to fit".into(),
        ))
    } else {
        let pts: Vec<(f64, f64)> = rows.iter().map(|&(d, v)| (d, v.abs())).collect();
        fit_power_law(&pts).map_err(CliError::from)
    };

    match a.format {
        Some(Format::Json) => {
            let values: Vec<_> = rows.iter().map(|(d, v)| json!({ "D": d, "value": v })).collect();
            let doc = match &fit {
                Ok(f) => json!({ "r": a.r, "g": a.g, "rows": values, "fit": f }),
                Err(_) => json!({ "r": a.r, "g": a.g, "rows": values, "fit": null }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Some(Format::Csv) => {
            println!("D,value");
            for (d, v) in &rows {
                println!("{d},{v:.11e}");
            }
        }
        None => {
            for (d, v) in &rows {
                println!("D = {d}: {v:e}");
            }
        }
    }
    let f = fit?;
    let report = format!(
        "exponent = {:.6} (dipole law -3, difference {:.2e}), prefactor = {:e}",
        f.exponent,
        (f.exponent + 3.0).abs(),
        f.prefactor
    );
    if a.format == Some(Format::Csv) {
        eprintln!("{report}");
    } else if a.format.is_none() {
        println!("{report}");
    }
    Ok(())
}

//! Deterministic parameter sweeps over `(m, L, P, δ)` and their reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    fit_linear, fit_power_law, sigma_from_quality, LinearFit, QualityCurve, QualityRow,
    ScalingFit,
};
use crate::basis::{BasisState, MAX_QUBITS};
use crate::circuit::{LogicalCircuit, LogicalGate};
use crate::encoder::{compile_circuit, EncodingParams};
use crate::error::{Error, Result};
use crate::gates::{Mat2, Mat4};
use crate::interaction::CouplingLaw;
use crate::scalar::Scalar;
use crate::simulator::{
    embed_logical, final_data_sites, quality, restrict_to_sites, run, run_compressed, ErrorModel,
    ErrorSchedule, SolutionSet,
};
use crate::state::StateVector;

/// Rows with `Q` above `1 − QUALITY_FIT_CEILING` carry no usable σ and are
/// left out of fits.
pub const QUALITY_FIT_CEILING: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Benchmark {
    /// `H` on every qubit, `P` idle steps, `H` on every qubit; ideal outcome
    /// `|0…0⟩`. The Hadamard layers are treated as ideal preparation and
    /// readout, so only the idle steps accumulate error.
    Sandwich,
    /// A seeded random circuit of `gates` gates, `P` idle steps, then its
    /// inverse; ideal outcome `|0…0⟩`. Every step accumulates error.
    Echo { gates: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Data-qubit amplitudes only.
    #[default]
    Compressed,
    /// Every physical site.
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig<T> {
    pub ms: Vec<usize>,
    pub qubits: Vec<usize>,
    pub steps: Vec<usize>,
    pub deltas: Vec<T>,
    /// Decay power of the coupling law.
    pub exponent: u32,
    pub benchmark: Benchmark,
    pub seed: u64,
    pub engine: Engine,
    pub compensate_active_pair: bool,
    pub compensate_spacer_phases: bool,
}

impl<T: Scalar> SweepConfig<T> {
    /// Single-point sandwich sweep with spacer phases compensated.
    pub fn sandwich(m: usize, qubits: usize, steps: usize, delta: T) -> Self {
        Self {
            ms: vec![m],
            qubits: vec![qubits],
            steps: vec![steps],
            deltas: vec![delta],
            exponent: 3,
            benchmark: Benchmark::Sandwich,
            seed: 0,
            engine: Engine::Compressed,
            compensate_active_pair: false,
            compensate_spacer_phases: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ms.is_empty() || self.qubits.is_empty() || self.steps.is_empty() || self.deltas.is_empty() {
            return Err(Error::Config("every range must be nonempty".into()));
        }
        if self.ms.contains(&0) {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if self.qubits.contains(&0) {
            return Err(Error::Config("L must be at least 1".into()));
        }
        if let Some(d) = self.deltas.iter().find(|d| !(**d >= T::zero()) || !d.is_finite()) {
            return Err(Error::Config(format!("delta must be finite and non-negative, got {d}")));
        }
        if self.exponent == 0 {
            return Err(Error::Config("exponent must be at least 1".into()));
        }
        let max_l = *self.qubits.iter().max().unwrap();
        let max_m = *self.ms.iter().max().unwrap();
        let needed = match self.engine {
            Engine::Compressed => max_l,
            Engine::Full => max_l * max_m,
        };
        if needed > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: needed,
                max: MAX_QUBITS,
            });
        }
        Ok(())
    }

    /// Grid points in row order: `m` outermost, then `L`, `P`, `δ`.
    pub fn grid(&self) -> Vec<(usize, usize, usize, T)> {
        let mut out = Vec::new();
        for &m in &self.ms {
            for &l in &self.qubits {
                for &p in &self.steps {
                    for &d in &self.deltas {
                        out.push((m, l, p, d));
                    }
                }
            }
        }
        out
    }
}

/// Random logical circuit of `gates` gates on `qubits` qubits.
pub fn random_circuit<T: Scalar, R: Rng>(
    qubits: usize,
    gates: usize,
    rng: &mut R,
) -> Result<LogicalCircuit<T>> {
    let mut out = Vec::with_capacity(gates);
    for _ in 0..gates {
        let two = qubits >= 2 && rng.gen_bool(0.5);
        if two {
            let first = rng.gen_range(1..qubits);
            let matrix = match rng.gen_range(0..3) {
                0 => Mat4::cz(),
                1 => Mat4::cnot(),
                _ => random_one(rng).kron(&random_one(rng)) * Mat4::cnot(),
            };
            out.push(LogicalGate::TwoQubitNeighbor { first, matrix });
        } else if rng.gen_bool(0.1) {
            out.push(LogicalGate::Wait {
                steps: rng.gen_range(1..=3),
            });
        } else {
            out.push(LogicalGate::OneQubit {
                target: rng.gen_range(1..=qubits),
                matrix: random_one(rng),
            });
        }
    }
    LogicalCircuit::new(qubits, out)
}

fn random_one<T: Scalar, R: Rng>(rng: &mut R) -> Mat2<T> {
    let tau = std::f64::consts::TAU;
    Mat2::euler(
        T::lit(rng.gen_range(0.0..tau)),
        T::lit(rng.gen_range(0.0..tau)),
        T::lit(rng.gen_range(0.0..tau)),
    )
}

/// Logical circuit, solution set and error schedule of a benchmark instance.
pub fn build_benchmark<T: Scalar>(
    benchmark: Benchmark,
    qubits: usize,
    steps: usize,
    seed: u64,
) -> Result<(LogicalCircuit<T>, SolutionSet, ErrorSchedule)> {
    let ideal = SolutionSet::single(BasisState::zeros(qubits));
    match benchmark {
        Benchmark::Sandwich => {
            let layer = (1..=qubits).map(|target| LogicalGate::OneQubit {
                target,
                matrix: Mat2::hadamard(),
            });
            let gates = layer
                .clone()
                .chain(std::iter::once(LogicalGate::Wait { steps }))
                .chain(layer)
                .collect();
            Ok((LogicalCircuit::new(qubits, gates)?, ideal, ErrorSchedule::IdleOnly))
        }
        Benchmark::Echo { gates } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (qubits as u64).rotate_left(32));
            let forward = random_circuit::<T, _>(qubits, gates, &mut rng)?;
            let mut all = forward.gates().to_vec();
            all.push(LogicalGate::Wait { steps });
            all.extend(forward.inverse().gates().iter().cloned());
            Ok((LogicalCircuit::new(qubits, all)?, ideal, ErrorSchedule::EveryStep))
        }
    }
}

/// Simulate one grid point.
pub fn run_point<T: Scalar>(
    config: &SweepConfig<T>,
    m: usize,
    qubits: usize,
    steps: usize,
    delta: T,
) -> Result<QualityRow<T>> {
    let (logical, solutions, schedule) = build_benchmark::<T>(config.benchmark, qubits, steps, config.seed)?;
    let params = EncodingParams::new(m)?;
    let (physical, _) = compile_circuit(&logical, &params)?;
    let law = CouplingLaw::new(delta, config.exponent)?;
    let model = ErrorModel::new(law, physical.sites())?
        .with_schedule(schedule)
        .with_active_pair_compensation(config.compensate_active_pair)
        .with_spacer_compensation(config.compensate_spacer_phases);
    let initial = StateVector::zero(qubits)?;
    let data = match config.engine {
        Engine::Compressed => run_compressed(&physical, &model, &params, &initial)?,
        Engine::Full => {
            let encoding = *physical.encoding().expect("compiled circuit carries encoding");
            let full = run(&physical, &model, &embed_logical(&initial, &encoding)?)?;
            restrict_to_sites(&full.final_state, &final_data_sites(&physical)?)?
        }
    };
    let q = quality(&data, &solutions)?;
    let sigma_est = if q > T::zero() {
        sigma_from_quality(q)?
    } else {
        T::infinity()
    };
    Ok(QualityRow {
        m,
        qubits,
        steps,
        delta,
        q,
        sigma_est,
    })
}

/// Simulate every grid point; rows follow [`SweepConfig::grid`] order
/// regardless of evaluation order.
pub fn run_sweep<T: Scalar>(config: &SweepConfig<T>) -> Result<QualityCurve<T>> {
    config.validate()?;
    let rows = config
        .grid()
        .into_par_iter()
        .map(|(m, l, p, d)| run_point(config, m, l, p, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(QualityCurve { rows })
}

/// Swept axis of a quality curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    M,
    Qubits,
    Steps,
    Delta,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisFit<T> {
    pub axis: Axis,
    /// Fit of `sigma_est` against the axis value, others held at their first
    /// configured value.
    pub fit: ScalingFit<T>,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport<T> {
    pub rows: Vec<QualityRow<T>>,
    pub fits: Vec<AxisFit<T>>,
    /// `ln Q` against `δ²` at the first `(m, L, P)`, when `δ` is swept.
    pub quality_form: Option<LinearFit<T>>,
}

fn usable<T: Scalar>(row: &QualityRow<T>) -> bool {
    row.q < T::one() - T::lit(QUALITY_FIT_CEILING) && row.sigma_est.is_finite()
}

/// `sigma_est` against one axis, the other axes pinned to their first value.
pub fn axis_points<T: Scalar>(
    config: &SweepConfig<T>,
    curve: &QualityCurve<T>,
    axis: Axis,
) -> Vec<(T, T)> {
    let (m0, l0, p0, d0) = (config.ms[0], config.qubits[0], config.steps[0], config.deltas[0]);
    curve
        .rows
        .iter()
        .filter(|r| usable(r))
        .filter_map(|r| {
            let x = match axis {
                Axis::M if r.qubits == l0 && r.steps == p0 && r.delta == d0 => T::from_count(r.m),
                Axis::Qubits if r.m == m0 && r.steps == p0 && r.delta == d0 => T::from_count(r.qubits),
                Axis::Steps if r.m == m0 && r.qubits == l0 && r.delta == d0 => T::from_count(r.steps),
                Axis::Delta if r.m == m0 && r.qubits == l0 && r.steps == p0 => r.delta,
                _ => return None,
            };
            Some((x, r.sigma_est))
        })
        .collect()
}

/// Power-law fits along every axis with at least three usable points, and
/// the `ln Q`–`δ²` line.
pub fn report<T: Scalar>(config: &SweepConfig<T>, curve: &QualityCurve<T>) -> SweepReport<T> {
    let mut fits = Vec::new();
    for axis in [Axis::M, Axis::Qubits, Axis::Steps, Axis::Delta] {
        let pts = axis_points(config, curve, axis);
        if pts.len() >= 3 {
            if let Ok(fit) = fit_power_law(&pts) {
                fits.push(AxisFit {
                    axis,
                    fit,
                    points: pts.len(),
                });
            }
        }
    }
    let (m0, l0, p0) = (config.ms[0], config.qubits[0], config.steps[0]);
    let form: Vec<(T, T)> = curve
        .rows
        .iter()
        .filter(|r| r.m == m0 && r.qubits == l0 && r.steps == p0 && r.q > T::zero())
        .map(|r| (r.delta * r.delta, r.q.ln()))
        .collect();
    let quality_form = if config.deltas.len() >= 2 {
        fit_linear(&form).ok()
    } else {
        None
    };
    SweepReport {
        rows: curve.rows.clone(),
        fits,
        quality_form,
    }
}

pub const CSV_HEADER: &str = "m,L,P,delta,Q,sigma_est";

/// Real numbers in fixed scientific notation with 12 significant digits.
pub fn format_real<T: Scalar>(x: T) -> String {
    format!("{x:.11e}")
}

pub fn to_csv<T: Scalar>(curve: &QualityCurve<T>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &curve.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.m,
            r.qubits,
            r.steps,
            format_real(r.delta),
            format_real(r.q),
            format_real(r.sigma_est)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_coupling_gives_perfect_quality() {
        let cfg = SweepConfig::sandwich(2, 3, 10, 0.0f64);
        let curve = run_sweep(&cfg).unwrap();
        assert_eq!(curve.rows.len(), 1);
        assert_relative_eq!(curve.rows[0].q, 1.0, epsilon = 1e-14);
        assert!(curve.rows[0].sigma_est < 1e-7);
    }

    #[test]
    fn sandwich_rows_follow_closed_form() {
        let mut cfg = SweepConfig::sandwich(1, 2, 10, 0.01f64);
        cfg.steps = vec![10, 20];
        let curve = run_sweep(&cfg).unwrap();
        assert_relative_eq!(curve.rows[0].q, 0.05f64.cos().powi(2), epsilon = 1e-14);
        assert_relative_eq!(curve.rows[1].q, 0.1f64.cos().powi(2), epsilon = 1e-14);
    }

    #[test]
    fn spacers_improve_quality() {
        let mut cfg = SweepConfig::sandwich(1, 3, 20, 0.02f64);
        cfg.ms = vec![1, 2];
        cfg.engine = Engine::Full;
        let curve = run_sweep(&cfg).unwrap();
        assert!(curve.rows[1].q >= curve.rows[0].q);
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = SweepConfig {
            ms: vec![1, 2, 3],
            qubits: vec![2, 3],
            steps: vec![5],
            deltas: vec![0.01, 0.05],
            exponent: 3,
            benchmark: Benchmark::Echo { gates: 6 },
            seed: 42,
            engine: Engine::Compressed,
            compensate_active_pair: true,
            compensate_spacer_phases: true,
        };
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(to_csv(&a), to_csv(&b));
        assert_eq!(a.rows.len(), 12);
        assert_eq!((a.rows[0].m, a.rows[0].qubits, a.rows[1].delta), (1, 2, 0.05));
    }

    #[test]
    fn validation_errors() {
        let mut cfg = SweepConfig::sandwich(1, 2, 10, 0.01f64);
        cfg.ms.clear();
        assert!(matches!(run_sweep(&cfg), Err(Error::Config(_))));
        let mut cfg = SweepConfig::sandwich(4, 7, 10, 0.01f64);
        cfg.engine = Engine::Full;
        assert!(matches!(run_sweep(&cfg), Err(Error::Capacity { .. })));
        let cfg = SweepConfig::sandwich(1, 25, 10, 0.01f64);
        assert!(matches!(run_sweep(&cfg), Err(Error::Capacity { .. })));
        let cfg = SweepConfig::sandwich(1, 2, 10, -0.01f64);
        assert!(run_sweep(&cfg).is_err());
    }

    #[test]
    fn csv_layout() {
        let curve = QualityCurve {
            rows: vec![QualityRow {
                m: 2,
                qubits: 3,
                steps: 40,
                delta: 0.01f64,
                q: 1.0,
                sigma_est: 0.0,
            }],
        };
        assert_eq!(
            to_csv(&curve),
            "m,L,P,delta,Q,sigma_est\n2,3,40,1.00000000000e-2,1.00000000000e0,0.00000000000e0\n"
        );
    }

    #[test]
    fn report_fits_swept_axes() {
        let mut cfg = SweepConfig::sandwich(1, 2, 10, 0.002f64);
        cfg.steps = vec![10, 20, 40, 80];
        let curve = run_sweep(&cfg).unwrap();
        let rep = report(&cfg, &curve);
        assert_eq!(rep.fits.len(), 1);
        assert_eq!(rep.fits[0].axis, Axis::Steps);
        assert!((rep.fits[0].fit.exponent - 1.0).abs() < 0.01);
        assert!(rep.quality_form.is_none());
    }
}

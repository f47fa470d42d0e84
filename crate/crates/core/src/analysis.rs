//! Dispersion and quality formulas, resource estimates and scaling fits.

use serde::Serialize;

use crate::basis::BasisState;
use crate::circuit::{LogicalCircuit, LogicalGate};
use crate::encoder::{compile_circuit, EncodingParams};
use crate::error::{Error, Result};
use crate::interaction::CouplingLaw;
use crate::scalar::Scalar;
use crate::simulator::{run, embed_logical, final_data_sites, restrict_to_sites, ErrorModel};
use crate::state::StateVector;

/// `σ = sqrt(−ln Q)`, reading `Q ∝ exp(−σ²)` with unit prefactor.
pub fn sigma_from_quality<T: Scalar>(q: T) -> Result<T> {
    if !(q > T::zero() && q <= T::one()) {
        return Err(Error::InvalidQuality(q.as_f64()));
    }
    Ok((-q.ln()).max(T::zero()).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PredictionParams<T> {
    /// Algorithm- and input-dependent constant.
    pub c: T,
    pub steps: T,
    pub qubits: T,
    pub delta: T,
}

impl<T: Scalar> PredictionParams<T> {
    pub fn new(c: T, steps: T, qubits: T, delta: T) -> Result<Self> {
        if !(c > T::zero()) {
            return Err(Error::Domain(format!("C must be positive, got {c}")));
        }
        if !(steps >= T::zero()) {
            return Err(Error::Domain(format!("P must be non-negative, got {steps}")));
        }
        if !(qubits >= T::one()) {
            return Err(Error::Domain(format!("L must be at least 1, got {qubits}")));
        }
        if !(delta >= T::zero()) {
            return Err(Error::Domain(format!("delta must be non-negative, got {delta}")));
        }
        Ok(Self {
            c,
            steps,
            qubits,
            delta,
        })
    }
}

/// `σ = C·P·√L·δ`.
pub fn predicted_sigma<T: Scalar>(p: &PredictionParams<T>) -> T {
    p.c * p.steps * p.qubits.sqrt() * p.delta
}

/// Register size `1/δ²` beyond which a single step already degrades the
/// register badly.
pub fn critical_register_size<T: Scalar>(delta: T) -> Result<T> {
    if !(delta > T::zero()) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    Ok(T::one() / (delta * delta))
}

/// Resource and dispersion bounds for running an `L`-qubit, `P`-step
/// workload with spacer multiplicity `m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResourceEstimate<T> {
    pub logical_qubits: u64,
    pub logical_steps: u64,
    pub delta: T,
    pub m: u64,
    /// `L′ = m·L`
    pub physical_qubits: u64,
    /// `(2m − 1)·P`
    pub physical_steps_bound: u64,
    /// `P·√L`
    pub steps_sqrt_qubits: T,
    /// `δ/m³`
    pub delta_prime_bound: T,
    /// `σ` with `C = 1`.
    pub sigma: T,
    /// `σ·m^(−3/2)`
    pub sigma_prime_bound: T,
    /// `m^(−3/2)`
    pub sigma_ratio_bound: T,
    /// `1/δ²`, absent when `δ = 0`.
    pub critical_register_size: Option<T>,
}

pub fn resource_table<T: Scalar>(
    logical_qubits: u64,
    logical_steps: u64,
    delta: T,
    m: u64,
) -> Result<ResourceEstimate<T>> {
    if m == 0 {
        return Err(Error::Domain("spacer multiplicity m must be at least 1".into()));
    }
    let lit = |x: u64| T::from_u64(x).expect("count representable");
    let params = PredictionParams::new(T::one(), lit(logical_steps), lit(logical_qubits), delta)?;
    let mf = lit(m);
    let sigma = predicted_sigma(&params);
    let ratio = mf.powf(T::lit(-1.5));
    Ok(ResourceEstimate {
        logical_qubits,
        logical_steps,
        delta,
        m,
        physical_qubits: m * logical_qubits,
        physical_steps_bound: (2 * m - 1) * logical_steps,
        steps_sqrt_qubits: params.steps * params.qubits.sqrt(),
        delta_prime_bound: delta / (mf * mf * mf),
        sigma,
        sigma_prime_bound: sigma * ratio,
        sigma_ratio_bound: ratio,
        critical_register_size: critical_register_size(delta).ok(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QualityRow<T> {
    pub m: usize,
    #[serde(rename = "L")]
    pub qubits: usize,
    #[serde(rename = "P")]
    pub steps: usize,
    pub delta: T,
    #[serde(rename = "Q")]
    pub q: T,
    pub sigma_est: T,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct QualityCurve<T> {
    pub rows: Vec<QualityRow<T>>,
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingFit<T> {
    pub exponent: T,
    pub prefactor: T,
    /// RMS residual in log space.
    pub residual: T,
}

impl<T: Scalar> ScalingFit<T> {
    pub fn predict(&self, x: T) -> T {
        self.prefactor * x.powf(self.exponent)
    }
}

/// Ordinary least-squares line `y = slope·x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
    pub residual: T,
}

pub fn fit_linear<T: Scalar>(points: &[(T, T)]) -> Result<LinearFit<T>> {
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::Fit("non-finite coordinate".into()));
    }
    let n = T::from_count(points.len());
    let mx = points.iter().map(|p| p.0).sum::<T>() / n;
    let my = points.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: T = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let scale = points.iter().map(|p| p.0.abs()).fold(T::zero(), T::max);
    if !(sxx > T::epsilon() * T::from_count(points.len()) * scale * scale) {
        return Err(Error::Fit("degenerate x range".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: T = points
        .iter()
        .map(|p| {
            let r = p.1 - (slope * p.0 + intercept);
            r * r
        })
        .sum();
    let r_squared = if syy > T::zero() {
        T::one() - ss_res / syy
    } else {
        T::one()
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
        residual: (ss_res / n).sqrt(),
    })
}

/// Fit `y = prefactor · x^exponent` by least squares on `ln y` vs `ln x`.
pub fn fit_power_law<T: Scalar>(points: &[(T, T)]) -> Result<ScalingFit<T>> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some((x, y)) = points.iter().find(|(x, y)| !(*x > T::zero() && *y > T::zero())) {
        return Err(Error::Fit(format!(
            "power-law fit needs positive values, got ({x}, {y})"
        )));
    }
    let logs: Vec<(T, T)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let line = fit_linear(&logs)?;
    Ok(ScalingFit {
        exponent: line.slope,
        prefactor: line.intercept.exp(),
        residual: line.residual,
    })
}

/// Effective entangling coupling between two neighbouring logical qubits of
/// an idle spacer-encoded register, read off the simulated phases.
///
/// The register `|+⟩|+⟩` evolves for one idle step; with `φ(x)` the phase
/// acquired by logical amplitude `x`, the pair coupling is
/// `(φ(01) + φ(10) − φ(00) − φ(11)) / 2`, which cancels every single-qubit
/// phase, including those induced by spacers.
pub fn measure_effective_coupling<T: Scalar>(law: &CouplingLaw<T>, m: usize) -> Result<T> {
    let circuit = LogicalCircuit::new(2, vec![LogicalGate::Wait { steps: 1 }])?;
    let params = EncodingParams::new(m)?;
    let (physical, _) = compile_circuit(&circuit, &params)?;
    let encoding = *physical.encoding().expect("compiled circuit carries encoding");
    let model = ErrorModel::new(*law, physical.sites())?;
    let initial = embed_logical(&StateVector::plus(2)?, &encoding)?;
    let result = run(&physical, &model, &initial)?;
    let data = restrict_to_sites(&result.final_state, &final_data_sites(&physical)?)?;
    let phase = |s: &str| -> Result<T> {
        let bits: BasisState = s.parse()?;
        Ok(-data.amplitude(&bits)?.arg())
    };
    let two = T::lit(2.0);
    Ok((phase("01")? + phase("10")? - phase("00")? - phase("11")?) / two)
}

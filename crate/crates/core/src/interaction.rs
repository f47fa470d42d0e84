//! Always-on pair interaction between register sites.
//!
//! Natural units with ħ = 1. The pair Hamiltonian of two sites is diagonal in
//! the computational basis; only its nonadditive part entangles, and its
//! strength per gate step is the dimensionless coupling `δ = τ·δω`.

use serde::{Deserialize, Serialize};

use crate::basis::{site_bit, BasisState};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Amplitudes `a`, `b` of the pair Hamiltonian and the duration `tau` of one
/// basic gate step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteractionParams<T> {
    pub a: T,
    pub b: T,
    pub tau: T,
}

impl<T: Scalar> InteractionParams<T> {
    pub fn new(a: T, b: T, tau: T) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain("a and b must be finite".into()));
        }
        if !(tau > T::zero()) || !tau.is_finite() {
            return Err(Error::Domain(format!("tau must be positive, got {tau}")));
        }
        Ok(Self { a, b, tau })
    }
}

/// Diagonal of a two-site Hamiltonian over `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairHamiltonian<T> {
    pub diag: [T; 4],
}

impl<T: Scalar> PairHamiltonian<T> {
    pub fn new(diag: [T; 4]) -> Self {
        Self { diag }
    }

    pub fn zero() -> Self {
        Self {
            diag: [T::zero(); 4],
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut diag = self.diag;
        for (d, o) in diag.iter_mut().zip(other.diag) {
            *d = *d + o;
        }
        Self { diag }
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|d| d.is_zero())
    }
}

/// `diag(a², ab, ab, b²)`.
pub fn pair_hamiltonian<T: Scalar>(params: &InteractionParams<T>) -> PairHamiltonian<T> {
    let (a, b) = (params.a, params.b);
    PairHamiltonian::new([a * a, a * b, a * b, b * b])
}

/// Split `H` into its additive part `H_A` and nonadditive part `H_N = H − H_A`.
///
/// `H_A = diag(a², (a²+b²)/2, (a²+b²)/2, b²)`, so `H_N` carries
/// `−(a−b)²/2` on `|01⟩` and `|10⟩` and zero elsewhere.
pub fn decompose<T: Scalar>(
    h: &PairHamiltonian<T>,
) -> Result<(PairHamiltonian<T>, PairHamiltonian<T>)> {
    let [d00, d01, d10, d11] = h.diag;
    if h.diag.iter().any(|d| !d.is_finite()) {
        return Err(Error::Shape("non-finite entry".into()));
    }
    if d00 < T::zero() || d11 < T::zero() {
        return Err(Error::Shape("|00⟩ and |11⟩ energies must be squares".into()));
    }
    let scale = T::one().max(d00.abs().max(d11.abs()).max(d01.abs()));
    let tol = T::epsilon() * T::lit(64.0) * scale;
    if (d01 - d10).abs() > tol {
        return Err(Error::Shape(format!(
            "|01⟩ and |10⟩ energies differ ({d01} vs {d10})"
        )));
    }
    if (d01 * d01 - d00 * d11).abs() > tol * scale {
        return Err(Error::Shape(format!(
            "middle entry squared ({}) differs from the product of the outer entries ({})",
            d01 * d01,
            d00 * d11
        )));
    }
    let mid = (d00 + d11) / T::lit(2.0);
    let additive = PairHamiltonian::new([d00, mid, mid, d11]);
    let nonadditive = PairHamiltonian::new([T::zero(), d01 - mid, d10 - mid, T::zero()]);
    Ok((additive, nonadditive))
}

/// Angular frequency of the nonadditive part, `(a−b)²/2`.
pub fn delta_omega<T: Scalar>(params: &InteractionParams<T>) -> T {
    let d = params.a - params.b;
    d * d / T::lit(2.0)
}

/// Dimensionless coupling per gate step, `τ·δω`.
pub fn dimensionless_delta<T: Scalar>(params: &InteractionParams<T>) -> T {
    params.tau * delta_omega(params)
}

/// Power-law decay of the dimensionless coupling with distance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingLaw<T> {
    /// Coupling at unit distance.
    pub delta1: T,
    /// Decay power: 3 for dipoles, 1 for unscreened charges.
    pub exponent: u32,
    /// Pairs farther apart than this are ignored by the error model.
    pub cutoff: Option<T>,
}

impl<T: Scalar> CouplingLaw<T> {
    pub fn new(delta1: T, exponent: u32) -> Result<Self> {
        if !(delta1 >= T::zero()) || !delta1.is_finite() {
            return Err(Error::Domain(format!(
                "delta1 must be finite and non-negative, got {delta1}"
            )));
        }
        if exponent < 1 {
            return Err(Error::Domain("exponent must be at least 1".into()));
        }
        Ok(Self {
            delta1,
            exponent,
            cutoff: None,
        })
    }

    pub fn dipole(delta1: T) -> Result<Self> {
        Self::new(delta1, 3)
    }

    pub fn with_cutoff(mut self, cutoff: T) -> Result<Self> {
        if !(cutoff > T::zero()) {
            return Err(Error::Domain("cutoff must be positive".into()));
        }
        self.cutoff = Some(cutoff);
        Ok(self)
    }

    /// Coupling actually applied by the error model at `distance`: the law,
    /// or zero past the cutoff.
    #[inline]
    pub(crate) fn applied(&self, distance: T) -> T {
        match self.cutoff {
            Some(c) if distance > c => T::zero(),
            _ => self.delta1 / distance.powi(self.exponent as i32),
        }
    }
}

/// `delta1 / distance^p`.
pub fn coupling_strength<T: Scalar>(law: &CouplingLaw<T>, distance: T) -> Result<T> {
    if !(distance > T::zero()) {
        return Err(Error::Domain(format!(
            "distance must be positive, got {distance}"
        )));
    }
    Ok(law.delta1 / distance.powi(law.exponent as i32))
}

/// Sites on a line at positions `k·spacing`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegisterLayout<T> {
    pub n_sites: usize,
    pub spacing: T,
}

impl<T: Scalar> RegisterLayout<T> {
    pub fn new(n_sites: usize, spacing: T) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::Domain("register needs at least one site".into()));
        }
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::Domain(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self { n_sites, spacing })
    }

    pub fn unit(n_sites: usize) -> Result<Self> {
        Self::new(n_sites, T::one())
    }

    /// Distance between two sites given their index separation.
    #[inline]
    pub fn distance(&self, separation: usize) -> T {
        T::from_count(separation) * self.spacing
    }

    /// Applied coupling for every site separation `0..n_sites`; entry 0 is
    /// unused and set to zero.
    pub(crate) fn coupling_table(&self, law: &CouplingLaw<T>) -> Vec<T> {
        let mut table = vec![T::zero(); self.n_sites.max(1)];
        for (sep, c) in table.iter_mut().enumerate().skip(1) {
            *c = law.applied(self.distance(sep));
        }
        table
    }
}

/// Phase accumulated by basis state `bits` in one step: the sum of pair
/// couplings over every pair of sites holding different values.
pub fn error_phase<T: Scalar>(
    bits: &BasisState,
    layout: &RegisterLayout<T>,
    law: &CouplingLaw<T>,
) -> Result<T> {
    if bits.len() != layout.n_sites {
        return Err(Error::SizeMismatch {
            expected: layout.n_sites,
            found: bits.len(),
        });
    }
    let table = layout.coupling_table(law);
    Ok(phase_of_index(bits.index(), layout.n_sites, &table))
}

/// [`error_phase`] on a raw basis index with a precomputed separation table.
pub(crate) fn phase_of_index<T: Scalar>(index: usize, n: usize, table: &[T]) -> T {
    let mut phase = T::zero();
    for i in 0..n {
        let bi = site_bit(index, n, i);
        for j in (i + 1)..n {
            if bi != site_bit(index, n, j) {
                phase = phase + table[j - i];
            }
        }
    }
    phase
}

/// Nonadditive energy `E(00) + E(11) − E(01) − E(10)` of two dual-rail
/// logical qubits whose rail pairs are `separation` apart, each pair having
/// its rails `rail_spacing` apart, under an occupied-site potential
/// `g / distance`.
///
/// Logical 0 occupies the second rail of its pair and logical 1 the first,
/// so the four configurations place the two charges at distances
/// `D, D−r, D+r, D`. The sum evaluates to `−2 g r² / (D (D² − r²))`.
pub fn coulomb_nonadditive<T: Scalar>(separation: T, rail_spacing: T, g: T) -> Result<T> {
    if !(rail_spacing > T::zero()) {
        return Err(Error::Geometry(format!(
            "rail spacing must be positive, got {rail_spacing}"
        )));
    }
    if !(separation > rail_spacing) {
        return Err(Error::Geometry(format!(
            "rail pairs overlap: separation {separation} must exceed rail spacing {rail_spacing}"
        )));
    }
    let (d, r) = (separation, rail_spacing);
    Ok(-(T::lit(2.0) * g * r * r) / (d * (d * d - r * r)))
}

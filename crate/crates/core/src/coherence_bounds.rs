//! Coherence measures and the lower bounds of coherence-based uncertainty relations.
//!
//! For two reference bases `A`, `B` with maximal squared overlap `c`, a state
//! with purity `P` and von Neumann entropy `S` obeys
//!
//! | relation | lower bound on `C(A) + C(B)` |
//! |---|---|
//! | relative entropy (purity form) | `h((√(2P−1)(2√c−1) + 1)/2) − S` |
//! | relative entropy (Sánchez-Ruiz) | `h((1 + √(2c−1))/2) − 2S` |
//! | relative entropy (Berta et al.) | `−log₂c − S` |
//! | relative entropy (Korzekwa et al.) | `−(1 − S)·log₂c` |
//! | l1 norm | `2√((2P−1)·c·(1−c))` |
//! | coherence of formation | `h((1 + √(1 − 4(2P−1)√c(1−√c)))/2)` |
//!
//! Bound formulas return raw values, which may be negative. Clamping to zero
//! is a reporting step, see [`clamp_nonnegative`] and [`QurReport`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::statekit::{
    binary_entropy_clamped, born_probabilities, vn_entropy, MeasBasis, QubitState,
};

/// Slack allowed on inputs that should lie in a closed interval.
const INPUT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("{name} = {value} violates {requirement}")]
    Domain { name: &'static str, value: f64, requirement: &'static str },
}

fn domain(name: &'static str, value: f64, requirement: &'static str) -> BoundError {
    BoundError::Domain { name, value, requirement }
}

/// The scalar inputs every bound is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInputs {
    pub purity: f64,
    pub overlap: f64,
    /// Von Neumann entropy in bits.
    pub entropy: f64,
}

impl BoundInputs {
    /// Checks `P ∈ [0.5, 1]`, `c ∈ [0.5, 1]`, `S ∈ [0, 1]`.
    pub fn new(purity: f64, overlap: f64, entropy: f64) -> Result<Self, BoundError> {
        let within = |v: f64, lo: f64, hi: f64| v >= lo - INPUT_TOL && v <= hi + INPUT_TOL;
        if !within(purity, 0.5, 1.0) {
            return Err(domain("purity", purity, "0.5 <= P <= 1"));
        }
        if !within(overlap, 0.5, 1.0) {
            return Err(domain("overlap", overlap, "0.5 <= c <= 1"));
        }
        if !within(entropy, 0.0, 1.0) {
            return Err(domain("entropy", entropy, "0 <= S <= 1"));
        }
        Ok(Self { purity, overlap, entropy })
    }

    /// Exact inputs for `rho` measured in bases `a` and `b`.
    pub fn exact(rho: &QubitState, a: &MeasBasis, b: &MeasBasis) -> Self {
        Self {
            purity: crate::statekit::purity(rho),
            overlap: crate::statekit::overlap_c(a, b),
            entropy: vn_entropy(rho),
        }
    }

    /// Inputs from an estimated purity. The estimate is clipped to `[0.5, 1]`
    /// and `S = h((1 + √(2P−1))/2)` is derived from the clipped value.
    /// Returns whether clipping happened.
    pub fn from_estimated_purity(purity_estimate: f64, overlap: f64) -> Result<(Self, bool), BoundError> {
        if !purity_estimate.is_finite() {
            return Err(domain("purity", purity_estimate, "finite"));
        }
        let clipped = purity_estimate.clamp(0.5, 1.0);
        let inputs = Self::new(clipped, overlap, entropy_from_purity(clipped)?)?;
        Ok((inputs, clipped != purity_estimate))
    }
}

/// `2P − 1` with rounding below zero absorbed; errors if `P < 0.5` beyond tolerance.
fn purity_excess(purity: f64) -> Result<f64, BoundError> {
    if purity.is_nan() || purity < 0.5 - INPUT_TOL {
        return Err(domain("purity", purity, "P >= 0.5"));
    }
    Ok((2.0 * purity - 1.0).clamp(0.0, 1.0))
}

fn check_overlap(c: f64, lower: f64, requirement: &'static str, exclusive: bool) -> Result<f64, BoundError> {
    let ok = if exclusive { c > lower } else { c >= lower - INPUT_TOL };
    if !ok || c.is_nan() || c > 1.0 + INPUT_TOL {
        return Err(domain("overlap", c, requirement));
    }
    Ok(c.min(1.0))
}

/// Qubit von Neumann entropy from purity: `λ = (1 + √(2P−1))/2`, `S = h(λ)`.
pub fn entropy_from_purity(purity: f64) -> Result<f64, BoundError> {
    let excess = purity_excess(purity)?;
    Ok(binary_entropy_clamped(0.5 * (1.0 + excess.sqrt())))
}

/// `C_RE = H(diag of ρ in basis) − S_VN(ρ)`.
pub fn c_re(rho: &QubitState, basis: &MeasBasis) -> f64 {
    let (p0, _) = born_probabilities(rho, basis);
    (binary_entropy_clamped(p0) - vn_entropy(rho)).max(0.0)
}

/// `H − S` from a measured outcome entropy, floored at zero.
pub fn c_re_from_measurement(measured_entropy: f64, entropy: f64) -> f64 {
    clamp_nonnegative(measured_entropy - entropy)
}

/// Sum of the moduli of the off-diagonal entries of `ρ` in `basis`.
pub fn c_l1(rho: &QubitState, basis: &MeasBasis) -> f64 {
    2.0 * rho.matrix().sandwich(basis.ket(0), basis.ket(1)).norm()
}

/// Qubit coherence of formation from the l1 coherence: `h((1 + √(1 − C_l1²))/2)`.
pub fn c_f_qubit(l1: f64) -> Result<f64, BoundError> {
    if !(0.0..=1.0).contains(&l1) {
        return Err(domain("l1", l1, "0 <= C_l1 <= 1"));
    }
    Ok(binary_entropy_clamped(0.5 * (1.0 + (1.0 - l1 * l1).max(0.0).sqrt())))
}

/// Exact coherence of formation of a qubit state in `basis`.
pub fn c_f(rho: &QubitState, basis: &MeasBasis) -> f64 {
    c_f_qubit(c_l1(rho, basis).min(1.0)).expect("l1 coherence of a qubit state is in [0, 1]")
}

/// `h((√(2P−1)(2√c−1) + 1)/2) − S`.
pub fn bound_re_yuan(inputs: &BoundInputs) -> Result<f64, BoundError> {
    let excess = purity_excess(inputs.purity)?;
    let c = check_overlap(inputs.overlap, 0.5, "0.5 <= c <= 1", false)?;
    let arg = 0.5 * (excess.sqrt() * (2.0 * c.sqrt() - 1.0) + 1.0);
    Ok(binary_entropy_clamped(arg) - inputs.entropy)
}

/// `h((1 + √(2c−1))/2) − 2S`.
pub fn bound_re_sanchez(inputs: &BoundInputs) -> Result<f64, BoundError> {
    let c = check_overlap(inputs.overlap, 0.5, "0.5 <= c <= 1", false)?;
    let arg = 0.5 * (1.0 + (2.0 * c - 1.0).max(0.0).sqrt());
    Ok(binary_entropy_clamped(arg) - 2.0 * inputs.entropy)
}

/// `−log₂c − S`.
pub fn bound_re_berta(inputs: &BoundInputs) -> Result<f64, BoundError> {
    let c = check_overlap(inputs.overlap, 0.0, "0 < c <= 1", true)?;
    Ok(-c.log2() - inputs.entropy)
}

/// `−(1 − S)·log₂c`.
pub fn bound_re_korzekwa(inputs: &BoundInputs) -> Result<f64, BoundError> {
    let c = check_overlap(inputs.overlap, 0.0, "0 < c <= 1", true)?;
    if !(inputs.entropy >= -INPUT_TOL && inputs.entropy <= 1.0 + INPUT_TOL) {
        return Err(domain("entropy", inputs.entropy, "0 <= S <= 1"));
    }
    Ok(-(1.0 - inputs.entropy.clamp(0.0, 1.0)) * c.log2())
}

/// `2√((2P−1)·c·(1−c))`.
pub fn bound_l1(inputs: &BoundInputs) -> Result<f64, BoundError> {
    let excess = purity_excess(inputs.purity)?;
    let c = check_overlap(inputs.overlap, 0.0, "0 <= c <= 1", false)?;
    Ok(2.0 * (excess * c * (1.0 - c)).max(0.0).sqrt())
}

/// `h((1 + √(1 − 4(2P−1)√c(1−√c)))/2)`.
pub fn bound_cf(inputs: &BoundInputs) -> Result<f64, BoundError> {
    let excess = purity_excess(inputs.purity)?;
    let c = check_overlap(inputs.overlap, 0.0, "0 <= c <= 1", false)?;
    let rc = c.sqrt();
    let inner = 1.0 - 4.0 * excess * rc * (1.0 - rc);
    if inner < -INPUT_TOL {
        return Err(domain("1 - 4(2P-1)sqrt(c)(1-sqrt(c))", inner, ">= 0"));
    }
    Ok(binary_entropy_clamped(0.5 * (1.0 + inner.max(0.0).sqrt())))
}

/// Negative bounds are reported as zero.
pub fn clamp_nonnegative(x: f64) -> f64 {
    x.max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Yuan,
    Sanchez,
    Berta,
    Korzekwa,
    L1,
    Cf,
}

impl BoundKind {
    pub const RELATIVE_ENTROPY: [BoundKind; 4] =
        [BoundKind::Yuan, BoundKind::Sanchez, BoundKind::Berta, BoundKind::Korzekwa];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Yuan => "yuan",
            BoundKind::Sanchez => "sanchez",
            BoundKind::Berta => "berta",
            BoundKind::Korzekwa => "korzekwa",
            BoundKind::L1 => "l1",
            BoundKind::Cf => "cf",
        }
    }

    pub fn evaluate(self, inputs: &BoundInputs) -> Result<f64, BoundError> {
        match self {
            BoundKind::Yuan => bound_re_yuan(inputs),
            BoundKind::Sanchez => bound_re_sanchez(inputs),
            BoundKind::Berta => bound_re_berta(inputs),
            BoundKind::Korzekwa => bound_re_korzekwa(inputs),
            BoundKind::L1 => bound_l1(inputs),
            BoundKind::Cf => bound_cf(inputs),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub raw: f64,
    pub clamped: f64,
    pub was_clamped: bool,
}

impl BoundValue {
    fn new(kind: BoundKind, raw: f64) -> Self {
        let clamped = clamp_nonnegative(raw);
        Self { kind, raw, clamped, was_clamped: clamped != raw }
    }
}

/// One uncertainty-relation evaluation: the coherence sum and its bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QurReport {
    pub lhs: f64,
    pub inputs: BoundInputs,
    pub bounds: Vec<BoundValue>,
    /// Set when an estimated purity had to be clipped into `[0.5, 1]`.
    pub purity_clipped: bool,
}

impl QurReport {
    pub fn evaluate(
        lhs: f64,
        inputs: BoundInputs,
        kinds: &[BoundKind],
        purity_clipped: bool,
    ) -> Result<Self, BoundError> {
        let bounds = kinds
            .iter()
            .map(|&k| k.evaluate(&inputs).map(|raw| BoundValue::new(k, raw)))
            .collect::<Result<_, _>>()?;
        Ok(Self { lhs, inputs, bounds, purity_clipped })
    }

    pub fn relative_entropy(lhs: f64, inputs: BoundInputs, purity_clipped: bool) -> Result<Self, BoundError> {
        Self::evaluate(lhs, inputs, &BoundKind::RELATIVE_ENTROPY, purity_clipped)
    }

    pub fn l1(lhs: f64, inputs: BoundInputs, purity_clipped: bool) -> Result<Self, BoundError> {
        Self::evaluate(lhs, inputs, &[BoundKind::L1], purity_clipped)
    }

    pub fn formation(lhs: f64, inputs: BoundInputs, purity_clipped: bool) -> Result<Self, BoundError> {
        Self::evaluate(lhs, inputs, &[BoundKind::Cf], purity_clipped)
    }

    pub fn get(&self, kind: BoundKind) -> Option<&BoundValue> {
        self.bounds.iter().find(|b| b.kind == kind)
    }

    /// `lhs − max clamped bound`; non-negative when every relation holds.
    pub fn min_slack(&self) -> f64 {
        self.bounds
            .iter()
            .map(|b| self.lhs - b.clamped)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.min_slack() >= -tol
    }
}

/// Exact relative-entropy report for `rho` in bases `a`, `b`.
pub fn exact_re_report(rho: &QubitState, a: &MeasBasis, b: &MeasBasis) -> Result<QurReport, BoundError> {
    QurReport::relative_entropy(c_re(rho, a) + c_re(rho, b), BoundInputs::exact(rho, a, b), false)
}

pub fn exact_l1_report(rho: &QubitState, a: &MeasBasis, b: &MeasBasis) -> Result<QurReport, BoundError> {
    QurReport::l1(c_l1(rho, a) + c_l1(rho, b), BoundInputs::exact(rho, a, b), false)
}

pub fn exact_cf_report(rho: &QubitState, a: &MeasBasis, b: &MeasBasis) -> Result<QurReport, BoundError> {
    QurReport::formation(c_f(rho, a) + c_f(rho, b), BoundInputs::exact(rho, a, b), false)
}

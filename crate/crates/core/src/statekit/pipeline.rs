//! Algebraic model of the optical preparation chain for `ρ(τ)`:
//!
//! ```text
//! |H⟩ --HWP@22.5°--> |+⟩ --BS1--> |+⟩⊗(|t⟩+|r⟩)/√2 --attenuators--> |+⟩⊗(√τ|t⟩ + √(1−τ)|r⟩)
//!     --dephasing MZI on r--> τ|+⟩⟨+|⊗|t⟩⟨t| + (1−τ)I/2⊗|r⟩⟨r| --BS2--> ρ(τ)
//! ```
//!
//! The path degree of freedom only ever carries classical weights once the
//! dephasing step has run, so it is tracked as a two-branch mixture.

use num_complex::Complex64;

use super::{check_unit, dephase, ket_zero, Hermitian2, MeasBasis, Pauli, QubitState, StateError};

/// Polarization state in one spatial mode together with that mode's probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathBranch {
    pub weight: f64,
    pub polarization: QubitState,
}

/// Transmitted (`t`) and reflected (`r`) modes after the first beam splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathMixture {
    pub transmitted: PathBranch,
    pub reflected: PathBranch,
}

/// Half-wave plate with fast axis at `angle` (radians): `[[cos2a, sin2a], [sin2a, −cos2a]]`.
pub fn half_wave_plate(rho: &QubitState, angle: f64) -> QubitState {
    let (s, c) = (2.0 * angle).sin_cos();
    let u = [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(-c, 0.0)],
    ];
    QubitState::from_matrix_unchecked(rho.matrix().conjugate_by(&u))
}

/// 50:50 split followed by attenuators that leave the `t : r` ratio at `τ : (1−τ)`.
pub fn split_and_attenuate(rho: &QubitState, tau: f64) -> Result<PathMixture, StateError> {
    check_unit("tau", tau)?;
    Ok(PathMixture {
        transmitted: PathBranch { weight: tau, polarization: *rho },
        reflected: PathBranch { weight: 1.0 - tau, polarization: *rho },
    })
}

impl PathMixture {
    /// Unbalanced interferometer on the reflected arm: complete dephasing in `basis`.
    pub fn dephase_reflected(self, basis: &MeasBasis) -> Self {
        Self {
            reflected: PathBranch {
                weight: self.reflected.weight,
                polarization: dephase(&self.reflected.polarization, basis),
            },
            ..self
        }
    }

    /// Second beam splitter: trace out the path, leaving the weighted polarization mixture.
    pub fn recombine(self) -> QubitState {
        let m: Hermitian2 = *self.transmitted.polarization.matrix() * self.transmitted.weight
            + *self.reflected.polarization.matrix() * self.reflected.weight;
        QubitState::from_matrix_unchecked(m)
    }
}

/// Runs the full chain from `|H⟩ = |0⟩`; equals `make_rho_tau(tau)`.
pub fn prepare_via_pipeline(tau: f64) -> Result<QubitState, StateError> {
    let horizontal = QubitState::pure(&ket_zero());
    let plus = half_wave_plate(&horizontal, 22.5f64.to_radians());
    Ok(split_and_attenuate(&plus, tau)?
        .dephase_reflected(&MeasBasis::pauli(Pauli::Z))
        .recombine())
}

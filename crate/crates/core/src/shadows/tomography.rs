//! Pauli-basis tomography baseline: multinomial counts, linear inversion and
//! plug-in entropies of measured frequencies.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::ShadowError;
use crate::statekit::{born_probabilities, plogp, purity, MeasBasis, Pauli, QubitState};

/// Outcome counts `(n0, n1)` per Pauli basis, indexed by [`Pauli::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountsTable {
    pub counts: [[u64; 2]; 3],
    pub shots_per_basis: u64,
}

impl CountsTable {
    pub fn new(counts: [[u64; 2]; 3]) -> Result<Self, ShadowError> {
        let shots = counts[0][0] + counts[0][1];
        if shots == 0 {
            return Err(ShadowError::ZeroCount("shots_per_basis"));
        }
        if counts.iter().any(|c| c[0] + c[1] != shots) {
            return Err(ShadowError::UnequalShots(counts));
        }
        Ok(Self { counts, shots_per_basis: shots })
    }

    pub fn get(&self, p: Pauli) -> [u64; 2] {
        self.counts[p.index()]
    }

    /// Empirical probability of outcome 0 in each basis.
    pub fn frequencies(&self) -> [f64; 3] {
        let n = self.shots_per_basis as f64;
        self.counts.map(|c| c[0] as f64 / n)
    }
}

/// Born-rule binomial counts for `shots` projective measurements in `basis`.
pub fn measure_counts<R: Rng + ?Sized>(rho: &QubitState, basis: &MeasBasis, shots: u64, rng: &mut R) -> [u64; 2] {
    let (p0, _) = born_probabilities(rho, basis);
    let n0 = Binomial::new(shots, p0)
        .expect("Born probability lies in [0, 1]")
        .sample(rng);
    [n0, shots - n0]
}

pub fn qst_counts<R: Rng + ?Sized>(rho: &QubitState, shots_per_basis: u64, rng: &mut R) -> Result<CountsTable, ShadowError> {
    if shots_per_basis == 0 {
        return Err(ShadowError::ZeroCount("shots_per_basis"));
    }
    let counts = Pauli::ALL.map(|p| measure_counts(rho, &MeasBasis::pauli(p), shots_per_basis, rng));
    Ok(CountsTable { counts, shots_per_basis })
}

/// Linear inversion from outcome-0 frequencies `(f_X, f_Y, f_Z)`.
///
/// Each Bloch component is `2f − 1`. A vector longer than 1 is rescaled onto
/// the sphere.
pub fn reconstruct_from_frequencies(freq0: [f64; 3]) -> QubitState {
    let mut r = freq0.map(|f| 2.0 * f - 1.0);
    let len = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    if len > 1.0 {
        r = r.map(|v| v / len);
    }
    QubitState::from_bloch(r).expect("Bloch vector inside the unit ball")
}

pub fn qst_reconstruct(counts: &CountsTable) -> QubitState {
    reconstruct_from_frequencies(counts.frequencies())
}

pub fn purity_from_qst(counts: &CountsTable) -> f64 {
    purity(&qst_reconstruct(counts))
}

/// Plug-in Shannon entropy (bits) of the empirical outcome frequencies.
pub fn empirical_entropy(n0: u64, n1: u64) -> Result<f64, ShadowError> {
    let n = n0 + n1;
    if n == 0 {
        return Err(ShadowError::ZeroCount("total shots"));
    }
    let n = n as f64;
    Ok(plogp(n0 as f64 / n) + plogp(n1 as f64 / n))
}

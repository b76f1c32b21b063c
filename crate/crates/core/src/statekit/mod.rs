//! Exact single-qubit state algebra.
//!
//! States are stored by their independent entries in the computational (Z)
//! basis. Everything here is closed form: the 2×2 eigenproblem is solved
//! through the Bloch vector, so no general eigensolver is involved.

mod pipeline;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub use pipeline::{half_wave_plate, prepare_via_pipeline, split_and_attenuate, PathBranch, PathMixture};

/// Absolute tolerance on trace, positivity and Bloch-length checks.
pub const STATE_TOL: f64 = 1e-12;

/// Below this Bloch length a state is treated as `I/2` when decomposing.
const DEGENERATE_BLOCH: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfUnitInterval { name: &'static str, value: f64 },

    #[error("trace is {0}, expected 1")]
    Trace(f64),

    #[error("not positive semi-definite (det {det:e}, diagonal {m00:e}, {m11:e})")]
    NotPsd { det: f64, m00: f64, m11: f64 },

    #[error("matrix has a non-finite entry")]
    NonFinite,

    #[error("basis kets are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
}

pub type Ket = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn ket_zero() -> Ket {
    [ONE, ZERO]
}

pub fn ket_one() -> Ket {
    [ZERO, ONE]
}

pub fn ket_plus() -> Ket {
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [a, a]
}

pub fn ket_minus() -> Ket {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    [Complex64::new(a, 0.0), Complex64::new(-a, 0.0)]
}

/// `⟨u|v⟩`.
pub fn inner(u: &Ket, v: &Ket) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

fn normalize(k: &Ket) -> Ket {
    let n = inner(k, k).re.sqrt();
    [k[0] / n, k[1] / n]
}

/// A 2×2 Hermitian matrix stored by its independent entries; `m10 = conj(m01)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2 {
    pub m00: f64,
    pub m11: f64,
    pub m01: Complex64,
}

impl Hermitian2 {
    pub const IDENTITY: Hermitian2 = Hermitian2 { m00: 1.0, m11: 1.0, m01: ZERO };
    pub const ZERO: Hermitian2 = Hermitian2 { m00: 0.0, m11: 0.0, m01: ZERO };

    pub fn new(m00: f64, m11: f64, m01: Complex64) -> Self {
        Self { m00, m11, m01 }
    }

    /// `|k⟩⟨k|` for a (not necessarily normalized) ket.
    pub fn projector(k: &Ket) -> Self {
        Self {
            m00: k[0].norm_sqr(),
            m11: k[1].norm_sqr(),
            m01: k[0] * k[1].conj(),
        }
    }

    /// `(I + x·X + y·Y + z·Z) / 2`.
    pub fn from_bloch([x, y, z]: [f64; 3]) -> Self {
        Self {
            m00: 0.5 * (1.0 + z),
            m11: 0.5 * (1.0 - z),
            m01: Complex64::new(0.5 * x, -0.5 * y),
        }
    }

    pub fn m10(&self) -> Complex64 {
        self.m01.conj()
    }

    pub fn trace(&self) -> f64 {
        self.m00 + self.m11
    }

    pub fn determinant(&self) -> f64 {
        self.m00 * self.m11 - self.m01.norm_sqr()
    }

    /// Pauli components `(tr[AX], tr[AY], tr[AZ])`.
    pub fn bloch(&self) -> [f64; 3] {
        [2.0 * self.m01.re, -2.0 * self.m01.im, self.m00 - self.m11]
    }

    /// `tr[A·B]` for Hermitian `A`, `B`.
    pub fn trace_product(&self, other: &Hermitian2) -> f64 {
        self.m00 * other.m00 + self.m11 * other.m11 + 2.0 * (self.m01 * other.m01.conj()).re
    }

    /// `⟨u|A|v⟩`.
    pub fn sandwich(&self, u: &Ket, v: &Ket) -> Complex64 {
        let av0 = self.m00 * v[0] + self.m01 * v[1];
        let av1 = self.m10() * v[0] + self.m11 * v[1];
        u[0].conj() * av0 + u[1].conj() * av1
    }

    /// `⟨k|A|k⟩`, real for Hermitian `A`.
    pub fn expectation(&self, k: &Ket) -> f64 {
        self.sandwich(k, k).re
    }

    /// `U·A·U†` for a 2×2 unitary given row-major.
    pub fn conjugate_by(&self, u: &[[Complex64; 2]; 2]) -> Self {
        // Columns of U† are the conjugated rows of U.
        let r0 = [u[0][0].conj(), u[0][1].conj()];
        let r1 = [u[1][0].conj(), u[1][1].conj()];
        Self {
            m00: self.sandwich(&r0, &r0).re,
            m11: self.sandwich(&r1, &r1).re,
            m01: self.sandwich(&r0, &r1),
        }
    }

    pub fn max_abs_diff(&self, other: &Hermitian2) -> f64 {
        (self.m00 - other.m00)
            .abs()
            .max((self.m11 - other.m11).abs())
            .max((self.m01 - other.m01).norm())
    }

    pub fn is_finite(&self) -> bool {
        self.m00.is_finite() && self.m11.is_finite() && self.m01.re.is_finite() && self.m01.im.is_finite()
    }
}

impl Add for Hermitian2 {
    type Output = Hermitian2;
    fn add(self, rhs: Self) -> Self {
        Self { m00: self.m00 + rhs.m00, m11: self.m11 + rhs.m11, m01: self.m01 + rhs.m01 }
    }
}

impl Sub for Hermitian2 {
    type Output = Hermitian2;
    fn sub(self, rhs: Self) -> Self {
        Self { m00: self.m00 - rhs.m00, m11: self.m11 - rhs.m11, m01: self.m01 - rhs.m01 }
    }
}

impl Mul<f64> for Hermitian2 {
    type Output = Hermitian2;
    fn mul(self, s: f64) -> Self {
        Self { m00: self.m00 * s, m11: self.m11 * s, m01: self.m01 * s }
    }
}

/// A valid qubit density matrix: Hermitian, unit trace, positive semi-definite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState(Hermitian2);

impl QubitState {
    pub fn new(m00: f64, m11: f64, m01: Complex64) -> Result<Self, StateError> {
        Self::from_matrix(Hermitian2::new(m00, m11, m01))
    }

    pub fn from_matrix(m: Hermitian2) -> Result<Self, StateError> {
        if !m.is_finite() {
            return Err(StateError::NonFinite);
        }
        if (m.trace() - 1.0).abs() > STATE_TOL {
            return Err(StateError::Trace(m.trace()));
        }
        let det = m.determinant();
        if m.m00 < -STATE_TOL || m.m11 < -STATE_TOL || det < -STATE_TOL {
            return Err(StateError::NotPsd { det, m00: m.m00, m11: m.m11 });
        }
        Ok(Self(m))
    }

    pub fn from_bloch(r: [f64; 3]) -> Result<Self, StateError> {
        Self::from_matrix(Hermitian2::from_bloch(r))
    }

    /// `|ψ⟩⟨ψ|`; the ket is normalized first.
    pub fn pure(psi: &Ket) -> Self {
        Self(Hermitian2::projector(&normalize(psi)))
    }

    pub fn maximally_mixed() -> Self {
        Self(Hermitian2::IDENTITY * 0.5)
    }

    /// Caller guarantees the matrix is a valid state up to rounding.
    pub(crate) fn from_matrix_unchecked(m: Hermitian2) -> Self {
        debug_assert!(Self::from_matrix(m).is_ok(), "invalid state {m:?}");
        Self(m)
    }

    pub fn matrix(&self) -> &Hermitian2 {
        &self.0
    }

    pub fn m00(&self) -> f64 {
        self.0.m00
    }

    pub fn m11(&self) -> f64 {
        self.0.m11
    }

    pub fn m01(&self) -> Complex64 {
        self.0.m01
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.0.bloch()
    }

    pub fn bloch_length(&self) -> f64 {
        let [x, y, z] = self.bloch();
        (x * x + y * y + z * z).sqrt()
    }

    /// `½‖ρ − σ‖₁`, which for qubits is half the Bloch-vector distance.
    pub fn trace_distance(&self, other: &QubitState) -> f64 {
        let a = self.bloch();
        let b = other.bloch();
        let d: f64 = (0..3).map(|i| (a[i] - b[i]).powi(2)).sum();
        0.5 * d.sqrt()
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:.6}, {:.6}{:+.6}i], [{:.6}{:+.6}i, {:.6}]]",
            self.0.m00, self.0.m01.re, self.0.m01.im, self.0.m01.re, -self.0.m01.im, self.0.m11
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        match self {
            Pauli::X => 0,
            Pauli::Y => 1,
            Pauli::Z => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Eigenkets with the +1 eigenket first: `|+⟩,|−⟩`, `|L⟩,|R⟩`, `|0⟩,|1⟩`.
    pub fn eigenkets(self) -> [Ket; 2] {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Pauli::X => [ket_plus(), ket_minus()],
            Pauli::Y => [
                [Complex64::new(a, 0.0), Complex64::new(0.0, a)],
                [Complex64::new(a, 0.0), Complex64::new(0.0, -a)],
            ],
            Pauli::Z => [ket_zero(), ket_one()],
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisLabel {
    /// Eigenbasis of `cosθ·Z + sinθ·X`, θ in radians.
    Angle(f64),
    Pauli(Pauli),
    /// Eigenbasis of a state, from a spectral decomposition.
    Custom,
}

/// An orthonormal qubit measurement basis. Outcome `i` corresponds to `kets[i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasBasis {
    label: BasisLabel,
    kets: [Ket; 2],
}

impl MeasBasis {
    pub fn pauli(p: Pauli) -> Self {
        Self { label: BasisLabel::Pauli(p), kets: p.eigenkets() }
    }

    /// Eigenbasis of `J(θ) = cosθ·Z + sinθ·X`, +1 eigenket first.
    ///
    /// `J(0)` gives `|0⟩,|1⟩` exactly; `J(π/2)` gives `|+⟩` and `|−⟩` up to a
    /// global phase on the second ket.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        let k0 = [Complex64::new(c, 0.0), Complex64::new(s, 0.0)];
        let k1 = [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)];
        Self { label: BasisLabel::Angle(theta), kets: [k0, k1] }
    }

    pub fn from_angle_deg(theta_deg: f64) -> Self {
        Self::from_angle(theta_deg.to_radians())
    }

    pub fn from_kets(k0: Ket, k1: Ket) -> Result<Self, StateError> {
        let dev = (inner(&k0, &k0).re - 1.0)
            .abs()
            .max((inner(&k1, &k1).re - 1.0).abs())
            .max(inner(&k0, &k1).norm());
        if dev.is_nan() || dev > STATE_TOL {
            return Err(StateError::NotOrthonormal(dev));
        }
        Ok(Self { label: BasisLabel::Custom, kets: [k0, k1] })
    }

    pub fn label(&self) -> BasisLabel {
        self.label
    }

    pub fn kets(&self) -> &[Ket; 2] {
        &self.kets
    }

    pub fn ket(&self, outcome: usize) -> &Ket {
        &self.kets[outcome]
    }
}

/// `ρ(τ) = τ|+⟩⟨+| + (1−τ)I/2`.
pub fn make_rho_tau(tau: f64) -> Result<QubitState, StateError> {
    check_unit("tau", tau)?;
    Ok(QubitState::from_matrix_unchecked(Hermitian2::new(
        0.5,
        0.5,
        Complex64::new(0.5 * tau, 0.0),
    )))
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64, StateError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(StateError::OutOfUnitInterval { name, value })
    }
}

/// `tr[ρ²]`.
pub fn purity(rho: &QubitState) -> f64 {
    rho.matrix().trace_product(rho.matrix())
}

/// `h(x) = −x·log₂x − (1−x)·log₂(1−x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64, StateError> {
    check_unit("x", x).map(binary_entropy_clamped)
}

/// Binary entropy with the argument clamped into `[0, 1]`; absorbs rounding.
pub(crate) fn binary_entropy_clamped(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    plogp(x) + plogp(1.0 - x)
}

/// `−p·log₂p` with `0·log0 = 0`.
pub(crate) fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Von Neumann entropy in bits, from the closed-form eigenvalues.
pub fn vn_entropy(rho: &QubitState) -> f64 {
    let lambda = 0.5 * (1.0 + rho.bloch_length());
    binary_entropy_clamped(lambda)
}

/// Maximal squared overlap `max_{i,j} |⟨a_i|b_j⟩|²`.
pub fn overlap_c(a: &MeasBasis, b: &MeasBasis) -> f64 {
    a.kets()
        .iter()
        .flat_map(|ka| b.kets().iter().map(move |kb| inner(ka, kb).norm_sqr()))
        .fold(0.0, f64::max)
}

/// Outcome probabilities `⟨k_i|ρ|k_i⟩`.
pub fn born_probabilities(rho: &QubitState, basis: &MeasBasis) -> (f64, f64) {
    let p0 = rho.matrix().expectation(basis.ket(0)).clamp(0.0, 1.0);
    let p1 = rho.matrix().expectation(basis.ket(1)).clamp(0.0, 1.0);
    (p0, p1)
}

/// Completely dephasing channel in `basis`: `Σ_i ⟨k_i|ρ|k_i⟩·|k_i⟩⟨k_i|`.
pub fn dephase(rho: &QubitState, basis: &MeasBasis) -> QubitState {
    let (p0, p1) = born_probabilities(rho, basis);
    QubitState::from_matrix_unchecked(
        Hermitian2::projector(basis.ket(0)) * p0 + Hermitian2::projector(basis.ket(1)) * p1,
    )
}

/// `ρ = λ|ψ⟩⟨ψ| + (1−λ)|ψ⊥⟩⟨ψ⊥|` with `λ ≥ ½`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDecomp {
    pub lambda: f64,
    pub psi: Ket,
    pub psi_perp: Ket,
}

impl SpectralDecomp {
    pub fn reconstruct(&self) -> Hermitian2 {
        Hermitian2::projector(&self.psi) * self.lambda
            + Hermitian2::projector(&self.psi_perp) * (1.0 - self.lambda)
    }

    /// `2λ² − 2λ + 1`.
    pub fn purity(&self) -> f64 {
        2.0 * self.lambda * self.lambda - 2.0 * self.lambda + 1.0
    }

    pub fn eigenbasis(&self) -> MeasBasis {
        MeasBasis { label: BasisLabel::Custom, kets: [self.psi, self.psi_perp] }
    }
}

/// Closed-form eigendecomposition via the Bloch vector. `I/2` returns the Z basis.
pub fn spectral_decompose(rho: &QubitState) -> SpectralDecomp {
    let [x, y, z] = rho.bloch();
    let r = (x * x + y * y + z * z).sqrt();
    if r <= DEGENERATE_BLOCH {
        return SpectralDecomp { lambda: 0.5, psi: ket_zero(), psi_perp: ket_one() };
    }
    let lambda = (0.5 * (1.0 + r)).min(1.0);
    // Unit vector n = (sinθ cosφ, sinθ sinφ, cosθ); the +1 eigenket of n·σ is
    // (cos θ/2, e^{iφ} sin θ/2).
    let cos_theta = (z / r).clamp(-1.0, 1.0);
    let half_cos = (0.5 * (1.0 + cos_theta)).sqrt();
    let half_sin = (0.5 * (1.0 - cos_theta)).sqrt();
    let rho_xy = (x * x + y * y).sqrt();
    let phase = if rho_xy > 0.0 {
        Complex64::new(x / rho_xy, y / rho_xy)
    } else {
        ONE
    };
    let psi = [Complex64::new(half_cos, 0.0), phase * half_sin];
    let psi_perp = [-phase.conj() * half_sin, Complex64::new(half_cos, 0.0)];
    SpectralDecomp { lambda, psi, psi_perp }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn tau_grid() -> impl Iterator<Item = f64> {
        (0..=100).map(|i| i as f64 / 100.0)
    }

    #[test]
    fn rho_tau_endpoints_and_interior() {
        let pure = make_rho_tau(1.0).unwrap();
        assert_eq!(pure.m01(), Complex64::new(0.5, 0.0));
        assert_eq!((pure.m00(), pure.m11()), (0.5, 0.5));

        let mixed = make_rho_tau(0.0).unwrap();
        assert_eq!(mixed, QubitState::maximally_mixed());

        let mid = make_rho_tau(0.6).unwrap();
        assert_abs_diff_eq!(mid.m01().re, 0.3, epsilon = 1e-15);
        assert_eq!(mid.m01().im, 0.0);
    }

    #[test]
    fn rho_tau_rejects_out_of_range() {
        assert!(matches!(make_rho_tau(1.5), Err(StateError::OutOfUnitInterval { .. })));
        assert!(make_rho_tau(-0.01).is_err());
        assert!(make_rho_tau(f64::NAN).is_err());
    }

    #[test]
    fn state_validation() {
        assert!(matches!(QubitState::new(0.6, 0.6, ZERO), Err(StateError::Trace(_))));
        assert!(matches!(
            QubitState::new(0.5, 0.5, Complex64::new(0.6, 0.0)),
            Err(StateError::NotPsd { .. })
        ));
        assert!(matches!(QubitState::new(1.2, -0.2, ZERO), Err(StateError::NotPsd { .. })));
        assert!(QubitState::new(f64::NAN, 0.5, ZERO).is_err());
        assert!(QubitState::from_bloch([0.0, 0.0, 1.0 + 1e-13]).is_ok());
        assert!(QubitState::from_bloch([0.0, 0.6, 0.8]).is_ok());
        assert!(QubitState::from_bloch([0.0, 0.6, 0.81]).is_err());
    }

    #[test]
    fn purity_examples() {
        assert_abs_diff_eq!(purity(&make_rho_tau(1.0).unwrap()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&make_rho_tau(0.0).unwrap()), 0.5, epsilon = 1e-15);
        // (1 + 0.894²) / 2
        assert_abs_diff_eq!(purity(&make_rho_tau(0.894).unwrap()), 0.899618, epsilon = 1e-12);
    }

    #[test]
    fn purity_matches_family_formula_and_eigenvalue_relation() {
        for tau in tau_grid() {
            let rho = make_rho_tau(tau).unwrap();
            let p = purity(&rho);
            assert_abs_diff_eq!(p, 0.5 * (1.0 + tau * tau), epsilon = 1e-12);
            assert_abs_diff_eq!(spectral_decompose(&rho).purity(), p, epsilon = 1e-12);
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(vn_entropy(&make_rho_tau(1.0).unwrap()), 0.0);
        assert_eq!(vn_entropy(&QubitState::maximally_mixed()), 1.0);
        // h(0.8), evaluated at high precision outside this crate.
        assert_abs_diff_eq!(vn_entropy(&make_rho_tau(0.6).unwrap()), 0.721928094887362, epsilon = 1e-12);

        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.9).unwrap(), 0.468995593589281, epsilon = 1e-12);
        assert!(binary_entropy(1.0001).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn overlap_examples() {
        let z = MeasBasis::from_angle_deg(0.0);
        assert_abs_diff_eq!(overlap_c(&z, &MeasBasis::from_angle_deg(90.0)), 0.5, epsilon = 1e-15);
        // cos²(33.21°)
        assert_abs_diff_eq!(
            overlap_c(&z, &MeasBasis::from_angle_deg(66.42)),
            0.700014568618632,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(overlap_c(&z, &MeasBasis::from_angle_deg(66.42)), 0.7, epsilon = 1e-3);
        assert_abs_diff_eq!(
            overlap_c(&z, &MeasBasis::from_angle_deg(36.86)),
            0.900051817983923,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(overlap_c(&z, &z), 1.0, epsilon = 1e-15);
        let y = MeasBasis::pauli(Pauli::Y);
        assert_abs_diff_eq!(overlap_c(&y, &y), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap_c(&y, &MeasBasis::pauli(Pauli::X)), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn angle_bases_match_pauli_bases() {
        for (theta, p) in [(0.0, Pauli::Z), (90.0, Pauli::X)] {
            let a = MeasBasis::from_angle_deg(theta);
            let b = MeasBasis::pauli(p);
            for i in 0..2 {
                let pa = Hermitian2::projector(a.ket(i));
                let pb = Hermitian2::projector(b.ket(i));
                assert!(pa.max_abs_diff(&pb) < 1e-15, "theta {theta} ket {i}");
            }
        }
        assert_eq!(MeasBasis::from_angle(0.0).kets(), &[ket_zero(), ket_one()]);
    }

    #[test]
    fn bases_are_orthonormal() {
        for theta in (0..=36).map(|i| i as f64 * 5.0) {
            let b = MeasBasis::from_angle_deg(theta);
            assert!(MeasBasis::from_kets(b.kets()[0], b.kets()[1]).is_ok());
        }
        for p in Pauli::ALL {
            let b = MeasBasis::pauli(p);
            assert!(MeasBasis::from_kets(b.kets()[0], b.kets()[1]).is_ok());
        }
        assert!(MeasBasis::from_kets(ket_zero(), ket_plus()).is_err());
    }

    #[test]
    fn first_ket_is_plus_one_eigenstate() {
        for theta in (0..=18).map(|i| i as f64 * 10.0) {
            let b = MeasBasis::from_angle_deg(theta);
            let t = theta.to_radians();
            // ⟨k0|J|k0⟩ via Bloch: J = cosθ Z + sinθ X.
            let [x, _, z] = Hermitian2::projector(b.ket(0)).bloch();
            assert_abs_diff_eq!(t.cos() * z + t.sin() * x, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn born_examples() {
        let zero = QubitState::pure(&ket_zero());
        assert_eq!(born_probabilities(&zero, &MeasBasis::pauli(Pauli::Z)), (1.0, 0.0));
        let mixed = QubitState::maximally_mixed();
        for b in [MeasBasis::pauli(Pauli::X), MeasBasis::pauli(Pauli::Y), MeasBasis::from_angle_deg(37.0)] {
            let (p0, p1) = born_probabilities(&mixed, &b);
            assert_abs_diff_eq!(p0, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(p1, 0.5, epsilon = 1e-15);
        }
        for tau in tau_grid() {
            let (p0, p1) = born_probabilities(&make_rho_tau(tau).unwrap(), &MeasBasis::pauli(Pauli::X));
            assert_abs_diff_eq!(p0, 0.5 * (1.0 + tau), epsilon = 1e-15);
            assert_abs_diff_eq!(p1, 0.5 * (1.0 - tau), epsilon = 1e-15);
        }
    }

    #[test]
    fn dephase_examples() {
        let z = MeasBasis::pauli(Pauli::Z);
        let plus = QubitState::pure(&ket_plus());
        assert!(dephase(&plus, &z).matrix().max_abs_diff(QubitState::maximally_mixed().matrix()) < 1e-15);

        let diag = QubitState::new(0.3, 0.7, ZERO).unwrap();
        assert!(dephase(&diag, &z).matrix().max_abs_diff(diag.matrix()) < 1e-15);

        let x = MeasBasis::pauli(Pauli::X);
        for tau in tau_grid() {
            let rho = make_rho_tau(tau).unwrap();
            assert!(dephase(&rho, &x).matrix().max_abs_diff(rho.matrix()) < 1e-15);
        }
    }

    #[test]
    fn spectral_examples() {
        let d = spectral_decompose(&make_rho_tau(1.0).unwrap());
        assert_abs_diff_eq!(d.lambda, 1.0, epsilon = 1e-15);
        assert!(Hermitian2::projector(&d.psi).max_abs_diff(&Hermitian2::projector(&ket_plus())) < 1e-15);

        let d = spectral_decompose(&QubitState::maximally_mixed());
        assert_eq!(d.lambda, 0.5);
        assert_eq!((d.psi, d.psi_perp), (ket_zero(), ket_one()));

        let d = spectral_decompose(&make_rho_tau(0.291).unwrap());
        assert_abs_diff_eq!(d.lambda, 0.6455, epsilon = 1e-14);
    }

    #[test]
    fn spectral_decomposition_of_family() {
        for tau in tau_grid().skip(1) {
            let rho = make_rho_tau(tau).unwrap();
            let d = spectral_decompose(&rho);
            assert_abs_diff_eq!(d.lambda, 0.5 * (1.0 + tau), epsilon = 1e-14);
            assert!(inner(&d.psi, &ket_plus()).norm() > 1.0 - 1e-14);
            assert_abs_diff_eq!(vn_entropy(&rho), binary_entropy(d.lambda).unwrap(), epsilon = 1e-14);
        }
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states() {
        let a = QubitState::pure(&ket_zero());
        let b = QubitState::pure(&ket_one());
        assert_abs_diff_eq!(a.trace_distance(&b), 1.0, epsilon = 1e-15);
        assert_eq!(a.trace_distance(&a), 0.0);
    }

    fn bloch_ball() -> impl Strategy<Value = [f64; 3]> {
        (0.0..=1.0f64, -1.0..=1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, ct, phi)| {
            let st = (1.0 - ct * ct).sqrt();
            [r * st * phi.cos(), r * st * phi.sin(), r * ct]
        })
    }

    fn any_basis() -> impl Strategy<Value = MeasBasis> {
        prop_oneof![
            (0.0..std::f64::consts::PI).prop_map(MeasBasis::from_angle),
            prop::sample::select(Pauli::ALL.to_vec()).prop_map(MeasBasis::pauli),
        ]
    }

    proptest! {
        #[test]
        fn binary_entropy_is_symmetric(x in 0.0..=1.0f64) {
            let a = binary_entropy(x).unwrap();
            let b = binary_entropy(1.0 - x).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn overlap_is_symmetric(a in any_basis(), b in any_basis()) {
            let ab = overlap_c(&a, &b);
            prop_assert!((ab - overlap_c(&b, &a)).abs() <= 1e-12);
            prop_assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&ab));
        }

        #[test]
        fn overlap_with_z_is_half_angle_cosine(theta in 0.0..=std::f64::consts::FRAC_PI_2) {
            let c = overlap_c(&MeasBasis::from_angle(0.0), &MeasBasis::from_angle(theta));
            prop_assert!((c - (0.5 * theta).cos().powi(2)).abs() <= 1e-12);
        }

        #[test]
        fn dephase_is_idempotent(r in bloch_ball(), b in any_basis()) {
            let rho = QubitState::from_bloch(r).unwrap();
            let once = dephase(&rho, &b);
            let twice = dephase(&once, &b);
            prop_assert!(once.matrix().max_abs_diff(twice.matrix()) <= 1e-12);
        }

        #[test]
        fn spectral_decomposition_reconstructs(r in bloch_ball()) {
            let rho = QubitState::from_bloch(r).unwrap();
            let d = spectral_decompose(&rho);
            prop_assert!(d.lambda >= 0.5 && d.lambda <= 1.0);
            prop_assert!(d.reconstruct().max_abs_diff(rho.matrix()) <= 1e-10);
            prop_assert!(inner(&d.psi, &d.psi_perp).norm() <= 1e-12);
            prop_assert!((vn_entropy(&rho) - binary_entropy(d.lambda).unwrap()).abs() <= 1e-12);
            prop_assert!((d.purity() - purity(&rho)).abs() <= 1e-12);
        }

        #[test]
        fn born_probabilities_normalized(r in bloch_ball(), b in any_basis()) {
            let rho = QubitState::from_bloch(r).unwrap();
            let (p0, p1) = born_probabilities(&rho, &b);
            prop_assert!((p0 + p1 - 1.0).abs() <= 1e-12);
        }
    }
}

//! Two-qubit states in the Dicke and computational bases.
//!
//! Computational basis order is `{|11>, |10>, |01>, |00>}` with `|1>` the
//! excited level of each qubit (qubit 1 is the left factor). The Dicke basis is
//! `{|up> = |11>, |s>, |a>, |down> = |00>}` with
//! `|s> = (|01> + |10>)/sqrt 2` and `|a> = (|01> - |10>)/sqrt 2`.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type Mat4 = Matrix4<C64>;

/// Slack allowed on populations and normalization of integrated states.
pub const POPULATION_SLACK: f64 = 1e-9;
/// Normalization error above which basis transforms refuse the input.
pub const NORMALIZATION_REJECT: f64 = 1e-6;
/// Largest admissible out-of-span residual when converting to Dicke form.
pub const SPAN_TOLERANCE: f64 = 1e-8;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-9;
pub const MIN_EIGENVALUE: f64 = -1e-8;

/// Two-qubit state of the X-form spanned by the four Dicke populations and
/// the `s`-`a` coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickeState {
    pub p_up: f64,
    pub p_s: f64,
    pub p_a: f64,
    pub p_down: f64,
    /// `<s| rho |a>`; `<a| rho |s>` is its conjugate.
    pub c_sa: C64,
}

impl DickeState {
    pub fn new(p_up: f64, p_s: f64, p_a: f64, p_down: f64, c_sa: C64) -> Result<Self> {
        let d = Self {
            p_up,
            p_s,
            p_a,
            p_down,
            c_sa,
        };
        d.validate()?;
        Ok(d)
    }

    /// Both qubits excited.
    pub fn up() -> Self {
        Self::diagonal(1.0, 0.0, 0.0, 0.0)
    }

    /// Both qubits in the ground state.
    pub fn down() -> Self {
        Self::diagonal(0.0, 0.0, 0.0, 1.0)
    }

    pub fn symmetric() -> Self {
        Self::diagonal(0.0, 1.0, 0.0, 0.0)
    }

    pub fn antisymmetric() -> Self {
        Self::diagonal(0.0, 0.0, 1.0, 0.0)
    }

    /// Diagonal mixture; not validated.
    pub fn diagonal(p_up: f64, p_s: f64, p_a: f64, p_down: f64) -> Self {
        Self {
            p_up,
            p_s,
            p_a,
            p_down,
            c_sa: C64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> f64 {
        self.p_up + self.p_s + self.p_a + self.p_down
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.p_up, self.p_s, self.p_a, self.p_down]
    }

    pub fn validate(&self) -> Result<()> {
        let pops = self.populations();
        if pops.iter().any(|p| !p.is_finite()) || !self.c_sa.re.is_finite() || !self.c_sa.im.is_finite()
        {
            return Err(Error::NonPhysical("non-finite Dicke component".into()));
        }
        if (self.trace() - 1.0).abs() > POPULATION_SLACK {
            return Err(Error::NotNormalized {
                trace: self.trace(),
            });
        }
        if let Some(p) = pops
            .iter()
            .find(|&&p| !(-POPULATION_SLACK..=1.0 + POPULATION_SLACK).contains(&p))
        {
            return Err(Error::NonPhysical(format!("population {p} outside [0, 1]")));
        }
        if self.c_sa.norm_sqr() > self.p_s * self.p_a + POPULATION_SLACK {
            return Err(Error::NonPhysical(format!(
                "|c_sa|^2 = {} exceeds p_s p_a = {}",
                self.c_sa.norm_sqr(),
                self.p_s * self.p_a
            )));
        }
        Ok(())
    }

    /// `<10| rho |01> = (p_s + c_sa - c_as - p_a) / 2`.
    pub fn coherence_10_01(&self) -> C64 {
        (C64::new(self.p_s - self.p_a, 0.0) + self.c_sa - self.c_sa.conj()) * 0.5
    }

    /// Matrix in the Dicke basis `{up, s, a, down}`.
    pub fn dicke_matrix(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        m[(0, 0)] = C64::new(self.p_up, 0.0);
        m[(1, 1)] = C64::new(self.p_s, 0.0);
        m[(2, 2)] = C64::new(self.p_a, 0.0);
        m[(3, 3)] = C64::new(self.p_down, 0.0);
        m[(1, 2)] = self.c_sa;
        m[(2, 1)] = self.c_sa.conj();
        m
    }

    pub fn to_computational(&self) -> Result<TwoQubitState> {
        dicke_to_computational(self)
    }
}

/// Columns are the Dicke vectors expressed in the computational basis.
pub fn dicke_basis() -> Mat4 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| C64::new(x, 0.0);
    let z = c(0.0);
    #[rustfmt::skip]
    let u = Mat4::new(
        c(1.0), z,    z,     z,
        z,      c(h), c(-h), z,
        z,      c(h), c(h),  z,
        z,      z,    z,     c(1.0),
    );
    u
}

/// Components of a 4x4 operator in the Dicke basis, restricted to the
/// X-form entries, plus the Frobenius norm of everything else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickeComponents {
    pub up: C64,
    pub s: C64,
    pub a: C64,
    pub down: C64,
    pub sa: C64,
    pub as_: C64,
    pub residual: f64,
}

pub fn dicke_components(m: &Mat4) -> DickeComponents {
    let u = dicke_basis();
    let d = u.adjoint() * m * u;
    let mut residual = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let in_span = i == j || (i, j) == (1, 2) || (i, j) == (2, 1);
            if !in_span {
                residual += d[(i, j)].norm_sqr();
            }
        }
    }
    DickeComponents {
        up: d[(0, 0)],
        s: d[(1, 1)],
        a: d[(2, 2)],
        down: d[(3, 3)],
        sa: d[(1, 2)],
        as_: d[(2, 1)],
        residual: residual.sqrt(),
    }
}

/// Two-qubit density matrix in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    rho: Mat4,
}

impl TwoQubitState {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(rho: Mat4) -> Result<Self> {
        let s = Self { rho };
        s.validate()?;
        Ok(s)
    }

    pub fn from_matrix_unchecked(rho: Mat4) -> Self {
        Self { rho }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.rho
    }

    pub fn into_matrix(self) -> Mat4 {
        self.rho
    }

    pub fn maximally_mixed() -> Self {
        Self {
            rho: Mat4::identity() * C64::new(0.25, 0.0),
        }
    }

    /// Projector on computational basis index `i` (0 = |11>, ..., 3 = |00>).
    pub fn basis(i: usize) -> Self {
        let mut rho = Mat4::zeros();
        rho[(i, i)] = C64::new(1.0, 0.0);
        Self { rho }
    }

    /// Pure state `|psi><psi|` from an (unnormalized) amplitude vector.
    pub fn pure(psi: [C64; 4]) -> Self {
        let v = nalgebra::Vector4::from(psi);
        let v = v.unscale(v.norm());
        Self {
            rho: v * v.adjoint(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        (self.rho - self.rho.adjoint()).map(|z| z.norm()).max()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let h = (self.rho + self.rho.adjoint()) * C64::new(0.5, 0.0);
        let ev = h.symmetric_eigenvalues();
        let mut out = [ev[0], ev[1], ev[2], ev[3]];
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonPhysical("non-finite matrix entry".into()));
        }
        let herm = self.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NonPhysical(format!("not Hermitian (error {herm:.3e})")));
        }
        if (self.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized {
                trace: self.trace(),
            });
        }
        let min = self.eigenvalues()[0];
        if min < MIN_EIGENVALUE {
            return Err(Error::NonPhysical(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    /// Population of `|00>`.
    pub fn p_ground(&self) -> f64 {
        self.rho[(3, 3)].re
    }

    /// Dicke components without enforcing the X-form.
    pub fn dicke_components(&self) -> DickeComponents {
        dicke_components(&self.rho)
    }

    /// Dicke-basis view that drops any out-of-span coherences.
    pub fn dicke_projection(&self) -> DickeState {
        let c = self.dicke_components();
        DickeState {
            p_up: c.up.re,
            p_s: c.s.re,
            p_a: c.a.re,
            p_down: c.down.re,
            c_sa: c.sa,
        }
    }

    pub fn to_dicke(&self) -> Result<DickeState> {
        computational_to_dicke(self)
    }
}

/// `U rho_D U^dagger`.
pub fn dicke_to_computational(d: &DickeState) -> Result<TwoQubitState> {
    if (d.trace() - 1.0).abs() > NORMALIZATION_REJECT {
        return Err(Error::NotNormalized { trace: d.trace() });
    }
    let u = dicke_basis();
    Ok(TwoQubitState::from_matrix_unchecked(
        u * d.dicke_matrix() * u.adjoint(),
    ))
}

/// Inverse of [`dicke_to_computational`]; fails when the input carries
/// coherences outside the X-form (e.g. between `|up>` and `|s>`).
pub fn computational_to_dicke(r: &TwoQubitState) -> Result<DickeState> {
    let c = r.dicke_components();
    if c.residual > SPAN_TOLERANCE {
        return Err(Error::OutsideDickeSpan {
            residual: c.residual,
        });
    }
    Ok(DickeState {
        p_up: c.up.re,
        p_s: c.s.re,
        p_a: c.a.re,
        p_down: c.down.re,
        c_sa: c.sa,
    })
}

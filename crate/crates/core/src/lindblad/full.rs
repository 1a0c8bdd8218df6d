//! Cavity mode plus both qubits on a truncated Fock space.
//!
//! Index of `|n> (x) |q>` is `4 n + q`, with `q` running over
//! `{|11>, |10>, |01>, |00>}`. The generator is written in the frame rotating
//! at the cavity frequency:
//!
//! `d rho/dt = -i[H, rho] + kappa (nbar+1) D[a] + kappa nbar D[a^+] + gamma sum_j D[sigma_j^-]`
//!
//! with `H = sum_j [ (w_j/2) sigma_z_j + g (e^{-i phi_j} a^+ sigma_j^- + h.c.) ]`.
//! Depending on [`DetuningCoupling`] the schedule sets either the coupling phase
//! `phi_j` or the frequency offset `w_j`.
//!
//! Every operator involved maps each basis vector to at most one basis vector,
//! so the generator is applied with O(dim^2) work; [`full_me_rhs_dense`] builds
//! the same generator from explicit Kronecker products for cross-checking.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::{dissipator, DetuningCoupling};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::state::{Mat4, TwoQubitState};

/// Default tolerated population in the highest Fock level.
pub const DEFAULT_TAIL_TOL: f64 = 1e-8;

pub type CMatrix = DMatrix<C64>;

/// Density matrix of cavity (x) qubit 1 (x) qubit 2.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    pub rho: CMatrix,
    pub nmax: usize,
}

/// Truncated thermal photon distribution, renormalized on `0..=nmax`.
pub fn thermal_populations(nbar: f64, nmax: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..=nmax)
        .map(|n| {
            if nbar == 0.0 {
                if n == 0 { 1.0 } else { 0.0 }
            } else {
                (nbar / (nbar + 1.0)).powi(n as i32) / (nbar + 1.0)
            }
        })
        .collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    p
}

impl CompositeState {
    pub fn dim(&self) -> usize {
        4 * (self.nmax + 1)
    }

    /// `cavity (x) qubits` for a diagonal cavity state given by Fock populations.
    pub fn product(fock_populations: &[f64], qubits: &TwoQubitState) -> Result<Self> {
        if fock_populations.is_empty() {
            return Err(Error::InvalidParams("empty Fock distribution".into()));
        }
        let nmax = fock_populations.len() - 1;
        let dim = 4 * (nmax + 1);
        let q = qubits.matrix();
        let mut rho = CMatrix::zeros(dim, dim);
        for (n, &p) in fock_populations.iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    rho[(4 * n + i, 4 * n + j)] = q[(i, j)] * p;
                }
            }
        }
        Ok(Self { rho, nmax })
    }

    pub fn vacuum(qubits: &TwoQubitState, nmax: usize) -> Self {
        Self::product(&thermal_populations(0.0, nmax), qubits).expect("nonempty")
    }

    pub fn thermal(qubits: &TwoQubitState, nbar: f64, nmax: usize) -> Self {
        Self::product(&thermal_populations(nbar, nmax), qubits).expect("nonempty")
    }

    /// Population of the highest retained Fock level.
    pub fn tail_population(&self) -> f64 {
        tail_population(&self.rho, self.nmax)
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn mean_photon_number(&self) -> f64 {
        (0..self.dim())
            .map(|k| (k / 4) as f64 * self.rho[(k, k)].re)
            .sum()
    }
}

fn tail_population(rho: &CMatrix, nmax: usize) -> f64 {
    (0..4).map(|q| rho[(4 * nmax + q, 4 * nmax + q)].re).sum()
}

/// Trace over the Fock index.
pub fn partial_trace_cavity(c: &CompositeState) -> TwoQubitState {
    TwoQubitState::from_matrix_unchecked(partial_trace(&c.rho, c.nmax))
}

pub(crate) fn partial_trace(rho: &CMatrix, nmax: usize) -> Mat4 {
    let mut out = Mat4::zeros();
    for n in 0..=nmax {
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] += rho[(4 * n + i, 4 * n + j)];
            }
        }
    }
    out
}

/// Operator sending each basis vector to at most one basis vector:
/// `op |j> = c |i>` for `map[j] = Some((i, c))`.
#[derive(Debug, Clone)]
struct ShiftOp {
    map: Vec<Option<(usize, C64)>>,
}

impl ShiftOp {
    fn from_fn(dim: usize, f: impl Fn(usize) -> Option<(usize, C64)>) -> Self {
        Self {
            map: (0..dim).map(f).collect(),
        }
    }

    fn adjoint(&self) -> Self {
        let mut map = vec![None; self.map.len()];
        for (j, e) in self.map.iter().enumerate() {
            if let Some((i, c)) = e {
                map[*i] = Some((j, c.conj()));
            }
        }
        Self { map }
    }

    /// Diagonal of `op^+ op`.
    fn number(&self) -> Vec<f64> {
        self.map
            .iter()
            .map(|e| e.map_or(0.0, |(_, c)| c.norm_sqr()))
            .collect()
    }

    /// `out += scale * op * rho`
    fn left_mul_acc(&self, rho: &CMatrix, scale: C64, out: &mut CMatrix) {
        let dim = rho.nrows();
        for (j, e) in self.map.iter().enumerate() {
            if let Some((i, c)) = e {
                let f = scale * c;
                for k in 0..dim {
                    out[(*i, k)] += f * rho[(j, k)];
                }
            }
        }
    }

    /// `out += scale * rho * op`
    fn right_mul_acc(&self, rho: &CMatrix, scale: C64, out: &mut CMatrix) {
        let dim = rho.nrows();
        for (j, e) in self.map.iter().enumerate() {
            if let Some((i, c)) = e {
                let f = scale * c;
                for k in 0..dim {
                    out[(k, j)] += f * rho[(k, *i)];
                }
            }
        }
    }

    /// `out += rate * (2 L rho L^+ - {L^+ L, rho})`
    fn dissipate_acc(&self, rho: &CMatrix, rate: f64, out: &mut CMatrix) {
        if rate == 0.0 {
            return;
        }
        let dim = rho.nrows();
        let num = self.number();
        // 2 L rho L^+: entry (i, i') picks rho(j, j') for j -> i, j' -> i'
        for (j, e) in self.map.iter().enumerate() {
            let Some((i, c)) = e else { continue };
            for (jp, ep) in self.map.iter().enumerate() {
                let Some((ip, cp)) = ep else { continue };
                out[(*i, *ip)] += c * rho[(j, jp)] * cp.conj() * (2.0 * rate);
            }
        }
        for k in 0..dim {
            for l in 0..dim {
                let w = num[k] + num[l];
                if w != 0.0 {
                    out[(k, l)] -= rho[(k, l)] * (rate * w);
                }
            }
        }
    }
}

/// Precomputed operators for a given Fock cutoff.
#[derive(Debug, Clone)]
pub struct FullModel {
    nmax: usize,
    a: ShiftOp,
    a_dag: ShiftOp,
    sigma: [ShiftOp; 2],
    /// `a^+ sigma_j^-`
    raise: [ShiftOp; 2],
    /// `sigma_j^+ a`
    lower: [ShiftOp; 2],
    /// diagonal of `sigma_z` for each qubit
    sz: [Vec<f64>; 2],
}

fn qubit_excited(q: usize, qubit: usize) -> bool {
    // q = 2 (1 - e1) + (1 - e2)
    match qubit {
        0 => q < 2,
        _ => q % 2 == 0,
    }
}

/// Index change lowering `qubit` in `q`.
fn qubit_lowered(q: usize, qubit: usize) -> usize {
    match qubit {
        0 => q + 2,
        _ => q + 1,
    }
}

impl FullModel {
    pub fn new(nmax: usize) -> Self {
        let dim = 4 * (nmax + 1);
        let one = C64::new(1.0, 0.0);
        let a = ShiftOp::from_fn(dim, |k| {
            let (n, q) = (k / 4, k % 4);
            (n > 0).then(|| (4 * (n - 1) + q, one * (n as f64).sqrt()))
        });
        let a_dag = a.adjoint();
        let sigma = [0, 1].map(|j| {
            ShiftOp::from_fn(dim, |k| {
                let (n, q) = (k / 4, k % 4);
                qubit_excited(q, j).then(|| (4 * n + qubit_lowered(q, j), one))
            })
        });
        let raise = [0, 1].map(|j| {
            ShiftOp::from_fn(dim, |k| {
                let (n, q) = (k / 4, k % 4);
                (qubit_excited(q, j) && n < nmax)
                    .then(|| (4 * (n + 1) + qubit_lowered(q, j), one * ((n + 1) as f64).sqrt()))
            })
        });
        let lower = [raise[0].adjoint(), raise[1].adjoint()];
        let sz = [0, 1].map(|j| {
            (0..dim)
                .map(|k| if qubit_excited(k % 4, j) { 1.0 } else { -1.0 })
                .collect()
        });
        Self {
            nmax,
            a,
            a_dag,
            sigma,
            raise,
            lower,
            sz,
        }
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn dim(&self) -> usize {
        4 * (self.nmax + 1)
    }

    /// Generator at schedule values `(delta1, delta2)`.
    pub fn rhs(
        &self,
        rho: &CMatrix,
        delta1: f64,
        delta2: f64,
        params: &SystemParams,
        coupling: DetuningCoupling,
    ) -> CMatrix {
        let dim = self.dim();
        let mut out = CMatrix::zeros(dim, dim);
        let (phases, freqs) = match coupling {
            DetuningCoupling::Phase => ([delta1, delta2], [0.0, 0.0]),
            DetuningCoupling::Frequency => {
                let unit = params.collective_rate();
                ([0.0, 0.0], [delta1 * unit, delta2 * unit])
            }
        };
        let minus_i = C64::new(0.0, -1.0);

        // -i (H rho - rho H), H = X + X^+ + diagonal
        for j in 0..2 {
            let c = C64::from_polar(params.g, -phases[j]);
            self.raise[j].left_mul_acc(rho, minus_i * c, &mut out);
            self.lower[j].left_mul_acc(rho, minus_i * c.conj(), &mut out);
            self.raise[j].right_mul_acc(rho, -minus_i * c, &mut out);
            self.lower[j].right_mul_acc(rho, -minus_i * c.conj(), &mut out);
        }
        if freqs.iter().any(|w| *w != 0.0) {
            for k in 0..dim {
                let hk = 0.5 * (freqs[0] * self.sz[0][k] + freqs[1] * self.sz[1][k]);
                for l in 0..dim {
                    let hl = 0.5 * (freqs[0] * self.sz[0][l] + freqs[1] * self.sz[1][l]);
                    out[(k, l)] += minus_i * rho[(k, l)] * (hk - hl);
                }
            }
        }

        self.a.dissipate_acc(rho, params.kappa * (params.nbar + 1.0), &mut out);
        self.a_dag.dissipate_acc(rho, params.kappa * params.nbar, &mut out);
        for s in &self.sigma {
            s.dissipate_acc(rho, params.gamma, &mut out);
        }
        out
    }
}

/// Full generator applied to a composite state.
pub fn full_me_rhs(
    c: &CompositeState,
    delta1: f64,
    delta2: f64,
    params: &SystemParams,
    coupling: DetuningCoupling,
) -> Result<CMatrix> {
    let tail = c.tail_population();
    if tail > DEFAULT_TAIL_TOL {
        return Err(Error::FockTailOverflow {
            tau: f64::NAN,
            population: tail,
            nmax: c.nmax,
        });
    }
    Ok(FullModel::new(c.nmax).rhs(&c.rho, delta1, delta2, params, coupling))
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Reference implementation of [`full_me_rhs`] from dense Kronecker-product
/// operators.
pub fn full_me_rhs_dense(
    c: &CompositeState,
    delta1: f64,
    delta2: f64,
    params: &SystemParams,
    coupling: DetuningCoupling,
) -> Result<CMatrix> {
    let nc = c.nmax + 1;
    let re = |x: f64| C64::new(x, 0.0);
    let mut a = CMatrix::zeros(nc, nc);
    for n in 1..nc {
        a[(n - 1, n)] = re((n as f64).sqrt());
    }
    // single-qubit basis (|1>, |0>)
    let mut sm = CMatrix::zeros(2, 2);
    sm[(1, 0)] = re(1.0);
    let sz = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(1.0), re(-1.0)]));
    let i2 = CMatrix::identity(2, 2);
    let ic = CMatrix::identity(nc, nc);
    let i4 = CMatrix::identity(4, 4);

    let big_a = kron(&a, &i4);
    let s1 = kron(&ic, &kron(&sm, &i2));
    let s2 = kron(&ic, &kron(&i2, &sm));
    let z1 = kron(&ic, &kron(&sz, &i2));
    let z2 = kron(&ic, &kron(&i2, &sz));

    let (phases, freqs) = match coupling {
        DetuningCoupling::Phase => ([delta1, delta2], [0.0, 0.0]),
        DetuningCoupling::Frequency => {
            let unit = params.collective_rate();
            ([0.0, 0.0], [delta1 * unit, delta2 * unit])
        }
    };
    let ad = big_a.adjoint();
    let x = (&ad * &s1) * C64::from_polar(params.g, -phases[0])
        + (&ad * &s2) * C64::from_polar(params.g, -phases[1]);
    let h = &x + x.adjoint() + &z1 * re(0.5 * freqs[0]) + &z2 * re(0.5 * freqs[1]);

    let rho = &c.rho;
    let mut out = (&h * rho - rho * &h) * C64::new(0.0, -1.0);
    out += dissipator(&big_a, rho)? * re(params.kappa * (params.nbar + 1.0));
    out += dissipator(&ad, rho)? * re(params.kappa * params.nbar);
    out += dissipator(&s1, rho)? * re(params.gamma);
    out += dissipator(&s2, rho)? * re(params.gamma);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::DickeState;

    fn sample_state(nmax: usize) -> CompositeState {
        // entangled cavity-qubit pure state plus some mixing
        let dim = 4 * (nmax + 1);
        let psi: Vec<C64> = (0..dim)
            .map(|k| C64::new(((k * 7 + 3) as f64).sin(), ((k * 3 + 1) as f64).cos()) * (-(k as f64) / 4.0).exp())
            .collect();
        let v = nalgebra::DVector::from_vec(psi);
        let v = v.unscale(v.norm());
        let mut rho = &v * v.adjoint() * C64::new(0.7, 0.0);
        for k in 0..dim {
            rho[(k, k)] += C64::new(0.3 / dim as f64, 0.0);
        }
        CompositeState { rho, nmax }
    }

    #[test]
    fn sparse_generator_matches_dense() {
        let c = sample_state(3);
        let p = SystemParams::new(0.2).with_gamma(0.01).with_nbar(0.1);
        for coupling in [DetuningCoupling::Phase, DetuningCoupling::Frequency] {
            let fast = FullModel::new(3).rhs(&c.rho, 1.3, -0.4, &p, coupling);
            let dense = full_me_rhs_dense(&c, 1.3, -0.4, &p, coupling).unwrap();
            assert!((fast - dense).map(|z| z.norm()).max() < 1e-13);
        }
    }

    #[test]
    fn generator_is_trace_preserving_and_hermitian() {
        let c = sample_state(4);
        let p = SystemParams::new(0.3).with_gamma(1e-3).with_nbar(0.06);
        let m = FullModel::new(4).rhs(&c.rho, 10.0, 0.0, &p, DetuningCoupling::Phase);
        assert!(m.trace().norm() < 1e-12);
        assert!((&m - m.adjoint()).map(|z| z.norm()).max() < 1e-12);
    }

    #[test]
    fn global_ground_state_is_stationary() {
        let c = CompositeState::vacuum(&TwoQubitState::basis(3), 6);
        let m = full_me_rhs(&c, 0.0, 0.0, &SystemParams::new(0.1), DetuningCoupling::Phase).unwrap();
        assert_eq!(m.map(|z| z.norm()).max(), 0.0);
    }

    #[test]
    fn partial_trace_of_products() {
        let sigma = DickeState::new(0.1, 0.4, 0.2, 0.3, C64::new(0.05, -0.1))
            .unwrap()
            .to_computational()
            .unwrap();
        for c in [
            CompositeState::vacuum(&sigma, 5),
            CompositeState::thermal(&sigma, 0.06, 8),
        ] {
            let r = partial_trace_cavity(&c);
            assert!((r.matrix() - sigma.matrix()).map(|z| z.norm()).max() < 1e-14);
        }
    }

    #[test]
    fn partial_trace_against_index_summation() {
        let c = sample_state(2);
        let r = partial_trace_cavity(&c);
        // rho_q[i][j] = sum over n of <n,i|rho|n,j>, summing over all (n, m) pairs
        // and keeping only n == m
        for i in 0..4 {
            for j in 0..4 {
                let mut s = C64::new(0.0, 0.0);
                for row in 0..c.dim() {
                    for col in 0..c.dim() {
                        if row % 4 == i && col % 4 == j && row / 4 == col / 4 {
                            s += c.rho[(row, col)];
                        }
                    }
                }
                assert!((r.matrix()[(i, j)] - s).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn tail_overflow_is_reported() {
        let c = CompositeState::product(&[0.5, 0.5], &TwoQubitState::basis(3)).unwrap();
        assert!(matches!(
            full_me_rhs(&c, 0.0, 0.0, &SystemParams::new(0.1), DetuningCoupling::Phase),
            Err(Error::FockTailOverflow { .. })
        ));
    }

    #[test]
    fn thermal_distribution() {
        let p = thermal_populations(0.06, 8);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(p[8] < 1e-9);
        let c = CompositeState::thermal(&TwoQubitState::basis(3), 0.06, 8);
        assert!((c.mean_photon_number() - 0.06).abs() < 1e-8);
    }
}

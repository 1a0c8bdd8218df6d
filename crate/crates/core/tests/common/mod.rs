#![allow(dead_code)]

use detune::state::{DickeState, Mat4, TwoQubitState};
use detune::SystemParams;
use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Populations uniform on the simplex, coherence uniform in the allowed disc.
pub fn random_dicke(rng: &mut impl Rng) -> DickeState {
    let w: Vec<f64> = (0..4).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    let radius = (p[1] * p[2]).sqrt() * rng.gen::<f64>().sqrt();
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    DickeState {
        p_up: p[0],
        p_s: p[1],
        p_a: p[2],
        p_down: 1.0 - p[0] - p[1] - p[2],
        c_sa: C64::from_polar(radius, phase),
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    let u: f64 = 1.0 - rng.gen::<f64>();
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

fn ginibre4(rng: &mut impl Rng) -> Mat4 {
    Matrix4::from_fn(|_, _| C64::new(gaussian(rng), gaussian(rng)))
}

/// Random full-rank density matrix `G G^+ / tr`.
pub fn random_state(rng: &mut impl Rng) -> TwoQubitState {
    let g = ginibre4(rng);
    let m = g * g.adjoint();
    let t = m.trace();
    let m = m / t;
    TwoQubitState::from_matrix_unchecked((m + m.adjoint()) * C64::new(0.5, 0.0))
}

/// Random pure state mixed with white noise at weight `p`.
pub fn random_werner_like(rng: &mut impl Rng, p: f64) -> TwoQubitState {
    let psi = [0; 4].map(|_| C64::new(gaussian(rng), gaussian(rng)));
    let pure = TwoQubitState::pure(psi);
    let m = pure.matrix() * C64::new(1.0 - p, 0.0) + Mat4::identity() * C64::new(p / 4.0, 0.0);
    TwoQubitState::from_matrix_unchecked(m)
}

/// Haar-ish single-qubit unitary from a QR-free construction.
pub fn random_unitary2(rng: &mut impl Rng) -> Matrix2<C64> {
    let a = rng.gen_range(0.0..std::f64::consts::TAU);
    let b = rng.gen_range(0.0..std::f64::consts::TAU);
    let c = rng.gen_range(0.0..std::f64::consts::TAU);
    let theta = rng.gen::<f64>().sqrt().asin();
    let e = |x: f64| C64::from_polar(1.0, x);
    Matrix2::new(
        e(a) * theta.cos(),
        e(b) * theta.sin(),
        -e(c - b) * theta.sin(),
        e(c - a) * theta.cos(),
    )
}

pub fn kron2(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Mat4 {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

pub fn random_params(rng: &mut impl Rng, thermal: bool) -> SystemParams {
    let p = SystemParams::new(rng.gen_range(0.05..0.5)).with_gamma(rng.gen_range(0.0..0.01));
    if thermal {
        p.with_nbar(rng.gen_range(0.0..0.1))
    } else {
        p
    }
}

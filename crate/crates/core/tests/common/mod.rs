#![allow(dead_code)]

use mgzz::gates::{Mat2, Mat4};
use mgzz::{Observable, ProductState};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pure product state with uniformly random Bloch vectors.
pub fn random_pure_state(rng: &mut ChaCha8Rng, n: usize) -> ProductState {
    let bloch = (0..n)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect();
    ProductState::new(bloch).unwrap()
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

/// Haar-ish unitary from Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_fn(dim, dim, |_, _| c(gauss(rng), gauss(rng)));
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex64 = (0..dim).map(|r| m[(r, k)].conj() * m[(r, j)]).sum();
            for r in 0..dim {
                let x = m[(r, k)];
                m[(r, j)] -= proj * x;
            }
        }
        let norm: f64 = (0..dim).map(|r| m[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..dim {
            m[(r, j)] /= norm;
        }
    }
    m
}

pub fn random_u4(rng: &mut ChaCha8Rng) -> Mat4 {
    let u = random_unitary(rng, 4);
    Mat4::from_fn(|r, s| u[(r, s)])
}

pub fn random_u2(rng: &mut ChaCha8Rng) -> Mat2 {
    let u = random_unitary(rng, 2);
    Mat2::from_fn(|r, s| u[(r, s)])
}

/// `exp(A)` by scaling and squaring a Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let norm: f64 = a.iter().map(|z| z.norm()).sum();
    let mut k = 0;
    while norm / 2f64.powi(k) > 0.5 {
        k += 1;
    }
    let scaled = a / c(2f64.powi(k), 0.0);
    let dim = a.nrows();
    let mut term = DMatrix::<Complex64>::identity(dim, dim);
    let mut sum = term.clone();
    for i in 1..30 {
        term = &term * &scaled / c(i as f64, 0.0);
        sum += &term;
    }
    for _ in 0..k {
        sum = &sum * &sum;
    }
    sum
}

/// Largest coefficient difference over the union of keys.
pub fn max_coefficient_gap(a: &Observable, b: &Observable) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k) - b.get(k)).abs())
        .fold(0.0, f64::max)
}

//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's evaluation paths.
#![allow(dead_code)]

use num_rational::BigRational as Q;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn int(n: i64) -> Q {
    q(n, 1)
}

/// Exact OPO moments for rational κ, ε, ω.
pub fn opo_exact(kappa: &Q, epsilon: &Q, omega: &Q) -> (Q, Q) {
    let lam = kappa / int(2) + epsilon;
    let mu = kappa / int(2) - epsilon;
    let w2 = omega * omega;
    let a = int(1) / (&w2 + &mu * &mu);
    let b = int(1) / (&w2 + &lam * &lam);
    let c = (&lam * &lam - &mu * &mu) / int(4);
    (&c * (&a - &b), &c * (&a + &b))
}

/// Exact squeezed-coherent steady state with rational sin φ, cos φ.
pub fn sigma_sc_exact(n_photons: &Q, m: &Q, beta: &Q, delta: &Q, sin: &Q, cos: &Q) -> Q {
    let n = int(1) + int(2) * n_photons;
    let den =
        &n * (&n * &n / int(4) + delta * delta - m * m) + beta * beta * (&n / int(2) + m * cos);
    beta * (delta + m * sin) / (int(2) * den)
}

/// Exact squeezed-vacuum steady state with rational sin φ, cos φ.
pub fn sigma_svsc_exact(n_photons: &Q, m: &Q, beta: &Q, delta: &Q, sin: &Q, cos: &Q) -> Q {
    let n = int(1) + int(2) * n_photons;
    let rate = &n / int(2) + m;
    let den = &n / int(2) * (beta * beta + int(2) * delta * delta + &rate * &rate)
        + beta * beta * m * cos;
    beta * (delta + int(2) * m * &rate * sin) / (int(2) * den)
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().expect("representable")
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = order as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

pub fn gl_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, order: usize) -> f64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    gauss_legendre(order)
        .into_iter()
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Steady states in γ = 1 units, written out independently of the library.
pub fn sigma_oracle(svsc: bool, n_photons: f64, m: f64, beta: f64, delta: f64, phi: f64) -> f64 {
    let n = 1.0 + 2.0 * n_photons;
    if svsc {
        let rate = n / 2.0 + m;
        0.5 * beta * (delta + 2.0 * m * rate * phi.sin())
            / (n / 2.0 * (beta * beta + 2.0 * delta * delta + rate * rate)
                + beta * beta * m * phi.cos())
    } else {
        beta * (delta + m * phi.sin())
            / (2.0
                * (n * (n * n / 4.0 + delta * delta - m * m)
                    + beta * beta * (n / 2.0 + m * phi.cos())))
    }
}

/// Mean of |F| over a half wavelength, in ħkγ/2 units, by fixed-order
/// Gauss–Legendre on each quarter in the phase variable u = kx.
pub fn abs_mean_oracle(
    svsc: bool,
    degree: f64,
    m_sign: f64,
    beta0: f64,
    delta: f64,
    phi: f64,
    order: usize,
) -> f64 {
    let r = -(1.0 - degree).ln() / 2.0;
    let (n_photons, m) = (r.sinh().powi(2), m_sign * r.sinh() * r.cosh());
    let local = |u: f64| {
        (-2.0 * beta0 * u.sin() * sigma_oracle(svsc, n_photons, m, beta0 * u.cos(), delta, phi))
            .abs()
    };
    let total =
        gl_integrate(local, 0.0, PI / 2.0, order) + gl_integrate(local, PI / 2.0, PI, order);
    total / PI
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

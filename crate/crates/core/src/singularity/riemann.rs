//! Riemann-sphere view of the coupling plane in Mollweide coordinates.
//!
//! Orientation: `0` maps to the south pole, `∞` to the north pole, `arg λ` is
//! the longitude, so the positive real axis is the central meridian.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

pub const MOLLWEIDE_TOL: f64 = 1e-10;
pub const ORIENTATION: &str = "0=south pole, inf=north pole, longitude=arg(lambda)";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    pub lambda: Complex64,
    pub latitude: f64,
    pub longitude: f64,
    pub x: f64,
    pub y: f64,
    /// Carried through from the input (a gap value, say).
    pub value: f64,
    pub converged: bool,
}

/// Latitude and longitude of the inverse stereographic image of `λ`.
pub fn sphere_coordinates(lambda: Complex64) -> (f64, f64) {
    (2.0 * lambda.norm().atan() - FRAC_PI_2, lambda.im.atan2(lambda.re))
}

/// Mollweide `(x, y)` for a latitude/longitude pair; the flag is false when
/// the auxiliary-angle iteration misses the tolerance.
pub fn mollweide(latitude: f64, longitude: f64) -> (f64, f64, bool) {
    let target = PI * latitude.sin();
    let (theta, ok) = if (FRAC_PI_2 - latitude.abs()) < 1e-12 {
        (FRAC_PI_2.copysign(latitude), true)
    } else {
        let mut t = latitude;
        let mut ok = false;
        for _ in 0..200 {
            let f = 2.0 * t + (2.0 * t).sin() - target;
            let df = 2.0 + 2.0 * (2.0 * t).cos();
            if df == 0.0 {
                break;
            }
            let dt = f / df;
            t -= dt;
            if dt.abs() < MOLLWEIDE_TOL {
                ok = true;
                break;
            }
        }
        (t, ok)
    };
    (2.0 * SQRT_2 / PI * longitude * theta.cos(), SQRT_2 * theta.sin(), ok)
}

pub fn project(lambda: Complex64, value: f64) -> SpherePoint {
    let (latitude, longitude) = sphere_coordinates(lambda);
    let (x, y, converged) = mollweide(latitude, longitude);
    SpherePoint { lambda, latitude, longitude, x, y, value, converged }
}

/// Projects every `(λ, value)` pair.
pub fn riemann_export(points: &[(Complex64, f64)]) -> Vec<SpherePoint> {
    points.iter().map(|&(l, v)| project(l, v)).collect()
}

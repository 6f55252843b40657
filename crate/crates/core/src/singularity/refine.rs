//! Local refinement of gap minima: simplex descent on the gap, then a secant
//! polish on the analytic pair discriminant `(z_a − z_b)²`.

use num_complex::Complex64;

use super::grid::min_pairwise;
use crate::error::{Error, Result};
use crate::hamiltonian::LinearFamily;
use crate::linalg::general_eigenvalues;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Exceptional,
    Avoided,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Exceptional => "exceptional",
            Classification::Avoided => "avoided",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RefineOptions {
    /// Gap below which a refined point counts as exceptional, relative to
    /// `max(1, max|E|)` at the point.
    pub threshold: f64,
    pub max_iter: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions { threshold: 1e-7, max_iter: 4000 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RefinedPoint {
    pub lambda: Complex64,
    pub gap: f64,
    pub classification: Classification,
    /// Positions (in ascending real part) of the coalescing pair at `lambda`.
    pub pair: (usize, usize),
    pub iterations: usize,
}

fn closest_pair(vals: &[Complex64]) -> (usize, usize) {
    let mut best = (f64::INFINITY, (0, 1));
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let d = (vals[i] - vals[j]).norm();
            if d < best.0 {
                best = (d, (i, j));
            }
        }
    }
    best.1
}

fn gap_at(family: &LinearFamily, lambda: Complex64) -> f64 {
    general_eigenvalues(&family.at(lambda)).map(|v| min_pairwise(&v)).unwrap_or(f64::INFINITY)
}

fn is_real_symmetric(family: &LinearFamily) -> bool {
    family.h0 == family.h0.transpose() && family.v == family.v.transpose()
}

/// Nelder–Mead on `f` over the plane.
fn simplex_minimize(f: impl Fn(Complex64) -> f64, start: Complex64, step: f64, max_iter: usize) -> (Complex64, f64, usize) {
    let mut pts = [start, start + Complex64::new(step, 0.0), start + Complex64::new(0.0, step)];
    let mut vals = pts.map(&f);
    let mut it = 0;
    while it < max_iter {
        it += 1;
        let mut order = [0, 1, 2];
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.map(|k| pts[k]);
        vals = order.map(|k| vals[k]);
        let size = (pts[1] - pts[0]).norm().max((pts[2] - pts[0]).norm());
        if size <= 1e-15 * pts[0].norm().max(1e-300) {
            break;
        }
        let centroid = (pts[0] + pts[1]) / 2.0;
        let reflect = centroid + (centroid - pts[2]);
        let fr = f(reflect);
        if fr < vals[0] {
            let expand = centroid + (reflect - centroid) * 2.0;
            let fe = f(expand);
            if fe < fr {
                pts[2] = expand;
                vals[2] = fe;
            } else {
                pts[2] = reflect;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflect;
            vals[2] = fr;
        } else {
            let contract = if fr < vals[2] { centroid + (reflect - centroid) * 0.5 } else { centroid + (pts[2] - centroid) * 0.5 };
            let fc = f(contract);
            if fc < vals[2].min(fr) {
                pts[2] = contract;
                vals[2] = fc;
            } else {
                for k in 1..3 {
                    pts[k] = pts[0] + (pts[k] - pts[0]) * 0.5;
                    vals[k] = f(pts[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    (pts[best], vals[best], it)
}

/// Golden-section search on the real axis in `[a, b]`.
fn golden_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (1.0 + c.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Secant iteration on `D(λ) = (z_a − z_b)²` for the closest pair.
fn secant_polish(family: &LinearFamily, start: Complex64, max_iter: usize) -> Option<Complex64> {
    let disc = |l: Complex64| -> Option<Complex64> {
        let v = general_eigenvalues(&family.at(l)).ok()?;
        let (a, b) = closest_pair(&v);
        Some((v[a] - v[b]) * (v[a] - v[b]))
    };
    let h = 1e-7 * start.norm().max(1e-3);
    let mut x0 = start + Complex64::new(h, h);
    let mut x1 = start;
    let mut f0 = disc(x0)?;
    let mut f1 = disc(x1)?;
    for _ in 0..max_iter {
        let denom = f1 - f0;
        if denom.norm() == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if !x2.re.is_finite() || !x2.im.is_finite() {
            return None;
        }
        let done = (x2 - x1).norm() <= 4.0 * f64::EPSILON * x2.norm();
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = disc(x1)?;
        if done {
            break;
        }
    }
    Some(x1)
}

/// Refines a gap minimum starting from `guess`.
///
/// A real guess on a real symmetric family stays on the real axis, where the
/// spectrum is real and diagonalizable, and is always classified as avoided.
pub fn refine_exceptional_point(family: &LinearFamily, guess: Complex64, opts: &RefineOptions) -> Result<RefinedPoint> {
    if family.dim() < 2 {
        return Err(Error::InvalidArgument("need at least two levels".into()));
    }
    let scale = guess.norm().max(1e-6);
    if guess.im == 0.0 && is_real_symmetric(family) {
        let f = |x: f64| gap_at(family, Complex64::new(x, 0.0));
        let half = 0.1 * scale;
        let (x, gap) = golden_minimize(f, guess.re - half, guess.re + half, 1e-12);
        let lambda = Complex64::new(x, 0.0);
        let vals = general_eigenvalues(&family.at(lambda))?;
        return Ok(RefinedPoint { lambda, gap, classification: Classification::Avoided, pair: closest_pair(&vals), iterations: 0 });
    }
    let upper = guess.im >= 0.0;
    let f = |l: Complex64| if l.im != 0.0 && (l.im > 0.0) != upper { f64::INFINITY } else { gap_at(family, l) };
    let step = 0.05 * guess.im.abs().max(1e-3 * scale);
    let (mut lambda, mut gap, iterations) = simplex_minimize(f, guess, step, opts.max_iter);
    if let Some(p) = secant_polish(family, lambda, 60) {
        let gp = gap_at(family, p);
        if gp <= gap && (p - lambda).norm() < 0.1 * scale {
            lambda = p;
            gap = gp;
        }
    }
    if !gap.is_finite() {
        return Err(Error::NoConvergence { method: "gap refinement", detail: format!("from {guess}") });
    }
    let vals = general_eigenvalues(&family.at(lambda))?;
    let spread = vals.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let classification = if gap < opts.threshold * spread { Classification::Exceptional } else { Classification::Avoided };
    Ok(RefinedPoint { lambda, gap, classification, pair: closest_pair(&vals), iterations })
}

/// Follows the eigenvalues from `λ = 0` along the ray to `target` and reports
/// which unperturbed levels (full-basis indices) form the closest pair there.
pub fn continued_pair(family: &LinearFamily, target: Complex64) -> Result<(usize, usize)> {
    let n = family.dim();
    let mut prev = general_eigenvalues(&family.at(Complex64::new(0.0, 0.0)))?;
    let mut labels: Vec<usize> = (0..n).collect();
    let mut t: f64 = 0.0;
    let mut dt: f64 = 1.0 / 256.0;
    let t_end = 1.0 - 1e-4;
    while t < t_end {
        let t_next = (t + dt).min(t_end);
        let cur = general_eigenvalues(&family.at(target * t_next))?;
        // Greedy nearest matching; retried with a smaller step when ambiguous.
        let mut used = vec![false; n];
        let mut new_labels = vec![0; n];
        let mut ambiguous = false;
        for (i, p) in prev.iter().enumerate() {
            let mut d: Vec<(f64, usize)> = cur.iter().enumerate().filter(|(j, _)| !used[*j]).map(|(j, c)| ((c - p).norm(), j)).collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0));
            if d.len() > 1 && d[1].0 < 2.0 * d[0].0 {
                ambiguous = true;
            }
            used[d[0].1] = true;
            new_labels[d[0].1] = labels[i];
        }
        if ambiguous && dt > 1e-7 {
            dt /= 2.0;
            continue;
        }
        prev = cur;
        labels = new_labels;
        t = t_next;
        dt = (dt * 1.5).min(1.0 / 64.0);
    }
    let (a, b) = closest_pair(&prev);
    let (a, b) = (family.indices[labels[a]], family.indices[labels[b]]);
    Ok((a.min(b), a.max(b)))
}

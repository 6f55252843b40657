//! Time-ordered (Dyson) expansion of `⟨out|U(t)|in⟩` in powers of `λ`.
//!
//! In the interaction picture `V_I(t)_{mn} = V_{mn} e^{i(E_m−E_n)t}`, and the
//! order-`k` state is `c_k(t) = −i∫₀ᵗ V_I(s) c_{k−1}(s) ds`. Every component
//! stays a [`PhasePolynomial`], so all nested integrals are exact. `λ` is kept
//! symbolic: coefficient `k` multiplies `λ^k`.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;

use super::phase::{c_one, PhasePolynomial};
use crate::error::{Error, Result};
use crate::hamiltonian::{scaled_anharmonic_family, Sector};
use crate::oscillator::{scaled_to_orthonormal_radicand, TruncationSpec};
use crate::scalar::{RealScalar, Scalar};

/// Default cap on the order; the number of terms grows roughly as `16^order`.
pub const DEFAULT_DYSON_ORDER_CAP: usize = 6;

#[derive(Clone, Debug)]
pub struct DysonAmplitude {
    pub state_in: usize,
    pub state_out: usize,
    /// Interaction-picture coefficient of `λ^k`, without the factor `√radicand`.
    pub per_order: Vec<PhasePolynomial<BigRational>>,
    /// `in!/out!`; the orthonormal amplitude carries `√radicand`.
    pub radicand: BigRational,
    /// Unperturbed energy of the final state.
    pub e_out: BigRational,
}

impl DysonAmplitude {
    pub fn order(&self) -> usize {
        self.per_order.len() - 1
    }

    /// Coefficient of `λ^k` in the interaction-picture amplitude at `t`.
    pub fn coefficient(&self, k: usize, t: f64) -> Complex64 {
        self.per_order[k].eval(t) * self.radicand.to_f64().sqrt()
    }

    /// Interaction-picture amplitude `⟨out|e^{iH₀t}U(t)|in⟩` through the stored order.
    pub fn interaction(&self, lambda: f64, t: f64) -> Complex64 {
        let mut pow = 1.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..self.per_order.len() {
            acc += self.coefficient(k, t) * pow;
            pow *= lambda;
        }
        acc
    }

    /// Schrödinger-picture amplitude `⟨out|U(t)|in⟩`.
    pub fn amplitude(&self, lambda: f64, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.e_out.to_f64() * t) * self.interaction(lambda, t)
    }
}

/// Builds the symbolic Dyson amplitude through `order` (at most `cap`).
pub fn dyson_series_capped(
    trunc: &TruncationSpec,
    order: usize,
    state_in: usize,
    state_out: usize,
    cap: usize,
) -> Result<DysonAmplitude> {
    if order > cap {
        return Err(Error::OrderCap { requested: order, limit: cap });
    }
    if state_in >= trunc.n_max || state_out >= trunc.n_max {
        return Err(Error::InvalidArgument(format!("states {state_in}, {state_out} outside n_max {}", trunc.n_max)));
    }
    let sector = Sector::of_level(state_in);
    let fam = scaled_anharmonic_family::<BigRational>(trunc, sector);
    let e_out = BigRational::from_f64(trunc.omega) * (BigRational::from_i64(state_out as i64) + BigRational::from_ratio(1, 2));
    let radicand = scaled_to_orthonormal_radicand(state_out, state_in);
    let out_pos = fam.indices.iter().position(|&i| i == state_out);
    let d = fam.indices.len();
    let start = sector.position(state_in);
    let mut c: Vec<PhasePolynomial<BigRational>> =
        (0..d).map(|m| if m == start { PhasePolynomial::constant(c_one()) } else { PhasePolynomial::zero() }).collect();
    let minus_i = Complex::new(BigRational::zero(), -BigRational::from_i64(1));
    let mut per_order = Vec::with_capacity(order + 1);
    let pick = |c: &[PhasePolynomial<BigRational>]| out_pos.map(|p| c[p].clone()).unwrap_or_default();
    per_order.push(pick(&c));
    for _ in 1..=order {
        let next: Vec<PhasePolynomial<BigRational>> = (0..d)
            .map(|m| {
                let mut integrand = PhasePolynomial::zero();
                for n in 0..d {
                    let v = &fam.v[(m, n)];
                    if v.is_zero() || c[n].is_zero() {
                        continue;
                    }
                    let omega = fam.energies[m].clone() - fam.energies[n].clone();
                    let term = c[n].shift_phase(&omega).scale(&Complex::new(v.clone(), BigRational::zero()));
                    integrand = integrand.add(&term);
                }
                integrand.integrate().scale(&minus_i)
            })
            .collect();
        c = next;
        per_order.push(pick(&c));
    }
    Ok(DysonAmplitude { state_in, state_out, per_order, radicand, e_out })
}

/// [`dyson_series_capped`] with the default cap.
pub fn dyson_series(trunc: &TruncationSpec, order: usize, state_in: usize, state_out: usize) -> Result<DysonAmplitude> {
    dyson_series_capped(trunc, order, state_in, state_out, DEFAULT_DYSON_ORDER_CAP)
}

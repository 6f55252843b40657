//! Pauli-string decomposition and first-order Trotter evolution.
//!
//! A string is stored as bit masks `(x, z)` with `P = i^{|x∧z|} X^x Z^z`;
//! character `k` of the printed word acts on bit `n_q − 1 − k` of the basis
//! index, so the first character is the most significant qubit.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{anharmonic_family, Sector};
use crate::linalg::{hermitian_eigen, Mat};
use crate::oscillator::TruncationSpec;
use crate::scalar::RealScalar;

/// Relative drop threshold applied to `max |H_ij|`.
pub const DROP_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub string: String,
    pub coeff: f64,
    pub x: u64,
    pub z: u64,
}

impl PauliTerm {
    pub fn new(n_q: usize, x: u64, z: u64, coeff: f64) -> Self {
        PauliTerm { string: pauli_word(n_q, x, z), coeff, x, z }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn from_word(word: &str, coeff: f64) -> Result<Self> {
        let n = word.len();
        let (mut x, mut z) = (0u64, 0u64);
        for (k, ch) in word.chars().enumerate() {
            let bit = 1u64 << (n - 1 - k);
            match ch {
                'I' => {}
                'X' => x |= bit,
                'Z' => z |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                _ => return Err(Error::InvalidArgument(format!("bad Pauli letter {ch:?} in {word:?}"))),
            }
        }
        Ok(PauliTerm { string: word.to_string(), coeff, x, z })
    }
}

pub fn pauli_word(n_q: usize, x: u64, z: u64) -> String {
    (0..n_q)
        .map(|k| {
            let bit = 1u64 << (n_q - 1 - k);
            match (x & bit != 0, z & bit != 0) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            }
        })
        .collect()
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn parity_sign(bits: u64) -> f64 {
    if bits.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn walsh_hadamard(v: &mut [Complex64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

fn qubits_for(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("dimension {dim} is not a power of two")));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// All `4^{n_q}` coefficients `tr(P·H)/2^{n_q}`, indexed by `(x << n_q) | z`.
pub fn pauli_coefficients(h: &Mat<Complex64>) -> Result<Vec<Complex64>> {
    let dim = h.dim();
    qubits_for(dim)?;
    let blocks: Vec<Vec<Complex64>> = (0..dim as u64)
        .into_par_iter()
        .map(|x| {
            let mut f: Vec<Complex64> = (0..dim).map(|c| h[(c, c ^ x as usize)]).collect();
            walsh_hadamard(&mut f);
            f.iter().enumerate().map(|(z, v)| i_pow((x & z as u64).count_ones()) * v / dim as f64).collect()
        })
        .collect();
    Ok(blocks.concat())
}

/// Decomposition of a Hermitian matrix; the identity term is returned
/// separately and terms below the relative threshold are dropped.
#[derive(Clone, Debug)]
pub struct PauliDecomposition {
    pub n_q: usize,
    pub identity: f64,
    pub terms: Vec<PauliTerm>,
    pub dropped: usize,
}

impl PauliDecomposition {
    pub fn coeff(&self, word: &str) -> f64 {
        if word.chars().all(|c| c == 'I') {
            return self.identity;
        }
        self.terms.iter().find(|t| t.string == word).map(|t| t.coeff).unwrap_or(0.0)
    }

    /// `Σ c·P` as a dense matrix.
    pub fn reconstruct(&self) -> Mat<Complex64> {
        let dim = 1usize << self.n_q;
        let mut m = Mat::from_fn(dim, dim, |i, j| if i == j { Complex64::new(self.identity, 0.0) } else { Complex64::new(0.0, 0.0) });
        for t in &self.terms {
            let ph = i_pow((t.x & t.z).count_ones());
            for c in 0..dim {
                let r = c ^ t.x as usize;
                m[(r, c)] += ph * parity_sign(t.z & c as u64) * t.coeff;
            }
        }
        m
    }
}

pub fn pauli_decompose(h: &Mat<Complex64>) -> Result<PauliDecomposition> {
    pauli_decompose_with(h, DROP_THRESHOLD)
}

/// Decomposition dropping terms below `drop_threshold·max|H_ij|`.
pub fn pauli_decompose_with(h: &Mat<Complex64>, drop_threshold: f64) -> Result<PauliDecomposition> {
    let dim = h.dim();
    let n_q = qubits_for(dim)?;
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let asym = h.max_abs_diff(&h.adjoint());
    if asym > 1e-12 * scale {
        return Err(Error::NotHermitian(asym));
    }
    let coeffs = pauli_coefficients(h)?;
    let cut = drop_threshold * scale;
    let mut terms = Vec::new();
    let mut dropped = 0;
    for (idx, c) in coeffs.iter().enumerate().skip(1) {
        if c.norm() > cut {
            let (x, z) = ((idx >> n_q) as u64, (idx & (dim - 1)) as u64);
            terms.push(PauliTerm::new(n_q, x, z, c.re));
        } else if c.norm() > 0.0 {
            dropped += 1;
        }
    }
    Ok(PauliDecomposition { n_q, identity: coeffs[0].re, terms, dropped })
}

/// The single-site Hamiltonian with `n_max = 2^{n_q}`, `ω = 1`.
pub fn anharmonic_qubit_hamiltonian(n_q: usize, lambda: f64) -> Result<Mat<Complex64>> {
    let trunc = TruncationSpec::unit(1usize << n_q)?;
    Ok(anharmonic_family(&trunc, Sector::Full).at_real(lambda).to_complex())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResourceEstimate {
    pub n_q: usize,
    pub n_nz: usize,
    pub depth_bound: usize,
    /// Structurally nonzero strings that vanish at the requested coupling.
    pub accidental_zeros: Vec<String>,
}

/// `m = f²·s` with `s` squarefree.
fn squarefree_split(mut m: u64) -> (u64, u64) {
    let (mut f, mut s) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (f, s * m)
}

/// One radical class `q·λ^power·√radical` of an exact Pauli coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPart {
    pub power: u32,
    pub radical: u64,
    pub q: BigRational,
}

/// Pauli coefficient of `h0 + λ·φ⁴` as an exact sum of radical classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPauliTerm {
    pub string: String,
    pub x: u64,
    pub z: u64,
    pub parts: Vec<ExactPart>,
}

impl ExactPauliTerm {
    pub fn eval(&self, lambda: f64) -> f64 {
        self.parts.iter().map(|p| p.q.to_f64() * (p.radical as f64).sqrt() * lambda.powi(p.power as i32)).sum()
    }
}

/// Exact Pauli coefficients of the single-site Hamiltonian at
/// `n_max = 2^{n_q}`, as functions of `λ`. Strings whose coefficient vanishes
/// identically are omitted; the identity is included.
///
/// Orthonormal entries are `q·√s` with rational `q` and squarefree `s`, so a
/// coefficient vanishes identically iff every radical class cancels exactly
/// in both the `λ⁰` and `λ¹` parts.
pub fn exact_pauli_terms(n_q: usize) -> Result<Vec<ExactPauliTerm>> {
    let dim = 1usize << n_q;
    let trunc = TruncationSpec::unit(dim)?;
    let s1 = crate::oscillator::scaled_phi4::<BigRational>(&trunc);
    // per x = row ⊕ col: (row, λ-power, rational factor, squarefree radical)
    let mut entries: Vec<Vec<(usize, u32, BigRational, u64)>> = vec![Vec::new(); dim];
    for i in 0..dim {
        entries[0].push((i, 0, BigRational::new((2 * i as i64 + 1).into(), 2.into()), 1));
        for j in 0..dim {
            let v = &s1[(i, j)];
            if v.is_zero() {
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let m: u64 = (lo as u64 + 1..=hi as u64).product();
            let (f, sq) = squarefree_split(m);
            let q = if j >= i { v * BigRational::from_integer(f.into()) } else { v * BigRational::new(f.into(), m.into()) };
            entries[i ^ j].push((i, 1, q, sq));
        }
    }
    let norm = BigRational::new(1.into(), (dim as u64).into());
    let per_x: Vec<Vec<ExactPauliTerm>> = (0..dim)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            for z in 0..dim {
                let y = (x & z).count_ones();
                if y % 2 == 1 {
                    // real symmetric input: odd Y count cancels pairwise
                    continue;
                }
                let mut groups: BTreeMap<(u32, u64), BigRational> = BTreeMap::new();
                for (c, pow, q, sq) in &entries[x] {
                    let acc = groups.entry((*pow, *sq)).or_insert_with(BigRational::zero);
                    if (z & c).count_ones() % 2 == 0 {
                        *acc += q;
                    } else {
                        *acc -= q;
                    }
                }
                let sign = if y % 4 == 0 { norm.clone() } else { -norm.clone() };
                let parts: Vec<ExactPart> = groups
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|((power, radical), v)| ExactPart { power, radical, q: v * &sign })
                    .collect();
                if !parts.is_empty() {
                    out.push(ExactPauliTerm { string: pauli_word(n_q, x as u64, z as u64), x: x as u64, z: z as u64, parts });
                }
            }
            out
        })
        .collect();
    Ok(per_x.concat())
}

/// Exact support flags indexed like [`pauli_coefficients`].
pub fn structural_support(n_q: usize) -> Result<Vec<bool>> {
    let mut support = vec![false; 1usize << (2 * n_q)];
    for t in exact_pauli_terms(n_q)? {
        support[((t.x as usize) << n_q) | t.z as usize] = true;
    }
    Ok(support)
}

/// Counts structurally nonzero non-identity strings of the digitized
/// single-site Hamiltonian; `depth_bound = n_nz·(2n_q + 1)`. Strings that are
/// nonzero in general but fall below `drop_threshold·max|H|` at `lambda` are
/// listed as accidental zeros.
pub fn count_resources(n_q: usize, lambda: f64, drop_threshold: f64) -> Result<ResourceEstimate> {
    let support = structural_support(n_q)?;
    let h = anharmonic_qubit_hamiltonian(n_q, lambda)?;
    let cut = drop_threshold * h.max_abs();
    let here = pauli_coefficients(&h)?;
    let dim = 1usize << n_q;
    let mut n_nz = 0;
    let mut accidental_zeros = Vec::new();
    for idx in 1..support.len() {
        if support[idx] {
            n_nz += 1;
            if here[idx].norm() <= cut {
                accidental_zeros.push(pauli_word(n_q, (idx >> n_q) as u64, (idx & (dim - 1)) as u64));
            }
        }
    }
    Ok(ResourceEstimate { n_q, n_nz, depth_bound: n_nz * (2 * n_q + 1), accidental_zeros })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrdering {
    ByMagnitudeDesc,
    Lexicographic,
    AsGiven,
}

impl std::str::FromStr for TermOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "by_magnitude_desc" | "magnitude" => Ok(TermOrdering::ByMagnitudeDesc),
            "lexicographic" | "lex" => Ok(TermOrdering::Lexicographic),
            "as_given" => Ok(TermOrdering::AsGiven),
            _ => Err(Error::InvalidArgument(format!("unknown term ordering {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrotterPlan {
    pub n_q: usize,
    pub terms: Vec<PauliTerm>,
    pub dt: f64,
    pub steps: usize,
    pub ordering: TermOrdering,
}

impl TrotterPlan {
    /// Drops identity strings and orders the rest.
    pub fn new(n_q: usize, terms: Vec<PauliTerm>, dt: f64, steps: usize, ordering: TermOrdering) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidArgument(format!("Trotter step must be positive, got {dt}")));
        }
        let mut terms: Vec<PauliTerm> = terms.into_iter().filter(|t| !t.is_identity()).collect();
        match ordering {
            TermOrdering::ByMagnitudeDesc => {
                terms.sort_by(|a, b| b.coeff.abs().total_cmp(&a.coeff.abs()).then_with(|| a.string.cmp(&b.string)))
            }
            TermOrdering::Lexicographic => terms.sort_by(|a, b| a.string.cmp(&b.string)),
            TermOrdering::AsGiven => {}
        }
        Ok(TrotterPlan { n_q, terms, dt, steps, ordering })
    }

    pub fn from_decomposition(d: &PauliDecomposition, dt: f64, steps: usize, ordering: TermOrdering) -> Result<Self> {
        Self::new(d.n_q, d.terms.clone(), dt, steps, ordering)
    }
}

/// `ψ ← exp(−iθP)ψ = cos θ·ψ − i sin θ·Pψ`, pairing amplitudes `c` and `c⊕x`.
pub fn apply_rotation(state: &mut [Complex64], term: &PauliTerm, theta: f64) {
    let (cos, sin) = (theta.cos(), theta.sin());
    let ph = i_pow((term.x & term.z).count_ones()) * Complex64::new(0.0, -sin);
    let x = term.x as usize;
    if x == 0 {
        for (c, a) in state.iter_mut().enumerate() {
            *a = *a * cos + ph * parity_sign(term.z & c as u64) * *a;
        }
        return;
    }
    for c in 0..state.len() {
        let d = c ^ x;
        if c < d {
            let (a, b) = (state[c], state[d]);
            state[c] = a * cos + ph * parity_sign(term.z & d as u64) * b;
            state[d] = b * cos + ph * parity_sign(term.z & c as u64) * a;
        }
    }
}

pub fn apply_step(state: &mut [Complex64], plan: &TrotterPlan) {
    for t in &plan.terms {
        apply_rotation(state, t, plan.dt * t.coeff);
    }
}

/// Dense matrix of one Trotter step.
pub fn trotter_step_unitary(plan: &TrotterPlan) -> Mat<Complex64> {
    let dim = 1usize << plan.n_q;
    let cols: Vec<Vec<Complex64>> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[j] = Complex64::new(1.0, 0.0);
            apply_step(&mut v, plan);
            v
        })
        .collect();
    Mat::from_fn(dim, dim, |i, j| cols[j][i])
}

#[derive(Clone, Debug)]
pub struct TrotterTrace {
    pub t: Vec<f64>,
    pub states: Vec<usize>,
    /// `probs[k][s]`: probability of `states[s]` after `k` steps.
    pub probs: Vec<Vec<f64>>,
    pub max_norm_drift: f64,
}

pub fn simulate_trotter(plan: &TrotterPlan, state_in: &[Complex64], observable_states: &[usize]) -> Result<TrotterTrace> {
    let dim = 1usize << plan.n_q;
    if state_in.len() != dim {
        return Err(Error::InvalidArgument(format!("state has length {}, expected {dim}", state_in.len())));
    }
    let norm = |v: &[Complex64]| v.iter().map(|a| a.norm_sqr()).sum::<f64>();
    if (norm(state_in) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("input state has norm² {}", norm(state_in))));
    }
    if let Some(&s) = observable_states.iter().find(|&&s| s >= dim) {
        return Err(Error::InvalidArgument(format!("observable state {s} outside dimension {dim}")));
    }
    let mut psi = state_in.to_vec();
    let record = |psi: &[Complex64]| observable_states.iter().map(|&s| psi[s].norm_sqr()).collect::<Vec<_>>();
    let mut t = vec![0.0];
    let mut probs = vec![record(&psi)];
    let mut drift = 0.0f64;
    for k in 1..=plan.steps {
        apply_step(&mut psi, plan);
        drift = drift.max((norm(&psi) - 1.0).abs());
        t.push(k as f64 * plan.dt);
        probs.push(record(&psi));
    }
    Ok(TrotterTrace { t, states: observable_states.to_vec(), probs, max_norm_drift: drift })
}

pub fn basis_state(dim: usize, n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[n] = Complex64::new(1.0, 0.0);
    v
}

/// `exp(−iHt)` of a Hermitian matrix by diagonalization.
pub fn exact_propagator(h: &Mat<Complex64>, t: f64) -> Mat<Complex64> {
    let (vals, vecs) = hermitian_eigen(h);
    let n = h.dim();
    Mat::from_fn(n, n, |i, j| (0..n).map(|k| vecs[(i, k)] * Complex64::from_polar(1.0, -vals[k] * t) * vecs[(j, k)].conj()).sum())
}

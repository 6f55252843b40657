//! Single-site anharmonic and strong-coupling Hamiltonians, the 1+1D lattice
//! Hamiltonian, and parity-sector decomposition.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::oscillator::{field_operator, scaled_phi4, OperatorMatrix, TruncationSpec};
use crate::scalar::Scalar;

/// Occupation-parity sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    Even,
    Odd,
    Full,
}

impl Sector {
    /// Sector that contains the single-site state `|n⟩`.
    pub fn of_level(n: usize) -> Sector {
        if n % 2 == 0 {
            Sector::Even
        } else {
            Sector::Odd
        }
    }

    pub fn contains(&self, parity: usize) -> bool {
        match self {
            Sector::Even => parity % 2 == 0,
            Sector::Odd => parity % 2 == 1,
            Sector::Full => true,
        }
    }

    /// Single-site occupation indices belonging to the sector.
    pub fn indices(&self, n_max: usize) -> Vec<usize> {
        (0..n_max).filter(|&n| self.contains(n)).collect()
    }

    /// Position of level `n` inside the sector's index list.
    pub fn position(&self, n: usize) -> usize {
        match self {
            Sector::Full => n,
            _ => n / 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Sector::Even => "even",
            Sector::Odd => "odd",
            Sector::Full => "full",
        }
    }
}

impl std::str::FromStr for Sector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Sector::Even),
            "odd" => Ok(Sector::Odd),
            "full" | "all" => Ok(Sector::Full),
            other => Err(Error::InvalidArgument(format!("unknown sector '{other}'"))),
        }
    }
}

/// `φ⁴` in the orthonormal occupation basis, built as `(φ²)²` so that the
/// result is exactly symmetric.
pub fn phi4_operator(trunc: &TruncationSpec) -> Mat<f64> {
    let phi = field_operator(trunc);
    let phi2 = phi.matmul(&phi);
    phi2.matmul(&phi2)
}

fn harmonic_diag(trunc: &TruncationSpec) -> Mat<f64> {
    Mat::from_diag(&(0..trunc.n_max).map(|n| trunc.omega * (n as f64 + 0.5)).collect::<Vec<_>>())
}

/// Real pencil `H(λ) = h0 + λ·v` restricted to a set of basis states.
#[derive(Clone, Debug)]
pub struct LinearFamily {
    pub h0: Mat<f64>,
    pub v: Mat<f64>,
    /// Full-basis index of every retained state.
    pub indices: Vec<usize>,
}

impl LinearFamily {
    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    pub fn at(&self, lambda: Complex64) -> Mat<Complex64> {
        Mat::from_fn(self.dim(), self.dim(), |i, j| self.h0[(i, j)] + lambda * self.v[(i, j)])
    }

    pub fn at_real(&self, lambda: f64) -> Mat<f64> {
        Mat::from_fn(self.dim(), self.dim(), |i, j| self.h0[(i, j)] + lambda * self.v[(i, j)])
    }

    /// Keeps the states at positions `pos` of the current basis.
    pub fn restrict(&self, pos: &[usize]) -> LinearFamily {
        LinearFamily {
            h0: self.h0.submatrix(pos),
            v: self.v.submatrix(pos),
            indices: pos.iter().map(|&p| self.indices[p]).collect(),
        }
    }
}

/// `ω(a†a + ½) + λ·φ⁴` as a pencil in `λ`, restricted to `sector`.
pub fn anharmonic_family(trunc: &TruncationSpec, sector: Sector) -> LinearFamily {
    let full = LinearFamily {
        h0: harmonic_diag(trunc),
        v: phi4_operator(trunc),
        indices: (0..trunc.n_max).collect(),
    };
    full.restrict(&sector.indices(trunc.n_max))
}

/// `φ⁴ + λ̃·ω(a†a + ½)` as a pencil in `λ̃`, restricted to `sector`.
pub fn strong_family(trunc: &TruncationSpec, sector: Sector) -> LinearFamily {
    let full = LinearFamily {
        h0: phi4_operator(trunc),
        v: harmonic_diag(trunc),
        indices: (0..trunc.n_max).collect(),
    };
    full.restrict(&sector.indices(trunc.n_max))
}

/// `H = ω(a†a + ½) + λ·φ⁴`; Hermitian flag set iff `λ` is real.
pub fn single_site_hamiltonian(trunc: &TruncationSpec, lambda: Complex64) -> OperatorMatrix<Complex64> {
    let m = anharmonic_family(trunc, Sector::Full).at(lambda);
    OperatorMatrix::occupation(m, lambda.im == 0.0)
}

/// `H^str = φ⁴ + λ̃·ω(a†a + ½)`.
pub fn strong_coupling_hamiltonian(trunc: &TruncationSpec, lambda_tilde: Complex64) -> OperatorMatrix<Complex64> {
    let m = strong_family(trunc, Sector::Full).at(lambda_tilde);
    OperatorMatrix::occupation(m, lambda_tilde.im == 0.0)
}

/// Pencil in the scaled basis `diag(√n!)` with exact entries: unperturbed
/// energies on the diagonal and the rational image of `φ⁴`.
#[derive(Clone, Debug)]
pub struct ScaledFamily<T> {
    pub energies: Vec<T>,
    pub v: Mat<T>,
    pub indices: Vec<usize>,
}

pub fn scaled_anharmonic_family<T: Scalar>(trunc: &TruncationSpec, sector: Sector) -> ScaledFamily<T> {
    let idx = sector.indices(trunc.n_max);
    let omega = T::from_f64(trunc.omega);
    let energies = idx.iter().map(|&n| omega.clone() * (T::from_i64(n as i64) + T::from_ratio(1, 2))).collect();
    ScaledFamily { energies, v: scaled_phi4::<T>(trunc).submatrix(&idx), indices: idx }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
}

impl std::str::FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" | "pbc" => Ok(Boundary::Periodic),
            "open" | "obc" => Ok(Boundary::Open),
            other => Err(Error::InvalidArgument(format!("unknown boundary '{other}'"))),
        }
    }
}

pub const DEFAULT_DIM_CAP: usize = 1 << 20;

/// One-dimensional chain of digitized anharmonic oscillators.
#[derive(Clone, Debug)]
pub struct LatticeSpec {
    pub n_sites: usize,
    pub trunc: TruncationSpec,
    pub kappa: f64,
    pub lambda: Complex64,
    pub boundary: Boundary,
    /// With two periodic sites both directed bonds coincide; by default the
    /// literal sum is kept (bond weight `−4κ`), this flag keeps only one.
    pub dedupe_bonds: bool,
    pub dim_cap: usize,
}

impl LatticeSpec {
    pub fn new(n_sites: usize, trunc: TruncationSpec, kappa: f64, lambda: f64, boundary: Boundary) -> Self {
        LatticeSpec {
            n_sites,
            trunc,
            kappa,
            lambda: Complex64::new(lambda, 0.0),
            boundary,
            dedupe_bonds: false,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.trunc.n_max.checked_pow(self.n_sites as u32)
    }

    /// Bonds `(x, x+1)` with their multiplicity.
    pub fn bonds(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n_sites;
        let mut out: Vec<(usize, usize, f64)> = (0..n.saturating_sub(1)).map(|x| (x, x + 1, 1.0)).collect();
        if self.boundary == Boundary::Periodic && n >= 2 {
            if n == 2 {
                if !self.dedupe_bonds {
                    out[0].2 = 2.0;
                }
            } else {
                out.push((n - 1, 0, 1.0));
            }
        }
        out
    }

    fn validate(&self) -> Result<usize> {
        if self.n_sites == 0 {
            return Err(Error::InvalidArgument("lattice needs at least one site".into()));
        }
        if self.boundary == Boundary::Periodic && self.n_sites < 2 {
            return Err(Error::InvalidArgument("periodic boundary needs at least two sites".into()));
        }
        match self.dim() {
            Some(d) if d <= self.dim_cap => Ok(d),
            Some(d) => Err(Error::DimensionCap { dim: d, cap: self.dim_cap }),
            None => Err(Error::DimensionCap { dim: usize::MAX, cap: self.dim_cap }),
        }
    }
}

/// Coordinate-format operator; triplets are sorted by `(row, col)` and unique.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    pub dim: usize,
    pub triplets: Vec<(usize, usize, Complex64)>,
    pub hermitian: bool,
    row_ptr: Vec<usize>,
}

impl SparseOperator {
    /// Sorts, merges duplicates and drops exact zeros.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, Complex64)>, hermitian: bool) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|t| t.2 != Complex64::new(0.0, 0.0));
        Self::from_sorted(dim, merged, hermitian)
    }

    fn from_sorted(dim: usize, triplets: Vec<(usize, usize, Complex64)>, hermitian: bool) -> Self {
        let mut row_ptr = vec![0usize; dim + 1];
        for &(r, _, _) in &triplets {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseOperator { dim, triplets, hermitian, row_ptr }
    }

    pub fn nnz(&self) -> usize {
        self.triplets.len()
    }

    pub fn row(&self, r: usize) -> &[(usize, usize, Complex64)] {
        &self.triplets[self.row_ptr[r]..self.row_ptr[r + 1]]
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| self.row(r).iter().map(|&(_, c, v)| v * x[c]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> Mat<Complex64> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.triplets {
            m[(r, c)] = v;
        }
        m
    }

    /// Largest `|H[r,c] − conj(H[c,r])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for &(r, c, v) in &self.triplets {
            let mirror = self.row(c).binary_search_by_key(&r, |t| t.1).map(|k| self.row(c)[k].2).unwrap_or_default();
            worst = worst.max((v - mirror.conj()).norm());
        }
        worst
    }

    /// Sub-operator on the given (ascending) state list.
    pub fn restrict(&self, states: &[usize]) -> SparseOperator {
        let mut pos = vec![usize::MAX; self.dim];
        for (k, &s) in states.iter().enumerate() {
            pos[s] = k;
        }
        let trip = states
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| {
                let pos = &pos;
                self.row(s).iter().filter(move |t| pos[t.1] != usize::MAX).map(move |t| (k, pos[t.1], t.2))
            })
            .collect();
        Self::from_sorted(states.len(), trip, self.hermitian)
    }
}

/// `Σ_x H_x^anh − 2κ Σ_bonds φ_x φ_y`, assembled row by row. Site 0 is the
/// slowest-varying digit of the basis index.
pub fn lattice_hamiltonian(spec: &LatticeSpec) -> Result<SparseOperator> {
    let dim = spec.validate()?;
    let n = spec.trunc.n_max;
    let ns = spec.n_sites;
    let local = anharmonic_family(&spec.trunc, Sector::Full).at(spec.lambda);
    let phi = field_operator(&spec.trunc);
    let local_nz: Vec<Vec<(usize, Complex64)>> = (0..n)
        .map(|i| (0..n).filter(|&j| local[(i, j)] != Complex64::new(0.0, 0.0)).map(|j| (j, local[(i, j)])).collect())
        .collect();
    let phi_nz: Vec<Vec<(usize, f64)>> =
        (0..n).map(|i| (0..n).filter(|&j| phi[(i, j)] != 0.0).map(|j| (j, phi[(i, j)])).collect()).collect();
    let strides: Vec<usize> = (0..ns).map(|x| n.pow((ns - 1 - x) as u32)).collect();
    let bonds = spec.bonds();
    let rows: Vec<Vec<(usize, usize, Complex64)>> = (0..dim)
        .into_par_iter()
        .map(|s| {
            let digits: Vec<usize> = strides.iter().map(|&st| (s / st) % n).collect();
            let mut row: Vec<(usize, usize, Complex64)> = Vec::new();
            for x in 0..ns {
                let base = s - digits[x] * strides[x];
                for &(j, v) in &local_nz[digits[x]] {
                    row.push((s, base + j * strides[x], v));
                }
            }
            for &(x, y, mult) in &bonds {
                let base = s - digits[x] * strides[x] - digits[y] * strides[y];
                for &(j1, v1) in &phi_nz[digits[x]] {
                    for &(j2, v2) in &phi_nz[digits[y]] {
                        let c = base + j1 * strides[x] + j2 * strides[y];
                        row.push((s, c, Complex64::new(-2.0 * spec.kappa * mult * v1 * v2, 0.0)));
                    }
                }
            }
            row
        })
        .collect();
    let trip = rows.into_iter().flatten().collect();
    Ok(SparseOperator::from_triplets(dim, trip, spec.lambda.im == 0.0))
}

/// Total occupation parity of every basis state of an `n_sites` chain.
pub fn state_parities(n_max: usize, n_sites: usize) -> Vec<usize> {
    let dim = n_max.pow(n_sites as u32);
    (0..dim)
        .map(|mut s| {
            let mut p = 0;
            for _ in 0..n_sites {
                p += s % n_max;
                s /= n_max;
            }
            p % 2
        })
        .collect()
}

/// Even and odd blocks with maps from block position to full index.
#[derive(Clone, Debug)]
pub struct ParityBlocks<M> {
    pub even: M,
    pub odd: M,
    pub even_index: Vec<usize>,
    pub odd_index: Vec<usize>,
}

fn split_parities(parity: &[usize]) -> (Vec<usize>, Vec<usize>) {
    (0..parity.len()).partition(|&i| parity[i] % 2 == 0)
}

/// Splits a dense operator by total occupation parity of its basis states.
pub fn parity_decompose<T: Scalar>(h: &Mat<T>, n_max: usize, n_sites: usize) -> Result<ParityBlocks<Mat<T>>> {
    let parity = state_parities(n_max, n_sites);
    if parity.len() != h.dim() {
        return Err(Error::InvalidArgument(format!("operator dimension {} does not match basis {}", h.dim(), parity.len())));
    }
    let mut worst: Option<(f64, usize, usize)> = None;
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            if parity[i] != parity[j] && !h[(i, j)].is_zero() {
                let m = h[(i, j)].magnitude();
                if worst.is_none_or(|w| m > w.0) {
                    worst = Some((m, i, j));
                }
            }
        }
    }
    if let Some((max_entry, row, col)) = worst {
        return Err(Error::ParityViolation { max_entry, row, col });
    }
    let (even_index, odd_index) = split_parities(&parity);
    Ok(ParityBlocks { even: h.submatrix(&even_index), odd: h.submatrix(&odd_index), even_index, odd_index })
}

/// Sparse counterpart of [`parity_decompose`].
pub fn parity_decompose_sparse(h: &SparseOperator, n_max: usize, n_sites: usize) -> Result<ParityBlocks<SparseOperator>> {
    let parity = state_parities(n_max, n_sites);
    if parity.len() != h.dim {
        return Err(Error::InvalidArgument(format!("operator dimension {} does not match basis {}", h.dim, parity.len())));
    }
    if let Some(&(row, col, v)) = h
        .triplets
        .iter()
        .filter(|t| parity[t.0] != parity[t.1])
        .max_by(|a, b| a.2.norm().total_cmp(&b.2.norm()))
    {
        return Err(Error::ParityViolation { max_entry: v.norm(), row, col });
    }
    let (even_index, odd_index) = split_parities(&parity);
    Ok(ParityBlocks { even: h.restrict(&even_index), odd: h.restrict(&odd_index), even_index, odd_index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn spec(n: usize) -> TruncationSpec {
        TruncationSpec::unit(n).unwrap()
    }

    #[test]
    fn n4_matrix_entries() {
        let lam = 0.37;
        let h = single_site_hamiltonian(&spec(4), Complex64::new(lam, 0.0));
        let e = &h.entries;
        assert!(h.hermitian);
        assert!((e[(0, 0)].re - (0.75 * lam + 0.5)).abs() < 1e-14);
        assert!((e[(0, 2)].re - 3.0 * lam / 2f64.sqrt()).abs() < 1e-14);
        assert!((e[(1, 3)].re - 3.0 * 1.5f64.sqrt() * lam).abs() < 1e-14);
        assert!((e[(3, 3)].re - (3.75 * lam + 3.5)).abs() < 1e-14);
        assert_eq!(e[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn complex_lambda_clears_hermitian_flag() {
        let h = single_site_hamiltonian(&spec(4), Complex64::new(0.1, 0.2));
        assert!(!h.hermitian);
    }

    #[test]
    fn scaled_family_is_rational_image() {
        let s = spec(8);
        let fam = scaled_anharmonic_family::<BigRational>(&s, Sector::Full);
        let v = phi4_operator(&s);
        for i in 0..8 {
            for j in 0..8 {
                let want = crate::scalar::ratio_to_f64(&fam.v[(i, j)]) * crate::oscillator::scaled_to_orthonormal(i, j);
                assert!((want - v[(i, j)]).abs() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn two_site_open_chain_n2() {
        let l = LatticeSpec::new(2, spec(2), 0.1, 0.0, Boundary::Open);
        let h = lattice_hamiltonian(&l).unwrap().to_dense();
        assert!((h[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((h[(3, 3)].re - 3.0).abs() < 1e-15);
        assert!((h[(0, 3)].re + 0.1).abs() < 1e-15);
        assert!((h[(1, 2)].re + 0.1).abs() < 1e-15);
    }

    #[test]
    fn periodic_pair_doubles_bond_unless_deduped() {
        let mut l = LatticeSpec::new(2, spec(2), 0.1, 0.0, Boundary::Periodic);
        assert_eq!(l.bonds(), vec![(0, 1, 2.0)]);
        l.dedupe_bonds = true;
        assert_eq!(l.bonds(), vec![(0, 1, 1.0)]);
        let l1 = LatticeSpec::new(1, spec(2), 0.1, 0.0, Boundary::Periodic);
        assert!(lattice_hamiltonian(&l1).is_err());
    }

    #[test]
    fn dimension_cap_enforced() {
        let mut l = LatticeSpec::new(6, spec(8), 0.1, 0.1, Boundary::Open);
        l.dim_cap = 1000;
        assert!(matches!(lattice_hamiltonian(&l), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn lattice_is_hermitian_and_parity_blocked() {
        let l = LatticeSpec::new(3, spec(4), 0.3, 0.2, Boundary::Periodic);
        let h = lattice_hamiltonian(&l).unwrap();
        assert_eq!(h.hermiticity_defect(), 0.0);
        let blocks = parity_decompose_sparse(&h, 4, 3).unwrap();
        assert_eq!(blocks.even.dim + blocks.odd.dim, 64);
    }

    #[test]
    fn parity_violation_reported() {
        let mut m = Mat::<f64>::identity(4);
        m[(0, 1)] = 0.5;
        match parity_decompose(&m, 4, 1) {
            Err(Error::ParityViolation { row, col, .. }) => assert_eq!((row, col), (0, 1)),
            other => panic!("{other:?}"),
        }
    }
}

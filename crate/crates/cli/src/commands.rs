//! One function per subcommand: resolve parameters, call the library, tabulate.

use anyhow::{bail, Result};
use num_complex::Complex64;
use rayon::prelude::*;

use phi4::hamiltonian::{anharmonic_family, lattice_hamiltonian, parity_decompose_sparse, strong_family, SparseOperator};
use phi4::oscillator::OperatorMatrix;
use phi4::pauli::{
    anharmonic_qubit_hamiltonian, apply_step, basis_state, count_resources, exact_pauli_terms, pauli_decompose_with, simulate_trotter,
    TermOrdering, TrotterPlan, DROP_THRESHOLD,
};
use phi4::series::{dyson_series, evolve_exact, evolve_projector_method, projector_at, radius_estimate, strong_series, weak_series, weak_series_in};
use phi4::singularity::{
    continued_pair, gap_scan, refine_exceptional_point, riemann_export, sylvester_discriminant, Classification, PlaneDomain, RefineOptions,
    ScanRegion,
};
use phi4::spectral::{dense_spectrum, lanczos_lowest, lattice_derivatives, lattice_singularity, LanczosOptions, SpectrumResult, LANCZOS_SEED};
use phi4::{Boundary, LatticeSpec, LinearFamily, Sector, TruncationSpec};

use crate::args::*;
use crate::config::{join, pair, List, Resolver, UsageError};
use crate::output::{RunOutput, Table};
use crate::row;

fn truncation(r: &mut Resolver, m: &Model) -> Result<TruncationSpec> {
    let n_max: usize = r.require("n_max", m.nmax)?;
    let omega: f64 = r.get("omega", m.omega, "1")?;
    Ok(TruncationSpec::new(n_max, omega)?)
}

fn flag(b: bool) -> Option<bool> {
    b.then_some(true)
}

fn range(r: &mut Resolver, key: &str, v: &[f64], default: &str) -> Result<(f64, f64)> {
    let l: List<f64> = r.get(key, join(v), default)?;
    Ok(pair(&l, key)?)
}

fn required_range(r: &mut Resolver, key: &str, v: &[f64]) -> Result<(f64, f64)> {
    let l: List<f64> = r.require(key, join(v))?;
    Ok(pair(&l, key)?)
}

fn ordering(r: &mut Resolver, v: &Option<String>) -> Result<TermOrdering> {
    let s: String = r.get("ordering", v.clone(), "magnitude")?;
    Ok(s.parse()?)
}

fn qubits(n_max: usize) -> Result<usize> {
    if !n_max.is_power_of_two() {
        return Err(UsageError(format!("n_max = {n_max} is not a power of two")).into());
    }
    Ok(n_max.trailing_zeros() as usize)
}

fn family_for(trunc: &TruncationSpec, sector: Sector, plane: PlaneDomain) -> LinearFamily {
    match plane {
        PlaneDomain::Lambda => anharmonic_family(trunc, sector),
        PlaneDomain::LambdaTilde => strong_family(trunc, sector),
    }
}

fn spectrum_table(s: &SpectrumResult) -> Table {
    let mut t = Table::new("spectrum", &["index", "re", "im", "residual"]);
    for (i, e) in s.eigenvalues.iter().enumerate() {
        let res = s.residuals.as_ref().map(|r| r[i]).unwrap_or(f64::NAN);
        t.push(row![i, e.re, e.im, res]);
    }
    t
}

fn sparse_from_dense(m: &phi4::ComplexMatrix, hermitian: bool) -> SparseOperator {
    let n = m.rows();
    let trip = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| m[(i, j)] != Complex64::new(0.0, 0.0)).map(|(i, j)| (i, j, m[(i, j)])).collect();
    SparseOperator::from_triplets(n, trip, hermitian)
}

pub fn spectrum(a: &SpectrumArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let lambda = Complex64::new(r.get("lambda", a.lambda, "0")?, r.get("lambda_im", a.lambda_im, "0")?);
    let sector: Sector = r.get::<String>("sector", a.sector.clone(), "full")?.parse()?;
    let method: String = r.get("method", a.method.clone(), "dense")?;
    let n_sites: usize = r.get("n_sites", a.sites, "1")?;
    let hermitian = lambda.im == 0.0;
    let mut out = RunOutput::default();
    let lanczos = |h: &SparseOperator, r: &mut Resolver| -> Result<SpectrumResult> {
        let mut opts = LanczosOptions::new(r.get("k", a.k, "4")?);
        opts.seed = r.get("seed", a.seed, &LANCZOS_SEED.to_string())?;
        Ok(lanczos_lowest(h, &opts)?)
    };
    let spec = if n_sites == 1 {
        let m = anharmonic_family(&trunc, sector).at(lambda);
        match method.as_str() {
            "dense" => dense_spectrum(&OperatorMatrix::occupation(m, hermitian), false, sector)?,
            "lanczos" => lanczos(&sparse_from_dense(&m, hermitian), r)?,
            other => bail!(UsageError(format!("unknown method '{other}'"))),
        }
    } else {
        let kappa: f64 = r.get("kappa", a.kappa, "0")?;
        let boundary: Boundary = r.get::<String>("boundary", a.boundary.clone(), "periodic")?.parse()?;
        let mut ls = LatticeSpec::new(n_sites, trunc, kappa, 0.0, boundary);
        ls.lambda = lambda;
        let full = lattice_hamiltonian(&ls)?;
        let h = match sector {
            Sector::Full => full,
            s => {
                let b = parity_decompose_sparse(&full, trunc.n_max, n_sites)?;
                if s == Sector::Even {
                    b.even
                } else {
                    b.odd
                }
            }
        };
        out.note("dimension", h.dim);
        match method.as_str() {
            "dense" => dense_spectrum(&OperatorMatrix::occupation(h.to_dense(), hermitian), false, sector)?,
            "lanczos" => lanczos(&h, r)?,
            other => bail!(UsageError(format!("unknown method '{other}'"))),
        }
    };
    out.tables.push(spectrum_table(&spec));
    Ok(out)
}

pub fn series(a: &SeriesArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let domain: String = r.get("domain", a.domain.clone(), "weak")?;
    let level: usize = r.get("level", a.level, "0")?;
    let orders: usize = r.get("orders", a.orders, "20")?;
    let mut out = RunOutput::default();
    match domain.as_str() {
        "weak" => {
            let s = weak_series(&trunc, level, orders)?;
            let mut t = Table::new("series", &["order", "numerator", "denominator"]);
            for (m, c) in s.coeffs.iter().enumerate() {
                t.push(row![m, c.numer().to_string(), c.denom().to_string()]);
            }
            out.tables.push(t);
        }
        "strong" => {
            let precision: Option<u32> = match r.get::<String>("precision", a.precision, "auto")?.as_str() {
                "auto" => None,
                p => Some(p.parse().map_err(|_| UsageError(format!("bad precision '{p}'")))?),
            };
            let s = strong_series(&trunc, level, orders, precision)?;
            let digits = s.precision_digits.unwrap_or(17);
            let mut t = Table::new("series", &["order", "value"]);
            for (m, c) in s.coeffs.iter().enumerate() {
                t.push(row![m, c.to_decimal_string(digits as usize)]);
            }
            out.note("certified_digits", digits);
            out.tables.push(t);
        }
        other => bail!(UsageError(format!("unknown domain '{other}'"))),
    }
    Ok(out)
}

pub fn radius(a: &RadiusArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let level: usize = r.require("level", a.level)?;
    let sector: String = r.get("sector", a.sector.clone(), Sector::of_level(level).name())?;
    if sector.parse::<Sector>()? != Sector::of_level(level) {
        bail!(UsageError(format!("level {level} is not in the {sector} sector")));
    }
    let orders: usize = r.get("orders", a.orders, "200")?;
    let (lo, hi) = pair(&r.get::<List<usize>>("fit", join(&a.fit), &format!("{},{}", orders / 2, orders))?, "fit")?;
    let arithmetic: String = r.get("arithmetic", a.arithmetic.clone(), "exact")?;
    let fit = match arithmetic.as_str() {
        "exact" => radius_estimate(&weak_series(&trunc, level, orders)?, lo, hi)?,
        "float" => radius_estimate(&weak_series_in::<f64>(&trunc, level, orders)?, lo, hi)?,
        other => bail!(UsageError(format!("unknown arithmetic '{other}'"))),
    };
    let mut t = Table::new("radius", &["n_max", "level", "fit_lo", "fit_hi", "radius", "slope", "intercept", "points"]);
    t.push(row![trunc.n_max, level, lo, hi, fit.radius, fit.slope, fit.intercept, fit.points]);
    let mut out = RunOutput::default();
    if !fit.skipped.is_empty() {
        out.warnings.push(format!("vanishing coefficients skipped at orders {:?}", fit.skipped));
    }
    out.tables.push(t);
    Ok(out)
}

pub fn projector(a: &ProjectorArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let level: usize = r.require("level", a.level)?;
    let order: usize = r.get("order", a.order, "4")?;
    let lambda: f64 = r.get("lambda", a.lambda, "0.1")?;
    let ev = projector_at(&trunc, level, order, lambda)?;
    let p = &ev.series;
    let mut coeffs = Table::new("projector_coefficients", &["order", "row", "col", "q_numerator", "q_denominator", "radicand_numerator", "radicand_denominator"]);
    let mut partial = Table::new("projector_partial_sums", &["order", "row", "col", "value"]);
    for &i in &p.indices {
        for &j in &p.indices {
            let sums = p.partial_sums(lambda, i, j);
            for m in 0..=order {
                let (q, rad) = p.coefficient_exact(m, i, j);
                if q.numer().bits() != 0 {
                    coeffs.push(row![m, i, j, q.numer().to_string(), q.denom().to_string(), rad.numer().to_string(), rad.denom().to_string()]);
                }
                partial.push(row![m, i, j, sums[m]]);
            }
        }
    }
    let mut energy = Table::new("energy_partial_sums", &["order", "value"]);
    for (m, v) in weak_series(&trunc, level, order)?.partial_sums(lambda).into_iter().enumerate() {
        energy.push(row![m, v]);
    }
    let mut out = RunOutput { tables: vec![coeffs, partial, energy], ..Default::default() };
    if let Some(rad) = ev.radius {
        out.note("sector_radius", rad);
    }
    out.warnings.extend(ev.warnings);
    Ok(out)
}

pub fn evolve(a: &EvolveArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let method: String = r.get("method", a.method.clone(), "exact")?;
    let lambda: f64 = r.get("lambda", a.lambda, "0.1")?;
    let from: usize = r.get("from", a.from, "0")?;
    let to: usize = r.get("to", a.to, "2")?;
    let mut out = RunOutput::default();
    let mut t = Table::new("evolve", &["t", "re", "im", "probability"]);
    if method == "trotter" {
        let n_q = qubits(trunc.n_max)?;
        if trunc.omega != 1.0 {
            bail!(UsageError("the qubit Hamiltonian is built at omega = 1".into()));
        }
        let dt: f64 = r.get("dt", a.dt, "0.05")?;
        let steps: usize = r.get("steps", a.steps, "400")?;
        let ord = ordering(r, &a.ordering)?;
        let h = anharmonic_qubit_hamiltonian(n_q, lambda)?;
        let dec = pauli_decompose_with(&h, DROP_THRESHOLD)?;
        let plan = TrotterPlan::from_decomposition(&dec, dt, 1, ord)?;
        let mut state = basis_state(trunc.n_max, from);
        for k in 0..=steps {
            let time = k as f64 * dt;
            // identity term restored as a global phase
            let amp = state[to] * Complex64::from_polar(1.0, -dec.identity * time);
            t.push(row![time, amp.re, amp.im, amp.norm_sqr()]);
            apply_step(&mut state, &plan);
        }
        out.tables.push(t);
        return Ok(out);
    }
    let (t0, t1) = range(r, "t_range", &a.t_range, "0,20")?;
    let points: usize = r.get("points", a.points, "201")?;
    let grid: Vec<f64> = if points <= 1 { vec![t0] } else { (0..points).map(|i| t0 + (t1 - t0) * i as f64 / (points - 1) as f64).collect() };
    let amps: Vec<Complex64> = match method.as_str() {
        "exact" => evolve_exact(&trunc, lambda, &grid, from, to)?.amplitude,
        "projector" => {
            let order: usize = r.get("order", a.order, "4")?;
            let tr = evolve_projector_method(&trunc, order, lambda, &grid, from, to)?;
            out.warnings.extend(tr.warnings);
            tr.amplitude
        }
        "dyson" => {
            let order: usize = r.get("order", a.order, "2")?;
            let d = dyson_series(&trunc, order, from, to)?;
            grid.iter().map(|&s| d.amplitude(lambda, s)).collect()
        }
        other => bail!(UsageError(format!("unknown method '{other}'"))),
    };
    for (s, z) in grid.iter().zip(amps) {
        t.push(row![*s, z.re, z.im, z.norm_sqr()]);
    }
    out.tables.push(t);
    Ok(out)
}

fn scan_setup(
    r: &mut Resolver,
    model: &Model,
    sector: &Option<String>,
    plane: &Option<String>,
    re: &[f64],
    im: &[f64],
    resolution: Option<usize>,
) -> Result<(TruncationSpec, Sector, PlaneDomain, ScanRegion)> {
    let trunc = truncation(r, model)?;
    let sector: Sector = r.get::<String>("sector", sector.clone(), "even")?.parse()?;
    let plane: PlaneDomain = r.get::<String>("plane", plane.clone(), "lambda")?.parse()?;
    let re = required_range(r, "re_range", re)?;
    let im = required_range(r, "im_range", im)?;
    let n: usize = r.get("resolution", resolution, &ScanRegion::DEFAULT_RESOLUTION.to_string())?;
    Ok((trunc, sector, plane, ScanRegion::new(re, im, n, n)))
}

pub fn scan(a: &ScanArgs, r: &mut Resolver) -> Result<RunOutput> {
    let (trunc, sector, plane, region) = scan_setup(r, &a.model, &a.sector, &a.plane, &a.re, &a.im, a.resolution)?;
    let refine: bool = r.get("refine", flag(a.refine), "false")?;
    let n_min: usize = r.get("minima", a.minima, "10")?;
    let fam = family_for(&trunc, sector, plane);
    let grid = gap_scan(&fam, region, sector, plane, refine);
    let mut t = Table::new("scan", &["re", "im", "gap"]);
    for s in grid.samples() {
        t.push(row![s.lambda.re, s.lambda.im, s.gap]);
    }
    let mut tr = Table::new("scan_refined", &["re", "im", "gap"]);
    for s in &grid.refined {
        tr.push(row![s.lambda.re, s.lambda.im, s.gap]);
    }
    let minima: Vec<_> = grid.local_minima().into_iter().take(n_min).collect();
    let refined: Vec<_> = minima.par_iter().map(|m| refine_exceptional_point(&fam, m.lambda, &RefineOptions::default())).collect();
    let mut tm = Table::new(
        "scan_minima",
        &["rank", "re", "im", "gap", "refined_re", "refined_im", "refined_gap", "classification", "level_lo", "level_hi"],
    );
    let mut out = RunOutput::default();
    for (k, (m, p)) in minima.iter().zip(refined).enumerate() {
        match p {
            Ok(p) => {
                let labels = if plane == PlaneDomain::Lambda && p.classification == Classification::Exceptional {
                    continued_pair(&fam, p.lambda).ok()
                } else {
                    None
                };
                let (lo, hi) = labels.map(|(a, b)| (a as i64, b as i64)).unwrap_or((-1, -1));
                tm.push(row![k, m.lambda.re, m.lambda.im, m.gap, p.lambda.re, p.lambda.im, p.gap, p.classification.name(), lo, hi]);
            }
            Err(e) => {
                out.warnings.push(format!("minimum {k}: {e}"));
                tm.push(row![k, m.lambda.re, m.lambda.im, m.gap, f64::NAN, f64::NAN, f64::NAN, "failed", -1i64, -1i64]);
            }
        }
    }
    out.note("missing_points", grid.missing);
    out.tables.extend([t, tr, tm]);
    Ok(out)
}

pub fn resultant(a: &ResultantArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let sector: Sector = r.get::<String>("sector", a.sector.clone(), "even")?.parse()?;
    let res = sylvester_discriminant(&trunc, sector)?;
    let mut t = Table::new("resultant", &["power", "numerator", "denominator"]);
    for (k, c) in res.coeffs.iter().enumerate() {
        t.push(row![k, c.numer().to_string(), c.denom().to_string()]);
    }
    let mut tr = Table::new("resultant_roots", &["re", "im", "modulus"]);
    let mut roots = res.roots()?;
    roots.sort_by(|x, y| x.norm().total_cmp(&y.norm()).then(x.im.total_cmp(&y.im)));
    for z in roots {
        tr.push(row![z.re, z.im, z.norm()]);
    }
    let mut out = RunOutput { tables: vec![t, tr], ..Default::default() };
    out.note("degree", res.degree());
    out.note("expected_degree", res.expected_degree);
    if res.degree_deficit() {
        out.warnings.push(format!("degree {} below the expected {}", res.degree(), res.expected_degree));
    }
    Ok(out)
}

pub fn pauli(a: &PauliArgs, r: &mut Resolver) -> Result<RunOutput> {
    let n_q: usize = r.require("n_q", a.nq)?;
    let lambda: f64 = r.get("lambda", a.lambda, "1")?;
    let threshold: f64 = r.get("threshold", a.threshold, &DROP_THRESHOLD.to_string())?;
    let exact: bool = r.get("exact", flag(a.exact), "false")?;
    let dec = pauli_decompose_with(&anharmonic_qubit_hamiltonian(n_q, lambda)?, threshold)?;
    let mut t = Table::new("pauli", &["string", "coefficient"]);
    t.push(row!["I".repeat(n_q), dec.identity]);
    for term in &dec.terms {
        t.push(row![term.string.clone(), term.coeff]);
    }
    let mut out = RunOutput::default();
    out.note("terms", dec.terms.len());
    out.note("dropped", dec.dropped);
    out.tables.push(t);
    if exact {
        let mut te = Table::new("pauli_exact", &["string", "lambda_power", "radical", "numerator", "denominator"]);
        for term in exact_pauli_terms(n_q)? {
            for p in &term.parts {
                te.push(row![term.string.clone(), p.power as usize, p.radical as usize, p.q.numer().to_string(), p.q.denom().to_string()]);
            }
        }
        out.tables.push(te);
    }
    Ok(out)
}

pub fn resources(a: &ResourcesArgs, r: &mut Resolver) -> Result<RunOutput> {
    let nq: List<usize> = r.require("n_q", join(&a.nq))?;
    let lambda: f64 = r.get("lambda", a.lambda, &(1.0f64 / 3.0).to_string())?;
    let threshold: f64 = r.get("threshold", a.threshold, &DROP_THRESHOLD.to_string())?;
    let mut t = Table::new("resources", &["n_q", "n_nz", "depth_bound", "accidental_zeros"]);
    for &n in &nq.0 {
        let e = count_resources(n, lambda, threshold)?;
        t.push(row![e.n_q, e.n_nz, e.depth_bound, e.accidental_zeros.join(" ")]);
    }
    Ok(RunOutput { tables: vec![t], ..Default::default() })
}

pub fn trotter(a: &TrotterArgs, r: &mut Resolver) -> Result<RunOutput> {
    let n_q: usize = r.require("n_q", a.nq)?;
    let lambda: f64 = r.get("lambda", a.lambda, "0.1")?;
    let dt: f64 = r.get("dt", a.dt, "0.05")?;
    let steps: usize = r.get("steps", a.steps, "400")?;
    let ord = ordering(r, &a.ordering)?;
    let from: usize = r.get("from", a.from, "0")?;
    let dim = 1usize << n_q;
    if from >= dim {
        bail!(UsageError(format!("initial state {from} outside dimension {dim}")));
    }
    let dec = pauli_decompose_with(&anharmonic_qubit_hamiltonian(n_q, lambda)?, DROP_THRESHOLD)?;
    let plan = TrotterPlan::from_decomposition(&dec, dt, steps, ord)?;
    let states: Vec<usize> = (0..dim).collect();
    let tr = simulate_trotter(&plan, &basis_state(dim, from), &states)?;
    let mut header = vec!["step".to_string(), "t".to_string()];
    header.extend(states.iter().map(|s| format!("p{s}")));
    let mut t = Table { name: "trotter".into(), header, rows: Vec::new() };
    let mut leak: f64 = 0.0;
    for (k, p) in tr.probs.iter().enumerate() {
        leak = leak.max(p.iter().enumerate().filter(|(s, _)| s % 2 != from % 2).map(|(_, v)| v).sum());
        let mut row = row![k, tr.t[k]];
        row.extend(p.iter().map(|&v| v.into()));
        t.push(row);
    }
    let mut out = RunOutput { tables: vec![t], ..Default::default() };
    out.note("max_norm_drift", tr.max_norm_drift);
    out.note("max_parity_leakage", leak);
    Ok(out)
}

pub fn lattice_sweep(a: &LatticeSweepArgs, r: &mut Resolver) -> Result<RunOutput> {
    let trunc = truncation(r, &a.model)?;
    let n_sites: usize = r.get("n_sites", a.sites, "4")?;
    let boundary: Boundary = r.get::<String>("boundary", a.boundary.clone(), "periodic")?.parse()?;
    let kappas: List<f64> = r.get("kappa", join(&a.kappa), "0.1,0.2,0.3,0.4,0.5")?;
    let window = range(r, "lambda_range", &a.range, "-0.4,1.2")?;
    let points: usize = r.get("points", a.points, "161")?;
    let curve: bool = r.get("curve", flag(a.curve), "false")?;
    let mut out = RunOutput::default();
    out.note("derivative_scheme", "five-point finite differences of Lanczos ground energies with one Richardson step");
    out.note("peak_search", "grid maximum of |E0''|, golden-section polish, half-maximum crossings by bisection");
    let mut ts = Table::new("lattice_singularity", &["kappa", "re", "im_width", "im_ratio", "peak_d2", "half_max_lo", "half_max_hi"]);
    let mut tc = Table::new("lattice_curve", &["kappa", "lambda", "e0", "d2"]);
    for &kappa in &kappas.0 {
        let spec = LatticeSpec::new(n_sites, trunc, kappa, 0.0, boundary);
        match lattice_singularity(&spec, window, points) {
            Ok(s) => ts.push(row![kappa, s.width.re, s.width.im, s.ratio.im, s.peak_d2, s.half_max.0, s.half_max.1]),
            Err(e) => {
                out.warnings.push(format!("kappa {kappa}: {e}"));
                ts.push(row![kappa, f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN]);
            }
        }
        if curve {
            let n = points.max(2);
            let lams: Vec<f64> = (0..n).map(|i| window.0 + (window.1 - window.0) * i as f64 / (n - 1) as f64).collect();
            let vals: Vec<(f64, f64)> =
                lams.par_iter().map(|&l| lattice_derivatives(&spec, l).map(|d| (d.0, d.2))).collect::<phi4::Result<_>>()?;
            for (l, (e, d2)) in lams.iter().zip(vals) {
                tc.push(row![kappa, *l, e, d2]);
            }
        }
    }
    out.tables.push(ts);
    if curve {
        out.tables.push(tc);
    }
    Ok(out)
}

pub fn riemann(a: &RiemannArgs, r: &mut Resolver) -> Result<RunOutput> {
    let (trunc, sector, plane, region) = scan_setup(r, &a.model, &a.sector, &a.plane, &a.re, &a.im, a.resolution)?;
    let grid = gap_scan(&family_for(&trunc, sector, plane), region, sector, plane, false);
    let pts: Vec<(Complex64, f64)> = grid.samples().iter().map(|s| (s.lambda, s.gap)).collect();
    let mut t = Table::new("riemann", &["re", "im", "latitude", "longitude", "x", "y", "gap", "converged"]);
    let mut failed = 0;
    for p in riemann_export(&pts) {
        failed += usize::from(!p.converged);
        t.push(row![p.lambda.re, p.lambda.im, p.latitude, p.longitude, p.x, p.y, p.value, p.converged]);
    }
    let mut out = RunOutput { tables: vec![t], ..Default::default() };
    out.note("orientation", phi4::singularity::ORIENTATION);
    if failed > 0 {
        out.warnings.push(format!("{failed} projections did not converge"));
    }
    Ok(out)
}

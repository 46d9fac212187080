//! Decorations of non-balanced complexes through low-rank nonnegative
//! matrix completion.
//!
//! If `M` is `n x ℓ`, nonnegative, positive exactly on the vertices of each
//! facet column and of rank `n - d`, then any `d x n` matrix of full rank
//! with `C M = 0` decorates the complex: each facet's coefficient submatrix
//! has the positive column of `M` in its kernel. Completions are found
//! numerically and the rounded `C` is always rechecked exactly.

use std::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{
    balanced_coloring, decoration_from_coloring, is_bipartite, is_positively_decorated, Bipartition, DualGraph,
    SimplicialComplex,
};
use crate::{Error, Rational, RationalMatrix, Result};

/// Sign pattern of a completion: `positive[i][j]` iff vertex `i + 1` lies in
/// facet `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionPattern {
    pub rows: usize,
    pub cols: usize,
    pub positive: Vec<Vec<bool>>,
    /// `n - d`.
    pub target_rank: usize,
}

impl CompletionPattern {
    pub fn is_positive(&self, i: usize, j: usize) -> bool {
        self.positive[i][j]
    }
}

pub fn pattern_from_complex(k: &SimplicialComplex) -> CompletionPattern {
    let (n, l) = (k.n_vertices(), k.len());
    let mut positive = vec![vec![false; l]; n];
    for (j, f) in k.facets().iter().enumerate() {
        for &v in f {
            positive[v - 1][j] = true;
        }
    }
    CompletionPattern {
        rows: n,
        cols: l,
        positive,
        target_rank: n - k.dimension(),
    }
}

/// Search used by each completion restart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// [`kernel_alternation`].
    Kernel,
    /// [`alternating_projection`] over the floor schedule.
    Projection,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel" => Ok(Strategy::Kernel),
            "projection" => Ok(Strategy::Projection),
            _ => Err(Error::Parse {
                what: "strategy",
                input: s.to_owned(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionOptions {
    pub strategy: Strategy,
    /// Number of seeded restarts.
    pub restarts: usize,
    pub seed: u64,
    /// Denominator bound for rounding the kernel basis.
    pub denom_bound: u64,
    pub max_iter: usize,
    /// Convergence threshold on `σ_{r+1} / σ_r`.
    pub tol: f64,
    /// Lower bounds for positive cells relative to their RMS, tried in order.
    pub floors: Vec<f64>,
    /// Iterations between exact checks in [`kernel_alternation`].
    pub check_every: usize,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            strategy: Strategy::Kernel,
            restarts: 100,
            seed: 0,
            denom_bound: 1_000_000,
            max_iter: 5_000,
            tol: 1e-9,
            floors: vec![1e-2, 3e-3, 1e-3],
            check_every: 50,
        }
    }
}

/// Result of alternating projections.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub matrix: DMatrix<f64>,
    pub iterations: usize,
    /// `σ_{r+1} / σ_r` of the final matrix.
    pub gap: f64,
    pub converged: bool,
}

fn sorted_svd(m: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>, DMatrix<f64>) {
    let svd = m.clone().svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let u = DMatrix::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
    let vt = DMatrix::from_fn(order.len(), vt.ncols(), |i, j| vt[(order[i], j)]);
    let s = order.iter().map(|&i| svd.singular_values[i]).collect();
    (u, s, vt)
}

fn spectral_gap(s: &[f64], r: usize) -> f64 {
    match (r.checked_sub(1).and_then(|i| s.get(i)), s.get(r)) {
        (_, None) => 0.0,
        (Some(&a), Some(&b)) if a > 0.0 => b / a,
        _ => f64::INFINITY,
    }
}

fn truncate(m: &DMatrix<f64>, r: usize) -> DMatrix<f64> {
    let (u, s, vt) = sorted_svd(m);
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for k in 0..r.min(s.len()) {
        out += s[k] * u.column(k) * vt.row(k);
    }
    out
}

fn project(m: &mut DMatrix<f64>, pattern: &CompletionPattern, floor: f64) {
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 0..pattern.rows {
        for j in 0..pattern.cols {
            if pattern.is_positive(i, j) {
                sum += m[(i, j)].powi(2);
                count += 1;
            }
        }
    }
    let rms = if count > 0 { (sum / count as f64).sqrt() } else { 1.0 };
    let scale = if rms > 0.0 { 1.0 / rms } else { 1.0 };
    for i in 0..pattern.rows {
        for j in 0..pattern.cols {
            m[(i, j)] = if pattern.is_positive(i, j) {
                (m[(i, j)] * scale).max(floor)
            } else {
                0.0
            };
        }
    }
}

/// Alternates best rank-`r` approximation with projection onto the pattern
/// (zero cells set to zero, positive cells clamped to at least `floor` times
/// their RMS), starting from random positive entries.
pub fn alternating_projection(
    pattern: &CompletionPattern,
    r: usize,
    floor: f64,
    max_iter: usize,
    tol: f64,
    seed: u64,
) -> Result<Projection> {
    if r > pattern.rows.min(pattern.cols) {
        return Err(Error::InvalidArgument(format!(
            "rank {r} exceeds the {}x{} pattern",
            pattern.rows, pattern.cols
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::from_fn(pattern.rows, pattern.cols, |i, j| {
        if pattern.is_positive(i, j) {
            rng.gen_range(0.5..1.5)
        } else {
            0.0
        }
    });
    let mut gap = f64::INFINITY;
    for it in 1..=max_iter {
        m = truncate(&m, r);
        project(&mut m, pattern, floor);
        let (_, s, _) = sorted_svd(&m);
        gap = spectral_gap(&s, r);
        if gap < tol {
            return Ok(Projection {
                matrix: m,
                iterations: it,
                gap,
                converged: true,
            });
        }
    }
    Ok(Projection {
        matrix: m,
        iterations: max_iter,
        gap,
        converged: false,
    })
}

/// Best rational approximation with denominator at most `bound`, by
/// continued fractions.
pub fn rationalize(x: f64, bound: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let bound = BigInt::from(bound.max(1));
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > bound {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a;
        if frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    if q1.is_zero() {
        return Rational::from_integer(BigInt::from(x.round() as i64));
    }
    Rational::new(p1, q1)
}

/// A decoration candidate from a numeric completion.
#[derive(Clone, Debug, Serialize)]
pub struct CompletionResult {
    /// The numeric completion, row major.
    pub m: Vec<Vec<f64>>,
    pub c: RationalMatrix,
    pub iterations: usize,
    pub gap: f64,
    pub denom_bound: u64,
    pub verified: bool,
    pub failing: Vec<Vec<usize>>,
}

/// `d` orthonormal vectors spanning the orthogonal complement of the top
/// `n - d` left singular vectors of `m`.
fn left_kernel(m: &DMatrix<f64>, d: usize) -> DMatrix<f64> {
    let n = m.nrows();
    let r = n.saturating_sub(d).min(m.ncols());
    let (u, _, _) = sorted_svd(m);
    let mut p = DMatrix::<f64>::identity(n, n);
    for k in 0..r {
        p -= u.column(k) * u.column(k).transpose();
    }
    let (w, _, _) = sorted_svd(&p);
    DMatrix::from_fn(d, n, |i, j| w[(j, i)])
}

/// Rounds a numeric left kernel of `m` to rationals and checks the
/// decoration exactly, retrying with other denominator bounds.
pub fn extract_decoration(k: &SimplicialComplex, m: &DMatrix<f64>, denom_bound: u64) -> Result<CompletionResult> {
    let d = k.dimension();
    let n = k.n_vertices();
    if m.nrows() != n || m.ncols() != k.len() {
        return Err(Error::Shape(format!(
            "{}x{} completion for {n} vertices and {} facets",
            m.nrows(),
            m.ncols(),
            k.len()
        )));
    }
    let kern = left_kernel(m, d);
    let bounds = [
        denom_bound,
        (denom_bound / 100).max(10),
        denom_bound.saturating_mul(100),
        denom_bound.saturating_mul(10_000),
    ];
    let mut last = None;
    for &b in &bounds {
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let row = kern.row(i);
                let top = row.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                let top = if top > 0.0 { top } else { 1.0 };
                row.iter().map(|v| rationalize(v / top, b)).collect()
            })
            .collect();
        let c = RationalMatrix::from_rows(rows)?;
        let report = is_positively_decorated(k, &c)?;
        let verified = report.decorated && c.rank() == d;
        let result = CompletionResult {
            m: (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect(),
            c,
            iterations: 0,
            gap: 0.0,
            denom_bound: b,
            verified,
            failing: report.failing,
        };
        if verified {
            return Ok(result);
        }
        last = Some(result);
    }
    Ok(last.expect("at least one bound"))
}

/// `d` orthonormal rows minimizing `|C m|` over the columns of `m`.
fn bottom_left_space(m: &DMatrix<f64>, d: usize) -> DMatrix<f64> {
    let e = (m * m.transpose()).symmetric_eigen();
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    DMatrix::from_fn(d, m.nrows(), |i, j| e.eigenvectors[(j, order[i])])
}

/// `argmin |A m|` over `m >= 1` by coordinate descent, warm started at `m`.
fn shifted_nnls(a: &DMatrix<f64>, m: &mut [f64], sweeps: usize) {
    let h = a.transpose() * a;
    for _ in 0..sweeps {
        for q in 0..m.len() {
            if h[(q, q)] <= 0.0 {
                continue;
            }
            let g: f64 = (0..m.len()).map(|s| h[(q, s)] * m[s]).sum();
            m[q] = (m[q] - g / h[(q, q)]).max(1.0);
        }
    }
}

/// Outcome of [`kernel_alternation`].
#[derive(Clone, Debug)]
pub struct KernelRun {
    pub matrix: DMatrix<f64>,
    pub iterations: usize,
    /// `|C M|_F^2` at the end.
    pub objective: f64,
    /// `σ_{n-d+1} / σ_{n-d}` of the final completion.
    pub gap: f64,
    /// The last exact check.
    pub result: Option<CompletionResult>,
}

/// Minimizes `|C M|_F` over `d x n` matrices `C` with orthonormal rows and
/// completions `M` that are at least 1 on the pattern and 0 elsewhere, by
/// alternating the two exact partial minimizations. Every `check_every`
/// iterations the rounded `C` is checked exactly; the run stops at the
/// first verified check.
pub fn kernel_alternation(k: &SimplicialComplex, seed: u64, max_iter: usize, check_every: usize, denom_bound: u64) -> Result<KernelRun> {
    let pattern = pattern_from_complex(k);
    let d = k.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::from_fn(pattern.rows, pattern.cols, |i, j| {
        if pattern.is_positive(i, j) {
            rng.gen_range(1.0..3.0)
        } else {
            0.0
        }
    });
    let mut objective = f64::INFINITY;
    let mut result = None;
    let mut iterations = 0;
    for it in 1..=max_iter {
        iterations = it;
        let c = bottom_left_space(&m, d);
        objective = 0.0;
        for (j, f) in k.facets().iter().enumerate() {
            let cols: Vec<usize> = f.iter().map(|&v| v - 1).collect();
            let a = c.select_columns(&cols);
            let mut col: Vec<f64> = cols.iter().map(|&i| m[(i, j)]).collect();
            shifted_nnls(&a, &mut col, 30);
            for (&i, &v) in cols.iter().zip(&col) {
                m[(i, j)] = v;
            }
            objective += (a * DMatrix::from_column_slice(col.len(), 1, &col)).norm_squared();
        }
        if it % check_every.max(1) == 0 || it == max_iter {
            let res = extract_decoration(k, &m, denom_bound)?;
            let done = res.verified;
            result = Some(res);
            if done {
                break;
            }
        }
    }
    let (_, s, _) = sorted_svd(&m);
    let gap = spectral_gap(&s, pattern.target_rank.min(pattern.cols));
    if let Some(r) = result.as_mut() {
        r.iterations = iterations;
        r.gap = gap;
    }
    Ok(KernelRun {
        matrix: m,
        iterations,
        objective,
        gap,
        result,
    })
}

/// How a decoration was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Coloring,
    Completion,
}

/// One restart of the completion search.
#[derive(Clone, Debug, Serialize)]
pub struct RestartDiagnostic {
    pub seed: u64,
    pub strategy: Strategy,
    /// Positivity floor, for projection runs.
    pub floor: Option<f64>,
    /// `|C M|_F^2`, for kernel runs.
    pub objective: Option<f64>,
    pub iterations: usize,
    pub gap: f64,
    pub converged: bool,
    pub verified: bool,
    /// Facets left undecorated by the rounded kernel.
    pub failing: Vec<Vec<usize>>,
}

/// Outcome of [`decorate`]. `matrix` is present only when exactly verified.
#[derive(Clone, Debug, Serialize)]
pub struct DecorateOutcome {
    pub matrix: Option<RationalMatrix>,
    pub method: Option<Method>,
    /// Odd cycle of facets proving that no decoration exists.
    pub obstruction: Option<Vec<Vec<usize>>>,
    pub restarts: Vec<RestartDiagnostic>,
}

fn one_restart(
    k: &SimplicialComplex,
    pattern: &CompletionPattern,
    seed: u64,
    opts: &CompletionOptions,
) -> Result<(Vec<RestartDiagnostic>, Option<RationalMatrix>)> {
    if opts.strategy == Strategy::Kernel {
        let run = kernel_alternation(k, seed, opts.max_iter, opts.check_every, opts.denom_bound)?;
        let res = run.result;
        let verified = res.as_ref().is_some_and(|r| r.verified);
        let diag = RestartDiagnostic {
            seed,
            strategy: Strategy::Kernel,
            floor: None,
            objective: Some(run.objective),
            iterations: run.iterations,
            gap: run.gap,
            converged: verified,
            verified,
            failing: res.as_ref().map(|r| r.failing.clone()).unwrap_or_default(),
        };
        return Ok((vec![diag], res.filter(|r| r.verified).map(|r| r.c)));
    }
    let r = pattern.target_rank.min(pattern.cols);
    let mut diags = Vec::new();
    for &floor in &opts.floors {
        let p = alternating_projection(pattern, r, floor, opts.max_iter, opts.tol, seed)?;
        let mut diag = RestartDiagnostic {
            seed,
            strategy: Strategy::Projection,
            floor: Some(floor),
            objective: None,
            iterations: p.iterations,
            gap: p.gap,
            converged: p.converged,
            verified: false,
            failing: Vec::new(),
        };
        if p.converged {
            let res = extract_decoration(k, &p.matrix, opts.denom_bound)?;
            diag.verified = res.verified;
            diag.failing = res.failing;
            if res.verified {
                diags.push(diag);
                return Ok((diags, Some(res.c)));
            }
        }
        diags.push(diag);
    }
    Ok((diags, None))
}

/// Finds an exactly verified decoration of `k`: through a balanced coloring
/// when one exists, otherwise through seeded completion restarts run in
/// parallel. The first verified restart in seed order wins. A non-bipartite
/// dual graph short-circuits with the odd cycle as obstruction.
pub fn decorate(k: &SimplicialComplex, opts: &CompletionOptions) -> Result<DecorateOutcome> {
    if let Bipartition::OddCycle(cycle) = is_bipartite(&DualGraph::of(k)) {
        return Ok(DecorateOutcome {
            matrix: None,
            method: None,
            obstruction: Some(cycle.iter().map(|&i| k.facets()[i].clone()).collect()),
            restarts: Vec::new(),
        });
    }
    if let Some(coloring) = balanced_coloring(k) {
        let c = decoration_from_coloring(&coloring, k.n_vertices(), k.dimension())?;
        if is_positively_decorated(k, &c)?.decorated {
            return Ok(DecorateOutcome {
                matrix: Some(c),
                method: Some(Method::Coloring),
                obstruction: None,
                restarts: Vec::new(),
            });
        }
    }
    let pattern = pattern_from_complex(k);
    let best = AtomicUsize::new(usize::MAX);
    let runs: Vec<Option<(Vec<RestartDiagnostic>, Option<RationalMatrix>)>> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            if best.load(Ordering::Relaxed) < i {
                return Ok(None);
            }
            let out = one_restart(k, &pattern, opts.seed.wrapping_add(i as u64), opts)?;
            if out.1.is_some() {
                best.fetch_min(i, Ordering::Relaxed);
            }
            Ok(Some(out))
        })
        .collect::<Result<_>>()?;
    let mut restarts = Vec::new();
    for (diags, c) in runs.into_iter().flatten() {
        restarts.extend(diags);
        if c.is_some() {
            return Ok(DecorateOutcome {
                matrix: c,
                method: Some(Method::Completion),
                obstruction: None,
                restarts,
            });
        }
    }
    Ok(DecorateOutcome {
        matrix: None,
        method: None,
        obstruction: None,
        restarts,
    })
}

/// Exact rank of a rational completion and whether its left kernel
/// decorates `k`.
pub fn exact_kernel_decoration(k: &SimplicialComplex, m: &RationalMatrix) -> Result<(usize, Option<RationalMatrix>)> {
    let rank = m.rank();
    let c = m.left_kernel_basis();
    if c.rows() != k.dimension() {
        return Ok((rank, None));
    }
    let ok = is_positively_decorated(k, &c)?.decorated;
    Ok((rank, ok.then_some(c)))
}

/// Sizes of the entries of `c` as `(max |numerator|, max denominator)`.
pub fn entry_size(c: &RationalMatrix) -> (f64, f64) {
    c.entries().iter().fold((0.0, 0.0), |(a, b), q| {
        (
            a.max(q.numer().abs().to_f64().unwrap_or(f64::INFINITY)),
            b.max(q.denom().to_f64().unwrap_or(f64::INFINITY)),
        )
    })
}

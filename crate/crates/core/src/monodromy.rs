//! Parallel transport of the `gl_n` trigonometric Casimir connection and the
//! affine braid group action on a fibre obtained with Tits lifts.
//!
//! Points of `h` are real trace-free vectors `x` with `z = e^{2πi x}`, so
//! `θ = 2πi x`. The fundamental alcove is `{α_i(x) > 0, θ(x) < 1}` with
//! `θ = ε_0 − ε_{n−1}`; `s_0` is the reflection in `θ(x) = 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{rational_to_f64, ComplexMatrix, ExactMatrix, Rational};
use crate::error::{Error, Result};
use crate::glrep::GlnModule;
use crate::ode::{dopri5, CMat, OdeOptions, OdeStats};
use crate::report::CheckRecord;
use crate::yangian::EvalModule;

const TAU: f64 = std::f64::consts::TAU;

/// `x(t) = start + (end − start) t + i sin(πt) bump`, `t ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub start: Vec<f64>,
    pub end: Vec<f64>,
    pub bump: Vec<f64>,
}

impl Segment {
    pub fn straight(start: Vec<f64>, end: Vec<f64>) -> Self {
        let bump = vec![0.0; start.len()];
        Self { start, end, bump }
    }

    pub fn point(&self, t: f64) -> Vec<Complex64> {
        let s = (std::f64::consts::PI * t).sin();
        (0..self.start.len())
            .map(|k| Complex64::new(self.start[k] + (self.end[k] - self.start[k]) * t, s * self.bump[k]))
            .collect()
    }

    pub fn velocity(&self, t: f64) -> Vec<Complex64> {
        let c = std::f64::consts::PI * (std::f64::consts::PI * t).cos();
        (0..self.start.len())
            .map(|k| Complex64::new(self.end[k] - self.start[k], c * self.bump[k]))
            .collect()
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end.clone(),
            end: self.start.clone(),
            bump: self.bump.clone(),
        }
    }
}

/// Concatenated segments with a lower bound on `|e^α − 1|` along the image.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub segments: Vec<Segment>,
    pub samples_per_segment: usize,
    pub clearance: f64,
}

impl PathSpec {
    pub fn new(segments: Vec<Segment>) -> Self {
        Self {
            segments,
            samples_per_segment: 256,
            clearance: 1e-3,
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            ..self.clone()
        }
    }

    pub fn start(&self) -> &[f64] {
        &self.segments[0].start
    }

    pub fn end(&self) -> &[f64] {
        &self.segments[self.segments.len() - 1].end
    }

    /// `min |e^{θ_a − θ_b} − 1|` over the samples.
    pub fn min_wall_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for seg in &self.segments {
            for s in 0..=self.samples_per_segment {
                let x = seg.point(s as f64 / self.samples_per_segment as f64);
                for a in 0..x.len() {
                    for b in a + 1..x.len() {
                        let e = ((x[a] - x[b]) * Complex64::new(0.0, TAU)).exp();
                        best = best.min((e - 1.0).norm());
                    }
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct TransportResult {
    pub matrix: ComplexMatrix,
    pub stats: OdeStats,
}

/// Numerical form `λ^{-1}(Σ_{a<b} (v_a − v_b)/(e^{θ_a−θ_b} − 1) κ_ab + Σ v_i D_i)`.
#[derive(Clone, Debug)]
pub struct TrigForm {
    n: usize,
    kappa: Vec<((usize, usize), CMat)>,
    d: Vec<CMat>,
    tits: Vec<CMat>,
    lambda: f64,
}

fn to_c(m: &ExactMatrix) -> CMat {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| Complex64::new(rational_to_f64(m.get(i, j)), 0.0))
}

fn from_c(m: &CMat) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), |i, j| m[(i, j)])
}

impl TrigForm {
    pub fn new(module: &EvalModule, lambda: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Precondition("λ must be finite and nonzero".into()));
        }
        let gl: &GlnModule = module.module();
        let n = gl.n();
        let mut kappa = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                kappa.push(((a, b), to_c(&gl.casimir_truncated(a, b)?)));
            }
        }
        let d = (0..n).map(|i| to_c(&module.d(i))).collect();
        let mut tits = vec![to_c(&gl.tits_operator_for(n - 1, 0)?)];
        for i in 0..n - 1 {
            tits.push(to_c(&gl.tits_operator(i)?));
        }
        Ok(Self {
            n,
            kappa,
            d,
            tits,
            lambda,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d[0].nrows()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Precondition("λ must be finite and nonzero".into()));
        }
        Ok(Self { lambda, ..self.clone() })
    }

    /// Fibre operator `r_i`; `r_0` lifts `s_θ`.
    pub fn tits(&self, i: usize) -> &CMat {
        &self.tits[i]
    }

    /// Coefficient at `x` contracted with `v`, both in `x`-coordinates.
    pub fn coefficient(&self, x: &[Complex64], v: &[Complex64]) -> CMat {
        let ti = Complex64::new(0.0, TAU);
        let mut out = CMat::zeros(self.dim(), self.dim());
        for ((a, b), k) in &self.kappa {
            let e = ((x[*a] - x[*b]) * ti).exp();
            out += k * ((v[*a] - v[*b]) * ti / (e - 1.0));
        }
        for (vi, d) in v.iter().zip(&self.d) {
            out += d * (vi * ti);
        }
        out / Complex64::new(self.lambda, 0.0)
    }

    /// Solves `F′ = A(x(t))(x′(t)) F` along the path, `F(0) = I`.
    pub fn transport(&self, path: &PathSpec, opts: &OdeOptions) -> Result<TransportResult> {
        let dist = path.min_wall_distance();
        if dist < path.clearance {
            return Err(Error::SingularPoint(format!("path passes within {dist:e} of a wall")));
        }
        let mut total = CMat::identity(self.dim(), self.dim());
        let mut stats = OdeStats::default();
        for seg in &path.segments {
            let mut rhs = |t: f64, y: &CMat| self.coefficient(&seg.point(t), &seg.velocity(t)) * y;
            let (m, st) = dopri5(&mut rhs, 0.0, 1.0, CMat::identity(self.dim(), self.dim()), opts)?;
            total = m * total;
            stats += st;
        }
        Ok(TransportResult {
            matrix: from_c(&total),
            stats,
        })
    }

    /// `r_i^{-1} P_i` with `P_i` the transport from `x` to `s_i x`.
    pub fn braid_generator(&self, i: usize, x: &[f64], opts: &OdeOptions) -> Result<TransportResult> {
        if i > self.n - 1 {
            return Err(Error::IndexOutOfRange {
                context: "affine node",
                index: i,
                bound: self.n - 1,
            });
        }
        let path = generator_path(self.n, i, x, 0.1);
        let p = self.transport(&path, opts)?;
        let rinv = self.tits[i].clone().try_inverse().ok_or_else(|| Error::Singular("Tits operator".into()))?;
        let m = rinv * to_cmat(&p.matrix);
        Ok(TransportResult {
            matrix: from_c(&m),
            stats: p.stats,
        })
    }
}

fn to_cmat(m: &ComplexMatrix) -> CMat {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| *m.get(i, j))
}

/// `x ↦ s_i x` for the affine reflections of `A_{n−1}^{(1)}`.
pub fn affine_reflection(i: usize, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut y = x.to_vec();
    if i == 0 {
        let th = x[0] - x[n - 1] - 1.0;
        y[0] -= th;
        y[n - 1] += th;
    } else {
        y.swap(i - 1, i);
    }
    y
}

/// Unit normal pointing into the alcove across wall `i`.
fn wall_normal(n: usize, i: usize) -> Vec<f64> {
    let mut g = vec![0.0; n];
    if i == 0 {
        g[0] = -1.0;
        g[n - 1] = 1.0;
    } else {
        g[i - 1] = 1.0;
        g[i] = -1.0;
    }
    g
}

/// Straight segment from `x` to `s_i x` pushed off the wall by `i·c·sin(πt)` along the wall normal.
pub fn generator_path(n: usize, i: usize, x: &[f64], c: f64) -> PathSpec {
    let bump = wall_normal(n, i).into_iter().map(|g| g * c).collect();
    PathSpec::new(vec![Segment {
        start: x.to_vec(),
        end: affine_reflection(i, x),
        bump,
    }])
}

/// Barycenter of the fundamental alcove, `(1/n) Σ_k ϖ_k`.
pub fn alcove_barycenter(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut x = vec![0.0; n];
    for k in 0..n - 1 {
        for (j, xj) in x.iter_mut().enumerate() {
            let w = if j <= k { 1.0 } else { 0.0 } - (k + 1) as f64 / nf;
            *xj += w / nf;
        }
    }
    x
}

/// Order of `s_i s_j` in the affine Weyl group of `A_{n−1}^{(1)}`; `None` if infinite.
pub fn affine_braid_order(n: usize, i: usize, j: usize) -> Option<u32> {
    if i == j {
        return Some(1);
    }
    if n == 2 {
        return None;
    }
    let adjacent = (i + 1) % n == j || (j + 1) % n == i;
    Some(if adjacent { 3 } else { 2 })
}

fn alternating(m: &[CMat], i: usize, j: usize, len: u32) -> CMat {
    let d = m[i].nrows();
    (0..len).fold(CMat::identity(d, d), |acc, k| acc * if k % 2 == 0 { &m[i] } else { &m[j] })
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// One emitted monodromy matrix.
#[derive(Clone, Debug, Serialize)]
pub struct MonodromyRecord {
    pub generator: usize,
    pub lambda: f64,
    pub tolerance: f64,
    /// Row-major `[re, im]` pairs.
    pub matrix: Vec<[f64; 2]>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub steps: usize,
}

impl MonodromyRecord {
    fn new(generator: usize, lambda: f64, tolerance: f64, r: &TransportResult) -> Self {
        let m = &r.matrix;
        let matrix = (0..m.dim())
            .flat_map(|i| (0..m.dim()).map(move |j| (i, j)))
            .map(|(i, j)| [m.get(i, j).re, m.get(i, j).im])
            .collect();
        let mut eig: Vec<[f64; 2]> = m.eigenvalues().into_iter().map(|z| [z.re, z.im]).collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Self {
            generator,
            lambda,
            tolerance,
            matrix,
            eigenvalues: eig,
            steps: r.stats.accepted,
        }
    }
}

/// Output of [`monodromy_suite`].
#[derive(Clone, Debug)]
pub struct MonodromyOutcome {
    pub checks: Vec<CheckRecord>,
    pub generators: Vec<MonodromyRecord>,
}

/// Braid relations, inverse-path, contractible-loop, homotopy and large-λ
/// checks at the alcove barycenter.
pub fn monodromy_suite(form: &TrigForm, tol: f64, large_lambda: f64) -> Result<MonodromyOutcome> {
    let n = form.n();
    let opts = OdeOptions::with_tol(tol);
    let x = alcove_barycenter(n);
    let gens: Vec<TransportResult> = (0..n).map(|i| form.braid_generator(i, &x, &opts)).collect::<Result<_>>()?;
    let mats: Vec<CMat> = gens.iter().map(|g| to_cmat(&g.matrix)).collect();
    // Local error control is relative, so absolute residuals scale with the entries.
    let growth = mats.iter().map(max_abs).fold(1.0, f64::max);
    if growth * tol > 1e-8 {
        return Err(Error::IllConditioned(format!(
            "monodromy entries reach {growth:e}, beyond what tolerance {tol:e} resolves"
        )));
    }
    let tag = |r: CheckRecord| r.with("n", n).with("lambda", form.lambda()).with("tol", format!("{tol:e}"));
    let mut checks = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(m) = affine_braid_order(n, i, j) {
                let res = max_abs(&(alternating(&mats, i, j, m) - alternating(&mats, j, i, m)));
                checks.push(tag(CheckRecord::float("affine braid relation", "braid relation of generators", res, 1e-6))
                    .with("i", i)
                    .with("j", j)
                    .with("m", m));
            }
        }
    }
    let id = CMat::identity(form.dim(), form.dim());
    for i in 0..n {
        let path = generator_path(n, i, &x, 0.1);
        let fwd = to_cmat(&form.transport(&path, &opts)?.matrix);
        let back = to_cmat(&form.transport(&path.reversed(), &opts)?.matrix);
        checks.push(tag(CheckRecord::float("inverse path", "P(γ^{-1}) P(γ) = I", max_abs(&(&back * &fwd - &id)), 10.0 * tol)).with("i", i));
        let wider = to_cmat(&form.transport(&generator_path(n, i, &x, 0.15), &opts)?.matrix);
        checks.push(tag(CheckRecord::float("homotopy invariance", "homotopic paths agree", max_abs(&(&wider - &fwd)), 10.0 * tol)).with("i", i));
    }
    let loop_path = contractible_loop(&x);
    let l = to_cmat(&form.transport(&loop_path, &opts)?.matrix);
    checks.push(tag(CheckRecord::float("contractible loop", "flatness: trivial monodromy", max_abs(&(&l - &id)), 10.0 * tol)));
    let dev = |lambda: f64| -> Result<f64> {
        let big = form.with_lambda(lambda)?;
        let mut worst = 0.0_f64;
        for i in 0..n {
            let g = to_cmat(&big.braid_generator(i, &x, &opts)?.matrix);
            let rinv = form.tits(i).clone().try_inverse().ok_or_else(|| Error::Singular("Tits operator".into()))?;
            worst = worst.max(max_abs(&(g - rinv)));
        }
        Ok(worst)
    };
    // The deviation is λ^{-1}C + O(λ^{-2}); C is the half-residue across the crossed wall plus the tail.
    let (d1, d2) = (dev(large_lambda)?, dev(10.0 * large_lambda)?);
    let (c1, c2) = (d1 * large_lambda, d2 * 10.0 * large_lambda);
    let mut rec = CheckRecord::float("large lambda limit", "generator → r_i^{-1} as λ → ∞", d2, 1e-3)
        .with("lambda", 10.0 * large_lambda)
        .with("deviation_at_lambda", format!("{large_lambda:e}: {d1:e}"))
        .with("first_order_constant", format!("{c1:.6} / {c2:.6}"));
    rec.pass &= (c1 - c2).abs() <= 0.01 * c1;
    checks.push(rec);
    let generators = gens.iter().enumerate().map(|(i, g)| MonodromyRecord::new(i, form.lambda(), tol, g)).collect();
    Ok(MonodromyOutcome { checks, generators })
}

/// A triangle inside the alcove through `x`.
pub fn contractible_loop(x: &[f64]) -> PathSpec {
    let n = x.len();
    let shift = |k: usize, s: f64| {
        let mut y = x.to_vec();
        y[k] += s;
        y[(k + 1) % n] -= s;
        y
    };
    let p1 = shift(0, 0.05);
    let p2 = shift(n - 2, 0.05);
    PathSpec::new(vec![
        Segment::straight(x.to_vec(), p1.clone()),
        Segment::straight(p1, p2.clone()),
        Segment::straight(p2, x.to_vec()),
    ])
}

/// `F(1)` for `d − c dθ` along `θ = 2πi t`; exact value `e^{2πic}`.
pub fn abelian_loop(c: f64, tol: f64) -> Result<Complex64> {
    let a = Complex64::new(0.0, TAU * c);
    let (m, _) = dopri5(&mut |_, y| y * a, 0.0, 1.0, CMat::identity(1, 1), &OdeOptions::with_tol(tol))?;
    Ok(m[(0, 0)])
}

/// Evaluation points as floats for reporting.
pub fn points_f64(points: &[Rational]) -> Vec<f64> {
    points.iter().map(rational_to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn form() -> TrigForm {
        TrigForm::new(&EvalModule::vector_power(3, &[int(0), rat(2, 5)]), 1.0).unwrap()
    }

    #[test]
    fn barycenter_is_inside_alcove() {
        let x = alcove_barycenter(3);
        assert!((x[0] - 1.0 / 3.0).abs() < 1e-15 && x[1].abs() < 1e-15);
        assert!(x[0] - x[1] > 0.0 && x[1] - x[2] > 0.0 && x[0] - x[2] < 1.0);
        let y = affine_reflection(0, &x);
        assert!((y[0] - y[2] - (2.0 - (x[0] - x[2]))).abs() < 1e-15);
    }

    #[test]
    fn abelian_closed_form() {
        let c = 0.37;
        let v = abelian_loop(c, 1e-11).unwrap();
        assert!((v - Complex64::new(0.0, TAU * c).exp()).norm() < 1e-9);
    }

    #[test]
    fn path_through_wall_is_rejected() {
        let f = form();
        let x = alcove_barycenter(3);
        let p = generator_path(3, 1, &x, 0.0);
        assert!(matches!(f.transport(&p, &OdeOptions::default()), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn affine_a2_braid_relations() {
        let out = monodromy_suite(&form(), 1e-10, 1e4).unwrap();
        for c in &out.checks {
            assert!(c.pass, "{c:?}");
        }
        assert_eq!(out.generators.len(), 3);
    }
}


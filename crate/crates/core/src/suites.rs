//! Suite runners shared by the command-line driver, the acceptance target
//! and the benches.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;

use crate::algebra::{int, rat, Rational, Scalar};
use crate::connection::{permutations, trace_free_from_simple, FormStyle, GlConnection, TorusPoint};
use crate::daha::{akz_relation_suite, induced_module_compare, smallness_residual, YangianDaha};
use crate::error::{Error, Result};
use crate::monodromy::{abelian_loop, monodromy_suite, MonodromyRecord, TrigForm};
use crate::qkz::{qybe_residual, unitarity_residual, QkzSystem};
use crate::relations::{casimir_instance, sl_root_system};
use crate::report::{rational_list, CheckRecord};
use crate::rootsys::{
    chamber_shift, decompose_inversion_set, enumerate_rank2_subsystems, eta_identity_residual,
    eta_specialization_residual, RootSystem, RootType,
};
use crate::sample::Sampler;
use crate::tits::{lift_records, tits_suite};
use crate::yangian::EvalModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Roots,
    Relations,
    Flatness,
    Yangian,
    Qkz,
    Daha,
    Monodromy,
    Tits,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::Roots,
        Suite::Relations,
        Suite::Flatness,
        Suite::Yangian,
        Suite::Qkz,
        Suite::Daha,
        Suite::Monodromy,
        Suite::Tits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roots => "roots",
            Suite::Relations => "relations",
            Suite::Flatness => "flatness",
            Suite::Yangian => "yangian",
            Suite::Qkz => "qkz",
            Suite::Daha => "daha",
            Suite::Monodromy => "monodromy",
            Suite::Tits => "tits",
            Suite::All => "all",
        }
    }

    /// Whether every record is an exact identity, so reports are
    /// reproducible byte for byte apart from timings.
    pub fn is_exact(self) -> bool {
        !matches!(self, Suite::Roots | Suite::Monodromy | Suite::All)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}`")))
    }
}

/// Parameters of a run. `None` selects each suite's default grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub root_type: Option<RootType>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub a: Option<Vec<Rational>>,
    pub kappa: Option<Rational>,
    /// Scaling `λ` of the connection in the monodromy suite.
    pub lambda: f64,
    /// Base of the large-`λ` check; the check runs at `λ` and `10λ`.
    pub large_lambda: f64,
    /// ODE tolerance.
    pub tol: f64,
    pub seed: u64,
    pub samples: Option<usize>,
    /// Replace the flatness connection by a mutant with a corrupted `D_1`.
    pub negative_control: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            root_type: None,
            n: None,
            m: None,
            a: None,
            kappa: None,
            lambda: 1.0,
            large_lambda: 1e4,
            tol: 1e-10,
            seed: 7,
            samples: None,
            negative_control: false,
        }
    }
}

/// Records of one suite, plus raw monodromy matrices when computed.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: Vec<CheckRecord>,
    pub monodromy: Vec<MonodromyRecord>,
}

impl SuiteOutcome {
    fn checks(suite: Suite, checks: Vec<CheckRecord>) -> Self {
        Self {
            suite,
            checks,
            monodromy: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|r| r.pass)
    }
}

impl SuiteConfig {
    fn validate(&self, suite: Suite) -> Result<()> {
        if self.negative_control && !matches!(suite, Suite::Flatness | Suite::All) {
            return Err(Error::Usage("--negative-control applies to the flatness suite".into()));
        }
        if let (Some(a), Some(m)) = (&self.a, self.m) {
            if a.len() != m {
                return Err(Error::Usage(format!("--a has {} points but --m is {m}", a.len())));
            }
        }
        if let Some(n) = self.n {
            if n < 2 {
                return Err(Error::Usage("--n must be at least 2".into()));
            }
        }
        if !(self.tol > 0.0) || !(self.lambda > 0.0) || !(self.large_lambda > 0.0) {
            return Err(Error::Usage("--tol and --lambda must be positive".into()));
        }
        if self.kappa.as_ref().is_some_and(Scalar::is_zero) {
            return Err(Error::Usage("--kappa-step must be nonzero".into()));
        }
        Ok(())
    }

    fn m_or(&self, default: usize) -> usize {
        self.m.or(self.a.as_ref().map(Vec::len)).unwrap_or(default)
    }

    fn points(&self, rng: &mut Sampler, m: usize) -> Vec<Rational> {
        match &self.a {
            Some(a) => a.clone(),
            None => rng.rationals(m),
        }
    }

    /// `(n, m)` pairs: the configured one, or the default grid.
    fn grid(&self, default: &[(usize, usize)]) -> Vec<(usize, usize)> {
        match (self.n, self.m.or(self.a.as_ref().map(Vec::len))) {
            (Some(n), Some(m)) => vec![(n, m)],
            (Some(n), None) => {
                let ms: Vec<usize> = default.iter().filter(|p| p.0 == n).map(|p| p.1).collect();
                if ms.is_empty() {
                    vec![(n, 2)]
                } else {
                    ms.into_iter().map(|m| (n, m)).collect()
                }
            }
            (None, Some(m)) => {
                let ns: Vec<usize> = default.iter().filter(|p| p.1 == m).map(|p| p.0).collect();
                if ns.is_empty() {
                    vec![(2, m)]
                } else {
                    ns.into_iter().map(|n| (n, m)).collect()
                }
            }
            (None, None) => default.to_vec(),
        }
    }
}

/// Runs `suite`; `All` runs every suite concurrently and returns them in
/// the order of [`Suite::INDIVIDUAL`].
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    cfg.validate(suite)?;
    if suite != Suite::All {
        return Ok(vec![run_one(suite, cfg)?]);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = Suite::INDIVIDUAL
            .into_iter()
            .map(|x| {
                let cfg = if x == Suite::Flatness {
                    cfg.clone()
                } else {
                    SuiteConfig {
                        negative_control: false,
                        ..cfg.clone()
                    }
                };
                s.spawn(move || run_one(x, &cfg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Precondition("suite thread panicked".into()))))
            .collect()
    })
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    match suite {
        Suite::Roots => roots_suite(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::Relations => relations_suite(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::Flatness => flatness_suite(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::Yangian => yangian_suite(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::Qkz => qkz_suite(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::Daha => daha_suite(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::Monodromy => run_monodromy(cfg),
        Suite::Tits => tits_records(cfg).map(|c| SuiteOutcome::checks(suite, c)),
        Suite::All => Err(Error::Precondition("`all` is not a single suite".into())),
    }
}

/// Merges records of the same name and parameters (ignoring the listed
/// sample keys), keeping the first failing one and counting samples.
fn merge(records: Vec<CheckRecord>, sample_keys: &[&str]) -> Vec<CheckRecord> {
    let mut out: Vec<(CheckRecord, usize)> = Vec::new();
    for mut r in records {
        for k in sample_keys {
            r.parameters.remove(*k);
        }
        match out.iter_mut().find(|(x, _)| x.name == r.name && x.parameters == r.parameters) {
            Some((x, count)) => {
                *count += 1;
                x.wall_time_ms += r.wall_time_ms;
                if x.pass && !r.pass {
                    let t = x.wall_time_ms;
                    *x = r;
                    x.wall_time_ms = t;
                }
            }
            None => out.push((r, 1)),
        }
    }
    out.into_iter().map(|(r, c)| r.with("samples", c)).collect()
}

fn regular_point(rng: &mut Sampler, n: usize) -> Result<TorusPoint> {
    TorusPoint::new(rng.regular_torus_point(n))
}

/// Inversion-set decomposition pairs: all minimal-length lifts for rank 2,
/// `samples` seeded pairs otherwise, plus the count of counterexamples to
/// the reading over all lifts.
pub fn inversion_records(rs: &RootSystem, samples: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let subs = enumerate_rank2_subsystems(rs)?;
    let mut minimal = Vec::new();
    let mut all_pairs = 0usize;
    let mut counterexamples = 0usize;
    for alpha in rs.positive_roots() {
        for w in rs.simple_lifts(alpha) {
            all_pairs += 1;
            if !decompose_inversion_set(rs, &subs, alpha, w)?.holds() {
                counterexamples += 1;
            }
        }
        for w in rs.minimal_simple_lifts(alpha) {
            minimal.push((alpha.clone(), w));
        }
    }
    let chosen: Vec<_> = if rs.rank() <= 2 {
        minimal
    } else {
        let mut rng = Sampler::new(seed);
        (0..samples).map(|_| minimal[rng.index(minimal.len())].clone()).collect()
    };
    let mut failures = 0usize;
    for (alpha, w) in &chosen {
        if !decompose_inversion_set(rs, &subs, alpha, w)?.holds() {
            failures += 1;
        }
    }
    Ok(vec![CheckRecord::exact("inversion decomposition", "N(w^{-1}) = ⊔_Ψ N(w^{-1}) ∩ Ψ", &int(failures as i64))
        .with("type", rs.label())
        .with("pairs", chosen.len())
        .with("mode", if rs.rank() <= 2 { "exhaustive minimal lifts" } else { "sampled minimal lifts" })
        .with("all_lift_counterexamples", format!("{counterexamples}/{all_pairs}"))
        .timed(start)])
}

/// `η`-identity at `points` random complex regular points (float) and at
/// rational points (exact), for `a = α_1`, `b = α_2`.
pub fn eta_records(rs: &RootSystem, points: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let rank = rs.rank();
    let mut a = vec![0i64; rank];
    let mut b = vec![0i64; rank];
    a[0] = 1;
    b[1] = 1;
    let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let mut rng = Sampler::new(seed);
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut worst_spec = 0.0_f64;
    let mut taken = 0;
    while taken < points {
        let x: Vec<Complex64> = (0..rank)
            .map(|_| Complex64::from_polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, std::f64::consts::TAU)))
            .collect();
        let e = |w: &[i64]| w.iter().zip(&x).fold(Complex64::new(1.0, 0.0), |acc, (&k, xi)| acc * xi.powi(k as i32));
        if [&a, &b, &ab].iter().any(|w| (e(w) - 1.0).norm() < 0.1) {
            continue;
        }
        let u: Vec<Complex64> = (0..rank).map(|_| Complex64::new(rng.uniform(-1.0, 1.0), 0.0)).collect();
        let v: Vec<Complex64> = (0..rank).map(|_| Complex64::new(rng.uniform(-1.0, 1.0), 0.0)).collect();
        worst = worst.max(eta_identity_residual(&a, &b, &x, &u, &v)?.norm());
        worst_spec = worst_spec.max(eta_specialization_residual(&a, &b, &x, &u, &v)?.norm());
        taken += 1;
    }
    let tag = |r: CheckRecord| r.with("type", rs.label()).with("points", points);
    let mut out = vec![
        tag(CheckRecord::float("eta identity", "η_a∧η_b − η_a∧η_{a+b} − η_{a+b}∧η_b = η_{a,b}", worst, 1e-12)),
        tag(CheckRecord::float("eta specialization", "η_{a,b} = η_{a+b}∧db", worst_spec, 1e-12)),
    ];
    let mut exact = Rational::zero();
    let mut taken = 0;
    while taken < 10 {
        let x: Vec<Rational> = (0..rank).map(|_| rng.nonzero_rational()).collect();
        let u = rng.rationals(rank);
        let v = rng.rationals(rank);
        match eta_identity_residual(&a, &b, &x, &u, &v) {
            Ok(r) => exact = exact.max(num_traits::Signed::abs(&r)),
            Err(Error::SingularPoint(_)) => continue,
            Err(e) => return Err(e),
        }
        taken += 1;
    }
    out.push(CheckRecord::exact("eta identity exact", "η-identity at rational points", &exact).with("type", rs.label()).with("points", 10).timed(start));
    Ok(out)
}

fn roots_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let types = match cfg.root_type {
        Some(t) => vec![t],
        None => vec![RootType::A(2), RootType::B(2), RootType::G2, RootType::A(3), RootType::B(3)],
    };
    let mut out = Vec::new();
    for t in types {
        let rs = RootSystem::new(t)?;
        let lengths_ok = rs.weyl_group().iter().all(|w| rs.inversion_set(w).len() == w.length());
        out.push(
            CheckRecord::boolean("inversion set length", "|N(w)| = ℓ(w)", lengths_ok && rs.weyl_group().len() == t.weyl_order())
                .with("type", rs.label())
                .with("weyl_order", rs.weyl_group().len()),
        );
        let w0 = rs.longest_element();
        let v = rs.fundamental_coweight(0);
        let shift = chamber_shift(&rs, w0, &v);
        out.push(
            CheckRecord::boolean("chamber shift", "τ_{w_0} involves every positive root", shift.len() == rs.positive_roots().len())
                .with("type", rs.label()),
        );
        out.extend(inversion_records(&rs, cfg.samples.unwrap_or(50), cfg.seed)?);
        if rs.rank() >= 2 {
            out.extend(eta_records(&rs, 100, cfg.seed)?);
        }
    }
    Ok(out)
}

fn relations_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut rng = Sampler::new(cfg.seed);
    let modules: Vec<(usize, usize)> = match cfg.n {
        Some(n) => vec![(n, cfg.m_or(2))],
        None => vec![(3, 2), (3, 3), (4, 2)],
    };
    for (n, m) in modules {
        let start = Instant::now();
        let rs = sl_root_system(n)?;
        let module = EvalModule::vector_power(n, &cfg.points(&mut rng, m));
        let recs = casimir_instance(&rs, &module)?.suite()?;
        out.extend(recs.into_iter().map(|r| r.with("module", format!("(C^{n})^⊗{m}")).timed(start)));
    }
    let types = match cfg.root_type {
        Some(t) => vec![t],
        None => vec![RootType::A(2), RootType::B(2), RootType::G2, RootType::A(3), RootType::B(3)],
    };
    for t in types {
        let start = Instant::now();
        let rs = RootSystem::new(t)?;
        let recs = akz_relation_suite(&rs, cfg.samples.unwrap_or(3), cfg.seed)?;
        out.extend(merge(recs.into_iter().map(|r| r.timed(start)).collect(), &["k", "chi", "sample"]));
    }
    Ok(out)
}

fn flatness_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let samples = cfg.samples.unwrap_or(25);
    for (n, m) in cfg.grid(&[(2, 2), (2, 3), (3, 2), (3, 3)]) {
        let start = Instant::now();
        let mut rng = Sampler::new(cfg.seed ^ ((n as u64) << 8) ^ m as u64);
        let a = cfg.points(&mut rng, m);
        let module = EvalModule::vector_power(n, &a);
        let conn = if cfg.negative_control {
            GlConnection::mutant(module.clone())
        } else {
            GlConnection::new(module.clone())
        };
        let mutant = GlConnection::mutant(module);
        let tag = |r: CheckRecord| r.with("n", n).with("m", m).with("a", rational_list(&a));
        let mut batch = Vec::new();
        for s in 0..samples {
            let p = regular_point(&mut rng, n)?;
            for style in [FormStyle::Tau, FormStyle::Delta, FormStyle::RationalZ] {
                batch.push(tag(CheckRecord::exact("flatness", "[A(e_i), A(e_j)] = 0", &conn.flatness_residual(style, &p)?))
                    .with("form", format!("{style:?}")));
            }
            batch.push(tag(CheckRecord::exact("form agreement", "τ, δ and rational forms agree", &conn.form_agreement(&p)?)));
            for i in 0..n - 1 {
                batch.extend(conn.equivariance_residual(i, &p)?);
            }
            if s < 3 {
                for w in permutations(n) {
                    batch.push(tag(CheckRecord::exact("chamber change", "coefficient independent of chamber", &conn.chamber_change_residual(&w, &p)?)));
                }
                for i in 0..n - 1 {
                    let mut c = vec![Rational::zero(); n - 1];
                    c[i] = int(1);
                    let v = trace_free_from_simple(&c);
                    batch.push(tag(CheckRecord::exact_matrix("sl restriction", "A_gl − A_sl = Σλ_i(v)h_i", &conn.sln_restriction_residual(&p, &v)?)));
                }
                let (w1, w2) = conn.tv_match_residual(&p, &rat(3, 2))?;
                batch.push(tag(CheckRecord::exact("dynamical operators", "A′(∂_i) = −λL_i", &w1)));
                batch.push(tag(CheckRecord::exact("dynamical identification", "A′ = (λ/2)A − ω", &w2)));
            }
            if s == 0 && !cfg.negative_control {
                let r = mutant.flatness_residual(FormStyle::Tau, &p)?;
                batch.push(tag(CheckRecord::exact("mutant flatness", "corrupted D_1 breaks flatness", &r)).expect_failure());
            }
        }
        out.extend(merge(batch, &["z"]).into_iter().map(|r| r.timed(start)));
    }
    Ok(out)
}

fn yangian_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut rng = Sampler::new(cfg.seed);
    let grid = cfg.grid(&[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]);
    for (n, m) in grid {
        let start = Instant::now();
        let y = EvalModule::vector_power(n, &cfg.points(&mut rng, m));
        out.push(y.rtt_suite()?.timed(start));
        let tag = |r: CheckRecord| r.with("n", n).with("m", m).with("a", rational_list(&y.params().points));
        out.push(tag(CheckRecord::exact("gelfand-zetlin", "[h_i^{(2)}, h_j^{(2)}] = 0", &y.gz_commutativity()?)));
        out.extend(merge(y.di_identity_suite()?, &["i", "j"]));
        let v = rng.nonzero_rational();
        out.push(tag(CheckRecord::exact("translation", "t_ij^{(2)}(a+v) = t_ij^{(2)}(a) + vE_ij", &y.translation_shift_check(&v)?)).timed(start));
    }
    Ok(out)
}

/// A qKZ system at seeded generic parameters; resamples on singular
/// R-matrix arguments.
fn qkz_sample(rng: &mut Sampler, n: usize, m: usize, cfg: &SuiteConfig) -> Result<(QkzSystem, TorusPoint, Vec<CheckRecord>)> {
    for _ in 0..100 {
        let a = cfg.points(rng, m);
        let kappa = cfg.kappa.clone().unwrap_or_else(|| rng.nonzero_rational());
        let q = QkzSystem::new(n, a, kappa)?;
        let p = regular_point(rng, n)?;
        match q.suite(&p) {
            Ok(recs) => return Ok((q, p, recs)),
            Err(Error::Singular(_) | Error::SingularPoint(_)) if cfg.a.is_none() || cfg.kappa.is_none() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition("no generic qKZ parameters found".into()))
}

fn qkz_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let samples = cfg.samples.unwrap_or(5);
    let mut rng = Sampler::new(cfg.seed);
    for (n, m) in cfg.grid(&[(2, 2), (2, 3)]) {
        let start = Instant::now();
        let mut batch = Vec::new();
        for s in 0..samples {
            let (q, p, recs) = qkz_sample(&mut rng, n, m, cfg)?;
            batch.extend(recs.into_iter().map(|r| r.with("sample", s)));
            let v: Vec<Rational> = rng.rationals(q.module().dim());
            for i in 0..m {
                for j in i + 1..m {
                    batch.push(
                        CheckRecord::exact("qkz consistency on section", "(T_iT_j − T_jT_i)f = 0", &q.consistency_on_section(i, j, &p, &v)?)
                            .with("n", n)
                            .with("m", m),
                    );
                }
            }
        }
        let recs = merge(batch, &["a", "kappa", "z", "sample"]);
        out.extend(recs.into_iter().map(|r| r.timed(start)));
        let (u, v) = (rng.nonzero_rational(), rng.nonzero_rational());
        out.push(CheckRecord::exact("qybe", "R12 R13 R23 = R23 R13 R12", &qybe_residual(n, &u, &v)?).with("n", n));
        out.push(CheckRecord::exact("unitarity", "R(u)R21(−u) = 1 − u^{-2}", &unitarity_residual(n, &u)?).with("n", n));
    }
    Ok(out)
}

fn distinct_points(rng: &mut Sampler, m: usize) -> Vec<Rational> {
    rng.distinct_rationals(m, &[int(1), int(-1)])
}

fn daha_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut rng = Sampler::new(cfg.seed);
    let grid = match (cfg.n, cfg.m) {
        (Some(n), m) => vec![(n, m.unwrap_or(n))],
        (None, _) => vec![(2, 2), (3, 3)],
    };
    for (n, m) in grid {
        let start = Instant::now();
        let a = match &cfg.a {
            Some(a) => a.clone(),
            None => distinct_points(&mut rng, m),
        };
        let y = YangianDaha::new(EvalModule::vector_power(n, &a))?;
        let points = (0..3).map(|_| regular_point(&mut rng, n)).collect::<Result<Vec<_>>>()?;
        out.extend(merge(y.suite(&points)?, &["z"]).into_iter().map(|r| r.timed(start)));
        if m == n {
            let holds = induced_module_compare(n, &a)?;
            out.push(
                CheckRecord::boolean("induced intertwiner", "V[0] ≅ Ind(χ) for distinct points", holds)
                    .with("n", n)
                    .with("a", rational_list(&a)),
            );
        }
    }
    let control = YangianDaha::new(EvalModule::vector_power(2, &distinct_points(&mut rng, 4)));
    let witness = match &control {
        Err(Error::NotSmall { witness }) => format!("{witness:?}"),
        _ => "none".into(),
    };
    out.push(
        CheckRecord::boolean("non-small rejected", "smallness required", matches!(control, Err(Error::NotSmall { .. })))
            .with("module", "(C^2)^⊗4")
            .with("witness", witness),
    );
    out.push(
        CheckRecord::exact("non-small kappa", "κ_α|V[0] = (α,α)(1 − s_α) fails", &smallness_residual(2, 4)?)
            .with("module", "(C^2)^⊗4")
            .expect_failure(),
    );
    for (n, m) in [(2, 2), (3, 3)] {
        out.push(
            CheckRecord::exact("small kappa", "κ_α|V[0] = (α,α)(1 − s_α)", &smallness_residual(n, m)?)
                .with("module", format!("(C^{n})^⊗{m}")),
        );
    }
    Ok(out)
}

fn run_monodromy(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let n = cfg.n.unwrap_or(3);
    let m = cfg.m_or(2);
    let a = match &cfg.a {
        Some(a) => a.clone(),
        None if m == 2 => vec![int(0), rat(2, 5)],
        None => (0..m).map(|k| rat(2 * k as i64, 5)).collect(),
    };
    let start = Instant::now();
    let form = TrigForm::new(&EvalModule::vector_power(n, &a), cfg.lambda)?;
    let outcome = monodromy_suite(&form, cfg.tol, cfg.large_lambda)?;
    let mut checks: Vec<CheckRecord> = outcome
        .checks
        .into_iter()
        .map(|r| r.with("m", m).with("a", rational_list(&a)).timed(start))
        .collect();
    let c = 0.37;
    let z = abelian_loop(c, cfg.tol)?;
    let exact = Complex64::from_polar(1.0, std::f64::consts::TAU * c);
    checks.push(CheckRecord::float("abelian loop", "integrator calibration: e^{2πic}", (z - exact).norm(), 10.0 * cfg.tol).with("c", c));
    Ok(SuiteOutcome {
        suite: Suite::Monodromy,
        checks,
        monodromy: outcome.generators,
    })
}

fn tits_records(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ns = match cfg.n {
        Some(n) => vec![n],
        None => vec![2, 3],
    };
    let mut out = Vec::new();
    for n in ns {
        let start = Instant::now();
        out.extend(tits_suite(n)?.into_iter().map(|r| r.timed(start)));
    }
    out.extend(lift_records()?);
    Ok(out)
}

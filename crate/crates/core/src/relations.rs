//! Flatness and equivariance relations of a trigonometric connection with
//! abstract coefficients `t_α` and tail `τ: h → End(V)`.

use crate::algebra::linalg::nullspace;
use crate::algebra::{rat, ExactMatrix, Rational, Scalar};
use crate::connection::trace_free_from_simple;
use crate::error::{Error, Result};
use crate::report::CheckRecord;
use crate::rootsys::{enumerate_rank2_subsystems, Coweight, RootSystem, RootType};
use crate::yangian::EvalModule;

/// Coefficients of `d − Σ_{α>0} dα/(e^α−1) t_α − du_i τ(u^i)` on a common space.
#[derive(Clone, Debug)]
pub struct RelationInstance<'a> {
    pub rs: &'a RootSystem,
    /// `t[k]` is `t_α` for the `k`-th positive root.
    pub t: Vec<ExactMatrix>,
    /// `tau[j]` is `τ(ϖ_j^∨)`, the value on the `j`-th fundamental coweight.
    pub tau: Vec<ExactMatrix>,
    /// Matrices `S_i` implementing `s_i` on the fibre by conjugation.
    pub weyl: Option<Vec<ExactMatrix>>,
}

impl<'a> RelationInstance<'a> {
    pub fn new(rs: &'a RootSystem, t: Vec<ExactMatrix>, tau: Vec<ExactMatrix>, weyl: Option<Vec<ExactMatrix>>) -> Result<Self> {
        if t.len() != rs.positive_roots().len() {
            return Err(Error::DimensionMismatch {
                context: "t_α per positive root",
                expected: rs.positive_roots().len(),
                found: t.len(),
            });
        }
        if tau.len() != rs.rank() {
            return Err(Error::DimensionMismatch {
                context: "τ per fundamental coweight",
                expected: rs.rank(),
                found: tau.len(),
            });
        }
        if let Some(w) = &weyl {
            if w.len() != rs.rank() {
                return Err(Error::DimensionMismatch {
                    context: "fibre action per simple reflection",
                    expected: rs.rank(),
                    found: w.len(),
                });
            }
        }
        Ok(Self { rs, t, tau, weyl })
    }

    fn dim(&self) -> usize {
        self.t.first().map_or(0, ExactMatrix::dim)
    }

    /// `t_β` for any root `β`, using `t_{−β} = t_β`.
    pub fn t_of(&self, beta: &[i64]) -> &ExactMatrix {
        let pos: Vec<i64> = if self.rs.is_positive(beta) {
            beta.to_vec()
        } else {
            beta.iter().map(|x| -x).collect()
        };
        &self.t[self.rs.positive_index(&pos).expect("root")]
    }

    pub fn tau(&self, v: &[Rational]) -> ExactMatrix {
        v.iter()
            .zip(&self.tau)
            .filter(|(c, _)| !c.is_zero())
            .fold(ExactMatrix::zeros(self.dim()), |acc, (c, x)| acc.add_scaled(x, c))
    }

    /// `τ_w(v) = τ(v) − Σ_{α∈Φ_+∩wΦ_-} α(v) t_α`.
    pub fn tau_w(&self, w_index: usize, v: &[Rational]) -> ExactMatrix {
        let w = &self.rs.weyl_group()[w_index];
        crate::rootsys::chamber_shift(self.rs, w, v)
            .into_iter()
            .fold(self.tau(v), |acc, (b, c)| acc.add_scaled(self.t_of(&b), &-c))
    }

    /// `δ(v) = τ(v) − ½ Σ_{α>0} α(v) t_α`.
    pub fn delta(&self, v: &[Rational]) -> ExactMatrix {
        let half = rat(1, 2);
        self.rs
            .positive_roots()
            .iter()
            .zip(&self.t)
            .fold(self.tau(v), |acc, (b, t)| acc.add_scaled(t, &-(self.rs.pair(b, v) * &half)))
    }

    /// Basis of `ker α ⊂ h`.
    fn kernel(&self, alpha: &[i64]) -> Vec<Coweight> {
        let row: Vec<Rational> = alpha.iter().map(|&x| Rational::from_integer(x.into())).collect();
        nullspace(&[row], self.rs.rank())
    }

    /// `(tt)`: one record per rank-2 subsystem.
    pub fn tt(&self) -> Result<Vec<CheckRecord>> {
        let mut out = Vec::new();
        for psi in enumerate_rank2_subsystems(self.rs)? {
            let sum = psi
                .positive
                .iter()
                .fold(ExactMatrix::zeros(self.dim()), |acc, b| acc.add_ref(self.t_of(b)));
            let worst = psi
                .positive
                .iter()
                .map(|a| self.t_of(a).commutator(&sum).max_abs())
                .max()
                .unwrap_or_else(Rational::zero);
            out.push(
                CheckRecord::exact("tt", "[t_α, Σ_{β∈Ψ_+} t_β] = 0", &worst)
                    .with("subsystem", format!("{:?}", psi.positive))
                    .with("kind", psi.kind)
                    .with("complete", psi.complete),
            );
        }
        Ok(out)
    }

    /// `(ττ)`.
    pub fn tau_tau(&self) -> CheckRecord {
        let mut worst = Rational::zero();
        for i in 0..self.tau.len() {
            for j in i + 1..self.tau.len() {
                worst = worst.max(self.tau[i].commutator(&self.tau[j]).max_abs());
            }
        }
        CheckRecord::exact("tau tau", "[τ(u), τ(v)] = 0", &worst)
    }

    /// `(tτ)` for simple roots: `[t_{α_i}, τ(u)] = 0` for `α_i(u) = 0`.
    pub fn t_tau_simple(&self) -> CheckRecord {
        let mut worst = Rational::zero();
        for i in 0..self.rs.rank() {
            let ti = self.t_of(&self.rs.simple_root(i));
            for (j, tj) in self.tau.iter().enumerate() {
                if j != i {
                    worst = worst.max(ti.commutator(tj).max_abs());
                }
            }
        }
        CheckRecord::exact("t tau simple", "[t_{α_i}, τ(u)] = 0 on ker α_i", &worst)
    }

    /// `(tτ)` in general: `[t_α, τ_w(u)] = 0` for `w^{-1}α` simple and `α(u) = 0`.
    pub fn t_tau_general(&self) -> CheckRecord {
        let mut worst = Rational::zero();
        let rs = self.rs;
        for alpha in rs.positive_roots() {
            let ker = self.kernel(alpha);
            let ta = self.t_of(alpha);
            for (wi, w) in rs.weyl_group().iter().enumerate() {
                if !rs.is_simple(&rs.inverse(w).apply(alpha)) {
                    continue;
                }
                for u in &ker {
                    worst = worst.max(ta.commutator(&self.tau_w(wi, u)).max_abs());
                }
            }
        }
        CheckRecord::exact("t tau", "[t_α, τ_w(u)] = 0", &worst)
    }

    /// `(tδ)`: `[t_α, δ(v)] = 0` for `α(v) = 0`.
    pub fn t_delta(&self) -> CheckRecord {
        let mut worst = Rational::zero();
        for alpha in self.rs.positive_roots() {
            let ta = self.t_of(alpha);
            for v in self.kernel(alpha) {
                worst = worst.max(ta.commutator(&self.delta(&v)).max_abs());
            }
        }
        CheckRecord::exact("t delta", "[t_α, δ(v)] = 0", &worst)
    }

    /// `[t_α, Σ_β sign(w^{-1}β) β(v) t_β] = 0` for `w^{-1}α` simple, `α(v) = 0`.
    pub fn t_wt(&self) -> CheckRecord {
        let mut worst = Rational::zero();
        let rs = self.rs;
        for alpha in rs.positive_roots() {
            let ker = self.kernel(alpha);
            let ta = self.t_of(alpha);
            for w in rs.weyl_group() {
                let winv = rs.inverse(w);
                if !rs.is_simple(&winv.apply(alpha)) {
                    continue;
                }
                for v in &ker {
                    let mut s = ExactMatrix::zeros(self.dim());
                    for (b, tb) in rs.positive_roots().iter().zip(&self.t) {
                        let c = rs.pair(b, v) * Rational::from_integer(rs.sign(&winv.apply(b)).into());
                        if !c.is_zero() {
                            s = s.add_scaled(tb, &c);
                        }
                    }
                    worst = worst.max(ta.commutator(&s).max_abs());
                }
            }
        }
        CheckRecord::exact("t wt", "[t_α, Σ sign(w^{-1}β) β(v) t_β] = 0", &worst)
    }

    /// `(equiv1)` and `(equiv2)`; empty without a fibre action.
    pub fn equivariance(&self) -> Result<Vec<CheckRecord>> {
        let Some(weyl) = &self.weyl else {
            return Ok(Vec::new());
        };
        let rs = self.rs;
        let mut w1 = Rational::zero();
        let mut w2 = Rational::zero();
        for (i, s) in weyl.iter().enumerate() {
            let sinv = s.inverse().ok_or_else(|| Error::Singular("fibre action".into()))?;
            let ad = |x: &ExactMatrix| s.matmul(x).matmul(&sinv);
            let ai = rs.simple_root(i);
            for (b, tb) in rs.positive_roots().iter().zip(&self.t) {
                let sb = rs.reflect(&ai, b);
                w1 = w1.max(ad(tb).sub_ref(self.t_of(&sb)).max_abs());
            }
            let si = rs.simple_reflection(i);
            for j in 0..rs.rank() {
                let u = rs.fundamental_coweight(j);
                let su = rs.act_coweight(si, &u);
                let res = ad(&self.tau[j])
                    .sub_ref(&self.tau(&su))
                    .add_scaled(self.t_of(&ai), &-rs.pair(&ai, &u));
                w2 = w2.max(res.max_abs());
            }
        }
        Ok(vec![
            CheckRecord::exact("equiv1", "s_i(t_α) = t_{s_i α}", &w1),
            CheckRecord::exact("equiv2", "s_i(τ(u)) − τ(s_i u) = α_i(u) t_{α_i}", &w2),
        ])
    }

    /// Every relation, tagged with the root system label.
    pub fn suite(&self) -> Result<Vec<CheckRecord>> {
        let mut out = self.tt()?;
        out.push(self.tau_tau());
        out.push(self.t_tau_simple());
        out.push(self.t_tau_general());
        out.push(self.t_delta());
        out.push(self.t_wt());
        out.extend(self.equivariance()?);
        let label = self.rs.label();
        Ok(out.into_iter().map(|r| r.with("type", &label)).collect())
    }
}

/// `θ_a − θ_b` in simple-root coordinates of `A_{n−1}`.
pub fn gl_root(n: usize, a: usize, b: usize) -> Vec<i64> {
    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
    (0..n - 1).map(|k| if k >= lo && k < hi { sign } else { 0 }).collect()
}

/// The pair `(a, b)` with `a < b` of a positive root of `A_{n−1}`.
pub fn gl_pair(root: &[i64]) -> (usize, usize) {
    let a = root.iter().position(|&x| x != 0).expect("nonzero root");
    let len = root.iter().filter(|&&x| x != 0).count();
    (a, a + len)
}

/// Root system `A_{n−1}` for the `sl_n` instance.
pub fn sl_root_system(n: usize) -> Result<RootSystem> {
    RootSystem::new(RootType::A(n - 1))
}

/// `t_α = κ_α`, `τ(u) = D(u)` and `S_i = r_i` on an `sl_n` evaluation module.
pub fn casimir_instance<'a>(rs: &'a RootSystem, module: &EvalModule) -> Result<RelationInstance<'a>> {
    let n = module.n();
    if rs.root_type() != RootType::A(n - 1) {
        return Err(Error::Precondition(format!("{} is not A_{}", rs.label(), n - 1)));
    }
    let gl = module.module();
    let t = rs
        .positive_roots()
        .iter()
        .map(|r| {
            let (a, b) = gl_pair(r);
            gl.casimir_truncated(a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    let tau = (0..n - 1)
        .map(|j| {
            let u = trace_free_from_simple(&rs.fundamental_coweight(j));
            u.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(ExactMatrix::zeros(module.dim()), |acc, (i, c)| acc.add_scaled(&module.d(i), c))
        })
        .collect();
    let weyl = (0..n - 1).map(|i| gl.tits_operator(i)).collect::<Result<Vec<_>>>()?;
    RelationInstance::new(rs, t, tau, Some(weyl))
}

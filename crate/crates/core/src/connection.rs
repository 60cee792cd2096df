//! The trigonometric Casimir connection of `gl_n` on evaluation modules.
//!
//! Points of the torus are `z = (z_1, …, z_n)` with `z_i = e^{θ_i}`, and
//! directions are vectors `v` with `θ_i(v) = v_i`. The coefficient `A` is
//! defined by `∇_v = ∂_v − A(v)`.

use crate::algebra::{int, rat, ExactMatrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::report::{rational_list, CheckRecord};
use crate::yangian::{EvalModule, YangianSymbol};

/// A point `z` of the diagonal torus of `GL_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    pub z: Vec<Rational>,
}

impl TorusPoint {
    pub fn new(z: Vec<Rational>) -> Result<Self> {
        if z.iter().any(Scalar::is_zero) {
            return Err(Error::Precondition("torus coordinates must be nonzero".into()));
        }
        Ok(Self { z })
    }

    /// `z_i ≠ z_j` for `i ≠ j`.
    pub fn is_regular(&self) -> bool {
        let n = self.z.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.z[i] != self.z[j]))
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::SingularPoint(format!("z = [{}]", rational_list(&self.z))))
        }
    }

    /// `e^{θ_a − θ_b} = z_a / z_b`.
    pub fn ratio(&self, a: usize, b: usize) -> Rational {
        &self.z[a] / &self.z[b]
    }

    /// `σ·z` with `(σz)_{σ(i)} = z_i`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        let mut z = self.z.clone();
        for (i, &s) in sigma.iter().enumerate() {
            z[s] = self.z[i].clone();
        }
        Self { z }
    }
}

/// Which of the equivalent expressions of the connection to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormStyle {
    /// `Σ_{i<j} d(θ_i−θ_j)/(e^{θ_i−θ_j}−1) κ + Σ dθ_i D_i`.
    Tau,
    /// `½ Σ_{i<j} (e^α+1)/(e^α−1) dα κ + Σ dθ_i Δ_i`.
    Delta,
    /// `Σ_{i<j} d(z_i−z_j)/(z_i−z_j) κ + Σ dz_i/z_i D̃_i`.
    RationalZ,
}

/// Precomputed data of the connection on a fixed evaluation module.
#[derive(Clone, Debug)]
pub struct GlConnection {
    n: usize,
    module: EvalModule,
    /// `kappa[a][b]` for `a < b`.
    kappa: Vec<Vec<ExactMatrix>>,
    d: Vec<ExactMatrix>,
    delta: Vec<ExactMatrix>,
    dtilde: Vec<ExactMatrix>,
    scale: Rational,
}

impl GlConnection {
    pub fn new(module: EvalModule) -> Self {
        Self::build(module, false)
    }

    /// Negative control: `D_1` (zero-based) without its `κ` sum.
    pub fn mutant(module: EvalModule) -> Self {
        Self::build(module, true)
    }

    fn build(module: EvalModule, mutate: bool) -> Self {
        let n = module.n();
        let kappa: Vec<Vec<ExactMatrix>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a == b {
                            ExactMatrix::zeros(module.dim())
                        } else {
                            module.module().casimir_truncated(a, b).expect("a ≠ b")
                        }
                    })
                    .collect()
            })
            .collect();
        let mut d: Vec<ExactMatrix> = (0..n).map(|i| (*module.d(i)).clone()).collect();
        if mutate && n >= 2 {
            d[1] = d[1].add_ref(&kappa[0][1]);
        }
        let half = rat(1, 2);
        let delta = (0..n)
            .map(|i| {
                let mut x = d[i].clone();
                for (j, k) in kappa[i].iter().enumerate() {
                    if j > i {
                        x = x.add_scaled(k, &-half.clone());
                    } else if j < i {
                        x = x.add_scaled(k, &half);
                    }
                }
                x
            })
            .collect();
        let dtilde = (0..n)
            .map(|i| (i + 1..n).fold(d[i].clone(), |acc, j| acc.sub_ref(&kappa[i][j])))
            .collect();
        Self {
            n,
            module,
            kappa,
            d,
            delta,
            dtilde,
            scale: Rational::one(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(mut self, c: Rational) -> Self {
        self.scale = c;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module(&self) -> &EvalModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `κ_{θ_a−θ_b}` for `a ≠ b`.
    pub fn kappa(&self, a: usize, b: usize) -> &ExactMatrix {
        &self.kappa[a][b]
    }

    pub fn d(&self, i: usize) -> &ExactMatrix {
        &self.d[i]
    }

    /// `D(v) = Σ v_i D_i`.
    pub fn d_of(&self, v: &[Rational]) -> ExactMatrix {
        combine(self.dim(), v, &self.d)
    }

    fn check_direction(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "direction",
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `A(z)(v)` in the requested form.
    pub fn coefficient(&self, style: FormStyle, p: &TorusPoint, v: &[Rational]) -> Result<ExactMatrix> {
        p.require_regular()?;
        self.check_direction(v)?;
        let n = self.n;
        let mut acc = ExactMatrix::zeros(self.dim());
        for a in 0..n {
            for b in a + 1..n {
                let alpha_v = &v[a] - &v[b];
                let e = p.ratio(a, b);
                let c = match style {
                    FormStyle::Tau => alpha_v / (e - int(1)),
                    FormStyle::Delta => alpha_v * (&e + int(1)) / ((e - int(1)) * int(2)),
                    FormStyle::RationalZ => (&p.z[a] * &v[a] - &p.z[b] * &v[b]) / (&p.z[a] - &p.z[b]),
                };
                if !c.is_zero() {
                    acc = acc.add_scaled(&self.kappa[a][b], &c);
                }
            }
        }
        let tail = match style {
            FormStyle::Tau => &self.d,
            FormStyle::Delta => &self.delta,
            FormStyle::RationalZ => &self.dtilde,
        };
        acc = acc.add_ref(&combine(self.dim(), v, tail));
        Ok(acc.scale(&self.scale))
    }

    /// Coefficient with positive system `wΦ_+` and tail `τ_w`, where `w` is
    /// the permutation `θ_i ↦ θ_{w(i)}`.
    pub fn coefficient_in_chamber(&self, w: &[usize], p: &TorusPoint, v: &[Rational]) -> Result<ExactMatrix> {
        p.require_regular()?;
        self.check_direction(v)?;
        let n = self.n;
        let mut winv = vec![0; n];
        for (i, &x) in w.iter().enumerate() {
            winv[x] = i;
        }
        let mut acc = ExactMatrix::zeros(self.dim());
        for a in 0..n {
            for b in a + 1..n {
                let (c, d) = (w[a], w[b]);
                let e = p.ratio(c, d);
                let coeff = (&v[c] - &v[d]) / (e - int(1));
                if !coeff.is_zero() {
                    acc = acc.add_scaled(&self.kappa[c.min(d)][c.max(d)], &coeff);
                }
            }
        }
        let mut tau_w = self.d_of(v);
        for a in 0..n {
            for b in a + 1..n {
                if winv[a] > winv[b] {
                    tau_w = tau_w.add_scaled(&self.kappa[a][b], &-(&v[a] - &v[b]));
                }
            }
        }
        Ok(acc.add_ref(&tau_w).scale(&self.scale))
    }

    /// `max_{i<j} |[A(e_i), A(e_j)]|` over coordinate directions.
    pub fn flatness_residual(&self, style: FormStyle, p: &TorusPoint) -> Result<Rational> {
        let coeffs = (0..self.n)
            .map(|i| self.coefficient(style, p, &unit(self.n, i)))
            .collect::<Result<Vec<_>>>()?;
        let mut worst = Rational::zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let r = coeffs[i].commutator(&coeffs[j]).max_abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst)
    }

    /// Largest difference between the three forms over coordinate directions.
    pub fn form_agreement(&self, p: &TorusPoint) -> Result<Rational> {
        let mut worst = Rational::zero();
        for i in 0..self.n {
            let v = unit(self.n, i);
            let tau = self.coefficient(FormStyle::Tau, p, &v)?;
            for style in [FormStyle::Delta, FormStyle::RationalZ] {
                let r = tau.sub_ref(&self.coefficient(style, p, &v)?).max_abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst)
    }

    /// Equivariance under the simple transposition `(i, i+1)`:
    /// `Ad(r_i) κ_α = κ_{s_i α}`, `Ad(r_i) D(u) − D(s_i u) = α_i(u) κ_{α_i}`,
    /// and `Ad(r_i) A(z)(v) = A(s_i z)(s_i v)`.
    pub fn equivariance_residual(&self, i: usize, p: &TorusPoint) -> Result<Vec<CheckRecord>> {
        let n = self.n;
        let r = self.module.module().tits_operator(i)?;
        let rinv = r.inverse().ok_or_else(|| Error::Singular("Tits operator".into()))?;
        let ad = |x: &ExactMatrix| r.matmul(x).matmul(&rinv);
        let swap = |k: usize| {
            if k == i {
                i + 1
            } else if k == i + 1 {
                i
            } else {
                k
            }
        };
        let mut w1 = Rational::zero();
        for a in 0..n {
            for b in a + 1..n {
                let res = ad(&self.kappa[a][b]).sub_ref(&self.kappa[swap(a)][swap(b)]).max_abs();
                w1 = w1.max(res);
            }
        }
        let mut w2 = Rational::zero();
        let mut w3 = Rational::zero();
        let perm: Vec<usize> = (0..n).map(swap).collect();
        let sp = p.permuted(&perm);
        for k in 0..n {
            let u = unit(self.n, k);
            let su: Vec<Rational> = (0..n).map(|j| u[swap(j)].clone()).collect();
            let alpha_u = &u[i] - &u[i + 1];
            let res = ad(&self.d_of(&u))
                .sub_ref(&self.d_of(&su))
                .add_scaled(&self.kappa[i][i + 1], &-alpha_u);
            w2 = w2.max(res.max_abs());
            let lhs = ad(&self.coefficient(FormStyle::Tau, p, &u)?);
            let rhs = self.coefficient(FormStyle::Tau, &sp, &su)?;
            w3 = w3.max(lhs.sub_ref(&rhs).max_abs());
        }
        let tag = |rec: CheckRecord| self.tag(rec).with("i", i);
        Ok(vec![
            tag(CheckRecord::exact("equiv kappa", "s_i(t_α) = t_{s_i α}", &w1)),
            tag(CheckRecord::exact("equiv tail", "s_i(τ(u)) − τ(s_i u) = α_i(u) t_{α_i}", &w2)),
            tag(CheckRecord::exact("equiv pointwise", "Ad(r_i) A(z)(v) = A(s_i z)(s_i v)", &w3)
                .with("z", rational_list(&p.z))),
        ])
    }

    fn tag(&self, rec: CheckRecord) -> CheckRecord {
        rec.with("n", self.n)
            .with("m", self.module.module().factors())
            .with("a", rational_list(&self.module.params().points))
    }

    /// Coefficient in chamber `w` minus the original, over coordinate directions.
    pub fn chamber_change_residual(&self, w: &[usize], p: &TorusPoint) -> Result<Rational> {
        let mut worst = Rational::zero();
        for i in 0..self.n {
            let v = unit(self.n, i);
            let r = self
                .coefficient_in_chamber(w, p, &v)?
                .sub_ref(&self.coefficient(FormStyle::Tau, p, &v)?)
                .max_abs();
            worst = worst.max(r);
        }
        Ok(worst)
    }

    /// `A_gl(v) − A_sl(v) − Σ_i λ_i(v)(E_ii − E_{i+1,i+1})` for trace-free `v`,
    /// with `A_sl(v) = Σ κ-terms + Σ_i λ_i(v)(−2T_{i,1} + (E_ii − E_{i+1,i+1})²)`.
    pub fn sln_restriction_residual(&self, p: &TorusPoint, v: &[Rational]) -> Result<ExactMatrix> {
        self.check_direction(v)?;
        if !v.iter().sum::<Rational>().is_zero() {
            return Err(Error::Precondition("direction must be trace-free".into()));
        }
        let n = self.n;
        let gl = self.coefficient(FormStyle::Tau, p, v)?;
        let mut sl = ExactMatrix::zeros(self.dim());
        for a in 0..n {
            for b in a + 1..n {
                let c = (&v[a] - &v[b]) / (p.ratio(a, b) - int(1));
                sl = sl.add_scaled(&self.kappa[a][b], &c);
            }
        }
        let m = self.module.module();
        let mut lambda = Rational::zero();
        let mut closed = ExactMatrix::zeros(self.dim());
        for i in 0..n - 1 {
            lambda += &v[i];
            let h = m.e(i, i).sub_ref(m.e(i + 1, i + 1));
            let t1 = self.module.realize(YangianSymbol::T1(i))?;
            let tail = t1.scale(&int(-2)).add_ref(&h.matmul(&h));
            sl = sl.add_scaled(&tail, &lambda);
            closed = closed.add_scaled(&h, &lambda);
        }
        Ok(gl.sub_ref(&sl.scale(&self.scale)).sub_ref(&closed.scale(&self.scale)))
    }

    /// `L_i(a, z)` of the trigonometric dynamical operators
    /// `z_i ∂_{z_i} + λ L_i`.
    pub fn tv_operator(&self, p: &TorusPoint, i: usize) -> Result<ExactMatrix> {
        p.require_regular()?;
        let m = self.module.module();
        let pts = &self.module.params().points;
        let eii = m.e(i, i);
        let mut l = eii.matmul(eii).scale(&rat(1, 2));
        for (q, a) in pts.iter().enumerate() {
            l = l.add_scaled(m.e_in(q, i, i), &-a.clone());
        }
        for j in 0..self.n {
            for q1 in 0..m.factors() {
                for q2 in q1 + 1..m.factors() {
                    l = l.sub_ref(&m.e_in(q1, i, j).matmul(m.e_in(q2, j, i)));
                }
            }
            if j != i {
                let c = &p.z[j] / (&p.z[i] - &p.z[j]);
                let x = m.e(i, j).matmul(m.e(j, i)).sub_ref(eii);
                l = l.add_scaled(&x, &-c);
            }
        }
        Ok(l)
    }

    /// Coefficient `A'(v)` of the connection whose covariant derivatives are
    /// the dynamical operators, at parameter `λ`.
    pub fn tv_coefficient(&self, p: &TorusPoint, v: &[Rational], lambda: &Rational) -> Result<ExactMatrix> {
        p.require_regular()?;
        self.check_direction(v)?;
        let m = self.module.module();
        let n = self.n;
        let mut acc = ExactMatrix::zeros(self.dim());
        for a in 0..n {
            for b in a + 1..n {
                let c = (&v[a] - &v[b]) / (p.ratio(a, b) - int(1));
                let x = self.kappa[a][b].sub_ref(&m.e(a, a).add_ref(m.e(b, b)));
                acc = acc.add_scaled(&x, &c);
            }
        }
        for i in 0..n {
            let mut dp = (*self.module.d(i)).clone();
            for j in 0..i {
                dp = dp.add_ref(&m.e(i, i).add_ref(m.e(j, j)));
            }
            acc = acc.add_scaled(&dp, &v[i]);
        }
        Ok(acc.scale(&(lambda / int(2))))
    }

    /// The `h`-valued closed form `ω(v)` relating `A'` and `(λ/2) A`.
    pub fn tv_closed_form(&self, p: &TorusPoint, v: &[Rational], lambda: &Rational) -> Result<ExactMatrix> {
        let m = self.module.module();
        let n = self.n;
        let mut acc = ExactMatrix::zeros(self.dim());
        for a in 0..n {
            for b in a + 1..n {
                let c = (&v[a] - &v[b]) / (p.ratio(a, b) - int(1));
                acc = acc.add_scaled(&m.e(a, a).add_ref(m.e(b, b)), &c);
            }
        }
        for i in 0..n {
            for j in 0..i {
                acc = acc.add_scaled(&m.e(i, i).add_ref(m.e(j, j)), &-v[i].clone());
            }
        }
        Ok(acc.scale(&(lambda / int(2))))
    }

    /// `max_i |A'(∂_{θ_i}) + λ L_i|` and `max_i |A'(e_i) − (λ/2)A(e_i) + ω(e_i)|`.
    pub fn tv_match_residual(&self, p: &TorusPoint, lambda: &Rational) -> Result<(Rational, Rational)> {
        let mut w1 = Rational::zero();
        let mut w2 = Rational::zero();
        let base = self.clone().scaled(Rational::one());
        for i in 0..self.n {
            let v = unit(self.n, i);
            let ap = self.tv_coefficient(p, &v, lambda)?;
            let l = self.tv_operator(p, i)?;
            w1 = w1.max(ap.add_ref(&l.scale(lambda)).max_abs());
            let a = base.coefficient(FormStyle::Tau, p, &v)?.scale(&(lambda / int(2)));
            let omega = self.tv_closed_form(p, &v, lambda)?;
            w2 = w2.max(ap.sub_ref(&a).add_ref(&omega).max_abs());
        }
        Ok((w1, w2))
    }
}

/// `Σ_i v_i X_i`.
fn combine(dim: usize, v: &[Rational], xs: &[ExactMatrix]) -> ExactMatrix {
    v.iter()
        .zip(xs)
        .filter(|(c, _)| !c.is_zero())
        .fold(ExactMatrix::zeros(dim), |acc, (c, x)| acc.add_scaled(x, c))
}

/// Coordinate direction `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| int(i64::from(i == j))).collect()
}

/// Trace-free `u` with `u_i − u_{i+1} = c_i`.
pub fn trace_free_from_simple(c: &[Rational]) -> Vec<Rational> {
    let n = c.len() + 1;
    let first: Rational = c
        .iter()
        .enumerate()
        .map(|(k, x)| x * int((n - 1 - k) as i64))
        .sum::<Rational>()
        / int(n as i64);
    let mut u = vec![first];
    for x in c {
        let next = u.last().expect("nonempty") - x;
        u.push(next);
    }
    u
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).expect("exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
}

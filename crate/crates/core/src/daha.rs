//! Degenerate affine Hecke algebra `H′`: the induced modules `Ind χ` over
//! `C W`, the action on zero weight spaces of small `Y(sl_n)`-modules, and the
//! comparison of the trigonometric Casimir connection with the AKZ
//! connection.
//!
//! Coweights `u ∈ h` are given by their values on the simple roots, so
//! `x_u = Σ_j α_j(u) x_{ϖ_j}` with `ϖ_j` the fundamental coweights.

use crate::algebra::{int, linalg, rat, ExactMatrix, Rational, Scalar};
use crate::connection::{trace_free_from_simple, FormStyle, GlConnection, TorusPoint};
use crate::error::{Error, Result};
use crate::relations::{gl_pair, sl_root_system, RelationInstance};
use crate::report::{rational_list, CheckRecord};
use crate::rootsys::{RootSystem, WeylElement};
use crate::sample::Sampler;
use crate::yangian::EvalModule;

/// `W`-invariant multiplicity: one value per root length.
#[derive(Clone, Debug, PartialEq)]
pub struct DahaParams {
    pub k_long: Rational,
    pub k_short: Rational,
}

impl DahaParams {
    pub fn new(k_long: Rational, k_short: Rational) -> Self {
        Self { k_long, k_short }
    }

    pub fn uniform(k: Rational) -> Self {
        Self::new(k.clone(), k)
    }

    /// `k_α = −(α, α)` at `ħ = 1`.
    pub fn yangian(rs: &RootSystem) -> Self {
        let short = rs
            .positive_roots()
            .iter()
            .map(|b| rs.length2(b))
            .min()
            .unwrap_or_else(|| int(2));
        Self::new(int(-2), -short)
    }

    pub fn k_of(&self, rs: &RootSystem, beta: &[i64]) -> Rational {
        if rs.is_long(beta) {
            self.k_long.clone()
        } else {
            self.k_short.clone()
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "{}/{}",
            crate::algebra::rational_string(&self.k_long),
            crate::algebra::rational_string(&self.k_short)
        )
    }
}

/// Matrices of an `H′`-module.
#[derive(Clone, Debug)]
pub struct DahaModule {
    /// `s_i` for each simple root.
    pub s: Vec<ExactMatrix>,
    /// `x_{ϖ_j}` for each fundamental coweight.
    pub x: Vec<ExactMatrix>,
    /// `s_β` for each positive root, in root order.
    pub reflections: Vec<ExactMatrix>,
    /// `k_β` for each positive root.
    pub k: Vec<Rational>,
}

impl DahaModule {
    pub fn dim(&self) -> usize {
        self.s.first().map_or_else(|| self.x[0].dim(), ExactMatrix::dim)
    }

    pub fn x_of(&self, u: &[Rational]) -> ExactMatrix {
        combine(&self.x, u, self.dim())
    }

    /// `y_u = x_u − ½ Σ_{α>0} α(u) k_α s_α`.
    pub fn y_of(&self, rs: &RootSystem, u: &[Rational]) -> ExactMatrix {
        let half = rat(1, 2);
        rs.positive_roots()
            .iter()
            .zip(&self.reflections)
            .zip(&self.k)
            .fold(self.x_of(u), |acc, ((b, s), k)| acc.add_scaled(s, &-(rs.pair(b, u) * k * &half)))
    }

    /// The same `s` and `x` with `t_α = k′_α s_α` for other multiplicities.
    pub fn with_k(&self, rs: &RootSystem, params: &DahaParams) -> Self {
        let mut out = self.clone();
        out.k = rs.positive_roots().iter().map(|b| params.k_of(rs, b)).collect();
        out
    }

    /// `t_α = k_α s_α`, `τ(u) = x_u` and `S_i = s_i`.
    pub fn relation_instance<'a>(&self, rs: &'a RootSystem) -> Result<RelationInstance<'a>> {
        let t = self.reflections.iter().zip(&self.k).map(|(s, k)| s.scale(k)).collect();
        RelationInstance::new(rs, t, self.x.clone(), Some(self.s.clone()))
    }

    /// Defining relations of `H′`, one record each.
    pub fn relation_records(&self, rs: &RootSystem) -> Vec<CheckRecord> {
        let r = rs.rank();
        let id = ExactMatrix::identity(self.dim());
        let mut invol = Rational::zero();
        let mut braid = Rational::zero();
        let mut cross = Rational::zero();
        let mut comm = Rational::zero();
        let mut yeq = Rational::zero();
        for i in 0..r {
            invol = invol.max(self.s[i].matmul(&self.s[i]).sub_ref(&id).max_abs());
            for j in i + 1..r {
                let m = braid_order(rs.cartan_matrix()[i][j] * rs.cartan_matrix()[j][i]);
                braid = braid.max(self.s[i].matmul(&self.s[j]).pow(m).sub_ref(&id).max_abs());
            }
            let si = rs.simple_reflection(i);
            let ki = self.k[rs.positive_index(&rs.simple_root(i)).expect("simple root")].clone();
            for j in 0..r {
                let u = rs.fundamental_coweight(j);
                let su = rs.act_coweight(si, &u);
                let lhs = self.s[i].matmul(&self.x[j]).sub_ref(&self.x_of(&su).matmul(&self.s[i]));
                let rhs = ExactMatrix::scalar(self.dim(), &(&ki * rs.pair(&rs.simple_root(i), &u)));
                cross = cross.max(lhs.sub_ref(&rhs).max_abs());
                let y = self.s[i].matmul(&self.y_of(rs, &u)).matmul(&self.s[i]);
                yeq = yeq.max(y.sub_ref(&self.y_of(rs, &su)).max_abs());
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                comm = comm.max(self.x[a].commutator(&self.x[b]).max_abs());
            }
        }
        vec![
            CheckRecord::exact("s_i^2", "s_i² = 1", &invol),
            CheckRecord::exact("braid", "(s_i s_j)^{m_ij} = 1", &braid),
            CheckRecord::exact("dAHA cross relation", "s_i x_u − x_{s_i u} s_i = k_i α_i(u)", &cross),
            CheckRecord::exact("x commute", "[x_u, x_v] = 0", &comm),
            CheckRecord::exact("y equivariance", "s_i y_u s_i = y_{s_i u}", &yeq),
        ]
    }
}

fn combine(basis: &[ExactMatrix], c: &[Rational], dim: usize) -> ExactMatrix {
    basis
        .iter()
        .zip(c)
        .fold(ExactMatrix::zeros(dim), |acc, (x, c)| acc.add_scaled(x, c))
}

fn braid_order(product: i64) -> u32 {
    match product {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

/// Left multiplication by `w` on `C W`, basis in [`RootSystem::weyl_group`] order.
pub fn left_regular(rs: &RootSystem, w: &WeylElement) -> ExactMatrix {
    let n = rs.weyl_group().len();
    let mut out = ExactMatrix::zeros(n);
    for (col, v) in rs.weyl_group().iter().enumerate() {
        out.set(rs.element_index(rs.compose(w, v)), col, int(1));
    }
    out
}

/// `Ind_{Sh}^{H′} C_χ` on the basis `{w ⊗ 1}`; `chi[j] = χ(ϖ_j)`.
pub fn induced(rs: &RootSystem, params: &DahaParams, chi: &[Rational]) -> Result<DahaModule> {
    let r = rs.rank();
    if chi.len() != r {
        return Err(Error::DimensionMismatch {
            context: "character",
            expected: r,
            found: chi.len(),
        });
    }
    let group = rs.weyl_group();
    let n = group.len();
    let s: Vec<ExactMatrix> = (0..r).map(|i| left_regular(rs, rs.simple_reflection(i))).collect();
    // cols[w][j] = x_{ϖ_j}(w ⊗ 1), filled by increasing length.
    let mut cols: Vec<Option<Vec<Vec<Rational>>>> = vec![None; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&w| group[w].length());
    for w in order {
        let elem = &group[w];
        let col = if elem.is_identity() {
            (0..r)
                .map(|j| (0..n).map(|b| if b == w { chi[j].clone() } else { Rational::zero() }).collect())
                .collect()
        } else {
            // x_u (s_i w′) = s_i x_{s_i u} w′ + k_i α_i(u) w′.
            let i = elem.word[0];
            let wp = rs.element_index(rs.compose(rs.simple_reflection(i), elem));
            let prev = cols[wp].as_ref().expect("shorter element done");
            let ki = params.k_of(rs, &rs.simple_root(i));
            (0..r)
                .map(|j| {
                    let su = rs.act_coweight(rs.simple_reflection(i), &rs.fundamental_coweight(j));
                    let mut v = vec![Rational::zero(); n];
                    for (l, c) in su.iter().enumerate() {
                        for (b, x) in prev[l].iter().enumerate() {
                            if !x.is_zero() {
                                v[b] += c * x;
                            }
                        }
                    }
                    let mut out = s[i].mul_vec(&v);
                    if i == j {
                        out[wp] += &ki;
                    }
                    out
                })
                .collect()
        };
        cols[w] = Some(col);
    }
    let x = (0..r)
        .map(|j| ExactMatrix::from_fn(n, |row, c| cols[c].as_ref().expect("filled")[j][row].clone()))
        .collect();
    let reflections = rs.positive_roots().iter().map(|b| left_regular(rs, rs.reflection(b))).collect();
    let k = rs.positive_roots().iter().map(|b| params.k_of(rs, b)).collect();
    Ok(DahaModule { s, x, reflections, k })
}

/// Relations of the connection `d − Σ k_α s_α dα/(e^α−1) − du_i x_{u^i}` on
/// `Ind χ` at random `k`, the `H′` relations, and a witness that mutating `k`
/// in `t_α` breaks both `(equiv2)` and the cross relation.
pub fn akz_relation_suite(rs: &RootSystem, samples: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut rng = Sampler::new(seed);
    let mut out = Vec::new();
    for sample in 0..samples {
        let params = if rs.positive_roots().iter().all(|b| rs.is_long(b)) {
            DahaParams::uniform(rng.nonzero_rational())
        } else {
            DahaParams::new(rng.nonzero_rational(), rng.nonzero_rational())
        };
        let chi = rng.rationals(rs.rank());
        let module = induced(rs, &params, &chi)?;
        let tag = |r: CheckRecord| {
            r.with("type", rs.label())
                .with("k", params.describe())
                .with("chi", rational_list(&chi))
                .with("sample", sample)
        };
        out.extend(module.relation_instance(rs)?.suite()?.into_iter().map(tag));
        out.extend(module.relation_records(rs).into_iter().map(tag));
        let shift = int(1);
        let mutated = DahaParams::new(&params.k_long + &shift, &params.k_short + &shift);
        let bad = module.with_k(rs, &mutated);
        let inst = bad.relation_instance(rs)?;
        let equiv2 = inst
            .equivariance()?
            .into_iter()
            .find(|r| r.name == "equiv2")
            .expect("fibre action present");
        let cross = bad
            .relation_records(rs)
            .into_iter()
            .find(|r| r.name == "dAHA cross relation")
            .expect("present");
        out.push(tag(rename(equiv2, "mutated k equiv2").expect_failure()));
        out.push(tag(rename(cross, "mutated k cross relation").expect_failure()));
    }
    Ok(out)
}

fn rename(mut r: CheckRecord, name: &str) -> CheckRecord {
    r.name = name.into();
    r
}

/// `H′` acting on `V[0]` of a small `Y(sl_n)`-module realized through `gl_n`.
#[derive(Clone, Debug)]
pub struct YangianDaha {
    module: EvalModule,
    rs: RootSystem,
    basis: Vec<usize>,
    daha: DahaModule,
    /// `J(ϖ_j)` restricted to `V[0]`.
    j: Vec<ExactMatrix>,
}

impl YangianDaha {
    pub fn new(module: EvalModule) -> Result<Self> {
        let gl = module.module();
        let n = gl.n();
        if let (false, witness) = gl.is_small() {
            return Err(Error::NotSmall {
                witness: witness.unwrap_or_default(),
            });
        }
        let basis = gl.zero_weight_basis();
        if basis.is_empty() {
            return Err(Error::Precondition("zero weight space is trivial".into()));
        }
        let rs = sl_root_system(n)?;
        let params = DahaParams::yangian(&rs);
        let res = |m: &ExactMatrix| m.restrict(&basis);
        let s = (0..n - 1).map(|i| Ok(res(&gl.tits_operator(i)?))).collect::<Result<Vec<_>>>()?;
        let reflections = rs
            .positive_roots()
            .iter()
            .map(|b| {
                let (a, c) = gl_pair(b);
                Ok(res(&gl.tits_operator_for(a, c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let k: Vec<Rational> = rs.positive_roots().iter().map(|b| params.k_of(&rs, b)).collect();
        let t1: Vec<ExactMatrix> = (0..n - 1)
            .map(|i| Ok(res(&module.sl_restriction_data(i)?.1)))
            .collect::<Result<Vec<_>>>()?;
        // v_i = ¼ Σ_{β>0} (α_i, β) κ_β − ½ h_i².
        let mut v_corr = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let ai = rs.simple_root(i);
            let mut acc = ExactMatrix::zeros(gl.dim());
            for b in rs.positive_roots() {
                let (a, c) = gl_pair(b);
                let w = rs.inner(&ai, b) / int(4);
                if !w.is_zero() {
                    acc = acc.add_scaled(&gl.casimir_truncated(a, c)?, &w);
                }
            }
            let h = gl.e(i, i).sub_ref(gl.e(i + 1, i + 1));
            acc = acc.add_scaled(&h.matmul(&h), &rat(-1, 2));
            v_corr.push(res(&acc));
        }
        let dim = basis.len();
        let half = rat(1, 2);
        let mut x = Vec::with_capacity(n - 1);
        let mut j = Vec::with_capacity(n - 1);
        for col in 0..n - 1 {
            let u = rs.fundamental_coweight(col);
            let lam = lambda(&trace_free_from_simple(&u));
            let t_u = combine(&t1, &lam, dim);
            let shift: Rational = rs
                .positive_roots()
                .iter()
                .zip(&k)
                .map(|(b, kb)| kb * rs.pair(b, &u))
                .sum::<Rational>()
                * &half;
            x.push(t_u.scale(&int(-2)).add_ref(&ExactMatrix::scalar(dim, &shift)));
            j.push(t_u.add_ref(&combine(&v_corr, &lam, dim)));
        }
        Ok(Self {
            module,
            rs,
            basis,
            daha: DahaModule { s, x, reflections, k },
            j,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn daha(&self) -> &DahaModule {
        &self.daha
    }

    pub fn zero_weight_basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn points(&self) -> &[Rational] {
        &self.module.params().points
    }

    /// `max_j |−2J(ϖ_j) − y_{ϖ_j}|` on `V[0]`.
    pub fn y_residual(&self) -> Rational {
        (0..self.rs.rank())
            .map(|c| {
                let u = self.rs.fundamental_coweight(c);
                self.j[c].scale(&int(-2)).sub_ref(&self.daha.y_of(&self.rs, &u)).max_abs()
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// `A_trig(v)|V[0] − [x_v + Σ_{α>0} k_α α(v)/(e^α−1) s_α] + 𝒜(v)` for trace-free `v ∈ C^n`.
    pub fn akz_equality_residual(&self, p: &TorusPoint, v: &[Rational]) -> Result<ExactMatrix> {
        let n = self.module.n();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                context: "direction",
                expected: n,
                found: v.len(),
            });
        }
        if !v.iter().sum::<Rational>().is_zero() {
            return Err(Error::Precondition("direction must be trace-free".into()));
        }
        let u: Vec<Rational> = (0..n - 1).map(|i| &v[i] - &v[i + 1]).collect();
        let conn = GlConnection::new(self.module.clone());
        let trig = conn.coefficient(FormStyle::Tau, p, v)?.restrict(&self.basis);
        let mut akz = self.daha.x_of(&u);
        let mut scalar = Rational::zero();
        for ((b, s), k) in self.rs.positive_roots().iter().zip(&self.daha.reflections).zip(&self.daha.k) {
            let (a, c) = gl_pair(b);
            let e = p.ratio(a, c);
            let one = Rational::one();
            if e == one {
                return Err(Error::SingularPoint(format!("e^α = 1 for α = θ_{a} − θ_{c}")));
            }
            let alpha = self.rs.pair(b, &u);
            let f = &alpha / (&e - &one);
            akz = akz.add_scaled(s, &(&f * k));
            // α and −α together: ½k(α/(e^α−1) − α/(e^{−α}−1)) = −½kα.
            let g = -alpha / (e.recip() - &one);
            scalar += (f + g) * k / int(2);
        }
        Ok(trig.sub_ref(&akz).add_ref(&ExactMatrix::scalar(self.basis.len(), &scalar)))
    }

    /// `H′` relations, `y = −2J`, and AKZ equality at the given points.
    pub fn suite(&self, points: &[TorusPoint]) -> Result<Vec<CheckRecord>> {
        let n = self.module.n();
        let tag = |r: CheckRecord| {
            r.with("n", n)
                .with("m", self.module.module().factors())
                .with("a", rational_list(self.points()))
        };
        let mut out: Vec<CheckRecord> = self.daha.relation_records(&self.rs).into_iter().map(tag).collect();
        out.push(tag(CheckRecord::exact("y = -2J", "y_u = −2J(u) on V[0]", &self.y_residual())));
        for p in points {
            let mut worst = Rational::zero();
            for i in 0..n - 1 {
                let mut c = vec![Rational::zero(); n - 1];
                c[i] = int(1);
                let v = trace_free_from_simple(&c);
                worst = worst.max(self.akz_equality_residual(p, &v)?.max_abs());
            }
            out.push(tag(CheckRecord::exact("AKZ equality", "trig Casimir = AKZ + 𝒜 on V[0]", &worst)).with("z", rational_list(&p.z)));
        }
        Ok(out)
    }
}

/// `λ_i(u) = u_0 + ⋯ + u_i`, `i < n − 1`.
fn lambda(u: &[Rational]) -> Vec<Rational> {
    let mut acc = Rational::zero();
    u[..u.len() - 1]
        .iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

/// Dimension of the space of intertwiners `Φ A_g = B_g Φ` over all generators,
/// and whether a random element of it is invertible.
pub fn intertwiners(a: &DahaModule, b: &DahaModule, seed: u64) -> (usize, bool) {
    let d = a.dim();
    if b.dim() != d {
        return (0, false);
    }
    let pairs: Vec<(&ExactMatrix, &ExactMatrix)> = a.s.iter().zip(&b.s).chain(a.x.iter().zip(&b.x)).collect();
    // Unknown Φ_{pq} at index p·d + q.
    let mut rows = Vec::new();
    for (ga, gb) in &pairs {
        for p in 0..d {
            for q in 0..d {
                let mut row = vec![Rational::zero(); d * d];
                for r in 0..d {
                    let x = ga.get(r, q);
                    if !x.is_zero() {
                        row[p * d + r] += x;
                    }
                    let y = gb.get(p, r);
                    if !y.is_zero() {
                        row[r * d + q] -= y;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = linalg::nullspace(&rows, d * d);
    if kernel.is_empty() {
        return (0, false);
    }
    let mut rng = Sampler::new(seed);
    let invertible = (0..4).any(|_| {
        let mut phi = vec![Rational::zero(); d * d];
        for k in &kernel {
            let c = rng.rational();
            for (x, y) in phi.iter_mut().zip(k) {
                *x += &c * y;
            }
        }
        !ExactMatrix::from_fn(d, |p, q| phi[p * d + q].clone()).determinant().is_zero()
    });
    (kernel.len(), invertible)
}

/// Whether `V[0]` of `(C^n)^{⊗n}` at points `a` is isomorphic to `Ind C_χ`
/// with `χ(u) = 2 Σ a_i u_i`.
pub fn induced_module_compare(n: usize, a: &[Rational]) -> Result<bool> {
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            context: "evaluation points",
            expected: n,
            found: a.len(),
        });
    }
    let y = YangianDaha::new(EvalModule::vector_power(n, a))?;
    let rs = y.root_system();
    let chi: Vec<Rational> = (0..rs.rank())
        .map(|j| {
            let u = trace_free_from_simple(&rs.fundamental_coweight(j));
            u.iter().zip(a).map(|(x, b)| x * b).sum::<Rational>() * int(2)
        })
        .collect();
    let ind = induced(rs, &DahaParams::yangian(rs), &chi)?;
    let (_, invertible) = intertwiners(y.daha(), &ind, 17);
    Ok(invertible)
}

/// `max |κ_α|_{V[0]} − 2(1 − s_α)|` over positive roots; nonzero on non-small modules.
pub fn smallness_residual(n: usize, m: usize) -> Result<Rational> {
    let gl = crate::glrep::GlnModule::new(n, m);
    let mut worst = Rational::zero();
    for a in 0..n {
        for b in a + 1..n {
            worst = worst.max(gl.kappa_v0_residual(a, b)?.max_abs());
        }
    }
    Ok(worst)
}

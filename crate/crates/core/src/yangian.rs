//! The `gl_n` Yangian acting on tensor products of evaluation modules.
//!
//! `t_ij(u) = δ_ij + Σ_{r≥1} t_ij^{(r)} u^{-r}` acts on one evaluation
//! module at `a` by `δ_ij + E_ij/(u − a)`, and on `m` factors through the
//! iterated coproduct `Δ(t_ij(u)) = Σ_k t_ik(u) ⊗ t_kj(u)`.
//! All indices are zero-based.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::algebra::{int, rat, ExactMatrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::glrep::GlnModule;
use crate::report::{rational_list, CheckRecord};

/// Highest mode kept in the cached coproduct series.
const CACHED_MODES: usize = 3;

/// Evaluation points `a_1, …, a_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalParams {
    pub points: Vec<Rational>,
}

impl EvalParams {
    pub fn new(points: Vec<Rational>) -> Self {
        Self { points }
    }

    pub fn from_i64(points: &[i64]) -> Self {
        Self::new(points.iter().map(|&a| int(a)).collect())
    }

    /// All points shifted by `v`.
    pub fn shifted(&self, v: &Rational) -> Self {
        Self::new(self.points.iter().map(|a| a + v).collect())
    }

    /// Points `a_p + v_p`.
    pub fn translated(&self, v: &[Rational]) -> Self {
        Self::new(self.points.iter().zip(v).map(|(a, b)| a + b).collect())
    }
}

/// Named elements of `Y(gl_n)` with a matrix realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YangianSymbol {
    /// `t_ij^{(r)}`.
    T { i: usize, j: usize, r: usize },
    /// `h_i^{(2)} = t_ii^{(2)} − Σ_{j<i} E_ij E_ji`.
    H2(usize),
    /// `D_i = 2 t_ii^{(2)} − Σ_{j<i} κ_{θ_j−θ_i} − E_ii²`.
    D(usize),
    /// `Δ_i = D_i − ½ Σ_{a<b} (θ_a − θ_b)(E_ii) κ_{θ_a−θ_b}`.
    DeltaI(usize),
    /// `D̃_i = D_i − Σ_{j>i} κ_{θ_i−θ_j}`.
    DTilde(usize),
    /// `T_{i,1}` for the simple root `θ_i − θ_{i+1}`.
    T1(usize),
    /// `𝐃 = D_1 + ⋯ + D_n`.
    BoldD,
}

/// `(C^n)^{⊗m}` as a tensor product of evaluation modules.
#[derive(Debug)]
pub struct EvalModule {
    module: GlnModule,
    params: EvalParams,
    series: OnceLock<Vec<Vec<Vec<ExactMatrix>>>>,
    cache: RwLock<HashMap<YangianSymbol, Arc<ExactMatrix>>>,
}

impl Clone for EvalModule {
    fn clone(&self) -> Self {
        Self::new(self.module.clone(), self.params.clone()).expect("already validated")
    }
}

impl EvalModule {
    pub fn new(module: GlnModule, params: EvalParams) -> Result<Self> {
        if params.points.len() != module.factors() {
            return Err(Error::DimensionMismatch {
                context: "evaluation points",
                expected: module.factors(),
                found: params.points.len(),
            });
        }
        Ok(Self {
            module,
            params,
            series: OnceLock::new(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// `(C^n)^{⊗m}` with `m = points.len()`.
    pub fn vector_power(n: usize, points: &[Rational]) -> Self {
        Self::new(GlnModule::new(n, points.len()), EvalParams::new(points.to_vec()))
            .expect("matching lengths")
    }

    pub fn module(&self) -> &GlnModule {
        &self.module
    }

    pub fn params(&self) -> &EvalParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.module.n()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The same module at other evaluation points.
    pub fn with_params(&self, params: EvalParams) -> Result<Self> {
        Self::new(self.module.clone(), params)
    }

    /// `series[i][j][r]` is the image of `t_ij^{(r)}` for `r ≤ max_r`.
    fn coproduct_series(&self, max_r: usize) -> Vec<Vec<Vec<ExactMatrix>>> {
        let (n, dim) = (self.n(), self.dim());
        let mut cur: Vec<Vec<Vec<ExactMatrix>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![ExactMatrix::zeros(dim); max_r + 1];
                        if i == j {
                            v[0] = ExactMatrix::identity(dim);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        for (p, a) in self.params.points.iter().enumerate() {
            let powers: Vec<Rational> = (0..max_r)
                .scan(Rational::one(), |acc, _| {
                    let out = acc.clone();
                    *acc = &*acc * a;
                    Some(out)
                })
                .collect();
            let mut next = cur.clone();
            for i in 0..n {
                for j in 0..n {
                    for r in 1..=max_r {
                        let mut acc = next[i][j][r].clone();
                        for k in 0..n {
                            let e = self.module.e_in(p, k, j);
                            for s in 1..=r {
                                let left = &cur[i][k][r - s];
                                if left.is_zero() {
                                    continue;
                                }
                                acc = acc.add_scaled(&left.matmul(e), &powers[s - 1]);
                            }
                        }
                        next[i][j][r] = acc;
                    }
                }
            }
            cur = next;
        }
        cur
    }

    fn t_matrix(&self, i: usize, j: usize, r: usize) -> ExactMatrix {
        if r <= CACHED_MODES {
            let s = self.series.get_or_init(|| self.coproduct_series(CACHED_MODES));
            s[i][j][r].clone()
        } else {
            self.coproduct_series(r).swap_remove(i).swap_remove(j).swap_remove(r)
        }
    }

    fn check_index(&self, i: usize, bound: usize) -> Result<()> {
        if i >= bound {
            return Err(Error::IndexOutOfRange {
                context: "Yangian symbol",
                index: i,
                bound,
            });
        }
        Ok(())
    }

    fn kappa(&self, a: usize, b: usize) -> ExactMatrix {
        self.module.casimir_truncated(a, b).expect("a ≠ b")
    }

    fn compute(&self, sym: YangianSymbol) -> Result<ExactMatrix> {
        let n = self.n();
        let m = &self.module;
        Ok(match sym {
            YangianSymbol::T { i, j, r } => {
                self.check_index(i, n)?;
                self.check_index(j, n)?;
                self.t_matrix(i, j, r)
            }
            YangianSymbol::H2(i) => {
                self.check_index(i, n)?;
                let mut h = self.t_matrix(i, i, 2);
                for j in 0..i {
                    h = h.sub_ref(&m.e(i, j).matmul(m.e(j, i)));
                }
                h
            }
            YangianSymbol::D(i) => {
                self.check_index(i, n)?;
                let eii = m.e(i, i);
                let mut d = self.t_matrix(i, i, 2).scale(&int(2)).sub_ref(&eii.matmul(eii));
                for j in 0..i {
                    d = d.sub_ref(&self.kappa(j, i));
                }
                d
            }
            YangianSymbol::DeltaI(i) => {
                let mut d = (*self.realize(YangianSymbol::D(i))?).clone();
                let half = rat(1, 2);
                for b in i + 1..n {
                    d = d.add_scaled(&self.kappa(i, b), &-half.clone());
                }
                for a in 0..i {
                    d = d.add_scaled(&self.kappa(a, i), &half);
                }
                d
            }
            YangianSymbol::DTilde(i) => {
                let mut d = (*self.realize(YangianSymbol::D(i))?).clone();
                for j in i + 1..n {
                    d = d.sub_ref(&self.kappa(i, j));
                }
                d
            }
            YangianSymbol::T1(i) => {
                self.check_index(i + 1, n)?;
                let hi = self.realize(YangianSymbol::H2(i))?;
                let hj = self.realize(YangianSymbol::H2(i + 1))?;
                let (ei, ej) = (m.e(i, i), m.e(i + 1, i + 1));
                let cartan = ei.sub_ref(ej);
                hj.sub_ref(&hi)
                    .add_scaled(&cartan, &-rat(i as i64, 2))
                    .add_ref(&ei.matmul(ei))
                    .sub_ref(&ei.matmul(ej))
            }
            YangianSymbol::BoldD => (0..n).try_fold(ExactMatrix::zeros(self.dim()), |acc, i| {
                Ok::<_, Error>(acc.add_ref(&*self.realize(YangianSymbol::D(i))?))
            })?,
        })
    }

    /// Realization of a symbol, memoized per module.
    pub fn realize(&self, sym: YangianSymbol) -> Result<Arc<ExactMatrix>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(&sym) {
            return Ok(Arc::clone(hit));
        }
        let value = Arc::new(self.compute(sym)?);
        let mut w = self.cache.write().expect("cache lock");
        Ok(Arc::clone(w.entry(sym).or_insert(value)))
    }

    pub fn d(&self, i: usize) -> Arc<ExactMatrix> {
        self.realize(YangianSymbol::D(i)).expect("index in range")
    }

    /// `[t_ij^{(r+1)}, t_kl^{(s)}] − [t_ij^{(r)}, t_kl^{(s+1)}] − (t_kj^{(r)} t_il^{(s)} − t_kj^{(s)} t_il^{(r)})`.
    pub fn rtt_residual(&self, (i, j, k, l): (usize, usize, usize, usize), r: usize, s: usize) -> Result<ExactMatrix> {
        let t = |a, b, q| self.realize(YangianSymbol::T { i: a, j: b, r: q });
        let lhs = t(i, j, r + 1)?
            .commutator(&*t(k, l, s)?)
            .sub_ref(&t(i, j, r)?.commutator(&*t(k, l, s + 1)?));
        let rhs = t(k, j, r)?
            .matmul(&*t(i, l, s)?)
            .sub_ref(&t(k, j, s)?.matmul(&*t(i, l, r)?));
        Ok(lhs.sub_ref(&rhs))
    }

    /// Max residual of the RTT relation over all indices and `r, s ≤ 2`.
    pub fn rtt_suite(&self) -> Result<CheckRecord> {
        let n = self.n();
        let mut worst = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for r in 0..=2 {
                            for s in 0..=2 {
                                let res = self.rtt_residual((i, j, k, l), r, s)?.max_abs();
                                if res > worst {
                                    worst = res;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(self.tag(CheckRecord::exact("rtt", "RTT relation", &worst)))
    }

    fn tag(&self, rec: CheckRecord) -> CheckRecord {
        rec.with("n", self.n())
            .with("m", self.module.factors())
            .with("a", rational_list(&self.params.points))
    }

    /// `[D_i, D_j] = 0`, `Ad(r_i) D_j = D_j` off `{i, i+1}`,
    /// `Ad(r_i) D_i − D_{i+1} = κ_{θ_i−θ_{i+1}}`, and `𝐃 = 2Σ t_ii^{(2)} − C`.
    pub fn di_identity_suite(&self) -> Result<Vec<CheckRecord>> {
        let n = self.n();
        let ds: Vec<_> = (0..n).map(|i| self.d(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(
                    self.tag(CheckRecord::exact_matrix("D commute", "D_i commute", &ds[i].commutator(&ds[j])))
                        .with("i", i)
                        .with("j", j),
                );
            }
        }
        for i in 0..n.saturating_sub(1) {
            let r = self.module.tits_operator(i)?;
            let rinv = r.inverse().ok_or_else(|| Error::Singular("Tits operator".into()))?;
            let ad = |x: &ExactMatrix| r.matmul(x).matmul(&rinv);
            for (j, dj) in ds.iter().enumerate() {
                if j == i || j == i + 1 {
                    continue;
                }
                out.push(
                    self.tag(CheckRecord::exact_matrix("D fixed", "Ad(r_i) D_j = D_j", &ad(dj).sub_ref(dj)))
                        .with("i", i)
                        .with("j", j),
                );
            }
            let res = ad(&ds[i]).sub_ref(&ds[i + 1]).sub_ref(&self.kappa(i, i + 1));
            out.push(self.tag(CheckRecord::exact_matrix("D swap", "Ad(r_i) D_i − D_{i+1} = κ", &res)).with("i", i));
        }
        let bold = self.realize(YangianSymbol::BoldD)?;
        let trace2 = (0..n).fold(ExactMatrix::zeros(self.dim()), |acc, i| {
            acc.add_ref(&self.t_matrix(i, i, 2))
        });
        let res = bold.sub_ref(&trace2.scale(&int(2)).sub_ref(&self.module.casimir()));
        out.push(self.tag(CheckRecord::exact_matrix("bold D", "𝐃 = 2Σt_ii − C", &res)));
        Ok(out)
    }

    /// Max of `‖[h_i^{(2)}, h_j^{(2)}]‖` over all pairs.
    pub fn gz_commutativity(&self) -> Result<Rational> {
        let n = self.n();
        let hs = (0..n)
            .map(|i| self.realize(YangianSymbol::H2(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut worst = Rational::zero();
        for i in 0..n {
            for j in i + 1..n {
                let r = hs[i].commutator(&hs[j]).max_abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst)
    }

    /// `t_ij^{(2)}(a + v) − t_ij^{(2)}(a) − v Δ(E_ij)`, maximized over `i, j`.
    pub fn translation_shift_check(&self, v: &Rational) -> Result<Rational> {
        let shifted = self.with_params(self.params.shifted(v))?;
        let n = self.n();
        let mut worst = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                let sym = YangianSymbol::T { i, j, r: 2 };
                let res = shifted
                    .realize(sym)?
                    .sub_ref(&*self.realize(sym)?)
                    .sub_ref(&self.module.e(i, j).scale(v))
                    .max_abs();
                if res > worst {
                    worst = res;
                }
            }
        }
        Ok(worst)
    }

    /// `(T_{i,0}, T_{i,1})` with `T_{i,0} = −(E_ii − E_{i+1,i+1})`.
    pub fn sl_restriction_data(&self, i: usize) -> Result<(ExactMatrix, Arc<ExactMatrix>)> {
        self.check_index(i + 1, self.n())?;
        let t1 = self.realize(YangianSymbol::T1(i))?;
        let t0 = self.module.e(i + 1, i + 1).sub_ref(self.module.e(i, i));
        Ok((t0, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_on_single_factor() {
        let y = EvalModule::vector_power(2, &[int(3)]);
        let t = y.realize(YangianSymbol::T { i: 0, j: 1, r: 2 }).unwrap();
        assert_eq!(*t, y.module().e(0, 1).scale(&int(3)));
        let t3 = y.realize(YangianSymbol::T { i: 0, j: 1, r: 3 }).unwrap();
        assert_eq!(*t3, y.module().e(0, 1).scale(&int(9)));
        let t5 = y.realize(YangianSymbol::T { i: 0, j: 1, r: 5 }).unwrap();
        assert_eq!(*t5, y.module().e(0, 1).scale(&int(81)));
        assert!(y.realize(YangianSymbol::T { i: 0, j: 1, r: 0 }).unwrap().is_zero());
        assert!(y.realize(YangianSymbol::T { i: 1, j: 1, r: 0 }).unwrap().is_identity());
    }

    #[test]
    fn d1_single_factor() {
        let a = rat(5, 3);
        let y = EvalModule::vector_power(2, std::slice::from_ref(&a));
        let e = y.module().e(0, 0);
        assert_eq!(*y.d(0), e.scale(&(a * int(2))).sub_ref(&e.matmul(e)));
    }

    #[test]
    fn d_at_zero_is_minus_cartan_square() {
        let y = EvalModule::vector_power(3, &[int(0)]);
        let e = y.module().e(0, 0);
        assert_eq!(*y.d(0), e.matmul(e).neg_ref());
        for i in 0..3 {
            let e = y.module().e(i, i);
            let mut expect = e.matmul(e).neg_ref();
            for j in 0..i {
                expect = expect.sub_ref(&y.module().casimir_truncated(j, i).unwrap());
            }
            assert_eq!(*y.d(i), expect);
            assert!(y.d(i).is_diagonal());
            for j in 0..3 {
                assert!(y.d(i).commutator(&y.d(j)).is_zero());
            }
        }
    }

    #[test]
    fn coproduct_of_t2() {
        let a = [int(2), rat(-1, 3)];
        let y = EvalModule::vector_power(2, &a);
        let m = y.module();
        for i in 0..2 {
            for j in 0..2 {
                let mut expect = m.e_in(0, i, j).scale(&a[0]).add_ref(&m.e_in(1, i, j).scale(&a[1]));
                for k in 0..2 {
                    expect = expect.add_ref(&m.e_in(0, i, k).matmul(m.e_in(1, k, j)));
                }
                assert_eq!(*y.realize(YangianSymbol::T { i, j, r: 2 }).unwrap(), expect);
            }
        }
    }

    #[test]
    fn rtt_small() {
        let y = EvalModule::vector_power(2, &[rat(1, 2), int(-3)]);
        assert!(y.rtt_suite().unwrap().pass);
        assert!(y.rtt_residual((0, 0, 0, 0), 0, 0).unwrap().is_zero());
    }

    #[test]
    fn di_suite_n2_m2() {
        let y = EvalModule::vector_power(2, &[int(0), int(1)]);
        let recs = y.di_identity_suite().unwrap();
        assert!(recs.iter().all(|r| r.pass), "{recs:#?}");
    }

    #[test]
    fn di_suite_n3_m2() {
        let y = EvalModule::vector_power(3, &[rat(2, 7), int(-1)]);
        assert!(y.di_identity_suite().unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn gz_and_translation() {
        let y = EvalModule::vector_power(3, &[int(1), rat(-2, 5)]);
        assert!(y.gz_commutativity().unwrap().is_zero());
        assert!(y.translation_shift_check(&rat(7, 3)).unwrap().is_zero());
        assert!(y.translation_shift_check(&int(0)).unwrap().is_zero());
    }

    #[test]
    fn t1_commute() {
        let y = EvalModule::vector_power(3, &[int(1), rat(1, 2), int(-2)]);
        let (t0, t1) = y.sl_restriction_data(0).unwrap();
        let (_, t1b) = y.sl_restriction_data(1).unwrap();
        assert!(t1.commutator(&t1b).is_zero());
        assert_eq!(t0, y.module().e(1, 1).sub_ref(y.module().e(0, 0)));
        assert!(y.sl_restriction_data(2).is_err());
    }

    #[test]
    fn sl_restriction_identity() {
        let y = EvalModule::vector_power(3, &[int(2), rat(-1, 4)]);
        for i in 0..2 {
            let h = y.module().e(i, i).sub_ref(y.module().e(i + 1, i + 1));
            let (_, t1) = y.sl_restriction_data(i).unwrap();
            let lhs = y.d(i).sub_ref(&y.d(i + 1));
            let rhs = t1.scale(&int(-2)).add_ref(&h.matmul(&h)).add_ref(&h);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mismatched_points_rejected() {
        assert!(EvalModule::new(GlnModule::new(2, 2), EvalParams::from_i64(&[1])).is_err());
    }
}

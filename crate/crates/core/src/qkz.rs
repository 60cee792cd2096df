//! Rational qKZ operators on `(C^n)^{⊗m}` and their commutation with the
//! trigonometric Casimir connection.
//!
//! `R(u) = 1 − P/u` is Yang's R-matrix. On factor `i` the multiplier
//! `d_i(z)` acts on `e_k` by `z_k`. The connection entering the
//! commutation is `d − (2ϰ)^{-1} 𝔅` with `𝔅(a) = −A(−a)`, where `A(b)` is the
//! coefficient of the `gl_n` connection on the evaluation module at points `b`.

use crate::algebra::{int, ExactMatrix, Rational, Scalar};
use crate::connection::{FormStyle, GlConnection, TorusPoint};
use crate::error::{Error, Result};
use crate::glrep::GlnModule;
use crate::report::{rational_list, CheckRecord};
use crate::yangian::EvalModule;

/// The flip `P^{pq}` of tensor factors `p` and `q`.
pub fn permutation_operator(module: &GlnModule, p: usize, q: usize) -> ExactMatrix {
    let dim = module.dim();
    let mut out = ExactMatrix::zeros(dim);
    for src in 0..dim {
        let mut t = module.basis_tuple(src);
        t.swap(p, q);
        out.set(module.index_of(&t), src, int(1));
    }
    out
}

/// `R^{pq}(u) = 1 − P^{pq}/u`.
pub fn yang_r(module: &GlnModule, p: usize, q: usize, u: &Rational) -> Result<ExactMatrix> {
    if u.is_zero() {
        return Err(Error::Singular(format!("R^{{{p}{q}}} at zero spectral parameter")));
    }
    let perm = permutation_operator(module, p, q);
    Ok(ExactMatrix::identity(module.dim()).add_scaled(&perm, &-u.recip()))
}

/// `R^{pq}(u)^{-1} = (1 + P/u)/(1 − u^{-2})`, defined for `u ∉ {0, ±1}`.
pub fn yang_r_inverse(module: &GlnModule, p: usize, q: usize, u: &Rational) -> Result<ExactMatrix> {
    let one = Rational::one();
    if u.is_zero() || *u == one || *u == -one.clone() {
        return Err(Error::Singular(format!(
            "R^{{{p}{q}}}({}) is not invertible",
            crate::algebra::rational_string(u)
        )));
    }
    let perm = permutation_operator(module, p, q);
    let c = (&one - (u * u).recip()).recip();
    Ok(ExactMatrix::identity(module.dim()).add_scaled(&perm, &u.recip()).scale(&c))
}

/// `max |R^{12}(u)R^{13}(u+v)R^{23}(v) − R^{23}(v)R^{13}(u+v)R^{12}(u)|` on `(C^n)^{⊗3}`.
pub fn qybe_residual(n: usize, u: &Rational, v: &Rational) -> Result<Rational> {
    let m = GlnModule::new(n, 3);
    let uv = u + v;
    let lhs = yang_r(&m, 0, 1, u)?.matmul(&yang_r(&m, 0, 2, &uv)?).matmul(&yang_r(&m, 1, 2, v)?);
    let rhs = yang_r(&m, 1, 2, v)?.matmul(&yang_r(&m, 0, 2, &uv)?).matmul(&yang_r(&m, 0, 1, u)?);
    Ok(lhs.sub_ref(&rhs).max_abs())
}

/// `R(u)R^{21}(−u) − (1 − u^{-2})` on `(C^n)^{⊗2}`.
pub fn unitarity_residual(n: usize, u: &Rational) -> Result<Rational> {
    let m = GlnModule::new(n, 2);
    let lhs = yang_r(&m, 0, 1, u)?.matmul(&yang_r(&m, 1, 0, &-u.clone())?);
    let c = Rational::one() - (u * u).recip();
    Ok(lhs.sub_ref(&ExactMatrix::scalar(m.dim(), &c)).max_abs())
}

/// qKZ data: `(C^n)^{⊗m}` with evaluation points `a` and step `ϰ`.
#[derive(Clone, Debug)]
pub struct QkzSystem {
    module: GlnModule,
    pub a: Vec<Rational>,
    pub kappa: Rational,
}

impl QkzSystem {
    pub fn new(n: usize, a: Vec<Rational>, kappa: Rational) -> Result<Self> {
        if kappa.is_zero() {
            return Err(Error::Precondition("step ϰ must be nonzero".into()));
        }
        Ok(Self {
            module: GlnModule::new(n, a.len()),
            a,
            kappa,
        })
    }

    pub fn module(&self) -> &GlnModule {
        &self.module
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    fn n(&self) -> usize {
        self.module.n()
    }

    /// `a + ϰ(e_{from} + ⋯ + e_{to−1})`.
    pub fn shifted(&self, a: &[Rational], slots: std::ops::Range<usize>) -> Vec<Rational> {
        let mut b = a.to_vec();
        for k in slots {
            b[k] += &self.kappa;
        }
        b
    }

    /// `d_i(z)`: `diag(z)` on factor `i`.
    pub fn d(&self, i: usize, p: &TorusPoint) -> Result<ExactMatrix> {
        self.module.in_factor(i, &ExactMatrix::diagonal(&p.z))
    }

    /// `A_i(a)`, zero-based `i`.
    pub fn a_op(&self, i: usize, p: &TorusPoint, a: &[Rational]) -> Result<ExactMatrix> {
        let m = &self.module;
        let mut out = ExactMatrix::identity(m.dim());
        for j in (0..i).rev() {
            let u = &a[j] - &a[i] - &self.kappa;
            out = out.matmul(&yang_r_inverse(m, j, i, &u)?);
        }
        out = out.matmul(&self.d(i, p)?);
        for j in (i + 1..self.m()).rev() {
            out = out.matmul(&yang_r(m, i, j, &(&a[i] - &a[j]))?);
        }
        Ok(out)
    }

    /// `Ã_k(a)` for the first `k` factors, `1 ≤ k ≤ m`.
    pub fn a_tilde(&self, k: usize, p: &TorusPoint, a: &[Rational]) -> Result<ExactMatrix> {
        if k == 0 || k > self.m() {
            return Err(Error::IndexOutOfRange {
                context: "qKZ prefix length",
                index: k,
                bound: self.m(),
            });
        }
        let m = &self.module;
        let mut out = ExactMatrix::identity(m.dim());
        for j in 0..k {
            out = out.matmul(&self.d(j, p)?);
        }
        for col in (k..self.m()).rev() {
            for row in 0..k {
                out = out.matmul(&yang_r(m, row, col, &(&a[row] - &a[col]))?);
            }
        }
        Ok(out)
    }

    /// `d_i d_j R^{ij}(u) − R^{ij}(u) d_i d_j`, maximized over pairs.
    pub fn d_commutation_residual(&self, p: &TorusPoint, u: &Rational) -> Result<Rational> {
        let mut worst = Rational::zero();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                let dd = self.d(i, p)?.matmul(&self.d(j, p)?);
                let r = yang_r(&self.module, i, j, u)?;
                worst = worst.max(dd.commutator(&r).max_abs());
            }
        }
        Ok(worst)
    }

    /// `A_j(a + ϰe_i) A_i(a) − A_i(a + ϰe_j) A_j(a)`, maximized over `i < j`.
    pub fn consistency_residual(&self, p: &TorusPoint) -> Result<Rational> {
        let mut worst = Rational::zero();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                let lhs = self.a_op(j, p, &self.shifted(&self.a, i..i + 1))?.matmul(&self.a_op(i, p, &self.a)?);
                let rhs = self.a_op(i, p, &self.shifted(&self.a, j..j + 1))?.matmul(&self.a_op(j, p, &self.a)?);
                worst = worst.max(lhs.sub_ref(&rhs).max_abs());
            }
        }
        Ok(worst)
    }

    /// `(𝕋_i f)(a) = A_i(a)^{-1} f(a + ϰe_i)` applied to a section.
    pub fn apply_covariant(
        &self,
        i: usize,
        p: &TorusPoint,
        f: &dyn Fn(&[Rational]) -> Result<Vec<Rational>>,
        a: &[Rational],
    ) -> Result<Vec<Rational>> {
        let inv = self
            .a_op(i, p, a)?
            .inverse()
            .ok_or_else(|| Error::Singular(format!("A_{i}")))?;
        Ok(inv.mul_vec(&f(&self.shifted(a, i..i + 1))?))
    }

    /// `𝕋_i 𝕋_j f − 𝕋_j 𝕋_i f` at `a` for the section `f(b) = (b_1 + 2b_2) v`.
    pub fn consistency_on_section(&self, i: usize, j: usize, p: &TorusPoint, v: &[Rational]) -> Result<Rational> {
        let f = |b: &[Rational]| -> Result<Vec<Rational>> {
            let c = &b[0] + b.get(1).map_or_else(Rational::zero, |x| x * int(2));
            Ok(v.iter().map(|x| x * &c).collect())
        };
        let tj_f = |b: &[Rational]| self.apply_covariant(j, p, &f, b);
        let ti_f = |b: &[Rational]| self.apply_covariant(i, p, &f, b);
        let lhs = self.apply_covariant(i, p, &tj_f, &self.a)?;
        let rhs = self.apply_covariant(j, p, &ti_f, &self.a)?;
        Ok(lhs.iter().zip(&rhs).map(|(x, y)| num_traits::Signed::abs(&(x - y))).max().unwrap_or_else(Rational::zero))
    }

    /// `Ã_k − T_1⋯T_{k−1}(A_k) ⋯ T_1(A_2) A_1`.
    pub fn product_residual(&self, k: usize, p: &TorusPoint) -> Result<Rational> {
        let mut prod = ExactMatrix::identity(self.module.dim());
        for j in 0..k {
            let shifted = self.shifted(&self.a, 0..j);
            prod = self.a_op(j, p, &shifted)?.matmul(&prod);
        }
        Ok(self.a_tilde(k, p, &self.a)?.sub_ref(&prod).max_abs())
    }

    /// `𝔅(b)(v) = −A(−b)(v)` on the evaluation module.
    pub fn b_form(&self, b: &[Rational], p: &TorusPoint, v: &[Rational]) -> Result<ExactMatrix> {
        let neg: Vec<Rational> = b.iter().map(|x| -x.clone()).collect();
        let conn = GlConnection::new(EvalModule::vector_power(self.n(), &neg));
        Ok(conn.coefficient(FormStyle::Tau, p, v)?.neg_ref())
    }

    /// `Σ_{j<k} diag(v)^{(j)} = (dÃ_k) Ã_k^{-1}` contracted with `v`.
    fn log_derivative(&self, k: usize, v: &[Rational]) -> Result<ExactMatrix> {
        let dv = ExactMatrix::diagonal(v);
        (0..k).try_fold(ExactMatrix::zeros(self.module.dim()), |acc, j| {
            Ok(acc.add_ref(&self.module.in_factor(j, &dv)?))
        })
    }

    /// `[Ã_k, 𝔅(a)(v)]`.
    pub fn commutation_residual(&self, k: usize, p: &TorusPoint, v: &[Rational]) -> Result<Rational> {
        let at = self.a_tilde(k, p, &self.a)?;
        Ok(at.commutator(&self.b_form(&self.a, p, v)?).max_abs())
    }

    /// `(dÃ_k)Ã_k^{-1} − (2ϰ)^{-1}(𝔅(a + ϰ1_{<k}) − 𝔅(a))`.
    pub fn cross_diff_residual(&self, k: usize, p: &TorusPoint, v: &[Rational]) -> Result<Rational> {
        let lhs = self.log_derivative(k, v)?;
        let b0 = self.b_form(&self.a, p, v)?;
        let b1 = self.b_form(&self.shifted(&self.a, 0..k), p, v)?;
        let c = (&self.kappa * int(2)).recip();
        Ok(lhs.sub_ref(&b1.sub_ref(&b0).scale(&c)).max_abs())
    }

    /// `d(Ã_k^{-1}) − (2ϰ)^{-1}Ã_k^{-1}(𝔅(a) − 𝔅(a+ϰ1_{<k})) − (2ϰ)^{-1}[𝔅(a), Ã_k^{-1}]`.
    pub fn bispectrality_residual(&self, k: usize, p: &TorusPoint, v: &[Rational]) -> Result<Rational> {
        let at_inv = self
            .a_tilde(k, p, &self.a)?
            .inverse()
            .ok_or_else(|| Error::Singular(format!("Ã_{k}")))?;
        let d_inv = at_inv.matmul(&self.log_derivative(k, v)?).neg_ref();
        let b0 = self.b_form(&self.a, p, v)?;
        let b1 = self.b_form(&self.shifted(&self.a, 0..k), p, v)?;
        let c = (&self.kappa * int(2)).recip();
        let res = d_inv
            .sub_ref(&at_inv.matmul(&b0.sub_ref(&b1)).scale(&c))
            .sub_ref(&b0.commutator(&at_inv).scale(&c));
        Ok(res.max_abs())
    }

    /// Every qKZ identity at one point: consistency, the product formula, both
    /// auxiliary identities and the full commutation, for `k = 1..m` and all
    /// coordinate directions.
    pub fn suite(&self, p: &TorusPoint) -> Result<Vec<CheckRecord>> {
        let tag = |r: CheckRecord| {
            r.with("n", self.n())
                .with("m", self.m())
                .with("a", rational_list(&self.a))
                .with("kappa", crate::algebra::rational_string(&self.kappa))
                .with("z", rational_list(&p.z))
        };
        let mut out = vec![tag(CheckRecord::exact("qkz consistency", "[𝕋_i, 𝕋_j] = 0", &self.consistency_residual(p)?))];
        for k in 1..=self.m() {
            let mut comm = Rational::zero();
            let mut cross = Rational::zero();
            let mut full = Rational::zero();
            for dir in 0..self.n() {
                let v = crate::connection::unit(self.n(), dir);
                comm = comm.max(self.commutation_residual(k, p, &v)?);
                cross = cross.max(self.cross_diff_residual(k, p, &v)?);
                full = full.max(self.bispectrality_residual(k, p, &v)?);
            }
            let prod = self.product_residual(k, p)?;
            out.push(tag(CheckRecord::exact("qkz product", "𝕋_1⋯𝕋_k = Ã_k^{-1} T_1⋯T_k", &prod)).with("k", k));
            out.push(tag(CheckRecord::exact("qkz cross commutation", "[Ã_k, 𝔅] = 0", &comm)).with("k", k));
            out.push(tag(CheckRecord::exact("qkz cross diff", "(dÃ_k)Ã_k^{-1} = (2ϰ)^{-1}(Ad(T)−1)𝔅", &cross)).with("k", k));
            out.push(tag(CheckRecord::exact("bispectrality", "[∇, 𝕋_1⋯𝕋_k] = 0", &full)).with("k", k));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn point(z: &[i64]) -> TorusPoint {
        TorusPoint::new(z.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn qybe_and_unitarity() {
        assert!(qybe_residual(2, &int(1), &int(2)).unwrap().is_zero());
        assert!(qybe_residual(3, &rat(1, 3), &rat(-5, 2)).unwrap().is_zero());
        assert!(unitarity_residual(2, &rat(7, 3)).unwrap().is_zero());
        assert!(yang_r(&GlnModule::new(2, 2), 0, 1, &int(0)).is_err());
        let m = GlnModule::new(2, 2);
        let p = permutation_operator(&m, 0, 1);
        assert!(p.matmul(&p).is_identity());
    }

    #[test]
    fn r_inverse_closed_form() {
        let m = GlnModule::new(2, 3);
        let u = rat(5, 7);
        let r = yang_r(&m, 0, 2, &u).unwrap();
        assert!(r.matmul(&yang_r_inverse(&m, 0, 2, &u).unwrap()).is_identity());
        assert!(yang_r_inverse(&m, 0, 2, &int(1)).is_err());
    }

    #[test]
    fn single_factor_and_leading_factor() {
        let q = QkzSystem::new(2, vec![int(3)], int(1)).unwrap();
        let p = point(&[2, 5]);
        assert_eq!(q.a_op(0, &p, &q.a).unwrap(), q.d(0, &p).unwrap());
        let q2 = QkzSystem::new(2, vec![int(3), rat(1, 2)], rat(1, 3)).unwrap();
        let u = &q2.a[0] - &q2.a[1] - &q2.kappa;
        let expect = yang_r_inverse(q2.module(), 0, 1, &u).unwrap().matmul(&q2.d(1, &p).unwrap());
        assert_eq!(q2.a_op(1, &p, &q2.a).unwrap(), expect);
        let at = q2.a_tilde(1, &p, &q2.a).unwrap();
        let expect = q2.d(0, &p).unwrap().matmul(&yang_r(q2.module(), 0, 1, &rat(5, 2)).unwrap());
        assert_eq!(at, expect);
        assert!(q2.a_tilde(2, &p, &q2.a).unwrap().is_diagonal());
    }

    #[test]
    fn consistency_and_identities_m3() {
        let q = QkzSystem::new(2, vec![rat(1, 3), int(4), rat(-5, 2)], rat(2, 7)).unwrap();
        let p = point(&[3, -2]);
        assert!(q.d_commutation_residual(&p, &rat(3, 5)).unwrap().is_zero());
        for rec in q.suite(&p).unwrap() {
            assert!(rec.pass, "{rec:?}");
        }
        let v = [int(1), rat(-2, 3), int(0), int(5)];
        let v8: Vec<Rational> = (0..8).map(|k| v[k % 4].clone()).collect();
        assert!(q.consistency_on_section(0, 2, &p, &v8).unwrap().is_zero());
    }

    #[test]
    fn residual_invariant_under_common_shift() {
        let a = vec![int(2), rat(-1, 3)];
        let p = point(&[5, 3]);
        let v = vec![int(1), int(0)];
        let q = QkzSystem::new(2, a.clone(), rat(3, 4)).unwrap();
        let shifted: Vec<Rational> = a.iter().map(|x| x + rat(11, 5)).collect();
        let q2 = QkzSystem::new(2, shifted, rat(3, 4)).unwrap();
        for k in 1..=2 {
            assert!(q.bispectrality_residual(k, &p, &v).unwrap().is_zero());
            assert!(q2.bispectrality_residual(k, &p, &v).unwrap().is_zero());
        }
    }
}

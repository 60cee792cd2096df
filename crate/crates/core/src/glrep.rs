//! Tensor powers of the vector representation of `gl_n`.
//!
//! Indices of matrix units, tensor factors and basis vectors are zero-based.
//! The basis vector `e_{i_1}⊗⋯⊗e_{i_m}` has index `Σ_p i_p n^{m-1-p}`.

use crate::algebra::{int, ExactMatrix, GaussianRational, Matrix, Rational, Scalar};
use crate::error::{Error, Result};

/// `(C^n)^{⊗m}` with cached matrix-unit actions.
#[derive(Clone, Debug)]
pub struct GlnModule {
    n: usize,
    m: usize,
    /// `factor_units[p][i*n+j]` is `(E_ij)_p`.
    factor_units: Vec<Vec<ExactMatrix>>,
    /// `units[i*n+j]` is `Δ^{(m)}(E_ij)`.
    units: Vec<ExactMatrix>,
}

impl GlnModule {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n >= 1, "gl_n needs n ≥ 1");
        let dim = n.pow(m as u32);
        let dims = vec![n; m];
        let factor_units: Vec<Vec<ExactMatrix>> = (0..m)
            .map(|p| {
                (0..n * n)
                    .map(|k| {
                        ExactMatrix::unit(n, k / n, k % n)
                            .embed_factor(p + 1, &dims)
                            .expect("valid slot")
                    })
                    .collect()
            })
            .collect();
        let units = (0..n * n)
            .map(|k| {
                factor_units
                    .iter()
                    .fold(ExactMatrix::zeros(dim), |acc, f| acc.add_ref(&f[k]))
            })
            .collect();
        Self {
            n,
            m,
            factor_units,
            units,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of tensor factors.
    pub fn factors(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.m as u32)
    }

    pub fn basis_tuple(&self, idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.m];
        let mut x = idx;
        for p in (0..self.m).rev() {
            t[p] = x % self.n;
            x /= self.n;
        }
        t
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    /// The `gl_n` weight `Σ_p θ_{i_p}` as multiplicities of each `θ_i`.
    pub fn weight(&self, idx: usize) -> Vec<i64> {
        let mut w = vec![0; self.n];
        for i in self.basis_tuple(idx) {
            w[i] += 1;
        }
        w
    }

    /// The `sl_n` weight: the `gl_n` weight minus its mean.
    pub fn sl_weight(&self, idx: usize) -> Vec<Rational> {
        let w = self.weight(idx);
        let mean = Rational::new((self.m as i64).into(), (self.n as i64).into());
        w.iter().map(|&x| int(x) - &mean).collect()
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        for x in [i, j] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange {
                    context: "matrix unit",
                    index: x,
                    bound: self.n,
                });
            }
        }
        Ok(())
    }

    /// `Δ^{(m)}(E_ij) = Σ_p (E_ij)_p`.
    pub fn act(&self, i: usize, j: usize) -> Result<&ExactMatrix> {
        self.check(i, j)?;
        Ok(&self.units[i * self.n + j])
    }

    /// `Δ^{(m)}(E_ij)` for indices known to be in range.
    pub fn e(&self, i: usize, j: usize) -> &ExactMatrix {
        &self.units[i * self.n + j]
    }

    /// `(E_ij)_p`, the matrix unit acting in factor `p` only.
    pub fn e_in(&self, p: usize, i: usize, j: usize) -> &ExactMatrix {
        &self.factor_units[p][i * self.n + j]
    }

    /// An `n × n` matrix acting in factor `p` only.
    pub fn in_factor(&self, p: usize, x: &ExactMatrix) -> Result<ExactMatrix> {
        x.embed_factor(p + 1, &vec![self.n; self.m])
    }

    /// `κ_{θ_a−θ_b} = E_ab E_ba + E_ba E_ab`.
    pub fn casimir_truncated(&self, a: usize, b: usize) -> Result<ExactMatrix> {
        self.check(a, b)?;
        if a == b {
            return Err(Error::Precondition("κ needs a root, got a = b".into()));
        }
        let (x, y) = (self.e(a, b), self.e(b, a));
        Ok(x.matmul(y).add_ref(&y.matmul(x)))
    }

    /// `Σ_{i<j} κ_{θ_i−θ_j} + Σ_i E_ii²`.
    pub fn casimir(&self) -> ExactMatrix {
        let mut c = ExactMatrix::zeros(self.dim());
        for i in 0..self.n {
            for j in i + 1..self.n {
                c = c.add_ref(&self.casimir_truncated(i, j).expect("i ≠ j"));
            }
            let eii = self.e(i, i);
            c = c.add_ref(&eii.matmul(eii));
        }
        c
    }

    /// Whether no weight equals twice a root; otherwise a `gl_n` witness.
    pub fn is_small(&self) -> (bool, Option<Vec<i64>>) {
        for idx in 0..self.dim() {
            let mu = self.sl_weight(idx);
            for a in 0..self.n {
                for b in 0..self.n {
                    if a == b {
                        continue;
                    }
                    let twice: Vec<Rational> = (0..self.n)
                        .map(|k| int(2 * (i64::from(k == a) - i64::from(k == b))))
                        .collect();
                    if mu == twice {
                        return (false, Some(self.weight(idx)));
                    }
                }
            }
        }
        (true, None)
    }

    /// Basis indices of the `sl_n` zero weight space.
    pub fn zero_weight_basis(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&idx| self.sl_weight(idx).iter().all(Scalar::is_zero))
            .collect()
    }

    /// `exp(E_ab) exp(−E_ba) exp(E_ab)`, the Tits operator of `θ_a − θ_b`.
    pub fn tits_operator_for(&self, a: usize, b: usize) -> Result<ExactMatrix> {
        self.check(a, b)?;
        let e = self.e(a, b).nilpotent_exp()?;
        let f = self.e(b, a).neg_ref().nilpotent_exp()?;
        Ok(e.matmul(&f).matmul(&e))
    }

    /// Tits operator `r_i` for the simple root `θ_i − θ_{i+1}`.
    pub fn tits_operator(&self, i: usize) -> Result<ExactMatrix> {
        if i + 1 >= self.n {
            return Err(Error::IndexOutOfRange {
                context: "simple root",
                index: i,
                bound: self.n.saturating_sub(1),
            });
        }
        self.tits_operator_for(i, i + 1)
    }

    /// `exp(πi h)` for `h = Σ c_k E_kk` on the weight basis; requires
    /// `2μ(h) ∈ Z` for every weight.
    pub fn sign_operator(&self, h: &[Rational]) -> Result<Matrix<GaussianRational>> {
        let diag = (0..self.dim())
            .map(|idx| {
                let w = self.weight(idx);
                let val: Rational = w.iter().zip(h).map(|(&k, c)| int(k) * c).sum();
                let twice = val * int(2);
                if !twice.is_integer() {
                    return Err(Error::Precondition(format!(
                        "exp(πi h) is not a fourth root of unity on weight {w:?}"
                    )));
                }
                let k: i64 = twice.to_integer().try_into().expect("small weight");
                Ok(GaussianRational::i_pow(k))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::diagonal(&diag))
    }

    /// `κ_α − (α,α)(1 − s_α)` on `V[0]`, with `s_α` the Tits operator.
    pub fn kappa_v0_check(&self, a: usize, b: usize) -> Result<ExactMatrix> {
        if let (false, Some(w)) = self.is_small() {
            return Err(Error::NotSmall { witness: w });
        }
        self.kappa_v0_residual(a, b)
    }

    /// The same residual without the smallness precondition.
    pub fn kappa_v0_residual(&self, a: usize, b: usize) -> Result<ExactMatrix> {
        let v0 = self.zero_weight_basis();
        if v0.is_empty() {
            return Err(Error::Precondition("zero weight space is trivial".into()));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let kappa = self.casimir_truncated(lo, hi)?.restrict(&v0);
        let s = self.tits_operator_for(lo, hi)?.restrict(&v0);
        let one = ExactMatrix::identity(v0.len());
        Ok(kappa.sub_ref(&one.sub_ref(&s).scale(&int(2))))
    }
}

/// Weight shift of `act(E_ij)`: maps weight `μ` to `μ + θ_i − θ_j`.
pub fn shifts_weight_correctly(module: &GlnModule, i: usize, j: usize) -> bool {
    let e = module.e(i, j);
    for col in 0..module.dim() {
        for row in 0..module.dim() {
            if e.get(row, col).is_zero() {
                continue;
            }
            let mut expect = module.weight(col);
            expect[i] += 1;
            expect[j] -= 1;
            if module.weight(row) != expect {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e11_on_c2() {
        let v = GlnModule::new(2, 1);
        assert_eq!(v.act(0, 0).unwrap(), &ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]));
        assert!(v.act(2, 0).is_err());
    }

    #[test]
    fn leibniz_action_on_e2e2() {
        let v = GlnModule::new(2, 2);
        let e22 = v.index_of(&[1, 1]);
        let mut x = vec![int(0); 4];
        x[e22] = int(1);
        let y = v.e(0, 1).mul_vec(&x);
        let mut expect = vec![int(0); 4];
        expect[v.index_of(&[0, 1])] = int(1);
        expect[v.index_of(&[1, 0])] = int(1);
        assert_eq!(y, expect);
    }

    #[test]
    fn gl_commutation_relations() {
        let v = GlnModule::new(3, 2);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let lhs = v.e(i, j).commutator(v.e(k, l));
                        let mut rhs = ExactMatrix::zeros(v.dim());
                        if j == k {
                            rhs = rhs.add_ref(v.e(i, l));
                        }
                        if l == i {
                            rhs = rhs.sub_ref(v.e(k, j));
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_on_zero_weight_space_of_c2_squared() {
        let v = GlnModule::new(2, 2);
        let v0 = v.zero_weight_basis();
        assert_eq!(v0, vec![1, 2]);
        let k = v.casimir_truncated(0, 1).unwrap();
        assert_eq!(k.restrict(&v0), ExactMatrix::from_i64_rows(&[&[2, 2], &[2, 2]]));
        assert_eq!(k, v.casimir_truncated(1, 0).unwrap());
        assert!(GlnModule::new(2, 0).casimir_truncated(0, 1).unwrap().is_zero());
    }

    #[test]
    fn smallness() {
        assert!(GlnModule::new(2, 2).is_small().0);
        assert!(GlnModule::new(3, 3).is_small().0);
        assert!(GlnModule::new(2, 0).is_small().0);
        let (small, witness) = GlnModule::new(2, 4).is_small();
        assert!(!small);
        let w = witness.unwrap();
        assert!(w == vec![4, 0] || w == vec![0, 4]);
    }

    #[test]
    fn zero_weight_dimensions() {
        assert_eq!(GlnModule::new(2, 2).zero_weight_basis().len(), 2);
        assert_eq!(GlnModule::new(3, 3).zero_weight_basis().len(), 6);
        assert!(GlnModule::new(2, 1).zero_weight_basis().is_empty());
    }

    #[test]
    fn tits_operator_on_vector_rep() {
        let v = GlnModule::new(2, 1);
        let r = v.tits_operator(0).unwrap();
        assert_eq!(r, ExactMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]));
        assert_eq!(r.matmul(&r), ExactMatrix::identity(2).neg_ref());
    }

    #[test]
    fn tits_square_is_sign_operator() {
        let v = GlnModule::new(3, 2);
        for i in 0..2 {
            let r = v.tits_operator(i).unwrap();
            let mut h = vec![int(0); 3];
            h[i] = int(1);
            h[i + 1] = int(-1);
            let sign = v.sign_operator(&h).unwrap();
            let sq = r.matmul(&r).map(GaussianRational::from_rational);
            assert_eq!(sq, sign);
        }
    }

    #[test]
    fn tits_conjugation_reflects_cartan() {
        let v = GlnModule::new(3, 2);
        for i in 0..2 {
            let r = v.tits_operator(i).unwrap();
            let rinv = r.inverse().unwrap();
            for k in 0..3 {
                let lhs = r.matmul(v.e(k, k)).matmul(&rinv);
                let sk = if k == i { i + 1 } else if k == i + 1 { i } else { k };
                assert_eq!(&lhs, v.e(sk, sk));
            }
        }
    }

    #[test]
    fn kappa_v0_in_small_modules() {
        let v = GlnModule::new(2, 2);
        assert!(v.kappa_v0_check(0, 1).unwrap().is_zero());
        assert_eq!(v.kappa_v0_check(0, 1).unwrap(), v.kappa_v0_check(1, 0).unwrap());
        let w = GlnModule::new(3, 3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            assert!(w.kappa_v0_check(a, b).unwrap().is_zero());
        }
        let big = GlnModule::new(2, 4);
        assert!(matches!(big.kappa_v0_check(0, 1), Err(Error::NotSmall { .. })));
        assert!(!big.kappa_v0_residual(0, 1).unwrap().is_zero());
    }

    #[test]
    fn weight_grading() {
        let v = GlnModule::new(3, 2);
        for i in 0..3 {
            for j in 0..3 {
                assert!(shifts_weight_correctly(&v, i, j));
            }
        }
    }
}

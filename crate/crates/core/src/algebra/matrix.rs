use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::scalar::{int, Field, Rational, Scalar};

/// Dense square matrix over a commutative scalar ring, stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

pub type ExactMatrix = Matrix<Rational>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn scalar(dim: usize, c: &S) -> Self {
        Self::from_fn(dim, |i, j| if i == j { c.clone() } else { S::zero() })
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let dim = diag.len();
        Self::from_fn(dim, |i, j| if i == j { diag[i].clone() } else { S::zero() })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "from_rows",
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    /// The matrix unit with a single one at `(i, j)` (zero-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(i, j, S::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim {
            acc.add_assign(self.get(i, i));
        }
        acc
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim);
        }
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&S::from_rational(q))
    }

    fn check_dim(&self, other: &Self, context: &'static str) {
        assert_eq!(
            self.dim, other.dim,
            "{context}: dimension mismatch {} vs {}",
            self.dim, other.dim
        );
    }

    /// `self + c·other`, the workhorse of linear combinations.
    pub fn add_scaled(&self, other: &Self, c: &S) -> Self {
        self.check_dim(other, "add_scaled");
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(&other.data) {
            if !x.is_zero() {
                o.add_assign(&x.mul(c));
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        self.check_dim(rhs, "matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dim, "mul_vec: dimension mismatch");
        (0..self.dim)
            .map(|i| {
                let mut acc = S::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_assign(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Kronecker product; row index of the result is `i1·dim(b) + i2`.
    pub fn kron(&self, b: &Self) -> Self {
        let (n, m) = (self.dim, b.dim);
        let mut out = Self::zeros(n * m);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..m {
                    for j2 in 0..m {
                        let x = b.get(i2, j2);
                        if !x.is_zero() {
                            out.set(i1 * m + i2, j1 * m + j2, a.mul(x));
                        }
                    }
                }
            }
        }
        out
    }

    /// `1 ⊗ … ⊗ x ⊗ … ⊗ 1` with `x` in tensor slot `slot` (one-based).
    pub fn embed_factor(&self, slot: usize, factor_dims: &[usize]) -> Result<Self> {
        let arity = factor_dims.len();
        if slot == 0 || slot > arity {
            return Err(Error::SlotOutOfRange { slot, arity });
        }
        if factor_dims[slot - 1] != self.dim {
            return Err(Error::DimensionMismatch {
                context: "embed_factor",
                expected: factor_dims[slot - 1],
                found: self.dim,
            });
        }
        let before: usize = factor_dims[..slot - 1].iter().product();
        let after: usize = factor_dims[slot..].iter().product();
        Ok(Self::identity(before)
            .kron(self)
            .kron(&Self::identity(after)))
    }

    pub fn commutator(&self, b: &Self) -> Self {
        self.matmul(b).sub_ref(&b.matmul(self))
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        self.check_dim(rhs, "add");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.check_dim(rhs, "sub");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(S::neg).collect(),
        }
    }

    /// Largest entry magnitude; zero exactly when the matrix is zero.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    /// Principal submatrix on the given (zero-based) indices.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `Σ_{j<k} a^j / j!` where `a^k = 0`.
    pub fn nilpotent_exp(&self) -> Result<Self> {
        let n = self.dim;
        let mut out = Self::identity(n);
        let mut term = Self::identity(n);
        for j in 1..=n.max(1) {
            term = term.matmul(self).scale_rational(&int(j as i64).recip());
            if term.is_zero() {
                return Ok(out);
            }
            out = out.add_ref(&term);
        }
        if term.is_zero() {
            Ok(out)
        } else {
            Err(Error::NotNilpotent { dim: n })
        }
    }
}

impl<S: Field> Matrix<S> {
    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv()?;
            for j in 0..n {
                let x = a.get(col, j).mul(&p);
                a.set(col, j, x);
                let y = inv.get(col, j).mul(&p);
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, x);
                    let y = inv.get(r, j).sub(&f.mul(inv.get(col, j)));
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> S {
        let n = self.dim;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return S::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = a.get(r, col).mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let x = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, x);
                }
            }
        }
        det
    }
}

impl ExactMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("square integer matrix")
    }

    pub fn max_abs(&self) -> Rational {
        use num_traits::Signed;
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(<Rational as Scalar>::zero)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        self.add_ref(rhs)
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        self.sub_ref(rhs)
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.neg_ref()
    }
}

pub fn kron<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    a.kron(b)
}

pub fn commutator<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    a.commutator(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn kron_identities() {
        assert!(ExactMatrix::identity(2)
            .kron(&ExactMatrix::identity(3))
            .is_identity());
    }

    #[test]
    fn kron_shift_maps_e3_to_e1() {
        let n = ExactMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let k = n.kron(&ExactMatrix::identity(2));
        let e3 = vec![int(0), int(0), int(1), int(0)];
        assert_eq!(k.mul_vec(&e3), vec![int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn embed_factor_matches_kron_and_checks_bounds() {
        let e12 = ExactMatrix::unit(2, 0, 1);
        assert_eq!(
            e12.embed_factor(1, &[2, 2]).unwrap(),
            e12.kron(&ExactMatrix::identity(2))
        );
        assert!(matches!(
            e12.embed_factor(3, &[2, 2]),
            Err(Error::SlotOutOfRange { slot: 3, arity: 2 })
        ));
        assert!(matches!(
            e12.embed_factor(1, &[3, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ExactMatrix::identity(2)
            .embed_factor(2, &[2, 2, 2])
            .unwrap()
            .is_identity());
    }

    #[test]
    fn nilpotent_exp_two_terms_and_error() {
        let n = ExactMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            n.nilpotent_exp().unwrap(),
            ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 1]])
        );
        let bad = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert!(matches!(bad.nilpotent_exp(), Err(Error::NotNilpotent { .. })));
        assert!(ExactMatrix::zeros(3).nilpotent_exp().unwrap().is_identity());
    }

    #[test]
    fn commutator_and_max_abs_of_zero() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert!(a.commutator(&a).is_zero());
        assert_eq!(ExactMatrix::zeros(3).max_abs(), int(0));
        assert_eq!(a.max_abs(), int(4));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = Matrix::from_rows(vec![
            vec![rat(1, 2), int(3)],
            vec![int(-1), rat(2, 3)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.determinant(), rat(1, 3) + int(3));
        assert!(ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])
            .inverse()
            .is_none());
    }
}

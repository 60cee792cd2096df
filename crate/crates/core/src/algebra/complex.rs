use num_complex::Complex64;

use super::gaussian::GaussianRational;
use super::matrix::{ExactMatrix, Matrix};
use super::scalar::{rational_to_f64, Field, Rational, Scalar};

/// Dense square matrix of double-precision complex numbers.
pub type ComplexMatrix = Matrix<Complex64>;

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl ComplexMatrix {
    pub fn from_exact(m: &ExactMatrix) -> Self {
        m.map(Complex64::from_rational)
    }

    pub fn from_gaussian(m: &Matrix<GaussianRational>) -> Self {
        m.map(|x| Complex64::new(rational_to_f64(&x.re), rational_to_f64(&x.im)))
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.max_magnitude()
    }

    /// Partial-pivot LU inverse; `None` when numerically singular.
    pub fn inverse_numeric(&self) -> Option<Self> {
        let inv = self.to_nalgebra().try_inverse()?;
        let out = Self::from_fn(self.dim(), |i, j| inv[(i, j)]);
        out.is_finite().then_some(out)
    }

    pub fn determinant_numeric(&self) -> Complex64 {
        self.to_nalgebra().determinant()
    }

    /// Eigenvalues from the complex Schur form, sorted by (re, im).
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let (_, t) = self.to_nalgebra().schur().unpack();
        let mut ev: Vec<Complex64> = (0..self.dim()).map(|i| t[(i, i)]).collect();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        ev
    }

    fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.dim(), self.dim(), self.entries())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_eigenvalues() {
        let m = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => Complex64::new(2.0, 0.0),
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(0.0, 3.0),
            _ => Complex64::new(0.0, 0.0),
        });
        let inv = m.inverse_numeric().unwrap();
        assert!((&m * &inv).sub_ref(&ComplexMatrix::identity(2)).max_abs_f64() < 1e-14);
        let ev = m.eigenvalues();
        assert!((ev[0] - Complex64::new(0.0, 3.0)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(ComplexMatrix::zeros(2).inverse_numeric().is_none());
    }
}

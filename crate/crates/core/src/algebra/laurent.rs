use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{rational_string, Rational, Scalar};

/// Laurent polynomial in one formal variable `z` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentScalar {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentScalar {
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// The formal variable raised to `k`.
    pub fn z_pow(k: i64) -> Self {
        Self::monomial(<Rational as Scalar>::one(), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(<Rational as Scalar>::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(<Rational as Scalar>::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    /// `(c, k)` when the polynomial is the single term `c·z^k`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; only the monomials are units.
    pub fn unit_inv(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -k))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    pub fn eval(&self, z: &Rational) -> Option<Rational> {
        if z.is_zero() && self.coeffs.keys().any(|&k| k < 0) {
            return None;
        }
        let mut acc = <Rational as Scalar>::zero();
        for (&k, c) in &self.coeffs {
            acc += c * num_traits::pow::Pow::pow(z, k as i32);
        }
        Some(acc)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| match k {
                0 => rational_string(c),
                _ => format!("{}*z^{}", rational_string(c), k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Scalar for LaurentScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::z_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
    fn add_assign(&mut self, rhs: &Self) {
        for (&k, c) in &rhs.coeffs {
            self.add_term(k, c);
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (&k1, c1) in &self.coeffs {
            for (&k2, c2) in &rhs.coeffs {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::monomial(q.clone(), 0)
    }
    fn magnitude(&self) -> f64 {
        self.coeffs.values().map(|c| c.magnitude()).sum()
    }
}


/// Square matrix over the Laurent ring.
pub type LoopMatrix = super::matrix::Matrix<LaurentScalar>;

impl LoopMatrix {
    /// Leibniz determinant by dynamic programming over column subsets.
    pub fn loop_determinant(&self) -> LaurentScalar {
        let n = self.dim();
        assert!(n <= 16, "loop_determinant: dimension {n} too large");
        let mut f: Vec<LaurentScalar> = vec![LaurentScalar::default(); 1 << n];
        f[0] = Scalar::one();
        for mask in 0usize..(1 << n) {
            if f[mask].is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = self.get(row, j);
                if a.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut term = f[mask].mul(a);
                if above % 2 == 1 {
                    term = term.neg();
                }
                f[mask | (1 << j)].add_assign(&term);
            }
        }
        f[(1 << n) - 1].clone()
    }

    /// Inverse over the Laurent ring, which exists iff the determinant is a
    /// monomial.
    pub fn loop_inverse(&self) -> Option<Self> {
        let n = self.dim();
        let det_inv = self.loop_determinant().unit_inv()?;
        if n == 1 {
            return Some(Self::scalar(1, &det_inv));
        }
        let minor = |skip_r: usize, skip_c: usize| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != skip_r).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != skip_c).collect();
            Self::from_fn(n - 1, |i, j| self.get(rows[i], cols[j]).clone())
        };
        Some(Self::from_fn(n, |i, j| {
            let c = minor(j, i).loop_determinant().mul(&det_inv);
            if (i + j) % 2 == 1 {
                c.neg()
            } else {
                c
            }
        }))
    }

    /// The diagonal `(c_i, k_i)` when every diagonal entry is a monomial and
    /// all off-diagonal entries vanish.
    pub fn as_monomial_diagonal(&self) -> Option<Vec<(Rational, i64)>> {
        if !self.is_diagonal() {
            return None;
        }
        (0..self.dim()).map(|i| self.get(i, i).as_monomial()).collect()
    }
}

//! Seeded random rational parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Rational, Scalar};

/// Deterministic sampler of small rationals.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 7`.
    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-9..=9);
        let q = self.rng.gen_range(1..=7);
        rat(p, q)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Positive `p/q` with `1 ≤ p ≤ 9`, `1 ≤ q ≤ 5`.
    pub fn positive_rational(&mut self) -> Rational {
        rat(self.rng.gen_range(1..=9), self.rng.gen_range(1..=5))
    }

    pub fn rationals(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    /// Pairwise distinct rationals avoiding the forbidden differences.
    pub fn distinct_rationals(&mut self, len: usize, forbidden_diffs: &[Rational]) -> Vec<Rational> {
        loop {
            let xs = self.rationals(len);
            let ok = (0..len).all(|i| {
                (0..len).all(|j| {
                    i == j || {
                        let d = &xs[i] - &xs[j];
                        !d.is_zero() && !forbidden_diffs.contains(&d)
                    }
                })
            });
            if ok {
                return xs;
            }
        }
    }

    /// Nonzero pairwise distinct coordinates `z_1, …, z_n`.
    pub fn regular_torus_point(&mut self, n: usize) -> Vec<Rational> {
        loop {
            let z: Vec<Rational> = (0..n).map(|_| self.nonzero_rational()).collect();
            if (0..n).all(|i| (i + 1..n).all(|j| z[i] != z[j])) {
                return z;
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a: Vec<_> = (0..5).map(|_| Sampler::new(7).rational()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut s = Sampler::new(3);
        let z = s.regular_torus_point(4);
        assert!(z.iter().all(|x| !x.is_zero()));
        let d = s.distinct_rationals(3, &[rat(1, 1), rat(-1, 1)]);
        assert!(d[0] != d[1] && &d[0] - &d[1] != rat(1, 1));
    }
}

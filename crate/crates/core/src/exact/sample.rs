use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use super::poly::Poly;
use super::scalar::{rat, Scalar};

pub const DEFAULT_SAMPLES: usize = 25;

/// How polynomial identities are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Expand both sides and compare coefficients.
    Exact,
    /// Evaluate at `samples` seeded random rational points; a nonzero value
    /// is a definite witness, agreement everywhere is probabilistic.
    Sampled { seed: u64, samples: usize },
}

impl Mode {
    pub fn sampled(seed: u64) -> Self {
        Mode::Sampled {
            seed,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Sampled { .. } => "sampled",
        }
    }
}

/// Result of testing whether a family of polynomials vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTest {
    pub zero: bool,
    /// A point where some member is nonzero, when one was found.
    pub witness: Option<Vec<Scalar>>,
}

const WITNESS_ATTEMPTS: usize = 400;

impl Mode {
    /// Decides whether every polynomial in `polys` (all in `nvars` variables)
    /// is identically zero.
    pub fn test_zero(&self, polys: &[Poly], nvars: usize) -> ZeroTest {
        match *self {
            Mode::Exact => {
                if polys.iter().all(Poly::is_zero) {
                    ZeroTest {
                        zero: true,
                        witness: None,
                    }
                } else {
                    ZeroTest {
                        zero: false,
                        witness: search_witness(polys, nvars, 0, WITNESS_ATTEMPTS),
                    }
                }
            }
            Mode::Sampled { seed, samples } => {
                let witness = search_witness(polys, nvars, seed, samples);
                ZeroTest {
                    zero: witness.is_none(),
                    witness,
                }
            }
        }
    }
}

fn search_witness(polys: &[Poly], nvars: usize, seed: u64, attempts: usize) -> Option<Vec<Scalar>> {
    let live: Vec<&Poly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        return None;
    }
    let mut s = RationalSampler::new(seed);
    (0..attempts)
        .map(|_| s.point(nvars))
        .find(|pt| live.iter().any(|p| !p.eval(pt).is_zero()))
}

/// Deterministic stream of small rationals `p/q`, `|p| <= 3`, `1 <= q <= 3`.
#[derive(Clone, Debug)]
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        let p: i64 = self.rng.gen_range(-3..=3);
        let q: i64 = self.rng.gen_range(1..=3);
        rat(p, q)
    }

    pub fn point(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RationalSampler::new(7);
        let mut b = RationalSampler::new(7);
        assert_eq!(a.point(10), b.point(10));
    }

    #[test]
    fn zero_test_modes_agree() {
        let x = Poly::vars(2);
        let nz = vec![&x[0] * &x[1]];
        let exact = Mode::Exact.test_zero(&nz, 2);
        assert!(!exact.zero);
        let w = exact.witness.unwrap();
        assert!(!nz[0].eval(&w).is_zero());
        assert!(!Mode::sampled(3).test_zero(&nz, 2).zero);
        assert!(Mode::sampled(3).test_zero(&[Poly::zero(2)], 2).zero);
    }

    #[test]
    fn values_in_range() {
        let mut s = RationalSampler::new(1);
        for _ in 0..200 {
            let v = s.scalar();
            assert!(v <= rat(3, 1) && v >= rat(-3, 1));
            assert!(*v.denom() <= num_bigint::BigInt::from(3));
        }
    }
}

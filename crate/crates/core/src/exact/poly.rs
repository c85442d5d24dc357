use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{int, Scalar};
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically (`x1 > x2 > ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables. Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    pub fn int(nvars: usize, n: i64) -> Self {
        Poly::constant(nvars, int(n))
    }

    /// The coordinate function `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Scalar::one());
        p
    }

    pub fn vars(nvars: usize) -> Vec<Poly> {
        (0..nvars).map(|i| Poly::var(nvars, i)).collect()
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::arity(format!(
                    "monomial has {} exponents, ring has {nvars} variables",
                    exps.len()
                )));
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in rings with different numbers of variables"
        );
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to the 0-based variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * int(i64::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`; the result lives in the ring of
    /// the substituted polynomials (`target_nvars` when `subs` is empty).
    pub fn compose(&self, subs: &[Poly], target_nvars: usize) -> Poly {
        assert_eq!(subs.len(), self.nvars, "substitution has wrong arity");
        for s in subs {
            assert_eq!(s.nvars, target_nvars, "substituted polynomial in wrong ring");
        }
        let mut cache: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target_nvars), s.clone()]).collect();
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &subs[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-homes the polynomial into a ring with `nvars` variables, sending
    /// variable `i` to variable `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars, "embedding does not fit");
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; nvars];
            exps[offset..offset + self.nvars].copy_from_slice(&m.0);
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 0]);
        let c = Monomial::new(vec![1, 1]);
        let d = Monomial::new(vec![2, 0]);
        assert!(a > b);
        assert!(d > c && c > a);
    }

    #[test]
    fn cancellation_leaves_canonical_zero() {
        let p = &x(2, 0) * &x(2, 1);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q, Poly::zero(2));
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&x(2, 0).pow(3) * &x(2, 1)) + &Poly::constant(2, rat(1, 2));
        assert_eq!(p.derivative(0), (&x(2, 0).pow(2) * &x(2, 1)).scale(&int(3)));
        assert_eq!(p.eval(&[int(2), int(3)]), rat(49, 2));
    }

    #[test]
    fn compose_and_embed() {
        let p = &x(2, 0) * &x(2, 1);
        let sub = vec![&x(1, 0) + &Poly::one(1), x(1, 0)];
        assert_eq!(p.compose(&sub, 1), &x(1, 0).pow(2) + &x(1, 0));
        assert_eq!(x(1, 0).embed(3, 2), x(3, 2));
    }
}

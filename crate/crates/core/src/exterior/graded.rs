use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, PolyMatrix, Scalar};

/// Set of exterior generators as a bitmask; bit `i` is generator `i`.
pub type Blade = u64;

/// Maximum number of exterior generators.
pub const MAX_GENERATORS: usize = 63;

pub fn blade_indices(b: Blade) -> Vec<usize> {
    (0..64).filter(|i| b >> i & 1 == 1).collect()
}

pub fn blade_degree(b: Blade) -> usize {
    b.count_ones() as usize
}

/// Blade from strictly increasing 0-based indices.
pub fn blade_of(indices: &[usize]) -> Result<Blade> {
    let mut b = 0;
    for w in indices.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::arity(format!("indices {indices:?} are not strictly increasing")));
        }
    }
    for &i in indices {
        if i >= MAX_GENERATORS {
            return Err(Error::arity(format!("index {i} too large")));
        }
        b |= 1 << i;
    }
    Ok(b)
}

/// Sign of `θ_a ∧ θ_b` relative to `θ_{a∪b}`, or `None` if they overlap.
pub fn wedge_sign(a: Blade, b: Blade) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for j in blade_indices(b) {
        swaps += (a >> (j + 1)).count_ones();
    }
    Some(swaps % 2 == 1)
}

/// Number of generators in `b` strictly above `i`.
fn count_above(b: Blade, i: usize) -> u32 {
    (b >> (i + 1)).count_ones()
}

fn count_below(b: Blade, i: usize) -> u32 {
    (b & ((1u64 << i) - 1)).count_ones()
}

/// All blades of the given degree over `n` generators, in increasing order.
pub fn blades(n: usize, degree: usize) -> Vec<Blade> {
    fn rec(start: usize, n: usize, left: usize, acc: Blade, out: &mut Vec<Blade>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            rec(i + 1, n, left - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if degree <= n {
        rec(0, n, degree, 0, &mut out);
    }
    out.sort_by_key(|b| blade_indices(*b));
    out
}

/// Homogeneous element of the exterior algebra on `ngen` generators with
/// polynomial coefficients in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded {
    nvars: usize,
    ngen: usize,
    degree: usize,
    terms: BTreeMap<Blade, Poly>,
}

impl Graded {
    pub fn zero(nvars: usize, ngen: usize, degree: usize) -> Self {
        assert!(ngen <= MAX_GENERATORS, "too many generators");
        Graded {
            nvars,
            ngen,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(f: Poly, ngen: usize) -> Self {
        let mut g = Graded::zero(f.nvars(), ngen, 0);
        g.add_term(0, f);
        g
    }

    /// Generator `i` with unit coefficient.
    pub fn generator(nvars: usize, ngen: usize, i: usize) -> Self {
        let mut g = Graded::zero(nvars, ngen, 1);
        g.add_term(1 << i, Poly::one(nvars));
        g
    }

    /// Degree-one element `Σ coeffs[i] θ_i`.
    pub fn linear(nvars: usize, coeffs: &[Poly]) -> Self {
        let mut g = Graded::zero(nvars, coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            g.add_term(1 << i, c.clone());
        }
        g
    }

    pub fn from_terms(
        nvars: usize,
        ngen: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Blade, Poly)>,
    ) -> Result<Self> {
        if ngen > MAX_GENERATORS {
            return Err(Error::arity("too many generators"));
        }
        let mut g = Graded::zero(nvars, ngen, degree);
        for (b, p) in terms {
            if blade_degree(b) != degree {
                return Err(Error::degree(format!(
                    "term of degree {} in a degree {degree} element",
                    blade_degree(b)
                )));
            }
            if ngen < 64 && b >> ngen != 0 {
                return Err(Error::arity(format!("index beyond the {ngen} available generators")));
            }
            if p.nvars() != nvars {
                return Err(Error::arity(format!(
                    "coefficient has {} variables, expected {nvars}",
                    p.nvars()
                )));
            }
            g.add_term(b, p);
        }
        Ok(g)
    }

    pub fn add_term(&mut self, b: Blade, p: Poly) {
        debug_assert_eq!(blade_degree(b), self.degree);
        if p.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &p;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ngen(&self) -> usize {
        self.ngen
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Poly)> {
        self.terms.iter().map(|(b, p)| (*b, p))
    }

    pub fn coeff(&self, b: Blade) -> Poly {
        self.terms.get(&b).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_space(&self, other: &Graded) -> Result<()> {
        if self.nvars != other.nvars || self.ngen != other.ngen {
            return Err(Error::arity(format!(
                "elements over ({}, {}) and ({}, {}) variables/generators",
                self.nvars, self.ngen, other.nvars, other.ngen
            )));
        }
        if self.degree != other.degree {
            return Err(Error::degree(format!(
                "cannot add degree {} and degree {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Graded) -> Result<Graded> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (b, p) in other.terms() {
            out.add_term(b, p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Graded) -> Result<Graded> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Scalar) -> Graded {
        self.map_coeffs(self.nvars, |p| p.scale(c))
    }

    pub fn scale_poly(&self, f: &Poly) -> Graded {
        self.map_coeffs(self.nvars, |p| p * f)
    }

    pub fn map_coeffs(&self, nvars: usize, f: impl Fn(&Poly) -> Poly) -> Graded {
        let mut out = Graded::zero(nvars, self.ngen, self.degree);
        for (b, p) in self.terms() {
            out.add_term(b, f(p));
        }
        out
    }

    pub fn wedge(&self, other: &Graded) -> Result<Graded> {
        if self.nvars != other.nvars || self.ngen != other.ngen {
            return Err(Error::arity("wedge of elements over different spaces"));
        }
        let mut out = Graded::zero(self.nvars, self.ngen, self.degree + other.degree);
        for (a, p) in self.terms() {
            for (b, q) in other.terms() {
                if let Some(neg) = wedge_sign(a, b) {
                    let c = p * q;
                    out.add_term(a | b, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Partial derivative of every coefficient in variable `i`.
    pub fn derivative(&self, i: usize) -> Graded {
        self.map_coeffs(self.nvars, |p| p.derivative(i))
    }

    pub fn compose(&self, subs: &[Poly], target_nvars: usize) -> Graded {
        self.map_coeffs(target_nvars, |p| p.compose(subs, target_nvars))
    }

    /// Value at a point, as an element with constant coefficients.
    pub fn eval(&self, point: &[Scalar]) -> Graded {
        self.map_coeffs(0, |p| Poly::constant(0, p.eval(point)))
    }

    /// Right derivative with respect to generator `i`: `θ_I = ± θ_{I\i} θ_i`.
    pub fn right_deriv(&self, i: usize) -> Graded {
        assert!(self.degree > 0, "odd derivative of a degree 0 element");
        let mut out = Graded::zero(self.nvars, self.ngen, self.degree - 1);
        for (b, p) in self.terms() {
            if b >> i & 1 == 1 {
                let neg = count_above(b, i) % 2 == 1;
                out.add_term(b & !(1 << i), if neg { -p } else { p.clone() });
            }
        }
        out
    }

    /// Left derivative with respect to generator `i`: `θ_I = ± θ_i θ_{I\i}`.
    pub fn left_deriv(&self, i: usize) -> Graded {
        assert!(self.degree > 0, "odd derivative of a degree 0 element");
        let mut out = Graded::zero(self.nvars, self.ngen, self.degree - 1);
        for (b, p) in self.terms() {
            if b >> i & 1 == 1 {
                let neg = count_below(b, i) % 2 == 1;
                out.add_term(b & !(1 << i), if neg { -p } else { p.clone() });
            }
        }
        out
    }

    /// Replaces generator `i` by `images[i]` (degree one elements of a new
    /// algebra) and multiplies out. Coefficients must already live in the
    /// ring of the images.
    pub fn substitute_generators(&self, images: &[Graded], ngen: usize) -> Result<Graded> {
        if images.len() != self.ngen {
            return Err(Error::arity(format!(
                "{} generator images for {} generators",
                images.len(),
                self.ngen
            )));
        }
        for im in images {
            if im.degree != 1 || im.ngen != ngen || im.nvars != self.nvars {
                return Err(Error::arity("generator image has the wrong shape"));
            }
        }
        let mut out = Graded::zero(self.nvars, ngen, self.degree);
        for (b, p) in self.terms() {
            let mut acc = Graded::function(p.clone(), ngen);
            for i in blade_indices(b) {
                acc = acc.wedge(&images[i])?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Linear pushforward: generator `j` goes to column `j` of `m`.
    pub fn push_columns(&self, m: &PolyMatrix) -> Result<Graded> {
        if m.cols() != self.ngen || m.nvars() != self.nvars {
            return Err(Error::arity("matrix does not match the element"));
        }
        let images: Vec<Graded> = (0..m.cols())
            .map(|j| Graded::linear(self.nvars, &m.column(j)))
            .collect();
        self.substitute_generators(&images, m.rows())
    }

    /// Linear pullback: generator `j` goes to row `j` of `m`.
    pub fn pull_rows(&self, m: &PolyMatrix) -> Result<Graded> {
        self.push_columns(&m.transpose())
    }

    /// Evaluates a degree-k element with constant coefficients on `k`
    /// covectors (or vectors), as the determinant pairing.
    pub fn pair_with(&self, slots: &[Vec<Scalar>]) -> Result<Scalar> {
        if slots.len() != self.degree {
            return Err(Error::degree(format!(
                "{} arguments for a degree {} element",
                slots.len(),
                self.degree
            )));
        }
        if self.nvars != 0 {
            return Err(Error::arity("pairing needs a pointwise element"));
        }
        if slots.iter().any(|v| v.len() != self.ngen) {
            return Err(Error::arity("slot has the wrong length"));
        }
        let mut acc = Scalar::default();
        for (b, c) in self.terms() {
            acc += c.as_constant().expect("constant coefficient") * blade_minor(b, slots);
        }
        Ok(acc)
    }
}

/// `det[slots[k][i_l]]`, the value of the blade `e_{i_1} ∧ … ∧ e_{i_p}` on
/// `p` slots of matching length.
pub fn blade_minor(b: Blade, slots: &[Vec<Scalar>]) -> Scalar {
    let idx = blade_indices(b);
    let rows = slots
        .iter()
        .map(|v| idx.iter().map(|&i| v[i].clone()).collect())
        .collect();
    Matrix::from_rows(rows, idx.len())
        .ok()
        .and_then(|m| m.det())
        .expect("square minor")
}

impl Add for &Graded {
    type Output = Graded;
    fn add(self, rhs: &Graded) -> Graded {
        self.checked_add(rhs).expect("graded addition of incompatible elements")
    }
}

impl Sub for &Graded {
    type Output = Graded;
    fn sub(self, rhs: &Graded) -> Graded {
        self.checked_sub(rhs)
            .expect("graded subtraction of incompatible elements")
    }
}

impl Neg for &Graded {
    type Output = Graded;
    fn neg(self) -> Graded {
        self.map_coeffs(self.nvars, |p| -p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn minor_pairing_matches_pushforward() {
        let slots: Vec<Vec<Scalar>> = vec![
            [1, -2, 0, 3].map(int).to_vec(),
            [2, 5, -1, 1].map(int).to_vec(),
            [0, 1, 4, -3].map(int).to_vec(),
        ];
        let el = Graded::from_terms(
            0,
            4,
            3,
            blades(4, 3).into_iter().zip(1..).map(|(b, c)| (b, Poly::int(0, c))),
        )
        .unwrap();
        let m = Matrix::from_rows(slots.clone(), 4).unwrap();
        let top = el.push_columns(&PolyMatrix::from_constant(0, &m)).unwrap();
        assert_eq!(el.pair_with(&slots).unwrap(), top.coeff(0b111).as_constant().unwrap());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(false));
        assert_eq!(wedge_sign(0b10, 0b01), Some(true));
        assert_eq!(wedge_sign(0b101, 0b010), Some(true));
        assert_eq!(wedge_sign(0b1, 0b1), None);
    }

    #[test]
    fn generators_anticommute() {
        let a = Graded::generator(0, 3, 0);
        let b = Graded::generator(0, 3, 2);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, -&ba);
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn odd_derivatives() {
        let e = |i| Graded::generator(0, 3, i);
        let t = e(0).wedge(&e(1)).unwrap().wedge(&e(2)).unwrap();
        // θ0θ1θ2 = θ0θ2 · θ1 · (-1)
        assert_eq!(t.right_deriv(1), -&e(0).wedge(&e(2)).unwrap());
        assert_eq!(t.left_deriv(1), -&e(0).wedge(&e(2)).unwrap());
        assert_eq!(t.left_deriv(0), e(1).wedge(&e(2)).unwrap());
        assert_eq!(t.right_deriv(2), e(0).wedge(&e(1)).unwrap());
    }

    #[test]
    fn pairing_is_determinant() {
        let t = Graded::generator(0, 2, 0).wedge(&Graded::generator(0, 2, 1)).unwrap();
        let v = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        assert_eq!(t.pair_with(&v).unwrap(), int(-2));
    }

    #[test]
    fn blade_enumeration() {
        assert_eq!(blades(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(blades(2, 0), vec![0]);
        assert!(blades(2, 3).is_empty());
        assert!(blade_of(&[1, 0]).is_err());
    }
}

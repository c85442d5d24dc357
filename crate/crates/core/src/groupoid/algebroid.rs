use super::{AlgebroidSection, PolyGroupoid};
use crate::error::{Error, Result};
use crate::exact::{Poly, PolyMatrix};
use crate::exterior::{blade_indices, Blade, Graded, MultiVectorField, TensorField};

/// Lie algebroid in a global frame: the anchor matrix and the structure
/// functions `[e_i, e_j] = Σ_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebroidData {
    rank: usize,
    dim_m: usize,
    /// `dim_m × rank`; column `i` is `ρ(e_i)`.
    anchor: PolyMatrix,
    /// `structure[i][j] = [e_i, e_j]` as a degree one element.
    structure: Vec<Vec<Graded>>,
}

impl LieAlgebroidData {
    pub fn new(anchor: PolyMatrix, structure: Vec<Vec<Graded>>) -> Result<Self> {
        let (dim_m, rank) = (anchor.rows(), anchor.cols());
        if anchor.nvars() != dim_m {
            return Err(Error::arity("anchor coefficients must live on the base"));
        }
        if structure.len() != rank || structure.iter().any(|r| r.len() != rank) {
            return Err(Error::arity("structure functions must form a rank x rank table"));
        }
        for c in structure.iter().flatten() {
            if c.nvars() != dim_m || c.ngen() != rank || c.degree() != 1 {
                return Err(Error::arity("structure function has the wrong shape"));
            }
        }
        Ok(LieAlgebroidData {
            rank,
            dim_m,
            anchor,
            structure,
        })
    }

    /// Tangent bundle of `Q^n`: identity anchor, vanishing brackets.
    pub fn tangent(n: usize) -> Self {
        LieAlgebroidData {
            rank: n,
            dim_m: n,
            anchor: PolyMatrix::identity(n, n),
            structure: vec![vec![Graded::zero(n, n, 1); n]; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn anchor(&self) -> &PolyMatrix {
        &self.anchor
    }

    pub fn structure(&self, i: usize, j: usize) -> &Graded {
        &self.structure[i][j]
    }

    /// `ρ(e_i)` as a vector field on the base.
    pub fn anchor_field(&self, i: usize) -> MultiVectorField {
        MultiVectorField::vector(&self.anchor.column(i))
    }

    /// `ρ(e_i) f`.
    pub fn anchor_apply(&self, i: usize, f: &Poly) -> Poly {
        (0..self.dim_m).fold(Poly::zero(self.dim_m), |acc, a| {
            &acc + &(self.anchor.get(a, i) * &f.derivative(a))
        })
    }

    /// `ρ(X)` for a section `X` of `A`.
    pub fn anchor_of(&self, x: &Graded) -> Result<MultiVectorField> {
        if x.degree() != 1 || x.ngen() != self.rank {
            return Err(Error::degree("anchor applies to sections of A"));
        }
        x.push_columns(&self.anchor).and_then(MultiVectorField::from_graded)
    }

    /// Gerstenhaber bracket on `Γ(∧A)`, generated from the anchor and the
    /// structure functions by the graded Leibniz rule.
    pub fn bracket(&self, a: &Graded, b: &Graded) -> Result<Graded> {
        for x in [a, b] {
            if x.nvars() != self.dim_m || x.ngen() != self.rank {
                return Err(Error::arity("bracket argument is not a section of ∧A"));
            }
        }
        let (p, q) = (a.degree(), b.degree());
        let mut out = Graded::zero(self.dim_m, self.rank, (p + q).saturating_sub(1));
        if p + q == 0 {
            return Ok(out);
        }
        for (i, f) in a.terms() {
            for (j, g) in b.terms() {
                out = out.checked_add(&self.bracket_terms(f, i, g, j)?)?;
            }
        }
        Ok(out)
    }

    fn mono(&self, f: &Poly, i: Blade) -> Graded {
        Graded::from_terms(self.dim_m, self.rank, i.count_ones() as usize, [(i, f.clone())]).expect("monomial section")
    }

    fn bracket_terms(&self, f: &Poly, i: Blade, g: &Poly, j: Blade) -> Result<Graded> {
        let (p, q) = (i.count_ones() as usize, j.count_ones() as usize);
        let n = self.dim_m;
        let q_atomic = q == 0 || (q == 1 && g.is_one());
        let p_atomic = p == 0 || (p == 1 && f.is_one());
        if !q_atomic {
            let last = *blade_indices(j).last().expect("nonempty blade");
            let ej = self.mono(&Poly::one(n), 1 << last);
            if q == 1 {
                // [P, g e_j] = [P, g] e_j + g [P, e_j]
                let pe = self.bracket_terms(f, i, &Poly::one(n), j)?.scale_poly(g);
                if p == 0 {
                    return Ok(pe);
                }
                let pg = self.bracket_terms(f, i, g, 0)?;
                return pg.wedge(&ej)?.checked_add(&pe);
            }
            let rest = j & !(1 << last);
            let q1 = self.mono(g, rest);
            let left = self.bracket_terms(f, i, g, rest)?.wedge(&ej)?;
            let right = q1.wedge(&self.bracket_terms(f, i, &Poly::one(n), 1 << last)?)?;
            let sign_neg = (p as i64 - 1) * (q as i64 - 1) % 2 != 0;
            return if sign_neg {
                left.checked_sub(&right)
            } else {
                left.checked_add(&right)
            };
        }
        if !p_atomic {
            // [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]
            let swapped = self.bracket_terms(g, j, f, i)?;
            let even = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 0;
            return Ok(if even { -&swapped } else { swapped });
        }
        Ok(match (p, q) {
            (0, 0) => Graded::zero(n, self.rank, 0),
            (1, 0) => Graded::function(self.anchor_apply(i.trailing_zeros() as usize, g), self.rank),
            (0, 1) => Graded::function(-&self.anchor_apply(j.trailing_zeros() as usize, f), self.rank),
            _ => self.structure[i.trailing_zeros() as usize][j.trailing_zeros() as usize].clone(),
        })
    }
}

impl PolyGroupoid {
    /// Lie algebroid of the groupoid in the frame of the splitting.
    pub fn lie_algebroid(&self) -> Result<&LieAlgebroidData> {
        self.algebroid
            .get_or_init(|| self.compute_algebroid())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_algebroid(&self) -> Result<LieAlgebroidData> {
        let n = self.rank();
        let fields: Vec<MultiVectorField> = (0..n).map(|i| self.right_invariant_vector(i)).collect();
        let mut structure = vec![vec![Graded::zero(self.dim_m(), n, 1); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let br = fields[i].schouten(&fields[j])?;
                let c = self
                    .restrict_project(&TensorField::from_multivector(&br), 1, 0)?
                    .contravariant()?;
                structure[j][i] = -&c;
                structure[i][j] = c;
            }
        }
        LieAlgebroidData::new(self.anchor()?, structure)
    }

    /// Algebroid bracket of two sections of `∧A`.
    pub fn algebroid_bracket(&self, a: &AlgebroidSection, b: &AlgebroidSection) -> Result<AlgebroidSection> {
        let data = self.lie_algebroid()?;
        let r = data.bracket(&a.contravariant()?, &b.contravariant()?)?;
        AlgebroidSection::from_contravariant(&r, self.dim_m())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::int;

    #[test]
    fn heisenberg_structure_constants() {
        let g = catalog::heisenberg();
        let a = g.lie_algebroid().unwrap();
        let c12 = a.structure(0, 1);
        let want = Graded::generator(0, 3, 2).scale(&int(-1));
        assert_eq!(c12, &want);
        assert!(a.structure(0, 2).is_zero());
    }

    #[test]
    fn pair_algebroid_is_tangent() {
        let g = catalog::pair(2);
        assert_eq!(g.lie_algebroid().unwrap(), &LieAlgebroidData::tangent(2));
    }

    #[test]
    fn tangent_bracket_matches_schouten() {
        let x = Poly::vars(2);
        let t = LieAlgebroidData::tangent(2);
        let p = MultiVectorField::vector(&[&x[0] * &x[1], x[1].pow(2)]);
        let q = MultiVectorField::from_terms(2, 2, [(0b11, &x[0] + &x[1])]).unwrap();
        let via_generators = t.bracket(p.graded(), q.graded()).unwrap();
        assert_eq!(&via_generators, p.schouten(&q).unwrap().graded());
    }
}

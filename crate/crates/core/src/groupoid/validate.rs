use super::PolyGroupoid;
use crate::error::Result;
use crate::exact::{Mode, Poly, PolyMap, Scalar};
use crate::report::Witness;

/// A failed groupoid axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: String,
    /// Point of the axiom's domain where it fails, when one was found.
    pub witness: Option<Vec<Scalar>>,
}

impl AxiomViolation {
    pub fn to_witness(&self) -> Witness {
        Witness::new(self.axiom.clone(), self.witness.clone().unwrap_or_default())
    }
}

fn diff(a: &PolyMap, b: &PolyMap) -> Vec<Poly> {
    a.comps().iter().zip(b.comps()).map(|(x, y)| x - y).collect()
}

impl PolyGroupoid {
    /// Checks the groupoid axioms and the splitting conditions, returning the
    /// violated ones.
    pub fn validate_axioms(&self, mode: Mode) -> Result<Vec<AxiomViolation>> {
        let (g, m) = (self.dim_g(), self.dim_m());
        let id_m = PolyMap::identity(m);
        let id_g = PolyMap::identity(g);
        let s = self.source();
        let t = self.target();
        let u = self.unit();
        let inv = self.inverse();
        let mx = self.mult_ext();
        let cp = self.comp_param();
        let p = cp.domain();
        let pr1 = cp.slice(0..g);
        let pr2 = cp.slice(g..2 * g);

        let mut checks: Vec<(&str, Vec<Poly>, usize)> = vec![
            ("source of unit", diff(&s.compose(u)?, &id_m), m),
            ("target of unit", diff(&t.compose(u)?, &id_m), m),
            ("source of inverse", diff(&s.compose(inv)?, t), g),
            ("target of inverse", diff(&t.compose(inv)?, s), g),
            ("inverse is an involution", diff(&inv.compose(inv)?, &id_g), g),
            (
                "composable pairs are composable",
                diff(&s.compose(&pr1)?, &t.compose(&pr2)?),
                p,
            ),
            (
                "source of product",
                diff(&s.compose(self.mult())?, &s.compose(&pr2)?),
                p,
            ),
            (
                "target of product",
                diff(&t.compose(self.mult())?, &t.compose(&pr1)?),
                p,
            ),
        ];

        let left_unit = u.compose(t)?.pair(&id_g)?;
        let right_unit = id_g.pair(&u.compose(s)?)?;
        checks.push(("left unit law", diff(&mx.compose(&left_unit)?, &id_g), g));
        checks.push(("right unit law", diff(&mx.compose(&right_unit)?, &id_g), g));
        let g_ginv = id_g.pair(inv)?;
        let ginv_g = inv.pair(&id_g)?;
        checks.push(("right inverse law", diff(&mx.compose(&g_ginv)?, &u.compose(t)?), g));
        checks.push(("left inverse law", diff(&mx.compose(&ginv_g)?, &u.compose(s)?), g));

        let tp = self.triple_param();
        let a = tp.slice(0..g);
        let b = tp.slice(g..2 * g);
        let c = tp.slice(2 * g..3 * g);
        let tn = tp.domain();
        checks.push(("triples are composable", diff(&s.compose(&a)?, &t.compose(&b)?), tn));
        checks.push(("triples are composable", diff(&s.compose(&b)?, &t.compose(&c)?), tn));
        let ab_c = mx.compose(&mx.compose(&a.pair(&b)?)?.pair(&c)?)?;
        let a_bc = mx.compose(&a.pair(&mx.compose(&b.pair(&c)?)?)?)?;
        checks.push(("associativity", diff(&ab_c, &a_bc), tn));

        let mut out = Vec::new();
        for (axiom, residual, nvars) in checks {
            let z = mode.test_zero(&residual, nvars);
            if !z.zero {
                out.push(AxiomViolation {
                    axiom: axiom.to_string(),
                    witness: z.witness,
                });
            }
        }
        if let Err(e) = self.splitting_inverse() {
            out.push(AxiomViolation {
                axiom: e.to_string(),
                witness: None,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::exact::Mode;

    #[test]
    fn catalog_groupoids_satisfy_axioms() {
        for id in catalog::ids() {
            let g = catalog::by_id(id).unwrap();
            let v = g.validate_axioms(Mode::Exact).unwrap();
            assert!(v.is_empty(), "{id}: {v:?}");
        }
    }
}

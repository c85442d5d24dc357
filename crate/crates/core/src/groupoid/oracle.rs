use num_traits::Zero;

use super::PolyGroupoid;
use crate::error::{Error, Result};
use crate::exact::{Matrix, RationalSampler, Scalar};
use crate::exterior::{Graded, MultiVectorField};
use crate::report::{Verdict, Witness};

/// Submanifold whose coisotropy is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleShape {
    /// Graph of the multiplication `{(g, h, gh)}`; coisotropic for
    /// multiplicative fields.
    Triangles,
    /// `{(g, h, l, h g⁻¹ l)}`; coisotropic for affine fields.
    Parallelograms,
}

fn negate(m: &Matrix) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, -m.get(i, j).clone());
        }
    }
    out
}

/// Value of the signed direct sum `⊕ signs[b] Π(points[b])` on the conormal
/// covectors `conormal[idx]`.
fn direct_sum_value(
    values: &[Graded],
    signs: &[bool],
    conormal: &[Vec<Scalar>],
    idx: &[usize],
    n: usize,
) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (b, (v, neg)) in values.iter().zip(signs).enumerate() {
        let slots: Vec<Vec<Scalar>> = idx.iter().map(|&i| conormal[i][b * n..(b + 1) * n].to_vec()).collect();
        let x = v.pair_with(&slots)?;
        if *neg {
            acc -= x;
        } else {
            acc += x;
        }
    }
    Ok(acc)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn stack_rows(blocks: &[&[Scalar]]) -> Vec<Scalar> {
    blocks.iter().flat_map(|b| b.iter().cloned()).collect()
}

/// Tests, at `samples` seeded random points, whether the triangles or the
/// parallelograms of `G` are coisotropic for the signed direct sum of `Π`.
///
/// This decides multiplicativity or affineness of a multivector field
/// without using translations, so it is independent of the algebraic tests.
pub fn coisotropy_oracle(
    gp: &PolyGroupoid,
    pi: &MultiVectorField,
    shape: OracleShape,
    seed: u64,
    samples: usize,
) -> Result<Verdict> {
    let n = gp.dim_g();
    if pi.dim() != n {
        return Err(Error::arity("multivector field does not live on the groupoid"));
    }
    let k = pi.degree();
    let odd_flip = k.is_multiple_of(2); // (-1)^{k+1} = -1
    let mut rng = RationalSampler::new(seed);
    let mult = gp.mult_ext();
    for _ in 0..samples {
        let (param, points, tangent) = match shape {
            OracleShape::Triangles => {
                let p = rng.point(gp.comp_param().domain());
                let gh = gp.comp_param().eval(&p)?;
                let (g, h) = (&gh[..n], &gh[n..]);
                let prod = gp.mult().eval(&p)?;
                let dm = gp.d_mult_at(g, h)?;
                let tangent: Vec<Vec<Scalar>> = gp
                    .composable_tangent_basis(g, h)?
                    .into_iter()
                    .map(|v| {
                        let w = dm.mul_vec(&v).expect("jacobian shape");
                        stack_rows(&[&v[..n], &v[n..], &w])
                    })
                    .collect();
                (p, vec![g.to_vec(), h.to_vec(), prod], tangent)
            }
            OracleShape::Parallelograms => {
                let p = rng.point(gp.triple_param().domain());
                let xgy = gp.triple_param().eval(&p)?;
                let (x, g, y) = (&xgy[..n], &xgy[n..2 * n], &xgy[2 * n..]);
                let h = gp.multiply(x, g)?;
                let l = gp.multiply(g, y)?;
                let m = gp.multiply(&h, y)?;
                // (g, h, l) ↦ (h g⁻¹) l on the constraint set s(g)=s(h), t(g)=t(l)
                let fourth = {
                    let g3 = 3 * n;
                    let gv = crate::exact::PolyMap::identity(g3);
                    let pg = gv.slice(0..n);
                    let ph = gv.slice(n..2 * n);
                    let pl = gv.slice(2 * n..3 * n);
                    let ginv = gp.inverse().compose(&pg)?;
                    let hg = mult.compose(&ph.pair(&ginv)?)?;
                    mult.compose(&hg.pair(&pl)?)?
                };
                let pt = stack_rows(&[g, &h, &l]);
                let d4 = fourth.jacobian_at(&pt)?;
                let ds_g = gp.d_source().eval(g)?;
                let ds_h = gp.d_source().eval(&h)?;
                let dt_g = gp.d_target().eval(g)?;
                let dt_l = gp.d_target().eval(&l)?;
                let zero = Matrix::zeros(gp.dim_m(), n);
                let top = ds_g.hstack(&negate(&ds_h))?.hstack(&zero)?;
                let bottom = dt_g.hstack(&zero)?.hstack(&negate(&dt_l))?;
                let mut rows: Vec<Vec<Scalar>> = (0..top.rows()).map(|i| top.row(i).to_vec()).collect();
                rows.extend((0..bottom.rows()).map(|i| bottom.row(i).to_vec()));
                let constraints = Matrix::from_rows(rows, 3 * n)?;
                let tangent: Vec<Vec<Scalar>> = constraints
                    .kernel()
                    .into_iter()
                    .map(|v| {
                        let w = d4.mul_vec(&v).expect("jacobian shape");
                        stack_rows(&[&v, &w])
                    })
                    .collect();
                (p, vec![g.to_vec(), h, l, m], tangent)
            }
        };
        let blocks = points.len();
        let signs: Vec<bool> = match shape {
            OracleShape::Triangles => vec![false, false, odd_flip],
            OracleShape::Parallelograms => vec![false, odd_flip, odd_flip, false],
        };
        let tm = Matrix::from_rows(tangent, blocks * n)?;
        let conormal = tm.kernel();
        let values: Vec<Graded> = points.iter().map(|x| pi.at(x)).collect();
        for idx in combinations(conormal.len(), k) {
            let v = direct_sum_value(&values, &signs, &conormal, &idx, n)?;
            if !v.is_zero() {
                let label = match shape {
                    OracleShape::Triangles => "triangle not coisotropic",
                    OracleShape::Parallelograms => "parallelogram not coisotropic",
                };
                return Ok(Verdict::fail(Some(Witness::new(label, param))));
            }
        }
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::Poly;

    #[test]
    fn pair_oracle_distinguishes_fields() {
        let g = catalog::pair(1);
        let x = Poly::vars(2);
        // (u(x), -v(y)) is affine; (u(x), u(y)) is multiplicative
        let affine = MultiVectorField::vector(&[&x[0] * &x[0], -&x[1]]);
        let mult = MultiVectorField::vector(&[&x[0] * &x[0], &x[1] * &x[1]]);
        let bad = MultiVectorField::vector(&[&x[0] * &x[1], Poly::zero(2)]);
        let run = |f: &MultiVectorField, s| coisotropy_oracle(&g, f, s, 1, 10).unwrap().pass;
        assert!(run(&affine, OracleShape::Parallelograms));
        assert!(!run(&affine, OracleShape::Triangles));
        assert!(run(&mult, OracleShape::Triangles));
        assert!(run(&mult, OracleShape::Parallelograms));
        assert!(!run(&bad, OracleShape::Parallelograms));
    }
}

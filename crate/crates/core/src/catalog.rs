//! Built-in groupoids: pair groupoids, vector groups, the Heisenberg group and
//! products of these.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Poly, PolyMap, PolyMatrix};
use crate::groupoid::{GroupoidSpec, PolyGroupoid};
use crate::io;

pub mod fixtures;

const IDS: &[&str] = &[
    "abelian1",
    "abelian2",
    "abelian3",
    "heisenberg",
    "pair1",
    "pair2",
    "pair3",
    "pair1xheis",
    "pair2xheis",
];

pub fn ids() -> &'static [&'static str] {
    IDS
}

/// JSON for a groupoid id or a fixture name (`<id>/<fixture>`); fixtures
/// carry the groupoid they live on.
pub fn export(name: &str) -> Result<String> {
    let name = name.strip_prefix("catalog:").unwrap_or(name);
    if name.contains('/') {
        let f = fixtures::by_name(name)?;
        let groupoid = format!("catalog:{}", f.groupoid);
        Ok(io::field_doc_to_json(&io::FieldData::from(f.field), Some(&groupoid)))
    } else {
        Ok(io::groupoid_to_json(by_id(name)?.as_ref()))
    }
}

pub fn by_id(id: &str) -> Result<Arc<PolyGroupoid>> {
    Ok(match id {
        "abelian1" => abelian(1),
        "abelian2" => abelian(2),
        "abelian3" => abelian(3),
        "heisenberg" => heisenberg(),
        "pair1" => pair(1),
        "pair2" => pair(2),
        "pair3" => pair(3),
        "pair1xheis" => product_pair_heisenberg(1),
        "pair2xheis" => product_pair_heisenberg(2),
        _ => {
            return Err(Error::Unknown {
                what: "catalog groupoid".into(),
                name: id.into(),
            })
        }
    })
}

fn build(spec: GroupoidSpec) -> Arc<PolyGroupoid> {
    Arc::new(PolyGroupoid::new(spec).expect("catalog groupoid is well formed"))
}

/// The map `Q^nvars -> Q^k` picking the listed coordinates.
fn select(nvars: usize, idx: impl IntoIterator<Item = usize>) -> PolyMap {
    let comps = idx.into_iter().map(|i| Poly::var(nvars, i)).collect();
    PolyMap::new(nvars, comps).expect("selection map")
}

fn pair_spec(n: usize) -> GroupoidSpec {
    let g = 2 * n;
    let x = |i| i;
    let y = |i| n + i;
    let mut split = PolyMatrix::zeros(n, g, g);
    for i in 0..n {
        split.set(x(i), i, Poly::one(n));
        split.set(y(i), i, Poly::one(n));
        split.set(x(i), n + i, Poly::one(n));
    }
    GroupoidSpec {
        name: format!("pair{n}"),
        dim_g: g,
        dim_m: n,
        source: select(g, (0..n).map(y)),
        target: select(g, (0..n).map(x)),
        unit: select(n, (0..n).chain(0..n)),
        inverse: select(g, (0..n).map(y).chain((0..n).map(x))),
        // (x, y, z) ↦ ((x, y), (y, z))
        comp_param: select(3 * n, (0..2 * n).chain(n..3 * n)),
        mult: select(3 * n, (0..n).chain(2 * n..3 * n)),
        // ((x, y), (y', z)) ↦ (x, y, z)
        comp_proj: Some(select(4 * n, (0..2 * n).chain(3 * n..4 * n))),
        // (a, b, c, d) ↦ ((a, b), (b, c), (c, d))
        triple_param: Some(select(4 * n, (0..2 * n).chain(n..3 * n).chain(2 * n..4 * n))),
        splitting: split,
    }
}

/// Pair groupoid `Q^n × Q^n ⇉ Q^n` with `t(x, y) = x`, `s(x, y) = y`.
pub fn pair(n: usize) -> Arc<PolyGroupoid> {
    build(pair_spec(n))
}

fn abelian_spec(n: usize) -> GroupoidSpec {
    let x = Poly::vars(n);
    let x2 = Poly::vars(2 * n);
    GroupoidSpec {
        name: format!("abelian{n}"),
        dim_g: n,
        dim_m: 0,
        source: PolyMap::new(n, vec![]).expect("empty map"),
        target: PolyMap::new(n, vec![]).expect("empty map"),
        unit: PolyMap::new(0, vec![Poly::zero(0); n]).expect("constant map"),
        inverse: PolyMap::new(n, x.iter().map(|v| -v).collect()).expect("negation"),
        comp_param: PolyMap::identity(2 * n),
        mult: PolyMap::new(2 * n, (0..n).map(|i| &x2[i] + &x2[n + i]).collect()).expect("addition"),
        comp_proj: None,
        triple_param: None,
        splitting: PolyMatrix::identity(0, n),
    }
}

/// Vector group `(Q^n, +)`.
pub fn abelian(n: usize) -> Arc<PolyGroupoid> {
    build(abelian_spec(n))
}

fn heisenberg_spec() -> GroupoidSpec {
    let x = Poly::vars(3);
    let y = Poly::vars(6);
    GroupoidSpec {
        name: "heisenberg".into(),
        dim_g: 3,
        dim_m: 0,
        source: PolyMap::new(3, vec![]).expect("empty map"),
        target: PolyMap::new(3, vec![]).expect("empty map"),
        unit: PolyMap::new(0, vec![Poly::zero(0); 3]).expect("constant map"),
        inverse: PolyMap::new(3, vec![-&x[0], -&x[1], &(&x[0] * &x[1]) - &x[2]]).expect("inverse"),
        comp_param: PolyMap::identity(6),
        // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')
        mult: PolyMap::new(
            6,
            vec![&y[0] + &y[3], &y[1] + &y[4], &(&y[2] + &y[5]) + &(&y[0] * &y[4])],
        )
        .expect("multiplication"),
        comp_proj: None,
        triple_param: None,
        splitting: PolyMatrix::identity(0, 3),
    }
}

/// Three-dimensional Heisenberg group.
pub fn heisenberg() -> Arc<PolyGroupoid> {
    build(heisenberg_spec())
}

/// Direct product of two groupoids, with arrows `(g1, g2)` and base
/// `(x1, x2)`.
pub fn product_spec(a: &GroupoidSpec, b: &GroupoidSpec) -> GroupoidSpec {
    let (g1, g2, m1, m2) = (a.dim_g, b.dim_g, a.dim_m, b.dim_m);
    let g = g1 + g2;
    let reorder = |map1: &PolyMap, map2: &PolyMap, blocks: usize| -> PolyMap {
        // interleave `blocks` arrow blocks of each factor
        let both = map1.product(map2);
        let mut idx = Vec::new();
        for k in 0..blocks {
            idx.extend(k * g1..(k + 1) * g1);
            idx.extend(blocks * g1 + k * g2..blocks * g1 + (k + 1) * g2);
        }
        select(both.codomain(), idx).compose(&both).expect("reorder")
    };
    let unreorder = |blocks: usize| -> PolyMap {
        // (f1, f2, h1, h2, ...) ↦ (f1, h1, ..., f2, h2, ...)
        let mut idx = Vec::new();
        for k in 0..blocks {
            idx.extend(k * g..k * g + g1);
        }
        for k in 0..blocks {
            idx.extend(k * g + g1..(k + 1) * g);
        }
        select(blocks * g, idx)
    };
    let a_proj = a.comp_proj.clone().unwrap_or_else(|| PolyMap::identity(2 * g1));
    let b_proj = b.comp_proj.clone().unwrap_or_else(|| PolyMap::identity(2 * g2));
    let comp_proj = a_proj
        .product(&b_proj)
        .compose(&unreorder(2))
        .expect("product projection");
    let a_trip = a.triple_param.clone().unwrap_or_else(|| PolyMap::identity(3 * g1));
    let b_trip = b.triple_param.clone().unwrap_or_else(|| PolyMap::identity(3 * g2));

    let m = m1 + m2;
    let mut split = PolyMatrix::zeros(m, g, g);
    let sa = a.splitting.compose(&Poly::vars(m)[..m1], m);
    let sb = b.splitting.compose(&Poly::vars(m)[m1..], m);
    // columns: unit directions of both factors, then both algebroid frames
    for i in 0..g1 {
        for j in 0..m1 {
            split.set(i, j, sa.get(i, j).clone());
        }
        for j in 0..(g1 - m1) {
            split.set(i, m + j, sa.get(i, m1 + j).clone());
        }
    }
    for i in 0..g2 {
        for j in 0..m2 {
            split.set(g1 + i, m1 + j, sb.get(i, j).clone());
        }
        for j in 0..(g2 - m2) {
            split.set(g1 + i, m + (g1 - m1) + j, sb.get(i, m2 + j).clone());
        }
    }
    GroupoidSpec {
        name: format!("{}x{}", a.name, b.name),
        dim_g: g,
        dim_m: m,
        source: a.source.product(&b.source),
        target: a.target.product(&b.target),
        unit: a.unit.product(&b.unit),
        inverse: a.inverse.product(&b.inverse),
        comp_param: reorder(&a.comp_param, &b.comp_param, 2),
        mult: a.mult.product(&b.mult),
        comp_proj: Some(comp_proj),
        triple_param: Some(reorder(&a_trip, &b_trip, 3)),
        splitting: split,
    }
}

/// `Pair(Q^n) × H` over `Q^n`.
pub fn product_pair_heisenberg(n: usize) -> Arc<PolyGroupoid> {
    let mut spec = product_spec(&pair_spec(n), &heisenberg_spec());
    spec.name = format!("pair{n}xheis");
    build(spec)
}

/// Raw spec of a catalog entry, for export.
pub fn spec_by_id(id: &str) -> Result<GroupoidSpec> {
    Ok(by_id(id)?.spec().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_builds() {
        for id in ids() {
            let g = by_id(id).unwrap();
            assert_eq!(g.name(), *id);
        }
        assert!(by_id("pair0x").is_err());
        assert!(by_id("nope").is_err());
    }

    #[test]
    fn product_dimensions() {
        let g = product_pair_heisenberg(1);
        assert_eq!((g.dim_g(), g.dim_m(), g.rank()), (5, 1, 4));
    }
}

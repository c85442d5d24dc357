//! JSON encodings of groupoids and fields.
//!
//! Polynomials use the text syntax of [`crate::exact::text`]. Indices in
//! field coefficients are 1-based, matching the variable names `x1..xn`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exact::text::{format_poly, parse_poly};
use crate::exact::{Poly, PolyMap, PolyMatrix};
use crate::exterior::{blade_indices, blade_of, Blade, DifferentialForm, MultiVectorField, TensorField};
use crate::groupoid::{AlgebroidSection, GroupoidSpec, PolyGroupoid};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ParamJson {
    #[serde(rename = "dim_P")]
    dim_p: usize,
    map: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(rename = "dim_G")]
    dim_g: usize,
    #[serde(rename = "dim_M")]
    dim_m: usize,
    src: Vec<String>,
    tgt: Vec<String>,
    unit: Vec<String>,
    inv: Vec<String>,
    comp_param: ParamJson,
    mult: Vec<String>,
    /// Left inverse of `comp_param` on `G × G`, as polynomials in `2 dim_G`
    /// variables; derived when `comp_param` is affine-linear.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comp_proj: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triple_param: Option<ParamJson>,
    splitting: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffJson {
    #[serde(default)]
    idx: Vec<usize>,
    #[serde(default)]
    cov_idx: Vec<usize>,
    poly: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    /// Groupoid the field lives on, `catalog:<id>` or a path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    groupoid: Option<String>,
    kind: String,
    dim: usize,
    /// Rank of the algebroid, for `kind = "section"` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    degree: [usize; 2],
    coeffs: Vec<CoeffJson>,
}

/// A field read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldData {
    MultiVector(MultiVectorField),
    Form(DifferentialForm),
    Tensor(TensorField),
    Section(AlgebroidSection),
}

impl From<catalog::fixtures::FixtureField> for FieldData {
    fn from(f: catalog::fixtures::FixtureField) -> Self {
        match f {
            catalog::fixtures::FixtureField::MultiVector(p) => FieldData::MultiVector(p),
            catalog::fixtures::FixtureField::Form(w) => FieldData::Form(w),
        }
    }
}

impl FieldData {
    pub fn kind(&self) -> &'static str {
        match self {
            FieldData::MultiVector(_) => "mv",
            FieldData::Form(_) => "form",
            FieldData::Tensor(_) => "tensor",
            FieldData::Section(_) => "section",
        }
    }

    /// The field as a tensor on its ambient space.
    pub fn tensor(&self) -> TensorField {
        match self {
            FieldData::MultiVector(m) => TensorField::from_multivector(m),
            FieldData::Form(f) => TensorField::from_form(f),
            FieldData::Tensor(t) => t.clone(),
            FieldData::Section(s) => s.tensor().clone(),
        }
    }
}

fn json_error(doc: &str, e: serde_json::Error) -> Error {
    Error::parse(doc, e.to_string())
}

fn polys(texts: &[String], nvars: usize, field: &str) -> Result<Vec<Poly>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_poly(t, nvars, &format!("{field}[{i}]")))
        .collect()
}

fn poly_map(texts: &[String], nvars: usize, field: &str) -> Result<PolyMap> {
    PolyMap::new(nvars, polys(texts, nvars, field)?)
}

fn texts(m: &PolyMap) -> Vec<String> {
    m.comps().iter().map(format_poly).collect()
}

pub fn parse_groupoid_spec(text: &str) -> Result<GroupoidSpec> {
    let j: GroupoidJson = serde_json::from_str(text).map_err(|e| json_error("groupoid", e))?;
    let (g, m) = (j.dim_g, j.dim_m);
    let expect_len = |field: &str, got: usize, want: usize| {
        if got == want {
            Ok(())
        } else {
            Err(Error::parse(field, format!("expected {want} components, got {got}")))
        }
    };
    expect_len("src", j.src.len(), m)?;
    expect_len("tgt", j.tgt.len(), m)?;
    expect_len("unit", j.unit.len(), g)?;
    expect_len("inv", j.inv.len(), g)?;
    expect_len("comp_param.map", j.comp_param.map.len(), 2 * g)?;
    expect_len("mult", j.mult.len(), g)?;
    expect_len("splitting", j.splitting.len(), g)?;
    let mut rows = Vec::with_capacity(g);
    for (i, row) in j.splitting.iter().enumerate() {
        let field = format!("splitting[{i}]");
        expect_len(&field, row.len(), g)?;
        rows.push(polys(row, m, &field)?);
    }
    let p = j.comp_param.dim_p;
    let comp_proj = match &j.comp_proj {
        Some(cp) => {
            expect_len("comp_proj", cp.len(), p)?;
            Some(poly_map(cp, 2 * g, "comp_proj")?)
        }
        None => None,
    };
    let triple_param = match &j.triple_param {
        Some(tp) => {
            expect_len("triple_param.map", tp.map.len(), 3 * g)?;
            Some(poly_map(&tp.map, tp.dim_p, "triple_param.map")?)
        }
        None => None,
    };
    Ok(GroupoidSpec {
        name: j.name.unwrap_or_else(|| "input".into()),
        dim_g: g,
        dim_m: m,
        source: poly_map(&j.src, g, "src")?,
        target: poly_map(&j.tgt, g, "tgt")?,
        unit: poly_map(&j.unit, m, "unit")?,
        inverse: poly_map(&j.inv, g, "inv")?,
        comp_param: poly_map(&j.comp_param.map, p, "comp_param.map")?,
        mult: poly_map(&j.mult, p, "mult")?,
        comp_proj,
        triple_param,
        splitting: PolyMatrix::from_rows(m, rows, g)?,
    })
}

pub fn parse_groupoid(text: &str) -> Result<Arc<PolyGroupoid>> {
    Ok(Arc::new(PolyGroupoid::new(parse_groupoid_spec(text)?)?))
}

pub fn groupoid_to_json(gp: &PolyGroupoid) -> String {
    let spec = gp.spec();
    let tp = gp.triple_param();
    let j = GroupoidJson {
        name: Some(spec.name.clone()),
        dim_g: spec.dim_g,
        dim_m: spec.dim_m,
        src: texts(&spec.source),
        tgt: texts(&spec.target),
        unit: texts(&spec.unit),
        inv: texts(&spec.inverse),
        comp_param: ParamJson {
            dim_p: spec.comp_param.domain(),
            map: texts(&spec.comp_param),
        },
        mult: texts(&spec.mult),
        comp_proj: Some(texts(gp.comp_proj())),
        triple_param: Some(ParamJson {
            dim_p: tp.domain(),
            map: texts(tp),
        }),
        splitting: (0..spec.dim_g)
            .map(|i| spec.splitting.row(i).iter().map(format_poly).collect())
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&j).expect("groupoid serialises");
    s.push('\n');
    s
}

/// Resolves `catalog:<id>` or reads a groupoid JSON file.
pub fn load_groupoid(arg: &str) -> Result<Arc<PolyGroupoid>> {
    match arg.strip_prefix("catalog:") {
        Some(id) => catalog::by_id(id),
        None => parse_groupoid(&read_file(Path::new(arg))?),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn blade_from_json(idx: &[usize], bound: usize, field: &str) -> Result<Blade> {
    if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > bound) {
        return Err(Error::parse(field, format!("index {bad} outside 1..={bound}")));
    }
    let mut zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
    zero_based.sort_unstable();
    blade_of(&zero_based).map_err(|e| Error::parse(field, e.to_string()))
}

fn blade_to_json(b: Blade) -> Vec<usize> {
    blade_indices(b).into_iter().map(|i| i + 1).collect()
}

/// A field file: the field and the groupoid it names, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldDoc {
    pub field: FieldData,
    pub groupoid: Option<String>,
}

pub fn parse_field(text: &str) -> Result<FieldData> {
    parse_field_doc(text).map(|d| d.field)
}

pub fn parse_field_doc(text: &str) -> Result<FieldDoc> {
    let j: FieldJson = serde_json::from_str(text).map_err(|e| json_error("field", e))?;
    let groupoid = j.groupoid.clone();
    let field = field_from_json(j)?;
    Ok(FieldDoc { field, groupoid })
}

fn field_from_json(j: FieldJson) -> Result<FieldData> {
    let [p, q] = j.degree;
    let n = j.dim;
    let (contra, kind_ok) = match j.kind.as_str() {
        "mv" => (n, q == 0),
        "form" => (n, p == 0),
        "tensor" => (n, true),
        "section" => match j.rank {
            Some(r) => (r, true),
            None => return Err(Error::parse("rank", "sections need a rank")),
        },
        other => return Err(Error::parse("kind", format!("unknown kind {other:?}"))),
    };
    if !kind_ok {
        return Err(Error::parse(
            "degree",
            format!("degree [{p}, {q}] does not fit kind {:?}", j.kind),
        ));
    }
    let mut terms = Vec::with_capacity(j.coeffs.len());
    for (k, c) in j.coeffs.iter().enumerate() {
        let i = blade_from_json(&c.idx, contra, &format!("coeffs[{k}].idx"))?;
        let cj = blade_from_json(&c.cov_idx, n, &format!("coeffs[{k}].cov_idx"))?;
        if c.idx.len() != p || c.cov_idx.len() != q {
            return Err(Error::parse(
                format!("coeffs[{k}]"),
                format!("index lengths do not match degree [{p}, {q}]"),
            ));
        }
        // permuted indices carry the sign of the permutation
        let sign = permutation_sign(&c.idx) * permutation_sign(&c.cov_idx);
        let poly = parse_poly(&c.poly, n, &format!("coeffs[{k}].poly"))?;
        let poly = if sign < 0 { -poly } else { poly };
        terms.push(((i, cj), poly));
    }
    let t = TensorField::from_terms(n, contra, n, (p, q), terms)?;
    Ok(match j.kind.as_str() {
        "mv" => FieldData::MultiVector(t.to_multivector()?),
        "form" => FieldData::Form(t.to_form()?),
        "tensor" => FieldData::Tensor(t),
        _ => FieldData::Section(AlgebroidSection::from_tensor(t, contra, n)?),
    })
}

fn permutation_sign(idx: &[usize]) -> i32 {
    let mut inversions = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn field_to_value(f: &FieldData) -> serde_json::Value {
    field_doc_to_value(f, None)
}

pub fn field_doc_to_value(f: &FieldData, groupoid: Option<&str>) -> serde_json::Value {
    let t = f.tensor();
    let (p, q) = t.bidegree();
    let j = FieldJson {
        groupoid: groupoid.map(String::from),
        kind: f.kind().to_string(),
        dim: t.nvars(),
        rank: matches!(f, FieldData::Section(_)).then(|| t.contra_dim()),
        degree: [p, q],
        coeffs: t
            .terms()
            .map(|((i, j), c)| CoeffJson {
                idx: blade_to_json(i),
                cov_idx: blade_to_json(j),
                poly: format_poly(c),
            })
            .collect(),
    };
    serde_json::to_value(j).expect("field serialises")
}

pub fn field_to_json(f: &FieldData) -> String {
    field_doc_to_json(f, None)
}

pub fn field_doc_to_json(f: &FieldData, groupoid: Option<&str>) -> String {
    let mut s = serde_json::to_string_pretty(&field_doc_to_value(f, groupoid)).expect("field serialises");
    s.push('\n');
    s
}

/// Polynomial matrix as rows of polynomial strings.
pub fn matrix_to_value(m: &PolyMatrix) -> serde_json::Value {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_poly).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groupoid_round_trip() {
        for id in catalog::ids() {
            let gp = catalog::by_id(id).unwrap();
            let text = groupoid_to_json(&gp);
            let back = parse_groupoid(&text).unwrap();
            assert_eq!(groupoid_to_json(&back), text, "{id}");
        }
    }

    #[test]
    fn field_round_trip() {
        for f in catalog::fixtures::all().unwrap().into_iter().take(40) {
            let data = match f.field {
                catalog::fixtures::FixtureField::MultiVector(m) => FieldData::MultiVector(m),
                catalog::fixtures::FixtureField::Form(w) => FieldData::Form(w),
            };
            let text = field_to_json(&data);
            assert_eq!(parse_field(&text).unwrap(), data);
        }
    }

    #[test]
    fn errors_name_the_field() {
        let bad = r#"{"kind":"mv","dim":2,"degree":[1,0],"coeffs":[{"idx":[1],"poly":"x1 +"}]}"#;
        match parse_field(bad) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "coeffs[0].poly"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"kind":"mv","dim":2,"degree":[1,0],"coeffs":[{"idx":[3],"poly":"1"}]}"#;
        assert!(matches!(parse_field(bad), Err(Error::Parse { field, .. }) if field == "coeffs[0].idx"));
        let truncated = r#"{"kind":"mv","dim":2,"degr"#;
        assert!(matches!(parse_field(truncated), Err(Error::Parse { .. })));
    }

    #[test]
    fn swapped_indices_flip_sign() {
        let a = r#"{"kind":"mv","dim":2,"degree":[2,0],"coeffs":[{"idx":[2,1],"poly":"x1"}]}"#;
        let b = r#"{"kind":"mv","dim":2,"degree":[2,0],"coeffs":[{"idx":[1,2],"poly":"-x1"}]}"#;
        assert_eq!(parse_field(a).unwrap(), parse_field(b).unwrap());
    }
}

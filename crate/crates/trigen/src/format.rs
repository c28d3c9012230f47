//! JSON and CSV encodings shared by the subcommands.
//!
//! Every top-level JSON document carries `"schema": "v1"` together with the tool version and
//! the seed of the run. Integers that may exceed 64 bits are written as decimal strings.

use std::io::Write;

use serde_json::{json, Map, Value};
use trigen_core::certificate::Certificate;
use trigen_core::exactpoly::IntPoly;
use trigen_core::gf::{ExtField, FiniteField};
use trigen_core::matsp::{CensusEntry, Mat4};
use trigen_core::rigidity::{TableRow, TripleVerdict};
use trigen_core::traceid::{Mode, TracePoly};

pub const SCHEMA: &str = "v1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Shape(String),
    #[error(transparent)]
    Core(#[from] trigen_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn shape(msg: impl Into<String>) -> FormatError {
    FormatError::Shape(msg.into())
}

/// Wraps `body` (an object) with the schema tag, tool version, seed and document kind.
pub fn envelope(kind: &str, seed: u64, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("kind".into(), json!(kind));
    out.insert("version".into(), json!(crate::VERSION));
    out.insert("seed".into(), json!(seed));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

/// Checks the schema tag of a document produced by [`envelope`].
pub fn check_schema(doc: &Value) -> Result<()> {
    match doc.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => Ok(()),
        Some(other) => Err(shape(format!("unsupported schema {other:?}"))),
        None => Err(shape("missing schema tag")),
    }
}

/// Coefficients as decimal strings, constant term first.
pub fn poly_json(p: &IntPoly) -> Value {
    json!(p.to_strings())
}

pub fn poly_from_json(v: &Value) -> Result<IntPoly> {
    let items = v.as_array().ok_or_else(|| shape("polynomial must be an array"))?;
    let strs = items
        .iter()
        .map(|c| c.as_str().ok_or_else(|| shape("coefficients must be strings")))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::from_strings(&strs)?)
}

fn u64s_json(v: &[u64]) -> Value {
    Value::Array(v.iter().map(|c| json!(c.to_string())).collect())
}

fn u64s_from_json(v: &Value) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| shape("expected an array of coefficients"))?
        .iter()
        .map(|c| {
            c.as_str()
                .and_then(|s| s.parse().ok())
                .or_else(|| c.as_u64())
                .ok_or_else(|| shape(format!("bad coefficient {c}")))
        })
        .collect()
}

/// `{p, m, modulus, rep}`; `modulus` and `rep` list coefficients over `F_p`, lowest first.
pub fn elem_json(f: &ExtField, x: &Vec<u64>) -> Value {
    json!({
        "p": f.prime(),
        "m": f.degree(),
        "modulus": u64s_json(&f.modulus()),
        "rep": u64s_json(&f.to_prime_coeffs(x)),
    })
}

fn field_of(v: &Value) -> Result<ExtField> {
    let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| shape("element without p"))?;
    let modulus = u64s_from_json(v.get("modulus").ok_or_else(|| shape("element without modulus"))?)?;
    let f = ExtField::new(p, modulus)?;
    if let Some(m) = v.get("m").and_then(Value::as_u64) {
        if m != f.degree() as u64 {
            return Err(shape(format!("degree {m} does not match the modulus")));
        }
    }
    Ok(f)
}

pub fn elem_from_json(v: &Value) -> Result<(ExtField, Vec<u64>)> {
    let f = field_of(v)?;
    let rep = u64s_from_json(v.get("rep").ok_or_else(|| shape("element without rep"))?)?;
    if rep.len() > f.degree() as usize {
        return Err(shape("representative longer than the field degree"));
    }
    let x = f.from_prime_coeffs(&rep);
    Ok((f, x))
}

/// Row-major 4x4 nested arrays of element encodings.
pub fn mat_json(m: &Mat4<ExtField>) -> Value {
    let f = m.field();
    Value::Array(
        m.entries()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| elem_json(f, x)).collect()))
            .collect(),
    )
}

pub fn mat_from_json(v: &Value) -> Result<Mat4<ExtField>> {
    let rows = v.as_array().filter(|r| r.len() == 4).ok_or_else(|| shape("matrix must have 4 rows"))?;
    let mut field: Option<ExtField> = None;
    let mut entries: Vec<Vec<Vec<u64>>> = Vec::with_capacity(4);
    for row in rows {
        let cells = row.as_array().filter(|r| r.len() == 4).ok_or_else(|| shape("matrix rows must have 4 entries"))?;
        let mut out = Vec::with_capacity(4);
        for cell in cells {
            let (f, x) = elem_from_json(cell)?;
            match &field {
                Some(g) if *g != f => return Err(FormatError::Core(trigen_core::Error::MixedContexts)),
                Some(_) => {}
                None => field = Some(f),
            }
            out.push(x);
        }
        entries.push(out);
    }
    let f = field.expect("four rows were checked");
    Ok(Mat4::from_fn(f, |i, j| entries[i][j].clone()))
}

/// List of `{monomial, coeff}` with monomials as symbol strings such as `"t(1,2,-1)"`.
pub fn trace_poly_json(p: &TracePoly) -> Value {
    Value::Array(
        p.to_string_terms()
            .into_iter()
            .map(|(m, c)| json!({ "monomial": m, "coeff": c }))
            .collect(),
    )
}

pub fn trace_poly_from_json(v: &Value, mode: Mode) -> Result<TracePoly> {
    let items = v.as_array().ok_or_else(|| shape("trace polynomial must be an array"))?;
    let mut terms: Vec<(Vec<String>, String)> = Vec::with_capacity(items.len());
    for t in items {
        let mono = t
            .get("monomial")
            .and_then(Value::as_array)
            .ok_or_else(|| shape("term without monomial"))?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| shape("symbols must be strings")))
            .collect::<Result<Vec<_>>>()?;
        let coeff = t.get("coeff").and_then(Value::as_str).ok_or_else(|| shape("term without coeff"))?;
        terms.push((mono, coeff.to_string()));
    }
    Ok(TracePoly::from_string_terms(&terms, mode)?)
}

pub fn verdict_json(v: &TripleVerdict) -> Value {
    json!({
        "triple": v.triple.entries(),
        "group": v.group.to_string(),
        "verdict": v.verdict.as_str(),
        "S": v.s,
        "D": v.d,
    })
}

pub fn certificate_json(cert: &Certificate) -> Value {
    let points: Vec<Value> = cert
        .points
        .iter()
        .map(|pt| {
            json!({
                "x": elem_json(&pt.field, &pt.x),
                "y": elem_json(&pt.field, &pt.y),
                "z": elem_json(&pt.field, &pt.z),
                "r": pt.r,
            })
        })
        .collect();
    json!({
        "p": cert.p,
        "c": cert.c,
        "candidate_rs": cert.candidate_rs,
        "max_r": cert.max_r,
        "points": points,
    })
}

pub const CENSUS_HEADER: [&str; 7] = ["q", "a", "b", "c", "found", "witness1", "witness2"];

/// Census lines as CSV; witnesses are the compact JSON matrix encodings.
pub fn write_census_csv<W: Write>(out: W, lines: &[CensusEntry<ExtField>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CENSUS_HEADER)?;
    for l in lines {
        let (w1, w2) = match &l.witness {
            Some((g1, g2)) => (mat_json(g1).to_string(), mat_json(g2).to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([
            l.q.to_string(),
            l.a.to_string(),
            l.b.to_string(),
            l.c.to_string(),
            l.found().to_string(),
            w1,
            w2,
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One parsed census CSV row.
#[derive(Clone, Debug)]
pub struct CensusRow {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub witness: Option<(Mat4<ExtField>, Mat4<ExtField>)>,
}

pub fn read_census_csv<R: std::io::Read>(input: R) -> Result<Vec<CensusRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CENSUS_HEADER {
        return Err(shape(format!("unexpected census header {header:?}")));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| rec[i].parse::<u64>().map_err(|_| shape(format!("bad integer {:?}", &rec[i])));
        let found: bool = rec[4].parse().map_err(|_| shape(format!("bad flag {:?}", &rec[4])))?;
        let witness = if found {
            let g1 = mat_from_json(&serde_json::from_str(&rec[5])?)?;
            let g2 = mat_from_json(&serde_json::from_str(&rec[6])?)?;
            Some((g1, g2))
        } else {
            None
        };
        out.push(CensusRow { q: num(0)?, a: num(1)?, b: num(2)?, c: num(3)?, witness });
    }
    Ok(out)
}

pub const TABLE_HEADER: [&str; 5] = ["table", "group", "name", "prime", "triples"];

pub fn write_table_csv<W: Write>(out: W, rows: &[TableRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for r in rows {
        let triples: Vec<String> = r.triples.iter().map(ToString::to_string).collect();
        w.write_record([
            (r.table as u32).to_string(),
            r.group.to_string(),
            r.name.to_string(),
            r.prime.to_string(),
            triples.join("; "),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn table_json(rows: &[TableRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "table": r.table as u32,
                    "group": r.group.to_string(),
                    "name": r.name,
                    "prime": r.prime.to_string(),
                    "triples": r.triples.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use trigen_core::gf::make_ext;
    use trigen_core::matsp::random_invertible;
    use trigen_core::rigidity::{table_rows, TableId};
    use trigen_core::traceid::{reduce_trace, TraceWord};

    #[test]
    fn polynomial_encoding() {
        let p = IntPoly::from_i64s(&[0, -16, 0, 1]);
        assert_eq!(poly_json(&p), json!(["0", "-16", "0", "1"]));
        assert_eq!(poly_from_json(&poly_json(&p)).unwrap(), p);
        assert!(poly_from_json(&json!([0, 1])).is_err());
    }

    #[test]
    fn element_and_matrix_round_trip() {
        let mut rng = trigen_core::rng_from_seed(4);
        for (p, m) in [(7, 1), (5, 2), (2, 3)] {
            let f = make_ext(p, m, 0).unwrap();
            let g = random_invertible(&f, &mut rng);
            let back = mat_from_json(&mat_json(&g)).unwrap();
            assert_eq!(back.entries(), g.entries());
            assert_eq!(back.field(), g.field());
        }
        let f = make_ext(3, 2, 0).unwrap();
        let e = elem_json(&f, &vec![2, 1]);
        assert_eq!(e["rep"], json!(["2", "1"]));
        assert_eq!(e["m"], json!(2));
        // T^2 + 1 is reducible mod 5 since -1 = 2^2; T^2 + 2 is irreducible mod 7 since -2 = 5 is a non-square
        let mut bad = e.clone();
        bad["p"] = json!(5);
        bad["modulus"] = json!(["1", "0", "1"]);
        assert!(elem_from_json(&bad).is_err());
        let mut good = e.clone();
        good["p"] = json!(7);
        good["modulus"] = json!(["2", "0", "1"]);
        let (f49, x) = elem_from_json(&good).unwrap();
        assert_eq!((f49.prime(), f49.degree()), (7, 2));
        assert_eq!(x, vec![2, 1]);
    }

    #[test]
    fn trace_poly_round_trip() {
        let w = TraceWord::new(&[1, 2, 1, 2, -1, 2], Mode::General).unwrap();
        let p = reduce_trace(&w).unwrap();
        let v = trace_poly_json(&p);
        assert!(v[0]["monomial"].is_array() && v[0]["coeff"].is_string());
        assert_eq!(trace_poly_from_json(&v, Mode::General).unwrap(), p);
    }

    #[test]
    fn census_csv_round_trip() {
        let f = make_ext(5, 1, 0).unwrap();
        let mut rng = trigen_core::rng_from_seed(1);
        let (g1, g2) = (random_invertible(&f, &mut rng), random_invertible(&f, &mut rng));
        let lines = vec![
            CensusEntry { q: 5, a: 3, b: 3, c: 5, witness: None },
            CensusEntry { q: 5, a: 3, b: 3, c: 10, witness: Some((g1.clone(), g2.clone())) },
        ];
        let mut buf = Vec::new();
        write_census_csv(&mut buf, &lines).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("q,a,b,c,found,witness1,witness2\n5,3,3,5,false,,\n"));
        let rows = read_census_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].witness.is_none());
        let (h1, h2) = rows[1].witness.as_ref().unwrap();
        assert_eq!((h1.entries(), h2.entries()), (g1.entries(), g2.entries()));
    }

    #[test]
    fn tables_and_envelope() {
        let rows = table_rows(TableId::RigidAdjoint);
        let mut buf = Vec::new();
        write_table_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), rows.len() + 1);
        let doc = envelope("tables", 9, json!({ "rows": table_json(&rows) }));
        check_schema(&doc).unwrap();
        assert_eq!(doc["seed"], json!(9));
        assert!(check_schema(&json!({ "schema": "v2" })).is_err());
    }
}

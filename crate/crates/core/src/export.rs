//! Stable serializations of rays, bases, the orthogonality graph, and
//! reduced systems.
//!
//! Golden-field coordinates appear in two interchangeable forms: a JSON
//! quadruple `[a_num, a_den, b_num, b_den]` for the value `a + b·τ`, and the
//! exact display string such as `"(1+1τ)/2"` (which round-trips through
//! [`GoldenNumber`]'s `FromStr`).

use num::bigint::BigInt;
use serde_json::{json, Value};

use crate::error::Result;
use crate::golden::GoldenNumber;
use crate::incidence::{RayBasisSystem, SystemSignature};
use crate::polytope::Polytope;

fn int_value(i: &BigInt) -> Value {
    // ray coordinates have tiny numerators/denominators; fall back to a
    // string only if an integer ever overflows i64
    match i64::try_from(i) {
        Ok(v) => json!(v),
        Err(_) => json!(i.to_string()),
    }
}

/// `[a_num, a_den, b_num, b_den]` for the value `a + b·τ`.
pub fn golden_json(g: &GoldenNumber) -> Value {
    let a = g.rational_part();
    let b = g.golden_part();
    json!([int_value(a.numer()), int_value(a.denom()), int_value(b.numer()), int_value(b.denom())])
}

/// JSON array of the 300 rays with exact coordinates and cell labels.
pub fn rays_json(polytope: &Polytope) -> Value {
    let rays: Vec<Value> = polytope
        .rays()
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "coords": r.vector.components().iter().map(golden_json).collect::<Vec<_>>(),
                "cell": {
                    "col": r.unprimed_cell.as_char().to_string(),
                    "row": format!("{}'", r.primed_cell.as_char()),
                },
            })
        })
        .collect();
    Value::Array(rays)
}

/// CSV of the 300 rays with exact rational strings such as "(1+1τ)/2".
pub fn rays_csv(polytope: &Polytope) -> String {
    let mut out = String::from("index,x1,x2,x3,x4,col,row\n");
    for r in polytope.rays() {
        let c = r.vector.components();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}'\n",
            r.index,
            c[0],
            c[1],
            c[2],
            c[3],
            r.unprimed_cell.as_char(),
            r.primed_cell.as_char()
        ));
    }
    out
}

/// CSV of bases: "id,r1,r2,r3,r4,tag".
pub fn bases_csv(system: &RayBasisSystem) -> String {
    let mut out = String::from("id,r1,r2,r3,r4,tag\n");
    for b in system.bases() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            b.id, b.rays[0], b.rays[1], b.rays[2], b.rays[3], b.tag
        ));
    }
    out
}

/// JSON equivalent of [`bases_csv`].
pub fn bases_json(system: &RayBasisSystem) -> Value {
    let bases: Vec<Value> = system
        .bases()
        .iter()
        .map(|b| json!({ "id": b.id, "rays": b.rays, "tag": b.tag.to_string() }))
        .collect();
    Value::Array(bases)
}

/// Adjacency list of the orthogonality graph: one "i: j k l …" line per ray.
pub fn graph_adjacency(polytope: &Polytope) -> String {
    let mut out = String::new();
    for r in polytope.rays() {
        let companions: Vec<String> =
            polytope.orthogonal_companions(r.index).into_iter().map(|j| j.to_string()).collect();
        out.push_str(&format!("{}: {}\n", r.index, companions.join(" ")));
    }
    out
}

/// DOT rendering of the orthogonality graph (each edge once).
pub fn graph_dot(polytope: &Polytope) -> String {
    let mut out = String::from("graph orthogonality {\n");
    for r in polytope.rays() {
        for j in polytope.orthogonal_companions(r.index) {
            if r.index < j {
                out.push_str(&format!("  {} -- {};\n", r.index, j));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// JSON form of a (possibly reduced) system: its rays and basis quadruples.
pub fn system_json(system: &RayBasisSystem) -> Value {
    json!({
        "rays": system.rays(),
        "bases": system.bases().iter().map(|b| b.rays).collect::<Vec<_>>(),
    })
}

/// Signature of a system file previously written by [`system_json`].
pub fn signature_of_system_json(text: &str) -> Result<SystemSignature> {
    #[derive(serde::Deserialize)]
    struct SystemFile {
        #[serde(default)]
        #[allow(dead_code)]
        rays: Vec<u32>,
        bases: Vec<[u32; 4]>,
    }
    let file: SystemFile = serde_json::from_str(text)?;
    Ok(signature_of_quads(&file.bases))
}

/// Multiplicity signature computed directly from basis quadruples.
pub fn signature_of_quads(bases: &[[u32; 4]]) -> SystemSignature {
    let mut mult: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
    for quad in bases {
        for &r in quad {
            *mult.entry(r).or_insert(0) += 1;
        }
    }
    let mut hist: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
    for &m in mult.values() {
        *hist.entry(m).or_insert(0) += 1;
    }
    SystemSignature {
        ray_part: hist.into_iter().map(|(m, c)| (c, m)).collect(),
        basis_count: bases.len() as u32,
    }
}

//! `cad.json` encoding.

use serde_json::{json, Value};

use super::CadTree;
use crate::arith::{parse_poly, rational_to_string, MultiPoly, RealAlgebraic};
use crate::error::{Error, Result};

fn number(a: &RealAlgebraic) -> Value {
    json!({
        "poly": a.defining().to_string(),
        "lo": rational_to_string(a.lo()),
        "hi": rational_to_string(a.hi()),
    })
}

pub fn cad_to_json(cad: &CadTree) -> Value {
    let cells: Vec<Value> = cad
        .top_cells()
        .iter()
        .map(|c| {
            json!({
                "id": c.id(),
                "index": c.index,
                "kind": c.kinds().iter().map(|k| k.as_str()).collect::<Vec<_>>(),
                "dim": c.dim(),
                "sample": c.sample.coords.iter().map(number).collect::<Vec<_>>(),
                "signs": c.signs,
                "bounded": c.bounded,
            })
        })
        .collect();
    let mut sub = Vec::new();
    let mut partial = Vec::new();
    if let Ok(adj) = cad.top_adjacency() {
        for p in adj {
            sub.push(json!([p.lower, p.upper]));
            if !p.full {
                partial.push(json!([p.lower, p.upper]));
            }
        }
    }
    let projection: Vec<Vec<String>> = (1..=cad.nvars)
        .rev()
        .map(|k| cad.projection.level(k).iter().map(|p| p.to_string()).collect())
        .collect();
    json!({
        "nvars": cad.nvars,
        "F": cad.f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "projection": projection,
        "cells": cells,
        "subadjacency": sub,
        "partial": partial,
        "nullified": cad.nullified().into_iter().map(|(b, i)| json!([b, i])).collect::<Vec<_>>(),
    })
}

/// Input polynomials and ambient dimension recorded in a `cad.json`
/// document; audits rebuild the tree from these.
pub fn cad_from_json(v: &Value) -> Result<(Vec<MultiPoly>, usize)> {
    let n = v
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Schema("cad.json needs an integer \"nvars\"".into()))? as usize;
    let fs = v
        .get("F")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("cad.json needs an array \"F\"".into()))?;
    let mut out = Vec::new();
    for f in fs {
        let s = f
            .as_str()
            .ok_or_else(|| Error::Schema("polynomials must be strings".into()))?;
        out.push(parse_poly(s, Some(n))?);
    }
    Ok((out, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cadbuild::build_cad;

    #[test]
    fn roundtrip_inputs() {
        let f = vec![parse_poly("x1^2 + x2^2 - 1", Some(2)).unwrap()];
        let cad = build_cad(&f, 2).unwrap();
        let v = cad_to_json(&cad);
        assert_eq!(v["cells"].as_array().unwrap().len(), 13);
        assert_eq!(v["projection"][1][0], "x1^2 - 1");
        let (g, n) = cad_from_json(&v).unwrap();
        assert_eq!((g, n), (f, 2));
        assert_eq!(v["cells"][0]["sample"][0]["lo"], "-2");
    }
}

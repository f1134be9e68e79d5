//! Order complexes of subadjacency posets, their integer homology and
//! geometric realization, and the audits built on them.

mod audit;
mod homology;
mod lp;
mod realize;

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::arith::{parse_rational, rational_to_string, Rational};
use crate::decomp::DecompGraph;
use crate::error::{Error, Result};

pub use audit::{check_poset_iso, regularity_audit, AuditReport, CellAudit, PosetIso, Verdict};
pub use homology::{homology, HomologyResult};
pub use lp::{lp_maximize, LpOutcome};
pub use realize::{realize, Realization};

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub dim: usize,
}

/// Simplicial complex of chains. Each simplex lists vertex indices in
/// increasing order; the list is closed under taking faces.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderComplex {
    pub vertices: Vec<Vertex>,
    pub simplices: Vec<Vec<usize>>,
    pub coords: Option<Vec<Vec<Rational>>>,
}

impl OrderComplex {
    pub fn empty() -> Self {
        OrderComplex {
            vertices: Vec::new(),
            simplices: Vec::new(),
            coords: None,
        }
    }

    /// Number of simplices of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in &self.simplices {
            let d = s.len() - 1;
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Simplices of dimension `d`, in the stored order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == d + 1).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "vertices": self.vertices.iter().map(|x| json!({"id": x.id, "dim": x.dim})).collect::<Vec<_>>(),
            "simplices": self.simplices,
        });
        if let Some(c) = &self.coords {
            let c: Vec<Vec<String>> = c.iter().map(|p| p.iter().map(rational_to_string).collect()).collect();
            v["coords"] = json!(c);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<OrderComplex> {
        let schema = |m: &str| Error::Schema(m.to_string());
        let mut vertices = Vec::new();
        for x in v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("complex needs a \"vertices\" list"))?
        {
            let id = x
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| schema("vertex needs a string id"))?;
            let dim = x
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| schema("vertex needs an integer dim"))?;
            vertices.push(Vertex {
                id: id.to_string(),
                dim: dim as usize,
            });
        }
        let mut simplices = Vec::new();
        for s in v
            .get("simplices")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("complex needs a \"simplices\" list"))?
        {
            let mut idx = Vec::new();
            for i in s.as_array().ok_or_else(|| schema("simplex must be a list"))? {
                let i = i.as_u64().ok_or_else(|| schema("simplex entries are vertex indices"))? as usize;
                if i >= vertices.len() {
                    return Err(schema(&format!("vertex index {i} out of range")));
                }
                idx.push(i);
            }
            idx.sort_unstable();
            idx.dedup();
            if idx.is_empty() {
                return Err(schema("empty simplex"));
            }
            simplices.push(idx);
        }
        let have: BTreeSet<&Vec<usize>> = simplices.iter().collect();
        for s in &simplices {
            if s.len() > 1 {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                    if !have.contains(&face) {
                        return Err(schema(&format!("face {face:?} of {s:?} missing")));
                    }
                }
            }
        }
        let coords = match v.get("coords") {
            None | Some(Value::Null) => None,
            Some(c) => {
                let rows = c.as_array().ok_or_else(|| schema("coords must be a list"))?;
                if rows.len() != vertices.len() {
                    return Err(schema("one coordinate row per vertex"));
                }
                let mut out = Vec::new();
                for r in rows {
                    let r = r.as_array().ok_or_else(|| schema("coordinate row must be a list"))?;
                    out.push(
                        r.iter()
                            .map(|x| parse_rational(x.as_str().ok_or_else(|| schema("coordinates are strings"))?))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                Some(out)
            }
        };
        let mut cx = OrderComplex {
            vertices,
            simplices,
            coords,
        };
        cx.canonicalize();
        Ok(cx)
    }

    fn canonicalize(&mut self) {
        self.simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.simplices.dedup();
    }
}

/// Verify that subadjacency restricted to `subset` is a partial order.
pub fn check_partial_order(graph: &DecompGraph, subset: &[usize]) -> Result<()> {
    for &a in subset {
        for &b in subset {
            if a != b && graph.leq(a, b) && graph.leq(b, a) {
                return Err(Error::NotPoset(format!(
                    "{} and {} are subadjacent to each other",
                    graph.cell(a).id,
                    graph.cell(b).id
                )));
            }
        }
    }
    for &a in subset {
        for &b in subset {
            if a == b || !graph.leq(a, b) {
                continue;
            }
            for &c in subset {
                if c != b && c != a && graph.leq(b, c) && !graph.leq(a, c) {
                    return Err(Error::NotPoset(format!(
                        "{} ⪯ {} ⪯ {} but not {} ⪯ {}",
                        graph.cell(a).id,
                        graph.cell(b).id,
                        graph.cell(c).id,
                        graph.cell(a).id,
                        graph.cell(c).id
                    )));
                }
            }
        }
    }
    Ok(())
}

/// All chains of `(subset, ⪯)`. Vertices are listed in a linear extension
/// of the order (by downset size, then input order).
pub fn order_complex(graph: &DecompGraph, subset: &[usize]) -> Result<OrderComplex> {
    let mut uniq = Vec::new();
    for &c in subset {
        if c >= graph.len() {
            return Err(Error::UnknownCell(format!("#{c}")));
        }
        if !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    check_partial_order(graph, &uniq)?;
    let below = |c: usize| uniq.iter().filter(|&&d| graph.leq(d, c)).count();
    let mut order: Vec<usize> = (0..uniq.len()).collect();
    order.sort_by_key(|&i| (below(uniq[i]), i));
    let cells: Vec<usize> = order.iter().map(|&i| uniq[i]).collect();
    let vertices = cells
        .iter()
        .map(|&c| Vertex {
            id: graph.cell(c).id.clone(),
            dim: graph.cell(c).dim,
        })
        .collect();
    let mut simplices = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..cells.len()).map(|i| vec![i]).collect();
    while let Some(ch) = stack.pop() {
        let last = *ch.last().unwrap();
        for j in last + 1..cells.len() {
            if graph.leq(cells[last], cells[j]) {
                let mut next = ch.clone();
                next.push(j);
                stack.push(next);
            }
        }
        simplices.push(ch);
    }
    let coords = cells
        .iter()
        .map(|&c| graph.cell(c).sample.clone())
        .collect::<Option<Vec<_>>>();
    let mut cx = OrderComplex {
        vertices,
        simplices,
        coords,
    };
    cx.canonicalize();
    Ok(cx)
}

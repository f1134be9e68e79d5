//! Local boundary connectivity over a whole decomposition, and strongness
//! (well-bordered and locally boundary connected).

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::combinatorial::check_well_bordered;
use super::lbc::{check_lbc, CadShape, CellShape, FormulaShape, LbcConfig, LbcResult};
use super::{PropertyReport, Status};
use crate::arith::{parse_poly, to_f64};
use crate::cadbuild::{index_id, CadTree, CellIndex, Formula};
use crate::decomp::{DecompGraph, Geometry};
use crate::error::{Error, Result};

/// Where cell shapes and probe points come from.
#[derive(Clone, Copy)]
pub enum StrongSource<'a> {
    /// Geometry and samples stored on the graph cells.
    Graph,
    /// The decomposition the graph was built from; probes sit at the
    /// subadjacency target points.
    Cad(&'a CadTree),
}

pub fn shape_of_geometry(geo: &Geometry, n: usize, dim: usize) -> Result<FormulaShape> {
    let polys = geo
        .polys
        .iter()
        .map(|p| parse_poly(p, Some(n)))
        .collect::<Result<Vec<_>>>()?;
    FormulaShape::new(Formula::parse(&geo.formula)?, &polys, n, dim)
}

struct Probe {
    at: String,
    point: Vec<f64>,
}

enum Plan {
    Skip(String),
    Vacuous,
    Missing(String),
    Run(Vec<Probe>),
}

fn plan(graph: &DecompGraph, c: usize, source: StrongSource, targets: &HashMap<(String, String), Vec<f64>>) -> Plan {
    let cell = graph.cell(c);
    if !cell.bounded {
        return Plan::Skip(format!("LBC not probed on unbounded cell {}", cell.id));
    }
    if cell.dim == 0 || graph.downset(c, true).is_empty() {
        return Plan::Vacuous;
    }
    let mut probes = Vec::new();
    for d in graph.downset(c, true) {
        let lower = graph.cell(d);
        let point = match source {
            StrongSource::Graph => match &lower.sample {
                Some(s) => s.iter().map(to_f64).collect(),
                None => return Plan::Missing(format!("no sample for {}", lower.id)),
            },
            StrongSource::Cad(_) => match targets.get(&(lower.id.clone(), cell.id.clone())) {
                Some(p) => p.clone(),
                None => return Plan::Missing(format!("no boundary point for ({}, {})", lower.id, cell.id)),
            },
        };
        probes.push(Probe {
            at: lower.id.clone(),
            point,
        });
    }
    if let StrongSource::Graph = source {
        if cell.geometry.is_none() {
            return Plan::Missing(format!("no geometry for {}", cell.id));
        }
    }
    Plan::Run(probes)
}

fn shape_for<'a>(
    graph: &DecompGraph,
    c: usize,
    source: StrongSource<'a>,
    n: usize,
    index: &HashMap<String, CellIndex>,
) -> Result<Box<dyn CellShape + 'a>> {
    let cell = graph.cell(c);
    match source {
        StrongSource::Graph => Ok(Box::new(shape_of_geometry(
            cell.geometry.as_ref().expect("planned"),
            n,
            cell.dim,
        )?)),
        StrongSource::Cad(cad) => {
            let idx = index.get(&cell.id).ok_or_else(|| Error::UnknownCell(cell.id.clone()))?;
            Ok(Box::new(CadShape::new(cad, idx)?))
        }
    }
}

fn probe_json(at: &str, r: &LbcResult) -> Value {
    json!({
        "at": at,
        "counts": r.counts,
        "stable_count": r.stable_count,
        "radii": r.radii,
    })
}

/// Per-cell LBC verdicts: each bounded cell is probed at a point of every
/// cell in its strict downset. Heuristic.
pub fn check_lbc_report(graph: &DecompGraph, source: StrongSource, cfg: &LbcConfig) -> Result<PropertyReport> {
    cfg.validate()?;
    let mut targets: HashMap<(String, String), Vec<f64>> = HashMap::new();
    let mut index: HashMap<String, CellIndex> = HashMap::new();
    let n = match source {
        StrongSource::Cad(cad) => {
            for p in cad.adjacency.as_ref().ok_or_else(|| Error::MissingData("subadjacency not computed".into()))? {
                targets.insert((index_id(&p.lower), index_id(&p.upper)), p.target.to_f64());
            }
            for idx in cad.cells.keys() {
                index.insert(index_id(idx), idx.clone());
            }
            cad.nvars
        }
        StrongSource::Graph => graph
            .cells()
            .iter()
            .find_map(|c| c.sample.as_ref().map(Vec::len))
            .unwrap_or(0),
    };
    let plans: Vec<Plan> = (0..graph.len()).map(|c| plan(graph, c, source, &targets)).collect();
    let results: Vec<Result<(Status, Option<Value>)>> = plans
        .par_iter()
        .enumerate()
        .map(|(c, p)| {
            let Plan::Run(probes) = p else {
                return Ok((Status::True, None));
            };
            let shape = shape_for(graph, c, source, n, &index)?;
            let mut status = Status::True;
            let mut failures = Vec::new();
            for pr in probes {
                let tag = format!("{}@{}", graph.cell(c).id, pr.at);
                let r = check_lbc(shape.as_ref(), &pr.point, cfg, &tag)?;
                status = status.and(r.holds);
                if r.holds != Status::True {
                    failures.push(probe_json(&pr.at, &r));
                }
            }
            Ok((status, (!failures.is_empty()).then(|| json!({ "lbc_failures": failures }))))
        })
        .collect();
    let mut rep = PropertyReport::new("lbc", true);
    rep.notes.push("heuristic: LBC probed at finitely many points".into());
    for (c, (p, r)) in plans.iter().zip(results).enumerate() {
        let id = &graph.cell(c).id;
        match p {
            Plan::Skip(note) => rep.notes.push(note.clone()),
            Plan::Missing(note) => {
                rep.notes.push(note.clone());
                rep.record(id, Status::Unknown, None);
            }
            Plan::Vacuous | Plan::Run(_) => {
                let (s, w) = r?;
                rep.record(id, s, w);
            }
        }
    }
    Ok(rep)
}

/// Well-bordered and locally boundary connected, per cell.
pub fn check_strong(graph: &DecompGraph, source: StrongSource, cfg: &LbcConfig) -> Result<PropertyReport> {
    let wb = check_well_bordered(graph);
    let lbc = check_lbc_report(graph, source, cfg)?;
    let mut rep = PropertyReport::new("strong", true);
    rep.notes.extend(wb.notes.iter().cloned());
    rep.notes.extend(lbc.notes.iter().cloned());
    for cell in graph.cells() {
        let w = &wb.cells[&cell.id];
        let (ls, lw) = match lbc.cells.get(&cell.id) {
            Some(v) => (v.holds, v.witness.clone()),
            None => (Status::True, None),
        };
        let holds = w.holds.and(ls);
        let witness = (holds != Status::True).then(|| {
            json!({
                "well_bordered": w.witness.clone().unwrap_or(Value::Null),
                "lbc": lw.unwrap_or(Value::Null),
            })
        });
        rep.record(&cell.id, holds, witness);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cadbuild::{build_cad, compute_subadjacency, TrackConfig};
    use crate::decomp::load_fixture;

    #[test]
    fn whitney_is_not_strong() {
        let g = load_fixture("whitney").unwrap();
        let r = check_strong(&g, StrongSource::Graph, &LbcConfig::default()).unwrap();
        assert_eq!(r.overall, Status::False);
        assert_eq!(r.holds("W"), Some(Status::False));
        let fails = &r.witness("W").unwrap()["lbc"]["lbc_failures"];
        let z = fails.as_array().unwrap().iter().find(|f| f["at"] == "Z").unwrap();
        assert_eq!(z["stable_count"], json!(2));
        assert_eq!(r.holds("Z"), Some(Status::True));
    }

    #[test]
    fn circle_cad_is_strong() {
        let f = vec![parse_poly("x1^2 + x2^2 - 1", Some(2)).unwrap()];
        let mut cad = build_cad(&f, 2).unwrap();
        compute_subadjacency(&mut cad, &TrackConfig::default()).unwrap();
        let all: Vec<CellIndex> = cad.top_cells().iter().map(|c| c.index.clone()).collect();
        let g = DecompGraph::from_cad(&cad, Some(&all)).unwrap();
        assert_eq!(g.len(), 13);
        let r = check_strong(&g, StrongSource::Cad(&cad), &LbcConfig::default()).unwrap();
        assert_eq!(r.overall, Status::True, "{:?}", r.to_json());
        assert!(r.notes.iter().any(|n| n.contains("unbounded")));
    }

    #[test]
    fn cfsubadj_is_not_strong() {
        let g = load_fixture("cfsubadj").unwrap();
        let r = check_strong(&g, StrongSource::Graph, &LbcConfig::default()).unwrap();
        assert_eq!(r.overall, Status::False);
    }
}

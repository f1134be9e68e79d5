//! Poset isomorphism and homological necessary conditions for regularity.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::homology::{homology, HomologyResult};
use super::order_complex;
use crate::decomp::DecompGraph;
use crate::error::{Error, Result};
use crate::props::{check_lbc_report, LbcConfig, Status, StrongSource};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetIso {
    pub holds: bool,
    pub witness: Option<(String, String)>,
}

fn require_closure_finite(graph: &DecompGraph, cells: impl IntoIterator<Item = usize>) -> Result<()> {
    for c in cells {
        if graph.is_closure_finite(c) != Some(true) {
            return Err(Error::Precondition(format!("{} is not known to be closure finite", graph.cell(c).id)));
        }
    }
    Ok(())
}

/// `C ⪯ D` exactly when the downset of `C` is contained in that of `D`.
pub fn check_poset_iso(graph: &DecompGraph) -> Result<PosetIso> {
    require_closure_finite(graph, 0..graph.len())?;
    for c in 0..graph.len() {
        let dc = graph.downset(c, false);
        for d in 0..graph.len() {
            let dd = graph.downset(d, false);
            if graph.leq(c, d) != dc.is_subset(&dd) {
                return Ok(PosetIso {
                    holds: false,
                    witness: Some((graph.cell(c).id.clone(), graph.cell(d).id.clone())),
                });
            }
        }
    }
    Ok(PosetIso {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    ConsistentWithRegular,
    RefutedByLbc,
    CounterexampleWitness,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConsistentWithRegular => "consistent-with-regular",
            Verdict::RefutedByLbc => "homology proxies passed; regularity refuted by LBC",
            Verdict::CounterexampleWitness => "counterexample-witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellAudit {
    pub dim: usize,
    /// Reduced homology of the closed downset complex.
    pub closure: HomologyResult,
    /// Homology of the strict downset complex.
    pub boundary: HomologyResult,
    pub acyclic: bool,
    pub boundary_sphere: bool,
    pub lbc: Option<Status>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub cells: BTreeMap<String, CellAudit>,
    pub notes: Vec<String>,
}

impl AuditReport {
    /// The worst verdict over all cells.
    pub fn overall(&self) -> Verdict {
        self.cells
            .values()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::ConsistentWithRegular)
    }

    pub fn to_json(&self) -> Value {
        let cells: serde_json::Map<String, Value> = self
            .cells
            .iter()
            .map(|(id, c)| {
                (
                    id.clone(),
                    json!({
                        "dim": c.dim,
                        "closure_reduced": c.closure.to_json(),
                        "boundary": c.boundary.to_json(),
                        "acyclic": c.acyclic,
                        "boundary_sphere": c.boundary_sphere,
                        "lbc": c.lbc.map(Status::to_json),
                        "verdict": c.verdict.as_str(),
                    }),
                )
            })
            .collect();
        json!({ "cells": cells, "overall": self.overall().as_str(), "notes": self.notes })
    }
}

/// Betti numbers of the `(d-1)`-sphere with trailing zeros dropped; the
/// empty list stands for the empty space `S^-1`.
pub fn sphere_betti(d: usize) -> Vec<usize> {
    match d {
        0 => Vec::new(),
        1 => vec![2],
        _ => {
            let mut b = vec![0; d];
            b[0] = 1;
            b[d - 1] = 1;
            b
        }
    }
}

/// For each cell `C` of `subset` (dimension `d`): the complex of its closed
/// downset must be acyclic and that of its strict downset must have the
/// homology of `S^{d-1}`. With `lbc`, cells are also probed for local
/// boundary connectivity.
pub fn regularity_audit(
    graph: &DecompGraph,
    subset: &[usize],
    lbc: Option<(StrongSource, &LbcConfig)>,
) -> Result<AuditReport> {
    for &c in subset {
        if !graph.cell(c).bounded {
            return Err(Error::Precondition(format!("{} is unbounded", graph.cell(c).id)));
        }
    }
    require_closure_finite(graph, subset.iter().copied())?;
    let mut notes = vec!["homology proxies are necessary conditions for regularity, not sufficient".to_string()];
    let lbc_rep = match lbc {
        Some((source, cfg)) => {
            let r = check_lbc_report(graph, source, cfg)?;
            notes.extend(r.notes.iter().cloned());
            Some(r)
        }
        None => None,
    };
    let mut cells = BTreeMap::new();
    for &c in subset {
        let cell = graph.cell(c);
        let closed: Vec<usize> = graph.downset(c, false).into_iter().collect();
        let strict: Vec<usize> = graph.downset(c, true).into_iter().collect();
        let closure = homology(&order_complex(graph, &closed)?, None, true);
        let boundary = homology(&order_complex(graph, &strict)?, None, false);
        let acyclic = closure.betti.iter().all(|&b| b == 0) && closure.torsion_free();
        let boundary_sphere = boundary.trimmed_betti() == sphere_betti(cell.dim) && boundary.torsion_free();
        let lbc_status = lbc_rep.as_ref().and_then(|r| r.holds(&cell.id));
        let verdict = if !acyclic || !boundary_sphere {
            Verdict::CounterexampleWitness
        } else if lbc_status == Some(Status::False) {
            Verdict::RefutedByLbc
        } else {
            Verdict::ConsistentWithRegular
        };
        cells.insert(
            cell.id.clone(),
            CellAudit {
                dim: cell.dim,
                closure,
                boundary,
                acyclic,
                boundary_sphere,
                lbc: lbc_status,
                verdict,
            },
        );
    }
    Ok(AuditReport { cells, notes })
}

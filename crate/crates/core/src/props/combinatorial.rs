//! Closure finiteness, well-borderedness and the consistency lemmas relating
//! them, all read off the subadjacency relation and closure lists.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{PropertyReport, Status};
use crate::decomp::{Atom, DecompGraph};

fn no_closure_note(graph: &DecompGraph, c: usize) -> String {
    format!("no closure data for {}", graph.cell(c).id)
}

/// A cell is closure finite when every cell subadjacent to it lies wholly in
/// its closure. Witness: a subadjacent cell only partly in the closure.
pub fn check_closure_finite(graph: &DecompGraph) -> PropertyReport {
    let mut rep = PropertyReport::new("closurefinite", false);
    for c in 0..graph.len() {
        let id = &graph.cell(c).id;
        match graph.is_closure_finite(c) {
            None => {
                rep.notes.push(no_closure_note(graph, c));
                rep.record(id, Status::Unknown, None);
            }
            Some(true) => rep.record(id, Status::True, None),
            Some(false) => {
                let partial: Vec<&str> = graph
                    .lower_of(c)
                    .iter()
                    .filter(|&&d| graph.within_closure(d, c) == Some(false))
                    .map(|&d| graph.cell(d).id.as_str())
                    .collect();
                rep.record(id, Status::False, Some(json!({ "partly_in_closure": partial })));
            }
        }
    }
    rep
}

/// Per-cell well-borderedness: `∂C` is the union of the closures of the
/// codimension-1 cells lying in it.
fn well_bordered_at(graph: &DecompGraph, c: usize) -> (Status, Option<Value>) {
    let Some(cl) = graph.closure_atoms(c) else {
        return (Status::Unknown, None);
    };
    let own: BTreeSet<Atom> = graph.atoms_of(c).into_iter().collect();
    let boundary: BTreeSet<Atom> = cl.difference(&own).copied().collect();
    if boundary.is_empty() {
        return (Status::True, None);
    }
    let dim = graph.cell(c).dim;
    let faces: Vec<usize> = graph
        .lower_of(c)
        .iter()
        .copied()
        .filter(|&k| graph.cell(k).dim + 1 == dim && graph.atoms_of(k).iter().all(|a| boundary.contains(a)))
        .collect();
    if faces.is_empty() {
        return (Status::False, Some(json!("no codimension-1 cell in the boundary")));
    }
    let mut covered: BTreeSet<Atom> = BTreeSet::new();
    for &k in &faces {
        match graph.closure_atoms(k) {
            Some(ck) => covered.extend(ck.iter().copied()),
            None => return (Status::Unknown, None),
        }
    }
    let missing: Vec<&str> = boundary.difference(&covered).map(|a| graph.atom_name(*a)).collect();
    if missing.is_empty() {
        (Status::True, None)
    } else {
        (Status::False, Some(json!({ "uncovered": missing })))
    }
}

pub fn check_well_bordered(graph: &DecompGraph) -> PropertyReport {
    let mut rep = PropertyReport::new("wellbordered", false);
    for c in 0..graph.len() {
        let (holds, witness) = well_bordered_at(graph, c);
        if holds == Status::Unknown {
            rep.notes.push(no_closure_note(graph, c));
        }
        rep.record(&graph.cell(c).id, holds, witness);
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: &'static str,
    pub cells: Vec<String>,
}

/// Checks the consequences relating the two properties:
/// * a cell that is well-bordered, with every cell subadjacent to it also
///   well-bordered, is closure finite;
/// * two distinct closure-finite cells are never subadjacent to each other;
/// * every cell in the closure of `C` other than `C` has smaller dimension;
/// * a well-bordered decomposition is closure finite.
///
/// Cells where exactly one of the two properties holds are returned as
/// notes; either direction of the converse is open, so they are not
/// violations.
pub fn lemma_violations(graph: &DecompGraph) -> (Vec<LemmaViolation>, Vec<String>) {
    let cf = check_closure_finite(graph);
    let wb = check_well_bordered(graph);
    let id = |i: usize| graph.cell(i).id.clone();
    let cf_of = |i: usize| cf.holds(&graph.cell(i).id).unwrap_or(Status::Unknown);
    let wb_of = |i: usize| wb.holds(&graph.cell(i).id).unwrap_or(Status::Unknown);
    let mut out = Vec::new();
    let mut notes = Vec::new();
    for c in 0..graph.len() {
        let all_wb = wb_of(c) == Status::True && graph.lower_of(c).iter().all(|&d| wb_of(d) == Status::True);
        if all_wb && cf_of(c) == Status::False {
            out.push(LemmaViolation {
                lemma: "well-bordered downset implies closure finite",
                cells: vec![id(c)],
            });
        }
        for &d in graph.lower_of(c) {
            if d < c && graph.lower_of(d).contains(&c) && cf_of(c) == Status::True && cf_of(d) == Status::True {
                out.push(LemmaViolation {
                    lemma: "closure-finite cells are not mutually subadjacent",
                    cells: vec![id(d), id(c)],
                });
            }
        }
        let dim = graph.cell(c).dim;
        let own: BTreeSet<Atom> = graph.atoms_of(c).into_iter().collect();
        let drops = match graph.closure_atoms(c) {
            Some(cl) => cl
                .iter()
                .filter(|a| !own.contains(a))
                .all(|a| graph.atom_dim(*a) < dim),
            None => graph.lower_of(c).iter().all(|&d| graph.cell(d).dim < dim),
        };
        if !drops {
            out.push(LemmaViolation {
                lemma: "dimension drops along the closure",
                cells: vec![id(c)],
            });
        }
        match (cf_of(c), wb_of(c)) {
            (Status::True, Status::False) => notes.push(format!("{} is closure finite but not well-bordered", id(c))),
            (Status::False, Status::True) => notes.push(format!("{} is well-bordered but not closure finite", id(c))),
            _ => {}
        }
    }
    if wb.overall == Status::True && cf.overall == Status::False {
        out.push(LemmaViolation {
            lemma: "well-bordered decomposition is closure finite",
            cells: Vec::new(),
        });
    }
    (out, notes)
}

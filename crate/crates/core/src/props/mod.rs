//! Structural properties of decompositions: closure finiteness,
//! well-borderedness, reducedness, well-basedness, local boundary
//! connectivity and strongness, plus the section-extension audit.

mod cadprops;
mod combinatorial;
pub mod lbc;
mod strong;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

pub use cadprops::{
    audit_polyline_extension, audit_section_extension, check_reduced, check_well_based, ExtensionAudit,
    PathLimit,
};
pub use combinatorial::{check_closure_finite, check_well_bordered, lemma_violations, LemmaViolation};
pub use lbc::{check_lbc, CadShape, CellShape, FormulaShape, LbcConfig, LbcResult};
pub use strong::{check_lbc_report, check_strong, shape_of_geometry, StrongSource};

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    True,
    False,
    Unknown,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Status::True => Value::Bool(true),
            Status::False => Value::Bool(false),
            Status::Unknown => Value::String("unknown".into()),
        }
    }

    /// Conjunction in three-valued logic: false dominates unknown.
    pub fn and(self, o: Status) -> Status {
        match (self, o) {
            (Status::False, _) | (_, Status::False) => Status::False,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            _ => Status::True,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::True => "true",
            Status::False => "false",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellVerdict {
    pub holds: Status,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub overall: Status,
    pub heuristic: bool,
    pub cells: BTreeMap<String, CellVerdict>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn new(property: &str, heuristic: bool) -> Self {
        PropertyReport {
            property: property.to_string(),
            overall: Status::True,
            heuristic,
            cells: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, id: &str, holds: Status, witness: Option<Value>) {
        self.overall = self.overall.and(holds);
        self.cells.insert(id.to_string(), CellVerdict { holds, witness });
    }

    pub fn holds(&self, id: &str) -> Option<Status> {
        self.cells.get(id).map(|c| c.holds)
    }

    pub fn witness(&self, id: &str) -> Option<&Value> {
        self.cells.get(id).and_then(|c| c.witness.as_ref())
    }

    pub fn to_json(&self) -> Value {
        let cells: serde_json::Map<String, Value> = self
            .cells
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    json!({"holds": v.holds.to_json(), "witness": v.witness.clone().unwrap_or(Value::Null)}),
                )
            })
            .collect();
        json!({
            "property": self.property,
            "overall": self.overall.to_json(),
            "heuristic": self.heuristic,
            "cells": cells,
            "notes": self.notes,
        })
    }
}

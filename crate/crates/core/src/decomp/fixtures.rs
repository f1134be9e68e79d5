//! Decompositions transcribed from classic examples, shipped with the crate.

use super::DecompGraph;
use crate::error::{Error, Result};

const FIXTURES: [(&str, &str); 6] = [
    ("cfsubadj", include_str!("../../fixtures/cfsubadj.json")),
    ("lazard_q_points", include_str!("../../fixtures/lazard_q_points.json")),
    ("noncf", include_str!("../../fixtures/noncf.json")),
    ("sphere_minus_point", include_str!("../../fixtures/sphere_minus_point.json")),
    ("wbnotcf", include_str!("../../fixtures/wbnotcf.json")),
    ("whitney", include_str!("../../fixtures/whitney.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.0).collect()
}

/// The JSON text of a shipped fixture.
pub fn fixture_source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    FIXTURES.iter().find(|f| f.0 == name).map(|f| f.1)
}

pub fn load_fixture(name: &str) -> Result<DecompGraph> {
    let src = fixture_source(name).ok_or_else(|| Error::MissingData(format!("no fixture named {name}")))?;
    DecompGraph::from_json_str(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load_and_round_trip() {
        for name in fixture_names() {
            let g = load_fixture(name).unwrap();
            assert_eq!(DecompGraph::from_json(&g.to_json()).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn fixture_sizes() {
        assert_eq!(load_fixture("whitney").unwrap().len(), 9);
        assert_eq!(load_fixture("noncf").unwrap().len(), 29);
        assert_eq!(load_fixture("wbnotcf").unwrap().len(), 27);
        assert_eq!(load_fixture("lazard_q_points.json").unwrap().len(), 5);
        assert!(load_fixture("missing").is_err());
    }

    #[test]
    fn noncf_endpoints_are_not_cells() {
        let g = load_fixture("noncf").unwrap();
        assert!(g.index_of("seg").is_ok());
        let seg = g.index_of("seg").unwrap();
        // the segment meets the two undivided edges only at their midpoints
        let edge = g.index_of("00o").unwrap();
        assert!(g.leq(edge, seg));
        assert_eq!(g.within_closure(edge, seg), Some(false));
    }

    #[test]
    fn cfsubadj_closure_cells_warn() {
        let g = load_fixture("cfsubadj").unwrap();
        let cc = g.closure_cells("C2").unwrap();
        assert_eq!(cc.ids.into_iter().collect::<Vec<_>>(), vec!["C1", "C2"]);
        assert!(cc.warning);
    }
}

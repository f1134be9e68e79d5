//! Abstract cell decompositions: cells with dimensions, the subadjacency
//! relation, and (where known) which parts of which cells meet each closure.
//!
//! Closure bookkeeping works on atoms. A cell without declared pieces is one
//! atom; a cell with pieces is the disjoint union of its pieces. This lets a
//! closure record that it meets only part of a cell, as happens in
//! decompositions that are not closure finite.

mod fixtures;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;
use serde_json::{json, Map, Value};

use crate::arith::{parse_rational, rational_to_string, Rational};
use crate::cadbuild::{index_id, CadTree, CellIndex};
use crate::error::{Error, Result};

pub use fixtures::{fixture_names, fixture_source, load_fixture};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub id: String,
    pub dim: usize,
}

/// Sign-condition description of a cell: `formula` over `f1, f2, ...`
/// naming `polys` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    pub formula: String,
    pub polys: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphCell {
    pub id: String,
    pub dim: usize,
    pub bounded: bool,
    pub geometry: Option<Geometry>,
    pub sample: Option<Vec<Rational>>,
    pub pieces: Vec<Piece>,
}

impl GraphCell {
    pub fn new(id: &str, dim: usize) -> Self {
        GraphCell {
            id: id.to_string(),
            dim,
            bounded: true,
            geometry: None,
            sample: None,
            pieces: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub cell: usize,
    pub piece: Option<usize>,
}

/// Result of [`DecompGraph::closure_cells`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCells {
    pub ids: BTreeSet<String>,
    /// Set unless the cell is known to be closure finite; the ids may then
    /// under-cover the closure.
    pub warning: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompGraph {
    pub comment: Option<String>,
    cells: Vec<GraphCell>,
    ids: HashMap<String, usize>,
    piece_ids: HashMap<String, Atom>,
    /// `lower[c]`: cells other than `c` subadjacent to `c`.
    lower: Vec<BTreeSet<usize>>,
    closure: Vec<Option<BTreeSet<Atom>>>,
}

impl DecompGraph {
    /// Validated graph. `subadj` holds `(lower, upper)` id pairs; reflexive
    /// pairs are implied. `closure` maps a cell id to the cell and piece ids
    /// meeting its closure.
    pub fn new(
        cells: Vec<GraphCell>,
        subadj: &[(String, String)],
        closure: Option<&BTreeMap<String, Vec<String>>>,
        comment: Option<String>,
    ) -> Result<Self> {
        let mut ids = HashMap::new();
        let mut piece_ids = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if ids.insert(c.id.clone(), i).is_some() || piece_ids.contains_key(&c.id) {
                return Err(Error::Schema(format!("duplicate id {}", c.id)));
            }
            if !c.pieces.is_empty() && c.pieces.iter().map(|p| p.dim).max() != Some(c.dim) {
                return Err(Error::Schema(format!("pieces of {} do not have its dimension", c.id)));
            }
            for (k, p) in c.pieces.iter().enumerate() {
                let atom = Atom {
                    cell: i,
                    piece: Some(k),
                };
                if ids.contains_key(&p.id) || piece_ids.insert(p.id.clone(), atom).is_some() {
                    return Err(Error::Schema(format!("duplicate id {}", p.id)));
                }
            }
        }
        let n = cells.len();
        let mut g = DecompGraph {
            comment,
            cells,
            ids,
            piece_ids,
            lower: vec![BTreeSet::new(); n],
            closure: vec![None; n],
        };
        for (a, b) in subadj {
            let (a, b) = (g.index_of(a)?, g.index_of(b)?);
            if a != b {
                g.lower[b].insert(a);
            }
        }
        if let Some(cl) = closure {
            for (c, members) in cl {
                let ci = g.index_of(c)?;
                let mut set = BTreeSet::new();
                for m in members {
                    set.extend(g.resolve(m)?);
                }
                g.closure[ci] = Some(set);
            }
        }
        g.validate()?;
        Ok(g)
    }

    fn resolve(&self, id: &str) -> Result<Vec<Atom>> {
        if let Some(&c) = self.ids.get(id) {
            return Ok(self.atoms_of(c));
        }
        self.piece_ids
            .get(id)
            .map(|a| vec![*a])
            .ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    fn validate(&self) -> Result<()> {
        for c in 0..self.len() {
            let Some(cl) = &self.closure[c] else {
                // without closure data the whole lower cell counts
                for &d in &self.lower[c] {
                    self.check_drop(d, self.cells[d].dim, c)?;
                }
                continue;
            };
            if !self.atoms_of(c).iter().all(|a| cl.contains(a)) {
                return Err(Error::Schema(format!("closure of {} does not contain the cell", self.cells[c].id)));
            }
            let meets: BTreeSet<usize> = cl.iter().map(|a| a.cell).filter(|&d| d != c).collect();
            for d in meets.symmetric_difference(&self.lower[c]) {
                return Err(Error::ClosureMismatch(self.cells[*d].id.clone(), self.cells[c].id.clone()));
            }
            for a in cl.iter().filter(|a| a.cell != c) {
                self.check_drop(a.cell, self.atom_dim(*a), c)?;
            }
        }
        Ok(())
    }

    fn check_drop(&self, lower: usize, lower_dim: usize, upper: usize) -> Result<()> {
        if lower_dim >= self.cells[upper].dim {
            return Err(Error::DimensionDrop {
                lower: self.cells[lower].id.clone(),
                lower_dim,
                upper: self.cells[upper].id.clone(),
                upper_dim: self.cells[upper].dim,
            });
        }
        Ok(())
    }

    pub fn empty() -> Self {
        DecompGraph::new(Vec::new(), &[], None, None).expect("empty graph is valid")
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[GraphCell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &GraphCell {
        &self.cells[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids.get(id).copied().ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    pub fn ids_of(&self, idx: impl IntoIterator<Item = usize>) -> BTreeSet<String> {
        idx.into_iter().map(|i| self.cells[i].id.clone()).collect()
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lower[b].contains(&a)
    }

    /// Cells other than `c` subadjacent to `c`.
    pub fn lower_of(&self, c: usize) -> &BTreeSet<usize> {
        &self.lower[c]
    }

    /// All proper pairs `(lower, upper)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, l) in self.lower.iter().enumerate() {
            out.extend(l.iter().map(|&d| (d, c)));
        }
        out.sort();
        out
    }

    pub fn atoms_of(&self, c: usize) -> Vec<Atom> {
        if self.cells[c].pieces.is_empty() {
            vec![Atom { cell: c, piece: None }]
        } else {
            (0..self.cells[c].pieces.len())
                .map(|k| Atom {
                    cell: c,
                    piece: Some(k),
                })
                .collect()
        }
    }

    pub fn atom_dim(&self, a: Atom) -> usize {
        match a.piece {
            None => self.cells[a.cell].dim,
            Some(k) => self.cells[a.cell].pieces[k].dim,
        }
    }

    pub fn atom_name(&self, a: Atom) -> &str {
        match a.piece {
            None => &self.cells[a.cell].id,
            Some(k) => &self.cells[a.cell].pieces[k].id,
        }
    }

    pub fn has_closure(&self, c: usize) -> bool {
        self.closure[c].is_some()
    }

    /// Atoms meeting the closure of `c`, if recorded.
    pub fn closure_atoms(&self, c: usize) -> Option<&BTreeSet<Atom>> {
        self.closure[c].as_ref()
    }

    /// Whether all of `d` lies in the closure of `c`; `None` without closure
    /// data for `c`.
    pub fn within_closure(&self, d: usize, c: usize) -> Option<bool> {
        let cl = self.closure[c].as_ref()?;
        Some(self.atoms_of(d).iter().all(|a| cl.contains(a)))
    }

    /// Closure finiteness of `c` by the subadjacency criterion: every cell
    /// subadjacent to `c` lies in its closure.
    pub fn is_closure_finite(&self, c: usize) -> Option<bool> {
        self.closure[c].as_ref()?;
        Some(self.lower[c].iter().all(|&d| self.within_closure(d, c) == Some(true)))
    }

    /// `{D : D ⪯ C}`.
    pub fn closure_cells(&self, id: &str) -> Result<ClosureCells> {
        let c = self.index_of(id)?;
        Ok(ClosureCells {
            ids: self.ids_of(self.downset(c, false)),
            warning: self.is_closure_finite(c) != Some(true),
        })
    }

    /// Cells subadjacent to `c`, without `c` itself when `strict`.
    pub fn downset(&self, c: usize, strict: bool) -> BTreeSet<usize> {
        let mut out = self.lower[c].clone();
        if !strict {
            out.insert(c);
        }
        out
    }

    pub fn downset_of(&self, id: &str, strict: bool) -> Result<BTreeSet<String>> {
        Ok(self.ids_of(self.downset(self.index_of(id)?, strict)))
    }

    /// The graph induced on `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<DecompGraph> {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let cells: Vec<GraphCell> = keep.iter().map(|&i| self.cells[i].clone()).collect();
        let mut pairs = Vec::new();
        for &c in keep {
            for &d in self.lower[c].iter().filter(|d| set.contains(d)) {
                pairs.push((self.cells[d].id.clone(), self.cells[c].id.clone()));
            }
        }
        let mut closure = BTreeMap::new();
        for &c in keep {
            if let Some(cl) = &self.closure[c] {
                let members = cl
                    .iter()
                    .filter(|a| set.contains(&a.cell))
                    .map(|a| self.atom_name(*a).to_string())
                    .collect();
                closure.insert(self.cells[c].id.clone(), members);
            }
        }
        DecompGraph::new(cells, &pairs, Some(&closure), self.comment.clone())
    }

    pub fn from_json(v: &Value) -> Result<DecompGraph> {
        let obj = v.as_object().ok_or_else(|| Error::Schema("graph document must be an object".into()))?;
        if obj.is_empty() {
            return Ok(DecompGraph::empty());
        }
        let mut cells = Vec::new();
        for c in obj.get("cells").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            cells.push(parse_cell(c)?);
        }
        let mut pairs = Vec::new();
        for p in obj.get("subadjacency").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let pr = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Schema("subadjacency entries are [lower, upper] pairs".into()))?;
            pairs.push((str_of(&pr[0], "subadjacency id")?, str_of(&pr[1], "subadjacency id")?));
        }
        let closure = match obj.get("closure") {
            None | Some(Value::Null) => None,
            Some(Value::Object(m)) => {
                let mut out = BTreeMap::new();
                for (k, list) in m {
                    let list = list
                        .as_array()
                        .ok_or_else(|| Error::Schema(format!("closure of {k} must be a list")))?;
                    let ids = list.iter().map(|x| str_of(x, "closure id")).collect::<Result<Vec<_>>>()?;
                    out.insert(k.clone(), ids);
                }
                Some(out)
            }
            Some(_) => return Err(Error::Schema("closure must be an object".into())),
        };
        let comment = obj.get("comment").and_then(Value::as_str).map(str::to_string);
        DecompGraph::new(cells, &pairs, closure.as_ref(), comment)
    }

    pub fn from_json_str(s: &str) -> Result<DecompGraph> {
        DecompGraph::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self.cells.iter().map(cell_json).collect();
        let pairs: Vec<Value> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| json!([self.cells[a].id, self.cells[b].id]))
            .collect();
        let mut out = Map::new();
        out.insert("cells".into(), Value::Array(cells));
        out.insert("subadjacency".into(), Value::Array(pairs));
        if self.closure.iter().any(Option::is_some) {
            let mut cl = Map::new();
            for (c, set) in self.closure.iter().enumerate() {
                if let Some(set) = set {
                    cl.insert(self.cells[c].id.clone(), json!(self.closure_names(set)));
                }
            }
            out.insert("closure".into(), Value::Object(cl));
        }
        if let Some(c) = &self.comment {
            out.insert("comment".into(), json!(c));
        }
        Value::Object(out)
    }

    /// Closure members with whole cells written by their own id.
    fn closure_names(&self, set: &BTreeSet<Atom>) -> Vec<String> {
        let mut names = BTreeSet::new();
        for a in set {
            let whole = self.atoms_of(a.cell).iter().all(|b| set.contains(b));
            names.insert(if whole { self.cells[a.cell].id.clone() } else { self.atom_name(*a).to_string() });
        }
        names.into_iter().collect()
    }

    /// Graph of a decomposition with computed subadjacency, over the cells
    /// `subset` (default: the bounded top-level cells). A pair whose lower
    /// cell is only partly in the closure gives that cell a piece `D@C`.
    pub fn from_cad(cad: &CadTree, subset: Option<&[CellIndex]>) -> Result<DecompGraph> {
        let chosen: Vec<CellIndex> = match subset {
            Some(s) => s.to_vec(),
            None => cad.top_cells().iter().filter(|c| c.bounded).map(|c| c.index.clone()).collect(),
        };
        let set: BTreeSet<&CellIndex> = chosen.iter().collect();
        let adj: Vec<_> = cad
            .top_adjacency()?
            .into_iter()
            .filter(|p| set.contains(&p.lower) && set.contains(&p.upper))
            .collect();
        let samples = representative_samples(cad, &chosen)?;
        let mut partial: BTreeMap<&CellIndex, Vec<&CellIndex>> = BTreeMap::new();
        for p in adj.iter().filter(|p| !p.full) {
            partial.entry(&p.lower).or_default().push(&p.upper);
        }
        let mut cells = Vec::new();
        for (idx, sample) in chosen.iter().zip(samples) {
            let c = cad.cell(idx)?;
            let mut gc = GraphCell::new(&index_id(idx), c.dim());
            gc.bounded = c.bounded;
            gc.sample = Some(sample);
            if let Some(ups) = partial.get(idx) {
                for u in ups {
                    gc.pieces.push(Piece {
                        id: format!("{}@{}", index_id(idx), index_id(u)),
                        dim: c.dim().min(cad.cell(u)?.dim().saturating_sub(1)),
                    });
                }
                gc.pieces.push(Piece {
                    id: format!("{}@rest", index_id(idx)),
                    dim: c.dim(),
                });
            }
            cells.push(gc);
        }
        let pairs: Vec<(String, String)> = adj.iter().map(|p| (index_id(&p.lower), index_id(&p.upper))).collect();
        let mut closure: BTreeMap<String, Vec<String>> =
            chosen.iter().map(|i| (index_id(i), vec![index_id(i)])).collect();
        for p in &adj {
            let member = if p.full {
                index_id(&p.lower)
            } else {
                format!("{}@{}", index_id(&p.lower), index_id(&p.upper))
            };
            closure.get_mut(&index_id(&p.upper)).unwrap().push(member);
        }
        DecompGraph::new(cells, &pairs, Some(&closure), None)
    }
}

/// Rational points inside each cell's sample box, the boxes refined to width
/// at most 2^-20 of the smallest coordinate gap between distinct samples.
fn representative_samples(cad: &CadTree, cells: &[CellIndex]) -> Result<Vec<Vec<Rational>>> {
    let approx: Vec<Vec<f64>> = cells
        .iter()
        .map(|i| cad.cell(i).map(|c| c.sample.to_f64()))
        .collect::<Result<_>>()?;
    let mut gap = 1f64;
    for (i, a) in approx.iter().enumerate() {
        for b in &approx[i + 1..] {
            let d = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0f64, f64::max);
            if d > 0.0 {
                gap = gap.min(d);
            }
        }
    }
    let w = Rational::from_float(gap * (-20f64).exp2()).unwrap_or_else(Rational::one);
    let mut out = Vec::new();
    for i in cells {
        let coords = cad.cell(i)?.sample.coords.iter().map(|x| match x.as_rational() {
            Some(r) => r.clone(),
            None => x.refine(&w).midpoint(),
        });
        out.push(coords.collect());
    }
    Ok(out)
}

fn str_of(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::Schema(format!("{what} must be a string")))
}

fn parse_cell(c: &Value) -> Result<GraphCell> {
    let id = str_of(c.get("id").unwrap_or(&Value::Null), "cell id")?;
    let dim = c
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Schema(format!("cell {id} needs an integer dim")))? as usize;
    let mut gc = GraphCell::new(&id, dim);
    gc.bounded = match c.get("bounded") {
        None => true,
        Some(b) => b
            .as_bool()
            .ok_or_else(|| Error::Schema(format!("bounded of {id} must be a boolean")))?,
    };
    if let Some(g) = c.get("geometry").filter(|g| !g.is_null()) {
        let formula = str_of(g.get("formula").unwrap_or(&Value::Null), "geometry formula")?;
        let polys = g
            .get("polys")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema(format!("geometry of {id} needs polys")))?
            .iter()
            .map(|p| str_of(p, "geometry polynomial"))
            .collect::<Result<_>>()?;
        gc.geometry = Some(Geometry { formula, polys });
    }
    if let Some(s) = c.get("sample").filter(|s| !s.is_null()) {
        let coords = s
            .as_array()
            .ok_or_else(|| Error::Schema(format!("sample of {id} must be a list")))?
            .iter()
            .map(|x| parse_rational(&str_of(x, "sample coordinate")?))
            .collect::<Result<_>>()?;
        gc.sample = Some(coords);
    }
    for p in c.get("pieces").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
        let pid = str_of(p.get("id").unwrap_or(&Value::Null), "piece id")?;
        let pdim = p
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema(format!("piece {pid} needs an integer dim")))?;
        gc.pieces.push(Piece {
            id: pid,
            dim: pdim as usize,
        });
    }
    Ok(gc)
}

fn cell_json(c: &GraphCell) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(c.id));
    m.insert("dim".into(), json!(c.dim));
    m.insert("bounded".into(), json!(c.bounded));
    if let Some(g) = &c.geometry {
        m.insert("geometry".into(), json!({"formula": g.formula, "polys": g.polys}));
    }
    if let Some(s) = &c.sample {
        m.insert("sample".into(), json!(s.iter().map(rational_to_string).collect::<Vec<_>>()));
    }
    if !c.pieces.is_empty() {
        let ps: Vec<Value> = c.pieces.iter().map(|p| json!({"id": p.id, "dim": p.dim})).collect();
        m.insert("pieces".into(), Value::Array(ps));
    }
    Value::Object(m)
}

impl Default for DecompGraph {
    fn default() -> Self {
        DecompGraph::empty()
    }
}

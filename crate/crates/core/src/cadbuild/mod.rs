//! Construction of sign-invariant cylindrical algebraic decompositions of
//! R^n for n <= 3: projection, lifting, samples, sign tables, cell selection
//! and subadjacency.

mod adjacency;
mod formula;
mod json;
mod projection;
mod track;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{roots_over, sign_at, FiberRoots, MultiPoly, Point, Rational, RealAlgebraic};
use crate::error::{Error, Result};

pub use adjacency::{compute_subadjacency, AdjPair, VARIANTS};
pub use formula::{Formula, RelOp};
pub use json::{cad_from_json, cad_to_json};
pub use projection::{full_projection, normalize_set, project_level, ProjectionSet};
pub use track::{
    interior_probes, path_point, track_polyline, track_section, variant_start, Limit, PathSpec,
    Region, TrackConfig, TrackOutcome,
};

/// Collins index: one 1-based stack position per level; odd positions are
/// sectors, even positions sections.
pub type CellIndex = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Sector,
    Section,
}

impl Kind {
    pub fn of_position(p: usize) -> Kind {
        if p % 2 == 0 {
            Kind::Section
        } else {
            Kind::Sector
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Sector => "sector",
            Kind::Section => "section",
        }
    }
}

pub fn index_id(index: &[usize]) -> String {
    index.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub index: CellIndex,
    pub sample: Point,
    /// Signs at the sample: of F for top-level cells, of the level's
    /// projection set below that.
    pub signs: Vec<i8>,
    pub bounded: bool,
}

impl Cell {
    pub fn level(&self) -> usize {
        self.index.len()
    }

    pub fn kind(&self, level: usize) -> Kind {
        Kind::of_position(self.index[level - 1])
    }

    pub fn kinds(&self) -> Vec<Kind> {
        self.index.iter().map(|&p| Kind::of_position(p)).collect()
    }

    pub fn dim(&self) -> usize {
        self.index.iter().filter(|&&p| p % 2 == 1).count()
    }

    pub fn is_section(&self) -> bool {
        self.index.last().is_some_and(|p| p % 2 == 0)
    }

    pub fn parent(&self) -> &[usize] {
        &self.index[..self.index.len() - 1]
    }

    pub fn id(&self) -> String {
        index_id(&self.index)
    }
}

/// What lifting recorded about one stack.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct StackInfo {
    /// Section values over the base sample, ascending.
    pub roots: Vec<RealAlgebraic>,
    /// For each root, the lifting polynomials vanishing there.
    pub root_polys: Vec<Vec<usize>>,
    /// Lifting polynomials nullified over the base cell.
    pub nullified: Vec<usize>,
}

impl StackInfo {
    pub fn len(&self) -> usize {
        2 * self.roots.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug)]
pub struct CadTree {
    pub nvars: usize,
    /// The input polynomials, as given.
    pub f: Vec<MultiPoly>,
    pub projection: ProjectionSet,
    /// Cells of every level keyed by index.
    pub cells: BTreeMap<CellIndex, Cell>,
    /// Stacks keyed by base index (the empty index for level 1).
    pub stacks: BTreeMap<CellIndex, StackInfo>,
    /// Proper subadjacencies `lower ⪯ upper` at every level, once computed.
    pub adjacency: Option<Vec<AdjPair>>,
}

impl CadTree {
    /// Polynomials whose roots form the stacks at `level`.
    pub fn lifting_polys(&self, level: usize) -> &[MultiPoly] {
        if level == self.nvars {
            &self.f
        } else {
            self.projection.level(level)
        }
    }

    pub fn cells_at(&self, level: usize) -> impl Iterator<Item = &Cell> {
        self.cells.values().filter(move |c| c.level() == level)
    }

    /// Top-level cells in index order.
    pub fn top_cells(&self) -> Vec<&Cell> {
        self.cells_at(self.nvars).collect()
    }

    pub fn cell(&self, index: &[usize]) -> Result<&Cell> {
        self.cells
            .get(index)
            .ok_or_else(|| Error::UnknownCell(index_id(index)))
    }

    pub fn stack(&self, base: &[usize]) -> &StackInfo {
        &self.stacks[base]
    }

    /// `(base index, F index)` pairs where an input polynomial vanishes on the
    /// whole cylinder over the base cell.
    pub fn nullified(&self) -> Vec<(CellIndex, usize)> {
        let mut out = Vec::new();
        for (base, st) in &self.stacks {
            if base.len() + 1 == self.nvars {
                for &i in &st.nullified {
                    out.push((base.clone(), i));
                }
            }
        }
        out
    }

    /// Cells whose signs satisfy `phi`.
    pub fn select_cells(&self, phi: &Formula) -> Result<Vec<&Cell>> {
        phi.check_refs(self.f.len())?;
        Ok(self.top_cells().into_iter().filter(|c| phi.eval(&c.signs)).collect())
    }

    /// Proper subadjacency pairs among top-level cells.
    pub fn top_adjacency(&self) -> Result<Vec<&AdjPair>> {
        let adj = self
            .adjacency
            .as_ref()
            .ok_or_else(|| Error::MissingData("subadjacency not computed".into()))?;
        Ok(adj.iter().filter(|a| a.lower.len() == self.nvars).collect())
    }
}

/// Decomposition of the real line by the roots of univariate polynomials.
pub fn base_decomposition(f1: &[MultiPoly]) -> Result<Vec<Cell>> {
    let (cells, _) = lift_stack(&[], &Point::default(), true, f1, f1)?;
    Ok(cells)
}

/// Build the stack over one base cell. `lift` supplies the roots and `signs`
/// the sign vector of each new cell.
pub fn lift_stack(
    base: &[usize],
    sample: &Point,
    bounded: bool,
    lift: &[MultiPoly],
    signs: &[MultiPoly],
) -> Result<(Vec<Cell>, StackInfo)> {
    let var = base.len();
    let (merged, nullified) = merged_roots(lift, var, sample, &[])?;
    let roots: Vec<RealAlgebraic> = merged.iter().map(|m| m.0.clone()).collect();
    let root_polys: Vec<Vec<usize>> = merged.into_iter().map(|m| m.1).collect();
    let r = roots.len();
    let mut cells = Vec::with_capacity(2 * r + 1);
    for pos in 1..=2 * r + 1 {
        let coord = if pos % 2 == 0 {
            roots[pos / 2 - 1].clone()
        } else {
            RealAlgebraic::from_rational(sector_sample(&roots, (pos - 1) / 2))
        };
        let pt = sample.pushed(coord);
        let mut sv = Vec::with_capacity(signs.len());
        for f in signs {
            sv.push(sign_at(f, &pt)?);
        }
        let mut index = base.to_vec();
        index.push(pos);
        cells.push(Cell {
            index,
            sample: pt,
            signs: sv,
            bounded: bounded && pos != 1 && pos != 2 * r + 1,
        });
    }
    Ok((
        cells,
        StackInfo {
            roots,
            root_polys,
            nullified,
        },
    ))
}

/// Sorted distinct roots over `sample` of the polynomials in `lift` (except
/// those listed in `skip`), each with the polynomials vanishing there, plus
/// the polynomials nullified at the point.
#[allow(clippy::type_complexity)]
pub fn merged_roots(
    lift: &[MultiPoly],
    var: usize,
    sample: &Point,
    skip: &[usize],
) -> Result<(Vec<(RealAlgebraic, Vec<usize>)>, Vec<usize>)> {
    let mut merged: Vec<(RealAlgebraic, Vec<usize>)> = Vec::new();
    let mut nullified = Vec::new();
    for (i, f) in lift.iter().enumerate() {
        if skip.contains(&i) {
            continue;
        }
        match roots_over(f, var, sample)? {
            FiberRoots::Nullified => nullified.push(i),
            FiberRoots::Roots(rs) => {
                for r in rs {
                    match merged.binary_search_by(|(x, _)| x.compare(&r)) {
                        Ok(k) => merged[k].1.push(i),
                        Err(k) => merged.insert(k, (r, vec![i])),
                    }
                }
            }
        }
    }
    Ok((merged, nullified))
}

/// Rational sample of the sector above root `j - 1` and below root `j`.
pub fn sector_sample(roots: &[RealAlgebraic], j: usize) -> Rational {
    let one = Rational::one();
    if roots.is_empty() {
        return Rational::zero();
    }
    if j == 0 {
        let r = roots[0].refine(&one);
        return r.lo() - one;
    }
    if j == roots.len() {
        let r = roots[j - 1].refine(&one);
        return r.hi() + one;
    }
    let (mut a, mut b) = (roots[j - 1].clone(), roots[j].clone());
    debug_assert_eq!(a.compare(&b), Ordering::Less);
    while a.hi() >= b.lo() {
        a.bisect();
        b.bisect();
    }
    (a.hi() + b.lo()) / Rational::from_integer(2.into())
}

/// Build the decomposition of `R^n` for `f` without subadjacency.
pub fn build_cad(f: &[MultiPoly], n: usize) -> Result<CadTree> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let f: Vec<MultiPoly> = f
        .iter()
        .map(|p| {
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            for v in n..p.nvars() {
                if p.uses_var(v) {
                    return Err(Error::VarOutOfRange { var: v, nvars: n });
                }
            }
            Ok(if p.nvars() == n { p.clone() } else { p.with_nvars(n) })
        })
        .collect::<Result<_>>()?;
    let projection = full_projection(&f, n)?;
    let mut cad = CadTree {
        nvars: n,
        f,
        projection,
        cells: BTreeMap::new(),
        stacks: BTreeMap::new(),
        adjacency: None,
    };
    let root = Cell {
        index: vec![],
        sample: Point::default(),
        signs: vec![],
        bounded: true,
    };
    let mut frontier = vec![root];
    for level in 1..=n {
        let lift = cad.lifting_polys(level).to_vec();
        let lifted: Vec<(Vec<Cell>, StackInfo, CellIndex)> = frontier
            .par_iter()
            .map(|b| {
                lift_stack(&b.index, &b.sample, b.bounded, &lift, &lift)
                    .map(|(cells, st)| (cells, st, b.index.clone()))
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (cells, st, base) in lifted {
            cad.stacks.insert(base, st);
            for c in cells {
                cad.cells.insert(c.index.clone(), c.clone());
                next.push(c);
            }
        }
        frontier = next;
    }
    Ok(cad)
}

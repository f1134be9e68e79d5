//! Shared builders and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use cadaudit::arith::{parse_poly, MultiPoly, Rational};
use cadaudit::cadbuild::{build_cad, compute_subadjacency, CadTree, CellIndex, Formula, TrackConfig};
use cadaudit::decomp::{fixture_names, load_fixture, DecompGraph};
use cadaudit::topo::OrderComplex;
use num_traits::{One, Signed, Zero};

pub const CIRCLE: &str = "x1^2 + x2^2 - 1";
pub const SPHERE: &str = "x1^2 + x2^2 + x3^2 - 1";

pub fn polys(src: &[&str], n: usize) -> Vec<MultiPoly> {
    src.iter().map(|s| parse_poly(s, Some(n)).unwrap()).collect()
}

/// Decomposition with subadjacency computed.
pub fn cad(src: &[&str], n: usize) -> CadTree {
    let mut c = build_cad(&polys(src, n), n).unwrap();
    compute_subadjacency(&mut c, &TrackConfig::default()).unwrap();
    c
}

pub fn selection(cad: &CadTree, phi: &str) -> Vec<CellIndex> {
    let f = Formula::parse(phi).unwrap();
    cad.select_cells(&f).unwrap().iter().map(|c| c.index.clone()).collect()
}

pub fn graph_of(cad: &CadTree, phi: &str) -> DecompGraph {
    DecompGraph::from_cad(cad, Some(&selection(cad, phi))).unwrap()
}

pub fn all_cells(g: &DecompGraph) -> Vec<usize> {
    (0..g.len()).collect()
}

/// Fixtures plus graphs derived from the circle and sphere decompositions.
pub fn corpus() -> Vec<(String, DecompGraph)> {
    let mut out: Vec<(String, DecompGraph)> = fixture_names()
        .into_iter()
        .map(|n| (n.to_string(), load_fixture(n).unwrap()))
        .collect();
    let circle = cad(&[CIRCLE], 2);
    let sphere = cad(&[SPHERE], 3);
    let all_top = |c: &CadTree| -> Vec<CellIndex> { c.top_cells().iter().map(|x| x.index.clone()).collect() };
    out.push(("circle bounded".into(), DecompGraph::from_cad(&circle, None).unwrap()));
    out.push(("circle all".into(), DecompGraph::from_cad(&circle, Some(&all_top(&circle))).unwrap()));
    out.push(("disk".into(), graph_of(&circle, "f1 <= 0")));
    out.push(("sphere bounded".into(), DecompGraph::from_cad(&sphere, None).unwrap()));
    out.push(("sphere all".into(), DecompGraph::from_cad(&sphere, Some(&all_top(&sphere))).unwrap()));
    out.push(("ball".into(), graph_of(&sphere, "f1 <= 0")));
    out.push(("sphere surface".into(), graph_of(&sphere, "f1 = 0")));
    out
}

// ---- resultant oracle: Sylvester matrix expanded by permutations ----

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        // insert n-1 at every position; each shift past an element is a transposition
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let moves = p.len() - pos;
            out.push((q, odd ^ (moves % 2 == 1)));
        }
    }
    out
}

pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let n = f.nvars();
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let (m, k) = (fc.len() - 1, gc.len() - 1);
    let size = m + k;
    if size == 0 {
        return MultiPoly::one(n);
    }
    let mut rows = Vec::new();
    for (src, copies, deg) in [(&fc, k, m), (&gc, m, k)] {
        for s in 0..copies {
            let mut row = vec![MultiPoly::zero(n); size];
            for e in 0..=deg {
                // highest power first
                row[s + deg - e] = src[e].clone();
            }
            rows.push(row);
        }
    }
    let mut total = MultiPoly::zero(n);
    for (p, odd) in permutations(size) {
        let mut term = MultiPoly::one(n);
        for (i, &j) in p.iter().enumerate() {
            term = &term * &rows[i][j];
            if term.is_zero() {
                break;
            }
        }
        total = if odd { &total - &term } else { &total + &term };
    }
    total
}

// ---- root count oracle: Sturm sequence over the rationals ----

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let q = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r = trim(r);
    }
    r
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Number of distinct real roots of `p` (coefficients lowest first).
pub fn sturm_root_count(p: &[Rational]) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let dp: Vec<Rational> = trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect(),
    );
    let mut seq = vec![p.clone(), dp];
    loop {
        let r = rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let lead = p.last().unwrap().abs();
    let bound = p.iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |a, b| a + b) + Rational::one();
    let changes = |x: &Rational| {
        let signs: Vec<i8> = seq
            .iter()
            .map(|q| eval(q, x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(&-bound.clone()) - changes(&bound)
}

// ---- homology oracle: ranks over GF(3) ----

fn rank_mod3(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = if m[rank][c] == 1 { 1 } else { 2 };
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(3);
        }
        for i in 0..rows {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(3);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over GF(3) computed straight from the simplex list.
pub fn betti_mod3(cx: &OrderComplex) -> Vec<usize> {
    let mut by_dim: Vec<Vec<&Vec<usize>>> = Vec::new();
    for s in &cx.simplices {
        let d = s.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(s);
    }
    let mut ranks = vec![0; by_dim.len() + 1];
    for d in 1..by_dim.len() {
        let pos: HashMap<&Vec<usize>, usize> = by_dim[d - 1].iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut m = vec![vec![0i64; by_dim[d].len()]; by_dim[d - 1].len()];
        for (j, s) in by_dim[d].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = (*s).clone();
                face.remove(i);
                m[pos[&face]][j] = if i % 2 == 0 { 1 } else { 2 };
            }
        }
        ranks[d] = rank_mod3(m);
    }
    (0..by_dim.len()).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// Connected components of the subadjacency graph restricted to `subset`.
pub fn components(g: &DecompGraph, subset: &[usize]) -> usize {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &s in subset {
        if !seen.insert(s) {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        while let Some(c) = stack.pop() {
            for &d in &set {
                if (g.leq(c, d) || g.leq(d, c)) && seen.insert(d) {
                    stack.push(d);
                }
            }
        }
    }
    count
}

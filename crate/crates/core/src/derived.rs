//! Graphs derived from a tableau or a relation graph: the integral relation
//! graph `G(L)`, the closure `Gbar`, down-edge sets, realizations and
//! maximal chains.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Arrow, Direction, TriGraph};
use crate::tableau::{integer_difference, vertex_count, ShiftVector, Tableau, Vertex};

/// Integer differences `l_a - l_b` between the entries of one tableau.
pub trait Differences {
    fn n(&self) -> usize;
    fn diff(&self, a: Vertex, b: Vertex) -> Option<i64>;
}

/// All pairwise integer differences of a tableau, computed once.
#[derive(Clone, Debug)]
pub struct DiffTable {
    n: usize,
    size: usize,
    table: Vec<Option<i64>>,
}

impl DiffTable {
    pub fn of(t: &Tableau) -> Self {
        let n = t.n();
        let size = vertex_count(n);
        let entries = t.entries();
        let mut table = vec![None; size * size];
        for a in 0..size {
            table[a * size + a] = Some(0);
            for b in a + 1..size {
                if let Some(d) = integer_difference(&entries[a], &entries[b]) {
                    table[a * size + b] = Some(d);
                    table[b * size + a] = Some(-d);
                }
            }
        }
        DiffTable { n, size, table }
    }

    /// Differences of the shifted tableau `T(L + z)`; the integrality
    /// pattern is shift-invariant, only the values move.
    pub fn shifted<'a>(&'a self, z: &'a ShiftVector) -> Shifted<'a> {
        Shifted {
            base: self,
            z: z.values(),
        }
    }

    pub(crate) fn raw(&self, a: usize, b: usize) -> Option<i64> {
        self.table[a * self.size + b]
    }
}

impl Differences for DiffTable {
    fn n(&self) -> usize {
        self.n
    }

    fn diff(&self, a: Vertex, b: Vertex) -> Option<i64> {
        self.raw(a.index(), b.index())
    }
}

pub struct Shifted<'a> {
    base: &'a DiffTable,
    z: &'a [i64],
}

impl Differences for Shifted<'_> {
    fn n(&self) -> usize {
        self.base.n
    }

    fn diff(&self, a: Vertex, b: Vertex) -> Option<i64> {
        let (i, j) = (a.index(), b.index());
        self.base.raw(i, j).map(|d| d + self.z[i] - self.z[j])
    }
}

/// Smallest admissible difference `l_from - l_to` along an arrow: 1 for up
/// arrows, 0 otherwise.
pub(crate) fn arrow_bound(a: &Arrow) -> i64 {
    if a.direction() == Direction::Up {
        1
    } else {
        0
    }
}

pub(crate) fn satisfies_diffs(g: &TriGraph, d: &impl Differences) -> bool {
    g.arrows()
        .iter()
        .all(|a| d.diff(a.from, a.to).is_some_and(|x| x >= arrow_bound(a)))
}

/// Rows below the top may hold integral pairs only inside one component.
pub(crate) fn row_condition(g: &TriGraph, d: &impl Differences) -> bool {
    let comp = g.components();
    (1..g.n()).all(|k| {
        (1..=k).all(|i| {
            (i + 1..=k).all(|j| {
                let (a, b) = (Vertex::new(k, i), Vertex::new(k, j));
                d.diff(a, b).is_none() || comp[a.index()] == comp[b.index()]
            })
        })
    })
}

/// `T(L)` satisfies `g`: differences in `Z>=0` along down and horizontal
/// arrows and in `Z>0` along up arrows.
pub fn satisfies(t: &Tableau, g: &TriGraph) -> bool {
    t.n() == g.n() && satisfies_diffs(g, &DiffTable::of(t))
}

/// `T(L)` satisfies `g`, and below the top row integral differences occur
/// only between vertices of one undirected component of `g`.
pub fn is_realization(t: &Tableau, g: &TriGraph) -> bool {
    if t.n() != g.n() {
        return false;
    }
    let d = DiffTable::of(t);
    satisfies_diffs(g, &d) && row_condition(g, &d)
}

pub(crate) fn graph_of_diffs(d: &impl Differences) -> TriGraph {
    let n = d.n();
    let mut arrows = BTreeSet::new();
    for a in Vertex::all(n) {
        for b in Vertex::all(n) {
            if a == b {
                continue;
            }
            let Some(x) = d.diff(a, b) else { continue };
            let present = if a.row == b.row + 1 {
                x >= 0
            } else if a.row + 1 == b.row {
                x > 0
            } else if a.row == n && b.row == n {
                // equal top-row entries get a single rightward arrow
                x > 0 || (x == 0 && a.col < b.col)
            } else {
                false
            };
            if present {
                arrows.insert(Arrow::new(a, b));
            }
        }
    }
    TriGraph::from_set(n, arrows)
}

/// The graph `G(L)` of integral relations present in `t`.
pub fn build_g_of_l(t: &Tableau) -> TriGraph {
    graph_of_diffs(&DiffTable::of(t))
}

/// The closure `Gbar`: an arrow between adjacent rows, or between two top-row
/// vertices, wherever `g` has a directed path.
pub fn build_gbar(g: &TriGraph) -> TriGraph {
    let n = g.n();
    let reach = g.reachability();
    let mut arrows = BTreeSet::new();
    for a in Vertex::all(n) {
        for b in Vertex::all(n) {
            let adjacent = a.row.abs_diff(b.row) == 1;
            let top = a.row == n && b.row == n && a != b;
            if (adjacent || top) && reach.reachable(a, b) {
                arrows.insert(Arrow::new(a, b));
            }
        }
    }
    TriGraph::from_set(n, arrows)
}

/// Arrows of `a` that are not arrows of `b`.
pub fn graph_difference(a: &TriGraph, b: &TriGraph) -> TriGraph {
    a.difference(b)
}

pub fn incident_vertices(h: &TriGraph) -> BTreeSet<Vertex> {
    h.incident_vertices()
}

/// A set of down arrows (source row = target row + 1).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct EdgeSet(BTreeSet<Arrow>);

impl EdgeSet {
    pub fn new(arrows: impl IntoIterator<Item = Arrow>) -> Result<Self> {
        let set: BTreeSet<Arrow> = arrows.into_iter().collect();
        if let Some(bad) = set.iter().find(|a| !a.is_down()) {
            return Err(Error::Parse(format!("{bad} is not a down arrow")));
        }
        Ok(EdgeSet(set))
    }

    pub fn arrows(&self) -> &BTreeSet<Arrow> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        self.0.contains(a)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arrow> {
        self.0.iter()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", arrows.join(", "))
    }
}

/// `E+`: the arrows of `g` pointing down.
pub fn down_edges(g: &TriGraph) -> EdgeSet {
    EdgeSet(g.arrows().iter().filter(|a| a.is_down()).copied().collect())
}

/// Vertices of an oriented path, listed from source to sink.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chain(pub Vec<Vertex>);

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

/// Maximal `g`-chains with respect to `z`.
///
/// A chain is an oriented path of `g` through vertices incident to `g` with
/// nonzero shift, that cannot be extended at its source by an in-neighbour
/// of nonzero shift nor at its sink by an out-neighbour of nonzero shift. A
/// vertex whose neighbours all have zero shift is a chain on its own; a
/// vertex with no arrows at all is not on any `g`-path and yields nothing.
pub fn maximal_chains(g: &TriGraph, z: &ShiftVector) -> Result<Vec<Chain>> {
    if z.is_zero() {
        return Err(Error::ZeroShift);
    }
    let incident = g.incident_vertices();
    let active = |v: &Vertex| z.get(*v) != 0 && incident.contains(v);
    let succ = |v: Vertex| -> Vec<Vertex> { g.out_neighbors(v).filter(|w| active(w)).collect() };
    let mut chains = BTreeSet::new();
    for source in Vertex::all(g.n()).filter(|v| active(v)) {
        if g.in_neighbors(source).any(|w| active(&w)) {
            continue;
        }
        let mut stack = vec![vec![source]];
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("paths are nonempty");
            let next: Vec<Vertex> = succ(last)
                .into_iter()
                .filter(|w| !path.contains(w))
                .collect();
            if next.is_empty() {
                chains.insert(Chain(path));
                continue;
            }
            for w in next {
                let mut longer = path.clone();
                longer.push(w);
                stack.push(longer);
            }
        }
    }
    Ok(chains.into_iter().collect())
}

/// Entries of one row below the top must be distinct, otherwise a
/// Gelfand-Tsetlin denominator vanishes. The top row never appears in a
/// denominator.
pub fn check_rows_distinct(t: &Tableau) -> Result<()> {
    for k in 1..t.n() {
        for i in 1..=k {
            for j in i + 1..=k {
                let (a, b) = (Vertex::new(k, i), Vertex::new(k, j));
                if t.get(a) == t.get(b) {
                    return Err(Error::DegenerateRow(a, b));
                }
            }
        }
    }
    Ok(())
}

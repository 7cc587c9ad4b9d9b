//! Directed graphs on the triangular vertex set and the relation-graph
//! conditions (I)-(VI).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::tableau::{vertex_count, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arrow {
    pub from: Vertex,
    pub to: Vertex,
}

/// Geometric direction of an arrow in the triangular layout.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// From row `r + 1` to row `r`.
    Down,
    /// From row `r` to row `r + 1`.
    Up,
    /// Within one row.
    Horizontal,
    /// Skips at least one row.
    Skew,
}

impl Arrow {
    pub const fn new(from: Vertex, to: Vertex) -> Self {
        Arrow { from, to }
    }

    pub fn direction(&self) -> Direction {
        let (a, b) = (self.from.row, self.to.row);
        if a == b {
            Direction::Horizontal
        } else if a == b + 1 {
            Direction::Down
        } else if a + 1 == b {
            Direction::Up
        } else {
            Direction::Skew
        }
    }

    pub fn is_down(&self) -> bool {
        self.direction() == Direction::Down
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// A directed graph whose vertex set is the rank-`n` triangle.
///
/// Self-loops and repeated arrows are rejected at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TriGraph {
    n: usize,
    arrows: BTreeSet<Arrow>,
}

impl TriGraph {
    pub fn new(n: usize, arrows: impl IntoIterator<Item = Arrow>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let mut set = BTreeSet::new();
        for a in arrows {
            a.from.check(n)?;
            a.to.check(n)?;
            if a.from == a.to {
                return Err(Error::SelfLoop(a.from));
            }
            if !set.insert(a) {
                return Err(Error::DuplicateArrow(a.from, a.to));
            }
        }
        Ok(TriGraph { n, arrows: set })
    }

    /// Convenience constructor from `((i, j), (r, s))` pairs.
    pub fn from_pairs(n: usize, pairs: &[((usize, usize), (usize, usize))]) -> Result<Self> {
        Self::new(
            n,
            pairs.iter().map(|&((i, j), (r, s))| {
                Arrow::new(Vertex::new(i, j), Vertex::new(r, s))
            }),
        )
    }

    pub fn empty(n: usize) -> Self {
        TriGraph {
            n,
            arrows: BTreeSet::new(),
        }
    }

    /// Builds from arrows already known to be valid for rank `n`.
    pub(crate) fn from_set(n: usize, arrows: BTreeSet<Arrow>) -> Self {
        TriGraph { n, arrows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &BTreeSet<Arrow> {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains(&self, from: Vertex, to: Vertex) -> bool {
        self.arrows.contains(&Arrow::new(from, to))
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.arrows.iter().filter(move |a| a.from == v).map(|a| a.to)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.arrows.iter().filter(move |a| a.to == v).map(|a| a.from)
    }

    /// Adjacency lists indexed by `Vertex::index`.
    pub(crate) fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); vertex_count(self.n)];
        for a in &self.arrows {
            succ[a.from.index()].push(a.to.index());
        }
        succ
    }

    pub fn reachability(&self) -> Reachability {
        let size = vertex_count(self.n);
        let succ = self.successors();
        let mut reach = vec![false; size * size];
        for start in 0..size {
            let mut stack: Vec<usize> = succ[start].clone();
            while let Some(v) = stack.pop() {
                if !reach[start * size + v] {
                    reach[start * size + v] = true;
                    stack.extend(&succ[v]);
                }
            }
        }
        Reachability { size, reach }
    }

    /// Whether a directed path of length at least one leads from `a` to `b`.
    pub fn reachable(&self, a: Vertex, b: Vertex) -> bool {
        self.reachability().reachable(a, b)
    }

    /// Connected component label of every vertex in the underlying undirected
    /// graph, indexed by `Vertex::index`.
    pub fn components(&self) -> Vec<usize> {
        let size = vertex_count(self.n);
        let mut parent: Vec<usize> = (0..size).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.from.index()), find(&mut parent, a.to.index()));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        (0..size).map(|v| find(&mut parent, v)).collect()
    }

    /// Vertices incident to at least one arrow.
    pub fn incident_vertices(&self) -> BTreeSet<Vertex> {
        self.arrows.iter().flat_map(|a| [a.from, a.to]).collect()
    }

    /// Arrows of `self` that are not arrows of `other`.
    pub fn difference(&self, other: &TriGraph) -> TriGraph {
        TriGraph {
            n: self.n,
            arrows: self.arrows.difference(&other.arrows).copied().collect(),
        }
    }

    /// Same-row pairs `((k,i),(k,j))`, `i < j`, `k <= n-1`, joined by a
    /// directed path with no path from `(k,i)` nor into `(k,j)` through an
    /// intermediate column.
    pub fn adjoining_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.adjoining_pairs_with(&self.reachability())
    }

    fn adjoining_pairs_with(&self, reach: &Reachability) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for k in 1..self.n {
            for i in 1..=k {
                for j in i + 1..=k {
                    let (a, b) = (Vertex::new(k, i), Vertex::new(k, j));
                    if !reach.reachable(a, b) {
                        continue;
                    }
                    let blocked = (i + 1..j).any(|t| {
                        let m = Vertex::new(k, t);
                        reach.reachable(a, m) || reach.reachable(m, b)
                    });
                    if !blocked {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// A relation graph is generic when it has no adjoining pairs.
    pub fn is_generic(&self) -> bool {
        self.adjoining_pairs().is_empty()
    }

    /// Checks conditions (I)-(VI) and reports every violation found.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let reach = self.reachability();
        let mut violations = Vec::new();
        let mut push = |condition, witness: Vec<Vertex>| {
            violations.push(Violation { condition, witness })
        };

        // (I) arrows join consecutive rows, or two vertices of the top row
        for a in &self.arrows {
            let ok = match a.direction() {
                Direction::Down | Direction::Up => true,
                Direction::Horizontal => a.from.row == n,
                Direction::Skew => false,
            };
            if !ok {
                push(Condition::I, vec![a.from, a.to]);
            }
        }

        // (II) no path from a column back to an earlier column of its row
        for k in 1..=n {
            for i in 1..=k {
                for j in i + 1..=k {
                    let (left, right) = (Vertex::new(k, i), Vertex::new(k, j));
                    if reach.reachable(right, left) {
                        push(Condition::II, vec![right, left]);
                    }
                }
            }
        }

        // (III) acyclic; antiparallel pairs show up as 2-cycles
        let mut on_cycle: Vec<Vertex> = Vertex::all(n)
            .filter(|&v| reach.reachable(v, v))
            .collect();
        while let Some(&first) = on_cycle.first() {
            let (group, rest): (Vec<Vertex>, Vec<Vertex>) = on_cycle
                .iter()
                .partition(|&&v| v == first || (reach.reachable(first, v) && reach.reachable(v, first)));
            push(Condition::III, group);
            on_cycle = rest;
        }

        // (IV) same row below the top, same component => comparable
        let comp = self.components();
        for k in 1..n {
            for i in 1..=k {
                for j in i + 1..=k {
                    let (a, b) = (Vertex::new(k, i), Vertex::new(k, j));
                    if comp[a.index()] == comp[b.index()]
                        && !reach.reachable(a, b)
                        && !reach.reachable(b, a)
                    {
                        push(Condition::IV, vec![a, b]);
                    }
                }
            }
        }

        // (V) no crossing pair (k+1,r)->(k,j), (k+1,s)->(k,i) with r<s, i<j
        for k in 1..n {
            for r in 1..=k + 1 {
                for s in r + 1..=k + 1 {
                    for i in 1..=k {
                        for j in i + 1..=k {
                            let (top_r, top_s) = (Vertex::new(k + 1, r), Vertex::new(k + 1, s));
                            let (low_i, low_j) = (Vertex::new(k, i), Vertex::new(k, j));
                            if self.contains(top_r, low_j) && self.contains(top_s, low_i) {
                                push(Condition::V, vec![top_r, low_j, top_s, low_i]);
                            }
                        }
                    }
                }
            }
        }

        // (VI) every adjoining pair is completed by a G1 or G2 pattern
        for (a, b) in self.adjoining_pairs_with(&reach) {
            if !self.completes_adjoining_pair(a, b) {
                push(Condition::VI, vec![a, b]);
            }
        }

        ValidationReport { violations }
    }

    fn completes_adjoining_pair(&self, a: Vertex, b: Vertex) -> bool {
        let k = a.row;
        let above = |p| Vertex::new(k + 1, p);
        let below = |q| Vertex::new(k - 1, q);
        // G1: a -> (k+1,p) -> b and a -> (k-1,q) -> b
        let up_route = (1..=k + 1).any(|p| self.contains(a, above(p)) && self.contains(above(p), b));
        let down_route = (1..k).any(|q| self.contains(a, below(q)) && self.contains(below(q), b));
        if up_route && down_route {
            return true;
        }
        // G2: a -> (k+1,s) and (k+1,t) -> b with s < t
        (1..=k + 1).any(|s| {
            self.contains(a, above(s)) && (s + 1..=k + 1).any(|t| self.contains(above(t), b))
        })
    }

    /// Graphviz rendering with vertices pinned to the triangular layout.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  node [shape=plaintext];\n");
        for v in Vertex::all(self.n).collect::<Vec<_>>().into_iter().rev() {
            let x = (2 * v.col + self.n - v.row) as f64 * 0.6;
            let y = v.row as f64;
            out.push_str(&format!(
                "  \"{},{}\" [label=\"{}\", pos=\"{x:.1},{y:.1}!\"];\n",
                v.row, v.col, v
            ));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  \"{},{}\" -> \"{},{}\";\n",
                a.from.row, a.from.col, a.to.row, a.to.col
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for TriGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", arrows.join(", "))
    }
}

/// Transitive closure (paths of length at least one).
#[derive(Clone, Debug)]
pub struct Reachability {
    size: usize,
    reach: Vec<bool>,
}

impl Reachability {
    pub fn reachable(&self, a: Vertex, b: Vertex) -> bool {
        let (i, j) = (a.index(), b.index());
        i < self.size && j < self.size && self.reach[i * self.size + j]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Condition {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::IV => "IV",
            Condition::V => "V",
            Condition::VI => "VI",
        };
        write!(f, "{s}")
    }
}

impl Condition {
    pub fn describe(&self) -> &'static str {
        match self {
            Condition::I => "arrow neither between consecutive rows nor inside the top row",
            Condition::II => "path from a column back to an earlier column of the same row",
            Condition::III => "oriented cycle",
            Condition::IV => "same-row vertices of one component not joined by an oriented path",
            Condition::V => "crossing pair of down arrows",
            Condition::VI => "adjoining pair without a completing subgraph",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Vec<Vertex>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid relation graph");
        }
        writeln!(f, "not a relation graph: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            let witness: Vec<String> = v.witness.iter().map(|w| w.to_string()).collect();
            writeln!(
                f,
                "  ({}) {}: {}",
                v.condition,
                v.condition.describe(),
                witness.join(" ")
            )?;
        }
        Ok(())
    }
}

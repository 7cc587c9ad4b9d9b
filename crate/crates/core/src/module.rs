//! A relation module: a relation graph together with a seed realization.
//! Basis tableaux are addressed by their shift from the seed.

use num_traits::ToPrimitive;
use smallvec::SmallVec;

use crate::derived::{
    arrow_bound, build_gbar, check_rows_distinct, graph_of_diffs, is_realization, DiffTable,
    Differences, EdgeSet, Shifted,
};
use crate::error::{Error, Result};
use crate::graph::{Arrow, TriGraph};
use crate::tableau::{vertex_count, ShiftVector, Tableau, Vertex};
use crate::{Poly, Rational};

/// Machine-word rationals for modules whose entries are all rational.
pub type SmallQ = num_rational::Ratio<i64>;

/// Bitmask over the integral down pairs that lie outside `Gbar`.
pub type SignatureBits = SmallVec<[u64; 2]>;

/// The span of all realizations of `graph` in the integral orbit of `seed`.
#[derive(Clone, Debug)]
pub struct RelationModule {
    graph: TriGraph,
    closure: TriGraph,
    seed: Tableau,
    diffs: DiffTable,
    entry_polys: Vec<Poly>,
    /// The entries as machine-word rationals, when every entry is rational.
    small_entries: Option<Vec<SmallQ>>,
    /// `(from, to, m)`: the arrow holds at `z` iff `z[from] - z[to] >= m`.
    constraints: Vec<(usize, usize, i64)>,
    /// Down pairs with integral seed difference, not arrows of `Gbar`, whose
    /// reverse is not reachable in the graph.
    candidates: Vec<Arrow>,
}

impl RelationModule {
    /// Fails with `NotRealization` unless `seed` realizes `graph`.
    pub fn new(graph: TriGraph, seed: Tableau) -> Result<Self> {
        if graph.n() != seed.n() {
            return Err(Error::RankMismatch {
                expected: graph.n(),
                found: seed.n(),
            });
        }
        if !is_realization(&seed, &graph) {
            return Err(Error::NotRealization);
        }
        check_rows_distinct(&seed)?;
        let diffs = DiffTable::of(&seed);
        let constraints = graph
            .arrows()
            .iter()
            .map(|a| {
                let d = diffs.diff(a.from, a.to).expect("realizations are integral on arrows");
                (a.from.index(), a.to.index(), arrow_bound(a) - d)
            })
            .collect();
        let closure = build_gbar(&graph);
        let reach = graph.reachability();
        let n = graph.n();
        let mut candidates = Vec::new();
        for k in 1..n {
            for a in Vertex::row_vertices(k + 1) {
                for b in Vertex::row_vertices(k) {
                    // a path b ~> a climbs a row, forcing l_b > l_a forever
                    let open = !closure.contains(a, b) && !reach.reachable(b, a);
                    if diffs.diff(a, b).is_some() && open {
                        candidates.push(Arrow::new(a, b));
                    }
                }
            }
        }
        let entry_polys = seed.entries().iter().map(|e| e.to_poly()).collect();
        let small_entries = seed
            .entries()
            .iter()
            .map(|e| {
                if !e.is_rational() {
                    return None;
                }
                let (p, q) = (e.offset.numer().to_i64()?, e.offset.denom().to_i64()?);
                Some(SmallQ::new(p, q))
            })
            .collect();
        Ok(RelationModule {
            graph,
            closure,
            seed,
            diffs,
            entry_polys,
            small_entries,
            constraints,
            candidates,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &TriGraph {
        &self.graph
    }

    /// `Gbar` of the module's graph.
    pub fn closure(&self) -> &TriGraph {
        &self.closure
    }

    pub fn seed(&self) -> &Tableau {
        &self.seed
    }

    /// Integral down pairs outside `Gbar` that some shift can orient
    /// downwards: the coordinates of every reduced signature in this module.
    pub fn signature_pairs(&self) -> &[Arrow] {
        &self.candidates
    }

    pub(crate) fn small_entries(&self) -> Option<&[SmallQ]> {
        self.small_entries.as_deref()
    }

    pub fn tableau(&self, z: &ShiftVector) -> Tableau {
        self.seed.shift(z).expect("shift rank matches the module")
    }

    /// The shift locating `t` in this module's orbit.
    pub fn locate(&self, t: &Tableau) -> Result<ShiftVector> {
        t.offset_from(&self.seed)
    }

    /// Whether `T(L + z)` is a basis tableau. The row condition is shift
    /// invariant, so only the graph inequalities are checked.
    pub fn contains(&self, z: &ShiftVector) -> bool {
        z.n() == self.n() && self.contains_values(z.values())
    }

    pub(crate) fn contains_values(&self, z: &[i64]) -> bool {
        self.constraints
            .iter()
            .all(|&(a, b, m)| z[a] - z[b] >= m)
    }

    pub fn diffs_at<'a>(&'a self, z: &'a ShiftVector) -> Shifted<'a> {
        self.diffs.shifted(z)
    }

    /// `l_a - l_b` at the seed, when integral.
    pub fn seed_diff(&self, a: Vertex, b: Vertex) -> Option<i64> {
        self.diffs.diff(a, b)
    }

    /// `G(L + z)`.
    pub fn graph_at(&self, z: &ShiftVector) -> TriGraph {
        graph_of_diffs(&self.diffs.shifted(z))
    }

    /// The entry at `v` of `T(L + z)` as a polynomial in the symbols.
    pub fn entry_poly(&self, z: &ShiftVector, v: Vertex) -> Poly {
        let p = &self.entry_polys[v.index()];
        match z.get(v) {
            0 => p.clone(),
            s => p.add_constant(&Rational::from_integer(s.into())),
        }
    }

    /// `l_a - l_b` in `T(L + z)` as a polynomial.
    pub fn diff_poly(&self, z: &ShiftVector, a: Vertex, b: Vertex) -> Poly {
        let base = &self.entry_polys[a.index()] - &self.entry_polys[b.index()];
        match z.get(a) - z.get(b) {
            0 => base,
            s => base.add_constant(&Rational::from_integer(s.into())),
        }
    }

    /// The reduced signature `E+(G(L + z) \ Gbar)`.
    pub fn signature(&self, z: &ShiftVector) -> EdgeSet {
        let bits = self.signature_bits(z.values());
        EdgeSet::new(
            self.candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| bits[i / 64] >> (i % 64) & 1 == 1)
                .map(|(_, a)| *a),
        )
        .expect("candidates are down arrows")
    }

    pub(crate) fn signature_bits(&self, z: &[i64]) -> SignatureBits {
        let mut bits: SignatureBits = SmallVec::from_elem(0, self.candidates.len().div_ceil(64).max(1));
        for (i, a) in self.candidates.iter().enumerate() {
            let (f, t) = (a.from.index(), a.to.index());
            let d = self.diffs.raw(f, t).expect("candidates are integral") + z[f] - z[t];
            if d >= 0 {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    }

    /// All basis shifts with max-norm at most `radius`, in lexicographic
    /// order of their vertex-index coordinates.
    pub fn window(&self, radius: i64) -> Vec<ShiftVector> {
        let mut out = Vec::new();
        for first in -radius..=radius {
            self.visit_window(radius, first, &mut |z| {
                out.push(ShiftVector::from_values(self.n(), z.to_vec()).expect("top row is zero"))
            });
        }
        out
    }

    /// Calls `f` on the raw coordinates of every basis shift with max-norm at
    /// most `radius` whose coordinate at vertex `(1,1)` equals `first`.
    pub fn visit_window(&self, radius: i64, first: i64, f: &mut impl FnMut(&[i64])) {
        if first.abs() > radius {
            return;
        }
        let n = self.n();
        let free = vertex_count(n - 1);
        let mut z = vec![0i64; vertex_count(n)];
        z[0] = first;
        if self.prefix_ok(0, &z) {
            self.window_rec(1, free, radius, &mut z, f);
        }
    }

    fn window_rec(&self, pos: usize, free: usize, radius: i64, z: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if pos == free {
            if self.contains_values(z) {
                f(z);
            }
            return;
        }
        for x in -radius..=radius {
            z[pos] = x;
            if self.prefix_ok(pos, z) {
                self.window_rec(pos + 1, free, radius, z, f);
            }
        }
        z[pos] = 0;
    }

    /// Constraints whose endpoints are all decided once `pos` is fixed.
    fn prefix_ok(&self, pos: usize, z: &[i64]) -> bool {
        let n = self.n();
        let top = vertex_count(n - 1);
        let decided = |i: usize| i <= pos || i >= top;
        self.constraints.iter().all(|&(a, b, m)| {
            !(decided(a) && decided(b)) || (a != pos && b != pos) || z[a] - z[b] >= m
        })
    }
}

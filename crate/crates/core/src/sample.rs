//! Random realizations of relation graphs, for property tests and the
//! command line `verify` sampler.

use rand::Rng;

use crate::derived::arrow_bound;
use crate::error::{Error, Result};
use crate::graph::TriGraph;
use crate::tableau::{vertex_count, Entry, Tableau, Vertex};
use crate::Rational;

/// A random realization of `g` with rational entries.
///
/// Each undirected component of `g` gets its own residue class modulo the
/// integers, so the row condition holds. Integer parts are assigned along a
/// reverse topological order, each vertex sitting `spread` or fewer above
/// the tightest bound its out-arrows impose. Fails on graphs with a cycle.
pub fn random_realization(g: &TriGraph, rng: &mut impl Rng, spread: i64) -> Result<Tableau> {
    let n = g.n();
    let size = vertex_count(n);
    let comp = g.components();
    let mut roots: Vec<usize> = comp.clone();
    roots.sort_unstable();
    roots.dedup();
    // distinct fractional parts (c + 1) / q for the components
    let q = (roots.len() as i64 + 1) * 2 + 1;
    let class_of = |v: usize| roots.binary_search(&comp[v]).expect("component root") as i64;

    let order = topological_order(g).ok_or(Error::NotRealization)?;
    let mut value = vec![0i64; size];
    for &v in order.iter().rev() {
        let vertex = Vertex::from_index(v);
        let floor = g
            .arrows()
            .iter()
            .filter(|a| a.from == vertex)
            .map(|a| value[a.to.index()] + arrow_bound(a))
            .max();
        value[v] = match floor {
            Some(f) => f + rng.gen_range(0..=spread),
            None => rng.gen_range(-spread..=spread),
        };
    }
    let rows = (1..=n)
        .rev()
        .map(|k| {
            Vertex::row_vertices(k)
                .map(|v| {
                    let i = v.index();
                    let frac = Rational::new((class_of(i) + 1).into(), q.into());
                    Entry::rational(Rational::from_integer(value[i].into()) + frac)
                })
                .collect()
        })
        .collect();
    Tableau::from_rows(rows)
}

/// Vertex indices in an order where every arrow points forward.
fn topological_order(g: &TriGraph) -> Option<Vec<usize>> {
    let size = vertex_count(g.n());
    let succ = g.successors();
    let mut indegree = vec![0usize; size];
    for s in &succ {
        for &w in s {
            indegree[w] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..size).filter(|&v| indegree[v] == 0).collect();
    let mut out = Vec::with_capacity(size);
    while let Some(v) = ready.pop() {
        out.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    (out.len() == size).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{check_rows_distinct, is_realization};
    use crate::presets;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_realizations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut graphs: Vec<TriGraph> = presets::family_graphs().into_iter().map(|(_, g)| g).collect();
        graphs.extend([presets::diamond_graph(), presets::closure_demo_graph(), presets::rank3_graph()]);
        for g in &graphs {
            for _ in 0..20 {
                let t = random_realization(g, &mut rng, 3).unwrap();
                assert!(is_realization(&t, g), "{t}");
                assert!(check_rows_distinct(&t).is_ok());
            }
        }
    }

    #[test]
    fn cycles_have_no_realization() {
        let g = TriGraph::from_pairs(3, &[((2, 1), (3, 1)), ((3, 1), (2, 1))]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_realization(&g, &mut rng, 2).is_err());
    }
}

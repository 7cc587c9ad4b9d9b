//! Submodule bases, cyclic generation, the constructive unit-step
//! decomposition, and the windowed classification of reduced signatures.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::action::{Action, Generator};
use crate::derived::{maximal_chains, EdgeSet};
use crate::error::{Error, Result};
use crate::module::{RelationModule, SignatureBits};
use crate::tableau::{ShiftVector, Vertex};

fn bits_subset(a: &SignatureBits, b: &SignatureBits) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x & !y == 0)
}

fn check_member(m: &RelationModule, z: &ShiftVector) -> Result<()> {
    if z.n() != m.n() {
        return Err(Error::RankMismatch {
            expected: m.n(),
            found: z.n(),
        });
    }
    if !m.contains(z) {
        return Err(Error::NotRealization);
    }
    Ok(())
}

/// Whether `T(L + s)` lies in the basis of the submodule generated by
/// `T(L + r)`: `E+(G(R)) <= E+(G(S))`.
pub fn in_submodule_basis(m: &RelationModule, s: &ShiftVector, r: &ShiftVector) -> Result<bool> {
    check_member(m, s)?;
    check_member(m, r)?;
    Ok(bits_subset(&m.signature_bits(r.values()), &m.signature_bits(s.values())))
}

/// `T(L + r)` and `T(L + q)` generate the same submodule.
pub fn same_cyclic(m: &RelationModule, r: &ShiftVector, q: &ShiftVector) -> Result<bool> {
    check_member(m, r)?;
    check_member(m, q)?;
    Ok(m.signature_bits(r.values()) == m.signature_bits(q.values()))
}

/// `T(L + r)` generates the whole module.
pub fn is_cyclic_generator(m: &RelationModule, r: &ShiftVector) -> Result<bool> {
    check_member(m, r)?;
    Ok(m.signature(r).is_empty())
}

/// Sandwich test for moving coordinate `v` of `r` all the way to `r + z`.
fn step_ok(m: &RelationModule, r: &ShiftVector, z: &ShiftVector, v: Vertex, lower: &SignatureBits, upper: &SignatureBits) -> bool {
    let mid = r.bump(v, z.get(v));
    m.contains(&mid) && {
        let bits = m.signature_bits(mid.values());
        bits_subset(lower, &bits) && bits_subset(&bits, upper)
    }
}

/// A vertex `v` with `z_v != 0` such that `T(R + z_v delta^v)` is a basis
/// tableau whose signature sits between those of `T(R)` and `T(R + z)`.
///
/// Sources of maximal `Gbar`-chains with positive shift and sinks with
/// negative shift are tried first, then every other vertex of the support;
/// ties break in row-major order.
pub fn find_step(m: &RelationModule, r: &ShiftVector, z: &ShiftVector) -> Result<Vertex> {
    check_member(m, r)?;
    if z.is_zero() {
        return Err(Error::ZeroShift);
    }
    let target = r + z;
    if !m.contains(&target) {
        return Err(Error::NotMonotone(format!("[{target}] is not a basis tableau")));
    }
    let lower = m.signature_bits(r.values());
    let upper = m.signature_bits(target.values());
    if !bits_subset(&lower, &upper) {
        return Err(Error::NotMonotone(format!(
            "signature {} of the start is not contained in {} of the end",
            m.signature(r),
            m.signature(&target)
        )));
    }
    let mut preferred: Vec<Vertex> = maximal_chains(m.closure(), z)?
        .into_iter()
        .flat_map(|c| {
            let (first, last) = (c.0[0], *c.0.last().expect("chains are nonempty"));
            let mut ends = Vec::new();
            if z.get(first) > 0 {
                ends.push(first);
            }
            if z.get(last) < 0 {
                ends.push(last);
            }
            ends
        })
        .collect();
    preferred.sort();
    preferred.dedup();
    let rest: Vec<Vertex> = z.support().into_iter().filter(|v| !preferred.contains(v)).collect();
    preferred
        .into_iter()
        .chain(rest)
        .find(|&v| step_ok(m, r, z, v, &lower, &upper))
        .ok_or_else(|| Error::StepNotFound(z.to_string()))
}

/// A unit shift `sign * delta^v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct UnitStep {
    pub vertex: Vertex,
    pub sign: i64,
}

impl UnitStep {
    pub fn to_shift(&self, n: usize) -> ShiftVector {
        ShiftVector::delta(n, self.vertex.row, self.vertex.col, self.sign).expect("steps avoid the top row")
    }
}

impl fmt::Display for UnitStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}delta{}", if self.sign > 0 { "+" } else { "-" }, self.vertex)
    }
}

/// Unit steps from `T(R)` to `T(R + z)` through basis tableaux with
/// nondecreasing signatures. Whole coordinate runs are taken one at a time,
/// each chosen by [`find_step`].
pub fn decompose_translation(m: &RelationModule, r: &ShiftVector, z: &ShiftVector) -> Result<Vec<UnitStep>> {
    let mut steps = Vec::new();
    let mut here = r.clone();
    let mut left = z.clone();
    while !left.is_zero() {
        let v = find_step(m, &here, &left)?;
        let run = left.get(v);
        let sign = run.signum();
        for _ in 0..run.abs() {
            steps.push(UnitStep { vertex: v, sign });
        }
        here = here.bump(v, run);
        left = left.bump(v, -run);
    }
    Ok(steps)
}

/// Some generator maps `T(L + r)` to a vector with nonzero coefficient on
/// `T(L + q)`. Only `E_{kk}`, `E_{k,k+1}` and `E_{k+1,k}` are considered, so
/// `q` must equal `r` or differ from it by one unit step.
pub fn precedes_one<A: Action + ?Sized>(a: &A, r: &ShiftVector, q: &ShiftVector) -> Result<bool> {
    let m = a.module();
    check_member(m, r)?;
    check_member(m, q)?;
    let d = q - r;
    let support = d.support();
    let gens: Vec<Generator> = match support[..] {
        [] => (1..=m.n()).map(Generator::diagonal).collect(),
        [v] if d.get(v) == 1 => vec![Generator::raising(v.row)],
        [v] if d.get(v) == -1 => vec![Generator::lowering(v.row)],
        _ => return Ok(false),
    };
    for g in gens {
        if a.basis_image(g, r)?.iter().any(|(t, c)| t == q && !c.is_zero()) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One achieved reduced signature in a window.
#[derive(Clone, Debug)]
pub struct SignatureClass {
    pub signature: EdgeSet,
    pub count: usize,
    /// The lexicographically least shift in the window with this signature.
    pub representative: ShiftVector,
}

/// Reduced signatures achieved in a finite window, with their inclusion
/// order.
#[derive(Clone, Debug)]
pub struct WindowReport {
    pub radius: i64,
    pub window_size: usize,
    /// Integral down pairs that can vary across the module.
    pub pairs: Vec<crate::graph::Arrow>,
    /// Sorted by size, then by edge set.
    pub classes: Vec<SignatureClass>,
    /// `(a, b)`: class `a`'s signature is covered by class `b`'s under
    /// inclusion.
    pub covers: Vec<(usize, usize)>,
    /// Classes with inclusion-minimal signature.
    pub minimal: Vec<usize>,
    /// Classes with inclusion-maximal signature: simple submodule candidates.
    pub maximal: Vec<usize>,
    /// The class with empty signature, whose tableaux generate the module.
    pub generators: Option<usize>,
}

/// Partitions the radius-`radius` window of `m` by reduced signature.
pub fn classify_window(m: &RelationModule, radius: i64) -> WindowReport {
    let partial: Vec<BTreeMap<SignatureBits, (usize, Vec<i64>)>> = (-radius..=radius)
        .into_par_iter()
        .map(|first| {
            let mut map: BTreeMap<SignatureBits, (usize, Vec<i64>)> = BTreeMap::new();
            m.visit_window(radius, first, &mut |z| {
                let e = map.entry(m.signature_bits(z)).or_insert_with(|| (0, z.to_vec()));
                e.0 += 1;
                if z < &e.1[..] {
                    e.1 = z.to_vec();
                }
            });
            map
        })
        .collect();
    let mut merged: BTreeMap<SignatureBits, (usize, Vec<i64>)> = BTreeMap::new();
    for map in partial {
        for (bits, (count, rep)) in map {
            let e = merged.entry(bits).or_insert_with(|| (0, rep.clone()));
            e.0 += count;
            if rep < e.1 {
                e.1 = rep;
            }
        }
    }
    let window_size = merged.values().map(|(c, _)| c).sum();
    let mut entries: Vec<(SignatureBits, SignatureClass)> = merged
        .into_iter()
        .map(|(bits, (count, rep))| {
            let representative = ShiftVector::from_values(m.n(), rep).expect("window shifts are valid");
            let signature = m.signature(&representative);
            (bits, SignatureClass { signature, count, representative })
        })
        .collect();
    entries.sort_by(|a, b| {
        (a.1.signature.len(), &a.1.signature).cmp(&(b.1.signature.len(), &b.1.signature))
    });
    let bits: Vec<SignatureBits> = entries.iter().map(|(b, _)| b.clone()).collect();
    let classes: Vec<SignatureClass> = entries.into_iter().map(|(_, c)| c).collect();
    let k = classes.len();
    let below = |a: usize, b: usize| a != b && bits_subset(&bits[a], &bits[b]);
    let mut covers = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                covers.push((a, b));
            }
        }
    }
    let minimal = (0..k).filter(|&a| !(0..k).any(|c| below(c, a))).collect();
    let maximal = (0..k).filter(|&a| !(0..k).any(|c| below(a, c))).collect();
    let generators = classes.iter().position(|c| c.signature.is_empty());
    WindowReport {
        radius,
        window_size,
        pairs: m.signature_pairs().to_vec(),
        classes,
        covers,
        minimal,
        maximal,
        generators,
    }
}

impl WindowReport {
    /// The inclusion lattice as a DOT digraph, edges pointing from smaller to
    /// larger signatures.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph signatures {\n  rankdir=BT;\n");
        out.push_str(&format!("  label=\"radius {}, {} tableaux\";\n", self.radius, self.window_size));
        for (i, c) in self.classes.iter().enumerate() {
            let mut tags = Vec::new();
            if Some(i) == self.generators {
                tags.push("generators");
            }
            if self.maximal.contains(&i) {
                tags.push("simple submodule candidate");
            }
            let tag = if tags.is_empty() { String::new() } else { format!("\\n{}", tags.join(", ")) };
            out.push_str(&format!(
                "  s{i} [label=\"{}\\n{} tableaux{tag}\"];\n",
                c.signature, c.count
            ));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  s{a} -> s{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let edge = |a: &crate::graph::Arrow| {
            json!({"from": [a.from.row, a.from.col], "to": [a.to.row, a.to.col]})
        };
        json!({
            "radius": self.radius,
            "window_size": self.window_size,
            "pairs": self.pairs.iter().map(edge).collect::<Vec<_>>(),
            "signatures": self.classes.iter().map(|c| json!({
                "edges": c.signature.iter().map(edge).collect::<Vec<_>>(),
                "count": c.count,
                "representative": c.representative.to_string(),
            })).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "minimal": self.minimal,
            "maximal": self.maximal,
            "generators": self.generators,
        })
    }
}

impl fmt::Display for WindowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} signatures in the radius-{} window ({} tableaux)",
            self.classes.len(),
            self.radius,
            self.window_size
        )?;
        for (i, c) in self.classes.iter().enumerate() {
            let mut tags = Vec::new();
            if Some(i) == self.generators {
                tags.push("generators");
            }
            if self.minimal.contains(&i) {
                tags.push("minimal");
            }
            if self.maximal.contains(&i) {
                tags.push("maximal: simple submodule candidate");
            }
            let tag = if tags.is_empty() { String::new() } else { format!("  [{}]", tags.join("; ")) };
            writeln!(f, "  {:>3}  {:>8}  {}{tag}", i, c.count, c.signature)?;
        }
        Ok(())
    }
}

/// Pairs of distinct window tableaux with equal character keys.
pub fn separation_collisions(m: &RelationModule, window: &[ShiftVector]) -> usize {
    let mut seen = HashSet::with_capacity(window.len());
    window
        .iter()
        .filter(|z| !seen.insert(m.tableau(z).character_key()))
        .count()
}

//! Relation checks in machine-word rationals, for modules whose entries are
//! all rational. Every operation is overflow-checked; `None` sends the
//! tableau back to the symbolic path.

use std::rc::Rc;

use rustc_hash::FxHashMap;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};
use smallvec::SmallVec;

use super::{Generator, Relation};
use crate::error::{Error, Result};
use crate::module::{RelationModule, SmallQ};
use crate::tableau::{vertex_count, Vertex};

const BITS: usize = 12;
const BIAS: i64 = 1 << (BITS - 1);
/// Leaves room for the few unit steps a relation takes from its tableau.
const LIMIT: i64 = BIAS - 8;
const CACHE_LIMIT: usize = 400_000;

/// A shift packed into biased 12-bit fields, one per vertex below the top.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(super) struct Packed(u128);

pub(super) fn pack(z: &[i64], free: usize) -> Option<Packed> {
    if free * BITS > 128 {
        return None;
    }
    let mut p = 0u128;
    for (i, &x) in z[..free].iter().enumerate() {
        if x.abs() > LIMIT {
            return None;
        }
        p |= ((x + BIAS) as u128) << (BITS * i);
    }
    Some(Packed(p))
}

pub(super) fn unpack(p: Packed, out: &mut [i64], free: usize) {
    for (i, x) in out.iter_mut().enumerate() {
        *x = if i < free {
            ((p.0 >> (BITS * i)) & ((1 << BITS) - 1)) as i64 - BIAS
        } else {
            0
        };
    }
}

fn bump(p: Packed, v: usize, step: i64) -> Packed {
    let unit = 1u128 << (BITS * v);
    Packed(if step > 0 { p.0 + unit } else { p.0 - unit })
}

pub(super) type Img = SmallVec<[(Packed, SmallQ); 4]>;
pub(super) type Acc = SmallVec<[(Packed, SmallQ); 16]>;

pub(super) struct FastCache<'a> {
    module: &'a RelationModule,
    entries: &'a [SmallQ],
    gens: &'a [Generator],
    free: usize,
    scratch: Vec<i64>,
    map: FxHashMap<(Packed, u8), Rc<Img>>,
}

impl<'a> FastCache<'a> {
    pub(super) fn new(module: &'a RelationModule, entries: &'a [SmallQ], gens: &'a [Generator]) -> Self {
        let n = module.n();
        FastCache {
            module,
            entries,
            gens,
            free: vertex_count(n - 1),
            scratch: vec![0; vertex_count(n)],
            map: FxHashMap::default(),
        }
    }

    fn value(&self, v: Vertex) -> Option<SmallQ> {
        self.entries[v.index()].checked_add(&SmallQ::from_integer(self.scratch[v.index()]))
    }

    fn diff(&self, a: Vertex, b: Vertex) -> Option<SmallQ> {
        self.value(a)?.checked_sub(&self.value(b)?)
    }

    /// `Ok(None)` on overflow.
    fn compute(&mut self, gi: u8, p: Packed) -> Result<Option<Img>> {
        let g = self.gens[gi as usize];
        unpack(p, &mut self.scratch, self.free);
        let mut out = Img::new();
        if g.i == g.j {
            let k = g.i;
            let mut c = SmallQ::from_integer(k as i64 - 1);
            for v in Vertex::row_vertices(k) {
                let Some(s) = self.value(v).and_then(|x| c.checked_add(&x)) else {
                    return Ok(None);
                };
                c = s;
            }
            if k > 1 {
                for v in Vertex::row_vertices(k - 1) {
                    let Some(s) = self.value(v).and_then(|x| c.checked_sub(&x)) else {
                        return Ok(None);
                    };
                    c = s;
                }
            }
            if !c.is_zero() {
                out.push((p, c));
            }
            return Ok(Some(out));
        }
        let (k, step) = if g.j == g.i + 1 { (g.i, 1) } else { (g.j, -1) };
        let other = if step == 1 { k + 1 } else { k - 1 };
        for i in 1..=k {
            let v = Vertex::new(k, i);
            let vi = v.index();
            self.scratch[vi] += step;
            let inside = self.module.contains_values(&self.scratch);
            self.scratch[vi] -= step;
            if !inside {
                continue;
            }
            let mut c = SmallQ::one();
            for w in Vertex::row_vertices(other) {
                let Some(x) = self.diff(v, w).and_then(|d| c.checked_mul(&d)) else {
                    return Ok(None);
                };
                c = x;
            }
            if c.is_zero() {
                continue;
            }
            for w in Vertex::row_vertices(k).filter(|w| *w != v) {
                let Some(d) = self.diff(v, w) else { return Ok(None) };
                if d.is_zero() {
                    return Err(Error::DegenerateRow(v, w));
                }
                let Some(x) = c.checked_div(&d) else { return Ok(None) };
                c = x;
            }
            let c = if step == 1 { SmallQ::zero().checked_sub(&c) } else { Some(c) };
            let Some(c) = c else { return Ok(None) };
            out.push((bump(p, vi, step), c));
        }
        Ok(Some(out))
    }

    fn image(&mut self, gi: u8, p: Packed) -> Result<Option<Rc<Img>>> {
        if let Some(t) = self.map.get(&(p, gi)) {
            return Ok(Some(t.clone()));
        }
        let Some(img) = self.compute(gi, p)? else {
            return Ok(None);
        };
        if self.map.len() >= CACHE_LIMIT {
            self.map.clear();
        }
        let img = Rc::new(img);
        self.map.insert((p, gi), img.clone());
        Ok(Some(img))
    }

    fn compose_into(&mut self, acc: &mut Acc, x: u8, y: u8, p: Packed, negate: bool) -> Result<Option<()>> {
        let Some(first) = self.image(y, p)? else { return Ok(None) };
        for (t, c) in first.iter() {
            let Some(second) = self.image(x, *t)? else { return Ok(None) };
            for (u, d) in second.iter() {
                let prod = c.checked_mul(d);
                let prod = if negate { prod.and_then(|x| SmallQ::zero().checked_sub(&x)) } else { prod };
                let Some(prod) = prod else { return Ok(None) };
                if accumulate(acc, *u, prod).is_none() {
                    return Ok(None);
                }
            }
        }
        Ok(Some(()))
    }

    /// The nonzero terms of `[x, y] - rhs` at `p`, or `Ok(None)` on overflow.
    pub(super) fn residual(&mut self, rel: &IndexedRelation, p: Packed) -> Result<Option<Acc>> {
        let mut acc = Acc::new();
        if self.compose_into(&mut acc, rel.x, rel.y, p, false)?.is_none()
            || self.compose_into(&mut acc, rel.y, rel.x, p, true)?.is_none()
        {
            return Ok(None);
        }
        for &(c, g) in &rel.rhs {
            let Some(img) = self.image(g, p)? else { return Ok(None) };
            for (u, d) in img.iter() {
                let Some(term) = d.checked_mul(&SmallQ::from_integer(-c)) else {
                    return Ok(None);
                };
                if accumulate(&mut acc, *u, term).is_none() {
                    return Ok(None);
                }
            }
        }
        acc.retain(|(_, c)| !c.is_zero());
        Ok(Some(acc))
    }
}

fn accumulate(acc: &mut Acc, u: Packed, c: SmallQ) -> Option<()> {
    match acc.iter_mut().find(|(t, _)| *t == u) {
        Some((_, a)) => *a = a.checked_add(&c)?,
        None => acc.push((u, c)),
    }
    Some(())
}

/// A relation with generators replaced by their position in the generator
/// list.
pub(super) struct IndexedRelation {
    x: u8,
    y: u8,
    rhs: Vec<(i64, u8)>,
}

impl IndexedRelation {
    pub(super) fn new(rel: &Relation, gens: &[Generator]) -> Self {
        let idx = |g: Generator| gens.iter().position(|h| *h == g).expect("relations use listed generators") as u8;
        IndexedRelation {
            x: idx(rel.x),
            y: idx(rel.y),
            rhs: rel.rhs.iter().map(|&(c, g)| (c, idx(g))).collect(),
        }
    }
}

//! Gelfand-Tsetlin tableaux: vertices, entries, integral shifts and the
//! integer-difference predicate every graph construction is built on.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Var};
use crate::{Poly, Rational};

/// Position `(row, col)` of the triangular vertex set, `1 <= col <= row <= n`.
///
/// Ordered row-major from the bottom: `(1,1) < (2,1) < (2,2) < (3,1) < ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        1 <= self.col && self.col <= self.row && self.row <= n
    }

    pub fn check(self, n: usize) -> Result<Self> {
        if self.is_valid(n) {
            Ok(self)
        } else {
            Err(Error::InvalidVertex(self, n))
        }
    }

    /// Position in the row-major enumeration; independent of `n`.
    pub fn index(&self) -> usize {
        (self.row - 1) * self.row / 2 + self.col - 1
    }

    pub fn from_index(index: usize) -> Self {
        let mut row = 1;
        while row * (row + 1) / 2 <= index {
            row += 1;
        }
        Vertex::new(row, index - (row - 1) * row / 2 + 1)
    }

    /// All vertices of the rank-`n` triangle in row-major order.
    pub fn all(n: usize) -> impl Iterator<Item = Vertex> {
        (1..=n).flat_map(|row| (1..=row).map(move |col| Vertex::new(row, col)))
    }

    pub fn row_vertices(row: usize) -> impl Iterator<Item = Vertex> {
        (1..=row).map(move |col| Vertex::new(row, col))
    }
}

pub fn vertex_count(n: usize) -> usize {
    n * (n + 1) / 2
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A tableau entry `sym + offset`. An empty `sym` is the class of rationals.
///
/// Distinct symbols are algebraically independent, so two entries differ by an
/// integer only when they share a symbol and their offsets do.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Entry {
    pub sym: String,
    pub offset: Rational,
}

impl Entry {
    pub fn rational(offset: Rational) -> Self {
        Entry {
            sym: String::new(),
            offset,
        }
    }

    pub fn int(value: i64) -> Self {
        Self::rational(Rational::from_integer(value.into()))
    }

    pub fn symbolic(sym: &str, offset: Rational) -> Self {
        Entry {
            sym: sym.to_string(),
            offset,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.sym.is_empty()
    }

    pub fn shifted(&self, by: i64) -> Self {
        Entry {
            sym: self.sym.clone(),
            offset: &self.offset + Rational::from_integer(by.into()),
        }
    }

    /// The entry as a linear polynomial in its symbol's indeterminate.
    pub fn to_poly(&self) -> Poly {
        let base = if self.is_rational() {
            Poly::zero()
        } else {
            Poly::var(Var::new(&self.sym))
        };
        base.add_constant(&self.offset)
    }

    /// Parses `pi`, `pi+2`, `sqrt2-1/2`, `3/2` or `-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("ill-formed tableau entry {text:?}"));
        let starts_ident = text
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_');
        if !starts_ident {
            return parse_rational(text).map(Self::rational).ok_or_else(bad);
        }
        let split = text
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(text.len());
        let (sym, rest) = text.split_at(split);
        let rest = rest.trim();
        let offset = if rest.is_empty() {
            Rational::zero()
        } else if let Some(r) = rest.strip_prefix('+') {
            parse_rational(r).ok_or_else(bad)?
        } else if let Some(r) = rest.strip_prefix('-') {
            -parse_rational(r).ok_or_else(bad)?
        } else {
            return Err(bad());
        };
        Ok(Self::symbolic(sym, offset))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let off = if self.offset.is_integer() {
            self.offset.numer().to_string()
        } else {
            format!("{}/{}", self.offset.numer().abs(), self.offset.denom())
        };
        if self.is_rational() {
            if self.offset.is_integer() {
                write!(f, "{off}")
            } else {
                write!(f, "{}", format_rational(&self.offset))
            }
        } else if self.offset.is_zero() {
            write!(f, "{}", self.sym)
        } else if self.offset.is_negative() {
            write!(f, "{}-{}", self.sym, off.trim_start_matches('-'))
        } else {
            write!(f, "{}+{}", self.sym, off)
        }
    }
}

/// `a - b` when it is an integer: same symbol class and an integral offset
/// difference. `None` otherwise.
pub fn integer_difference(a: &Entry, b: &Entry) -> Option<i64> {
    if a.sym != b.sym {
        return None;
    }
    let d = &a.offset - &b.offset;
    if d.is_integer() {
        d.to_integer().to_i64()
    } else {
        None
    }
}

/// An integral shift of a tableau that vanishes on the top row.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ShiftVector {
    n: usize,
    z: Vec<i64>,
}

impl ShiftVector {
    pub fn zero(n: usize) -> Self {
        ShiftVector {
            n,
            z: vec![0; vertex_count(n)],
        }
    }

    /// Builds a shift from values in vertex-index order.
    pub fn from_values(n: usize, z: Vec<i64>) -> Result<Self> {
        if z.len() != vertex_count(n) {
            return Err(Error::Parse(format!(
                "shift needs {} coordinates for n = {n}, got {}",
                vertex_count(n),
                z.len()
            )));
        }
        if Vertex::row_vertices(n).any(|v| z[v.index()] != 0) {
            return Err(Error::TopRowImmutable(n));
        }
        Ok(ShiftVector { n, z })
    }

    /// `sign * delta^{k,i}`: the unit shift at vertex `(k, i)`.
    pub fn delta(n: usize, k: usize, i: usize, sign: i64) -> Result<Self> {
        let v = Vertex::new(k, i).check(n)?;
        if k == n {
            return Err(Error::TopRowImmutable(n));
        }
        let mut z = Self::zero(n);
        z.z[v.index()] = sign;
        Ok(z)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.z[v.index()]
    }

    pub fn values(&self) -> &[i64] {
        &self.z
    }

    /// Sets one coordinate; the top row stays immutable.
    pub fn with(&self, v: Vertex, value: i64) -> Result<Self> {
        let v = v.check(self.n)?;
        if v.row == self.n && value != 0 {
            return Err(Error::TopRowImmutable(self.n));
        }
        let mut out = self.clone();
        out.z[v.index()] = value;
        Ok(out)
    }

    /// Adds `by` at a vertex below the top row. Callers guarantee the row.
    pub(crate) fn bump(&self, v: Vertex, by: i64) -> Self {
        debug_assert!(v.row < self.n);
        let mut out = self.clone();
        out.z[v.index()] += by;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|&x| x == 0)
    }

    pub fn max_norm(&self) -> i64 {
        self.z.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Vertices with a nonzero coordinate, row-major.
    pub fn support(&self) -> Vec<Vertex> {
        Vertex::all(self.n).filter(|v| self.get(*v) != 0).collect()
    }

    /// Parses `0,0,0,0|-1,-1,-1|1,-1|-1`, top row first, columns left to right.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let rows = parse_rows(text)?;
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows in shift {text:?}")));
        }
        let mut z = vec![0; vertex_count(n)];
        for (top_index, row) in rows.iter().enumerate() {
            let k = n - top_index;
            if row.len() != k {
                return Err(Error::Parse(format!("row {k} of shift {text:?} needs {k} values")));
            }
            for (c, cell) in row.iter().enumerate() {
                z[Vertex::new(k, c + 1).index()] = cell
                    .parse()
                    .map_err(|_| Error::Parse(format!("ill-formed shift value {cell:?}")))?;
            }
        }
        Self::from_values(n, z)
    }
}

fn parse_rows(text: &str) -> Result<Vec<Vec<String>>> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    if body.trim().is_empty() {
        return Err(Error::Parse("empty row list".into()));
    }
    Ok(body
        .split('|')
        .map(|row| row.split(',').map(|c| c.trim().to_string()).collect())
        .collect())
}

impl fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (1..=self.n).rev() {
            if k != self.n {
                write!(f, "|")?;
            }
            let row: Vec<String> = Vertex::row_vertices(k)
                .map(|v| self.get(v).to_string())
                .collect();
            write!(f, "{}", row.join(","))?;
        }
        Ok(())
    }
}

impl Add for &ShiftVector {
    type Output = ShiftVector;
    fn add(self, rhs: &ShiftVector) -> ShiftVector {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        ShiftVector {
            n: self.n,
            z: self.z.iter().zip(&rhs.z).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ShiftVector {
    type Output = ShiftVector;
    fn sub(self, rhs: &ShiftVector) -> ShiftVector {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        ShiftVector {
            n: self.n,
            z: self.z.iter().zip(&rhs.z).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ShiftVector {
    type Output = ShiftVector;
    fn neg(self) -> ShiftVector {
        ShiftVector {
            n: self.n,
            z: self.z.iter().map(|a| -a).collect(),
        }
    }
}

/// Per-row sorted entry multisets, rows listed bottom (row 1) to top.
///
/// Gelfand-Tsetlin characters are symmetric in the entries of each row, so
/// this key stands in for the character when testing separation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CharacterKey(pub Vec<Vec<Entry>>);

/// A triangular array of entries indexed by the vertices of rank `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tableau {
    n: usize,
    entries: Vec<Entry>,
}

impl Tableau {
    /// Builds from rows listed top (row `n`) to bottom (row 1).
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let mut entries = vec![Entry::int(0); vertex_count(n)];
        for (top_index, row) in rows.into_iter().enumerate() {
            let k = n - top_index;
            if row.len() != k {
                return Err(Error::Parse(format!(
                    "row {k} must have {k} entries, found {}",
                    row.len()
                )));
            }
            for (c, e) in row.into_iter().enumerate() {
                entries[Vertex::new(k, c + 1).index()] = e;
            }
        }
        Ok(Tableau { n, entries })
    }

    /// Parses the compact form `pi,pi,0,-1 | pi,2,0 | 3,2 | 3`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_rows(text)?
            .into_iter()
            .map(|row| row.iter().map(|c| Entry::parse(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: Vertex) -> &Entry {
        &self.entries[v.index()]
    }

    /// Entries in vertex-index order.
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn row(&self, k: usize) -> &[Entry] {
        let start = Vertex::new(k, 1).index();
        &self.entries[start..start + k]
    }

    /// Rows top (row `n`) to bottom.
    pub fn rows_top_down(&self) -> Vec<Vec<Entry>> {
        (1..=self.n).rev().map(|k| self.row(k).to_vec()).collect()
    }

    pub fn shift(&self, z: &ShiftVector) -> Result<Tableau> {
        if z.n() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: z.n(),
            });
        }
        Ok(Tableau {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(z.values())
                .map(|(e, &s)| if s == 0 { e.clone() } else { e.shifted(s) })
                .collect(),
        })
    }

    /// The shift `z` with `self = base + z`, if one exists.
    pub fn offset_from(&self, base: &Tableau) -> Result<ShiftVector> {
        if self.n != base.n {
            return Err(Error::RankMismatch {
                expected: base.n,
                found: self.n,
            });
        }
        let z = self
            .entries
            .iter()
            .zip(&base.entries)
            .map(|(a, b)| integer_difference(a, b).ok_or(Error::DifferentModule))
            .collect::<Result<Vec<_>>>()?;
        ShiftVector::from_values(self.n, z).map_err(|_| Error::DifferentModule)
    }

    pub fn character_key(&self) -> CharacterKey {
        CharacterKey(
            (1..=self.n)
                .map(|k| {
                    let mut row = self.row(k).to_vec();
                    row.sort();
                    row
                })
                .collect(),
        )
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (1..=self.n)
            .rev()
            .map(|k| {
                self.row(k)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(text: &str) -> Entry {
        Entry::parse(text).unwrap()
    }

    #[test]
    fn vertex_indexing_round_trips() {
        for (i, v) in Vertex::all(6).enumerate() {
            assert_eq!(v.index(), i);
            assert_eq!(Vertex::from_index(i), v);
        }
    }

    #[test]
    fn integer_differences() {
        assert_eq!(integer_difference(&e("pi+2"), &e("pi")), Some(2));
        assert_eq!(integer_difference(&e("pi"), &e("sqrt2")), None);
        assert_eq!(integer_difference(&e("3/2"), &e("3/2")), Some(0));
        assert_eq!(integer_difference(&e("1/2"), &e("0")), None);
        assert_eq!(integer_difference(&e("pi"), &e("0")), None);
        assert_eq!(integer_difference(&e("pi-1/2"), &e("pi+1/2")), Some(-1));
    }

    #[test]
    fn entry_parse_and_display() {
        for text in ["pi", "pi+2", "sqrt2-1/2", "3/2", "-1", "0", "x_1+7"] {
            assert_eq!(e(text).to_string(), text);
        }
        assert_eq!(e(" pi + 2 ").to_string(), "pi+2");
        assert!(Entry::parse("pi*2").is_err());
        assert!(Entry::parse("1.5").is_err());
        assert!(Entry::parse("").is_err());
    }

    #[test]
    fn delta_and_shift() {
        let t2 = Tableau::parse("pi,2,1 | sqrt2,2 | 0").unwrap();
        let d = ShiftVector::delta(3, 1, 1, 1).unwrap();
        let moved = t2.shift(&d).unwrap();
        assert_eq!(moved.get(Vertex::new(1, 1)), &Entry::int(1));
        assert_eq!(moved.row(2), t2.row(2));
        assert_eq!(t2.shift(&ShiftVector::zero(3)).unwrap(), t2);
        assert_eq!(ShiftVector::delta(3, 3, 1, 1), Err(Error::TopRowImmutable(3)));
        assert!(ShiftVector::delta(3, 2, 3, 1).is_err());
        assert_eq!(moved.offset_from(&t2).unwrap(), d);
    }

    #[test]
    fn character_keys() {
        let a = Tableau::parse("5,4,1 | 3,2 | 2").unwrap();
        let b = Tableau::parse("5,4,1 | 2,3 | 2").unwrap();
        assert_eq!(a.character_key(), b.character_key());
        let t1 = Tableau::parse("pi,2,1 | 2,2 | 0").unwrap();
        let t2 = Tableau::parse("pi,2,1 | sqrt2,2 | 0").unwrap();
        assert_ne!(t1.character_key(), t2.character_key());
    }

    #[test]
    fn shift_text_round_trip() {
        let z = ShiftVector::parse(4, "0,0,0,0|-1,-1,-1|1,-1|-1").unwrap();
        assert_eq!(z.get(Vertex::new(2, 1)), 1);
        assert_eq!(z.get(Vertex::new(2, 2)), -1);
        assert_eq!(z.to_string(), "0,0,0,0|-1,-1,-1|1,-1|-1");
        assert_eq!(
            ShiftVector::parse(3, "1,0,0|0,0|0"),
            Err(Error::TopRowImmutable(3))
        );
    }
}

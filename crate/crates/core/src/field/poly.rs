use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::{Coeff, Var};

/// A monomial `x1^e1 * ... * xm^em`, stored sparsely as `(var, exponent)`
/// pairs sorted by variable with all exponents positive.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the smallest variable, then the next, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        let mut inner = SmallVec::new();
        inner.push((v, 1));
        Monomial(inner)
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut inner: SmallVec<[(Var, u32); 2]> = powers.into_iter().filter(|p| p.1 > 0).collect();
        inner.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: SmallVec<[(Var, u32); 2]> = SmallVec::new();
        for (v, e) in inner {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|p| &p.0 == v)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(other.0[j..].iter().cloned());
        Monomial(out)
    }

    /// `self / other`, if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Var, u32); 2]> = SmallVec::new();
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && &other.0[j].0 == v {
                let d = other.0[j].1;
                if d > *e {
                    return None;
                }
                if d < *e {
                    out.push((v.clone(), e - d));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *v {
                return None;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                        // `self` has a positive power of a variable that
                        // `other` lacks entirely: self is lex-larger.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if a.1 != b.1 {
                                return a.1.cmp(&b.1);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over `C`.
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so the leading term is the last one and structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        MPoly {
            terms: vec![(Monomial::var(v), C::one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.clone() + c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial (zero included), `None` otherwise.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> C {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    /// Total degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> u32 {
        self.terms.last().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.powers().iter().map(|p| p.0.clone()))
            .collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn add_constant(&self, c: &C) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        match terms.first_mut() {
            Some((m, a)) if m.is_one() => {
                *a = a.clone() + c.clone();
                if a.is_zero() {
                    terms.remove(0);
                }
            }
            _ => terms.insert(0, (Monomial::one(), c.clone())),
        }
        MPoly { terms }
    }

    fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.clone() * c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. A single polynomial is a Groebner basis of the ideal it
    /// generates, so the first leading term of the running remainder that
    /// `lt(divisor)` does not divide proves non-divisibility.
    pub fn div_exact(&self, divisor: &MPoly<C>) -> Option<Self> {
        let (lead_m, lead_c) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&(C::one() / c)));
        }
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lead_m)?;
            let qc = c.clone() / lead_c.clone();
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quotient.push((qm, qc));
        }
        Some(MPoly::from_terms(quotient))
    }

    /// Evaluates at a point; `None` if some variable has no value.
    pub fn eval(&self, value_of: &impl Fn(&Var) -> Option<C>) -> Option<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let x = value_of(v)?;
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let signed = |c: &C| if negate_other { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), signed(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.clone() + signed(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), signed(c))));
        MPoly { terms: out }
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &MPoly<C>) -> MPoly<C> {
        self.merge(rhs, false)
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &MPoly<C>) -> MPoly<C> {
        self.merge(rhs, true)
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &MPoly<C>) -> MPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc.push((ma.mul(mb), ca.clone() * cb.clone()));
            }
        }
        MPoly::from_terms(acc)
    }
}

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Leading term first, e.g. `pi^2 - 2*pi*sqrt2 + 1/2`.
impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coeff, FieldError, MPoly, Var};

/// An element `num / (f1 * ... * fr)` of the field of rational functions,
/// where every `fi` is a non-constant linear form.
///
/// Canonical form: every `fi` is monic (leading coefficient 1 in the monomial
/// order), the factor list is sorted, no `fi` divides `num`, and the zero
/// element has no factors. Two values are equal iff their canonical forms are
/// structurally equal, so `Eq` and `Hash` are derived.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc<C> {
    num: MPoly<C>,
    den: Vec<MPoly<C>>,
}

enum Factor<C> {
    Constant(C),
    Linear(C, MPoly<C>),
}

/// Splits a denominator factor into its leading coefficient and monic part.
fn classify_factor<C: Coeff>(f: &MPoly<C>) -> Result<Factor<C>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroDivision);
    }
    match f.degree() {
        0 => Ok(Factor::Constant(f.constant_term())),
        1 => {
            let lead = f.leading().expect("nonzero").1.clone();
            let monic = if lead.is_one() {
                f.clone()
            } else {
                f.scale(&(C::one() / lead.clone()))
            };
            Ok(Factor::Linear(lead, monic))
        }
        _ => Err(FieldError::NonLinearDenominator(f.to_string())),
    }
}

fn product<C: Coeff>(factors: &[MPoly<C>]) -> MPoly<C> {
    factors
        .iter()
        .fold(MPoly::one(), |acc, f| &acc * f)
}

/// Multiset difference and intersection of two sorted factor lists.
fn split_common<C: Coeff>(
    a: &[MPoly<C>],
    b: &[MPoly<C>],
) -> (Vec<MPoly<C>>, Vec<MPoly<C>>, Vec<MPoly<C>>) {
    let (mut common, mut only_a, mut only_b) = (Vec::new(), Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                only_a.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                only_b.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                common.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    only_a.extend_from_slice(&a[i..]);
    only_b.extend_from_slice(&b[j..]);
    (common, only_a, only_b)
}

impl<C: Coeff> RatFunc<C> {
    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        RatFunc {
            num: MPoly::constant(c),
            den: Vec::new(),
        }
    }

    pub fn from_poly(p: MPoly<C>) -> Self {
        RatFunc {
            num: p,
            den: Vec::new(),
        }
    }

    /// `num / prod(den)`, where each denominator factor has degree at most 1.
    pub fn new(num: MPoly<C>, den: impl IntoIterator<Item = MPoly<C>>) -> Result<Self, FieldError> {
        let mut scale = C::one();
        let mut linear = Vec::new();
        for f in den {
            match classify_factor(&f)? {
                Factor::Constant(c) => scale = scale * c,
                Factor::Linear(lead, monic) => {
                    scale = scale * lead;
                    linear.push(monic);
                }
            }
        }
        let num = num.scale(&(C::one() / scale));
        Ok(Self::reduce(num, linear))
    }

    /// `prod(num) / prod(den)` with every factor of degree at most 1.
    ///
    /// Constant factors are multiplied out as coefficients, which keeps purely
    /// rational inputs on a cheap path.
    pub fn from_factors(num: &[MPoly<C>], den: &[MPoly<C>]) -> Result<Self, FieldError> {
        let mut scale = C::one();
        let mut linear_den = Vec::new();
        for f in den {
            match classify_factor(f)? {
                Factor::Constant(c) => scale = scale / c,
                Factor::Linear(lead, monic) => {
                    scale = scale / lead;
                    linear_den.push(monic);
                }
            }
        }
        let mut poly: Option<MPoly<C>> = None;
        for f in num {
            match f.as_constant() {
                Some(c) => {
                    if c.is_zero() {
                        return Ok(Self::zero());
                    }
                    scale = scale * c;
                }
                None => {
                    poly = Some(match poly {
                        Some(p) => &p * f,
                        None => f.clone(),
                    })
                }
            }
        }
        let num = match poly {
            Some(p) => p.scale(&scale),
            None => MPoly::constant(scale),
        };
        if linear_den.is_empty() {
            return Ok(Self::from_poly(num));
        }
        Ok(Self::reduce(num, linear_den))
    }

    /// Sorts the monic factors and cancels every one that divides `num`
    /// exactly; a factor is removed only on a zero remainder.
    fn reduce(mut num: MPoly<C>, mut den: Vec<MPoly<C>>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        den.sort();
        let mut kept = Vec::with_capacity(den.len());
        for f in den {
            if num.degree() > 0 {
                if let Some(q) = num.div_exact(&f) {
                    num = q;
                    continue;
                }
            }
            kept.push(f);
        }
        RatFunc { num, den: kept }
    }

    pub fn numerator(&self) -> &MPoly<C> {
        &self.num
    }

    /// Monic linear factors of the denominator, sorted, with repetition.
    pub fn denominator_factors(&self) -> &[MPoly<C>] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        if self.den.is_empty() && other.den.is_empty() {
            let num = if subtract {
                &self.num - &other.num
            } else {
                &self.num + &other.num
            };
            return Self::from_poly(num);
        }
        let (common, only_self, only_other) = split_common(&self.den, &other.den);
        let left = &self.num * &product(&only_other);
        let right = &other.num * &product(&only_self);
        let num = if subtract { &left - &right } else { &left + &right };
        let mut den = common;
        den.extend(only_self);
        den.extend(only_other);
        Self::reduce(num, den)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDivision);
        }
        Self::new(product(&self.den), [self.num.clone()])
    }

    /// `self / other`. The divisor's numerator must have degree at most 1,
    /// since denominators are kept as products of linear forms.
    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self * &other.inv()?)
    }

    /// Evaluates at a point; `None` when a variable is unassigned or a
    /// denominator factor vanishes there.
    pub fn eval(&self, value_of: &impl Fn(&Var) -> Option<C>) -> Option<C> {
        let mut den = C::one();
        for f in &self.den {
            den = den * f.eval(value_of)?;
        }
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(value_of)? / den)
    }
}

impl<C: Coeff> Add for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self.combine(rhs, false)
    }
}

impl<C: Coeff> Sub for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self.combine(rhs, true)
    }
}

impl<C: Coeff> Mul for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        let num = &self.num * &rhs.num;
        if self.den.is_empty() && rhs.den.is_empty() {
            return RatFunc::from_poly(num);
        }
        let mut den = self.den.clone();
        den.extend(rhs.den.iter().cloned());
        RatFunc::reduce(num, den)
    }
}

impl<C: Coeff> Neg for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Coeff> Add for RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, rhs: RatFunc<C>) -> RatFunc<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, rhs: RatFunc<C>) -> RatFunc<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, rhs: RatFunc<C>) -> RatFunc<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders the factored form, e.g. `(pi - 3)/((pi - sqrt2)^2*(sqrt2 + 1))`.
impl<C: Coeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() == 1 {
            write!(f, "{}/", self.num)?;
        } else {
            write!(f, "({})/", self.num)?;
        }
        let mut groups: Vec<(&MPoly<C>, usize)> = Vec::new();
        for factor in &self.den {
            match groups.last_mut() {
                Some((g, count)) if *g == factor => *count += 1,
                _ => groups.push((factor, 1)),
            }
        }
        let single = groups.len() == 1 && groups[0].1 == 1;
        if !single {
            write!(f, "(")?;
        }
        for (idx, (g, count)) in groups.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "({g})")?;
            if *count > 1 {
                write!(f, "^{count}")?;
            }
        }
        if !single {
            write!(f, ")")?;
        }
        Ok(())
    }
}

//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^e₁·c₁ + ω^e₂·c₂ + ⋯ + ω^e_k·c_k` with
//! strictly decreasing exponents `e₁ > e₂ > ⋯ > e_k` (themselves ordinals in
//! normal form) and positive integer coefficients. Zero is the empty sum.
//! Every constructor normalizes, so structural equality is ordinal equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Default bound on exponent nesting accepted by [`omega_pow`].
pub const DEFAULT_DEPTH_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal nesting depth {depth} exceeds the configured bound {bound}")]
    DepthExceeded { depth: usize, bound: usize },
}

/// One summand `ω^exponent · coefficient` of a normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: BigUint,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω^({:?})·{}", self.exponent, self.coefficient)
    }
}

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from(1u64)
    }

    /// ω itself.
    pub fn omega() -> Self {
        Ordinal::monomial(Ordinal::one(), 1u32)
    }

    /// `ω^exponent · coefficient`; a zero coefficient yields zero.
    pub fn monomial(exponent: Ordinal, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds the ordinal sum of the given monomials, in the order given.
    ///
    /// Non-normal input (ascending exponents, repeated exponents) is
    /// normalized by ordinary ordinal addition, so `[(1, 1), (2, 1)]` is
    /// `ω + ω² = ω²`.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Ordinal, C)>,
        C: Into<BigUint>,
    {
        terms
            .into_iter()
            .fold(Ordinal::zero(), |acc, (e, c)| acc + Ordinal::monomial(e, c))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for natural numbers (including zero).
    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_natural().and_then(|n| n.to_u64())
    }

    /// True when the last term has exponent 0, i.e. the ordinal is `β + 1`.
    pub fn is_successor(&self) -> bool {
        self.terms
            .last()
            .map(|t| t.exponent.is_zero())
            .unwrap_or(false)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// If `self = ω^a` exactly, returns `a`.
    pub fn as_omega_power(&self) -> Option<&Ordinal> {
        match self.terms.as_slice() {
            [t] if t.coefficient.is_one() => Some(&t.exponent),
            _ => None,
        }
    }

    /// True iff every exponent is a natural number, i.e. `self < ω^ω`.
    pub fn below_omega_pow_omega(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_finite())
    }

    pub fn successor(&self) -> Ordinal {
        self + &Ordinal::one()
    }

    /// Exponent nesting depth: 0 for zero, 1 for positive naturals, 2 for
    /// `ω·n + m`, 3 once an exponent is itself infinite, and so on.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    /// Drops every term with exponent below `exponent`.
    pub fn truncate_below(&self, exponent: &Ordinal) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .take_while(|t| t.exponent >= *exponent)
                .cloned()
                .collect(),
        }
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::monomial(Ordinal::zero(), n)
    }
}

impl From<u32> for Ordinal {
    fn from(n: u32) -> Self {
        Ordinal::from(u64::from(n))
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        Ordinal::monomial(Ordinal::zero(), n)
    }
}

/// Total order on ordinals: lexicographic on the term lists, comparing each
/// term by exponent first and coefficient second; a proper prefix is smaller.
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    for (x, y) in a.terms.iter().zip(&b.terms) {
        let ord = compare(&x.exponent, &y.exponent)
            .then_with(|| x.coefficient.cmp(&y.coefficient));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordinal sum `a + b`.
///
/// Terms of `a` with exponent below the leading exponent of `b` are absorbed;
/// a term of `a` with exactly that exponent merges its coefficient into `b`'s
/// leading term.
pub fn add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(lead) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<Term> = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut carry = BigUint::zero();
    for t in &a.terms {
        match compare(&t.exponent, &lead.exponent) {
            Ordering::Greater => terms.push(t.clone()),
            Ordering::Equal => carry = t.coefficient.clone(),
            Ordering::Less => break,
        }
    }
    terms.push(Term {
        exponent: lead.exponent.clone(),
        coefficient: carry + &lead.coefficient,
    });
    terms.extend(b.terms[1..].iter().cloned());
    Ordinal { terms }
}

/// Ordinal product `a · b` (`a` laid end to end `b` times).
///
/// Left-distributive over the terms of `b`: a finite term `d` contributes
/// `a·d`, which multiplies only the leading coefficient of `a`; an infinite
/// term `ω^f·d` contributes `ω^(e₁+f)·d` where `e₁` is the leading exponent
/// of `a`.
pub fn mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(lead) = a.terms.first() else {
        return Ordinal::zero();
    };
    let mut product = Ordinal::zero();
    for t in &b.terms {
        let piece = if t.exponent.is_zero() {
            let mut terms = a.terms.clone();
            terms[0].coefficient = &lead.coefficient * &t.coefficient;
            Ordinal { terms }
        } else {
            Ordinal::monomial(add(&lead.exponent, &t.exponent), t.coefficient.clone())
        };
        product = add(&product, &piece);
    }
    product
}

/// `ω^a` with the default nesting bound.
pub fn omega_pow(a: &Ordinal) -> Result<Ordinal, OrdinalError> {
    omega_pow_bounded(a, DEFAULT_DEPTH_BOUND)
}

/// `ω^a`, refusing results whose nesting depth exceeds `bound`.
pub fn omega_pow_bounded(a: &Ordinal, bound: usize) -> Result<Ordinal, OrdinalError> {
    let depth = a.depth() + 1;
    if depth > bound {
        return Err(OrdinalError::DepthExceeded { depth, bound });
    }
    Ok(Ordinal::monomial(a.clone(), 1u32))
}

impl Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        add(self, rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: Ordinal) -> Ordinal {
        add(&self, &rhs)
    }
}

impl Mul<&Ordinal> for &Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        mul(self, rhs)
    }
}

impl Mul for Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: Ordinal) -> Ordinal {
        mul(&self, &rhs)
    }
}

// Exponents print bare when they are a natural or a lone `ω^e`, so that
// `w^w^2` reads as ω^(ω²); anything else is parenthesized.
fn fmt_exponent(e: &Ordinal, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.is_finite() || e.as_omega_power().is_some() {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if !t.exponent.is_one_ordinal() {
                f.write_str("^")?;
                fmt_exponent(&t.exponent, f)?;
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl Ordinal {
    fn is_one_ordinal(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.exponent.is_zero() && t.coefficient.is_one())
    }
}

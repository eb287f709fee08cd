//! Graded multivariate polynomials over [`Rational`].
//!
//! A [`GradedPoly`] is a finite sum of monomials in one countable generator
//! family: the moment indeterminates `a1, a2, ...`, the complete homogeneous
//! generators `h1, h2, ...`, or the commuting variables `x1, x2, ...`.
//! Generators `a_i` and `h_i` carry weight `i`, variables weight 1, which is
//! what makes degree truncation meaningful across the crate.
//!
//! Rational constants belong to every family, so a polynomial that happens to
//! be constant carries no family tag and combines freely with anything.
//! Mixing two distinct non-constant families is a programming error and
//! panics.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{Map, Value};

use crate::rational::Rational;

/// Generator family of a polynomial: moments `a`, complete homogeneous
/// symmetric generators `h`, or plain commuting variables `x`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    /// Moment indeterminates `a_i`, weight of `a_i` is `i`.
    Moments,
    /// Complete homogeneous generators `h_i`, weight of `h_i` is `i`.
    Complete,
    /// Commuting variables `x_i`, weight 1.
    Vars,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Moments => 'a',
            Family::Complete => 'h',
            Family::Vars => 'x',
        }
    }

    /// Weight of the generator with 1-based index `i`.
    pub fn weight(self, i: u32) -> u32 {
        match self {
            Family::Moments | Family::Complete => i,
            Family::Vars => 1,
        }
    }
}

/// Exponent vector of a single monomial; entry `i` is the exponent of the
/// generator with index `i + 1`. No trailing zeros are stored, so the empty
/// vector is the constant monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The single generator with 1-based index `i`.
    pub fn generator(i: u32) -> Self {
        assert!(i >= 1, "generator indices are 1-based");
        let mut exps = vec![0; i as usize];
        exps[i as usize - 1] = 1;
        Monomial { exps }
    }

    /// Build from an explicit exponent vector (`exps[i]` is the exponent of
    /// generator `i + 1`).
    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponents as `(generator index, exponent)` pairs, ascending index.
    pub fn powers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32 + 1, e))
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn weighted_degree(&self, family: Family) -> u32 {
        self.powers().map(|(i, e)| family.weight(i) * e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = vec![0u32; n];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps.get(i).copied().unwrap_or(0) + other.exps.get(i).copied().unwrap_or(0);
        }
        Monomial::from_exponents(exps)
    }

    /// Exponents sorted weakly decreasing (the shape of the monomial).
    pub fn sorted_exponents(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.exps.iter().copied().filter(|&e| e > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Canonical term order within one weight: read exponents from the
    /// highest generator down, larger first. For `a`/`h` monomials this is
    /// decreasing lexicographic order of the indexing partition.
    fn cmp_within_weight(&self, other: &Monomial) -> Ordering {
        let n = self.exps.len().max(other.exps.len());
        for i in (0..n).rev() {
            let a = self.exps.get(i).copied().unwrap_or(0);
            let b = other.exps.get(i).copied().unwrap_or(0);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    /// Render with the family letter, generators in descending index order,
    /// e.g. `h2*h1^2`. The constant monomial renders as `1`.
    pub fn render(&self, letter: char) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(format!("{letter}{}", i + 1));
            } else {
                parts.push(format!("{letter}{}^{e}", i + 1));
            }
        }
        parts.join("*")
    }
}

/// A polynomial in one generator family with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPoly {
    family: Option<Family>,
    terms: BTreeMap<Monomial, Rational>,
}

fn join_family(a: Option<Family>, b: Option<Family>) -> Option<Family> {
    match (a, b) {
        (None, f) | (f, None) => f,
        (Some(f), Some(g)) => {
            assert!(
                f == g,
                "family mismatch: `{}` vs `{}`",
                f.letter(),
                g.letter()
            );
            Some(f)
        }
    }
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly {
            family: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        GradedPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        GradedPoly {
            family: None,
            terms,
        }
    }

    /// The generator `g_i` of `family` (1-based index).
    pub fn generator(family: Family, i: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::generator(i), Rational::one());
        GradedPoly {
            family: Some(family),
            terms,
        }
    }

    /// A single monomial with the given coefficient.
    pub fn monomial(family: Family, mono: Monomial, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        let mut p = GradedPoly {
            family: Some(family),
            terms,
        };
        p.normalize();
        p
    }

    pub(crate) fn from_terms(family: Option<Family>, terms: BTreeMap<Monomial, Rational>) -> Self {
        let mut p = GradedPoly { family, terms };
        p.normalize();
        p
    }

    /// Drop zero coefficients and the family tag of constants.
    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if !self.terms.keys().any(|m| !m.is_one()) {
            self.family = None;
        }
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.family.is_none()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest weighted degree among the terms; `None` for the zero
    /// polynomial.
    pub fn weighted_degree(&self) -> Option<u32> {
        let family = self.family.unwrap_or(Family::Vars);
        self.terms
            .keys()
            .map(|m| m.weighted_degree(family))
            .max()
    }

    /// True when every term has the same weighted degree (vacuously true for
    /// zero).
    pub fn is_homogeneous(&self) -> bool {
        let family = self.family.unwrap_or(Family::Vars);
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(family));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Keep only terms of weighted degree at most `d`. Idempotent.
    pub fn truncate(&self, d: u32) -> GradedPoly {
        let family = self.family.unwrap_or(Family::Vars);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weighted_degree(family) <= d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedPoly::from_terms(self.family, terms)
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, r)| (m.clone(), r * c))
            .collect();
        GradedPoly::from_terms(self.family, terms)
    }

    pub fn pow(&self, k: u32) -> GradedPoly {
        let mut acc = GradedPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Ring homomorphism substituting `replacement(i)` for generator `g_i`.
    pub fn substitute<F: FnMut(u32) -> GradedPoly>(&self, mut replacement: F) -> GradedPoly {
        let mut acc = GradedPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut term = GradedPoly::constant(coeff.clone());
            for (i, e) in mono.powers() {
                term = &term * &replacement(i).pow(e);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Terms in the canonical reporting order: weighted degree ascending,
    /// then decreasing lexicographic on the exponent vector read from the
    /// highest generator down.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let family = self.family.unwrap_or(Family::Vars);
        let mut v: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        v.sort_by(|(m, _), (n, _)| {
            m.weighted_degree(family)
                .cmp(&n.weighted_degree(family))
                .then_with(|| m.cmp_within_weight(n))
        });
        v
    }

    /// JSON object mapping monomial strings to rational strings, in
    /// canonical term order. The zero polynomial maps to `{}`.
    pub fn to_json(&self) -> Value {
        let letter = self.family.unwrap_or(Family::Vars).letter();
        let mut map = Map::new();
        for (mono, coeff) in self.canonical_terms() {
            map.insert(mono.render(letter), Value::String(coeff.to_string()));
        }
        Value::Object(map)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let letter = self.family.unwrap_or(Family::Vars).letter();
        for (k, (mono, coeff)) in self.canonical_terms().into_iter().enumerate() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.render(letter))?;
            } else {
                write!(f, "{mag}\u{b7}{}", mono.render(letter))?;
            }
        }
        Ok(())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let family = join_family(self.family, rhs.family);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
        }
        GradedPoly::from_terms(family, terms)
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let family = join_family(self.family, rhs.family);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry -= c;
        }
        GradedPoly::from_terms(family, terms)
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let family = join_family(self.family, rhs.family);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                let prod = m.mul(n);
                let entry = terms.entry(prod).or_insert_with(Rational::zero);
                *entry += &(c * d);
            }
        }
        GradedPoly::from_terms(family, terms)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c))
            .collect();
        GradedPoly::from_terms(self.family, terms)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: &GradedPoly) -> GradedPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> GradedPoly {
        GradedPoly::generator(Family::Moments, i)
    }

    fn h(i: u32) -> GradedPoly {
        GradedPoly::generator(Family::Complete, i)
    }

    #[test]
    fn additive_inverse() {
        let p = &(&a(1) + &a(2)) + &-&a(1);
        assert_eq!(p, a(2));
    }

    #[test]
    fn exponent_addition() {
        let sq = &a(1) * &a(1);
        assert_eq!(
            sq,
            GradedPoly::monomial(
                Family::Moments,
                Monomial::from_exponents(vec![2]),
                Rational::one()
            )
        );
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&h(1) + &h(2)) * &(&h(1) - &h(2));
        let rhs = &(&h(1) * &h(1)) - &(&h(2) * &h(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    #[should_panic(expected = "family mismatch")]
    fn cross_family_addition_panics() {
        let _ = &a(1) + &h(1);
    }

    #[test]
    fn constants_belong_to_every_family() {
        let five = GradedPoly::constant(Rational::from(5));
        assert_eq!((&a(1) + &five).family(), Some(Family::Moments));
        assert_eq!((&h(1) + &five).family(), Some(Family::Complete));
        // A difference that collapses to a constant loses its family tag.
        let diff = &(&h(1) + &five) - &h(1);
        assert!(diff.is_constant());
        assert_eq!(diff, five);
    }

    #[test]
    fn truncation() {
        let p = &(&h(1).pow(3) + &h(3)) + &h(4);
        let t = p.truncate(3);
        assert_eq!(t, &h(1).pow(3) + &h(3));
        assert_eq!(t.truncate(3), t, "idempotent");
        assert_eq!(p.truncate(0), GradedPoly::zero());
        assert_eq!((&a(1) * &a(2)).truncate(2), GradedPoly::zero());
        let with_const = &p + &GradedPoly::one();
        assert_eq!(with_const.truncate(0), GradedPoly::one());
    }

    #[test]
    fn weighted_degrees_by_family() {
        assert_eq!(a(3).weighted_degree(), Some(3));
        assert_eq!(h(2).pow(2).weighted_degree(), Some(4));
        let x2 = GradedPoly::generator(Family::Vars, 2);
        assert_eq!(x2.pow(5).weighted_degree(), Some(5));
        assert_eq!(GradedPoly::zero().weighted_degree(), None);
    }

    #[test]
    fn display_matches_reporting_conventions() {
        let pf3 = &(&h(3) + &h(2).scale(&Rational::from(3)).mul(h(1))) + &h(1).pow(3);
        assert_eq!(pf3.to_string(), "h3 + 3\u{b7}h2*h1 + h1^3");
        let m = &h(1).pow(2).scale(&Rational::from(2)) - &h(2);
        assert_eq!(m.to_string(), "-h2 + 2\u{b7}h1^2");
        assert_eq!(GradedPoly::zero().to_string(), "0");
        assert_eq!(
            GradedPoly::constant(Rational::new(-1, 2)).to_string(),
            "-1/2"
        );
    }

    #[test]
    fn json_shape() {
        let p = &h(2).scale(&Rational::new(3, 2)) + &h(1).pow(2);
        assert_eq!(p.to_json().to_string(), r#"{"h2":"3/2","h1^2":"1"}"#);
    }

    #[test]
    fn substitution_is_a_ring_map() {
        // h1 -> a1, h2 -> a1^2 applied to h2 + h1^2 gives 2 a1^2.
        let p = &h(2) + &h(1).pow(2);
        let image = p.substitute(|i| match i {
            1 => a(1),
            2 => a(1).pow(2),
            _ => unreachable!(),
        });
        assert_eq!(image, a(1).pow(2).scale(&Rational::from(2)));
    }
}

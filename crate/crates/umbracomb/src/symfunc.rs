//! The ring of symmetric functions on the complete homogeneous generators.
//!
//! A [`SymFunc`] is a polynomial in the algebraically independent h_1, h_2,
//! and so on; e_n and monomial expansions are conversions rather than stored
//! bases. The module also builds the parking-function symmetric functions of
//! type A, the k-parking family obtained by series inversion of t/H(t)^k,
//! the type-B family [t^n] H(t)^n, and Macdonald's h_n* by two independent
//! routes.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, falling_factorial, Partition};
use crate::poly::{Family, GradedPoly, Monomial};
use crate::rational::{factorial, Rational};
use crate::series::TruncSeries;

/// A symmetric function written in the h-generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    poly: GradedPoly,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc {
            poly: GradedPoly::zero(),
        }
    }

    pub fn one() -> Self {
        SymFunc {
            poly: GradedPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        SymFunc {
            poly: GradedPoly::constant(c),
        }
    }

    /// The generator h_n.
    pub fn h(n: u32) -> Self {
        SymFunc {
            poly: GradedPoly::generator(Family::Complete, n),
        }
    }

    /// The product h_{mu_1} h_{mu_2} ...
    pub fn h_mu(mu: &Partition) -> Self {
        let mut exps: Vec<u32> = Vec::new();
        for &part in mu.parts() {
            if exps.len() < part as usize {
                exps.resize(part as usize, 0);
            }
            exps[part as usize - 1] += 1;
        }
        SymFunc {
            poly: GradedPoly::monomial(
                Family::Complete,
                Monomial::from_exponents(exps),
                Rational::one(),
            ),
        }
    }

    /// Wrap a polynomial already written in the h-family.
    pub fn from_poly(poly: GradedPoly) -> Self {
        assert!(
            matches!(poly.family(), None | Some(Family::Complete)),
            "symmetric functions live in the h-family"
        );
        SymFunc { poly }
    }

    pub fn as_poly(&self) -> &GradedPoly {
        &self.poly
    }

    pub fn into_poly(self) -> GradedPoly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.weighted_degree()
    }

    pub fn scale(&self, c: &Rational) -> SymFunc {
        SymFunc {
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, k: u32) -> SymFunc {
        SymFunc {
            poly: self.poly.pow(k),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.poly.to_json()
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

macro_rules! symfunc_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &SymFunc {
            type Output = SymFunc;
            fn $method(self, rhs: &SymFunc) -> SymFunc {
                SymFunc {
                    poly: (&self.poly).$method(&rhs.poly),
                }
            }
        }
        impl $trait for SymFunc {
            type Output = SymFunc;
            fn $method(self, rhs: SymFunc) -> SymFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

symfunc_binop!(Add, add);
symfunc_binop!(Sub, sub);
symfunc_binop!(Mul, mul);

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        SymFunc { poly: -&self.poly }
    }
}

/// H(t) = 1 + h_1 t + h_2 t^2 + ... truncated at `order`.
pub fn h_series(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |i| {
        if i == 0 {
            GradedPoly::one()
        } else {
            GradedPoly::generator(Family::Complete, i as u32)
        }
    })
}

/// e_n written in the h-generators, from the recurrence forced by
/// H(t)E(-t) = 1: sum over i of (-1)^i e_i h_{n-i} vanishes for n >= 1.
pub fn e_in_h(n: u32) -> SymFunc {
    let mut e: Vec<SymFunc> = vec![SymFunc::one()];
    for m in 1..=n {
        let mut acc = SymFunc::zero();
        for i in 0..m {
            let term = &e[i as usize] * &SymFunc::h(m - i);
            if i % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        if m % 2 == 0 {
            acc = -&acc;
        }
        e.push(acc);
    }
    e.pop().unwrap()
}

/// The product e_{mu_1} e_{mu_2} ... in h-coordinates.
pub fn e_mu(mu: &Partition) -> SymFunc {
    let mut acc = SymFunc::one();
    for &part in mu.parts() {
        acc = &acc * &e_in_h(part);
    }
    acc
}

/// The involution exchanging h_n and e_n, extended as a ring map.
pub fn omega(f: &SymFunc) -> SymFunc {
    SymFunc::from_poly(f.as_poly().substitute(|i| e_in_h(i).into_poly()))
}

/// h_k evaluated at x_1..x_m: the sum of all degree-k monomials.
fn h_in_vars(k: u32, m: usize) -> GradedPoly {
    let mut acc = GradedPoly::zero();
    let mut exps = vec![0u32; m];
    fn go(left: u32, lo: usize, exps: &mut Vec<u32>, acc: &mut GradedPoly) {
        if left == 0 {
            *acc = &*acc
                + &GradedPoly::monomial(
                    Family::Vars,
                    Monomial::from_exponents(exps.clone()),
                    Rational::one(),
                );
            return;
        }
        for v in lo..exps.len() {
            exps[v] += 1;
            go(left - 1, v, exps, acc);
            exps[v] -= 1;
        }
    }
    go(k, 0, &mut exps, &mut acc);
    acc
}

/// Evaluate a symmetric function at x_1..x_m (zero beyond). Faithful only
/// when m is at least the degree, and rejected below that.
pub fn expand_in_variables(f: &SymFunc, m: usize) -> Result<GradedPoly> {
    if let Some(d) = f.degree() {
        if (d as usize) > m {
            return Err(Error::TooFewVariables {
                vars: m,
                degree: d as usize,
            });
        }
    }
    let mut cache: HashMap<u32, GradedPoly> = HashMap::new();
    Ok(f.as_poly().substitute(|i| {
        cache
            .entry(i)
            .or_insert_with(|| h_in_vars(i, m))
            .clone()
    }))
}

/// Number of monomials in m variables sharing the exponent multiset `mu`:
/// permutations of the exponent vector padded with zeros.
fn orbit_size(mu: &Partition, m: usize) -> BigInt {
    let mut denom = factorial(m - mu.len());
    for &mult in mu.multiplicities().values() {
        denom *= factorial(mult as usize);
    }
    factorial(m) / denom
}

fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
            let delta = &factor * &b[col];
            b[r] = &b[r] - &delta;
        }
    }
    Some(b)
}

/// Recover the symmetric function whose expansion in x_1..x_m is `p`.
///
/// Each homogeneous component is grouped into variable orbits (checking full
/// symmetry), read off in the monomial basis, and solved against the h_mu
/// expansions by exact elimination. The result is re-expanded and compared
/// to the input before being returned.
pub fn identify_symmetric(p: &GradedPoly, m: usize) -> Result<SymFunc> {
    assert!(
        matches!(p.family(), None | Some(Family::Vars)),
        "identification expects a polynomial in the x-family"
    );
    let mut by_degree: std::collections::BTreeMap<u32, Vec<(&Monomial, &Rational)>> =
        std::collections::BTreeMap::new();
    for (mono, coeff) in p.terms() {
        assert!(
            mono.powers().all(|(i, _)| i as usize <= m),
            "polynomial mentions a variable past x_{m}"
        );
        by_degree.entry(mono.total_degree()).or_default().push((mono, coeff));
    }

    let mut result = SymFunc::zero();
    for (&degree, terms) in &by_degree {
        if degree == 0 {
            result = &result + &SymFunc::constant(terms[0].1.clone());
            continue;
        }
        if degree as usize > m {
            return Err(Error::TooFewVariables {
                vars: m,
                degree: degree as usize,
            });
        }
        // Group the component by exponent multiset and certify symmetry:
        // every orbit must be fully present with one shared coefficient.
        let mut orbits: std::collections::BTreeMap<Partition, (Rational, usize)> =
            std::collections::BTreeMap::new();
        for (mono, coeff) in terms {
            let shape = Partition::new(mono.sorted_exponents());
            match orbits.get_mut(&shape) {
                None => {
                    orbits.insert(shape, ((*coeff).clone(), 1));
                }
                Some((c, count)) => {
                    if c != *coeff {
                        return Err(Error::NotSymmetric);
                    }
                    *count += 1;
                }
            }
        }
        for (shape, (_, count)) in &orbits {
            if BigInt::from(*count) != orbit_size(shape, m) {
                return Err(Error::NotSymmetric);
            }
        }

        let mus = enumerate_partitions(degree);
        let monomial_coeffs: Vec<Rational> = mus
            .iter()
            .map(|mu| orbits.get(mu).map(|(c, _)| c.clone()).unwrap_or_else(Rational::zero))
            .collect();
        // Row nu of the transition matrix reads off, for each shape mu, the
        // coefficient of the representative monomial x_1^{mu_1}... in the
        // expansion of h_nu.
        let mut matrix = vec![vec![Rational::zero(); mus.len()]; mus.len()];
        for (j, nu) in mus.iter().enumerate() {
            let expansion = expand_in_variables(&SymFunc::h_mu(nu), m)?;
            for (i, mu) in mus.iter().enumerate() {
                let rep = Monomial::from_exponents(mu.parts().to_vec());
                matrix[i][j] = expansion.coeff(&rep);
            }
        }
        let solution =
            solve_linear(matrix, monomial_coeffs).ok_or(Error::InconsistentIdentification)?;
        for (nu, b) in mus.iter().zip(solution) {
            result = &result + &SymFunc::h_mu(nu).scale(&b);
        }
    }

    if &expand_in_variables(&result, m)? != p {
        return Err(Error::InconsistentIdentification);
    }
    Ok(result)
}

/// The parking-function symmetric function: the sum over partitions mu of n
/// of (n)_{l(mu)-1} / m(mu)! times h_mu.
pub fn pf(n: u32) -> SymFunc {
    assert!(n >= 1);
    let mut acc = SymFunc::zero();
    for mu in enumerate_partitions(n) {
        let stats = mu.stats();
        let c = Rational::from_bigint(falling_factorial(n as i64, stats.length as u32 - 1))
            / Rational::from_bigint(stats.mult_factorial);
        acc = &acc + &SymFunc::h_mu(&mu).scale(&c);
    }
    acc
}

/// The k-parking symmetric function, read off the compositional inverse of
/// t/H(t)^k: the coefficient of t^{n+1} in that inverse.
pub fn pf_k(n: u32, k: u32) -> Result<SymFunc> {
    assert!(n >= 1 && k >= 1);
    let order = n as usize + 1;
    let g = TruncSeries::identity(order).mul(&h_series(order).pow(-(k as i32))?);
    let inv = g.comp_inverse()?;
    Ok(SymFunc::from_poly(inv.coeff(order)?.clone()))
}

/// The type-B parking symmetric function [t^n] H(t)^n.
pub fn pf_typeb(n: u32) -> Result<SymFunc> {
    assert!(n >= 1);
    let order = n as usize;
    let power = h_series(order).pow(n as i32)?;
    Ok(SymFunc::from_poly(power.coeff(order)?.clone()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HstarMethod {
    /// (-1)^n sum over mu of (n)_{l(mu)-1}/m(mu)! e_mu, re-expressed in h.
    LagrangeFormula,
    /// The coefficient of z^{n+1} in the compositional inverse of zH(z).
    SeriesInversion,
}

pub fn hstar(n: u32, method: HstarMethod) -> Result<SymFunc> {
    assert!(n >= 1);
    match method {
        HstarMethod::LagrangeFormula => {
            let mut acc = SymFunc::zero();
            for mu in enumerate_partitions(n) {
                let stats = mu.stats();
                let c =
                    Rational::from_bigint(falling_factorial(n as i64, stats.length as u32 - 1))
                        / Rational::from_bigint(stats.mult_factorial);
                acc = &acc + &e_mu(&mu).scale(&c);
            }
            if n % 2 == 1 {
                acc = -&acc;
            }
            Ok(acc)
        }
        HstarMethod::SeriesInversion => {
            let order = n as usize + 1;
            let zh = TruncSeries::identity(order).mul(&h_series(order));
            let inv = zh.comp_inverse()?;
            Ok(SymFunc::from_poly(inv.coeff(order)?.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(n: u32) -> SymFunc {
        SymFunc::h(n)
    }

    #[test]
    fn elementary_in_h() {
        assert_eq!(e_in_h(1), h(1));
        assert_eq!(e_in_h(2), &h(1).pow(2) - &h(2));
        let e3 = &(&h(1).pow(3) - &(&h(1) * &h(2)).scale(&Rational::from(2))) + &h(3);
        assert_eq!(e_in_h(3), e3);
    }

    #[test]
    fn omega_swaps_h_and_e() {
        assert_eq!(omega(&h(1)), h(1));
        assert_eq!(omega(&h(2)), e_in_h(2));
        for n in 1..=6 {
            assert_eq!(omega(&e_in_h(n)), h(n), "omega(e_n) = h_n");
        }
        let f = &h(3) + &(&h(2) * &h(1));
        assert_eq!(omega(&omega(&f)), f);
    }

    #[test]
    fn expansions_in_two_variables() {
        let x = |i| GradedPoly::generator(Family::Vars, i);
        let h2 = expand_in_variables(&h(2), 2).unwrap();
        assert_eq!(h2, &(&x(1).pow(2) + &(&x(1) * &x(2))) + &x(2).pow(2));
        let e2 = expand_in_variables(&e_in_h(2), 2).unwrap();
        assert_eq!(e2, &x(1) * &x(2));
        let h1sq = expand_in_variables(&h(1).pow(2), 2).unwrap();
        assert_eq!(
            h1sq,
            &(&x(1).pow(2) + &(&x(1) * &x(2)).scale(&Rational::from(2))) + &x(2).pow(2)
        );
        assert!(matches!(
            expand_in_variables(&h(3), 2),
            Err(Error::TooFewVariables { vars: 2, degree: 3 })
        ));
    }

    #[test]
    fn identification_round_trips() {
        for n in 1..=6u32 {
            for mu in enumerate_partitions(n) {
                let f = SymFunc::h_mu(&mu);
                let back = identify_symmetric(&expand_in_variables(&f, n as usize).unwrap(), n as usize)
                    .unwrap();
                assert_eq!(back, f);
            }
        }
        // Orbit coefficients translate straight into h-coordinates.
        let x = |i| GradedPoly::generator(Family::Vars, i);
        let power_sum = &(&x(1).pow(2) + &(&x(1) * &x(2))) + &x(2).pow(2);
        assert_eq!(identify_symmetric(&power_sum, 2).unwrap(), h(2));
        assert_eq!(
            identify_symmetric(&(&x(1) * &x(2)), 2).unwrap(),
            &h(1).pow(2) - &h(2)
        );
        let mixed = &h(2) + &e_in_h(2).scale(&Rational::from(2));
        let back = identify_symmetric(&expand_in_variables(&mixed, 2).unwrap(), 2).unwrap();
        assert_eq!(back, mixed);
    }

    #[test]
    fn identification_rejects_asymmetric_input() {
        let x = |i: u32| GradedPoly::generator(Family::Vars, i);
        // Unequal orbit coefficients.
        let p = &x(1).pow(2) + &(&x(1) * &x(2));
        assert!(matches!(identify_symmetric(&p, 2), Err(Error::NotSymmetric)));
        // Incomplete orbit: x1^2 x2 without the other five rearrangements.
        let q = &x(1).pow(2) * &x(2);
        assert!(matches!(identify_symmetric(&q, 3), Err(Error::NotSymmetric)));
    }

    #[test]
    fn parking_symmetric_functions() {
        assert_eq!(pf(1), h(1));
        assert_eq!(pf(2), &h(2) + &h(1).pow(2));
        let pf3 = &(&h(3) + &(&h(2) * &h(1)).scale(&Rational::from(3))) + &h(1).pow(3);
        assert_eq!(pf(3), pf3);
        assert_eq!(pf(3).to_string(), "h3 + 3\u{b7}h2*h1 + h1^3");
    }

    /// Total mass n! sum_mu c_mu / mu!: the dimension carried by c_mu h_mu
    /// is c_mu times the multinomial n!/mu!.
    fn dimension(f: &SymFunc, n: u32) -> Rational {
        let mut acc = Rational::zero();
        for (mono, coeff) in f.as_poly().terms() {
            let mut mult = Rational::from_bigint(factorial(n as usize));
            for (i, e) in mono.powers() {
                for _ in 0..e {
                    mult = mult / Rational::from_bigint(factorial(i as usize));
                }
            }
            acc = acc + &(coeff * &mult);
        }
        acc
    }

    #[test]
    fn parking_dimensions() {
        for n in 1..=6u32 {
            let expected = Rational::from(((n + 1) as i64).pow(n - 1));
            assert_eq!(dimension(&pf(n), n), expected);
        }
    }

    #[test]
    fn k_parking_reduces_to_classical() {
        for n in 1..=5 {
            assert_eq!(pf_k(n, 1).unwrap(), pf(n));
        }
    }

    #[test]
    fn k_parking_small_values() {
        assert_eq!(pf_k(1, 2).unwrap(), h(1).scale(&Rational::from(2)));
        // From the order-3 inversion of t/H(t)^2; the dimension 2 + 5*2 = 12
        // matches the direct count of 2-parking pairs.
        let expected = &h(2).scale(&Rational::from(2)) + &h(1).pow(2).scale(&Rational::from(5));
        assert_eq!(pf_k(2, 2).unwrap(), expected);
        assert_eq!(dimension(&pf_k(2, 2).unwrap(), 2), Rational::from(12));
    }

    #[test]
    fn type_b_parking() {
        assert_eq!(pf_typeb(1).unwrap(), h(1));
        assert_eq!(
            pf_typeb(2).unwrap(),
            &h(2).scale(&Rational::from(2)) + &h(1).pow(2)
        );
        let b3 = &(&h(3).scale(&Rational::from(3))
            + &(&h(2) * &h(1)).scale(&Rational::from(6)))
            + &h(1).pow(3);
        assert_eq!(pf_typeb(3).unwrap(), b3);
        for n in 1..=6u32 {
            assert_eq!(
                dimension(&pf_typeb(n).unwrap(), n),
                Rational::from((n as i64).pow(n))
            );
        }
    }

    #[test]
    fn hstar_examples_and_agreement() {
        assert_eq!(
            hstar(1, HstarMethod::LagrangeFormula).unwrap(),
            -&h(1)
        );
        assert_eq!(
            hstar(2, HstarMethod::LagrangeFormula).unwrap(),
            &h(1).pow(2).scale(&Rational::from(2)) - &h(2)
        );
        for n in 1..=6 {
            assert_eq!(
                hstar(n, HstarMethod::LagrangeFormula).unwrap(),
                hstar(n, HstarMethod::SeriesInversion).unwrap(),
                "both h* routes agree at n = {n}"
            );
        }
    }

    #[test]
    fn hstar_twists_into_pf() {
        for n in 1..=6 {
            let mut twisted = omega(&hstar(n, HstarMethod::LagrangeFormula).unwrap());
            if n % 2 == 1 {
                twisted = -&twisted;
            }
            assert_eq!(twisted, pf(n));
        }
    }

    #[test]
    fn parking_series_inverts_t_over_h() {
        // t + sum pf(n) t^{n+1} composed with t/H(t) returns t.
        let order = 5;
        let mut tpf = TruncSeries::identity(order);
        for n in 1..order as u32 {
            let mut coeffs = vec![GradedPoly::zero(); order + 1];
            coeffs[n as usize + 1] = pf(n).into_poly();
            tpf = tpf.add(&TruncSeries::from_coeffs(coeffs));
        }
        let g = TruncSeries::identity(order).mul(&h_series(order).recip().unwrap());
        assert_eq!(tpf.compose(&g).unwrap(), TruncSeries::identity(order));
    }

    fn random_symfunc() -> impl Strategy<Value = SymFunc> {
        proptest::collection::vec((1u32..=6, -4i64..=4), 1..5).prop_map(|terms| {
            let mut acc = SymFunc::zero();
            for (n, c) in terms {
                for mu in enumerate_partitions(n) {
                    acc = &acc + &SymFunc::h_mu(&mu).scale(&Rational::from(c));
                }
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn omega_is_an_involution(f in random_symfunc()) {
            prop_assert_eq!(omega(&omega(&f)), f);
        }

        #[test]
        fn omega_is_a_ring_map(f in random_symfunc(), g in random_symfunc()) {
            prop_assert_eq!(omega(&(&f * &g)), &omega(&f) * &omega(&g));
            prop_assert_eq!(omega(&(&f + &g)), &omega(&f) + &omega(&g));
        }
    }
}

//! Umbrae as truncated moment sequences, and the evaluation functional.
//!
//! An umbra is a label bound to a [`MomentSeq`] inside an [`UmbraRegistry`].
//! Distinct labels are uncorrelated: evaluation sends a product of labeled
//! powers to the product of the corresponding moments, while powers of one
//! label accumulate into a single higher moment and are never split. Two
//! labels sharing a moment sequence are similar but uncorrelated.
//!
//! Auxiliary umbrae (the dot operation n.alpha, negation, the derivative
//! umbra, the compositional inverse) are memoized per source label and
//! parameter, so repeated mentions inside one expression denote one label.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, falling_factorial};
use crate::poly::{Family, GradedPoly};
use crate::rational::{factorial, Rational};
use crate::series::TruncSeries;
use crate::symfunc::e_in_h;

/// Moments a_1..a_N of an umbra; a_0 = 1 implicitly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentSeq {
    moments: Vec<GradedPoly>,
}

impl MomentSeq {
    pub fn from_polys(moments: Vec<GradedPoly>) -> Self {
        assert!(!moments.is_empty(), "an umbra carries at least one moment");
        MomentSeq { moments }
    }

    pub fn from_rationals(moments: Vec<Rational>) -> Self {
        MomentSeq::from_polys(moments.into_iter().map(GradedPoly::constant).collect())
    }

    /// Symbolic moments: a_i is the i-th generator of the moment family.
    pub fn generic(order: usize) -> Self {
        MomentSeq::from_polys(
            (1..=order)
                .map(|i| GradedPoly::generator(Family::Moments, i as u32))
                .collect(),
        )
    }

    pub fn special(kind: SpecialKind, order: usize) -> Self {
        assert!(order >= 1);
        let moments = match kind {
            SpecialKind::Augmentation => vec![GradedPoly::zero(); order],
            SpecialKind::Unity => vec![GradedPoly::one(); order],
            SpecialKind::Singleton => {
                let mut m = vec![GradedPoly::zero(); order];
                m[0] = GradedPoly::one();
                m
            }
            SpecialKind::Bell => bell_numbers(order)
                .into_iter()
                .map(|b| GradedPoly::constant(Rational::from_bigint(b)))
                .collect(),
            SpecialKind::EpsBar(n_vars) => (1..=order)
                .map(|i| {
                    if i as u32 <= n_vars {
                        e_in_h(i as u32)
                            .into_poly()
                            .scale(&Rational::from_bigint(factorial(i)))
                    } else {
                        GradedPoly::zero()
                    }
                })
                .collect(),
            SpecialKind::ThetaBar => (1..=order)
                .map(|i| {
                    GradedPoly::generator(Family::Complete, i as u32)
                        .scale(&Rational::from_bigint(factorial(i)))
                })
                .collect(),
        };
        MomentSeq { moments }
    }

    pub fn order(&self) -> usize {
        self.moments.len()
    }

    /// The k-th moment; k = 0 gives 1, k past the order is an error.
    pub fn moment(&self, k: usize) -> Result<GradedPoly> {
        if k == 0 {
            return Ok(GradedPoly::one());
        }
        self.moments
            .get(k - 1)
            .cloned()
            .ok_or(Error::MomentOrderExceeded {
                needed: k,
                order: self.order(),
            })
    }

    /// The exponential generating function 1 + sum a_i t^i / i!.
    pub fn to_series(&self) -> TruncSeries {
        TruncSeries::from_fn(self.order(), |i| {
            if i == 0 {
                GradedPoly::one()
            } else {
                self.moments[i - 1].scale(&Rational::from_bigint(factorial(i)).recip())
            }
        })
    }

    /// Moments back from an exponential generating function: a_i = i! c_i.
    pub fn from_series(f: &TruncSeries) -> Self {
        MomentSeq::from_polys(
            (1..=f.order())
                .map(|i| {
                    f.coeff(i)
                        .expect("index within order")
                        .scale(&Rational::from_bigint(factorial(i)))
                })
                .collect(),
        )
    }
}

/// Bell numbers B_1..B_n from the binomial recurrence.
fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut bell: Vec<BigInt> = vec![BigInt::one()];
    let mut binom_row: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n {
        let next: BigInt = (0..=m).map(|k| &binom_row[k] * &bell[k]).sum();
        bell.push(next);
        let mut row = vec![BigInt::one()];
        for k in 1..=m {
            row.push(&binom_row[k - 1] + &binom_row[k]);
        }
        row.push(BigInt::one());
        binom_row = row;
    }
    bell. drain(1..).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpecialKind {
    /// All moments zero.
    Augmentation,
    /// All moments one.
    Unity,
    /// Moments (1, 0, 0, ...): generating function 1 + t.
    Singleton,
    /// Bell numbers: generating function exp(exp(t) - 1).
    Bell,
    /// Moments i! e_i in h-coordinates, vanishing past the variable count.
    EpsBar(u32),
    /// Moments i! h_i: generating function H(t).
    ThetaBar,
}

/// A labeled umbra; labels are registry-scoped identities.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Umbra(u64);

#[derive(Clone, PartialEq, Eq, Hash)]
enum AuxKey {
    Dot(i64, u64),
    Negate(u64),
    Derivative(u64),
    CompInverse(u64),
}

struct Inner {
    next: u64,
    moments: HashMap<u64, Arc<MomentSeq>>,
    memo: HashMap<AuxKey, u64>,
}

/// Label generator, label-to-moments binding, and the auxiliary-umbra memo
/// table. All mutation sits behind one mutex, so a registry is freely
/// shared across verifier threads.
pub struct UmbraRegistry {
    inner: Mutex<Inner>,
}

impl Default for UmbraRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl UmbraRegistry {
    pub fn new() -> Self {
        UmbraRegistry {
            inner: Mutex::new(Inner {
                next: 0,
                moments: HashMap::new(),
                memo: HashMap::new(),
            }),
        }
    }

    fn bind(&self, m: Arc<MomentSeq>) -> Umbra {
        let mut inner = self.inner.lock().unwrap();
        let label = inner.next;
        inner.next += 1;
        inner.moments.insert(label, m);
        Umbra(label)
    }

    /// A fresh umbra with the given moments. Calling twice with equal
    /// moments yields similar but uncorrelated umbrae.
    pub fn new_umbra(&self, m: MomentSeq) -> Umbra {
        self.bind(Arc::new(m))
    }

    pub fn special(&self, kind: SpecialKind, order: usize) -> Umbra {
        self.new_umbra(MomentSeq::special(kind, order))
    }

    /// A fresh label with the same moments: similar to `u`, uncorrelated
    /// with it.
    pub fn similar(&self, u: Umbra) -> Umbra {
        let m = self.moments(u);
        self.bind(m)
    }

    pub fn moments(&self, u: Umbra) -> Arc<MomentSeq> {
        self.inner.lock().unwrap().moments[&u.0].clone()
    }

    pub fn order(&self, u: Umbra) -> usize {
        self.moments(u).order()
    }

    /// The k-th moment of `u`.
    pub fn moment(&self, u: Umbra, k: usize) -> Result<GradedPoly> {
        self.moments(u).moment(k)
    }

    /// The generating function f(u, t) at the umbra's order.
    pub fn genfun(&self, u: Umbra) -> TruncSeries {
        self.moments(u).to_series()
    }

    fn memoized<F: FnOnce(&MomentSeq) -> Result<MomentSeq>>(
        &self,
        key: AuxKey,
        source: Umbra,
        build: F,
    ) -> Result<Umbra> {
        if let Some(&label) = self.inner.lock().unwrap().memo.get(&key) {
            return Ok(Umbra(label));
        }
        let m = build(&self.moments(source))?;
        let u = self.bind(Arc::new(m));
        self.inner.lock().unwrap().memo.insert(key, u.0);
        Ok(u)
    }

    /// The dot umbra n.u with generating function f(u,t)^n. Nonnegative n
    /// uses the partition sum for the k-th moment; negative n goes through
    /// the series reciprocal.
    pub fn dot(&self, n: i64, u: Umbra) -> Umbra {
        self.memoized(AuxKey::Dot(n, u.0), u, |m| {
            if n >= 0 {
                Ok(dot_moments_partition(n, m))
            } else {
                dot_moments_series(n, m)
            }
        })
        .expect("dot moments always exist: f(u,t) has unit constant term")
    }

    /// The umbra with moments (-1)^i a_i, so f(-u, t) = f(u, -t).
    pub fn negate(&self, u: Umbra) -> Umbra {
        self.memoized(AuxKey::Negate(u.0), u, |m| {
            Ok(MomentSeq::from_polys(
                (1..=m.order())
                    .map(|i| {
                        let a = m.moment(i).expect("within order");
                        if i % 2 == 0 {
                            a
                        } else {
                            -&a
                        }
                    })
                    .collect(),
            ))
        })
        .expect("negation always exists")
    }

    /// The derivative umbra, with i-th moment i a_{i-1} and generating
    /// function 1 + t f(u, t).
    pub fn derivative(&self, u: Umbra) -> Umbra {
        self.memoized(AuxKey::Derivative(u.0), u, |m| {
            Ok(MomentSeq::from_polys(
                (1..=m.order())
                    .map(|i| {
                        m.moment(i - 1)
                            .expect("within order")
                            .scale(&Rational::from(i as i64))
                    })
                    .collect(),
            ))
        })
        .expect("derivative always exists")
    }

    /// The compositional-inverse umbra, reading moments off the series
    /// inverse of f(u,t) - 1. Requires a scalar invertible first moment.
    pub fn comp_inverse(&self, u: Umbra) -> Result<Umbra> {
        self.memoized(AuxKey::CompInverse(u.0), u, |m| {
            let f = m.to_series();
            let mut coeffs = f.coeffs().to_vec();
            coeffs[0] = GradedPoly::zero();
            let g = TruncSeries::from_coeffs(coeffs);
            Ok(MomentSeq::from_series(&g.comp_inverse()?))
        })
    }
}

fn dot_moments_partition(n: i64, m: &MomentSeq) -> MomentSeq {
    let order = m.order();
    let mut moments = Vec::with_capacity(order);
    for k in 1..=order {
        let mut acc = GradedPoly::zero();
        for lam in enumerate_partitions(k as u32) {
            let stats = lam.stats();
            let scale = Rational::from_bigint(&stats.d * falling_factorial(n, stats.length as u32));
            if scale.is_zero() {
                continue;
            }
            let mut prod = GradedPoly::constant(scale);
            for &part in lam.parts() {
                prod = &prod * &m.moment(part as usize).expect("part within order");
            }
            acc = &acc + &prod;
        }
        moments.push(acc);
    }
    MomentSeq::from_polys(moments)
}

fn dot_moments_series(n: i64, m: &MomentSeq) -> Result<MomentSeq> {
    let n32 = i32::try_from(n).expect("dot multiplicities are small");
    Ok(MomentSeq::from_series(&m.to_series().pow(n32)?))
}

/// Monomial in labeled umbrae: label -> positive exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct UmbralMono(BTreeMap<u64, u32>);

impl UmbralMono {
    fn one() -> Self {
        UmbralMono(BTreeMap::new())
    }

    fn mul(&self, other: &UmbralMono) -> UmbralMono {
        let mut out = self.0.clone();
        for (&label, &e) in &other.0 {
            *out.entry(label).or_insert(0) += e;
        }
        UmbralMono(out)
    }
}

/// A formal polynomial in labeled umbrae with [`GradedPoly`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UmbralExpr {
    terms: BTreeMap<UmbralMono, GradedPoly>,
}

impl UmbralExpr {
    pub fn zero() -> Self {
        UmbralExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: Rational) -> Self {
        UmbralExpr::from_coeff(GradedPoly::constant(c))
    }

    pub fn from_coeff(c: GradedPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(UmbralMono::one(), c);
        }
        UmbralExpr { terms }
    }

    pub fn from_umbra(u: Umbra) -> Self {
        let mut mono = BTreeMap::new();
        mono.insert(u.0, 1);
        let mut terms = BTreeMap::new();
        terms.insert(UmbralMono(mono), GradedPoly::one());
        UmbralExpr { terms }
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn add(&self, other: &UmbralExpr) -> UmbralExpr {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(GradedPoly::zero);
            *entry = &*entry + c;
        }
        UmbralExpr { terms }.normalized()
    }

    pub fn sub(&self, other: &UmbralExpr) -> UmbralExpr {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(GradedPoly::zero);
            *entry = &*entry - c;
        }
        UmbralExpr { terms }.normalized()
    }

    pub fn mul(&self, other: &UmbralExpr) -> UmbralExpr {
        let mut terms: BTreeMap<UmbralMono, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let prod = m.mul(n);
                let entry = terms.entry(prod).or_insert_with(GradedPoly::zero);
                *entry = &*entry + &(c * d);
            }
        }
        UmbralExpr { terms }.normalized()
    }

    pub fn scale(&self, c: &Rational) -> UmbralExpr {
        UmbralExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, p)| (m.clone(), p.scale(c)))
                .collect(),
        }
        .normalized()
    }

    pub fn pow(&self, k: u32) -> UmbralExpr {
        let mut acc = UmbralExpr::scalar(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Apply the evaluation functional: each monomial becomes the product
    /// of one moment per label (exponents of a label are not split), and
    /// the coefficients extend linearly.
    pub fn eval(&self, reg: &UmbraRegistry) -> Result<GradedPoly> {
        let mut acc = GradedPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (&label, &e) in &mono.0 {
                term = &term * &reg.moment(Umbra(label), e as usize)?;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Umbral equivalence: equality after evaluation.
    pub fn equivalent(&self, other: &UmbralExpr, reg: &UmbraRegistry) -> Result<bool> {
        Ok(self.eval(reg)? == other.eval(reg)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> GradedPoly {
        GradedPoly::generator(Family::Moments, i)
    }

    fn expr(u: Umbra) -> UmbralExpr {
        UmbralExpr::from_umbra(u)
    }

    #[test]
    fn unity_and_augmentation_moments() {
        let reg = UmbraRegistry::new();
        let u = reg.special(SpecialKind::Unity, 6);
        let eps = reg.special(SpecialKind::Augmentation, 6);
        for i in 1..=6 {
            assert_eq!(expr(u).pow(i).eval(&reg).unwrap(), GradedPoly::one());
            assert_eq!(expr(eps).pow(i).eval(&reg).unwrap(), GradedPoly::zero());
        }
        assert_eq!(expr(eps).pow(0).eval(&reg).unwrap(), GradedPoly::one());
    }

    #[test]
    fn distinct_labels_are_uncorrelated() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(6));
        let gamma = reg.new_umbra(MomentSeq::generic(6));
        assert_ne!(alpha, gamma);
        // Similar umbrae: same moments, but mixed powers factor.
        let mixed = expr(alpha).pow(2).mul(&expr(gamma).pow(3));
        assert_eq!(mixed.eval(&reg).unwrap(), &a(2) * &a(3));
        // One label accumulates exponents instead.
        let single = expr(alpha).pow(2).mul(&expr(alpha).pow(3));
        assert_eq!(single.eval(&reg).unwrap(), a(5));
    }

    #[test]
    fn binomial_evaluation() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(4));
        let gamma = reg.special(SpecialKind::Unity, 4);
        let square = expr(alpha).add(&expr(gamma)).pow(2);
        let expected = &(&a(2) + &a(1).scale(&Rational::from(2))) + &GradedPoly::one();
        assert_eq!(square.eval(&reg).unwrap(), expected);
    }

    #[test]
    fn dot_moments_worked_examples() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(6));
        for n in [-3i64, -1, 0, 1, 2, 5] {
            let d = reg.dot(n, alpha);
            assert_eq!(
                reg.moment(d, 1).unwrap(),
                a(1).scale(&Rational::from(n)),
                "first dot moment is n a_1"
            );
        }
        let two = reg.dot(2, alpha);
        assert_eq!(
            reg.moment(two, 2).unwrap(),
            &a(2).scale(&Rational::from(2)) + &a(1).pow(2).scale(&Rational::from(2))
        );
        let minus = reg.dot(-1, alpha);
        assert_eq!(
            reg.moment(minus, 2).unwrap(),
            &a(1).pow(2).scale(&Rational::from(2)) - &a(2)
        );
        assert_eq!(reg.moment(reg.dot(0, alpha), 3).unwrap(), GradedPoly::zero());
    }

    #[test]
    fn dot_partition_formula_agrees_with_series_powers() {
        let m = MomentSeq::generic(6);
        for n in 0..=3i64 {
            assert_eq!(
                dot_moments_partition(n, &m),
                dot_moments_series(n, &m).unwrap()
            );
        }
    }

    #[test]
    fn dot_is_memoized_per_parameter() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(4));
        assert_eq!(reg.dot(3, alpha), reg.dot(3, alpha));
        assert_ne!(reg.dot(3, alpha), reg.dot(2, alpha));
    }

    #[test]
    fn dot_additivity() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(6));
        for m in -2..=3i64 {
            for n in -2..=3i64 {
                // The two summands are uncorrelated copies, so the second
                // one is a fresh similar label (when m = n the memo table
                // would otherwise hand back the same label twice).
                let sum = expr(reg.dot(m, alpha)).add(&expr(reg.similar(reg.dot(n, alpha))));
                let joint = reg.dot(m + n, alpha);
                for k in 0..=6u32 {
                    assert_eq!(
                        sum.pow(k).eval(&reg).unwrap(),
                        reg.moment(joint, k as usize).unwrap(),
                        "(m.a + n.a)^{k} with m={m}, n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_law_for_generating_functions() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(8));
        let minus = reg.dot(-1, alpha);
        let product = reg.genfun(alpha).mul(&reg.genfun(minus));
        assert_eq!(product, TruncSeries::one(8));
    }

    #[test]
    fn negation_flips_odd_moments() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(4));
        let neg = reg.negate(alpha);
        assert_eq!(reg.moment(neg, 2).unwrap(), a(2));
        assert_eq!(reg.moment(neg, 3).unwrap(), -&a(3));
    }

    #[test]
    fn theta_bar_is_minus_dot_minus_eps_bar() {
        let order = 6;
        let reg = UmbraRegistry::new();
        let eps_bar = reg.special(SpecialKind::EpsBar(order as u32), order);
        let built = reg.dot(-1, reg.negate(eps_bar));
        let theta = reg.special(SpecialKind::ThetaBar, order);
        assert_eq!(*reg.moments(built), *reg.moments(theta));
    }

    #[test]
    fn derivative_umbra() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(6));
        let d = reg.derivative(alpha);
        assert_eq!(reg.moment(d, 1).unwrap(), GradedPoly::one());
        assert_eq!(reg.moment(d, 3).unwrap(), a(2).scale(&Rational::from(3)));
        // f(u_D, t) = 1 + t f(u, t): the series shifts by one slot.
        let f = reg.genfun(alpha);
        let fd = reg.genfun(d);
        for i in 1..=6 {
            assert_eq!(fd.coeff(i).unwrap(), f.coeff(i - 1).unwrap());
        }
    }

    #[test]
    fn singleton_is_its_own_compositional_inverse() {
        let reg = UmbraRegistry::new();
        let chi = reg.special(SpecialKind::Singleton, 6);
        let inv = reg.comp_inverse(chi).unwrap();
        assert_eq!(*reg.moments(inv), *reg.moments(chi));
    }

    #[test]
    fn compositional_inverse_of_small_moments() {
        // Moments (1, 2, 0, 0): f - 1 = t + t^2, whose inverse gives
        // moments i! c_i = (1, -2, 12, -120).
        let reg = UmbraRegistry::new();
        let u = reg.new_umbra(MomentSeq::from_rationals(vec![
            Rational::from(1),
            Rational::from(2),
            Rational::zero(),
            Rational::zero(),
        ]));
        let inv = reg.comp_inverse(u).unwrap();
        let expected = [1i64, -2, 12, -120];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(
                reg.moment(inv, i + 1).unwrap(),
                GradedPoly::constant(Rational::from(e))
            );
        }
        // Round trip: (f(inv) - 1) composed with (f - 1) is t.
        let g = {
            let mut c = reg.genfun(u).coeffs().to_vec();
            c[0] = GradedPoly::zero();
            TruncSeries::from_coeffs(c)
        };
        let ginv = {
            let mut c = reg.genfun(inv).coeffs().to_vec();
            c[0] = GradedPoly::zero();
            TruncSeries::from_coeffs(c)
        };
        assert_eq!(ginv.compose(&g).unwrap(), TruncSeries::identity(4));
    }

    #[test]
    fn compositional_inverse_needs_scalar_first_moment() {
        let reg = UmbraRegistry::new();
        let theta = reg.special(SpecialKind::ThetaBar, 4);
        assert!(matches!(
            reg.comp_inverse(theta),
            Err(Error::NonUnitLinear)
        ));
    }

    /// Set-partition count by restricted growth strings, independent of the
    /// binomial recurrence behind the Bell umbra.
    fn rgs_count(n: usize) -> u64 {
        fn go(pos: usize, max_used: usize, n: usize) -> u64 {
            if pos == n {
                return 1;
            }
            (0..=max_used + 1).map(|c| go(pos + 1, max_used.max(c), n)).sum()
        }
        if n == 0 {
            1
        } else {
            go(1, 0, n)
        }
    }

    #[test]
    fn bell_moments_count_set_partitions() {
        let reg = UmbraRegistry::new();
        let beta = reg.special(SpecialKind::Bell, 6);
        let expected = [1u64, 2, 5, 15, 52, 203];
        for i in 1..=6 {
            assert_eq!(
                reg.moment(beta, i).unwrap(),
                GradedPoly::constant(Rational::from(expected[i - 1] as i64))
            );
            assert_eq!(rgs_count(i), expected[i - 1]);
        }
    }

    #[test]
    fn unity_and_theta_bar_generating_functions() {
        let reg = UmbraRegistry::new();
        let u = reg.special(SpecialKind::Unity, 5);
        for i in 0..=5 {
            assert_eq!(
                reg.genfun(u).coeff(i).unwrap(),
                &GradedPoly::constant(Rational::from_bigint(factorial(i)).recip())
            );
        }
        let chi = reg.special(SpecialKind::Singleton, 5);
        let mut one_plus_t = TruncSeries::one(5);
        one_plus_t = one_plus_t.add(&TruncSeries::identity(5));
        assert_eq!(reg.genfun(chi), one_plus_t);
        let theta = reg.special(SpecialKind::ThetaBar, 5);
        for i in 1..=5 {
            assert_eq!(
                reg.genfun(theta).coeff(i).unwrap(),
                &GradedPoly::generator(Family::Complete, i as u32)
            );
        }
    }

    #[test]
    fn sum_rule_for_generating_functions() {
        // The generating function of a two-label sum is the product of the
        // generating functions: both sides compared coefficient-wise.
        let order = 6;
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(order));
        let gamma = reg.special(SpecialKind::Bell, order);
        let sum = expr(alpha).add(&expr(gamma));
        let product = reg.genfun(alpha).mul(&reg.genfun(gamma));
        for i in 0..=order {
            let moment = sum.pow(i as u32).eval(&reg).unwrap();
            let lhs = moment.scale(&Rational::from_bigint(factorial(i)).recip());
            assert_eq!(&lhs, product.coeff(i).unwrap());
        }
    }

    #[test]
    fn evaluation_reports_missing_moments() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(3));
        assert!(matches!(
            expr(alpha).pow(4).eval(&reg),
            Err(Error::MomentOrderExceeded { needed: 4, order: 3 })
        ));
    }

    #[test]
    fn equivalence_is_evaluation_equality() {
        let reg = UmbraRegistry::new();
        let alpha = reg.new_umbra(MomentSeq::generic(4));
        let two_dot = reg.dot(2, alpha);
        // alpha (alpha + 2.alpha) evaluates to a_2 + 2 a_1^2.
        let lhs = expr(alpha).mul(&expr(alpha).add(&expr(two_dot)));
        let rhs = UmbralExpr::from_coeff(&a(2) + &a(1).pow(2).scale(&Rational::from(2)));
        assert!(lhs.equivalent(&rhs, &reg).unwrap());
        let u = reg.special(SpecialKind::Unity, 4);
        let eps = reg.special(SpecialKind::Augmentation, 4);
        assert!(!expr(u).equivalent(&expr(eps), &reg).unwrap());
    }
}

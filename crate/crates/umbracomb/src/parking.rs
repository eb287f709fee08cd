//! Parking functions of type A, k-parking, and type B, their volume
//! polynomials, and Abel polynomials.
//!
//! Volume polynomials are kept as [`TypeAggregate`]s: coefficients indexed
//! by the exponent multiset of a monomial. The raw multivariate polynomials
//! behind the two computation routes differ for n >= 3, but their
//! aggregates coincide, and aggregation is also exactly what evaluation at
//! exchangeable uncorrelated umbrae can see.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, falling_factorial, Partition};
use crate::poly::GradedPoly;
use crate::rational::{factorial, Rational};
use crate::umbral::{MomentSeq, Umbra, UmbraRegistry, UmbralExpr};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParkingKind {
    /// Sorted entries satisfy p'_j <= j.
    Classical,
    /// Sorted entries satisfy p'_j <= k j.
    KParking(u32),
    /// Any sequence over [n].
    TypeB,
}

/// Whether the sequence parks under the kind's rule.
pub fn is_parking(p: &[u32], kind: ParkingKind) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::EmptySequence);
    }
    assert!(p.iter().all(|&v| v >= 1), "entries are positive integers");
    let n = p.len() as u32;
    match kind {
        ParkingKind::Classical | ParkingKind::KParking(_) => {
            let k = match kind {
                ParkingKind::KParking(k) => k,
                _ => 1,
            };
            let mut sorted = p.to_vec();
            sorted.sort_unstable();
            Ok(sorted
                .iter()
                .enumerate()
                .all(|(j, &v)| v <= k * (j as u32 + 1)))
        }
        ParkingKind::TypeB => Ok(p.iter().all(|&v| v <= n)),
    }
}

/// All parking functions of the kind, in lexicographic order.
pub fn enumerate_parking(n: u32, kind: ParkingKind) -> Vec<Vec<u32>> {
    assert!(n >= 1);
    let max = match kind {
        ParkingKind::Classical | ParkingKind::TypeB => n,
        ParkingKind::KParking(k) => k * n,
    };
    let mut out = Vec::new();
    let mut current = vec![1u32; n as usize];
    loop {
        if is_parking(&current, kind).expect("nonempty") {
            out.push(current.clone());
        }
        // Odometer step over [max]^n.
        let mut pos = n as usize;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < max {
                current[pos] += 1;
                for v in current[pos + 1..].iter_mut() {
                    *v = 1;
                }
                break;
            }
        }
    }
}

/// One representative per permutation orbit: the nondecreasing parking
/// functions, in lexicographic order.
pub fn orbit_representatives(n: u32) -> Vec<Vec<u32>> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn go(n: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == n as usize {
            out.push(current.clone());
            return;
        }
        let lo = current.last().copied().unwrap_or(1);
        let hi = current.len() as u32 + 1;
        for v in lo..=hi {
            current.push(v);
            go(n, current, out);
            current.pop();
        }
    }
    go(n, &mut current, &mut out);
    out
}

/// Coefficients of a symmetric polynomial aggregated by the exponent
/// multiset of each monomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TypeAggregate {
    coeffs: BTreeMap<Partition, Rational>,
}

impl TypeAggregate {
    pub fn new() -> Self {
        TypeAggregate::default()
    }

    pub fn add(&mut self, mu: Partition, c: Rational) {
        let entry = self.coeffs.entry(mu).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            let mu = self
                .coeffs
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("just inserted");
            self.coeffs.remove(&mu);
        }
    }

    pub fn get(&self, mu: &Partition) -> Rational {
        self.coeffs.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries in decreasing lexicographic partition order, matching the
    /// partition enumeration.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter().rev()
    }

    pub fn scale(&self, c: &Rational) -> TypeAggregate {
        TypeAggregate {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, v)| !(*v * c).is_zero())
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (mu, c) in self.entries() {
            map.insert(mu.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map)
    }

    /// Evaluate at uncorrelated similar umbrae with the given moments:
    /// the monomial class x^mu becomes the product of the moments mu_i.
    pub fn eval_moments(&self, m: &MomentSeq) -> Result<GradedPoly> {
        let mut acc = GradedPoly::zero();
        for (mu, c) in self.entries() {
            let mut term = GradedPoly::constant(c.clone());
            for &part in mu.parts() {
                term = &term * &m.moment(part as usize)?;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for TypeAggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mu, c) in self.entries() {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{mu}: {c}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VolumeKind {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VolumeMethod {
    /// Average the monomials of all parking functions of the kind.
    Definition,
    /// Emit (n)_{l(mu)-1} / (m(mu)! mu!) per partition (type A), with
    /// (n)_{l(mu)} in type B.
    ClosedForm,
}

/// The exponent multiset of the monomial x_{p_1} ... x_{p_n}.
fn shape_of(p: &[u32]) -> Partition {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &v in p {
        *counts.entry(v).or_insert(0) += 1;
    }
    Partition::new(counts.into_values().collect())
}

/// The volume polynomial as a type aggregate.
pub fn volume_poly(n: u32, kind: VolumeKind, method: VolumeMethod) -> TypeAggregate {
    assert!(n >= 1);
    match method {
        VolumeMethod::Definition => {
            let functions = match kind {
                VolumeKind::A => enumerate_parking(n, ParkingKind::Classical),
                VolumeKind::B => enumerate_parking(n, ParkingKind::TypeB),
            };
            let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
            for p in &functions {
                *counts.entry(shape_of(p)).or_insert(0) += 1;
            }
            let scale = Rational::from_bigint(factorial(n as usize)).recip();
            let mut agg = TypeAggregate::new();
            for (mu, count) in counts {
                agg.add(mu, Rational::from(count as i64) * &scale);
            }
            agg
        }
        VolumeMethod::ClosedForm => {
            let mut agg = TypeAggregate::new();
            for mu in enumerate_partitions(n) {
                let stats = mu.stats();
                let falling = match kind {
                    VolumeKind::A => falling_factorial(n as i64, stats.length as u32 - 1),
                    VolumeKind::B => falling_factorial(n as i64, stats.length as u32),
                };
                let c = Rational::from_bigint(falling)
                    / Rational::from_bigint(&stats.mult_factorial * &stats.part_factorial);
                agg.add(mu, c);
            }
            agg
        }
    }
}

/// The volume polynomial evaluated at n uncorrelated similar umbrae with
/// moments `m`.
pub fn volume_umbral(n: u32, kind: VolumeKind, m: &MomentSeq) -> Result<GradedPoly> {
    if m.order() < n as usize {
        return Err(Error::OrderTooSmall {
            needed: n as usize,
            order: m.order(),
        });
    }
    volume_poly(n, kind, VolumeMethod::ClosedForm).eval_moments(m)
}

/// Abel polynomials over two labels. Type A of degree n is
/// x (x - n.alpha)^{n-1}; type B of degree n is (x - (n+1).alpha)^n.
/// Subtraction of a dot umbra is addition of (-1).(n.alpha).
pub fn abel_poly(
    reg: &UmbraRegistry,
    n: u32,
    x: Umbra,
    alpha: Umbra,
    kind: VolumeKind,
) -> UmbralExpr {
    assert!(n >= 1);
    let x_expr = UmbralExpr::from_umbra(x);
    match kind {
        VolumeKind::A => {
            let minus_n_dot = reg.dot(-1, reg.dot(n as i64, alpha));
            let base = x_expr.add(&UmbralExpr::from_umbra(minus_n_dot));
            x_expr.mul(&base.pow(n - 1))
        }
        VolumeKind::B => {
            let minus_dot = reg.dot(-1, reg.dot(n as i64 + 1, alpha));
            x_expr.add(&UmbralExpr::from_umbra(minus_dot)).pow(n)
        }
    }
}

//! Truncated formal power series with [`GradedPoly`] coefficients.
//!
//! A series carries a fixed order `N` chosen at construction and stores the
//! ordinary coefficients `c_0, ..., c_N`. Binary operations require equal
//! orders and panic otherwise; there is no silent truncation mixing, which
//! keeps the compositional-inverse recursion honest about what it knows.

use crate::error::{Error, Result};
use crate::poly::GradedPoly;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<GradedPoly>,
}

impl TruncSeries {
    /// Series from explicit coefficients `c_0..c_N`; the order is the last
    /// index supplied.
    pub fn from_coeffs(coeffs: Vec<GradedPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        TruncSeries { coeffs }
    }

    pub fn from_fn<F: FnMut(usize) -> GradedPoly>(order: usize, mut f: F) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(|i| f(i)).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::from_fn(order, |_| GradedPoly::zero())
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::from_fn(order, |i| {
            if i == 0 {
                GradedPoly::one()
            } else {
                GradedPoly::zero()
            }
        })
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1, "the identity series needs order >= 1");
        TruncSeries::from_fn(order, |i| {
            if i == 1 {
                GradedPoly::one()
            } else {
                GradedPoly::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`, or a range error past the order.
    pub fn coeff(&self, n: usize) -> Result<&GradedPoly> {
        self.coeffs.get(n).ok_or(Error::CoeffOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    fn check_order(&self, other: &TruncSeries) {
        assert!(
            self.order() == other.order(),
            "series order mismatch: {} vs {}",
            self.order(),
            other.order()
        );
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        self.check_order(other);
        TruncSeries::from_fn(self.order(), |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.check_order(other);
        TruncSeries::from_fn(self.order(), |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries::from_fn(self.order(), |i| self.coeffs[i].scale(c))
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        self.check_order(other);
        let n = self.order();
        let mut coeffs = vec![GradedPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        TruncSeries { coeffs }
    }

    /// Multiplicative inverse; requires `c_0` to be a nonzero rational
    /// constant.
    pub fn recip(&self) -> Result<TruncSeries> {
        let c0 = &self.coeffs[0];
        if !c0.is_constant() || c0.is_zero() {
            return Err(Error::NonUnitConstant);
        }
        let inv0 = c0.constant_term().recip();
        let n = self.order();
        let mut coeffs = vec![GradedPoly::zero(); n + 1];
        coeffs[0] = GradedPoly::constant(inv0.clone());
        for k in 1..=n {
            let mut acc = GradedPoly::zero();
            for i in 1..=k {
                acc = &acc + &(&self.coeffs[i] * &coeffs[k - i]);
            }
            coeffs[k] = acc.scale(&-&inv0);
        }
        Ok(TruncSeries { coeffs })
    }

    /// Integer power; negative exponents go through [`recip`](Self::recip).
    pub fn pow(&self, k: i32) -> Result<TruncSeries> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = TruncSeries::one(self.order());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `self(g(t))`; `g` must have zero constant term.
    pub fn compose(&self, g: &TruncSeries) -> Result<TruncSeries> {
        self.check_order(g);
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = TruncSeries::zero(n);
        for i in (0..=n).rev() {
            acc = acc.mul(g);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse by order-by-order coefficient extraction:
    /// given `g` with `g(0) = 0` and invertible linear term, solve
    /// `g(h(t)) = t` for one new coefficient of `h` per order.
    pub fn comp_inverse(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let c1 = &self.coeffs[1];
        if !c1.is_constant() || c1.is_zero() {
            return Err(Error::NonUnitLinear);
        }
        let inv1 = c1.constant_term().recip();
        let n = self.order();
        let mut h = TruncSeries::zero(n);
        h.coeffs[1] = GradedPoly::constant(inv1.clone());
        for k in 2..=n {
            // With h known below order k, [t^k] g(h + h_k t^k) splits as
            // [t^k] g(h) + c_1 h_k, so one division pins h_k.
            let residue = self.compose(&h)?;
            h.coeffs[k] = residue.coeffs[k].scale(&-&inv1);
        }
        Ok(h)
    }
}

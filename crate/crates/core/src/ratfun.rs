//! Exact rational functions: reduced fractions of [`MPoly`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{GtError, Result};
use crate::poly::{poly_gcd, MPoly, Var};
use crate::scalar::{Rat, Scalar};

/// Reduced fraction of multivariate polynomials. The denominator is
/// nonzero and monic-normalized, and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    pub fn zero() -> Self {
        RatFn {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        Self::from_poly(MPoly::constant(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MPoly::int(n))
    }

    pub fn from_scalar(s: &Scalar) -> Self {
        Self::from_poly(MPoly::from_scalar(s))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the reduced denominator is constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        self.den
            .constant_value()
            .map(|c| self.num.scale(&(Rat::one() / c)))
    }

    pub fn as_rat(&self) -> Option<Rat> {
        let p = self.as_poly()?;
        p.constant_value()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one();
            return;
        }
        if !self.den.is_constant() {
            let g = poly_gcd(&self.num, &self.den);
            if !g.is_constant() {
                self.num = self.num.try_div_exact(&g).expect("gcd divides");
                self.den = self.den.try_div_exact(&g).expect("gcd divides");
            }
        }
        // normalize so the denominator has leading coefficient 1
        if let Some((_, c)) = self.den.terms.iter().next_back() {
            let inv = Rat::one() / c.clone();
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFn::new(self.num.add(&other.num), self.den.clone());
        }
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        if self.is_zero() || other.is_zero() {
            return RatFn::zero();
        }
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, q: &Rat) -> RatFn {
        if q.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(GtError::Malformed("division by zero".into()));
        }
        Ok(RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn derivative(&self, v: Var) -> RatFn {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RatFn::new(dn, self.den.clone());
        }
        RatFn::new(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    pub fn swap_vars(&self, a: Var, b: Var) -> RatFn {
        RatFn::new(self.num.swap_vars(a, b), self.den.swap_vars(a, b))
    }

    /// Substitute polynomials for variables; fails on a pole.
    pub fn substitute(&self, map: &BTreeMap<Var, MPoly>) -> Result<RatFn> {
        let num = self.num.substitute(map);
        let den = self.den.substitute(map);
        if den.is_zero() {
            return Err(GtError::PoleEvaluation);
        }
        Ok(RatFn::new(num, den))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().map(|c| c.is_one()) == Some(true) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;

    #[test]
    fn arithmetic_reduces() {
        let x = RatFn::from_poly(MPoly::var(1));
        let y = RatFn::from_poly(MPoly::var(2));
        // x/(x+y) + y/(x+y) = 1
        let s = x.div(&x.add(&y)).unwrap().add(&y.div(&x.add(&y)).unwrap());
        assert_eq!(s, RatFn::one());
        // (x^2 - y^2)/(x - y) = x + y
        let p = x.mul(&x).sub(&y.mul(&y));
        let q = p.div(&x.sub(&y)).unwrap();
        assert_eq!(q, x.add(&y));
    }

    #[test]
    fn quotient_rule() {
        let x = RatFn::from_poly(MPoly::var(1));
        let f = RatFn::one().div(&x).unwrap();
        let df = f.derivative(1);
        // d(1/x)/dx = -1/x^2
        assert_eq!(df, RatFn::one().neg().div(&x.mul(&x)).unwrap());
    }
}

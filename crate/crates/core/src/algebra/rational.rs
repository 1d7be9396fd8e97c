//! Rational functions in the central generators: pairs of multivariate
//! polynomials kept in a canonical normal form (gcd-reduced, denominator
//! monic in the lexicographic order), so equality is structural.

use std::fmt;

use num::{BigRational, One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::poly::{gcd, Poly};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                den: Poly::one(num.nvars()),
                num,
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        // make the denominator monic; its leading coefficient is the unit
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = BigRational::one() / lc;
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let nv = p.nvars();
        RationalFunction {
            num: p,
            den: Poly::one(nv),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        RationalFunction::from_poly(Poly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RationalFunction::from_poly(Poly::one(nvars))
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        RationalFunction::from_poly(Poly::var(nvars, idx))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Evaluate at a rational point; None when the denominator vanishes there.
    pub fn eval(&self, vals: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(vals);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(vals) / d)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RationalDisplay<'a> {
        RationalDisplay { rf: self, names }
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        json!({
            "num": self.num.to_json(names),
            "den": self.den.to_json(names),
        })
    }

    pub fn from_json(v: &Value, names: &[String]) -> Result<Self> {
        let num = v
            .get("num")
            .ok_or_else(|| Error::Json("coefficient needs a num field".into()))?;
        let den = v
            .get("den")
            .ok_or_else(|| Error::Json("coefficient needs a den field".into()))?;
        RationalFunction::new(Poly::from_json(num, names)?, Poly::from_json(den, names)?)
    }
}

pub struct RationalDisplay<'a> {
    rf: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rf.den.is_one() {
            if self.rf.num.term_count() > 1 {
                write!(f, "({})", self.rf.num.display(self.names))
            } else {
                write!(f, "{}", self.rf.num.display(self.names))
            }
        } else {
            write!(
                f,
                "({})/({})",
                self.rf.num.display(self.names),
                self.rf.den.display(self.names)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn x() -> RationalFunction {
        RationalFunction::var(2, 0)
    }

    fn y() -> RationalFunction {
        RationalFunction::var(2, 1)
    }

    #[test]
    fn reduction_is_canonical() {
        // (x^2 - y^2) / (x - y) reduces to x + y
        let num = x().mul(&x()).sub(&y().mul(&y()));
        let den = x().sub(&y());
        let r = num.div(&den).unwrap();
        assert_eq!(r, x().add(&y()));
        assert!(r.den().is_one());
    }

    #[test]
    fn denominator_monic() {
        // 1 / (2x) -> (1/2) / x
        let r = RationalFunction::one(2).div(&x().scale(&q(2))).unwrap();
        assert!(r.den().leading().unwrap().1.is_one());
        assert_eq!(r.mul(&x().scale(&q(2))), RationalFunction::one(2));
    }

    #[test]
    fn field_axioms_spot_checks() {
        let a = x().add(&RationalFunction::constant(2, q(1))).inv().unwrap();
        let b = y().inv().unwrap();
        let lhs = a.add(&b).mul(&a.sub(&b));
        let rhs = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(lhs, rhs);
        assert_eq!(a.mul(&a.inv().unwrap()), RationalFunction::one(2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(Poly::one(1), Poly::zero(1)),
            Err(Error::ZeroDenominator)
        ));
        assert!(RationalFunction::zero(1).inv().is_err());
    }

    #[test]
    fn eval_detects_poles() {
        let r = RationalFunction::one(2).div(&x()).unwrap();
        assert_eq!(r.eval(&[q(2), q(0)]), Some(q(1) / q(2)));
        assert_eq!(r.eval(&[q(0), q(1)]), None);
    }
}

//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! These carry the coefficients of the graded series: polynomials in the
//! central (degree-zero) generators only. Terms are kept in a BTreeMap keyed
//! by exponent vectors, so the monomial order is plain lexicographic on the
//! exponents and every polynomial has a canonical form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { nvars, terms }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Poly::monomial(nvars, exps, BigRational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Leading term under the lexicographic order (the BTreeMap maximum).
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Largest variable index that actually occurs, if any.
    fn main_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for e in self.terms.keys() {
            for (v, &x) in e.iter().enumerate().rev() {
                if x > 0 {
                    best = Some(best.map_or(v, |b| b.max(v)));
                    break;
                }
            }
        }
        best
    }

    pub fn is_constant_poly(&self) -> bool {
        self.main_var().is_none()
    }

    /// Coefficient of v^d, as a polynomial with v removed.
    fn coeff_wrt(&self, v: usize, d: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    fn mul_var_pow(&self, v: usize, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[v] += d;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division; None when the divisor does not divide exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let (dm, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Vec<u32> = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let t = Poly::monomial(self.nvars, qm, rc / &dc);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Scale so the lexicographic leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = BigRational::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Pseudo-remainder of self by d in the variable v: repeatedly scales by
    /// d's leading v-coefficient so every cancellation is division-free.
    fn pseudo_rem(&self, d: &Poly, v: usize) -> Poly {
        let db = d.degree_in(v);
        let lb = d.coeff_wrt(v, db);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v);
            if dr < db {
                break;
            }
            let lr = r.coeff_wrt(v, dr);
            r = lb.mul(&r).sub(&lr.mul_var_pow(v, dr - db).mul(d));
        }
        r
    }

    /// Content with respect to v: the gcd of the v-coefficients.
    fn content_wrt(&self, v: usize) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        for d in 0..=self.degree_in(v) {
            let c = self.coeff_wrt(v, d);
            if c.is_zero() {
                continue;
            }
            acc = gcd(&acc, &c);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    fn primitive_wrt(&self, v: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_wrt(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    t *= &vals[v];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Schema: a list of [[[varName, exp], ...], "p/q"] entries.
    pub fn to_json(&self, names: &[String]) -> Value {
        assert_eq!(names.len(), self.nvars);
        let entries: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<Value> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(v, &x)| Value::Array(vec![Value::from(names[v].clone()), Value::from(x)]))
                    .collect();
                Value::Array(vec![Value::Array(vars), Value::from(c.to_string())])
            })
            .collect();
        Value::Array(entries)
    }

    pub fn from_json(v: &Value, names: &[String]) -> Result<Poly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("polynomial must be an array of terms".into()))?;
        let mut p = Poly::zero(names.len());
        for t in arr {
            let pair = t
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Json("polynomial term must be [vars, coeff]".into()))?;
            let mut exps = vec![0u32; names.len()];
            for ve in pair[0]
                .as_array()
                .ok_or_else(|| Error::Json("term vars must be an array".into()))?
            {
                let ve = ve
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Json("var entry must be [name, exp]".into()))?;
                let name = ve[0]
                    .as_str()
                    .ok_or_else(|| Error::Json("var name must be a string".into()))?;
                let exp = ve[1]
                    .as_u64()
                    .ok_or_else(|| Error::Json("exponent must be a nonnegative integer".into()))?;
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Json(format!("unknown variable {name}")))?;
                exps[idx] += exp as u32;
            }
            let c: BigRational = pair[1]
                .as_str()
                .ok_or_else(|| Error::Json("coefficient must be a string".into()))?
                .parse()
                .map_err(|_| Error::Json("coefficient must be an exact rational".into()))?;
            p.add_term(exps, c);
        }
        Ok(p)
    }
}

/// Gcd over the rationals, normalized monic; gcd(0,0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars, b.nvars);
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant_poly() || b.is_constant_poly() {
        return Poly::one(a.nvars);
    }
    if a == b {
        return a.monic();
    }
    // monomial fast path: the gcd is the componentwise-min monomial
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let mut min: Option<Vec<u32>> = None;
        for e in a.terms.keys().chain(b.terms.keys()) {
            min = Some(match min {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(x, y)| (*x).min(*y)).collect(),
            });
        }
        return Poly::monomial(a.nvars, min.unwrap(), BigRational::one());
    }
    let v = a
        .main_var()
        .into_iter()
        .chain(b.main_var())
        .max()
        .expect("non-constant");
    let ca = a.content_wrt(v);
    let pa = a.div_exact(&ca).expect("content divides");
    let cb = b.content_wrt(v);
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd(&ca, &cb);
    let (mut big, mut small) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !small.is_zero() {
        let r = big.pseudo_rem(&small, v);
        big = small;
        small = r.primitive_wrt(v);
    }
    cg.mul(&big.primitive_wrt(v)).monic()
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| {
                    if x == 1 {
                        self.names[v].clone()
                    } else {
                        format!("{}^{}", self.names[v], x)
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Deterministic ordering helper used where polynomials key maps.
pub fn cmp_poly(a: &Poly, b: &Poly) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn arithmetic_basics() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expect);
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn div_exact_roundtrip() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = x.add(&y);
        let b = x.mul(&x).add(&y.scale(&q(3)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let x = Poly::var(1, 0);
        let one = Poly::one(1);
        // (x+1)^2 (x-1) vs (x+1)(x-1)^2 -> (x+1)(x-1) = x^2 - 1
        let p = x.add(&one).pow(2).mul(&x.sub(&one));
        let r = x.add(&one).mul(&x.sub(&one).pow(2));
        let g = gcd(&p, &r);
        assert_eq!(g, x.mul(&x).sub(&one));
    }

    #[test]
    fn gcd_multivariate() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let common = x.mul(&y).add(&z); // xy + z
        let a = common.mul(&x.add(&y));
        let b = common.mul(&z.add(&Poly::one(3)));
        let g = gcd(&a, &b);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn gcd_monomials() {
        let p = Poly::monomial(2, vec![3, 1], q(4));
        let r = Poly::monomial(2, vec![1, 2], q(6));
        assert_eq!(gcd(&p, &r), Poly::monomial(2, vec![1, 1], q(1)));
    }

    #[test]
    fn eval_exact() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).add(&y.scale(&(q(1) / q(2))));
        let v = p.eval(&[q(3), q(4)]);
        assert_eq!(v, q(11));
    }

    #[test]
    fn display_form() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).scale(&q(2)).sub(&y).add(&Poly::constant(2, q(1) / q(2)));
        assert_eq!(p.display(&names(&["x1", "x2"])).to_string(), "2*x1^2 - x2 + 1/2");
    }

    #[test]
    fn json_roundtrip() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.pow(2).sub(&y.scale(&(q(3) / q(2))));
        let ns = names(&["x1", "x2"]);
        let v = p.to_json(&ns);
        assert_eq!(Poly::from_json(&v, &ns).unwrap(), p);
    }
}

//! The Z_2^n-commutative function algebra of a chart or T-point domain:
//! truncated formal series in the nonzero-degree generators, with exact
//! rational-function coefficients in the degree-zero (central) generators.
//!
//! Multiplication reorders monomials into the canonical table order and
//! accumulates the sign rule per transposition; an odd generator squared
//! annihilates its term. Series are exact elements of the quotient ring at
//! truncation order N.

pub mod poly;
pub mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigRational, One};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grading::{DegreeVector, Grading};

pub use poly::Poly;
pub use rational::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: DegreeVector,
}

/// Ordered list of named generators. The order is canonical: it fixes the
/// normal form of graded monomials (and therefore every sign) and matches the
/// chart fill order. Generators of degree gamma_0 are central; they become
/// the polynomial variables of the coefficients.
#[derive(Debug)]
pub struct GeneratorTable {
    grading: Arc<Grading>,
    gens: Vec<Generator>,
    central: Vec<usize>,
    graded: Vec<usize>,
    central_names: Vec<String>,
    /// pairing <deg_i, deg_j> between graded generators i, j (graded order)
    pair: Vec<Vec<u8>>,
    odd: Vec<bool>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.grading == other.grading && self.gens == other.gens
    }
}
impl Eq for GeneratorTable {}

impl GeneratorTable {
    pub fn new(grading: Arc<Grading>, gens: Vec<Generator>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if g.degree.len() != grading.n() {
                return Err(Error::DegreeLength(g.degree.len(), grading.n()));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::Config(format!("duplicate generator name {}", g.name)));
            }
        }
        let mut central = Vec::new();
        let mut graded = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.degree.is_zero() {
                central.push(i);
            } else {
                graded.push(i);
            }
        }
        let central_names: Vec<String> = central.iter().map(|&i| gens[i].name.clone()).collect();
        let pair: Vec<Vec<u8>> = graded
            .iter()
            .map(|&i| {
                graded
                    .iter()
                    .map(|&j| gens[i].degree.pairing(&gens[j].degree).expect("same n"))
                    .collect()
            })
            .collect();
        let odd: Vec<bool> = graded.iter().map(|&i| !gens[i].degree.is_even()).collect();
        Ok(GeneratorTable {
            grading,
            gens,
            central,
            graded,
            central_names,
            pair,
            odd,
        })
    }

    /// Table with no generators at all: the algebra of constants.
    pub fn empty(grading: Arc<Grading>) -> Arc<Self> {
        Arc::new(GeneratorTable::new(grading, Vec::new()).expect("empty table"))
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn n_central(&self) -> usize {
        self.central.len()
    }

    pub fn n_graded(&self) -> usize {
        self.graded.len()
    }

    pub fn central_names(&self) -> &[String] {
        &self.central_names
    }

    /// Index into gens of the c-th central generator.
    pub fn central_gen(&self, c: usize) -> usize {
        self.central[c]
    }

    /// Index into gens of the g-th graded generator.
    pub fn graded_gen(&self, g: usize) -> usize {
        self.graded[g]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// For a generator index, its slot: Left(c) central, Right(g) graded.
    fn slot(&self, idx: usize) -> Slot {
        if self.gens[idx].degree.is_zero() {
            Slot::Central(self.central.iter().position(|&i| i == idx).unwrap())
        } else {
            Slot::Graded(self.graded.iter().position(|&i| i == idx).unwrap())
        }
    }

    /// Degree of a graded monomial given by its exponent vector.
    pub fn monomial_degree(&self, exps: &[u32]) -> DegreeVector {
        let mut d = DegreeVector::zero(self.grading.n());
        for (g, &e) in exps.iter().enumerate() {
            if e % 2 == 1 {
                d = d.add(&self.gens[self.graded[g]].degree).expect("same n");
            }
        }
        d
    }

    /// Sign exponent for reordering the concatenation of two canonical
    /// monomials: every generator of b crosses the generators of a that sit
    /// later in the table.
    fn crossing_parity(&self, a: &[u32], b: &[u32]) -> u8 {
        let mut s: u32 = 0;
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            for (i, &ai) in a.iter().enumerate().skip(j + 1) {
                if ai == 0 {
                    continue;
                }
                s += (ai & 1) * (bj & 1) * self.pair[i][j] as u32;
            }
        }
        (s % 2) as u8
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Central(usize),
    Graded(usize),
}

/// Homogeneity report of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(DegreeVector),
    Mixed,
}

/// Truncated formal series: a map from graded monomials (exponent vectors
/// over the graded generators, in table order) to rational-function
/// coefficients in the central generators. No zero coefficients are stored;
/// every monomial has total graded exponent <= the truncation order.
#[derive(Debug, Clone)]
pub struct GradedSeries {
    table: Arc<GeneratorTable>,
    trunc: u32,
    terms: BTreeMap<Vec<u32>, RationalFunction>,
}

impl PartialEq for GradedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.table == other.table && self.terms == other.terms
    }
}
impl Eq for GradedSeries {}

impl GradedSeries {
    pub fn zero(table: Arc<GeneratorTable>, trunc: u32) -> Self {
        GradedSeries {
            table,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: Arc<GeneratorTable>, trunc: u32) -> Self {
        Self::constant(table, trunc, BigRational::one())
    }

    pub fn constant(table: Arc<GeneratorTable>, trunc: u32, c: BigRational) -> Self {
        let nv = table.n_central();
        Self::from_coeff(table, trunc, RationalFunction::constant(nv, c))
    }

    pub fn from_coeff(table: Arc<GeneratorTable>, trunc: u32, c: RationalFunction) -> Self {
        let mut s = Self::zero(table, trunc);
        if !c.is_zero() {
            let key = vec![0u32; s.table.n_graded()];
            s.terms.insert(key, c);
        }
        s
    }

    /// The i-th generator of the table as a series.
    pub fn generator(table: Arc<GeneratorTable>, idx: usize, trunc: u32) -> Self {
        match table.slot(idx) {
            Slot::Central(c) => {
                let nv = table.n_central();
                Self::from_coeff(table, trunc, RationalFunction::var(nv, c))
            }
            Slot::Graded(g) => {
                let mut key = vec![0u32; table.n_graded()];
                key[g] = 1;
                let nv = table.n_central();
                let mut s = Self::zero(table, trunc);
                if trunc >= 1 {
                    s.terms.insert(key, RationalFunction::one(nv));
                }
                s
            }
        }
    }

    pub fn from_terms(
        table: Arc<GeneratorTable>,
        trunc: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, RationalFunction)>,
    ) -> Result<Self> {
        let mut s = Self::zero(table, trunc);
        for (exps, c) in terms {
            if exps.len() != s.table.n_graded() {
                return Err(Error::Config("monomial length mismatch".into()));
            }
            if exps.iter().sum::<u32>() > trunc {
                continue;
            }
            if exps
                .iter()
                .enumerate()
                .any(|(g, &e)| s.table.odd[g] && e > 1)
            {
                continue;
            }
            s.accumulate(exps, c);
        }
        Ok(s)
    }

    fn accumulate(&mut self, exps: Vec<u32>, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
                .unwrap_or(false)
    }

    fn compat(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GradedSeries {
            table: self.table.clone(),
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Scale by a coefficient (central, so it commutes with everything).
    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.table.clone(), self.trunc);
        }
        GradedSeries {
            table: self.table.clone(),
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Product in the graded-commutative ring: distributes over terms,
    /// reorders each monomial product into canonical order picking up the
    /// sign rule, kills odd squares, truncates at order N.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = Self::zero(self.table.clone(), self.trunc);
        // bucket by total exponent so truncation prunes early
        let mut a: Vec<(u32, &Vec<u32>, &RationalFunction)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().sum::<u32>(), e, c))
            .collect();
        let mut b: Vec<(u32, &Vec<u32>, &RationalFunction)> = other
            .terms
            .iter()
            .map(|(e, c)| (e.iter().sum::<u32>(), e, c))
            .collect();
        a.sort_by_key(|t| t.0);
        b.sort_by_key(|t| t.0);
        let table = self.table.clone();
        'outer: for &(ta, ea, ca) in &a {
            for &(tb, eb, cb) in &b {
                if ta + tb > self.trunc {
                    if tb == 0 {
                        // even the smallest b-term overflows; later a-terms only grow
                        break 'outer;
                    }
                    break;
                }
                let mut dead = false;
                let exps: Vec<u32> = ea
                    .iter()
                    .zip(eb)
                    .enumerate()
                    .map(|(g, (&x, &y))| {
                        if table.odd[g] && x + y > 1 {
                            dead = true;
                        }
                        x + y
                    })
                    .collect();
                if dead {
                    continue;
                }
                let mut c = ca.mul(cb);
                if table.crossing_parity(ea, eb) == 1 {
                    c = c.neg();
                }
                out.accumulate(exps, c);
            }
        }
        Ok(out)
    }

    /// Coefficient of the trivial monomial. Implements ev_x symbolically.
    pub fn body(&self) -> RationalFunction {
        let key = vec![0u32; self.table.n_graded()];
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.table.n_central()))
    }

    /// Series inverse: body(f)^{-1} * sum_{k<=N} (-h/body(f))^k with
    /// h = f - body(f). Exact in the truncated ring because h has zero body.
    pub fn invert(&self) -> Result<Self> {
        let b = self.body();
        if b.is_zero() {
            return Err(Error::ZeroBody);
        }
        let binv = b.inv().expect("nonzero");
        let h = self.sub(&Self::from_coeff(self.table.clone(), self.trunc, b))?;
        let t = h.scale(&binv.neg());
        // Horner: 1 + t(1 + t(...))
        let one = Self::one(self.table.clone(), self.trunc);
        let mut acc = one.clone();
        for _ in 0..self.trunc {
            acc = one.add(&t.mul(&acc)?)?;
        }
        Ok(acc.scale(&binv))
    }

    /// Drop monomials with total graded exponent above M. The result lives in
    /// the same ring; this is the quotient projection composed with inclusion.
    pub fn truncate_to(&self, m: u32) -> Result<Self> {
        if m > self.trunc {
            return Err(Error::InvalidTruncation {
                requested: m,
                max: self.trunc,
            });
        }
        Ok(GradedSeries {
            table: self.table.clone(),
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Common degree of all monomials; the zero series reports gamma_0.
    pub fn degree_of(&self) -> Homogeneity {
        let mut found: Option<DegreeVector> = None;
        for (e, c) in &self.terms {
            let mut d = self.table.monomial_degree(e);
            if !c.is_zero() && e.iter().all(|&x| x == 0) {
                d = DegreeVector::zero(self.table.grading.n());
            }
            match &found {
                None => found = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return Homogeneity::Mixed,
            }
        }
        Homogeneity::Homogeneous(found.unwrap_or_else(|| DegreeVector::zero(self.table.grading.n())))
    }

    pub fn is_homogeneous_of(&self, d: &DegreeVector) -> bool {
        if self.is_zero() {
            return true;
        }
        self.degree_of() == Homogeneity::Homogeneous(d.clone())
    }

    pub fn display(&self) -> SeriesDisplay<'_> {
        SeriesDisplay { s: self }
    }

    /// Schema: {"trunc": N, "terms": [{"mono": [[genName, exp], ...],
    /// "coeff": {"num": poly, "den": poly}}, ...]}
    pub fn to_json(&self) -> Value {
        let names = self.table.central_names();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<Value> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(g, &x)| {
                        let name = self.table.gens[self.table.graded[g]].name.clone();
                        Value::Array(vec![Value::from(name), Value::from(x)])
                    })
                    .collect();
                json!({ "mono": mono, "coeff": c.to_json(names) })
            })
            .collect();
        json!({ "trunc": self.trunc, "terms": terms })
    }

    pub fn from_json(table: Arc<GeneratorTable>, v: &Value) -> Result<Self> {
        let trunc = v
            .get("trunc")
            .and_then(|t| t.as_u64())
            .ok_or_else(|| Error::Json("series needs a trunc field".into()))? as u32;
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Json("series needs a terms array".into()))?;
        let names = table.central_names().to_vec();
        let mut parsed = Vec::new();
        for t in terms {
            let mono = t
                .get("mono")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::Json("term needs a mono array".into()))?;
            let mut exps = vec![0u32; table.n_graded()];
            for ve in mono {
                let pair = ve
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Json("mono entry must be [name, exp]".into()))?;
                let name = pair[0]
                    .as_str()
                    .ok_or_else(|| Error::Json("generator name must be a string".into()))?;
                let exp = pair[1]
                    .as_u64()
                    .ok_or_else(|| Error::Json("exponent must be a nonnegative integer".into()))?;
                let idx = table
                    .find(name)
                    .ok_or_else(|| Error::Json(format!("unknown generator {name}")))?;
                match table.slot(idx) {
                    Slot::Graded(g) => exps[g] += exp as u32,
                    Slot::Central(_) => {
                        return Err(Error::Json(format!(
                            "central generator {name} cannot appear in a monomial"
                        )))
                    }
                }
            }
            let coeff = t
                .get("coeff")
                .ok_or_else(|| Error::Json("term needs a coeff".into()))?;
            parsed.push((exps, RationalFunction::from_json(coeff, &names)?));
        }
        GradedSeries::from_terms(table, trunc, parsed)
    }
}

pub fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub struct SeriesDisplay<'a> {
    s: &'a GradedSeries,
}

impl fmt::Display for SeriesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return write!(f, "0");
        }
        let table = &self.s.table;
        let names = table.central_names();
        // order terms by (total exponent, exponent vector) so the body prints first
        let mut entries: Vec<(&Vec<u32>, &RationalFunction)> = self.s.terms.iter().collect();
        entries.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()));
        for (i, (e, c)) in entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(g, &x)| {
                    let name = &table.gens[table.graded[g]].name;
                    if x == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", c.display(names))?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", c.display(names), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A generator-wise assignment: the generators of one table mapped to
/// homogeneous series over another. Applying it is the algebra homomorphism
/// induced on series; composing transition maps is substitution.
#[derive(Debug, Clone)]
pub struct Substitution {
    gens_table: Arc<GeneratorTable>,
    image_table: Arc<GeneratorTable>,
    trunc: u32,
    images: Vec<GradedSeries>,
}

impl Substitution {
    pub fn new(
        gens_table: Arc<GeneratorTable>,
        image_table: Arc<GeneratorTable>,
        images: Vec<GradedSeries>,
    ) -> Result<Self> {
        if images.len() != gens_table.len() {
            return Err(Error::Config(format!(
                "expected {} images, got {}",
                gens_table.len(),
                images.len()
            )));
        }
        let mut trunc = None;
        for (i, img) in images.iter().enumerate() {
            if !same_table(&img.table, &image_table) {
                return Err(Error::TableMismatch);
            }
            match trunc {
                None => trunc = Some(img.trunc),
                Some(t) if t == img.trunc => {}
                Some(t) => return Err(Error::TruncationMismatch(t, img.trunc)),
            }
            let want = &gens_table.gens[i].degree;
            if !img.is_homogeneous_of(want) {
                return Err(Error::DegreeMismatch(gens_table.gens[i].name.clone()));
            }
        }
        let trunc = trunc.unwrap_or(0);
        Ok(Substitution {
            gens_table,
            image_table,
            trunc,
            images,
        })
    }

    pub fn identity(table: Arc<GeneratorTable>, trunc: u32) -> Self {
        let images = (0..table.len())
            .map(|i| GradedSeries::generator(table.clone(), i, trunc))
            .collect();
        Substitution {
            gens_table: table.clone(),
            image_table: table,
            trunc,
            images,
        }
    }

    pub fn gens_table(&self) -> &Arc<GeneratorTable> {
        &self.gens_table
    }

    pub fn image_table(&self) -> &Arc<GeneratorTable> {
        &self.image_table
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn images(&self) -> &[GradedSeries] {
        &self.images
    }

    pub fn image_of(&self, gen_idx: usize) -> &GradedSeries {
        &self.images[gen_idx]
    }

    pub fn is_identity(&self) -> bool {
        if !same_table(&self.gens_table, &self.image_table) {
            return false;
        }
        self.images.iter().enumerate().all(|(i, img)| {
            *img == GradedSeries::generator(self.gens_table.clone(), i, self.trunc)
        })
    }

    /// Apply to a series over the generator table. Graded generators are
    /// replaced termwise; a coefficient p/q becomes p(images) * q(images)^{-1},
    /// raising ZeroBody when some q(images) has zero body.
    pub fn apply(&self, f: &GradedSeries) -> Result<GradedSeries> {
        if !same_table(&f.table, &self.gens_table) {
            return Err(Error::TableMismatch);
        }
        if f.trunc != self.trunc {
            return Err(Error::TruncationMismatch(f.trunc, self.trunc));
        }
        let mut ctx = SubstCtx {
            sub: self,
            central_pows: vec![Vec::new(); self.gens_table.n_central()],
            den_inverses: BTreeMap::new(),
        };
        let mut acc = GradedSeries::zero(self.image_table.clone(), self.trunc);
        for (exps, coeff) in &f.terms {
            let mut term = ctx.eval_poly(coeff.num())?;
            if !coeff.den().is_one() {
                let dinv = ctx.den_inverse(coeff.den())?;
                term = term.mul(&dinv)?;
            }
            for (g, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = &self.images[self.gens_table.graded_gen(g)];
                for _ in 0..e {
                    term = term.mul(img)?;
                    if term.is_zero() {
                        break;
                    }
                }
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

struct SubstCtx<'a> {
    sub: &'a Substitution,
    central_pows: Vec<Vec<GradedSeries>>,
    den_inverses: BTreeMap<Poly, GradedSeries>,
}

impl SubstCtx<'_> {
    fn central_pow(&mut self, c: usize, e: u32) -> Result<GradedSeries> {
        let tbl = self.sub.image_table.clone();
        if e == 0 {
            return Ok(GradedSeries::one(tbl, self.sub.trunc));
        }
        let cache = &mut self.central_pows[c];
        if cache.is_empty() {
            let img = self.sub.images[self.sub.gens_table.central_gen(c)].clone();
            cache.push(img);
        }
        while cache.len() < e as usize {
            let next = cache.last().unwrap().mul(&cache[0])?;
            cache.push(next);
        }
        Ok(cache[e as usize - 1].clone())
    }

    fn eval_poly(&mut self, p: &Poly) -> Result<GradedSeries> {
        let tbl = self.sub.image_table.clone();
        let mut acc = GradedSeries::zero(tbl.clone(), self.sub.trunc);
        for (exps, c) in p.terms() {
            let mut term = GradedSeries::constant(tbl.clone(), self.sub.trunc, c.clone());
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                term = term.mul(&self.central_pow(v, e)?)?;
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    fn den_inverse(&mut self, q: &Poly) -> Result<GradedSeries> {
        if let Some(hit) = self.den_inverses.get(q) {
            return Ok(hit.clone());
        }
        let evaluated = self.eval_poly(q)?;
        let inv = evaluated.invert()?;
        self.den_inverses.insert(q.clone(), inv.clone());
        Ok(inv)
    }
}

/// Convenience builder for tables in tests and samplers.
pub fn table_from_degrees(
    grading: &Arc<Grading>,
    spec: &[(&str, &DegreeVector)],
) -> Result<Arc<GeneratorTable>> {
    let gens = spec
        .iter()
        .map(|(name, d)| Generator {
            name: name.to_string(),
            degree: (*d).clone(),
        })
        .collect();
    Ok(Arc::new(GeneratorTable::new(grading.clone(), gens)?))
}

#[cfg(test)]
mod tests;

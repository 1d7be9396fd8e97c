//! Seeded random generation for the verification sweeps: coefficients from a
//! small pool of integers and fractions, homogeneous series, T-point
//! algebras, grassmannian T-points, and GL points. Sub-seeds are derived per
//! tuple from the master seed, so sweep results do not depend on worker
//! scheduling.

use std::sync::Arc;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{table_from_degrees, GeneratorTable, GradedSeries, RationalFunction};
use crate::error::Result;
use crate::grading::{DegreeVector, Grading};
use crate::supermatrix::{BlockDims, SuperMatrix};

/// SplitMix64-style mixing of a master seed and a textual tag.
pub fn sub_seed(seed: u64, tag: &str) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &b in tag.as_bytes() {
        h = h.wrapping_add(b as u64);
        h ^= h >> 30;
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 27;
        h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
    }
    h
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A small rational from the declared pool; never zero.
pub fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    let den = rng.gen_range(1i64..=2);
    big(num) / big(den)
}

/// A small rational from the pool, zero included.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    if rng.gen_bool(0.2) {
        big(0)
    } else {
        random_nonzero_rational(rng)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SampleOpts {
    /// maximum number of monomials per sampled series
    pub max_terms: usize,
    /// cap on the total exponent of sampled monomials
    pub monomial_cap: u32,
    /// allow degree-one polynomials in the central variables as coefficients
    pub poly_coeffs: bool,
    /// allow single-variable denominators (x + c) in coefficients
    pub frac_coeffs: bool,
}

impl Default for SampleOpts {
    fn default() -> Self {
        SampleOpts {
            max_terms: 2,
            monomial_cap: 2,
            poly_coeffs: false,
            frac_coeffs: false,
        }
    }
}

fn random_coeff(rng: &mut ChaCha8Rng, nvars: usize, opts: &SampleOpts) -> RationalFunction {
    use crate::algebra::Poly;
    let c = random_nonzero_rational(rng);
    let mut num = Poly::constant(nvars, c);
    if opts.poly_coeffs && nvars > 0 && rng.gen_bool(0.5) {
        let v = rng.gen_range(0..nvars);
        num = num.add(&Poly::var(nvars, v).scale(&random_nonzero_rational(rng)));
    }
    let mut rf = RationalFunction::from_poly(num);
    if opts.frac_coeffs && nvars > 0 && rng.gen_bool(0.3) {
        let v = rng.gen_range(0..nvars);
        let den = Poly::var(nvars, v).add(&Poly::constant(nvars, big(rng.gen_range(1i64..=2))));
        rf = rf.div(&RationalFunction::from_poly(den)).expect("nonzero");
    }
    rf
}

/// All graded exponent vectors of the given degree with total exponent at
/// most `max_total` (the empty monomial included when the degree is zero).
pub fn monomials_of_degree(
    table: &GeneratorTable,
    degree: &DegreeVector,
    max_total: u32,
) -> Vec<Vec<u32>> {
    let g = table.n_graded();
    let mut out = Vec::new();
    let mut cur = vec![0u32; g];
    fn rec(
        table: &GeneratorTable,
        degree: &DegreeVector,
        pos: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == cur.len() {
            if table.monomial_degree(cur) == *degree {
                out.push(cur.clone());
            }
            return;
        }
        let gen_idx = table.graded_gen(pos);
        let odd = !table.gens()[gen_idx].degree.is_even();
        let cap = if odd { left.min(1) } else { left };
        for e in 0..=cap {
            cur[pos] = e;
            rec(table, degree, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(table, degree, 0, max_total, &mut cur, &mut out);
    out
}

/// Random homogeneous series of the requested degree. With `ensure_body` the
/// trivial monomial gets a nonzero constant coefficient (degree zero only).
pub fn random_homogeneous(
    table: &Arc<GeneratorTable>,
    trunc: u32,
    degree: &DegreeVector,
    opts: &SampleOpts,
    ensure_body: bool,
    rng: &mut ChaCha8Rng,
) -> GradedSeries {
    let cap = opts.monomial_cap.min(trunc);
    let mut candidates = monomials_of_degree(table, degree, cap);
    let mut terms: Vec<(Vec<u32>, RationalFunction)> = Vec::new();
    if ensure_body && degree.is_zero() {
        let empty = vec![0u32; table.n_graded()];
        candidates.retain(|m| *m != empty);
        terms.push((
            empty,
            RationalFunction::constant(table.n_central(), random_nonzero_rational(rng)),
        ));
    }
    let picks = rng.gen_range(0..=opts.max_terms.min(candidates.len()));
    for _ in 0..picks {
        if candidates.is_empty() {
            break;
        }
        let i = rng.gen_range(0..candidates.len());
        let mono = candidates.swap_remove(i);
        terms.push((mono, random_coeff(rng, table.n_central(), opts)));
    }
    GradedSeries::from_terms(table.clone(), trunc, terms).expect("sampled terms are valid")
}

/// Default T-point algebra for verification sweeps: `per_degree` generators
/// of every nonzero degree, none central, named t<degree>_<counter>.
pub fn verification_ttable(
    grading: &Arc<Grading>,
    per_degree: usize,
) -> Result<Arc<GeneratorTable>> {
    let mut spec: Vec<(String, DegreeVector)> = Vec::new();
    for d in 1..grading.count() {
        for j in 1..=per_degree {
            spec.push((format!("t{d}_{j}"), grading.degree(d).clone()));
        }
    }
    let refs: Vec<(&str, &DegreeVector)> = spec.iter().map(|(n, d)| (n.as_str(), d)).collect();
    table_from_degrees(grading, &refs)
}

/// Table for the randomized algebra-kernel suite: two central generators and
/// two of every nonzero degree, so sign handling and coefficient arithmetic
/// are both exercised.
pub fn algebra_suite_table(grading: &Arc<Grading>) -> Result<Arc<GeneratorTable>> {
    let mut spec: Vec<(String, DegreeVector)> = vec![
        ("x1".into(), grading.zero_degree().clone()),
        ("x2".into(), grading.zero_degree().clone()),
    ];
    for d in 1..grading.count() {
        for j in 1..=2 {
            spec.push((format!("xi{d}_{j}"), grading.degree(d).clone()));
        }
    }
    let refs: Vec<(&str, &DegreeVector)> = spec.iter().map(|(n, d)| (n.as_str(), d)).collect();
    table_from_degrees(grading, &refs)
}

/// The algebra of R^{r'} with r'_i = sum over degree pairs a+b=i of m_a m_b
/// for nonzero i and no central generators: the T of the surjectivity
/// criterion for transitivity.
pub fn rprime_ttable(grading: &Arc<Grading>, m: &BlockDims) -> Result<Arc<GeneratorTable>> {
    let blocks = grading.count();
    let mut spec: Vec<(String, DegreeVector)> = Vec::new();
    for d in 1..blocks {
        let mut r = 0usize;
        for a in 0..blocks {
            for b in 0..blocks {
                if grading.add_indices(a, b) == d {
                    r += m.size(a) * m.size(b);
                }
            }
        }
        for j in 1..=r {
            spec.push((format!("t{d}_{j}"), grading.degree(d).clone()));
        }
    }
    let refs: Vec<(&str, &DegreeVector)> = spec.iter().map(|(n, d)| (n.as_str(), d)).collect();
    table_from_degrees(grading, &refs)
}

/// Random T-point of a chart: central generators get invertible bodies so
/// that minors stand a chance of being invertible; graded generators get
/// random homogeneous images.
pub fn random_tpoint_images(
    chart: &crate::grassmannian::Chart,
    ttable: &Arc<GeneratorTable>,
    trunc: u32,
    opts: &SampleOpts,
    rng: &mut ChaCha8Rng,
) -> Vec<GradedSeries> {
    chart
        .table()
        .gens()
        .iter()
        .map(|gen| {
            let ensure = gen.degree.is_zero();
            random_homogeneous(ttable, trunc, &gen.degree, opts, ensure, rng)
        })
        .collect()
}

/// Random zero-weight m x m matrix with invertible body: diagonal-degree
/// blocks get constant bodies redrawn until the whole body determinant is
/// nonzero, off-diagonal blocks get random homogeneous entries.
pub fn random_gl_matrix(
    grading: &Arc<Grading>,
    ttable: &Arc<GeneratorTable>,
    trunc: u32,
    dims: &BlockDims,
    opts: &SampleOpts,
    rng: &mut ChaCha8Rng,
    retries: usize,
) -> Result<SuperMatrix> {
    for _ in 0..retries {
        let mut m = SuperMatrix::zeros(
            grading.clone(),
            ttable.clone(),
            trunc,
            dims.clone(),
            dims.clone(),
        );
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let d = m.cell_degree(r, c);
                let ensure = d.is_zero() && r == c;
                let entry = random_homogeneous(ttable, trunc, &d, opts, ensure, rng);
                m.set_entry(r, c, entry);
            }
        }
        if !m.body_det()?.is_zero() {
            return Ok(m);
        }
    }
    Err(crate::error::Error::SingularBody)
}

/// Seeded selection of `count` tuples out of 0..len per slot.
pub fn sample_tuples(len: usize, slots: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    (0..count)
        .map(|_| (0..slots).map(|_| rng.gen_range(0..len)).collect())
        .collect()
}

/// An element drawn uniformly from a slice.
pub fn pick<'a, T>(items: &'a [T], rng: &mut ChaCha8Rng) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_seed_is_stable_and_tag_sensitive() {
        assert_eq!(sub_seed(42, "a:1"), sub_seed(42, "a:1"));
        assert_ne!(sub_seed(42, "a:1"), sub_seed(42, "a:2"));
        assert_ne!(sub_seed(42, "a:1"), sub_seed(43, "a:1"));
    }

    #[test]
    fn monomial_enumeration_respects_degree_and_caps() {
        let g = Grading::new(1).unwrap();
        let odd = g.degree(1).clone();
        let t = table_from_degrees(&g, &[("a", &odd), ("b", &odd)]).unwrap();
        let evens = monomials_of_degree(&t, g.zero_degree(), 2);
        // {}, ab
        assert_eq!(evens.len(), 2);
        let odds = monomials_of_degree(&t, &odd, 2);
        // a, b
        assert_eq!(odds.len(), 2);
        for m in odds {
            assert_eq!(t.monomial_degree(&m), odd);
        }
    }

    #[test]
    fn random_homogeneous_is_homogeneous() {
        let g = Grading::new(2).unwrap();
        let t = verification_ttable(&g, 2).unwrap();
        let mut rng = rng_from(7);
        let opts = SampleOpts::default();
        for d in 0..g.count() {
            let deg = g.degree(d).clone();
            for _ in 0..20 {
                let s = random_homogeneous(&t, 3, &deg, &opts, d == 0, &mut rng);
                assert!(s.is_homogeneous_of(&deg));
                if d == 0 {
                    assert!(!s.body().is_zero());
                }
            }
        }
    }

    #[test]
    fn rprime_counts() {
        let g = Grading::new(1).unwrap();
        let m = BlockDims::from_sizes(vec![2, 2]);
        let t = rprime_ttable(&g, &m).unwrap();
        // r_1 = m0*m1 + m1*m0 = 8, no central generators
        assert_eq!(t.n_central(), 0);
        assert_eq!(t.n_graded(), 8);
    }
}

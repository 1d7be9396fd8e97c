use std::sync::Arc;

use num::BigRational;

use super::*;
use crate::error::Error;
use crate::grading::Grading;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// n=1 table: central x, odd generators xi, eta (xi before eta).
fn odd_table() -> (Arc<Grading>, Arc<GeneratorTable>) {
    let g = Grading::new(1).unwrap();
    let odd = g.degree(1).clone();
    let t = table_from_degrees(&g, &[("x", g.zero_degree()), ("xi", &odd), ("eta", &odd)]).unwrap();
    (g, t)
}

/// n=2 table: central x, eta of the even nonzero degree (1,1), odd xi2, xi3.
fn mixed_table() -> (Arc<Grading>, Arc<GeneratorTable>) {
    let g = Grading::new(2).unwrap();
    let t = table_from_degrees(
        &g,
        &[
            ("x", g.zero_degree()),
            ("eta", g.degree(1)),
            ("xi2", g.degree(2)),
            ("xi3", g.degree(3)),
        ],
    )
    .unwrap();
    (g, t)
}

fn gen(t: &Arc<GeneratorTable>, name: &str, trunc: u32) -> GradedSeries {
    GradedSeries::generator(t.clone(), t.find(name).unwrap(), trunc)
}

#[test]
fn add_examples() {
    let (_, t) = odd_table();
    let x = gen(&t, "x", 3);
    let xi = gen(&t, "xi", 3);
    let zero = GradedSeries::zero(t.clone(), 3);
    assert_eq!(x.add(&zero).unwrap(), x);
    assert_eq!(x.add(&xi).unwrap().add(&xi.neg()).unwrap(), x);

    // (1/x) xi + (1/x) xi = (2/x) xi
    let invx = x.invert().unwrap();
    let term = invx.mul(&xi).unwrap();
    let two = term.add(&term).unwrap();
    assert_eq!(two, term.scale(&RationalFunction::constant(1, q(2))));
}

#[test]
fn add_requires_same_ring() {
    let (_, t) = odd_table();
    let (_, m) = mixed_table();
    let a = GradedSeries::one(t.clone(), 3);
    assert!(matches!(
        a.add(&GradedSeries::one(t, 2)),
        Err(Error::TruncationMismatch(3, 2))
    ));
    assert!(matches!(
        a.add(&GradedSeries::one(m, 3)),
        Err(Error::TableMismatch)
    ));
}

#[test]
fn mul_single_transposition_sign() {
    // eta*xi with xi before eta in the table and odd pairing: one transposition
    let (_, t) = odd_table();
    let xi = gen(&t, "xi", 3);
    let eta = gen(&t, "eta", 3);
    let xe = xi.mul(&eta).unwrap();
    let ex = eta.mul(&xi).unwrap();
    assert_eq!(ex, xe.neg());
    assert!(!xe.is_zero());
}

#[test]
fn mul_odd_square_is_zero() {
    let (_, t) = odd_table();
    let xi = gen(&t, "xi", 3);
    assert!(xi.mul(&xi).unwrap().is_zero());
}

#[test]
fn mul_even_nonzero_difference_of_squares() {
    // (x + eta)(x - eta) = x^2 - eta^2 when eta has even nonzero degree
    let (_, t) = mixed_table();
    let x = gen(&t, "x", 3);
    let eta = gen(&t, "eta", 3);
    let lhs = x.add(&eta).unwrap().mul(&x.sub(&eta).unwrap()).unwrap();
    let rhs = x.mul(&x).unwrap().sub(&eta.mul(&eta).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(eta.mul(&eta).unwrap().term_count(), 1);
}

#[test]
fn body_examples() {
    let (_, t) = odd_table();
    let x = gen(&t, "x", 3);
    let xi = gen(&t, "xi", 3);
    let eta = gen(&t, "eta", 3);
    let f = x.add(&xi.mul(&eta).unwrap()).unwrap();
    assert_eq!(f.body(), RationalFunction::var(1, 0));
    assert!(xi.body().is_zero());
    let (_, mt) = mixed_table();
    let h = gen(&mt, "eta", 3);
    let c = GradedSeries::constant(mt.clone(), 3, q(3) / q(2));
    let g = c.add(&h.mul(&h).unwrap()).unwrap();
    assert_eq!(g.body(), RationalFunction::constant(1, q(3) / q(2)));
}

#[test]
fn invert_geometric_series() {
    // (1 - eta)^{-1} at N=3 is 1 + eta + eta^2 + eta^3
    let (_, t) = mixed_table();
    let one = GradedSeries::one(t.clone(), 3);
    let eta = gen(&t, "eta", 3);
    let f = one.sub(&eta).unwrap();
    let inv = f.invert().unwrap();
    let mut expect = one.clone();
    let mut p = eta.clone();
    for _ in 0..3 {
        expect = expect.add(&p).unwrap();
        p = p.mul(&eta).unwrap();
    }
    assert_eq!(inv, expect);
    assert!(f.mul(&inv).unwrap().is_one());
}

#[test]
fn invert_central_and_nilpotent() {
    let (_, t) = odd_table();
    let x = gen(&t, "x", 3);
    assert_eq!(
        x.invert().unwrap().body(),
        RationalFunction::one(1).div(&RationalFunction::var(1, 0)).unwrap()
    );

    // (x + xi*eta)^{-1} = 1/x - (1/x^2) xi*eta
    let xi = gen(&t, "xi", 3);
    let eta = gen(&t, "eta", 3);
    let f = x.add(&xi.mul(&eta).unwrap()).unwrap();
    let inv = f.invert().unwrap();
    let xrf = RationalFunction::var(1, 0);
    let expect = GradedSeries::from_coeff(t.clone(), 3, xrf.inv().unwrap())
        .sub(
            &xi.mul(&eta)
                .unwrap()
                .scale(&xrf.mul(&xrf).inv().unwrap()),
        )
        .unwrap();
    assert_eq!(inv, expect);
    assert!(f.mul(&inv).unwrap().is_one());
    assert!(inv.mul(&f).unwrap().is_one());
}

#[test]
fn invert_zero_body_rejected() {
    let (_, t) = odd_table();
    let xi = gen(&t, "xi", 3);
    assert!(matches!(xi.invert(), Err(Error::ZeroBody)));
}

#[test]
fn substitute_identity_and_reciprocal() {
    let (_, t) = odd_table();
    let x = gen(&t, "x", 3);
    let id = Substitution::identity(t.clone(), 3);
    let f = x.invert().unwrap().add(&gen(&t, "xi", 3)).unwrap();
    assert_eq!(id.apply(&f).unwrap(), f);

    // x |-> 1/x sends 1/x to x
    let mut images: Vec<GradedSeries> = (0..t.len())
        .map(|i| GradedSeries::generator(t.clone(), i, 3))
        .collect();
    images[t.find("x").unwrap()] = x.invert().unwrap();
    let sub = Substitution::new(t.clone(), t.clone(), images).unwrap();
    assert_eq!(sub.apply(&x.invert().unwrap()).unwrap(), x);
}

#[test]
fn substitute_linear_shift() {
    // f = x + xi2, x |-> x + eta^2, xi2 |-> xi2 gives x + eta^2 + xi2
    let (_, t) = mixed_table();
    let x = gen(&t, "x", 3);
    let eta = gen(&t, "eta", 3);
    let xi2 = gen(&t, "xi2", 3);
    let mut images: Vec<GradedSeries> = (0..t.len())
        .map(|i| GradedSeries::generator(t.clone(), i, 3))
        .collect();
    images[t.find("x").unwrap()] = x.add(&eta.mul(&eta).unwrap()).unwrap();
    let sub = Substitution::new(t.clone(), t.clone(), images).unwrap();
    let f = x.add(&xi2).unwrap();
    let expect = x.add(&eta.mul(&eta).unwrap()).unwrap().add(&xi2).unwrap();
    assert_eq!(sub.apply(&f).unwrap(), expect);
}

#[test]
fn substitute_zero_body_denominator_raises() {
    let (_, t) = odd_table();
    let x = gen(&t, "x", 3);
    let mut images: Vec<GradedSeries> = (0..t.len())
        .map(|i| GradedSeries::generator(t.clone(), i, 3))
        .collect();
    images[t.find("x").unwrap()] = GradedSeries::zero(t.clone(), 3);
    let sub = Substitution::new(t.clone(), t.clone(), images).unwrap();
    // applying to a series with no denominators is fine
    assert!(sub.apply(&x).unwrap().is_zero());
    // 1/x needs an invertible image
    assert!(matches!(sub.apply(&x.invert().unwrap()), Err(Error::ZeroBody)));
}

#[test]
fn substitute_degree_mismatch_rejected() {
    let (_, t) = odd_table();
    let mut images: Vec<GradedSeries> = (0..t.len())
        .map(|i| GradedSeries::generator(t.clone(), i, 3))
        .collect();
    images[t.find("xi").unwrap()] = gen(&t, "x", 3);
    assert!(matches!(
        Substitution::new(t.clone(), t.clone(), images),
        Err(Error::DegreeMismatch(_))
    ));
}

#[test]
fn truncate_examples() {
    let (_, t) = mixed_table();
    let one = GradedSeries::one(t.clone(), 3);
    let eta = gen(&t, "eta", 3);
    let f = one
        .add(&eta)
        .unwrap()
        .add(&eta.mul(&eta).unwrap())
        .unwrap();
    assert_eq!(f.truncate_to(1).unwrap(), one.add(&eta).unwrap());
    assert_eq!(f.truncate_to(3).unwrap(), f);
    let (_, ot) = odd_table();
    let pair = gen(&ot, "xi", 3).mul(&gen(&ot, "eta", 3)).unwrap();
    assert!(pair.truncate_to(1).unwrap().is_zero());
    assert!(matches!(
        f.truncate_to(4),
        Err(Error::InvalidTruncation { requested: 4, max: 3 })
    ));
}

#[test]
fn degree_of_examples() {
    let (g, t) = odd_table();
    let x = gen(&t, "x", 3);
    let xi = gen(&t, "xi", 3);
    let odd = g.degree(1).clone();
    assert_eq!(xi.degree_of(), Homogeneity::Homogeneous(odd.clone()));
    assert_eq!(x.mul(&xi).unwrap().degree_of(), Homogeneity::Homogeneous(odd));
    assert_eq!(x.add(&xi).unwrap().degree_of(), Homogeneity::Mixed);
    assert_eq!(
        GradedSeries::zero(t, 3).degree_of(),
        Homogeneity::Homogeneous(g.zero_degree().clone())
    );
}

#[test]
fn graded_commutativity_on_generators() {
    let (g, t) = mixed_table();
    for a in 0..t.len() {
        for b in 0..t.len() {
            let fa = GradedSeries::generator(t.clone(), a, 3);
            let fb = GradedSeries::generator(t.clone(), b, 3);
            let sign = t.gens()[a].degree.sign(&t.gens()[b].degree).unwrap();
            let lhs = fa.mul(&fb).unwrap();
            let mut rhs = fb.mul(&fa).unwrap();
            if sign < 0 {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs, "generators {a} and {b} over n={}", g.n());
        }
    }
}

#[test]
fn series_json_roundtrip() {
    let (_, t) = odd_table();
    let x = gen(&t, "x", 3);
    let f = x
        .invert()
        .unwrap()
        .add(&gen(&t, "xi", 3).mul(&gen(&t, "eta", 3)).unwrap())
        .unwrap()
        .scale(&RationalFunction::constant(1, q(3) / q(7)));
    let v = f.to_json();
    assert_eq!(GradedSeries::from_json(t, &v).unwrap(), f);
}

#[test]
fn display_single_generators() {
    let (_, t) = odd_table();
    assert_eq!(gen(&t, "xi", 3).display().to_string(), "xi");
    assert_eq!(gen(&t, "x", 3).display().to_string(), "x");
    assert_eq!(GradedSeries::zero(t.clone(), 3).display().to_string(), "0");
    assert_eq!(GradedSeries::one(t, 3).display().to_string(), "1");
}

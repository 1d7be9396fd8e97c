//! Executable verification of the structural identities: the cocycle
//! conditions of the atlas, the chart-gluing compatibility of the GL(m)
//! action, the action laws, the T-point form of the chart-change lemma, the
//! transitivity witness, and the randomized algebra-kernel checks.
//!
//! Sweeps evaluate independent tuples in parallel; every tuple draws its own
//! sub-seeded generator, and entries are sorted before reporting, so output
//! is identical regardless of scheduling.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{GeneratorTable, GradedSeries, Substitution};
use crate::error::{Error, Result};
use crate::grassmannian::{compose, transition, Atlas, Chart, TransitionMap};
use crate::group_action::{
    act, change_chart, standard_point, tpoint_from_images, tpoint_substitution, GlPoint,
    GrassmannTPoint,
};
use crate::report::{CheckEntry, Report};
use crate::sample::{
    random_gl_matrix, random_homogeneous, random_tpoint_images, rng_from, rprime_ttable,
    sample_tuples, sub_seed, SampleOpts,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleMode {
    Pairs,
    Triples,
    All,
}

#[derive(Debug, Clone)]
pub struct CocycleOptions {
    pub mode: CocycleMode,
    /// sample this many pairs and triples instead of sweeping everything
    pub samples: Option<usize>,
    pub seed: u64,
    /// test hook: perturb one transition map so the suite must fail
    pub corrupt: bool,
}

impl Default for CocycleOptions {
    fn default() -> Self {
        CocycleOptions {
            mode: CocycleMode::All,
            samples: None,
            seed: 0,
            corrupt: false,
        }
    }
}

/// Cache of the transition maps between the chart pairs a sweep touches.
pub struct TransitionCache<'a> {
    atlas: &'a Atlas,
    maps: HashMap<(usize, usize), TransitionMap>,
}

impl<'a> TransitionCache<'a> {
    pub fn compute(atlas: &'a Atlas, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut wanted: Vec<(usize, usize)> = pairs.to_vec();
        wanted.sort_unstable();
        wanted.dedup();
        let charts = atlas.charts();
        let maps = wanted
            .into_par_iter()
            .map(|(t, s)| transition(&charts[t], &charts[s]).map(|m| ((t, s), m)))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(TransitionCache { atlas, maps })
    }

    pub fn get(&self, target: usize, source: usize) -> &TransitionMap {
        &self.maps[&(target, source)]
    }

    /// Replace one cached map by its perturbed version (negative control).
    pub fn corrupt(&mut self, target: usize, source: usize) {
        let chart = &self.atlas.charts()[source];
        if let Some(m) = self.maps.get_mut(&(target, source)) {
            *m = m.perturbed(chart);
        }
    }
}

fn tuple_label(atlas: &Atlas, ids: &[usize]) -> Vec<String> {
    ids.iter()
        .map(|&i| atlas.charts()[i].index().to_string())
        .collect()
}

fn entry_from_map(kind: &str, tuple: Vec<String>, map: &TransitionMap) -> CheckEntry {
    if map.is_identity() {
        CheckEntry::pass(kind, tuple)
    } else {
        let (name, residual) = map
            .residual()
            .expect("non-identity map has a residual");
        CheckEntry::fail(kind, tuple, Some(name), Some(residual))
    }
}

/// g_{I,I} = id for one chart.
pub fn identity_entry(cache: &TransitionCache, i: usize) -> CheckEntry {
    let map = cache.get(i, i);
    entry_from_map("identity", tuple_label(cache.atlas, &[i]), map)
}

/// g_{J,I} o g_{I,J} = id for an ordered pair, checked on chart i's
/// generators by composing the two cached maps.
pub fn pair_entry(cache: &TransitionCache, i: usize, j: usize) -> Result<CheckEntry> {
    let round = compose(cache.get(i, j), cache.get(j, i))?;
    Ok(entry_from_map(
        "pair",
        tuple_label(cache.atlas, &[i, j]),
        &round,
    ))
}

/// The triple identity g_{S,I} o g_{J,S} o g_{I,J} = id on chart i.
pub fn triple_entry(cache: &TransitionCache, i: usize, j: usize, s: usize) -> Result<CheckEntry> {
    let through = compose(cache.get(i, j), cache.get(j, s))?;
    let round = compose(&through, cache.get(s, i))?;
    Ok(entry_from_map(
        "triple",
        tuple_label(cache.atlas, &[i, j, s]),
        &round,
    ))
}

/// The cocycle suite over an atlas: identity checks per chart, pair checks
/// over ordered pairs, triple checks over ordered triples (all of them, or a
/// seeded sample).
pub fn verify_cocycle(atlas: &Atlas, opts: &CocycleOptions) -> Result<Report> {
    let n = atlas.charts().len();
    let mut pair_tuples: Vec<(usize, usize)> = Vec::new();
    let mut triple_tuples: Vec<(usize, usize, usize)> = Vec::new();
    match opts.samples {
        None => {
            if matches!(opts.mode, CocycleMode::Pairs | CocycleMode::All) {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            pair_tuples.push((i, j));
                        }
                    }
                }
            }
            if matches!(opts.mode, CocycleMode::Triples | CocycleMode::All) {
                for i in 0..n {
                    for j in 0..n {
                        for s in 0..n {
                            triple_tuples.push((i, j, s));
                        }
                    }
                }
            }
        }
        Some(count) => {
            let mut rng = rng_from(sub_seed(opts.seed, "cocycle:sample"));
            if matches!(opts.mode, CocycleMode::Pairs | CocycleMode::All) {
                for t in sample_tuples(n, 2, count, &mut rng) {
                    pair_tuples.push((t[0], t[1]));
                }
            }
            if matches!(opts.mode, CocycleMode::Triples | CocycleMode::All) {
                for t in sample_tuples(n, 3, count, &mut rng) {
                    triple_tuples.push((t[0], t[1], t[2]));
                }
            }
        }
    }

    let mut needed: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for &(i, j) in &pair_tuples {
        needed.push((i, j));
        needed.push((j, i));
    }
    for &(i, j, s) in &triple_tuples {
        needed.push((i, j));
        needed.push((j, s));
        needed.push((s, i));
    }
    let mut cache = TransitionCache::compute(atlas, &needed)?;
    if opts.corrupt && n > 1 {
        cache.corrupt(0, 1);
        cache.corrupt(1, 0);
    }

    let mut report = Report::new("cocycle");
    for i in 0..n {
        report.entries.push(identity_entry(&cache, i));
    }
    let pair_entries = pair_tuples
        .par_iter()
        .map(|&(i, j)| pair_entry(&cache, i, j))
        .collect::<Result<Vec<_>>>()?;
    report.entries.extend(pair_entries);
    let triple_entries = triple_tuples
        .par_iter()
        .map(|&(i, j, s)| triple_entry(&cache, i, j, s))
        .collect::<Result<Vec<_>>>()?;
    report.entries.extend(triple_entries);
    report.sort();
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ActionOptions {
    pub seed: u64,
    /// number of 4-tuples to sample; None sweeps all |charts|^4 tuples
    pub tuples: Option<usize>,
    /// GL points drawn per tuple
    pub gl_points: usize,
    /// lemma consistency samples
    pub lemma_samples: usize,
    /// unit and associativity law samples
    pub law_samples: usize,
    /// redraw budget for samples outside the overlap domains
    pub retries: usize,
}

impl Default for ActionOptions {
    fn default() -> Self {
        ActionOptions {
            seed: 0,
            tuples: None,
            gl_points: 1,
            lemma_samples: 20,
            law_samples: 20,
            retries: 25,
        }
    }
}

fn sample_opts() -> SampleOpts {
    SampleOpts {
        max_terms: 2,
        monomial_cap: 2,
        poly_coeffs: false,
        frac_coeffs: false,
    }
}

fn random_gl_point(
    atlas: &Atlas,
    ttable: &Arc<GeneratorTable>,
    rng: &mut rand_chacha::ChaCha8Rng,
    retries: usize,
) -> Result<GlPoint> {
    let m = random_gl_matrix(
        atlas.grading(),
        ttable,
        atlas.trunc(),
        atlas.m(),
        &sample_opts(),
        rng,
        retries,
    )?;
    GlPoint::new(m)
}

fn random_point_in(
    chart: &Chart,
    ttable: &Arc<GeneratorTable>,
    trunc: u32,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> GrassmannTPoint {
    let images = random_tpoint_images(chart, ttable, trunc, &sample_opts(), rng);
    tpoint_from_images(chart, ttable, trunc, &images).expect("sampled images are homogeneous")
}

/// One gluing-diagram check: for psi in chart I,
/// (g_{L,J})_T(A_I^J(psi)) = A_Q^L((g_{Q,I})_T(psi)).
pub fn gluing_entry(
    atlas: &Atlas,
    ttable: &Arc<GeneratorTable>,
    tuple: (usize, usize, usize, usize),
    p: &GlPoint,
    seed: u64,
    retries: usize,
) -> CheckEntry {
    let (i, j, q, l) = tuple;
    let charts = atlas.charts();
    let label = tuple_label(atlas, &[i, j, q, l]);
    let mut rng = rng_from(seed);
    for _ in 0..retries {
        let psi = random_point_in(&charts[i], ttable, atlas.trunc(), &mut rng);
        let left = act(&psi, p, charts[j].index())
            .and_then(|in_j| change_chart(&in_j, charts[l].index()));
        let right = change_chart(&psi, charts[q].index())
            .and_then(|in_q| act(&in_q, p, charts[l].index()));
        match (left, right) {
            (Ok(a), Ok(b)) => {
                if a == b {
                    return CheckEntry::pass("gluing", label);
                }
                let residual = first_matrix_residual(a.matrix(), b.matrix());
                return CheckEntry::fail(
                    "gluing",
                    label,
                    residual.as_ref().map(|(pos, _)| pos.clone()),
                    residual.map(|(_, r)| r),
                );
            }
            (Err(Error::SingularBody), _) | (_, Err(Error::SingularBody)) => continue,
            (Err(e), _) | (_, Err(e)) => {
                return CheckEntry::fail("gluing", label, Some(e.to_string()), None)
            }
        }
    }
    CheckEntry::skip("gluing", label, "no sample inside the overlap domain")
}

fn first_matrix_residual(
    a: &crate::supermatrix::SuperMatrix,
    b: &crate::supermatrix::SuperMatrix,
) -> Option<(String, GradedSeries)> {
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.entry(r, c) != b.entry(r, c) {
                let diff = a.entry(r, c).sub(b.entry(r, c)).expect("same ring");
                return Some((format!("entry ({r},{c})"), diff));
            }
        }
    }
    None
}

/// The T-point chart-change lemma: moving psi from chart J to chart I
/// directly equals assembling the transition images evaluated at psi.
pub fn lemma_entry(
    atlas: &Atlas,
    ttable: &Arc<GeneratorTable>,
    source: usize,
    target: usize,
    seed: u64,
    retries: usize,
) -> Result<CheckEntry> {
    let charts = atlas.charts();
    let label = tuple_label(atlas, &[source, target]);
    let tmap = transition(&charts[target], &charts[source])?;
    let mut rng = rng_from(seed);
    for _ in 0..retries {
        let psi = random_point_in(&charts[source], ttable, atlas.trunc(), &mut rng);
        let direct = match change_chart(&psi, charts[target].index()) {
            Ok(p) => p,
            Err(Error::SingularBody) => continue,
            Err(e) => return Err(e),
        };
        let sub = tpoint_substitution(&charts[source], &psi)?;
        let mut moved = Vec::with_capacity(tmap.images().len());
        let mut singular = false;
        for img in tmap.images() {
            match sub.apply(img) {
                Ok(s) => moved.push(s),
                Err(Error::ZeroBody) => {
                    singular = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if singular {
            continue;
        }
        let assembled = tpoint_from_images(&charts[target], ttable, atlas.trunc(), &moved)?;
        if assembled == direct {
            return Ok(CheckEntry::pass("lemma", label));
        }
        let residual = first_matrix_residual(direct.matrix(), assembled.matrix());
        return Ok(CheckEntry::fail(
            "lemma",
            label,
            residual.as_ref().map(|(p, _)| p.clone()),
            residual.map(|(_, r)| r),
        ));
    }
    Ok(CheckEntry::skip(
        "lemma",
        label,
        "no sample inside the overlap domain",
    ))
}

/// Action unit law on a random point of a random chart.
pub fn unit_entry(
    atlas: &Atlas,
    ttable: &Arc<GeneratorTable>,
    sample: usize,
    seed: u64,
) -> CheckEntry {
    let mut rng = rng_from(seed);
    let charts = atlas.charts();
    let i = rand::Rng::gen_range(&mut rng, 0..charts.len());
    let label = vec![format!("sample {sample}"), charts[i].index().to_string()];
    let psi = random_point_in(&charts[i], ttable, atlas.trunc(), &mut rng);
    let id = GlPoint::identity(ttable.clone(), atlas.trunc(), atlas.m().clone());
    match act(&psi, &id, charts[i].index()) {
        Ok(out) if out == psi => CheckEntry::pass("unit", label),
        Ok(out) => {
            let residual = first_matrix_residual(out.matrix(), psi.matrix());
            CheckEntry::fail(
                "unit",
                label,
                residual.as_ref().map(|(p, _)| p.clone()),
                residual.map(|(_, r)| r),
            )
        }
        Err(e) => CheckEntry::fail("unit", label, Some(e.to_string()), None),
    }
}

/// Mixed associativity: (psi . P) . Q = psi . (PQ) whenever both sides are
/// defined.
pub fn assoc_entry(
    atlas: &Atlas,
    ttable: &Arc<GeneratorTable>,
    sample: usize,
    seed: u64,
    retries: usize,
) -> CheckEntry {
    let mut rng = rng_from(seed);
    let charts = atlas.charts();
    let label = vec![format!("sample {sample}")];
    for _ in 0..retries {
        let i = rand::Rng::gen_range(&mut rng, 0..charts.len());
        let j = rand::Rng::gen_range(&mut rng, 0..charts.len());
        let l = rand::Rng::gen_range(&mut rng, 0..charts.len());
        let p = match random_gl_point(atlas, ttable, &mut rng, retries) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let q = match random_gl_point(atlas, ttable, &mut rng, retries) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let psi = random_point_in(&charts[i], ttable, atlas.trunc(), &mut rng);
        let lhs = act(&psi, &p, charts[j].index()).and_then(|m| act(&m, &q, charts[l].index()));
        let rhs = p.mul(&q).and_then(|pq| act(&psi, &pq, charts[l].index()));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                if a == b {
                    return CheckEntry::pass("assoc", label);
                }
                let residual = first_matrix_residual(a.matrix(), b.matrix());
                return CheckEntry::fail(
                    "assoc",
                    label,
                    residual.as_ref().map(|(p, _)| p.clone()),
                    residual.map(|(_, r)| r),
                );
            }
            (Err(Error::SingularBody), _) | (_, Err(Error::SingularBody)) => continue,
            (Err(e), _) | (_, Err(e)) => {
                return CheckEntry::fail("assoc", label, Some(e.to_string()), None)
            }
        }
    }
    CheckEntry::skip("assoc", label, "no sample where both sides are defined")
}

/// The action suite: gluing diagram over chart 4-tuples, the chart-change
/// lemma, the unit law, and mixed associativity.
pub fn verify_action(
    atlas: &Atlas,
    ttable: &Arc<GeneratorTable>,
    opts: &ActionOptions,
) -> Result<Report> {
    let n = atlas.charts().len();
    let tuples: Vec<(usize, usize, usize, usize)> = match opts.tuples {
        None => {
            let mut all = Vec::with_capacity(n * n * n * n);
            for i in 0..n {
                for j in 0..n {
                    for q in 0..n {
                        for l in 0..n {
                            all.push((i, j, q, l));
                        }
                    }
                }
            }
            all
        }
        Some(count) => {
            let mut rng = rng_from(sub_seed(opts.seed, "action:tuples"));
            sample_tuples(n, 4, count, &mut rng)
                .into_iter()
                .map(|t| (t[0], t[1], t[2], t[3]))
                .collect()
        }
    };

    let mut report = Report::new("action");
    let gluing: Vec<CheckEntry> = tuples
        .par_iter()
        .flat_map(|&tuple| {
            (0..opts.gl_points)
                .into_par_iter()
                .map(move |pidx| (tuple, pidx))
        })
        .map(|(tuple, pidx)| {
            let tag = format!(
                "gluing:{}:{}:{}:{}:{}",
                tuple.0, tuple.1, tuple.2, tuple.3, pidx
            );
            let mut rng = rng_from(sub_seed(opts.seed, &format!("{tag}:gl")));
            let p = random_gl_point(atlas, ttable, &mut rng, opts.retries)?;
            Ok(gluing_entry(
                atlas,
                ttable,
                tuple,
                &p,
                sub_seed(opts.seed, &tag),
                opts.retries,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    report.entries.extend(gluing);

    let lemma: Vec<CheckEntry> = (0..opts.lemma_samples)
        .into_par_iter()
        .map(|s| {
            let tag = format!("lemma:{s}");
            let mut rng = rng_from(sub_seed(opts.seed, &format!("{tag}:pair")));
            let source = rand::Rng::gen_range(&mut rng, 0..n);
            let target = rand::Rng::gen_range(&mut rng, 0..n);
            lemma_entry(
                atlas,
                ttable,
                source,
                target,
                sub_seed(opts.seed, &tag),
                opts.retries,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    report.entries.extend(lemma);

    let laws: Vec<CheckEntry> = (0..opts.law_samples)
        .into_par_iter()
        .map(|s| {
            let unit = unit_entry(atlas, ttable, s, sub_seed(opts.seed, &format!("unit:{s}")));
            let assoc = assoc_entry(
                atlas,
                ttable,
                s,
                sub_seed(opts.seed, &format!("assoc:{s}")),
                opts.retries,
            );
            vec![unit, assoc]
        })
        .flatten()
        .collect();
    report.entries.extend(laws);

    report.sort();
    Ok(report)
}

/// Transitivity: for the standard base point of the first chart and a seeded
/// random target in every chart over O(R^{r'}), the solver must return V with
/// invertible body and p-hat V = W exactly.
pub fn verify_transitivity(atlas: &Atlas, seed: u64) -> Result<Report> {
    let ttable = rprime_ttable(atlas.grading(), atlas.m())?;
    let base = &atlas.charts()[0];
    let phat = standard_point(base, &ttable, atlas.trunc());
    let mut report = Report::new("transitivity");
    let entries = atlas
        .charts()
        .par_iter()
        .enumerate()
        .map(|(ci, chart)| {
            let tag = format!("transitivity:{ci}");
            let mut rng = rng_from(sub_seed(seed, &tag));
            let w = random_point_in(chart, &ttable, atlas.trunc(), &mut rng);
            let label = vec![base.index().to_string(), chart.index().to_string()];
            let v = match crate::group_action::solve_transitivity(base, &w) {
                Ok(v) => v,
                Err(e) => return Ok(CheckEntry::fail("transitivity", label, Some(e.to_string()), None)),
            };
            let pushed = phat.matrix().matmul(v.matrix())?;
            if &pushed == w.matrix() {
                Ok(CheckEntry::pass("transitivity", label))
            } else {
                let residual = first_matrix_residual(&pushed, w.matrix());
                Ok(CheckEntry::fail(
                    "transitivity",
                    label,
                    residual.as_ref().map(|(p, _)| p.clone()),
                    residual.map(|(_, r)| r),
                ))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    report.entries.extend(entries);
    report.sort();
    Ok(report)
}

/// Randomized exactness checks of the algebra kernel over a generator table:
/// associativity, graded commutativity with the sign rule, the body
/// homomorphism, and f * invert(f) = 1. One summary entry per law.
pub fn verify_algebra(
    table: &Arc<GeneratorTable>,
    trunc: u32,
    seed: u64,
    count: usize,
) -> Result<Report> {
    let opts = SampleOpts {
        max_terms: 3,
        monomial_cap: trunc.min(2),
        poly_coeffs: true,
        frac_coeffs: true,
    };
    let grading = table.grading().clone();
    let degrees: Vec<_> = (0..grading.count())
        .map(|d| grading.degree(d).clone())
        .collect();

    let mixed = |rng: &mut rand_chacha::ChaCha8Rng| -> GradedSeries {
        let mut acc = GradedSeries::zero(table.clone(), trunc);
        for d in &degrees {
            if rand::Rng::gen_bool(rng, 0.5) {
                let part = random_homogeneous(table, trunc, d, &opts, false, rng);
                acc = acc.add(&part).expect("same ring");
            }
        }
        acc
    };

    let mut report = Report::new("algebra");

    let assoc = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from(sub_seed(seed, &format!("algebra:assoc:{i}")));
            let f = mixed(&mut rng);
            let g = mixed(&mut rng);
            let h = mixed(&mut rng);
            let lhs = f.mul(&g)?.mul(&h)?;
            let rhs = f.mul(&g.mul(&h)?)?;
            let unital = f.mul(&GradedSeries::one(table.clone(), trunc))? == f;
            Ok(lhs == rhs && unital)
        })
        .collect::<Result<Vec<bool>>>()?;
    report
        .entries
        .push(summary_entry("assoc", count, &assoc));

    let comm = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from(sub_seed(seed, &format!("algebra:comm:{i}")));
            let da = &degrees[rand::Rng::gen_range(&mut rng, 0..degrees.len())];
            let db = &degrees[rand::Rng::gen_range(&mut rng, 0..degrees.len())];
            let f = random_homogeneous(table, trunc, da, &opts, false, &mut rng);
            let g = random_homogeneous(table, trunc, db, &opts, false, &mut rng);
            let fg = f.mul(&g)?;
            let mut gf = g.mul(&f)?;
            if da.sign(db)? < 0 {
                gf = gf.neg();
            }
            Ok(fg == gf)
        })
        .collect::<Result<Vec<bool>>>()?;
    report.entries.push(summary_entry("graded-comm", count, &comm));

    let body = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from(sub_seed(seed, &format!("algebra:body:{i}")));
            let f = mixed(&mut rng);
            let g = mixed(&mut rng);
            let prod_ok = f.mul(&g)?.body() == f.body().mul(&g.body());
            let sum_ok = f.add(&g)?.body() == f.body().add(&g.body());
            Ok(prod_ok && sum_ok)
        })
        .collect::<Result<Vec<bool>>>()?;
    report.entries.push(summary_entry("body-hom", count, &body));

    let inverses = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from(sub_seed(seed, &format!("algebra:invert:{i}")));
            let f = mixed(&mut rng).add(&GradedSeries::constant(
                table.clone(),
                trunc,
                crate::sample::random_nonzero_rational(&mut rng),
            ))?;
            if f.body().is_zero() {
                return Ok(true); // not in the invertible locus; nothing to check
            }
            let inv = f.invert()?;
            Ok(f.mul(&inv)?.is_one() && inv.mul(&f)?.is_one())
        })
        .collect::<Result<Vec<bool>>>()?;
    report.entries.push(summary_entry("invert", count, &inverses));

    report.sort();
    Ok(report)
}

fn summary_entry(kind: &str, count: usize, results: &[bool]) -> CheckEntry {
    match results.iter().position(|ok| !ok) {
        None => CheckEntry::pass(kind, vec![format!("{count} randomized checks")]),
        Some(i) => CheckEntry::fail(
            kind,
            vec![format!("{count} randomized checks")],
            Some(format!("check {i}")),
            None,
        ),
    }
}

/// Substitution homomorphism checks: apply distributes over add and mul.
pub fn substitution_homomorphism_ok(
    table: &Arc<GeneratorTable>,
    sub: &Substitution,
    trunc: u32,
    seed: u64,
    count: usize,
) -> Result<bool> {
    let opts = SampleOpts {
        max_terms: 2,
        monomial_cap: trunc.min(2),
        poly_coeffs: true,
        frac_coeffs: false,
    };
    let grading = table.grading().clone();
    for i in 0..count {
        let mut rng = rng_from(sub_seed(seed, &format!("subhom:{i}")));
        let mut f = GradedSeries::zero(table.clone(), trunc);
        let mut g = GradedSeries::zero(table.clone(), trunc);
        for d in 0..grading.count() {
            let deg = grading.degree(d).clone();
            f = f.add(&random_homogeneous(table, trunc, &deg, &opts, false, &mut rng))?;
            g = g.add(&random_homogeneous(table, trunc, &deg, &opts, false, &mut rng))?;
        }
        let adds = sub.apply(&f.add(&g)?)? == sub.apply(&f)?.add(&sub.apply(&g)?)?;
        let muls = sub.apply(&f.mul(&g)?)? == sub.apply(&f)?.mul(&sub.apply(&g)?)?;
        if !adds || !muls {
            return Ok(false);
        }
    }
    Ok(true)
}

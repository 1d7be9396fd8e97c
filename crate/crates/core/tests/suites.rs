//! Integration checks of the verification sweeps at small scale.

use zgrass_core::grading::Grading;
use zgrass_core::grassmannian::Atlas;
use zgrass_core::sample::verification_ttable;
use zgrass_core::supermatrix::BlockDims;
use zgrass_core::verify::{
    verify_action, verify_algebra, verify_cocycle, verify_transitivity, ActionOptions,
    CocycleMode, CocycleOptions,
};

fn n1_atlas(trunc: u32) -> Atlas {
    let g = Grading::new(1).unwrap();
    let k = BlockDims::from_sizes(vec![1, 1]);
    let m = BlockDims::from_sizes(vec![2, 2]);
    Atlas::build(&g, &k, &m, trunc).unwrap()
}

#[test]
fn cocycle_full_sweep_n1() {
    let atlas = n1_atlas(4);
    let report = verify_cocycle(&atlas, &CocycleOptions::default()).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    // 4 identity + 12 ordered pairs + 64 ordered triples
    assert_eq!(report.checks(), 4 + 12 + 64);
}

#[test]
fn cocycle_single_chart_is_vacuous() {
    let g = Grading::new(1).unwrap();
    let m = BlockDims::from_sizes(vec![2, 2]);
    let atlas = Atlas::build(&g, &m, &m, 3).unwrap();
    let report = verify_cocycle(&atlas, &CocycleOptions::default()).unwrap();
    assert!(report.passed());
    assert_eq!(report.checks(), 1 + 0 + 1); // identity and the trivial triple
}

#[test]
fn cocycle_corruption_is_detected() {
    let atlas = n1_atlas(3);
    let opts = CocycleOptions {
        mode: CocycleMode::Pairs,
        corrupt: true,
        ..Default::default()
    };
    let report = verify_cocycle(&atlas, &opts).unwrap();
    assert!(!report.passed());
    let bad = report.entries.iter().find(|e| !e.pass).unwrap();
    assert!(bad.residual.as_ref().is_some_and(|r| !r.is_zero()));
}

#[test]
fn action_suite_n1_sampled() {
    let atlas = n1_atlas(3);
    let ttable = verification_ttable(atlas.grading(), 2).unwrap();
    let opts = ActionOptions {
        seed: 11,
        tuples: Some(8),
        gl_points: 1,
        lemma_samples: 5,
        law_samples: 5,
        retries: 25,
    };
    let report = verify_action(&atlas, &ttable, &opts).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert!(report.skipped() < report.checks(), "all samples skipped");
}

#[test]
fn transitivity_suite_n1() {
    let atlas = n1_atlas(3);
    let report = verify_transitivity(&atlas, 5).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(report.checks(), 4);
}

#[test]
fn algebra_suite_small() {
    let g = Grading::new(2).unwrap();
    let t = verification_ttable(&g, 2).unwrap();
    let report = verify_algebra(&t, 3, 23, 50).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(report.checks(), 4);
}

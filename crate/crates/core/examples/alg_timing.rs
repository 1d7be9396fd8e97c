use std::io::Write;
use zgrass_core::algebra::GradedSeries;
use zgrass_core::grading::Grading;
use zgrass_core::sample::{algebra_suite_table, random_homogeneous, random_nonzero_rational, rng_from, sub_seed, SampleOpts};
fn main() {
    let g = Grading::new(2).unwrap();
    let table = algebra_suite_table(&g).unwrap();
    let trunc = 3u32;
    let opts = SampleOpts { max_terms: 3, monomial_cap: 2, poly_coeffs: true, frac_coeffs: true };
    let degrees: Vec<_> = (0..g.count()).map(|d| g.degree(d).clone()).collect();
    let mixed = |rng: &mut rand_chacha::ChaCha8Rng| -> GradedSeries {
        let mut acc = GradedSeries::zero(table.clone(), trunc);
        for d in &degrees {
            if rand::Rng::gen_bool(rng, 0.5) {
                acc = acc.add(&random_homogeneous(&table, trunc, d, &opts, false, rng)).unwrap();
            }
        }
        acc
    };
    let i = 246;
    let mut rng = rng_from(sub_seed(2024, &format!("algebra:invert:{i}")));
    let f = mixed(&mut rng).add(&GradedSeries::constant(table.clone(), trunc, random_nonzero_rational(&mut rng))).unwrap();
    println!("f = {}", f.display());
    std::io::stdout().flush().unwrap();
    let t0 = std::time::Instant::now();
    let inv = f.invert().unwrap();
    println!("invert took {:?}, inv terms={}", t0.elapsed(), inv.term_count());
    let t1 = std::time::Instant::now();
    let prod = f.mul(&inv).unwrap();
    println!("check mul took {:?}, is_one={}", t1.elapsed(), prod.is_one());
}

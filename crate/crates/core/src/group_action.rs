//! T-points of GL(m) and of the grassmannian, the chartwise action
//! psi |-> D_J((M_J([psi] [P]))^{-1} [psi] [P]), chart changes of T-points,
//! translations by real points, and the constructive transitivity solve.

use std::sync::Arc;
use std::sync::OnceLock;

use num::BigRational;
use serde_json::{json, Value};

use crate::algebra::{same_table, GeneratorTable, GradedSeries, Substitution};
use crate::error::{Error, Result};
use crate::grassmannian::Chart;
use crate::supermatrix::{BlockDims, KIndex, SuperMatrix};

/// An invertible zero-weight supermatrix over a T-point algebra: an element
/// of GL(m)(T). The inverse is computed on demand and cached.
#[derive(Debug, Clone)]
pub struct GlPoint {
    matrix: SuperMatrix,
    inverse: OnceLock<SuperMatrix>,
}

impl PartialEq for GlPoint {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for GlPoint {}

impl GlPoint {
    pub fn new(matrix: SuperMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.row_dims() != matrix.col_dims() {
            return Err(Error::DimensionMismatch(
                "GL points are square with equal block dims".into(),
            ));
        }
        if !matrix.is_zero_weight() {
            return Err(Error::DegreeMismatch(
                "GL points have weight zero".into(),
            ));
        }
        if matrix.body_det()?.is_zero() {
            return Err(Error::SingularBody);
        }
        Ok(GlPoint {
            matrix,
            inverse: OnceLock::new(),
        })
    }

    pub fn identity(
        table: Arc<GeneratorTable>,
        trunc: u32,
        dims: BlockDims,
    ) -> Self {
        let grading = table.grading().clone();
        GlPoint {
            matrix: SuperMatrix::identity(grading, table, trunc, dims),
            inverse: OnceLock::new(),
        }
    }

    pub fn matrix(&self) -> &SuperMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &BlockDims {
        self.matrix.row_dims()
    }

    /// Group law: the matrix product.
    pub fn mul(&self, other: &GlPoint) -> Result<GlPoint> {
        let matrix = self.matrix.matmul(&other.matrix)?;
        Ok(GlPoint {
            matrix,
            inverse: OnceLock::new(),
        })
    }

    /// Inverse over the truncated ring, exact; cached after the first call.
    pub fn inverse(&self) -> GlPoint {
        let inv = self
            .inverse
            .get_or_init(|| self.matrix.invert().expect("validated body-invertible"))
            .clone();
        let out = GlPoint {
            matrix: inv,
            inverse: OnceLock::new(),
        };
        let _ = out.inverse.set(self.matrix.clone());
        out
    }

    /// Translation by a real point of GL(m)_0: a block-diagonal invertible
    /// rational matrix, lifted to constant series.
    pub fn translate(&self, x: &[Vec<BigRational>], side: Side) -> Result<GlPoint> {
        let lifted = SuperMatrix::lift_rational(
            self.matrix.grading().clone(),
            self.matrix.table().clone(),
            self.matrix.trunc(),
            self.dims().clone(),
            x,
        )?;
        if lifted.body_det()?.is_zero() {
            return Err(Error::SingularBody);
        }
        let matrix = match side {
            Side::Right => self.matrix.matmul(&lifted)?,
            Side::Left => lifted.matmul(&self.matrix)?,
        };
        Ok(GlPoint {
            matrix,
            inverse: OnceLock::new(),
        })
    }

    pub fn to_json(&self) -> Value {
        self.matrix.to_json()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A T-point of the grassmannian seen in one chart: a k x m zero-weight
/// matrix with identity minor at the chart columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannTPoint {
    chart: KIndex,
    matrix: SuperMatrix,
}

impl GrassmannTPoint {
    pub fn new(chart: KIndex, matrix: SuperMatrix) -> Result<Self> {
        if !matrix.is_zero_weight() {
            return Err(Error::DegreeMismatch("T-points have weight zero".into()));
        }
        if !matrix.extract_minor(&chart)?.is_identity() {
            return Err(Error::ShapeMismatch(
                "T-point minor at its chart columns must be the identity".into(),
            ));
        }
        Ok(GrassmannTPoint { chart, matrix })
    }

    pub fn chart(&self) -> &KIndex {
        &self.chart
    }

    pub fn matrix(&self) -> &SuperMatrix {
        &self.matrix
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.matrix.table()
    }

    pub fn trunc(&self) -> u32 {
        self.matrix.trunc()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.matrix.to_json();
        v.as_object_mut()
            .expect("matrix json is an object")
            .insert("chart".into(), self.chart.to_json());
        v
    }
}

/// Assemble the matrix [psi] of a T-point from one image per chart generator,
/// placed by the chart's fill order, with identity minor.
pub fn tpoint_from_images(
    chart: &Chart,
    ttable: &Arc<GeneratorTable>,
    trunc: u32,
    images: &[GradedSeries],
) -> Result<GrassmannTPoint> {
    if images.len() != chart.table().len() {
        return Err(Error::Config(format!(
            "expected {} images, got {}",
            chart.table().len(),
            images.len()
        )));
    }
    for (gen, img) in chart.table().gens().iter().zip(images) {
        if !same_table(img.table(), ttable) {
            return Err(Error::TableMismatch);
        }
        if img.trunc() != trunc {
            return Err(Error::TruncationMismatch(img.trunc(), trunc));
        }
        if !img.is_homogeneous_of(&gen.degree) {
            return Err(Error::DegreeMismatch(gen.name.clone()));
        }
    }
    let grading = chart.grading().clone();
    let mut matrix = SuperMatrix::zeros(
        grading,
        ttable.clone(),
        trunc,
        chart.k().clone(),
        chart.m().clone(),
    );
    for (u, set) in chart.index().sets().iter().enumerate() {
        for (t, &p) in set.iter().enumerate() {
            matrix.set_entry(
                chart.k().offset(u) + t,
                chart.m().offset(u) + p - 1,
                GradedSeries::one(ttable.clone(), trunc),
            );
        }
    }
    for (&(r, c), img) in chart.positions().iter().zip(images) {
        matrix.set_entry(r, c, img.clone());
    }
    GrassmannTPoint::new(chart.index().clone(), matrix)
}

/// The standard base point of a chart: every generator sent to zero.
pub fn standard_point(
    chart: &Chart,
    ttable: &Arc<GeneratorTable>,
    trunc: u32,
) -> GrassmannTPoint {
    let zeros = vec![GradedSeries::zero(ttable.clone(), trunc); chart.table().len()];
    tpoint_from_images(chart, ttable, trunc, &zeros).expect("zero images are homogeneous")
}

/// Read the generator images of a T-point back off its matrix.
pub fn tpoint_images(chart: &Chart, point: &GrassmannTPoint) -> Result<Vec<GradedSeries>> {
    if chart.index() != point.chart() {
        return Err(Error::ShapeMismatch(
            "T-point does not live in this chart".into(),
        ));
    }
    Ok(chart
        .positions()
        .iter()
        .map(|&(r, c)| point.matrix.entry(r, c).clone())
        .collect())
}

/// The substitution sending chart generators to the T-point's images:
/// applying it to a chart series evaluates that section at the T-point.
pub fn tpoint_substitution(chart: &Chart, point: &GrassmannTPoint) -> Result<Substitution> {
    let images = tpoint_images(chart, point)?;
    Substitution::new(chart.table().clone(), point.table().clone(), images)
}

/// Move a T-point into another chart:
/// [psi'] = (M_target [psi])^{-1} [psi], whose target minor is the identity.
/// SingularBody signals that psi lies outside the target chart's domain.
pub fn change_chart(point: &GrassmannTPoint, target: &KIndex) -> Result<GrassmannTPoint> {
    if point.chart() == target {
        return Ok(point.clone());
    }
    let minor = point.matrix.extract_minor(target)?;
    if minor.body_det()?.is_zero() {
        return Err(Error::SingularBody);
    }
    let moved = minor.invert()?.matmul(&point.matrix)?;
    GrassmannTPoint::new(target.clone(), moved)
}

/// The chartwise action: psi in chart I acted on by P, landing in chart J as
/// D_J((M_J([psi][P]))^{-1} [psi][P]). SingularBody signals psi outside the
/// refined domain U_I^J(T).
pub fn act(
    point: &GrassmannTPoint,
    p: &GlPoint,
    target: &KIndex,
) -> Result<GrassmannTPoint> {
    let pushed = point.matrix.matmul(p.matrix())?;
    let minor = pushed.extract_minor(target)?;
    if minor.body_det()?.is_zero() {
        return Err(Error::SingularBody);
    }
    let landed = minor.invert()?.matmul(&pushed)?;
    GrassmannTPoint::new(target.clone(), landed)
}

/// Transitivity witness: for the standard base point p of `base` and a target
/// W over an algebra with no central generators, produce V in GL(m)(T) with
/// p-hat * V = [W] exactly. The rows of V at the base minor positions are
/// W's rows; the remaining rows are the identity rows at W's complementary
/// columns, which makes the body determinant +-1.
pub fn solve_transitivity(base: &Chart, w: &GrassmannTPoint) -> Result<GlPoint> {
    let ttable = w.table();
    if ttable.n_central() != 0 {
        return Err(Error::ShapeMismatch(
            "transitivity targets live over an algebra with no central generators".into(),
        ));
    }
    if w.matrix.row_dims() != base.k() || w.matrix.col_dims() != base.m() {
        return Err(Error::ShapeMismatch(
            "target T-point has a different shape".into(),
        ));
    }
    let m = base.m();
    let k = base.k();
    let trunc = w.trunc();
    let grading = base.grading().clone();
    let mut v = SuperMatrix::zeros(
        grading,
        ttable.clone(),
        trunc,
        m.clone(),
        m.clone(),
    );
    for u in 0..m.blocks() {
        // base-minor rows carry W's block rows
        for (t, &p) in base.index().set(u).iter().enumerate() {
            let vrow = m.offset(u) + p - 1;
            let wrow = k.offset(u) + t;
            for c in 0..m.total() {
                v.set_entry(vrow, c, w.matrix.entry(wrow, c).clone());
            }
        }
        // remaining rows: identity rows at the columns W's chart leaves free
        let free_rows: Vec<usize> = (1..=m.size(u))
            .filter(|&p| !base.index().contains(u, p))
            .collect();
        let free_cols: Vec<usize> = (1..=m.size(u))
            .filter(|&p| !w.chart.contains(u, p))
            .collect();
        debug_assert_eq!(free_rows.len(), free_cols.len());
        for (&p, &c) in free_rows.iter().zip(&free_cols) {
            v.set_entry(
                m.offset(u) + p - 1,
                m.offset(u) + c - 1,
                GradedSeries::one(ttable.clone(), trunc),
            );
        }
    }
    GlPoint::new(v)
}

/// Verification report entry payloads live in `report`; this helper renders
/// T-points for them.
pub fn tpoint_report_json(point: &GrassmannTPoint) -> Value {
    json!({ "chart": point.chart.to_json(), "matrix": point.matrix.to_json() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::table_from_degrees;
    use crate::grading::Grading;
    use crate::grassmannian::{build_chart, transition};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn dims(v: &[usize]) -> BlockDims {
        BlockDims::from_sizes(v.to_vec())
    }

    /// G_{1|1}(2|2) charts over a small odd T-algebra.
    fn setup() -> (Arc<Grading>, Vec<Chart>, Arc<GeneratorTable>) {
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 1]);
        let m = dims(&[2, 2]);
        let charts = crate::grassmannian::enumerate_charts(&g, &k, &m)
            .unwrap()
            .iter()
            .map(|idx| build_chart(&g, &k, &m, idx, 3).unwrap())
            .collect();
        let odd = g.degree(1).clone();
        let ttable = table_from_degrees(&g, &[("t1", &odd), ("t2", &odd)]).unwrap();
        (g, charts, ttable)
    }

    fn tgen(t: &Arc<GeneratorTable>, name: &str, trunc: u32) -> GradedSeries {
        GradedSeries::generator(t.clone(), t.find(name).unwrap(), trunc)
    }

    #[test]
    fn standard_point_matches_zeroed_label() {
        let (_, charts, ttable) = setup();
        let p = standard_point(&charts[0], &ttable, 3);
        assert!(p.matrix().extract_minor(charts[0].index()).unwrap().is_identity());
        for &(r, c) in charts[0].positions() {
            assert!(p.matrix().entry(r, c).is_zero());
        }
    }

    #[test]
    fn tpoint_over_own_chart_reproduces_label() {
        let (_, charts, _) = setup();
        let chart = &charts[0];
        let images: Vec<GradedSeries> = (0..chart.table().len())
            .map(|i| GradedSeries::generator(chart.table().clone(), i, 3))
            .collect();
        let p = tpoint_from_images(chart, chart.table(), 3, &images).unwrap();
        assert_eq!(p.matrix(), chart.label());
    }

    #[test]
    fn tpoint_rejects_degree_mismatch() {
        let (_, charts, ttable) = setup();
        let chart = &charts[0];
        let mut images = vec![GradedSeries::zero(ttable.clone(), 3); chart.table().len()];
        // x1 is central; an odd image must be rejected
        images[0] = tgen(&ttable, "t1", 3);
        assert!(matches!(
            tpoint_from_images(chart, &ttable, 3, &images),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn change_chart_identity_and_domain() {
        let (_, charts, ttable) = setup();
        let p = standard_point(&charts[0], &ttable, 3);
        assert_eq!(change_chart(&p, charts[0].index()).unwrap(), p);
        // the standard point of chart 1|1 has zero minor at 2|2
        assert!(matches!(
            change_chart(&p, charts[3].index()),
            Err(Error::SingularBody)
        ));
    }

    #[test]
    fn change_chart_agrees_with_transition_substitution() {
        let (_, charts, ttable) = setup();
        let source = &charts[0];
        let target = &charts[3];
        // psi in the source chart with invertible central images
        let mut images = Vec::new();
        for gen in source.table().gens() {
            if gen.degree.is_zero() {
                images.push(
                    GradedSeries::constant(ttable.clone(), 3, q(2)).add(
                        &tgen(&ttable, "t1", 3).mul(&tgen(&ttable, "t2", 3)).unwrap(),
                    )
                    .unwrap(),
                );
            } else {
                images.push(tgen(&ttable, "t1", 3).add(&tgen(&ttable, "t2", 3)).unwrap());
            }
        }
        let psi = tpoint_from_images(source, &ttable, 3, &images).unwrap();
        let direct = change_chart(&psi, target.index()).unwrap();

        let tmap = transition(target, source).unwrap();
        let sub = tpoint_substitution(source, &psi).unwrap();
        let moved: Vec<GradedSeries> = tmap
            .images()
            .iter()
            .map(|img| sub.apply(img).unwrap())
            .collect();
        let assembled = tpoint_from_images(target, &ttable, 3, &moved).unwrap();
        assert_eq!(direct, assembled);
    }

    #[test]
    fn act_with_identity_fixes_points() {
        let (_, charts, ttable) = setup();
        let chart = &charts[1];
        let psi = standard_point(chart, &ttable, 3);
        let id = GlPoint::identity(ttable.clone(), 3, dims(&[2, 2]));
        let out = act(&psi, &id, chart.index()).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn permutation_moves_standard_point_between_charts() {
        let (_, charts, ttable) = setup();
        let ci = &charts[0]; // 1|1
        let cj = &charts[3]; // 2|2
        let psi = standard_point(ci, &ttable, 3);
        // block-diagonal permutation swapping columns 1,2 in both blocks
        let mut x = vec![vec![q(0); 4]; 4];
        x[0][1] = q(1);
        x[1][0] = q(1);
        x[2][3] = q(1);
        x[3][2] = q(1);
        let id = GlPoint::identity(ttable.clone(), 3, dims(&[2, 2]));
        let p = id.translate(&x, Side::Right).unwrap();
        let out = act(&psi, &p, cj.index()).unwrap();
        assert_eq!(out, standard_point(cj, &ttable, 3));
    }

    #[test]
    fn gl_group_laws() {
        let (g, _, ttable) = setup();
        let d = dims(&[2, 2]);
        let id = GlPoint::identity(ttable.clone(), 3, d.clone());
        assert_eq!(id.inverse(), id);

        let mut m = SuperMatrix::identity(g.clone(), ttable.clone(), 3, d.clone());
        m.set_entry(0, 1, GradedSeries::constant(ttable.clone(), 3, q(3)));
        m.set_entry(0, 2, tgen(&ttable, "t1", 3));
        m.set_entry(3, 0, tgen(&ttable, "t2", 3));
        let p = GlPoint::new(m).unwrap();
        let pinv = p.inverse();
        assert!(p.mul(&pinv).unwrap().matrix().is_identity());
        assert!(pinv.mul(&p).unwrap().matrix().is_identity());
    }

    #[test]
    fn translate_laws() {
        let (_, _, ttable) = setup();
        let d = dims(&[2, 2]);
        let mut m = SuperMatrix::identity(
            ttable.grading().clone(),
            ttable.clone(),
            3,
            d.clone(),
        );
        m.set_entry(0, 2, tgen(&ttable, "t1", 3));
        let p = GlPoint::new(m).unwrap();

        let eye = vec![
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), q(1), q(0), q(0)],
            vec![q(0), q(0), q(1), q(0)],
            vec![q(0), q(0), q(0), q(1)],
        ];
        assert_eq!(p.translate(&eye, Side::Right).unwrap(), p);

        let x = vec![
            vec![q(2), q(1), q(0), q(0)],
            vec![q(0), q(1), q(0), q(0)],
            vec![q(0), q(0), q(1), q(0)],
            vec![q(0), q(0), q(3), q(1)],
        ];
        // x inverse computed by hand
        let xinv = vec![
            vec![q(1) / q(2), q(-1) / q(2), q(0), q(0)],
            vec![q(0), q(1), q(0), q(0)],
            vec![q(0), q(0), q(1), q(0)],
            vec![q(0), q(0), q(-3), q(1)],
        ];
        let moved = p.translate(&x, Side::Right).unwrap();
        assert_eq!(moved.translate(&xinv, Side::Right).unwrap(), p);
        // body homomorphism: body(P x) = body(P) x
        let body = moved.matrix().body_matrix();
        assert_eq!(body[0][0].as_constant().unwrap(), q(2));
        assert_eq!(body[0][1].as_constant().unwrap(), q(1));
    }

    #[test]
    fn translate_rejects_singular_point() {
        let (_, _, ttable) = setup();
        let d = dims(&[2, 2]);
        let id = GlPoint::identity(ttable.clone(), 3, d);
        let x = vec![vec![q(0); 4]; 4];
        assert!(matches!(
            id.translate(&x, Side::Left),
            Err(Error::SingularBody)
        ));
    }

    #[test]
    fn transitivity_standard_targets() {
        let (g, charts, _) = setup();
        // r' table: no central generators, r_1 = 2 * m0 * m1 = 8 odd ones
        let odd = g.degree(1).clone();
        let spec: Vec<(String, _)> = (1..=8).map(|i| (format!("t{i}"), &odd)).collect();
        let spec_refs: Vec<(&str, &crate::grading::DegreeVector)> =
            spec.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let ttable = table_from_degrees(&g, &spec_refs).unwrap();

        let base = &charts[0];
        let phat = standard_point(base, &ttable, 3);

        // target = the standard point of the base chart itself: V = identity
        let w0 = standard_point(base, &ttable, 3);
        let v0 = solve_transitivity(base, &w0).unwrap();
        assert!(v0.matrix().is_identity());

        // target = the standard point of another chart: a permutation-like V
        for other in &charts[1..] {
            let w = standard_point(other, &ttable, 3);
            let v = solve_transitivity(base, &w).unwrap();
            let pushed = phat.matrix().matmul(v.matrix()).unwrap();
            assert_eq!(&pushed, w.matrix());
        }
    }

    #[test]
    fn transitivity_rejects_central_generators() {
        let (g, charts, _) = setup();
        let central_table =
            table_from_degrees(&g, &[("s", g.zero_degree())]).unwrap();
        let w = standard_point(&charts[1], &central_table, 3);
        assert!(matches!(
            solve_transitivity(&charts[0], &w),
            Err(Error::ShapeMismatch(_))
        ));
    }
}

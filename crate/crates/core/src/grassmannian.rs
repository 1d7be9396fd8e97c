//! The chart atlas of the grassmannian G_k(m): k-index enumeration, the label
//! matrix of each chart with its fill-order generator table, and symbolic
//! transition maps obtained from the pasting equation
//! D_I((M_I A_J)^{-1} A_J) = D_I(A_I).

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{
    same_table, Generator, GeneratorTable, GradedSeries, Poly, Substitution,
};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::supermatrix::{BlockDims, KIndex, SuperMatrix};

/// beta_t = sum over degree pairs (i,j) with gamma_i + gamma_j = gamma_t of
/// k_i (m_j - k_j): the number of chart generators of degree gamma_t.
pub fn beta_dims(grading: &Grading, k: &BlockDims, m: &BlockDims) -> Result<BlockDims> {
    check_shape(grading, k, m)?;
    let blocks = grading.count();
    let mut beta = vec![0usize; blocks];
    for i in 0..blocks {
        for j in 0..blocks {
            let t = grading.add_indices(i, j);
            beta[t] += k.size(i) * (m.size(j) - k.size(j));
        }
    }
    Ok(BlockDims::from_sizes(beta))
}

pub fn check_shape(grading: &Grading, k: &BlockDims, m: &BlockDims) -> Result<()> {
    if k.blocks() != grading.count() || m.blocks() != grading.count() {
        return Err(Error::InvalidShape(format!(
            "k and m must have {} blocks",
            grading.count()
        )));
    }
    if m.total() == 0 {
        return Err(Error::InvalidShape("m must have a positive block".into()));
    }
    for b in 0..k.blocks() {
        if k.size(b) > m.size(b) {
            return Err(Error::InvalidShape(format!(
                "k_{b} = {} exceeds m_{b} = {}",
                k.size(b),
                m.size(b)
            )));
        }
    }
    Ok(())
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..=m {
            if m - p + 1 < k - cur.len() {
                break;
            }
            cur.push(p);
            rec(p + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(1, m, k, &mut cur, &mut out);
    out
}

/// All prod_i C(m_i, k_i) k-indices, lexicographic on the index tuples.
pub fn enumerate_charts(grading: &Grading, k: &BlockDims, m: &BlockDims) -> Result<Vec<KIndex>> {
    check_shape(grading, k, m)?;
    let per_block: Vec<Vec<Vec<usize>>> = (0..grading.count())
        .map(|b| subsets(m.size(b), k.size(b)))
        .collect();
    let mut out = vec![Vec::new()];
    for block in &per_block {
        let mut next = Vec::with_capacity(out.len() * block.len());
        for prefix in &out {
            for choice in block {
                let mut sets: Vec<Vec<usize>> = prefix.clone();
                sets.push(choice.clone());
                next.push(sets);
            }
        }
        out = next;
    }
    out.into_iter().map(KIndex::new).collect()
}

/// A chart of the atlas: its k-index, the generator table in fill order, and
/// the label matrix A_I with identity minor at the index columns.
#[derive(Debug, Clone)]
pub struct Chart {
    grading: Arc<Grading>,
    k: BlockDims,
    m: BlockDims,
    index: KIndex,
    table: Arc<GeneratorTable>,
    label: SuperMatrix,
    beta: BlockDims,
    /// (global row, global column) of each generator in the label, fill order
    positions: Vec<(usize, usize)>,
    trunc: u32,
}

impl Chart {
    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn k(&self) -> &BlockDims {
        &self.k
    }

    pub fn m(&self) -> &BlockDims {
        &self.m
    }

    pub fn index(&self) -> &KIndex {
        &self.index
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn label(&self) -> &SuperMatrix {
        &self.label
    }

    pub fn beta(&self) -> &BlockDims {
        &self.beta
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.table.gens().iter().map(|g| g.name.clone()).collect()
    }

    pub fn same_shape(&self, other: &Chart) -> bool {
        self.grading == other.grading
            && self.k == other.k
            && self.m == other.m
            && self.trunc == other.trunc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index.to_json(),
            "generators": self.generator_names(),
        })
    }
}

/// Builds the chart for a k-index: the non-minor columns are filled from up
/// to down and left to right with fresh generators, each sitting in a block
/// of its own degree; the minor columns form the identity. The traversal
/// order is the canonical total order of the generators.
pub fn build_chart(
    grading: &Arc<Grading>,
    k: &BlockDims,
    m: &BlockDims,
    index: &KIndex,
    trunc: u32,
) -> Result<Chart> {
    check_shape(grading, k, m)?;
    index.validate(k, m)?;
    let beta = beta_dims(grading, k, m)?;
    let blocks = grading.count();

    // pass 1: create generators in fill order
    let mut gens: Vec<Generator> = Vec::new();
    let mut positions: Vec<(usize, usize)> = Vec::new();
    let mut counters = vec![0usize; blocks];
    for u in 0..blocks {
        for p in 1..=m.size(u) {
            if index.contains(u, p) {
                continue;
            }
            let col = m.offset(u) + p - 1;
            for i in 0..blocks {
                for t in 0..k.size(i) {
                    let row = k.offset(i) + t;
                    let d = grading.add_indices(i, u);
                    counters[d] += 1;
                    let name = if d == 0 {
                        format!("x{}", counters[0])
                    } else {
                        format!("xi{}_{}", d, counters[d])
                    };
                    gens.push(Generator {
                        name,
                        degree: grading.degree(d).clone(),
                    });
                    positions.push((row, col));
                }
            }
        }
    }
    debug_assert_eq!(gens.len(), beta.total());
    let table = Arc::new(GeneratorTable::new(grading.clone(), gens)?);

    // pass 2: assemble the label
    let mut label = SuperMatrix::zeros(
        grading.clone(),
        table.clone(),
        trunc,
        k.clone(),
        m.clone(),
    );
    for u in 0..blocks {
        for (t, &p) in index.set(u).iter().enumerate() {
            label.set_entry(k.offset(u) + t, m.offset(u) + p - 1, GradedSeries::one(table.clone(), trunc));
        }
    }
    for (g, &(row, col)) in positions.iter().enumerate() {
        label.set_entry(row, col, GradedSeries::generator(table.clone(), g, trunc));
    }
    debug_assert!(label.is_zero_weight());
    debug_assert!(label.extract_minor(index)?.is_identity());

    Ok(Chart {
        grading: grading.clone(),
        k: k.clone(),
        m: m.clone(),
        index: index.clone(),
        table,
        label,
        beta,
        positions,
        trunc,
    })
}

/// The full atlas: every chart of G_k(m) at one truncation order.
#[derive(Debug, Clone)]
pub struct Atlas {
    grading: Arc<Grading>,
    k: BlockDims,
    m: BlockDims,
    trunc: u32,
    charts: Vec<Chart>,
}

impl Atlas {
    pub fn build(grading: &Arc<Grading>, k: &BlockDims, m: &BlockDims, trunc: u32) -> Result<Self> {
        let charts = enumerate_charts(grading, k, m)?
            .iter()
            .map(|idx| build_chart(grading, k, m, idx, trunc))
            .collect::<Result<Vec<Chart>>>()?;
        Ok(Atlas {
            grading: grading.clone(),
            k: k.clone(),
            m: m.clone(),
            trunc,
            charts,
        })
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn k(&self) -> &BlockDims {
        &self.k
    }

    pub fn m(&self) -> &BlockDims {
        &self.m
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, idx: &KIndex) -> Option<&Chart> {
        self.charts.iter().find(|c| c.index() == idx)
    }

    pub fn beta(&self) -> Result<BlockDims> {
        beta_dims(&self.grading, &self.k, &self.m)
    }
}

/// A symbolic chart change: each generator of the target chart is assigned a
/// series over the source chart, with the body determinant of
/// M_target(A_source) kept as the domain certificate.
#[derive(Debug, Clone)]
pub struct TransitionMap {
    source: KIndex,
    target: KIndex,
    subst: Substitution,
    certificate: Poly,
}

impl TransitionMap {
    pub fn source(&self) -> &KIndex {
        &self.source
    }

    pub fn target(&self) -> &KIndex {
        &self.target
    }

    /// The generator assignment: target-chart generators to source-chart series.
    pub fn substitution(&self) -> &Substitution {
        &self.subst
    }

    pub fn images(&self) -> &[GradedSeries] {
        self.subst.images()
    }

    pub fn certificate(&self) -> &Poly {
        &self.certificate
    }

    pub fn is_identity(&self) -> bool {
        self.subst.is_identity()
    }

    /// First generator whose image differs from the generator itself,
    /// together with the difference. None when the map is the identity.
    pub fn residual(&self) -> Option<(String, GradedSeries)> {
        let gens_table = self.subst.gens_table();
        if !same_table(gens_table, self.subst.image_table()) {
            let name = gens_table.gens().first()?.name.clone();
            return Some((name, self.subst.images().first()?.clone()));
        }
        for (i, img) in self.subst.images().iter().enumerate() {
            let expect = GradedSeries::generator(gens_table.clone(), i, self.subst.trunc());
            if *img != expect {
                let diff = img.sub(&expect).expect("same ring");
                return Some((gens_table.gens()[i].name.clone(), diff));
            }
        }
        None
    }

    /// Test hook: add a same-degree disturbance to the first image so the
    /// cocycle identities must fail with a nonzero residual.
    pub fn perturbed(&self, source_chart: &Chart) -> TransitionMap {
        let mut images = self.subst.images().to_vec();
        if images.is_empty() {
            return self.clone();
        }
        let gens_table = self.subst.gens_table().clone();
        let degree = gens_table.gens()[0].degree.clone();
        let trunc = self.subst.trunc();
        let bump = if degree.is_zero() {
            GradedSeries::one(source_chart.table().clone(), trunc)
        } else {
            let idx = source_chart
                .table()
                .gens()
                .iter()
                .position(|g| g.degree == degree)
                .expect("shape provides a generator of every chart degree");
            GradedSeries::generator(source_chart.table().clone(), idx, trunc)
        };
        images[0] = images[0].add(&bump).expect("same ring");
        TransitionMap {
            source: self.source.clone(),
            target: self.target.clone(),
            subst: Substitution::new(gens_table, self.subst.image_table().clone(), images)
                .expect("perturbation preserves degrees"),
            certificate: self.certificate.clone(),
        }
    }

    /// Schema: {"from": source, "to": target, "images": {gen: series},
    /// "certificate": poly}
    pub fn to_json(&self) -> Value {
        let mut images = serde_json::Map::new();
        for (g, img) in self
            .subst
            .gens_table()
            .gens()
            .iter()
            .zip(self.subst.images())
        {
            images.insert(g.name.clone(), img.to_json());
        }
        json!({
            "from": self.source.to_json(),
            "to": self.target.to_json(),
            "images": Value::Object(images),
            "certificate": self
                .certificate
                .to_json(self.subst.image_table().central_names()),
        })
    }
}

/// The transition map from the source chart into the target chart, computed
/// from the pasting equation: the image of each target generator is the
/// entry of D_target((M_target A_source)^{-1} A_source) at the position the
/// generator occupies in D_target(A_target), matched by the fill order.
pub fn transition(target: &Chart, source: &Chart) -> Result<TransitionMap> {
    if !target.same_shape(source) {
        return Err(Error::ShapeMismatch(
            "transition requires charts of one atlas".into(),
        ));
    }
    let minor = source.label.extract_minor(&target.index)?;
    let det = minor.body_det()?;
    if det.is_zero() {
        return Err(Error::SingularBody);
    }
    debug_assert!(det.den().is_one(), "label bodies are polynomial");
    let certificate = det.num().clone();
    let glued = minor.invert()?.matmul(&source.label)?;
    let images: Vec<GradedSeries> = target
        .positions
        .iter()
        .map(|&(r, c)| glued.entry(r, c).clone())
        .collect();
    let subst = Substitution::new(target.table.clone(), source.table.clone(), images)?;
    Ok(TransitionMap {
        source: source.index.clone(),
        target: target.index.clone(),
        subst,
        certificate,
    })
}

/// Identity transition of a chart.
pub fn identity_transition(chart: &Chart) -> TransitionMap {
    TransitionMap {
        source: chart.index.clone(),
        target: chart.index.clone(),
        subst: Substitution::identity(chart.table.clone(), chart.trunc),
        certificate: Poly::one(chart.table.n_central()),
    }
}

/// Composition by substitution: the inner map's images replace the outer
/// map's source generators. Requires outer.source = inner.target.
pub fn compose(outer: &TransitionMap, inner: &TransitionMap) -> Result<TransitionMap> {
    if outer.source != inner.target {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose: outer source {} differs from inner target {}",
            outer.source, inner.target
        )));
    }
    if !same_table(outer.subst.image_table(), inner.subst.gens_table()) {
        return Err(Error::TableMismatch);
    }
    let images = outer
        .subst
        .images()
        .iter()
        .map(|img| inner.subst.apply(img))
        .collect::<Result<Vec<GradedSeries>>>()?;
    let subst = Substitution::new(
        outer.subst.gens_table().clone(),
        inner.subst.image_table().clone(),
        images,
    )?;
    let certificate = outer.certificate.mul(&inner.certificate).monic();
    Ok(TransitionMap {
        source: inner.source.clone(),
        target: outer.target.clone(),
        subst,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(v: &[usize]) -> BlockDims {
        BlockDims::from_sizes(v.to_vec())
    }

    #[test]
    fn beta_examples() {
        // the worked n=2 shape: 3 central + 4+4+4 graded generators
        let g = Grading::new(2).unwrap();
        let k = dims(&[1, 2, 1, 1]);
        let m = dims(&[2, 2, 2, 2]);
        let beta = beta_dims(&g, &k, &m).unwrap();
        assert_eq!(beta.sizes(), &[3, 4, 4, 4]);
        assert_eq!(beta.total(), 15);

        // k = m has no generators
        assert_eq!(beta_dims(&g, &m, &m).unwrap().total(), 0);

        // n=1, k=(1,1), m=(2,2)
        let g1 = Grading::new(1).unwrap();
        let beta1 = beta_dims(&g1, &dims(&[1, 1]), &dims(&[2, 2])).unwrap();
        assert_eq!(beta1.sizes(), &[2, 2]);
    }

    #[test]
    fn beta_rejects_bad_shape() {
        let g = Grading::new(1).unwrap();
        assert!(matches!(
            beta_dims(&g, &dims(&[3, 0]), &dims(&[2, 2])),
            Err(Error::InvalidShape(_))
        ));
    }

    #[test]
    fn chart_enumeration_counts() {
        let g2 = Grading::new(2).unwrap();
        let charts = enumerate_charts(&g2, &dims(&[1, 2, 1, 1]), &dims(&[2, 2, 2, 2])).unwrap();
        assert_eq!(charts.len(), 8);

        let g1 = Grading::new(1).unwrap();
        let charts1 = enumerate_charts(&g1, &dims(&[1, 1]), &dims(&[2, 2])).unwrap();
        assert_eq!(charts1.len(), 4);
        // lexicographic on the tuples
        assert_eq!(charts1[0].to_string(), "1|1");
        assert_eq!(charts1[1].to_string(), "1|2");
        assert_eq!(charts1[2].to_string(), "2|1");
        assert_eq!(charts1[3].to_string(), "2|2");

        let full = enumerate_charts(&g1, &dims(&[2, 2]), &dims(&[2, 2])).unwrap();
        assert_eq!(full.len(), 1);
    }

    #[test]
    fn single_chart_has_identity_label() {
        let g = Grading::new(1).unwrap();
        let m = dims(&[2, 2]);
        let idx = KIndex::new(vec![vec![1, 2], vec![1, 2]]).unwrap();
        let chart = build_chart(&g, &m, &m, &idx, 3).unwrap();
        assert!(chart.label().is_identity());
        assert!(chart.table().is_empty());
    }

    #[test]
    fn n1_chart_layout() {
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 1]);
        let m = dims(&[2, 2]);
        let idx = KIndex::new(vec![vec![1], vec![1]]).unwrap();
        let chart = build_chart(&g, &k, &m, &idx, 3).unwrap();
        let names = chart.generator_names();
        assert_eq!(names, vec!["x1", "xi1_1", "xi1_2", "x2"]);
        let show: Vec<Vec<String>> = (0..2)
            .map(|r| (0..4).map(|c| chart.label().entry(r, c).display().to_string()).collect())
            .collect();
        assert_eq!(show[0], vec!["1", "x1", "0", "xi1_2"]);
        assert_eq!(show[1], vec!["0", "xi1_1", "1", "x2"]);
    }

    #[test]
    fn purely_even_transition_is_reciprocal() {
        // G_1(2) inside n=1 with empty odd block: x -> 1/x
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 0]);
        let m = dims(&[2, 0]);
        let i = KIndex::new(vec![vec![1], vec![]]).unwrap();
        let j = KIndex::new(vec![vec![2], vec![]]).unwrap();
        let ci = build_chart(&g, &k, &m, &i, 3).unwrap();
        let cj = build_chart(&g, &k, &m, &j, 3).unwrap();
        let t = transition(&ci, &cj).unwrap();
        assert_eq!(t.images().len(), 1);
        let x = GradedSeries::generator(cj.table().clone(), 0, 3);
        assert_eq!(t.images()[0], x.invert().unwrap());
        // certificate is the body of the source minor: x
        assert_eq!(t.certificate(), &Poly::var(1, 0));
    }

    #[test]
    fn transition_to_self_is_identity() {
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 1]);
        let m = dims(&[2, 2]);
        let idx = KIndex::new(vec![vec![2], vec![1]]).unwrap();
        let c = build_chart(&g, &k, &m, &idx, 3).unwrap();
        let t = transition(&c, &c).unwrap();
        assert!(t.is_identity());
        assert!(t.residual().is_none());
    }

    #[test]
    fn pair_composition_is_identity_n1() {
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 1]);
        let m = dims(&[2, 2]);
        let i = KIndex::new(vec![vec![1], vec![1]]).unwrap();
        let j = KIndex::new(vec![vec![2], vec![2]]).unwrap();
        let ci = build_chart(&g, &k, &m, &i, 4).unwrap();
        let cj = build_chart(&g, &k, &m, &j, 4).unwrap();
        let t_ij = transition(&ci, &cj).unwrap(); // images over chart J
        let t_ji = transition(&cj, &ci).unwrap();
        let round = compose(&t_ij, &t_ji).unwrap();
        assert!(round.is_identity());
        // each image is homogeneous of the right degree
        for (gen, img) in ci.table().gens().iter().zip(t_ij.images()) {
            assert!(img.is_homogeneous_of(&gen.degree));
        }
    }

    #[test]
    fn compose_with_identity() {
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 1]);
        let m = dims(&[2, 2]);
        let i = KIndex::new(vec![vec![1], vec![1]]).unwrap();
        let j = KIndex::new(vec![vec![1], vec![2]]).unwrap();
        let ci = build_chart(&g, &k, &m, &i, 3).unwrap();
        let cj = build_chart(&g, &k, &m, &j, 3).unwrap();
        let t = transition(&ci, &cj).unwrap();
        let idj = identity_transition(&cj);
        let c1 = compose(&t, &idj).unwrap();
        for (a, b) in c1.images().iter().zip(t.images()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn perturbed_transition_breaks_cocycle() {
        let g = Grading::new(1).unwrap();
        let k = dims(&[1, 1]);
        let m = dims(&[2, 2]);
        let i = KIndex::new(vec![vec![1], vec![1]]).unwrap();
        let j = KIndex::new(vec![vec![2], vec![2]]).unwrap();
        let ci = build_chart(&g, &k, &m, &i, 3).unwrap();
        let cj = build_chart(&g, &k, &m, &j, 3).unwrap();
        let t_ij = transition(&ci, &cj).unwrap().perturbed(&cj);
        let t_ji = transition(&cj, &ci).unwrap();
        let round = compose(&t_ij, &t_ji).unwrap();
        assert!(!round.is_identity());
        let (_, residual) = round.residual().unwrap();
        assert!(!residual.is_zero());
    }
}

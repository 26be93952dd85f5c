//! Graded vector spaces, cochain complexes, their cohomology, and cochain
//! maps with quasi-isomorphism testing.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational as Q;
use crate::subspace::Subspace;

/// Dimensions indexed by degree; degrees not stored are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        GradedVectorSpace {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            labels: BTreeMap::new(),
        }
    }

    /// Degrees `0..dims.len()` with the given dimensions.
    pub fn from_dims(dims: &[usize]) -> Self {
        Self::new(dims.iter().enumerate().map(|(k, &d)| (k as i32, d)))
    }

    pub fn with_labels(mut self, degree: i32, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim(degree), "label count");
        self.labels.insert(degree, labels);
        self
    }

    pub fn labels(&self, degree: i32) -> Option<&[String]> {
        self.labels.get(&degree).map(Vec::as_slice)
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }

    /// Every degree from the lowest to the highest nonzero one.
    pub fn degrees(&self) -> Vec<i32> {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => (a..=b).collect(),
            _ => Vec::new(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    spaces: GradedVectorSpace,
    differentials: BTreeMap<i32, Matrix>,
}

impl CochainComplex {
    /// Builds a complex and checks shapes and `d ∘ d = 0`.
    pub fn new(spaces: GradedVectorSpace, differentials: BTreeMap<i32, Matrix>) -> Result<Self> {
        let c = Self::new_unchecked(spaces, differentials)?;
        if let Some((k, (i, j, v))) = c.square_zero_violation() {
            return Err(Error::Inconsistent(format!("d_{} ∘ d_{} has entry ({i},{j}) = {v}", k + 1, k)));
        }
        Ok(c)
    }

    /// Builds a complex checking shapes only.
    pub fn new_unchecked(spaces: GradedVectorSpace, differentials: BTreeMap<i32, Matrix>) -> Result<Self> {
        for (&k, d) in &differentials {
            if d.shape() != (spaces.dim(k + 1), spaces.dim(k)) {
                return Err(Error::Dimension(format!(
                    "d_{k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    spaces.dim(k + 1),
                    spaces.dim(k)
                )));
            }
        }
        Ok(CochainComplex { spaces, differentials })
    }

    /// A complex with zero differential.
    pub fn zero_differential(spaces: GradedVectorSpace) -> Self {
        CochainComplex { spaces, differentials: BTreeMap::new() }
    }

    pub fn spaces(&self) -> &GradedVectorSpace {
        &self.spaces
    }

    pub fn dim(&self, k: i32) -> usize {
        self.spaces.dim(k)
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.spaces.degrees()
    }

    /// `d_k : C^k → C^{k+1}`, zero when not stored.
    pub fn differential(&self, k: i32) -> Matrix {
        self.differentials.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    /// First degree where `d_{k+1} d_k ≠ 0`, with a nonzero entry.
    pub fn square_zero_violation(&self) -> Option<(i32, (usize, usize, Q))> {
        for k in self.degrees() {
            let dd = &self.differential(k + 1) * &self.differential(k);
            if let Some(w) = dd.first_nonzero() {
                return Some((k, w));
            }
        }
        None
    }

    pub fn cohomology(&self, k: i32) -> Cohomology {
        let n = self.dim(k);
        let cocycles = Subspace::kernel(&self.differential(k));
        let coboundaries = Subspace::image(&self.differential(k - 1));
        debug_assert_eq!(coboundaries.ambient_dim(), n);
        let representatives =
            cocycles.quotient_basis(&coboundaries).expect("d² = 0 puts coboundaries in cocycles");
        let h = representatives.cols();
        let projection = if h == 0 {
            Matrix::zeros(0, n)
        } else {
            let frame = coboundaries.basis().hstack(&representatives);
            let left = frame.left_inverse().expect("independent frame");
            left.submatrix(coboundaries.dim()..frame.cols(), 0..n)
        };
        Cohomology { degree: k, cocycles, coboundaries, representatives, projection }
    }

    /// Dimensions of cohomology in every degree of the complex.
    pub fn betti(&self) -> BTreeMap<i32, usize> {
        self.degrees().into_iter().map(|k| (k, self.cohomology(k).dim())).collect()
    }

    /// Dimensions of cohomology from rank counting alone:
    /// `dim C^k − rank d_k − rank d_{k−1}`.
    pub fn betti_by_rank(&self) -> BTreeMap<i32, usize> {
        self.degrees()
            .into_iter()
            .map(|k| (k, self.dim(k) - self.differential(k).rank() - self.differential(k - 1).rank()))
            .collect()
    }
}

/// Cohomology in one degree, with cocycle representatives and a projection
/// from cocycles to coordinates.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// Columns are cocycles whose classes form a basis.
    pub representatives: Matrix,
    /// `dim H × dim C^k`; on cocycles it returns class coordinates and it
    /// kills exactly the coboundaries.
    pub projection: Matrix,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, v: &[Q]) -> Result<Vec<Q>> {
        if !self.cocycles.contains(v) {
            return Err(Error::Precondition("vector is not a cocycle".into()));
        }
        Ok(self.projection.mul_vec(v))
    }
}

#[derive(Clone, Debug)]
pub struct CochainMap {
    source: CochainComplex,
    target: CochainComplex,
    components: BTreeMap<i32, Matrix>,
}

impl CochainMap {
    /// Builds a cochain map, rejecting shapes or commutation failures.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        components: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        for (&k, f) in &components {
            if f.shape() != (target.dim(k), source.dim(k)) {
                return Err(Error::Dimension(format!(
                    "component {k} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.dim(k),
                    source.dim(k)
                )));
            }
        }
        let map = CochainMap { source, target, components };
        if let Some(k) = map.commutation_failure() {
            return Err(Error::NotChainMap(format!("f ∘ d ≠ d ∘ f in degree {k}")));
        }
        Ok(map)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let components = c.degrees().into_iter().map(|k| (k, Matrix::identity(c.dim(k)))).collect();
        CochainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        CochainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn component(&self, k: i32) -> Matrix {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(k), self.source.dim(k)))
    }

    fn all_degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.source.degrees();
        d.extend(self.target.degrees());
        d.sort_unstable();
        d.dedup();
        if let (Some(&a), Some(&b)) = (d.first(), d.last()) {
            (a - 1..=b).collect()
        } else {
            d
        }
    }

    fn commutation_failure(&self) -> Option<i32> {
        self.all_degrees().into_iter().find(|&k| {
            &self.component(k + 1) * &self.source.differential(k)
                != &self.target.differential(k) * &self.component(k)
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CochainMap) -> Result<CochainMap> {
        if self.target != other.source {
            return Err(Error::Dimension("composition of maps with mismatched complexes".into()));
        }
        let components =
            self.all_degrees().into_iter().map(|k| (k, &other.component(k) * &self.component(k))).collect();
        CochainMap::new(self.source.clone(), other.target.clone(), components)
    }

    /// Matrix of the induced map `H^k(source) → H^k(target)` in the
    /// representative bases.
    pub fn induced_on_cohomology(&self, k: i32) -> (Cohomology, Cohomology, Matrix) {
        let hs = self.source.cohomology(k);
        let ht = self.target.cohomology(k);
        let m = &(&ht.projection * &self.component(k)) * &hs.representatives;
        (hs, ht, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeIsoRecord {
    pub degree: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub isomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeIsoRecord>,
    pub is_quasi_isomorphism: bool,
}

/// Degreewise test of whether a cochain map induces isomorphisms on
/// cohomology. The map is checked to commute with differentials on entry.
pub fn is_quasi_isomorphism(f: &CochainMap) -> Result<QuasiIsoReport> {
    if let Some(k) = f.commutation_failure() {
        return Err(Error::NotChainMap(format!("f ∘ d ≠ d ∘ f in degree {k}")));
    }
    let degrees: Vec<DegreeIsoRecord> = f
        .all_degrees()
        .into_iter()
        .filter(|&k| f.source.dim(k) > 0 || f.target.dim(k) > 0)
        .map(|k| {
            let (hs, ht, m) = f.induced_on_cohomology(k);
            let rank = m.rank();
            DegreeIsoRecord {
                degree: k,
                source_dim: hs.dim(),
                target_dim: ht.dim(),
                rank,
                isomorphism: hs.dim() == ht.dim() && rank == hs.dim(),
            }
        })
        .collect();
    let ok = degrees.iter().all(|d| d.isomorphism);
    Ok(QuasiIsoReport { degrees, is_quasi_isomorphism: ok })
}

/// The complex `B ⊕ B·η` with `d(x + y·η) = d_B x + (−1)^{|y|} L y + (d_B y)·η`,
/// where `L_k : B^k → B^{k+2}` commutes with `d_B`.
///
/// Degree `k` is laid out as `B^k` followed by `B^{k−1}` (the `y` part).
pub fn mapping_cone_model(base: &CochainComplex, operator: &BTreeMap<i32, Matrix>) -> Result<CochainComplex> {
    let op = |k: i32| -> Matrix {
        operator.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(base.dim(k + 2), base.dim(k)))
    };
    for (&k, l) in operator {
        if l.shape() != (base.dim(k + 2), base.dim(k)) {
            return Err(Error::Dimension(format!("operator block {k} has wrong shape")));
        }
    }
    for k in base.degrees() {
        if &base.differential(k + 2) * &op(k) != &op(k + 1) * &base.differential(k) {
            return Err(Error::NonCommuting(format!("operator fails to commute in degree {k}")));
        }
    }
    let (lo, hi) = match (base.spaces().min_degree(), base.spaces().max_degree()) {
        (Some(a), Some(b)) => (a, b + 1),
        _ => return Ok(CochainComplex::zero_differential(GradedVectorSpace::default())),
    };
    let dims: Vec<(i32, usize)> = (lo..=hi).map(|k| (k, base.dim(k) + base.dim(k - 1))).collect();
    let spaces = GradedVectorSpace::new(dims);
    let mut diffs = BTreeMap::new();
    for k in lo..hi {
        let (x0, y0) = (base.dim(k), base.dim(k - 1));
        let (x1, y1) = (base.dim(k + 1), base.dim(k));
        let mut d = Matrix::zeros(x1 + y1, x0 + y0);
        d.set_block(0, 0, &base.differential(k));
        let sign = if (k - 1).rem_euclid(2) == 0 { Q::from(1) } else { Q::from(-1) };
        d.set_block(0, x0, &op(k - 1).scale(&sign));
        d.set_block(x1, x0, &base.differential(k - 1));
        diffs.insert(k, d);
    }
    CochainComplex::new(spaces, diffs)
}

/// Cochain map `cone(f) : cone(B) → cone(B')` acting as `f ⊕ f`.
pub fn cone_map(
    f: &CochainMap,
    source_cone: &CochainComplex,
    target_cone: &CochainComplex,
) -> Result<CochainMap> {
    let mut comps = BTreeMap::new();
    for k in source_cone.degrees() {
        let (sx, sy) = (f.source().dim(k), f.source().dim(k - 1));
        let (tx, ty) = (f.target().dim(k), f.target().dim(k - 1));
        let mut m = Matrix::zeros(tx + ty, sx + sy);
        m.set_block(0, 0, &f.component(k));
        m.set_block(tx, sx, &f.component(k - 1));
        comps.insert(k, m);
    }
    CochainMap::new(source_cone.clone(), target_cone.clone(), comps)
}

/// Subcomplex spanned by `sub[k]` in each degree (missing entries are zero),
/// with its inclusion map. Fails if the differential leaves the subspaces.
pub fn subcomplex(c: &CochainComplex, sub: &BTreeMap<i32, Subspace>) -> Result<(CochainComplex, CochainMap)> {
    let get = |k: i32| sub.get(&k).cloned().unwrap_or_else(|| Subspace::zero(c.dim(k)));
    let degrees = c.degrees();
    let spaces = GradedVectorSpace::new(degrees.iter().map(|&k| (k, get(k).dim())));
    let mut diffs = BTreeMap::new();
    let mut incl = BTreeMap::new();
    for &k in &degrees {
        let s = get(k);
        let image = &c.differential(k) * s.basis();
        let coords = get(k + 1)
            .coordinates_of(&image)
            .map_err(|_| Error::Inconsistent(format!("differential leaves the subcomplex in degree {k}")))?;
        diffs.insert(k, coords);
        incl.insert(k, s.basis().clone());
    }
    let sc = CochainComplex::new(spaces, diffs)?;
    let map = CochainMap::new(sc.clone(), c.clone(), incl)?;
    Ok((sc, map))
}

/// Quotient complex `C / S` with its projection map; `S` must be a
/// subcomplex. Representatives come from `quotient_basis`.
pub fn quotient_complex(
    c: &CochainComplex,
    sub: &BTreeMap<i32, Subspace>,
) -> Result<(CochainComplex, CochainMap, BTreeMap<i32, Matrix>)> {
    let get = |k: i32| sub.get(&k).cloned().unwrap_or_else(|| Subspace::zero(c.dim(k)));
    let degrees = c.degrees();
    let mut reps = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for &k in &degrees {
        let s = get(k);
        let r = Subspace::full(c.dim(k)).quotient_basis(&s)?;
        let p = if r.cols() == 0 {
            Matrix::zeros(0, c.dim(k))
        } else {
            let frame = s.basis().hstack(&r);
            frame.inverse()?.submatrix(s.dim()..c.dim(k), 0..c.dim(k))
        };
        reps.insert(k, r);
        proj.insert(k, p);
    }
    let spaces = GradedVectorSpace::new(degrees.iter().map(|&k| (k, reps[&k].cols())));
    let mut diffs = BTreeMap::new();
    for &k in &degrees {
        let next = proj.get(&(k + 1)).cloned().unwrap_or_else(|| Matrix::zeros(0, c.dim(k + 1)));
        diffs.insert(k, &(&next * &c.differential(k)) * &reps[&k]);
    }
    let qc = CochainComplex::new(spaces, diffs)?;
    let map = CochainMap::new(c.clone(), qc.clone(), proj)?;
    Ok((qc, map, reps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(n: usize) -> CochainComplex {
        CochainComplex::zero_differential(GradedVectorSpace::from_dims(&[n]))
    }

    #[test]
    fn one_dimensional_space_has_h0() {
        assert_eq!(single(1).cohomology(0).dim(), 1);
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let c = CochainComplex::new(
            GradedVectorSpace::from_dims(&[1, 1]),
            BTreeMap::from([(0, Matrix::identity(1))]),
        )
        .unwrap();
        assert_eq!(c.cohomology(0).dim(), 0);
        assert_eq!(c.cohomology(1).dim(), 0);
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let r = CochainComplex::new(
            GradedVectorSpace::from_dims(&[1, 1, 1]),
            BTreeMap::from([(0, Matrix::identity(1)), (1, Matrix::identity(1))]),
        );
        assert!(r.is_err());
    }

    #[test]
    fn identity_is_quasi_iso_zero_map_is_not() {
        let c = single(2);
        assert!(is_quasi_isomorphism(&CochainMap::identity(&c)).unwrap().is_quasi_isomorphism);
        assert!(!is_quasi_isomorphism(&CochainMap::zero(&c, &c)).unwrap().is_quasi_isomorphism);
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = CochainComplex::new(
            GradedVectorSpace::from_dims(&[1, 1]),
            BTreeMap::from([(0, Matrix::identity(1))]),
        )
        .unwrap();
        let bad = CochainMap::new(c.clone(), c, BTreeMap::from([(0, Matrix::identity(1))]));
        assert!(matches!(bad, Err(Error::NotChainMap(_))));
    }

    #[test]
    fn projection_kills_coboundaries() {
        // C^0 = Q, C^1 = Q^2, d = (1, 1)ᵀ
        let c = CochainComplex::new(
            GradedVectorSpace::from_dims(&[1, 2]),
            BTreeMap::from([(0, Matrix::from_ints(&[&[1], &[1]]))]),
        )
        .unwrap();
        let h = c.cohomology(1);
        assert_eq!(h.dim(), 1);
        assert!((&h.projection * &c.differential(0)).is_zero());
        assert_eq!(&h.projection * &h.representatives, Matrix::identity(1));
    }

    #[test]
    fn zero_operator_cone_is_shifted_sum() {
        let base = CochainComplex::new(
            GradedVectorSpace::from_dims(&[1, 2, 1]),
            BTreeMap::from([(0, Matrix::from_ints(&[&[1], &[0]]))]),
        )
        .unwrap();
        let cone = mapping_cone_model(&base, &BTreeMap::new()).unwrap();
        let b = base.betti();
        let cb = cone.betti();
        for k in 0..=3 {
            let expect = b.get(&k).copied().unwrap_or(0) + b.get(&(k - 1)).copied().unwrap_or(0);
            assert_eq!(cb.get(&k).copied().unwrap_or(0), expect, "degree {k}");
        }
    }

    #[test]
    fn non_commuting_operator_rejected() {
        let base = CochainComplex::new(
            GradedVectorSpace::from_dims(&[1, 1, 1, 1]),
            BTreeMap::from([(0, Matrix::identity(1))]),
        )
        .unwrap();
        // L_0 : B^0 → B^2 nonzero but d_0 L_{-1}... L_1 d_0 = L_1 ≠ d_2 L_0 = 0
        let op = BTreeMap::from([(1, Matrix::identity(1))]);
        assert!(matches!(mapping_cone_model(&base, &op), Err(Error::NonCommuting(_))));
    }
}

//! Finite chain complexes with a fixed, ordered basis, and the purely
//! combinatorial structure derived from it: supports, boundary sets,
//! generated subcomplexes, skeletons, purity and maximal elements.
//!
//! A complex is immutable once built; the boundary-square condition
//! `∂_ν ∘ ∂_{ν+1} = 0` is checked at construction and every derived view
//! (skeleton, generated subcomplex) inherits it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::linalg::SparseMatrix;
use crate::ring::{Integers, Ring};

/// Identifies a basis element by degree and 0-based position within its
/// degree. The position order is part of the complex's identity; reorderings
/// are always explicit views, never mutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId {
    pub degree: usize,
    pub index: usize,
}

impl ElementId {
    pub const fn new(degree: usize, index: usize) -> Self {
        ElementId { degree, index }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}_{}", self.degree, self.index + 1)
    }
}

/// A formal combination of same-degree basis elements with nonzero
/// coefficients, kept sorted by element id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain<R: Ring> {
    pub degree: usize,
    terms: Vec<(ElementId, R::Elem)>,
}

impl<R: Ring> Chain<R> {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: Vec::new() }
    }

    /// Collects terms, dropping zeros and summing duplicates. All element ids
    /// must carry the chain's degree.
    pub fn from_terms(
        ring: &R,
        degree: usize,
        terms: impl IntoIterator<Item = (ElementId, R::Elem)>,
    ) -> Result<Self, ComplexError> {
        let mut acc: BTreeMap<ElementId, R::Elem> = BTreeMap::new();
        for (id, v) in terms {
            if id.degree != degree {
                return Err(ComplexError::DegreeMismatch { expected: degree, found: id.degree });
            }
            let cur = acc.remove(&id).unwrap_or_else(|| ring.zero());
            let s = ring.add(&cur, &v);
            if !ring.is_zero(&s) {
                acc.insert(id, s);
            }
        }
        Ok(Chain { degree, terms: acc.into_iter().collect() })
    }

    pub fn terms(&self) -> &[(ElementId, R::Elem)] {
        &self.terms
    }

    pub fn coefficient(&self, ring: &R, id: ElementId) -> R::Elem {
        self.terms
            .iter()
            .find(|(e, _)| *e == id)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The set of basis elements with nonzero coefficient; empty iff the
    /// chain is zero.
    pub fn support(&self) -> BTreeSet<ElementId> {
        self.terms.iter().map(|(e, _)| *e).collect()
    }

    pub fn scaled(&self, ring: &R, factor: &R::Elem) -> Self {
        if ring.is_zero(factor) {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (*e, ring.mul(v, factor))).collect(),
        }
    }

    pub fn sub(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "chain degrees differ");
        let mut acc: BTreeMap<ElementId, R::Elem> =
            self.terms.iter().cloned().collect();
        for (e, v) in &other.terms {
            let cur = acc.remove(e).unwrap_or_else(|| ring.zero());
            let s = ring.sub(&cur, v);
            if !ring.is_zero(&s) {
                acc.insert(*e, s);
            }
        }
        Chain { degree: self.degree, terms: acc.into_iter().collect() }
    }
}

/// A downward-closed set of basis elements: together with the restricted
/// boundaries it generates a genuine subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcomplexBasis {
    elements: BTreeSet<ElementId>,
}

impl SubcomplexBasis {
    pub fn elements(&self) -> &BTreeSet<ElementId> {
        &self.elements
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.elements.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("boundary condition violated: (boundary of degree {degree}) ∘ (boundary of degree {next}) is nonzero at column {column}", next = degree + 1)]
    BoundaryConditionViolated { degree: usize, column: usize },
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("top degree has no basis elements")]
    EmptyTopDegree,
    #[error("duplicate label `{label}` in degree {degree}")]
    DuplicateLabel { degree: usize, label: String },
    #[error("skeleton level {index} exceeds the complex order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("chain of degree {found} where degree {expected} was expected")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("no facets given")]
    EmptyInput,
    #[error("a set with elements of degree ≥ 1 must be downward closed; {0} has a boundary element outside the set")]
    NotDownwardClosed(ElementId),
}

/// One sparse boundary entry: the coefficient of row element
/// `(degree-1, row)` in the boundary of column element `(degree, column)`.
#[derive(Clone, Debug)]
pub struct BoundaryEntry<E> {
    pub degree: usize,
    pub column: usize,
    pub row: usize,
    pub value: E,
}

/// A finite chain complex of order `d` with fixed ordered bases per degree
/// and validated sparse boundary matrices.
#[derive(Debug)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    labels: Vec<Vec<String>>,
    label_lookup: Vec<BTreeMap<String, usize>>,
    /// `boundaries[v]` is the matrix of the boundary map from degree `v+1`
    /// to degree `v`: `k_v` rows by `k_{v+1}` columns.
    boundaries: Vec<SparseMatrix<R>>,
    closures: OnceLock<BTreeMap<ElementId, BTreeSet<ElementId>>>,
}

impl<R: Ring> Clone for ChainComplex<R> {
    fn clone(&self) -> Self {
        ChainComplex {
            ring: self.ring.clone(),
            labels: self.labels.clone(),
            label_lookup: self.label_lookup.clone(),
            boundaries: self.boundaries.clone(),
            closures: OnceLock::new(),
        }
    }
}

impl<R: Ring> PartialEq for ChainComplex<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.labels == other.labels && self.boundaries == other.boundaries
    }
}

pub(crate) fn default_label(degree: usize, index: usize) -> String {
    format!("e{}_{}", degree, index + 1)
}

impl<R: Ring> ChainComplex<R> {
    /// Builds and validates a complex from labelled bases and sparse boundary
    /// entries. The boundary-square condition is checked for every column.
    pub fn build(
        ring: R,
        labels: Vec<Vec<String>>,
        entries: impl IntoIterator<Item = BoundaryEntry<R::Elem>>,
    ) -> Result<Self, ComplexError> {
        if labels.is_empty() || labels.last().is_some_and(Vec::is_empty) {
            return Err(ComplexError::EmptyTopDegree);
        }
        let order = labels.len() - 1;
        let mut label_lookup = Vec::with_capacity(labels.len());
        for (degree, names) in labels.iter().enumerate() {
            let mut map = BTreeMap::new();
            for (i, name) in names.iter().enumerate() {
                if map.insert(name.clone(), i).is_some() {
                    return Err(ComplexError::DuplicateLabel { degree, label: name.clone() });
                }
            }
            label_lookup.push(map);
        }

        let mut triples: Vec<Vec<(usize, usize, R::Elem)>> = vec![Vec::new(); order];
        for e in entries {
            if e.degree == 0 || e.degree > order {
                return Err(ComplexError::DanglingReference(format!(
                    "boundary entry for degree {} in a complex of order {order}",
                    e.degree
                )));
            }
            if e.column >= labels[e.degree].len() {
                return Err(ComplexError::DanglingReference(format!(
                    "column {} out of range in degree {}",
                    e.column, e.degree
                )));
            }
            if e.row >= labels[e.degree - 1].len() {
                return Err(ComplexError::DanglingReference(format!(
                    "row {} out of range in degree {}",
                    e.row,
                    e.degree - 1
                )));
            }
            triples[e.degree - 1].push((e.row, e.column, e.value));
        }

        let mut boundaries = Vec::with_capacity(order);
        for (v, t) in triples.into_iter().enumerate() {
            let m = SparseMatrix::from_triples(ring.clone(), labels[v].len(), labels[v + 1].len(), t)
                .map_err(ComplexError::DanglingReference)?;
            boundaries.push(m);
        }

        let complex = ChainComplex {
            ring,
            labels,
            label_lookup,
            boundaries,
            closures: OnceLock::new(),
        };
        complex.check_boundary_square()?;
        Ok(complex)
    }

    /// Convenience constructor: `columns[v-1][j]` lists the `(row, value)`
    /// entries of the boundary of the `j`-th degree-`v` element. Labels
    /// default to `e<degree>_<position>`.
    pub fn from_columns(
        ring: R,
        sizes: &[usize],
        columns: Vec<Vec<Vec<(usize, i64)>>>,
    ) -> Result<Self, ComplexError> {
        let labels = sizes
            .iter()
            .enumerate()
            .map(|(d, &k)| (0..k).map(|i| default_label(d, i)).collect())
            .collect();
        let mut entries = Vec::new();
        for (v, cols) in columns.into_iter().enumerate() {
            for (j, col) in cols.into_iter().enumerate() {
                for (row, value) in col {
                    entries.push(BoundaryEntry {
                        degree: v + 1,
                        column: j,
                        row,
                        value: ring.from_i64(value),
                    });
                }
            }
        }
        Self::build(ring, labels, entries)
    }

    fn check_boundary_square(&self) -> Result<(), ComplexError> {
        for v in 1..self.boundaries.len() {
            let product = self.boundaries[v - 1].multiply(&self.boundaries[v]);
            if let Some((_, c, _)) = product.entries().next() {
                return Err(ComplexError::BoundaryConditionViolated { degree: v, column: c });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// The order `d`: the highest degree with a nonempty basis.
    pub fn order(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn degree_size(&self, degree: usize) -> usize {
        self.labels.get(degree).map_or(0, Vec::len)
    }

    pub fn total_size(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn label(&self, id: ElementId) -> &str {
        &self.labels[id.degree][id.index]
    }

    pub fn labels_of_degree(&self, degree: usize) -> &[String] {
        &self.labels[degree]
    }

    pub fn element_by_label(&self, degree: usize, label: &str) -> Option<ElementId> {
        self.label_lookup.get(degree)?.get(label).map(|&i| ElementId::new(degree, i))
    }

    /// Looks a label up across all degrees (labels are unique per degree, not
    /// globally; the first match by ascending degree wins).
    pub fn find_label(&self, label: &str) -> Option<ElementId> {
        (0..self.labels.len()).find_map(|d| self.element_by_label(d, label))
    }

    pub fn elements_of_degree(&self, degree: usize) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.degree_size(degree)).map(move |i| ElementId::new(degree, i))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..=self.order()).flat_map(|d| self.elements_of_degree(d))
    }

    /// The matrix of the boundary map from degree `v` to degree `v-1`, for
    /// `1 ≤ v ≤ d`.
    pub fn boundary_matrix(&self, v: usize) -> &SparseMatrix<R> {
        assert!(v >= 1 && v <= self.order(), "boundary degree {v} out of range");
        &self.boundaries[v - 1]
    }

    /// The boundary of a single basis element as a chain (zero for degree 0).
    pub fn boundary_of(&self, id: ElementId) -> Chain<R> {
        if id.degree == 0 {
            return Chain::zero(0);
        }
        let col = self.boundary_matrix(id.degree).column(id.index);
        Chain {
            degree: id.degree - 1,
            terms: col.iter().map(|(r, v)| (ElementId::new(id.degree - 1, *r), v.clone())).collect(),
        }
    }

    /// Applies the boundary map to a chain; degree-0 chains go to zero.
    pub fn apply_boundary(&self, chain: &Chain<R>) -> Chain<R> {
        if chain.degree == 0 || chain.is_zero() {
            return Chain::zero(chain.degree.saturating_sub(1));
        }
        let m = self.boundary_matrix(chain.degree);
        let mut acc: BTreeMap<ElementId, R::Elem> = BTreeMap::new();
        for (id, coeff) in chain.terms() {
            for (r, v) in m.column(id.index) {
                let t = self.ring.mul(coeff, v);
                let key = ElementId::new(chain.degree - 1, *r);
                let cur = acc.remove(&key).unwrap_or_else(|| self.ring.zero());
                let s = self.ring.add(&cur, &t);
                if !self.ring.is_zero(&s) {
                    acc.insert(key, s);
                }
            }
        }
        Chain { degree: chain.degree - 1, terms: acc.into_iter().collect() }
    }

    /// `bd(x) = supp(∂x)`; empty iff `x` is a cycle (or of degree 0).
    pub fn boundary_support(&self, chain: &Chain<R>) -> BTreeSet<ElementId> {
        self.apply_boundary(chain).support()
    }

    /// `bd(e)` for a single basis element.
    pub fn boundary_set(&self, id: ElementId) -> BTreeSet<ElementId> {
        self.boundary_of(id).support()
    }

    fn closures(&self) -> &BTreeMap<ElementId, BTreeSet<ElementId>> {
        self.closures.get_or_init(|| {
            let mut map: BTreeMap<ElementId, BTreeSet<ElementId>> = BTreeMap::new();
            for d in 0..=self.order() {
                for e in self.elements_of_degree(d) {
                    let mut set = BTreeSet::from([e]);
                    if d > 0 {
                        for f in self.boundary_set(e) {
                            set.extend(map[&f].iter().copied());
                        }
                    }
                    map.insert(e, set);
                }
            }
            map
        })
    }

    /// The downward closure of `e`: the basis of the generated subcomplex.
    pub fn closure(&self, id: ElementId) -> &BTreeSet<ElementId> {
        &self.closures()[&id]
    }

    /// The basis of the subcomplex generated by one element: `{e}` at its own
    /// degree, then iterated boundary sets below.
    pub fn generated_subcomplex(&self, id: ElementId) -> SubcomplexBasis {
        SubcomplexBasis { elements: self.closure(id).clone() }
    }

    /// Checks downward closure of an arbitrary element set.
    pub fn subcomplex_basis(&self, elements: BTreeSet<ElementId>) -> Result<SubcomplexBasis, ComplexError> {
        for &e in &elements {
            if e.degree > 0 {
                for f in self.boundary_set(e) {
                    if !elements.contains(&f) {
                        return Err(ComplexError::NotDownwardClosed(e));
                    }
                }
            }
        }
        Ok(SubcomplexBasis { elements })
    }

    /// The honest subcomplex on a downward-closed basis, with boundaries
    /// restricted and labels carried over. Empty bases yield the one-point
    /// convention error only through `build`, which cannot happen here
    /// because a nonempty downward-closed set has a nonempty top degree.
    pub fn restrict(&self, basis: &SubcomplexBasis) -> ChainComplex<R> {
        assert!(!basis.is_empty(), "cannot restrict to an empty basis");
        let top = basis.elements.iter().map(|e| e.degree).max().unwrap();
        let mut keep: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for e in &basis.elements {
            keep[e.degree].push(e.index);
        }
        for k in &mut keep {
            k.sort_unstable();
        }
        let labels: Vec<Vec<String>> = keep
            .iter()
            .enumerate()
            .map(|(d, idxs)| idxs.iter().map(|&i| self.labels[d][i].clone()).collect())
            .collect();
        let mut entries = Vec::new();
        for d in 1..=top {
            let pos_of: BTreeMap<usize, usize> =
                keep[d - 1].iter().enumerate().map(|(p, &i)| (i, p)).collect();
            for (new_col, &old_col) in keep[d].iter().enumerate() {
                for (r, v) in self.boundaries[d - 1].column(old_col) {
                    let new_row = *pos_of
                        .get(r)
                        .expect("downward-closed basis keeps all boundary rows");
                    entries.push(BoundaryEntry {
                        degree: d,
                        column: new_col,
                        row: new_row,
                        value: v.clone(),
                    });
                }
            }
        }
        ChainComplex::build(self.ring.clone(), labels, entries)
            .expect("restriction of a valid complex is valid")
    }

    /// The `i`-skeleton: identical bases and boundaries up to degree `i`.
    pub fn skeleton(&self, i: usize) -> Result<ChainComplex<R>, ComplexError> {
        if i > self.order() {
            return Err(ComplexError::IndexOutOfRange { index: i, order: self.order() });
        }
        if i == self.order() {
            return Ok(self.clone());
        }
        let labels: Vec<Vec<String>> = self.labels[..=i].to_vec();
        let boundaries = self.boundaries[..i].to_vec();
        let complex = ChainComplex {
            ring: self.ring.clone(),
            labels,
            label_lookup: self.label_lookup[..=i].to_vec(),
            boundaries,
            closures: OnceLock::new(),
        };
        if complex.labels.last().is_some_and(Vec::is_empty) {
            return Err(ComplexError::EmptyTopDegree);
        }
        Ok(complex)
    }

    /// True iff every basis element below the top degree lies in the boundary
    /// set of some element one degree up.
    pub fn is_pure(&self) -> bool {
        let d = self.order();
        for v in 0..d {
            let mut covered = vec![false; self.degree_size(v)];
            for col in 0..self.degree_size(v + 1) {
                for (r, _) in self.boundaries[v].column(col) {
                    covered[*r] = true;
                }
            }
            if covered.iter().any(|c| !c) {
                return false;
            }
        }
        true
    }

    /// The maximal elements Γ: those contained in no other element's boundary
    /// set, listed in descending degree and basis order within a degree.
    pub fn maximal_elements(&self) -> Vec<ElementId> {
        let mut out = Vec::new();
        for d in (0..=self.order()).rev() {
            let mut covered = vec![false; self.degree_size(d)];
            if d < self.order() {
                for col in 0..self.degree_size(d + 1) {
                    for (r, _) in self.boundaries[d].column(col) {
                        covered[*r] = true;
                    }
                }
            }
            for i in 0..self.degree_size(d) {
                if !covered[i] {
                    out.push(ElementId::new(d, i));
                }
            }
        }
        out
    }

    pub fn maximal_set(&self) -> BTreeSet<ElementId> {
        self.maximal_elements().into_iter().collect()
    }

    /// The order of the pure complex a set generates: its top degree if the
    /// set is downward-complete enough to be pure, else `None`. Purity of a
    /// set means every member below the set's top degree lies in the boundary
    /// set of a member one degree up.
    pub fn pure_order_of_set(&self, set: &BTreeSet<ElementId>) -> Option<usize> {
        let top = set.iter().map(|e| e.degree).max()?;
        for &e in set {
            if e.degree == top {
                continue;
            }
            let covered = set
                .iter()
                .filter(|f| f.degree == e.degree + 1)
                .any(|f| self.boundary_set(*f).contains(&e));
            if !covered {
                return None;
            }
        }
        Some(top)
    }
}

impl ChainComplex<Integers> {
    /// The simplicial chain complex of a facet family over the integers, with
    /// the standard alternating-sign boundary. Vertices are ordered
    /// numerically when every name parses as an integer, lexicographically
    /// otherwise; faces within a degree are ordered lexicographically by
    /// vertex sequence.
    pub fn from_simplicial(facets: &[Vec<String>]) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let mut vertex_names: Vec<String> = facets.iter().flatten().cloned().collect();
        vertex_names.sort();
        vertex_names.dedup();
        if vertex_names.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let all_numeric = vertex_names.iter().all(|v| v.parse::<u64>().is_ok());
        if all_numeric {
            vertex_names.sort_by_key(|v| v.parse::<u64>().unwrap());
        }
        let vertex_rank: BTreeMap<&str, usize> =
            vertex_names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in facets {
            let mut ranks: Vec<usize> = facet.iter().map(|v| vertex_rank[v.as_str()]).collect();
            ranks.sort_unstable();
            ranks.dedup();
            if ranks.is_empty() {
                return Err(ComplexError::EmptyInput);
            }
            let n = ranks.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> =
                    (0..n).filter(|b| mask & (1 << b) != 0).map(|b| ranks[b]).collect();
                faces.insert(face);
            }
        }

        let dim = faces.iter().map(|f| f.len() - 1).max().unwrap();
        let mut per_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim + 1];
        for f in faces {
            per_degree[f.len() - 1].push(f);
        }
        for faces in &mut per_degree {
            faces.sort();
        }
        let face_pos: Vec<BTreeMap<&Vec<usize>, usize>> = per_degree
            .iter()
            .map(|faces| faces.iter().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();

        let labels: Vec<Vec<String>> = per_degree
            .iter()
            .map(|faces| {
                faces
                    .iter()
                    .map(|f| {
                        let names: Vec<&str> =
                            f.iter().map(|&r| vertex_names[r].as_str()).collect();
                        format!("{{{}}}", names.join(","))
                    })
                    .collect()
            })
            .collect();

        let mut entries = Vec::new();
        let ring = Integers;
        for d in 1..=dim {
            for (col, face) in per_degree[d].iter().enumerate() {
                for (i, _) in face.iter().enumerate() {
                    let mut sub = face.clone();
                    sub.remove(i);
                    let row = face_pos[d - 1][&sub];
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    entries.push(BoundaryEntry {
                        degree: d,
                        column: col,
                        row,
                        value: ring.from_i64(sign),
                    });
                }
            }
        }
        ChainComplex::build(ring, labels, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;
    use crate::testutil::{pinched_disk, strip_three};
    use num::BigInt;

    #[test]
    fn builds_strip_complex() {
        let c = strip_three();
        assert_eq!(c.order(), 2);
        assert_eq!(c.degree_size(2), 3);
        assert!(c.is_pure());
    }

    #[test]
    fn order_zero_complex_is_valid() {
        let c = ChainComplex::from_columns(Integers, &[2], vec![]).unwrap();
        assert_eq!(c.order(), 0);
        assert!(c.is_pure());
        assert_eq!(c.maximal_elements().len(), 2);
    }

    #[test]
    fn boundary_square_violation_is_reported() {
        // ∂1∂2 e2_1 = 2·e0_1 ≠ 0
        let err = ChainComplex::from_columns(
            Integers,
            &[1, 2, 1],
            vec![
                vec![vec![(0, 1)], vec![(0, 1)]],
                vec![vec![(0, 1), (1, 1)]],
            ],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::BoundaryConditionViolated { degree: 1, column: 0 });
    }

    #[test]
    fn empty_top_degree_rejected() {
        let err = ChainComplex::<Integers>::from_columns(Integers, &[2, 0], vec![vec![]]).unwrap_err();
        assert_eq!(err, ComplexError::EmptyTopDegree);
    }

    #[test]
    fn support_follows_ring_reduction() {
        let z = Integers;
        let e = ElementId::new(0, 0);
        let f = ElementId::new(0, 1);
        let x = Chain::from_terms(&z, 0, [(e, BigInt::from(2)), (f, BigInt::from(-3))]).unwrap();
        assert_eq!(x.support(), BTreeSet::from([e, f]));
        assert!(Chain::<Integers>::zero(0).support().is_empty());

        let fp = PrimeField::new(5).unwrap();
        let x = Chain::from_terms(&fp, 0, [(e, fp.from_i64(5))]).unwrap();
        assert!(x.support().is_empty());
    }

    #[test]
    fn boundary_support_examples() {
        let c = pinched_disk();
        let e1_1 = ElementId::new(1, 0);
        let x = Chain::from_terms(c.ring(), 1, [(e1_1, BigInt::from(1))]).unwrap();
        assert_eq!(
            c.boundary_support(&x),
            BTreeSet::from([ElementId::new(0, 0), ElementId::new(0, 1)])
        );
        // e1_1 + e1_2 has cancelling boundaries
        let y = Chain::from_terms(
            c.ring(),
            1,
            [(e1_1, BigInt::from(1)), (ElementId::new(1, 1), BigInt::from(1))],
        )
        .unwrap();
        assert!(c.boundary_support(&y).is_empty());
        // degree-0 chains always have empty boundary support
        let v = Chain::from_terms(c.ring(), 0, [(ElementId::new(0, 0), BigInt::from(7))]).unwrap();
        assert!(c.boundary_support(&v).is_empty());
    }

    #[test]
    fn generated_subcomplex_examples() {
        let c = pinched_disk();
        let top = ElementId::new(2, 0);
        let sub = c.generated_subcomplex(top);
        assert_eq!(sub.len(), 5);

        let vertex = ElementId::new(0, 0);
        assert_eq!(c.generated_subcomplex(vertex).elements(), &BTreeSet::from([vertex]));

        // a generated subcomplex is pure of the generator's degree
        assert_eq!(c.pure_order_of_set(sub.elements()), Some(2));
    }

    #[test]
    fn skeleton_examples() {
        let c = strip_three();
        assert_eq!(c.skeleton(2).unwrap(), c);
        let sk1 = c.skeleton(1).unwrap();
        assert_eq!(sk1.order(), 1);
        assert_eq!(sk1.degree_size(1), 4);
        let sk0 = c.skeleton(0).unwrap();
        assert_eq!(sk0.order(), 0);
        assert!(matches!(c.skeleton(3), Err(ComplexError::IndexOutOfRange { .. })));
    }

    #[test]
    fn maximal_elements_examples() {
        let c = strip_three();
        assert_eq!(
            c.maximal_elements(),
            vec![ElementId::new(2, 0), ElementId::new(2, 1), ElementId::new(2, 2)]
        );

        // non-pure: one edge hitting only the first of two vertices
        let c = ChainComplex::from_columns(Integers, &[2, 1], vec![vec![vec![(0, 1)]]]).unwrap();
        assert!(!c.is_pure());
        assert_eq!(c.maximal_elements(), vec![ElementId::new(1, 0), ElementId::new(0, 1)]);
    }

    #[test]
    fn simplicial_triangle() {
        let c = ChainComplex::from_simplicial(&[vec!["1".into(), "2".into(), "3".into()]]).unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!(c.degree_size(2), 1);
        assert_eq!(c.degree_size(1), 3);
        assert_eq!(c.degree_size(0), 3);
        assert!(c.is_pure());
        let col = c.boundary_matrix(2).column_vec(0);
        assert_eq!(col, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(c.label(ElementId::new(2, 0)), "{1,2,3}");
    }

    #[test]
    fn simplicial_two_triangles() {
        let c = ChainComplex::from_simplicial(&[
            vec!["1".into(), "2".into(), "3".into()],
            vec!["2".into(), "3".into(), "4".into()],
        ])
        .unwrap();
        assert_eq!(c.degree_size(2), 2);
        assert_eq!(c.degree_size(1), 5);
        assert_eq!(c.degree_size(0), 4);
        assert!(c.is_pure());
    }

    #[test]
    fn simplicial_single_vertex() {
        let c = ChainComplex::from_simplicial(&[vec!["1".into()]]).unwrap();
        assert_eq!(c.order(), 0);
        assert_eq!(c.degree_size(0), 1);
        assert!(ChainComplex::from_simplicial(&[]).is_err());
    }

    #[test]
    fn restriction_matches_closure() {
        let c = strip_three();
        let sub = c.generated_subcomplex(ElementId::new(2, 0));
        let r = c.restrict(&sub);
        assert_eq!(r.order(), 2);
        assert_eq!(r.degree_size(2), 1);
        assert_eq!(r.degree_size(1), 2);
        assert_eq!(r.degree_size(0), 2);
        assert!(r.is_pure());
    }
}

//! Classification of maximal basis elements relative to an ordering, and the
//! explicit cycle basis in top degree when no strictly precritical elements
//! are present.
//!
//! An element is critical when its boundary lies in the ring span of the
//! earlier boundaries, precritical when a nonzero multiple does, and
//! noncritical otherwise. Over a field the first two coincide.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Chain, ChainComplex, ElementId};
use crate::linalg::{self, SparseMatrix};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassTag {
    Critical,
    Precritical,
    Noncritical,
}

/// An exact linear relation `factor · ∂(element) = Σ terms_i · ∂(id_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationWitness<R: Ring> {
    pub factor: R::Elem,
    pub terms: Vec<(ElementId, R::Elem)>,
}

impl<R: Ring> RelationWitness<R> {
    /// Replays the relation with exact arithmetic.
    pub fn verify(&self, c: &ChainComplex<R>, element: ElementId) -> bool {
        let ring = c.ring();
        if ring.is_zero(&self.factor) {
            return false;
        }
        let mut lhs = c.boundary_of(element).scaled(ring, &self.factor);
        for (id, coeff) in &self.terms {
            if id.degree != element.degree {
                return false;
            }
            lhs = lhs.sub(ring, &c.boundary_of(*id).scaled(ring, coeff));
        }
        lhs.is_zero()
    }
}

/// An ordering of the degree-`degree` basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOrdering {
    pub degree: usize,
    pub order: Vec<ElementId>,
}

impl DegreeOrdering {
    /// The basis in construction order.
    pub fn natural<R: Ring>(c: &ChainComplex<R>, degree: usize) -> Self {
        DegreeOrdering { degree, order: c.elements_of_degree(degree).collect() }
    }

    fn validate<R: Ring>(&self, c: &ChainComplex<R>) -> Result<(), ClassifyError> {
        let mut seen = vec![false; c.degree_size(self.degree)];
        if self.order.len() != seen.len() {
            return Err(ClassifyError::InvalidOrdering(format!(
                "ordering lists {} of {} degree-{} elements",
                self.order.len(),
                seen.len(),
                self.degree
            )));
        }
        for id in &self.order {
            if id.degree != self.degree || id.index >= seen.len() || seen[id.index] {
                return Err(ClassifyError::InvalidOrdering(format!(
                    "ordering is not a permutation of the degree-{} basis",
                    self.degree
                )));
            }
            seen[id.index] = true;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("element at position {0} is not maximal")]
    NotMaximal(usize),
    #[error("a maximal element precedes a non-maximal element before position {0}")]
    OrderingConventionViolated(usize),
    #[error("the first position is never classified")]
    FirstPosition,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("the complex is not pure")]
    NotPure,
    #[error("a strictly precritical element is present at position {0}")]
    StrictlyPrecriticalPresent(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClass<R: Ring> {
    pub element: ElementId,
    pub tag: ClassTag,
    /// Set on the first position of an ordering, which the classification
    /// never applies to; it is reported noncritical by convention.
    pub by_convention: bool,
    pub witness: Option<RelationWitness<R>>,
}

/// Classification of a full top-degree basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopClassification<R: Ring> {
    pub classes: Vec<ElementClass<R>>,
    pub noncritical: usize,
    /// Count of precritical elements, critical ones included.
    pub precritical: usize,
}

fn prefix_matrix<R: Ring>(
    c: &ChainComplex<R>,
    prefix: &[ElementId],
    degree: usize,
) -> SparseMatrix<R> {
    if degree == 0 {
        return SparseMatrix::zero(c.ring().clone(), 0, prefix.len());
    }
    c.boundary_matrix(degree)
        .select_columns(&prefix.iter().map(|e| e.index).collect::<Vec<_>>())
}

fn boundary_column<R: Ring>(c: &ChainComplex<R>, id: ElementId) -> Vec<R::Elem> {
    if id.degree == 0 {
        return Vec::new();
    }
    c.boundary_matrix(id.degree).column_vec(id.index)
}

fn witness_terms<R: Ring>(
    ring: &R,
    prefix: &[ElementId],
    coefficients: Vec<R::Elem>,
) -> Vec<(ElementId, R::Elem)> {
    prefix
        .iter()
        .zip(coefficients)
        .filter(|(_, v)| !ring.is_zero(v))
        .map(|(id, v)| (*id, v))
        .collect()
}

/// Span tests against an explicit prefix, with no ordering-convention
/// checking; the public entry points validate their preconditions first.
pub(crate) fn classify_at<R: Ring>(
    c: &ChainComplex<R>,
    prefix: &[ElementId],
    target: ElementId,
) -> ElementClass<R> {
    let ring = c.ring();
    let m = prefix_matrix(c, prefix, target.degree);
    let v = boundary_column(c, target);
    if let Some(x) = linalg::lattice_membership(&m, &v) {
        return ElementClass {
            element: target,
            tag: ClassTag::Critical,
            by_convention: false,
            witness: Some(RelationWitness {
                factor: ring.one(),
                terms: witness_terms(ring, prefix, x),
            }),
        };
    }
    if let Some((a, x)) = linalg::rational_span_membership(&m, &v) {
        return ElementClass {
            element: target,
            tag: ClassTag::Precritical,
            by_convention: false,
            witness: Some(RelationWitness { factor: a, terms: witness_terms(ring, prefix, x) }),
        };
    }
    ElementClass { element: target, tag: ClassTag::Noncritical, by_convention: false, witness: None }
}

/// Classifies the element at `position` (0-based) of the ordering. The
/// element must be maximal, must not sit at the first position, and every
/// non-maximal element of the degree must precede it.
pub fn classify_element<R: Ring>(
    c: &ChainComplex<R>,
    ordering: &DegreeOrdering,
    position: usize,
) -> Result<ElementClass<R>, ClassifyError> {
    ordering.validate(c)?;
    if position >= ordering.order.len() {
        return Err(ClassifyError::InvalidOrdering(format!("position {position} out of range")));
    }
    if position == 0 {
        return Err(ClassifyError::FirstPosition);
    }
    let gamma = c.maximal_set();
    let target = ordering.order[position];
    if !gamma.contains(&target) {
        return Err(ClassifyError::NotMaximal(position));
    }
    let mut seen_gamma = false;
    for id in &ordering.order[..position] {
        if gamma.contains(id) {
            seen_gamma = true;
        } else if seen_gamma {
            return Err(ClassifyError::OrderingConventionViolated(position));
        }
    }
    let placed: BTreeSet<ElementId> = ordering.order[..position].iter().copied().collect();
    for e in c.elements_of_degree(ordering.degree) {
        if !gamma.contains(&e) && !placed.contains(&e) {
            return Err(ClassifyError::OrderingConventionViolated(position));
        }
    }
    Ok(classify_at(c, &ordering.order[..position], target))
}

/// Classifies all of the top degree: position 0 is noncritical by
/// convention, later positions by the span tests. Requires a pure complex,
/// where the top degree consists exactly of the maximal elements.
pub fn classify_top_degree<R: Ring>(
    c: &ChainComplex<R>,
    ordering: &DegreeOrdering,
) -> Result<TopClassification<R>, ClassifyError> {
    if ordering.degree != c.order() {
        return Err(ClassifyError::InvalidOrdering(format!(
            "expected an ordering of degree {}, found degree {}",
            c.order(),
            ordering.degree
        )));
    }
    if !c.is_pure() {
        return Err(ClassifyError::NotPure);
    }
    ordering.validate(c)?;
    let mut classes = Vec::with_capacity(ordering.order.len());
    for (j, &e) in ordering.order.iter().enumerate() {
        if j == 0 {
            classes.push(ElementClass {
                element: e,
                tag: ClassTag::Noncritical,
                by_convention: true,
                witness: None,
            });
        } else {
            classes.push(classify_at(c, &ordering.order[..j], e));
        }
    }
    let noncritical = classes.iter().filter(|c| c.tag == ClassTag::Noncritical).count();
    let precritical = classes.len() - noncritical;
    Ok(TopClassification { classes, noncritical, precritical })
}

/// The unique top-degree cycles `ρ_i` with `ρ_i(g_j) = δ_ij` for the critical
/// elements `g_j`, forming a basis of `H_d`. Requires the ordering to list
/// the noncritical elements first and rejects strictly precritical elements.
pub fn critical_cycle_basis<R: Ring>(
    c: &ChainComplex<R>,
    ordering: &DegreeOrdering,
) -> Result<Vec<Chain<R>>, ClassifyError> {
    let top = classify_top_degree(c, ordering)?;
    let ring = c.ring();
    let mut noncritical = Vec::new();
    let mut critical = Vec::new();
    for (j, class) in top.classes.iter().enumerate() {
        match class.tag {
            ClassTag::Noncritical => {
                if !critical.is_empty() {
                    return Err(ClassifyError::InvalidOrdering(
                        "noncritical elements must precede the critical ones".to_string(),
                    ));
                }
                noncritical.push(class.element);
            }
            ClassTag::Critical => critical.push(class.element),
            ClassTag::Precritical => return Err(ClassifyError::StrictlyPrecriticalPresent(j)),
        }
    }
    let m = prefix_matrix(c, &noncritical, c.order());
    let mut basis = Vec::with_capacity(critical.len());
    for &g in &critical {
        let v = boundary_column(c, g);
        let x = linalg::lattice_membership(&m, &v)
            .expect("a critical boundary lies in the span of the noncritical ones");
        let mut terms = vec![(g, ring.one())];
        for (id, coeff) in noncritical.iter().zip(x) {
            if !ring.is_zero(&coeff) {
                terms.push((*id, ring.neg(&coeff)));
            }
        }
        basis.push(Chain::from_terms(ring, c.order(), terms).expect("degrees match"));
    }
    Ok(basis)
}

//! Shellings of chain complexes: certificate verification, exhaustive
//! backtracking search, failure counting, monotonization and skeleton
//! shellings.
//!
//! A shelling order of a set of maximal elements demands, for each element
//! after the first, that its closure meets the union of the earlier closures
//! in a pure set one degree down, and that the element's boundary set admits
//! a recursive shelling in which that intersection comes first. Certificates
//! store the chosen order at every level, so checking never re-searches.
//!
//! Degree-0 elements placed after the first position satisfy the intersection
//! condition vacuously (their closure meets nothing — the empty complex of
//! order -1); without that convention no complex with a maximal vertex could
//! be shellable and skeleton shellability would fail.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{ChainComplex, ElementId};
use crate::ring::Ring;

/// A machine-checkable shelling: one ordering per level, with a recursive
/// certificate for every member's boundary set. Entries of degree 0 carry an
/// empty certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub order: Vec<ElementId>,
    pub boundaries: Vec<ShellingCertificate>,
}

impl ShellingCertificate {
    /// A certificate with no sub-levels, for sets of degree-0 elements.
    pub fn trivial(order: Vec<ElementId>) -> Self {
        let boundaries = vec![ShellingCertificate::empty(); order.len()];
        ShellingCertificate { order, boundaries }
    }

    pub fn empty() -> Self {
        ShellingCertificate { order: Vec::new(), boundaries: Vec::new() }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.order.iter().map(|e| e.degree).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShellingViolationKind {
    MalformedCertificate,
    EmptyIntersection,
    NotPure,
    WrongOrder,
    NoPrefixSubShelling,
}

/// A concrete counterexample: which condition failed, where in the order, and
/// the offending elements. `context` lists the chain of boundary owners from
/// the top level down to the violating level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingViolation {
    pub kind: ShellingViolationKind,
    pub position: usize,
    pub degree: usize,
    pub offending: Vec<ElementId>,
    pub context: Vec<ElementId>,
}

impl std::fmt::Display for ShellingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} at position {} (degree {})",
            self.kind,
            self.position + 1,
            self.degree
        )?;
        if !self.context.is_empty() {
            let path: Vec<String> = self.context.iter().map(ToString::to_string).collect();
            write!(f, " inside bd({})", path.join(" > "))?;
        }
        if !self.offending.is_empty() {
            let off: Vec<String> = self.offending.iter().map(ToString::to_string).collect();
            write!(f, "; offending: {}", off.join(", "))?;
        }
        Ok(())
    }
}

/// The search walked its node budget without settling existence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("search budget exhausted")]
pub struct BudgetExhausted;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MonotonizeError {
    #[error("input certificate is invalid: {0}")]
    InvalidInput(ShellingViolation),
    #[error("swap produced an invalid certificate: {0}")]
    SwapFailed(ShellingViolation),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SkeletonShellingError {
    #[error("input certificate is invalid: {0}")]
    InvalidInput(ShellingViolation),
    #[error("input certificate is not monotonically descending")]
    NotMonotone,
    #[error("skeleton level {index} exceeds the complex order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("search budget exhausted while deriving a sub-shelling")]
    Budget,
    #[error("derived skeleton certificate failed verification: {0}")]
    DerivationFailed(ShellingViolation),
}

fn violation(
    kind: ShellingViolationKind,
    position: usize,
    degree: usize,
    offending: Vec<ElementId>,
    context: &[ElementId],
) -> ShellingViolation {
    ShellingViolation { kind, position, degree, offending, context: context.to_vec() }
}

/// Checks that `set` generates a pure complex of order exactly `want`:
/// nonempty, top degree `want`, and every lower member covered by a member
/// one degree up. Returns the offending elements otherwise.
pub(crate) fn set_is_pure_of_order<R: Ring>(
    c: &ChainComplex<R>,
    set: &BTreeSet<ElementId>,
    want: usize,
) -> Result<(), (ShellingViolationKind, Vec<ElementId>)> {
    check_pure_of_order(c, set, want)
}

fn check_pure_of_order<R: Ring>(
    c: &ChainComplex<R>,
    set: &BTreeSet<ElementId>,
    want: usize,
) -> Result<(), (ShellingViolationKind, Vec<ElementId>)> {
    if set.is_empty() {
        return Err((ShellingViolationKind::EmptyIntersection, Vec::new()));
    }
    let top = set.iter().map(|e| e.degree).max().unwrap();
    if top != want {
        return Err((
            ShellingViolationKind::NotPure,
            set.iter().filter(|e| e.degree == top).copied().collect(),
        ));
    }
    for &e in set {
        if e.degree == top {
            continue;
        }
        let covered = set
            .iter()
            .filter(|f| f.degree == e.degree + 1)
            .any(|f| c.boundary_set(*f).contains(&e));
        if !covered {
            return Err((ShellingViolationKind::NotPure, vec![e]));
        }
    }
    Ok(())
}

fn verify_level<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
    set: &BTreeSet<ElementId>,
    prefix: &BTreeSet<ElementId>,
    context: &mut Vec<ElementId>,
) -> Result<(), ShellingViolation> {
    let order_set: BTreeSet<ElementId> = cert.order.iter().copied().collect();
    if order_set != *set || cert.order.len() != set.len() {
        let mut off: Vec<ElementId> = order_set.symmetric_difference(set).copied().collect();
        off.sort();
        return Err(violation(ShellingViolationKind::MalformedCertificate, 0, 0, off, context));
    }
    if cert.boundaries.len() != cert.order.len() {
        return Err(violation(ShellingViolationKind::MalformedCertificate, 0, 0, Vec::new(), context));
    }
    if prefix.len() > cert.order.len()
        || cert.order[..prefix.len()].iter().any(|e| !prefix.contains(e))
    {
        return Err(violation(
            ShellingViolationKind::WrongOrder,
            0,
            cert.order.first().map_or(0, |e| e.degree),
            prefix.iter().copied().collect(),
            context,
        ));
    }

    let mut union: BTreeSet<ElementId> = BTreeSet::new();
    for (j, &g) in cert.order.iter().enumerate() {
        let s = g.degree;
        let mut sub_prefix = BTreeSet::new();
        if j > 0 && s >= 1 {
            let inter: BTreeSet<ElementId> =
                c.closure(g).intersection(&union).copied().collect();
            if let Err((kind, off)) = check_pure_of_order(c, &inter, s - 1) {
                return Err(violation(kind, j, s, off, context));
            }
            sub_prefix = inter.into_iter().filter(|e| e.degree == s - 1).collect();
        }
        if s >= 1 {
            let bset = c.boundary_set(g);
            if bset.is_empty() {
                return Err(violation(
                    ShellingViolationKind::NoPrefixSubShelling,
                    j,
                    s,
                    vec![g],
                    context,
                ));
            }
            context.push(g);
            let res = verify_level(c, &cert.boundaries[j], &bset, &sub_prefix, context);
            context.pop();
            res?;
        } else if !cert.boundaries[j].order.is_empty() {
            return Err(violation(ShellingViolationKind::MalformedCertificate, j, 0, vec![g], context));
        }
        union.extend(c.closure(g).iter().copied());
    }
    Ok(())
}

/// Verifies a certificate against the complex: the order must permute the
/// maximal elements and every recursive level must satisfy the intersection,
/// purity and prefix conditions.
pub fn verify_shelling<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
) -> Result<(), ShellingViolation> {
    let gamma = c.maximal_set();
    let mut context = Vec::new();
    verify_level(c, cert, &gamma, &BTreeSet::new(), &mut context)
}

/// Verifies a certificate as a shelling of an explicit element set with a
/// prefix constraint (the recursive form the regularity checks consume).
pub(crate) fn verify_set_shelling<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
    set: &BTreeSet<ElementId>,
    prefix: &BTreeSet<ElementId>,
) -> Result<(), ShellingViolation> {
    let mut context = Vec::new();
    verify_level(c, cert, set, prefix, &mut context)
}

type MemoKey = (Vec<ElementId>, Vec<ElementId>);

pub(crate) struct SearchCtx<'a, R: Ring> {
    complex: &'a ChainComplex<R>,
    budget: u64,
    memo: HashMap<MemoKey, Option<ShellingCertificate>>,
}

impl<'a, R: Ring> SearchCtx<'a, R> {
    pub(crate) fn new(complex: &'a ChainComplex<R>, budget: u64) -> Self {
        SearchCtx { complex, budget, memo: HashMap::new() }
    }

    fn tick(&mut self) -> Result<(), BudgetExhausted> {
        if self.budget == 0 {
            return Err(BudgetExhausted);
        }
        self.budget -= 1;
        Ok(())
    }

    pub(crate) fn tick_budget(&mut self) -> Result<(), BudgetExhausted> {
        self.tick()
    }

    /// Every monotone-descending shelling order of `set`, in deterministic
    /// order. Sub-shelling existence is settled through the memoized search,
    /// so each returned order extends to a full certificate.
    pub(crate) fn enumerate_monotone_orders(
        &mut self,
        set: &BTreeSet<ElementId>,
    ) -> Result<Vec<Vec<ElementId>>, BudgetExhausted> {
        let mut placed = Vec::new();
        let mut out = Vec::new();
        self.enumerate_monotone(set, &mut placed, &BTreeSet::new(), &mut out)?;
        Ok(out)
    }

    fn enumerate_monotone(
        &mut self,
        set: &BTreeSet<ElementId>,
        placed: &mut Vec<ElementId>,
        union: &BTreeSet<ElementId>,
        out: &mut Vec<Vec<ElementId>>,
    ) -> Result<(), BudgetExhausted> {
        if placed.len() == set.len() {
            out.push(placed.clone());
            return Ok(());
        }
        let placed_set: BTreeSet<ElementId> = placed.iter().copied().collect();
        let max_degree = set.iter().map(|e| e.degree).max().unwrap_or(0);
        let degree_cap = placed.last().map_or(max_degree, |e| e.degree);
        let mut pool: Vec<ElementId> =
            set.difference(&placed_set).filter(|e| e.degree <= degree_cap).copied().collect();
        pool.sort();
        for cand in pool {
            self.tick()?;
            let j = placed.len();
            let s = cand.degree;
            if j == 0 && s != max_degree {
                continue;
            }
            let mut sub_prefix = BTreeSet::new();
            if j > 0 && s >= 1 {
                let inter: BTreeSet<ElementId> =
                    self.complex.closure(cand).intersection(union).copied().collect();
                if check_pure_of_order(self.complex, &inter, s - 1).is_err() {
                    continue;
                }
                sub_prefix = inter.into_iter().filter(|e| e.degree == s - 1).collect();
            }
            if s >= 1 {
                let bset = self.complex.boundary_set(cand);
                if bset.is_empty() || self.search_set(&bset, &sub_prefix)?.is_none() {
                    continue;
                }
            }
            placed.push(cand);
            let mut next_union = union.clone();
            next_union.extend(self.complex.closure(cand).iter().copied());
            self.enumerate_monotone(set, placed, &next_union, out)?;
            placed.pop();
        }
        Ok(())
    }

    /// Candidate ordering heuristic: descending degree, then descending
    /// closure overlap with what is already placed, then construction order.
    fn ranked_candidates(
        &self,
        remaining: &BTreeSet<ElementId>,
        union: &BTreeSet<ElementId>,
    ) -> Vec<ElementId> {
        let mut cands: Vec<(usize, usize, ElementId)> = remaining
            .iter()
            .map(|&e| {
                let overlap = self.complex.closure(e).intersection(union).count();
                (e.degree, overlap, e)
            })
            .collect();
        cands.sort_by(|a, b| {
            b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2))
        });
        cands.into_iter().map(|(_, _, e)| e).collect()
    }

    /// Exhaustive search for a shelling of `set` whose order starts with the
    /// elements of `prefix`. `None` is a proof of absence.
    pub(crate) fn search_set(
        &mut self,
        set: &BTreeSet<ElementId>,
        prefix: &BTreeSet<ElementId>,
    ) -> Result<Option<ShellingCertificate>, BudgetExhausted> {
        let key: MemoKey =
            (set.iter().copied().collect(), prefix.iter().copied().collect());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        if set.iter().all(|e| e.degree == 0) {
            // any order works at the bottom; prefix first, then the rest
            let mut order: Vec<ElementId> = prefix.iter().copied().collect();
            order.extend(set.difference(prefix).copied());
            let cert = Some(ShellingCertificate::trivial(order));
            self.memo.insert(key, cert.clone());
            return Ok(cert);
        }
        let mut placed: Vec<(ElementId, ShellingCertificate)> = Vec::new();
        let mut union: BTreeSet<ElementId> = BTreeSet::new();
        let result = self.backtrack(set, prefix, &mut placed, &mut union)?;
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    fn backtrack(
        &mut self,
        set: &BTreeSet<ElementId>,
        prefix: &BTreeSet<ElementId>,
        placed: &mut Vec<(ElementId, ShellingCertificate)>,
        union: &BTreeSet<ElementId>,
    ) -> Result<Option<ShellingCertificate>, BudgetExhausted> {
        if placed.len() == set.len() {
            let (order, boundaries) = placed.iter().cloned().unzip();
            return Ok(Some(ShellingCertificate { order, boundaries }));
        }
        let placed_set: BTreeSet<ElementId> = placed.iter().map(|(e, _)| *e).collect();
        let remaining: BTreeSet<ElementId> = set.difference(&placed_set).copied().collect();
        let max_degree = set.iter().map(|e| e.degree).max().unwrap();
        let in_prefix = placed.len() < prefix.len();
        let pool: BTreeSet<ElementId> = if in_prefix {
            prefix.intersection(&remaining).copied().collect()
        } else {
            remaining
        };
        for cand in self.ranked_candidates(&pool, union) {
            self.tick()?;
            let j = placed.len();
            let s = cand.degree;
            // the first element must carry the top degree, or condition 1
            // fails at the first top-degree element later
            if j == 0 && s != max_degree {
                continue;
            }
            let mut sub_prefix = BTreeSet::new();
            if j > 0 && s >= 1 {
                let inter: BTreeSet<ElementId> =
                    self.complex.closure(cand).intersection(union).copied().collect();
                if check_pure_of_order(self.complex, &inter, s - 1).is_err() {
                    continue;
                }
                sub_prefix = inter.into_iter().filter(|e| e.degree == s - 1).collect();
            }
            let sub = if s >= 1 {
                let bset = self.complex.boundary_set(cand);
                if bset.is_empty() {
                    continue;
                }
                match self.search_set(&bset, &sub_prefix)? {
                    Some(sub) => sub,
                    None => continue,
                }
            } else {
                ShellingCertificate::empty()
            };
            placed.push((cand, sub));
            let mut next_union = union.clone();
            next_union.extend(self.complex.closure(cand).iter().copied());
            let found = self.backtrack(set, prefix, placed, &next_union)?;
            placed.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Searches for a shelling of the maximal elements. `Ok(None)` means the
/// exhaustive backtracking proved none exists within the given budget.
pub fn search_shelling<R: Ring>(
    c: &ChainComplex<R>,
    budget: u64,
) -> Result<Option<ShellingCertificate>, BudgetExhausted> {
    let mut ctx = SearchCtx::new(c, budget);
    let gamma = c.maximal_set();
    ctx.search_set(&gamma, &BTreeSet::new())
}

/// All failure pairs `(i, j)` (1-based) with `i < j` and
/// `deg(g_i) < deg(g_j)`; empty iff the order is monotonically descending.
pub fn failures(cert: &ShellingCertificate) -> Vec<(usize, usize)> {
    let degs = cert.degree_sequence();
    let mut out = Vec::new();
    for i in 0..degs.len() {
        for j in i + 1..degs.len() {
            if degs[i] < degs[j] {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

fn first_inversion(cert: &ShellingCertificate) -> Option<usize> {
    let degs = cert.degree_sequence();
    (0..degs.len().saturating_sub(1)).find(|&i| degs[i] < degs[i + 1])
}

/// One adjacent swap at the first inversion, keeping the sub-certificates
/// with their elements; the intersections a swap changes are provably the
/// same sets. Returns `None` when the order is already monotone.
pub fn monotonize_once<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
) -> Result<Option<ShellingCertificate>, MonotonizeError> {
    verify_shelling(c, cert).map_err(MonotonizeError::InvalidInput)?;
    let Some(i) = first_inversion(cert) else {
        return Ok(None);
    };
    let mut next = cert.clone();
    next.order.swap(i, i + 1);
    next.boundaries.swap(i, i + 1);
    verify_shelling(c, &next).map_err(MonotonizeError::SwapFailed)?;
    Ok(Some(next))
}

/// Repeated adjacent swaps until the order is monotonically descending; each
/// step removes exactly one failure and stays a valid shelling.
pub fn monotonize<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
) -> Result<ShellingCertificate, MonotonizeError> {
    let mut cur = cert.clone();
    verify_shelling(c, &cur).map_err(MonotonizeError::InvalidInput)?;
    while let Some(i) = first_inversion(&cur) {
        cur.order.swap(i, i + 1);
        cur.boundaries.swap(i, i + 1);
        verify_shelling(c, &cur).map_err(MonotonizeError::SwapFailed)?;
    }
    Ok(cur)
}

/// The per-degree orderings induced by a monotone certificate: degree `d` in
/// certificate order, then each lower degree as segments of the designated
/// boundary shellings (new elements of `bd(e)` in their shelling order, for
/// `e` running through the degree above), with the maximal elements of that
/// degree appended in certificate order.
pub(crate) fn induced_degree_orders<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
) -> (Vec<Vec<ElementId>>, HashMap<ElementId, ShellingCertificate>) {
    let d = c.order();
    let mut designated: HashMap<ElementId, ShellingCertificate> = HashMap::new();
    for (g, sub) in cert.order.iter().zip(&cert.boundaries) {
        designated.entry(*g).or_insert_with(|| sub.clone());
    }
    let mut orders: Vec<Vec<ElementId>> = vec![Vec::new(); d + 1];
    orders[d] = cert.order.iter().filter(|e| e.degree == d).copied().collect();
    for v in (0..d).rev() {
        let mut seen: BTreeSet<ElementId> = BTreeSet::new();
        let mut ord = Vec::new();
        let upper = orders[v + 1].clone();
        for e in upper {
            let sc = designated.get(&e).cloned().unwrap_or_else(ShellingCertificate::empty);
            for (f, fsub) in sc.order.iter().zip(&sc.boundaries) {
                if seen.insert(*f) {
                    ord.push(*f);
                    designated.entry(*f).or_insert_with(|| fsub.clone());
                }
            }
        }
        for g in cert.order.iter().filter(|e| e.degree == v) {
            if seen.insert(*g) {
                ord.push(*g);
            }
        }
        orders[v] = ord;
    }
    (orders, designated)
}

/// A shelling certificate for the `i`-skeleton, built from a valid monotone
/// certificate by the iterated segment construction. Sub-shellings are reused
/// from the input when their prefixes still match, and re-derived by the
/// memoized search otherwise.
pub fn skeleton_shelling<R: Ring>(
    c: &ChainComplex<R>,
    cert: &ShellingCertificate,
    i: usize,
    budget: u64,
) -> Result<ShellingCertificate, SkeletonShellingError> {
    verify_shelling(c, cert).map_err(SkeletonShellingError::InvalidInput)?;
    if !failures(cert).is_empty() {
        return Err(SkeletonShellingError::NotMonotone);
    }
    let d = c.order();
    if i > d {
        return Err(SkeletonShellingError::IndexOutOfRange { index: i, order: d });
    }
    if i == d {
        return Ok(cert.clone());
    }
    let (orders, designated) = induced_degree_orders(c, cert);
    let mut gamma_sk: Vec<ElementId> = orders[i].clone();
    gamma_sk.extend(cert.order.iter().filter(|e| e.degree < i).copied());

    let mut ctx = SearchCtx::new(c, budget);
    let mut union: BTreeSet<ElementId> = BTreeSet::new();
    let mut boundaries = Vec::with_capacity(gamma_sk.len());
    for (j, &e) in gamma_sk.iter().enumerate() {
        if e.degree == 0 {
            boundaries.push(ShellingCertificate::empty());
            union.extend(c.closure(e).iter().copied());
            continue;
        }
        let sub_prefix: BTreeSet<ElementId> = if j == 0 {
            BTreeSet::new()
        } else {
            c.closure(e)
                .intersection(&union)
                .copied()
                .filter(|f| f.degree == e.degree - 1)
                .collect()
        };
        let reuse = designated.get(&e).filter(|sc| {
            sub_prefix.len() <= sc.order.len()
                && sc.order[..sub_prefix.len()].iter().all(|f| sub_prefix.contains(f))
        });
        let sub = match reuse {
            Some(sc) => sc.clone(),
            None => ctx
                .search_set(&c.boundary_set(e), &sub_prefix)
                .map_err(|_| SkeletonShellingError::Budget)?
                .ok_or_else(|| {
                    SkeletonShellingError::DerivationFailed(violation(
                        ShellingViolationKind::NoPrefixSubShelling,
                        j,
                        e.degree,
                        vec![e],
                        &[],
                    ))
                })?,
        };
        boundaries.push(sub);
        union.extend(c.closure(e).iter().copied());
    }
    let sk_cert = ShellingCertificate { order: gamma_sk, boundaries };
    let sk = c.skeleton(i).expect("level checked above");
    verify_shelling(&sk, &sk_cert).map_err(SkeletonShellingError::DerivationFailed)?;
    Ok(sk_cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ChainComplex;
    use crate::ring::Integers;
    use crate::testutil::*;

    fn search(c: &ChainComplex<Integers>) -> Option<ShellingCertificate> {
        search_shelling(c, crate::DEFAULT_SEARCH_BUDGET).unwrap()
    }

    #[test]
    fn one_edge_fan_is_shellable() {
        let c = one_edge_fan(4);
        let cert = search(&c).expect("shellable");
        verify_shelling(&c, &cert).unwrap();
        assert_eq!(cert.order.len(), 1);
        assert_eq!(cert.boundaries[0].order.len(), 4);
    }

    #[test]
    fn independent_edge_pair_is_shellable() {
        let c = independent_edge_pair();
        let cert = search(&c).expect("shellable");
        verify_shelling(&c, &cert).unwrap();
    }

    #[test]
    fn triangle_boundary_is_shellable() {
        let c = ChainComplex::from_simplicial(&[
            vec!["1".into(), "2".into()],
            vec!["2".into(), "3".into()],
            vec!["1".into(), "3".into()],
        ])
        .unwrap();
        let cert = search(&c).expect("shellable");
        verify_shelling(&c, &cert).unwrap();
    }

    #[test]
    fn strip_three_is_shellable() {
        let c = strip_three();
        let cert = search(&c).expect("shellable");
        verify_shelling(&c, &cert).unwrap();
        // the first element of a valid shelling carries the top degree
        assert_eq!(cert.order[0].degree, 2);
    }

    #[test]
    fn disjoint_edges_are_not_shellable() {
        let c = ChainComplex::from_simplicial(&[
            vec!["1".into(), "2".into()],
            vec!["3".into(), "4".into()],
        ])
        .unwrap();
        assert_eq!(search(&c), None);
    }

    #[test]
    fn disjoint_top_cells_violate_condition_one() {
        // two disjoint pinched disks
        let c = zc(
            &[4, 4, 2],
            vec![
                vec![
                    vec![(1, 1), (0, -1)],
                    vec![(0, 1), (1, -1)],
                    vec![(3, 1), (2, -1)],
                    vec![(2, 1), (3, -1)],
                ],
                vec![vec![(0, 1), (1, 1)], vec![(2, 1), (3, 1)]],
            ],
        );
        let pair = |a: usize, b: usize| {
            ShellingCertificate::trivial(vec![ElementId::new(0, a), ElementId::new(0, b)])
        };
        let cert = ShellingCertificate {
            order: vec![ElementId::new(2, 0), ElementId::new(2, 1)],
            boundaries: vec![
                ShellingCertificate {
                    order: vec![ElementId::new(1, 0), ElementId::new(1, 1)],
                    boundaries: vec![pair(0, 1), pair(0, 1)],
                },
                ShellingCertificate {
                    order: vec![ElementId::new(1, 2), ElementId::new(1, 3)],
                    boundaries: vec![pair(2, 3), pair(2, 3)],
                },
            ],
        };
        let err = verify_shelling(&c, &cert).unwrap_err();
        assert_eq!(err.kind, ShellingViolationKind::EmptyIntersection);
        assert_eq!(err.position, 1);
        assert_eq!(search(&c), None);
    }

    #[test]
    fn order_zero_every_order_is_a_shelling() {
        let c = zc(&[3], vec![]);
        let cert = ShellingCertificate::trivial(vec![
            ElementId::new(0, 2),
            ElementId::new(0, 0),
            ElementId::new(0, 1),
        ]);
        verify_shelling(&c, &cert).unwrap();
    }

    #[test]
    fn certificate_must_permute_maximal_elements() {
        let c = zc(&[3], vec![]);
        let cert = ShellingCertificate::trivial(vec![ElementId::new(0, 0)]);
        let err = verify_shelling(&c, &cert).unwrap_err();
        assert_eq!(err.kind, ShellingViolationKind::MalformedCertificate);
    }

    #[test]
    fn failure_pairs() {
        let mk = |degs: &[usize]| ShellingCertificate {
            order: degs.iter().enumerate().map(|(i, &d)| ElementId::new(d, i)).collect(),
            boundaries: vec![ShellingCertificate::empty(); degs.len()],
        };
        assert!(failures(&mk(&[2, 2, 1])).is_empty());
        assert_eq!(failures(&mk(&[2, 1, 2])), vec![(2, 3)]);
        assert_eq!(failures(&mk(&[1, 2, 2])), vec![(1, 2), (1, 3)]);
    }

    /// Two triangles sharing an edge plus a pendant edge at a shared vertex:
    /// the pendant edge can legally sit between the triangles, giving a valid
    /// shelling with exactly one failure.
    fn two_triangles_pendant() -> ChainComplex<Integers> {
        ChainComplex::from_simplicial(&[
            vec!["1".into(), "2".into(), "3".into()],
            vec!["2".into(), "3".into(), "4".into()],
            vec!["2".into(), "5".into()],
        ])
        .unwrap()
    }

    #[test]
    fn monotonize_fixes_single_failure() {
        let c = two_triangles_pendant();
        let gamma = c.maximal_set();
        // build a valid cert with the pendant edge in the middle via brute
        // order: (triangle 123, edge 25, triangle 234)
        let t1 = c.find_label("{1,2,3}").unwrap();
        let t2 = c.find_label("{2,3,4}").unwrap();
        let pend = c.find_label("{2,5}").unwrap();
        assert!(gamma.contains(&pend));
        let mut ctx = SearchCtx::new(&c, crate::DEFAULT_SEARCH_BUDGET);
        // assemble by fixing the order and searching each boundary level
        let order = vec![t1, pend, t2];
        let mut union: BTreeSet<ElementId> = BTreeSet::new();
        let mut subs = Vec::new();
        for (j, &g) in order.iter().enumerate() {
            let sub_prefix: BTreeSet<ElementId> = if j == 0 {
                BTreeSet::new()
            } else {
                c.closure(g)
                    .intersection(&union)
                    .copied()
                    .filter(|e| e.degree == g.degree - 1)
                    .collect()
            };
            subs.push(ctx.search_set(&c.boundary_set(g), &sub_prefix).unwrap().unwrap());
            union.extend(c.closure(g).iter().copied());
        }
        let cert = ShellingCertificate { order, boundaries: subs };
        verify_shelling(&c, &cert).unwrap();
        assert_eq!(failures(&cert).len(), 1);

        let step = monotonize_once(&c, &cert).unwrap().expect("one swap needed");
        assert_eq!(failures(&step).len(), 0);
        verify_shelling(&c, &step).unwrap();
        let fixed = monotonize(&c, &cert).unwrap();
        assert_eq!(failures(&fixed).len(), 0);
        assert_eq!(monotonize_once(&c, &fixed).unwrap(), None);
    }

    #[test]
    fn monotonize_rejects_invalid_input() {
        let c = two_triangles_pendant();
        let bad = ShellingCertificate::trivial(vec![ElementId::new(0, 0)]);
        assert!(matches!(monotonize(&c, &bad), Err(MonotonizeError::InvalidInput(_))));
    }

    #[test]
    fn skeleton_shellings_verify() {
        for c in [strip_three(), pinched_disk(), four_cycle_disk(), two_triangles_pendant()] {
            let cert = search(&c).expect("shellable");
            let cert = monotonize(&c, &cert).unwrap();
            for i in 0..=c.order() {
                let sk_cert = skeleton_shelling(&c, &cert, i, crate::DEFAULT_SEARCH_BUDGET)
                    .expect("skeleton certificate");
                let sk = c.skeleton(i).unwrap();
                verify_shelling(&sk, &sk_cert).unwrap();
            }
        }
    }

    #[test]
    fn skeleton_of_triangle_keeps_edge_count() {
        let c = ChainComplex::from_simplicial(&[vec!["1".into(), "2".into(), "3".into()]]).unwrap();
        let cert = search(&c).unwrap();
        let sk1 = skeleton_shelling(&c, &cert, 1, crate::DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(sk1.order.len(), 3);
        assert!(sk1.order.iter().all(|e| e.degree == 1));
    }

    #[test]
    fn maximal_vertex_after_edge_is_fine_but_not_before() {
        // an edge plus an isolated vertex
        let c = ChainComplex::from_simplicial(&[
            vec!["1".into(), "2".into()],
            vec!["3".into()],
        ])
        .unwrap();
        let edge = c.find_label("{1,2}").unwrap();
        let v3 = c.find_label("{3}").unwrap();
        let sub = ShellingCertificate::trivial(vec![
            c.find_label("{1}").unwrap(),
            c.find_label("{2}").unwrap(),
        ]);
        let good = ShellingCertificate {
            order: vec![edge, v3],
            boundaries: vec![sub.clone(), ShellingCertificate::empty()],
        };
        verify_shelling(&c, &good).unwrap();

        let bad = ShellingCertificate {
            order: vec![v3, edge],
            boundaries: vec![ShellingCertificate::empty(), sub],
        };
        let err = verify_shelling(&c, &bad).unwrap_err();
        assert_eq!(err.kind, ShellingViolationKind::EmptyIntersection);
    }
}

//! Regular orders, totally regular complexes and cone assignments.
//!
//! A regular order is a monotone-descending shelling of the maximal elements
//! together with per-degree orderings built from designated boundary
//! shellings, such that every covered maximal element is precritical
//! (condition 1) and every covered face inside each boundary shelling admits
//! a nonzero-factor linear relation (condition 2). Certificates carry all
//! chosen orders and witnesses so verification is pure replay.
//!
//! A cone distinguishes subsets `S_v` whose members keep private support
//! coordinates while everything outside `S_v` can be filled in by a boundary
//! with unit coefficient. At the top degree the private-support reading is
//! replaced by kernel triviality of the top boundary map, which is the
//! property the acyclicity proof actually consumes; the support reading
//! stays in force below the top degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::classify::RelationWitness;
use crate::complex::{Chain, ChainComplex, ElementId};
use crate::homology;
use crate::linalg::{self, SparseMatrix};
use crate::ring::Ring;
use crate::shelling::{
    BudgetExhausted, SearchCtx, ShellingCertificate, failures, verify_shelling,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularityCondition {
    Structure,
    Shelling,
    Monotonicity,
    DegreeOrder,
    BoundaryOrder,
    /// Condition 1: a covered maximal element must be precritical.
    Covering,
    /// Condition 2: a covered face inside a boundary shelling must satisfy a
    /// nonzero-factor relation.
    FaceRelation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityViolation {
    pub condition: RegularityCondition,
    pub element: Option<ElementId>,
    pub detail: String,
}

impl std::fmt::Display for RegularityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.condition)?;
        if let Some(e) = self.element {
            write!(f, " at {e}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

fn viol(
    condition: RegularityCondition,
    element: Option<ElementId>,
    detail: impl Into<String>,
) -> RegularityViolation {
    RegularityViolation { condition, element, detail: detail.into() }
}

/// A full regular-order certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularOrderCertificate<R: Ring> {
    /// Monotone-descending shelling of the maximal elements.
    pub shelling: ShellingCertificate,
    /// Ordering of each degree basis, index = degree.
    pub degree_orders: Vec<Vec<ElementId>>,
    /// Designated boundary shelling per element of degree ≥ 1.
    pub boundary_orders: Vec<(ElementId, ShellingCertificate)>,
    /// Condition-1 witnesses for covered maximal elements.
    pub cover_witnesses: Vec<(ElementId, RelationWitness<R>)>,
    /// Condition-2 witnesses, keyed by (owner, face).
    pub face_witnesses: Vec<(ElementId, ElementId, RelationWitness<R>)>,
}

impl<R: Ring> RegularOrderCertificate<R> {
    pub fn gamma_order(&self) -> &[ElementId] {
        &self.shelling.order
    }

    fn boundary_order_map(&self) -> BTreeMap<ElementId, &ShellingCertificate> {
        self.boundary_orders.iter().map(|(e, c)| (*e, c)).collect()
    }
}

fn prefix_columns<R: Ring>(c: &ChainComplex<R>, elements: &[ElementId]) -> SparseMatrix<R> {
    let degree = elements.first().map_or(0, |e| e.degree);
    if degree == 0 {
        return SparseMatrix::zero(c.ring().clone(), 0, elements.len());
    }
    c.boundary_matrix(degree)
        .select_columns(&elements.iter().map(|e| e.index).collect::<Vec<_>>())
}

/// Precritical test of `target` against the boundaries of `prefix`; returns a
/// denominator-cleared witness when the boundary lies in the rational span.
fn precritical_witness<R: Ring>(
    c: &ChainComplex<R>,
    prefix: &[ElementId],
    target: ElementId,
) -> Option<RelationWitness<R>> {
    let ring = c.ring();
    if target.degree == 0 {
        return Some(RelationWitness { factor: ring.one(), terms: Vec::new() });
    }
    let m = prefix_columns(c, prefix);
    let v = c.boundary_matrix(target.degree).column_vec(target.index);
    let (a, x) = linalg::rational_span_membership(&m, &v)?;
    let terms = prefix
        .iter()
        .zip(x)
        .filter(|(_, coeff)| !ring.is_zero(coeff))
        .map(|(e, coeff)| (*e, coeff))
        .collect();
    Some(RelationWitness { factor: a, terms })
}

fn check_witness<R: Ring>(
    c: &ChainComplex<R>,
    witness: &RelationWitness<R>,
    target: ElementId,
    allowed: &BTreeSet<ElementId>,
) -> Result<(), String> {
    if c.ring().is_zero(&witness.factor) {
        return Err("witness factor is zero".to_string());
    }
    for (e, _) in &witness.terms {
        if !allowed.contains(e) {
            return Err(format!("witness references {e}, which does not precede the target"));
        }
    }
    if !witness.verify(c, target) {
        return Err("witness relation does not hold".to_string());
    }
    Ok(())
}

/// Recomputes the per-degree orderings determined by a gamma order and the
/// designated boundary shellings: top degree in gamma order, each lower
/// degree as first-appearance segments, maximal elements appended last.
fn recompute_degree_orders<R: Ring>(
    c: &ChainComplex<R>,
    gamma: &[ElementId],
    boundary_orders: &BTreeMap<ElementId, &ShellingCertificate>,
) -> Result<Vec<Vec<ElementId>>, RegularityViolation> {
    let d = c.order();
    let mut orders: Vec<Vec<ElementId>> = vec![Vec::new(); d + 1];
    orders[d] = gamma.iter().filter(|e| e.degree == d).copied().collect();
    for v in (0..d).rev() {
        let mut seen = BTreeSet::new();
        let mut ord = Vec::new();
        for e in orders[v + 1].clone() {
            let sc = boundary_orders.get(&e).ok_or_else(|| {
                viol(RegularityCondition::BoundaryOrder, Some(e), "missing boundary order")
            })?;
            for f in &sc.order {
                if seen.insert(*f) {
                    ord.push(*f);
                }
            }
        }
        for g in gamma.iter().filter(|e| e.degree == v) {
            if seen.insert(*g) {
                ord.push(*g);
            }
        }
        if ord.len() != c.degree_size(v) {
            return Err(viol(
                RegularityCondition::DegreeOrder,
                None,
                format!("degree-{v} ordering covers {} of {} elements", ord.len(), c.degree_size(v)),
            ));
        }
        orders[v] = ord;
    }
    Ok(orders)
}

/// Verifies a regular-order certificate: embedded shelling, monotonicity,
/// degree orderings, designated boundary shellings with their prefixes, and
/// both witness families, all by exact replay.
pub fn verify_regular<R: Ring>(
    c: &ChainComplex<R>,
    cert: &RegularOrderCertificate<R>,
) -> Result<(), RegularityViolation> {
    verify_shelling(c, &cert.shelling)
        .map_err(|v| viol(RegularityCondition::Shelling, None, v.to_string()))?;
    if !failures(&cert.shelling).is_empty() {
        return Err(viol(
            RegularityCondition::Monotonicity,
            None,
            "the gamma order has failures",
        ));
    }
    let d = c.order();
    let map = cert.boundary_order_map();
    for e in c.elements() {
        if e.degree >= 1 && !map.contains_key(&e) {
            return Err(viol(RegularityCondition::BoundaryOrder, Some(e), "missing boundary order"));
        }
    }
    let orders = recompute_degree_orders(c, &cert.shelling.order, &map)?;
    if orders != cert.degree_orders {
        return Err(viol(
            RegularityCondition::DegreeOrder,
            None,
            "stored degree orderings do not match the segment construction",
        ));
    }
    let gamma = c.maximal_set();
    let cover: BTreeMap<ElementId, &RelationWitness<R>> =
        cert.cover_witnesses.iter().map(|(e, w)| (*e, w)).collect();
    let face: BTreeMap<(ElementId, ElementId), &RelationWitness<R>> =
        cert.face_witnesses.iter().map(|(e, f, w)| ((*e, *f), w)).collect();

    for v in (1..=d).rev() {
        let ord = &cert.degree_orders[v];
        let mut closure_union: BTreeSet<ElementId> = BTreeSet::new();
        for &e in ord {
            let sc = map[&e];
            let bset = c.boundary_set(e);
            let prefix: BTreeSet<ElementId> = c
                .closure(e)
                .intersection(&closure_union)
                .copied()
                .filter(|f| f.degree == v - 1)
                .collect();
            crate::shelling::verify_set_shelling(c, sc, &bset, &prefix).map_err(|err| {
                viol(
                    RegularityCondition::BoundaryOrder,
                    Some(e),
                    format!("boundary shelling invalid: {err}"),
                )
            })?;
            // condition 2 along this boundary shelling
            if v >= 2 {
                let mut bd_union: BTreeSet<ElementId> = BTreeSet::new();
                for (j, &f) in sc.order.iter().enumerate() {
                    let fb = c.boundary_set(f);
                    if !fb.is_empty() && fb.is_subset(&bd_union) {
                        let w = face.get(&(e, f)).ok_or_else(|| {
                            viol(
                                RegularityCondition::FaceRelation,
                                Some(f),
                                format!("covered face of {e} has no witness"),
                            )
                        })?;
                        let allowed: BTreeSet<ElementId> =
                            sc.order[..j].iter().copied().collect();
                        check_witness(c, w, f, &allowed).map_err(|msg| {
                            viol(RegularityCondition::FaceRelation, Some(f), msg)
                        })?;
                    }
                    bd_union.extend(fb);
                }
            }
            closure_union.extend(c.closure(e).iter().copied());
        }
    }

    // condition 1 per degree; degree 0 is vacuous since its boundaries vanish
    for v in (1..=d).rev() {
        let ord = &cert.degree_orders[v];
        let mut bd_union: BTreeSet<ElementId> = BTreeSet::new();
        for (l, &e) in ord.iter().enumerate() {
            let bset = c.boundary_set(e);
            if gamma.contains(&e) && l > 0 && bset.is_subset(&bd_union) {
                let w = cover.get(&e).ok_or_else(|| {
                    viol(
                        RegularityCondition::Covering,
                        Some(e),
                        "covered maximal element has no precriticality witness",
                    )
                })?;
                let allowed: BTreeSet<ElementId> = ord[..l].iter().copied().collect();
                check_witness(c, w, e, &allowed)
                    .map_err(|msg| viol(RegularityCondition::Covering, Some(e), msg))?;
            }
            bd_union.extend(bset);
        }
    }
    Ok(())
}

struct RegularSearch<'a, R: Ring> {
    c: &'a ChainComplex<R>,
    ctx: SearchCtx<'a, R>,
    /// Valid boundary orders with their condition-2 witnesses, per
    /// (element, required prefix).
    slot_memo: HashMap<(ElementId, Vec<ElementId>), SlotCandidates<R>>,
    obstruction: Option<RegularityViolation>,
}

type SlotCandidates<R> = Vec<(Vec<ElementId>, Vec<(ElementId, RelationWitness<R>)>)>;

impl<'a, R: Ring> RegularSearch<'a, R> {
    fn new(c: &'a ChainComplex<R>, budget: u64) -> Self {
        RegularSearch {
            c,
            ctx: SearchCtx::new(c, budget),
            slot_memo: HashMap::new(),
            obstruction: None,
        }
    }

    fn note(&mut self, v: RegularityViolation) {
        if self.obstruction.is_none() {
            self.obstruction = Some(v);
        }
    }

    /// All orders of `bd(e)` that start with `prefix`, are valid shelling
    /// orders, and satisfy condition 2 — each with its witnesses.
    fn slot_candidates(
        &mut self,
        e: ElementId,
        prefix: &BTreeSet<ElementId>,
    ) -> Result<SlotCandidates<R>, BudgetExhausted> {
        let key = (e, prefix.iter().copied().collect::<Vec<_>>());
        if let Some(hit) = self.slot_memo.get(&key) {
            return Ok(hit.clone());
        }
        let set = self.c.boundary_set(e);
        let mut out: SlotCandidates<R> = Vec::new();
        if set.iter().all(|f| f.degree == 0) {
            let mut order: Vec<ElementId> = prefix.iter().copied().collect();
            order.extend(set.difference(prefix).copied());
            out.push((order, Vec::new()));
        } else {
            let mut placed = Vec::new();
            let mut witnesses = Vec::new();
            self.enumerate_orders(&set, prefix, &mut placed, &mut witnesses, &mut out)?;
        }
        if out.is_empty() {
            self.note(viol(
                RegularityCondition::FaceRelation,
                Some(e),
                "no boundary shelling of this element satisfies the face-relation condition",
            ));
        }
        self.slot_memo.insert(key, out.clone());
        Ok(out)
    }

    fn enumerate_orders(
        &mut self,
        set: &BTreeSet<ElementId>,
        prefix: &BTreeSet<ElementId>,
        placed: &mut Vec<ElementId>,
        witnesses: &mut Vec<(ElementId, RelationWitness<R>)>,
        out: &mut SlotCandidates<R>,
    ) -> Result<(), BudgetExhausted> {
        if placed.len() == set.len() {
            out.push((placed.clone(), witnesses.clone()));
            return Ok(());
        }
        let placed_set: BTreeSet<ElementId> = placed.iter().copied().collect();
        let pool: Vec<ElementId> = if placed.len() < prefix.len() {
            prefix.difference(&placed_set).copied().collect()
        } else {
            set.difference(&placed_set).copied().collect()
        };
        for f in pool {
            self.ctx.tick_budget()?;
            let j = placed.len();
            let s = f.degree;
            let mut sub_prefix = BTreeSet::new();
            if j > 0 {
                let union: BTreeSet<ElementId> = placed
                    .iter()
                    .flat_map(|p| self.c.closure(*p).iter().copied())
                    .collect();
                let inter: BTreeSet<ElementId> =
                    self.c.closure(f).intersection(&union).copied().collect();
                if crate::shelling::set_is_pure_of_order(self.c, &inter, s - 1).is_err() {
                    continue;
                }
                sub_prefix = inter.into_iter().filter(|x| x.degree + 1 == s).collect();
            }
            let fbd = self.c.boundary_set(f);
            if fbd.is_empty() || self.ctx.search_set(&fbd, &sub_prefix)?.is_none() {
                continue;
            }
            // condition 2 when the face's boundary is covered by earlier ones
            let fb = self.c.boundary_set(f);
            let bd_union: BTreeSet<ElementId> =
                placed.iter().flat_map(|p| self.c.boundary_set(*p).into_iter()).collect();
            let mut pushed_witness = false;
            if !fb.is_empty() && fb.is_subset(&bd_union) {
                match precritical_witness(self.c, placed, f) {
                    Some(w) => {
                        witnesses.push((f, w));
                        pushed_witness = true;
                    }
                    None => continue,
                }
            }
            placed.push(f);
            self.enumerate_orders(set, prefix, placed, witnesses, out)?;
            placed.pop();
            if pushed_witness {
                witnesses.pop();
            }
        }
        Ok(())
    }

    /// Builds the full recursive shelling certificate for a chosen order of
    /// `bd(e)`; existence of every sub-level was already checked.
    fn assemble_boundary_cert(
        &mut self,
        order: &[ElementId],
    ) -> Result<ShellingCertificate, BudgetExhausted> {
        let mut boundaries = Vec::with_capacity(order.len());
        let mut union: BTreeSet<ElementId> = BTreeSet::new();
        for (j, &f) in order.iter().enumerate() {
            if f.degree == 0 {
                boundaries.push(ShellingCertificate::empty());
            } else {
                let sub_prefix: BTreeSet<ElementId> = if j == 0 {
                    BTreeSet::new()
                } else {
                    self.c
                        .closure(f)
                        .intersection(&union)
                        .copied()
                        .filter(|x| x.degree + 1 == f.degree)
                        .collect()
                };
                let sub = self
                    .ctx
                    .search_set(&self.c.boundary_set(f), &sub_prefix)?
                    .expect("sub-shelling existence was checked during enumeration");
                boundaries.push(sub);
            }
            union.extend(self.c.closure(f).iter().copied());
        }
        Ok(ShellingCertificate { order: order.to_vec(), boundaries })
    }

    /// Condition-1 screening and witnesses along one degree ordering.
    fn cover_witnesses_for(
        &mut self,
        gamma: &BTreeSet<ElementId>,
        ord: &[ElementId],
    ) -> Option<Vec<(ElementId, RelationWitness<R>)>> {
        let mut out = Vec::new();
        let mut bd_union: BTreeSet<ElementId> = BTreeSet::new();
        for (l, &e) in ord.iter().enumerate() {
            let bset = self.c.boundary_set(e);
            if gamma.contains(&e) && l > 0 && e.degree >= 1 && bset.is_subset(&bd_union) {
                match precritical_witness(self.c, &ord[..l], e) {
                    Some(w) => out.push((e, w)),
                    None => {
                        self.note(viol(
                            RegularityCondition::Covering,
                            Some(e),
                            "covered maximal element is not precritical",
                        ));
                        return None;
                    }
                }
            }
            bd_union.extend(bset);
        }
        Some(out)
    }

    /// Backtracks over boundary-order choices for the slots of one degree,
    /// then descends a degree. Returns the assembled pieces bottom-up.
    fn descend(
        &mut self,
        gamma: &[ElementId],
        gamma_set: &BTreeSet<ElementId>,
        v: usize,
        ord_v: Vec<ElementId>,
        acc_orders: &mut Vec<Vec<ElementId>>,
        acc_bounds: &mut BTreeMap<ElementId, ShellingCertificate>,
        acc_faces: &mut Vec<(ElementId, ElementId, RelationWitness<R>)>,
        acc_cover: &mut Vec<(ElementId, RelationWitness<R>)>,
    ) -> Result<bool, BudgetExhausted> {
        acc_orders[v] = ord_v.clone();
        if v == 0 {
            return Ok(true);
        }
        self.choose_slots(gamma, gamma_set, v, &ord_v, 0, acc_orders, acc_bounds, acc_faces, acc_cover)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_slots(
        &mut self,
        gamma: &[ElementId],
        gamma_set: &BTreeSet<ElementId>,
        v: usize,
        ord_v: &[ElementId],
        slot: usize,
        acc_orders: &mut Vec<Vec<ElementId>>,
        acc_bounds: &mut BTreeMap<ElementId, ShellingCertificate>,
        acc_faces: &mut Vec<(ElementId, ElementId, RelationWitness<R>)>,
        acc_cover: &mut Vec<(ElementId, RelationWitness<R>)>,
    ) -> Result<bool, BudgetExhausted> {
        if slot == ord_v.len() {
            // all boundary orders at this degree chosen: derive the ordering
            // one degree down and check condition 1 there
            let mut seen = BTreeSet::new();
            let mut next_ord = Vec::new();
            for e in ord_v {
                for f in &acc_bounds[e].order {
                    if seen.insert(*f) {
                        next_ord.push(*f);
                    }
                }
            }
            for g in gamma.iter().filter(|e| e.degree == v - 1) {
                if seen.insert(*g) {
                    next_ord.push(*g);
                }
            }
            let cover = if v - 1 >= 1 {
                match self.cover_witnesses_for(gamma_set, &next_ord) {
                    Some(w) => w,
                    None => return Ok(false),
                }
            } else {
                Vec::new()
            };
            let before = acc_cover.len();
            acc_cover.extend(cover);
            let ok = self.descend(
                gamma, gamma_set, v - 1, next_ord, acc_orders, acc_bounds, acc_faces, acc_cover,
            )?;
            if !ok {
                acc_cover.truncate(before);
            }
            return Ok(ok);
        }
        let e = ord_v[slot];
        let prefix: BTreeSet<ElementId> = {
            let union: BTreeSet<ElementId> = ord_v[..slot]
                .iter()
                .flat_map(|p| self.c.closure(*p).iter().copied())
                .collect();
            self.c
                .closure(e)
                .intersection(&union)
                .copied()
                .filter(|f| f.degree + 1 == v)
                .collect()
        };
        let candidates = self.slot_candidates(e, &prefix)?;
        for (order, face_witnesses) in candidates {
            let cert = self.assemble_boundary_cert(&order)?;
            acc_bounds.insert(e, cert);
            let before = acc_faces.len();
            acc_faces.extend(face_witnesses.into_iter().map(|(f, w)| (e, f, w)));
            let ok = self.choose_slots(
                gamma,
                gamma_set,
                v,
                ord_v,
                slot + 1,
                acc_orders,
                acc_bounds,
                acc_faces,
                acc_cover,
            )?;
            if ok {
                return Ok(true);
            }
            acc_faces.truncate(before);
            acc_bounds.remove(&e);
        }
        Ok(false)
    }

    fn complete(
        &mut self,
        gamma: &[ElementId],
    ) -> Result<Option<RegularOrderCertificate<R>>, BudgetExhausted> {
        let d = self.c.order();
        let gamma_set: BTreeSet<ElementId> = gamma.iter().copied().collect();
        let ord_d: Vec<ElementId> = gamma.iter().filter(|e| e.degree == d).copied().collect();
        let gamma_lookup = gamma_set.clone();
        let mut acc_cover = match self.cover_witnesses_for(&gamma_lookup, &ord_d) {
            Some(w) => w,
            None => return Ok(None),
        };
        let mut acc_orders: Vec<Vec<ElementId>> = vec![Vec::new(); d + 1];
        let mut acc_bounds: BTreeMap<ElementId, ShellingCertificate> = BTreeMap::new();
        let mut acc_faces = Vec::new();
        let ok = self.descend(
            gamma,
            &gamma_set,
            d,
            ord_d,
            &mut acc_orders,
            &mut acc_bounds,
            &mut acc_faces,
            &mut acc_cover,
        )?;
        if !ok {
            return Ok(None);
        }
        // embedded shelling: reuse the chosen boundary certificates per
        // maximal element (the prefixes coincide with the gamma context)
        let mut gamma_bounds = Vec::with_capacity(gamma.len());
        let mut union: BTreeSet<ElementId> = BTreeSet::new();
        for (j, &g) in gamma.iter().enumerate() {
            if g.degree == 0 {
                gamma_bounds.push(ShellingCertificate::empty());
            } else {
                let sub_prefix: BTreeSet<ElementId> = if j == 0 {
                    BTreeSet::new()
                } else {
                    self.c
                        .closure(g)
                        .intersection(&union)
                        .copied()
                        .filter(|f| f.degree + 1 == g.degree)
                        .collect()
                };
                let sub = self
                    .ctx
                    .search_set(&self.c.boundary_set(g), &sub_prefix)?
                    .expect("gamma order came from the shelling enumeration");
                gamma_bounds.push(sub);
            }
            union.extend(self.c.closure(g).iter().copied());
        }
        let cert = RegularOrderCertificate {
            shelling: ShellingCertificate { order: gamma.to_vec(), boundaries: gamma_bounds },
            degree_orders: acc_orders,
            boundary_orders: acc_bounds.into_iter().collect(),
            cover_witnesses: acc_cover,
            face_witnesses: acc_faces,
        };
        Ok(Some(cert))
    }
}

/// Searches for a regular order: monotone shelling orders of the maximal
/// elements are enumerated exhaustively, and each is completed with boundary
/// shellings and witnesses if possible. `Ok(None)` is proven absence.
pub fn search_regular<R: Ring>(
    c: &ChainComplex<R>,
    budget: u64,
) -> Result<Option<RegularOrderCertificate<R>>, BudgetExhausted> {
    let mut search = RegularSearch::new(c, budget);
    let gamma = c.maximal_set();
    let orders = search.ctx.enumerate_monotone_orders(&gamma)?;
    for gamma_order in orders {
        if let Some(cert) = search.complete(&gamma_order)? {
            debug_assert!(verify_regular(c, &cert).is_ok());
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Attempts to complete one specific gamma order to a regular certificate;
/// on failure reports the first definitive obstruction.
pub fn search_regular_with_order<R: Ring>(
    c: &ChainComplex<R>,
    gamma_order: &[ElementId],
    budget: u64,
) -> Result<Result<RegularOrderCertificate<R>, RegularityViolation>, BudgetExhausted> {
    let gamma = c.maximal_set();
    let given: BTreeSet<ElementId> = gamma_order.iter().copied().collect();
    if given != gamma || gamma_order.len() != gamma.len() {
        return Ok(Err(viol(
            RegularityCondition::Structure,
            None,
            "order is not a permutation of the maximal elements",
        )));
    }
    let mut search = RegularSearch::new(c, budget);
    let monotone = search.ctx.enumerate_monotone_orders(&gamma)?;
    if !monotone.iter().any(|o| o == gamma_order) {
        let detail = if gamma_order.windows(2).any(|w| w[0].degree < w[1].degree) {
            viol(RegularityCondition::Monotonicity, None, "order is not monotonically descending")
        } else {
            viol(RegularityCondition::Shelling, None, "order is not a shelling")
        };
        return Ok(Err(detail));
    }
    match search.complete(gamma_order)? {
        Some(cert) => {
            debug_assert!(verify_regular(c, &cert).is_ok());
            Ok(Ok(cert))
        }
        None => Ok(Err(search.obstruction.take().unwrap_or_else(|| {
            viol(
                RegularityCondition::FaceRelation,
                None,
                "no completion of this order satisfies the regularity conditions",
            )
        }))),
    }
}

/// True iff the certificate is valid and every generated subcomplex is
/// acyclic.
pub fn is_totally_regular<R: Ring>(
    c: &ChainComplex<R>,
    cert: &RegularOrderCertificate<R>,
) -> Result<bool, RegularityViolation> {
    verify_regular(c, cert)?;
    Ok(all_generated_subcomplexes_acyclic(c))
}

/// The acyclicity sweep over every generated subcomplex, shared by the
/// totally-regular check and the reports.
pub fn all_generated_subcomplexes_acyclic<R: Ring>(c: &ChainComplex<R>) -> bool {
    c.elements().all(|e| {
        let sub = c.generated_subcomplex(e);
        homology::is_acyclic(&c.restrict(&sub))
    })
}

/// Precritical counts per degree among the maximal elements, read along the
/// certificate's degree orderings: the homology ranks of a totally regular
/// complex.
pub fn precritical_counts<R: Ring>(
    c: &ChainComplex<R>,
    cert: &RegularOrderCertificate<R>,
) -> Vec<usize> {
    let gamma = c.maximal_set();
    cert.degree_orders
        .iter()
        .map(|ord| {
            ord.iter()
                .enumerate()
                .filter(|(l, e)| {
                    *l > 0
                        && gamma.contains(e)
                        && precritical_witness(c, &ord[..*l], **e).is_some()
                })
                .count()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Cones
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeCondition {
    Structure,
    /// Condition 1(a): private support below the top degree; kernel
    /// triviality of the top boundary map at the top degree.
    SupportIndependence,
    /// Condition 1(b): unit fill-in witnesses outside the distinguished sets.
    FillIn,
    /// Condition 2: no chain with a single-element boundary support.
    MinBoundarySupport,
    /// Condition 3: unit fill-in onto the base vertex.
    BaseVertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeViolation {
    pub condition: ConeCondition,
    pub element: Option<ElementId>,
    pub detail: String,
}

impl std::fmt::Display for ConeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.condition)?;
        if let Some(e) = self.element {
            write!(f, " at {e}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

fn cone_viol(
    condition: ConeCondition,
    element: Option<ElementId>,
    detail: impl Into<String>,
) -> ConeViolation {
    ConeViolation { condition, element, detail: detail.into() }
}

/// Distinguished subsets per degree plus unit fill-in witness chains for
/// every element outside them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeAssignment<R: Ring> {
    /// `sets[v]` is `S_v`; `sets[0]` is a singleton and `sets[d]` the whole
    /// top basis.
    pub sets: Vec<Vec<ElementId>>,
    /// Witness chain per element not in its degree's set.
    pub witnesses: Vec<(ElementId, Chain<R>)>,
}

impl<R: Ring> ConeAssignment<R> {
    fn set_of(&self, degree: usize) -> BTreeSet<ElementId> {
        self.sets.get(degree).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    fn witness_for(&self, e: ElementId) -> Option<&Chain<R>> {
        self.witnesses.iter().find(|(f, _)| *f == e).map(|(_, c)| c)
    }
}

/// Verifies every cone condition by exact replay.
pub fn verify_cone<R: Ring>(
    c: &ChainComplex<R>,
    assign: &ConeAssignment<R>,
) -> Result<(), ConeViolation> {
    let ring = c.ring();
    let d = c.order();
    if assign.sets.len() != d + 1 {
        return Err(cone_viol(
            ConeCondition::Structure,
            None,
            format!("expected {} distinguished sets, found {}", d + 1, assign.sets.len()),
        ));
    }
    let gamma = c.maximal_set();
    for v in 0..=d {
        let set = assign.set_of(v);
        if v >= 1 && set.is_empty() {
            return Err(cone_viol(ConeCondition::Structure, None, format!("S_{v} is empty")));
        }
        for e in &set {
            if e.degree != v || e.index >= c.degree_size(v) {
                return Err(cone_viol(
                    ConeCondition::Structure,
                    Some(*e),
                    format!("not a degree-{v} basis element"),
                ));
            }
        }
        for g in gamma.iter().filter(|g| g.degree == v) {
            if !set.contains(g) {
                return Err(cone_viol(
                    ConeCondition::Structure,
                    Some(*g),
                    format!("maximal element missing from S_{v}"),
                ));
            }
        }
    }
    let s0 = assign.set_of(0);
    if s0.len() != 1 {
        return Err(cone_viol(
            ConeCondition::Structure,
            None,
            format!("S_0 must be a single vertex, found {}", s0.len()),
        ));
    }
    if d == 0 {
        // the top set is all of the degree-0 basis, so the complex must have
        // exactly one vertex
        return if c.degree_size(0) == 1 {
            Ok(())
        } else {
            Err(cone_viol(
                ConeCondition::Structure,
                None,
                "an order-0 cone has exactly one basis element",
            ))
        };
    }
    let sd = assign.set_of(d);
    if sd.len() != c.degree_size(d) {
        return Err(cone_viol(
            ConeCondition::Structure,
            None,
            format!("S_{d} must be the whole top basis"),
        ));
    }
    // top degree: the boundary map must be injective
    if linalg::rank(c.boundary_matrix(d)) != c.degree_size(d) {
        return Err(cone_viol(
            ConeCondition::SupportIndependence,
            None,
            format!("the degree-{d} boundary map has a nonzero kernel"),
        ));
    }
    // condition 1(a) below the top degree: private support per member
    for v in 1..d {
        let set = assign.set_of(v);
        for &e in &set {
            let mut others: BTreeSet<ElementId> = BTreeSet::new();
            for &f in set.iter().filter(|f| **f != e) {
                others.extend(c.boundary_set(f));
            }
            let own = c.boundary_set(e);
            if own.is_subset(&others) {
                return Err(cone_viol(
                    ConeCondition::SupportIndependence,
                    Some(e),
                    "boundary support is covered by the other distinguished members",
                ));
            }
        }
    }
    // condition 1(b): unit fill-in for everything outside S_v, 1 ≤ v < d
    for v in 1..d {
        let set = assign.set_of(v);
        for e in c.elements_of_degree(v) {
            if set.contains(&e) {
                continue;
            }
            let tau = assign.witness_for(e).ok_or_else(|| {
                cone_viol(ConeCondition::FillIn, Some(e), "missing witness chain")
            })?;
            if tau.degree != v + 1 {
                return Err(cone_viol(
                    ConeCondition::FillIn,
                    Some(e),
                    format!("witness must live in degree {}", v + 1),
                ));
            }
            let boundary = c.apply_boundary(tau);
            let coeff = boundary.coefficient(ring, e);
            if !ring.is_unit(&coeff) {
                return Err(cone_viol(
                    ConeCondition::FillIn,
                    Some(e),
                    "witness boundary does not hit the element with a unit coefficient",
                ));
            }
            for (f, _) in boundary.terms() {
                if *f != e && !set.contains(f) {
                    return Err(cone_viol(
                        ConeCondition::FillIn,
                        Some(e),
                        format!("witness boundary leaks outside S_{v} at {f}"),
                    ));
                }
            }
        }
    }
    // condition 2
    if !homology::min_boundary_support(c).at_least_two() {
        return Err(cone_viol(
            ConeCondition::MinBoundarySupport,
            None,
            "some degree-1 chain has a single-element boundary support",
        ));
    }
    // condition 3
    let base = *s0.iter().next().unwrap();
    for e in c.elements_of_degree(0) {
        if e == base {
            continue;
        }
        let tau = assign
            .witness_for(e)
            .ok_or_else(|| cone_viol(ConeCondition::BaseVertex, Some(e), "missing witness chain"))?;
        if tau.degree != 1 {
            return Err(cone_viol(ConeCondition::BaseVertex, Some(e), "witness must live in degree 1"));
        }
        let boundary = c.apply_boundary(tau);
        let coeff = boundary.coefficient(ring, e);
        if !ring.is_unit(&coeff) {
            return Err(cone_viol(
                ConeCondition::BaseVertex,
                Some(e),
                "witness boundary does not hit the vertex with a unit coefficient",
            ));
        }
        let c0 = boundary.coefficient(ring, base);
        if ring.is_zero(&c0) {
            return Err(cone_viol(
                ConeCondition::BaseVertex,
                Some(e),
                "witness boundary misses the base vertex",
            ));
        }
        for (f, _) in boundary.terms() {
            if *f != e && *f != base {
                return Err(cone_viol(
                    ConeCondition::BaseVertex,
                    Some(e),
                    format!("witness boundary leaks outside the base pair at {f}"),
                ));
            }
        }
    }
    Ok(())
}

/// Exhaustive search for a cone assignment. The per-degree searches are
/// independent; the distinguished sets are enumerated smallest-first within
/// the forced inclusions. `Ok(None)` is proven absence.
pub fn search_cone<R: Ring>(
    c: &ChainComplex<R>,
    budget: u64,
) -> Result<Option<ConeAssignment<R>>, BudgetExhausted> {
    fn tick(b: &mut u64) -> Result<(), BudgetExhausted> {
        if *b == 0 {
            return Err(BudgetExhausted);
        }
        *b -= 1;
        Ok(())
    }
    let ring = c.ring().clone();
    let d = c.order();
    let mut budget = budget;
    if d == 0 {
        return Ok((c.degree_size(0) == 1).then(|| ConeAssignment {
            sets: vec![vec![ElementId::new(0, 0)]],
            witnesses: Vec::new(),
        }));
    }
    if !homology::min_boundary_support(c).at_least_two() {
        return Ok(None);
    }
    if linalg::rank(c.boundary_matrix(d)) != c.degree_size(d) {
        return Ok(None);
    }
    let gamma = c.maximal_set();
    let mut sets: Vec<Vec<ElementId>> = vec![Vec::new(); d + 1];
    let mut witnesses: Vec<(ElementId, Chain<R>)> = Vec::new();
    sets[d] = c.elements_of_degree(d).collect();

    for v in 1..d {
        let forced: Vec<ElementId> =
            gamma.iter().filter(|e| e.degree == v).copied().collect();
        let free: Vec<ElementId> =
            c.elements_of_degree(v).filter(|e| !forced.contains(e)).collect();
        if free.len() >= 24 {
            return Err(BudgetExhausted);
        }
        let mut masks: Vec<u64> = (0..(1u64 << free.len())).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut found = false;
        'mask: for mask in masks {
            tick(&mut budget)?;
            let mut set: Vec<ElementId> = forced.clone();
            set.extend((0..free.len()).filter(|i| mask & (1 << i) != 0).map(|i| free[i]));
            if set.is_empty() {
                continue;
            }
            // 1(a) first: cheap support screen
            let set_lookup: BTreeSet<ElementId> = set.iter().copied().collect();
            for &e in &set {
                let mut others: BTreeSet<ElementId> = BTreeSet::new();
                for &f in set_lookup.iter().filter(|f| **f != e) {
                    others.extend(c.boundary_set(f));
                }
                if c.boundary_set(e).is_subset(&others) {
                    continue 'mask;
                }
            }
            // 1(b): unit fill-in for the complement
            let kill: BTreeSet<usize> = set.iter().map(|e| e.index).collect();
            let mut local = Vec::new();
            for e in c.elements_of_degree(v) {
                if set_lookup.contains(&e) {
                    continue;
                }
                tick(&mut budget)?;
                let mut target = vec![ring.zero(); c.degree_size(v)];
                target[e.index] = ring.one();
                let sol =
                    linalg::solve_in_quotient(c.boundary_matrix(v + 1), &target, &kill, true)
                        .expect("target is standard basis outside the killed rows");
                match sol {
                    Some((_, x)) => {
                        let chain = Chain::from_terms(
                            &ring,
                            v + 1,
                            x.into_iter()
                                .enumerate()
                                .map(|(i, coeff)| (ElementId::new(v + 1, i), coeff)),
                        )
                        .expect("witness lives in one degree");
                        local.push((e, chain));
                    }
                    None => continue 'mask,
                }
            }
            sets[v] = set;
            witnesses.extend(local);
            found = true;
            break;
        }
        if !found {
            return Ok(None);
        }
    }

    // condition 3: pick a base vertex compatible with the forced inclusion
    let forced0: Vec<ElementId> = gamma.iter().filter(|e| e.degree == 0).copied().collect();
    if forced0.len() > 1 {
        return Ok(None);
    }
    let candidates: Vec<ElementId> = if forced0.len() == 1 {
        forced0
    } else {
        c.elements_of_degree(0).collect()
    };
    'base: for base in candidates {
        tick(&mut budget)?;
        let kill = BTreeSet::from([base.index]);
        let mut local = Vec::new();
        for e in c.elements_of_degree(0) {
            if e == base {
                continue;
            }
            tick(&mut budget)?;
            let mut target = vec![ring.zero(); c.degree_size(0)];
            target[e.index] = ring.one();
            let sol = linalg::solve_in_quotient(c.boundary_matrix(1), &target, &kill, true)
                .expect("target is standard basis outside the killed rows");
            match sol {
                Some((_, x)) => {
                    let chain = Chain::from_terms(
                        &ring,
                        1,
                        x.into_iter().enumerate().map(|(i, coeff)| (ElementId::new(1, i), coeff)),
                    )
                    .expect("witness lives in degree 1");
                    local.push((e, chain));
                }
                None => continue 'base,
            }
        }
        sets[0] = vec![base];
        witnesses.extend(local);
        let assignment = ConeAssignment { sets, witnesses };
        debug_assert!(verify_cone(c, &assignment).is_ok());
        return Ok(Some(assignment));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use crate::testutil::*;

    const BUDGET: u64 = crate::DEFAULT_SEARCH_BUDGET;

    fn regular(c: &ChainComplex<Integers>) -> Option<RegularOrderCertificate<Integers>> {
        search_regular(c, BUDGET).unwrap()
    }

    fn cone(c: &ChainComplex<Integers>) -> Option<ConeAssignment<Integers>> {
        search_cone(c, BUDGET).unwrap()
    }

    #[test]
    fn independent_edge_pair_is_not_regular() {
        assert!(regular(&independent_edge_pair()).is_none());
    }

    #[test]
    fn nested_top_pair_is_regular_only_swapped() {
        let c = nested_top_pair();
        let cert = regular(&c).expect("regular after swapping the top cells");
        verify_regular(&c, &cert).unwrap();
        assert_eq!(
            cert.gamma_order(),
            &[ElementId::new(2, 1), ElementId::new(2, 0)],
            "the nested boundary forces the smaller top cell first"
        );
        let natural = [ElementId::new(2, 0), ElementId::new(2, 1)];
        let res = search_regular_with_order(&c, &natural, BUDGET).unwrap();
        let violation = res.err().expect("natural order is not regular");
        assert_eq!(violation.condition, RegularityCondition::Covering);
        assert_eq!(violation.element, Some(ElementId::new(2, 1)));
    }

    #[test]
    fn overlapping_edges_are_not_regular() {
        assert!(regular(&overlapping_edges()).is_none());
    }

    #[test]
    fn tripled_edge_disk_is_regular() {
        let c = tripled_edge_disk();
        let cert = regular(&c).expect("regular");
        verify_regular(&c, &cert).unwrap();
        assert!(!is_totally_regular(&c, &cert).unwrap());
    }

    #[test]
    fn lollipop_regular_in_one_order_only() {
        let c = lollipop();
        let cert = regular(&c).expect("regular");
        verify_regular(&c, &cert).unwrap();
        // the reversed order pins the short edge under the long one
        let swapped = [ElementId::new(1, 1), ElementId::new(1, 0)];
        let res = search_regular_with_order(&c, &swapped, BUDGET).unwrap();
        assert!(res.is_err());
    }

    #[test]
    fn strip_three_is_totally_regular() {
        let c = strip_three();
        let cert = regular(&c).expect("regular");
        assert!(is_totally_regular(&c, &cert).unwrap());
    }

    #[test]
    fn pinched_disk_is_totally_regular() {
        let c = pinched_disk();
        let cert = regular(&c).expect("regular");
        assert!(is_totally_regular(&c, &cert).unwrap());
    }

    #[test]
    fn doubled_pinched_disk_is_totally_regular_but_not_acyclic() {
        let c = doubled_pinched_disk();
        let cert = regular(&c).expect("regular");
        assert!(is_totally_regular(&c, &cert).unwrap());
        assert!(!homology::is_acyclic(&c));
        assert_eq!(precritical_counts(&c, &cert), vec![0, 0, 1]);
    }

    #[test]
    fn nested_top_pair_is_not_totally_regular() {
        let c = nested_top_pair();
        let cert = regular(&c).unwrap();
        assert!(!is_totally_regular(&c, &cert).unwrap());
    }

    #[test]
    fn simplicial_complexes_are_totally_regular() {
        let c = ChainComplex::from_simplicial(&[
            vec!["1".into(), "2".into(), "3".into()],
            vec!["2".into(), "3".into(), "4".into()],
        ])
        .unwrap();
        let cert = regular(&c).expect("regular");
        assert!(is_totally_regular(&c, &cert).unwrap());
    }

    #[test]
    fn order_zero_is_regular() {
        let c = zc(&[3], vec![]);
        let cert = regular(&c).expect("regular");
        verify_regular(&c, &cert).unwrap();
        assert!(is_totally_regular(&c, &cert).unwrap());
        assert_eq!(precritical_counts(&c, &cert), vec![2]);
    }

    #[test]
    fn three_fan_is_a_cone() {
        let c = three_fan();
        let assign = cone(&c).expect("cone");
        verify_cone(&c, &assign).unwrap();
        assert_eq!(assign.sets[2].len(), 1);
    }

    #[test]
    fn pinched_disk_cone_matches_hand_assignment() {
        let c = pinched_disk();
        let assign = cone(&c).expect("cone");
        verify_cone(&c, &assign).unwrap();
        // the hand-picked assignment S_1 = {e1_1}, S_0 = {e0_1} also verifies
        let tau_e12 = Chain::from_terms(c.ring(), 2, [(ElementId::new(2, 0), Integers.one())]).unwrap();
        let tau_e02 =
            Chain::from_terms(c.ring(), 1, [(ElementId::new(1, 0), Integers.one())]).unwrap();
        let hand = ConeAssignment {
            sets: vec![
                vec![ElementId::new(0, 0)],
                vec![ElementId::new(1, 0)],
                vec![ElementId::new(2, 0)],
            ],
            witnesses: vec![(ElementId::new(1, 1), tau_e12), (ElementId::new(0, 1), tau_e02)],
        };
        verify_cone(&c, &hand).unwrap();
    }

    #[test]
    fn strip_three_is_a_cone() {
        let c = strip_three();
        let assign = cone(&c).expect("cone");
        verify_cone(&c, &assign).unwrap();
        assert_eq!(assign.sets[1].len(), 1);
    }

    #[test]
    fn four_cycle_disk_is_not_a_cone() {
        // acyclic, but no distinguished sets work
        let c = four_cycle_disk();
        assert!(cone(&c).is_none());
    }

    #[test]
    fn lollipop_is_not_a_cone() {
        let c = lollipop();
        assert!(cone(&c).is_none());
    }

    #[test]
    fn nested_top_pair_is_a_cone() {
        let c = nested_top_pair();
        let assign = cone(&c).expect("cone");
        verify_cone(&c, &assign).unwrap();
    }

    #[test]
    fn doubled_pinched_disk_is_not_a_cone() {
        // the top boundary map has a kernel
        let c = doubled_pinched_disk();
        assert!(cone(&c).is_none());
    }

    #[test]
    fn simplicial_cone_accepts_vertex_assignment() {
        let c = ChainComplex::from_simplicial(&[vec!["1".into(), "2".into(), "3".into()]]).unwrap();
        let assign = cone(&c).expect("cone");
        verify_cone(&c, &assign).unwrap();
        // the apex-based assignment: faces containing vertex 1
        let s1: Vec<ElementId> = ["{1,2}", "{1,3}"]
            .iter()
            .map(|l| c.find_label(l).unwrap())
            .collect();
        let e23 = c.find_label("{2,3}").unwrap();
        let top = c.find_label("{1,2,3}").unwrap();
        let tau23 = Chain::from_terms(c.ring(), 2, [(top, Integers.one())]).unwrap();
        let v1 = c.find_label("{1}").unwrap();
        let v2 = c.find_label("{2}").unwrap();
        let v3 = c.find_label("{3}").unwrap();
        let e12 = c.find_label("{1,2}").unwrap();
        let e13 = c.find_label("{1,3}").unwrap();
        let hand = ConeAssignment {
            sets: vec![vec![v1], s1, vec![top]],
            witnesses: vec![
                (e23, tau23),
                (v2, Chain::from_terms(c.ring(), 1, [(e12, Integers.one())]).unwrap()),
                (v3, Chain::from_terms(c.ring(), 1, [(e13, Integers.one())]).unwrap()),
            ],
        };
        verify_cone(&c, &hand).unwrap();
    }

    #[test]
    fn order_zero_cone_is_a_point() {
        let c = zc(&[1], vec![]);
        assert!(cone(&c).is_some());
        let c = zc(&[2], vec![]);
        assert!(cone(&c).is_none());
    }

    #[test]
    fn cones_are_acyclic() {
        for c in [three_fan(), pinched_disk(), strip_three(), nested_top_pair()] {
            if let Some(assign) = cone(&c) {
                verify_cone(&c, &assign).unwrap();
                assert!(homology::is_acyclic(&c));
                // kernel avoidance: no nonzero kernel vector is supported on S_v
                for v in 1..=c.order() {
                    let set: BTreeSet<usize> =
                        assign.sets[v].iter().map(|e| e.index).collect();
                    for k in linalg::kernel_basis(c.boundary_matrix(v)) {
                        let supported = k
                            .iter()
                            .enumerate()
                            .all(|(i, x)| c.ring().is_zero(x) || set.contains(&i));
                        let zero = k.iter().all(|x| c.ring().is_zero(x));
                        assert!(!supported || zero);
                    }
                }
            }
        }
    }
}

//! Independent brute-force reference implementations and seeded generators
//! for differential testing.
//!
//! Everything here deliberately avoids the main code paths: homology goes
//! through plain dense elimination on the boundary matrices, rank through
//! fraction-field Gaussian elimination, and shellability through raw
//! enumeration of orderings. The fuzz harness compares the two sides.

use std::collections::{BTreeSet, HashMap};

use num::BigInt;
use num::Signed;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{BoundaryEntry, ChainComplex, ElementId};
use crate::homology::FgModule;
use crate::ring::{Integers, Ring};
use crate::shelling::ShellingCertificate;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    /// A random simplicial complex conjugated by random unimodular basis
    /// changes per degree, which preserves the boundary-square condition
    /// exactly.
    RandomBoundary,
    /// Random facet families on at most six vertices.
    RandomSimplicial,
    /// Pure shifted complexes, which are always shellable.
    ShiftedComplex,
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_order: usize,
    pub max_cells_per_degree: usize,
    pub coefficient_range: i64,
    pub ensure_pure: bool,
    pub source: GeneratorSource,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            max_order: 2,
            max_cells_per_degree: 4,
            coefficient_range: 3,
            ensure_pure: false,
            source: GeneratorSource::RandomSimplicial,
        }
    }
}

// ---------------------------------------------------------------------------
// Dense rational rank and dense homology
// ---------------------------------------------------------------------------

fn to_rational_dense<R: Ring>(m: &crate::linalg::SparseMatrix<R>) -> Vec<Vec<BigRational>> {
    let ring = m.ring();
    let mut out = vec![vec![BigRational::zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        let n = ring.to_bigint(v).expect("oracle inputs are integral");
        out[r][c] = BigRational::from_integer(n);
    }
    out
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rational_rank_oracle<R: Ring>(m: &crate::linalg::SparseMatrix<R>) -> usize {
    let mut a = to_rational_dense(m);
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let pivot = a[row][col].clone();
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = &a[i][col] / &pivot;
                for j in col..cols {
                    let sub = &a[row][j] * &f;
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Invariant factors of an integer matrix by dense Euclidean elimination
/// without transform bookkeeping — an independent route to the same numbers
/// the Smith normal form produces.
fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let n = rows.min(cols);
    let mut out = Vec::new();
    let mut t = 0;
    while t < n {
        // first nonzero entry scanning column-major; a deliberately different
        // pivot rule than the transform-carrying elimination
        let mut pivot = None;
        'scan: for j in t..cols {
            for i in t..rows {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        'reduce: loop {
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[i][t], &a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] = &a[i][j] - sub;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[t][j], &a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let sub = &q * &a[i][t];
                        a[i][j] = &a[i][j] - sub;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'reduce;
                }
            }
            let mut offender = None;
            'chk: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offender = Some(i);
                        break 'chk;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    let (mut q, r) = a.div_rem(b);
    if r.magnitude() * 2u32 > *b.magnitude() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Homology by the textbook rank/invariant-factor formula, entirely separate
/// from the kernel-lattice route: the free rank of `H_v` is
/// `nullity(∂_v) - rank(∂_{v+1})` and its torsion are the nontrivial
/// invariant factors of `∂_{v+1}`.
pub fn dense_homology_oracle<R: Ring>(c: &ChainComplex<R>) -> Result<Vec<FgModule>, OracleError> {
    if c.total_size() > 64 {
        return Err(OracleError::TooLarge(format!("{} basis elements", c.total_size())));
    }
    let d = c.order();
    let field = c.ring().is_field();
    let mut out = Vec::with_capacity(d + 1);
    for v in 0..=d {
        let nullity = if v == 0 {
            c.degree_size(0)
        } else {
            c.degree_size(v) - rational_rank_oracle(c.boundary_matrix(v))
        };
        let (rank_in, torsion) = if v == d {
            (0, Vec::new())
        } else {
            let m = c.boundary_matrix(v + 1);
            if field {
                (rational_rank_oracle(m), Vec::new())
            } else {
                let dense: Vec<Vec<BigInt>> = {
                    let ring = c.ring();
                    let mut a = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
                    for (r, col, val) in m.entries() {
                        a[r][col] = ring.to_bigint(val).expect("integer complex");
                    }
                    a
                };
                let factors = dense_invariant_factors(dense);
                let torsion: Vec<BigInt> =
                    factors.iter().filter(|f| **f > BigInt::one()).cloned().collect();
                (factors.len(), torsion)
            }
        };
        out.push(FgModule { free_rank: nullity - rank_in, torsion });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Brute-force shellings
// ---------------------------------------------------------------------------

struct BruteCtx<'a, R: Ring> {
    c: &'a ChainComplex<R>,
    memo: HashMap<(Vec<ElementId>, Vec<ElementId>), Option<ShellingCertificate>>,
}

impl<'a, R: Ring> BruteCtx<'a, R> {
    /// Tries every order of `set` starting with `prefix`, by raw recursion.
    fn shell(
        &mut self,
        set: &BTreeSet<ElementId>,
        prefix: &BTreeSet<ElementId>,
    ) -> Option<ShellingCertificate> {
        let key =
            (set.iter().copied().collect::<Vec<_>>(), prefix.iter().copied().collect::<Vec<_>>());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.shell_rec(set, prefix, &mut Vec::new(), &BTreeSet::new());
        self.memo.insert(key, result.clone());
        result
    }

    fn shell_rec(
        &mut self,
        set: &BTreeSet<ElementId>,
        prefix: &BTreeSet<ElementId>,
        placed: &mut Vec<(ElementId, ShellingCertificate)>,
        union: &BTreeSet<ElementId>,
    ) -> Option<ShellingCertificate> {
        if placed.len() == set.len() {
            let (order, boundaries) = placed.iter().cloned().unzip();
            return Some(ShellingCertificate { order, boundaries });
        }
        let placed_set: BTreeSet<ElementId> = placed.iter().map(|(e, _)| *e).collect();
        let pool: Vec<ElementId> = if placed.len() < prefix.len() {
            prefix.difference(&placed_set).copied().collect()
        } else {
            set.difference(&placed_set).copied().collect()
        };
        for cand in pool {
            if let Some(sub) = self.admissible(placed, union, cand) {
                placed.push((cand, sub));
                let mut next_union = union.clone();
                next_union.extend(self.c.closure(cand).iter().copied());
                let found = self.shell_rec(set, prefix, placed, &next_union);
                placed.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn admissible(
        &mut self,
        placed: &[(ElementId, ShellingCertificate)],
        union: &BTreeSet<ElementId>,
        cand: ElementId,
    ) -> Option<ShellingCertificate> {
        let s = cand.degree;
        if s == 0 {
            return Some(ShellingCertificate::empty());
        }
        let mut sub_prefix = BTreeSet::new();
        if !placed.is_empty() {
            let inter: BTreeSet<ElementId> =
                self.c.closure(cand).intersection(union).copied().collect();
            if inter.is_empty() {
                return None;
            }
            let top = inter.iter().map(|e| e.degree).max().unwrap();
            if top != s - 1 {
                return None;
            }
            for &e in &inter {
                if e.degree < top {
                    let covered = inter
                        .iter()
                        .filter(|f| f.degree == e.degree + 1)
                        .any(|f| self.c.boundary_set(*f).contains(&e));
                    if !covered {
                        return None;
                    }
                }
            }
            sub_prefix = inter.into_iter().filter(|e| e.degree == s - 1).collect();
        }
        let bset = self.c.boundary_set(cand);
        if bset.is_empty() {
            return None;
        }
        self.shell(&bset, &sub_prefix)
    }
}

/// All shellings found by full enumeration: one certificate per valid
/// ordering of the maximal elements, built from the first valid recursive
/// sub-orders. Guarded by hard size caps.
pub fn brute_shellings<R: Ring>(
    c: &ChainComplex<R>,
) -> Result<Vec<ShellingCertificate>, OracleError> {
    let gamma = c.maximal_elements();
    if gamma.len() > 5 {
        return Err(OracleError::TooLarge(format!("{} maximal elements", gamma.len())));
    }
    if c.total_size() > 12 {
        return Err(OracleError::TooLarge(format!("{} basis elements", c.total_size())));
    }
    let mut ctx = BruteCtx { c, memo: HashMap::new() };
    let max_degree = gamma.iter().map(|e| e.degree).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut order: Vec<ElementId> = Vec::new();
    permute(&gamma, &mut order, &mut |perm| {
        if c.order() >= 1 && perm.first().is_some_and(|e| e.degree != max_degree) {
            return;
        }
        let mut placed: Vec<(ElementId, ShellingCertificate)> = Vec::new();
        let mut union: BTreeSet<ElementId> = BTreeSet::new();
        for &g in perm {
            // degree-0 members after the first position pass vacuously, but
            // a lone vertex first in a positive-order complex cannot work
            if g.degree == 0 && placed.is_empty() && c.order() >= 1 {
                return;
            }
            match ctx.admissible(&placed, &union, g) {
                Some(sub) => {
                    union.extend(c.closure(g).iter().copied());
                    placed.push((g, sub));
                }
                None => return,
            }
        }
        let (order, boundaries) = placed.into_iter().unzip();
        out.push(ShellingCertificate { order, boundaries });
    });
    Ok(out)
}

fn permute<T: Copy + Eq>(items: &[T], acc: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    if acc.len() == items.len() {
        f(acc);
        return;
    }
    for &x in items {
        if !acc.contains(&x) {
            acc.push(x);
            permute(items, acc, f);
            acc.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

fn random_facets(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Vec<Vec<String>> {
    let n_vertices = rng.random_range(2..=6u32);
    let n_facets = rng.random_range(1..=cfg.max_cells_per_degree.max(1));
    let mut facets = Vec::new();
    for _ in 0..n_facets {
        let size = rng.random_range(1..=(cfg.max_order + 1).min(n_vertices as usize));
        let mut verts = BTreeSet::new();
        while verts.len() < size {
            verts.insert(rng.random_range(1..=n_vertices));
        }
        facets.push(verts.into_iter().map(|v| v.to_string()).collect());
    }
    facets
}

/// Shifted closure: close the generators under replacing any vertex by a
/// smaller absent one, then keep the maximal faces. Shifted complexes are
/// known-shellable instances for the search oracle comparisons.
fn shifted_closure(generators: Vec<BTreeSet<u32>>) -> Vec<BTreeSet<u32>> {
    let mut faces: BTreeSet<BTreeSet<u32>> = generators.into_iter().collect();
    loop {
        let mut added = Vec::new();
        for face in &faces {
            for &v in face {
                for u in 1..v {
                    if !face.contains(&u) {
                        let mut shifted: BTreeSet<u32> = face.clone();
                        shifted.remove(&v);
                        shifted.insert(u);
                        if !faces.contains(&shifted) {
                            added.push(shifted);
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        faces.extend(added);
    }
    let all: Vec<BTreeSet<u32>> = faces.iter().cloned().collect();
    all.iter()
        .filter(|f| !all.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
        .cloned()
        .collect()
}

fn unimodular_shuffle(
    c: &ChainComplex<Integers>,
    rng: &mut ChaCha8Rng,
    coefficient_range: i64,
) -> ChainComplex<Integers> {
    let d = c.order();
    let ring = Integers;
    // per-degree unimodular matrices built from a few elementary moves
    let mut mats: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(d + 1);
    let mut invs: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(d + 1);
    for v in 0..=d {
        let k = c.degree_size(v);
        let mut m: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut inv = m.clone();
        let moves = rng.random_range(0..=2 * k.min(3));
        for _ in 0..moves {
            if k < 2 {
                break;
            }
            let i = rng.random_range(0..k);
            let mut j = rng.random_range(0..k);
            while j == i {
                j = rng.random_range(0..k);
            }
            let f = BigInt::from(
                rng.random_range(-coefficient_range.max(1)..=coefficient_range.max(1)),
            );
            // m ← m·(I + f·E_{j,i}), so m⁻¹ ← (I - f·E_{j,i})·m⁻¹
            for row in 0..k {
                let add = &m[row][j] * &f;
                m[row][i] += add;
            }
            for col in 0..k {
                let sub = &inv[i][col] * &f;
                inv[j][col] -= sub;
            }
        }
        mats.push(m);
        invs.push(inv);
    }
    // new boundary in degree v: inv[v-1] · old · mat[v]
    let mut entries: Vec<BoundaryEntry<BigInt>> = Vec::new();
    for v in 1..=d {
        let old = c.boundary_matrix(v).to_dense();
        let rows = c.degree_size(v - 1);
        let cols = c.degree_size(v);
        for col in 0..cols {
            for row in 0..rows {
                let mut acc = BigInt::zero();
                for p in 0..rows {
                    for q in 0..cols {
                        let term = &invs[v - 1][row][p] * &old[p][q] * &mats[v][q][col];
                        acc += term;
                    }
                }
                if !acc.is_zero() {
                    entries.push(BoundaryEntry { degree: v, column: col, row, value: acc });
                }
            }
        }
    }
    let labels = (0..=d)
        .map(|v| (0..c.degree_size(v)).map(|i| format!("e{}_{}", v, i + 1)).collect())
        .collect();
    ChainComplex::build(ring, labels, entries)
        .expect("a unimodular change of basis preserves the boundary-square condition")
}

/// Deterministic complex generation from a seed.
pub fn generate(cfg: &GeneratorConfig) -> ChainComplex<Integers> {
    let mut attempt = 0u64;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
        let c = match cfg.source {
            GeneratorSource::RandomSimplicial => {
                let facets = random_facets(&mut rng, cfg);
                ChainComplex::from_simplicial(&facets).expect("nonempty facet family")
            }
            GeneratorSource::ShiftedComplex => {
                let n = rng.random_range(3..=5u32);
                let dim = cfg.max_order.clamp(1, 2).min(n as usize - 1);
                let mut gens = Vec::new();
                let n_gens = rng.random_range(1..=2);
                for _ in 0..n_gens {
                    let mut face = BTreeSet::new();
                    while face.len() < dim + 1 {
                        face.insert(rng.random_range(1..=n));
                    }
                    gens.push(face);
                }
                let facets = shifted_closure(gens);
                let facets: Vec<Vec<String>> = facets
                    .into_iter()
                    .map(|f| f.into_iter().map(|v| v.to_string()).collect())
                    .collect();
                ChainComplex::from_simplicial(&facets).expect("nonempty facet family")
            }
            GeneratorSource::RandomBoundary => {
                let facets = random_facets(&mut rng, cfg);
                let base = ChainComplex::from_simplicial(&facets).expect("nonempty facet family");
                unimodular_shuffle(&base, &mut rng, cfg.coefficient_range)
            }
        };
        if !cfg.ensure_pure || c.is_pure() {
            return c;
        }
        attempt += 1;
        if attempt > 512 {
            // fall back to an always-pure instance rather than spin
            return ChainComplex::from_simplicial(&[vec!["1".into(), "2".into(), "3".into()]])
                .unwrap();
        }
    }
}

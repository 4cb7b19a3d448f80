//! The reflection group generated by a configuration's inversions.
//!
//! Everything here is desk-scale and exact: relations are verified as exact
//! matrix identities, elements are enumerated breadth-first with
//! deduplication on canonical matrix serializations, the abstract Coxeter
//! group is enumerated independently by brute-force word rewriting as an
//! oracle, orbits are computed as exact rational points, and congruence
//! quotients reduce the generator matrices modulo a prime.
//!
//! None of this proves discreteness; matching growth sequences, exact
//! relations, and injective orbits are reported as evidence, never as proof.

use crate::construction::{AuditReport, PairAudit, Violation};
use crate::inversive::{
    apply_to_point, reflection_matrix, MoebiusMatrix, PointOrInfinity, Sphere,
};
use crate::rat::{rat_sign, Rat};
use rayon::prelude::*;
use std::collections::{HashSet, VecDeque};

/// Entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxEntry {
    Finite(u32),
    Infinity,
}

impl CoxEntry {
    pub fn label(&self) -> String {
        match self {
            CoxEntry::Finite(m) => m.to_string(),
            CoxEntry::Infinity => "inf".to_string(),
        }
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            CoxEntry::Finite(m) => Some(*m),
            CoxEntry::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum PresentationError {
    #[error("audit has {} non-Coxeter pair(s): {}", .0.len(), describe_violations(.0))]
    Violations(Vec<Violation>),
    #[error("coxeter matrix is not symmetric with unit diagonal and off-diagonal entries >= 2")]
    Malformed,
}

fn describe_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .take(5)
        .map(|v| format!("({},{}): {}", v.i, v.j, v.reason.label()))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Abstract Coxeter presentation: generators R_i with R_i² = 1 and
/// (R_i R_j)^{m_ij} = 1 for finite m_ij.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    matrix: Vec<Vec<CoxEntry>>,
}

impl GroupPresentation {
    pub fn from_matrix(matrix: Vec<Vec<CoxEntry>>) -> Result<Self, PresentationError> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(PresentationError::Malformed);
            }
            for (j, &e) in row.iter().enumerate() {
                if e != matrix[j][i] {
                    return Err(PresentationError::Malformed);
                }
                match (i == j, e) {
                    (true, CoxEntry::Finite(1)) => {}
                    (false, CoxEntry::Finite(m)) if m >= 2 => {}
                    (false, CoxEntry::Infinity) => {}
                    _ => return Err(PresentationError::Malformed),
                }
            }
        }
        Ok(GroupPresentation { matrix })
    }

    pub fn from_pair_audit(audit: &PairAudit) -> Result<Self, PresentationError> {
        if !audit.violations.is_empty() {
            return Err(PresentationError::Violations(audit.violations.clone()));
        }
        Self::from_matrix(audit.coxeter.clone())
    }

    pub fn generator_count(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> CoxEntry {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<CoxEntry>> {
        &self.matrix
    }

    /// Dihedral presentation on two generators, for oracles and tests.
    pub fn dihedral(m: CoxEntry) -> Self {
        GroupPresentation {
            matrix: vec![
                vec![CoxEntry::Finite(1), m],
                vec![m, CoxEntry::Finite(1)],
            ],
        }
    }
}

/// m_ij from the pair audit: coxeter_order for intersecting pairs, ∞ for
/// disjoint pairs, 1 on the diagonal. Errors if any pair is not usable.
pub fn presentation_from_audit(report: &AuditReport) -> Result<GroupPresentation, PresentationError> {
    GroupPresentation::from_pair_audit(&report.pairs)
}

/// One relation that failed exact verification.
#[derive(Debug, Clone)]
pub struct RelationFailure {
    pub i: usize,
    pub j: usize,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct RelationReport {
    pub generators_checked: usize,
    pub pairs_checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every generator check R² = I, and for every finite m_ij check that
/// (R_i R_j)^{m_ij} = I exactly with no smaller positive power trivial.
pub fn verify_relations(generators: &[Sphere], pres: &GroupPresentation) -> RelationReport {
    assert_eq!(generators.len(), pres.generator_count());
    let mats: Vec<MoebiusMatrix> = generators.iter().map(reflection_matrix).collect();
    let mut failures = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        if !m.mul(m).is_identity() {
            failures.push(RelationFailure {
                i,
                j: i,
                detail: "generator is not an involution".to_string(),
            });
        }
    }
    let mut pairs_checked = 0;
    let pair_failures: Vec<RelationFailure> = (0..mats.len())
        .flat_map(|i| ((i + 1)..mats.len()).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let m = pres.entry(i, j).finite()?;
            let product = mats[i].mul(&mats[j]);
            let mut power = MoebiusMatrix::identity();
            for k in 1..=m {
                power = power.mul(&product);
                let is_id = power.is_identity();
                if k < m && is_id {
                    return Some(RelationFailure {
                        i,
                        j,
                        detail: format!("power {k} of the product is already the identity"),
                    });
                }
                if k == m && !is_id {
                    return Some(RelationFailure {
                        i,
                        j,
                        detail: format!("power {m} of the product is not the identity"),
                    });
                }
            }
            None
        })
        .collect();
    for (i, _) in mats.iter().enumerate() {
        for j in (i + 1)..mats.len() {
            if pres.entry(i, j).finite().is_some() {
                pairs_checked += 1;
            }
        }
    }
    failures.extend(pair_failures);
    RelationReport {
        generators_checked: mats.len(),
        pairs_checked,
        failures,
    }
}

/// A group element: exact matrix plus its shortlex-least minimal word.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub word: Vec<u16>,
    pub matrix: MoebiusMatrix,
}

/// Result of breadth-first exact enumeration.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// growth[l] = number of distinct elements of word length exactly l.
    pub growth: Vec<usize>,
    pub total_elements: usize,
    pub truncated: bool,
    /// Elements in canonical order (length, then shortlex); empty when the
    /// enumeration ran in growth-only mode.
    pub elements: Vec<GroupElement>,
    /// How many enumerated matrices had MᵀJM = J verified exactly (all of
    /// length ≤ 3 plus a seeded 5% sample beyond), and whether all passed.
    pub lorentz_checked: usize,
    pub lorentz_ok: bool,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

struct Candidate {
    key: Vec<u8>,
    word: Vec<u16>,
    matrix: Option<MoebiusMatrix>,
    lorentz: Option<bool>,
}

const BFS_CHUNK: usize = 128;

fn bfs_enumerate(
    gens: &[MoebiusMatrix],
    max_length: usize,
    element_cap: usize,
    seed: u64,
    collect: bool,
) -> Enumeration {
    assert!(element_cap >= 1);
    let identity = MoebiusMatrix::identity();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(identity.canonical_bytes());
    let mut elements = Vec::new();
    if collect {
        elements.push(GroupElement {
            word: Vec::new(),
            matrix: identity.clone(),
        });
    }
    let mut growth = vec![1usize];
    let mut total = 1usize;
    let mut truncated = false;
    let mut lorentz_checked = 0usize;
    let mut lorentz_ok = true;
    let mut frontier: Vec<(Vec<u16>, MoebiusMatrix)> = vec![(Vec::new(), identity)];

    'levels: for level in 1..=max_length {
        if frontier.is_empty() || gens.is_empty() {
            break;
        }
        let keep_matrices = collect || level < max_length;
        let mut next: Vec<(Vec<u16>, MoebiusMatrix)> = Vec::new();
        let mut level_count = 0usize;
        for (chunk_idx, chunk) in frontier.chunks(BFS_CHUNK).enumerate() {
            let base = chunk_idx * BFS_CHUNK;
            // Products, keys, and Lorentz checks are computed in parallel;
            // acceptance is merged sequentially in (parent, generator) order,
            // which is exactly shortlex order, so results do not depend on
            // the worker count.
            let candidates: Vec<Candidate> = chunk
                .par_iter()
                .enumerate()
                .flat_map_iter(|(ci, (word, matrix))| {
                    let parent_idx = (base + ci) as u64;
                    gens.iter().enumerate().map(move |(g, gen)| {
                        let product = matrix.mul(gen);
                        let key = product.canonical_bytes();
                        let sampled = level <= 3
                            || splitmix64(
                                seed ^ (level as u64) << 48 ^ parent_idx << 16 ^ g as u64,
                            ) % 100
                                < 5;
                        let lorentz = sampled.then(|| product.is_lorentz());
                        let mut word = word.clone();
                        word.push(g as u16);
                        Candidate {
                            key,
                            word,
                            matrix: keep_matrices.then_some(product),
                            lorentz,
                        }
                    })
                })
                .collect();
            for cand in candidates {
                if !seen.insert(cand.key) {
                    continue;
                }
                if let Some(ok) = cand.lorentz {
                    lorentz_checked += 1;
                    lorentz_ok &= ok;
                }
                level_count += 1;
                total += 1;
                if collect {
                    elements.push(GroupElement {
                        word: cand.word.clone(),
                        matrix: cand.matrix.clone().expect("collected runs keep matrices"),
                    });
                }
                if let Some(m) = cand.matrix {
                    next.push((cand.word, m));
                }
                if total >= element_cap {
                    truncated = true;
                    growth.push(level_count);
                    break 'levels;
                }
            }
        }
        if level_count == 0 {
            // no new elements at this length means none at any longer length
            break;
        }
        growth.push(level_count);
        frontier = next;
    }

    Enumeration {
        growth,
        total_elements: total,
        truncated,
        elements,
        lorentz_checked,
        lorentz_ok,
    }
}

/// Enumerate all distinct elements of word length ≤ max_length, with their
/// shortlex representatives and exact matrices.
pub fn enumerate(
    generators: &[Sphere],
    max_length: usize,
    element_cap: usize,
    seed: u64,
) -> Enumeration {
    let mats: Vec<MoebiusMatrix> = generators.iter().map(reflection_matrix).collect();
    bfs_enumerate(&mats, max_length, element_cap, seed, true)
}

/// Growth-only enumeration: counts per length without retaining elements,
/// for configurations whose ball of the requested radius is large.
pub fn enumerate_growth(
    generators: &[Sphere],
    max_length: usize,
    element_cap: usize,
    seed: u64,
) -> Enumeration {
    let mats: Vec<MoebiusMatrix> = generators.iter().map(reflection_matrix).collect();
    bfs_enumerate(&mats, max_length, element_cap, seed, false)
}

#[derive(Debug, Clone)]
pub struct AbstractGrowth {
    pub growth: Vec<usize>,
    pub total_elements: usize,
    pub truncated: bool,
}

/// Shortlex normal form in the abstract Coxeter group: the (length, lex)
/// least word reachable by braid moves and deletions of adjacent equal
/// letters. Exhaustive closure is the word-problem solution for Coxeter
/// systems, so this is an oracle independent of all geometry.
fn normalize(word: &[u16], pres: &GroupPresentation) -> Vec<u16> {
    let start: Vec<u16> = word.to_vec();
    let mut best = start.clone();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue: VecDeque<Vec<u16>> = VecDeque::new();
    queue.push_back(start);
    let better = |a: &[u16], b: &[u16]| (a.len(), a) < (b.len(), b);
    while let Some(w) = queue.pop_front() {
        if better(&w, &best) {
            best = w.clone();
        }
        // delete an adjacent equal pair
        for p in 0..w.len().saturating_sub(1) {
            if w[p] == w[p + 1] {
                let mut shorter = w.clone();
                shorter.drain(p..p + 2);
                if seen.insert(shorter.clone()) {
                    queue.push_back(shorter);
                }
            }
        }
        // braid move: replace an alternating run (s t s ...) of length m_st
        // by the run starting with the other letter
        for p in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[p], w[p + 1]);
            if s == t {
                continue;
            }
            let Some(m) = pres.entry(s as usize, t as usize).finite() else {
                continue;
            };
            let m = m as usize;
            if p + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|k| w[p + k] == if k % 2 == 0 { s } else { t });
            if !alternating {
                continue;
            }
            let mut swapped = w.clone();
            for k in 0..m {
                swapped[p + k] = if k % 2 == 0 { t } else { s };
            }
            if seen.insert(swapped.clone()) {
                queue.push_back(swapped);
            }
        }
    }
    best
}

/// Enumerate the abstract Coxeter group by words with normal-form
/// deduplication (no geometry); the independent oracle matching
/// [`enumerate`] whenever the configuration is as discrete as claimed.
pub fn abstract_growth(
    pres: &GroupPresentation,
    max_length: usize,
    element_cap: usize,
) -> AbstractGrowth {
    assert!(element_cap >= 1);
    let n = pres.generator_count() as u16;
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(Vec::new());
    let mut growth = vec![1usize];
    let mut total = 1usize;
    let mut truncated = false;
    let mut frontier: Vec<Vec<u16>> = vec![Vec::new()];

    'levels: for level in 1..=max_length {
        if frontier.is_empty() || n == 0 {
            break;
        }
        let mut next: Vec<Vec<u16>> = Vec::new();
        let mut level_count = 0usize;
        for chunk in frontier.chunks(BFS_CHUNK) {
            let candidates: Vec<Vec<u16>> = chunk
                .par_iter()
                .flat_map_iter(|word| {
                    (0..n).map(move |g| {
                        let mut extended = word.clone();
                        extended.push(g);
                        normalize(&extended, pres)
                    })
                })
                .collect();
            for normal in candidates {
                // multiplying by a generator changes length by exactly one
                debug_assert!(normal.len() == level || normal.len() + 2 == level);
                if normal.len() != level {
                    continue;
                }
                if !seen.insert(normal.clone()) {
                    continue;
                }
                level_count += 1;
                total += 1;
                next.push(normal);
                if total >= element_cap {
                    truncated = true;
                    growth.push(level_count);
                    break 'levels;
                }
            }
        }
        if level_count == 0 {
            break;
        }
        growth.push(level_count);
        frontier = next;
    }
    AbstractGrowth {
        growth,
        total_elements: total,
        truncated,
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum OrbitError {
    #[error("probe point lies in closed ball {0}; it must lie in the interior of the fundamental domain")]
    ProbeInsideBall(usize),
}

#[derive(Debug, Clone)]
pub struct OrbitTiling {
    /// (shortlex word, exact image of the probe), in canonical element order.
    pub points: Vec<(Vec<u16>, PointOrInfinity)>,
    pub all_distinct: bool,
    pub duplicate: Option<(Vec<u16>, Vec<u16>)>,
    /// Every non-identity element must move the probe into some closed ball.
    pub escapes_ok: bool,
    pub escape_failure: Option<Vec<u16>>,
    pub truncated: bool,
}

/// Orbit of a probe point under all elements of length ≤ max_length. The
/// probe must lie outside every closed ball; distinctness of the images and
/// escape from the fundamental domain are asserted exactly.
pub fn orbit_tiling(
    generators: &[Sphere],
    max_length: usize,
    element_cap: usize,
    probe: &PointOrInfinity,
) -> Result<OrbitTiling, OrbitError> {
    for (i, s) in generators.iter().enumerate() {
        if s.contains_closed(probe) {
            return Err(OrbitError::ProbeInsideBall(i));
        }
    }
    let enumeration = enumerate(generators, max_length, element_cap, 0);
    let points: Vec<(Vec<u16>, PointOrInfinity)> = enumeration
        .elements
        .par_iter()
        .map(|e| (e.word.clone(), apply_to_point(&e.matrix, probe)))
        .collect();

    let mut index: std::collections::BTreeMap<&PointOrInfinity, &Vec<u16>> =
        std::collections::BTreeMap::new();
    let mut duplicate = None;
    for (word, image) in &points {
        if let Some(prev) = index.insert(image, word) {
            duplicate = Some(((*prev).clone(), word.clone()));
            break;
        }
    }

    let mut escape_failure = None;
    for (word, image) in &points {
        if word.is_empty() {
            continue;
        }
        if !generators.iter().any(|s| s.contains_closed(image)) {
            escape_failure = Some(word.clone());
            break;
        }
    }

    Ok(OrbitTiling {
        all_distinct: duplicate.is_none(),
        duplicate,
        escapes_ok: escape_failure.is_none(),
        escape_failure,
        truncated: enumeration.truncated,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("prime {0} is excluded: generator denominators are divisible only by 2 and 3")]
    ExcludedPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} divides a generator entry denominator")]
    DividesDenominator(u64),
}

/// A 6×6 matrix over the field with p elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    pub p: u64,
    pub entries: [[u64; 6]; 6],
}

impl ModMatrix {
    pub fn identity(p: u64) -> Self {
        let mut entries = [[0u64; 6]; 6];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        ModMatrix { p, entries }
    }

    pub fn mul(&self, rhs: &ModMatrix) -> ModMatrix {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p as u128;
        let mut entries = [[0u64; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let mut acc: u128 = 0;
                for k in 0..6 {
                    acc += self.entries[i][k] as u128 * rhs.entries[k][j] as u128;
                }
                entries[i][j] = (acc % p) as u64;
            }
        }
        ModMatrix { p: self.p, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.p)
    }

    /// Smallest k ≤ bound with M^k = I, if any.
    pub fn order_up_to(&self, bound: u32) -> Option<u32> {
        let mut power = *self;
        for k in 1..=bound {
            if power.is_identity() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p, p prime
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn reduce_rat(r: &Rat, p: u64) -> Result<u64, QuotientError> {
    let p_big = num::BigInt::from(p);
    let den = r.denom() % &p_big;
    if den == num::BigInt::from(0) {
        return Err(QuotientError::DividesDenominator(p));
    }
    let num = ((r.numer() % &p_big) + &p_big) % &p_big;
    let num_u: u64 = num.try_into().expect("reduced below p");
    let den_u: u64 = den.try_into().expect("reduced below p");
    Ok(((num_u as u128 * mod_inverse(den_u, p) as u128) % p as u128) as u64)
}

pub fn reduce_matrix(m: &MoebiusMatrix, p: u64) -> Result<ModMatrix, QuotientError> {
    let mut entries = [[0u64; 6]; 6];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = reduce_rat(m.entry(i, j), p)?;
        }
    }
    Ok(ModMatrix { p, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderBound {
    Exact(usize),
    CappedAtLeast(usize),
}

#[derive(Debug, Clone)]
pub struct FunctorialityCheck {
    pub pairs_checked: usize,
    pub ok: bool,
}

/// The congruence quotient: generator images mod p, paired with rational
/// determinant signs (orientation is invisible mod p), plus verification
/// that all defining relations reduce to the identity.
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    pub prime: u64,
    pub images: Vec<ModMatrix>,
    pub det_signs: Vec<i8>,
    pub relations_ok: bool,
    pub order_bound: OrderBound,
    pub functoriality: FunctorialityCheck,
}

impl FiniteQuotient {
    /// Image of a word: the product of generator images.
    pub fn image_of_word(&self, word: &[u16]) -> ModMatrix {
        let mut acc = ModMatrix::identity(self.prime);
        for &g in word {
            acc = acc.mul(&self.images[g as usize]);
        }
        acc
    }
}

/// Reduce the generators mod p (p ∉ {2,3}, prime, coprime to every entry
/// denominator), verify the homomorphism on all defining relations, verify
/// functoriality on seeded random word pairs, and explore the order of the
/// generated matrix group up to a cap.
pub fn congruence_quotient(
    generators: &[Sphere],
    pres: &GroupPresentation,
    p: u64,
    order_cap: usize,
    seed: u64,
) -> Result<FiniteQuotient, QuotientError> {
    if p == 2 || p == 3 {
        return Err(QuotientError::ExcludedPrime(p));
    }
    if !is_prime(p) {
        return Err(QuotientError::NotPrime(p));
    }
    let mats: Vec<MoebiusMatrix> = generators.iter().map(reflection_matrix).collect();
    let images: Vec<ModMatrix> = mats
        .iter()
        .map(|m| reduce_matrix(m, p))
        .collect::<Result<_, _>>()?;
    let det_signs: Vec<i8> = mats.iter().map(|m| rat_sign(&m.determinant())).collect();

    let mut relations_ok = true;
    for img in &images {
        if !img.mul(img).is_identity() {
            relations_ok = false;
        }
    }
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if let Some(m) = pres.entry(i, j).finite() {
                let prod = images[i].mul(&images[j]);
                let mut acc = ModMatrix::identity(p);
                for _ in 0..m {
                    acc = acc.mul(&prod);
                }
                if !acc.is_identity() {
                    relations_ok = false;
                }
            }
        }
    }

    // functoriality: reduction of an exact product equals the product of
    // reductions, on seeded random word pairs
    let functoriality = if mats.is_empty() {
        FunctorialityCheck {
            pairs_checked: 0,
            ok: true,
        }
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut ok = true;
        let pairs = 100;
        for _ in 0..pairs {
            let u_len = rng.gen_range(0..=4);
            let v_len = rng.gen_range(0..=4);
            let u: Vec<usize> = (0..u_len).map(|_| rng.gen_range(0..mats.len())).collect();
            let v: Vec<usize> = (0..v_len).map(|_| rng.gen_range(0..mats.len())).collect();
            let exact = u
                .iter()
                .chain(v.iter())
                .fold(MoebiusMatrix::identity(), |acc, &g| acc.mul(&mats[g]));
            let reduced_exact = reduce_matrix(&exact, p)?;
            let product_of_images = u
                .iter()
                .chain(v.iter())
                .fold(ModMatrix::identity(p), |acc, &g| acc.mul(&images[g]));
            ok &= reduced_exact == product_of_images;
        }
        FunctorialityCheck {
            pairs_checked: pairs,
            ok,
        }
    };

    // BFS closure of the image group up to the cap
    let order_bound = {
        let mut seen: HashSet<ModMatrix> = HashSet::new();
        seen.insert(ModMatrix::identity(p));
        let mut frontier = vec![ModMatrix::identity(p)];
        let mut capped = false;
        'bfs: while let Some(next_frontier) = {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &images {
                    let prod = m.mul(g);
                    if seen.insert(prod) {
                        next.push(prod);
                        if seen.len() >= order_cap {
                            capped = true;
                            break;
                        }
                    }
                }
                if capped {
                    break;
                }
            }
            (!next.is_empty()).then_some(next)
        } {
            if capped {
                break 'bfs;
            }
            frontier = next_frontier;
        }
        if capped {
            OrderBound::CappedAtLeast(seen.len())
        } else {
            OrderBound::Exact(seen.len())
        }
    };

    Ok(FiniteQuotient {
        prime: p,
        images,
        det_signs,
        relations_ok,
        order_bound,
        functoriality,
    })
}

/// A finite-order element whose image in the quotient is trivial: a
/// certificate that the congruence kernel contains torsion.
#[derive(Debug, Clone)]
pub struct TorsionWitness {
    pub word: Vec<u16>,
    pub order: u32,
}

#[derive(Debug, Clone)]
pub struct TorsionReport {
    pub max_length: usize,
    pub order_detection_bound: u32,
    pub elements_checked: usize,
    pub finite_order_elements: usize,
    pub witnesses: Vec<TorsionWitness>,
    pub truncated: bool,
}

impl TorsionReport {
    pub fn ok(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    let gcd = |mut x: u32, mut y: u32| {
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / gcd(a, b) * b
}

/// Exact order of the matrix if it is ≤ bound. Any exact identity M^k = I
/// forces the order of every mod-p image to divide k, so only multiples of
/// the lcm of the available image orders need exact verification; elements
/// whose image orders already exceed the bound are certified infinite (for
/// the purposes of the check) without any exact powers.
fn exact_order_up_to(matrix: &MoebiusMatrix, filters: &[ModMatrix], bound: u32) -> Option<u32> {
    let mut step = 1u32;
    for image in filters {
        step = lcm_u32(step, image.order_up_to(bound)?);
        if step > bound {
            return None;
        }
    }
    let base = matrix.pow(step);
    let mut power = base.clone();
    let mut k = step;
    loop {
        if power.is_identity() {
            return Some(k);
        }
        k += step;
        if k > bound {
            return None;
        }
        power = power.mul(&base);
    }
}

/// A second reduction prime used purely as an order filter: the smallest
/// prime (≠ p, ∉ {2,3}) coprime to every generator entry denominator.
fn auxiliary_filter(generators: &[MoebiusMatrix], p: u64) -> Option<Vec<ModMatrix>> {
    'primes: for q in [5u64, 7, 11, 13, 17, 19, 23] {
        if q == p {
            continue;
        }
        let mut images = Vec::with_capacity(generators.len());
        for m in generators {
            match reduce_matrix(m, q) {
                Ok(img) => images.push(img),
                Err(_) => continue 'primes,
            }
        }
        return Some(images);
    }
    None
}

/// Enumerate all elements up to max_length and assert that every element of
/// finite order (detected by exact matrix-power periodicity up to the bound)
/// has a nontrivial image in the quotient.
pub fn torsion_survival_check(
    generators: &[Sphere],
    quotient: &FiniteQuotient,
    max_length: usize,
    element_cap: usize,
    order_detection_bound: u32,
) -> TorsionReport {
    let enumeration = enumerate(generators, max_length, element_cap, 0);
    let gen_mats: Vec<MoebiusMatrix> = generators.iter().map(reflection_matrix).collect();
    let aux = auxiliary_filter(&gen_mats, quotient.prime);
    let image_of = |images: &[ModMatrix], word: &[u16], p: u64| {
        word.iter()
            .fold(ModMatrix::identity(p), |acc, &g| acc.mul(&images[g as usize]))
    };

    // (finite order found, witness if the quotient killed the element)
    let results: Vec<(bool, Option<TorsionWitness>)> = enumeration
        .elements
        .par_iter()
        .map(|e| {
            if e.word.is_empty() {
                return (false, None);
            }
            let image = image_of(&quotient.images, &e.word, quotient.prime);
            let mut filters = vec![image];
            if let Some(aux_images) = &aux {
                filters.push(image_of(aux_images, &e.word, aux_images[0].p));
            }
            let Some(order) = exact_order_up_to(&e.matrix, &filters, order_detection_bound)
            else {
                return (false, None);
            };
            let witness = filters[0].is_identity().then(|| TorsionWitness {
                word: e.word.clone(),
                order,
            });
            (true, witness)
        })
        .collect();

    let finite_order_elements = results.iter().filter(|(finite, _)| *finite).count();
    let witnesses = results.into_iter().filter_map(|(_, w)| w).collect();
    TorsionReport {
        max_length,
        order_detection_bound,
        elements_checked: enumeration.total_elements,
        finite_order_elements,
        witnesses,
        truncated: enumeration.truncated,
    }
}

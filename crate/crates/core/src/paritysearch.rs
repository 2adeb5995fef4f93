//! Verification, classification, discovery, and symmetry expansion of parity
//! proofs.
//!
//! A parity proof is a subset of the bases of a [`RayBasisSystem`] such that
//! (a) the number of bases is odd, and (b) every ray occurring in those bases
//! occurs an even number of times.  No 0/1 assignment of the rays can then
//! give every basis exactly one 1: summing over the subset would make an odd
//! number equal an even one.
//!
//! Discovery comes in two flavours.  Kernel enumeration walks the entire null
//! space of the GF(2) incidence matrix in Gray-code order — exhaustive, but
//! only feasible when the kernel dimension is modest.  Incremental search is
//! the classic seeded backtracking: grow a subset basis by basis, keeping the
//! parity accumulator and pruning when the odd rays can no longer be paired
//! off within the remaining budget.
//!
//! By default every search and the catalog exclude proofs that lie entirely
//! within a single 600-cell: those are proofs of the 600-cell itself (each of
//! the ten 600-cells contributes its own copies) rather than of the 120-cell
//! as a whole.  Set [`SearchConfig::include_confined`] to see them anyway.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::incidence::{BitVec, Gf2Matrix, RayBasisSystem};
use crate::polytope::{Cell24Label, Cell600Label, Letter, RayPermutation};

/// Identifies the host system of a proof by the 24-cells dropped from the
/// full system (empty set = the full 300-ray, 675-basis system).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SystemRef(pub BTreeSet<Cell24Label>);

impl SystemRef {
    pub fn full() -> Self {
        SystemRef(BTreeSet::new())
    }

    pub fn is_full(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SystemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "full")
        } else {
            let labels: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", labels.join(","))
        }
    }
}

/// An odd set of bases in which every participating ray occurs an even number
/// of times.  Carries the ray quadruples so that verification, classification
/// and 600-cell accounting never need to re-query the polytope.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ParityProof {
    basis_ids: Vec<u32>,
    bases: Vec<[u32; 4]>,
    ray_multiplicities: BTreeMap<u32, u32>,
    system_ref: SystemRef,
}

impl ParityProof {
    /// Builds a proof candidate from basis ids of the given system,
    /// recomputing the ray multiplicities.  The candidate is not verified;
    /// see [`verify_parity`].
    pub fn from_basis_ids(system: &RayBasisSystem, ids: &[u32]) -> Result<ParityProof> {
        let mut basis_ids: Vec<u32> = ids.to_vec();
        basis_ids.sort_unstable();
        basis_ids.dedup();
        let mut bases = Vec::with_capacity(basis_ids.len());
        let mut ray_multiplicities: BTreeMap<u32, u32> = BTreeMap::new();
        for &id in &basis_ids {
            let b = system.basis(id)?;
            bases.push(b.rays);
            for &r in &b.rays {
                *ray_multiplicities.entry(r).or_insert(0) += 1;
            }
        }
        Ok(ParityProof {
            basis_ids,
            bases,
            ray_multiplicities,
            system_ref: SystemRef(system.dropped_cells().clone()),
        })
    }

    /// Reassembles a proof from parts (used by certificate loading).  The ray
    /// quadruples are taken as given; `verify_parity` re-derives everything
    /// from the host system and will catch inconsistencies.
    pub fn from_parts(basis_ids: Vec<u32>, bases: Vec<[u32; 4]>, system_ref: SystemRef) -> ParityProof {
        let mut ray_multiplicities: BTreeMap<u32, u32> = BTreeMap::new();
        for quad in &bases {
            for &r in quad {
                *ray_multiplicities.entry(r).or_insert(0) += 1;
            }
        }
        ParityProof { basis_ids, bases, ray_multiplicities, system_ref }
    }

    pub fn basis_ids(&self) -> &[u32] {
        &self.basis_ids
    }

    pub fn bases(&self) -> &[[u32; 4]] {
        &self.bases
    }

    pub fn ray_multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.ray_multiplicities
    }

    pub fn system_ref(&self) -> &SystemRef {
        &self.system_ref
    }

    pub fn basis_count(&self) -> u32 {
        self.basis_ids.len() as u32
    }

    /// Distinct rays used, ascending.
    pub fn rays(&self) -> Vec<u32> {
        self.ray_multiplicities.keys().copied().collect()
    }
}

/// Ray-multiplicity histogram of a proof, e.g. "46_2 2_4-25_4": 46 rays of
/// multiplicity 2 and 2 rays of multiplicity 4 across 25 bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProofSymbol {
    /// (count, multiplicity) pairs, multiplicities ascending.
    pub ray_part: Vec<(u32, u32)>,
    pub basis_count: u32,
}

impl ProofSymbol {
    /// Σ count·multiplicity = 4 × basis_count with all multiplicities even.
    pub fn accounting_holds(&self) -> bool {
        let total: u64 = self.ray_part.iter().map(|&(c, m)| c as u64 * m as u64).sum();
        total == 4 * self.basis_count as u64
            && self.ray_part.iter().all(|&(_, m)| m % 2 == 0)
    }
}

impl fmt::Display for ProofSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(count, mult)) in self.ray_part.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}_{}", count, mult)?;
        }
        write!(f, "-{}_4", self.basis_count)
    }
}

impl FromStr for ProofSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedSymbol(s.to_string());
        let (left, right) = s.rsplit_once('-').ok_or_else(bad)?;
        let basis_count = right.strip_suffix("_4").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut ray_part = Vec::new();
        for part in left.split_whitespace() {
            let (c, m) = part.split_once('_').ok_or_else(bad)?;
            ray_part.push((c.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?));
        }
        Ok(ProofSymbol { ray_part, basis_count })
    }
}

impl PartialOrd for ProofSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProofSymbol {
    /// Orders by basis count, then within a count from fewest high-multiplicity
    /// rays to most (so e.g. 46_2 < 44_2 1_4 < 42_2 2_4).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.basis_count.cmp(&other.basis_count) {
            Ordering::Equal => {}
            o => return o,
        }
        let mut a = self.ray_part.iter();
        let mut b = other.ray_part.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(ca, ma)), Some(&(cb, mb))) => {
                    match ma.cmp(&mb).then(cb.cmp(&ca)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
        }
    }
}

/// How a search discovers proofs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    /// Seeded backtracking over basis subsets.
    Incremental,
    /// Exhaustive Gray-code walk of the incidence-matrix kernel.
    KernelEnumerate,
    /// Kernel enumeration when the dimension permits, else incremental.
    Hybrid,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SearchMode::Incremental => "incremental",
            SearchMode::KernelEnumerate => "kernel_enumerate",
            SearchMode::Hybrid => "hybrid",
        };
        write!(f, "{s}")
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incremental" => Ok(SearchMode::Incremental),
            "kernel" | "kernel_enumerate" => Ok(SearchMode::KernelEnumerate),
            "hybrid" => Ok(SearchMode::Hybrid),
            other => Err(Error::UnknownSearchMode(other.to_string())),
        }
    }
}

/// Parameters shared by the search entry points.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest (and, for incremental mode, aimed-for) odd number of bases.
    pub target_bases: u32,
    pub mode: SearchMode,
    /// Starting basis for incremental search; `None` sweeps every basis.
    pub seed_basis: Option<u32>,
    /// Seeds the tie-breaking RNG; recorded in certificates.
    pub rng_seed: u64,
    /// Cap on the number of proofs returned (applied after canonical sorting).
    pub max_solutions: usize,
    /// Kernel enumeration walks 2^dim vectors; refuse beyond this dimension.
    pub kernel_dim_limit: usize,
    /// Also report proofs lying entirely within a single 600-cell.
    pub include_confined: bool,
    /// Worker cap; `None` defers to POLY120_THREADS, then to the host.
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(target_bases: u32) -> Self {
        SearchConfig {
            target_bases,
            mode: SearchMode::Hybrid,
            seed_basis: None,
            rng_seed: 0,
            max_solutions: usize::MAX,
            kernel_dim_limit: 26,
            include_confined: false,
            threads: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.target_bases % 2 == 0 || self.target_bases == 0 {
            return Err(Error::InvalidTarget(self.target_bases));
        }
        Ok(())
    }

    /// Worker count: explicit setting, then POLY120_THREADS, then all cores.
    pub fn effective_threads(&self) -> usize {
        self.threads
            .or_else(|| std::env::var("POLY120_THREADS").ok().and_then(|v| v.parse().ok()))
            .unwrap_or_else(|| {
                std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
            })
            .max(1)
    }
}

/// True iff the subset is odd-sized and every ray it uses occurs an even
/// number of times.  Recomputes everything from the host system; the proof's
/// stored multiplicities are not trusted.
pub fn verify_parity(proof: &ParityProof, system: &RayBasisSystem) -> Result<bool> {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &id in proof.basis_ids() {
        let b = system.basis(id)?;
        for &r in &b.rays {
            *mult.entry(r).or_insert(0) += 1;
        }
    }
    Ok(proof.basis_ids.len() % 2 == 1 && mult.values().all(|&m| m % 2 == 0))
}

/// Ray-multiplicity histogram of a verified proof.  The histogram is
/// recomputed from the stored quadruples; a proof failing its own
/// invariants is rejected.
pub fn classify(proof: &ParityProof) -> Result<ProofSymbol> {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for quad in &proof.bases {
        for &r in quad {
            *mult.entry(r).or_insert(0) += 1;
        }
    }
    let odd_bases = proof.basis_ids.len() % 2 == 1;
    let ids_match = proof.basis_ids.len() == proof.bases.len();
    let all_even = mult.values().all(|&m| m % 2 == 0);
    if !(odd_bases && ids_match && all_even && mult == proof.ray_multiplicities) {
        return Err(Error::ProofNotVerified);
    }
    let mut hist: BTreeMap<u32, u32> = BTreeMap::new();
    for &m in mult.values() {
        *hist.entry(m).or_insert(0) += 1;
    }
    Ok(ProofSymbol {
        ray_part: hist.into_iter().map(|(m, c)| (c, m)).collect(),
        basis_count: proof.basis_ids.len() as u32,
    })
}

/// True iff no proper nonempty subset of the proof's bases is itself a parity
/// proof.  Uses the GF(2) rank criterion: restricted to the proof's columns,
/// the incidence matrix must have null space exactly {0, all-ones}, i.e.
/// rank = |bases| − 1.  (Any further kernel vector y gives y or y + all-ones
/// odd-sized, hence a smaller proof.)
pub fn is_critical(proof: &ParityProof, system: &RayBasisSystem) -> Result<bool> {
    if !verify_parity(proof, system)? {
        return Err(Error::ProofNotVerified);
    }
    let matrix = system.incidence_matrix();
    let columns: Vec<usize> =
        proof.basis_ids.iter().map(|&id| system.column_of(id)).collect::<Result<_>>()?;
    Ok(matrix.rank_of_columns(&columns) == columns.len() - 1)
}

/// Basis of the incidence-matrix null space (indicator vectors over columns).
pub fn kernel_basis(matrix: &Gf2Matrix) -> Vec<BitVec> {
    matrix.kernel_basis()
}

/// The 600-cell(s) containing a basis: its column cell if all four rays share
/// one, and/or its row cell.  Every basis of the 120-cell has at least one.
fn basis_600cells(quad: &[u32; 4]) -> Vec<Cell600Label> {
    let col = |r: u32| (r - 1) / 60;
    let row = |r: u32| ((r - 1) % 60) / 12;
    let mut out = Vec::with_capacity(2);
    if quad.iter().all(|&r| col(r) == col(quad[0])) {
        out.push(Cell600Label::unprimed(Letter::from_index(col(quad[0]) as usize)));
    }
    if quad.iter().all(|&r| row(r) == row(quad[0])) {
        out.push(Cell600Label::primed(Letter::from_index(row(quad[0]) as usize)));
    }
    out
}

/// Union of the 600-cell labels of the proof's bases — the cells the proof
/// draws on.  A proof confined to one 600-cell can still span two labels
/// here if it uses a 24-cell block basis (which lies in a row and a column
/// cell at once); see [`confining_600cells`] for the containment notion.
pub fn spanned_600cells(proof: &ParityProof) -> BTreeSet<Cell600Label> {
    let mut out = BTreeSet::new();
    for quad in &proof.bases {
        out.extend(basis_600cells(quad));
    }
    out
}

/// The 600-cells each containing *every* basis of the proof (the intersection
/// of the per-basis labels).  Nonempty exactly when the proof lies inside a
/// single 600-cell — a proof of that cell rather than of the whole 120-cell.
pub fn confining_600cells(proof: &ParityProof) -> BTreeSet<Cell600Label> {
    let mut iter = proof.bases.iter();
    let first = match iter.next() {
        Some(q) => q,
        None => return BTreeSet::new(),
    };
    let mut acc: BTreeSet<Cell600Label> = basis_600cells(first).into_iter().collect();
    for quad in iter {
        let cells: BTreeSet<Cell600Label> = basis_600cells(quad).into_iter().collect();
        acc = acc.intersection(&cells).copied().collect();
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Whether the proof lies entirely within a single 600-cell.
pub fn is_confined(proof: &ParityProof) -> bool {
    !confining_600cells(proof).is_empty()
}

// ---------------------------------------------------------------------------
// Kernel enumeration
// ---------------------------------------------------------------------------

/// Exhaustively enumerates the kernel of the system's incidence matrix and
/// returns every parity proof of at most `target_bases` bases, canonically
/// sorted by basis ids.  Proofs confined to a single 600-cell are excluded
/// unless `config.include_confined` is set.
///
/// Fails with [`Error::DimensionTooLarge`] when the kernel dimension exceeds
/// `config.kernel_dim_limit` (the walk visits 2^dim vectors).
pub fn search_kernel(system: &RayBasisSystem, config: &SearchConfig) -> Result<Vec<ParityProof>> {
    config.validate()?;
    let matrix = system.incidence_matrix();
    let kernel = matrix.kernel_basis();
    if kernel.len() > config.kernel_dim_limit {
        return Err(Error::DimensionTooLarge { dim: kernel.len(), limit: config.kernel_dim_limit });
    }
    let labels = column_label_masks(system);
    let include_confined = config.include_confined;
    let supports = enumerate_odd_supports(
        &kernel,
        matrix.cols(),
        config.target_bases,
        config.effective_threads(),
        |v| {
            include_confined || {
                let mut and = ALL_CELLS_MASK;
                for j in v.iter_ones() {
                    and &= labels[j];
                }
                and == 0
            }
        },
    );
    let mut proofs = Vec::new();
    for support in &supports {
        let ids: Vec<u32> = support.iter_ones().map(|j| system.bases()[j].id).collect();
        let proof = ParityProof::from_basis_ids(system, &ids)?;
        debug_assert!(verify_parity(&proof, system).unwrap());
        proofs.push(proof);
    }
    proofs.sort_unstable_by(|a, b| a.basis_ids.cmp(&b.basis_ids));
    proofs.truncate(config.max_solutions);
    Ok(proofs)
}

/// Dispatches on `config.mode`: incremental backtracking, kernel enumeration
/// (failing when the dimension exceeds the limit), or hybrid — kernel when
/// feasible, incremental otherwise.
pub fn search(system: &RayBasisSystem, config: &SearchConfig) -> Result<Vec<ParityProof>> {
    match config.mode {
        SearchMode::Incremental => search_incremental(system, config),
        SearchMode::KernelEnumerate => search_kernel(system, config),
        SearchMode::Hybrid => match search_kernel(system, config) {
            Err(Error::DimensionTooLarge { .. }) => search_incremental(system, config),
            other => other,
        },
    }
}

/// Bitmask over the ten 600-cell labels (bits 0–4 the unprimed columns A–E,
/// bits 5–9 the primed rows), set for every 600-cell containing the basis.
const ALL_CELLS_MASK: u16 = 0x3ff;

fn column_label_masks(system: &RayBasisSystem) -> Vec<u16> {
    system
        .bases()
        .iter()
        .map(|b| {
            let mut m = 0u16;
            for cell in basis_600cells(&b.rays) {
                m |= 1 << (cell.letter.index() + if cell.primed { 5 } else { 0 });
            }
            m
        })
        .collect()
}

/// All kernel vectors of odd weight ≤ `target` passing `keep`, as column
/// bitsets, in deterministic walk order.
fn enumerate_odd_supports(
    kernel: &[BitVec],
    cols: usize,
    target: u32,
    threads: usize,
    keep: impl Fn(&BitVec) -> bool + Sync,
) -> Vec<BitVec> {
    fold_odd_coset(kernel, cols, target, threads, Vec::new, |out: &mut Vec<BitVec>, v| {
        if keep(&v) {
            out.push(v);
        }
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Re-bases the kernel around the support-size parity functional.  Support
/// size is linear over GF(2) (|a ⊕ b| ≡ |a| + |b| mod 2), so the odd-weight
/// kernel vectors — the parity-proof candidates — are exactly
/// `offset ⊕ span(generators)` for one odd-weight pivot and the remaining
/// generators made even; walking that coset halves the enumeration.  Returns
/// `None` when every kernel vector has even support.
fn odd_coset(kernel: &[BitVec]) -> Option<(BitVec, Vec<BitVec>)> {
    let pivot = kernel.iter().position(|v| v.count_ones() % 2 == 1)?;
    let offset = kernel[pivot].clone();
    let generators = kernel
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, v)| {
            if v.count_ones() % 2 == 1 {
                let mut g = v.clone();
                g.xor_assign(&offset);
                g
            } else {
                v.clone()
            }
        })
        .collect();
    Some((offset, generators))
}

/// Gray-code walk over the odd-support coset of the kernel, split into
/// strata (high Gray bits fixed per stratum) so it can fan out over workers.
/// Every odd-weight kernel vector of weight ≤ `max_weight` is passed to
/// `visit` exactly once; per-stratum states are returned in stratum order,
/// so the outcome is independent of the worker count.
fn fold_odd_coset<T: Send>(
    kernel: &[BitVec],
    cols: usize,
    max_weight: u32,
    threads: usize,
    make: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, BitVec) + Sync,
) -> Vec<T> {
    let Some((offset, generators)) = odd_coset(kernel) else {
        return Vec::new();
    };
    let dim = generators.len();
    let (lo_bits, highs) = stratify(dim, threads);
    if cols <= 128 {
        let off = bitvec_to_u128(&offset);
        let kb: Vec<u128> = generators.iter().map(bitvec_to_u128).collect();
        run_strata(lo_bits, highs, threads, |lo_bits, high| {
            let mut acc = off;
            for b in 0..(dim - lo_bits) {
                if high >> b & 1 == 1 {
                    acc ^= kb[lo_bits + b];
                }
            }
            let mut state = make();
            let check = |acc: u128, state: &mut T| {
                let w = acc.count_ones();
                debug_assert_eq!(w % 2, 1, "coset walk left the odd-support coset");
                if w <= max_weight {
                    visit(state, u128_to_bitvec(acc, cols));
                }
            };
            check(acc, &mut state);
            for i in 1..(1u64 << lo_bits) {
                acc ^= kb[i.trailing_zeros() as usize];
                check(acc, &mut state);
            }
            state
        })
    } else {
        let kb: Vec<&[u64]> = generators.iter().map(|g| g.words()).collect();
        run_strata(lo_bits, highs, threads, |lo_bits, high| {
            let mut acc = offset.words().to_vec();
            for b in 0..(dim - lo_bits) {
                if high >> b & 1 == 1 {
                    xor_into(&mut acc, kb[lo_bits + b]);
                }
            }
            let mut state = make();
            let check = |acc: &[u64], state: &mut T| {
                let w: u32 = acc.iter().map(|w| w.count_ones()).sum();
                debug_assert_eq!(w % 2, 1, "coset walk left the odd-support coset");
                if w <= max_weight {
                    visit(state, words_to_bitvec(acc, cols));
                }
            };
            check(&acc, &mut state);
            for i in 1..(1u64 << lo_bits) {
                xor_into(&mut acc, kb[i.trailing_zeros() as usize]);
                check(&acc, &mut state);
            }
            state
        })
    }
}

/// Splits `dim` Gray bits into (low bits, list of fixed high-bit patterns).
fn stratify(dim: usize, threads: usize) -> (usize, Vec<u64>) {
    let mut s = 0usize;
    while (1usize << s) < 4 * threads && s + 1 < dim && s < 8 {
        s += 1;
    }
    let lo_bits = dim - s;
    (lo_bits, (0..1u64 << s).collect())
}

fn run_strata<T: Send>(
    lo_bits: usize,
    highs: Vec<u64>,
    threads: usize,
    job: impl Fn(usize, u64) -> T + Sync,
) -> Vec<T> {
    if threads > 1 && highs.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("worker pool");
        pool.install(|| highs.par_iter().map(|&h| job(lo_bits, h)).collect())
    } else {
        highs.iter().map(|&h| job(lo_bits, h)).collect()
    }
}

fn bitvec_to_u128(v: &BitVec) -> u128 {
    let w = v.words();
    let mut out = w[0] as u128;
    if w.len() > 1 {
        out |= (w[1] as u128) << 64;
    }
    out
}

fn u128_to_bitvec(s: u128, len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    let mut m = s;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        v.set(b, true);
    }
    v
}

fn words_to_bitvec(words: &[u64], len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for (i, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            v.set(i * 64 + b, true);
        }
    }
    v
}

fn xor_into(acc: &mut [u64], col: &[u64]) {
    for (a, c) in acc.iter_mut().zip(col.iter()) {
        *a ^= c;
    }
}

// ---------------------------------------------------------------------------
// Incremental search
// ---------------------------------------------------------------------------

/// Seeded depth-first backtracking.  From each seed basis the search adds
/// bases one at a time, always keeping the GF(2) parity accumulator of the
/// chosen columns.  At every step one ray of odd multiplicity is selected
/// (the one with the fewest remaining candidate bases), and only pool bases
/// containing that ray are branched on — some such basis must participate in
/// any completion, so no proof is missed.  Candidates are tried in order of
/// decreasing overlap with the currently odd rays (ties broken by an RNG
/// keyed from `rng_seed`); a branch is pruned when ⌈(#odd rays)/4⌉ exceeds
/// the remaining basis budget.  Each child excludes the candidates tried
/// before it, so every subset is visited at most once; with no explicit seed
/// every basis seeds its own subtree and the walk over subsets of at most
/// `target_bases` bases is exhaustive.
///
/// Results are canonically sorted; up to `max_solutions` are returned.  An
/// empty result means the search turned up empty.
pub fn search_incremental(
    system: &RayBasisSystem,
    config: &SearchConfig,
) -> Result<Vec<ParityProof>> {
    config.validate()?;
    let matrix = system.incidence_matrix();
    let n = matrix.cols();
    if n == 0 || config.target_bases < 3 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let tie_keys: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    // per-ray bitmask over columns: which bases contain the ray
    let mut row_masks: Vec<BitVec> = vec![BitVec::zeros(n); matrix.rows()];
    for j in 0..n {
        for (w, word) in matrix.column(j).iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                let r = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                row_masks[r].set(j, true);
            }
        }
    }
    let seeds: Vec<usize> = match config.seed_basis {
        Some(id) => vec![system.column_of(id)?],
        None => (0..n).collect(),
    };
    let explicit_seed = config.seed_basis.is_some();
    let threads = config.effective_threads();

    let run_seed = |&seed: &usize| -> Vec<Vec<usize>> {
        let mut acc = vec![0u64; matrix.words_per_column()];
        matrix.xor_column_into(&mut acc, seed);
        // a seed sweep partitions subsets by their smallest member; an
        // explicit seed searches all subsets through it
        let mut pool = BitVec::zeros(n);
        for j in 0..n {
            let available = if explicit_seed { j != seed } else { j > seed };
            pool.set(j, available);
        }
        let mut ctx = DfsContext {
            matrix: &matrix,
            row_masks: &row_masks,
            tie_keys: &tie_keys,
            target: config.target_bases as usize,
            max_solutions: config.max_solutions,
            include_confined: config.include_confined,
            system,
            solutions: Vec::new(),
        };
        let mut chosen = vec![seed];
        ctx.dfs(&mut acc, &mut chosen, &mut pool);
        ctx.solutions
    };

    let per_seed: Vec<Vec<Vec<usize>>> = if threads > 1 && seeds.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("worker pool");
        pool.install(|| seeds.par_iter().map(run_seed).collect())
    } else {
        seeds.iter().map(run_seed).collect()
    };

    let mut proofs = Vec::new();
    for columns in per_seed.into_iter().flatten() {
        let ids: Vec<u32> = columns.iter().map(|&j| system.bases()[j].id).collect();
        let proof = ParityProof::from_basis_ids(system, &ids)?;
        debug_assert!(verify_parity(&proof, system).unwrap());
        proofs.push(proof);
    }
    proofs.sort_unstable_by(|a, b| a.basis_ids.cmp(&b.basis_ids));
    proofs.dedup();
    proofs.truncate(config.max_solutions);
    Ok(proofs)
}

struct DfsContext<'a> {
    matrix: &'a Gf2Matrix,
    row_masks: &'a [BitVec],
    tie_keys: &'a [u64],
    target: usize,
    max_solutions: usize,
    include_confined: bool,
    system: &'a RayBasisSystem,
    solutions: Vec<Vec<usize>>,
}

impl DfsContext<'_> {
    fn dfs(&mut self, acc: &mut [u64], chosen: &mut Vec<usize>, pool: &mut BitVec) {
        if self.solutions.len() >= self.max_solutions {
            return;
        }
        let odd: u32 = acc.iter().map(|w| w.count_ones()).sum();
        let remaining = self.target - chosen.len();
        if odd == 0 {
            if chosen.len() % 2 == 1 && chosen.len() > 1 {
                if self.include_confined || !self.columns_confined(chosen) {
                    self.solutions.push(chosen.clone());
                }
            }
            // a longer proof through this subset needs at least two more bases
            if remaining >= 2 {
                let mut order: Vec<(u64, usize)> =
                    pool.iter_ones().map(|j| (self.tie_keys[j], j)).collect();
                order.sort_unstable();
                self.descend(acc, chosen, pool, order.into_iter().map(|(_, j)| j).collect());
            }
            return;
        }
        if remaining == 0 || (odd as usize).div_ceil(4) > remaining {
            return;
        }
        // pivot: the odd ray with the fewest candidate bases left
        let mut pivot: Option<(u32, usize)> = None;
        for (w, &word) in acc.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let r = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let count = self.row_masks[r]
                    .words()
                    .iter()
                    .zip(pool.words())
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>();
                if count == 0 {
                    return; // this ray can never be paired off
                }
                if pivot.is_none_or(|(best, _)| count < best) {
                    pivot = Some((count, r));
                }
            }
        }
        let (_, pivot_ray) = pivot.expect("odd > 0 implies an odd ray");
        // candidates: pool bases containing the pivot ray, best reduction first
        let mut scored: Vec<(i64, u64, usize)> = self.row_masks[pivot_ray]
            .iter_ones()
            .filter(|&j| pool.get(j))
            .map(|j| {
                let overlap: u32 = self
                    .matrix
                    .column(j)
                    .iter()
                    .zip(acc.iter())
                    .map(|(c, a)| (c & a).count_ones())
                    .sum();
                (-(overlap as i64), self.tie_keys[j], j)
            })
            .collect();
        scored.sort_unstable();
        self.descend(acc, chosen, pool, scored.into_iter().map(|(_, _, j)| j).collect());
    }

    /// Tries each candidate in turn; candidate k's subtree excludes
    /// candidates 0..k, so a subset is only ever built through its first
    /// listed member.
    fn descend(
        &mut self,
        acc: &mut [u64],
        chosen: &mut Vec<usize>,
        pool: &mut BitVec,
        candidates: Vec<usize>,
    ) {
        for &j in &candidates {
            pool.set(j, false);
            self.matrix.xor_column_into(acc, j);
            chosen.push(j);
            self.dfs(acc, chosen, pool);
            chosen.pop();
            self.matrix.xor_column_into(acc, j);
            if self.solutions.len() >= self.max_solutions {
                break;
            }
        }
        for &j in &candidates {
            pool.set(j, true);
        }
    }

    fn columns_confined(&self, columns: &[usize]) -> bool {
        let mut acc: Option<BTreeSet<Cell600Label>> = None;
        for &j in columns {
            let cells: BTreeSet<Cell600Label> =
                basis_600cells(&self.system.bases()[j].rays).into_iter().collect();
            acc = Some(match acc {
                None => cells,
                Some(prev) => prev.intersection(&cells).copied().collect(),
            });
            if acc.as_ref().is_some_and(|s| s.is_empty()) {
                return false;
            }
        }
        acc.is_some_and(|s| !s.is_empty())
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// One symbol class of the catalog: how many proofs realize the symbol, how
/// many of those are critical, and one example.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogEntry {
    pub symbol: ProofSymbol,
    pub proofs: u64,
    pub critical: u64,
    /// Entry covers proofs confined to a single 600-cell (only present when
    /// the catalog was built with `include_confined`).
    pub confined: bool,
    pub example_basis_ids: Vec<u32>,
}

/// Distinct proof symbols per basis count over a range, with counts and
/// criticality tallies.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub by_count: BTreeMap<u32, Vec<CatalogEntry>>,
    /// False when kernel enumeration was infeasible and an incremental
    /// (non-exhaustive) sweep stood in.
    pub exhaustive: bool,
}

impl Catalog {
    /// The symbols realized by at least one critical proof at this count.
    /// Non-critical proofs exist in abundance (any proof XOR-ed with a
    /// disjoint even kernel vector is again a proof), so the headline set
    /// counts only the critical ones; the full tallies stay in the entries.
    pub fn symbol_set(&self, basis_count: u32) -> BTreeSet<String> {
        self.by_count
            .get(&basis_count)
            .map(|v| {
                v.iter()
                    .filter(|e| e.critical > 0)
                    .map(|e| e.symbol.to_string())
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Every symbol seen at this count, critical or not.
    pub fn all_symbols(&self, basis_count: u32) -> BTreeSet<String> {
        self.by_count
            .get(&basis_count)
            .map(|v| v.iter().map(|e| e.symbol.to_string()).collect())
            .unwrap_or_default()
    }

    /// Total number of critical proofs across all counts and entries.
    pub fn critical_total(&self) -> u64 {
        self.by_count.values().flatten().map(|e| e.critical).sum()
    }
}

/// Collects the distinct proof symbols for every odd basis count in
/// `min_bases..=max_bases`.  Uses exhaustive kernel enumeration when the
/// kernel dimension allows; in hybrid mode an incremental sweep stands in
/// otherwise and the result is flagged non-exhaustive.
pub fn catalog(
    system: &RayBasisSystem,
    min_bases: u32,
    max_bases: u32,
    config: &SearchConfig,
) -> Result<Catalog> {
    if min_bases % 2 == 0 || min_bases == 0 {
        return Err(Error::InvalidTarget(min_bases));
    }
    if max_bases % 2 == 0 || max_bases < min_bases {
        return Err(Error::InvalidTarget(max_bases));
    }
    let matrix = system.incidence_matrix();
    let kernel = matrix.kernel_basis();
    let kernel_feasible = kernel.len() <= config.kernel_dim_limit;
    match config.mode {
        SearchMode::KernelEnumerate if !kernel_feasible => {
            return Err(Error::DimensionTooLarge {
                dim: kernel.len(),
                limit: config.kernel_dim_limit,
            })
        }
        _ => {}
    }

    if kernel_feasible && config.mode != SearchMode::Incremental {
        let by_count = catalog_stream_kernel(system, &matrix, &kernel, min_bases, max_bases, config);
        return Ok(Catalog { by_count, exhaustive: true });
    }

    // incremental stand-in: sweep every seed toward max_bases
    let mut sweep = config.clone();
    sweep.target_bases = max_bases;
    sweep.mode = SearchMode::Incremental;
    let proofs = search_incremental(system, &sweep)?;
    let mut by_count: BTreeMap<u32, Vec<CatalogEntry>> = BTreeMap::new();
    let mut seen: BTreeMap<(u32, ProofSymbol, bool), (u64, u64, Vec<u32>)> = BTreeMap::new();
    for proof in &proofs {
        let w = proof.basis_count();
        if w < min_bases || w > max_bases {
            continue;
        }
        let symbol = classify(proof)?;
        let confined = is_confined(proof);
        let critical = is_critical(proof, system)?;
        let entry = seen
            .entry((w, symbol, confined))
            .or_insert_with(|| (0, 0, proof.basis_ids().to_vec()));
        entry.0 += 1;
        if critical {
            entry.1 += 1;
        }
    }
    for ((w, symbol, confined), (count, crit, example)) in seen {
        by_count.entry(w).or_default().push(CatalogEntry {
            symbol,
            proofs: count,
            critical: crit,
            confined,
            example_basis_ids: example,
        });
    }
    for entries in by_count.values_mut() {
        entries.sort_by(|a, b| a.symbol.cmp(&b.symbol).then(a.confined.cmp(&b.confined)));
    }
    Ok(Catalog { by_count, exhaustive: false })
}

/// Streaming aggregation over the kernel walk: no proof list is materialized,
/// so the memory footprint is independent of the hit count.
fn catalog_stream_kernel(
    system: &RayBasisSystem,
    matrix: &Gf2Matrix,
    kernel: &[BitVec],
    min_bases: u32,
    max_bases: u32,
    config: &SearchConfig,
) -> BTreeMap<u32, Vec<CatalogEntry>> {
    #[derive(Default, Clone)]
    struct Tally {
        count: u64,
        critical: u64,
        example: Vec<u32>,
    }

    let threads = config.effective_threads();
    let cols = matrix.cols();
    let labels = column_label_masks(system);

    type Key = (u32, Vec<(u32, u32)>, bool);
    let partials: Vec<BTreeMap<Key, Tally>> = fold_odd_coset(
        kernel,
        cols,
        max_bases,
        threads,
        BTreeMap::new,
        |agg: &mut BTreeMap<Key, Tally>, support| {
            let w = support.count_ones();
            if w < min_bases {
                return;
            }
            let mut and_mask = ALL_CELLS_MASK;
            let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
            let mut columns: Vec<usize> = Vec::with_capacity(w as usize);
            for j in support.iter_ones() {
                and_mask &= labels[j];
                columns.push(j);
                for &r in &system.bases()[j].rays {
                    *mult.entry(r).or_insert(0) += 1;
                }
            }
            let confined = and_mask != 0;
            if confined && !config.include_confined {
                return;
            }
            let mut hist: BTreeMap<u32, u32> = BTreeMap::new();
            for &m in mult.values() {
                *hist.entry(m).or_insert(0) += 1;
            }
            let ray_part: Vec<(u32, u32)> = hist.into_iter().map(|(m, c)| (c, m)).collect();
            let critical = matrix.rank_of_columns(&columns) == columns.len() - 1;
            let tally = agg.entry((w, ray_part, confined)).or_insert_with(|| Tally {
                count: 0,
                critical: 0,
                example: columns.iter().map(|&j| system.bases()[j].id).collect(),
            });
            tally.count += 1;
            if critical {
                tally.critical += 1;
            }
        },
    );

    // merge in stratum order so the recorded example is deterministic
    let mut merged: BTreeMap<Key, Tally> = BTreeMap::new();
    for partial in partials {
        for (key, tally) in partial {
            let entry = merged.entry(key).or_insert_with(|| Tally {
                count: 0,
                critical: 0,
                example: tally.example.clone(),
            });
            entry.count += tally.count;
            entry.critical += tally.critical;
        }
    }

    let mut by_count: BTreeMap<u32, Vec<CatalogEntry>> = BTreeMap::new();
    for ((w, ray_part, confined), tally) in merged {
        by_count.entry(w).or_default().push(CatalogEntry {
            symbol: ProofSymbol { ray_part, basis_count: w },
            proofs: tally.count,
            critical: tally.critical,
            confined,
            example_basis_ids: tally.example,
        });
    }
    for entries in by_count.values_mut() {
        entries.sort_by(|a, b| a.symbol.cmp(&b.symbol).then(a.confined.cmp(&b.confined)));
    }
    by_count
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

/// Closure of a proof under the given ray permutations: every permutation is
/// applied to every basis, images are remapped to basis ids of the host
/// system, and the process iterates to a fixpoint.  A permutation image that
/// is not a basis of the host system aborts (the generator is not a symmetry
/// of that system).
pub fn orbit(
    proof: &ParityProof,
    generators: &[RayPermutation],
    system: &RayBasisSystem,
) -> Result<BTreeSet<ParityProof>> {
    let quad_to_id: BTreeMap<[u32; 4], u32> =
        system.bases().iter().map(|b| (b.rays, b.id)).collect();
    let mut seen: BTreeSet<ParityProof> = BTreeSet::new();
    let mut frontier: Vec<ParityProof> = vec![proof.clone()];
    seen.insert(proof.clone());
    while let Some(current) = frontier.pop() {
        for generator in generators {
            let mut ids = Vec::with_capacity(current.bases.len());
            for quad in &current.bases {
                let image = generator.apply_quad(quad);
                match quad_to_id.get(&image) {
                    Some(&id) => ids.push(id),
                    None => {
                        return Err(Error::ImageNotABasis {
                            operator: generator.operator_name.as_char(),
                            basis: image,
                        })
                    }
                }
            }
            let image = ParityProof::from_basis_ids(system, &ids)?;
            debug_assert!(verify_parity(&image, system).unwrap());
            if seen.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    Ok(seen)
}

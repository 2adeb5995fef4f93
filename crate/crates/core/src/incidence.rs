//! Ray-basis incidence structures: multiplicity signatures, reduced systems
//! obtained by dropping 24-cells, and packed GF(2) incidence matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::polytope::{Basis, Cell24Label, Polytope};

/// A packed bit vector over GF(2), used for kernel vectors and parity
/// accumulators.  Bit `i` lives in word `i / 64` at position `i % 64`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0u64; len.div_ceil(64)], len }
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// A set of rays together with the bases they form, as obtained from the full
/// 120-cell system or by dropping 24-cells from it.  The drop set is carried
/// along so that derived artifacts (certificates, exports) can name the system.
#[derive(Clone, Debug)]
pub struct RayBasisSystem {
    rays: Vec<u32>,
    bases: Vec<Basis>,
    multiplicity: BTreeMap<u32, u32>,
    dropped: BTreeSet<Cell24Label>,
}

impl RayBasisSystem {
    /// The complete 300-ray, 675-basis system.
    pub fn full_system(polytope: &Polytope) -> Self {
        Self::from_bases(polytope.bases().to_vec(), BTreeSet::new())
    }

    fn from_bases(bases: Vec<Basis>, dropped: BTreeSet<Cell24Label>) -> Self {
        let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
        for b in &bases {
            for &r in &b.rays {
                *multiplicity.entry(r).or_insert(0) += 1;
            }
        }
        let rays: Vec<u32> = multiplicity.keys().copied().collect();
        RayBasisSystem { rays, bases, multiplicity, dropped }
    }

    /// Removes the 12 rays of each named 24-cell and every basis containing
    /// any removed ray.  Rays left in no surviving basis are dropped as well.
    pub fn reduce(&self, dropped: &[Cell24Label]) -> RayBasisSystem {
        let mut removed: BTreeSet<u32> = BTreeSet::new();
        let mut all_dropped = self.dropped.clone();
        for cell in dropped {
            removed.extend(cell.ray_indices());
            all_dropped.insert(*cell);
        }
        let bases: Vec<Basis> = self
            .bases
            .iter()
            .filter(|b| b.rays.iter().all(|r| !removed.contains(r)))
            .cloned()
            .collect();
        Self::from_bases(bases, all_dropped)
    }

    pub fn rays(&self) -> &[u32] {
        &self.rays
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }

    /// Number of bases of this system the ray occurs in (0 if absent).
    pub fn multiplicity(&self, ray: u32) -> u32 {
        self.multiplicity.get(&ray).copied().unwrap_or(0)
    }

    /// The 24-cells dropped from the full system to obtain this one.
    pub fn dropped_cells(&self) -> &BTreeSet<Cell24Label> {
        &self.dropped
    }

    pub fn is_full(&self) -> bool {
        self.dropped.is_empty()
    }

    pub fn basis(&self, id: u32) -> Result<&Basis> {
        self.bases
            .binary_search_by_key(&id, |b| b.id)
            .map(|i| &self.bases[i])
            .map_err(|_| Error::UnknownBasisId(id))
    }

    pub fn contains_basis(&self, id: u32) -> bool {
        self.basis(id).is_ok()
    }

    /// Column position of a basis id in the incidence matrix.
    pub fn column_of(&self, id: u32) -> Result<usize> {
        self.bases
            .binary_search_by_key(&id, |b| b.id)
            .map_err(|_| Error::UnknownBasisId(id))
    }

    /// Row position of a ray index in the incidence matrix.
    pub fn row_of(&self, ray: u32) -> Option<usize> {
        self.rays.binary_search(&ray).ok()
    }

    /// Multiplicity histogram in the standard notation, e.g. "300_9 - 675_4".
    pub fn signature(&self) -> SystemSignature {
        let mut hist: BTreeMap<u32, u32> = BTreeMap::new();
        for &m in self.multiplicity.values() {
            *hist.entry(m).or_insert(0) += 1;
        }
        SystemSignature {
            ray_part: hist.into_iter().map(|(mult, count)| (count, mult)).collect(),
            basis_count: self.bases.len() as u32,
        }
    }

    /// GF(2) incidence matrix: one row per ray, one column per basis.
    pub fn incidence_matrix(&self) -> Gf2Matrix {
        let rows = self.rays.len();
        let cols = self.bases.len();
        let wpc = rows.div_ceil(64).max(1);
        let mut data = vec![0u64; wpc * cols];
        for (j, b) in self.bases.iter().enumerate() {
            for &r in &b.rays {
                let i = self.row_of(r).expect("basis ray missing from system");
                data[j * wpc + i / 64] |= 1 << (i % 64);
            }
        }
        Gf2Matrix { rows, cols, wpc, data }
    }
}

/// Multiplicity histogram of a ray-basis system, rendered as e.g.
/// "36_2 48_5 12_6 - 96_4": counts of rays at each multiplicity (ascending),
/// then the basis count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SystemSignature {
    /// (count, multiplicity) pairs, multiplicities ascending.
    pub ray_part: Vec<(u32, u32)>,
    pub basis_count: u32,
}

impl SystemSignature {
    /// Σ count·multiplicity = 4 × basis count.
    pub fn accounting_holds(&self) -> bool {
        let total: u64 = self.ray_part.iter().map(|&(c, m)| c as u64 * m as u64).sum();
        total == 4 * self.basis_count as u64
    }

    pub fn ray_count(&self) -> u32 {
        self.ray_part.iter().map(|&(c, _)| c).sum()
    }
}

impl fmt::Display for SystemSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(count, mult) in &self.ray_part {
            write!(f, "{}_{} ", count, mult)?;
        }
        write!(f, "- {}_4", self.basis_count)
    }
}

/// Packed GF(2) incidence matrix, stored column-major so that search loops
/// can XOR whole basis columns into a parity accumulator.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    wpc: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_column(&self) -> usize {
        self.wpc
    }

    pub fn column(&self, j: usize) -> &[u64] {
        &self.data[j * self.wpc..(j + 1) * self.wpc]
    }

    pub fn bit(&self, row: usize, col: usize) -> bool {
        self.data[col * self.wpc + row / 64] >> (row % 64) & 1 == 1
    }

    pub fn column_weight(&self, j: usize) -> u32 {
        self.column(j).iter().map(|w| w.count_ones()).sum()
    }

    pub fn row_weight(&self, i: usize) -> u32 {
        (0..self.cols).filter(|&j| self.bit(i, j)).count() as u32
    }

    /// XOR column `j` into an accumulator of `words_per_column` words.
    pub fn xor_column_into(&self, acc: &mut [u64], j: usize) {
        for (a, c) in acc.iter_mut().zip(self.column(j)) {
            *a ^= c;
        }
    }

    /// Rank over GF(2) of the selected columns.
    pub fn rank_of_columns(&self, columns: &[usize]) -> usize {
        let mut work: Vec<Vec<u64>> = Vec::new();
        let mut tops: Vec<usize> = Vec::new();
        for &j in columns {
            let mut v = self.column(j).to_vec();
            for (w, &t) in work.iter().zip(tops.iter()) {
                if v[t / 64] >> (t % 64) & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(w.iter()) {
                        *a ^= b;
                    }
                }
            }
            if let Some(t) = top_bit(&v) {
                work.push(v);
                tops.push(t);
            }
        }
        work.len()
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.cols).collect();
        self.rank_of_columns(&all)
    }

    /// A basis of the null space {x : M·x = 0}, one `BitVec` over the columns
    /// per kernel dimension, via Gaussian elimination with coefficient
    /// tracking.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work: Vec<Vec<u64>> = Vec::new();
        let mut coef: Vec<BitVec> = Vec::new();
        let mut tops: Vec<usize> = Vec::new();
        let mut kernel = Vec::new();
        for j in 0..self.cols {
            let mut v = self.column(j).to_vec();
            let mut c = BitVec::zeros(self.cols);
            c.set(j, true);
            for i in 0..work.len() {
                let t = tops[i];
                if v[t / 64] >> (t % 64) & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(work[i].iter()) {
                        *a ^= b;
                    }
                    c.xor_assign(&coef[i]);
                }
            }
            match top_bit(&v) {
                None => kernel.push(c),
                Some(t) => {
                    work.push(v);
                    coef.push(c);
                    tops.push(t);
                }
            }
        }
        kernel
    }

    /// M·x over GF(2) for an indicator vector on the columns.
    pub fn mul_indicator(&self, x: &BitVec) -> Vec<u64> {
        debug_assert_eq!(x.len(), self.cols);
        let mut acc = vec![0u64; self.wpc];
        for j in x.iter_ones() {
            self.xor_column_into(&mut acc, j);
        }
        acc
    }
}

fn top_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate().rev() {
        if w != 0 {
            return Some(i * 64 + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

//! The five rotation operators, the 300 projective rays they generate, the
//! 675 orthogonal bases, and the 24-cell / 600-cell block structure of the
//! ray table.
//!
//! Geometry summary: the ray table is a 5×5 grid of 12-ray blocks (24-cells).
//! Column blocks (rays 60c+1..60c+60) form the five unprimed 600-cells A..E;
//! row blocks (offset classes of 12 within each column) form the five primed
//! 600-cells A'..E'. V steps one column (i → i+60 mod 300), W steps one row
//! within each column (i → i+12, wrapping back by 48), U cycles rays inside a
//! 24-cell four at a time, and X/Y are symmetries of the single 600-cells
//! A/A' respectively.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::golden::{GoldenMatrix4, GoldenNumber, GoldenVector4};

pub const NUM_RAYS: u32 = 300;
pub const NUM_BASES: u32 = 675;

/// One of the five 600-cell letters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
}

impl Letter {
    pub const ALL: [Letter; 5] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::E];

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'A'..='E' => Some(Letter::ALL[(c as u8 - b'A') as usize]),
            _ => None,
        }
    }
}

/// A 600-cell: one of A..E (unprimed, a column of blocks) or A'..E' (primed,
/// a row of blocks). Ordering puts the unprimed cells first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Cell600Label {
    pub letter: Letter,
    pub primed: bool,
}

impl Cell600Label {
    pub fn unprimed(letter: Letter) -> Self {
        Cell600Label {
            letter,
            primed: false,
        }
    }

    pub fn primed(letter: Letter) -> Self {
        Cell600Label {
            letter,
            primed: true,
        }
    }

    /// All ten 600-cells, unprimed A..E then primed A'..E'.
    pub fn all() -> impl Iterator<Item = Cell600Label> {
        Letter::ALL
            .into_iter()
            .map(Cell600Label::unprimed)
            .chain(Letter::ALL.into_iter().map(Cell600Label::primed))
    }

    /// Whether the ray with this index belongs to this 600-cell.
    pub fn contains_ray(&self, index: u32) -> bool {
        let i = (index - 1) as usize;
        if self.primed {
            (i % 60) / 12 == self.letter.index()
        } else {
            i / 60 == self.letter.index()
        }
    }
}

impl PartialOrd for Cell600Label {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell600Label {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.primed, self.letter).cmp(&(other.primed, other.letter))
    }
}

impl fmt::Display for Cell600Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.letter.as_char(),
            if self.primed { "'" } else { "" }
        )
    }
}

impl FromStr for Cell600Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownCellLabel(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().and_then(Letter::from_char).ok_or_else(bad)?;
        match chars.as_str() {
            "" => Ok(Cell600Label::unprimed(letter)),
            "'" => Ok(Cell600Label::primed(letter)),
            _ => Err(bad()),
        }
    }
}

/// A 24-cell: the 12-ray intersection of a primed row and an unprimed column,
/// written canonically "X'Y" (row letter primed, then column letter).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell24Label {
    /// Primed row letter.
    pub row: Letter,
    /// Unprimed column letter.
    pub col: Letter,
}

impl Cell24Label {
    pub fn new(row: Letter, col: Letter) -> Self {
        Cell24Label { row, col }
    }

    /// The 12 ray indices of this block.
    pub fn ray_indices(&self) -> impl Iterator<Item = u32> {
        let start = 60 * self.col.index() as u32 + 12 * self.row.index() as u32;
        start + 1..=start + 12
    }

    /// All 25 block labels, row-major.
    pub fn all() -> Vec<Cell24Label> {
        Letter::ALL
            .into_iter()
            .flat_map(|row| Letter::ALL.into_iter().map(move |col| Cell24Label::new(row, col)))
            .collect()
    }
}

impl fmt::Display for Cell24Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}'{}", self.row.as_char(), self.col.as_char())
    }
}

impl FromStr for Cell24Label {
    type Err = Error;

    /// Accepts the canonical "X'Y" as well as "YX'".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownCellLabel(s.to_string());
        let chars: Vec<char> = s.trim().chars().collect();
        match chars.as_slice() {
            [r, '\'', c] => {
                let row = Letter::from_char(*r).ok_or_else(bad)?;
                let col = Letter::from_char(*c).ok_or_else(bad)?;
                Ok(Cell24Label::new(row, col))
            }
            [c, r, '\''] => {
                let row = Letter::from_char(*r).ok_or_else(bad)?;
                let col = Letter::from_char(*c).ok_or_else(bad)?;
                Ok(Cell24Label::new(row, col))
            }
            _ => Err(bad()),
        }
    }
}

/// Operator names. U, V, W are symmetries of the full ray set; X and Y only
/// of the 600-cells A and A' respectively.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OperatorName {
    U,
    V,
    W,
    X,
    Y,
}

impl OperatorName {
    pub fn as_char(self) -> char {
        match self {
            OperatorName::U => 'U',
            OperatorName::V => 'V',
            OperatorName::W => 'W',
            OperatorName::X => 'X',
            OperatorName::Y => 'Y',
        }
    }

    pub fn period(self) -> u32 {
        match self {
            OperatorName::U => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for OperatorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U" | "u" => Ok(OperatorName::U),
            "V" | "v" => Ok(OperatorName::V),
            "W" | "w" => Ok(OperatorName::W),
            "X" | "x" => Ok(OperatorName::X),
            "Y" | "y" => Ok(OperatorName::Y),
            other => Err(Error::UnknownCellLabel(other.to_string())),
        }
    }
}

/// An exact rotation operator: orthogonal 4×4 golden matrix whose stated
/// power is the identity. Both properties are verified at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotationOperator {
    pub name: OperatorName,
    pub matrix: GoldenMatrix4,
    pub period: u32,
}

/// Builds the named operator from its exact matrix table.
///
/// The matrices for W and Y are stored negated relative to their raw
/// transcriptions: as transcribed they are isoclinic rotations by π/5 whose
/// fifth power is −I, and since −I acts trivially on projective rays, the
/// sign-lifted versions generate the same ray action while satisfying
/// matrix^period = +I exactly.
pub fn make_operator(name: OperatorName) -> RotationOperator {
    let g = GoldenNumber::halves;
    // Entry shorthand, all in halves (p + qτ)/2:
    //   1/2 = g(1,0)   τ/2 = g(0,1)   1/(2τ) = (τ-1)/2 = g(-1,1)
    let rows = match name {
        OperatorName::U => [
            [g(1, 0), g(1, 0), g(1, 0), g(-1, 0)],
            [g(1, 0), g(1, 0), g(-1, 0), g(1, 0)],
            [g(1, 0), g(-1, 0), g(1, 0), g(1, 0)],
            [g(1, 0), g(-1, 0), g(-1, 0), g(-1, 0)],
        ],
        OperatorName::V => [
            [g(-1, 1), g(0, -1), g(0, 0), g(1, 0)],
            [g(0, 1), g(-1, 1), g(1, 0), g(0, 0)],
            [g(0, 0), g(-1, 0), g(-1, 1), g(0, -1)],
            [g(-1, 0), g(0, 0), g(0, 1), g(-1, 1)],
        ],
        OperatorName::W => [
            [g(0, -1), g(0, 0), g(1, 0), g(1, -1)],
            [g(0, 0), g(0, -1), g(-1, 1), g(1, 0)],
            [g(-1, 0), g(1, -1), g(0, -1), g(0, 0)],
            [g(-1, 1), g(-1, 0), g(0, 0), g(0, -1)],
        ],
        OperatorName::X => [
            [g(-1, 1), g(1, 0), g(0, 0), g(0, 1)],
            [g(-1, 0), g(-1, 1), g(0, 1), g(0, 0)],
            [g(0, 0), g(0, -1), g(-1, 1), g(1, 0)],
            [g(0, -1), g(0, 0), g(-1, 0), g(-1, 1)],
        ],
        OperatorName::Y => [
            [g(-1, 1), g(0, 1), g(0, 0), g(1, 0)],
            [g(0, -1), g(-1, 1), g(-1, 0), g(0, 0)],
            [g(0, 0), g(1, 0), g(-1, 1), g(0, -1)],
            [g(-1, 0), g(0, 0), g(0, 1), g(-1, 1)],
        ],
    };
    let matrix = GoldenMatrix4::new(rows);
    let period = name.period();
    assert!(
        matrix.is_orthogonal(),
        "operator {name} matrix is not orthogonal — transcription bug"
    );
    assert!(
        matrix.pow(period) == GoldenMatrix4::identity(),
        "operator {name} does not have period {period} — transcription bug"
    );
    RotationOperator {
        name,
        matrix,
        period,
    }
}

/// A sign-canonicalized projective ray with its table coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ray {
    /// 1..=300.
    pub index: u32,
    pub vector: GoldenVector4,
    /// Column 600-cell (A..E).
    pub unprimed_cell: Letter,
    /// Row 600-cell (A'..E').
    pub primed_cell: Letter,
}

/// Block coordinates of a ray index: (unprimed cell, primed cell, 24-cell).
pub fn cell_membership(index: u32) -> Result<(Cell600Label, Cell600Label, Cell24Label)> {
    if !(1..=NUM_RAYS).contains(&index) {
        return Err(Error::RayIndexOutOfRange(index));
    }
    let i = (index - 1) as usize;
    let col = Letter::from_index(i / 60);
    let row = Letter::from_index((i % 60) / 12);
    Ok((
        Cell600Label::unprimed(col),
        Cell600Label::primed(row),
        Cell24Label::new(row, col),
    ))
}

/// Generates the 300 rays: ray 60n+12m+4l+i is the sign-canonicalized vector
/// VⁿWᵐUˡ|i⟩ for i = 1..4, l = 0..2, m, n = 0..4.
pub fn generate_rays() -> Result<Vec<Ray>> {
    let u = make_operator(OperatorName::U);
    let v = make_operator(OperatorName::V);
    let w = make_operator(OperatorName::W);

    let pow_list = |m: &GoldenMatrix4, k: u32| -> Vec<GoldenMatrix4> {
        (0..=k).map(|e| m.pow(e)).collect()
    };
    let v_pows = pow_list(&v.matrix, 4);
    let w_pows = pow_list(&w.matrix, 4);
    let u_pows = pow_list(&u.matrix, 2);

    let mut rays = Vec::with_capacity(NUM_RAYS as usize);
    for n in 0..5usize {
        for m in 0..5usize {
            let vw = v_pows[n].mul_matrix(&w_pows[m]);
            for l in 0..3usize {
                let op = vw.mul_matrix(&u_pows[l]);
                for i in 0..4usize {
                    let index = (60 * n + 12 * m + 4 * l + i + 1) as u32;
                    let vec = op.column(i).canonicalize()?;
                    debug_assert!(
                        vec.components().iter().all(GoldenNumber::has_dyadic_denominators),
                        "ray {index} has a non-dyadic denominator — construction bug"
                    );
                    debug_assert!(
                        vec.norm_sq() == GoldenNumber::one(),
                        "ray {index} is not unit norm — construction bug"
                    );
                    let (uc, pc, _) = cell_membership(index)?;
                    rays.push(Ray {
                        index,
                        vector: vec,
                        unprimed_cell: uc.letter,
                        primed_cell: pc.letter,
                    });
                }
            }
        }
    }

    let distinct: std::collections::HashSet<&GoldenVector4> =
        rays.iter().map(|r| &r.vector).collect();
    assert_eq!(
        distinct.len(),
        NUM_RAYS as usize,
        "generated rays are not pairwise distinct — geometry corruption"
    );
    Ok(rays)
}

/// An orthogonal 4-ray basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Basis {
    /// 1..=675, assigned in lexicographic order of the sorted ray 4-tuples.
    pub id: u32,
    /// Strictly increasing ray indices.
    pub rays: [u32; 4],
    pub tag: BasisTag,
}

/// Where a basis lives: a single 24-cell block (the 75 special bases whose
/// rays share both a row and a column cell) or a single 600-cell.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisTag {
    Cell24(Cell24Label),
    Cell600(Cell600Label),
}

impl BasisTag {
    /// The 600-cell label(s) this basis is assigned to: one for an ordinary
    /// basis, the row and column cells for a 24-cell basis.
    pub fn cells(&self) -> Vec<Cell600Label> {
        match *self {
            BasisTag::Cell24(c) => vec![
                Cell600Label::unprimed(c.col),
                Cell600Label::primed(c.row),
            ],
            BasisTag::Cell600(c) => vec![c],
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Cell24(c) => write!(f, "{c}"),
            BasisTag::Cell600(c) => write!(f, "{c}"),
        }
    }
}

/// Per-ray orthogonality bitmask over ray indices (bit i−1 for ray i).
pub type AdjacencyMask = [u64; 5];

fn mask_contains(mask: &AdjacencyMask, index: u32) -> bool {
    let b = (index - 1) as usize;
    mask[b / 64] >> (b % 64) & 1 == 1
}

/// Enumerates all 4-cliques of the orthogonality graph in lexicographic
/// order and tags each with its host cell(s). Aborts if the §2 counts
/// (675 bases, 9 per ray, 27 orthogonal companions) fail.
pub fn enumerate_bases(rays: &[Ray]) -> Result<Vec<Basis>> {
    let n = rays.len();
    let mut adj: Vec<AdjacencyMask> = vec![[0u64; 5]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rays[i].vector.is_orthogonal_to(&rays[j].vector) {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    for (i, m) in adj.iter().enumerate() {
        let deg: u32 = m.iter().map(|w| w.count_ones()).sum();
        assert_eq!(
            deg, 27,
            "ray {} orthogonal to {} others, expected 27 — geometry corruption",
            i + 1,
            deg
        );
    }

    let and =
        |a: &AdjacencyMask, b: &AdjacencyMask| -> AdjacencyMask { std::array::from_fn(|k| a[k] & b[k]) };
    let above = |mask: &AdjacencyMask, i: usize| -> AdjacencyMask {
        let mut out = *mask;
        for (k, w) in out.iter_mut().enumerate() {
            if k < (i + 1) / 64 {
                *w = 0;
            } else if k == (i + 1) / 64 {
                *w &= !0u64 << ((i + 1) % 64);
            }
        }
        out
    };
    let iter_bits = |mask: AdjacencyMask| {
        (0..5usize).flat_map(move |k| {
            let mut w = mask[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(64 * k + b)
                }
            })
        })
    };

    let mut bases = Vec::new();
    for i in 0..n {
        for j in iter_bits(above(&adj[i], i)) {
            let cij = and(&adj[i], &adj[j]);
            for k in iter_bits(above(&cij, j)) {
                let cijk = and(&cij, &adj[k]);
                for l in iter_bits(above(&cijk, k)) {
                    let quad = [i as u32 + 1, j as u32 + 1, k as u32 + 1, l as u32 + 1];
                    bases.push(quad);
                }
            }
        }
    }
    assert_eq!(
        bases.len(),
        NUM_BASES as usize,
        "expected 675 bases — geometry corruption"
    );

    let mut per_ray = vec![0u32; n];
    for q in &bases {
        for &r in q {
            per_ray[(r - 1) as usize] += 1;
        }
    }
    assert!(
        per_ray.iter().all(|&c| c == 9),
        "every ray must lie in exactly 9 bases — geometry corruption"
    );

    bases
        .into_iter()
        .enumerate()
        .map(|(pos, quad)| {
            let tag = tag_for(&quad)?;
            Ok(Basis {
                id: pos as u32 + 1,
                rays: quad,
                tag,
            })
        })
        .collect()
}

fn tag_for(quad: &[u32; 4]) -> Result<BasisTag> {
    let mut cols = Vec::new();
    let mut rows = Vec::new();
    for &r in quad {
        let (uc, pc, _) = cell_membership(r)?;
        cols.push(uc.letter);
        rows.push(pc.letter);
    }
    let same_col = cols.iter().all(|&c| c == cols[0]);
    let same_row = rows.iter().all(|&c| c == rows[0]);
    match (same_col, same_row) {
        (true, true) => Ok(BasisTag::Cell24(Cell24Label::new(rows[0], cols[0]))),
        (true, false) => Ok(BasisTag::Cell600(Cell600Label::unprimed(cols[0]))),
        (false, true) => Ok(BasisTag::Cell600(Cell600Label::primed(rows[0]))),
        (false, false) => unreachable!(
            "basis {quad:?} lies in no single 600-cell — geometry corruption"
        ),
    }
}

/// The ray-index action of an operator: bijection with op·v(i) = ±v(mapping(i)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RayPermutation {
    pub operator_name: OperatorName,
    /// mapping[i−1] is the image of ray i.
    pub mapping: Vec<u32>,
}

impl RayPermutation {
    pub fn apply(&self, index: u32) -> u32 {
        self.mapping[(index - 1) as usize]
    }

    /// Image of a sorted ray quadruple, re-sorted.
    pub fn apply_quad(&self, quad: &[u32; 4]) -> [u32; 4] {
        let mut out = quad.map(|r| self.apply(r));
        out.sort_unstable();
        out
    }
}

/// Computes the ray permutation induced by an operator, or reports that the
/// operator is not a symmetry of the full ray set (the expected outcome for
/// X and Y, which each preserve only one 600-cell).
pub fn ray_permutation(op: &RotationOperator, rays: &[Ray]) -> Result<RayPermutation> {
    let lut: HashMap<&GoldenVector4, u32> =
        rays.iter().map(|r| (&r.vector, r.index)).collect();
    let mut mapping = Vec::with_capacity(rays.len());
    for ray in rays {
        let image = op.matrix.mul_vector(&ray.vector).canonicalize()?;
        match lut.get(&image) {
            Some(&j) => mapping.push(j),
            None => {
                return Err(Error::NotASymmetry {
                    operator: op.name.as_char(),
                    ray: ray.index,
                })
            }
        }
    }
    let mut seen = vec![false; rays.len()];
    for &j in &mapping {
        seen[(j - 1) as usize] = true;
    }
    assert!(
        seen.iter().all(|&s| s),
        "operator {} image is not a bijection — geometry corruption",
        op.name
    );
    Ok(RayPermutation {
        operator_name: op.name,
        mapping,
    })
}

/// The fully constructed geometry: rays, bases, orthogonality masks, and the
/// ray permutations of the three full-set symmetries.
pub struct Polytope {
    rays: Vec<Ray>,
    bases: Vec<Basis>,
    adjacency: Vec<AdjacencyMask>,
    basis_ids_by_rays: HashMap<[u32; 4], u32>,
    permutations: [RayPermutation; 3],
}

impl Polytope {
    /// Builds everything from scratch; all construction-time invariants are
    /// asserted along the way.
    pub fn construct() -> Result<Polytope> {
        let rays = generate_rays()?;
        let bases = enumerate_bases(&rays)?;
        let mut adjacency: Vec<AdjacencyMask> = vec![[0u64; 5]; rays.len()];
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i].vector.is_orthogonal_to(&rays[j].vector) {
                    adjacency[i][j / 64] |= 1 << (j % 64);
                    adjacency[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let basis_ids_by_rays = bases.iter().map(|b| (b.rays, b.id)).collect();
        let permutations = [
            ray_permutation(&make_operator(OperatorName::U), &rays)?,
            ray_permutation(&make_operator(OperatorName::V), &rays)?,
            ray_permutation(&make_operator(OperatorName::W), &rays)?,
        ];
        Ok(Polytope {
            rays,
            bases,
            adjacency,
            basis_ids_by_rays,
            permutations,
        })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, index: u32) -> Result<&Ray> {
        self.rays
            .get(index.wrapping_sub(1) as usize)
            .ok_or(Error::RayIndexOutOfRange(index))
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn basis(&self, id: u32) -> Result<&Basis> {
        self.bases
            .get(id.wrapping_sub(1) as usize)
            .ok_or(Error::UnknownBasisId(id))
    }

    pub fn basis_id_of(&self, quad: &[u32; 4]) -> Option<u32> {
        self.basis_ids_by_rays.get(quad).copied()
    }

    pub fn are_orthogonal(&self, i: u32, j: u32) -> bool {
        mask_contains(&self.adjacency[(i - 1) as usize], j)
    }

    /// Ray indices orthogonal to ray i, ascending.
    pub fn orthogonal_companions(&self, i: u32) -> Vec<u32> {
        (1..=NUM_RAYS).filter(|&j| self.are_orthogonal(i, j)).collect()
    }

    /// The permutation of one of the full-set symmetries U, V, W; X and Y
    /// are rejected as not being symmetries of all 300 rays.
    pub fn permutation(&self, name: OperatorName) -> Result<&RayPermutation> {
        match name {
            OperatorName::U => Ok(&self.permutations[0]),
            OperatorName::V => Ok(&self.permutations[1]),
            OperatorName::W => Ok(&self.permutations[2]),
            _ => Err(Error::NotASymmetry {
                operator: name.as_char(),
                ray: 0,
            }),
        }
    }

    /// Map from each 600-cell to the ids of the 75 bases lying entirely
    /// inside it; the 75 24-cell bases appear in two tables each.
    pub fn basis_600cell_tables(&self) -> std::collections::BTreeMap<Cell600Label, Vec<u32>> {
        let mut tables: std::collections::BTreeMap<Cell600Label, Vec<u32>> =
            Cell600Label::all().map(|c| (c, Vec::new())).collect();
        for b in &self.bases {
            for cell in b.tag.cells() {
                tables.get_mut(&cell).unwrap().push(b.id);
            }
        }
        tables
    }
}

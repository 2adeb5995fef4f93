//! Shared helpers for the integration suites: lazily built polytope and
//! systems, the reference reduction drop-sets, the three curated proof
//! fixtures, and a brute-force criticality oracle.
#![allow(dead_code)]

use poly120::{Cell24Label, ParityProof, Polytope, RayBasisSystem};
use std::path::PathBuf;
use std::sync::OnceLock;

pub fn polytope() -> &'static Polytope {
    static P: OnceLock<Polytope> = OnceLock::new();
    P.get_or_init(|| Polytope::construct().expect("polytope construction"))
}

pub fn full_system() -> &'static RayBasisSystem {
    static S: OnceLock<RayBasisSystem> = OnceLock::new();
    S.get_or_init(|| RayBasisSystem::full_system(polytope()))
}

/// The seven reference five-/seventeen-cell reductions with their signatures.
pub const REDUCTIONS: [(&[&str], &str); 7] = [
    (&["A'A", "A'B", "A'C", "A'D", "A'E"], "240_6 - 360_4"),
    (&["A'A", "A'B", "A'C", "A'D", "B'E"], "12_2 48_3 180_6 - 312_4"),
    (&["A'A", "A'B", "A'C", "B'D", "B'E"], "60_2 180_6 - 300_4"),
    (&["A'A", "A'B", "A'C", "B'D", "C'E"], "24_2 96_3 120_6 - 264_4"),
    (&["A'A", "A'B", "B'C", "B'D", "C'E"], "72_2 48_3 120_6 - 252_4"),
    (&["A'A", "A'B", "B'C", "C'D", "D'E"], "36_2 144_3 60_6 - 216_4"),
    (
        &[
            "A'A", "A'B", "A'C", "A'D", "A'E", "B'B", "B'C", "B'D", "B'E", "C'B", "C'C",
            "C'D", "C'E", "D'B", "D'C", "D'D", "D'E",
        ],
        "36_2 48_5 12_6 - 96_4",
    ),
];

pub fn parse_cells(labels: &[&str]) -> Vec<Cell24Label> {
    labels.iter().map(|s| s.parse().expect("cell label")).collect()
}

/// The 96-basis reduced system (the seventeen-cell drop).
pub fn system_96() -> &'static RayBasisSystem {
    static S: OnceLock<RayBasisSystem> = OnceLock::new();
    S.get_or_init(|| {
        let sys = full_system().reduce(&parse_cells(REDUCTIONS[6].0));
        assert_eq!(sys.signature().to_string(), REDUCTIONS[6].1);
        sys
    })
}

/// The 19-basis proof fixture, as ray quadruples (38_2-19_4).
pub const PROOF_19_QUADS: [[u32; 4]; 19] = [
    [13, 14, 15, 16],
    [33, 34, 35, 36],
    [45, 46, 47, 48],
    [109, 110, 111, 112],
    [233, 234, 235, 236],
    [52, 15, 48, 34],
    [51, 35, 16, 45],
    [47, 33, 50, 13],
    [36, 49, 46, 14],
    [49, 300, 179, 111],
    [235, 50, 294, 172],
    [169, 120, 299, 231],
    [169, 51, 233, 296],
    [299, 110, 180, 52],
    [119, 230, 300, 172],
    [53, 230, 296, 112],
    [119, 180, 55, 234],
    [179, 236, 53, 120],
    [55, 294, 109, 231],
];

/// The 25-basis proof fixture (46_2 2_4-25_4; rays 49 and 50 are the
/// multiplicity-4 rays).  The last basis is printed in the source table as
/// (171, 50, 298, 112), but ray 171 is orthogonal to neither 50 nor 112 and
/// would occur three times; the unique single-ray correction making it a
/// basis is 171 → 177, which also restores even parity.
pub const PROOF_25_QUADS: [[u32; 4]; 25] = [
    [13, 14, 15, 16],
    [33, 34, 35, 36],
    [45, 46, 47, 48],
    [57, 58, 59, 60],
    [109, 110, 111, 112],
    [233, 234, 235, 236],
    [52, 15, 48, 34],
    [51, 35, 16, 45],
    [47, 33, 50, 13],
    [36, 49, 46, 14],
    [49, 300, 179, 111],
    [235, 50, 294, 172],
    [289, 240, 119, 51],
    [113, 236, 57, 298],
    [115, 230, 174, 52],
    [109, 60, 239, 171],
    [49, 231, 113, 176],
    [239, 50, 120, 292],
    [119, 230, 300, 172],
    [59, 120, 295, 174],
    [177, 231, 289, 58],
    [233, 110, 176, 292],
    [179, 240, 115, 294],
    [295, 234, 49, 171],
    [177, 50, 298, 112],
];

/// The 41-basis proof fixture (80_2 1_4-41_4; ray 111 is the
/// multiplicity-4 ray).
pub const PROOF_41_QUADS: [[u32; 4]; 41] = [
    [13, 14, 15, 16],
    [33, 34, 35, 36],
    [41, 42, 43, 44],
    [45, 46, 47, 48],
    [73, 74, 75, 76],
    [93, 94, 95, 96],
    [109, 110, 111, 112],
    [121, 122, 123, 124],
    [145, 146, 147, 148],
    [221, 222, 223, 224],
    [293, 294, 295, 296],
    [52, 15, 48, 34],
    [51, 35, 16, 45],
    [47, 33, 50, 13],
    [36, 49, 46, 14],
    [112, 75, 108, 94],
    [111, 95, 76, 105],
    [107, 93, 110, 73],
    [96, 109, 106, 74],
    [124, 147, 180, 166],
    [123, 167, 148, 177],
    [179, 165, 122, 145],
    [168, 121, 178, 146],
    [221, 44, 165, 106],
    [223, 166, 105, 42],
    [107, 168, 43, 222],
    [167, 224, 41, 108],
    [49, 300, 179, 111],
    [173, 296, 117, 58],
    [235, 50, 294, 172],
    [229, 180, 59, 291],
    [289, 240, 119, 51],
    [115, 230, 174, 52],
    [169, 120, 299, 231],
    [235, 178, 117, 54],
    [229, 111, 293, 56],
    [119, 230, 300, 172],
    [59, 120, 295, 174],
    [177, 231, 289, 58],
    [299, 56, 173, 240],
    [115, 54, 169, 291],
];

/// Resolves quadruples (in any ray order) to a proof in the host system.
pub fn proof_from_quads(system: &RayBasisSystem, quads: &[[u32; 4]]) -> ParityProof {
    let ids: Vec<u32> = quads
        .iter()
        .map(|q| {
            let mut sorted = *q;
            sorted.sort_unstable();
            polytope()
                .basis_id_of(&sorted)
                .unwrap_or_else(|| panic!("no basis with rays {q:?}"))
        })
        .collect();
    ParityProof::from_basis_ids(system, &ids).expect("proof construction")
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// Brute-force criticality oracle: a proof is critical iff no proper
/// nonempty odd-sized subset of its bases has all-even ray multiplicities.
/// Walks all 2^n subsets (Gray order), so only sensible for n ≤ 21.
pub fn oracle_critical(proof: &ParityProof, system: &RayBasisSystem) -> bool {
    let n = proof.basis_count() as usize;
    assert!(n <= 21, "oracle is exponential; got {n} bases");
    let matrix = system.incidence_matrix();
    let cols: Vec<Vec<u64>> = proof
        .basis_ids()
        .iter()
        .map(|&id| {
            let j = system.column_of(id).expect("proof basis in system");
            matrix.column(j).to_vec()
        })
        .collect();
    let words = cols[0].len();
    let mut acc = vec![0u64; words];
    let full: u64 = (1 << n) - 1;
    // Gray-code subset walk; subset(i) = i ^ (i >> 1)
    for i in 1..(1u64 << n) {
        let flip = (i ^ (i >> 1)) ^ ((i - 1) ^ ((i - 1) >> 1));
        let j = flip.trailing_zeros() as usize;
        for (a, c) in acc.iter_mut().zip(&cols[j]) {
            *a ^= c;
        }
        let subset = i ^ (i >> 1);
        if subset != full
            && subset.count_ones() % 2 == 1
            && acc.iter().all(|&w| w == 0)
        {
            return false;
        }
    }
    true
}

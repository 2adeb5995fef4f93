//! Exact geometry fixtures: reference ray coordinates, cell membership,
//! 600-cell spans, orbits, and the export formats.

mod common;

use common::*;
use poly120::export;
use poly120::{
    cell_membership, confining_600cells, is_confined, make_operator, orbit, ray_permutation,
    spanned_600cells, verify_parity, Cell600Label, Error, GoldenNumber, Letter, OperatorName,
    ParityProof, ProofSymbol,
};
use std::collections::BTreeSet;

fn golden(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> GoldenNumber {
    GoldenNumber::from_integer_parts(a_num, a_den, b_num, b_den).unwrap()
}

#[test]
fn reference_ray_coordinates() {
    let polytope = polytope();
    // Ray 13 = (τ/2, 0, 1/2, −1/(2τ)); note 1/τ = τ − 1.
    let ray13 = polytope.ray(13).unwrap();
    assert_eq!(
        ray13.vector.components(),
        &[golden(0, 1, 1, 2), golden(0, 1, 0, 1), golden(1, 2, 0, 1), golden(1, 2, -1, 2)]
    );
    // Ray 61 = (1/(2τ), τ/2, 0, −1/2).
    let ray61 = polytope.ray(61).unwrap();
    assert_eq!(
        ray61.vector.components(),
        &[golden(-1, 2, 1, 2), golden(0, 1, 1, 2), golden(0, 1, 0, 1), golden(-1, 2, 0, 1)]
    );
    // The first four rays are the computational basis.
    for i in 1..=4u32 {
        let ray = polytope.ray(i).unwrap();
        for (k, c) in ray.vector.components().iter().enumerate() {
            let expected =
                if k as u32 == i - 1 { GoldenNumber::one() } else { GoldenNumber::zero() };
            assert_eq!(*c, expected, "ray {i} component {k}");
        }
    }
}

#[test]
fn cell_membership_block_layout() {
    assert_eq!(
        cell_membership(1).unwrap(),
        (
            Cell600Label::unprimed(Letter::A),
            Cell600Label::primed(Letter::A),
            "A'A".parse().unwrap()
        )
    );
    assert_eq!(
        cell_membership(73).unwrap(),
        (
            Cell600Label::unprimed(Letter::B),
            Cell600Label::primed(Letter::B),
            "B'B".parse().unwrap()
        )
    );
    assert_eq!(
        cell_membership(300).unwrap(),
        (
            Cell600Label::unprimed(Letter::E),
            Cell600Label::primed(Letter::E),
            "E'E".parse().unwrap()
        )
    );
    assert!(matches!(cell_membership(0), Err(Error::RayIndexOutOfRange(0))));
    assert!(matches!(cell_membership(301), Err(Error::RayIndexOutOfRange(301))));

    // Both spellings of a 24-cell label name the same block.
    let primed_first: poly120::Cell24Label = "C'B".parse().unwrap();
    let column_first: poly120::Cell24Label = "BC'".parse().unwrap();
    assert_eq!(primed_first, column_first);
    assert_eq!(primed_first.to_string(), "C'B");

    // Every ray agrees with its host cells.
    let polytope = polytope();
    for ray in polytope.rays() {
        let (col, row, cell) = cell_membership(ray.index).unwrap();
        assert_eq!(col, Cell600Label::unprimed(ray.unprimed_cell));
        assert_eq!(row, Cell600Label::primed(ray.primed_cell));
        assert!(col.contains_ray(ray.index));
        assert!(row.contains_ray(ray.index));
        assert!(cell.ray_indices().any(|i| i == ray.index));
    }
}

#[test]
fn span_and_confinement() {
    let full = full_system();

    // A single basis from the 600-cell A table spans exactly {A}.
    let id = polytope().basis_id_of(&[15, 34, 48, 52]).unwrap();
    let single = ParityProof::from_basis_ids(full, &[id]).unwrap();
    let span: BTreeSet<String> =
        spanned_600cells(&single).iter().map(|c| c.to_string()).collect();
    assert_eq!(span, BTreeSet::from(["A".to_string()]));

    // The 19-basis proof spans seven 600-cells, the 41-basis proof all ten.
    let nineteen = proof_from_quads(full, &PROOF_19_QUADS);
    let span: BTreeSet<String> =
        spanned_600cells(&nineteen).iter().map(|c| c.to_string()).collect();
    let expected: BTreeSet<String> =
        ["A", "B", "D", "B'", "C'", "D'", "E'"].iter().map(|s| s.to_string()).collect();
    assert_eq!(span, expected);
    assert!(!is_confined(&nineteen));
    assert!(confining_600cells(&nineteen).is_empty());

    let fortyone = proof_from_quads(full, &PROOF_41_QUADS);
    assert_eq!(spanned_600cells(&fortyone).len(), 10);

    // A 13-basis proof living inside the complete 600-cell E' is confined:
    // E' contains every basis, even though two of them are 24-cell bases
    // and so also carry the unprimed labels A and B into the spanned union.
    let system = system_96();
    let ids = [266, 268, 270, 271, 296, 297, 299, 301, 304, 309, 315, 436, 437];
    let thirteen = ParityProof::from_basis_ids(system, &ids).unwrap();
    assert!(verify_parity(&thirteen, system).unwrap());
    assert!(is_confined(&thirteen));
    assert_eq!(
        confining_600cells(&thirteen),
        BTreeSet::from([Cell600Label::primed(Letter::E)])
    );
    assert_eq!(
        spanned_600cells(&thirteen),
        BTreeSet::from([
            Cell600Label::unprimed(Letter::A),
            Cell600Label::unprimed(Letter::B),
            Cell600Label::primed(Letter::E),
        ])
    );
}

#[test]
fn orbits_under_symmetries() {
    let polytope = polytope();
    let full = full_system();
    let proof = proof_from_quads(full, &PROOF_19_QUADS);

    // No generators: the closure is the proof alone.
    let trivial = orbit(&proof, &[], full).unwrap();
    assert_eq!(trivial, BTreeSet::from([proof.clone()]));

    // V has period 5 and moves ray 13, so the orbit has exactly 5 members.
    let v = polytope.permutation(OperatorName::V).unwrap().clone();
    let closure = orbit(&proof, &[v.clone()], full).unwrap();
    assert_eq!(closure.len(), 5);
    assert!(closure.contains(&proof));
    for image in &closure {
        assert!(verify_parity(image, full).unwrap());
    }

    // Applying V five times is the identity on every ray.
    for i in 1..=300u32 {
        let mut j = i;
        for _ in 0..5 {
            j = v.apply(j);
        }
        assert_eq!(j, i);
    }

    // X is not a symmetry of the whole ray set.
    assert!(matches!(
        polytope.permutation(OperatorName::X),
        Err(Error::NotASymmetry { operator: 'X', .. })
    ));
    assert!(matches!(
        ray_permutation(&make_operator(OperatorName::X), polytope.rays()),
        Err(Error::NotASymmetry { operator: 'X', .. })
    ));

    // V fixes the row of 600-cell E', so a proof inside E' orbits within the
    // 96-basis system fine...
    let system = system_96();
    let ids = [266, 268, 270, 271, 296, 297, 299, 301, 304, 309, 315, 436, 437];
    let confined = ParityProof::from_basis_ids(system, &ids).unwrap();
    let closure = orbit(&confined, &[v.clone()], system).unwrap();
    assert_eq!(closure.len(), 5);
    for image in &closure {
        assert!(verify_parity(image, system).unwrap());
    }

    // ...but a proof using the column-A cells has V-images in dropped cells.
    let ids = [
        142, 143, 148, 153, 158, 180, 231, 266, 268, 270, 271, 296, 297, 301, 304, 309, 315,
        436, 437,
    ];
    let spanning = ParityProof::from_basis_ids(system, &ids).unwrap();
    assert!(matches!(
        orbit(&spanning, &[v], system),
        Err(Error::ImageNotABasis { operator: 'V', .. })
    ));
}

#[test]
fn ray_exports() {
    let polytope = polytope();

    let csv = export::rays_csv(polytope);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 301);
    assert_eq!(lines[0], "index,x1,x2,x3,x4,col,row");
    assert!(lines[1].starts_with("1,"));
    assert!(lines[1].ends_with(",A,A'"));
    assert!(lines[300].starts_with("300,"));
    assert!(lines[300].ends_with(",E,E'"));

    let json = export::rays_json(polytope);
    let rays = json.as_array().unwrap();
    assert_eq!(rays.len(), 300);
    assert_eq!(rays[0]["index"], 1);
    assert_eq!(rays[0]["coords"].as_array().unwrap().len(), 4);
    assert_eq!(rays[72]["cell"]["col"], "B");
    assert_eq!(rays[72]["cell"]["row"], "B'");
}

#[test]
fn basis_and_graph_exports() {
    let polytope = polytope();
    let full = full_system();

    let csv = export::bases_csv(full);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 676);
    assert_eq!(lines[0], "id,r1,r2,r3,r4,tag");
    assert_eq!(lines[1], "1,1,2,3,4,A'A");

    let json = export::bases_json(full);
    assert_eq!(json.as_array().unwrap().len(), 675);

    let adjacency = export::graph_adjacency(polytope);
    let lines: Vec<&str> = adjacency.lines().collect();
    assert_eq!(lines.len(), 300);
    for line in &lines {
        let (_, rest) = line.split_once(": ").unwrap();
        assert_eq!(rest.split_whitespace().count(), 27);
    }

    let dot = export::graph_dot(polytope);
    assert!(dot.starts_with("graph orthogonality {"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches(" -- ").count(), 300 * 27 / 2);
}

#[test]
fn system_export_roundtrip() {
    let system = system_96();
    let text = export::system_json(system).to_string();
    let signature = export::signature_of_system_json(&text).unwrap();
    assert_eq!(signature, system.signature());
    assert_eq!(signature.to_string(), "36_2 48_5 12_6 - 96_4");
}

#[test]
fn signature_of_fixture_quads() {
    let signature = export::signature_of_quads(&PROOF_19_QUADS);
    assert_eq!(signature.to_string(), "38_2 - 19_4");
    let signature = export::signature_of_quads(&PROOF_25_QUADS);
    assert_eq!(signature.to_string(), "46_2 2_4 - 25_4");
    let signature = export::signature_of_quads(&PROOF_41_QUADS);
    assert_eq!(signature.to_string(), "80_2 1_4 - 41_4");

    // The proof symbols carry the same histogram in the dash-joined notation.
    let symbol: ProofSymbol = "46_2 2_4-25_4".parse().unwrap();
    assert_eq!(symbol.ray_part, vec![(46, 2), (2, 4)]);
    assert_eq!(symbol.basis_count, 25);
    assert!(symbol.accounting_holds());
}

#[test]
fn multiplicity_four_rays_of_fixtures() {
    let full = full_system();
    let twentyfive = proof_from_quads(full, &PROOF_25_QUADS);
    let quads: Vec<u32> = twentyfive
        .ray_multiplicities()
        .iter()
        .filter(|&(_, &m)| m == 4)
        .map(|(&r, _)| r)
        .collect();
    assert_eq!(quads, vec![49, 50]);

    let fortyone = proof_from_quads(full, &PROOF_41_QUADS);
    let quads: Vec<u32> = fortyone
        .ray_multiplicities()
        .iter()
        .filter(|&(_, &m)| m == 4)
        .map(|(&r, _)| r)
        .collect();
    assert_eq!(quads, vec![111]);
}

//! Exact construction and analysis of the Kochen-Specker ray-basis system of
//! the 120-cell.
//!
//! The 600 vertices of the 120-cell define 300 projective rays in four
//! dimensions whose coordinates live in the golden field ℚ(√5).  Those rays
//! form 675 tetrads of mutually orthogonal rays ("bases"), and the resulting
//! incidence structure hosts parity proofs of the Kochen-Specker theorem:
//! odd-sized sets of bases in which every participating ray occurs an even
//! number of times.
//!
//! The crate is organised as a pipeline:
//!
//! * [`golden`] — exact arithmetic in ℚ(τ) with τ² = τ + 1, plus 4-vectors
//!   and 4×4 matrices over it.
//! * [`polytope`] — the five rotation operators, generation and
//!   canonicalization of the 300 rays, enumeration of the 675 bases, and the
//!   24-cell / 600-cell block structure.
//! * [`incidence`] — ray-basis systems, multiplicity signatures, reduction by
//!   dropping 24-cells, and packed GF(2) incidence matrices.
//! * [`paritysearch`] — verification, classification, criticality testing,
//!   discovery (kernel enumeration and incremental backtracking), symmetry
//!   orbits, and cataloging of parity proofs.
//! * [`certificate`] — self-contained JSON proof certificates and their
//!   validation.
//! * [`export`] — JSON/CSV/DOT serializations of rays, bases, and the
//!   orthogonality graph.
//!
//! All arithmetic is exact; no floating-point value ever decides a result.

pub mod certificate;
pub mod error;
pub mod export;
pub mod golden;
pub mod incidence;
pub mod paritysearch;
pub mod polytope;

pub use error::{Error, Result};
pub use golden::{GoldenMatrix4, GoldenNumber, GoldenVector4};
pub use incidence::{BitVec, Gf2Matrix, RayBasisSystem, SystemSignature};
pub use certificate::ProofCertificate;
pub use paritysearch::{
    catalog, classify, confining_600cells, is_confined, is_critical, kernel_basis, orbit,
    search, search_incremental, search_kernel, spanned_600cells, verify_parity, Catalog,
    CatalogEntry, ParityProof, ProofSymbol, SearchConfig, SearchMode, SystemRef,
};
pub use polytope::{
    cell_membership, enumerate_bases, generate_rays, make_operator, ray_permutation, Basis,
    BasisTag, Cell24Label, Cell600Label, Letter, OperatorName, Polytope, Ray, RayPermutation,
    RotationOperator, NUM_BASES, NUM_RAYS,
};

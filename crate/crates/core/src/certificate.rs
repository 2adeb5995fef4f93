//! Self-contained JSON certificates for parity proofs.
//!
//! A certificate names its host system (by the 24-cells dropped from the
//! full system), lists the proof's basis ids and their ray quadruples, and
//! records the classification, criticality, and 600-cell span.  Validation
//! re-derives every one of those claims from scratch and reports the first
//! violated invariant by name.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::RayBasisSystem;
use crate::paritysearch::{
    classify, is_critical, spanned_600cells, verify_parity, ParityProof, ProofSymbol, SystemRef,
};
use crate::polytope::{Cell24Label, Polytope};

/// Host-system stanza: either the full system or a list of dropped 24-cells.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct SystemStanza {
    pub drop: DropSpec,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(untagged)]
pub enum DropSpec {
    Labels(Vec<String>),
    Keyword(String),
}

impl DropSpec {
    /// The dropped 24-cells; the keyword form must be exactly "full".
    pub fn cells(&self) -> Result<BTreeSet<Cell24Label>> {
        match self {
            DropSpec::Keyword(word) if word == "full" => Ok(BTreeSet::new()),
            DropSpec::Keyword(word) => Err(Error::CertificateInvariant {
                invariant: "system-drop",
                detail: format!("unknown system keyword {word:?} (expected \"full\")"),
            }),
            DropSpec::Labels(labels) => {
                let mut cells = BTreeSet::new();
                for label in labels {
                    cells.insert(label.parse::<Cell24Label>()?);
                }
                Ok(cells)
            }
        }
    }

    pub fn from_cells(cells: &BTreeSet<Cell24Label>) -> DropSpec {
        if cells.is_empty() {
            DropSpec::Keyword("full".to_string())
        } else {
            DropSpec::Labels(cells.iter().map(|c| c.to_string()).collect())
        }
    }
}

/// On-disk proof certificate.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ProofCertificate {
    pub system: SystemStanza,
    pub basis_ids: Vec<u32>,
    pub bases: Vec<[u32; 4]>,
    pub symbol: String,
    pub critical: bool,
    pub spanned_600cells: Vec<String>,
    pub rng_seed: Option<u64>,
    pub mode: String,
}

impl ProofCertificate {
    /// Certifies a proof against its host system, deriving symbol,
    /// criticality and span.
    pub fn from_proof(
        proof: &ParityProof,
        system: &RayBasisSystem,
        rng_seed: Option<u64>,
        mode: &str,
    ) -> Result<ProofCertificate> {
        if !verify_parity(proof, system)? {
            return Err(Error::ProofNotVerified);
        }
        Ok(ProofCertificate {
            system: SystemStanza { drop: DropSpec::from_cells(system.dropped_cells()) },
            basis_ids: proof.basis_ids().to_vec(),
            bases: proof.bases().to_vec(),
            symbol: classify(proof)?.to_string(),
            critical: is_critical(proof, system)?,
            spanned_600cells: spanned_600cells(proof).iter().map(|c| c.to_string()).collect(),
            rng_seed,
            mode: mode.to_string(),
        })
    }

    /// Rebuilds the host system named by the certificate.
    pub fn resolve_system(&self, polytope: &Polytope) -> Result<RayBasisSystem> {
        let cells = self.system.drop.cells()?;
        let full = RayBasisSystem::full_system(polytope);
        if cells.is_empty() {
            Ok(full)
        } else {
            let labels: Vec<Cell24Label> = cells.into_iter().collect();
            Ok(full.reduce(&labels))
        }
    }

    /// The proof as written, without validation.
    pub fn to_proof(&self) -> Result<ParityProof> {
        let cells = self.system.drop.cells()?;
        Ok(ParityProof::from_parts(self.basis_ids.clone(), self.bases.clone(), SystemRef(cells)))
    }

    /// Re-derives every claim.  Returns the verified proof, or the first
    /// violated invariant by name.
    pub fn validate(&self, polytope: &Polytope) -> Result<ParityProof> {
        let fail = |invariant: &'static str, detail: String| Error::CertificateInvariant {
            invariant,
            detail,
        };
        let system = self.resolve_system(polytope)?;
        if self.basis_ids.len() != self.bases.len() {
            return Err(fail(
                "bases-match-ids",
                format!("{} ids but {} quadruples", self.basis_ids.len(), self.bases.len()),
            ));
        }
        for (&id, quad) in self.basis_ids.iter().zip(&self.bases) {
            let b = system.basis(id)?;
            if b.rays != *quad {
                return Err(fail(
                    "bases-match-ids",
                    format!("basis {id} has rays {:?}, certificate lists {:?}", b.rays, quad),
                ));
            }
        }
        let proof = ParityProof::from_basis_ids(&system, &self.basis_ids)?;
        if !verify_parity(&proof, &system)? {
            return Err(fail("parity", "odd-basis/even-ray conditions fail".to_string()));
        }
        let symbol = classify(&proof)?;
        let claimed: ProofSymbol = self.symbol.parse()?;
        if symbol != claimed {
            return Err(fail(
                "symbol",
                format!("recomputed {symbol}, certificate claims {claimed}"),
            ));
        }
        let critical = is_critical(&proof, &system)?;
        if critical != self.critical {
            return Err(fail(
                "critical",
                format!("recomputed {critical}, certificate claims {}", self.critical),
            ));
        }
        let spanned: BTreeSet<String> =
            spanned_600cells(&proof).iter().map(|c| c.to_string()).collect();
        let claimed_span: BTreeSet<String> = self.spanned_600cells.iter().cloned().collect();
        if spanned != claimed_span {
            return Err(fail(
                "spanned-600cells",
                format!("recomputed {spanned:?}, certificate claims {claimed_span:?}"),
            ));
        }
        Ok(proof)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<ProofCertificate> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<ProofCertificate> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

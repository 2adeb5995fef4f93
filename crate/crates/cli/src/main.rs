//! `poly120` — command-line front end for the poly120 library.
//!
//! Subcommands fall into three groups:
//!
//! * exports of the fixed geometry (`rays`, `bases`, `graph`, `signature`,
//!   `reduce`),
//! * proof discovery (`search`, `catalog`),
//! * certificate handling (`verify`, `classify`, `critical`, `orbit`).
//!
//! Exit codes: 0 on success, 1 when a certificate fails verification, 2 for
//! usage errors (bad flags, unreadable input, infeasible explicit requests).

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use poly120::certificate::ProofCertificate;
use poly120::paritysearch::{catalog, orbit, search, ParityProof, SearchConfig, SearchMode};
use poly120::polytope::{Cell24Label, OperatorName, Polytope, RayPermutation};
use poly120::{export, Error, RayBasisSystem};

#[derive(Parser)]
#[command(
    name = "poly120",
    version,
    about = "Rays, bases, reductions and parity proofs of the 120-cell",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Export the 300 rays with exact golden-field coordinates.
    Rays {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the orthogonal bases of a (possibly reduced) system.
    Bases {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Comma-separated 24-cell labels to drop (e.g. "A'A,B'C"); omit for
        /// the full system.
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the 300-vertex orthogonality graph.
    Graph {
        /// Emit Graphviz DOT instead of the plain adjacency list.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the ray-multiplicity signature of a system.
    Signature {
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Drop 24-cells and export the surviving ray-basis system as JSON.
    Reduce {
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a system for parity proofs; emits a JSON array of certificates.
    Search {
        /// Odd number of bases to aim for.
        #[arg(long)]
        target: u32,
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        /// incremental, kernel_enumerate (alias kernel), or hybrid.
        #[arg(long, default_value = "hybrid")]
        mode: String,
        /// Basis id the incremental search grows from; omit to sweep all.
        #[arg(long)]
        seed_basis: Option<u32>,
        /// Tie-breaking RNG seed; recorded in the emitted certificates.
        #[arg(long)]
        rng_seed: Option<u64>,
        /// Fail instead of generating a seed when --rng-seed is absent.
        #[arg(long)]
        reproducible: bool,
        /// Stop after this many proofs (deterministic cap, applied after
        /// canonical ordering).
        #[arg(long)]
        max_solutions: Option<usize>,
        /// Kernel enumeration walks 2^dim vectors; refuse beyond this.
        #[arg(long)]
        kernel_dim_limit: Option<usize>,
        /// Also report proofs confined to a single 600-cell.
        #[arg(long)]
        include_confined: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a proof certificate and print its symbol and criticality.
    Verify {
        #[arg(long)]
        proof: PathBuf,
    },
    /// Print the ray-multiplicity symbol of a certified proof.
    Classify {
        #[arg(long)]
        proof: PathBuf,
    },
    /// Report whether a certified proof is critical.
    Critical {
        #[arg(long)]
        proof: PathBuf,
    },
    /// Close a certified proof under symmetry generators (U, V, W).
    Orbit {
        #[arg(long)]
        proof: PathBuf,
        /// Comma-separated generator names, e.g. "V" or "U,V,W".
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tally proof symbols over a range of basis counts.
    Catalog {
        /// Smallest basis count to report.
        #[arg(long)]
        min: u32,
        /// Largest basis count to walk (must be odd).
        #[arg(long)]
        max: u32,
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        #[arg(long, default_value = "hybrid")]
        mode: String,
        #[arg(long)]
        kernel_dim_limit: Option<usize>,
        #[arg(long)]
        include_confined: bool,
        #[arg(long)]
        rng_seed: Option<u64>,
        #[arg(long)]
        reproducible: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed run, tagged with the exit code it maps to.
enum Failure {
    /// Exit 1: certificate or proof content failed verification.
    Verification(String),
    /// Exit 2: the request itself was unusable.
    Usage(String),
}

type CliResult<T> = Result<T, Failure>;

fn usage<E: Display>(err: E) -> Failure {
    Failure::Usage(err.to_string())
}

fn verification<E: Display>(err: E) -> Failure {
    Failure::Verification(err.to_string())
}

/// Search-time errors are complaints about the request, not about a proof.
fn search_failure(err: Error) -> Failure {
    usage(err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn construct() -> CliResult<Polytope> {
    Polytope::construct().map_err(usage)
}

fn build_system(polytope: &Polytope, drop: &[String]) -> CliResult<RayBasisSystem> {
    let full = RayBasisSystem::full_system(polytope);
    if drop.is_empty() {
        return Ok(full);
    }
    let mut cells: Vec<Cell24Label> = Vec::with_capacity(drop.len());
    for label in drop {
        cells.push(label.parse().map_err(usage)?);
    }
    Ok(full.reduce(&cells))
}

/// Explicit seed wins; `--reproducible` without one is an error; otherwise a
/// fresh seed is drawn and announced so the run can be replayed.
fn resolve_seed(rng_seed: Option<u64>, reproducible: bool) -> CliResult<u64> {
    match (rng_seed, reproducible) {
        (Some(seed), _) => Ok(seed),
        (None, true) => Err(Failure::Usage(
            "--reproducible requires an explicit --rng-seed".to_string(),
        )),
        (None, false) => {
            let seed: u64 = rand::random();
            eprintln!("rng_seed: {seed}");
            Ok(seed)
        }
    }
}

fn load_certificate(path: &PathBuf) -> CliResult<ProofCertificate> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    ProofCertificate::from_json(&text).map_err(verification)
}

/// Reads, parses and fully validates a certificate; any violated invariant
/// surfaces by name with exit code 1.
fn validated(
    polytope: &Polytope,
    path: &PathBuf,
) -> CliResult<(ProofCertificate, ParityProof, RayBasisSystem)> {
    let certificate = load_certificate(path)?;
    let proof = certificate.validate(polytope).map_err(verification)?;
    let system = certificate.resolve_system(polytope).map_err(verification)?;
    Ok((certificate, proof, system))
}

fn emit(out: Option<&PathBuf>, content: &str) -> CliResult<()> {
    let text = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()) {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
                Err(e) => Err(usage(e)),
            }
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Rays { format, out } => {
            let polytope = construct()?;
            let content = match format {
                Format::Csv => export::rays_csv(&polytope),
                Format::Json => {
                    serde_json::to_string_pretty(&export::rays_json(&polytope)).map_err(usage)?
                }
                Format::Text => {
                    return Err(Failure::Usage(
                        "rays supports --format json or csv".to_string(),
                    ))
                }
            };
            emit(out.as_ref(), &content)
        }
        Command::Bases { format, drop, out } => {
            let polytope = construct()?;
            let system = build_system(&polytope, &drop)?;
            let content = match format {
                Format::Csv => export::bases_csv(&system),
                Format::Json => {
                    serde_json::to_string_pretty(&export::bases_json(&system)).map_err(usage)?
                }
                Format::Text => {
                    return Err(Failure::Usage(
                        "bases supports --format json or csv".to_string(),
                    ))
                }
            };
            emit(out.as_ref(), &content)
        }
        Command::Graph { dot, out } => {
            let polytope = construct()?;
            let content = if dot {
                export::graph_dot(&polytope)
            } else {
                export::graph_adjacency(&polytope)
            };
            emit(out.as_ref(), &content)
        }
        Command::Signature { drop, format } => {
            let polytope = construct()?;
            let system = build_system(&polytope, &drop)?;
            let signature = system.signature();
            let content = match format {
                Format::Text => signature.to_string(),
                Format::Json => serde_json::to_string_pretty(&json!({
                    "signature": signature.to_string(),
                    "ray_count": system.ray_count(),
                    "basis_count": system.basis_count(),
                }))
                .map_err(usage)?,
                Format::Csv => {
                    return Err(Failure::Usage(
                        "signature supports --format text or json".to_string(),
                    ))
                }
            };
            emit(None, &content)
        }
        Command::Reduce { drop, out } => {
            let polytope = construct()?;
            let system = build_system(&polytope, &drop)?;
            let content =
                serde_json::to_string_pretty(&export::system_json(&system)).map_err(usage)?;
            emit(out.as_ref(), &content)
        }
        Command::Search {
            target,
            drop,
            mode,
            seed_basis,
            rng_seed,
            reproducible,
            max_solutions,
            kernel_dim_limit,
            include_confined,
            out,
        } => {
            let polytope = construct()?;
            let system = build_system(&polytope, &drop)?;
            let mode: SearchMode = mode.parse().map_err(usage)?;
            let seed = resolve_seed(rng_seed, reproducible)?;
            let mut config = SearchConfig::new(target);
            config.mode = mode;
            config.seed_basis = seed_basis;
            config.rng_seed = seed;
            config.include_confined = include_confined;
            if let Some(cap) = max_solutions {
                config.max_solutions = cap;
            }
            if let Some(limit) = kernel_dim_limit {
                config.kernel_dim_limit = limit;
            }
            let proofs = search(&system, &config).map_err(search_failure)?;
            eprintln!("found {} proofs", proofs.len());
            let mut certificates: Vec<Value> = Vec::with_capacity(proofs.len());
            for proof in &proofs {
                let certificate =
                    ProofCertificate::from_proof(proof, &system, Some(seed), &mode.to_string())
                        .map_err(usage)?;
                certificates.push(serde_json::to_value(&certificate).map_err(usage)?);
            }
            let content = serde_json::to_string_pretty(&certificates).map_err(usage)?;
            emit(out.as_ref(), &content)
        }
        Command::Verify { proof } => {
            let polytope = construct()?;
            let (certificate, _, _) = validated(&polytope, &proof)?;
            emit(
                None,
                &format!("{} critical={}", certificate.symbol, certificate.critical),
            )
        }
        Command::Classify { proof } => {
            let polytope = construct()?;
            let (certificate, _, _) = validated(&polytope, &proof)?;
            emit(None, &certificate.symbol)
        }
        Command::Critical { proof } => {
            let polytope = construct()?;
            let (certificate, _, _) = validated(&polytope, &proof)?;
            emit(None, &format!("critical={}", certificate.critical))
        }
        Command::Orbit {
            proof,
            generators,
            format,
            out,
        } => {
            let polytope = construct()?;
            let (_, seed_proof, system) = validated(&polytope, &proof)?;
            let mut perms: Vec<RayPermutation> = Vec::with_capacity(generators.len());
            for name in &generators {
                let operator: OperatorName = name.parse().map_err(usage)?;
                perms.push(polytope.permutation(operator).map_err(usage)?.clone());
            }
            let members = match orbit(&seed_proof, &perms, &system) {
                Ok(members) => members,
                // Leaving the host system is a property of the proof/system
                // pair, not of the flags.
                Err(e @ Error::ImageNotABasis { .. }) => return Err(verification(e)),
                Err(e) => return Err(usage(e)),
            };
            let content = match format {
                Format::Text => {
                    let mut lines = vec![format!("orbit size {}", members.len())];
                    lines.extend(members.iter().map(|p| {
                        p.basis_ids()
                            .iter()
                            .map(|id| id.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    }));
                    lines.join("\n")
                }
                Format::Json => {
                    let ids: Vec<Vec<u32>> =
                        members.iter().map(|p| p.basis_ids().to_vec()).collect();
                    serde_json::to_string_pretty(&ids).map_err(usage)?
                }
                Format::Csv => {
                    return Err(Failure::Usage(
                        "orbit supports --format text or json".to_string(),
                    ))
                }
            };
            emit(out.as_ref(), &content)
        }
        Command::Catalog {
            min,
            max,
            drop,
            mode,
            kernel_dim_limit,
            include_confined,
            rng_seed,
            reproducible,
            format,
            out,
        } => {
            let polytope = construct()?;
            let system = build_system(&polytope, &drop)?;
            let mode: SearchMode = mode.parse().map_err(usage)?;
            let seed = resolve_seed(rng_seed, reproducible)?;
            let mut config = SearchConfig::new(max);
            config.mode = mode;
            config.rng_seed = seed;
            config.include_confined = include_confined;
            if let Some(limit) = kernel_dim_limit {
                config.kernel_dim_limit = limit;
            }
            let result = catalog(&system, min, max, &config).map_err(search_failure)?;
            let content = match format {
                Format::Text => {
                    let mut lines = vec![format!("exhaustive: {}", result.exhaustive)];
                    for (count, entries) in &result.by_count {
                        for entry in entries {
                            let confined = if entry.confined { " confined" } else { "" };
                            lines.push(format!(
                                "{count} {} proofs={} critical={}{confined}",
                                entry.symbol, entry.proofs, entry.critical
                            ));
                        }
                    }
                    lines.join("\n")
                }
                Format::Json => {
                    let mut counts = serde_json::Map::new();
                    for (count, entries) in &result.by_count {
                        let list: Vec<Value> = entries
                            .iter()
                            .map(|entry| {
                                json!({
                                    "symbol": entry.symbol.to_string(),
                                    "proofs": entry.proofs,
                                    "critical": entry.critical,
                                    "confined": entry.confined,
                                    "example_basis_ids": entry.example_basis_ids,
                                })
                            })
                            .collect();
                        counts.insert(count.to_string(), Value::Array(list));
                    }
                    serde_json::to_string_pretty(&json!({
                        "exhaustive": result.exhaustive,
                        "counts": counts,
                    }))
                    .map_err(usage)?
                }
                Format::Csv => {
                    return Err(Failure::Usage(
                        "catalog supports --format text or json".to_string(),
                    ))
                }
            };
            emit(out.as_ref(), &content)
        }
    }
}

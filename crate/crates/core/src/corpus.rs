//! Circuit corpora: a directory of `.qc` files or a seeded generator.

use std::fs;
use std::path::{Path, PathBuf};

use crate::circuit::{parse_circuit, Circuit};
use crate::error::{Error, Result};
use crate::random::{gen_random_circuit, GateMix};

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    Directory(PathBuf),
    /// Circuit `i` has `n_min + i mod (n_max - n_min + 1)` qubits and seed `seed + i`.
    Generated {
        n_min: usize,
        n_max: usize,
        depth: usize,
        count: usize,
        seed: u64,
        mix: GateMix,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedCircuit {
    pub id: String,
    pub circuit: Circuit,
}

impl CorpusSpec {
    pub fn load(&self) -> Result<Vec<NamedCircuit>> {
        match self {
            CorpusSpec::Directory(dir) => load_dir(dir),
            CorpusSpec::Generated {
                n_min,
                n_max,
                depth,
                count,
                seed,
                mix,
            } => {
                if n_min > n_max || *n_min == 0 {
                    return Err(Error::Precondition(format!(
                        "invalid qubit range {n_min}..={n_max}"
                    )));
                }
                let span = n_max - n_min + 1;
                (0..*count)
                    .map(|i| {
                        let s = seed.wrapping_add(i as u64);
                        let circuit = gen_random_circuit(n_min + i % span, *depth, s, mix)?;
                        Ok(NamedCircuit {
                            id: format!("gen-{i:03}-seed{s}"),
                            circuit,
                        })
                    })
                    .collect()
            }
        }
    }
}

/// Every `*.qc` file in `dir`, sorted by file name; the id is the file stem.
pub fn load_dir(dir: &Path) -> Result<Vec<NamedCircuit>> {
    let io_err = |e: std::io::Error| Error::InvalidCircuit(format!("{}: {e}", dir.display()));
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "qc"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::InvalidCircuit(format!("{}: {e}", path.display())))?;
            let circuit = parse_circuit(&text)
                .map_err(|e| Error::InvalidCircuit(format!("{}:{e}", path.display())))?;
            let id = path
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            Ok(NamedCircuit { id, circuit })
        })
        .collect()
}

//! Manifests of prior runs: each artifact is either a command line whose
//! stdout is compared by SHA-256, or a certificate that is re-validated.

use std::path::Path;

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sbl::spaces::{check_certificate, CertNode, SpaceSpec, SparseVector};

use crate::args::{Cli, Command};
use crate::input::{json, parse};
use crate::{execute, Failure, Outcome};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    pub artifacts: Vec<Artifact>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Artifact {
    pub name: String,
    /// Command line without the program name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    /// Seed the recorded output was produced with.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertArtifact>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CertArtifact {
    pub space: String,
    pub vec: String,
    pub cert: String,
}

fn seed_of(args: &[String]) -> Option<u64> {
    let i = args.iter().position(|a| a == "--seed")?;
    args.get(i + 1)?.parse().ok()
}

fn digest(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

fn rerun(args: &[String]) -> Result<(u8, String), Failure> {
    let cli = Cli::try_parse_from(std::iter::once("sbl".to_string()).chain(args.iter().cloned()))
        .map_err(|e| Failure::input(e.to_string()))?;
    if matches!(cli.command, Command::Reproduce { .. }) {
        return Err(Failure::input("a manifest cannot re-run reproduce"));
    }
    Ok(execute(&cli))
}

fn check_cert(c: &CertArtifact) -> Result<String, Failure> {
    let space: SpaceSpec = parse(&c.space)?;
    let x: SparseVector = json(&c.vec)?;
    let cert: CertNode = json(&c.cert)?;
    Ok(check_certificate(&x, &space, &cert)?.to_string())
}

pub fn run(path: &Path, record: bool) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let mut manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("manifest: {e}")))?;
    if manifest.schema != SCHEMA {
        return Err(Failure::input(format!("manifest schema {} is not {SCHEMA}", manifest.schema)));
    }
    // Relative paths inside the manifest are relative to its directory.
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::env::set_current_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    }
    let mut rows = Vec::new();
    let mut first_divergent: Option<String> = None;
    for a in &mut manifest.artifacts {
        let row = match (&a.args, &a.certificate) {
            (Some(args), None) => {
                let (code, out) = rerun(args)?;
                let now = digest(&out);
                if record {
                    a.sha256 = Some(now.clone());
                    a.seed = seed_of(args);
                    json!({ "name": a.name, "status": "recorded", "exit": code, "sha256": now })
                } else if a.seed.is_some() && seed_of(args) != a.seed {
                    json!({
                        "name": a.name,
                        "status": "declared-divergence",
                        "reason": format!("seed {:?} differs from the recorded {:?}", seed_of(args), a.seed),
                        "output_changed": a.sha256.as_deref() != Some(now.as_str()),
                    })
                } else if a.sha256.as_deref() == Some(now.as_str()) {
                    json!({ "name": a.name, "status": "match", "exit": code })
                } else {
                    first_divergent.get_or_insert_with(|| a.name.clone());
                    json!({ "name": a.name, "status": "mismatch", "expected": a.sha256, "found": now })
                }
            }
            (None, Some(c)) => match check_cert(c) {
                Ok(v) => json!({ "name": a.name, "status": "valid", "certified": v }),
                Err(f) => {
                    first_divergent.get_or_insert_with(|| a.name.clone());
                    json!({ "name": a.name, "status": "invalid", "error": f.body })
                }
            },
            _ => return Err(Failure::input(format!("artifact {} needs exactly one of args, certificate", a.name))),
        };
        rows.push(row);
    }
    if record {
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        let file = path.file_name().map(Path::new).unwrap_or(path);
        std::fs::write(file, format!("{text}\n")).map_err(|e| Failure::input(format!("cannot write manifest: {e}")))?;
    }
    let out: Value = json!({
        "passed": first_divergent.is_none(),
        "first_divergent": first_divergent,
        "artifacts": rows,
    });
    if first_divergent.is_some() {
        return Err(Failure::verification(out));
    }
    Ok(out)
}

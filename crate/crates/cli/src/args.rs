use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug, Clone)]
#[command(name = "sbl", version, about = "Schreier families, Tsirelson-type norms and asymptotic l1 constants")]
pub struct Cli {
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Is the set a member of the family?
    Member {
        #[arg(long)]
        family: String,
        #[arg(long)]
        set: String,
    },
    /// Are the successive sets admissible (their minima form a member)?
    Admissible {
        #[arg(long)]
        family: String,
        /// Sets separated by `;`, e.g. `2,3;5,6,7`.
        #[arg(long)]
        sets: String,
    },
    /// The maximal S_α set starting at m.
    Maximal {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        alpha: String,
    },
    /// k-th derivative of a family on {1..universe}.
    Derive {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long)]
        universe: u64,
    },
    /// Do two families agree on {1..universe}?
    Eq {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        universe: u64,
    },
    /// Exact norm, optionally with a certificate.
    Norm {
        #[arg(long)]
        space: String,
        /// Inline JSON `[[i,"p/q"],…]` or a file holding it.
        #[arg(long)]
        vec: String,
        #[arg(long)]
        cert: bool,
    },
    /// Validate a norm certificate against a vector.
    CertCheck {
        #[arg(long)]
        space: String,
        #[arg(long)]
        vec: String,
        /// Inline JSON or a file.
        #[arg(long)]
        cert: String,
    },
    /// Construct an (α, β, ε)-average along an affine subsequence.
    Average {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1)]
        start: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Largest support the construction may use.
        #[arg(long)]
        max_support: Option<u64>,
    },
    /// Largest S_β mass of a weighted set; fails verification at or above ε.
    VerifyAverage {
        /// Inline JSON `[[i,"p/q"],…]` or a file.
        #[arg(long)]
        weights: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Truncated asymptotic constant of a family.
    Delta {
        #[arg(long)]
        space: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        universe: u64,
        #[arg(long, default_value = "characteristic")]
        tier: String,
        /// Required for the local tier.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate an equivalent norm.
    Renorm {
        /// bd:n, level:j:α:a, mixture:n:α:a, eda:n, schreier:α or tree:k:c.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "T")]
        space: String,
        #[arg(long)]
        vec: String,
        /// Reference block supports separated by `;`.
        #[arg(long)]
        reference: Option<String>,
    },
    /// Two-point distortion of T by bd(n).
    Distort {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k0: u64,
        #[arg(long, default_value = "exact")]
        mode: String,
        /// growth, constant, k1,k2,… or auto (growth when it fits, else constant).
        #[arg(long, default_value = "auto")]
        schedule: String,
        #[arg(long, default_value = "1/4")]
        eps: String,
        /// Recorded in the report; the construction is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-run a manifest of artifacts and compare them.
    Reproduce {
        #[arg(long)]
        manifest: PathBuf,
        /// Recompute every hash and rewrite the manifest.
        #[arg(long)]
        record: bool,
    },
}

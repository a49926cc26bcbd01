use serde::Serialize;
use serde_json::{json, Value};

use sbl::averages::{average_with_budget, verify_average, WeightedSet, DEFAULT_SUPPORT_BUDGET};
use sbl::constants::{delta_truncated, Tier};
use sbl::families::{
    enumerate_members, first_difference, is_admissible, iterated_derivative, maximal_set, member,
};
use sbl::renorm::{distortion_experiment, eval_renorm, DistortMode, RenormKind, RenormSpec, Schedule};
use sbl::spaces::{check_certificate, norm, norm_certificate, CertNode, SpaceSpec, SparseVector};
use sbl::{FamilyExpr, FiniteSubset, Ordinal, Subsequence};

use crate::args::{Cli, Command};
use crate::input::{json, parse, rational, sets};
use crate::{Failure, Outcome};

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Member { family, set } => {
            let fam: FamilyExpr = parse(family)?;
            let set: FiniteSubset = parse(set)?;
            Ok(json!({ "member": member(&set, &fam) }))
        }
        Command::Admissible { family, sets: s } => {
            let fam: FamilyExpr = parse(family)?;
            Ok(json!({ "admissible": is_admissible(&sets(s)?, &fam)? }))
        }
        Command::Maximal { m, alpha } => {
            if *m == 0 {
                return Err(Failure::input("m must be positive"));
            }
            let alpha: Ordinal = parse(alpha)?;
            Ok(json!({ "set": maximal_set(*m, &alpha) }))
        }
        Command::Derive { family, k, universe } => {
            let fam: FamilyExpr = parse(family)?;
            let members = enumerate_members(&iterated_derivative(&fam, *k, *universe), *universe);
            Ok(json!({ "count": members.len(), "members": members }))
        }
        Command::Eq { f, g, universe } => {
            let f: FamilyExpr = parse(f)?;
            let g: FamilyExpr = parse(g)?;
            let diff = first_difference(&f, &g, *universe);
            Ok(json!({ "equal": diff.is_none(), "first_difference": diff }))
        }
        Command::Norm { space, vec, cert } => {
            let space: SpaceSpec = parse(space)?;
            let x: SparseVector = json(vec)?;
            if x.is_empty() {
                return Ok(json!({ "norm": "0", "warning": "empty" }));
            }
            let mut out = json!({ "norm": norm(&x, &space).to_string() });
            if *cert {
                out["certificate"] = value(&norm_certificate(&x, &space)?);
            }
            Ok(out)
        }
        Command::CertCheck { space, vec, cert } => {
            let space: SpaceSpec = parse(space)?;
            let x: SparseVector = json(vec)?;
            let c: CertNode = json(cert)?;
            let certified = check_certificate(&x, &space, &c)?;
            let exact = norm(&x, &space);
            Ok(json!({
                "valid": true,
                "certified": certified.to_string(),
                "norm": exact.to_string(),
                "tight": certified == exact,
            }))
        }
        Command::Average { alpha, beta, eps, start, step, max_support } => {
            let m = Subsequence::affine(*start, *step)?;
            let ws = average_with_budget(
                &parse(alpha)?,
                &parse(beta)?,
                &rational(eps)?,
                &m,
                max_support.unwrap_or(DEFAULT_SUPPORT_BUDGET),
            )?;
            Ok(json!({ "support_size": ws.len(), "weights": ws }))
        }
        Command::VerifyAverage { weights, beta, eps } => {
            let ws: WeightedSet = json(weights)?;
            let mass = verify_average(&ws, &parse(beta)?);
            let mut out = json!({ "mass": mass.to_string() });
            if let Some(e) = eps {
                let e = rational(e)?;
                let below = mass < e;
                out["below"] = json!(below);
                if !below {
                    out["error"] = json!("verification");
                    return Err(Failure::verification(out));
                }
            }
            Ok(out)
        }
        Command::Delta { space, family, universe, tier, seed } => {
            let tier: Tier = parse(tier)?;
            if tier == Tier::Local && seed.is_none() {
                return Err(Failure::input("the local tier is randomized and needs --seed"));
            }
            let est = delta_truncated(&parse(space)?, &parse(family)?, *universe, tier, seed.unwrap_or(0))?;
            Ok(value(&est))
        }
        Command::Renorm { kind, space, vec, reference } => {
            let kind: RenormKind = parse(kind)?;
            let mut spec = RenormSpec::new(kind, parse(space)?)?;
            if let Some(r) = reference {
                spec = spec.with_reference(sets(r)?)?;
            }
            let x: SparseVector = json(vec)?;
            Ok(json!({ "kind": spec.kind.to_string(), "value": eval_renorm(&x, &spec)?.to_string() }))
        }
        Command::Distort { n, k0, mode, schedule, eps, seed } => {
            let mode: DistortMode = parse(mode)?;
            let eps = rational(eps)?;
            let (report, note) = if schedule.trim() == "auto" {
                match distortion_experiment(*n, *k0, &Schedule::Growth, mode, &eps) {
                    Err(sbl::Error::Budget(why)) => {
                        (distortion_experiment(*n, *k0, &Schedule::Constant, mode, &eps)?, Some(why))
                    }
                    other => (other?, None),
                }
            } else {
                (distortion_experiment(*n, *k0, &parse(schedule)?, mode, &eps)?, None)
            };
            let mut out = value(&report);
            out["seed"] = json!(seed);
            out["schedule_fallback"] = json!(note);
            Ok(out)
        }
        Command::Reproduce { manifest, record } => crate::reproduce::run(manifest, *record),
    }
}

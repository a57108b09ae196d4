//! Command-line frontend. Every verb reads exact-rational JSON files,
//! prints one JSON document, and signals its verdict through the exit
//! code: 0 for success or a true verdict, 1 for a false verdict, 2 for
//! input errors (with a machine-readable `error.code`), 3 when an
//! `--expect` comparison fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use liederiv::algebra::{corner, Idempotent, StructureAlgebra};
use liederiv::corpus::{
    builtin_corpus, generate_family, run_campaign, FamilyDescriptor, Suite,
};
use liederiv::derivations::{derivation_space, lie_derivation_space, unflatten};
use liederiv::error::Error;
use liederiv::extension::{build_triangular, check_star, StarCheck, TrivialExtension};
use liederiv::json::{
    instance_json, parse_algebra, parse_bimodule, parse_idempotent, parse_map, parse_triangular,
    AlgebraFile, BimoduleFile, FORMAT,
};
use liederiv::properness::{
    central_witness, has_lie_derivation_property, is_proper, ldp_sufficiency,
    triangular_sufficiency, Conclusion, Verdict,
};
use liederiv::{Matrix, Subspace};

#[derive(Parser)]
#[command(
    name = "liederiv",
    version,
    about = "Exact decision procedures for Lie derivations on trivial extension algebras"
)]
struct Cli {
    /// Write the JSON output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file of expected fields; every field must match the output
    /// (recursively), else the exit code is 3.
    #[arg(long, global = true)]
    expect: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the algebra axioms (and, when given, the bimodule axioms
    /// and the idempotent equation) and report violations.
    Validate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        p: Option<PathBuf>,
    },
    /// Basis of the center.
    Center {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Basis of the derivation space.
    Derivations {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Basis of the Lie derivation space.
    #[command(name = "lie-derivations")]
    LieDerivations {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Decide whether the map splits as derivation plus central map
    /// killing commutators, with reconstructing witnesses.
    Proper {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Decide whether every Lie derivation of the algebra is proper.
    Ldp {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check the compatible-idempotent condition `p x q = x`.
    Star {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        p: PathBuf,
    },
    /// Characterize properness of a Lie derivation on the extension by
    /// searching for a center-valued witness on the base.
    Thm22 {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Sufficiency conditions for the extension-wide property.
    Thm24 {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        p: PathBuf,
        #[arg(long, default_value_t = 512)]
        budget: usize,
    },
    /// Sufficiency conditions specialized to a triangular algebra.
    Corollary31 {
        #[arg(long)]
        triangular: PathBuf,
        #[arg(long, default_value_t = 512)]
        budget: usize,
    },
    /// Assemble a triangular algebra from its three ingredients.
    Triangular {
        #[arg(long)]
        triangular: PathBuf,
    },
    /// Assemble the trivial extension of an algebra by a bimodule.
    Extend {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Dump the built-in corpus, or the instances of one family.
    Corpus {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run invariant suites over the corpus (or one family) and report
    /// per-invariant pass/fail rows.
    Campaign {
        /// Suite name; repeatable. Defaults to every suite.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("LIEDERIV_LOG")).init();
    let cli = Cli::parse();
    let (out, expect) = (cli.out.clone(), cli.expect.clone());
    match run(cli.cmd) {
        Ok((value, verdict)) => {
            let value = with_format(value);
            if let Err(e) = emit(&value, out.as_deref()) {
                eprintln!("liederiv: {e}");
                return ExitCode::from(2);
            }
            match expect_matches(expect.as_deref(), &value) {
                Ok(true) => ExitCode::from(if verdict { 0 } else { 1 }),
                Ok(false) => {
                    eprintln!("liederiv: output does not match --expect");
                    ExitCode::from(3)
                }
                Err(e) => {
                    eprintln!("liederiv: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            let envelope = with_format(json!({
                "error": { "code": e.code(), "message": e.to_string() }
            }));
            let _ = emit(&envelope, out.as_deref());
            eprintln!("liederiv: {e}");
            ExitCode::from(2)
        }
    }
}

fn with_format(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("format".to_string(), Value::String(FORMAT.to_string()));
    }
    v
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Error> {
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("output values serialize")
    );
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::BadInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Every field of `expected` must be present and equal in `actual`;
/// objects recurse, arrays must match elementwise at equal length.
fn subset_match(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e
            .iter()
            .all(|(k, v)| a.get(k).is_some_and(|av| subset_match(v, av))),
        (Value::Array(e), Value::Array(a)) => {
            e.len() == a.len() && e.iter().zip(a).all(|(x, y)| subset_match(x, y))
        }
        _ => expected == actual,
    }
}

fn expect_matches(expect: Option<&Path>, actual: &Value) -> Result<bool, Error> {
    let Some(path) = expect else {
        return Ok(true);
    };
    let text = read(path)?;
    let expected: Value = serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("malformed --expect file: {e}")))?;
    Ok(subset_match(&expected, actual))
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<StructureAlgebra, Error> {
    parse_algebra(&read(path)?)
}

fn load_square_map(path: &Path, dim: usize) -> Result<Matrix, Error> {
    let m = parse_map(&read(path)?)?;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            context: "map matrix shape",
            expected: dim,
            found: if m.rows() != dim { m.rows() } else { m.cols() },
        });
    }
    Ok(m)
}

fn load_extension(algebra: &Path, module: &Path) -> Result<TrivialExtension, Error> {
    let base = load_algebra(algebra)?;
    let x = parse_bimodule(&read(module)?, base.dim())?;
    TrivialExtension::build(base, x)
}

fn load_star(
    algebra: &Path,
    module: &Path,
    p: &Path,
) -> Result<(TrivialExtension, Idempotent), Error> {
    let ext = load_extension(algebra, module)?;
    let idem = parse_idempotent(&read(p)?, ext.base())?;
    Ok((ext, idem))
}

fn basis_rows(s: &Subspace) -> Vec<Vec<liederiv::Scalar>> {
    s.basis().row_vecs()
}

fn matrix_basis(s: &Subspace, n: usize) -> Vec<Matrix> {
    basis_rows(s).into_iter().map(|r| unflatten(n, n, &r)).collect()
}

fn run(cmd: Cmd) -> Result<(Value, bool), Error> {
    match cmd {
        Cmd::Validate { algebra, module, p } => {
            let file: liederiv::json::AlgebraFile =
                serde_json::from_str::<AlgebraFile>(&read(&algebra)?)
                    .map_err(|e| Error::BadInput(format!("malformed algebra file: {e}")))?;
            let a = file.to_algebra()?;
            let report = a.validate();
            let mut ok = report.is_valid();
            let mut doc = json!({
                "algebra": { "valid": report.is_valid(), "violations": report.violation_count() }
            });
            if let Some(module) = module {
                let m = parse_bimodule(&read(&module)?, a.dim())?;
                let mr = m.validate(&a);
                ok &= mr.is_valid();
                doc["module"] = json!({ "valid": mr.is_valid(), "violations": mr.violation_count() });
            }
            if let Some(p) = p {
                let idem = parse_idempotent(&read(&p)?, &a);
                let valid = idem.is_ok();
                ok &= valid;
                doc["idempotent"] = json!({ "valid": valid });
            }
            log::info!("validate: ok={ok}");
            Ok((doc, ok))
        }
        Cmd::Center { algebra } => {
            let a = load_algebra(&algebra)?;
            let z = a.center();
            Ok((json!({ "dim": z.dim(), "basis": basis_rows(&z) }), true))
        }
        Cmd::Derivations { algebra } => {
            let a = load_algebra(&algebra)?;
            let d = derivation_space(&a);
            Ok((
                json!({ "dim": d.dim(), "basis": matrix_basis(&d, a.dim()) }),
                true,
            ))
        }
        Cmd::LieDerivations { algebra } => {
            let a = load_algebra(&algebra)?;
            let d = lie_derivation_space(&a);
            Ok((
                json!({ "dim": d.dim(), "basis": matrix_basis(&d, a.dim()) }),
                true,
            ))
        }
        Cmd::Proper { algebra, map } => {
            let a = load_algebra(&algebra)?;
            let l = load_square_map(&map, a.dim())?;
            let cert = is_proper(&a, &l)?;
            let verdict = cert.verdict == Verdict::Proper;
            log::info!("proper: verdict={verdict}");
            Ok((serde_json::to_value(&cert).expect("certificates serialize"), verdict))
        }
        Cmd::Ldp { algebra } => {
            let a = load_algebra(&algebra)?;
            let report = has_lie_derivation_property(&a);
            Ok((
                json!({ "verdict": report.holds, "dims": report.dims }),
                report.holds,
            ))
        }
        Cmd::Star { algebra, module, p } => {
            let (ext, idem) = load_star(&algebra, &module, &p)?;
            match check_star(&ext, &idem)? {
                StarCheck::Holds(_) => Ok((json!({ "holds": true }), true)),
                StarCheck::Violated { module_index } => Ok((
                    json!({ "holds": false, "module_index": module_index }),
                    false,
                )),
            }
        }
        Cmd::Thm22 {
            algebra,
            module,
            p,
            map,
        } => {
            let (ext, idem) = load_star(&algebra, &module, &p)?;
            let ctx = match check_star(&ext, &idem)? {
                StarCheck::Holds(ctx) => ctx,
                StarCheck::Violated { module_index } => {
                    return Err(Error::BadInput(format!(
                        "idempotent is not compatible: condition fails at module index {module_index}"
                    )))
                }
            };
            let l = load_square_map(&map, ctx.extension().total().dim())?;
            let report = central_witness(&ctx, &l)?;
            let verdict = report.verdict == Verdict::Proper;
            Ok((serde_json::to_value(&report).expect("reports serialize"), verdict))
        }
        Cmd::Thm24 {
            algebra,
            module,
            p,
            budget,
        } => {
            let (ext, idem) = load_star(&algebra, &module, &p)?;
            let ctx = match check_star(&ext, &idem)? {
                StarCheck::Holds(ctx) => ctx,
                StarCheck::Violated { module_index } => {
                    return Err(Error::BadInput(format!(
                        "idempotent is not compatible: condition fails at module index {module_index}"
                    )))
                }
            };
            let report = ldp_sufficiency(&ctx, &[], budget)?;
            let verdict = report.conclusion == Conclusion::Guaranteed;
            Ok((serde_json::to_value(&report).expect("reports serialize"), verdict))
        }
        Cmd::Corollary31 { triangular, budget } => {
            let (a, x, b) = parse_triangular(&read(&triangular)?)?;
            let build = build_triangular(&a, &x, &b)?;
            let report = triangular_sufficiency(&build, &[], &[], budget)?;
            let verdict = report.conclusion == Conclusion::Guaranteed;
            Ok((serde_json::to_value(&report).expect("reports serialize"), verdict))
        }
        Cmd::Triangular { triangular } => {
            let (a, x, b) = parse_triangular(&read(&triangular)?)?;
            let build = build_triangular(&a, &x, &b)?;
            let ext = build.extension();
            let p_corner = corner(ext.base(), build.star.p());
            let q_corner = corner(ext.base(), &build.star.q());
            Ok((
                json!({
                    "base": AlgebraFile::from_algebra(ext.base()),
                    "module": BimoduleFile::from_bimodule(ext.module()),
                    "p": { "vector": build.star.p().vector() },
                    "total": AlgebraFile::from_algebra(ext.total()),
                    "corner_dims": [p_corner.dim(), q_corner.dim()],
                }),
                true,
            ))
        }
        Cmd::Extend { algebra, module } => {
            let ext = load_extension(&algebra, &module)?;
            Ok((
                json!({
                    "total": AlgebraFile::from_algebra(ext.total()),
                    "dims": {
                        "base": ext.base().dim(),
                        "module": ext.module().dim(),
                        "total": ext.total().dim(),
                    },
                }),
                true,
            ))
        }
        Cmd::Corpus { family, seed } => {
            let instances = instances_for(family.as_deref(), seed)?;
            Ok((
                json!({ "instances": instances.iter().map(instance_json).collect::<Vec<_>>() }),
                true,
            ))
        }
        Cmd::Campaign {
            suite,
            family,
            seed,
        } => {
            let suites = if suite.is_empty() {
                Suite::all()
            } else {
                suite
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<Suite>, Error>>()?
            };
            let instances = instances_for(family.as_deref(), seed)?;
            let report = run_campaign(&instances, &suites, seed);
            let ok = report.all_passed();
            log::info!(
                "campaign: {} passed, {} failed, {} skipped",
                report.passed,
                report.failed,
                report.skipped
            );
            Ok((serde_json::to_value(&report).expect("reports serialize"), ok))
        }
    }
}

fn instances_for(
    family: Option<&str>,
    seed: u64,
) -> Result<Vec<liederiv::corpus::CorpusInstance>, Error> {
    match family {
        None => Ok(builtin_corpus()),
        Some(text) => {
            let desc: FamilyDescriptor = text.parse()?;
            generate_family(&desc, seed)
        }
    }
}

// The binary's behavior is covered by the integration tests, which run
// the compiled executable end to end; unit-testable logic lives in the
// library. Keep only the pure matcher here.
#[cfg(test)]
mod tests {
    use super::subset_match;
    use serde_json::json;

    #[test]
    fn subset_matching_recurses() {
        let actual = json!({"a": {"b": 1, "c": [1, 2]}, "d": "x"});
        assert!(subset_match(&json!({}), &actual));
        assert!(subset_match(&json!({"a": {"b": 1}}), &actual));
        assert!(subset_match(&json!({"a": {"c": [1, 2]}}), &actual));
        assert!(!subset_match(&json!({"a": {"c": [1]}}), &actual));
        assert!(!subset_match(&json!({"a": {"b": 2}}), &actual));
        assert!(!subset_match(&json!({"missing": 0}), &actual));
    }
}

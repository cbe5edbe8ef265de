//! Command-line front end: validation and classification of tuple files,
//! isomorphism decisions with explicit witnesses, brute-force oracle runs,
//! the table of families, and rim drawings.
//!
//! Exit codes: 0 on success (a `false` verdict is still a success), 1 on
//! validation or construction errors, 2 when the divisibility criterion and
//! the brute-force oracle disagree — the never-expected case.

use crate::error::{Error, Result};
use crate::families::{enumerate_rigid_classes, invariant, representative, FamilyPoint};
use crate::io::{
    parse_rim_arg, read_tuple_file, read_witness_file, to_json_string, WitnessFile,
};
use crate::iso::{construct_witness, decide_isomorphic, verify_witness, IsoDecision};
use crate::oracle::{iso_oracle, solve_hom_space, stable_hom_dimension, trivial_sum_oracle, RepRef};
use crate::quiver::{check_relations, interlacing};
use crate::rank2::{build_m, classify_case, is_indecomposable, Rank2Module};
use crate::render::{render_profile, render_rim};
use crate::series::{scalar, scalar_ratio};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

/// Stability margin for hom-space dimensions: inputs are lifted this many
/// orders above the requested truncation so boundary effects cancel.
const HOM_MARGIN: usize = 5;

#[derive(Parser)]
#[command(
    name = "cm510",
    version,
    about = "Rank-2 modules over the (5,10) boundary algebra: construction, \
             classification, isomorphism tests with witnesses, and brute-force checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a tuple file and check it defines a module.
    Validate(ValidateArgs),
    /// Case label, divisibility profile, indecomposability, and invariant.
    Classify(ClassifyArgs),
    /// Decide whether two modules are isomorphic via the divisibility criteria.
    Compare(CompareArgs),
    /// Construct an explicit isomorphism witness, or check a stored one.
    Witness(WitnessArgs),
    /// Brute-force hom-space computation; uses no classification criteria.
    Oracle(OracleArgs),
    /// The 25 rigid classes and one sample member per infinite family.
    Families(FamiliesArgs),
    /// Draw a rim as a lattice path.
    Rim(RimArgs),
    /// Interlacing data of two rims, with the two-strand drawing.
    Interlace(InterlaceArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Tuple file: {"prec": 8, "b": [[series], ... 10 entries]}.
    file: PathBuf,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Tuple file to classify.
    #[arg(required_unless_present = "batch")]
    file: Option<PathBuf>,
    /// Classify every .json file in a directory, concurrently.
    #[arg(long, value_name = "DIR", conflicts_with = "file")]
    batch: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    a: PathBuf,
    b: PathBuf,
    /// Also construct and verify a witness; write it to PATH or print it.
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    witness: Option<Option<PathBuf>>,
    /// Cross-check the verdict against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Truncation order used by the oracle.
    #[arg(long, default_value_t = 4)]
    oracle_prec: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WitnessArgs {
    a: PathBuf,
    b: PathBuf,
    /// Write the witness JSON here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Verify this stored witness instead of constructing a new one.
    #[arg(long, value_name = "PATH")]
    check: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    a: PathBuf,
    /// Second module; when omitted the oracle examines A alone.
    b: Option<PathBuf>,
    /// Truncation order of the hom-space computation.
    #[arg(long, default_value_t = 4)]
    oracle_prec: usize,
    /// Print the scalar combination certifying invertibility.
    #[arg(long)]
    lambda: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FamiliesArgs {
    /// Precision at which representatives are built.
    #[arg(long, default_value_t = 8)]
    prec: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RimArgs {
    /// Rim elements, e.g. [1,4,5].
    elements: String,
    /// Number of edges of the circular quiver.
    #[arg(long, default_value_t = 10)]
    n: usize,
}

#[derive(Args)]
struct InterlaceArgs {
    /// First rim, e.g. [1,3,5,7,9].
    i: String,
    /// Second rim, e.g. [2,4,6,8,10].
    j: String,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long)]
    json: bool,
}

pub fn run() -> u8 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Validate(a) => cmd_validate(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Families(a) => cmd_families(a),
        Command::Rim(a) => cmd_rim(a),
        Command::Interlace(a) => cmd_interlace(a),
    }
}

fn load_module(path: &Path) -> Result<Rank2Module> {
    build_m(read_tuple_file(path)?)
}

fn scalars_to_strings(v: &[crate::series::Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn cmd_validate(args: ValidateArgs) -> Result<u8> {
    let m = load_module(&args.file)?;
    let report = check_relations(m.edge_maps());
    if !report.ok() {
        // build_m only emits relation-satisfying maps, so this is unreachable;
        // checked anyway because validation must not trust the builder.
        println!("{}: INVALID\n{report}", args.file.display());
        return Ok(1);
    }
    let consts = m.b_sums().constants();
    if args.json {
        print!(
            "{}",
            to_json_string(&json!({
                "file": args.file.display().to_string(),
                "valid": true,
                "prec": m.prec(),
                "b_sums": scalars_to_strings(&consts),
            }))
        );
    } else {
        println!("{}: valid", args.file.display());
        println!("prec: {}", m.prec());
        println!("B-sums: ({})", scalars_to_strings(&consts).join(", "));
        println!("relations: all hold");
    }
    Ok(0)
}

fn classify_report(path: &Path) -> Result<(String, Value)> {
    let m = load_module(path)?;
    let case = classify_case(&m);
    let (indecomposable, _) = is_indecomposable(&m);
    let modulus = if indecomposable {
        invariant(&m)?.modulus
    } else {
        None
    };
    let modulus_text = match (&modulus, indecomposable) {
        (Some(v), _) => format!("modulus: {v}"),
        (None, true) => "modulus: none".to_string(),
        (None, false) => "modulus: n/a (decomposable)".to_string(),
    };
    let text = format!(
        "{}:\n  case: {case}\n  profile: {}\n  indecomposable: {indecomposable}\n  {modulus_text}",
        path.display(),
        m.profile(),
    );
    let value = json!({
        "file": path.display().to_string(),
        "case": case.name(),
        "label": case.to_string(),
        "profile": m.profile().to_string(),
        "indecomposable": indecomposable,
        "modulus": modulus.map(|v| v.to_string()),
    });
    Ok((text, value))
}

fn cmd_classify(args: ClassifyArgs) -> Result<u8> {
    if let Some(file) = args.file {
        let (text, value) = classify_report(&file)?;
        if args.json {
            print!("{}", to_json_string(&value));
        } else {
            println!("{text}");
        }
        return Ok(0);
    }

    let dir = args.batch.expect("clap enforces file or batch");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Parse(format!(
            "no .json files in {}",
            dir.display()
        )));
    }

    // Per-file work is pure, so fan the files out across threads and stitch
    // the reports back together in filename order.
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(files.len());
    let chunk_size = files.len().div_ceil(workers);
    let results: Vec<Result<(String, Value)>> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk_size)
            .map(|chunk| s.spawn(|| chunk.iter().map(|p| classify_report(p)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("classification thread panicked"))
            .collect()
    });

    let mut failures = 0;
    let mut values = Vec::new();
    for (path, result) in files.iter().zip(results) {
        match result {
            Ok((text, value)) => {
                if !args.json {
                    println!("{text}");
                }
                values.push(value);
            }
            Err(e) => {
                failures += 1;
                if !args.json {
                    println!("{}: error: {e}", path.display());
                }
                values.push(json!({
                    "file": path.display().to_string(),
                    "error": e.to_string(),
                }));
            }
        }
    }
    if args.json {
        print!("{}", to_json_string(&values));
    }
    Ok(if failures > 0 { 1 } else { 0 })
}

fn cmd_compare(args: CompareArgs) -> Result<u8> {
    let ma = load_module(&args.a)?;
    let mb = load_module(&args.b)?;
    let decision: IsoDecision = decide_isomorphic(&ma, &mb)?;
    let case_a = classify_case(&ma);
    let case_b = classify_case(&mb);
    let labels_match = case_a == case_b;

    let mut lines = vec![
        format!("a: {} ({})", args.a.display(), case_a),
        format!("b: {} ({})", args.b.display(), case_b),
        format!("labels match: {labels_match}"),
        format!("criterion: {}", decision.reason),
        format!("isomorphic: {}", decision.isomorphic),
    ];
    let mut out = json!({
        "a": {"file": args.a.display().to_string(), "label": case_a.to_string()},
        "b": {"file": args.b.display().to_string(), "label": case_b.to_string()},
        "labels_match": labels_match,
        "criterion": decision.reason.to_string(),
        "isomorphic": decision.isomorphic,
    });

    if let Some(dest) = &args.witness {
        if decision.isomorphic {
            let witness = construct_witness(&ma, &mb)?;
            let file = WitnessFile::from_witness(&witness)?;
            match dest {
                Some(path) => {
                    std::fs::write(path, to_json_string(&file))?;
                    lines.push(format!("witness: verified, written to {}", path.display()));
                    out["witness_path"] = json!(path.display().to_string());
                }
                None => {
                    lines.push(format!("witness (verified):\n{}", to_json_string(&file)));
                    out["witness"] = serde_json::to_value(&file).expect("serializable");
                }
            }
        } else {
            lines.push("witness: none (not isomorphic)".to_string());
            out["witness"] = Value::Null;
        }
    }

    let mut exit = 0u8;
    if args.oracle {
        let prec = args.oracle_prec;
        let la = ma.lift(ma.prec().max(prec));
        let lb = mb.lift(mb.prec().max(prec));
        let verdict = iso_oracle(RepRef::from(&la), RepRef::from(&lb), prec)?;
        let agree = verdict.isomorphic == decision.isomorphic;
        lines.push(format!(
            "oracle (prec {prec}): isomorphic: {} (hom dimension {})",
            verdict.isomorphic, verdict.hom_dimension
        ));
        lines.push(format!("criterion/oracle agreement: {agree}"));
        out["oracle"] = json!({
            "prec": prec,
            "isomorphic": verdict.isomorphic,
            "hom_dimension": verdict.hom_dimension,
        });
        out["agreement"] = json!(agree);
        if !agree {
            exit = 2;
        }
    }

    if args.json {
        print!("{}", to_json_string(&out));
    } else {
        println!("{}", lines.join("\n"));
        if exit == 2 {
            println!("DISAGREEMENT: the criterion and the oracle differ on this pair");
        }
    }
    Ok(exit)
}

fn cmd_witness(args: WitnessArgs) -> Result<u8> {
    let ma = load_module(&args.a)?;
    let mb = load_module(&args.b)?;

    if let Some(check) = &args.check {
        let witness = read_witness_file(check)?;
        verify_witness(&ma, &mb, &witness)?;
        if args.json {
            print!(
                "{}",
                to_json_string(&json!({
                    "witness": check.display().to_string(),
                    "valid": true,
                }))
            );
        } else {
            println!("{}: valid witness from a to b", check.display());
        }
        return Ok(0);
    }

    let witness = construct_witness(&ma, &mb)?;
    let file = WitnessFile::from_witness(&witness)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, to_json_string(&file))?;
            if args.json {
                print!(
                    "{}",
                    to_json_string(&json!({
                        "witness_path": path.display().to_string(),
                        "verified": true,
                    }))
                );
            } else {
                println!("witness verified and written to {}", path.display());
            }
        }
        None => print!("{}", to_json_string(&file)),
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> Result<u8> {
    let prec = args.oracle_prec;
    if prec < 2 {
        return Err(Error::Incompatible(
            "oracle precision must be at least 2".to_string(),
        ));
    }
    let lift_to = |m: &Rank2Module| m.lift(m.prec().max(prec + HOM_MARGIN));
    let ma = lift_to(&load_module(&args.a)?);

    match &args.b {
        Some(bpath) => {
            let mb = lift_to(&load_module(bpath)?);
            let raw = solve_hom_space(RepRef::from(&ma), RepRef::from(&mb), prec)?.dimension();
            let stable = stable_hom_dimension(RepRef::from(&ma), RepRef::from(&mb), prec)?;
            let verdict = iso_oracle(RepRef::from(&ma), RepRef::from(&mb), prec)?;
            if args.json {
                print!(
                    "{}",
                    to_json_string(&json!({
                        "prec": prec,
                        "hom_dimension": raw,
                        "stable_hom_dimension": stable,
                        "isomorphic": verdict.isomorphic,
                        "lambda": verdict.certificate.as_deref().map(scalars_to_strings),
                    }))
                );
            } else {
                println!("hom dimension at prec {prec}: {raw} (stable: {stable})");
                println!("isomorphic: {}", verdict.isomorphic);
                if args.lambda {
                    match &verdict.certificate {
                        Some(lambda) => {
                            println!("lambda: ({})", scalars_to_strings(lambda).join(", "))
                        }
                        None => println!("lambda: none"),
                    }
                }
            }
        }
        None => {
            let raw = solve_hom_space(RepRef::from(&ma), RepRef::from(&ma), prec)?.dimension();
            let stable = stable_hom_dimension(RepRef::from(&ma), RepRef::from(&ma), prec)?;
            let splits = trivial_sum_oracle(&ma, prec)?;
            if args.json {
                print!(
                    "{}",
                    to_json_string(&json!({
                        "prec": prec,
                        "endomorphism_dimension": raw,
                        "stable_endomorphism_dimension": stable,
                        "splits_as_layer_sum": splits,
                    }))
                );
            } else {
                println!("endomorphism dimension at prec {prec}: {raw} (stable: {stable})");
                println!("splits as direct sum of the two layers: {splits}");
            }
        }
    }
    Ok(0)
}

fn family_samples() -> Vec<FamilyPoint> {
    vec![
        FamilyPoint::FourGeneric {
            indices: [1, 3, 5, 7],
            beta: scalar(2),
        },
        FamilyPoint::FiveSingle {
            l: 1,
            beta: scalar(3),
        },
        FamilyPoint::FiveGeneric {
            alpha: scalar(1),
            gamma: scalar_ratio(1, 2),
        },
    ]
}

fn cmd_families(args: FamiliesArgs) -> Result<u8> {
    let rigid = enumerate_rigid_classes(args.prec);
    let mut lines = vec![format!("rigid classes ({}):", rigid.len())];
    let mut values = Vec::new();
    for (point, module) in &rigid {
        let consts = module.b_sums().constants();
        lines.push(format!(
            "  {:<40} B = ({})",
            point.label().to_string(),
            scalars_to_strings(&consts).join(", ")
        ));
        values.push(json!({
            "kind": "rigid",
            "label": point.label().to_string(),
            "b_sums": scalars_to_strings(&consts),
            "modulus": Value::Null,
        }));
    }

    lines.push("infinite families (one sample each):".to_string());
    for point in family_samples() {
        let module = representative(&point, args.prec)?;
        let consts = module.b_sums().constants();
        let modulus = invariant(&module)?.modulus;
        let modulus_text = modulus
            .as_ref()
            .map(|v| format!("modulus = {v}"))
            .unwrap_or_else(|| "modulus: none (pairwise comparison)".to_string());
        lines.push(format!(
            "  {:<40} B = ({})  {modulus_text}",
            point.label().to_string(),
            scalars_to_strings(&consts).join(", ")
        ));
        values.push(json!({
            "kind": "family",
            "label": point.label().to_string(),
            "b_sums": scalars_to_strings(&consts),
            "modulus": modulus.map(|v| v.to_string()),
        }));
    }

    if args.json {
        print!("{}", to_json_string(&values));
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(0)
}

fn cmd_rim(args: RimArgs) -> Result<u8> {
    let rim = parse_rim_arg(&args.elements, args.n)?;
    println!("rim {rim}");
    println!("{}", render_rim(&rim));
    Ok(0)
}

fn cmd_interlace(args: InterlaceArgs) -> Result<u8> {
    let i = parse_rim_arg(&args.i, args.n)?;
    let j = parse_rim_arg(&args.j, args.n)?;
    let (r, tight) = interlacing(&i, &j)?;
    let tight_text = if tight { "tight" } else { "not tight" };
    if args.json {
        print!(
            "{}",
            to_json_string(&json!({
                "r": r,
                "tight": tight,
            }))
        );
    } else {
        println!("{r}-interlacing, {tight_text}");
        match render_profile(&i, &j) {
            Ok(art) => println!("{art}"),
            Err(_) => println!("(no profile drawing: rims have different sizes)"),
        }
    }
    Ok(0)
}

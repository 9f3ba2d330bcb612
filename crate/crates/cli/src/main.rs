//! `triram`: verify, construct and analyze triple-ramification covers.
//!
//! Every command prints one JSON report on stdout (or to `--output`).
//! Exit codes: 0 success or a positive verdict, 1 a well-formed negative
//! verdict, 2 any error, with the diagnostic on stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use triram::constructors::{belyi_reduce, forward_compose, realize_branch_points, replay};
use triram::field::{Field, FieldElement};
use triram::io::{
    to_json, BelyiReport, MapFile, NormalizeReport, OracleReport, ProfileReport, TraceFile,
    WeierstrassReport,
};
use triram::projline::{Mobius, ProjPoint};
use triram::ramification::{
    brute_force_profile, compare_with_oracle, is_triple_only, oracle_extension_degree,
    ramification_profile, RationalMap,
};
use triram::Error;

#[derive(Parser)]
#[command(
    name = "triram",
    version,
    about = "Covers of the projective line with only triple ramification"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ramification profile of a map file and whether it is triple-only.
    Verify { map: PathBuf },
    /// Build a triple-only map with prescribed branch points, or compose
    /// explicit steps `φ ∘ z³` with `--forward`.
    Construct {
        #[arg(long, default_value = "Q")]
        field: String,
        /// Branch points; `inf` for infinity.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        branch: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mobius steps `a,b,c,d` for `(az+b)/(cz+d)`, innermost first.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, conflicts_with = "branch")]
        forward: Vec<String>,
        #[arg(long)]
        map_out: Option<PathBuf>,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Push the branch locus of a tame map into {0, 1, inf} with a power map.
    Belyi { map: PathBuf },
    /// Moduli coordinates of a pointed line.
    Normalize {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        points: Vec<String>,
    },
    /// The fiber of the cubic family x^3 = y^2 - ty at t.
    Weierstrass {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// `outer ∘ inner`.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Compare the profile with a brute-force enumeration over F_{q^m}.
    Oracle {
        map: PathBuf,
        /// Defaults to the degree within the size limit that sees the most
        /// ramification points.
        #[arg(long)]
        ext_degree: Option<usize>,
    },
}

#[derive(Serialize)]
struct Input {
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: &'static str,
    arguments: Vec<String>,
    inputs: Vec<Input>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
    result: T,
}

struct Outcome {
    json: String,
    code: u8,
}

fn report<T: Serialize>(
    command: &'static str,
    arguments: Vec<String>,
    inputs: Vec<Input>,
    verdict: Option<bool>,
    result: T,
) -> Outcome {
    let code = if verdict == Some(false) { 1 } else { 0 };
    let json = to_json(&Report {
        command,
        arguments,
        inputs,
        verdict,
        result,
    });
    Outcome { json, code }
}

type CliResult<T> = Result<T, String>;

fn read(path: &Path, name: &str) -> CliResult<(String, Input)> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let sha256 = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok((
        text,
        Input {
            name: name.to_string(),
            sha256,
        },
    ))
}

fn load_map(path: &Path, name: &str) -> CliResult<(RationalMap, Input)> {
    let (text, input) = read(path, name)?;
    let map = MapFile::parse(&text)
        .and_then(|f| f.to_map())
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((map, input))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn lib<T>(r: Result<T, Error>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

fn parse_points(field: &Field, items: &[String]) -> CliResult<Vec<ProjPoint>> {
    items
        .iter()
        .map(|s| lib(ProjPoint::parse(field, s)))
        .collect()
}

#[derive(Serialize)]
struct VerifyResult {
    map: MapFile,
    geometric_ramification_points: usize,
    profile: ProfileReport,
}

#[derive(Serialize)]
struct ConstructResult {
    field: String,
    degree: usize,
    replays: bool,
    map: MapFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<TraceFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<ProfileReport>,
}

#[derive(Serialize)]
struct ComposeResult {
    degree: usize,
    map: MapFile,
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Verify { map } => {
            let (f, input) = load_map(map, "map")?;
            let v = lib(is_triple_only(&f))?;
            Ok(report(
                "verify",
                vec![],
                vec![input],
                Some(v.verdict),
                VerifyResult {
                    map: MapFile::from_map(&f),
                    geometric_ramification_points: v.geometric_points,
                    profile: ProfileReport::from_profile(&v.profile),
                },
            ))
        }
        Command::Construct {
            field,
            branch,
            seed,
            forward,
            map_out,
            trace_out,
        } => {
            let k = lib(Field::parse(field))?;
            if !forward.is_empty() {
                let steps = forward
                    .iter()
                    .map(|s| {
                        let entries: Vec<&str> = s.split(',').map(str::trim).collect();
                        lib(Mobius::from_strings(&k, &entries))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let (h, profile) = lib(forward_compose(&steps))?;
                let map = MapFile::from_map(&h);
                if let Some(path) = map_out {
                    write(path, &to_json(&map))?;
                }
                let mut arguments = vec![format!("--field={field}")];
                arguments.extend(forward.iter().map(|s| format!("--forward={s}")));
                return Ok(report(
                    "construct",
                    arguments,
                    vec![],
                    Some(profile.triple_only),
                    ConstructResult {
                        field: h.field().descriptor().to_string(),
                        degree: h.degree(),
                        replays: true,
                        map,
                        trace: None,
                        profile: Some(ProfileReport::from_profile(&profile)),
                    },
                ));
            }
            if branch.is_empty() {
                return Err("construct needs --branch or --forward".into());
            }
            let ys = parse_points(&k, branch)?;
            let trace = lib(realize_branch_points(&ys, &k, *seed))?;
            let file = TraceFile::from_trace(&trace);
            let replays = lib(file.to_trace().and_then(|t| replay(&t)))? == trace.map;
            let map = MapFile::from_map(&trace.map);
            if let Some(path) = map_out {
                write(path, &to_json(&map))?;
            }
            if let Some(path) = trace_out {
                write(path, &to_json(&file))?;
            }
            let mut arguments = vec![format!("--field={field}"), format!("--seed={seed}")];
            arguments.extend(branch.iter().map(|s| format!("--branch={s}")));
            Ok(report(
                "construct",
                arguments,
                vec![],
                Some(trace.profile.triple_only && replays),
                ConstructResult {
                    field: trace.field().descriptor().to_string(),
                    degree: trace.map.degree(),
                    replays,
                    map,
                    trace: Some(file),
                    profile: None,
                },
            ))
        }
        Command::Belyi { map } => {
            let (g, input) = load_map(map, "map")?;
            let r = lib(belyi_reduce(&g))?;
            Ok(report(
                "belyi",
                vec![],
                vec![input],
                Some(true),
                BelyiReport::from_reduction(&r),
            ))
        }
        Command::Normalize { field, points } => {
            let k = lib(Field::parse(field))?;
            let pts = parse_points(&k, points)?;
            let r = lib(NormalizeReport::compute(&pts))?;
            let mut arguments = vec![format!("--field={field}")];
            arguments.extend(points.iter().map(|s| format!("--points={s}")));
            let verdict = r.boundary.is_none();
            if let Some(b) = &r.boundary {
                eprintln!("boundary: {b}");
            }
            Ok(report("normalize", arguments, vec![], Some(verdict), r))
        }
        Command::Weierstrass { field, t } => {
            let k = lib(Field::parse(field))?;
            let tv = lib(FieldElement::parse(&k, t))?;
            let r = lib(WeierstrassReport::compute(&tv))?;
            Ok(report(
                "weierstrass",
                vec![format!("--field={field}"), format!("--t={t}")],
                vec![],
                None,
                r,
            ))
        }
        Command::Compose { outer, inner } => {
            let (f, a) = load_map(outer, "outer")?;
            let (g, b) = load_map(inner, "inner")?;
            let h = lib(f.compose(&g))?;
            Ok(report(
                "compose",
                vec![],
                vec![a, b],
                None,
                ComposeResult {
                    degree: h.degree(),
                    map: MapFile::from_map(&h),
                },
            ))
        }
        Command::Oracle { map, ext_degree } => {
            let (f, input) = load_map(map, "map")?;
            let analytic = lib(ramification_profile(&f))?;
            let m = match ext_degree {
                Some(m) => *m,
                None => lib(oracle_extension_degree(&analytic))?,
            };
            let brute = lib(brute_force_profile(&f, m))?;
            let c = compare_with_oracle(&analytic, &brute, m);
            Ok(report(
                "oracle",
                vec![format!("--ext-degree={m}")],
                vec![input],
                Some(c.agree),
                OracleReport::new(&c, &analytic, &brute),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| {
        match &cli.output {
            Some(path) => write(path, &o.json)?,
            None => print!("{}", o.json),
        }
        Ok(o.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

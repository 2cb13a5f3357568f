//! Command-line front end.
//!
//! Exit codes form the CI contract: 0 pass, 1 verification failure,
//! 2 parse/usage error, 3 enumeration cap exceeded without `--force`,
//! 4 statement hypotheses unmet.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::SimplicialComplex;
use crate::connectivity::vertex_connectivity;
use crate::generators::{random_complex, GeneratorSpec};
use crate::homology::FieldSpec;
use crate::io::{complex_from_facet_text, render_facet_text};
use crate::regularity::{taylor_bound, RegularityError, HARD_ENUMERATION_CEILING};
use crate::report::{analyze, render_analyze_text};
use crate::theorems::{
    balbarath_bound, find_certificate, verify_connectivity_bound, verify_dhs_connectivity,
    verify_prism_family, verify_separator_regularity, verify_taylor_suitability,
    verify_tightness_family, VerificationReport, VerificationStatus,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_UNMET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "srtk",
    version,
    about = "Homology, Betti tables, regularity and skeleton connectivity of simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonOpts {
    /// Coefficient field characteristics (primes), in search order.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
    pub fields: Vec<u32>,

    /// Subset-enumeration cap; runs on more vertices are refused.
    #[arg(long, default_value_t = crate::regularity::DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,

    /// Raise the cap to the hard ceiling of 26 vertices.
    #[arg(long)]
    pub force: bool,

    /// Worker threads (defaults to all cores).
    #[arg(long, env = "SRTK_JOBS")]
    pub jobs: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

impl CommonOpts {
    fn effective_cap(&self) -> usize {
        if self.force {
            HARD_ENUMERATION_CEILING
        } else {
            self.cap.min(HARD_ENUMERATION_CEILING)
        }
    }

    fn field_specs(&self) -> Result<Vec<FieldSpec>, String> {
        if self.fields.is_empty() {
            return Err("at least one field is required".into());
        }
        self.fields
            .iter()
            .map(|&p| FieldSpec::new(p).map_err(|e| e.to_string()))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Statement {
    Theorem3,
    Corollary5,
    DhsCorollary,
    Example6,
    Example2,
    TaylorSuitability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Nevo,
    Simplex,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One-shot report: structure, homology, Betti table, regularity,
    /// connectivity, and a cycle certificate attempt.
    Analyze {
        /// Facet file (`-` reads stdin).
        input: Option<PathBuf>,
        /// Generate the input instead: name or name:arg,arg
        /// (octahedron, simplex-boundary:d, cycle:m, cross-polytope:m,
        /// nevo:s,h, prism:d, random:n,dim_cap,density,seed).
        #[arg(long, conflicts_with = "input")]
        generate: Option<String>,
        /// Compact label gaps instead of rejecting ghost vertices.
        #[arg(long)]
        relabel: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Machine-verify one statement; emits a JSON verification report.
    Verify {
        statement: Statement,
        /// Facet file (`-` reads stdin).
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        generate: Option<String>,
        /// Parameter grid, e.g. `s=2..5,h=s-1..7` (example6) or
        /// `d=2..4` (example2).
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        relabel: bool,
        /// Attach wall-clock timings to the report (off by default so
        /// identical runs stay byte-identical).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit a generated complex in the facet file format.
    Generate {
        /// Generator spec: name or name:arg,arg.
        spec: String,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Sweep a family and emit one CSV row per certified instance.
    Search {
        #[arg(long, value_enum)]
        family: Family,
        /// Largest s for the nevo family.
        #[arg(long, default_value_t = 4)]
        max_s: usize,
        /// Largest h for the nevo family.
        #[arg(long, default_value_t = 6)]
        max_h: usize,
        /// Simplex-boundary sweep range.
        #[arg(long, default_value_t = 2)]
        min_d: usize,
        #[arg(long, default_value_t = 6)]
        max_d: usize,
        /// Random family: vertex count, instance count, dimension cap,
        /// face density, base seed.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        dim_cap: usize,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze { input, generate, relabel, format, common } => {
            run_analyze(input, generate, relabel, format, &common)
        }
        Command::Verify { statement, input, generate, grid, relabel, timings, common } => {
            run_verify(statement, input, generate, grid, relabel, timings, &common)
        }
        Command::Generate { spec, output } => run_generate(&spec, output),
        Command::Search {
            family,
            max_s,
            max_h,
            min_d,
            max_d,
            n,
            count,
            dim_cap,
            density,
            seed,
            common,
        } => run_search(
            family,
            SearchArgs { max_s, max_h, min_d, max_d, n, count, dim_cap, density, seed },
            &common,
        ),
    }
}

fn init_jobs(common: &CommonOpts) {
    if let Some(jobs) = common.jobs {
        // Ignore failures: the pool can only be initialized once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

/// Loads the target complex from a file or a generator spec, with its
/// display label.
fn load_complex(
    input: Option<&PathBuf>,
    generate: Option<&str>,
    relabel: bool,
) -> Result<(SimplicialComplex, String), String> {
    match (input, generate) {
        (Some(path), None) => {
            let text = read_input(path)?;
            let (cx, map) = complex_from_facet_text(&text, relabel).map_err(|e| e.to_string())?;
            let label = if path.as_os_str() == "-" {
                "<stdin>".to_string()
            } else {
                path.display().to_string()
            };
            if let Some(map) = map {
                let pairs: Vec<String> = map
                    .iter()
                    .enumerate()
                    .map(|(i, &old)| format!("{}<-{}", i + 1, old))
                    .collect();
                eprintln!("relabeled vertices: {}", pairs.join(" "));
            }
            Ok((cx, label))
        }
        (None, Some(spec)) => {
            let parsed = GeneratorSpec::parse(spec).map_err(|e| e.to_string())?;
            let cx = parsed.build().map_err(|e| e.to_string())?;
            Ok((cx, parsed.provenance()))
        }
        (None, None) => Err("no input: give a facet file or --generate".into()),
        (Some(_), Some(_)) => Err("give either a facet file or --generate, not both".into()),
    }
}

fn write_output(output: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, content).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_error(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_PARSE
}

fn regularity_exit(e: &RegularityError) -> i32 {
    match e {
        RegularityError::CapExceeded { .. } => EXIT_CAP,
        RegularityError::HypothesisUnmet(_) => EXIT_UNMET,
        _ => EXIT_PARSE,
    }
}

fn run_analyze(
    input: Option<PathBuf>,
    generate: Option<String>,
    relabel: bool,
    format: OutputFormat,
    common: &CommonOpts,
) -> i32 {
    init_jobs(common);
    let fields = match common.field_specs() {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let (cx, label) = match load_complex(input.as_ref(), generate.as_deref(), relabel) {
        Ok(v) => v,
        Err(e) => return parse_error(e),
    };
    let report = match analyze(&cx, &label, &fields, common.effective_cap()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return regularity_exit(&e);
        }
    };
    let rendered = match format {
        OutputFormat::Text => render_analyze_text(&report),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    match write_output(common.output.as_ref(), &rendered) {
        Ok(()) => EXIT_PASS,
        Err(e) => parse_error(e),
    }
}

fn status_exit(status: VerificationStatus) -> i32 {
    match status {
        VerificationStatus::Pass => EXIT_PASS,
        VerificationStatus::Fail => EXIT_FAIL,
        VerificationStatus::HypothesisUnmet => EXIT_UNMET,
    }
}

fn run_verify(
    statement: Statement,
    input: Option<PathBuf>,
    generate: Option<String>,
    grid: Option<String>,
    relabel: bool,
    timings: bool,
    common: &CommonOpts,
) -> i32 {
    init_jobs(common);
    let fields = match common.field_specs() {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let cap = common.effective_cap();
    let started = Instant::now();

    let result: Result<VerificationReport, RegularityError> = match statement {
        Statement::Example6 => {
            let grid_spec = grid.as_deref().unwrap_or("s=2..5,h=s-1..7");
            let points = match parse_nevo_grid(grid_spec) {
                Ok(p) => p,
                Err(e) => return parse_error(e),
            };
            verify_tightness_family(&points, fields[0])
        }
        Statement::Example2 => {
            let grid_spec = grid.as_deref().unwrap_or("d=2..4");
            let ds = match parse_range_grid(grid_spec, "d") {
                Ok(d) => d,
                Err(e) => return parse_error(e),
            };
            verify_prism_grid(&ds, &fields, cap)
        }
        _ => {
            let (cx, label) = match load_complex(input.as_ref(), generate.as_deref(), relabel) {
                Ok(v) => v,
                Err(e) => return parse_error(e),
            };
            match statement {
                Statement::Theorem3 => verify_separator_regularity(&cx, &label, &fields, cap),
                Statement::Corollary5 => verify_connectivity_bound(&cx, &label, &fields, cap),
                Statement::DhsCorollary => verify_dhs_connectivity(&cx, &label, &fields, cap),
                Statement::TaylorSuitability => {
                    verify_taylor_suitability(&cx, &label, fields[0], cap)
                }
                Statement::Example6 | Statement::Example2 => unreachable!(),
            }
        }
    };

    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return regularity_exit(&e);
        }
    };
    if timings {
        let mut map = std::collections::BTreeMap::new();
        map.insert("total_s".to_string(), started.elapsed().as_secs_f64());
        report.timings = Some(map);
    }
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    if let Err(e) = write_output(common.output.as_ref(), &json) {
        return parse_error(e);
    }
    let status = match report.status {
        VerificationStatus::Pass => "pass",
        VerificationStatus::Fail => "FAIL",
        VerificationStatus::HypothesisUnmet => "hypothesis-unmet",
    };
    eprintln!("{}: {status}", report.statement);
    status_exit(report.status)
}

/// example2 over several prism dimensions, merged into one report.
fn verify_prism_grid(
    ds: &[usize],
    fields: &[FieldSpec],
    cap: usize,
) -> Result<VerificationReport, RegularityError> {
    let mut merged: Option<VerificationReport> = None;
    for &d in ds {
        let r = verify_prism_family(d, fields, cap)?;
        merged = Some(match merged {
            None => r,
            Some(mut acc) => {
                if r.status == VerificationStatus::Fail
                    || (acc.status == VerificationStatus::Pass
                        && r.status == VerificationStatus::HypothesisUnmet)
                {
                    acc.status = r.status;
                }
                acc.instance = format!("prism d={}..{}", ds[0], ds[ds.len() - 1]);
                acc.witnesses.extend(r.witnesses);
                acc
            }
        });
    }
    merged.ok_or_else(|| RegularityError::DomainError("empty prism grid".into()))
}

fn run_generate(spec: &str, output: Option<PathBuf>) -> i32 {
    let parsed = match GeneratorSpec::parse(spec) {
        Ok(p) => p,
        Err(e) => return parse_error(e),
    };
    let cx = match parsed.build() {
        Ok(c) => c,
        Err(e) => return parse_error(e),
    };
    let text = render_facet_text(&cx, Some(&parsed.provenance()));
    match write_output(output.as_ref(), &text) {
        Ok(()) => EXIT_PASS,
        Err(e) => parse_error(e),
    }
}

struct SearchArgs {
    max_s: usize,
    max_h: usize,
    min_d: usize,
    max_d: usize,
    n: usize,
    count: usize,
    dim_cap: usize,
    density: f64,
    seed: u64,
}

fn run_search(family: Family, args: SearchArgs, common: &CommonOpts) -> i32 {
    init_jobs(common);
    let fields = match common.field_specs() {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let cap = common.effective_cap();

    let mut instances: Vec<(String, SimplicialComplex)> = Vec::new();
    match family {
        Family::Nevo => {
            for s in 2..=args.max_s {
                for h in (s - 1).max(1)..=args.max_h {
                    match crate::generators::nevo_complex(s, h) {
                        Ok((cx, _)) => instances.push((format!("nevo:{s},{h}"), cx)),
                        Err(e) => eprintln!("note: skipping nevo:{s},{h}: {e}"),
                    }
                }
            }
        }
        Family::Simplex => {
            for d in args.min_d.max(1)..=args.max_d {
                instances.push((
                    format!("simplex-boundary:{d}"),
                    crate::generators::simplex_boundary(d),
                ));
            }
        }
        Family::Random => {
            for i in 0..args.count as u64 {
                let seed = args.seed.wrapping_add(i);
                match random_complex(args.n, args.dim_cap, args.density, seed) {
                    Ok(cx) => instances.push((
                        format!("random:{},{},{},{}", args.n, args.dim_cap, args.density, seed),
                        cx,
                    )),
                    Err(e) => eprintln!("note: skipping random seed {seed}: {e}"),
                }
            }
        }
    }

    let mut out = String::from("construction,n,s,h,reg,taylor_bound,kappa,balbarath_bound,slack\n");
    for (label, cx) in instances {
        match search_row(&label, &cx, &fields, cap) {
            Ok(Some(row)) => out.push_str(&row),
            Ok(None) => {}
            Err(e) => {
                eprintln!("error: {e}");
                return regularity_exit(&e);
            }
        }
    }
    match write_output(common.output.as_ref(), &out) {
        Ok(()) => EXIT_PASS,
        Err(e) => parse_error(e),
    }
}

/// One CSV row, or `None` (with a stderr note) when the instance does
/// not qualify: oversize inputs, zero face ideals, and uncertified
/// complexes are skipped rather than aborting the sweep.
fn search_row(
    label: &str,
    cx: &SimplicialComplex,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<Option<String>, RegularityError> {
    let n = cx.vertex_count();
    let Ok(s) = cx.max_nonface_degree() else {
        eprintln!("note: skipping {label}: face ideal is zero");
        return Ok(None);
    };
    let found = match find_certificate(cx, fields, cap) {
        Ok(found) => found,
        Err(RegularityError::CapExceeded { n, cap }) => {
            eprintln!("note: skipping {label}: {n} vertices exceed cap {cap}");
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let Some((cert, scan)) = found else {
        eprintln!("note: skipping {label}: no vertex-minimal cycle certificate");
        return Ok(None);
    };
    let reg = scan.regularity().reg;
    let h = cert.h.max(0) as usize;
    let taylor = taylor_bound(n, s)?;
    let taylor_str = if taylor.is_integer() {
        taylor.numer().to_string()
    } else {
        format!("{}/{}", taylor.numer(), taylor.denom())
    };
    let kappa = vertex_connectivity(&cx.one_skeleton())
        .map_err(|e| RegularityError::DomainError(e.to_string()))?
        .kappa;
    let bound = balbarath_bound(s, h)?;
    let slack = kappa as i64 - bound as i64;
    Ok(Some(format!(
        "{label},{n},{s},{h},{reg},{taylor_str},{kappa},{bound},{slack}\n"
    )))
}

/// Parses `s=A..B,h=L..C` where `L` is an integer or the token `s-1`.
pub fn parse_nevo_grid(spec: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut s_range: Option<(usize, usize)> = None;
    let mut h_low_is_s_minus_1 = false;
    let mut h_range: Option<(usize, usize)> = None;
    for part in spec.split(',') {
        let (key, range) = part
            .split_once('=')
            .ok_or_else(|| format!("grid part '{part}' is missing '='"))?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| format!("grid range '{range}' is missing '..'"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad grid bound '{hi}'"))?;
        match key.trim() {
            "s" => {
                let lo: usize =
                    lo.trim().parse().map_err(|_| format!("bad grid bound '{lo}'"))?;
                s_range = Some((lo, hi));
            }
            "h" => {
                if lo.trim() == "s-1" {
                    h_low_is_s_minus_1 = true;
                    h_range = Some((0, hi));
                } else {
                    let lo: usize =
                        lo.trim().parse().map_err(|_| format!("bad grid bound '{lo}'"))?;
                    h_range = Some((lo, hi));
                }
            }
            other => return Err(format!("unknown grid key '{other}' (expected s or h)")),
        }
    }
    let (s_lo, s_hi) = s_range.ok_or("grid needs an s range")?;
    let (h_lo, h_hi) = h_range.ok_or("grid needs an h range")?;
    if s_lo < 2 {
        return Err("grid needs s >= 2".into());
    }
    let mut points = Vec::new();
    for s in s_lo..=s_hi {
        let low = if h_low_is_s_minus_1 { s - 1 } else { h_lo };
        for h in low.max(1)..=h_hi {
            points.push((s, h));
        }
    }
    if points.is_empty() {
        return Err("grid is empty".into());
    }
    Ok(points)
}

/// Parses a single-key integer grid such as `d=2..4`.
pub fn parse_range_grid(spec: &str, key: &str) -> Result<Vec<usize>, String> {
    let (k, range) = spec
        .split_once('=')
        .ok_or_else(|| format!("grid '{spec}' is missing '='"))?;
    if k.trim() != key {
        return Err(format!("expected grid key '{key}', got '{}'", k.trim()));
    }
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| format!("grid range '{range}' is missing '..'"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad grid bound '{lo}'"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad grid bound '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty grid {lo}..{hi}"));
    }
    Ok((lo..=hi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nevo_grid_expansion() {
        let points = parse_nevo_grid("s=2..3,h=s-1..3").unwrap();
        assert_eq!(points, vec![(2, 1), (2, 2), (2, 3), (3, 2), (3, 3)]);
        let points = parse_nevo_grid("s=2..2,h=2..2").unwrap();
        assert_eq!(points, vec![(2, 2)]);
        assert!(parse_nevo_grid("s=1..3,h=1..2").is_err());
        assert!(parse_nevo_grid("x=2..3").is_err());
        assert!(parse_nevo_grid("s=2..3").is_err());
    }

    #[test]
    fn range_grid() {
        assert_eq!(parse_range_grid("d=2..4", "d").unwrap(), vec![2, 3, 4]);
        assert!(parse_range_grid("q=2..4", "d").is_err());
        assert!(parse_range_grid("d=4..2", "d").is_err());
    }

    #[test]
    fn cli_parses_the_documented_invocations() {
        use clap::Parser as _;
        for argv in [
            vec!["srtk", "analyze", "--generate", "octahedron"],
            vec!["srtk", "analyze", "cube.facets"],
            vec!["srtk", "analyze", "--generate", "simplex-boundary:3", "--format", "json"],
            vec!["srtk", "verify", "corollary5", "--generate", "nevo:3,3"],
            vec!["srtk", "verify", "theorem3", "--generate", "cross-polytope:3"],
            vec!["srtk", "verify", "example6", "--grid", "s=2..5,h=s-1..7"],
            vec!["srtk", "verify", "example2"],
            vec!["srtk", "generate", "nevo:3,3", "-o", "out.facets"],
            vec!["srtk", "search", "--family", "nevo", "--max-s", "4", "--max-h", "6"],
            vec!["srtk", "search", "--family", "random", "--n", "8", "--count", "5"],
            vec!["srtk", "search", "--family", "simplex", "--min-d", "2", "--max-d", "6"],
        ] {
            Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
        }
        assert!(Cli::try_parse_from(["srtk", "verify", "lemma9"]).is_err());
    }
}

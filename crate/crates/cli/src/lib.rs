//! The `idealfam` command line.
//!
//! Exit status: 0 when the command succeeds and every checked property holds,
//! 1 when a property or identity fails, 2 for usage and input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ideal_families::enumerate::{
    count_downward_closed, count_ideal_families, count_ideal_families_up_to_iso, search_intersection_closed_violations,
    verify_ideal_families_with_progress, EnumerationStats, SearchCoverage, SearchOptions, VerifyOptions,
    MAX_ENUMERATION_N, MAX_SEARCH_N,
};
use ideal_families::minors::{apply_minor, check_decomposition_identities, MinorKind};
use ideal_families::replay::replay_induction;
use ideal_families::{catalog, parse_family, validate_ideal, write_family, FamilyReport, SetFamily, Vertex};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `n` that runs without `--deep`.
const SHALLOW_MAX_N: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "idealfam", version, about = "Degrees, minors and NDS checks for set families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report degrees, TSH, NDS, rare vertices and closure properties of a family.
    Check {
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Write a single-vertex minor of a family.
    Minor(MinorArgs),
    /// Enumerate every ideal family on n vertices and check NDS <= 0.
    Enumerate(EnumerateArgs),
    /// Search intersection-closed families for positive NDS.
    Search(SearchArgs),
    /// Replay the NDS induction on an ideal family and print the certificate tree.
    Replay {
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Write the reference families as family files.
    Examples {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct MinorArgs {
    #[arg(long, value_parser = clap::value_parser!(MinorKind))]
    op: MinorKind,
    /// Vertex label, 0-based as in the file.
    #[arg(long)]
    vertex: usize,
    /// Append the decomposition identity report as a `# identities` comment line.
    #[arg(long)]
    report: bool,
    #[arg(long = "in", value_name = "PATH", conflicts_with = "file")]
    input: Option<PathBuf>,
    /// Family file; standard input when neither this nor `--in` is given.
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with_all = ["verify_nds", "verify_injection", "verify_identities"])]
    count_only: bool,
    /// NDS is always checked; accepted for explicitness.
    #[arg(long)]
    verify_nds: bool,
    #[arg(long)]
    verify_injection: bool,
    /// Decomposition identities at every vertex, plus a full induction replay.
    #[arg(long)]
    verify_identities: bool,
    /// Also count families up to relabeling of the vertices.
    #[arg(long)]
    up_to_iso: bool,
    /// Allow n = 6.
    #[arg(long)]
    deep: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    require_empty: bool,
    #[arg(long)]
    require_ground: bool,
    /// Write each family found to its own file in this directory.
    #[arg(long, value_name = "DIR")]
    emit_families: Option<PathBuf>,
    /// Sample this many random closure systems instead of enumerating all.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0, requires = "samples")]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// A finished command's error, carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_FAILED, message: message.into() }
}

fn io_error(what: &Path, e: io::Error) -> Failure {
    usage(format!("{}: {e}", what.display()))
}

type Outcome = Result<(), Failure>;

type Diagnostics<'b> = Mutex<&'b mut (dyn Write + Send)>;

fn diag(stderr: &Diagnostics, text: &str) {
    let mut err = stderr.lock().unwrap_or_else(|p| p.into_inner());
    let _ = writeln!(err, "{text}");
}

struct Io<'a, 'b> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a Diagnostics<'b>,
}

impl Io<'_, '_> {
    fn out(&mut self, text: &str) -> Outcome {
        self.stdout.write_all(text.as_bytes()).map_err(|e| usage(format!("writing output: {e}")))
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Outcome {
        let text = serde_json::to_string_pretty(value).expect("reports serialize");
        self.out(&format!("{text}\n"))
    }

    fn diag(&self, text: &str) {
        diag(self.stderr, text);
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let stderr = Mutex::new(stderr);
    let mut io = Io { stdin, stdout, stderr: &stderr };
    let result = match cli.command {
        Command::Check { json, file } => check(&mut io, &file, json),
        Command::Minor(args) => minor(&mut io, args),
        Command::Enumerate(args) => enumerate(&mut io, args),
        Command::Search(args) => search(&mut io, args),
        Command::Replay { json, file } => replay(&mut io, &file, json),
        Command::Examples { out } => examples(&mut io, &out),
    };
    let _ = io.stdout.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            io.diag(&format!("error: {}", f.message));
            f.code
        }
    }
}

fn load(path: &Path) -> Result<SetFamily, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_family(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn render_report(r: &FamilyReport, family: &SetFamily) -> String {
    let list = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let degrees: Vec<usize> = r.degrees.iter().map(|&d| d as usize).collect();
    let ideal = match validate_ideal(family) {
        Ok(_) => "yes".to_string(),
        Err(v) => format!("no ({v})"),
    };
    format!(
        "n: {}\nedges: {}\nTSH: {}\nNDS: {}\ndegrees: [{}]\nrare vertices: [{}]\nintersection-closed: {}\nideal: {ideal}\n",
        r.n,
        r.num_edges,
        r.tsh,
        r.nds,
        list(&degrees),
        list(&r.rare_vertices),
        if r.is_intersection_closed { "yes" } else { "no" },
    )
}

fn check(io: &mut Io, file: &Path, json: bool) -> Outcome {
    let family = load(file)?;
    let report = FamilyReport::of(&family);
    if json {
        io.json(&report)
    } else {
        io.out(&render_report(&report, &family))
    }
}

fn minor(io: &mut Io, args: MinorArgs) -> Outcome {
    let family = match args.input.as_ref().or(args.file.as_ref()) {
        Some(path) => load(path)?,
        None => {
            let mut text = String::new();
            io.stdin.read_to_string(&mut text).map_err(|e| usage(format!("standard input: {e}")))?;
            parse_family(&text).map_err(|e| usage(format!("standard input: {e}")))?
        }
    };
    let v = Vertex::new(args.vertex)
        .map_err(|e| e.to_string())
        .and_then(|v| family.check_vertex(v).map(|()| v).map_err(|e| e.to_string()))
        .map_err(usage)?;
    let result = apply_minor(args.op, &family, v).map_err(|e| usage(e.to_string()))?;
    io.out(&write_family(&result))?;
    if !args.report {
        return Ok(());
    }
    let ideal = validate_ideal(&family).map_err(|e| usage(format!("--report needs an ideal family: {e}")))?;
    let report = check_decomposition_identities(&ideal, v).map_err(|e| usage(e.to_string()))?;
    io.out(&format!("# identities {}\n", serde_json::to_string(&report).expect("report serializes")))?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(failed(format!("identity {} fails: {} != {}", c.name, c.lhs, c.rhs))),
    }
}

#[derive(Debug, Serialize)]
struct EnumerateSummary {
    n: usize,
    families_visited: u64,
    nds_max: Option<i64>,
    violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    injection_failures: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity_failures: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    downward_closed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iso_classes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
    wall_time_ms: u128,
}

impl EnumerateSummary {
    fn render(&self) -> String {
        let mut out = format!("n: {}\nfamilies visited: {}\n", self.n, self.families_visited);
        if let Some(d) = self.downward_closed {
            out += &format!("downward-closed families: {d}\n");
        }
        if let Some(k) = self.iso_classes {
            out += &format!("classes up to relabeling: {k}\n");
        }
        if let Some(m) = self.nds_max {
            out += &format!("max NDS: {m}\nviolations: {}\n", self.violations);
        }
        if let Some(k) = self.injection_failures {
            out += &format!("injection failures: {k}\n");
        }
        if let Some(k) = self.identity_failures {
            out += &format!("identity failures: {k}\n");
        }
        if let Some(why) = &self.first_failure {
            out += &format!("first failure: {why}\n");
        }
        out + &format!("wall time: {} ms\n", self.wall_time_ms)
    }
}

fn enumerate(io: &mut Io, args: EnumerateArgs) -> Outcome {
    let n = args.n;
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(usage(format!("--n {n} is outside 1..={MAX_ENUMERATION_N}")));
    }
    if n > SHALLOW_MAX_N && !args.deep {
        return Err(usage(format!("--n {n} enumerates millions of families; pass --deep to run it")));
    }
    let start = Instant::now();
    let iso_classes =
        if args.up_to_iso { Some(count_ideal_families_up_to_iso(n).map_err(|e| usage(e.to_string()))?) } else { None };

    let summary = if args.count_only {
        let count = count_ideal_families(n).map_err(|e| usage(e.to_string()))?;
        EnumerateSummary {
            n,
            families_visited: count,
            nds_max: None,
            violations: 0,
            injection_failures: None,
            identity_failures: None,
            downward_closed: Some(count_downward_closed(n).map_err(|e| usage(e.to_string()))?),
            iso_classes,
            first_failure: None,
            wall_time_ms: start.elapsed().as_millis(),
        }
    } else {
        let opts = VerifyOptions { injection: args.verify_injection, identities: args.verify_identities };
        let last_tenth = Mutex::new(0usize);
        let stderr = io.stderr;
        let progress = |done: usize, total: usize| {
            let tenth = done * 10 / total;
            let mut last = last_tenth.lock().unwrap_or_else(|p| p.into_inner());
            if args.deep && tenth > *last {
                *last = tenth;
                diag(stderr, &format!("progress: {}% ({done}/{total} subtrees)", tenth * 10));
            }
        };
        let stats: EnumerationStats =
            verify_ideal_families_with_progress(n, opts, &progress).map_err(|e| usage(e.to_string()))?;
        EnumerateSummary {
            n,
            families_visited: stats.families_visited,
            nds_max: stats.nds_max,
            violations: stats.violations,
            injection_failures: opts.injection.then_some(stats.injection_failures),
            identity_failures: opts.identities.then_some(stats.identity_failures),
            downward_closed: None,
            iso_classes,
            first_failure: stats.first_failure.as_ref().map(|(f, why)| format!("{f}: {why}")),
            wall_time_ms: start.elapsed().as_millis(),
        }
    };

    if args.json {
        io.json(&summary)?;
    } else {
        io.out(&summary.render())?;
    }
    let clean = summary.violations == 0
        && summary.injection_failures.unwrap_or(0) == 0
        && summary.identity_failures.unwrap_or(0) == 0;
    if clean {
        Ok(())
    } else {
        Err(failed(summary.first_failure.unwrap_or_else(|| "verification failed".into())))
    }
}

#[derive(Debug, Serialize)]
struct SearchSummary<'a> {
    n: usize,
    coverage: SearchCoverage,
    require_empty: bool,
    require_ground: bool,
    families_visited: u64,
    nds_max: Option<i64>,
    violations: usize,
    families: Vec<FoundFamily<'a>>,
    wall_time_ms: u128,
}

#[derive(Debug, Serialize)]
struct FoundFamily<'a> {
    nds: i64,
    #[serde(flatten)]
    family: &'a SetFamily,
}

fn search(io: &mut Io, args: SearchArgs) -> Outcome {
    let n = args.n;
    if !(1..=MAX_SEARCH_N).contains(&n) {
        return Err(usage(format!("--n {n} is outside 1..={MAX_SEARCH_N}")));
    }
    let start = Instant::now();
    let opts = SearchOptions {
        require_empty: args.require_empty,
        require_ground: args.require_ground,
        sampling: args.samples.map(|k| (k, args.seed)),
    };
    let report = search_intersection_closed_violations(n, opts).map_err(|e| usage(e.to_string()))?;
    let wall_time_ms = start.elapsed().as_millis();

    if let Some(dir) = &args.emit_families {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        for (i, f) in report.violations.iter().enumerate() {
            let path = dir.join(format!("nds_positive_n{n}_{:05}.fam", i + 1));
            fs::write(&path, write_family(f)).map_err(|e| io_error(&path, e))?;
        }
    }

    let summary = SearchSummary {
        n,
        coverage: report.coverage,
        require_empty: args.require_empty,
        require_ground: args.require_ground,
        families_visited: report.families_visited,
        nds_max: report.nds_max,
        violations: report.violations.len(),
        families: report.violations.iter().map(|family| FoundFamily { nds: family.nds(), family }).collect(),
        wall_time_ms,
    };
    if args.json {
        io.json(&summary)?;
    } else {
        let coverage = match report.coverage {
            SearchCoverage::Exhaustive => "exhaustive".to_string(),
            SearchCoverage::Sampled { samples, seed } => {
                format!("sampled, not exhaustive ({samples} samples, seed {seed})")
            }
        };
        let mut out = format!(
            "n: {n}\ncoverage: {coverage}\nfamilies visited: {}\nmax NDS: {}\nfamilies with NDS > 0: {}\n",
            report.families_visited,
            report.nds_max.map_or("-".to_string(), |m| m.to_string()),
            report.violations.len(),
        );
        for f in &report.violations {
            out += &format!("NDS {}: {f}\n", f.nds());
        }
        io.out(&out)?;
    }
    // NDS > 0 on an ideal family would break the bound the whole crate checks
    match report.violations.iter().find(|f| validate_ideal(f).is_ok()) {
        Some(f) => Err(failed(format!("{f} is ideal with NDS {} > 0", f.nds()))),
        None => Ok(()),
    }
}

fn replay(io: &mut Io, file: &Path, json: bool) -> Outcome {
    let family = load(file)?;
    let ideal = validate_ideal(&family).map_err(|e| usage(format!("{}: not an ideal family: {e}", file.display())))?;
    let cert = replay_induction(&ideal).map_err(|e| failed(e.to_string()))?;
    if json {
        io.json(&cert)?;
    } else {
        io.out(&cert.render_text())?;
    }
    cert.verify().map_err(|e| failed(e.to_string()))
}

/// File name and family of each reference example.
pub fn example_families() -> Vec<(&'static str, SetFamily)> {
    let v3 = Vertex::new(3).expect("in range");
    vec![
        ("power_set_n2.fam", catalog::power_set(2).expect("in range").into_family()),
        ("three_vertex.fam", catalog::three_vertex_ideal().into_family()),
        ("degree_one_n4.fam", catalog::degree_one_family(4, v3).expect("in range").into_family()),
        ("intersection_closed_nds1_n3.fam", catalog::intersection_closed_nds_one()),
    ]
}

fn examples(io: &mut Io, out: &Path) -> Outcome {
    fs::create_dir_all(out).map_err(|e| io_error(out, e))?;
    for (name, family) in example_families() {
        let path = out.join(name);
        fs::write(&path, write_family(&family)).map_err(|e| io_error(&path, e))?;
        io.out(&format!("{}\n", path.display()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary() -> EnumerateSummary {
        EnumerateSummary {
            n: 3,
            families_visited: 18,
            nds_max: None,
            violations: 0,
            injection_failures: None,
            identity_failures: None,
            downward_closed: Some(20),
            iso_classes: None,
            first_failure: None,
            wall_time_ms: 0,
        }
    }

    #[test]
    fn count_only_summary_omits_verification_lines() {
        let text = summary().render();
        assert!(text.contains("downward-closed families: 20"));
        assert!(!text.contains("max NDS"));
        let json = serde_json::to_value(summary()).unwrap();
        assert!(json.get("injection_failures").is_none());
        assert_eq!(json["nds_max"], serde_json::Value::Null);
    }

    #[test]
    fn failures_map_to_exit_statuses() {
        assert_eq!(usage("x").code, EXIT_USAGE);
        assert_eq!(failed("x").code, EXIT_FAILED);
    }

    #[test]
    fn example_files_have_distinct_names() {
        let names: std::collections::BTreeSet<_> = example_families().iter().map(|(n, _)| *n).collect();
        assert_eq!(names.len(), 4);
    }
}

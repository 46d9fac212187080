use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use posviro::commands::{
    cross_family, cyclic_family, order_family, run_checks, CheckReport, CheckRequest, FamilyArtifacts,
};
use posviro::complex::{Bipartition, PointConfiguration, SimplicialComplex};
use posviro::completion::{decorate, CompletionOptions, DecorateOutcome, Strategy};
use posviro::families::{CountTable, Poset};
use posviro::io::{read_json, to_json, write_json};
use posviro::linalg::{format_rational, parse_rational};
use posviro::numerics::{certified_positive_count, default_precision, CertifiedCount, CountOptions, PRECISION_ENV};
use posviro::reproduce::{self, Case, CaseReport, ReproduceOptions};
use posviro::viro::{build_viro_system, HeightFunction, ViroSystem};
use posviro::{Error, RationalMatrix};

#[derive(Parser)]
#[command(name = "posviro", version, about = "Positively decorated complexes and Viro systems")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for the per-facet computations.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Floating point precision in bits.
    #[arg(long, env = PRECISION_ENV, global = true)]
    precision: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cyclic,
    Snd,
    Order,
    Cross,
    SndCounts,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a member of one of the families.
    Family {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Comma separated increasing nodes on the moment curve.
        #[arg(long)]
        nodes: Option<String>,
        /// Poset JSON, for `order`.
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Largest odd d, for `snd-counts`.
        #[arg(long)]
        d_max: Option<usize>,
        /// Write complex.json, points.json, heights.json and coloring.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check properties of a complex.
    Check {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        heights: Option<PathBuf>,
        #[arg(long)]
        bipartite: bool,
        #[arg(long)]
        balanced: bool,
        #[arg(long)]
        decorated: bool,
        #[arg(long)]
        regular: bool,
        #[arg(long)]
        unimodular: bool,
    },
    /// Search for a decoration.
    Decorate {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        denom_bound: u64,
        #[arg(long, default_value = "kernel")]
        strategy: String,
        /// Write the matrix here when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble a Viro system.
    Viro {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        heights: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Count positive roots of a Viro system near the facet predictions.
    Count {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        /// Rational parameter such as 1/1000.
        #[arg(long)]
        t: String,
        /// Fail unless at least this many roots are found.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Rerun the embedded worked examples.
    VerifyPaper {
        /// ex3.6, ex5.8, appendixA, table1, prism or all.
        case: String,
        /// Also count the roots of the 38-facet system.
        #[arg(long)]
        count_s11_5: bool,
    },
}

enum Failure {
    Check,
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Numeric(_) | Error::Singular | Error::RankDeficient => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Outcome {
    match format {
        Format::Json => print!("{}", to_json(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn verdict(pass: bool) -> Outcome {
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn family_text(f: &FamilyArtifacts) -> String {
    let mut s = format!(
        "dimension {}, {} vertices, {} facets\n",
        f.complex.dimension(),
        f.complex.n_vertices(),
        f.complex.len()
    );
    for facet in f.complex.facets() {
        let v: Vec<String> = facet.iter().map(usize::to_string).collect();
        s.push_str(&v.join(" "));
        s.push('\n');
    }
    s
}

fn write_family(dir: &Path, f: &FamilyArtifacts) -> Outcome {
    std::fs::create_dir_all(dir).map_err(Error::from)?;
    write_json(dir.join("complex.json"), &f.complex)?;
    write_json(dir.join("points.json"), &f.points)?;
    write_json(dir.join("heights.json"), &f.heights)?;
    if let Some(c) = &f.coloring {
        write_json(dir.join("coloring.json"), c)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn family(
    format: Format,
    kind: Kind,
    n: Option<usize>,
    d: Option<usize>,
    nodes: Option<String>,
    poset: Option<PathBuf>,
    d_max: Option<usize>,
    out: Option<PathBuf>,
) -> Outcome {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| usage(format!("--{flag} is required")));
    let artifacts = match kind {
        Kind::SndCounts => {
            let d_max = need(d_max, "d-max")?;
            let table = CountTable::diagonal(d_max)?;
            match format {
                Format::Text => print!("{}", table.to_csv()),
                Format::Json => {
                    let rows: Vec<_> = table
                        .iter()
                        .map(|(n, d, c)| serde_json::json!({"d": d, "n": n, "count": c.to_string()}))
                        .collect();
                    print!("{}", to_json(&rows)?);
                }
            }
            return Ok(());
        }
        Kind::Cyclic | Kind::Snd => {
            let nodes = nodes
                .map(|s| s.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            cyclic_family(need(n, "n")?, need(d, "d")?, nodes, kind == Kind::Snd)?
        }
        Kind::Order => {
            let path = poset.ok_or_else(|| usage("--poset is required"))?;
            order_family(&read_json::<Poset>(path)?)?
        }
        Kind::Cross => cross_family(need(d, "d")?)?,
    };
    if let Some(dir) = out {
        write_family(&dir, &artifacts)?;
    }
    emit(format, &artifacts, || family_text(&artifacts))
}

fn check_text(r: &CheckReport) -> String {
    let mut s = String::new();
    if let Some(b) = &r.bipartite {
        match b {
            Bipartition::Colored(_) => s.push_str("PASS bipartite\n"),
            Bipartition::OddCycle(c) => s.push_str(&format!("FAIL bipartite: odd cycle of facets {c:?}\n")),
        }
    }
    if let Some(b) = &r.balanced {
        match &b.coloring {
            Some(c) => s.push_str(&format!("PASS balanced: colors {:?}\n", c.colors)),
            None => s.push_str("FAIL balanced: no balanced coloring\n"),
        }
    }
    if let Some(d) = &r.decorated {
        s.push_str(&format!(
            "{} decorated: {}/{} facets",
            mark(d.decorated),
            d.n_facets - d.failing.len(),
            d.n_facets
        ));
        if !d.failing.is_empty() {
            s.push_str(&format!(", failing {:?}", d.failing));
        }
        s.push('\n');
    }
    if let Some(g) = &r.regular {
        s.push_str(&format!("{} regular: {} violations\n", mark(g.regular), g.violations.len()));
        for v in g.violations.iter().take(10) {
            s.push_str(&format!(
                "  point {} not above facet {:?} (margin {})\n",
                v.point,
                v.facet,
                format_rational(&v.margin)
            ));
        }
    }
    if let Some(u) = &r.unimodular {
        s.push_str(&format!("{} unimodular\n", mark(u.unimodular)));
        for e in u.exceptions.iter().take(10) {
            s.push_str(&format!("  facet {:?} has volume {}\n", e.facet, format_rational(&e.volume)));
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn check(
    format: Format,
    complex: PathBuf,
    matrix: Option<PathBuf>,
    points: Option<PathBuf>,
    heights: Option<PathBuf>,
    req: CheckRequest,
) -> Outcome {
    let k: SimplicialComplex = read_json(complex)?;
    let c: Option<RationalMatrix> = matrix.map(read_json).transpose()?;
    let a: Option<PointConfiguration> = points.map(read_json).transpose()?;
    let nu: Option<HeightFunction> = heights.map(read_json).transpose()?;
    let r = run_checks(&k, a.as_ref(), c.as_ref(), nu.as_ref(), req)?;
    emit(format, &r, || check_text(&r))?;
    verdict(r.pass)
}

fn decorate_text(o: &DecorateOutcome) -> String {
    if let Some(cycle) = &o.obstruction {
        return format!("FAIL no decoration: dual graph has the odd cycle {cycle:?}\n");
    }
    match &o.matrix {
        Some(c) => format!(
            "PASS decorated by {}, {} completion restarts\n{c}",
            match o.method {
                Some(posviro::completion::Method::Coloring) => "a balanced coloring",
                _ => "completion",
            },
            o.restarts.len()
        ),
        None => {
            let mut s = format!("FAIL no verified decoration in {} restarts\n", o.restarts.len());
            for r in &o.restarts {
                s.push_str(&format!(
                    "  seed {} iterations {} gap {:e} failing facets {}\n",
                    r.seed,
                    r.iterations,
                    r.gap,
                    r.failing.len()
                ));
            }
            s
        }
    }
}

fn run_decorate(
    format: Format,
    complex: PathBuf,
    restarts: usize,
    seed: u64,
    denom_bound: u64,
    strategy: &str,
    out: Option<PathBuf>,
) -> Outcome {
    let strategy: Strategy = strategy.parse()?;
    let k: SimplicialComplex = read_json(complex)?;
    let opts = CompletionOptions {
        strategy,
        restarts,
        seed,
        denom_bound,
        ..CompletionOptions::default()
    };
    let o = decorate(&k, &opts)?;
    if let (Some(path), Some(c)) = (out, &o.matrix) {
        write_json(path, c)?;
    }
    emit(format, &o, || decorate_text(&o))?;
    verdict(o.matrix.is_some())
}

fn viro(format: Format, points: PathBuf, heights: PathBuf, matrix: PathBuf) -> Outcome {
    let a: PointConfiguration = read_json(points)?;
    let nu: HeightFunction = read_json(heights)?;
    let c: RationalMatrix = read_json(matrix)?;
    let s: ViroSystem = build_viro_system(&a, &c, &nu)?;
    emit(format, &s, || s.render())
}

fn count_text(r: &CertifiedCount) -> String {
    let mut s = format!("{} positive roots at t = {}\n", r.count, format_rational(&r.t));
    for w in &r.witnesses {
        s.push_str(&format!(
            "  facet {:?}: residual {:e}, condition {:e}\n",
            w.facet, w.residual, w.jac_cond
        ));
    }
    for f in &r.failures {
        s.push_str(&format!("  facet {:?} dropped: {}\n", f.facet, f.reason));
    }
    s
}

fn count(format: Format, precision: usize, system: PathBuf, complex: PathBuf, t: &str, expect: Option<usize>) -> Outcome {
    let t = parse_rational(t)?;
    let s: ViroSystem = read_json(system)?;
    let k: SimplicialComplex = read_json(complex)?;
    let r = certified_positive_count(&s, &k, &t, &CountOptions::with_precision(precision))?;
    emit(format, &r, || count_text(&r))?;
    verdict(expect.map_or(true, |e| r.count >= e))
}

fn verify_paper(format: Format, precision: usize, case: &str, count_s11_5: bool) -> Outcome {
    let cases: Vec<Case> = if case == "all" {
        Case::ALL.to_vec()
    } else {
        vec![case.parse()?]
    };
    let opts = ReproduceOptions {
        precision,
        count_s11_5,
    };
    let reports = cases
        .into_iter()
        .map(|c| reproduce::run(c, &opts))
        .collect::<Result<Vec<CaseReport>, _>>()?;
    emit(format, &reports, || {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!("{} {}\n", mark(r.pass), r.case));
            for l in &r.checks {
                s.push_str(&format!("  {} {}: {}\n", mark(l.pass), l.name, l.detail));
            }
        }
        s
    })?;
    verdict(reports.iter().all(|r| r.pass))
}

fn run(cli: Cli) -> Outcome {
    if cli.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .map_err(|e| Failure::Numeric(e.to_string()))?;
    let precision = cli.precision.unwrap_or_else(default_precision);
    if precision < 64 {
        return Err(usage("--precision must be at least 64 bits"));
    }
    let format = cli.format;
    match cli.command {
        Command::Family {
            kind,
            n,
            d,
            nodes,
            poset,
            d_max,
            out,
        } => family(format, kind, n, d, nodes, poset, d_max, out),
        Command::Check {
            complex,
            matrix,
            points,
            heights,
            bipartite,
            balanced,
            decorated,
            regular,
            unimodular,
        } => check(
            format,
            complex,
            matrix,
            points,
            heights,
            CheckRequest {
                bipartite,
                balanced,
                decorated,
                regular,
                unimodular,
            },
        ),
        Command::Decorate {
            complex,
            restarts,
            seed,
            denom_bound,
            strategy,
            out,
        } => run_decorate(format, complex, restarts, seed, denom_bound, &strategy, out),
        Command::Viro {
            points,
            heights,
            matrix,
        } => viro(format, points, heights, matrix),
        Command::Count {
            system,
            complex,
            t,
            expect,
        } => count(format, precision, system, complex, &t, expect),
        Command::VerifyPaper { case, count_s11_5 } => verify_paper(format, precision, &case, count_s11_5),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

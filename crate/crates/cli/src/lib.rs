//! The `pgcolor` command line.
//!
//! Exit codes: 0 success, 1 a verification came out false (or a search
//! proved there is nothing to find), 2 usage error, 3 search budget
//! exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pgcolor::cert::{export_certificate, import_certificate, Certificate, ColoringCertificate, Imported};
use pgcolor::coloring::{lower_bound, search_pg4_coloring, search_property_r, target_chromatic_index};
use pgcolor::construction::{base_parallelism, recursive_color, BaseCase, RecursionInputs, Template};
use pgcolor::field::GaloisField;
use pgcolor::orbits::orbit_partition;
use pgcolor::property_e::{
    expand_base_spread, format_q2_table, format_spread, load_paper_dataset, verify_property_e, DATASET_QS,
};
use pgcolor::spreads::{
    search_parallelism, search_spread, OrbitProfile, ParallelismMode, ParallelismOptions, SearchOptions,
    SearchOutcome, SpreadConstraints,
};
use pgcolor::tpg::{build_tpg, resolve_tpg, verify_resolution, verify_td};
use pgcolor::{Error, Model, Space};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pgcolor", version, about = "Spreads, parallelisms and line colorings of PG(n,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct SearchArgs {
    /// Search node budget.
    #[arg(long, env = "PGCOLOR_BUDGET", default_value_t = 10_000_000)]
    budget: u64,
    /// Seed for randomized candidate order; omit for the canonical order.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct Dims {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Singer,
    Product,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Singer => Model::Singer,
            ModelArg::Product => Model::Product,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    #[value(name = "withE")]
    WithE,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a finite field and optionally its log/Zech tables.
    Field {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        table: bool,
    },
    /// Point and line counts of PG(n,q).
    Space {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "singer")]
        model: ModelArg,
        /// List every line.
        #[arg(long)]
        lines: bool,
    },
    /// Line orbits under the Singer cycle.
    Orbits {
        #[command(flatten)]
        dims: Dims,
    },
    /// Search for a spread of Singer PG(n,q).
    SpreadSearch {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum)]
        profile: Option<ProfileArg>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a parallelism of Singer PG(n,q).
    ParallelismSearch {
        #[command(flatten)]
        dims: Dims,
        /// Require invariance under the cyclic translation group of this order.
        #[arg(long)]
        group_order: Option<u32>,
        #[arg(long, default_value_t = 1)]
        restarts: u32,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Property-E families of PG(3,q).
    #[command(name = "property-e", subcommand)]
    PropertyE(PeCommand),
    /// The transversal design TPG(n,q) and its resolution.
    #[command(subcommand)]
    Tpg(TpgCommand),
    /// Line colorings.
    #[command(subcommand)]
    Color(ColorCommand),
    /// Re-verify any certificate file.
    Verify { file: PathBuf },
    /// Write a built-in property-E dataset as a certificate.
    Export {
        #[arg(long)]
        dataset: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Import a certificate, re-verify it and describe it.
    Import { file: PathBuf },
    /// List and verify the built-in datasets.
    Datasets,
}

#[derive(Subcommand, Debug)]
enum PeCommand {
    /// Verify a built-in dataset or a certificate file.
    Verify {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, conflicts_with = "file")]
        builtin: bool,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Search for a base spread with the withE profile and expand it.
    Build {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the family of a built-in dataset, one member per line.
    Show {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand, Debug)]
enum TpgCommand {
    Build {
        #[command(flatten)]
        dims: Dims,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Resolve {
        #[command(flatten)]
        dims: Dims,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ColorCommand {
    /// Color PG(n,q), n >= 5, with c(n,q) colors by recursion.
    Recurse {
        #[command(flatten)]
        dims: Dims,
        /// Parallelism of PG(3,q) to start from (odd n); searched when absent.
        #[arg(long)]
        base_cert: Option<PathBuf>,
        /// Coloring of PG(4,q) (even n).
        #[arg(long, requires = "ipg4_cert")]
        pg4_cert: Option<PathBuf>,
        /// Property-R coloring of IPG(4,q;2) (even n).
        #[arg(long, requires = "pg4_cert")]
        ipg4_cert: Option<PathBuf>,
        /// Property-E certificate; the built-in dataset when absent.
        #[arg(long)]
        property_e: Option<PathBuf>,
        /// Search for the PG(4,q) inputs instead of importing them.
        #[arg(long, conflicts_with_all = ["pg4_cert", "ipg4_cert"])]
        search_pg4: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the property-R certificate of the top level.
        #[arg(long)]
        property_r_out: Option<PathBuf>,
    },
    /// Verify a coloring certificate.
    Verify { file: PathBuf },
    /// Tabu search for a coloring of PG(4,q).
    SearchPg4 {
        #[arg(long)]
        q: u32,
        /// Defaults to c(4,q).
        #[arg(long)]
        palette: Option<u32>,
        /// Search for a property-R coloring of IPG(4,q;2) instead.
        #[arg(long)]
        property_r: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Outcome {
    Ok,
    False,
    Budget,
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run_with(args, &mut out)
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::False) => EXIT_FALSE,
        Ok(Outcome::Budget) => EXIT_BUDGET,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Verification(_) | Error::Certificate(_) | Error::MalformedDataset(_)) => EXIT_FALSE,
                _ if e.downcast_ref::<std::io::Error>().is_some() => EXIT_FALSE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Field { q, table } => field(q, table, out),
        Command::Space { dims, model, lines } => space(dims, model.into(), lines, out),
        Command::Orbits { dims } => orbits(dims, out),
        Command::SpreadSearch { dims, profile, search, output } => spread_search(dims, profile, search, output, out),
        Command::ParallelismSearch { dims, group_order, restarts, search, output } => {
            parallelism(dims, group_order, restarts, search, output, out)
        }
        Command::PropertyE(c) => property_e(c, out),
        Command::Tpg(c) => tpg(c, out),
        Command::Verify { file } | Command::Color(ColorCommand::Verify { file }) => verify(&file, out),
        Command::Color(c) => color(c, out),
        Command::Export { dataset, output } => {
            let (space, cert) = load_paper_dataset(dataset)?;
            write_certificate(&space, &Certificate::PropertyE(cert), &output, out)?;
            Ok(Outcome::Ok)
        }
        Command::Import { file } => {
            let imported = read_certificate(&file)?;
            let d = &imported.envelope.space;
            writeln!(out, "kind: {:?}", imported.envelope.kind)?;
            writeln!(out, "space: PG({},{}) {} model", d.n, d.q, d.model)?;
            writeln!(out, "tool: {}", imported.envelope.tool_version)?;
            writeln!(out, "contentHash: {}", imported.envelope.content_hash)?;
            writeln!(out, "verified: {}", imported.verdict.summary)?;
            Ok(Outcome::Ok)
        }
        Command::Datasets => {
            for q in DATASET_QS {
                let (space, cert) = load_paper_dataset(q)?;
                let r = verify_property_e(&space, &cert)?;
                let env = export_certificate(&space, &Certificate::PropertyE(cert.clone()))?;
                writeln!(out, "q={q}: {} spreads, {}, contentHash {}", cert.family.len(), r.summary(), env.content_hash)?;
            }
            Ok(Outcome::Ok)
        }
    }
}

fn field(q: u32, table: bool, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let f = GaloisField::with_order(q)?;
    writeln!(out, "GF({q}) = GF({})^{}, polynomial {:?} (low degree first)", f.p(), f.m(), f.poly())?;
    if table {
        writeln!(out, "log code zech")?;
        for k in 0..f.mult_order() {
            let z = f.zech(k).map_or("-".to_string(), |z| z.to_string());
            writeln!(out, "{k} {} {z}", f.to_code(f.element(k as u64)))?;
        }
    }
    Ok(Outcome::Ok)
}

fn space(d: Dims, model: Model, lines: bool, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let s = Space::new(d.n, d.q, model)?;
    writeln!(out, "PG({},{}) {model} model", d.n, d.q)?;
    writeln!(out, "points: {}", s.num_points())?;
    writeln!(out, "lines: {}", s.num_lines())?;
    writeln!(out, "points per line: {}", s.line_size())?;
    writeln!(out, "lines per point: {}", s.lines_through(0).len())?;
    if lines {
        for l in 0..s.num_lines() {
            let labels: Vec<String> = s.line(l).iter().map(|&p| label(&s, p)).collect();
            writeln!(out, "{l}: {}", labels.join(" "))?;
        }
    }
    Ok(Outcome::Ok)
}

fn label(s: &Space, p: u32) -> String {
    match s.point_label(p) {
        pgcolor::PointLabel::Index(i) => i.to_string(),
        pgcolor::PointLabel::Coords(c) => format!("{c:?}"),
    }
}

fn orbits(d: Dims, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let s = Space::new(d.n, d.q, Model::Singer)?;
    let o = orbit_partition(&s)?;
    let short: Vec<usize> = o.short.iter().map(Vec::len).collect();
    writeln!(out, "PG({},{}): {} lines, {} orbits", d.n, d.q, s.num_lines(), o.num_orbits())?;
    writeln!(out, "short orbits: {} of sizes {short:?}", o.short.len())?;
    writeln!(out, "full orbits: {} of size {}", o.full.len(), s.num_points())?;
    for (i, orbit) in o.orbits().enumerate() {
        writeln!(out, "orbit {i}: representative {}", format_spread(&s, &orbit[..1]))?;
    }
    Ok(Outcome::Ok)
}

fn spread_search(
    d: Dims,
    profile: Option<ProfileArg>,
    search: SearchArgs,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let s = Space::new(d.n, d.q, Model::Singer)?;
    let constraints = SpreadConstraints { profile: profile.map(|_| OrbitProfile::WithE), ..Default::default() };
    let outcome = search_spread(&s, &constraints, SearchOptions { budget: search.budget, seed: search.seed })?;
    report_search(outcome, out, |spread, out| {
        writeln!(out, "spread of {} lines: {}", spread.len(), format_spread(&s, &spread))?;
        if let Some(path) = &output {
            write_certificate(&s, &Certificate::Spread(spread), path, out)?;
        }
        Ok(())
    })
}

fn report_search<T>(
    outcome: SearchOutcome<T>,
    out: &mut dyn Write,
    found: impl FnOnce(T, &mut dyn Write) -> anyhow::Result<()>,
) -> anyhow::Result<Outcome> {
    match outcome {
        SearchOutcome::Found(x) => {
            found(x, out)?;
            Ok(Outcome::Ok)
        }
        SearchOutcome::Exhausted { nodes } => {
            writeln!(out, "none exists: search tree exhausted after {nodes} nodes")?;
            Ok(Outcome::False)
        }
        SearchOutcome::BudgetExceeded { nodes } => {
            writeln!(out, "budget exhausted after {nodes} nodes")?;
            Ok(Outcome::Budget)
        }
    }
}

fn parallelism(
    d: Dims,
    group_order: Option<u32>,
    restarts: u32,
    search: SearchArgs,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let s = Space::new(d.n, d.q, Model::Singer)?;
    let mode = group_order.map_or(ParallelismMode::Plain, ParallelismMode::PrescribedCyclic);
    let opts = ParallelismOptions { mode, budget: search.budget, seed: search.seed, restarts };
    report_search(search_parallelism(&s, opts)?, out, |p, out| {
        writeln!(out, "{} spreads × {} lines", p.len(), p[0].len())?;
        if let Some(path) = &output {
            write_certificate(&s, &Certificate::Parallelism(p), path, out)?;
        }
        Ok(())
    })
}

fn property_e(cmd: PeCommand, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cmd {
        PeCommand::Verify { q, builtin, file } => {
            let (space, cert) = match (q, builtin, file) {
                (_, _, Some(path)) => {
                    let imported = read_certificate(&path)?;
                    match imported.certificate {
                        Certificate::PropertyE(c) => (imported.space, c),
                        _ => bail!(Error::Certificate("not a property-E certificate".into())),
                    }
                }
                (Some(q), _, None) => load_paper_dataset(q)?,
                (None, _, None) => bail!(Error::MissingInput("give --q with --builtin, or --file".into())),
            };
            let r = verify_property_e(&space, &cert)?;
            writeln!(out, "{} spreads, {}", cert.family.len(), r.summary())?;
            Ok(if r.valid { Outcome::Ok } else { Outcome::False })
        }
        PeCommand::Build { q, search, output } => {
            let s = Space::new(3, q, Model::Singer)?;
            let c = SpreadConstraints { profile: Some(OrbitProfile::WithE), ..Default::default() };
            let outcome = search_spread(&s, &c, SearchOptions { budget: search.budget, seed: search.seed })?;
            report_search(outcome, out, |base, out| {
                writeln!(out, "base spread: {}", format_spread(&s, &base))?;
                let cert = expand_base_spread(&s, &base)?;
                let r = verify_property_e(&s, &cert)?;
                writeln!(out, "{} spreads, {}", cert.family.len(), r.summary())?;
                if let Some(path) = &output {
                    write_certificate(&s, &Certificate::PropertyE(cert), path, out)?;
                }
                Ok(())
            })
        }
        PeCommand::Show { q } => {
            let (space, cert) = load_paper_dataset(q)?;
            writeln!(out, "P={}", format_spread(&space, &cert.special))?;
            write!(out, "{}", format_q2_table(&space, &cert))?;
            Ok(Outcome::Ok)
        }
    }
}

fn tpg(cmd: TpgCommand, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let (d, resolve, output) = match cmd {
        TpgCommand::Build { dims, output } => (dims, false, output),
        TpgCommand::Resolve { dims, output } => (dims, true, output),
    };
    let td = build_tpg(d.n, d.q)?;
    verify_td(&td)?;
    let points = td.groups * td.group_size;
    writeln!(
        out,
        "TPG({},{}) = TD({}, {}): {points} points, {} blocks, axioms verified",
        d.n,
        d.q,
        td.groups,
        td.group_size,
        td.blocks.len()
    )?;
    let json = if resolve {
        let res = resolve_tpg(&td)?;
        verify_resolution(&td, &res)?;
        writeln!(out, "{} parallel classes, each partitions the {points} points", res.classes.len())?;
        serde_json::to_string(&res)
    } else {
        serde_json::to_string(&td)
    };
    if let Some(path) = output {
        std::fs::write(&path, json?).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(Outcome::Ok)
}

fn color(cmd: ColorCommand, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cmd {
        ColorCommand::Recurse { dims, base_cert, pg4_cert, ipg4_cert, property_e, search_pg4, search, output, property_r_out } => {
            let (n, q) = (dims.n, dims.q);
            let pe = match property_e {
                Some(path) => match read_certificate(&path)? {
                    Imported { space, certificate: Certificate::PropertyE(c), .. } => (space, c),
                    _ => bail!(Error::Certificate("not a property-E certificate".into())),
                },
                None => load_paper_dataset(q)?,
            };
            let base = if n % 2 == 1 {
                let (space, spreads) = match base_cert {
                    Some(path) => match read_certificate(&path)? {
                        Imported { space, certificate: Certificate::Parallelism(p), .. } => (Arc::new(space), p),
                        _ => bail!(Error::Certificate("not a parallelism certificate".into())),
                    },
                    None => base_parallelism(q)?,
                };
                BaseCase::Parallelism { space, spreads }
            } else if search_pg4 {
                let seed = search.seed.unwrap_or(1);
                match pgcolor::construction::pg4_template_by_search(q, search.budget, seed)? {
                    Some(t) => BaseCase::Pg4(t),
                    None => {
                        writeln!(out, "PG(4,{q}) search ran out of budget")?;
                        return Ok(Outcome::Budget);
                    }
                }
            } else {
                match (pg4_cert, ipg4_cert) {
                    (Some(a), Some(b)) => BaseCase::Pg4(pg4_template(&a, &b)?),
                    _ => bail!(Error::MissingInput(format!(
                        "PG({n},{q}) needs --pg4-cert and --ipg4-cert, or --search-pg4"
                    ))),
                }
            };
            let levels = recursive_color(n, q, &RecursionInputs { property_e: pe, base })?;
            for l in &levels {
                writeln!(out, "PG({},{q}): {} colors, audits passed", l.space.n(), l.coloring.palette)?;
            }
            let top = levels.last().ok_or_else(|| anyhow!("no level built"))?;
            if top.audit.classes_are_spreads == Some(true) {
                let k = top.coloring.classes()[0].len();
                writeln!(out, "{} spreads × {k} lines", top.coloring.palette)?;
            }
            if let Some(path) = output {
                let cert = ColoringCertificate { coloring: top.coloring.clone(), budget: Some(top.budget.clone()), property_r: None };
                write_certificate(&top.space, &Certificate::Coloring(cert), &path, out)?;
            }
            if let Some(path) = property_r_out {
                let cert = ColoringCertificate::from_property_r(&top.property_r, Some(top.budget.clone()));
                write_certificate(&top.space, &Certificate::Coloring(cert), &path, out)?;
            }
            Ok(Outcome::Ok)
        }
        ColorCommand::Verify { .. } => unreachable!("handled with verify"),
        ColorCommand::SearchPg4 { q, palette, property_r, search, output } => {
            let seed = search.seed.unwrap_or(1);
            let target = u32::try_from(target_chromatic_index(4, q)?)?;
            if property_r {
                let space = Space::new(4, q, Model::Singer)?;
                let plane = space.subspace_points(&[0, 1, 2])?;
                let Some(cert) = search_property_r(&space, &plane, search.budget, seed)? else {
                    writeln!(out, "IPG(4,{q};2): budget exhausted")?;
                    return Ok(Outcome::Budget);
                };
                writeln!(out, "IPG(4,{q};2): {target} colors, {} incident", cert.incident_colors.len())?;
                if let Some(path) = output {
                    let c = ColoringCertificate::from_property_r(&cert, None);
                    write_certificate(&space, &Certificate::Coloring(c), &path, out)?;
                }
                return Ok(Outcome::Ok);
            }
            let palette = palette.unwrap_or(target);
            let (space, r) = search_pg4_coloring(q, palette, search.budget, seed)?;
            if r.below_bound {
                writeln!(out, "palette {palette} is below the lower bound {}", lower_bound(4, q)?)?;
                return Ok(Outcome::False);
            }
            if !r.complete {
                writeln!(
                    out,
                    "best partial coloring: {} of {} lines after {} iterations",
                    r.best.colored(),
                    space.num_lines(),
                    r.iterations
                )?;
                return Ok(Outcome::Budget);
            }
            writeln!(out, "PG(4,{q}): {palette} colors, all {} lines colored", space.num_lines())?;
            if let Some(path) = output {
                let c = ColoringCertificate { coloring: r.best, budget: None, property_r: None };
                write_certificate(&space, &Certificate::Coloring(c), &path, out)?;
            }
            Ok(Outcome::Ok)
        }
    }
}

fn pg4_template(full: &Path, ipg: &Path) -> anyhow::Result<Template> {
    let a = read_certificate(full)?;
    let b = read_certificate(ipg)?;
    let (Certificate::Coloring(fc), Certificate::Coloring(ic)) = (&a.certificate, &b.certificate) else {
        bail!(Error::Certificate("PG(4,q) inputs must be coloring certificates".into()));
    };
    let ipg_cert = ic
        .property_r_certificate(&b.space)
        .ok_or_else(|| Error::Certificate(format!("{} has no property-R data", ipg.display())))?;
    let t = Template { full_space: Arc::new(a.space), full: fc.coloring.clone(), ipg_space: Arc::new(b.space), ipg: ipg_cert };
    t.verify()?;
    Ok(t)
}

fn read_certificate(path: &Path) -> anyhow::Result<Imported> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(import_certificate(&text)?)
}

fn write_certificate(space: &Space, cert: &Certificate, path: &Path, out: &mut dyn Write) -> anyhow::Result<()> {
    let env = export_certificate(space, cert)?;
    std::fs::write(path, env.to_json()).with_context(|| format!("writing {}", path.display()))?;
    writeln!(out, "wrote {} ({})", path.display(), env.content_hash)?;
    Ok(())
}

fn verify(path: &Path, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match import_certificate(&text) {
        Ok(imported) => {
            writeln!(out, "{}", imported.verdict.summary)?;
            Ok(Outcome::Ok)
        }
        Err(e) => {
            writeln!(out, "not verified: {e}")?;
            Ok(Outcome::False)
        }
    }
}

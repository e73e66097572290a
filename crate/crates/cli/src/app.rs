//! Argument parsing and command dispatch.
//!
//! Index conventions: everything on the command line (and in printed
//! reports) is 1-based — coordinate lists like `--project 1,2`, subset
//! specs, and exactness counterexamples. Decomposition files address
//! pieces of the canonical piece list and are 0-based, as they are data
//! for the machine rather than text for people.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use mahavier_core::{
    build_gset, certify_continuum, cordiality_report, gset_connected, gset_equal_witness,
    project_gset, raster_chain, reverse_gset, ChainSystem, GSet, Relation, Semantics,
    SubsetOutcome, VerdictKind,
};

use crate::format::{self, FormatError};
use crate::report::{Report, EXIT_FALSE, EXIT_TRUE, EXIT_USAGE};
use crate::svg;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Relation(#[from] mahavier_core::RelationError),
    #[error("{0}")]
    Chain(#[from] mahavier_core::MahavierError),
    #[error("{0}")]
    Gallery(#[from] mahavier_core::GalleryError),
    #[error("{0}")]
    Raster(#[from] mahavier_core::RasterError),
    #[error("{0}")]
    Projection(#[from] mahavier_core::ProjectionError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "mahavier",
    version,
    about = "Exact decisions about set-valued functions on [0,1] and their chain products"
)]
pub struct Cli {
    /// Emit the report as JSON instead of plain text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    /// Bond consecutive coordinates only
    Consecutive,
    /// Bond every coordinate pair with the matching power
    AllPairs,
}

impl From<SemanticsArg> for Semantics {
    fn from(value: SemanticsArg) -> Semantics {
        match value {
            SemanticsArg::Consecutive => Semantics::Consecutive,
            SemanticsArg::AllPairs => Semantics::AllPairs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a relation file and report its diagnostics
    Validate { file: PathBuf },
    /// Decide whether composing the relation with itself changes nothing
    Idempotent { file: PathBuf },
    /// Decide whether every value in [0,1] is attained
    Surjective { file: PathBuf },
    /// Count connected components of the graph
    Components { file: PathBuf },
    /// Decide whether every slice is a single interval
    ContinuumValued { file: PathBuf },
    /// Compose two relations (outer applied after inner)
    Compose {
        outer: PathBuf,
        inner: PathBuf,
        /// Write the composite here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invert a surjective relation
    Inverse {
        file: PathBuf,
        /// Write the inverse here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two files describe the same graph
    Equal { a: PathBuf, b: PathBuf },
    /// Check a bonding table for exactness under composition
    Exactness {
        /// Entries for pairs (1,2), (1,3), ..., (2,3), ... in that order
        files: Vec<PathBuf>,
    },
    /// Build the product set of a chain bonded by one relation
    Mahavier {
        file: PathBuf,
        /// Number of chain coordinates
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Consecutive)]
        semantics: SemanticsArg,
        /// Project onto these 1-based coordinates, e.g. --project 1,3
        #[arg(long)]
        project: Option<String>,
        /// Compare the projection against the directly built subchain
        #[arg(long, requires = "project")]
        compare_direct: bool,
        /// Compare the reversed product with the inverse relation's product
        #[arg(long)]
        reverse: bool,
    },
    /// Compare projections with direct subchains over coordinate subsets
    Cordiality {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Semicolon-separated subsets, e.g. --subsets "1,2;1,3"
        /// (default: every proper nonempty subset)
        #[arg(long)]
        subsets: Option<String>,
    },
    /// Certify connectedness of every finite product, or find an obstruction
    Certify {
        file: PathBuf,
        /// Fallback sweep bound when no certificate route applies
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// JSON file with 0-based piece index groups
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Write a catalog relation, or list all catalog entries
    Gallery {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Render a relation (or its chain product) as an SVG drawing
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Render the n-coordinate product instead of the graph
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Consecutive)]
        semantics: SemanticsArg,
        /// Project the product onto these 1-based coordinates first
        #[arg(long)]
        project: Option<String>,
    },
    /// Run the brute-force grid oracle
    Oracle {
        file: PathBuf,
        /// Grid step, written as 1/k with 8 <= k <= 256
        #[arg(long, default_value = "1/64")]
        step: String,
        /// Also raster the n-coordinate product
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Consecutive)]
        semantics: SemanticsArg,
    },
}

enum Output {
    Report(Report),
    Data(String),
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(&cli.command) {
        Ok(Output::Report(report)) => {
            let report = report.timed(started.elapsed().as_millis());
            if cli.json {
                print!("{}", report.render_json());
            } else {
                print!("{}", report.render_human());
            }
            report.exit_code()
        }
        Ok(Output::Data(text)) => {
            print!("{text}");
            EXIT_TRUE
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

fn load(path: &Path) -> Result<Relation, CliError> {
    Ok(format::read_relation(path)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn relation_data(r: &Relation) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(&format::to_doc(r))
        .map_err(|e| CliError::Format(FormatError::Json(e)))?;
    text.push('\n');
    Ok(text)
}

/// Emits a freshly built relation: as a report when writing to a file,
/// as the raw document on stdout otherwise.
fn deliver(command: String, r: &Relation, out: Option<&PathBuf>) -> Result<Output, CliError> {
    match out {
        Some(path) => {
            format::write_relation(path, r)?;
            Ok(Output::Report(
                Report::new(command, "written", EXIT_TRUE)
                    .detail("name", r.name())
                    .detail("pieces", r.pieces().len())
                    .detail("out", path.display()),
            ))
        }
        None => Ok(Output::Data(relation_data(r)?)),
    }
}

/// Parses a 1-based comma list like "1,3" into sorted 0-based indices.
fn parse_indices(spec: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let value: usize = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad coordinate index {part:?}")))?;
        if value == 0 {
            return Err(usage("coordinate indices are 1-based"));
        }
        out.push(value - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn fmt_subset(s: &[usize]) -> String {
    let one_based: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", one_based.join(","))
}

fn parse_step(step: &str) -> Result<usize, CliError> {
    step.strip_prefix("1/")
        .and_then(|rest| rest.parse::<usize>().ok())
        .ok_or_else(|| usage(format!("step must be written as 1/k, got {step:?}")))
}

fn chain_gset(f: &Relation, n: usize, semantics: SemanticsArg) -> Result<GSet, CliError> {
    let chain = ChainSystem::uniform(f.clone(), n)?;
    Ok(build_gset(&chain, semantics.into()))
}

fn dispatch(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Validate { file } => {
            let r = load(file)?;
            let d = r.validate();
            let mut report = Report::new(format!("validate {}", file.display()), "true", EXIT_TRUE)
                .detail("name", r.name())
                .detail("pieces", r.pieces().len())
                .detail("total", d.total)
                .detail("surjective", d.surjective)
                .detail("idempotent", d.idempotent)
                .detail("graph-components", d.graph_components)
                .detail("continuum-valued", d.continuum_valued);
            for (label, point) in &d.witnesses {
                report = report.witness(label.clone(), point);
            }
            Ok(Output::Report(report))
        }
        Command::Idempotent { file } => {
            let r = load(file)?;
            let witness = r.idempotence_witness();
            let base = Report::boolean(format!("idempotent {}", file.display()), witness.is_none())
                .detail("name", r.name());
            let report = match witness {
                None => base,
                Some((x, y)) => base.witness("not-idempotent", &[x, y]),
            };
            Ok(Output::Report(report))
        }
        Command::Surjective { file } => {
            let r = load(file)?;
            let witness = r.surjectivity_witness();
            let base = Report::boolean(format!("surjective {}", file.display()), witness.is_none())
                .detail("name", r.name());
            let report = match witness {
                None => base,
                Some(y) => base.witness("not-surjective", &[y]),
            };
            Ok(Output::Report(report))
        }
        Command::Components { file } => {
            let r = load(file)?;
            let (count, assignment) = r.graph_components();
            let groups: Vec<String> = assignment.iter().map(|c| (c + 1).to_string()).collect();
            Ok(Output::Report(
                Report::boolean(format!("components {}", file.display()), count == 1)
                    .detail("name", r.name())
                    .detail("components", count)
                    .detail("piece-components", groups.join(",")),
            ))
        }
        Command::ContinuumValued { file } => {
            let r = load(file)?;
            let witness = r.continuum_valued_witness();
            let base = Report::boolean(
                format!("continuum-valued {}", file.display()),
                witness.is_none(),
            )
            .detail("name", r.name());
            let report = match witness {
                None => base,
                Some(x) => {
                    let slices = r.slice(&x).len();
                    base.detail("slice-intervals-at-witness", slices)
                        .witness("not-continuum-valued", &[x])
                }
            };
            Ok(Output::Report(report))
        }
        Command::Compose { outer, inner, out } => {
            let f = load(outer)?;
            let g = load(inner)?;
            let composite = f.compose(&g);
            deliver(
                format!("compose {} {}", outer.display(), inner.display()),
                &composite,
                out.as_ref(),
            )
        }
        Command::Inverse { file, out } => {
            let r = load(file)?;
            let inverse = r.inverse()?;
            deliver(format!("inverse {}", file.display()), &inverse, out.as_ref())
        }
        Command::Equal { a, b } => {
            let f = load(a)?;
            let g = load(b)?;
            let command = format!("equal {} {}", a.display(), b.display());
            let report = match f.equal_witness(&g) {
                None => Report::boolean(command, true),
                Some(point) => {
                    let side = if f.contains_point(&point) {
                        f.name().to_string()
                    } else {
                        g.name().to_string()
                    };
                    Report::boolean(command, false)
                        .witness("difference", &[point.0.clone(), point.1.clone()])
                        .detail("witness-only-in", side)
                }
            };
            Ok(Output::Report(report))
        }
        Command::Exactness { files } => exactness(files),
        Command::Mahavier {
            file,
            n,
            semantics,
            project,
            compare_direct,
            reverse,
        } => mahavier(file, *n, *semantics, project.as_deref(), *compare_direct, *reverse),
        Command::Cordiality { file, n, subsets } => cordiality(file, *n, subsets.as_deref()),
        Command::Certify {
            file,
            max_n,
            decomposition,
        } => certify(file, *max_n, decomposition.as_ref()),
        Command::Gallery { name, out, list } => gallery(name.as_deref(), out.as_ref(), *list),
        Command::Render {
            file,
            out,
            n,
            semantics,
            project,
        } => render(file, out, *n, *semantics, project.as_deref()),
        Command::Oracle {
            file,
            step,
            n,
            semantics,
        } => oracle(file, step, *n, *semantics),
    }
}

fn exactness(files: &[PathBuf]) -> Result<Output, CliError> {
    let count = files.len();
    // count = n(n-1)/2 determines the chain length.
    let n = (1..=32)
        .find(|&n| n * (n - 1) / 2 == count)
        .filter(|&n| n >= 2)
        .ok_or_else(|| {
            usage(format!(
                "{count} files do not fill a bonding table; pass one file per pair (i,j), i < j"
            ))
        })?;
    let mut table = BTreeMap::new();
    let mut slot = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            table.insert((i, j), load(&files[slot])?);
            slot += 1;
        }
    }
    let labels = (1..=n).map(|i| format!("b{i}")).collect();
    let chain = ChainSystem::from_table(labels, table)?;
    let command = format!("exactness over {count} files");
    let report = match chain.exactness_witness() {
        None => Report::boolean(command, true),
        Some((i, j, k)) => Report::boolean(command, false).detail(
            "counterexample",
            format!("({},{},{})", i + 1, j + 1, k + 1),
        ),
    };
    Ok(Output::Report(report.detail("coordinates", n)))
}

fn mahavier(
    file: &Path,
    n: usize,
    semantics: SemanticsArg,
    project: Option<&str>,
    compare_direct: bool,
    reverse: bool,
) -> Result<Output, CliError> {
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let f = load(file)?;
    let gset = chain_gset(&f, n, semantics)?;
    let (connected, components) = gset_connected(&gset);
    let mut report = Report::boolean(format!("mahavier {} --n {n}", file.display()), connected)
        .detail("name", f.name())
        .detail("cells", gset.cells().len())
        .detail("connected", connected)
        .detail("components", components);

    let projected = match project {
        Some(spec) => {
            let keep = parse_indices(spec)?;
            if keep.iter().any(|&c| c >= n) {
                return Err(usage(format!(
                    "--project indices must lie in 1..={n} for a chain with {n} coordinates"
                )));
            }
            let shadow = project_gset(&gset, &keep)?;
            report = report
                .detail("projection", fmt_subset(&keep))
                .detail("projected-cells", shadow.cells().len());
            Some((keep, shadow))
        }
        None => None,
    };

    if compare_direct {
        let (keep, _) = projected.as_ref().expect("clap enforces --project");
        let outcome = cordiality_report(&f, n, std::slice::from_ref(keep))?;
        let (_, verdict) = &outcome.entries[0];
        let report = match verdict {
            SubsetOutcome::Equal => report
                .detail("direct-comparison", "projection equals the direct subchain")
                .verdict_override("EQUAL", EXIT_TRUE),
            SubsetOutcome::StrictSubset { witness } => report
                .detail("direct-comparison", "the direct subchain is strictly larger")
                .witness("direct-only-point", witness)
                .verdict_override("STRICT_SUBSET", EXIT_FALSE),
        };
        return Ok(Output::Report(report));
    }

    if reverse {
        let reversed = reverse_gset(&gset);
        let inverse = f.inverse()?;
        let inverse_gset = chain_gset(&inverse, n, semantics)?;
        let witness = gset_equal_witness(&reversed, &inverse_gset)?;
        let report = match witness {
            None => report
                .detail("reversal", "reversed product equals the inverse's product")
                .verdict_override("true", EXIT_TRUE),
            Some(point) => report
                .detail("reversal", "reversed product differs from the inverse's product")
                .witness("reversal-difference", &point)
                .verdict_override("false", EXIT_FALSE),
        };
        return Ok(Output::Report(report));
    }

    Ok(Output::Report(report))
}

fn cordiality(file: &Path, n: usize, subsets: Option<&str>) -> Result<Output, CliError> {
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let f = load(file)?;
    let chosen: Vec<Vec<usize>> = match subsets {
        Some(spec) => spec
            .split(';')
            .map(parse_indices)
            .collect::<Result<_, _>>()?,
        None => {
            if n > 12 {
                return Err(usage("pass --subsets explicitly when --n exceeds 12"));
            }
            // Every proper nonempty subset of the coordinate set, by mask.
            (1..(1usize << n) - 1)
                .map(|mask| (0..n).filter(|b| mask & (1 << b) != 0).collect())
                .collect()
        }
    };
    let outcome = cordiality_report(&f, n, &chosen)?;
    let mut report = Report::new(
        format!("cordiality {} --n {n}", file.display()),
        "EQUAL",
        EXIT_TRUE,
    )
    .detail("name", f.name())
    .detail("subsets", outcome.entries.len());
    let mut strict = 0;
    for (subset, verdict) in &outcome.entries {
        match verdict {
            SubsetOutcome::Equal => {
                report = report.detail(format!("subset {}", fmt_subset(subset)), "EQUAL");
            }
            SubsetOutcome::StrictSubset { witness } => {
                strict += 1;
                report = report
                    .detail(format!("subset {}", fmt_subset(subset)), "STRICT_SUBSET")
                    .witness(format!("direct-only {}", fmt_subset(subset)), witness);
            }
        }
    }
    if strict > 0 {
        report = report.verdict_override("STRICT_SUBSET", EXIT_FALSE);
    }
    Ok(Output::Report(report))
}

fn certify(file: &Path, max_n: usize, decomposition: Option<&PathBuf>) -> Result<Output, CliError> {
    if max_n < 2 {
        return Err(usage("--max-n must be at least 2"));
    }
    let f = load(file)?;
    let groups = match decomposition {
        Some(path) => Some(format::read_decomposition(path)?),
        None => None,
    };
    let verdict = certify_continuum(&f, max_n, groups.as_deref())?;
    let (text, exit) = match &verdict.kind {
        VerdictKind::CertifiedAllN => ("CERTIFIED_ALL_N".to_string(), EXIT_TRUE),
        VerdictKind::ConnectedUpToN(m) => (format!("CONNECTED_UP_TO_N({m})"), EXIT_TRUE),
        VerdictKind::Disconnected { n, components } => {
            (format!("DISCONNECTED({n},{components})"), EXIT_FALSE)
        }
        VerdictKind::Unknown => ("UNKNOWN".to_string(), EXIT_FALSE),
        VerdictKind::Rejected(reason) => (format!("REJECTED({reason})"), EXIT_USAGE),
    };
    let mut report = Report::new(format!("certify {}", file.display()), text, exit)
        .detail("name", f.name())
        .detail("route", &verdict.route)
        .detail("max-n", max_n);
    for (label, point) in &verdict.witnesses {
        report = report.witness(label.clone(), point);
    }
    Ok(Output::Report(report))
}

fn gallery(name: Option<&str>, out: Option<&PathBuf>, list: bool) -> Result<Output, CliError> {
    if list {
        let mut report = Report::new("gallery --list", "ok", EXIT_TRUE);
        for (entry, flags) in mahavier_core::CATALOG {
            report = report.detail(
                entry,
                format!(
                    "idempotent={} surjective={} continuum-valued={}",
                    flags.idempotent, flags.surjective, flags.continuum_valued
                ),
            );
        }
        return Ok(Output::Report(report));
    }
    let name = name.ok_or_else(|| usage("pass a catalog name or --list"))?;
    let r = mahavier_core::make_example(name)?;
    deliver(format!("gallery {name}"), &r, out)
}

fn render(
    file: &Path,
    out: &Path,
    n: Option<usize>,
    semantics: SemanticsArg,
    project: Option<&str>,
) -> Result<Output, CliError> {
    let f = load(file)?;
    let drawing = match n {
        None => {
            if project.is_some() {
                return Err(usage("--project requires --n"));
            }
            svg::render_relation(&f)
        }
        Some(n) => {
            if n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            let mut gset = chain_gset(&f, n, semantics)?;
            if let Some(spec) = project {
                let keep = parse_indices(spec)?;
                if keep.iter().any(|&c| c >= n) {
                    return Err(usage(format!("--project indices must lie in 1..={n}")));
                }
                gset = project_gset(&gset, &keep)?;
            }
            if gset.dim() < 2 {
                return Err(usage("renderings need at least two coordinates"));
            }
            svg::render_gset(&gset)
        }
    };
    write_file(out, &drawing)?;
    Ok(Output::Report(
        Report::new(format!("render {}", file.display()), "written", EXIT_TRUE)
            .detail("name", f.name())
            .detail("out", out.display())
            .detail("bytes", drawing.len()),
    ))
}

fn oracle(
    file: &Path,
    step: &str,
    n: Option<usize>,
    semantics: SemanticsArg,
) -> Result<Output, CliError> {
    let k = parse_step(step)?;
    let f = load(file)?;
    let graph = mahavier_core::Raster2::relation(&f, k)?;
    let mut report = Report::new(
        format!("oracle {} --step 1/{k}", file.display()),
        "true",
        EXIT_TRUE,
    )
    .detail("name", f.name())
    .detail("marked-squares", graph.marked_count())
    .detail("graph-components", graph.components());
    let connected = match n {
        Some(n) => {
            if n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            let tuples = raster_chain(&f, n, semantics == SemanticsArg::AllPairs, k)?;
            report = report
                .detail("tuple-points", tuples.len())
                .detail("tuple-components", tuples.components());
            tuples.components() == 1
        }
        None => graph.components() == 1,
    };
    if !connected {
        report = report.verdict_override("false", EXIT_FALSE);
    }
    Ok(Output::Report(report))
}

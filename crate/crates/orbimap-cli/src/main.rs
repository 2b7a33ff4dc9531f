//! Batch front door for the `orbimap` library: JSON in, deterministic JSON
//! (or DOT) out.
//!
//! Exit codes: `0` on success, `2` on validation errors (reported as a
//! machine-readable JSON object on standard output), `1` on malformed
//! input — unreadable files, broken JSON, bad flags.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use orbimap_cli::reports::{
    BundleReport, EmbeddingVerdictReport, ErrorDetail, ErrorReport, ExampleReport, GluedEntry,
    GluedReport, GroupReport, HomsReport, IdgroupReport, LiftEntry, LiftsReport, StratumSummary,
    TripleVerdictReport, VerifyReport,
};

use orbimap::bundles::{
    admissible_subspace, glued_pullback, pullback, pullbacks_equivalent, tangent_bundle,
    PullbackBundleData,
};
use orbimap::error::Error;
use orbimap::fixtures;
use orbimap::groups::{
    center, enumerate_homomorphisms_with_cap, DEFAULT_CLOSURE_CAP, DEFAULT_HOM_SOURCE_CAP,
};
use orbimap::json::{
    matrix_from_strings, matrix_to_strings, AtlasJson, GroupJson, MapJson,
};
use orbimap::linalg::QMatrix;
use orbimap::maps::{complete_lifts_over, connecting_centralizer, orbit_and_isotropy, CompleteMap};
use orbimap::orbifold::{identity_lift_group, verify_atlas, AtlasReport, QuotientChart};
use orbimap::polymap::DEFAULT_COEFF_CAP;
use orbimap::strata::{
    export_poset, strata_poset_with, PosetFormat, DEFAULT_STRATA_CAP,
};

#[derive(Parser)]
#[command(
    name = "orbimap",
    version,
    about = "Exact computations on quotient charts, equivariant lifts, and map strata"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Close a generated matrix group and report its structure.
    Group {
        /// Group JSON file: { "dim": n, "generators": [[row-major "p/q"]] }.
        #[arg(long, conflicts_with_all = ["generators", "dim"])]
        input: Option<PathBuf>,
        /// JSON file holding a list of generator matrices, or the literal
        /// `empty` for no generators.
        #[arg(long, requires = "dim")]
        generators: Option<String>,
        /// Matrix dimension (used with --generators).
        #[arg(long)]
        dim: Option<usize>,
        /// Largest group order the closure will enumerate.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
    /// Enumerate all homomorphisms between two generated groups.
    Homs {
        /// Source group JSON file.
        #[arg(long)]
        src: PathBuf,
        /// Destination group JSON file.
        #[arg(long)]
        dst: PathBuf,
        /// Largest source-group order the enumeration accepts.
        #[arg(long, default_value_t = DEFAULT_HOM_SOURCE_CAP)]
        hom_cap: usize,
    },
    /// List every complete lift of a map given by its polynomial lift.
    Lifts {
        /// Map JSON file: { "src", "dst", "lift", "theta"? }.
        #[arg(long)]
        input: PathBuf,
    },
    /// Stratify the perturbation neighborhood of a map.
    Strata {
        /// Map JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Degree bound for perturbations.
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Largest number of complete lifts to stratify over.
        #[arg(long, default_value_t = DEFAULT_STRATA_CAP)]
        strata_cap: usize,
        /// Largest coefficient-space dimension.
        #[arg(long, default_value_t = DEFAULT_COEFF_CAP)]
        coeff_cap: usize,
    },
    /// Pull the destination tangent space back along a map.
    Pullback {
        /// Map JSON file; with `theta`, reports that bundle, without it,
        /// the glued fiber dimensions over every lift subset.
        #[arg(long)]
        input: PathBuf,
    },
    /// Report the identity-lift group of a chart.
    Idgroup {
        /// Chart (or group) JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Verify an atlas of charts, embeddings, and composite triples.
    Verify {
        /// Atlas JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Replay a named built-in example end to end.
    Example {
        /// One of: rz2-constant, z2xz2-inclusion, ocube-inclusion,
        /// identity-map.
        #[arg(long)]
        name: String,
        /// Degree bound for the example's strata section.
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
}

/// A failed run: either bad input (exit 1, message on stderr) or a
/// validation error (exit 2, JSON object on stdout).
enum Failure {
    Malformed(String),
    Validation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_malformed_input() {
            Failure::Malformed(e.to_string())
        } else {
            Failure::Validation(e)
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Failure::Malformed(format!("bad JSON in {}: {e}", path.display())))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn run_group(
    input: Option<PathBuf>,
    generators: Option<String>,
    dim: Option<usize>,
    cap: usize,
) -> Result<String, Failure> {
    let spec: GroupJson = match (input, generators, dim) {
        (Some(path), None, None) => parse_json(&path)?,
        (None, Some(gens), Some(dim)) => {
            let generators: Vec<Vec<String>> = if gens == "empty" {
                Vec::new()
            } else {
                parse_json(&PathBuf::from(gens))?
            };
            GroupJson { dim, generators }
        }
        _ => {
            return Err(Failure::Malformed(
                "pass either --input FILE or --generators FILE|empty --dim N".into(),
            ))
        }
    };
    let group = spec.to_group_with_cap(cap)?;
    let mut distinct: Vec<QMatrix> = Vec::new();
    for g in &spec.generators {
        let m = matrix_from_strings(spec.dim, spec.dim, g)?;
        if !m.is_identity() && !distinct.contains(&m) {
            distinct.push(m);
        }
    }
    let report = GroupReport {
        dim: group.dim(),
        order: group.order(),
        abelian: group.is_abelian(),
        center_order: center(&group).order(),
        duplicate_generators_ignored: spec.generators.len() - distinct.len(),
        elements: (0..group.order())
            .map(|i| matrix_to_strings(group.element(i)))
            .collect(),
    };
    Ok(to_pretty(&report))
}

fn run_homs(src: PathBuf, dst: PathBuf, cap: usize) -> Result<String, Failure> {
    let src_group = parse_json::<GroupJson>(&src)?.to_group()?;
    let dst_group = parse_json::<GroupJson>(&dst)?.to_group()?;
    let homs = enumerate_homomorphisms_with_cap(&src_group, &dst_group, cap)?;
    let report = HomsReport {
        src_order: src_group.order(),
        dst_order: dst_group.order(),
        count: homs.len(),
        homs: homs.iter().map(|h| h.images().to_vec()).collect(),
    };
    Ok(to_pretty(&report))
}

fn lift_entry(m: &CompleteMap) -> LiftEntry {
    LiftEntry {
        theta_images: m.theta().images().to_vec(),
        theta_generator_images: m
            .src()
            .group()
            .generator_indices()
            .iter()
            .map(|&g| m.theta().image_of(g))
            .collect(),
    }
}

fn run_lifts(input: PathBuf) -> Result<String, Failure> {
    let f = parse_json::<MapJson>(&input)?.to_orbifold_map()?;
    let lifts = complete_lifts_over(&f);
    let report = LiftsReport {
        src_label: f.src().label().to_string(),
        dst_label: f.dst().label().to_string(),
        count: lifts.len(),
        lifts: lifts.iter().map(lift_entry).collect(),
    };
    Ok(to_pretty(&report))
}

fn witness_seed() -> u64 {
    std::env::var("ORBIMAP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn run_strata(
    input: PathBuf,
    degree: u32,
    format: Format,
    strata_cap: usize,
    coeff_cap: usize,
) -> Result<String, Failure> {
    let f = parse_json::<MapJson>(&input)?.to_orbifold_map()?;
    let poset = strata_poset_with(&f, degree, witness_seed(), strata_cap, coeff_cap)?;
    let fmt = match format {
        Format::Json => PosetFormat::Json,
        Format::Dot => PosetFormat::Dot,
    };
    Ok(export_poset(&poset, fmt))
}

fn bundle_report(b: &PullbackBundleData) -> Result<BundleReport, Failure> {
    let at_origin = admissible_subspace(b, true);
    let generic = admissible_subspace(b, false);
    let tangent = tangent_bundle(b.base().src());
    Ok(BundleReport {
        fiber_dim: b.fiber_dim(),
        fiber_action: b.fiber_action().iter().map(matrix_to_strings).collect(),
        admissible_at_origin: at_origin.basis_strings(),
        admissible_at_origin_dim: at_origin.dim(),
        admissible_generic_dim: generic.dim(),
        equivalent_to_source_tangent: pullbacks_equivalent(b, &tangent)?,
    })
}

fn run_pullback(input: PathBuf) -> Result<String, Failure> {
    let map_json: MapJson = parse_json(&input)?;
    if map_json.theta.is_some() {
        let m = map_json.to_complete_map()?;
        let report = bundle_report(&pullback(&m))?;
        return Ok(to_pretty(&report));
    }
    let f = map_json.to_orbifold_map()?;
    let lifts = complete_lifts_over(&f);
    let k = lifts.len();
    let mut glued = Vec::new();
    for mask in 1u32..(1 << k) {
        let family: Vec<&CompleteMap> =
            (0..k).filter(|i| mask & (1 << i) != 0).map(|i| &lifts[i]).collect();
        let space = glued_pullback(&family)?;
        glued.push(GluedEntry {
            indices: (0..k).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect(),
            dim: space.dim(),
            basis: space.basis_strings(),
        });
    }
    glued.sort_by_key(|e| (e.indices.len(), e.indices.clone()));
    Ok(to_pretty(&GluedReport { lift_count: k, glued }))
}

fn run_idgroup(input: PathBuf) -> Result<String, Failure> {
    let chart_json: orbimap::json::ChartJson = parse_json(&input)?;
    let chart = chart_json.to_chart("chart")?;
    let lifts = identity_lift_group(&chart);
    let check = lifts.sequence_check();
    let report = IdgroupReport {
        label: chart.label().to_string(),
        order: lifts.order(),
        center_order: lifts.center().order(),
        inner_order: lifts.inner_quotient_order(),
        order_identity_holds: check.order_identity,
        quotient_is_homomorphism: check.is_homomorphism,
        kernel_is_center: check.kernel_is_center,
    };
    Ok(to_pretty(&report))
}

fn verify_report(report: &AtlasReport) -> VerifyReport {
    VerifyReport {
        valid: report.valid(),
        embeddings: report
            .embeddings
            .iter()
            .map(|e| EmbeddingVerdictReport {
                from: e.from.clone(),
                to: e.to.clone(),
                is_homomorphism: e.is_homomorphism,
                injective: e.injective,
                equivariant: e.equivariant,
                ok: e.ok(),
            })
            .collect(),
        triples: report
            .triples
            .iter()
            .map(|t| TripleVerdictReport {
                labels: t.labels.clone(),
                delta: t.delta,
                note: t.note.clone(),
                ok: t.ok(),
            })
            .collect(),
    }
}

fn run_verify(input: PathBuf) -> Result<String, Failure> {
    let atlas: AtlasJson = parse_json(&input)?;
    let (charts, embeddings, triples) = atlas.to_parts()?;
    let report = verify_atlas(&charts, &embeddings, &triples)?;
    Ok(to_pretty(&verify_report(&report)))
}

fn classify_pullback(b: &PullbackBundleData, src: &QuotientChart) -> Result<String, Failure> {
    if b.fiber_action().iter().all(QMatrix::is_identity) {
        return Ok("trivial".to_string());
    }
    if pullbacks_equivalent(b, &tangent_bundle(src))? {
        return Ok("tangent-equivalent".to_string());
    }
    Ok("other".to_string())
}

fn run_example(name: String, degree: u32) -> Result<String, Failure> {
    let f = fixtures::fixture_by_name(&name)?;
    let lifts = complete_lifts_over(&f);
    let mut pullback_classes = Vec::with_capacity(lifts.len());
    for m in &lifts {
        pullback_classes.push(classify_pullback(&pullback(m), f.src())?);
    }
    let poset = strata_poset_with(&f, degree, witness_seed(), DEFAULT_STRATA_CAP, DEFAULT_COEFF_CAP)?;
    let first = &lifts[0];
    let orbit = orbit_and_isotropy(first, &connecting_centralizer(first)?)?;
    let idg = identity_lift_group(f.dst());
    let report = ExampleReport {
        name,
        src_label: f.src().label().to_string(),
        dst_label: f.dst().label().to_string(),
        degree,
        lift_count: lifts.len(),
        theta_images: lifts.iter().map(|m| m.theta().images().to_vec()).collect(),
        pullback_classes,
        strata: poset
            .strata()
            .iter()
            .map(|s| StratumSummary {
                indices: s.indices().to_vec(),
                dim: s.dim(),
                nonempty: s.nonempty(),
            })
            .collect(),
        orbit_size: orbit.orbit.len(),
        isotropy_order: orbit.isotropy.order(),
        identity_lift_order: idg.order(),
        identity_lift_center_order: idg.center().order(),
        identity_lift_inner_order: idg.inner_quotient_order(),
    };
    Ok(to_pretty(&report))
}

fn dispatch(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Group { input, generators, dim, closure_cap } => {
            run_group(input, generators, dim, closure_cap)
        }
        Cmd::Homs { src, dst, hom_cap } => run_homs(src, dst, hom_cap),
        Cmd::Lifts { input } => run_lifts(input),
        Cmd::Strata { input, degree, format, strata_cap, coeff_cap } => {
            run_strata(input, degree, format, strata_cap, coeff_cap)
        }
        Cmd::Pullback { input } => run_pullback(input),
        Cmd::Idgroup { input } => run_idgroup(input),
        Cmd::Verify { input } => run_verify(input),
        Cmd::Example { name, degree } => run_example(name, degree),
    }
}

/// Rust starts with `SIGPIPE` ignored, so a reader that closes the pipe early
/// (`orbimap ... | head`) turns the next stdout write into a panic. Restore
/// the Unix default so the process exits quietly like any other filter.
#[cfg(unix)]
fn restore_default_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_default_sigpipe() {}

fn main() -> ExitCode {
    restore_default_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli.cmd) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Malformed(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(e)) => {
            let object = ErrorReport {
                error: ErrorDetail { kind: e.kind().to_string(), message: e.to_string() },
            };
            print!("{}", to_pretty(&object));
            ExitCode::from(2)
        }
    }
}

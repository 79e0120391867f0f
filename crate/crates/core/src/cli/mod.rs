//! Command-line front end: argument parsing, input loading and reports.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::diagram::catalog::CatalogEntry;
use crate::diagram::invariants::{
    classify_genus_one_sum, detect_k, euler_characteristic, heegaard_h1, heegaard_pi1, is_standard_pair,
    pi1_presentation, printed_euler_characteristic, trisection_params,
};
use crate::diagram::{System, TrisectionDiagram};
use crate::error::{Error, Result};
use crate::gprc_ac::{ab_det, ac_search, ak_presentation, AcSearchConfig, AcSearchResult};
use crate::kirby::{
    find_primitive_pairs, gprc_necessary_check, hk_to_trisection, max_primitive_system, surgery_h1, trisection_to_hk,
    validate_hk,
};
use crate::moves::{
    apply_slide, balanced_stabilize, connected_sum, heegaard_stabilize, i_stabilize, standardize, Sign, Slide,
    StandardizeConfig,
};
use crate::replay::check_verdict;
use crate::surface_core::tietze::{tietze_simplify, TietzeConfig};
use crate::surface_core::word::parse_path;

pub use format::{parse_curve, parse_diagram, parse_matrix, parse_presentation, DiagramFile};
pub use report::{digest, Report};

/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 3;
/// Exit code for unreadable or invalid inputs.
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "trisect",
    version,
    about = "Trisection, Heegaard and Heegaard-Kirby diagram calculus"
)]
pub struct Cli {
    /// Emit the report as JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are file paths or `catalog:NAME` for a built-in genus-one diagram.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a diagram file describes what it claims.
    Validate { file: String },
    /// Parameters, Euler characteristic, H1 and π1 of the described manifold.
    Invariants { file: String },
    /// Name the 4-manifold as a connected sum of genus-one summands.
    Classify { file: String },
    /// Decompose into genus-one summands, with parameter checks first.
    Standardize { file: String },
    /// Stabilize a trisection (1, 2, 3, balanced) or a Heegaard diagram (heegaard).
    Stabilize {
        file: String,
        /// 1, 2, 3, balanced or heegaard.
        #[arg(long = "type")]
        kind: String,
        /// Write the resulting diagram to this file.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Connected sum of two diagrams of the same kind.
    ConnectSum {
        a: String,
        b: String,
        /// Write the resulting diagram to this file.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Slide curve FROM over curve OVER (1-based) within one system.
    Slide {
        file: String,
        /// alpha, beta or gamma.
        #[arg(long)]
        system: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        over: usize,
        /// Path from the base point of FROM to that of OVER, e.g. `y2 X1`.
        #[arg(long, allow_hyphen_values = true)]
        guide: Option<String>,
        /// `+` for FROM·OVER, `-` for FROM·OVER⁻¹.
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        /// Write the resulting diagram to this file.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Trisection carved from a Heegaard-Kirby diagram.
    HkToTri {
        file: String,
        /// Write the resulting diagram to this file.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Heegaard-Kirby diagram from primitive picks `G:B,G:B,…` (1-based), or `auto`.
    TriToHk {
        file: String,
        #[arg(long)]
        picks: String,
        /// Write the resulting diagram to this file.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// All (γ, β) pairs meeting exactly once.
    PrimitivePairs { file: String },
    /// Necessary condition for a framed link in S³ to be slide-equivalent to a 0-framed unlink.
    GprcCheck { file: String },
    /// Bounded Andrews-Curtis trivialization search.
    AcSearch {
        /// Presentation file such as `x y X ; y x`.
        file: Option<String>,
        /// Search the Akbulut-Kirby presentation P_N instead of a file.
        #[arg(long, conflicts_with = "file")]
        ak: Option<usize>,
        /// Largest total relator length a state may have.
        #[arg(long)]
        max_length: usize,
        /// Search levels, each one multiplication by a conjugate.
        #[arg(long)]
        max_depth: usize,
        /// Also allow adding and removing trivial generator-relator pairs.
        #[arg(long)]
        stable: bool,
        /// Distinct states kept before giving up (default 400000).
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Print the built-in genus-one diagrams: figure1, figure2, all, or one name.
    Catalog {
        which: String,
        /// Directory to write `<name>.tri` files into.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Re-check the verdict of a JSON report from its witness alone.
    Replay { report: PathBuf },
}

/// What a command produced: a report, or raw text (the catalog listing).
enum Output {
    Report(Report),
    Text(String, i32),
}

/// Runs one command line, writing to `out`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(Output::Report(mut r)) => {
            r.elapsed_ms = start.elapsed().as_millis() as u64;
            let text = if cli.json { r.to_json() + "\n" } else { r.to_text() };
            let _ = out.write_all(text.as_bytes());
            r.exit_code()
        }
        Ok(Output::Text(text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read_input(spec: &str) -> Result<(String, String)> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let entry =
            CatalogEntry::from_name(name).ok_or_else(|| Error::InvalidDiagram(format!("no catalog entry `{name}`")))?;
        let text = DiagramFile::Trisection(entry.diagram()).to_string();
        let d = digest(text.as_bytes());
        return Ok((text, d));
    }
    let bytes = std::fs::read(spec).map_err(|e| Error::InvalidDiagram(format!("{spec}: {e}")))?;
    let text = String::from_utf8(bytes).map_err(|_| Error::InvalidDiagram(format!("{spec}: not UTF-8")))?;
    let d = digest(text.as_bytes());
    Ok((text, d))
}

fn load(spec: &str) -> Result<(DiagramFile, String)> {
    let (text, d) = read_input(spec)?;
    Ok((parse_diagram(&text)?, d))
}

fn load_trisection(spec: &str) -> Result<(TrisectionDiagram, String)> {
    match load(spec)? {
        (DiagramFile::Trisection(t), d) => Ok((t, d)),
        (other, _) => Err(Error::InvalidDiagram(format!(
            "{spec}: expected a trisection file, found {}",
            other.kind()
        ))),
    }
}

/// Writes `d` to `output` when given, otherwise embeds it in the report.
fn emit(r: &mut Report, d: &DiagramFile, output: &Option<PathBuf>) -> Result<()> {
    let text = d.to_string();
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::InvalidDiagram(format!("{}: {e}", path.display())))?;
            r.field("output", path.display());
        }
        None => {
            r.field("diagram", text.trim_end());
        }
    }
    Ok(())
}

fn parse_sign(s: &str) -> Result<Sign> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(Error::InvalidMove(format!("sign must be + or -, found `{s}`"))),
    }
}

fn parse_picks(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let bad = || Error::InvalidMove(format!("pick `{p}` is not of the form G:B"));
            let (g, b) = p.split_once(':').ok_or_else(bad)?;
            Ok((
                g.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn execute(command: &Command) -> Result<Output> {
    let tietze = TietzeConfig::default();
    let standardize_config = StandardizeConfig::default();
    let report = |op: &str, inputs: Vec<String>| {
        let mut r = Report::new(op);
        r.inputs = inputs;
        r
    };
    Ok(Output::Report(match command {
        Command::Validate { file } => {
            let (d, digest) = load(file)?;
            let mut r = report("validate", vec![digest]);
            r.field("kind", d.kind()).field("genus", d.genus());
            match &d {
                DiagramFile::Trisection(t) => {
                    let (params, v) = trisection_params(t, tietze);
                    r.field("params", params);
                    if let Some(p) = t.declared_params() {
                        r.field("declared_params", p);
                    }
                    r.verdict = Some(v);
                }
                DiagramFile::Heegaard(h) => {
                    let (k, v) = detect_k(h, tietze);
                    r.field("k", k).field("standard", is_standard_pair(h).reason);
                    r.verdict = Some(v);
                }
                DiagramFile::HeegaardKirby(h) => {
                    r.field("components", h.components()).field("target", h.target());
                    r.verdict = Some(validate_hk(h, tietze));
                }
            }
            r
        }
        Command::Invariants { file } => {
            let (d, digest) = load(file)?;
            let mut r = report("invariants", vec![digest]);
            r.field("kind", d.kind()).field("genus", d.genus());
            match &d {
                DiagramFile::Trisection(t) => {
                    let (params, v) = trisection_params(t, tietze);
                    let chi = euler_characteristic(&params);
                    r.field("params", params).field("euler_characteristic", chi);
                    let alt = printed_euler_characteristic(&params);
                    if alt != chi {
                        r.field(
                            "note",
                            format!(
                                "the expression k1+k2+k3-g+2 gives {alt}; it agrees with the handle count 2+g-k1-k2-k3 only when g = k1+k2+k3"
                            ),
                        );
                    }
                    let pi1 = pi1_presentation(t);
                    r.field("h1", pi1.abelianization());
                    let simplified = tietze_simplify(&pi1, tietze);
                    r.field(
                        "pi1",
                        summarize_pi1(&simplified.presentation, simplified.verdict.is_verified()),
                    );
                    r.verdict = Some(v);
                }
                DiagramFile::Heegaard(h) => {
                    r.field("h1", heegaard_h1(h));
                    let simplified = tietze_simplify(&heegaard_pi1(h), tietze);
                    r.field(
                        "pi1",
                        summarize_pi1(&simplified.presentation, simplified.verdict.is_verified()),
                    );
                    let (k, v) = detect_k(h, tietze);
                    r.field("k", k);
                    r.verdict = Some(v);
                }
                DiagramFile::HeegaardKirby(h) => {
                    let (n, _) = detect_k(h.background(), tietze);
                    r.field("n", n)
                        .field("components", h.components())
                        .field("surgery_h1", h.surgery_matrix().cokernel());
                    r.verdict = Some(validate_hk(h, tietze));
                }
            }
            r
        }
        Command::Classify { file } => {
            let (t, digest) = load_trisection(file)?;
            let mut r = report("classify", vec![digest]);
            let (name, v) = classify_genus_one_sum(&t, &standardize_config);
            r.field("name", name);
            r.verdict = Some(v);
            r
        }
        Command::Standardize { file } => {
            let (t, digest) = load_trisection(file)?;
            let mut r = report("standardize", vec![digest]);
            let s = standardize(&t, &standardize_config)?;
            r.field("params", s.params).field("name", s.manifold_name());
            if !s.summands.is_empty() {
                let names: Vec<&str> = s.summands.iter().map(|e| e.name()).collect();
                r.field("summands", names.join(", "));
            }
            r.verdict = Some(s.verdict);
            r
        }
        Command::Stabilize { file, kind, output } => {
            let (d, digest) = load(file)?;
            let mut r = report("stabilize", vec![digest]);
            let result = match (&d, kind.as_str()) {
                (DiagramFile::Heegaard(h), "heegaard") => DiagramFile::Heegaard(heegaard_stabilize(h)),
                (DiagramFile::Trisection(t), "balanced") => DiagramFile::Trisection(balanced_stabilize(t)),
                (DiagramFile::Trisection(t), i) => {
                    let i: usize = i
                        .parse()
                        .map_err(|_| Error::InvalidMove(format!("unknown stabilization type `{i}`")))?;
                    DiagramFile::Trisection(i_stabilize(t, i)?)
                }
                (other, k) => {
                    return Err(Error::InvalidMove(format!(
                        "stabilization `{k}` does not apply to a {} diagram",
                        other.kind()
                    )))
                }
            };
            if let DiagramFile::Trisection(t) = &result {
                if let Some(p) = t.declared_params() {
                    r.field("params", p);
                }
            }
            r.field("genus", result.genus());
            emit(&mut r, &result, output)?;
            r
        }
        Command::ConnectSum { a, b, output } => {
            let (da, ha) = load(a)?;
            let (db, hb) = load(b)?;
            let mut r = report("connect-sum", vec![ha, hb]);
            let result = match (&da, &db) {
                (DiagramFile::Trisection(x), DiagramFile::Trisection(y)) => {
                    DiagramFile::Trisection(connected_sum(x, y))
                }
                (DiagramFile::Heegaard(x), DiagramFile::Heegaard(y)) => DiagramFile::Heegaard(
                    crate::diagram::HeegaardDiagram::new(x.alpha.juxtaposed(&y.alpha), x.beta.juxtaposed(&y.beta))?,
                ),
                _ => {
                    return Err(Error::InvalidDiagram(format!(
                        "cannot sum a {} diagram with a {} diagram",
                        da.kind(),
                        db.kind()
                    )))
                }
            };
            if let DiagramFile::Trisection(t) = &result {
                if let Some(p) = t.declared_params() {
                    r.field("params", p);
                }
            }
            r.field("genus", result.genus());
            emit(&mut r, &result, output)?;
            r
        }
        Command::Slide {
            file,
            system,
            from,
            over,
            guide,
            sign,
            output,
        } => {
            let (t, digest) = load_trisection(file)?;
            let mut r = report("slide", vec![digest]);
            let system: System = system.parse()?;
            if *from == 0 || *over == 0 {
                return Err(Error::InvalidMove("curves are numbered from 1".into()));
            }
            let mut slide = Slide::new(system, from - 1, over - 1, parse_sign(sign)?);
            if let Some(g) = guide {
                slide.guide = parse_path(t.genus(), g)?;
            }
            let result = apply_slide(&t, &slide)?.recognized();
            r.field("slide", &slide);
            emit(&mut r, &DiagramFile::Trisection(result), output)?;
            r
        }
        Command::HkToTri { file, output } => {
            let (d, digest) = load(file)?;
            let DiagramFile::HeegaardKirby(h) = d else {
                return Err(Error::InvalidDiagram(format!("{file}: expected a heegaard-kirby file")));
            };
            let mut r = report("hk-to-tri", vec![digest]);
            let (t, v) = hk_to_trisection(&h, tietze);
            if let Some(t) = t {
                if let Some(p) = t.declared_params() {
                    r.field("params", p);
                }
                emit(&mut r, &DiagramFile::Trisection(t), output)?;
            }
            r.verdict = Some(v);
            r
        }
        Command::TriToHk { file, picks, output } => {
            let (t, digest) = load_trisection(file)?;
            let mut r = report("tri-to-hk", vec![digest]);
            let picks = if picks == "auto" {
                max_primitive_system(&t)
            } else {
                parse_picks(picks)?
            };
            let (h, v) = trisection_to_hk(&t, &picks, tietze)?;
            let listed: Vec<String> = picks.iter().map(|(g, b)| format!("{g}:{b}")).collect();
            r.field("picks", listed.join(","))
                .field("components", h.components())
                .field("target", h.target());
            emit(&mut r, &DiagramFile::HeegaardKirby(h), output)?;
            r.verdict = Some(v);
            r
        }
        Command::PrimitivePairs { file } => {
            let (t, digest) = load_trisection(file)?;
            let mut r = report("primitive-pairs", vec![digest]);
            let found = find_primitive_pairs(&t);
            let listed: Vec<String> = found.pairs.iter().map(|(g, b)| format!("{g}:{b}")).collect();
            r.field("pairs", listed.join(",")).field("exact", found.exact).field(
                "max_system",
                max_primitive_system(&t)
                    .iter()
                    .map(|(g, b)| format!("{g}:{b}"))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            r
        }
        Command::GprcCheck { file } => {
            let (text, digest) = read_input(file)?;
            let m = parse_matrix(&text)?;
            let mut r = report("gprc-check", vec![digest]);
            r.field("components", m.components())
                .field("surgery_h1", surgery_h1(&m));
            r.verdict = Some(gprc_necessary_check(&m));
            r
        }
        Command::AcSearch {
            file,
            ak,
            max_length,
            max_depth,
            stable,
            max_states,
        } => {
            let (p, inputs) = match (ak, file) {
                (Some(n), None) => (ak_presentation(*n)?, vec![]),
                (None, Some(f)) => {
                    let (text, d) = read_input(f)?;
                    (parse_presentation(&text)?, vec![d])
                }
                _ => {
                    return Err(Error::InvalidPresentation(
                        "give either --ak N or a presentation file".into(),
                    ))
                }
            };
            let mut r = report("ac-search", inputs);
            let mut config = AcSearchConfig::new(*max_length, *max_depth).stable(*stable);
            if let Some(s) = max_states {
                config.max_states = *s;
            }
            r.field("presentation", &p).field("ab_det", ab_det(&p));
            let outcome = ac_search(&p, &config);
            let result = match &outcome.result {
                AcSearchResult::Trivialized { path, levels } => {
                    format!("trivialized in {} moves over {levels} levels", path.len())
                }
                AcSearchResult::Exhausted(reason) => format!("exhausted ({reason:?})"),
                AcSearchResult::Obstructed(det) => format!("obstructed (det {det})"),
            };
            let s = outcome.stats;
            r.field("result", result)
                .field("states_visited", s.states_visited)
                .field("pruned_by_length", s.pruned_by_length)
                .field("duplicates", s.duplicates)
                .field("depth_reached", s.depth_reached)
                .field("frontier_cut", s.frontier_cut);
            r.verdict = Some(outcome.verdict());
            r
        }
        Command::Catalog { which, output } => return catalog(which, output.as_deref()),
        Command::Replay { report: path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidCertificate(format!("{}: {e}", path.display())))?;
            let original: Report = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidCertificate(format!("{}: {e}", path.display())))?;
            let mut r = report("replay", vec![digest(text.as_bytes())]);
            r.field("replayed_operation", &original.operation);
            let v = original
                .verdict
                .ok_or_else(|| Error::InvalidCertificate("the report carries no verdict".into()))?;
            check_verdict(&v)?;
            r.verdict = Some(v);
            r
        }
    }))
}

fn summarize_pi1(p: &crate::surface_core::tietze::GroupPresentation, free: bool) -> String {
    match (p.num_generators(), free) {
        (0, true) => "trivial".to_string(),
        (n, true) => format!("free of rank {n}"),
        (n, false) => format!("{n} generators, {} relators after simplification", p.relators().len()),
    }
}

fn catalog(which: &str, output: Option<&Path>) -> Result<Output> {
    let entries: Vec<CatalogEntry> =
        match which {
            "figure1" => CatalogEntry::FIGURE1.to_vec(),
            "figure2" => CatalogEntry::FIGURE2.to_vec(),
            "all" => CatalogEntry::ALL.to_vec(),
            name => vec![CatalogEntry::from_name(name)
                .ok_or_else(|| Error::InvalidDiagram(format!("no catalog entry `{name}`")))?],
        };
    let mut text = String::new();
    for e in &entries {
        let body = DiagramFile::Trisection(e.diagram()).to_string();
        match output {
            Some(dir) => {
                let path = dir.join(format!("{}.tri", e.slug()));
                std::fs::write(&path, &body).map_err(|e| Error::InvalidDiagram(format!("{}: {e}", path.display())))?;
                text.push_str(&format!("{}\n", path.display()));
            }
            None => {
                if entries.len() > 1 {
                    text.push_str(&format!("# {}\n", e.name()));
                }
                text.push_str(&body);
                if entries.len() > 1 {
                    text.push('\n');
                }
            }
        }
    }
    Ok(Output::Text(text, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("trisect").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn classify_catalog_entry() {
        let (code, out) = run_str(&["classify", "catalog:cp2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("name: CP²\n"));
    }

    #[test]
    fn invariants_of_s1xs3() {
        let (code, out) = run_str(&["invariants", "catalog:s1xs3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("euler_characteristic: 0\n"));
        assert!(out.contains("h1: Z\n"));
    }

    #[test]
    fn usage_and_input_errors() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["classify", "/nonexistent/file.tri"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn gprc_and_ac() {
        assert_eq!(
            run_str(&["ac-search", "--ak", "1", "--max-length", "32", "--max-depth", "20"]).0,
            0
        );
        let (code, out) = run_str(&["ac-search", "--ak", "3", "--max-length", "14", "--max-depth", "3"]);
        assert_eq!(code, 2, "{out}");
    }

    #[test]
    fn catalog_listing() {
        let (code, out) = run_str(&["catalog", "figure2"]);
        assert_eq!(code, 0);
        assert_eq!(out.matches("trisection genus=1").count(), 3);
        assert!(out.contains("# S⁴ (2-stabilization)\n"));
    }
}

//! Command-line interface: compute signature data, apply and verify move
//! scripts, expose the embedded corpus, and run the property suites.
//!
//! Exit codes: 0 success, 1 domain error (invalid document, singular part),
//! 2 usage error, 3 bound violation reported by `verify`, 4 self-test
//! failure.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use equisig::bounds::{lower_bound_caveats, BoundReport, LowerBounds};
use equisig::corpus;
use equisig::document::JsonValue;
use equisig::selftest::{run_all, SelftestConfig, SuiteOutcome};
use equisig::{
    equivariant_signature, inertia, move_script_parse, parse_document, serialize_document,
    verify_sequence, Document, DocumentBody, EquivariantGoeritz, Int,
};

#[derive(Parser)]
#[command(
    name = "equisig",
    version,
    about = "Exact equivariant signatures of directed strongly invertible knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute signatures, correction term, and determinant checks for a
    /// document
    Compute {
        file: PathBuf,
        /// One machine-readable record on one line
        #[arg(long)]
        json: bool,
    },
    /// Apply a move script to a document and write the resulting form
    Apply {
        file: PathBuf,
        /// Move script, e.g. "B k=1 sign=+1; C sign=+1 color=bicolored"
        #[arg(long)]
        moves: String,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Track the equivariant signature across a move script and check every
    /// per-move bound
    Verify {
        file: PathBuf,
        /// Move script, e.g. "A2 i=1 j=4 sign=+1 color=bicolored eps=+1"
        #[arg(long)]
        moves: String,
        /// One machine-readable record per line
        #[arg(long)]
        json: bool,
        /// Replace every per-move bound (testing aid: the real bounds hold
        /// on all well-formed input, so this is the way to exercise the
        /// violation exit path)
        #[arg(long)]
        max_delta: Option<i64>,
    },
    /// Embedded reference forms and diagrams
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
    /// Run the deterministic property suites
    Selftest {
        /// Base trial count (heavier suites run at half of it)
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest matrix size for the signature cross-check
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Names of all embedded entries
    List,
    /// Print one entry as a document
    Show { name: String },
    /// Write every entry as a .json document into a directory
    Export { dir: PathBuf },
}

/// Domain failure carried up to `main`, printed to stderr, exit code 1.
struct DomainError(String);

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, DomainError> {
    match command {
        Command::Compute { file, json } => compute(&file, json),
        Command::Apply { file, moves, out } => apply(&file, &moves, out.as_deref()),
        Command::Verify {
            file,
            moves,
            json,
            max_delta,
        } => verify(&file, &moves, json, max_delta),
        Command::Corpus { action } => corpus_cmd(action),
        Command::Selftest {
            trials,
            seed,
            max_n,
        } => Ok(selftest(trials, seed, max_n)),
    }
}

fn load_document(path: &Path) -> Result<Document, DomainError> {
    let text = fs::read_to_string(path)
        .map_err(|e| DomainError(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_document(&text)?)
}

/// The Goeritz form a document denotes; diagrams are validated and reduced.
fn form_of(doc: &Document) -> Result<EquivariantGoeritz, DomainError> {
    match &doc.body {
        DocumentBody::Goeritz(g) => Ok(g.clone()),
        DocumentBody::Diagram(d) => {
            let report = d.validate();
            if !report.is_ok() {
                let lines: Vec<String> =
                    report.violations.iter().map(|v| v.to_string()).collect();
                return Err(DomainError(format!(
                    "invalid diagram: {}",
                    lines.join("; ")
                )));
            }
            Ok(d.goeritz()?)
        }
        DocumentBody::Report(_) => Err(DomainError(
            "bound-report documents carry no Goeritz data".into(),
        )),
    }
}

fn compute(file: &Path, json: bool) -> Result<ExitCode, DomainError> {
    let g = form_of(&load_document(file)?)?;
    let sigma_plus = inertia(&g.plus_part());
    let sigma_minus = inertia(&g.minus_part());
    let sigma = equivariant_signature(&g)?;
    let det = g.check_det_identity();
    if json {
        let mut fields: Vec<(String, JsonValue)> = Vec::new();
        if let Some(label) = g.label() {
            fields.push(("label".into(), label.into()));
        }
        fields.extend([
            ("n".into(), g.pair_count().into()),
            ("sigma_plus".into(), sigma_plus.signature().into()),
            ("sigma_minus".into(), sigma_minus.signature().into()),
            ("e".into(), g.correction().into()),
            ("sigma_tilde".into(), (&sigma).into()),
            ("det_full".into(), (&det.det_full).into()),
            ("det_plus".into(), (&det.det_plus).into()),
            ("det_minus".into(), (&det.det_minus).into()),
            ("det_identity".into(), det.identity_holds.into()),
            ("det_odd".into(), det.det_odd.into()),
            ("det_nonzero".into(), det.det_nonzero.into()),
        ]);
        println!("{}", JsonValue::Object(fields).compact());
    } else {
        if let Some(label) = g.label() {
            println!("label: {label}");
        }
        println!("n: {}", g.pair_count());
        println!("sigma(M+) = {}", sigma_plus.signature());
        println!("sigma(M-) = {}", sigma_minus.signature());
        println!("e = {}", g.correction());
        println!("sigma~ = {sigma}");
        println!("det(M)  = {}", det.det_full);
        println!("det(M+) = {}", det.det_plus);
        println!("det(M-) = {}", det.det_minus);
        println!(
            "det identity (det(M+)*det(M-) = 4^n*det(M)): {}",
            if det.identity_holds { "holds" } else { "FAILS" }
        );
        println!(
            "knot determinant (odd, nonzero): {}",
            if det.det_odd && det.det_nonzero {
                "pass"
            } else {
                "fail"
            }
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn apply(file: &Path, moves: &str, out: Option<&Path>) -> Result<ExitCode, DomainError> {
    let doc = load_document(file)?;
    let mut g = form_of(&doc)?;
    for mv in move_script_parse(moves)? {
        g = equisig::apply_move_matrix(&g, &mv)?;
    }
    let mut result = Document::goeritz(g);
    result.notes = doc.notes;
    let text = serialize_document(&result);
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| DomainError(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn bounds_fields(b: &LowerBounds<Int>) -> Vec<(String, JsonValue)> {
    vec![
        ("type_a_min".into(), (&b.type_a_min).into()),
        ("type_b_min".into(), (&b.type_b_min).into()),
        ("type_c_min".into(), (&b.type_c_min).into()),
        (
            "homotopy_self_intersections_min".into(),
            (&b.homotopy_self_intersections_min).into(),
        ),
    ]
}

fn print_report_text(report: &BoundReport<Int>) {
    if let Some(label) = &report.label {
        println!("label: {label}");
    }
    println!("initial sigma~ = {}", report.initial_sigma);
    for (i, step) in report.steps.iter().enumerate() {
        println!(
            "step {}: {} | sigma~ {} -> {} | delta {} | bound {} | {}",
            i + 1,
            step.move_spec,
            step.sigma_before,
            step.sigma_after,
            step.delta,
            step.bound,
            if step.compliant { "ok" } else { "VIOLATION" }
        );
    }
    println!("final sigma~ = {}", report.final_sigma);
    println!("lower bounds from the initial form:");
    let b = &report.lower_bounds;
    let caveats = lower_bound_caveats();
    println!(
        "  type A moves       >= {}  ({})",
        b.type_a_min, caveats[0].1
    );
    println!(
        "  directed type B    >= {}  ({})",
        b.type_b_min, caveats[1].1
    );
    println!(
        "  type C moves       >= {}  ({})",
        b.type_c_min, caveats[2].1
    );
    println!(
        "  self-intersections >= {}  ({})",
        b.homotopy_self_intersections_min, caveats[3].1
    );
    println!(
        "compliant: {}",
        if report.compliant { "yes" } else { "no" }
    );
}

fn print_report_json(report: &BoundReport<Int>) {
    for (i, step) in report.steps.iter().enumerate() {
        let record = JsonValue::Object(vec![
            ("record".into(), "step".into()),
            ("index".into(), (i + 1).into()),
            ("move".into(), step.move_spec.to_string().into()),
            ("sigma_before".into(), (&step.sigma_before).into()),
            ("sigma_after".into(), (&step.sigma_after).into()),
            ("delta".into(), (&step.delta).into()),
            ("bound".into(), step.bound.into()),
            ("compliant".into(), step.compliant.into()),
        ]);
        println!("{}", record.compact());
    }
    let mut fields: Vec<(String, JsonValue)> = vec![("record".into(), "summary".into())];
    if let Some(label) = &report.label {
        fields.push(("label".into(), label.as_str().into()));
    }
    fields.push(("initial_sigma".into(), (&report.initial_sigma).into()));
    fields.push(("final_sigma".into(), (&report.final_sigma).into()));
    fields.push(("compliant".into(), report.compliant.into()));
    fields.extend(bounds_fields(&report.lower_bounds));
    println!("{}", JsonValue::Object(fields).compact());
}

fn verify(
    file: &Path,
    moves: &str,
    json: bool,
    max_delta: Option<i64>,
) -> Result<ExitCode, DomainError> {
    let g = form_of(&load_document(file)?)?;
    let parsed = move_script_parse(moves)?;
    let report = match max_delta {
        None => verify_sequence(&g, &parsed)?,
        Some(bound) => equisig::bounds::verify_sequence_with_bound(&g, &parsed, Some(bound))?,
    };
    if json {
        print_report_json(&report);
    } else {
        print_report_text(&report);
    }
    if report.compliant {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn corpus_document(name: &str) -> Option<Document> {
    if let Some(entry) = corpus::matrix_entry(name) {
        let mut doc = Document::goeritz(entry.goeritz);
        doc.notes = Some(entry.note.to_string());
        return Some(doc);
    }
    if let Some(entry) = corpus::diagram_entry(name) {
        let mut doc = Document::diagram(entry.diagram);
        doc.notes = Some(format!("reduces to the {} entry", entry.matrix_entry));
        return Some(doc);
    }
    None
}

fn corpus_cmd(action: CorpusCmd) -> Result<ExitCode, DomainError> {
    match action {
        CorpusCmd::List => {
            for entry in corpus::matrix_entries() {
                println!(
                    "{:<16} equivariant-goeritz  n={}",
                    entry.name,
                    entry.goeritz.pair_count()
                );
            }
            for entry in corpus::diagram_entries() {
                println!(
                    "{:<16} symmetric-diagram    n={} crossings={}",
                    entry.name,
                    entry.diagram.n,
                    entry.diagram.crossings.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        CorpusCmd::Show { name } => {
            let doc = corpus_document(&name)
                .ok_or_else(|| DomainError(format!("no corpus entry named {name}")))?;
            print!("{}", serialize_document(&doc));
            Ok(ExitCode::SUCCESS)
        }
        CorpusCmd::Export { dir } => {
            fs::create_dir_all(&dir)
                .map_err(|e| DomainError(format!("cannot create {}: {e}", dir.display())))?;
            let mut count = 0usize;
            for name in corpus::names() {
                let doc = corpus_document(name).expect("names() lists existing entries");
                let path = dir.join(format!("{name}.json"));
                fs::write(&path, serialize_document(&doc))
                    .map_err(|e| DomainError(format!("cannot write {}: {e}", path.display())))?;
                count += 1;
            }
            println!("wrote {count} documents to {}", dir.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn selftest(trials: usize, seed: u64, max_n: usize) -> ExitCode {
    let cfg = SelftestConfig {
        trials,
        seed,
        max_size: max_n,
    };
    println!("seed {seed}, base trials {trials}, max size {max_n}");
    let outcomes = run_all(&cfg);
    let mut all_ok = true;
    for SuiteOutcome {
        name,
        trials,
        failures,
    } in &outcomes
    {
        println!(
            "{name:<24} {trials:>6} checks  {}",
            if failures.is_empty() { "ok" } else { "FAILED" }
        );
        for line in failures.iter().take(5) {
            println!("    {line}");
        }
        if failures.len() > 5 {
            println!("    ... and {} more", failures.len() - 5);
        }
        all_ok &= failures.is_empty();
    }
    if all_ok {
        println!("selftest: ok ({} suites)", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("selftest: FAILED");
        ExitCode::from(4)
    }
}

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fracbrauer::algebra::{
    cartan_matrix, congruence_closure, cycle_notation, frobenius_check, loewy_diagrams, nakayama_consistency,
    type_s_basis, FrobeniusData,
};
use fracbrauer::config::{Axiom, F6Mode};
use fracbrauer::corpus::{golden_report, report_differences, Manifest};
use fracbrauer::gabriel::{
    check_conditions_dc, gabriel_presentation, reconstruct_configuration, special_multiserial_check,
    verify_isomorphism,
};
use fracbrauer::io::{self, LoadError};
use fracbrauer::relations::{ideal_generators, reduce_generators};
use fracbrauer::{classify, AlgebraTable, ClassificationReport, Configuration, Quiver};

/// Upper bound on the number of paths used when reducing generator lists.
const REDUCTION_CAP: usize = 200_000;

#[derive(Parser)]
#[command(name = "fracbrauer", version, about = "Fractional Brauer configurations and their algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms and print the classification; fails when an axiom fails.
    Validate {
        file: PathBuf,
        /// Require (f6) for every factor, not only prefixes and suffixes.
        #[arg(long)]
        strict_f6: bool,
    },
    /// Print the full classification report.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the quiver, or print it in DOT syntax.
    Quiver {
        file: PathBuf,
        /// Use the Gabriel quiver (reduced arrows removed).
        #[arg(long)]
        gabriel: bool,
        #[arg(long)]
        dot: bool,
    },
    /// List the generators of the ideal of relations.
    Relations {
        file: PathBuf,
        /// Print the unreduced generator families instead of a reduced list.
        #[arg(long)]
        all: bool,
    },
    /// Compute the quotient algebra and its invariants.
    Algebra {
        file: PathBuf,
        #[arg(long)]
        cartan: bool,
        #[arg(long)]
        loewy: bool,
        #[arg(long)]
        frobenius: bool,
        #[arg(long, value_enum, default_value_t = Engine::Closure)]
        engine: Engine,
        #[arg(long)]
        json: bool,
    },
    /// Print the Gabriel presentation and its structural verdicts.
    Gabriel { file: PathBuf },
    /// Print the Frobenius verdicts and the Nakayama permutation.
    Frobenius { file: PathBuf },
    /// Convert a Brauer configuration presentation to a configuration document.
    ConvertBc { file: PathBuf },
    /// Reverse the orientation; `-` reads standard input.
    Reverse { file: PathBuf },
    /// Rebuild the configuration from socle paths and compare the algebras.
    Roundtrip { file: PathBuf },
    /// Compare every corpus item with its golden report.
    CorpusCheck {
        #[arg(default_value = "corpus")]
        dir: PathBuf,
        /// Rewrite the golden reports from a fresh run.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Closure,
    TypeS,
    Both,
}

/// A failed command: exit code 1 for domain failures, 2 for input failures.
struct Failure {
    code: u8,
    message: String,
}

fn domain(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<String, Failure>;

fn read_text(path: &FsPath) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &FsPath) -> Result<Configuration, Failure> {
    let text = read_text(path)?;
    io::load_configuration(&text).map_err(|e| match e {
        LoadError::Document(d) => input(format!("{}: {d}", path.display())),
        LoadError::Bc(b) => domain(format!("{}: {b}", path.display())),
    })
}

/// Loads a configuration satisfying (f1)–(f6).
fn load_fbc(path: &FsPath) -> Result<Configuration, Failure> {
    let c = load(path)?;
    match c.validate().violations.first() {
        Some(v) => Err(domain(format!("not an f-BC: ({}) {}", v.axiom, v.detail))),
        None => Ok(c),
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classification_text(c: &Configuration, r: &ClassificationReport) -> String {
    let mut out = String::new();
    let s_note = r.type_s_witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default();
    let _ = writeln!(out, "f-BC {}, MS {}, S {}{s_note}", mark(r.is_fbc), mark(r.is_type_ms), mark(r.is_type_s));
    let _ = writeln!(
        out,
        "BC {}, BG {}, f_s-BG {}, f_ms-BG {}",
        mark(r.is_bc),
        mark(r.is_bg),
        mark(r.is_fs_bg),
        mark(r.is_fms_bg)
    );
    let degrees: Vec<String> = r
        .f_degrees
        .iter()
        .map(|o| {
            let names: Vec<&str> = o.orbit.iter().map(|a| a.as_str()).collect();
            let (n, d) = o.f_degree;
            let value = if d == 1 { n.to_string() } else { format!("{n}/{d}") };
            format!("({}) {value}", names.join(" "))
        })
        .collect();
    let _ = writeln!(out, "f-degree: {}", degrees.join(", "));
    let _ = writeln!(out, "Nakayama angle map: {}", cycle_notation(&c.nakayama_map().angles, |e| c.name(e).to_string()));
    out
}

fn cmd_validate(file: &FsPath, strict: bool) -> Outcome {
    let c = load(file)?;
    let mode = if strict { F6Mode::Strict } else { F6Mode::EndAligned };
    let axioms = c.validate_with(mode);
    let mut out = String::new();
    for ax in [Axiom::F1, Axiom::F2, Axiom::F3, Axiom::F4, Axiom::F5, Axiom::F6] {
        match axioms.violation(ax) {
            None => {
                let _ = writeln!(out, "{ax} ✓");
            }
            Some(v) => {
                let names: Vec<&str> = v.angles.iter().map(|a| a.as_str()).collect();
                let _ = writeln!(out, "{ax} ✗ [{}] {}", names.join(", "), v.detail);
            }
        }
    }
    out.push_str(&classification_text(&c, &classify(&c)));
    if axioms.all_hold() {
        Ok(out)
    } else {
        Err(domain(format!("{out}axioms fail")))
    }
}

fn cmd_classify(file: &FsPath, json: bool) -> Outcome {
    let c = load(file)?;
    let r = classify(&c);
    if json {
        let mut s = serde_json::to_string_pretty(&r).expect("serializable");
        s.push('\n');
        return Ok(s);
    }
    let mut out = String::new();
    for v in &r.axioms.violations {
        let _ = writeln!(out, "{} ✗ {}", v.axiom, v.detail);
    }
    out.push_str(&classification_text(&c, &r));
    Ok(out)
}

fn quiver_listing(q: &Quiver) -> String {
    let mut out = format!("{} vertices, {} arrows\n", q.num_vertices(), q.arrows.len());
    for v in &q.vertices {
        let _ = writeln!(out, "vertex {v}");
    }
    for a in &q.arrows {
        let _ = writeln!(out, "arrow L({}): {} -> {}", a.id, q.vertices[a.source], q.vertices[a.target]);
    }
    out
}

fn cmd_quiver(file: &FsPath, gabriel: bool, dot: bool) -> Outcome {
    let c = load_fbc(file)?;
    let q = if gabriel {
        let p = gabriel_presentation(&c).map_err(|e| domain(e.to_string()))?;
        p.quiver.restrict(p.kept())
    } else {
        Quiver::from_config(&c)
    };
    if dot {
        Ok(q.to_dot(if gabriel { "Q'" } else { "Q" }))
    } else {
        Ok(quiver_listing(&q))
    }
}

fn cmd_relations(file: &FsPath, all: bool) -> Outcome {
    let c = load_fbc(file)?;
    let q = Quiver::from_config(&c);
    let g = ideal_generators(&c, &q);
    let mut out = String::new();
    if all {
        for (a, b) in &g.fr1 {
            let _ = writeln!(out, "fR1 {} - {}", q.label(a), q.label(b));
        }
        for p in &g.fr2 {
            let _ = writeln!(out, "fR2 {}", q.label(p));
        }
        for p in &g.fr3 {
            let _ = writeln!(out, "fR3 {}", q.label(p));
        }
        return Ok(out);
    }
    let reduced = reduce_generators(&q, &g.relations(), 2 * g.length_bound, REDUCTION_CAP);
    let _ = writeln!(out, "{} generators", reduced.len());
    for r in &reduced {
        let _ = writeln!(out, "{}", r.render(&q));
    }
    Ok(out)
}

fn compute_table(c: &Configuration, engine: Engine) -> Result<AlgebraTable, Failure> {
    let err = |e: fracbrauer::AlgebraError| domain(e.to_string());
    match engine {
        Engine::Closure => congruence_closure(c).map_err(err),
        Engine::TypeS => type_s_basis(c).map_err(err),
        Engine::Both => {
            let a = congruence_closure(c).map_err(err)?;
            let b = type_s_basis(c).map_err(err)?;
            a.compare(&b).map_err(|e| domain(format!("engines disagree: {e}")))?;
            if let Some(p) = a.collapsed().first() {
                return Err(domain(format!("path {p:?} of a standard sequence collapsed to zero")));
            }
            Ok(a)
        }
    }
}

fn frobenius_text(q: &Quiver, f: &FrobeniusData) -> String {
    let mut out = format!("Frobenius: {}\n", yes_no(f.frobenius));
    if let Some(n) = &f.nakayama {
        let _ = writeln!(out, "Nakayama permutation: {}", cycle_notation(n, |v| q.vertices[v].to_string()));
    }
    let _ = writeln!(out, "symmetric: {}", yes_no(f.symmetric));
    let _ = writeln!(out, "self-injective: {}", yes_no(f.self_injective));
    if let Some(w) = &f.witness {
        let _ = writeln!(out, "witness: {w}");
    }
    out
}

fn cmd_algebra(file: &FsPath, cartan: bool, loewy: bool, frobenius: bool, engine: Engine, json: bool) -> Outcome {
    let c = load_fbc(file)?;
    let t = compute_table(&c, engine)?;
    let q = Quiver::from_config(&c);
    let label = |v: usize| q.vertices[v].to_string();
    let diagrams = loewy_diagrams(&t);
    if json {
        let loewy_json: serde_json::Map<String, serde_json::Value> = diagrams
            .iter()
            .map(|d| {
                let layers: Vec<Vec<String>> = d.layers.iter().map(|l| l.iter().map(|&v| label(v)).collect()).collect();
                let socle: Vec<String> = d.socle.iter().map(|&v| label(v)).collect();
                (label(d.vertex), serde_json::json!({ "layers": layers, "socle": socle }))
            })
            .collect();
        let f = frobenius_check(&t, &c);
        let doc = serde_json::json!({
            "vertices": q.vertices,
            "total_dim": t.total_dim(),
            "cartan": cartan_matrix(&t),
            "loewy": loewy_json,
            "frobenius": f.frobenius,
            "nakayama": f.nakayama.as_ref().map(|n| n.iter().map(|&v| label(v)).collect::<Vec<_>>()),
            "symmetric": f.symmetric,
            "self_injective": f.self_injective,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        return Ok(s);
    }
    let mut out = String::new();
    if engine == Engine::Both {
        out.push_str("engines agree\n");
    }
    let _ = writeln!(out, "total_dim {}", t.total_dim());
    let dims: Vec<String> = diagrams.iter().map(|d| format!("P_{} {}", label(d.vertex), d.dim())).collect();
    let _ = writeln!(out, "dims: {}", dims.join(", "));
    if cartan {
        out.push_str("Cartan matrix:\n");
        for row in cartan_matrix(&t) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
    }
    if loewy {
        for d in &diagrams {
            let layers: Vec<String> = d
                .layers
                .iter()
                .map(|l| l.iter().map(|&v| label(v)).collect::<Vec<_>>().join(" "))
                .collect();
            let socle: Vec<String> = d.socle.iter().map(|&v| label(v)).collect();
            let _ = writeln!(out, "P_{}: {}  (socle {})", label(d.vertex), layers.join(" / "), socle.join(" "));
        }
    }
    if frobenius {
        out.push_str(&frobenius_text(&q, &frobenius_check(&t, &c)));
    }
    Ok(out)
}

fn cmd_gabriel(file: &FsPath) -> Outcome {
    let c = load_fbc(file)?;
    let p = gabriel_presentation(&c).map_err(|e| domain(e.to_string()))?;
    let t = congruence_closure(&c).map_err(|e| domain(e.to_string()))?;
    let full = Quiver::from_config(&c);
    let q = p.quiver.restrict(p.kept());
    let mut out = quiver_listing(&q);
    let removed: Vec<String> = p.arrows.reduced.iter().map(|&a| format!("L({})", full.arrows[a].id)).collect();
    let _ = writeln!(out, "reduced arrows: {}", if removed.is_empty() { "none".into() } else { removed.join(" ") });
    let bound = 2 * c.length_bound();
    let relations = reduce_generators(&q, &p.relations(), bound, REDUCTION_CAP);
    let _ = writeln!(out, "{} relations", relations.len());
    for r in &relations {
        let _ = writeln!(out, "  {}", r.render(&q));
    }
    let _ = writeln!(out, "admissible: {}", yes_no(p.admissible));
    if let Some(w) = &p.admissibility_witness {
        let _ = writeln!(out, "  {w}");
    }
    let sm = special_multiserial_check(&p, &t);
    let _ = writeln!(out, "special multiserial: {}", yes_no(sm.holds));
    for (a, b, c2) in &sm.witnesses {
        let id = |x: usize| full.arrows[x].id.to_string();
        let _ = writeln!(out, "  L({}) extends by L({}) and L({})", id(*a), id(*b), id(*c2));
    }
    let dc = check_conditions_dc(&c, &p, &t).map_err(|e| domain(e.to_string()))?;
    let _ = writeln!(out, "(D): {}, (C): {}", yes_no(dc.d), yes_no(dc.c));
    if let Some(w) = &dc.witness {
        let _ = writeln!(out, "  {w}");
    }
    Ok(out)
}

fn cmd_frobenius(file: &FsPath) -> Outcome {
    let c = load_fbc(file)?;
    let t = congruence_closure(&c).map_err(|e| domain(e.to_string()))?;
    let q = Quiver::from_config(&c);
    let f = frobenius_check(&t, &c);
    let mut out = frobenius_text(&q, &f);
    if classify(&c).is_type_s {
        let verdict = match nakayama_consistency(&t, &c, &f) {
            Ok(()) => "yes".to_string(),
            Err(e) => format!("no ({e})"),
        };
        let _ = writeln!(out, "Nakayama identities: {verdict}");
    }
    Ok(out)
}

fn cmd_convert_bc(file: &FsPath) -> Outcome {
    let text = read_text(file)?;
    let bc = io::parse_bc(&text).map_err(|e| input(format!("{}: {e}", file.display())))?;
    let c = bc.to_configuration().map_err(|e| domain(format!("{}: {e}", file.display())))?;
    Ok(io::configuration_to_json(&c))
}

fn cmd_reverse(file: &FsPath) -> Outcome {
    Ok(io::configuration_to_json(&load(file)?.reversed()))
}

fn cmd_roundtrip(file: &FsPath) -> Outcome {
    let c = load_fbc(file)?;
    if let Some(w) = classify(&c).type_s_witness {
        return Err(domain(format!("not type S: {w}")));
    }
    let t = congruence_closure(&c).map_err(|e| domain(e.to_string()))?;
    let p = gabriel_presentation(&c).map_err(|e| domain(e.to_string()))?;
    let rec = reconstruct_configuration(&t, &p).map_err(|e| domain(e.to_string()))?;
    let iso = verify_isomorphism(&t, &p, &rec);
    let mut out = io::configuration_to_json(&rec.config);
    let _ = writeln!(out, "isomorphic: {}", yes_no(iso.isomorphic));
    match iso.failure {
        None => Ok(out),
        Some(f) => Err(domain(format!("{out}{f}"))),
    }
}

fn cmd_corpus_check(dir: &FsPath, bless: bool) -> Outcome {
    let manifest_path = dir.join("manifest.json");
    let text = read_text(&manifest_path)?;
    let mut manifest = Manifest::parse(&text).map_err(|e| input(format!("{}: {e}", manifest_path.display())))?;
    let mut out = String::new();
    let mut failures = 0;
    for entry in &mut manifest.entries {
        let c = load(&dir.join(&entry.file))?;
        let got = golden_report(&c);
        if bless {
            entry.expected = Some(got);
            let _ = writeln!(out, "blessed {}", entry.id);
            continue;
        }
        match &entry.expected {
            None => {
                let _ = writeln!(out, "unchecked {}", entry.id);
            }
            Some(want) => {
                let diffs = report_differences(want, &got);
                if diffs.is_empty() {
                    let _ = writeln!(out, "ok {}", entry.id);
                } else {
                    failures += 1;
                    let _ = writeln!(out, "FAIL {}", entry.id);
                    for d in diffs {
                        let _ = writeln!(out, "  {d}");
                    }
                }
            }
        }
    }
    if bless {
        let mut s = serde_json::to_string_pretty(&manifest).expect("serializable");
        s.push('\n');
        std::fs::write(&manifest_path, s).map_err(|e| input(format!("{}: {e}", manifest_path.display())))?;
    }
    if failures > 0 {
        return Err(domain(format!("{out}{failures} corpus item(s) differ from their golden reports")));
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file, strict_f6 } => cmd_validate(&file, strict_f6),
        Command::Classify { file, json } => cmd_classify(&file, json),
        Command::Quiver { file, gabriel, dot } => cmd_quiver(&file, gabriel, dot),
        Command::Relations { file, all } => cmd_relations(&file, all),
        Command::Algebra { file, cartan, loewy, frobenius, engine, json } => {
            cmd_algebra(&file, cartan, loewy, frobenius, engine, json)
        }
        Command::Gabriel { file } => cmd_gabriel(&file),
        Command::Frobenius { file } => cmd_frobenius(&file),
        Command::ConvertBc { file } => cmd_convert_bc(&file),
        Command::Reverse { file } => cmd_reverse(&file),
        Command::Roundtrip { file } => cmd_roundtrip(&file),
        Command::CorpusCheck { dir, bless } => cmd_corpus_check(&dir, bless),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}

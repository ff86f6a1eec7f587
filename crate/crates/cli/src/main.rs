//! `ddf`: validate, transform, and round-trip double-categorical data in the
//! shared interchange format.
//!
//! Exit codes: 0 clean, 1 validation failures, 2 input or parse errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{rngs::StdRng, Rng, SeedableRng};

use ddf_core::cat::check_category;
use ddf_core::corpus;
use ddf_core::dbl::{check_double_category, check_double_functor, walking_proarrow, DoubleCategory};
use ddf_core::doc::{emit, parse, Document};
use ddf_core::elements::{el_functor, el_transformation, is_ddf, DdfCandidate};
use ddf_core::equiv::{
    el_module, el_multimodulation, f_of_multicell, f_of_profunctor, verify_equivalence,
    EquivalenceCorpus,
};
use ddf_core::fiber::{f_of_ddf, f_of_morphism};
use ddf_core::lax::{check_lax_functor, check_transformation, representable};
use ddf_core::modules::{check_module, check_multimodulation};
use ddf_core::prof::{check_internal_profunctor, check_prof_multicell, unit_profunctor};
use ddf_core::{Error, Report};

#[derive(Parser)]
#[command(name = "ddf", about = "Double categories, lax functors, and their fibrations")]
struct Cli {
    /// Emit reports as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Skip multimodulations and multicells of arity above this bound.
    #[arg(long, global = true, default_value_t = 4)]
    max_path_len: usize,
    /// Seed for corpus sampling in `demo`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable checker on a document.
    Validate { file: String },
    /// Apply the elements construction to a named entity.
    Elements {
        file: String,
        #[arg(long)]
        functor: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Recover indexed data from a fibration-side entity.
    Invert {
        file: String,
        #[arg(long)]
        ddf: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Build the unit and counit over a base and verify both directions.
    Roundtrip {
        file: String,
        #[arg(long)]
        base: String,
    },
    /// Full equivalence report over every base in the document.
    Verify { file: String },
    /// Emit a generated example document.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoKind {
    Terminal,
    Vertical,
    Walking,
    Representable,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn write_output(out: &Option<String>, text: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}")),
    }
}

fn print_report(report: &Report, json: bool) {
    if json {
        let violations: Vec<_> = report
            .violations
            .iter()
            .map(|v| serde_json::json!({"rule": v.rule, "witness": v.witness}))
            .collect();
        let value = serde_json::json!({"ok": report.is_ok(), "violations": violations});
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        println!("{report}");
    }
}

/// Every checker that applies to the document's entities; precondition
/// failures (base mismatches and the like) are reported as violations too.
fn validate_document(doc: &Document, max_path_len: usize) -> Report {
    let mut report = Report::ok();
    let mut absorb = |context: String, result: Result<Report, Error>| match result {
        Ok(r) => report.absorb(&context, r),
        Err(e) => report.push("input.precondition", format!("{context}: {e}")),
    };
    for (name, c) in &doc.categories {
        absorb(format!("categories.{name}"), Ok(check_category(c)));
    }
    for (name, b) in &doc.double_categories {
        absorb(format!("double_categories.{name}"), Ok(check_double_category(b)));
    }
    for (name, f) in &doc.lax_functors {
        absorb(format!("lax_functors.{name}"), Ok(check_lax_functor(f)));
    }
    for (name, t) in &doc.transformations {
        absorb(format!("transformations.{name}"), check_transformation(t));
    }
    for (name, p) in &doc.ddfs {
        absorb(format!("ddfs.{name}"), Ok(is_ddf(p)));
    }
    for (name, h) in &doc.ddf_morphisms {
        absorb(format!("ddf_morphisms.{name}"), Ok(check_double_functor(h)));
    }
    for (name, m) in &doc.modules {
        absorb(format!("modules.{name}"), check_module(m));
    }
    for (name, mu) in &doc.multimodulations {
        if mu.arity() > max_path_len {
            continue;
        }
        absorb(format!("multimodulations.{name}"), check_multimodulation(mu));
    }
    for (name, m) in &doc.profunctors {
        absorb(format!("profunctors.{name}"), check_internal_profunctor(m));
    }
    for (name, u) in &doc.multicells {
        if u.arity() > max_path_len {
            continue;
        }
        absorb(format!("multicells.{name}"), check_prof_multicell(u));
    }
    report
}

fn corpus_over(doc: &Document, b: &DoubleCategory, max_path_len: usize) -> EquivalenceCorpus {
    let mut corpus = EquivalenceCorpus::default();
    for f in doc.lax_functors.values().filter(|f| &f.base == b) {
        corpus.functors.push(f.clone());
    }
    for t in doc.transformations.values().filter(|t| &t.src.base == b) {
        corpus.transformations.push(t.clone());
    }
    for p in doc.ddfs.values().filter(|p| p.base() == b) {
        corpus.ddfs.push(p.clone());
    }
    for m in doc.modules.values().filter(|m| m.base() == b) {
        corpus.modules.push(m.clone());
    }
    for mu in doc
        .multimodulations
        .values()
        .filter(|mu| mu.base() == b && mu.arity() <= max_path_len)
    {
        corpus.multimodulations.push(mu.clone());
    }
    for m in doc.profunctors.values().filter(|m| m.base() == b) {
        corpus.profunctors.push(m.clone());
    }
    for u in doc
        .multicells
        .values()
        .filter(|u| u.base() == b && u.arity() <= max_path_len)
    {
        corpus.multicells.push(u.clone());
    }
    corpus
}

fn elements_of(doc: &Document, name: &str) -> Result<Document, Error> {
    let mut out = Document::default();
    if let Some(f) = doc.lax_functors.get(name) {
        let report = check_lax_functor(f);
        if !report.is_ok() {
            return Err(Error::InvalidFunctor(report.to_string()));
        }
        out.ddfs.insert(format!("el_{name}"), el_functor(f)?);
    } else if let Some(t) = doc.transformations.get(name) {
        out.ddf_morphisms
            .insert(format!("el_{name}"), el_transformation(t)?);
    } else if let Some(m) = doc.modules.get(name) {
        out.profunctors.insert(format!("el_{name}"), el_module(m)?);
    } else if let Some(mu) = doc.multimodulations.get(name) {
        out.multicells
            .insert(format!("el_{name}"), el_multimodulation(mu)?);
    } else {
        return Err(Error::UnresolvedName(format!(
            "no lax functor, transformation, module, or multimodulation named '{name}'"
        )));
    }
    Ok(out)
}

fn invert(doc: &Document, name: &str) -> Result<Document, Error> {
    let mut out = Document::default();
    if let Some(p) = doc.ddfs.get(name) {
        out.lax_functors.insert(format!("f_{name}"), f_of_ddf(p)?);
    } else if let Some(h) = doc.ddf_morphisms.get(name) {
        // Inverting a morphism needs the projections of its endpoints; find
        // them among the document's fibrations by their total.
        let find = |dc: &DoubleCategory| -> Result<&DdfCandidate, Error> {
            doc.ddfs
                .values()
                .find(|p| p.total() == dc)
                .ok_or_else(|| {
                    Error::UnresolvedName(format!(
                        "ddf_morphisms.{name}: no ddf in the document has this boundary as its total"
                    ))
                })
        };
        let p = find(&h.src_dc)?;
        let q = find(&h.tgt_dc)?;
        out.transformations
            .insert(format!("f_{name}"), f_of_morphism(h, p, q)?);
    } else if let Some(m) = doc.profunctors.get(name) {
        out.modules.insert(format!("f_{name}"), f_of_profunctor(m)?);
    } else if let Some(u) = doc.multicells.get(name) {
        out.multimodulations
            .insert(format!("f_{name}"), f_of_multicell(u)?);
    } else {
        return Err(Error::UnresolvedName(format!(
            "no ddf, ddf morphism, profunctor, or multicell named '{name}'"
        )));
    }
    Ok(out)
}

fn demo_document(which: DemoKind, seed: u64) -> Document {
    let mut doc = Document::default();
    match which {
        DemoKind::Terminal | DemoKind::Vertical | DemoKind::Walking => {
            let bases = corpus::corpus_bases();
            let (name, b) = bases[match which {
                DemoKind::Terminal => 0,
                DemoKind::Vertical => 1,
                _ => 3,
            }]
            .clone();
            doc.double_categories.insert(name.clone(), b.clone());
            for (i, f) in corpus::corpus_lax_functors(&b).into_iter().enumerate() {
                let p = el_functor(&f).unwrap();
                doc.profunctors
                    .insert(format!("unit_prof_{i}"), unit_profunctor(&p).unwrap());
                doc.ddfs.insert(format!("el_{i}"), p);
                doc.lax_functors.insert(format!("lax_{i}"), f);
            }
            for (i, m) in corpus::corpus_modules(&b).into_iter().enumerate() {
                doc.modules.insert(format!("module_{i}"), m);
            }
            for (i, mu) in corpus::corpus_multimodulations(&b).into_iter().enumerate() {
                doc.multimodulations.insert(format!("mm_{i}"), mu);
            }
        }
        DemoKind::Representable => {
            let b = walking_proarrow();
            let objects = b.objects().elements().to_vec();
            let mut rng = StdRng::seed_from_u64(seed);
            let x = &objects[rng.gen_range(0..objects.len())];
            doc.double_categories.insert("walking_proarrow".into(), b.clone());
            doc.lax_functors
                .insert(format!("representable_{x}"), representable(&b, x).unwrap());
        }
    }
    doc
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    match cli.command {
        Command::Validate { file } => {
            let text = read_input(&file).map_err(|e| (2, e))?;
            let doc = parse(&text).map_err(|e| (2, e.to_string()))?;
            let report = validate_document(&doc, cli.max_path_len);
            print_report(&report, cli.json);
            Ok(if report.is_ok() { 0 } else { 1 })
        }
        Command::Elements { file, functor, out } => {
            let text = read_input(&file).map_err(|e| (2, e))?;
            let doc = parse(&text).map_err(|e| (2, e.to_string()))?;
            match elements_of(&doc, &functor) {
                Ok(result) => {
                    write_output(&out, &emit(&result)).map_err(|e| (2, e))?;
                    Ok(0)
                }
                Err(Error::UnresolvedName(msg)) => Err((2, msg)),
                Err(e) => Err((1, e.to_string())),
            }
        }
        Command::Invert { file, ddf, out } => {
            let text = read_input(&file).map_err(|e| (2, e))?;
            let doc = parse(&text).map_err(|e| (2, e.to_string()))?;
            match invert(&doc, &ddf) {
                Ok(result) => {
                    write_output(&out, &emit(&result)).map_err(|e| (2, e))?;
                    Ok(0)
                }
                Err(Error::UnresolvedName(msg)) => Err((2, msg)),
                Err(e) => Err((1, e.to_string())),
            }
        }
        Command::Roundtrip { file, base } => {
            let text = read_input(&file).map_err(|e| (2, e))?;
            let doc = parse(&text).map_err(|e| (2, e.to_string()))?;
            let b = doc
                .double_categories
                .get(&base)
                .ok_or_else(|| (2, format!("no double category named '{base}'")))?;
            let report = verify_equivalence(b, &corpus_over(&doc, b, cli.max_path_len));
            print_report(&report, cli.json);
            Ok(if report.is_ok() { 0 } else { 1 })
        }
        Command::Verify { file } => {
            let text = read_input(&file).map_err(|e| (2, e))?;
            let doc = parse(&text).map_err(|e| (2, e.to_string()))?;
            let mut report = validate_document(&doc, cli.max_path_len);
            for (name, b) in &doc.double_categories {
                report.absorb(
                    &format!("base {name}"),
                    verify_equivalence(b, &corpus_over(&doc, b, cli.max_path_len)),
                );
            }
            print_report(&report, cli.json);
            Ok(if report.is_ok() { 0 } else { 1 })
        }
        Command::Demo { which } => {
            print!("{}", emit(&demo_document(which, cli.seed)));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            if json {
                let value = serde_json::json!({"ok": false, "error": msg});
                eprintln!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

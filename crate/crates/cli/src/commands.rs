use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hopfclass_core::acceptance::{run_all, run_one, CriterionResult};
use hopfclass_core::graph::{render_graph, RenderFormat};
use hopfclass_core::presentation::presentation_torsion;
use hopfclass_core::string::{random_module, string_module};
use hopfclass_core::witt::big_indecomposable;
use hopfclass_core::{
    classify_basic, decompose, enumerate_graphs, read_module_file, report, write_module_file, Error, GradedFpModule,
    ModuleData, ModuleFile, Prime, StringIndex, WittModule,
};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn guard(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::SizeGuard { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

const MAX_COUNT: usize = 10_000;
const MAX_WINDOW: usize = 64;
const MAX_MAXDIM: usize = 16;
const MAX_STRING_LENGTH: usize = 10;
const MAX_GLUED: usize = 8;

fn load(path: &Path) -> Result<ModuleFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    read_module_file(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// Loads a file and refuses it when its module fails validation, printing
/// the violations.
fn load_valid(path: &Path) -> Result<ModuleData, Failure> {
    let file = load(path)?;
    let violations = file.data.violations();
    if violations.is_empty() {
        Ok(file.data)
    } else {
        for v in &violations {
            println!("{v}");
        }
        Err(Failure::semantic(format!("{} violation(s)", violations.len())))
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(|e| Failure::semantic(e.to_string()))
}

fn write_file(dir: &Path, name: &str, file: &ModuleFile) -> CmdResult {
    fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, write_module_file(file)).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(())
}

pub fn cmd_validate(path: &Path) -> CmdResult {
    let file = load(path)?;
    let violations = file.data.violations();
    if violations.is_empty() {
        println!("valid {}", file.data.kind());
        return Ok(());
    }
    for v in &violations {
        println!("{v}");
    }
    Err(Failure::semantic(format!("{} violation(s)", violations.len())))
}

fn summand_line(shift: usize, index: &StringIndex) -> String {
    format!("(r={shift}, {index})")
}

fn decomposition_text(m: &GradedFpModule, with_report: bool, r: u64) -> Result<String, Failure> {
    let d = decompose(m)?;
    let mut out = String::new();
    let p = m.prime();
    for (shift, index) in d.multiset() {
        let _ = writeln!(out, "{}", summand_line(shift, &index));
        if with_report {
            let degree = p
                .as_u64()
                .checked_pow(shift as u32)
                .and_then(|q| q.checked_mul(r))
                .ok_or_else(|| Failure::guard("bottom degree overflows"))?;
            let pres = presentation_torsion(degree, &index, p)?;
            let _ = writeln!(out, "  algebra: {pres}");
            let _ = writeln!(out, "  reduced: {}", pres.reduced_form());
        }
    }
    if d.window_uncertain {
        out.push_str("window-uncertain: censored summands may continue above the window\n");
    }
    Ok(out)
}

/// `head` followed by the items, space separated, without a trailing space.
fn with_items<T: std::fmt::Display>(mut head: String, items: impl Iterator<Item = T>) -> String {
    for x in items {
        let _ = write!(head, " {x}");
    }
    head
}

fn machine_listing(m: &GradedFpModule) -> Result<String, Failure> {
    let d = decompose(m)?;
    let mut out = String::from("hopfclass-decomposition v1\n");
    let _ = writeln!(out, "p {}", m.prime().as_u64());
    let _ = writeln!(out, "window {}", m.top());
    let _ = writeln!(out, "extends {}", m.extends());
    let _ = writeln!(out, "window-uncertain {}", d.window_uncertain);
    let _ = writeln!(out, "summands {}", d.summands.len());
    for (k, s) in d.summands.iter().enumerate() {
        let head = format!(
            "summand {k} shift {} m {} censored {} I",
            s.shift,
            s.index.m(),
            s.index.is_censored()
        );
        let _ = writeln!(out, "{}", with_items(head, s.index.set().iter()));
    }
    for (deg, c) in d.change_of_basis(m).iter().enumerate() {
        let _ = writeln!(
            out,
            "{}",
            with_items(format!("basis {deg} {}x{}", c.rows(), c.cols()), c.entries().iter())
        );
    }
    Ok(out)
}

pub fn cmd_decompose(path: &Path, with_report: bool, machine: bool, r: u64) -> CmdResult {
    let ModuleData::FpString(m) = load_valid(path)? else {
        return Err(Failure::semantic("decompose needs an fp-string module"));
    };
    if r == 0 {
        return Err(Failure::semantic("--r must be positive"));
    }
    let text = if machine {
        machine_listing(&m)?
    } else {
        decomposition_text(&m, with_report, r)?
    };
    print!("{text}");
    Ok(())
}

fn classify_witt(m: &WittModule, machine: bool, r: u64) -> Result<String, Failure> {
    match classify_basic(m) {
        Ok(c) => {
            // `Σ^shift` moves the bottom generator to degree `r p^shift`.
            let bottom = m
                .prime()
                .as_u64()
                .checked_pow(c.shift as u32)
                .and_then(|q| q.checked_mul(r))
                .ok_or_else(|| Failure::guard("bottom degree overflows"))?;
            let rep = report(bottom, &c.graph, m.prime())?;
            let mut out = format!("basic: shift {} graph {}\n", c.shift, c.graph);
            out.push_str(&if machine { rep.to_machine() } else { rep.to_text() });
            Ok(out)
        }
        Err(Error::NotBasic(why)) => {
            let mut out = format!("not basic: {why}\n");
            let d = decompose(&m.mod_p_reduction())?;
            let _ = writeln!(out, "mod-p reduction has {} summand(s):", d.summands.len());
            for (shift, index) in d.multiset() {
                let _ = writeln!(out, "  {}", summand_line(shift, &index));
            }
            Ok(out)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_classify(path: &Path, machine: bool, r: u64) -> CmdResult {
    if r == 0 {
        return Err(Failure::semantic("--r must be positive"));
    }
    let text = match load_valid(path)? {
        ModuleData::Witt(m) => classify_witt(&m, machine, r)?,
        ModuleData::Dieudonne(d) => {
            let mut out = String::new();
            for (j, piece) in d.p_typical_split() {
                if piece.is_zero() {
                    continue;
                }
                let _ = writeln!(out, "type {j}:");
                out.push_str(&classify_witt(&piece, machine, j as u64)?);
            }
            if out.is_empty() {
                out.push_str("zero module\n");
            }
            out
        }
        _ => return Err(Failure::semantic("classify needs a witt or dieudonne module")),
    };
    print!("{text}");
    Ok(())
}

fn load_graph(path: &Path) -> Result<hopfclass_core::HopfGraph, Failure> {
    match load(path)?.data {
        ModuleData::Graph(g) => Ok(g),
        other => Err(Failure::semantic(format!(
            "expected a graph file, found kind {}",
            other.kind()
        ))),
    }
}

pub fn cmd_graph_validate(path: &Path) -> CmdResult {
    let g = load_graph(path)?;
    let problems = g.validate();
    if problems.is_empty() {
        println!("valid graph {g}");
        return Ok(());
    }
    for v in &problems {
        println!("{v}");
    }
    Err(Failure::semantic(format!("{} violation(s)", problems.len())))
}

pub fn cmd_graph_render(path: &Path, format: RenderFormat) -> CmdResult {
    let g = load_graph(path)?;
    print!("{}", render_graph(&g, format)?);
    Ok(())
}

pub fn cmd_graph_enumerate(m: usize) -> CmdResult {
    let graphs = enumerate_graphs(m)?;
    println!("{}", graphs.len());
    for g in graphs {
        println!("{g}");
    }
    Ok(())
}

pub fn cmd_corpus_random(p: u64, seed: u64, count: usize, window: usize, maxdim: usize, out: &Path) -> CmdResult {
    let p = prime(p)?;
    if count > MAX_COUNT || window > MAX_WINDOW || maxdim > MAX_MAXDIM {
        return Err(Failure::guard(format!(
            "corpus limited to {MAX_COUNT} files, window {MAX_WINDOW}, dimension {MAX_MAXDIM}"
        )));
    }
    for k in 0..count {
        let s = seed.wrapping_add(k as u64);
        let m = random_module(p, window, maxdim, s);
        let file = ModuleFile::with_note(ModuleData::FpString(m), format!("random module, seed {s}"));
        write_file(out, &format!("random-{k:04}.hcm"), &file)?;
    }
    Ok(())
}

pub fn cmd_corpus_strings(p: u64, bound: usize, out: &Path) -> CmdResult {
    let p = prime(p)?;
    if bound > MAX_STRING_LENGTH {
        return Err(Failure::guard(format!("string length limited to {MAX_STRING_LENGTH}")));
    }
    for m in 0..=bound {
        for mask in 0u32..1 << m {
            let set: Vec<usize> = (1..=m).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            let index = StringIndex::finite(m, set.iter().copied())?;
            let module = string_module(&index, 0, p, m)?;
            let name = format!(
                "string-m{m}-I{}.hcm",
                set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("_")
            );
            let file = ModuleFile::with_note(ModuleData::FpString(module), format!("M({index})"));
            write_file(out, &name, &file)?;
        }
    }
    Ok(())
}

pub fn cmd_corpus_big(n: usize, p: u64, out: &Path) -> CmdResult {
    let p = prime(p)?;
    if n > MAX_GLUED {
        return Err(Failure::guard(format!("at most {MAX_GLUED} glued graphs")));
    }
    let m = big_indecomposable(n, p)?;
    let file = ModuleFile::with_note(
        ModuleData::Witt(m),
        format!("{n} extension graphs glued along their socles"),
    );
    write_file(out, &format!("big-indec-N{n}-p{}.hcm", p.as_u64()), &file)
}

pub fn cmd_selftest(only: Option<u32>) -> CmdResult {
    let results: Vec<CriterionResult> = match only {
        Some(id) => vec![run_one(id).ok_or_else(|| Failure::semantic(format!("no criterion {id}")))?],
        None => run_all(),
    };
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria pass", results.len());
    match results.iter().find(|r| !r.passed) {
        None => Ok(()),
        Some(r) => Err(Failure::semantic(format!(
            "criterion {} ({}) failed: {}",
            r.id, r.name, r.detail
        ))),
    }
}

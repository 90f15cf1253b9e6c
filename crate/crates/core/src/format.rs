//! The `hopfclass-module v1` text format.
//!
//! ```text
//! hopfclass-module v1
//! kind witt
//! p 2
//! window 2
//! extends false
//! note optional free text
//! components 0 1
//! components 1 2
//! components 2 1
//! s 0 1x1 2
//! s 1 1x1 1
//! t 0 1x1 1
//! t 1 1x1 2
//! ```
//!
//! `#` starts a comment line. Maps are `<rows>x<cols>` followed by the
//! row-major entries; `s i` maps degree `i` to `i + 1` and `t i` maps
//! degree `i + 1` to `i`. The kinds are:
//!
//! * `fp-string`: `dims d_0 ... d_top`, then `s` and `t` lines over `F_p`;
//! * `witt`: one `components i e_1 ... e_k` line per degree (cyclic factors
//!   `Z/p^{e}`), then `s` and `t` lines;
//! * `dieudonne`: `components n ...` for `n = 1..=window`, then `F n` from
//!   degree `n` to `pn` and `V n` back, for `pn <= window`;
//! * `graph`: `m <n|inf>`, `I ...`, `v ...` and, for infinite graphs,
//!   `tail <kind|unknown>`; no `p`, `window` or `extends` lines.
//!
//! Files written by [`write_module_file`] read back to the same value and
//! the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ArrowKind, HopfGraph, Tail};
use crate::linalg::{FpMatrix, PGroupHom, Prime};
use crate::string::{GradedFpModule, Violation};
use crate::witt::{DieudonneModule, WittModule};

pub const HEADER: &str = "hopfclass-module v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleData {
    FpString(GradedFpModule),
    Witt(WittModule),
    Dieudonne(DieudonneModule),
    Graph(HopfGraph),
}

impl ModuleData {
    pub fn kind(&self) -> &'static str {
        match self {
            ModuleData::FpString(_) => "fp-string",
            ModuleData::Witt(_) => "witt",
            ModuleData::Dieudonne(_) => "dieudonne",
            ModuleData::Graph(_) => "graph",
        }
    }

    /// The module-level validation of the contained value.
    pub fn violations(&self) -> Vec<String> {
        let show = |v: Vec<Violation>| v.iter().map(ToString::to_string).collect();
        match self {
            ModuleData::FpString(m) => show(m.validate()),
            ModuleData::Witt(m) => show(m.validate()),
            ModuleData::Dieudonne(m) => show(m.validate()),
            ModuleData::Graph(g) => g.validate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFile {
    pub data: ModuleData,
    pub note: Option<String>,
}

impl ModuleFile {
    pub fn new(data: ModuleData) -> ModuleFile {
        ModuleFile { data, note: None }
    }

    pub fn with_note(data: ModuleData, note: impl Into<String>) -> ModuleFile {
        ModuleFile {
            data,
            note: Some(note.into()),
        }
    }
}

struct Line {
    number: usize,
    key: String,
    rest: String,
}

impl Line {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            msg: msg.into(),
        }
    }

    fn tokens(&self) -> Vec<&str> {
        self.rest.split_whitespace().collect()
    }

    fn numbers<T: std::str::FromStr>(&self, tokens: &[&str]) -> Result<Vec<T>> {
        tokens
            .iter()
            .map(|t| t.parse::<T>().map_err(|_| self.err(format!("{t:?} is not a number"))))
            .collect()
    }
}

struct Fields {
    lines: Vec<Line>,
    last: usize,
}

impl Fields {
    fn take(&mut self, key: &str) -> Vec<Line> {
        let (hit, keep): (Vec<Line>, Vec<Line>) =
            std::mem::take(&mut self.lines).into_iter().partition(|l| l.key == key);
        self.lines = keep;
        hit
    }

    fn single(&mut self, key: &str) -> Result<Line> {
        let mut hits = self.take(key);
        match hits.len() {
            1 => Ok(hits.pop().expect("one")),
            0 => Err(Error::Parse {
                line: self.last,
                msg: format!("missing `{key}` line"),
            }),
            _ => Err(hits[1].err(format!("duplicate `{key}` line"))),
        }
    }

    fn optional(&mut self, key: &str) -> Result<Option<Line>> {
        let mut hits = self.take(key);
        match hits.len() {
            0 => Ok(None),
            1 => Ok(hits.pop()),
            _ => Err(hits[1].err(format!("duplicate `{key}` line"))),
        }
    }

    fn finish(self) -> Result<()> {
        match self.lines.first() {
            Some(l) => Err(l.err(format!("unexpected `{}` line", l.key))),
            None => Ok(()),
        }
    }

    /// Lines `key <index> ...`, which must cover `range` exactly once each.
    fn indexed(&mut self, key: &str, range: std::ops::Range<usize>) -> Result<Vec<(Line, Vec<String>)>> {
        let mut by_index: BTreeMap<usize, (Line, Vec<String>)> = BTreeMap::new();
        for line in self.take(key) {
            let toks: Vec<String> = line.tokens().iter().map(|s| s.to_string()).collect();
            let Some(first) = toks.first() else {
                return Err(line.err(format!("`{key}` needs an index")));
            };
            let i: usize = first.parse().map_err(|_| line.err(format!("bad index {first:?}")))?;
            if !range.contains(&i) {
                return Err(line.err(format!("`{key}` index {i} outside {}..{}", range.start, range.end)));
            }
            if by_index.contains_key(&i) {
                return Err(line.err(format!("duplicate `{key} {i}` line")));
            }
            by_index.insert(i, (line, toks[1..].to_vec()));
        }
        if let Some(missing) = range.clone().find(|i| !by_index.contains_key(i)) {
            return Err(Error::Parse {
                line: self.last,
                msg: format!("missing `{key} {missing}` line"),
            });
        }
        Ok(by_index.into_values().collect())
    }
}

/// A `<rows>x<cols>` matrix with its entries.
fn parse_matrix(line: &Line, toks: &[String], rows: usize, cols: usize) -> Result<Vec<u64>> {
    let Some(shape) = toks.first() else {
        return Err(line.err("missing matrix shape"));
    };
    let (r, c) = shape
        .split_once('x')
        .and_then(|(r, c)| Some((r.parse::<usize>().ok()?, c.parse::<usize>().ok()?)))
        .ok_or_else(|| line.err(format!("bad matrix shape {shape:?}")))?;
    if (r, c) != (rows, cols) {
        return Err(line.err(format!("matrix is {r}x{c} but the degrees need {rows}x{cols}")));
    }
    let refs: Vec<&str> = toks[1..].iter().map(String::as_str).collect();
    let entries: Vec<u64> = line.numbers(&refs)?;
    if entries.len() != rows * cols {
        return Err(line.err(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
    }
    Ok(entries)
}

fn parse_bool(line: &Line) -> Result<bool> {
    match line.rest.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(line.err(format!("expected true or false, got {other:?}"))),
    }
}

fn parse_usize(line: &Line) -> Result<usize> {
    line.rest
        .trim()
        .parse()
        .map_err(|_| line.err(format!("expected a number, got {:?}", line.rest.trim())))
}

/// Reads a module file.
pub fn read_module_file(text: &str) -> Result<ModuleFile> {
    let mut lines = Vec::new();
    let mut header = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        last = i + 1;
        if header.is_none() {
            if trimmed != HEADER {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected header `{HEADER}`"),
                });
            }
            header = Some(i + 1);
            continue;
        }
        let (key, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        lines.push(Line {
            number: i + 1,
            key: key.to_string(),
            rest: rest.trim().to_string(),
        });
    }
    if header.is_none() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        });
    }
    let mut fields = Fields { lines, last };
    let kind = fields.single("kind")?;
    let note = fields.optional("note")?.map(|l| l.rest);
    let wrap = |e: Error| match e {
        Error::Parse { .. } => e,
        other => kind.err(other.to_string()),
    };
    let data = match kind.rest.as_str() {
        "graph" => read_graph(&mut fields).map_err(wrap)?,
        "fp-string" | "witt" | "dieudonne" => {
            let p_line = fields.single("p")?;
            let p = Prime::new(parse_usize(&p_line)? as u64).map_err(|e| p_line.err(e.to_string()))?;
            let window = parse_usize(&fields.single("window")?)?;
            let extends = parse_bool(&fields.single("extends")?)?;
            match kind.rest.as_str() {
                "fp-string" => read_fp(&mut fields, p, window, extends),
                "witt" => read_witt(&mut fields, p, window, extends),
                _ => read_dieudonne(&mut fields, p, window, extends),
            }
            .map_err(wrap)?
        }
        other => return Err(kind.err(format!("unknown kind {other:?}"))),
    };
    fields.finish()?;
    Ok(ModuleFile { data, note })
}

fn read_fp(fields: &mut Fields, p: Prime, window: usize, extends: bool) -> Result<ModuleData> {
    let dims_line = fields.single("dims")?;
    let dims: Vec<usize> = dims_line.numbers(&dims_line.tokens())?;
    if dims.len() != window + 1 {
        return Err(dims_line.err(format!("{} dims for window {window}", dims.len())));
    }
    let mut s = Vec::new();
    for (i, (line, toks)) in fields.indexed("s", 0..window)?.into_iter().enumerate() {
        let e = parse_matrix(&line, &toks, dims[i + 1], dims[i])?;
        s.push(FpMatrix::from_flat(p, dims[i + 1], dims[i], &e)?);
    }
    let mut t = Vec::new();
    for (i, (line, toks)) in fields.indexed("t", 0..window)?.into_iter().enumerate() {
        let e = parse_matrix(&line, &toks, dims[i], dims[i + 1])?;
        t.push(FpMatrix::from_flat(p, dims[i], dims[i + 1], &e)?);
    }
    Ok(ModuleData::FpString(GradedFpModule::new(p, dims, s, t, extends)?))
}

fn read_components(fields: &mut Fields, range: std::ops::Range<usize>) -> Result<Vec<Vec<u32>>> {
    fields
        .indexed("components", range)?
        .into_iter()
        .map(|(line, toks)| {
            let refs: Vec<&str> = toks.iter().map(String::as_str).collect();
            let orders: Vec<u32> = line.numbers(&refs)?;
            if orders.iter().any(|&e| e == 0 || e > 40) {
                return Err(line.err("cyclic exponents must lie in 1..=40"));
            }
            Ok(orders)
        })
        .collect()
}

fn read_witt(fields: &mut Fields, p: Prime, window: usize, extends: bool) -> Result<ModuleData> {
    let orders = read_components(fields, 0..window + 1)?;
    let mut s = Vec::new();
    for (i, (line, toks)) in fields.indexed("s", 0..window)?.into_iter().enumerate() {
        s.push(parse_matrix(&line, &toks, orders[i + 1].len(), orders[i].len())?);
    }
    let mut t = Vec::new();
    for (i, (line, toks)) in fields.indexed("t", 0..window)?.into_iter().enumerate() {
        t.push(parse_matrix(&line, &toks, orders[i].len(), orders[i + 1].len())?);
    }
    Ok(ModuleData::Witt(WittModule::from_entries(p, orders, s, t, extends)?))
}

fn read_dieudonne(fields: &mut Fields, p: Prime, window: usize, extends: bool) -> Result<ModuleData> {
    let orders = read_components(fields, 1..window + 1)?;
    let pu = p.get() as usize;
    let pairs = window / pu;
    let mut f = Vec::new();
    for (i, (line, toks)) in fields.indexed("F", 1..pairs + 1)?.into_iter().enumerate() {
        let n = i + 1;
        f.push(parse_matrix(
            &line,
            &toks,
            orders[pu * n - 1].len(),
            orders[n - 1].len(),
        )?);
    }
    let mut v = Vec::new();
    for (i, (line, toks)) in fields.indexed("V", 1..pairs + 1)?.into_iter().enumerate() {
        let n = i + 1;
        v.push(parse_matrix(
            &line,
            &toks,
            orders[n - 1].len(),
            orders[pu * n - 1].len(),
        )?);
    }
    Ok(ModuleData::Dieudonne(DieudonneModule::from_entries(
        p, orders, f, v, extends,
    )?))
}

fn read_graph(fields: &mut Fields) -> Result<ModuleData> {
    let m_line = fields.single("m")?;
    let infinite = m_line.rest.trim() == "inf";
    let set_line = fields.single("I")?;
    let set: Vec<usize> = set_line.numbers(&set_line.tokens())?;
    let v_line = fields.single("v")?;
    let heights: Vec<i64> = v_line.numbers(&v_line.tokens())?;
    let tail_line = fields.optional("tail")?;
    let tail = match (&tail_line, infinite) {
        (Some(l), true) => Some(match l.rest.trim() {
            "unknown" => Tail::Unknown,
            name => {
                Tail::Repeat(ArrowKind::from_name(name).ok_or_else(|| l.err(format!("unknown arrow kind {name:?}")))?)
            }
        }),
        (None, true) => return Err(m_line.err("an infinite graph needs a `tail` line")),
        (Some(l), false) => return Err(l.err("a finite graph has no tail")),
        (None, false) => None,
    };
    if !infinite {
        let m = parse_usize(&m_line)?;
        if heights.len() != m + 1 {
            return Err(v_line.err(format!("{} heights for m = {m}", heights.len())));
        }
    }
    let g = HopfGraph::new(set.into_iter().collect(), heights, tail).map_err(|e| set_line.err(e.to_string()))?;
    Ok(ModuleData::Graph(g))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `key rest`, without a trailing space when `rest` is empty.
fn push_line(out: &mut String, key: &str, rest: &str) {
    out.push_str(key);
    if !rest.is_empty() {
        out.push(' ');
        out.push_str(rest);
    }
    out.push('\n');
}

fn matrix_text(rows: usize, cols: usize, entries: impl IntoIterator<Item = u64>) -> String {
    let body = join(entries);
    if body.is_empty() {
        format!("{rows}x{cols}")
    } else {
        format!("{rows}x{cols} {body}")
    }
}

fn hom_text(h: &PGroupHom) -> String {
    matrix_text(h.dst().len(), h.src().len(), h.entries().iter().copied())
}

fn fp_text(m: &FpMatrix) -> String {
    matrix_text(m.rows(), m.cols(), m.entries().iter().map(|&x| x as u64))
}

/// Writes the canonical form.
pub fn write_module_file(file: &ModuleFile) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "kind {}", file.data.kind());
    let head = |out: &mut String, p: Prime, window: usize, extends: bool| {
        let _ = writeln!(out, "p {}", p.as_u64());
        let _ = writeln!(out, "window {window}");
        let _ = writeln!(out, "extends {extends}");
    };
    let note = |out: &mut String| {
        if let Some(n) = &file.note {
            push_line(out, "note", n.trim());
        }
    };
    match &file.data {
        ModuleData::FpString(m) => {
            head(&mut out, m.prime(), m.top(), m.extends());
            note(&mut out);
            push_line(&mut out, "dims", &join(m.dims().iter()));
            for (i, s) in m.s_maps().iter().enumerate() {
                let _ = writeln!(out, "s {i} {}", fp_text(s));
            }
            for (i, t) in m.t_maps().iter().enumerate() {
                let _ = writeln!(out, "t {i} {}", fp_text(t));
            }
        }
        ModuleData::Witt(m) => {
            head(&mut out, m.prime(), m.top(), m.extends());
            note(&mut out);
            for i in 0..=m.top() {
                push_line(
                    &mut out,
                    "components",
                    &join(std::iter::once(i as u32).chain(m.orders(i).iter().copied())),
                );
            }
            for (i, s) in m.s_maps().iter().enumerate() {
                let _ = writeln!(out, "s {i} {}", hom_text(s));
            }
            for (i, t) in m.t_maps().iter().enumerate() {
                let _ = writeln!(out, "t {i} {}", hom_text(t));
            }
        }
        ModuleData::Dieudonne(d) => {
            head(&mut out, d.prime(), d.top(), d.extends());
            note(&mut out);
            for n in 1..=d.top() {
                push_line(
                    &mut out,
                    "components",
                    &join(std::iter::once(n as u32).chain(d.orders(n).iter().copied())),
                );
            }
            let pairs = d.top() / d.prime().get() as usize;
            for n in 1..=pairs {
                let _ = writeln!(out, "F {n} {}", hom_text(d.frobenius(n).expect("in window")));
            }
            for n in 1..=pairs {
                let _ = writeln!(out, "V {n} {}", hom_text(d.verschiebung(n).expect("in window")));
            }
        }
        ModuleData::Graph(g) => {
            note(&mut out);
            match g.m() {
                Some(m) => {
                    let _ = writeln!(out, "m {m}");
                }
                None => out.push_str("m inf\n"),
            }
            push_line(&mut out, "I", &join(g.set().iter()));
            push_line(&mut out, "v", &join(g.heights().iter()));
            match g.tail() {
                None => {}
                Some(Tail::Unknown) => out.push_str("tail unknown\n"),
                Some(Tail::Repeat(k)) => {
                    let _ = writeln!(out, "tail {}", k.name());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::string::{random_module, string_module, StringIndex};
    use crate::witt::{big_indecomposable, module_from_graph, random_dieudonne};
    use proptest::prelude::*;

    fn roundtrip(file: &ModuleFile) {
        let text = write_module_file(file);
        let back = read_module_file(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(&back, file);
        assert_eq!(write_module_file(&back), text);
    }

    #[test]
    fn witt_example_from_the_module_docs() {
        let text = "hopfclass-module v1\n# a comment\n\nkind witt\np 2\nwindow 2\nextends false\ncomponents 0 1\ncomponents 1 2\ncomponents 2 1\ns 0 1x1 2\ns 1 1x1 1\nt 0 1x1 1\nt 1 1x1 2\n";
        let f = read_module_file(text).unwrap();
        let ModuleData::Witt(m) = &f.data else { panic!() };
        assert!(m.validate().is_empty());
        let g = HopfGraph::finite([2], vec![0, 1, 0]).unwrap();
        assert_eq!(m, &module_from_graph(&g, Prime::new(2).unwrap(), 0, 2).unwrap());
    }

    #[test]
    fn all_kinds_roundtrip() {
        let p = Prime::new(3).unwrap();
        roundtrip(&ModuleFile::new(ModuleData::FpString(
            string_module(&StringIndex::finite(3, [1, 3]).unwrap(), 1, p, 5).unwrap(),
        )));
        roundtrip(&ModuleFile::with_note(
            ModuleData::FpString(random_module(p, 4, 3, 9)),
            "seed 9",
        ));
        roundtrip(&ModuleFile::new(ModuleData::Witt(
            big_indecomposable(2, Prime::new(2).unwrap()).unwrap(),
        )));
        roundtrip(&ModuleFile::new(ModuleData::Witt(WittModule::zero(p, 3, true))));
        roundtrip(&ModuleFile::new(ModuleData::Dieudonne(random_dieudonne(p, 10, 2, 4))));
        roundtrip(&ModuleFile::new(ModuleData::Graph(HopfGraph::lambda(3))));
        roundtrip(&ModuleFile::new(ModuleData::Graph(
            HopfGraph::finite([], vec![0]).unwrap(),
        )));
        roundtrip(&ModuleFile::new(ModuleData::Graph(HopfGraph::from_kinds(
            &[ArrowKind::LeftDown],
            Some(Tail::Unknown),
        ))));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let bad_header = read_module_file("hopfclass-module v2\n");
        assert!(matches!(bad_header, Err(Error::Parse { line: 1, .. })));
        let text = "hopfclass-module v1\nkind witt\np 2\nwindow 1\nextends false\ncomponents 0 1\ncomponents 1 1\ns 0 2x1 1 1\nt 0 1x1 1\n";
        assert!(matches!(read_module_file(text), Err(Error::Parse { line: 8, .. })));
        let missing =
            "hopfclass-module v1\nkind witt\np 2\nwindow 1\nextends false\ncomponents 0 1\ns 0 0x1\nt 0 1x0\n";
        assert!(read_module_file(missing).is_err());
        let not_prime = "hopfclass-module v1\nkind witt\np 4\nwindow 0\nextends false\ncomponents 0\n";
        assert!(matches!(read_module_file(not_prime), Err(Error::Parse { line: 3, .. })));
        let extra = "hopfclass-module v1\nkind graph\nm 0\nI\nv 0\nwindow 3\n";
        assert!(matches!(read_module_file(extra), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn invalid_modules_still_parse() {
        let text = "hopfclass-module v1\nkind witt\np 2\nwindow 1\nextends false\ncomponents 0 1\ncomponents 1 1\ns 0 1x1 1\nt 0 1x1 1\n";
        let f = read_module_file(text).unwrap();
        assert!(!f.data.violations().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn random_modules_roundtrip(seed in any::<u64>(), pick in 0usize..3) {
            let p = Prime::new([2, 3, 5][pick]).unwrap();
            let file = ModuleFile::new(ModuleData::FpString(random_module(p, 5, 3, seed)));
            let text = write_module_file(&file);
            prop_assert_eq!(&read_module_file(&text).unwrap(), &file);
            let d = ModuleFile::new(ModuleData::Dieudonne(random_dieudonne(p, 9, 2, seed)));
            let text = write_module_file(&d);
            prop_assert_eq!(read_module_file(&text).unwrap(), d);
        }
    }
}

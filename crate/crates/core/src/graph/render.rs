use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{graph_arrows, Arrow, ArrowKind, ArrowList, HopfGraph, Tail};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Tikz,
}

/// Renders a valid graph. Output is byte-deterministic.
pub fn render_graph(g: &HopfGraph, format: RenderFormat) -> Result<String> {
    let list = graph_arrows(g)?;
    Ok(match format {
        RenderFormat::Tikz => tikz(g, &list),
        RenderFormat::Ascii => ascii(g, &list),
    })
}

/// The lattice point where the dotted continuation ends.
fn tail_end(g: &HopfGraph) -> Option<((i64, i64), (i64, i64), Option<ArrowKind>)> {
    let tail = g.tail()?;
    let last = (g.steps() as i64, *g.heights().last().expect("nonempty"));
    let kind = match tail {
        Tail::Repeat(k) => Some(k),
        Tail::Unknown => None,
    };
    let dy = kind.map_or(0, ArrowKind::height_change);
    Some((last, (last.0 + 1, last.1 + dy), kind))
}

fn tikz(g: &HopfGraph, list: &ArrowList) -> String {
    let tail = tail_end(g);
    let width = tail.map_or(g.steps() as i64, |(_, end, _)| end.0) + 1;
    let height = tail.map_or(g.max_height(), |(_, end, _)| end.1.max(g.max_height())) + 1;
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[scale=0.5]\n");
    let _ = writeln!(out, "\\draw[gray,very thin] (0,0) grid ({width},{height});");
    if list.arrows.is_empty() {
        out.push_str("\\fill (0,0) circle (2pt);\n");
    }
    for a in &list.arrows {
        let (l, r) = (a.left(), a.right());
        let style = if a.from == l { "-stealth" } else { "stealth-" };
        let _ = writeln!(out, "\\draw[{style}] ({},{}) -- ({},{});", l.0, l.1, r.0, r.1);
    }
    if let Some((start, end, kind)) = tail {
        let style = match kind {
            None => "dotted",
            Some(k) if k.points_right() => "dotted,-stealth",
            Some(_) => "dotted,stealth-",
        };
        let _ = writeln!(
            out,
            "\\draw[{style}] ({},{}) -- ({},{});",
            start.0, start.1, end.0, end.1
        );
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Reads back the arrow commands written by the tikz renderer.
pub fn parse_tikz_arrows(text: &str) -> Result<ArrowList> {
    let mut arrows = Vec::new();
    let mut tail = None;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        let Some(rest) = line.strip_prefix("\\draw[") else {
            continue;
        };
        let Some((style, coords)) = rest.split_once(']') else {
            return Err(Error::Parse {
                line: n + 1,
                msg: "unterminated style".into(),
            });
        };
        if style == "gray,very thin" {
            continue;
        }
        let (a, b) = parse_segment(coords).ok_or_else(|| Error::Parse {
            line: n + 1,
            msg: format!("cannot read the segment in {line:?}"),
        })?;
        match style {
            "-stealth" => arrows.push(Arrow { from: a, to: b }),
            "stealth-" => arrows.push(Arrow { from: b, to: a }),
            "dotted" => tail = Some(Tail::Unknown),
            "dotted,-stealth" | "dotted,stealth-" => {
                let arrow = if style.ends_with("-stealth") {
                    Arrow { from: a, to: b }
                } else {
                    Arrow { from: b, to: a }
                };
                let kind = arrow.kind().ok_or_else(|| Error::Parse {
                    line: n + 1,
                    msg: "continuation has a forbidden shape".into(),
                })?;
                tail = Some(Tail::Repeat(kind));
            }
            other => {
                return Err(Error::Parse {
                    line: n + 1,
                    msg: format!("unknown draw style {other:?}"),
                })
            }
        }
    }
    Ok(ArrowList { arrows, tail })
}

fn parse_segment(s: &str) -> Option<((i64, i64), (i64, i64))> {
    let s = s.trim().strip_suffix(';')?;
    let (a, b) = s.split_once("--")?;
    Some((parse_point(a)?, parse_point(b)?))
}

fn parse_point(s: &str) -> Option<(i64, i64)> {
    let s = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = s.split_once(',')?;
    Some((x.trim().parse().ok()?, y.trim().parse().ok()?))
}

/// Points sit in every fourth column and every other row; horizontal arrows
/// fill the three cells between two points and diagonal ones the row between
/// two heights.
fn ascii(g: &HopfGraph, list: &ArrowList) -> String {
    let tail = tail_end(g);
    let top = g.max_height();
    let rows = (2 * top + 1) as usize;
    let cols = 4 * g.steps() + if tail.is_some() { 5 } else { 1 };
    let mut canvas = vec![vec![' '; cols]; rows];
    let row_of = |h: i64| (2 * (top - h)) as usize;
    let mut put = |r: usize, c: usize, s: &str| {
        for (k, ch) in s.chars().enumerate() {
            canvas[r][c + k] = ch;
        }
    };
    for i in 0..=g.steps() {
        put(row_of(g.height(i)), 4 * i, "o");
    }
    for a in &list.arrows {
        let (l, r) = (a.left(), a.right());
        let c = 4 * l.0 as usize + 1;
        match a.kind().expect("valid graph") {
            ArrowKind::RightHorizontal => put(row_of(l.1), c, "-->"),
            ArrowKind::LeftHorizontal => put(row_of(l.1), c, "<--"),
            ArrowKind::RightDown => put(row_of(l.1) + 1, c + 1, "\\>"),
            ArrowKind::LeftDown => put(row_of(r.1) + 1, c, "</"),
        }
    }
    if let Some((start, _, _)) = tail {
        put(row_of(start.1), 4 * start.0 as usize + 2, "...");
    }
    let mut out = String::new();
    for line in canvas {
        let s: String = line.into_iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    out
}

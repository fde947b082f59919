//! Plain-text diagram files.
//!
//! ```text
//! # comment
//! generators: p q r
//! edges:
//! p q 3
//! q r inf
//! ```
//!
//! `inf` marks an unrelated pair and is normalized to the absence of an edge.

use crate::diagram::{CoxeterDiagram, DiagramBuilder};
use crate::error::{Error, Result};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..pos],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn located(line: usize, column: usize, err: Error) -> Error {
    syntax(line, column, err.to_string())
}

pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram> {
    let mut builder = DiagramBuilder::new();
    let mut seen_generators = false;
    let mut in_edges = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();

        if let Some(rest) = trimmed.strip_prefix("generators:") {
            if seen_generators {
                return Err(syntax(line_no, indent + 1, "repeated `generators:` line"));
            }
            seen_generators = true;
            let offset = indent + "generators:".len();
            for tok in tokens(rest) {
                builder
                    .generator(tok.text)
                    .map_err(|e| located(line_no, offset + tok.column, e))?;
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("edges:") {
            if !seen_generators {
                return Err(syntax(line_no, indent + 1, "`edges:` before `generators:`"));
            }
            if in_edges {
                return Err(syntax(line_no, indent + 1, "repeated `edges:` line"));
            }
            if let Some(tok) = tokens(rest).first() {
                let column = indent + "edges:".len() + tok.column;
                return Err(syntax(line_no, column, "unexpected text after `edges:`"));
            }
            in_edges = true;
            continue;
        }
        if !in_edges {
            return Err(syntax(
                line_no,
                indent + 1,
                "expected `generators:` or `edges:`",
            ));
        }

        let toks = tokens(line);
        if toks.len() != 3 {
            let column = toks.get(3).map_or(line.len() + 1, |t| t.column);
            return Err(syntax(line_no, column, "expected `<s> <t> <m>`"));
        }
        let (s, t, m) = (&toks[0], &toks[1], &toks[2]);
        for tok in [s, t] {
            if !builder.has_generator(tok.text) {
                return Err(located(
                    line_no,
                    tok.column,
                    Error::UnknownGenerator(tok.text.to_string()),
                ));
            }
        }
        let label = if m.text == "inf" {
            None
        } else {
            let value: u32 = m
                .text
                .parse()
                .map_err(|_| syntax(line_no, m.column, format!("invalid label `{}`", m.text)))?;
            Some(value)
        };
        builder.label(s.text, t.text, label).map_err(|e| {
            let column = match e {
                Error::InvalidLabel { .. } => m.column,
                _ => s.column,
            };
            located(line_no, column, e)
        })?;
    }

    if !seen_generators {
        return Err(syntax(1, 1, "missing `generators:` line"));
    }
    Ok(builder.build())
}

pub fn write_diagram(d: &CoxeterDiagram) -> String {
    let mut out = String::from("generators:");
    for name in d.generator_names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push_str("\nedges:\n");
    for (i, j, m) in d.edges() {
        out.push_str(&format!("{} {} {}\n", d.name(i), d.name(j), m));
    }
    out
}

//! The line-oriented diagram file format.
//!
//! ```text
//! # comment
//! trisection genus=2 params=(1,0,0)
//! alpha: @1(1,0) ; @2(1,0)
//! beta: @1(0,1) ; @2(1,0)
//! gamma: @1(1,1) ; x2 y2 X2
//! ```
//!
//! `heegaard` files carry `alpha`/`beta`; `heegaard-kirby` files add
//! `link: <curve> framing=(surface|INT) ; …` and `target m=M`.

use std::fmt;

use crate::diagram::{Curve, CutSystem, HeegaardDiagram, SlopeTemplate, System, TrisectionDiagram, TrisectionParams};
use crate::error::{Error, Result};
use crate::kirby::hk::{FramedComponent, Framing, HeegaardKirbyDiagram};
use crate::kirby::linking::LinkingMatrix;
use crate::surface_core::word::SurfaceWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramFile {
    Heegaard(HeegaardDiagram),
    Trisection(TrisectionDiagram),
    HeegaardKirby(HeegaardKirbyDiagram),
}

impl DiagramFile {
    pub fn kind(&self) -> &'static str {
        match self {
            DiagramFile::Heegaard(_) => "heegaard",
            DiagramFile::Trisection(_) => "trisection",
            DiagramFile::HeegaardKirby(_) => "heegaard-kirby",
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            DiagramFile::Heegaard(d) => d.genus(),
            DiagramFile::Trisection(t) => t.genus(),
            DiagramFile::HeegaardKirby(h) => h.genus(),
        }
    }
}

impl fmt::Display for DiagramFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramFile::Heegaard(d) => {
                writeln!(f, "heegaard genus={}", d.genus())?;
                writeln!(f, "alpha: {}", d.alpha)?;
                writeln!(f, "beta: {}", d.beta)
            }
            DiagramFile::Trisection(t) => write!(f, "{t}"),
            DiagramFile::HeegaardKirby(h) => write!(f, "{h}"),
        }
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A line with comments stripped, remembering where it came from.
struct Line<'a> {
    number: usize,
    text: &'a str,
    /// Byte offset of `text` within the original line.
    offset: usize,
}

impl Line<'_> {
    fn err_at(&self, sub: &str, message: impl Into<String>) -> Error {
        let start = sub.as_ptr() as usize - self.text.as_ptr() as usize;
        err(self.number, self.offset + start + 1, message)
    }
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            if trimmed.is_empty() {
                return None;
            }
            let offset = body.len() - body.trim_start().len();
            Some(Line {
                number: i + 1,
                text: trimmed,
                offset,
            })
        })
        .collect()
}

/// `key=value` fields after the header keyword.
fn header_field<'a>(line: &Line<'a>, key: &str) -> Option<&'a str> {
    line.text
        .split_whitespace()
        .skip(1)
        .find_map(|tok| tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

fn parse_usize(line: &Line<'_>, s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| {
        line.err_at(
            s,
            format!("{what} must be a non-negative integer, found `{}`", s.trim()),
        )
    })
}

fn parse_params(line: &Line<'_>, s: &str, genus: usize) -> Result<TrisectionParams> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| line.err_at(s, "params must look like (k1,k2,k3)"))?;
    let ks = inner
        .split(',')
        .map(|k| parse_usize(line, k, "parameter"))
        .collect::<Result<Vec<_>>>()?;
    let [k1, k2, k3] = ks[..] else {
        return Err(line.err_at(s, "params need exactly three entries"));
    };
    TrisectionParams::new(genus, k1, k2, k3).map_err(|e| line.err_at(s, e.to_string()))
}

/// `@h(p,q)`, a word such as `x1 y2 X1`, or `1` for the empty word.
pub fn parse_curve(genus: usize, text: &str) -> Result<Curve> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('@') {
        let bad = || Error::InvalidTemplate(format!("`{text}` is not of the form @h(p,q)"));
        let (h, tail) = rest.split_once('(').ok_or_else(bad)?;
        let inner = tail.strip_suffix(')').ok_or_else(bad)?;
        let (p, q) = inner.split_once(',').ok_or_else(bad)?;
        let num = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        let h = h.trim().parse::<usize>().map_err(|_| bad())?;
        return Curve::from_template(genus, SlopeTemplate::new(h, num(p)?, num(q)?)?);
    }
    let word = if text == "1" { "" } else { text };
    Ok(Curve::from_word(SurfaceWord::parse(genus, word)?))
}

fn parse_curves(line: &Line<'_>, body: &str, genus: usize) -> Result<Vec<Curve>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(';')
        .map(|part| parse_curve(genus, part).map_err(|e| line.err_at(part.trim_start(), e.to_string())))
        .collect()
}

fn parse_link(line: &Line<'_>, body: &str, genus: usize) -> Result<Vec<FramedComponent>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(';')
        .map(|part| {
            let part = part.trim_start();
            let (curve_text, framing) = match part.find("framing=") {
                Some(i) => {
                    let value = part[i + "framing=".len()..].trim();
                    let framing = match value {
                        "surface" => Framing::Surface,
                        n => Framing::Integer(n.parse().map_err(|_| {
                            line.err_at(part, format!("framing must be `surface` or an integer, found `{n}`"))
                        })?),
                    };
                    (&part[..i], framing)
                }
                None => (part, Framing::Surface),
            };
            let curve = parse_curve(genus, curve_text).map_err(|e| line.err_at(part, e.to_string()))?;
            Ok(FramedComponent { curve, framing })
        })
        .collect()
}

/// Parses any of the three diagram kinds.
pub fn parse_diagram(text: &str) -> Result<DiagramFile> {
    let lines = content_lines(text);
    let Some(header) = lines.first() else {
        return Err(err(1, 1, "empty file"));
    };
    let kind = header.text.split_whitespace().next().unwrap_or("");
    if !matches!(kind, "heegaard" | "trisection" | "heegaard-kirby") {
        return Err(header.err_at(
            header.text,
            format!("expected `heegaard`, `trisection` or `heegaard-kirby`, found `{kind}`"),
        ));
    }
    let genus_text = header_field(header, "genus").ok_or_else(|| header.err_at(header.text, "missing genus=G"))?;
    let genus = parse_usize(header, genus_text, "genus")?;
    let params = match header_field(header, "params") {
        Some(s) if kind == "trisection" => Some(parse_params(header, s, genus)?),
        Some(s) => return Err(header.err_at(s, "only trisection files declare params")),
        None => None,
    };

    let mut systems: [Option<(Vec<Curve>, usize)>; 3] = [None, None, None];
    let mut link: Option<Vec<FramedComponent>> = None;
    let mut target: Option<usize> = None;
    for line in &lines[1..] {
        if let Some(rest) = line.text.strip_prefix("target") {
            let value = rest
                .trim()
                .strip_prefix("m=")
                .ok_or_else(|| line.err_at(line.text, "expected `target m=M`"))?;
            target = Some(parse_usize(line, value, "target")?);
            continue;
        }
        let (key, body) = line
            .text
            .split_once(':')
            .ok_or_else(|| line.err_at(line.text, "expected `name: curves`"))?;
        let key = key.trim();
        if key == "link" {
            link = Some(parse_link(line, body, genus)?);
            continue;
        }
        let system: System = key
            .parse()
            .map_err(|_| line.err_at(line.text, format!("unknown section `{key}`")))?;
        let slot = &mut systems[system as usize];
        if slot.is_some() {
            return Err(line.err_at(line.text, format!("{system} given twice")));
        }
        *slot = Some((parse_curves(line, body, genus)?, line.number));
    }

    let mut cut = |s: System| -> Result<CutSystem> {
        let (curves, number) = systems[s as usize]
            .take()
            .ok_or_else(|| err(header.number, 1, format!("missing {s} line")))?;
        CutSystem::new(genus, curves).map_err(|e| err(number, 1, format!("{s}: {e}")))
    };
    let at_header = |e: Error| err(header.number, 1, e.to_string());
    match kind {
        "trisection" => {
            let (alpha, beta, gamma) = (cut(System::Alpha)?, cut(System::Beta)?, cut(System::Gamma)?);
            if link.is_some() || target.is_some() {
                return Err(err(header.number, 1, "link data in a trisection file"));
            }
            Ok(DiagramFile::Trisection(
                TrisectionDiagram::new(alpha, beta, gamma, params).map_err(at_header)?,
            ))
        }
        "heegaard" => {
            let (alpha, beta) = (cut(System::Alpha)?, cut(System::Beta)?);
            if systems[System::Gamma as usize].is_some() || link.is_some() || target.is_some() {
                return Err(err(header.number, 1, "heegaard files have only alpha and beta"));
            }
            Ok(DiagramFile::Heegaard(
                HeegaardDiagram::new(alpha, beta).map_err(at_header)?,
            ))
        }
        _ => {
            let (alpha, beta) = (cut(System::Alpha)?, cut(System::Beta)?);
            let link = link.ok_or_else(|| err(header.number, 1, "missing link line"))?;
            let target = target.ok_or_else(|| err(header.number, 1, "missing `target m=M`"))?;
            let background = HeegaardDiagram::new(alpha, beta).map_err(at_header)?;
            Ok(DiagramFile::HeegaardKirby(
                HeegaardKirbyDiagram::new(background, link, target).map_err(at_header)?,
            ))
        }
    }
}

/// Whitespace-separated integer rows; `#` comments.
pub fn parse_matrix(text: &str) -> Result<LinkingMatrix> {
    let lines = content_lines(text);
    let rows = lines
        .iter()
        .map(|line| {
            line.text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| line.err_at(t, format!("`{t}` is not an integer")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LinkingMatrix::from_rows(&rows).map_err(|e| err(lines.first().map_or(1, |l| l.number), 1, e.to_string()))
}

/// A balanced presentation written as `x y X ; y x`, comments allowed.
pub fn parse_presentation(text: &str) -> Result<crate::gprc_ac::BalancedPresentation> {
    let body: Vec<&str> = content_lines(text).iter().map(|l| l.text).collect();
    crate::gprc_ac::BalancedPresentation::parse(&body.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalog::CatalogEntry;

    #[test]
    fn catalog_round_trips() {
        for e in CatalogEntry::ALL {
            let text = DiagramFile::Trisection(e.diagram()).to_string();
            let parsed = parse_diagram(&text).unwrap();
            assert_eq!(parsed, DiagramFile::Trisection(e.diagram()));
            assert_eq!(parsed.to_string(), text);
        }
    }

    #[test]
    fn s1xs3_from_text() {
        let text = "# equal systems\ntrisection genus=1\nalpha: @1(1,0)\nbeta: @1(1,0)\ngamma: @1(1,0)\n";
        let DiagramFile::Trisection(t) = parse_diagram(text).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(CatalogEntry::classify(&t), Some(CatalogEntry::S1xS3));
    }

    #[test]
    fn errors_carry_positions() {
        let text = "trisection genus=1\nalpha: @1(1,0)\nbeta: @1(2,4)\ngamma: @1(1,0)\n";
        let Err(Error::Parse { line, column, message }) = parse_diagram(text) else {
            panic!("expected a parse error")
        };
        assert_eq!((line, column), (3, 7));
        assert!(message.contains("not primitive"));

        let text = "trisection genus=2\nalpha: @1(1,0) ; @2(1,0)\nbeta: @1(1,0) ; @1(1,0)\ngamma: @1(1,0) ; @2(1,0)\n";
        let Err(Error::Parse { line, .. }) = parse_diagram(text) else {
            panic!("expected a cut-system error")
        };
        assert_eq!(line, 3);
        assert!(matches!(
            parse_diagram("torus genus=1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_diagram("trisection genus=1\nalpha: @3(1,0)\nbeta: @1(0,1)\ngamma: @1(1,1)"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn words_and_links() {
        let text = "heegaard-kirby genus=1\nalpha: @1(0,1)\nbeta: @1(1,0)\nlink: y1 framing=surface\ntarget m=1\n";
        let DiagramFile::HeegaardKirby(h) = parse_diagram(text).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(h.components(), 1);
        assert!(h.link()[0].curve.template().is_none());
        let printed = DiagramFile::HeegaardKirby(h).to_string();
        assert_eq!(printed, text);
    }

    #[test]
    fn matrices_and_presentations() {
        let m = parse_matrix("# hopf\n0 1\n1 0\n").unwrap();
        assert_eq!(m.components(), 2);
        assert!(parse_matrix("0 1\n2 0").is_err());
        let p = parse_presentation("# trivial\nx ; y").unwrap();
        assert_eq!(p.n(), 2);
    }
}

use crate::scalar::Real;

use super::ast::{AngleExpr, CircuitAst, ElementAst, ElementKind, Ident, ReadoutAst, Sign, Span};
use super::error::{ParseError, ParseErrorKind};

type PResult<T> = std::result::Result<T, ParseError>;

const KEYWORDS: [&str; 8] = ["modes", "opa", "bs", "phase", "loss", "mod", "homodyne", "combine"];

/// Parses a circuit description. Accepts LF or CRLF line endings.
pub fn parse<T: Real>(text: &str) -> PResult<CircuitAst<T>> {
    let mut modes: Option<Vec<Ident>> = None;
    let mut elements = Vec::new();
    let mut readouts: Vec<ReadoutAst<T>> = Vec::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let mut line = Line::new(idx + 1, raw);
        if line.at_end() {
            continue;
        }
        let kw = line.ident(&KEYWORDS)?;
        let line_span = Span::new(line.no, kw.span.column, line.chars.len() + 1 - kw.span.column);
        match kw.name.as_str() {
            "modes" => {
                if modes.is_some() {
                    return Err(ParseError::new(
                        ParseErrorKind::Duplicate,
                        kw.span,
                        "modes already declared",
                    ));
                }
                let mut names: Vec<Ident> = vec![line.ident(&["mode name"])?];
                while !line.at_end() {
                    line.expect_char(',', &[",", "end of line"])?;
                    let id = line.ident(&["mode name"])?;
                    if names.iter().any(|n| n.name == id.name) {
                        return Err(ParseError::new(
                            ParseErrorKind::Duplicate,
                            id.span,
                            format!("duplicate mode '{}'", id.name),
                        ));
                    }
                    names.push(id);
                }
                modes = Some(names);
            }
            "opa" | "bs" | "phase" | "loss" | "mod" => {
                let declared = require_modes(&modes, kw.span)?;
                let two_mode = matches!(kw.name.as_str(), "opa" | "bs");
                let (name, refs) = line.named_refs(if two_mode { 2 } else { 1 })?;
                for r in &refs {
                    check_mode(declared, r)?;
                }
                if let Some(n) = &name {
                    if elements
                        .iter()
                        .any(|e: &ElementAst<T>| e.name.as_ref().is_some_and(|m| m.name == n.name))
                    {
                        return Err(ParseError::new(
                            ParseErrorKind::Duplicate,
                            n.span,
                            format!("duplicate element name '{}'", n.name),
                        ));
                    }
                }
                let mut refs = refs.into_iter();
                let mut next = || refs.next().expect("arity checked");
                let kind = match kw.name.as_str() {
                    "opa" | "bs" => {
                        let (a, b) = (next(), next());
                        if a.name == b.name {
                            return Err(ParseError::new(
                                ParseErrorKind::Duplicate,
                                b.span,
                                "two-mode element needs distinct modes",
                            ));
                        }
                        if kw.name == "opa" {
                            let g = line.keyed_number("g")?;
                            check_range(&g, "g", "[0,inf)", |v| v >= 0.0)?;
                            ElementKind::Opa { signal: a, idler: b, g: T::lit(g.0) }
                        } else {
                            let t = line.keyed_number("t")?;
                            check_range(&t, "t", "[0,1]", |v| (0.0..=1.0).contains(&v))?;
                            ElementKind::Bs { a, b, t: T::lit(t.0) }
                        }
                    }
                    "phase" => {
                        line.key("phi")?;
                        ElementKind::Phase { mode: next(), phi: line.angle()? }
                    }
                    "loss" => {
                        let l = line.keyed_number("l")?;
                        check_range(&l, "l", "[0,1]", |v| (0.0..=1.0).contains(&v))?;
                        ElementKind::Loss { mode: next(), l: T::lit(l.0) }
                    }
                    _ => {
                        let eps = line.keyed_number("eps")?;
                        let delta = line.keyed_number("delta")?;
                        ElementKind::Mod { mode: next(), eps: T::lit(eps.0), delta: T::lit(delta.0) }
                    }
                };
                line.end()?;
                elements.push(ElementAst { name, kind, span: line_span });
            }
            "homodyne" => {
                let declared = require_modes(&modes, kw.span)?;
                let name = line.ident(&["readout name"])?;
                check_readout_name(&readouts, &name)?;
                let mode = line.ident(&["mode name"])?;
                check_mode(declared, &mode)?;
                line.key("angle")?;
                let angle = line.angle()?;
                let weight = if line.at_end() { None } else { Some(T::lit(line.keyed_number("weight")?.0)) };
                line.end()?;
                readouts.push(ReadoutAst::Homodyne { name, mode, angle, weight, span: line_span });
            }
            "combine" => {
                require_modes(&modes, kw.span)?;
                let name = line.ident(&["readout name"])?;
                check_readout_name(&readouts, &name)?;
                line.expect_char('=', &["="])?;
                let mut terms = vec![(Sign::Plus, line.ident(&["homodyne name"])?)];
                while !line.at_end() {
                    let sign = match line.peek() {
                        Some('+') => Sign::Plus,
                        Some('-') => Sign::Minus,
                        _ => return Err(line.unexpected(&["+", "-", "end of line"])),
                    };
                    line.pos += 1;
                    terms.push((sign, line.ident(&["homodyne name"])?));
                }
                for (_, t) in &terms {
                    match readouts.iter().find(|r| r.name().name == t.name) {
                        Some(ReadoutAst::Homodyne { .. }) => {}
                        Some(ReadoutAst::Combine { .. }) => {
                            return Err(ParseError::new(
                                ParseErrorKind::UnknownHomodyne,
                                t.span,
                                format!("'{}' is a combine, not a homodyne", t.name),
                            ))
                        }
                        None => {
                            return Err(ParseError::new(
                                ParseErrorKind::UnknownHomodyne,
                                t.span,
                                format!("unknown homodyne '{}'", t.name),
                            ))
                        }
                    }
                }
                readouts.push(ReadoutAst::Combine { name, terms, span: line_span });
            }
            _ => {
                return Err(ParseError {
                    expected: KEYWORDS.iter().map(|s| (*s).to_owned()).collect(),
                    ..ParseError::new(
                        ParseErrorKind::UnexpectedToken,
                        kw.span,
                        format!("unknown statement '{}'", kw.name),
                    )
                })
            }
        }
    }

    let modes = modes.ok_or_else(|| ParseError {
        expected: vec!["modes".into()],
        ..ParseError::new(ParseErrorKind::MissingModes, Span::new(1, 1, 1), "missing modes declaration")
    })?;
    Ok(CircuitAst { modes, elements, readouts })
}

fn require_modes(modes: &Option<Vec<Ident>>, at: Span) -> PResult<&[Ident]> {
    modes.as_deref().ok_or_else(|| ParseError {
        expected: vec!["modes".into()],
        ..ParseError::new(ParseErrorKind::MissingModes, at, "modes must be declared first")
    })
}

fn check_mode(declared: &[Ident], id: &Ident) -> PResult<()> {
    if declared.iter().any(|m| m.name == id.name) {
        Ok(())
    } else {
        Err(ParseError {
            expected: declared.iter().map(|m| m.name.clone()).collect(),
            ..ParseError::new(ParseErrorKind::UnknownMode, id.span, format!("undeclared mode '{}'", id.name))
        })
    }
}

fn check_readout_name<T>(readouts: &[ReadoutAst<T>], id: &Ident) -> PResult<()> {
    if readouts.iter().any(|r| r.name().name == id.name) {
        return Err(ParseError::new(
            ParseErrorKind::Duplicate,
            id.span,
            format!("duplicate readout '{}'", id.name),
        ));
    }
    Ok(())
}

fn check_range(v: &(f64, Span), key: &str, range: &str, ok: impl Fn(f64) -> bool) -> PResult<()> {
    if ok(v.0) {
        Ok(())
    } else {
        Err(ParseError::out_of_range(v.1, key, range, v.0))
    }
}

struct Line {
    no: usize,
    chars: Vec<char>,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Line {
    fn new(no: usize, text: &str) -> Self {
        Self { no, chars: text.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied().filter(|&c| c != '#')
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn span(&self, start: usize) -> Span {
        Span::new(self.no, start + 1, (self.pos - start).max(1))
    }

    /// Error at the next whitespace-delimited chunk.
    fn unexpected(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.chars.len() && !self.chars[end].is_whitespace() && self.chars[end] != '#' {
            end += 1;
        }
        let found: String = self.chars[start..end].iter().collect();
        ParseError::expected(Span::new(self.no, start + 1, (end - start).max(1)), expected, &found)
    }

    fn scan_ident(&self, from: usize) -> usize {
        let mut end = from;
        if end < self.chars.len() && is_ident_start(self.chars[end]) {
            end += 1;
            while end < self.chars.len() && is_ident_char(self.chars[end]) {
                end += 1;
            }
        }
        end
    }

    fn ident(&mut self, expected: &[&str]) -> PResult<Ident> {
        self.skip_ws();
        let start = self.pos;
        let end = self.scan_ident(start);
        if end == start {
            return Err(self.unexpected(expected));
        }
        self.pos = end;
        Ok(Ident { name: self.chars[start..end].iter().collect(), span: self.span(start) })
    }

    /// Next token is an identifier that is not the left side of `key=`.
    fn next_is_plain_ident(&mut self) -> bool {
        self.skip_ws();
        let end = self.scan_ident(self.pos);
        if end == self.pos {
            return false;
        }
        let mut k = end;
        while k < self.chars.len() && self.chars[k].is_whitespace() {
            k += 1;
        }
        self.chars.get(k) != Some(&'=')
    }

    /// Optional element name followed by `arity` mode references.
    fn named_refs(&mut self, arity: usize) -> PResult<(Option<Ident>, Vec<Ident>)> {
        let mut ids = Vec::new();
        while ids.len() <= arity && self.next_is_plain_ident() {
            ids.push(self.ident(&["mode name"])?);
        }
        if ids.len() < arity {
            return Err(self.unexpected(&["mode name"]));
        }
        let name = if ids.len() > arity { Some(ids.remove(0)) } else { None };
        Ok((name, ids))
    }

    fn expect_char(&mut self, c: char, expected: &[&str]) -> PResult<Span> {
        if self.peek() == Some(c) {
            let start = self.pos;
            self.pos += 1;
            Ok(self.span(start))
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn key(&mut self, key: &str) -> PResult<()> {
        let want = format!("{key}=");
        self.skip_ws();
        let start = self.pos;
        let end = self.scan_ident(start);
        let word: String = self.chars[start..end].iter().collect();
        if word != key {
            return Err(self.unexpected(&[&want]));
        }
        self.pos = end;
        if self.peek() != Some('=') {
            self.pos = start;
            return Err(self.unexpected(&[&want]));
        }
        self.pos += 1;
        Ok(())
    }

    fn number(&mut self) -> PResult<(f64, Span)> {
        self.skip_ws();
        let start = self.pos;
        let c = &self.chars;
        let mut k = start;
        if k < c.len() && (c[k] == '+' || c[k] == '-') {
            k += 1;
        }
        let mut digits = 0;
        while k < c.len() && c[k].is_ascii_digit() {
            k += 1;
            digits += 1;
        }
        if k < c.len() && c[k] == '.' {
            k += 1;
            while k < c.len() && c[k].is_ascii_digit() {
                k += 1;
                digits += 1;
            }
        }
        if digits == 0 {
            return Err(self.unexpected(&["number"]));
        }
        if k < c.len() && (c[k] == 'e' || c[k] == 'E') {
            let mut j = k + 1;
            if j < c.len() && (c[j] == '+' || c[j] == '-') {
                j += 1;
            }
            let exp_start = j;
            while j < c.len() && c[j].is_ascii_digit() {
                j += 1;
            }
            if j > exp_start {
                k = j;
            }
        }
        if k < c.len() && is_ident_char(c[k]) {
            return Err(self.unexpected(&["number"]));
        }
        let text: String = c[start..k].iter().collect();
        self.pos = k;
        let span = self.span(start);
        let v: f64 = text.parse().map_err(|_| ParseError::expected(span, &["number"], &text))?;
        if !v.is_finite() {
            return Err(ParseError::out_of_range(span, "number", "finite range", v));
        }
        Ok((v, span))
    }

    fn keyed_number(&mut self, key: &str) -> PResult<(f64, Span)> {
        self.key(key)?;
        self.number()
    }

    fn angle<T: Real>(&mut self) -> PResult<AngleExpr<T>> {
        self.skip_ws();
        let start = self.pos;
        let end = self.scan_ident(start);
        if end > start {
            let word: String = self.chars[start..end].iter().collect();
            if word != "pi" {
                return Err(self.unexpected(&["number", "pi"]));
            }
            self.pos = end;
            if self.chars.get(self.pos) == Some(&'/') {
                self.pos += 1;
                let n = self.number()?;
                check_range(&n, "pi divisor", "nonzero values", |v| v != 0.0)?;
                return Ok(AngleExpr::PiDiv(T::lit(n.0)));
            }
            return Ok(AngleExpr::Pi);
        }
        let (n, _) = self.number()?;
        if self.chars.get(self.pos) == Some(&'*') {
            self.pos += 1;
            let s = self.pos;
            let e = self.scan_ident(s);
            if self.chars[s..e].iter().collect::<String>() != "pi" {
                return Err(self.unexpected(&["pi"]));
            }
            self.pos = e;
            return Ok(AngleExpr::MulPi(T::lit(n)));
        }
        Ok(AngleExpr::Num(T::lit(n)))
    }

    fn end(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected(&["end of line"]))
        }
    }
}

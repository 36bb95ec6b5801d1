use std::fmt::{Debug, Write};

use super::ast::{AngleExpr, CircuitAst, ElementKind, ReadoutAst, Sign};

/// Shortest round-trip decimal, without a trailing `.0`.
pub fn format_number<T: Debug>(x: T) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_owned(),
        None => s,
    }
}

fn format_angle<T: Debug + Copy>(a: &AngleExpr<T>) -> String {
    match a {
        AngleExpr::Num(x) => format_number(*x),
        AngleExpr::Pi => "pi".into(),
        AngleExpr::MulPi(n) => format!("{}*pi", format_number(*n)),
        AngleExpr::PiDiv(n) => format!("pi/{}", format_number(*n)),
    }
}

/// Canonical text: one statement per line, LF endings, no comments.
pub fn render<T: Debug + Copy>(ast: &CircuitAst<T>) -> String {
    let mut out = String::new();
    let names: Vec<&str> = ast.modes.iter().map(|m| m.name.as_str()).collect();
    let _ = writeln!(out, "modes {}", names.join(","));
    for e in &ast.elements {
        out.push_str(e.kind.keyword());
        if let Some(n) = &e.name {
            out.push(' ');
            out.push_str(&n.name);
        }
        let _ = match &e.kind {
            ElementKind::Opa { signal, idler, g } => {
                writeln!(out, " {} {} g={}", signal.name, idler.name, format_number(*g))
            }
            ElementKind::Bs { a, b, t } => {
                writeln!(out, " {} {} t={}", a.name, b.name, format_number(*t))
            }
            ElementKind::Phase { mode, phi } => {
                writeln!(out, " {} phi={}", mode.name, format_angle(phi))
            }
            ElementKind::Loss { mode, l } => writeln!(out, " {} l={}", mode.name, format_number(*l)),
            ElementKind::Mod { mode, eps, delta } => {
                writeln!(out, " {} eps={} delta={}", mode.name, format_number(*eps), format_number(*delta))
            }
        };
    }
    for r in &ast.readouts {
        let _ = match r {
            ReadoutAst::Homodyne { name, mode, angle, weight, .. } => {
                let w = weight.map(|w| format!(" weight={}", format_number(w))).unwrap_or_default();
                writeln!(out, "homodyne {} {} angle={}{w}", name.name, mode.name, format_angle(angle))
            }
            ReadoutAst::Combine { name, terms, .. } => {
                let mut rhs = String::new();
                for (k, (sign, id)) in terms.iter().enumerate() {
                    match (k, sign) {
                        (0, Sign::Plus) => {}
                        (0, Sign::Minus) => rhs.push('-'),
                        (_, Sign::Plus) => rhs.push_str(" + "),
                        (_, Sign::Minus) => rhs.push_str(" - "),
                    }
                    rhs.push_str(&id.name);
                }
                writeln!(out, "combine {} = {rhs}", name.name)
            }
        };
    }
    out
}

use std::fmt;

use crate::scalar::Real;

/// Source location, 1-based. Spans never affect AST equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub len: usize,
}

impl Span {
    pub fn new(line: usize, column: usize, len: usize) -> Self {
        Self { line, column, len }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), span: Span::default() }
    }
}

/// Angle literal, kept in the form it was written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleExpr<T> {
    Num(T),
    Pi,
    /// `n*pi`
    MulPi(T),
    /// `pi/n`
    PiDiv(T),
}

impl<T: Real> AngleExpr<T> {
    pub fn value(&self) -> T {
        match *self {
            AngleExpr::Num(x) => x,
            AngleExpr::Pi => T::PI(),
            AngleExpr::MulPi(n) => n * T::PI(),
            AngleExpr::PiDiv(n) => T::PI() / n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementKind<T> {
    Opa { signal: Ident, idler: Ident, g: T },
    Bs { a: Ident, b: Ident, t: T },
    Phase { mode: Ident, phi: AngleExpr<T> },
    Loss { mode: Ident, l: T },
    Mod { mode: Ident, eps: T, delta: T },
}

impl<T> ElementKind<T> {
    pub fn keyword(&self) -> &'static str {
        match self {
            ElementKind::Opa { .. } => "opa",
            ElementKind::Bs { .. } => "bs",
            ElementKind::Phase { .. } => "phase",
            ElementKind::Loss { .. } => "loss",
            ElementKind::Mod { .. } => "mod",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementAst<T> {
    pub name: Option<Ident>,
    pub kind: ElementKind<T>,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReadoutAst<T> {
    Homodyne { name: Ident, mode: Ident, angle: AngleExpr<T>, weight: Option<T>, span: Span },
    Combine { name: Ident, terms: Vec<(Sign, Ident)>, span: Span },
}

impl<T> ReadoutAst<T> {
    pub fn name(&self) -> &Ident {
        match self {
            ReadoutAst::Homodyne { name, .. } | ReadoutAst::Combine { name, .. } => name,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            ReadoutAst::Homodyne { span, .. } | ReadoutAst::Combine { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitAst<T> {
    pub modes: Vec<Ident>,
    pub elements: Vec<ElementAst<T>>,
    pub readouts: Vec<ReadoutAst<T>>,
}

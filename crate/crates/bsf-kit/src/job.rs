//! Job files: a line-oriented declaration language ending in one `run` command.
//!
//! ```text
//! ring R = QQ[x, y] grevlex;
//! ideal I = (x*y, y^2) in R;
//! run saturate I by x;
//! ```

use std::fmt;

use bsf_core::syntax::{lex, Tok, Token};

/// Diagnostic codes, stable across releases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Code {
    Syntax,
    Undeclared,
    Arity,
    Kind,
    Invalid,
    UnknownCommand,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "E001",
            Code::Undeclared => "E002",
            Code::Arity => "E003",
            Code::Kind => "E004",
            Code::Invalid => "E005",
            Code::UnknownCommand => "E006",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Code::Syntax => "syntax error",
            Code::Undeclared => "undeclared name",
            Code::Arity => "arity mismatch",
            Code::Kind => "wrong kind of name",
            Code::Invalid => "invalid declaration",
            Code::UnknownCommand => "unknown command",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} {}: {}", self.line, self.col, self.code.as_str(), self.code.label(), self.message)
    }
}

/// Byte offset to 1-based line and column (in characters).
pub fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let pos = pos.min(text.len());
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

/// Identifier with its source offset; compares by name only.
#[derive(Clone, Debug, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: usize,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Ident {
    pub fn new(name: &str) -> Ident {
        Ident { name: name.to_string(), pos: 0 }
    }
}

/// Polynomial expression kept as normalized text; typed when the job is resolved.
#[derive(Clone, Debug, Eq)]
pub struct Expr {
    pub text: String,
    pub pos: usize,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Lex,
    Grevlex,
    Block(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Ring { name: Ident, vars: Vec<Ident>, order: OrderSpec },
    Quotient { name: Ident, base: Ident, gens: Vec<Expr> },
    Ideal { name: Ident, gens: Vec<Expr>, ring: Ident },
    /// Products `e_i * e_j` given as linear expressions in `e1..en`; omitted ones are zero.
    Algebra { name: Ident, dim: usize, products: Vec<(usize, usize, Expr)> },
    /// Ring homomorphism `source -> target`: images of the source variables.
    Map { name: Ident, source: Ident, target: Ident, images: Vec<Expr> },
}

impl Decl {
    pub fn name(&self) -> &Ident {
        match self {
            Decl::Ring { name, .. }
            | Decl::Quotient { name, .. }
            | Decl::Ideal { name, .. }
            | Decl::Algebra { name, .. }
            | Decl::Map { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Name(Ident),
    Names(Vec<Ident>),
    Keyword(String),
    Expr(Expr),
    Vars(Vec<Ident>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: Ident,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobFile {
    pub decls: Vec<Decl>,
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Name,
    Names,
    Kw(&'static str),
    Expr,
    Vars,
}

/// Argument shapes of every command.
pub const COMMANDS: &[(&str, &[Slot])] = {
    use Slot::*;
    &[
        ("expand", &[Expr, Kw("in"), Name]),
        ("normal_form", &[Expr, Kw("mod"), Name]),
        ("groebner", &[Name]),
        ("member", &[Expr, Kw("in"), Name]),
        ("equal", &[Name, Name]),
        ("multiply", &[Name, Name]),
        ("eliminate", &[Name, Kw("keep"), Vars]),
        ("quotient", &[Name, Kw("by"), Expr]),
        ("saturate", &[Name, Kw("by"), Expr]),
        ("intersect", &[Names]),
        ("kernel", &[Name]),
        ("coefficient_ideal", &[Name, Kw("fibre"), Vars]),
        ("regular", &[Expr, Kw("in"), Name]),
        ("principal", &[Name]),
        ("product", &[Name, Name]),
        ("fibre_product", &[Name, Name]),
        ("image", &[Name]),
        ("image_extension", &[Name, Kw("adjoin"), Vars]),
        ("constant", &[Name, Kw("over"), Name]),
        ("blowup_principal", &[Name, Kw("at"), Expr]),
        ("blowup", &[Name]),
        ("product_form", &[Name, Kw("adjoin"), Vars, Kw("center"), Expr]),
        ("product_form_over", &[Name, Kw("over"), Name, Kw("center"), Expr]),
        ("restrict", &[Name, Kw("over"), Name]),
        ("restrict_map", &[Name, Kw("over"), Name]),
        ("adjunction", &[Name, Kw("over"), Name, Kw("test"), Name]),
        ("iso_locus", &[Name, Kw("fibre"), Vars]),
        ("constfy", &[Name, Kw("fibre"), Vars]),
        ("strata", &[Name, Kw("fibre"), Vars]),
        ("bsf", &[Name, Kw("over"), Name, Kw("center"), Name]),
        ("bsf_structure", &[Names, Kw("fibre"), Vars]),
        ("small_resolution", &[]),
    ]
};

pub fn command_shape(name: &str) -> Option<&'static [Slot]> {
    COMMANDS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn diag(&self, code: Code, at: usize, msg: impl Into<String>) -> Diagnostic {
        let (line, col) = line_col(self.text, at);
        Diagnostic { code, line, col, message: msg.into() }
    }

    /// Offset of the current token, or just past the previous one at end of input.
    fn here(&self) -> usize {
        match self.toks.get(self.pos) {
            Some(t) => t.start,
            None => self.toks.last().map(|t| t.end).unwrap_or(0),
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> Diagnostic {
        self.diag(Code::Syntax, self.here(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_sym(&self) -> Option<&'static str> {
        match self.peek() {
            Some(Tok::Sym(s)) => Some(s),
            _ => None,
        }
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn describe(&self) -> String {
        match self.toks.get(self.pos) {
            None => "end of input".into(),
            Some(t) => format!("`{}`", &self.text[t.start..t.end]),
        }
    }

    fn sym(&mut self, s: &str) -> PResult<()> {
        if self.peek_sym() == Some(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{s}`, found {}", self.describe())))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Ident(s), start, .. }) => {
                let id = Ident { name: s.clone(), pos: *start };
                self.pos += 1;
                Ok(id)
            }
            _ => Err(self.syntax(format!("expected a name, found {}", self.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if self.peek_ident() == Some(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{kw}`, found {}", self.describe())))
        }
    }

    fn int(&mut self) -> PResult<usize> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Int(n), .. }) => {
                let v = usize::try_from(n.clone()).map_err(|_| self.syntax("integer out of range"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.syntax(format!("expected an integer, found {}", self.describe()))),
        }
    }

    /// Scan one expression, returning normalized text.
    fn expr(&mut self) -> PResult<Expr> {
        let start = self.here();
        let mut out = String::new();
        self.sum(&mut out)?;
        Ok(Expr { text: out, pos: start })
    }

    fn sum(&mut self, out: &mut String) -> PResult<()> {
        if let Some(s @ ("-" | "+")) = self.peek_sym() {
            self.pos += 1;
            out.push_str(s);
        }
        self.product(out)?;
        while let Some(s @ ("-" | "+")) = self.peek_sym() {
            self.pos += 1;
            out.push_str(&format!(" {s} "));
            self.product(out)?;
        }
        Ok(())
    }

    fn product(&mut self, out: &mut String) -> PResult<()> {
        self.power(out)?;
        while let Some(s @ ("*" | "/")) = self.peek_sym() {
            self.pos += 1;
            out.push_str(s);
            self.power(out)?;
        }
        Ok(())
    }

    fn power(&mut self, out: &mut String) -> PResult<()> {
        self.atom(out)?;
        if self.peek_sym() == Some("^") {
            self.pos += 1;
            let n = self.int()?;
            out.push_str(&format!("^{n}"));
        }
        Ok(())
    }

    fn atom(&mut self, out: &mut String) -> PResult<()> {
        match self.toks.get(self.pos).map(|t| t.tok.clone()) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                out.push_str(&n.to_string());
                Ok(())
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                out.push_str(&s);
                Ok(())
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                out.push('(');
                self.sum(out)?;
                self.sym(")")?;
                out.push(')');
                Ok(())
            }
            _ => Err(self.syntax(format!("expected an expression, found {}", self.describe()))),
        }
    }

    /// `( e1, e2, ... )`, possibly empty.
    fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        self.sym("(")?;
        let mut out = Vec::new();
        if self.peek_sym() == Some(")") {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.peek_sym() {
                Some(",") => self.pos += 1,
                Some(")") => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.syntax(format!("expected `,` or `)`, found {}", self.describe()))),
            }
        }
    }

    fn ident_list(&mut self, open: &str, close: &str) -> PResult<Vec<Ident>> {
        self.sym(open)?;
        let mut out = Vec::new();
        if self.peek_sym() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            match self.peek_sym() {
                Some(",") => self.pos += 1,
                Some(s) if s == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.syntax(format!("expected `,` or `{close}`, found {}", self.describe()))),
            }
        }
    }

    fn ring_decl(&mut self) -> PResult<Decl> {
        let name = self.ident()?;
        self.sym("=")?;
        let head = self.ident()?;
        if head.name == "QQ" && self.peek_sym() == Some("[") {
            let vars = self.ident_list("[", "]")?;
            let order = match self.peek_ident() {
                Some("lex") => {
                    self.pos += 1;
                    OrderSpec::Lex
                }
                Some("grevlex") => {
                    self.pos += 1;
                    OrderSpec::Grevlex
                }
                Some("block") => {
                    self.pos += 1;
                    self.sym("(")?;
                    let k = self.int()?;
                    self.sym(")")?;
                    OrderSpec::Block(k)
                }
                _ => OrderSpec::Grevlex,
            };
            self.sym(";")?;
            return Ok(Decl::Ring { name, vars, order });
        }
        self.sym("/")?;
        let gens = self.expr_list()?;
        self.sym(";")?;
        Ok(Decl::Quotient { name, base: head, gens })
    }

    fn algebra_decl(&mut self) -> PResult<Decl> {
        let name = self.ident()?;
        self.keyword("dim")?;
        let dim = self.int()?;
        self.sym(";")?;
        let mut products = Vec::new();
        // Product lines `ei*ej = expr;` follow directly.
        while let Some(first) = self.peek_ident().and_then(basis_index) {
            if self.toks.get(self.pos + 1).map(|t| &t.tok) != Some(&Tok::Sym("*")) {
                break;
            }
            self.pos += 2;
            let at = self.here();
            let second = self.ident()?;
            let j = basis_index(&second.name)
                .ok_or_else(|| self.diag(Code::Syntax, at, format!("expected a basis element, found `{}`", second.name)))?;
            self.sym("=")?;
            let e = self.expr()?;
            self.sym(";")?;
            products.push((first, j, e));
        }
        Ok(Decl::Algebra { name, dim, products })
    }

    fn map_decl(&mut self) -> PResult<Decl> {
        let name = self.ident()?;
        self.sym(":")?;
        let source = self.ident()?;
        self.sym("->")?;
        let target = self.ident()?;
        self.sym("=")?;
        let images = self.expr_list()?;
        self.sym(";")?;
        Ok(Decl::Map { name, source, target, images })
    }

    fn command(&mut self) -> PResult<Command> {
        let name = self.ident()?;
        let shape = command_shape(&name.name)
            .ok_or_else(|| self.diag(Code::UnknownCommand, name.pos, format!("no command `{}`", name.name)))?;
        let mut args = Vec::new();
        for (k, slot) in shape.iter().enumerate() {
            if self.peek_sym() == Some(";") {
                return Err(self.diag(
                    Code::Arity,
                    self.here(),
                    format!("`{}` expects {} argument parts, got {k}", name.name, shape.len()),
                ));
            }
            args.push(match slot {
                Slot::Name => Arg::Name(self.ident()?),
                Slot::Names => {
                    let mut v = vec![self.ident()?];
                    while self.peek_sym() == Some(",") {
                        self.pos += 1;
                        v.push(self.ident()?);
                    }
                    Arg::Names(v)
                }
                Slot::Kw(kw) => {
                    self.keyword(kw)?;
                    Arg::Keyword(kw.to_string())
                }
                Slot::Expr => Arg::Expr(self.expr()?),
                Slot::Vars => Arg::Vars(self.ident_list("(", ")")?),
            });
        }
        if self.peek_sym() != Some(";") && self.pos < self.toks.len() {
            return Err(self.diag(
                Code::Arity,
                self.here(),
                format!("`{}` takes {} argument parts; unexpected {}", name.name, shape.len(), self.describe()),
            ));
        }
        self.sym(";")?;
        Ok(Command { name, args })
    }
}

fn basis_index(name: &str) -> Option<usize> {
    name.strip_prefix('e').and_then(|d| d.parse::<usize>().ok()).filter(|&i| i >= 1)
}

/// Parse the surface syntax. Names and arities inside declarations are checked when the
/// job is resolved.
pub fn parse_syntax(text: &str) -> PResult<JobFile> {
    let toks = lex(text).map_err(|(pos, msg)| {
        let (line, col) = line_col(text, pos);
        Diagnostic { code: Code::Syntax, line, col, message: msg }
    })?;
    let mut p = Parser { text, toks, pos: 0 };
    let mut decls = Vec::new();
    let mut command = None;
    while p.pos < p.toks.len() {
        let kw = p.ident()?;
        if command.is_some() {
            return Err(p.diag(Code::Syntax, kw.pos, "nothing may follow the `run` command"));
        }
        match kw.name.as_str() {
            "ring" => decls.push(p.ring_decl()?),
            "ideal" => {
                let name = p.ident()?;
                p.sym("=")?;
                let gens = p.expr_list()?;
                p.keyword("in")?;
                let ring = p.ident()?;
                p.sym(";")?;
                decls.push(Decl::Ideal { name, gens, ring });
            }
            "algebra" => decls.push(p.algebra_decl()?),
            "map" => decls.push(p.map_decl()?),
            "run" => command = Some(p.command()?),
            other => {
                return Err(p.diag(
                    Code::Syntax,
                    kw.pos,
                    format!("expected `ring`, `ideal`, `algebra`, `map` or `run`, found `{other}`"),
                ))
            }
        }
    }
    let command = command.ok_or_else(|| p.syntax("missing `run` command"))?;
    Ok(JobFile { decls, command })
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring { name, vars, order } => {
                let ord = match order {
                    OrderSpec::Lex => "lex".to_string(),
                    OrderSpec::Grevlex => "grevlex".to_string(),
                    OrderSpec::Block(k) => format!("block({k})"),
                };
                write!(f, "ring {name} = QQ[{}] {ord};", join(vars))
            }
            Decl::Quotient { name, base, gens } => write!(f, "ring {name} = {base} / ({});", join(gens)),
            Decl::Ideal { name, gens, ring } => write!(f, "ideal {name} = ({}) in {ring};", join(gens)),
            Decl::Algebra { name, dim, products } => {
                write!(f, "algebra {name} dim {dim};")?;
                for (i, j, e) in products {
                    write!(f, "\ne{i}*e{j} = {e};")?;
                }
                Ok(())
            }
            Decl::Map { name, source, target, images } => {
                write!(f, "map {name} : {source} -> {target} = ({});", join(images))
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "run {}", self.name)?;
        for a in &self.args {
            match a {
                Arg::Name(n) => write!(f, " {n}")?,
                Arg::Names(ns) => write!(f, " {}", join(ns))?,
                Arg::Keyword(k) => write!(f, " {k}")?,
                Arg::Expr(e) => write!(f, " {e}")?,
                Arg::Vars(vs) => write!(f, " ({})", join(vs))?,
            }
        }
        f.write_str(";")
    }
}

impl fmt::Display for JobFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        writeln!(f, "{}", self.command)
    }
}

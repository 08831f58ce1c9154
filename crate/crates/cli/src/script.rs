//! Script grammar and parser.
//!
//! Scripts are line-oriented: one statement per line, `#` comments, and a
//! statement continues onto following lines while its brackets are open.

use std::fmt;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone)]
pub enum Expr {
    Name(String),
    Int(i128),
    Call(String, Vec<Expr>),
    Eq(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone)]
pub enum Stmt {
    Field(FieldChoice),
    /// `space P = PP(2,2) vars a,b,c,x,y,z` (vars optional)
    Space { name: String, dims: Vec<usize>, vars: Vec<String> },
    /// `variety X = V(P; f, g)`, polynomial sources kept verbatim
    Variety { name: String, space: String, polys: Vec<String> },
    /// `map f : P -> PP(2) = [t, u, v]`
    Map { name: String, source: String, dims: Vec<usize>, forms: Vec<String> },
    /// `mmap Phi = (f, g)`
    MMap { name: String, parts: Vec<String> },
    /// `let x = e` or `let (a, b) = graph(f)`
    Let { names: Vec<String>, expr: Expr },
    Print(Vec<Expr>),
    Describe(Expr),
    Assert(Expr, Expr),
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub line: usize,
    pub stmt: Stmt,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Int(n) => write!(f, "{}", n),
            Expr::Call(name, args) => {
                let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{}({})", name, args.join(", "))
            }
            Expr::Eq(a, b) => write!(f, "{} == {}", a, b),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Field(FieldChoice::Rationals) => write!(f, "field QQ"),
            Stmt::Field(FieldChoice::Prime(p)) => write!(f, "field GF {}", p),
            Stmt::Space { name, dims, vars } => {
                write!(f, "space {} = PP({})", name, join_usize(dims))?;
                if !vars.is_empty() {
                    write!(f, " vars {}", vars.join(","))?;
                }
                Ok(())
            }
            Stmt::Variety { name, space, polys } => {
                write!(f, "variety {} = V({}; {})", name, space, polys.join(", "))
            }
            Stmt::Map { name, source, dims, forms } => {
                write!(f, "map {} : {} -> PP({}) = [{}]", name, source, join_usize(dims), forms.join(", "))
            }
            Stmt::MMap { name, parts } => write!(f, "mmap {} = ({})", name, parts.join(", ")),
            Stmt::Let { names, expr } => {
                if names.len() == 1 {
                    write!(f, "let {} = {}", names[0], expr)
                } else {
                    write!(f, "let ({}) = {}", names.join(", "), expr)
                }
            }
            Stmt::Print(exprs) => {
                let parts: Vec<String> = exprs.iter().map(|e| e.to_string()).collect();
                write!(f, "print {}", parts.join(", "))
            }
            Stmt::Describe(e) => write!(f, "describe {}", e),
            Stmt::Assert(a, b) => write!(f, "assert {} == {}", a, b),
        }
    }
}

fn join_usize(ns: &[usize]) -> String {
    ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical one-statement-per-line form; `parse_script` of the result
/// reproduces the same statements.
pub fn render_script(statements: &[Statement]) -> String {
    statements.iter().map(|s| format!("{}\n", s.stmt)).collect()
}

/// Splits the source into logical statements and parses each one.
pub fn parse_script(src: &str) -> Result<Vec<Statement>, ParseError> {
    let mut out = Vec::new();
    for (line, text) in logical_statements(src) {
        let mut cur = Cursor::new(&text, line);
        let stmt = cur.statement()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("trailing text after statement"));
        }
        out.push(Statement { line, stmt });
    }
    Ok(out)
}

/// Comment-stripped statements with their starting line; newlines inside an
/// open bracket are preserved so the cursor can keep reporting positions.
fn logical_statements(src: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut pending: Option<(usize, String, i32)> = None;
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let depth_change: i32 = line
            .chars()
            .map(|c| match c {
                '(' | '[' => 1,
                ')' | ']' => -1,
                _ => 0,
            })
            .sum();
        match pending.take() {
            None => {
                if line.trim().is_empty() {
                    continue;
                }
                pending = Some((i + 1, line.to_string(), depth_change));
            }
            Some((start, mut text, depth)) => {
                text.push('\n');
                text.push_str(line);
                pending = Some((start, text, depth + depth_change));
            }
        }
        if let Some((start, text, depth)) = pending.take() {
            if depth > 0 {
                pending = Some((start, text, depth));
            } else {
                out.push((start, text));
            }
        }
    }
    if let Some((start, text, _)) = pending {
        out.push((start, text));
    }
    out
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, col: 1 }
    }

    fn error(&self, msg: &str) -> ParseError {
        ParseError { line: self.line, col: self.col, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn advance(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.advance();
        }
    }

    fn eat(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c)))
        }
    }

    fn try_eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.advance();
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let got = self.word()?;
        if got == kw {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}', found '{}'", kw, got)))
        }
    }

    fn integer(&mut self) -> Result<i128, ParseError> {
        self.skip_ws();
        let neg = self.try_eat('-');
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.advance();
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: i128 = digits.parse().map_err(|_| self.error("integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let head = self.word()?;
        match head.as_str() {
            "field" => self.field_stmt(),
            "space" => self.space_stmt(),
            "variety" => self.variety_stmt(),
            "map" => self.map_stmt(),
            "mmap" => self.mmap_stmt(),
            "let" => self.let_stmt(),
            "print" => Ok(Stmt::Print(self.expr_list()?)),
            "describe" => Ok(Stmt::Describe(self.expr()?)),
            "assert" => self.assert_stmt(),
            other => Err(self.error(&format!("unknown statement '{}'", other))),
        }
    }

    fn field_stmt(&mut self) -> Result<Stmt, ParseError> {
        let kind = self.word()?;
        match kind.as_str() {
            "QQ" => Ok(Stmt::Field(FieldChoice::Rationals)),
            "GF" => {
                let p = self.integer()?;
                if p <= 0 {
                    return Err(self.error("field characteristic must be positive"));
                }
                Ok(Stmt::Field(FieldChoice::Prime(p as u64)))
            }
            other => Err(self.error(&format!("unknown field '{}', use QQ or GF <p>", other))),
        }
    }

    fn space_stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.word()?;
        self.eat('=')?;
        self.keyword("PP")?;
        self.eat('(')?;
        let mut dims = Vec::new();
        loop {
            let d = self.integer()?;
            if d < 0 {
                return Err(self.error("factor dimension must be nonnegative"));
            }
            dims.push(d as usize);
            if !self.try_eat(',') {
                break;
            }
        }
        self.eat(')')?;
        let mut vars = Vec::new();
        self.skip_ws();
        if !self.at_end() {
            self.keyword("vars")?;
            loop {
                vars.push(self.word()?);
                if !self.try_eat(',') {
                    break;
                }
            }
        }
        Ok(Stmt::Space { name, dims, vars })
    }

    fn variety_stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.word()?;
        self.eat('=')?;
        self.keyword("V")?;
        self.eat('(')?;
        let space = self.word()?;
        self.eat(';')?;
        let polys = self.raw_list(')')?;
        Ok(Stmt::Variety { name, space, polys })
    }

    fn map_stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.word()?;
        self.eat(':')?;
        let source = self.word()?;
        self.eat('-')?;
        if self.advance() != Some('>') {
            return Err(self.error("expected '->'"));
        }
        self.keyword("PP")?;
        self.eat('(')?;
        let mut dims = Vec::new();
        loop {
            let d = self.integer()?;
            if d < 0 {
                return Err(self.error("factor dimension must be nonnegative"));
            }
            dims.push(d as usize);
            if !self.try_eat(',') {
                break;
            }
        }
        self.eat(')')?;
        self.eat('=')?;
        self.eat('[')?;
        let forms = self.raw_list(']')?;
        Ok(Stmt::Map { name, source, dims, forms })
    }

    fn mmap_stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.word()?;
        self.eat('=')?;
        self.eat('(')?;
        let mut parts = Vec::new();
        loop {
            parts.push(self.word()?);
            if !self.try_eat(',') {
                break;
            }
        }
        self.eat(')')?;
        Ok(Stmt::MMap { name, parts })
    }

    fn let_stmt(&mut self) -> Result<Stmt, ParseError> {
        let mut names = Vec::new();
        if self.try_eat('(') {
            loop {
                names.push(self.word()?);
                if !self.try_eat(',') {
                    break;
                }
            }
            self.eat(')')?;
        } else {
            names.push(self.word()?);
        }
        self.eat('=')?;
        let expr = self.expr()?;
        Ok(Stmt::Let { names, expr })
    }

    fn assert_stmt(&mut self) -> Result<Stmt, ParseError> {
        let lhs = self.atom()?;
        self.eat('=')?;
        self.eat('=')?;
        let rhs = self.atom()?;
        Ok(Stmt::Assert(lhs, rhs))
    }

    fn expr_list(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut out = vec![self.expr()?];
        while self.try_eat(',') {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('=') {
            self.advance();
            self.eat('=')?;
            let rhs = self.atom()?;
            return Ok(Expr::Eq(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => Ok(Expr::Int(self.integer()?)),
            _ => {
                let name = self.word()?;
                if self.try_eat('(') {
                    let mut args = Vec::new();
                    if !self.try_eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if !self.try_eat(',') {
                                break;
                            }
                        }
                        self.eat(')')?;
                    }
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Name(name))
                }
            }
        }
    }

    /// Comma-separated raw slices up to the closing bracket, depth-aware;
    /// used for polynomial lists whose syntax belongs to the poly parser.
    fn raw_list(&mut self, close: char) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut piece = String::new();
        loop {
            let Some(c) = self.peek() else {
                return Err(self.error(&format!("expected '{}'", close)));
            };
            if depth == 0 && c == close {
                self.advance();
                break;
            }
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(self.error("unbalanced bracket"));
                    }
                }
                ',' if depth == 0 => {
                    self.advance();
                    out.push(std::mem::take(&mut piece));
                    continue;
                }
                _ => {}
            }
            piece.push(c);
            self.advance();
        }
        out.push(piece);
        let out: Vec<String> = out.into_iter().map(|s| s.trim().to_string()).collect();
        if out.iter().any(|s| s.is_empty()) {
            return Err(self.error("empty entry in list"));
        }
        Ok(out)
    }
}

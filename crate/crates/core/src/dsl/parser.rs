use std::collections::HashMap;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::sig::{self, Kind, Sig};
use super::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Decl {
    Ring,
    Module,
    Mf,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    decls: HashMap<String, Decl>,
}

pub fn parse_scenario(src: &str) -> Result<Scenario, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        decls: HashMap::new(),
    };
    let mut stmts = Vec::new();
    loop {
        match p.peek() {
            Tok::Eof => break,
            Tok::Newline => {
                p.pos += 1;
            }
            _ => {
                stmts.push(p.stmt()?);
                match p.peek() {
                    Tok::Newline | Tok::Eof => {}
                    _ => return Err(p.unexpected(&["end of line"])),
                }
            }
        }
    }
    Ok(Scenario { stmts })
}

impl Parser {
    fn tok(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek(&self) -> &Tok {
        &self.tok().tok
    }

    fn err(&self, msg: impl Into<String>, expected: &[&str]) -> ParseError {
        let t = self.tok();
        ParseError::new(t.line, t.col, msg.into(), expected.iter().map(|s| s.to_string()).collect())
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.err(format!("unexpected {}", self.peek().describe()), expected)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&[s]))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&[kw])),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym("-");
        match self.peek().clone() {
            Tok::Int(s) => {
                let v: i64 = s.parse().map_err(|_| self.err("integer out of range", &[]))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn declare(&mut self, name: &str, kind: Decl) -> Result<(), ParseError> {
        if self.decls.contains_key(name) {
            return Err(self.err(format!("`{name}` is already declared"), &[]));
        }
        self.decls.insert(name.to_string(), kind);
        Ok(())
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let line = self.tok().line;
        let kw = self.ident("statement keyword")?;
        let kind = match kw.as_str() {
            "ring" => {
                let name = self.ident("ring name")?;
                self.sym("=")?;
                let def = self.ring_def()?;
                self.declare(&name, Decl::Ring)?;
                StmtKind::Ring { name, def }
            }
            "module" => {
                let name = self.ident("module name")?;
                self.sym("=")?;
                let expr = self.call(sig::MODULE_EXPRS, "module expression")?;
                self.declare(&name, Decl::Module)?;
                StmtKind::Module { name, expr }
            }
            "mf" => {
                let name = self.ident("factorization name")?;
                self.sym("=")?;
                let expr = self.call(sig::MF_EXPRS, "factorization expression")?;
                self.declare(&name, Decl::Mf)?;
                StmtKind::Factorization { name, expr }
            }
            "assert" => StmtKind::Assert(self.cond()?),
            "check" => {
                let call = self.call(sig::CHECKS, "check name")?;
                let expect = if self.eat_sym("==") {
                    match self.ident("`true` or `false`")?.as_str() {
                        "true" => Some(true),
                        "false" => Some(false),
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected(&["true", "false"]));
                        }
                    }
                } else {
                    None
                };
                StmtKind::Check { call, expect }
            }
            "print" => {
                let call = match self.peek() {
                    Tok::Ident(s) if sig::find(sig::PRINTS, s).is_some() => self.call(sig::PRINTS, "")?,
                    _ => self.call(sig::NUM_EXPRS, "printable expression")?,
                };
                StmtKind::Print(call)
            }
            _ => {
                self.pos -= 1;
                return Err(self.unexpected(&["ring", "module", "mf", "assert", "check", "print"]));
            }
        };
        Ok(Stmt { line, kind })
    }

    fn field(&mut self) -> Result<FieldSpec, ParseError> {
        match self.ident("field")?.as_str() {
            "QQ" => Ok(FieldSpec::Rationals),
            "GF" => {
                self.sym("(")?;
                let p = self.int()?;
                self.sym(")")?;
                if p < 2 {
                    return Err(self.err("characteristic must be at least 2", &[]));
                }
                Ok(FieldSpec::Prime(p as u64))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected(&["QQ", "GF"]))
            }
        }
    }

    fn ring_def(&mut self) -> Result<RingDef, ParseError> {
        match self.ident("`poly` or `veronese`")?.as_str() {
            "poly" => {
                self.sym("(")?;
                let field = self.field()?;
                self.sym(",")?;
                self.sym("[")?;
                let mut vars = vec![self.ident("variable name")?];
                while self.eat_sym(",") {
                    vars.push(self.ident("variable name")?);
                }
                self.sym("]")?;
                let order = if self.eat_sym(",") {
                    let o = self.ident("monomial order")?;
                    if o != "grevlex" && o != "lex" {
                        self.pos -= 1;
                        return Err(self.unexpected(&["grevlex", "lex"]));
                    }
                    Some(o)
                } else {
                    None
                };
                self.sym(")")?;
                let ideal = if self.eat_sym("/") {
                    self.keyword("ideal")?;
                    self.sym("(")?;
                    let g = self.polys()?;
                    self.sym(")")?;
                    g
                } else {
                    Vec::new()
                };
                Ok(RingDef::Poly {
                    field,
                    vars,
                    order,
                    ideal,
                })
            }
            "veronese" => {
                self.sym("(")?;
                let field = self.field()?;
                self.sym(",")?;
                let d = self.int()?;
                self.sym(",")?;
                let n = self.int()?;
                self.sym(")")?;
                Ok(RingDef::Veronese { field, d, n })
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected(&["poly", "veronese"]))
            }
        }
    }

    fn cond(&mut self) -> Result<Cond, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "not") {
            self.pos += 1;
            let call = self.call(sig::PREDS, "predicate")?;
            return Ok(Cond::Pred { negated: true, call });
        }
        match self.peek() {
            Tok::Ident(s) if sig::find(sig::PREDS, s).is_some() => {
                let call = self.call(sig::PREDS, "")?;
                Ok(Cond::Pred { negated: false, call })
            }
            _ => {
                let lhs = self.call(sig::NUM_EXPRS, "numeric expression or predicate")?;
                let op = if self.eat_sym("==") {
                    CmpOp::Eq
                } else if self.eat_sym("<=") {
                    CmpOp::Le
                } else if self.eat_sym(">=") {
                    CmpOp::Ge
                } else {
                    return Err(self.unexpected(&["==", "<=", ">="]));
                };
                let rhs = match self.peek() {
                    Tok::Ident(s) if s == "inf" => {
                        self.pos += 1;
                        Rhs::Inf
                    }
                    _ => Rhs::Int(self.int()?),
                };
                Ok(Cond::Compare { lhs, op, rhs })
            }
        }
    }

    fn call(&mut self, table: &[Sig], what: &str) -> Result<Call, ParseError> {
        let func = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return Err(self.unexpected(&[what])),
        };
        let Some(sig) = sig::find(table, &func) else {
            let names = sig::names(table);
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            return Err(self.err(format!("unknown name `{func}`"), &refs));
        };
        self.pos += 1;
        self.sym("(")?;
        let mut args = Vec::new();
        let required = sig.args.len() - sig.optional;
        for (k, kind) in sig.args.iter().enumerate() {
            if k > 0 {
                if k >= required && matches!(self.peek(), Tok::Sym(")")) {
                    break;
                }
                self.sym(",")?;
            }
            match kind {
                Kind::Polys => args.extend(self.polys()?.into_iter().map(Arg::Poly)),
                _ => args.push(self.arg(*kind)?),
            }
        }
        self.sym(")")?;
        Ok(Call { func, args })
    }

    fn arg(&mut self, kind: Kind) -> Result<Arg, ParseError> {
        let expect = |d: Decl| move |x: Option<&Decl>| x == Some(&d);
        let check = |p: &Self, name: &str, ok: bool, what: &str| {
            if ok {
                Ok(())
            } else if p.decls.contains_key(name) {
                Err(ParseError::new(
                    p.toks[p.pos - 1].line,
                    p.toks[p.pos - 1].col,
                    format!("`{name}` is not a {what}"),
                    vec![],
                ))
            } else {
                Err(ParseError::new(
                    p.toks[p.pos - 1].line,
                    p.toks[p.pos - 1].col,
                    format!("`{name}` is not declared"),
                    vec![],
                ))
            }
        };
        match kind {
            Kind::Ring | Kind::Module | Kind::Mf | Kind::Target => {
                let name = self.ident("identifier")?;
                let d = self.decls.get(&name);
                let (ok, what) = match kind {
                    Kind::Ring => (expect(Decl::Ring)(d), "ring"),
                    Kind::Module => (expect(Decl::Module)(d), "module"),
                    Kind::Mf => (expect(Decl::Mf)(d), "matrix factorization"),
                    _ => (matches!(d, Some(Decl::Ring) | Some(Decl::Module)), "ring or module"),
                };
                check(self, &name, ok, what)?;
                Ok(Arg::Name(name))
            }
            Kind::Var => Ok(Arg::Name(self.ident("variable name")?)),
            Kind::Int => Ok(Arg::Int(self.int()?)),
            Kind::Poly => Ok(Arg::Poly(self.poly(&[",", ")"])?)),
            Kind::Matrix => {
                self.sym("[")?;
                let mut rows = Vec::new();
                loop {
                    let mut row = vec![self.poly(&[",", ";", "]"])?];
                    while self.eat_sym(",") {
                        row.push(self.poly(&[",", ";", "]"])?);
                    }
                    rows.push(row);
                    if !self.eat_sym(";") {
                        break;
                    }
                }
                self.sym("]")?;
                let w = rows[0].len();
                if rows.iter().any(|r| r.len() != w) {
                    return Err(self.err("matrix rows have different lengths", &[]));
                }
                Ok(Arg::Matrix(rows))
            }
            Kind::Polys => unreachable!("handled by the caller"),
        }
    }

    fn polys(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.poly(&[",", ")"])?];
        while self.eat_sym(",") {
            out.push(self.poly(&[",", ")"])?);
        }
        Ok(out)
    }

    /// Raw polynomial text up to a terminator at bracket depth zero.
    fn poly(&mut self, stop: &[&str]) -> Result<String, ParseError> {
        let mut text = String::new();
        let mut depth = 0usize;
        let mut prev_end: Option<usize> = None;
        loop {
            let t = self.tok().clone();
            match &t.tok {
                Tok::Sym(s) if depth == 0 && stop.contains(s) => break,
                Tok::Newline | Tok::Eof => break,
                Tok::Sym("(") => depth += 1,
                Tok::Sym(")") if depth > 0 => depth -= 1,
                Tok::Sym("+" | "-" | "*" | "/" | "^") | Tok::Ident(_) | Tok::Int(_) => {}
                _ => return Err(self.unexpected(&["polynomial"])),
            }
            if prev_end.is_some_and(|e| e < t.start) {
                text.push(' ');
            }
            match &t.tok {
                Tok::Ident(s) | Tok::Int(s) => text.push_str(s),
                Tok::Sym(s) => text.push_str(s),
                _ => {}
            }
            prev_end = Some(t.end);
            self.pos += 1;
        }
        if text.is_empty() {
            return Err(self.unexpected(&["polynomial"]));
        }
        if depth != 0 {
            return Err(self.unexpected(&[")"]));
        }
        Ok(text)
    }
}

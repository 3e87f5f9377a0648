//! Reader and printer for the clausal (`cnf`) fragment of TPTP.
//!
//! Supported: `cnf(name, role, disjunction[, annotations]).` statements with
//! roles `axiom`, `hypothesis` and `negated_conjecture`, `%` line comments
//! and `/* */` block comments, infix `=` / `!=`, and `$false` as the empty
//! disjunction. `include` and `fof` are rejected.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::term::{Clause, Literal, Role, Signature, SignatureError, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Signature(#[from] SignatureError),
    #[error("unknown role `{0}`")]
    UnknownRole(String),
}

/// A parsed problem: its signature and its input clauses in file order.
#[derive(Clone, Debug)]
pub struct Problem {
    pub signature: Signature,
    pub clauses: Vec<Clause>,
    pub names: Vec<String>,
}

impl Problem {
    pub fn conjecture_count(&self) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.role == Role::NegatedConjecture)
            .count()
    }

    /// Renders the problem back to TPTP.
    pub fn to_tptp(&self) -> String {
        let mut out = String::new();
        for (clause, name) in self.clauses.iter().zip(&self.names) {
            let _ = writeln!(
                out,
                "cnf({}, {}, {}).",
                name,
                clause.role.as_tptp(),
                clause.display(&self.signature)
            );
        }
        out
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        signature: Signature::new(),
    };
    let mut clauses = Vec::new();
    let mut names = Vec::new();
    while !parser.at_end() {
        let (name, clause) = parser.statement()?;
        let mut clause = clause;
        clause.age = clauses.len() as u64;
        clauses.push(clause);
        names.push(name);
    }
    Ok(Problem {
        signature: parser.signature,
        clauses,
        names,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Dollar(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Pipe,
    Tilde,
    Eq,
    Neq,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(syntax(tl, tc, "unterminated block comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        let tok = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '|' => Some(Tok::Pipe),
            '~' => Some(Tok::Tilde),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = tok {
            bump!();
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            continue;
        }
        if c == '!' && chars.get(i + 1) == Some(&'=') {
            bump!();
            bump!();
            out.push(Spanned {
                tok: Tok::Neq,
                line: tl,
                column: tc,
            });
            continue;
        }
        if c == '\'' {
            let mut word = String::from("'");
            bump!();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(syntax(tl, tc, "unterminated quoted atom")),
                    Some('\\') if i + 1 < chars.len() => {
                        word.push('\\');
                        bump!();
                        word.push(chars[i]);
                        bump!();
                    }
                    Some('\'') => {
                        word.push('\'');
                        bump!();
                        break;
                    }
                    Some(&ch) => {
                        word.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Spanned {
                tok: Tok::Lower(word),
                line: tl,
                column: tc,
            });
            continue;
        }
        let is_word = |ch: char| ch.is_ascii_alphanumeric() || ch == '_';
        if is_word(c) || c == '$' {
            let mut word = String::new();
            word.push(c);
            bump!();
            while i < chars.len() && is_word(chars[i]) {
                word.push(chars[i]);
                bump!();
            }
            let tok = if c == '$' {
                Tok::Dollar(word)
            } else if c.is_ascii_uppercase() || c == '_' {
                Tok::Upper(word)
            } else {
                Tok::Lower(word)
            };
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            continue;
        }
        return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    signature: Signature,
}

enum RawTerm {
    Var(String),
    App {
        name: String,
        args: Vec<RawTerm>,
        line: usize,
        column: usize,
    },
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos).or(self.tokens.last()) {
            Some(s) => (s.line, s.column),
            None => (1, 1),
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        syntax(line, column, msg)
    }

    fn next(&mut self) -> Result<Spanned, ParseError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.next()?.tok {
            Tok::Lower(w) | Tok::Upper(w) => Ok(w),
            _ => {
                self.pos -= 1;
                Err(self.error("expected formula name"))
            }
        }
    }

    fn statement(&mut self) -> Result<(String, Clause), ParseError> {
        let kw = self.next()?;
        match &kw.tok {
            Tok::Lower(w) if w == "cnf" => {}
            Tok::Lower(w) if w == "fof" || w == "include" || w == "tff" => {
                return Err(syntax(
                    kw.line,
                    kw.column,
                    format!("`{w}` statements are not supported"),
                ))
            }
            _ => return Err(syntax(kw.line, kw.column, "expected `cnf`")),
        }
        self.expect(Tok::LParen, "`(`")?;
        let name = self.name()?;
        self.expect(Tok::Comma, "`,`")?;
        let role_tok = self.next()?;
        let role = match &role_tok.tok {
            Tok::Lower(r) => match r.as_str() {
                "axiom" | "hypothesis" => Role::Axiom,
                "negated_conjecture" => Role::NegatedConjecture,
                other => {
                    return Err(ParseError {
                        line: role_tok.line,
                        column: role_tok.column,
                        kind: ParseErrorKind::UnknownRole(other.to_string()),
                    })
                }
            },
            _ => return Err(syntax(role_tok.line, role_tok.column, "expected role")),
        };
        self.expect(Tok::Comma, "`,`")?;
        let mut vars = HashMap::new();
        let literals = if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let lits = self.disjunction(&mut vars)?;
            self.expect(Tok::RParen, "`)`")?;
            lits
        } else {
            self.disjunction(&mut vars)?
        };
        if self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            self.skip_annotations()?;
        }
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::Dot, "`.`")?;
        Ok((name, Clause::new(literals, role)))
    }

    fn skip_annotations(&mut self) -> Result<(), ParseError> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                None => return Err(self.error("unterminated annotation")),
                Some(Tok::LParen | Tok::LBracket) => depth += 1,
                Some(Tok::RParen) if depth == 0 => return Ok(()),
                Some(Tok::RParen | Tok::RBracket) if depth == 0 => {
                    return Err(self.error("unbalanced annotation"))
                }
                Some(Tok::RParen | Tok::RBracket) => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
    }

    fn disjunction(&mut self, vars: &mut HashMap<String, u32>) -> Result<Vec<Literal>, ParseError> {
        let mut lits = Vec::new();
        loop {
            if let Some(lit) = self.literal(vars)? {
                lits.push(lit);
            }
            if self.peek() == Some(&Tok::Pipe) {
                self.pos += 1;
            } else {
                return Ok(lits);
            }
        }
    }

    /// `None` for `$false`, which contributes nothing to the disjunction.
    fn literal(&mut self, vars: &mut HashMap<String, u32>) -> Result<Option<Literal>, ParseError> {
        let mut positive = true;
        if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            positive = false;
        }
        if let Some(Tok::Dollar(w)) = self.peek() {
            if w == "$false" && positive {
                self.pos += 1;
                return Ok(None);
            }
            return Err(self.error(format!("unsupported literal `{w}`")));
        }
        if !positive && self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let inner = self.literal(vars)?;
            self.expect(Tok::RParen, "`)`")?;
            return match inner {
                Some(l) => Ok(Some(Literal::new(!l.positive, l.atom))),
                None => Err(self.error("cannot negate `$false`")),
            };
        }
        let (line, column) = self.here();
        let lhs = self.raw_term()?;
        let eq = match self.peek() {
            Some(Tok::Eq) => Some(true),
            Some(Tok::Neq) => Some(false),
            _ => None,
        };
        let atom = if let Some(eq_positive) = eq {
            self.pos += 1;
            let rhs = self.raw_term()?;
            positive = positive == eq_positive;
            let id = self
                .signature
                .intern("=", true, 2)
                .map_err(|e| sig_error(line, column, e))?;
            let l = self.lower_term(lhs, vars)?;
            let r = self.lower_term(rhs, vars)?;
            Term::App(id, vec![l, r])
        } else {
            match lhs {
                RawTerm::Var(v) => {
                    return Err(syntax(line, column, format!("variable `{v}` used as an atom")))
                }
                RawTerm::App {
                    name,
                    args,
                    line,
                    column,
                } => {
                    let id = self
                        .signature
                        .intern(&name, true, args.len())
                        .map_err(|e| sig_error(line, column, e))?;
                    let args = args
                        .into_iter()
                        .map(|a| self.lower_term(a, vars))
                        .collect::<Result<_, _>>()?;
                    Term::App(id, args)
                }
            }
        };
        Ok(Some(Literal::new(positive, atom)))
    }

    fn raw_term(&mut self) -> Result<RawTerm, ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Upper(v) => Ok(RawTerm::Var(v)),
            Tok::Lower(name) => {
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    loop {
                        args.push(self.raw_term()?);
                        match self.next()?.tok {
                            Tok::Comma => continue,
                            Tok::RParen => break,
                            _ => {
                                self.pos -= 1;
                                return Err(self.error("expected `,` or `)` in argument list"));
                            }
                        }
                    }
                }
                Ok(RawTerm::App {
                    name,
                    args,
                    line: t.line,
                    column: t.column,
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected term"))
            }
        }
    }

    fn lower_term(&mut self, raw: RawTerm, vars: &mut HashMap<String, u32>) -> Result<Term, ParseError> {
        match raw {
            RawTerm::Var(name) => {
                let next = vars.len() as u32;
                Ok(Term::Var(*vars.entry(name).or_insert(next)))
            }
            RawTerm::App {
                name,
                args,
                line,
                column,
            } => {
                let id = self
                    .signature
                    .intern(&name, false, args.len())
                    .map_err(|e| sig_error(line, column, e))?;
                let args = args
                    .into_iter()
                    .map(|a| self.lower_term(a, vars))
                    .collect::<Result<_, _>>()?;
                Ok(Term::App(id, args))
            }
        }
    }
}

fn sig_error(line: usize, column: usize, e: SignatureError) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Signature(e),
    }
}

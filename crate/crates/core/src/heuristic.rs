//! Expert heuristics: a round-robin list of clause evaluation functions,
//! written `(n1*CEF1,...,nk*CEFk)`.
//!
//! Each CEF is `Name(Priority[,args])`. Similarity weights take the common
//! triple `v,r,e` first and their own arguments after it:
//!
//! | name                    | arguments after the priority              |
//! |-------------------------|-------------------------------------------|
//! | `Ref`                   | `c_conj,c_f,c_c,c_p,c_v`                  |
//! | `ConjectureTermWeight`  | `v,r,e,c_conj,c_f,c_c,c_p,c_v`            |
//! | `ConjectureTfIdfWeight` | `v,r,e,d` with `d` one of `ax`, `pro`     |
//! | `ConjecturePrefixWeight`| `v,r,e,c_match,c_miss`                    |
//! | `ConjectureLevWeight`   | `v,r,e,c_ins,c_del,c_ch`                  |
//! | `ConjectureTedWeight`   | `v,r,e,c_ins,c_del,c_ch`                  |
//! | `ConjectureStrucWeight` | `v,r,e,c_miss,c_inst,c_gen`               |
//! | `FIFOWeight`            | none                                      |
//!
//! Numbers are non-negative decimals (`0.5`) or fractions (`1/3`).

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::distance::{EditCosts, StructCosts};
use crate::related::RelatedMode;
use crate::term::Norm;
use crate::weights::{Cef, Common, DocMode, Extension, PrefCosts, PriorityFn, SymbolWeights, WeightFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heuristic {
    entries: Vec<(u32, Cef)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HeuristicError {
    #[error("at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("a heuristic needs at least one CEF")]
    Empty,
    #[error("CEF count must be at least 1")]
    ZeroCount,
}

impl Heuristic {
    pub fn new(entries: Vec<(u32, Cef)>) -> Result<Self, HeuristicError> {
        if entries.is_empty() {
            return Err(HeuristicError::Empty);
        }
        if entries.iter().any(|(n, _)| *n == 0) {
            return Err(HeuristicError::ZeroCount);
        }
        Ok(Heuristic { entries })
    }

    pub fn single(cef: Cef) -> Self {
        Heuristic {
            entries: vec![(1, cef)],
        }
    }

    pub fn entries(&self) -> &[(u32, Cef)] {
        &self.entries
    }

    pub fn cefs(&self) -> impl Iterator<Item = &Cef> {
        self.entries.iter().map(|(_, c)| c)
    }

    /// CEF indices in selection order over one full cycle: the first CEF
    /// `n1` times, then the second `n2` times, and so on.
    pub fn schedule(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, (n, _))| std::iter::repeat_n(i, *n as usize))
            .collect()
    }
}

impl FromStr for Heuristic {
    type Err = HeuristicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_heuristic(s)
    }
}

pub fn parse_heuristic(spec: &str) -> Result<Heuristic, HeuristicError> {
    let mut p = Cursor { src: spec, pos: 0 };
    p.expect('(')?;
    let mut entries = Vec::new();
    loop {
        let count_pos = p.skip_ws();
        let count: u32 = p
            .word()
            .parse()
            .map_err(|_| p.error_at(count_pos, "expected a CEF count"))?;
        if count == 0 {
            return Err(p.error_at(count_pos, "CEF count must be at least 1"));
        }
        p.expect('*')?;
        entries.push((count, p.cef()?));
        p.skip_ws();
        match p.bump() {
            Some(',') => continue,
            Some(')') => break,
            _ => return Err(p.error("expected `,` or `)`")),
        }
    }
    if p.skip_ws() != spec.len() {
        return Err(p.error("trailing input"));
    }
    Heuristic::new(entries)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) -> usize {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
        self.pos
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> HeuristicError {
        HeuristicError::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn error(&self, msg: impl Into<String>) -> HeuristicError {
        self.error_at(self.pos, msg)
    }

    fn expect(&mut self, c: char) -> Result<(), HeuristicError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..]
            .starts_with(|c: char| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '/'))
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn cef(&mut self) -> Result<Cef, HeuristicError> {
        let name_pos = self.skip_ws();
        let name = self.word();
        self.expect('(')?;
        let mut args: Vec<(usize, &'a str)> = Vec::new();
        loop {
            let pos = self.skip_ws();
            let w = self.word();
            if w.is_empty() {
                return Err(self.error("expected an argument"));
            }
            args.push((pos, w));
            self.skip_ws();
            match self.bump() {
                Some(',') => continue,
                Some(')') => break,
                _ => return Err(self.error("expected `,` or `)`")),
            }
        }
        let (prio_pos, prio) = args[0];
        let priority = match prio {
            "ConstPrio" => PriorityFn::ConstPrio,
            "PreferGoals" => PriorityFn::PreferGoals,
            other => return Err(self.error_at(prio_pos, format!("unknown priority function `{other}`"))),
        };
        let rest = &args[1..];
        let weight = match name {
            "FIFOWeight" => {
                self.arity(name_pos, name, rest, 0)?;
                WeightFn::Fifo
            }
            "Ref" => {
                self.arity(name_pos, name, rest, 5)?;
                WeightFn::Ref(self.symbol_weights(rest)?)
            }
            "ConjectureTermWeight" => {
                self.arity(name_pos, name, rest, 8)?;
                WeightFn::Term(self.common(rest)?, self.symbol_weights(&rest[3..])?)
            }
            "ConjectureTfIdfWeight" => {
                self.arity(name_pos, name, rest, 4)?;
                let doc = match rest[3].1 {
                    "ax" => DocMode::Ax,
                    "pro" => DocMode::Pro,
                    other => {
                        return Err(self.error_at(rest[3].0, format!("expected `ax` or `pro`, found `{other}`")))
                    }
                };
                WeightFn::Tfidf(self.common(rest)?, doc)
            }
            "ConjecturePrefixWeight" => {
                self.arity(name_pos, name, rest, 5)?;
                let n = self.numbers(&rest[3..])?;
                WeightFn::Pref(
                    self.common(rest)?,
                    PrefCosts {
                        matched: n[0],
                        missed: n[1],
                    },
                )
            }
            "ConjectureLevWeight" | "ConjectureTedWeight" => {
                self.arity(name_pos, name, rest, 6)?;
                let n = self.numbers(&rest[3..])?;
                let costs = EditCosts::new(n[0], n[1], n[2]);
                if name == "ConjectureLevWeight" {
                    WeightFn::Lev(self.common(rest)?, costs)
                } else {
                    WeightFn::Ted(self.common(rest)?, costs)
                }
            }
            "ConjectureStrucWeight" => {
                self.arity(name_pos, name, rest, 6)?;
                let n = self.numbers(&rest[3..])?;
                WeightFn::Struc(self.common(rest)?, StructCosts::new(n[0], n[1], n[2]))
            }
            other => return Err(self.error_at(name_pos, format!("unknown weight function `{other}`"))),
        };
        Ok(Cef { priority, weight })
    }

    fn arity(&self, pos: usize, name: &str, args: &[(usize, &str)], want: usize) -> Result<(), HeuristicError> {
        if args.len() == want {
            Ok(())
        } else {
            Err(self.error_at(
                pos,
                format!("`{name}` takes {want} arguments after the priority, found {}", args.len()),
            ))
        }
    }

    fn common(&self, args: &[(usize, &str)]) -> Result<Common, HeuristicError> {
        let norm = match args[0].1 {
            "Alf" => Norm::Alf,
            "Uni" => Norm::Uni,
            other => return Err(self.error_at(args[0].0, format!("expected `Alf` or `Uni`, found `{other}`"))),
        };
        let related = match args[1].1 {
            "Ter" => RelatedMode::Ter,
            "Sub" => RelatedMode::Sub,
            "Top" => RelatedMode::Top,
            "Gen" => RelatedMode::Gen,
            other => {
                return Err(self.error_at(
                    args[1].0,
                    format!("expected one of `Ter`, `Sub`, `Top`, `Gen`, found `{other}`"),
                ))
            }
        };
        let ext = match args[2].1 {
            "Sim" => Extension::Sim,
            "Sum" => Extension::Sum,
            "Max" => Extension::Max,
            other => {
                return Err(self.error_at(
                    args[2].0,
                    format!("expected one of `Sim`, `Sum`, `Max`, found `{other}`"),
                ))
            }
        };
        Ok(Common { norm, related, ext })
    }

    fn numbers(&self, args: &[(usize, &str)]) -> Result<Vec<Rational64>, HeuristicError> {
        args.iter()
            .map(|(pos, w)| parse_number(w).ok_or_else(|| self.error_at(*pos, format!("bad number `{w}`"))))
            .collect()
    }

    fn symbol_weights(&self, args: &[(usize, &str)]) -> Result<SymbolWeights, HeuristicError> {
        let n = self.numbers(args)?;
        if let Some(i) = n.iter().position(|x| x.is_zero()) {
            return Err(self.error_at(args[i].0, "symbol weights must be positive"));
        }
        Ok(SymbolWeights {
            conj: n[0],
            function: n[1],
            constant: n[2],
            predicate: n[3],
            variable: n[4],
        })
    }
}

/// Parses `3`, `0.25` or `2/3` exactly. Negative numbers are rejected.
pub fn parse_number(s: &str) -> Option<Rational64> {
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.parse().ok()?;
        let d: i64 = d.parse().ok()?;
        if d == 0 || n < 0 || d < 0 {
            return None;
        }
        return Some(Rational64::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let whole: i64 = int.parse().ok()?;
    let part: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some(Rational64::new(whole.checked_mul(denom)?.checked_add(part)?, denom))
}

/// Writes a rational as a decimal when it has a finite expansion, and as a
/// fraction otherwise.
fn write_number(f: &mut fmt::Formatter<'_>, r: &Rational64) -> fmt::Result {
    debug_assert!(!r.is_negative());
    let (n, d) = (*r.numer(), *r.denom());
    if d == 1 {
        return write!(f, "{n}");
    }
    let mut rest = d;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return write!(f, "{n}/{d}");
    }
    let digits = twos.max(fives);
    let scaled = n * (10i64.pow(digits) / d);
    let pow = 10i64.pow(digits);
    write!(f, "{}.{:0width$}", scaled / pow, scaled % pow, width = digits as usize)
}

struct Num<'a>(&'a Rational64);

impl fmt::Display for Num<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_number(f, self.0)
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::Alf => "Alf",
            Norm::Uni => "Uni",
        })
    }
}

impl fmt::Display for RelatedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelatedMode::Ter => "Ter",
            RelatedMode::Sub => "Sub",
            RelatedMode::Top => "Top",
            RelatedMode::Gen => "Gen",
        })
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extension::Sim => "Sim",
            Extension::Sum => "Sum",
            Extension::Max => "Max",
        })
    }
}

impl fmt::Display for Cef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prio = match self.priority {
            PriorityFn::ConstPrio => "ConstPrio",
            PriorityFn::PreferGoals => "PreferGoals",
        };
        let common = |f: &mut fmt::Formatter<'_>, c: &Common| write!(f, ",{},{},{}", c.norm, c.related, c.ext);
        let sw = |f: &mut fmt::Formatter<'_>, w: &SymbolWeights| {
            write!(
                f,
                ",{},{},{},{},{}",
                Num(&w.conj),
                Num(&w.function),
                Num(&w.constant),
                Num(&w.predicate),
                Num(&w.variable)
            )
        };
        match &self.weight {
            WeightFn::Fifo => write!(f, "FIFOWeight({prio})"),
            WeightFn::Ref(w) => {
                write!(f, "Ref({prio}")?;
                sw(f, w)?;
                f.write_str(")")
            }
            WeightFn::Term(c, w) => {
                write!(f, "ConjectureTermWeight({prio}")?;
                common(f, c)?;
                sw(f, w)?;
                f.write_str(")")
            }
            WeightFn::Tfidf(c, d) => {
                write!(f, "ConjectureTfIdfWeight({prio}")?;
                common(f, c)?;
                let d = match d {
                    DocMode::Ax => "ax",
                    DocMode::Pro => "pro",
                };
                write!(f, ",{d})")
            }
            WeightFn::Pref(c, p) => {
                write!(f, "ConjecturePrefixWeight({prio}")?;
                common(f, c)?;
                write!(f, ",{},{})", Num(&p.matched), Num(&p.missed))
            }
            WeightFn::Lev(c, e) | WeightFn::Ted(c, e) => {
                let name = if matches!(self.weight, WeightFn::Lev(..)) {
                    "ConjectureLevWeight"
                } else {
                    "ConjectureTedWeight"
                };
                write!(f, "{name}({prio}")?;
                common(f, c)?;
                write!(f, ",{},{},{})", Num(&e.ins), Num(&e.del), Num(&e.ch))
            }
            WeightFn::Struc(c, s) => {
                write!(f, "ConjectureStrucWeight({prio}")?;
                common(f, c)?;
                write!(f, ",{},{},{})", Num(&s.miss), Num(&s.inst), Num(&s.gen))
            }
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (n, cef)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}*{cef}")?;
        }
        f.write_str(")")
    }
}

/// Three digits, each 1..=9, giving the costs of a distance weight in
/// argument order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CostCode([u8; 3]);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cost code must be three digits 1-9, got `{0}`")]
pub struct CostCodeError(pub String);

impl FromStr for CostCode {
    type Err = CostCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix('c').unwrap_or(s).as_bytes();
        if digits.len() != 3 || !digits.iter().all(|b| (b'1'..=b'9').contains(b)) {
            return Err(CostCodeError(s.to_string()));
        }
        Ok(CostCode([digits[0] - b'0', digits[1] - b'0', digits[2] - b'0']))
    }
}

impl fmt::Display for CostCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl CostCode {
    pub fn digits(&self) -> [u8; 3] {
        self.0
    }

    /// `(c_ins, c_del, c_ch)` for the Levenshtein and tree distances.
    pub fn edit_costs(&self) -> EditCosts {
        let [a, b, c] = self.0;
        EditCosts::integers(a.into(), b.into(), c.into())
    }

    /// `(c_miss, c_inst, c_gen)` for the structural distance.
    pub fn struct_costs(&self) -> StructCosts {
        let [a, b, c] = self.0;
        StructCosts::integers(a.into(), b.into(), c.into())
    }
}

/// Which argument triple a cost code is read as.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostKind {
    Edit,
    Struct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodedCosts {
    Edit(EditCosts),
    Struct(StructCosts),
}

pub fn decode_cost_code(code: &str, kind: CostKind) -> Result<DecodedCosts, CostCodeError> {
    let code: CostCode = code.parse()?;
    Ok(match kind {
        CostKind::Edit => DecodedCosts::Edit(code.edit_costs()),
        CostKind::Struct => DecodedCosts::Struct(code.struct_costs()),
    })
}

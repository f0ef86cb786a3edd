//! Text formats for monoids, families, vectors and presentations.
//!
//! ```text
//! N0                      N0^2
//! dio n=2 { eq: 2 x0 = x0 + x1; ineq: x0 <= 3 x1; cong: x0 + 2 x1 in 3N; }
//! cmn(2,3)                trivial(dio n=1 { })
//! qline                   dedekind(G=2,2)        hnp(c=1,1/2)
//! twogen { rel: 1*X1 + aleph0*X2 = aleph0*X2; }
//! fam { (1,0) * aleph0, (0,1) * 2 }
//! (aleph0, 3)
//! ```
//!
//! Whitespace is insignificant. Family elements are `3`, `aleph1`, tuples,
//! `1/2`, `~1/2`, `inf`, or a rank with a class such as `2[1,0]`; a missing
//! multiplicity means `1`. Errors carry the line and column of the offending
//! token, and rendering any parsed value gives text that parses back to it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cardinals::ExtCard;
use crate::diophantine::ConstraintSystem;
use crate::free_vectors::CardVec;
use crate::gallery::{Adjoined, DedekindElem, DedekindMonoid, LineElem};
use crate::monoid::Family;
use crate::presentations::{Coef, Form, TwoGenPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Word(String),
    Sym(char),
    Le,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut take = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = if c.is_whitespace() {
            take(&mut chars);
            continue;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.extend(take(&mut chars));
            }
            Tok::Num(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.extend(take(&mut chars));
            }
            Tok::Word(s)
        } else if c == '<' {
            take(&mut chars);
            if chars.peek() != Some(&'=') {
                return Err(ParseError {
                    line: l,
                    column: col,
                    message: "expected `<=`".into(),
                });
            }
            take(&mut chars);
            Tok::Le
        } else if "(){}[],;:=+*/~^".contains(c) {
            take(&mut chars);
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// A monoid description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidExpr {
    /// `N0` or `N0^k`.
    Naturals {
        dim: usize,
    },
    Dio(ConstraintSystem),
    Cmn {
        tail: u64,
        period: u64,
    },
    /// The trivial extension of a naturals, Diophantine or cyclic base.
    Trivial(Box<MonoidExpr>),
    QLine,
    Dedekind {
        factors: Vec<u64>,
    },
    Hnp {
        weights: Vec<BigRational>,
    },
    TwoGen(TwoGenPresentation),
}

impl fmt::Display for MonoidExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidExpr::Naturals { dim: 1 } => f.write_str("N0"),
            MonoidExpr::Naturals { dim } => write!(f, "N0^{dim}"),
            MonoidExpr::Dio(sys) => write!(f, "{sys}"),
            MonoidExpr::Cmn { tail, period } => write!(f, "cmn({tail},{period})"),
            MonoidExpr::Trivial(base) => write!(f, "trivial({base})"),
            MonoidExpr::QLine => f.write_str("qline"),
            MonoidExpr::Dedekind { factors } => write!(f, "dedekind(G={})", join(factors)),
            MonoidExpr::Hnp { weights } => write!(f, "hnp(c={})", join(weights)),
            MonoidExpr::TwoGen(p) => write!(f, "{p}"),
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// A family element, read independently of the monoid it will live in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ElemExpr {
    Card(ExtCard),
    Tuple(Vec<ExtCard>),
    /// A non-integral rational `a/b`.
    Ratio(BigRational),
    Tilde(BigRational),
    Classed {
        rank: ExtCard,
        class: Vec<u64>,
    },
    Infinity,
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemExpr::Card(c) => write!(f, "{c}"),
            ElemExpr::Tuple(cs) => write!(f, "({})", join(cs)),
            ElemExpr::Ratio(q) => write!(f, "{q}"),
            ElemExpr::Tilde(q) => write!(f, "~{q}"),
            ElemExpr::Classed { rank, class } => write!(f, "{rank}[{}]", join(class)),
            ElemExpr::Infinity => f.write_str("inf"),
        }
    }
}

impl ElemExpr {
    pub fn to_card(&self) -> Result<ExtCard, String> {
        match self {
            ElemExpr::Card(c) => Ok(c.clone()),
            ElemExpr::Tuple(cs) if cs.len() == 1 => Ok(cs[0].clone()),
            other => Err(format!("expected a cardinal, found `{other}`")),
        }
    }

    pub fn to_vector(&self, dim: usize) -> Result<CardVec, String> {
        let v = match self {
            ElemExpr::Tuple(cs) => CardVec(cs.clone()),
            ElemExpr::Card(c) => CardVec(vec![c.clone()]),
            other => return Err(format!("expected a vector, found `{other}`")),
        };
        if v.dim() != dim {
            return Err(format!("expected {dim} coordinates in `{self}`"));
        }
        Ok(v)
    }

    pub fn to_form(&self) -> Result<Form, String> {
        let v = self.to_vector(2)?;
        let coef = |c: &ExtCard| match c.to_u64() {
            Some(n) => Ok(Coef::Fin(n)),
            None if *c == ExtCard::aleph0() => Ok(Coef::Inf),
            None => Err(format!("form coefficients are at most aleph0, found `{c}`")),
        };
        Ok(Form::new(coef(&v.coords()[0])?, coef(&v.coords()[1])?))
    }

    pub fn to_line(&self) -> Result<LineElem, String> {
        match self {
            ElemExpr::Card(c) => c
                .finite_value()
                .map(|n| LineElem::Plain(BigRational::from_integer(BigInt::from(n.clone()))))
                .ok_or_else(|| format!("`{c}` is not a rational; use `inf`")),
            ElemExpr::Ratio(q) => Ok(LineElem::Plain(q.clone())),
            ElemExpr::Tilde(q) => Ok(LineElem::Tilde(q.clone())),
            ElemExpr::Infinity => Ok(LineElem::Infinity),
            other => Err(format!("expected a rational line element, found `{other}`")),
        }
    }

    pub fn to_dedekind(&self, m: &DedekindMonoid) -> Result<DedekindElem, String> {
        let (rank, class) = match self {
            ElemExpr::Card(c) => (c.clone(), Vec::new()),
            ElemExpr::Classed { rank, class } => (rank.clone(), class.clone()),
            other => return Err(format!("expected a rank with optional class, found `{other}`")),
        };
        m.element(&rank, &class)
            .ok_or_else(|| format!("`{self}` is not in {}", crate::monoid::KappaMonoid::name(m)))
    }

    pub fn to_adjoined<E>(&self, base: impl Fn(&ElemExpr) -> Result<E, String>) -> Result<Adjoined<E>, String> {
        match self {
            ElemExpr::Infinity => Ok(Adjoined::Infinity),
            other => base(other).map(Adjoined::Base),
        }
    }
}

/// A family as a list of `(element, multiplicity)` pairs in written order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FamilyExpr {
    pub entries: Vec<(ElemExpr, ExtCard)>,
}

impl FamilyExpr {
    pub fn to_family<E: Clone + Ord>(
        &self,
        convert: impl Fn(&ElemExpr) -> Result<E, String>,
    ) -> Result<Family<E>, String> {
        let mut fam = Family::new();
        for (e, m) in &self.entries {
            fam.push(convert(e)?, m.clone());
        }
        Ok(fam)
    }
}

impl fmt::Display for FamilyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("fam { }");
        }
        let parts: Vec<String> = self.entries.iter().map(|(e, m)| format!("{e} * {m}")).collect();
        write!(f, "fam {{ {} }}", parts.join(", "))
    }
}

/// Any value the language can describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Monoid(MonoidExpr),
    Family(FamilyExpr),
    Vector(CardVec),
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Monoid(m) => m.fmt(f),
            Ast::Family(fam) => fam.fmt(f),
            Ast::Vector(v) => v.fmt(f),
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, pos: usize, message: String) -> ParseError {
        let t = &self.toks[pos];
        ParseError {
            line: t.line,
            column: t.column,
            message,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message.into())
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn keyword(&mut self, w: &str) -> Result<(), ParseError> {
        if matches!(self.peek(), Tok::Word(x) if x == w) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn finish<T>(&mut self, value: T) -> Result<T, ParseError> {
        match self.peek() {
            Tok::End => Ok(value),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn u64(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = s
                    .parse()
                    .map_err(|_| self.error(format!("number `{s}` is too large")))?;
                self.next();
                Ok(v)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn card(&mut self) -> Result<ExtCard, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.next();
                Ok(ExtCard::finite(
                    BigUint::parse_bytes(s.as_bytes(), 10).unwrap_or_default(),
                ))
            }
            Tok::Word(w) if w.to_ascii_lowercase().starts_with("aleph") => {
                let c = w.parse().map_err(|e| self.error(format!("{e}")))?;
                self.next();
                Ok(c)
            }
            _ => Err(self.unexpected("a cardinal")),
        }
    }

    fn ratio(&mut self) -> Result<BigRational, ParseError> {
        let start = self.pos;
        let num = BigInt::from(self.u64()?);
        let den = if self.eat_sym('/') {
            BigInt::from(self.u64()?)
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(self.error_at(start, "zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }

    fn monoid(&mut self) -> Result<MonoidExpr, ParseError> {
        let start = self.pos;
        let word = match self.peek().clone() {
            Tok::Word(w) => w,
            _ => return Err(self.unexpected("a monoid")),
        };
        match word.as_str() {
            "N0" => {
                self.next();
                let dim = if self.eat_sym('^') { self.u64()? as usize } else { 1 };
                if dim == 0 {
                    return Err(self.error_at(start, "dimension must be positive".into()));
                }
                Ok(MonoidExpr::Naturals { dim })
            }
            "dio" => self.dio().map(MonoidExpr::Dio),
            "cmn" => {
                self.next();
                self.sym('(')?;
                let tail = self.u64()?;
                self.sym(',')?;
                let at = self.pos;
                let period = self.u64()?;
                if period == 0 {
                    return Err(self.error_at(at, "period must be positive".into()));
                }
                self.sym(')')?;
                Ok(MonoidExpr::Cmn { tail, period })
            }
            "trivial" => {
                self.next();
                self.sym('(')?;
                let at = self.pos;
                let base = self.monoid()?;
                if !matches!(
                    base,
                    MonoidExpr::Naturals { .. } | MonoidExpr::Dio(_) | MonoidExpr::Cmn { .. }
                ) {
                    return Err(self.error_at(at, "the base must be N0^k, dio or cmn".into()));
                }
                self.sym(')')?;
                Ok(MonoidExpr::Trivial(Box::new(base)))
            }
            "qline" => {
                self.next();
                Ok(MonoidExpr::QLine)
            }
            "dedekind" => {
                self.next();
                self.sym('(')?;
                self.keyword("G")?;
                self.sym('=')?;
                let mut factors = Vec::new();
                loop {
                    let at = self.pos;
                    let d = self.u64()?;
                    if d == 0 {
                        return Err(self.error_at(at, "invariant factors must be positive".into()));
                    }
                    factors.push(d);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.sym(')')?;
                Ok(MonoidExpr::Dedekind { factors })
            }
            "hnp" => {
                self.next();
                self.sym('(')?;
                self.keyword("c")?;
                self.sym('=')?;
                let mut weights = vec![self.ratio()?];
                while self.eat_sym(',') {
                    weights.push(self.ratio()?);
                }
                self.sym(')')?;
                Ok(MonoidExpr::Hnp { weights })
            }
            "twogen" => self.twogen().map(MonoidExpr::TwoGen),
            _ => Err(self.error(format!("unknown monoid `{word}`"))),
        }
    }

    fn dio(&mut self) -> Result<ConstraintSystem, ParseError> {
        self.keyword("dio")?;
        self.keyword("n")?;
        self.sym('=')?;
        let dim = self.u64()? as usize;
        self.sym('{')?;
        let mut sys = ConstraintSystem::free(dim);
        while !self.eat_sym('}') {
            let at = self.pos;
            let kind = match self.peek().clone() {
                Tok::Word(w) if ["eq", "ineq", "cong"].contains(&w.as_str()) => w,
                _ => return Err(self.unexpected("`eq`, `ineq`, `cong` or `}`")),
            };
            self.next();
            self.sym(':')?;
            let lhs = self.dio_linear(dim)?;
            let added = match kind.as_str() {
                "eq" => {
                    self.sym('=')?;
                    let rhs = self.dio_linear(dim)?;
                    sys.equation(lhs, rhs)
                }
                "ineq" => {
                    if *self.peek() != Tok::Le {
                        return Err(self.unexpected("`<=`"));
                    }
                    self.next();
                    let rhs = self.dio_linear(dim)?;
                    sys.inequality(lhs, rhs)
                }
                _ => {
                    self.keyword("in")?;
                    let m = self.pos;
                    let d = self.u64()?;
                    if d == 0 {
                        return Err(self.error_at(m, "modulus must be positive".into()));
                    }
                    self.keyword("N")?;
                    sys.congruence(lhs, d)
                }
            };
            sys = added.map_err(|e| self.error_at(at, e.to_string()))?;
            self.sym(';')?;
        }
        Ok(sys)
    }

    fn dio_linear(&mut self, dim: usize) -> Result<Vec<u64>, ParseError> {
        let mut coefs = vec![0u64; dim];
        loop {
            let at = self.pos;
            let c = match self.peek() {
                Tok::Num(_) => {
                    let c = self.u64()?;
                    self.eat_sym('*');
                    Some(c)
                }
                _ => None,
            };
            match self.peek().clone() {
                Tok::Word(w) if w.starts_with('x') => {
                    let var: usize = w[1..].parse().map_err(|_| self.error(format!("bad variable `{w}`")))?;
                    if var >= dim {
                        return Err(self.error(format!("variable `{w}` out of range for n={dim}")));
                    }
                    self.next();
                    coefs[var] = coefs[var].saturating_add(c.unwrap_or(1));
                }
                _ if c == Some(0) => {}
                _ if c.is_some() => {
                    return Err(self.error_at(at, "constants must be 0 in homogeneous constraints".into()))
                }
                _ => return Err(self.unexpected("a term like `2 x0`")),
            }
            if !self.eat_sym('+') {
                return Ok(coefs);
            }
        }
    }

    fn coef(&mut self) -> Result<Coef, ParseError> {
        let at = self.pos;
        let c = self.card()?;
        match c.to_u64() {
            Some(n) => Ok(Coef::Fin(n)),
            None if c == ExtCard::aleph0() => Ok(Coef::Inf),
            None => Err(self.error_at(at, format!("coefficient `{c}` exceeds aleph0"))),
        }
    }

    fn form_linear(&mut self) -> Result<Form, ParseError> {
        let mut form = Form::ZERO;
        loop {
            let at = self.pos;
            let c = match self.peek() {
                Tok::Num(_) | Tok::Word(_) if !matches!(self.peek(), Tok::Word(w) if w == "X1" || w == "X2") => {
                    let c = self.coef()?;
                    Some(c)
                }
                _ => None,
            };
            let has_var = match c {
                Some(_) => self.eat_sym('*'),
                None => true,
            };
            if has_var {
                let k = match self.peek() {
                    Tok::Word(w) if w == "X1" => Form::X1,
                    Tok::Word(w) if w == "X2" => Form::X2,
                    _ => return Err(self.unexpected("`X1` or `X2`")),
                };
                self.next();
                form = form + k.scale(c.unwrap_or(Coef::ONE));
            } else if c != Some(Coef::ZERO) {
                return Err(self.error_at(at, "a term needs a generator, as in `2*X1`".into()));
            }
            if !self.eat_sym('+') {
                return Ok(form);
            }
        }
    }

    fn twogen(&mut self) -> Result<TwoGenPresentation, ParseError> {
        self.keyword("twogen")?;
        self.sym('{')?;
        let mut p = TwoGenPresentation::free();
        while !self.eat_sym('}') {
            self.keyword("rel")?;
            self.sym(':')?;
            let l = self.form_linear()?;
            self.sym('=')?;
            let r = self.form_linear()?;
            self.sym(';')?;
            p = p.relation(l, r);
        }
        Ok(p)
    }

    fn tuple(&mut self) -> Result<Vec<ExtCard>, ParseError> {
        self.sym('(')?;
        let mut out = Vec::new();
        if self.eat_sym(')') {
            return Ok(out);
        }
        loop {
            out.push(self.card()?);
            if self.eat_sym(')') {
                return Ok(out);
            }
            self.sym(',')?;
        }
    }

    fn element(&mut self) -> Result<ElemExpr, ParseError> {
        match self.peek().clone() {
            Tok::Sym('(') => self.tuple().map(ElemExpr::Tuple),
            Tok::Sym('~') => {
                self.next();
                let at = self.pos;
                let q = self.ratio()?;
                if q.is_zero() {
                    return Err(self.error_at(at, "tilded values must be positive".into()));
                }
                Ok(ElemExpr::Tilde(q))
            }
            Tok::Word(w) if w == "inf" => {
                self.next();
                Ok(ElemExpr::Infinity)
            }
            Tok::Num(_) if *self.peek_at(1) == Tok::Sym('/') => {
                let q = self.ratio()?;
                Ok(if q.is_integer() {
                    ElemExpr::Card(ExtCard::finite(q.to_integer().magnitude().clone()))
                } else {
                    ElemExpr::Ratio(q)
                })
            }
            _ => {
                let rank = self.card()?;
                if !self.eat_sym('[') {
                    return Ok(ElemExpr::Card(rank));
                }
                let mut class = Vec::new();
                if !self.eat_sym(']') {
                    loop {
                        class.push(self.u64()?);
                        if self.eat_sym(']') {
                            break;
                        }
                        self.sym(',')?;
                    }
                }
                Ok(ElemExpr::Classed { rank, class })
            }
        }
    }

    fn family(&mut self) -> Result<FamilyExpr, ParseError> {
        self.keyword("fam")?;
        self.sym('{')?;
        let mut fam = FamilyExpr::default();
        while !self.eat_sym('}') {
            let e = self.element()?;
            let m = if self.eat_sym('*') {
                self.card()?
            } else {
                ExtCard::one()
            };
            fam.entries.push((e, m));
            if !self.eat_sym(',') {
                self.sym('}')?;
                break;
            }
        }
        Ok(fam)
    }
}

pub fn parse_monoid(text: &str) -> Result<MonoidExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let m = p.monoid()?;
    p.finish(m)
}

pub fn parse_family(text: &str) -> Result<FamilyExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.family()?;
    p.finish(f)
}

pub fn parse_presentation(text: &str) -> Result<TwoGenPresentation, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.twogen()?;
    p.finish(t)
}

pub fn parse_vector(text: &str) -> Result<CardVec, ParseError> {
    let mut p = Parser::new(text)?;
    let v = match p.peek() {
        Tok::Sym('(') => CardVec(p.tuple()?),
        _ => CardVec(vec![p.card()?]),
    };
    p.finish(v)
}

pub fn parse_element(text: &str) -> Result<ElemExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.element()?;
    p.finish(e)
}

pub fn parse_form(text: &str) -> Result<Form, ParseError> {
    let e = parse_element(text)?;
    e.to_form().map_err(|message| ParseError {
        line: 1,
        column: 1,
        message,
    })
}

/// Parses a monoid, a family (`fam { .. }`) or a vector (`( .. )`).
pub fn parse_dsl(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser::new(text)?;
    let ast = match p.peek() {
        Tok::Word(w) if w == "fam" => Ast::Family(p.family()?),
        Tok::Sym('(') => Ast::Vector(CardVec(p.tuple()?)),
        _ => Ast::Monoid(p.monoid()?),
    };
    p.finish(ast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn vectors() {
        let v = parse_vector("(aleph0, 3)").unwrap();
        assert_eq!(v, CardVec(vec![ExtCard::aleph0(), 3u64.into()]));
        assert_eq!(parse_vector(" 5 ").unwrap().dim(), 1);
    }

    #[test]
    fn families() {
        let f = parse_family("fam { (1,0)*aleph0 }").unwrap();
        assert_eq!(
            f.entries,
            vec![(ElemExpr::Tuple(vec![1u64.into(), 0u64.into()]), ExtCard::aleph0())]
        );
        let g = parse_family("fam {1*aleph0}").unwrap();
        assert_eq!(g.entries[0].0.to_card().unwrap(), ExtCard::one());
        let h = parse_family("fam { ~1/2, 3/4 * 2, 4/2, inf, 2[1,0] * aleph1, }").unwrap();
        assert_eq!(h.entries.len(), 5);
        assert_eq!(h.entries[2].0, ElemExpr::Card(2u64.into()));
        assert_eq!(parse_family("fam { }").unwrap().entries.len(), 0);
    }

    #[test]
    fn constraint_systems() {
        let MonoidExpr::Dio(sys) = parse_monoid("dio n=1 { cong: 2 x0 in 3N; }").unwrap() else {
            panic!("not a dio monoid");
        };
        assert_eq!(sys.congruences(), &[(vec![2], 3)]);
        let MonoidExpr::Dio(sys) =
            parse_monoid("dio n=2 { eq: 2 x0 = x0 + x1; ineq: x0 <= 3 x1; cong: x0 + 2*x1 in 3N; }").unwrap()
        else {
            panic!("not a dio monoid");
        };
        assert_eq!(sys.equations(), &[(vec![2, 0], vec![1, 1])]);
        assert_eq!(sys.inequalities(), &[(vec![1, 0], vec![0, 3])]);
        assert_eq!(
            sys.to_string(),
            "dio n=2 { eq: 2 x0 = x0 + x1; ineq: x0 <= 3 x1; cong: x0 + 2 x1 in 3N; }"
        );
    }

    #[test]
    fn gallery_names() {
        for s in [
            "N0",
            "N0^3",
            "cmn(2,3)",
            "trivial(dio n=1 { })",
            "trivial(cmn(1,2))",
            "qline",
            "dedekind(G=2,2)",
            "hnp(c=1,1/2)",
            "twogen { rel: 1*X1 + aleph0*X2 = aleph0*X2; rel: 2*X1 = 1*X2; }",
        ] {
            assert_eq!(parse_monoid(s).unwrap().to_string(), s);
        }
        let p = parse_presentation("twogen { rel: X1 + aleph0*X2 = aleph0 * X2; rel: 0 = 0; }").unwrap();
        assert_eq!(p.relations()[0].0, Form::new(Coef::ONE, Coef::Inf));
        assert_eq!(p.relations()[1], (Form::ZERO, Form::ZERO));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_monoid("dio n=2 {\n  eq: x0 = x5;\n}").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(e.message.contains("out of range"), "{e}");
        let e = parse_family("fam { (1,0) * aleph0 ").unwrap_err();
        assert_eq!((e.line, e.column), (1, 22));
        let e = parse_monoid("cmn(2, 0)").unwrap_err();
        assert_eq!(e.column, 8);
        let e = parse_monoid("dio n=1 { eq: x0 = 3; }").unwrap_err();
        assert!(e.message.contains("homogeneous"), "{e}");
        assert!(parse_monoid("trivial(qline)").is_err());
        assert!(parse_vector("(1, 2) extra").is_err());
        assert_eq!(parse_vector("(1 # 2)").unwrap_err().column, 4);
        assert!(parse_presentation("twogen { rel: aleph1*X1 = 0; }").is_err());
    }

    #[test]
    fn conversions() {
        let d = DedekindMonoid::new(vec![2, 2], ExtCard::aleph_raw(1)).unwrap();
        let e = parse_element("2[1,0]").unwrap();
        assert_eq!(
            e.to_dedekind(&d).unwrap(),
            DedekindElem::Finite {
                rank: 2,
                class: vec![1, 0]
            }
        );
        assert!(parse_element("0[1,0]").unwrap().to_dedekind(&d).is_err());
        assert_eq!(parse_element("~3/2").unwrap().to_line().unwrap(), LineElem::tilde(3, 2));
        assert_eq!(parse_form("(aleph0, 2)").unwrap(), Form::new(Coef::Inf, Coef::Fin(2)));
        assert!(parse_form("(aleph1, 2)").is_err());
        assert!(parse_element("(1,2)").unwrap().to_vector(3).is_err());
    }

    fn card() -> impl Strategy<Value = ExtCard> {
        prop_oneof![
            (0u64..50).prop_map(ExtCard::from),
            (0u32..3).prop_map(ExtCard::aleph_raw)
        ]
    }

    fn ratio() -> impl Strategy<Value = BigRational> {
        (1u64..40, 1u64..9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn element() -> impl Strategy<Value = ElemExpr> {
        prop_oneof![
            card().prop_map(ElemExpr::Card),
            proptest::collection::vec(card(), 0..4).prop_map(ElemExpr::Tuple),
            ratio().prop_filter_map("integral", |q| (!q.is_integer()).then_some(ElemExpr::Ratio(q))),
            ratio().prop_map(ElemExpr::Tilde),
            (card(), proptest::collection::vec(0u64..5, 0..3))
                .prop_map(|(rank, class)| ElemExpr::Classed { rank, class }),
            Just(ElemExpr::Infinity),
        ]
    }

    fn linear(dim: usize) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..4, dim)
    }

    fn system() -> impl Strategy<Value = ConstraintSystem> {
        (1usize..4).prop_flat_map(|dim| {
            (
                proptest::collection::vec((linear(dim), linear(dim)), 0..3),
                proptest::collection::vec((linear(dim), linear(dim)), 0..2),
                proptest::collection::vec((linear(dim), 1u64..6), 0..2),
            )
                .prop_map(move |(eqs, ineqs, congs)| {
                    let mut s = ConstraintSystem::free(dim);
                    for (a, b) in eqs {
                        s = s.equation(a, b).unwrap();
                    }
                    for (a, b) in ineqs {
                        s = s.inequality(a, b).unwrap();
                    }
                    for (a, d) in congs {
                        s = s.congruence(a, d).unwrap();
                    }
                    s
                })
        })
    }

    fn monoid() -> impl Strategy<Value = MonoidExpr> {
        let leaf = prop_oneof![
            (1usize..4).prop_map(|dim| MonoidExpr::Naturals { dim }),
            system().prop_map(MonoidExpr::Dio),
            (0u64..5, 1u64..5).prop_map(|(tail, period)| MonoidExpr::Cmn { tail, period }),
        ];
        prop_oneof![
            leaf.clone(),
            leaf.prop_map(|b| MonoidExpr::Trivial(Box::new(b))),
            Just(MonoidExpr::QLine),
            proptest::collection::vec(1u64..6, 1..4).prop_map(|factors| MonoidExpr::Dedekind { factors }),
            proptest::collection::vec(ratio(), 1..4).prop_map(|weights| MonoidExpr::Hnp { weights }),
            crate::presentations::tests_support::presentation().prop_map(MonoidExpr::TwoGen),
        ]
    }

    fn ast() -> impl Strategy<Value = Ast> {
        prop_oneof![
            monoid().prop_map(Ast::Monoid),
            proptest::collection::vec((element(), card()), 0..4)
                .prop_map(|entries| Ast::Family(FamilyExpr { entries })),
            proptest::collection::vec(card(), 0..4).prop_map(|v| Ast::Vector(CardVec(v))),
        ]
    }

    proptest! {
        #[test]
        fn rendering_round_trips(a in ast()) {
            let text = a.to_string();
            let back = parse_dsl(&text);
            prop_assert_eq!(back.as_ref(), Ok(&a), "{}", text);
        }
    }
}

//! A small expression language over cycles.
//!
//! ```text
//! expr := term { "+" term }
//! term := ext { "." ext }
//! ext  := atom { "x" atom }
//! atom := "1" | "h" | "h^" int | "l_" int | "l'_" int | "(" expr ")"
//!       | "rho(" int "," int [ "," int ] ")" | "delta(" int "," int ")"
//!       | "diag()" | "prim(" int [ ";" [ bits ] ] ")" | "zero(" int ")"
//!       | "sym(" expr ")" | "cyc[" ints "](" expr ")"
//!       | "S^" int "@" ( int | "all" ) "(" expr ")"
//!       | "pull[" ints "](" expr ")" | "push[" ints "](" expr ")"
//!       | "compose[" int "](" expr "," expr ")" | "act(" expr "," expr ")"
//!       | "deg(" expr ")" | "eqmodnoness(" expr "," expr ")"
//! ```
//!
//! Slot numbers are 1-based. `x` is always the external product operator,
//! so whitespace is optional. `compose[b](a, c)` composes the correspondence
//! `a` followed by `c` through `b` middle factors, and `act(a, y)` applies a
//! correspondence to a cycle on the first factor.

use std::fmt;

use thiserror::Error;

use crate::classes::{delta, diagonal, primordial, rho, PrimordialSpec};
use crate::cycle::Cycle;
use crate::error::CalcError;
use crate::perm::Permutation;
use crate::quadric::{BasisClass, QuadricContext};
use crate::steenrod::{rho_ijl, steenrod, SteenrodQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotSpec {
    /// 1-based slot.
    Slot(usize),
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    HPow(u32),
    L(u32),
    LPrime(u32),
    Rho(u32, u32),
    RhoIjl(u32, u32, u32),
    Delta(u32, u32),
    Diag,
    /// `None` means all coefficients zero.
    Primordial {
        i1: u32,
        coeffs: Option<Vec<bool>>,
    },
    Zero(usize),
    Sym(Box<Expr>),
    /// Sum over the cyclic group generated by a 1-based permutation.
    SubgroupSum(Vec<usize>, Box<Expr>),
    External(Vec<Expr>),
    Mul(Vec<Expr>),
    Add(Vec<Expr>),
    Steenrod {
        l: u32,
        target: SlotSpec,
        expr: Box<Expr>,
    },
    /// Generalized diagonal pullback; entry `k` is the 1-based target slot
    /// of source slot `k`.
    PullDiag(Vec<usize>, Box<Expr>),
    /// Projection forgetting the listed 1-based slots.
    PushForget(Vec<usize>, Box<Expr>),
    Compose(usize, Box<Expr>, Box<Expr>),
    Act(Box<Expr>, Box<Expr>),
    Deg(Box<Expr>),
    EqModNoness(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Type {
    Cycle(usize),
    Bit,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Cycle(r) => write!(f, "cycle on X^{r}"),
            Type::Bit => f.write_str("bit"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Cycle(Cycle),
    Degree(bool),
    Truth(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Cycle(c) => write!(f, "{c}"),
            Value::Degree(b) => write!(f, "{}", u8::from(*b)),
            Value::Truth(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Parse { line: usize, col: usize, expected: Vec<String>, found: String },
    #[error("type error at {path}: {message}")]
    Type { path: String, message: String },
    #[error("evaluation error at {path}: {source}")]
    Eval { path: String, source: CalcError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    X,
    Plus,
    Dot,
    Caret,
    At,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Underscore,
    Prime,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", punct(other)),
        }
    }
}

fn punct(t: &Tok) -> &'static str {
    match t {
        Tok::X => "x",
        Tok::Plus => "+",
        Tok::Dot => ".",
        Tok::Caret => "^",
        Tok::At => "@",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::Comma => ",",
        Tok::Semi => ";",
        Tok::Underscore => "_",
        Tok::Prime => "'",
        _ => "",
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (tl, tc) = (line, col);
        let advance = |k: &mut usize, col: &mut usize, by: usize| {
            *k += by;
            *col += by;
        };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut k, &mut col, 1);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            col += k - start;
            let v = digits.parse().map_err(|_| ExprError::Parse {
                line: tl,
                col: tc,
                expected: vec!["a smaller integer".into()],
                found: digits.clone(),
            })?;
            out.push(Spanned { tok: Tok::Int(v), line: tl, col: tc });
            continue;
        } else if c == 'x' {
            Tok::X
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() && chars[k] != 'x' {
                k += 1;
            }
            col += k - start;
            out.push(Spanned { tok: Tok::Ident(chars[start..k].iter().collect()), line: tl, col: tc });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '.' => Tok::Dot,
                '^' => Tok::Caret,
                '@' => Tok::At,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '_' => Tok::Underscore,
                '\'' => Tok::Prime,
                _ => {
                    return Err(ExprError::Parse {
                        line: tl,
                        col: tc,
                        expected: vec!["a token".into()],
                        found: format!("`{c}`"),
                    })
                }
            }
        };
        out.push(Spanned { tok, line: tl, col: tc });
        advance(&mut k, &mut col, 1);
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const ATOM_START: &[&str] = &[
    "`1`",
    "`h`",
    "`l`",
    "`(`",
    "`rho`",
    "`delta`",
    "`diag`",
    "`prim`",
    "`zero`",
    "`sym`",
    "`cyc`",
    "`S`",
    "`pull`",
    "`push`",
    "`compose`",
    "`act`",
    "`deg`",
    "`eqmodnoness`",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let t = &self.toks[self.pos];
        ExprError::Parse {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{}`", punct(&t))]))
        }
    }

    fn int(&mut self) -> Result<u64, ExprError> {
        match self.peek() {
            &Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["an integer"])),
        }
    }

    fn small<T: TryFrom<u64>>(&mut self) -> Result<T, ExprError> {
        let at = self.pos;
        let v = self.int()?;
        T::try_from(v).map_err(|_| {
            self.pos = at;
            self.error(&["a smaller integer"])
        })
    }

    fn int_list(&mut self) -> Result<Vec<usize>, ExprError> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.small()?];
        while self.eat(&Tok::Comma) {
            out.push(self.small()?);
        }
        if !self.eat(&Tok::RBracket) {
            return Err(self.error(&["`,`", "`]`"]));
        }
        Ok(out)
    }

    fn paren_expr(&mut self) -> Result<Expr, ExprError> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn paren_pair(&mut self) -> Result<(Expr, Expr), ExprError> {
        self.expect(Tok::LParen)?;
        let a = self.expr()?;
        self.expect(Tok::Comma)?;
        let b = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok((a, b))
    }

    fn paren_ints(&mut self, min: usize, max: usize) -> Result<Vec<u32>, ExprError> {
        self.expect(Tok::LParen)?;
        let mut out = vec![self.small()?];
        while out.len() < max && self.eat(&Tok::Comma) {
            out.push(self.small()?);
        }
        if out.len() < min {
            return Err(self.error(&["`,`"]));
        }
        if !self.eat(&Tok::RParen) {
            return Err(self.error(if out.len() < max { &["`,`", "`)`"] } else { &["`)`"] }));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.term()?];
        while self.eat(&Tok::Plus) {
            terms.push(self.term()?);
        }
        Ok(collapse(terms, Expr::Add))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.ext()?];
        while self.eat(&Tok::Dot) {
            factors.push(self.ext()?);
        }
        Ok(collapse(factors, Expr::Mul))
    }

    fn ext(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.atom()?];
        while self.eat(&Tok::X) {
            factors.push(self.atom()?);
        }
        Ok(collapse(factors, Expr::External))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let name = match self.peek().clone() {
            Tok::LParen => return self.paren_expr(),
            Tok::Int(1) => {
                self.bump();
                return Ok(Expr::HPow(0));
            }
            Tok::Ident(name) => name,
            _ => return Err(self.error(ATOM_START)),
        };
        self.bump();
        let boxed = |e: Expr| Box::new(e);
        Ok(match name.as_str() {
            "h" => {
                if self.eat(&Tok::Caret) {
                    Expr::HPow(self.small()?)
                } else {
                    Expr::HPow(1)
                }
            }
            "l" => {
                let prime = self.eat(&Tok::Prime);
                if !self.eat(&Tok::Underscore) {
                    return Err(self.error(if prime { &["`_`"] } else { &["`_`", "`'`"] }));
                }
                let j = self.small()?;
                if prime {
                    Expr::LPrime(j)
                } else {
                    Expr::L(j)
                }
            }
            "S" => {
                self.expect(Tok::Caret)?;
                let l = self.small()?;
                self.expect(Tok::At)?;
                let target = match self.bump() {
                    Tok::Int(s) => SlotSpec::Slot(s as usize),
                    Tok::Ident(s) if s == "all" => SlotSpec::All,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error(&["a slot number", "`all`"]));
                    }
                };
                Expr::Steenrod { l, target, expr: boxed(self.paren_expr()?) }
            }
            "rho" => {
                let v = self.paren_ints(2, 3)?;
                if v.len() == 2 {
                    Expr::Rho(v[0], v[1])
                } else {
                    Expr::RhoIjl(v[0], v[1], v[2])
                }
            }
            "delta" => {
                let v = self.paren_ints(2, 2)?;
                Expr::Delta(v[0], v[1])
            }
            "diag" => {
                self.expect(Tok::LParen)?;
                self.expect(Tok::RParen)?;
                Expr::Diag
            }
            "zero" => Expr::Zero(self.paren_ints(1, 1)?[0] as usize),
            "prim" => {
                self.expect(Tok::LParen)?;
                let i1 = self.small()?;
                let coeffs = if self.eat(&Tok::Semi) {
                    let mut bits = Vec::new();
                    if let Tok::Int(_) = self.peek() {
                        bits.push(self.bit()?);
                        while self.eat(&Tok::Comma) {
                            bits.push(self.bit()?);
                        }
                    }
                    Some(bits)
                } else {
                    None
                };
                if !self.eat(&Tok::RParen) {
                    return Err(self.error(if coeffs.is_some() { &["`,`", "`)`"] } else { &["`;`", "`)`"] }));
                }
                Expr::Primordial { i1, coeffs }
            }
            "sym" => Expr::Sym(boxed(self.paren_expr()?)),
            "cyc" => {
                let perm = self.int_list()?;
                Expr::SubgroupSum(perm, boxed(self.paren_expr()?))
            }
            "pull" => {
                let map = self.int_list()?;
                Expr::PullDiag(map, boxed(self.paren_expr()?))
            }
            "push" => {
                let slots = self.int_list()?;
                Expr::PushForget(slots, boxed(self.paren_expr()?))
            }
            "compose" => {
                self.expect(Tok::LBracket)?;
                let b = self.small()?;
                self.expect(Tok::RBracket)?;
                let (a, c) = self.paren_pair()?;
                Expr::Compose(b, boxed(a), boxed(c))
            }
            "act" => {
                let (a, y) = self.paren_pair()?;
                Expr::Act(boxed(a), boxed(y))
            }
            "deg" => Expr::Deg(boxed(self.paren_expr()?)),
            "eqmodnoness" => {
                let (a, b) = self.paren_pair()?;
                Expr::EqModNoness(boxed(a), boxed(b))
            }
            _ => {
                self.pos -= 1;
                return Err(self.error(ATOM_START));
            }
        })
    }

    fn bit(&mut self) -> Result<bool, ExprError> {
        match self.peek() {
            Tok::Int(0) => {
                self.bump();
                Ok(false)
            }
            Tok::Int(1) => {
                self.bump();
                Ok(true)
            }
            _ => Err(self.error(&["`0`", "`1`"])),
        }
    }
}

fn collapse(mut items: Vec<Expr>, wrap: fn(Vec<Expr>) -> Expr) -> Expr {
    if items.len() == 1 {
        items.pop().expect("one item")
    } else {
        wrap(items)
    }
}

/// Parse an expression; errors carry line, column and expected tokens.
pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`+`", "`.`", "`x`", "end of input"]));
    }
    Ok(e)
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl Expr {
    fn label(&self) -> &'static str {
        match self {
            Expr::HPow(_) | Expr::L(_) | Expr::LPrime(_) => "atom",
            Expr::Rho(..) | Expr::RhoIjl(..) => "rho",
            Expr::Delta(..) => "delta",
            Expr::Diag => "diag",
            Expr::Primordial { .. } => "prim",
            Expr::Zero(_) => "zero",
            Expr::Sym(_) => "sym",
            Expr::SubgroupSum(..) => "cyc",
            Expr::External(_) => "ext",
            Expr::Mul(_) => "mul",
            Expr::Add(_) => "add",
            Expr::Steenrod { .. } => "steenrod",
            Expr::PullDiag(..) => "pull",
            Expr::PushForget(..) => "push",
            Expr::Compose(..) => "compose",
            Expr::Act(..) => "act",
            Expr::Deg(_) => "deg",
            Expr::EqModNoness(..) => "eqmodnoness",
        }
    }

    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Sym(e)
            | Expr::SubgroupSum(_, e)
            | Expr::Steenrod { expr: e, .. }
            | Expr::PullDiag(_, e)
            | Expr::PushForget(_, e)
            | Expr::Deg(e) => vec![e],
            Expr::Compose(_, a, b) | Expr::Act(a, b) | Expr::EqModNoness(a, b) => vec![a, b],
            Expr::External(v) | Expr::Mul(v) | Expr::Add(v) => v.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// Arity check of the whole tree, independent of the quadric.
    pub fn type_check(&self) -> Result<Type, ExprError> {
        self.check_at(self.label())
    }

    fn check_at(&self, path: &str) -> Result<Type, ExprError> {
        let fail = |message: String| Err(ExprError::Type { path: path.to_owned(), message });
        let children = self.children();
        let mut types = Vec::with_capacity(children.len());
        for (k, c) in children.iter().enumerate() {
            let sub =
                if children.len() == 1 { format!("{path}/{}", c.label()) } else { format!("{path}/{k}:{}", c.label()) };
            types.push(c.check_at(&sub)?);
        }
        let arity = |t: &Type| match t {
            Type::Cycle(r) => Some(*r),
            Type::Bit => None,
        };
        let arities: Option<Vec<usize>> = types.iter().map(arity).collect();
        let Some(ar) = arities else {
            return fail("a bit cannot be used as a cycle".into());
        };
        let slots_ok = |v: &[usize], r: usize| v.iter().all(|&s| (1..=r).contains(&s));
        Ok(Type::Cycle(match self {
            Expr::HPow(_) | Expr::L(_) | Expr::LPrime(_) => 1,
            Expr::Rho(i, _) | Expr::Delta(i, _) => *i as usize + 1,
            Expr::RhoIjl(i, _, _) => *i as usize,
            Expr::Diag | Expr::Primordial { .. } => 2,
            Expr::Zero(r) => {
                if *r == 0 {
                    return fail("zero() needs a positive arity".into());
                }
                *r
            }
            Expr::Sym(_) => ar[0],
            Expr::SubgroupSum(perm, _) => {
                if perm.len() != ar[0] {
                    return fail(format!("permutation of {} slots applied to arity {}", perm.len(), ar[0]));
                }
                let mut seen = perm.clone();
                seen.sort_unstable();
                if seen != (1..=ar[0]).collect::<Vec<_>>() {
                    return fail(format!("[{}] is not a permutation of 1..{}", list(perm), ar[0]));
                }
                ar[0]
            }
            Expr::External(_) => ar.iter().sum(),
            Expr::Mul(_) | Expr::Add(_) => {
                if let Some(r) = ar.iter().find(|&&r| r != ar[0]) {
                    return fail(format!("arity mismatch: {} vs {r}", ar[0]));
                }
                ar[0]
            }
            Expr::Steenrod { target, .. } => {
                if let SlotSpec::Slot(s) = target {
                    if !slots_ok(&[*s], ar[0]) {
                        return fail(format!("slot {s} out of range 1..{}", ar[0]));
                    }
                }
                ar[0]
            }
            Expr::PullDiag(map, _) => {
                if map.len() != ar[0] {
                    return fail(format!("slot map of length {} applied to arity {}", map.len(), ar[0]));
                }
                let target = map.iter().copied().max().unwrap_or(0);
                if !(1..=target).all(|t| map.contains(&t)) || map.contains(&0) {
                    return fail(format!("[{}] is not a surjection onto 1..{target}", list(map)));
                }
                target
            }
            Expr::PushForget(slots, _) => {
                let mut distinct = slots.clone();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() != slots.len() || !slots_ok(slots, ar[0]) {
                    return fail(format!("[{}] are not distinct slots in 1..{}", list(slots), ar[0]));
                }
                if slots.len() == ar[0] {
                    return fail("cannot forget every slot; use deg".into());
                }
                ar[0] - slots.len()
            }
            Expr::Compose(b, _, _) => {
                let (l, r) = (ar[0], ar[1]);
                if *b == 0 || l < *b || r < *b || l + r == 2 * b {
                    return fail(format!("cannot compose arities {l} and {r} through {b} factors"));
                }
                l + r - 2 * b
            }
            Expr::Act(_, _) => {
                if ar[0] < 2 || ar[1] != 1 {
                    return fail(format!(
                        "act needs a correspondence of arity >= 2 and a cycle on X, got {} and {}",
                        ar[0], ar[1]
                    ));
                }
                ar[0] - 1
            }
            Expr::Deg(_) => return Ok(Type::Bit),
            Expr::EqModNoness(_, _) => {
                if ar[0] != ar[1] {
                    return fail(format!("arity mismatch: {} vs {}", ar[0], ar[1]));
                }
                return Ok(Type::Bit);
            }
        }))
    }

    /// Type-check, then evaluate on the given quadric.
    pub fn eval(&self, ctx: &QuadricContext) -> Result<Value, ExprError> {
        self.type_check()?;
        self.eval_at(self.label(), ctx)
    }

    fn eval_at(&self, path: &str, ctx: &QuadricContext) -> Result<Value, ExprError> {
        let wrap = |source: CalcError| ExprError::Eval { path: path.to_owned(), source };
        let children = self.children();
        let mut vals = Vec::with_capacity(children.len());
        for (k, c) in children.iter().enumerate() {
            let sub =
                if children.len() == 1 { format!("{path}/{}", c.label()) } else { format!("{path}/{k}:{}", c.label()) };
            vals.push(c.eval_at(&sub, ctx)?);
        }
        let cycles: Vec<&Cycle> = vals
            .iter()
            .filter_map(|v| match v {
                Value::Cycle(c) => Some(c),
                _ => None,
            })
            .collect();
        let basis = |b: BasisClass| ctx.validate(b).map(Cycle::basis).map_err(wrap);
        let out = match self {
            Expr::HPow(k) => Cycle::h_power(*k, ctx),
            Expr::L(j) => basis(BasisClass::L(*j))?,
            Expr::LPrime(j) => basis(BasisClass::LPrime(*j))?,
            Expr::Rho(i, j) => rho(*i, *j, ctx).map_err(wrap)?,
            Expr::RhoIjl(i, j, l) => rho_ijl(*i, *j, *l, ctx).map_err(wrap)?,
            Expr::Delta(i, j) => delta(*i, *j, ctx).map_err(wrap)?,
            Expr::Diag => diagonal(ctx),
            Expr::Primordial { i1, coeffs } => {
                let coeffs = match coeffs {
                    Some(c) => c.clone(),
                    None => vec![false; PrimordialSpec::range_len(*i1, ctx)],
                };
                let spec = PrimordialSpec::new(*i1, coeffs, ctx).map_err(wrap)?;
                primordial(&spec, ctx).map_err(wrap)?
            }
            Expr::Zero(r) => Cycle::zero(*r),
            Expr::Sym(_) => cycles[0].sym(),
            Expr::SubgroupSum(perm, _) => {
                let g = Permutation::new(perm.iter().map(|s| s - 1).collect()).map_err(wrap)?;
                cycles[0].subgroup_sum(&g).map_err(wrap)?
            }
            Expr::External(_) => cycles[1..].iter().fold(cycles[0].clone(), |acc, c| acc.external(c)),
            Expr::Mul(_) => {
                let mut acc = cycles[0].clone();
                for c in &cycles[1..] {
                    acc = acc.mul(c, ctx).map_err(wrap)?;
                }
                acc
            }
            Expr::Add(_) => {
                let mut acc = cycles[0].clone();
                for c in &cycles[1..] {
                    acc = acc.add(c).map_err(wrap)?;
                }
                acc
            }
            Expr::Steenrod { l, target, .. } => {
                let q = match target {
                    SlotSpec::Slot(s) => SteenrodQuery::slot(*l, s - 1),
                    SlotSpec::All => SteenrodQuery::all(*l),
                };
                steenrod(cycles[0], q, ctx).map_err(wrap)?
            }
            Expr::PullDiag(map, _) => {
                let map0: Vec<usize> = map.iter().map(|t| t - 1).collect();
                let target = map.iter().copied().max().unwrap_or(0);
                cycles[0].diagonal_pullback(&map0, target, ctx).map_err(wrap)?
            }
            Expr::PushForget(slots, _) => {
                let drop: Vec<usize> = slots.iter().map(|s| s - 1).collect();
                cycles[0].projection_pushforward(&drop).map_err(wrap)?
            }
            Expr::Compose(b, _, _) => Cycle::corr_compose(cycles[0], cycles[1], *b, ctx).map_err(wrap)?,
            Expr::Act(_, _) => Cycle::corr_action(cycles[0], cycles[1], ctx).map_err(wrap)?,
            Expr::Deg(_) => {
                cycles[0].validate(ctx).map_err(wrap)?;
                return Ok(Value::Degree(cycles[0].degree()));
            }
            Expr::EqModNoness(_, _) => {
                return cycles[0].equal_mod_nonessential(cycles[1], ctx).map(Value::Truth).map_err(wrap);
            }
        };
        Ok(Value::Cycle(out))
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, items: &[Expr], sep: &str, paren: fn(&Expr) -> bool) -> fmt::Result {
    for (k, e) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(sep)?;
        }
        if paren(e) {
            write!(f, "({e})")?;
        } else {
            write!(f, "{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: nested sums, products and external products keep their
/// grouping through parentheses, so printing then parsing is the identity.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::HPow(0) => f.write_str("1"),
            Expr::HPow(k) => write!(f, "h^{k}"),
            Expr::L(j) => write!(f, "l_{j}"),
            Expr::LPrime(j) => write!(f, "l'_{j}"),
            Expr::Rho(i, j) => write!(f, "rho({i},{j})"),
            Expr::RhoIjl(i, j, l) => write!(f, "rho({i},{j},{l})"),
            Expr::Delta(i, j) => write!(f, "delta({i},{j})"),
            Expr::Diag => f.write_str("diag()"),
            Expr::Primordial { i1, coeffs: None } => write!(f, "prim({i1})"),
            Expr::Primordial { i1, coeffs: Some(c) } => {
                let bits: Vec<&str> = c.iter().map(|&b| if b { "1" } else { "0" }).collect();
                write!(f, "prim({i1};{})", bits.join(","))
            }
            Expr::Zero(r) => write!(f, "zero({r})"),
            Expr::Sym(e) => write!(f, "sym({e})"),
            Expr::SubgroupSum(p, e) => write!(f, "cyc[{}]({e})", list(p)),
            Expr::Add(v) => write_joined(f, v, " + ", |e| matches!(e, Expr::Add(_))),
            Expr::Mul(v) => write_joined(f, v, " . ", |e| matches!(e, Expr::Add(_) | Expr::Mul(_))),
            Expr::External(v) => {
                write_joined(f, v, " x ", |e| matches!(e, Expr::Add(_) | Expr::Mul(_) | Expr::External(_)))
            }
            Expr::Steenrod { l, target: SlotSpec::Slot(s), expr } => write!(f, "S^{l}@{s}({expr})"),
            Expr::Steenrod { l, target: SlotSpec::All, expr } => write!(f, "S^{l}@all({expr})"),
            Expr::PullDiag(m, e) => write!(f, "pull[{}]({e})", list(m)),
            Expr::PushForget(s, e) => write!(f, "push[{}]({e})", list(s)),
            Expr::Compose(b, a, c) => write!(f, "compose[{b}]({a}, {c})"),
            Expr::Act(a, y) => write!(f, "act({a}, {y})"),
            Expr::Deg(e) => write!(f, "deg({e})"),
            Expr::EqModNoness(a, b) => write!(f, "eqmodnoness({a}, {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> QuadricContext {
        QuadricContext::new(n).unwrap()
    }

    fn eval(text: &str, n: u32) -> Value {
        parse_expr(text).unwrap().eval(&ctx(n)).unwrap()
    }

    fn cycle(text: &str, n: u32) -> Cycle {
        match eval(text, n) {
            Value::Cycle(c) => c,
            other => panic!("expected a cycle, got {other}"),
        }
    }

    #[test]
    fn parses_examples() {
        use Expr::*;
        assert_eq!(parse_expr("sym(1 x h^1 x l_0)").unwrap(), Sym(Box::new(External(vec![HPow(0), HPow(1), L(0)]))));
        assert_eq!(
            parse_expr("S^1@1(rho(2,1))").unwrap(),
            Steenrod { l: 1, target: SlotSpec::Slot(1), expr: Box::new(Rho(2, 1)) }
        );
        assert_eq!(parse_expr("1xh").unwrap(), External(vec![HPow(0), HPow(1)]));
        assert_eq!(
            parse_expr("h . l_1 x 1 + l'_3").unwrap(),
            Add(vec![Mul(vec![HPow(1), External(vec![L(1), HPow(0)])]), LPrime(3)])
        );
        assert_eq!(parse_expr("prim(2)").unwrap(), Primordial { i1: 2, coeffs: None });
        assert_eq!(parse_expr("prim(1;1,0)").unwrap(), Primordial { i1: 1, coeffs: Some(vec![true, false]) });
        assert_eq!(parse_expr("prim(3;)").unwrap(), Primordial { i1: 3, coeffs: Some(vec![]) });
    }

    #[test]
    fn parse_errors_locate_the_problem() {
        let ExprError::Parse { line, col, expected, found } = parse_expr("sym(1 x\n  h^)").unwrap_err() else {
            panic!()
        };
        assert_eq!((line, col), (2, 5));
        assert_eq!(expected, vec!["an integer".to_string()]);
        assert_eq!(found, "`)`");
        assert!(matches!(parse_expr("rho(1,2"), Err(ExprError::Parse { col: 8, .. })));
        assert!(matches!(parse_expr("foo(1)"), Err(ExprError::Parse { col: 1, .. })));
        assert!(matches!(parse_expr("l_1 l_2"), Err(ExprError::Parse { col: 5, .. })));
        assert!(matches!(parse_expr("2"), Err(ExprError::Parse { .. })));
        assert!(matches!(parse_expr("h $"), Err(ExprError::Parse { col: 3, .. })));
    }

    #[test]
    fn type_errors() {
        assert!(matches!(parse_expr("l_1 + 1 x 1").unwrap().type_check(), Err(ExprError::Type { .. })));
        assert!(matches!(parse_expr("cyc[1,2](l_1)").unwrap().type_check(), Err(ExprError::Type { .. })));
        assert!(matches!(parse_expr("push[1,2](l_1 x l_0)").unwrap().type_check(), Err(ExprError::Type { .. })));
        assert!(matches!(parse_expr("deg(l_0) x 1").unwrap().type_check(), Err(ExprError::Type { .. })));
        assert_eq!(parse_expr("pull[1,1,2](rho(2,0))").unwrap().type_check().unwrap(), Type::Cycle(2));
        assert_eq!(parse_expr("compose[1](diag(), rho(2,0))").unwrap().type_check().unwrap(), Type::Cycle(3));
        let err = parse_expr("sym(l_1 x (1 + h x 1))").unwrap().type_check().unwrap_err();
        assert!(matches!(err, ExprError::Type { ref path, .. } if path == "sym/ext/1:add"), "{err}");
    }

    #[test]
    fn evaluates_examples() {
        assert_eq!(eval("deg(l_0 x l_0)", 5), Value::Degree(true));
        assert_eq!(cycle("rho(2,1,1)", 5).to_string(), "h^2 x l_1 + l_0 x h^1");
        assert_eq!(eval("eqmodnoness(rho(1,0) + h^2 x 1, rho(1,0))", 5), Value::Truth(true));
        assert_eq!(cycle("act(diag(), l_1)", 5), cycle("l_1", 5));
        assert_eq!(cycle("act(diag() . (h^1 x 1), l_1)", 5), cycle("l_0", 5));
        assert_eq!(cycle("compose[1](rho(1,0), diag())", 5), cycle("rho(1,0)", 5));
        assert_eq!(cycle("h^2 . h", 6), cycle("l_3 + l'_3", 6));
        assert_eq!(cycle("push[2](l_1 x l_0)", 5), cycle("l_1", 5));
        assert_eq!(cycle("S^2@all(l_2 x 1)", 7), cycle("S^2@1(l_2 x 1)", 7));
    }

    #[test]
    fn eval_errors_carry_paths() {
        let err = parse_expr("sym(1 x l_7)").unwrap().eval(&ctx(5)).unwrap_err();
        assert!(matches!(err, ExprError::Eval { ref path, .. } if path == "sym/ext/1:atom"), "{err}");
        assert!(parse_expr("rho(3,0)").unwrap().eval(&ctx(5)).is_err());
    }

    #[test]
    fn print_round_trips() {
        for text in [
            "sym(1 x h^1 x l_0)",
            "(l_1 + l_2) x 1",
            "(l_1 x 1) x l_0",
            "h^1 . (h^2 . l_3)",
            "(l_1 + l_2) + l_0",
            "prim(2;1,0) + prim(1)",
            "S^1@all(cyc[2,3,1](rho(2,0)))",
            "eqmodnoness(pull[1,1,2](rho(2,1)), push[3](zero(3)))",
            "compose[1](diag(), act(delta(2,0), l'_3))",
        ] {
            let e = parse_expr(text).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{text}");
        }
        assert_eq!(parse_expr("h^0 x h").unwrap().to_string(), "1 x h^1");
    }
}

//! Expression language: AST, parser and canonical printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '(+)' | 'odot') unary)*
//! unary  := '-' unary | factor
//! factor := literal | generator | call | '(' expr ')'
//! ```

use std::fmt;

use num_traits::{One, Signed};
use qbl_core::symgroup::Block;
use qbl_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    /// Pointwise product `*`.
    Mul,
    /// Induced product `(+)`.
    Odot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    D,
    Dd,
    W,
    Moller,
}

impl UnOp {
    fn name(self) -> &'static str {
        match self {
            UnOp::D => "D",
            UnOp::Dd => "dd",
            UnOp::W => "W",
            UnOp::Moller => "moller",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    T(u32, u32),
    S(u32),
    Q(u32),
    H(u32),
    U(Vec<Block>),
    X(Vec<Block>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Unary(UnOp, Box<Expr>),
    Conn(Vec<Expr>),
    Rc(u32, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
    Odot,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Odot => write!(f, "'(+)'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().map_err(|_| ParseError {
                offset: start,
                message: "number too large".into(),
                expected: vec![],
            })?;
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            out.push((start, if word == "odot" { Tok::Odot } else { Tok::Ident(word.into()) }));
        } else if src[i..].starts_with("(+)") {
            out.push((i, Tok::Odot));
            i += 3;
        } else if b"+-*/()[],;".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(ParseError {
                offset: i,
                message: format!("unexpected character '{ch}'"),
                expected: vec![],
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

const FACTOR_START: &[&str] = &[
    "number", "'('", "'-'", "T[", "S[", "Q[", "H[", "U[", "X[", "D(", "dd(", "W(", "moller(", "conn(", "RC[",
];

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn invalid<T>(&self, offset: usize, message: String) -> Result<T, ParseError> {
        Err(ParseError { offset, message, expected: vec![] })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("'{c}'")])
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Num(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["number"]),
        }
    }

    fn index(&mut self) -> Result<u32, ParseError> {
        let at = self.offset();
        let n = self.number()?;
        u32::try_from(n)
            .ok()
            .filter(|&n| n <= 64)
            .map_or_else(|| self.invalid(at, format!("index {n} is out of range (at most 64)")), Ok)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Odot => BinOp::Odot,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(match self.unary()? {
                Expr::Lit(c) if c.is_positive() => Expr::Lit(-c),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(_) => {
                let num = self.number()?;
                let mut den = 1u64;
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let dat = self.offset();
                    den = self.number()?;
                    if den == 0 {
                        return self.invalid(dat, "zero denominator".into());
                    }
                }
                Ok(Expr::Lit(Rational::new(num.into(), den.into())))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                self.named(&name, at)
            }
            _ => self.fail(FACTOR_START),
        }
    }

    fn named(&mut self, name: &str, at: usize) -> Result<Expr, ParseError> {
        match name {
            "T" => {
                self.expect('[')?;
                let k = self.index()?;
                self.expect(',')?;
                let lat = self.offset();
                let l = self.index()?;
                self.expect(']')?;
                if l == 0 {
                    return self.invalid(lat, "T[k,l] needs l >= 1".into());
                }
                Ok(Expr::T(k, l))
            }
            "S" | "Q" | "H" => {
                self.expect('[')?;
                let kat = self.offset();
                let k = self.index()?;
                self.expect(']')?;
                match name {
                    "S" if k >= 1 => Ok(Expr::S(k)),
                    "Q" if k >= 2 => Ok(Expr::Q(k)),
                    "H" if k >= 2 && k % 2 == 0 => Ok(Expr::H(k)),
                    "S" => self.invalid(kat, "S[k] needs k >= 1".into()),
                    "Q" => self.invalid(kat, "Q[k] needs k >= 2".into()),
                    _ => self.invalid(kat, "H[k] needs even k >= 2".into()),
                }
            }
            "U" | "X" => {
                self.expect('[')?;
                let ks = self.index_list()?;
                self.expect(';')?;
                let lat = self.offset();
                let ls = self.index_list()?;
                self.expect(']')?;
                if ks.len() != ls.len() {
                    return self.invalid(lat, format!("{} exponents but {} lengths", ks.len(), ls.len()));
                }
                if ls.contains(&0) {
                    return self.invalid(lat, "block lengths must be >= 1".into());
                }
                let blocks: Vec<Block> = ks.into_iter().zip(ls).collect();
                Ok(if name == "U" { Expr::U(blocks) } else { Expr::X(blocks) })
            }
            "D" | "dd" | "W" | "moller" => {
                let op = match name {
                    "D" => UnOp::D,
                    "dd" => UnOp::Dd,
                    "W" => UnOp::W,
                    _ => UnOp::Moller,
                };
                let args = self.args()?;
                if args.len() != 1 {
                    return self.invalid(at, format!("{name} takes one argument, got {}", args.len()));
                }
                Ok(Expr::Unary(op, Box::new(args.into_iter().next().unwrap())))
            }
            "conn" => {
                let args = self.args()?;
                if args.is_empty() {
                    return self.invalid(at, "conn needs at least one argument".into());
                }
                Ok(Expr::Conn(args))
            }
            "RC" => {
                self.expect('[')?;
                let n = self.index()?;
                self.expect(']')?;
                let args = self.args()?;
                if args.len() != 2 {
                    return self.invalid(at, format!("RC takes two arguments, got {}", args.len()));
                }
                let mut it = args.into_iter();
                Ok(Expr::Rc(n, Box::new(it.next().unwrap()), Box::new(it.next().unwrap())))
            }
            _ => self.invalid(at, format!("unknown name '{name}'")),
        }
    }

    fn index_list(&mut self) -> Result<Vec<u32>, ParseError> {
        let mut out = vec![self.index()?];
        while *self.peek() == Tok::Sym(',') {
            self.bump();
            out.push(self.index()?);
        }
        Ok(out)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if *self.peek() == Tok::Sym(')') {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.peek() {
                Tok::Sym(',') => {
                    self.bump();
                }
                Tok::Sym(')') => {
                    self.bump();
                    return Ok(out);
                }
                _ => return self.fail(&["','", "')'"]),
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["'+'", "'-'", "'*'", "'(+)'", "end of input"]);
    }
    Ok(e)
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Lit(c) if c.is_negative() => 3,
        _ => 4,
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn blocks(f: &mut fmt::Formatter<'_>, head: &str, bs: &[Block]) -> fmt::Result {
    let ks: Vec<u32> = bs.iter().map(|b| b.0).collect();
    let ls: Vec<u32> = bs.iter().map(|b| b.1).collect();
    write!(f, "{head}[{};{}]", join(&ks), join(&ls))
}

fn wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// The canonical form: parsing it gives back the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(c) => {
                if c.denom().is_one() {
                    write!(f, "{}", c.numer())
                } else {
                    write!(f, "{}/{}", c.numer(), c.denom())
                }
            }
            Expr::T(k, l) => write!(f, "T[{k},{l}]"),
            Expr::S(k) => write!(f, "S[{k}]"),
            Expr::Q(k) => write!(f, "Q[{k}]"),
            Expr::H(k) => write!(f, "H[{k}]"),
            Expr::U(bs) => blocks(f, "U", bs),
            Expr::X(bs) => blocks(f, "X", bs),
            Expr::Neg(e) => {
                write!(f, "-")?;
                wrapped(f, e, precedence(e) < 3)
            }
            Expr::Bin(op, a, b) => {
                let p = precedence(self);
                wrapped(f, a, precedence(a) < p)?;
                let sym = match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Odot => " (+) ",
                };
                write!(f, "{sym}")?;
                wrapped(f, b, precedence(b) <= p)
            }
            Expr::Unary(op, e) => write!(f, "{}({e})", op.name()),
            Expr::Conn(es) => {
                write!(f, "conn(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Rc(n, a, b) => write!(f, "RC[{n}]({a},{b})"),
        }
    }
}

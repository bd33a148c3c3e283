//! A small expression language for entire functions of `z`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | 'i' | 'z' | func '(' expr ')' | '(' expr ')'
//! func    := exp | sin | cos | sinh | cosh
//! ```
//!
//! Every accepted expression is entire: exponents must be constant
//! nonnegative integers and divisors must be nonzero constants. Both rules
//! are enforced while parsing. There is no implicit multiplication.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

pub const FUNCTIONS: [&str; 5] = ["exp", "sin", "cos", "sinh", "cosh"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// The expression would not define an entire function.
    #[error("not an entire function (byte {offset}): {message}")]
    NotEntire { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}; allowed: z, i, exp, sin, cos, sinh, cosh")]
    UnknownIdentifier { offset: usize, name: String },

    #[error("evaluation overflowed to a non-finite value")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    fn apply(self, w: Complex64) -> Complex64 {
        match self {
            Func::Exp => w.exp(),
            Func::Sin => w.sin(),
            Func::Cos => w.cos(),
            Func::Sinh => w.sinh(),
            Func::Cosh => w.cosh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Nonnegative decimal literal.
    Real(f64),
    /// The imaginary unit `i`.
    ImagUnit,
    /// The variable `z`.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a nonzero constant.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        parse(src)
    }

    /// Whether the expression does not mention `z`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Real(_) | Expr::ImagUnit => true,
            Expr::Var => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, ExprError> {
        let v = match self {
            Expr::Real(v) => Complex64::new(*v, 0.0),
            Expr::ImagUnit => Complex64::i(),
            Expr::Var => z,
            Expr::Neg(a) => -a.eval(z)?,
            Expr::Add(a, b) => a.eval(z)? + b.eval(z)?,
            Expr::Sub(a, b) => a.eval(z)? - b.eval(z)?,
            Expr::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            Expr::Div(a, b) => a.eval(z)? / b.eval(z)?,
            Expr::Pow(a, k) => power(a.eval(z)?, *k),
            Expr::Call(f, a) => f.apply(a.eval(z)?),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::Overflow)
        }
    }
}

/// `w^k` by repeated squaring; `w^0 = 1` for every `w`, including 0.
fn power(w: Complex64, mut k: u32) -> Complex64 {
    let mut base = w;
    let mut acc = Complex64::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        k >>= 1;
        if k > 0 {
            base = base * base;
        }
    }
    acc
}

pub fn eval(ast: &Expr, z: Complex64) -> Result<Complex64, ExprError> {
    ast.eval(z)
}

/// Canonical, fully parenthesized form. `parse` reads it back to an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Real(v) => write!(f, "{v:?}"),
            Expr::ImagUnit => f.write_str("i"),
            Expr::Var => f.write_str("z"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(token: &Token) -> String {
    match token {
        Token::Number(v) => format!("number {v}"),
        Token::Ident(s) => format!("identifier `{s}`"),
        Token::Plus => "`+`".to_string(),
        Token::Minus => "`-`".to_string(),
        Token::Star => "`*`".to_string(),
        Token::Slash => "`/`".to_string(),
        Token::Caret => "`^`".to_string(),
        Token::LParen => "`(`".to_string(),
        Token::RParen => "`)`".to_string(),
        Token::End => "end of input".to_string(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((start, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let value: f64 = text.parse().map_err(|_| ExprError::Syntax {
                offset: start,
                message: format!("malformed number `{text}`"),
            })?;
            if !value.is_finite() {
                return Err(ExprError::Syntax {
                    offset: start,
                    message: format!("number `{text}` is out of range"),
                });
            }
            out.push((start, Token::Number(value)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(src[start..i].to_string())));
            continue;
        }
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ExprError::Syntax {
            offset: start,
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push((src.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ExprError {
        ExprError::Syntax {
            offset: self.offset(),
            message: format!("expected {wanted}, found {}", describe(self.peek())),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    let (op_offset, _) = self.bump();
                    let divisor = self.unary()?;
                    if !divisor.is_constant() {
                        return Err(ExprError::NotEntire {
                            offset: op_offset,
                            message: "division by an expression in z".into(),
                        });
                    }
                    let value = divisor.eval(Complex64::zero())?;
                    if value.is_zero() {
                        return Err(ExprError::NotEntire {
                            offset: op_offset,
                            message: "division by zero".into(),
                        });
                    }
                    lhs = Expr::Div(Box::new(lhs), Box::new(divisor));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        let (op_offset, _) = self.bump();
        let exponent = self.unary()?;
        let not_entire = |message: &str| ExprError::NotEntire {
            offset: op_offset,
            message: message.into(),
        };
        if !exponent.is_constant() {
            return Err(not_entire("exponent depends on z"));
        }
        let e = exponent.eval(Complex64::zero())?;
        if e.im != 0.0 || e.re != libm::trunc(e.re) {
            return Err(not_entire("exponent is not an integer"));
        }
        if e.re < 0.0 {
            return Err(not_entire("negative exponent"));
        }
        if e.re > u32::MAX as f64 {
            return Err(not_entire("exponent is too large"));
        }
        Ok(Expr::Pow(Box::new(base), e.re as u32))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        match self.peek().clone() {
            Token::Number(v) => {
                self.bump();
                Ok(Expr::Real(v))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Token::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "z" => Ok(Expr::Var),
                    "i" => Ok(Expr::ImagUnit),
                    _ => match Func::from_name(&name) {
                        Some(func) => {
                            if *self.peek() != Token::LParen {
                                return Err(self.unexpected("`(` after function name"));
                            }
                            self.bump();
                            let arg = self.expr()?;
                            if *self.peek() != Token::RParen {
                                return Err(self.unexpected("`)`"));
                            }
                            self.bump();
                            Ok(Expr::Call(func, Box::new(arg)))
                        }
                        None => Err(ExprError::UnknownIdentifier { offset, name }),
                    },
                }
            }
            _ => Err(self.unexpected("a number, `z`, `i`, a function or `(`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    let ast = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(ast)
}

/// Parses a constant complex number such as `0.7+0.2*i` or `-1.5`.
pub fn parse_constant(src: &str) -> Result<Complex64, ExprError> {
    let ast = parse(src)?;
    if !ast.is_constant() {
        return Err(ExprError::Syntax {
            offset: 0,
            message: "expected a constant, found an expression in z".into(),
        });
    }
    ast.eval(Complex64::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn variable() {
        assert_eq!(parse("z").unwrap(), Expr::Var);
        assert_eq!(parse("  z ").unwrap().eval(c(3.0, 4.0)).unwrap(), c(3.0, 4.0));
    }

    #[test]
    fn grammar_exercise() {
        let ast = parse("exp(2*z) + (1+i)*z^3").unwrap();
        match &ast {
            Expr::Add(a, b) => {
                assert!(matches!(**a, Expr::Call(Func::Exp, _)));
                match &**b {
                    Expr::Mul(_, p) => assert_eq!(**p, Expr::Pow(Box::new(Expr::Var), 3)),
                    other => panic!("{other:?}"),
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        // -z^2 is -(z^2).
        assert_eq!(parse("-z^2").unwrap().eval(c(2.0, 0.0)).unwrap(), c(-4.0, 0.0));
        // ^ is right associative: 2^3^2 = 2^9.
        assert_eq!(parse("2^3^2").unwrap().eval(Complex64::zero()).unwrap(), c(512.0, 0.0));
        // - and / are left associative.
        assert_eq!(parse("10 - 4 - 3").unwrap().eval(Complex64::zero()).unwrap(), c(3.0, 0.0));
        assert_eq!(parse("8 / 4 / 2").unwrap().eval(Complex64::zero()).unwrap(), c(1.0, 0.0));
        assert_eq!(parse("1 + 2 * 3").unwrap().eval(Complex64::zero()).unwrap(), c(7.0, 0.0));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(parse("z^2").unwrap().eval(c(1.0, 1.0)).unwrap(), c(0.0, 2.0));
        assert_eq!(parse("exp(0*z)").unwrap().eval(c(17.0, -3.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(parse("z^0").unwrap().eval(Complex64::zero()).unwrap(), c(1.0, 0.0));
        assert_eq!(parse("z/2").unwrap().eval(c(3.0, 1.0)).unwrap(), c(1.5, 0.5));
    }

    #[test]
    fn entirety_violations() {
        assert!(matches!(parse("1/z"), Err(ExprError::NotEntire { offset: 1, .. })));
        assert!(matches!(parse("z/(1-1)"), Err(ExprError::NotEntire { .. })));
        assert!(matches!(parse("z^-1"), Err(ExprError::NotEntire { .. })));
        assert!(matches!(parse("z^0.5"), Err(ExprError::NotEntire { .. })));
        assert!(matches!(parse("z^z"), Err(ExprError::NotEntire { .. })));
        assert!(matches!(parse("z^i"), Err(ExprError::NotEntire { .. })));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(parse("2z"), Err(ExprError::Syntax { offset: 1, .. })));
        assert!(matches!(parse("2i"), Err(ExprError::Syntax { offset: 1, .. })));
        assert!(matches!(parse("(z + 1"), Err(ExprError::Syntax { offset: 6, .. })));
        assert!(matches!(parse(""), Err(ExprError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("z $ 1"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("exp z"), Err(ExprError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("1e999"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn unknown_identifier_lists_whitelist() {
        let err = parse("log(z)").unwrap_err();
        assert!(matches!(&err, ExprError::UnknownIdentifier { offset: 0, name } if name == "log"));
        assert!(err.to_string().contains("exp, sin, cos, sinh, cosh"));
    }

    #[test]
    fn overflow_is_reported() {
        let ast = parse("exp(exp(z))").unwrap();
        assert_eq!(ast.eval(c(10.0, 0.0)), Err(ExprError::Overflow));
    }

    #[test]
    fn printer_round_trips() {
        for src in ["z", "-z^2", "exp(2*z) + (1+i)*z^3", "z^2 + 0.3*i", "cosh(z)/(2+i) - 1e-7"] {
            let ast = parse(src).unwrap();
            assert_eq!(parse(&ast.to_string()).unwrap(), ast, "{src} -> {ast}");
        }
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("0.7+0.2*i").unwrap(), c(0.7, 0.2));
        assert_eq!(parse_constant("-1.5").unwrap(), c(-1.5, 0.0));
        assert!(parse_constant("z").is_err());
    }
}

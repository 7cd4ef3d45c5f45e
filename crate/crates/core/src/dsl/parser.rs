//! Recursive-descent parser for the curve language.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" unary)?
//! atom    := number | "t" | "pi" | param | func "(" expr ("," expr)* ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-t^2`
//! is `-(t^2)`. A minus applied directly to a numeric literal is folded
//! into the literal.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ast::{Expr, Func};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => alloc::format!("number {}", v),
            Tok::Ident(s) => alloc::format!("identifier `{}`", s),
            Tok::Plus => "`+`".to_owned(),
            Tok::Minus => "`-`".to_owned(),
            Tok::Star => "`*`".to_owned(),
            Tok::Slash => "`/`".to_owned(),
            Tok::Caret => "`^`".to_owned(),
            Tok::LParen => "`(`".to_owned(),
            Tok::RParen => "`)`".to_owned(),
            Tok::Comma => "`,`".to_owned(),
            Tok::End => "end of input".to_owned(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
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
                let lit = &text[start..i];
                let value: f64 = lit.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    expected: vec!["number".to_owned()],
                    found: alloc::format!("`{}`", lit),
                })?;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_owned()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: vec!["number".to_owned(), "identifier".to_owned(), "operator".to_owned()],
                    found: alloc::format!("`{}`", ch),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const OPERAND: [&str; 4] = ["number", "identifier", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| (*s).to_owned()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[label]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(match self.unary()? {
                Expr::Num(v) => Expr::Num(-v),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let (_, at) = self.bump();
                if *self.peek() == Tok::LParen {
                    let func = Func::from_name(&name)
                        .ok_or_else(|| ParseError::UnknownFunction { name: name.clone(), offset: at })?;
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    if args.len() != func.arity() {
                        return Err(ParseError::ArityMismatch {
                            name,
                            expected: func.arity(),
                            found: args.len(),
                            offset: at,
                        });
                    }
                    return Ok(Expr::Call(func, args));
                }
                if Func::from_name(&name).is_some() {
                    return Err(self.unexpected(&["`(`"]));
                }
                Ok(match name.as_str() {
                    "t" => Expr::Var,
                    "pi" => Expr::Pi,
                    _ => Expr::Param(name),
                })
            }
            _ => Err(self.unexpected(&OPERAND)),
        }
    }
}

/// Parse curve-language text into an expression tree.
///
/// Every identifier other than `t`, `pi` and the function names is a
/// parameter; see [`Expr::params`].
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn square_and_ellipse_parse() {
        let sq = parse("min(1/abs(sin(t)), 1/abs(cos(t)))").unwrap();
        assert!(matches!(sq, Expr::Call(Func::Min, _)));
        let el = parse("(cos(t)^2/a^2 + sin(t)^2/b^2)^(-1/2)").unwrap();
        let params: Vec<String> = el.params().into_iter().collect();
        assert_eq!(params, ["a", "b"]);
    }

    #[test]
    fn syntax_error_offset() {
        match parse("1 + * 2") {
            Err(ParseError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 4);
                assert!(expected.iter().any(|e| e == "number"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-t^2").unwrap().to_string(), "-t^2");
        assert!(matches!(parse("-t^2").unwrap(), Expr::Neg(_)));
        assert!(matches!(parse("2^3^2").unwrap(), Expr::Pow(_, ref e) if matches!(**e, Expr::Pow(..))));
        assert!(matches!(parse("1 - 2 - 3").unwrap(), Expr::Sub(ref a, _) if matches!(**a, Expr::Sub(..))));
        assert_eq!(parse("2^-1").unwrap(), Expr::Pow(Box::new(Expr::Num(2.0)), Box::new(Expr::Num(-1.0))));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(matches!(parse("2t"), Err(ParseError::Syntax { offset: 1, .. })));
    }

    #[test]
    fn function_errors() {
        assert!(matches!(parse("tan(t)"), Err(ParseError::UnknownFunction { ref name, offset: 0 }) if name == "tan"));
        assert!(matches!(
            parse("1 + min(t)"),
            Err(ParseError::ArityMismatch { expected: 2, found: 1, offset: 4, .. })
        ));
        assert!(matches!(parse("sin + 1"), Err(ParseError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("(t"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("t $ 1"), Err(ParseError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn print_reparse_examples() {
        for src in [
            "min(1/abs(sin(t)), 1/abs(cos(t)))",
            "(cos(t)^2/a^2 + sin(t)^2/b^2)^(-1/2)",
            "1 - (2 - t)",
            "(-2)^2 + --t",
            "t*-3 - -0.5",
            "(t^2)^3 / (t*t)",
            "ifle(t, 1, sign(t), 2e-7)",
        ] {
            let e = parse(src).unwrap();
            let again = parse(&e.to_string()).unwrap();
            assert_eq!(e, again, "{} -> {}", src, e);
        }
    }
}

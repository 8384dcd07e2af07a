use super::{Func, Node};
use crate::error::{Error, Result};

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
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            let (t, at) = lx.next()?;
            let eof = t == Tok::Eof;
            out.push((t, at));
            if eof {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::Eof, start));
        };
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self
                .src
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
            return Ok((Tok::Ident(name), start));
        }
        Err(Error::Syntax {
            offset: start,
            message: format!("unexpected character {:?}", c as char),
        })
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize)> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(Error::Syntax {
                offset: start,
                message: "malformed number".into(),
            });
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("malformed number {text:?}"),
        })?;
        if !v.is_finite() {
            return Err(Error::Syntax {
                offset: start,
                message: format!("number {text} is out of range"),
            });
        }
        Ok((Tok::Num(v), start))
    }
}

pub(super) struct Parser<'n> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'n [String],
}

impl<'n> Parser<'n> {
    pub(super) fn parse(src: &str, names: &'n [String]) -> Result<Node> {
        let toks = Lexer::tokens(src)?;
        let mut p = Parser { toks, pos: 0, names };
        if p.peek() == &Tok::Eof {
            return Err(Error::Syntax {
                offset: 0,
                message: "empty expression".into(),
            });
        }
        let node = p.expr()?;
        if p.peek() != &Tok::Eof {
            return Err(p.unexpected());
        }
        Ok(node)
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> Error {
        let message = match self.peek() {
            Tok::Eof => "unexpected end of input".to_string(),
            t => format!("unexpected token {t:?}"),
        };
        Error::Syntax {
            offset: self.offset(),
            message,
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == &t {
            self.bump();
            Ok(())
        } else {
            Err(Error::Syntax {
                offset: self.offset(),
                message: format!("expected {t:?}"),
            })
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let make: fn(Box<Node>, Box<Node>) -> Node = match self.peek() {
                Tok::Plus => Node::Add,
                Tok::Minus => Node::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = make(Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let make: fn(Box<Node>, Box<Node>) -> Node = match self.peek() {
                Tok::Star => Node::Mul,
                Tok::Slash => Node::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = make(Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.peek() == &Tok::Minus {
            self.bump();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        // right-associative: the exponent is itself a unary-level expression
        let exponent = self.unary()?;
        let p = match exponent.fold() {
            Some(Ok(v)) if v.is_finite() => v,
            Some(_) => {
                return Err(Error::Syntax {
                    offset: at,
                    message: "exponent does not evaluate to a finite constant".into(),
                })
            }
            None => return Err(Error::VariableExponent { offset: at }),
        };
        Ok(Node::Pow(Box::new(base), p))
    }

    fn primary(&mut self) -> Result<Node> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Node::Const(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some(f) = Func::from_name(&name) {
                    if self.peek() != &Tok::LParen {
                        return Err(Error::Syntax {
                            offset: self.offset(),
                            message: format!("expected '(' after {name}"),
                        });
                    }
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Node::Call(f, Box::new(arg)));
                }
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Node::Var(i)),
                    None => Err(Error::UnknownIdentifier { name, offset: at }),
                }
            }
            Tok::Eof => Err(Error::Syntax {
                offset: at,
                message: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                offset: at,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

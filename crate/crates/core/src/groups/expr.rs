use std::fmt;

use crate::error::{Error, Result};

/// Elementary-type group expressions.
///
/// Text syntax: `Zp`, `F(n)`, `D(d)`, `(e1 * e2)` for free products,
/// `(A(m) x e)` for the semidirect product with `Z_p^m`, and `(e1 x e2)` for
/// a direct product of two expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Zp,
    Free(usize),
    Demushkin(usize),
    FreeProduct(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect(usize, Box<GroupExpr>),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Zp => write!(f, "Zp"),
            GroupExpr::Free(n) => write!(f, "F({n})"),
            GroupExpr::Demushkin(d) => write!(f, "D({d})"),
            GroupExpr::FreeProduct(a, b) => write!(f, "({a} * {b})"),
            GroupExpr::Semidirect(m, e) => write!(f, "(A({m}) x {e})"),
            GroupExpr::Product(a, b) => write!(f, "({a} x {b})"),
        }
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

enum Operand {
    Abelian(usize),
    Group(GroupExpr),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "expected a number".into(),
            })
    }

    fn call(&mut self) -> Result<usize> {
        self.expect(b'(')?;
        let n = self.number()?;
        self.expect(b')')?;
        Ok(n)
    }

    fn operand(&mut self) -> Result<Operand> {
        match self.peek() {
            Some(b'(') => Ok(Operand::Group(self.expr()?)),
            Some(b'Z') => {
                if self.src[self.pos..].starts_with(b"Zp") {
                    self.pos += 2;
                    Ok(Operand::Group(GroupExpr::Zp))
                } else {
                    Err(self.error("expected 'Zp'"))
                }
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(Operand::Group(GroupExpr::Free(self.call()?)))
            }
            Some(b'D') => {
                self.pos += 1;
                let at = self.pos;
                let d = self.call()?;
                if d % 2 == 1 {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("Demushkin rank must be even, got {d}"),
                    });
                }
                Ok(Operand::Group(GroupExpr::Demushkin(d)))
            }
            Some(b'A') => {
                self.pos += 1;
                let m = self.call()?;
                if m == 0 {
                    return Err(self.error("abelian rank must be positive"));
                }
                Ok(Operand::Abelian(m))
            }
            _ => Err(self.error("expected a group expression")),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        if self.peek() != Some(b'(') {
            return match self.operand()? {
                Operand::Group(g) => Ok(g),
                Operand::Abelian(_) => Err(self.error("A(m) is only allowed as '(A(m) x e)'")),
            };
        }
        self.pos += 1;
        let left = self.operand()?;
        let op = self.peek();
        let out = match (op, left) {
            (Some(b'*'), Operand::Group(a)) => {
                self.pos += 1;
                GroupExpr::FreeProduct(Box::new(a), Box::new(self.expr()?))
            }
            (Some(b'x'), Operand::Abelian(m)) => {
                self.pos += 1;
                GroupExpr::Semidirect(m, Box::new(self.expr()?))
            }
            (Some(b'x'), Operand::Group(a)) => {
                self.pos += 1;
                GroupExpr::Product(Box::new(a), Box::new(self.expr()?))
            }
            (Some(b')'), Operand::Group(a)) => a,
            _ => return Err(self.error("expected '*' or 'x'")),
        };
        self.expect(b')')?;
        Ok(out)
    }
}

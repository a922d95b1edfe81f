//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' UINT)?
//! atom   := 'S' | "S'" | 'I' | 'D(' NAME ')' | 'F(' NAME ')' | REAL
//!         | 'q(' REAL ',' REAL ',' REAL ',' REAL ')' | '(' expr ')'
//! ```

use super::{Diagonal, Env, Expr, Patch};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

pub fn parse_expr(text: &str, env: &Env) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, env };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    env: &'a Env,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat(b'+') {
                e = e.add(self.term()?);
            } else if self.eat(b'-') {
                e = e.sub(self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        while self.eat(b'*') {
            e = e.mul(self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr> {
        let a = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an unsigned integer exponent"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
            let n: u32 = digits.parse().map_err(|_| Error::Syntax { offset: start, message: "exponent too large".into() })?;
            return Ok(a.pow(n));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        match c {
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            b'S' => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'\'') {
                    self.pos += 1;
                    Ok(Expr::AdjShift)
                } else {
                    Ok(Expr::Shift)
                }
            }
            b'I' => {
                self.pos += 1;
                Ok(Expr::Identity)
            }
            b'D' | b'F' if self.src.get(self.pos + 1) == Some(&b'(') => {
                self.pos += 2;
                let name = self.name()?;
                self.expect(b')')?;
                if c == b'D' {
                    let d = self.env.diagonals.get(&name).ok_or_else(|| Error::UnknownName(name.clone()))?;
                    Ok(Expr::diagonal(Diagonal { name: Some(name), prefix: d.prefix.clone(), limit: d.limit }))
                } else {
                    let p = self.env.patches.get(&name).ok_or_else(|| Error::UnknownName(name.clone()))?;
                    let pairs = p.pairs.iter().map(|pr| (pr.u.clone(), pr.v.clone())).collect();
                    Ok(Expr::patch(Patch { name: Some(name), pairs }))
                }
            }
            b'q' if self.src.get(self.pos + 1) == Some(&b'(') => {
                self.pos += 2;
                let mut q = [0.0; 4];
                for (k, slot) in q.iter_mut().enumerate() {
                    if k > 0 {
                        self.expect(b',')?;
                    }
                    *slot = self.real(true)?;
                }
                self.expect(b')')?;
                Ok(Expr::scalar(Quaternion::from_array(q)))
            }
            b'0'..=b'9' | b'.' => Ok(Expr::real(self.real(false)?)),
            _ => Err(self.error(&format!("unexpected `{}`", c as char))),
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.error("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn real(&mut self, signed: bool) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let at = |p: &Self, k: usize| p.src.get(k).copied();
        let mut k = self.pos;
        if signed && matches!(at(self, k), Some(b'+' | b'-')) {
            k += 1;
        }
        let digits_start = k;
        while at(self, k).is_some_and(|c| c.is_ascii_digit()) {
            k += 1;
        }
        let mut ndigits = k - digits_start;
        if at(self, k) == Some(b'.') {
            k += 1;
            let f = k;
            while at(self, k).is_some_and(|c| c.is_ascii_digit()) {
                k += 1;
            }
            ndigits += k - f;
        }
        if ndigits == 0 {
            return Err(self.error("expected a number"));
        }
        if matches!(at(self, k), Some(b'e' | b'E')) {
            let mut e = k + 1;
            if matches!(at(self, e), Some(b'+' | b'-')) {
                e += 1;
            }
            let es = e;
            while at(self, e).is_some_and(|c| c.is_ascii_digit()) {
                e += 1;
            }
            if e > es {
                k = e;
            }
        }
        self.pos = k;
        let s = std::str::from_utf8(&self.src[start..k]).unwrap_or_default();
        s.parse().map_err(|_| Error::Syntax { offset: start, message: format!("invalid number `{s}`") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Env {
        Env::from_json(
            r#"{"diagonals": {"d1": {"prefix": [[0,1,0,0]], "limit": [1,0,0,0]}},
                "patches": {"p1": {"pairs": [{"u": {"support": [0], "values": [[1,0,0,0]]},
                                              "v": {"support": [1], "values": [[0,0,1,0]]}}]}}}"#,
        )
        .unwrap()
    }

    #[test]
    fn parses_powers() {
        let e = parse_expr("S^3", &Env::default()).unwrap();
        assert_eq!(e, Expr::Shift.pow(3));
        assert_eq!(e.bands(), (3, 0));
    }

    #[test]
    fn parses_products_with_names() {
        let e = parse_expr("S * (I + F(p1))", &env()).unwrap();
        let Expr::Product(a, b) = e else { panic!("expected a product") };
        assert_eq!(*a, Expr::Shift);
        assert!(matches!(*b, Expr::Sum(..)));
        assert!(parse_expr("D(d1) - S'", &env()).is_ok());
    }

    #[test]
    fn parses_scalars() {
        assert_eq!(parse_expr("2.5", &Env::default()).unwrap(), Expr::real(2.5));
        assert_eq!(parse_expr("1e-2*S", &Env::default()).unwrap(), Expr::real(0.01).mul(Expr::Shift));
        assert_eq!(
            parse_expr("q(0, -1, 0.5, 2e0)", &Env::default()).unwrap(),
            Expr::scalar(Quaternion::new(0.0, -1.0, 0.5, 2.0))
        );
    }

    #[test]
    fn precedence() {
        let e = parse_expr("S + S' * S^2", &Env::default()).unwrap();
        assert_eq!(e, Expr::Shift.add(Expr::AdjShift.mul(Expr::Shift.pow(2))));
    }

    #[test]
    fn reports_offsets() {
        let err = parse_expr("S + * I", &Env::default()).unwrap_err();
        assert!(matches!(err, Error::Syntax { offset: 4, .. }), "{err:?}");
        assert!(matches!(parse_expr("S S", &Env::default()), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("(S", &Env::default()), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("S^", &Env::default()), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("", &Env::default()), Err(Error::Syntax { offset: 0, .. })));
        assert_eq!(parse_expr("D(nope)", &env()), Err(Error::UnknownName("nope".into())));
    }
}

//! Recursive-descent parser for polynomial map definitions such as
//! `f(x,y) = (x*y, x^2 + 3/2*y)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coord, Poly, PolyMap};
use crate::scalars::Q;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(num_bigint::BigInt),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: l0, col: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        if "()+-*/^,=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn def(&mut self) -> Result<Vec<Poly>> {
        self.ident()?;
        self.expect('(')?;
        loop {
            let t = self.peek().clone();
            let v = self.ident()?;
            if self.vars.contains(&v) {
                return Err(Error::Syntax { line: t.line, col: t.col, msg: format!("duplicate argument `{v}`") });
            }
            self.vars.push(v);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        self.expect('=')?;
        let out = self.vec()?;
        if self.peek().tok != Tok::End {
            return self.err("trailing input");
        }
        Ok(out)
    }

    /// A parenthesised list is a vector; a single parenthesised expression
    /// followed by an operator is an ordinary expression.
    fn vec(&mut self) -> Result<Vec<Poly>> {
        let save = self.pos;
        if self.eat('(') {
            let first = self.expr()?;
            if self.eat(',') {
                let mut items = vec![first];
                loop {
                    items.push(self.expr()?);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                return Ok(items);
            }
            self.pos = save;
        }
        Ok(vec![self.expr()?])
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek().tok == Tok::Sym('/') {
                let t = self.next();
                let d = self.factor()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(Q::one() / c)),
                    Some(_) => {
                        return Err(Error::NonPolynomial { line: t.line, col: t.col, msg: "division by zero".into() })
                    }
                    None => {
                        return Err(Error::NonPolynomial {
                            line: t.line,
                            col: t.col,
                            msg: "division by a non-constant expression".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.eat('^') {
            let t = self.peek().clone();
            match t.tok {
                Tok::Int(n) => {
                    self.next();
                    let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                        line: t.line,
                        col: t.col,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                Tok::Sym('-') => {
                    Err(Error::NonPolynomial { line: t.line, col: t.col, msg: "negative exponent".into() })
                }
                _ => self.err("expected a natural-number exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.next();
                Ok(Poly::constant(Q::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.next();
                if self.peek().tok == Tok::Sym('(') {
                    return Err(Error::NonPolynomial {
                        line: t.line,
                        col: t.col,
                        msg: format!("function application `{name}(…)` is not polynomial"),
                    });
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Poly::var(i as u32)),
                    None => Err(Error::UnknownIdent { name, line: t.line, col: t.col }),
                }
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.next();
                Ok(self.factor()?.neg())
            }
            _ => self.err("expected a number, a variable or `(`"),
        }
    }
}

/// Parses a definition. Inputs and outputs are labelled as the components of
/// `v0`.
pub fn parse(src: &str) -> Result<PolyMap> {
    let mut p = Parser { toks: lex(src)?, pos: 0, vars: Vec::new() };
    let comps = p.def()?;
    let dom = (0..p.vars.len()).map(|k| Coord::vc(0, k as u16)).collect();
    let cod = (0..comps.len()).map(|k| Coord::vc(0, k as u16)).collect();
    Ok(PolyMap::new(dom, cod, comps))
}

/// Parses a vector `(e_1, …, e_k)` over the given coordinates, named as they
/// print (`v0`, `t12`, …). Outputs are labelled by `cod`.
pub fn parse_vector(src: &str, dom: &[Coord], cod: &[Coord]) -> Result<PolyMap> {
    let show = crate::poly::show_comps(dom);
    let vars = dom.iter().map(|c| c.name(show)).collect();
    let mut p = Parser { toks: lex(src)?, pos: 0, vars };
    let comps = p.vec()?;
    if p.peek().tok != Tok::End {
        return p.err("unexpected input after the vector");
    }
    if comps.len() != cod.len() {
        return Err(Error::Shape(format!("expected {} components, got {}", cod.len(), comps.len())));
    }
    Ok(PolyMap::new(dom.to_vec(), cod.to_vec(), comps))
}

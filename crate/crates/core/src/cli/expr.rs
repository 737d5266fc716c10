use num_bigint::BigInt;

use crate::freealg::{pow, tensor2, Gen, NCPoly, Names, Rational, Tensor2, Word};

use super::lexer::{Spanned, Tok};
use super::ParseError;

/// Recursive-descent parser over a token slice.
pub struct ExprParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    names: &'a Names,
    /// Position reported when input runs out.
    end: (usize, usize),
}

impl<'a> ExprParser<'a> {
    pub fn new(toks: &'a [Spanned], names: &'a Names, end: (usize, usize)) -> Self {
        ExprParser { toks, pos: 0, names, end }
    }

    pub fn names_len(&self) -> usize {
        self.names.len()
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, msg)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        self.pos += 1;
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    pub fn generator(&mut self) -> Result<Gen, ParseError> {
        let here = self.here();
        let name = self.ident()?;
        self.names
            .position(&name)
            .map(|i| Gen(i as u16))
            .ok_or_else(|| ParseError::new(here.0, here.1, format!("undeclared generator `{name}`")))
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn atom(&mut self) -> Result<NCPoly, ParseError> {
        match self.peek() {
            Some(Tok::Num(_)) => {
                let n = self.number()?;
                if self.eat(&Tok::Slash) {
                    let here = self.here();
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return Err(ParseError::new(here.0, here.1, "division by zero"));
                    }
                    return Ok(NCPoly::constant(Rational::new(n, d)));
                }
                Ok(NCPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(_)) => Ok(NCPoly::from_key(Word::letter(self.generator()?))),
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(&Tok::RParen)?;
                Ok(p)
            }
            _ => Err(self.unexpected("a generator, number or `(`")),
        }
    }

    fn factor(&mut self) -> Result<NCPoly, ParseError> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let here = self.here();
            let e = self.number()?;
            let e: u32 = e
                .try_into()
                .ok()
                .filter(|&e| e <= 64)
                .ok_or_else(|| ParseError::new(here.0, here.1, "exponent must be at most 64"))?;
            return Ok(pow(&base, e));
        }
        Ok(base)
    }

    /// `factor ('*' factor)*`.
    pub fn product(&mut self) -> Result<NCPoly, ParseError> {
        let mut p = self.factor()?;
        while self.eat(&Tok::Star) {
            p = &p * &self.factor()?;
        }
        Ok(p)
    }

    /// A signed sum of products.
    pub fn poly(&mut self) -> Result<NCPoly, ParseError> {
        let mut sign = self.sign();
        let mut out = NCPoly::zero();
        loop {
            let t = self.product()?;
            if sign {
                out -= &t;
            } else {
                out += &t;
            }
            match self.peek() {
                Some(Tok::Plus) => sign = false,
                Some(Tok::Minus) => sign = true,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn sign(&mut self) -> bool {
        if self.eat(&Tok::Minus) {
            return true;
        }
        self.eat(&Tok::Plus);
        false
    }

    /// A signed sum of `product (x) product` terms.
    pub fn tensor(&mut self) -> Result<Tensor2, ParseError> {
        // A bare `0` is the zero tensor, which is how it renders.
        if self.peek() == Some(&Tok::Num(BigInt::from(0)))
            && !matches!(
                self.toks.get(self.pos + 1).map(|t| &t.tok),
                Some(Tok::Slash | Tok::Star | Tok::Caret | Tok::Tensor)
            )
        {
            self.pos += 1;
            return Ok(Tensor2::zero());
        }
        let mut sign = self.sign();
        let mut out = Tensor2::zero();
        loop {
            let left = self.product()?;
            self.expect(&Tok::Tensor)?;
            let right = self.product()?;
            let t = tensor2(&left, &right);
            if sign {
                out -= &t;
            } else {
                out += &t;
            }
            match self.peek() {
                Some(Tok::Plus) => sign = false,
                Some(Tok::Minus) => sign = true,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }
}

/// Parses a whole string as a polynomial in the given generators.
pub fn parse_poly(text: &str, names: &Names, line: usize, col: usize) -> Result<NCPoly, ParseError> {
    let toks = super::lexer::lex_line(text, line, col)?;
    let mut p = ExprParser::new(&toks, names, (line, col + text.chars().count()));
    let out = p.poly()?;
    if !p.at_end() {
        return Err(p.error(format!("unexpected {}", p.peek().expect("not at end").describe())));
    }
    Ok(out)
}

/// Parses a whole string as an element of `A ⊗ A`.
pub fn parse_tensor(text: &str, names: &Names, line: usize, col: usize) -> Result<Tensor2, ParseError> {
    let toks = super::lexer::lex_line(text, line, col)?;
    let mut p = ExprParser::new(&toks, names, (line, col + text.chars().count()));
    let out = p.tensor()?;
    if !p.at_end() {
        return Err(p.error(format!("unexpected {}", p.peek().expect("not at end").describe())));
    }
    Ok(out)
}

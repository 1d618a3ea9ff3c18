//! Textual dump grammar for polynomials and words:
//!
//! ```text
//! poly  := term (' + ' term)*
//! term  := coef (' · ' word)?
//! coef  := '(' gauss ')' (' λ^' int)?
//! gauss := rat | rat ' + ' rat ' i' | rat ' - ' rat ' i'
//! word  := '1' | factor ('·' factor)*
//! factor := generator-name ('^' uint)?
//! ```
//!
//! e.g. `(1/2) λ^-1 · α·β^2`. Printing is canonical (word order, then
//! λ-exponent) and `parse(print(p)) == p` on every polynomial.

use super::poly::{Coeff, NCPoly};
use super::presentation::Presentation;
use super::word::Word;
use super::AlgebraError;
use crate::scalar::{GaussianRational, PhaseScalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

pub fn fmt_word(w: &Word, p: &Presentation, f: &mut impl fmt::Write) -> fmt::Result {
    if w.is_one() {
        return write!(f, "1");
    }
    let mut first = true;
    for &(g, n) in w.pairs() {
        if !first {
            write!(f, "·")?;
        }
        first = false;
        write!(f, "{}", p.gen_name(g))?;
        if n > 1 {
            write!(f, "^{n}")?;
        }
    }
    Ok(())
}

pub fn word_to_string(w: &Word, p: &Presentation) -> String {
    let mut s = String::new();
    fmt_word(w, p, &mut s).unwrap();
    s
}

pub fn fmt_poly<C: Coeff>(poly: &NCPoly<C>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = Presentation::from_id(poly.pres());
    if poly.is_zero() {
        return write!(f, "(0)");
    }
    let mut first = true;
    for (w, c) in poly.terms() {
        for piece in c.dump_pieces() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{piece}")?;
            if !w.is_one() {
                write!(f, " · ")?;
                fmt_word(w, &p, f)?;
            } else {
                write!(f, " · 1")?;
            }
        }
    }
    Ok(())
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(self.pos, msg.to_string())
    }

    fn parse_int(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        if self.eat("-") {}
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || &self.s[start..self.pos] == "-" {
            return Err(self.err("expected integer"));
        }
        self.s[start..self.pos]
            .parse::<BigInt>()
            .map_err(|e| self.err(&e.to_string()))
    }

    fn parse_rat(&mut self) -> Result<BigRational, AlgebraError> {
        let n = self.parse_int()?;
        if self.eat("/") {
            let d = self.parse_int()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn parse_gauss(&mut self) -> Result<GaussianRational, AlgebraError> {
        let re = self.parse_rat()?;
        let save = self.pos;
        self.skip_ws();
        let sign = if self.eat("+ ") {
            1
        } else if self.eat("- ") {
            -1
        } else {
            self.pos = save;
            return Ok(GaussianRational { re, im: BigRational::zero() });
        };
        let mag = self.parse_rat()?;
        self.skip_ws();
        if !self.eat("i") {
            return Err(self.err("expected `i`"));
        }
        let im = if sign < 0 { -mag } else { mag };
        Ok(GaussianRational { re, im })
    }

    fn parse_coef(&mut self) -> Result<PhaseScalar, AlgebraError> {
        if !self.eat("(") {
            return Err(self.err("expected `(`"));
        }
        let g = self.parse_gauss()?;
        if !self.eat(")") {
            return Err(self.err("expected `)`"));
        }
        let save = self.pos;
        self.skip_ws();
        if self.eat("λ^") {
            let k = self.parse_int()?;
            let k: i64 = k.try_into().map_err(|_| self.err("λ exponent out of range"))?;
            Ok(PhaseScalar::term(k, g))
        } else {
            self.pos = save;
            Ok(PhaseScalar::from_gaussian(g))
        }
    }

    fn parse_gen(&mut self, p: &Presentation) -> Result<super::word::GenIdx, AlgebraError> {
        // Longest-match against the alphabet so `α*` is not read as `α`.
        let mut best: Option<(usize, super::word::GenIdx)> = None;
        for g in 0..p.num_gens() {
            let name = p.gen_name(g as u8);
            if self.rest().starts_with(name) && best.map_or(true, |(l, _)| name.len() > l) {
                best = Some((name.len(), g as u8));
            }
        }
        match best {
            Some((len, g)) => {
                self.pos += len;
                Ok(g)
            }
            None => Err(self.err("expected generator name")),
        }
    }

    fn parse_word(&mut self, p: &Presentation) -> Result<Word, AlgebraError> {
        if self.eat("1") {
            return Ok(Word::one());
        }
        let mut pairs = Vec::new();
        loop {
            let g = self.parse_gen(p)?;
            let n = if self.eat("^") {
                let n = self.parse_int()?;
                u32::try_from(n).map_err(|_| self.err("power out of range"))?
            } else {
                1
            };
            pairs.push((g, n));
            if !self.eat("·") {
                break;
            }
        }
        Ok(Word::from_pairs(pairs))
    }
}

/// Parses a word in the dump grammar.
pub fn parse_word(s: &str, p: &Presentation) -> Result<Word, AlgebraError> {
    let mut cur = Cursor::new(s.trim());
    let w = cur.parse_word(p)?;
    if !cur.rest().is_empty() {
        return Err(cur.err("trailing input"));
    }
    Ok(w)
}

/// Parses a polynomial in the dump grammar over the given presentation.
/// Parsed words are renormalized, so fixtures stay valid even if written
/// in unreduced form.
pub fn parse_poly(s: &str, p: &Presentation) -> Result<NCPoly<PhaseScalar>, AlgebraError> {
    let mut cur = Cursor::new(s.trim());
    let mut out = NCPoly::<PhaseScalar>::zero(p);
    if cur.eat("(0)") && cur.rest().is_empty() {
        return Ok(out);
    }
    cur.pos = 0;
    loop {
        let c = cur.parse_coef()?;
        cur.skip_ws();
        let w = if cur.eat("· ") {
            cur.parse_word(p)?
        } else {
            Word::one()
        };
        out = out.add(&NCPoly::from_word(p, &w, c));
        let save = cur.pos;
        cur.skip_ws();
        if !cur.eat("+ ") {
            cur.pos = save;
            break;
        }
        cur.skip_ws();
    }
    if !cur.rest().is_empty() {
        return Err(cur.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_simple() {
        let p = Presentation::sphere_theta();
        let a = NCPoly::<PhaseScalar>::generator(&p, 0);
        let b = NCPoly::<PhaseScalar>::generator(&p, 2);
        let x = a
            .mul(&b, &p)
            .unwrap()
            .scale(&PhaseScalar::term(-1, GaussianRational::from_ratio(1, 2)))
            .add(&NCPoly::constant(&p, PhaseScalar::from_ratio(3, 4)));
        let s = x.to_string();
        let y = parse_poly(&s, &p).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn parse_example_form() {
        let p = Presentation::sphere_theta();
        let x = parse_poly("(1/2) λ^-1 · α·β^2", &p).unwrap();
        assert_eq!(x.num_terms(), 1);
        assert_eq!(x.to_string(), "(1/2) λ^-1 · α·β^2");
    }

    #[test]
    fn parse_gaussian_forms() {
        let p = Presentation::torus_theta();
        for s in ["(1/2 + 3/4 i) · u", "(0 + 1 i) λ^2 · v·u", "(-2) · 1"] {
            let x = parse_poly(s, &p).unwrap();
            let y = parse_poly(&x.to_string(), &p).unwrap();
            assert_eq!(x, y);
        }
    }
}

//! Parser for the `gens ...; rels ...;` presentation format.
//!
//! Words are products of factors separated by whitespace or `*`. A factor is a
//! generator name, `1`, a parenthesised word, or a left-normed commutator
//! `[x,y,...]`, optionally raised to an integer power `^n`, `^-n` or `^(-n)`.
//! A relation `u = v = w` contributes the relators `u v^-1` and `v w^-1`.
//! `#` starts a comment running to the end of the line.

use super::{commutator, invert_word, GroupSpec, Letter, SpecMeta, Word};
use crate::error::{Error, Result};

pub fn parse_presentation(text: &str) -> Result<GroupSpec> {
    let mut p = Parser {
        src: text,
        pos: 0,
        gens: Vec::new(),
    };
    p.file()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    gens: Vec<String>,
}

fn syntax<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        offset,
        message: message.into(),
    })
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if is_ident_start(c) => {}
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if is_ident_char(c)) {
            self.bump();
        }
        Some((start, &self.src[start..self.pos]))
    }

    fn file(&mut self) -> Result<GroupSpec> {
        let mut relators = Vec::new();
        let mut seen_gens = false;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            if self.eat(';') {
                continue;
            }
            let (off, kw) = match self.ident() {
                Some(t) => t,
                None => return syntax(self.pos, "expected `gens` or `rels`"),
            };
            match kw {
                "gens" => {
                    if seen_gens {
                        return syntax(off, "duplicate `gens` section");
                    }
                    seen_gens = true;
                    self.gen_list()?;
                }
                "rels" => {
                    if !seen_gens {
                        return syntax(off, "`rels` before `gens`");
                    }
                    self.rel_list(&mut relators)?;
                }
                _ => return syntax(off, format!("unknown section `{kw}`")),
            }
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(';') => {
                    self.bump();
                }
                Some(_) => return syntax(self.pos, "expected `;`"),
            }
        }
        if !seen_gens {
            return syntax(self.pos, "missing `gens` section");
        }
        Ok(GroupSpec {
            generators: std::mem::take(&mut self.gens),
            relators,
            meta: SpecMeta::default(),
        })
    }

    fn gen_list(&mut self) -> Result<()> {
        loop {
            let (off, name) = match self.ident() {
                Some(t) => t,
                None => return syntax(self.pos, "expected generator name"),
            };
            if self.gens.iter().any(|g| g == name) {
                return syntax(off, format!("duplicate generator `{name}`"));
            }
            self.gens.push(name.to_string());
            if !self.eat(',') {
                return Ok(());
            }
        }
    }

    fn rel_list(&mut self, out: &mut Vec<Word>) -> Result<()> {
        self.skip_ws();
        if matches!(self.peek(), None | Some(';')) {
            return Ok(());
        }
        loop {
            self.relation(out)?;
            if !self.eat(',') {
                return Ok(());
            }
        }
    }

    fn relation(&mut self, out: &mut Vec<Word>) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        let mut sides = vec![self.word()?];
        while self.eat('=') {
            sides.push(self.word()?);
        }
        if sides.len() == 1 && sides[0].is_empty() && self.pos == start {
            return syntax(start, "expected relator");
        }
        if sides.len() == 1 {
            out.push(sides.pop().unwrap());
        } else {
            for pair in sides.windows(2) {
                let mut w = pair[0].clone();
                w.extend(invert_word(&pair[1]));
                out.push(w);
            }
        }
        Ok(())
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                }
                Some(c) if is_ident_start(c) || c == '(' || c == '[' || c == '1' => {
                    w.extend(self.factor()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        self.skip_ws();
        let start = self.pos;
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let e = match self.exponent() {
            Some(e) => e,
            None => return syntax(start, "malformed exponent"),
        };
        Ok(power(&base, e))
    }

    fn exponent(&mut self) -> Option<i64> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.bump();
            let e = self.integer()?;
            if !self.eat(')') {
                return None;
            }
            Some(e)
        } else {
            self.integer()
        }
    }

    fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        let v: i64 = self.src[start..self.pos].parse().ok()?;
        Some(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Word> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('1') => {
                self.bump();
                if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    return syntax(start, "unexpected number");
                }
                Ok(Vec::new())
            }
            Some('(') => {
                self.bump();
                let w = self.word()?;
                if !self.eat(')') {
                    return syntax(self.pos, "expected `)`");
                }
                Ok(w)
            }
            Some('[') => {
                self.bump();
                let mut acc = self.word()?;
                let mut parts = 1;
                while self.eat(',') {
                    let next = self.word()?;
                    acc = commutator(&acc, &next);
                    parts += 1;
                }
                if parts < 2 {
                    return syntax(start, "commutator needs at least two entries");
                }
                if !self.eat(']') {
                    return syntax(self.pos, "expected `]`");
                }
                Ok(acc)
            }
            Some(c) if is_ident_start(c) => {
                let (off, name) = self.ident().expect("checked identifier start");
                self.resolve(off, name)
            }
            _ => syntax(start, "expected generator, `(`, `[` or `1`"),
        }
    }

    /// A name that is not a generator is split greedily into generator names,
    /// so `abab` reads as `a*b*a*b` when `a` and `b` are generators.
    fn resolve(&self, off: usize, name: &str) -> Result<Word> {
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Ok(vec![Letter::new(i, false)]);
        }
        let mut out = Vec::new();
        let mut rest = name;
        while !rest.is_empty() {
            let best = self
                .gens
                .iter()
                .enumerate()
                .filter(|(_, g)| rest.starts_with(g.as_str()))
                .max_by_key(|(_, g)| g.len());
            match best {
                Some((i, g)) => {
                    out.push(Letter::new(i, false));
                    rest = &rest[g.len()..];
                }
                None => {
                    return Err(Error::UnknownGenerator {
                        name: name.to_string(),
                        offset: off,
                    })
                }
            }
        }
        Ok(out)
    }
}

fn power(base: &[Letter], e: i64) -> Word {
    let unit = if e < 0 {
        invert_word(base)
    } else {
        base.to_vec()
    };
    let mut w = Vec::with_capacity(unit.len() * e.unsigned_abs() as usize);
    for _ in 0..e.unsigned_abs() {
        w.extend_from_slice(&unit);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(g: usize) -> Letter {
        Letter::new(g, false)
    }

    #[test]
    fn abelian_shorthand() {
        let s = parse_presentation("gens a,b; rels [a,b], a^3, b^3").unwrap();
        assert_eq!(s.generators, vec!["a", "b"]);
        assert_eq!(s.relators.len(), 3);
        assert_eq!(s.relators[0], vec![l(0).inv(), l(1).inv(), l(0), l(1)]);
        assert_eq!(s.relators[1], vec![l(0); 3]);
    }

    #[test]
    fn malformed_exponent_reports_factor_offset() {
        let err = parse_presentation("gens a; rels a^(").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                offset: 13,
                message: "malformed exponent".into()
            }
        );
    }

    #[test]
    fn unknown_generator() {
        let err = parse_presentation("gens a; rels a*c").unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator { ref name, offset: 15 } if name == "c"));
    }

    #[test]
    fn equations_and_chains() {
        let s = parse_presentation("gens a,b,c; rels a^2 = b = c").unwrap();
        assert_eq!(s.relators.len(), 2);
        assert_eq!(s.relators[0], vec![l(0), l(0), l(1).inv()]);
        assert_eq!(s.relators[1], vec![l(1), l(2).inv()]);
    }

    #[test]
    fn juxtaposition_and_comments() {
        let s = parse_presentation("# dihedral\ngens a,b;\nrels a^4, b^2, (ab)^2; # done").unwrap();
        assert_eq!(s.relators[2], vec![l(0), l(1), l(0), l(1)]);
    }

    #[test]
    fn multi_character_names() {
        let s = parse_presentation("gens a,a1,b1; rels [a1,a]=b1, a^(-2)").unwrap();
        assert_eq!(
            s.relators[0],
            vec![l(1).inv(), l(0).inv(), l(1), l(0), l(2).inv()]
        );
        assert_eq!(s.relators[1], vec![l(0).inv(), l(0).inv()]);
    }

    #[test]
    fn nested_commutator_is_left_normed() {
        let s = parse_presentation("gens x,y,z; rels [x,y,z]").unwrap();
        let xy = commutator(&[l(0)], &[l(1)]);
        assert_eq!(s.relators[0], commutator(&xy, &[l(2)]));
    }

    #[test]
    fn rels_before_gens_is_an_error() {
        assert!(matches!(
            parse_presentation("rels a; gens a"),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }
}

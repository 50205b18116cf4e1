use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A catalog entry plus its parameters, e.g. `dual(gf(3))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    ZMod(u32),
    Gf(u32),
    Gf4,
    /// `K[ε]`, `ε² = 0`.
    Dual(Box<RingDescriptor>),
    /// `K + Kj`, `j² = 1`.
    Anormal(Box<RingDescriptor>),
    /// `K[x]/(xⁿ)`.
    Trunc(Box<RingDescriptor>, u32),
    Upper2(Box<RingDescriptor>),
    Mat2(Box<RingDescriptor>),
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
    Quotient(Box<RingDescriptor>, IdealSpec),
}

/// The ideal argument of `quotient(..)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealSpec {
    Radical,
    /// Two-sided ideal generated by the listed element tokens.
    Generated(Vec<String>),
}

impl RingDescriptor {
    pub fn is_field_entry(&self) -> bool {
        matches!(self, RingDescriptor::Gf(_) | RingDescriptor::Gf4)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RingDescriptor::*;
        match self {
            ZMod(n) => write!(f, "zmod({n})"),
            Gf(p) => write!(f, "gf({p})"),
            Gf4 => write!(f, "gf(4)"),
            Dual(k) => write!(f, "dual({k})"),
            Anormal(k) => write!(f, "anormal({k})"),
            Trunc(k, n) => write!(f, "trunc({k},{n})"),
            Upper2(k) => write!(f, "upper2({k})"),
            Mat2(k) => write!(f, "mat2({k})"),
            Product(a, b) => write!(f, "product({a},{b})"),
            Quotient(r, IdealSpec::Radical) => write!(f, "quotient({r},rad)"),
            Quotient(r, IdealSpec::Generated(gens)) => {
                write!(f, "quotient({r},ideal({}))", gens.join(","))
            }
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let d = p.descriptor()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(d)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        let id = &self.rest()[..len];
        self.pos += len;
        Ok(id)
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.error("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn descriptor(&mut self) -> Result<RingDescriptor> {
        use RingDescriptor::*;
        let name = self.ident()?;
        self.eat('(')?;
        let d = match name {
            "zmod" => ZMod(self.number()?),
            "gf" => match self.number()? {
                4 => Gf4,
                p => Gf(p),
            },
            "dual" => Dual(Box::new(self.descriptor()?)),
            "anormal" => Anormal(Box::new(self.descriptor()?)),
            "trunc" => {
                let k = self.descriptor()?;
                self.eat(',')?;
                Trunc(Box::new(k), self.number()?)
            }
            "upper2" => Upper2(Box::new(self.descriptor()?)),
            "mat2" => Mat2(Box::new(self.descriptor()?)),
            "product" => {
                let a = self.descriptor()?;
                self.eat(',')?;
                Product(Box::new(a), Box::new(self.descriptor()?))
            }
            "quotient" => {
                let r = self.descriptor()?;
                self.eat(',')?;
                Quotient(Box::new(r), self.ideal_spec()?)
            }
            _ => {
                self.pos -= name.len() + 1;
                return Err(self.error(&format!("unknown ring constructor '{name}'")));
            }
        };
        self.eat(')')?;
        Ok(d)
    }

    fn ideal_spec(&mut self) -> Result<IdealSpec> {
        let name = self.ident()?;
        match name {
            "rad" => Ok(IdealSpec::Radical),
            "ideal" => {
                self.eat('(')?;
                let start = self.pos;
                let mut depth = 0usize;
                let mut end = None;
                for (i, c) in self.rest().char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' if depth == 0 => {
                            end = Some(start + i);
                            break;
                        }
                        ')' => depth -= 1,
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| self.error("unterminated ideal(...)"))?;
                let gens = split_top_level(&self.src[start..end]);
                if gens.is_empty() {
                    return Err(self.error("ideal(...) needs at least one generator"));
                }
                self.pos = end;
                self.eat(')')?;
                Ok(IdealSpec::Generated(gens))
            }
            _ => Err(self.error("expected 'rad' or 'ideal(...)'")),
        }
    }
}

/// Splits on commas that are not nested inside parentheses.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out.into_iter()
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_descriptors() {
        let d: RingDescriptor = "product( zmod(2), dual(gf(3)) )".parse().unwrap();
        assert_eq!(d.to_string(), "product(zmod(2),dual(gf(3)))");
        let q: RingDescriptor = "quotient(zmod(8),rad)".parse().unwrap();
        assert_eq!(
            q,
            RingDescriptor::Quotient(Box::new(RingDescriptor::ZMod(8)), IdealSpec::Radical)
        );
        let g: RingDescriptor = "quotient(product(zmod(2),zmod(2)),ideal((1,0)))".parse().unwrap();
        assert_eq!(g.to_string(), "quotient(product(zmod(2),zmod(2)),ideal((1,0)))");
        assert_eq!("gf(4)".parse::<RingDescriptor>().unwrap(), RingDescriptor::Gf4);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "zmod", "zmod(3", "foo(3)", "dual(gf(3)))", "trunc(gf(3))", "quotient(zmod(4),x)"] {
            assert!(bad.parse::<RingDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split_top_level("(1,0), e ,2"), vec!["(1,0)", "e", "2"]);
    }
}

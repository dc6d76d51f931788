//! Polynomial string grammar:
//!
//! ```text
//! poly   := term ('+' term)* | '0'
//! term   := coeff | coeff '*'? 'x' ('^' uint)? | 'x' ('^' uint)?
//! coeff  := uint | '[' uint (',' uint)* ']'
//! ```
//!
//! Whitespace is ignored. A bare integer coefficient is read mod p (fields)
//! or mod p^N; a bracketed vector gives field coordinates in the basis
//! `1, t, ..., t^{e-1}`.

use super::RingCtx;
use crate::coefficients::CoeffRing;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl Cursor<'_> {
    fn eat(&mut self, c: char) -> bool {
        if self.chars.peek() == Some(&c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<Option<u64>> {
        let mut digits = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Ok(None);
        }
        digits
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("integer out of range: {digits}")))
    }

    fn expect_uint(&mut self) -> Result<u64> {
        self.uint()?
            .ok_or_else(|| Error::Parse("expected an integer".into()))
    }
}

fn scalar(ctx: &RingCtx, value: u64) -> u32 {
    match ctx.coeff() {
        CoeffRing::Field(f) => (value % f.p() as u64) as u32,
        CoeffRing::Zpn(z) => (value % z.modulus() as u64) as u32,
    }
}

fn vector_coeff(ctx: &RingCtx, coords: &[u64]) -> Result<u32> {
    match ctx.coeff() {
        CoeffRing::Field(f) => {
            if coords.len() > f.degree() as usize {
                return Err(Error::Parse(format!(
                    "coefficient vector longer than extension degree {}",
                    f.degree()
                )));
            }
            let reduced: Vec<u32> = coords.iter().map(|&c| (c % f.p() as u64) as u32).collect();
            Ok(f.elem(&reduced)?.0)
        }
        CoeffRing::Zpn(_) if coords.len() == 1 => Ok(scalar(ctx, coords[0])),
        CoeffRing::Zpn(_) => Err(Error::Parse("vector coefficients need a field".into())),
    }
}

pub(super) fn parse_poly(ctx: &RingCtx, s: &str) -> Result<super::RingElem> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut cur = Cursor {
        chars: compact.chars().peekable(),
    };
    let mut acc = vec![0u32; ctx.n()];
    loop {
        let coeff = if cur.eat('[') {
            let mut coords = vec![cur.expect_uint()?];
            while cur.eat(',') {
                coords.push(cur.expect_uint()?);
            }
            if !cur.eat(']') {
                return Err(Error::Parse("unterminated coefficient vector".into()));
            }
            Some(vector_coeff(ctx, &coords)?)
        } else {
            cur.uint()?.map(|v| scalar(ctx, v))
        };
        let has_star = cur.eat('*');
        let exp = if cur.eat('x') {
            if cur.eat('^') {
                cur.expect_uint()?
            } else {
                1
            }
        } else if has_star || coeff.is_none() {
            return Err(Error::Parse(format!("malformed term in {s:?}")));
        } else {
            0
        };
        if exp >= ctx.n() as u64 {
            return Err(Error::Parse(format!(
                "exponent {exp} out of range [0, {}]",
                ctx.n() - 1
            )));
        }
        let c = coeff.unwrap_or(1);
        acc[exp as usize] = ctx.coeff().add(acc[exp as usize], c);
        if !cur.eat('+') {
            break;
        }
    }
    if let Some(c) = cur.chars.next() {
        return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
    }
    ctx.normalize(&mut acc);
    Ok(super::RingElem { coeffs: acc })
}

fn format_coeff(ctx: &RingCtx, c: u32) -> String {
    match ctx.coeff() {
        CoeffRing::Field(f) if f.degree() > 1 => {
            let coords = f.coords(crate::coefficients::FieldElem(c));
            if coords[1..].iter().all(|&x| x == 0) {
                coords[0].to_string()
            } else {
                let parts: Vec<String> = coords.iter().map(u32::to_string).collect();
                format!("[{}]", parts.join(","))
            }
        }
        _ => c.to_string(),
    }
}

pub(super) fn format_poly(ctx: &RingCtx, coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = format_coeff(ctx, c);
            match i {
                0 => coeff,
                _ => {
                    let mono = if i == 1 {
                        "x".to_string()
                    } else {
                        format!("x^{i}")
                    };
                    if c == 1 {
                        mono
                    } else {
                        format!("{coeff}{mono}")
                    }
                }
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use crate::truncated_rings::RingCtx;
    use proptest::prelude::*;

    #[test]
    fn grammar_forms() {
        let r = RingCtx::zpn(3, 2, 4, 2).unwrap();
        let a = r.parse(" 2*x^2 + 5x + 7 + x^3 ").unwrap();
        assert_eq!(a.coeffs(), &[7, 5, 2, 1]);
        assert_eq!(r.parse("0").unwrap(), r.zero());
        assert_eq!(r.parse("x+x").unwrap().coeffs(), &[0, 2, 0, 0]);
        assert!(r.parse("x^4").is_err());
        assert!(r.parse("2*").is_err());
        assert!(r.parse("x^").is_err());
        assert!(r.parse("").is_err());
        assert!(r.parse("1+").is_err());
        assert!(r.parse("y").is_err());
    }

    #[test]
    fn extension_field_coefficients() {
        let r = RingCtx::fq(4, 3).unwrap();
        let a = r.parse("[0,1]x + [1,1]x^2 + 1").unwrap();
        assert_eq!(a.coeffs(), &[1, 2, 3]);
        assert_eq!(r.format(&a), "1+[0,1]x+[1,1]x^2");
        assert!(r.parse("[1,1,1]").is_err());
    }

    proptest! {
        #[test]
        fn format_then_parse(coeffs in proptest::collection::vec(0u32..9, 5)) {
            let r = RingCtx::zpn(3, 2, 5, 1).unwrap();
            let a = r.reduced(coeffs);
            prop_assert_eq!(r.parse(&r.format(&a)).unwrap(), a);
        }

        #[test]
        fn format_then_parse_f8(coeffs in proptest::collection::vec(0u32..8, 4)) {
            let r = RingCtx::fq(8, 4).unwrap();
            let a = r.reduced(coeffs);
            prop_assert_eq!(r.parse(&r.format(&a)).unwrap(), a);
        }
    }
}

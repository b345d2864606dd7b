//! Polynomial expression parser.
//!
//! ```text
//! poly   := ["-"] term (("+" | "-") term)*
//! term   := rat | [rat "*"] factor ("*" factor)*
//! factor := var ["^" uint]
//! rat    := uint ["/" uint]
//! var    := letter [uint]
//! ```
//!
//! Bare `x, y, z, w` are variables 1 to 4. Indexed names such as `x1, x2, …`
//! (any one letter, used consistently) are variables by index. The two
//! styles cannot be mixed in one expression.

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{ExponentVector, Poly};
use crate::rat::Rat;

/// Refuse expressions in more variables than this.
pub const MAX_VARIABLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("variable index {index} exceeds the supported {max} variables")]
    DimensionOverflow { index: usize, max: usize },
    #[error("expression uses {used} variables but the dimension hint is {hint}")]
    HintTooSmall { used: usize, hint: usize },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Naming {
    Bare,
    Indexed(u8),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    naming: Option<Naming>,
}

type Monomial = Vec<(usize, u32)>;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn rat(&mut self) -> Result<Rat, ParseError> {
        let num = self.uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.uint()?;
            if den == BigInt::from(0) {
                return Err(ParseError::Syntax {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Rat::from_bigints(num, den));
        }
        Ok(Rat::from(num))
    }

    fn var(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let letter = match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => *c,
            Some(c) if !c.is_ascii() => return self.syntax("non-ASCII input"),
            _ => return self.syntax("expected a variable"),
        };
        self.pos += 1;
        let has_index = self.src.get(self.pos).is_some_and(u8::is_ascii_digit);
        let (naming, index) = if has_index {
            let n = self.uint()?;
            let n: usize = n.try_into().unwrap_or(usize::MAX);
            if n == 0 {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: "variable indices start at 1".into(),
                });
            }
            (Naming::Indexed(letter), n - 1)
        } else {
            let idx = match letter {
                b'x' => 0,
                b'y' => 1,
                b'z' => 2,
                b'w' => 3,
                _ => {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: format!("unknown variable `{}`", letter as char),
                    })
                }
            };
            (Naming::Bare, idx)
        };
        match self.naming {
            None => self.naming = Some(naming),
            Some(prev) if prev != naming => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: "mixed variable naming styles".into(),
                })
            }
            _ => {}
        }
        if index >= MAX_VARIABLES {
            return Err(ParseError::DimensionOverflow {
                index: index.saturating_add(1),
                max: MAX_VARIABLES,
            });
        }
        Ok(index)
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        let v = self.var()?;
        if self.peek() != Some(b'^') {
            return Ok((v, 1));
        }
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return Err(ParseError::NegativeExponent { pos: self.pos });
        }
        let at = self.pos;
        let e = self.uint()?;
        let e: u32 = e.try_into().map_err(|_| ParseError::Syntax {
            pos: at,
            msg: "exponent too large".into(),
        })?;
        Ok((v, e))
    }

    fn term(&mut self) -> Result<(Rat, Monomial), ParseError> {
        let mut coeff = Rat::one();
        let mut mono = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.rat()?;
                if self.peek() != Some(b'*') {
                    return Ok((coeff, mono));
                }
                self.pos += 1;
            }
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(_) => return self.syntax("expected a term"),
            None => return self.syntax("unexpected end of input"),
        }
        mono.push(self.factor()?);
        while self.peek() == Some(b'*') {
            self.pos += 1;
            mono.push(self.factor()?);
        }
        Ok((coeff, mono))
    }

    fn poly(&mut self) -> Result<Vec<(Rat, Monomial)>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let (c, m) = self.term()?;
            terms.push((if negative { -c } else { c }, m));
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => break,
                Some(_) => return self.syntax("expected `+`, `-`, or end of input"),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses `text` into a polynomial whose dimension is the largest variable
/// index used, raised to `n_hint` if given. Coefficients are marked generic.
pub fn parse_poly(text: &str, n_hint: Option<usize>) -> Result<Poly, ParseError> {
    if let Some(pos) = text.bytes().position(|b| !b.is_ascii()) {
        return Err(ParseError::Syntax {
            pos,
            msg: "non-ASCII input".into(),
        });
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        naming: None,
    };
    let terms = p.poly()?;
    let used = terms
        .iter()
        .flat_map(|(_, m)| m.iter().map(|&(v, _)| v + 1))
        .max()
        .unwrap_or(0);
    let dim = match n_hint {
        Some(h) if h < used => return Err(ParseError::HintTooSmall { used, hint: h }),
        Some(h) => h.max(1),
        None => used.max(1),
    };
    if dim > MAX_VARIABLES {
        return Err(ParseError::DimensionOverflow {
            index: dim,
            max: MAX_VARIABLES,
        });
    }
    let mut out = Vec::with_capacity(terms.len());
    for (c, mono) in terms {
        let mut e = vec![0u32; dim];
        for (v, k) in mono {
            e[v] = e[v].checked_add(k).ok_or(ParseError::Syntax {
                pos: 0,
                msg: "exponent too large".into(),
            })?;
        }
        out.push((ExponentVector::new(e), c));
    }
    Ok(Poly::from_terms(dim, out).expect("exponent vectors sized to dim"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn basic_examples() {
        let f = parse_poly("x^2 + y^3", None).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.support(), vec![ev(&[0, 3]), ev(&[2, 0])]);
        assert!(f.terms().all(|(_, c)| c.is_one()));

        let fig = parse_poly("y^7 + y^3*x^2 + y^3*x^5 + y*x^4 + x^6", None).unwrap();
        let mut s = fig.support();
        s.sort();
        let mut want = vec![ev(&[0, 7]), ev(&[2, 3]), ev(&[5, 3]), ev(&[4, 1]), ev(&[6, 0])];
        want.sort();
        assert_eq!(s, want);

        let g = parse_poly("3/2*x1^2*x3", Some(3)).unwrap();
        assert_eq!(g.support(), vec![ev(&[2, 0, 1])]);
        assert_eq!(g.coefficient(&ev(&[2, 0, 1])), Some(&Rat::new(3, 2)));
    }

    #[test]
    fn constants_signs_and_repeats() {
        let f = parse_poly("1 + x", None).unwrap();
        assert!(f.has_constant_term());
        let g = parse_poly("-x*x - 2*x^2 + 3*x^2", None).unwrap();
        assert!(g.is_zero());
        assert_eq!(parse_poly("0", None).unwrap(), Poly::zero(1));
        assert_eq!(parse_poly("0", Some(3)).unwrap(), Poly::zero(3));
        let h = parse_poly("  z ", None).unwrap();
        assert_eq!(h.dim(), 3);
        let w = parse_poly("x^2+y^3+z^7+w^43", None).unwrap();
        assert_eq!(w.dim(), 4);
        let t = parse_poly("t2^3 + t1", None).unwrap();
        assert_eq!(t.support(), vec![ev(&[0, 3]), ev(&[1, 0])]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("x^-2", None), Err(ParseError::NegativeExponent { .. })));
        assert!(matches!(
            parse_poly("x + ", None),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(parse_poly("x + q", None), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x + x2", None), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x1 + y2", None), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x0", None), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x99", None), Err(ParseError::DimensionOverflow { .. })));
        assert!(matches!(parse_poly("x + y", Some(1)), Err(ParseError::HintTooSmall { .. })));
        assert!(matches!(parse_poly("1/0*x", None), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x y", None), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x·y", None), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("", None), Err(ParseError::Syntax { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        (1usize..7).prop_flat_map(|dim| {
            prop::collection::vec(
                (
                    prop::collection::vec(0u32..9, dim),
                    (-50i64..50, 1i64..20),
                ),
                0..8,
            )
            .prop_map(move |terms| {
                Poly::from_terms(
                    dim,
                    terms
                        .into_iter()
                        .map(|(e, (n, d))| (ExponentVector::new(e), Rat::new(n, d))),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_poly()) {
            let printed = f.to_string();
            let back = parse_poly(&printed, Some(f.dim())).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}

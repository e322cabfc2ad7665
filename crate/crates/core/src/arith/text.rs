//! Text syntax for polynomials and signatures.
//!
//! Terms are separated by `+`/`-`; a coefficient is an optional integer or
//! `num/den`; a monomial is `*`-separated or juxtaposed variable names with
//! optional `^k` powers; `1` denotes the empty word. Printing produces the
//! canonical form (terms descending, no leading `+`), and parse after print
//! is the identity on it.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::{Rationals, Ring};
use crate::arith::word::{is_component_token, Alphabet, Var, Word};
use crate::bimodule::ModuleMonomial;
use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(digits.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(ident));
            }
            other => {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    Ok(out)
}

/// Greedy longest-prefix split of a juxtaposed identifier into variables.
fn split_vars(ident: &str, alphabet: &Alphabet) -> Result<Vec<Var>> {
    let mut rest = ident;
    let mut vars = Vec::new();
    'outer: while !rest.is_empty() {
        let mut best: Option<(usize, Var)> = None;
        for (i, name) in alphabet.names().iter().enumerate() {
            if rest.starts_with(name.as_str()) && best.is_none_or(|(blen, _)| name.len() > blen) {
                best = Some((name.len(), i as Var));
            }
        }
        match best {
            Some((len, v)) => {
                vars.push(v);
                rest = &rest[len..];
            }
            None => {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("unknown variable in {ident:?}"),
                });
            }
        }
        if vars.len() > ident.len() {
            // unreachable, but avoid any chance of spinning
            break 'outer;
        }
    }
    Ok(vars)
}

struct TermParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> TermParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt> {
        match self.next() {
            Some(Token::Int(n)) => Ok(n.clone()),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("expected {what}"),
            }),
        }
    }

    /// One term: scalar and word factors joined by `*` or juxtaposition.
    fn term(&mut self) -> Result<(BigRational, Word)> {
        let mut coeff = BigRational::one();
        let mut letters: Vec<Var> = Vec::new();
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(Token::Int(_)) => {
                    let num = self.expect_int("integer")?;
                    let mut value = BigRational::from_integer(num);
                    if matches!(self.peek(), Some(Token::Slash)) {
                        self.next();
                        let den = self.expect_int("denominator")?;
                        if den.is_zero() {
                            return Err(Error::Parse {
                                line: 0,
                                message: "zero denominator".into(),
                            });
                        }
                        value /= BigRational::from_integer(den);
                    }
                    coeff *= value;
                    saw_factor = true;
                }
                Some(Token::Ident(name)) => {
                    let name = name.clone();
                    self.next();
                    let mut vars = split_vars(&name, self.alphabet)?;
                    if matches!(self.peek(), Some(Token::Caret)) {
                        self.next();
                        let k = self.expect_int("exponent")?;
                        let k: usize = k.try_into().map_err(|_| Error::Parse {
                            line: 0,
                            message: "exponent out of range".into(),
                        })?;
                        let last = vars.pop().ok_or(Error::Parse {
                            line: 0,
                            message: "exponent without a variable".into(),
                        })?;
                        vars.extend(std::iter::repeat_n(last, k));
                    }
                    letters.extend(vars);
                    saw_factor = true;
                }
                Some(Token::Star) => {
                    self.next();
                    if !saw_factor {
                        return Err(Error::Parse {
                            line: 0,
                            message: "term starts with '*'".into(),
                        });
                    }
                    continue;
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(Error::Parse {
                line: 0,
                message: "empty term".into(),
            });
        }
        Ok((coeff, Word::from_letters(letters)))
    }
}

/// Parse a polynomial over Q.
pub fn parse_poly(
    s: &str,
    alphabet: &Alphabet,
    ord: &MonomialOrder,
) -> Result<Polynomial<Rationals>> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut p = TermParser {
        tokens: &tokens,
        pos: 0,
        alphabet,
    };
    let mut terms: Vec<(Word, BigRational)> = Vec::new();
    let mut sign = BigRational::one();
    // optional leading sign
    match p.peek() {
        Some(Token::Minus) => {
            sign = -sign;
            p.next();
        }
        Some(Token::Plus) => {
            p.next();
        }
        _ => {}
    }
    loop {
        let (c, w) = p.term()?;
        terms.push((w, c * &sign));
        match p.next() {
            Some(Token::Plus) => sign = BigRational::one(),
            Some(Token::Minus) => sign = -BigRational::one(),
            None => break,
            Some(t) => {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("unexpected token {t:?}"),
                });
            }
        }
    }
    Ok(Polynomial::from_terms(&Rationals, ord, terms))
}

/// Canonical rendering of a polynomial over any coefficient ring whose
/// elements print as `n` or `n/d`.
pub fn render_poly<R: Ring>(f: &Polynomial<R>, alphabet: &Alphabet, ring: &R) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in f.terms().iter().enumerate() {
        let s = ring.format(c);
        let (neg, abs) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff_is_one = abs == "1";
        if w.is_one() {
            out.push_str(&abs);
        } else if coeff_is_one {
            out.push_str(&w.render(alphabet));
        } else {
            out.push_str(&abs);
            if !alphabet.single_char() {
                out.push('*');
            }
            out.push_str(&w.render(alphabet));
        }
    }
    out
}

/// Parse one word token (`1`, `xy^2x`, `x1^3`), as used inside signatures.
pub fn parse_word(s: &str, alphabet: &Alphabet) -> Result<Word> {
    let tokens = tokenize(s)?;
    let mut p = TermParser {
        tokens: &tokens,
        pos: 0,
        alphabet,
    };
    let (c, w) = p.term()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse {
            line: 0,
            message: format!("trailing input in word {s:?}"),
        });
    }
    if !c.is_one() {
        return Err(Error::Parse {
            line: 0,
            message: format!("expected a word, got coefficient in {s:?}"),
        });
    }
    Ok(w)
}

/// Parse a module monomial in `a*e<i>*b` syntax, `1` denoting empty words.
pub fn parse_sig(s: &str, alphabet: &Alphabet, rank: usize) -> Result<ModuleMonomial> {
    let parts: Vec<&str> = s.trim().split('*').map(str::trim).collect();
    let comp_positions: Vec<usize> = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| is_component_token(p))
        .map(|(i, _)| i)
        .collect();
    if comp_positions.len() != 1 {
        return Err(Error::Parse {
            line: 0,
            message: format!("signature {s:?} must contain exactly one e<i> component"),
        });
    }
    let cp = comp_positions[0];
    let comp: usize = parts[cp][1..].parse().map_err(|_| Error::Parse {
        line: 0,
        message: format!("bad component in {s:?}"),
    })?;
    if comp == 0 || comp > rank {
        return Err(Error::ComponentOutOfRange {
            component: comp,
            rank,
        });
    }
    let join = |chunks: &[&str]| -> Result<Word> {
        if chunks.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: format!("signature {s:?} is missing a word part"),
            });
        }
        let mut w = Word::one();
        for chunk in chunks {
            w = w.concat(&parse_word(chunk, alphabet)?);
        }
        Ok(w)
    };
    let left = join(&parts[..cp])?;
    let right = join(&parts[cp + 1..])?;
    Ok(ModuleMonomial::new(left, comp - 1, right))
}

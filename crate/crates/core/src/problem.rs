//! Problem files and the run-level API shared by the CLI and the Python
//! bindings.
//!
//! The format is line-oriented with `#` comments:
//!
//! ```text
//! vars x y
//! field Q
//! order deglex x y          # precedence, smallest variable first
//! weights 1 1               # optional, positive rationals
//! modorder dopot left       # dopot|dotop, left|right tie side
//! gens
//! xyx - xy - y
//! end
//! bound sig-degree 8        # or an explicit module monomial like 1*e1*yx
//! ```

use crate::arith::poly::Polynomial;
use crate::arith::scalar::{Rationals, Ring};
use crate::arith::text::{parse_poly, parse_sig, render_poly};
use crate::arith::word::Alphabet;
use crate::engine::basis::{compute_sig_basis, EngineOptions, SigBasis};
use crate::engine::format;
use crate::engine::verify::{sig_verification_test, VerifyMode, VerifyReport};
use crate::error::{Error, Result};
use crate::modular::run::{modular_sig_gb, ModularConfig, Transcript};
use crate::order::{ModuleOrder, ModuleOrderKind, MonomialOrder, Side, SigBound};
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct Problem {
    pub alphabet: Alphabet,
    pub ord: MonomialOrder,
    pub mord: ModuleOrder,
    pub gens: Vec<Polynomial<Rationals>>,
    /// Bound from the problem file; commands may override it.
    pub bound: Option<SigBound>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_rational(s: &str, line: usize) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<num_bigint::BigInt> {
        t.parse()
            .map_err(|_| parse_error(line, format!("bad number {t:?}")))
    };
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(parse_error(line, "zero denominator"));
            }
            BigRational::new(parse_int(n)?, den)
        }
        None => BigRational::from_integer(parse_int(s)?),
    };
    Ok(q)
}

/// Parse a problem file. Unknown and duplicate keys are rejected; the
/// reported line numbers are 1-based.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut field: Option<usize> = None;
    let mut order_line: Option<(usize, Vec<String>)> = None;
    let mut weights_line: Option<(usize, Vec<String>)> = None;
    let mut modorder_line: Option<(usize, Vec<String>)> = None;
    let mut gen_lines: Vec<(usize, String)> = Vec::new();
    let mut bound_line: Option<(usize, String)> = None;
    let mut in_gens = false;
    let mut gens_closed = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before.trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if in_gens {
            if line == "end" {
                in_gens = false;
                gens_closed = true;
            } else {
                gen_lines.push((lineno, line.to_string()));
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap();
        let rest: Vec<String> = parts.map(str::to_string).collect();
        let dup = |name: &str| parse_error(lineno, format!("duplicate `{name}`"));
        match key {
            "vars" => {
                if vars.replace((lineno, rest)).is_some() {
                    return Err(dup("vars"));
                }
            }
            "field" => {
                if rest != ["Q"] {
                    return Err(parse_error(lineno, "only `field Q` is supported"));
                }
                if field.replace(lineno).is_some() {
                    return Err(dup("field"));
                }
            }
            "order" => {
                if order_line.replace((lineno, rest)).is_some() {
                    return Err(dup("order"));
                }
            }
            "weights" => {
                if weights_line.replace((lineno, rest)).is_some() {
                    return Err(dup("weights"));
                }
            }
            "modorder" => {
                if modorder_line.replace((lineno, rest)).is_some() {
                    return Err(dup("modorder"));
                }
            }
            "gens" => {
                if gens_closed || !gen_lines.is_empty() {
                    return Err(dup("gens"));
                }
                in_gens = true;
            }
            "bound" => {
                if bound_line.replace((lineno, rest.join(" "))).is_some() {
                    return Err(dup("bound"));
                }
            }
            other => {
                return Err(parse_error(lineno, format!("unknown key {other:?}")));
            }
        }
    }
    if in_gens {
        return Err(parse_error(0, "unterminated `gens` block (missing `end`)"));
    }

    let (vline, names) = vars.ok_or_else(|| parse_error(0, "missing `vars`"))?;
    let alphabet = Alphabet::new(names.clone()).map_err(|e| match e {
        Error::Parse { message, .. } => parse_error(vline, message),
        other => other,
    })?;
    field.ok_or_else(|| parse_error(0, "missing `field Q`"))?;

    let (oline, order_spec) = order_line.ok_or_else(|| parse_error(0, "missing `order`"))?;
    if order_spec.first().map(String::as_str) != Some("deglex") {
        return Err(parse_error(oline, "only `order deglex ...` is supported"));
    }
    let precedence: Vec<u16> = if order_spec.len() == 1 {
        (0..alphabet.len() as u16).collect()
    } else {
        order_spec[1..]
            .iter()
            .map(|n| {
                alphabet
                    .index_of(n)
                    .ok_or_else(|| parse_error(oline, format!("unknown variable {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let weights: Vec<BigRational> = match &weights_line {
        Some((wline, ws)) => {
            if ws.len() != alphabet.len() {
                return Err(parse_error(
                    *wline,
                    format!("{} weights for {} variables", ws.len(), alphabet.len()),
                ));
            }
            ws.iter()
                .map(|w| parse_rational(w, *wline))
                .collect::<Result<Vec<_>>>()?
        }
        None => vec![BigRational::from_integer(1.into()); alphabet.len()],
    };
    let wline = weights_line.as_ref().map(|(l, _)| *l).unwrap_or(oline);
    let ord = MonomialOrder::weighted(&precedence, &weights).map_err(|e| match e {
        Error::Parse { message, .. } => parse_error(wline, message),
        other => other,
    })?;

    let (kind, side) = match &modorder_line {
        None => (ModuleOrderKind::DoPoT, Side::Left),
        Some((mline, spec)) => {
            let kind = match spec.first().map(String::as_str) {
                Some("dopot") => ModuleOrderKind::DoPoT,
                Some("dotop") => ModuleOrderKind::DoToP,
                Some("pot") => {
                    return Err(parse_error(
                        *mline,
                        "a position-over-term ordering without the degree comparison is not \
                         fair for rank >= 2 and is not available",
                    ));
                }
                other => {
                    return Err(parse_error(
                        *mline,
                        format!("expected `dopot` or `dotop`, got {other:?}"),
                    ));
                }
            };
            let side = match spec.get(1).map(String::as_str) {
                None | Some("left") => Side::Left,
                Some("right") => Side::Right,
                Some(other) => {
                    return Err(parse_error(
                        *mline,
                        format!("expected `left` or `right`, got {other:?}"),
                    ));
                }
            };
            if spec.len() > 2 {
                return Err(parse_error(*mline, "trailing input after modorder"));
            }
            (kind, side)
        }
    };

    if gen_lines.is_empty() {
        return Err(parse_error(0, "missing or empty `gens` block"));
    }
    let mut gens = Vec::with_capacity(gen_lines.len());
    for (gline, gtext) in &gen_lines {
        let g = parse_poly(gtext, &alphabet, &ord).map_err(|e| match e {
            Error::Parse { message, .. } => parse_error(*gline, message),
            other => other,
        })?;
        if g.is_zero() {
            return Err(parse_error(*gline, "generator is zero"));
        }
        gens.push(g);
    }

    let gen_degrees: Vec<u128> = gens.iter().map(|g| ord.word_deg(g.lm().unwrap())).collect();
    let mord = ModuleOrder::new(kind, side, ord.clone(), gen_degrees);

    let bound = match bound_line {
        None => None,
        Some((bline, spec)) => Some(parse_bound(&spec, &alphabet, gens.len()).map_err(
            |e| match e {
                Error::Parse { message, .. } => parse_error(bline, message),
                other => other,
            },
        )?),
    };

    Ok(Problem {
        alphabet,
        ord,
        mord,
        gens,
        bound,
    })
}

/// `sig-degree D` or an explicit module monomial in signature syntax.
pub fn parse_bound(spec: &str, alphabet: &Alphabet, rank: usize) -> Result<SigBound> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("sig-degree") {
        let d: u64 = rest
            .trim()
            .parse()
            .map_err(|_| parse_error(0, format!("bad signature degree {rest:?}")))?;
        return Ok(SigBound::SigDegree(d));
    }
    Ok(SigBound::Monomial(parse_sig(spec, alphabet, rank)?))
}

impl Problem {
    pub fn from_file(path: &std::path::Path) -> Result<Problem> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        parse_problem(&text)
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// The bound to use, preferring an explicit override.
    pub fn effective_bound(&self, override_bound: Option<SigBound>) -> Result<SigBound> {
        override_bound
            .or_else(|| self.bound.clone())
            .ok_or_else(|| parse_error(0, "no signature bound: pass one or add a `bound` line"))
    }

    /// Direct computation over Q.
    pub fn gb(&self, bound: &SigBound, options: EngineOptions) -> Result<SigBasis<Rationals>> {
        compute_sig_basis(&Rationals, &self.mord, &self.gens, bound, options)
    }

    /// Modular multi-prime computation.
    pub fn gb_modular(
        &self,
        bound: &SigBound,
        config: &ModularConfig,
    ) -> Result<(SigBasis<Rationals>, VerifyReport, Transcript)> {
        modular_sig_gb(&self.gens, bound, &self.mord, config)
    }

    pub fn render_basis(&self, basis: &SigBasis<Rationals>) -> String {
        format::render_basis(basis, &self.alphabet)
    }

    pub fn parse_basis(&self, text: &str, bound: SigBound) -> Result<SigBasis<Rationals>> {
        format::parse_basis(text, &self.alphabet, self.rank(), &self.ord, bound)
    }

    pub fn verify(
        &self,
        basis: &SigBasis<Rationals>,
        mode: VerifyMode,
        used_primes: &[u64],
    ) -> Result<VerifyReport> {
        sig_verification_test(&self.mord, basis, &self.gens, mode, used_primes)
    }

    pub fn render_gens(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| render_poly(g, &self.alphabet, &Rationals))
            .collect()
    }
}

/// Canonical render of what a `describe` call should say about a ring
/// element; used by bindings for error text.
pub fn describe_field() -> String {
    Rationals.describe()
}

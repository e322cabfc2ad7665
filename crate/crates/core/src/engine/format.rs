//! Basis file format: one `sig=... ; poly=...` line per element, ascending
//! by signature, followed by the recorded syzygy signatures in a trailing
//! `syz:` block. The rendering is canonical, so golden tests compare bytes.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::Rationals;
use crate::arith::text::{parse_poly, parse_sig, render_poly};
use crate::arith::word::Alphabet;
use crate::bimodule::SigPolynomial;
use crate::engine::basis::SigBasis;
use crate::error::{Error, Result};
use crate::order::{MonomialOrder, SigBound};

pub fn render_basis(basis: &SigBasis<Rationals>, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for e in &basis.elements {
        out.push_str(&format!(
            "sig={} ; poly={}\n",
            e.sig.render(alphabet),
            render_poly(&e.poly, alphabet, &Rationals)
        ));
    }
    if !basis.syzygies.is_empty() {
        out.push_str("syz:\n");
        for s in &basis.syzygies {
            out.push_str(&s.render(alphabet));
            out.push('\n');
        }
    }
    out
}

pub fn parse_basis(
    text: &str,
    alphabet: &Alphabet,
    rank: usize,
    ord: &MonomialOrder,
    bound: SigBound,
) -> Result<SigBasis<Rationals>> {
    let mut elements: Vec<SigPolynomial<Rationals>> = Vec::new();
    let mut syzygies = Vec::new();
    let mut in_syz = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "syz:" {
            in_syz = true;
            continue;
        }
        let at = |message: String| Error::Parse {
            line: lineno + 1,
            message,
        };
        if in_syz {
            syzygies.push(parse_sig(line, alphabet, rank)?);
            continue;
        }
        let (sig_part, poly_part) = line
            .split_once(';')
            .ok_or_else(|| at("expected 'sig=... ; poly=...'".into()))?;
        let sig_text = sig_part
            .trim()
            .strip_prefix("sig=")
            .ok_or_else(|| at("missing 'sig=' prefix".into()))?;
        let poly_text = poly_part
            .trim()
            .strip_prefix("poly=")
            .ok_or_else(|| at("missing 'poly=' prefix".into()))?;
        let sig = parse_sig(sig_text.trim(), alphabet, rank)?;
        let poly: Polynomial<Rationals> = parse_poly(poly_text.trim(), alphabet, ord)?;
        elements.push(SigPolynomial::new(poly, sig));
    }
    Ok(SigBasis {
        elements,
        syzygies,
        syzygy_labels: None,
        bound,
    })
}

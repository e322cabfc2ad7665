use crate::error::{Error, Result};
use std::fmt;

/// Index of a variable in the declared alphabet.
pub type Var = u16;

/// The declared set of noncommuting variables.
///
/// Variable indices are positions in `names`; all word and order data refer
/// to variables by index only, so the alphabet is the single place names live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "alphabet must contain at least one variable".into(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty()
                || !n.chars().next().unwrap().is_ascii_alphabetic()
                || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("invalid variable name {n:?}"),
                });
            }
            // `e<k>` is reserved for bimodule components in signature syntax.
            if is_component_token(n) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("variable name {n:?} clashes with signature component syntax"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate variable name {n:?}"),
                });
            }
        }
        if names.len() > Var::MAX as usize {
            return Err(Error::Parse {
                line: 0,
                message: "too many variables".into(),
            });
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(|i| i as Var)
    }

    /// True when every variable prints as a single character, in which case
    /// words render juxtaposed (`xyx`) instead of `*`-joined (`x1*x2`).
    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }
}

pub(crate) fn is_component_token(s: &str) -> bool {
    let mut it = s.chars();
    it.next() == Some('e') && {
        let rest = it.as_str();
        !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())
    }
}

/// A monomial of the free monoid: a finite sequence of variable indices.
/// The empty sequence is the word 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Var>,
}

impl Word {
    pub fn one() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<Var>) -> Self {
        Word { letters }
    }

    pub fn single(v: Var) -> Self {
        Word { letters: vec![v] }
    }

    /// `v^k`.
    pub fn power(v: Var, k: usize) -> Self {
        Word {
            letters: vec![v; k],
        }
    }

    pub fn is_one(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self[a..b]` as a word.
    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word {
            letters: self.letters[a..b].to_vec(),
        }
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.letters.ends_with(&suffix.letters)
    }

    /// All start positions at which `factor` occurs in `self`.
    pub fn factor_positions(&self, factor: &Word) -> Vec<usize> {
        let n = self.len();
        let m = factor.len();
        if m > n {
            return Vec::new();
        }
        (0..=n - m)
            .filter(|&i| self.letters[i..i + m] == factor.letters[..])
            .collect()
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        let n = self.len();
        let m = factor.len();
        if m > n {
            return false;
        }
        (0..=n - m).any(|i| self.letters[i..i + m] == factor.letters[..])
    }

    /// Render with the given alphabet, collapsing runs into powers.
    /// The word 1 prints as `1`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let sep = if alphabet.single_char() { "" } else { "*" };
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let v = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == v {
                run += 1;
            }
            if run == 1 {
                parts.push(alphabet.name(v).to_string());
            } else {
                parts.push(format!("{}^{}", alphabet.name(v), run));
            }
            i += run;
        }
        parts.join(sep)
    }
}

impl fmt::Display for Word {
    /// Debug-ish rendering by variable index; use [`Word::render`] for output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for v in &self.letters {
            write!(f, "#{v}.")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_bad_names() {
        assert!(Alphabet::new(vec!["x", "y"]).is_ok());
        assert!(Alphabet::new(vec!["x", "x"]).is_err());
        assert!(Alphabet::new(vec!["1x"]).is_err());
        assert!(Alphabet::new(vec!["e1"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn concat_is_associative_with_identity() {
        let a = Word::from_letters(vec![0, 1]);
        let b = Word::from_letters(vec![1]);
        let c = Word::from_letters(vec![0]);
        assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        assert_eq!(Word::one().concat(&a), a);
        assert_eq!(a.concat(&Word::one()), a);
    }

    #[test]
    fn factor_positions_finds_overlapping_occurrences() {
        let w = Word::from_letters(vec![0, 0, 0]);
        let f = Word::from_letters(vec![0, 0]);
        assert_eq!(w.factor_positions(&f), vec![0, 1]);
        assert_eq!(w.factor_positions(&Word::one()), vec![0, 1, 2, 3]);
    }

    #[test]
    fn render_collapses_powers() {
        let ab = Alphabet::new(vec!["x", "y"]).unwrap();
        let w = Word::from_letters(vec![0, 1, 1, 1, 0]);
        assert_eq!(w.render(&ab), "xy^3x");
        assert_eq!(Word::one().render(&ab), "1");
        let ab2 = Alphabet::new(vec!["x1", "x2"]).unwrap();
        let w2 = Word::from_letters(vec![0, 1, 1]);
        assert_eq!(w2.render(&ab2), "x1*x2^2");
    }
}

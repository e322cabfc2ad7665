//! Monomial orderings on words and fair bimodule orderings on module
//! monomials.
//!
//! Words are compared by weighted degree first, with a left-lexicographic
//! tie-break on a declared variable precedence. Module monomials are compared
//! by the weighted degree of `a f_i b` first, then by the
//! degree-over-position-over-term or degree-over-term-over-position cascade.
//! Both bimodule variants are fair: every module monomial has only finitely
//! many predecessors, which is what makes truncated bases finite.

use crate::arith::word::{Var, Word};
use crate::bimodule::ModuleMonomial;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::cmp::Ordering;

/// A weighted degree-lexicographic monomial ordering.
///
/// Weights are positive rationals; they are scaled to integers by the common
/// denominator at construction so degree comparison is pure integer
/// arithmetic. `rank[v]` is the position of `v` in the declared precedence,
/// rank 0 being the smallest variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    scaled_weights: Vec<u64>,
    scale: u64,
    rank: Vec<u32>,
}

impl MonomialOrder {
    /// Degree-lexicographic order: all weights 1, precedence ascending in
    /// `precedence` (first entry is the smallest variable).
    pub fn deglex(precedence: &[Var]) -> Result<Self> {
        let n = precedence.len();
        Self::weighted(precedence, &vec![BigRational::from_integer(1.into()); n])
    }

    pub fn weighted(precedence: &[Var], weights: &[BigRational]) -> Result<Self> {
        let n = precedence.len();
        if weights.len() != n {
            return Err(Error::Parse {
                line: 0,
                message: format!("{} weights for {} variables", weights.len(), n),
            });
        }
        let mut rank = vec![u32::MAX; n];
        for (pos, &v) in precedence.iter().enumerate() {
            if (v as usize) >= n || rank[v as usize] != u32::MAX {
                return Err(Error::Parse {
                    line: 0,
                    message: "precedence must list every variable exactly once".into(),
                });
            }
            rank[v as usize] = pos as u32;
        }
        for w in weights {
            if !w.is_positive() {
                return Err(Error::Parse {
                    line: 0,
                    message: "weights must be positive".into(),
                });
            }
        }
        // common denominator so scaled weights are integers
        let mut scale = num_bigint::BigInt::from(1);
        for w in weights {
            scale = num_integer::lcm(scale, w.denom().clone());
        }
        let scale_u64 = scale.to_u64().ok_or_else(|| Error::Parse {
            line: 0,
            message: "weight denominators too large".into(),
        })?;
        let mut scaled_weights = Vec::with_capacity(n);
        for w in weights {
            let s = (w * BigRational::from_integer(scale.clone()))
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    message: "weights too large".into(),
                })?;
            scaled_weights.push(s);
        }
        Ok(MonomialOrder {
            scaled_weights,
            scale: scale_u64,
            rank,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.scaled_weights.len()
    }

    /// Common denominator applied to all weights; a user-facing degree `D`
    /// corresponds to a scaled degree of `D * scale`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Scaled weighted degree of a word.
    pub fn word_deg(&self, w: &Word) -> u128 {
        w.letters()
            .iter()
            .map(|&v| self.scaled_weights[v as usize] as u128)
            .sum()
    }

    pub fn rank_of(&self, v: Var) -> u32 {
        self.rank[v as usize]
    }

    /// Total order on words: scaled weighted degree, then left-lexicographic
    /// comparison of precedence ranks. With positive weights, two distinct
    /// words of equal degree always differ at some position before either
    /// ends, so the lexicographic pass decides.
    pub fn cmp_words(&self, u: &Word, v: &Word) -> Ordering {
        self.word_deg(u)
            .cmp(&self.word_deg(v))
            .then_with(|| self.cmp_lex(u, v))
    }

    fn cmp_lex(&self, u: &Word, v: &Word) -> Ordering {
        for (a, b) in u.letters().iter().zip(v.letters()) {
            let c = self.rank[*a as usize].cmp(&self.rank[*b as usize]);
            if c != Ordering::Equal {
                return c;
            }
        }
        u.len().cmp(&v.len())
    }

    /// Order-isomorphic sort key, usable where a `std::cmp::Ord` value is
    /// needed (heaps, BTree sets).
    pub fn word_key(&self, w: &Word) -> WordKey {
        WordKey {
            deg: self.word_deg(w),
            ranks: w.letters().iter().map(|&v| self.rank[v as usize]).collect(),
        }
    }

    /// All words of scaled degree at most `cap`, in no particular order.
    pub fn words_up_to(&self, cap: u128) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![(Word::one(), 0u128)];
        while let Some((w, d)) = stack.pop() {
            out.push(w.clone());
            for v in 0..self.num_vars() as Var {
                let nd = d + self.scaled_weights[v as usize] as u128;
                if nd <= cap {
                    let mut letters = w.letters().to_vec();
                    letters.push(v);
                    stack.push((Word::from_letters(letters), nd));
                }
            }
        }
        out
    }
}

/// Sort key for a word under a fixed [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordKey {
    deg: u128,
    ranks: Vec<u32>,
}

/// The published fair bimodule order variants. A position-over-term order
/// without the leading degree comparison is not fair for rank >= 2 and is
/// deliberately not constructible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleOrderKind {
    /// degree, then component, then product word, then side factor
    DoPoT,
    /// degree, then product word, then component, then side factor
    DoToP,
}

/// Which outer factor breaks the final tie: the left factor `a` (the main
/// published form) or the right factor `b` (the footnote variant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A fair bimodule ordering on module monomials `a e_i b`.
///
/// The degree of `a e_i b` is the weighted degree of `a f_i b`, so the
/// generator degrees are cached at construction and never recomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    kind: ModuleOrderKind,
    side: Side,
    mono: MonomialOrder,
    gen_degrees: Vec<u128>,
}

impl ModuleOrder {
    pub fn new(
        kind: ModuleOrderKind,
        side: Side,
        mono: MonomialOrder,
        gen_degrees: Vec<u128>,
    ) -> Self {
        ModuleOrder {
            kind,
            side,
            mono,
            gen_degrees,
        }
    }

    pub fn kind(&self) -> ModuleOrderKind {
        self.kind
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn mono(&self) -> &MonomialOrder {
        &self.mono
    }

    /// Bimodule rank r.
    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degree(&self, component: usize) -> u128 {
        self.gen_degrees[component]
    }

    /// Scaled signature degree of `a e_i b`, i.e. the degree of `a f_i b`.
    pub fn sig_deg(&self, m: &ModuleMonomial) -> u128 {
        self.gen_degrees[m.component()]
            + self.mono.word_deg(m.left())
            + self.mono.word_deg(m.right())
    }

    /// Total order on module monomials of this bimodule.
    pub fn cmp_sigs(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        debug_assert!(a.component() < self.rank() && b.component() < self.rank());
        let d = self.sig_deg(a).cmp(&self.sig_deg(b));
        if d != Ordering::Equal {
            return d;
        }
        let prod = |m: &ModuleMonomial| m.left().concat(m.right());
        let by_product = || self.mono.cmp_words(&prod(a), &prod(b));
        let by_component = || a.component().cmp(&b.component());
        let by_side = || match self.side {
            Side::Left => self.mono.cmp_words(a.left(), b.left()),
            Side::Right => self.mono.cmp_words(a.right(), b.right()),
        };
        match self.kind {
            ModuleOrderKind::DoPoT => by_component().then_with(by_product).then_with(by_side),
            ModuleOrderKind::DoToP => by_product().then_with(by_component).then_with(by_side),
        }
    }

    pub fn max_sig<'a>(&self, a: &'a ModuleMonomial, b: &'a ModuleMonomial) -> &'a ModuleMonomial {
        if self.cmp_sigs(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// Order-isomorphic sort key.
    pub fn sig_key(&self, m: &ModuleMonomial) -> SigKey {
        let prod = m.left().concat(m.right());
        let product = self.mono.word_key(&prod);
        let side = match self.side {
            Side::Left => self.mono.word_key(m.left()),
            Side::Right => self.mono.word_key(m.right()),
        };
        SigKey {
            deg: self.sig_deg(m),
            pot: self.kind == ModuleOrderKind::DoPoT,
            component: m.component() as u32,
            product,
            side,
        }
    }

    /// Public comparison with rank checking, for callers holding raw data.
    pub fn compare(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.component() >= self.rank() {
                return Err(Error::ComponentOutOfRange {
                    component: m.component() + 1,
                    rank: self.rank(),
                });
            }
        }
        Ok(self.cmp_sigs(a, b))
    }
}

/// Sort key for a module monomial under a fixed [`ModuleOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigKey {
    deg: u128,
    pot: bool,
    component: u32,
    product: WordKey,
    side: WordKey,
}

impl Ord for SigKey {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.pot, other.pot);
        let tail = if self.pot {
            self.component
                .cmp(&other.component)
                .then_with(|| self.product.cmp(&other.product))
        } else {
            self.product
                .cmp(&other.product)
                .then_with(|| self.component.cmp(&other.component))
        };
        self.deg
            .cmp(&other.deg)
            .then(tail)
            .then_with(|| self.side.cmp(&other.side))
    }
}

impl PartialOrd for SigKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Signature bound for truncated computations: either "everything of
/// signature degree below D" or "everything below this explicit monomial".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigBound {
    /// Degrees are in user units; scaling happens against the order's scale.
    SigDegree(u64),
    Monomial(ModuleMonomial),
}

impl SigBound {
    /// Is `sig` strictly below the bound?
    pub fn admits(&self, sig: &ModuleMonomial, mord: &ModuleOrder) -> bool {
        match self {
            SigBound::SigDegree(d) => {
                mord.sig_deg(sig) < (*d as u128) * (mord.mono().scale() as u128)
            }
            SigBound::Monomial(m) => mord.cmp_sigs(sig, m) == Ordering::Less,
        }
    }

    /// An inclusive scaled-degree cap on admitted monomials: everything
    /// strictly below the bound has scaled degree at most this. `None` when
    /// nothing at all is admitted.
    pub fn scaled_cap(&self, mord: &ModuleOrder) -> Option<u128> {
        match self {
            SigBound::SigDegree(d) => {
                let scaled = (*d as u128) * (mord.mono().scale() as u128);
                scaled.checked_sub(1)
            }
            // degree-first ordering: anything below m has degree <= deg(m)
            SigBound::Monomial(m) => Some(mord.sig_deg(m)),
        }
    }
}

/// The finite set of module monomials strictly below `bound`, ascending.
/// This is the constructive fairness witness; it terminates for every bound
/// because degrees are positive and the alphabet is finite.
pub fn monomials_below(bound: &SigBound, mord: &ModuleOrder) -> Vec<ModuleMonomial> {
    let cap = match bound.scaled_cap(mord) {
        Some(cap) => cap,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    for comp in 0..mord.rank() {
        let gd = mord.gen_degree(comp);
        if gd > cap {
            continue;
        }
        let word_budget = cap - gd;
        let lefts = mord.mono().words_up_to(word_budget);
        for a in &lefts {
            let da = mord.mono().word_deg(a);
            for b in mord.mono().words_up_to(word_budget - da) {
                let m = ModuleMonomial::new(a.clone(), comp, b);
                if bound.admits(&m, mord) {
                    out.push(m);
                }
            }
        }
    }
    out.sort_by(|a, b| mord.cmp_sigs(a, b));
    out
}

/// The smallest module monomial of exact (user-unit) signature degree `d`,
/// when one exists.
pub fn min_sig_of_degree(d: u64, mord: &ModuleOrder) -> Option<ModuleMonomial> {
    let target = (d as u128) * (mord.mono().scale() as u128);
    let mut best: Option<ModuleMonomial> = None;
    for comp in 0..mord.rank() {
        let gd = mord.gen_degree(comp);
        if gd > target {
            continue;
        }
        let budget = target - gd;
        for a in mord.mono().words_up_to(budget) {
            let da = mord.mono().word_deg(&a);
            for b in mord.mono().words_up_to(budget - da) {
                if da + mord.mono().word_deg(&b) != budget {
                    continue;
                }
                let m = ModuleMonomial::new(a.clone(), comp, b);
                match &best {
                    Some(cur) if mord.cmp_sigs(&m, cur) != Ordering::Less => {}
                    _ => best = Some(m),
                }
            }
        }
    }
    best
}

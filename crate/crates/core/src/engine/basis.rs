//! The signature-basis engine: a pending queue processed strictly by
//! increasing signature, with syzygy and cover pruning, followed by
//! interreduction to the unique reduced basis.

use crate::arith::poly::Polynomial;
use crate::arith::scalar::Field;
use crate::arith::word::Word;
use crate::bimodule::{ModuleElement, ModuleMonomial, SigPolynomial};
use crate::engine::ambiguity::enumerate_ambiguities;
use crate::engine::reduce::regular_sig_reduce;
use crate::engine::syzygy::SyzygyTracker;
use crate::error::{Error, Result};
use crate::order::{ModuleOrder, SigBound, SigKey, WordKey};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

/// Tie-break policy for pending items of equal signature. The reduced basis
/// is unique, so the output must not depend on this; tests exercise both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueuePolicy {
    /// signature, then common leading monomial, then source indices
    #[default]
    LmaFirst,
    /// signature, then source indices, then common leading monomial
    SourceFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngineOptions {
    /// Carry full module labels through the computation.
    pub strong: bool,
    pub queue_policy: QueuePolicy,
}

/// Leading data of a basis: `(lm, sig)` per element, the zero sentinel
/// standing in for the leading monomial of a syzygy entry.
pub type LeadingData = Vec<(Option<Word>, ModuleMonomial)>;

/// A signature Gröbner basis up to a bound: nonzero monic polynomials paired
/// with their signatures, ascending by signature, at most one per signature,
/// plus the recorded syzygy signatures. In strong mode each element and each
/// syzygy also carries its full module label.
#[derive(Debug, Clone)]
pub struct SigBasis<F: Field> {
    pub elements: Vec<SigPolynomial<F>>,
    pub syzygies: Vec<ModuleMonomial>,
    /// Full labels of the recorded syzygies, parallel to `syzygies`
    /// (strong mode only).
    pub syzygy_labels: Option<Vec<ModuleElement<F>>>,
    pub bound: SigBound,
}

impl<F: Field> SigBasis<F> {
    /// Leading data: `(lm, sig)` for elements, `(zero sentinel, sig)` for
    /// recorded syzygies.
    pub fn leading_data(&self) -> LeadingData {
        let mut out: LeadingData = self
            .elements
            .iter()
            .map(|e| (e.poly.lm().cloned(), e.sig.clone()))
            .collect();
        out.extend(self.syzygies.iter().map(|s| (None, s.clone())));
        out
    }

    pub fn find_by_sig(&self, mord: &ModuleOrder, sig: &ModuleMonomial) -> Option<usize> {
        self.elements
            .binary_search_by(|e| mord.cmp_sigs(&e.sig, sig))
            .ok()
    }

    /// Trivial-syzygy knowledge of this basis plus its explicit syzygies.
    pub(crate) fn syzygy_tracker(&self, mord: &ModuleOrder) -> SyzygyTracker {
        let mut t = SyzygyTracker::new();
        t.record_explicit_all(&self.syzygies);
        for p in &self.elements {
            for q in &self.elements {
                if let (Some(lp), Some(lq)) = (p.poly.lm(), q.poly.lm()) {
                    t.record_pair(mord, &self.bound, &p.sig, lp, &q.sig, lq);
                }
            }
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Pending {
    Generator(usize),
    Pair {
        p: usize,
        q: usize,
        p_outer: (Word, Word),
        q_outer: (Word, Word),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct QueueItem {
    sig_key: SigKey,
    lma_key: WordKey,
    src: (usize, usize),
    policy: QueuePolicy,
    sig: ModuleMonomial,
    lma: Word,
    payload: Pending,
}

impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        let primary = self.sig_key.cmp(&other.sig_key);
        let tail = match self.policy {
            QueuePolicy::LmaFirst => self
                .lma_key
                .cmp(&other.lma_key)
                .then_with(|| self.src.cmp(&other.src)),
            QueuePolicy::SourceFirst => self
                .src
                .cmp(&other.src)
                .then_with(|| self.lma_key.cmp(&other.lma_key)),
        };
        primary.then(tail)
    }
}

impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Is the signature slot of a pending pair already covered by a nonzero
/// basis element: some `h` with `u sig(h) v = sig` and `u lm(h) v < lma`?
fn covered_by_element<F: Field>(
    mord: &ModuleOrder,
    basis: &[SigPolynomial<F>],
    sig: &ModuleMonomial,
    lma: &Word,
) -> bool {
    basis.iter().any(|h| {
        if let Some((u, v)) = sig.divide_by(&h.sig) {
            if let Some(lm) = h.poly.lm() {
                let shifted = u.concat(lm).concat(&v);
                return mord.mono().cmp_words(&shifted, lma) == Ordering::Less;
            }
        }
        false
    })
}

/// Compute the reduced signature Gröbner basis of the two-sided ideal
/// generated by `gens` up to the signature bound, processing pending
/// S-pairs and generator insertions strictly by increasing signature.
pub fn compute_sig_basis<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    gens: &[Polynomial<F>],
    bound: &SigBound,
    options: EngineOptions,
) -> Result<SigBasis<F>> {
    if gens.len() != mord.rank() {
        return Err(Error::RankMismatch {
            left: gens.len(),
            right: mord.rank(),
        });
    }
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroGenerator { index: i });
        }
    }

    let mut basis: Vec<SigPolynomial<F>> = Vec::new();
    let mut syz = SyzygyTracker::new();
    let mut syz_labels: Vec<ModuleElement<F>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<QueueItem>> = BinaryHeap::new();

    let push = |heap: &mut BinaryHeap<Reverse<QueueItem>>,
                sig: ModuleMonomial,
                lma: Word,
                src: (usize, usize),
                payload: Pending| {
        heap.push(Reverse(QueueItem {
            sig_key: mord.sig_key(&sig),
            lma_key: mord.mono().word_key(&lma),
            src,
            policy: options.queue_policy,
            sig,
            lma,
            payload,
        }));
    };

    for (i, g) in gens.iter().enumerate() {
        let sig = ModuleMonomial::epsilon(i);
        if bound.admits(&sig, mord) {
            push(
                &mut heap,
                sig,
                g.lm().unwrap().clone(),
                (i, i),
                Pending::Generator(i),
            );
        }
    }

    while let Some(Reverse(item)) = heap.pop() {
        // items pop in ascending signature order; the first one at or above
        // the bound means everything remaining is out of range
        if !bound.admits(&item.sig, mord) {
            break;
        }
        if syz.divides(&item.sig) {
            continue;
        }
        if matches!(item.payload, Pending::Pair { .. })
            && covered_by_element(mord, &basis, &item.sig, &item.lma)
        {
            continue;
        }

        let (raw, raw_label) = match &item.payload {
            Pending::Generator(i) => {
                let label = options.strong.then(|| {
                    ModuleElement::monomial(ModuleMonomial::epsilon(*i), field.one(), field)
                });
                (gens[*i].clone(), label)
            }
            Pending::Pair {
                p,
                q,
                p_outer,
                q_outer,
            } => {
                let neg_one = field.neg(&field.one());
                let poly = Polynomial::zero()
                    .combine(
                        field,
                        mord.mono(),
                        &field.one(),
                        &p_outer.0,
                        &basis[*p].poly,
                        &p_outer.1,
                    )
                    .combine(
                        field,
                        mord.mono(),
                        &neg_one,
                        &q_outer.0,
                        &basis[*q].poly,
                        &q_outer.1,
                    );
                let label = options.strong.then(|| {
                    ModuleElement::zero()
                        .combine(
                            field,
                            mord,
                            &field.one(),
                            &p_outer.0,
                            basis[*p].label.as_ref().unwrap(),
                            &p_outer.1,
                        )
                        .combine(
                            field,
                            mord,
                            &neg_one,
                            &q_outer.0,
                            basis[*q].label.as_ref().unwrap(),
                            &q_outer.1,
                        )
                });
                (poly, label)
            }
        };

        let (nf, nf_label) = regular_sig_reduce(field, mord, raw, &item.sig, raw_label, &basis);

        if nf.is_zero() {
            if options.strong {
                let label = nf_label.ok_or_else(|| {
                    Error::Internal("strong mode lost a label during reduction".into())
                })?;
                debug_assert_eq!(label.signature().ok(), Some(&item.sig));
                let lc = label.leading_coeff().unwrap().clone();
                syz_labels.push(label.scale(field, &field.inv(&lc)?));
            }
            syz.record_explicit(item.sig);
            continue;
        }

        // equal-signature rigidity: a second normal form at an existing
        // signature must be a scalar multiple of the first; discard it
        if let Ok(pos) = basis.binary_search_by(|e| mord.cmp_sigs(&e.sig, &item.sig)) {
            let (monic, _) = nf.make_monic(field)?;
            assert_eq!(
                monic, basis[pos].poly,
                "two non-proportional normal forms at one signature"
            );
            continue;
        }

        let (monic, lc) = nf.make_monic(field)?;
        let label = match nf_label {
            Some(l) => Some(l.scale(field, &field.inv(&lc)?)),
            None => None,
        };
        let new_idx = basis.len();
        let new = SigPolynomial {
            poly: monic,
            sig: item.sig,
            label,
        };

        for (other_idx, other) in basis.iter().enumerate() {
            let ambs = enumerate_ambiguities(mord, new_idx, &new, other_idx, other)?;
            for amb in ambs {
                if amb.regular && bound.admits(&amb.siga, mord) {
                    push(
                        &mut heap,
                        amb.siga.clone(),
                        amb.lma.clone(),
                        (amb.p.min(amb.q), amb.p.max(amb.q)),
                        Pending::Pair {
                            p: amb.p,
                            q: amb.q,
                            p_outer: amb.p_outer,
                            q_outer: amb.q_outer,
                        },
                    );
                }
            }
            // trivial-syzygy families, both orders
            let (lp, lq) = (new.poly.lm().unwrap(), other.poly.lm().unwrap());
            let members = syz.record_pair(mord, bound, &new.sig, lp, &other.sig, lq);
            push_trivial_labels(field, mord, &new, other, &members, &mut syz_labels)?;
            let members = syz.record_pair(mord, bound, &other.sig, lq, &new.sig, lp);
            push_trivial_labels(field, mord, other, &new, &members, &mut syz_labels)?;
        }
        // self pair
        let ambs = enumerate_ambiguities(mord, new_idx, &new, new_idx, &new)?;
        for amb in ambs {
            if amb.regular && bound.admits(&amb.siga, mord) {
                push(
                    &mut heap,
                    amb.siga.clone(),
                    amb.lma.clone(),
                    (amb.p, amb.q),
                    Pending::Pair {
                        p: amb.p,
                        q: amb.q,
                        p_outer: amb.p_outer,
                        q_outer: amb.q_outer,
                    },
                );
            }
        }
        let lp = new.poly.lm().unwrap().clone();
        let members = syz.record_pair(mord, bound, &new.sig, &lp, &new.sig, &lp);
        push_trivial_labels(field, mord, &new, &new, &members, &mut syz_labels)?;
        basis.push(new);
    }

    if options.strong {
        assert_eq!(
            syz.explicit().len(),
            syz_labels.len(),
            "syzygy labels out of step with recorded signatures"
        );
    }
    let raw = SigBasis {
        elements: basis,
        syzygies: syz.explicit().to_vec(),
        syzygy_labels: options.strong.then_some(syz_labels),
        bound: bound.clone(),
    };
    interreduce(field, mord, raw)
}

/// Strong mode: the module label of the trivial syzygy
/// `label_p * w * poly_q - poly_p * w * label_q`, made monic, for each
/// materialized family member. No-op when labels are not tracked.
fn push_trivial_labels<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    p: &SigPolynomial<F>,
    q: &SigPolynomial<F>,
    members: &[(ModuleMonomial, Word)],
    out: &mut Vec<ModuleElement<F>>,
) -> Result<()> {
    if members.is_empty() {
        return Ok(());
    }
    let (lp, lq) = match (&p.label, &q.label) {
        (Some(lp), Some(lq)) => (lp, lq),
        _ => return Ok(()),
    };
    for (sig, w) in members {
        let mut gamma = ModuleElement::zero();
        for (u, d) in q.poly.terms() {
            gamma = gamma.combine(field, mord, d, &Word::one(), lp, &w.concat(u));
        }
        for (t, c) in p.poly.terms() {
            gamma = gamma.combine(field, mord, &field.neg(c), &t.concat(w), lq, &Word::one());
        }
        debug_assert_eq!(gamma.signature().ok(), Some(sig));
        let lc = gamma.leading_coeff().unwrap().clone();
        out.push(gamma.scale(field, &field.inv(&lc)?));
    }
    Ok(())
}

/// Interreduce a (possibly raw) signature basis into the reduced one:
/// ascending by signature, at most one element per signature, every element
/// a regular-sig-reduced monic normal form, no element top-sig-reducible or
/// syz-reducible by the rest, and the explicit syzygy list mutually reduced.
/// Idempotent, and the output is independent of the input presentation.
pub fn interreduce<F: Field>(
    field: &F,
    mord: &ModuleOrder,
    basis: SigBasis<F>,
) -> Result<SigBasis<F>> {
    let SigBasis {
        mut elements,
        syzygies,
        syzygy_labels,
        bound,
    } = basis;
    let strong = syzygy_labels.is_some();
    if let Some(labels) = &syzygy_labels {
        if labels.len() != syzygies.len() {
            return Err(Error::Internal(
                "strong basis with mismatched syzygy label count".into(),
            ));
        }
    }

    elements.sort_by(|a, b| mord.cmp_sigs(&a.sig, &b.sig));
    let mut syz_entries: Vec<(ModuleMonomial, Option<ModuleElement<F>>)> = match &syzygy_labels {
        Some(labels) => syzygies
            .iter()
            .cloned()
            .zip(labels.iter().cloned().map(Some))
            .collect(),
        None => syzygies.iter().cloned().map(|s| (s, None)).collect(),
    };
    syz_entries.sort_by(|a, b| mord.cmp_sigs(&a.0, &b.0));

    let mut out: Vec<SigPolynomial<F>> = Vec::with_capacity(elements.len());
    let mut tracker = SyzygyTracker::new();
    for (s, _) in &syz_entries {
        tracker.record_explicit(s.clone());
    }

    for e in elements {
        // normal form against the smaller-signature survivors
        let (nf, label) = regular_sig_reduce(field, mord, e.poly, &e.sig, e.label, &out);
        if nf.is_zero() {
            // the element was secretly a syzygy representative
            if !tracker.divides(&e.sig) {
                if strong {
                    let l = label.ok_or_else(|| {
                        Error::Internal("strong mode lost a label in interreduce".into())
                    })?;
                    let lc = l.leading_coeff().unwrap().clone();
                    syz_entries.push((e.sig.clone(), Some(l.scale(field, &field.inv(&lc)?))));
                } else {
                    syz_entries.push((e.sig.clone(), None));
                }
                tracker.record_explicit(e.sig);
            }
            continue;
        }
        let (monic, lc) = nf.make_monic(field)?;
        let label = match label {
            Some(l) => Some(l.scale(field, &field.inv(&lc)?)),
            None => None,
        };
        // drop duplicates of an existing signature slot (proportional by the
        // equal-signature rigidity) and syzygy-signature slots
        if out
            .iter()
            .any(|h| mord.cmp_sigs(&h.sig, &e.sig) == Ordering::Equal)
            || tracker.divides(&e.sig)
        {
            continue;
        }
        // drop elements whose leading data is an exact shift of another's:
        // top-sig-reducible at equal shifted signature
        let top_reducible = out.iter().any(|h| {
            e.sig.divide_by(&h.sig).is_some_and(|(u, v)| {
                h.poly
                    .lm()
                    .is_some_and(|lm| u.concat(lm).concat(&v) == *monic.lm().unwrap())
            })
        });
        if top_reducible {
            continue;
        }
        out.push(SigPolynomial {
            poly: monic,
            sig: e.sig,
            label,
        });
        let lp = out.last().unwrap().poly.lm().unwrap().clone();
        let sp = out.last().unwrap().sig.clone();
        for other in &out[..out.len() - 1] {
            let (lq, sq) = (other.poly.lm().unwrap().clone(), other.sig.clone());
            tracker.record_pair(mord, &bound, &sp, &lp, &sq, &lq);
            tracker.record_pair(mord, &bound, &sq, &lq, &sp, &lp);
        }
        tracker.record_pair(mord, &bound, &sp, &lp, &sp, &lp);
    }

    // reduce the explicit syzygy list: drop entries divisible by another
    // entry or by a trivial-syzygy family of the final element set
    syz_entries.sort_by(|a, b| mord.cmp_sigs(&a.0, &b.0));
    syz_entries.dedup_by(|a, b| a.0 == b.0);
    let mut final_tracker = SyzygyTracker::new();
    for e in &syz_entries {
        final_tracker.record_explicit(e.0.clone());
    }
    for p in &out {
        for q in &out {
            final_tracker.record_pair(
                mord,
                &bound,
                &p.sig,
                p.poly.lm().unwrap(),
                &q.sig,
                q.poly.lm().unwrap(),
            );
        }
    }
    let kept: Vec<(ModuleMonomial, Option<ModuleElement<F>>)> = syz_entries
        .iter()
        .enumerate()
        .filter(|(i, (s, _))| !final_tracker.divides_excluding(s, *i))
        .map(|(_, e)| e.clone())
        .collect();

    let (syzygies, syzygy_labels) = if strong {
        let sigs = kept.iter().map(|(s, _)| s.clone()).collect();
        let labels = kept
            .iter()
            .map(|(_, l)| {
                l.clone()
                    .ok_or_else(|| Error::Internal("missing syzygy label in strong mode".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        (sigs, Some(labels))
    } else {
        (kept.into_iter().map(|(s, _)| s).collect(), None)
    };

    Ok(SigBasis {
        elements: out,
        syzygies,
        syzygy_labels,
        bound,
    })
}

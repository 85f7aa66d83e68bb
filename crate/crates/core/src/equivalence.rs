//! Deciding equivalence by bisimulation up to congruence on the determinized
//! syntactic automaton.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{build_nda, det_out, det_step, Nda, StateSet};
use crate::semantics::{render_word, Word};
use crate::syntax::{Signature, Term};

/// Pairs of configurations, each with the word that leads to it from the
/// start pair.
#[derive(Clone, Debug, Default)]
pub struct Relation {
    pub pairs: Vec<(StateSet, StateSet, Word)>,
}

impl Relation {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Equivalent(Relation),
    Inequivalent(Word),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            Verdict::Inequivalent(w) => Some(w),
            Verdict::Equivalent(_) => None,
        }
    }

    pub fn to_json(&self, sig: &Signature) -> String {
        #[derive(Serialize)]
        #[serde(tag = "result", rename_all = "lowercase")]
        enum Out {
            Equivalent { relation_size: usize },
            Inequivalent { witness: String },
        }
        let out = match self {
            Verdict::Equivalent(r) => Out::Equivalent { relation_size: r.len() },
            Verdict::Inequivalent(w) => Out::Inequivalent { witness: render_word(w, sig) },
        };
        serde_json::to_string(&out).expect("verdicts always serialize")
    }
}

/// Grows `set` to its normal form under the rules `C -> C ∪ D` and
/// `D -> C ∪ D` for every pair `(C, D)`.
fn normal_form<'a, I>(mut set: StateSet, pairs: I) -> StateSet
where
    I: Iterator<Item = (&'a StateSet, &'a StateSet)> + Clone,
{
    loop {
        let mut changed = false;
        for (c, d) in pairs.clone() {
            let fires = c.is_subset(&set) || d.is_subset(&set);
            if fires && !(c.is_subset(&set) && d.is_subset(&set)) {
                set.union_with(c);
                set.union_with(d);
                changed = true;
            }
        }
        if !changed {
            return set;
        }
    }
}

fn congruent<'a, I>(x: &StateSet, y: &StateSet, pairs: I) -> bool
where
    I: Iterator<Item = (&'a StateSet, &'a StateSet)> + Clone,
{
    x == y || normal_form(x.clone(), pairs.clone()) == normal_form(y.clone(), pairs)
}

/// Whether `(x, y)` lies in the congruence closure of `r` (the least
/// equivalence containing `r` that is compatible with union).
pub fn congruence_member(x: &StateSet, y: &StateSet, r: &Relation) -> bool {
    congruent(x, y, r.pairs.iter().map(|(c, d, _)| (c, d)))
}

/// What happened to one pair taken off the worklist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// The outputs differ: the access word is a counterexample.
    Mismatch,
    /// Already in the congruence closure.
    Skipped,
    /// Added to the relation; successors queued.
    Added,
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub left: StateSet,
    pub right: StateSet,
    pub word: Word,
    pub kind: StepKind,
}

#[derive(Clone, Copy, Debug)]
pub struct HkcOptions {
    /// Count pending pairs when testing congruence membership.
    pub pending_in_congruence: bool,
    pub record_trace: bool,
}

impl Default for HkcOptions {
    fn default() -> Self {
        HkcOptions { pending_in_congruence: true, record_trace: false }
    }
}

/// Breadth-first search for a bisimulation up to congruence relating `u`
/// and `v`.
pub fn hkc_decide(nda: &Nda, u: &StateSet, v: &StateSet) -> Verdict {
    hkc_search(nda, u, v, HkcOptions::default()).0
}

pub fn hkc_search(nda: &Nda, u: &StateSet, v: &StateSet, opts: HkcOptions) -> (Verdict, Vec<TraceStep>) {
    let mut trace = Vec::new();
    let mut rel = Relation::default();
    let mut todo: VecDeque<(StateSet, StateSet, Word)> = VecDeque::new();
    todo.push_back((u.clone(), v.clone(), Word::empty()));

    while let Some((x, y, w)) = todo.pop_front() {
        let kind = if det_out(nda, &x) != det_out(nda, &y) {
            StepKind::Mismatch
        } else {
            let done = if opts.pending_in_congruence {
                let pending = todo.iter().map(|(c, d, _)| (c, d));
                congruent(&x, &y, rel.pairs.iter().map(|(c, d, _)| (c, d)).chain(pending))
            } else {
                congruence_member(&x, &y, &rel)
            };
            if done {
                StepKind::Skipped
            } else {
                StepKind::Added
            }
        };
        if opts.record_trace {
            trace.push(TraceStep { left: x.clone(), right: y.clone(), word: w.clone(), kind: kind.clone() });
        }
        match kind {
            StepKind::Mismatch => return (Verdict::Inequivalent(w), trace),
            StepKind::Skipped => {}
            StepKind::Added => {
                for (li, l) in nda.letters().iter().enumerate() {
                    todo.push_back((det_step(nda, &x, li), det_step(nda, &y, li), w.pushed(l.clone())));
                }
                rel.pairs.push((x, y, w));
            }
        }
    }
    (Verdict::Equivalent(rel), trace)
}

/// A verdict together with the automaton it was computed on.
#[derive(Clone, Debug)]
pub struct Decision {
    pub nda: Nda,
    pub left: StateSet,
    pub right: StateSet,
    pub verdict: Verdict,
    pub trace: Vec<TraceStep>,
}

impl Decision {
    /// Re-checks an `Equivalent` verdict's relation against the definition of
    /// bisimulation up to congruence, and that it relates the start pair.
    /// `Inequivalent` verdicts are checked by replaying the witness.
    pub fn certify(&self) -> bool {
        match &self.verdict {
            Verdict::Equivalent(r) => {
                check_bisim_up_to_congruence(&self.nda, r) && congruence_member(&self.left, &self.right, r)
            }
            Verdict::Inequivalent(w) => {
                crate::automaton::accepts(&self.nda, &self.left, w)
                    != crate::automaton::accepts(&self.nda, &self.right, w)
            }
        }
    }
}

pub fn decide_with(e: &Term, f: &Term, sig: &Signature, opts: HkcOptions) -> Decision {
    let (nda, left, right) = build_nda(e, f, sig);
    let (verdict, trace) = hkc_search(&nda, &left, &right, opts);
    Decision { nda, left, right, verdict, trace }
}

/// Decides whether `e` and `f` denote the same language.
pub fn decide(e: &Term, f: &Term, sig: &Signature) -> Verdict {
    decide_with(e, f, sig, HkcOptions::default()).verdict
}

/// Union-find over configurations, assigned ids on first sight.
#[derive(Default)]
struct Classes {
    ids: HashMap<StateSet, usize>,
    parent: Vec<usize>,
}

impl Classes {
    fn id(&mut self, s: &StateSet) -> usize {
        if let Some(&i) = self.ids.get(s) {
            return i;
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.ids.insert(s.clone(), i);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }
}

/// Hopcroft-Karp equivalence checking: pairs are skipped only when already
/// merged into one class.
pub fn naive_hk(nda: &Nda, u: &StateSet, v: &StateSet) -> Verdict {
    let mut classes = Classes::default();
    let mut rel = Relation::default();
    let mut todo = VecDeque::from([(u.clone(), v.clone(), Word::empty())]);
    while let Some((x, y, w)) = todo.pop_front() {
        let (i, j) = (classes.id(&x), classes.id(&y));
        let (ri, rj) = (classes.find(i), classes.find(j));
        if ri == rj {
            continue;
        }
        if det_out(nda, &x) != det_out(nda, &y) {
            return Verdict::Inequivalent(w);
        }
        classes.parent[ri] = rj;
        for (li, l) in nda.letters().iter().enumerate() {
            todo.push_back((det_step(nda, &x, li), det_step(nda, &y, li), w.pushed(l.clone())));
        }
        rel.pairs.push((x, y, w));
    }
    Verdict::Equivalent(rel)
}

pub fn naive_decide(e: &Term, f: &Term, sig: &Signature) -> Verdict {
    let (nda, u, v) = build_nda(e, f, sig);
    naive_hk(&nda, &u, &v)
}

/// Checks that every pair of `r` has equal outputs and that all its
/// successor pairs lie in the congruence closure of `r`.
pub fn check_bisim_up_to_congruence(nda: &Nda, r: &Relation) -> bool {
    r.pairs.iter().all(|(x, y, _)| {
        det_out(nda, x) == det_out(nda, y)
            && (0..nda.letters().len()).all(|li| congruence_member(&det_step(nda, x, li), &det_step(nda, y, li), r))
    })
}

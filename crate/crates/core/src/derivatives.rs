//! Termination, partial continuations for actions and atoms, reach and
//! initial factors.
//!
//! All maps work on raw syntax: no term is simplified, so `1 ; x` and `x` are
//! different continuations.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::boolean::{all_atoms, holds, pi_atom, Atom};
use crate::syntax::{canonical_sum, Signature, Term, TermKind};

/// Whether `e` can terminate without reading anything.
pub fn epsilon(e: &Term) -> bool {
    if let Some(&b) = e.epsilon_cache().get() {
        return b;
    }
    let b = match e.kind() {
        TermKind::Zero | TermKind::Act(_) | TermKind::Prop(_) => false,
        TermKind::One | TermKind::Star(_) => true,
        TermKind::Plus(f, g) => epsilon(f) || epsilon(g),
        TermKind::Seq(f, g) => epsilon(f) && epsilon(g),
    };
    let _ = e.epsilon_cache().set(b);
    b
}

/// A duplicate-free list that keeps insertion order.
#[derive(Default)]
struct Collect {
    seen: HashSet<Term>,
    items: Vec<Term>,
}

impl Collect {
    fn insert(&mut self, t: Term) {
        if self.seen.insert(t.clone()) {
            self.items.push(t);
        }
    }

    fn extend<I: IntoIterator<Item = Term>>(&mut self, it: I) {
        for t in it {
            self.insert(t);
        }
    }
}

/// Memoizing evaluator for the continuation maps over one signature.
/// Results are shared between the many states of an automaton that have
/// common suffixes.
pub struct Derivatives<'s> {
    sig: &'s Signature,
    delta_memo: HashMap<(Term, usize), Vec<Term>>,
    zeta_memo: HashMap<(Term, Atom), Vec<Term>>,
    reach_memo: HashMap<Term, Vec<Term>>,
}

impl<'s> Derivatives<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        Derivatives { sig, delta_memo: HashMap::new(), zeta_memo: HashMap::new(), reach_memo: HashMap::new() }
    }

    pub fn signature(&self) -> &'s Signature {
        self.sig
    }

    /// Continuations after the action with index `a` in the signature.
    pub fn delta_index(&mut self, e: &Term, a: usize) -> Vec<Term> {
        if let Some(v) = self.delta_memo.get(&(e.clone(), a)) {
            return v.clone();
        }
        let out = match e.kind() {
            TermKind::Zero | TermKind::One | TermKind::Prop(_) => Vec::new(),
            TermKind::Act(b) => {
                if **b == *self.sig.actions()[a] {
                    vec![Term::one()]
                } else {
                    Vec::new()
                }
            }
            TermKind::Plus(f, g) => {
                let mut c = Collect::default();
                c.extend(self.delta_index(f, a));
                c.extend(self.delta_index(g, a));
                c.items
            }
            TermKind::Seq(f, g) => {
                let mut c = Collect::default();
                c.extend(self.delta_index(f, a).into_iter().map(|d| Term::seq(d, g.clone())));
                if epsilon(f) {
                    c.extend(self.delta_index(g, a));
                }
                c.items
            }
            TermKind::Star(f) => {
                let mut c = Collect::default();
                c.extend(self.delta_index(f, a).into_iter().map(|d| Term::seq(d, e.clone())));
                c.items
            }
        };
        self.delta_memo.insert((e.clone(), a), out.clone());
        out
    }

    /// Continuations after observing `alpha`. An observation may be reused by
    /// the factor that follows a sequential composition.
    pub fn zeta(&mut self, e: &Term, alpha: Atom) -> Vec<Term> {
        if let Some(v) = self.zeta_memo.get(&(e.clone(), alpha)) {
            return v.clone();
        }
        let out = match e.kind() {
            TermKind::Zero | TermKind::One | TermKind::Act(_) => Vec::new(),
            TermKind::Prop(p) => {
                if holds(p, alpha, self.sig) {
                    vec![Term::one()]
                } else {
                    Vec::new()
                }
            }
            TermKind::Plus(f, g) => {
                let mut c = Collect::default();
                c.extend(self.zeta(f, alpha));
                c.extend(self.zeta(g, alpha));
                c.items
            }
            TermKind::Seq(f, g) => {
                let first = self.zeta(f, alpha);
                let reuse = epsilon(f) || first.iter().any(epsilon);
                let mut c = Collect::default();
                c.extend(first.into_iter().map(|d| Term::seq(d, g.clone())));
                if reuse {
                    c.extend(self.zeta(g, alpha));
                }
                c.items
            }
            TermKind::Star(f) => {
                let mut c = Collect::default();
                c.extend(self.zeta(f, alpha).into_iter().map(|d| Term::seq(d, e.clone())));
                c.items
            }
        };
        self.zeta_memo.insert((e.clone(), alpha), out.clone());
        out
    }

    pub fn reach(&mut self, e: &Term) -> Vec<Term> {
        if let Some(v) = self.reach_memo.get(e) {
            return v.clone();
        }
        let out = match e.kind() {
            TermKind::Zero => Vec::new(),
            TermKind::One => vec![Term::one()],
            TermKind::Act(_) | TermKind::Prop(_) => vec![Term::one(), e.clone()],
            TermKind::Plus(f, g) => {
                let mut c = Collect::default();
                c.extend(self.reach(f));
                c.extend(self.reach(g));
                c.items
            }
            TermKind::Seq(f, g) => {
                let mut c = Collect::default();
                c.extend(self.reach(f).into_iter().map(|r| Term::seq(r, g.clone())));
                c.extend(self.reach(g));
                c.items
            }
            TermKind::Star(f) => {
                let mut c = Collect::default();
                c.insert(Term::one());
                c.extend(self.reach(f).into_iter().map(|r| Term::seq(r, e.clone())));
                c.items
            }
        };
        self.reach_memo.insert(e.clone(), out.clone());
        out
    }
}

/// Action continuations of `e` after `a`.
pub fn delta(e: &Term, a: &str, sig: &Signature) -> BTreeSet<Term> {
    match sig.actions().iter().position(|b| &**b == a) {
        Some(i) => Derivatives::new(sig).delta_index(e, i).into_iter().collect(),
        None => BTreeSet::new(),
    }
}

/// Observation continuations of `e` after `alpha`.
pub fn zeta(e: &Term, alpha: Atom, sig: &Signature) -> BTreeSet<Term> {
    Derivatives::new(sig).zeta(e, alpha).into_iter().collect()
}

/// Every term reachable from `e` by continuations (not necessarily `e` itself).
pub fn reach(e: &Term) -> BTreeSet<Term> {
    // reach never consults the signature
    let sig = Signature::new(Vec::<&str>::new(), Vec::<&str>::new()).expect("empty signature");
    Derivatives::new(&sig).reach(e).into_iter().collect()
}

/// Factors whose sum is equivalent to `e`.
pub fn initial(e: &Term) -> BTreeSet<Term> {
    fn go(e: &Term, out: &mut Vec<Term>) {
        match e.kind() {
            TermKind::Zero => {}
            TermKind::One | TermKind::Act(_) | TermKind::Prop(_) => out.push(e.clone()),
            TermKind::Plus(f, g) => {
                go(f, out);
                go(g, out);
            }
            TermKind::Seq(f, g) => {
                let mut inner = Vec::new();
                go(f, &mut inner);
                out.extend(inner.into_iter().map(|i| Term::seq(i, g.clone())));
            }
            TermKind::Star(f) => {
                out.push(Term::one());
                let mut inner = Vec::new();
                go(f, &mut inner);
                out.extend(inner.into_iter().map(|i| Term::seq(i, e.clone())));
            }
        }
    }
    let mut out = Vec::new();
    go(e, &mut out);
    out.into_iter().collect()
}

/// `ε(e) + Σ a ; e' + Σ [π_α] ; e'` over every action and atom, as a
/// canonical sum.
pub fn fundamental_expansion(e: &Term, sig: &Signature) -> Term {
    let mut d = Derivatives::new(sig);
    let mut parts = Vec::new();
    if epsilon(e) {
        parts.push(Term::one());
    }
    for (i, a) in sig.actions().iter().enumerate() {
        for e2 in d.delta_index(e, i) {
            parts.push(Term::seq(Term::new(TermKind::Act(a.clone())), e2));
        }
    }
    for alpha in all_atoms(sig) {
        let pi = Term::prop(pi_atom(alpha, sig));
        for e2 in d.zeta(e, alpha) {
            parts.push(Term::seq(pi.clone(), e2));
        }
    }
    canonical_sum(parts)
}

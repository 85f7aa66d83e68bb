//! The syntactic automaton over a derivative-closed set of terms, with
//! determinized stepping and DOT export.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::boolean::render_atom;
use crate::derivatives::{epsilon, initial, Derivatives};
use crate::semantics::{letters, Letter, Word};
use crate::syntax::{Signature, Term};

/// A set of states of one [`Nda`], as a bitset over state indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(Vec<u64>);

impl StateSet {
    pub fn empty(n_states: usize) -> Self {
        StateSet(vec![0; n_states.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A nondeterministic automaton whose states are terms, with output ε and
/// transitions given by the action and observation continuations.
#[derive(Clone, Debug)]
pub struct Nda {
    sig: Signature,
    states: Vec<Term>,
    index: HashMap<Term, usize>,
    letters: Vec<Letter>,
    output: Vec<bool>,
    // trans[state][letter] lists target states in increasing order
    trans: Vec<Vec<Vec<u32>>>,
}

impl Nda {
    /// The automaton over the closure of `roots` under continuations. States
    /// are kept in rendering order.
    pub fn over(roots: impl IntoIterator<Item = Term>, sig: &Signature) -> Nda {
        let mut d = Derivatives::new(sig);
        let letters = letters(sig);
        let n_atoms = 1usize << sig.observables().len();

        let successors = |d: &mut Derivatives, q: &Term, li: usize| -> Vec<Term> {
            match &letters[li] {
                Letter::Atom(alpha) => d.zeta(q, *alpha),
                Letter::Action(_) => d.delta_index(q, li - n_atoms),
            }
        };

        let mut seen: BTreeSet<Term> = roots.into_iter().collect();
        let mut work: Vec<Term> = seen.iter().cloned().collect();
        while let Some(q) = work.pop() {
            for li in 0..letters.len() {
                for t in successors(&mut d, &q, li) {
                    if seen.insert(t.clone()) {
                        work.push(t);
                    }
                }
            }
        }

        let states: Vec<Term> = seen.into_iter().collect();
        let index: HashMap<Term, usize> = states.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let output = states.iter().map(epsilon).collect();
        let trans = states
            .iter()
            .map(|q| {
                (0..letters.len())
                    .map(|li| {
                        let mut ts: Vec<u32> = successors(&mut d, q, li).iter().map(|t| index[t] as u32).collect();
                        ts.sort_unstable();
                        ts.dedup();
                        ts
                    })
                    .collect()
            })
            .collect();
        Nda { sig: sig.clone(), states, index, letters, output, trans }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn states(&self) -> &[Term] {
        &self.states
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn state_index(&self, q: &Term) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn output(&self, q: usize) -> bool {
        self.output[q]
    }

    pub fn transition(&self, q: usize, letter: usize) -> &[u32] {
        &self.trans[q][letter]
    }

    /// Position of `l` in [`Nda::letters`].
    pub fn letter_index(&self, l: &Letter) -> Option<usize> {
        match l {
            Letter::Atom(a) => {
                let n_atoms = 1usize << self.sig.observables().len();
                let m = a.mask() as usize;
                (m < n_atoms).then_some(m)
            }
            Letter::Action(x) => {
                let n_atoms = 1usize << self.sig.observables().len();
                self.sig.actions().iter().position(|y| y == x).map(|i| n_atoms + i)
            }
        }
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.states.len())
    }

    /// The configuration holding the given terms.
    ///
    /// Panics if a term is not a state.
    pub fn state_set<'a>(&self, terms: impl IntoIterator<Item = &'a Term>) -> StateSet {
        let mut s = self.empty_set();
        for t in terms {
            let i = self.state_index(t).unwrap_or_else(|| panic!("`{t}` is not a state"));
            s.insert(i);
        }
        s
    }

    /// The terms of a configuration, in state order.
    pub fn terms(&self, v: &StateSet) -> Vec<&Term> {
        v.iter().map(|i| &self.states[i]).collect()
    }
}

/// The syntactic automaton for comparing `e` and `f`, with start
/// configurations `ι(e)` and `ι(f)`.
pub fn build_nda(e: &Term, f: &Term, sig: &Signature) -> (Nda, StateSet, StateSet) {
    let mut d = Derivatives::new(sig);
    let mut roots = d.reach(e);
    roots.extend(d.reach(f));
    let nda = Nda::over(roots, sig);
    let u = nda.state_set(&initial(e));
    let v = nda.state_set(&initial(f));
    (nda, u, v)
}

pub fn det_step(nda: &Nda, v: &StateSet, letter: usize) -> StateSet {
    let mut out = nda.empty_set();
    for q in v.iter() {
        for &t in &nda.trans[q][letter] {
            out.insert(t as usize);
        }
    }
    out
}

pub fn det_out(nda: &Nda, v: &StateSet) -> bool {
    v.iter().any(|q| nda.output[q])
}

/// Whether the configuration `v` accepts `w`.
///
/// Panics if `w` uses a letter outside the automaton's signature.
pub fn accepts(nda: &Nda, v: &StateSet, w: &Word) -> bool {
    let mut cur = v.clone();
    for l in w.letters() {
        let li = nda.letter_index(l).expect("letter outside the signature");
        cur = det_step(nda, &cur, li);
        if cur.is_empty() {
            return false;
        }
    }
    det_out(nda, &cur)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn letter_label(l: &Letter, sig: &Signature) -> String {
    match l {
        Letter::Atom(a) => render_atom(*a, sig),
        Letter::Action(x) => x.to_string(),
    }
}

/// Graphviz rendering. Edges between the same two states are merged into
/// one edge whose label lists the letters in letter order.
pub fn to_dot(nda: &Nda, starts: &[StateSet]) -> String {
    let mut out = String::new();
    out.push_str("digraph nda {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (i, q) in nda.states.iter().enumerate() {
        let shape = if nda.output[i] { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{i} [label=\"{}\", shape={shape}];", dot_escape(&q.render()));
    }
    for (k, s) in starts.iter().enumerate() {
        let _ = writeln!(out, "  s{k} [shape=point];");
        for q in s.iter() {
            let _ = writeln!(out, "  s{k} -> q{q};");
        }
    }
    for q in 0..nda.states.len() {
        let mut edges: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for (li, targets) in nda.trans[q].iter().enumerate() {
            for &t in targets {
                edges.entry(t).or_default().push(letter_label(&nda.letters[li], &nda.sig));
            }
        }
        for (t, labels) in edges {
            let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", dot_escape(&labels.join(", ")));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::Atom;
    use crate::derivatives::reach;
    use crate::semantics::parse_word;
    use crate::syntax::{parse_term, PropTerm};

    fn ab_sig() -> Signature {
        Signature::new(["a", "b"], Vec::<&str>::new()).unwrap()
    }

    #[test]
    fn single_action() {
        let s = Signature::new(Vec::<&str>::new(), ["x"]).unwrap();
        let x = Term::act("x");
        let (nda, u, v) = build_nda(&x, &x, &s);
        assert_eq!(nda.states(), &[Term::one(), x.clone()]);
        let xi = nda.state_index(&x).unwrap();
        let one = nda.state_index(&Term::one()).unwrap();
        let li = nda.letter_index(&Letter::Action("x".into())).unwrap();
        assert_eq!(nda.transition(xi, li), &[one as u32]);
        assert!(nda.output(one) && !nda.output(xi));
        assert_eq!(u, v);
        assert!(accepts(&nda, &u, &parse_word("x", &s).unwrap()));
        assert!(!accepts(&nda, &u, &Word::empty()));
    }

    #[test]
    fn zero_has_no_states() {
        let s = ab_sig();
        let (nda, u, v) = build_nda(&Term::zero(), &Term::zero(), &s);
        assert!(nda.states().is_empty());
        assert!(u.is_empty() && v.is_empty());
        assert!(!to_dot(&nda, &[u, v]).contains("q0"));
    }

    #[test]
    fn states_are_the_reach_sets() {
        let s = Signature::new(["p"], ["x", "y"]).unwrap();
        let e = parse_term("(x ; [p])* ; y + [!p]", &s).unwrap();
        let f = parse_term("x* ; ([p] + y)", &s).unwrap();
        let (nda, _, _) = build_nda(&e, &f, &s);
        let mut want = reach(&e);
        want.extend(reach(&f));
        assert_eq!(nda.states().iter().cloned().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn conjunction_versus_sequence_steps() {
        let s = ab_sig();
        let conj = Term::prop(PropTerm::and(PropTerm::obs("a"), PropTerm::obs("b")));
        let seq = Term::seq(Term::obs("a"), Term::obs("b"));
        let (nda, u, v) = build_nda(&conj, &seq, &s);
        let alpha = nda.letter_index(&Letter::Atom(Atom::of(&s, &["a", "b"]))).unwrap();
        let beta = nda.letter_index(&Letter::Atom(Atom::of(&s, &["b"]))).unwrap();

        let u1 = det_step(&nda, &u, alpha);
        let v1 = det_step(&nda, &v, alpha);
        assert_eq!(u1, nda.state_set(&[Term::one()]));
        assert_eq!(v1, nda.state_set(&[Term::seq(Term::one(), Term::obs("b")), Term::one()]));

        assert!(det_step(&nda, &u1, beta).is_empty());
        assert_eq!(det_step(&nda, &v1, beta), nda.state_set(&[Term::one()]));

        let w = parse_word("{a,b} {b}", &s).unwrap();
        assert!(!accepts(&nda, &u, &w));
        assert!(accepts(&nda, &v, &w));
    }

    #[test]
    fn observations_are_reused() {
        let s = Signature::new(["o1", "o2"], Vec::<&str>::new()).unwrap();
        let e = Term::seq(Term::obs("o1"), Term::obs("o2"));
        let (nda, u, _) = build_nda(&e, &e, &s);
        assert!(accepts(&nda, &u, &parse_word("{o1,o2}", &s).unwrap()));
    }

    #[test]
    fn determinized_output() {
        let s = Signature::new(Vec::<&str>::new(), ["x"]).unwrap();
        let x = Term::act("x");
        let (nda, _, _) = build_nda(&x, &x, &s);
        let empty = nda.empty_set();
        assert!(det_step(&nda, &empty, 0).is_empty());
        assert!(!det_out(&nda, &empty));
        assert!(det_out(&nda, &nda.state_set(&[Term::one(), x.clone()])));
    }

    #[test]
    fn dot_export() {
        let s = Signature::new(["p"], ["x"]).unwrap();
        let x = Term::act("x");
        let (nda, u, v) = build_nda(&x, &x, &s);
        let dot = to_dot(&nda, &[u.clone(), v.clone()]);
        assert_eq!(dot.matches(" -> q").count() - 2, 1);
        assert!(dot.contains("[label=\"x\"]"));
        assert!(dot.contains("shape=doublecircle"));
        assert_eq!(dot, to_dot(&nda, &[u, v]));

        let e = parse_term("[p \\/ !p] ; x", &s).unwrap();
        let (nda, u, _) = build_nda(&e, &e, &s);
        let dot = to_dot(&nda, &[u]);
        assert!(dot.contains("p \\\\/ !p"));
        assert!(dot.contains("label=\"{}, {p}\""));
    }

    #[test]
    fn state_set_operations() {
        let mut a = StateSet::empty(130);
        a.insert(0);
        a.insert(129);
        let mut b = StateSet::empty(130);
        b.insert(64);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 129]);
        assert!(!b.is_subset(&a));
        let c = a.union(&b);
        assert!(a.is_subset(&c) && b.is_subset(&c));
        assert_eq!(c.len(), 3);
    }
}

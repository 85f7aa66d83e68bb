//! Brute-force language oracle for the weak and the contraction-closed
//! semantics of terms. Nothing here looks at derivatives or automata.
//!
//! Membership of a word `w` in the closed language of `e` asks for an
//! expansion of `w` (some atom letters repeated) that lies in the plain
//! language of `e`. The evaluator computes, for every subterm and every span
//! of `w`, the least number of repeated atoms such an expansion needs: paths
//! through the "stutter graph" of `w` (points `0..=|w|`, an edge `k-1 -> k`
//! reading `w[k-1]`, and a cost-1 loop at `k` re-reading `w[k-1]` when it is
//! an atom), composed in the (min, +) semiring. Cost 0 is plain membership.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::boolean::{all_atoms, render_atom, Atom};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::syntax::{PropTerm, Signature, Symbol, Term, TermKind};

/// Default cap on the number of words a bounded enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A letter of `Γ`: either an atom or an action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Atom(Atom),
    Action(Symbol),
}

/// Every letter of the signature: atoms in mask order, then actions in
/// declaration order.
pub fn letters(sig: &Signature) -> Vec<Letter> {
    all_atoms(sig).into_iter().map(Letter::Atom).chain(sig.actions().iter().cloned().map(Letter::Action)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn pushed(&self, l: Letter) -> Word {
        let mut w = self.clone();
        w.push(l);
        w
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        WordDisplay(self, sig)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

struct WordDisplay<'a>(&'a Word, &'a Signature);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0 .0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match l {
                Letter::Atom(a) => f.write_str(&render_atom(*a, self.1))?,
                Letter::Action(name) => f.write_str(name)?,
            }
        }
        Ok(())
    }
}

/// Letters separated by single spaces; atoms as `{o1,o2}`, actions bare.
pub fn render_word(w: &Word, sig: &Signature) -> String {
    w.display(sig).to_string()
}

/// Inverse of [`render_word`]; whitespace inside braces is tolerated.
pub fn parse_word(text: &str, sig: &Signature) -> Result<Word> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let pos = text.len() - rest.len();
        if let Some(body) = rest.strip_prefix('{') {
            let close = body.find('}').ok_or(Error::Syntax { pos, message: "unclosed `{`".into() })?;
            let mut mask = 0u32;
            for name in body[..close].split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let i = sig.observable_index(name).ok_or_else(|| Error::UnknownSymbol {
                    name: name.to_string(),
                    kind: crate::error::SymbolKind::Observable,
                })?;
                mask |= 1 << i;
            }
            out.push(Letter::Atom(Atom::from_mask(mask)));
            rest = &body[close + 1..];
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let name = &rest[..end];
            let sym = sig.action(name).ok_or_else(|| Error::UnknownSymbol {
                name: name.to_string(),
                kind: crate::error::SymbolKind::Action,
            })?;
            out.push(Letter::Action(sym.clone()));
            rest = &rest[end..];
        }
        rest = rest.trim_start();
    }
    Ok(Word(out))
}

/// Slack used when none is given: `2 * size(e) + 2`.
pub fn default_slack(e: &Term) -> usize {
    2 * e.size() + 2
}

// ---------------------------------------------------------------------------
// Contraction

/// Words obtained from `w` by merging one adjacent pair of equal atoms.
pub fn contract_steps(w: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for i in 0..w.len().saturating_sub(1) {
        if let (Letter::Atom(a), Letter::Atom(b)) = (&w.0[i], &w.0[i + 1]) {
            if a == b {
                let mut v = w.0.clone();
                v.remove(i);
                out.insert(Word(v));
            }
        }
    }
    out
}

/// Least superset of `lang` closed under [`contract_steps`].
pub fn closure_finite(lang: &BTreeSet<Word>) -> BTreeSet<Word> {
    let mut out = lang.clone();
    let mut work: Vec<Word> = lang.iter().cloned().collect();
    while let Some(w) = work.pop() {
        for v in contract_steps(&w) {
            if out.insert(v.clone()) {
                work.push(v);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Span evaluation

const INF: u32 = u32::MAX;

fn add(a: u32, b: u32) -> u32 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

#[derive(Clone, Debug)]
enum CProp {
    Const(bool),
    Obs(usize),
    Or(Box<CProp>, Box<CProp>),
    And(Box<CProp>, Box<CProp>),
    Not(Box<CProp>),
}

impl CProp {
    fn new(p: &PropTerm, sig: &Signature) -> Self {
        match p {
            PropTerm::Bot => CProp::Const(false),
            PropTerm::Top => CProp::Const(true),
            PropTerm::Obs(o) => CProp::Obs(
                sig.observable_index(o).unwrap_or_else(|| panic!("`{o}` is not an observable of the signature")),
            ),
            PropTerm::Or(l, r) => CProp::Or(Box::new(CProp::new(l, sig)), Box::new(CProp::new(r, sig))),
            PropTerm::And(l, r) => CProp::And(Box::new(CProp::new(l, sig)), Box::new(CProp::new(r, sig))),
            PropTerm::Not(q) => CProp::Not(Box::new(CProp::new(q, sig))),
        }
    }

    fn eval(&self, a: Atom) -> bool {
        match self {
            CProp::Const(b) => *b,
            CProp::Obs(i) => a.contains(*i),
            CProp::Or(l, r) => l.eval(a) || r.eval(a),
            CProp::And(l, r) => l.eval(a) && r.eval(a),
            CProp::Not(q) => !q.eval(a),
        }
    }
}

#[derive(Clone, Debug)]
enum CNode {
    Zero,
    One,
    Act(Symbol),
    Prop(CProp),
    Plus(usize, usize),
    Seq(usize, usize),
    Star(usize),
}

/// A term flattened into a DAG of distinct subterms, children before parents.
#[derive(Clone, Debug)]
struct Compiled {
    nodes: Vec<CNode>,
}

impl Compiled {
    fn new(e: &Term, sig: &Signature) -> Self {
        let mut ids: HashMap<Term, usize> = HashMap::new();
        let mut nodes = Vec::new();
        // iterative post-order; deep sums would otherwise blow the stack
        let mut stack: Vec<(Term, bool)> = vec![(e.clone(), false)];
        while let Some((t, expanded)) = stack.pop() {
            if ids.contains_key(&t) {
                continue;
            }
            if !expanded {
                stack.push((t.clone(), true));
                match t.kind() {
                    TermKind::Plus(a, b) | TermKind::Seq(a, b) => {
                        stack.push((b.clone(), false));
                        stack.push((a.clone(), false));
                    }
                    TermKind::Star(a) => stack.push((a.clone(), false)),
                    _ => {}
                }
                continue;
            }
            let node = match t.kind() {
                TermKind::Zero => CNode::Zero,
                TermKind::One => CNode::One,
                TermKind::Act(a) => CNode::Act(a.clone()),
                TermKind::Prop(p) => CNode::Prop(CProp::new(p, sig)),
                TermKind::Plus(a, b) => CNode::Plus(ids[a], ids[b]),
                TermKind::Seq(a, b) => CNode::Seq(ids[a], ids[b]),
                TermKind::Star(a) => CNode::Star(ids[a]),
            };
            ids.insert(t, nodes.len());
            nodes.push(node);
        }
        Compiled { nodes }
    }

    fn root(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Column-incremental evaluation of a compiled term against a growing word.
/// `cols[node][l][k]` is the least expansion cost of a piece of `node`
/// spanning points `k..=l` (for `k <= l`).
struct Spans<'c> {
    term: &'c Compiled,
    cols: Vec<Vec<Vec<u32>>>,
}

impl<'c> Spans<'c> {
    fn new(term: &'c Compiled) -> Self {
        let mut s = Spans { term, cols: vec![Vec::new(); term.nodes.len()] };
        s.push_column(None);
        s
    }

    fn len(&self) -> usize {
        self.cols[0].len() - 1
    }

    /// Extends the word by `letter` (or initializes point 0 when `None`).
    fn push_column(&mut self, letter: Option<&Letter>) {
        let l = self.cols[0].len();
        let term = self.term;
        for (i, node) in term.nodes.iter().enumerate() {
            let mut col = vec![INF; l + 1];
            match node {
                CNode::Zero => {}
                CNode::One => col[l] = 0,
                CNode::Act(a) => {
                    if let Some(Letter::Action(b)) = letter {
                        if a == b {
                            col[l - 1] = 0;
                        }
                    }
                }
                CNode::Prop(p) => {
                    if let Some(Letter::Atom(alpha)) = letter {
                        if p.eval(*alpha) {
                            col[l - 1] = 0;
                            col[l] = 1;
                        }
                    }
                }
                CNode::Plus(a, b) => {
                    let (ca, cb) = (&self.cols[*a][l], &self.cols[*b][l]);
                    for k in 0..=l {
                        col[k] = ca[k].min(cb[k]);
                    }
                }
                CNode::Seq(a, b) => {
                    let cb = &self.cols[*b][l];
                    for (j, &bj) in cb.iter().enumerate() {
                        if bj == INF {
                            continue;
                        }
                        let ca = &self.cols[*a][j];
                        for k in 0..=j {
                            col[k] = col[k].min(add(ca[k], bj));
                        }
                    }
                }
                CNode::Star(a) => {
                    col[l] = 0;
                    let ca = &self.cols[*a][l];
                    // the last piece ends at l and starts at some j < l; loops at l never help
                    for j in (0..l).rev() {
                        if ca[j] == INF {
                            continue;
                        }
                        let sj = &self.cols[i][j];
                        for k in 0..=j {
                            col[k] = col[k].min(add(sj[k], ca[j]));
                        }
                    }
                }
            }
            self.cols[i].push(col);
        }
    }

    fn pop_column(&mut self) {
        for c in &mut self.cols {
            c.pop();
        }
    }

    /// Least expansion cost of the whole word, if any expansion matches.
    fn cost(&self) -> Option<usize> {
        let l = self.len();
        let c = self.cols[self.term.root()][l][0];
        (c != INF).then_some(c as usize)
    }
}

/// Least number of repeated atoms needed to expand `w` into a word of the
/// plain (weak) language of `e`; `None` if no expansion belongs to it.
pub fn expansion_cost(e: &Term, w: &Word, sig: &Signature) -> Option<usize> {
    let compiled = Compiled::new(e, sig);
    let mut spans = Spans::new(&compiled);
    for l in w.letters() {
        spans.push_column(Some(l));
    }
    spans.cost()
}

/// Plain membership in the weak language of `e`.
pub fn wkao_member(e: &Term, w: &Word, sig: &Signature) -> bool {
    expansion_cost(e, w, sig) == Some(0)
}

/// Whether some expansion `x` of `w` with `|x| <= |w| + slack` lies in the
/// weak language of `e`. Sound for the closed language; complete relative to
/// the slack.
pub fn kao_member_bounded(e: &Term, w: &Word, slack: usize, sig: &Signature) -> bool {
    matches!(expansion_cost(e, w, sig), Some(c) if c <= slack)
}

/// Exact membership in the contraction-closed language of `e`.
pub fn kao_member(e: &Term, w: &Word, sig: &Signature) -> bool {
    expansion_cost(e, w, sig).is_some()
}

/// Bounded enumerations over `Γ^{<=n}` with a budget on the number of words.
#[derive(Clone, Debug)]
pub struct Oracle<'s> {
    sig: &'s Signature,
    cap: u64,
    exec: Exec,
}

impl<'s> Oracle<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        Oracle { sig, cap: DEFAULT_ENUMERATION_CAP, exec: Exec::default() }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    fn check_budget(&self, n: usize) -> Result<()> {
        let g = letters(self.sig).len() as u128;
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..=n {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(g);
        }
        if total > self.cap as u128 {
            return Err(Error::BudgetExceeded { requested: total, cap: self.cap });
        }
        Ok(())
    }

    /// Depth-first walk over every word of length `<= n`, reporting the
    /// expansion cost of each term at each word. Branches by first letter are
    /// processed independently and merged in letter order.
    fn walk<T, F>(&self, terms: &[&Term], n: usize, visit: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&Word, &[Option<usize>]) -> Option<T> + Sync,
    {
        self.check_budget(n)?;
        let compiled: Vec<Compiled> = terms.iter().map(|t| Compiled::new(t, self.sig)).collect();
        let gamma = letters(self.sig);

        let mut out = Vec::new();
        {
            let spans: Vec<Spans> = compiled.iter().map(Spans::new).collect();
            let costs: Vec<Option<usize>> = spans.iter().map(Spans::cost).collect();
            out.extend(visit(&Word::empty(), &costs));
        }
        if n == 0 {
            return Ok(out);
        }

        let branches = par::map(self.exec, &gamma, |first| {
            let mut spans: Vec<Spans> = compiled.iter().map(Spans::new).collect();
            let mut word = Word::empty();
            let mut found = Vec::new();
            descend(&mut spans, &mut word, first, &gamma, n, &visit, &mut found);
            found
        });
        out.extend(branches.into_iter().flatten());
        Ok(out)
    }

    /// `↓(⟦e⟧_w ∩ Γ^{<=n+m}) ∩ Γ^{<=n}`: a word `w` qualifies when some
    /// expansion of length at most `n + m` is in the weak language.
    pub fn kao_language(&self, e: &Term, n: usize, slack: usize) -> Result<BTreeSet<Word>> {
        let words = self.walk(&[e], n, |w, costs| {
            let budget = n + slack - w.len();
            matches!(costs[0], Some(c) if c <= budget).then(|| w.clone())
        })?;
        Ok(words.into_iter().collect())
    }

    /// Words of length `<= n` in the weak language of `e`.
    pub fn wkao_language(&self, e: &Term, n: usize) -> Result<BTreeSet<Word>> {
        let words = self.walk(&[e], n, |w, costs| (costs[0] == Some(0)).then(|| w.clone()))?;
        Ok(words.into_iter().collect())
    }

    /// Whether the bounded closed language equals the bounded weak language.
    pub fn closed(&self, e: &Term, n: usize, slack: usize) -> Result<bool> {
        let bad = self.walk(&[e], n, |w, costs| {
            let budget = n + slack - w.len();
            let kao = matches!(costs[0], Some(c) if c <= budget);
            let wkao = costs[0] == Some(0);
            (kao != wkao).then_some(())
        })?;
        Ok(bad.is_empty())
    }

    /// Words of length `<= n` on which the two bounded closed languages
    /// disagree, each side with its own slack.
    pub fn kao_disagreements(&self, e: &Term, f: &Term, n: usize, slack_e: usize, slack_f: usize) -> Result<Vec<Word>> {
        self.walk(&[e, f], n, |w, costs| {
            let in_e = matches!(costs[0], Some(c) if c <= n + slack_e - w.len());
            let in_f = matches!(costs[1], Some(c) if c <= n + slack_f - w.len());
            (in_e != in_f).then(|| w.clone())
        })
    }
}

fn descend<T, F>(
    spans: &mut [Spans],
    word: &mut Word,
    letter: &Letter,
    gamma: &[Letter],
    n: usize,
    visit: &F,
    found: &mut Vec<T>,
) where
    F: Fn(&Word, &[Option<usize>]) -> Option<T>,
{
    word.push(letter.clone());
    for s in spans.iter_mut() {
        s.push_column(Some(letter));
    }
    let costs: Vec<Option<usize>> = spans.iter().map(Spans::cost).collect();
    found.extend(visit(word, &costs));
    if word.len() < n {
        for next in gamma {
            descend(spans, word, next, gamma, n, visit, found);
        }
    }
    for s in spans.iter_mut() {
        s.pop_column();
    }
    word.0.pop();
}

/// See [`Oracle::kao_language`].
pub fn kao_language_bounded(e: &Term, n: usize, slack: usize, sig: &Signature) -> Result<BTreeSet<Word>> {
    Oracle::new(sig).kao_language(e, n, slack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn sig() -> Signature {
        Signature::new(["o1", "o2"], ["x", "y"]).unwrap()
    }

    /// Span-set matcher for the weak language, written independently of the
    /// cost evaluator: `ends(e, i)` are the positions a match starting at `i`
    /// can stop at.
    fn naive_ends(e: &Term, w: &Word, i: usize, sig: &Signature) -> BTreeSet<usize> {
        match e.kind() {
            TermKind::Zero => BTreeSet::new(),
            TermKind::One => BTreeSet::from([i]),
            TermKind::Act(a) => match w.0.get(i) {
                Some(Letter::Action(b)) if a == b => BTreeSet::from([i + 1]),
                _ => BTreeSet::new(),
            },
            TermKind::Prop(p) => match w.0.get(i) {
                Some(Letter::Atom(alpha)) if crate::boolean::holds(p, *alpha, sig) => BTreeSet::from([i + 1]),
                _ => BTreeSet::new(),
            },
            TermKind::Plus(a, b) => {
                let mut s = naive_ends(a, w, i, sig);
                s.extend(naive_ends(b, w, i, sig));
                s
            }
            TermKind::Seq(a, b) => {
                naive_ends(a, w, i, sig).into_iter().flat_map(|j| naive_ends(b, w, j, sig)).collect()
            }
            TermKind::Star(a) => {
                let mut seen = BTreeSet::from([i]);
                let mut work = vec![i];
                while let Some(j) = work.pop() {
                    for k in naive_ends(a, w, j, sig) {
                        if seen.insert(k) {
                            work.push(k);
                        }
                    }
                }
                seen
            }
        }
    }

    fn naive_wkao(e: &Term, w: &Word, sig: &Signature) -> bool {
        naive_ends(e, w, 0, sig).contains(&w.len())
    }

    fn all_words(sig: &Signature, n: usize) -> Vec<Word> {
        let gamma = letters(sig);
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            layer = layer.iter().flat_map(|w| gamma.iter().map(move |l| w.pushed(l.clone()))).collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// The closed language computed literally: enumerate `Γ^{<=n+m}`, keep the
    /// weak members, close under contraction, truncate to length `n`.
    fn literal_kao_language(e: &Term, n: usize, m: usize, sig: &Signature) -> BTreeSet<Word> {
        let weak: BTreeSet<Word> = all_words(sig, n + m).into_iter().filter(|w| naive_wkao(e, w, sig)).collect();
        closure_finite(&weak).into_iter().filter(|w| w.len() <= n).collect()
    }

    fn w(text: &str, s: &Signature) -> Word {
        parse_word(text, s).unwrap()
    }

    #[test]
    fn word_render_round_trip() {
        let s = sig();
        let word = w("{o1,o2} x {}", &s);
        assert_eq!(word.len(), 3);
        assert_eq!(render_word(&word, &s), "{o1,o2} x {}");
        assert_eq!(render_word(&Word::empty(), &s), "");
        assert!(parse_word("{o3}", &s).is_err());
        assert!(parse_word("z", &s).is_err());
    }

    #[test]
    fn wkao_examples() {
        let s = sig();
        let conj = parse_term("[o1 /\\ o2]", &s).unwrap();
        assert!(wkao_member(&conj, &w("{o1,o2}", &s), &s));
        assert!(!wkao_member(&conj, &w("{o1,o2} {o1,o2}", &s), &s));
        assert!(wkao_member(&Term::one(), &Word::empty(), &s));
        assert!(!wkao_member(&Term::one(), &w("{}", &s), &s));
    }

    #[test]
    fn wkao_agrees_with_span_matcher() {
        let s = Signature::new(["o1"], ["x"]).unwrap();
        let exprs = ["([o1] + x)* ; [!o1]", "(x ; x)* + [T]*", "[o1] ; ([o1] ; x)*", "0 + 1", "(1 + x)*"];
        for text in exprs {
            let e = parse_term(text, &s).unwrap();
            for word in all_words(&s, 4) {
                assert_eq!(
                    wkao_member(&e, &word, &s),
                    naive_wkao(&e, &word, &s),
                    "{text} on {}",
                    render_word(&word, &s)
                );
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let s = sig();
        assert_eq!(contract_steps(&w("{o1} {o1}", &s)), BTreeSet::from([w("{o1}", &s)]));
        assert!(contract_steps(&w("{o1} x {o1}", &s)).is_empty());
        assert_eq!(contract_steps(&w("{o1} {o1} {o1}", &s)), BTreeSet::from([w("{o1} {o1}", &s)]));
        assert!(contract_steps(&w("x x", &s)).is_empty());
    }

    #[test]
    fn closure_examples() {
        let s = sig();
        let aa = w("{o1} {o1}", &s);
        assert_eq!(closure_finite(&BTreeSet::from([aa.clone()])), BTreeSet::from([aa, w("{o1}", &s)]));
        let x = w("x", &s);
        assert_eq!(closure_finite(&BTreeSet::from([x.clone()])), BTreeSet::from([x]));
        let aabb = w("{o1} {o1} {o2} {o2}", &s);
        let expected: BTreeSet<Word> =
            ["{o1} {o1} {o2} {o2}", "{o1} {o2} {o2}", "{o1} {o1} {o2}", "{o1} {o2}"].iter().map(|t| w(t, &s)).collect();
        assert_eq!(closure_finite(&BTreeSet::from([aabb])), expected);
    }

    #[test]
    fn bounded_language_examples() {
        let s = sig();
        let e = parse_term("[o1] ; [o2]", &s).unwrap();
        assert!(kao_language_bounded(&e, 1, 1, &s).unwrap().contains(&w("{o1,o2}", &s)));
        assert!(kao_language_bounded(&Term::zero(), 3, 2, &s).unwrap().is_empty());
        let x = Term::act("x");
        assert_eq!(kao_language_bounded(&x, 1, 0, &s).unwrap(), BTreeSet::from([w("x", &s)]));
    }

    #[test]
    fn bounded_membership_examples() {
        let s = sig();
        let e = parse_term("[o1] ; [o2]", &s).unwrap();
        let single = w("{o1,o2}", &s);
        assert!(kao_member_bounded(&e, &single, 1, &s));
        assert!(!kao_member_bounded(&e, &single, 0, &s));
        assert!(kao_member(&e, &single, &s));
        let pair = w("{o1} {o2}", &s);
        assert!(wkao_member(&e, &pair, &s));
        assert!(kao_member_bounded(&e, &pair, 0, &s));
    }

    #[test]
    fn cost_evaluation_matches_literal_closure() {
        let s = Signature::new(["o1"], ["x"]).unwrap();
        let exprs = [
            "[o1] ; [o1]",
            "[o1] ; [!o1]",
            "([o1] ; [T])*",
            "[o1] ; x ; [o1] ; [o1]",
            "([o1] + [!o1] ; [o1])* ; x",
            "[T] ; [T] ; [T]",
        ];
        for text in exprs {
            let e = parse_term(text, &s).unwrap();
            for (n, m) in [(0, 0), (1, 0), (2, 1), (3, 2), (2, 3)] {
                assert_eq!(
                    kao_language_bounded(&e, n, m, &s).unwrap(),
                    literal_kao_language(&e, n, m, &s),
                    "{text} at n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = sig();
        let oracle = Oracle::new(&s).with_cap(100);
        assert!(matches!(oracle.kao_language(&Term::act("x"), 3, 0), Err(Error::BudgetExceeded { .. })));
        assert!(oracle.kao_language(&Term::act("x"), 1, 0).is_ok());
    }

    #[test]
    fn closedness() {
        let s = Signature::new(["o"], ["x"]).unwrap();
        let oracle = Oracle::new(&s);
        assert!(oracle.closed(&Term::act("x"), 3, 8).unwrap());
        let oo = parse_term("[o] ; [o]", &s).unwrap();
        assert!(!oracle.closed(&oo, 2, default_slack(&oo)).unwrap());
    }

    #[test]
    fn sequential_and_parallel_walks_agree() {
        let s = sig();
        let e = parse_term("([o1] + x)* ; [o2]", &s).unwrap();
        let seq = Oracle::new(&s).with_exec(Exec::Sequential).kao_language(&e, 3, 4).unwrap();
        let par = Oracle::new(&s).with_exec(Exec::Parallel).kao_language(&e, 3, 4).unwrap();
        assert_eq!(seq, par);
    }
}

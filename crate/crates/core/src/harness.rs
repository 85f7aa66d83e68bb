//! Seeded random terms and the campaigns that play the decision procedure
//! against the naive decider and the language oracle.

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equivalence::{decide_with, naive_decide, HkcOptions, Verdict};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::semantics::{kao_member, kao_member_bounded, render_word, Oracle};
use crate::syntax::{PropTerm, Signature, Symbol, Term, TermKind, MAX_OBSERVABLES};

/// Relative frequencies of the term constructors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Weights {
    pub zero: f64,
    pub one: f64,
    pub act: f64,
    pub prop: f64,
    pub plus: f64,
    pub seq: f64,
    pub star: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights { zero: 0.5, one: 0.5, act: 2.0, prop: 2.0, plus: 1.5, seq: 2.0, star: 1.0 }
    }
}

impl Weights {
    fn all(&self) -> [f64; 7] {
        [self.zero, self.one, self.act, self.prop, self.plus, self.seq, self.star]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_size: usize,
    pub n_obs: usize,
    pub n_act: usize,
    pub weights: Weights,
    pub max_star_depth: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_size: 6, n_obs: 2, n_act: 2, weights: Weights::default(), max_star_depth: 2 }
    }
}

const OBSERVABLE_NAMES: [&str; MAX_OBSERVABLES] =
    ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p"];

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_obs > MAX_OBSERVABLES {
            return Err(Error::SignatureTooLarge { observables: self.n_obs, max: MAX_OBSERVABLES });
        }
        if self.max_size == 0 {
            return Err(Error::InvalidConfig("max_size must be at least 1".into()));
        }
        if self.weights.all().iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidConfig("weights must be positive and finite".into()));
        }
        Ok(())
    }

    /// Observables `a, b, c, ...` and actions `x, y, z, x3, x4, ...`.
    pub fn signature(&self) -> Signature {
        let obs = &OBSERVABLE_NAMES[..self.n_obs.min(MAX_OBSERVABLES)];
        let acts: Vec<String> = (0..self.n_act)
            .map(|i| match i {
                0 => "x".to_string(),
                1 => "y".to_string(),
                2 => "z".to_string(),
                _ => format!("x{i}"),
            })
            .collect();
        Signature::new(obs, &acts).expect("generated names are valid")
    }
}

/// A random source of terms over the configuration's signature.
pub struct Generator {
    rng: ChaCha8Rng,
    cfg: GenConfig,
    observables: Vec<Symbol>,
    actions: Vec<Symbol>,
}

impl Generator {
    pub fn new(cfg: &GenConfig) -> Result<Self> {
        Self::with_stream(cfg, 0)
    }

    /// An independent generator for sub-campaign `stream` under the same seed.
    pub fn with_stream(cfg: &GenConfig, stream: u64) -> Result<Self> {
        cfg.validate()?;
        let sig = cfg.signature();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Ok(Generator {
            rng,
            cfg: cfg.clone(),
            observables: sig.observables().to_vec(),
            actions: sig.actions().to_vec(),
        })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn term(&mut self) -> Term {
        self.term_within(self.cfg.max_size)
    }

    /// A term of size at most `budget`.
    pub fn term_within(&mut self, budget: usize) -> Term {
        self.gen(budget.max(1), 0)
    }

    fn gen(&mut self, budget: usize, depth: usize) -> Term {
        let w = self.cfg.weights.clone();
        let mut options: Vec<(u8, f64)> = vec![(0, w.zero), (1, w.one), (3, w.prop)];
        if !self.actions.is_empty() {
            options.push((2, w.act));
        }
        if budget >= 3 {
            options.push((4, w.plus));
            options.push((5, w.seq));
        }
        if budget >= 2 && depth < self.cfg.max_star_depth {
            options.push((6, w.star));
        }
        let pick = WeightedIndex::new(options.iter().map(|o| o.1)).expect("weights are positive");
        let choice = options[pick.sample(&mut self.rng)].0;
        match choice {
            0 => Term::zero(),
            1 => Term::one(),
            2 => {
                let a = self.actions.choose(&mut self.rng).expect("an action exists").clone();
                Term::new(TermKind::Act(a))
            }
            3 => Term::prop(self.prop_within(budget, false)),
            4 | 5 => {
                let left = self.rng.gen_range(1..=budget - 2);
                let l = self.gen(left, depth);
                let r = self.gen(budget - 1 - left, depth);
                if choice == 4 {
                    Term::plus(l, r)
                } else {
                    Term::seq(l, r)
                }
            }
            _ => Term::star(self.gen(budget - 1, depth + 1)),
        }
    }

    /// A propositional term of size at most `budget`.
    pub fn prop(&mut self, budget: usize) -> PropTerm {
        self.prop_within(budget.max(1), false)
    }

    fn prop_leaf(&mut self, inner: bool) -> PropTerm {
        if self.observables.is_empty() || (inner && self.rng.gen_bool(0.15)) {
            if self.rng.gen_bool(0.5) {
                PropTerm::Top
            } else {
                PropTerm::Bot
            }
        } else {
            PropTerm::Obs(self.observables.choose(&mut self.rng).expect("an observable exists").clone())
        }
    }

    fn prop_within(&mut self, budget: usize, inner: bool) -> PropTerm {
        let mut options = vec![(0u8, 2.0)];
        if budget >= 2 {
            options.push((1, 1.0));
        }
        if budget >= 3 {
            options.push((2, 1.0));
            options.push((3, 1.0));
        }
        let pick = WeightedIndex::new(options.iter().map(|o| o.1)).expect("weights are positive");
        match options[pick.sample(&mut self.rng)].0 {
            0 => self.prop_leaf(inner),
            1 => PropTerm::not(self.prop_within(budget - 1, true)),
            k => {
                let left = self.rng.gen_range(1..=budget - 2);
                let l = self.prop_within(left, true);
                let r = self.prop_within(budget - 1 - left, true);
                if k == 2 {
                    PropTerm::or(l, r)
                } else {
                    PropTerm::and(l, r)
                }
            }
        }
    }

    /// `e` with one subterm replaced by an equivalent one, using a sound
    /// law chosen at random.
    pub fn rewrite(&mut self, e: &Term) -> Term {
        let positions = count_nodes(e);
        let target = self.rng.gen_range(0..positions);
        let mut k = target;
        replace_at(e, &mut k, &mut |t| self.rewrite_here(t))
    }

    fn rewrite_here(&mut self, t: &Term) -> Term {
        let mut laws: Vec<Term> = vec![
            Term::plus(t.clone(), t.clone()),
            Term::plus(t.clone(), Term::zero()),
            Term::seq(Term::one(), t.clone()),
            Term::seq(t.clone(), Term::one()),
        ];
        match t.kind() {
            TermKind::Plus(a, b) => {
                laws.push(Term::plus(b.clone(), a.clone()));
                if let TermKind::Plus(a1, a2) = a.kind() {
                    laws.push(Term::plus(a1.clone(), Term::plus(a2.clone(), b.clone())));
                }
            }
            TermKind::Seq(a, b) => {
                if let TermKind::Seq(a1, a2) = a.kind() {
                    laws.push(Term::seq(a1.clone(), Term::seq(a2.clone(), b.clone())));
                }
                if let TermKind::Plus(b1, b2) = b.kind() {
                    laws.push(Term::plus(Term::seq(a.clone(), b1.clone()), Term::seq(a.clone(), b2.clone())));
                }
                if let TermKind::Plus(a1, a2) = a.kind() {
                    laws.push(Term::plus(Term::seq(a1.clone(), b.clone()), Term::seq(a2.clone(), b.clone())));
                }
                if let (TermKind::Prop(p), TermKind::Prop(q)) = (a.kind(), b.kind()) {
                    laws.push(Term::plus(t.clone(), Term::prop(PropTerm::and(p.clone(), q.clone()))));
                }
            }
            TermKind::Star(a) => {
                laws.push(Term::plus(Term::one(), Term::seq(a.clone(), t.clone())));
                laws.push(Term::plus(Term::one(), Term::seq(t.clone(), a.clone())));
                laws.push(Term::seq(t.clone(), t.clone()));
                laws.push(Term::star(t.clone()));
            }
            TermKind::Prop(p) => {
                laws.push(Term::prop(PropTerm::not(PropTerm::not(p.clone()))));
                match p {
                    PropTerm::Or(l, r) => laws.push(Term::plus(Term::prop((**l).clone()), Term::prop((**r).clone()))),
                    PropTerm::Bot => laws.push(Term::zero()),
                    _ => {}
                }
            }
            _ => {}
        }
        laws.choose(&mut self.rng).expect("at least one law applies").clone()
    }
}

fn count_nodes(e: &Term) -> usize {
    1 + match e.kind() {
        TermKind::Plus(a, b) | TermKind::Seq(a, b) => count_nodes(a) + count_nodes(b),
        TermKind::Star(a) => count_nodes(a),
        _ => 0,
    }
}

/// Rebuilds `e` with its `k`-th node in preorder replaced by `f(node)`.
fn replace_at(e: &Term, k: &mut usize, f: &mut dyn FnMut(&Term) -> Term) -> Term {
    if *k == 0 {
        *k = usize::MAX;
        return f(e);
    }
    *k -= 1;
    match e.kind() {
        TermKind::Plus(a, b) => {
            let a2 = replace_at(a, k, f);
            let b2 = replace_at(b, k, f);
            Term::plus(a2, b2)
        }
        TermKind::Seq(a, b) => {
            let a2 = replace_at(a, k, f);
            let b2 = replace_at(b, k, f);
            Term::seq(a2, b2)
        }
        TermKind::Star(a) => Term::star(replace_at(a, k, f)),
        _ => e.clone(),
    }
}

/// One term drawn from `cfg`.
///
/// Panics if the configuration is invalid.
pub fn gen_term(cfg: &GenConfig) -> Term {
    Generator::new(cfg).expect("valid generator configuration").term()
}

/// The outcome of checking one pair of terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub index: usize,
    pub origin: &'static str,
    pub seed: u64,
    pub e: String,
    pub f: String,
    pub verdict: &'static str,
    pub naive_agrees: bool,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Whether the witness separates the two languages according to the
    /// oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub languages_equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ok: bool,
}

/// Runs every check on the pair `(e, f)`. Languages are compared on words up
/// to length `n` with the slack `2 * max(size) + 2` for both sides.
pub fn check_pair(e: &Term, f: &Term, sig: &Signature, n: usize, exec: Exec) -> Record {
    let decision = decide_with(e, f, sig, HkcOptions::default());
    let naive = naive_decide(e, f, sig);
    let naive_agrees = naive.is_equivalent() == decision.verdict.is_equivalent();
    let certified = decision.certify();
    let slack = 2 * e.size().max(f.size()) + 2;
    let mut rec = Record {
        index: 0,
        origin: "given",
        seed: 0,
        e: e.render(),
        f: f.render(),
        verdict: if decision.verdict.is_equivalent() { "equivalent" } else { "inequivalent" },
        naive_agrees,
        certified,
        witness: None,
        witness_ok: None,
        languages_equal: None,
        error: None,
        ok: false,
    };
    match &decision.verdict {
        Verdict::Inequivalent(w) => {
            rec.witness = Some(render_word(w, sig));
            let bounded = kao_member_bounded(e, w, slack, sig) != kao_member_bounded(f, w, slack, sig);
            // a bounded miss is rechecked without a slack bound before failing
            let ok = bounded || kao_member(e, w, sig) != kao_member(f, w, sig);
            rec.witness_ok = Some(ok);
        }
        Verdict::Equivalent(_) => match Oracle::new(sig).with_exec(exec).kao_disagreements(e, f, n, slack, slack) {
            Ok(diff) => rec.languages_equal = Some(diff.is_empty()),
            Err(err) => rec.error = Some(err.to_string()),
        },
    }
    rec.ok = rec.naive_agrees
        && rec.certified
        && rec.error.is_none()
        && rec.witness_ok.unwrap_or(true)
        && rec.languages_equal.unwrap_or(true);
    rec
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub pairs: usize,
    pub equivalent: usize,
    pub inequivalent: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.ok)
    }

    pub fn success(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn summary(&self) -> Summary {
        let equivalent = self.records.iter().filter(|r| r.verdict == "equivalent").count();
        Summary {
            seed: self.seed,
            pairs: self.records.len(),
            equivalent,
            inequivalent: self.records.len() - equivalent,
            failures: self.failures().count(),
        }
    }

    /// One JSON object per line, in pair order.
    pub fn to_json_lines(&self) -> String {
        self.records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
    }
}

/// Checks `pairs` random pairs. Every third pair relates a term to a
/// rewritten copy of itself, so both verdicts are exercised; the rest are
/// independent draws. Pair `i` depends only on the seed and `i`.
pub fn cross_validate(cfg: &GenConfig, pairs: usize, n: usize, exec: Exec) -> Result<Report> {
    cfg.validate()?;
    let sig = cfg.signature();
    let records = par::map_range(exec, pairs, |i| {
        let mut g = Generator::with_stream(cfg, i as u64).expect("validated");
        let e = g.term();
        let (origin, f) = if i % 3 == 2 {
            let mut f = g.rewrite(&e);
            if g.rng().gen_bool(0.5) {
                f = g.rewrite(&f);
            }
            ("rewrite", f)
        } else {
            ("random", g.term())
        };
        // pairs run in parallel, so each enumeration stays sequential
        let mut rec = check_pair(&e, &f, &sig, n, Exec::Sequential);
        rec.index = i;
        rec.origin = origin;
        rec.seed = cfg.seed;
        rec
    });
    Ok(Report { seed: cfg.seed, records })
}

/// A law of the algebra, instantiated by drawing its metavariables.
pub struct Law {
    pub name: &'static str,
    pub instance: fn(&mut Generator) -> (Term, Term),
}

fn leq(a: Term, b: Term) -> (Term, Term) {
    (Term::plus(a, b.clone()), b)
}

fn three(g: &mut Generator) -> (Term, Term, Term) {
    (g.term(), g.term(), g.term())
}

/// The equations of Kleene algebra, both star induction rules (instantiated
/// so that the premise holds), the two laws tying propositions to terms, and
/// the contraction law. Inequations `a <= b` are checked as `a + b = b`.
pub fn laws() -> Vec<Law> {
    vec![
        Law {
            name: "e + 0 = e",
            instance: |g| {
                let e = g.term();
                (Term::plus(e.clone(), Term::zero()), e)
            },
        },
        Law {
            name: "e + e = e",
            instance: |g| {
                let e = g.term();
                (Term::plus(e.clone(), e.clone()), e)
            },
        },
        Law {
            name: "e + f = f + e",
            instance: |g| {
                let (e, f) = (g.term(), g.term());
                (Term::plus(e.clone(), f.clone()), Term::plus(f, e))
            },
        },
        Law {
            name: "e + (f + g) = (e + f) + g",
            instance: |g| {
                let (e, f, h) = three(g);
                (Term::plus(e.clone(), Term::plus(f.clone(), h.clone())), Term::plus(Term::plus(e, f), h))
            },
        },
        Law {
            name: "e ; 1 = e",
            instance: |g| {
                let e = g.term();
                (Term::seq(e.clone(), Term::one()), e)
            },
        },
        Law {
            name: "1 ; e = e",
            instance: |g| {
                let e = g.term();
                (Term::seq(Term::one(), e.clone()), e)
            },
        },
        Law { name: "e ; 0 = 0", instance: |g| (Term::seq(g.term(), Term::zero()), Term::zero()) },
        Law { name: "0 ; e = 0", instance: |g| (Term::seq(Term::zero(), g.term()), Term::zero()) },
        Law {
            name: "e ; (f ; g) = (e ; f) ; g",
            instance: |g| {
                let (e, f, h) = three(g);
                (Term::seq(e.clone(), Term::seq(f.clone(), h.clone())), Term::seq(Term::seq(e, f), h))
            },
        },
        Law {
            name: "e ; (f + g) = e ; f + e ; g",
            instance: |g| {
                let (e, f, h) = three(g);
                (
                    Term::seq(e.clone(), Term::plus(f.clone(), h.clone())),
                    Term::plus(Term::seq(e.clone(), f), Term::seq(e, h)),
                )
            },
        },
        Law {
            name: "(e + f) ; g = e ; g + f ; g",
            instance: |g| {
                let (e, f, h) = three(g);
                (
                    Term::seq(Term::plus(e.clone(), f.clone()), h.clone()),
                    Term::plus(Term::seq(e, h.clone()), Term::seq(f, h)),
                )
            },
        },
        Law {
            name: "1 + e ; e* = e*",
            instance: |g| {
                let e = g.term();
                let s = Term::star(e.clone());
                (Term::plus(Term::one(), Term::seq(e, s.clone())), s)
            },
        },
        Law {
            name: "1 + e* ; e = e*",
            instance: |g| {
                let e = g.term();
                let s = Term::star(e.clone());
                (Term::plus(Term::one(), Term::seq(s.clone(), e)), s)
            },
        },
        Law {
            name: "e + f ; g <= g implies f* ; e <= g",
            instance: |g| {
                let (e, f, h) = three(g);
                let rhs = Term::seq(Term::star(f.clone()), Term::plus(e.clone(), h));
                leq(Term::seq(Term::star(f), e), rhs)
            },
        },
        Law {
            name: "e + g ; f <= g implies e ; f* <= g",
            instance: |g| {
                let (e, f, h) = three(g);
                let rhs = Term::seq(Term::plus(e.clone(), h), Term::star(f.clone()));
                leq(Term::seq(e, Term::star(f)), rhs)
            },
        },
        Law { name: "[F] = 0", instance: |_| (Term::prop(PropTerm::Bot), Term::zero()) },
        Law {
            name: "[p \\/ q] = [p] + [q]",
            instance: |g| {
                let (p, q) = (g.prop(3), g.prop(3));
                (Term::prop(PropTerm::or(p.clone(), q.clone())), Term::plus(Term::prop(p), Term::prop(q)))
            },
        },
        Law {
            name: "[p /\\ q] <= [p] ; [q]",
            instance: |g| {
                let (p, q) = (g.prop(3), g.prop(3));
                leq(Term::prop(PropTerm::and(p.clone(), q.clone())), Term::seq(Term::prop(p), Term::prop(q)))
            },
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub equivalent: usize,
    pub certified: usize,
    /// Rendered sides of every instance that was not proved equivalent.
    pub failures: Vec<(String, String)>,
}

impl LawOutcome {
    pub fn ok(&self) -> bool {
        self.equivalent == self.instances && self.certified == self.instances
    }
}

/// Instantiates every law `per_law` times and decides each instance.
pub fn law_campaign(cfg: &GenConfig, per_law: usize, exec: Exec) -> Result<Vec<LawOutcome>> {
    cfg.validate()?;
    let sig = cfg.signature();
    let laws = laws();
    let jobs: Vec<(usize, usize)> = (0..laws.len()).flat_map(|l| (0..per_law).map(move |i| (l, i))).collect();
    let results = par::map(exec, &jobs, |&(l, i)| {
        let mut g = Generator::with_stream(cfg, ((l as u64) << 32) | i as u64).expect("validated");
        let (lhs, rhs) = (laws[l].instance)(&mut g);
        let d = decide_with(&lhs, &rhs, &sig, HkcOptions::default());
        (d.verdict.is_equivalent(), d.certify(), lhs, rhs)
    });
    let mut out: Vec<LawOutcome> = laws
        .iter()
        .map(|l| LawOutcome { name: l.name, instances: per_law, equivalent: 0, certified: 0, failures: Vec::new() })
        .collect();
    for (&(l, _), (eq, cert, lhs, rhs)) in jobs.iter().zip(results) {
        let o = &mut out[l];
        if eq {
            o.equivalent += 1;
        } else {
            o.failures.push((lhs.render(), rhs.render()));
        }
        if cert {
            o.certified += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn kinds(e: &Term, seen: &mut [bool; 7]) {
        let i = match e.kind() {
            TermKind::Zero => 0,
            TermKind::One => 1,
            TermKind::Act(_) => 2,
            TermKind::Prop(_) => 3,
            TermKind::Plus(a, b) => {
                kinds(a, seen);
                kinds(b, seen);
                4
            }
            TermKind::Seq(a, b) => {
                kinds(a, seen);
                kinds(b, seen);
                5
            }
            TermKind::Star(a) => {
                kinds(a, seen);
                6
            }
        };
        seen[i] = true;
    }

    #[test]
    fn size_one_terms_are_leaves() {
        let cfg = GenConfig { max_size: 1, ..GenConfig::default() };
        let mut g = Generator::new(&cfg).unwrap();
        for _ in 0..200 {
            let t = g.term();
            assert_eq!(t.size(), 1);
            if let TermKind::Prop(p) = t.kind() {
                assert!(matches!(p, PropTerm::Obs(_)));
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig { seed: 42, ..GenConfig::default() };
        assert_eq!(gen_term(&cfg), gen_term(&cfg));
        let a: Vec<Term> = (0..20).map(|i| Generator::with_stream(&cfg, i).unwrap().term()).collect();
        let b: Vec<Term> = (0..20).map(|i| Generator::with_stream(&cfg, i).unwrap().term()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn sizes_respect_the_bound_and_every_constructor_appears() {
        let cfg = GenConfig::default();
        let mut g = Generator::new(&cfg).unwrap();
        let mut seen = [false; 7];
        for _ in 0..10_000 {
            let t = g.term();
            assert!(t.size() <= cfg.max_size, "{t}");
            kinds(&t, &mut seen);
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn invalid_configurations() {
        let bad = GenConfig { n_obs: 17, ..GenConfig::default() };
        assert!(matches!(bad.validate(), Err(Error::SignatureTooLarge { .. })));
        let w = Weights { star: 0.0, ..Weights::default() };
        assert!(GenConfig { weights: w, ..GenConfig::default() }.validate().is_err());
    }

    #[test]
    fn rewrites_preserve_equivalence() {
        let cfg = GenConfig { seed: 3, ..GenConfig::default() };
        let sig = cfg.signature();
        let mut g = Generator::new(&cfg).unwrap();
        for _ in 0..100 {
            let e = g.term();
            let f = g.rewrite(&e);
            assert!(crate::equivalence::decide(&e, &f, &sig).is_equivalent(), "{e} vs {f}");
        }
    }

    #[test]
    fn empty_campaign() {
        let r = cross_validate(&GenConfig::default(), 0, 4, Exec::Sequential).unwrap();
        assert!(r.records.is_empty() && r.success());
        assert_eq!(r.to_json_lines(), "");
    }

    #[test]
    fn injected_pairs() {
        let sig = GenConfig::default().signature();
        let e = parse_term("(x ; [a])* + y", &sig).unwrap();
        let same = check_pair(&e, &e, &sig, 4, Exec::Sequential);
        assert!(same.ok && same.verdict == "equivalent" && same.languages_equal == Some(true));

        let conj = parse_term("[a /\\ b]", &sig).unwrap();
        let seq = parse_term("[a] ; [b]", &sig).unwrap();
        let r = check_pair(&conj, &seq, &sig, 4, Exec::Sequential);
        assert!(r.ok && r.verdict == "inequivalent" && r.witness_ok == Some(true));
    }

    #[test]
    fn campaign_is_deterministic_and_clean() {
        let cfg = GenConfig { seed: 9, max_size: 5, ..GenConfig::default() };
        let a = cross_validate(&cfg, 12, 4, Exec::Sequential).unwrap();
        let b = cross_validate(&cfg, 12, 4, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert!(a.success(), "{}", a.to_json_lines());
        assert!(a.summary().equivalent > 0);
    }

    #[test]
    fn laws_hold_on_a_few_instances() {
        let cfg = GenConfig { seed: 1, max_size: 4, ..GenConfig::default() };
        for o in law_campaign(&cfg, 5, Exec::Parallel).unwrap() {
            assert!(o.ok(), "{}: {:?}", o.name, o.failures);
        }
    }
}

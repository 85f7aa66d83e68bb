//! Terms over a signature of observables and actions, with a parser and a
//! printer whose output always re-parses to the same tree.
//!
//! Terms are hash-consed only in the weak sense that every node caches its
//! structural hash and size; equality stays purely structural.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result, SymbolKind};

/// Observable and action names.
pub type Symbol = Arc<str>;

/// Largest supported number of observables; atoms are enumerated eagerly.
pub const MAX_OBSERVABLES: usize = 16;

/// The ambient sets of observables and actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    observables: Vec<Symbol>,
    actions: Vec<Symbol>,
}

fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<O, A>(observables: O, actions: A) -> Result<Self>
    where
        O: IntoIterator,
        O::Item: AsRef<str>,
        A: IntoIterator,
        A::Item: AsRef<str>,
    {
        let observables: Vec<Symbol> = observables.into_iter().map(|s| Symbol::from(s.as_ref())).collect();
        let actions: Vec<Symbol> = actions.into_iter().map(|s| Symbol::from(s.as_ref())).collect();
        if observables.len() > MAX_OBSERVABLES {
            return Err(Error::SignatureTooLarge { observables: observables.len(), max: MAX_OBSERVABLES });
        }
        let mut seen = BTreeSet::new();
        for name in observables.iter().chain(actions.iter()) {
            if !is_ident(name) {
                return Err(Error::InvalidSignature(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidSignature(format!("`{name}` is declared twice")));
            }
        }
        if let Some(name) = observables.iter().find(|o| &***o == "T" || &***o == "F") {
            return Err(Error::InvalidSignature(format!("`{name}` is reserved inside brackets")));
        }
        Ok(Signature { observables, actions })
    }

    /// Collects the observables (inside brackets) and actions (outside) used by
    /// the given expressions, each list sorted by name.
    pub fn infer<S: AsRef<str>>(exprs: &[S]) -> Result<Self> {
        let mut names = Names::default();
        for text in exprs {
            Parser::new(text.as_ref(), Resolver::Collect(&mut names)).parse_all()?;
        }
        if let Some(clash) = names.observables.intersection(&names.actions).next() {
            return Err(Error::InvalidSignature(format!("`{clash}` is used both as an action and as an observable")));
        }
        Signature::new(names.observables, names.actions)
    }

    /// Fills in whichever of the two lists is missing by inference.
    pub fn with_defaults<S: AsRef<str>>(
        observables: Option<&[String]>,
        actions: Option<&[String]>,
        exprs: &[S],
    ) -> Result<Self> {
        match (observables, actions) {
            (Some(o), Some(a)) => Signature::new(o, a),
            _ => {
                let inferred = Signature::infer(exprs)?;
                let obs: Vec<String> = match observables {
                    Some(o) => o.to_vec(),
                    None => inferred.observables.iter().map(|s| s.to_string()).collect(),
                };
                let acts: Vec<String> = match actions {
                    Some(a) => a.to_vec(),
                    None => inferred.actions.iter().map(|s| s.to_string()).collect(),
                };
                Signature::new(obs, acts)
            }
        }
    }

    pub fn observables(&self) -> &[Symbol] {
        &self.observables
    }

    pub fn actions(&self) -> &[Symbol] {
        &self.actions
    }

    pub fn observable_index(&self, name: &str) -> Option<usize> {
        self.observables.iter().position(|o| &**o == name)
    }

    pub fn action(&self, name: &str) -> Option<&Symbol> {
        self.actions.iter().find(|a| &***a == name)
    }
}

/// Propositional terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropTerm {
    Bot,
    Top,
    Obs(Symbol),
    Or(Box<PropTerm>, Box<PropTerm>),
    And(Box<PropTerm>, Box<PropTerm>),
    Not(Box<PropTerm>),
}

impl PropTerm {
    pub fn obs(name: impl AsRef<str>) -> Self {
        PropTerm::Obs(Symbol::from(name.as_ref()))
    }

    pub fn or(p: PropTerm, q: PropTerm) -> Self {
        PropTerm::Or(Box::new(p), Box::new(q))
    }

    pub fn and(p: PropTerm, q: PropTerm) -> Self {
        PropTerm::And(Box::new(p), Box::new(q))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: PropTerm) -> Self {
        PropTerm::Not(Box::new(p))
    }

    pub fn size(&self) -> usize {
        match self {
            PropTerm::Bot | PropTerm::Top | PropTerm::Obs(_) => 1,
            PropTerm::Or(p, q) | PropTerm::And(p, q) => 1 + p.size() + q.size(),
            PropTerm::Not(p) => 1 + p.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PropTerm::Or(..) => 0,
            PropTerm::And(..) => 1,
            PropTerm::Not(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for PropTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Pieces::new();
        pieces.push_prop(self, 0);
        pieces.try_for_each(|s| f.write_str(s))
    }
}

/// The shape of a term node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Zero,
    One,
    Act(Symbol),
    Prop(PropTerm),
    Plus(Term, Term),
    Seq(Term, Term),
    Star(Term),
}

struct Node {
    kind: TermKind,
    hash: u64,
    size: usize,
    pub(crate) epsilon: OnceLock<bool>,
}

/// A guarded rational term. Cloning is cheap; equality is structural.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl Term {
    pub fn new(kind: TermKind) -> Self {
        let mut h = DefaultHasher::new();
        kind.hash(&mut h);
        let size = match &kind {
            TermKind::Zero | TermKind::One | TermKind::Act(_) => 1,
            TermKind::Prop(p) => p.size(),
            TermKind::Plus(e, f) | TermKind::Seq(e, f) => 1 + e.size() + f.size(),
            TermKind::Star(e) => 1 + e.size(),
        };
        Term(Arc::new(Node { kind, hash: h.finish(), size, epsilon: OnceLock::new() }))
    }

    pub fn zero() -> Self {
        Term::new(TermKind::Zero)
    }

    pub fn one() -> Self {
        Term::new(TermKind::One)
    }

    pub fn act(name: impl AsRef<str>) -> Self {
        Term::new(TermKind::Act(Symbol::from(name.as_ref())))
    }

    pub fn prop(p: PropTerm) -> Self {
        Term::new(TermKind::Prop(p))
    }

    pub fn obs(name: impl AsRef<str>) -> Self {
        Term::prop(PropTerm::obs(name))
    }

    pub fn plus(e: Term, f: Term) -> Self {
        Term::new(TermKind::Plus(e, f))
    }

    pub fn seq(e: Term, f: Term) -> Self {
        Term::new(TermKind::Seq(e, f))
    }

    pub fn star(e: Term) -> Self {
        Term::new(TermKind::Star(e))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Node count; propositional subterms count their own nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind(), TermKind::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self.kind(), TermKind::One)
    }

    pub(crate) fn epsilon_cache(&self) -> &OnceLock<bool> {
        &self.0.epsilon
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn precedence(&self) -> u8 {
        match self.kind() {
            TermKind::Plus(..) => 0,
            TermKind::Seq(..) => 1,
            TermKind::Star(_) => 2,
            _ => 3,
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn pieces(&self) -> Pieces<'_> {
        let mut pieces = Pieces::new();
        pieces.push_term(self, 0);
        pieces
    }

    /// Every propositional subterm, in preorder.
    pub fn props(&self) -> Vec<&PropTerm> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t.kind() {
                TermKind::Prop(p) => out.push(p),
                TermKind::Plus(e, f) | TermKind::Seq(e, f) => {
                    stack.push(f);
                    stack.push(e);
                }
                TermKind::Star(e) => stack.push(e),
                _ => {}
            }
        }
        out
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.0.hash == other.0.hash && self.0.size == other.0.size && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Terms are ordered by their rendering. Rendering is injective, so this
/// order agrees with structural equality.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let a = self.pieces().flat_map(str::bytes);
        let b = other.pieces().flat_map(str::bytes);
        a.cmp(b)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pieces().try_for_each(|s| f.write_str(s))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

/// Renders a term. The output re-parses to a structurally identical term.
pub fn render_term(e: &Term) -> String {
    e.render()
}

/// Sum of a finite set of terms: summands sorted by rendering, duplicates
/// dropped, left-associated. The empty sum is `0`.
pub fn canonical_sum<I: IntoIterator<Item = Term>>(terms: I) -> Term {
    let set: BTreeSet<Term> = terms.into_iter().collect();
    set.into_iter().reduce(Term::plus).unwrap_or_else(Term::zero)
}

enum Piece<'a> {
    Lit(&'a str),
    Term(&'a Term, u8),
    Prop(&'a PropTerm, u8),
}

/// Lazily produced rendering, so that ordering large terms does not
/// materialize their strings.
struct Pieces<'a> {
    stack: Vec<Piece<'a>>,
}

impl<'a> Pieces<'a> {
    fn new() -> Self {
        Pieces { stack: Vec::new() }
    }

    fn push_term(&mut self, t: &'a Term, min: u8) {
        self.stack.push(Piece::Term(t, min));
    }

    fn push_prop(&mut self, p: &'a PropTerm, min: u8) {
        self.stack.push(Piece::Prop(p, min));
    }

    fn expand_term(&mut self, t: &'a Term, min: u8) {
        let parens = t.precedence() < min;
        if parens {
            self.stack.push(Piece::Lit(")"));
        }
        match t.kind() {
            TermKind::Zero => self.stack.push(Piece::Lit("0")),
            TermKind::One => self.stack.push(Piece::Lit("1")),
            TermKind::Act(a) => self.stack.push(Piece::Lit(a)),
            TermKind::Prop(p) => {
                self.stack.push(Piece::Lit("]"));
                self.stack.push(Piece::Prop(p, 0));
                self.stack.push(Piece::Lit("["));
            }
            TermKind::Plus(e, f) => {
                self.stack.push(Piece::Term(f, 1));
                self.stack.push(Piece::Lit(" + "));
                self.stack.push(Piece::Term(e, 0));
            }
            TermKind::Seq(e, f) => {
                self.stack.push(Piece::Term(f, 2));
                self.stack.push(Piece::Lit(" ; "));
                self.stack.push(Piece::Term(e, 1));
            }
            TermKind::Star(e) => {
                self.stack.push(Piece::Lit("*"));
                self.stack.push(Piece::Term(e, 2));
            }
        }
        if parens {
            self.stack.push(Piece::Lit("("));
        }
    }

    fn expand_prop(&mut self, p: &'a PropTerm, min: u8) {
        let parens = p.precedence() < min;
        if parens {
            self.stack.push(Piece::Lit(")"));
        }
        match p {
            PropTerm::Bot => self.stack.push(Piece::Lit("F")),
            PropTerm::Top => self.stack.push(Piece::Lit("T")),
            PropTerm::Obs(o) => self.stack.push(Piece::Lit(o)),
            PropTerm::Or(l, r) => {
                self.stack.push(Piece::Prop(r, 1));
                self.stack.push(Piece::Lit(" \\/ "));
                self.stack.push(Piece::Prop(l, 0));
            }
            PropTerm::And(l, r) => {
                self.stack.push(Piece::Prop(r, 2));
                self.stack.push(Piece::Lit(" /\\ "));
                self.stack.push(Piece::Prop(l, 1));
            }
            PropTerm::Not(q) => {
                self.stack.push(Piece::Prop(q, 2));
                self.stack.push(Piece::Lit("!"));
            }
        }
        if parens {
            self.stack.push(Piece::Lit("("));
        }
    }
}

impl<'a> Iterator for Pieces<'a> {
    type Item = &'a str;

    fn next(&mut self) -> Option<&'a str> {
        loop {
            match self.stack.pop()? {
                Piece::Lit(s) => return Some(s),
                Piece::Term(t, min) => self.expand_term(t, min),
                Piece::Prop(p, min) => self.expand_prop(p, min),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Plus,
    Semi,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Zero,
    One,
    Or,
    And,
    Bang,
    Ident(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Plus => f.write_str("`+`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Star => f.write_str("`*`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::One => f.write_str("`1`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b';' => Tok::Semi,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'0' => Tok::Zero,
            b'1' => Tok::One,
            b'|' => Tok::Or,
            b'&' => Tok::And,
            b'!' => Tok::Bang,
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                i += 1;
                Tok::Or
            }
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 1;
                Tok::And
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: start, message: format!("unexpected character `{ch}`") });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

#[derive(Default)]
struct Names {
    observables: BTreeSet<String>,
    actions: BTreeSet<String>,
}

enum Resolver<'a> {
    Check(&'a Signature),
    Collect(&'a mut Names),
}

impl Resolver<'_> {
    fn action(&mut self, name: &str) -> Result<Symbol> {
        match self {
            Resolver::Check(sig) => sig
                .action(name)
                .cloned()
                .ok_or_else(|| Error::UnknownSymbol { name: name.to_string(), kind: SymbolKind::Action }),
            Resolver::Collect(names) => {
                names.actions.insert(name.to_string());
                Ok(Symbol::from(name))
            }
        }
    }

    fn observable(&mut self, name: &str) -> Result<Symbol> {
        match self {
            Resolver::Check(sig) => sig
                .observable_index(name)
                .map(|i| sig.observables[i].clone())
                .ok_or_else(|| Error::UnknownSymbol { name: name.to_string(), kind: SymbolKind::Observable }),
            Resolver::Collect(names) => {
                names.observables.insert(name.to_string());
                Ok(Symbol::from(name))
            }
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    text: &'a str,
    pos: usize,
    resolver: Resolver<'a>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, resolver: Resolver<'a>) -> Self {
        Parser { toks: Vec::new(), text, pos: 0, resolver }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        Error::Syntax { pos: self.offset(), message: format!("expected {expected}, found {}", self.peek()) }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn parse_all(mut self) -> Result<Term> {
        self.toks = lex(self.text)?;
        let e = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.unexpected("`+`, `;`, `*` or end of input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Term> {
        let mut e = self.seq()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let f = self.seq()?;
            e = Term::plus(e, f);
        }
        Ok(e)
    }

    fn seq(&mut self) -> Result<Term> {
        let mut e = self.star()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            let f = self.star()?;
            e = Term::seq(e, f);
        }
        Ok(e)
    }

    fn star(&mut self) -> Result<Term> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            e = Term::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::zero())
            }
            Tok::One => {
                self.bump();
                Ok(Term::one())
            }
            Tok::Ident(name) => {
                self.bump();
                let sym = self.resolver.action(&name)?;
                Ok(Term::new(TermKind::Act(sym)))
            }
            Tok::LBracket => {
                self.bump();
                let p = self.bexp()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Term::prop(p))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn bexp(&mut self) -> Result<PropTerm> {
        let mut p = self.bconj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let q = self.bconj()?;
            p = PropTerm::or(p, q);
        }
        Ok(p)
    }

    fn bconj(&mut self) -> Result<PropTerm> {
        let mut p = self.bneg()?;
        while *self.peek() == Tok::And {
            self.bump();
            let q = self.bneg()?;
            p = PropTerm::and(p, q);
        }
        Ok(p)
    }

    fn bneg(&mut self) -> Result<PropTerm> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(PropTerm::not(self.bneg()?))
            }
            Tok::Ident(name) if name == "T" => {
                self.bump();
                Ok(PropTerm::Top)
            }
            Tok::Ident(name) if name == "F" => {
                self.bump();
                Ok(PropTerm::Bot)
            }
            Tok::Ident(name) => {
                self.bump();
                let sym = self.resolver.observable(&name)?;
                Ok(PropTerm::Obs(sym))
            }
            Tok::LParen => {
                self.bump();
                let p = self.bexp()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            _ => Err(self.unexpected("a proposition")),
        }
    }
}

/// Parses a term over `sig`. Observables may only occur inside `[...]`,
/// actions only outside.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    Parser::new(text, Resolver::Check(sig)).parse_all()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(obs: &[&str], acts: &[&str]) -> Signature {
        Signature::new(obs, acts).unwrap()
    }

    #[test]
    fn parses_conjunction_in_brackets() {
        let s = sig(&["a", "b"], &[]);
        let e = parse_term("[a /\\ b]", &s).unwrap();
        assert_eq!(e, Term::prop(PropTerm::and(PropTerm::obs("a"), PropTerm::obs("b"))));
    }

    #[test]
    fn parses_guarded_sequence() {
        let s = sig(&["a"], &["x"]);
        let e = parse_term("[a] ; x ; [!a]", &s).unwrap();
        let expected =
            Term::seq(Term::seq(Term::obs("a"), Term::act("x")), Term::prop(PropTerm::not(PropTerm::obs("a"))));
        assert_eq!(e, expected);
    }

    #[test]
    fn star_binds_tighter_than_plus() {
        let s = sig(&[], &["x", "y"]);
        let e = parse_term("x + y*", &s).unwrap();
        assert_eq!(e, Term::plus(Term::act("x"), Term::star(Term::act("y"))));
    }

    #[test]
    fn alternative_connectives_and_whitespace() {
        let s = sig(&["a", "b"], &["x"]);
        let e1 = parse_term("[a|b&!a];x", &s).unwrap();
        let e2 = parse_term("  [ a \\/ b /\\ ! a ]  ;  x ", &s).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn renders_examples() {
        assert_eq!(Term::prop(PropTerm::Bot).render(), "[F]");
        assert_eq!(Term::star(Term::plus(Term::act("x"), Term::one())).render(), "(x + 1)*");
        assert_eq!(Term::seq(Term::obs("a"), Term::act("x")).render(), "[a] ; x");
    }

    #[test]
    fn render_parenthesizes_right_nested() {
        let e = Term::plus(Term::act("x"), Term::plus(Term::act("y"), Term::act("z")));
        assert_eq!(e.render(), "x + (y + z)");
        let p = PropTerm::not(PropTerm::and(PropTerm::obs("a"), PropTerm::Top));
        assert_eq!(Term::prop(p).render(), "[!(a /\\ T)]");
        assert_eq!(Term::star(Term::star(Term::act("x"))).render(), "x**");
    }

    #[test]
    fn unknown_symbols_report_their_class() {
        let s = sig(&["a"], &["x"]);
        assert_eq!(
            parse_term("y", &s).unwrap_err(),
            Error::UnknownSymbol { name: "y".into(), kind: SymbolKind::Action }
        );
        assert_eq!(
            parse_term("[x]", &s).unwrap_err(),
            Error::UnknownSymbol { name: "x".into(), kind: SymbolKind::Observable }
        );
        // observables are not actions
        assert!(matches!(parse_term("a", &s), Err(Error::UnknownSymbol { kind: SymbolKind::Action, .. })));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let s = sig(&["a"], &["x"]);
        match parse_term("x + ", &s) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_term("x $", &s) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_term("[a", &s), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("x y", &s), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("", &s), Err(Error::Syntax { .. })));
    }

    #[test]
    fn canonical_sum_examples() {
        assert_eq!(canonical_sum(vec![]), Term::zero());
        assert_eq!(canonical_sum(vec![Term::act("x")]), Term::act("x"));
        assert_eq!(canonical_sum(vec![Term::act("y"), Term::act("x")]), Term::plus(Term::act("x"), Term::act("y")));
        assert_eq!(
            canonical_sum(vec![Term::act("z"), Term::act("x"), Term::act("y"), Term::act("x")]),
            Term::plus(Term::plus(Term::act("x"), Term::act("y")), Term::act("z"))
        );
    }

    #[test]
    fn ordering_matches_rendering() {
        let terms = [
            Term::act("x"),
            Term::seq(Term::one(), Term::act("x")),
            Term::star(Term::plus(Term::act("x"), Term::one())),
            Term::obs("a"),
            Term::zero(),
        ];
        for a in &terms {
            for b in &terms {
                assert_eq!(a.cmp(b), a.render().cmp(&b.render()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(["a"], ["a"]).is_err());
        assert!(Signature::new(["a", "a"], Vec::<&str>::new()).is_err());
        assert!(Signature::new(["T"], Vec::<&str>::new()).is_err());
        assert!(Signature::new(["1x"], Vec::<&str>::new()).is_err());
        let many: Vec<String> = (0..17).map(|i| format!("o{i}")).collect();
        assert_eq!(
            Signature::new(&many, Vec::<&str>::new()).unwrap_err(),
            Error::SignatureTooLarge { observables: 17, max: 16 }
        );
    }

    #[test]
    fn infers_signature_from_brackets() {
        let s = Signature::infer(&["[a /\\ b] ; x", "[b] + y*"]).unwrap();
        assert_eq!(s, sig(&["a", "b"], &["x", "y"]));
        assert!(Signature::infer(&["a ; [a]"]).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(Term::obs("a").size(), 1);
        assert_eq!(Term::prop(PropTerm::and(PropTerm::obs("a"), PropTerm::obs("b"))).size(), 3);
        assert_eq!(Term::star(Term::plus(Term::act("x"), Term::one())).size(), 4);
    }
}

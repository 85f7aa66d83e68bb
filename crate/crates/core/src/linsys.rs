//! The linear system of a term, matrix star, its least solution, and the
//! atomic closed term built from it.

use std::collections::HashSet;

use crate::boolean::{all_atoms, pi_atom};
use crate::derivatives::{epsilon, initial, Derivatives};
use crate::error::{Error, Result};
use crate::semantics::Oracle;
use crate::syntax::{canonical_sum, PropTerm, Signature, Term, TermKind};

// Sum and product with the unit and absorption laws applied on the spot.

fn add(a: &Term, b: &Term) -> Term {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        Term::plus(a.clone(), b.clone())
    }
}

fn mul(a: &Term, b: &Term) -> Term {
    if a.is_zero() || b.is_zero() {
        Term::zero()
    } else if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else {
        Term::seq(a.clone(), b.clone())
    }
}

fn star(a: &Term) -> Term {
    if a.is_zero() {
        Term::one()
    } else {
        Term::star(a.clone())
    }
}

fn sum(ts: impl IntoIterator<Item = Term>) -> Term {
    canonical_sum(ts.into_iter().filter(|t| !t.is_zero()))
}

type Block = Vec<Vec<Term>>;

fn block_mul(a: &Block, b: &Block) -> Block {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| sum((0..inner).map(|k| mul(&row[k], &b[k][j])))).collect()).collect()
}

fn block_add(a: &Block, b: &Block) -> Block {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| add(x, y)).collect()).collect()
}

fn sub_block(m: &Block, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Block {
    m[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

fn block_star(m: &Block) -> Block {
    let n = m.len();
    match n {
        0 => Vec::new(),
        1 => vec![vec![star(&m[0][0])]],
        _ => {
            let k = n.div_ceil(2);
            let a = sub_block(m, 0..k, 0..k);
            let b = sub_block(m, 0..k, k..n);
            let c = sub_block(m, k..n, 0..k);
            let d = sub_block(m, k..n, k..n);
            let ds = block_star(&d);
            let bds = block_mul(&b, &ds);
            let dsc = block_mul(&ds, &c);
            let fs = block_star(&block_add(&a, &block_mul(&bds, &c)));
            let top_right = block_mul(&fs, &bds);
            let bottom_left = block_mul(&dsc, &fs);
            let bottom_right = block_add(&ds, &block_mul(&dsc, &top_right));
            let mut out: Block = Vec::with_capacity(n);
            for (l, r) in fs.into_iter().zip(top_right) {
                out.push(l.into_iter().chain(r).collect());
            }
            for (l, r) in bottom_left.into_iter().zip(bottom_right) {
                out.push(l.into_iter().chain(r).collect());
            }
            out
        }
    }
}

/// A vector indexed by a finite, ordered set of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermVector {
    index: Vec<Term>,
    entries: Vec<Term>,
}

impl TermVector {
    pub fn new(index: Vec<Term>, entries: Vec<Term>) -> Result<Self> {
        if index.len() != entries.len() {
            return Err(Error::NotSquare { rows: entries.len(), index: index.len() });
        }
        Ok(TermVector { index, entries })
    }

    pub fn index(&self) -> &[Term] {
        &self.index
    }

    pub fn entries(&self) -> &[Term] {
        &self.entries
    }

    pub fn get(&self, q: &Term) -> Option<&Term> {
        self.index.iter().position(|t| t == q).map(|i| &self.entries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Term)> {
        self.index.iter().zip(&self.entries)
    }
}

/// A square matrix whose rows and columns are indexed by the same terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermMatrix {
    index: Vec<Term>,
    rows: Vec<Vec<Term>>,
}

impl TermMatrix {
    pub fn from_rows(index: Vec<Term>, rows: Vec<Vec<Term>>) -> Result<Self> {
        let n = index.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: rows.len(), index: n });
        }
        Ok(TermMatrix { index, rows })
    }

    pub fn identity(index: Vec<Term>) -> Self {
        let n = index.len();
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { Term::one() } else { Term::zero() }).collect()).collect();
        TermMatrix { index, rows }
    }

    pub fn index(&self) -> &[Term] {
        &self.index
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Term {
        &self.rows[i][j]
    }

    pub fn add(&self, other: &TermMatrix) -> TermMatrix {
        TermMatrix { index: self.index.clone(), rows: block_add(&self.rows, &other.rows) }
    }

    pub fn mul(&self, other: &TermMatrix) -> TermMatrix {
        TermMatrix { index: self.index.clone(), rows: block_mul(&self.rows, &other.rows) }
    }

    pub fn mul_vec(&self, x: &TermVector) -> TermVector {
        let entries = self.rows.iter().map(|row| sum(row.iter().zip(&x.entries).map(|(m, v)| mul(m, v)))).collect();
        TermVector { index: self.index.clone(), entries }
    }
}

/// Kleene star by recursive block decomposition, splitting at the first
/// half (rounded up) of the index.
pub fn mat_star(m: &TermMatrix) -> TermMatrix {
    TermMatrix { index: m.index.clone(), rows: block_star(&m.rows) }
}

/// The system `(M, x)` over the reach set of `e`: `x(q)` is `1` exactly
/// when `q` terminates, and `M(q, r)` sums the letters (actions, or the
/// atom terms of atoms) that lead from `q` to `r`.
pub fn build_system(e: &Term, sig: &Signature) -> (TermMatrix, TermVector) {
    let mut d = Derivatives::new(sig);
    let mut index = d.reach(e);
    index.sort();
    let pos = |t: &Term| index.iter().position(|q| q == t).expect("reach is closed under continuations");
    let n = index.len();
    let mut cells: Vec<Vec<Vec<Term>>> = vec![vec![Vec::new(); n]; n];
    let atoms: Vec<_> = all_atoms(sig).into_iter().map(|a| (a, Term::prop(pi_atom(a, sig)))).collect();
    for (i, q) in index.iter().enumerate() {
        for (k, a) in sig.actions().iter().enumerate() {
            for r in d.delta_index(q, k) {
                cells[i][pos(&r)].push(Term::new(TermKind::Act(a.clone())));
            }
        }
        for (alpha, pi) in &atoms {
            for r in d.zeta(q, *alpha) {
                cells[i][pos(&r)].push(pi.clone());
            }
        }
    }
    let rows = cells.into_iter().map(|row| row.into_iter().map(canonical_sum).collect()).collect();
    let x = index.iter().map(|q| if epsilon(q) { Term::one() } else { Term::zero() }).collect();
    (TermMatrix { index: index.clone(), rows }, TermVector { index, entries: x })
}

/// The least solution `M* · x` of the system of `e`.
pub fn solve_vector(e: &Term, sig: &Signature) -> TermVector {
    let (m, x) = build_system(e, sig);
    mat_star(&m).mul_vec(&x)
}

/// The atomic term `Σ s(q)` over the initial factors `q` of `e`, where `s`
/// is the least solution of the system of `e`.
pub fn hat(e: &Term, sig: &Signature) -> Term {
    let s = solve_vector(e, sig);
    sum(initial(e).iter().map(|q| s.get(q).expect("initial factors are reachable").clone()))
}

/// Whether every propositional subterm of `e` is the atom term of some atom.
pub fn is_atomic(e: &Term, sig: &Signature) -> bool {
    let atoms: HashSet<PropTerm> = all_atoms(sig).into_iter().map(|a| pi_atom(a, sig)).collect();
    let mut seen: HashSet<Term> = HashSet::new();
    let mut stack = vec![e.clone()];
    while let Some(t) = stack.pop() {
        if !seen.insert(t.clone()) {
            continue;
        }
        match t.kind() {
            TermKind::Prop(p) => {
                if !atoms.contains(p) {
                    return false;
                }
            }
            TermKind::Plus(f, g) | TermKind::Seq(f, g) => {
                stack.push(f.clone());
                stack.push(g.clone());
            }
            TermKind::Star(f) => stack.push(f.clone()),
            _ => {}
        }
    }
    true
}

/// Whether the bounded observation language of `e` adds nothing to its
/// plain word language, for words up to length `n` and slack `m`.
pub fn closed_bounded(e: &Term, n: usize, m: usize, sig: &Signature) -> Result<bool> {
    Oracle::new(sig).closed(e, n, m)
}

//! Atoms and the Boolean-algebra semantics of propositional terms.

use std::collections::BTreeSet;

use crate::syntax::{PropTerm, Signature};

/// A complete truth assignment: bit `i` is set iff observable `i` of the
/// governing signature is present. Atoms are ordered by their mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub const EMPTY: Atom = Atom(0);

    pub fn from_mask(mask: u32) -> Self {
        Atom(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    /// The atom containing exactly the named observables.
    ///
    /// Panics if a name is not an observable of `sig`.
    pub fn of(sig: &Signature, names: &[&str]) -> Self {
        let mut mask = 0;
        for name in names {
            let i = sig.observable_index(name).unwrap_or_else(|| panic!("`{name}` is not an observable"));
            mask |= 1 << i;
        }
        Atom(mask)
    }
}

/// Every atom of the signature, in mask order.
pub fn all_atoms(sig: &Signature) -> Vec<Atom> {
    (0..1u32 << sig.observables().len()).map(Atom).collect()
}

/// Whether `atom` satisfies `p`.
///
/// Panics if `p` mentions an observable outside `sig`.
pub fn holds(p: &PropTerm, atom: Atom, sig: &Signature) -> bool {
    match p {
        PropTerm::Bot => false,
        PropTerm::Top => true,
        PropTerm::Obs(o) => {
            let i = sig.observable_index(o).unwrap_or_else(|| panic!("`{o}` is not an observable of the signature"));
            atom.contains(i)
        }
        PropTerm::Or(l, r) => holds(l, atom, sig) || holds(r, atom, sig),
        PropTerm::And(l, r) => holds(l, atom, sig) && holds(r, atom, sig),
        PropTerm::Not(q) => !holds(q, atom, sig),
    }
}

pub fn sem_ba(p: &PropTerm, sig: &Signature) -> BTreeSet<Atom> {
    all_atoms(sig).into_iter().filter(|&a| holds(p, a, sig)).collect()
}

/// The conjunction of every observable in `atom` and the negation of every
/// other one, left-associated in signature order. The empty conjunction is `T`.
pub fn pi_atom(atom: Atom, sig: &Signature) -> PropTerm {
    sig.observables()
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let lit = PropTerm::Obs(o.clone());
            if atom.contains(i) {
                lit
            } else {
                PropTerm::not(lit)
            }
        })
        .reduce(PropTerm::and)
        .unwrap_or(PropTerm::Top)
}

/// Decides `p <= q` in the Boolean algebra by checking every atom.
pub fn ba_leq(p: &PropTerm, q: &PropTerm, sig: &Signature) -> bool {
    all_atoms(sig).into_iter().all(|a| !holds(p, a, sig) || holds(q, a, sig))
}

/// Renders an atom as `{o1,o2}` with names in signature order.
pub fn render_atom(atom: Atom, sig: &Signature) -> String {
    let names: Vec<&str> =
        sig.observables().iter().enumerate().filter(|(i, _)| atom.contains(*i)).map(|(_, o)| &**o).collect();
    format!("{{{}}}", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(obs: &[&str]) -> Signature {
        Signature::new(obs, Vec::<&str>::new()).unwrap()
    }

    #[test]
    fn atom_counts() {
        assert_eq!(all_atoms(&sig(&[])), vec![Atom::EMPTY]);
        assert_eq!(all_atoms(&sig(&["o1"])), vec![Atom(0), Atom(1)]);
        assert_eq!(all_atoms(&sig(&["o1", "o2"])).len(), 4);
    }

    #[test]
    fn holds_examples() {
        let s = sig(&["o1", "o2"]);
        let both = Atom::of(&s, &["o1", "o2"]);
        assert!(holds(&PropTerm::obs("o1"), both, &s));
        for a in all_atoms(&s) {
            assert!(!holds(&PropTerm::Bot, a, &s));
            let contradiction = PropTerm::and(PropTerm::obs("o1"), PropTerm::not(PropTerm::obs("o1")));
            assert!(!holds(&contradiction, a, &s));
        }
    }

    #[test]
    fn sem_ba_examples() {
        let s = sig(&["o1", "o2"]);
        let all: BTreeSet<Atom> = all_atoms(&s).into_iter().collect();
        assert_eq!(sem_ba(&PropTerm::Top, &s), all);
        let conj = PropTerm::and(PropTerm::obs("o1"), PropTerm::obs("o2"));
        assert_eq!(sem_ba(&conj, &s), BTreeSet::from([Atom::of(&s, &["o1", "o2"])]));
        let lem = PropTerm::or(PropTerm::obs("o1"), PropTerm::not(PropTerm::obs("o1")));
        assert_eq!(sem_ba(&lem, &s), all);
    }

    #[test]
    fn pi_atom_examples() {
        let s = sig(&["o1", "o2"]);
        let a = Atom::of(&s, &["o1"]);
        let pi = pi_atom(a, &s);
        assert_eq!(pi, PropTerm::and(PropTerm::obs("o1"), PropTerm::not(PropTerm::obs("o2"))));
        assert_eq!(sem_ba(&pi, &s), BTreeSet::from([a]));

        let empty = sig(&[]);
        assert_eq!(pi_atom(Atom::EMPTY, &empty), PropTerm::Top);
        assert_eq!(sem_ba(&PropTerm::Top, &empty), BTreeSet::from([Atom::EMPTY]));

        let one = sig(&["o1"]);
        assert_eq!(pi_atom(Atom::EMPTY, &one), PropTerm::not(PropTerm::obs("o1")));
    }

    #[test]
    fn pi_atom_denotes_its_atom_exhaustively() {
        for n in 0..=3 {
            let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
            let s = Signature::new(&names, Vec::<&str>::new()).unwrap();
            for a in all_atoms(&s) {
                assert_eq!(sem_ba(&pi_atom(a, &s), &s), BTreeSet::from([a]));
            }
        }
    }

    #[test]
    fn ba_leq_examples() {
        let s = sig(&["a", "b"]);
        let ab = PropTerm::and(PropTerm::obs("a"), PropTerm::obs("b"));
        assert!(ba_leq(&ab, &PropTerm::obs("a"), &s));
        assert!(!ba_leq(&PropTerm::Top, &PropTerm::Bot, &s));
        let ps = [PropTerm::obs("a"), ab.clone(), PropTerm::not(PropTerm::obs("b")), PropTerm::Top, PropTerm::Bot];
        for a in all_atoms(&s) {
            for p in &ps {
                assert_eq!(ba_leq(&pi_atom(a, &s), p, &s), holds(p, a, &s));
            }
        }
    }

    #[test]
    fn renders_atoms_in_signature_order() {
        let s = sig(&["o2", "o1"]);
        assert_eq!(render_atom(Atom::of(&s, &["o1", "o2"]), &s), "{o2,o1}");
        assert_eq!(render_atom(Atom::EMPTY, &s), "{}");
    }
}

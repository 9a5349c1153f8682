//! Exhaustive enumeration of target terms by size. A head, `<>`, `.1`,
//! `.2`, a λ, a pair and an application each count one.

use std::collections::HashMap;

use lfr::lfi::{Elim, LAtom, LHead, LTerm};
use lfr::{Hint, Name};

pub struct Enumerator {
    heads: Vec<Name>,
    atoms: HashMap<(u32, usize), Vec<LAtom>>,
    terms: HashMap<(u32, usize), Vec<LTerm>>,
}

impl Enumerator {
    pub fn new(heads: Vec<Name>) -> Enumerator {
        Enumerator { heads, atoms: HashMap::new(), terms: HashMap::new() }
    }

    /// Atomic terms of exactly `n` nodes under `k` binders.
    fn atoms(&mut self, k: u32, n: usize) -> Vec<LAtom> {
        if let Some(v) = self.atoms.get(&(k, n)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.extend(self.heads.iter().map(|c| LAtom::new(LHead::Const(c.clone()))));
            out.extend((0..k).map(|i| LAtom::new(LHead::Bound(i))));
        } else if n > 1 {
            for r in self.atoms(k, n - 1) {
                out.push(r.clone().fst());
                out.push(r.snd());
            }
            for a in 1..n - 1 {
                let args = self.terms(k, n - 1 - a);
                for r in self.atoms(k, a) {
                    for t in &args {
                        out.push(r.clone().push(Elim::App(t.clone())));
                        out.push(r.clone().push(Elim::Irr(t.clone())));
                    }
                }
            }
        }
        self.atoms.insert((k, n), out.clone());
        out
    }

    /// Terms of exactly `n` nodes under `k` binders.
    pub fn terms(&mut self, k: u32, n: usize) -> Vec<LTerm> {
        if let Some(v) = self.terms.get(&(k, n)) {
            return v.clone();
        }
        let mut out: Vec<LTerm> = self.atoms(k, n).into_iter().map(LTerm::Atom).collect();
        if n == 1 {
            out.push(LTerm::Unit);
        }
        if n >= 2 {
            for b in self.terms(k + 1, n - 1) {
                out.push(LTerm::Lam(Hint::new("x"), Box::new(b)));
            }
        }
        for a in 1..n.saturating_sub(1) {
            let rights = self.terms(k, n - 1 - a);
            for l in self.terms(k, a) {
                for r in &rights {
                    out.push(LTerm::pair(l.clone(), r.clone()));
                }
            }
        }
        self.terms.insert((k, n), out.clone());
        out
    }

    /// Closed terms of at most `max` nodes, smallest first.
    pub fn closed_up_to(&mut self, max: usize) -> Vec<LTerm> {
        (1..=max).flat_map(|n| self.terms(0, n)).collect()
    }
}

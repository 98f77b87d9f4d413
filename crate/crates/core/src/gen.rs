//! Seeded random syntax for property suites and examples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::nominal::Atom;
use crate::syntax::{Formula, Signature, Sym, Term};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `f/1`, `g/2`, `c/0`, `P/1`, `Q/1`, `R/2`.
pub fn demo_signature() -> Signature {
    Signature::new()
        .with_function("f", 1)
        .with_function("g", 2)
        .with_function("c", 0)
        .with_predicate("P", 1)
        .with_predicate("Q", 1)
        .with_predicate("R", 2)
}

pub fn atoms(n: u32) -> Vec<Atom> {
    (0..n).map(Atom).collect()
}

/// Random terms and formulas over a signature and a pool of atoms. Binders
/// are drawn from the same pool, so capture situations come up often.
#[derive(Clone, Debug)]
pub struct SyntaxGen {
    functions: Vec<(Sym, usize)>,
    predicates: Vec<(Sym, usize)>,
    pub atoms: Vec<Atom>,
    pub term_depth: usize,
    pub allow_equality: bool,
}

impl SyntaxGen {
    pub fn new(sig: &Signature, atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "atom pool must be non-empty");
        SyntaxGen {
            functions: sig.functions().map(|(f, n)| (f.clone(), n)).collect(),
            predicates: sig.predicates().map(|(p, n)| (p.clone(), n)).collect(),
            atoms,
            term_depth: 2,
            allow_equality: true,
        }
    }

    pub fn atom<R: Rng>(&self, rng: &mut R) -> Atom {
        *self.atoms.choose(rng).unwrap()
    }

    pub fn term<R: Rng>(&self, rng: &mut R) -> Term {
        self.term_at(rng, self.term_depth)
    }

    pub fn term_at<R: Rng>(&self, rng: &mut R, depth: usize) -> Term {
        if depth == 0 || self.functions.is_empty() || rng.gen_bool(0.45) {
            let constants: Vec<&(Sym, usize)> =
                self.functions.iter().filter(|(_, n)| *n == 0).collect();
            if !constants.is_empty() && rng.gen_bool(0.2) {
                return Term::App(constants.choose(rng).unwrap().0.clone(), vec![]);
            }
            return Term::Var(self.atom(rng));
        }
        let (f, n) = self.functions.choose(rng).unwrap().clone();
        Term::App(f, (0..n).map(|_| self.term_at(rng, depth - 1)).collect())
    }

    pub fn atomic<R: Rng>(&self, rng: &mut R) -> Formula {
        let roll = rng.gen_range(0..10);
        if roll == 0 {
            return Formula::Bot;
        }
        if (roll <= 2 && self.allow_equality) || self.predicates.is_empty() {
            return Formula::eq(self.term(rng), self.term(rng));
        }
        let (p, n) = self.predicates.choose(rng).unwrap().clone();
        Formula::Pred(p, (0..n).map(|_| self.term(rng)).collect())
    }

    /// A formula of depth at most `depth`, including sugared connectives.
    pub fn formula<R: Rng>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.2) {
            return self.atomic(rng);
        }
        match rng.gen_range(0..7) {
            0 | 1 => Formula::and(self.formula(rng, depth - 1), self.formula(rng, depth - 1)),
            2 => Formula::neg(self.formula(rng, depth - 1)),
            3 | 4 => Formula::all(self.atom(rng), self.formula(rng, depth - 1)),
            5 if depth >= 3 => {
                Formula::or(self.formula(rng, depth - 3), self.formula(rng, depth - 3))
            }
            6 if depth >= 4 => {
                Formula::imp(self.formula(rng, depth - 4), self.formula(rng, depth - 4))
            }
            _ => Formula::neg(self.formula(rng, depth - 1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_well_formed() {
        let sig = demo_signature();
        let g = SyntaxGen::new(&sig, atoms(4));
        let mut r1 = rng(7);
        let mut r2 = rng(7);
        for _ in 0..200 {
            let x = g.formula(&mut r1, 5);
            let y = g.formula(&mut r2, 5);
            assert_eq!(x, y);
            assert!(x.depth() <= 5);
            sig.check_formula(&x).unwrap();
        }
    }
}

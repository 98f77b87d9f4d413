//! Lattice algebras with fresh-finite limits, complements, equality and a
//! compatible substitution action, and the interpretation of first-order
//! formulas into them.

use std::collections::HashMap;
use std::fmt;

use crate::nominal::{fresh, fresh_many, swap, Atom, AtomSet};
use crate::sigma::{
    pick_fresh, sim_subst, Carrier, NominalCarrier, Sampler, SigmaAlgebra, SuiteReport, TermOf,
    TermlikeSigma,
};
use crate::syntax::{Formula, Sym, Term};

/// `∨`, `⊥` and `≤` are always derived from `∧`, `¬` and carrier equality.
pub trait FoleqAlgebra: SigmaAlgebra {
    fn top(&self) -> Self::Elem;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// `∇a.x`, the greatest lower bound of `x` among elements fresh for `a`.
    fn freshmeet(&self, a: Atom, x: &Self::Elem) -> Self::Elem;
    fn eq(&self, u: &TermOf<Self>, v: &TermOf<Self>) -> Self::Elem;

    fn bot(&self) -> Self::Elem {
        self.neg(&self.top())
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.meet(&self.neg(x), &self.neg(y)))
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.equal(&self.meet(x, y), x)
    }

    fn meet_all<'a, I>(&self, xs: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(&acc, x))
    }

    fn join_all<'a, I>(&self, xs: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        xs.into_iter().fold(self.bot(), |acc, x| self.join(&acc, x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InterpretError {
    #[error("no interpretation for symbol `{0}`")]
    Missing(Sym),
    #[error("symbol `{name}` interpreted at arity {expected}, applied to {found} arguments")]
    Arity {
        name: Sym,
        expected: usize,
        found: usize,
    },
}

type FunInterp<A> = Box<dyn Fn(&[Atom]) -> TermOf<A> + Send + Sync>;
type PredInterp<A> = Box<dyn Fn(&[Atom]) -> <A as Carrier>::Elem + Send + Sync>;

/// Symbols interpreted as equivariant functions of distinct atom tuples.
pub struct Interpretation<A: FoleqAlgebra> {
    pub target: A,
    funs: HashMap<Sym, (usize, FunInterp<A>)>,
    preds: HashMap<Sym, (usize, PredInterp<A>)>,
}

impl<A: FoleqAlgebra> fmt::Debug for Interpretation<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut funs: Vec<_> = self
            .funs
            .iter()
            .map(|(k, (n, _))| format!("{k}/{n}"))
            .collect();
        let mut preds: Vec<_> = self
            .preds
            .iter()
            .map(|(k, (n, _))| format!("{k}/{n}"))
            .collect();
        funs.sort();
        preds.sort();
        f.debug_struct("Interpretation")
            .field("funs", &funs)
            .field("preds", &preds)
            .finish()
    }
}

impl<A: FoleqAlgebra> Interpretation<A> {
    pub fn new(target: A) -> Self {
        Interpretation {
            target,
            funs: HashMap::new(),
            preds: HashMap::new(),
        }
    }

    pub fn with_function<F>(mut self, name: &str, arity: usize, f: F) -> Self
    where
        F: Fn(&[Atom]) -> TermOf<A> + Send + Sync + 'static,
    {
        self.funs.insert(Sym::from(name), (arity, Box::new(f)));
        self
    }

    pub fn with_predicate<F>(mut self, name: &str, arity: usize, p: F) -> Self
    where
        F: Fn(&[Atom]) -> A::Elem + Send + Sync + 'static,
    {
        self.preds.insert(Sym::from(name), (arity, Box::new(p)));
        self
    }

    /// The function symbol's value at the given distinct atoms.
    pub fn function_at(&self, name: &str, atoms: &[Atom]) -> Option<TermOf<A>> {
        self.funs.get(name).map(|(_, f)| f(atoms))
    }

    pub fn predicate_at(&self, name: &str, atoms: &[Atom]) -> Option<A::Elem> {
        self.preds.get(name).map(|(_, p)| p(atoms))
    }

    pub fn interpret_term(&self, t: &Term) -> Result<TermOf<A>, InterpretError> {
        let terms = self.target.terms();
        match t {
            Term::Var(a) => Ok(terms.atm(*a)),
            Term::App(f, args) => {
                let (n, fi) = self
                    .funs
                    .get(f)
                    .ok_or_else(|| InterpretError::Missing(f.clone()))?;
                check_arity(f, *n, args.len())?;
                let vals = args
                    .iter()
                    .map(|r| self.interpret_term(r))
                    .collect::<Result<Vec<_>, _>>()?;
                let avoid: AtomSet = vals.iter().flat_map(|v| terms.support(v)).collect();
                let at = fresh_many(&avoid, *n);
                let pairs: Vec<_> = at.iter().copied().zip(vals).collect();
                Ok(sim_subst(terms, &fi(&at), &pairs).expect("fresh atoms are distinct"))
            }
        }
    }

    pub fn interpret(&self, phi: &Formula) -> Result<A::Elem, InterpretError> {
        let alg = &self.target;
        Ok(match phi {
            Formula::Bot => alg.bot(),
            Formula::Eq(l, r) => alg.eq(&self.interpret_term(l)?, &self.interpret_term(r)?),
            Formula::Pred(p, args) => {
                let (n, pi) = self
                    .preds
                    .get(p)
                    .ok_or_else(|| InterpretError::Missing(p.clone()))?;
                check_arity(p, *n, args.len())?;
                let vals = args
                    .iter()
                    .map(|r| self.interpret_term(r))
                    .collect::<Result<Vec<_>, _>>()?;
                let avoid: AtomSet = vals.iter().flat_map(|v| alg.terms().support(v)).collect();
                let at = fresh_many(&avoid, *n);
                let pairs: Vec<_> = at.iter().copied().zip(vals).collect();
                sim_subst(alg, &pi(&at), &pairs).expect("fresh atoms are distinct")
            }
            Formula::And(l, r) => alg.meet(&self.interpret(l)?, &self.interpret(r)?),
            Formula::Neg(x) => alg.neg(&self.interpret(x)?),
            Formula::All(a, x) => alg.freshmeet(*a, &self.interpret(x)?),
        })
    }

    /// `⋀Φ ≤ ⋁Ψ`.
    pub fn sequent_valid(
        &self,
        left: &[Formula],
        right: &[Formula],
    ) -> Result<bool, InterpretError> {
        let l = left
            .iter()
            .map(|p| self.interpret(p))
            .collect::<Result<Vec<_>, _>>()?;
        let r = right
            .iter()
            .map(|p| self.interpret(p))
            .collect::<Result<Vec<_>, _>>()?;
        let alg = &self.target;
        Ok(alg.leq(&alg.meet_all(&l), &alg.join_all(&r)))
    }

    /// Samples equivariance of each symbol: evaluating at renamed atoms
    /// equals renaming the value. Returns the first offending symbol.
    pub fn equivariance_check(&self, perms: &[crate::nominal::Perm]) -> Result<(), Sym> {
        let alg = &self.target;
        for (name, (n, f)) in &self.funs {
            let at = fresh_many(&AtomSet::new(), *n);
            for pi in perms {
                let moved: Vec<Atom> = at.iter().map(|&a| pi.apply(a)).collect();
                if !alg.terms().equal(&f(&moved), &alg.terms().act(&f(&at), pi)) {
                    return Err(name.clone());
                }
            }
        }
        for (name, (n, p)) in &self.preds {
            let at = fresh_many(&AtomSet::new(), *n);
            for pi in perms {
                let moved: Vec<Atom> = at.iter().map(|&a| pi.apply(a)).collect();
                if !alg.equal(&p(&moved), &alg.act(&p(&at), pi)) {
                    return Err(name.clone());
                }
            }
        }
        Ok(())
    }
}

fn check_arity(name: &Sym, expected: usize, found: usize) -> Result<(), InterpretError> {
    if expected == found {
        Ok(())
    } else {
        Err(InterpretError::Arity {
            name: name.clone(),
            expected,
            found,
        })
    }
}

/// `∇a.x ≤ x[a←u]` for every candidate; with `exact`, also
/// `∇a.x = ⋀ x[a←u]` over the candidates.
pub fn freshmeet_char_check<A: FoleqAlgebra>(
    alg: &A,
    x: &A::Elem,
    a: Atom,
    candidates: &[TermOf<A>],
    exact: bool,
) -> bool {
    let nabla = alg.freshmeet(a, x);
    let images: Vec<A::Elem> = candidates.iter().map(|u| alg.subst(x, a, u)).collect();
    if !images.iter().all(|y| alg.leq(&nabla, y)) {
        return false;
    }
    !exact || alg.equal(&nabla, &alg.meet_all(&images))
}

macro_rules! law {
    ($alg:expr, $ctx:expr, $l:expr, $r:expr) => {{
        let (l, r) = ($l, $r);
        if $alg.equal(&l, &r) {
            Ok(())
        } else {
            Err(format!("{}: lhs={:?} rhs={:?}", $ctx, l, r))
        }
    }};
}

/// Lattice, Boolean, fresh-finite-limit, substitution-compatibility and
/// equality laws, `n` random cases each.
pub fn foleq_axiom_suite<A, Sm>(alg: &A, s: &mut Sm, n: usize) -> SuiteReport
where
    A: FoleqAlgebra,
    Sm: Sampler<A::Elem, TermOf<A>>,
{
    let terms = alg.terms();
    let mut r = SuiteReport::new();

    r.run("meet-comm", n, |_| {
        let (x, y) = (s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?}"),
            alg.meet(&x, &y),
            alg.meet(&y, &x)
        )
    });
    r.run("meet-assoc", n, |_| {
        let (x, y, z) = (s.element(), s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?} z={z:?}"),
            alg.meet(&x, &alg.meet(&y, &z)),
            alg.meet(&alg.meet(&x, &y), &z)
        )
    });
    r.run("meet-idem", n, |_| {
        let x = s.element();
        law!(alg, format!("x={x:?}"), alg.meet(&x, &x), x.clone())
    });
    r.run("join-comm", n, |_| {
        let (x, y) = (s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?}"),
            alg.join(&x, &y),
            alg.join(&y, &x)
        )
    });
    r.run("join-assoc", n, |_| {
        let (x, y, z) = (s.element(), s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?} z={z:?}"),
            alg.join(&x, &alg.join(&y, &z)),
            alg.join(&alg.join(&x, &y), &z)
        )
    });
    r.run("join-idem", n, |_| {
        let x = s.element();
        law!(alg, format!("x={x:?}"), alg.join(&x, &x), x.clone())
    });
    r.run("absorb-meet", n, |_| {
        let (x, y) = (s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?}"),
            alg.meet(&x, &alg.join(&x, &y)),
            x.clone()
        )
    });
    r.run("absorb-join", n, |_| {
        let (x, y) = (s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?}"),
            alg.join(&x, &alg.meet(&x, &y)),
            x.clone()
        )
    });
    r.run("top-unit", n, |_| {
        let x = s.element();
        law!(alg, format!("x={x:?}"), alg.meet(&x, &alg.top()), x.clone())
    });
    r.run("bot-unit", n, |_| {
        let x = s.element();
        law!(alg, format!("x={x:?}"), alg.join(&x, &alg.bot()), x.clone())
    });
    r.run("distrib-meet", n, |_| {
        let (x, y, z) = (s.element(), s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?} z={z:?}"),
            alg.meet(&x, &alg.join(&y, &z)),
            alg.join(&alg.meet(&x, &y), &alg.meet(&x, &z))
        )
    });
    r.run("distrib-join", n, |_| {
        let (x, y, z) = (s.element(), s.element(), s.element());
        law!(
            alg,
            format!("x={x:?} y={y:?} z={z:?}"),
            alg.join(&x, &alg.meet(&y, &z)),
            alg.meet(&alg.join(&x, &y), &alg.join(&x, &z))
        )
    });
    r.run("double-neg", n, |_| {
        let x = s.element();
        law!(alg, format!("x={x:?}"), alg.neg(&alg.neg(&x)), x.clone())
    });
    r.run("complement-meet", n, |_| {
        let x = s.element();
        law!(
            alg,
            format!("x={x:?}"),
            alg.meet(&x, &alg.neg(&x)),
            alg.bot()
        )
    });
    r.run("complement-join", n, |_| {
        let x = s.element();
        law!(
            alg,
            format!("x={x:?}"),
            alg.join(&x, &alg.neg(&x)),
            alg.top()
        )
    });

    r.run("nabla-alpha", n, |_| {
        let x = s.element();
        let a = s.atom();
        let b = pick_fresh(s, &alg.support(&x));
        law!(
            alg,
            format!("x={x:?} a={a} b={b}"),
            alg.freshmeet(b, &alg.act(&x, &swap(b, a))),
            alg.freshmeet(a, &x)
        )
    });
    r.run("nabla-meet", n, |_| {
        let (x, y) = (s.element(), s.element());
        let a = s.atom();
        law!(
            alg,
            format!("x={x:?} y={y:?} a={a}"),
            alg.freshmeet(a, &alg.meet(&x, &y)),
            alg.meet(&alg.freshmeet(a, &x), &alg.freshmeet(a, &y))
        )
    });
    r.run("nabla-join", n, |_| {
        let (x, y) = (s.element(), s.element());
        let a = pick_fresh(s, &alg.support(&y));
        law!(
            alg,
            format!("x={x:?} y={y:?} a={a}"),
            alg.freshmeet(a, &alg.join(&x, &y)),
            alg.join(&alg.freshmeet(a, &x), &y)
        )
    });
    r.run("nabla-leq", n, |_| {
        let x = s.element();
        let a = s.atom();
        let nx = alg.freshmeet(a, &x);
        if alg.leq(&nx, &x) {
            Ok(())
        } else {
            Err(format!("x={x:?} a={a} nabla={nx:?}"))
        }
    });
    r.run("nabla-fresh", n, |_| {
        let x = s.element();
        let a = pick_fresh(s, &alg.support(&x));
        law!(
            alg,
            format!("x={x:?} a={a}"),
            alg.freshmeet(a, &x),
            x.clone()
        )
    });
    r.run("nabla-support", n, |_| {
        let x = s.element();
        let a = s.atom();
        let mut expected = alg.support(&x);
        expected.remove(&a);
        let got = alg.support(&alg.freshmeet(a, &x));
        if got.is_subset(&expected) {
            Ok(())
        } else {
            Err(format!("x={x:?} a={a} supp={got:?}"))
        }
    });
    r.run("nabla-swap", n, |_| {
        let x = s.element();
        let a = s.atom();
        let mut avoid = alg.support(&x);
        avoid.insert(a);
        let b = pick_fresh(s, &avoid);
        let nx = alg.freshmeet(a, &x);
        if alg.leq(&nx, &alg.act(&x, &swap(b, a))) {
            Ok(())
        } else {
            Err(format!("x={x:?} a={a} b={b}"))
        }
    });

    r.run("sigma-meet", n, |_| {
        let (x, y, u) = (s.element(), s.element(), s.termlike());
        let a = s.atom();
        law!(
            alg,
            format!("x={x:?} y={y:?} a={a} u={u:?}"),
            alg.subst(&alg.meet(&x, &y), a, &u),
            alg.meet(&alg.subst(&x, a, &u), &alg.subst(&y, a, &u))
        )
    });
    r.run("sigma-neg", n, |_| {
        let (x, u) = (s.element(), s.termlike());
        let a = s.atom();
        law!(
            alg,
            format!("x={x:?} a={a} u={u:?}"),
            alg.subst(&alg.neg(&x), a, &u),
            alg.neg(&alg.subst(&x, a, &u))
        )
    });
    r.run("sigma-nabla", n, |_| {
        let (y, u) = (s.element(), s.termlike());
        let a = s.atom();
        let mut avoid = terms.support(&u);
        avoid.insert(a);
        let b = pick_fresh(s, &avoid);
        law!(
            alg,
            format!("y={y:?} a={a} b={b} u={u:?}"),
            alg.subst(&alg.freshmeet(b, &y), a, &u),
            alg.freshmeet(b, &alg.subst(&y, a, &u))
        )
    });
    r.run("sigma-eq", n, |_| {
        let (v1, v2, u) = (s.termlike(), s.termlike(), s.termlike());
        let a = s.atom();
        law!(
            alg,
            format!("v'={v1:?} v={v2:?} a={a} u={u:?}"),
            alg.subst(&alg.eq(&v1, &v2), a, &u),
            alg.eq(&terms.subst(&v1, a, &u), &terms.subst(&v2, a, &u))
        )
    });
    r.run("sigma-top", n, |_| {
        let u = s.termlike();
        let a = s.atom();
        law!(
            alg,
            format!("a={a} u={u:?}"),
            alg.subst(&alg.top(), a, &u),
            alg.top()
        )
    });

    r.run("eq-refl", n, |_| {
        let u = s.termlike();
        law!(alg, format!("u={u:?}"), alg.eq(&u, &u), alg.top())
    });
    r.run("eq-subst", n, |_| {
        let (u, v, z) = (s.termlike(), s.termlike(), s.element());
        let a = s.atom();
        let e = alg.eq(&u, &v);
        law!(
            alg,
            format!("u={u:?} v={v:?} z={z:?} a={a}"),
            alg.meet(&e, &alg.subst(&z, a, &u)),
            alg.meet(&e, &alg.subst(&z, a, &v))
        )
    });
    r.run("eq-atoms", n, |_| {
        let a = s.atom();
        let b = s.atom();
        let c = fresh(&[a, b].into_iter().collect());
        law!(
            alg,
            format!("a={a} b={b}"),
            sim_subst(
                alg,
                &alg.eq(&terms.atm(a), &terms.atm(c)),
                &[(c, terms.atm(b))]
            )
            .unwrap(),
            alg.eq(&terms.atm(a), &terms.atm(b))
        )
    });
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpret_error_messages() {
        let e = InterpretError::Missing(Sym::from("P"));
        assert_eq!(e.to_string(), "no interpretation for symbol `P`");
        let e = InterpretError::Arity {
            name: Sym::from("f"),
            expected: 1,
            found: 2,
        };
        assert!(e.to_string().contains("arity 1"));
    }
}

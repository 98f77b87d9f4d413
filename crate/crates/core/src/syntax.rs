//! First-order syntax with equality and named binders.
//!
//! Formulas are built from `⊥`, `=`, predicate application, `∧`, `¬` and
//! `∀`. Disjunction, implication, biconditional and `⊤` are sugar and are
//! expanded at construction time. Binders are atoms; alpha-equivalence is
//! decided by swapping both binders to a common fresh atom.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::nominal::{fresh, swap, Atom, AtomSet, Nominal, Perm};

mod parse;
mod pretty;

pub use parse::{
    parse_formula, parse_formula_inferring, parse_formula_with, parse_sequent_sides,
    parse_signature, parse_term, parse_term_with, AtomNames, ParseError, SigMode,
};
pub use pretty::{pretty_formula, pretty_term};

/// Interned symbol name.
pub type Sym = Arc<str>;

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice")]
    Duplicate(String),
    #[error("unknown symbol `{0}`")]
    Unknown(String),
    #[error("symbol `{name}` expects {expected} arguments, got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
}

/// Function and predicate symbols with arities. Names are unique across
/// both kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    functions: BTreeMap<Sym, usize>,
    predicates: BTreeMap<Sym, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        self.add_function(name, arity).expect("duplicate symbol");
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        self.add_predicate(name, arity).expect("duplicate symbol");
        self
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if self.contains(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        self.functions.insert(sym(name), arity);
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if self.contains(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        self.predicates.insert(sym(name), arity);
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.functions.contains_key(name) || self.predicates.contains_key(name)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn functions(&self) -> impl Iterator<Item = (&Sym, usize)> + '_ {
        self.functions.iter().map(|(k, &v)| (k, v))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&Sym, usize)> + '_ {
        self.predicates.iter().map(|(k, &v)| (k, v))
    }

    pub fn constants(&self) -> impl Iterator<Item = &Sym> + '_ {
        self.functions
            .iter()
            .filter(|(_, &n)| n == 0)
            .map(|(k, _)| k)
    }

    /// Adds every symbol of `other` not already present; fails on a
    /// conflicting arity or kind.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (f, n) in other.functions() {
            match self.function_arity(f) {
                Some(m) if m == n => {}
                Some(m) => {
                    return Err(SignatureError::Arity {
                        name: f.to_string(),
                        expected: m,
                        found: n,
                    })
                }
                None => self.add_function(f, n)?,
            }
        }
        for (p, n) in other.predicates() {
            match self.predicate_arity(p) {
                Some(m) if m == n => {}
                Some(m) => {
                    return Err(SignatureError::Arity {
                        name: p.to_string(),
                        expected: m,
                        found: n,
                    })
                }
                None => self.add_predicate(p, n)?,
            }
        }
        Ok(())
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let n = self
                    .function_arity(f)
                    .ok_or_else(|| SignatureError::Unknown(f.to_string()))?;
                if n != args.len() {
                    return Err(SignatureError::Arity {
                        name: f.to_string(),
                        expected: n,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), SignatureError> {
        match phi {
            Formula::Bot => Ok(()),
            Formula::Eq(l, r) => {
                self.check_term(l)?;
                self.check_term(r)
            }
            Formula::Pred(p, args) => {
                let n = self
                    .predicate_arity(p)
                    .ok_or_else(|| SignatureError::Unknown(p.to_string()))?;
                if n != args.len() {
                    return Err(SignatureError::Arity {
                        name: p.to_string(),
                        expected: n,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::And(l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
            Formula::Neg(x) | Formula::All(_, x) => self.check_formula(x),
        }
    }

    /// The symbols actually used by `phis`, with their arities.
    pub fn of_formulas<'a, I: IntoIterator<Item = &'a Formula>>(phis: I) -> Self {
        let mut sig = Signature::new();
        for phi in phis {
            collect_symbols(phi, &mut sig);
        }
        sig
    }
}

fn collect_term_symbols(t: &Term, sig: &mut Signature) {
    if let Term::App(f, args) = t {
        if !sig.contains(f) {
            sig.functions.insert(f.clone(), args.len());
        }
        args.iter().for_each(|a| collect_term_symbols(a, sig));
    }
}

fn collect_symbols(phi: &Formula, sig: &mut Signature) {
    match phi {
        Formula::Bot => {}
        Formula::Eq(l, r) => {
            collect_term_symbols(l, sig);
            collect_term_symbols(r, sig);
        }
        Formula::Pred(p, args) => {
            if !sig.contains(p) {
                sig.predicates.insert(p.clone(), args.len());
            }
            args.iter().for_each(|a| collect_term_symbols(a, sig));
        }
        Formula::And(l, r) => {
            collect_symbols(l, sig);
            collect_symbols(r, sig);
        }
        Formula::Neg(x) | Formula::All(_, x) => collect_symbols(x, sig),
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Atom),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(a: Atom) -> Self {
        Term::Var(a)
    }

    pub fn app(f: &str, args: Vec<Term>) -> Self {
        Term::App(sym(f), args)
    }

    pub fn constant(c: &str) -> Self {
        Term::App(sym(c), Vec::new())
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut AtomSet) {
        match self {
            Term::Var(a) => {
                out.insert(*a);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_atoms(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn subst(&self, a: Atom, r: &Term) -> Term {
        match self {
            Term::Var(b) if *b == a => r.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|t| t.subst(a, r)).collect())
            }
        }
    }

    /// Every subterm, outermost first, without duplicates.
    pub fn subterms(&self, out: &mut Vec<Term>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        if let Term::App(_, args) = self {
            args.iter().for_each(|t| t.subterms(out));
        }
    }

    fn count_occurrences(&self, r: &Term) -> usize {
        if self == r {
            return 1;
        }
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|t| t.count_occurrences(r)).sum(),
        }
    }

    fn replace_occurrences(
        &self,
        r: &Term,
        with: &Term,
        counter: &mut usize,
        select: &dyn Fn(usize) -> bool,
    ) -> Term {
        if self == r {
            let i = *counter;
            *counter += 1;
            return if select(i) {
                with.clone()
            } else {
                self.clone()
            };
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter()
                    .map(|t| t.replace_occurrences(r, with, counter, select))
                    .collect(),
            ),
        }
    }
}

impl Nominal for Term {
    fn act(&self, pi: &Perm) -> Self {
        match self {
            Term::Var(a) => Term::Var(pi.apply(*a)),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.act(pi)).collect()),
        }
    }

    fn support(&self) -> AtomSet {
        self.atoms()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_term(self, &AtomNames::default()))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Raw formula trees. `==` is structural; use [`alpha_eq`] for the
/// semantic equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Eq(Term, Term),
    Pred(Sym, Vec<Term>),
    And(Arc<Formula>, Arc<Formula>),
    Neg(Arc<Formula>),
    All(Atom, Arc<Formula>),
}

impl Formula {
    pub fn bot() -> Self {
        Formula::Bot
    }

    pub fn top() -> Self {
        Formula::neg(Formula::Bot)
    }

    pub fn eq(l: Term, r: Term) -> Self {
        Formula::Eq(l, r)
    }

    pub fn pred(p: &str, args: Vec<Term>) -> Self {
        Formula::Pred(sym(p), args)
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(x: Formula) -> Self {
        Formula::Neg(Arc::new(x))
    }

    pub fn all(a: Atom, body: Formula) -> Self {
        Formula::All(a, Arc::new(body))
    }

    /// `φ ∨ ψ := ¬(¬φ ∧ ¬ψ)`
    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::neg(Formula::and(Formula::neg(l), Formula::neg(r)))
    }

    /// `φ → ψ := ¬φ ∨ ψ`
    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::or(Formula::neg(l), r)
    }

    /// `φ ↔ ψ := (φ → ψ) ∧ (ψ → φ)`
    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::and(Formula::imp(l.clone(), r.clone()), Formula::imp(r, l))
    }

    /// Right-nested disjunction; the empty disjunction is `⊥`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.pop() {
            None => Formula::Bot,
            Some(mut acc) => {
                while let Some(x) = items.pop() {
                    acc = Formula::or(x, acc);
                }
                acc
            }
        }
    }

    /// Right-nested conjunction; the empty conjunction is `⊤`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.pop() {
            None => Formula::top(),
            Some(mut acc) => {
                while let Some(x) = items.pop() {
                    acc = Formula::and(x, acc);
                }
                acc
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Pred(..) => 1,
            Formula::And(l, r) => 1 + l.size() + r.size(),
            Formula::Neg(x) | Formula::All(_, x) => 1 + x.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Pred(..) => 0,
            Formula::And(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Neg(x) | Formula::All(_, x) => 1 + x.depth(),
        }
    }

    /// All atoms occurring anywhere, bound or free.
    pub fn all_atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_all_atoms(&mut out);
        out
    }

    fn collect_all_atoms(&self, out: &mut AtomSet) {
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                out.extend(l.atoms());
                out.extend(r.atoms());
            }
            Formula::Pred(_, args) => args.iter().for_each(|t| out.extend(t.atoms())),
            Formula::And(l, r) => {
                l.collect_all_atoms(out);
                r.collect_all_atoms(out);
            }
            Formula::Neg(x) => x.collect_all_atoms(out),
            Formula::All(a, x) => {
                out.insert(*a);
                x.collect_all_atoms(out);
            }
        }
    }

    /// Every term occurring in the formula (including under binders),
    /// outermost first.
    pub fn subterms(&self, out: &mut Vec<Term>) {
        match self {
            Formula::Bot => {}
            Formula::Eq(l, r) => {
                l.subterms(out);
                r.subterms(out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|t| t.subterms(out)),
            Formula::And(l, r) => {
                l.subterms(out);
                r.subterms(out);
            }
            Formula::Neg(x) | Formula::All(_, x) => x.subterms(out),
        }
    }

    /// Number of occurrences of `r` that can be abstracted without capture
    /// (occurrences under a binder for one of `r`'s atoms are skipped).
    pub fn count_occurrences(&self, r: &Term) -> usize {
        let ra = r.atoms();
        self.count_occ(r, &ra)
    }

    fn count_occ(&self, r: &Term, ra: &AtomSet) -> usize {
        match self {
            Formula::Bot => 0,
            Formula::Eq(l, s) => l.count_occurrences(r) + s.count_occurrences(r),
            Formula::Pred(_, args) => args.iter().map(|t| t.count_occurrences(r)).sum(),
            Formula::And(l, s) => l.count_occ(r, ra) + s.count_occ(r, ra),
            Formula::Neg(x) => x.count_occ(r, ra),
            Formula::All(b, x) => {
                if ra.contains(b) {
                    0
                } else {
                    x.count_occ(r, ra)
                }
            }
        }
    }

    /// Replaces the selected capture-free occurrences of `r` (numbered
    /// leftmost-outermost from 0) by `with`. `with` must not contain atoms
    /// bound in `self` around those occurrences.
    pub fn replace_occurrences(
        &self,
        r: &Term,
        with: &Term,
        select: &dyn Fn(usize) -> bool,
    ) -> Formula {
        let ra = r.atoms();
        let mut counter = 0;
        self.replace_occ(r, &ra, with, &mut counter, select)
    }

    fn replace_occ(
        &self,
        r: &Term,
        ra: &AtomSet,
        with: &Term,
        counter: &mut usize,
        select: &dyn Fn(usize) -> bool,
    ) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Eq(l, s) => Formula::Eq(
                l.replace_occurrences(r, with, counter, select),
                s.replace_occurrences(r, with, counter, select),
            ),
            Formula::Pred(p, args) => Formula::Pred(
                p.clone(),
                args.iter()
                    .map(|t| t.replace_occurrences(r, with, counter, select))
                    .collect(),
            ),
            Formula::And(l, s) => Formula::and(
                l.replace_occ(r, ra, with, counter, select),
                s.replace_occ(r, ra, with, counter, select),
            ),
            Formula::Neg(x) => Formula::neg(x.replace_occ(r, ra, with, counter, select)),
            Formula::All(b, x) => {
                if ra.contains(b) {
                    self.clone()
                } else {
                    Formula::all(*b, x.replace_occ(r, ra, with, counter, select))
                }
            }
        }
    }

    /// Capture-avoiding abstraction: returns `(c, φ)` with `c` fresh and
    /// `φ[c←r]` alpha-equal to `self`, where the selected occurrences of
    /// `r` have become `c`.
    pub fn abstract_occurrences(
        &self,
        r: &Term,
        select: &dyn Fn(usize) -> bool,
    ) -> (Atom, Formula) {
        let mut avoid = self.all_atoms();
        avoid.extend(r.atoms());
        let c = fresh(&avoid);
        (c, self.replace_occurrences(r, &Term::Var(c), select))
    }
}

impl Nominal for Formula {
    fn act(&self, pi: &Perm) -> Self {
        if pi.is_identity() {
            return self.clone();
        }
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Eq(l, r) => Formula::Eq(l.act(pi), r.act(pi)),
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|t| t.act(pi)).collect())
            }
            Formula::And(l, r) => Formula::and(l.act(pi), r.act(pi)),
            Formula::Neg(x) => Formula::neg(x.act(pi)),
            Formula::All(a, x) => Formula::all(pi.apply(*a), x.act(pi)),
        }
    }

    fn support(&self) -> AtomSet {
        free_atoms(self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_formula(self, &AtomNames::default()))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn free_atoms(phi: &Formula) -> AtomSet {
    let mut out = AtomSet::new();
    collect_free(phi, &mut out);
    out
}

fn collect_free(phi: &Formula, out: &mut AtomSet) {
    match phi {
        Formula::Bot => {}
        Formula::Eq(l, r) => {
            out.extend(l.atoms());
            out.extend(r.atoms());
        }
        Formula::Pred(_, args) => args.iter().for_each(|t| out.extend(t.atoms())),
        Formula::And(l, r) => {
            collect_free(l, out);
            collect_free(r, out);
        }
        Formula::Neg(x) => collect_free(x, out),
        Formula::All(a, x) => {
            let mut inner = AtomSet::new();
            collect_free(x, &mut inner);
            inner.remove(a);
            out.extend(inner);
        }
    }
}

/// Alpha-equivalence: binders are compared by swapping both to a common
/// atom fresh for both bodies.
pub fn alpha_eq(phi: &Formula, psi: &Formula) -> bool {
    match (phi, psi) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Eq(l1, r1), Formula::Eq(l2, r2)) => l1 == l2 && r1 == r2,
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) => p == q && xs == ys,
        (Formula::And(l1, r1), Formula::And(l2, r2)) => alpha_eq(l1, l2) && alpha_eq(r1, r2),
        (Formula::Neg(x), Formula::Neg(y)) => alpha_eq(x, y),
        (Formula::All(a, x), Formula::All(b, y)) => {
            if a == b {
                return alpha_eq(x, y);
            }
            let mut avoid = free_atoms(x);
            avoid.extend(free_atoms(y));
            avoid.insert(*a);
            avoid.insert(*b);
            let c = fresh(&avoid);
            alpha_eq(&x.act(&swap(c, *a)), &y.act(&swap(c, *b)))
        }
        _ => false,
    }
}

/// Capture-avoiding substitution `φ[a←r]`. A binder that would capture an
/// atom of `r` is renamed to the lowest atom fresh for the body, `r` and `a`.
pub fn subst_formula(phi: &Formula, a: Atom, r: &Term) -> Formula {
    if !free_atoms(phi).contains(&a) {
        return phi.clone();
    }
    let ratoms = r.atoms();
    subst_inner(phi, a, r, &ratoms)
}

fn subst_inner(phi: &Formula, a: Atom, r: &Term, ratoms: &AtomSet) -> Formula {
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Eq(l, s) => Formula::Eq(l.subst(a, r), s.subst(a, r)),
        Formula::Pred(p, args) => {
            Formula::Pred(p.clone(), args.iter().map(|t| t.subst(a, r)).collect())
        }
        Formula::And(l, s) => {
            Formula::and(subst_inner(l, a, r, ratoms), subst_inner(s, a, r, ratoms))
        }
        Formula::Neg(x) => Formula::neg(subst_inner(x, a, r, ratoms)),
        Formula::All(b, x) => {
            if *b == a {
                return phi.clone();
            }
            let body_free = free_atoms(x);
            if !body_free.contains(&a) {
                return phi.clone();
            }
            if ratoms.contains(b) {
                let mut avoid = body_free;
                avoid.extend(ratoms.iter().copied());
                avoid.insert(a);
                let b2 = fresh(&avoid);
                let renamed = x.act(&swap(b2, *b));
                Formula::all(b2, subst_inner(&renamed, a, r, ratoms))
            } else {
                Formula::all(*b, subst_inner(x, a, r, ratoms))
            }
        }
    }
}

pub fn subst_term(t: &Term, a: Atom, r: &Term) -> Term {
    t.subst(a, r)
}

/// Canonical representative of the alpha-class: binders are renamed by
/// nesting depth to atoms outside the free atoms. Two formulas are
/// alpha-equivalent iff their canonical forms are structurally equal.
pub fn canonical(phi: &Formula) -> Formula {
    let free = free_atoms(phi);
    let names = crate::nominal::fresh_many(&free, binder_depth(phi));
    let mut env: Vec<(Atom, Atom)> = Vec::new();
    canon(phi, &names, &mut env)
}

fn binder_depth(phi: &Formula) -> usize {
    match phi {
        Formula::Bot | Formula::Eq(..) | Formula::Pred(..) => 0,
        Formula::And(l, r) => binder_depth(l).max(binder_depth(r)),
        Formula::Neg(x) => binder_depth(x),
        Formula::All(_, x) => 1 + binder_depth(x),
    }
}

fn canon_term(t: &Term, env: &[(Atom, Atom)]) -> Term {
    match t {
        Term::Var(a) => Term::Var(
            env.iter()
                .rev()
                .find(|(from, _)| from == a)
                .map(|(_, to)| *to)
                .unwrap_or(*a),
        ),
        Term::App(f, args) => {
            Term::App(f.clone(), args.iter().map(|x| canon_term(x, env)).collect())
        }
    }
}

fn canon(phi: &Formula, names: &[Atom], env: &mut Vec<(Atom, Atom)>) -> Formula {
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Eq(l, r) => Formula::Eq(canon_term(l, env), canon_term(r, env)),
        Formula::Pred(p, args) => {
            Formula::Pred(p.clone(), args.iter().map(|t| canon_term(t, env)).collect())
        }
        Formula::And(l, r) => Formula::and(canon(l, names, env), canon(r, names, env)),
        Formula::Neg(x) => Formula::neg(canon(x, names, env)),
        Formula::All(a, x) => {
            let depth = env.len();
            let name = names[depth];
            env.push((*a, name));
            let body = canon(x, names, env);
            env.pop();
            Formula::all(name, body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::atom_set;

    fn a(i: u32) -> Atom {
        Atom(i)
    }
    fn v(i: u32) -> Term {
        Term::Var(a(i))
    }
    fn p1(x: Term) -> Formula {
        Formula::pred("P", vec![x])
    }
    fn p2(x: Term, y: Term) -> Formula {
        Formula::pred("P", vec![x, y])
    }

    #[test]
    fn free_atom_examples() {
        assert_eq!(
            free_atoms(&Formula::all(a(0), p2(v(0), v(1)))),
            atom_set([a(1)])
        );
        assert_eq!(free_atoms(&Formula::Bot), AtomSet::new());
        let phi = Formula::and(
            Formula::eq(v(0), v(1)),
            Formula::all(a(1), Formula::pred("Q", vec![v(1)])),
        );
        assert_eq!(free_atoms(&phi), atom_set([a(0), a(1)]));
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq(
            &Formula::all(a(0), p1(v(0))),
            &Formula::all(a(1), p1(v(1)))
        ));
        assert!(!alpha_eq(
            &Formula::all(a(0), p2(v(0), v(1))),
            &Formula::all(a(1), p2(v(1), v(1)))
        ));
        let phi = Formula::iff(p1(v(0)), Formula::all(a(2), p2(v(2), v(0))));
        assert!(alpha_eq(&phi, &phi));
    }

    #[test]
    fn subst_freshens_capturing_binder() {
        // (∀b.P(a,b))[a←b] with a=a0, b=a1: binder renamed to a2.
        let phi = Formula::all(a(1), p2(v(0), v(1)));
        let out = subst_formula(&phi, a(0), &v(1));
        assert_eq!(out, Formula::all(a(2), p2(v(1), v(2))));
    }

    #[test]
    fn subst_identity_and_fresh() {
        let phi = Formula::all(a(1), p2(v(0), v(1)));
        assert!(alpha_eq(&subst_formula(&phi, a(0), &v(0)), &phi));
        let q = p1(v(0));
        let fc = Term::app("f", vec![Term::constant("c")]);
        assert_eq!(subst_formula(&q, a(1), &fc), q);
    }

    #[test]
    fn canonical_agrees_with_alpha_eq() {
        let x = Formula::all(
            a(3),
            Formula::and(p2(v(3), v(0)), Formula::all(a(4), p1(v(4)))),
        );
        let y = Formula::all(
            a(7),
            Formula::and(p2(v(7), v(0)), Formula::all(a(3), p1(v(3)))),
        );
        assert!(alpha_eq(&x, &y));
        assert_eq!(canonical(&x), canonical(&y));
    }

    #[test]
    fn occurrences_skip_captured_positions() {
        let fa = Term::app("f", vec![v(0)]);
        let phi = Formula::and(p1(fa.clone()), Formula::all(a(0), p1(fa.clone())));
        assert_eq!(phi.count_occurrences(&fa), 1);
        let (c, body) = phi.abstract_occurrences(&fa, &|_| true);
        assert!(alpha_eq(&subst_formula(&body, c, &fa), &phi));
    }

    #[test]
    fn signature_checks() {
        let sig = Signature::new()
            .with_function("f", 1)
            .with_predicate("P", 2);
        assert!(sig
            .check_formula(&p2(v(0), Term::app("f", vec![v(1)])))
            .is_ok());
        assert!(matches!(
            sig.check_formula(&p1(v(0))),
            Err(SignatureError::Arity { .. })
        ));
        assert!(matches!(
            sig.check_formula(&Formula::pred("Q", vec![])),
            Err(SignatureError::Unknown(_))
        ));
        let mut s2 = Signature::new();
        assert!(s2.add_function("P", 0).is_ok());
        assert!(s2.add_predicate("P", 0).is_err());
    }
}

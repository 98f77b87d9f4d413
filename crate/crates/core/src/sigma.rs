//! Substitution algebras and their duals.
//!
//! A [`SigmaAlgebra`] carries a substitution action `x[a←u]` where `u`
//! ranges over a designated [`TermlikeSigma`]. An [`AmgisAlgebra`] carries
//! the dual action `p[u↞a]`. Subsets of a σ-algebra form an amgis-algebra
//! ([`PowAmgis`]), and suitable subsets of an amgis-algebra form a
//! σ-algebra again ([`PowSigma`]).
//!
//! Subsets of infinite carriers are characteristic functions ([`CharSet`])
//! with a declared support. Set equality is agreement on a probe list.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::gen::{SuiteRng, SyntaxGen};
use crate::nominal::{fresh, fresh_many, swap, Atom, AtomSet, Nominal, Perm};
use crate::syntax::{alpha_eq, free_atoms, subst_formula, Formula, Term};

/// A set with a permutation action and a decidable equality.
pub trait Carrier {
    type Elem: Clone + fmt::Debug + Send + Sync + 'static;

    fn act(&self, x: &Self::Elem, pi: &Perm) -> Self::Elem;
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
}

/// A carrier whose elements have an exact (or, for characteristic sets,
/// declared) finite support.
pub trait NominalCarrier: Carrier {
    fn support(&self, x: &Self::Elem) -> AtomSet;
}

pub trait SigmaAlgebra: NominalCarrier {
    type Terms: TermlikeSigma;

    fn terms(&self) -> &Self::Terms;
    fn subst(&self, x: &Self::Elem, a: Atom, u: &TermOf<Self>) -> Self::Elem;
}

/// A σ-algebra over itself with an equivariant injection of atoms.
pub trait TermlikeSigma: SigmaAlgebra<Terms = Self> {
    fn atm(&self, a: Atom) -> Self::Elem;
}

pub type TermOf<S> = <<S as SigmaAlgebra>::Terms as Carrier>::Elem;
pub type AmgisTermOf<P> = <<P as AmgisAlgebra>::Terms as Carrier>::Elem;

pub trait AmgisAlgebra: Carrier {
    type Terms: TermlikeSigma;

    fn terms(&self) -> &Self::Terms;
    fn amgis(&self, p: &Self::Elem, u: &AmgisTermOf<Self>, a: Atom) -> Self::Elem;

    /// Atoms that must be avoided when picking a witness fresh for `p`.
    /// Elements need not be finitely supported, so this is a declared
    /// over-approximation rather than a computed support.
    fn support_hint(&self, p: &Self::Elem) -> AtomSet;
}

/// Simultaneous substitution `x[a1←u1, ..., an←un]`: the targets are first
/// renamed to atoms fresh for everything involved, then substituted in
/// sequence.
pub fn sim_subst<S: SigmaAlgebra>(
    alg: &S,
    x: &S::Elem,
    pairs: &[(Atom, TermOf<S>)],
) -> Result<S::Elem, SimSubstError> {
    let mut seen = AtomSet::new();
    for (a, _) in pairs {
        if !seen.insert(*a) {
            return Err(SimSubstError::DuplicateAtom(*a));
        }
    }
    if pairs.is_empty() {
        return Ok(x.clone());
    }
    let mut avoid = seen;
    avoid.extend(alg.support(x));
    for (_, u) in pairs {
        avoid.extend(alg.terms().support(u));
    }
    let primes = fresh_many(&avoid, pairs.len());
    let mut out = x.clone();
    for ((a, _), &a2) in pairs.iter().zip(&primes) {
        out = alg.act(&out, &swap(a2, *a));
    }
    for ((_, u), &a2) in pairs.iter().zip(&primes) {
        out = alg.subst(&out, a2, u);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SimSubstError {
    #[error("atom {0} is substituted twice")]
    DuplicateAtom(Atom),
}

// ---------------------------------------------------------------------------
// Syntax instances

/// First-order terms; `atm(a)` is the variable `a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TermAlgebra;

impl Carrier for TermAlgebra {
    type Elem = Term;

    fn act(&self, x: &Term, pi: &Perm) -> Term {
        x.act(pi)
    }

    fn equal(&self, x: &Term, y: &Term) -> bool {
        x == y
    }
}

impl NominalCarrier for TermAlgebra {
    fn support(&self, x: &Term) -> AtomSet {
        x.atoms()
    }
}

impl SigmaAlgebra for TermAlgebra {
    type Terms = TermAlgebra;

    fn terms(&self) -> &TermAlgebra {
        self
    }

    fn subst(&self, x: &Term, a: Atom, u: &Term) -> Term {
        x.subst(a, u)
    }
}

impl TermlikeSigma for TermAlgebra {
    fn atm(&self, a: Atom) -> Term {
        Term::Var(a)
    }
}

/// Formulas up to alpha-equivalence, over [`TermAlgebra`].
#[derive(Clone, Copy, Debug, Default)]
pub struct FormulaAlgebra {
    terms: TermAlgebra,
}

impl Carrier for FormulaAlgebra {
    type Elem = Formula;

    fn act(&self, x: &Formula, pi: &Perm) -> Formula {
        x.act(pi)
    }

    fn equal(&self, x: &Formula, y: &Formula) -> bool {
        alpha_eq(x, y)
    }
}

impl NominalCarrier for FormulaAlgebra {
    fn support(&self, x: &Formula) -> AtomSet {
        free_atoms(x)
    }
}

impl SigmaAlgebra for FormulaAlgebra {
    type Terms = TermAlgebra;

    fn terms(&self) -> &TermAlgebra {
        &self.terms
    }

    fn subst(&self, x: &Formula, a: Atom, u: &Term) -> Formula {
        subst_formula(x, a, u)
    }
}

// ---------------------------------------------------------------------------
// Characteristic sets

/// A subset given by a total membership predicate and a declared support.
pub struct CharSet<E> {
    member: Arc<dyn Fn(&E) -> bool + Send + Sync>,
    declared_support: AtomSet,
    label: Arc<str>,
}

impl<E> Clone for CharSet<E> {
    fn clone(&self) -> Self {
        CharSet {
            member: self.member.clone(),
            declared_support: self.declared_support.clone(),
            label: self.label.clone(),
        }
    }
}

impl<E> fmt::Debug for CharSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} supp {:?}", self.label, self.declared_support)
    }
}

impl<E: 'static> CharSet<E> {
    pub fn new<F>(label: impl Into<String>, declared_support: AtomSet, member: F) -> Self
    where
        F: Fn(&E) -> bool + Send + Sync + 'static,
    {
        let label: String = label.into();
        CharSet {
            member: Arc::new(member),
            declared_support,
            label: Arc::from(label.as_str()),
        }
    }

    pub fn everything() -> Self {
        CharSet::new("everything", AtomSet::new(), |_| true)
    }

    pub fn nothing() -> Self {
        CharSet::new("nothing", AtomSet::new(), |_| false)
    }

    pub fn contains(&self, x: &E) -> bool {
        (self.member)(x)
    }

    pub fn declared_support(&self) -> &AtomSet {
        &self.declared_support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn complement(&self) -> Self {
        let inner = self.member.clone();
        CharSet::new(
            format!("~({})", self.label),
            self.declared_support.clone(),
            move |x| !inner(x),
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        let (l, r) = (self.member.clone(), other.member.clone());
        let mut s = self.declared_support.clone();
        s.extend(other.declared_support.iter().copied());
        CharSet::new(
            format!("({}) | ({})", self.label, other.label),
            s,
            move |x| l(x) || r(x),
        )
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (l, r) = (self.member.clone(), other.member.clone());
        let mut s = self.declared_support.clone();
        s.extend(other.declared_support.iter().copied());
        CharSet::new(
            format!("({}) & ({})", self.label, other.label),
            s,
            move |x| l(x) && r(x),
        )
    }

    /// Agreement on every probe.
    pub fn agrees_on(&self, other: &Self, probes: &[E]) -> bool {
        probes.iter().all(|x| self.contains(x) == other.contains(x))
    }

    pub fn disagreement<'p>(&self, other: &Self, probes: &'p [E]) -> Option<&'p E> {
        probes
            .iter()
            .find(|x| self.contains(x) != other.contains(x))
    }
}

/// Pointwise permutation action on a characteristic set over `base`:
/// `x ∈ π·p` iff `π⁻¹·x ∈ p`.
pub fn charset_act<C: Carrier + Clone + Send + Sync + 'static>(
    base: &C,
    p: &CharSet<C::Elem>,
    pi: &Perm,
) -> CharSet<C::Elem> {
    if pi.is_identity() {
        return p.clone();
    }
    let inv = pi.inverse();
    let base = base.clone();
    let inner = p.member.clone();
    CharSet::new(
        format!("{:?}.({})", pi, p.label),
        pi.act_set(&p.declared_support),
        move |x| inner(&base.act(x, &inv)),
    )
}

/// `p[u↞a] = {x | x[a←u] ∈ p}`.
pub fn powamgis_action<X: SigmaAlgebra + Clone + Send + Sync + 'static>(
    base: &X,
    p: &CharSet<X::Elem>,
    u: &TermOf<X>,
    a: Atom,
) -> CharSet<X::Elem> {
    let mut s = p.declared_support.clone();
    s.extend(base.terms().support(u));
    s.insert(a);
    let inner = p.member.clone();
    let base2 = base.clone();
    let u2 = u.clone();
    CharSet::new(format!("({})[{:?}<-<{}]", p.label, u, a), s, move |x| {
        inner(&base2.subst(x, a, &u2))
    })
}

/// Characteristic subsets of a σ-algebra with the pointwise amgis-action.
#[derive(Clone)]
pub struct PowAmgis<X: SigmaAlgebra> {
    pub base: X,
    pub probes: Arc<Vec<X::Elem>>,
}

impl<X: SigmaAlgebra> PowAmgis<X> {
    pub fn new(base: X, probes: Vec<X::Elem>) -> Self {
        PowAmgis {
            base,
            probes: Arc::new(probes),
        }
    }
}

impl<X: SigmaAlgebra + Clone + Send + Sync + 'static> Carrier for PowAmgis<X> {
    type Elem = CharSet<X::Elem>;

    fn act(&self, p: &Self::Elem, pi: &Perm) -> Self::Elem {
        charset_act(&self.base, p, pi)
    }

    fn equal(&self, p: &Self::Elem, q: &Self::Elem) -> bool {
        p.agrees_on(q, &self.probes)
    }
}

impl<X: SigmaAlgebra + Clone + Send + Sync + 'static> AmgisAlgebra for PowAmgis<X> {
    type Terms = X::Terms;

    fn terms(&self) -> &X::Terms {
        self.base.terms()
    }

    fn amgis(&self, p: &Self::Elem, u: &TermOf<X>, a: Atom) -> Self::Elem {
        powamgis_action(&self.base, p, u, a)
    }

    fn support_hint(&self, p: &Self::Elem) -> AtomSet {
        p.declared_support.clone()
    }
}

/// `X[a←u] = {p | Ԋc. p[u↞c] ∈ (c a)·X}`, with the new-quantifier
/// discharged at one `c` fresh for `X`, `u`, `a` and the declared support
/// of the probed `p`.
pub fn powsigma_action<P: AmgisAlgebra + Clone + Send + Sync + 'static>(
    amgis: &P,
    x: &CharSet<P::Elem>,
    a: Atom,
    u: &AmgisTermOf<P>,
) -> CharSet<P::Elem> {
    let u_supp = amgis.terms().support(u);
    let mut declared: AtomSet = x
        .declared_support
        .iter()
        .copied()
        .filter(|b| *b != a)
        .collect();
    declared.extend(u_supp.iter().copied());
    let mut context = x.declared_support.clone();
    context.extend(u_supp);
    context.insert(a);
    let alg = amgis.clone();
    let inner = x.member.clone();
    let u2 = u.clone();
    CharSet::new(
        format!("({})[{}<-{:?}]", x.label, a, u),
        declared,
        move |p| {
            let mut ctx = context.clone();
            ctx.extend(alg.support_hint(p));
            crate::nominal::new_check(&ctx, |c| {
                let image = alg.amgis(p, &u2, c);
                inner(&alg.act(&image, &swap(c, a)))
            })
        },
    )
}

/// Characteristic subsets of an amgis-algebra with the σ-action of
/// [`powsigma_action`].
#[derive(Clone)]
pub struct PowSigma<P: AmgisAlgebra> {
    pub base: P,
    pub probes: Arc<Vec<P::Elem>>,
}

impl<P: AmgisAlgebra> PowSigma<P> {
    pub fn new(base: P, probes: Vec<P::Elem>) -> Self {
        PowSigma {
            base,
            probes: Arc::new(probes),
        }
    }
}

impl<P: AmgisAlgebra + Clone + Send + Sync + 'static> Carrier for PowSigma<P> {
    type Elem = CharSet<P::Elem>;

    fn act(&self, x: &Self::Elem, pi: &Perm) -> Self::Elem {
        charset_act(&self.base, x, pi)
    }

    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x.agrees_on(y, &self.probes)
    }
}

impl<P: AmgisAlgebra + Clone + Send + Sync + 'static> NominalCarrier for PowSigma<P> {
    fn support(&self, x: &Self::Elem) -> AtomSet {
        x.declared_support.clone()
    }
}

impl<P: AmgisAlgebra + Clone + Send + Sync + 'static> SigmaAlgebra for PowSigma<P> {
    type Terms = P::Terms;

    fn terms(&self) -> &P::Terms {
        self.base.terms()
    }

    fn subst(&self, x: &Self::Elem, a: Atom, u: &AmgisTermOf<P>) -> Self::Elem {
        powsigma_action(&self.base, x, a, u)
    }
}

/// Sampled check of the two admission conditions for σ-powerset elements:
/// for each `u`, at an `a` fresh for `X` and `u`, `p[u↞a] ∈ X ⟺ p ∈ X`;
/// for each `a`, at a `b` fresh for `X` and `a`, `p[b↞a] ∈ X ⟺ (b a)·p ∈ X`.
/// Returns the first violation found.
pub fn validate_powsigma<P: AmgisAlgebra>(
    amgis: &P,
    x: &CharSet<P::Elem>,
    termlikes: &[AmgisTermOf<P>],
    atoms: &[Atom],
    probes: &[P::Elem],
) -> Result<(), String> {
    let terms = amgis.terms();
    for u in termlikes {
        let mut ctx = x.declared_support.clone();
        ctx.extend(terms.support(u));
        for p in probes {
            let mut ctx_p = ctx.clone();
            ctx_p.extend(amgis.support_hint(p));
            let a = fresh(&ctx_p);
            if x.contains(&amgis.amgis(p, u, a)) != x.contains(p) {
                return Err(format!("condition 1 fails at u={u:?}, a={a}, p={p:?}"));
            }
        }
    }
    for &a in atoms {
        let mut ctx = x.declared_support.clone();
        ctx.insert(a);
        for p in probes {
            let mut ctx_p = ctx.clone();
            ctx_p.extend(amgis.support_hint(p));
            let b = fresh(&ctx_p);
            let lhs = x.contains(&amgis.amgis(p, &terms.atm(b), a));
            let rhs = x.contains(&amgis.act(p, &swap(b, a)));
            if lhs != rhs {
                return Err(format!("condition 2 fails at a={a}, b={b}, p={p:?}"));
            }
        }
    }
    Ok(())
}

/// Checks one instance of exactness: if `p[u↞c] = q[u↞c]` at a fresh `c`
/// then `p = q`. Returns `false` only on a violation.
pub fn exactness_check<P: AmgisAlgebra>(
    amgis: &P,
    p: &P::Elem,
    q: &P::Elem,
    u: &AmgisTermOf<P>,
) -> bool {
    let mut ctx = amgis.support_hint(p);
    ctx.extend(amgis.support_hint(q));
    ctx.extend(amgis.terms().support(u));
    let c = fresh(&ctx);
    let hypothesis = amgis.equal(&amgis.amgis(p, u, c), &amgis.amgis(q, u, c));
    !hypothesis || amgis.equal(p, q)
}

/// Membership of `p` in the powerset equality element `(u = v)`: whether
/// `p[u↞c]` and `p[v↞c]` coincide at one fresh `c`.
pub fn eq_element_member<P: AmgisAlgebra>(
    amgis: &P,
    p: &P::Elem,
    u: &AmgisTermOf<P>,
    v: &AmgisTermOf<P>,
) -> bool {
    let mut ctx = amgis.support_hint(p);
    ctx.extend(amgis.terms().support(u));
    ctx.extend(amgis.terms().support(v));
    eq_element_member_at(amgis, p, u, v, fresh(&ctx))
}

pub fn eq_element_member_at<P: AmgisAlgebra>(
    amgis: &P,
    p: &P::Elem,
    u: &AmgisTermOf<P>,
    v: &AmgisTermOf<P>,
    c: Atom,
) -> bool {
    amgis.equal(&amgis.amgis(p, u, c), &amgis.amgis(p, v, c))
}

/// The one-point amgis-algebra with the trivial action.
#[derive(Clone, Copy, Debug, Default)]
pub struct OnePoint<U> {
    pub terms: U,
}

impl<U: Send + Sync> Carrier for OnePoint<U> {
    type Elem = ();

    fn act(&self, _: &(), _: &Perm) {}

    fn equal(&self, _: &(), _: &()) -> bool {
        true
    }
}

impl<U: TermlikeSigma + Send + Sync> AmgisAlgebra for OnePoint<U> {
    type Terms = U;

    fn terms(&self) -> &U {
        &self.terms
    }

    fn amgis(&self, _: &(), _: &TermOf<U>, _: Atom) {}

    fn support_hint(&self, _: &()) -> AtomSet {
        AtomSet::new()
    }
}

// ---------------------------------------------------------------------------
// Suites

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass(usize),
    Fail(String),
    NotExercised,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: String,
    pub outcome: Outcome,
}

/// Per-axiom results, printed one line each:
/// `AXIOM <name> PASS <n>`, `AXIOM <name> FAIL <counterexample>`, or
/// `AXIOM <name> SKIP not-exercised`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub results: Vec<AxiomResult>,
}

impl SuiteReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all_passed(&self) -> bool {
        self.results
            .iter()
            .all(|r| !matches!(r.outcome, Outcome::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Fail(_)))
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.results
            .iter()
            .find(|r| r.name == name)
            .map(|r| &r.outcome)
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.results.extend(other.results);
    }

    /// Runs `n` cases of one law; `case` returns `Err` with a
    /// counterexample on failure.
    pub fn run<F: FnMut(usize) -> Result<(), String>>(
        &mut self,
        name: &str,
        n: usize,
        mut case: F,
    ) {
        let mut outcome = if n == 0 {
            Outcome::NotExercised
        } else {
            Outcome::Pass(n)
        };
        for i in 0..n {
            if let Err(cex) = case(i) {
                outcome = Outcome::Fail(cex);
                break;
            }
        }
        self.results.push(AxiomResult {
            name: name.to_string(),
            outcome,
        });
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.outcome {
                Outcome::Pass(n) => writeln!(f, "AXIOM {} PASS {}", r.name, n)?,
                Outcome::Fail(cex) => {
                    writeln!(f, "AXIOM {} FAIL {}", r.name, cex.replace('\n', " "))?
                }
                Outcome::NotExercised => writeln!(f, "AXIOM {} SKIP not-exercised", r.name)?,
            }
        }
        Ok(())
    }
}

/// Supplies random carrier elements, termlike elements and atoms.
pub trait Sampler<E, U> {
    fn element(&mut self) -> E;
    fn termlike(&mut self) -> U;
    fn atom(&mut self) -> Atom;
}

/// Draws atoms from the sampler until one avoids `avoid`, falling back to
/// the lowest fresh atom.
pub fn pick_fresh<E, U, S: Sampler<E, U> + ?Sized>(sampler: &mut S, avoid: &AtomSet) -> Atom {
    for _ in 0..8 {
        let a = sampler.atom();
        if !avoid.contains(&a) {
            return a;
        }
    }
    fresh(avoid)
}

fn pick_other<E, U, S: Sampler<E, U> + ?Sized>(
    sampler: &mut S,
    avoid: &AtomSet,
    other: Atom,
) -> Atom {
    let mut avoid = avoid.clone();
    avoid.insert(other);
    pick_fresh(sampler, &avoid)
}

fn mismatch<T: fmt::Debug>(what: &str, l: &T, r: &T) -> String {
    format!("{what}: lhs={l:?} rhs={r:?}")
}

/// `σid`, `σ#`, `σα`, `σσ` on `n` random instances each.
pub fn sigma_axiom_suite<S, Sm>(alg: &S, sampler: &mut Sm, n: usize) -> SuiteReport
where
    S: SigmaAlgebra,
    Sm: Sampler<S::Elem, TermOf<S>>,
{
    let terms = alg.terms();
    let mut report = SuiteReport::new();
    report.run("sigma-id", n, |_| {
        let x = sampler.element();
        let a = sampler.atom();
        let lhs = alg.subst(&x, a, &terms.atm(a));
        if alg.equal(&lhs, &x) {
            Ok(())
        } else {
            Err(mismatch(&format!("x={x:?} a={a}"), &lhs, &x))
        }
    });
    report.run("sigma-fresh", n, |_| {
        let x = sampler.element();
        let u = sampler.termlike();
        let a = pick_fresh(sampler, &alg.support(&x));
        let lhs = alg.subst(&x, a, &u);
        if alg.equal(&lhs, &x) {
            Ok(())
        } else {
            Err(mismatch(&format!("x={x:?} a={a} u={u:?}"), &lhs, &x))
        }
    });
    report.run("sigma-alpha", n, |_| {
        let x = sampler.element();
        let u = sampler.termlike();
        let a = sampler.atom();
        let b = pick_other(sampler, &alg.support(&x), a);
        let lhs = alg.subst(&x, a, &u);
        let rhs = alg.subst(&alg.act(&x, &swap(b, a)), b, &u);
        if alg.equal(&lhs, &rhs) {
            Ok(())
        } else {
            Err(mismatch(
                &format!("x={x:?} a={a} b={b} u={u:?}"),
                &lhs,
                &rhs,
            ))
        }
    });
    report.run("sigma-sigma", n, |_| {
        let x = sampler.element();
        let u = sampler.termlike();
        let v = sampler.termlike();
        let a = pick_fresh(sampler, &terms.support(&v));
        let b = pick_other(sampler, &AtomSet::new(), a);
        let lhs = alg.subst(&alg.subst(&x, a, &u), b, &v);
        let rhs = alg.subst(&alg.subst(&x, b, &v), a, &terms.subst(&u, b, &v));
        if alg.equal(&lhs, &rhs) {
            Ok(())
        } else {
            Err(mismatch(
                &format!("x={x:?} a={a} b={b} u={u:?} v={v:?}"),
                &lhs,
                &rhs,
            ))
        }
    });
    report
}

/// [`sigma_axiom_suite`] preceded by `σa`.
pub fn termlike_axiom_suite<S, Sm>(alg: &S, sampler: &mut Sm, n: usize) -> SuiteReport
where
    S: TermlikeSigma,
    Sm: Sampler<S::Elem, S::Elem>,
{
    let mut report = SuiteReport::new();
    report.run("sigma-a", n, |_| {
        let u = sampler.termlike();
        let a = sampler.atom();
        let lhs = alg.subst(&alg.atm(a), a, &u);
        if alg.equal(&lhs, &u) {
            Ok(())
        } else {
            Err(mismatch(&format!("a={a} u={u:?}"), &lhs, &u))
        }
    });
    report.extend(sigma_axiom_suite(alg, sampler, n));
    report
}

/// `amgis-σ`, plus the swap law `p[u↞a][v↞b] = p[v↞b][u↞a]` for `a#v`,
/// `b#u`.
pub fn amgis_axiom_suite<P, Sm>(alg: &P, sampler: &mut Sm, n: usize) -> SuiteReport
where
    P: AmgisAlgebra,
    Sm: Sampler<P::Elem, AmgisTermOf<P>>,
{
    let terms = alg.terms();
    let mut report = SuiteReport::new();
    report.run("amgis-sigma", n, |_| {
        let p = sampler.element();
        let u = sampler.termlike();
        let v = sampler.termlike();
        let a = pick_fresh(sampler, &terms.support(&v));
        let b = pick_other(sampler, &AtomSet::new(), a);
        let lhs = alg.amgis(&alg.amgis(&p, &v, b), &u, a);
        let rhs = alg.amgis(&alg.amgis(&p, &terms.subst(&u, b, &v), a), &v, b);
        if alg.equal(&lhs, &rhs) {
            Ok(())
        } else {
            Err(format!("p={p:?} a={a} b={b} u={u:?} v={v:?}"))
        }
    });
    report.run("amgis-swap", n, |_| {
        let p = sampler.element();
        let u = sampler.termlike();
        let v = sampler.termlike();
        let a = pick_fresh(sampler, &terms.support(&v));
        let b = pick_other(sampler, &terms.support(&u), a);
        let lhs = alg.amgis(&alg.amgis(&p, &u, a), &v, b);
        let rhs = alg.amgis(&alg.amgis(&p, &v, b), &u, a);
        if alg.equal(&lhs, &rhs) {
            Ok(())
        } else {
            Err(format!("p={p:?} a={a} b={b} u={u:?} v={v:?}"))
        }
    });
    report
}

// ---------------------------------------------------------------------------
// Samplers over syntax

/// Random terms (as both elements and termlikes) over a signature.
pub struct TermSampler {
    pub gen: SyntaxGen,
    pub rng: SuiteRng,
}

impl Sampler<Term, Term> for TermSampler {
    fn element(&mut self) -> Term {
        self.gen.term(&mut self.rng)
    }

    fn termlike(&mut self) -> Term {
        self.gen.term(&mut self.rng)
    }

    fn atom(&mut self) -> Atom {
        self.gen.atom(&mut self.rng)
    }
}

/// Random formulas with random terms as termlikes.
pub struct FormulaSampler {
    pub gen: SyntaxGen,
    pub rng: SuiteRng,
    pub depth: usize,
}

impl Sampler<Formula, Term> for FormulaSampler {
    fn element(&mut self) -> Formula {
        self.gen.formula(&mut self.rng, self.depth)
    }

    fn termlike(&mut self) -> Term {
        self.gen.term(&mut self.rng)
    }

    fn atom(&mut self) -> Atom {
        self.gen.atom(&mut self.rng)
    }
}

/// Characteristic sets of terms built from a small zoo of syntactic
/// properties, closed under complement, union and amgis images.
pub struct TermSetSampler {
    pub gen: SyntaxGen,
    pub rng: SuiteRng,
}

impl TermSetSampler {
    pub fn primitive(&mut self) -> CharSet<Term> {
        let rng = &mut self.rng;
        match rng.gen_range(0..5) {
            0 => {
                let a = self.gen.atom(rng);
                CharSet::new(
                    format!("mentions {a}"),
                    AtomSet::from([a]),
                    move |t: &Term| t.atoms().contains(&a),
                )
            }
            1 => {
                let t0 = self.gen.term(rng);
                let label = format!("= {t0:?}");
                CharSet::new(label, t0.atoms(), move |t: &Term| *t == t0)
            }
            2 => {
                let d = rng.gen_range(0..3);
                CharSet::new(format!("depth <= {d}"), AtomSet::new(), move |t: &Term| {
                    t.depth() <= d
                })
            }
            3 => {
                let a = self.gen.atom(rng);
                let b = self.gen.atom(rng);
                CharSet::new(
                    format!("{a} before {b}"),
                    AtomSet::from([a, b]),
                    move |t: &Term| first_of(t, a, b) == Some(a),
                )
            }
            _ => CharSet::new("is atom", AtomSet::new(), |t: &Term| {
                matches!(t, Term::Var(_))
            }),
        }
    }

    pub fn set(&mut self) -> CharSet<Term> {
        let p = self.primitive();
        match self.rng.gen_range(0..5) {
            0 => p.complement(),
            1 => {
                let q = self.primitive();
                p.union(&q)
            }
            2 => {
                let u = self.gen.term(&mut self.rng);
                let a = self.gen.atom(&mut self.rng);
                powamgis_action(&TermAlgebra, &p, &u, a)
            }
            _ => p,
        }
    }
}

fn first_of(t: &Term, a: Atom, b: Atom) -> Option<Atom> {
    match t {
        Term::Var(x) if *x == a || *x == b => Some(*x),
        Term::Var(_) => None,
        Term::App(_, args) => args.iter().find_map(|s| first_of(s, a, b)),
    }
}

impl Sampler<CharSet<Term>, Term> for TermSetSampler {
    fn element(&mut self) -> CharSet<Term> {
        self.set()
    }

    fn termlike(&mut self) -> Term {
        self.gen.term(&mut self.rng)
    }

    fn atom(&mut self) -> Atom {
        self.gen.atom(&mut self.rng)
    }
}

/// All terms of depth at most `depth` over `atoms` and the signature of
/// `gen`, without duplicates.
pub fn enumerate_terms(sig: &crate::syntax::Signature, atoms: &[Atom], depth: usize) -> Vec<Term> {
    let mut layer: Vec<Term> = atoms.iter().map(|&a| Term::Var(a)).collect();
    layer.extend(sig.constants().map(|c| Term::App(c.clone(), vec![])));
    let mut all = layer.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (f, n) in sig.functions().filter(|(_, n)| *n > 0) {
            for args in tuples(&all, n) {
                next.push(Term::App(f.clone(), args));
            }
        }
        for t in next {
            if !all.contains(&t) {
                all.push(t);
            }
        }
    }
    all
}

fn tuples(items: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for it in items {
                let mut v = prefix.clone();
                v.push(it.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{atoms, demo_signature, rng};
    use crate::nominal::atom_set;

    fn a(i: u32) -> Atom {
        Atom(i)
    }
    fn v(i: u32) -> Term {
        Term::Var(a(i))
    }
    fn f(t: Term) -> Term {
        Term::app("f", vec![t])
    }
    fn g(x: Term, y: Term) -> Term {
        Term::app("g", vec![x, y])
    }

    #[test]
    fn sigma_examples_on_terms() {
        let t = TermAlgebra;
        // σa
        assert_eq!(t.subst(&v(0), a(0), &f(v(1))), f(v(1)));
        // σid
        assert_eq!(t.subst(&g(v(0), v(1)), a(0), &v(0)), g(v(0), v(1)));
        // σσ with a#v: g(a,b)[a←f(b)][b←c] = g(a,b)[b←c][a←f(b)[b←c]] = g(f(c), c)
        let c = v(2);
        let x = g(v(0), v(1));
        let lhs = t.subst(&t.subst(&x, a(0), &f(v(1))), a(1), &c);
        let rhs = t.subst(&t.subst(&x, a(1), &c), a(0), &t.subst(&f(v(1)), a(1), &c));
        assert_eq!(lhs, g(f(c.clone()), c.clone()));
        assert_eq!(rhs, lhs);
    }

    #[test]
    fn sim_subst_examples() {
        let t = TermAlgebra;
        assert_eq!(
            sim_subst(&t, &g(v(0), v(1)), &[(a(0), v(1)), (a(1), v(0))]).unwrap(),
            g(v(1), v(0))
        );
        assert_eq!(sim_subst(&t, &g(v(0), v(1)), &[]).unwrap(), g(v(0), v(1)));
        // With targets fresh for all termlikes it is sequential composition.
        let x = g(v(0), f(v(1)));
        let pairs = [(a(0), f(v(5))), (a(1), v(6))];
        let seq = t.subst(&t.subst(&x, a(0), &f(v(5))), a(1), &v(6));
        assert_eq!(sim_subst(&t, &x, &pairs).unwrap(), seq);
        assert_eq!(
            sim_subst(&t, &x, &[(a(0), v(1)), (a(0), v(2))]),
            Err(SimSubstError::DuplicateAtom(a(0)))
        );
    }

    #[test]
    fn sim_subst_is_order_independent() {
        let t = TermAlgebra;
        let gen = SyntaxGen::new(&demo_signature(), atoms(4));
        let mut r = rng(3);
        for _ in 0..300 {
            let x = gen.term(&mut r);
            let (u1, u2) = (gen.term(&mut r), gen.term(&mut r));
            let (a1, a2) = (a(0), a(1 + r.gen_range(0..3)));
            let fwd = sim_subst(&t, &x, &[(a1, u1.clone()), (a2, u2.clone())]).unwrap();
            let bwd = sim_subst(&t, &x, &[(a2, u2), (a1, u1)]).unwrap();
            assert_eq!(fwd, bwd);
        }
    }

    #[test]
    fn powamgis_examples() {
        let t = TermAlgebra;
        let fc = f(v(2));
        let target = fc.clone();
        let p = CharSet::new("= f(c)", fc.atoms(), move |x: &Term| *x == target);
        let img = powamgis_action(&t, &p, &v(2), a(1));
        assert!(img.contains(&f(v(1))));
        assert!(img.contains(&f(v(2))));
        assert!(!img.contains(&f(v(0))));
        assert_eq!(img.declared_support(), &atom_set([a(1), a(2)]));

        let all = powamgis_action(&t, &CharSet::everything(), &v(0), a(1));
        assert!(all.contains(&g(v(0), v(3))));
    }

    #[test]
    fn amgis_image_membership() {
        let probes = enumerate_terms(&demo_signature(), &atoms(4), 1);
        let mut s = TermSetSampler {
            gen: SyntaxGen::new(&demo_signature(), atoms(4)),
            rng: rng(11),
        };
        for _ in 0..200 {
            let p = s.set();
            let u = s.termlike();
            let at = s.atom();
            let img = powamgis_action(&TermAlgebra, &p, &u, at);
            let pi = swap(s.atom(), s.atom());
            let moved = charset_act(&TermAlgebra, &p, &pi);
            for x in &probes {
                assert_eq!(img.contains(x), p.contains(&x.subst(at, &u)));
                assert_eq!(moved.contains(x), p.contains(&x.act(&pi.inverse())));
            }
        }
    }

    #[test]
    fn trivial_amgis_algebra() {
        let one = OnePoint { terms: TermAlgebra };
        let mut s = TermSampler {
            gen: SyntaxGen::new(&demo_signature(), atoms(3)),
            rng: rng(1),
        };
        struct Unit<'a>(&'a mut TermSampler);
        impl Sampler<(), Term> for Unit<'_> {
            fn element(&mut self) {}
            fn termlike(&mut self) -> Term {
                self.0.termlike()
            }
            fn atom(&mut self) -> Atom {
                self.0.atom()
            }
        }
        let report = amgis_axiom_suite(&one, &mut Unit(&mut s), 50);
        assert!(report.all_passed(), "{report}");
        assert!(eq_element_member(&one, &(), &v(0), &v(1)));
    }

    #[test]
    fn eq_element_examples() {
        let probes = enumerate_terms(&demo_signature(), &atoms(4), 1);
        let pow = PowAmgis::new(TermAlgebra, probes);
        let p = CharSet::new("mentions a0", atom_set([a(0)]), |t: &Term| {
            t.atoms().contains(&Atom(0))
        });
        assert!(eq_element_member(&pow, &p, &v(1), &v(1)));
        assert!(!eq_element_member(&pow, &p, &v(0), &v(1)));
    }

    #[test]
    fn exactness_examples() {
        let probes = enumerate_terms(&demo_signature(), &atoms(4), 1);
        let pow = PowAmgis::new(TermAlgebra, probes);
        let p = CharSet::new("= a0", atom_set([a(0)]), |t: &Term| {
            *t == Term::Var(Atom(0))
        });
        let q = CharSet::new("= a1", atom_set([a(1)]), |t: &Term| {
            *t == Term::Var(Atom(1))
        });
        assert!(exactness_check(&pow, &p, &p, &v(0)));
        assert!(exactness_check(&pow, &p, &q, &v(0)));
    }

    #[test]
    fn report_format() {
        let mut r = SuiteReport::new();
        r.run("sigma-a", 3, |_| Ok(()));
        r.run("sigma-id", 2, |i| {
            if i == 1 {
                Err("x=a0".into())
            } else {
                Ok(())
            }
        });
        r.run("sigma-fresh", 0, |_| Ok(()));
        assert_eq!(
            r.to_string(),
            "AXIOM sigma-a PASS 3\nAXIOM sigma-id FAIL x=a0\nAXIOM sigma-fresh SKIP not-exercised\n"
        );
        assert!(!r.all_passed());
    }

    #[test]
    fn syntax_passes_sigma_suites() {
        let gen = SyntaxGen::new(&demo_signature(), atoms(4));
        let mut ts = TermSampler {
            gen: gen.clone(),
            rng: rng(5),
        };
        let r = termlike_axiom_suite(&TermAlgebra, &mut ts, 500);
        assert!(r.all_passed(), "{r}");
        let mut fs = FormulaSampler {
            gen,
            rng: rng(6),
            depth: 4,
        };
        let r = sigma_axiom_suite(&FormulaAlgebra::default(), &mut fs, 500);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn powamgis_passes_amgis_suite() {
        let probes = enumerate_terms(&demo_signature(), &atoms(4), 1);
        let pow = PowAmgis::new(TermAlgebra, probes);
        let mut s = TermSetSampler {
            gen: SyntaxGen::new(&demo_signature(), atoms(4)),
            rng: rng(8),
        };
        let r = amgis_axiom_suite(&pow, &mut s, 200);
        assert!(r.all_passed(), "{r}");
    }
}

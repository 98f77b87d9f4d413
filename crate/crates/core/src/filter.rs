//! Filters and ideals of formulas relative to a bounded prover, the
//! amgis-action on predicate sets, and a bounded sketch of the chain of
//! filter-ideal pairs that leads to a prime filter.
//!
//! Every notion here is an under-approximation: membership means a proof
//! was found within the budget. Reports carry the budget they were run at.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gen::{atoms, rng, SyntaxGen};
use crate::nominal::{fresh_many, swap, Atom, AtomSet, Nominal};
use crate::sequent::{prove, ProverBudget, Sequent};
use crate::syntax::{
    alpha_eq, canonical, free_atoms, subst_formula, AtomNames, Formula, Signature, Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Upset,
    Downset,
    Grown,
    AmgisImage,
    Sketch,
    Listed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Upset => "upset",
            Provenance::Downset => "downset",
            Provenance::Grown => "grown",
            Provenance::AmgisImage => "amgis-image",
            Provenance::Sketch => "sketch",
            Provenance::Listed => "listed",
        })
    }
}

/// Finite generating data. A filter generator is a list read as a
/// conjunction and membership is entailment from it; an ideal generator is
/// a list read as a disjunction and membership is entailment into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Front {
    Filter(Vec<Vec<Formula>>),
    Ideal(Vec<Vec<Formula>>),
}

type Oracle = dyn Fn(&Formula) -> bool + Send + Sync;

/// A set of formulas given by an alpha-invariant membership oracle.
/// Answers are memoised per canonical formula.
#[derive(Clone)]
pub struct PredSet {
    label: String,
    provenance: Provenance,
    front: Option<Front>,
    support_hint: AtomSet,
    oracle: Arc<Oracle>,
    memo: Arc<Mutex<HashMap<Formula, bool>>>,
}

impl fmt::Debug for PredSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PredSet({} [{}])", self.label, self.provenance)
    }
}

impl PredSet {
    /// `support_hint` must contain every atom the oracle is not equivariant in.
    pub fn new(
        label: impl Into<String>,
        provenance: Provenance,
        support_hint: AtomSet,
        oracle: impl Fn(&Formula) -> bool + Send + Sync + 'static,
    ) -> Self {
        PredSet {
            label: label.into(),
            provenance,
            front: None,
            support_hint,
            oracle: Arc::new(oracle),
            memo: Arc::default(),
        }
    }

    fn with_front(mut self, front: Front) -> Self {
        self.front = Some(front);
        self
    }

    /// Exactly the listed formulas, up to alpha.
    pub fn listed(label: impl Into<String>, members: Vec<Formula>) -> Self {
        let support = members.iter().flat_map(free_atoms).collect();
        let members: Vec<Formula> = members.iter().map(canonical).collect();
        PredSet::new(label, Provenance::Listed, support, move |phi| {
            members.contains(phi)
        })
    }

    pub fn everything() -> Self {
        PredSet::new("everything", Provenance::Listed, AtomSet::new(), |_| true)
    }

    pub fn member(&self, phi: &Formula) -> bool {
        let key = canonical(phi);
        if let Some(&m) = self.memo.lock().expect("memo poisoned").get(&key) {
            return m;
        }
        let m = (self.oracle)(&key);
        self.memo.lock().expect("memo poisoned").insert(key, m);
        m
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn front(&self) -> Option<&Front> {
        self.front.as_ref()
    }

    pub fn support_hint(&self) -> &AtomSet {
        &self.support_hint
    }
}

fn atoms_of<'a>(phis: impl IntoIterator<Item = &'a Formula>) -> AtomSet {
    phis.into_iter().flat_map(free_atoms).collect()
}

fn provable(left: &[Formula], right: &[Formula], b: &ProverBudget) -> bool {
    prove(&Sequent::new(left.to_vec(), right.to_vec()), b).is_ok()
}

fn filter_oracle(
    gens: Vec<Vec<Formula>>,
    b: ProverBudget,
) -> impl Fn(&Formula) -> bool + Send + Sync {
    move |xi| {
        gens.iter()
            .any(|g| provable(g, std::slice::from_ref(xi), &b))
    }
}

fn ideal_oracle(
    gens: Vec<Vec<Formula>>,
    b: ProverBudget,
) -> impl Fn(&Formula) -> bool + Send + Sync {
    move |xi| {
        gens.iter()
            .any(|g| provable(std::slice::from_ref(xi), g, &b))
    }
}

/// `{ξ | φ ⊢ ξ}` as far as the prover finds.
pub fn upset(phi: &Formula, b: &ProverBudget) -> PredSet {
    let gens = vec![vec![phi.clone()]];
    PredSet::new(
        format!("{phi}↑"),
        Provenance::Upset,
        free_atoms(phi),
        filter_oracle(gens.clone(), b.clone()),
    )
    .with_front(Front::Filter(gens))
}

/// `{ξ | ξ ⊢ φ}` as far as the prover finds.
pub fn downset(phi: &Formula, b: &ProverBudget) -> PredSet {
    let gens = vec![vec![phi.clone()]];
    PredSet::new(
        format!("{phi}↓"),
        Provenance::Downset,
        free_atoms(phi),
        ideal_oracle(gens.clone(), b.clone()),
    )
    .with_front(Front::Ideal(gens))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FilterError {
    #[error("`{0}` has no filter generators")]
    NotAFilterFront(String),
    #[error("`{0}` has no ideal generators")]
    NotAnIdealFront(String),
    #[error("seed `{0}` is refutable: the prover derives bottom from it")]
    InconsistentSeed(String),
}

/// `p + ψ`: everything entailed by some generator together with `ψ`.
/// Contains `p` and `ψ` by construction.
pub fn grow_filter(p: &PredSet, psi: &Formula, b: &ProverBudget) -> Result<PredSet, FilterError> {
    let Some(Front::Filter(gens)) = p.front() else {
        return Err(FilterError::NotAFilterFront(p.label.clone()));
    };
    let gens: Vec<Vec<Formula>> = gens
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.push(psi.clone());
            g
        })
        .collect();
    let inner = filter_oracle(gens.clone(), b.clone());
    let (base, psi_c) = (p.clone(), canonical(psi));
    let mut support = p.support_hint.clone();
    support.extend(free_atoms(psi));
    Ok(PredSet::new(
        format!("{} + {psi}", p.label),
        Provenance::Grown,
        support,
        move |xi| *xi == psi_c || base.member(xi) || inner(xi),
    )
    .with_front(Front::Filter(gens)))
}

/// `Z + Y`: everything entailing some generator joined with all of `Y`.
/// Right weakening makes the whole of `Y` at least as strong as any subset
/// of it, so no width bound is needed. Contains `Z` and `Y` by construction.
pub fn grow_ideal(z: &PredSet, ys: &[Formula], b: &ProverBudget) -> Result<PredSet, FilterError> {
    let Some(Front::Ideal(gens)) = z.front() else {
        return Err(FilterError::NotAnIdealFront(z.label.clone()));
    };
    let gens: Vec<Vec<Formula>> = gens
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.extend(ys.iter().cloned());
            g
        })
        .collect();
    let inner = ideal_oracle(gens.clone(), b.clone());
    let base = z.clone();
    let listed: Vec<Formula> = ys.iter().map(canonical).collect();
    let mut support = z.support_hint.clone();
    support.extend(atoms_of(ys));
    Ok(PredSet::new(
        format!("{} + {{{}}}", z.label, ys.len()),
        Provenance::Grown,
        support,
        move |xi| listed.contains(xi) || base.member(xi) || inner(xi),
    )
    .with_front(Front::Ideal(gens)))
}

/// `p[u↞a] = {φ | φ[a←u] ∈ p}`.
pub fn points_amgis(p: &PredSet, u: &Term, a: Atom) -> PredSet {
    let base = p.clone();
    let u2 = u.clone();
    let mut support = p.support_hint.clone();
    support.extend(u.atoms());
    support.insert(a);
    PredSet::new(
        format!("{}[{u}↞{a}]", p.label),
        Provenance::AmgisImage,
        support,
        move |phi| base.member(&subst_formula(phi, a, &u2)),
    )
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Which filter condition: 1 consistency, 2 deductive closure,
    /// 3 closure under conjunction, 4 the new-quantifier condition.
    pub condition: u8,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct FilterReport {
    pub universe: usize,
    pub members: usize,
    pub violations: Vec<Violation>,
    pub budget: ProverBudget,
}

impl FilterReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FilterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FILTER universe={} members={} violations={} depth={} nodes={}",
            self.universe,
            self.members,
            self.violations.len(),
            self.budget.max_depth,
            self.budget.max_nodes
        )?;
        for v in &self.violations {
            writeln!(f, "VIOLATION {} {}", v.condition, v.detail)?;
        }
        Ok(())
    }
}

/// Checks the four filter conditions on `universe`, detecting entailments
/// with the prover.
pub fn filter_check(p: &PredSet, universe: &[Formula], b: &ProverBudget) -> FilterReport {
    filter_check_with(p, universe, b, &|phi, xi| {
        provable(std::slice::from_ref(phi), std::slice::from_ref(xi), b)
    })
}

/// As [`filter_check`] with a caller-supplied entailment test for the
/// closure condition. Condition 4 is sampled at three atoms fresh for the
/// set's support hint and the formula.
pub fn filter_check_with(
    p: &PredSet,
    universe: &[Formula],
    b: &ProverBudget,
    entails: &dyn Fn(&Formula, &Formula) -> bool,
) -> FilterReport {
    let mut violations = Vec::new();
    let members: Vec<&Formula> = universe.iter().filter(|f| p.member(f)).collect();
    if p.member(&Formula::Bot) {
        violations.push(Violation {
            condition: 1,
            detail: "bottom is a member".into(),
        });
    }
    for (i, phi) in members.iter().enumerate() {
        for psi in &members[i..] {
            let both = Formula::and((*phi).clone(), (*psi).clone());
            if provable(std::slice::from_ref(&both), &[Formula::Bot], b) {
                violations.push(Violation {
                    condition: 1,
                    detail: format!("`{both}` entails bottom"),
                });
            }
            if !p.member(&both) {
                violations.push(Violation {
                    condition: 3,
                    detail: format!("`{both}` is missing"),
                });
            }
        }
    }
    for phi in &members {
        for xi in universe {
            if !p.member(xi) && entails(phi, xi) {
                violations.push(Violation {
                    condition: 2,
                    detail: format!("`{phi}` entails `{xi}`, which is missing"),
                });
            }
        }
    }
    for (a, body) in quantifier_candidates(universe) {
        let mut avoid = p.support_hint.clone();
        avoid.extend(free_atoms(&body));
        avoid.insert(a);
        let instances_in = fresh_many(&avoid, 3)
            .into_iter()
            .all(|n| p.member(&body.act(&swap(n, a))));
        let all = Formula::all(a, body.clone());
        if instances_in && !p.member(&all) {
            violations.push(Violation {
                condition: 4,
                detail: format!("fresh instances of `{all}` are members but it is not"),
            });
        }
    }
    FilterReport {
        universe: universe.len(),
        members: members.len(),
        violations,
        budget: b.clone(),
    }
}

/// `(a, θ)` for every universal `∀a.θ` in the universe and every free atom
/// `a` of a universe formula `θ`.
fn quantifier_candidates(universe: &[Formula]) -> Vec<(Atom, Formula)> {
    let mut out = Vec::new();
    for phi in universe {
        if let Formula::All(a, body) = phi {
            out.push((*a, (**body).clone()));
        }
        for a in free_atoms(phi) {
            out.push((a, phi.clone()));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForallReport {
    pub forall_member: bool,
    pub checked: usize,
    pub violations: Vec<String>,
}

/// If `∀a.φ ∈ p` then every candidate instance `φ[a←u]` and three fresh
/// atom instances must be members.
pub fn forall_membership_check(
    p: &PredSet,
    a: Atom,
    phi: &Formula,
    candidates: &[Term],
) -> ForallReport {
    let all = Formula::all(a, phi.clone());
    let mut report = ForallReport {
        forall_member: p.member(&all),
        ..ForallReport::default()
    };
    if !report.forall_member {
        return report;
    }
    let mut avoid = p.support_hint.clone();
    avoid.extend(all.all_atoms());
    for u in candidates
        .iter()
        .cloned()
        .chain(fresh_many(&avoid, 3).into_iter().map(Term::Var))
    {
        report.checked += 1;
        let inst = subst_formula(phi, a, &u);
        if !p.member(&inst) {
            report.violations.push(format!("`{inst}` is missing"));
        }
    }
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeReport {
    pub disjunctions: usize,
    pub prime_failures: Vec<(Formula, Formula)>,
    pub dichotomy_failures: Vec<Formula>,
}

impl PrimeReport {
    pub fn prime(&self) -> bool {
        self.prime_failures.is_empty()
    }

    pub fn ultra(&self) -> bool {
        self.dichotomy_failures.is_empty()
    }

    /// Whether the two characterisations give the same verdict on the sample.
    pub fn agree(&self) -> bool {
        self.prime() == self.ultra()
    }
}

/// Primality on sampled disjunctions `φ1 ∨ φ2`, and the dichotomy "exactly
/// one of `φ`, `¬φ`" on their disjuncts.
pub fn prime_check(p: &PredSet, samples: &[(Formula, Formula)]) -> PrimeReport {
    let mut report = PrimeReport::default();
    let mut seen: Vec<Formula> = Vec::new();
    for (l, r) in samples {
        if p.member(&Formula::or(l.clone(), r.clone())) {
            report.disjunctions += 1;
            if !p.member(l) && !p.member(r) {
                report.prime_failures.push((l.clone(), r.clone()));
            }
        }
        for phi in [l, r] {
            if seen.iter().any(|s| alpha_eq(s, phi)) {
                continue;
            }
            seen.push(phi.clone());
            if p.member(phi) == p.member(&Formula::neg(phi.clone())) {
                report.dichotomy_failures.push(phi.clone());
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Point sketch

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Filter,
    Ideal,
    Undecided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Filter => "filter",
            Side::Ideal => "ideal",
            Side::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SketchStep {
    pub atom: Atom,
    pub formula: Formula,
    pub side: Side,
}

/// The first steps of the chain of filter-ideal pairs. Approximate: the
/// bounded prover can miss a clash that the exact construction would see.
#[derive(Clone, Debug)]
pub struct PointSketch {
    pub seed: Formula,
    pub steps: Vec<SketchStep>,
    /// Conjunctive generator of the filter side.
    pub filter_front: Vec<Formula>,
    /// Disjunctive generator of the ideal side.
    pub ideal_front: Vec<Formula>,
    /// Every formula whose membership the run asked about.
    pub queried: Vec<Formula>,
    pub prover_calls: usize,
    pub budget: ProverBudget,
}

impl PointSketch {
    pub fn filter(&self) -> PredSet {
        let gens = vec![self.filter_front.clone()];
        PredSet::new(
            "sketch filter",
            Provenance::Sketch,
            atoms_of(&self.filter_front),
            filter_oracle(gens.clone(), self.budget.clone()),
        )
        .with_front(Front::Filter(gens))
    }

    pub fn ideal(&self) -> PredSet {
        let gens = vec![self.ideal_front.clone()];
        PredSet::new(
            "sketch ideal",
            Provenance::Sketch,
            atoms_of(&self.ideal_front),
            ideal_oracle(gens.clone(), self.budget.clone()),
        )
        .with_front(Front::Ideal(gens))
    }

    /// A queried formula found on both sides, if any.
    pub fn disjointness_violation(&self) -> Option<Formula> {
        let (p, z) = (self.filter(), self.ideal());
        self.queried
            .iter()
            .find(|f| p.member(f) && z.member(f))
            .cloned()
    }

    pub fn transcript(&self) -> String {
        let names = AtomNames::default();
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "STEP {} PAIR ({}, {}) SIDE {}\n",
                i + 1,
                names.name_of(s.atom),
                crate::syntax::pretty_formula(&s.formula, &names),
                s.side
            ));
        }
        out
    }
}

/// Deterministic pairs `(a, φ)` over `sig` for driving a sketch.
pub fn sketch_pairs(sig: &Signature, seed: u64, n: usize) -> Vec<(Atom, Formula)> {
    let mut r = rng(seed);
    let mut gen = SyntaxGen::new(sig, atoms(3));
    gen.term_depth = 1;
    gen.allow_equality = false;
    (0..n)
        .map(|_| {
            let phi = gen.formula(&mut r, 2);
            let fa: Vec<Atom> = free_atoms(&phi).into_iter().collect();
            let a = if !fa.is_empty() && r.gen_bool(0.8) {
                *fa.choose(&mut r).expect("non-empty")
            } else {
                gen.atom(&mut r)
            };
            (a, phi)
        })
        .collect()
}

/// Runs the chain from `(seed↑, ⊥↓)` over `pairs`. At each step the filter
/// takes `∀a.φ` unless the prover finds it clashing with the ideal, in which
/// case the ideal takes `(b a)·φ` for three fresh `b`. A step where the
/// clash search ran out of nodes is marked undecided and ends the run.
pub fn point_sketch(
    seed: &Formula,
    pairs: &[(Atom, Formula)],
    b: &ProverBudget,
) -> Result<PointSketch, FilterError> {
    let mut sketch = PointSketch {
        seed: seed.clone(),
        steps: vec![],
        filter_front: vec![seed.clone()],
        ideal_front: vec![Formula::Bot],
        queried: vec![seed.clone(), Formula::Bot, Formula::top()],
        prover_calls: 1,
        budget: b.clone(),
    };
    if provable(std::slice::from_ref(seed), &[Formula::Bot], b) {
        return Err(FilterError::InconsistentSeed(seed.to_string()));
    }
    for (a, phi) in pairs {
        let psi = Formula::all(*a, phi.clone());
        sketch.queried.push(psi.clone());
        let mut left = sketch.filter_front.clone();
        left.push(psi.clone());
        sketch.prover_calls += 1;
        let side = match prove(&Sequent::new(left, sketch.ideal_front.clone()), b) {
            Ok(_) => Side::Ideal,
            Err(e) if e.stats.exhausted => Side::Undecided,
            Err(_) => Side::Filter,
        };
        match side {
            Side::Filter => sketch.filter_front.push(psi),
            Side::Ideal => {
                let mut avoid = atoms_of(&sketch.filter_front);
                avoid.extend(phi.all_atoms());
                avoid.insert(*a);
                for n in fresh_many(&avoid, 3) {
                    let y = phi.act(&swap(n, *a));
                    sketch.queried.push(y.clone());
                    sketch.ideal_front.push(y);
                }
            }
            Side::Undecided => {}
        }
        sketch.steps.push(SketchStep {
            atom: *a,
            formula: phi.clone(),
            side,
        });
        if side == Side::Undecided {
            break;
        }
    }
    Ok(sketch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::demo_signature;
    use crate::syntax::{parse_formula, parse_term};

    fn f(text: &str) -> Formula {
        parse_formula(text, &demo_signature()).unwrap()
    }

    fn b() -> ProverBudget {
        ProverBudget::with_depth(5)
    }

    #[test]
    fn upset_examples() {
        let p = upset(&f("P(a0)"), &b());
        assert!(p.member(&f("P(a0)")));
        assert!(!p.member(&Formula::Bot));
        let q = upset(&f("P(a0) /\\ Q(a0)"), &b());
        assert!(q.member(&f("P(a0)")));
        assert!(q.member(&f("Q(a0) /\\ P(a0)")));
        let d = downset(&f("P(a0)"), &b());
        assert!(d.member(&Formula::Bot));
        assert!(d.member(&f("P(a0) /\\ Q(a1)")));
    }

    #[test]
    fn membership_is_alpha_invariant() {
        let p = upset(&f("forall a0. P(a0)"), &b());
        assert!(p.member(&f("forall a5. P(a5)")));
    }

    #[test]
    fn filter_check_examples() {
        let p = upset(&f("P(a0)"), &b());
        let universe: Vec<Formula> = [
            "P(a0)",
            "Q(a0)",
            "P(a0) /\\ P(a0)",
            "P(a0) \\/ Q(a1)",
            "~P(a0)",
            "forall a1. P(a1)",
        ]
        .iter()
        .map(|t| f(t))
        .collect();
        assert!(filter_check(&p, &universe, &b()).passed());

        let bad = PredSet::listed("pair", vec![f("P(a0)"), f("~P(a0)")]);
        let r = filter_check(&bad, &[f("P(a0)"), f("~P(a0)")], &b());
        assert!(r.violations.iter().any(|v| v.condition == 1));

        let all = filter_check(&PredSet::everything(), &[f("P(a0)")], &b());
        assert!(all.violations.iter().any(|v| v.condition == 1));
    }

    #[test]
    fn growth_examples() {
        let p = upset(&f("P(a0)"), &b());
        let g = grow_filter(&p, &f("Q(a0)"), &b()).unwrap();
        assert!(g.member(&f("Q(a0)")));
        assert!(g.member(&f("P(a0)")));
        assert!(g.member(&f("P(a0) /\\ Q(a0)")));
        let t = grow_filter(&p, &Formula::top(), &b()).unwrap();
        for x in ["P(a0)", "Q(a0)", "P(a0) \\/ Q(a0)", "~P(a0)"] {
            assert_eq!(t.member(&f(x)), p.member(&f(x)), "{x}");
        }

        let z = downset(&Formula::Bot, &b());
        let z1 = grow_ideal(&z, &[f("Q(a0)")], &b()).unwrap();
        assert!(z1.member(&f("Q(a0)")));
        assert!(z1.member(&f("bottom \\/ Q(a0)")));
        let z0 = grow_ideal(&z, &[], &b()).unwrap();
        assert_eq!(z0.member(&f("P(a0)")), z.member(&f("P(a0)")));
        assert!(grow_filter(&z, &f("P(a0)"), &b()).is_err());
    }

    #[test]
    fn amgis_examples() {
        let sig = demo_signature();
        let c = parse_term("c", &sig).unwrap();
        let p = upset(&f("P(c)"), &b());
        let q = points_amgis(&p, &c, Atom(1));
        assert!(q.member(&f("P(a1)")));
        let r = points_amgis(&p, &c, Atom(7));
        for x in ["P(c)", "Q(a0)", "P(a1)"] {
            assert_eq!(r.member(&f(x)), p.member(&f(x)));
        }
    }

    #[test]
    fn forall_examples() {
        let sig = demo_signature();
        let c = parse_term("c", &sig).unwrap();
        let p = upset(&f("forall a0. P(a0)"), &b());
        let r = forall_membership_check(&p, Atom(0), &f("P(a0)"), std::slice::from_ref(&c));
        assert!(r.forall_member);
        assert!(r.violations.is_empty());
        assert_eq!(r.checked, 4);
        let q = upset(&f("P(c)"), &b());
        let r = forall_membership_check(&q, Atom(0), &f("P(a0)"), &[c]);
        assert!(!r.forall_member && r.violations.is_empty());
    }

    #[test]
    fn prime_examples() {
        let p = upset(&f("P(a0)"), &b());
        let r = prime_check(&p, &[(f("P(a0)"), f("Q(a0)"))]);
        assert!(r.prime());
        assert!(!r.ultra());
        let e = prime_check(&p, &[]);
        assert!(e.prime() && e.ultra() && e.agree());
    }

    #[test]
    fn sketch_examples() {
        let s = point_sketch(&Formula::top(), &[], &b()).unwrap();
        assert!(s.steps.is_empty());
        assert_eq!(s.filter_front, vec![Formula::top()]);
        assert_eq!(s.ideal_front, vec![Formula::Bot]);

        let s = point_sketch(&f("P(c)"), &[(Atom(0), f("P(a0)"))], &b()).unwrap();
        assert_eq!(s.steps.len(), 1);
        assert_eq!(s.disjointness_violation(), None);

        assert!(point_sketch(&Formula::Bot, &[], &b()).is_err());
    }

    #[test]
    fn sketch_clash_grows_ideal() {
        // ∀a.¬P(a) clashes with a seed P(c).
        let s = point_sketch(&f("P(c)"), &[(Atom(0), f("~P(a0)"))], &b()).unwrap();
        assert_eq!(s.steps[0].side, Side::Ideal);
        assert_eq!(s.ideal_front.len(), 4);
        assert_eq!(s.disjointness_violation(), None);
    }
}

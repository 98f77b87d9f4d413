//! Sequents, proofs and their checker, bounded proof search, finite
//! countermodel search, a forward generator of derivable sequents, and the
//! bounded interprovability test.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gen::{atoms, rng, SyntaxGen};
use crate::nominal::{fresh, Atom, AtomSet};
use crate::syntax::{
    alpha_eq, canonical, free_atoms, parse_formula_with, parse_sequent_sides, parse_term_with,
    pretty_formula, pretty_term, subst_formula, AtomNames, Formula, ParseError, SigMode, Signature,
    Term,
};
use crate::tarski::{rows, standard_eval, OrdinaryModel, Valuation};

mod sexpr;

pub use sexpr::{Sexp, SexpError};

/// Finite sets of formulas on each side, stored as canonical
/// alpha-representatives so that membership is alpha-aware.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Sequent {
    left: BTreeSet<Formula>,
    right: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new<L, R>(left: L, right: R) -> Self
    where
        L: IntoIterator<Item = Formula>,
        R: IntoIterator<Item = Formula>,
    {
        Sequent {
            left: left.into_iter().map(|f| canonical(&f)).collect(),
            right: right.into_iter().map(|f| canonical(&f)).collect(),
        }
    }

    pub fn left(&self) -> &BTreeSet<Formula> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<Formula> {
        &self.right
    }

    pub fn in_left(&self, phi: &Formula) -> bool {
        self.left.contains(&canonical(phi))
    }

    pub fn in_right(&self, phi: &Formula) -> bool {
        self.right.contains(&canonical(phi))
    }

    pub fn add_left(&self, phi: &Formula) -> Self {
        let mut s = self.clone();
        s.left.insert(canonical(phi));
        s
    }

    pub fn add_right(&self, phi: &Formula) -> Self {
        let mut s = self.clone();
        s.right.insert(canonical(phi));
        s
    }

    pub fn remove_left(&self, phi: &Formula) -> Self {
        let mut s = self.clone();
        s.left.remove(&canonical(phi));
        s
    }

    pub fn remove_right(&self, phi: &Formula) -> Self {
        let mut s = self.clone();
        s.right.remove(&canonical(phi));
        s
    }

    pub fn free_atoms(&self) -> AtomSet {
        self.left
            .iter()
            .chain(&self.right)
            .flat_map(free_atoms)
            .collect()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.left.iter().chain(&self.right)
    }

    pub fn signature(&self) -> Signature {
        Signature::of_formulas(self.formulas())
    }

    /// Parses `φ1, φ2 |- ψ1`.
    pub fn parse(text: &str, mode: SigMode<'_>, names: &mut AtomNames) -> Result<Self, ParseError> {
        let (l, r) = parse_sequent_sides(text, mode, names)?;
        Ok(Sequent::new(l, r))
    }

    pub fn pretty(&self, names: &AtomNames) -> String {
        let side = |s: &BTreeSet<Formula>| {
            s.iter()
                .map(|f| pretty_formula(f, names))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let (l, r) = (side(&self.left), side(&self.right));
        match (l.is_empty(), r.is_empty()) {
            (true, true) => "|-".to_string(),
            (true, false) => format!("|- {r}"),
            (false, true) => format!("{l} |-"),
            (false, false) => format!("{l} |- {r}"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty(&AtomNames::default()))
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Proofs

/// A rule label with its witnesses. Principal formulas may be given up to
/// alpha-equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Hyp {
        formula: Formula,
    },
    BotL,
    EqR {
        term: Term,
    },
    /// Conclusion contains `left = right` and `context[atom←right]`; the
    /// premise adds `context[atom←left]`.
    EqL {
        left: Term,
        right: Term,
        atom: Atom,
        context: Formula,
    },
    AndL {
        principal: Formula,
    },
    AndR {
        principal: Formula,
    },
    NegL {
        principal: Formula,
    },
    NegR {
        principal: Formula,
    },
    AllL {
        principal: Formula,
        term: Term,
    },
    AllR {
        principal: Formula,
        atom: Atom,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Hyp { .. } => "Hyp",
            Rule::BotL => "BotL",
            Rule::EqR { .. } => "EqR",
            Rule::EqL { .. } => "EqL",
            Rule::AndL { .. } => "AndL",
            Rule::AndR { .. } => "AndR",
            Rule::NegL { .. } => "NegL",
            Rule::NegR { .. } => "NegR",
            Rule::AllL { .. } => "AllL",
            Rule::AllR { .. } => "AllR",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Hyp { .. } | Rule::BotL => 0,
            Rule::AndR { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn leaf(rule: Rule, conclusion: Sequent) -> Self {
        Proof {
            rule,
            conclusion,
            premises: vec![],
        }
    }

    /// Tree height; a leaf has height 0.
    pub fn height(&self) -> usize {
        self.premises
            .iter()
            .map(|p| p.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    /// Every node, parents before children.
    pub fn nodes(&self) -> Vec<&Proof> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let n = out[i];
            out.extend(n.premises.iter());
            i += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("node {path:?} ({rule}): {reason}")]
pub struct ProofError {
    /// Premise indices from the root.
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub reason: String,
}

/// Checks every node of `p` against its rule.
pub fn check_proof(p: &Proof) -> Result<(), ProofError> {
    check_at(p, &mut Vec::new())
}

fn check_at(p: &Proof, path: &mut Vec<usize>) -> Result<(), ProofError> {
    if let Err(reason) = check_node(p) {
        return Err(ProofError {
            path: path.clone(),
            rule: p.rule.name(),
            reason,
        });
    }
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        check_at(q, path)?;
        path.pop();
    }
    Ok(())
}

fn union(a: &BTreeSet<Formula>, extra: &[Formula]) -> BTreeSet<Formula> {
    let mut out = a.clone();
    out.extend(extra.iter().map(canonical));
    out
}

fn minus(a: &BTreeSet<Formula>, phi: &Formula) -> BTreeSet<Formula> {
    let mut out = a.clone();
    out.remove(&canonical(phi));
    out
}

/// `side` is `Γ ∪ {principal}` and `premise` is `Γ ∪ added` for some `Γ`.
fn principal_replaced(
    side: &BTreeSet<Formula>,
    premise: &BTreeSet<Formula>,
    principal: &Formula,
    added: &[Formula],
) -> bool {
    *premise == union(&minus(side, principal), added) || *premise == union(side, added)
}

fn check_node(p: &Proof) -> Result<(), String> {
    let c = &p.conclusion;
    if p.premises.len() != p.rule.arity() {
        return Err(format!(
            "expects {} premises, has {}",
            p.rule.arity(),
            p.premises.len()
        ));
    }
    let prem = |i: usize| &p.premises[i].conclusion;
    let same_right = |s: &Sequent| {
        if s.right == c.right {
            Ok(())
        } else {
            Err("premise changes the right-hand side".to_string())
        }
    };
    let same_left = |s: &Sequent| {
        if s.left == c.left {
            Ok(())
        } else {
            Err("premise changes the left-hand side".to_string())
        }
    };
    let need_left = |phi: &Formula| {
        if c.in_left(phi) {
            Ok(())
        } else {
            Err(format!("`{phi}` is not on the left of the conclusion"))
        }
    };
    let need_right = |phi: &Formula| {
        if c.in_right(phi) {
            Ok(())
        } else {
            Err(format!("`{phi}` is not on the right of the conclusion"))
        }
    };
    match &p.rule {
        Rule::Hyp { formula } => {
            need_left(formula)?;
            need_right(formula)
        }
        Rule::BotL => need_left(&Formula::Bot),
        Rule::EqR { term } => {
            same_right(prem(0))?;
            if prem(0).left == union(&c.left, &[Formula::eq(term.clone(), term.clone())]) {
                Ok(())
            } else {
                Err(format!("premise left must add `{term} = {term}`"))
            }
        }
        Rule::EqL {
            left,
            right,
            atom,
            context,
        } => {
            let eqn = Formula::eq(left.clone(), right.clone());
            need_left(&eqn)?;
            let chi = subst_formula(context, *atom, right);
            need_left(&chi)?;
            same_right(prem(0))?;
            let replaced = subst_formula(context, *atom, left);
            let pl = &prem(0).left;
            if *pl == union(&c.left, std::slice::from_ref(&replaced))
                || *pl == union(&minus(&c.left, &chi), &[eqn, replaced])
            {
                Ok(())
            } else {
                Err("premise left is not the conclusion with the rewritten formula".to_string())
            }
        }
        Rule::AndL { principal } => {
            let Formula::And(a, b) = principal else {
                return Err("principal is not a conjunction".into());
            };
            need_left(principal)?;
            same_right(prem(0))?;
            if principal_replaced(
                &c.left,
                &prem(0).left,
                principal,
                &[(**a).clone(), (**b).clone()],
            ) {
                Ok(())
            } else {
                Err("premise left must hold both conjuncts".into())
            }
        }
        Rule::AndR { principal } => {
            let Formula::And(a, b) = principal else {
                return Err("principal is not a conjunction".into());
            };
            need_right(principal)?;
            same_left(prem(0))?;
            same_left(prem(1))?;
            let ok = [minus(&c.right, principal), c.right.clone()]
                .iter()
                .any(|psi| {
                    prem(0).right == union(psi, &[(**a).clone()])
                        && prem(1).right == union(psi, &[(**b).clone()])
                });
            if ok {
                Ok(())
            } else {
                Err("premises must each hold one conjunct on the right".into())
            }
        }
        Rule::NegL { principal } => {
            let Formula::Neg(x) = principal else {
                return Err("principal is not a negation".into());
            };
            need_left(principal)?;
            if prem(0).right != union(&c.right, &[(**x).clone()]) {
                return Err("premise right must add the negated formula".into());
            }
            if prem(0).left == minus(&c.left, principal) || prem(0).left == c.left {
                Ok(())
            } else {
                Err("premise left must drop or keep the principal only".into())
            }
        }
        Rule::NegR { principal } => {
            let Formula::Neg(x) = principal else {
                return Err("principal is not a negation".into());
            };
            need_right(principal)?;
            if prem(0).left != union(&c.left, &[(**x).clone()]) {
                return Err("premise left must add the negated formula".into());
            }
            if prem(0).right == minus(&c.right, principal) || prem(0).right == c.right {
                Ok(())
            } else {
                Err("premise right must drop or keep the principal only".into())
            }
        }
        Rule::AllL { principal, term } => {
            let Formula::All(a, body) = principal else {
                return Err("principal is not a universal".into());
            };
            need_left(principal)?;
            same_right(prem(0))?;
            let inst = subst_formula(body, *a, term);
            if principal_replaced(&c.left, &prem(0).left, principal, &[inst]) {
                Ok(())
            } else {
                Err(format!("premise left must add the instance at `{term}`"))
            }
        }
        Rule::AllR { principal, atom } => {
            let Formula::All(a, body) = principal else {
                return Err("principal is not a universal".into());
            };
            need_right(principal)?;
            same_left(prem(0))?;
            let inst = subst_formula(body, *a, &Term::Var(*atom));
            if !alpha_eq(&Formula::all(*atom, inst.clone()), principal) {
                return Err(format!("{atom} occurs free in the principal formula"));
            }
            for psi in [minus(&c.right, principal), c.right.clone()] {
                if prem(0).right == union(&psi, std::slice::from_ref(&inst)) {
                    let side: AtomSet = c.left.iter().chain(&psi).flat_map(free_atoms).collect();
                    if side.contains(atom) {
                        return Err(format!("side condition: {atom} is free in the context"));
                    }
                    return Ok(());
                }
            }
            Err("premise right must replace the universal by its instance".into())
        }
    }
}

// ---------------------------------------------------------------------------
// Proof search

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverBudget {
    /// Maximum number of `∀L`, `=L` and `=R` steps on any branch. The
    /// other rules are applied eagerly and are not counted.
    pub max_depth: usize,
    /// Instantiation terms for `∀L` and `=R`; `None` uses the subterms of
    /// the goal, the signature's constants and one fresh atom.
    pub term_universe: Option<Vec<Term>>,
    /// Non-invertible alternatives tried per node.
    pub max_branching: usize,
    /// Total nodes visited before giving up.
    pub max_nodes: usize,
}

impl Default for ProverBudget {
    fn default() -> Self {
        ProverBudget {
            max_depth: 6,
            term_universe: None,
            max_branching: 12,
            max_nodes: 20_000,
        }
    }
}

impl ProverBudget {
    pub fn with_depth(max_depth: usize) -> Self {
        ProverBudget {
            max_depth,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    pub cache_hits: usize,
    pub exhausted: bool,
}

/// No proof within the budget. This is not a refutation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no proof found ({} nodes, {} cache hits{})", .stats.nodes, .stats.cache_hits, if .stats.exhausted { ", node budget exhausted" } else { "" })]
pub struct NotFound {
    pub stats: SearchStats,
}

/// The default instantiation universe for a goal.
pub fn default_universe(s: &Sequent) -> Vec<Term> {
    let mut terms = Vec::new();
    for f in s.formulas() {
        f.subterms(&mut terms);
    }
    for c in s.signature().constants() {
        terms.push(Term::App(c.clone(), vec![]));
    }
    let mut avoid = s.free_atoms();
    for f in s.formulas() {
        avoid.extend(f.all_atoms());
    }
    terms.push(Term::Var(fresh(&avoid)));
    dedup(terms)
}

fn dedup(terms: Vec<Term>) -> Vec<Term> {
    let mut seen = BTreeSet::new();
    terms
        .into_iter()
        .filter(|t| seen.insert(t.clone()))
        .collect()
}

struct Search<'b> {
    budget: &'b ProverBudget,
    base: Vec<Term>,
    failed: HashMap<Sequent, usize>,
    stats: SearchStats,
}

/// Iterative-deepening backward search. A returned proof always passes
/// [`check_proof`].
pub fn prove(s: &Sequent, budget: &ProverBudget) -> Result<Proof, NotFound> {
    let base = budget
        .term_universe
        .clone()
        .unwrap_or_else(|| default_universe(s));
    let mut search = Search {
        budget,
        base,
        failed: HashMap::new(),
        stats: SearchStats::default(),
    };
    for d in 0..=budget.max_depth {
        if let Some(p) = search.node(s, d) {
            debug_assert!(check_proof(&p).is_ok());
            return Ok(p);
        }
        if search.stats.exhausted {
            break;
        }
    }
    Err(NotFound {
        stats: search.stats,
    })
}

impl Search<'_> {
    fn node(&mut self, s: &Sequent, d: usize) -> Option<Proof> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget.max_nodes {
            self.stats.exhausted = true;
            return None;
        }
        if s.left.contains(&Formula::Bot) {
            return Some(Proof::leaf(Rule::BotL, s.clone()));
        }
        if let Some(f) = s.left.intersection(&s.right).next() {
            return Some(Proof::leaf(Rule::Hyp { formula: f.clone() }, s.clone()));
        }
        if self.failed.get(s).is_some_and(|&fd| fd >= d) {
            self.stats.cache_hits += 1;
            return None;
        }
        let found = self.expand(s, d);
        if found.is_none() && !self.stats.exhausted {
            let e = self.failed.entry(s.clone()).or_insert(0);
            *e = (*e).max(d);
        }
        found
    }

    /// Invertible steps are free; `d` bounds the instantiation steps left
    /// on the branch.
    fn expand(&mut self, s: &Sequent, d: usize) -> Option<Proof> {
        if let Some((rule, premises)) = invertible_step(s) {
            let mut proofs = Vec::with_capacity(premises.len());
            for p in &premises {
                proofs.push(self.node(p, d)?);
            }
            return Some(Proof {
                rule,
                conclusion: s.clone(),
                premises: proofs,
            });
        }
        if d == 0 {
            return None;
        }
        let alternatives = self.alternatives(s);
        for (rule, premise) in alternatives.into_iter().take(self.budget.max_branching) {
            if let Some(p) = self.node(&premise, d - 1) {
                return Some(Proof {
                    rule,
                    conclusion: s.clone(),
                    premises: vec![p],
                });
            }
            if self.stats.exhausted {
                return None;
            }
        }
        None
    }

    fn alternatives(&self, s: &Sequent) -> Vec<(Rule, Sequent)> {
        let mut universe = self.base.clone();
        universe.extend(s.free_atoms().into_iter().map(Term::Var));
        let universe = dedup(universe);
        let mut seen = BTreeSet::new();
        let mut per_principal = Vec::new();
        for pi in &s.left {
            if let Formula::All(a, body) = pi {
                let mut alts = Vec::new();
                for r in &universe {
                    let inst = subst_formula(body, *a, r);
                    if !s.in_left(&inst) && seen.insert(inst.clone()) {
                        let rule = Rule::AllL {
                            principal: pi.clone(),
                            term: r.clone(),
                        };
                        alts.push((rule, s.add_left(&inst)));
                    }
                }
                per_principal.push(alts.into_iter());
            }
        }
        // Round-robin over principals.
        let mut out = Vec::new();
        loop {
            let before = out.len();
            out.extend(per_principal.iter_mut().filter_map(Iterator::next));
            if out.len() == before {
                break;
            }
        }
        for eqn in &s.left {
            let Formula::Eq(l, r) = eqn else { continue };
            if l == r {
                continue;
            }
            for chi in &s.left {
                let n = chi.count_occurrences(r);
                for mask in occurrence_masks(n) {
                    let (c, context) = chi.abstract_occurrences(r, &|i| mask & (1 << i) != 0);
                    let rewritten = subst_formula(&context, c, l);
                    if !s.in_left(&rewritten) {
                        out.push((
                            Rule::EqL {
                                left: l.clone(),
                                right: r.clone(),
                                atom: c,
                                context,
                            },
                            s.add_left(&rewritten),
                        ));
                    }
                }
            }
        }
        for r in &universe {
            let refl = Formula::eq(r.clone(), r.clone());
            if !s.in_left(&refl) {
                out.push((Rule::EqR { term: r.clone() }, s.add_left(&refl)));
            }
        }
        out
    }
}

/// Non-empty occurrence subsets as bitmasks: all of them for up to three
/// occurrences, else singletons and the full set.
fn occurrence_masks(n: usize) -> Vec<u32> {
    if n == 0 {
        return vec![];
    }
    if n <= 3 {
        return (1..(1u32 << n)).collect();
    }
    let n = n.min(31);
    let mut out: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    out.push((1u32 << n) - 1);
    out
}

fn invertible_step(s: &Sequent) -> Option<(Rule, Vec<Sequent>)> {
    for pi in &s.left {
        match pi {
            Formula::And(a, b) => {
                return Some((
                    Rule::AndL {
                        principal: pi.clone(),
                    },
                    vec![s.remove_left(pi).add_left(a).add_left(b)],
                ));
            }
            Formula::Neg(x) => {
                return Some((
                    Rule::NegL {
                        principal: pi.clone(),
                    },
                    vec![s.remove_left(pi).add_right(x)],
                ));
            }
            _ => {}
        }
    }
    for pi in &s.right {
        if let Formula::Neg(x) = pi {
            return Some((
                Rule::NegR {
                    principal: pi.clone(),
                },
                vec![s.remove_right(pi).add_left(x)],
            ));
        }
    }
    for pi in &s.right {
        if let Formula::All(a, body) = pi {
            let b = fresh(&s.free_atoms());
            let inst = subst_formula(body, *a, &Term::Var(b));
            return Some((
                Rule::AllR {
                    principal: pi.clone(),
                    atom: b,
                },
                vec![s.remove_right(pi).add_right(&inst)],
            ));
        }
    }
    for pi in &s.right {
        if let Formula::And(a, b) = pi {
            let rest = s.remove_right(pi);
            return Some((
                Rule::AndR {
                    principal: pi.clone(),
                },
                vec![rest.add_right(a), rest.add_right(b)],
            ));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Countermodels

/// Why no countermodel was returned.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NoCountermodel {
    #[error("no countermodel with at most {max_k} elements ({models} models tried)")]
    Exhausted { max_k: u32, models: usize },
    #[error("model budget reached after {models} models")]
    Budget { models: usize },
}

/// Enumerates models by domain size `1..=max_k`, tables in lexicographic
/// order (symbols sorted, functions before predicates), then valuations of
/// the free atoms, returning the first that makes every left formula true
/// and every right formula false.
pub fn find_countermodel(
    s: &Sequent,
    max_k: u32,
    max_models: usize,
) -> Result<(OrdinaryModel, Valuation), NoCountermodel> {
    let sig = s.signature();
    let free: Vec<Atom> = s.free_atoms().into_iter().collect();
    let mut models = 0;
    for k in 1..=max_k {
        let funs: Vec<(crate::syntax::Sym, usize)> =
            sig.functions().map(|(f, n)| (f.clone(), n)).collect();
        let preds: Vec<(crate::syntax::Sym, usize)> =
            sig.predicates().map(|(p, n)| (p.clone(), n)).collect();
        let mut bases = Vec::new();
        for (_, n) in &funs {
            bases.extend(std::iter::repeat_n(k, (k as usize).pow(*n as u32)));
        }
        for (_, n) in &preds {
            bases.extend(std::iter::repeat_n(2, (k as usize).pow(*n as u32)));
        }
        let mut digits = vec![0u32; bases.len()];
        loop {
            if models >= max_models {
                return Err(NoCountermodel::Budget { models });
            }
            models += 1;
            let m = build_model(k, &funs, &preds, &digits);
            for row in rows(k, free.len()) {
                let v = Valuation {
                    overrides: free.iter().copied().zip(row).collect(),
                    default: 0,
                };
                if s.left.iter().all(|f| standard_eval(f, &m, &v))
                    && !s.right.iter().any(|f| standard_eval(f, &m, &v))
                {
                    return Ok((m, v));
                }
            }
            if !odometer(&mut digits, &bases) {
                break;
            }
        }
    }
    Err(NoCountermodel::Exhausted { max_k, models })
}

fn odometer(digits: &mut [u32], bases: &[u32]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < bases[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

fn build_model(
    k: u32,
    funs: &[(crate::syntax::Sym, usize)],
    preds: &[(crate::syntax::Sym, usize)],
    digits: &[u32],
) -> OrdinaryModel {
    let mut m = OrdinaryModel::new(k);
    let mut at = 0;
    for (f, n) in funs {
        let size = (k as usize).pow(*n as u32);
        m.funs
            .insert(f.clone(), (*n, digits[at..at + size].to_vec()));
        at += size;
    }
    for (p, n) in preds {
        let size = (k as usize).pow(*n as u32);
        m.preds.insert(
            p.clone(),
            (*n, digits[at..at + size].iter().map(|&x| x == 1).collect()),
        );
        at += size;
    }
    m
}

// ---------------------------------------------------------------------------
// Interprovability

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerbrandBudget {
    pub prover: ProverBudget,
    pub max_k: u32,
    pub max_models: usize,
}

impl Default for HerbrandBudget {
    fn default() -> Self {
        HerbrandBudget {
            prover: ProverBudget::default(),
            max_k: 2,
            max_models: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Herbrand {
    /// Proofs of both directions.
    Equivalent(Box<(Proof, Proof)>),
    /// A model and valuation where the two formulas differ.
    Distinct(OrdinaryModel, Valuation),
    Unknown,
}

/// Bounded test of interprovability. Panics if both a pair of proofs and a
/// separating model are found, since that would mean an unsound rule.
pub fn herbrand_equiv(phi: &Formula, psi: &Formula, b: &HerbrandBudget) -> Herbrand {
    let there = Sequent::new([phi.clone()], [psi.clone()]);
    let back = Sequent::new([psi.clone()], [phi.clone()]);
    let proofs = prove(&there, &b.prover)
        .ok()
        .zip(prove(&back, &b.prover).ok());
    let separated = find_countermodel(&there, b.max_k, b.max_models)
        .or_else(|_| find_countermodel(&back, b.max_k, b.max_models))
        .ok();
    match (proofs, separated) {
        (Some(_), Some((m, v))) => {
            panic!("unsound: `{phi}` and `{psi}` are interprovable yet differ in\n{m}at {v:?}")
        }
        (Some(pair), None) => Herbrand::Equivalent(Box::new(pair)),
        (None, Some((m, v))) => Herbrand::Distinct(m, v),
        (None, None) => Herbrand::Unknown,
    }
}

// ---------------------------------------------------------------------------
// Forward generation

fn pick<'a, R: Rng>(rng: &mut R, set: &'a BTreeSet<Formula>) -> Option<&'a Formula> {
    let v: Vec<&Formula> = set.iter().collect();
    v.choose(rng).copied()
}

fn random_mask<R: Rng>(rng: &mut R, n: usize) -> u32 {
    if n == 0 {
        return 0;
    }
    let n = n.min(31);
    loop {
        let m = rng.gen_range(1..(1u64 << n)) as u32;
        if m != 0 {
            return m;
        }
    }
}

/// A random `Hyp` or `⊥L` leaf.
pub fn random_leaf<R: Rng>(rng: &mut R, gen: &SyntaxGen) -> Proof {
    let extra = |rng: &mut R| -> Vec<Formula> {
        let n = rng.gen_range(0..=1);
        (0..n).map(|_| gen.formula(rng, 2)).collect()
    };
    let mut left = extra(rng);
    let right = extra(rng);
    if rng.gen_bool(0.3) {
        let t = gen.term(rng);
        let u = if rng.gen_bool(0.5) {
            t.clone()
        } else {
            gen.term(rng)
        };
        left.push(Formula::eq(t, u));
    }
    if rng.gen_bool(0.15) {
        left.push(Formula::Bot);
        return Proof::leaf(Rule::BotL, Sequent::new(left, right));
    }
    let phi = gen.formula(rng, 2);
    left.push(phi.clone());
    let mut right = right;
    right.push(phi.clone());
    Proof::leaf(Rule::Hyp { formula: phi }, Sequent::new(left, right))
}

/// Applies one random rule forward below `p`, or `None` if the chosen rule
/// does not apply.
pub fn forward_step<R: Rng>(rng: &mut R, gen: &SyntaxGen, p: &Proof) -> Option<Proof> {
    let s = &p.conclusion;
    let node = |rule, conclusion, premises| {
        Some(Proof {
            rule,
            conclusion,
            premises,
        })
    };
    match rng.gen_range(0..8) {
        0 => {
            let a = pick(rng, &s.left)?.clone();
            let b = pick(rng, &s.left)?.clone();
            let pi = Formula::and(a.clone(), b.clone());
            let base = if rng.gen_bool(0.5) {
                s.remove_left(&a).remove_left(&b)
            } else {
                s.clone()
            };
            node(
                Rule::AndL {
                    principal: pi.clone(),
                },
                base.add_left(&pi),
                vec![p.clone()],
            )
        }
        1 => {
            let psi1 = pick(rng, &s.right)?.clone();
            let rest = s.remove_right(&psi1);
            let psi2 = if s.left.contains(&Formula::Bot) {
                gen.formula(rng, 1)
            } else {
                pick(rng, &s.left)?.clone()
            };
            let side_seq = rest.add_right(&psi2);
            let side = if s.left.contains(&Formula::Bot) {
                Proof::leaf(Rule::BotL, side_seq)
            } else {
                Proof::leaf(
                    Rule::Hyp {
                        formula: psi2.clone(),
                    },
                    side_seq,
                )
            };
            if rng.gen_bool(0.5) {
                let pi = Formula::and(psi1, psi2);
                node(
                    Rule::AndR {
                        principal: pi.clone(),
                    },
                    rest.add_right(&pi),
                    vec![p.clone(), side],
                )
            } else {
                let pi = Formula::and(psi2, psi1);
                node(
                    Rule::AndR {
                        principal: pi.clone(),
                    },
                    rest.add_right(&pi),
                    vec![side, p.clone()],
                )
            }
        }
        2 => {
            let psi = pick(rng, &s.right)?.clone();
            let pi = Formula::neg(psi.clone());
            node(
                Rule::NegL {
                    principal: pi.clone(),
                },
                s.remove_right(&psi).add_left(&pi),
                vec![p.clone()],
            )
        }
        3 => {
            let phi = pick(rng, &s.left)?.clone();
            let pi = Formula::neg(phi.clone());
            node(
                Rule::NegR {
                    principal: pi.clone(),
                },
                s.remove_left(&phi).add_right(&pi),
                vec![p.clone()],
            )
        }
        4 => {
            let inst = pick(rng, &s.left)?.clone();
            let mut subterms = Vec::new();
            inst.subterms(&mut subterms);
            subterms.push(gen.term(rng));
            let r = subterms.choose(rng)?.clone();
            let n = inst.count_occurrences(&r);
            let mask = random_mask(rng, n);
            let (c, body) = inst.abstract_occurrences(&r, &|i| mask & (1 << i) != 0);
            let pi = Formula::all(c, body);
            let base = if rng.gen_bool(0.5) {
                s.remove_left(&inst)
            } else {
                s.clone()
            };
            node(
                Rule::AllL {
                    principal: pi.clone(),
                    term: r,
                },
                base.add_left(&pi),
                vec![p.clone()],
            )
        }
        5 => {
            let psi = pick(rng, &s.right)?.clone();
            let rest = s.remove_right(&psi);
            let ctx = rest.free_atoms();
            let candidates: Vec<Atom> = free_atoms(&psi)
                .into_iter()
                .filter(|a| !ctx.contains(a))
                .collect();
            let a = match candidates.choose(rng) {
                Some(&a) => a,
                None => {
                    let mut avoid = ctx;
                    avoid.extend(psi.all_atoms());
                    fresh(&avoid)
                }
            };
            let pi = Formula::all(a, psi);
            node(
                Rule::AllR {
                    principal: pi.clone(),
                    atom: a,
                },
                rest.add_right(&pi),
                vec![p.clone()],
            )
        }
        6 => {
            let refl: Vec<&Formula> = s
                .left
                .iter()
                .filter(|f| matches!(f, Formula::Eq(l, r) if l == r))
                .collect();
            let eq = (*refl.choose(rng)?).clone();
            let Formula::Eq(t, _) = &eq else {
                unreachable!()
            };
            node(
                Rule::EqR { term: t.clone() },
                s.remove_left(&eq),
                vec![p.clone()],
            )
        }
        _ => {
            let eqs: Vec<&Formula> = s
                .left
                .iter()
                .filter(|f| matches!(f, Formula::Eq(..)))
                .collect();
            let eqn = (*eqs.choose(rng)?).clone();
            let Formula::Eq(l, r) = &eqn else {
                unreachable!()
            };
            let holders: Vec<&Formula> = s
                .left
                .iter()
                .filter(|f| f.count_occurrences(l) > 0)
                .collect();
            let target = (*holders.choose(rng)?).clone();
            let mask = random_mask(rng, target.count_occurrences(l));
            let (c, context) = target.abstract_occurrences(l, &|i| mask & (1 << i) != 0);
            let chi = subst_formula(&context, c, r);
            let conclusion = s.remove_left(&target).add_left(&eqn).add_left(&chi);
            node(
                Rule::EqL {
                    left: l.clone(),
                    right: r.clone(),
                    atom: c,
                    context,
                },
                conclusion,
                vec![p.clone()],
            )
        }
    }
}

/// `n` derivable sequents with proofs of at most `max_steps` forward rule
/// applications, built from random leaves over `sig`.
pub fn generate_derivable(
    sig: &Signature,
    seed: u64,
    n: usize,
    max_steps: usize,
) -> Vec<(Sequent, Proof)> {
    let mut r = rng(seed);
    let mut gen = SyntaxGen::new(sig, atoms(3));
    gen.term_depth = 1;
    (0..n)
        .map(|_| {
            let mut p = random_leaf(&mut r, &gen);
            let steps = r.gen_range(0..=max_steps);
            let mut applied = 0;
            let mut tries = 0;
            while applied < steps && tries < 4 * steps {
                tries += 1;
                if let Some(q) = forward_step(&mut r, &gen, &p) {
                    p = q;
                    applied += 1;
                }
            }
            (p.conclusion.clone(), p)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Serialisation

fn witness(key: &str, value: String) -> Sexp {
    Sexp::List(vec![Sexp::Sym(key.into()), Sexp::Str(value)])
}

fn to_sexp(p: &Proof, names: &AtomNames) -> Sexp {
    let f = |phi: &Formula| pretty_formula(phi, names);
    let t = |r: &Term| pretty_term(r, names);
    let mut items = vec![
        Sexp::Sym(p.rule.name().into()),
        Sexp::Str(p.conclusion.pretty(names)),
    ];
    match &p.rule {
        Rule::Hyp { formula } => items.push(witness("formula", f(formula))),
        Rule::BotL => {}
        Rule::EqR { term } => items.push(witness("term", t(term))),
        Rule::EqL {
            left,
            right,
            atom,
            context,
        } => {
            items.push(witness(
                "equation",
                f(&Formula::eq(left.clone(), right.clone())),
            ));
            items.push(witness("atom", names.name_of(*atom)));
            items.push(witness("formula", f(context)));
        }
        Rule::AndL { principal }
        | Rule::AndR { principal }
        | Rule::NegL { principal }
        | Rule::NegR { principal } => items.push(witness("principal", f(principal))),
        Rule::AllL { principal, term } => {
            items.push(witness("principal", f(principal)));
            items.push(witness("term", t(term)));
        }
        Rule::AllR { principal, atom } => {
            items.push(witness("principal", f(principal)));
            items.push(witness("atom", names.name_of(*atom)));
        }
    }
    items.extend(p.premises.iter().map(|q| to_sexp(q, names)));
    Sexp::List(items)
}

/// Writes a `(signature (fun NAME N) (pred NAME N) ...)` header followed by
/// the proof tree as `(Rule "sequent" (witness "text")... premises...)`.
pub fn write_proof(p: &Proof, sig: &Signature) -> String {
    let mut header = vec![Sexp::Sym("signature".into())];
    for (f, n) in sig.functions() {
        header.push(Sexp::List(vec![
            Sexp::Sym("fun".into()),
            Sexp::Sym(f.to_string()),
            Sexp::Sym(n.to_string()),
        ]));
    }
    for (q, n) in sig.predicates() {
        header.push(Sexp::List(vec![
            Sexp::Sym("pred".into()),
            Sexp::Sym(q.to_string()),
            Sexp::Sym(n.to_string()),
        ]));
    }
    let mut out = String::new();
    sexpr::write_pretty(&Sexp::List(header), 0, &mut out);
    out.push('\n');
    sexpr::write_pretty(&to_sexp(p, &AtomNames::default()), 0, &mut out);
    out.push('\n');
    out
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofFileError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed proof: {0}")]
    Shape(String),
}

/// Reads a proof written by [`write_proof`]. Symbols are checked against
/// `sig` if given, else against the file's header, else inferred.
pub fn read_proof(
    text: &str,
    sig: Option<&Signature>,
) -> Result<(Proof, Signature), ProofFileError> {
    let forms = sexpr::parse_all(text)?;
    let shape = |m: &str| ProofFileError::Shape(m.to_string());
    let (header, body) = match forms.as_slice() {
        [Sexp::List(h), body] if h.first() == Some(&Sexp::Sym("signature".into())) => {
            (Some(h), body)
        }
        [body] => (None, body),
        _ => {
            return Err(shape(
                "expected an optional signature form and one proof form",
            ))
        }
    };
    let mut signature = match (sig, header) {
        (Some(s), _) => s.clone(),
        (None, Some(h)) => read_signature(&h[1..])?,
        (None, None) => Signature::new(),
    };
    let fixed = sig.is_some() || header.is_some();
    let mut names = AtomNames::new();
    let p = from_sexp(body, &mut signature, fixed, &mut names)?;
    Ok((p, signature))
}

fn read_signature(items: &[Sexp]) -> Result<Signature, ProofFileError> {
    let mut sig = Signature::new();
    for it in items {
        let Sexp::List(parts) = it else {
            return Err(ProofFileError::Shape("signature entries are lists".into()));
        };
        let (kind, name, n) = match parts.as_slice() {
            [Sexp::Sym(k), Sexp::Sym(name), Sexp::Sym(n)] => (k.as_str(), name, n),
            _ => {
                return Err(ProofFileError::Shape(
                    "expected (fun|pred NAME ARITY)".into(),
                ))
            }
        };
        let n: usize = n
            .parse()
            .map_err(|_| ProofFileError::Shape(format!("bad arity `{n}`")))?;
        let r = match kind {
            "fun" => sig.add_function(name, n),
            "pred" => sig.add_predicate(name, n),
            _ => {
                return Err(ProofFileError::Shape(format!(
                    "unknown signature entry `{kind}`"
                )))
            }
        };
        r.map_err(|e| ProofFileError::Shape(e.to_string()))?;
    }
    Ok(sig)
}

fn from_sexp(
    e: &Sexp,
    sig: &mut Signature,
    fixed: bool,
    names: &mut AtomNames,
) -> Result<Proof, ProofFileError> {
    let shape = |m: String| ProofFileError::Shape(m);
    let Sexp::List(items) = e else {
        return Err(shape("a proof node must be a list".into()));
    };
    let (rule_name, seq_text) = match items.as_slice() {
        [Sexp::Sym(r), Sexp::Str(s), ..] => (r.as_str(), s.as_str()),
        _ => {
            return Err(shape(
                "a node starts with a rule name and a sequent string".into(),
            ))
        }
    };
    macro_rules! mode {
        () => {
            if fixed {
                SigMode::Fixed(sig)
            } else {
                SigMode::Infer(sig)
            }
        };
    }
    let conclusion = Sequent::parse(seq_text, mode!(), names)?;
    let mut wit: HashMap<&str, &str> = HashMap::new();
    let mut premises = Vec::new();
    for it in &items[2..] {
        match it {
            Sexp::List(w) if matches!(w.as_slice(), [Sexp::Sym(k), Sexp::Str(_)] if is_witness_key(k)) =>
            {
                let (Sexp::Sym(k), Sexp::Str(v)) = (&w[0], &w[1]) else {
                    unreachable!()
                };
                wit.insert(k.as_str(), v.as_str());
            }
            other => premises.push(other),
        }
    }
    let get = |k: &str| {
        wit.get(k)
            .copied()
            .ok_or_else(|| shape(format!("{rule_name} needs a `{k}` witness")))
    };
    let rule = match rule_name {
        "Hyp" => Rule::Hyp {
            formula: parse_formula_with(get("formula")?, mode!(), names)?,
        },
        "BotL" => Rule::BotL,
        "EqR" => Rule::EqR {
            term: parse_term_with(get("term")?, mode!(), names)?,
        },
        "EqL" => {
            let Formula::Eq(left, right) = parse_formula_with(get("equation")?, mode!(), names)?
            else {
                return Err(shape("EqL equation witness must be an equation".into()));
            };
            let atom = names.atom(get("atom")?);
            let context = parse_formula_with(get("formula")?, mode!(), names)?;
            Rule::EqL {
                left,
                right,
                atom,
                context,
            }
        }
        "AndL" | "AndR" | "NegL" | "NegR" => {
            let principal = parse_formula_with(get("principal")?, mode!(), names)?;
            match rule_name {
                "AndL" => Rule::AndL { principal },
                "AndR" => Rule::AndR { principal },
                "NegL" => Rule::NegL { principal },
                _ => Rule::NegR { principal },
            }
        }
        "AllL" => Rule::AllL {
            principal: parse_formula_with(get("principal")?, mode!(), names)?,
            term: parse_term_with(get("term")?, mode!(), names)?,
        },
        "AllR" => Rule::AllR {
            principal: parse_formula_with(get("principal")?, mode!(), names)?,
            atom: names.atom(get("atom")?),
        },
        other => return Err(shape(format!("unknown rule `{other}`"))),
    };
    let premises = premises
        .into_iter()
        .map(|q| from_sexp(q, sig, fixed, names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Proof {
        rule,
        conclusion,
        premises,
    })
}

fn is_witness_key(k: &str) -> bool {
    matches!(k, "formula" | "term" | "atom" | "principal" | "equation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::demo_signature;
    use crate::syntax::parse_formula;

    fn f(text: &str) -> Formula {
        parse_formula(text, &demo_signature()).unwrap()
    }

    fn seq(l: &[&str], r: &[&str]) -> Sequent {
        let text = format!("{} |- {}", l.join(", "), r.join(", "));
        Sequent::parse(
            &text,
            SigMode::Fixed(&demo_signature()),
            &mut AtomNames::new(),
        )
        .unwrap()
    }

    #[test]
    fn hyp_and_botl() {
        let s = seq(&["P(a)"], &["P(a)"]);
        let p = Proof::leaf(Rule::Hyp { formula: f("P(a)") }, s.clone());
        assert!(check_proof(&p).is_ok());
        let bad = Proof::leaf(Rule::Hyp { formula: f("Q(a)") }, s);
        assert!(check_proof(&bad).is_err());
        let b = Proof::leaf(Rule::BotL, seq(&["bottom"], &["Q(a)"]));
        assert!(check_proof(&b).is_ok());
    }

    #[test]
    fn sequent_sets_are_alpha_aware() {
        let s = seq(&["forall a. P(a)", "forall b. P(b)"], &[]);
        assert_eq!(s.left().len(), 1);
        assert!(s.in_left(&f("forall d. P(d)")));
    }

    #[test]
    fn allr_side_condition() {
        // ⊢ ∀a.(P(a) → P(a)) via a fresh eigenvariable.
        let goal = seq(&[], &["forall a. (P(a) -> P(a))"]);
        let p = prove(&goal, &ProverBudget::with_depth(6)).unwrap();
        assert!(check_proof(&p).is_ok());
        assert_eq!(p.rule.name(), "AllR");

        // Using an atom free in the context is rejected.
        let principal = f("forall a. P(a)");
        let concl = seq(&["Q(a)"], &["forall a. P(a)"]);
        let prem = seq(&["Q(a)"], &["P(a)"]);
        let bad = Proof {
            rule: Rule::AllR {
                principal,
                atom: Atom(0),
            },
            conclusion: concl,
            premises: vec![Proof::leaf(Rule::BotL, prem)],
        };
        let err = check_proof(&bad).unwrap_err();
        assert_eq!(err.path, Vec::<usize>::new());
        assert!(err.reason.contains("side condition"), "{err}");
    }

    #[test]
    fn prover_examples() {
        let lem = seq(&[], &["forall a. (P(a) \\/ ~P(a))"]);
        let p = prove(&lem, &ProverBudget::with_depth(6)).unwrap();
        check_proof(&p).unwrap();

        let refl = seq(&["Q(a)"], &["c = c"]);
        let p = prove(&refl, &ProverBudget::with_depth(2)).unwrap();
        assert_eq!(p.rule.name(), "EqR");
        check_proof(&p).unwrap();

        assert!(prove(&seq(&[], &["P(a)"]), &ProverBudget::default()).is_err());
    }

    #[test]
    fn symmetry_of_equality() {
        let s = seq(&["a = b"], &["b = a"]);
        let p = prove(&s, &ProverBudget::with_depth(3)).unwrap();
        check_proof(&p).unwrap();
        let s = seq(&["a = b", "P(a)"], &["P(b)"]);
        let p = prove(&s, &ProverBudget::with_depth(4)).unwrap();
        check_proof(&p).unwrap();
    }

    #[test]
    fn countermodel_examples() {
        let (m, v) = find_countermodel(&seq(&[], &["P(a)"]), 1, 100).unwrap();
        assert_eq!(m.k, 1);
        assert!(!standard_eval(&f("P(a)"), &m, &v));

        let (m, _) = find_countermodel(&seq(&["P(a)"], &["forall a. P(a)"]), 2, 100).unwrap();
        assert_eq!(m.k, 2);
        assert_eq!(m.preds["P"].1, vec![false, true]);

        assert!(matches!(
            find_countermodel(&seq(&["P(a)"], &["P(a)"]), 3, 10_000),
            Err(NoCountermodel::Exhausted { .. })
        ));
    }

    #[test]
    fn herbrand_examples() {
        let b = HerbrandBudget::default();
        assert!(matches!(
            herbrand_equiv(&f("forall a. R(a, b)"), &f("forall d. R(d, b)"), &b),
            Herbrand::Equivalent(_)
        ));
        assert!(matches!(
            herbrand_equiv(&f("P(a0) /\\ Q(a1)"), &f("Q(a1) /\\ P(a0)"), &b),
            Herbrand::Equivalent(_)
        ));
        assert!(matches!(
            herbrand_equiv(&f("P(a)"), &f("Q(a)"), &b),
            Herbrand::Distinct(..)
        ));
    }

    #[test]
    fn generated_sequents_check() {
        for (s, p) in generate_derivable(&demo_signature(), 1, 200, 8) {
            assert_eq!(s, p.conclusion);
            check_proof(&p)
                .unwrap_or_else(|e| panic!("{e}\n{}", write_proof(&p, &demo_signature())));
        }
    }

    #[test]
    fn zero_steps_give_leaves() {
        for (_, p) in generate_derivable(&demo_signature(), 2, 30, 0) {
            assert!(matches!(p.rule, Rule::Hyp { .. } | Rule::BotL));
        }
    }

    #[test]
    fn proof_file_round_trip() {
        let sig = demo_signature();
        for (_, p) in generate_derivable(&sig, 3, 40, 6) {
            let text = write_proof(&p, &sig);
            let (q, _) = read_proof(&text, None).unwrap();
            check_proof(&q).unwrap();
            assert_eq!(q.conclusion, p.conclusion);
            assert_eq!(q.size(), p.size());
        }
    }

    #[test]
    fn display_sequent() {
        assert_eq!(
            seq(&["P(a0)", "Q(a1)"], &["R(a0, a1)"]).to_string(),
            "P(a0), Q(a1) |- R(a0, a1)"
        );
        assert_eq!(Sequent::default().to_string(), "|-");
    }
}

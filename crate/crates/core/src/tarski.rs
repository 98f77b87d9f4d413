//! Finite ordinary models and the lifted algebra of finite-dependency
//! tables.
//!
//! Domain elements are `0..k`. A [`TableFun`] is a function from
//! valuations to values that reads only the atoms in its `deps`; its table
//! is indexed row-major with the first dependency most significant.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::foleq::{FoleqAlgebra, Interpretation};
use crate::nominal::{Atom, AtomSet, Perm};
use crate::sigma::{Carrier, NominalCarrier, Sampler, SigmaAlgebra, TermlikeSigma};
use crate::syntax::{free_atoms, Formula, Signature, Sym, Term};

/// Widest dependency list callers should ask for; tables have `k^n` rows.
pub const DEFAULT_WIDTH_LIMIT: usize = 6;

const HARD_WIDTH_LIMIT: usize = 12;

/// A valuation that is `default` everywhere except at finitely many atoms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    pub overrides: BTreeMap<Atom, u32>,
    pub default: u32,
}

impl Valuation {
    pub fn constant(default: u32) -> Self {
        Valuation {
            overrides: BTreeMap::new(),
            default,
        }
    }

    pub fn lookup(&self, a: Atom) -> u32 {
        self.overrides.get(&a).copied().unwrap_or(self.default)
    }

    pub fn with(&self, a: Atom, x: u32) -> Self {
        let mut v = self.clone();
        v.overrides.insert(a, x);
        v
    }

    /// Renames override keys.
    pub fn act(&self, pi: &Perm) -> Self {
        Valuation {
            overrides: self
                .overrides
                .iter()
                .map(|(a, x)| (pi.apply(*a), *x))
                .collect(),
            default: self.default,
        }
    }

    /// Every valuation over `atoms` in `0..k`, each with every default.
    pub fn enumerate(k: u32, atoms: &AtomSet) -> Vec<Valuation> {
        let atoms: Vec<Atom> = atoms.iter().copied().collect();
        let mut out = Vec::new();
        for default in 0..k {
            for row in rows(k, atoms.len()) {
                out.push(Valuation {
                    overrides: atoms.iter().copied().zip(row).collect(),
                    default,
                });
            }
        }
        out
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (a, x) in &self.overrides {
            write!(f, "{a}:{x}, ")?;
        }
        write!(f, "_:{}}}", self.default)
    }
}

/// All rows of `0..k` of length `n`, lexicographically.
pub fn rows(k: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (k as usize).pow(n as u32);
    (0..total).map(move |mut i| {
        let mut row = vec![0; n];
        for slot in row.iter_mut().rev() {
            *slot = (i % k as usize) as u32;
            i /= k as usize;
        }
        row
    })
}

fn row_index(k: u32, row: impl IntoIterator<Item = u32>) -> usize {
    row.into_iter()
        .fold(0, |acc, x| acc * k as usize + x as usize)
}

/// Value type of a table: domain elements or truth values.
pub trait TableValue:
    Copy + Eq + Ord + std::hash::Hash + fmt::Debug + Send + Sync + 'static
{
}
impl TableValue for u32 {}
impl TableValue for bool {}

/// A finite-dependency function from valuations to `Y`, in canonical form:
/// every atom in `deps` is read.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableFun<Y> {
    k: u32,
    deps: Vec<Atom>,
    table: Arc<[Y]>,
}

impl<Y: fmt::Debug> fmt::Debug for TableFun<Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.deps, &self.table[..])
    }
}

impl<Y: TableValue> TableFun<Y> {
    pub fn constant(k: u32, y: Y) -> Self {
        TableFun {
            k,
            deps: vec![],
            table: Arc::from(vec![y]),
        }
    }

    /// Tabulates `eval` over all rows of `deps` (sorted and deduplicated
    /// first) and canonicalises. `eval` receives the value of each atom;
    /// atoms outside `deps` read as 0.
    pub fn tabulate<F>(k: u32, deps: impl IntoIterator<Item = Atom>, eval: F) -> Self
    where
        F: Fn(&dyn Fn(Atom) -> u32) -> Y,
    {
        let deps: Vec<Atom> = deps.into_iter().collect::<AtomSet>().into_iter().collect();
        assert!(
            deps.len() <= HARD_WIDTH_LIMIT,
            "table over {} atoms exceeds the width limit",
            deps.len()
        );
        let table: Vec<Y> = rows(k, deps.len())
            .map(|row| {
                let lookup = |a: Atom| deps.binary_search(&a).map(|i| row[i]).unwrap_or(0);
                eval(&lookup)
            })
            .collect();
        TableFun::from_raw(k, deps, table).canonicalise()
    }

    /// A table as given; `deps` must be sorted and distinct and the table
    /// of length `k^deps`.
    pub fn from_raw(k: u32, deps: Vec<Atom>, table: Vec<Y>) -> Self {
        assert!(
            deps.windows(2).all(|w| w[0] < w[1]),
            "deps must be sorted and distinct"
        );
        assert_eq!(
            table.len(),
            (k as usize).pow(deps.len() as u32),
            "table size"
        );
        TableFun {
            k,
            deps,
            table: Arc::from(table),
        }
    }

    pub fn domain_size(&self) -> u32 {
        self.k
    }

    pub fn deps(&self) -> &[Atom] {
        &self.deps
    }

    pub fn table(&self) -> &[Y] {
        &self.table
    }

    pub fn support(&self) -> AtomSet {
        self.deps.iter().copied().collect()
    }

    pub fn value_with(&self, lookup: &dyn Fn(Atom) -> u32) -> Y {
        self.table[row_index(self.k, self.deps.iter().map(|&a| lookup(a)))]
    }

    pub fn apply(&self, v: &Valuation) -> Y {
        self.value_with(&|a| v.lookup(a))
    }

    fn reads(&self, i: usize) -> bool {
        let k = self.k as usize;
        let stride = k.pow((self.deps.len() - 1 - i) as u32);
        (0..self.table.len()).any(|r| {
            let digit = (r / stride) % k;
            digit + 1 < k && self.table[r] != self.table[r + stride]
        })
    }

    /// Drops every dependency the table does not actually read.
    pub fn canonicalise(self) -> Self {
        let Some(i) = (0..self.deps.len()).find(|&i| !self.reads(i)) else {
            return self;
        };
        let k = self.k as usize;
        let stride = k.pow((self.deps.len() - 1 - i) as u32);
        let table: Vec<Y> = (0..self.table.len())
            .filter(|r| (r / stride).is_multiple_of(k))
            .map(|r| self.table[r])
            .collect();
        let mut deps = self.deps;
        deps.remove(i);
        TableFun::from_raw(self.k, deps, table).canonicalise()
    }

    pub fn map<Z: TableValue>(&self, f: impl Fn(Y) -> Z) -> TableFun<Z> {
        TableFun::from_raw(
            self.k,
            self.deps.clone(),
            self.table.iter().map(|&y| f(y)).collect(),
        )
        .canonicalise()
    }

    pub fn zip<Z: TableValue, W: TableValue>(
        &self,
        other: &TableFun<Z>,
        f: impl Fn(Y, Z) -> W,
    ) -> TableFun<W> {
        let deps = self.deps.iter().chain(&other.deps).copied();
        TableFun::tabulate(self.k, deps, |l| f(self.value_with(l), other.value_with(l)))
    }

    /// `(f[a←u])(ς) = f(ς[a↦u(ς)])`.
    pub fn subst(&self, a: Atom, u: &TableFun<u32>) -> Self {
        if !self.deps.contains(&a) {
            return self.clone();
        }
        let deps = self
            .deps
            .iter()
            .copied()
            .filter(|&d| d != a)
            .chain(u.deps.iter().copied());
        TableFun::tabulate(self.k, deps, |l| {
            let ua = u.value_with(l);
            self.value_with(&|d| if d == a { ua } else { l(d) })
        })
    }

    /// `(π·f)(ς) = f(π⁻¹·ς)`, so `π·f` reads `π(d)` wherever `f` reads `d`.
    pub fn act(&self, pi: &Perm) -> Self {
        if self.deps.iter().all(|&d| pi.apply(d) == d) {
            return self.clone();
        }
        let deps = self.deps.iter().map(|&d| pi.apply(d));
        TableFun::tabulate(self.k, deps, |l| self.value_with(&|d| l(pi.apply(d))))
    }
}

impl TableFun<u32> {
    /// The projection `ς ↦ ς(a)`.
    pub fn atm(k: u32, a: Atom) -> Self {
        TableFun::tabulate(k, [a], |l| l(a))
    }
}

impl TableFun<bool> {
    /// `ς ↦ ⋀ₓ f(ς[a↦x])` over the domain.
    pub fn freshmeet(&self, a: Atom) -> Self {
        if !self.deps.contains(&a) {
            return self.clone();
        }
        let deps = self.deps.iter().copied().filter(|&d| d != a);
        TableFun::tabulate(self.k, deps, |l| {
            (0..self.k).all(|x| self.value_with(&|d| if d == a { x } else { l(d) }))
        })
    }
}

/// Pointwise equality of two domain-valued tables.
pub fn tf_eq(u: &TableFun<u32>, v: &TableFun<u32>) -> TableFun<bool> {
    u.zip(v, |x, y| x == y)
}

/// Domain-valued tables over a domain of size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TarskiTerms {
    pub k: u32,
}

impl Carrier for TarskiTerms {
    type Elem = TableFun<u32>;

    fn act(&self, x: &TableFun<u32>, pi: &Perm) -> TableFun<u32> {
        x.act(pi)
    }

    fn equal(&self, x: &TableFun<u32>, y: &TableFun<u32>) -> bool {
        x == y
    }
}

impl NominalCarrier for TarskiTerms {
    fn support(&self, x: &TableFun<u32>) -> AtomSet {
        x.support()
    }
}

impl SigmaAlgebra for TarskiTerms {
    type Terms = TarskiTerms;

    fn terms(&self) -> &TarskiTerms {
        self
    }

    fn subst(&self, x: &TableFun<u32>, a: Atom, u: &TableFun<u32>) -> TableFun<u32> {
        x.subst(a, u)
    }
}

impl TermlikeSigma for TarskiTerms {
    fn atm(&self, a: Atom) -> TableFun<u32> {
        TableFun::atm(self.k, a)
    }
}

/// Truth-valued tables: the lifted FOLeq algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TarskiTruth {
    pub terms: TarskiTerms,
}

impl TarskiTruth {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "domain must be non-empty");
        TarskiTruth {
            terms: TarskiTerms { k },
        }
    }

    pub fn k(&self) -> u32 {
        self.terms.k
    }

    pub fn constants(&self) -> Vec<TableFun<u32>> {
        (0..self.k())
            .map(|x| TableFun::constant(self.k(), x))
            .collect()
    }
}

impl Carrier for TarskiTruth {
    type Elem = TableFun<bool>;

    fn act(&self, x: &TableFun<bool>, pi: &Perm) -> TableFun<bool> {
        x.act(pi)
    }

    fn equal(&self, x: &TableFun<bool>, y: &TableFun<bool>) -> bool {
        x == y
    }
}

impl NominalCarrier for TarskiTruth {
    fn support(&self, x: &TableFun<bool>) -> AtomSet {
        x.support()
    }
}

impl SigmaAlgebra for TarskiTruth {
    type Terms = TarskiTerms;

    fn terms(&self) -> &TarskiTerms {
        &self.terms
    }

    fn subst(&self, x: &TableFun<bool>, a: Atom, u: &TableFun<u32>) -> TableFun<bool> {
        x.subst(a, u)
    }
}

impl FoleqAlgebra for TarskiTruth {
    fn top(&self) -> TableFun<bool> {
        TableFun::constant(self.k(), true)
    }

    fn meet(&self, x: &TableFun<bool>, y: &TableFun<bool>) -> TableFun<bool> {
        x.zip(y, |p, q| p && q)
    }

    fn neg(&self, x: &TableFun<bool>) -> TableFun<bool> {
        x.map(|p| !p)
    }

    fn freshmeet(&self, a: Atom, x: &TableFun<bool>) -> TableFun<bool> {
        x.freshmeet(a)
    }

    fn eq(&self, u: &TableFun<u32>, v: &TableFun<u32>) -> TableFun<bool> {
        tf_eq(u, v)
    }

    fn leq(&self, x: &TableFun<bool>, y: &TableFun<bool>) -> bool {
        x.zip(y, |p, q| !p || q) == self.top()
    }
}

// ---------------------------------------------------------------------------
// Ordinary models

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryModel {
    pub k: u32,
    pub funs: BTreeMap<Sym, (usize, Vec<u32>)>,
    pub preds: BTreeMap<Sym, (usize, Vec<bool>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `domain k` line")]
    NoDomain,
    #[error("symbol `{0}` has no table")]
    Missing(Sym),
    #[error(
        "table for `{name}` has {found} entries; arity {arity} over domain {k} needs {expected}"
    )]
    Size {
        name: Sym,
        arity: usize,
        k: u32,
        expected: usize,
        found: usize,
    },
}

impl OrdinaryModel {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "domain must be non-empty");
        OrdinaryModel {
            k,
            funs: BTreeMap::new(),
            preds: BTreeMap::new(),
        }
    }

    pub fn with_function(mut self, name: &str, arity: usize, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), (self.k as usize).pow(arity as u32));
        assert!(table.iter().all(|&x| x < self.k));
        self.funs.insert(Sym::from(name), (arity, table));
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize, table: Vec<bool>) -> Self {
        assert_eq!(table.len(), (self.k as usize).pow(arity as u32));
        self.preds.insert(Sym::from(name), (arity, table));
        self
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (f, (n, _)) in &self.funs {
            sig = sig.with_function(f, *n);
        }
        for (p, (n, _)) in &self.preds {
            sig = sig.with_predicate(p, *n);
        }
        sig
    }

    /// Checks that every symbol of `sig` has a table of the right arity.
    pub fn covers(&self, sig: &Signature) -> Result<(), ModelError> {
        for (f, n) in sig.functions() {
            match self.funs.get(f) {
                Some((m, _)) if *m == n => {}
                _ => return Err(ModelError::Missing(f.clone())),
            }
        }
        for (p, n) in sig.predicates() {
            match self.preds.get(p) {
                Some((m, _)) if *m == n => {}
                _ => return Err(ModelError::Missing(p.clone())),
            }
        }
        Ok(())
    }

    pub fn fun_value(&self, f: &str, args: &[u32]) -> u32 {
        let (_, t) = &self.funs[f];
        t[row_index(self.k, args.iter().copied())]
    }

    pub fn pred_value(&self, p: &str, args: &[u32]) -> bool {
        let (_, t) = &self.preds[p];
        t[row_index(self.k, args.iter().copied())]
    }

    /// Uniformly random tables for every symbol of `sig`.
    pub fn random<R: Rng>(sig: &Signature, k: u32, rng: &mut R) -> Self {
        let mut m = OrdinaryModel::new(k);
        for (f, n) in sig.functions() {
            let size = (k as usize).pow(n as u32);
            m.funs.insert(
                f.clone(),
                (n, (0..size).map(|_| rng.gen_range(0..k)).collect()),
            );
        }
        for (p, n) in sig.predicates() {
            let size = (k as usize).pow(n as u32);
            m.preds.insert(
                p.clone(),
                (n, (0..size).map(|_| rng.gen_bool(0.5)).collect()),
            );
        }
        m
    }

    /// Parses `domain k`, `fun name : v...` and `pred name : 0/1...` lines.
    /// Arity comes from `sig` if given, else from an optional `/n` suffix on
    /// the name, else from the number of entries.
    pub fn parse(text: &str, sig: Option<&Signature>) -> Result<Self, ModelError> {
        let mut k = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| ModelError::Syntax {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("domain") => {
                    let n: u32 = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| err("expected a positive domain size"))?;
                    if words.next().is_some() {
                        return Err(err("trailing input"));
                    }
                    k = Some(n);
                }
                Some(kind @ ("fun" | "pred")) => {
                    let name = words.next().ok_or_else(|| err("expected a symbol name"))?;
                    if words.next() != Some(":") {
                        return Err(err("expected `:` after the symbol name"));
                    }
                    let vals = words
                        .map(|w| w.parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err("table entries must be numbers"))?;
                    entries.push((i + 1, kind == "fun", name.to_string(), vals));
                }
                Some(other) => return Err(err(&format!("unknown directive `{other}`"))),
                None => {}
            }
        }
        let k = k.ok_or(ModelError::NoDomain)?;
        let mut m = OrdinaryModel::new(k);
        for (line, is_fun, name, vals) in entries {
            let err = |msg: String| ModelError::Syntax { line, msg };
            let (name, suffix) = match name.split_once('/') {
                Some((n, a)) => (
                    n.to_string(),
                    Some(a.parse::<usize>().map_err(|_| err("bad arity".into()))?),
                ),
                None => (name, None),
            };
            let declared = sig.and_then(|s| {
                if is_fun {
                    s.function_arity(&name)
                } else {
                    s.predicate_arity(&name)
                }
            });
            let arity = match declared.or(suffix) {
                Some(n) => n,
                None => infer_arity(k, vals.len()).ok_or_else(|| {
                    err(format!(
                        "cannot infer the arity of `{name}` from {} entries",
                        vals.len()
                    ))
                })?,
            };
            let expected = (k as usize).pow(arity as u32);
            if vals.len() != expected {
                return Err(ModelError::Size {
                    name: Sym::from(name.as_str()),
                    arity,
                    k,
                    expected,
                    found: vals.len(),
                });
            }
            if is_fun {
                if vals.iter().any(|&x| x >= k) {
                    return Err(err(format!("`{name}` has a value outside the domain")));
                }
                m.funs.insert(Sym::from(name.as_str()), (arity, vals));
            } else {
                if vals.iter().any(|&x| x > 1) {
                    return Err(err(format!("`{name}` entries must be 0 or 1")));
                }
                m.preds.insert(
                    Sym::from(name.as_str()),
                    (arity, vals.into_iter().map(|x| x == 1).collect()),
                );
            }
        }
        if let Some(s) = sig {
            m.covers(s)?;
        }
        Ok(m)
    }
}

fn infer_arity(k: u32, len: usize) -> Option<usize> {
    if k == 1 {
        return if len == 1 { Some(0) } else { None };
    }
    let mut n = 0;
    let mut size = 1usize;
    while size < len {
        size *= k as usize;
        n += 1;
    }
    (size == len).then_some(n)
}

impl fmt::Display for OrdinaryModel {
    /// Names carry an explicit `/n` arity when the domain has one element,
    /// since it cannot be recovered from the table length there.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.k)?;
        let name = |s: &Sym, n: usize| {
            if self.k == 1 {
                format!("{s}/{n}")
            } else {
                s.to_string()
            }
        };
        for (s, (n, t)) in &self.funs {
            let vals: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            writeln!(f, "fun {} : {}", name(s, *n), vals.join(" "))?;
        }
        for (s, (n, t)) in &self.preds {
            let vals: Vec<&str> = t.iter().map(|&x| if x { "1" } else { "0" }).collect();
            writeln!(f, "pred {} : {}", name(s, *n), vals.join(" "))?;
        }
        Ok(())
    }
}

pub fn standard_eval_term(t: &Term, m: &OrdinaryModel, v: &Valuation) -> u32 {
    match t {
        Term::Var(a) => v.lookup(*a),
        Term::App(f, args) => {
            let xs: Vec<u32> = args.iter().map(|r| standard_eval_term(r, m, v)).collect();
            m.fun_value(f, &xs)
        }
    }
}

/// Brute-force satisfaction; `∀` ranges over the whole domain.
pub fn standard_eval(phi: &Formula, m: &OrdinaryModel, v: &Valuation) -> bool {
    match phi {
        Formula::Bot => false,
        Formula::Eq(l, r) => standard_eval_term(l, m, v) == standard_eval_term(r, m, v),
        Formula::Pred(p, args) => {
            let xs: Vec<u32> = args.iter().map(|r| standard_eval_term(r, m, v)).collect();
            m.pred_value(p, &xs)
        }
        Formula::And(l, r) => standard_eval(l, m, v) && standard_eval(r, m, v),
        Formula::Neg(x) => !standard_eval(x, m, v),
        Formula::All(a, x) => (0..m.k).all(|d| standard_eval(x, m, &v.with(*a, d))),
    }
}

/// Interprets each symbol as its model table read at the given atoms.
pub fn lift_interpretation(m: &OrdinaryModel) -> Interpretation<TarskiTruth> {
    let k = m.k;
    let mut interp = Interpretation::new(TarskiTruth::new(k));
    for (f, (n, table)) in &m.funs {
        let table = table.clone();
        interp = interp.with_function(f, *n, move |at: &[Atom]| {
            TableFun::tabulate(k, at.iter().copied(), |l| {
                table[row_index(k, at.iter().map(|&a| l(a)))]
            })
        });
    }
    for (p, (n, table)) in &m.preds {
        let table = table.clone();
        interp = interp.with_predicate(p, *n, move |at: &[Atom]| {
            TableFun::tabulate(k, at.iter().copied(), |l| {
                table[row_index(k, at.iter().map(|&a| l(a)))]
            })
        });
    }
    interp
}

/// A valuation at which the lifted denotation and brute-force evaluation
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub valuation: Valuation,
    pub lifted: bool,
    pub standard: bool,
}

/// Compares the lifted denotation of `phi` with [`standard_eval`] at every
/// valuation over its free atoms.
pub fn agreement_check(phi: &Formula, m: &OrdinaryModel) -> Result<(), Disagreement> {
    let lifted = lift_interpretation(m)
        .interpret(phi)
        .expect("formula is over the model's signature");
    for v in Valuation::enumerate(m.k, &free_atoms(phi)) {
        let (l, s) = (lifted.apply(&v), standard_eval(phi, m, &v));
        if l != s {
            return Err(Disagreement {
                valuation: v,
                lifted: l,
                standard: s,
            });
        }
    }
    Ok(())
}

/// Random canonical tables over a pool of atoms.
pub struct TableSampler<R> {
    pub k: u32,
    pub atoms: Vec<Atom>,
    pub max_deps: usize,
    pub rng: R,
}

impl<R: Rng> TableSampler<R> {
    fn deps(&mut self) -> Vec<Atom> {
        let n = self.rng.gen_range(0..=self.max_deps.min(self.atoms.len()));
        let mut pool = self.atoms.clone();
        let mut out = Vec::new();
        for _ in 0..n {
            let i = self.rng.gen_range(0..pool.len());
            out.push(pool.swap_remove(i));
        }
        out
    }

    pub fn truth(&mut self) -> TableFun<bool> {
        let deps: AtomSet = self.deps().into_iter().collect();
        let size = (self.k as usize).pow(deps.len() as u32);
        let table: Vec<bool> = (0..size).map(|_| self.rng.gen_bool(0.5)).collect();
        TableFun::from_raw(self.k, deps.into_iter().collect(), table).canonicalise()
    }

    pub fn value(&mut self) -> TableFun<u32> {
        match self.rng.gen_range(0..4) {
            0 => {
                let a = self.atom();
                TableFun::atm(self.k, a)
            }
            1 => TableFun::constant(self.k, self.rng.gen_range(0..self.k)),
            _ => {
                let deps: AtomSet = self.deps().into_iter().collect();
                let size = (self.k as usize).pow(deps.len() as u32);
                let table: Vec<u32> = (0..size).map(|_| self.rng.gen_range(0..self.k)).collect();
                TableFun::from_raw(self.k, deps.into_iter().collect(), table).canonicalise()
            }
        }
    }

    pub fn atom(&mut self) -> Atom {
        self.atoms[self.rng.gen_range(0..self.atoms.len())]
    }
}

impl<R: Rng> Sampler<TableFun<bool>, TableFun<u32>> for TableSampler<R> {
    fn element(&mut self) -> TableFun<bool> {
        self.truth()
    }

    fn termlike(&mut self) -> TableFun<u32> {
        self.value()
    }

    fn atom(&mut self) -> Atom {
        TableSampler::atom(self)
    }
}

/// Domain-valued tables as both elements and termlikes.
pub struct ValueSampler<R>(pub TableSampler<R>);

impl<R: Rng> Sampler<TableFun<u32>, TableFun<u32>> for ValueSampler<R> {
    fn element(&mut self) -> TableFun<u32> {
        self.0.value()
    }

    fn termlike(&mut self) -> TableFun<u32> {
        self.0.value()
    }

    fn atom(&mut self) -> Atom {
        self.0.atom()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::rng;
    use crate::nominal::swap;

    fn a(i: u32) -> Atom {
        Atom(i)
    }

    fn p_at_one() -> OrdinaryModel {
        OrdinaryModel::new(2).with_predicate("P", 1, vec![false, true])
    }

    #[test]
    fn rows_are_lexicographic() {
        let r: Vec<Vec<u32>> = rows(2, 2).collect();
        assert_eq!(r, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(rows(3, 0).count(), 1);
    }

    #[test]
    fn canonical_form_drops_unread_atoms() {
        // constant in a0 over [a0, a1]
        let f =
            TableFun::from_raw(2, vec![a(0), a(1)], vec![false, true, false, true]).canonicalise();
        assert_eq!(f.deps(), &[a(1)]);
        assert_eq!(f.table(), &[false, true]);
        assert_eq!(f.clone().canonicalise(), f);
        let g = tf_eq(&TableFun::atm(2, a(0)), &TableFun::atm(2, a(0)));
        assert_eq!(g, TableFun::constant(2, true));
    }

    #[test]
    fn apply_examples() {
        let pa = TableFun::atm(2, a(0));
        assert_eq!(pa.apply(&Valuation::constant(0).with(a(0), 1)), 1);
        let c = TableFun::constant(3, 2u32);
        assert_eq!(c.apply(&Valuation::constant(0)), 2);
        assert_eq!(c.apply(&Valuation::constant(1).with(a(4), 0)), 2);
        let diag = tf_eq(&TableFun::atm(2, a(0)), &TableFun::atm(2, a(1)));
        assert_eq!(diag.deps(), &[a(0), a(1)]);
        assert_eq!(diag.table(), &[true, false, false, true]);
        assert!(diag.apply(&Valuation::constant(1).with(a(0), 0).with(a(1), 0)));
    }

    #[test]
    fn subst_examples() {
        let u = TableFun::from_raw(2, vec![a(3)], vec![1, 0]);
        assert_eq!(TableFun::atm(2, a(0)).subst(a(0), &u), u);
        let f = TableFun::from_raw(2, vec![a(0), a(1)], vec![true, false, true, true]);
        assert_eq!(f.subst(a(0), &TableFun::atm(2, a(0))), f);
        assert_eq!(
            TableFun::atm(2, a(0)).subst(a(0), &TableFun::atm(2, a(1))),
            TableFun::atm(2, a(1))
        );
        assert_eq!(
            TableFun::atm(1, a(0)),
            TableFun::constant(1, 0),
            "a one-element domain identifies every projection with the constant"
        );
    }

    #[test]
    fn act_renames_dependencies() {
        let f = TableFun::from_raw(2, vec![a(0), a(1)], vec![true, true, false, true]);
        let g = f.act(&swap(a(0), a(1)));
        assert_eq!(g.deps(), &[a(0), a(1)]);
        for v in Valuation::enumerate(2, &[a(0), a(1)].into_iter().collect()) {
            let w = v.act(&swap(a(0), a(1)));
            assert_eq!(g.apply(&w), f.apply(&v));
        }
        let h = f.act(&swap(a(1), a(5)));
        assert_eq!(h.deps(), &[a(0), a(5)]);
    }

    #[test]
    fn freshmeet_examples() {
        let f = TableFun::from_raw(2, vec![a(1)], vec![false, true]);
        assert_eq!(f.freshmeet(a(0)), f);
        assert_eq!(
            TableFun::from_raw(2, vec![a(0)], vec![false, true]).freshmeet(a(0)),
            TableFun::constant(2, false)
        );
        assert_eq!(
            TableFun::constant(2, true).freshmeet(a(0)),
            TableFun::constant(2, true)
        );
    }

    #[test]
    fn lifted_symbols() {
        let m = OrdinaryModel::new(2)
            .with_predicate("P", 1, vec![false, true])
            .with_function("c", 0, vec![0])
            .with_function("f", 2, vec![0, 1, 1, 0]);
        let i = lift_interpretation(&m);
        assert_eq!(
            i.predicate_at("P", &[a(0)]).unwrap(),
            TableFun::from_raw(2, vec![a(0)], vec![false, true])
        );
        assert_eq!(i.function_at("c", &[]).unwrap(), TableFun::constant(2, 0));
        assert_eq!(
            i.function_at("f", &[a(0), a(1)]).unwrap().table(),
            &[0, 1, 1, 0]
        );
    }

    #[test]
    fn interpret_examples() {
        let i = lift_interpretation(&p_at_one());
        let all_p = Formula::all(a(0), Formula::pred("P", vec![Term::var(a(0))]));
        assert_eq!(i.interpret(&all_p).unwrap(), TableFun::constant(2, false));
        assert_eq!(
            i.interpret(&Formula::bot()).unwrap(),
            TableFun::constant(2, false)
        );
        assert_eq!(
            i.interpret(&Formula::top()).unwrap(),
            TableFun::constant(2, true)
        );
        let pa = Formula::pred("P", vec![Term::var(a(0))]);
        assert!(!i.sequent_valid(&[], std::slice::from_ref(&pa)).unwrap());
        assert!(i
            .sequent_valid(std::slice::from_ref(&pa), std::slice::from_ref(&pa))
            .unwrap());
        assert!(i.sequent_valid(&[Formula::bot()], &[]).unwrap());
    }

    #[test]
    fn standard_eval_examples() {
        let m = p_at_one();
        let all_p = Formula::all(a(0), Formula::pred("P", vec![Term::var(a(0))]));
        assert!(!standard_eval(&all_p, &m, &Valuation::constant(1)));
        let aa = Formula::eq(Term::var(a(0)), Term::var(a(0)));
        assert!(standard_eval(&aa, &m, &Valuation::constant(0)));
        let pa = Formula::pred("P", vec![Term::var(a(0))]);
        assert!(standard_eval(
            &pa,
            &m,
            &Valuation::constant(0).with(a(0), 1)
        ));
    }

    #[test]
    fn agreement_examples() {
        let pa = Formula::pred("P", vec![Term::var(a(0))]);
        let lem = Formula::all(a(0), Formula::or(pa.clone(), Formula::neg(pa.clone())));
        for k in 1..=3 {
            let mut r = rng(k as u64);
            let m = OrdinaryModel::random(&p_at_one().signature(), k, &mut r);
            agreement_check(&Formula::bot(), &m).unwrap();
            agreement_check(&lem, &m).unwrap();
            agreement_check(&pa, &m).unwrap();
            assert_eq!(
                lift_interpretation(&m).interpret(&lem).unwrap(),
                TableFun::constant(k, true)
            );
        }
    }

    #[test]
    fn model_file_round_trip() {
        let text = "# demo\ndomain 2\nfun f : 1 0\nfun c : 1\npred R : 0 1 1 0\n";
        let m = OrdinaryModel::parse(text, None).unwrap();
        assert_eq!(m.funs["f"], (1, vec![1, 0]));
        assert_eq!(m.preds["R"].0, 2);
        assert_eq!(OrdinaryModel::parse(&m.to_string(), None).unwrap(), m);

        let one = OrdinaryModel::new(1).with_predicate("P", 1, vec![false]);
        assert_eq!(one.to_string(), "domain 1\npred P/1 : 0\n");
        assert_eq!(OrdinaryModel::parse(&one.to_string(), None).unwrap(), one);
        let sig = Signature::new().with_predicate("P", 1);
        assert_eq!(
            OrdinaryModel::parse("domain 1\npred P : 0", Some(&sig)).unwrap(),
            one
        );
    }

    #[test]
    fn model_file_errors() {
        assert_eq!(
            OrdinaryModel::parse("pred P : 0 1", None),
            Err(ModelError::NoDomain)
        );
        assert!(matches!(
            OrdinaryModel::parse("domain 2\npred P : 0 1 1", None),
            Err(ModelError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            OrdinaryModel::parse("domain 2\nfun f : 0 2", None),
            Err(ModelError::Syntax { line: 2, .. })
        ));
        let sig = Signature::new()
            .with_predicate("P", 1)
            .with_predicate("Q", 1);
        assert_eq!(
            OrdinaryModel::parse("domain 2\npred P : 0 1", Some(&sig)),
            Err(ModelError::Missing(Sym::from("Q")))
        );
        assert!(matches!(
            OrdinaryModel::parse("domain 2\npred P : 0 1 0 0", Some(&sig)),
            Err(ModelError::Size {
                expected: 2,
                found: 4,
                ..
            })
        ));
    }

    fn sampler(k: u32, seed: u64) -> TableSampler<crate::gen::SuiteRng> {
        TableSampler {
            k,
            atoms: crate::gen::atoms(4),
            max_deps: 3,
            rng: rng(seed),
        }
    }

    #[test]
    fn lift_passes_suites() {
        use crate::foleq::foleq_axiom_suite;
        use crate::sigma::{sigma_axiom_suite, termlike_axiom_suite};
        for k in 1..=3 {
            let t = TarskiTruth::new(k);
            let r = termlike_axiom_suite(&t.terms, &mut ValueSampler(sampler(k, 1)), 200);
            assert!(r.all_passed(), "k={k}\n{r}");
            let r = sigma_axiom_suite(&t, &mut sampler(k, 2), 200);
            assert!(r.all_passed(), "k={k}\n{r}");
            let r = foleq_axiom_suite(&t, &mut sampler(k, 3), 200);
            assert!(r.all_passed(), "k={k}\n{r}");
        }
    }
}

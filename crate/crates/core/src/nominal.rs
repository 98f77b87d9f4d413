//! Atoms, finite permutations, support and freshness.
//!
//! Atoms are interned natural indices displayed as `a0`, `a1`, ... A
//! [`Perm`] is a finite bijection kept in fixpoint-free canonical form, so
//! two permutations are equal exactly when their canonical maps are equal.
//!
//! Every value that permutations act on implements [`Nominal`], which pairs
//! the action with an *exact* support procedure. Freshness side conditions
//! elsewhere in the crate depend on that exactness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A name. Equality is index equality.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

pub type AtomSet = BTreeSet<Atom>;

/// Builds an [`AtomSet`] from anything yielding atoms.
pub fn atom_set<I: IntoIterator<Item = Atom>>(atoms: I) -> AtomSet {
    atoms.into_iter().collect()
}

/// Lowest-indexed atom not in `avoid`.
pub fn fresh(avoid: &AtomSet) -> Atom {
    let mut i = 0;
    for a in avoid {
        if a.0 == i {
            i += 1;
        } else if a.0 > i {
            break;
        }
    }
    Atom(i)
}

/// `n` distinct atoms, each the lowest available, none in `avoid`.
pub fn fresh_many(avoid: &AtomSet, n: usize) -> Vec<Atom> {
    let mut avoid = avoid.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let a = fresh(&avoid);
        avoid.insert(a);
        out.push(a);
    }
    out
}

/// A finite permutation of atoms in canonical (fixpoint-free) form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Perm {
    map: BTreeMap<Atom, Atom>,
}

impl Perm {
    pub fn identity() -> Self {
        Perm::default()
    }

    /// Builds a permutation from explicit pairs. Returns `None` unless the
    /// pairs describe a bijection whose domain equals its codomain.
    pub fn from_pairs<I: IntoIterator<Item = (Atom, Atom)>>(pairs: I) -> Option<Self> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if let Some(prev) = map.insert(a, b) {
                if prev != b {
                    return None;
                }
            }
        }
        let dom: AtomSet = map.keys().copied().collect();
        let cod: AtomSet = map.values().copied().collect();
        if dom != cod || cod.len() != map.len() {
            return None;
        }
        map.retain(|a, b| a != b);
        Some(Perm { map })
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.map.get(&a).copied().unwrap_or(a)
    }

    pub fn inverse(&self) -> Perm {
        Perm {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Atoms moved by the permutation.
    pub fn domain(&self) -> AtomSet {
        self.map.keys().copied().collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn act_set(&self, s: &AtomSet) -> AtomSet {
        s.iter().map(|&a| self.apply(a)).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "id");
        }
        write!(f, "{{")?;
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}")
    }
}

/// The transposition `(a b)`. `swap(a, a)` is the identity.
pub fn swap(a: Atom, b: Atom) -> Perm {
    if a == b {
        return Perm::identity();
    }
    let mut map = BTreeMap::new();
    map.insert(a, b);
    map.insert(b, a);
    Perm { map }
}

/// `compose(p, q)(a) = p(q(a))`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    let mut dom = p.domain();
    dom.extend(q.domain());
    let map = dom
        .into_iter()
        .map(|a| (a, p.apply(q.apply(a))))
        .filter(|(a, b)| a != b)
        .collect();
    Perm { map }
}

/// A type with a permutation action and an exact support procedure.
///
/// Implementations must satisfy `id·x = x`, `p·(q·x) = (p∘q)·x`, and
/// `support` must return the least finite supporting set.
pub trait Nominal: Clone {
    fn act(&self, pi: &Perm) -> Self;
    fn support(&self) -> AtomSet;

    fn is_fresh(&self, a: Atom) -> bool {
        !self.support().contains(&a)
    }
}

impl Nominal for Atom {
    fn act(&self, pi: &Perm) -> Self {
        pi.apply(*self)
    }

    fn support(&self) -> AtomSet {
        atom_set([*self])
    }
}

/// Finite sets carry the pointwise action; their support is the union of
/// the element supports.
impl<T: Nominal + Ord> Nominal for BTreeSet<T> {
    fn act(&self, pi: &Perm) -> Self {
        self.iter().map(|x| x.act(pi)).collect()
    }

    fn support(&self) -> AtomSet {
        strict_support(self.iter())
    }
}

impl<T: Nominal> Nominal for Vec<T> {
    fn act(&self, pi: &Perm) -> Self {
        self.iter().map(|x| x.act(pi)).collect()
    }

    fn support(&self) -> AtomSet {
        strict_support(self.iter())
    }
}

impl<A: Nominal, B: Nominal> Nominal for (A, B) {
    fn act(&self, pi: &Perm) -> Self {
        (self.0.act(pi), self.1.act(pi))
    }

    fn support(&self) -> AtomSet {
        let mut s = self.0.support();
        s.extend(self.1.support());
        s
    }
}

/// Union of element supports of a finite collection.
pub fn strict_support<'a, T: Nominal + 'a, I: IntoIterator<Item = &'a T>>(xs: I) -> AtomSet {
    let mut out = AtomSet::new();
    for x in xs {
        out.extend(x.support());
    }
    out
}

/// Decides a new-quantified statement by testing `pred` at one atom fresh
/// for `context`.
///
/// The caller guarantees that `pred` is equivariant outside `context`; under
/// that obligation one fresh witness decides the statement for all but
/// finitely many atoms.
pub fn new_check<F: FnOnce(Atom) -> bool>(context: &AtomSet, pred: F) -> bool {
    pred(fresh(context))
}

/// The swap-with-a-fresh-atom membership test for support: `a` is in the
/// support of `x` iff swapping it with an atom fresh for `x` and `a` moves
/// `x`. `eq` is the carrier equality.
pub fn swap_test<T: Nominal, E: Fn(&T, &T) -> bool>(x: &T, a: Atom, eq: E) -> bool {
    let mut avoid = x.support();
    avoid.insert(a);
    let b = fresh(&avoid);
    !eq(&x.act(&swap(b, a)), x)
}

/// Finitely supported sets of atoms: either a finite set or the complement
/// of one. The support is the finite part in both cases.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomSubset {
    Finite(AtomSet),
    Cofinite(AtomSet),
}

impl AtomSubset {
    pub fn contains(&self, a: Atom) -> bool {
        match self {
            AtomSubset::Finite(s) => s.contains(&a),
            AtomSubset::Cofinite(s) => !s.contains(&a),
        }
    }

    /// `{x ∈ self | a # x}`, the elements fresh for `a`; for atoms that is
    /// everything except `a` itself.
    pub fn fresh_part(&self, a: Atom) -> AtomSubset {
        match self {
            AtomSubset::Finite(s) => {
                let mut s = s.clone();
                s.remove(&a);
                AtomSubset::Finite(s)
            }
            AtomSubset::Cofinite(s) => {
                let mut s = s.clone();
                s.insert(a);
                AtomSubset::Cofinite(s)
            }
        }
    }

    /// Every subset of `universe`, and every complement of one.
    pub fn enumerate(universe: &[Atom]) -> Vec<AtomSubset> {
        let n = universe.len();
        let mut out = Vec::with_capacity(2 << n);
        for mask in 0u32..(1 << n) {
            let s: AtomSet = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| universe[i])
                .collect();
            out.push(AtomSubset::Finite(s.clone()));
            out.push(AtomSubset::Cofinite(s));
        }
        out
    }
}

impl Nominal for AtomSubset {
    fn act(&self, pi: &Perm) -> Self {
        match self {
            AtomSubset::Finite(s) => AtomSubset::Finite(pi.act_set(s)),
            AtomSubset::Cofinite(s) => AtomSubset::Cofinite(pi.act_set(s)),
        }
    }

    fn support(&self) -> AtomSet {
        match self {
            AtomSubset::Finite(s) | AtomSubset::Cofinite(s) => s.clone(),
        }
    }
}

/// One instance of the fresh-part criterion for set equality: with `a`
/// fresh for both `x` and `y`, `x = y` iff their `a`-fresh parts agree.
/// Returns `None` when `a` is not fresh for both.
pub fn precedent_instance(x: &AtomSubset, y: &AtomSubset, a: Atom) -> Option<bool> {
    if !x.is_fresh(a) || !y.is_fresh(a) {
        return None;
    }
    let lhs = x == y;
    let rhs = x.fresh_part(a) == y.fresh_part(a);
    Some(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> Atom {
        Atom(i)
    }

    #[test]
    fn swap_basics() {
        assert_eq!(swap(a(0), a(1)).apply(a(0)), a(1));
        assert_eq!(swap(a(0), a(1)).apply(a(2)), a(2));
        assert_eq!(swap(a(3), a(3)), Perm::identity());
    }

    #[test]
    fn compose_examples() {
        let (x, y, z) = (a(0), a(1), a(2));
        assert!(compose(&swap(x, y), &swap(x, y)).is_identity());
        // (a b)∘(b c) sends c to b, then b to a.
        assert_eq!(compose(&swap(x, y), &swap(y, z)).apply(z), x);
        let p = compose(&swap(x, z), &swap(y, z));
        assert_eq!(compose(&Perm::identity(), &p), p);
        assert!(compose(&p.inverse(), &p).is_identity());
    }

    #[test]
    fn from_pairs_rejects_non_bijections() {
        assert!(Perm::from_pairs([(a(0), a(1))]).is_none());
        assert!(Perm::from_pairs([(a(0), a(1)), (a(1), a(1))]).is_none());
        let p = Perm::from_pairs([(a(0), a(1)), (a(1), a(0)), (a(2), a(2))]).unwrap();
        assert_eq!(p, swap(a(0), a(1)));
    }

    #[test]
    fn fresh_is_lowest_unused() {
        assert_eq!(fresh(&AtomSet::new()), a(0));
        assert_eq!(fresh(&atom_set([a(0)])), a(1));
        assert_eq!(fresh(&atom_set([a(0), a(2)])), a(1));
        assert_eq!(fresh_many(&atom_set([a(1)]), 3), vec![a(0), a(2), a(3)]);
    }

    #[test]
    fn support_of_atom_sets() {
        let s = atom_set([a(0), a(1)]);
        assert_eq!(s.support(), s);
        assert_eq!(strict_support::<Atom, _>([].iter()), AtomSet::new());
        assert_eq!(a(4).support(), atom_set([a(4)]));
    }

    #[test]
    fn new_check_examples() {
        let ctx = atom_set([a(0)]);
        assert!(new_check(&ctx, |b| !ctx.contains(&b)));
        assert!(!new_check(&AtomSet::new(), |_| false));
    }

    #[test]
    fn swap_test_matches_support() {
        let s = atom_set([a(1), a(3)]);
        for i in 0..6 {
            assert_eq!(swap_test(&s, a(i), |x, y| x == y), s.contains(&a(i)));
        }
        let c = AtomSubset::Cofinite(atom_set([a(2)]));
        assert!(swap_test(&c, a(2), |x, y| x == y));
        assert!(!swap_test(&c, a(0), |x, y| x == y));
    }

    #[test]
    fn precedent_on_five_atom_universe() {
        let universe: Vec<Atom> = (0..5).map(a).collect();
        let subsets = AtomSubset::enumerate(&universe);
        let mut checked = 0;
        for x in &subsets {
            for y in &subsets {
                for cand in universe.iter().copied().chain([a(5)]) {
                    if let Some(ok) = precedent_instance(x, y, cand) {
                        assert!(ok, "{x:?} {y:?} at {cand}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}

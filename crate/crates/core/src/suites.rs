//! Named, seeded axiom suites over the concrete algebras.

use rand::seq::SliceRandom;

use crate::foleq::{foleq_axiom_suite, FoleqAlgebra};
use crate::gen::{atoms, demo_signature, rng, SuiteRng, SyntaxGen};
use crate::nominal::{fresh_many, precedent_instance, Atom, AtomSubset};
use crate::sigma::{
    amgis_axiom_suite, enumerate_terms, eq_element_member, eq_element_member_at, sigma_axiom_suite,
    termlike_axiom_suite, AmgisAlgebra, Carrier, NominalCarrier, PowAmgis, Sampler, SigmaAlgebra,
    SuiteReport, TermAlgebra, TermSampler, TermSetSampler, TermlikeSigma,
};
use crate::syntax::Term;
use crate::tarski::{rows, TableFun, TableSampler, TarskiTruth, ValueSampler};

pub const SUITE_NAMES: [&str; 6] = [
    "sigma-terms",
    "sigma-tarski",
    "amgis-pow",
    "foleq-tarski",
    "precedent",
    "eq-laws",
];

/// Runs a suite by name, or `None` for an unknown name.
pub fn run_suite(name: &str, n: usize, seed: u64) -> Option<SuiteReport> {
    Some(match name {
        "sigma-terms" => sigma_terms(n, seed),
        "sigma-tarski" => sigma_tarski(&[2, 3], n, seed),
        "amgis-pow" => amgis_pow(n, seed),
        "foleq-tarski" => foleq_tarski(&[1, 2, 3], n, seed),
        "precedent" => precedent(4),
        "eq-laws" => eq_laws(n, seed),
        _ => return None,
    })
}

fn tagged(report: SuiteReport, tag: &str) -> SuiteReport {
    let mut r = report;
    for x in &mut r.results {
        x.name = format!("{}@{tag}", x.name);
    }
    r
}

fn table_sampler(k: u32, seed: u64) -> TableSampler<SuiteRng> {
    TableSampler {
        k,
        atoms: atoms(4),
        max_deps: 3,
        rng: rng(seed),
    }
}

/// The five σ-axioms on syntactic terms.
pub fn sigma_terms(n: usize, seed: u64) -> SuiteReport {
    let mut s = TermSampler {
        gen: SyntaxGen::new(&demo_signature(), atoms(4)),
        rng: rng(seed),
    };
    termlike_axiom_suite(&TermAlgebra, &mut s, n)
}

/// The σ-axioms on lifted value tables (with σa) and truth tables, per `k`.
pub fn sigma_tarski(ks: &[u32], n: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new();
    for &k in ks {
        let t = TarskiTruth::new(k);
        let terms = termlike_axiom_suite(&t.terms, &mut ValueSampler(table_sampler(k, seed)), n);
        r.extend(tagged(terms, &format!("k{k}-values")));
        let truth = sigma_axiom_suite(&t, &mut table_sampler(k, seed.wrapping_add(1)), n);
        r.extend(tagged(truth, &format!("k{k}-truth")));
    }
    r
}

/// `probes` random terms of depth at most 2 over four atoms.
pub fn term_probes(count: usize, seed: u64) -> Vec<Term> {
    let mut all = enumerate_terms(&demo_signature(), &atoms(4), 2);
    all.shuffle(&mut rng(seed));
    all.truncate(count);
    all
}

/// amgis-σ and amgis-swap on sets of terms, equality by agreement on 100
/// probe terms.
pub fn amgis_pow(n: usize, seed: u64) -> SuiteReport {
    let pow = PowAmgis::new(TermAlgebra, term_probes(100, seed));
    let mut s = TermSetSampler {
        gen: SyntaxGen::new(&demo_signature(), atoms(4)),
        rng: rng(seed.wrapping_add(1)),
    };
    amgis_axiom_suite(&pow, &mut s, n)
}

pub fn foleq_tarski(ks: &[u32], n: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new();
    for &k in ks {
        let rep = foleq_axiom_suite(
            &TarskiTruth::new(k),
            &mut table_sampler(k, seed.wrapping_add(k as u64)),
            n,
        );
        r.extend(tagged(rep, &format!("k{k}")));
    }
    r
}

/// The fresh-part criterion for equality of atom sets, over every pair of
/// finite and cofinite subsets of `universe_size` atoms and one fresh atom.
pub fn precedent(universe_size: u32) -> SuiteReport {
    let universe = atoms(universe_size);
    let fresh = Atom(universe_size);
    let sets = AtomSubset::enumerate(&universe);
    let mut r = SuiteReport::new();
    let mut cases = Vec::new();
    for x in &sets {
        for y in &sets {
            cases.push((x, y));
        }
    }
    r.run("precedent", cases.len(), |i| {
        let (x, y) = cases[i];
        match precedent_instance(x, y, fresh) {
            Some(true) => Ok(()),
            Some(false) => Err(format!("x={x:?} y={y:?} a={fresh}")),
            None => Err(format!("{fresh} is not fresh for x={x:?} y={y:?}")),
        }
    });
    r
}

/// Equality laws in the lifted algebra for k = 1..3, uniqueness of the
/// equality element among all two-atom truth tables, and the one-fresh-atom
/// test for powerset equality against five further fresh atoms.
pub fn eq_laws(n: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new();
    for k in 1..=3 {
        let rep = foleq_axiom_suite(
            &TarskiTruth::new(k),
            &mut table_sampler(k, seed.wrapping_add(k as u64)),
            n,
        );
        let mut eq = SuiteReport::new();
        eq.results = rep
            .results
            .into_iter()
            .filter(|x| x.name.starts_with("eq-"))
            .collect();
        r.extend(tagged(eq, &format!("k{k}")));
    }
    for k in 1..=3 {
        r.run(&format!("eq-unique@k{k}"), 1, |_| eq_unique(k));
    }
    // Probes range over enough atoms to see every fresh witness below.
    let pow = PowAmgis::new(
        TermAlgebra,
        enumerate_terms(&demo_signature(), &atoms(10), 1),
    );
    let mut s = TermSetSampler {
        gen: SyntaxGen::new(&demo_signature(), atoms(4)),
        rng: rng(seed.wrapping_add(7)),
    };
    r.run("eq-strong", n, |_| {
        let p = s.element();
        let (u, v) = (s.termlike(), s.termlike());
        let one = eq_element_member(&pow, &p, &u, &v);
        let mut ctx = pow.support_hint(&p);
        ctx.extend(TermAlgebra.support(&u));
        ctx.extend(TermAlgebra.support(&v));
        for c in fresh_many(&ctx, 6).into_iter().skip(1) {
            if eq_element_member_at(&pow, &p, &u, &v, c) != one {
                return Err(format!("p={p:?} u={u:?} v={v:?} differs at {c}"));
            }
        }
        Ok(())
    });
    r
}

/// Among all truth tables over atoms `a, b`, exactly the equality table
/// satisfies `x[a←d, b←d] = ⊤` for every constant `d` and
/// `x ∧ z[c←a] = x ∧ z[c←b]` for every truth table `z` over `c`.
fn eq_unique(k: u32) -> Result<(), String> {
    let alg = TarskiTruth::new(k);
    let terms = alg.terms();
    let (a, b, c) = (Atom(0), Atom(1), Atom(2));
    let consts = alg.constants();
    let zs: Vec<TableFun<bool>> = rows(2, k as usize)
        .map(|row| {
            TableFun::from_raw(k, vec![c], row.into_iter().map(|x| x == 1).collect()).canonicalise()
        })
        .collect();
    let cells = (k * k) as usize;
    let mut passing = Vec::new();
    for bits in rows(2, cells) {
        let x = TableFun::from_raw(k, vec![a, b], bits.into_iter().map(|v| v == 1).collect())
            .canonicalise();
        let diag = consts
            .iter()
            .all(|d| alg.equal(&alg.subst(&alg.subst(&x, a, d), b, d), &alg.top()));
        let leibniz = zs.iter().all(|z| {
            let za = alg.subst(z, c, &terms.atm(a));
            let zb = alg.subst(z, c, &terms.atm(b));
            alg.equal(&alg.meet(&x, &za), &alg.meet(&x, &zb))
        });
        if diag && leibniz {
            passing.push(x);
        }
    }
    let expected = FoleqAlgebra::eq(&alg, &terms.atm(a), &terms.atm(b));
    match passing.as_slice() {
        [only] if alg.equal(only, &expected) => Ok(()),
        _ => Err(format!(
            "{} tables satisfy the equality laws",
            passing.len()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        for name in SUITE_NAMES {
            let r = run_suite(name, 30, 1).unwrap();
            assert!(r.all_passed(), "{name}\n{r}");
            assert!(!r.results.is_empty());
        }
        assert!(run_suite("nope", 1, 1).is_none());
    }

    #[test]
    fn precedent_counts() {
        let r = precedent(4);
        assert_eq!(r.to_string(), "AXIOM precedent PASS 1024\n");
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_suite("amgis-pow", 20, 9), run_suite("amgis-pow", 20, 9));
    }
}

//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always shown.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::Rng;

use nomsem::filter::{
    filter_check, filter_check_with, point_sketch, points_amgis, sketch_pairs, upset, PointSketch,
};
use nomsem::foleq::FoleqAlgebra;
use nomsem::gen::{atoms, demo_signature, rng, SyntaxGen};
use nomsem::nominal::{fresh, swap, swap_test, Atom, Nominal};
use nomsem::sequent::{find_countermodel, generate_derivable, prove, ProverBudget, Sequent};
use nomsem::sigma::{
    sigma_axiom_suite, Carrier, FormulaAlgebra, FormulaSampler, SigmaAlgebra, SuiteReport,
};
use nomsem::suites;
use nomsem::syntax::{alpha_eq, subst_formula, Formula};
use nomsem::tarski::{
    agreement_check, lift_interpretation, standard_eval, OrdinaryModel, TableFun, TableSampler,
    TarskiTruth, Valuation,
};

type Outcome = Result<String, String>;

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let cases: usize = r
        .results
        .iter()
        .map(|x| match x.outcome {
            nomsem::sigma::Outcome::Pass(n) => n,
            _ => 0,
        })
        .sum();
    match r.failures().next() {
        None => Ok(format!("{} laws, {cases} cases", r.results.len())),
        Some(f) => Err(format!("{}: {:?}", f.name, f.outcome)),
    }
}

fn within(limit: Duration, start: Instant, o: Outcome) -> Outcome {
    let took = start.elapsed();
    let o = o?;
    if took > limit {
        Err(format!("{o}, but took {took:.1?} (limit {limit:?})"))
    } else {
        Ok(format!("{o}, {took:.1?}"))
    }
}

fn c1_sigma() -> Outcome {
    let start = Instant::now();
    let mut r = suites::sigma_terms(1000, 1);
    let gen = SyntaxGen::new(&demo_signature(), atoms(4));
    let mut fs = FormulaSampler {
        gen,
        rng: rng(2),
        depth: 4,
    };
    r.extend(sigma_axiom_suite(&FormulaAlgebra::default(), &mut fs, 1000));
    r.extend(suites::sigma_tarski(&[2, 3], 1000, 3));
    within(Duration::from_secs(30), start, suite_outcome(&r))
}

fn c2_amgis() -> Outcome {
    let r = suites::amgis_pow(500, 4);
    suite_outcome(&r).map(|s| format!("{s}, 100 probes"))
}

fn c3_foleq() -> Outcome {
    let start = Instant::now();
    let r = suites::foleq_tarski(&[1, 2, 3], 500, 5);
    within(Duration::from_secs(60), start, suite_outcome(&r))
}

fn random_model<R: Rng>(r: &mut R) -> OrdinaryModel {
    let k = r.gen_range(1..=3);
    OrdinaryModel::random(&demo_signature(), k, r)
}

fn c4_soundness() -> Outcome {
    let sig = demo_signature();
    let corpus = generate_derivable(&sig, 6, 200, 8);
    let mut r = rng(7);
    let mut checks = 0;
    for (s, _) in &corpus {
        let left: Vec<Formula> = s.left().iter().cloned().collect();
        let right: Vec<Formula> = s.right().iter().cloned().collect();
        for _ in 0..20 {
            let m = random_model(&mut r);
            let lifted = lift_interpretation(&m)
                .sequent_valid(&left, &right)
                .map_err(|e| e.to_string())?;
            if !lifted {
                return Err(format!("`{s}` not valid in the lift of\n{m}"));
            }
            for v in Valuation::enumerate(m.k, &s.free_atoms()) {
                let holds = !left.iter().all(|f| standard_eval(f, &m, &v))
                    || right.iter().any(|f| standard_eval(f, &m, &v));
                if !holds {
                    return Err(format!("`{s}` fails at {v:?} in\n{m}"));
                }
            }
            checks += 1;
        }
    }
    Ok(format!("{} sequents, {checks} model checks", corpus.len()))
}

fn c5_agreement() -> Outcome {
    let gen = SyntaxGen::new(&demo_signature(), atoms(3));
    let mut r = rng(8);
    for i in 0..300 {
        let phi = gen.formula(&mut r, 4);
        let m = random_model(&mut r);
        agreement_check(&phi, &m).map_err(|d| format!("case {i}: `{phi}` {d:?}"))?;
    }
    Ok("300 formulas".into())
}

fn c6_sub_commute() -> Outcome {
    let gen = SyntaxGen::new(&demo_signature(), atoms(3));
    let mut r = rng(9);
    for i in 0..300 {
        let phi = gen.formula(&mut r, 3);
        let t = gen.term(&mut r);
        let a = gen.atom(&mut r);
        let m = random_model(&mut r);
        let interp = lift_interpretation(&m);
        let lhs = interp
            .interpret(&subst_formula(&phi, a, &t))
            .map_err(|e| e.to_string())?;
        let rhs = interp.target.subst(
            &interp.interpret(&phi).unwrap(),
            a,
            &interp.interpret_term(&t).unwrap(),
        );
        if lhs != rhs {
            return Err(format!("case {i}: `{phi}` [{a} <- {t}]"));
        }
    }
    Ok("300 cases".into())
}

fn c7_freshmeet() -> Outcome {
    for i in 0..200 {
        let k = (i % 3) as u32 + 1;
        let alg = TarskiTruth::new(k);
        let mut s = TableSampler {
            k,
            atoms: atoms(4),
            max_deps: 3,
            rng: rng(100 + i),
        };
        let f = s.truth();
        let a = s.atom();
        let instances: Vec<TableFun<bool>> = alg
            .constants()
            .iter()
            .map(|d| alg.subst(&f, a, d))
            .collect();
        let expected = alg.meet_all(&instances);
        if !alg.equal(&alg.freshmeet(a, &f), &expected) {
            return Err(format!("case {i}: k={k} a={a} f={f:?}"));
        }
    }
    Ok("200 cases".into())
}

fn c8_consistency() -> Outcome {
    let sig = demo_signature();
    let mut corpus: Vec<Sequent> = generate_derivable(&sig, 10, 250, 5)
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    let mut gen = SyntaxGen::new(&sig, atoms(2));
    gen.term_depth = 1;
    let mut r = rng(11);
    while corpus.len() < 500 {
        let l: Vec<Formula> = (0..r.gen_range(0..=2))
            .map(|_| gen.formula(&mut r, 2))
            .collect();
        let rt: Vec<Formula> = (0..r.gen_range(1..=2))
            .map(|_| gen.formula(&mut r, 2))
            .collect();
        corpus.push(Sequent::new(l, rt));
    }
    let budget = ProverBudget {
        max_depth: 5,
        max_nodes: 3000,
        ..ProverBudget::default()
    };
    let (mut proved, mut refuted) = (0, 0);
    for s in &corpus {
        let p = prove(s, &budget).is_ok();
        let c = find_countermodel(s, 2, 5000).is_ok();
        if p && c {
            return Err(format!("`{s}` is both proved and refuted"));
        }
        proved += p as usize;
        refuted += c as usize;
    }
    let detail = format!(
        "{} sequents, {proved} proved, {refuted} refuted",
        corpus.len()
    );
    if proved >= 50 && refuted >= 50 {
        Ok(detail)
    } else {
        Err(format!("{detail}; need 50 each way"))
    }
}

fn c9_support() -> Outcome {
    let gen = SyntaxGen::new(&demo_signature(), atoms(4));
    let mut r = rng(12);
    let probe_atoms: Vec<Atom> = atoms(6);
    for i in 0..1000 {
        let phi = gen.formula(&mut r, 3);
        let a = probe_atoms[r.gen_range(0..probe_atoms.len())];
        if swap_test(&phi, a, alpha_eq) != phi.support().contains(&a) {
            return Err(format!("syntax case {i}: `{phi}` at {a}"));
        }
        let mut s = TableSampler {
            k: (i % 3) as u32 + 1,
            atoms: atoms(4),
            max_deps: 3,
            rng: rng(5000 + i as u64),
        };
        let f = s.truth();
        let mut avoid = f.support();
        avoid.insert(a);
        let b = fresh(&avoid);
        let moved = f.act(&swap(b, a)) != f;
        if moved != f.support().contains(&a) {
            return Err(format!("table case {i}: {f:?} at {a}"));
        }
    }
    Ok("1000 formulas, 1000 tables".into())
}

fn small_budget() -> ProverBudget {
    ProverBudget {
        max_depth: 4,
        max_nodes: 1500,
        ..ProverBudget::default()
    }
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// The seed formula and pairs for golden sketch run `i`.
pub fn sketch_case(i: u64) -> (Formula, Vec<(Atom, Formula)>) {
    let mut gen = SyntaxGen::new(&demo_signature(), atoms(3));
    gen.term_depth = 1;
    gen.allow_equality = false;
    let seed = gen.formula(&mut rng(300 + i), 2);
    (seed, sketch_pairs(&demo_signature(), 400 + i, 6))
}

fn c10_filters() -> Outcome {
    let b = small_budget();
    let mut gen = SyntaxGen::new(&demo_signature(), atoms(3));
    gen.term_depth = 1;
    let mut r = rng(13);

    for i in 0..500 {
        let p = upset(&gen.formula(&mut r, 2), &b);
        let (u, a, phi) = (gen.term(&mut r), gen.atom(&mut r), gen.formula(&mut r, 2));
        let q = points_amgis(&p, &u, a);
        if q.member(&phi) != p.member(&subst_formula(&phi, a, &u)) {
            return Err(format!("amgis-image membership case {i}: `{phi}`"));
        }
    }

    let mut exercised = 0;
    for i in 0..50 {
        let p = upset(&gen.atomic(&mut r), &b);
        let (u, a) = (gen.term(&mut r), gen.atom(&mut r));
        let universe: Vec<Formula> = (0..6).map(|_| gen.formula(&mut r, 1)).collect();
        let image: Vec<Formula> = universe.iter().map(|f| subst_formula(f, a, &u)).collect();
        if !filter_check(&p, &image, &b).passed() {
            continue;
        }
        exercised += 1;
        let q = points_amgis(&p, &u, a);
        let entails = |x: &Formula, y: &Formula| {
            prove(
                &Sequent::new([subst_formula(x, a, &u)], [subst_formula(y, a, &u)]),
                &b,
            )
            .is_ok()
        };
        let report = filter_check_with(&q, &universe, &b, &entails);
        if !report.passed() {
            return Err(format!("filter preservation case {i}:\n{report}"));
        }
    }
    if exercised < 25 {
        return Err(format!(
            "only {exercised} of 50 preservation samples exercised"
        ));
    }

    let mut steps = 0;
    for i in 0..10 {
        let (seed, pairs) = sketch_case(i);
        let mut last: Option<PointSketch> = None;
        for n in 1..=pairs.len() {
            let Ok(s) = point_sketch(&seed, &pairs[..n], &b) else {
                break;
            };
            if let Some(f) = s.disjointness_violation() {
                return Err(format!("sketch {i} step {n}: `{f}` on both sides"));
            }
            steps += 1;
            last = Some(s);
        }
        let path = golden_dir().join(format!("sketch_{i}.txt"));
        let got = last
            .map(|s| s.transcript())
            .unwrap_or_else(|| "INCONSISTENT SEED\n".into());
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(_) => {
                return Err(format!(
                    "golden transcript {} changed:\n{got}",
                    path.display()
                ))
            }
            Err(_) if std::env::var_os("BLESS").is_some() => {
                std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
                std::fs::write(&path, &got).map_err(|e| e.to_string())?;
            }
            Err(e) => return Err(format!("{}: {e}", path.display())),
        }
    }
    Ok(format!(
        "500 amgis-image memberships, {exercised}/50 preservation, {steps} sketch steps, 10 golden transcripts"
    ))
}

fn c11_precedent() -> Outcome {
    suite_outcome(&suites::precedent(4))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("sigma axioms on terms, formulas and the lift", c1_sigma),
        ("amgis-sigma on term powersets", c2_amgis),
        ("FOLeq laws on the lift", c3_foleq),
        ("soundness of derivable sequents", c4_soundness),
        ("lifted and brute-force semantics agree", c5_agreement),
        ("substitution commutes with interpretation", c6_sub_commute),
        ("fresh-finite limit as a finite meet", c7_freshmeet),
        ("prover and countermodel search consistent", c8_consistency),
        ("support matches the swap test", c9_support),
        ("filter machinery", c10_filters),
        ("fresh-part criterion for atom sets", c11_precedent),
    ];
    let filter = std::env::args().nth(1).filter(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if filter.as_deref().is_some_and(|f| f != id) {
            continue;
        }
        match check() {
            Ok(detail) => println!("CRITERION {id:>2} PASS  {name} ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("CRITERION {id:>2} FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

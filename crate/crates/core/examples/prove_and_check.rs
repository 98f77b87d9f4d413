//! Bounded proof search, independent checking, and the proof file format.

use nomsem::gen::demo_signature;
use nomsem::sequent::{check_proof, prove, read_proof, write_proof, ProverBudget, Sequent};
use nomsem::syntax::{AtomNames, SigMode};

fn main() {
    let sig = demo_signature();
    for text in [
        "a = b, P(f(a)) |- P(f(b))",
        "forall a. (P(a) /\\ Q(a)) |- forall b. P(b)",
        "|- ~(forall a. P(a)) \\/ P(c)",
        "P(a) |- P(b)",
    ] {
        let mut names = AtomNames::default();
        let s = Sequent::parse(text, SigMode::Fixed(&sig), &mut names).unwrap();
        match prove(&s, &ProverBudget::with_depth(4)) {
            Ok(p) => {
                check_proof(&p).unwrap();
                println!(
                    "{text}\n  proved: {} nodes, height {}",
                    p.size(),
                    p.height()
                );
                let file = write_proof(&p, &sig);
                let (back, _) = read_proof(&file, None).unwrap();
                assert!(check_proof(&back).is_ok());
            }
            Err(e) => println!("{text}\n  not found ({} nodes searched)", e.stats.nodes),
        }
    }

    let mut names = AtomNames::default();
    let s = Sequent::parse("a = b |- b = a", SigMode::Fixed(&sig), &mut names).unwrap();
    print!(
        "{}",
        write_proof(&prove(&s, &ProverBudget::default()).unwrap(), &sig)
    );
}

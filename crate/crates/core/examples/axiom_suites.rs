//! Every named axiom suite at a small sample size.

use nomsem::suites::{run_suite, SUITE_NAMES};

fn main() {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    for name in SUITE_NAMES {
        let report = run_suite(name, n, 0).unwrap();
        println!("== {name}");
        print!("{report}");
    }
}

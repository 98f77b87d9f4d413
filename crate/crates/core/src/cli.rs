//! The `nomsem` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use clap::{Args, Parser, Subcommand};

use crate::filter::{point_sketch, sketch_pairs};
use crate::foleq::Interpretation;
use crate::gen::demo_signature;
use crate::sequent::{
    check_proof, find_countermodel, herbrand_equiv, prove, read_proof, write_proof, Herbrand,
    HerbrandBudget, NoCountermodel, ProverBudget, Sequent,
};
use crate::sigma::SuiteReport;
use crate::suites::{run_suite, SUITE_NAMES};
use crate::syntax::{
    canonical, free_atoms, parse_formula_with, parse_signature, parse_term_with, pretty_formula,
    AtomNames, Formula, SigMode, Signature,
};
use crate::tarski::{
    lift_interpretation, rows, OrdinaryModel, TableFun, Valuation, DEFAULT_WIDTH_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "nomsem",
    version,
    about = "Nominal semantics workbench for first-order logic with equality"
)]
pub struct Cli {
    /// Line-oriented output for scripts.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SigArg {
    /// Signature file of `fun NAME ARITY` / `pred NAME ARITY` lines.
    /// Without it, symbols are inferred from the input.
    #[arg(long = "sig", value_name = "PATH")]
    pub sig: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Instantiation steps (`∀L`, `=L`, `=R`) allowed per branch.
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    /// Search nodes before giving up.
    #[arg(long, default_value_t = 20_000)]
    pub max_nodes: usize,
    /// Non-invertible alternatives per node.
    #[arg(long, default_value_t = 12)]
    pub branching: usize,
    /// Instantiation terms, separated by `;` (default: subterms, constants
    /// and one fresh atom).
    #[arg(long, value_name = "TERMS")]
    pub universe: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print its normal form, free atoms and symbols.
    Parse {
        formula: String,
        #[command(flatten)]
        sig: SigArg,
    },
    /// Print the lifted denotation of a formula in a finite model.
    Eval {
        formula: String,
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[command(flatten)]
        sig: SigArg,
    },
    /// Search for a proof of `φ1, ... |- ψ1, ...`.
    Prove {
        sequent: String,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a proof file.
    Check {
        proof: PathBuf,
        #[command(flatten)]
        sig: SigArg,
    },
    /// Search for a finite model refuting a sequent.
    Countermodel {
        sequent: String,
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, default_value_t = 2)]
        max_k: u32,
        #[arg(long, default_value_t = 100_000)]
        max_models: usize,
    },
    /// Decide interprovability of two formulas within a budget.
    Equiv {
        left: String,
        right: String,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 2)]
        max_k: u32,
    },
    /// Run an axiom suite, or `all` of them.
    Axioms {
        suite: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Suites to run concurrently for `all`.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the first steps of the prime filter chain from a seed formula.
    Sketch {
        seed_formula: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

type Res = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command, writing to
/// `out` and `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Res {
    let m = cli.machine;
    match &cli.command {
        Command::Parse { formula, sig } => cmd_parse(formula, sig, m, out),
        Command::Eval {
            formula,
            model,
            sig,
        } => cmd_eval(formula, model, sig, m, out),
        Command::Prove {
            sequent,
            sig,
            budget,
        } => cmd_prove(sequent, sig, budget, m, out),
        Command::Check { proof, sig } => cmd_check(proof, sig, m, out),
        Command::Countermodel {
            sequent,
            sig,
            max_k,
            max_models,
        } => cmd_countermodel(sequent, sig, *max_k, *max_models, m, out),
        Command::Equiv {
            left,
            right,
            sig,
            budget,
            max_k,
        } => cmd_equiv(left, right, sig, budget, *max_k, m, out),
        Command::Axioms {
            suite,
            n,
            seed,
            jobs,
        } => cmd_axioms(suite, *n, *seed, *jobs, out),
        Command::Sketch {
            seed_formula,
            steps,
            seed,
            sig,
            budget,
        } => cmd_sketch(seed_formula, *steps, *seed, sig, budget, out),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_FAILED,
        msg: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_sig(arg: &SigArg) -> Result<Option<Signature>, Failure> {
    arg.sig
        .as_deref()
        .map(|p| parse_signature(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display()))))
        .transpose()
}

/// A parse context: either a fixed signature or one inferred from input.
struct Ctx {
    sig: Signature,
    fixed: bool,
    names: AtomNames,
}

impl Ctx {
    fn new(sig: Option<Signature>) -> Self {
        Ctx {
            fixed: sig.is_some(),
            sig: sig.unwrap_or_default(),
            names: AtomNames::new(),
        }
    }

    fn parts(&mut self) -> (SigMode<'_>, &mut AtomNames) {
        let mode = if self.fixed {
            SigMode::Fixed(&self.sig)
        } else {
            SigMode::Infer(&mut self.sig)
        };
        (mode, &mut self.names)
    }

    fn formula(&mut self, text: &str) -> Result<Formula, Failure> {
        let (mode, names) = self.parts();
        parse_formula_with(text, mode, names).map_err(|e| usage(format!("{e}")))
    }

    fn sequent(&mut self, text: &str) -> Result<Sequent, Failure> {
        let (mode, names) = self.parts();
        Sequent::parse(text, mode, names).map_err(|e| usage(format!("{e}")))
    }

    fn budget(&mut self, b: &BudgetArgs) -> Result<ProverBudget, Failure> {
        let term_universe = match &b.universe {
            None => None,
            Some(text) => {
                let mut terms = Vec::new();
                for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (mode, names) = self.parts();
                    let t = parse_term_with(part, mode, names)
                        .map_err(|e| usage(format!("--universe: {e}")))?;
                    terms.push(t);
                }
                Some(terms)
            }
        };
        Ok(ProverBudget {
            max_depth: b.depth,
            term_universe,
            max_branching: b.branching,
            max_nodes: b.max_nodes,
        })
    }

    fn atoms_comment(&self, atoms: impl IntoIterator<Item = crate::nominal::Atom>) -> String {
        let pairs: Vec<String> = atoms
            .into_iter()
            .map(|a| format!("{a}={}", self.names.name_of(a)))
            .filter(|s| {
                let (l, r) = s.split_once('=').expect("formatted with =");
                l != r
            })
            .collect();
        pairs.join(" ")
    }
}

fn cmd_parse(text: &str, sig: &SigArg, machine: bool, out: &mut dyn Write) -> Res {
    let mut ctx = Ctx::new(load_sig(sig)?);
    let phi = ctx.formula(text)?;
    let fa: Vec<String> = free_atoms(&phi)
        .into_iter()
        .map(|a| ctx.names.name_of(a))
        .collect();
    let canon = pretty_formula(&canonical(&phi), &ctx.names);
    let syms = Signature::of_formulas([&phi]);
    let mut decls = Vec::new();
    for (f, n) in syms.functions() {
        decls.push(format!("fun {f} {n}"));
    }
    for (p, n) in syms.predicates() {
        decls.push(format!("pred {p} {n}"));
    }
    if machine {
        writeln!(out, "FORMULA {}", pretty_formula(&phi, &ctx.names)).map_err(io)?;
        writeln!(out, "CANONICAL {canon}").map_err(io)?;
        writeln!(out, "FREE {}", fa.join(" ")).map_err(io)?;
        for d in decls {
            writeln!(out, "SYMBOL {d}").map_err(io)?;
        }
    } else {
        writeln!(out, "formula:   {}", pretty_formula(&phi, &ctx.names)).map_err(io)?;
        writeln!(out, "canonical: {canon}").map_err(io)?;
        writeln!(out, "free:      {{{}}}", fa.join(", ")).map_err(io)?;
        writeln!(out, "symbols:   {}", decls.join(", ")).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn cmd_eval(text: &str, model: &Path, sig: &SigArg, machine: bool, out: &mut dyn Write) -> Res {
    let declared = load_sig(sig)?;
    let m = OrdinaryModel::parse(&read(model)?, declared.as_ref())
        .map_err(|e| usage(format!("{}: {e}", model.display())))?;
    let mut ctx = Ctx::new(Some(declared.unwrap_or_else(|| m.signature())));
    let phi = ctx.formula(text)?;
    m.covers(&Signature::of_formulas([&phi]))
        .map_err(|e| usage(format!("{}: {e}", model.display())))?;
    let width = free_atoms(&phi).len();
    if width > DEFAULT_WIDTH_LIMIT {
        return Err(usage(format!(
            "{width} free atoms exceeds the table width limit of {DEFAULT_WIDTH_LIMIT}"
        )));
    }
    let interp: Interpretation<_> = lift_interpretation(&m);
    let tf: TableFun<bool> = interp.interpret(&phi).map_err(|e| usage(e.to_string()))?;
    let deps: Vec<String> = tf.deps().iter().map(|&a| ctx.names.name_of(a)).collect();
    let support: Vec<String> = tf
        .support()
        .into_iter()
        .map(|a| ctx.names.name_of(a))
        .collect();
    let table: Vec<&str> = tf.table().iter().map(|&b| bit(b)).collect();
    if machine {
        writeln!(out, "DEPS {}", deps.join(" ")).map_err(io)?;
        for (row, v) in rows(m.k, deps.len()).zip(tf.table()) {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(out, "ROW {} -> {}", cells.join(" "), bit(*v)).map_err(io)?;
        }
        writeln!(out, "SUPPORT {}", support.join(" ")).map_err(io)?;
    } else {
        writeln!(
            out,
            "deps: [{}]  table: [{}]  support: {{{}}}",
            deps.join(", "),
            table.join(", "),
            support.join(", ")
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_prove(text: &str, sig: &SigArg, b: &BudgetArgs, machine: bool, out: &mut dyn Write) -> Res {
    let mut ctx = Ctx::new(load_sig(sig)?);
    let s = ctx.sequent(text)?;
    let budget = ctx.budget(b)?;
    match prove(&s, &budget) {
        Ok(p) => {
            let names = ctx.atoms_comment(s.free_atoms());
            if machine {
                writeln!(out, "PROVED height={} size={}", p.height(), p.size()).map_err(io)?;
            } else if !names.is_empty() {
                writeln!(out, "; atoms: {names}").map_err(io)?;
            }
            out.write_all(write_proof(&p, &ctx.sig).as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "UNKNOWN").map_err(io)?;
            writeln!(
                out,
                "; {} nodes, {} cache hits{}",
                e.stats.nodes,
                e.stats.cache_hits,
                if e.stats.exhausted {
                    ", node budget exhausted"
                } else {
                    ""
                }
            )
            .map_err(io)?;
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn cmd_check(path: &Path, sig: &SigArg, machine: bool, out: &mut dyn Write) -> Res {
    let declared = load_sig(sig)?;
    let text = read(path)?;
    let (p, _) = read_proof(&text, declared.as_ref())
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    match check_proof(&p) {
        Ok(()) => {
            if machine {
                writeln!(out, "CHECK ok nodes={} height={}", p.size(), p.height()).map_err(io)?;
            } else {
                writeln!(
                    out,
                    "valid proof of {} ({} nodes, height {})",
                    p.conclusion,
                    p.size(),
                    p.height()
                )
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            let path: Vec<String> = e.path.iter().map(usize::to_string).collect();
            let at = if path.is_empty() {
                "root".to_string()
            } else {
                path.join(".")
            };
            if machine {
                writeln!(
                    out,
                    "CHECK fail node={at} rule={} reason={}",
                    e.rule, e.reason
                )
                .map_err(io)?;
            } else {
                writeln!(out, "invalid at node {at} ({}): {}", e.rule, e.reason).map_err(io)?;
            }
            Ok(EXIT_FAILED)
        }
    }
}

fn valuation_line(v: &Valuation, atoms: &[crate::nominal::Atom], names: &AtomNames) -> String {
    let cells: Vec<String> = atoms
        .iter()
        .map(|&a| format!("{}={}", names.name_of(a), v.lookup(a)))
        .collect();
    cells.join(", ")
}

fn print_model(
    m: &OrdinaryModel,
    v: &Valuation,
    atoms: &[crate::nominal::Atom],
    names: &AtomNames,
    machine: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if machine {
        writeln!(out, "DOMAIN {}", m.k).map_err(io)?;
        for (f, (n, t)) in &m.funs {
            let vals: Vec<String> = t.iter().map(u32::to_string).collect();
            writeln!(out, "FUN {f}/{n} {}", vals.join(" ")).map_err(io)?;
        }
        for (p, (n, t)) in &m.preds {
            let vals: Vec<&str> = t.iter().map(|&b| bit(b)).collect();
            writeln!(out, "PRED {p}/{n} {}", vals.join(" ")).map_err(io)?;
        }
        for &a in atoms {
            writeln!(out, "VALUE {} {}", names.name_of(a), v.lookup(a)).map_err(io)?;
        }
    } else {
        write!(out, "{m}").map_err(io)?;
        let line = if atoms.is_empty() {
            "none".to_string()
        } else {
            valuation_line(v, atoms, names)
        };
        writeln!(out, "# valuation: {line}").map_err(io)?;
    }
    Ok(())
}

fn cmd_countermodel(
    text: &str,
    sig: &SigArg,
    max_k: u32,
    max_models: usize,
    machine: bool,
    out: &mut dyn Write,
) -> Res {
    if max_k == 0 {
        return Err(usage("--max-k must be at least 1"));
    }
    let mut ctx = Ctx::new(load_sig(sig)?);
    let s = ctx.sequent(text)?;
    let atoms: Vec<_> = s.free_atoms().into_iter().collect();
    match find_countermodel(&s, max_k, max_models) {
        Ok((m, v)) => {
            print_model(&m, &v, &atoms, &ctx.names, machine, out)?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "NOT-FOUND").map_err(io)?;
            writeln!(out, "# {e}").map_err(io)?;
            Ok(match e {
                NoCountermodel::Exhausted { .. } | NoCountermodel::Budget { .. } => EXIT_UNKNOWN,
            })
        }
    }
}

fn cmd_equiv(
    left: &str,
    right: &str,
    sig: &SigArg,
    b: &BudgetArgs,
    max_k: u32,
    machine: bool,
    out: &mut dyn Write,
) -> Res {
    let mut ctx = Ctx::new(load_sig(sig)?);
    let phi = ctx.formula(left)?;
    let psi = ctx.formula(right)?;
    let budget = HerbrandBudget {
        prover: ctx.budget(b)?,
        max_k,
        ..HerbrandBudget::default()
    };
    match herbrand_equiv(&phi, &psi, &budget) {
        Herbrand::Equivalent(pair) => {
            writeln!(out, "EQUIVALENT").map_err(io)?;
            if !machine {
                out.write_all(write_proof(&pair.0, &ctx.sig).as_bytes())
                    .map_err(io)?;
                out.write_all(write_proof(&pair.1, &ctx.sig).as_bytes())
                    .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Herbrand::Distinct(m, v) => {
            writeln!(out, "DISTINCT").map_err(io)?;
            let mut atoms = free_atoms(&phi);
            atoms.extend(free_atoms(&psi));
            let atoms: Vec<_> = atoms.into_iter().collect();
            print_model(&m, &v, &atoms, &ctx.names, machine, out)?;
            Ok(EXIT_FAILED)
        }
        Herbrand::Unknown => {
            writeln!(out, "UNKNOWN").map_err(io)?;
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn cmd_axioms(suite: &str, n: usize, seed: u64, jobs: usize, out: &mut dyn Write) -> Res {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        return Err(usage(format!(
            "unknown suite `{suite}`; expected one of: all, {}",
            SUITE_NAMES.join(", ")
        )));
    };
    let jobs = jobs.max(1);
    let mut reports: Vec<SuiteReport> = Vec::with_capacity(names.len());
    for chunk in names.chunks(jobs) {
        let batch: Vec<SuiteReport> = thread::scope(|s| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|name| s.spawn(move || run_suite(name, n, seed).expect("known suite")))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect()
        });
        reports.extend(batch);
    }
    let mut ok = true;
    for r in &reports {
        write!(out, "{r}").map_err(io)?;
        ok &= r.all_passed();
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_sketch(
    text: &str,
    steps: usize,
    seed: u64,
    sig: &SigArg,
    b: &BudgetArgs,
    out: &mut dyn Write,
) -> Res {
    let declared = load_sig(sig)?;
    let mut ctx = Ctx::new(declared);
    let phi = ctx.formula(text)?;
    let budget = ctx.budget(b)?;
    let pair_sig = if ctx.sig.predicates().next().is_some() {
        ctx.sig.clone()
    } else {
        demo_signature()
    };
    let pairs = sketch_pairs(&pair_sig, seed, steps);
    let sketch = point_sketch(&phi, &pairs, &budget).map_err(|e| Failure {
        code: EXIT_FAILED,
        msg: e.to_string(),
    })?;
    out.write_all(sketch.transcript().as_bytes()).map_err(io)?;
    let disjoint = sketch.disjointness_violation();
    match &disjoint {
        None => writeln!(out, "DISJOINT yes queried={}", sketch.queried.len()).map_err(io)?,
        Some(f) => writeln!(out, "DISJOINT no witness={f}").map_err(io)?,
    }
    let undecided = sketch
        .steps
        .last()
        .is_some_and(|s| s.side == crate::filter::Side::Undecided);
    Ok(if disjoint.is_some() {
        EXIT_FAILED
    } else if undecided {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("nomsem").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["axioms", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["prove", "P(a) |-- "]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn prove_and_unknown() {
        let (code, out, _) = run_str(&["prove", "|- forall a. (P(a) \\/ ~ P(a))", "--depth", "6"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("(AllR"));
        let (code, out, _) = run_str(&["prove", "|- P(a)"]);
        assert_eq!(code, EXIT_UNKNOWN);
        assert!(out.starts_with("UNKNOWN"));
    }

    #[test]
    fn countermodel_k1() {
        let (code, out, _) = run_str(&["countermodel", "|- P(a)", "--max-k", "1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "domain 1\npred P/1 : 0\n# valuation: a=0\n");
    }

    #[test]
    fn parse_command() {
        let (code, out, _) = run_str(&["--machine", "parse", "forall x. R(x, y)"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("FREE y\n"), "{out}");
        assert!(out.contains("SYMBOL pred R 2"));
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fuzzsim::format::{parse_relation, to_pretty_json, AutomatonFile, Num, ResultFile};
use fuzzsim::{
    check_conditions, greatest_crisp_simulation, greatest_simulation, Boolean, Chain, Error, FuzzyAutomaton, Godel,
    LatticeKind, Lukasiewicz, Product, ResiduatedLattice, SimulationType, Status, DEFAULT_CAP,
};
use serde_json::json;

const EXIT_NONE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Simulations and bisimulations between fuzzy automata.
#[derive(Parser)]
#[command(name = "fuzzsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the greatest relation of a type between two automata.
    Compute {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opts: TypeOpts,
        /// Restrict to crisp relations.
        #[arg(long)]
        crisp: bool,
        /// Maximum number of iterates.
        #[arg(long, env = "FUZZSIM_CAP", default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(usize))]
        cap: usize,
    },
    /// Evaluate the defining conditions of a type for a given relation.
    Check {
        a: PathBuf,
        b: PathBuf,
        relation: PathBuf,
        #[command(flatten)]
        opts: TypeOpts,
    },
    /// Print the degree to which an automaton accepts a word.
    Degree {
        a: PathBuf,
        /// Space-separated letters; empty for the empty word.
        word: String,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

#[derive(Args)]
struct TypeOpts {
    /// One of fs, bs, fb, bb, fbb, bfb.
    #[arg(long = "type", short = 't')]
    kind: SimulationType,
    /// Equality tolerance for real-valued lattices.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug)]
struct Failure(Vec<String>);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidAutomaton(diags) => Failure(diags.iter().map(ToString::to_string).collect()),
            other => Failure(vec![other.to_string()]),
        }
    }
}

/// Writes a result line; a closed stdout is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn fail(msg: impl Into<String>) -> Failure {
    Failure(vec![msg.into()])
}

fn in_file(path: &Path) -> impl Fn(Failure) -> Failure + '_ {
    move |f| Failure(f.0.into_iter().map(|m| format!("{}: {m}", path.display())).collect())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load_file(path: &Path) -> Result<AutomatonFile, Failure> {
    AutomatonFile::from_json(&read(path)?).map_err(|e| in_file(path)(e.into()))
}

fn load<L: ResiduatedLattice>(file: &AutomatonFile, path: &Path, lattice: &L) -> Result<FuzzyAutomaton<L>, Failure> {
    file.to_automaton(lattice.clone()).map_err(|e| in_file(path)(e.into()))
}

/// Work that needs a concrete lattice, run once the kind is known.
trait Job {
    fn run<L: ResiduatedLattice>(self, lattice: L) -> Result<u8, Failure>;
}

fn dispatch(kind: LatticeKind, tolerance: Option<f64>, job: impl Job) -> Result<u8, Failure> {
    let exact_only = |name: &str| fail(format!("--tolerance is not accepted for the {name} lattice"));
    match kind {
        LatticeKind::Boolean => match tolerance {
            Some(_) => Err(exact_only("boolean")),
            None => job.run(Boolean),
        },
        LatticeKind::Chain { n } => match tolerance {
            Some(_) => Err(exact_only("chain")),
            None => job.run(Chain::new(n).map_err(|e| fail(e.to_string()))?),
        },
        LatticeKind::Godel => job.run(match tolerance {
            Some(t) => Godel::with_tolerance(t).map_err(|e| fail(e.to_string()))?,
            None => Godel::new(),
        }),
        LatticeKind::Lukasiewicz => job.run(match tolerance {
            Some(t) => Lukasiewicz::with_tolerance(t).map_err(|e| fail(e.to_string()))?,
            None => Lukasiewicz::new(),
        }),
        LatticeKind::Product => job.run(match tolerance {
            Some(t) => Product::with_tolerance(t).map_err(|e| fail(e.to_string()))?,
            None => Product::new(),
        }),
    }
}

fn shared_kind(a: &AutomatonFile, b: &AutomatonFile) -> Result<LatticeKind, Failure> {
    if a.lattice != b.lattice {
        return Err(fail(format!("automata use different lattices ({} and {})", a.lattice, b.lattice)));
    }
    Ok(a.lattice)
}

struct ComputeJob<'a> {
    files: [(&'a Path, &'a AutomatonFile); 2],
    w: SimulationType,
    crisp: bool,
    cap: usize,
}

impl Job for ComputeJob<'_> {
    fn run<L: ResiduatedLattice>(self, l: L) -> Result<u8, Failure> {
        let [(pa, fa), (pb, fb)] = self.files;
        let (a, b) = (load(fa, pa, &l)?, load(fb, pb, &l)?);
        let out = if self.crisp {
            greatest_crisp_simulation(self.w, &a, &b)?
        } else {
            greatest_simulation(self.w, &a, &b, self.cap)?
        };
        emit(&ResultFile::from_outcome(self.w, &out).to_json());
        Ok(match out.status {
            Status::Greatest => 0,
            Status::NoSimulation => EXIT_NONE,
            Status::CapReached => EXIT_CAP,
        })
    }
}

struct CheckJob<'a> {
    files: [(&'a Path, &'a AutomatonFile); 2],
    relation: &'a Path,
    w: SimulationType,
}

impl Job for CheckJob<'_> {
    fn run<L: ResiduatedLattice>(self, l: L) -> Result<u8, Failure> {
        let [(pa, fa), (pb, fb)] = self.files;
        let (a, b) = (load(fa, pa, &l)?, load(fb, pb, &l)?);
        let rel = parse_relation(&l, &read(self.relation)?).map_err(|e| in_file(self.relation)(e.into()))?;
        let r = check_conditions(self.w, &a, &b, &rel)?;
        let w = self.w.tag();
        let report = json!({
            "type": w,
            "holds": r.holds(),
            "conditions": {
                format!("{w}-1"): r.w1,
                format!("{w}-2"): r.w2,
                format!("{w}-3"): r.w3,
            },
            "post_fixed_point": r.post_fixed_point,
            "below_psi": r.below_psi,
            "forms_agree": r.forms_agree(),
        });
        emit(&to_pretty_json(&report));
        if !r.forms_agree() {
            eprintln!("warning: literal conditions and the fixed-point form disagree within tolerance");
        }
        Ok(if r.holds() { 0 } else { EXIT_NONE })
    }
}

struct DegreeJob<'a> {
    file: (&'a Path, &'a AutomatonFile),
    word: Vec<&'a str>,
}

impl Job for DegreeJob<'_> {
    fn run<L: ResiduatedLattice>(self, l: L) -> Result<u8, Failure> {
        let a = load(self.file.1, self.file.0, &l)?;
        let d = a.language_degree(&self.word)?;
        emit(&serde_json::to_string(&Num(l.to_number(d))).expect("serializable"));
        Ok(0)
    }
}

fn execute(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { a, b, opts, crisp, cap } => {
            if cap == 0 {
                return Err(fail("--cap must be at least 1"));
            }
            let (fa, fb) = (load_file(&a)?, load_file(&b)?);
            let kind = shared_kind(&fa, &fb)?;
            let job = ComputeJob { files: [(&a, &fa), (&b, &fb)], w: opts.kind, crisp, cap };
            dispatch(kind, opts.tolerance, job)
        }
        Command::Check { a, b, relation, opts } => {
            let (fa, fb) = (load_file(&a)?, load_file(&b)?);
            let kind = shared_kind(&fa, &fb)?;
            let job = CheckJob { files: [(&a, &fa), (&b, &fb)], relation: &relation, w: opts.kind };
            dispatch(kind, opts.tolerance, job)
        }
        Command::Degree { a, word, tolerance } => {
            let fa = load_file(&a)?;
            let job = DegreeJob { file: (&a, &fa), word: word.split_whitespace().collect() };
            dispatch(fa.lattice, tolerance, job)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msgs)) => {
            for m in msgs {
                eprintln!("error: {m}");
            }
            ExitCode::from(EXIT_USAGE)
        }
    }
}

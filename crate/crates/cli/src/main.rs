//! `modmat`: command-line access to the matroid toolkit.
//!
//! Exit codes: 0 success, 1 a counterexample or failed check, 2 usage
//! errors, 3 malformed input files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modmat::battery::{self, Config, Status};
use modmat::connectivity::{
    contraction_pairs, deletion_pairs, find_fans, is_3_connected, is_connected, is_internally_3_connected,
    is_vertically_4_connected, kappa_with_side, lambda, linking_witness, local_conn,
};
use modmat::dualization::{coupling_for_basis, dualize};
use modmat::harness::{self, Finding, HarnessError, Verdict};
use modmat::matroid::{
    make_ag, make_graphic, make_pg, make_uniform, read_matroid_file, read_representation, write_matroid_file, Backend,
    FileError,
};
use modmat::modularity::{
    decompose_on_modular_restriction, glued_planes, modular_sum, modular_violation, modularity_by_minor_search,
};
use modmat::representation::{
    count_inequivalent_extensions, count_representations, distinguishing_strands, extend_representation,
    find_representation, strands, Equivalence,
};
use modmat::{Matroid, Subset};

#[derive(Parser)]
#[command(name = "modmat", version, about = "Matroids over small finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground size, rank, backend and connectivity.
    Info { file: PathBuf },
    /// The connectivity function of a set.
    Lambda {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
    },
    /// Local connectivity of two sets.
    Pi {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        b: Vec<String>,
    },
    /// The connectivity between two disjoint sets, minimized over separations.
    Kappa {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        s: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        t: Vec<String>,
        /// Also print a contraction set achieving the value.
        #[arg(long)]
        witness: bool,
    },
    /// All flats with their ranks.
    Flats { file: PathBuf },
    Circuits { file: PathBuf },
    Cocircuits { file: PathBuf },
    /// Maximal fans, one per element set.
    Fans { file: PathBuf },
    /// Whether a restriction is modular.
    Modular {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
        /// Use the characterization by minors instead of flats.
        #[arg(long)]
        by_minors: bool,
    },
    /// Modular sum of two matroids along their common labels.
    Modsum {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// Splits a matroid along a modular restriction.
    Decompose {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        n: Vec<String>,
    },
    /// Builds the dual-like partner of a matroid with a projective plane.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        field: u32,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// Finds, extends or counts representations over GF(q).
    Represent(RepresentArgs),
    /// Deletion (or contraction) pairs of a 3-connected matroid.
    Pairs {
        file: PathBuf,
        #[arg(long)]
        contraction: bool,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        exclude: Vec<String>,
    },
    /// Minimal strands of a set, or the strands distinguishing two matroids.
    Strands {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        n: Vec<String>,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Writes a standard matroid to a file.
    Make {
        #[command(subcommand)]
        what: Make,
    },
    /// Checks one structural statement on one matroid.
    Check {
        which: CheckKind,
        file: PathBuf,
        #[arg(long)]
        field: u32,
        /// For thm1.2: the labels of the plane restriction.
        #[arg(long, value_delimiter = ',', num_args = 1.., requires = "rep")]
        n: Vec<String>,
        /// For thm1.2: a representation of the plane restriction.
        #[arg(long, requires = "n")]
        rep: Option<PathBuf>,
    },
    /// Runs every property suite and prints the report.
    VerifyPaper {
        #[arg(long, default_value_t = battery::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct RepresentArgs {
    file: PathBuf,
    #[arg(long)]
    field: u32,
    /// A representation of a restriction to extend.
    #[arg(long, requires = "n")]
    extend: Option<PathBuf>,
    /// Labels of the restriction represented by `--extend`.
    #[arg(long, value_delimiter = ',', num_args = 1.., requires = "extend")]
    n: Vec<String>,
    /// Count inequivalent representations instead of printing one.
    #[arg(long)]
    count_classes: bool,
    /// With `--count-classes`, identify classes related by a field automorphism.
    #[arg(long, requires = "count_classes")]
    automorphisms: bool,
}

#[derive(Subcommand)]
enum Make {
    /// The projective geometry PG(dim, q).
    Pg {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// The affine geometry AG(dim, q).
    Ag {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// The uniform matroid U(r, n).
    Uniform {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// The cycle matroid of a graph on vertices 0..v.
    Graphic {
        #[arg(long)]
        vertices: usize,
        /// Edges as `u-v`, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        edges: Vec<String>,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// PG(2,p) glued to PG(2,q) along a line.
    Glued {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        p: u32,
        #[arg(short, long)]
        o: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    #[value(name = "thm1.1")]
    Thm11,
    #[value(name = "thm1.2")]
    Thm12,
    #[value(name = "cor1.3")]
    Cor13,
    Excluded,
    Seymour,
}

/// Writes a line to stdout, exiting quietly once the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

enum CliError {
    Usage(String),
    Parse(String),
    Failed(String),
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> CliError {
        if e.is_parse() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

macro_rules! failed_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Failed(e.to_string())
            }
        }
    )*};
}

failed_from!(
    modmat::matroid::MatroidError,
    modmat::modularity::ModError,
    modmat::representation::RepError,
    modmat::dualization::DualError,
    modmat::connectivity::ConnError,
    HarnessError
);

type Outcome = Result<bool, CliError>;

fn load(path: &Path) -> Result<Matroid, CliError> {
    Ok(read_matroid_file(path)?)
}

fn set_of(m: &Matroid, labels: &[String]) -> Result<Subset, CliError> {
    m.subset(labels).map_err(|e| CliError::Usage(e.to_string()))
}

fn show(m: &Matroid, s: Subset) -> String {
    format!("{{{}}}", m.names(s).join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn save(path: &Path, m: &Matroid) -> Result<(), CliError> {
    write_matroid_file(path, m)?;
    out!("wrote {} n={} rank={}", path.display(), m.len(), m.full_rank());
    Ok(())
}

fn info(m: &Matroid) {
    out!("n={} rank={} 3-connected={}", m.len(), m.full_rank(), yes(is_3_connected(m)));
    let backend = match m.backend() {
        Backend::Linear(a) => format!("linear GF({})", a.field().order()),
        b => b.name().to_string(),
    };
    out!("backend={backend}");
    out!(
        "connected={} internally-3-connected={} vertically-4-connected={} simple={}",
        yes(is_connected(m)),
        yes(is_internally_3_connected(m).is_ok()),
        yes(is_vertically_4_connected(m).is_ok()),
        yes(m.is_simple())
    );
}

fn print_sets(m: &Matroid, sets: impl IntoIterator<Item = Subset>) {
    for s in sets {
        out!("{}", show(m, s));
    }
}

fn finding(f: &Finding, id: &str) -> bool {
    out!("{}", f.line(id));
    !f.verdict.is_counterexample()
}

/// Turns harness precondition errors into NOT-APPLICABLE findings.
fn or_not_applicable(check: &'static str, r: Result<Finding, HarnessError>) -> Result<Finding, CliError> {
    match r {
        Ok(f) => Ok(f),
        Err(HarnessError::PreconditionFailed(h)) => {
            Ok(Finding { check, details: format!("hypothesis=({h})"), verdict: Verdict::NotApplicable(h) })
        }
        Err(e) => Err(e.into()),
    }
}

fn check(which: CheckKind, file: &Path, q: u32, n: &[String], rep: Option<&Path>) -> Outcome {
    let m = load(file)?;
    let id = file.display().to_string();
    let f = match which {
        CheckKind::Thm11 => harness::check_theorem_1_1(&m, q),
        CheckKind::Cor13 => or_not_applicable("cor1.3", harness::check_corollary_1_3(&m, q))?,
        CheckKind::Excluded => harness::check_excluded_minor(&m, q),
        CheckKind::Seymour => harness::seymour_check(&m),
        CheckKind::Thm12 => {
            let (plane, a) = match rep {
                Some(path) => (set_of(&m, n)?, read_representation(path)?.0),
                None => match harness::find_plane(&m, q) {
                    None => {
                        let h = format!("has-PG(2,{q})-restriction");
                        let f = Finding { check: "thm1.2", details: format!("hypothesis={h}"), verdict: Verdict::NotApplicable(h) };
                        return Ok(finding(&f, &id));
                    }
                    Some((plane, _)) => {
                        let a = find_representation(&m.restrict(plane), q)?
                            .ok_or_else(|| CliError::Failed(format!("the PG(2,{q}) restriction has no representation")))?;
                        (plane, a.matrix)
                    }
                },
            };
            or_not_applicable("thm1.2", harness::check_theorem_1_2(&m, plane, q, &a))?
        }
    };
    Ok(finding(&f, &id))
}

fn represent(a: &RepresentArgs) -> Outcome {
    let m = load(&a.file)?;
    let q = a.field;
    let eq = if a.automorphisms { Equivalence::Geometric } else { Equivalence::Projective };
    match &a.extend {
        None if a.count_classes => {
            out!("classes={}", count_representations(&m, q, eq)?);
            Ok(true)
        }
        None => match find_representation(&m, q)? {
            Some(r) => {
                out!("{}", r.to_gfm().trim_end());
                Ok(true)
            }
            None => {
                out!("not representable over GF({q})");
                Ok(false)
            }
        },
        Some(path) => {
            let n = set_of(&m, &a.n)?;
            let (an, _) = read_representation(path)?;
            if a.count_classes {
                out!("classes={}", count_inequivalent_extensions(&m, n, &an, a.automorphisms)?);
                return Ok(true);
            }
            match extend_representation(&m, n, &an)? {
                Some(r) => {
                    out!("{}", r.to_gfm().trim_end());
                    Ok(true)
                }
                None => {
                    out!("the representation of {} does not extend over GF({q})", show(&m, n));
                    Ok(false)
                }
            }
        }
    }
}

fn dualize_cmd(file: &Path, q: u32, out: &Path) -> Outcome {
    let m0 = load(file)?;
    let Some((plane, _)) = harness::find_plane(&m0, q) else {
        return Err(CliError::Failed(format!("no PG(2,{q}) restriction")));
    };
    let rep = find_representation(&m0.restrict(plane), q)?
        .ok_or_else(|| CliError::Failed(format!("the PG(2,{q}) restriction has no representation")))?;
    let b0: Vec<&str> = rep.rows.iter().map(|&i| rep.matrix.labels()[i].as_str()).collect();
    let c = coupling_for_basis(q, &rep.matrix, &b0)?;
    let d = dualize(&m0, &c)?;
    let r = &d.report;
    out!(
        "plane={} n1-restriction={} n0-modular={} n1-modular={} lambda-n1={} internally-3-connected={} parallel-pairs-meet-n1={}",
        show(&m0, plane),
        yes(r.n1_is_restriction),
        yes(r.n0_modular_in_m0),
        yes(r.n1_modular_in_m1),
        r.lambda_n1,
        yes(r.internally_3_connected),
        yes(r.parallel_pairs_meet_n1)
    );
    save(out, &d.m1)?;
    Ok(r.holds())
}

fn make(what: &Make) -> Outcome {
    let (m, out) = match what {
        Make::Pg { dim, q, o } => (make_pg(*dim, *q)?, o),
        Make::Ag { dim, q, o } => (make_ag(*dim, *q)?, o),
        Make::Uniform { r, n, o } => (make_uniform(*r, *n)?, o),
        Make::Graphic { vertices, edges, o } => {
            let parsed: Result<Vec<(usize, usize)>, CliError> = edges
                .iter()
                .map(|e| {
                    let bad = || CliError::Usage(format!("bad edge `{e}`; expected u-v"));
                    let (u, v) = e.split_once('-').ok_or_else(bad)?;
                    Ok((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
                })
                .collect();
            (make_graphic(*vertices, &parsed?)?, o)
        }
        Make::Glued { q, p, o } => (glued_planes(*q, *p)?, o),
    };
    save(out, &m)?;
    Ok(true)
}

fn verify_paper(seed: u64, quick: bool) -> Outcome {
    let cfg = Config { seed, quick };
    let reports = battery::run_all(&cfg);
    let mut ok = true;
    for r in &reports {
        for l in &r.lines {
            out!("{l}");
            ok &= !l.split_whitespace().nth(2).is_some_and(|v| v == "COUNTEREXAMPLE");
        }
    }
    for r in &reports {
        out!("{}", r.summary_line());
        eprintln!("criterion-{:02} took {:.2}s", r.number, r.elapsed.as_secs_f64());
        ok &= r.status != Status::Fail;
    }
    Ok(ok)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { file } => {
            info(&load(&file)?);
            Ok(true)
        }
        Command::Lambda { file, set } => {
            let m = load(&file)?;
            out!("lambda={}", lambda(&m, set_of(&m, &set)?));
            Ok(true)
        }
        Command::Pi { file, a, b } => {
            let m = load(&file)?;
            out!("pi={}", local_conn(&m, set_of(&m, &a)?, set_of(&m, &b)?));
            Ok(true)
        }
        Command::Kappa { file, s, t, witness } => {
            let m = load(&file)?;
            let (s, t) = (set_of(&m, &s)?, set_of(&m, &t)?);
            if !s.is_disjoint(t) {
                return Err(CliError::Usage("--s and --t must be disjoint".into()));
            }
            let (k, side) = kappa_with_side(&m, s, t);
            out!("kappa={k} side={}", show(&m, side));
            if witness {
                match linking_witness(&m, s, t) {
                    Some(w) => out!("witness Z={} achieved={}", show(&m, w.z), w.achieved),
                    None => {
                        out!("no linking witness");
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Command::Flats { file } => {
            let m = load(&file)?;
            for f in m.flats() {
                out!("r={} {}", m.rank(f), show(&m, f));
            }
            Ok(true)
        }
        Command::Circuits { file } => {
            let m = load(&file)?;
            print_sets(&m, m.circuits());
            Ok(true)
        }
        Command::Cocircuits { file } => {
            let m = load(&file)?;
            print_sets(&m, m.cocircuits());
            Ok(true)
        }
        Command::Fans { file } => {
            let m = load(&file)?;
            let mut seen = Vec::new();
            for fan in find_fans(&m) {
                if seen.contains(&fan.set()) {
                    continue;
                }
                seen.push(fan.set());
                let seq: Vec<&str> = fan.elems.iter().map(|&e| m.label(e)).collect();
                out!("{} ({})", seq.join(" "), if fan.starts_with_triangle { "triangle first" } else { "triad first" });
            }
            Ok(true)
        }
        Command::Modular { file, set, by_minors } => {
            let m = load(&file)?;
            let x = set_of(&m, &set)?;
            if by_minors {
                match modularity_by_minor_search(&m, x) {
                    None => out!("modular=yes"),
                    Some((c, e)) => out!("modular=no contract={} element={}", show(&m, c), m.label(e)),
                }
            } else {
                match modular_violation(&m, x) {
                    None => out!("modular=yes"),
                    Some(f) => out!("modular=no flat={}", show(&m, f)),
                }
            }
            Ok(true)
        }
        Command::Modsum { file1, file2, o } => {
            let sum = modular_sum(&load(&file1)?, &load(&file2)?)?;
            save(&o, &sum)?;
            Ok(true)
        }
        Command::Decompose { file, n } => {
            let m = load(&file)?;
            match decompose_on_modular_restriction(&m, set_of(&m, &n)?)? {
                None => out!("indecomposable"),
                Some((p1, p2)) => {
                    for (i, p) in [p1, p2].iter().enumerate() {
                        out!("part{} n={} rank={} {}", i + 1, p.len(), p.full_rank(), show(p, p.ground()));
                    }
                }
            }
            Ok(true)
        }
        Command::Dualize { file, field, o } => dualize_cmd(&file, field, &o),
        Command::Represent(a) => represent(&a),
        Command::Pairs { file, contraction, exclude } => {
            let m = load(&file)?;
            let forbidden = set_of(&m, &exclude)?;
            let pairs = if contraction { contraction_pairs(&m, forbidden)? } else { deletion_pairs(&m, forbidden)? };
            for (x, y) in pairs {
                out!("{} {}", m.label(x), m.label(y));
            }
            Ok(true)
        }
        Command::Strands { file, n, against } => {
            let m = load(&file)?;
            let ns = set_of(&m, &n)?;
            match against {
                None => print_sets(&m, strands(&m, ns, true)),
                Some(other) => {
                    for r in distinguishing_strands(&m, &load(&other)?, ns)? {
                        out!(
                            "{} trace={} trace-other={} strand-in-first={} strand-in-second={} distinguishing={}",
                            show(&m, r.strand),
                            show(&m, r.trace),
                            show(&m, r.trace_other),
                            yes(r.strand_in_first),
                            yes(r.strand_in_second),
                            yes(r.distinguishing)
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Make { what } => make(&what),
        Command::Check { which, file, field, n, rep } => check(which, &file, field, &n, rep.as_deref()),
        Command::VerifyPaper { seed, quick } => verify_paper(seed, quick),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(3)
        }
    }
}

//! Command-line front end. Exit status: 0 when every check passes, 1 on a
//! law or property failure (a witness line is printed), 2 on usage or input
//! errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semiheap_core::actions::{action_witness, orbit, verify_action};
use semiheap_core::bundles::{fiber_transitions, verify_bundle};
use semiheap_core::enumeration::{Kind, SearchOptions};
use semiheap_core::functors::{groupify, heapify};
use semiheap_core::numeric::{self, ChartKind, Matrix, MatrixHeapChart, NumericReport, ScalarField};
use semiheap_core::semiheap::{verify_para_associative, FiniteSemiheap};
use semiheap_core::translations::{centric_composite_outside, left_compose_law, lr_commute, right_compose_law};
use semiheap_core::PointedSemiheap;

use crate::format;
use crate::parallel::{self, Deadline};

#[derive(Debug, Parser)]
#[command(name = "semiheap", version, about = "Check, build and enumerate semiheaps, heaps and their actions")]
pub struct Cli {
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for every stochastic check.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Wall-clock budget in seconds for searches.
    #[arg(long, global = true)]
    pub budget: Option<f64>,
    /// Read input from this file instead of stdin.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Write data output to this file instead of stdout.
    #[arg(long = "out", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check para-associativity of an SHF1 table and report heap and abelian flags.
    Check,
    /// GRP1 in, pointed SHF1 out.
    Heapify,
    /// Pointed SHF1 in, GRP1 out.
    Groupify {
        /// Basepoint; overrides `pt=` in the header.
        #[arg(long)]
        pt: Option<usize>,
        /// Accept any semiheap and report the first failing group axiom.
        #[arg(long)]
        diagnostic: bool,
    },
    /// Check a translation law on an SHF1 table.
    Translations {
        #[arg(long, value_enum)]
        law: LawArg,
    },
    /// Check an ACT1 table against an SHF1 semiheap.
    ActionCheck {
        /// The acting semiheap (SHF1).
        #[arg(long)]
        semiheap: PathBuf,
    },
    /// Orbit of a point under an ACT1 action.
    Orbit {
        #[arg(long)]
        semiheap: PathBuf,
        #[arg(long)]
        point: usize,
    },
    /// Verify a BND1 bundle and compare fiber structures across charts.
    BundleCheck,
    /// Enumerate semiheaps or heaps on n points as an SHF1 stream.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        heaps: bool,
        /// Emit one canonical representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Sampled checks on matrix Lie heaps.
    Numeric(NumericArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LawArg {
    Right,
    Left,
    Commute,
    Centric,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    #[command(subcommand)]
    pub check: NumericCheck,
    /// so2, so3, ut2, r<n> or rx.
    #[arg(long, global = true, default_value = "so3")]
    pub chart: String,
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    /// Finite-difference step.
    #[arg(long, global = true)]
    pub h: Option<f64>,
    /// Tolerance; each check has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FunctionArg {
    Zero,
    Linear,
    Square,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    Constant,
    Linear,
    Square,
}

#[derive(Debug, Subcommand)]
pub enum NumericCheck {
    ParaAssociative,
    Membership,
    Pushforward,
    /// Pushforward residual ratio when `h` is halved.
    Convergence,
    LeftInvariant {
        /// Index of the tangent basis vector generating the field.
        #[arg(long, default_value_t = 0)]
        basis: usize,
    },
    GroupVsHeap {
        #[arg(long, default_value_t = 0)]
        basis: usize,
    },
    Bracket {
        #[arg(long, default_value_t = 0)]
        u: usize,
        #[arg(long, default_value_t = 1)]
        v: usize,
    },
    Tangent,
    Coassociative {
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    MultiplicativeFunction {
        #[arg(long, value_enum, default_value = "linear")]
        function: FunctionArg,
    },
    MultiplicativeVectorField {
        #[arg(long, value_enum, default_value = "linear")]
        field: FieldArg,
    },
    Euclidean {
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    ExpHom,
}

enum Failure {
    Law(String),
    Input(String),
}

impl From<format::FormatError> for Failure {
    fn from(e: format::FormatError) -> Self {
        Failure::Input(format!("error: {e}"))
    }
}

impl From<semiheap_core::Error> for Failure {
    fn from(e: semiheap_core::Error) -> Self {
        match e {
            semiheap_core::Error::Violation(v) => Failure::Law(format!("fail {v}")),
            other => Failure::Input(format!("error: {other}")),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    data: String,
    report: Vec<String>,
}

impl Io<'_> {
    fn read_input(&mut self) -> Result<String, Failure> {
        let mut text = String::new();
        match &self.input {
            Some(path) => {
                text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("error: {}: {e}", path.display())))?
            }
            None => {
                self.stdin.read_to_string(&mut text).map_err(|e| Failure::Input(format!("error: stdin: {e}")))?;
            }
        }
        Ok(text)
    }

    fn line(&mut self, line: impl Into<String>) {
        self.report.push(line.into());
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("error: {}: {e}", path.display())))
}

fn read_semiheap(text: &str, jobs: usize) -> Result<(FiniteSemiheap, Option<usize>), Failure> {
    let doc = format::parse_semiheap(text)?;
    if let Some(v) = parallel::para_associativity_failure(&doc.table, jobs) {
        return Err(Failure::Law(format!("fail {v}")));
    }
    let s = verify_para_associative(doc.table)?;
    Ok((s, doc.basepoint))
}

/// Parse `args` (including the program name) and run. Report lines go to
/// `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { stdin, stdout, input: cli.input.clone(), output: cli.output.clone(), data: String::new(), report: Vec::new() };
    let result = dispatch(&cli, &mut io);
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Law(line)) => {
            io.line(line);
            1
        }
        Err(Failure::Input(message)) => {
            let _ = writeln!(stderr, "{message}");
            2
        }
    };
    if !io.data.is_empty() {
        match &io.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &io.data) {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    return 2;
                }
            }
            None => {
                let _ = io.stdout.write_all(io.data.as_bytes());
            }
        }
    }
    for line in &io.report {
        let _ = writeln!(io.stdout, "{line}");
    }
    code
}

fn dispatch(cli: &Cli, io: &mut Io<'_>) -> Result<(), Failure> {
    match &cli.command {
        Command::Check => {
            let text = io.read_input()?;
            let (s, _) = read_semiheap(&text, cli.jobs)?;
            let line = format!("pass para-associative=true heap={} abelian={}", s.is_heap(), s.is_abelian());
            io.line(line);
        }
        Command::Heapify => {
            let text = io.read_input()?;
            let g = format::parse_group(&text)?.into_group()?;
            let (s, e) = heapify(&g).into_parts();
            io.data = format::write_semiheap(s.table(), Some(e));
        }
        Command::Groupify { pt, diagnostic } => {
            let text = io.read_input()?;
            let (s, header_pt) = read_semiheap(&text, cli.jobs)?;
            let p = pt.or(header_pt).ok_or_else(|| Failure::Input("error: no basepoint (use --pt or pt= in the header)".into()))?;
            let g = groupify(&PointedSemiheap::new(s, p)?, !diagnostic)?;
            io.data = format::write_group(&g);
        }
        Command::Translations { law } => {
            let text = io.read_input()?;
            let (s, _) = read_semiheap(&text, cli.jobs)?;
            match law {
                LawArg::Right => right_compose_law(&s)?,
                LawArg::Left => left_compose_law(&s)?,
                LawArg::Commute => lr_commute(&s)?,
                LawArg::Centric => {
                    if let Some(((a, b), (c, d), composite)) = centric_composite_outside(&s) {
                        let images: Vec<String> = composite.iter().map(usize::to_string).collect();
                        return Err(Failure::Law(format!(
                            "fail law=centric closed=false outer={a},{b} inner={c},{d} composite={}",
                            images.join(",")
                        )));
                    }
                    io.line("pass law=centric closed=true");
                    return Ok(());
                }
            }
            let name = match law {
                LawArg::Right => "right",
                LawArg::Left => "left",
                _ => "commute",
            };
            io.line(format!("pass law={name}"));
        }
        Command::ActionCheck { semiheap } => {
            let (s, _) = read_semiheap(&read_file(semiheap)?, cli.jobs)?;
            let text = io.read_input()?;
            let table = format::parse_action(&text)?;
            if let Some(v) = action_witness(&table, &s)? {
                return Err(Failure::Law(format!("fail {v}")));
            }
            io.line(format!("pass action=true points={} order={}", table.points(), table.order()));
        }
        Command::Orbit { semiheap, point } => {
            let (s, _) = read_semiheap(&read_file(semiheap)?, cli.jobs)?;
            let text = io.read_input()?;
            let a = verify_action(format::parse_action(&text)?, s)?;
            let o = orbit(&a, *point)?;
            let points: Vec<String> = o.points.iter().map(usize::to_string).collect();
            io.line(format!("orbit point={} points={} symmetric={}", o.point, points.join(","), o.is_symmetric()));
        }
        Command::BundleCheck => {
            let text = io.read_input()?;
            let bundle = format::parse_bundle(&text).map_err(|e| match e {
                format::BundleParseError::Format(f) => Failure::from(f),
                other => Failure::Input(format!("error: {other}")),
            })?;
            let vb = verify_bundle(bundle)?;
            let mut transitions = 0;
            for m in 0..vb.bundle().base() {
                transitions += fiber_transitions(&vb, m)?.len();
            }
            let b = vb.bundle();
            io.line(format!(
                "pass bundle=true total={} base={} charts={} transitions={transitions}",
                b.total(),
                b.base(),
                b.charts().len()
            ));
        }
        Command::Enumerate { n, heaps, up_to_iso } => {
            let kind = if *heaps { Kind::Heap } else { Kind::Semiheap };
            let e = parallel::enumerate(*n, SearchOptions { kind, symmetry_breaking: true }, cli.jobs, Deadline::from_secs(cli.budget));
            let tables = if *up_to_iso {
                e.tables.iter().map(|s| s.table().clone()).collect()
            } else {
                e.labeled_tables()
            };
            for t in &tables {
                io.data.push_str(&format::write_semiheap(t, None));
            }
            io.line(e.summary());
        }
        Command::Numeric(args) => numeric_command(cli.seed, args, io)?,
    }
    Ok(())
}

fn basis_vector(chart: &MatrixHeapChart, i: usize) -> Result<Matrix, Failure> {
    let basis = chart.tangent_basis();
    basis.get(i).cloned().ok_or_else(|| Failure::Input(format!("error: basis index {i} out of range (dimension {})", basis.len())))
}

fn numeric_command(seed: u64, args: &NumericArgs, io: &mut Io<'_>) -> Result<(), Failure> {
    let kind: ChartKind = args.chart.parse()?;
    let mut chart = MatrixHeapChart::new(kind);
    if let Some(h) = args.h {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Failure::Input(format!("error: --h must be positive, got {h}")));
        }
        chart.h = h;
    }
    let samples = args.samples;
    let tol = |default: f64| args.tol.unwrap_or(default);
    let report: NumericReport = match &args.check {
        NumericCheck::ParaAssociative => numeric::check_para_associative_numeric(&chart, samples, seed, tol(numeric::ALGEBRAIC_TOL))?,
        NumericCheck::Membership => numeric::membership_check(&chart, samples, seed, tol(numeric::EXACT_TOL))?,
        NumericCheck::Pushforward => numeric::pushforward_check(&chart, samples, seed, chart.h, tol(numeric::FINITE_DIFFERENCE_TOL))?,
        NumericCheck::Convergence => {
            let h = args.h.unwrap_or(1e-3);
            let c = numeric::convergence_ratio(&chart, samples, seed, h)?;
            let pass = (3.5..=4.5).contains(&c.ratio);
            let line = format!(
                "check=convergence max_residual={:.3e} seed={seed} pass={pass} h={h:e} ratio={:.4}",
                c.residual_h, c.ratio
            );
            if !pass {
                return Err(Failure::Law(line));
            }
            io.line(line);
            return Ok(());
        }
        NumericCheck::LeftInvariant { basis } => {
            let v = basis_vector(&chart, *basis)?;
            numeric::left_invariance_check(&chart, &v, samples, seed, tol(numeric::FINITE_DIFFERENCE_TOL))?
        }
        NumericCheck::GroupVsHeap { basis } => {
            let v = basis_vector(&chart, *basis)?;
            numeric::compare_group_vs_heap_invariance(&chart, &v, samples, seed, tol(numeric::FINITE_DIFFERENCE_TOL))?
        }
        NumericCheck::Bracket { u, v } => {
            let (u, v) = (basis_vector(&chart, *u)?, basis_vector(&chart, *v)?);
            numeric::bracket_closure(&chart, &u, &v, samples, seed, tol(numeric::BRACKET_TOL))?
        }
        NumericCheck::Tangent => numeric::tangent_semiheap_check(&chart, samples, seed, tol(numeric::FINITE_DIFFERENCE_TOL))?,
        NumericCheck::Coassociative { degree } => {
            let (r, c) = chart.shape();
            let mut rng = numeric::rng(seed);
            let f1 = ScalarField::random(&mut rng, r * c, *degree, 8);
            let f2 = ScalarField::random(&mut rng, r * c, *degree, 8);
            numeric::coassociativity_check(&chart, &f1, &f2, samples, seed, tol(numeric::COALGEBRA_TOL))?
        }
        NumericCheck::MultiplicativeFunction { function } => {
            let (r, c) = chart.shape();
            let coefficients: Vec<f64> = (1..=r * c).map(|i| i as f64).collect();
            let linear = ScalarField::linear(&coefficients);
            let f: Box<dyn Fn(&Matrix) -> f64> = match function {
                FunctionArg::Zero => Box::new(|_| 0.0),
                FunctionArg::Linear => Box::new(move |x| linear.eval(x)),
                FunctionArg::Square => Box::new(|x| x.as_slice().iter().map(|v| v * v).sum()),
            };
            let triples = numeric::sample_triples(&chart, samples, seed);
            numeric::multiplicative_function_check(&chart, &*f, &triples, true, seed, tol(numeric::EXACT_TOL))?
        }
        NumericCheck::MultiplicativeVectorField { field } => {
            if !matches!(kind, ChartKind::Euclidean(_)) {
                return Err(Failure::Input("error: vector field checks run on r<n> charts".into()));
            }
            let f: Box<dyn Fn(&Matrix) -> Matrix> = match field {
                FieldArg::Constant => Box::new(|x| Matrix::from_vec(x.rows(), x.cols(), vec![1.0; x.rows() * x.cols()]).expect("shape")),
                FieldArg::Linear => Box::new(|x| x.clone()),
                FieldArg::Square => {
                    Box::new(|x| Matrix::from_vec(x.rows(), x.cols(), x.as_slice().iter().map(|v| v * v).collect()).expect("shape"))
                }
            };
            let triples: Vec<[Matrix; 3]> =
                numeric::sample_triples(&chart, samples, seed).into_iter().map(|t| t.map(|m| m.scale(0.5))).collect();
            numeric::multiplicative_vector_field_check(&chart, &*f, &triples, &numeric::FLOW_TIMES, seed, tol(numeric::FINITE_DIFFERENCE_TOL))?
        }
        NumericCheck::Euclidean { dim } => numeric::euclidean_semiheap_check(*dim, samples, seed, tol(numeric::EXACT_TOL)),
        NumericCheck::ExpHom => numeric::exp_hom_check(samples, seed, tol(numeric::EXACT_TOL)),
    };
    let line = report.to_string();
    if report.pass {
        io.line(line);
        Ok(())
    } else {
        Err(Failure::Law(line))
    }
}
